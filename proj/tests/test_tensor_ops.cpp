#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "polarsift/ops.hpp"
#include "polarsift/rng.hpp"
#include "test_util.hpp"

using namespace polarsift;
using testutil::conv2d_reference;
using testutil::max_grad_rel_err;
using testutil::random_tensor;
using testutil::rel_err;

namespace {

double weighted_sum(const Tensor& t, const Tensor& coeffs) {
    double acc = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) acc += t[i] * coeffs[i];
    return acc;
}

}  // namespace

TEST_CASE("conv2d_forward: all-ones 3x3 against a single all-ones kernel") {
    Tensor input = Tensor::full({1, 3, 3}, 1.0);
    Tensor weights = Tensor::full({1, 1, 3, 3}, 1.0);
    Tensor bias({1});
    ConvSpec spec{1, 1, 3, 3};
    Tensor out = conv2d_forward(input, weights, bias, spec);
    REQUIRE(out.shape() == std::vector<std::size_t>{1, 1, 1});
    CHECK(out[0] == 9.0);
}

TEST_CASE("conv2d_forward: zero input yields bias everywhere") {
    Rng rng(7);
    Tensor input({1, 4, 4});
    Tensor weights = random_tensor({3, 1, 3, 3}, rng);
    Tensor bias({3});
    bias[0] = 0.25;
    bias[1] = -1.5;
    bias[2] = 4.0;
    Tensor out = conv2d_forward(input, weights, bias, ConvSpec{1, 3, 3, 3});
    REQUIRE(out.shape() == std::vector<std::size_t>{3, 2, 2});
    for (std::size_t c = 0; c < 3; ++c)
        for (std::size_t i = 0; i < 4; ++i) CHECK(out[c * 4 + i] == bias[c]);
}

TEST_CASE("conv2d_forward matches the naive loop oracle") {
    Rng rng(11);
    SUBCASE("single random 1x5x5 case") {
        Tensor input = random_tensor({1, 5, 5}, rng);
        Tensor weights = random_tensor({2, 1, 3, 3}, rng);
        Tensor bias = random_tensor({2}, rng);
        Tensor got = conv2d_forward(input, weights, bias, ConvSpec{1, 2, 3, 3});
        Tensor want = conv2d_reference(input, weights, bias);
        REQUIRE(got.shape() == want.shape());
        for (std::size_t i = 0; i < got.size(); ++i) CHECK(std::abs(got[i] - want[i]) < 1e-12);
    }
    SUBCASE("100 randomized shapes") {
        for (int it = 0; it < 100; ++it) {
            const std::size_t ci = 1 + rng.next() % 3, co = 1 + rng.next() % 4;
            const std::size_t k = 1 + rng.next() % 3;
            const std::size_t h = k + rng.next() % 6, w = k + rng.next() % 6;
            Tensor input = random_tensor({ci, h, w}, rng);
            Tensor weights = random_tensor({co, ci, k, k}, rng);
            Tensor bias = random_tensor({co}, rng);
            Tensor got = conv2d_forward(input, weights, bias, ConvSpec{ci, co, k, k});
            Tensor want = conv2d_reference(input, weights, bias);
            for (std::size_t i = 0; i < got.size(); ++i)
                REQUIRE(std::abs(got[i] - want[i]) < 1e-12);
        }
    }
}

TEST_CASE("conv2d_forward rejects mismatched shapes") {
    Tensor input({2, 5, 5});
    Tensor weights({2, 1, 3, 3});
    Tensor bias({2});
    CHECK_THROWS_AS(conv2d_forward(input, weights, bias, ConvSpec{1, 2, 3, 3}), ShapeError);
    CHECK_THROWS_AS(conv2d_forward(Tensor({1, 2, 2}), Tensor({1, 1, 3, 3}), Tensor({1}),
                                   ConvSpec{1, 1, 3, 3}),
                    ShapeError);
}

TEST_CASE("conv2d_backward: zero grad_out gives zero gradients") {
    Rng rng(3);
    Tensor input = random_tensor({2, 4, 4}, rng);
    Tensor weights = random_tensor({3, 2, 3, 3}, rng);
    Tensor grad_out({3, 2, 2});
    ConvGrads g = conv2d_backward(grad_out, input, weights, ConvSpec{2, 3, 3, 3});
    for (std::size_t i = 0; i < g.input.size(); ++i) CHECK(g.input[i] == 0.0);
    for (std::size_t i = 0; i < g.weights.size(); ++i) CHECK(g.weights[i] == 0.0);
    for (std::size_t i = 0; i < g.bias.size(); ++i) CHECK(g.bias[i] == 0.0);
}

TEST_CASE("conv2d_backward: unit grad at one output picks out the input patch") {
    Rng rng(5);
    Tensor input = random_tensor({1, 4, 4}, rng);
    Tensor weights = random_tensor({1, 1, 3, 3}, rng);
    Tensor grad_out({1, 2, 2});
    grad_out[0] = 1.0;  // output position (0,0,0)
    ConvGrads g = conv2d_backward(grad_out, input, weights, ConvSpec{1, 1, 3, 3});
    for (std::size_t ky = 0; ky < 3; ++ky)
        for (std::size_t kx = 0; kx < 3; ++kx)
            CHECK(g.weights[ky * 3 + kx] == input.at(0, ky, kx));
    CHECK(g.bias[0] == 1.0);
}

TEST_CASE("conv2d_backward gradients match central finite differences") {
    Rng rng(17);
    Tensor input = random_tensor({2, 5, 6}, rng);
    Tensor weights = random_tensor({3, 2, 3, 3}, rng);
    Tensor bias = random_tensor({3}, rng);
    ConvSpec spec{2, 3, 3, 3};
    Tensor coeffs = random_tensor({3, 3, 4}, rng);

    Tensor grad_out = coeffs;
    ConvGrads g = conv2d_backward(grad_out, input, weights, spec);

    auto loss_of_input = [&](const Tensor& x) {
        return weighted_sum(conv2d_forward(x, weights, bias, spec), coeffs);
    };
    auto loss_of_weights = [&](const Tensor& wt) {
        return weighted_sum(conv2d_forward(input, wt, bias, spec), coeffs);
    };
    auto loss_of_bias = [&](const Tensor& b) {
        return weighted_sum(conv2d_forward(input, weights, b, spec), coeffs);
    };
    CHECK(max_grad_rel_err(loss_of_input, input, g.input) < 1e-6);
    CHECK(max_grad_rel_err(loss_of_weights, weights, g.weights) < 1e-6);
    CHECK(max_grad_rel_err(loss_of_bias, bias, g.bias) < 1e-6);
}

TEST_CASE("maxpool2d_forward basics") {
    SUBCASE("2x2 window collapses to the max") {
        Tensor input({1, 2, 2}, {1, 2, 3, 4});
        PoolResult r = maxpool2d_forward(input);
        REQUIRE(r.output.shape() == std::vector<std::size_t>{1, 1, 1});
        CHECK(r.output[0] == 4.0);
        CHECK(r.argmax[0] == 3);
    }
    SUBCASE("odd trailing row/column dropped: 29x29 -> 14x14") {
        Tensor input({1, 29, 29});
        PoolResult r = maxpool2d_forward(input);
        CHECK(r.output.shape() == std::vector<std::size_t>{1, 14, 14});
    }
    SUBCASE("constant input routes gradient to first window element") {
        Tensor input = Tensor::full({1, 4, 4}, 2.5);
        PoolResult r = maxpool2d_forward(input);
        for (std::size_t i = 0; i < r.output.size(); ++i) CHECK(r.output[i] == 2.5);
        CHECK(r.argmax[0] == 0);
        CHECK(r.argmax[1] == 2);
        CHECK(r.argmax[2] == 8);
        CHECK(r.argmax[3] == 10);
        Tensor go = Tensor::full({1, 2, 2}, 1.0);
        Tensor gi = maxpool2d_backward(go, r.argmax, input.shape());
        CHECK(gi[0] == 1.0);
        CHECK(gi[1] == 0.0);
    }
}

TEST_CASE("maxpool2d_backward conserves gradient mass") {
    Rng rng(23);
    for (int it = 0; it < 20; ++it) {
        const std::size_t c = 1 + rng.next() % 3;
        const std::size_t h = 2 + rng.next() % 7, w = 2 + rng.next() % 7;
        Tensor input = random_tensor({c, h, w}, rng);
        PoolResult r = maxpool2d_forward(input);
        Tensor go = random_tensor(r.output.shape(), rng);
        Tensor gi = maxpool2d_backward(go, r.argmax, input.shape());
        const double in_mass = std::accumulate(gi.data(), gi.data() + gi.size(), 0.0);
        const double out_mass = std::accumulate(go.data(), go.data() + go.size(), 0.0);
        CHECK(in_mass == doctest::Approx(out_mass).epsilon(1e-12));
    }
}

TEST_CASE("dense_forward basics") {
    SUBCASE("identity weights pass the input through") {
        Tensor input({3}, {1.5, -2.0, 0.25});
        Tensor weights({3, 3});
        for (std::size_t i = 0; i < 3; ++i) weights.at(i, i) = 1.0;
        Tensor bias({3});
        Tensor out = dense_forward(input, weights, bias);
        for (std::size_t i = 0; i < 3; ++i) CHECK(out[i] == input[i]);
    }
    SUBCASE("zero input yields the bias") {
        Rng rng(2);
        Tensor weights = random_tensor({4, 6}, rng);
        Tensor bias = random_tensor({4}, rng);
        Tensor out = dense_forward(Tensor({6}), weights, bias);
        for (std::size_t i = 0; i < 4; ++i) CHECK(out[i] == bias[i]);
    }
    SUBCASE("random 4->3 case matches the double-loop oracle") {
        Rng rng(9);
        Tensor input = random_tensor({4}, rng);
        Tensor weights = random_tensor({3, 4}, rng);
        Tensor bias = random_tensor({3}, rng);
        Tensor got = dense_forward(input, weights, bias);
        for (std::size_t i = 0; i < 3; ++i) {
            double want = bias[i];
            for (std::size_t j = 0; j < 4; ++j) want += weights.at(i, j) * input[j];
            CHECK(std::abs(got[i] - want) < 1e-12);
        }
    }
    SUBCASE("shape mismatch throws") {
        CHECK_THROWS_AS(dense_forward(Tensor({4}), Tensor({3, 5}), Tensor({3})), ShapeError);
        CHECK_THROWS_AS(dense_forward(Tensor({4}), Tensor({3, 4}), Tensor({2})), ShapeError);
    }
}

TEST_CASE("dense_backward matches central finite differences") {
    Rng rng(31);
    Tensor input = random_tensor({6}, rng);
    Tensor weights = random_tensor({4, 6}, rng);
    Tensor bias = random_tensor({4}, rng);
    Tensor coeffs = random_tensor({4}, rng);

    DenseGrads g = dense_backward(coeffs, input, weights);
    auto loss_of_input = [&](const Tensor& x) {
        return weighted_sum(dense_forward(x, weights, bias), coeffs);
    };
    auto loss_of_weights = [&](const Tensor& wt) {
        return weighted_sum(dense_forward(input, wt, bias), coeffs);
    };
    CHECK(max_grad_rel_err(loss_of_input, input, g.input) < 1e-6);
    CHECK(max_grad_rel_err(loss_of_weights, weights, g.weights) < 1e-6);
    for (std::size_t i = 0; i < 4; ++i) CHECK(g.bias[i] == coeffs[i]);
}

TEST_CASE("relu and sigmoid point values") {
    Tensor x({4}, {-1.0, 2.0, 0.0, -0.5});
    Tensor r = relu(x);
    CHECK(r[0] == 0.0);
    CHECK(r[1] == 2.0);
    CHECK(r[2] == 0.0);
    CHECK(r[3] == 0.0);

    Tensor s = sigmoid(Tensor({1}, {0.0}));
    CHECK(s[0] == 0.5);
    CHECK(sigmoid_scalar(100.0) == doctest::Approx(1.0));
    CHECK(sigmoid_scalar(-100.0) == doctest::Approx(0.0));
}

TEST_CASE("relu gradient passes only where input is positive, zero at the kink") {
    Tensor x({3}, {-1.0, 0.0, 2.0});
    Tensor go = Tensor::full({3}, 5.0);
    Tensor g = relu_backward(go, x);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 0.0);
    CHECK(g[2] == 5.0);
}

TEST_CASE("sigmoid gradient at 0 is 0.25 and matches finite differences") {
    Tensor x({1}, {0.0});
    Tensor go = Tensor::full({1}, 1.0);
    Tensor g = sigmoid_backward(go, x);
    CHECK(g[0] == 0.25);

    Rng rng(13);
    Tensor xs = random_tensor({8}, rng, -3.0, 3.0);
    Tensor coeffs = random_tensor({8}, rng);
    Tensor analytic = sigmoid_backward(coeffs, xs);
    auto loss = [&](const Tensor& t) { return weighted_sum(sigmoid(t), coeffs); };
    CHECK(max_grad_rel_err(loss, xs, analytic) < 1e-6);
}

TEST_CASE("analytic vs finite-difference gradients on randomized shapes up to 8x8") {
    Rng rng(41);
    for (int it = 0; it < 5; ++it) {
        const std::size_t ci = 1 + rng.next() % 2, co = 1 + rng.next() % 3;
        const std::size_t k = 2 + rng.next() % 2;
        const std::size_t h = k + rng.next() % (9 - k), w = k + rng.next() % (9 - k);
        Tensor input = random_tensor({ci, h, w}, rng);
        Tensor weights = random_tensor({co, ci, k, k}, rng);
        Tensor bias = random_tensor({co}, rng);
        ConvSpec spec{ci, co, k, k};
        Tensor coeffs = random_tensor({co, h - k + 1, w - k + 1}, rng);
        ConvGrads g = conv2d_backward(coeffs, input, weights, spec);
        auto loss = [&](const Tensor& x) {
            return weighted_sum(conv2d_forward(x, weights, bias, spec), coeffs);
        };
        auto loss_w = [&](const Tensor& wt) {
            return weighted_sum(conv2d_forward(input, wt, bias, spec), coeffs);
        };
        REQUIRE(max_grad_rel_err(loss, input, g.input) < 1e-6);
        REQUIRE(max_grad_rel_err(loss_w, weights, g.weights) < 1e-6);
    }
}

TEST_CASE("engine operations are bit-deterministic") {
    Rng rng(55);
    Tensor input = random_tensor({2, 6, 6}, rng);
    Tensor weights = random_tensor({3, 2, 3, 3}, rng);
    Tensor bias = random_tensor({3}, rng);
    ConvSpec spec{2, 3, 3, 3};
    Tensor a = conv2d_forward(input, weights, bias, spec);
    Tensor b = conv2d_forward(input, weights, bias, spec);
    CHECK(a == b);
    PoolResult p1 = maxpool2d_forward(a);
    PoolResult p2 = maxpool2d_forward(b);
    CHECK(p1.output == p2.output);
    CHECK(p1.argmax == p2.argmax);
}
