#include "polarsift/ops.hpp"

#include <cmath>
#include <string>

namespace polarsift {

namespace {

void check_conv_shapes(const Tensor& input, const Tensor& weights, const Tensor& bias,
                       const ConvSpec& spec) {
    if (input.rank() != 3)
        throw ShapeError("conv2d: input rank " + std::to_string(input.rank()) + ", want 3 (C,H,W)");
    if (weights.rank() != 4)
        throw ShapeError("conv2d: weights rank " + std::to_string(weights.rank()) +
                         ", want 4 (C_out,C_in,kh,kw)");
    if (input.extent(0) != spec.in_channels)
        throw ShapeError("conv2d: input channel axis " + std::to_string(input.extent(0)) +
                         " != spec in_channels " + std::to_string(spec.in_channels));
    if (weights.extent(0) != spec.out_channels || weights.extent(1) != spec.in_channels ||
        weights.extent(2) != spec.kernel_h || weights.extent(3) != spec.kernel_w)
        throw ShapeError("conv2d: weights " + shape_string(weights) + " do not match spec " +
                         std::to_string(spec.out_channels) + "x" + std::to_string(spec.in_channels) +
                         "x" + std::to_string(spec.kernel_h) + "x" + std::to_string(spec.kernel_w));
    if (bias.rank() != 1 || bias.extent(0) != spec.out_channels)
        throw ShapeError("conv2d: bias axis " + shape_string(bias) + " != out_channels " +
                         std::to_string(spec.out_channels));
    if (input.extent(1) < spec.kernel_h || input.extent(2) < spec.kernel_w)
        throw ShapeError("conv2d: spatial axes " + shape_string(input) +
                         " smaller than kernel " + std::to_string(spec.kernel_h) + "x" +
                         std::to_string(spec.kernel_w));
    if (spec.stride != 1) throw ShapeError("conv2d: only stride 1 is supported");
}

}  // namespace

Tensor conv2d_forward(const Tensor& input, const Tensor& weights, const Tensor& bias,
                      const ConvSpec& spec) {
    check_conv_shapes(input, weights, bias, spec);
    const std::size_t ci_n = spec.in_channels, co_n = spec.out_channels;
    const std::size_t h = input.extent(1), w = input.extent(2);
    const std::size_t kh = spec.kernel_h, kw = spec.kernel_w;
    const std::size_t oh = h - kh + 1, ow = w - kw + 1;

    Tensor out({co_n, oh, ow});
    const double* in = input.data();
    const double* wt = weights.data();
    double* o = out.data();

    for (std::size_t co = 0; co < co_n; ++co) {
        const double b = bias[co];
        double* oplane = o + co * oh * ow;
        for (std::size_t i = 0; i < oh * ow; ++i) oplane[i] = b;
        for (std::size_t ci = 0; ci < ci_n; ++ci) {
            const double* iplane = in + ci * h * w;
            const double* kplane = wt + (co * ci_n + ci) * kh * kw;
            for (std::size_t ky = 0; ky < kh; ++ky) {
                for (std::size_t kx = 0; kx < kw; ++kx) {
                    const double wv = kplane[ky * kw + kx];
                    for (std::size_t oy = 0; oy < oh; ++oy) {
                        const double* irow = iplane + (oy + ky) * w + kx;
                        double* orow = oplane + oy * ow;
                        for (std::size_t ox = 0; ox < ow; ++ox) orow[ox] += wv * irow[ox];
                    }
                }
            }
        }
    }
    return out;
}

ConvGrads conv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& weights,
                          const ConvSpec& spec) {
    Tensor bias({spec.out_channels});
    check_conv_shapes(input, weights, bias, spec);
    const std::size_t ci_n = spec.in_channels, co_n = spec.out_channels;
    const std::size_t h = input.extent(1), w = input.extent(2);
    const std::size_t kh = spec.kernel_h, kw = spec.kernel_w;
    const std::size_t oh = h - kh + 1, ow = w - kw + 1;
    if (grad_out.rank() != 3 || grad_out.extent(0) != co_n || grad_out.extent(1) != oh ||
        grad_out.extent(2) != ow)
        throw ShapeError("conv2d_backward: grad_out " + shape_string(grad_out) +
                         " does not match forward output " + std::to_string(co_n) + "x" +
                         std::to_string(oh) + "x" + std::to_string(ow));

    ConvGrads g{Tensor({ci_n, h, w}), Tensor({co_n, ci_n, kh, kw}), Tensor({co_n})};
    const double* in = input.data();
    const double* wt = weights.data();
    const double* go = grad_out.data();

    for (std::size_t co = 0; co < co_n; ++co) {
        const double* goplane = go + co * oh * ow;
        double acc = 0.0;
        for (std::size_t i = 0; i < oh * ow; ++i) acc += goplane[i];
        g.bias[co] = acc;

        for (std::size_t ci = 0; ci < ci_n; ++ci) {
            const double* iplane = in + ci * h * w;
            double* giplane = g.input.data() + ci * h * w;
            const double* kplane = wt + (co * ci_n + ci) * kh * kw;
            double* gkplane = g.weights.data() + (co * ci_n + ci) * kh * kw;
            for (std::size_t ky = 0; ky < kh; ++ky) {
                for (std::size_t kx = 0; kx < kw; ++kx) {
                    const double wv = kplane[ky * kw + kx];
                    double gw = 0.0;
                    for (std::size_t oy = 0; oy < oh; ++oy) {
                        const double* irow = iplane + (oy + ky) * w + kx;
                        double* girow = giplane + (oy + ky) * w + kx;
                        const double* gorow = goplane + oy * ow;
                        for (std::size_t ox = 0; ox < ow; ++ox) {
                            gw += irow[ox] * gorow[ox];
                            girow[ox] += wv * gorow[ox];
                        }
                    }
                    gkplane[ky * kw + kx] = gw;
                }
            }
        }
    }
    return g;
}

PoolResult maxpool2d_forward(const Tensor& input, std::size_t window) {
    if (input.rank() != 3)
        throw ShapeError("maxpool2d: input rank " + std::to_string(input.rank()) + ", want 3");
    const std::size_t c_n = input.extent(0), h = input.extent(1), w = input.extent(2);
    const std::size_t oh = h / window, ow = w / window;

    PoolResult res{Tensor({c_n, oh, ow}), std::vector<std::size_t>(c_n * oh * ow)};
    const double* in = input.data();
    for (std::size_t c = 0; c < c_n; ++c) {
        for (std::size_t oy = 0; oy < oh; ++oy) {
            for (std::size_t ox = 0; ox < ow; ++ox) {
                std::size_t best = (c * h + oy * window) * w + ox * window;
                double bv = in[best];
                for (std::size_t dy = 0; dy < window; ++dy) {
                    for (std::size_t dx = 0; dx < window; ++dx) {
                        const std::size_t idx = (c * h + oy * window + dy) * w + ox * window + dx;
                        if (in[idx] > bv) {  // strict: ties keep the first scanned
                            bv = in[idx];
                            best = idx;
                        }
                    }
                }
                const std::size_t oidx = (c * oh + oy) * ow + ox;
                res.output[oidx] = bv;
                res.argmax[oidx] = best;
            }
        }
    }
    return res;
}

Tensor maxpool2d_backward(const Tensor& grad_out, const std::vector<std::size_t>& argmax,
                          const std::vector<std::size_t>& input_shape) {
    if (grad_out.size() != argmax.size())
        throw ShapeError("maxpool2d_backward: grad_out size " + std::to_string(grad_out.size()) +
                         " != cached argmax size " + std::to_string(argmax.size()));
    Tensor g(input_shape);
    for (std::size_t i = 0; i < argmax.size(); ++i) g[argmax[i]] += grad_out[i];
    return g;
}

Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias) {
    if (input.rank() != 1)
        throw ShapeError("dense: input rank " + std::to_string(input.rank()) + ", want 1");
    if (weights.rank() != 2 || weights.extent(1) != input.extent(0))
        throw ShapeError("dense: weights " + shape_string(weights) + " incompatible with input " +
                         shape_string(input));
    const std::size_t m = weights.extent(0), n = weights.extent(1);
    if (bias.rank() != 1 || bias.extent(0) != m)
        throw ShapeError("dense: bias " + shape_string(bias) + " != output axis " + std::to_string(m));

    Tensor out({m});
    const double* x = input.data();
    const double* wt = weights.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double* row = wt + i * n;
        double acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) acc += row[j] * x[j];
        out[i] = acc + bias[i];
    }
    return out;
}

DenseGrads dense_backward(const Tensor& grad_out, const Tensor& input, const Tensor& weights) {
    const std::size_t m = weights.extent(0), n = weights.extent(1);
    if (grad_out.rank() != 1 || grad_out.extent(0) != m)
        throw ShapeError("dense_backward: grad_out " + shape_string(grad_out) + " != output axis " +
                         std::to_string(m));
    if (input.extent(0) != n)
        throw ShapeError("dense_backward: input " + shape_string(input) + " != weight columns " +
                         std::to_string(n));

    DenseGrads g{Tensor({n}), Tensor({m, n}), Tensor({m})};
    const double* x = input.data();
    const double* wt = weights.data();
    double* gin = g.input.data();
    double* gw = g.weights.data();
    for (std::size_t i = 0; i < m; ++i) {
        const double go = grad_out[i];
        g.bias[i] = go;
        const double* row = wt + i * n;
        double* grow = gw + i * n;
        for (std::size_t j = 0; j < n; ++j) {
            grow[j] = go * x[j];
            gin[j] += go * row[j];
        }
    }
    return g;
}

Tensor relu(const Tensor& input) {
    Tensor out(input.shape());
    for (std::size_t i = 0; i < input.size(); ++i) out[i] = input[i] > 0.0 ? input[i] : 0.0;
    return out;
}

Tensor relu_backward(const Tensor& grad_out, const Tensor& input) {
    if (!grad_out.same_shape(input))
        throw ShapeError("relu_backward: grad " + shape_string(grad_out) + " vs input " +
                         shape_string(input));
    Tensor g(input.shape());
    for (std::size_t i = 0; i < input.size(); ++i) g[i] = input[i] > 0.0 ? grad_out[i] : 0.0;
    return g;
}

double sigmoid_scalar(double x) { return 1.0 / (1.0 + std::exp(-x)); }

Tensor sigmoid(const Tensor& input) {
    Tensor out(input.shape());
    for (std::size_t i = 0; i < input.size(); ++i) out[i] = sigmoid_scalar(input[i]);
    return out;
}

Tensor sigmoid_backward(const Tensor& grad_out, const Tensor& input) {
    if (!grad_out.same_shape(input))
        throw ShapeError("sigmoid_backward: grad " + shape_string(grad_out) + " vs input " +
                         shape_string(input));
    Tensor g(input.shape());
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double s = sigmoid_scalar(input[i]);
        g[i] = s * (1.0 - s) * grad_out[i];
    }
    return g;
}

}  // namespace polarsift
