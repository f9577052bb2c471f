#ifndef POLARSIFT_TEST_UTIL_HPP
#define POLARSIFT_TEST_UTIL_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <vector>

#include "polarsift/rng.hpp"
#include "polarsift/tensor.hpp"

// Shared test oracles. Everything here is independent of the engine's
// implementation path: plain loops and central finite differences only.
namespace testutil {

inline polarsift::Tensor random_tensor(std::vector<std::size_t> shape, polarsift::Rng& rng,
                                       double lo = -1.0, double hi = 1.0) {
    polarsift::Tensor t(std::move(shape));
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = rng.uniform(lo, hi);
    return t;
}

// Naive quadruple-loop cross-correlation, the reference for conv2d_forward.
inline polarsift::Tensor conv2d_reference(const polarsift::Tensor& input,
                                          const polarsift::Tensor& weights,
                                          const polarsift::Tensor& bias) {
    const std::size_t co_n = weights.extent(0), ci_n = weights.extent(1);
    const std::size_t kh = weights.extent(2), kw = weights.extent(3);
    const std::size_t h = input.extent(1), w = input.extent(2);
    const std::size_t oh = h - kh + 1, ow = w - kw + 1;
    polarsift::Tensor out({co_n, oh, ow});
    for (std::size_t co = 0; co < co_n; ++co)
        for (std::size_t oy = 0; oy < oh; ++oy)
            for (std::size_t ox = 0; ox < ow; ++ox) {
                double acc = bias[co];
                for (std::size_t ci = 0; ci < ci_n; ++ci)
                    for (std::size_t ky = 0; ky < kh; ++ky)
                        for (std::size_t kx = 0; kx < kw; ++kx)
                            acc += input.at(ci, oy + ky, ox + kx) *
                                   weights[((co * ci_n + ci) * kh + ky) * kw + kx];
                out.at(co, oy, ox) = acc;
            }
    return out;
}

// Central finite difference of a scalar function w.r.t. one tensor element.
inline double finite_difference(const std::function<double(const polarsift::Tensor&)>& f,
                                polarsift::Tensor x, std::size_t index, double h = 1e-5) {
    const double orig = x[index];
    x[index] = orig + h;
    const double fp = f(x);
    x[index] = orig - h;
    const double fm = f(x);
    return (fp - fm) / (2.0 * h);
}

inline double rel_err(double analytic, double numeric) {
    return std::abs(analytic - numeric) /
           std::max({1.0, std::abs(analytic), std::abs(numeric)});
}

// Max relative error between an analytic gradient tensor and finite
// differences of f over every element of x.
inline double max_grad_rel_err(const std::function<double(const polarsift::Tensor&)>& f,
                               const polarsift::Tensor& x, const polarsift::Tensor& analytic,
                               double h = 1e-5) {
    double worst = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i)
        worst = std::max(worst, rel_err(analytic[i], finite_difference(f, x, i, h)));
    return worst;
}

}  // namespace testutil

#endif
