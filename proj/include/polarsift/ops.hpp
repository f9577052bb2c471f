#ifndef POLARSIFT_OPS_HPP
#define POLARSIFT_OPS_HPP

#include <cstddef>
#include <vector>

#include "polarsift/tensor.hpp"

namespace polarsift {

// Convolutions use valid padding and stride 1 throughout; output extent is
// in - kernel + 1. Implemented as cross-correlation (no kernel flip).
struct ConvSpec {
    std::size_t in_channels = 0;
    std::size_t out_channels = 0;
    std::size_t kernel_h = 3;
    std::size_t kernel_w = 3;
    std::size_t stride = 1;
};

// input [C_in,H,W], weights [C_out,C_in,kh,kw], bias [C_out] -> [C_out,H',W']
Tensor conv2d_forward(const Tensor& input, const Tensor& weights, const Tensor& bias,
                      const ConvSpec& spec);

struct ConvGrads {
    Tensor input;
    Tensor weights;
    Tensor bias;
};

ConvGrads conv2d_backward(const Tensor& grad_out, const Tensor& input, const Tensor& weights,
                          const ConvSpec& spec);

// Non-overlapping window max; odd trailing rows/columns are dropped.
// argmax holds the flat input index feeding each output cell (first in
// row-major scan order on ties), which backward uses to route gradients.
struct PoolResult {
    Tensor output;
    std::vector<std::size_t> argmax;
};

PoolResult maxpool2d_forward(const Tensor& input, std::size_t window = 2);

Tensor maxpool2d_backward(const Tensor& grad_out, const std::vector<std::size_t>& argmax,
                          const std::vector<std::size_t>& input_shape);

// input [n], weights [m,n], bias [m] -> [m]
Tensor dense_forward(const Tensor& input, const Tensor& weights, const Tensor& bias);

struct DenseGrads {
    Tensor input;
    Tensor weights;
    Tensor bias;
};

DenseGrads dense_backward(const Tensor& grad_out, const Tensor& input, const Tensor& weights);

Tensor relu(const Tensor& input);
// Gradient passes where input > 0; exactly zero at the kink.
Tensor relu_backward(const Tensor& grad_out, const Tensor& input);

Tensor sigmoid(const Tensor& input);
// grad w.r.t. pre-activation: sigmoid(x) * (1 - sigmoid(x)) * grad_out
Tensor sigmoid_backward(const Tensor& grad_out, const Tensor& input);

double sigmoid_scalar(double x);

}  // namespace polarsift

#endif
