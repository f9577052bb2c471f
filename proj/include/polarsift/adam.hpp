#ifndef POLARSIFT_ADAM_HPP
#define POLARSIFT_ADAM_HPP

#include <cstdint>
#include <vector>

#include "polarsift/tensor.hpp"

namespace polarsift {

struct AdamConfig {
    double learning_rate = 0.001;
    double beta1 = 0.9;
    double beta2 = 0.999;
    double epsilon = 1e-8;
};

struct AdamState {
    std::vector<Tensor> m;
    std::vector<Tensor> v;
    std::uint64_t step = 0;

    static AdamState like(const std::vector<Tensor>& params);
};

// One bias-corrected Adam update over all parameter tensors; increments
// state.step.
void adam_step(std::vector<Tensor>& params, const std::vector<Tensor>& grads, AdamState& state,
               const AdamConfig& cfg);

}  // namespace polarsift

#endif
