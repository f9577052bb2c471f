#ifndef POLARSIFT_NETWORK_HPP
#define POLARSIFT_NETWORK_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "polarsift/ops.hpp"
#include "polarsift/rng.hpp"
#include "polarsift/tensor.hpp"

namespace polarsift {

enum class LayerKind { Conv, MaxPool, Relu, Dense, Dropout, Flatten, Sigmoid };

struct LayerSpec {
    LayerKind kind = LayerKind::Relu;
    std::size_t filters = 0;  // conv
    std::size_t kernel = 3;   // conv
    std::size_t window = 2;   // maxpool
    std::size_t units = 0;    // dense
    double drop_p = 0.0;      // dropout, in [0,1)

    static LayerSpec conv(std::size_t filters, std::size_t kernel = 3);
    static LayerSpec maxpool(std::size_t window = 2);
    static LayerSpec relu();
    static LayerSpec dense(std::size_t units);
    static LayerSpec dropout(double p);
    static LayerSpec flatten();
    static LayerSpec sigmoid();
};

struct ModelConfig {
    std::string name;
    std::size_t input_channels = 1;
    std::size_t input_height = 64;
    std::size_t input_width = 64;
    std::vector<LayerSpec> layers;
    std::optional<std::size_t> expected_parameters;
};

// Output shape of every layer in sequence, validating the chain.
std::vector<std::vector<std::size_t>> layer_output_shapes(const ModelConfig& config);

// Trainable parameter total: conv (C_out*C_in*kh*kw + C_out), dense (m*n + m).
std::size_t count_parameters(const ModelConfig& config);

// A built network: config plus parameter tensors in declaration order
// (weights then bias for each conv/dense layer).
struct Model {
    ModelConfig config;
    std::vector<Tensor> params;
    // per layer, {weights index, bias index} into params, or {-1,-1}
    std::vector<std::array<int, 2>> param_index;
};

struct LayerParams {
    Tensor weights;
    Tensor bias;
};

// He-normal weights (stddev sqrt(2/fan_in)), zero biases. fan_in is
// C_in*kh*kw for conv and the input width for dense.
LayerParams init_weights(const LayerSpec& spec, std::size_t fan_in, std::size_t input_features,
                         Rng& rng);

Model build_model(const ModelConfig& config, std::uint64_t seed);
Model build_model(const ModelConfig& config, Rng& rng);

enum class Mode { Train, Eval };

// Inverted dropout: train mode zeroes each element with probability p and
// scales survivors by 1/(1-p); eval mode is the identity. The returned mask
// holds the multiplier applied per element.
struct DropoutResult {
    Tensor output;
    Tensor mask;
};
DropoutResult dropout_forward(const Tensor& input, double p, Mode mode, Rng& rng);

// Forward caches are explicit so forward/backward stay pure functions of
// their arguments (safe to run concurrently on distinct samples).
struct ForwardTrace {
    std::vector<Tensor> inputs;  // input tensor seen by each layer
    Tensor output;
    std::vector<std::vector<std::size_t>> pool_argmax;  // per layer, pools only
    std::vector<Tensor> dropout_masks;                  // per layer, dropout only
    double logit = 0.0;        // input to a trailing scalar sigmoid, if present
    double probability = 0.0;  // scalar network output, if the head is scalar
};

ForwardTrace forward(const Model& model, const Tensor& input, Mode mode, Rng* rng = nullptr);

// Eval-mode forward returning the scalar output.
double predict(const Model& model, const Tensor& pixels);

struct Gradients {
    std::vector<Tensor> params;
    Tensor input;
};

// Backpropagate `grad` injected at the output of layer `at_layer` down to the
// input. Parameter gradients above the injection point stay zero.
Gradients backward(const Model& model, const ForwardTrace& trace, Tensor grad,
                   std::size_t at_layer);

// Inject d(objective)/d(logit) below a trailing scalar sigmoid. Training uses
// this with p - y, the exact gradient of binary cross-entropy composed with
// the sigmoid; saliency uses it with +/-1.
Gradients backward_from_logit(const Model& model, const ForwardTrace& trace, double grad_logit);

// Binary cross-entropy on a scalar prediction. The prediction is clamped to
// [eps, 1-eps] with eps = 1e-12 before the logs; grad is w.r.t. the
// pre-clamp prediction.
struct BceResult {
    double loss;
    double grad;
};
BceResult bce_loss(double prediction, int label);

}  // namespace polarsift

#endif
