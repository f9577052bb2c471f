#include "polarsift/network.hpp"

#include <algorithm>
#include <cmath>

#include "polarsift/errors.hpp"

namespace polarsift {

LayerSpec LayerSpec::conv(std::size_t filters, std::size_t kernel) {
    LayerSpec s;
    s.kind = LayerKind::Conv;
    s.filters = filters;
    s.kernel = kernel;
    return s;
}
LayerSpec LayerSpec::maxpool(std::size_t window) {
    LayerSpec s;
    s.kind = LayerKind::MaxPool;
    s.window = window;
    return s;
}
LayerSpec LayerSpec::relu() {
    LayerSpec s;
    s.kind = LayerKind::Relu;
    return s;
}
LayerSpec LayerSpec::dense(std::size_t units) {
    LayerSpec s;
    s.kind = LayerKind::Dense;
    s.units = units;
    return s;
}
LayerSpec LayerSpec::dropout(double p) {
    if (p < 0.0 || p >= 1.0) throw DataError("dropout probability " + std::to_string(p) + " outside [0,1)");
    LayerSpec s;
    s.kind = LayerKind::Dropout;
    s.drop_p = p;
    return s;
}
LayerSpec LayerSpec::flatten() {
    LayerSpec s;
    s.kind = LayerKind::Flatten;
    return s;
}
LayerSpec LayerSpec::sigmoid() {
    LayerSpec s;
    s.kind = LayerKind::Sigmoid;
    return s;
}

std::vector<std::vector<std::size_t>> layer_output_shapes(const ModelConfig& config) {
    std::vector<std::vector<std::size_t>> shapes;
    std::vector<std::size_t> cur = {config.input_channels, config.input_height, config.input_width};
    for (std::size_t i = 0; i < config.layers.size(); ++i) {
        const LayerSpec& l = config.layers[i];
        switch (l.kind) {
            case LayerKind::Conv:
                if (cur.size() != 3)
                    throw ShapeError("layer " + std::to_string(i) + ": conv expects a C,H,W input");
                if (cur[1] < l.kernel || cur[2] < l.kernel)
                    throw ShapeError("layer " + std::to_string(i) + ": conv kernel " +
                                     std::to_string(l.kernel) + " exceeds spatial extent " +
                                     std::to_string(cur[1]) + "x" + std::to_string(cur[2]));
                cur = {l.filters, cur[1] - l.kernel + 1, cur[2] - l.kernel + 1};
                break;
            case LayerKind::MaxPool:
                if (cur.size() != 3)
                    throw ShapeError("layer " + std::to_string(i) + ": maxpool expects a C,H,W input");
                cur = {cur[0], cur[1] / l.window, cur[2] / l.window};
                break;
            case LayerKind::Flatten:
                cur = {Tensor::count(cur)};
                break;
            case LayerKind::Dense:
                if (cur.size() != 1)
                    throw ShapeError("layer " + std::to_string(i) + ": dense expects a flat input");
                cur = {l.units};
                break;
            case LayerKind::Relu:
            case LayerKind::Dropout:
            case LayerKind::Sigmoid:
                break;
        }
        shapes.push_back(cur);
    }
    return shapes;
}

std::size_t count_parameters(const ModelConfig& config) {
    std::size_t total = 0;
    std::vector<std::size_t> cur = {config.input_channels, config.input_height, config.input_width};
    for (const LayerSpec& l : config.layers) {
        switch (l.kind) {
            case LayerKind::Conv:
                total += (cur[0] * l.kernel * l.kernel + 1) * l.filters;
                cur = {l.filters, cur[1] - l.kernel + 1, cur[2] - l.kernel + 1};
                break;
            case LayerKind::MaxPool:
                cur = {cur[0], cur[1] / l.window, cur[2] / l.window};
                break;
            case LayerKind::Flatten:
                cur = {Tensor::count(cur)};
                break;
            case LayerKind::Dense:
                total += (cur[0] + 1) * l.units;
                cur = {l.units};
                break;
            default:
                break;
        }
    }
    return total;
}

LayerParams init_weights(const LayerSpec& spec, std::size_t fan_in, std::size_t input_features,
                         Rng& rng) {
    const double stddev = std::sqrt(2.0 / static_cast<double>(fan_in));
    if (spec.kind == LayerKind::Conv) {
        LayerParams p{Tensor({spec.filters, input_features, spec.kernel, spec.kernel}),
                      Tensor({spec.filters})};
        for (std::size_t i = 0; i < p.weights.size(); ++i) p.weights[i] = rng.normal(0.0, stddev);
        return p;
    }
    if (spec.kind == LayerKind::Dense) {
        LayerParams p{Tensor({spec.units, input_features}), Tensor({spec.units})};
        for (std::size_t i = 0; i < p.weights.size(); ++i) p.weights[i] = rng.normal(0.0, stddev);
        return p;
    }
    throw ShapeError("init_weights: layer kind has no parameters");
}

Model build_model(const ModelConfig& config, std::uint64_t seed) {
    Rng rng(seed);
    return build_model(config, rng);
}

Model build_model(const ModelConfig& config, Rng& rng) {
    layer_output_shapes(config);  // validates the chain
    Model m;
    m.config = config;
    std::vector<std::size_t> cur = {config.input_channels, config.input_height, config.input_width};
    for (const LayerSpec& l : config.layers) {
        switch (l.kind) {
            case LayerKind::Conv: {
                LayerParams p = init_weights(l, cur[0] * l.kernel * l.kernel, cur[0], rng);
                m.param_index.push_back({static_cast<int>(m.params.size()),
                                         static_cast<int>(m.params.size() + 1)});
                m.params.push_back(std::move(p.weights));
                m.params.push_back(std::move(p.bias));
                cur = {l.filters, cur[1] - l.kernel + 1, cur[2] - l.kernel + 1};
                break;
            }
            case LayerKind::Dense: {
                LayerParams p = init_weights(l, cur[0], cur[0], rng);
                m.param_index.push_back({static_cast<int>(m.params.size()),
                                         static_cast<int>(m.params.size() + 1)});
                m.params.push_back(std::move(p.weights));
                m.params.push_back(std::move(p.bias));
                cur = {l.units};
                break;
            }
            case LayerKind::MaxPool:
                m.param_index.push_back({-1, -1});
                cur = {cur[0], cur[1] / l.window, cur[2] / l.window};
                break;
            case LayerKind::Flatten:
                m.param_index.push_back({-1, -1});
                cur = {Tensor::count(cur)};
                break;
            default:
                m.param_index.push_back({-1, -1});
                break;
        }
    }
    return m;
}

DropoutResult dropout_forward(const Tensor& input, double p, Mode mode, Rng& rng) {
    if (p < 0.0 || p >= 1.0) throw DataError("dropout probability " + std::to_string(p) + " outside [0,1)");
    if (mode == Mode::Eval || p == 0.0) return {input, Tensor()};
    DropoutResult r{Tensor(input.shape()), Tensor(input.shape())};
    const double scale = 1.0 / (1.0 - p);
    for (std::size_t i = 0; i < input.size(); ++i) {
        const double keep = rng.uniform() < p ? 0.0 : scale;
        r.mask[i] = keep;
        r.output[i] = input[i] * keep;
    }
    return r;
}

ForwardTrace forward(const Model& model, const Tensor& input, Mode mode, Rng* rng) {
    ForwardTrace trace;
    const std::size_t n = model.config.layers.size();
    trace.inputs.reserve(n);
    trace.pool_argmax.resize(n);
    trace.dropout_masks.resize(n);

    Tensor cur = input;
    if (cur.rank() == 2)  // accept bare H,W images for single-channel models
        cur = cur.reshaped({1, cur.extent(0), cur.extent(1)});

    for (std::size_t i = 0; i < n; ++i) {
        const LayerSpec& l = model.config.layers[i];
        trace.inputs.push_back(cur);
        switch (l.kind) {
            case LayerKind::Conv: {
                const Tensor& w = model.params[model.param_index[i][0]];
                const Tensor& b = model.params[model.param_index[i][1]];
                ConvSpec spec{cur.extent(0), l.filters, l.kernel, l.kernel};
                cur = conv2d_forward(cur, w, b, spec);
                break;
            }
            case LayerKind::MaxPool: {
                PoolResult r = maxpool2d_forward(cur, l.window);
                trace.pool_argmax[i] = std::move(r.argmax);
                cur = std::move(r.output);
                break;
            }
            case LayerKind::Relu:
                cur = relu(cur);
                break;
            case LayerKind::Dense: {
                const Tensor& w = model.params[model.param_index[i][0]];
                const Tensor& b = model.params[model.param_index[i][1]];
                cur = dense_forward(cur, w, b);
                break;
            }
            case LayerKind::Dropout: {
                if (mode == Mode::Train && rng == nullptr)
                    throw NumericError("forward: train-mode dropout needs an RNG");
                Rng dummy(0);
                DropoutResult r = dropout_forward(cur, l.drop_p, mode, rng ? *rng : dummy);
                trace.dropout_masks[i] = std::move(r.mask);
                cur = std::move(r.output);
                break;
            }
            case LayerKind::Flatten:
                cur = cur.reshaped({cur.size()});
                break;
            case LayerKind::Sigmoid:
                if (cur.size() == 1) trace.logit = cur[0];
                cur = sigmoid(cur);
                break;
        }
    }
    trace.output = cur;
    if (trace.output.size() == 1) trace.probability = trace.output[0];
    return trace;
}

double predict(const Model& model, const Tensor& pixels) {
    return forward(model, pixels, Mode::Eval).probability;
}

Gradients backward(const Model& model, const ForwardTrace& trace, Tensor grad,
                   std::size_t at_layer) {
    Gradients g;
    g.params.reserve(model.params.size());
    for (const Tensor& p : model.params) g.params.emplace_back(p.shape());

    for (std::size_t ii = at_layer + 1; ii-- > 0;) {
        const LayerSpec& l = model.config.layers[ii];
        const Tensor& layer_in = trace.inputs[ii];
        switch (l.kind) {
            case LayerKind::Conv: {
                const Tensor& w = model.params[model.param_index[ii][0]];
                ConvSpec spec{layer_in.extent(0), l.filters, l.kernel, l.kernel};
                ConvGrads cg = conv2d_backward(grad, layer_in, w, spec);
                g.params[model.param_index[ii][0]] = std::move(cg.weights);
                g.params[model.param_index[ii][1]] = std::move(cg.bias);
                grad = std::move(cg.input);
                break;
            }
            case LayerKind::MaxPool:
                grad = maxpool2d_backward(grad, trace.pool_argmax[ii], layer_in.shape());
                break;
            case LayerKind::Relu:
                grad = relu_backward(grad, layer_in);
                break;
            case LayerKind::Dense: {
                const Tensor& w = model.params[model.param_index[ii][0]];
                DenseGrads dg = dense_backward(grad, layer_in, w);
                g.params[model.param_index[ii][0]] = std::move(dg.weights);
                g.params[model.param_index[ii][1]] = std::move(dg.bias);
                grad = std::move(dg.input);
                break;
            }
            case LayerKind::Dropout: {
                const Tensor& mask = trace.dropout_masks[ii];
                if (mask.size() == 0) break;  // eval mode: identity
                for (std::size_t k = 0; k < grad.size(); ++k) grad[k] *= mask[k];
                break;
            }
            case LayerKind::Flatten:
                grad = grad.reshaped(layer_in.shape());
                break;
            case LayerKind::Sigmoid:
                grad = sigmoid_backward(grad, layer_in);
                break;
        }
    }
    g.input = std::move(grad);
    return g;
}

Gradients backward_from_logit(const Model& model, const ForwardTrace& trace, double grad_logit) {
    const std::size_t n = model.config.layers.size();
    if (n == 0 || model.config.layers.back().kind != LayerKind::Sigmoid)
        throw ShapeError("backward_from_logit: model head is not a sigmoid");
    if (trace.inputs[n - 1].size() != 1)
        throw ShapeError("backward_from_logit: sigmoid input is not scalar");
    if (n == 1) {
        Gradients g;
        g.input = Tensor({1}, {grad_logit});
        return g;
    }
    return backward(model, trace, Tensor({1}, {grad_logit}), n - 2);
}

BceResult bce_loss(double prediction, int label) {
    if (label != 0 && label != 1)
        throw DataError("bce_loss: label " + std::to_string(label) + " outside {0,1}");
    const double eps = 1e-12;
    const double p = std::clamp(prediction, eps, 1.0 - eps);
    const double y = static_cast<double>(label);
    const double loss = -(y * std::log(p) + (1.0 - y) * std::log(1.0 - p));
    const double grad = (p - y) / (p * (1.0 - p));
    return {loss, grad};
}

}  // namespace polarsift
