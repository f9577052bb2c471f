#include "polarsift/models.hpp"

#include "polarsift/errors.hpp"

namespace polarsift {

namespace {

ModelConfig build_cnn(const std::string& name, const std::vector<std::size_t>& filters) {
    ModelConfig cfg;
    cfg.name = name;
    cfg.input_channels = 1;
    cfg.input_height = 64;
    cfg.input_width = 64;
    for (std::size_t f : filters) {
        cfg.layers.push_back(LayerSpec::conv(f, 3));
        cfg.layers.push_back(LayerSpec::relu());
        cfg.layers.push_back(LayerSpec::maxpool(2));
    }
    cfg.layers.push_back(LayerSpec::dropout(0.4));
    cfg.layers.push_back(LayerSpec::flatten());
    cfg.layers.push_back(LayerSpec::dense(512));
    cfg.layers.push_back(LayerSpec::relu());
    cfg.layers.push_back(LayerSpec::dense(1));
    cfg.layers.push_back(LayerSpec::sigmoid());
    return cfg;
}

}  // namespace

ModelConfig build_paper_model() {
    ModelConfig cfg = build_cnn("cnn3", {32, 64, 128});
    cfg.expected_parameters = 2452993;
    return cfg;
}

ModelConfig build_variant(int conv_layers) {
    if (conv_layers == 2) return build_cnn("cnn2", {32, 64});
    if (conv_layers == 3) return build_paper_model();
    if (conv_layers == 4) return build_cnn("cnn4", {32, 64, 128, 256});
    throw DataError("unsupported model depth " + std::to_string(conv_layers) +
                    " (supported: 2, 3, 4)");
}

ModelConfig model_config_by_name(const std::string& name) {
    if (name == "cnn2") return build_variant(2);
    if (name == "cnn3" || name == "paper") return build_paper_model();
    if (name == "cnn4") return build_variant(4);
    throw DataError("unknown model '" + name + "' (expected cnn2, cnn3 or cnn4)");
}

}  // namespace polarsift
