#ifndef POLARSIFT_MODELS_HPP
#define POLARSIFT_MODELS_HPP

#include "polarsift/network.hpp"

namespace polarsift {

// The production architecture: 3 conv/pool stages (32, 64, 128 filters of
// 3x3, stride 1, valid padding), dropout 0.4 after the last pool, dense 512,
// sigmoid head. On a 64x64 single-channel input the spatial chain is
// 62->31->29->14->12->6, flatten 4608, and the trainable parameter total is
// 2,452,993.
ModelConfig build_paper_model();

// Shallower/deeper comparison models: 2 conv stages (32, 64 filters) or
// 4 stages (32, 64, 128, 256), same head. Other depths are not supported.
ModelConfig build_variant(int conv_layers);

// Lookup by the names the CLI accepts: cnn2, cnn3, cnn4.
ModelConfig model_config_by_name(const std::string& name);

}  // namespace polarsift

#endif
