#ifndef POLARSIFT_CUTOUT_HPP
#define POLARSIFT_CUTOUT_HPP

#include <cstdint>
#include <vector>

#include "polarsift/tensor.hpp"

namespace polarsift {

// Extracts the size x size window centered on (round(x), round(y)) and
// stretches it to 8 bits by linear min-max: byte = round(255*(v-min)/(max-min)),
// round half up. Constant windows map to all zeros.
std::vector<std::uint8_t> extract_cutout(const Tensor& frame, double x, double y,
                                         std::size_t size = 64);

// Exact division by 255 into a {size,size} tensor of [0,1] values.
Tensor normalize_cutout(const std::vector<std::uint8_t>& bytes, std::size_t size = 64);

}  // namespace polarsift

#endif
