#ifndef POLARSIFT_AUGMENT_HPP
#define POLARSIFT_AUGMENT_HPP

#include <cstdint>

#include "polarsift/rng.hpp"
#include "polarsift/tensor.hpp"

namespace polarsift {

// Stochastic training-time transforms. Flips and the 180-degree rotation are
// taken with probability 0.5 each, shifts are integer draws in +/-shift_max
// per axis, and the horizontal shear angle is uniform in +/-shear_max_deg
// (bilinear resampling). Vacated pixels take the nearest edge value and the
// result is clamped to [0,1].
struct AugmentPolicy {
    bool hflip = true;
    bool vflip = true;
    bool rot180 = true;
    long shift_max = 6;  // 10% of a 64 px cutout
    double shear_max_deg = 11.0;

    static AugmentPolicy identity() { return {false, false, false, 0, 0.0}; }
};

Tensor hflip_image(const Tensor& img);
Tensor vflip_image(const Tensor& img);
Tensor rotate180(const Tensor& img);
Tensor shift_image(const Tensor& img, long dx, long dy);
Tensor shear_image(const Tensor& img, double angle_deg);

Tensor augment(const Tensor& img, Rng& rng, const AugmentPolicy& policy);

// Augment with an RNG stream derived from (seed, index), so a batch can be
// processed in any order (or in parallel) and still match serial output
// bit for bit.
Tensor augment_indexed(const Tensor& img, std::uint64_t seed, std::uint64_t index,
                       const AugmentPolicy& policy);

}  // namespace polarsift

#endif
