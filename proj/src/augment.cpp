#include "polarsift/augment.hpp"

#include <algorithm>
#include <cmath>

#include "polarsift/errors.hpp"

namespace polarsift {

namespace {

void check_image(const Tensor& img) {
    if (img.rank() != 2) throw ShapeError("augment: image rank " + std::to_string(img.rank()) + ", want 2");
}

long clamp_index(long i, long n) { return std::clamp(i, 0L, n - 1); }

}  // namespace

Tensor hflip_image(const Tensor& img) {
    check_image(img);
    const std::size_t h = img.extent(0), w = img.extent(1);
    Tensor out({h, w});
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) out.at(r, c) = img.at(r, w - 1 - c);
    return out;
}

Tensor vflip_image(const Tensor& img) {
    check_image(img);
    const std::size_t h = img.extent(0), w = img.extent(1);
    Tensor out({h, w});
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) out.at(r, c) = img.at(h - 1 - r, c);
    return out;
}

Tensor rotate180(const Tensor& img) {
    check_image(img);
    const std::size_t h = img.extent(0), w = img.extent(1);
    Tensor out({h, w});
    for (std::size_t r = 0; r < h; ++r)
        for (std::size_t c = 0; c < w; ++c) out.at(r, c) = img.at(h - 1 - r, w - 1 - c);
    return out;
}

Tensor shift_image(const Tensor& img, long dx, long dy) {
    check_image(img);
    const long h = static_cast<long>(img.extent(0)), w = static_cast<long>(img.extent(1));
    Tensor out({img.extent(0), img.extent(1)});
    for (long r = 0; r < h; ++r)
        for (long c = 0; c < w; ++c)
            out.at(r, c) = img.at(clamp_index(r - dy, h), clamp_index(c - dx, w));
    return out;
}

Tensor shear_image(const Tensor& img, double angle_deg) {
    check_image(img);
    const long h = static_cast<long>(img.extent(0)), w = static_cast<long>(img.extent(1));
    const double t = std::tan(angle_deg * 3.14159265358979323846 / 180.0);
    const double cy = 0.5 * static_cast<double>(h - 1);
    Tensor out({img.extent(0), img.extent(1)});
    for (long r = 0; r < h; ++r) {
        const double shift = t * (static_cast<double>(r) - cy);
        for (long c = 0; c < w; ++c) {
            const double src = static_cast<double>(c) - shift;
            const double clamped = std::clamp(src, 0.0, static_cast<double>(w - 1));
            const long c0 = static_cast<long>(std::floor(clamped));
            const long c1 = std::min(c0 + 1, w - 1);
            const double frac = clamped - static_cast<double>(c0);
            out.at(r, c) = (1.0 - frac) * img.at(r, c0) + frac * img.at(r, c1);
        }
    }
    return out;
}

Tensor augment(const Tensor& img, Rng& rng, const AugmentPolicy& policy) {
    Tensor out = img;
    if (policy.hflip && rng.bernoulli(0.5)) out = hflip_image(out);
    if (policy.vflip && rng.bernoulli(0.5)) out = vflip_image(out);
    if (policy.rot180 && rng.bernoulli(0.5)) out = rotate180(out);
    if (policy.shift_max > 0) {
        const long dx = rng.uniform_int(-policy.shift_max, policy.shift_max);
        const long dy = rng.uniform_int(-policy.shift_max, policy.shift_max);
        if (dx != 0 || dy != 0) out = shift_image(out, dx, dy);
    }
    if (policy.shear_max_deg > 0.0) {
        const double angle = rng.uniform(-policy.shear_max_deg, policy.shear_max_deg);
        out = shear_image(out, angle);
        for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::clamp(out[i], 0.0, 1.0);
    }
    return out;
}

Tensor augment_indexed(const Tensor& img, std::uint64_t seed, std::uint64_t index,
                       const AugmentPolicy& policy) {
    Rng rng(derive_seed(seed, 0xA7C0DE, index));
    return augment(img, rng, policy);
}

}  // namespace polarsift
