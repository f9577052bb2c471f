#include "polarsift/cutout.hpp"

#include <algorithm>
#include <cmath>

#include "polarsift/errors.hpp"
#include "polarsift/mask.hpp"

namespace polarsift {

std::vector<std::uint8_t> extract_cutout(const Tensor& frame, double x, double y,
                                         std::size_t size) {
    if (frame.rank() != 2) throw ShapeError("extract_cutout: frame rank must be 2");
    const long h = static_cast<long>(frame.extent(0)), w = static_cast<long>(frame.extent(1));
    const Rect box = cutout_box(x, y, size);
    if (box.x0 < 0 || box.y0 < 0 || box.x1 >= w || box.y1 >= h)
        throw DataError("extract_cutout: box exceeds frame bounds at (" + std::to_string(x) + "," +
                        std::to_string(y) + ")");

    double lo = frame.at(static_cast<std::size_t>(box.y0), static_cast<std::size_t>(box.x0));
    double hi = lo;
    for (long r = box.y0; r <= box.y1; ++r)
        for (long c = box.x0; c <= box.x1; ++c) {
            const double v = frame.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }

    std::vector<std::uint8_t> bytes(size * size, 0);
    if (hi == lo) return bytes;  // degenerate window: all zeros
    const double scale = 255.0 / (hi - lo);
    std::size_t i = 0;
    for (long r = box.y0; r <= box.y1; ++r)
        for (long c = box.x0; c <= box.x1; ++c) {
            const double v = frame.at(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
            bytes[i++] = static_cast<std::uint8_t>(std::floor((v - lo) * scale + 0.5));
        }
    return bytes;
}

Tensor normalize_cutout(const std::vector<std::uint8_t>& bytes, std::size_t size) {
    if (bytes.size() != size * size)
        throw ShapeError("normalize_cutout: byte count " + std::to_string(bytes.size()) +
                         " != " + std::to_string(size * size));
    Tensor t({size, size});
    for (std::size_t i = 0; i < bytes.size(); ++i) t[i] = static_cast<double>(bytes[i]) / 255.0;
    return t;
}

}  // namespace polarsift
