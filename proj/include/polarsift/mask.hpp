#ifndef POLARSIFT_MASK_HPP
#define POLARSIFT_MASK_HPP

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "polarsift/catalog.hpp"

namespace polarsift {

// Inclusive pixel-coordinate rectangle.
struct Rect {
    long x0 = 0, y0 = 0, x1 = 0, y1 = 0;
    bool operator==(const Rect&) const = default;
};

// Frame regions excluded from extraction. Loaded from config lines
// "rect x0 y0 x1 y1"; the list may be empty.
struct MaskSpec {
    std::vector<Rect> regions;
};

MaskSpec parse_mask(std::istream& in);
MaskSpec load_mask(const std::string& path);
void write_mask(std::ostream& out, const MaskSpec& mask);

// Central horizontal band, central vertical band and four border margins,
// scaled to the frame.
MaskSpec default_instrument_mask(std::size_t frame_w, std::size_t frame_h);

// The size x size cutout box centered on (round(x), round(y)); covers
// [c-size/2, c+size/2-1] on each axis.
Rect cutout_box(double x, double y, std::size_t size);

enum class RejectReason { Edge, Masked };

struct MaskPartition {
    std::vector<SourceRecord> kept;
    std::vector<std::pair<SourceRecord, RejectReason>> rejected;
};

// A source is rejected iff its cutout box extends past the frame edge or
// intersects any exclusion region (edge checked first).
MaskPartition apply_mask(const std::vector<SourceRecord>& sources, const MaskSpec& mask,
                         std::size_t frame_w, std::size_t frame_h, std::size_t cutout_size = 64);

}  // namespace polarsift

#endif
