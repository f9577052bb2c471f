#include "polarsift/mask.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "polarsift/errors.hpp"

namespace polarsift {

MaskSpec parse_mask(std::istream& in) {
    MaskSpec mask;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::istringstream ss(line);
        std::string word;
        if (!(ss >> word) || word[0] == '#') continue;
        if (word != "rect")
            throw DataError("mask line " + std::to_string(line_no) + ": expected 'rect', got '" +
                            word + "'");
        Rect r;
        if (!(ss >> r.x0 >> r.y0 >> r.x1 >> r.y1))
            throw DataError("mask line " + std::to_string(line_no) + ": expected 4 integer bounds");
        mask.regions.push_back(r);
    }
    return mask;
}

MaskSpec load_mask(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open mask config '" + path + "'");
    return parse_mask(in);
}

void write_mask(std::ostream& out, const MaskSpec& mask) {
    for (const Rect& r : mask.regions)
        out << "rect " << r.x0 << ' ' << r.y0 << ' ' << r.x1 << ' ' << r.y1 << '\n';
}

MaskSpec default_instrument_mask(std::size_t frame_w, std::size_t frame_h) {
    const long w = static_cast<long>(frame_w), h = static_cast<long>(frame_h);
    const long band = std::max(8L, std::min(w, h) / 32);    // central cross half-width
    const long margin = std::max(8L, std::min(w, h) / 24);  // border exclusion depth
    MaskSpec m;
    m.regions.push_back({0, h / 2 - band, w - 1, h / 2 + band});  // horizontal band
    m.regions.push_back({w / 2 - band, 0, w / 2 + band, h - 1});  // vertical band
    m.regions.push_back({0, 0, w - 1, margin - 1});               // top
    m.regions.push_back({0, h - margin, w - 1, h - 1});           // bottom
    m.regions.push_back({0, 0, margin - 1, h - 1});               // left
    m.regions.push_back({w - margin, 0, w - 1, h - 1});           // right
    return m;
}

Rect cutout_box(double x, double y, std::size_t size) {
    const long cx = std::llround(x), cy = std::llround(y);
    const long half = static_cast<long>(size) / 2;
    return {cx - half, cy - half, cx - half + static_cast<long>(size) - 1,
            cy - half + static_cast<long>(size) - 1};
}

namespace {

bool intersects(const Rect& a, const Rect& b) {
    return !(a.x1 < b.x0 || b.x1 < a.x0 || a.y1 < b.y0 || b.y1 < a.y0);
}

}  // namespace

MaskPartition apply_mask(const std::vector<SourceRecord>& sources, const MaskSpec& mask,
                         std::size_t frame_w, std::size_t frame_h, std::size_t cutout_size) {
    MaskPartition part;
    const long w = static_cast<long>(frame_w), h = static_cast<long>(frame_h);
    for (const SourceRecord& s : sources) {
        const Rect box = cutout_box(s.x, s.y, cutout_size);
        if (box.x0 < 0 || box.y0 < 0 || box.x1 >= w || box.y1 >= h) {
            part.rejected.emplace_back(s, RejectReason::Edge);
            continue;
        }
        bool masked = false;
        for (const Rect& r : mask.regions) {
            if (intersects(box, r)) {
                masked = true;
                break;
            }
        }
        if (masked)
            part.rejected.emplace_back(s, RejectReason::Masked);
        else
            part.kept.push_back(s);
    }
    return part;
}

}  // namespace polarsift
