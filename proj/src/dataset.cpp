#include "polarsift/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

#include "polarsift/cutout.hpp"
#include "polarsift/errors.hpp"
#include "polarsift/pgm.hpp"
#include "polarsift/rng.hpp"

namespace polarsift {

std::size_t DatasetManifest::count(Split split, int label) const {
    std::size_t n = 0;
    for (const ManifestEntry& e : entries)
        if (e.split == split && e.label == label) ++n;
    return n;
}

DatasetManifest split_dataset(const std::vector<std::pair<std::string, int>>& items,
                              std::uint64_t seed) {
    if (items.empty()) throw DataError("split_dataset: empty sample list");
    std::vector<std::size_t> order(items.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;

    Rng rng(derive_seed(seed, 0x5B117));
    for (std::size_t i = order.size(); i-- > 1;)  // Fisher-Yates
        std::swap(order[i], order[rng.next() % (i + 1)]);

    DatasetManifest m;
    m.seed = seed;
    const std::size_t train_count = items.size() * 8 / 10;
    for (std::size_t k = 0; k < order.size(); ++k) {
        const auto& [path, label] = items[order[k]];
        m.entries.push_back({path, label, k < train_count ? Split::Train : Split::Val});
    }
    return m;
}

void write_manifest(const std::string& path, const DatasetManifest& manifest) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write manifest '" + path + "'");
    out << "# seed=" << manifest.seed << "\n";
    for (const ManifestEntry& e : manifest.entries)
        out << e.path << '\t' << e.label << '\t' << (e.split == Split::Train ? "train" : "val")
            << '\n';
}

DatasetManifest read_manifest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open manifest '" + path + "'");
    DatasetManifest m;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line[0] == '#') {
            const auto pos = line.find("seed=");
            if (pos != std::string::npos) {
                const std::string v = line.substr(pos + 5);
                const auto res = std::from_chars(v.data(), v.data() + v.size(), m.seed);
                if (res.ec != std::errc())
                    throw DataError("manifest line " + std::to_string(line_no) + ": bad seed");
            }
            continue;
        }
        std::istringstream ss(line);
        ManifestEntry e;
        std::string split;
        if (!(ss >> e.path >> e.label >> split) || (split != "train" && split != "val"))
            throw DataError("manifest line " + std::to_string(line_no) + ": malformed entry");
        e.split = split == "train" ? Split::Train : Split::Val;
        m.entries.push_back(e);
    }
    return m;
}

std::vector<SourceRecord> select_stars_by_magnitude(const std::vector<SourceRecord>& sources,
                                                    double bin_width, std::size_t per_bin,
                                                    std::size_t max_bins) {
    if (sources.empty()) return {};
    double min_mag = sources.front().mag;
    for (const SourceRecord& s : sources) min_mag = std::min(min_mag, s.mag);
    const double anchor = std::floor(min_mag);

    std::map<long, std::vector<SourceRecord>> bins;
    for (const SourceRecord& s : sources)
        bins[static_cast<long>(std::floor((s.mag - anchor) / bin_width))].push_back(s);

    std::vector<SourceRecord> picked;
    std::size_t bins_used = 0;
    for (auto& [bin, members] : bins) {  // std::map: ascending bin, brightest first
        if (bins_used == max_bins) break;
        std::stable_sort(members.begin(), members.end(),
                         [](const SourceRecord& a, const SourceRecord& b) { return a.mag < b.mag; });
        for (std::size_t i = 0; i < std::min(per_bin, members.size()); ++i)
            picked.push_back(members[i]);
        ++bins_used;
    }
    return picked;
}

std::vector<Sample> load_samples(const DatasetManifest& manifest, Split split,
                                 const std::string& base_dir) {
    std::vector<Sample> samples;
    for (const ManifestEntry& e : manifest.entries) {
        if (e.split != split) continue;
        const auto path = std::filesystem::path(base_dir) / e.path;
        Sample s;
        s.pixels = normalize_cutout(read_cutout(path.string()));
        s.label = e.label;
        s.frame_id = e.path;
        samples.push_back(std::move(s));
    }
    return samples;
}

}  // namespace polarsift
