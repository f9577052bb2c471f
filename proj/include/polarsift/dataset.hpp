#ifndef POLARSIFT_DATASET_HPP
#define POLARSIFT_DATASET_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "polarsift/catalog.hpp"
#include "polarsift/tensor.hpp"

namespace polarsift {

inline constexpr int kLabelArtefact = 0;
inline constexpr int kLabelStar = 1;

// A training-ready cutout: pixels in [0,1] plus provenance.
struct Sample {
    Tensor pixels;
    int label = kLabelArtefact;
    long long source_id = 0;
    std::string frame_id;
};

enum class Split { Train, Val };

struct ManifestEntry {
    std::string path;  // relative to the manifest's directory
    int label = 0;
    Split split = Split::Train;
    bool operator==(const ManifestEntry&) const = default;
};

struct DatasetManifest {
    std::uint64_t seed = 0;
    std::vector<ManifestEntry> entries;

    std::size_t count(Split split, int label) const;
};

// Seeded shuffle, first 80% (floor) train, remainder val.
DatasetManifest split_dataset(const std::vector<std::pair<std::string, int>>& items,
                              std::uint64_t seed);

void write_manifest(const std::string& path, const DatasetManifest& manifest);
DatasetManifest read_manifest(const std::string& path);

// Magnitude-binned star sampling: 1-magnitude-wide bins anchored at
// floor(min mag), the brightest per_bin sources per bin, bins scanned
// brightest-first until max_bins bins have yielded picks.
std::vector<SourceRecord> select_stars_by_magnitude(const std::vector<SourceRecord>& sources,
                                                    double bin_width = 1.0,
                                                    std::size_t per_bin = 1,
                                                    std::size_t max_bins = 5);

// Reads every cutout of one split into normalized samples, in manifest order.
std::vector<Sample> load_samples(const DatasetManifest& manifest, Split split,
                                 const std::string& base_dir);

}  // namespace polarsift

#endif
