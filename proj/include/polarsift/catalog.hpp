#ifndef POLARSIFT_CATALOG_HPP
#define POLARSIFT_CATALOG_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace polarsift {

// One extraction-catalog row. Coordinates are 0-indexed in memory; catalog
// files store them 1-indexed (FITS convention).
struct SourceRecord {
    long long id = 0;
    double x = 0.0;
    double y = 0.0;
    double mag = 0.0;
    unsigned long long flags = 0;

    bool operator==(const SourceRecord&) const = default;
};

// Parses whitespace-separated catalogs whose '#' header lines declare column
// order ("# <index> <NAME> ..."). NUMBER, X_IMAGE, Y_IMAGE, MAG_BEST and
// FLAGS are required; extra columns are ignored.
std::vector<SourceRecord> parse_catalog(std::istream& in);
std::vector<SourceRecord> parse_catalog_file(const std::string& path);

void write_catalog(std::ostream& out, const std::vector<SourceRecord>& records);
void write_catalog_file(const std::string& path, const std::vector<SourceRecord>& records);

}  // namespace polarsift

#endif
