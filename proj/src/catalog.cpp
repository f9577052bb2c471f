#include "polarsift/catalog.hpp"

#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "polarsift/errors.hpp"
#include "polarsift/serial.hpp"

namespace polarsift {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream ss(line);
    std::string tok;
    while (ss >> tok) out.push_back(tok);
    return out;
}

double parse_double(const std::string& tok, std::size_t line_no) {
    double v = 0.0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw DataError("catalog line " + std::to_string(line_no) + ": non-numeric field '" + tok + "'");
    return v;
}

long long parse_ll(const std::string& tok, std::size_t line_no) {
    long long v = 0;
    const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (res.ec != std::errc() || res.ptr != tok.data() + tok.size())
        throw DataError("catalog line " + std::to_string(line_no) + ": non-numeric field '" + tok + "'");
    return v;
}

}  // namespace

std::vector<SourceRecord> parse_catalog(std::istream& in) {
    std::map<std::string, std::size_t> columns;  // name -> 0-based column
    std::vector<SourceRecord> records;
    std::string line;
    std::size_t line_no = 0;
    bool columns_checked = false;

    auto column = [&](const char* name) {
        const auto it = columns.find(name);
        if (it == columns.end())
            throw DataError(std::string("catalog: missing required column ") + name);
        return it->second;
    };

    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        if (line[first] == '#') {
            const auto toks = split_ws(line.substr(first + 1));
            if (toks.size() >= 2) {
                long long idx = 0;
                const auto res = std::from_chars(toks[0].data(), toks[0].data() + toks[0].size(), idx);
                if (res.ec == std::errc() && res.ptr == toks[0].data() + toks[0].size() && idx >= 1)
                    columns[toks[1]] = static_cast<std::size_t>(idx - 1);
            }
            continue;
        }

        if (!columns_checked) {
            column("NUMBER");
            column("X_IMAGE");
            column("Y_IMAGE");
            column("MAG_BEST");
            column("FLAGS");
            columns_checked = true;
        }

        const auto toks = split_ws(line);
        const std::size_t need = std::max({column("NUMBER"), column("X_IMAGE"), column("Y_IMAGE"),
                                           column("MAG_BEST"), column("FLAGS")});
        if (toks.size() <= need)
            throw DataError("catalog line " + std::to_string(line_no) + ": expected at least " +
                            std::to_string(need + 1) + " columns, got " + std::to_string(toks.size()));

        SourceRecord rec;
        rec.id = parse_ll(toks[column("NUMBER")], line_no);
        rec.x = parse_double(toks[column("X_IMAGE")], line_no) - 1.0;  // to 0-indexed
        rec.y = parse_double(toks[column("Y_IMAGE")], line_no) - 1.0;
        rec.mag = parse_double(toks[column("MAG_BEST")], line_no);
        rec.flags = static_cast<unsigned long long>(parse_ll(toks[column("FLAGS")], line_no));
        records.push_back(rec);
    }

    if (!columns_checked) {
        // header-only stream: still require the declaration to be complete
        if (!columns.empty()) {
            column("NUMBER");
            column("X_IMAGE");
            column("Y_IMAGE");
            column("MAG_BEST");
            column("FLAGS");
        }
    }
    return records;
}

std::vector<SourceRecord> parse_catalog_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open catalog '" + path + "'");
    return parse_catalog(in);
}

void write_catalog(std::ostream& out, const std::vector<SourceRecord>& records) {
    out << "#   1 NUMBER\n#   2 X_IMAGE\n#   3 Y_IMAGE\n#   4 MAG_BEST\n#   5 FLAGS\n";
    for (const SourceRecord& r : records) {
        out << r.id << ' ' << format_double(r.x + 1.0) << ' ' << format_double(r.y + 1.0) << ' '
            << format_double(r.mag) << ' ' << r.flags << '\n';
    }
}

void write_catalog_file(const std::string& path, const std::vector<SourceRecord>& records) {
    std::ofstream out(path);
    if (!out) throw DataError("cannot write catalog '" + path + "'");
    write_catalog(out, records);
}

}  // namespace polarsift
