#include "polarsift/pgm.hpp"

#include <fstream>

#include "polarsift/errors.hpp"

namespace polarsift {

namespace {

// next whitespace-delimited token, skipping '#' comment lines
std::string next_token(std::istream& in) {
    std::string tok;
    int c;
    while ((c = in.get()) != EOF) {
        if (c == '#') {
            while ((c = in.get()) != EOF && c != '\n') {
            }
            continue;
        }
        if (std::isspace(c)) {
            if (!tok.empty()) return tok;
            continue;
        }
        tok.push_back(static_cast<char>(c));
    }
    return tok;
}

}  // namespace

void write_pgm(const std::string& path, const std::vector<std::uint8_t>& pixels,
               std::size_t width, std::size_t height) {
    if (pixels.size() != width * height)
        throw DataError("write_pgm: pixel count " + std::to_string(pixels.size()) +
                        " != " + std::to_string(width) + "x" + std::to_string(height));
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write PGM '" + path + "'");
    out << "P5\n" << width << " " << height << "\n255\n";
    out.write(reinterpret_cast<const char*>(pixels.data()),
              static_cast<std::streamsize>(pixels.size()));
    if (!out) throw DataError("write failed for PGM '" + path + "'");
}

std::vector<std::uint8_t> read_pgm(const std::string& path, std::size_t& width,
                                   std::size_t& height) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open PGM '" + path + "'");
    if (next_token(in) != "P5") throw DataError("PGM '" + path + "': wrong magic (want P5)");
    try {
        width = std::stoul(next_token(in));
        height = std::stoul(next_token(in));
        if (std::stoul(next_token(in)) != 255)
            throw DataError("PGM '" + path + "': maxval must be 255");
    } catch (const std::logic_error&) {
        throw DataError("PGM '" + path + "': malformed header");
    }
    std::vector<std::uint8_t> pixels(width * height);
    in.read(reinterpret_cast<char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
    if (in.gcount() != static_cast<std::streamsize>(pixels.size()))
        throw DataError("PGM '" + path + "': truncated pixel data");
    return pixels;
}

std::vector<std::uint8_t> read_cutout(const std::string& path) {
    std::size_t w = 0, h = 0;
    auto pixels = read_pgm(path, w, h);
    if (w != kCutoutSize || h != kCutoutSize)
        throw DataError("cutout '" + path + "': dimensions " + std::to_string(w) + "x" +
                        std::to_string(h) + ", want 64x64");
    return pixels;
}

void write_cutout(const std::string& path, const std::vector<std::uint8_t>& pixels) {
    write_pgm(path, pixels, kCutoutSize, kCutoutSize);
}

}  // namespace polarsift
