#include "polarsift/fits.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include "polarsift/errors.hpp"
#include "polarsift/serial.hpp"

namespace polarsift {

namespace {

constexpr std::size_t kBlock = 2880;
constexpr std::size_t kCard = 80;

std::string card(const std::string& key, const std::string& value) {
    std::string c = key;
    c.resize(8, ' ');
    c += "= ";
    std::string v = value;
    if (v.size() < 20) v.insert(0, 20 - v.size(), ' ');  // right-justify to column 30
    c += v;
    c.resize(kCard, ' ');
    return c;
}

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t'");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t'");
    return s.substr(a, b - a + 1);
}

std::uint16_t byteswap16(std::uint16_t v) { return static_cast<std::uint16_t>((v >> 8) | (v << 8)); }

std::uint32_t byteswap32(std::uint32_t v) {
    return ((v & 0xFF000000u) >> 24) | ((v & 0x00FF0000u) >> 8) | ((v & 0x0000FF00u) << 8) |
           ((v & 0x000000FFu) << 24);
}

}  // namespace

FitsImage read_fits(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open FITS file '" + path + "'");

    std::map<std::string, std::string> header;
    bool have_end = false;
    std::size_t blocks = 0;
    std::vector<char> block(kBlock);
    while (!have_end) {
        in.read(block.data(), kBlock);
        if (in.gcount() != static_cast<std::streamsize>(kBlock))
            throw DataError("FITS '" + path + "': truncated header block");
        ++blocks;
        for (std::size_t i = 0; i < kBlock / kCard; ++i) {
            const std::string c(block.data() + i * kCard, kCard);
            const std::string key = trim(c.substr(0, 8));
            if (key == "END") {
                have_end = true;
                break;
            }
            if (key.empty() || c.size() < 10 || c[8] != '=') continue;
            std::string value = c.substr(10);
            const auto slash = value.find('/');
            if (slash != std::string::npos) value = value.substr(0, slash);
            header[key] = trim(value);
        }
        if (blocks > 64) throw DataError("FITS '" + path + "': header END card not found");
    }

    auto require = [&](const char* key) {
        const auto it = header.find(key);
        if (it == header.end()) throw DataError("FITS '" + path + "': missing " + std::string(key));
        return it->second;
    };

    if (require("SIMPLE") != "T") throw DataError("FITS '" + path + "': SIMPLE is not T");
    const int bitpix = std::stoi(require("BITPIX"));
    if (bitpix != 16 && bitpix != -32)
        throw DataError("FITS '" + path + "': unsupported BITPIX " + std::to_string(bitpix));
    const long naxis = std::stol(require("NAXIS"));
    if (naxis != 2)
        throw DataError("FITS '" + path + "': unsupported NAXIS " + std::to_string(naxis));
    const std::size_t w = std::stoul(require("NAXIS1"));
    const std::size_t h = std::stoul(require("NAXIS2"));

    FitsImage img;
    img.bitpix = bitpix;
    img.bzero = header.count("BZERO") ? std::stod(header["BZERO"]) : 0.0;
    img.bscale = header.count("BSCALE") ? std::stod(header["BSCALE"]) : 1.0;
    img.pixels = Tensor({h, w});

    const std::size_t n = h * w;
    const std::size_t elem = bitpix == 16 ? 2 : 4;
    std::vector<char> raw(n * elem);
    in.read(raw.data(), static_cast<std::streamsize>(raw.size()));
    if (in.gcount() != static_cast<std::streamsize>(raw.size()))
        throw DataError("FITS '" + path + "': truncated data unit");

    if (bitpix == 16) {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint16_t be;
            std::memcpy(&be, raw.data() + i * 2, 2);
            const auto stored = static_cast<std::int16_t>(byteswap16(be));
            img.pixels[i] = img.bzero + img.bscale * static_cast<double>(stored);
        }
    } else {
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t be;
            std::memcpy(&be, raw.data() + i * 4, 4);
            const std::uint32_t host = byteswap32(be);
            float f;
            std::memcpy(&f, &host, 4);
            img.pixels[i] = img.bzero + img.bscale * static_cast<double>(f);
        }
    }
    return img;
}

Tensor read_frame(const std::string& path) { return read_fits(path).pixels; }

void write_fits(const std::string& path, const FitsImage& image) {
    if (image.pixels.rank() != 2) throw ShapeError("write_fits: pixels rank must be 2");
    if (image.bitpix != 16 && image.bitpix != -32)
        throw DataError("write_fits: unsupported BITPIX " + std::to_string(image.bitpix));
    if (image.bscale == 0.0) throw DataError("write_fits: BSCALE must be nonzero");

    const std::size_t h = image.pixels.extent(0), w = image.pixels.extent(1);
    std::ostringstream hdr;
    hdr << card("SIMPLE", "T") << card("BITPIX", std::to_string(image.bitpix))
        << card("NAXIS", "2") << card("NAXIS1", std::to_string(w))
        << card("NAXIS2", std::to_string(h)) << card("BZERO", format_double(image.bzero))
        << card("BSCALE", format_double(image.bscale));
    std::string header = hdr.str();
    header += "END";
    header.resize(((header.size() + kBlock - 1) / kBlock) * kBlock, ' ');

    const std::size_t n = h * w;
    std::string data;
    if (image.bitpix == 16) {
        data.resize(n * 2);
        for (std::size_t i = 0; i < n; ++i) {
            const double stored = std::round((image.pixels[i] - image.bzero) / image.bscale);
            if (stored < -32768.0 || stored > 32767.0)
                throw DataError("write_fits: value " + format_double(image.pixels[i]) +
                                " out of int16 range under BZERO/BSCALE");
            const std::uint16_t be = byteswap16(static_cast<std::uint16_t>(
                static_cast<std::int16_t>(stored)));
            std::memcpy(data.data() + i * 2, &be, 2);
        }
    } else {
        data.resize(n * 4);
        for (std::size_t i = 0; i < n; ++i) {
            const float f = static_cast<float>((image.pixels[i] - image.bzero) / image.bscale);
            std::uint32_t host;
            std::memcpy(&host, &f, 4);
            const std::uint32_t be = byteswap32(host);
            std::memcpy(data.data() + i * 4, &be, 4);
        }
    }
    data.resize(((data.size() + kBlock - 1) / kBlock) * kBlock, '\0');

    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write FITS file '" + path + "'");
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out) throw DataError("write failed for FITS file '" + path + "'");
}

}  // namespace polarsift
