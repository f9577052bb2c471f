#include "polarsift/serial.hpp"

#include <array>
#include <charconv>
#include <cstring>
#include <istream>
#include <ostream>

#include "polarsift/errors.hpp"

namespace polarsift {

namespace {

void write_bytes_le(std::ostream& out, std::uint64_t v, int n) {
    char buf[8];
    for (int i = 0; i < n; ++i) buf[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(buf, n);
}

std::uint64_t read_bytes_le(std::istream& in, int n) {
    char buf[8];
    in.read(buf, n);
    if (in.gcount() != n) throw DataError("unexpected end of stream while reading integer");
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i)
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(buf[i])) << (8 * i);
    return v;
}

struct Crc64Table {
    std::array<std::uint64_t, 256> t{};
    Crc64Table() {
        // reflected form of ECMA-182 polynomial 0x42F0E1EBA9EA3693
        const std::uint64_t poly = 0xC96C5795D7870F42ULL;
        for (std::uint64_t i = 0; i < 256; ++i) {
            std::uint64_t crc = i;
            for (int bit = 0; bit < 8; ++bit)
                crc = (crc & 1) ? (crc >> 1) ^ poly : crc >> 1;
            t[i] = crc;
        }
    }
};

const Crc64Table g_crc_table;

}  // namespace

void write_u32le(std::ostream& out, std::uint32_t v) { write_bytes_le(out, v, 4); }
void write_u64le(std::ostream& out, std::uint64_t v) { write_bytes_le(out, v, 8); }

void write_f64le(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    write_bytes_le(out, bits, 8);
}

std::uint32_t read_u32le(std::istream& in) { return static_cast<std::uint32_t>(read_bytes_le(in, 4)); }
std::uint64_t read_u64le(std::istream& in) { return read_bytes_le(in, 8); }

double read_f64le(std::istream& in) {
    const std::uint64_t bits = read_bytes_le(in, 8);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

std::uint64_t crc64(const void* data, std::size_t len, std::uint64_t crc) {
    const auto* p = static_cast<const unsigned char*>(data);
    crc = ~crc;
    for (std::size_t i = 0; i < len; ++i)
        crc = g_crc_table.t[(crc ^ p[i]) & 0xFF] ^ (crc >> 8);
    return ~crc;
}

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

}  // namespace polarsift
