#ifndef POLARSIFT_SERIAL_HPP
#define POLARSIFT_SERIAL_HPP

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace polarsift {

// Little-endian primitives for the checkpoint format plus canonical text
// formatting of doubles (shortest round-trip form, via std::to_chars) so
// text outputs are byte-reproducible.

void write_u32le(std::ostream& out, std::uint32_t v);
void write_u64le(std::ostream& out, std::uint64_t v);
void write_f64le(std::ostream& out, double v);

std::uint32_t read_u32le(std::istream& in);
std::uint64_t read_u64le(std::istream& in);
double read_f64le(std::istream& in);

// CRC-64/XZ (ECMA-182 polynomial, reflected, init and xorout all-ones).
std::uint64_t crc64(const void* data, std::size_t len, std::uint64_t crc = 0);

std::string format_double(double v);

}  // namespace polarsift

#endif
