#ifndef POLARSIFT_PGM_HPP
#define POLARSIFT_PGM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace polarsift {

inline constexpr std::size_t kCutoutSize = 64;

// Binary PGM (P5), maxval 255.
void write_pgm(const std::string& path, const std::vector<std::uint8_t>& pixels,
               std::size_t width, std::size_t height);
std::vector<std::uint8_t> read_pgm(const std::string& path, std::size_t& width,
                                   std::size_t& height);

// Cutout wrappers enforcing 64x64.
std::vector<std::uint8_t> read_cutout(const std::string& path);
void write_cutout(const std::string& path, const std::vector<std::uint8_t>& pixels);

}  // namespace polarsift

#endif
