#ifndef POLARSIFT_FITS_HPP
#define POLARSIFT_FITS_HPP

#include <string>

#include "polarsift/tensor.hpp"

namespace polarsift {

// Minimal FITS subset: 2880-byte header blocks of 80-character cards,
// NAXIS=2, BITPIX 16 (big-endian int16) or -32 (big-endian float32),
// optional BZERO/BSCALE. Physical value = BZERO + BSCALE * stored.
struct FitsImage {
    Tensor pixels;  // physical values, shape {H, W}
    int bitpix = -32;
    double bzero = 0.0;
    double bscale = 1.0;
};

FitsImage read_fits(const std::string& path);

// Physical pixel values only.
Tensor read_frame(const std::string& path);

void write_fits(const std::string& path, const FitsImage& image);

}  // namespace polarsift

#endif
