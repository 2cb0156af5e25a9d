#pragma once

#include <string>

#include "tsqrt/imaging.hpp"
#include "tsqrt/real_matrix.hpp"

namespace tsqrt::imaging {

// Reads an 8-bit PNG or binary PPM (P6) / PGM (P5); format detected from the
// file magic. Values are normalized to [0, 1]; grayscale files come back with
// one channel.
ImageTensor load_image(const std::string& path);

// Writes 8-bit output; format chosen by extension (.png, .ppm, .pgm). Values
// are clipped to [0, 1] and quantized on save. Write is atomic
// (temp-then-rename).
void save_image(const ImageTensor& img, const std::string& path);
void save_grayscale(const RealMatrix& img, const std::string& path);

}  // namespace tsqrt::imaging
