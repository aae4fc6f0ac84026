#pragma once

#include <string>

#include "msas/image.hpp"

namespace msas {

// Reads an 8- or 16-bit single-channel grayscale PNG; intensities are scaled
// to [0,1] by the bit-depth maximum (255 or 65535).
GrayImage load_gray(const std::string& path);

// Reads an 8-bit RGB (or RGBA, alpha dropped) PNG; channels scaled by 255.
RgbImage load_rgb(const std::string& path);

// Writes an 8-bit RGB PNG. Channel encoding: byte = round(v * 255),
// round-half-up, after clamping v to [0,1].
void save_rgb(const RgbImage& img, const std::string& path);

// Grayscale writers with the same rounding contract (255 / 65535 scale).
void save_gray8(const GrayImage& img, const std::string& path);
void save_gray16(const GrayImage& img, const std::string& path);

} // namespace msas
