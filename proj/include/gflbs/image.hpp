#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

namespace gflbs {

/// Grayscale image with row-major pixels in [0, 1].
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<double> pixels;
};

/// Reads an 8-bit PGM (P2/P5), PPM (P3/P6) or PNG file. RGB is converted to
/// luminance 0.299 R + 0.587 G + 0.114 B before the division by 255.
/// Errors name the offending file.
Image read_image(const std::filesystem::path& path);

/// Writes 8-bit binary PGM, quantizing with round-half-up: v = floor(x*255 + 0.5).
void write_pgm(const std::filesystem::path& path, const Image& img);

/// Writes a binary mask as bit-packed PBM (P4); nonzero = foreground.
void write_pbm(const std::filesystem::path& path, std::span<const std::uint8_t> mask,
               std::uint32_t width, std::uint32_t height);

/// Integer box-filter downscale by `factor`; output dims are floor(w/f) x
/// floor(h/f) and must stay positive. factor 1 is the identity.
Image downscale(const Image& img, int factor);

}  // namespace gflbs
