#pragma once

#include "mitensor/image.hpp"

#include <filesystem>

namespace mitensor {

/// Decodes a PNG or JPEG file to a grayscale mass grid.  Grayscale sources
/// pass through untouched; color sources are converted with the BT.601 luma
/// weights (0.299, 0.587, 0.114) applied to the 8-bit channels, kept as
/// real values in [0, 255].
///
/// Throws FileNotReadable, UnsupportedFormat, or CorruptImage.
GrayImage load_image(const std::filesystem::path& path);

/// Writes an 8-bit grayscale PNG, rounding and clamping intensities to
/// [0, 255].  Used by the test suites and the benchmark to build fixtures.
void write_png_gray8(const std::filesystem::path& path, const GrayImage& image);

} // namespace mitensor
