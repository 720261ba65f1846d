#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace mitensor {

/// A grayscale raster treated as a 2D mass distribution: one non-negative
/// intensity per pixel, row-major, row 0 at the top of the image.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<double> pixels; // row-major, width * height entries

    GrayImage() = default;
    GrayImage(int w, int h) : width(w), height(h), pixels(static_cast<std::size_t>(w) * h, 0.0) {}
    GrayImage(int w, int h, std::vector<double> px) : width(w), height(h), pixels(std::move(px)) {}

    std::size_t size() const { return pixels.size(); }

    double& at(int row, int col) { return pixels[static_cast<std::size_t>(row) * width + col]; }
    double at(int row, int col) const { return pixels[static_cast<std::size_t>(row) * width + col]; }

    bool valid() const {
        if (width < 1 || height < 1) return false;
        if (pixels.size() != static_cast<std::size_t>(width) * height) return false;
        for (double v : pixels) {
            if (!std::isfinite(v) || v < 0.0) return false;
        }
        return true;
    }
};

} // namespace mitensor
