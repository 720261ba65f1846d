#pragma once

#include "mitensor/features.hpp"
#include "mitensor/image.hpp"
#include "mitensor/inertia.hpp"

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

namespace testsupport {

using mitensor::ClassLabel;
using mitensor::FeatureVector;
using mitensor::GrayImage;

inline GrayImage random_image(std::mt19937_64& rng, int width, int height) {
    std::uniform_real_distribution<double> intensity(0.0, 255.0);
    GrayImage img(width, height);
    for (double& v : img.pixels) v = intensity(rng);
    return img;
}

inline GrayImage random_image_random_size(std::mt19937_64& rng, int max_dim = 8) {
    std::uniform_int_distribution<int> dim(1, max_dim);
    return random_image(rng, dim(rng), dim(rng));
}

/// Solid ellipse: value where (x/ax)^2 + (y/ay)^2 <= 1 on the [-1,1]^2 grid.
inline GrayImage render_ellipse(int width, int height, double ax, double ay,
                                double value = 255.0) {
    const auto grid = mitensor::coordinate_grid(width, height);
    GrayImage img(width, height);
    for (int p = 0; p < height; ++p) {
        for (int q = 0; q < width; ++q) {
            const double u = grid.xs[q] / ax;
            const double v = grid.ys[p] / ay;
            if (u * u + v * v <= 1.0) img.at(p, q) = value;
        }
    }
    return img;
}

/// Ring: inside the outer ellipse but not inside the inner one.
inline GrayImage render_ring(int width, int height, double outer_ax, double outer_ay,
                             double inner_ax, double inner_ay, double value = 255.0) {
    const auto grid = mitensor::coordinate_grid(width, height);
    GrayImage img(width, height);
    for (int p = 0; p < height; ++p) {
        for (int q = 0; q < width; ++q) {
            const double uo = grid.xs[q] / outer_ax;
            const double vo = grid.ys[p] / outer_ay;
            const double ui = grid.xs[q] / inner_ax;
            const double vi = grid.ys[p] / inner_ay;
            if (uo * uo + vo * vo <= 1.0 && !(ui * ui + vi * vi <= 1.0))
                img.at(p, q) = value;
        }
    }
    return img;
}

inline GrayImage rotate90(const GrayImage& img) {
    GrayImage out(img.height, img.width);
    for (int p = 0; p < img.height; ++p)
        for (int q = 0; q < img.width; ++q) out.at(img.width - 1 - q, p) = img.at(p, q);
    return out;
}

inline GrayImage flip_horizontal(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (int p = 0; p < img.height; ++p)
        for (int q = 0; q < img.width; ++q) out.at(p, img.width - 1 - q) = img.at(p, q);
    return out;
}

inline GrayImage flip_vertical(const GrayImage& img) {
    GrayImage out(img.width, img.height);
    for (int p = 0; p < img.height; ++p)
        for (int q = 0; q < img.width; ++q) out.at(img.height - 1 - p, q) = img.at(p, q);
    return out;
}

inline GrayImage scale_image(const GrayImage& img, double factor) {
    GrayImage out = img;
    for (double& v : out.pixels) v *= factor;
    return out;
}

/// Four well-separated Gaussian blobs in (lambda1, lambda2) space.
inline std::vector<FeatureVector> make_blobs(int per_class, double sigma, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, sigma);
    const double centers[4][2] = {{30, 5}, {45, 12}, {60, 22}, {75, 35}};
    std::vector<FeatureVector> out;
    out.reserve(4 * per_class);
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < per_class; ++i) {
            FeatureVector fv;
            fv.lambda1 = centers[k][0] + noise(rng);
            fv.lambda2 = centers[k][1] + noise(rng);
            fv.delta = fv.lambda1 - fv.lambda2;
            fv.mass = fv.lambda1 + fv.lambda2;
            fv.label = static_cast<ClassLabel>(k);
            out.push_back(fv);
        }
    }
    return out;
}

/// Unique scratch directory under the system temp root, removed on
/// destruction.
class TempDir {
  public:
    explicit TempDir(const std::string& tag) {
        auto base = std::filesystem::temp_directory_path();
        for (int attempt = 0;; ++attempt) {
            auto candidate = base / (tag + "-" + std::to_string(::getpid()) + "-" +
                                     std::to_string(attempt));
            std::error_code ec;
            if (std::filesystem::create_directories(candidate, ec)) {
                path_ = candidate;
                break;
            }
        }
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }

  private:
    std::filesystem::path path_;
};

} // namespace testsupport
