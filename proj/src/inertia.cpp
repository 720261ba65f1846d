#include "mitensor/inertia.hpp"

#include <cmath>

namespace mitensor {

CoordinateGrid coordinate_grid(int width, int height) {
    CoordinateGrid grid;
    grid.xs.resize(width);
    grid.ys.resize(height);
    if (width == 1) {
        grid.xs[0] = 0.0;
    } else {
        for (int q = 0; q < width; ++q) grid.xs[q] = -1.0 + 2.0 * q / (width - 1);
    }
    if (height == 1) {
        grid.ys[0] = 0.0;
    } else {
        for (int p = 0; p < height; ++p) grid.ys[p] = 1.0 - 2.0 * p / (height - 1);
    }
    return grid;
}

InertiaTensor compute_tensor(const GrayImage& image) {
    const CoordinateGrid grid = coordinate_grid(image.width, image.height);
    InertiaTensor t;
    const double* px = image.pixels.data();
    for (int p = 0; p < image.height; ++p) {
        const double y = grid.ys[p];
        for (int q = 0; q < image.width; ++q) {
            const double m = *px++;
            const double x = grid.xs[q];
            t.i00 += m * (y * y);
            t.i01 -= m * (x * y);
            t.i11 += m * (x * x);
        }
    }
    return t;
}

EigenPair eigenvalues(const InertiaTensor& tensor) {
    const double mean = 0.5 * (tensor.i00 + tensor.i11);
    const double half_diff = 0.5 * (tensor.i00 - tensor.i11);
    const double radius = std::sqrt(half_diff * half_diff + tensor.i01 * tensor.i01);
    EigenPair eig;
    eig.lambda1 = mean + radius;
    eig.lambda2 = mean - radius;
    eig.lambda2_raw = eig.lambda2;
    // PSD tensors only go negative through rounding; clamp those to zero.
    const double eps = 1e-9 * (eig.lambda1 + 1.0);
    if (eig.lambda2 < 0.0 && eig.lambda2 >= -eps) eig.lambda2 = 0.0;
    return eig;
}

double asymmetry(const EigenPair& eig) {
    return eig.lambda1 - eig.lambda2;
}

double total_mass(const GrayImage& image) {
    double sum = 0.0;
    for (double v : image.pixels) sum += v;
    return sum;
}

} // namespace mitensor
