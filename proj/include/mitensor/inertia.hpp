#pragma once

#include "mitensor/image.hpp"

#include <vector>

namespace mitensor {

/// Pixel-center coordinates mapping the image onto [-1, 1]^2 with the origin
/// at the center.  Column 0 sits at x = -1, row 0 at y = +1; a dimension of
/// size 1 collapses to the single coordinate 0.
struct CoordinateGrid {
    std::vector<double> xs; // strictly increasing
    std::vector<double> ys; // strictly decreasing
};

/// Symmetric positive-semidefinite 2x2 moment-of-inertia tensor.  Only the
/// upper triangle is stored; i10 equals i01.
struct InertiaTensor {
    double i00 = 0.0; // sum m * y^2
    double i01 = 0.0; // -sum m * x * y
    double i11 = 0.0; // sum m * x^2

    double trace() const { return i00 + i11; }
    double det() const { return i00 * i11 - i01 * i01; }
};

/// Eigenvalues of an InertiaTensor, ordered lambda1 >= lambda2.  lambda2 is
/// clamped to 0 when rounding drives it slightly negative; lambda2_raw keeps
/// the unclamped value.
struct EigenPair {
    double lambda1 = 0.0;
    double lambda2 = 0.0;
    double lambda2_raw = 0.0;
};

CoordinateGrid coordinate_grid(int width, int height);

/// Accumulates the three tensor sums over all pixels, row-major and
/// sequential so results are reproducible bit-for-bit.
InertiaTensor compute_tensor(const GrayImage& image);

/// Closed form for the symmetric 2x2 case: mean +- radius of the
/// characteristic circle.
EigenPair eigenvalues(const InertiaTensor& tensor);

/// lambda1 - lambda2, the spread of mass between the two principal axes.
double asymmetry(const EigenPair& eig);

/// Sum of all pixel intensities.
double total_mass(const GrayImage& image);

} // namespace mitensor
