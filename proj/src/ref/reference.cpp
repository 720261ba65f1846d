#include "mitensor/reference.hpp"

#include <cmath>

namespace mitensor::ref {

InertiaTensor naive_tensor(const GrayImage& image) {
    InertiaTensor t;
    for (int p = 0; p < image.height; ++p) {
        const double y = image.height == 1 ? 0.0 : 1.0 - 2.0 * p / (image.height - 1);
        for (int q = 0; q < image.width; ++q) {
            const double x = image.width == 1 ? 0.0 : -1.0 + 2.0 * q / (image.width - 1);
            const double m = image.at(p, q);
            t.i00 += m * y * y;
            t.i01 += -m * x * y;
            t.i11 += m * x * x;
        }
    }
    return t;
}

double naive_total_mass(const GrayImage& image) {
    double sum = 0.0;
    for (int p = 0; p < image.height; ++p)
        for (int q = 0; q < image.width; ++q) sum += image.at(p, q);
    return sum;
}

EigenPair naive_eigenvalues(const InertiaTensor& tensor) {
    // Roots of lambda^2 - trace*lambda + det, avoiding cancellation by
    // computing the larger-magnitude root first.
    const double b = -(tensor.i00 + tensor.i11);
    const double c = tensor.i00 * tensor.i11 - tensor.i01 * tensor.i01;
    double disc = b * b - 4.0 * c;
    if (disc < 0.0) disc = 0.0; // symmetric matrices have real spectra
    const double sq = std::sqrt(disc);
    const double q = -0.5 * (b >= 0.0 ? b + sq : b - sq);
    double r1 = q;
    double r2 = q != 0.0 ? c / q : 0.0;
    if (r1 < r2) std::swap(r1, r2);
    EigenPair eig;
    eig.lambda1 = r1;
    eig.lambda2 = r2;
    eig.lambda2_raw = r2;
    if (eig.lambda2 < 0.0 && eig.lambda2 >= -1e-9 * (eig.lambda1 + 1.0)) eig.lambda2 = 0.0;
    return eig;
}

FeatureVector naive_features(const GrayImage& image) {
    const EigenPair eig = naive_eigenvalues(naive_tensor(image));
    FeatureVector fv;
    fv.lambda1 = eig.lambda1;
    fv.lambda2 = eig.lambda2;
    fv.delta = eig.lambda1 - eig.lambda2;
    fv.mass = naive_total_mass(image);
    return fv;
}

std::vector<FeatureVector> extract_features_serial(std::span<const GrayImage> images) {
    std::vector<FeatureVector> out;
    out.reserve(images.size());
    for (const auto& img : images) out.push_back(naive_features(img));
    return out;
}

NaiveClassMeans naive_class_means(std::span<const FeatureVector> features) {
    NaiveClassMeans means;
    std::array<double, 4> sum_a{}, sum_m{}, sum_l1{}, sum_l2{};
    for (const auto& fv : features) {
        if (!fv.label) continue;
        const int k = label_code(*fv.label);
        means.count[k] += 1;
        sum_a[k] += fv.delta;
        sum_m[k] += fv.mass;
        sum_l1[k] += fv.lambda1;
        sum_l2[k] += fv.lambda2;
    }
    for (int k = 0; k < 4; ++k) {
        if (means.count[k] == 0) continue;
        const double n = static_cast<double>(means.count[k]);
        means.mean_asymmetry[k] = sum_a[k] / n;
        means.mean_mass[k] = sum_m[k] / n;
        means.mean_lambda1[k] = sum_l1[k] / n;
        means.mean_lambda2[k] = sum_l2[k] / n;
    }
    return means;
}

} // namespace mitensor::ref
