// Benchmark: serial reference loops vs the OpenMP batch kernels.
//
//   mitensor_bench [num_images] [width] [height]
//
// Generates random grayscale rasters, then times feature extraction and
// batch SVM scoring in both modes and cross-checks the results.

#include "mitensor/features.hpp"
#include "mitensor/reference.hpp"
#include "mitensor/svm.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

using namespace mitensor;

namespace {

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch()).count();
}

std::vector<GrayImage> make_images(int count, int width, int height, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> intensity(0.0, 255.0);
    std::vector<GrayImage> images;
    images.reserve(count);
    for (int i = 0; i < count; ++i) {
        GrayImage img(width, height);
        for (double& v : img.pixels) v = intensity(rng);
        images.push_back(std::move(img));
    }
    return images;
}

double max_rel_diff(const std::vector<FeatureVector>& a, const std::vector<FeatureVector>& b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double fields[4][2] = {{a[i].lambda1, b[i].lambda1},
                                     {a[i].lambda2, b[i].lambda2},
                                     {a[i].delta, b[i].delta},
                                     {a[i].mass, b[i].mass}};
        for (const auto& f : fields) {
            const double scale = std::max({std::abs(f[0]), std::abs(f[1]), 1.0});
            worst = std::max(worst, std::abs(f[0] - f[1]) / scale);
        }
    }
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    const int count = argc > 1 ? std::stoi(argv[1]) : 512;
    const int width = argc > 2 ? std::stoi(argv[2]) : 176;
    const int height = argc > 3 ? std::stoi(argv[3]) : 208;

#ifdef _OPENMP
    std::printf("OpenMP enabled, max threads %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP disabled; parallel kernels run serially\n");
#endif
    std::printf("corpus: %d images of %dx%d\n\n", count, width, height);

    const auto images = make_images(count, width, height, 42);

    double t0 = now_seconds();
    const auto serial = ref::extract_features_serial(images);
    double t_serial = now_seconds() - t0;

    t0 = now_seconds();
    const auto parallel = extract_features_batch(images);
    double t_parallel = now_seconds() - t0;

    std::printf("feature extraction\n");
    std::printf("  serial reference : %8.3f ms\n", t_serial * 1e3);
    std::printf("  openmp kernel    : %8.3f ms  (speedup %.2fx)\n", t_parallel * 1e3,
                t_serial / t_parallel);
    std::printf("  max rel diff     : %.3e\n\n", max_rel_diff(serial, parallel));

    // Batch scoring: train a small model, then score a large synthetic set.
    std::mt19937_64 rng(7);
    std::normal_distribution<double> noise(0.0, 1.0);
    std::vector<FeatureVector> train_set;
    const double centers[4][2] = {{10, 2}, {20, 6}, {30, 12}, {40, 20}};
    for (int k = 0; k < 4; ++k) {
        for (int i = 0; i < 500; ++i) {
            FeatureVector fv;
            fv.lambda1 = centers[k][0] + noise(rng);
            fv.lambda2 = centers[k][1] + noise(rng);
            fv.delta = fv.lambda1 - fv.lambda2;
            fv.mass = fv.lambda1 + fv.lambda2;
            fv.label = static_cast<ClassLabel>(k);
            train_set.push_back(fv);
        }
    }
    MulticlassConfig config;
    const auto model = train_multiclass(train_set, config);

    std::vector<std::vector<double>> points;
    points.reserve(50000);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);
    for (int i = 0; i < 50000; ++i) points.push_back({coord(rng), coord(rng)});

    const auto& binary = model.models[0];
    t0 = now_seconds();
    const auto scores_serial = decision_batch(binary, points, 1);
    double t_dec_serial = now_seconds() - t0;

    t0 = now_seconds();
    const auto scores_parallel = decision_batch(binary, points);
    double t_dec_parallel = now_seconds() - t0;

    double worst = 0.0;
    for (std::size_t i = 0; i < points.size(); ++i)
        worst = std::max(worst, std::abs(scores_serial[i] - scores_parallel[i]));

    std::printf("svm decision over %zu points (%zu support vectors)\n", points.size(),
                binary.support_vectors.size());
    std::printf("  single thread    : %8.3f ms\n", t_dec_serial * 1e3);
    std::printf("  openmp kernel    : %8.3f ms  (speedup %.2fx)\n", t_dec_parallel * 1e3,
                t_dec_serial / t_dec_parallel);
    std::printf("  max abs diff     : %.3e\n", worst);

    return 0;
}
