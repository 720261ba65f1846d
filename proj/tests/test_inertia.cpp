#include "mitensor/inertia.hpp"
#include "mitensor/reference.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mitensor;
using testsupport::random_image_random_size;

namespace {

bool rel_close(double a, double b, double tol, double floor = 1.0) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), floor});
}

} // namespace

TEST_CASE("coordinate grid endpoints and centers") {
    const auto g33 = coordinate_grid(3, 3);
    CHECK(g33.xs == std::vector<double>{-1.0, 0.0, 1.0});
    CHECK(g33.ys == std::vector<double>{1.0, 0.0, -1.0});

    const auto g11 = coordinate_grid(1, 1);
    CHECK(g11.xs == std::vector<double>{0.0});
    CHECK(g11.ys == std::vector<double>{0.0});

    const auto g22 = coordinate_grid(2, 2);
    CHECK(g22.xs == std::vector<double>{-1.0, 1.0});
    CHECK(g22.ys == std::vector<double>{1.0, -1.0});
}

TEST_CASE("coordinate grid is monotone with exact endpoints") {
    for (int w : {2, 3, 7, 64, 129}) {
        const auto g = coordinate_grid(w, w);
        CHECK(g.xs.front() == -1.0);
        CHECK(g.xs.back() == 1.0);
        CHECK(g.ys.front() == 1.0);
        CHECK(g.ys.back() == -1.0);
        for (int q = 1; q < w; ++q) {
            CHECK(g.xs[q] > g.xs[q - 1]);
            CHECK(g.ys[q] < g.ys[q - 1]);
        }
    }
}

TEST_CASE("tensor of hand-computed images") {
    SUBCASE("all-zero image") {
        const GrayImage zero(5, 3);
        const auto t = compute_tensor(zero);
        CHECK(t.i00 == 0.0);
        CHECK(t.i01 == 0.0);
        CHECK(t.i11 == 0.0);
    }
    SUBCASE("2x2 anti-diagonal corners") {
        const GrayImage img(2, 2, {1, 0, 0, 1});
        const auto t = compute_tensor(img);
        CHECK(t.i00 == 2.0);
        CHECK(t.i01 == 2.0);
        CHECK(t.i11 == 2.0);
    }
    SUBCASE("uniform 3x3") {
        const double c = 7.25;
        const GrayImage img(3, 3, std::vector<double>(9, c));
        const auto t = compute_tensor(img);
        CHECK(t.i01 == 0.0);
        CHECK(rel_close(t.i00, 6.0 * c, 1e-15));
        CHECK(rel_close(t.i11, 6.0 * c, 1e-15));
    }
}

TEST_CASE("eigenvalues of hand-computed tensors") {
    SUBCASE("anti-diagonal tensor (2,2,2)") {
        const auto eig = eigenvalues({2.0, 2.0, 2.0});
        CHECK(eig.lambda1 == 4.0);
        CHECK(eig.lambda2 == 0.0);
        CHECK(asymmetry(eig) == 4.0);
    }
    SUBCASE("scalar tensor") {
        const auto eig = eigenvalues({3.5, 0.0, 3.5});
        CHECK(eig.lambda1 == 3.5);
        CHECK(eig.lambda2 == 3.5);
        CHECK(asymmetry(eig) == 0.0);
    }
    SUBCASE("zero tensor") {
        const auto eig = eigenvalues({0.0, 0.0, 0.0});
        CHECK(eig.lambda1 == 0.0);
        CHECK(eig.lambda2 == 0.0);
        CHECK(asymmetry(eig) == 0.0);
    }
    SUBCASE("tiny negative lambda2 is clamped, raw kept") {
        // det rounds to a hair below zero for this near-rank-1 tensor.
        const InertiaTensor t{1.0, 1.0 + 1e-12, 1.0};
        const auto eig = eigenvalues(t);
        CHECK(eig.lambda2 == 0.0);
        CHECK(eig.lambda2_raw <= 0.0);
    }
}

TEST_CASE("total mass of hand-computed images") {
    CHECK(total_mass(GrayImage(4, 4)) == 0.0);
    CHECK(total_mass(GrayImage(2, 2, {1, 0, 0, 1})) == 2.0);
    CHECK(total_mass(GrayImage(3, 3, std::vector<double>(9, 255.0))) == 2295.0);
}

TEST_CASE("tensor matches the naive reference on random images") {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 300; ++trial) {
        const auto img = random_image_random_size(rng);
        const auto fast = compute_tensor(img);
        const auto naive = ref::naive_tensor(img);
        CHECK(rel_close(fast.i00, naive.i00, 1e-12));
        CHECK(rel_close(fast.i01, naive.i01, 1e-12));
        CHECK(rel_close(fast.i11, naive.i11, 1e-12));
        CHECK(rel_close(total_mass(img), ref::naive_total_mass(img), 1e-12));

        // Both eigenvalue routes must agree too.
        const auto eig = eigenvalues(fast);
        const auto eig_ref = ref::naive_eigenvalues(naive);
        CHECK(rel_close(eig.lambda1, eig_ref.lambda1, 1e-9));
        CHECK(rel_close(eig.lambda2, eig_ref.lambda2, 1e-9));
    }
}

TEST_CASE("trace and determinant identities") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 300; ++trial) {
        const auto img = random_image_random_size(rng);
        const auto t = compute_tensor(img);
        const auto eig = eigenvalues(t);
        CHECK(rel_close(eig.lambda1 + eig.lambda2_raw, t.trace(), 1e-9));
        CHECK(rel_close(eig.lambda1 * eig.lambda2_raw, t.det(), 1e-9,
                        eig.lambda1 * eig.lambda1 + 1.0));
        CHECK(eig.lambda2 >= -1e-9 * (eig.lambda1 + 1.0));
        CHECK(t.det() >= -1e-9 * (t.i00 * t.i11 + 1.0));
    }
}

TEST_CASE("linearity in mass") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 60; ++trial) {
        const auto img = random_image_random_size(rng);
        const auto t = compute_tensor(img);
        const auto eig = eigenvalues(t);
        const double mass = total_mass(img);
        for (double c : {0.0, 0.5, 2.0, 255.0}) {
            const auto scaled = testsupport::scale_image(img, c);
            const auto ts = compute_tensor(scaled);
            const auto eigs = eigenvalues(ts);
            CHECK(rel_close(ts.i00, c * t.i00, 1e-12));
            CHECK(rel_close(ts.i01, c * t.i01, 1e-12));
            CHECK(rel_close(ts.i11, c * t.i11, 1e-12));
            CHECK(rel_close(eigs.lambda1, c * eig.lambda1, 1e-12));
            CHECK(rel_close(eigs.lambda2, c * eig.lambda2, 1e-12));
            CHECK(rel_close(asymmetry(eigs), c * asymmetry(eig), 1e-12));
            CHECK(rel_close(total_mass(scaled), c * mass, 1e-12));
        }
    }
}

TEST_CASE("quarter turn swaps i00 and i11 and keeps the spectrum") {
    std::mt19937_64 rng(4242);
    std::uniform_int_distribution<int> dim(1, 8);
    for (int trial = 0; trial < 100; ++trial) {
        const int n = dim(rng);
        const auto img = testsupport::random_image(rng, n, n);
        const auto t = compute_tensor(img);
        const auto rotated = compute_tensor(testsupport::rotate90(img));
        const double scale = t.i00 + t.i11 + 1.0;
        CHECK(std::abs(rotated.i00 - t.i11) <= 1e-9 * scale);
        CHECK(std::abs(rotated.i11 - t.i00) <= 1e-9 * scale);
        const auto eig = eigenvalues(t);
        const auto eig_rot = eigenvalues(rotated);
        CHECK(rel_close(eig.lambda1, eig_rot.lambda1, 1e-9));
        CHECK(rel_close(eig.lambda2, eig_rot.lambda2, 1e-9));
    }
}

TEST_CASE("flips negate i01 and keep everything else") {
    std::mt19937_64 rng(555);
    for (int trial = 0; trial < 100; ++trial) {
        const auto img = random_image_random_size(rng);
        const auto t = compute_tensor(img);
        for (const auto& flipped_img :
             {testsupport::flip_horizontal(img), testsupport::flip_vertical(img)}) {
            const auto f = compute_tensor(flipped_img);
            const double scale = t.i00 + t.i11 + 1.0;
            CHECK(std::abs(f.i00 - t.i00) <= 1e-9 * scale);
            CHECK(std::abs(f.i11 - t.i11) <= 1e-9 * scale);
            CHECK(std::abs(f.i01 + t.i01) <= 1e-9 * scale);
            const auto eig = eigenvalues(t);
            const auto eig_f = eigenvalues(f);
            CHECK(rel_close(eig.lambda1, eig_f.lambda1, 1e-9));
            CHECK(rel_close(eig.lambda2, eig_f.lambda2, 1e-9));
        }
    }
}

TEST_CASE("mirror-symmetric images have i01 = 0") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 100; ++trial) {
        auto img = random_image_random_size(rng);
        // Symmetrize left-right.
        for (int p = 0; p < img.height; ++p)
            for (int q = 0; q < img.width / 2; ++q)
                img.at(p, img.width - 1 - q) = img.at(p, q);
        const auto t = compute_tensor(img);
        CHECK(std::abs(t.i01) <= 1e-9 * (t.i00 + t.i11 + 1.0));
    }
}
