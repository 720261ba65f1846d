#include "mitensor/errors.hpp"
#include "mitensor/features.hpp"
#include "support/synthetic.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace mitensor;

TEST_CASE("feature extraction of hand-computed images") {
    SUBCASE("all-zero image") {
        const auto fv = extract_features(GrayImage(6, 4));
        CHECK(fv.lambda1 == 0.0);
        CHECK(fv.lambda2 == 0.0);
        CHECK(fv.delta == 0.0);
        CHECK(fv.mass == 0.0);
        CHECK(!fv.label.has_value());
    }
    SUBCASE("2x2 anti-diagonal") {
        const auto fv = extract_features(GrayImage(2, 2, {1, 0, 0, 1}));
        CHECK(fv.lambda1 == 4.0);
        CHECK(fv.lambda2 == 0.0);
        CHECK(fv.delta == 4.0);
        CHECK(fv.mass == 2.0);
    }
    SUBCASE("uniform 3x3 of 255") {
        const auto fv = extract_features(GrayImage(3, 3, std::vector<double>(9, 255.0)));
        CHECK(fv.lambda1 == doctest::Approx(1530.0).epsilon(1e-12));
        CHECK(fv.lambda2 == doctest::Approx(1530.0).epsilon(1e-12));
        CHECK(fv.delta == doctest::Approx(0.0).epsilon(1e-12));
        CHECK(fv.mass == 2295.0);
    }
}

TEST_CASE("batch extraction matches single extraction for any thread count") {
    std::mt19937_64 rng(2024);
    std::vector<GrayImage> images;
    for (int i = 0; i < 64; ++i) images.push_back(testsupport::random_image_random_size(rng));
    const auto batch = extract_features_batch(images);
    const auto batch_serial = extract_features_batch(images, 1);
    REQUIRE(batch.size() == images.size());
    for (std::size_t i = 0; i < images.size(); ++i) {
        const auto one = extract_features(images[i]);
        CHECK(batch[i].lambda1 == one.lambda1);
        CHECK(batch[i].lambda2 == one.lambda2);
        CHECK(batch[i].delta == one.delta);
        CHECK(batch[i].mass == one.mass);
        CHECK(batch_serial[i].lambda1 == one.lambda1);
        CHECK(batch_serial[i].mass == one.mass);
    }
}

TEST_CASE("standardizer fit and apply") {
    FeatureVector a, b;
    a.mass = 2.0;
    b.mass = 4.0;
    const FeatureSelection sel = {Feature::Mass};
    const std::vector<FeatureVector> vecs = {a, b};
    const auto s = fit_standardizer(vecs, sel);
    REQUIRE(s.dim() == 1);
    CHECK(s.mean[0] == 3.0);
    CHECK(s.stddev[0] == 1.0); // population stddev of {2, 4}

    SUBCASE("value at the mean maps to 0") {
        FeatureVector v;
        v.mass = 3.0;
        CHECK(apply_standardizer(s, v, sel)[0] == 0.0);
    }
    SUBCASE("mass 4 maps to 1") {
        CHECK(apply_standardizer(s, b, sel)[0] == 1.0);
    }
}

TEST_CASE("zero-variance features keep stddev 1") {
    FeatureVector v;
    v.lambda1 = 5.0;
    v.lambda2 = 5.0;
    const std::vector<FeatureVector> vecs = {v, v, v};
    const auto s = fit_standardizer(vecs, default_selection());
    CHECK(s.stddev[0] == 1.0);
    CHECK(s.stddev[1] == 1.0);
    FeatureVector probe;
    probe.lambda1 = 7.0;
    CHECK(apply_standardizer(s, probe, default_selection())[0] == 2.0); // (7-5)/1
}

TEST_CASE("standardizer rejects fewer than two vectors") {
    const std::vector<FeatureVector> one(1);
    CHECK_THROWS_AS(fit_standardizer(one, default_selection()), InsufficientData);
    CHECK_THROWS_AS(fit_standardizer(std::vector<FeatureVector>{}, default_selection()),
                    InsufficientData);
}

TEST_CASE("standardized training set has mean 0 and stddev 1") {
    const auto blobs = testsupport::make_blobs(50, 1.0, 11);
    const FeatureSelection sel = {Feature::Lambda1, Feature::Lambda2, Feature::Delta,
                                  Feature::Mass};
    const auto s = fit_standardizer(blobs, sel);
    for (std::size_t d = 0; d < sel.size(); ++d) {
        double sum = 0.0, sq = 0.0;
        for (const auto& fv : blobs) {
            const double z = apply_standardizer(s, fv, sel)[d];
            sum += z;
            sq += z * z;
        }
        const double n = static_cast<double>(blobs.size());
        const double mean = sum / n;
        const double stddev = std::sqrt(sq / n - mean * mean);
        CHECK(std::abs(mean) < 1e-9);
        CHECK(std::abs(stddev - 1.0) < 1e-9);
    }
}

TEST_CASE("selection parsing") {
    const auto sel = parse_selection("lambda1, lambda2,delta,mass");
    REQUIRE(sel.size() == 4);
    CHECK(sel[0] == Feature::Lambda1);
    CHECK(sel[3] == Feature::Mass);
    CHECK(format_selection(sel) == "lambda1,lambda2,delta,mass");

    CHECK_THROWS_AS(parse_selection(""), Error);
    CHECK_THROWS_AS(parse_selection("lambda1,lambda1"), Error);
    CHECK_THROWS_AS(parse_selection("lambda3"), Error);
    CHECK(format_selection(default_selection()) == "lambda1,lambda2");
}
