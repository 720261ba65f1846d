#include "mitensor/features.hpp"

#include "mitensor/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace mitensor {

const char* to_string(Feature f) {
    switch (f) {
        case Feature::Lambda1: return "lambda1";
        case Feature::Lambda2: return "lambda2";
        case Feature::Delta: return "delta";
        case Feature::Mass: return "mass";
    }
    return "?";
}

std::optional<Feature> feature_from_string(std::string_view name) {
    if (name == "lambda1") return Feature::Lambda1;
    if (name == "lambda2") return Feature::Lambda2;
    if (name == "delta") return Feature::Delta;
    if (name == "mass") return Feature::Mass;
    return std::nullopt;
}

FeatureSelection default_selection() {
    return {Feature::Lambda1, Feature::Lambda2};
}

FeatureSelection parse_selection(std::string_view csv_list) {
    FeatureSelection selection;
    std::string token;
    std::istringstream stream{std::string(csv_list)};
    while (std::getline(stream, token, ',')) {
        // trim surrounding blanks
        const auto begin = token.find_first_not_of(" \t");
        const auto end = token.find_last_not_of(" \t");
        if (begin == std::string::npos) throw Error("empty feature name in selection");
        const auto name = token.substr(begin, end - begin + 1);
        const auto f = feature_from_string(name);
        if (!f) throw Error("unknown feature name: " + name);
        if (std::find(selection.begin(), selection.end(), *f) != selection.end())
            throw Error("duplicate feature in selection: " + name);
        selection.push_back(*f);
    }
    if (selection.empty()) throw Error("feature selection must not be empty");
    return selection;
}

std::string format_selection(const FeatureSelection& selection) {
    std::string out;
    for (std::size_t i = 0; i < selection.size(); ++i) {
        if (i) out += ',';
        out += to_string(selection[i]);
    }
    return out;
}

FeatureVector extract_features(const GrayImage& image) {
    const InertiaTensor tensor = compute_tensor(image);
    const EigenPair eig = eigenvalues(tensor);
    FeatureVector fv;
    fv.lambda1 = eig.lambda1;
    fv.lambda2 = eig.lambda2;
    fv.delta = asymmetry(eig);
    fv.mass = total_mass(image);
    return fv;
}

std::vector<FeatureVector> extract_features_batch(std::span<const GrayImage> images,
                                                  int threads) {
    std::vector<FeatureVector> out(images.size());
    const auto n = static_cast<std::ptrdiff_t>(images.size());
    [[maybe_unused]] const int nthreads = detail::resolve_threads(threads);
#pragma omp parallel for schedule(dynamic, 4) if (threads != 1) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = extract_features(images[i]);
    }
    return out;
}

Standardizer fit_standardizer(std::span<const FeatureVector> vectors,
                              const FeatureSelection& selection) {
    if (vectors.size() < 2)
        throw InsufficientData("standardizer needs at least 2 vectors, got " +
                               std::to_string(vectors.size()));
    const std::size_t dim = selection.size();
    Standardizer s;
    s.mean.assign(dim, 0.0);
    s.stddev.assign(dim, 0.0);
    const double n = static_cast<double>(vectors.size());
    for (std::size_t d = 0; d < dim; ++d) {
        double sum = 0.0;
        for (const auto& v : vectors) sum += v.value(selection[d]);
        s.mean[d] = sum / n;
        double sq = 0.0;
        for (const auto& v : vectors) {
            const double c = v.value(selection[d]) - s.mean[d];
            sq += c * c;
        }
        const double sd = std::sqrt(sq / n); // population stddev
        s.stddev[d] = sd < 1e-12 ? 1.0 : sd;
    }
    return s;
}

std::vector<double> apply_standardizer(const Standardizer& s, const FeatureVector& v,
                                       const FeatureSelection& selection) {
    if (s.dim() != selection.size())
        throw DimensionMismatch("standardizer fitted for " + std::to_string(s.dim()) +
                                " features, selection has " + std::to_string(selection.size()));
    std::vector<double> z(selection.size());
    for (std::size_t d = 0; d < selection.size(); ++d)
        z[d] = (v.value(selection[d]) - s.mean[d]) / s.stddev[d];
    return z;
}

} // namespace mitensor
