#include "mitensor/svm.hpp"

#include "mitensor/errors.hpp"
#include "parallel.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace mitensor {

const char* to_string(KernelKind kind) {
    return kind == KernelKind::Linear ? "linear" : "rbf";
}

std::optional<KernelKind> kernel_from_string(std::string_view name) {
    if (name == "linear") return KernelKind::Linear;
    if (name == "rbf") return KernelKind::Rbf;
    return std::nullopt;
}

double kernel_eval(const KernelSpec& spec, std::span<const double> a,
                   std::span<const double> b) {
    if (a.size() != b.size())
        throw DimensionMismatch("kernel arguments differ in dimension: " +
                                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
    if (spec.kind == KernelKind::Linear) {
        double dot = 0.0;
        for (std::size_t d = 0; d < a.size(); ++d) dot += a[d] * b[d];
        return dot;
    }
    double dist2 = 0.0;
    for (std::size_t d = 0; d < a.size(); ++d) {
        const double diff = a[d] - b[d];
        dist2 += diff * diff;
    }
    return std::exp(-spec.gamma * dist2);
}

namespace {

// Portable bounded draw; uniform_int_distribution is not pinned across
// library implementations and the tiny modulo bias is irrelevant here.
std::size_t draw_index(std::mt19937_64& rng, std::size_t upper) {
    return static_cast<std::size_t>(rng() % upper);
}

} // namespace

BinarySvmModel train_binary(std::span<const std::vector<double>> x, std::span<const double> y,
                            const TrainConfig& config) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw InsufficientData("binary SVM needs at least 2 labeled samples");
    const std::size_t dim = x[0].size();
    for (const auto& xi : x)
        if (xi.size() != dim)
            throw DimensionMismatch("training vectors differ in dimension");
    bool has_pos = false, has_neg = false;
    for (double yi : y) {
        if (yi > 0.0)
            has_pos = true;
        else
            has_neg = true;
    }
    if (!has_pos || !has_neg)
        throw SingleClassData("binary SVM training data contains a single class");

    const double c = config.c;
    const double tol = config.tol;
    KernelSpec kernel{config.kernel, config.gamma};

    auto kval = [&](std::size_t i, std::size_t j) { return kernel_eval(kernel, x[i], x[j]); };

    std::vector<double> alpha(n, 0.0);
    std::vector<double> error(n); // E_i = f(x_i) - y_i, kept incrementally
    std::vector<double> kdiag(n);
    for (std::size_t i = 0; i < n; ++i) {
        error[i] = -y[i];
        kdiag[i] = kval(i, i);
    }
    double bias = 0.0;

    std::mt19937_64 rng(config.seed);

    int quiet_sweeps = 0;
    int sweeps = 0;
    bool converged = false;
    std::vector<double> ki(n), kj(n);

    while (sweeps < config.max_sweeps) {
        int changed = 0;
        for (std::size_t i = 0; i < n; ++i) {
            const double r = error[i] * y[i]; // y*f - 1
            const bool violates = (r < -tol && alpha[i] < c) || (r > tol && alpha[i] > 0.0);
            if (!violates) continue;

            std::size_t j = draw_index(rng, n - 1);
            if (j >= i) ++j;

            const double s = y[i] * y[j];
            double low, high;
            if (s < 0.0) {
                low = std::max(0.0, alpha[j] - alpha[i]);
                high = std::min(c, c + alpha[j] - alpha[i]);
            } else {
                low = std::max(0.0, alpha[i] + alpha[j] - c);
                high = std::min(c, alpha[i] + alpha[j]);
            }
            if (high - low < 1e-12) continue;

            const double kij = kval(i, j);
            const double eta = kdiag[i] + kdiag[j] - 2.0 * kij;
            if (eta <= 1e-12) continue; // flat pair direction; pick another partner next sweep

            double aj_new = alpha[j] + y[j] * (error[i] - error[j]) / eta;
            aj_new = std::clamp(aj_new, low, high);
            const double delta_j = aj_new - alpha[j];
            if (std::abs(delta_j) < 1e-12 * (std::abs(aj_new) + std::abs(alpha[j]) + 1.0))
                continue;
            const double ai_new = alpha[i] - s * delta_j;
            const double delta_i = ai_new - alpha[i];

            // Bias from whichever multiplier stays strictly inside the box.
            const double b1 = bias - error[i] - y[i] * delta_i * kdiag[i] - y[j] * delta_j * kij;
            const double b2 = bias - error[j] - y[i] * delta_i * kij - y[j] * delta_j * kdiag[j];
            double bias_new;
            if (ai_new > 0.0 && ai_new < c)
                bias_new = b1;
            else if (aj_new > 0.0 && aj_new < c)
                bias_new = b2;
            else
                bias_new = 0.5 * (b1 + b2);
            const double delta_b = bias_new - bias;

            alpha[i] = ai_new;
            alpha[j] = aj_new;
            bias = bias_new;

            // Error-cache refresh: the one data-parallel loop in SMO.  Each
            // entry is written independently, so the result does not depend
            // on the schedule.
            const auto nn = static_cast<std::ptrdiff_t>(n);
            const double ci = y[i] * delta_i;
            const double cj = y[j] * delta_j;
            if (n >= 2048) {
                for (std::size_t k = 0; k < n; ++k) ki[k] = kval(i, k);
                for (std::size_t k = 0; k < n; ++k) kj[k] = kval(j, k);
#pragma omp parallel for schedule(static)
                for (std::ptrdiff_t k = 0; k < nn; ++k)
                    error[k] += ci * ki[k] + cj * kj[k] + delta_b;
            } else {
                for (std::ptrdiff_t k = 0; k < nn; ++k)
                    error[k] += ci * kval(i, k) + cj * kval(j, k) + delta_b;
            }
            ++changed;
        }
        ++sweeps;
        if (changed == 0) {
            if (++quiet_sweeps >= config.max_passes) {
                converged = true;
                break;
            }
        } else {
            quiet_sweeps = 0;
        }
    }

    BinarySvmModel model;
    model.kernel = kernel;
    model.c = c;
    model.bias = bias;
    model.converged = converged;
    for (std::size_t i = 0; i < n; ++i) {
        if (alpha[i] > 0.0) {
            model.support_vectors.push_back(x[i]);
            model.alphas.push_back(alpha[i]);
            model.signs.push_back(y[i]);
        }
    }
    return model;
}

double decision(const BinarySvmModel& model, std::span<const double> x) {
    if (model.support_vectors.empty()) return model.bias;
    if (x.size() != model.dim())
        throw DimensionMismatch("decision input has dimension " + std::to_string(x.size()) +
                                ", model expects " + std::to_string(model.dim()));
    double f = model.bias;
    for (std::size_t i = 0; i < model.support_vectors.size(); ++i)
        f += model.alphas[i] * model.signs[i] * kernel_eval(model.kernel, model.support_vectors[i], x);
    return f;
}

std::vector<double> decision_batch(const BinarySvmModel& model,
                                   std::span<const std::vector<double>> points, int threads) {
    std::vector<double> out(points.size());
    const auto n = static_cast<std::ptrdiff_t>(points.size());
    [[maybe_unused]] const int nthreads = detail::resolve_threads(threads);
#pragma omp parallel for schedule(static) if (threads != 1) num_threads(nthreads)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[i] = decision(model, points[i]);
    return out;
}

namespace {

double pooled_variance(const std::vector<std::vector<double>>& rows) {
    if (rows.empty() || rows[0].empty()) return 1.0;
    double sum = 0.0, sq = 0.0;
    std::size_t count = 0;
    for (const auto& row : rows)
        for (double v : row) {
            sum += v;
            sq += v * v;
            ++count;
        }
    const double mean = sum / static_cast<double>(count);
    const double var = sq / static_cast<double>(count) - mean * mean;
    return var;
}

} // namespace

MultiClassModel train_multiclass(std::span<const FeatureVector> features,
                                 const MulticlassConfig& config, int threads) {
    std::array<int, kNumClasses> counts{};
    for (const auto& fv : features) {
        if (!fv.label) throw Error("multiclass training requires labeled features");
        counts[label_code(*fv.label)] += 1;
    }
    const int present = static_cast<int>(std::count_if(counts.begin(), counts.end(),
                                                       [](int c) { return c > 0; }));
    if (features.empty() || present < 2)
        throw InsufficientData("multiclass training needs samples from at least 2 classes");

    MultiClassModel model;
    model.selection = config.selection;
    model.config = config;
    model.standardizer = fit_standardizer(features, config.selection);

    std::vector<std::vector<double>> x;
    x.reserve(features.size());
    for (const auto& fv : features)
        x.push_back(apply_standardizer(model.standardizer, fv, config.selection));

    TrainConfig train = config.train;
    if (train.gamma <= 0.0) {
        const double var = pooled_variance(x);
        const double dim = static_cast<double>(config.selection.size());
        train.gamma = 1.0 / (dim * (var > 1e-12 ? var : 1.0));
    }
    model.resolved_gamma = train.gamma;

    [[maybe_unused]] const int nthreads =
        std::min(detail::resolve_threads(threads), kNumClasses);
#pragma omp parallel for schedule(static, 1) if (threads != 1) num_threads(nthreads)
    for (int k = 0; k < kNumClasses; ++k) {
        if (counts[k] == 0) {
            BinarySvmModel degenerate;
            degenerate.kernel = KernelSpec{train.kernel, train.gamma};
            degenerate.c = train.c;
            degenerate.bias = -1.0;
            degenerate.degenerate = true;
            model.models[k] = degenerate;
            continue;
        }
        std::vector<double> y(features.size());
        for (std::size_t i = 0; i < features.size(); ++i)
            y[i] = label_code(*features[i].label) == k ? 1.0 : -1.0;
        TrainConfig per_class = train;
        per_class.seed = train.seed + static_cast<std::uint64_t>(k);
        model.models[k] = train_binary(x, y, per_class);
    }
    return model;
}

Prediction predict(const MultiClassModel& model, const FeatureVector& features) {
    const std::vector<double> z = apply_standardizer(model.standardizer, features, model.selection);
    Prediction pred;
    for (int k = 0; k < kNumClasses; ++k) pred.scores[k] = decision(model.models[k], z);
    int best = 0;
    for (int k = 1; k < kNumClasses; ++k)
        if (pred.scores[k] > pred.scores[best]) best = k;
    pred.label = static_cast<ClassLabel>(best);
    return pred;
}

} // namespace mitensor
