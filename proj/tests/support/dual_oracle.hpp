#pragma once

// Test-only brute-force solvers for the SVM dual
//
//   maximize  W(a) = sum_i a_i - 1/2 sum_ij a_i a_j y_i y_j K_ij
//   s.t.      0 <= a_i <= C,  sum_i a_i y_i = 0
//
// kept independent of the SMO implementation under test.

#include "mitensor/svm.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace testsupport {

inline std::vector<std::vector<double>> gram_matrix(
    const mitensor::KernelSpec& kernel, const std::vector<std::vector<double>>& x) {
    const std::size_t n = x.size();
    std::vector<std::vector<double>> k(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) k[i][j] = mitensor::kernel_eval(kernel, x[i], x[j]);
    return k;
}

inline double dual_objective(const std::vector<std::vector<double>>& k,
                             const std::vector<double>& y, const std::vector<double>& alpha) {
    const std::size_t n = alpha.size();
    double linear = 0.0, quad = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        linear += alpha[i];
        for (std::size_t j = 0; j < n; ++j)
            quad += alpha[i] * alpha[j] * y[i] * y[j] * k[i][j];
    }
    return linear - 0.5 * quad;
}

/// Exhaustive pairwise coordinate ascent: every (i, j) pair is maximized
/// analytically along the feasible segment, repeating until a full pass
/// gains less than `rest`.  For the handful-of-points problems in the tests
/// this converges to the global optimum of the concave dual.
inline std::vector<double> brute_force_dual(const std::vector<std::vector<double>>& k,
                                            const std::vector<double>& y, double c,
                                            double rest = 1e-13, int max_passes = 200000) {
    const std::size_t n = y.size();
    std::vector<double> alpha(n, 0.0);
    double objective = dual_objective(k, y, alpha);
    for (int pass = 0; pass < max_passes; ++pass) {
        const double before = objective;
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                if (i == j) continue;
                // Feasible pair moves keep sum a_l y_l fixed:
                // a_i = a_i_old + s*(a_j_old - a_j) with s = y_i*y_j.
                const double s = y[i] * y[j];
                double low, high;
                if (s < 0.0) {
                    low = std::max(0.0, alpha[j] - alpha[i]);
                    high = std::min(c, c + alpha[j] - alpha[i]);
                } else {
                    low = std::max(0.0, alpha[i] + alpha[j] - c);
                    high = std::min(c, alpha[i] + alpha[j]);
                }
                if (high - low < 1e-15) continue;

                // Along a_j(t) = a_j + t, a_i(t) = a_i - s*t the objective
                // is quadratic with dW/dt = grad_j - s*grad_i and curvature
                // -eta, so the unconstrained peak is t* = dW/dt / eta.
                double grad_i = 1.0, grad_j = 1.0;
                for (std::size_t l = 0; l < n; ++l) {
                    grad_i -= alpha[l] * y[l] * y[i] * k[i][l];
                    grad_j -= alpha[l] * y[l] * y[j] * k[j][l];
                }
                const double eta = k[i][i] + k[j][j] - 2.0 * k[i][j];
                double aj_new;
                if (eta > 1e-15) {
                    aj_new = std::clamp(alpha[j] + (grad_j - s * grad_i) / eta, low, high);
                } else {
                    // Flat or concave-degenerate direction: best endpoint.
                    std::vector<double> trial = alpha;
                    auto eval_at = [&](double aj) {
                        trial[j] = aj;
                        trial[i] = alpha[i] + s * (alpha[j] - aj);
                        return dual_objective(k, y, trial);
                    };
                    aj_new = eval_at(low) >= eval_at(high) ? low : high;
                }
                const double ai_new = alpha[i] + s * (alpha[j] - aj_new);
                alpha[j] = aj_new;
                alpha[i] = ai_new;
            }
        }
        objective = dual_objective(k, y, alpha);
        if (objective - before < rest) break;
    }
    return alpha;
}

/// Dense grid search over the 4-variable XOR dual: a grid over the first
/// three multipliers with the fourth pinned by the equality constraint.
/// Returns the best objective found.
inline double xor_grid_search(const std::vector<std::vector<double>>& k,
                              const std::vector<double>& y, double c, int steps,
                              std::vector<double>* best_alpha = nullptr) {
    const double step = c / steps;
    double best = -1e300;
    std::vector<double> alpha(4, 0.0);
    for (int a = 0; a <= steps; ++a) {
        for (int b = 0; b <= steps; ++b) {
            for (int d = 0; d <= steps; ++d) {
                alpha[0] = a * step;
                alpha[1] = b * step;
                alpha[2] = d * step;
                // sum alpha_i y_i = 0 determines the last multiplier.
                double acc = 0.0;
                for (int i = 0; i < 3; ++i) acc += alpha[i] * y[i];
                const double last = -acc / y[3];
                if (last < -1e-12 || last > c + 1e-12) continue;
                alpha[3] = std::clamp(last, 0.0, c);
                const double w = dual_objective(k, y, alpha);
                if (w > best) {
                    best = w;
                    if (best_alpha) *best_alpha = alpha;
                }
            }
        }
    }
    return best;
}

} // namespace testsupport
