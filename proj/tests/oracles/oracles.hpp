#pragma once

// Slow, independent reference implementations used only by the tests.

#include <cstdint>
#include <span>
#include <vector>

#include "csrminer/matrix.hpp"

namespace oracle {

/// (XᵀX)⁻¹Xᵀy via Gaussian elimination with partial pivoting.
std::vector<double> normal_equations(const csrminer::Matrix& x, std::span<const double> y);

struct Split {
    int attribute = -1;
    double threshold = 0.0;
};

/// Exhaustive Gini search: every attribute, every midpoint between
/// consecutive distinct values, child counts recomputed by a full scan.
/// Equal weighted impurity keeps the earlier (attribute, threshold).
Split brute_force_split(const csrminer::Matrix& x, std::span<const int> y, int num_classes, std::size_t min_leaf);

/// Label of the closest case (squared Euclidean); first case wins ties.
int nearest_neighbor(const csrminer::Matrix& cases, std::span<const int> labels, std::span<const double> query);

/// max Σα − ½αᵀQα  s.t. 0 ≤ α ≤ C, yᵀα = 0, with Q = yyᵀ∘K, solved by
/// accelerated projected gradient; the projection onto the feasible set
/// bisects on the equality multiplier. Returns the dual objective.
double projected_gradient_dual(const csrminer::Matrix& x, std::span<const int> y, int degree, double c,
                               std::size_t iterations = 200000);

/// Central differences of f at p with step h.
template <typename F>
std::vector<double> central_differences(F&& f, std::vector<double> p, double h) {
    std::vector<double> g(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
        const double keep = p[i];
        p[i] = keep + h;
        const double up = f(p);
        p[i] = keep - h;
        const double down = f(p);
        p[i] = keep;
        g[i] = (up - down) / (2.0 * h);
    }
    return g;
}

}  // namespace oracle
