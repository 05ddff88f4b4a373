#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace oracle {

std::vector<double> normal_equations(const csrminer::Matrix& x, std::span<const double> y) {
    const std::size_t n = x.rows();
    const std::size_t d = x.cols();
    std::vector<std::vector<double>> a(d, std::vector<double>(d + 1, 0.0));
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            for (std::size_t r = 0; r < n; ++r) a[i][j] += x(r, i) * x(r, j);
        }
        for (std::size_t r = 0; r < n; ++r) a[i][d] += x(r, i) * y[r];
    }
    for (std::size_t col = 0; col < d; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < d; ++r) {
            if (std::abs(a[r][col]) > std::abs(a[pivot][col])) pivot = r;
        }
        if (std::abs(a[pivot][col]) < 1e-300) throw std::runtime_error("singular normal equations");
        std::swap(a[col], a[pivot]);
        for (std::size_t r = 0; r < d; ++r) {
            if (r == col) continue;
            const double f = a[r][col] / a[col][col];
            for (std::size_t k = col; k <= d; ++k) a[r][k] -= f * a[col][k];
        }
    }
    std::vector<double> w(d);
    for (std::size_t i = 0; i < d; ++i) w[i] = a[i][d] / a[i][i];
    return w;
}

Split brute_force_split(const csrminer::Matrix& x, std::span<const int> y, int num_classes, std::size_t min_leaf) {
    const std::size_t n = x.rows();
    Split best;
    // weighted child impurity is minimized <=> Σ_side (Σ_c count²)/n_side is maximized;
    // compare a/b > c/d exactly as a·d > c·b
    __int128 best_num = 0;
    __int128 best_den = 1;
    bool have = false;
    for (std::size_t a = 0; a < x.cols(); ++a) {
        std::set<double> values;
        for (std::size_t r = 0; r < n; ++r) values.insert(x(r, a));
        std::vector<double> sorted(values.begin(), values.end());
        for (std::size_t i = 0; i + 1 < sorted.size(); ++i) {
            double threshold = sorted[i] + (sorted[i + 1] - sorted[i]) / 2.0;
            if (!(threshold < sorted[i + 1])) threshold = sorted[i];
            std::vector<std::int64_t> left(static_cast<std::size_t>(num_classes), 0);
            std::vector<std::int64_t> right(static_cast<std::size_t>(num_classes), 0);
            for (std::size_t r = 0; r < n; ++r) {
                (x(r, a) <= threshold ? left : right)[static_cast<std::size_t>(y[r])]++;
            }
            const std::int64_t nl = std::accumulate(left.begin(), left.end(), std::int64_t{0});
            const std::int64_t nr = std::accumulate(right.begin(), right.end(), std::int64_t{0});
            if (nl < static_cast<std::int64_t>(min_leaf) || nr < static_cast<std::int64_t>(min_leaf)) continue;
            std::int64_t sl = 0;
            std::int64_t sr = 0;
            for (auto c : left) sl += c * c;
            for (auto c : right) sr += c * c;
            const __int128 num = static_cast<__int128>(sl) * nr + static_cast<__int128>(sr) * nl;
            const __int128 den = static_cast<__int128>(nl) * nr;
            if (!have || num * best_den > best_num * den) {
                have = true;
                best_num = num;
                best_den = den;
                best.attribute = static_cast<int>(a);
                best.threshold = threshold;
            }
        }
    }
    return best;
}

int nearest_neighbor(const csrminer::Matrix& cases, std::span<const int> labels, std::span<const double> query) {
    double best = INFINITY;
    int label = -1;
    for (std::size_t r = 0; r < cases.rows(); ++r) {
        double d = 0.0;
        for (std::size_t j = 0; j < cases.cols(); ++j) d += (cases(r, j) - query[j]) * (cases(r, j) - query[j]);
        if (d < best) {
            best = d;
            label = labels[r];
        }
    }
    return label;
}

namespace {

/// Euclidean projection onto {0 ≤ α ≤ C, yᵀα = 0}: α = clip(v − λy), λ by bisection.
std::vector<double> project(const std::vector<double>& v, std::span<const int> y, double c) {
    auto residual = [&](double lambda) {
        double s = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) s += y[i] * std::clamp(v[i] - lambda * y[i], 0.0, c);
        return s;
    };
    double lo = -1.0;
    double hi = 1.0;
    while (residual(lo) < 0.0) lo *= 2.0;
    while (residual(hi) > 0.0) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        (residual(mid) > 0.0 ? lo : hi) = mid;
    }
    const double lambda = 0.5 * (lo + hi);
    std::vector<double> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = std::clamp(v[i] - lambda * y[i], 0.0, c);
    return out;
}

}  // namespace

double projected_gradient_dual(const csrminer::Matrix& x, std::span<const int> y, int degree, double c,
                               std::size_t iterations) {
    const std::size_t n = x.rows();
    std::vector<double> q(n * n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double dot = 0.0;
            for (std::size_t k = 0; k < x.cols(); ++k) dot += x(i, k) * x(j, k);
            q[i * n + j] = y[i] * y[j] * std::pow(dot + 1.0, degree);
        }
    }
    // step 1/L with L bounded by the largest row sum of |Q|
    double lipschitz = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < n; ++j) s += std::abs(q[i * n + j]);
        lipschitz = std::max(lipschitz, s);
    }
    const double step = 1.0 / lipschitz;
    auto objective = [&](const std::vector<double>& a) {
        double lin = 0.0;
        double quad = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            lin += a[i];
            for (std::size_t j = 0; j < n; ++j) quad += a[i] * q[i * n + j] * a[j];
        }
        return lin - 0.5 * quad;
    };
    std::vector<double> alpha(n, 0.0);
    std::vector<double> z = alpha;
    double t = 1.0;
    double current = objective(alpha);
    for (std::size_t it = 0; it < iterations; ++it) {
        std::vector<double> ascent(n);
        for (std::size_t i = 0; i < n; ++i) {
            double g = 1.0;
            for (std::size_t j = 0; j < n; ++j) g -= q[i * n + j] * z[j];
            ascent[i] = z[i] + step * g;
        }
        const auto next = project(ascent, y, c);
        const double t_next = 0.5 * (1.0 + std::sqrt(1.0 + 4.0 * t * t));
        double change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            z[i] = next[i] + (t - 1.0) / t_next * (next[i] - alpha[i]);
            change = std::max(change, std::abs(next[i] - alpha[i]));
        }
        // restart momentum when it stops helping
        const double value = objective(next);
        if (value < current) {
            z = next;
            t = 1.0;
        } else {
            t = t_next;
        }
        current = value;
        alpha = next;
        if (change < 1e-13 && it > 100) break;
    }
    return objective(alpha);
}

}  // namespace oracle
