#include "csrminer/models/svm.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <list>
#include <unordered_map>

namespace csrminer {

double polynomial_kernel(std::span<const double> u, std::span<const double> v, int degree) {
    double dot = 1.0;
    for (std::size_t i = 0; i < u.size(); ++i) dot += u[i] * v[i];
    double out = 1.0;
    for (int d = 0; d < degree; ++d) out *= dot;
    return out;
}

namespace {

/// LRU cache of rows of Q = yᵢyⱼK(xᵢ,xⱼ).
class QRowCache {
public:
    QRowCache(const Matrix& x, std::span<const int> y, int degree, std::size_t budget_bytes)
        : x_(x), y_(y), degree_(degree) {
        const std::size_t row_bytes = std::max<std::size_t>(x.rows() * sizeof(double), 1);
        capacity_ = std::max<std::size_t>(2, budget_bytes / row_bytes);
    }

    const std::vector<double>& row(std::size_t i) {
        if (auto it = index_.find(i); it != index_.end()) {
            lru_.splice(lru_.begin(), lru_, it->second);
            return it->second->second;
        }
        std::vector<double> values;
        if (lru_.size() >= capacity_) {
            values = std::move(lru_.back().second);
            index_.erase(lru_.back().first);
            lru_.pop_back();
        }
        values.resize(x_.rows());
        const auto xi = x_.row(i);
        for (std::size_t j = 0; j < x_.rows(); ++j) {
            values[j] = static_cast<double>(y_[i] * y_[j]) * polynomial_kernel(xi, x_.row(j), degree_);
        }
        lru_.emplace_front(i, std::move(values));
        index_[i] = lru_.begin();
        return lru_.front().second;
    }

private:
    const Matrix& x_;
    std::span<const int> y_;
    int degree_;
    std::size_t capacity_;
    std::list<std::pair<std::size_t, std::vector<double>>> lru_;
    std::unordered_map<std::size_t, decltype(lru_)::iterator> index_;
};

constexpr double kTau = 1e-12;

}  // namespace

SvmSolution solve_svm_dual(const Matrix& x, std::span<const int> y, const SvmParams& params) {
    const std::size_t n = x.rows();
    const double c = params.c;
    const std::size_t max_iter = params.max_iterations ? params.max_iterations : std::max<std::size_t>(10 * n, 1);

    SvmSolution sol;
    sol.alpha.assign(n, 0.0);
    std::vector<double> grad(n, -1.0);  // ∇(½αᵀQα − eᵀα) at α = 0
    std::vector<double> diag(n);
    for (std::size_t i = 0; i < n; ++i) diag[i] = polynomial_kernel(x.row(i), x.row(i), params.degree);
    QRowCache cache(x, y, params.degree, params.cache_mb << 20);
    auto& alpha = sol.alpha;

    auto in_up = [&](std::size_t t) { return (y[t] > 0 && alpha[t] < c) || (y[t] < 0 && alpha[t] > 0.0); };
    auto in_low = [&](std::size_t t) { return (y[t] > 0 && alpha[t] > 0.0) || (y[t] < 0 && alpha[t] < c); };

    while (true) {
        // i: maximal violator in I_up
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = n;
        for (std::size_t t = 0; t < n; ++t) {
            if (in_up(t) && -y[t] * grad[t] > gmax) {
                gmax = -y[t] * grad[t];
                i = t;
            }
        }
        double gmin = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            if (in_low(t)) gmin = std::min(gmin, -y[t] * grad[t]);
        }
        sol.kkt_violation = (i == n || !std::isfinite(gmin)) ? 0.0 : gmax - gmin;
        if (i == n || sol.kkt_violation < params.tolerance) {
            sol.converged = true;
            break;
        }
        if (sol.iterations >= max_iter) break;

        // j: second-order choice among I_low violators
        const auto& qi = cache.row(i);
        std::size_t j = n;
        double best = std::numeric_limits<double>::infinity();
        for (std::size_t t = 0; t < n; ++t) {
            if (!in_low(t)) continue;
            const double b = gmax + y[t] * grad[t];
            if (b <= 0.0) continue;
            double a = diag[i] + diag[t] - 2.0 * y[i] * y[t] * qi[t];
            if (a <= 0.0) a = kTau;
            const double obj = -(b * b) / a;
            if (obj < best) {
                best = obj;
                j = t;
            }
        }
        if (j == n) {
            sol.converged = true;
            break;
        }
        const std::vector<double> qi_copy = qi;  // the next lookup may evict row i
        const auto& qj = cache.row(j);

        const double old_i = alpha[i];
        const double old_j = alpha[j];
        if (y[i] != y[j]) {
            double quad = diag[i] + diag[j] + 2.0 * qi_copy[j];
            if (quad <= 0.0) quad = kTau;
            const double delta = (-grad[i] - grad[j]) / quad;
            const double diff = alpha[i] - alpha[j];
            alpha[i] += delta;
            alpha[j] += delta;
            if (diff > 0.0) {
                if (alpha[j] < 0.0) {
                    alpha[j] = 0.0;
                    alpha[i] = diff;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = c - diff;
                }
            } else if (alpha[j] > c) {
                alpha[j] = c;
                alpha[i] = c + diff;
            }
        } else {
            double quad = diag[i] + diag[j] - 2.0 * qi_copy[j];
            if (quad <= 0.0) quad = kTau;
            const double delta = (grad[i] - grad[j]) / quad;
            const double sum = alpha[i] + alpha[j];
            alpha[i] -= delta;
            alpha[j] += delta;
            if (sum > c) {
                if (alpha[i] > c) {
                    alpha[i] = c;
                    alpha[j] = sum - c;
                }
            } else if (alpha[j] < 0.0) {
                alpha[j] = 0.0;
                alpha[i] = sum;
            }
            if (sum > c) {
                if (alpha[j] > c) {
                    alpha[j] = c;
                    alpha[i] = sum - c;
                }
            } else if (alpha[i] < 0.0) {
                alpha[i] = 0.0;
                alpha[j] = sum;
            }
        }
        const double di = alpha[i] - old_i;
        const double dj = alpha[j] - old_j;
        for (std::size_t t = 0; t < n; ++t) grad[t] += qi_copy[t] * di + qj[t] * dj;
        ++sol.iterations;
    }

    // bias: average over free multipliers, midpoint of the feasible interval otherwise
    double sum_free = 0.0;
    std::size_t free_count = 0;
    double upper = std::numeric_limits<double>::infinity();
    double lower = -std::numeric_limits<double>::infinity();
    for (std::size_t t = 0; t < n; ++t) {
        const double yg = y[t] * grad[t];
        if (alpha[t] >= c) {
            if (y[t] < 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
        } else if (alpha[t] <= 0.0) {
            if (y[t] > 0) upper = std::min(upper, yg); else lower = std::max(lower, yg);
        } else {
            sum_free += yg;
            ++free_count;
        }
    }
    double rho = 0.0;
    if (free_count > 0) {
        rho = sum_free / static_cast<double>(free_count);
    } else if (std::isfinite(upper) && std::isfinite(lower)) {
        rho = (upper + lower) / 2.0;
    } else if (std::isfinite(upper)) {
        rho = upper;
    } else if (std::isfinite(lower)) {
        rho = lower;
    }
    sol.bias = -rho;

    // G = Qα − e, so αᵀQα = Σ αᵢ(Gᵢ + 1)
    double quad = 0.0;
    double lin = 0.0;
    for (std::size_t t = 0; t < n; ++t) {
        lin += alpha[t];
        quad += alpha[t] * (grad[t] + 1.0);
    }
    sol.dual_objective = lin - 0.5 * quad;
    return sol;
}

SvmModel::SvmModel(Matrix support_vectors, std::vector<double> coefficients, double bias, int degree,
                   TrainingInfo info)
    : support_(std::move(support_vectors)), coef_(std::move(coefficients)), bias_(bias), degree_(degree) {
    info_ = std::move(info);
}

double SvmModel::score(std::span<const double> x) const {
    double f = bias_;
    for (std::size_t i = 0; i < support_.rows(); ++i) f += coef_[i] * polynomial_kernel(support_.row(i), x, degree_);
    return f;
}

BinaryLabel SvmModel::decide(std::span<const double> x) const {
    return score(x) > 0.0 ? BinaryLabel::Correct : BinaryLabel::Wrong;
}

nlohmann::json SvmModel::parameters_json() const {
    return {{"degree", degree_}, {"bias", bias_}, {"coefficients", coef_}, {"support_vectors", support_.data()}};
}

std::unique_ptr<SvmModel> SvmModel::from_json(const nlohmann::json& j, std::size_t arity) {
    auto coef = j.at("coefficients").get<std::vector<double>>();
    auto data = j.at("support_vectors").get<std::vector<double>>();
    if (data.size() != coef.size() * arity) throw Error(ErrorCode::ModelFormat, "support vector matrix has wrong size");
    Matrix support(coef.size(), arity);
    for (std::size_t i = 0; i < data.size(); ++i) support(i / arity, i % arity) = data[i];
    return std::make_unique<SvmModel>(std::move(support), std::move(coef), j.at("bias").get<double>(),
                                      j.at("degree").get<int>(), TrainingInfo{});
}

SvmModel train_svm(LabeledView train, const SvmParams& params) {
    if (!(params.c > 0.0)) throw Error(ErrorCode::InvalidHyperparameter, "SVM C must be > 0");
    if (params.degree < 1) throw Error(ErrorCode::InvalidHyperparameter, "kernel degree must be >= 1");
    if (!(params.tolerance > 0.0)) throw Error(ErrorCode::InvalidHyperparameter, "SVM tolerance must be > 0");
    detail::check_binary_labels(train.y, train.x.rows(), true);

    std::vector<int> signs(train.y.size());
    for (std::size_t i = 0; i < signs.size(); ++i) signs[i] = train.y[i] == 1 ? 1 : -1;
    const SvmSolution sol = solve_svm_dual(train.x, signs, params);

    Matrix support(0, train.x.cols());
    std::vector<double> coef;
    for (std::size_t i = 0; i < sol.alpha.size(); ++i) {
        if (sol.alpha[i] > 0.0) {
            support.append_row(train.x.row(i));
            coef.push_back(sol.alpha[i] * signs[i]);
        }
    }
    TrainingInfo info;
    info.epochs_run = sol.iterations;
    info.converged = sol.converged;
    info.final_training_error = sol.kkt_violation;
    if (!sol.converged) {
        info.note = "NoConvergence: iteration cap reached with KKT violation " + std::to_string(sol.kkt_violation);
    }
    return SvmModel(std::move(support), std::move(coef), sol.bias, params.degree, info);
}

}  // namespace csrminer
