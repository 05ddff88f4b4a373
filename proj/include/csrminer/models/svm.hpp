#pragma once

#include <vector>

#include "csrminer/models/model.hpp"

namespace csrminer {

/// (u·v + 1)^degree
double polynomial_kernel(std::span<const double> u, std::span<const double> v, int degree);

/// Dual solution of the soft-margin problem
///   max Σαᵢ − ½ ΣΣ αᵢαⱼyᵢyⱼK(xᵢ,xⱼ)  s.t. 0 ≤ αᵢ ≤ C, Σαᵢyᵢ = 0.
struct SvmSolution {
    std::vector<double> alpha;
    double bias = 0.0;             // f(x) = Σ αᵢyᵢK(xᵢ,x) + bias
    double dual_objective = 0.0;   // value of the maximized dual
    double kkt_violation = 0.0;    // max over the violating pair, ≤ tolerance at convergence
    std::size_t iterations = 0;
    bool converged = false;
};

/// Sequential minimal optimization with second-order working-set selection.
/// `y` holds ±1.
SvmSolution solve_svm_dual(const Matrix& x, std::span<const int> y, const SvmParams& params);

class SvmModel final : public Model {
public:
    SvmModel(Matrix support_vectors, std::vector<double> coefficients, double bias, int degree, TrainingInfo info);

    ModelKind kind() const override { return ModelKind::Svm; }
    std::size_t arity() const override { return support_.cols(); }
    std::size_t support_vector_count() const noexcept { return support_.rows(); }

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<SvmModel> from_json(const nlohmann::json& j, std::size_t arity);

protected:
    double score(std::span<const double> x) const override;
    BinaryLabel decide(std::span<const double> x) const override;

private:
    Matrix support_;
    std::vector<double> coef_;  // αᵢyᵢ of each support vector
    double bias_;
    int degree_;
};

/// Labels 1 ("correct") become +1 and 0 become −1. A run that hits the
/// iteration cap keeps its last iterate and is flagged as not converged.
SvmModel train_svm(LabeledView train, const SvmParams& params);

}  // namespace csrminer
