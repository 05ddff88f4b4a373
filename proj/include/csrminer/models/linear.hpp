#pragma once

#include <vector>

#include "csrminer/models/model.hpp"

namespace csrminer {

/// Two-layer linear network: output = w·x + b, "correct" when output >= 0.5.
class LinearModel final : public Model {
public:
    LinearModel(std::vector<double> weights, double bias, TrainingInfo info);

    ModelKind kind() const override { return ModelKind::Linear; }
    std::size_t arity() const override { return weights_.size(); }
    const std::vector<double>& weights() const noexcept { return weights_; }
    double bias() const noexcept { return bias_; }

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<LinearModel> from_json(const nlohmann::json& j, std::size_t arity);

protected:
    double score(std::span<const double> x) const override;
    BinaryLabel decide(std::span<const double> x) const override;

private:
    std::vector<double> weights_;
    double bias_;
};

/// Minimum-norm least-squares solution of design·w = target through the SVD
/// pseudo-inverse. Singular values below max(rows, cols)·eps·σ_max are
/// treated as zero.
std::vector<double> pseudo_inverse_solve(const Matrix& design, std::span<const double> target,
                                         std::size_t* rank = nullptr);

/// Fits 0/1 targets by least squares. With `fit_bias` a constant column is
/// appended to the design matrix.
LinearModel train_linear(LabeledView train, bool fit_bias = true);

}  // namespace csrminer
