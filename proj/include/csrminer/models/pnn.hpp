#pragma once

#include "csrminer/models/model.hpp"

namespace csrminer {

/// Probabilistic neural network: the hidden layer holds every training case;
/// each class's Gaussian kernel sum is divided by the class size and the
/// larger normalized density wins.
class PnnModel final : public Model {
public:
    PnnModel(Matrix cases, std::vector<int> labels, double sigma);

    ModelKind kind() const override { return ModelKind::Pnn; }
    std::size_t arity() const override { return cases_.cols(); }
    std::size_t hidden_neurons() const noexcept { return cases_.rows(); }
    double sigma() const noexcept { return sigma_; }

    /// log of (1/n_c) Σ exp(−‖x − xᵢ‖² / 2σ²) over the cases of each class.
    std::pair<double, double> log_densities(std::span<const double> x) const;

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<PnnModel> from_json(const nlohmann::json& j, std::size_t arity);

protected:
    /// Posterior of "correct" under equal priors.
    double score(std::span<const double> x) const override;
    BinaryLabel decide(std::span<const double> x) const override;

private:
    Matrix cases_;
    std::vector<int> labels_;
    double sigma_;
    std::size_t counts_[2] = {0, 0};
};

PnnModel train_pnn(LabeledView train, const PnnParams& params);

}  // namespace csrminer
