#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "csrminer/models/model.hpp"

namespace csrminer {

/// inputs -> sigmoid hidden layer -> single sigmoid output.
///
/// Parameters live in one flat vector so the same storage feeds the
/// per-record backpropagation loop and the full-batch conjugate-gradient
/// phase. Layout: for each hidden unit its input weights followed by its
/// bias, then the output weights followed by the output bias.
class MlpNetwork {
public:
    MlpNetwork(std::size_t inputs, std::size_t hidden);
    MlpNetwork(std::size_t inputs, std::size_t hidden, std::vector<double> params);

    std::size_t inputs() const noexcept { return inputs_; }
    std::size_t hidden() const noexcept { return hidden_; }
    static std::size_t parameter_count(std::size_t inputs, std::size_t hidden) {
        return hidden * (inputs + 1) + hidden + 1;
    }

    std::vector<double>& params() noexcept { return params_; }
    const std::vector<double>& params() const noexcept { return params_; }

    /// Uniform in [-0.5, 0.5] scaled by 1/sqrt(fan-in).
    void initialize(std::uint64_t seed);

    double output(std::span<const double> x) const;

    /// Mean over records of ½(output − target)². When `grad` is non-empty it
    /// receives the gradient with respect to `params`.
    static double loss(std::size_t inputs, std::size_t hidden, std::span<const double> params, const Matrix& x,
                       std::span<const int> y, std::span<double> grad = {});
    double loss(const Matrix& x, std::span<const int> y) const {
        return loss(inputs_, hidden_, params_, x, y);
    }

private:
    std::size_t inputs_;
    std::size_t hidden_;
    std::vector<double> params_;
};

class MlpModel final : public Model {
public:
    MlpModel(ModelKind kind, MlpNetwork network, TrainingInfo info);

    ModelKind kind() const override { return kind_; }
    std::size_t arity() const override { return network_.inputs(); }
    const MlpNetwork& network() const noexcept { return network_; }

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<MlpModel> from_json(ModelKind kind, const nlohmann::json& j, std::size_t arity);

protected:
    double score(std::span<const double> x) const override { return network_.output(x); }
    BinaryLabel decide(std::span<const double> x) const override {
        return network_.output(x) >= 0.5 ? BinaryLabel::Correct : BinaryLabel::Wrong;
    }

private:
    ModelKind kind_;
    MlpNetwork network_;
};

/// Phase 1: `epochs` passes of per-record backpropagation with momentum, in a
/// seeded shuffled order. Phase 2 (optional): `epochs` conjugate-gradient
/// iterations on the full-batch loss, starting from phase 1's final weights.
/// The weights with the lowest validation loss seen across both phases are
/// kept (training loss when `validation` is empty).
MlpModel train_mlp(LabeledView train, LabeledView validation, const MlpParams& params, std::uint64_t seed);

}  // namespace csrminer
