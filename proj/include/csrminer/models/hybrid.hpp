#pragma once

#include "csrminer/models/cart.hpp"
#include "csrminer/models/mlp.hpp"

namespace csrminer {

/// Decision tree feeding a perceptron: every record is routed through the
/// tree, its leaf number is min-max scaled over 1..L and appended as an extra
/// input, and the network sees the augmented vector.
class HybridModel final : public Model {
public:
    HybridModel(CartModel tree, MlpModel network, TrainingInfo info);

    ModelKind kind() const override { return ModelKind::Hybrid; }
    std::size_t arity() const override { return tree_.arity(); }
    const CartModel& tree() const noexcept { return tree_; }
    const MlpModel& network() const noexcept { return network_; }

    /// (leaf − 1)/(L − 1); 0.5 when the tree is a single leaf.
    double leaf_feature(std::span<const double> x) const;
    std::vector<double> augment(std::span<const double> x) const;

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<HybridModel> from_json(const nlohmann::json& j, std::size_t arity);

protected:
    double score(std::span<const double> x) const override;
    BinaryLabel decide(std::span<const double> x) const override;

private:
    CartModel tree_;
    MlpModel network_;
};

double scaled_leaf_id(int leaf_id, std::size_t leaf_count);

/// The network is trained with backpropagation only, using `mlp` as given.
HybridModel train_hybrid(LabeledView train, LabeledView validation, const CartParams& cart, const MlpParams& mlp,
                         std::uint64_t seed);

}  // namespace csrminer
