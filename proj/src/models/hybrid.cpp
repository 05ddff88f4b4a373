#include "csrminer/models/hybrid.hpp"

namespace csrminer {

double scaled_leaf_id(int leaf_id, std::size_t leaf_count) {
    if (leaf_count <= 1) return 0.5;
    return static_cast<double>(leaf_id - 1) / static_cast<double>(leaf_count - 1);
}

HybridModel::HybridModel(CartModel tree, MlpModel network, TrainingInfo info)
    : tree_(std::move(tree)), network_(std::move(network)) {
    if (network_.arity() != tree_.arity() + 1) {
        throw Error(ErrorCode::ModelFormat, "hybrid network must take one input more than the tree");
    }
    info_ = std::move(info);
}

double HybridModel::leaf_feature(std::span<const double> x) const {
    return scaled_leaf_id(tree_.leaf_for(x).leaf_id, tree_.leaf_count());
}

std::vector<double> HybridModel::augment(std::span<const double> x) const {
    std::vector<double> out(x.begin(), x.end());
    out.push_back(leaf_feature(x));
    return out;
}

double HybridModel::score(std::span<const double> x) const { return network_.predict_score(augment(x)); }

BinaryLabel HybridModel::decide(std::span<const double> x) const { return network_.predict(augment(x)); }

nlohmann::json HybridModel::parameters_json() const {
    return {{"tree", tree_.parameters_json()}, {"network", network_.parameters_json()}};
}

std::unique_ptr<HybridModel> HybridModel::from_json(const nlohmann::json& j, std::size_t arity) {
    auto tree = CartModel::from_json(j.at("tree"), arity);
    auto net = MlpModel::from_json(ModelKind::MlpBp, j.at("network"), arity + 1);
    return std::make_unique<HybridModel>(std::move(*tree), std::move(*net), TrainingInfo{});
}

namespace {

Matrix augmented(const CartModel& tree, const Matrix& x) {
    std::vector<double> leaf(x.rows());
    for (std::size_t r = 0; r < x.rows(); ++r) {
        leaf[r] = scaled_leaf_id(tree.leaf_for(x.row(r)).leaf_id, tree.leaf_count());
    }
    return x.append_column(leaf);
}

}  // namespace

HybridModel train_hybrid(LabeledView train, LabeledView validation, const CartParams& cart, const MlpParams& mlp,
                         std::uint64_t seed) {
    CartModel tree = train_cart(train, cart);
    const Matrix train_aug = augmented(tree, train.x);
    const Matrix validation_aug = validation.x.rows() ? augmented(tree, validation.x) : Matrix(0, train.x.cols() + 1);
    MlpParams bp = mlp;
    bp.phase2 = MlpParams::Phase2::None;
    MlpModel net = train_mlp({train_aug, train.y}, {validation_aug, validation.y}, bp, seed);
    TrainingInfo info = net.info();
    info.note = "tree with " + std::to_string(tree.leaf_count()) + " leaves, depth " + std::to_string(tree.depth());
    return HybridModel(std::move(tree), std::move(net), info);
}

}  // namespace csrminer
