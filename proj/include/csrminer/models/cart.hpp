#pragma once

#include <vector>

#include "csrminer/models/model.hpp"

namespace csrminer {

/// Internal nodes send x[attribute] <= threshold left. Leaves carry their
/// left-to-right number (from 1) and the class counts of the training records
/// that reached them.
struct TreeNode {
    int attribute = -1;  // -1 marks a leaf
    double threshold = 0.0;
    int left = -1;
    int right = -1;
    int leaf_id = 0;
    int prediction = 0;
    std::vector<std::size_t> class_counts;

    bool is_leaf() const noexcept { return attribute < 0; }
};

struct SplitChoice {
    int attribute = -1;
    double threshold = 0.0;
    double impurity_decrease = 0.0;
};

/// Gini impurity 1 − Σ p_c².
double gini(std::span<const std::size_t> class_counts);

/// Best Gini split of the given rows: candidate thresholds are midpoints
/// between consecutive distinct values, both sides need `min_leaf` rows, and
/// equal gains resolve to the lower attribute index, then the lower threshold.
/// Gains are compared exactly in integer arithmetic.
SplitChoice best_split(const Matrix& x, std::span<const int> y, int num_classes,
                       std::span<const std::size_t> rows, std::size_t min_leaf);

class CartModel final : public Model {
public:
    CartModel(std::size_t arity, int num_classes, std::vector<TreeNode> nodes, TrainingInfo info);

    ModelKind kind() const override { return ModelKind::Cart; }
    std::size_t arity() const override { return arity_; }
    int num_classes() const noexcept { return num_classes_; }
    const std::vector<TreeNode>& nodes() const noexcept { return nodes_; }
    std::size_t leaf_count() const noexcept { return leaf_count_; }
    std::size_t depth() const noexcept { return depth_; }

    const TreeNode& leaf_for(std::span<const double> x) const;
    int predict_class(std::span<const double> x) const { return leaf_for(x).prediction; }

    nlohmann::json parameters_json() const override;
    static std::unique_ptr<CartModel> from_json(const nlohmann::json& j, std::size_t arity);

protected:
    /// Fraction of the leaf's training records labelled "correct".
    double score(std::span<const double> x) const override;
    BinaryLabel decide(std::span<const double> x) const override;

private:
    std::size_t arity_;
    int num_classes_;
    std::vector<TreeNode> nodes_;  // nodes_[0] is the root
    std::size_t leaf_count_ = 0;
    std::size_t depth_ = 0;
};

/// Greedy Gini tree. Growth stops at purity, at `max_depth`, when no split
/// leaves `min_leaf` records on both sides. Leaf prediction is the majority
/// class, ties going to the lower class index. `num_classes` > 2 gives the
/// native multiclass tree.
CartModel train_cart(const Matrix& x, std::span<const int> y, int num_classes, const CartParams& params);
CartModel train_cart(LabeledView train, const CartParams& params);

/// Leaf number reached by x. Throws WrongModelKind for anything but a tree
/// (or the hybrid, which routes through its tree).
int leaf_id_of(const Model& model, std::span<const double> x);

}  // namespace csrminer
