#include "csrminer/models/cart.hpp"

#include <algorithm>
#include <numeric>

#include "csrminer/models/hybrid.hpp"

namespace csrminer {

double gini(std::span<const std::size_t> class_counts) {
    const double n = static_cast<double>(std::accumulate(class_counts.begin(), class_counts.end(), std::size_t{0}));
    if (n == 0.0) return 0.0;
    double sum_sq = 0.0;
    for (std::size_t c : class_counts) {
        const double p = static_cast<double>(c) / n;
        sum_sq += p * p;
    }
    return 1.0 - sum_sq;
}

namespace {

using i128 = __int128;

/// Σ_c count_c² / n on each side, kept as an exact fraction. Maximizing
/// left + right is equivalent to maximizing the Gini decrease.
struct Purity {
    i128 num = 0;
    i128 den = 1;

    static Purity of(std::int64_t sq_left, std::int64_t n_left, std::int64_t sq_right, std::int64_t n_right) {
        return {static_cast<i128>(sq_left) * n_right + static_cast<i128>(sq_right) * n_left,
                static_cast<i128>(n_left) * n_right};
    }
    bool greater_than(const Purity& o) const {
        // num/den > o.num/o.den; dens positive. Products stay below 2^127 for
        // any dataset with fewer than ~10^8 rows.
        return num * o.den > o.num * den;
    }
};

std::int64_t sum_squares(const std::vector<std::int64_t>& counts) {
    std::int64_t s = 0;
    for (auto c : counts) s += c * c;
    return s;
}

struct Builder {
    const Matrix& x;
    std::span<const int> y;
    int num_classes;
    CartParams params;
    std::vector<TreeNode> nodes;
    int next_leaf = 1;
    std::size_t max_depth_seen = 0;

    int build(std::vector<std::size_t>& rows, std::size_t depth) {
        const int index = static_cast<int>(nodes.size());
        nodes.emplace_back();
        std::vector<std::size_t> counts(static_cast<std::size_t>(num_classes), 0);
        for (auto r : rows) ++counts[static_cast<std::size_t>(y[r])];
        max_depth_seen = std::max(max_depth_seen, depth);

        const bool pure = std::count_if(counts.begin(), counts.end(), [](std::size_t c) { return c > 0; }) <= 1;
        SplitChoice choice;
        if (!pure && depth < params.max_depth && rows.size() >= 2 * params.min_leaf) {
            choice = best_split(x, y, num_classes, rows, params.min_leaf);
        }
        if (choice.attribute < 0) {
            TreeNode& leaf = nodes[static_cast<std::size_t>(index)];
            leaf.leaf_id = next_leaf++;
            leaf.prediction = static_cast<int>(std::max_element(counts.begin(), counts.end()) - counts.begin());
            leaf.class_counts = std::move(counts);
            return index;
        }

        std::vector<std::size_t> left_rows;
        std::vector<std::size_t> right_rows;
        const auto a = static_cast<std::size_t>(choice.attribute);
        for (auto r : rows) (x(r, a) <= choice.threshold ? left_rows : right_rows).push_back(r);
        rows.clear();
        rows.shrink_to_fit();

        nodes[static_cast<std::size_t>(index)].attribute = choice.attribute;
        nodes[static_cast<std::size_t>(index)].threshold = choice.threshold;
        nodes[static_cast<std::size_t>(index)].class_counts = std::move(counts);
        const int left = build(left_rows, depth + 1);
        const int right = build(right_rows, depth + 1);
        nodes[static_cast<std::size_t>(index)].left = left;
        nodes[static_cast<std::size_t>(index)].right = right;
        return index;
    }
};

}  // namespace

SplitChoice best_split(const Matrix& x, std::span<const int> y, int num_classes, std::span<const std::size_t> rows,
                       std::size_t min_leaf) {
    SplitChoice best;
    const std::size_t n = rows.size();
    if (n < 2) return best;
    const auto k = static_cast<std::size_t>(num_classes);
    std::vector<std::int64_t> total(k, 0);
    for (auto r : rows) ++total[static_cast<std::size_t>(y[r])];
    const std::int64_t parent_sq = sum_squares(total);

    Purity best_purity;
    bool have = false;
    std::vector<std::size_t> sorted(rows.begin(), rows.end());
    std::vector<std::int64_t> left(k);
    for (std::size_t a = 0; a < x.cols(); ++a) {
        std::stable_sort(sorted.begin(), sorted.end(), [&](std::size_t p, std::size_t q) { return x(p, a) < x(q, a); });
        std::fill(left.begin(), left.end(), 0);
        // running Σ count² on each side, updated incrementally
        std::int64_t left_sq = 0;
        std::int64_t right_sq = parent_sq;
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const auto c = static_cast<std::size_t>(y[sorted[i]]);
            const std::int64_t right_c = total[c] - left[c];
            left_sq += 2 * left[c] + 1;
            right_sq -= 2 * right_c - 1;
            ++left[c];

            const double lo = x(sorted[i], a);
            const double hi = x(sorted[i + 1], a);
            if (!(lo < hi)) continue;
            const std::size_t n_left = i + 1;
            const std::size_t n_right = n - n_left;
            if (n_left < min_leaf || n_right < min_leaf) continue;
            const Purity p = Purity::of(left_sq, static_cast<std::int64_t>(n_left), right_sq,
                                        static_cast<std::int64_t>(n_right));
            if (!have || p.greater_than(best_purity)) {
                have = true;
                best_purity = p;
                best.attribute = static_cast<int>(a);
                best.threshold = lo + (hi - lo) / 2.0;
                if (!(best.threshold < hi)) best.threshold = lo;  // midpoint rounded up onto hi
            }
        }
    }
    if (have) {
        const double nn = static_cast<double>(n);
        const double parent = 1.0 - static_cast<double>(parent_sq) / (nn * nn);
        const double children = 1.0 - static_cast<double>(best_purity.num) / static_cast<double>(best_purity.den) / nn;
        best.impurity_decrease = parent - children;
    }
    return best;
}

CartModel::CartModel(std::size_t arity, int num_classes, std::vector<TreeNode> nodes, TrainingInfo info)
    : arity_(arity), num_classes_(num_classes), nodes_(std::move(nodes)) {
    info_ = std::move(info);
    // depth and leaf count from the structure
    std::vector<std::pair<int, std::size_t>> stack{{0, 0}};
    while (!stack.empty()) {
        auto [i, d] = stack.back();
        stack.pop_back();
        depth_ = std::max(depth_, d);
        const auto& node = nodes_[static_cast<std::size_t>(i)];
        if (node.is_leaf()) {
            ++leaf_count_;
        } else {
            stack.emplace_back(node.left, d + 1);
            stack.emplace_back(node.right, d + 1);
        }
    }
}

const TreeNode& CartModel::leaf_for(std::span<const double> x) const {
    const TreeNode* node = &nodes_.front();
    while (!node->is_leaf()) {
        node = &nodes_[static_cast<std::size_t>(
            x[static_cast<std::size_t>(node->attribute)] <= node->threshold ? node->left : node->right)];
    }
    return *node;
}

double CartModel::score(std::span<const double> x) const {
    const auto& leaf = leaf_for(x);
    const auto total = std::accumulate(leaf.class_counts.begin(), leaf.class_counts.end(), std::size_t{0});
    if (total == 0 || num_classes_ < 2) return 0.0;
    return static_cast<double>(leaf.class_counts[1]) / static_cast<double>(total);
}

BinaryLabel CartModel::decide(std::span<const double> x) const {
    return leaf_for(x).prediction == 1 ? BinaryLabel::Correct : BinaryLabel::Wrong;
}

nlohmann::json CartModel::parameters_json() const {
    nlohmann::json nodes = nlohmann::json::array();
    for (const auto& n : nodes_) {
        if (n.is_leaf()) {
            nodes.push_back({{"leaf", n.leaf_id}, {"prediction", n.prediction}, {"counts", n.class_counts}});
        } else {
            nodes.push_back({{"attribute", n.attribute},
                             {"threshold", n.threshold},
                             {"left", n.left},
                             {"right", n.right},
                             {"counts", n.class_counts}});
        }
    }
    return {{"num_classes", num_classes_}, {"nodes", nodes}};
}

std::unique_ptr<CartModel> CartModel::from_json(const nlohmann::json& j, std::size_t arity) {
    std::vector<TreeNode> nodes;
    for (const auto& jn : j.at("nodes")) {
        TreeNode n;
        n.class_counts = jn.at("counts").get<std::vector<std::size_t>>();
        if (jn.contains("leaf")) {
            n.leaf_id = jn.at("leaf").get<int>();
            n.prediction = jn.at("prediction").get<int>();
        } else {
            n.attribute = jn.at("attribute").get<int>();
            n.threshold = jn.at("threshold").get<double>();
            n.left = jn.at("left").get<int>();
            n.right = jn.at("right").get<int>();
        }
        nodes.push_back(std::move(n));
    }
    const int size = static_cast<int>(nodes.size());
    for (const auto& n : nodes) {
        if (!n.is_leaf() && (n.left <= 0 || n.right <= 0 || n.left >= size || n.right >= size ||
                             n.attribute >= static_cast<int>(arity))) {
            throw Error(ErrorCode::ModelFormat, "tree node references out of range");
        }
    }
    if (nodes.empty()) throw Error(ErrorCode::ModelFormat, "empty tree");
    return std::make_unique<CartModel>(arity, j.at("num_classes").get<int>(), std::move(nodes), TrainingInfo{});
}

CartModel train_cart(const Matrix& x, std::span<const int> y, int num_classes, const CartParams& params) {
    if (params.max_depth < 1) throw Error(ErrorCode::InvalidHyperparameter, "max_depth must be >= 1");
    if (params.min_leaf < 1) throw Error(ErrorCode::InvalidHyperparameter, "min_leaf must be >= 1");
    if (num_classes < 1) throw Error(ErrorCode::InvalidHyperparameter, "num_classes must be >= 1");
    if (x.rows() == 0) throw Error(ErrorCode::InsufficientData, "CART needs training records");
    if (y.size() != x.rows()) throw Error(ErrorCode::InsufficientData, "label count does not match rows");
    for (int label : y) {
        if (label < 0 || label >= num_classes) throw Error(ErrorCode::InsufficientData, "label out of range");
    }
    Builder builder{x, y, num_classes, params, {}, 1, 0};
    std::vector<std::size_t> rows(x.rows());
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    builder.build(rows, 0);

    TrainingInfo info;
    info.epochs_run = 1;
    CartModel model(x.cols(), num_classes, std::move(builder.nodes), info);
    std::size_t errors = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        if (model.predict_class(x.row(r)) != y[r]) ++errors;
    }
    TrainingInfo final_info = model.info();
    final_info.final_training_error = static_cast<double>(errors) / static_cast<double>(x.rows());
    return CartModel(x.cols(), num_classes, model.nodes(), final_info);
}

CartModel train_cart(LabeledView train, const CartParams& params) {
    detail::check_binary_labels(train.y, train.x.rows(), false);
    return train_cart(train.x, train.y, 2, params);
}

int leaf_id_of(const Model& model, std::span<const double> x) {
    if (const auto* cart = dynamic_cast<const CartModel*>(&model)) {
        if (x.size() != cart->arity()) throw Error(ErrorCode::ArityMismatch, "feature vector arity mismatch");
        return cart->leaf_for(x).leaf_id;
    }
    if (const auto* hybrid = dynamic_cast<const HybridModel*>(&model)) {
        if (x.size() != hybrid->arity()) throw Error(ErrorCode::ArityMismatch, "feature vector arity mismatch");
        return hybrid->tree().leaf_for(x).leaf_id;
    }
    throw Error(ErrorCode::WrongModelKind,
                "leaf ids exist only for tree models, not " + std::string(to_string(model.kind())));
}

}  // namespace csrminer
