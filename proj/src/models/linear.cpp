#include "csrminer/models/linear.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <limits>

namespace csrminer {

LinearModel::LinearModel(std::vector<double> weights, double bias, TrainingInfo info)
    : weights_(std::move(weights)), bias_(bias) {
    info_ = std::move(info);
}

double LinearModel::score(std::span<const double> x) const {
    double out = bias_;
    for (std::size_t i = 0; i < weights_.size(); ++i) out += weights_[i] * x[i];
    return out;
}

BinaryLabel LinearModel::decide(std::span<const double> x) const {
    return score(x) >= 0.5 ? BinaryLabel::Correct : BinaryLabel::Wrong;
}

nlohmann::json LinearModel::parameters_json() const {
    return {{"weights", weights_}, {"bias", bias_}};
}

std::unique_ptr<LinearModel> LinearModel::from_json(const nlohmann::json& j, std::size_t arity) {
    auto weights = j.at("weights").get<std::vector<double>>();
    if (weights.size() != arity) throw Error(ErrorCode::ModelFormat, "linear weight count does not match arity");
    return std::make_unique<LinearModel>(std::move(weights), j.at("bias").get<double>(), TrainingInfo{});
}

std::vector<double> pseudo_inverse_solve(const Matrix& design, std::span<const double> target, std::size_t* rank) {
    const auto rows = static_cast<Eigen::Index>(design.rows());
    const auto cols = static_cast<Eigen::Index>(design.cols());
    Eigen::MatrixXd a(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
        for (Eigen::Index c = 0; c < cols; ++c) {
            a(r, c) = design(static_cast<std::size_t>(r), static_cast<std::size_t>(c));
        }
    }
    const Eigen::Map<const Eigen::VectorXd> b(target.data(), rows);

    Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const Eigen::VectorXd& sigma = svd.singularValues();
    const double cutoff = sigma.size() == 0 ? 0.0
                                            : static_cast<double>(std::max(rows, cols)) *
                                                  std::numeric_limits<double>::epsilon() * sigma(0);
    // x = V diag(1/σ) Uᵀ b over the retained singular values
    Eigen::VectorXd utb = svd.matrixU().transpose() * b;
    std::size_t kept = 0;
    for (Eigen::Index i = 0; i < sigma.size(); ++i) {
        if (sigma(i) > cutoff) {
            utb(i) /= sigma(i);
            ++kept;
        } else {
            utb(i) = 0.0;
        }
    }
    const Eigen::VectorXd solution = svd.matrixV() * utb;
    if (rank) *rank = kept;
    return {solution.data(), solution.data() + solution.size()};
}

LinearModel train_linear(LabeledView train, bool fit_bias) {
    detail::check_binary_labels(train.y, train.x.rows(), true);
    if (train.x.rows() < 2) throw Error(ErrorCode::InsufficientData, "linear model needs at least 2 records");
    const std::size_t d = train.x.cols();
    Matrix design = train.x;
    if (fit_bias) {
        std::vector<double> ones(train.x.rows(), 1.0);
        design = train.x.append_column(ones);
    }
    const std::vector<double> target(train.y.begin(), train.y.end());
    std::size_t rank = 0;
    auto solution = pseudo_inverse_solve(design, target, &rank);

    TrainingInfo info;
    info.epochs_run = 1;
    info.degenerate_design = rank < design.cols();
    if (info.degenerate_design) {
        info.note = "rank-deficient design (rank " + std::to_string(rank) + " of " +
                    std::to_string(design.cols()) + "), minimum-norm solution used";
    }
    const double bias = fit_bias ? solution.back() : 0.0;
    solution.resize(d);

    std::size_t errors = 0;
    for (std::size_t i = 0; i < train.x.rows(); ++i) {
        double out = bias;
        for (std::size_t c = 0; c < d; ++c) out += solution[c] * train.x(i, c);
        if ((out >= 0.5 ? 1 : 0) != train.y[i]) ++errors;
    }
    info.final_training_error = static_cast<double>(errors) / static_cast<double>(train.x.rows());
    return LinearModel(std::move(solution), bias, info);
}

}  // namespace csrminer
