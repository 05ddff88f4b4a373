#include "csrminer/models/pnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace csrminer {

PnnModel::PnnModel(Matrix cases, std::vector<int> labels, double sigma)
    : cases_(std::move(cases)), labels_(std::move(labels)), sigma_(sigma) {
    for (int y : labels_) ++counts_[y];
    info_.epochs_run = 1;
}

std::pair<double, double> PnnModel::log_densities(std::span<const double> x) const {
    // log-sum-exp per class so tiny bandwidths do not underflow to 0/0
    const double inv = 1.0 / (2.0 * sigma_ * sigma_);
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    double peak[2] = {kNegInf, kNegInf};
    std::vector<double> exponent(cases_.rows());
    const std::size_t d = cases_.cols();
    for (std::size_t i = 0; i < cases_.rows(); ++i) {
        const auto c = cases_.row(i);
        double dist2 = 0.0;
        for (std::size_t k = 0; k < d; ++k) {
            const double diff = x[k] - c[k];
            dist2 += diff * diff;
        }
        exponent[i] = -dist2 * inv;
        peak[labels_[i]] = std::max(peak[labels_[i]], exponent[i]);
    }
    double sums[2] = {0.0, 0.0};
    for (std::size_t i = 0; i < cases_.rows(); ++i) {
        sums[labels_[i]] += std::exp(exponent[i] - peak[labels_[i]]);
    }
    double out[2];
    for (int c = 0; c < 2; ++c) {
        out[c] = counts_[c] == 0 ? kNegInf : peak[c] + std::log(sums[c]) - std::log(static_cast<double>(counts_[c]));
    }
    return {out[0], out[1]};
}

double PnnModel::score(std::span<const double> x) const {
    const auto [wrong, correct] = log_densities(x);
    if (correct == wrong) return 0.5;
    return 1.0 / (1.0 + std::exp(wrong - correct));
}

BinaryLabel PnnModel::decide(std::span<const double> x) const {
    const auto [wrong, correct] = log_densities(x);
    return correct > wrong ? BinaryLabel::Correct : BinaryLabel::Wrong;
}

nlohmann::json PnnModel::parameters_json() const {
    return {{"sigma", sigma_}, {"labels", labels_}, {"cases", cases_.data()}};
}

std::unique_ptr<PnnModel> PnnModel::from_json(const nlohmann::json& j, std::size_t arity) {
    auto labels = j.at("labels").get<std::vector<int>>();
    auto data = j.at("cases").get<std::vector<double>>();
    if (data.size() != labels.size() * arity) throw Error(ErrorCode::ModelFormat, "PNN case matrix has wrong size");
    Matrix cases(labels.size(), arity);
    std::copy(data.begin(), data.end(), cases.row(0).data());
    return std::make_unique<PnnModel>(std::move(cases), std::move(labels), j.at("sigma").get<double>());
}

PnnModel train_pnn(LabeledView train, const PnnParams& params) {
    if (!(params.sigma > 0.0)) throw Error(ErrorCode::InvalidHyperparameter, "PNN sigma must be > 0");
    detail::check_binary_labels(train.y, train.x.rows(), true);
    return PnnModel(train.x, std::vector<int>(train.y.begin(), train.y.end()), params.sigma);
}

}  // namespace csrminer
