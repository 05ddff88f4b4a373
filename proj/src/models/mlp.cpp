#include "csrminer/models/mlp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include "csrminer/models/conjugate_gradient.hpp"

namespace csrminer {

namespace {

inline double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace

MlpNetwork::MlpNetwork(std::size_t inputs, std::size_t hidden)
    : inputs_(inputs), hidden_(hidden), params_(parameter_count(inputs, hidden), 0.0) {}

MlpNetwork::MlpNetwork(std::size_t inputs, std::size_t hidden, std::vector<double> params)
    : inputs_(inputs), hidden_(hidden), params_(std::move(params)) {
    if (params_.size() != parameter_count(inputs, hidden)) {
        throw Error(ErrorCode::ModelFormat, "MLP parameter count does not match its shape");
    }
}

void MlpNetwork::initialize(std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(-0.5, 0.5);
    const double hidden_scale = 1.0 / std::sqrt(static_cast<double>(inputs_ + 1));
    const double output_scale = 1.0 / std::sqrt(static_cast<double>(hidden_ + 1));
    const std::size_t hidden_block = hidden_ * (inputs_ + 1);
    for (std::size_t i = 0; i < params_.size(); ++i) {
        params_[i] = u(rng) * (i < hidden_block ? hidden_scale : output_scale);
    }
}

double MlpNetwork::output(std::span<const double> x) const {
    const std::size_t stride = inputs_ + 1;
    const double* w2 = params_.data() + hidden_ * stride;
    double z = w2[hidden_];
    for (std::size_t h = 0; h < hidden_; ++h) {
        const double* w = params_.data() + h * stride;
        double a = w[inputs_];
        for (std::size_t i = 0; i < inputs_; ++i) a += w[i] * x[i];
        z += w2[h] * sigmoid(a);
    }
    return sigmoid(z);
}

double MlpNetwork::loss(std::size_t inputs, std::size_t hidden, std::span<const double> params, const Matrix& x,
                        std::span<const int> y, std::span<double> grad) {
    const std::size_t stride = inputs + 1;
    const double* w2 = params.data() + hidden * stride;
    const bool want_grad = !grad.empty();
    if (want_grad) std::fill(grad.begin(), grad.end(), 0.0);
    double* g2 = want_grad ? grad.data() + hidden * stride : nullptr;

    std::vector<double> act(hidden);
    double total = 0.0;
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const auto xr = x.row(r);
        double z = w2[hidden];
        for (std::size_t h = 0; h < hidden; ++h) {
            const double* w = params.data() + h * stride;
            double a = w[inputs];
            for (std::size_t i = 0; i < inputs; ++i) a += w[i] * xr[i];
            act[h] = sigmoid(a);
            z += w2[h] * act[h];
        }
        const double out = sigmoid(z);
        const double err = out - static_cast<double>(y[r]);
        total += 0.5 * err * err;
        if (!want_grad) continue;

        const double delta_out = err * out * (1.0 - out);
        for (std::size_t h = 0; h < hidden; ++h) {
            g2[h] += delta_out * act[h];
            const double delta_h = delta_out * w2[h] * act[h] * (1.0 - act[h]);
            double* g = grad.data() + h * stride;
            for (std::size_t i = 0; i < inputs; ++i) g[i] += delta_h * xr[i];
            g[inputs] += delta_h;
        }
        g2[hidden] += delta_out;
    }
    const double n = static_cast<double>(std::max<std::size_t>(x.rows(), 1));
    if (want_grad) {
        for (double& g : grad) g /= n;
    }
    return total / n;
}

MlpModel::MlpModel(ModelKind kind, MlpNetwork network, TrainingInfo info)
    : kind_(kind), network_(std::move(network)) {
    info_ = std::move(info);
}

nlohmann::json MlpModel::parameters_json() const {
    return {{"inputs", network_.inputs()}, {"hidden", network_.hidden()}, {"params", network_.params()}};
}

std::unique_ptr<MlpModel> MlpModel::from_json(ModelKind kind, const nlohmann::json& j, std::size_t arity) {
    const auto inputs = j.at("inputs").get<std::size_t>();
    if (inputs != arity) throw Error(ErrorCode::ModelFormat, "MLP input count does not match arity");
    MlpNetwork net(inputs, j.at("hidden").get<std::size_t>(), j.at("params").get<std::vector<double>>());
    return std::make_unique<MlpModel>(kind, std::move(net), TrainingInfo{});
}

MlpModel train_mlp(LabeledView train, LabeledView validation, const MlpParams& params, std::uint64_t seed) {
    if (params.hidden_neurons < 1) throw Error(ErrorCode::InvalidHyperparameter, "hidden_neurons must be >= 1");
    if (params.epochs < 1) throw Error(ErrorCode::InvalidHyperparameter, "epochs must be >= 1");
    detail::check_binary_labels(train.y, train.x.rows(), false);
    if (train.x.rows() == 0) throw Error(ErrorCode::InsufficientData, "MLP needs training records");

    const std::size_t inputs = train.x.cols();
    const std::size_t hidden = params.hidden_neurons;
    const std::size_t stride = inputs + 1;
    MlpNetwork net(inputs, hidden);
    net.initialize(seed);
    const bool has_validation = validation.x.rows() > 0;
    const ModelKind kind =
        params.phase2 == MlpParams::Phase2::ConjugateGradient ? ModelKind::MlpBpCg : ModelKind::MlpBp;

    std::vector<double> best = net.params();
    double best_selection = std::numeric_limits<double>::infinity();
    auto consider = [&](std::span<const double> p, double training_loss) {
        const double sel = has_validation ? MlpNetwork::loss(inputs, hidden, p, validation.x, validation.y)
                                          : training_loss;
        if (sel < best_selection) {
            best_selection = sel;
            best.assign(p.begin(), p.end());
        }
    };

    // Phase 1: online backpropagation with momentum.
    std::vector<double>& w = net.params();
    std::vector<double> velocity(w.size(), 0.0);
    std::vector<double> act(hidden);
    std::vector<std::size_t> order(train.x.rows());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    const double lr = params.learning_rate;
    const double mu = params.momentum;

    TrainingInfo info;
    double epoch_loss = 0.0;
    for (std::size_t epoch = 1; epoch <= params.epochs; ++epoch) {
        std::shuffle(order.begin(), order.end(), rng);
        epoch_loss = 0.0;
        for (std::size_t r : order) {
            const auto xr = train.x.row(r);
            double* w2 = w.data() + hidden * stride;
            double z = w2[hidden];
            for (std::size_t h = 0; h < hidden; ++h) {
                const double* wh = w.data() + h * stride;
                double a = wh[inputs];
                for (std::size_t i = 0; i < inputs; ++i) a += wh[i] * xr[i];
                act[h] = sigmoid(a);
                z += w2[h] * act[h];
            }
            const double out = sigmoid(z);
            const double err = out - static_cast<double>(train.y[r]);
            epoch_loss += 0.5 * err * err;
            const double delta_out = err * out * (1.0 - out);

            double* v2 = velocity.data() + hidden * stride;
            for (std::size_t h = 0; h < hidden; ++h) {
                // hidden delta uses the output weight before this record's update
                const double delta_h = delta_out * w2[h] * act[h] * (1.0 - act[h]);
                v2[h] = mu * v2[h] - lr * delta_out * act[h];
                w2[h] += v2[h];
                double* wh = w.data() + h * stride;
                double* vh = velocity.data() + h * stride;
                for (std::size_t i = 0; i < inputs; ++i) {
                    vh[i] = mu * vh[i] - lr * delta_h * xr[i];
                    wh[i] += vh[i];
                }
                vh[inputs] = mu * vh[inputs] - lr * delta_h;
                wh[inputs] += vh[inputs];
            }
            v2[hidden] = mu * v2[hidden] - lr * delta_out;
            w2[hidden] += v2[hidden];
        }
        epoch_loss /= static_cast<double>(train.x.rows());
        if (!std::isfinite(epoch_loss)) {
            throw Error(ErrorCode::NonFiniteLoss, "backpropagation diverged at epoch " + std::to_string(epoch));
        }
        info.epochs_run = epoch;
        consider(w, epoch_loss);
    }
    info.final_training_error = epoch_loss;

    // Phase 2: conjugate gradient from where backpropagation stopped.
    if (params.phase2 == MlpParams::Phase2::ConjugateGradient) {
        const Objective objective = [&](std::span<const double> p, std::span<double> g) {
            return MlpNetwork::loss(inputs, hidden, p, train.x, train.y, g);
        };
        CgOptions options;
        options.iterations = params.epochs;
        std::size_t cg_iters = 0;
        const auto result = minimize_conjugate_gradient(
            objective, w, options, [&](std::size_t iter, std::span<const double> p, double value) {
                if (!std::isfinite(value)) {
                    throw Error(ErrorCode::NonFiniteLoss,
                                "conjugate gradient diverged at iteration " + std::to_string(iter));
                }
                cg_iters = iter;
                consider(p, value);
            });
        info.epochs_run += cg_iters;
        info.final_training_error = result.value;
        if (result.stalled) info.note = "conjugate-gradient line search stalled after " + std::to_string(cg_iters) + " iterations";
    }

    return MlpModel(kind, MlpNetwork(inputs, hidden, std::move(best)), info);
}

}  // namespace csrminer
