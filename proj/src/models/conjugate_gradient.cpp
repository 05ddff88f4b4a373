#include "csrminer/models/conjugate_gradient.hpp"

#include <cmath>
#include <numeric>

namespace csrminer {

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    return std::inner_product(a.begin(), a.end(), b.begin(), 0.0);
}

}  // namespace

CgResult minimize_conjugate_gradient(
    const Objective& objective, std::vector<double> x0, const CgOptions& options,
    const std::function<void(std::size_t, std::span<const double>, double)>& on_iteration) {
    const std::size_t n = x0.size();
    const std::size_t restart_every = options.restart_every ? options.restart_every : n;

    CgResult result;
    result.x = std::move(x0);
    std::vector<double> grad(n);
    std::vector<double> trial(n);
    std::vector<double> trial_grad(n);
    std::vector<double> direction(n);

    double value = objective(result.x, grad);
    result.history.push_back(value);
    for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];

    double step = options.initial_step;
    std::size_t since_restart = 0;
    for (std::size_t iter = 0; iter < options.iterations; ++iter) {
        double slope = dot(grad, direction);
        if (!(slope < 0.0)) {
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
            slope = dot(grad, direction);
            since_restart = 0;
            if (!(slope < 0.0)) break;  // zero gradient
        }

        bool accepted = false;
        double trial_value = value;
        double alpha = step;
        for (std::size_t b = 0; b < options.max_backtracks; ++b, alpha *= 0.5) {
            for (std::size_t i = 0; i < n; ++i) trial[i] = result.x[i] + alpha * direction[i];
            trial_value = objective(trial, trial_grad);
            if (std::isfinite(trial_value) && trial_value <= value + options.armijo_c * alpha * slope) {
                accepted = true;
                break;
            }
        }
        if (!accepted) {
            if (since_restart == 0) {
                result.stalled = true;
                break;
            }
            // retry from steepest descent before giving up
            for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i];
            since_restart = 0;
            step = options.initial_step;
            continue;
        }

        const double gg = dot(grad, grad);
        double beta = 0.0;
        if (gg > 0.0) {
            double num = 0.0;
            for (std::size_t i = 0; i < n; ++i) num += trial_grad[i] * (trial_grad[i] - grad[i]);
            beta = num / gg;
        }
        result.x.swap(trial);
        grad.swap(trial_grad);
        value = trial_value;
        ++since_restart;
        if (since_restart >= restart_every) {
            beta = 0.0;
            since_restart = 0;
        }
        for (std::size_t i = 0; i < n; ++i) direction[i] = -grad[i] + beta * direction[i];
        step = alpha * 2.0;

        result.history.push_back(value);
        result.iterations = iter + 1;
        if (on_iteration) on_iteration(iter + 1, result.x, value);
    }
    result.value = value;
    return result;
}

}  // namespace csrminer
