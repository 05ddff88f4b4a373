#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace csrminer {

/// Value of the objective at x; writes the gradient into `grad`.
using Objective = std::function<double(std::span<const double> x, std::span<double> grad)>;

struct CgOptions {
    std::size_t iterations = 100;
    std::size_t restart_every = 0;  // 0: number of parameters
    double armijo_c = 1e-4;
    double initial_step = 1.0;
    std::size_t max_backtracks = 50;
};

struct CgResult {
    std::vector<double> x;
    double value = 0.0;
    std::size_t iterations = 0;
    std::vector<double> history;  // objective after each accepted step, starting with f(x0)
    bool stalled = false;         // line search could not decrease the objective
};

/// Nonlinear conjugate gradient with Polak-Ribière directions and a
/// backtracking Armijo line search. Whenever the direction stops being a
/// descent direction, or every `restart_every` iterations, it restarts from
/// steepest descent. `on_iteration` sees every accepted iterate.
CgResult minimize_conjugate_gradient(
    const Objective& objective, std::vector<double> x0, const CgOptions& options,
    const std::function<void(std::size_t iteration, std::span<const double> x, double value)>& on_iteration = {});

}  // namespace csrminer
