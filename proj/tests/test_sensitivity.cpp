#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "csrminer/sensitivity.hpp"
#include "csrminer/synth.hpp"

using namespace csrminer;

namespace {

/// Label = x0 > 0.5 (with a little help from x1); x2 is noise, x3 constant.
Problem planted(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u;
    Matrix x(n, 4);
    std::vector<int> labels;
    for (std::size_t r = 0; r < n; ++r) {
        x(r, 0) = u(rng);
        x(r, 1) = u(rng);
        x(r, 2) = u(rng);
        x(r, 3) = 0.25;
        labels.push_back(x(r, 0) + 0.2 * x(r, 1) > 0.6 ? 1 : 0);
    }
    return make_problem(std::move(x), std::move(labels), {"Lo", "Hi"}, {"Signal", "Helper", "Noise", "Flat"});
}

bool is_permutation_of_1_to(const std::vector<int>& rank, std::size_t n) {
    std::set<int> s(rank.begin(), rank.end());
    return rank.size() == n && s.size() == n && *s.begin() == 1 && *s.rbegin() == static_cast<int>(n);
}

}  // namespace

TEST_SUITE("sensitivity") {
    TEST_CASE("ranks from errors") {
        CHECK(ranks_from_errors({5, 9, 1, 9}) == std::vector<int>{3, 1, 4, 2});
        CHECK(ranks_from_errors({0, 0, 0}) == std::vector<int>{1, 2, 3});
    }

    TEST_CASE("planted signal ranks first for linear and cart") {
        const auto problem = planted(800, 3);
        for (auto kind : {ModelKind::Linear, ModelKind::Cart}) {
            ClassifierSpec spec;
            spec.kind = kind;
            const auto r = rank_inputs(spec, problem, 1, 11);
            CAPTURE(to_string(kind));
            CHECK(r.rank_of("Signal") == 1);
            CHECK(r.rank_of("Noise") >= 3);
            CHECK(is_permutation_of_1_to(r.rank, 4));
            for (std::size_t a = 0; a < 4; ++a) {
                for (std::size_t b = 0; b < 4; ++b) {
                    if (r.rank[a] < r.rank[b]) CHECK(r.accumulated_error[a] >= r.accumulated_error[b]);
                }
            }
        }
    }

    TEST_CASE("a constant column ranks below the informative ones for linear") {
        // dropping pure noise may lower the error, so only the informative columns are compared
        const auto problem = planted(600, 8);
        ClassifierSpec spec;
        spec.kind = ModelKind::Linear;
        const auto r = rank_inputs(spec, problem, 1, 2);
        CHECK(r.accumulated_error[3] < r.accumulated_error[0]);
        CHECK(r.accumulated_error[3] <= r.accumulated_error[1]);
        CHECK(r.rank[3] >= 3);
    }

    TEST_CASE("deterministic") {
        const auto problem = planted(400, 5);
        ClassifierSpec spec;
        spec.kind = ModelKind::MlpBp;
        spec.params.mlp.hidden_neurons = 6;
        spec.params.mlp.epochs = 10;
        const auto a = rank_inputs(spec, problem, 0, 4);
        const auto b = rank_inputs(spec, problem, 0, 4);
        CHECK(a.accumulated_error == b.accumulated_error);
        CHECK(a.rank == b.rank);
    }

    TEST_CASE("hybrid rows carry the leaf input") {
        const auto problem = planted(300, 6);
        ClassifierSpec hybrid;
        hybrid.kind = ModelKind::Hybrid;
        hybrid.params.mlp.hidden_neurons = 5;
        hybrid.params.mlp.epochs = 5;
        ClassifierSpec linear;
        linear.kind = ModelKind::Linear;
        const auto grid = sensitivity_grid({linear, hybrid}, problem, {0, 1}, 3);
        CHECK(grid.size() == 4);
        for (const auto& row : grid) {
            if (row.kind == ModelKind::Hybrid) {
                CHECK(row.attributes.back() == kLeafAttribute);
                CHECK(is_permutation_of_1_to(row.rank, 5));
            } else {
                CHECK(is_permutation_of_1_to(row.rank, 4));
            }
        }
        CHECK(grid[0].class_name == "Lo");
        CHECK(grid[2].class_name == "Hi");
    }

    TEST_CASE("failed retrainings are reported per attribute") {
        const auto problem = planted(100, 1);
        ClassifierSpec spec;
        spec.kind = ModelKind::Pnn;
        spec.params.pnn.sigma = -1.0;
        const auto r = rank_inputs(spec, problem, 0, 1);
        CHECK_FALSE(r.complete());
        for (const auto& e : r.error) CHECK_FALSE(e.empty());
        CHECK_THROWS_AS(sensitivity_grid({}, problem, {0}, 1), Error);
    }

    TEST_CASE("product outranks acw on generated data") {
        auto config = paper_default_config(EvaluationKind::CustomerService);
        config.n_records = 3000;
        const auto data = generate(config);
        const auto dataset = make_dataset(data.records, EvaluationKind::CustomerService, true);
        const auto problem = make_problem(dataset);
        ClassifierSpec linear;
        linear.kind = ModelKind::Linear;
        ClassifierSpec cart;
        cart.kind = ModelKind::Cart;
        std::vector<int> classes(problem.class_names.size());
        for (std::size_t c = 0; c < classes.size(); ++c) classes[c] = static_cast<int>(c);
        const auto grid = sensitivity_grid({linear, cart}, problem, classes, 17);
        const auto means = mean_ranks(grid);
        CHECK(means.at("Product") < means.at("ACW"));
    }
}
