#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>

#include "csrminer/evaluation.hpp"

using namespace csrminer;

namespace {

/// "correct" when x[0] > cut (or the reverse when flipped).
class ThresholdModel final : public Model {
public:
    ThresholdModel(double cut, bool flipped) : cut_(cut), flipped_(flipped) {}
    ModelKind kind() const override { return ModelKind::Linear; }
    std::size_t arity() const override { return 1; }
    nlohmann::json parameters_json() const override { return {}; }

protected:
    double score(std::span<const double> x) const override { return x[0] - cut_; }
    BinaryLabel decide(std::span<const double> x) const override {
        return (x[0] > cut_) != flipped_ ? BinaryLabel::Correct : BinaryLabel::Wrong;
    }

private:
    double cut_;
    bool flipped_;
};

struct Points {
    Matrix x;
    std::vector<int> y;
};

Points points(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u;
    Points p{Matrix(n, 1), {}};
    for (std::size_t r = 0; r < n; ++r) {
        p.x(r, 0) = u(rng);
        p.y.push_back(u(rng) < 0.3 + 0.5 * p.x(r, 0) ? 1 : 0);
    }
    return p;
}

/// Three classes over the unit square: a linear band structure.
Problem banded_problem(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u;
    Matrix x(n, 2);
    std::vector<int> labels;
    for (std::size_t r = 0; r < n; ++r) {
        x(r, 0) = u(rng);
        x(r, 1) = u(rng);
        const double s = x(r, 0) + 0.5 * x(r, 1);
        labels.push_back(s < 0.5 ? 0 : (s < 1.0 ? 1 : 2));
    }
    return make_problem(std::move(x), std::move(labels), {"Low", "Mid", "High"}, {"A", "B"});
}

EvaluationMatrix fake_matrix(const std::vector<std::vector<double>>& overall_by_kind) {
    EvaluationMatrix m;
    m.classes = {"One", "Two"};
    m.class_sizes = {50, 50};
    m.dataset_size = 100;
    const ModelKind kinds[] = {ModelKind::Linear, ModelKind::Cart, ModelKind::Pnn};
    m.cells.assign(2, {});
    for (std::size_t k = 0; k < overall_by_kind.size(); ++k) {
        m.kinds.push_back(kinds[k]);
        for (std::size_t c = 0; c < 2; ++c) {
            ClassReport r{m.classes[c], 50, 50, 0, 0};
            const auto hits = static_cast<std::size_t>(overall_by_kind[k][c] * 100);
            r.hits_correct = std::min<std::size_t>(hits, 50);
            r.hits_wrong = hits - r.hits_correct;
            m.cells[c].push_back(MatrixCell{kinds[k], Protocol::Holdout, r, {}});
        }
    }
    return m;
}

}  // namespace

TEST_SUITE("evaluation") {
    TEST_CASE("published percentages") {
        const ClassReport holdout{"Met1", 1448, 2220, 873, 1359};
        CHECK(percent(holdout.hits_correct, holdout.case_count_correct) == "60.29");
        // 1359/2220 = 61.216...%: half-up shows 61.22, the published 61.21 is within 0.01 pp
        CHECK(percent(holdout.hits_wrong, holdout.case_count_wrong) == "61.22");
        CHECK(std::abs(holdout.acc_wrong() * 100.0 - 61.21) <= 0.01);
        CHECK(holdout.total() == 3668);
        const ClassReport pooled{"Met1", 5969, 8702, 4443, 6124};
        CHECK(percent(pooled.hits_correct, pooled.case_count_correct) == "74.43");
        CHECK(percent(pooled.hits_wrong, pooled.case_count_wrong) == "70.37");
        CHECK(pooled.total() == 14671);
    }

    TEST_CASE("overall is the case-weighted mean") {
        const ClassReport r{"x", 1448, 2220, 873, 1359};
        const double weighted = (r.acc_correct() * 1448 + r.acc_wrong() * 2220) / 3668.0;
        CHECK(r.overall() == doctest::Approx(weighted).epsilon(1e-15));
        CHECK(r.overall() == static_cast<double>(873 + 1359) / 3668.0);
    }

    TEST_CASE("perfect and constant predictors") {
        Matrix x(10, 1);
        std::vector<int> y(10, 0);
        for (std::size_t i = 0; i < 10; ++i) x(i, 0) = static_cast<double>(i);
        y[9] = 1;
        const auto perfect = confusion(ThresholdModel(8.5, false), x, y);
        CHECK(perfect.acc_correct() == 1.0);
        CHECK(perfect.acc_wrong() == 1.0);
        CHECK(perfect.overall() == 1.0);
        const auto constant = confusion(ThresholdModel(100.0, false), x, y);
        CHECK(constant.acc_correct() == 0.0);
        CHECK(constant.acc_wrong() == 1.0);
        CHECK(constant.overall() == doctest::Approx(0.9));
        const ThresholdModel any(0.0, false);
        CHECK_THROWS_AS(confusion(any, Matrix(0, 1), {}), Error);
    }

    TEST_CASE("flipping the predictor complements both accuracies") {
        const auto p = points(300, 4);
        const auto a = confusion(ThresholdModel(0.4, false), p.x, p.y);
        const auto b = confusion(ThresholdModel(0.4, true), p.x, p.y);
        CHECK(b.hits_correct == a.case_count_correct - a.hits_correct);
        CHECK(b.hits_wrong == a.case_count_wrong - a.hits_wrong);
    }

    TEST_CASE("permutation invariance") {
        const auto p = points(200, 5);
        std::vector<std::size_t> order(200);
        for (std::size_t i = 0; i < 200; ++i) order[i] = 199 - i;
        const Matrix shuffled = p.x.select_rows(order);
        std::vector<int> y;
        for (auto i : order) y.push_back(p.y[i]);
        CHECK(confusion(ThresholdModel(0.5, false), p.x, p.y) == confusion(ThresholdModel(0.5, false), shuffled, y));
    }

    TEST_CASE("fold partition") {
        const auto loo = kfold_partition(10, 10, 1);
        std::multiset<std::size_t> seen;
        for (const auto& f : loo) {
            CHECK(f.size() == 1);
            seen.insert(f.begin(), f.end());
        }
        CHECK(seen.size() == 10);
        CHECK(std::set<std::size_t>(seen.begin(), seen.end()).size() == 10);

        const auto folds = kfold_partition(103, 10, 2);
        std::size_t lo = 1000, hi = 0;
        for (const auto& f : folds) {
            lo = std::min(lo, f.size());
            hi = std::max(hi, f.size());
        }
        CHECK(hi - lo <= 1);
        CHECK_THROWS_AS(kfold_partition(10, 1, 1), Error);
        CHECK_THROWS_AS(kfold_partition(5, 10, 1), Error);
    }

    TEST_CASE("holdout on a planted linear rule") {
        const auto problem = banded_problem(1200, 7);
        ClassifierSpec spec;
        spec.kind = ModelKind::Linear;
        const auto result = evaluate_holdout(spec, problem, 3);
        REQUIRE(result.reports.size() == 3);
        // Low and High are half-planes, so a least-squares fit separates them
        CHECK(result.reports[0].overall() >= 0.95);
        CHECK(result.reports[2].overall() >= 0.95);
        for (const auto& r : result.reports) CHECK(r.total() == split_sizes(1200, {})[2]);

        const auto again = evaluate_holdout(spec, problem, 3);
        for (std::size_t c = 0; c < 3; ++c) CHECK(result.reports[c] == again.reports[c]);
    }

    TEST_CASE("train and evaluation partitions are disjoint") {
        const Split s = split(1000, {}, 3);
        std::set<std::size_t> train(s.train.begin(), s.train.end());
        for (auto r : s.validation) CHECK_FALSE(train.count(r));
        const auto folds = kfold_partition(1000, 10, 3);
        for (std::size_t f = 0; f < folds.size(); ++f) {
            std::set<std::size_t> held(folds[f].begin(), folds[f].end());
            for (std::size_t g = 0; g < folds.size(); ++g) {
                if (g == f) continue;
                for (auto r : folds[g]) CHECK_FALSE(held.count(r));
            }
        }
    }

    TEST_CASE("pooled k-fold covers the dataset") {
        const auto problem = banded_problem(400, 9);
        ClassifierSpec spec;
        spec.kind = ModelKind::Cart;
        const auto result = evaluate_kfold(spec, problem, 10, 1);
        for (std::size_t c = 0; c < 3; ++c) {
            CHECK(result.reports[c].total() == 400);
            CHECK(result.reports[c].case_count_correct == problem.class_count(static_cast<int>(c)));
            CHECK(result.reports[c].overall() > 0.85);
        }
        CHECK_THROWS_AS(evaluate_kfold(spec, problem, 1, 1), Error);
    }

    TEST_CASE("matrix shape and per-cell failures") {
        const auto problem = banded_problem(300, 2);
        EvaluationPlan plan;
        ClassifierSpec linear;
        linear.kind = ModelKind::Linear;
        ClassifierSpec cart;
        cart.kind = ModelKind::Cart;
        ClassifierSpec broken;
        broken.kind = ModelKind::Pnn;
        broken.params.pnn.sigma = -1.0;
        plan.specs = {linear, cart, broken};
        const auto m = evaluate_all(plan, problem, 5);
        CHECK(m.classes.size() == 3);
        CHECK(m.kinds.size() == 3);
        CHECK(m.cell(0, ModelKind::Cart).protocol == Protocol::KFold);
        CHECK(m.cell(0, ModelKind::Linear).protocol == Protocol::Holdout);
        CHECK_FALSE(m.cell(1, ModelKind::Pnn).report.has_value());
        CHECK(m.cell(1, ModelKind::Pnn).error.find("InvalidHyperparameter") != std::string::npos);
        CHECK_THROWS_AS(rank_models(m), Error);
    }

    TEST_CASE("ranking") {
        const auto dominated = fake_matrix({{0.6, 0.6}, {0.9, 0.8}, {0.7, 0.7}});
        const auto order = rank_models(dominated);
        CHECK(order.front() == ModelKind::Cart);
        CHECK(order.back() == ModelKind::Linear);

        const auto equal = fake_matrix({{0.7, 0.7}, {0.7, 0.7}, {0.7, 0.7}});
        CHECK(rank_models(equal) == std::vector<ModelKind>{ModelKind::Linear, ModelKind::Cart, ModelKind::Pnn});

        // same overall, Pnn has more correct-class hits
        auto tie = fake_matrix({{0.7, 0.7}, {0.7, 0.7}, {0.7, 0.7}});
        for (std::size_t c = 0; c < 2; ++c) {
            auto& r = *tie.cells[c][2].report;
            r.hits_correct = 50;
            r.hits_wrong = 20;
            auto& s = *tie.cells[c][0].report;
            s.hits_correct = 20;
            s.hits_wrong = 50;
            auto& t = *tie.cells[c][1].report;
            t.hits_correct = 35;
            t.hits_wrong = 35;
        }
        CHECK(rank_models(tie).front() == ModelKind::Pnn);
    }

    TEST_CASE("seed spread") {
        const auto problem = banded_problem(300, 12);
        EvaluationPlan plan;
        ClassifierSpec linear;
        linear.kind = ModelKind::Linear;
        ClassifierSpec pnn;
        pnn.kind = ModelKind::Pnn;
        pnn.params.pnn.sigma = -1.0;
        plan.specs = {linear, pnn};

        const std::vector<std::uint64_t> one{4};
        const auto single = seed_spread(plan, problem, one);
        REQUIRE(single.size() == 2);
        CHECK(single[0].runs == 1);
        CHECK(single[0].stddev == 0.0);
        const auto direct = evaluate_all(plan, problem, 4);
        double mean = 0.0;
        for (std::size_t c = 0; c < 3; ++c) mean += direct.cells[c][0].report->overall() / 3.0;
        CHECK(single[0].mean == doctest::Approx(mean).epsilon(1e-12));
        CHECK(single[1].runs == 0);

        const std::vector<std::uint64_t> several{1, 2, 3, 4, 5};
        const auto spread = seed_spread(plan, problem, several);
        CHECK(spread[0].runs == 5);
        CHECK(spread[0].stddev > 0.0);
        CHECK(spread[0].stddev < 0.1);
    }
}
