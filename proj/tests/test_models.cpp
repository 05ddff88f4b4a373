#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include "csrminer/models/cart.hpp"
#include "csrminer/models/conjugate_gradient.hpp"
#include "csrminer/models/hybrid.hpp"
#include "csrminer/models/linear.hpp"
#include "csrminer/models/mlp.hpp"
#include "csrminer/models/pnn.hpp"
#include "csrminer/models/svm.hpp"
#include "oracles.hpp"

using namespace csrminer;

namespace {

Matrix random_matrix(std::size_t rows, std::size_t cols, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) m(r, c) = u(rng);
    }
    return m;
}

double training_accuracy(const Model& model, const Matrix& x, std::span<const int> y) {
    std::size_t hits = 0;
    for (std::size_t r = 0; r < x.rows(); ++r) hits += static_cast<int>(model.predict(x.row(r))) == y[r];
    return static_cast<double>(hits) / static_cast<double>(x.rows());
}

/// Two noisy blobs labelled by x0 + x1 > 1.
struct Blobs {
    Matrix x;
    std::vector<int> y;
};

Blobs linear_blobs(std::size_t n, std::uint64_t seed, std::size_t cols = 2) {
    std::mt19937_64 rng(seed);
    Blobs b{random_matrix(n, cols, rng), {}};
    for (std::size_t r = 0; r < n; ++r) b.y.push_back(b.x(r, 0) + b.x(r, 1) > 1.0 ? 1 : 0);
    return b;
}

}  // namespace

TEST_SUITE("linear") {
    TEST_CASE("separable one-dimensional data") {
        Matrix x(2, 1);
        x(0, 0) = 0.1;
        x(1, 0) = 0.9;
        const std::vector<int> y{0, 1};
        const auto model = train_linear({x, y});
        CHECK(training_accuracy(model, x, y) == 1.0);
    }

    TEST_CASE("identity design returns the targets") {
        Matrix x(4, 4);
        for (std::size_t i = 0; i < 4; ++i) x(i, i) = 1.0;
        const std::vector<int> y{1, 0, 1, 1};
        const auto model = train_linear({x, y}, false);
        for (std::size_t i = 0; i < 4; ++i) CHECK(model.weights()[i] == doctest::Approx(y[i]).epsilon(1e-12));
        CHECK(model.bias() == 0.0);
    }

    TEST_CASE("pseudo-inverse matches the normal equations") {
        std::mt19937_64 rng(11);
        std::normal_distribution<double> g;
        for (int trial = 0; trial < 10; ++trial) {
            Matrix a(20, 5);
            for (std::size_t r = 0; r < 20; ++r) {
                for (std::size_t c = 0; c < 5; ++c) a(r, c) = g(rng);
            }
            std::vector<double> t(20);
            for (auto& v : t) v = g(rng);
            std::size_t rank = 0;
            const auto w = pseudo_inverse_solve(a, t, &rank);
            const auto oracle_w = oracle::normal_equations(a, t);
            CHECK(rank == 5);
            for (std::size_t i = 0; i < 5; ++i) CHECK(std::abs(w[i] - oracle_w[i]) < 1e-8);
        }
    }

    TEST_CASE("least-squares residual beats perturbations") {
        std::mt19937_64 rng(5);
        auto data = linear_blobs(50, 3, 4);
        const auto model = train_linear({data.x, data.y});
        auto residual = [&](const std::vector<double>& w, double b) {
            double s = 0.0;
            for (std::size_t r = 0; r < data.x.rows(); ++r) {
                double o = b;
                for (std::size_t c = 0; c < w.size(); ++c) o += w[c] * data.x(r, c);
                s += (o - data.y[r]) * (o - data.y[r]);
            }
            return s;
        };
        const double best = residual(model.weights(), model.bias());
        std::normal_distribution<double> g(0.0, 0.01);
        for (int probe = 0; probe < 100; ++probe) {
            auto w = model.weights();
            for (auto& v : w) v += g(rng);
            CHECK(best <= residual(w, model.bias() + g(rng)) + 1e-12);
        }
    }

    TEST_CASE("score is affine") {
        const auto data = linear_blobs(40, 8, 3);
        const auto model = train_linear({data.x, data.y});
        const std::vector<double> a{0.2, 0.7, 0.1}, b{0.5, 0.1, 0.3}, zero{0, 0, 0};
        std::vector<double> sum{0.7, 0.8, 0.4};
        CHECK(model.predict_score(a) + model.predict_score(b) ==
              doctest::Approx(model.predict_score(sum) + model.predict_score(zero)));
    }

    TEST_CASE("identical rows are flagged but still solved") {
        Matrix x(6, 2, 0.5);
        const std::vector<int> y{0, 1, 0, 1, 1, 1};
        const auto model = train_linear({x, y});
        CHECK(model.info().degenerate_design);
        CHECK(model.predict_score(x.row(0)) == doctest::Approx(4.0 / 6.0));
    }

    TEST_CASE("linearly planted labels are recovered") {
        const auto data = linear_blobs(400, 21);
        const auto model = train_linear({data.x, data.y});
        CHECK(training_accuracy(model, data.x, data.y) >= 0.95);
    }
}

TEST_SUITE("mlp") {
    TEST_CASE("xor with 113 hidden units") {
        Matrix x(4, 2);
        x(1, 1) = 1;
        x(2, 0) = 1;
        x(3, 0) = x(3, 1) = 1;
        const std::vector<int> y{0, 1, 1, 0};
        const Matrix none(0, 2);
        MlpParams p;
        p.epochs = 2000;
        const auto model = train_mlp({x, y}, {none, {}}, p, 3);
        CHECK(training_accuracy(model, x, y) == 1.0);
    }

    TEST_CASE("backprop gradient matches central differences") {
        std::mt19937_64 rng(17);
        const Matrix x = random_matrix(20, 8, rng);
        std::vector<int> y(20);
        for (std::size_t i = 0; i < 20; ++i) y[i] = static_cast<int>(i % 2);
        MlpNetwork net(8, 6);
        net.initialize(5);
        auto p = net.params();
        std::normal_distribution<double> g(0.0, 1.0);
        for (auto& v : p) v = g(rng);
        std::vector<double> grad(p.size());
        MlpNetwork::loss(8, 6, p, x, y, grad);
        const auto numeric = oracle::central_differences(
            [&](const std::vector<double>& q) { return MlpNetwork::loss(8, 6, q, x, y); }, p, 1e-5);
        for (std::size_t i = 0; i < p.size(); ++i) {
            const double scale = std::max({std::abs(grad[i]), std::abs(numeric[i]), 1e-6});
            CHECK(std::abs(grad[i] - numeric[i]) / scale < 1e-4);
        }
    }

    TEST_CASE("conjugate gradient never increases a convex loss") {
        // output layer over frozen random hidden features: a convex least-squares problem
        std::mt19937_64 rng(2);
        const Matrix h = random_matrix(30, 5, rng);
        std::vector<double> t(30);
        std::uniform_real_distribution<double> u;
        for (auto& v : t) v = u(rng);
        const Objective f = [&](std::span<const double> w, std::span<double> grad) {
            std::fill(grad.begin(), grad.end(), 0.0);
            double loss = 0.0;
            for (std::size_t r = 0; r < 30; ++r) {
                double o = 0.0;
                for (std::size_t c = 0; c < 5; ++c) o += w[c] * h(r, c);
                loss += 0.5 * (o - t[r]) * (o - t[r]) / 30.0;
                for (std::size_t c = 0; c < 5; ++c) grad[c] += (o - t[r]) * h(r, c) / 30.0;
            }
            return loss;
        };
        const auto result = minimize_conjugate_gradient(f, std::vector<double>(5, 0.0), CgOptions{});
        REQUIRE(result.history.size() >= 2);
        for (std::size_t i = 1; i < result.history.size(); ++i) CHECK(result.history[i] <= result.history[i - 1]);
    }

    TEST_CASE("rosenbrock is minimized") {
        const Objective f = [](std::span<const double> x, std::span<double> g) {
            const double a = 1 - x[0], b = x[1] - x[0] * x[0];
            g[0] = -2 * a - 400 * x[0] * b;
            g[1] = 200 * b;
            return a * a + 100 * b * b;
        };
        CgOptions options;
        options.iterations = 5000;
        const auto r = minimize_conjugate_gradient(f, {-1.2, 1.0}, options);
        CHECK(r.x[0] == doctest::Approx(1.0).epsilon(1e-3));
        CHECK(r.x[1] == doctest::Approx(1.0).epsilon(1e-3));
    }

    TEST_CASE("two-phase training and divergence reporting") {
        const auto data = linear_blobs(200, 4);
        const auto valid = linear_blobs(100, 5);
        MlpParams p;
        p.hidden_neurons = 10;
        p.epochs = 20;
        p.phase2 = MlpParams::Phase2::ConjugateGradient;
        const auto model = train_mlp({data.x, data.y}, {valid.x, valid.y}, p, 1);
        CHECK(model.kind() == ModelKind::MlpBpCg);
        CHECK(training_accuracy(model, valid.x, valid.y) > 0.85);

        Matrix bad = data.x;
        bad(0, 0) = std::nan("");
        try {
            train_mlp({bad, data.y}, {valid.x, valid.y}, p, 1);
            FAIL("expected NonFiniteLoss");
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::NonFiniteLoss);
            CHECK(std::string(e.what()).find("epoch") != std::string::npos);
        }
    }
}

TEST_SUITE("pnn") {
    TEST_CASE("one case per class picks the nearer case") {
        Matrix x(2, 2);
        x(1, 0) = x(1, 1) = 1.0;
        const std::vector<int> y{0, 1};
        const auto model = train_pnn({x, y}, PnnParams{0.3});
        CHECK(model.hidden_neurons() == 2);
        CHECK(model.predict(std::vector<double>{0.2, 0.3}) == BinaryLabel::Wrong);
        CHECK(model.predict(std::vector<double>{0.9, 0.6}) == BinaryLabel::Correct);
        CHECK(model.predict(std::vector<double>{1.0, 1.0}) == BinaryLabel::Correct);
    }

    TEST_CASE("tiny sigma is nearest neighbour") {
        std::mt19937_64 rng(99);
        const Matrix x = random_matrix(100, 3, rng);
        std::vector<int> y(100);
        std::bernoulli_distribution coin(0.4);
        for (auto& v : y) v = coin(rng);
        const auto model = train_pnn({x, y}, PnnParams{1e-6});
        const Matrix q = random_matrix(200, 3, rng);
        for (std::size_t r = 0; r < q.rows(); ++r) {
            CHECK(static_cast<int>(model.predict(q.row(r))) == oracle::nearest_neighbor(x, y, q.row(r)));
        }
    }

    TEST_CASE("duplicating the training set changes nothing") {
        std::mt19937_64 rng(3);
        const Matrix x = random_matrix(40, 2, rng);
        std::vector<int> y(40);
        for (std::size_t i = 0; i < 40; ++i) y[i] = x(i, 0) > 0.6 ? 1 : 0;
        Matrix twice = x;
        std::vector<int> y2 = y;
        for (std::size_t r = 0; r < x.rows(); ++r) {
            twice.append_row(x.row(r));
            y2.push_back(y[r]);
        }
        const auto a = train_pnn({x, y}, {});
        const auto b = train_pnn({twice, y2}, {});
        const Matrix q = random_matrix(50, 2, rng);
        for (std::size_t r = 0; r < q.rows(); ++r) {
            CHECK(a.predict(q.row(r)) == b.predict(q.row(r)));
            CHECK(a.predict_score(q.row(r)) == doctest::Approx(b.predict_score(q.row(r))));
        }
    }
}

TEST_SUITE("cart") {
    TEST_CASE("gini formula") {
        const std::vector<std::size_t> half{5, 5}, pure{7, 0};
        CHECK(gini(half) == doctest::Approx(0.5));
        CHECK(gini(pure) == 0.0);
    }

    TEST_CASE("pure input is one leaf") {
        std::mt19937_64 rng(1);
        const Matrix x = random_matrix(20, 3, rng);
        const std::vector<int> y(20, 1);
        const auto tree = train_cart({x, y}, {});
        CHECK(tree.leaf_count() == 1);
        CHECK(tree.depth() == 0);
        CHECK(leaf_id_of(tree, x.row(3)) == 1);
    }

    TEST_CASE("depth-one numbering") {
        Matrix x(10, 2);
        std::vector<int> y(10);
        for (std::size_t i = 0; i < 10; ++i) {
            x(i, 1) = static_cast<double>(i);
            y[i] = i >= 5;
        }
        CartParams p;
        p.min_leaf = 1;
        const auto tree = train_cart({x, y}, p);
        REQUIRE(tree.leaf_count() == 2);
        CHECK(tree.nodes()[0].attribute == 1);
        CHECK(tree.nodes()[0].threshold == 4.5);
        CHECK(leaf_id_of(tree, std::vector<double>{0, 4}) == 1);
        CHECK(leaf_id_of(tree, std::vector<double>{0, 5}) == 2);
    }

    TEST_CASE("root split equals exhaustive search") {
        std::mt19937_64 rng(123);
        for (int trial = 0; trial < 50; ++trial) {
            const std::size_t n = 20 + rng() % 181;
            Matrix x = random_matrix(n, 2, rng);
            // coarse values make ties common
            for (std::size_t r = 0; r < n; ++r) x(r, trial % 2) = std::round(x(r, trial % 2) * 6.0);
            std::vector<int> y(n);
            for (std::size_t r = 0; r < n; ++r) y[r] = (x(r, 0) + x(r, 1) + 0.3 * std::sin(r)) > 2.0;
            std::vector<std::size_t> rows(n);
            for (std::size_t r = 0; r < n; ++r) rows[r] = r;
            const auto mine = best_split(x, y, 2, rows, 1);
            const auto truth = oracle::brute_force_split(x, y, 2, 1);
            CHECK(mine.attribute == truth.attribute);
            CHECK(mine.threshold == truth.threshold);
        }
    }

    TEST_CASE("leaf structure invariants") {
        const auto data = linear_blobs(500, 77, 4);
        CartParams p;
        p.min_leaf = 5;
        const auto tree = train_cart({data.x, data.y}, p);
        std::map<int, std::size_t> hits;
        for (std::size_t r = 0; r < data.x.rows(); ++r) ++hits[leaf_id_of(tree, data.x.row(r))];
        CHECK(hits.size() == tree.leaf_count());
        CHECK(hits.begin()->first == 1);
        CHECK(hits.rbegin()->first == static_cast<int>(tree.leaf_count()));
        for (const auto& [leaf, count] : hits) CHECK(count >= p.min_leaf);

        // prediction is the majority of the leaf's training occupants
        std::map<int, std::array<int, 2>> occupants;
        for (std::size_t r = 0; r < data.x.rows(); ++r) occupants[leaf_id_of(tree, data.x.row(r))][data.y[r]]++;
        for (std::size_t r = 0; r < data.x.rows(); ++r) {
            const auto& o = occupants[leaf_id_of(tree, data.x.row(r))];
            const int majority = o[1] > o[0] ? 1 : 0;
            CHECK(static_cast<int>(tree.predict(data.x.row(r))) == majority);
        }

        // leaf ids increase left to right: an in-order walk meets them as 1..L
        std::vector<int> order;
        std::vector<int> stack{0};
        std::function<void(int)> walk = [&](int i) {
            const auto& node = tree.nodes()[static_cast<std::size_t>(i)];
            if (node.is_leaf()) {
                order.push_back(node.leaf_id);
                return;
            }
            walk(node.left);
            walk(node.right);
        };
        walk(0);
        for (std::size_t i = 0; i < order.size(); ++i) CHECK(order[i] == static_cast<int>(i + 1));
    }

    TEST_CASE("every chosen split is locally best") {
        const auto data = linear_blobs(120, 31, 3);
        CartParams p;
        p.min_leaf = 3;
        p.max_depth = 4;
        const auto tree = train_cart({data.x, data.y}, p);
        // re-derive every internal node's rows and compare with the oracle
        std::function<void(int, std::vector<std::size_t>)> check = [&](int i, std::vector<std::size_t> rows) {
            const auto& node = tree.nodes()[static_cast<std::size_t>(i)];
            if (node.is_leaf()) return;
            const Matrix sub = data.x.select_rows(rows);
            std::vector<int> y;
            for (auto r : rows) y.push_back(data.y[r]);
            const auto truth = oracle::brute_force_split(sub, y, 2, p.min_leaf);
            CHECK(node.attribute == truth.attribute);
            CHECK(node.threshold == truth.threshold);
            std::vector<std::size_t> left, right;
            for (auto r : rows) (data.x(r, static_cast<std::size_t>(node.attribute)) <= node.threshold ? left : right).push_back(r);
            check(node.left, left);
            check(node.right, right);
        };
        std::vector<std::size_t> all(data.x.rows());
        for (std::size_t r = 0; r < all.size(); ++r) all[r] = r;
        check(0, all);
        CHECK(tree.depth() <= 4);
    }

    TEST_CASE("leaf ids only for trees") {
        const auto data = linear_blobs(30, 2);
        const auto model = train_linear({data.x, data.y});
        CHECK_THROWS_AS(leaf_id_of(model, data.x.row(0)), Error);
    }

    TEST_CASE("native multiclass tree") {
        Matrix x(30, 1);
        std::vector<int> y(30);
        for (std::size_t i = 0; i < 30; ++i) {
            x(i, 0) = static_cast<double>(i);
            y[i] = static_cast<int>(i / 10);
        }
        CartParams p;
        p.min_leaf = 1;
        const auto tree = train_cart(x, y, 3, p);
        CHECK(tree.leaf_count() == 3);
        CHECK(tree.predict_class(std::vector<double>{25.0}) == 2);
    }
}

TEST_SUITE("svm") {
    TEST_CASE("kernel arithmetic") {
        const std::vector<double> one{1, 1};
        CHECK(polynomial_kernel(one, one, 3) == 27.0);
    }

    TEST_CASE("two separable points") {
        Matrix x(2, 2);
        x(1, 0) = x(1, 1) = 1.0;
        const std::vector<int> y{0, 1};
        const auto model = train_svm({x, y}, {});
        CHECK(model.predict(x.row(0)) == BinaryLabel::Wrong);
        CHECK(model.predict(x.row(1)) == BinaryLabel::Correct);
        const std::vector<int> pm{-1, 1};
        const auto sol = solve_svm_dual(x, pm, {});
        for (std::size_t i = 0; i < 2; ++i) {
            if (sol.alpha[i] > 1e-9 && sol.alpha[i] < 1.0 - 1e-9) {
                double f = sol.bias;
                for (std::size_t j = 0; j < 2; ++j) f += sol.alpha[j] * pm[j] * polynomial_kernel(x.row(j), x.row(i), 3);
                CHECK(pm[i] * f >= 1.0 - 1e-6);
            }
        }
    }

    TEST_CASE("dual optimum agrees with projected gradient") {
        std::mt19937_64 rng(8);
        for (int trial = 0; trial < 3; ++trial) {
            const Matrix x = random_matrix(60, 2, rng);
            std::vector<int> y(60);
            for (std::size_t r = 0; r < 60; ++r) y[r] = x(r, 0) + x(r, 1) > 1.0 ? 1 : -1;
            const auto sol = solve_svm_dual(x, y, {});
            CHECK(sol.converged);
            double balance = 0.0;
            for (std::size_t i = 0; i < 60; ++i) {
                CHECK(sol.alpha[i] >= 0.0);
                CHECK(sol.alpha[i] <= 1.0);
                balance += sol.alpha[i] * y[i];
            }
            CHECK(std::abs(balance) < 1e-8);
            CHECK(sol.kkt_violation <= 1e-3);
            CHECK(std::abs(sol.dual_objective - oracle::projected_gradient_dual(x, y, 3, 1.0)) < 1e-3);
        }
    }

    TEST_CASE("iteration cap is a flag, not an error") {
        const auto data = linear_blobs(80, 6);
        SvmParams p;
        p.max_iterations = 2;
        const auto model = train_svm({data.x, data.y}, p);
        CHECK_FALSE(model.info().converged);
        CHECK(model.info().note.find("NoConvergence") != std::string::npos);
    }
}

TEST_SUITE("hybrid") {
    TEST_CASE("leaf id scaling") {
        CHECK(scaled_leaf_id(3, 5) == 0.5);
        CHECK(scaled_leaf_id(1, 5) == 0.0);
        CHECK(scaled_leaf_id(5, 5) == 1.0);
        CHECK(scaled_leaf_id(1, 1) == 0.5);
    }

    TEST_CASE("single-leaf tree feeds a constant one half") {
        std::mt19937_64 rng(4);
        const Matrix x = random_matrix(40, 3, rng);
        std::vector<int> y(40);
        for (std::size_t i = 0; i < 40; ++i) y[i] = x(i, 0) > 0.5;
        CartParams cart;
        cart.min_leaf = 40;  // no split can leave 40 rows on both sides
        MlpParams mlp;
        mlp.hidden_neurons = 5;
        mlp.epochs = 30;
        const Matrix none(0, 3);
        const auto hybrid = train_hybrid({x, y}, {none, {}}, cart, mlp, 9);
        CHECK(hybrid.tree().leaf_count() == 1);
        for (std::size_t r = 0; r < x.rows(); ++r) CHECK(hybrid.leaf_feature(x.row(r)) == 0.5);

        // equals a plain network trained on the same inputs plus a constant column
        const Matrix augmented = x.append_column(std::vector<double>(x.rows(), 0.5));
        const Matrix none4(0, 4);
        const auto plain = train_mlp({augmented, y}, {none4, {}}, mlp, 9);
        for (std::size_t r = 0; r < x.rows(); ++r) {
            CHECK(hybrid.predict_score(x.row(r)) == doctest::Approx(plain.predict_score(augmented.row(r))));
        }
    }
}

TEST_SUITE("models") {
    TEST_CASE("hyperparameter validation") {
        ClassifierSpec spec;
        spec.kind = ModelKind::MlpBp;
        spec.params.mlp.hidden_neurons = 0;
        CHECK_THROWS_AS(spec.validate(), Error);
        spec = {};
        spec.kind = ModelKind::Pnn;
        spec.params.pnn.sigma = 0.0;
        CHECK_THROWS_AS(spec.validate(), Error);
        spec = {};
        spec.kind = ModelKind::Svm;
        spec.params.svm.degree = 0;
        CHECK_THROWS_AS(spec.validate(), Error);
        spec = {};
        spec.kind = ModelKind::Cart;
        spec.params.cart.max_depth = 0;
        CHECK_THROWS_AS(spec.validate(), Error);
        spec.kind = ModelKind::Linear;
        CHECK_NOTHROW(spec.validate());
    }

    TEST_CASE("kind names") {
        for (auto kind : kAllModelKinds) CHECK(parse_model_kind(to_string(kind)) == kind);
        CHECK(parse_model_kind("bpcg") == ModelKind::MlpBpCg);
        CHECK_THROWS_AS(parse_model_kind("knn"), Error);
    }

    TEST_CASE("every kind: determinism, arity, save and load") {
        const auto train = linear_blobs(150, 12, 3);
        const auto valid = linear_blobs(60, 13, 3);
        for (auto kind : kAllModelKinds) {
            CAPTURE(to_string(kind));
            ClassifierSpec spec;
            spec.kind = kind;
            spec.params.mlp.hidden_neurons = 8;
            spec.params.mlp.epochs = 15;
            spec.seed = 77;
            const auto a = train_model(spec, {train.x, train.y}, {valid.x, valid.y});
            const auto b = train_model(spec, {train.x, train.y}, {valid.x, valid.y});
            CHECK(a->kind() == kind);
            CHECK(a->arity() == 3);
            CHECK(save_model(*a, "abc") == save_model(*b, "abc"));
            CHECK(training_accuracy(*a, valid.x, valid.y) > 0.55);

            const auto loaded = load_model(save_model(*a, "abc"));
            CHECK(loaded->kind() == kind);
            for (std::size_t r = 0; r < valid.x.rows(); ++r) {
                CHECK(loaded->predict(valid.x.row(r)) == a->predict(valid.x.row(r)));
                CHECK(loaded->predict_score(valid.x.row(r)) == doctest::Approx(a->predict_score(valid.x.row(r))));
            }
            try {
                a->predict(std::vector<double>{0.1, 0.2});
                FAIL("expected ArityMismatch");
            } catch (const Error& e) {
                CHECK(e.code() == ErrorCode::ArityMismatch);
            }
        }
    }

    TEST_CASE("malformed model text") {
        CHECK_THROWS_AS(load_model("not json"), Error);
        CHECK_THROWS_AS(load_model("{\"format\": \"other\"}"), Error);
    }

    TEST_CASE("one label only is refused") {
        const auto data = linear_blobs(20, 1);
        const std::vector<int> ones(20, 1);
        CHECK_THROWS_AS(train_linear({data.x, ones}), Error);
        CHECK_THROWS_AS(train_svm({data.x, ones}, {}), Error);
    }
}
