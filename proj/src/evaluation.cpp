#include "csrminer/evaluation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>

#include "csrminer/rational.hpp"

namespace csrminer {

double ClassReport::acc_correct() const noexcept {
    return case_count_correct ? static_cast<double>(hits_correct) / static_cast<double>(case_count_correct) : 0.0;
}

double ClassReport::acc_wrong() const noexcept {
    return case_count_wrong ? static_cast<double>(hits_wrong) / static_cast<double>(case_count_wrong) : 0.0;
}

double ClassReport::overall() const noexcept {
    const std::size_t n = total();
    return n ? static_cast<double>(hits_correct + hits_wrong) / static_cast<double>(n) : 0.0;
}

ClassReport& ClassReport::operator+=(const ClassReport& other) {
    case_count_correct += other.case_count_correct;
    case_count_wrong += other.case_count_wrong;
    hits_correct += other.hits_correct;
    hits_wrong += other.hits_wrong;
    return *this;
}

std::string percent(std::size_t hits, std::size_t cases) {
    if (cases == 0) return "-";
    return Rational(static_cast<std::int64_t>(hits) * 100, static_cast<std::int64_t>(cases)).to_fixed(2);
}

ClassReport confusion(const Model& model, const Matrix& x, std::span<const int> y, std::string class_name) {
    if (x.rows() == 0) throw Error(ErrorCode::EmptyEvaluationSet, "nothing to evaluate");
    ClassReport report;
    report.class_name = std::move(class_name);
    for (std::size_t r = 0; r < x.rows(); ++r) {
        const bool predicted_correct = model.predict(x.row(r)) == BinaryLabel::Correct;
        if (y[r] == 1) {
            ++report.case_count_correct;
            if (predicted_correct) ++report.hits_correct;
        } else {
            ++report.case_count_wrong;
            if (!predicted_correct) ++report.hits_wrong;
        }
    }
    return report;
}

std::string_view to_string(Protocol protocol) {
    return protocol == Protocol::Holdout ? "holdout" : "kfold";
}

std::vector<std::vector<std::size_t>> kfold_partition(std::size_t n, std::size_t k, std::uint64_t seed) {
    if (k < 2) throw Error(ErrorCode::BadFoldCount, "k-fold needs k >= 2");
    if (n < k) throw Error(ErrorCode::BadFoldCount, "fewer records than folds");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    std::vector<std::vector<std::size_t>> folds(k);
    for (std::size_t i = 0; i < n; ++i) folds[i % k].push_back(order[i]);
    for (auto& f : folds) std::sort(f.begin(), f.end());
    return folds;
}

namespace {

std::vector<int> pick(std::span<const int> values, std::span<const std::size_t> rows) {
    std::vector<int> out;
    out.reserve(rows.size());
    for (auto r : rows) out.push_back(values[r]);
    return out;
}

}  // namespace

ProtocolResult evaluate_holdout(const ClassifierSpec& spec, const Problem& problem, std::uint64_t seed,
                                const HoldoutOptions& options) {
    const Split parts = split(problem.size(), options.ratios, seed);
    if (parts.validation.empty()) throw Error(ErrorCode::EmptyEvaluationSet, "validation partition is empty");
    const Matrix all = problem.features(parts.train);
    const Matrix train_x = all.select_rows(parts.train);
    const Matrix validation_x = all.select_rows(parts.validation);

    ProtocolResult result;
    result.protocol = Protocol::Holdout;
    for (std::size_t c = 0; c < problem.class_names.size(); ++c) {
        const auto labels = problem.one_vs_rest(static_cast<int>(c));
        const auto train_y = pick(labels, parts.train);
        const auto validation_y = pick(labels, parts.validation);
        ClassifierSpec cell = spec;
        cell.seed = derive_seed(spec.seed, c);
        auto model = train_model(cell, {train_x, train_y}, {validation_x, validation_y});
        result.reports.push_back(confusion(*model, validation_x, validation_y, problem.class_names[c]));
        if (options.keep_models) result.models.push_back(std::move(model));
    }
    return result;
}

ProtocolResult evaluate_kfold(const ClassifierSpec& spec, const Problem& problem, std::size_t k,
                              std::uint64_t seed) {
    const auto folds = kfold_partition(problem.size(), k, seed);
    ProtocolResult result;
    result.protocol = Protocol::KFold;
    for (std::size_t c = 0; c < problem.class_names.size(); ++c) {
        result.reports.push_back(ClassReport{problem.class_names[c]});
    }
    for (std::size_t f = 0; f < folds.size(); ++f) {
        std::vector<std::size_t> train_rows;
        train_rows.reserve(problem.size());
        for (std::size_t g = 0; g < folds.size(); ++g) {
            if (g != f) train_rows.insert(train_rows.end(), folds[g].begin(), folds[g].end());
        }
        std::sort(train_rows.begin(), train_rows.end());
        const Matrix all = problem.features(train_rows);
        const Matrix train_x = all.select_rows(train_rows);
        const Matrix held_x = all.select_rows(folds[f]);
        const Matrix none(0, all.cols());
        for (std::size_t c = 0; c < problem.class_names.size(); ++c) {
            const auto labels = problem.one_vs_rest(static_cast<int>(c));
            const auto train_y = pick(labels, train_rows);
            const auto held_y = pick(labels, folds[f]);
            ClassifierSpec cell = spec;
            cell.seed = derive_seed(spec.seed, c * 1000 + f);
            auto model = train_model(cell, {train_x, train_y}, {none, {}});
            result.reports[c] += confusion(*model, held_x, held_y);
        }
    }
    return result;
}

const MatrixCell& EvaluationMatrix::cell(std::size_t class_index, ModelKind kind) const {
    const auto it = std::find(kinds.begin(), kinds.end(), kind);
    if (it == kinds.end()) throw Error(ErrorCode::IncompleteMatrix, "model kind not in matrix");
    return cells.at(class_index)[static_cast<std::size_t>(it - kinds.begin())];
}

EvaluationMatrix evaluate_all(const EvaluationPlan& plan, const Problem& problem, std::uint64_t seed,
                              std::map<std::pair<int, ModelKind>, std::shared_ptr<const Model>>* models) {
    EvaluationMatrix m;
    m.classes = problem.class_names;
    m.dataset_size = problem.size();
    for (std::size_t c = 0; c < m.classes.size(); ++c) m.class_sizes.push_back(problem.class_count(static_cast<int>(c)));
    m.cells.assign(m.classes.size(), {});
    for (const auto& spec : plan.specs) {
        m.kinds.push_back(spec.kind);
        const bool kfold = plan.cart_kfold && spec.kind == ModelKind::Cart;
        const Protocol protocol = kfold ? Protocol::KFold : Protocol::Holdout;
        try {
            ProtocolResult result;
            if (kfold) {
                result = evaluate_kfold(spec, problem, plan.folds, seed);
                if (models) {
                    // persisted CART models come from the holdout training partition
                    HoldoutOptions keep = plan.holdout;
                    keep.keep_models = true;
                    auto fitted = evaluate_holdout(spec, problem, seed, keep);
                    for (std::size_t c = 0; c < fitted.models.size(); ++c) {
                        (*models)[{static_cast<int>(c), spec.kind}] = fitted.models[c];
                    }
                }
            } else {
                HoldoutOptions options = plan.holdout;
                options.keep_models = models != nullptr;
                result = evaluate_holdout(spec, problem, seed, options);
                for (std::size_t c = 0; c < result.models.size(); ++c) {
                    (*models)[{static_cast<int>(c), spec.kind}] = result.models[c];
                }
            }
            for (std::size_t c = 0; c < m.classes.size(); ++c) {
                m.cells[c].push_back(MatrixCell{spec.kind, protocol, result.reports[c], {}});
            }
        } catch (const Error& e) {
            for (std::size_t c = 0; c < m.classes.size(); ++c) {
                m.cells[c].push_back(MatrixCell{spec.kind, protocol, std::nullopt,
                                                std::string(to_string(e.code())) + ": " + e.what()});
            }
        }
    }
    return m;
}

std::vector<ModelKind> rank_models(const EvaluationMatrix& matrix) {
    if (matrix.classes.empty() || matrix.kinds.empty()) throw Error(ErrorCode::IncompleteMatrix, "empty matrix");
    struct Score {
        std::size_t column;
        double overall;
        double correct;
    };
    std::vector<Score> scores;
    for (std::size_t k = 0; k < matrix.kinds.size(); ++k) {
        Score s{k, 0.0, 0.0};
        for (std::size_t c = 0; c < matrix.classes.size(); ++c) {
            if (matrix.cells.size() <= c || matrix.cells[c].size() <= k || !matrix.cells[c][k].report) {
                throw Error(ErrorCode::IncompleteMatrix, "missing result for " + matrix.classes[c] + " / " +
                                                             std::string(to_string(matrix.kinds[k])));
            }
            s.overall += matrix.cells[c][k].report->overall();
            s.correct += matrix.cells[c][k].report->acc_correct();
        }
        s.overall /= static_cast<double>(matrix.classes.size());
        s.correct /= static_cast<double>(matrix.classes.size());
        scores.push_back(s);
    }
    std::stable_sort(scores.begin(), scores.end(), [](const Score& a, const Score& b) {
        if (a.overall != b.overall) return a.overall > b.overall;
        return a.correct > b.correct;
    });
    std::vector<ModelKind> out;
    for (const auto& s : scores) out.push_back(matrix.kinds[s.column]);
    return out;
}

std::vector<SeedSpread> seed_spread(const EvaluationPlan& plan, const Problem& problem,
                                    std::span<const std::uint64_t> seeds) {
    std::vector<std::vector<double>> samples(plan.specs.size());
    for (const auto seed : seeds) {
        EvaluationPlan reseeded = plan;
        for (auto& spec : reseeded.specs) spec.seed = derive_seed(spec.seed, seed);
        const auto matrix = evaluate_all(reseeded, problem, seed);
        for (std::size_t k = 0; k < matrix.kinds.size(); ++k) {
            double sum = 0.0;
            bool complete = true;
            for (std::size_t c = 0; c < matrix.classes.size(); ++c) {
                const auto& cell = matrix.cells[c][k];
                if (!cell.report) {
                    complete = false;
                    break;
                }
                sum += cell.report->overall();
            }
            if (complete) samples[k].push_back(sum / static_cast<double>(matrix.classes.size()));
        }
    }
    std::vector<SeedSpread> out;
    for (std::size_t k = 0; k < plan.specs.size(); ++k) {
        const auto& v = samples[k];
        SeedSpread s{plan.specs[k].kind, v.size()};
        if (!v.empty()) s.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
        if (v.size() > 1) {
            double ss = 0.0;
            for (double x : v) ss += (x - s.mean) * (x - s.mean);
            s.stddev = std::sqrt(ss / static_cast<double>(v.size() - 1));
        }
        out.push_back(s);
    }
    return out;
}

}  // namespace csrminer
