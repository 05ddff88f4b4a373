#include "csrminer/problem.hpp"

#include <algorithm>
#include <memory>

namespace csrminer {

std::size_t Problem::class_count(int class_index) const {
    return static_cast<std::size_t>(std::count(labels.begin(), labels.end(), class_index));
}

std::vector<int> Problem::one_vs_rest(int class_index) const {
    std::vector<int> out(labels.size());
    for (std::size_t i = 0; i < labels.size(); ++i) out[i] = labels[i] == class_index ? 1 : 0;
    return out;
}

int Problem::class_index(std::string_view name) const {
    for (std::size_t i = 0; i < class_names.size(); ++i) {
        if (class_names[i] == name) return static_cast<int>(i);
    }
    return -1;
}

Problem make_problem(const CleanDataset& dataset, ScalingMode mode) {
    Problem p;
    p.attributes = attribute_names();
    const auto classes = dataset.classes();
    for (auto c : classes) p.class_names.emplace_back(to_string(c));
    p.labels.reserve(dataset.size());
    for (auto label : dataset.labels) {
        p.labels.push_back(static_cast<int>(std::find(classes.begin(), classes.end(), label) - classes.begin()));
    }
    if (mode == ScalingMode::AllData) {
        auto features = std::make_shared<const Matrix>(dataset.features);
        p.features = [features](std::span<const std::size_t>) { return *features; };
    } else {
        auto records = std::make_shared<const std::vector<EvaluationRecord>>(dataset.records);
        p.features = [records](std::span<const std::size_t> fit_rows) {
            std::vector<EvaluationRecord> fit;
            fit.reserve(fit_rows.size());
            for (auto r : fit_rows) fit.push_back((*records)[r]);
            return apply_scaling(*records, fit_scaling(fit));
        };
    }
    return p;
}

Problem make_problem(Matrix features, std::vector<int> labels, std::vector<std::string> class_names,
                     std::vector<std::string> attributes) {
    if (features.rows() != labels.size()) {
        throw Error(ErrorCode::InsufficientData, "feature rows and labels differ in count");
    }
    if (attributes.size() != features.cols()) {
        throw Error(ErrorCode::InsufficientData, "attribute names and feature columns differ in count");
    }
    Problem p;
    p.attributes = std::move(attributes);
    p.class_names = std::move(class_names);
    p.labels = std::move(labels);
    auto shared = std::make_shared<const Matrix>(std::move(features));
    p.features = [shared](std::span<const std::size_t>) { return *shared; };
    return p;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t tag) {
    std::uint64_t z = base ^ (tag * 0x9e3779b97f4a7c15ULL);
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace csrminer
