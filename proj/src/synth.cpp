#include "csrminer/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

#include <json.hpp>

namespace csrminer {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

void check_proportions(const std::map<ClassLabel, double>& proportions, std::string_view column,
                       std::size_t min_class_count) {
    if (proportions.empty()) {
        throw Error(ErrorCode::InvalidConfig, "no class proportions for " + std::string(column));
    }
    const bool whole_met = proportions.contains(ClassLabel::Met);
    const bool split_met = proportions.contains(ClassLabel::Met1) || proportions.contains(ClassLabel::Met2);
    if (whole_met && split_met) {
        throw Error(ErrorCode::InvalidConfig, std::string(column) + ": Met cannot be combined with Met1/Met2");
    }
    double total = 0.0;
    for (const auto& [label, p] : proportions) {
        if (!(p >= 0.0) || !std::isfinite(p)) {
            throw Error(ErrorCode::InvalidConfig, std::string(column) + ": negative proportion");
        }
        if (p == 0.0 && min_class_count > 0) {
            throw Error(ErrorCode::InfeasibleProportions,
                        std::string(column) + ": class " + std::string(to_string(label)) +
                            " has proportion 0 but min_class_count is " + std::to_string(min_class_count));
        }
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-6) {
        throw Error(ErrorCode::InvalidConfig, std::string(column) + ": proportions must sum to 1");
    }
}

double standard_uniform_spread(std::size_t i, std::size_t n) {
    // evenly spaced, zero mean, unit variance
    return std::sqrt(3.0) * (2.0 * (static_cast<double>(i) + 0.5) / static_cast<double>(n) - 1.0);
}

Rational two_decimals(double value) {
    return Rational(static_cast<std::int64_t>(std::floor(value * 100.0 + 0.5)), 100);
}

/// Assigns a score to every record so that the records ranked lowest by
/// `latent` land in the lowest class, and the per-class counts follow
/// `proportions` exactly (largest remainder).
std::vector<Rational> quantile_scores(const std::vector<double>& latent,
                                      const std::map<ClassLabel, double>& proportions) {
    const std::size_t n = latent.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return latent[a] < latent[b]; });

    std::vector<std::pair<ClassLabel, std::size_t>> bands;
    for (const auto& [label, count] : census_targets(proportions, n)) bands.emplace_back(label, count);
    std::sort(bands.begin(), bands.end(),
              [](const auto& a, const auto& b) { return score_band(a.first).first < score_band(b.first).first; });

    std::vector<Rational> scores(n);
    std::size_t cursor = 0;
    for (const auto& [label, count] : bands) {
        const auto [lo_r, hi_r] = score_band(label);
        const double lo = lo_r.to_double();
        const double width = hi_r.to_double() - lo;
        for (std::size_t r = 0; r < count; ++r, ++cursor) {
            const double position = 0.02 + 0.96 * (static_cast<double>(r) + 0.5) / static_cast<double>(count);
            Rational s = two_decimals(lo + width * position);
            if (s < lo_r) s = lo_r;
            if (label != ClassLabel::FarExceeded && !(s < hi_r)) s = hi_r - Rational(1, 100);
            scores[order[cursor]] = s;
        }
    }
    return scores;
}

std::map<ClassLabel, double> proportions_from_json(const json& j) {
    std::map<ClassLabel, double> out;
    for (const auto& [key, value] : j.items()) {
        auto label = parse_class_label(key);
        if (!label) throw Error(ErrorCode::InvalidConfig, "unknown class label '" + key + "'");
        out[*label] = value.get<double>();
    }
    return out;
}

json proportions_to_json(const std::map<ClassLabel, double>& proportions) {
    json j = json::object();
    for (const auto& [label, p] : proportions) j[std::string(to_string(label))] = p;
    return j;
}

}  // namespace

std::map<ClassLabel, std::size_t> census_targets(const std::map<ClassLabel, double>& proportions, std::size_t n) {
    std::map<ClassLabel, std::size_t> counts;
    std::vector<std::pair<double, ClassLabel>> remainders;
    std::size_t assigned = 0;
    double total = 0.0;
    for (const auto& [label, p] : proportions) total += p;
    for (const auto& [label, p] : proportions) {
        const double exact = static_cast<double>(n) * p / total;
        const auto whole = static_cast<std::size_t>(std::floor(exact));
        counts[label] = whole;
        assigned += whole;
        remainders.emplace_back(exact - static_cast<double>(whole), label);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (std::size_t i = 0; assigned < n && i < remainders.size(); ++i, ++assigned) {
        ++counts[remainders[i].second];
    }
    return counts;
}

void GeneratorConfig::validate() const {
    if (n_records == 0) throw Error(ErrorCode::InvalidConfig, "n_records must be positive");
    if (n_agents == 0 || n_products == 0 || n_months == 0) {
        throw Error(ErrorCode::InvalidConfig, "n_agents, n_products and n_months must be positive");
    }
    if (!(training_rate >= 0.0 && training_rate <= 1.0)) {
        throw Error(ErrorCode::InvalidConfig, "training_rate must lie in [0,1]");
    }
    if (!(noise_sd >= 0.0) || !std::isfinite(noise_sd)) {
        throw Error(ErrorCode::InvalidConfig, "noise_sd must be >= 0");
    }
    for (const auto& [attribute, weight] : effect_weights) {
        if (!(weight >= 0.0) || !std::isfinite(weight)) {
            throw Error(ErrorCode::InvalidConfig,
                        "effect weight of " + std::string(attribute_name(attribute)) + " must be >= 0");
        }
    }
    check_proportions(customer_service_proportions, "customer_service", min_class_count);
    check_proportions(business_need_proportions, "business_needs", min_class_count);
    for (const auto* props : {&customer_service_proportions, &business_need_proportions}) {
        for (const auto& [label, count] : census_targets(*props, n_records)) {
            if (count < min_class_count) {
                throw Error(ErrorCode::InfeasibleProportions,
                            "class " + std::string(to_string(label)) + " would receive only " +
                                std::to_string(count) + " records");
            }
        }
    }
}

std::string GeneratorConfig::to_json() const {
    json j;
    j["n_records"] = n_records;
    j["n_agents"] = n_agents;
    j["n_products"] = n_products;
    j["n_months"] = n_months;
    j["start_month"] = start_month.to_string();
    j["training_rate"] = training_rate;
    j["class_proportions"] = {{"customer_service", proportions_to_json(customer_service_proportions)},
                              {"business_needs", proportions_to_json(business_need_proportions)}};
    json weights = json::object();
    for (const auto& [attribute, w] : effect_weights) weights[std::string(attribute_name(attribute))] = w;
    j["effect_weights"] = weights;
    j["noise_sd"] = noise_sd;
    j["min_class_count"] = min_class_count;
    j["seed"] = seed;
    return j.dump(2);
}

GeneratorConfig GeneratorConfig::from_json(const std::string& text) {
    GeneratorConfig c;
    try {
        const json j = json::parse(text);
        c.n_records = j.value("n_records", c.n_records);
        c.n_agents = j.value("n_agents", c.n_agents);
        c.n_products = j.value("n_products", c.n_products);
        c.n_months = j.value("n_months", c.n_months);
        if (j.contains("start_month")) {
            auto m = Month::parse(j.at("start_month").get<std::string>());
            if (!m) throw Error(ErrorCode::InvalidConfig, "start_month must be mm/01/yyyy");
            c.start_month = *m;
        }
        c.training_rate = j.value("training_rate", c.training_rate);
        if (j.contains("class_proportions")) {
            const auto& p = j.at("class_proportions");
            if (p.contains("customer_service")) c.customer_service_proportions = proportions_from_json(p.at("customer_service"));
            if (p.contains("business_needs")) c.business_need_proportions = proportions_from_json(p.at("business_needs"));
        }
        if (j.contains("effect_weights")) {
            c.effect_weights.clear();
            for (const auto& [key, value] : j.at("effect_weights").items()) {
                auto a = parse_attribute(key);
                if (!a) throw Error(ErrorCode::InvalidConfig, "unknown attribute '" + key + "'");
                c.effect_weights[*a] = value.get<double>();
            }
        }
        c.noise_sd = j.value("noise_sd", c.noise_sd);
        c.min_class_count = j.value("min_class_count", c.min_class_count);
        c.seed = j.value("seed", c.seed);
    } catch (const json::exception& e) {
        throw Error(ErrorCode::InvalidConfig, std::string("generator config: ") + e.what());
    }
    return c;
}

std::string GroundTruth::to_line() const {
    std::string line;
    for (std::size_t i = 0; i < importance_order.size(); ++i) {
        if (i) line += ',';
        line += attribute_name(importance_order[i]);
    }
    return line;
}

GroundTruth GroundTruth::from_line(const std::string& line) {
    GroundTruth truth;
    std::stringstream in(line);
    std::string name;
    while (std::getline(in, name, ',')) {
        if (!name.empty() && name.back() == '\r') name.pop_back();
        auto a = parse_attribute(name);
        if (!a) throw Error(ErrorCode::InvalidConfig, "unknown attribute '" + name + "' in ground truth");
        truth.importance_order.push_back(*a);
    }
    return truth;
}

GeneratedData generate(const GeneratorConfig& config) {
    config.validate();
    std::mt19937_64 rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    auto uniform = [&](double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); };
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };

    // Products: distinct ids and time-management baselines.
    std::vector<long> product_ids;
    while (product_ids.size() < config.n_products) {
        const long id = std::uniform_int_distribution<long>(100, 3999)(rng);
        if (std::find(product_ids.begin(), product_ids.end(), id) == product_ids.end()) product_ids.push_back(id);
    }
    std::sort(product_ids.begin(), product_ids.end());
    struct ProductProfile {
        double acw_mean, adherence_mean, aux_mean, offset;
    };
    std::vector<ProductProfile> products;
    for (std::size_t p = 0; p < config.n_products; ++p) {
        ProductProfile profile{uniform(120.0, 400.0), uniform(0.85, 0.97), uniform(0.02, 0.08), 0.0};
        profile.offset = 0.8 * standard_uniform_spread(p, config.n_products) + 0.6 * normal(rng);
        products.push_back(profile);
    }

    // Agent skill follows the agent id loosely.
    std::vector<double> skill(config.n_agents);
    for (std::size_t a = 0; a < config.n_agents; ++a) {
        skill[a] = 0.8 * standard_uniform_spread(a, config.n_agents) + 0.6 * normal(rng);
    }

    // Date drift: slow trend plus a half-year cycle, standardized over months.
    std::vector<double> drift(config.n_months, 0.0);
    if (config.n_months > 1) {
        for (std::size_t m = 0; m < config.n_months; ++m) {
            const double ramp = standard_uniform_spread(m, config.n_months);
            drift[m] = 0.6 * ramp + 0.8 * std::sqrt(2.0) * std::sin(2.0 * kPi * static_cast<double>(m) / 6.0 + 0.5);
        }
        const double mean = std::accumulate(drift.begin(), drift.end(), 0.0) / static_cast<double>(config.n_months);
        double var = 0.0;
        for (double d : drift) var += (d - mean) * (d - mean);
        const double sd = std::sqrt(var / static_cast<double>(config.n_months));
        for (double& d : drift) d = sd > 0.0 ? (d - mean) / sd : 0.0;
    }

    auto weight = [&](Attribute a) {
        auto it = config.effect_weights.find(a);
        return it == config.effect_weights.end() ? 0.0 : it->second;
    };
    const double p_train = config.training_rate;
    const double train_sd = std::sqrt(p_train * (1.0 - p_train));

    std::vector<EvaluationRecord> records(config.n_records);
    std::vector<double> latent_cs(config.n_records);
    std::vector<double> latent_bn(config.n_records);
    std::poisson_distribution<long> absences(1.0);
    for (std::size_t i = 0; i < config.n_records; ++i) {
        auto& r = records[i];
        const std::size_t agent = pick(config.n_agents);
        const std::size_t month = pick(config.n_months);
        const std::size_t product = pick(config.n_products);
        const bool training = uniform(0.0, 1.0) < p_train;
        const auto& profile = products[product];

        const double acw_sd = 0.25 * profile.acw_mean;
        const long acw = std::lround(std::clamp(profile.acw_mean + acw_sd * normal(rng), 30.0, 600.0));
        const double adherence =
            std::round(std::clamp(profile.adherence_mean + 0.03 * normal(rng), 0.5, 1.0) * 1e4) / 1e4;
        const double aux = std::round(std::clamp(profile.aux_mean + 0.015 * normal(rng), 0.0, 0.3) * 1e4) / 1e4;
        const long attendance = absences(rng);

        r.source_row = i + 1;
        r.agent_id = static_cast<long>(agent + 1);
        r.date = Month::from_ordinal(config.start_month.ordinal() + static_cast<int>(month));
        r.training = training;
        r.product_id = product_ids[product];
        r.acw_seconds = acw;
        r.adherence = adherence;
        r.aux = aux;
        r.attendance = attendance;

        const double signal =
            weight(Attribute::Agent) * skill[agent] + weight(Attribute::Date) * drift[month] +
            weight(Attribute::Training) * (train_sd > 0.0 ? -((training ? 1.0 : 0.0) - p_train) / train_sd : 0.0) +
            weight(Attribute::Product) * profile.offset +
            weight(Attribute::Acw) * -(static_cast<double>(acw) - profile.acw_mean) / acw_sd +
            weight(Attribute::Adherence) * (adherence - profile.adherence_mean) / 0.03 +
            weight(Attribute::Aux) * -(aux - profile.aux_mean) / 0.015 +
            weight(Attribute::Attendance) * -(static_cast<double>(attendance) - 1.0);
        latent_cs[i] = signal + config.noise_sd * normal(rng);
        latent_bn[i] = signal + config.noise_sd * normal(rng);
    }

    const auto cs = quantile_scores(latent_cs, config.customer_service_proportions);
    const auto bn = quantile_scores(latent_bn, config.business_need_proportions);
    for (std::size_t i = 0; i < config.n_records; ++i) {
        records[i].customer_service = cs[i];
        records[i].business_needs = bn[i];
    }

    GroundTruth truth;
    truth.importance_order.assign(kAttributes.begin(), kAttributes.end());
    std::stable_sort(truth.importance_order.begin(), truth.importance_order.end(),
                     [&](Attribute a, Attribute b) { return weight(a) > weight(b); });
    return {std::move(records), truth};
}

GeneratorConfig paper_default_config(EvaluationKind target) {
    GeneratorConfig c;
    c.customer_service_proportions = {
        {ClassLabel::MetSome, 1469.0 / 14671.0},
        {ClassLabel::Met1, 5965.0 / 14671.0},
        {ClassLabel::Met2, 5841.0 / 14671.0},
        {ClassLabel::Exceeded, 1396.0 / 14671.0},
    };
    c.business_need_proportions = {
        {ClassLabel::NotMet, 63.0 / 14690.0},  {ClassLabel::MetSome, 3533.0 / 14690.0},
        {ClassLabel::Met, 5974.0 / 14690.0},   {ClassLabel::Exceeded, 3610.0 / 14690.0},
        {ClassLabel::FarExceeded, 1510.0 / 14690.0},
    };
    c.n_records = target == EvaluationKind::CustomerService ? 14671 : 14690;
    c.effect_weights = {
        {Attribute::Product, 1.2}, {Attribute::Agent, 1.0},    {Attribute::Date, 0.9},
        {Attribute::Adherence, 0.45}, {Attribute::Training, 0.3}, {Attribute::Acw, 0.25},
        {Attribute::Aux, 0.2},     {Attribute::Attendance, 0.15},
    };
    c.noise_sd = 0.8;
    c.seed = 20030401;
    return c;
}

}  // namespace csrminer
