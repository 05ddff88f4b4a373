#include "csrminer/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <random>
#include <set>
#include <sstream>

#include "csrminer/hash.hpp"

namespace csrminer {

// ---------------------------------------------------------------------------
// Month

std::string Month::to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%02d/01/%04d", month, year);
    return buf;
}

std::optional<Month> Month::parse(std::string_view text) {
    if (text.size() != 10 || text[2] != '/' || text[5] != '/' || text.substr(3, 2) != "01") {
        return std::nullopt;
    }
    auto digits = [](std::string_view s, int& out) {
        if (!std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) return false;
        auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
        return ec == std::errc() && p == s.data() + s.size();
    };
    Month m;
    if (!digits(text.substr(0, 2), m.month) || !digits(text.substr(6, 4), m.year)) return std::nullopt;
    if (m.month < 1 || m.month > 12) return std::nullopt;
    return m;
}

bool EvaluationRecord::complete() const noexcept {
    return agent_id && date && training && product_id && customer_service && business_needs &&
           acw_seconds && adherence && attendance && aux;
}

// ---------------------------------------------------------------------------
// CSV

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t start = 0;
    while (true) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            fields.push_back(line.substr(start));
            break;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    for (auto& f : fields) {
        while (!f.empty() && (f.front() == ' ' || f.front() == '\t')) f.remove_prefix(1);
        while (!f.empty() && (f.back() == ' ' || f.back() == '\t')) f.remove_suffix(1);
    }
    return fields;
}

[[noreturn]] void malformed(std::size_t row, std::string_view column, std::string_view value) {
    throw Error(ErrorCode::MalformedRow, "row " + std::to_string(row) + ", column " + std::string(column) +
                                             ": cannot parse '" + std::string(value) + "'");
}

long parse_long(std::size_t row, std::string_view column, std::string_view text) {
    long value = 0;
    auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || p != text.data() + text.size()) malformed(row, column, text);
    return value;
}

/// "0.96" or "96%".
double parse_fraction(std::size_t row, std::string_view column, std::string_view text) {
    std::string_view body = text;
    bool percent = false;
    if (!body.empty() && body.back() == '%') {
        percent = true;
        body.remove_suffix(1);
    }
    double value = 0.0;
    auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), value);
    if (body.empty() || ec != std::errc() || p != body.data() + body.size() || !std::isfinite(value)) {
        malformed(row, column, text);
    }
    return percent ? value / 100.0 : value;
}

Rational parse_quality(std::size_t row, std::string_view column, std::string_view text) {
    try {
        return Rational::parse_decimal(text);
    } catch (const std::invalid_argument&) {
        malformed(row, column, text);
    }
}

std::string format_double(double value) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, p);
}

std::string format_quality(const Rational& r) {
    // Two decimals cover every value the generator emits; anything finer
    // keeps enough digits to round-trip exactly.
    for (int places : {2, 4, 6}) {
        std::string text = r.to_fixed(places);
        if (Rational::parse_decimal(text) == r) return text;
    }
    return r.to_fixed(9);
}

}  // namespace

std::vector<EvaluationRecord> read_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw Error(ErrorCode::SchemaMismatch, "missing header row");
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.size() >= 3 && static_cast<unsigned char>(line[0]) == 0xEF) line.erase(0, 3);  // BOM
    const auto header = split_fields(line);
    std::array<int, kCsvColumns.size()> position{};
    position.fill(-1);
    for (std::size_t i = 0; i < header.size(); ++i) {
        const auto it = std::find(kCsvColumns.begin(), kCsvColumns.end(), header[i]);
        if (it == kCsvColumns.end()) {
            throw Error(ErrorCode::SchemaMismatch, "unexpected column '" + std::string(header[i]) + "'");
        }
        auto& slot = position[static_cast<std::size_t>(it - kCsvColumns.begin())];
        if (slot != -1) throw Error(ErrorCode::SchemaMismatch, "duplicate column '" + std::string(header[i]) + "'");
        slot = static_cast<int>(i);
    }
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) {
        if (position[c] == -1) {
            throw Error(ErrorCode::SchemaMismatch, "missing column '" + std::string(kCsvColumns[c]) + "'");
        }
    }

    std::vector<EvaluationRecord> records;
    std::size_t row = 0;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        ++row;
        const auto fields = split_fields(line);
        if (fields.size() != header.size()) {
            throw Error(ErrorCode::MalformedRow, "row " + std::to_string(row) + ": expected " +
                                                     std::to_string(header.size()) + " fields, got " +
                                                     std::to_string(fields.size()));
        }
        auto field = [&](std::size_t column) { return fields[static_cast<std::size_t>(position[column])]; };

        EvaluationRecord rec;
        rec.source_row = row;
        if (auto f = field(0); !f.empty()) rec.agent_id = parse_long(row, kCsvColumns[0], f);
        if (auto f = field(1); !f.empty()) {
            rec.date = Month::parse(f);
            if (!rec.date) malformed(row, kCsvColumns[1], f);
        }
        if (auto f = field(2); !f.empty()) {
            if (f != "0" && f != "1") malformed(row, kCsvColumns[2], f);
            rec.training = f == "1";
        }
        if (auto f = field(3); !f.empty()) rec.product_id = parse_long(row, kCsvColumns[3], f);
        if (auto f = field(4); !f.empty()) rec.customer_service = parse_quality(row, kCsvColumns[4], f);
        if (auto f = field(5); !f.empty()) rec.business_needs = parse_quality(row, kCsvColumns[5], f);
        if (auto f = field(6); !f.empty()) rec.acw_seconds = parse_long(row, kCsvColumns[6], f);
        if (auto f = field(7); !f.empty()) rec.adherence = parse_fraction(row, kCsvColumns[7], f);
        if (auto f = field(8); !f.empty()) rec.attendance = parse_long(row, kCsvColumns[8], f);
        if (auto f = field(9); !f.empty()) rec.aux = parse_fraction(row, kCsvColumns[9], f);
        records.push_back(rec);
    }
    return records;
}

std::vector<EvaluationRecord> load_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
    return read_csv(in);
}

void write_csv(std::ostream& out, std::span<const EvaluationRecord> records) {
    for (std::size_t c = 0; c < kCsvColumns.size(); ++c) out << (c ? "," : "") << kCsvColumns[c];
    out << '\n';
    for (const auto& r : records) {
        if (r.agent_id) out << *r.agent_id;
        out << ',';
        if (r.date) out << r.date->to_string();
        out << ',';
        if (r.training) out << (*r.training ? 1 : 0);
        out << ',';
        if (r.product_id) out << *r.product_id;
        out << ',';
        if (r.customer_service) out << format_quality(*r.customer_service);
        out << ',';
        if (r.business_needs) out << format_quality(*r.business_needs);
        out << ',';
        if (r.acw_seconds) out << *r.acw_seconds;
        out << ',';
        if (r.adherence) out << format_double(*r.adherence);
        out << ',';
        if (r.attendance) out << *r.attendance;
        out << ',';
        if (r.aux) out << format_double(*r.aux);
        out << '\n';
    }
}

// ---------------------------------------------------------------------------
// cleaning

std::string_view to_string(RejectionReason reason) {
    switch (reason) {
        case RejectionReason::MissingValue: return "MissingValue";
        case RejectionReason::QualityOutOfRange: return "QualityOutOfRange";
        case RejectionReason::NegativeTimeManagement: return "NegativeTimeManagement";
        case RejectionReason::SmallClass: return "SmallClass";
    }
    return "?";
}

ClassLabel label_of(const EvaluationRecord& record, EvaluationKind target, bool split_met) {
    const auto& score = record.quality(target);
    if (!score) throw Error(ErrorCode::MalformedRow, "record has no target score");
    return class_label(categorize(*score, split_met));
}

namespace {

bool fields_present(const EvaluationRecord& r, EvaluationKind target) {
    // The other quality column is not an input, so its absence is tolerated.
    return r.agent_id && r.date && r.training && r.product_id && r.quality(target) && r.acw_seconds &&
           r.adherence && r.attendance && r.aux;
}

}  // namespace

CleanResult clean(std::span<const EvaluationRecord> records, const CleanOptions& options) {
    CleanResult result;
    std::vector<EvaluationRecord> valid;
    valid.reserve(records.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto& r = records[i];
        const std::size_t row = r.source_row ? r.source_row : i + 1;
        if (!fields_present(r, options.target)) {
            result.log.push_back({row, RejectionReason::MissingValue});
            continue;
        }
        const Rational& q = *r.quality(options.target);
        if (q < Rational(1) || q > Rational(5)) {
            result.log.push_back({row, RejectionReason::QualityOutOfRange});
            continue;
        }
        if (*r.acw_seconds < 0 || *r.adherence < 0.0 || *r.attendance < 0 || *r.aux < 0.0) {
            result.log.push_back({row, RejectionReason::NegativeTimeManagement});
            continue;
        }
        valid.push_back(r);
        if (!valid.back().source_row) valid.back().source_row = row;
    }

    std::map<ClassLabel, std::size_t> census;
    for (const auto& r : valid) ++census[label_of(r, options.target, options.split_met)];
    for (const auto& r : valid) {
        if (census[label_of(r, options.target, options.split_met)] < options.min_class_size) {
            result.log.push_back({r.source_row, RejectionReason::SmallClass});
        } else {
            result.retained.push_back(r);
        }
    }
    return result;
}

void write_rejection_log(std::ostream& out, std::span<const Rejection> log) {
    out << "row,reason\n";
    for (const auto& entry : log) out << entry.row << ',' << to_string(entry.reason) << '\n';
}

// ---------------------------------------------------------------------------
// scaling

std::string_view attribute_name(Attribute attribute) {
    switch (attribute) {
        case Attribute::Agent: return "Agent";
        case Attribute::Date: return "Date";
        case Attribute::Training: return "Training";
        case Attribute::Product: return "Product";
        case Attribute::Acw: return "ACW";
        case Attribute::Adherence: return "Adherence";
        case Attribute::Aux: return "Aux";
        case Attribute::Attendance: return "Attendance";
    }
    return "?";
}

std::optional<Attribute> parse_attribute(std::string_view name) {
    for (auto a : kAttributes) {
        std::string lower(attribute_name(a));
        std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
        if (attribute_name(a) == name || lower == name) return a;
    }
    return std::nullopt;
}

std::vector<std::string> attribute_names() {
    std::vector<std::string> names;
    for (auto a : kAttributes) names.emplace_back(attribute_name(a));
    return names;
}

double Range::scale(double value, bool& clamped) const noexcept {
    if (degenerate()) return 0.5;
    double s = (value - min) / (max - min);
    if (s < 0.0) {
        clamped = true;
        s = 0.0;
    } else if (s > 1.0) {
        clamped = true;
        s = 1.0;
    }
    return s;
}

void Range::include(double value) noexcept {
    min = std::min(min, value);
    max = std::max(max, value);
}

std::vector<std::string> ScalingParams::degenerate_ranges() const {
    std::vector<std::string> out;
    if (agent.degenerate()) out.emplace_back("Agent");
    if (product.degenerate()) out.emplace_back("Product");
    if (attendance.degenerate()) out.emplace_back("Attendance");
    if (date_span == 0) out.emplace_back("Date");
    for (const auto& [id, ranges] : per_product) {
        const std::string suffix = "@product " + std::to_string(id);
        if (ranges.acw.degenerate()) out.push_back("ACW" + suffix);
        if (ranges.adherence.degenerate()) out.push_back("Adherence" + suffix);
        if (ranges.aux.degenerate()) out.push_back("Aux" + suffix);
    }
    return out;
}

std::string ScalingParams::fingerprint() const {
    std::ostringstream s;
    s.precision(17);
    auto put = [&](const Range& r) { s << r.min << ':' << r.max << ';'; };
    put(agent);
    put(product);
    put(attendance);
    put(global.acw);
    put(global.adherence);
    put(global.aux);
    s << date_origin.ordinal() << ':' << date_span << ';';
    for (const auto& [id, r] : per_product) {
        s << id << '=';
        put(r.acw);
        put(r.adherence);
        put(r.aux);
    }
    return hex_digest(fnv1a64(s.str()));
}

ScalingParams fit_scaling(std::span<const EvaluationRecord> records) {
    if (records.empty()) throw Error(ErrorCode::EmptyDataset, "cannot fit scaling on zero records");
    auto seed_range = [](double v) { return Range{v, v}; };
    ScalingParams p;
    bool first = true;
    int first_month = 0;
    int last_month = 0;
    for (const auto& r : records) {
        if (!(r.agent_id && r.date && r.training && r.product_id && r.acw_seconds && r.adherence &&
              r.attendance && r.aux)) {
            throw Error(ErrorCode::MalformedRow,
                        "row " + std::to_string(r.source_row) + " has missing values; clean before scaling");
        }
        const auto acw = static_cast<double>(*r.acw_seconds);
        if (first) {
            p.agent = seed_range(static_cast<double>(*r.agent_id));
            p.product = seed_range(static_cast<double>(*r.product_id));
            p.attendance = seed_range(static_cast<double>(*r.attendance));
            p.global = {seed_range(acw), seed_range(*r.adherence), seed_range(*r.aux)};
            first_month = last_month = r.date->ordinal();
            first = false;
        }
        p.agent.include(static_cast<double>(*r.agent_id));
        p.product.include(static_cast<double>(*r.product_id));
        p.attendance.include(static_cast<double>(*r.attendance));
        p.global.acw.include(acw);
        p.global.adherence.include(*r.adherence);
        p.global.aux.include(*r.aux);
        first_month = std::min(first_month, r.date->ordinal());
        last_month = std::max(last_month, r.date->ordinal());

        auto [it, inserted] = p.per_product.try_emplace(
            *r.product_id,
            ScalingParams::ProductRanges{seed_range(acw), seed_range(*r.adherence), seed_range(*r.aux)});
        if (!inserted) {
            it->second.acw.include(acw);
            it->second.adherence.include(*r.adherence);
            it->second.aux.include(*r.aux);
        }
    }
    p.date_origin = Month::from_ordinal(first_month);
    p.date_span = last_month - first_month;
    return p;
}

FeatureVector apply_scaling(const EvaluationRecord& r, const ScalingParams& params, const WarningSink& sink) {
    if (!(r.agent_id && r.date && r.training && r.product_id && r.acw_seconds && r.adherence && r.attendance &&
          r.aux)) {
        throw Error(ErrorCode::MalformedRow,
                    "row " + std::to_string(r.source_row) + " has missing values; clean before scaling");
    }
    const ScalingParams::ProductRanges* ranges = &params.global;
    if (auto it = params.per_product.find(*r.product_id); it != params.per_product.end()) {
        ranges = &it->second;
    } else {
        warn(sink, "row " + std::to_string(r.source_row) + ": product " + std::to_string(*r.product_id) +
                       " unseen when scaling was fit; using global ranges");
    }
    bool clamped = false;
    FeatureVector v{};
    v[0] = params.agent.scale(static_cast<double>(*r.agent_id), clamped);
    if (params.date_span == 0) {
        v[1] = 0.5;
    } else {
        const double months = static_cast<double>(r.date->ordinal() - params.date_origin.ordinal());
        v[1] = std::clamp(months / params.date_span, 0.0, 1.0);
        if (v[1] != months / params.date_span) clamped = true;
    }
    v[2] = *r.training ? 1.0 : 0.0;
    v[3] = params.product.scale(static_cast<double>(*r.product_id), clamped);
    v[4] = ranges->acw.scale(static_cast<double>(*r.acw_seconds), clamped);
    v[5] = ranges->adherence.scale(*r.adherence, clamped);
    v[6] = ranges->aux.scale(*r.aux, clamped);
    v[7] = params.attendance.scale(static_cast<double>(*r.attendance), clamped);
    if (clamped) warn(sink, "row " + std::to_string(r.source_row) + ": value outside fitted range clamped");
    return v;
}

Matrix apply_scaling(std::span<const EvaluationRecord> records, const ScalingParams& params,
                     const WarningSink& sink) {
    Matrix out(records.size(), kFeatureCount);
    for (std::size_t i = 0; i < records.size(); ++i) {
        const auto v = apply_scaling(records[i], params, sink);
        std::copy(v.begin(), v.end(), out.row(i).begin());
    }
    return out;
}

// ---------------------------------------------------------------------------
// dataset & split

std::vector<ClassLabel> CleanDataset::classes() const {
    std::vector<ClassLabel> out;
    for (const auto& [label, count] : class_census) out.push_back(label);
    return out;
}

CleanDataset make_dataset(std::vector<EvaluationRecord> retained, EvaluationKind target, bool split_met) {
    if (retained.empty()) throw Error(ErrorCode::EmptyDataset, "no records left after cleaning");
    CleanDataset ds;
    ds.target = target;
    ds.split_met = split_met;
    ds.records = std::move(retained);
    ds.labels.reserve(ds.records.size());
    for (const auto& r : ds.records) {
        ds.labels.push_back(label_of(r, target, split_met));
        ++ds.class_census[ds.labels.back()];
    }
    ds.scaling = fit_scaling(ds.records);
    ds.features = apply_scaling(ds.records, ds.scaling);
    return ds;
}

std::array<std::size_t, 3> split_sizes(std::size_t n, const SplitRatios& ratios) {
    const double parts[3] = {ratios.train, ratios.test, ratios.validation};
    double total = 0.0;
    for (double p : parts) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw Error(ErrorCode::BadRatios, "split ratios must be >= 0");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw Error(ErrorCode::BadRatios, "split ratios must sum to 1");
    std::array<std::size_t, 3> sizes{};
    double cumulative = 0.0;
    std::size_t previous = 0;
    for (int i = 0; i < 3; ++i) {
        cumulative += parts[i];
        const std::size_t bound =
            i == 2 ? n : std::min(n, static_cast<std::size_t>(std::floor(cumulative * static_cast<double>(n) + 0.5)));
        sizes[static_cast<std::size_t>(i)] = bound - previous;
        previous = bound;
    }
    return sizes;
}

Split split(std::size_t n, const SplitRatios& ratios, std::uint64_t seed) {
    const auto sizes = split_sizes(n, ratios);
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::mt19937_64 rng(seed);
    std::shuffle(order.begin(), order.end(), rng);
    Split s;
    auto first = order.begin();
    s.train.assign(first, first + static_cast<std::ptrdiff_t>(sizes[0]));
    first += static_cast<std::ptrdiff_t>(sizes[0]);
    s.test.assign(first, first + static_cast<std::ptrdiff_t>(sizes[1]));
    first += static_cast<std::ptrdiff_t>(sizes[1]);
    s.validation.assign(first, order.end());
    return s;
}

}  // namespace csrminer
