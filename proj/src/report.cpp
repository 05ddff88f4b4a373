#include "csrminer/report.hpp"

#include <algorithm>
#include <sstream>

#include "csrminer/dataset.hpp"
#include "csrminer/scoring.hpp"

namespace csrminer {

namespace {

std::string pretty_class(const std::string& name) {
    if (const auto label = parse_class_label(name)) return std::string(display_name(*label));
    return name;
}

std::string csv_field(std::string_view text) {
    if (text.find_first_of(",\"\n") == std::string_view::npos) return std::string(text);
    std::string out = "\"";
    for (char c : text) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

/// Left-aligns column 0 and 1, right-aligns the rest.
std::string align(const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width;
    for (const auto& row : rows) {
        width.resize(std::max(width.size(), row.size()), 0);
        for (std::size_t i = 0; i < row.size(); ++i) width[i] = std::max(width[i], row[i].size());
    }
    std::ostringstream out;
    for (const auto& row : rows) {
        std::string line;
        for (std::size_t i = 0; i < row.size(); ++i) {
            const std::string pad(width[i] - row[i].size(), ' ');
            if (i > 0) line += "  ";
            line += i < 2 ? row[i] + pad : pad + row[i];
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out << line << '\n';
    }
    return out.str();
}

const std::vector<std::string>& grid_columns() {
    static const std::vector<std::string> columns = [] {
        auto names = attribute_names();
        names.emplace_back(kLeafAttribute);
        return names;
    }();
    return columns;
}

}  // namespace

void write_matrix_csv(std::ostream& out, const EvaluationMatrix& matrix) {
    out << "class,kind,protocol,case_count_correct,case_count_wrong,hits_correct,hits_wrong,"
           "acc_correct,acc_wrong,overall,error\n";
    for (std::size_t c = 0; c < matrix.classes.size(); ++c) {
        for (const auto& cell : matrix.cells[c]) {
            out << csv_field(matrix.classes[c]) << ',' << csv_field(to_string(cell.kind)) << ','
                << to_string(cell.protocol) << ',';
            if (cell.report) {
                const auto& r = *cell.report;
                out << r.case_count_correct << ',' << r.case_count_wrong << ',' << r.hits_correct << ','
                    << r.hits_wrong << ',' << percent(r.hits_correct, r.case_count_correct) << ','
                    << percent(r.hits_wrong, r.case_count_wrong) << ','
                    << percent(r.hits_correct + r.hits_wrong, r.total()) << ",\n";
            } else {
                out << ",,,,,,," << csv_field(cell.error) << '\n';
            }
        }
    }
}

std::string format_matrix_text(const EvaluationMatrix& matrix, std::string_view title) {
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Class", "", "Case #"};
    for (auto kind : matrix.kinds) header.push_back(std::string(to_string(kind)) + " %");
    rows.push_back(header);
    for (std::size_t c = 0; c < matrix.classes.size(); ++c) {
        const std::size_t members = matrix.class_sizes[c];
        std::vector<std::string> correct{pretty_class(matrix.classes[c]), "Correct", std::to_string(members)};
        std::vector<std::string> wrong{"", "Wrong", std::to_string(matrix.dataset_size - members)};
        std::vector<std::string> overall{"", "Overall", ""};
        for (const auto& cell : matrix.cells[c]) {
            if (!cell.report) {
                correct.emplace_back("n/a");
                wrong.emplace_back("n/a");
                overall.emplace_back("n/a");
                continue;
            }
            const auto& r = *cell.report;
            correct.push_back(percent(r.hits_correct, r.case_count_correct));
            wrong.push_back(percent(r.hits_wrong, r.case_count_wrong));
            overall.push_back(percent(r.hits_correct + r.hits_wrong, r.total()));
        }
        rows.push_back(std::move(correct));
        rows.push_back(std::move(wrong));
        rows.push_back(std::move(overall));
    }
    std::string text = std::string(title) + "\n\n" + align(rows);
    std::string notes;
    for (std::size_t k = 0; k < matrix.kinds.size(); ++k) {
        if (!matrix.cells.empty() && matrix.cells[0][k].protocol == Protocol::KFold) {
            notes += std::string(to_string(matrix.kinds[k])) + ": pooled k-fold over all records\n";
        }
        for (std::size_t c = 0; c < matrix.classes.size(); ++c) {
            if (!matrix.cells[c][k].error.empty()) {
                notes += std::string(to_string(matrix.kinds[k])) + " / " + pretty_class(matrix.classes[c]) + ": " +
                         matrix.cells[c][k].error + '\n';
            }
        }
    }
    if (!notes.empty()) text += '\n' + notes;
    return text;
}

void write_grid_csv(std::ostream& out, const std::vector<SensitivityRanking>& grid) {
    const auto& columns = grid_columns();
    out << "Class,Algorithm";
    for (const auto& name : columns) out << ',' << name;
    for (const auto& name : columns) out << ",error_" << name;
    out << ",failures\n";
    for (const auto& row : grid) {
        out << csv_field(row.class_name) << ',' << csv_field(to_string(row.kind));
        std::string failures;
        for (const auto& name : columns) {
            out << ',';
            if (const int r = row.rank_of(name)) out << r;
        }
        for (const auto& name : columns) {
            out << ',';
            const auto it = std::find(row.attributes.begin(), row.attributes.end(), name);
            if (it == row.attributes.end()) continue;
            const auto i = static_cast<std::size_t>(it - row.attributes.begin());
            if (row.error[i].empty()) {
                out << row.accumulated_error[i];
            } else {
                if (!failures.empty()) failures += "; ";
                failures += name + ": " + row.error[i];
            }
        }
        out << ',' << csv_field(failures) << '\n';
    }
}

std::string format_grid_text(const std::vector<SensitivityRanking>& grid, std::string_view title) {
    const auto& columns = grid_columns();
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> header{"Class", "Algorithm"};
    header.insert(header.end(), columns.begin(), columns.end());
    rows.push_back(header);
    std::string previous;
    for (const auto& row : grid) {
        const std::string name = pretty_class(row.class_name);
        std::vector<std::string> line{name == previous ? "" : name, std::string(to_string(row.kind))};
        previous = name;
        for (const auto& column : columns) {
            const auto it = std::find(row.attributes.begin(), row.attributes.end(), column);
            if (it == row.attributes.end()) {
                line.emplace_back("");
            } else {
                const int r = row.rank_of(column);
                line.push_back(r ? std::to_string(r) : "n/a");
            }
        }
        rows.push_back(std::move(line));
    }
    return std::string(title) + "\n\n" + align(rows);
}

}  // namespace csrminer
