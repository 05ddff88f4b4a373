#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "csrminer/evaluation.hpp"
#include "csrminer/sensitivity.hpp"

namespace csrminer {

/// Long format, one line per (class, kind) cell with the raw counts.
void write_matrix_csv(std::ostream& out, const EvaluationMatrix& matrix);

/// Class / row / Case # / one column per kind; three rows (Correct, Wrong,
/// Overall) per class. Failed cells print "n/a".
std::string format_matrix_text(const EvaluationMatrix& matrix, std::string_view title);

/// Class, Algorithm, the eight attributes, Note (hybrid leaf rank), then the
/// accumulated errors in the same order.
void write_grid_csv(std::ostream& out, const std::vector<SensitivityRanking>& grid);
std::string format_grid_text(const std::vector<SensitivityRanking>& grid, std::string_view title);

}  // namespace csrminer
