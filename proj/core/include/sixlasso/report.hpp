#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "sixlasso/experiments.hpp"
#include "sixlasso/types.hpp"

namespace sixlasso::report {

/// Malformed input file. line/column are 1-based; 0 means "not applicable".
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t line = 0, std::size_t column = 0);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Output path could not be written.
class WriteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// 17 significant digits; round-trips every finite double.
std::string format_real(double value);

inline const std::vector<std::string>& record_columns() {
  static const std::vector<std::string> columns{
      "trial_id",       "seed",         "estimator",         "n",
      "p",              "s",            "link",              "radius",
      "direction_error", "raw_l2_error", "norm_beta_hat",     "norm_gap",
      "support_precision", "support_recall", "test_accuracy", "iterations",
      "converged",      "runtime_ms"};
  return columns;
}

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records);
std::vector<TrialRecord> read_records_csv(std::istream& in);

/// Columns: estimator, n, metric, q25, median, q75.
void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Static SVG (viewBox 0 0 800 500): one polyline of median direction error
/// against n per estimator over a shaded interquartile band. Axes are linear
/// and labeled; a legend names each estimator.
void write_direction_error_svg(std::ostream& out, const std::vector<SummaryRow>& rows);

/// Numeric CSV with no header. Rows must all have the same width.
Matrix read_matrix_csv(std::istream& in);
Matrix read_matrix_csv(const std::filesystem::path& path);
void write_matrix_csv(std::ostream& out, const Matrix& m);

/// A single column, or a single row, of numbers.
Vector read_vector_csv(std::istream& in);
Vector read_vector_csv(const std::filesystem::path& path);

/// Flat "key = value" document. '#' starts a comment that runs to the end of
/// the line; blank lines are ignored and dashes in keys are normalized to underscores.
using KeyValues = std::map<std::string, std::string>;
KeyValues read_key_values(std::istream& in);
KeyValues read_key_values(const std::filesystem::path& path);
void write_key_values(std::ostream& out, const std::vector<std::pair<std::string, std::string>>& kv);

/// Applies recognized keys to `spec`; unknown keys raise ParseError.
void apply_sweep_config(const KeyValues& kv, SweepSpec& spec);

/// Writes `content` to a sibling temporary file and renames it over `path`.
/// Throws WriteError.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::vector<std::size_t> parse_size_list(const std::string& text);
std::vector<Estimator> parse_estimator_list(const std::string& text);

}  // namespace sixlasso::report
