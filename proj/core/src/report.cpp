#include "sixlasso/report.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string_view>

#include "sixlasso/error.hpp"

namespace sixlasso::report {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(sep, start);
    out.push_back(trim(line.substr(start, pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

bool try_parse_double(std::string_view text, double& out) {
  if (text.empty()) return false;
  const std::string buf(text);
  char* end = nullptr;
  errno = 0;
  out = std::strtod(buf.c_str(), &end);
  return end == buf.c_str() + buf.size() && errno != ERANGE;
}

bool try_parse_u64(std::string_view text, std::uint64_t& out) {
  if (text.empty() || text.front() == '-') return false;
  const std::string buf(text);
  char* end = nullptr;
  errno = 0;
  out = std::strtoull(buf.c_str(), &end, 10);
  return end == buf.c_str() + buf.size() && errno != ERANGE;
}

double parse_double(std::string_view text, std::size_t line, std::size_t column) {
  double v = 0.0;
  if (!try_parse_double(text, v)) {
    throw ParseError("non-numeric value '" + std::string(text) + "'", line, column);
  }
  return v;
}

std::uint64_t parse_u64(std::string_view text, std::size_t line, std::size_t column) {
  std::uint64_t v = 0;
  if (!try_parse_u64(text, v)) {
    throw ParseError("expected a nonnegative integer, got '" + std::string(text) + "'", line,
                     column);
  }
  return v;
}

bool parse_bool(std::string_view text, std::size_t line, std::size_t column) {
  if (text == "true" || text == "1") return true;
  if (text == "false" || text == "0") return false;
  throw ParseError("expected true or false, got '" + std::string(text) + "'", line, column);
}

std::string format_plain(double v, const char* fmt) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), fmt, v);
  return buf;
}

std::string location(std::size_t line, std::size_t column) {
  if (line == 0) return {};
  std::string s = "line " + std::to_string(line);
  if (column != 0) s += ", column " + std::to_string(column);
  return s + ": ";
}

// Rows of a headerless numeric CSV. Blank lines are skipped.
std::vector<std::vector<double>> read_numeric_rows(std::istream& in) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split(line, ',');
    std::vector<double> row;
    row.reserve(fields.size());
    for (std::size_t c = 0; c < fields.size(); ++c) {
      row.push_back(parse_double(fields[c], line_no, c + 1));
    }
    if (!rows.empty() && row.size() != rows.front().size()) {
      throw ParseError("expected " + std::to_string(rows.front().size()) + " columns, found " +
                           std::to_string(row.size()),
                       line_no, 0);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open '" + path.string() + "'");
  return in;
}

}  // namespace

ParseError::ParseError(const std::string& what, std::size_t line, std::size_t column)
    : std::runtime_error(location(line, column) + what), line_(line), column_(column) {}

std::string format_real(double value) { return format_plain(value, "%.17g"); }

void write_records_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  const auto& cols = record_columns();
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << '\n';
  for (const auto& r : records) {
    out << r.trial_id << ',' << r.seed << ',' << to_string(r.estimator) << ',' << r.n << ','
        << r.p << ',' << r.s << ',' << to_string(r.link) << ',' << format_real(r.radius) << ','
        << format_real(r.metrics.direction_error) << ',' << format_real(r.metrics.raw_l2_error)
        << ',' << format_real(r.metrics.norm_beta_hat) << ','
        << format_real(r.metrics.norm_gap) << ',' << format_real(r.metrics.support_precision)
        << ',' << format_real(r.metrics.support_recall) << ','
        << format_real(r.metrics.test_accuracy) << ',' << r.iterations << ','
        << (r.converged ? "true" : "false") << ',' << format_real(r.runtime_ms) << '\n';
  }
}

std::vector<TrialRecord> read_records_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("records file is empty", 1);
  const auto header = split(line, ',');
  const auto& cols = record_columns();
  if (header.size() != cols.size() || !std::equal(header.begin(), header.end(), cols.begin())) {
    throw ParseError("unexpected records header", 1);
  }

  std::vector<TrialRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto f = split(line, ',');
    if (f.size() != cols.size()) {
      throw ParseError("expected " + std::to_string(cols.size()) + " fields, found " +
                           std::to_string(f.size()),
                       line_no);
    }
    TrialRecord r;
    r.trial_id = parse_u64(f[0], line_no, 1);
    r.seed = parse_u64(f[1], line_no, 2);
    const auto estimator = parse_estimator(f[2]);
    if (!estimator) throw ParseError("unknown estimator '" + std::string(f[2]) + "'", line_no, 3);
    r.estimator = *estimator;
    r.n = parse_u64(f[3], line_no, 4);
    r.p = parse_u64(f[4], line_no, 5);
    r.s = parse_u64(f[5], line_no, 6);
    const auto link = parse_link_kind(f[6]);
    if (!link) throw ParseError("unknown link '" + std::string(f[6]) + "'", line_no, 7);
    r.link = *link;
    r.radius = parse_double(f[7], line_no, 8);
    r.metrics.direction_error = parse_double(f[8], line_no, 9);
    r.metrics.raw_l2_error = parse_double(f[9], line_no, 10);
    r.metrics.norm_beta_hat = parse_double(f[10], line_no, 11);
    r.metrics.norm_gap = parse_double(f[11], line_no, 12);
    r.metrics.support_precision = parse_double(f[12], line_no, 13);
    r.metrics.support_recall = parse_double(f[13], line_no, 14);
    r.metrics.test_accuracy = parse_double(f[14], line_no, 15);
    r.iterations = parse_u64(f[15], line_no, 16);
    r.converged = parse_bool(f[16], line_no, 17);
    r.runtime_ms = parse_double(f[17], line_no, 18);
    records.push_back(r);
  }
  return records;
}

void write_summary_csv(std::ostream& out, const std::vector<SummaryRow>& rows) {
  out << "estimator,n,metric,q25,median,q75\n";
  for (const auto& row : rows) {
    out << to_string(row.estimator) << ',' << row.n << ',' << row.metric << ','
        << format_real(row.q25) << ',' << format_real(row.median) << ','
        << format_real(row.q75) << '\n';
  }
}

void write_direction_error_svg(std::ostream& out, const std::vector<SummaryRow>& rows) {
  constexpr double kWidth = 800.0;
  constexpr double kHeight = 500.0;
  constexpr double kLeft = 80.0;
  constexpr double kRight = 620.0;
  constexpr double kTop = 40.0;
  constexpr double kBottom = 430.0;
  static constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd"};

  std::vector<const SummaryRow*> points;
  for (const auto& row : rows) {
    if (row.metric == "direction_error") points.push_back(&row);
  }

  double n_min = 0.0;
  double n_max = 1.0;
  double y_max = 1.0;
  if (!points.empty()) {
    n_min = n_max = static_cast<double>(points.front()->n);
    y_max = 0.0;
    for (const auto* p : points) {
      n_min = std::min(n_min, static_cast<double>(p->n));
      n_max = std::max(n_max, static_cast<double>(p->n));
      y_max = std::max({y_max, p->q75, p->median});
    }
    if (n_max == n_min) {
      n_min -= 1.0;
      n_max += 1.0;
    }
    y_max = y_max > 0.0 ? 1.05 * y_max : 1.0;
  }
  const auto sx = [&](double n) { return kLeft + (n - n_min) / (n_max - n_min) * (kRight - kLeft); };
  const auto sy = [&](double v) { return kBottom - v / y_max * (kBottom - kTop); };
  const auto px = [](double v) { return format_plain(v, "%.2f"); };

  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  out << "  <rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" fill=\"white\"/>\n";

  // Axes and ticks.
  out << "  <g stroke=\"black\" stroke-width=\"1\" fill=\"none\">\n";
  out << "    <line x1=\"" << kLeft << "\" y1=\"" << kBottom << "\" x2=\"" << kRight
      << "\" y2=\"" << kBottom << "\"/>\n";
  out << "    <line x1=\"" << kLeft << "\" y1=\"" << kTop << "\" x2=\"" << kLeft << "\" y2=\""
      << kBottom << "\"/>\n";
  out << "  </g>\n";
  out << "  <g font-family=\"sans-serif\" font-size=\"12\" fill=\"black\">\n";
  constexpr int kTicks = 5;
  for (int t = 0; t <= kTicks; ++t) {
    const double n = n_min + (n_max - n_min) * t / kTicks;
    const double v = y_max * t / kTicks;
    out << "    <line x1=\"" << px(sx(n)) << "\" y1=\"" << kBottom << "\" x2=\"" << px(sx(n))
        << "\" y2=\"" << kBottom + 5 << "\" stroke=\"black\"/>\n";
    out << "    <text x=\"" << px(sx(n)) << "\" y=\"" << kBottom + 20
        << "\" text-anchor=\"middle\">" << format_plain(n, "%.0f") << "</text>\n";
    out << "    <line x1=\"" << kLeft - 5 << "\" y1=\"" << px(sy(v)) << "\" x2=\"" << kLeft
        << "\" y2=\"" << px(sy(v)) << "\" stroke=\"black\"/>\n";
    out << "    <text x=\"" << kLeft - 8 << "\" y=\"" << px(sy(v) + 4)
        << "\" text-anchor=\"end\">" << format_plain(v, "%.3g") << "</text>\n";
  }
  out << "    <text x=\"" << px(0.5 * (kLeft + kRight)) << "\" y=\"" << kHeight - 25
      << "\" text-anchor=\"middle\" font-size=\"14\">n</text>\n";
  out << "    <text x=\"20\" y=\"" << px(0.5 * (kTop + kBottom))
      << "\" text-anchor=\"middle\" font-size=\"14\" transform=\"rotate(-90 20 "
      << px(0.5 * (kTop + kBottom)) << ")\">direction error</text>\n";
  out << "  </g>\n";

  // Series, in estimator order as they appear in the summary.
  std::vector<Estimator> order;
  for (const auto* p : points) {
    if (std::find(order.begin(), order.end(), p->estimator) == order.end()) {
      order.push_back(p->estimator);
    }
  }
  for (std::size_t k = 0; k < order.size(); ++k) {
    std::vector<const SummaryRow*> series;
    for (const auto* p : points) {
      if (p->estimator == order[k]) series.push_back(p);
    }
    std::sort(series.begin(), series.end(),
              [](const SummaryRow* a, const SummaryRow* b) { return a->n < b->n; });
    const char* color = kColors[k % std::size(kColors)];

    std::string band;
    for (const auto* p : series) band += px(sx(static_cast<double>(p->n))) + "," + px(sy(p->q75)) + " ";
    for (auto it = series.rbegin(); it != series.rend(); ++it) {
      band += px(sx(static_cast<double>((*it)->n))) + "," + px(sy((*it)->q25)) + " ";
    }
    std::string line;
    for (const auto* p : series) {
      line += px(sx(static_cast<double>(p->n))) + "," + px(sy(p->median)) + " ";
    }
    if (!band.empty()) band.pop_back();
    if (!line.empty()) line.pop_back();
    out << "  <polygon points=\"" << band << "\" fill=\"" << color
        << "\" fill-opacity=\"0.15\" stroke=\"none\"/>\n";
    out << "  <polyline points=\"" << line << "\" fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"2\"/>\n";

    const double ly = kTop + 10.0 + 22.0 * static_cast<double>(k);
    out << "  <line x1=\"" << kRight + 30 << "\" y1=\"" << px(ly) << "\" x2=\"" << kRight + 60
        << "\" y2=\"" << px(ly) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    out << "  <text x=\"" << kRight + 68 << "\" y=\"" << px(ly + 4)
        << "\" font-family=\"sans-serif\" font-size=\"12\">" << to_string(order[k])
        << "</text>\n";
  }
  out << "</svg>\n";
}

Matrix read_matrix_csv(std::istream& in) {
  const auto rows = read_numeric_rows(in);
  if (rows.empty()) throw ParseError("design file has no rows");
  Matrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

Matrix read_matrix_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_matrix_csv(in);
}

void write_matrix_csv(std::ostream& out, const Matrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) out << (j ? "," : "") << format_real(m(i, j));
    out << '\n';
  }
}

Vector read_vector_csv(std::istream& in) {
  const auto rows = read_numeric_rows(in);
  if (rows.empty()) throw ParseError("vector file has no values");
  if (rows.size() == 1) return Eigen::Map<const Vector>(rows[0].data(), static_cast<Eigen::Index>(rows[0].size()));
  if (rows.front().size() != 1) {
    throw ParseError("vector file must have a single column or a single row");
  }
  Vector v(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) v(static_cast<Eigen::Index>(i)) = rows[i][0];
  return v;
}

Vector read_vector_csv(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_vector_csv(in);
}

KeyValues read_key_values(std::istream& in) {
  KeyValues kv;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    // '#' starts a comment anywhere on the line; no value needs one.
    const auto text = trim(std::string_view(line).substr(0, line.find('#')));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) throw ParseError("expected key = value", line_no);
    std::string key(trim(text.substr(0, eq)));
    std::replace(key.begin(), key.end(), '-', '_');
    if (key.empty()) throw ParseError("empty key", line_no);
    kv[key] = std::string(trim(text.substr(eq + 1)));
  }
  return kv;
}

KeyValues read_key_values(const std::filesystem::path& path) {
  auto in = open_input(path);
  return read_key_values(in);
}

void write_key_values(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& kv) {
  for (const auto& [k, v] : kv) out << k << '=' << v << '\n';
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
  std::vector<std::size_t> out;
  for (const auto field : split(text, ',')) out.push_back(parse_u64(field, 0, 0));
  return out;
}

std::vector<Estimator> parse_estimator_list(const std::string& text) {
  std::vector<Estimator> out;
  for (const auto field : split(text, ',')) {
    const auto e = parse_estimator(field);
    if (!e) throw ParseError("unknown estimator '" + std::string(field) + "'");
    out.push_back(*e);
  }
  return out;
}

namespace {

void apply_sweep_key(const std::string& key, const std::string& value, SweepSpec& spec) {
  if (key == "p") {
    spec.p = parse_u64(value, 0, 0);
  } else if (key == "s") {
    spec.s = parse_u64(value, 0, 0);
  } else if (key == "n" || key == "n_grid") {
    spec.n_grid = parse_size_list(value);
  } else if (key == "link") {
    const auto link = parse_link_kind(value);
    if (!link) throw ParseError("unknown link '" + value + "'");
    spec.link = *link;
  } else if (key == "radius_rule") {
    const auto kind = parse_radius_kind(value);
    if (!kind) throw ParseError("unknown radius rule '" + value + "'");
    spec.radius_rule = RadiusRule{*kind, 0.0};
  } else if (key == "radius") {
    spec.radius_rule = RadiusRule{RadiusKind::Explicit, parse_double(value, 0, 0)};
  } else if (key == "reps") {
    spec.reps = parse_u64(value, 0, 0);
  } else if (key == "seed" || key == "base_seed") {
    spec.base_seed = parse_u64(value, 0, 0);
  } else if (key == "signal_mode") {
    if (value == "equal") {
      spec.signal_mode = SignalMode::EqualMagnitude;
    } else if (value == "random") {
      spec.signal_mode = SignalMode::RandomMagnitude;
    } else {
      throw ParseError("signal_mode must be equal or random, got '" + value + "'");
    }
  } else if (key == "regenerate_signal") {
    spec.regenerate_signal = parse_bool(value, 0, 0);
  } else if (key == "estimators") {
    spec.estimators = parse_estimator_list(value);
  } else if (key == "test_n") {
    spec.test_n = parse_u64(value, 0, 0);
  } else if (key == "tol") {
    spec.solver.tol = parse_double(value, 0, 0);
  } else if (key == "residual_tol") {
    spec.solver.residual_tol = parse_double(value, 0, 0);
  } else if (key == "max_iter") {
    spec.solver.max_iter = parse_u64(value, 0, 0);
  } else if (key == "power_iters") {
    spec.solver.power_iters = parse_u64(value, 0, 0);
  } else if (key == "step_rule") {
    if (value == "fixed") {
      spec.solver.step_rule = StepRule::FixedLipschitz;
    } else if (value == "backtracking") {
      spec.solver.step_rule = StepRule::Backtracking;
    } else {
      throw ParseError("step_rule must be fixed or backtracking, got '" + value + "'");
    }
  } else {
    throw ParseError("unknown configuration key '" + key + "'");
  }
}

}  // namespace

void apply_sweep_config(const KeyValues& kv, SweepSpec& spec) {
  for (const auto& [key, value] : kv) {
    if (key.rfind("out", 0) == 0) continue;  // output paths belong to the caller
    try {
      apply_sweep_key(key, value, spec);
    } catch (const ParseError& e) {
      throw ParseError(key + ": " + e.what());
    }
  }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw WriteError("cannot write '" + path.string() + "'");
    out << content;
    out.flush();
    if (!out) throw WriteError("failed while writing '" + path.string() + "'");
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw WriteError("cannot replace '" + path.string() + "'");
  }
}

}  // namespace sixlasso::report
