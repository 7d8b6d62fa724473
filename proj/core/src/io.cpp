#include "vrm/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace vrm {

std::string format_double(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

namespace {

bool parse_cell(const std::string& cell, double* out) {
  const char* first = cell.data();
  const char* last = cell.data() + cell.size();
  while (first < last && (*first == ' ' || *first == '\t')) first++;
  const char* end = last;
  while (end > first && (*(end - 1) == ' ' || *(end - 1) == '\t' || *(end - 1) == '\r')) end--;
  if (first == end) return false;
  const auto [ptr, ec] = std::from_chars(first, end, *out);
  return ec == std::errc() && ptr == end;
}

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  cells.push_back(cur);
  return cells;
}

}  // namespace

Eigen::MatrixXd load_points_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_points_csv: cannot open " + path);

  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  bool maybe_header = true;
  std::size_t width = 0;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    std::vector<double> row(cells.size());
    bool ok = true;
    std::size_t bad_col = 0;
    for (std::size_t c = 0; c < cells.size(); ++c) {
      if (!parse_cell(cells[c], &row[c])) {
        ok = false;
        bad_col = c;
        break;
      }
    }
    if (!ok) {
      if (maybe_header && rows.empty()) {
        maybe_header = false;  // non-numeric first row: header, skip it
        continue;
      }
      throw std::runtime_error("load_points_csv: non-numeric cell at row " +
                               std::to_string(lineno) + ", column " + std::to_string(bad_col + 1));
    }
    maybe_header = false;
    if (width == 0) width = row.size();
    if (row.size() != width) {
      throw std::runtime_error("load_points_csv: ragged row " + std::to_string(lineno) +
                               " (expected " + std::to_string(width) + " columns, got " +
                               std::to_string(row.size()) + ")");
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::runtime_error("load_points_csv: no data rows in " + path);

  Eigen::MatrixXd m(rows.size(), width);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) m(i, j) = rows[i][j];
  }
  return m;
}

Eigen::MatrixXd load_components_csv(const std::string& path, int n_hint) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("load_components_csv: cannot open " + path);

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("load_components_csv: empty file");
  {
    auto header = split_line(line);
    for (auto& h : header) {
      while (!h.empty() && (h.back() == '\r' || h.back() == ' ')) h.pop_back();
    }
    if (header.size() != 3 || header[0] != "component" || header[1] != "atom" ||
        header[2] != "prob") {
      throw std::runtime_error("load_components_csv: expected header component,atom,prob");
    }
  }

  std::map<std::pair<int, int>, double> triplets;
  int max_comp = -1, max_atom = -1;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    lineno++;
    if (line.empty() || line == "\r") continue;
    const auto cells = split_line(line);
    double c = 0, a = 0, p = 0;
    if (cells.size() != 3 || !parse_cell(cells[0], &c) || !parse_cell(cells[1], &a) ||
        !parse_cell(cells[2], &p)) {
      throw std::runtime_error("load_components_csv: bad row " + std::to_string(lineno));
    }
    const int ci = static_cast<int>(c), ai = static_cast<int>(a);
    if (ci < 0 || ai < 0) throw std::runtime_error("load_components_csv: negative index");
    triplets[{ci, ai}] = p;
    max_comp = std::max(max_comp, ci);
    max_atom = std::max(max_atom, ai);
  }
  if (max_comp < 0) throw std::runtime_error("load_components_csv: no data rows");

  const int n = std::max(n_hint, max_atom + 1);
  Eigen::MatrixXd raw = Eigen::MatrixXd::Zero(max_comp + 1, n);
  for (const auto& [key, p] : triplets) raw(key.first, key.second) = p;
  return raw;
}

void write_ledger_csv(const std::string& path, const RegretLedger& ledger) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_ledger_csv: cannot open " + path);
  const int k = ledger.weights.empty() ? 0 : static_cast<int>(ledger.weights.front().size());
  out << "t,cost_est,cost_true";
  for (int j = 1; j <= k; ++j) out << ",w_" << j;
  out << "\n";
  for (std::size_t t = 0; t < ledger.rounds(); ++t) {
    out << (t + 1) << "," << format_double(ledger.cost_est[t]) << ",";
    if (!std::isnan(ledger.cost_true[t])) out << format_double(ledger.cost_true[t]);
    for (int j = 0; j < k; ++j) out << "," << format_double(ledger.weights[t](j));
    out << "\n";
  }
}

void write_run_csv(const std::string& path, const RunResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_run_csv: cannot open " + path);
  out << "iter,metric,sampler,seed\n";
  for (std::size_t i = 0; i < result.iters.size(); ++i) {
    out << result.iters[i] << "," << format_double(result.metric[i]) << "," << result.sampler
        << "," << result.seed << "\n";
  }
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("write_text_file: cannot open " + path);
  out << content;
}

std::string resolve_output_dir(const std::string& flag_value) {
  std::string dir = flag_value;
  if (dir.empty()) {
    if (const char* env = std::getenv("VRM_OUT_DIR")) dir = env;
  }
  if (dir.empty()) dir = ".";
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vrm
