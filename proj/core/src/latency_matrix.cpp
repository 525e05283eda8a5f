#include "whs/latency_matrix.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "whs/errors.hpp"

namespace whs {

namespace {

constexpr double kDiagonalTol = 1e-9;

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

double parse_cell(const std::string& cell, int row, int col) {
  const char* begin = cell.c_str();
  char* end = nullptr;
  double v = std::strtod(begin, &end);
  if (end == begin || *end != '\0') {
    throw MalformedInput("non-numeric cell '" + cell + "' at row " +
                         std::to_string(row) + ", col " + std::to_string(col));
  }
  return v;
}

/// Shortest decimal digits that round-trip the double.
std::string format_double(double v) {
  char buf[64];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    if (std::strtod(buf, nullptr) == v) break;
  }
  return buf;
}

}  // namespace

LatencyMatrix::LatencyMatrix(std::vector<std::vector<double>> entries,
                             std::vector<std::string> labels) {
  const int n = static_cast<int>(entries.size());
  if (n < 4) {
    throw MalformedInput("latency matrix needs n >= 4 replicas, got " +
                         std::to_string(n));
  }
  if (!labels.empty() && static_cast<int>(labels.size()) != n) {
    throw MalformedInput("label count does not match matrix size");
  }
  entries_.resize(static_cast<std::size_t>(n) * n);
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(entries[i].size()) != n) {
      throw MalformedInput("matrix is not square at row " + std::to_string(i));
    }
    for (int j = 0; j < n; ++j) {
      double v = entries[i][j];
      if (!std::isfinite(v)) {
        throw MalformedInput("non-finite entry at (" + std::to_string(i) +
                             ", " + std::to_string(j) + ")");
      }
      if (v < 0.0) {
        throw MalformedInput("negative entry at (" + std::to_string(i) + ", " +
                             std::to_string(j) + ")");
      }
      if (i == j) {
        if (std::abs(v) > kDiagonalTol) {
          throw MalformedInput("nonzero diagonal at index " +
                               std::to_string(i));
        }
        v = 0.0;
      }
      entries_[static_cast<std::size_t>(i) * n + j] = v;
    }
  }
  n_ = n;
  labels_ = std::move(labels);
}

double LatencyMatrix::row_sum(int i) const {
  double s = 0.0;
  for (int j = 0; j < n_; ++j) s += entry(i, j);
  return s;
}

namespace {

LatencyMatrix load_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw MalformedInput("empty CSV input");
  std::vector<std::string> header = split_csv_line(line);
  // Tolerate a leading corner cell before the labels.
  if (!header.empty() && (header.front().empty() || header.front() == "region")) {
    header.erase(header.begin());
  }
  if (header.empty()) throw MalformedInput("CSV header has no labels");
  const int n = static_cast<int>(header.size());

  std::vector<std::vector<double>> rows;
  int r = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    std::vector<std::string> cells = split_csv_line(line);
    if (static_cast<int>(cells.size()) != n + 1) {
      throw MalformedInput("row " + std::to_string(r) + " has " +
                           std::to_string(cells.size() - 1) +
                           " cells, expected " + std::to_string(n));
    }
    std::vector<double> row(n);
    for (int c = 0; c < n; ++c) {
      const std::string& cell = cells[c + 1];
      if (cell.empty()) {
        if (c != r) {
          throw MalformedInput("blank off-diagonal cell at row " +
                               std::to_string(r));
        }
        row[c] = 0.0;
      } else {
        row[c] = parse_cell(cell, r, c);
      }
    }
    rows.push_back(std::move(row));
    ++r;
  }
  if (r != n) {
    throw MalformedInput("matrix is not square: " + std::to_string(n) +
                         " labels, " + std::to_string(r) + " rows");
  }
  return LatencyMatrix(std::move(rows), std::move(header));
}

LatencyMatrix load_json(std::istream& in) {
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw MalformedInput(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("matrix")) {
    throw MalformedInput("JSON matrix must be an object with a 'matrix' field");
  }
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    for (const auto& l : j.at("labels")) labels.push_back(l.get<std::string>());
  }
  std::vector<std::vector<double>> rows;
  for (const auto& row : j.at("matrix")) {
    rows.push_back(row.get<std::vector<double>>());
  }
  return LatencyMatrix(std::move(rows), std::move(labels));
}

}  // namespace

LatencyMatrix load_latency_matrix(std::istream& in, MatrixFormat format) {
  return format == MatrixFormat::Csv ? load_csv(in) : load_json(in);
}

LatencyMatrix load_latency_matrix_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoFailure("cannot open topology file: " + path);
  MatrixFormat format = MatrixFormat::Csv;
  if (path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0) {
    format = MatrixFormat::Json;
  }
  return load_latency_matrix(in, format);
}

void save_latency_matrix(const LatencyMatrix& m, std::ostream& out,
                         MatrixFormat format) {
  const int n = m.n();
  std::vector<std::string> labels = m.labels();
  if (labels.empty()) {
    for (int i = 0; i < n; ++i) labels.push_back("r" + std::to_string(i));
  }
  if (format == MatrixFormat::Csv) {
    for (int j = 0; j < n; ++j) out << ',' << labels[j];
    out << '\n';
    for (int i = 0; i < n; ++i) {
      out << labels[i];
      for (int j = 0; j < n; ++j) out << ',' << format_double(m.entry(i, j));
      out << '\n';
    }
  } else {
    nlohmann::json j;
    j["labels"] = labels;
    std::vector<std::vector<double>> rows(n, std::vector<double>(n));
    for (int i = 0; i < n; ++i)
      for (int k = 0; k < n; ++k) rows[i][k] = m.entry(i, k);
    j["matrix"] = rows;
    out << j.dump(2) << '\n';
  }
}

LatencyMatrix generate_random_topology(int n, double max_latency,
                                       SeededRng& rng) {
  if (n < 4) throw InvalidParameter("random topology needs n >= 4");
  if (max_latency <= 0.0) throw InvalidParameter("max_latency must be > 0");
  std::vector<std::vector<double>> rows(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i != j) rows[i][j] = rng.uniform(0.0, max_latency);
    }
  }
  return LatencyMatrix(std::move(rows));
}

}  // namespace whs
