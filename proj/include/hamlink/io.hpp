#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace hamlink {

/// Raised for filesystem problems; the CLI maps it to exit status 3.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// 17 significant digits: enough to round-trip any double exactly, and the
/// serialization used by every persisted artifact.
inline std::string format_double17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open for writing: " + path);
  out << content;
  if (!out) throw IoError("write failed: " + path);
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open for reading: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// Sequence set format: one sequence per line, M comma-separated decimals,
/// '.' decimal separator, LF line endings.
inline std::string sequences_to_csv(const std::vector<std::vector<double>>& seqs) {
  std::string out;
  for (const auto& s : seqs) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      if (i) out += ',';
      out += format_double17(s[i]);
    }
    out += '\n';
  }
  return out;
}

inline std::vector<std::vector<double>> sequences_from_csv(const std::string& text) {
  std::vector<std::vector<double>> seqs;
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) {
      std::size_t pos = 0;
      const double v = std::stod(cell, &pos);
      row.push_back(v);
    }
    seqs.push_back(std::move(row));
  }
  return seqs;
}

/// Eigenpair dump: one row per pair, columns eigenvalue, v1..vM.
inline std::string eigenpairs_to_csv(const std::vector<double>& eigenvalues,
                                     const std::vector<std::vector<double>>& eigenvectors) {
  std::string out;
  for (std::size_t k = 0; k < eigenvalues.size(); ++k) {
    out += format_double17(eigenvalues[k]);
    for (double x : eigenvectors[k]) {
      out += ',';
      out += format_double17(x);
    }
    out += '\n';
  }
  return out;
}

inline std::string basis_to_csv(const std::vector<std::vector<double>>& basis) {
  std::string out;
  for (const auto& v : basis) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) out += ',';
      out += format_double17(v[i]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace hamlink
