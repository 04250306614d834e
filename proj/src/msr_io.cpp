#include "dcomp/msr_io.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "dcomp/error.hpp"

namespace dcomp {
namespace {

constexpr const char* kMagic = "# dcomp-msr 1";

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

int parse_int(const std::string& text) {
  int v = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) throw ConfigError("expected an integer, got '" + text + "'");
  return v;
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return {buf, ptr};
}

double parse_double(const std::string& text) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* first = t.data();
  const auto* last = t.data() + t.size();
  if (!t.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || t.empty()) throw ConfigError("expected a number, got '" + text + "'");
  return v;
}

Complex parse_complex(const std::string& text) {
  const std::string t = trim(text);
  if (t.size() < 2 || t.back() != 'i') throw ConfigError("expected a complex literal re+imi, got '" + text + "'");
  // The imaginary part starts at the last sign that is not an exponent sign.
  std::size_t split = std::string::npos;
  for (std::size_t p = t.size() - 1; p > 0; --p) {
    if ((t[p] == '+' || t[p] == '-') && t[p - 1] != 'e' && t[p - 1] != 'E') {
      split = p;
      break;
    }
  }
  if (split == std::string::npos) throw ConfigError("expected a complex literal re+imi, got '" + text + "'");
  // "re+-im" is accepted as well
  const std::size_t re_end = (split > 1 && t[split - 1] == '+') ? split - 1 : split;
  return {parse_double(t.substr(0, re_end)), parse_double(t.substr(split, t.size() - split - 1))};
}

std::string format_complex(Complex z) {
  std::string s = format_double(z.real());
  const std::string im = format_double(z.imag());
  if (im.front() != '-') s += '+';
  return s + im + 'i';
}

namespace {

std::vector<Complex> parse_row(const std::string& line) {
  std::vector<Complex> row;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) row.push_back(parse_complex(cell));
  return row;
}

void write_rows(std::ostream& out, const CMatrix& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    std::string line;
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) line += ',';
      line += format_complex(m(i, j));
    }
    out << line << '\n';
  }
}

}  // namespace

void write_msr(std::ostream& out, const FarFieldMatrix& F) {
  F.validate();
  out << kMagic << '\n';
  out << "# k=" << format_double(F.k) << '\n';
  out << "# alpha=" << format_double(F.grid.alpha) << '\n';
  out << "# L=" << F.grid.L << '\n';
  out << "# M=" << F.grid.M << '\n';
  out << "# delta=" << format_double(F.noise_level) << '\n';
  for (const auto& [key, value] : F.metadata) out << "# " << key << '=' << value << '\n';
  write_rows(out, F.entries);
}

void write_msr(const std::string& path, const FarFieldMatrix& F) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_msr(out, F);
  if (!out) throw ConfigError("write to '" + path + "' failed");
}

void write_complex_rows(const std::string& path, const CMatrix& rows) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  write_rows(out, rows);
}

CMatrix read_complex_rows(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  std::vector<std::vector<Complex>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    rows.push_back(parse_row(t));
    if (rows.back().size() != rows.front().size()) throw ConfigError("ragged rows in '" + path + "'");
  }
  CMatrix m(Eigen::Index(rows.size()), rows.empty() ? 0 : Eigen::Index(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(Eigen::Index(i), Eigen::Index(j)) = rows[i][j];
  return m;
}

FarFieldMatrix read_msr(std::istream& in) {
  std::string line;
  FarFieldMatrix F;
  std::map<std::string, std::string> header;
  std::vector<std::vector<Complex>> rows;
  while (std::getline(in, line)) {
    const std::string t = trim(line);
    if (t.empty()) continue;
    if (t[0] == '#') {
      const auto eq = t.find('=');
      if (eq == std::string::npos) continue;
      header[trim(t.substr(1, eq - 1))] = trim(t.substr(eq + 1));
      continue;
    }
    rows.push_back(parse_row(t));
  }
  for (const char* key : {"k", "alpha", "L", "M", "delta"}) {
    if (!header.count(key)) throw ConfigError(std::string("far-field file lacks '# ") + key + "='");
  }
  F.k = parse_double(header["k"]);
  F.noise_level = parse_double(header["delta"]);
  try {
    F.grid = make_grid(parse_double(header["alpha"]), parse_int(header["L"]), parse_int(header["M"]));
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("far-field file: ") + e.what());
  }
  for (auto& [key, value] : header) {
    if (key != "k" && key != "alpha" && key != "L" && key != "M" && key != "delta") F.metadata[key] = value;
  }
  const auto n = static_cast<Eigen::Index>(rows.size());
  F.entries.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (static_cast<Eigen::Index>(rows[std::size_t(i)].size()) != n) throw ConfigError("far-field data is not square");
    for (Eigen::Index j = 0; j < n; ++j) F.entries(i, j) = rows[std::size_t(i)][std::size_t(j)];
  }
  F.validate();
  return F;
}

FarFieldMatrix read_msr(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open '" + path + "'");
  return read_msr(in);
}

}  // namespace dcomp
