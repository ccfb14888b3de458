#include "ballproj/io.hpp"

#include <cctype>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ballproj {

namespace {

[[noreturn]] void fail(const std::string& path, std::size_t line,
                       const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(line) + ": " + message);
}

// Round-trip-exact double formatting (17 significant digits).
void print_double(std::ostream& os, double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  os << buf;
}

}  // namespace

SparseMatrix load_matrix_market(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  std::size_t lineno = 0;

  if (!std::getline(in, line)) fail(path, 1, "empty file");
  ++lineno;
  std::istringstream header(line);
  std::string banner, object, format, field, symmetry;
  header >> banner >> object >> format >> field >> symmetry;
  if (banner != "%%MatrixMarket" || object != "matrix" ||
      format != "coordinate" || field != "real" || symmetry != "general") {
    fail(path, lineno,
         "expected '%%MatrixMarket matrix coordinate real general' header");
  }

  std::size_t rows = 0, cols = 0, nnz = 0;
  bool have_sizes = false;
  std::vector<std::tuple<std::size_t, std::size_t, double>> triplets;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '%') continue;
    std::istringstream ls(line);
    if (!have_sizes) {
      if (!(ls >> rows >> cols >> nnz)) fail(path, lineno, "bad size line");
      have_sizes = true;
      triplets.reserve(nnz);
      continue;
    }
    std::size_t r, c;
    double v;
    if (!(ls >> r >> c >> v)) fail(path, lineno, "bad coordinate entry");
    if (r < 1 || r > rows || c < 1 || c > cols) {
      fail(path, lineno, "coordinate out of range");
    }
    triplets.emplace_back(r - 1, c - 1, v);
  }
  if (!have_sizes) fail(path, lineno, "missing size line");
  if (triplets.size() != nnz) {
    fail(path, lineno,
         "entry count " + std::to_string(triplets.size()) +
             " does not match declared " + std::to_string(nnz));
  }
  try {
    return SparseMatrix::from_triplets(rows, cols, std::move(triplets));
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

void save_matrix_market(const SparseMatrix& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "%%MatrixMarket matrix coordinate real general\n";
  out << a.rows() << " " << a.cols() << " " << a.nonzeros() << "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const auto cols = a.row_cols(i);
    const auto vals = a.row_values(i);
    for (std::size_t k = 0; k < cols.size(); ++k) {
      out << (i + 1) << " " << (cols[k] + 1) << " ";
      print_double(out, vals[k]);
      out << "\n";
    }
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

std::vector<double> load_vector_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<double> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    // Trim whitespace; skip blanks.
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    std::size_t e = line.find_last_not_of(" \t\r");
    const char* first = line.data() + b;
    const char* last = line.data() + e + 1;
    double v;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last) {
      fail(path, lineno, "expected a single numeric value, got '" + line + "'");
    }
    out.push_back(v);
  }
  return out;
}

void save_vector_csv(std::span<const double> v, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (double x : v) {
    print_double(out, x);
    out << "\n";
  }
  if (!out) throw std::runtime_error("write failed for " + path);
}

}  // namespace ballproj
