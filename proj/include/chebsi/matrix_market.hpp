#pragma once

#include <algorithm>
#include <cctype>
#include <complex>
#include <cstddef>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "chebsi/dense_matrix.hpp"
#include "chebsi/trace.hpp"

namespace chebsi {

/// Parse failure with the 1-based source line that caused it.
class MmParseError : public std::runtime_error {
 public:
  MmParseError(const std::string& what, int line)
      : std::runtime_error("matrix market: " + what + " (line " +
                           std::to_string(line) + ")"),
        line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

enum class MmSymmetry { general, symmetric, hermitian };

namespace detail {

struct MmHeader {
  bool coordinate = true;
  bool complex_field = false;
  MmSymmetry symmetry = MmSymmetry::general;
};

inline std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return std::tolower(c); });
  return s;
}

inline MmHeader parse_mm_header(const std::string& line) {
  std::istringstream ss(line);
  std::string banner, object, format, field, symmetry;
  ss >> banner >> object >> format >> field >> symmetry;
  if (lower(banner) != "%%matrixmarket")
    throw MmParseError("missing %%MatrixMarket banner", 1);
  if (lower(object) != "matrix")
    throw MmParseError("unsupported object '" + object + "'", 1);
  MmHeader h;
  const std::string f = lower(format);
  if (f == "coordinate") h.coordinate = true;
  else if (f == "array") h.coordinate = false;
  else throw MmParseError("unsupported format '" + format + "'", 1);
  const std::string fl = lower(field);
  if (fl == "real" || fl == "integer") h.complex_field = false;
  else if (fl == "complex") h.complex_field = true;
  else throw MmParseError("unsupported field '" + field + "'", 1);
  const std::string sy = lower(symmetry);
  if (sy == "general") h.symmetry = MmSymmetry::general;
  else if (sy == "symmetric") h.symmetry = MmSymmetry::symmetric;
  else if (sy == "hermitian") h.symmetry = MmSymmetry::hermitian;
  else throw MmParseError("unsupported symmetry '" + symmetry + "'", 1);
  return h;
}

inline bool next_content_line(std::istream& in, std::string& line,
                              int& lineno) {
  while (std::getline(in, line)) {
    ++lineno;
    std::size_t i = 0;
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i])))
      ++i;
    if (i == line.size()) continue;    // blank
    if (line[i] == '%') continue;      // comment
    return true;
  }
  return false;
}

inline double parse_double(std::istringstream& ss, int lineno,
                           const char* what) {
  double v = 0.0;
  if (!(ss >> v)) throw MmParseError(std::string("expected ") + what, lineno);
  return v;
}

inline long parse_index(std::istringstream& ss, int lineno, const char* what) {
  long v = 0;
  if (!(ss >> v)) throw MmParseError(std::string("expected ") + what, lineno);
  return v;
}

template <Scalar T>
T parse_value(std::istringstream& ss, bool complex_field, int lineno) {
  const double re = parse_double(ss, lineno, "numeric value");
  double im = 0.0;
  if (complex_field) im = parse_double(ss, lineno, "imaginary part");
  if constexpr (is_complex_v<T>) {
    return T(re, im);
  } else {
    (void)im;
    return re;
  }
}

}  // namespace detail

/// Read a dense matrix from Matrix Market text (coordinate or array; real,
/// integer or complex field; general, symmetric or hermitian).  Symmetric
/// and hermitian storage is expanded to full.  Reading complex data into a
/// real matrix is a parse error.
template <Scalar T>
DenseMatrix<T> read_matrix_market(std::istream& in) {
  int lineno = 0;
  std::string line;
  if (!std::getline(in, line)) throw MmParseError("empty input", 1);
  lineno = 1;
  const detail::MmHeader h = detail::parse_mm_header(line);
  if (h.complex_field && !is_complex_v<T>)
    throw MmParseError("complex data cannot load into a real matrix", 1);
  if (h.symmetry == MmSymmetry::hermitian && !h.complex_field)
    throw MmParseError("hermitian symmetry requires a complex field", 1);

  if (!detail::next_content_line(in, line, lineno))
    throw MmParseError("missing size line", lineno + 1);
  std::istringstream ss(line);
  const long rows = detail::parse_index(ss, lineno, "row count");
  const long cols = detail::parse_index(ss, lineno, "column count");
  if (rows < 0 || cols < 0)
    throw MmParseError("negative dimension", lineno);
  if (h.symmetry != MmSymmetry::general && rows != cols)
    throw MmParseError("symmetric storage requires a square matrix", lineno);
  DenseMatrix<T> A(static_cast<std::size_t>(rows),
                   static_cast<std::size_t>(cols));

  if (h.coordinate) {
    const long nnz = detail::parse_index(ss, lineno, "nonzero count");
    for (long e = 0; e < nnz; ++e) {
      if (!detail::next_content_line(in, line, lineno))
        throw MmParseError("unexpected end of file inside entries", lineno);
      std::istringstream es(line);
      const long i = detail::parse_index(es, lineno, "row index");
      const long j = detail::parse_index(es, lineno, "column index");
      if (i < 1 || i > rows || j < 1 || j > cols)
        throw MmParseError("index out of range", lineno);
      const T v = detail::parse_value<T>(es, h.complex_field, lineno);
      A(static_cast<std::size_t>(i - 1), static_cast<std::size_t>(j - 1)) = v;
      if (h.symmetry != MmSymmetry::general && i != j) {
        const T mirrored =
            h.symmetry == MmSymmetry::hermitian ? conj_if(v) : v;
        A(static_cast<std::size_t>(j - 1), static_cast<std::size_t>(i - 1)) =
            mirrored;
      }
    }
  } else {
    auto read_value = [&]() -> T {
      if (!detail::next_content_line(in, line, lineno))
        throw MmParseError("unexpected end of file inside entries", lineno);
      std::istringstream es(line);
      return detail::parse_value<T>(es, h.complex_field, lineno);
    };
    if (h.symmetry == MmSymmetry::general) {
      for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i)
          A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
              read_value();
    } else {
      // Packed lower triangle, column major.
      for (long j = 0; j < cols; ++j) {
        for (long i = j; i < rows; ++i) {
          const T v = read_value();
          A(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
          if (i != j)
            A(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                h.symmetry == MmSymmetry::hermitian ? conj_if(v) : v;
        }
      }
    }
  }
  return A;
}

template <Scalar T>
DenseMatrix<T> read_matrix_market_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MmParseError("cannot open '" + path + "'", 0);
  return read_matrix_market<T>(in);
}

/// Peek at the header to learn whether the file stores complex data.
inline bool matrix_market_is_complex(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MmParseError("cannot open '" + path + "'", 0);
  std::string line;
  if (!std::getline(in, line)) throw MmParseError("empty input", 1);
  return detail::parse_mm_header(line).complex_field;
}

namespace detail {

inline void write_mm_value(std::ostream& os, double v) { os << fmt_g17(v); }
inline void write_mm_value(std::ostream& os, const std::complex<double>& v) {
  os << fmt_g17(v.real()) << ' ' << fmt_g17(v.imag());
}

}  // namespace detail

/// Write in coordinate format with 17 significant digits (lossless for
/// binary64).  Symmetric and hermitian matrices store the lower triangle.
/// A real matrix under hermitian symmetry is written as symmetric, which is
/// the Matrix Market convention.
template <Scalar T>
void write_matrix_market(std::ostream& os, const DenseMatrix<T>& A,
                         MmSymmetry sym = MmSymmetry::general) {
  if (!is_complex_v<T> && sym == MmSymmetry::hermitian)
    sym = MmSymmetry::symmetric;
  const char* field = is_complex_v<T> ? "complex" : "real";
  const char* symname = sym == MmSymmetry::general     ? "general"
                        : sym == MmSymmetry::symmetric ? "symmetric"
                                                       : "hermitian";
  const std::size_t m = A.rows(), n = A.cols();
  os << "%%MatrixMarket matrix coordinate " << field << ' ' << symname
     << '\n';
  std::size_t nnz = 0;
  if (sym == MmSymmetry::general) {
    nnz = m * n;
  } else {
    nnz = n * (n + 1) / 2;
  }
  os << m << ' ' << n << ' ' << nnz << '\n';
  if (sym == MmSymmetry::general) {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < m; ++i) {
        os << (i + 1) << ' ' << (j + 1) << ' ';
        detail::write_mm_value(os, A(i, j));
        os << '\n';
      }
  } else {
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = j; i < m; ++i) {
        os << (i + 1) << ' ' << (j + 1) << ' ';
        detail::write_mm_value(os, A(i, j));
        os << '\n';
      }
  }
}

template <Scalar T>
void write_matrix_market_file(const std::string& path, const DenseMatrix<T>& A,
                              MmSymmetry sym = MmSymmetry::general) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write '" + path + "'");
  write_matrix_market(os, A, sym);
}

}  // namespace chebsi
