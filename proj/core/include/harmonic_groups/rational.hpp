#pragma once

// Exact rational scalars and small dense matrices over them.

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hg {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using RationalVector = std::vector<Rational>;

/// Parses "p", "-p" or "p/q". Throws ValidationError on anything else or q == 0.
Rational parse_rational(std::string_view text);

/// Canonical text form: "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& value);

double to_double(const Rational& value);
std::vector<double> to_double(const RationalVector& values);

Rational abs(const Rational& value);

/// max_i |v_i|, zero for the empty vector.
Rational sup_norm(const RationalVector& v);

/// sum_i v_i^2.
Rational squared_norm(const RationalVector& v);

RationalVector operator+(const RationalVector& a, const RationalVector& b);
RationalVector operator-(const RationalVector& a, const RationalVector& b);

/// Row-major dense matrix. Zero-sized dimensions are allowed (rank-0 Abelianizations).
class RationalMatrix {
 public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols);
  /// Builds from nested rows; all rows must share a length.
  explicit RationalMatrix(const std::vector<RationalVector>& rows, std::size_t cols_if_empty = 0);

  static RationalMatrix identity(std::size_t n);
  static RationalMatrix from_integers(const std::vector<std::vector<long long>>& rows,
                                      std::size_t cols_if_empty = 0);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  RationalVector row(std::size_t r) const;
  RationalVector column(std::size_t c) const;

  RationalMatrix transpose() const;
  RationalVector operator*(const RationalVector& v) const;
  RationalMatrix operator*(const RationalMatrix& other) const;
  RationalMatrix operator-(const RationalMatrix& other) const;

  bool operator==(const RationalMatrix& other) const = default;

  /// Induced sup-norm operator norm: max row l1 sum.
  Rational operator_norm_inf() const;
  /// max_{ij} |a_ij|.
  Rational max_abs() const;

  std::vector<std::vector<double>> to_double() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

struct RowEchelon {
  RationalMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;   // pivot column of each nonzero row
};

RowEchelon row_reduce(RationalMatrix m);
std::size_t rank(const RationalMatrix& m);

/// Basis of {v : m v = 0}, one vector per free column.
std::vector<RationalVector> null_space(const RationalMatrix& m);

/// nullopt when m is singular or not square.
std::optional<RationalMatrix> inverse(const RationalMatrix& m);

/// Solves a X = b for X (a is n x k, b is n x m). nullopt when inconsistent.
/// Free variables are set to zero.
std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b);

}  // namespace hg
