#include "harmonic_groups/rational.hpp"

#include <algorithm>
#include <cctype>

#include "harmonic_groups/errors.hpp"

namespace hg {

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  if (text.empty()) throw ValidationError("empty integer in rational '" + std::string(whole) + "'");
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) throw ValidationError("malformed rational '" + std::string(whole) + "'");
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ValidationError("malformed rational '" + std::string(whole) + "'");
    }
  }
  Integer value(std::string(text.substr(start)));
  return text[0] == '-' ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw ValidationError("zero denominator in rational '" + std::string(text) + "'");
  return Rational(num, den);
}

std::string to_string(const Rational& value) {
  const Integer num = boost::multiprecision::numerator(value);
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::vector<double> to_double(const RationalVector& values) {
  std::vector<double> out;
  out.reserve(values.size());
  for (const auto& v : values) out.push_back(to_double(v));
  return out;
}

Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

Rational sup_norm(const RationalVector& v) {
  Rational best = 0;
  for (const auto& x : v) best = std::max(best, abs(x));
  return best;
}

Rational squared_norm(const RationalVector& v) {
  Rational total = 0;
  for (const auto& x : v) total += x * x;
  return total;
}

RationalVector operator+(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw TypeError("vector length mismatch in addition");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] + b[i];
  return out;
}

RationalVector operator-(const RationalVector& a, const RationalVector& b) {
  if (a.size() != b.size()) throw TypeError("vector length mismatch in subtraction");
  RationalVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] - b[i];
  return out;
}

RationalMatrix::RationalMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols) {}

RationalMatrix::RationalMatrix(const std::vector<RationalVector>& rows, std::size_t cols_if_empty)
    : rows_(rows.size()), cols_(rows.empty() ? cols_if_empty : rows.front().size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw TypeError("ragged matrix rows");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

RationalMatrix RationalMatrix::identity(std::size_t n) {
  RationalMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

RationalMatrix RationalMatrix::from_integers(const std::vector<std::vector<long long>>& rows,
                                             std::size_t cols_if_empty) {
  std::vector<RationalVector> converted;
  converted.reserve(rows.size());
  for (const auto& r : rows) {
    RationalVector row;
    row.reserve(r.size());
    for (long long v : r) row.emplace_back(v);
    converted.push_back(std::move(row));
  }
  return RationalMatrix(converted, cols_if_empty);
}

RationalVector RationalMatrix::row(std::size_t r) const {
  return RationalVector(data_.begin() + static_cast<std::ptrdiff_t>(r * cols_),
                        data_.begin() + static_cast<std::ptrdiff_t>((r + 1) * cols_));
}

RationalVector RationalMatrix::column(std::size_t c) const {
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

RationalMatrix RationalMatrix::transpose() const {
  RationalMatrix t(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

RationalVector RationalMatrix::operator*(const RationalVector& v) const {
  if (v.size() != cols_) throw TypeError("matrix-vector shape mismatch");
  RationalVector out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc += (*this)(r, c) * v[c];
    out[r] = acc;
  }
  return out;
}

RationalMatrix RationalMatrix::operator*(const RationalMatrix& other) const {
  if (cols_ != other.rows_) throw TypeError("matrix-matrix shape mismatch");
  RationalMatrix out(rows_, other.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      if ((*this)(r, k) == 0) continue;
      for (std::size_t c = 0; c < other.cols_; ++c) out(r, c) += (*this)(r, k) * other(k, c);
    }
  return out;
}

RationalMatrix RationalMatrix::operator-(const RationalMatrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw TypeError("matrix shape mismatch");
  RationalMatrix out(rows_, cols_);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = data_[i] - other.data_[i];
  return out;
}

Rational RationalMatrix::operator_norm_inf() const {
  Rational best = 0;
  for (std::size_t r = 0; r < rows_; ++r) {
    Rational sum = 0;
    for (std::size_t c = 0; c < cols_; ++c) sum += abs((*this)(r, c));
    best = std::max(best, sum);
  }
  return best;
}

Rational RationalMatrix::max_abs() const {
  Rational best = 0;
  for (const auto& v : data_) best = std::max(best, abs(v));
  return best;
}

std::vector<std::vector<double>> RationalMatrix::to_double() const {
  std::vector<std::vector<double>> out(rows_, std::vector<double>(cols_));
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r][c] = hg::to_double((*this)(r, c));
  return out;
}

RowEchelon row_reduce(RationalMatrix m) {
  RowEchelon result;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < m.rows() && m(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != lead_row)
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(lead_row, c));
    const Rational scale = m(lead_row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(lead_row, c) /= scale;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row || m(r, col) == 0) continue;
      const Rational factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= factor * m(lead_row, c);
    }
    result.pivots.push_back(col);
    ++lead_row;
  }
  result.reduced = std::move(m);
  return result;
}

std::size_t rank(const RationalMatrix& m) { return row_reduce(m).pivots.size(); }

std::vector<RationalVector> null_space(const RationalMatrix& m) {
  const RowEchelon ech = row_reduce(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : ech.pivots) is_pivot[p] = true;
  std::vector<RationalVector> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(m.cols());
    v[free] = 1;
    for (std::size_t i = 0; i < ech.pivots.size(); ++i) v[ech.pivots[i]] = -ech.reduced(i, free);
    basis.push_back(std::move(v));
  }
  return basis;
}

std::optional<RationalMatrix> inverse(const RationalMatrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const std::size_t n = m.rows();
  RationalMatrix augmented(n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) augmented(r, c) = m(r, c);
    augmented(r, n + r) = 1;
  }
  const RowEchelon ech = row_reduce(std::move(augmented));
  if (ech.pivots.size() < n || (n > 0 && ech.pivots[n - 1] != n - 1)) return std::nullopt;
  RationalMatrix inv(n, n);
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c) inv(r, c) = ech.reduced(r, n + c);
  return inv;
}

std::optional<RationalMatrix> solve(const RationalMatrix& a, const RationalMatrix& b) {
  if (a.rows() != b.rows()) throw TypeError("solve: row count mismatch");
  const std::size_t k = a.cols();
  RationalMatrix augmented(a.rows(), k + b.cols());
  for (std::size_t r = 0; r < a.rows(); ++r) {
    for (std::size_t c = 0; c < k; ++c) augmented(r, c) = a(r, c);
    for (std::size_t c = 0; c < b.cols(); ++c) augmented(r, k + c) = b(r, c);
  }
  const RowEchelon ech = row_reduce(std::move(augmented));
  // A pivot in the right-hand block means 0 = nonzero.
  for (auto p : ech.pivots)
    if (p >= k) return std::nullopt;
  RationalMatrix x(k, b.cols());
  for (std::size_t i = 0; i < ech.pivots.size(); ++i)
    for (std::size_t c = 0; c < b.cols(); ++c) x(ech.pivots[i], c) = ech.reduced(i, k + c);
  return x;
}

}  // namespace hg
