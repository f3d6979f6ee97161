#include "harmonic_groups/affine.hpp"

#include "harmonic_groups/errors.hpp"

namespace hg {

AffineHarmonic::AffineHarmonic(const Group& group, RationalVector c, RationalMatrix phi)
    : group_(group), c_(std::move(c)), phi_(std::move(phi)) {
  if (c_.empty()) throw TypeError("affine function needs at least one value dimension");
  if (phi_.rows() != c_.size() || phi_.cols() != static_cast<std::size_t>(group_.abelian_rank()))
    throw TypeError("phi must be " + std::to_string(c_.size()) + " x " + std::to_string(group_.abelian_rank()) +
                    " for " + group_.name());
  c_double_ = to_double(c_);
  phi_double_ = phi_.to_double();
}

AffineHarmonic AffineHarmonic::constant(const Group& group, RationalVector c) {
  const std::size_t k = c.size();
  return AffineHarmonic(group, std::move(c), RationalMatrix(k, static_cast<std::size_t>(group.abelian_rank())));
}

AffineHarmonic AffineHarmonic::scalar(const Group& group, Rational c, RationalVector phi) {
  return AffineHarmonic(group, {std::move(c)}, RationalMatrix({std::move(phi)}, 0));
}

RationalVector AffineHarmonic::evaluate(const Element& x) const {
  const auto ab = group_.abelianize(x);
  RationalVector out = c_;
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t j = 0; j < ab.size(); ++j) out[r] += phi_(r, j) * ab[j];
  return out;
}

std::vector<double> AffineHarmonic::evaluate_double(const Element& x) const {
  const auto ab = group_.abelianize(x);
  std::vector<double> out = c_double_;
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t j = 0; j < ab.size(); ++j) out[r] += phi_double_[r][j] * static_cast<double>(ab[j]);
  return out;
}

RationalVector AffineHarmonic::increment(const Element& s) const {
  const auto ab = group_.abelianize(s);
  RationalVector out(c_.size());
  for (std::size_t r = 0; r < out.size(); ++r)
    for (std::size_t j = 0; j < ab.size(); ++j) out[r] += phi_(r, j) * ab[j];
  return out;
}

AffineHarmonic AffineHarmonic::translated(const Element& h) const {
  return AffineHarmonic(group_, c_ - increment(h), phi_);
}

}  // namespace hg
