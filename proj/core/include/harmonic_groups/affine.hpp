#pragma once

#include <vector>

#include "harmonic_groups/group.hpp"
#include "harmonic_groups/rational.hpp"

namespace hg {

/// f(x) = c + phi [x], with values in Q^k (k = 1 scalar, k = 2 complex, general
/// k for finite-dimensional vector targets). phi is k x R_G and acts on the
/// free part of the Abelianization.
class AffineHarmonic {
 public:
  AffineHarmonic(const Group& group, RationalVector c, RationalMatrix phi);

  static AffineHarmonic constant(const Group& group, RationalVector c);
  /// Scalar f(x) = c + <phi, [x]>.
  static AffineHarmonic scalar(const Group& group, Rational c, RationalVector phi);

  const Group& group() const { return group_; }
  const RationalVector& constant_term() const { return c_; }
  const RationalMatrix& phi() const { return phi_; }
  std::size_t value_dimension() const { return c_.size(); }

  RationalVector evaluate(const Element& x) const;
  std::vector<double> evaluate_double(const Element& x) const;
  /// phi [s]: the constant increment f(x s) - f(x).
  RationalVector increment(const Element& s) const;

  /// The left translate (h . f)(x) = f(h^-1 x) = f(x) - phi [h].
  AffineHarmonic translated(const Element& h) const;

 private:
  Group group_;
  RationalVector c_;
  RationalMatrix phi_;
  std::vector<double> c_double_;
  std::vector<std::vector<double>> phi_double_;
};

}  // namespace hg
