#pragma once

// Independent reference computations used to certify Monte Carlo and
// homogenization results. None of these share code paths with the
// production estimators beyond the group law.

#include <map>

#include "harmonic_groups/measure.hpp"
#include "harmonic_groups/subgroup.hpp"
#include "harmonic_groups/walks.hpp"

namespace hg::oracle {

struct ExactHitLaw {
  std::map<Element, Rational> law;  // H-model coordinates
  Rational unresolved;              // mass of paths not yet in H after `depth` steps
};

/// Law of X_tau (or X_tau+) by exhaustive path enumeration up to `depth` steps.
ExactHitLaw first_hit_law(const MarkedSubgroup& h, const FiniteMeasure& mu, const Element& start, HitMode mode,
                          int depth);

/// For mu supported on {r, r^-1, s} in D_inf: psi(r^a) = a, psi(r^a s) = a + t
/// is mu-harmonic exactly when t = (q - p) / w with p = mu(r), q = mu(r^-1),
/// w = mu(s). Throws ValidationError for other supports.
Rational dihedral_extension_offset(const FiniteMeasure& mu);

/// Largest |sum_g mu(g) psi(k g) - psi(k)| over the ball, psi as above.
Rational dihedral_extension_residual(const FiniteMeasure& mu, int radius);

/// Uniform rational with numerator in [-max_num, max_num] and denominator in [1, max_den].
Rational random_rational(RngStream& rng, int max_num, int max_den);

}  // namespace hg::oracle
