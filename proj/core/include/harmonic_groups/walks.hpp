#pragma once

// Right random walks X_{t+1} = X_t xi_{t+1}, first (re)entry into a
// finite-index subgroup, Monte Carlo harmonic induction and the constants
// controlling its Lipschitz norm.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "harmonic_groups/affine.hpp"
#include "harmonic_groups/measure.hpp"
#include "harmonic_groups/subgroup.hpp"

namespace hg {

inline constexpr std::int64_t kDefaultMaxSteps = 10'000;
/// Above this censored fraction results are flagged.
inline constexpr double kCensoringWarnFraction = 0.001;
/// Above this censored fraction runs fail with CensoringError.
inline constexpr double kCensoringFailFraction = 0.01;

struct WalkConfig {
  FiniteMeasure measure;
  std::int64_t max_steps = kDefaultMaxSteps;
  std::uint64_t seed = 0;
  std::uint64_t n_samples = 1;

  void validate() const;
};

/// tau counts from t = 0; tau_plus from t = 1.
enum class HitMode { kTau, kTauPlus };

struct HittingSample {
  std::optional<std::int64_t> tau;  // nullopt when censored
  std::optional<Element> landing;   // H-model coordinates
  bool censored() const { return !tau.has_value(); }
};

HittingSample simulate_hit(const Element& start, const MarkedSubgroup& h, const MeasureSampler& sampler,
                           std::int64_t max_steps, RngStream& rng, HitMode mode);

/// Single run on stream (cfg.seed, 0).
HittingSample simulate_hit(const Element& start, const MarkedSubgroup& h, const WalkConfig& cfg, HitMode mode);

/// Landing counts of the first return to H, in H-model coordinates.
struct EmpiricalMeasure {
  std::map<Element, std::uint64_t> counts;
  std::uint64_t total = 0;
  std::uint64_t censored = 0;

  double frequency(const Element& m) const;
  /// Binomial standard error sqrt(p (1 - p) / total).
  double standard_error(const Element& m) const;
  double censored_fraction() const;
  /// Empirical law on the model group with weights count / (total - censored).
  FiniteMeasure to_finite_measure(const Group& model) const;
};

EmpiricalMeasure hitting_measure(const MarkedSubgroup& h, const WalkConfig& cfg);

/// Mean and standard error of the Abelianized landing point.
struct DriftEstimate {
  std::vector<double> mean;
  std::vector<double> standard_error;
};

DriftEstimate empirical_drift(const EmpiricalMeasure& m, const Group& model);

struct TauEstimate {
  double t_hat = 0;
  double standard_error = 0;
  std::size_t argmax_coset = 0;
  std::vector<double> coset_mean;
  std::vector<double> coset_standard_error;
  double censored_fraction = 0;
  bool censoring_warning = false;
};

/// sup_x E_x[tau], estimated from the transversal starts (E_x[tau] only
/// depends on the coset of x).
TauEstimate estimate_T(const MarkedSubgroup& h, const WalkConfig& cfg);

struct InductionEstimate {
  std::vector<double> value;
  std::vector<double> standard_error;
  std::uint64_t used = 0;
  std::uint64_t censored = 0;
  bool exact = false;
  bool censoring_warning = false;
  /// censored fraction x max |f| over observed landings.
  double bias_bound = 0;
};

/// Ind_H^G(f)(x) = E_x[f(X_tau)] for an affine f on the H-model.
InductionEstimate induce_harmonic(const AffineHarmonic& f_model, const Element& x, const MarkedSubgroup& h,
                                  const WalkConfig& cfg);

struct InductionConstants {
  Rational a;                 // |h|_{S_H} <= a |h|_{S_G} on the certified ball
  int certified_radius = 0;
  int d = 0;                  // max transversal length in S_G
  Rational m1;                // first moment of mu w.r.t. S_G
  double t_hat = 0;
  double t_standard_error = 0;
  double c_star = 0;          // a ((4d + 1) + 2 m1 t_hat)
  int c_hg = 0;               // max_{s in S_H} |s|_{S_G}
};

/// s_h generates the model group of h. Throws CertificationError if some
/// required word length is not found within the search radii.
InductionConstants induction_constants(const MarkedSubgroup& h, const GeneratingSet& s_g, const GeneratingSet& s_h,
                                       const WalkConfig& cfg, int certification_radius);

}  // namespace hg
