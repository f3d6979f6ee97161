#include "harmonic_groups/measure.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "harmonic_groups/errors.hpp"

namespace hg {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

}  // namespace

FiniteMeasure::FiniteMeasure(const Group& group, std::vector<Atom> atoms) : group_(group), atoms_(std::move(atoms)) {
  if (atoms_.empty()) throw ValidationError("measure has empty support");
  Rational total = 0;
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    group_.validate(atoms_[i].element);
    if (atoms_[i].weight <= 0)
      throw ValidationError("atom " + std::to_string(i) + " at " + format_element(atoms_[i].element) +
                            " has nonpositive weight " + to_string(atoms_[i].weight));
    total += atoms_[i].weight;
  }
  std::sort(atoms_.begin(), atoms_.end(), [](const Atom& a, const Atom& b) { return a.element < b.element; });
  for (std::size_t i = 1; i < atoms_.size(); ++i)
    if (atoms_[i].element == atoms_[i - 1].element)
      throw ValidationError("duplicate support element " + format_element(atoms_[i].element));
  if (total != 1) throw ValidationError("measure weights sum to " + to_string(total) + ", not 1");
}

FiniteMeasure FiniteMeasure::uniform(const Group& group, const std::vector<Element>& support) {
  if (support.empty()) throw ValidationError("uniform measure needs a nonempty support");
  std::vector<Atom> atoms;
  for (const auto& e : support) atoms.push_back({e, Rational(1, static_cast<long long>(support.size()))});
  return FiniteMeasure(group, std::move(atoms));
}

FiniteMeasure FiniteMeasure::point_mass(const Group& group, const Element& at) {
  return FiniteMeasure(group, {Atom{at, 1}});
}

FiniteMeasure FiniteMeasure::simple_random_walk(const GeneratingSet& s) { return uniform(s.group(), s.elements()); }

Rational FiniteMeasure::weight_of(const Element& e) const {
  auto it = std::lower_bound(atoms_.begin(), atoms_.end(), e,
                             [](const Atom& a, const Element& x) { return a.element < x; });
  if (it == atoms_.end() || !(it->element == e)) return 0;
  return it->weight;
}

RationalVector drift_abelian(const FiniteMeasure& mu) {
  RationalVector drift(static_cast<std::size_t>(mu.group().abelian_rank()));
  for (const auto& atom : mu.atoms()) {
    const auto ab = mu.group().abelianize(atom.element);
    for (std::size_t i = 0; i < ab.size(); ++i) drift[i] += atom.weight * ab[i];
  }
  return drift;
}

Rational first_moment(const FiniteMeasure& mu, const GeneratingSet& s, int search_radius) {
  if (!(s.group() == mu.group())) throw TypeError("generating set and measure live on different groups");
  Rational total = 0;
  for (const auto& atom : mu.atoms()) {
    auto len = word_length(s, atom.element, search_radius);
    if (!len)
      throw CertificationError("support element " + format_element(atom.element) + " is longer than " +
                               std::to_string(search_radius));
    total += atom.weight * *len;
  }
  return total;
}

SasReport check_sas(const FiniteMeasure& mu, const GeneratingSet& s, int probe_radius) {
  if (probe_radius < 1) throw ValidationError("probe radius must be at least 1");
  const Group& g = mu.group();
  SasReport report;
  report.symmetric = std::all_of(mu.atoms().begin(), mu.atoms().end(), [&](const Atom& a) {
    return mu.weight_of(g.inverse(a.element)) == a.weight;
  });
  report.first_moment = first_moment(mu, s, std::max(probe_radius, 64));

  // Breadth-first search over positive words in the support.
  std::unordered_set<Element, ElementHash> missing(s.elements().begin(), s.elements().end());
  std::unordered_set<Element, ElementHash> reached;
  std::vector<Element> frontier{g.identity()};
  for (int depth = 1; depth <= probe_radius && !missing.empty(); ++depth) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& atom : mu.atoms()) {
        Element y = g.multiply(x, atom.element);
        if (!reached.insert(y).second) continue;
        if (reached.size() > kDefaultBallCap) return report;
        missing.erase(y);
        next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
    if (missing.empty()) report.adapted_witness_radius = depth;
  }
  return report;
}

FiniteMeasure convolve(const FiniteMeasure& mu, const FiniteMeasure& nu) {
  if (!(mu.group() == nu.group())) throw TypeError("cannot convolve measures on different groups");
  std::map<Element, Rational> weights;
  for (const auto& a : mu.atoms())
    for (const auto& b : nu.atoms()) weights[mu.group().multiply(a.element, b.element)] += a.weight * b.weight;
  std::vector<Atom> atoms;
  atoms.reserve(weights.size());
  for (auto& [e, w] : weights) atoms.push_back({e, std::move(w)});
  return FiniteMeasure(mu.group(), std::move(atoms));
}

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream)
    : engine_(splitmix64(seed ^ splitmix64(stream + 0x632BE59BD9B4E019ULL))) {}

MeasureSampler::MeasureSampler(const FiniteMeasure& mu) : group_(mu.group()) {
  Rational running = 0;
  for (const auto& atom : mu.atoms()) {
    running += atom.weight;
    elements_.push_back(atom.element);
    cumulative_.push_back(to_double(running));
  }
  cumulative_.back() = 1.0;
}

const Element& MeasureSampler::draw(RngStream& rng) const {
  const double u = rng.uniform01();
  auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), u);
  if (it == cumulative_.end()) --it;
  return elements_[static_cast<std::size_t>(it - cumulative_.begin())];
}

Element sample(const FiniteMeasure& mu, RngStream& rng) { return MeasureSampler(mu).draw(rng); }

}  // namespace hg
