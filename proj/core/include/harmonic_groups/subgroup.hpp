#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "harmonic_groups/group.hpp"
#include "harmonic_groups/rational.hpp"

namespace hg {

/// g = from_model(h) * transversal[coset].
struct CosetDecomposition {
  Element h_model;
  std::size_t coset = 0;
};

/// A finite-index normal subgroup H <= G from the catalog, together with an
/// explicit isomorphism onto a model group and a right-coset transversal
/// G = disjoint union of H g_j, g_0 = e.
///
/// label(g) is the index j with g in H g_j. Every catalog subgroup is the
/// kernel of a homomorphism onto a finite cyclic group (or a product of such),
/// so label(a b) depends only on label(a) and label(b).
class MarkedSubgroup {
 public:
  /// H = G, index 1.
  static MarkedSubgroup whole(const Group& parent);
  /// H = {x in Z^d : x_axis = 0 mod m}; model Z^d, to_model divides x_axis by m.
  static MarkedSubgroup coordinate_modulus(const Group& parent, std::size_t axis, std::int64_t m);
  /// H = {x in Z^d : sum of coordinates even}; model Z^d with basis 2e_1, e_1 + e_i.
  static MarkedSubgroup even_sum(const Group& parent);
  /// The rotation subgroup <r> of D_inf; model Z.
  static MarkedSubgroup rotation_core(const Group& parent);
  /// Product of subgroups of the factors of a direct product.
  static MarkedSubgroup product(const Group& parent, std::vector<MarkedSubgroup> factor_subgroups);

  const Group& parent() const { return *parent_; }
  const Group& model() const { return *model_; }
  std::size_t index() const { return transversal_.size(); }
  const std::vector<Element>& transversal() const { return transversal_; }
  /// Integer matrix of iota_ab: H_ab (x) R -> G_ab (x) R, shape R_parent x R_model.
  const RationalMatrix& inclusion_ab() const { return inclusion_ab_; }
  const std::string& description() const { return description_; }

  std::size_t label(const Element& g) const;
  bool contains(const Element& g) const { return label(g) == 0; }

  /// Throws TypeError if h is not in H.
  Element to_model(const Element& h) const;
  Element from_model(const Element& m) const;

  CosetDecomposition decompose(const Element& g) const;

 private:
  enum class Kind { kWhole, kCoordinateModulus, kEvenSum, kRotationCore, kProduct };

  MarkedSubgroup() = default;

  Kind kind_ = Kind::kWhole;
  std::shared_ptr<const Group> parent_;
  std::shared_ptr<const Group> model_;
  std::size_t axis_ = 0;
  std::int64_t modulus_ = 1;
  std::vector<MarkedSubgroup> factor_subgroups_;
  std::vector<Element> transversal_;
  RationalMatrix inclusion_ab_;
  std::string description_;
};

CosetDecomposition coset_decompose(const MarkedSubgroup& h, const Element& g);

/// The designated finite-index torsion-free nilpotent subgroup: G itself for
/// nilpotent catalog groups, <r> for D_inf, factorwise for products.
MarkedSubgroup nilpotent_core(const Group& g);

}  // namespace hg
