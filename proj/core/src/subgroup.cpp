#include "harmonic_groups/subgroup.hpp"

#include "harmonic_groups/errors.hpp"

namespace hg {

namespace {

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

void require_kind(const Group& g, GroupKind kind, const char* what) {
  if (g.kind() != kind) throw TypeError(std::string(what) + " is not defined on " + g.name());
}

}  // namespace

MarkedSubgroup MarkedSubgroup::whole(const Group& parent) {
  MarkedSubgroup h;
  h.kind_ = Kind::kWhole;
  h.parent_ = std::make_shared<const Group>(parent);
  h.model_ = h.parent_;
  h.transversal_ = {parent.identity()};
  h.inclusion_ab_ = RationalMatrix::identity(static_cast<std::size_t>(parent.abelian_rank()));
  h.description_ = "whole";
  return h;
}

MarkedSubgroup MarkedSubgroup::coordinate_modulus(const Group& parent, std::size_t axis, std::int64_t m) {
  require_kind(parent, GroupKind::kFreeAbelian, "coordinate_modulus");
  if (axis >= parent.coordinate_count()) throw ValidationError("coordinate_modulus axis out of range");
  if (m < 1) throw ValidationError("coordinate_modulus needs m >= 1");
  MarkedSubgroup h;
  h.kind_ = Kind::kCoordinateModulus;
  h.parent_ = std::make_shared<const Group>(parent);
  h.model_ = h.parent_;
  h.axis_ = axis;
  h.modulus_ = m;
  for (std::int64_t j = 0; j < m; ++j) {
    Element t = parent.identity();
    t[axis] = j;
    h.transversal_.push_back(t);
  }
  h.inclusion_ab_ = RationalMatrix::identity(parent.coordinate_count());
  h.inclusion_ab_(axis, axis) = m;
  h.description_ = "x" + std::to_string(axis + 1) + " = 0 mod " + std::to_string(m);
  return h;
}

MarkedSubgroup MarkedSubgroup::even_sum(const Group& parent) {
  require_kind(parent, GroupKind::kFreeAbelian, "even_sum");
  MarkedSubgroup h;
  h.kind_ = Kind::kEvenSum;
  h.parent_ = std::make_shared<const Group>(parent);
  h.model_ = h.parent_;
  Element e1 = parent.identity();
  e1[0] = 1;
  h.transversal_ = {parent.identity(), e1};
  const std::size_t d = parent.coordinate_count();
  h.inclusion_ab_ = RationalMatrix(d, d);
  h.inclusion_ab_(0, 0) = 2;
  for (std::size_t i = 1; i < d; ++i) {
    h.inclusion_ab_(0, i) = 1;
    h.inclusion_ab_(i, i) = 1;
  }
  h.description_ = "mod2_sum";
  return h;
}

MarkedSubgroup MarkedSubgroup::rotation_core(const Group& parent) {
  require_kind(parent, GroupKind::kDihedralInfinite, "rotation_core");
  MarkedSubgroup h;
  h.kind_ = Kind::kRotationCore;
  h.parent_ = std::make_shared<const Group>(parent);
  h.model_ = std::make_shared<const Group>(Group::free_abelian(1));
  h.transversal_ = {parent.identity(), Element{0, 1}};
  h.inclusion_ab_ = RationalMatrix(0, 1);
  h.description_ = "rotations";
  return h;
}

MarkedSubgroup MarkedSubgroup::product(const Group& parent, std::vector<MarkedSubgroup> factor_subgroups) {
  require_kind(parent, GroupKind::kDirectProduct, "product subgroup");
  if (factor_subgroups.size() != parent.factors().size())
    throw ValidationError("product subgroup needs one subgroup per factor");
  std::vector<Group> models;
  for (std::size_t i = 0; i < factor_subgroups.size(); ++i) {
    if (!(factor_subgroups[i].parent() == parent.factors()[i]))
      throw TypeError("factor subgroup " + std::to_string(i) + " has the wrong parent");
    models.push_back(factor_subgroups[i].model());
  }
  MarkedSubgroup h;
  h.kind_ = Kind::kProduct;
  h.parent_ = std::make_shared<const Group>(parent);
  h.model_ = std::make_shared<const Group>(Group::direct_product(std::move(models)));
  h.factor_subgroups_ = std::move(factor_subgroups);

  std::size_t total = 1;
  for (const auto& f : h.factor_subgroups_) total *= f.index();
  for (std::size_t label = 0; label < total; ++label) {
    Element t = parent.identity();
    std::size_t rest = label;
    for (std::size_t i = 0; i < h.factor_subgroups_.size(); ++i) {
      const auto& f = h.factor_subgroups_[i];
      const Element& part = f.transversal()[rest % f.index()];
      rest /= f.index();
      for (std::size_t k = 0; k < part.size(); ++k) t[parent.factor_offsets()[i] + k] = part[k];
    }
    h.transversal_.push_back(t);
  }

  std::size_t rows = 0;
  std::size_t cols = 0;
  for (const auto& f : h.factor_subgroups_) {
    rows += f.inclusion_ab().rows();
    cols += f.inclusion_ab().cols();
  }
  h.inclusion_ab_ = RationalMatrix(rows, cols);
  std::size_t r0 = 0;
  std::size_t c0 = 0;
  for (const auto& f : h.factor_subgroups_) {
    const auto& block = f.inclusion_ab();
    for (std::size_t r = 0; r < block.rows(); ++r)
      for (std::size_t c = 0; c < block.cols(); ++c) h.inclusion_ab_(r0 + r, c0 + c) = block(r, c);
    r0 += block.rows();
    c0 += block.cols();
  }
  std::string desc;
  for (std::size_t i = 0; i < h.factor_subgroups_.size(); ++i)
    desc += (i ? " x " : "") + h.factor_subgroups_[i].description();
  h.description_ = "(" + desc + ")";
  return h;
}

std::size_t MarkedSubgroup::label(const Element& g) const {
  parent_->validate(g);
  switch (kind_) {
    case Kind::kWhole:
      return 0;
    case Kind::kCoordinateModulus:
      return static_cast<std::size_t>(floor_mod(g[axis_], modulus_));
    case Kind::kEvenSum: {
      std::int64_t parity = 0;
      for (auto c : g.coords()) parity ^= (c & 1);
      return static_cast<std::size_t>(parity);
    }
    case Kind::kRotationCore:
      return static_cast<std::size_t>(g[1]);
    case Kind::kProduct: {
      std::size_t label = 0;
      std::size_t stride = 1;
      for (std::size_t i = 0; i < factor_subgroups_.size(); ++i) {
        const auto& f = factor_subgroups_[i];
        const std::size_t n = f.parent().coordinate_count();
        label += stride * f.label(Element(g.coords().subspan(parent_->factor_offsets()[i], n)));
        stride *= f.index();
      }
      return label;
    }
  }
  return 0;
}

Element MarkedSubgroup::to_model(const Element& h) const {
  if (label(h) != 0) throw TypeError("element " + format_element(h) + " is not in the subgroup");
  switch (kind_) {
    case Kind::kWhole:
      return h;
    case Kind::kCoordinateModulus: {
      Element m = h;
      m[axis_] = h[axis_] / modulus_;
      return m;
    }
    case Kind::kEvenSum: {
      Element m = h;
      std::int64_t rest = h[0];
      for (std::size_t i = 1; i < h.size(); ++i) rest -= h[i];
      m[0] = rest / 2;
      return m;
    }
    case Kind::kRotationCore:
      return Element{h[0]};
    case Kind::kProduct: {
      std::vector<std::int64_t> coords;
      for (std::size_t i = 0; i < factor_subgroups_.size(); ++i) {
        const auto& f = factor_subgroups_[i];
        Element part = f.to_model(Element(h.coords().subspan(parent_->factor_offsets()[i], f.parent().coordinate_count())));
        coords.insert(coords.end(), part.coords().begin(), part.coords().end());
      }
      return Element(coords);
    }
  }
  return h;
}

Element MarkedSubgroup::from_model(const Element& m) const {
  model_->validate(m);
  switch (kind_) {
    case Kind::kWhole:
      return m;
    case Kind::kCoordinateModulus: {
      Element h = m;
      if (__builtin_mul_overflow(m[axis_], modulus_, &h[axis_])) throw ResourceError("group coordinate overflow");
      return h;
    }
    case Kind::kEvenSum: {
      Element h = m;
      std::int64_t first = 2 * m[0];
      for (std::size_t i = 1; i < m.size(); ++i) first += m[i];
      h[0] = first;
      return h;
    }
    case Kind::kRotationCore:
      return Element{m[0], 0};
    case Kind::kProduct: {
      std::vector<std::int64_t> coords;
      std::size_t offset = 0;
      for (const auto& f : factor_subgroups_) {
        const std::size_t n = f.model().coordinate_count();
        Element part = f.from_model(Element(m.coords().subspan(offset, n)));
        offset += n;
        coords.insert(coords.end(), part.coords().begin(), part.coords().end());
      }
      return Element(coords);
    }
  }
  return m;
}

CosetDecomposition MarkedSubgroup::decompose(const Element& g) const {
  const std::size_t j = label(g);
  const Element h = parent_->multiply(g, parent_->inverse(transversal_[j]));
  return {to_model(h), j};
}

CosetDecomposition coset_decompose(const MarkedSubgroup& h, const Element& g) { return h.decompose(g); }

MarkedSubgroup nilpotent_core(const Group& g) {
  switch (g.kind()) {
    case GroupKind::kDihedralInfinite:
      return MarkedSubgroup::rotation_core(g);
    case GroupKind::kDirectProduct: {
      if (g.is_nilpotent()) return MarkedSubgroup::whole(g);
      std::vector<MarkedSubgroup> parts;
      for (const auto& f : g.factors()) parts.push_back(nilpotent_core(f));
      return MarkedSubgroup::product(g, std::move(parts));
    }
    default:
      return MarkedSubgroup::whole(g);
  }
}

}  // namespace hg
