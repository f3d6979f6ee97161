#include "harmonic_groups/group.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_set>

#include "harmonic_groups/errors.hpp"

namespace hg {

namespace {

std::int64_t checked_add(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw ResourceError("group coordinate overflow");
  return out;
}

std::int64_t checked_sub(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw ResourceError("group coordinate overflow");
  return out;
}

std::int64_t checked_mul(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw ResourceError("group coordinate overflow");
  return out;
}

std::int64_t checked_neg(std::int64_t a) { return checked_sub(0, a); }

Element slice(const Element& e, std::size_t offset, std::size_t count) {
  return Element(e.coords().subspan(offset, count));
}

}  // namespace

Element::Element(std::initializer_list<std::int64_t> coords)
    : Element(std::span<const std::int64_t>(coords.begin(), coords.size())) {}

Element::Element(std::span<const std::int64_t> coords) {
  if (coords.size() > kMaxCoordinates) throw ResourceError("element has too many coordinates");
  std::copy(coords.begin(), coords.end(), coords_.begin());
  size_ = static_cast<std::uint8_t>(coords.size());
}

bool Element::operator==(const Element& other) const {
  return size_ == other.size_ && std::equal(coords_.begin(), coords_.begin() + size_, other.coords_.begin());
}

std::strong_ordering Element::operator<=>(const Element& other) const {
  if (auto c = size_ <=> other.size_; c != 0) return c;
  for (std::size_t i = 0; i < size_; ++i)
    if (auto c = coords_[i] <=> other.coords_[i]; c != 0) return c;
  return std::strong_ordering::equal;
}

std::size_t ElementHash::operator()(const Element& e) const noexcept {
  std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ e.size();
  for (auto c : e.coords()) {
    h ^= static_cast<std::uint64_t>(c) + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
  }
  return static_cast<std::size_t>(h);
}

std::string format_element(const Element& e) {
  std::ostringstream out;
  out << '(';
  for (std::size_t i = 0; i < e.size(); ++i) out << (i ? "," : "") << e[i];
  out << ')';
  return out.str();
}

Group Group::free_abelian(int d) {
  if (d < 1) throw ValidationError("free abelian rank must be positive");
  if (static_cast<std::size_t>(d) > kMaxCoordinates) throw ResourceError("free abelian rank too large");
  Group g;
  g.kind_ = GroupKind::kFreeAbelian;
  g.dimension_ = d;
  g.coordinate_count_ = static_cast<std::size_t>(d);
  g.abelian_rank_ = d;
  return g;
}

Group Group::heisenberg3() {
  Group g;
  g.kind_ = GroupKind::kHeisenberg3;
  g.coordinate_count_ = 3;
  g.abelian_rank_ = 2;
  return g;
}

Group Group::dihedral_infinite() {
  Group g;
  g.kind_ = GroupKind::kDihedralInfinite;
  g.coordinate_count_ = 2;
  g.abelian_rank_ = 0;
  return g;
}

Group Group::direct_product(std::vector<Group> factors) {
  if (factors.empty()) throw ValidationError("direct product needs at least one factor");
  Group g;
  g.kind_ = GroupKind::kDirectProduct;
  for (const auto& f : factors) {
    g.offsets_.push_back(g.coordinate_count_);
    g.coordinate_count_ += f.coordinate_count();
    g.abelian_rank_ += f.abelian_rank();
  }
  if (g.coordinate_count_ > kMaxCoordinates) throw ResourceError("direct product has too many coordinates");
  g.factors_ = std::move(factors);
  return g;
}

bool Group::is_nilpotent() const {
  switch (kind_) {
    case GroupKind::kDihedralInfinite:
      return false;
    case GroupKind::kDirectProduct:
      return std::all_of(factors_.begin(), factors_.end(), [](const Group& f) { return f.is_nilpotent(); });
    default:
      return true;
  }
}

bool Group::contains(const Element& e) const {
  if (e.size() != coordinate_count_) return false;
  switch (kind_) {
    case GroupKind::kDihedralInfinite:
      return e[1] == 0 || e[1] == 1;
    case GroupKind::kDirectProduct:
      for (std::size_t i = 0; i < factors_.size(); ++i)
        if (!factors_[i].contains(slice(e, offsets_[i], factors_[i].coordinate_count()))) return false;
      return true;
    default:
      return true;
  }
}

void Group::validate(const Element& e) const {
  if (!contains(e)) throw TypeError("element " + format_element(e) + " is not valid for " + name());
}

Element Group::identity() const {
  std::vector<std::int64_t> zeros(coordinate_count_, 0);
  return Element(zeros);
}

Element Group::multiply(const Element& a, const Element& b) const {
  validate(a);
  validate(b);
  Element out = a;
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      for (std::size_t i = 0; i < coordinate_count_; ++i) out[i] = checked_add(a[i], b[i]);
      break;
    case GroupKind::kHeisenberg3:
      out[0] = checked_add(a[0], b[0]);
      out[1] = checked_add(a[1], b[1]);
      out[2] = checked_add(checked_add(a[2], b[2]), checked_mul(a[0], b[1]));
      break;
    case GroupKind::kDihedralInfinite:
      out[0] = a[1] == 0 ? checked_add(a[0], b[0]) : checked_sub(a[0], b[0]);
      out[1] = a[1] ^ b[1];
      break;
    case GroupKind::kDirectProduct:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::size_t n = factors_[i].coordinate_count();
        Element part = factors_[i].multiply(slice(a, offsets_[i], n), slice(b, offsets_[i], n));
        for (std::size_t j = 0; j < n; ++j) out[offsets_[i] + j] = part[j];
      }
      break;
  }
  return out;
}

Element Group::inverse(const Element& a) const {
  validate(a);
  Element out = a;
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      for (std::size_t i = 0; i < coordinate_count_; ++i) out[i] = checked_neg(a[i]);
      break;
    case GroupKind::kHeisenberg3:
      out[0] = checked_neg(a[0]);
      out[1] = checked_neg(a[1]);
      out[2] = checked_add(checked_neg(a[2]), checked_mul(a[0], a[1]));
      break;
    case GroupKind::kDihedralInfinite:
      // Reflections are involutions; rotations invert the integer part.
      out[0] = a[1] == 0 ? checked_neg(a[0]) : a[0];
      break;
    case GroupKind::kDirectProduct:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const std::size_t n = factors_[i].coordinate_count();
        Element part = factors_[i].inverse(slice(a, offsets_[i], n));
        for (std::size_t j = 0; j < n; ++j) out[offsets_[i] + j] = part[j];
      }
      break;
  }
  return out;
}

Element Group::power(const Element& a, std::int64_t n) const {
  validate(a);
  Element base = n < 0 ? inverse(a) : a;
  std::uint64_t e = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  Element result = identity();
  while (e > 0) {
    if (e & 1U) result = multiply(result, base);
    e >>= 1U;
    if (e > 0) base = multiply(base, base);
  }
  return result;
}

std::vector<std::int64_t> Group::abelianize(const Element& a) const {
  validate(a);
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      return {a.coords().begin(), a.coords().end()};
    case GroupKind::kHeisenberg3:
      return {a[0], a[1]};
    case GroupKind::kDihedralInfinite:
      return {};
    case GroupKind::kDirectProduct: {
      std::vector<std::int64_t> out;
      out.reserve(static_cast<std::size_t>(abelian_rank_));
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        auto part = factors_[i].abelianize(slice(a, offsets_[i], factors_[i].coordinate_count()));
        out.insert(out.end(), part.begin(), part.end());
      }
      return out;
    }
  }
  return {};
}

GeneratingSet Group::default_generators() const {
  std::vector<Element> elements;
  std::vector<std::string> names;
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      for (int i = 0; i < dimension_; ++i) {
        for (int sign : {1, -1}) {
          Element e = identity();
          e[static_cast<std::size_t>(i)] = sign;
          elements.push_back(e);
          names.push_back("e" + std::to_string(i + 1) + (sign < 0 ? "^-1" : ""));
        }
      }
      break;
    case GroupKind::kHeisenberg3:
      elements = {Element{1, 0, 0}, Element{-1, 0, 0}, Element{0, 1, 0}, Element{0, -1, 0}};
      names = {"a", "a^-1", "b", "b^-1"};
      break;
    case GroupKind::kDihedralInfinite:
      elements = {Element{1, 0}, Element{-1, 0}, Element{0, 1}};
      names = {"r", "r^-1", "s"};
      break;
    case GroupKind::kDirectProduct:
      for (std::size_t i = 0; i < factors_.size(); ++i) {
        const GeneratingSet part = factors_[i].default_generators();
        for (std::size_t j = 0; j < part.size(); ++j) {
          Element e = identity();
          for (std::size_t k = 0; k < factors_[i].coordinate_count(); ++k)
            e[offsets_[i] + k] = part.elements()[j][k];
          elements.push_back(e);
          names.push_back(std::to_string(i + 1) + ":" + part.names()[j]);
        }
      }
      break;
  }
  return GeneratingSet(*this, std::move(elements), std::move(names));
}

std::string Group::name() const {
  switch (kind_) {
    case GroupKind::kFreeAbelian:
      return "Z^" + std::to_string(dimension_);
    case GroupKind::kHeisenberg3:
      return "H3(Z)";
    case GroupKind::kDihedralInfinite:
      return "D_inf";
    case GroupKind::kDirectProduct: {
      std::string out;
      for (std::size_t i = 0; i < factors_.size(); ++i) out += (i ? " x " : "") + factors_[i].name();
      return "(" + out + ")";
    }
  }
  return {};
}

bool Group::operator==(const Group& other) const {
  return kind_ == other.kind_ && dimension_ == other.dimension_ && factors_ == other.factors_;
}

GeneratingSet::GeneratingSet(const Group& group, std::vector<Element> elements, std::vector<std::string> names)
    : group_(std::make_shared<const Group>(group)) {
  if (names.size() != elements.size()) throw ValidationError("generating set names and elements differ in length");
  const Element e = group.identity();
  std::unordered_set<Element, ElementHash> seen;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    group.validate(elements[i]);
    if (elements[i] == e) throw ValidationError("generating set must not contain the identity");
    if (!seen.insert(elements[i]).second) continue;
    elements_.push_back(elements[i]);
    names_.push_back(names[i]);
  }
  if (elements_.empty()) throw ValidationError("generating set is empty");
  for (const auto& s : elements_) {
    if (!seen.contains(group.inverse(s)))
      throw ValidationError("generating set is not symmetric: inverse of " + format_element(s) + " missing");
  }
}

GeneratingSet king_move_generators() {
  const Group z2 = Group::free_abelian(2);
  std::vector<Element> elements;
  std::vector<std::string> names;
  for (std::int64_t a = -1; a <= 1; ++a)
    for (std::int64_t b = -1; b <= 1; ++b) {
      if (a == 0 && b == 0) continue;
      elements.push_back(Element{a, b});
      names.push_back("k(" + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  return GeneratingSet(z2, std::move(elements), std::move(names));
}

std::size_t BallIndex::count_within(int r) const {
  if (r < 0) return 0;
  if (r >= radius_) return elements_.size();
  return shell_end_[static_cast<std::size_t>(r)];
}

std::optional<int> BallIndex::length_of(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return lengths_[it->second];
}

std::optional<std::size_t> BallIndex::index_of(const Element& e) const {
  auto it = index_.find(e);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

BallIndex enumerate_ball(const GeneratingSet& s, int radius, std::size_t cap) {
  if (radius < 0) throw ValidationError("ball radius must be nonnegative");
  const Group& g = s.group();
  BallIndex ball;
  ball.radius_ = radius;
  ball.generators_ = std::make_shared<const GeneratingSet>(s);
  ball.elements_.push_back(g.identity());
  ball.lengths_.push_back(0);
  ball.index_.emplace(g.identity(), 0);
  ball.shell_end_.push_back(1);
  std::size_t shell_begin = 0;
  for (int r = 1; r <= radius; ++r) {
    const std::size_t shell_stop = ball.elements_.size();
    for (std::size_t i = shell_begin; i < shell_stop; ++i) {
      for (const auto& gen : s.elements()) {
        Element next = g.multiply(ball.elements_[i], gen);
        if (ball.index_.contains(next)) continue;
        if (ball.elements_.size() >= cap)
          throw ResourceError("ball of radius " + std::to_string(radius) + " exceeds element cap " +
                              std::to_string(cap));
        ball.index_.emplace(next, ball.elements_.size());
        ball.elements_.push_back(next);
        ball.lengths_.push_back(r);
      }
    }
    shell_begin = shell_stop;
    ball.shell_end_.push_back(ball.elements_.size());
  }
  return ball;
}

std::optional<int> word_length(const GeneratingSet& s, const Element& g, int cap_radius, std::size_t ball_cap) {
  const Group& group = s.group();
  group.validate(g);
  if (g == group.identity()) return 0;
  std::unordered_set<Element, ElementHash> seen{group.identity()};
  std::vector<Element> frontier{group.identity()};
  for (int r = 1; r <= cap_radius; ++r) {
    std::vector<Element> next;
    for (const auto& x : frontier) {
      for (const auto& gen : s.elements()) {
        Element y = group.multiply(x, gen);
        if (y == g) return r;
        if (!seen.insert(y).second) continue;
        if (seen.size() > ball_cap)
          throw ResourceError("word length search exceeds element cap " + std::to_string(ball_cap));
        next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return std::nullopt;
}

int generator_comparability(const GeneratingSet& s1, const GeneratingSet& s2, int search_radius) {
  if (!(s1.group() == s2.group())) throw TypeError("generating sets live on different groups");
  int worst = 0;
  for (const auto& s : s1.elements()) {
    auto len = word_length(s2, s, search_radius);
    if (!len) throw CertificationError("generator " + format_element(s) + " not reached within search radius");
    worst = std::max(worst, *len);
  }
  return worst;
}

Element group_mul(const Group& g, const Element& a, const Element& b) { return g.multiply(a, b); }

std::vector<std::int64_t> abelianize(const Group& g, const Element& a) { return g.abelianize(a); }

}  // namespace hg
