#pragma once

// Exact arithmetic for the built-in catalog of polynomial-growth groups:
// Z^d, the discrete Heisenberg group, the infinite dihedral group and
// direct products of these.

#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace hg {

inline constexpr std::size_t kMaxCoordinates = 12;

/// Canonical coordinates of a group element, stored inline.
///
/// The coordinate layout is fixed by the owning Group:
///   Z^d              (x_1, ..., x_d)
///   Heisenberg3      (x, y, z) with (x,y,z)(x',y',z') = (x+x', y+y', z+z'+x y')
///   DihedralInfinite (n, eps) with (n,e)(m,d) = (n + (-1)^e m, e xor d)
///   DirectProduct    concatenation of factor coordinates
class Element {
 public:
  Element() = default;
  Element(std::initializer_list<std::int64_t> coords);
  explicit Element(std::span<const std::int64_t> coords);

  std::size_t size() const { return size_; }
  std::int64_t operator[](std::size_t i) const { return coords_[i]; }
  std::int64_t& operator[](std::size_t i) { return coords_[i]; }
  std::span<const std::int64_t> coords() const { return {coords_.data(), size_}; }

  bool operator==(const Element& other) const;
  std::strong_ordering operator<=>(const Element& other) const;

 private:
  std::array<std::int64_t, kMaxCoordinates> coords_{};
  std::uint8_t size_ = 0;
};

struct ElementHash {
  std::size_t operator()(const Element& e) const noexcept;
};

std::string format_element(const Element& e);

enum class GroupKind { kFreeAbelian, kHeisenberg3, kDihedralInfinite, kDirectProduct };

class GeneratingSet;

/// A member of the closed group catalog. Immutable value type.
class Group {
 public:
  static Group free_abelian(int d);
  static Group heisenberg3();
  static Group dihedral_infinite();
  static Group direct_product(std::vector<Group> factors);

  GroupKind kind() const { return kind_; }
  /// d for FreeAbelian(d); zero otherwise.
  int dimension() const { return dimension_; }
  const std::vector<Group>& factors() const { return factors_; }
  /// Offset of each factor's block inside a product element.
  const std::vector<std::size_t>& factor_offsets() const { return offsets_; }

  std::size_t coordinate_count() const { return coordinate_count_; }
  /// R_G = dim(G_ab (x) R).
  int abelian_rank() const { return abelian_rank_; }
  /// True unless a dihedral factor is present.
  bool is_nilpotent() const;

  /// Throws TypeError if e is not a canonical element of this group.
  void validate(const Element& e) const;
  bool contains(const Element& e) const;

  Element identity() const;
  Element multiply(const Element& a, const Element& b) const;
  Element inverse(const Element& a) const;
  /// a^n for any integer n, by repeated squaring. Throws ResourceError on overflow.
  Element power(const Element& a, std::int64_t n) const;

  /// Free part of the Abelianization, a vector of length abelian_rank().
  std::vector<std::int64_t> abelianize(const Element& a) const;

  /// Symmetric generating set bundled with the catalog entry.
  GeneratingSet default_generators() const;

  std::string name() const;

  bool operator==(const Group& other) const;

 private:
  Group() = default;

  GroupKind kind_ = GroupKind::kFreeAbelian;
  int dimension_ = 0;
  std::vector<Group> factors_;
  std::vector<std::size_t> offsets_;
  std::size_t coordinate_count_ = 0;
  int abelian_rank_ = 0;
};

/// Finite symmetric generating set without the identity. Duplicates are dropped
/// at construction; order of first occurrence is kept.
class GeneratingSet {
 public:
  GeneratingSet(const Group& group, std::vector<Element> elements, std::vector<std::string> names);

  const Group& group() const { return *group_; }
  const std::vector<Element>& elements() const& { return elements_; }
  std::vector<Element> elements() && { return std::move(elements_); }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t size() const { return elements_.size(); }

 private:
  std::shared_ptr<const Group> group_;
  std::vector<Element> elements_;
  std::vector<std::string> names_;
};

/// The 8 king moves on Z^2: all (a, b) != 0 with |a|, |b| <= 1.
GeneratingSet king_move_generators();

inline constexpr std::size_t kDefaultBallCap = 5'000'000;

/// All elements of word length <= radius, in breadth-first order.
class BallIndex {
 public:
  int radius() const { return radius_; }
  const GeneratingSet& generating_set() const { return *generators_; }
  /// Safe on temporaries: `for (auto& x : enumerate_ball(s, r).elements())`.
  const std::vector<Element>& elements() const& { return elements_; }
  std::vector<Element> elements() && { return std::move(elements_); }
  const std::vector<int>& lengths() const { return lengths_; }
  std::size_t size() const { return elements_.size(); }
  /// Number of members with length <= r (members are sorted by length).
  std::size_t count_within(int r) const;
  /// Word length if e is in the ball.
  std::optional<int> length_of(const Element& e) const;
  /// Position in elements() if e is in the ball.
  std::optional<std::size_t> index_of(const Element& e) const;

 private:
  friend BallIndex enumerate_ball(const GeneratingSet&, int, std::size_t);

  int radius_ = 0;
  std::shared_ptr<const GeneratingSet> generators_;
  std::vector<Element> elements_;
  std::vector<int> lengths_;
  std::vector<std::size_t> shell_end_;
  std::unordered_map<Element, std::size_t, ElementHash> index_;
};

/// Exact word-metric ball. Throws ResourceError naming the cap when the ball
/// would hold more than `cap` elements.
BallIndex enumerate_ball(const GeneratingSet& s, int radius, std::size_t cap = kDefaultBallCap);

/// Geodesic length of g, or nullopt if |g|_S > cap_radius.
std::optional<int> word_length(const GeneratingSet& s, const Element& g, int cap_radius,
                               std::size_t ball_cap = kDefaultBallCap);

/// C = max_{s in s1} |s|_{s2}, so ||grad_{s1} f|| <= C ||grad_{s2} f|| for every f.
/// Throws CertificationError if some s is longer than search_radius in s2.
int generator_comparability(const GeneratingSet& s1, const GeneratingSet& s2, int search_radius = 64);

/// Free-function forms of the group law.
Element group_mul(const Group& g, const Element& a, const Element& b);
std::vector<std::int64_t> abelianize(const Group& g, const Element& a);

}  // namespace hg
