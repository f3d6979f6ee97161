#include "config.hpp"

#include "harmonic_groups/errors.hpp"

namespace hg::cli {

ConfigError::ConfigError(const std::string& pointer, const std::string& message)
    : std::runtime_error((pointer.empty() ? std::string("/") : pointer) + ": " + message), pointer_(pointer) {}

const json& require(const json& obj, const std::string& key, const std::string& at) {
  if (!obj.is_object()) throw ConfigError(at, "expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ConfigError(at + "/" + key, "missing required field");
  return *it;
}

const json* optional_field(const json& obj, const std::string& key) {
  if (!obj.is_object()) return nullptr;
  auto it = obj.find(key);
  return it == obj.end() ? nullptr : &*it;
}

std::int64_t get_int(const json& obj, const std::string& key, std::int64_t fallback, const std::string& at) {
  const json* v = optional_field(obj, key);
  if (!v) return fallback;
  if (!v->is_number_integer()) throw ConfigError(at + "/" + key, "expected an integer");
  return v->get<std::int64_t>();
}

bool get_bool(const json& obj, const std::string& key, bool fallback, const std::string& at) {
  const json* v = optional_field(obj, key);
  if (!v) return fallback;
  if (!v->is_boolean()) throw ConfigError(at + "/" + key, "expected true or false");
  return v->get<bool>();
}

Group parse_group(const json& j, const std::string& at) {
  const std::string kind = require(j, "kind", at).is_string() ? j["kind"].get<std::string>() : "";
  if (kind == "free_abelian") {
    const std::int64_t d = get_int(j, "d", 0, at);
    if (d < 1 || d > static_cast<std::int64_t>(kMaxCoordinates)) throw ConfigError(at + "/d", "d must be in 1..12");
    return Group::free_abelian(static_cast<int>(d));
  }
  if (kind == "heisenberg3") return Group::heisenberg3();
  if (kind == "dihedral_infinite") return Group::dihedral_infinite();
  if (kind == "direct_product") {
    const json& f = require(j, "factors", at);
    if (!f.is_array() || f.empty()) throw ConfigError(at + "/factors", "expected a nonempty list of groups");
    std::vector<Group> factors;
    for (std::size_t i = 0; i < f.size(); ++i) factors.push_back(parse_group(f[i], at + "/factors/" + std::to_string(i)));
    try {
      return Group::direct_product(std::move(factors));
    } catch (const Error& e) {
      throw ConfigError(at, e.what());
    }
  }
  throw ConfigError(at + "/kind", "unknown group kind (free_abelian, heisenberg3, dihedral_infinite, direct_product)");
}

Element parse_element(const Group& g, const json& j, const std::string& at) {
  std::vector<std::int64_t> coords;
  if (j.is_number_integer()) {
    coords.push_back(j.get<std::int64_t>());
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (!j[i].is_number_integer()) throw ConfigError(at + "/" + std::to_string(i), "expected an integer");
      coords.push_back(j[i].get<std::int64_t>());
    }
  } else {
    throw ConfigError(at, "expected a list of integer coordinates");
  }
  if (coords.size() != g.coordinate_count())
    throw ConfigError(at, g.name() + " elements have " + std::to_string(g.coordinate_count()) + " coordinates");
  Element e{std::span<const std::int64_t>(coords)};
  try {
    g.validate(e);
  } catch (const Error& err) {
    throw ConfigError(at, err.what());
  }
  return e;
}

std::vector<Element> parse_elements(const Group& g, const json& j, const std::string& at) {
  if (!j.is_array()) throw ConfigError(at, "expected a list of elements");
  std::vector<Element> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_element(g, j[i], at + "/" + std::to_string(i)));
  return out;
}

Rational parse_rational_value(const json& j, const std::string& at) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const Error& e) {
      throw ConfigError(at, e.what());
    }
  }
  throw ConfigError(at, "expected an integer or a rational string such as \"-3/4\"");
}

RationalVector parse_rational_vector(const json& j, const std::string& at) {
  if (!j.is_array()) throw ConfigError(at, "expected a list of rationals");
  RationalVector out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(parse_rational_value(j[i], at + "/" + std::to_string(i)));
  return out;
}

RationalMatrix parse_rational_matrix(const json& j, std::size_t cols, const std::string& at) {
  if (!j.is_array()) throw ConfigError(at, "expected a list of rows");
  std::vector<RationalVector> rows;
  for (std::size_t i = 0; i < j.size(); ++i) {
    rows.push_back(parse_rational_vector(j[i], at + "/" + std::to_string(i)));
    if (rows.back().size() != cols)
      throw ConfigError(at + "/" + std::to_string(i), "row must have " + std::to_string(cols) + " entries");
  }
  return RationalMatrix(rows, cols);
}

FiniteMeasure parse_measure(const Group& g, const json& j, const std::string& at) {
  if (j.is_string()) {
    if (j.get<std::string>() == "srw") return FiniteMeasure::simple_random_walk(g.default_generators());
    throw ConfigError(at, "unknown measure name (use \"srw\" or a list of atoms)");
  }
  if (!j.is_array() || j.empty()) throw ConfigError(at, "expected \"srw\" or a nonempty list of [coords, num, den]");
  std::vector<Atom> atoms;
  Rational total = 0;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at + "/" + std::to_string(i);
    const json& a = j[i];
    if (!a.is_array() || a.size() != 3 || !a[1].is_number_integer() || !a[2].is_number_integer())
      throw ConfigError(here, "atom must be [coords, numerator, denominator]");
    const auto num = a[1].get<std::int64_t>();
    const auto den = a[2].get<std::int64_t>();
    if (den <= 0) throw ConfigError(here + "/2", "denominator must be positive");
    if (num <= 0) throw ConfigError(here + "/1", "weight must be positive");
    atoms.push_back({parse_element(g, a[0], here + "/0"), Rational(num, den)});
    total += atoms.back().weight;
    for (std::size_t k = 0; k + 1 < atoms.size(); ++k)
      if (atoms[k].element == atoms.back().element)
        throw ConfigError(here + "/0", "duplicate support element (also at entry " + std::to_string(k) + ")");
  }
  if (total != 1) throw ConfigError(at, "weights sum to " + to_string(total) + ", not 1");
  return FiniteMeasure(g, std::move(atoms));
}

MarkedSubgroup parse_subgroup(const Group& g, const json* j, const std::string& at) {
  try {
    if (!j) return nilpotent_core(g);
    const json& q = require(*j, "quotient", at);
    const std::string name = q.is_string() ? q.get<std::string>() : "";
    if (name == "whole") return MarkedSubgroup::whole(g);
    if (name == "core") return nilpotent_core(g);
    if (name == "mod2_sum") return MarkedSubgroup::even_sum(g);
    if (name == "rotation") return MarkedSubgroup::rotation_core(g);
    if (name == "mod") {
      const std::int64_t axis = get_int(*j, "axis", 0, at);
      const std::int64_t m = get_int(*j, "m", 2, at);
      if (axis < 0) throw ConfigError(at + "/axis", "axis must be nonnegative");
      return MarkedSubgroup::coordinate_modulus(g, static_cast<std::size_t>(axis), m);
    }
    throw ConfigError(at + "/quotient", "unknown quotient (whole, core, mod2_sum, rotation, mod)");
  } catch (const Error& e) {
    throw ConfigError(at, e.what());
  }
}

AffineHarmonic parse_function(const Group& g, const json& j, const std::string& at) {
  const std::size_t rank = static_cast<std::size_t>(g.abelian_rank());
  const json& phi_json = require(j, "phi", at);
  RationalMatrix phi;
  if (phi_json.is_array() && (phi_json.empty() || !phi_json[0].is_array())) {
    RationalVector row = parse_rational_vector(phi_json, at + "/phi");
    if (row.size() != rank) throw ConfigError(at + "/phi", "need " + std::to_string(rank) + " entries");
    phi = RationalMatrix(std::vector<RationalVector>{row}, rank);
  } else {
    phi = parse_rational_matrix(phi_json, rank, at + "/phi");
  }
  RationalVector c(phi.rows());
  if (const json* cj = optional_field(j, "c")) {
    c = cj->is_array() ? parse_rational_vector(*cj, at + "/c") : RationalVector{parse_rational_value(*cj, at + "/c")};
    if (c.size() != phi.rows()) throw ConfigError(at + "/c", "length must match the rows of phi");
  }
  return AffineHarmonic(g, std::move(c), std::move(phi));
}

GeneratingSet parse_generators(const Group& g, const json* j, const std::string& at) {
  if (!j || (j->is_string() && j->get<std::string>() == "default")) return g.default_generators();
  try {
    if (j->is_string() && j->get<std::string>() == "king") {
      if (!(g == Group::free_abelian(2))) throw ConfigError(at, "king moves exist on Z^2 only");
      return king_move_generators();
    }
    std::vector<Element> elements = parse_elements(g, *j, at);
    std::vector<std::string> names;
    for (const auto& e : elements) names.push_back(format_element(e));
    return GeneratingSet(g, std::move(elements), std::move(names));
  } catch (const Error& e) {
    throw ConfigError(at, e.what());
  }
}

namespace {

std::size_t index_field(const json& obj, const std::string& key, const std::string& at) {
  require(obj, key, at);
  const std::int64_t v = get_int(obj, key, -1, at);
  if (v < 0) throw ConfigError(at + "/" + key, "expected a nonnegative index");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::vector<QiPrimitive> parse_pipeline(const Group& source, const json& j, const std::string& at) {
  (void)source;
  if (!j.is_array()) throw ConfigError(at, "expected a list of stages");
  std::vector<QiPrimitive> out;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string here = at + "/" + std::to_string(i);
    const json& stage = j[i];
    if (!stage.is_object() || stage.size() != 1)
      throw ConfigError(here, "stage must be an object with one key: linear, translate, shear or swap");
    const std::string key = stage.begin().key();
    const json& body = stage.begin().value();
    const std::string inner = here + "/" + key;
    if (key == "linear") {
      if (!body.is_array() || body.empty()) throw ConfigError(inner, "expected an integer matrix");
      LatticeLinear lin;
      for (std::size_t r = 0; r < body.size(); ++r) {
        if (!body[r].is_array()) throw ConfigError(inner + "/" + std::to_string(r), "expected a row");
        std::vector<std::int64_t> row;
        for (std::size_t c = 0; c < body[r].size(); ++c) {
          if (!body[r][c].is_number_integer())
            throw ConfigError(inner + "/" + std::to_string(r) + "/" + std::to_string(c), "expected an integer");
          row.push_back(body[r][c].get<std::int64_t>());
        }
        lin.matrix.push_back(std::move(row));
      }
      out.emplace_back(std::move(lin));
    } else if (key == "translate") {
      if (!body.is_array()) throw ConfigError(inner, "expected coordinates");
      std::vector<std::int64_t> coords;
      for (std::size_t c = 0; c < body.size(); ++c) {
        if (!body[c].is_number_integer()) throw ConfigError(inner + "/" + std::to_string(c), "expected an integer");
        coords.push_back(body[c].get<std::int64_t>());
      }
      out.emplace_back(Translate{Element(std::span<const std::int64_t>(coords))});
    } else if (key == "shear") {
      Shear sh;
      sh.axis = index_field(body, "axis", inner);
      sh.of = index_field(body, "of", inner);
      const json& kind = require(body, "kind", inner);
      const std::string name = kind.is_string() ? kind.get<std::string>() : "";
      if (name == "sqrt_floor") sh.kind = ShearKind::kSqrtFloor;
      else if (name == "mod2") sh.kind = ShearKind::kMod2;
      else if (name == "zero") sh.kind = ShearKind::kZero;
      else throw ConfigError(inner + "/kind", "unknown shear kind (sqrt_floor, mod2, zero)");
      out.emplace_back(sh);
    } else if (key == "swap") {
      if (!body.is_array()) throw ConfigError(inner, "expected a permutation list");
      Swap sw;
      for (std::size_t c = 0; c < body.size(); ++c) {
        if (!body[c].is_number_integer() || body[c].get<std::int64_t>() < 0)
          throw ConfigError(inner + "/" + std::to_string(c), "expected a nonnegative index");
        sw.permutation.push_back(body[c].get<std::size_t>());
      }
      out.emplace_back(std::move(sw));
    } else {
      throw ConfigError(here, "unknown stage '" + key + "'");
    }
  }
  return out;
}

std::string format_coords(const Element& e) {
  std::string out;
  for (std::size_t i = 0; i < e.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(e[i]);
  }
  return out;
}

}  // namespace hg::cli
