#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "supereds/error.hpp"

namespace supereds {

enum class Parity { even, odd, mixed };

inline Parity flip(Parity p) {
  if (p == Parity::mixed) throw ParityError("cannot flip mixed parity");
  return p == Parity::even ? Parity::odd : Parity::even;
}
inline int bit(Parity p) {
  if (p == Parity::mixed) throw ParityError("mixed parity has no Z/2 value");
  return p == Parity::odd ? 1 : 0;
}
inline Parity from_bit(int b) { return (b & 1) ? Parity::odd : Parity::even; }
inline const char* to_string(Parity p) {
  switch (p) {
    case Parity::even: return "even";
    case Parity::odd: return "odd";
    default: return "mixed";
  }
}

/// How a generator takes part in the calculus of forms.
///   coordinate   - differentiated by d, vector fields and brackets
///   differential - dξ for a coordinate ξ, parity flipped
///   parameter    - a constant of the algebra (odd parameters, symbols)
enum class Role { coordinate, differential, parameter };

struct Generator {
  std::string name;
  Parity parity = Parity::even;
  std::optional<long> weight;
  Role role = Role::coordinate;
  /// Index of the paired differential (for coordinates) or coordinate (for
  /// differentials) inside the same context.
  std::optional<std::size_t> partner;
};

/// Immutable ordered generator list. The declaration order is the monomial
/// order. Shared between all polynomials built over it.
class ContextData {
 public:
  ContextData(std::vector<Generator> gens, bool gaussian) : gens_(std::move(gens)), gaussian_(gaussian) {
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      if (gens_[i].parity == Parity::mixed)
        throw ParityError("generator '" + gens_[i].name + "' must be even or odd");
      if (!index_.emplace(gens_[i].name, i).second)
        throw PreconditionError("duplicate generator name '" + gens_[i].name + "'");
      odd_.push_back(gens_[i].parity == Parity::odd);
      if (gens_[i].role == Role::coordinate) coords_.push_back(i);
    }
  }

  std::size_t size() const noexcept { return gens_.size(); }
  const Generator& operator[](std::size_t i) const { return gens_.at(i); }
  const std::vector<Generator>& generators() const noexcept { return gens_; }
  bool gaussian() const noexcept { return gaussian_; }
  bool is_odd(std::size_t i) const { return odd_[i]; }
  const std::vector<bool>& odd_mask() const noexcept { return odd_; }

  std::optional<std::size_t> find(std::string_view name) const {
    auto it = index_.find(std::string(name));
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }
  std::size_t index(std::string_view name) const {
    auto i = find(name);
    if (!i) throw UnknownGenerator(std::string(name));
    return *i;
  }

  /// Generator indices of all coordinates, in declaration order.
  const std::vector<std::size_t>& coordinates() const noexcept { return coords_; }

  std::size_t differential_of(std::size_t coord) const {
    const auto& g = gens_.at(coord);
    if (g.role != Role::coordinate || !g.partner)
      throw PreconditionError("'" + g.name + "' has no differential in this context");
    return *g.partner;
  }
  std::size_t coordinate_of(std::size_t diff) const {
    const auto& g = gens_.at(diff);
    if (g.role != Role::differential || !g.partner)
      throw PreconditionError("'" + g.name + "' is not a differential");
    return *g.partner;
  }
  bool has_differentials() const {
    for (auto c : coords_)
      if (gens_[c].partner) return true;
    return false;
  }

  bool same_as(const ContextData& o) const {
    if (this == &o) return true;
    if (gaussian_ != o.gaussian_ || gens_.size() != o.gens_.size()) return false;
    for (std::size_t i = 0; i < gens_.size(); ++i) {
      const auto& a = gens_[i];
      const auto& b = o.gens_[i];
      if (a.name != b.name || a.parity != b.parity || a.role != b.role || a.partner != b.partner ||
          a.weight != b.weight)
        return false;
    }
    return true;
  }

 private:
  std::vector<Generator> gens_;
  bool gaussian_;
  std::unordered_map<std::string, std::size_t> index_;
  std::vector<bool> odd_;
  std::vector<std::size_t> coords_;
};

using Context = std::shared_ptr<const ContextData>;

inline Context make_context(std::vector<Generator> gens, bool gaussian = false) {
  return std::make_shared<const ContextData>(std::move(gens), gaussian);
}

inline bool same_context(const Context& a, const Context& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return a->same_as(*b);
}

struct CoordinateSpec {
  std::string name;
  Parity parity = Parity::even;
  std::optional<long> weight = std::nullopt;
};

/// A superdomain: coordinates, one differential "d<name>" per coordinate
/// with flipped parity, then constant parameters. Coordinates come first so
/// that the function part of every normalized term precedes its
/// differential part.
inline Context make_domain(const std::vector<CoordinateSpec>& coords,
                           const std::vector<CoordinateSpec>& params = {}, bool gaussian = false) {
  std::vector<Generator> gens;
  const std::size_t n = coords.size();
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({coords[i].name, coords[i].parity, coords[i].weight, Role::coordinate, n + i});
  for (std::size_t i = 0; i < n; ++i)
    gens.push_back({"d" + coords[i].name, flip(coords[i].parity), coords[i].weight,
                    Role::differential, i});
  for (const auto& p : params) gens.push_back({p.name, p.parity, p.weight, Role::parameter, {}});
  return make_context(std::move(gens), gaussian);
}

/// Jet domain of a k-th order ODE: x, u, p1..pk, then the extra coefficient
/// functions, then `more` coordinates. Each extra function e also gets a
/// constant parameter e' standing for its x-derivative.
inline Context ode_domain(std::size_t order, const std::vector<std::string>& extras,
                          const std::vector<CoordinateSpec>& more = {},
                          const std::vector<CoordinateSpec>& params = {}, bool gaussian = false) {
  if (order < 1) throw PreconditionError("ODE order must be positive");
  std::vector<CoordinateSpec> coords{{"x"}, {"u"}};
  for (std::size_t i = 1; i <= order; ++i) coords.push_back({"p" + std::to_string(i)});
  for (const auto& e : extras) coords.push_back({e});
  for (const auto& c : more) coords.push_back(c);
  std::vector<CoordinateSpec> ps = params;
  for (const auto& e : extras) ps.push_back({e + "'"});
  return make_domain(coords, ps, gaussian);
}

/// A plain algebra: every generator is a coordinate without differential.
inline Context make_plain_context(const std::vector<CoordinateSpec>& gens_in, bool gaussian = false) {
  std::vector<Generator> gens;
  for (const auto& g : gens_in) gens.push_back({g.name, g.parity, g.weight, Role::coordinate, {}});
  return make_context(std::move(gens), gaussian);
}

}  // namespace supereds
