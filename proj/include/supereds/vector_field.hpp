#pragma once

#include <string>
#include <vector>

#include "supereds/superpoly.hpp"

namespace supereds {

/// Derivation X = sum_c X^c d/d(xi_c) over the coordinates of a context.
/// Components are indexed by position in ContextData::coordinates().
class VectorField {
 public:
  VectorField() = default;
  explicit VectorField(Context ctx) : ctx_(std::move(ctx)), comp_(ctx_->coordinates().size()) {}

  /// The coordinate field d/d(name).
  static VectorField partial(const Context& ctx, std::string_view name) {
    VectorField X(ctx);
    X.set(name, SuperPoly::constant(ctx, Scalar(1)));
    return X;
  }

  const Context& context() const noexcept { return ctx_; }
  std::size_t dim() const noexcept { return comp_.size(); }
  const SuperPoly& operator[](std::size_t pos) const { return comp_.at(pos); }
  const std::vector<SuperPoly>& components() const noexcept { return comp_; }

  void set_component(std::size_t pos, SuperPoly value) {
    if (!value.is_zero() && !same_context(value.context(), ctx_)) throw ContextMismatch();
    comp_.at(pos) = std::move(value);
  }
  void set(std::string_view coord, SuperPoly value) { set_component(position(coord), std::move(value)); }
  const SuperPoly& get(std::string_view coord) const { return comp_.at(position(coord)); }

  std::size_t position(std::string_view coord) const {
    auto g = ctx_->index(coord);
    const auto& cs = ctx_->coordinates();
    for (std::size_t k = 0; k < cs.size(); ++k)
      if (cs[k] == g) return k;
    throw PreconditionError("'" + std::string(coord) + "' is not a coordinate");
  }

  bool is_zero() const {
    for (const auto& c : comp_)
      if (!c.is_zero()) return false;
    return true;
  }

  /// Parity of the field: p(X^c) + p(xi_c), which must agree for all c.
  Parity parity() const {
    int p = -1;
    const auto& cs = ctx_->coordinates();
    for (std::size_t k = 0; k < comp_.size(); ++k) {
      if (comp_[k].is_zero()) continue;
      Parity q = comp_[k].parity();
      if (q == Parity::mixed) return Parity::mixed;
      int b = bit(q) ^ (ctx_->is_odd(cs[k]) ? 1 : 0);
      if (p < 0) p = b;
      else if (p != b) return Parity::mixed;
    }
    return p < 0 ? Parity::even : from_bit(p);
  }
  int parity_bit() const {
    Parity p = parity();
    if (p == Parity::mixed) throw ParityError("vector field is not parity-homogeneous");
    return bit(p);
  }

  /// X(f) = sum_c X^c * d f / d xi_c (left derivatives).
  SuperPoly apply(const SuperPoly& f) const {
    SuperPoly r(ctx_);
    if (f.is_zero()) return r;
    const auto& cs = ctx_->coordinates();
    for (std::size_t k = 0; k < comp_.size(); ++k)
      if (!comp_[k].is_zero()) r += comp_[k] * f.partial(cs[k]);
    return r;
  }

  VectorField& operator+=(const VectorField& o) {
    check(o);
    for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] += o.comp_[k];
    return *this;
  }
  VectorField& operator-=(const VectorField& o) {
    check(o);
    for (std::size_t k = 0; k < comp_.size(); ++k) comp_[k] -= o.comp_[k];
    return *this;
  }
  friend VectorField operator+(VectorField a, const VectorField& b) { return a += b; }
  friend VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }
  friend VectorField operator-(VectorField X) {
    for (auto& c : X.comp_) c = -c;
    return X;
  }
  friend VectorField operator*(const Scalar& s, VectorField X) {
    for (auto& c : X.comp_) c *= s;
    return X;
  }
  /// Left multiplication by a function: (fX)^c = f X^c.
  friend VectorField operator*(const SuperPoly& f, VectorField X) {
    for (auto& c : X.comp_) c = f * c;
    return X;
  }
  friend bool operator==(const VectorField& a, const VectorField& b) {
    if (a.comp_.size() != b.comp_.size()) return false;
    for (std::size_t k = 0; k < a.comp_.size(); ++k)
      if (!(a.comp_[k] == b.comp_[k])) return false;
    return true;
  }

  /// Text like "d/dx + p1*d/du"; zero prints as "0".
  std::string str() const {
    std::string s;
    const auto& cs = ctx_->coordinates();
    for (std::size_t k = 0; k < comp_.size(); ++k) {
      if (comp_[k].is_zero()) continue;
      if (!s.empty()) s += " + ";
      std::string c = comp_[k].str();
      std::string d = "d/d" + (*ctx_)[cs[k]].name;
      if (c == "1") s += d;
      else if (comp_[k].size() == 1 && c.front() != '-') s += c + "*" + d;
      else s += "(" + c + ")*" + d;
    }
    return s.empty() ? "0" : s;
  }

 private:
  void check(const VectorField& o) const {
    if (!same_context(ctx_, o.ctx_)) throw ContextMismatch("vector fields live on different domains");
  }

  Context ctx_;
  std::vector<SuperPoly> comp_;
};

/// Superbracket [X, Y] = XY - (-1)^{p(X)p(Y)} YX.
inline VectorField bracket(const VectorField& X, const VectorField& Y) {
  if (!same_context(X.context(), Y.context())) throw ContextMismatch("vector fields live on different domains");
  const int s = X.parity_bit() * Y.parity_bit();
  VectorField R(X.context());
  for (std::size_t k = 0; k < X.dim(); ++k) {
    SuperPoly v = X.apply(Y[k]);
    SuperPoly w = Y.apply(X[k]);
    R.set_component(k, s ? v + w : v - w);
  }
  return R;
}

}  // namespace supereds
