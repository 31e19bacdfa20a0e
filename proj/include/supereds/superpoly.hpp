#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "supereds/context.hpp"
#include "supereds/error.hpp"
#include "supereds/scalar.hpp"

namespace supereds {

/// Dense exponent vector, one slot per context generator. Odd slots are 0/1.
using Monomial = std::vector<std::uint16_t>;

namespace detail {

/// Product of two normal-ordered monomials. Returns the sign (+1/-1) picked
/// up by sorting odd factors, or 0 when an odd generator repeats.
inline int multiply_monomials(const std::vector<bool>& odd, const Monomial& a, const Monomial& b,
                              Monomial& out) {
  const std::size_t n = a.size();
  out.resize(n);
  int parity = 0;
  int odd_in_a_after = 0;
  for (std::size_t k = n; k-- > 0;) {
    if (odd[k]) {
      if (a[k] && b[k]) return 0;
      if (b[k]) parity ^= (odd_in_a_after & 1);
      if (a[k]) ++odd_in_a_after;
    }
    out[k] = static_cast<std::uint16_t>(a[k] + b[k]);
  }
  return parity ? -1 : 1;
}

inline int monomial_parity(const std::vector<bool>& odd, const Monomial& m) {
  int p = 0;
  for (std::size_t k = 0; k < m.size(); ++k)
    if (odd[k]) p ^= (m[k] & 1);
  return p;
}

}  // namespace detail

/// Element of the free supercommutative algebra over a context, with exact
/// coefficients. Terms are stored normal-ordered (context order) with the
/// Koszul sign folded into the coefficient; zero coefficients are never kept.
///
/// A default-constructed SuperPoly is the zero of every context.
class SuperPoly {
 public:
  using TermMap = std::map<Monomial, Scalar>;

  SuperPoly() = default;
  explicit SuperPoly(Context ctx) : ctx_(std::move(ctx)) {}

  static SuperPoly constant(Context ctx, const Scalar& c) {
    SuperPoly p(std::move(ctx));
    p.add_term(Monomial(p.ctx_->size(), 0), c);
    return p;
  }
  static SuperPoly generator(Context ctx, std::size_t idx) {
    SuperPoly p(std::move(ctx));
    Monomial m(p.ctx_->size(), 0);
    m.at(idx) = 1;
    p.add_term(std::move(m), Scalar(1));
    return p;
  }
  static SuperPoly generator(Context ctx, std::string_view name) {
    auto idx = ctx->index(name);
    return generator(std::move(ctx), idx);
  }
  static SuperPoly monomial(Context ctx, Monomial m, const Scalar& c = Scalar(1)) {
    SuperPoly p(std::move(ctx));
    p.add_term(std::move(m), c);
    return p;
  }

  const Context& context() const noexcept { return ctx_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }

  /// Adds c * m, where m is already normal-ordered.
  void add_term(Monomial m, const Scalar& c) {
    if (c.is_zero()) return;
    require_context();
    if (m.size() != ctx_->size()) throw PreconditionError("monomial length does not match context");
    if (!c.is_real() && !ctx_->gaussian())
      throw PreconditionError("imaginary coefficient in a context without Q(i) enabled");
    for (std::size_t k = 0; k < m.size(); ++k)
      if (ctx_->is_odd(k) && m[k] > 1) return;  // odd square vanishes
    auto [it, inserted] = terms_.try_emplace(std::move(m), c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  Parity parity() const {
    if (terms_.empty()) return Parity::even;
    int p = -1;
    for (const auto& [m, c] : terms_) {
      int q = detail::monomial_parity(ctx_->odd_mask(), m);
      if (p < 0) p = q;
      else if (p != q) return Parity::mixed;
    }
    return from_bit(p);
  }
  /// Parity bit; throws on mixed parity.
  int parity_bit() const {
    Parity p = parity();
    if (p == Parity::mixed) throw ParityError("operation requires a parity-homogeneous element");
    return bit(p);
  }

  bool is_constant() const {
    if (terms_.size() > 1) return false;
    if (terms_.empty()) return true;
    for (auto e : terms_.begin()->first)
      if (e) return false;
    return true;
  }
  Scalar constant_term() const {
    if (terms_.empty()) return Scalar();
    auto it = terms_.begin();
    for (auto e : it->first)
      if (e) return Scalar();
    return it->second;
  }
  /// Coefficient of a given normal-ordered monomial.
  Scalar coefficient(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Scalar() : it->second;
  }

  bool uses(std::size_t gen) const {
    for (const auto& [m, c] : terms_)
      if (m[gen]) return true;
    return false;
  }
  std::size_t degree_in(std::size_t gen) const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max<std::size_t>(d, m[gen]);
    return d;
  }
  std::size_t total_degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) {
      std::size_t s = 0;
      for (auto e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  SuperPoly operator-() const {
    SuperPoly r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  SuperPoly& operator+=(const SuperPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, c);
    return *this;
  }
  SuperPoly& operator-=(const SuperPoly& o) {
    adopt(o);
    for (const auto& [m, c] : o.terms_) add_term(m, -c);
    return *this;
  }
  SuperPoly& operator*=(const Scalar& s) {
    if (s.is_zero()) {
      terms_.clear();
      return *this;
    }
    if (!s.is_real() && ctx_ && !ctx_->gaussian())
      throw PreconditionError("imaginary coefficient in a context without Q(i) enabled");
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  friend SuperPoly operator+(SuperPoly a, const SuperPoly& b) { return a += b; }
  friend SuperPoly operator-(SuperPoly a, const SuperPoly& b) { return a -= b; }
  friend SuperPoly operator*(SuperPoly a, const Scalar& s) { return a *= s; }
  friend SuperPoly operator*(const Scalar& s, SuperPoly a) { return a *= s; }

  /// Supercommutative product.
  friend SuperPoly operator*(const SuperPoly& a, const SuperPoly& b) {
    SuperPoly r(pick_context(a, b));
    if (a.is_zero() || b.is_zero()) return r;
    const auto& odd = r.ctx_->odd_mask();
    Monomial m;
    for (const auto& [ma, ca] : a.terms_)
      for (const auto& [mb, cb] : b.terms_) {
        int s = detail::multiply_monomials(odd, ma, mb, m);
        if (s == 0) continue;
        Scalar c = ca * cb;
        if (s < 0) c = -c;
        r.add_term(m, c);
      }
    return r;
  }
  SuperPoly& operator*=(const SuperPoly& o) { return *this = *this * o; }

  friend bool operator==(const SuperPoly& a, const SuperPoly& b) {
    if (a.is_zero() && b.is_zero()) return true;
    if (!same_context(a.ctx_, b.ctx_)) return false;
    return a.terms_ == b.terms_;
  }

  SuperPoly pow(unsigned e) const {
    require_context();
    SuperPoly r = constant(ctx_, Scalar(1));
    for (unsigned k = 0; k < e; ++k) r *= *this;
    return r;
  }

  /// Left partial derivative with respect to generator `gen`.
  SuperPoly partial(std::size_t gen) const {
    SuperPoly r(ctx_);
    if (is_zero()) return r;
    if (gen >= ctx_->size()) throw UnknownGenerator("#" + std::to_string(gen));
    const auto& odd = ctx_->odd_mask();
    for (const auto& [m, c] : terms_) {
      if (!m[gen]) continue;
      Monomial mm = m;
      Scalar cc = c * Scalar(static_cast<long>(m[gen]));
      if (odd[gen]) {
        int before = 0;
        for (std::size_t k = 0; k < gen; ++k)
          if (odd[k]) before += m[k];
        if (before & 1) cc = -cc;
      }
      --mm[gen];
      r.add_term(std::move(mm), cc);
    }
    return r;
  }
  SuperPoly partial(std::string_view name) const {
    require_context();
    return partial(ctx_->index(name));
  }

  /// Simultaneous substitution gen -> image. Images must live in the same
  /// context and have the parity of the generator they replace.
  SuperPoly substitute(const std::map<std::size_t, SuperPoly>& bindings) const {
    if (is_zero()) return *this;
    for (const auto& [g, img] : bindings) {
      if (g >= ctx_->size()) throw UnknownGenerator("#" + std::to_string(g));
      if (!img.is_zero()) {
        if (!same_context(img.ctx_, ctx_)) throw ContextMismatch();
        Parity p = img.parity();
        if (p != (*ctx_)[g].parity)
          throw ParityError("binding for '" + (*ctx_)[g].name + "' must be " +
                            to_string((*ctx_)[g].parity));
      }
    }
    SuperPoly r(ctx_);
    for (const auto& [m, c] : terms_) {
      SuperPoly term = constant(ctx_, c);
      Monomial rest(m.size(), 0);
      bool rest_used = false;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (!m[k]) continue;
        auto it = bindings.find(k);
        if (it == bindings.end()) {
          // accumulate untouched generators; they are already in normal order
          // relative to each other, so we flush them only when a bound one appears
          rest[k] = m[k];
          rest_used = true;
          continue;
        }
        if (rest_used) {
          term = term * monomial(ctx_, rest);
          std::fill(rest.begin(), rest.end(), 0);
          rest_used = false;
        }
        term = term * it->second.pow(m[k]);
        if (term.is_zero()) break;
      }
      if (rest_used && !term.is_zero()) term = term * monomial(ctx_, rest);
      r += term;
    }
    return r;
  }

  /// Re-expresses the polynomial in another context, mapping generators by
  /// name. Every generator used must exist there with the same parity.
  SuperPoly rebase(const Context& target) const {
    if (same_context(ctx_, target)) {
      SuperPoly r = *this;
      r.ctx_ = target;
      return r;
    }
    SuperPoly r(target);
    if (is_zero()) return r;
    std::vector<std::size_t> map(ctx_->size());
    for (std::size_t k = 0; k < ctx_->size(); ++k) {
      bool used = uses(k);
      auto t = target->find((*ctx_)[k].name);
      if (!t) {
        if (used) throw UnknownGenerator((*ctx_)[k].name);
        continue;
      }
      if ((*target)[*t].parity != (*ctx_)[k].parity)
        throw ParityError("generator '" + (*ctx_)[k].name + "' changes parity under rebase");
      map[k] = *t;
    }
    for (const auto& [m, c] : terms_) {
      // Build the product factor by factor so the Koszul sign is recomputed
      // for the target order.
      SuperPoly term = constant(target, c);
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (!m[k]) continue;
        Monomial g(target->size(), 0);
        g[map[k]] = m[k];
        term = term * monomial(target, std::move(g));
      }
      r += term;
    }
    return r;
  }

  /// Text in the expression language, e.g. "du - p1*dx". Parsing it back
  /// yields the same normalized value.
  std::string str() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [m, c] : terms_) {
      bool is_const = true;
      for (auto e : m)
        if (e) is_const = false;
      std::string mono;
      for (std::size_t k = 0; k < m.size(); ++k) {
        if (!m[k]) continue;
        if (!mono.empty()) mono += "*";
        mono += (*ctx_)[k].name;
        if (m[k] > 1) mono += "^" + std::to_string(m[k]);
      }
      bool negative = false;
      std::string coeff;
      if (c.is_real()) {
        negative = sgn(c.re()) < 0;
        mpq_class a = abs(c.re());
        if (a != 1 || is_const) coeff = a.get_str();
      } else if (sgn(c.re()) == 0) {
        negative = sgn(c.im()) < 0;
        mpq_class a = abs(c.im());
        coeff = (a == 1 ? std::string() : a.get_str() + "*") + "i";
      } else {
        coeff = "(" + c.re().get_str() + (sgn(c.im()) < 0 ? " - " : " + ");
        mpq_class a = abs(c.im());
        coeff += (a == 1 ? std::string() : a.get_str() + "*") + "i)";
      }
      if (first) os << (negative ? "-" : "");
      else os << (negative ? " - " : " + ");
      first = false;
      os << coeff;
      if (!coeff.empty() && !mono.empty()) os << "*";
      os << mono;
    }
    return os.str();
  }

 private:
  void require_context() const {
    if (!ctx_) throw PreconditionError("polynomial has no generator context");
  }
  void adopt(const SuperPoly& o) {
    if (!o.ctx_) return;
    if (!ctx_) {
      ctx_ = o.ctx_;
      return;
    }
    if (!same_context(ctx_, o.ctx_)) throw ContextMismatch();
  }
  static Context pick_context(const SuperPoly& a, const SuperPoly& b) {
    if (!a.ctx_) return b.ctx_;
    if (!b.ctx_) return a.ctx_;
    if (!same_context(a.ctx_, b.ctx_)) throw ContextMismatch();
    return a.ctx_;
  }

  Context ctx_;
  TermMap terms_;
};

inline std::ostream& operator<<(std::ostream& os, const SuperPoly& p) { return os << p.str(); }

/// Graded commutator ab - (-1)^{p(a)p(b)} ba.
inline SuperPoly supercommutator(const SuperPoly& a, const SuperPoly& b) {
  int s = a.parity_bit() * b.parity_bit();
  return s ? a * b + b * a : a * b - b * a;
}

}  // namespace supereds
