#pragma once

#include <string>
#include <vector>

#include "supereds/superpoly.hpp"

namespace supereds {

/// Canonical coordinates q_1..q_n, p_1..p_n (even) and xi_1..xi_m (odd)
/// of po(2n|m).
struct DarbouxFrame {
  std::vector<std::size_t> q, p, xi;

  static DarbouxFrame standard(const Context& ctx, std::size_t n, std::size_t m) {
    DarbouxFrame f;
    auto need = [&](const std::string& name, Parity par) {
      auto idx = ctx->find(name);
      if (!idx) throw PreconditionError("context lacks Darboux generator '" + name + "'");
      if ((*ctx)[*idx].parity != par)
        throw PreconditionError("Darboux generator '" + name + "' must be " + to_string(par));
      return *idx;
    };
    for (std::size_t i = 1; i <= n; ++i) {
      f.q.push_back(need("q" + std::to_string(i), Parity::even));
      f.p.push_back(need("p" + std::to_string(i), Parity::even));
    }
    for (std::size_t j = 1; j <= m; ++j) f.xi.push_back(need("xi" + std::to_string(j), Parity::odd));
    return f;
  }
};

/// Even q_1..q_n paired with odd pi_1..pi_n: the Buttin superalgebra b(n).
struct OddDarbouxFrame {
  std::vector<std::size_t> q, pi;

  static OddDarbouxFrame standard(const Context& ctx, std::size_t n) {
    OddDarbouxFrame f;
    for (std::size_t i = 1; i <= n; ++i) {
      auto qi = ctx->find("q" + std::to_string(i));
      auto pii = ctx->find("pi" + std::to_string(i));
      if (!qi || !pii) throw PreconditionError("context lacks the pair q" + std::to_string(i) + "/pi" + std::to_string(i));
      if ((*ctx)[*qi].parity != Parity::even || (*ctx)[*pii].parity != Parity::odd)
        throw PreconditionError("antibracket needs even q_i and odd pi_i");
      f.q.push_back(*qi);
      f.pi.push_back(*pii);
    }
    return f;
  }
};

/// {f, g} = sum_i (f_q g_p - f_p g_q) + (-1)^{p(f)} sum_j f_xi g_xi, left derivatives.
inline SuperPoly poisson_bracket(const SuperPoly& f, const SuperPoly& g, const DarbouxFrame& frame) {
  SuperPoly r;
  if (f.is_zero() || g.is_zero()) return SuperPoly(f.is_zero() ? g.context() : f.context());
  for (std::size_t i = 0; i < frame.q.size(); ++i) {
    r += f.partial(frame.q[i]) * g.partial(frame.p[i]);
    r -= f.partial(frame.p[i]) * g.partial(frame.q[i]);
  }
  SuperPoly odd_part;
  for (auto x : frame.xi) odd_part += f.partial(x) * g.partial(x);
  if (f.parity_bit()) r -= odd_part;
  else r += odd_part;
  return r;
}

inline SuperPoly poisson_bracket(const SuperPoly& f, const SuperPoly& g, std::size_t n, std::size_t m) {
  const Context& ctx = f.context() ? f.context() : g.context();
  return poisson_bracket(f, g, DarbouxFrame::standard(ctx, n, m));
}

/// {f, g} = sum_i (f_q g_pi + (-1)^{p(f)} f_pi g_q), left derivatives. Odd bracket.
inline SuperPoly antibracket(const SuperPoly& f, const SuperPoly& g, const OddDarbouxFrame& frame) {
  if (f.is_zero() || g.is_zero()) return SuperPoly(f.is_zero() ? g.context() : f.context());
  const bool f_odd = f.parity_bit();
  SuperPoly r;
  for (std::size_t i = 0; i < frame.q.size(); ++i) {
    r += f.partial(frame.q[i]) * g.partial(frame.pi[i]);
    SuperPoly t = f.partial(frame.pi[i]) * g.partial(frame.q[i]);
    if (f_odd) r -= t;
    else r += t;
  }
  return r;
}

inline SuperPoly antibracket(const SuperPoly& f, const SuperPoly& g, std::size_t n) {
  const Context& ctx = f.context() ? f.context() : g.context();
  return antibracket(f, g, OddDarbouxFrame::standard(ctx, n));
}

}  // namespace supereds
