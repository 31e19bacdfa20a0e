#pragma once

#include <random>
#include <vector>

#include "supereds/superpoly.hpp"

namespace supereds::random {

/// Random parity-homogeneous polynomial of total degree <= max_deg with
/// small integer and half-integer coefficients.
inline SuperPoly random_poly(std::mt19937& rng, const Context& ctx, int parity, std::size_t max_deg,
                             std::size_t max_terms = 4, const std::vector<std::size_t>& allowed = {}) {
  std::vector<std::size_t> gens = allowed;
  if (gens.empty())
    for (std::size_t k = 0; k < ctx->size(); ++k) gens.push_back(k);
  std::uniform_int_distribution<int> coef(-3, 3), den(1, 2), nterms(1, static_cast<int>(max_terms));
  std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1), deg(0, max_deg);
  SuperPoly p(ctx);
  const int want = nterms(rng);
  for (int t = 0, tries = 0; t < want && tries < 200; ++tries) {
    Monomial m(ctx->size(), 0);
    std::size_t d = deg(rng);
    for (std::size_t k = 0; k < d; ++k) {
      auto g = gens[pick(rng)];
      if (ctx->is_odd(g) && m[g]) continue;
      ++m[g];
    }
    if (supereds::detail::monomial_parity(ctx->odd_mask(), m) != parity) continue;
    int c = coef(rng);
    if (c == 0) continue;
    p += SuperPoly::monomial(ctx, m, Scalar::ratio(c, den(rng)));
    ++t;
  }
  return p;
}

}  // namespace supereds::random
