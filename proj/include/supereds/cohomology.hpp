#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <future>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "supereds/liesuper.hpp"
#include "supereds/linalg.hpp"

namespace supereds {

enum class CEModule { trivial, adjoint };

inline const char* to_string(CEModule m) { return m == CEModule::trivial ? "trivial" : "adjoint"; }

namespace ce {

/// Ghost monomial c^{i1} c^{i2} ... with i1 <= i2 <= ...; the ghost c^k has
/// parity p_k + 1, so ghosts of even elements appear at most once.
using Ghosts = std::vector<std::uint16_t>;

struct Cochain {
  Ghosts ghosts;
  std::size_t module = 0;
  friend bool operator<(const Cochain& a, const Cochain& b) {
    return a.ghosts != b.ghosts ? a.ghosts < b.ghosts : a.module < b.module;
  }
};

using WeightKey = std::vector<long>;

/// The Chevalley-Eilenberg complex: d = sum_k Q^k d/dc^k on ghosts, with
/// Q^k = -1/2 sum_ij (-1)^{p_i (p_j + 1)} c_ij^k c^i c^j, plus for the adjoint
/// module sum_i (-1)^{p_i |phi|} c^i phi (x) [e_i, m].
class Complex {
 public:
  Complex(const LieSuperAlgebra& L, CEModule mod) : L_(L), mod_(mod), n_(L.dim()) {
    for (std::size_t k = 0; k < n_; ++k) gpar_.push_back(1 - L.parity(k));
    Q_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j)
        for (const auto& [k, c] : L.bracket(i, j)) {
          int s = (L.parity(i) * (L.parity(j) + 1)) & 1;
          Scalar coef = Scalar::ratio(-1, 2) * c;
          if (s) coef = -coef;
          Ghosts a{static_cast<std::uint16_t>(i)}, b{static_cast<std::uint16_t>(j)};
          Ghosts out;
          int sg = mul(a, b, out);
          if (!sg) continue;
          Q_[k][out] += sg > 0 ? coef : -coef;
        }
    for (auto& q : Q_)
      for (auto it = q.begin(); it != q.end();)
        it = it->second.is_zero() ? q.erase(it) : std::next(it);
  }

  std::size_t module_dim() const { return mod_ == CEModule::trivial ? 1 : n_; }

  int ghost_parity(const Ghosts& g) const {
    int p = 0;
    for (auto k : g) p ^= gpar_[k];
    return p;
  }

  /// Weight of a cochain: minus the ghost weights plus the module weight.
  WeightKey weight(const Cochain& c) const {
    const auto& w = L_.weights();
    WeightKey r(w.empty() ? 0 : w.front().size(), 0);
    for (auto k : c.ghosts)
      for (std::size_t a = 0; a < r.size(); ++a) r[a] -= w[k][a];
    if (mod_ == CEModule::adjoint)
      for (std::size_t a = 0; a < r.size(); ++a) r[a] += w[c.module][a];
    return r;
  }

  /// All cochains of ghost degree i, in lexicographic order.
  std::vector<Cochain> basis(std::size_t degree) const {
    std::vector<Cochain> out;
    Ghosts cur;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
      if (cur.size() == degree) {
        for (std::size_t m = 0; m < module_dim(); ++m) out.push_back({cur, m});
        return;
      }
      for (std::size_t k = start; k < n_; ++k) {
        if (!cur.empty() && cur.back() == k && gpar_[k]) continue;
        cur.push_back(static_cast<std::uint16_t>(k));
        rec(k);
        cur.pop_back();
      }
    };
    rec(0);
    return out;
  }

  /// d applied to one basis cochain.
  std::map<Cochain, Scalar> apply(const Cochain& w) const {
    std::map<Cochain, Scalar> out;
    const auto& g = w.ghosts;
    for (std::size_t t = 0; t < g.size(); ++t) {
      if (t > 0 && g[t] == g[t - 1]) continue;
      const std::size_t k = g[t];
      if (Q_[k].empty()) continue;
      // left derivative d/dc^k
      int pre = 0;
      for (std::size_t s = 0; s < t; ++s) pre ^= gpar_[g[s]];
      std::size_t mult = 1;
      while (t + mult < g.size() && g[t + mult] == k) ++mult;
      Scalar f(static_cast<long>(mult));
      if (gpar_[k] & pre) f = -f;
      Ghosts rest = g;
      rest.erase(rest.begin() + static_cast<long>(t));
      for (const auto& [q, c] : Q_[k]) {
        Ghosts prod;
        int sg = mul(q, rest, prod);
        if (!sg) continue;
        Scalar v = c * f;
        out[{prod, w.module}] += sg > 0 ? v : -v;
      }
    }
    if (mod_ == CEModule::adjoint) {
      const int pw = ghost_parity(g);
      for (std::size_t i = 0; i < n_; ++i) {
        const auto& br = L_.bracket(i, w.module);
        if (br.empty()) continue;
        Ghosts prod;
        int sg = mul(Ghosts{static_cast<std::uint16_t>(i)}, g, prod);
        if (!sg) continue;
        if (L_.parity(i) & pw) sg = -sg;
        for (const auto& [l, c] : br) out[{prod, l}] += sg > 0 ? c : -c;
      }
    }
    for (auto it = out.begin(); it != out.end();) it = it->second.is_zero() ? out.erase(it) : std::next(it);
    return out;
  }

  /// Sparse matrix of d: C^i -> C^{i+1} restricted to the given bases. One
  /// row per source cochain; targets outside `target` must not occur.
  std::vector<linalg::ScalarRow> matrix(const std::vector<Cochain>& source, const std::vector<Cochain>& target) const {
    std::map<Cochain, std::size_t> idx;
    for (std::size_t k = 0; k < target.size(); ++k) idx.emplace(target[k], k);
    std::vector<linalg::ScalarRow> rows;
    rows.reserve(source.size());
    for (const auto& s : source) {
      linalg::ScalarRow r;
      for (auto& [c, v] : apply(s)) {
        auto it = idx.find(c);
        if (it == idx.end()) throw PreconditionError("differential leaves the chosen subcomplex");
        r.emplace_back(it->second, v);
      }
      std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      rows.push_back(std::move(r));
    }
    return rows;
  }

 private:
  /// Supercommutative product of two sorted ghost monomials; returns the
  /// sign (+1/-1) or 0 when an odd ghost repeats.
  int mul(const Ghosts& a, const Ghosts& b, Ghosts& out) const {
    out.clear();
    out.reserve(a.size() + b.size());
    int sign = 1;
    // parity of the elements of a not yet emitted
    int pending = 0;
    for (auto k : a) pending ^= gpar_[k];
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i] <= b[j])) {
        if (j < b.size() && a[i] == b[j] && gpar_[a[i]]) return 0;
        pending ^= gpar_[a[i]];
        out.push_back(a[i++]);
      } else {
        if (gpar_[b[j]] && pending) sign = -sign;
        out.push_back(b[j++]);
      }
    }
    return sign;
  }

  const LieSuperAlgebra& L_;
  CEModule mod_;
  std::size_t n_;
  std::vector<int> gpar_;
  std::vector<std::map<Ghosts, Scalar>> Q_;
};

inline std::vector<Cochain> filter(const Complex& C, const std::vector<Cochain>& all, const WeightKey& w) {
  std::vector<Cochain> out;
  for (const auto& c : all)
    if (C.weight(c) == w) out.push_back(c);
  return out;
}

}  // namespace ce

/// dim C^i = sum_{a+b=i} C(n0, a) C(n1 + b - 1, b) dim M.
inline std::size_t cochain_dimension(const LieSuperAlgebra& L, CEModule mod, std::size_t i) {
  const std::size_t n0 = L.even_dim(), n1 = L.dim() - n0;
  auto binom = [](std::size_t n, std::size_t k) -> std::size_t {
    if (k > n) return 0;
    std::size_t r = 1;
    for (std::size_t t = 1; t <= k; ++t) r = r * (n - k + t) / t;
    return r;
  };
  std::size_t total = 0;
  for (std::size_t a = 0; a <= i; ++a) {
    std::size_t b = i - a;
    std::size_t sym = n1 == 0 ? (b == 0 ? 1 : 0) : binom(n1 + b - 1, b);
    total += binom(n0, a) * sym;
  }
  return total * (mod == CEModule::trivial ? 1 : L.dim());
}

/// Per-degree data of one (sub)complex.
struct CohomologyReport {
  std::vector<std::size_t> h;
  std::vector<std::size_t> cochains;  // dim C^0..C^{imax+1}
  std::vector<std::size_t> ranks;     // rank d_0..d_imax
  double seconds = 0;
};

namespace detail {

inline CohomologyReport cohomology_of(const ce::Complex& C, const std::vector<std::vector<ce::Cochain>>& bases,
                                      std::size_t imax, bool parallel = true) {
  CohomologyReport rep;
  auto t0 = std::chrono::steady_clock::now();
  auto rank_of = [&](std::size_t i) {
    if (bases[i].empty() || bases[i + 1].empty()) return std::size_t{0};
    return linalg::rank(C.matrix(bases[i], bases[i + 1]));
  };
  if (parallel) {
    std::vector<std::future<std::size_t>> jobs;
    for (std::size_t i = 0; i <= imax; ++i) jobs.push_back(std::async(std::launch::async, rank_of, i));
    for (auto& j : jobs) rep.ranks.push_back(j.get());
  } else {
    for (std::size_t i = 0; i <= imax; ++i) rep.ranks.push_back(rank_of(i));
  }
  for (const auto& b : bases) rep.cochains.push_back(b.size());
  for (std::size_t i = 0; i <= imax; ++i)
    rep.h.push_back(bases[i].size() - rep.ranks[i] - (i ? rep.ranks[i - 1] : 0));
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace detail

inline CohomologyReport ce_cohomology_report(const LieSuperAlgebra& L, CEModule mod, std::size_t imax) {
  ce::Complex C(L, mod);
  std::vector<std::vector<ce::Cochain>> bases;
  for (std::size_t i = 0; i <= imax + 1; ++i) bases.push_back(C.basis(i));
  return detail::cohomology_of(C, bases, imax);
}

/// dim H^0..H^imax.
inline std::vector<std::size_t> ce_cohomology(const LieSuperAlgebra& L, CEModule mod, std::size_t imax) {
  return ce_cohomology_report(L, mod, imax).h;
}

/// Weighted computation. With a verified torus only the weight-zero
/// subcomplex is computed; with a grading but no torus every weight block
/// is computed separately and summed.
struct WeightedReport {
  bool toral = false;
  std::size_t blocks = 0;
  CohomologyReport total;
};

inline WeightedReport ce_cohomology_weighted_report(const LieSuperAlgebra& L, CEModule mod, std::size_t imax) {
  if (L.weights().empty()) throw PreconditionError("weighted cohomology needs weights");
  WeightedReport out;
  if (!L.torus().empty()) {
    if (!torus_diagonalizes(L)) throw PreconditionError("declared torus does not act by the declared weights");
    out.toral = true;
  } else if (!weights_grade(L)) {
    throw PreconditionError("weights do not grade the bracket");
  }
  auto t0 = std::chrono::steady_clock::now();
  ce::Complex C(L, mod);
  std::map<ce::WeightKey, std::vector<std::vector<ce::Cochain>>> blocks;
  const ce::WeightKey zero(L.weights().front().size(), 0);
  for (std::size_t i = 0; i <= imax + 1; ++i) {
    for (auto& c : C.basis(i)) {
      auto w = C.weight(c);
      if (out.toral && w != zero) continue;
      auto& b = blocks[w];
      b.resize(imax + 2);
      b[i].push_back(std::move(c));
    }
  }
  if (out.toral && blocks.empty()) blocks[zero].resize(imax + 2);
  out.blocks = blocks.size();
  std::vector<const std::vector<std::vector<ce::Cochain>>*> work;
  for (auto& [w, b] : blocks) work.push_back(&b);
  std::vector<CohomologyReport> reps(work.size());
  if (work.size() == 1) {
    reps[0] = detail::cohomology_of(C, *work[0], imax);
  } else {
    std::atomic<std::size_t> next{0};
    const std::size_t nthreads = std::min<std::size_t>(work.size(), std::max(1u, std::thread::hardware_concurrency()));
    std::vector<std::future<void>> pool;
    for (std::size_t t = 0; t < nthreads; ++t)
      pool.push_back(std::async(std::launch::async, [&] {
        for (std::size_t k; (k = next++) < work.size();) reps[k] = detail::cohomology_of(C, *work[k], imax, false);
      }));
    for (auto& p : pool) p.get();
  }
  out.total.h.assign(imax + 1, 0);
  out.total.ranks.assign(imax + 1, 0);
  out.total.cochains.assign(imax + 2, 0);
  for (const auto& r : reps) {
    for (std::size_t i = 0; i <= imax; ++i) {
      out.total.h[i] += r.h[i];
      out.total.ranks[i] += r.ranks[i];
    }
    for (std::size_t i = 0; i <= imax + 1; ++i) out.total.cochains[i] += r.cochains[i];
  }
  out.total.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline std::vector<std::size_t> ce_cohomology_weighted(const LieSuperAlgebra& L, CEModule mod, std::size_t imax) {
  return ce_cohomology_weighted_report(L, mod, imax).total.h;
}

/// Exact check that d_{i+1} d_i = 0 for i < imax.
inline bool ce_d_squared_zero(const LieSuperAlgebra& L, CEModule mod, std::size_t imax) {
  ce::Complex C(L, mod);
  for (std::size_t i = 0; i < imax; ++i) {
    auto b0 = C.basis(i), b1 = C.basis(i + 1), b2 = C.basis(i + 2);
    auto d0 = C.matrix(b0, b1);
    auto d1 = C.matrix(b1, b2);
    for (const auto& row : d0) {
      std::map<std::size_t, Scalar> acc;
      for (const auto& [c, v] : row)
        for (const auto& [c2, v2] : d1[c]) acc[c2] += v * v2;
      for (const auto& [c, v] : acc)
        if (!v.is_zero()) return false;
    }
  }
  return true;
}

struct BenchRecord {
  std::string name;
  CEModule module = CEModule::trivial;
  std::size_t imax = 0;
  std::vector<std::size_t> h;
  std::vector<std::size_t> cochains;
  std::vector<std::size_t> ranks;
  double naive_seconds = 0;
  std::optional<double> weighted_seconds;
  std::optional<std::size_t> blocks;
  std::optional<std::size_t> weighted_cochains;
  bool agree = true;
};

/// Times the full complex against the weight-decomposed one (when the
/// algebra carries a grading).
inline std::vector<BenchRecord> benchmark_cohomology(const std::vector<std::pair<std::string, LieSuperAlgebra>>& suite,
                                                     std::size_t imax, CEModule mod = CEModule::trivial) {
  std::vector<BenchRecord> out;
  for (const auto& [name, L] : suite) {
    BenchRecord r;
    r.name = name;
    r.module = mod;
    r.imax = imax;
    auto t0 = std::chrono::steady_clock::now();
    auto full = ce_cohomology_report(L, mod, imax);
    r.naive_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.h = full.h;
    r.cochains = full.cochains;
    r.ranks = full.ranks;
    if (!L.weights().empty()) {
      auto t1 = std::chrono::steady_clock::now();
      auto w = ce_cohomology_weighted_report(L, mod, imax);
      r.weighted_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t1).count();
      r.blocks = w.blocks;
      std::size_t tot = 0;
      for (auto c : w.total.cochains) tot += c;
      r.weighted_cochains = tot;
      r.agree = w.total.h == full.h;
    }
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace supereds
