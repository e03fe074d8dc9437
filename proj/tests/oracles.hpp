#pragma once

// Brute-force reference computations used only by the tests. None of these
// share code paths with the library beyond its basic data types.

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <vector>

#include "gwpower/galois_sets.hpp"
#include "gwpower/gw_ring.hpp"

namespace oracle
{

inline std::int64_t modp(std::int64_t x, std::int64_t m)
{
  x %= m;
  return x < 0 ? x + m : x;
}

inline int valuation(std::int64_t x, std::int64_t p)
{
  int v = 0;
  while (x != 0 && x % p == 0) {
    x /= p;
    ++v;
  }
  return v;
}

/// Whether a x^2 + b y^2 = z^2 has a nonzero solution over Q_p, for nonzero
/// a, b with p-adic valuation at most 1. Searches residues mod p^K for a
/// primitive solution satisfying the hypothesis of Hensel's lemma.
inline bool local_conic_solvable(std::int64_t a, std::int64_t b, std::int64_t p)
{
  int v2 = p == 2 ? 1 : 0;
  int emax = v2 + 1;
  int K = 2 * emax + 1;
  std::int64_t m = 1;
  for (int i = 0; i < K; ++i)
    m *= p;
  std::int64_t coef[3] = {a, b, -1};
  for (std::int64_t x = 0; x < m; ++x)
    for (std::int64_t y = 0; y < m; ++y)
      for (std::int64_t z = 0; z < m; ++z) {
        std::int64_t c[3] = {x, y, z};
        if (x % p == 0 && y % p == 0 && z % p == 0)
          continue;
        if (modp(a * x * x + b * y * y - z * z, m) != 0)
          continue;
        for (int i = 0; i < 3; ++i) {
          if (c[i] % p == 0)
            continue;
          int e = v2 + valuation(coef[i], p);
          if (2 * e + 1 <= K)
            return true;
        }
      }
  return false;
}

inline int local_hilbert(std::int64_t a, std::int64_t b, std::int64_t p)
{
  return local_conic_solvable(a, b, p) ? 1 : -1;
}

inline int real_hilbert(std::int64_t a, std::int64_t b)
{
  return (a < 0 && b < 0) ? -1 : 1;
}

/// Nonzero integer solution of a x^2 + b y^2 = c z^2 with all coordinates
/// bounded by `bound`.
inline bool conic_has_small_point(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t bound)
{
  for (std::int64_t x = 0; x <= bound; ++x)
    for (std::int64_t y = 0; y <= bound; ++y) {
      std::int64_t lhs = a * x * x + b * y * y;
      if (lhs % c != 0)
        continue;
      std::int64_t q = lhs / c;
      if (q < 0)
        continue;
      std::int64_t z = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(q))));
      if (z * z == q && (x != 0 || y != 0 || z != 0))
        return true;
    }
  return false;
}

/// Global solvability of a x^2 + b y^2 = z^2 for coprime squarefree a, b,
/// complete by Holzer's bound on the smallest solution.
inline bool global_conic_solvable(std::int64_t a, std::int64_t b)
{
  std::int64_t bound =
      static_cast<std::int64_t>(std::sqrt(static_cast<double>(std::llabs(a) * std::llabs(b)))) + 2;
  return conic_has_small_point(a, b, 1, bound);
}

/// N(c) = #{x in F_p^m : sum d_i x_i^2 = c} for every c in F_p.
inline std::vector<std::int64_t> fp_value_counts(const std::vector<std::int64_t>& diag, std::int64_t p)
{
  std::vector<std::int64_t> counts(static_cast<std::size_t>(p), 0);
  std::vector<std::int64_t> x(diag.size(), 0);
  while (true) {
    std::int64_t v = 0;
    for (std::size_t i = 0; i < diag.size(); ++i)
      v = modp(v + diag[i] * x[i] * x[i], p);
    ++counts[static_cast<std::size_t>(v)];
    std::size_t k = 0;
    while (k < x.size() && ++x[k] == p)
      x[k++] = 0;
    if (k == x.size())
      break;
  }
  return counts;
}

/// Equality in GW(F_p) by comparing value counts of P_x + N_y and P_y + N_x,
/// where P and N are the positive and negative parts.
inline bool fp_equal(const gwpower::GWElement& x, const gwpower::GWElement& y, std::int64_t p)
{
  std::vector<std::int64_t> lhs, rhs;
  auto spread = [](const gwpower::GWElement& e, std::vector<std::int64_t>& pos, std::vector<std::int64_t>& neg) {
    for (const auto& [rep, c] : e.terms())
      for (std::int64_t i = 0; i < std::llabs(c); ++i)
        (c > 0 ? pos : neg).push_back(rep);
  };
  std::vector<std::int64_t> px, nx, py, ny;
  spread(x, px, nx);
  spread(y, py, ny);
  lhs = px;
  lhs.insert(lhs.end(), ny.begin(), ny.end());
  rhs = py;
  rhs.insert(rhs.end(), nx.begin(), nx.end());
  if (lhs.size() != rhs.size())
    return false;
  return fp_value_counts(lhs, p) == fp_value_counts(rhs, p);
}

/// Equality of rank-2 forms <a, b> and <c, d> over Q: same discriminant and
/// <a, b> represents c.
inline bool rank2_isometric_q(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d)
{
  std::int64_t disc = a * b * c * d;
  std::int64_t r = static_cast<std::int64_t>(std::llround(std::sqrt(static_cast<double>(std::llabs(disc)))));
  if (disc < 0 || r * r != disc)
    return false;
  return conic_has_small_point(a, b, c, 40);
}

/// Number of multisets of size n from m points, by enumeration.
inline std::int64_t multiset_count(int m, int n)
{
  if (n == 0)
    return 1;
  if (m == 0)
    return 0;
  // Choose how many copies of the last point.
  std::int64_t total = 0;
  for (int k = 0; k <= n; ++k)
    total += multiset_count(m - 1, n - k);
  return total;
}

/// Orbits of (Z/2)^r on the n-th symmetric power of an action, counted with
/// Burnside's lemma from the cycle type of each group element.
inline std::int64_t burnside_sym_orbit_count(const gwpower::Action& x, int n)
{
  int r = static_cast<int>(x.gens.size());
  std::int64_t total = 0;
  for (gwpower::f2::Vec g = 0; g < (gwpower::f2::Vec(1) << r); ++g) {
    // Fixed multisets of size n: coefficient of t^n in prod over cycles 1/(1 - t^len).
    std::vector<int> seen(static_cast<std::size_t>(x.size), 0);
    std::vector<std::int64_t> series(static_cast<std::size_t>(n) + 1, 0);
    series[0] = 1;
    for (int p = 0; p < x.size; ++p) {
      if (seen[static_cast<std::size_t>(p)])
        continue;
      int len = 0;
      for (int q = p; !seen[static_cast<std::size_t>(q)]; q = x.act(g, q)) {
        seen[static_cast<std::size_t>(q)] = 1;
        ++len;
      }
      for (int k = len; k <= n; ++k)
        series[static_cast<std::size_t>(k)] += series[static_cast<std::size_t>(k - len)];
    }
    total += series[static_cast<std::size_t>(n)];
  }
  return total >> r;
}

/// Number of aperiodic necklaces of length n over k letters, by enumerating words.
inline std::int64_t aperiodic_necklaces(int k, int n)
{
  std::int64_t words = 1;
  for (int i = 0; i < n; ++i)
    words *= k;
  std::int64_t aperiodic = 0;
  std::vector<int> w(static_cast<std::size_t>(n));
  for (std::int64_t code = 0; code < words; ++code) {
    std::int64_t c = code;
    for (int i = 0; i < n; ++i) {
      w[static_cast<std::size_t>(i)] = static_cast<int>(c % k);
      c /= k;
    }
    bool periodic = false;
    for (int d = 1; d < n && !periodic; ++d) {
      if (n % d != 0)
        continue;
      bool same = true;
      for (int i = 0; i < n && same; ++i)
        same = w[static_cast<std::size_t>(i)] == w[static_cast<std::size_t>((i + d) % n)];
      periodic = same;
    }
    aperiodic += periodic ? 0 : 1;
  }
  return aperiodic / n;
}

/// Non-factorial symmetric power of <d_1, ..., d_m> over F_p: the monomial
/// basis is orthogonal and x^alpha has length d^alpha.
inline gwpower::GWElement fp_monomial_sym(const std::vector<std::int64_t>& diag, int n, std::int64_t p)
{
  auto f = gwpower::FieldDescriptor::prime_field(p);
  gwpower::GWElement out = gwpower::GWElement::zero(f);
  std::vector<int> alpha(diag.size(), 0);
  std::function<void(std::size_t, int)> rec = [&](std::size_t i, int left) {
    if (i + 1 == diag.size()) {
      alpha[i] = left;
      std::int64_t v = 1;
      for (std::size_t j = 0; j < diag.size(); ++j)
        for (int e = 1; e <= alpha[j]; ++e)
          v = modp(v * diag[j], p);
      out += gwpower::GWElement::form(f, v);
      return;
    }
    for (int k = 0; k <= left; ++k) {
      alpha[i] = k;
      rec(i + 1, left - k);
    }
  };
  if (diag.empty())
    return n == 0 ? gwpower::GWElement::one(f) : out;
  rec(0, n);
  return out;
}

} // namespace oracle
