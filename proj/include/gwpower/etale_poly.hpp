#pragma once

#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "field.hpp"
#include "gw_ring.hpp"

namespace gwpower
{

/// Dense polynomial with rational coefficients, index = degree, no trailing zeros.
using RationalPoly = std::vector<Rational>;

namespace poly
{

inline void trim(RationalPoly& f)
{
  while (!f.empty() && f.back() == 0)
    f.pop_back();
}

inline RationalPoly derivative(const RationalPoly& f)
{
  RationalPoly d;
  for (std::size_t i = 1; i < f.size(); ++i)
    d.push_back(f[i] * static_cast<long long>(i));
  trim(d);
  return d;
}

inline RationalPoly remainder(RationalPoly a, const RationalPoly& b)
{
  if (b.empty())
    throw std::domain_error("polynomial division by zero");
  trim(a);
  while (a.size() >= b.size()) {
    Rational c = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i)
      a[i + shift] -= c * b[i];
    a.pop_back();
    trim(a);
  }
  return a;
}

inline RationalPoly gcd(RationalPoly a, RationalPoly b)
{
  trim(a);
  trim(b);
  while (!b.empty()) {
    RationalPoly r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  if (!a.empty()) {
    Rational lead = a.back();
    for (auto& c : a)
      c /= lead;
  }
  return a;
}

inline std::string to_string(const RationalPoly& f)
{
  if (f.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = f.size(); k-- > 0;) {
    const Rational& c = f[k];
    if (c == 0)
      continue;
    Rational mag = c < 0 ? Rational(-c) : c;
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    if (mag != 1 || k == 0)
      os << mag;
    if (k >= 1)
      os << 'x';
    if (k >= 2)
      os << '^' << k;
    first = false;
  }
  return os.str();
}

} // namespace poly

/// A monic separable polynomial f over Q, standing for the etale algebra Q[x]/(f).
class EtalePoly
{
public:
  explicit EtalePoly(RationalPoly f) : f_(std::move(f))
  {
    poly::trim(f_);
    if (f_.size() < 2)
      throw std::invalid_argument("polynomial must have positive degree");
    if (f_.back() != 1)
      throw std::invalid_argument("polynomial must be monic");
    if (poly::gcd(f_, poly::derivative(f_)).size() != 1)
      throw std::invalid_argument("polynomial is not squarefree");
  }

  const RationalPoly& coefficients() const { return f_; }
  int degree() const { return static_cast<int>(f_.size()) - 1; }
  std::string to_string() const { return poly::to_string(f_); }

  /// Power sums s_0..s_kmax of the roots, from Newton's identities.
  std::vector<Rational> power_sums(int kmax) const
  {
    int m = degree();
    std::vector<Rational> s(static_cast<std::size_t>(kmax) + 1);
    s[0] = m;
    // f = x^m + c_{m-1} x^{m-1} + ... + c_0
    auto c = [&](int i) -> const Rational& { return f_[static_cast<std::size_t>(i)]; };
    for (int k = 1; k <= kmax; ++k) {
      Rational acc = 0;
      for (int j = 1; j <= std::min(k - 1, m); ++j)
        acc += c(m - j) * s[static_cast<std::size_t>(k - j)];
      if (k <= m)
        acc += Rational(k) * c(m - k);
      s[static_cast<std::size_t>(k)] = -acc;
    }
    return s;
  }

  /// Gram matrix Tr(x^i x^j) = s_{i+j} in the power basis.
  std::vector<std::vector<Rational>> trace_gram() const
  {
    int m = degree();
    auto s = power_sums(2 * m - 2);
    std::vector<std::vector<Rational>> g(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(m)));
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = s[static_cast<std::size_t>(i + j)];
    return g;
  }

private:
  RationalPoly f_;
};

/// Diagonal entries of a form congruent to the symmetric matrix g over Q.
/// A zero diagonal with a nonzero off-diagonal entry g_ij is repaired by
/// adding row/column j to row/column i, which puts 2 g_ij on the diagonal.
inline std::vector<Rational> diagonalize_symmetric(std::vector<std::vector<Rational>> g)
{
  std::size_t m = g.size();
  std::vector<Rational> diag;
  for (std::size_t k = 0; k < m; ++k) {
    std::size_t piv = m;
    for (std::size_t i = k; i < m; ++i)
      if (g[i][i] != 0) {
        piv = i;
        break;
      }
    if (piv == m) {
      std::size_t pi = m, pj = m;
      for (std::size_t i = k; i < m && pi == m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
          if (g[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == m) {
        // Remaining block is zero.
        for (std::size_t i = k; i < m; ++i)
          diag.push_back(0);
        return diag;
      }
      for (std::size_t t = 0; t < m; ++t)
        g[pi][t] += g[pj][t];
      for (std::size_t t = 0; t < m; ++t)
        g[t][pi] += g[t][pj];
      piv = pi;
    }
    std::swap(g[k], g[piv]);
    for (auto& row : g)
      std::swap(row[k], row[piv]);
    Rational d = g[k][k];
    for (std::size_t i = k + 1; i < m; ++i) {
      if (g[i][k] == 0)
        continue;
      Rational c = g[i][k] / d;
      for (std::size_t t = k; t < m; ++t)
        g[i][t] -= c * g[k][t];
      for (std::size_t t = k; t < m; ++t)
        g[t][i] = g[i][t];
    }
    diag.push_back(d);
  }
  return diag;
}

/// Trace form of Q[x]/(f) as a diagonal class. Over R and C the rational
/// diagonalization is base-changed; prime fields are not supported.
inline GWElement trace_form_poly(const EtalePoly& f, const FieldDescriptor& field = FieldDescriptor::rationals())
{
  if (field.kind() == FieldKind::PrimeField)
    throw std::domain_error("trace forms of polynomial algebras are only available over Q, R and C");
  GWElement out = GWElement::zero(field);
  for (const auto& d : diagonalize_symmetric(f.trace_gram())) {
    if (d == 0)
      throw std::logic_error("degenerate trace form for a separable polynomial");
    out += GWElement::form(field, d);
  }
  return out;
}

} // namespace gwpower
