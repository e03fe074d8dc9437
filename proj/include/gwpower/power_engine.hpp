#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"

namespace gwpower
{

/// A commutative ring given by an object carrying the operations. The
/// object holds whatever context the elements need (e.g. the base field).
template <class R>
concept CommutativeRing = requires(const R& ring, const typename R::value_type& x) {
  typename R::value_type;
  { ring.zero() } -> std::convertible_to<typename R::value_type>;
  { ring.one() } -> std::convertible_to<typename R::value_type>;
  { ring.add(x, x) } -> std::convertible_to<typename R::value_type>;
  { ring.neg(x) } -> std::convertible_to<typename R::value_type>;
  { ring.mul(x, x) } -> std::convertible_to<typename R::value_type>;
  { ring.eq(x, x) } -> std::convertible_to<bool>;
};

/// Power series truncated at t^N, i.e. N + 1 stored coefficients c_0..c_N.
template <class T>
class TruncatedSeries
{
public:
  using value_type = T;

  explicit TruncatedSeries(std::vector<T> coeffs) : coeffs_(std::move(coeffs))
  {
    if (coeffs_.empty())
      throw std::invalid_argument("a truncated series needs at least one coefficient");
  }

  int truncation() const { return static_cast<int>(coeffs_.size()) - 1; }
  const T& operator[](int i) const { return coeffs_.at(static_cast<std::size_t>(i)); }
  T& operator[](int i) { return coeffs_.at(static_cast<std::size_t>(i)); }
  const std::vector<T>& coefficients() const { return coeffs_; }

private:
  std::vector<T> coeffs_;
};

// ---------------------------------------------------------------------------
// Series arithmetic
// ---------------------------------------------------------------------------

template <CommutativeRing R>
TruncatedSeries<typename R::value_type> series_one(const R& ring, int n)
{
  std::vector<typename R::value_type> c(static_cast<std::size_t>(n) + 1, ring.zero());
  c[0] = ring.one();
  return TruncatedSeries<typename R::value_type>(std::move(c));
}

/// Series from explicit leading coefficients, zero-padded to truncation n.
template <CommutativeRing R>
TruncatedSeries<typename R::value_type> series_from(const R& ring, std::vector<typename R::value_type> c, int n)
{
  c.resize(static_cast<std::size_t>(n) + 1, ring.zero());
  return TruncatedSeries<typename R::value_type>(std::move(c));
}

template <CommutativeRing R>
TruncatedSeries<typename R::value_type> truncate(const R&, const TruncatedSeries<typename R::value_type>& f, int n)
{
  if (n > f.truncation())
    throw std::invalid_argument("cannot extend a truncated series");
  std::vector<typename R::value_type> c(f.coefficients().begin(), f.coefficients().begin() + n + 1);
  return TruncatedSeries<typename R::value_type>(std::move(c));
}

/// Cauchy product; the result is truncated at the smaller truncation.
template <CommutativeRing R>
TruncatedSeries<typename R::value_type> series_mul(const R& ring, const TruncatedSeries<typename R::value_type>& f,
                                                   const TruncatedSeries<typename R::value_type>& g)
{
  int n = std::min(f.truncation(), g.truncation());
  std::vector<typename R::value_type> c(static_cast<std::size_t>(n) + 1, ring.zero());
  for (int i = 0; i <= n; ++i)
    for (int j = 0; i + j <= n; ++j)
      c[i + j] = ring.add(c[i + j], ring.mul(f[i], g[j]));
  return TruncatedSeries<typename R::value_type>(std::move(c));
}

template <CommutativeRing R>
void require_unit_constant(const R& ring, const TruncatedSeries<typename R::value_type>& f)
{
  if (!ring.eq(f[0], ring.one()))
    throw std::domain_error("series must have constant term 1");
}

/// Multiplicative inverse of f in 1 + tR[[t]]: the coefficients satisfy
/// h_n = -sum_{i=1..n} f_i h_{n-i}, the recurrence that gives a_n(-r) from a_n(r).
template <CommutativeRing R>
TruncatedSeries<typename R::value_type> series_inverse(const R& ring, const TruncatedSeries<typename R::value_type>& f)
{
  require_unit_constant(ring, f);
  int n = f.truncation();
  std::vector<typename R::value_type> h(static_cast<std::size_t>(n) + 1, ring.zero());
  h[0] = ring.one();
  for (int k = 1; k <= n; ++k) {
    auto acc = ring.zero();
    for (int i = 1; i <= k; ++i)
      acc = ring.add(acc, ring.mul(f[i], h[k - i]));
    h[k] = ring.neg(acc);
  }
  return TruncatedSeries<typename R::value_type>(std::move(h));
}

/// f^e for an integer exponent e (negative exponents invert first).
template <CommutativeRing R>
TruncatedSeries<typename R::value_type> series_pow_int(const R& ring, TruncatedSeries<typename R::value_type> f,
                                                       std::int64_t e)
{
  if (e < 0) {
    f = series_inverse(ring, f);
    e = -e;
  }
  auto result = series_one(ring, f.truncation());
  while (e > 0) {
    if (e & 1)
      result = series_mul(ring, result, f);
    e >>= 1;
    if (e > 0)
      f = series_mul(ring, f, f);
  }
  return result;
}

/// f(t^i), truncated at n.
template <CommutativeRing R>
TruncatedSeries<typename R::value_type> substitute_power(const R& ring, const TruncatedSeries<typename R::value_type>& f,
                                                         int i, int n)
{
  std::vector<typename R::value_type> c(static_cast<std::size_t>(n) + 1, ring.zero());
  for (int k = 0; k * i <= n; ++k)
    c[k * i] = f[k];
  return TruncatedSeries<typename R::value_type>(std::move(c));
}

template <CommutativeRing R>
bool series_eq(const R& ring, const TruncatedSeries<typename R::value_type>& f,
               const TruncatedSeries<typename R::value_type>& g)
{
  int n = std::min(f.truncation(), g.truncation());
  for (int i = 0; i <= n; ++i)
    if (!ring.eq(f[i], g[i]))
      return false;
  return true;
}

// ---------------------------------------------------------------------------
// Power structures
// ---------------------------------------------------------------------------

/// A power structure given by its functions a_i, packaged as the geometric
/// series (1 - t)^(-r) = sum_i a_i(r) t^i truncated at n.
template <class F>
concept PowerFns = requires(const F& fns, const typename F::ring_type::value_type& r, int n) {
  typename F::ring_type;
  requires CommutativeRing<typename F::ring_type>;
  { fns.ring() } -> std::convertible_to<const typename F::ring_type&>;
  { fns.geometric(r, n) } -> std::convertible_to<TruncatedSeries<typename F::ring_type::value_type>>;
};

template <PowerFns F>
using element_of_fns = typename F::ring_type::value_type;

template <PowerFns F>
using series_of_fns = TruncatedSeries<element_of_fns<F>>;

/// (1 - t)^(-r) truncated at n.
template <PowerFns F>
series_of_fns<F> geom_pow(const F& fns, const element_of_fns<F>& r, int n)
{
  return fns.geometric(r, n);
}

template <PowerFns F>
element_of_fns<F> power_fn(const F& fns, const element_of_fns<F>& r, int n)
{
  return fns.geometric(r, n)[n];
}

/// a_n(-r), from the negation recurrence a_n(-r) = -sum_{i=1..n} a_i(r) a_{n-i}(-r).
template <PowerFns F>
element_of_fns<F> neg_power_fn(const F& fns, const element_of_fns<F>& r, int n)
{
  return series_inverse(fns.ring(), fns.geometric(r, n))[n];
}

/// Writes f = prod_{i>=1} (1 - t^i)^(-b_i) mod t^(N+1) and returns b_1..b_N
/// (index 0 of the result is b_1).
template <PowerFns F>
std::vector<element_of_fns<F>> decompose(const F& fns, const series_of_fns<F>& f)
{
  const auto& ring = fns.ring();
  require_unit_constant(ring, f);
  int n = f.truncation();
  std::vector<element_of_fns<F>> b;
  b.reserve(static_cast<std::size_t>(n));
  auto rem = f;
  for (int i = 1; i <= n; ++i) {
    auto c = rem[i];
    auto factor = substitute_power(ring, fns.geometric(c, n / i), i, n);
    rem = series_mul(ring, rem, series_inverse(ring, factor));
    b.push_back(std::move(c));
  }
  return b;
}

/// prod_i (1 - t^i)^(-b_i) truncated at n, with b given as b_1, b_2, ...
template <PowerFns F>
series_of_fns<F> recompose(const F& fns, const std::vector<element_of_fns<F>>& b, int n)
{
  const auto& ring = fns.ring();
  auto result = series_one(ring, n);
  for (int i = 1; i <= n && i <= static_cast<int>(b.size()); ++i)
    result = series_mul(ring, result, substitute_power(ring, fns.geometric(b[i - 1], n / i), i, n));
  return result;
}

/// f^r := prod_i (1 - t^i)^(-b_i r) where f = prod_i (1 - t^i)^(-b_i).
template <PowerFns F>
series_of_fns<F> pow(const F& fns, const series_of_fns<F>& f, const element_of_fns<F>& r)
{
  const auto& ring = fns.ring();
  auto b = decompose(fns, f);
  for (auto& bi : b)
    bi = ring.mul(bi, r);
  return recompose(fns, b, f.truncation());
}

/// Series whose expansion over generators is known: returns
/// prod_j g_j(t)^(c_j) for terms (g_j series, integer c_j).
template <CommutativeRing R>
TruncatedSeries<typename R::value_type>
product_of_powers(const R& ring, const std::vector<std::pair<TruncatedSeries<typename R::value_type>, std::int64_t>>& terms,
                  int n)
{
  auto result = series_one(ring, n);
  for (const auto& [g, c] : terms)
    result = series_mul(ring, result, series_pow_int(ring, g, c));
  return result;
}

// ---------------------------------------------------------------------------
// Axiom checking
// ---------------------------------------------------------------------------

template <class T>
struct AxiomSample
{
  TruncatedSeries<T> f;
  TruncatedSeries<T> g;
  T r;
  T s;
};

struct AxiomViolation
{
  std::string axiom;   // "axiom 1".."axiom 7" or a power-function law
  std::size_t sample;  // index into the sample list
  std::string detail;
};

/// Checks the seven power-structure axioms (axiom 4 in the form
/// f^(r+s) = f^r f^s) and the laws of the functions a_i on every sample,
/// modulo t^(n+1). An empty result means no violation was found.
template <PowerFns F>
std::vector<AxiomViolation> check_axioms(const F& fns, const std::vector<AxiomSample<element_of_fns<F>>>& samples,
                                         int n)
{
  const auto& ring = fns.ring();
  std::vector<AxiomViolation> out;
  auto fail = [&](std::string axiom, std::size_t idx, std::string detail) {
    out.push_back(AxiomViolation{std::move(axiom), idx, std::move(detail)});
  };

  for (std::size_t k = 0; k < samples.size(); ++k) {
    const auto& smp = samples[k];
    auto f = truncate(ring, smp.f, n);
    auto g = truncate(ring, smp.g, n);
    const auto& r = smp.r;
    const auto& s = smp.s;

    if (!series_eq(ring, pow(fns, f, ring.zero()), series_one(ring, n)))
      fail("axiom 1", k, "f^0 != 1");
    if (!series_eq(ring, pow(fns, f, ring.one()), f))
      fail("axiom 2", k, "f^1 != f");

    auto fr = pow(fns, f, r);
    if (!series_eq(ring, pow(fns, series_mul(ring, f, g), r), series_mul(ring, fr, pow(fns, g, r))))
      fail("axiom 3", k, "(fg)^r != f^r g^r");
    if (!series_eq(ring, pow(fns, f, ring.add(r, s)), series_mul(ring, fr, pow(fns, f, s))))
      fail("axiom 4", k, "f^(r+s) != f^r f^s");
    if (!series_eq(ring, pow(fns, f, ring.mul(r, s)), pow(fns, fr, s)))
      fail("axiom 5", k, "f^(rs) != (f^r)^s");

    if (n >= 1) {
      auto one_plus_t = series_from(ring, {ring.one(), ring.one()}, n);
      auto p = pow(fns, one_plus_t, r);
      if (!ring.eq(p[0], ring.one()) || !ring.eq(p[1], r))
        fail("axiom 6", k, "(1+t)^m != 1 + mt + O(t^2)");
    }

    for (int i = 2; i <= 3 && i <= n; ++i) {
      auto lhs = pow(fns, substitute_power(ring, f, i, n), r);
      auto rhs = substitute_power(ring, fr, i, n);
      if (!series_eq(ring, lhs, rhs))
        fail("axiom 7", k, "f(t^" + std::to_string(i) + ")^m != g(t^" + std::to_string(i) + ")");
    }

    // Laws of the functions a_i.
    auto gr = fns.geometric(r, n);
    auto gs = fns.geometric(s, n);
    if (!ring.eq(gr[0], ring.one()))
      fail("a_0 = 1", k, "a_0(r) != 1");
    if (n >= 1 && !ring.eq(gr[1], r))
      fail("a_1 = id", k, "a_1(r) != r");
    if (!series_eq(ring, fns.geometric(ring.zero(), n), series_one(ring, n)))
      fail("a_i(0) = 0", k, "(1-t)^0 != 1");
    {
      auto g1 = fns.geometric(ring.one(), n);
      for (int i = 0; i <= n; ++i)
        if (!ring.eq(g1[i], ring.one())) {
          fail("a_i(1) = 1", k, "a_" + std::to_string(i) + "(1) != 1");
          break;
        }
    }
    if (!series_eq(ring, fns.geometric(ring.add(r, s), n), series_mul(ring, gr, gs)))
      fail("convolution", k, "a_n(r+s) != sum a_i(r) a_{n-i}(s)");
  }
  return out;
}

// ---------------------------------------------------------------------------
// The integers with the binomial power structure
// ---------------------------------------------------------------------------

struct IntegerRing
{
  using value_type = std::int64_t;
  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type add(value_type a, value_type b) const { return checked_add(a, b); }
  value_type neg(value_type a) const { return checked_neg(a); }
  value_type mul(value_type a, value_type b) const { return checked_mul(a, b); }
  bool eq(value_type a, value_type b) const { return a == b; }
};

/// a_n(m) = C(n + m - 1, n).
struct BinomialPowerFns
{
  using ring_type = IntegerRing;
  const IntegerRing& ring() const { return ring_; }

  TruncatedSeries<std::int64_t> geometric(std::int64_t m, int n) const
  {
    std::vector<std::int64_t> c(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i)
      c[i] = binomial(checked_add(m, i - 1), i);
    return TruncatedSeries<std::int64_t>(std::move(c));
  }

  IntegerRing ring_{};
};

template <class T, class Fmt>
std::string series_to_string(const TruncatedSeries<T>& f, Fmt&& fmt)
{
  std::ostringstream os;
  for (int i = 0; i <= f.truncation(); ++i) {
    if (i)
      os << " + ";
    os << '(' << fmt(f[i]) << ')';
    if (i == 1)
      os << "t";
    else if (i > 1)
      os << "t^" << i;
  }
  os << " + O(t^" << f.truncation() + 1 << ')';
  return os.str();
}

} // namespace gwpower
