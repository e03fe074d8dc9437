#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"
#include "gw_ring.hpp"
#include "power_engine.hpp"

namespace gwpower
{

/// The Grothendieck-Witt ring of a field as an engine ring; eq is the
/// invariant-based equality decider.
class GWRing
{
public:
  using value_type = GWElement;

  explicit GWRing(FieldDescriptor field) : field_(field) {}

  const FieldDescriptor& field() const { return field_; }

  GWElement zero() const { return GWElement::zero(field_); }
  GWElement one() const { return GWElement::one(field_); }
  GWElement add(const GWElement& a, const GWElement& b) const { return a + b; }
  GWElement neg(const GWElement& a) const { return -a; }
  GWElement mul(const GWElement& a, const GWElement& b) const { return a * b; }
  bool eq(const GWElement& a, const GWElement& b) const { return is_equal(a, b); }

private:
  FieldDescriptor field_;
};

namespace detail
{

// Power functions on GW(k) defined by their value on generators and extended
// through (1-t)^(-sum c_a <a>) = prod_a ((1-t)^(-<a>))^(c_a), i.e. by the
// convolution law for sums and the negation recurrence for negative c_a.
template <class GeneratorSeries>
TruncatedSeries<GWElement> geometric_from_generators(const GWRing& ring, const GWElement& q, int n,
                                                     GeneratorSeries&& gen)
{
  require_same_field(ring.field(), q.field());
  std::vector<std::pair<TruncatedSeries<GWElement>, std::int64_t>> terms;
  terms.reserve(q.terms().size());
  for (const auto& [rep, c] : q.terms())
    terms.emplace_back(gen(SquareClass(q.field(), rep), n), c);
  return product_of_powers(ring, terms, n);
}

} // namespace detail

/// The power structure on GW(k) with a_n(<a>) = <a^n> + floor(n/2) t_a.
class GWPowerFns
{
public:
  using ring_type = GWRing;

  explicit GWPowerFns(FieldDescriptor field) : ring_(field) {}

  const GWRing& ring() const { return ring_; }

  /// sum_n a_n(<a>) t^n for a single generator.
  TruncatedSeries<GWElement> generator_series(const SquareClass& a, int n) const
  {
    std::vector<GWElement> c;
    c.reserve(static_cast<std::size_t>(n) + 1);
    GWElement ta = t_elem(a);
    for (int i = 0; i <= n; ++i) {
      SquareClass ai = (i % 2 == 0) ? unit_class(a.field()) : a;
      c.push_back(GWElement::generator(ai) + static_cast<std::int64_t>(i / 2) * ta);
    }
    return TruncatedSeries<GWElement>(std::move(c));
  }

  TruncatedSeries<GWElement> geometric(const GWElement& q, int n) const
  {
    return detail::geometric_from_generators(ring_, q, n,
                                             [this](const SquareClass& a, int m) { return generator_series(a, m); });
  }

private:
  GWRing ring_;
};

/// The non-factorial symmetric power: S^n(<a>) = <a^n>, extended the same way.
class ClassicalPowerFns
{
public:
  using ring_type = GWRing;

  explicit ClassicalPowerFns(FieldDescriptor field) : ring_(field) {}

  const GWRing& ring() const { return ring_; }

  TruncatedSeries<GWElement> generator_series(const SquareClass& a, int n) const
  {
    std::vector<GWElement> c;
    for (int i = 0; i <= n; ++i)
      c.push_back(GWElement::generator(i % 2 == 0 ? unit_class(a.field()) : a));
    return TruncatedSeries<GWElement>(std::move(c));
  }

  TruncatedSeries<GWElement> geometric(const GWElement& q, int n) const
  {
    return detail::geometric_from_generators(ring_, q, n,
                                             [this](const SquareClass& a, int m) { return generator_series(a, m); });
  }

private:
  GWRing ring_;
};

/// a_n(q) for an arbitrary (virtual) q.
inline GWElement a_n(const GWElement& q, int n)
{
  if (n < 0)
    throw std::invalid_argument("a_n requires n >= 0");
  return GWPowerFns(q.field()).geometric(q, n)[n];
}

/// a_0(q), ..., a_N(q).
inline std::vector<GWElement> a_series(const GWElement& q, int n)
{
  return GWPowerFns(q.field()).geometric(q, n).coefficients();
}

/// S^n(q) for the non-factorial symmetric power.
inline GWElement classical_power(const GWElement& q, int n)
{
  return ClassicalPowerFns(q.field()).geometric(q, n)[n];
}

/// Closed form of a_n(<a> + <b>):
///   n even: (1 + n/2)<1> + (n/2)(<ab> + t_a + t_b)
///   n odd:  ((n+1)/2)(<a> + <b>)
inline GWElement closed_pair(const SquareClass& a, const SquareClass& b, int n)
{
  require_same_field(a.field(), b.field());
  const FieldDescriptor& f = a.field();
  if (n % 2 == 1)
    return static_cast<std::int64_t>((n + 1) / 2) * (GWElement::generator(a) + GWElement::generator(b));
  std::int64_t h = n / 2;
  return GWElement::integer(f, 1 + h) + h * (GWElement::generator(mul_class(a, b)) + t_elem(a) + t_elem(b));
}

/// Trace form <1> + <alpha> + <beta> + <alpha beta> of a biquadratic extension.
inline GWElement biquadratic_trace(const SquareClass& alpha, const SquareClass& beta)
{
  return GWElement::one(alpha.field()) + GWElement::generator(alpha) + GWElement::generator(beta) +
         GWElement::generator(mul_class(alpha, beta));
}

/// Closed form of a_n(q) for q the trace form of k(sqrt alpha, sqrt beta):
///   n odd:       (1/4)C(n+3,3) q
///   n = 2 mod 4: ((1/4)C(n+3,3) - (3n+6)/8) q + ((n+2)/4)(2<1> + <2>q)
///   n = 0 mod 4: ((1/4)C(n+3,3) - (3n+2)/8) q + (n/4)(2<1> + <2>q) + <1>
/// Every rational weight is checked to be integral.
inline GWElement closed_biquadratic(const SquareClass& alpha, const SquareClass& beta, int n)
{
  require_same_field(alpha.field(), beta.field());
  if (n < 0)
    throw std::invalid_argument("closed_biquadratic requires n >= 0");
  if (alpha.is_trivial() || beta.is_trivial() || mul_class(alpha, beta).is_trivial())
    throw std::invalid_argument("alpha, beta and alpha*beta must all be nonsquares");
  const FieldDescriptor& f = alpha.field();
  GWElement q = biquadratic_trace(alpha, beta);
  GWElement two = GWElement::form(f, 2);
  GWElement extra = GWElement::integer(f, 2) + two * q;

  // Weights as exact fractions over 8.
  std::int64_t c8 = 2 * binomial(n + 3, 3); // 8 * (1/4) C(n+3, 3)
  auto exact = [](std::int64_t num8) {
    if (num8 % 8 != 0)
      throw std::logic_error("non-integral weight in the biquadratic closed form");
    return num8 / 8;
  };
  if (n % 2 == 1)
    return exact(c8) * q;
  if (n % 4 == 2)
    return exact(c8 - (3 * n + 6)) * q + static_cast<std::int64_t>((n + 2) / 4) * extra;
  return exact(c8 - (3 * n + 2)) * q + static_cast<std::int64_t>(n / 4) * extra + GWElement::one(f);
}

/// <a^n>.
inline GWElement classical_sn_generator(const SquareClass& a, int n)
{
  return GWElement::generator(n % 2 == 0 ? unit_class(a.field()) : a);
}

/// True iff a_n(<a>) = <a^n> for all n, which holds iff [2] u [a] = 0.
inline bool agrees_with_classical(const SquareClass& a)
{
  return cup_vanishes(class_of(a.field(), 2), a);
}

/// Direct check of a_n(<a>) = <a^n> for 0 <= n <= n_max.
inline bool agrees_with_classical_up_to(const SquareClass& a, int n_max)
{
  auto series = GWPowerFns(a.field()).generator_series(a, n_max);
  for (int n = 0; n <= n_max; ++n)
    if (!is_equal(series[n], classical_sn_generator(a, n)))
      return false;
  return true;
}

} // namespace gwpower
