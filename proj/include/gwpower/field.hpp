#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "checked.hpp"

namespace gwpower
{

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Trial-division bound used when canonicalizing rational square classes.
inline constexpr std::int64_t kFactorBound = 1'000'000;

// ---------------------------------------------------------------------------
// Elementary number theory
// ---------------------------------------------------------------------------

inline bool is_prime(std::int64_t n)
{
  if (n < 2)
    return false;
  if (n % 2 == 0)
    return n == 2;
  for (std::int64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0)
      return false;
  return true;
}

inline std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod)
{
  __int128 result = 1;
  __int128 b = ((base % mod) + mod) % mod;
  while (exp > 0) {
    if (exp & 1)
      result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

/// Legendre symbol (a | p) for an odd prime p; 0 when p divides a.
inline int legendre(std::int64_t a, std::int64_t p)
{
  std::int64_t r = mod_pow(a, (p - 1) / 2, p);
  if (r == 0)
    return 0;
  return r == 1 ? 1 : -1;
}

/// Distinct prime factors of |n| in increasing order (n != 0).
inline std::vector<std::int64_t> prime_factors(std::int64_t n)
{
  std::vector<std::int64_t> out;
  std::uint64_t m = n < 0 ? static_cast<std::uint64_t>(-(n + 1)) + 1 : static_cast<std::uint64_t>(n);
  for (std::uint64_t d = 2; d <= m / d; d += (d == 2 ? 1 : 2)) {
    if (m % d == 0) {
      out.push_back(static_cast<std::int64_t>(d));
      while (m % d == 0)
        m /= d;
    }
  }
  if (m > 1)
    out.push_back(static_cast<std::int64_t>(m));
  return out;
}

namespace detail
{

// Squarefree part of a positive integer, trial dividing up to kFactorBound.
inline BigInt squarefree_part(BigInt n)
{
  BigInt result = 1;
  std::int64_t d = 2;
  while (d <= kFactorBound && BigInt(d) * d <= n) {
    if (n % d == 0) {
      int parity = 0;
      while (n % d == 0) {
        n /= d;
        parity ^= 1;
      }
      if (parity)
        result *= d;
    }
    d += (d == 2 ? 1 : 2);
  }
  if (n > 1) {
    // No factor <= bound remains; n is prime when below (bound+1)^2.
    if (d > kFactorBound && n >= BigInt(kFactorBound + 1) * (kFactorBound + 1))
      throw std::domain_error("square class canonicalization exceeds the trial-division bound");
    result *= n;
  }
  return result;
}

inline std::int64_t to_int64(const BigInt& v)
{
  if (v > INT64_MAX || v < INT64_MIN)
    throw std::overflow_error("square class representative exceeds 64-bit range");
  return static_cast<std::int64_t>(v);
}

} // namespace detail

// ---------------------------------------------------------------------------
// Field descriptors
// ---------------------------------------------------------------------------

enum class FieldKind { Rationals, PrimeField, RealClosed, ComplexClosed };

class FieldDescriptor
{
public:
  static FieldDescriptor rationals() { return FieldDescriptor(FieldKind::Rationals, 0); }
  static FieldDescriptor reals() { return FieldDescriptor(FieldKind::RealClosed, 0); }
  static FieldDescriptor complexes() { return FieldDescriptor(FieldKind::ComplexClosed, 0); }

  /// Throws std::invalid_argument unless p is an odd prime.
  static FieldDescriptor prime_field(std::int64_t p)
  {
    if (p == 2)
      throw std::invalid_argument("characteristic 2 is not supported");
    if (!is_prime(p))
      throw std::invalid_argument("F_p requires p prime, got " + std::to_string(p));
    return FieldDescriptor(FieldKind::PrimeField, p);
  }

  FieldKind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }

  /// Least positive quadratic nonresidue (prime fields only).
  std::int64_t nonresidue() const { return nonresidue_; }

  std::string name() const
  {
    switch (kind_) {
    case FieldKind::Rationals:
      return "Q";
    case FieldKind::RealClosed:
      return "R";
    case FieldKind::ComplexClosed:
      return "C";
    case FieldKind::PrimeField:
      return "F" + std::to_string(p_);
    }
    return "?";
  }

  friend bool operator==(const FieldDescriptor&, const FieldDescriptor&) = default;

private:
  FieldDescriptor(FieldKind kind, std::int64_t p) : kind_(kind), p_(p)
  {
    if (kind == FieldKind::PrimeField) {
      nonresidue_ = 2;
      while (legendre(nonresidue_, p_) != -1)
        ++nonresidue_;
    }
  }

  FieldKind kind_;
  std::int64_t p_ = 0;
  std::int64_t nonresidue_ = 0;
};

inline void require_same_field(const FieldDescriptor& a, const FieldDescriptor& b)
{
  if (!(a == b))
    throw std::invalid_argument("field mismatch: " + a.name() + " vs " + b.name());
}

// ---------------------------------------------------------------------------
// Field elements
// ---------------------------------------------------------------------------

/// An exact scalar of one of the supported fields. Elements of Q, R and C are
/// stored as rationals (R and C only ever see rational elements); elements of
/// F_p as residues in [0, p).
class FieldElement
{
public:
  FieldElement(FieldDescriptor field, Rational value) : field_(field), value_(std::move(value))
  {
    if (field_.kind() == FieldKind::PrimeField)
      value_ = reduce_mod_p(value_, field_.characteristic());
  }

  FieldElement(FieldDescriptor field, std::int64_t value) : FieldElement(field, Rational(value)) {}

  const FieldDescriptor& field() const { return field_; }
  const Rational& value() const { return value_; }
  bool is_zero() const { return value_ == 0; }

  friend bool operator==(const FieldElement& a, const FieldElement& b)
  {
    return a.field_ == b.field_ && a.value_ == b.value_;
  }

private:
  static Rational reduce_mod_p(const Rational& v, std::int64_t p)
  {
    BigInt num = boost::multiprecision::numerator(v) % p;
    BigInt den = boost::multiprecision::denominator(v) % p;
    if (den == 0)
      throw std::domain_error("denominator vanishes modulo " + std::to_string(p));
    std::int64_t n = static_cast<std::int64_t>(num);
    std::int64_t d = static_cast<std::int64_t>(den);
    n = ((n % p) + p) % p;
    d = ((d % p) + p) % p;
    std::int64_t inv = mod_pow(d, p - 2, p);
    return Rational(static_cast<std::int64_t>(static_cast<__int128>(n) * inv % p));
  }

  FieldDescriptor field_;
  Rational value_;
};

inline FieldElement add_elements(const FieldElement& x, const FieldElement& y)
{
  require_same_field(x.field(), y.field());
  return FieldElement(x.field(), x.value() + y.value());
}

inline FieldElement mul_elements(const FieldElement& x, const FieldElement& y)
{
  require_same_field(x.field(), y.field());
  return FieldElement(x.field(), x.value() * y.value());
}

// ---------------------------------------------------------------------------
// Square classes
// ---------------------------------------------------------------------------

/// Canonical representative of k^x / (k^x)^2.
///
/// Q: signed squarefree integer. F_p: 1 or the least nonresidue.
/// R: +1 or -1. C: 1.
class SquareClass
{
public:
  SquareClass(FieldDescriptor field, std::int64_t rep) : field_(field), rep_(rep) {}

  const FieldDescriptor& field() const { return field_; }
  std::int64_t rep() const { return rep_; }
  bool is_trivial() const { return rep_ == 1; }

  friend bool operator==(const SquareClass& a, const SquareClass& b)
  {
    return a.field_ == b.field_ && a.rep_ == b.rep_;
  }
  friend std::strong_ordering operator<=>(const SquareClass& a, const SquareClass& b)
  {
    return a.rep_ <=> b.rep_;
  }

private:
  FieldDescriptor field_;
  std::int64_t rep_;
};

inline SquareClass class_of(const FieldElement& x)
{
  if (x.is_zero())
    throw std::domain_error("zero square class");
  const FieldDescriptor& f = x.field();
  switch (f.kind()) {
  case FieldKind::ComplexClosed:
    return SquareClass(f, 1);
  case FieldKind::RealClosed:
    return SquareClass(f, x.value() > 0 ? 1 : -1);
  case FieldKind::PrimeField: {
    auto v = static_cast<std::int64_t>(boost::multiprecision::numerator(x.value()));
    return SquareClass(f, legendre(v, f.characteristic()) == 1 ? 1 : f.nonresidue());
  }
  case FieldKind::Rationals: {
    // class(p/q) = class(p*q); factor numerator and denominator separately.
    BigInt num = boost::multiprecision::numerator(x.value());
    BigInt den = boost::multiprecision::denominator(x.value());
    int sign = num < 0 ? -1 : 1;
    if (num < 0)
      num = -num;
    BigInt a = detail::squarefree_part(num);
    BigInt b = detail::squarefree_part(den);
    BigInt g = boost::multiprecision::gcd(a, b);
    BigInt rep = (a / g) * (b / g);
    return SquareClass(f, sign * detail::to_int64(rep));
  }
  }
  throw std::logic_error("unreachable field kind");
}

inline SquareClass class_of(const FieldDescriptor& field, const Rational& value)
{
  return class_of(FieldElement(field, value));
}

inline SquareClass class_of(const FieldDescriptor& field, std::int64_t value)
{
  return class_of(FieldElement(field, Rational(value)));
}

inline SquareClass mul_class(const SquareClass& a, const SquareClass& b)
{
  require_same_field(a.field(), b.field());
  const FieldDescriptor& f = a.field();
  switch (f.kind()) {
  case FieldKind::ComplexClosed:
    return SquareClass(f, 1);
  case FieldKind::RealClosed:
    return SquareClass(f, a.rep() * b.rep());
  case FieldKind::PrimeField:
    return SquareClass(f, a.rep() == b.rep() ? 1 : f.nonresidue());
  case FieldKind::Rationals: {
    std::int64_t g = std::gcd(a.rep(), b.rep());
    return SquareClass(f, checked_mul(a.rep() / g, b.rep() / g));
  }
  }
  throw std::logic_error("unreachable field kind");
}

inline SquareClass unit_class(const FieldDescriptor& f)
{
  return SquareClass(f, 1);
}

/// The representative of a class, as a field element.
inline FieldElement element_of(const SquareClass& c)
{
  return FieldElement(c.field(), Rational(c.rep()));
}

/// Coordinates of a class as an F_2-vector, given as the sorted list of the
/// "atoms" with odd exponent: -1 and primes over Q, -1 over R, the least
/// nonresidue over F_p, nothing over C.
inline std::vector<std::int64_t> class_atoms(const SquareClass& c)
{
  std::vector<std::int64_t> atoms;
  if (c.rep() == 1)
    return atoms;
  switch (c.field().kind()) {
  case FieldKind::ComplexClosed:
    break;
  case FieldKind::RealClosed:
    atoms.push_back(-1);
    break;
  case FieldKind::PrimeField:
    atoms.push_back(c.rep());
    break;
  case FieldKind::Rationals:
    if (c.rep() < 0)
      atoms.push_back(-1);
    for (auto p : prime_factors(c.rep()))
      atoms.push_back(p);
    break;
  }
  return atoms;
}

// ---------------------------------------------------------------------------
// Hilbert symbols and cup products
// ---------------------------------------------------------------------------

/// A place of Q: a prime, or the real place (prime == 0).
struct Place
{
  std::int64_t prime = 0;

  static Place infinity() { return Place{0}; }
  static Place at(std::int64_t p) { return Place{p}; }
  bool is_infinite() const { return prime == 0; }

  std::string name() const { return is_infinite() ? std::string("inf") : std::to_string(prime); }

  friend auto operator<=>(const Place&, const Place&) = default;
};

namespace detail
{

// Hilbert symbol on squarefree integer representatives.
inline int hilbert_squarefree(std::int64_t a, std::int64_t b, Place v)
{
  if (v.is_infinite())
    return (a < 0 && b < 0) ? -1 : 1;
  const std::int64_t p = v.prime;
  int alpha = (a % p == 0) ? 1 : 0;
  int beta = (b % p == 0) ? 1 : 0;
  std::int64_t u = alpha ? a / p : a;
  std::int64_t w = beta ? b / p : b;
  if (p == 2) {
    auto eps = [](std::int64_t x) { return static_cast<int>((((x - 1) / 2) % 2 + 2) % 2); };
    auto omega = [](std::int64_t x) {
      std::int64_t r = ((x % 16) + 16) % 16; // (x^2 - 1)/8 mod 2 depends on x mod 8
      return static_cast<int>(((r * r - 1) / 8) % 2);
    };
    int e = eps(u) * eps(w) + alpha * omega(w) + beta * omega(u);
    return (e % 2) ? -1 : 1;
  }
  int sign = 1;
  if (alpha && beta && ((p - 1) / 2) % 2 == 1)
    sign = -sign;
  if (beta)
    sign *= legendre(u, p);
  if (alpha)
    sign *= legendre(w, p);
  return sign;
}

} // namespace detail

/// Local Hilbert symbol (a, b)_v for nonzero rationals a, b.
inline int hilbert_symbol(const Rational& a, const Rational& b, Place v)
{
  if (a == 0 || b == 0)
    throw std::domain_error("Hilbert symbol of zero");
  if (!v.is_infinite() && !is_prime(v.prime))
    throw std::invalid_argument("place must be a prime or infinity");
  auto q = FieldDescriptor::rationals();
  return detail::hilbert_squarefree(class_of(q, a).rep(), class_of(q, b).rep(), v);
}

/// The places where (a, b)_v can be -1: infinity, 2 and odd primes dividing
/// either squarefree representative.
inline std::vector<Place> relevant_places(std::int64_t a, std::int64_t b)
{
  std::vector<Place> places{Place::infinity(), Place::at(2)};
  for (auto n : {a, b})
    for (auto p : prime_factors(n))
      if (p != 2)
        places.push_back(Place::at(p));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  return places;
}

/// Product of (a, b)_v over all places; +1 by reciprocity.
inline int hilbert_product(const Rational& a, const Rational& b)
{
  auto q = FieldDescriptor::rationals();
  std::int64_t ra = class_of(q, a).rep();
  std::int64_t rb = class_of(q, b).rep();
  int prod = 1;
  for (auto v : relevant_places(ra, rb))
    prod *= detail::hilbert_squarefree(ra, rb, v);
  return prod;
}

/// True iff [a] u [b] = 0 in H^2(k, Z/2), i.e. ax^2 + by^2 = 1 has a k-point.
inline bool cup_vanishes(const SquareClass& a, const SquareClass& b)
{
  require_same_field(a.field(), b.field());
  switch (a.field().kind()) {
  case FieldKind::ComplexClosed:
  case FieldKind::PrimeField:
    return true;
  case FieldKind::RealClosed:
    return !(a.rep() < 0 && b.rep() < 0);
  case FieldKind::Rationals:
    for (auto v : relevant_places(a.rep(), b.rep()))
      if (detail::hilbert_squarefree(a.rep(), b.rep(), v) == -1)
        return false;
    return true;
  }
  throw std::logic_error("unreachable field kind");
}

} // namespace gwpower
