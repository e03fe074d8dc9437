#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "field.hpp"

namespace gwpower
{

/// A formal integer combination of square classes, i.e. an element of
/// Z[k^x / (k^x)^2]. Arithmetic acts on this representation; equality in the
/// Grothendieck-Witt ring is the semantic test is_equal().
class GWElement
{
public:
  using Terms = std::map<std::int64_t, std::int64_t>; // representative -> nonzero coefficient

  explicit GWElement(FieldDescriptor field) : field_(field) {}

  static GWElement zero(const FieldDescriptor& f) { return GWElement(f); }
  static GWElement one(const FieldDescriptor& f) { return generator(unit_class(f)); }

  static GWElement generator(const SquareClass& a, std::int64_t coeff = 1)
  {
    GWElement x(a.field());
    x.add_term(a.rep(), coeff);
    return x;
  }

  /// <a> for a rational a (canonicalized).
  static GWElement form(const FieldDescriptor& f, const Rational& a, std::int64_t coeff = 1)
  {
    return generator(class_of(f, a), coeff);
  }

  static GWElement integer(const FieldDescriptor& f, std::int64_t n) { return generator(unit_class(f), n); }

  const FieldDescriptor& field() const { return field_; }
  const Terms& terms() const { return terms_; }
  bool is_zero_representation() const { return terms_.empty(); }

  std::int64_t coefficient(std::int64_t rep) const
  {
    auto it = terms_.find(rep);
    return it == terms_.end() ? 0 : it->second;
  }

  std::int64_t rank() const
  {
    std::int64_t r = 0;
    for (const auto& [rep, c] : terms_)
      r = checked_add(r, c);
    return r;
  }

  SquareClass class_at(std::int64_t rep) const { return SquareClass(field_, rep); }

  void add_term(std::int64_t rep, std::int64_t coeff)
  {
    if (coeff == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(rep, coeff);
    if (!inserted) {
      it->second = checked_add(it->second, coeff);
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  GWElement& operator+=(const GWElement& other)
  {
    require_same_field(field_, other.field_);
    for (const auto& [rep, c] : other.terms_)
      add_term(rep, c);
    return *this;
  }

  GWElement& operator-=(const GWElement& other)
  {
    require_same_field(field_, other.field_);
    for (const auto& [rep, c] : other.terms_)
      add_term(rep, checked_neg(c));
    return *this;
  }

  friend GWElement operator+(GWElement a, const GWElement& b) { return a += b; }
  friend GWElement operator-(GWElement a, const GWElement& b) { return a -= b; }

  friend GWElement operator-(const GWElement& a)
  {
    GWElement r(a.field_);
    for (const auto& [rep, c] : a.terms_)
      r.terms_.emplace(rep, checked_neg(c));
    return r;
  }

  friend GWElement operator*(const GWElement& a, const GWElement& b)
  {
    require_same_field(a.field_, b.field_);
    GWElement r(a.field_);
    for (const auto& [ra, ca] : a.terms_)
      for (const auto& [rb, cb] : b.terms_)
        r.add_term(mul_class(a.class_at(ra), b.class_at(rb)).rep(), checked_mul(ca, cb));
    return r;
  }

  friend GWElement operator*(std::int64_t n, const GWElement& a)
  {
    GWElement r(a.field_);
    if (n == 0)
      return r;
    for (const auto& [rep, c] : a.terms_)
      r.terms_.emplace(rep, checked_mul(n, c));
    return r;
  }

  /// Identical stored representation (not equality in the Grothendieck-Witt ring).
  friend bool identical(const GWElement& a, const GWElement& b)
  {
    return a.field_ == b.field_ && a.terms_ == b.terms_;
  }

  /// Terms in display order: positive representatives first, then negative,
  /// each by absolute value.
  std::vector<std::pair<std::int64_t, std::int64_t>> display_terms() const
  {
    std::vector<std::pair<std::int64_t, std::int64_t>> out(terms_.begin(), terms_.end());
    std::sort(out.begin(), out.end(), [](const auto& x, const auto& y) {
      bool nx = x.first < 0, ny = y.first < 0;
      if (nx != ny)
        return !nx;
      return std::llabs(x.first) < std::llabs(y.first);
    });
    return out;
  }

  std::string to_string() const
  {
    auto terms = display_terms();
    if (terms.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [rep, c] : terms) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (mag != 1)
        os << mag;
      os << '<' << rep << '>';
      first = false;
    }
    return os.str();
  }

private:
  FieldDescriptor field_;
  Terms terms_;
};

inline GWElement hyperbolic(const FieldDescriptor& f, std::int64_t m = 1)
{
  GWElement h(f);
  h.add_term(1, m);
  h.add_term(class_of(f, -1).rep(), m);
  return h;
}

/// t_a = <2> + <a> - <1> - <2a>.
inline GWElement t_elem(const SquareClass& a)
{
  const FieldDescriptor& f = a.field();
  SquareClass two = class_of(f, 2);
  GWElement t(f);
  t.add_term(two.rep(), 1);
  t.add_term(a.rep(), 1);
  t.add_term(1, -1);
  t.add_term(mul_class(two, a).rep(), -1);
  return t;
}

// ---------------------------------------------------------------------------
// Invariants and the equality decision procedure
// ---------------------------------------------------------------------------

struct InvariantProfile
{
  std::int64_t rank = 0;
  SquareClass disc;
  std::optional<std::int64_t> signature;  // Q and R only
  std::map<Place, int> hasse;             // Q only; of the positive part

  std::string to_string() const
  {
    std::ostringstream os;
    os << "rank " << rank << ", disc " << disc.rep();
    if (signature)
      os << ", signature " << *signature;
    if (!hasse.empty()) {
      os << ", hasse {";
      bool first = true;
      for (const auto& [v, s] : hasse) {
        os << (first ? "" : ", ") << v.name() << ": " << (s > 0 ? "+1" : "-1");
        first = false;
      }
      os << "}";
    }
    return os.str();
  }
};

namespace detail
{

// A diagonal form <a_1, ..., a_n> with multiplicities.
using Diagonal = std::vector<std::pair<std::int64_t, std::int64_t>>;

inline SquareClass diagonal_disc(const FieldDescriptor& f, const Diagonal& d)
{
  SquareClass disc = unit_class(f);
  for (const auto& [rep, m] : d)
    if (m % 2 != 0)
      disc = mul_class(disc, SquareClass(f, rep));
  return disc;
}

inline std::int64_t diagonal_signature(const Diagonal& d)
{
  std::int64_t s = 0;
  for (const auto& [rep, m] : d)
    s = checked_add(s, rep > 0 ? m : checked_neg(m));
  return s;
}

// Hasse invariant prod_{i<j} (a_i, a_j)_v with multiplicities.
inline int diagonal_hasse(const Diagonal& d, Place v)
{
  int parity = 0;
  for (std::size_t i = 0; i < d.size(); ++i) {
    const auto& [a, ma] = d[i];
    std::int64_t pairs_within = ma % 4 == 2 || ma % 4 == 3 ? 1 : 0; // C(ma, 2) mod 2 for ma >= 0
    if (pairs_within && hilbert_squarefree(a, a, v) == -1)
      parity ^= 1;
    for (std::size_t j = i + 1; j < d.size(); ++j) {
      const auto& [b, mb] = d[j];
      if ((ma % 2) && (mb % 2) && hilbert_squarefree(a, b, v) == -1)
        parity ^= 1;
    }
  }
  return parity ? -1 : 1;
}

inline std::vector<Place> places_for(const Diagonal& p, const Diagonal& n)
{
  std::vector<Place> places{Place::infinity(), Place::at(2)};
  for (const auto* d : {&p, &n})
    for (const auto& [rep, m] : *d)
      for (auto q : prime_factors(rep))
        if (q != 2)
          places.push_back(Place::at(q));
  std::sort(places.begin(), places.end());
  places.erase(std::unique(places.begin(), places.end()), places.end());
  return places;
}

// Isometry of two honest diagonal forms over one of the supported fields.
inline bool isometric(const FieldDescriptor& f, const Diagonal& p, const Diagonal& n)
{
  std::int64_t rp = 0, rn = 0;
  for (const auto& [r, m] : p)
    rp = checked_add(rp, m);
  for (const auto& [r, m] : n)
    rn = checked_add(rn, m);
  if (rp != rn)
    return false;
  switch (f.kind()) {
  case FieldKind::ComplexClosed:
    return true;
  case FieldKind::RealClosed:
    return diagonal_signature(p) == diagonal_signature(n);
  case FieldKind::PrimeField:
    return diagonal_disc(f, p) == diagonal_disc(f, n);
  case FieldKind::Rationals:
    if (diagonal_signature(p) != diagonal_signature(n))
      return false;
    if (!(diagonal_disc(f, p) == diagonal_disc(f, n)))
      return false;
    for (auto v : places_for(p, n))
      if (diagonal_hasse(p, v) != diagonal_hasse(n, v))
        return false;
    return true;
  }
  return false;
}

inline std::pair<Diagonal, Diagonal> split_signs(const GWElement& x)
{
  Diagonal pos, neg;
  for (const auto& [rep, c] : x.terms()) {
    if (c > 0)
      pos.emplace_back(rep, c);
    else
      neg.emplace_back(rep, -c);
  }
  return {pos, neg};
}

} // namespace detail

inline InvariantProfile invariants(const GWElement& x)
{
  const FieldDescriptor& f = x.field();
  InvariantProfile prof{x.rank(), unit_class(f), std::nullopt, {}};
  detail::Diagonal all(x.terms().begin(), x.terms().end());
  prof.disc = detail::diagonal_disc(f, all);
  if (f.kind() == FieldKind::Rationals || f.kind() == FieldKind::RealClosed)
    prof.signature = detail::diagonal_signature(all);
  if (f.kind() == FieldKind::Rationals) {
    auto [pos, neg] = detail::split_signs(x);
    for (auto v : detail::places_for(pos, neg))
      prof.hasse[v] = detail::diagonal_hasse(pos, v);
  }
  return prof;
}

/// Equality in the Grothendieck-Witt ring. Writes x - y = P - N with P, N
/// honest diagonal forms; by Witt cancellation x = y iff P and N are isometric,
/// which is decided by the classical invariants of each backend (over Q:
/// Hasse-Minkowski).
inline bool is_equal(const GWElement& x, const GWElement& y)
{
  require_same_field(x.field(), y.field());
  GWElement d = x - y;
  if (d.is_zero_representation())
    return true;
  auto [pos, neg] = detail::split_signs(d);
  return detail::isometric(x.field(), pos, neg);
}

inline bool is_zero(const GWElement& x)
{
  return is_equal(x, GWElement::zero(x.field()));
}

/// True iff x is a multiple of the hyperbolic form, i.e. x vanishes in W(k).
inline bool witt_is_zero(const GWElement& x)
{
  std::int64_t r = x.rank();
  if (r % 2 != 0)
    return false;
  return is_equal(x, hyperbolic(x.field(), r / 2));
}

} // namespace gwpower
