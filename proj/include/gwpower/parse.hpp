#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "etale_poly.hpp"
#include "field.hpp"
#include "galois_sets.hpp"
#include "gw_ring.hpp"

namespace gwpower
{

/// Syntax or semantic error in user input; position is a byte offset into
/// the source (at most its length).
class ParseError : public std::runtime_error
{
public:
  ParseError(const std::string& message, std::size_t position)
  : std::runtime_error(message), position_(position)
  {
  }
  std::size_t position() const { return position_; }

private:
  std::size_t position_;
};

/// Input that is well formed but outside what the library supports
/// (characteristic 2, composite moduli, canonicalization bounds).
class UnsupportedError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kMaxFieldPrime = 2'147'483'647;

/// Q, R, C, or a prime field written F<p>, F_<p> or GF(<p>).
inline FieldDescriptor parse_field(const std::string& src)
{
  std::string s;
  for (char c : src)
    if (!std::isspace(static_cast<unsigned char>(c)))
      s += static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  if (s == "Q" || s == "QQ")
    return FieldDescriptor::rationals();
  if (s == "R" || s == "RR")
    return FieldDescriptor::reals();
  if (s == "C" || s == "CC")
    return FieldDescriptor::complexes();
  std::string digits;
  if (s.size() > 1 && s[0] == 'F')
    digits = s.substr(s[1] == '_' ? 2 : 1);
  else if (s.size() > 4 && s.rfind("GF(", 0) == 0 && s.back() == ')')
    digits = s.substr(3, s.size() - 4);
  if (digits.empty() || digits.size() > 30 ||
      !std::all_of(digits.begin(), digits.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); }))
    throw ParseError("unknown field '" + src + "'", 0);
  BigInt p(digits);
  if (p > kMaxFieldPrime)
    throw UnsupportedError("prime field characteristic is too large");
  auto pv = static_cast<std::int64_t>(p);
  if (pv == 2)
    throw UnsupportedError("characteristic 2 is not supported");
  if (!is_prime(pv))
    throw UnsupportedError("F" + digits + " is not a field of odd prime order");
  return FieldDescriptor::prime_field(pv);
}

namespace detail
{

class Scanner
{
public:
  explicit Scanner(const std::string& src) : src_(src) {}

  std::size_t pos() const { return pos_; }
  const std::string& source() const { return src_; }

  void skip_ws()
  {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
  }

  bool at_end()
  {
    skip_ws();
    return pos_ >= src_.size();
  }

  char peek()
  {
    skip_ws();
    return pos_ < src_.size() ? src_[pos_] : '\0';
  }

  bool accept(char c)
  {
    if (peek() == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  bool accept_word(const std::string& w)
  {
    skip_ws();
    if (src_.compare(pos_, w.size(), w) == 0) {
      pos_ += w.size();
      return true;
    }
    return false;
  }

  void expect(char c)
  {
    if (!accept(c))
      fail(std::string("expected '") + c + "'");
  }

  bool digit_ahead()
  {
    skip_ws();
    return pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]));
  }

  BigInt natural()
  {
    if (!digit_ahead())
      fail("expected a number");
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_])))
      ++pos_;
    if (pos_ - start > 200)
      throw ParseError("number is too long", start);
    // Digit by digit: the string constructor would read a leading 0 as octal.
    BigInt v = 0;
    for (std::size_t i = start; i < pos_; ++i)
      v = v * 10 + (src_[i] - '0');
    return v;
  }

  std::int64_t small_natural()
  {
    std::size_t start = (skip_ws(), pos_);
    BigInt v = natural();
    if (v > INT64_MAX / 4)
      throw ParseError("integer out of range", start);
    return static_cast<std::int64_t>(v);
  }

  /// rat := ['-'] int ['/' int]
  Rational rational()
  {
    bool neg = accept('-');
    std::size_t start = (skip_ws(), pos_);
    BigInt num = natural();
    BigInt den = 1;
    if (accept('/')) {
      std::size_t dpos = (skip_ws(), pos_);
      den = natural();
      if (den == 0)
        throw ParseError("zero denominator", dpos);
    }
    (void)start;
    Rational r(num, den);
    return neg ? Rational(-r) : r;
  }

  [[noreturn]] void fail(const std::string& what)
  {
    skip_ws();
    std::string found = pos_ < src_.size() ? std::string("'") + src_[pos_] + "'" : std::string("end of input");
    throw ParseError(what + " at position " + std::to_string(pos_) + ", found " + found, pos_);
  }

private:
  const std::string& src_;
  std::size_t pos_ = 0;
};

// Square class of a nonzero rational in the field, with errors mapped to
// parse/unsupported errors.
inline SquareClass class_at(const FieldDescriptor& field, const Rational& r, std::size_t pos)
{
  if (r == 0)
    throw ParseError("zero square class", pos);
  if (field.kind() == FieldKind::PrimeField) {
    std::int64_t p = field.characteristic();
    if (boost::multiprecision::numerator(r) % p == 0)
      throw ParseError("zero square class", pos);
    if (boost::multiprecision::denominator(r) % p == 0)
      throw ParseError("denominator vanishes in " + field.name(), pos);
  }
  try {
    return class_of(field, r);
  }
  catch (const std::domain_error& e) {
    throw UnsupportedError(e.what());
  }
  catch (const std::overflow_error& e) {
    throw UnsupportedError(e.what());
  }
}

inline std::int64_t to_coefficient(const BigInt& v, std::size_t pos)
{
  if (v > INT64_MAX / 4)
    throw ParseError("coefficient out of range", pos);
  return static_cast<std::int64_t>(v);
}

} // namespace detail

/// form := ['-'] term {('+'|'-') term}
/// term := [int ['*']] ('<' rat '>' | 'H')
inline GWElement parse_form(const std::string& src, const FieldDescriptor& field)
{
  GWElement out = GWElement::zero(field);
  // "0" is how the zero class renders.
  auto first = src.find_first_not_of(" \t\n\r");
  if (first != std::string::npos && src.find_last_not_of(" \t\n\r") == first && src[first] == '0')
    return out;
  detail::Scanner sc(src);
  bool negative = sc.accept('-');
  while (true) {
    std::int64_t coeff = 1;
    if (sc.digit_ahead()) {
      std::size_t cpos = sc.pos();
      coeff = detail::to_coefficient(sc.natural(), cpos);
      sc.accept('*');
    }
    if (negative)
      coeff = -coeff;
    if (sc.accept('<')) {
      std::size_t vpos = sc.pos();
      Rational r = sc.rational();
      sc.expect('>');
      out += GWElement::generator(detail::class_at(field, r, vpos), coeff);
    }
    else if (sc.accept('H')) {
      out += hyperbolic(field, coeff);
    }
    else {
      sc.fail("expected '<' or 'H'");
    }
    if (sc.at_end())
      break;
    if (sc.accept('+'))
      negative = false;
    else if (sc.accept('-'))
      negative = true;
    else
      sc.fail("expected '+' or '-'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Algebra expressions
// ---------------------------------------------------------------------------

/// The value of an algebra expression. Multiquadratic expressions carry
/// their virtual Galois set; any polynomial atom makes the value trace-only.
struct AlgebraValue
{
  MQContext context;
  std::optional<VirtualGaloisSet> galois;
  GWElement trace;
  std::int64_t dimension = 0;
  std::vector<EtalePoly> polynomials;
};

namespace detail
{

struct AlgebraAtom
{
  enum class Kind { Base, Multiquadratic, Polynomial } kind = Kind::Base;
  std::vector<SquareClass> classes;
  std::optional<EtalePoly> poly;
  std::size_t pos = 0;
};

struct AlgebraTerm
{
  std::int64_t coeff = 1;
  std::vector<AlgebraAtom> atoms;
};

// intpoly := ['-'] pterm {('+'|'-') pterm}; pterm := int ['*'] ['x' ['^' int]] | 'x' ['^' int]
inline EtalePoly parse_intpoly(Scanner& sc)
{
  std::size_t start = sc.pos();
  std::map<std::int64_t, BigInt> coeffs;
  bool negative = sc.accept('-');
  while (true) {
    BigInt c = 1;
    bool have_number = false;
    if (sc.digit_ahead()) {
      c = sc.natural();
      have_number = true;
      sc.accept('*');
    }
    std::int64_t deg = 0;
    if (sc.accept('x')) {
      deg = 1;
      if (sc.accept('^')) {
        std::size_t dpos = (sc.skip_ws(), sc.pos());
        deg = sc.small_natural();
        if (deg > 64)
          throw ParseError("polynomial degree too large", dpos);
      }
    }
    else if (!have_number) {
      sc.fail("expected a polynomial term");
    }
    coeffs[deg] += negative ? BigInt(-c) : c;
    if (sc.peek() == ')')
      break;
    if (sc.accept('+'))
      negative = false;
    else if (sc.accept('-'))
      negative = true;
    else
      sc.fail("expected '+', '-' or ')'");
  }
  RationalPoly f;
  for (const auto& [d, c] : coeffs) {
    if (f.size() <= static_cast<std::size_t>(d))
      f.resize(static_cast<std::size_t>(d) + 1, Rational(0));
    f[static_cast<std::size_t>(d)] = Rational(c);
  }
  try {
    return EtalePoly(std::move(f));
  }
  catch (const std::invalid_argument& e) {
    throw ParseError(e.what(), start);
  }
}

inline AlgebraAtom parse_atom(Scanner& sc, const FieldDescriptor& field)
{
  AlgebraAtom atom;
  atom.pos = (sc.skip_ws(), sc.pos());
  if (sc.accept_word("poly")) {
    sc.expect('(');
    atom.kind = AlgebraAtom::Kind::Polynomial;
    atom.poly = parse_intpoly(sc);
    sc.expect(')');
    return atom;
  }
  if (!sc.accept('k'))
    sc.fail("expected 'k', 'k(sqrt ...)' or 'poly(...)'");
  if (!sc.accept('('))
    return atom;
  atom.kind = AlgebraAtom::Kind::Multiquadratic;
  do {
    if (!sc.accept_word("sqrt"))
      sc.fail("expected 'sqrt'");
    std::size_t vpos = (sc.skip_ws(), sc.pos());
    Rational r = sc.rational();
    atom.classes.push_back(class_at(field, r, vpos));
  } while (sc.accept(','));
  sc.expect(')');
  try {
    MQContext(field, atom.classes);
  }
  catch (const std::invalid_argument&) {
    throw ParseError("dependent square classes in k(...)", atom.pos);
  }
  return atom;
}

} // namespace detail

/// algebra := ['-'] aterm {('+'|'-') aterm}
/// aterm   := [int '*'] atom {'*' atom}
/// atom    := 'k' | 'k(' 'sqrt' rat {',' 'sqrt' rat} ')' | 'poly(' intpoly ')'
inline AlgebraValue parse_algebra(const std::string& src, const FieldDescriptor& field)
{
  detail::Scanner sc(src);
  std::vector<detail::AlgebraTerm> terms;
  bool negative = sc.accept('-');
  while (true) {
    detail::AlgebraTerm term;
    if (sc.digit_ahead()) {
      std::size_t cpos = sc.pos();
      term.coeff = detail::to_coefficient(sc.natural(), cpos);
      sc.expect('*');
    }
    if (negative)
      term.coeff = -term.coeff;
    term.atoms.push_back(detail::parse_atom(sc, field));
    while (sc.accept('*'))
      term.atoms.push_back(detail::parse_atom(sc, field));
    terms.push_back(std::move(term));
    if (sc.at_end())
      break;
    if (sc.accept('+'))
      negative = false;
    else if (sc.accept('-'))
      negative = true;
    else
      sc.fail("expected '+', '-' or '*'");
  }

  // One shared context, extended by each new class in order of appearance.
  MQContext ctx(field);
  bool has_poly = false;
  for (const auto& t : terms)
    for (const auto& a : t.atoms) {
      for (const auto& c : a.classes)
        ctx = ctx.extended(c);
      has_poly = has_poly || a.kind == detail::AlgebraAtom::Kind::Polynomial;
    }

  AlgebraValue out{ctx, std::nullopt, GWElement::zero(field), 0, {}};
  VirtualGaloisSet galois(ctx);
  for (const auto& t : terms) {
    VirtualGaloisSet g = VirtualGaloisSet::point(ctx);
    GWElement tr = GWElement::one(field);
    std::int64_t dim = 1;
    for (const auto& a : t.atoms) {
      switch (a.kind) {
      case detail::AlgebraAtom::Kind::Base:
        break;
      case detail::AlgebraAtom::Kind::Multiquadratic: {
        std::vector<f2::Vec> vecs;
        for (const auto& c : a.classes)
          vecs.push_back(*ctx.vector_of(c));
        if (!has_poly)
          g = g * subfield_class(ctx, vecs);
        tr = tr * orbit_trace(ctx, vecs);
        dim = checked_mul(dim, std::int64_t(1) << a.classes.size());
        break;
      }
      case detail::AlgebraAtom::Kind::Polynomial:
        try {
          tr = tr * trace_form_poly(*a.poly, field);
        }
        catch (const std::domain_error& e) {
          throw UnsupportedError(e.what());
        }
        dim = checked_mul(dim, a.poly->degree());
        out.polynomials.push_back(*a.poly);
        break;
      }
    }
    if (!has_poly)
      galois = galois + t.coeff * g;
    out.trace += t.coeff * tr;
    out.dimension = checked_add(out.dimension, checked_mul(t.coeff, dim));
  }
  if (!has_poly)
    out.galois = galois;
  return out;
}

} // namespace gwpower
