#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "burnside.hpp"
#include "etale_poly.hpp"
#include "field.hpp"
#include "galois_sets.hpp"
#include "gw_power.hpp"
#include "gw_ring.hpp"
#include "power_engine.hpp"
#include "report.hpp"

namespace gwpower
{

inline constexpr std::uint64_t kDefaultSeed = 20240611;

/// Outcome of a verification suite: a list of checks plus a count of the
/// individual comparisons behind them.
struct SuiteResult
{
  std::vector<CheckResult> checks;
  std::int64_t comparisons = 0;

  bool pass() const
  {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.informational || c.pass; });
  }

  void add(std::string name, std::string lhs, std::string rhs, bool ok)
  {
    checks.push_back(CheckResult{std::move(name), std::move(lhs), std::move(rhs), ok, false});
  }

  void append(const SuiteResult& other)
  {
    checks.insert(checks.end(), other.checks.begin(), other.checks.end());
    comparisons += other.comparisons;
  }

  std::string summary() const
  {
    std::int64_t failed = 0;
    for (const auto& c : checks)
      failed += (!c.informational && !c.pass) ? 1 : 0;
    std::ostringstream os;
    os << checks.size() << " checks, " << comparisons << " comparisons, " << failed << " failed";
    return os.str();
  }
};

namespace detail
{

// Tally of failures for one named family of comparisons; keeps the first witness.
struct Tally
{
  std::int64_t total = 0;
  std::int64_t failed = 0;
  std::string witness_lhs;
  std::string witness_rhs;

  void record(bool ok, const std::function<std::string()>& lhs, const std::function<std::string()>& rhs)
  {
    ++total;
    if (!ok && failed++ == 0) {
      witness_lhs = lhs();
      witness_rhs = rhs();
    }
  }

  void emit(SuiteResult& out, const std::string& name) const
  {
    out.comparisons += total;
    if (failed == 0)
      out.add(name, std::to_string(total) + " comparisons", "all equal", true);
    else
      out.add(name + " (" + std::to_string(failed) + "/" + std::to_string(total) + " failed; first witness)",
              witness_lhs, witness_rhs, false);
  }
};

template <class F>
void guarded(SuiteResult& out, const std::string& name, F&& body)
{
  try {
    body();
  }
  catch (const std::exception& e) {
    out.add(name, "exception", e.what(), false);
  }
}

} // namespace detail

// ---------------------------------------------------------------------------
// Random samples
// ---------------------------------------------------------------------------

/// Square classes used for random samples: products of subsets of
/// {-1, 2, 3, 5} over Q, and the whole square-class group otherwise.
inline std::vector<SquareClass> sample_classes(const FieldDescriptor& f)
{
  std::vector<SquareClass> out;
  switch (f.kind()) {
  case FieldKind::Rationals: {
    const std::int64_t atoms[] = {-1, 2, 3, 5};
    for (int mask = 0; mask < 16; ++mask) {
      std::int64_t v = 1;
      for (int i = 0; i < 4; ++i)
        if (mask & (1 << i))
          v *= atoms[i];
      out.push_back(class_of(f, v));
    }
    break;
  }
  case FieldKind::PrimeField:
    out = {unit_class(f), SquareClass(f, f.nonresidue())};
    break;
  case FieldKind::RealClosed:
    out = {unit_class(f), SquareClass(f, -1)};
    break;
  case FieldKind::ComplexClosed:
    out = {unit_class(f)};
    break;
  }
  return out;
}

inline GWElement random_gw(std::mt19937_64& rng, const FieldDescriptor& f, int max_terms = 2, int max_coeff = 2)
{
  auto pool = sample_classes(f);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> terms(1, max_terms);
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  GWElement x = GWElement::zero(f);
  int t = terms(rng);
  for (int i = 0; i < t; ++i)
    x += GWElement::generator(pool[pick(rng)], coeff(rng));
  return x;
}

inline TruncatedSeries<GWElement> random_gw_series(std::mt19937_64& rng, const FieldDescriptor& f, int n,
                                                   int max_terms = 2, int max_coeff = 2)
{
  std::vector<GWElement> c{GWElement::one(f)};
  for (int i = 1; i <= n; ++i)
    c.push_back(random_gw(rng, f, max_terms, max_coeff));
  return TruncatedSeries<GWElement>(std::move(c));
}

inline TruncatedSeries<std::int64_t> random_int_series(std::mt19937_64& rng, int n, int max_coeff = 2)
{
  std::uniform_int_distribution<int> coeff(-max_coeff, max_coeff);
  std::vector<std::int64_t> c{1};
  for (int i = 1; i <= n; ++i)
    c.push_back(coeff(rng));
  return TruncatedSeries<std::int64_t>(std::move(c));
}

/// Nonzero rational p/q with |p|, q <= height.
inline Rational random_rational(std::mt19937_64& rng, int height)
{
  std::uniform_int_distribution<int> num(-height, height);
  std::uniform_int_distribution<int> den(1, height);
  int p = 0;
  while (p == 0)
    p = num(rng);
  return Rational(p, den(rng));
}

// ---------------------------------------------------------------------------
// Power-structure axioms
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& axiom_labels()
{
  static const std::vector<std::string> labels{"axiom 1", "axiom 2",    "axiom 3",    "axiom 4",     "axiom 5",
                                               "axiom 6", "axiom 7",    "a_0 = 1",    "a_1 = id",    "a_i(0) = 0",
                                               "a_i(1) = 1", "convolution"};
  return labels;
}

namespace detail
{

inline void summarize_axioms(SuiteResult& out, const std::string& ring_name,
                             const std::vector<AxiomViolation>& violations, std::size_t samples)
{
  std::map<std::string, std::vector<const AxiomViolation*>> by_label;
  for (const auto& v : violations)
    by_label[v.axiom].push_back(&v);
  for (const auto& label : axiom_labels()) {
    auto it = by_label.find(label);
    out.comparisons += static_cast<std::int64_t>(samples);
    if (it == by_label.end())
      out.add(ring_name + " " + label, std::to_string(samples) + " samples", "0 violations", true);
    else
      out.add(ring_name + " " + label, std::to_string(it->second.size()) + " violations",
              "sample " + std::to_string(it->second.front()->sample) + ": " + it->second.front()->detail, false);
  }
}

} // namespace detail

inline SuiteResult suite_axioms_integers(int samples = 50, int n = 6, std::uint64_t seed = kDefaultSeed)
{
  SuiteResult out;
  detail::guarded(out, "Z axioms", [&] {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> small(-3, 3);
    std::vector<AxiomSample<std::int64_t>> smp;
    for (int i = 0; i < samples; ++i)
      smp.push_back({random_int_series(rng, n), random_int_series(rng, n), small(rng), small(rng)});
    detail::summarize_axioms(out, "Z", check_axioms(BinomialPowerFns{}, smp, n), smp.size());
  });
  return out;
}

inline SuiteResult suite_axioms_gw(const FieldDescriptor& f, int samples = 50, int n = 6,
                                   std::uint64_t seed = kDefaultSeed)
{
  SuiteResult out;
  std::string name = "GW(" + f.name() + ")";
  detail::guarded(out, name + " axioms", [&] {
    std::mt19937_64 rng(seed ^ static_cast<std::uint64_t>(f.characteristic() * 7919 + static_cast<int>(f.kind())));
    std::vector<AxiomSample<GWElement>> smp;
    for (int i = 0; i < samples; ++i) {
      auto fs = random_gw_series(rng, f, n, 2, 1);
      auto gs = random_gw_series(rng, f, n, 2, 1);
      smp.push_back({fs, gs, random_gw(rng, f, 2, 2), random_gw(rng, f, 2, 2)});
    }
    detail::summarize_axioms(out, name, check_axioms(GWPowerFns(f), smp, n), smp.size());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Well-definedness on the defining relations
// ---------------------------------------------------------------------------

inline SuiteResult suite_welldef(const FieldDescriptor& f, int pairs = 300, int height = 50, int n_max = 8,
                                 std::uint64_t seed = kDefaultSeed)
{
  SuiteResult out;
  detail::Tally square_rel, sum_rel;
  detail::guarded(out, "well-definedness", [&] {
    std::mt19937_64 rng(seed + 1);
    GWPowerFns fns(f);
    auto usable = [&](const Rational& r) {
      if (r == 0)
        return false;
      if (f.kind() == FieldKind::PrimeField) {
        std::int64_t p = f.characteristic();
        return boost::multiprecision::numerator(r) % p != 0 && boost::multiprecision::denominator(r) % p != 0;
      }
      return true;
    };
    int made = 0;
    while (made < pairs) {
      Rational a = random_rational(rng, height);
      Rational b = random_rational(rng, height);
      Rational s = a + b;
      if (!usable(a) || !usable(b) || !usable(s))
        continue;
      ++made;
      auto lhs1 = fns.geometric(GWElement::form(f, a), n_max);
      auto rhs1 = fns.geometric(GWElement::form(f, a * b * b), n_max);
      auto lhs2 = fns.geometric(GWElement::form(f, a) + GWElement::form(f, b), n_max);
      auto rhs2 = fns.geometric(GWElement::form(f, s) + GWElement::form(f, s * a * b), n_max);
      for (int n = 0; n <= n_max; ++n) {
        auto tag = [&] {
          std::ostringstream os;
          os << "a=" << a << " b=" << b << " n=" << n << ": ";
          return os.str();
        };
        square_rel.record(
            is_equal(lhs1[n], rhs1[n]), [&] { return tag() + lhs1[n].to_string(); },
            [&] { return rhs1[n].to_string(); });
        sum_rel.record(
            is_equal(lhs2[n], rhs2[n]), [&] { return tag() + lhs2[n].to_string(); },
            [&] { return rhs2[n].to_string(); });
      }
    }
    square_rel.emit(out, "a_n(<a>) = a_n(<ab^2>) over " + f.name());
    sum_rel.emit(out, "a_n(<a>+<b>) = a_n(<a+b>+<(a+b)ab>) over " + f.name());
  });
  return out;
}

// ---------------------------------------------------------------------------
// Quadratic and biquadratic closed forms
// ---------------------------------------------------------------------------

/// The expected class of P_a^(n): (m+1)[P_a] for n = 2m+1, [pt] + m[P_a] for n = 2m.
inline VirtualGaloisSet quadratic_sym_expected(const MQContext& ctx, int n)
{
  VirtualGaloisSet pa = subfield_class(ctx, {1u});
  if (n % 2 == 1)
    return static_cast<std::int64_t>((n + 1) / 2) * pa;
  return VirtualGaloisSet::point(ctx) + static_cast<std::int64_t>(n / 2) * pa;
}

/// Tr(P_a^(n)): ((n+1)/2)(<2>+<2a>) for odd n, <1> + (n/2)(<2>+<2a>) for even n.
inline GWElement quadratic_trace_expected(const SquareClass& a, int n)
{
  const FieldDescriptor& f = a.field();
  GWElement tr = GWElement::form(f, 2) + GWElement::generator(mul_class(class_of(f, 2), a));
  if (n % 2 == 1)
    return static_cast<std::int64_t>((n + 1) / 2) * tr;
  return GWElement::one(f) + static_cast<std::int64_t>(n / 2) * tr;
}

inline SuiteResult suite_quadratic(const std::vector<std::int64_t>& radicands = {2, 3, 5, -1}, int n_max = 10)
{
  SuiteResult out;
  const auto q = FieldDescriptor::rationals();
  for (std::int64_t a : radicands) {
    std::string tag = "P_" + std::to_string(a);
    detail::guarded(out, tag, [&] {
      SquareClass ca = class_of(q, a);
      MQContext ctx(q, {ca});
      GSet pa = spec_subfield(ctx, {1u});
      auto an = a_series(trace_form(pa), n_max);
      detail::Tally sets, iso, traces, powers;
      for (int n = 0; n <= n_max; ++n) {
        GSet s = sym_power(pa, n);
        VirtualGaloisSet got = decompose(s);
        VirtualGaloisSet want = quadratic_sym_expected(ctx, n);
        sets.record(got == want, [&] { return "n=" + std::to_string(n) + ": " + got.to_string(); },
                    [&] { return want.to_string(); });
        iso.record(isomorphic(s, realize(want)), [&] { return "n=" + std::to_string(n); },
                   [] { return std::string("not isomorphic"); });
        GWElement tr = trace_form(got);
        GWElement expect = quadratic_trace_expected(ca, n);
        traces.record(is_equal(tr, expect), [&] { return "n=" + std::to_string(n) + ": " + tr.to_string(); },
                      [&] { return expect.to_string(); });
        powers.record(is_equal(tr, an[static_cast<std::size_t>(n)]),
                      [&] { return "n=" + std::to_string(n) + ": " + tr.to_string(); },
                      [&] { return an[static_cast<std::size_t>(n)].to_string(); });
      }
      sets.emit(out, tag + ": orbit decomposition of sym^n");
      iso.emit(out, tag + ": sym^n isomorphic to the expected G-set");
      traces.emit(out, tag + ": Tr(sym^n) closed form");
      powers.emit(out, tag + ": Tr(sym^n) = a_n(Tr)");
    });
  }
  return out;
}

/// Burnside-ring coefficients of the Klein series, read off a virtual class
/// of the biquadratic context (trivial orbit, the three quadratic orbits, free orbit).
inline std::vector<std::int64_t> klein_coefficients(const VirtualGaloisSet& v)
{
  std::vector<std::int64_t> c(5, 0);
  for (const auto& [t, coeff] : v.terms()) {
    std::size_t dim = t.stabilizer.size();
    if (dim == 2)
      c[4] += coeff;
    else if (dim == 0)
      c[0] += coeff;
    else {
      // Stabilizer of order 2: index by the nonzero vector it contains.
      f2::Vec h = t.stabilizer.front();
      c[static_cast<std::size_t>(h)] += coeff;
    }
  }
  return c;
}

inline SuiteResult suite_burnside(int n_max = 12)
{
  SuiteResult out;
  detail::guarded(out, "Klein series", [&] {
    FiniteGroup v4 = named_group("V4");
    auto brute = sym_series(v4, regular_action(v4), n_max);
    auto closed = klein_closed_series(n_max);
    detail::Tally t;
    for (int n = 0; n <= n_max; ++n)
      t.record(brute[static_cast<std::size_t>(n)] == closed[static_cast<std::size_t>(n)],
               [&] { return "n=" + std::to_string(n) + ": " + brute[static_cast<std::size_t>(n)].to_string(v4); },
               [&] { return closed[static_cast<std::size_t>(n)].to_string(v4); });
    t.emit(out, "V4 regular: brute-force sym series = closed Klein series");
  });
  return out;
}

inline SuiteResult suite_biquadratic(const std::vector<std::pair<std::int64_t, std::int64_t>>& fields = {{2, 3},
                                                                                                    {-1, 2},
                                                                                                    {3, 5}},
                                     int n_max = 12)
{
  SuiteResult out = suite_burnside(n_max);
  const auto q = FieldDescriptor::rationals();
  auto closed = klein_closed_series(n_max);
  for (auto [alpha, beta] : fields) {
    std::string tag = "Q(sqrt " + std::to_string(alpha) + ", sqrt " + std::to_string(beta) + ")";
    detail::guarded(out, tag, [&] {
      SquareClass ca = class_of(q, alpha), cb = class_of(q, beta);
      MQContext ctx(q, {ca, cb});
      GSet k = spec_subfield(ctx, {1u, 2u});
      GWElement tr = trace_form(k);
      auto an = a_series(tr, n_max);
      detail::Tally series, closed_form, powers;
      for (int n = 0; n <= n_max; ++n) {
        VirtualGaloisSet got = decompose(sym_power(k, n));
        auto coeffs = klein_coefficients(got);
        const auto& want = closed[static_cast<std::size_t>(n)].coeffs;
        // The three order-2 subgroups share one coefficient, so their order is immaterial.
        bool ok = coeffs[0] == want[0] && coeffs[4] == want[4] && coeffs[1] == want[1] && coeffs[2] == want[1] &&
                  coeffs[3] == want[1];
        series.record(ok, [&] { return "n=" + std::to_string(n) + ": " + got.to_string(); },
                      [&] { return closed[static_cast<std::size_t>(n)].to_string(named_group("V4")); });
        GWElement t = trace_form(got);
        GWElement cf = closed_biquadratic(ca, cb, n);
        closed_form.record(is_equal(t, cf), [&] { return "n=" + std::to_string(n) + ": " + t.to_string(); },
                           [&] { return cf.to_string(); });
        powers.record(is_equal(cf, an[static_cast<std::size_t>(n)]),
                      [&] { return "n=" + std::to_string(n) + ": " + cf.to_string(); },
                      [&] { return an[static_cast<std::size_t>(n)].to_string(); });
      }
      series.emit(out, tag + ": sym series = closed Klein series");
      closed_form.emit(out, tag + ": Tr(sym^n) = biquadratic closed form");
      powers.emit(out, tag + ": biquadratic closed form = a_n(q)");
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Compatibility of the trace with the power structures
// ---------------------------------------------------------------------------

/// All multisets of size 1..max_parts drawn from the given classes.
inline std::vector<VirtualGaloisSet> unions_of(const std::vector<VirtualGaloisSet>& parts, int max_parts)
{
  std::vector<VirtualGaloisSet> out;
  std::vector<std::size_t> idx;
  std::function<void(std::size_t, VirtualGaloisSet, int)> rec = [&](std::size_t from, VirtualGaloisSet acc,
                                                                     int left) {
    if (!acc.terms().empty())
      out.push_back(acc);
    if (left == 0)
      return;
    for (std::size_t i = from; i < parts.size(); ++i)
      rec(i, acc + parts[i], left - 1);
  };
  if (!parts.empty())
    rec(0, VirtualGaloisSet(parts.front().context()), max_parts);
  return out;
}

/// Every subfield spectrum of a context (one per subspace of F_2^r).
inline std::vector<VirtualGaloisSet> all_subfields(const MQContext& ctx)
{
  std::set<std::vector<f2::Vec>> spaces;
  int r = ctx.rank();
  // Enumerate subspaces via spans of all subsets of vectors (small r only).
  std::vector<f2::Vec> vecs;
  for (f2::Vec v = 1; v < (f2::Vec(1) << r); ++v)
    vecs.push_back(v);
  std::function<void(std::size_t, std::vector<f2::Vec>)> rec = [&](std::size_t from, std::vector<f2::Vec> cur) {
    spaces.insert(f2::rref(cur));
    if (cur.size() >= static_cast<std::size_t>(r))
      return;
    for (std::size_t i = from; i < vecs.size(); ++i) {
      auto next = cur;
      next.push_back(vecs[i]);
      rec(i + 1, next);
    }
  };
  rec(0, {});
  std::vector<VirtualGaloisSet> out;
  for (const auto& s : spaces)
    out.push_back(subfield_class(ctx, s));
  return out;
}

inline std::vector<CheckResult> compat_checks(const VirtualGaloisSet& a, int n_max, const std::string& label)
{
  std::vector<CheckResult> out;
  for (const auto& c : verify_trace_compat(a, n_max))
    out.push_back(CheckResult{label + " n=" + std::to_string(c.n), c.lhs.to_string(), c.rhs.to_string(), c.pass,
                              false});
  return out;
}

inline std::vector<CheckResult> rank_checks(const GWElement& trace, std::int64_t dim, int n_max,
                                            const std::string& label)
{
  std::vector<CheckResult> out;
  for (const auto& c : verify_rank_law(trace, dim, n_max))
    out.push_back(CheckResult{label + " rank n=" + std::to_string(c.n), c.lhs.to_string(), c.rhs.to_string(),
                              c.pass, false});
  return out;
}

/// The four rank-3 contexts built from {-1, 2, 3, 5}.
inline std::vector<MQContext> main_theorem_contexts()
{
  const auto q = FieldDescriptor::rationals();
  const std::int64_t atoms[] = {-1, 2, 3, 5};
  std::vector<MQContext> out;
  for (int skip = 3; skip >= 0; --skip) {
    std::vector<SquareClass> cls;
    for (int i = 0; i < 4; ++i)
      if (i != skip)
        cls.push_back(class_of(q, atoms[i]));
    out.emplace_back(q, cls);
  }
  return out;
}

inline std::vector<std::pair<std::string, VirtualGaloisSet>> virtual_examples()
{
  const auto q = FieldDescriptor::rationals();
  MQContext c3(q, {class_of(q, 3)});
  MQContext c23(q, {class_of(q, 2), class_of(q, 3)});
  return {
      {"[P_3] - [pt]", subfield_class(c3, {1u}) - VirtualGaloisSet::point(c3)},
      {"[Q(sqrt 2, sqrt 3)] - 2[pt]", subfield_class(c23, {1u, 2u}) - 2 * VirtualGaloisSet::point(c23)},
      {"[P_3] - [pt] + 2[pt]", subfield_class(c3, {1u}) - VirtualGaloisSet::point(c3) + 2 * VirtualGaloisSet::point(c3)},
  };
}

/// Trace compatibility and the rank law over all unions (at most max_parts
/// components) of subfield spectra of the rank-3 contexts, plus virtual examples.
inline SuiteResult suite_main_theorem(int n_max = 6, int max_parts = 3, int virtual_n_max = 5)
{
  SuiteResult out;
  for (const auto& ctx : main_theorem_contexts()) {
    std::string tag = "context " + ctx.to_string();
    detail::guarded(out, tag, [&] {
      auto algebras = unions_of(all_subfields(ctx), max_parts);
      SymPowerFns sym(ctx);
      detail::Tally compat, rank;
      for (const auto& a : algebras) {
        auto lhs_series = sym.geometric(a, n_max);
        GWElement tr = trace_form(a);
        auto rhs_series = a_series(tr, n_max);
        std::int64_t m = a.dimension();
        for (int n = 0; n <= n_max; ++n) {
          GWElement lhs = trace_form(lhs_series[n]);
          const GWElement& rhs = rhs_series[static_cast<std::size_t>(n)];
          compat.record(is_equal(lhs, rhs), [&] { return a.to_string() + " n=" + std::to_string(n) + ": " + lhs.to_string(); },
                        [&] { return rhs.to_string(); });
          std::int64_t want = binomial(m + n - 1, n);
          rank.record(rhs.rank() == want && lhs_series[n].dimension() == want,
                      [&] { return a.to_string() + " n=" + std::to_string(n) + ": rank " + std::to_string(rhs.rank()); },
                      [&] { return std::to_string(want); });
        }
      }
      compat.emit(out, tag + ": Tr(A^(n)) = a_n(Tr A) over " + std::to_string(algebras.size()) + " algebras");
      rank.emit(out, tag + ": rank law over " + std::to_string(algebras.size()) + " algebras");
    });
  }
  for (const auto& [name, a] : virtual_examples()) {
    detail::guarded(out, name, [&] {
      detail::Tally compat;
      for (const auto& c : verify_trace_compat(a, virtual_n_max))
        compat.record(c.pass, [&] { return "n=" + std::to_string(c.n) + ": " + c.lhs.to_string(); },
                      [&] { return c.rhs.to_string(); });
      compat.emit(out, name + ": Tr(A^(n)) = a_n(Tr A)");
    });
  }
  return out;
}

/// x^3 - 2, x^4 + x + 1, x^2 + 1, x^5 - x - 1, x^3 - 3x + 1 (coefficients from degree 0 up).
inline std::vector<RationalPoly> rank_law_polynomials()
{
  return {{-2, 0, 0, 1}, {1, 1, 0, 0, 1}, {1, 0, 1}, {-1, -1, 0, 0, 0, 1}, {1, -3, 0, 1}};
}

/// Rank law for the multiquadratic algebras of the main suite and for
/// polynomial algebras Q[x]/(f).
inline SuiteResult suite_rank_law(const std::vector<RationalPoly>& polys = rank_law_polynomials(), int n_max = 6,
                                  int max_parts = 3)
{
  SuiteResult out;
  for (const auto& ctx : main_theorem_contexts()) {
    std::string tag = "context " + ctx.to_string();
    detail::guarded(out, tag, [&] {
      detail::Tally rank;
      for (const auto& a : unions_of(all_subfields(ctx), max_parts)) {
        auto checks = verify_rank_law(trace_form(a), a.dimension(), n_max);
        for (const auto& c : checks)
          rank.record(c.pass, [&] { return a.to_string() + " n=" + std::to_string(c.n) + ": " + c.rhs.to_string(); },
                      [&] { return c.lhs.to_string(); });
      }
      rank.emit(out, tag + ": rank(a_n(Tr A)) = C(m+n-1, n)");
    });
  }
  for (const auto& p : polys) {
    detail::guarded(out, poly::to_string(p), [&] {
      EtalePoly f(p);
      GWElement tr = trace_form_poly(f);
      detail::Tally rank;
      rank.record(tr.rank() == f.degree(), [&] { return "rank Tr = " + std::to_string(tr.rank()); },
                  [&] { return std::to_string(f.degree()); });
      for (const auto& c : verify_rank_law(tr, f.degree(), n_max))
        rank.record(c.pass, [&] { return "n=" + std::to_string(c.n) + ": " + c.rhs.to_string(); },
                    [&] { return c.lhs.to_string(); });
      rank.emit(out, "Q[x]/(" + f.to_string() + "): rank law");
    });
  }
  return out;
}

// ---------------------------------------------------------------------------
// Comparison with the classical symmetric power
// ---------------------------------------------------------------------------

inline SuiteResult suite_classical(const std::vector<std::int64_t>& primes = {3, 5, 7, 11})
{
  SuiteResult out;
  for (std::int64_t p : primes) {
    detail::guarded(out, "F" + std::to_string(p), [&] {
      auto f = FieldDescriptor::prime_field(p);
      for (const auto& a : sample_classes(f)) {
        std::string name = "F" + std::to_string(p) + ": <" + std::to_string(a.rep()) + ">";
        bool predicate = agrees_with_classical(a);
        bool direct = agrees_with_classical_up_to(a, 8);
        out.comparisons += 9;
        out.add(name + " agrees with the classical power",
                std::string("predicate ") + (predicate ? "true" : "false") + ", direct n<=8 " +
                    (direct ? "true" : "false"),
                "true", predicate && direct);
      }
    });
  }
  const auto q = FieldDescriptor::rationals();
  detail::guarded(out, "Q witnesses", [&] {
    SquareClass three = class_of(q, 3);
    GWElement a2 = a_n(GWElement::generator(three), 2);
    GWElement one = GWElement::one(q);
    GWElement classical = classical_sn_generator(three, 2);
    out.comparisons += 3;
    out.add("Q: a_2(<3>) differs from <1>", a2.to_string(), "not equal to <1>", !is_equal(a2, one));
    out.add("Q: classical S^2(<3>) = <1>", classical.to_string(), "<1>", is_equal(classical, one));
    out.add("Q: agrees_with_classical(3) is false", agrees_with_classical(three) ? "true" : "false", "false",
            !agrees_with_classical(three));

    SquareClass seven = class_of(q, 7);
    Rational x(3, 5), y(1, 5);
    Rational conic = 2 * x * x + 7 * y * y;
    out.comparisons += 3;
    out.add("Q: 2x^2 + 7y^2 = 1 at (3/5, 1/5)", conic.str(), "1", conic == 1);
    out.add("Q: agrees_with_classical(7)", agrees_with_classical(seven) ? "true" : "false", "true",
            agrees_with_classical(seven));
    out.add("Q: a_n(<7>) = <7^n> for n <= 8", agrees_with_classical_up_to(seven, 8) ? "true" : "false", "true",
            agrees_with_classical_up_to(seven, 8));
  });
  return out;
}

// ---------------------------------------------------------------------------
// Twisting
// ---------------------------------------------------------------------------

/// Right-hand side of the decomposition of (X u^G X)^(n):
/// sum_{i < n/2} (X^(i) x X^(n-i)) u^G (X^(i) x X^(n-i)), plus X^(n/2) x^G X^(n/2) for even n.
inline EquivariantSet double_swap_sym_expected(const GSet& x, int n)
{
  EquivariantSet out = empty_equivariant(x.context());
  for (int i = 0; 2 * i < n; ++i)
    out = disjoint_union(out, double_swap(product(sym_power(x, i), sym_power(x, n - i))));
  if (n % 2 == 0)
    out = disjoint_union(out, product_swap(sym_power(x, n / 2)));
  return out;
}

/// Every G-set of size at most max_size over a context, up to isomorphism.
inline std::vector<GSet> small_gsets(const MQContext& ctx, int max_size)
{
  std::vector<std::pair<VirtualGaloisSet, std::int64_t>> orbits;
  for (const auto& v : all_subfields(ctx))
    orbits.emplace_back(v, v.dimension());
  std::vector<GSet> out;
  std::function<void(std::size_t, VirtualGaloisSet, std::int64_t)> rec = [&](std::size_t from, VirtualGaloisSet acc,
                                                                             std::int64_t size) {
    if (size > 0)
      out.push_back(realize(acc));
    for (std::size_t i = from; i < orbits.size(); ++i)
      if (size + orbits[i].second <= max_size)
        rec(i, acc + orbits[i].first, size + orbits[i].second);
  };
  rec(0, VirtualGaloisSet(ctx), 0);
  return out;
}

inline SuiteResult suite_twisting(int n_max = 6, int max_size = 4)
{
  SuiteResult out;
  const auto q = FieldDescriptor::rationals();
  MQContext ctx(q, {class_of(q, 2), class_of(q, 3)});
  auto bases = small_gsets(ctx, max_size);

  detail::guarded(out, "symmetric powers of X u^G X", [&] {
    detail::Tally t;
    for (const auto& x : bases) {
      EquivariantSet e = double_swap(x);
      for (int n = 0; n <= n_max; ++n)
        t.record(isomorphic(sym_power_equivariant(e, n), double_swap_sym_expected(x, n)),
                 [&] { return decompose(x).to_string() + " n=" + std::to_string(n); },
                 [] { return std::string("not isomorphic"); });
    }
    t.emit(out, "(X u^G X)^(n) decomposition, " + std::to_string(bases.size()) + " base sets");
  });

  const std::vector<std::int64_t> twists{5, 7, 2, 6};
  detail::guarded(out, "twist of X u^G X", [&] {
    detail::Tally t;
    for (const auto& x : bases)
      for (std::int64_t dv : twists) {
        SquareClass d = class_of(q, dv);
        GSet lhs = twist(double_swap(x), d);
        MQContext ext = ctx.extended(d);
        GSet rhs = product(lift(x, ext), quadratic_gset(ext, d));
        t.record(isomorphic(lhs, rhs), [&] { return decompose(x).to_string() + " d=" + std::to_string(dv); },
                 [] { return std::string("not isomorphic"); });
      }
    t.emit(out, "twist(X u^G X, d) = X x Spec k(sqrt d)");
  });

  detail::guarded(out, "twist commutes with symmetric powers", [&] {
    detail::Tally t;
    for (const auto& x : bases)
      for (std::int64_t dv : {5, 2}) {
        SquareClass d = class_of(q, dv);
        EquivariantSet e = double_swap(x);
        GSet tw = twist(e, d);
        for (int n = 0; n <= n_max; ++n)
          t.record(isomorphic(twist(sym_power_equivariant(e, n), d), sym_power(tw, n)),
                   [&] { return decompose(x).to_string() + " d=" + std::to_string(dv) + " n=" + std::to_string(n); },
                   [] { return std::string("not isomorphic"); });
      }
    t.emit(out, "twist(E^(n), d) = twist(E, d)^(n)");
  });

  // Inheritance under tensoring with a quadratic field, with the symmetric
  // powers of A x Spec k(sqrt d) obtained through the twisting route.
  MQContext c3(q, {class_of(q, 3)});
  std::vector<std::pair<std::string, GSet>> algebras{{"P_3", spec_subfield(c3, {1u})},
                                                     {"Q(sqrt 2, sqrt 3)", spec_subfield(ctx, {1u, 2u})}};
  for (const auto& [name, a] : algebras)
    for (std::int64_t dv : {5, 7}) {
      std::string tag = name + " x Q(sqrt " + std::to_string(dv) + ")";
      detail::guarded(out, tag, [&] {
        SquareClass d = class_of(q, dv);
        bool base_ok = true;
        for (const auto& c : verify_trace_compat(decompose(a), n_max))
          base_ok = base_ok && c.pass;
        EquivariantSet e = double_swap(a);
        MQContext ext = a.context().extended(d);
        GSet tensor = product(lift(a, ext), quadratic_gset(ext, d));
        GWElement tr = trace_form(tensor);
        auto an = a_series(tr, n_max);
        detail::Tally t;
        for (int n = 0; n <= n_max; ++n) {
          GSet via_twist = twist(sym_power_equivariant(e, n), d);
          GWElement lhs = trace_form(via_twist);
          t.record(base_ok && is_equal(lhs, an[static_cast<std::size_t>(n)]) && isomorphic(via_twist, sym_power(tensor, n)),
                   [&] { return "n=" + std::to_string(n) + ": " + lhs.to_string(); },
                   [&] { return an[static_cast<std::size_t>(n)].to_string(); });
        }
        t.emit(out, tag + ": compatibility inherited from " + name);
      });
    }
  return out;
}

// ---------------------------------------------------------------------------
// Hilbert symbols
// ---------------------------------------------------------------------------

inline SuiteResult suite_hilbert(int pairs = 1000, int height = 50, std::uint64_t seed = kDefaultSeed)
{
  SuiteResult out;
  detail::guarded(out, "Hilbert reciprocity", [&] {
    std::mt19937_64 rng(seed + 9);
    detail::Tally t;
    for (int i = 0; i < pairs; ++i) {
      Rational a = random_rational(rng, height), b = random_rational(rng, height);
      int prod = hilbert_product(a, b);
      t.record(prod == 1,
               [&] {
                 std::ostringstream os;
                 os << "(" << a << ", " << b << "): product " << prod;
                 return os.str();
               },
               [] { return std::string("1"); });
    }
    t.emit(out, "prod_v (a,b)_v = 1");
  });
  detail::guarded(out, "local witnesses", [&] {
    int s = hilbert_symbol(2, 3, Place::at(3));
    out.comparisons += 1;
    out.add("(2,3)_3 = -1", std::to_string(s), "-1", s == -1);
    // 2 is a nonsquare mod p exactly for p = 3, 5 mod 8, and then [2] u [p] != 0 at p.
    for (std::int64_t p : {3, 5, 11, 13, 19, 29}) {
      int sp = hilbert_symbol(2, Rational(p), Place::at(p));
      out.comparisons += 1;
      out.add("(2," + std::to_string(p) + ")_" + std::to_string(p) + " = -1", std::to_string(sp), "-1", sp == -1);
    }
  });
  return out;
}

// ---------------------------------------------------------------------------
// Engine round trip
// ---------------------------------------------------------------------------

inline SuiteResult suite_roundtrip(int samples = 200, int n = 16, std::uint64_t seed = kDefaultSeed)
{
  SuiteResult out;
  detail::guarded(out, "Z round trip", [&] {
    std::mt19937_64 rng(seed + 3);
    BinomialPowerFns fns;
    detail::Tally t;
    for (int i = 0; i < samples; ++i) {
      auto f = random_int_series(rng, n);
      auto back = recompose(fns, decompose(fns, f), n);
      t.record(series_eq(fns.ring(), f, back),
               [&] { return series_to_string(f, [](std::int64_t v) { return std::to_string(v); }); },
               [&] { return series_to_string(back, [](std::int64_t v) { return std::to_string(v); }); });
    }
    t.emit(out, "Z: recompose(decompose(f)) = f");
  });
  detail::guarded(out, "GW(Q) round trip", [&] {
    std::mt19937_64 rng(seed + 4);
    const auto q = FieldDescriptor::rationals();
    GWPowerFns fns(q);
    detail::Tally t;
    for (int i = 0; i < samples; ++i) {
      auto f = random_gw_series(rng, q, n, 2, 1);
      auto back = recompose(fns, decompose(fns, f), n);
      auto fmt = [](const GWElement& x) { return x.to_string(); };
      t.record(series_eq(fns.ring(), f, back), [&] { return series_to_string(f, fmt); },
               [&] { return series_to_string(back, fmt); });
    }
    t.emit(out, "GW(Q): recompose(decompose(f)) = f");
  });
  return out;
}

} // namespace gwpower
