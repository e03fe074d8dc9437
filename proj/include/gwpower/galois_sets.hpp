#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "field.hpp"
#include "gw_power.hpp"
#include "gw_ring.hpp"
#include "power_engine.hpp"

namespace gwpower
{

/// Refuse symmetric powers with more multisets than this.
inline constexpr std::int64_t kSymPowerLimit = 1'000'000;

class resource_error : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// F_2 linear algebra on bitmasks (vectors of F_2^r, r <= 31)
// ---------------------------------------------------------------------------

namespace f2
{

using Vec = std::uint32_t;

/// Reduced row-echelon basis of the span, sorted by decreasing pivot.
inline std::vector<Vec> rref(std::vector<Vec> rows)
{
  std::vector<Vec> basis;
  for (Vec v : rows) {
    for (Vec b : basis)
      if (v & std::bit_floor(b))
        v ^= b;
    if (v == 0)
      continue;
    Vec pivot = std::bit_floor(v);
    for (Vec& b : basis)
      if (b & pivot)
        b ^= v;
    basis.push_back(v);
  }
  std::sort(basis.begin(), basis.end(), std::greater<>());
  return basis;
}

inline bool in_span(const std::vector<Vec>& basis, Vec v)
{
  for (Vec b : rref(basis))
    if (v & std::bit_floor(b))
      v ^= b;
  return v == 0;
}

inline int dot(Vec a, Vec b)
{
  return std::popcount(a & b) & 1;
}

/// Basis of {g in F_2^r : <g, v> = 0 for all v in span(rows)}.
inline std::vector<Vec> annihilator(const std::vector<Vec>& rows, int r)
{
  std::vector<Vec> out;
  for (Vec g = 0; g < (Vec(1) << r); ++g) {
    bool ok = true;
    for (Vec v : rows)
      if (dot(g, v)) {
        ok = false;
        break;
      }
    if (ok)
      out.push_back(g);
  }
  return rref(out);
}

inline std::vector<Vec> intersect(const std::vector<Vec>& a, const std::vector<Vec>& b, int r)
{
  auto ann_a = annihilator(a, r);
  auto ann_b = annihilator(b, r);
  ann_a.insert(ann_a.end(), ann_b.begin(), ann_b.end());
  return annihilator(ann_a, r);
}

} // namespace f2

// ---------------------------------------------------------------------------
// Multiquadratic contexts
// ---------------------------------------------------------------------------

/// An ordered list a_1..a_r of multiplicatively independent square classes.
/// The Galois group of k(sqrt a_1, ..., sqrt a_r) is G = F_2^r, where the
/// i-th generator negates sqrt a_i and fixes the others; a character vector
/// v in F_2^r stands for the class a^v = prod a_i^(v_i).
class MQContext
{
public:
  explicit MQContext(FieldDescriptor field, std::vector<SquareClass> classes = {})
  : field_(field), classes_(std::move(classes))
  {
    if (classes_.size() > 16)
      throw std::invalid_argument("multiquadratic context too large");
    for (std::size_t i = 0; i < classes_.size(); ++i) {
      require_same_field(field_, classes_[i].field());
      std::vector<SquareClass> prefix(classes_.begin(), classes_.begin() + static_cast<std::ptrdiff_t>(i));
      if (coordinates(prefix, classes_[i]))
        throw std::invalid_argument("square classes are not multiplicatively independent: " +
                                    std::to_string(classes_[i].rep()));
    }
  }

  const FieldDescriptor& field() const { return field_; }
  const std::vector<SquareClass>& classes() const { return classes_; }
  int rank() const { return static_cast<int>(classes_.size()); }

  SquareClass class_of_vector(f2::Vec v) const
  {
    SquareClass c = unit_class(field_);
    for (int i = 0; i < rank(); ++i)
      if (v & (f2::Vec(1) << i))
        c = mul_class(c, classes_[i]);
    return c;
  }

  /// Character vector of d, if d lies in the span of the context.
  std::optional<f2::Vec> vector_of(const SquareClass& d) const { return coordinates(classes_, d); }

  /// This context with d appended, unless d already lies in the span.
  MQContext extended(const SquareClass& d) const
  {
    if (vector_of(d))
      return *this;
    auto cls = classes_;
    cls.push_back(d);
    return MQContext(field_, std::move(cls));
  }

  bool is_prefix_of(const MQContext& other) const
  {
    if (!(field_ == other.field_) || rank() > other.rank())
      return false;
    for (int i = 0; i < rank(); ++i)
      if (!(classes_[i] == other.classes_[i]))
        return false;
    return true;
  }

  friend bool operator==(const MQContext& a, const MQContext& b)
  {
    return a.field_ == b.field_ && a.classes_ == b.classes_;
  }

  std::string to_string() const
  {
    std::ostringstream os;
    os << '(';
    for (int i = 0; i < rank(); ++i)
      os << (i ? ", " : "") << classes_[i].rep();
    os << ')';
    return os.str();
  }

private:
  // Solve d = prod cls_i^(v_i) over F_2 using atom coordinates.
  static std::optional<f2::Vec> coordinates(const std::vector<SquareClass>& cls, const SquareClass& d)
  {
    using Atoms = std::vector<std::int64_t>;
    auto sym_diff = [](const Atoms& a, const Atoms& b) {
      Atoms out;
      std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
      return out;
    };
    // Echelon rows: (atoms with leading atom, combination mask).
    std::vector<std::pair<Atoms, f2::Vec>> rows;
    for (std::size_t i = 0; i < cls.size(); ++i) {
      Atoms a = class_atoms(cls[i]);
      f2::Vec mask = f2::Vec(1) << i;
      for (const auto& [ra, rm] : rows)
        if (!a.empty() && std::binary_search(a.begin(), a.end(), ra.front())) {
          a = sym_diff(a, ra);
          mask ^= rm;
        }
      if (!a.empty())
        rows.emplace_back(std::move(a), mask);
    }
    Atoms target = class_atoms(d);
    f2::Vec mask = 0;
    for (const auto& [ra, rm] : rows)
      if (!target.empty() && std::binary_search(target.begin(), target.end(), ra.front())) {
        target = sym_diff(target, ra);
        mask ^= rm;
      }
    if (!target.empty())
      return std::nullopt;
    return mask;
  }

  FieldDescriptor field_;
  std::vector<SquareClass> classes_;
};

// ---------------------------------------------------------------------------
// Finite sets with commuting involutions
// ---------------------------------------------------------------------------

using Perm = std::vector<int>;

inline Perm identity_perm(int n)
{
  Perm p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

inline Perm compose(const Perm& outer, const Perm& inner)
{
  Perm r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i)
    r[i] = outer[static_cast<std::size_t>(inner[i])];
  return r;
}

/// Raw action data: a finite set {0..size-1} with a list of commuting
/// involutions generating an action of F_2^(gens.size()).
struct Action
{
  int size = 0;
  std::vector<Perm> gens;

  int act(f2::Vec g, int x) const
  {
    for (std::size_t i = 0; i < gens.size(); ++i)
      if (g & (f2::Vec(1) << i))
        x = gens[i][static_cast<std::size_t>(x)];
    return x;
  }

  void validate() const
  {
    for (const auto& p : gens) {
      if (static_cast<int>(p.size()) != size)
        throw std::invalid_argument("generator has wrong degree");
      for (int x = 0; x < size; ++x) {
        int y = p[static_cast<std::size_t>(x)];
        if (y < 0 || y >= size || p[static_cast<std::size_t>(y)] != x)
          throw std::invalid_argument("generator is not an involution");
      }
    }
    for (std::size_t i = 0; i < gens.size(); ++i)
      for (std::size_t j = i + 1; j < gens.size(); ++j)
        if (compose(gens[i], gens[j]) != compose(gens[j], gens[i]))
          throw std::invalid_argument("generators do not commute");
  }

  /// Orbits, each listed from its least point, ordered by least point.
  std::vector<std::vector<int>> orbits() const
  {
    std::vector<int> seen(static_cast<std::size_t>(size), 0);
    std::vector<std::vector<int>> out;
    for (int x = 0; x < size; ++x) {
      if (seen[static_cast<std::size_t>(x)])
        continue;
      std::vector<int> orbit{x};
      seen[static_cast<std::size_t>(x)] = 1;
      for (std::size_t k = 0; k < orbit.size(); ++k)
        for (const auto& p : gens) {
          int y = p[static_cast<std::size_t>(orbit[k])];
          if (!seen[static_cast<std::size_t>(y)]) {
            seen[static_cast<std::size_t>(y)] = 1;
            orbit.push_back(y);
          }
        }
      std::sort(orbit.begin(), orbit.end());
      out.push_back(std::move(orbit));
    }
    return out;
  }

  /// Stabilizer of x as an rref basis of a subspace of F_2^(gens.size()).
  std::vector<f2::Vec> stabilizer(int x) const
  {
    int r = static_cast<int>(gens.size());
    std::vector<f2::Vec> h;
    for (f2::Vec g = 0; g < (f2::Vec(1) << r); ++g)
      if (act(g, x) == x)
        h.push_back(g);
    return f2::rref(h);
  }
};

namespace detail
{

// Colex rank of the multiset x_1 <= ... <= x_n via y_i = x_i + i - 1.
inline std::int64_t multiset_rank(const std::vector<int>& sorted)
{
  std::int64_t rank = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i)
    rank += binomial(sorted[i] + static_cast<std::int64_t>(i), static_cast<std::int64_t>(i) + 1);
  return rank;
}

inline std::int64_t multiset_count(int m, int n)
{
  if (n == 0)
    return 1;
  if (m == 0)
    return 0;
  return binomial(static_cast<std::int64_t>(m) + n - 1, n);
}

} // namespace detail

/// Symmetric power of an action: size-n multisets of points, stored as
/// sorted tuples and indexed by colex rank.
struct MultisetPower
{
  Action action;
  std::vector<std::vector<int>> points;
};

inline MultisetPower sym_power_action(const Action& x, int n)
{
  if (n < 0)
    throw std::invalid_argument("symmetric power requires n >= 0");
  std::int64_t count = detail::multiset_count(x.size, n);
  if (count > kSymPowerLimit)
    throw resource_error("symmetric power has " + std::to_string(count) + " points, above the limit of " +
                         std::to_string(kSymPowerLimit));
  MultisetPower out;
  out.action.size = static_cast<int>(count);
  out.points.resize(static_cast<std::size_t>(count));
  if (count > 0) {
    std::vector<int> cur(static_cast<std::size_t>(n), 0);
    while (true) {
      out.points[static_cast<std::size_t>(detail::multiset_rank(cur))] = cur;
      int i = n - 1;
      while (i >= 0 && cur[static_cast<std::size_t>(i)] == x.size - 1)
        --i;
      if (i < 0)
        break;
      int v = cur[static_cast<std::size_t>(i)] + 1;
      for (int j = i; j < n; ++j)
        cur[static_cast<std::size_t>(j)] = v;
    }
  }
  for (const auto& g : x.gens) {
    Perm p(static_cast<std::size_t>(count));
    std::vector<int> img;
    for (std::int64_t k = 0; k < count; ++k) {
      img = out.points[static_cast<std::size_t>(k)];
      for (int& e : img)
        e = g[static_cast<std::size_t>(e)];
      std::sort(img.begin(), img.end());
      p[static_cast<std::size_t>(k)] = static_cast<int>(detail::multiset_rank(img));
    }
    out.action.gens.push_back(std::move(p));
  }
  return out;
}

/// An explicit equivariant bijection X -> Y, if one exists. The groups are
/// elementary abelian, so transitive sets are classified by their
/// stabilizers: orbits are matched by stabilizer and mapped base point to
/// base point, and the resulting map is checked against every generator.
inline std::optional<Perm> find_isomorphism(const Action& x, const Action& y)
{
  if (x.size != y.size || x.gens.size() != y.gens.size())
    return std::nullopt;
  auto ox = x.orbits();
  auto oy = y.orbits();
  if (ox.size() != oy.size())
    return std::nullopt;
  std::vector<std::vector<f2::Vec>> sy;
  for (const auto& o : oy)
    sy.push_back(y.stabilizer(o.front()));
  std::vector<char> used(oy.size(), 0);
  Perm phi(static_cast<std::size_t>(x.size), -1);
  int r = static_cast<int>(x.gens.size());
  for (const auto& o : ox) {
    auto sx = x.stabilizer(o.front());
    std::size_t match = oy.size();
    for (std::size_t j = 0; j < oy.size(); ++j)
      if (!used[j] && sy[j] == sx && oy[j].size() == o.size()) {
        match = j;
        break;
      }
    if (match == oy.size())
      return std::nullopt;
    used[match] = 1;
    for (f2::Vec g = 0; g < (f2::Vec(1) << r); ++g)
      phi[static_cast<std::size_t>(x.act(g, o.front()))] = y.act(g, oy[match].front());
  }
  // Verify: bijective and equivariant.
  std::vector<char> hit(static_cast<std::size_t>(y.size), 0);
  for (int p : phi) {
    if (p < 0 || hit[static_cast<std::size_t>(p)])
      return std::nullopt;
    hit[static_cast<std::size_t>(p)] = 1;
  }
  for (std::size_t i = 0; i < x.gens.size(); ++i)
    for (int pt = 0; pt < x.size; ++pt)
      if (phi[static_cast<std::size_t>(x.gens[i][static_cast<std::size_t>(pt)])] !=
          y.gens[i][static_cast<std::size_t>(phi[static_cast<std::size_t>(pt)])])
        return std::nullopt;
  return phi;
}

inline bool isomorphic(const Action& x, const Action& y)
{
  return find_isomorphism(x, y).has_value();
}

// ---------------------------------------------------------------------------
// Galois sets of multiquadratic algebras
// ---------------------------------------------------------------------------

/// A finite Gal_k-set whose action factors through the Galois group
/// F_2^r of the context.
class GSet
{
public:
  GSet(MQContext ctx, Action action) : ctx_(std::move(ctx)), action_(std::move(action))
  {
    if (static_cast<int>(action_.gens.size()) != ctx_.rank())
      throw std::invalid_argument("one involution per context class is required");
    action_.validate();
  }

  const MQContext& context() const { return ctx_; }
  const Action& action() const { return action_; }
  int size() const { return action_.size; }

private:
  MQContext ctx_;
  Action action_;
};

/// A G-set together with a swap involution commuting with the action.
class EquivariantSet
{
public:
  EquivariantSet(GSet base, Perm swap) : base_(std::move(base)), swap_(std::move(swap))
  {
    if (static_cast<int>(swap_.size()) != base_.size())
      throw std::invalid_argument("swap has wrong degree");
    full_action().validate();
  }

  const GSet& base() const { return base_; }
  const Perm& swap() const { return swap_; }
  int size() const { return base_.size(); }

  /// The action of G x Z/2, with the swap as last generator.
  Action full_action() const
  {
    Action a = base_.action();
    a.gens.push_back(swap_);
    return a;
  }

private:
  GSet base_;
  Perm swap_;
};

inline GSet empty_gset(const MQContext& ctx)
{
  return GSet(ctx, Action{0, std::vector<Perm>(static_cast<std::size_t>(ctx.rank()))});
}

/// Spec k(sqrt(a^v) : v in span(gens)) as the G-set G/H, H = annihilator of
/// the span. Points are the values of the characters v_1..v_s (an rref basis
/// of the span) on G, i.e. bitmasks of length s.
inline GSet spec_subfield(const MQContext& ctx, const std::vector<f2::Vec>& gens)
{
  int r = ctx.rank();
  for (f2::Vec v : gens)
    if (r < 32 && (v >> r) != 0)
      throw std::invalid_argument("character vector outside F_2^r");
  auto basis = f2::rref(gens);
  int s = static_cast<int>(basis.size());
  Action a;
  a.size = 1 << s;
  for (int i = 0; i < r; ++i) {
    f2::Vec flip = 0;
    for (int j = 0; j < s; ++j)
      if (basis[static_cast<std::size_t>(j)] & (f2::Vec(1) << i))
        flip |= f2::Vec(1) << j;
    Perm p(static_cast<std::size_t>(a.size));
    for (int x = 0; x < a.size; ++x)
      p[static_cast<std::size_t>(x)] = x ^ static_cast<int>(flip);
    a.gens.push_back(std::move(p));
  }
  return GSet(ctx, std::move(a));
}

inline GSet point_gset(const MQContext& ctx)
{
  return spec_subfield(ctx, {});
}

inline GSet disjoint_union(const GSet& x, const GSet& y)
{
  if (!(x.context() == y.context()))
    throw std::invalid_argument("context mismatch");
  Action a;
  a.size = x.size() + y.size();
  for (std::size_t i = 0; i < x.action().gens.size(); ++i) {
    Perm p = x.action().gens[i];
    for (int v : y.action().gens[i])
      p.push_back(v + x.size());
    a.gens.push_back(std::move(p));
  }
  return GSet(x.context(), std::move(a));
}

inline GSet product(const GSet& x, const GSet& y)
{
  if (!(x.context() == y.context()))
    throw std::invalid_argument("context mismatch");
  Action a;
  a.size = x.size() * y.size();
  for (std::size_t i = 0; i < x.action().gens.size(); ++i) {
    Perm p(static_cast<std::size_t>(a.size));
    for (int u = 0; u < x.size(); ++u)
      for (int v = 0; v < y.size(); ++v)
        p[static_cast<std::size_t>(u * y.size() + v)] =
            x.action().gens[i][static_cast<std::size_t>(u)] * y.size() + y.action().gens[i][static_cast<std::size_t>(v)];
    a.gens.push_back(std::move(p));
  }
  return GSet(x.context(), std::move(a));
}

inline GSet sym_power(const GSet& x, int n)
{
  return GSet(x.context(), sym_power_action(x.action(), n).action);
}

/// The same Galois set viewed in a larger context (new generators act trivially).
inline GSet lift(const GSet& x, const MQContext& larger)
{
  if (!x.context().is_prefix_of(larger))
    throw std::invalid_argument("target context must extend the source context");
  Action a = x.action();
  while (static_cast<int>(a.gens.size()) < larger.rank())
    a.gens.push_back(identity_perm(a.size));
  return GSet(larger, std::move(a));
}

inline bool isomorphic(const GSet& x, const GSet& y)
{
  return x.context() == y.context() && isomorphic(x.action(), y.action());
}

inline bool isomorphic(const EquivariantSet& x, const EquivariantSet& y)
{
  return x.base().context() == y.base().context() && isomorphic(x.full_action(), y.full_action());
}

// ---------------------------------------------------------------------------
// Equivariant constructions and twisting
// ---------------------------------------------------------------------------

/// X u X with the swap exchanging the copies.
inline EquivariantSet double_swap(const GSet& x)
{
  GSet base = disjoint_union(x, x);
  Perm swap(static_cast<std::size_t>(base.size()));
  for (int i = 0; i < x.size(); ++i) {
    swap[static_cast<std::size_t>(i)] = i + x.size();
    swap[static_cast<std::size_t>(i + x.size())] = i;
  }
  return EquivariantSet(std::move(base), std::move(swap));
}

/// X x X with the coordinate swap.
inline EquivariantSet product_swap(const GSet& x)
{
  GSet base = product(x, x);
  int m = x.size();
  Perm swap(static_cast<std::size_t>(base.size()));
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < m; ++v)
      swap[static_cast<std::size_t>(u * m + v)] = v * m + u;
  return EquivariantSet(std::move(base), std::move(swap));
}

inline EquivariantSet disjoint_union(const EquivariantSet& x, const EquivariantSet& y)
{
  GSet base = disjoint_union(x.base(), y.base());
  Perm swap = x.swap();
  for (int v : y.swap())
    swap.push_back(v + x.size());
  return EquivariantSet(std::move(base), std::move(swap));
}

inline EquivariantSet empty_equivariant(const MQContext& ctx)
{
  return EquivariantSet(empty_gset(ctx), Perm{});
}

/// Symmetric power with both the G-action and the swap induced on multisets.
inline EquivariantSet sym_power_equivariant(const EquivariantSet& e, int n)
{
  auto mp = sym_power_action(e.full_action(), n);
  Perm swap = mp.action.gens.back();
  mp.action.gens.pop_back();
  return EquivariantSet(GSet(e.base().context(), std::move(mp.action)), std::move(swap));
}

/// Twist by the quadratic character of k(sqrt d): the Galois element g acts
/// by (original action of g) composed with swap^(chi_d(g)). When d is
/// independent of the context, the context is extended by d and the new
/// generator acts by the swap alone.
inline GSet twist(const EquivariantSet& e, const SquareClass& d)
{
  const MQContext& ctx = e.base().context();
  MQContext ext = ctx.extended(d);
  f2::Vec v = *ext.vector_of(d);
  Action a = e.base().action();
  while (static_cast<int>(a.gens.size()) < ext.rank())
    a.gens.push_back(identity_perm(a.size));
  for (int i = 0; i < ext.rank(); ++i)
    if (v & (f2::Vec(1) << i))
      a.gens[static_cast<std::size_t>(i)] = compose(a.gens[static_cast<std::size_t>(i)], e.swap());
  return GSet(std::move(ext), std::move(a));
}

/// Spec k(sqrt d) in the context ctx (which must already contain d in its span).
inline GSet quadratic_gset(const MQContext& ctx, const SquareClass& d)
{
  auto v = ctx.vector_of(d);
  if (!v)
    throw std::invalid_argument("class is not in the span of the context");
  return spec_subfield(ctx, {*v});
}

// ---------------------------------------------------------------------------
// Virtual classes
// ---------------------------------------------------------------------------

/// Orbit type: a subgroup H of G = F_2^r (as an rref basis). Ordered with
/// larger stabilizers (smaller orbits) first.
struct OrbitType
{
  std::vector<f2::Vec> stabilizer;

  friend bool operator==(const OrbitType&, const OrbitType&) = default;
  friend bool operator<(const OrbitType& a, const OrbitType& b)
  {
    if (a.stabilizer.size() != b.stabilizer.size())
      return a.stabilizer.size() > b.stabilizer.size();
    return a.stabilizer < b.stabilizer;
  }
};

/// An element of K_0 of the multiquadratic Galois sets of a context: an
/// integer combination of transitive G-sets G/H.
class VirtualGaloisSet
{
public:
  using Terms = std::map<OrbitType, std::int64_t>;

  explicit VirtualGaloisSet(MQContext ctx) : ctx_(std::move(ctx)) {}

  const MQContext& context() const { return ctx_; }
  const Terms& terms() const { return terms_; }

  static VirtualGaloisSet point(const MQContext& ctx)
  {
    VirtualGaloisSet v(ctx);
    v.add_term(OrbitType{full_group(ctx.rank())}, 1);
    return v;
  }

  /// Character space of an orbit type (the annihilator of its stabilizer).
  std::vector<f2::Vec> characters(const OrbitType& t) const { return f2::annihilator(t.stabilizer, ctx_.rank()); }

  std::int64_t orbit_size(const OrbitType& t) const
  {
    return std::int64_t(1) << (ctx_.rank() - static_cast<int>(t.stabilizer.size()));
  }

  void add_term(const OrbitType& t, std::int64_t c)
  {
    if (c == 0)
      return;
    auto [it, inserted] = terms_.try_emplace(t, c);
    if (!inserted) {
      it->second = checked_add(it->second, c);
      if (it->second == 0)
        terms_.erase(it);
    }
  }

  std::int64_t dimension() const
  {
    std::int64_t d = 0;
    for (const auto& [t, c] : terms_)
      d = checked_add(d, checked_mul(c, orbit_size(t)));
    return d;
  }

  bool is_honest() const
  {
    return std::all_of(terms_.begin(), terms_.end(), [](const auto& kv) { return kv.second > 0; });
  }

  friend bool operator==(const VirtualGaloisSet& a, const VirtualGaloisSet& b)
  {
    return a.ctx_ == b.ctx_ && a.terms_ == b.terms_;
  }

  friend VirtualGaloisSet operator+(VirtualGaloisSet a, const VirtualGaloisSet& b)
  {
    if (!(a.ctx_ == b.ctx_))
      throw std::invalid_argument("context mismatch");
    for (const auto& [t, c] : b.terms_)
      a.add_term(t, c);
    return a;
  }

  friend VirtualGaloisSet operator-(const VirtualGaloisSet& a)
  {
    VirtualGaloisSet r(a.ctx_);
    for (const auto& [t, c] : a.terms_)
      r.add_term(t, checked_neg(c));
    return r;
  }

  friend VirtualGaloisSet operator-(const VirtualGaloisSet& a, const VirtualGaloisSet& b) { return a + (-b); }

  friend VirtualGaloisSet operator*(std::int64_t n, const VirtualGaloisSet& a)
  {
    VirtualGaloisSet r(a.ctx_);
    for (const auto& [t, c] : a.terms_)
      r.add_term(t, checked_mul(n, c));
    return r;
  }

  /// Product in K_0: G/H1 x G/H2 is |G| |H1 n H2| / (|H1| |H2|) copies of
  /// G/(H1 n H2), since every stabilizer of the product is H1 n H2.
  friend VirtualGaloisSet operator*(const VirtualGaloisSet& a, const VirtualGaloisSet& b)
  {
    if (!(a.ctx_ == b.ctx_))
      throw std::invalid_argument("context mismatch");
    int r = a.ctx_.rank();
    VirtualGaloisSet out(a.ctx_);
    for (const auto& [ta, ca] : a.terms_)
      for (const auto& [tb, cb] : b.terms_) {
        OrbitType meet{f2::intersect(ta.stabilizer, tb.stabilizer, r)};
        int exp = r + static_cast<int>(meet.stabilizer.size()) - static_cast<int>(ta.stabilizer.size()) -
                  static_cast<int>(tb.stabilizer.size());
        out.add_term(meet, checked_mul(checked_mul(ca, cb), std::int64_t(1) << exp));
      }
    return out;
  }

  /// "k", "k(sqrt 2, sqrt 3)", ... for one orbit type.
  std::string orbit_name(const OrbitType& t) const
  {
    auto chars = characters(t);
    if (chars.empty())
      return "k";
    std::vector<f2::Vec> ordered(chars.rbegin(), chars.rend());
    std::ostringstream os;
    os << "k(";
    for (std::size_t j = 0; j < ordered.size(); ++j)
      os << (j ? ", " : "") << "sqrt " << ctx_.class_of_vector(ordered[j]).rep();
    os << ')';
    return os.str();
  }

  std::string to_string() const
  {
    if (terms_.empty())
      return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [t, c] : terms_) {
      std::int64_t mag = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (mag != 1)
        os << mag << '*';
      os << orbit_name(t);
      first = false;
    }
    return os.str();
  }

  static std::vector<f2::Vec> full_group(int r)
  {
    std::vector<f2::Vec> g;
    for (int i = 0; i < r; ++i)
      g.push_back(f2::Vec(1) << i);
    return f2::rref(g);
  }

private:
  MQContext ctx_;
  Terms terms_;
};

/// Orbit decomposition of a G-set.
inline VirtualGaloisSet decompose(const GSet& x)
{
  VirtualGaloisSet v(x.context());
  for (const auto& o : x.action().orbits())
    v.add_term(OrbitType{x.action().stabilizer(o.front())}, 1);
  return v;
}

/// The class of Spec k(sqrt(a^v) : v in span(gens)).
inline VirtualGaloisSet subfield_class(const MQContext& ctx, const std::vector<f2::Vec>& gens)
{
  return decompose(spec_subfield(ctx, gens));
}

/// A G-set realizing an honest virtual class.
inline GSet realize(const VirtualGaloisSet& v)
{
  if (!v.is_honest())
    throw std::invalid_argument("only classes with nonnegative coefficients can be realized");
  GSet out = empty_gset(v.context());
  for (const auto& [t, c] : v.terms()) {
    GSet orbit = spec_subfield(v.context(), v.characters(t));
    for (std::int64_t i = 0; i < c; ++i)
      out = disjoint_union(out, orbit);
  }
  return out;
}

/// Trace form of the orbit with fixed field k(sqrt b_1, ..., sqrt b_s):
/// prod_j (<2> + <2 b_j>) over a basis of the character space.
inline GWElement orbit_trace(const MQContext& ctx, const std::vector<f2::Vec>& characters)
{
  const FieldDescriptor& f = ctx.field();
  SquareClass two = class_of(f, 2);
  GWElement tr = GWElement::one(f);
  for (f2::Vec v : characters) {
    SquareClass b = ctx.class_of_vector(v);
    tr = tr * (GWElement::generator(two) + GWElement::generator(mul_class(two, b)));
  }
  return tr;
}

inline GWElement trace_form(const VirtualGaloisSet& v)
{
  GWElement tr = GWElement::zero(v.context().field());
  for (const auto& [t, c] : v.terms())
    tr += c * orbit_trace(v.context(), v.characters(t));
  return tr;
}

inline GWElement trace_form(const GSet& x)
{
  return trace_form(decompose(x));
}

// ---------------------------------------------------------------------------
// The ring of virtual classes and its symmetric-power structure
// ---------------------------------------------------------------------------

class VirtualRing
{
public:
  using value_type = VirtualGaloisSet;

  explicit VirtualRing(MQContext ctx) : ctx_(std::move(ctx)) {}

  const MQContext& context() const { return ctx_; }

  VirtualGaloisSet zero() const { return VirtualGaloisSet(ctx_); }
  VirtualGaloisSet one() const { return VirtualGaloisSet::point(ctx_); }
  VirtualGaloisSet add(const VirtualGaloisSet& a, const VirtualGaloisSet& b) const { return a + b; }
  VirtualGaloisSet neg(const VirtualGaloisSet& a) const { return -a; }
  VirtualGaloisSet mul(const VirtualGaloisSet& a, const VirtualGaloisSet& b) const { return a * b; }
  bool eq(const VirtualGaloisSet& a, const VirtualGaloisSet& b) const { return a == b; }

private:
  MQContext ctx_;
};

/// (1-t)^(-[X]) = sum [X^(n)] t^n, with the series of each transitive G/H
/// enumerated by brute force and extended to virtual classes by the
/// convolution law and the negation recurrence.
class SymPowerFns
{
public:
  using ring_type = VirtualRing;

  explicit SymPowerFns(MQContext ctx) : ring_(std::move(ctx)) {}

  SymPowerFns(const SymPowerFns& other) : ring_(other.ring_)
  {
    std::lock_guard lock(other.mutex_);
    cache_ = other.cache_;
  }

  const VirtualRing& ring() const { return ring_; }

  TruncatedSeries<VirtualGaloisSet> orbit_series(const OrbitType& t, int n) const
  {
    {
      std::lock_guard lock(mutex_);
      auto it = cache_.find(t);
      if (it != cache_.end() && it->second.truncation() >= n)
        return truncate(ring_, it->second, n);
    }
    const MQContext& ctx = ring_.context();
    GSet orbit = spec_subfield(ctx, f2::annihilator(t.stabilizer, ctx.rank()));
    std::vector<VirtualGaloisSet> c;
    for (int i = 0; i <= n; ++i)
      c.push_back(decompose(sym_power(orbit, i)));
    TruncatedSeries<VirtualGaloisSet> s(std::move(c));
    std::lock_guard lock(mutex_);
    cache_.insert_or_assign(t, s);
    return s;
  }

  TruncatedSeries<VirtualGaloisSet> geometric(const VirtualGaloisSet& x, int n) const
  {
    if (!(x.context() == ring_.context()))
      throw std::invalid_argument("context mismatch");
    std::vector<std::pair<TruncatedSeries<VirtualGaloisSet>, std::int64_t>> terms;
    for (const auto& [t, c] : x.terms())
      terms.emplace_back(orbit_series(t, n), c);
    return product_of_powers(ring_, terms, n);
  }

private:
  VirtualRing ring_;
  mutable std::mutex mutex_;
  mutable std::map<OrbitType, TruncatedSeries<VirtualGaloisSet>> cache_;
};

/// [A^(n)] for a virtual class A.
inline VirtualGaloisSet sym_class(const VirtualGaloisSet& a, int n)
{
  return SymPowerFns(a.context()).geometric(a, n)[n];
}

// ---------------------------------------------------------------------------
// Compatibility of the trace with the power structures
// ---------------------------------------------------------------------------

struct CompatCheck
{
  int n = 0;
  GWElement lhs; // Tr(A^(n)), or its rank for rank-only checks
  GWElement rhs; // a_n(Tr(A))
  bool pass = false;
  bool rank_only = false;
};

/// For n <= n_max compares Tr(A^(n)) with a_n(Tr(A)) in GW(k).
inline std::vector<CompatCheck> verify_trace_compat(const VirtualGaloisSet& a, int n_max)
{
  SymPowerFns sym(a.context());
  auto lhs_series = sym.geometric(a, n_max);
  auto rhs_series = a_series(trace_form(a), n_max);
  std::vector<CompatCheck> out;
  for (int n = 0; n <= n_max; ++n) {
    GWElement lhs = trace_form(lhs_series[n]);
    const GWElement& rhs = rhs_series[static_cast<std::size_t>(n)];
    out.push_back(CompatCheck{n, lhs, rhs, is_equal(lhs, rhs), false});
  }
  return out;
}

/// Rank-only check for an algebra whose Galois data is not modeled:
/// rank(a_n(Tr A)) = C(m + n - 1, n) with m = dim A.
inline std::vector<CompatCheck> verify_rank_law(const GWElement& trace, std::int64_t dim, int n_max)
{
  auto series = a_series(trace, n_max);
  std::vector<CompatCheck> out;
  const FieldDescriptor& f = trace.field();
  for (int n = 0; n <= n_max; ++n) {
    std::int64_t expected = binomial(dim + n - 1, n);
    GWElement lhs = GWElement::integer(f, expected);
    GWElement rhs = GWElement::integer(f, series[static_cast<std::size_t>(n)].rank());
    out.push_back(CompatCheck{n, lhs, rhs, expected == series[static_cast<std::size_t>(n)].rank(), true});
  }
  return out;
}

} // namespace gwpower
