#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "checked.hpp"
#include "field.hpp"
#include "galois_sets.hpp"

namespace gwpower
{

inline constexpr int kGroupOrderLimit = 16;

/// A permutation group on {0..d-1} given by generators, with its elements
/// enumerated in lexicographic order (so the identity is element 0).
class FiniteGroup
{
public:
  using Subgroup = std::uint32_t; // bitmask over element indices

  FiniteGroup(int degree, std::vector<Perm> generators, std::string name = "")
  : degree_(degree), gens_(std::move(generators)), name_(std::move(name))
  {
    if (degree_ < 1)
      throw std::invalid_argument("group degree must be positive");
    for (const auto& g : gens_) {
      if (static_cast<int>(g.size()) != degree_)
        throw std::invalid_argument("generator has wrong degree");
      std::vector<int> seen(static_cast<std::size_t>(degree_), 0);
      for (int x : g) {
        if (x < 0 || x >= degree_ || seen[static_cast<std::size_t>(x)]++)
          throw std::invalid_argument("generator is not a permutation");
      }
    }
    enumerate();
    build_subgroups();
  }

  const std::string& name() const { return name_; }
  int degree() const { return degree_; }
  int order() const { return static_cast<int>(elements_.size()); }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::vector<Perm>& elements() const { return elements_; }
  int multiply(int a, int b) const { return mul_[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]; }
  int inverse(int a) const { return inv_[static_cast<std::size_t>(a)]; }
  int index_of(const Perm& p) const
  {
    auto it = std::lower_bound(elements_.begin(), elements_.end(), p);
    if (it == elements_.end() || *it != p)
      throw std::invalid_argument("permutation is not in the group");
    return static_cast<int>(it - elements_.begin());
  }
  /// Element index of each generator.
  const std::vector<int>& generator_indices() const { return gen_idx_; }

  Subgroup whole() const { return order() == 32 ? ~Subgroup(0) : ((Subgroup(1) << order()) - 1); }
  static int subgroup_order(Subgroup h) { return std::popcount(h); }

  std::vector<int> members(Subgroup h) const
  {
    std::vector<int> out;
    for (int i = 0; i < order(); ++i)
      if (h & (Subgroup(1) << i))
        out.push_back(i);
    return out;
  }

  Subgroup conjugate(Subgroup h, int g) const
  {
    Subgroup out = 0;
    int gi = inverse(g);
    for (int x : members(h))
      out |= Subgroup(1) << multiply(multiply(g, x), gi);
    return out;
  }

  /// Representatives of the conjugacy classes of subgroups, by increasing
  /// order and then lexicographically by sorted element list.
  const std::vector<Subgroup>& subgroup_classes() const { return classes_; }
  const std::vector<Subgroup>& all_subgroups() const { return all_; }

  /// Index of the conjugacy class containing h.
  int class_index(Subgroup h) const
  {
    for (std::size_t i = 0; i < classes_.size(); ++i)
      for (int g = 0; g < order(); ++g)
        if (conjugate(classes_[i], g) == h)
          return static_cast<int>(i);
    throw std::invalid_argument("not a subgroup");
  }

  Subgroup generated(Subgroup seed) const
  {
    Subgroup h = seed | 1u;
    while (true) {
      Subgroup next = h;
      for (int a : members(h))
        for (int b : members(h))
          next |= Subgroup(1) << multiply(a, b);
      if (next == h)
        return h;
      h = next;
    }
  }

private:
  void enumerate()
  {
    Perm id = identity_perm(degree_);
    std::set<Perm> seen{id};
    std::vector<Perm> frontier{id};
    while (!frontier.empty()) {
      std::vector<Perm> next;
      for (const auto& p : frontier)
        for (const auto& g : gens_) {
          Perm q = compose(g, p);
          if (seen.insert(q).second) {
            if (static_cast<int>(seen.size()) > kGroupOrderLimit)
              throw resource_error("group order exceeds " + std::to_string(kGroupOrderLimit));
            next.push_back(std::move(q));
          }
        }
      frontier = std::move(next);
    }
    elements_.assign(seen.begin(), seen.end());
    std::size_t n = elements_.size();
    mul_.assign(n, std::vector<int>(n));
    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        int c = index_of(compose(elements_[a], elements_[b]));
        mul_[a][b] = c;
        if (c == 0)
          inv_[a] = static_cast<int>(b);
      }
    for (const auto& g : gens_)
      gen_idx_.push_back(index_of(g));
  }

  void build_subgroups()
  {
    std::set<Subgroup> subs;
    for (int g = 0; g < order(); ++g)
      subs.insert(generated(Subgroup(1) << g));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<Subgroup> cur(subs.begin(), subs.end());
      for (std::size_t i = 0; i < cur.size(); ++i)
        for (std::size_t j = i + 1; j < cur.size(); ++j)
          if (subs.insert(generated(cur[i] | cur[j])).second)
            grew = true;
    }
    all_.assign(subs.begin(), subs.end());

    auto key_less = [this](Subgroup a, Subgroup b) {
      if (subgroup_order(a) != subgroup_order(b))
        return subgroup_order(a) < subgroup_order(b);
      return members(a) < members(b);
    };
    std::set<Subgroup> done;
    for (Subgroup h : all_) {
      if (done.count(h))
        continue;
      Subgroup rep = h;
      for (int g = 0; g < order(); ++g) {
        Subgroup c = conjugate(h, g);
        done.insert(c);
        if (key_less(c, rep))
          rep = c;
      }
      classes_.push_back(rep);
    }
    std::sort(classes_.begin(), classes_.end(), key_less);
  }

  int degree_;
  std::vector<Perm> gens_;
  std::string name_;
  std::vector<Perm> elements_;
  std::vector<std::vector<int>> mul_;
  std::vector<int> inv_;
  std::vector<int> gen_idx_;
  std::vector<Subgroup> all_;
  std::vector<Subgroup> classes_;
};

// ---------------------------------------------------------------------------
// Finite G-sets and the table of marks
// ---------------------------------------------------------------------------

/// A finite G-set given by the action of each group generator.
struct GroupAction
{
  int size = 0;
  std::vector<Perm> generator_images;
};

/// The permutation of points induced by every group element, after checking
/// that the generator images define a homomorphism.
inline std::vector<Perm> element_actions(const FiniteGroup& g, const GroupAction& x)
{
  if (x.generator_images.size() != g.generators().size())
    throw std::invalid_argument("one permutation per group generator is required");
  for (const auto& p : x.generator_images) {
    if (static_cast<int>(p.size()) != x.size)
      throw std::invalid_argument("inconsistent action: wrong degree");
    std::vector<char> hit(p.size(), 0);
    for (int v : p)
      if (v < 0 || v >= x.size || hit[static_cast<std::size_t>(v)]++)
        throw std::invalid_argument("inconsistent action: generator image is not a permutation");
  }
  std::vector<std::optional<Perm>> act(static_cast<std::size_t>(g.order()));
  act[0] = identity_perm(x.size);
  std::vector<int> queue{0};
  const auto& gi = g.generator_indices();
  for (std::size_t k = 0; k < queue.size(); ++k) {
    int e = queue[k];
    for (std::size_t s = 0; s < gi.size(); ++s) {
      int t = g.multiply(gi[s], e);
      Perm img = compose(x.generator_images[s], *act[static_cast<std::size_t>(e)]);
      auto& slot = act[static_cast<std::size_t>(t)];
      if (!slot) {
        slot = std::move(img);
        queue.push_back(t);
      }
      else if (*slot != img) {
        throw std::invalid_argument("inconsistent action: generator images do not define a group action");
      }
    }
  }
  std::vector<Perm> out;
  for (auto& a : act)
    out.push_back(std::move(*a));
  return out;
}

inline std::int64_t fixed_points(const FiniteGroup& g, const std::vector<Perm>& actions, FiniteGroup::Subgroup h)
{
  std::int64_t count = 0;
  int n = actions.empty() ? 0 : static_cast<int>(actions[0].size());
  for (int pt = 0; pt < n; ++pt) {
    bool fixed = true;
    for (int e : g.members(h))
      if (actions[static_cast<std::size_t>(e)][static_cast<std::size_t>(pt)] != pt) {
        fixed = false;
        break;
      }
    count += fixed ? 1 : 0;
  }
  return count;
}

/// G acting on the left cosets G/H.
inline GroupAction coset_action(const FiniteGroup& g, FiniteGroup::Subgroup h)
{
  std::vector<FiniteGroup::Subgroup> cosets;
  std::vector<int> coset_of(static_cast<std::size_t>(g.order()), -1);
  for (int x = 0; x < g.order(); ++x) {
    if (coset_of[static_cast<std::size_t>(x)] >= 0)
      continue;
    int id = static_cast<int>(cosets.size());
    FiniteGroup::Subgroup c = 0;
    for (int m : g.members(h)) {
      int y = g.multiply(x, m);
      c |= FiniteGroup::Subgroup(1) << y;
      coset_of[static_cast<std::size_t>(y)] = id;
    }
    cosets.push_back(c);
  }
  GroupAction a;
  a.size = static_cast<int>(cosets.size());
  for (int s : g.generator_indices()) {
    Perm p(cosets.size());
    for (std::size_t c = 0; c < cosets.size(); ++c) {
      int rep = std::countr_zero(cosets[c]);
      p[c] = coset_of[static_cast<std::size_t>(g.multiply(s, rep))];
    }
    a.generator_images.push_back(std::move(p));
  }
  return a;
}

inline GroupAction disjoint_union(const GroupAction& x, const GroupAction& y)
{
  GroupAction a;
  a.size = x.size + y.size;
  for (std::size_t s = 0; s < x.generator_images.size(); ++s) {
    Perm p = x.generator_images[s];
    for (int v : y.generator_images[s])
      p.push_back(v + x.size);
    a.generator_images.push_back(std::move(p));
  }
  return a;
}

inline GroupAction product(const GroupAction& x, const GroupAction& y)
{
  GroupAction a;
  a.size = x.size * y.size;
  for (std::size_t s = 0; s < x.generator_images.size(); ++s) {
    Perm p(static_cast<std::size_t>(a.size));
    for (int u = 0; u < x.size; ++u)
      for (int v = 0; v < y.size; ++v)
        p[static_cast<std::size_t>(u * y.size + v)] = x.generator_images[s][static_cast<std::size_t>(u)] * y.size +
                                                      y.generator_images[s][static_cast<std::size_t>(v)];
    a.generator_images.push_back(std::move(p));
  }
  return a;
}

inline GroupAction regular_action(const FiniteGroup& g)
{
  return coset_action(g, 1u);
}

inline GroupAction trivial_action(const FiniteGroup& g, int size = 1)
{
  return GroupAction{size, std::vector<Perm>(g.generators().size(), identity_perm(size))};
}

struct TableOfMarks
{
  std::vector<FiniteGroup::Subgroup> classes;
  std::vector<std::vector<std::int64_t>> marks; // marks[i][j] = |(G/H_i)^(H_j)|
};

inline TableOfMarks table_of_marks(const FiniteGroup& g)
{
  TableOfMarks t;
  t.classes = g.subgroup_classes();
  for (auto hi : t.classes) {
    auto acts = element_actions(g, coset_action(g, hi));
    std::vector<std::int64_t> row;
    for (auto hj : t.classes)
      row.push_back(fixed_points(g, acts, hj));
    t.marks.push_back(std::move(row));
  }
  return t;
}

/// Coefficients on the transitive G-sets G/H_i, indexed like subgroup_classes().
struct BurnsideElement
{
  std::vector<std::int64_t> coeffs;

  friend bool operator==(const BurnsideElement&, const BurnsideElement&) = default;

  std::string to_string(const FiniteGroup& g) const
  {
    std::ostringstream os;
    bool first = true;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      std::int64_t c = coeffs[i];
      if (c == 0)
        continue;
      std::int64_t mag = c < 0 ? -c : c;
      if (first)
        os << (c < 0 ? "-" : "");
      else
        os << (c < 0 ? " - " : " + ");
      if (mag != 1)
        os << mag << '*';
      os << "[G/H" << i << "]";
      first = false;
    }
    (void)g;
    return first ? std::string("0") : os.str();
  }
};

inline std::vector<std::int64_t> mark_vector(const FiniteGroup& g, const GroupAction& x)
{
  auto acts = element_actions(g, x);
  std::vector<std::int64_t> out;
  for (auto h : g.subgroup_classes())
    out.push_back(x.size == 0 ? 0 : fixed_points(g, acts, h));
  return out;
}

/// Solves the triangular mark system: sum_i c_i M[i][j] = |X^(H_j)|.
inline BurnsideElement decompose_gset(const FiniteGroup& g, const GroupAction& x, const TableOfMarks& tom)
{
  auto phi = mark_vector(g, x);
  std::size_t m = tom.classes.size();
  std::vector<std::int64_t> c(m, 0);
  for (std::size_t j = m; j-- > 0;) {
    std::int64_t rest = phi[j];
    for (std::size_t i = j + 1; i < m; ++i)
      rest = checked_sub(rest, checked_mul(c[i], tom.marks[i][j]));
    if (rest % tom.marks[j][j] != 0)
      throw std::invalid_argument("inconsistent action: mark vector is not integral");
    c[j] = rest / tom.marks[j][j];
  }
  return BurnsideElement{c};
}

inline BurnsideElement decompose_gset(const FiniteGroup& g, const GroupAction& x)
{
  return decompose_gset(g, x, table_of_marks(g));
}

/// The G-set sum c_i G/H_i for nonnegative coefficients.
inline GroupAction recompose(const FiniteGroup& g, const BurnsideElement& b)
{
  GroupAction out = trivial_action(g, 0);
  const auto& cls = g.subgroup_classes();
  for (std::size_t i = 0; i < b.coeffs.size(); ++i) {
    if (b.coeffs[i] < 0)
      throw std::invalid_argument("only nonnegative combinations can be realized");
    GroupAction orbit = coset_action(g, cls[i]);
    for (std::int64_t k = 0; k < b.coeffs[i]; ++k)
      out = disjoint_union(out, orbit);
  }
  return out;
}

/// [X^(0)], ..., [X^(N)] by brute-force multiset enumeration.
inline std::vector<BurnsideElement> sym_series(const FiniteGroup& g, const GroupAction& x, int n_max)
{
  element_actions(g, x); // validates the action
  auto tom = table_of_marks(g);
  std::vector<BurnsideElement> out;
  Action raw{x.size, x.generator_images};
  for (int n = 0; n <= n_max; ++n) {
    auto mp = sym_power_action(raw, n);
    out.push_back(decompose_gset(g, GroupAction{mp.action.size, mp.action.gens}, tom));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Named groups
// ---------------------------------------------------------------------------

namespace detail
{

inline Perm cycle_perm(int degree, const std::vector<std::vector<int>>& cycles)
{
  Perm p = identity_perm(degree);
  for (const auto& c : cycles)
    for (std::size_t i = 0; i < c.size(); ++i)
      p[static_cast<std::size_t>(c[i])] = c[(i + 1) % c.size()];
  return p;
}

inline Perm rotation(int n)
{
  std::vector<int> c(static_cast<std::size_t>(n));
  std::iota(c.begin(), c.end(), 0);
  return cycle_perm(n, {c});
}

inline Perm reflection(int n)
{
  Perm p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i)
    p[static_cast<std::size_t>(i)] = (n - i) % n;
  return p;
}

} // namespace detail

inline std::vector<std::string> group_catalogue()
{
  return {"C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "V4", "S3", "D4", "D5", "D6", "Q8", "C2xC4", "C2^3", "A4"};
}

inline FiniteGroup named_group(const std::string& name)
{
  using detail::cycle_perm;
  if (name == "C1")
    return FiniteGroup(1, {}, name);
  if (name.size() == 2 && name[0] == 'C' && name[1] >= '2' && name[1] <= '8')
    return FiniteGroup(name[1] - '0', {detail::rotation(name[1] - '0')}, name);
  if (name == "V4")
    return FiniteGroup(4, {cycle_perm(4, {{0, 1}, {2, 3}}), cycle_perm(4, {{0, 2}, {1, 3}})}, name);
  if (name == "S3")
    return FiniteGroup(3, {detail::rotation(3), cycle_perm(3, {{0, 1}})}, name);
  if (name == "D4" || name == "D5" || name == "D6") {
    int n = name[1] - '0';
    return FiniteGroup(n, {detail::rotation(n), detail::reflection(n)}, name);
  }
  if (name == "Q8")
    return FiniteGroup(8,
                       {cycle_perm(8, {{0, 1, 2, 3}, {4, 5, 6, 7}}), cycle_perm(8, {{0, 4, 2, 6}, {1, 7, 3, 5}})},
                       name);
  if (name == "C2xC4")
    return FiniteGroup(6, {cycle_perm(6, {{0, 1}}), cycle_perm(6, {{2, 3, 4, 5}})}, name);
  if (name == "C2^3")
    return FiniteGroup(6, {cycle_perm(6, {{0, 1}}), cycle_perm(6, {{2, 3}}), cycle_perm(6, {{4, 5}})}, name);
  if (name == "A4")
    return FiniteGroup(4, {cycle_perm(4, {{0, 1, 2}}), cycle_perm(4, {{0, 1}, {2, 3}})}, name);
  throw std::invalid_argument("unknown group '" + name + "'");
}

// ---------------------------------------------------------------------------
// The Klein four-group series in closed form
// ---------------------------------------------------------------------------

/// Degreewise coefficients of
///   (1-t^4)^-1 [G/G] + 1/2((1-t^2)^-2 - (1-t^4)^-1) ([G/G_1] + [G/G_2] + [G/G_3])
///   + 1/2((1-t^4)^-1 - 3/2 (1-t^2)^-2 + 1/2 (1-t)^-4) [G/e]
/// for G = V4, indexed like named_group("V4").subgroup_classes()
/// (e, three subgroups of order 2, G). The half-integral weights are
/// evaluated exactly and checked to be integers.
inline std::vector<BurnsideElement> klein_closed_series(int n_max)
{
  if (n_max < 0)
    throw std::invalid_argument("klein_closed_series requires N >= 0");
  std::vector<BurnsideElement> out;
  for (int n = 0; n <= n_max; ++n) {
    Rational quart = (n % 4 == 0) ? 1 : 0;                       // (1-t^4)^-1
    Rational sq = (n % 2 == 0) ? Rational(n / 2 + 1) : Rational(0); // (1-t^2)^-2
    Rational quad = Rational(binomial(n + 3, 3));                 // (1-t)^-4
    Rational c_g = quart;
    Rational c_mid = Rational(1, 2) * (sq - quart);
    Rational c_e = Rational(1, 2) * (quart - Rational(3, 2) * sq + Rational(1, 2) * quad);
    auto as_int = [n](const Rational& r) {
      if (boost::multiprecision::denominator(r) != 1)
        throw std::logic_error("non-integral coefficient in degree " + std::to_string(n));
      return static_cast<std::int64_t>(boost::multiprecision::numerator(r));
    };
    std::int64_t mid = as_int(c_mid);
    out.push_back(BurnsideElement{{as_int(c_e), mid, mid, mid, as_int(c_g)}});
  }
  return out;
}

} // namespace gwpower
