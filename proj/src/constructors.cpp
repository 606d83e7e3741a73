#include "ram/constructors.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

#include "ram/theory.hpp"

namespace ram {

std::string_view to_string(ConstructMethod m) {
  switch (m) {
    case ConstructMethod::Auto: return "auto";
    case ConstructMethod::Theorem: return "theorem";
    case ConstructMethod::Search: return "search";
  }
  return "auto";
}

std::string_view to_string(ConstructStatus s) {
  switch (s) {
    case ConstructStatus::Constructed: return "Constructed";
    case ConstructStatus::Inadmissible: return "Inadmissible";
    case ConstructStatus::Unknown: return "Unknown";
  }
  return "Unknown";
}

namespace {

[[noreturn]] void fail(ErrorKind k, const std::string& msg) { throw Error(k, msg); }

std::string size_str(std::uint32_t r1, std::uint32_t r2) {
  return "(" + std::to_string(r1) + "," + std::to_string(r2) + ")";
}

std::string join_provenance(const SizeConstraintSet& s) {
  std::string out;
  for (const auto& p : s.provenance) {
    if (!out.empty()) out += "; ";
    out += p;
  }
  return out;
}

bool semi_abelian_top(const FiniteGroup& g, std::uint32_t e) {
  if (g.as<AbelianRealization>()) return true;
  return is_semi_abelian(g, e - 1).holds;
}

ElementSet extend_subgroup(const FiniteGroup& g, const std::vector<Element>& gens) {
  return generated_subgroup(g, std::span<const Element>(gens));
}

// DFS over kernel cosets for the entries listed in `positions`, so that the
// chosen entries generate G. Failed (depth, subgroup) states are memoized.
class CosetSearch {
 public:
  CosetSearch(const LiftContext& ctx, std::span<const Element> u, std::vector<std::size_t> positions,
              bool forbid_trivial)
      : g_(*ctx.parent), u_(u.begin(), u.end()), positions_(std::move(positions)), failed_(positions_.size() + 1) {
    ctx.kernel.for_each([&](Element k) { kernel_.push_back(k); });
    section_.reserve(u_.size());
    for (auto q : u_) section_.push_back(ctx.map.lift(q));
    forbid_trivial_ = forbid_trivial;
  }

  std::optional<GenTuple> run() {
    GenTuple out(u_.size(), kIdentity);
    std::vector<Element> gens;
    if (!dfs(0, g_.trivial_subgroup(), gens, out)) return std::nullopt;
    return out;
  }

 private:
  bool dfs(std::size_t depth, const ElementSet& h, std::vector<Element>& gens, GenTuple& out) {
    if (depth == positions_.size()) return h.size() == g_.order();
    if (failed_[depth].count(h)) return false;
    const auto pos = positions_[depth];
    for (auto k : kernel_) {
      const Element c = g_.mul(section_[pos], k);
      if (forbid_trivial_ && c == kIdentity) continue;
      out[pos] = c;
      gens.push_back(c);
      const auto next = h.contains(c) ? h : extend_subgroup(g_, gens);
      const bool ok = dfs(depth + 1, next, gens, out);
      gens.pop_back();
      if (ok) return true;
    }
    failed_[depth].insert(h);
    return false;
  }

  const FiniteGroup& g_;
  GenTuple u_;
  std::vector<std::size_t> positions_;
  std::vector<Element> kernel_;
  std::vector<Element> section_;
  std::vector<std::unordered_set<ElementSet, ElementSetHash>> failed_;
  bool forbid_trivial_ = true;
};

std::optional<std::uint32_t> try_min_generators(const FiniteGroup& g) {
  try {
    return min_generators(g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotNilpotent) return std::nullopt;
    throw;
  }
}

Element abelian_word(const FiniteGroup& g, std::initializer_list<long long> exps) {
  const auto* ab = g.as<AbelianRealization>();
  std::vector<std::uint32_t> coords(ab->orders.size(), 0);
  std::size_t i = 0;
  for (auto e : exps) {
    const long long m = ab->orders[i];
    coords[i] = static_cast<std::uint32_t>(((e % m) + m) % m);
    ++i;
  }
  return g.from_abelian_coords(coords);
}

// Independent elements q_1..q_d of an elementary abelian group, greedily in
// enumeration order.
std::vector<Element> greedy_basis(const FiniteGroup& q) {
  std::vector<Element> basis;
  ElementSet span = q.trivial_subgroup();
  for (Element x = 1; x < q.order() && span.size() < q.order(); ++x) {
    if (span.contains(x)) continue;
    basis.push_back(x);
    span = generated_subgroup(q, std::span<const Element>(basis));
  }
  return basis;
}

// Re-pads a tuple over an odd-order group to length r keeping Sigma fixed.
GenTuple repad_odd(const FiniteGroup& g, GenTuple t, std::uint32_t r) {
  if (t.empty()) fail(ErrorKind::PreconditionViolated, "cannot pad an empty tuple");
  if (t.size() > r)
    fail(ErrorKind::PreconditionViolated,
         "target length " + std::to_string(r) + " below projected length " + std::to_string(t.size()));
  const Element z1 = t.front();
  if ((r - t.size()) % 2 == 1) {
    t.front() = g.mul(z1, z1);
    t.insert(t.begin() + 1, g.inv(z1));
  }
  while (t.size() < r) {
    t.push_back(z1);
    t.push_back(g.inv(z1));
  }
  return t;
}

RamStructure finish_projection(const GroupPtr& factor, GenTuple a, GenTuple b,
                               std::optional<std::pair<std::uint32_t, std::uint32_t>> target) {
  std::erase(a, kIdentity);
  std::erase(b, kIdentity);
  if (target) {
    if (factor->order() % 2 == 0)
      fail(ErrorKind::PaddingImpossible, "full-size padding needs a factor of odd order");
    a = repad_odd(*factor, std::move(a), target->first);
    b = repad_odd(*factor, std::move(b), target->second);
  }
  auto check = check_ramification(factor, std::move(a), std::move(b));
  if (!check)
    fail(ErrorKind::PreconditionViolated,
         "projected tuples are not a structure (" + std::string(to_string(check.reason)) + ")");
  return std::move(*check.structure);
}

}  // namespace

// ---------------------------------------------------------------------------
// Lifting

LiftContext make_lift_context(const GroupPtr& parent, const ElementSet& kernel) {
  return LiftContext{parent, kernel, quotient(parent, kernel)};
}

GenTuple lift_tuple(const LiftContext& ctx, std::span<const Element> u, bool spherical, bool forbid_trivial) {
  const FiniteGroup& g = *ctx.parent;
  const FiniteGroup& q = *ctx.quotient();
  for (auto x : u)
    if (!q.contains(x)) fail(ErrorKind::IndexOutOfRange, "tuple entry outside the quotient");
  if (!generates(q, u)) fail(ErrorKind::PreconditionViolated, "tuple does not generate the quotient");
  const auto r = static_cast<std::uint32_t>(u.size());
  const auto d = try_min_generators(g);
  if (d && r < *d) fail(ErrorKind::NoLiftExists, "tuple shorter than d(G) = " + std::to_string(*d));

  if (ctx.kernel.size() == 1) {
    GenTuple t;
    for (auto x : u) t.push_back(ctx.map.lift(x));
    if (spherical && !is_spherical_system(g, t))
      fail(ErrorKind::PreconditionViolated, "tuple is not spherical and the kernel is trivial");
    if (forbid_trivial && std::find(t.begin(), t.end(), kIdentity) != t.end())
      fail(ErrorKind::PreconditionViolated, "trivial entry with trivial kernel");
    return t;
  }

  if (!spherical) {
    std::vector<std::size_t> pos(u.size());
    std::iota(pos.begin(), pos.end(), 0);
    auto t = CosetSearch(ctx, u, std::move(pos), forbid_trivial).run();
    if (!t) fail(ErrorKind::NoLiftExists, "no generating lift found");
    return *t;
  }

  if (tuple_product(q, u) != kIdentity) fail(ErrorKind::PreconditionViolated, "tuple product is not trivial");
  if (d && r < *d + 1) fail(ErrorKind::NoLiftExists, "spherical lift needs r >= d(G) + 1");

  // Forced entry: the last one with a non-trivial image.
  std::optional<std::size_t> forced;
  for (std::size_t i = u.size(); i-- > 0;)
    if (u[i] != kIdentity) {
      forced = i;
      break;
    }
  if (!forced) {
    SphericalSolver solver(ctx.parent);
    auto all = g.all_elements();
    all.erase(kIdentity);
    auto t = solver.witness(all, r);
    if (!t) fail(ErrorKind::NoLiftExists, "G has no spherical system of length " + std::to_string(r));
    return *t;
  }
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (i != *forced) pos.push_back(i);
  auto t = CosetSearch(ctx, u, std::move(pos), true).run();
  if (!t) fail(ErrorKind::NoLiftExists, "no generating lift found");
  // t[forced] is still 1, so the prefix and suffix products are plain products.
  Element prefix = kIdentity, suffix = kIdentity;
  for (std::size_t i = 0; i < *forced; ++i) prefix = g.mul(prefix, (*t)[i]);
  for (std::size_t i = *forced + 1; i < t->size(); ++i) suffix = g.mul(suffix, (*t)[i]);
  (*t)[*forced] = g.mul(g.inv(prefix), g.inv(suffix));
  return *t;
}

// ---------------------------------------------------------------------------
// Elementary abelian groups

GenTuple extend_size(const FiniteGroup& g, std::span<const Element> t, std::uint32_t p) {
  if (!is_prime(p)) fail(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  if (!g.is_abelian() || pgroup_prime(g) != p || exponent(g) != p)
    fail(ErrorKind::PreconditionViolated, "extend_size needs an elementary abelian p-group");
  if (!is_spherical_system(g, t)) fail(ErrorKind::PreconditionViolated, "extend_size needs a spherical system");
  GenTuple out(t.begin(), t.end());
  const Element x1 = t.front();
  if (p == 2) {
    out.push_back(x1);
    out.push_back(x1);
  } else {
    out.front() = g.mul(x1, x1);
    out.push_back(g.inv(x1));
  }
  return out;
}

namespace {

// First i with T \ {i} generating, then first j != i with T \ {i, j} generating.
std::pair<std::size_t, std::size_t> redundant_pair(const FiniteGroup& g, const GenTuple& t) {
  auto without = [&](std::size_t a, std::size_t b) {
    std::vector<Element> rest;
    for (std::size_t k = 0; k < t.size(); ++k)
      if (k != a && k != b) rest.push_back(t[k]);
    return generates(g, rest);
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!without(i, i)) continue;
    for (std::size_t j = 0; j < t.size(); ++j)
      if (j != i && without(i, j)) return {i, j};
  }
  fail(ErrorKind::PreconditionViolated, "no two redundant entries");
}

}  // namespace

RamStructure extend_rank(const RamStructure& s) {
  const FiniteGroup& g = *s.group();
  const auto* ab = g.as<AbelianRealization>();
  const auto p = pgroup_prime(g);
  if (!ab || !p || std::any_of(ab->orders.begin(), ab->orders.end(), [&](auto o) { return o != *p; }))
    fail(ErrorKind::PreconditionViolated, "extend_rank needs C_p^d in abelian form");
  const auto d = static_cast<std::uint32_t>(ab->orders.size());
  const auto [r1, r2] = s.size();
  if (r1 < d + 2 || r2 < d + 2)
    fail(ErrorKind::PreconditionViolated,
         "extend_rank needs sizes >= d + 2 = " + std::to_string(d + 2) + ", got " + size_str(r1, r2));
  auto orders = ab->orders;
  orders.push_back(*p);
  auto big = make_abelian(orders);
  auto embed = [&](Element x) {
    auto c = g.abelian_coords(x);
    c.push_back(0);
    return big->from_abelian_coords(c);
  };
  std::vector<std::uint32_t> yc(d + 1, 0);
  yc.back() = 1;
  const Element y = big->from_abelian_coords(yc);
  auto lift = [&](const GenTuple& t) {
    const auto [a, b] = redundant_pair(g, t);
    GenTuple out;
    for (auto x : t) out.push_back(embed(x));
    out[a] = big->mul(out[a], y);
    out[b] = big->mul(out[b], big->inv(y));
    return out;
  };
  return require_ramification(big, lift(s.t1()), lift(s.t2()), "extend_rank");
}

RamStructure elementary_abelian_structure(std::uint32_t p, std::uint32_t d, std::uint32_t r1, std::uint32_t r2) {
  const auto pred = predict_elementary_abelian(p, d);
  if (!pred.contains(r1, r2))
    fail(ErrorKind::InadmissibleSize,
         "size " + size_str(r1, r2) + " not admissible for C" + std::to_string(p) + "^" + std::to_string(d) + ": " +
             join_provenance(pred));
  const bool flip = r1 > r2;
  if (flip) std::swap(r1, r2);

  GroupPtr g;
  GenTuple t1, t2;
  if (p >= 5) {
    g = make_abelian({p, p});
    t1 = {abelian_word(*g, {1, 0}), abelian_word(*g, {0, 1}), abelian_word(*g, {-1, -1})};
    t2 = {abelian_word(*g, {1, 2}), abelian_word(*g, {1, 4}), abelian_word(*g, {-2, -6})};
  } else if (p == 3) {
    g = make_abelian({3, 3});
    t1 = {abelian_word(*g, {1, 0}), abelian_word(*g, {-1, 0}), abelian_word(*g, {0, 1}), abelian_word(*g, {0, -1})};
    t2 = {abelian_word(*g, {1, 1}), abelian_word(*g, {-1, -1}), abelian_word(*g, {1, 2}), abelian_word(*g, {-1, -2})};
  } else if (r1 % 2 == 1 && r2 % 2 == 1) {
    g = make_abelian({2, 2, 2, 2});
    t1 = {abelian_word(*g, {1, 0, 0, 0}), abelian_word(*g, {0, 1, 0, 0}), abelian_word(*g, {0, 0, 1, 0}),
          abelian_word(*g, {0, 0, 0, 1}), abelian_word(*g, {1, 1, 1, 1})};
    t2 = {abelian_word(*g, {1, 1, 0, 0}), abelian_word(*g, {0, 1, 1, 0}), abelian_word(*g, {0, 0, 1, 1}),
          abelian_word(*g, {1, 1, 1, 0}), abelian_word(*g, {0, 1, 1, 1})};
  } else {
    g = make_abelian({2, 2, 2});
    const Element x1 = abelian_word(*g, {1, 0, 0}), x2 = abelian_word(*g, {0, 1, 0}), x3 = abelian_word(*g, {0, 0, 1});
    const Element x12 = g->mul(x1, x2), x13 = g->mul(x1, x3), x23 = g->mul(x2, x3), x123 = g->mul(x12, x3);
    const GenTuple odd5{x12, x13, x23, x123, x123};
    const GenTuple even6{x12, x13, x123, x12, x13, x123};
    const GenTuple basis6{x1, x2, x3, x1, x2, x3};
    if (r1 % 2 == 1) {
      t1 = odd5;
      t2 = basis6;
    } else if (r2 % 2 == 1) {
      t1 = basis6;
      t2 = odd5;
    } else {
      t1 = even6;
      t2 = basis6;
    }
  }
  while (t1.size() < r1) t1 = extend_size(*g, t1, p);
  while (t2.size() < r2) t2 = extend_size(*g, t2, p);
  if (t1.size() != r1 || t2.size() != r2)
    fail(ErrorKind::InternalContradiction, "size chain overshot " + size_str(r1, r2));
  auto s = require_ramification(g, std::move(t1), std::move(t2), "elementary abelian base");
  while (s.group()->as<AbelianRealization>()->orders.size() < d) s = extend_rank(s);
  return flip ? s.swapped() : s;
}

RamStructure exponent_p_structure(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2) {
  const auto p = pgroup_prime(*g);
  if (!p || exponent(*g) != *p) fail(ErrorKind::NotExponentP, "group does not have prime exponent");
  auto ctx = make_lift_context(g, frattini(*g));
  const auto& q = ctx.quotient();
  std::uint32_t d = 0;
  for (std::size_t n = q->order(); n > 1; n /= *p) ++d;
  const auto pred = predict_elementary_abelian(*p, d);
  if (!pred.contains(r1, r2))
    fail(ErrorKind::InadmissibleSize, "size " + size_str(r1, r2) + " not admissible: " + join_provenance(pred));
  const auto e = elementary_abelian_structure(*p, d, r1, r2);
  const auto basis = greedy_basis(*q);
  auto to_q = [&](Element a) {
    const auto c = e.group()->abelian_coords(a);
    Element x = kIdentity;
    for (std::size_t i = 0; i < c.size(); ++i) x = q->mul(x, q->power(basis[i], c[i]));
    return x;
  };
  GenTuple u1, u2;
  for (auto a : e.t1()) u1.push_back(to_q(a));
  for (auto a : e.t2()) u2.push_back(to_q(a));
  return require_ramification(g, lift_tuple(ctx, u1, true), lift_tuple(ctx, u2, true), "exponent_p_structure");
}

// ---------------------------------------------------------------------------
// Omega quotients

LiftContext omega_context(const GroupPtr& g) {
  require_pgroup(*g);
  const auto e = exponent_log(*g);
  return make_lift_context(g, omega(*g, e - 1));
}

RamStructure project_mod_omega(const RamStructure& s) {
  const auto& g = s.group();
  require_pgroup(*g);
  const auto e = exponent_log(*g);
  if (e == 1) return s;
  if (!semi_abelian_top(*g, e)) fail(ErrorKind::HypothesisViolated, "group is not semi-p^(e-1)-abelian");
  const auto ctx = omega_context(g);
  GenTuple a, b;
  for (auto x : s.t1())
    if (auto y = ctx.map.project(x); y != kIdentity) a.push_back(y);
  for (auto x : s.t2())
    if (auto y = ctx.map.project(x); y != kIdentity) b.push_back(y);
  return require_ramification(ctx.quotient(), std::move(a), std::move(b), "project_mod_omega");
}

RamStructure lift_structure_mod_omega(const LiftContext& ctx, const RamStructure& u) {
  const auto& g = ctx.parent;
  if (ctx.kernel.size() == 1 && u.group() == g) return u;
  if (u.group() != ctx.quotient())
    fail(ErrorKind::PreconditionViolated, "structure does not live on the context's quotient");
  const auto e = exponent_log(*g);
  if (!semi_abelian_top(*g, e)) fail(ErrorKind::HypothesisViolated, "group is not semi-p^(e-1)-abelian");
  const auto d = min_generators(*g);
  const auto [r1, r2] = u.size();
  if (r1 < d + 1 || r2 < d + 1)
    fail(ErrorKind::PreconditionViolated, "lifting needs sizes >= d(G) + 1 = " + std::to_string(d + 1));
  return require_ramification(g, lift_tuple(ctx, u.t1(), true), lift_tuple(ctx, u.t2(), true),
                              "lift_structure_mod_omega");
}

// ---------------------------------------------------------------------------
// Padding and products

RamStructure pad_from_beauville(const RamStructure& s, std::uint32_t r1, std::uint32_t r2) {
  if (s.size() != std::pair<std::size_t, std::size_t>{3, 3})
    fail(ErrorKind::PreconditionViolated, "pad_from_beauville needs a (3,3) structure");
  if (r1 < 3 || r2 < 3) fail(ErrorKind::PreconditionViolated, "sizes must be >= 3");
  const FiniteGroup& g = *s.group();
  auto pad = [&](const GenTuple& u, std::uint32_t r) {
    const Element x = u[0], y = u[1];
    GenTuple t = r % 2 == 1 ? u : GenTuple{x, y, g.inv(y), g.inv(x)};
    while (t.size() < r) {
      t.push_back(x);
      t.push_back(g.inv(x));
    }
    return t;
  };
  return require_ramification(s.group(), pad(s.t1(), r1), pad(s.t2(), r2), "pad_from_beauville");
}

RamStructure product_combine(const RamStructure& sg, const RamStructure& sh) {
  const auto& g = sg.group();
  const auto& h = sh.group();
  if (gcd_u64(g->order(), h->order()) != 1)
    fail(ErrorKind::NotCoprime, "orders " + std::to_string(g->order()) + " and " + std::to_string(h->order()) +
                                    " are not coprime");
  auto prod = direct_product(g, h);
  auto zip = [&](const GenTuple& a, const GenTuple& b) {
    const auto n = std::max(a.size(), b.size());
    GenTuple t;
    for (std::size_t i = 0; i < n; ++i)
      t.push_back(prod->product_pair(i < a.size() ? a[i] : kIdentity, i < b.size() ? b[i] : kIdentity));
    return t;
  };
  return require_ramification(prod, zip(sg.t1(), sh.t1()), zip(sg.t2(), sh.t2()), "product_combine");
}

RamStructure product_project(const RamStructure& s, ProductSide side,
                             std::optional<std::pair<std::uint32_t, std::uint32_t>> target) {
  const FiniteGroup& g = *s.group();
  const auto* pr = g.as<ProductRealization>();
  if (!pr) fail(ErrorKind::PreconditionViolated, "structure does not live on a direct product");
  if (gcd_u64(pr->left->order(), pr->right->order()) != 1)
    fail(ErrorKind::NotCoprime, "factors of the product are not coprime");
  const bool left = side == ProductSide::Left;
  auto comp = [&](const GenTuple& t) {
    GenTuple out;
    for (auto x : t) out.push_back(left ? g.product_left(x) : g.product_right(x));
    return out;
  };
  return finish_projection(left ? pr->left : pr->right, comp(s.t1()), comp(s.t2()), target);
}

RamStructure product_project(const RamStructure& s, const SylowFactor& factor,
                             std::optional<std::pair<std::uint32_t, std::uint32_t>> target) {
  const FiniteGroup& g = *s.group();
  const std::uint64_t q = factor.group->order();
  if (factor.to_factor.size() != g.order() || g.order() % q != 0)
    fail(ErrorKind::PreconditionViolated, "Sylow factor does not belong to this group");
  const std::uint64_t m = g.order() / q;
  if (gcd_u64(m, q) != 1) fail(ErrorKind::NotCoprime, "factor order is not coprime to its index");
  // k = m * (m^-1 mod q): k = 1 mod q, k = 0 mod m.
  std::uint64_t minv = 1;
  if (q > 1)
    while ((m % q) * minv % q != 1) ++minv;
  const auto k = static_cast<long long>(m * minv);
  auto comp = [&](const GenTuple& t) {
    GenTuple out;
    for (auto x : t) out.push_back(factor.to_factor[g.power(x, k)]);
    return out;
  };
  return finish_projection(factor.group, comp(s.t1()), comp(s.t2()), target);
}

// ---------------------------------------------------------------------------
// Both sizes odd on 2-groups with |X| = 8

RamStructure semi_abelian_2group_odd_odd(const GroupPtr& gp, std::uint32_t r1, std::uint32_t r2) {
  const FiniteGroup& g = *gp;
  if (pgroup_prime(g) != 2u) fail(ErrorKind::HypothesisViolated, "not a 2-group");
  const auto e = exponent_log(g);
  const auto x_set = power_image(g, e - 1);
  if (x_set.size() != 8)
    fail(ErrorKind::HypothesisViolated, "|X| = " + std::to_string(x_set.size()) + ", construction needs 8");
  if (e < 2) fail(ErrorKind::InadmissibleSize, "C2^3 has no structure with both sizes odd");
  if (!semi_abelian_top(g, e)) fail(ErrorKind::HypothesisViolated, "group is not semi-2^(e-1)-abelian");
  const auto d = min_generators(g);
  if (r1 % 2 == 0 || r2 % 2 == 0) fail(ErrorKind::PreconditionViolated, "both sizes must be odd");
  if (r1 < 5 || r2 < 5 || (r1 == 5 && r2 == 5) || r1 < d + 1 || r2 < d + 1)
    fail(ErrorKind::InadmissibleSize, "size " + size_str(r1, r2) + " not admissible (r >= max(5, d+1), not (5,5))");
  if (d == 3) fail(ErrorKind::DegenerateRank, "d(G) = 3 leaves no generators of Omega_{e-1} mod G^2");

  const bool flip = r1 > r2;
  if (flip) std::swap(r1, r2);  // now r2 >= 7

  auto ctx = omega_context(gp);
  const auto& omega_set = ctx.kernel;
  const auto squares = agemo(g, 1);

  // n_1..n_{d-3}: generators of Omega_{e-1} modulo G^2.
  std::vector<Element> ns;
  ElementSet span = squares;
  for (Element a = 1; a < g.order() && span.size() < omega_set.size(); ++a) {
    if (!omega_set.contains(a) || span.contains(a)) continue;
    ns.push_back(a);
    span = generated_subgroup(g, span | ElementSet::singleton(g.order(), a));
  }
  if (ns.size() != d - 3)
    fail(ErrorKind::InternalContradiction, "Omega_{e-1}/G^2 has rank " + std::to_string(ns.size()) +
                                               ", expected " + std::to_string(d - 3));
  Element n = kIdentity;
  for (auto a : ns) n = g.mul(n, a);
  const auto on = g.order_of(n);
  const Element top = g.power(n, on / 2);

  // Basis x, y, z of G/Omega_{e-1}, starting from an x with x^(2^(e-1)) = top when possible.
  const auto& q = *ctx.quotient();
  std::vector<Element> reps;
  if (top != kIdentity && x_set.contains(top)) {
    const auto pe = static_cast<long long>(ipow(2, e - 1));
    for (Element a = 1; a < g.order(); ++a)
      if (g.power(a, pe) == top) {
        reps.push_back(a);
        break;
      }
  }
  {
    std::vector<Element> qbasis;
    for (auto r : reps) qbasis.push_back(ctx.map.project(r));
    ElementSet qspan = generated_subgroup(q, std::span<const Element>(qbasis));
    for (Element a = 1; a < g.order() && qspan.size() < q.order(); ++a) {
      const auto qa = ctx.map.project(a);
      if (qspan.contains(qa)) continue;
      reps.push_back(a);
      qbasis.push_back(qa);
      qspan = generated_subgroup(q, std::span<const Element>(qbasis));
    }
  }
  if (reps.size() != 3) fail(ErrorKind::InternalContradiction, "G/Omega_{e-1} is not of rank 3");
  const Element x = reps[0], y = reps[1], z = reps[2];
  const Element xy = g.mul(x, y), yz = g.mul(y, z), xz = g.mul(x, z), xyz = g.mul(xy, z);

  GenTuple u1;
  for (auto a : {xy, yz, xz, xyz, xyz}) u1.push_back(ctx.map.project(a));
  while (u1.size() < r1) u1.push_back(ctx.map.project(xy));
  auto t1 = lift_tuple(ctx, u1, true);

  const Element cycle[3] = {x, y, z};
  GenTuple t2;
  for (std::uint32_t i = 0; i + 1 < r2; ++i) t2.push_back(i < 6 ? cycle[i % 3] : x);
  for (std::size_t i = 0; i < ns.size(); ++i) t2[3 + i] = g.mul(t2[3 + i], ns[i]);
  const Element w = g.mul(tuple_product(g, t2), g.inv(n));
  if (!squares.contains(w)) fail(ErrorKind::InternalContradiction, "product of T2 is not n modulo G^2");
  t2[0] = g.mul(g.inv(w), t2[0]);
  t2.push_back(g.inv(n));

  auto s = require_ramification(gp, std::move(t1), std::move(t2), "semi_abelian_2group_odd_odd");
  return flip ? s.swapped() : s;
}

// ---------------------------------------------------------------------------
// Orchestration

namespace {

struct Dispatch {
  ConstructMethod method;
  SearchBudget budget;
};

ConstructOutcome constructed(RamStructure s, std::string method, std::vector<std::string> notes) {
  ConstructOutcome o;
  o.status = ConstructStatus::Constructed;
  o.structure = std::move(s);
  o.method = std::move(method);
  o.notes = std::move(notes);
  return o;
}

ConstructOutcome inadmissible(std::string why, std::vector<std::string> notes) {
  ConstructOutcome o;
  o.status = ConstructStatus::Inadmissible;
  o.method = "theorem";
  notes.push_back(std::move(why));
  o.notes = std::move(notes);
  return o;
}

ConstructOutcome by_search(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const Dispatch& how,
                           std::vector<std::string> notes) {
  ConstructOutcome o;
  o.method = "search";
  if (how.method == ConstructMethod::Theorem) {
    notes.push_back("no theorem construction applies and search is disabled");
    o.notes = std::move(notes);
    return o;
  }
  auto budget = how.budget;
  budget.cap = std::max({budget.cap, r1, r2});
  auto res = find_structure(g, r1, r2, budget);
  switch (res.status) {
    case SearchStatus::Found:
      o.status = ConstructStatus::Constructed;
      o.structure = res.structure;
      break;
    case SearchStatus::NoneExists:
      o.status = ConstructStatus::Inadmissible;
      notes.push_back("exhaustive search found no structure");
      break;
    case SearchStatus::BudgetExhausted:
      o.status = ConstructStatus::Unknown;
      notes.push_back("search budget exhausted");
      break;
  }
  o.notes = std::move(notes);
  o.search = std::move(res);
  return o;
}

bool is_cyclic(const FiniteGroup& g) {
  for (Element a = 0; a < g.order(); ++a)
    if (g.order_of(a) == g.order()) return true;
  return false;
}

ConstructOutcome construct_theorem(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const Dispatch& how,
                                   std::vector<std::string> notes);

ConstructOutcome construct_pgroup(const GroupPtr& g, std::uint32_t p, std::uint32_t r1, std::uint32_t r2,
                                  const Dispatch& how, std::vector<std::string> notes) {
  const FiniteGroup& G = *g;
  const auto e = exponent_log(G);
  if (e == 1) {
    const auto d = min_generators(G);
    const auto pred = predict_elementary_abelian(p, d);
    if (!pred.contains(r1, r2)) return inadmissible(join_provenance(pred), std::move(notes));
    const auto* ab = G.as<AbelianRealization>();
    if (ab && ab->orders.size() == d) {
      auto s = elementary_abelian_structure(p, d, r1, r2);
      notes.push_back("elementary abelian construction");
      return constructed(require_ramification(g, s.t1(), s.t2(), "construct_any"), "theorem:elementary-abelian",
                         std::move(notes));
    }
    notes.push_back("exponent p: lift from G/Phi(G)");
    return constructed(exponent_p_structure(g, r1, r2), "theorem:exponent-p", std::move(notes));
  }
  SizeConstraintSet pred;
  try {
    pred = predict_semi_abelian_pgroup(G);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::HypothesisViolated) throw;
    notes.push_back(err.what());
    return by_search(g, r1, r2, how, std::move(notes));
  }
  if (!pred.contains(r1, r2)) return inadmissible(join_provenance(pred), std::move(notes));
  const auto x = power_image(G, e - 1).size();
  if (p == 2 && x == 8 && r1 % 2 == 1 && r2 % 2 == 1) {
    try {
      notes.push_back("both sizes odd with |X| = 8: dedicated 2-group construction");
      return constructed(semi_abelian_2group_odd_odd(g, r1, r2), "theorem:odd-odd", std::move(notes));
    } catch (const Error& err) {
      if (err.kind() != ErrorKind::DegenerateRank) throw;
      notes.push_back(err.what());
      return by_search(g, r1, r2, how, std::move(notes));
    }
  }
  auto ctx = omega_context(g);
  notes.push_back("structure on G/Omega_{e-1}(G) lifted to G");
  auto base = exponent_p_structure(ctx.quotient(), r1, r2);
  return constructed(lift_structure_mod_omega(ctx, base), "theorem:semi-abelian", std::move(notes));
}

ConstructOutcome construct_nilpotent(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const Dispatch& how,
                                     std::vector<std::string> notes) {
  const FiniteGroup& G = *g;
  SizeConstraintSet pred;
  try {
    pred = predict_nilpotent(G);
  } catch (const Error& err) {
    if (err.kind() != ErrorKind::HypothesisViolated) throw;
    notes.push_back(err.what());
    return by_search(g, r1, r2, how, std::move(notes));
  }
  if (!pred.contains(r1, r2)) return inadmissible(join_provenance(pred), std::move(notes));

  // Each factor gets the componentwise largest admissible size below (r1, r2);
  // zipping with identity padding then has size (max a, max b).
  const auto factors = sylow_decomposition(G);
  std::vector<RamStructure> parts;
  std::uint32_t max_a = 0, max_b = 0;
  for (const auto& f : factors) {
    const auto fp = predict_semi_abelian_pgroup(*f.group);
    std::optional<std::pair<std::uint32_t, std::uint32_t>> pick;
    int best = -1;
    for (std::uint32_t a = r1; a >= 3 && best < 2; --a)
      for (std::uint32_t b = r2; b >= 3; --b) {
        if (!fp.contains(a, b)) continue;
        const int score = (a == r1) + (b == r2);
        if (score > best) {
          best = score;
          pick = {a, b};
        }
        break;
      }
    if (!pick) return by_search(g, r1, r2, how, std::move(notes));
    auto sub = construct_theorem(f.group, pick->first, pick->second, how, {});
    if (sub.status != ConstructStatus::Constructed) {
      notes.push_back("Sylow " + std::to_string(f.p) + " factor: no construction at " +
                      size_str(pick->first, pick->second));
      return by_search(g, r1, r2, how, std::move(notes));
    }
    notes.push_back("Sylow " + std::to_string(f.p) + ": " + sub.method + " at " +
                    size_str(pick->first, pick->second));
    max_a = std::max(max_a, pick->first);
    max_b = std::max(max_b, pick->second);
    parts.push_back(std::move(*sub.structure));
  }
  if (max_a != r1 || max_b != r2) {
    notes.push_back("factor sizes do not reach " + size_str(r1, r2));
    return by_search(g, r1, r2, how, std::move(notes));
  }
  auto zip = [&](bool first) {
    const std::uint32_t len = first ? r1 : r2;
    GenTuple t(len, kIdentity);
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const auto& comp = first ? parts[k].t1() : parts[k].t2();
      for (std::size_t i = 0; i < comp.size(); ++i) t[i] = G.mul(t[i], factors[k].embedding[comp[i]]);
    }
    return t;
  };
  notes.push_back("Sylow factors combined with identity padding");
  return constructed(require_ramification(g, zip(true), zip(false), "nilpotent combination"), "theorem:nilpotent",
                     std::move(notes));
}

ConstructOutcome construct_theorem(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const Dispatch& how,
                                   std::vector<std::string> notes) {
  const FiniteGroup& G = *g;
  if (r1 < 3 || r2 < 3) return inadmissible("sizes must be >= 3", std::move(notes));
  if (G.order() == 1 || is_cyclic(G)) return inadmissible("cyclic groups admit no structure", std::move(notes));
  if (auto p = pgroup_prime(G)) return construct_pgroup(g, *p, r1, r2, how, std::move(notes));
  if (is_nilpotent(G)) return construct_nilpotent(g, r1, r2, how, std::move(notes));
  notes.push_back("group is not nilpotent");
  return by_search(g, r1, r2, how, std::move(notes));
}

}  // namespace

ConstructOutcome construct_any(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, ConstructMethod method,
                               const SearchBudget& budget) {
  const Dispatch how{method, budget};
  if (method == ConstructMethod::Search) {
    if (r1 < 3 || r2 < 3) return inadmissible("sizes must be >= 3", {});
    return by_search(g, r1, r2, how, {});
  }
  try {
    return construct_theorem(g, r1, r2, how, {});
  } catch (const Error& err) {
    // A theorem route refused the input; the oracle still decides.
    return by_search(g, r1, r2, how, {std::string("theorem route failed: ") + err.what()});
  }
}

}  // namespace ram
