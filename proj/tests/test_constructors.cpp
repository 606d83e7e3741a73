#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ram/constructors.hpp"
#include "ram/invariants.hpp"
#include "ram/theory.hpp"

using namespace ram;
using ram::test::el;
using ram::test::kind_of;
using ram::test::tup;

namespace {

void expect_valid(const RamStructure& s, std::size_t r1, std::size_t r2) {
  EXPECT_TRUE(check_ramification(s.group(), s.t1(), s.t2()).ok());
  EXPECT_EQ(s.size(), (std::pair<std::size_t, std::size_t>{r1, r2}));
}

// Each entry of `a` generates the same cyclic subgroup as the matching entry of `b`.
bool same_cyclic_subgroups(const FiniteGroup& g, const GenTuple& a, const GenTuple& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::vector<Element> x{a[i]}, y{b[i]};
    if (generated_subgroup(g, x) != generated_subgroup(g, y)) return false;
  }
  return true;
}

}  // namespace

TEST(Constructors, LiftTupleSphericalModOmega) {
  auto g = make_abelian({2, 4, 4, 4});
  const auto ctx = omega_context(g);
  ASSERT_EQ(ctx.quotient()->order(), 8u);
  const auto& q = ctx.quotient();
  // Spherical generating 5-tuple of the quotient, found by enumeration.
  GenTuple u;
  enumerate_spherical(*q, 5, [&](std::span<const Element> t) {
    u.assign(t.begin(), t.end());
    return false;
  });
  ASSERT_EQ(u.size(), 5u);
  const auto t = lift_tuple(ctx, u, true);
  EXPECT_TRUE(is_spherical_system(*g, t).ok());
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(ctx.map.project(t[i]), u[i]);
}

TEST(Constructors, LiftTupleGeneratingAndGuards) {
  auto g = make_abelian({2, 4, 4, 4});
  const auto ctx = omega_context(g);
  const auto& q = *ctx.quotient();
  // Non-spherical lift of a generating 4-tuple: entrywise congruent and generating.
  GenTuple u{el(ctx.quotient(), "[x2]"), el(ctx.quotient(), "[x3]"), el(ctx.quotient(), "[x4]"),
             el(ctx.quotient(), "[x2]")};
  ASSERT_TRUE(generates(q, u));
  const auto t = lift_tuple(ctx, u, false);
  EXPECT_TRUE(generates(*g, t));
  for (std::size_t i = 0; i < u.size(); ++i) EXPECT_EQ(ctx.map.project(t[i]), u[i]);
  // d(G) = 4, so three entries cannot generate.
  GenTuple short_u(u.begin(), u.begin() + 3);
  EXPECT_EQ(kind_of([&] { lift_tuple(ctx, short_u, false); }), ErrorKind::NoLiftExists);

  // Trivial kernel: the section, entrywise.
  auto v = make_abelian({3, 3});
  const auto triv = make_lift_context(v, v->trivial_subgroup());
  const GenTuple w{1, 3, 5};
  const auto lifted = lift_tuple(triv, w, false);
  for (std::size_t i = 0; i < w.size(); ++i) EXPECT_EQ(lifted[i], triv.map.lift(w[i]));
}

TEST(Constructors, ExtendSize) {
  auto c55 = make_abelian({5, 5});
  const auto t = tup(c55, "[x1; x2; (x1*x2)^-1]");
  const auto e = extend_size(*c55, t, 5);
  EXPECT_EQ(e, tup(c55, "[x1^2; x2; (x1*x2)^-1; x1^-1]"));
  EXPECT_EQ(sigma(*c55, e), sigma(*c55, t));

  auto v8 = make_abelian({2, 2, 2});
  const auto s = tup(v8, "[x1; x2; x3; x1*x2*x3]");
  const auto e2 = extend_size(*v8, s, 2);
  ASSERT_EQ(e2.size(), 6u);
  EXPECT_EQ(e2[4], s[0]);
  EXPECT_EQ(e2[5], s[0]);
  EXPECT_TRUE(is_spherical_system(*v8, e2).ok());
  EXPECT_EQ(sigma(*v8, e2), sigma(*v8, s));
  EXPECT_EQ(kind_of([&] { extend_size(*make_abelian({2, 4}), GenTuple{1, 2}, 2); }), ErrorKind::PreconditionViolated);
}

TEST(Constructors, ExtendSizePreservesSigmaAcrossSpheres) {
  for (auto [p, d] : {std::pair{2u, 3u}, std::pair{3u, 2u}, std::pair{5u, 2u}}) {
    auto g = make_abelian(std::vector<std::uint32_t>(d, p));
    int n = 0;
    enumerate_spherical(*g, p == 2 ? 4 : 3, [&](std::span<const Element> t) {
      const auto e = extend_size(*g, t, p);
      EXPECT_TRUE(is_spherical_system(*g, e).ok());
      EXPECT_EQ(sigma(*g, e), sigma(*g, t));
      EXPECT_EQ(e.size(), t.size() + (p == 2 ? 2 : 1));
      return ++n < 200;
    });
  }
}

TEST(Constructors, ExtendRank) {
  const auto s66 = elementary_abelian_structure(2, 3, 6, 6);
  const auto big = extend_rank(s66);
  expect_valid(big, 6, 6);
  EXPECT_EQ(big.group()->order(), 16u);
  const auto s55 = elementary_abelian_structure(2, 4, 5, 5);
  EXPECT_EQ(kind_of([&] { extend_rank(s55); }), ErrorKind::PreconditionViolated);
}

TEST(Constructors, ElementaryAbelianBaseTuples) {
  auto c55 = make_abelian({5, 5});
  const auto s = elementary_abelian_structure(5, 2, 3, 3);
  expect_valid(s, 3, 3);
  EXPECT_EQ(s.t1(), tup(c55, "[x1; x2; (x1*x2)^-1]"));
  EXPECT_EQ(s.t2(), tup(c55, "[x1*x2^2; x1*x2^4; (x1^2*x2^6)^-1]"));

  auto v8 = make_abelian({2, 2, 2});
  const auto b = elementary_abelian_structure(2, 3, 5, 6);
  expect_valid(b, 5, 6);
  EXPECT_EQ(b.t1(), tup(v8, "[x1*x2; x1*x3; x2*x3; x1*x2*x3; x1*x2*x3]"));
  EXPECT_EQ(b.t2(), tup(v8, "[x1; x2; x3; x1; x2; x3]"));

  expect_valid(elementary_abelian_structure(3, 2, 4, 4), 4, 4);
  expect_valid(elementary_abelian_structure(2, 3, 6, 6), 6, 6);
  expect_valid(elementary_abelian_structure(2, 4, 5, 5), 5, 5);
  EXPECT_EQ(kind_of([] { elementary_abelian_structure(3, 2, 3, 3); }), ErrorKind::InadmissibleSize);
  EXPECT_EQ(kind_of([] { elementary_abelian_structure(2, 3, 5, 7); }), ErrorKind::InadmissibleSize);
}

TEST(Constructors, ElementaryAbelianTotalityModerate) {
  // Full sweep lives in the acceptance run; here a quicker slice.
  for (std::uint32_t p : {2u, 3u, 5u})
    for (std::uint32_t d = 1; d <= 4; ++d) {
      const auto pred = predict_elementary_abelian(p, d);
      for (std::uint32_t a = 3; a <= 8; ++a)
        for (std::uint32_t b = 3; b <= 8; ++b) {
          if (pred.contains(a, b)) {
            const auto s = elementary_abelian_structure(p, d, a, b);
            expect_valid(s, a, b);
            EXPECT_EQ(s.group()->order(), ipow(p, d));
          } else {
            EXPECT_EQ(kind_of([&] { elementary_abelian_structure(p, d, a, b); }), ErrorKind::InadmissibleSize);
          }
        }
    }
}

TEST(Constructors, ExponentP) {
  auto h5 = make_heisenberg(5);
  expect_valid(exponent_p_structure(h5, 3, 3), 3, 3);
  auto h3 = make_heisenberg(3);
  EXPECT_EQ(kind_of([&] { exponent_p_structure(h3, 3, 3); }), ErrorKind::InadmissibleSize);
  expect_valid(exponent_p_structure(h3, 4, 4), 4, 4);
  expect_valid(exponent_p_structure(h3, 4, 7), 4, 7);
  EXPECT_EQ(kind_of([] { exponent_p_structure(make_abelian({3, 9}), 4, 4); }), ErrorKind::NotExponentP);
}

TEST(Constructors, ProjectAndLiftModOmega) {
  auto g = make_abelian({2, 4, 4, 4});
  auto s = require_ramification(g, tup(g, "[x2; x3; x4; x2^-1; x3^-1; x4^-1*x1; x1]"),
                                tup(g, "[x2*x3*x1; x2*x4; x3*x4; x2*x3*x4; x2*x3*x4*x1]"), "test");
  const auto proj = project_mod_omega(s);
  EXPECT_EQ(proj.group()->order(), 8u);
  EXPECT_LE(proj.size().first, 7u);
  EXPECT_LE(proj.size().second, 5u);
  EXPECT_TRUE(check_ramification(proj.group(), proj.t1(), proj.t2()).ok());

  auto v = elementary_abelian_structure(3, 2, 4, 4);
  const auto same = project_mod_omega(v);
  EXPECT_EQ(same.t1(), v.t1());
  EXPECT_EQ(same.t2(), v.t2());

  auto q8 = ram::test::bundled("q8");
  auto sq = find_structure(q8, 3, 3, SearchBudget{});
  if (sq.structure) EXPECT_EQ(kind_of([&] { project_mod_omega(*sq.structure); }), ErrorKind::HypothesisViolated);

  // Lift a (6,6) structure from the quotient C2^3.
  const auto ctx = omega_context(g);
  auto u = find_structure(ctx.quotient(), 6, 6, SearchBudget{});
  ASSERT_TRUE(u.structure);
  const auto lifted = lift_structure_mod_omega(ctx, *u.structure);
  expect_valid(lifted, 6, 6);
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(ctx.map.project(lifted.t1()[i]), u.structure->t1()[i]);
    EXPECT_EQ(ctx.map.project(lifted.t2()[i]), u.structure->t2()[i]);
  }
  auto u56 = find_structure(ctx.quotient(), 5, 6, SearchBudget{});
  ASSERT_TRUE(u56.structure);
  expect_valid(lift_structure_mod_omega(ctx, *u56.structure), 5, 6);

  // Elementary abelian parent: the lift is the identity.
  auto e = elementary_abelian_structure(2, 3, 5, 6);
  const auto ectx = omega_context(e.group());
  const auto back = lift_structure_mod_omega(ectx, e);
  EXPECT_EQ(back.t1(), e.t1());
}

TEST(Constructors, LiftModOmegaRejectsShortSizes) {
  // d = 3, quotient C3xC3: (4,4) is just long enough.
  auto g = make_abelian({3, 9, 9});
  const auto ctx = omega_context(g);
  ASSERT_EQ(min_generators(*g), 3u);
  auto u = find_structure(ctx.quotient(), 4, 4, SearchBudget{});
  ASSERT_TRUE(u.structure);
  expect_valid(lift_structure_mod_omega(ctx, *u.structure), 4, 4);
  // d = 4, same quotient: (4,4) is too short.
  auto g2 = make_abelian({9, 9, 9, 3});
  const auto ctx2 = omega_context(g2);
  auto u2 = find_structure(ctx2.quotient(), 4, 4, SearchBudget{});
  ASSERT_TRUE(u2.structure);
  EXPECT_EQ(kind_of([&] { lift_structure_mod_omega(ctx2, *u2.structure); }), ErrorKind::PreconditionViolated);
}

TEST(Constructors, PadFromBeauville) {
  auto c55 = make_abelian({5, 5});
  const auto s = elementary_abelian_structure(5, 2, 3, 3);
  const auto p34 = pad_from_beauville(s, 3, 4);
  expect_valid(p34, 3, 4);
  EXPECT_EQ(p34.t1(), s.t1());
  const Element x2 = s.t2()[0], y2 = s.t2()[1];
  EXPECT_EQ(p34.t2(), (GenTuple{x2, y2, c55->inv(y2), c55->inv(x2)}));
  const auto same = pad_from_beauville(s, 3, 3);
  EXPECT_EQ(same.t1(), s.t1());
  EXPECT_EQ(same.t2(), s.t2());
  for (std::uint32_t a = 3; a <= 9; ++a)
    for (std::uint32_t b = 3; b <= 9; ++b) {
      const auto p = pad_from_beauville(s, a, b);
      expect_valid(p, a, b);
      // Even lengths drop <xy>, so only containment holds there.
      EXPECT_TRUE(p.sigma1().is_subset_of(s.sigma1()));
      EXPECT_TRUE(p.sigma2().is_subset_of(s.sigma2()));
      if (a % 2 == 1) EXPECT_EQ(p.sigma1(), s.sigma1());
      if (b % 2 == 1) EXPECT_EQ(p.sigma2(), s.sigma2());
    }
  EXPECT_EQ(kind_of([&] { pad_from_beauville(p34, 5, 5); }), ErrorKind::PreconditionViolated);
}

TEST(Constructors, ProductCombineAndProject) {
  const auto odd = elementary_abelian_structure(3, 2, 5, 7);
  const auto even = elementary_abelian_structure(2, 3, 5, 6);
  const auto c = product_combine(odd, even);
  expect_valid(c, 5, 7);
  EXPECT_EQ(c.group()->order(), 72u);
  EXPECT_TRUE(c.group()->is_abelian());

  const auto back = product_project(c, ProductSide::Left, std::pair{5u, 7u});
  expect_valid(back, 5, 7);
  EXPECT_TRUE(same_cyclic_subgroups(*back.group(), back.t1(), odd.t1()));
  EXPECT_TRUE(same_cyclic_subgroups(*back.group(), back.t2(), odd.t2()));

  const auto two = product_project(c, ProductSide::Right);
  EXPECT_TRUE(check_ramification(two.group(), two.t1(), two.t2()).ok());
  EXPECT_LE(two.size().first, 5u);
  EXPECT_LE(two.size().second, 7u);
  EXPECT_EQ(kind_of([&] { product_project(c, ProductSide::Right, std::pair{5u, 7u}); }),
            ErrorKind::PaddingImpossible);

  // Equal sizes: plain zip.
  const auto a = elementary_abelian_structure(3, 2, 6, 6);
  const auto b = elementary_abelian_structure(2, 3, 6, 6);
  const auto z = product_combine(a, b);
  expect_valid(z, 6, 6);
  const auto& pg = *z.group();
  for (std::size_t i = 0; i < 6; ++i) {
    EXPECT_EQ(pg.product_left(z.t1()[i]), a.t1()[i]);
    EXPECT_EQ(pg.product_right(z.t1()[i]), b.t1()[i]);
  }
  EXPECT_EQ(kind_of([&] { product_combine(b, b); }), ErrorKind::NotCoprime);
}

TEST(Constructors, ProjectToSylowFactor) {
  auto g = make_abelian({6, 6, 2});
  auto s = require_ramification(g, tup(g, "[x1; x2; x3; x2^-1; (x1*x3)^-1]"),
                                tup(g, "[x1*x2; x1*x2; (x1*x2)^-2; x1*x2*x3; (x1*x2*x3)^-1; x1^2*x2*x3; (x1^2*x2*x3)^-1]"),
                                "test");
  const auto factors = sylow_decomposition(*g);
  const auto three = product_project(s, factors[1], std::pair{5u, 7u});
  expect_valid(three, 5, 7);
  EXPECT_EQ(three.group()->order(), 9u);
  const auto two = product_project(s, factors[0]);
  EXPECT_TRUE(check_ramification(two.group(), two.t1(), two.t2()).ok());
  EXPECT_LE(two.size().first, 5u);
  EXPECT_LE(two.size().second, 7u);
  EXPECT_EQ(kind_of([&] { product_project(s, factors[0], std::pair{5u, 7u}); }), ErrorKind::PaddingImpossible);
}

TEST(Constructors, OddOddTwoGroup) {
  auto g = make_abelian({2, 4, 4, 4});
  expect_valid(semi_abelian_2group_odd_odd(g, 7, 7), 7, 7);
  expect_valid(semi_abelian_2group_odd_odd(g, 5, 7), 5, 7);
  expect_valid(semi_abelian_2group_odd_odd(g, 9, 5), 9, 5);
  EXPECT_EQ(kind_of([&] { semi_abelian_2group_odd_odd(g, 5, 5); }), ErrorKind::InadmissibleSize);
  EXPECT_EQ(kind_of([&] { semi_abelian_2group_odd_odd(g, 6, 7); }), ErrorKind::PreconditionViolated);
  EXPECT_EQ(kind_of([] { semi_abelian_2group_odd_odd(make_abelian({4, 4, 4}), 7, 7); }), ErrorKind::DegenerateRank);
  EXPECT_EQ(kind_of([] { semi_abelian_2group_odd_odd(make_abelian({3, 3}), 7, 7); }), ErrorKind::HypothesisViolated);
  EXPECT_EQ(kind_of([] { semi_abelian_2group_odd_odd(make_abelian({2, 2, 2}), 7, 7); }), ErrorKind::InadmissibleSize);
  auto wide = make_abelian({2, 2, 4, 4, 4});
  expect_valid(semi_abelian_2group_odd_odd(wide, 7, 9), 7, 9);
}

TEST(Constructors, ConstructAny) {
  auto m = build_group("C6xC6xC2");
  const auto a = construct_any(m, 5, 7);
  ASSERT_EQ(a.status, ConstructStatus::Constructed);
  expect_valid(*a.structure, 5, 7);
  EXPECT_EQ(a.method.rfind("theorem:", 0), 0u);

  const auto cyc = construct_any(make_cyclic(7), 3, 3);
  EXPECT_EQ(cyc.status, ConstructStatus::Inadmissible);
  EXPECT_FALSE(cyc.structure);

  auto q8 = ram::test::bundled("q8");
  const auto q = construct_any(q8, 5, 5);
  EXPECT_EQ(q.method, "search");
  ASSERT_TRUE(q.search);
  EXPECT_TRUE(q.search->exhaustive);
  EXPECT_EQ(q.status == ConstructStatus::Constructed, q.search->status == SearchStatus::Found);

  const auto c4 = construct_any(make_abelian({4, 4, 4}), 7, 7);
  EXPECT_NE(c4.status, ConstructStatus::Unknown);
  if (c4.structure) expect_valid(*c4.structure, 7, 7);

  const auto forced = construct_any(m, 5, 7, ConstructMethod::Search);
  EXPECT_EQ(forced.method, "search");
  ASSERT_TRUE(forced.structure);
  expect_valid(*forced.structure, 5, 7);

  const auto bad = construct_any(m, 5, 5);
  EXPECT_EQ(bad.status, ConstructStatus::Inadmissible);
}

TEST(Constructors, ConstructAnyAgreesWithPredictor) {
  for (const char* spec : {"C2xC2xC2", "C3xC3", "C5xC5", "heis(3)", "C2xC4xC4xC4", "C6xC6xC2", "C3xC3xC2xC2xC2"}) {
    auto g = build_group(spec);
    const auto pred = predict_nilpotent(*g);
    for (std::uint32_t a = 3; a <= 8; ++a)
      for (std::uint32_t b = a; b <= 8; ++b) {
        const auto out = construct_any(g, a, b);
        if (pred.contains(a, b)) {
          ASSERT_EQ(out.status, ConstructStatus::Constructed) << spec << " " << a << "," << b;
          expect_valid(*out.structure, a, b);
        } else {
          EXPECT_EQ(out.status, ConstructStatus::Inadmissible) << spec << " " << a << "," << b;
        }
      }
  }
}
