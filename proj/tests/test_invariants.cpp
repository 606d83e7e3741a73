#include <gtest/gtest.h>

#include "helpers.hpp"
#include "ram/invariants.hpp"

using namespace ram;
using ram::test::bundled;
using ram::test::el;
using ram::test::kind_of;

namespace {

std::vector<GroupPtr> pgroups() {
  std::vector<GroupPtr> out;
  for (const char* s : {"C2", "C4", "C2xC4", "C2xC2xC2", "C2xC4xC4xC4", "C3xC9", "C5xC5", "heis(3)", "heis(5)",
                        "cayley:d4", "cayley:q8", "prod(C2,cayley:q8)"})
    out.push_back(build_group(s));
  return out;
}

}  // namespace

TEST(Invariants, Exponent) {
  EXPECT_EQ(exponent(*make_abelian({2, 4, 4, 4})), 4u);
  EXPECT_EQ(exponent(*make_cyclic(1)), 1u);
  auto h = make_heisenberg(5);
  std::uint32_t m = 0;
  for (Element a = 0; a < h->order(); ++a) {
    std::uint32_t k = 1;
    for (Element y = a; y != kIdentity; y = h->mul(y, a)) ++k;
    m = std::max(m, k);
  }
  EXPECT_EQ(exponent(*h), m);
  EXPECT_EQ(m, 5u);
}

TEST(Invariants, OmegaAndTorsion) {
  auto g = make_abelian({2, 4, 4, 4});
  const auto o1 = omega(*g, 1);
  EXPECT_EQ(o1.size(), 16u);
  for (const char* w : {"x1", "x2^2", "x3^2", "x4^2"}) EXPECT_TRUE(o1.contains(el(g, w)));
  EXPECT_EQ(omega(*g, 2), g->all_elements());
  EXPECT_EQ(omega(*g, 0), g->trivial_subgroup());
  EXPECT_EQ(kind_of([] { omega(*make_cyclic(6), 1); }), ErrorKind::NotAPGroup);
}

TEST(Invariants, Agemo) {
  auto g = make_abelian({2, 4, 4, 4});
  EXPECT_EQ(agemo(*g, 1).size(), 8u);
  EXPECT_EQ(agemo(*g, 2), g->trivial_subgroup());
  EXPECT_EQ(agemo(*g, 5), g->trivial_subgroup());
  EXPECT_EQ(agemo(*make_heisenberg(3), 1).size(), 1u);
}

TEST(Invariants, DerivedSubgroup) {
  EXPECT_EQ(derived_subgroup(*make_abelian({3, 9})).size(), 1u);
  auto h = make_heisenberg(3);
  EXPECT_EQ(derived_subgroup(*h), center(*h));
  EXPECT_EQ(derived_subgroup(*h).size(), 3u);
  // Quotient by the derived subgroup is abelian.
  for (const char* s : {"cayley:d4", "cayley:q8", "cayley:s3", "heis(5)"}) {
    auto g = build_group(s);
    auto q = quotient(g, derived_subgroup(*g));
    EXPECT_TRUE(q.group->is_abelian()) << s;
  }
}

TEST(Invariants, Frattini) {
  EXPECT_EQ(frattini(*make_abelian({2, 2, 2})).size(), 1u);
  auto g = make_abelian({2, 4, 4, 4});
  const auto phi = frattini(*g);
  EXPECT_EQ(phi.size(), 8u);
  for (const char* w : {"x2^2", "x3^2", "x4^2"}) EXPECT_TRUE(phi.contains(el(g, w)));
  auto h = make_heisenberg(5);
  EXPECT_EQ(frattini(*h), center(*h));
  for (const auto& p : pgroups()) {
    const auto f = frattini(*p);
    ASSERT_TRUE(is_normal(*p, f));
    auto q = quotient(p, f);
    EXPECT_TRUE(q.group->order() == 1 || is_elementary_abelian(*q.group));
  }
}

TEST(Invariants, FrattiniIsIntersectionOfMaximalSubgroups) {
  // Maximal subgroups of a p-group have index p; enumerate subgroups generated
  // by pairs and keep those of index p.
  for (const char* s : {"C2xC4", "cayley:d4", "cayley:q8", "heis(3)", "C3xC9"}) {
    auto g = build_group(s);
    const auto p = *pgroup_prime(*g);
    ElementSet meet = g->all_elements();
    for (Element a = 0; a < g->order(); ++a)
      for (Element b = a; b < g->order(); ++b) {
        const std::vector<Element> gens{a, b};
        const auto h = generated_subgroup(*g, gens);
        if (h.size() * p == g->order()) meet &= h;
      }
    EXPECT_EQ(frattini(*g), meet) << s;
  }
}

TEST(Invariants, MinGenerators) {
  EXPECT_EQ(min_generators(*make_abelian({2, 4, 4, 4})), 4u);
  EXPECT_EQ(min_generators(*make_cyclic(7)), 1u);
  EXPECT_EQ(min_generators(*make_abelian({6, 6, 2})), 3u);
  EXPECT_EQ(min_generators(*make_heisenberg(3)), 2u);
  EXPECT_EQ(kind_of([] { min_generators(*bundled("s3")); }), ErrorKind::NotNilpotent);
}

TEST(Invariants, PowerImage) {
  auto g = make_abelian({2, 4, 4, 4});
  const auto sq = power_image(*g, 1);
  EXPECT_EQ(sq.size(), 8u);
  EXPECT_EQ(sq, agemo(*g, 1));
  EXPECT_EQ(power_image(*g, 0), g->all_elements());
  auto q8 = bundled("q8");
  const auto q = power_image(*q8, 1);
  EXPECT_EQ(q.size(), 2u);
  EXPECT_TRUE(q.contains(el(q8, "z")));
  for (const auto& p : pgroups()) {
    EXPECT_EQ(power_image(*p, exponent_log(*p)), p->trivial_subgroup());
    EXPECT_EQ(power_image(*p, 0), p->all_elements());
  }
}

TEST(Invariants, SemiAbelian) {
  for (const char* s : {"C2xC4xC4xC4", "C3xC9", "C5xC5", "C2xC2xC2"}) {
    auto g = build_group(s);
    for (std::uint32_t i = 0; i <= exponent_log(*g) + 1; ++i) EXPECT_TRUE(is_semi_abelian(*g, i).holds) << s;
  }
  auto q8 = bundled("q8");
  const auto v = is_semi_abelian(*q8, 1);
  ASSERT_FALSE(v.holds);
  ASSERT_TRUE(v.witness);
  EXPECT_EQ(v.witness->first, el(q8, "i"));
  EXPECT_EQ(v.witness->second, el(q8, "j"));
  // Witness breaks the biconditional.
  auto [x, y] = *v.witness;
  const bool lhs = q8->power(x, 2) == q8->power(y, 2);
  const bool rhs = q8->power(q8->mul(x, q8->inv(y)), 2) == kIdentity;
  EXPECT_NE(lhs, rhs);
  auto h5 = make_heisenberg(5);
  EXPECT_TRUE(is_semi_abelian(*h5, 0).holds);
}

TEST(Invariants, SemiAbelianPropertiesSA1SA2) {
  for (const auto& g : pgroups()) {
    const auto p = *pgroup_prime(*g);
    for (std::uint32_t i = 0; i <= exponent_log(*g); ++i) {
      if (!is_semi_abelian(*g, i).holds) continue;
      EXPECT_EQ(omega(*g, i), omega_torsion(*g, i));
      EXPECT_EQ(g->order() / omega(*g, i).size(), power_image(*g, i).size());
      (void)p;
    }
  }
}

TEST(Invariants, SylowDecomposition) {
  auto g = make_abelian({6, 6, 2});
  const auto f = sylow_decomposition(*g);
  ASSERT_EQ(f.size(), 2u);
  EXPECT_EQ(f[0].p, 2u);
  EXPECT_EQ(f[0].group->order(), 8u);
  EXPECT_TRUE(is_elementary_abelian(*f[0].group));
  EXPECT_EQ(f[1].p, 3u);
  EXPECT_EQ(f[1].group->order(), 9u);
  EXPECT_TRUE(is_elementary_abelian(*f[1].group));
  // Every element is a unique commuting product of its p-parts.
  for (Element x = 0; x < g->order(); ++x) {
    int hits = 0;
    for (auto a : f[0].embedding)
      for (auto b : f[1].embedding)
        if (g->mul(a, b) == x) {
          ++hits;
          EXPECT_EQ(g->mul(a, b), g->mul(b, a));
        }
    EXPECT_EQ(hits, 1);
  }
  auto h = make_heisenberg(3);
  const auto single = sylow_decomposition(*h);
  ASSERT_EQ(single.size(), 1u);
  EXPECT_EQ(single[0].group->order(), 27u);
  EXPECT_EQ(kind_of([] { sylow_decomposition(*bundled("s3")); }), ErrorKind::NotNilpotent);
  EXPECT_FALSE(is_nilpotent(*bundled("s3")));
  EXPECT_TRUE(is_nilpotent(*build_group("prod(cayley:q8,C3)")));
}

TEST(Invariants, Classification) {
  const auto a = classify_pgroup(*make_abelian({2, 4, 4, 4}));
  EXPECT_TRUE(a.abelian && a.powerful && a.p_central && a.semi_abelian_at_e_minus_1);
  const auto h = classify_pgroup(*make_heisenberg(5));
  EXPECT_FALSE(h.abelian);
  EXPECT_FALSE(h.powerful);
  EXPECT_TRUE(h.p_central);
  EXPECT_FALSE(classify_pgroup(*bundled("q8")).semi_abelian_at_e_minus_1);
}

TEST(Invariants, Profile) {
  const auto prof = pgroup_profile(*make_abelian({2, 4, 4, 4}));
  EXPECT_EQ(prof.p, 2u);
  EXPECT_EQ(prof.e, 2u);
  EXPECT_EQ(prof.d, 4u);
  ASSERT_EQ(prof.power_image_sizes.size(), 3u);
  EXPECT_EQ(prof.power_image_sizes[1], 8u);
  ASSERT_EQ(prof.omega_indices.size(), 2u);
  EXPECT_EQ(prof.omega_indices[0], 8u);
  EXPECT_EQ(prof.omega_indices[1], 1u);
  for (const auto& g : pgroups()) {
    const auto pr = pgroup_profile(*g);
    // d = log_p |G/Phi|.
    std::size_t q = g->order() / frattini(*g).size(), d = 0;
    while (q > 1) q /= pr.p, ++d;
    EXPECT_EQ(pr.d, d);
    for (std::uint32_t i = 1; i <= pr.e; ++i)
      if (pr.semi_abelian[i]) EXPECT_EQ(pr.power_image_sizes[i], pr.omega_indices[i - 1]);
  }
}
