#include "ram/invariants.hpp"

#include <algorithm>

namespace ram {

std::uint64_t ipow(std::uint64_t base, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e--) r *= base;
  return r;
}

std::optional<std::uint32_t> pgroup_prime(const FiniteGroup& g) {
  const auto primes = prime_factors(g.order());
  if (primes.size() != 1) return std::nullopt;
  return primes.front();
}

std::uint32_t require_pgroup(const FiniteGroup& g) {
  auto p = pgroup_prime(g);
  if (!p) throw Error(ErrorKind::NotAPGroup, "group of order " + std::to_string(g.order()) + " is not a p-group");
  return *p;
}

std::uint32_t exponent(const FiniteGroup& g) {
  std::uint32_t m = 1;
  for (Element a = 0; a < g.order(); ++a) m = std::max(m, g.order_of(a));
  return m;
}

std::uint32_t exponent_log(const FiniteGroup& g) {
  const auto p = require_pgroup(g);
  std::uint32_t e = 0;
  for (auto x = exponent(g); x > 1; x /= p) ++e;
  return e;
}

ElementSet omega_torsion(const FiniteGroup& g, std::uint32_t i) {
  const auto p = require_pgroup(g);
  const auto q = ipow(p, i);
  ElementSet s = g.empty_set();
  for (Element a = 0; a < g.order(); ++a)
    if (q % g.order_of(a) == 0) s.insert(a);
  return s;
}

ElementSet omega(const FiniteGroup& g, std::uint32_t i) {
  return generated_subgroup(g, omega_torsion(g, i));
}

ElementSet power_image(const FiniteGroup& g, std::uint32_t i) {
  const auto p = require_pgroup(g);
  const auto q = static_cast<long long>(ipow(p, std::min<std::uint32_t>(i, 40)));
  ElementSet s = g.empty_set();
  for (Element a = 0; a < g.order(); ++a) s.insert(g.power(a, q));
  return s;
}

ElementSet agemo(const FiniteGroup& g, std::uint32_t i) {
  return generated_subgroup(g, power_image(g, i));
}

ElementSet derived_subgroup(const FiniteGroup& g) {
  ElementSet comms = g.empty_set();
  for (Element a = 0; a < g.order(); ++a)
    for (Element b = 0; b < g.order(); ++b) comms.insert(g.commutator(a, b));
  // The commutator set is conjugation invariant, so its closure is normal.
  return generated_subgroup(g, comms);
}

ElementSet frattini(const FiniteGroup& g) {
  require_pgroup(g);
  return generated_subgroup(g, derived_subgroup(g) | power_image(g, 1));
}

bool is_elementary_abelian(const FiniteGroup& g) {
  auto p = pgroup_prime(g);
  return p && g.is_abelian() && exponent(g) == *p;
}

namespace {

std::uint32_t pgroup_rank(const FiniteGroup& g, std::uint32_t p) {
  auto index = g.order() / frattini(g).size();
  std::uint32_t d = 0;
  while (index > 1) {
    index /= p;
    ++d;
  }
  return d;
}

}  // namespace

std::uint32_t min_generators(const FiniteGroup& g) {
  if (g.order() == 1) return 0;
  if (auto p = pgroup_prime(g)) return pgroup_rank(g, *p);
  std::uint32_t d = 0;
  for (const auto& f : sylow_decomposition(g)) d = std::max(d, pgroup_rank(*f.group, f.p));
  return d;
}

SemiAbelianVerdict is_semi_abelian(const FiniteGroup& g, std::uint32_t i) {
  const auto p = require_pgroup(g);
  const auto q = static_cast<long long>(ipow(p, std::min<std::uint32_t>(i, 40)));
  std::vector<Element> pw(g.order());
  for (Element a = 0; a < g.order(); ++a) pw[a] = g.power(a, q);
  for (Element x = 0; x < g.order(); ++x)
    for (Element y = 0; y < g.order(); ++y) {
      const bool lhs = pw[x] == pw[y];
      const bool rhs = pw[g.mul(x, g.inv(y))] == kIdentity;
      if (lhs != rhs) return {false, std::make_pair(x, y)};
    }
  return {};
}

std::vector<SylowFactor> sylow_decomposition(const FiniteGroup& g) {
  std::vector<SylowFactor> out;
  const std::uint64_t n = g.order();
  for (auto p : prime_factors(n)) {
    std::uint64_t ppart = 1;
    for (auto m = n; m % p == 0; m /= p) ppart *= p;
    SylowFactor f;
    f.p = p;
    f.members = g.empty_set();
    for (Element a = 0; a < n; ++a)
      if (ppart % g.order_of(a) == 0) f.members.insert(a);
    if (f.members.size() != ppart || !is_subgroup(g, f.members))
      throw Error(ErrorKind::NotNilpotent,
                  "elements of " + std::to_string(p) + "-power order do not form a Sylow subgroup");
    f.embedding = f.members.elements();
    f.to_factor.assign(n, ~Element{0});
    for (Element k = 0; k < f.embedding.size(); ++k) f.to_factor[f.embedding[k]] = k;
    const std::size_t m = f.embedding.size();
    std::vector<std::uint16_t> table(m * m);
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        table[a * m + b] = static_cast<std::uint16_t>(f.to_factor[g.mul(f.embedding[a], f.embedding[b])]);
    f.group = FiniteGroup::from_trusted_table(CayleyRealization{}, m, std::move(table));
    out.push_back(std::move(f));
  }
  return out;
}

bool is_nilpotent(const FiniteGroup& g) {
  try {
    sylow_decomposition(g);
    return true;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotNilpotent) return false;
    throw;
  }
}

PGroupClassification classify_pgroup(const FiniteGroup& g) {
  const auto p = require_pgroup(g);
  const auto e = exponent_log(g);
  PGroupClassification c;
  c.abelian = g.is_abelian();
  const auto derived = derived_subgroup(g);
  c.powerful = derived.is_subset_of(agemo(g, p == 2 ? 2 : 1));
  const auto series = upper_central_series(g);
  if (p == 2) {
    c.p_central = omega(g, 2).is_subset_of(center(g));
  } else {
    const auto& z = series[std::min<std::size_t>(p - 2, series.size() - 1)];
    c.p_central = omega(g, 1).is_subset_of(z);
  }
  c.semi_abelian_at_e_minus_1 = c.abelian || is_semi_abelian(g, e - 1).holds;
  return c;
}

PGroupProfile pgroup_profile(const FiniteGroup& g) {
  PGroupProfile prof;
  prof.p = require_pgroup(g);
  prof.e = exponent_log(g);
  prof.d = min_generators(g);
  prof.order = g.order();
  for (std::uint32_t i = 0; i <= prof.e; ++i) {
    prof.power_image_sizes.push_back(power_image(g, i).size());
    prof.semi_abelian.push_back(i == 0 || is_semi_abelian(g, i).holds);
    if (i >= 1) prof.omega_indices.push_back(g.order() / omega(g, i).size());
  }
  prof.classification = classify_pgroup(g);
  return prof;
}

}  // namespace ram
