#include "ram/theory.hpp"

#include <algorithm>

#include "ram/invariants.hpp"

namespace ram {

bool SizeConstraintSet::contains(std::uint32_t r1, std::uint32_t r2) const {
  if (!admits) return false;
  if (r1 < min_size || r2 < min_size) return false;
  if (excluded_pairs.count({std::min(r1, r2), std::max(r1, r2)})) return false;
  if (forbid_both_odd && r1 % 2 == 1 && r2 % 2 == 1) return false;
  return true;
}

bool membership(const SizeConstraintSet& s, std::uint32_t r1, std::uint32_t r2) { return s.contains(r1, r2); }

std::vector<std::pair<std::uint32_t, std::uint32_t>> membership_grid(const SizeConstraintSet& s, std::uint32_t cap) {
  std::vector<std::pair<std::uint32_t, std::uint32_t>> out;
  for (std::uint32_t a = 3; a <= cap; ++a)
    for (std::uint32_t b = a; b <= cap; ++b)
      if (s.contains(a, b)) out.emplace_back(a, b);
  return out;
}

namespace {

SizeConstraintSet rejecting(std::string why) {
  SizeConstraintSet s;
  s.provenance.push_back(std::move(why));
  return s;
}

}  // namespace

SizeConstraintSet predict_elementary_abelian(std::uint32_t p, std::uint32_t d) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidPrime, std::to_string(p) + " is not prime");
  if (d == 0) throw Error(ErrorKind::PreconditionViolated, "rank must be >= 1");
  if (p == 2 && d < 3) return rejecting("elementary abelian: p = 2 needs rank >= 3");
  if (p >= 3 && d < 2) return rejecting("elementary abelian: p odd needs rank >= 2");
  SizeConstraintSet s;
  s.admits = true;
  s.min_size = d + 1;
  s.provenance.push_back("elementary abelian: r >= d + 1 = " + std::to_string(d + 1));
  if (p == 3) {
    s.min_size = std::max(s.min_size, 4u);
    s.provenance.push_back("elementary abelian: p = 3 gives r >= 4");
  } else if (p == 2) {
    s.min_size = std::max(s.min_size, 5u);
    s.provenance.push_back("elementary abelian: p = 2 gives r >= 5");
    if (d == 3) {
      s.forbid_both_odd = true;
      s.provenance.push_back("elementary abelian: C2^3 forbids both sizes odd");
    }
  }
  s.min_size = std::max(s.min_size, 3u);
  return s;
}

SizeConstraintSet predict_exponent_p(const FiniteGroup& g) {
  auto p = pgroup_prime(g);
  if (!p || exponent(g) != *p) throw Error(ErrorKind::NotExponentP, "group does not have prime exponent");
  auto s = predict_elementary_abelian(*p, min_generators(g));
  s.provenance.insert(s.provenance.begin(), "exponent p: sizes of G/Phi(G)");
  return s;
}

SizeConstraintSet predict_semi_abelian_pgroup(const FiniteGroup& g) {
  const auto p = require_pgroup(g);
  const auto e = exponent_log(g);
  // Abelian realizations are semi-abelian at every level; everything else is scanned.
  if (!g.as<AbelianRealization>()) {
    auto v = is_semi_abelian(g, e - 1);
    if (!v.holds)
      throw Error(ErrorKind::HypothesisViolated,
                  "group is not semi-" + std::to_string(p) + "^" + std::to_string(e - 1) + "-abelian");
  }
  const auto x = power_image(g, e - 1).size();
  const auto d = min_generators(g);
  const std::uint64_t threshold = p == 2 ? 8 : std::uint64_t{p} * p;
  if (x < threshold)
    return rejecting("power image |{g^(p^(e-1))}| = " + std::to_string(x) + " < " + std::to_string(threshold));
  SizeConstraintSet s;
  s.admits = true;
  s.min_size = std::max<std::uint32_t>(d + 1, 3);
  s.provenance.push_back("p-group: |X| = " + std::to_string(x) + " >= " + std::to_string(threshold) +
                         ", r >= d + 1 = " + std::to_string(d + 1));
  if (p == 3) {
    s.min_size = std::max(s.min_size, 4u);
    s.provenance.push_back("p-group: p = 3 gives r >= 4");
  }
  if (p == 2) {
    s.min_size = std::max(s.min_size, 5u);
    s.provenance.push_back("p-group: p = 2 gives r >= 5");
    if (x == 8) {
      s.excluded_pairs.insert({5, 5});
      s.provenance.push_back("p-group: |X| = 8 excludes (5,5)");
      if (e == 1) {
        s.forbid_both_odd = true;
        s.provenance.push_back("p-group: G = C2^3 forbids both sizes odd");
      }
    }
  }
  return s;
}

SizeConstraintSet predict_nilpotent(const FiniteGroup& g) {
  if (g.order() == 1) return rejecting("trivial group has no non-trivial elements");
  const auto factors = sylow_decomposition(g);
  SizeConstraintSet s;
  s.admits = true;
  const auto d = min_generators(g);
  s.min_size = std::max<std::uint32_t>(d + 1, 3);
  s.provenance.push_back("nilpotent: r >= d + 1 = " + std::to_string(d + 1));
  for (const auto& f : factors) {
    auto part = predict_semi_abelian_pgroup(*f.group);
    const auto tag = "Sylow " + std::to_string(f.p) + ": ";
    if (!part.admits) {
      auto r = rejecting(tag + "does not admit a ramification structure");
      for (auto& why : part.provenance) r.provenance.push_back(tag + why);
      return r;
    }
    s.min_size = std::max(s.min_size, part.min_size);
    s.excluded_pairs.insert(part.excluded_pairs.begin(), part.excluded_pairs.end());
    for (auto& why : part.provenance) s.provenance.push_back(tag + why);
  }
  // The parity bar only survives when the whole group is C2^3; a C2^3 Sylow
  // factor inside a larger group keeps r >= 5 and (5,5) but not the bar.
  if (g.order() == 8 && is_elementary_abelian(g)) {
    s.forbid_both_odd = true;
    s.provenance.push_back("nilpotent: G = C2^3 forbids both sizes odd");
  }
  return s;
}

}  // namespace ram
