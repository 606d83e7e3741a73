#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ram/group.hpp"

namespace ram {

/// A finite description of the set of sizes (r1, r2) of ramification
/// structures: a common lower bound, finitely many excluded unordered pairs
/// and an optional "not both odd" parity bar.
struct SizeConstraintSet {
  bool admits = false;
  std::uint32_t min_size = 0;
  std::set<std::pair<std::uint32_t, std::uint32_t>> excluded_pairs;  // stored with first <= second
  bool forbid_both_odd = false;
  std::vector<std::string> provenance;

  bool contains(std::uint32_t r1, std::uint32_t r2) const;
};

bool membership(const SizeConstraintSet& s, std::uint32_t r1, std::uint32_t r2);

/// Sizes for the elementary abelian group C_p^d.
SizeConstraintSet predict_elementary_abelian(std::uint32_t p, std::uint32_t d);
/// Groups of prime exponent: same sizes as G/Phi(G). Throws NotExponentP.
SizeConstraintSet predict_exponent_p(const FiniteGroup& g);
/// p-groups that are semi-p^{e-1}-abelian. Throws NotAPGroup or HypothesisViolated.
SizeConstraintSet predict_semi_abelian_pgroup(const FiniteGroup& g);
/// Nilpotent groups whose Sylow factors satisfy the semi-abelian hypothesis.
/// Throws NotNilpotent or HypothesisViolated.
SizeConstraintSet predict_nilpotent(const FiniteGroup& g);

/// Pairs (r1, r2) with 3 <= r1 <= r2 <= cap in the set.
std::vector<std::pair<std::uint32_t, std::uint32_t>> membership_grid(const SizeConstraintSet& s, std::uint32_t cap);

}  // namespace ram
