#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "ram/group.hpp"

namespace ram {

/// The prime p when |G| is a power of p (|G| > 1), otherwise nullopt.
std::optional<std::uint32_t> pgroup_prime(const FiniteGroup& g);
/// Throws NotAPGroup unless G is a nontrivial p-group.
std::uint32_t require_pgroup(const FiniteGroup& g);

/// Maximum element order.
std::uint32_t exponent(const FiniteGroup& g);
/// e with exp G = p^e, for a p-group.
std::uint32_t exponent_log(const FiniteGroup& g);

std::uint64_t ipow(std::uint64_t base, std::uint32_t e);

/// Omega_i(G), the subgroup generated by elements with g^{p^i} = 1.
ElementSet omega(const FiniteGroup& g, std::uint32_t i);
/// The raw set {g : g^{p^i} = 1}, not closed in general.
ElementSet omega_torsion(const FiniteGroup& g, std::uint32_t i);
/// G^{p^i}, the subgroup generated by p^i-th powers.
ElementSet agemo(const FiniteGroup& g, std::uint32_t i);
/// The literal set {g^{p^i}}.
ElementSet power_image(const FiniteGroup& g, std::uint32_t i);

ElementSet derived_subgroup(const FiniteGroup& g);
/// Phi(G) = G' G^p for a p-group.
ElementSet frattini(const FiniteGroup& g);
/// d(G); for nilpotent non-p-groups the max over Sylow factors. Throws NotNilpotent.
std::uint32_t min_generators(const FiniteGroup& g);

struct SemiAbelianVerdict {
  bool holds = true;
  /// A pair (x, y) breaking x^{p^i} = y^{p^i} <=> (x y^-1)^{p^i} = 1.
  std::optional<std::pair<Element, Element>> witness;
};

/// Full pair scan of the semi-p^i-abelian condition.
SemiAbelianVerdict is_semi_abelian(const FiniteGroup& g, std::uint32_t i);

struct SylowFactor {
  std::uint32_t p = 0;
  ElementSet members;              // as a subset of the parent
  GroupPtr group;                  // standalone copy, parent's element order
  std::vector<Element> embedding;  // factor index -> parent index
  std::vector<Element> to_factor;  // parent index -> factor index, or ~0 when outside
};

/// One factor per prime dividing |G|, ascending. Throws NotNilpotent when
/// some set of p-power-order elements is not a subgroup of full p-part order.
std::vector<SylowFactor> sylow_decomposition(const FiniteGroup& g);
bool is_nilpotent(const FiniteGroup& g);

struct PGroupClassification {
  bool abelian = false;
  bool powerful = false;
  bool p_central = false;
  bool semi_abelian_at_e_minus_1 = false;
};

PGroupClassification classify_pgroup(const FiniteGroup& g);

/// True iff G is elementary abelian (abelian p-group of exponent p).
bool is_elementary_abelian(const FiniteGroup& g);

struct PGroupProfile {
  std::uint32_t p = 0;
  std::uint32_t e = 0;
  std::uint32_t d = 0;
  std::size_t order = 0;
  std::vector<std::size_t> power_image_sizes;  // i = 0..e
  std::vector<std::size_t> omega_indices;      // |G : Omega_i|, i = 1..e
  std::vector<bool> semi_abelian;              // i = 0..e; i = 0 is the trivial level
  PGroupClassification classification;
};

PGroupProfile pgroup_profile(const FiniteGroup& g);

}  // namespace ram
