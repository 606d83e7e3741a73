#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ram/group.hpp"
#include "ram/invariants.hpp"
#include "ram/oracle.hpp"
#include "ram/structures.hpp"

namespace ram {

/// A normal subgroup N of G together with G/N, its projection and section.
struct LiftContext {
  GroupPtr parent;
  ElementSet kernel;
  QuotientMap map;

  const GroupPtr& quotient() const { return map.group; }
};

LiftContext make_lift_context(const GroupPtr& parent, const ElementSet& kernel);

/// Lifts a tuple of G/N to G entrywise modulo N so that the lift generates G.
/// In spherical mode the lift also has product 1 and no trivial entry; the
/// entries are found by depth-first search over kernel cosets.
/// Throws NoLiftExists or PreconditionViolated.
GenTuple lift_tuple(const LiftContext& ctx, std::span<const Element> u, bool spherical, bool forbid_trivial = true);

/// (x1^2, x2, ..., xr, x1^-1) for odd p and (T, x1, x1) for p = 2. The group
/// must be elementary abelian of exponent p.
GenTuple extend_size(const FiniteGroup& g, std::span<const Element> t, std::uint32_t p);

/// Moves a structure on C_p^d (abelian realization) to C_p^{d+1} by multiplying
/// two redundant entries of each tuple by y and y^-1, y the new generator.
RamStructure extend_rank(const RamStructure& s);

/// A structure of size (r1, r2) on C_p^d = make_abelian({p, ..., p}).
/// Throws InadmissibleSize.
RamStructure elementary_abelian_structure(std::uint32_t p, std::uint32_t d, std::uint32_t r1, std::uint32_t r2);

/// Structure on a group of exponent p, lifted from G/Phi(G).
/// Throws NotExponentP or InadmissibleSize.
RamStructure exponent_p_structure(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2);

/// The quotient G -> G/Omega_{e-1}(G), exp G = p^e.
LiftContext omega_context(const GroupPtr& g);

/// Image of a structure in G/Omega_{e-1}(G) with trivial images dropped.
/// Returns the input when e = 1. Throws HypothesisViolated.
RamStructure project_mod_omega(const RamStructure& s);

/// Lifts a structure on ctx.quotient() (ctx from omega_context) to G.
/// Throws HypothesisViolated, PreconditionViolated or InternalContradiction.
RamStructure lift_structure_mod_omega(const LiftContext& ctx, const RamStructure& u);

/// Pads a (3,3) structure to size (r1, r2) with (x, y, y^-1, x^-1) and
/// (x, x^-1) blocks.
RamStructure pad_from_beauville(const RamStructure& s, std::uint32_t r1, std::uint32_t r2);

/// Zips structures on coprime G and H into one on direct_product(G, H), the
/// shorter tuples padded with identities at the end. Throws NotCoprime.
RamStructure product_combine(const RamStructure& sg, const RamStructure& sh);

enum class ProductSide { Left, Right };

/// Components of a structure on a coprime direct_product(G, H) realization,
/// identities deleted. With a target size the odd-order factor is re-padded
/// to exactly that size. Throws NotCoprime, PaddingImpossible,
/// PreconditionViolated.
RamStructure product_project(const RamStructure& s, ProductSide side,
                             std::optional<std::pair<std::uint32_t, std::uint32_t>> target = std::nullopt);

/// Same as above for a Sylow factor of a nilpotent group, projecting with the
/// power map x -> x^k, k = 1 mod |P| and k = 0 mod |G:P|.
RamStructure product_project(const RamStructure& s, const SylowFactor& factor,
                             std::optional<std::pair<std::uint32_t, std::uint32_t>> target = std::nullopt);

/// Both sizes odd on a semi-2^{e-1}-abelian 2-group with |X| = 8, e >= 2 and
/// d >= 4. Throws HypothesisViolated, InadmissibleSize or DegenerateRank (d = 3).
RamStructure semi_abelian_2group_odd_odd(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2);

enum class ConstructMethod { Auto, Theorem, Search };
enum class ConstructStatus { Constructed, Inadmissible, Unknown };

std::string_view to_string(ConstructMethod m);
std::string_view to_string(ConstructStatus s);

struct ConstructOutcome {
  ConstructStatus status = ConstructStatus::Unknown;
  std::optional<RamStructure> structure;
  std::string method;              // "theorem:<route>" or "search"
  std::vector<std::string> notes;  // dispatch trail, reasons
  std::optional<SearchResult> search;
};

/// Dispatches to the theorem constructions, falling back to the oracle when
/// no theorem applies (unless method is Theorem). Never throws for
/// mathematical reasons; the result is tri-state.
ConstructOutcome construct_any(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2,
                               ConstructMethod method = ConstructMethod::Auto, const SearchBudget& budget = {});

}  // namespace ram
