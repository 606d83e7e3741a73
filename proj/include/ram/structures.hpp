#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ram/group.hpp"

namespace ram {

/// An ordered tuple of group elements; repetition allowed.
using GenTuple = std::vector<Element>;

enum class SphericalFailure {
  None,
  Empty,
  TrivialEntry,
  NotGenerating,
  ProductNotIdentity,
};

std::string_view to_string(SphericalFailure f);

struct SphericalVerdict {
  SphericalFailure reason = SphericalFailure::None;
  std::optional<std::size_t> position;  // offending entry for TrivialEntry

  bool ok() const { return reason == SphericalFailure::None; }
  explicit operator bool() const { return ok(); }
};

/// Non-trivial entries that generate G and multiply (in order) to 1.
SphericalVerdict is_spherical_system(const FiniteGroup& g, std::span<const Element> t);

/// Product of the entries, left to right.
Element tuple_product(const FiniteGroup& g, std::span<const Element> t);

/// Union of all conjugates of the cyclic subgroups <t_i>. Contains 1.
ElementSet sigma(const FiniteGroup& g, std::span<const Element> t);

/// Union of the conjugates of <a>.
ElementSet conjugate_cyclic_closure(const FiniteGroup& g, Element a);

struct DisjointVerdict {
  bool disjoint = true;
  std::optional<Element> shared;  // a non-trivial element of Sigma(T1) and Sigma(T2)
  explicit operator bool() const { return disjoint; }
};

DisjointVerdict are_disjoint(const FiniteGroup& g, std::span<const Element> t1, std::span<const Element> t2);

struct RamCheck;

/// A validated pair of disjoint spherical systems. Only check_ramification
/// creates these, so holding one is proof that the pair was checked.
class RamStructure {
 public:
  const GroupPtr& group() const { return group_; }
  const GenTuple& t1() const { return t1_; }
  const GenTuple& t2() const { return t2_; }
  const ElementSet& sigma1() const { return sigma1_; }
  const ElementSet& sigma2() const { return sigma2_; }
  std::pair<std::size_t, std::size_t> size() const { return {t1_.size(), t2_.size()}; }

  /// The same structure with T1 and T2 exchanged.
  RamStructure swapped() const;

 private:
  friend struct RamCheck;
  friend RamCheck check_ramification(const GroupPtr&, GenTuple, GenTuple);
  RamStructure(GroupPtr g, GenTuple t1, GenTuple t2, ElementSet s1, ElementSet s2)
      : group_(std::move(g)), t1_(std::move(t1)), t2_(std::move(t2)), sigma1_(std::move(s1)), sigma2_(std::move(s2)) {}

  GroupPtr group_;
  GenTuple t1_, t2_;
  ElementSet sigma1_, sigma2_;
};

enum class RamFailure {
  None,
  TupleTooShort,
  TrivialEntry,
  NotGenerating,
  ProductNotIdentity,
  NotDisjoint,
};

std::string_view to_string(RamFailure f);

struct RamCheck {
  std::optional<RamStructure> structure;
  RamFailure reason = RamFailure::None;
  int tuple = 0;                 // 1 or 2 for per-tuple failures
  std::optional<Element> shared;  // for NotDisjoint

  bool ok() const { return structure.has_value(); }
  explicit operator bool() const { return ok(); }
};

/// Validates (T1, T2). Failures are reported in a fixed order: short tuple,
/// trivial entry, generation, product, disjointness; T1 before T2 at each step.
RamCheck check_ramification(const GroupPtr& g, GenTuple t1, GenTuple t2);

/// check_ramification that throws InternalContradiction on failure; for
/// constructors whose output is guaranteed valid when the code is correct.
RamStructure require_ramification(const GroupPtr& g, GenTuple t1, GenTuple t2, std::string_view what);

}  // namespace ram
