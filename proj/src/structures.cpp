#include "ram/structures.hpp"

#include <algorithm>

namespace ram {

std::string_view to_string(SphericalFailure f) {
  switch (f) {
    case SphericalFailure::None: return "None";
    case SphericalFailure::Empty: return "Empty";
    case SphericalFailure::TrivialEntry: return "TrivialEntry";
    case SphericalFailure::NotGenerating: return "NotGenerating";
    case SphericalFailure::ProductNotIdentity: return "ProductNotIdentity";
  }
  return "Unknown";
}

std::string_view to_string(RamFailure f) {
  switch (f) {
    case RamFailure::None: return "None";
    case RamFailure::TupleTooShort: return "TupleTooShort";
    case RamFailure::TrivialEntry: return "TrivialEntry";
    case RamFailure::NotGenerating: return "NotGenerating";
    case RamFailure::ProductNotIdentity: return "ProductNotIdentity";
    case RamFailure::NotDisjoint: return "NotDisjoint";
  }
  return "Unknown";
}

Element tuple_product(const FiniteGroup& g, std::span<const Element> t) {
  Element acc = kIdentity;
  for (auto x : t) acc = g.multiply(acc, x);
  return acc;
}

SphericalVerdict is_spherical_system(const FiniteGroup& g, std::span<const Element> t) {
  if (t.empty()) return {SphericalFailure::Empty, std::nullopt};
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!g.contains(t[i])) throw Error(ErrorKind::IndexOutOfRange, "tuple entry out of range");
    if (t[i] == kIdentity) return {SphericalFailure::TrivialEntry, i};
  }
  if (!generates(g, t)) return {SphericalFailure::NotGenerating, std::nullopt};
  if (tuple_product(g, t) != kIdentity) return {SphericalFailure::ProductNotIdentity, std::nullopt};
  return {};
}

ElementSet conjugate_cyclic_closure(const FiniteGroup& g, Element a) {
  ElementSet out = g.trivial_subgroup();
  ElementSet conjugates = g.empty_set();
  for (Element x = 0; x < g.order(); ++x) conjugates.insert(g.conjugate(a, x));
  // <a^x> = <a>^x, so adding the powers of every conjugate covers all conjugate subgroups.
  conjugates.for_each([&](Element c) {
    if (out.contains(c)) return;
    for (Element y = c; y != kIdentity; y = g.mul(y, c)) out.insert(y);
  });
  return out;
}

ElementSet sigma(const FiniteGroup& g, std::span<const Element> t) {
  ElementSet out = g.trivial_subgroup();
  for (auto a : t) {
    if (!g.contains(a)) throw Error(ErrorKind::IndexOutOfRange, "tuple entry out of range");
    // Sigma is closed under powers and conjugation, so a covered entry adds nothing.
    if (out.contains(a)) continue;
    out |= conjugate_cyclic_closure(g, a);
  }
  return out;
}

DisjointVerdict are_disjoint(const FiniteGroup& g, std::span<const Element> t1, std::span<const Element> t2) {
  auto common = sigma(g, t1) & sigma(g, t2);
  common.erase(kIdentity);
  if (common.empty()) return {};
  return {false, common.elements().front()};
}

RamStructure RamStructure::swapped() const { return RamStructure(group_, t2_, t1_, sigma2_, sigma1_); }

RamCheck check_ramification(const GroupPtr& gp, GenTuple t1, GenTuple t2) {
  const FiniteGroup& g = *gp;
  RamCheck r;
  auto fail = [&r](RamFailure why, int which) {
    r.reason = why;
    r.tuple = which;
    return r;
  };
  for (auto x : t1) if (!g.contains(x)) throw Error(ErrorKind::IndexOutOfRange, "T1 entry out of range");
  for (auto x : t2) if (!g.contains(x)) throw Error(ErrorKind::IndexOutOfRange, "T2 entry out of range");
  if (t1.size() < 3) return fail(RamFailure::TupleTooShort, 1);
  if (t2.size() < 3) return fail(RamFailure::TupleTooShort, 2);
  if (std::find(t1.begin(), t1.end(), kIdentity) != t1.end()) return fail(RamFailure::TrivialEntry, 1);
  if (std::find(t2.begin(), t2.end(), kIdentity) != t2.end()) return fail(RamFailure::TrivialEntry, 2);
  if (!generates(g, t1)) return fail(RamFailure::NotGenerating, 1);
  if (!generates(g, t2)) return fail(RamFailure::NotGenerating, 2);
  if (tuple_product(g, t1) != kIdentity) return fail(RamFailure::ProductNotIdentity, 1);
  if (tuple_product(g, t2) != kIdentity) return fail(RamFailure::ProductNotIdentity, 2);
  auto s1 = sigma(g, t1);
  auto s2 = sigma(g, t2);
  auto common = s1 & s2;
  common.erase(kIdentity);
  if (!common.empty()) {
    r.shared = common.elements().front();
    return fail(RamFailure::NotDisjoint, 0);
  }
  r.structure = RamStructure(gp, std::move(t1), std::move(t2), std::move(s1), std::move(s2));
  return r;
}

RamStructure require_ramification(const GroupPtr& g, GenTuple t1, GenTuple t2, std::string_view what) {
  auto r = check_ramification(g, std::move(t1), std::move(t2));
  if (!r)
    throw Error(ErrorKind::InternalContradiction,
                std::string(what) + " produced an invalid structure (" + std::string(to_string(r.reason)) + ")");
  return std::move(*r.structure);
}

}  // namespace ram
