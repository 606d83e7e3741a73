#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ram/group.hpp"
#include "ram/structures.hpp"

namespace ram {

struct SearchBudget {
  std::uint64_t max_candidates = 200'000'000;
  std::uint64_t max_millis = 30ull * 60 * 1000;
  std::uint32_t cap = 16;  // longest tuple the search will consider
};

enum class SearchStatus { Found, NoneExists, BudgetExhausted };

std::string_view to_string(SearchStatus s);

struct SearchResult {
  SearchStatus status = SearchStatus::NoneExists;
  std::optional<RamStructure> structure;  // first witness in search order
  std::vector<RamStructure> witnesses;    // up to the requested count, first one included
  std::uint64_t candidates_examined = 0;
  bool exhaustive = false;  // true iff the candidate space was fully covered
};

struct SizeSet {
  std::set<std::pair<std::uint32_t, std::uint32_t>> pairs;  // r1 <= r2
  bool exhaustive = false;
  std::uint64_t candidates_examined = 0;

  bool contains(std::uint32_t r1, std::uint32_t r2) const {
    return pairs.count({std::min(r1, r2), std::max(r1, r2)}) > 0;
  }
};

/// Decides existence of spherical systems whose entries come from a given
/// alphabet. Generation is tracked in G/Phi(G) when G is nilpotent (a set
/// generates G iff it generates modulo the Frattini subgroup), otherwise in G.
/// Results are memoized per alphabet; not thread safe.
class SphericalSolver {
 public:
  explicit SphericalSolver(GroupPtr g);

  /// Bit r is set iff some spherical system of length r (2 <= r <= max_len)
  /// has every entry in `alphabet`.
  std::uint64_t lengths(const ElementSet& alphabet, std::uint32_t max_len);
  /// A spherical system of exactly `len` entries from `alphabet`, if any.
  std::optional<GenTuple> witness(const ElementSet& alphabet, std::uint32_t len);

  /// Whether the set generates G.
  bool generates(const ElementSet& s);

  const FiniteGroup& group() const { return *group_; }

 private:
  std::uint32_t subgroup_id(ElementSet s);
  std::uint32_t join(std::uint32_t sub, Element qa);
  std::uint64_t run(const ElementSet& alphabet, std::uint32_t max_len, std::uint32_t want_len,
                    GenTuple* witness_out);

  GroupPtr group_;
  std::size_t n_ = 0;
  std::size_t nq_ = 0;
  std::vector<Element> proj_;  // G -> G/Phi
  GroupPtr quotient_;
  std::vector<ElementSet> subgroups_;
  std::unordered_map<ElementSet, std::uint32_t, ElementSetHash> ids_;
  std::vector<std::int32_t> join_;  // sub * nq + q -> sub
  std::uint32_t top_ = 0;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
  std::unordered_map<ElementSet, std::pair<std::uint32_t, std::uint64_t>, ElementSetHash> memo_;
};

/// A conjugacy class of non-trivial cyclic subgroups.
struct CyclicClass {
  Element representative;  // least index among all generators in the class
  ElementSet generators;   // every element generating a subgroup in the class
  ElementSet sigma;        // union of the subgroups in the class (with 1)
  ElementSet blocks;       // elements b != 1 with <b> meeting sigma non-trivially
};

std::vector<CyclicClass> cyclic_classes(const FiniteGroup& g);

/// Visits every spherical system of length r in lexicographic order of the
/// first r-1 entries (the last entry is forced). The visitor returns false to
/// stop early. Returns the number of systems visited.
std::uint64_t enumerate_spherical(const FiniteGroup& g, std::uint32_t r,
                                  const std::function<bool(std::span<const Element>)>& visit);

/// Exhaustive existence search for a ramification structure of size (r1, r2).
/// With max_witnesses > 1 the search keeps going and collects distinct witnesses.
SearchResult find_structure(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const SearchBudget& budget,
                            std::size_t max_witnesses = 1);

/// All sizes (r1, r2) with 3 <= r1 <= r2 <= cap that admit a structure.
SizeSet size_set_up_to(const GroupPtr& g, std::uint32_t cap, const SearchBudget& budget);

}  // namespace ram
