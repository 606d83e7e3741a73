#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "ram/element_set.hpp"
#include "ram/error.hpp"

namespace ram {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// Largest group the engine will materialize. Multiplication tables are dense,
/// so this bounds memory at a few tens of megabytes.
inline constexpr std::size_t kMaxOrder = 4096;

struct AbelianRealization {
  std::vector<std::uint32_t> orders;  // cyclic factor orders, each >= 2
};

struct HeisenbergRealization {
  std::uint32_t p;  // odd prime
};

struct CayleyRealization {
  std::vector<std::string> names;  // empty, or one name per element
};

struct ProductRealization {
  GroupPtr left;
  GroupPtr right;
};

struct QuotientRealization {
  GroupPtr parent;
  ElementSet kernel;
  std::vector<Element> representatives;  // least parent index in each coset
};

using Realization = std::variant<AbelianRealization, HeisenbergRealization, CayleyRealization,
                                 ProductRealization, QuotientRealization>;

/// An enumerated finite group with a dense multiplication table.
///
/// Elements are indices 0..order()-1 and index 0 is always the identity. The
/// enumeration is a pure function of the realization, so building the same
/// group twice gives identical indexing. Instances are immutable.
class FiniteGroup {
 public:
  std::size_t order() const { return order_; }

  // Unchecked hot-path arithmetic.
  Element mul(Element a, Element b) const { return table_[static_cast<std::size_t>(a) * order_ + b]; }
  Element inv(Element a) const { return inverse_[a]; }
  std::uint32_t order_of(Element a) const { return element_orders_[a]; }

  // Range-checked variants; throw Error(IndexOutOfRange).
  Element multiply(Element a, Element b) const;
  Element inverse(Element a) const;
  std::uint32_t element_order(Element a) const;

  Element power(Element a, long long k) const;
  /// g^-1 a g
  Element conjugate(Element a, Element g) const { return mul(mul(inv(g), a), g); }
  /// a^-1 b^-1 a b
  Element commutator(Element a, Element b) const { return mul(mul(inv(a), inv(b)), mul(a, b)); }

  bool is_abelian() const { return abelian_; }
  bool contains(Element a) const { return a < order_; }

  const Realization& realization() const { return realization_; }
  template <typename R>
  const R* as() const { return std::get_if<R>(&realization_); }

  // Structured coordinates for the formula-defined realizations.
  std::vector<std::uint32_t> abelian_coords(Element g) const;
  Element from_abelian_coords(std::span<const std::uint32_t> coords) const;
  Element product_pair(Element left, Element right) const;
  Element product_left(Element g) const;
  Element product_right(Element g) const;

  ElementSet empty_set() const { return ElementSet(order_); }
  ElementSet all_elements() const { return ElementSet::full(order_); }
  ElementSet trivial_subgroup() const { return ElementSet::singleton(order_, kIdentity); }

  /// Builds a group from a multiplication table that is already known to be a
  /// group with identity at index 0. Used for internally derived groups.
  static GroupPtr from_trusted_table(Realization realization, std::size_t order,
                                     std::vector<std::uint16_t> table);

 private:
  FiniteGroup(Realization realization, std::size_t order, std::vector<std::uint16_t> table);

  void check(Element a) const;

  Realization realization_;
  std::size_t order_;
  std::vector<std::uint16_t> table_;
  std::vector<std::uint16_t> inverse_;
  std::vector<std::uint32_t> element_orders_;
  std::vector<std::uint32_t> strides_;  // abelian mixed radix, last coordinate fastest
  bool abelian_ = false;
};

// Construction. Index order: abelian and product groups are mixed radix with
// the last coordinate varying fastest; Heisenberg (a,b,c) has index a*p^2+b*p+c.
GroupPtr make_abelian(std::vector<std::uint32_t> orders);
GroupPtr make_cyclic(std::uint32_t n);
GroupPtr make_heisenberg(std::uint32_t p);
/// Validates closure, identity at 0, Latin rows/columns and associativity.
GroupPtr make_cayley(const std::vector<std::vector<std::uint32_t>>& table,
                     std::vector<std::string> names = {});
/// Loads {"order": n, "table": [[...]], "names": [...]} from disk.
GroupPtr load_cayley_file(const std::filesystem::path& path);
GroupPtr direct_product(const GroupPtr& left, const GroupPtr& right);

/// Closure of `gens` under multiplication; always contains the identity.
ElementSet generated_subgroup(const FiniteGroup& g, std::span<const Element> gens);
ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& gens);
bool generates(const FiniteGroup& g, std::span<const Element> gens);

bool is_subgroup(const FiniteGroup& g, const ElementSet& h);
/// Throws NotASubgroup when `h` is not closed.
bool is_normal(const FiniteGroup& g, const ElementSet& h);
ElementSet center(const FiniteGroup& g);
/// Z_0 = 1 < Z_1 = Z(G) < ... up to the first repeat (which is not duplicated).
std::vector<ElementSet> upper_central_series(const FiniteGroup& g);

/// A quotient G/N together with the canonical projection and section.
struct QuotientMap {
  GroupPtr parent;
  GroupPtr group;
  ElementSet kernel;
  std::vector<Element> projection;  // parent index -> coset index
  std::vector<Element> section;     // coset index -> least parent index in the coset

  Element project(Element g) const { return projection.at(g); }
  Element lift(Element q) const { return section.at(q); }
};

/// Throws NotNormal (or NotASubgroup) unless `n` is a normal subgroup.
QuotientMap quotient(const GroupPtr& g, const ElementSet& n);

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b);
std::vector<std::uint32_t> prime_factors(std::uint64_t n);  // distinct, ascending
bool is_prime(std::uint64_t n);

}  // namespace ram
