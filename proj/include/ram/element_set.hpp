#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <boost/iterator/function_output_iterator.hpp>

namespace ram {

// Elements are dense indices into a group's enumeration; index 0 is the identity.
using Element = std::uint32_t;

inline constexpr Element kIdentity = 0;

/// Membership table over the elements of one group.
///
/// Used for subgroups, Sigma sets and raw torsion sets alike; subgroup
/// semantics are the responsibility of whatever produced the set.
class ElementSet {
 public:
  ElementSet() = default;
  explicit ElementSet(std::size_t universe) : bits_(universe) {}

  static ElementSet full(std::size_t universe) {
    ElementSet s(universe);
    s.bits_.set();
    return s;
  }

  static ElementSet singleton(std::size_t universe, Element e) {
    ElementSet s(universe);
    s.insert(e);
    return s;
  }

  std::size_t universe() const { return bits_.size(); }
  std::size_t size() const { return bits_.count(); }
  bool empty() const { return bits_.none(); }

  bool contains(Element e) const { return e < bits_.size() && bits_.test(e); }
  bool contains_identity() const { return !bits_.empty() && bits_.test(kIdentity); }

  void insert(Element e) { bits_.set(e); }
  void erase(Element e) { bits_.reset(e); }

  bool is_subset_of(const ElementSet& other) const { return bits_.is_subset_of(other.bits_); }
  bool intersects(const ElementSet& other) const { return bits_.intersects(other.bits_); }

  ElementSet& operator|=(const ElementSet& o) { bits_ |= o.bits_; return *this; }
  ElementSet& operator&=(const ElementSet& o) { bits_ &= o.bits_; return *this; }
  ElementSet& operator-=(const ElementSet& o) { bits_ -= o.bits_; return *this; }

  friend ElementSet operator|(ElementSet a, const ElementSet& b) { return a |= b; }
  friend ElementSet operator&(ElementSet a, const ElementSet& b) { return a &= b; }
  friend ElementSet operator-(ElementSet a, const ElementSet& b) { return a -= b; }
  friend bool operator==(const ElementSet& a, const ElementSet& b) { return a.bits_ == b.bits_; }

  /// Members in increasing index order.
  std::vector<Element> elements() const {
    std::vector<Element> out;
    out.reserve(size());
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
      out.push_back(static_cast<Element>(i));
    return out;
  }

  template <typename Fn>
  void for_each(Fn&& fn) const {
    for (auto i = bits_.find_first(); i != Bits::npos; i = bits_.find_next(i))
      fn(static_cast<Element>(i));
  }

  std::size_t hash() const {
    std::size_t h = bits_.size();
    boost::to_block_range(bits_, boost::make_function_output_iterator([&h](Bits::block_type b) {
                            h ^= std::hash<Bits::block_type>{}(b) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
                          }));
    return h;
  }

 private:
  using Bits = boost::dynamic_bitset<std::uint64_t>;
  Bits bits_;
};

struct ElementSetHash {
  std::size_t operator()(const ElementSet& s) const { return s.hash(); }
};

}  // namespace ram
