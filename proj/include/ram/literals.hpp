#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ram/group.hpp"
#include "ram/structures.hpp"

namespace ram {

/// Parsed group description.
///   C<n>xC<m>x...  or abelian(n, m, ...)   abelian group
///   heis(p)                                 Heisenberg group mod p
///   cayley:<path>                           Cayley table file
///   prod(<spec>, <spec>)                    direct product
struct GroupSpec {
  enum class Kind { Abelian, Heis, Cayley, Prod };
  Kind kind = Kind::Abelian;
  std::vector<std::uint32_t> orders;
  std::uint32_t p = 0;
  std::string path;
  std::shared_ptr<const GroupSpec> left, right;
};

/// Whitespace-insensitive, keywords case-insensitive. Throws ParseError
/// (with position), InvalidOrder or InvalidPrime.
GroupSpec parse_group_spec(std::string_view text);
/// Canonical text; parse_group_spec(render_spec(s)) renders identically.
std::string render_spec(const GroupSpec& s);

/// Directory holding the bundled data (cayley/*.json). RAM_DATA_DIR in the
/// environment overrides the build-time default.
std::filesystem::path data_dir();
/// Materializes the group. Cayley paths that do not exist are also looked up
/// as <data_dir>/cayley/<path>[.json].
GroupPtr build_group(const GroupSpec& s);
GroupPtr build_group(std::string_view text);

/// Element literals. Every group accepts products and powers of atoms,
/// `a*b`, `a^-1`, `(a*b)^2`, and `1` for the identity. Atoms:
///   abelian   x<i> (i-th cyclic generator, 1-based) or (e1,...,ek)
///   heis      (a,b,c)
///   cayley    #<index> or a declared element name
///   product   (<left>|<right>)
///   quotient  [<parent literal>]
/// Throws ParseError or OutOfRange.
Element parse_element(const FiniteGroup& g, std::string_view text);
/// Abelian groups render as generator words, others as atoms.
std::string render_element(const FiniteGroup& g, Element x);

/// "[el; el; ...]"; the empty tuple is a ParseError.
GenTuple parse_tuple(const FiniteGroup& g, std::string_view text);
std::string render_tuple(const FiniteGroup& g, std::span<const Element> t);

}  // namespace ram
