#pragma once

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "ram/group.hpp"
#include "ram/literals.hpp"
#include "ram/oracle.hpp"
#include "ram/structures.hpp"

namespace ram::test {

inline GenTuple tup(const GroupPtr& g, const std::string& text) { return parse_tuple(*g, text); }
inline Element el(const GroupPtr& g, const std::string& text) { return parse_element(*g, text); }

/// Kind of the ram::Error thrown by f; InternalContradiction stands in for "nothing thrown".
inline ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  return ErrorKind::InternalContradiction;
}

inline GroupPtr bundled(const std::string& name) { return build_group("cayley:" + name); }

/// Every group the tests sweep over: formula realizations, Cayley files,
/// products and a quotient.
inline std::vector<std::pair<std::string, GroupPtr>> sample_groups() {
  std::vector<std::pair<std::string, GroupPtr>> out;
  for (const char* s : {"C2", "C6", "C2xC2", "C2xC4", "C3xC3", "C2xC2xC2", "heis(3)", "cayley:d4", "cayley:q8",
                        "cayley:s3", "prod(C3,cayley:s3)", "prod(C2,C2)"})
    out.emplace_back(s, build_group(s));
  auto h = build_group("heis(3)");
  out.emplace_back("heis(3)/Z", quotient(h, center(*h)).group);
  return out;
}

/// Literal existence check for a structure of size (r1, r2): every spherical
/// T1 of length r1, then all T2 prefixes over the elements whose cyclic
/// subgroup meets Sigma(T1) trivially. Independent of the class search.
inline bool naive_structure_exists(const GroupPtr& gp, std::uint32_t r1, std::uint32_t r2) {
  const FiniteGroup& g = *gp;
  bool found = false;
  enumerate_spherical(g, r1, [&](std::span<const Element> t1) {
    const auto s1 = sigma(g, t1);
    std::vector<Element> alphabet;
    for (Element b = 1; b < g.order(); ++b) {
      bool ok = true;
      for (Element y = b; y != kIdentity; y = g.mul(y, b))
        if (s1.contains(y)) ok = false;
      if (ok) alphabet.push_back(b);
    }
    GenTuple t2(r2);
    std::function<bool(std::size_t, Element)> rec = [&](std::size_t pos, Element prod) {
      if (pos + 1 == r2) {
        const Element last = g.inv(prod);
        if (std::find(alphabet.begin(), alphabet.end(), last) == alphabet.end()) return false;
        t2[pos] = last;
        return generates(g, t2) && are_disjoint(g, t1, t2).disjoint;
      }
      for (auto a : alphabet) {
        t2[pos] = a;
        if (rec(pos + 1, g.mul(prod, a))) return true;
      }
      return false;
    };
    found = rec(0, kIdentity);
    return !found;
  });
  return found;
}

}  // namespace ram::test
