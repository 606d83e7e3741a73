#include "ram/oracle.hpp"

#include <algorithm>
#include <bit>
#include <numeric>

#include "ram/invariants.hpp"

namespace ram {

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "Found";
    case SearchStatus::NoneExists: return "NoneExists";
    case SearchStatus::BudgetExhausted: return "BudgetExhausted";
  }
  return "Unknown";
}

// ---------------------------------------------------------------------------
// SphericalSolver

namespace {

ElementSet nilpotent_frattini(const FiniteGroup& g) {
  if (g.order() == 1) return g.trivial_subgroup();
  std::vector<SylowFactor> factors;
  try {
    factors = sylow_decomposition(g);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::NotNilpotent) return g.trivial_subgroup();
    throw;
  }
  ElementSet gens = g.empty_set();
  for (const auto& f : factors) frattini(*f.group).for_each([&](Element x) { gens.insert(f.embedding[x]); });
  return generated_subgroup(g, gens);
}

}  // namespace

SphericalSolver::SphericalSolver(GroupPtr g) : group_(std::move(g)), n_(group_->order()) {
  const auto phi = nilpotent_frattini(*group_);
  if (phi.size() > 1) {
    auto q = quotient(group_, phi);
    proj_ = std::move(q.projection);
    quotient_ = q.group;
  } else {
    proj_.resize(n_);
    for (Element x = 0; x < n_; ++x) proj_[x] = x;
    quotient_ = group_;
  }
  nq_ = quotient_->order();
  subgroup_id(quotient_->trivial_subgroup());
  top_ = subgroup_id(quotient_->all_elements());
}

std::uint32_t SphericalSolver::subgroup_id(ElementSet s) {
  auto it = ids_.find(s);
  if (it != ids_.end()) return it->second;
  const auto id = static_cast<std::uint32_t>(subgroups_.size());
  ids_.emplace(s, id);
  subgroups_.push_back(std::move(s));
  join_.resize(subgroups_.size() * nq_, -1);
  stamp_.resize(subgroups_.size() * n_, 0);
  return id;
}

std::uint32_t SphericalSolver::join(std::uint32_t sub, Element qa) {
  const auto idx = static_cast<std::size_t>(sub) * nq_ + qa;
  if (join_[idx] >= 0) return static_cast<std::uint32_t>(join_[idx]);
  std::uint32_t result = sub;
  if (!subgroups_[sub].contains(qa)) {
    // The subgroup is closed, so closing under right multiplication by qa
    // from its elements yields <H, qa>.
    ElementSet h = subgroups_[sub];
    std::vector<Element> frontier = h.elements();
    const auto gens_of_h = frontier;
    while (!frontier.empty()) {
      std::vector<Element> next;
      for (auto x : frontier) {
        auto y = quotient_->mul(x, qa);
        if (!h.contains(y)) { h.insert(y); next.push_back(y); }
        for (auto s : gens_of_h) {
          auto z = quotient_->mul(x, s);
          if (!h.contains(z)) { h.insert(z); next.push_back(z); }
        }
      }
      frontier = std::move(next);
    }
    result = subgroup_id(std::move(h));
  }
  join_[static_cast<std::size_t>(sub) * nq_ + qa] = static_cast<std::int32_t>(result);
  return result;
}

bool SphericalSolver::generates(const ElementSet& s) {
  std::uint32_t sub = 0;
  bool done = false;
  s.for_each([&](Element x) {
    if (done) return;
    sub = join(sub, proj_[x]);
    done = sub == top_;
  });
  return sub == top_;
}

std::uint64_t SphericalSolver::run(const ElementSet& alphabet, std::uint32_t max_len, std::uint32_t want_len,
                                   GenTuple* witness_out) {
  struct State {
    std::uint32_t sub;
    Element prod;
    std::int32_t parent;  // index in the previous layer
    Element last;
  };
  std::vector<Element> letters;
  alphabet.for_each([&](Element a) { if (a != kIdentity) letters.push_back(a); });
  std::uint64_t mask = 0;
  if (letters.empty() || max_len < 2) return 0;

  std::vector<std::vector<State>> layers;
  layers.push_back({State{0, kIdentity, -1, kIdentity}});
  for (std::uint32_t len = 0; len + 1 <= max_len; ++len) {
    const auto& cur = layers.back();
    if (len >= 1) {
      // Close each prefix with its forced last entry.
      for (std::size_t i = 0; i < cur.size(); ++i) {
        const auto& s = cur[i];
        const Element last = group_->inv(s.prod);
        if (last == kIdentity || !alphabet.contains(last)) continue;
        if (join(s.sub, proj_[last]) != top_) continue;
        mask |= std::uint64_t{1} << (len + 1);
        if (witness_out && len + 1 == want_len) {
          GenTuple t{last};
          std::int32_t idx = static_cast<std::int32_t>(i);
          for (std::size_t layer = layers.size() - 1; layer > 0; --layer) {
            const auto& st = layers[layer][static_cast<std::size_t>(idx)];
            t.push_back(st.last);
            idx = st.parent;
          }
          std::reverse(t.begin(), t.end());
          *witness_out = std::move(t);
          return mask;
        }
        if (!witness_out) break;
      }
    }
    if (len + 2 > max_len) break;
    if (++epoch_ == 0) {
      std::fill(stamp_.begin(), stamp_.end(), 0);
      epoch_ = 1;
    }
    std::vector<State> next;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      const auto s = cur[i];
      for (auto a : letters) {
        const auto sub = join(s.sub, proj_[a]);
        const auto prod = group_->mul(s.prod, a);
        const auto key = static_cast<std::size_t>(sub) * n_ + prod;
        if (stamp_[key] == epoch_) continue;
        stamp_[key] = epoch_;
        next.push_back(State{sub, prod, static_cast<std::int32_t>(i), a});
      }
    }
    if (!witness_out) layers.erase(layers.begin());
    layers.push_back(std::move(next));
  }
  return mask;
}

std::uint64_t SphericalSolver::lengths(const ElementSet& alphabet, std::uint32_t max_len) {
  if (max_len > 62) throw Error(ErrorKind::PreconditionViolated, "tuple length above 62");
  const std::uint64_t keep = (std::uint64_t{2} << max_len) - 1;
  if (auto it = memo_.find(alphabet); it != memo_.end() && it->second.first >= max_len)
    return it->second.second & keep;
  if (memo_.size() > 500'000) memo_.clear();
  const auto mask = run(alphabet, max_len, 0, nullptr);
  memo_[alphabet] = {max_len, mask};
  return mask;
}

std::optional<GenTuple> SphericalSolver::witness(const ElementSet& alphabet, std::uint32_t len) {
  GenTuple t;
  run(alphabet, len, len, &t);
  if (t.empty()) return std::nullopt;
  return t;
}

// ---------------------------------------------------------------------------
// Cyclic classes and literal enumeration

std::vector<CyclicClass> cyclic_classes(const FiniteGroup& g) {
  std::vector<CyclicClass> out;
  ElementSet assigned = g.trivial_subgroup();
  for (Element b = 1; b < g.order(); ++b) {
    if (assigned.contains(b)) continue;
    CyclicClass c{b, g.empty_set(), g.trivial_subgroup(), g.empty_set()};
    ElementSet conj = g.empty_set();
    for (Element x = 0; x < g.order(); ++x) conj.insert(g.conjugate(b, x));
    conj.for_each([&](Element h) {
      const auto ord = g.order_of(h);
      Element y = h;
      for (std::uint32_t k = 1; k < ord; ++k, y = g.mul(y, h)) {
        c.sigma.insert(y);
        if (std::gcd(k, ord) == 1) c.generators.insert(y);
      }
    });
    assigned |= c.generators;
    for (Element y = 1; y < g.order(); ++y) {
      Element z = y;
      for (std::uint32_t k = 1; k < g.order_of(y); ++k, z = g.mul(z, y))
        if (c.sigma.contains(z)) {
          c.blocks.insert(y);
          break;
        }
    }
    out.push_back(std::move(c));
  }
  return out;
}

std::uint64_t enumerate_spherical(const FiniteGroup& g, std::uint32_t r,
                                  const std::function<bool(std::span<const Element>)>& visit) {
  if (r < 2) throw Error(ErrorKind::PreconditionViolated, "spherical systems need r >= 2");
  GenTuple t(r);
  std::uint64_t count = 0;
  bool stop = false;
  std::function<void(std::uint32_t, Element)> rec = [&](std::uint32_t pos, Element prod) {
    if (stop) return;
    if (pos == r - 1) {
      const Element last = g.inv(prod);
      if (last == kIdentity) return;
      t[pos] = last;
      if (!ram::generates(g, t)) return;
      ++count;
      if (!visit(t)) stop = true;
      return;
    }
    for (Element a = 1; a < g.order() && !stop; ++a) {
      t[pos] = a;
      rec(pos + 1, g.mul(prod, a));
    }
  };
  rec(0, kIdentity);
  return count;
}

// ---------------------------------------------------------------------------
// Structure search over sets of cyclic classes
//
// A structure (T1, T2) exists iff there is a set K of cyclic classes such that
// a spherical system of length r1 exists over the generators of K and one of
// length r2 exists over A2(K) = {b != 1 : <b> meets Sigma(K) trivially}. Only
// sets with |K| <= r1 are needed (take K = classes of T1), A2 shrinks as K
// grows, and the generators of K plus all later classes must generate G.

namespace {

class ClassSearch {
 public:
  using HitFn = std::function<bool(const ElementSet& e1, const ElementSet& a2, std::uint64_t l1, std::uint64_t l2)>;

  ClassSearch(SphericalSolver& solver, const SearchBudget& budget)
      : solver_(solver), g_(solver.group()), budget_(budget), classes_(cyclic_classes(g_)),
        start_(std::chrono::steady_clock::now()) {
    suffix_.assign(classes_.size() + 1, g_.empty_set());
    for (std::size_t i = classes_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] | classes_[i].generators;
    nontrivial_ = g_.all_elements();
    nontrivial_.erase(kIdentity);
  }

  /// Returns false when the budget ran out.
  bool run(std::uint32_t depth_limit, std::uint32_t len1, std::uint64_t want1, std::uint32_t len2,
           std::uint64_t want2, HitFn on_hit) {
    depth_limit_ = depth_limit;
    len1_ = len1;
    len2_ = len2;
    want1_ = want1;
    want2_ = want2;
    on_hit_ = std::move(on_hit);
    dfs(0, 0, g_.empty_set(), g_.empty_set());
    return !aborted_;
  }

  std::uint64_t candidates() const { return candidates_; }

 private:
  void dfs(std::size_t start, std::uint32_t depth, const ElementSet& e1, const ElementSet& blocked) {
    if (stop_ || aborted_) return;
    ++candidates_;
    if (candidates_ > budget_.max_candidates ||
        ((candidates_ & 255) == 0 && elapsed_ms() > budget_.max_millis)) {
      aborted_ = true;
      return;
    }
    if (depth > 0) {
      const auto a2 = nontrivial_ - blocked;
      if (!solver_.generates(a2)) return;
      if (solver_.generates(e1)) {
        if (const auto l1 = solver_.lengths(e1, len1_) & want1_) {
          if (const auto l2 = solver_.lengths(a2, len2_) & want2_) {
            if (!on_hit_(e1, a2, l1, l2)) {
              stop_ = true;
              return;
            }
          }
        }
      }
    }
    if (depth == depth_limit_) return;
    for (std::size_t c = start; c < classes_.size(); ++c) {
      if (!solver_.generates(e1 | suffix_[c])) break;
      dfs(c + 1, depth + 1, e1 | classes_[c].generators, blocked | classes_[c].blocks);
      if (stop_ || aborted_) return;
    }
  }

  std::uint64_t elapsed_ms() const {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start_).count());
  }

  SphericalSolver& solver_;
  const FiniteGroup& g_;
  SearchBudget budget_;
  std::vector<CyclicClass> classes_;
  std::vector<ElementSet> suffix_;
  ElementSet nontrivial_;
  std::chrono::steady_clock::time_point start_;
  std::uint32_t depth_limit_ = 0, len1_ = 0, len2_ = 0;
  std::uint64_t want1_ = 0, want2_ = 0;
  HitFn on_hit_;
  std::uint64_t candidates_ = 0;
  bool stop_ = false;
  bool aborted_ = false;
};

ElementSet nontrivial_elements(const FiniteGroup& g) {
  auto s = g.all_elements();
  s.erase(kIdentity);
  return s;
}

}  // namespace

SearchResult find_structure(const GroupPtr& g, std::uint32_t r1, std::uint32_t r2, const SearchBudget& budget,
                            std::size_t max_witnesses) {
  if (r1 < 3 || r2 < 3) throw Error(ErrorKind::PreconditionViolated, "sizes must be >= 3");
  if (r1 > budget.cap || r2 > budget.cap || budget.cap > 62)
    throw Error(ErrorKind::PreconditionViolated, "size exceeds the search cap");
  SearchResult result;
  SphericalSolver solver(g);
  const auto all = solver.lengths(nontrivial_elements(*g), std::max(r1, r2));
  if (!(all >> r1 & 1) || !(all >> r2 & 1)) {
    result.status = SearchStatus::NoneExists;
    result.exhaustive = true;
    return result;
  }
  const bool flip = r1 > r2;
  const auto shorter = std::min(r1, r2), longer = std::max(r1, r2);
  ClassSearch search(solver, budget);
  const bool completed = search.run(
      shorter, shorter, std::uint64_t{1} << shorter, longer, std::uint64_t{1} << longer,
      [&](const ElementSet& e1, const ElementSet& a2, std::uint64_t, std::uint64_t) {
        auto ts = solver.witness(e1, shorter);
        auto tl = solver.witness(a2, longer);
        if (!ts || !tl) throw Error(ErrorKind::InternalContradiction, "length mask and witness disagree");
        auto s = flip ? require_ramification(g, std::move(*tl), std::move(*ts), "oracle")
                      : require_ramification(g, std::move(*ts), std::move(*tl), "oracle");
        const bool seen = std::any_of(result.witnesses.begin(), result.witnesses.end(), [&](const RamStructure& w) {
          return w.t1() == s.t1() && w.t2() == s.t2();
        });
        if (!seen) result.witnesses.push_back(std::move(s));
        return result.witnesses.size() < max_witnesses;
      });
  result.candidates_examined = search.candidates();
  if (!result.witnesses.empty()) {
    result.status = SearchStatus::Found;
    result.structure = result.witnesses.front();
    result.exhaustive = completed && result.witnesses.size() < max_witnesses;
  } else if (completed) {
    result.status = SearchStatus::NoneExists;
    result.exhaustive = true;
  } else {
    result.status = SearchStatus::BudgetExhausted;
  }
  return result;
}

SizeSet size_set_up_to(const GroupPtr& g, std::uint32_t cap, const SearchBudget& budget) {
  if (cap < 3) throw Error(ErrorKind::PreconditionViolated, "cap must be >= 3");
  if (cap > 62) throw Error(ErrorKind::PreconditionViolated, "cap above 62");
  SizeSet out;
  SphericalSolver solver(g);
  const auto all = solver.lengths(nontrivial_elements(*g), cap) & ~std::uint64_t{7};
  std::size_t wanted = 0;
  for (std::uint32_t a = 3; a <= cap; ++a)
    for (std::uint32_t b = a; b <= cap; ++b)
      if ((all >> a & 1) && (all >> b & 1)) ++wanted;
  if (wanted == 0) {
    out.exhaustive = true;
    return out;
  }
  ClassSearch search(solver, budget);
  const bool completed = search.run(cap, cap, all, cap, all, [&](const ElementSet&, const ElementSet&,
                                                                 std::uint64_t l1, std::uint64_t l2) {
    for (std::uint32_t a = 3; a <= cap; ++a) {
      if (!(l1 >> a & 1)) continue;
      for (std::uint32_t b = 3; b <= cap; ++b)
        if (l2 >> b & 1) out.pairs.insert({std::min(a, b), std::max(a, b)});
    }
    return out.pairs.size() < wanted;
  });
  out.candidates_examined = search.candidates();
  out.exhaustive = completed;
  return out;
}

}  // namespace ram
