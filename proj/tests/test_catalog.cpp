#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <map>
#include <set>

#include <unistd.h>

#include "helpers.hpp"
#include "ram/catalog.hpp"

using namespace ram;

namespace {

// Invariant-factor lists d1 | d2 | ... | dk with product n, by direct search.
void invariant_factor_lists(std::uint32_t rest, std::uint32_t prev, std::vector<std::uint32_t>& cur,
                            std::set<std::vector<std::uint32_t>>& out) {
  if (rest == 1) {
    if (!cur.empty()) out.insert(cur);
    return;
  }
  for (std::uint32_t d = 2; d <= rest; ++d) {
    if (rest % d || (prev && d % prev)) continue;
    cur.push_back(d);
    invariant_factor_lists(rest / d, d, cur, out);
    cur.pop_back();
  }
}

std::size_t abelian_count_by_invariant_factors(std::uint32_t n) {
  std::set<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  invariant_factor_lists(n, 0, cur, out);
  return out.size();
}

std::filesystem::path temp_file(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ram_test_" + name + "_" + std::to_string(::getpid()) + ".jsonl");
  std::filesystem::remove(p);
  return p;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Catalog, AbelianGroupCountsMatchInvariantFactorCount) {
  const auto all = abelian_groups_up_to(64);
  std::map<std::size_t, std::size_t> per_order;
  std::set<std::vector<std::uint32_t>> distinct;
  for (const auto& orders : all) {
    std::size_t n = 1;
    for (auto o : orders) {
      ASSERT_GE(o, 2u);
      n *= o;
    }
    ++per_order[n];
    distinct.insert(orders);
  }
  EXPECT_EQ(distinct.size(), all.size());
  for (std::uint32_t n = 2; n <= 64; ++n) EXPECT_EQ(per_order[n], abelian_count_by_invariant_factors(n)) << n;
  // Each entry really has order n and the isomorphism types are distinct: compare element-order profiles.
  std::set<std::vector<std::uint32_t>> profiles;
  for (const auto& orders : abelian_groups_up_to(32)) {
    auto g = make_abelian(orders);
    std::vector<std::uint32_t> prof(g->order() + 1, 0);
    for (Element x = 0; x < g->order(); ++x) ++prof[g->order_of(x)];
    prof.push_back(static_cast<std::uint32_t>(g->order()));
    EXPECT_TRUE(profiles.insert(prof).second);
  }
}

TEST(Catalog, BuiltinContents) {
  const auto c = builtin_catalog(32, 8);
  std::set<std::string> specs;
  for (const auto& e : c) specs.insert(e.spec);
  for (const char* s : {"heis(3)", "heis(5)", "cayley:d4", "cayley:q8", "cayley:s3", "C2xC2xC2"})
    EXPECT_TRUE(specs.count(s)) << s;
  for (const auto& e : c)
    if (e.spec == "heis(5)") EXPECT_EQ(e.cap, 4u);
}

TEST(Catalog, KeyDependsOnInputs) {
  CatalogEntry a{"C2xC2xC2", "abelian", 8, {}};
  CatalogEntry b = a;
  b.cap = 7;
  SearchBudget bud;
  EXPECT_EQ(catalog_key(a, bud), catalog_key(a, bud));
  EXPECT_NE(catalog_key(a, bud), catalog_key(b, bud));
  auto bud2 = bud;
  bud2.max_millis += 1;
  EXPECT_NE(catalog_key(a, bud), catalog_key(a, bud2));
}

TEST(Catalog, EntryRecordForC2Cubed) {
  const auto rec = evaluate_entry({"C2xC2xC2", "abelian", 9, {}}, SearchBudget{});
  EXPECT_TRUE(rec["predictor"]["applies"].get<bool>());
  EXPECT_TRUE(rec["predictor"]["forbid_both_odd"].get<bool>());
  EXPECT_TRUE(rec["oracle"]["exhaustive"].get<bool>());
  EXPECT_TRUE(rec["compared"].get<bool>());
  EXPECT_TRUE(rec["mismatches"].empty());
  for (const auto& pr : rec["oracle"]["grid"]) {
    const auto a = pr[0].get<int>(), b = pr[1].get<int>();
    EXPECT_FALSE(a % 2 == 1 && b % 2 == 1);
    EXPECT_GE(a, 5);
  }
}

TEST(Catalog, SemiAbelianReportHasWitnesses) {
  const auto rec = evaluate_entry({"cayley:q8", "cayley", 5, {}}, SearchBudget{});
  EXPECT_FALSE(rec["predictor"]["applies"].get<bool>());
  bool saw_failure = false;
  for (const auto& lvl : rec["semi_abelian"])
    if (lvl["level"] == 1) {
      EXPECT_FALSE(lvl["holds"].get<bool>());
      EXPECT_TRUE(lvl.contains("witness"));
      saw_failure = true;
    }
  EXPECT_TRUE(saw_failure);
}

TEST(Catalog, CachedRerunIsIdentical) {
  const auto out = temp_file("cache");
  CatalogOptions opts;
  opts.max_order = 12;
  opts.cap = 6;
  opts.output = out;
  const auto first = run_catalog(opts);
  EXPECT_EQ(first.cached, 0u);
  EXPECT_EQ(first.oracle_invocations, first.groups);
  EXPECT_EQ(first.mismatches, 0u);
  const auto text = slurp(out);

  const auto second = run_catalog(opts);
  EXPECT_EQ(second.oracle_invocations, 0u);
  EXPECT_EQ(second.cached, second.groups);
  EXPECT_EQ(slurp(out), text);
  ASSERT_EQ(second.records.size(), first.records.size());
  for (std::size_t i = 0; i < first.records.size(); ++i) EXPECT_EQ(second.records[i], first.records[i]);

  // A changed cap invalidates exactly the entries whose key changed.
  std::set<std::string> old_keys;
  for (const auto& e : builtin_catalog(opts.max_order, opts.cap)) old_keys.insert(catalog_key(e, opts.budget));
  opts.cap = 5;
  std::size_t unchanged = 0;
  for (const auto& e : builtin_catalog(opts.max_order, opts.cap)) unchanged += old_keys.count(catalog_key(e, opts.budget));
  EXPECT_LT(unchanged, first.groups);
  const auto third = run_catalog(opts);
  EXPECT_EQ(third.cached, unchanged);
  std::filesystem::remove(out);
}

TEST(Catalog, ParallelMatchesSerialOrder) {
  CatalogOptions opts;
  opts.max_order = 16;
  opts.cap = 6;
  opts.use_cache = false;
  const auto serial = run_catalog(opts);
  opts.jobs = 4;
  const auto par = run_catalog(opts);
  ASSERT_EQ(serial.records.size(), par.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    auto a = serial.records[i], b = par.records[i];
    a.erase("elapsed_ms");
    b.erase("elapsed_ms");
    EXPECT_EQ(a, b);
  }
}
