#include "ram/catalog.hpp"

#include <atomic>
#include <chrono>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "ram/invariants.hpp"
#include "ram/literals.hpp"
#include "ram/theory.hpp"

namespace ram {

namespace {

using json = nlohmann::json;

void partitions(std::uint32_t n, std::uint32_t max_part, std::vector<std::uint32_t>& cur,
                std::vector<std::vector<std::uint32_t>>& out) {
  if (n == 0) {
    out.push_back(cur);
    return;
  }
  for (std::uint32_t k = std::min(n, max_part); k >= 1; --k) {
    cur.push_back(k);
    partitions(n - k, k, cur, out);
    cur.pop_back();
  }
}

std::string spec_of(const std::vector<std::uint32_t>& orders) {
  std::string s;
  for (std::size_t i = 0; i < orders.size(); ++i) s += (i ? "xC" : "C") + std::to_string(orders[i]);
  return s;
}

json grid_json(const std::vector<std::pair<std::uint32_t, std::uint32_t>>& g) {
  json a = json::array();
  for (auto [x, y] : g) a.push_back({x, y});
  return a;
}

json semi_abelian_report(const FiniteGroup& g) {
  json out = json::array();
  std::vector<SylowFactor> factors;
  try {
    factors = sylow_decomposition(g);
  } catch (const Error&) {
    return out;
  }
  for (const auto& f : factors) {
    const auto e = exponent_log(*f.group);
    for (std::uint32_t i = 0; i <= e; ++i) {
      const auto v = is_semi_abelian(*f.group, i);
      json r{{"p", f.p}, {"level", i}, {"holds", v.holds}};
      if (v.witness)
        r["witness"] = {render_element(g, f.embedding[v.witness->first]),
                        render_element(g, f.embedding[v.witness->second])};
      out.push_back(r);
    }
  }
  return out;
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

long long ms_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

std::vector<std::vector<std::uint32_t>> abelian_groups_up_to(std::uint32_t max_order) {
  std::vector<std::vector<std::uint32_t>> out;
  for (std::uint32_t n = 2; n <= max_order; ++n) {
    // Cartesian product over primes of the partitions of each exponent.
    std::vector<std::vector<std::uint32_t>> acc{{}};
    for (auto p : prime_factors(n)) {
      std::uint32_t a = 0;
      for (auto m = n; m % p == 0; m /= p) ++a;
      std::vector<std::vector<std::uint32_t>> parts;
      std::vector<std::uint32_t> cur;
      partitions(a, a, cur, parts);
      std::vector<std::vector<std::uint32_t>> next;
      for (const auto& prefix : acc)
        for (auto it = parts.rbegin(); it != parts.rend(); ++it) {
          auto orders = prefix;
          for (auto k = it->rbegin(); k != it->rend(); ++k) orders.push_back(static_cast<std::uint32_t>(ipow(p, *k)));
          next.push_back(std::move(orders));
        }
      acc = std::move(next);
    }
    for (auto& o : acc) out.push_back(std::move(o));
  }
  return out;
}

std::vector<CatalogEntry> builtin_catalog(std::uint32_t max_order, std::uint32_t cap) {
  std::vector<CatalogEntry> out;
  for (const auto& orders : abelian_groups_up_to(max_order)) out.push_back({spec_of(orders), "abelian", cap, {}});
  out.push_back({"heis(3)", "heis", cap, {}});
  out.push_back({"heis(5)", "heis", std::min<std::uint32_t>(cap, 4), {}});
  for (const char* name : {"d4", "q8", "s3"}) out.push_back({std::string("cayley:") + name, "cayley", cap, {}});
  out.push_back({"C4xC4xC4", "probe", 7, std::pair{7u, 7u}});
  return out;
}

std::string catalog_key(const CatalogEntry& e, const SearchBudget& budget) {
  std::string material = "schema=" + std::to_string(kCatalogSchema) + ";spec=" + e.spec + ";kind=" + e.kind +
                         ";cap=" + std::to_string(e.cap) + ";ms=" + std::to_string(budget.max_millis) +
                         ";cand=" + std::to_string(budget.max_candidates);
  if (e.probe_size) material += ";size=" + std::to_string(e.probe_size->first) + "," + std::to_string(e.probe_size->second);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a(material)));
  return buf;
}

json evaluate_entry(const CatalogEntry& e, const SearchBudget& budget_in) {
  const auto t0 = std::chrono::steady_clock::now();
  auto g = build_group(e.spec);
  json rec{{"schema", kCatalogSchema}, {"key", catalog_key(e, budget_in)}, {"spec", e.spec},
           {"kind", e.kind},           {"order", g->order()},              {"cap", e.cap}};
  auto budget = budget_in;
  budget.cap = std::max(budget.cap, e.cap);

  if (e.probe_size) {
    const auto [r1, r2] = *e.probe_size;
    const auto res = find_structure(g, r1, r2, budget);
    rec["size"] = {r1, r2};
    rec["status"] = std::string(to_string(res.status));
    rec["exhaustive"] = res.exhaustive;
    rec["candidates_examined"] = res.candidates_examined;
    if (res.structure)
      rec["witness"] = {{"t1", render_tuple(*g, res.structure->t1())}, {"t2", render_tuple(*g, res.structure->t2())}};
    rec["elapsed_ms"] = ms_since(t0);
    return rec;
  }

  std::optional<SizeConstraintSet> pred;
  json pj;
  try {
    pred = predict_nilpotent(*g);
    pj = {{"applies", true},
          {"route", "nilpotent"},
          {"admits", pred->admits},
          {"min_size", pred->min_size},
          {"excluded", grid_json({pred->excluded_pairs.begin(), pred->excluded_pairs.end()})},
          {"forbid_both_odd", pred->forbid_both_odd},
          {"grid", grid_json(membership_grid(*pred, e.cap))}};
  } catch (const Error& err) {
    pj = {{"applies", false}, {"reason", err.what()}};
  }
  rec["predictor"] = pj;

  const auto sizes = size_set_up_to(g, e.cap, budget);
  rec["oracle"] = {{"grid", grid_json({sizes.pairs.begin(), sizes.pairs.end()})},
                   {"exhaustive", sizes.exhaustive},
                   {"candidates_examined", sizes.candidates_examined}};

  json mism = json::array();
  if (pred && sizes.exhaustive) {
    for (std::uint32_t a = 3; a <= e.cap; ++a)
      for (std::uint32_t b = a; b <= e.cap; ++b) {
        const bool p = pred->contains(a, b), o = sizes.contains(a, b);
        if (p != o) mism.push_back({a, b, p ? "predictor-only" : "oracle-only"});
      }
  }
  rec["compared"] = pred.has_value() && sizes.exhaustive;
  rec["mismatches"] = mism;
  rec["semi_abelian"] = semi_abelian_report(*g);
  rec["elapsed_ms"] = ms_since(t0);
  return rec;
}

CatalogSummary run_catalog(const CatalogOptions& opts, const std::function<void(const json&)>& on_record) {
  const auto entries = builtin_catalog(opts.max_order, opts.cap);
  CatalogSummary sum;
  sum.groups = entries.size();

  std::map<std::string, json> cache;
  if (opts.use_cache && opts.output && std::filesystem::exists(*opts.output)) {
    std::ifstream in(*opts.output);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      try {
        auto j = json::parse(line);
        if (j.value("schema", 0) == kCatalogSchema && j.contains("key")) cache[j["key"].get<std::string>()] = j;
      } catch (const json::exception&) {
        // stale or truncated line; recomputed below
      }
    }
  }

  std::vector<std::optional<json>> results(entries.size());
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto it = cache.find(catalog_key(entries[i], opts.budget));
    if (it != cache.end()) {
      results[i] = it->second;
      ++sum.cached;
    } else {
      todo.push_back(i);
    }
  }
  sum.oracle_invocations = todo.size();

  std::atomic<std::size_t> next{0};
  std::mutex err_mu;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (std::size_t k; (k = next.fetch_add(1)) < todo.size();) {
      try {
        results[todo[k]] = evaluate_entry(entries[todo[k]], opts.budget);
      } catch (...) {
        std::lock_guard lock(err_mu);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  const unsigned jobs = std::max(1u, opts.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (first_error) std::rethrow_exception(first_error);

  std::ofstream out;
  if (opts.output) {
    out.open(*opts.output, std::ios::trunc);
    if (!out) throw Error(ErrorKind::Io, "cannot write " + opts.output->string());
  }
  for (auto& r : results) {
    const json& rec = *r;
    if (rec.value("compared", false)) ++sum.compared;
    if (rec.contains("mismatches")) sum.mismatches += rec["mismatches"].size();
    if (rec.contains("oracle") && !rec["oracle"].value("exhaustive", true)) ++sum.inconclusive;
    if (rec.contains("status") && rec["status"] == "BudgetExhausted") ++sum.inconclusive;
    if (out) out << rec.dump() << '\n';
    if (on_record) on_record(rec);
    sum.records.push_back(rec);
  }
  if (out && !out.flush()) throw Error(ErrorKind::Io, "write failed for " + opts.output->string());
  return sum;
}

}  // namespace ram
