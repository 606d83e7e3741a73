// Command-line front end. Every command prints one JSON object on stdout.
// Exit codes: 0 definitive answer, 1 input error, 2 budget exhausted or unknown.

#include <chrono>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "ram/catalog.hpp"
#include "ram/constructors.hpp"
#include "ram/invariants.hpp"
#include "ram/literals.hpp"
#include "ram/oracle.hpp"
#include "ram/structures.hpp"
#include "ram/theory.hpp"

#ifndef RAM_VERSION
#define RAM_VERSION "0.0.0"
#endif

namespace {

using json = nlohmann::json;
using namespace ram;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitUnknown = 2;

struct Globals {
  bool json_out = true;
  bool pretty = false;
  std::uint64_t budget_ms = 30ull * 60 * 1000;
  std::uint64_t max_candidates = 200'000'000;
  std::uint64_t seed = 0;  // accepted for interface stability; all algorithms are deterministic
};

std::pair<std::uint32_t, std::uint32_t> parse_size(const std::string& s) {
  const auto comma = s.find(',');
  if (comma == std::string::npos) throw ParseError(ErrorKind::ParseError, "size must be R1,R2", 0);
  try {
    std::size_t used1 = 0, used2 = 0;
    const auto a = std::stoul(s.substr(0, comma), &used1);
    const auto b = std::stoul(s.substr(comma + 1), &used2);
    if (used1 != comma || used2 != s.size() - comma - 1) throw std::invalid_argument("trailing");
    if (a > 62 || b > 62) throw Error(ErrorKind::OutOfRange, "sizes above 62 are not supported");
    return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
  } catch (const std::logic_error&) {
    throw ParseError(ErrorKind::ParseError, "size must be R1,R2 with non-negative integers", 0);
  }
}

json base_report(const std::string& command, const GroupSpec& spec) {
  return json{{"command", command}, {"group", render_spec(spec)}, {"version", RAM_VERSION}};
}

json structure_json(const RamStructure& s) {
  const auto& g = *s.group();
  return json{{"t1", render_tuple(g, s.t1())},
              {"t2", render_tuple(g, s.t2())},
              {"size", {s.size().first, s.size().second}}};
}

json constraint_json(const SizeConstraintSet& s) {
  json ex = json::array();
  for (auto [a, b] : s.excluded_pairs) ex.push_back({a, b});
  return json{{"admits", s.admits},
              {"min_size", s.min_size},
              {"excluded", ex},
              {"forbid_both_odd", s.forbid_both_odd},
              {"provenance", s.provenance}};
}

SearchBudget budget_from(const Globals& g, std::optional<std::uint64_t> override_ms, std::uint32_t cap) {
  SearchBudget b;
  b.max_millis = override_ms.value_or(g.budget_ms);
  b.max_candidates = g.max_candidates;
  b.cap = std::max<std::uint32_t>(cap, 3);
  return b;
}

long long elapsed_ms(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0).count();
}

void emit(const Globals& g, const json& j) { std::cout << (g.pretty ? j.dump(2) : j.dump()) << std::endl; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ramification structures on finite groups"};
  app.require_subcommand(1);
  Globals globals;
  app.add_flag("--json", globals.json_out, "JSON output (the default and only format)");
  app.add_flag("--pretty", globals.pretty, "Indent JSON output");
  app.add_option("--budget-ms", globals.budget_ms, "Search time budget in milliseconds");
  app.add_option("--max-candidates", globals.max_candidates, "Search node budget");
  app.add_option("--seed", globals.seed, "Accepted and ignored; results are deterministic");

  std::string group_text, t1_text, t2_text, size_text, method_text = "auto", out_path;
  std::size_t all_n = 1;
  std::optional<std::uint64_t> search_budget;
  std::uint32_t cap = 8, grid_cap = 0, max_order = 32, level = 0, sylow = 0;
  unsigned jobs = 1;
  bool no_cache = false, has_level = false, records = false;

  auto* check = app.add_subcommand("check", "Validate a pair of tuples");
  check->add_option("--group", group_text)->required();
  check->add_option("--t1", t1_text)->required();
  check->add_option("--t2", t2_text)->required();

  auto* search = app.add_subcommand("search", "Exhaustive search for a structure of a given size");
  search->add_option("--group", group_text)->required();
  search->add_option("--size", size_text, "R1,R2")->required();
  search->add_option("--all", all_n, "Collect up to N distinct witnesses");
  search->add_option("--budget", search_budget, "Time budget in milliseconds");

  auto* sizes = app.add_subcommand("sizes", "All sizes up to a cap");
  sizes->add_option("--group", group_text)->required();
  sizes->add_option("--cap", cap)->check(CLI::Range(3, 62));

  auto* predict = app.add_subcommand("predict", "Theoretical size set");
  predict->add_option("--group", group_text)->required();
  predict->add_option("--size", size_text, "R1,R2 membership query");
  predict->add_option("--grid", grid_cap, "List admitted pairs up to this cap");
  predict->add_option("--sylow", sylow, "Predict for the Sylow p-subgroup instead");

  auto* construct = app.add_subcommand("construct", "Build a structure");
  construct->add_option("--group", group_text)->required();
  construct->add_option("--size", size_text, "R1,R2")->required();
  construct->add_option("--method", method_text)->check(CLI::IsMember({"auto", "theorem", "search"}));

  auto* invariants = app.add_subcommand("invariants", "Group invariants");
  invariants->add_option("--group", group_text)->required();

  auto* semiab = app.add_subcommand("semiabelian", "Semi-p^i-abelian test with witnesses");
  semiab->add_option("--group", group_text)->required();
  auto* level_opt = semiab->add_option("--level", level, "Only this level i");

  auto* catalog = app.add_subcommand("catalog", "Predictor against oracle over the built-in catalog");
  catalog->add_option("--max-order", max_order);
  catalog->add_option("--cap", cap)->check(CLI::Range(3, 62));
  catalog->add_option("--out", out_path, "JSON-lines results, reused as a cache");
  catalog->add_flag("--no-cache", no_cache);
  catalog->add_option("--jobs", jobs)->check(CLI::Range(1, 256));
  catalog->add_flag("--records", records, "Also print every record");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }
  has_level = level_opt->count() > 0;

  const auto t0 = std::chrono::steady_clock::now();
  try {
    if (*catalog) {
      CatalogOptions opts;
      opts.max_order = max_order;
      opts.cap = cap;
      opts.budget = budget_from(globals, std::nullopt, cap);
      if (!out_path.empty()) opts.output = out_path;
      opts.use_cache = !no_cache;
      opts.jobs = jobs;
      auto sum = run_catalog(opts, [&](const json& rec) {
        if (records) emit(globals, rec);
      });
      json rep{{"command", "catalog"},       {"version", RAM_VERSION},
               {"groups", sum.groups},       {"compared", sum.compared},
               {"mismatches", sum.mismatches}, {"inconclusive", sum.inconclusive},
               {"cached", sum.cached},       {"oracle_invocations", sum.oracle_invocations},
               {"elapsed_ms", elapsed_ms(t0)}};
      if (!out_path.empty()) rep["output"] = out_path;
      emit(globals, rep);
      return sum.inconclusive ? kExitUnknown : kExitOk;
    }

    const auto spec = parse_group_spec(group_text);
    const auto g = build_group(spec);

    if (*check) {
      auto t1 = parse_tuple(*g, t1_text);
      auto t2 = parse_tuple(*g, t2_text);
      const auto s1 = sigma(*g, t1).size(), s2 = sigma(*g, t2).size();
      json rep = base_report("check", spec);
      rep["size"] = {t1.size(), t2.size()};
      rep["sigma_sizes"] = {s1, s2};
      auto res = check_ramification(g, std::move(t1), std::move(t2));
      rep["verdict"] = res.ok();
      if (!res.ok()) {
        rep["reason"] = std::string(to_string(res.reason));
        if (res.tuple) rep["tuple"] = res.tuple;
        if (res.shared) rep["witness"] = render_element(*g, *res.shared);
      }
      emit(globals, rep);
      return kExitOk;
    }

    if (*search) {
      const auto [r1, r2] = parse_size(size_text);
      auto res = find_structure(g, r1, r2, budget_from(globals, search_budget, std::max(r1, r2)),
                                std::max<std::size_t>(all_n, 1));
      json rep = base_report("search", spec);
      rep["size"] = {r1, r2};
      rep["status"] = std::string(to_string(res.status));
      rep["exhaustive"] = res.exhaustive;
      rep["candidates_examined"] = res.candidates_examined;
      json ws = json::array();
      for (const auto& w : res.witnesses) ws.push_back(structure_json(w));
      rep["witnesses"] = ws;
      rep["elapsed_ms"] = elapsed_ms(t0);
      emit(globals, rep);
      return res.status == SearchStatus::BudgetExhausted ? kExitUnknown : kExitOk;
    }

    if (*sizes) {
      auto res = size_set_up_to(g, cap, budget_from(globals, std::nullopt, cap));
      json rep = base_report("sizes", spec);
      rep["cap"] = cap;
      json pairs = json::array();
      for (auto [a, b] : res.pairs) pairs.push_back({a, b});
      rep["pairs"] = pairs;
      rep["exhaustive"] = res.exhaustive;
      rep["candidates_examined"] = res.candidates_examined;
      rep["elapsed_ms"] = elapsed_ms(t0);
      emit(globals, rep);
      return res.exhaustive ? kExitOk : kExitUnknown;
    }

    if (*predict) {
      json rep = base_report("predict", spec);
      GroupPtr target = g;
      if (sylow) {
        for (const auto& f : sylow_decomposition(*g))
          if (f.p == sylow) target = f.group;
        if (target == g && pgroup_prime(*g) != sylow)
          throw Error(ErrorKind::InvalidPrime, std::to_string(sylow) + " does not divide |G|");
        rep["sylow"] = sylow;
        rep["sylow_order"] = target->order();
      }
      SizeConstraintSet s;
      try {
        s = predict_nilpotent(*target);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::HypothesisViolated && e.kind() != ErrorKind::NotNilpotent) throw;
        rep["applies"] = false;
        rep["reason"] = e.what();
        emit(globals, rep);
        return kExitUnknown;
      }
      rep["applies"] = true;
      rep["constraints"] = constraint_json(s);
      if (!size_text.empty()) {
        const auto [r1, r2] = parse_size(size_text);
        rep["size"] = {r1, r2};
        rep["membership"] = membership(s, r1, r2);
      }
      if (grid_cap) {
        json grid = json::array();
        for (auto [a, b] : membership_grid(s, grid_cap)) grid.push_back({a, b});
        rep["grid"] = grid;
      }
      emit(globals, rep);
      return kExitOk;
    }

    if (*construct) {
      const auto [r1, r2] = parse_size(size_text);
      const auto method = method_text == "theorem"  ? ConstructMethod::Theorem
                          : method_text == "search" ? ConstructMethod::Search
                                                    : ConstructMethod::Auto;
      auto out = construct_any(g, r1, r2, method, budget_from(globals, std::nullopt, std::max(r1, r2)));
      json rep = base_report("construct", spec);
      rep["size"] = {r1, r2};
      rep["status"] = std::string(to_string(out.status));
      rep["method"] = out.method;
      rep["notes"] = out.notes;
      if (out.structure) {
        rep["witness"] = structure_json(*out.structure);
        // Independent re-check of the returned tuples.
        rep["validated"] = check_ramification(g, out.structure->t1(), out.structure->t2()).ok();
      }
      if (out.search) {
        rep["exhaustive"] = out.search->exhaustive;
        rep["candidates_examined"] = out.search->candidates_examined;
      }
      rep["elapsed_ms"] = elapsed_ms(t0);
      emit(globals, rep);
      return out.status == ConstructStatus::Unknown ? kExitUnknown : kExitOk;
    }

    if (*invariants) {
      json rep = base_report("invariants", spec);
      rep["order"] = g->order();
      rep["abelian"] = g->is_abelian();
      rep["nilpotent"] = is_nilpotent(*g);
      rep["exponent"] = exponent(*g);
      rep["center_order"] = center(*g).size();
      rep["derived_order"] = derived_subgroup(*g).size();
      json ucs = json::array();
      for (const auto& z : upper_central_series(*g)) ucs.push_back(z.size());
      rep["upper_central_series"] = ucs;
      if (is_nilpotent(*g) && g->order() > 1) rep["d"] = min_generators(*g);
      if (auto p = pgroup_prime(*g)) {
        const auto prof = pgroup_profile(*g);
        const auto cls = classify_pgroup(*g);
        rep["p"] = *p;
        rep["e"] = prof.e;
        rep["d"] = prof.d;
        rep["frattini_order"] = frattini(*g).size();
        rep["power_image_sizes"] = prof.power_image_sizes;
        rep["omega_indices"] = prof.omega_indices;
        rep["semi_abelian"] = prof.semi_abelian;
        rep["classification"] = {{"abelian", cls.abelian},
                                 {"powerful", cls.powerful},
                                 {"p_central", cls.p_central},
                                 {"semi_abelian_at_e_minus_1", cls.semi_abelian_at_e_minus_1}};
      }
      emit(globals, rep);
      return kExitOk;
    }

    if (*semiab) {
      const auto p = require_pgroup(*g);
      const auto e = exponent_log(*g);
      json rep = base_report("semiabelian", spec);
      rep["p"] = p;
      rep["e"] = e;
      json levels = json::array();
      for (std::uint32_t i = has_level ? level : 0; i <= (has_level ? level : e); ++i) {
        const auto v = is_semi_abelian(*g, i);
        json l{{"level", i}, {"holds", v.holds}};
        if (i == 0) l["note"] = "trivial level";
        if (v.witness) l["witness"] = {render_element(*g, v.witness->first), render_element(*g, v.witness->second)};
        levels.push_back(l);
      }
      rep["levels"] = levels;
      emit(globals, rep);
      return kExitOk;
    }
  } catch (const Error& e) {
    json rep{{"error", std::string(to_string(e.kind()))}, {"message", e.what()}};
    if (const auto* pe = dynamic_cast<const ParseError*>(&e)) rep["position"] = pe->position();
    emit(globals, rep);
    return kExitInput;
  }
  return kExitInput;
}
