#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "ram/oracle.hpp"

namespace ram {

inline constexpr int kCatalogSchema = 1;

struct CatalogEntry {
  std::string spec;
  std::string kind;  // abelian, heis, cayley, probe
  std::uint32_t cap = 0;
  std::optional<std::pair<std::uint32_t, std::uint32_t>> probe_size;  // probes decide one size only
};

/// All abelian groups of order <= max_order as primary decompositions
/// (ascending order, then by prime and partition).
std::vector<std::vector<std::uint32_t>> abelian_groups_up_to(std::uint32_t max_order);

/// Abelian groups, heis(3), heis(5) (cap at most 4), the bundled D4, Q8, S3
/// and the C4^3 (7,7) probe.
std::vector<CatalogEntry> builtin_catalog(std::uint32_t max_order, std::uint32_t cap);

struct CatalogOptions {
  std::uint32_t max_order = 32;
  std::uint32_t cap = 8;
  SearchBudget budget;
  std::optional<std::filesystem::path> output;  // JSON-lines file, also read back as a cache
  bool use_cache = true;
  unsigned jobs = 1;
};

struct CatalogSummary {
  std::size_t groups = 0;
  std::size_t compared = 0;      // groups with a predictor and an exhaustive oracle grid
  std::size_t mismatches = 0;    // grid cells where the two disagree
  std::size_t inconclusive = 0;  // oracle ran out of budget
  std::size_t cached = 0;
  std::size_t oracle_invocations = 0;
  std::vector<nlohmann::json> records;  // catalog order
};

/// Cache key: FNV-1a over schema, spec, cap and budget.
std::string catalog_key(const CatalogEntry& e, const SearchBudget& budget);

/// Evaluates one entry (no caching).
nlohmann::json evaluate_entry(const CatalogEntry& e, const SearchBudget& budget);

/// Runs the catalog; records are written in catalog order regardless of jobs.
CatalogSummary run_catalog(const CatalogOptions& opts,
                           const std::function<void(const nlohmann::json&)>& on_record = {});

}  // namespace ram
