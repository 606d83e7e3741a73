#include "ram/group.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <numeric>

#include <nlohmann/json.hpp>

namespace ram {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::InvalidCayleyTable: return "InvalidCayleyTable";
    case ErrorKind::OrderTooLarge: return "OrderTooLarge";
    case ErrorKind::NotASubgroup: return "NotASubgroup";
    case ErrorKind::NotNormal: return "NotNormal";
    case ErrorKind::NotAPGroup: return "NotAPGroup";
    case ErrorKind::NotNilpotent: return "NotNilpotent";
    case ErrorKind::NotExponentP: return "NotExponentP";
    case ErrorKind::NoLiftExists: return "NoLiftExists";
    case ErrorKind::PreconditionViolated: return "PreconditionViolated";
    case ErrorKind::InadmissibleSize: return "InadmissibleSize";
    case ErrorKind::HypothesisViolated: return "HypothesisViolated";
    case ErrorKind::InternalContradiction: return "InternalContradiction";
    case ErrorKind::NotCoprime: return "NotCoprime";
    case ErrorKind::PaddingImpossible: return "PaddingImpossible";
    case ErrorKind::DegenerateRank: return "DegenerateRank";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvalidOrder: return "InvalidOrder";
    case ErrorKind::InvalidPrime: return "InvalidPrime";
    case ErrorKind::OutOfRange: return "OutOfRange";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) { return std::gcd(a, b); }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<std::uint32_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(static_cast<std::uint32_t>(d));
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(static_cast<std::uint32_t>(n));
  return out;
}

// ---------------------------------------------------------------------------
// FiniteGroup

FiniteGroup::FiniteGroup(Realization realization, std::size_t order, std::vector<std::uint16_t> table)
    : realization_(std::move(realization)), order_(order), table_(std::move(table)) {
  inverse_.assign(order_, 0);
  for (Element a = 0; a < order_; ++a) {
    const auto* row = &table_[static_cast<std::size_t>(a) * order_];
    for (Element b = 0; b < order_; ++b) {
      if (row[b] == kIdentity) {
        inverse_[a] = static_cast<std::uint16_t>(b);
        break;
      }
    }
  }
  element_orders_.assign(order_, 1);
  for (Element a = 1; a < order_; ++a) {
    std::uint32_t k = 1;
    for (Element x = a; x != kIdentity; x = mul(x, a)) ++k;
    element_orders_[a] = k;
  }
  abelian_ = true;
  for (Element a = 0; a < order_ && abelian_; ++a)
    for (Element b = a + 1; b < order_; ++b)
      if (mul(a, b) != mul(b, a)) {
        abelian_ = false;
        break;
      }
  if (const auto* ab = std::get_if<AbelianRealization>(&realization_)) {
    strides_.assign(ab->orders.size(), 1);
    for (std::size_t i = ab->orders.size(); i-- > 1;) strides_[i - 1] = strides_[i] * ab->orders[i];
  }
}

GroupPtr FiniteGroup::from_trusted_table(Realization realization, std::size_t order,
                                         std::vector<std::uint16_t> table) {
  return GroupPtr(new FiniteGroup(std::move(realization), order, std::move(table)));
}

void FiniteGroup::check(Element a) const {
  if (a >= order_)
    throw Error(ErrorKind::IndexOutOfRange,
                "element " + std::to_string(a) + " not in group of order " + std::to_string(order_));
}

Element FiniteGroup::multiply(Element a, Element b) const {
  check(a);
  check(b);
  return mul(a, b);
}

Element FiniteGroup::inverse(Element a) const {
  check(a);
  return inv(a);
}

std::uint32_t FiniteGroup::element_order(Element a) const {
  check(a);
  return order_of(a);
}

Element FiniteGroup::power(Element a, long long k) const {
  const long long n = order_of(a);
  k %= n;
  if (k < 0) k += n;
  Element result = kIdentity;
  Element base = a;
  for (auto e = static_cast<unsigned long long>(k); e; e >>= 1) {
    if (e & 1) result = mul(result, base);
    base = mul(base, base);
  }
  return result;
}

std::vector<std::uint32_t> FiniteGroup::abelian_coords(Element g) const {
  const auto* ab = as<AbelianRealization>();
  if (!ab) throw Error(ErrorKind::PreconditionViolated, "not an abelian realization");
  check(g);
  std::vector<std::uint32_t> coords(ab->orders.size());
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = (g / strides_[i]) % ab->orders[i];
  return coords;
}

Element FiniteGroup::from_abelian_coords(std::span<const std::uint32_t> coords) const {
  const auto* ab = as<AbelianRealization>();
  if (!ab || coords.size() != ab->orders.size())
    throw Error(ErrorKind::PreconditionViolated, "coordinate vector does not match realization");
  Element g = 0;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (coords[i] >= ab->orders[i]) throw Error(ErrorKind::OutOfRange, "coordinate out of range");
    g += coords[i] * strides_[i];
  }
  return g;
}

Element FiniteGroup::product_pair(Element left, Element right) const {
  const auto* pr = as<ProductRealization>();
  if (!pr) throw Error(ErrorKind::PreconditionViolated, "not a direct product realization");
  if (left >= pr->left->order() || right >= pr->right->order())
    throw Error(ErrorKind::IndexOutOfRange, "product component out of range");
  return static_cast<Element>(left * pr->right->order() + right);
}

Element FiniteGroup::product_left(Element g) const {
  const auto* pr = as<ProductRealization>();
  if (!pr) throw Error(ErrorKind::PreconditionViolated, "not a direct product realization");
  check(g);
  return static_cast<Element>(g / pr->right->order());
}

Element FiniteGroup::product_right(Element g) const {
  const auto* pr = as<ProductRealization>();
  if (!pr) throw Error(ErrorKind::PreconditionViolated, "not a direct product realization");
  check(g);
  return static_cast<Element>(g % pr->right->order());
}

// ---------------------------------------------------------------------------
// Construction

namespace {

void check_order(std::uint64_t n) {
  if (n > kMaxOrder)
    throw Error(ErrorKind::OrderTooLarge,
                "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxOrder));
}

}  // namespace

GroupPtr make_abelian(std::vector<std::uint32_t> orders) {
  std::uint64_t n = 1;
  for (auto o : orders) {
    if (o < 2) throw Error(ErrorKind::InvalidOrder, "cyclic factor order must be >= 2, got " + std::to_string(o));
    n *= o;
    check_order(n);
  }
  std::vector<std::uint32_t> strides(orders.size(), 1);
  for (std::size_t i = orders.size(); i-- > 1;) strides[i - 1] = strides[i] * orders[i];
  const std::size_t k = orders.size();
  std::vector<std::uint32_t> coords(n * k);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::size_t i = 0; i < k; ++i) coords[a * k + i] = (a / strides[i]) % orders[i];
  std::vector<std::uint16_t> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a) {
    const auto* ca = &coords[a * k];
    for (std::uint64_t b = 0; b < n; ++b) {
      const auto* cb = &coords[b * k];
      std::uint32_t c = 0;
      for (std::size_t i = 0; i < k; ++i) {
        auto s = ca[i] + cb[i];
        if (s >= orders[i]) s -= orders[i];
        c += s * strides[i];
      }
      table[a * n + b] = static_cast<std::uint16_t>(c);
    }
  }
  return FiniteGroup::from_trusted_table(AbelianRealization{std::move(orders)}, n, std::move(table));
}

GroupPtr make_cyclic(std::uint32_t n) {
  if (n == 1) return FiniteGroup::from_trusted_table(AbelianRealization{}, 1, {0});
  return make_abelian({n});
}

GroupPtr make_heisenberg(std::uint32_t p) {
  if (p == 2 || !is_prime(p))
    throw Error(ErrorKind::InvalidPrime, "Heisenberg group needs an odd prime, got " + std::to_string(p));
  const std::uint64_t n = std::uint64_t{p} * p * p;
  check_order(n);
  std::vector<std::uint16_t> table(n * n);
  for (std::uint64_t x = 0; x < n; ++x) {
    const auto a = x / (p * p), b = (x / p) % p, c = x % p;
    for (std::uint64_t y = 0; y < n; ++y) {
      const auto a2 = y / (p * p), b2 = (y / p) % p, c2 = y % p;
      const auto ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
      table[x * n + y] = static_cast<std::uint16_t>(ra * p * p + rb * p + rc);
    }
  }
  return FiniteGroup::from_trusted_table(HeisenbergRealization{p}, n, std::move(table));
}

GroupPtr make_cayley(const std::vector<std::vector<std::uint32_t>>& rows, std::vector<std::string> names) {
  const std::size_t n = rows.size();
  if (n == 0) throw Error(ErrorKind::InvalidCayleyTable, "empty table");
  check_order(n);
  if (!names.empty() && names.size() != n)
    throw Error(ErrorKind::InvalidCayleyTable, "names must have one entry per element");
  std::vector<std::uint16_t> table(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    if (rows[i].size() != n) throw Error(ErrorKind::InvalidCayleyTable, "row " + std::to_string(i) + " has wrong length");
    for (std::size_t j = 0; j < n; ++j) {
      if (rows[i][j] >= n) throw Error(ErrorKind::InvalidCayleyTable, "entry out of range in row " + std::to_string(i));
      table[i * n + j] = static_cast<std::uint16_t>(rows[i][j]);
    }
  }
  for (std::size_t j = 0; j < n; ++j)
    if (table[j] != j || table[j * n] != j)
      throw Error(ErrorKind::InvalidCayleyTable, "index 0 is not the identity");
  std::vector<char> seen(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table[i * n + j]]++) throw Error(ErrorKind::InvalidCayleyTable, "row " + std::to_string(i) + " repeats an entry");
    }
    std::fill(seen.begin(), seen.end(), 0);
    for (std::size_t j = 0; j < n; ++j) {
      if (seen[table[j * n + i]]++) throw Error(ErrorKind::InvalidCayleyTable, "column " + std::to_string(i) + " repeats an entry");
    }
  }
  auto op = [&](std::size_t a, std::size_t b) -> std::size_t { return table[a * n + b]; };

  // Light's associativity test: it suffices to check (x g) y = x (g y) for g
  // ranging over a set that generates the magma.
  std::vector<std::size_t> gens;
  std::vector<char> reached(n, 0);
  reached[0] = 1;
  std::vector<std::size_t> members{0};
  for (std::size_t cand = 1; cand < n; ++cand) {
    if (reached[cand]) continue;
    gens.push_back(cand);
    std::deque<std::size_t> queue(members.begin(), members.end());
    while (!queue.empty()) {
      auto x = queue.front();
      queue.pop_front();
      for (auto g : gens) {
        auto y = op(x, g);
        if (!reached[y]) {
          reached[y] = 1;
          members.push_back(y);
          queue.push_back(y);
        }
      }
    }
  }
  for (auto g : gens)
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y)
        if (op(op(x, g), y) != op(x, op(g, y)))
          throw Error(ErrorKind::InvalidCayleyTable, "operation is not associative");

  return FiniteGroup::from_trusted_table(CayleyRealization{std::move(names)}, n, std::move(table));
}

GroupPtr load_cayley_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot open Cayley file " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidCayleyTable, path.string() + ": " + e.what());
  }
  if (!doc.is_object() || !doc.contains("order") || !doc.contains("table"))
    throw Error(ErrorKind::InvalidCayleyTable, path.string() + ": expected {\"order\", \"table\"}");
  try {
    const auto n = doc.at("order").get<std::size_t>();
    auto rows = doc.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    if (rows.size() != n) throw Error(ErrorKind::InvalidCayleyTable, "table has " + std::to_string(rows.size()) + " rows, order is " + std::to_string(n));
    std::vector<std::string> names;
    if (doc.contains("names")) names = doc.at("names").get<std::vector<std::string>>();
    return make_cayley(rows, std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidCayleyTable, path.string() + ": " + e.what());
  }
}

GroupPtr direct_product(const GroupPtr& left, const GroupPtr& right) {
  const std::uint64_t nl = left->order(), nr = right->order(), n = nl * nr;
  check_order(n);
  std::vector<std::uint16_t> table(n * n);
  for (std::uint64_t a = 0; a < n; ++a)
    for (std::uint64_t b = 0; b < n; ++b) {
      const auto l = left->mul(static_cast<Element>(a / nr), static_cast<Element>(b / nr));
      const auto r = right->mul(static_cast<Element>(a % nr), static_cast<Element>(b % nr));
      table[a * n + b] = static_cast<std::uint16_t>(l * nr + r);
    }
  return FiniteGroup::from_trusted_table(ProductRealization{left, right}, n, std::move(table));
}

// ---------------------------------------------------------------------------
// Subgroups

ElementSet generated_subgroup(const FiniteGroup& g, std::span<const Element> gens) {
  ElementSet h = g.trivial_subgroup();
  std::vector<Element> distinct;
  for (auto x : gens) {
    if (x >= g.order()) throw Error(ErrorKind::IndexOutOfRange, "generator out of range");
    if (x != kIdentity && std::find(distinct.begin(), distinct.end(), x) == distinct.end()) distinct.push_back(x);
  }
  std::vector<Element> frontier{kIdentity};
  while (!frontier.empty()) {
    std::vector<Element> next;
    for (auto x : frontier)
      for (auto s : distinct) {
        auto y = g.mul(x, s);
        if (!h.contains(y)) {
          h.insert(y);
          next.push_back(y);
        }
      }
    frontier = std::move(next);
  }
  return h;
}

ElementSet generated_subgroup(const FiniteGroup& g, const ElementSet& gens) {
  const auto v = gens.elements();
  return generated_subgroup(g, v);
}

bool generates(const FiniteGroup& g, std::span<const Element> gens) {
  return generated_subgroup(g, gens).size() == g.order();
}

bool is_subgroup(const FiniteGroup& g, const ElementSet& h) {
  if (!h.contains_identity()) return false;
  const auto members = h.elements();
  for (auto a : members)
    for (auto b : members)
      if (!h.contains(g.mul(a, b))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const ElementSet& h) {
  if (!is_subgroup(g, h)) throw Error(ErrorKind::NotASubgroup, "set is not closed under multiplication");
  const auto members = h.elements();
  for (Element x = 0; x < g.order(); ++x)
    for (auto a : members)
      if (!h.contains(g.conjugate(a, x))) return false;
  return true;
}

ElementSet center(const FiniteGroup& g) {
  ElementSet z = g.empty_set();
  for (Element a = 0; a < g.order(); ++a) {
    bool central = true;
    for (Element b = 0; b < g.order() && central; ++b) central = g.mul(a, b) == g.mul(b, a);
    if (central) z.insert(a);
  }
  return z;
}

std::vector<ElementSet> upper_central_series(const FiniteGroup& g) {
  std::vector<ElementSet> series{g.trivial_subgroup()};
  while (true) {
    const auto& prev = series.back();
    ElementSet next = g.empty_set();
    for (Element a = 0; a < g.order(); ++a) {
      bool ok = true;
      for (Element b = 0; b < g.order() && ok; ++b) ok = prev.contains(g.commutator(a, b));
      if (ok) next.insert(a);
    }
    if (next == prev) break;
    series.push_back(std::move(next));
  }
  return series;
}

QuotientMap quotient(const GroupPtr& gp, const ElementSet& n) {
  const FiniteGroup& g = *gp;
  if (n.universe() != g.order()) throw Error(ErrorKind::PreconditionViolated, "kernel set belongs to another group");
  if (!is_normal(g, n)) throw Error(ErrorKind::NotNormal, "kernel is not a normal subgroup");
  const auto kernel = n.elements();
  QuotientMap q;
  q.parent = gp;
  q.kernel = n;
  constexpr Element kUnassigned = ~Element{0};
  q.projection.assign(g.order(), kUnassigned);
  for (Element x = 0; x < g.order(); ++x) {
    if (q.projection[x] != kUnassigned) continue;
    const auto coset = static_cast<Element>(q.section.size());
    q.section.push_back(x);
    for (auto k : kernel) q.projection[g.mul(x, k)] = coset;
  }
  const std::size_t m = q.section.size();
  std::vector<std::uint16_t> table(m * m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b)
      table[a * m + b] = static_cast<std::uint16_t>(q.projection[g.mul(q.section[a], q.section[b])]);
  q.group = FiniteGroup::from_trusted_table(QuotientRealization{gp, n, q.section}, m, std::move(table));
  return q;
}

}  // namespace ram
