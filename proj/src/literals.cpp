#include "ram/literals.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <optional>

#ifndef RAM_DATA_DIR
#define RAM_DATA_DIR "data"
#endif

namespace ram {

namespace {

class Cursor {
 public:
  explicit Cursor(std::string_view text) : text_(text) {}

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool at_end() {
    skip_ws();
    return pos_ >= text_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }
  /// Case-insensitive keyword.
  bool accept_word(std::string_view w) {
    skip_ws();
    if (text_.size() - pos_ < w.size()) return false;
    for (std::size_t i = 0; i < w.size(); ++i)
      if (std::tolower(static_cast<unsigned char>(text_[pos_ + i])) != w[i]) return false;
    pos_ += w.size();
    return true;
  }
  std::optional<long long> accept_int(bool allow_sign) {
    skip_ws();
    const auto start = pos_;
    bool neg = false;
    if (allow_sign && pos_ < text_.size() && (text_[pos_] == '-' || text_[pos_] == '+')) {
      neg = text_[pos_] == '-';
      ++pos_;
      skip_ws();
    }
    if (pos_ >= text_.size() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      pos_ = start;
      return std::nullopt;
    }
    long long v = 0;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      if (v > std::numeric_limits<long long>::max() / 10 - 10) error("integer too large");
      v = v * 10 + (text_[pos_] - '0');
      ++pos_;
    }
    return neg ? -v : v;
  }
  long long expect_int(bool allow_sign) {
    auto v = accept_int(allow_sign);
    if (!v) error("expected an integer");
    return *v;
  }
  std::string accept_name() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_' || text_[pos_] == '\''))
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  /// Run of characters up to whitespace, ',' or ')'.
  std::string accept_path() {
    skip_ws();
    const auto start = pos_;
    while (pos_ < text_.size() && !std::isspace(static_cast<unsigned char>(text_[pos_])) && text_[pos_] != ',' &&
           text_[pos_] != ')')
      ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }

  std::size_t pos() const { return pos_; }
  void reset(std::size_t p) { pos_ = p; }

  [[noreturn]] void error(const std::string& msg) const { throw ParseError(ErrorKind::ParseError, msg, pos_); }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Group specs

GroupSpec parse_spec(Cursor& c);

std::uint32_t checked_order(Cursor& c, long long v) {
  if (v < 2)
    throw ParseError(ErrorKind::InvalidOrder, "cyclic factor order must be >= 2, got " + std::to_string(v), c.pos());
  if (v > static_cast<long long>(kMaxOrder)) throw Error(ErrorKind::OrderTooLarge, "order " + std::to_string(v));
  return static_cast<std::uint32_t>(v);
}

GroupSpec parse_spec(Cursor& c) {
  GroupSpec s;
  if (c.accept_word("heis")) {
    s.kind = GroupSpec::Kind::Heis;
    c.expect('(');
    const auto p = c.expect_int(false);
    if (p == 2 || p > 1000 || !is_prime(static_cast<std::uint64_t>(p)))
      throw ParseError(ErrorKind::InvalidPrime, "heis needs an odd prime, got " + std::to_string(p), c.pos());
    s.p = static_cast<std::uint32_t>(p);
    c.expect(')');
    return s;
  }
  if (c.accept_word("prod")) {
    s.kind = GroupSpec::Kind::Prod;
    c.expect('(');
    s.left = std::make_shared<GroupSpec>(parse_spec(c));
    c.expect(',');
    s.right = std::make_shared<GroupSpec>(parse_spec(c));
    c.expect(')');
    return s;
  }
  if (c.accept_word("cayley")) {
    s.kind = GroupSpec::Kind::Cayley;
    c.expect(':');
    s.path = c.accept_path();
    if (s.path.empty()) c.error("expected a path after 'cayley:'");
    return s;
  }
  if (c.accept_word("abelian")) {
    c.expect('(');
    do s.orders.push_back(checked_order(c, c.expect_int(true)));
    while (c.accept(','));
    c.expect(')');
    return s;
  }
  if (c.accept_word("c")) {
    s.orders.push_back(checked_order(c, c.expect_int(true)));
    while (c.accept_word("x")) {
      if (!c.accept_word("c")) c.error("expected 'C<n>' after 'x'");
      s.orders.push_back(checked_order(c, c.expect_int(true)));
    }
    return s;
  }
  c.error("expected a group: C<n>x..., abelian(...), heis(p), cayley:<path> or prod(a,b)");
}

}  // namespace

GroupSpec parse_group_spec(std::string_view text) {
  Cursor c(text);
  auto s = parse_spec(c);
  if (!c.at_end()) c.error("unexpected trailing input");
  return s;
}

std::string render_spec(const GroupSpec& s) {
  switch (s.kind) {
    case GroupSpec::Kind::Abelian: {
      std::string out;
      for (std::size_t i = 0; i < s.orders.size(); ++i) out += (i ? "xC" : "C") + std::to_string(s.orders[i]);
      return out;
    }
    case GroupSpec::Kind::Heis: return "heis(" + std::to_string(s.p) + ")";
    case GroupSpec::Kind::Cayley: return "cayley:" + s.path;
    case GroupSpec::Kind::Prod: return "prod(" + render_spec(*s.left) + "," + render_spec(*s.right) + ")";
  }
  return {};
}

std::filesystem::path data_dir() {
  if (const char* env = std::getenv("RAM_DATA_DIR"); env && *env) return env;
  return RAM_DATA_DIR;
}

GroupPtr build_group(const GroupSpec& s) {
  switch (s.kind) {
    case GroupSpec::Kind::Abelian: return make_abelian(s.orders);
    case GroupSpec::Kind::Heis: return make_heisenberg(s.p);
    case GroupSpec::Kind::Cayley: {
      std::filesystem::path p = s.path;
      if (!std::filesystem::exists(p)) {
        const auto base = data_dir() / "cayley";
        for (auto cand : {base / s.path, base / (s.path + ".json")})
          if (std::filesystem::exists(cand)) {
            p = cand;
            break;
          }
      }
      return load_cayley_file(p);
    }
    case GroupSpec::Kind::Prod: return direct_product(build_group(*s.left), build_group(*s.right));
  }
  throw Error(ErrorKind::InternalContradiction, "unknown group spec kind");
}

GroupPtr build_group(std::string_view text) { return build_group(parse_group_spec(text)); }

// ---------------------------------------------------------------------------
// Elements

namespace {

class ElementParser {
 public:
  ElementParser(const FiniteGroup& g, Cursor& c) : g_(g), c_(c) {}

  Element expr() {
    Element x = factor();
    while (c_.accept('*')) x = g_.mul(x, factor());
    return x;
  }

 private:
  Element factor() {
    Element x = primary();
    while (c_.accept('^')) x = g_.power(x, c_.expect_int(true));
    return x;
  }

  Element primary() {
    const auto start = c_.pos();
    if (c_.peek() == '(') {
      // Group-specific parenthesized atoms first, then plain grouping.
      try {
        if (auto x = paren_atom()) return *x;
      } catch (const ParseError&) {
      }
      c_.reset(start);
      c_.expect('(');
      const Element x = expr();
      c_.expect(')');
      return x;
    }
    if (auto v = c_.accept_int(false)) {
      if (*v != 1) c_.error("only '1' may stand alone as a number");
      return kIdentity;
    }
    return word_atom();
  }

  std::optional<Element> paren_atom() {
    if (const auto* ab = g_.as<AbelianRealization>()) return abelian_vector(*ab);
    if (const auto* h = g_.as<HeisenbergRealization>()) return heis_triple(*h);
    if (const auto* pr = g_.as<ProductRealization>()) {
      c_.expect('(');
      const Element l = ElementParser(*pr->left, c_).expr();
      c_.expect('|');
      const Element r = ElementParser(*pr->right, c_).expr();
      c_.expect(')');
      return g_.product_pair(l, r);
    }
    return std::nullopt;
  }

  std::vector<long long> int_list() {
    c_.expect('(');
    std::vector<long long> v;
    do v.push_back(c_.expect_int(true));
    while (c_.accept(','));
    c_.expect(')');
    return v;
  }

  Element abelian_vector(const AbelianRealization& ab) {
    const auto v = int_list();
    if (v.size() != ab.orders.size())
      c_.error("expected " + std::to_string(ab.orders.size()) + " coordinates, got " + std::to_string(v.size()));
    std::vector<std::uint32_t> coords;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= ab.orders[i])
        throw Error(ErrorKind::OutOfRange, "coordinate " + std::to_string(i + 1) + " = " + std::to_string(v[i]) +
                                               " outside [0, " + std::to_string(ab.orders[i]) + ")");
      coords.push_back(static_cast<std::uint32_t>(v[i]));
    }
    return g_.from_abelian_coords(coords);
  }

  Element heis_triple(const HeisenbergRealization& h) {
    const auto v = int_list();
    if (v.size() != 3) c_.error("expected a triple (a,b,c)");
    for (auto x : v)
      if (x < 0 || x >= h.p)
        throw Error(ErrorKind::OutOfRange, "Heisenberg coordinate " + std::to_string(x) + " outside [0, " +
                                               std::to_string(h.p) + ")");
    return static_cast<Element>((v[0] * h.p + v[1]) * h.p + v[2]);
  }

  Element word_atom() {
    if (const auto* q = g_.as<QuotientRealization>()) {
      c_.expect('[');
      const Element x = ElementParser(*q->parent, c_).expr();
      c_.expect(']');
      // Coset of x: the representative that shares it.
      for (Element i = 0; i < g_.order(); ++i)
        if (q->kernel.contains(q->parent->mul(q->parent->inv(q->representatives[i]), x))) return i;
      throw Error(ErrorKind::InternalContradiction, "element in no coset");
    }
    if (const auto* cy = g_.as<CayleyRealization>()) {
      if (c_.accept('#')) {
        const auto i = c_.expect_int(false);
        if (i < 0 || static_cast<std::size_t>(i) >= g_.order())
          throw Error(ErrorKind::OutOfRange, "element #" + std::to_string(i) + " outside the group");
        return static_cast<Element>(i);
      }
      const auto start = c_.pos();
      const auto name = c_.accept_name();
      for (std::size_t i = 0; i < cy->names.size(); ++i)
        if (cy->names[i] == name && !name.empty()) return static_cast<Element>(i);
      c_.reset(start);
      c_.error(name.empty() ? "expected an element" : "unknown element name '" + name + "'");
    }
    if (const auto* ab = g_.as<AbelianRealization>()) {
      if (!c_.accept_word("x")) c_.error("expected x<i>, a vector or '1'");
      const auto i = c_.expect_int(false);
      if (i < 1 || static_cast<std::size_t>(i) > ab->orders.size())
        throw Error(ErrorKind::OutOfRange, "generator x" + std::to_string(i) + " does not exist");
      std::vector<std::uint32_t> coords(ab->orders.size(), 0);
      coords[static_cast<std::size_t>(i - 1)] = 1;
      return g_.from_abelian_coords(coords);
    }
    c_.error("expected an element");
  }

  const FiniteGroup& g_;
  Cursor& c_;
};

}  // namespace

Element parse_element(const FiniteGroup& g, std::string_view text) {
  Cursor c(text);
  const Element x = ElementParser(g, c).expr();
  if (!c.at_end()) c.error("unexpected trailing input");
  return x;
}

std::string render_element(const FiniteGroup& g, Element x) {
  if (!g.contains(x)) throw Error(ErrorKind::IndexOutOfRange, "element index out of range");
  if (const auto* ab = g.as<AbelianRealization>()) {
    if (x == kIdentity) return "1";
    const auto c = g.abelian_coords(x);
    std::string out;
    for (std::size_t i = 0; i < c.size(); ++i) {
      if (c[i] == 0) continue;
      if (!out.empty()) out += "*";
      out += "x" + std::to_string(i + 1);
      if (c[i] != 1) out += "^" + std::to_string(c[i]);
    }
    (void)ab;
    return out;
  }
  if (const auto* h = g.as<HeisenbergRealization>()) {
    const auto p = h->p;
    return "(" + std::to_string(x / (p * p)) + "," + std::to_string((x / p) % p) + "," + std::to_string(x % p) + ")";
  }
  if (const auto* cy = g.as<CayleyRealization>()) {
    if (x < cy->names.size() && !cy->names[x].empty()) return cy->names[x];
    return "#" + std::to_string(x);
  }
  if (const auto* pr = g.as<ProductRealization>())
    return "(" + render_element(*pr->left, g.product_left(x)) + "|" + render_element(*pr->right, g.product_right(x)) +
           ")";
  if (const auto* q = g.as<QuotientRealization>())
    return "[" + render_element(*q->parent, q->representatives[x]) + "]";
  return "#" + std::to_string(x);
}

GenTuple parse_tuple(const FiniteGroup& g, std::string_view text) {
  Cursor c(text);
  c.expect('[');
  if (c.accept(']')) c.error("empty tuple");
  GenTuple t;
  do t.push_back(ElementParser(g, c).expr());
  while (c.accept(';'));
  c.expect(']');
  if (!c.at_end()) c.error("unexpected trailing input");
  return t;
}

std::string render_tuple(const FiniteGroup& g, std::span<const Element> t) {
  std::string out = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) out += "; ";
    out += render_element(g, t[i]);
  }
  return out + "]";
}

}  // namespace ram
