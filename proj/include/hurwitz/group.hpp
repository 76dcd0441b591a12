#pragma once

#include <algorithm>
#include <array>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hurwitz/element_set.hpp"
#include "hurwitz/error.hpp"

namespace hurwitz {

// ---------------------------------------------------------------------------
// Permutations on {1..d}, stored 0-based. Products act left to right:
// (x * y)(p) = y(x(p)).

struct Permutation {
  std::vector<std::uint16_t> images;

  std::size_t degree() const noexcept { return images.size(); }
  bool operator==(const Permutation&) const = default;
  auto operator<=>(const Permutation&) const = default;
};

inline Permutation identity_permutation(std::size_t degree) {
  Permutation p;
  p.images.resize(degree);
  std::iota(p.images.begin(), p.images.end(), std::uint16_t{0});
  return p;
}

inline Permutation compose(const Permutation& x, const Permutation& y) {
  Permutation r;
  r.images.resize(x.degree());
  for (std::size_t i = 0; i < x.degree(); ++i) r.images[i] = y.images[x.images[i]];
  return r;
}

inline Permutation extend(const Permutation& p, std::size_t degree) {
  Permutation r = p;
  for (std::size_t i = p.degree(); i < degree; ++i)
    r.images.push_back(static_cast<std::uint16_t>(i));
  return r;
}

// Cycle notation with 1-based points; the identity is "()".
inline std::string format_permutation(const Permutation& p) {
  std::string out;
  std::vector<bool> seen(p.degree(), false);
  for (std::size_t start = 0; start < p.degree(); ++start) {
    if (seen[start] || p.images[start] == start) continue;
    out += '(';
    std::size_t cur = start;
    bool first = true;
    while (!seen[cur]) {
      seen[cur] = true;
      if (!first) out += ' ';
      out += std::to_string(cur + 1);
      first = false;
      cur = p.images[cur];
    }
    out += ')';
  }
  return out.empty() ? "()" : out;
}

// Parses "(1 2)(3 4)", "(1,2,3)" or "()" into a permutation of at least
// `min_degree` points.
inline Permutation parse_permutation(std::string_view text, std::size_t min_degree = 0) {
  std::vector<std::vector<std::size_t>> cycles;
  std::size_t max_point = 0;
  std::size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_ws();
  if (i == text.size()) throw ParseError("empty permutation string");
  while (i < text.size()) {
    skip_ws();
    if (i == text.size()) break;
    if (text[i] != '(')
      throw ParseError("permutation '" + std::string(text) + "': expected '('");
    ++i;
    std::vector<std::size_t> cycle;
    for (;;) {
      skip_ws();
      if (i < text.size() && text[i] == ',') {
        ++i;
        continue;
      }
      if (i >= text.size())
        throw ParseError("permutation '" + std::string(text) + "': unterminated cycle");
      if (text[i] == ')') {
        ++i;
        break;
      }
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw ParseError("permutation '" + std::string(text) + "': unexpected character '" +
                         std::string(1, text[i]) + "'");
      std::size_t v = 0;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
        v = v * 10 + static_cast<std::size_t>(text[i] - '0');
        if (v > 60000) throw ParseError("permutation point too large");
        ++i;
      }
      if (v == 0) throw ParseError("permutation points are 1-based");
      cycle.push_back(v);
      max_point = std::max(max_point, v);
    }
    cycles.push_back(std::move(cycle));
  }
  Permutation p = identity_permutation(std::max(max_point, min_degree));
  std::vector<bool> used(p.degree(), false);
  for (const auto& cycle : cycles) {
    for (std::size_t j = 0; j < cycle.size(); ++j) {
      std::size_t from = cycle[j] - 1;
      if (used[from])
        throw ParseError("permutation '" + std::string(text) + "': point " +
                         std::to_string(cycle[j]) + " repeated");
      used[from] = true;
      p.images[from] = static_cast<std::uint16_t>(cycle[(j + 1) % cycle.size()] - 1);
    }
  }
  return p;
}

// ---------------------------------------------------------------------------

struct GroupSource {
  std::string kind;         // "builtin", "permutations", "cayley", "product", "subgroup"
  std::string description;  // e.g. "symmetric(4)"
};

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

// A finite group given by its complete multiplication table. Element 0 is the
// identity. Immutable after construction.
class FiniteGroup {
 public:
  static constexpr std::size_t kDefaultMaxOrder = 10000;

  // table[a][b] is the id of a*b. The identity is moved to id 0; all other
  // elements keep their relative order.
  static FiniteGroup from_cayley(const std::vector<std::vector<std::size_t>>& table,
                                 std::vector<std::string> labels, GroupSource source,
                                 std::size_t max_order = kDefaultMaxOrder) {
    const std::size_t n = table.size();
    if (n == 0) throw ParseError("multiplication table is empty");
    if (n > max_order)
      throw ParseError("group order " + std::to_string(n) + " exceeds the maximum " +
                       std::to_string(max_order));
    for (const auto& row : table) {
      if (row.size() != n) throw ParseError("multiplication table is not square");
      for (auto v : row)
        if (v >= n) throw ParseError("multiplication table entry out of range");
    }
    std::optional<std::size_t> e;
    for (std::size_t x = 0; x < n && !e; ++x) {
      bool ok = true;
      for (std::size_t y = 0; y < n && ok; ++y) ok = table[x][y] == y && table[y][x] == y;
      if (ok) e = x;
    }
    if (!e) throw ParseError("multiplication table has no identity element");

    std::vector<std::size_t> order_ids;  // new id -> old id
    order_ids.push_back(*e);
    for (std::size_t x = 0; x < n; ++x)
      if (x != *e) order_ids.push_back(x);
    std::vector<std::size_t> new_of(n);
    for (std::size_t i = 0; i < n; ++i) new_of[order_ids[i]] = i;

    if (labels.empty()) {
      for (std::size_t i = 0; i < n; ++i) labels.push_back(std::to_string(i));
    }
    if (labels.size() != n) throw ParseError("label count does not match group order");

    FiniteGroup g;
    g.n_ = n;
    g.source_ = std::move(source);
    g.table_.resize(n * n);
    g.labels_.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      g.labels_[a] = labels[order_ids[a]];
      for (std::size_t b = 0; b < n; ++b)
        g.table_[a * n + b] =
            static_cast<std::uint16_t>(new_of[table[order_ids[a]][order_ids[b]]]);
    }
    g.finish_and_validate();
    return g;
  }

  // Closure of the generators, enumerated breadth-first: element ids follow
  // discovery order starting from the identity, right-multiplying by the
  // generators in the given order.
  static FiniteGroup from_permutations(std::span<const Permutation> gens, GroupSource source,
                                       std::size_t max_order = kDefaultMaxOrder) {
    std::size_t degree = 1;
    for (const auto& p : gens) degree = std::max(degree, p.degree());
    std::vector<Permutation> ext;
    for (const auto& p : gens) ext.push_back(extend(p, degree));

    std::vector<Permutation> elems{identity_permutation(degree)};
    std::map<Permutation, std::size_t> index{{elems[0], 0}};
    for (std::size_t head = 0; head < elems.size(); ++head) {
      for (const auto& gen : ext) {
        Permutation y = compose(elems[head], gen);
        if (index.emplace(y, elems.size()).second) {
          elems.push_back(std::move(y));
          if (elems.size() > max_order)
            throw ParseError("group order exceeds the maximum " + std::to_string(max_order));
        }
      }
    }
    const std::size_t n = elems.size();
    FiniteGroup g;
    g.n_ = n;
    g.source_ = std::move(source);
    g.table_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b)
        g.table_[a * n + b] = static_cast<std::uint16_t>(index.at(compose(elems[a], elems[b])));
    for (const auto& p : elems) g.labels_.push_back(format_permutation(p));
    g.perms_ = std::move(elems);
    g.perm_index_ = std::move(index);
    g.finish_and_validate();
    return g;
  }

  std::size_t order() const noexcept { return n_; }
  element_id identity() const noexcept { return 0; }

  element_id mul(element_id a, element_id b) const noexcept { return table_[a * n_ + b]; }
  element_id inv(element_id a) const noexcept { return inv_[a]; }
  // a b a^-1
  element_id conj(element_id a, element_id b) const noexcept { return mul(mul(a, b), inv(a)); }
  // a b a^-1 b^-1
  element_id commutator(element_id a, element_id b) const noexcept {
    return mul(mul(a, b), mul(inv(a), inv(b)));
  }
  element_id power(element_id a, std::int64_t e) const noexcept {
    std::int64_t ord = static_cast<std::int64_t>(order_[a]);
    e %= ord;
    if (e < 0) e += ord;
    element_id r = identity();
    for (std::int64_t i = 0; i < e; ++i) r = mul(r, a);
    return r;
  }

  std::size_t element_order(element_id a) const noexcept { return order_[a]; }
  std::size_t exponent() const noexcept { return exponent_; }
  bool is_abelian() const noexcept { return abelian_; }

  const std::string& label(element_id a) const { return labels_[a]; }
  const std::vector<std::string>& labels() const noexcept { return labels_; }
  const GroupSource& source() const noexcept { return source_; }

  bool is_permutation_group() const noexcept { return !perms_.empty(); }
  const Permutation& permutation(element_id a) const { return perms_.at(a); }

  std::optional<element_id> find(std::string_view text) const {
    std::string key = trim(text);
    if (auto it = label_index_.find(key); it != label_index_.end()) return it->second;
    if (key == "1" || key == "e" || key == "()" || key == "id") return identity();
    if (is_permutation_group() && !key.empty() && key.front() == '(') {
      try {
        Permutation p = parse_permutation(key, perms_.front().degree());
        if (p.degree() != perms_.front().degree()) return std::nullopt;
        if (auto it = perm_index_.find(p); it != perm_index_.end())
          return static_cast<element_id>(it->second);
      } catch (const ParseError&) {
        return std::nullopt;
      }
    }
    // cyclic-style "g^1"
    if (key.size() > 2 && key.ends_with("^1")) return find(key.substr(0, key.size() - 2));
    return std::nullopt;
  }

  element_id parse_element(std::string_view text) const {
    if (auto id = find(text)) return *id;
    throw ParseError("'" + trim(text) + "' is not an element of " + source_.description);
  }

 private:
  FiniteGroup() = default;

  void finish_and_validate() {
    const std::size_t n = n_;
    for (std::size_t x = 0; x < n; ++x)
      if (mul(0, static_cast<element_id>(x)) != x || mul(static_cast<element_id>(x), 0) != x)
        throw ParseError("element 0 is not a two-sided identity");
    // Latin square => inverses exist.
    inv_.assign(n, 0);
    for (std::size_t a = 0; a < n; ++a) {
      std::vector<bool> row(n, false), col(n, false);
      std::optional<element_id> inv;
      for (std::size_t b = 0; b < n; ++b) {
        auto ab = mul(static_cast<element_id>(a), static_cast<element_id>(b));
        auto ba = mul(static_cast<element_id>(b), static_cast<element_id>(a));
        if (row[ab] || col[ba]) throw ParseError("multiplication table is not a Latin square");
        row[ab] = col[ba] = true;
        if (ab == 0) inv = static_cast<element_id>(b);
      }
      if (!inv || mul(*inv, static_cast<element_id>(a)) != 0)
        throw ParseError("element without two-sided inverse");
      inv_[a] = *inv;
    }
    auto assoc = [&](element_id a, element_id b, element_id c) {
      return mul(mul(a, b), c) == mul(a, mul(b, c));
    };
    if (n <= 64) {
      for (element_id a = 0; a < n; ++a)
        for (element_id b = 0; b < n; ++b)
          for (element_id c = 0; c < n; ++c)
            if (!assoc(a, b, c)) throw ParseError("multiplication table is not associative");
    } else {
      std::mt19937_64 rng(0x5eed);
      std::uniform_int_distribution<element_id> pick(0, static_cast<element_id>(n - 1));
      for (int i = 0; i < 100000; ++i)
        if (!assoc(pick(rng), pick(rng), pick(rng)))
          throw ParseError("multiplication table is not associative");
    }
    order_.assign(n, 1);
    exponent_ = 1;
    for (element_id a = 0; a < n; ++a) {
      std::size_t k = 1;
      for (element_id x = a; x != 0; x = mul(x, a)) ++k;
      order_[a] = k;
      exponent_ = std::lcm(exponent_, order_[a]);
    }
    abelian_ = true;
    for (element_id a = 0; a < n && abelian_; ++a)
      for (element_id b = 0; b < a && abelian_; ++b) abelian_ = mul(a, b) == mul(b, a);
    for (element_id a = 0; a < n; ++a) {
      if (!label_index_.emplace(labels_[a], a).second)
        throw ParseError("duplicate element label '" + labels_[a] + "'");
    }
  }

  std::size_t n_ = 0;
  std::vector<std::uint16_t> table_;
  std::vector<element_id> inv_;
  std::vector<std::size_t> order_;
  std::size_t exponent_ = 1;
  bool abelian_ = true;
  std::vector<std::string> labels_;
  std::unordered_map<std::string, element_id> label_index_;
  GroupSource source_;
  std::vector<Permutation> perms_;
  std::map<Permutation, std::size_t> perm_index_;
};

// ---------------------------------------------------------------------------
// Builtin families.

inline FiniteGroup symmetric_group(std::size_t d) {
  if (d < 1) throw ParseError("symmetric(d) requires d >= 1");
  std::vector<Permutation> gens;
  if (d >= 2) {
    gens.push_back(parse_permutation("(1 2)", d));
    Permutation cyc = identity_permutation(d);
    for (std::size_t i = 0; i < d; ++i) cyc.images[i] = static_cast<std::uint16_t>((i + 1) % d);
    gens.push_back(cyc);
  }
  return FiniteGroup::from_permutations(
      gens, {"builtin", "symmetric(" + std::to_string(d) + ")"});
}

inline FiniteGroup alternating_group(std::size_t d) {
  if (d < 1) throw ParseError("alternating(d) requires d >= 1");
  std::vector<Permutation> gens;
  if (d >= 3) {
    gens.push_back(parse_permutation("(1 2 3)", d));
    Permutation cyc = identity_permutation(d);
    std::size_t start = d % 2 == 1 ? 0 : 1;
    for (std::size_t i = start; i < d; ++i)
      cyc.images[i] = static_cast<std::uint16_t>(i + 1 < d ? i + 1 : start);
    gens.push_back(cyc);
  }
  return FiniteGroup::from_permutations(
      gens, {"builtin", "alternating(" + std::to_string(d) + ")"});
}

// Elements 1, g, g^2, ..., g^(n-1).
inline FiniteGroup cyclic_group(std::size_t n) {
  if (n < 1) throw ParseError("cyclic(n) requires n >= 1");
  std::vector<std::vector<std::size_t>> table(n, std::vector<std::size_t>(n));
  std::vector<std::string> labels;
  for (std::size_t a = 0; a < n; ++a) {
    labels.push_back(a == 0 ? "1" : a == 1 ? "g" : "g^" + std::to_string(a));
    for (std::size_t b = 0; b < n; ++b) table[a][b] = (a + b) % n;
  }
  return FiniteGroup::from_cayley(table, labels,
                                  {"builtin", "cyclic(" + std::to_string(n) + ")"});
}

// Dihedral group of order 2n acting on the vertices of an n-gon.
inline FiniteGroup dihedral_group(std::size_t n) {
  if (n < 3) throw ParseError("dihedral(n) requires n >= 3");
  Permutation r = identity_permutation(n), s = identity_permutation(n);
  for (std::size_t i = 0; i < n; ++i) {
    r.images[i] = static_cast<std::uint16_t>((i + 1) % n);
    s.images[i] = static_cast<std::uint16_t>((n - i) % n);
  }
  std::vector<Permutation> gens{r, s};
  return FiniteGroup::from_permutations(
      gens, {"builtin", "dihedral(" + std::to_string(n) + ")"});
}

inline FiniteGroup quaternion_group() {
  // Units +-1, +-i, +-j, +-k encoded as sign * basis index (0=1, 1=i, 2=j, 3=k).
  static constexpr std::array<std::array<int, 4>, 4> unit_sign{
      {{1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}}};
  static constexpr std::array<std::array<int, 4>, 4> unit_basis{
      {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}};
  const std::array<std::string, 4> names{"1", "i", "j", "k"};
  std::vector<std::string> labels;
  for (int b = 0; b < 4; ++b)
    for (int s = 0; s < 2; ++s) labels.push_back((s ? "-" : "") + names[b]);
  auto id_of = [](int sign, int basis) { return static_cast<std::size_t>(basis * 2 + (sign < 0)); };
  std::vector<std::vector<std::size_t>> table(8, std::vector<std::size_t>(8));
  for (int a = 0; a < 8; ++a)
    for (int b = 0; b < 8; ++b) {
      int sa = (a % 2) ? -1 : 1, ba = a / 2;
      int sb = (b % 2) ? -1 : 1, bb = b / 2;
      table[a][b] = id_of(sa * sb * unit_sign[ba][bb], unit_basis[ba][bb]);
    }
  return FiniteGroup::from_cayley(table, labels, {"builtin", "quaternion(8)"});
}

// Pairs (a, b) in lexicographic id order.
inline FiniteGroup direct_product(const FiniteGroup& a, const FiniteGroup& b,
                                  std::size_t max_order = FiniteGroup::kDefaultMaxOrder) {
  const std::size_t na = a.order(), nb = b.order();
  if (na * nb > max_order)
    throw ParseError("group order " + std::to_string(na * nb) + " exceeds the maximum " +
                     std::to_string(max_order));
  std::vector<std::vector<std::size_t>> table(na * nb, std::vector<std::size_t>(na * nb));
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < na * nb; ++x) {
    labels.push_back("[" + a.label(static_cast<element_id>(x / nb)) + "," +
                     b.label(static_cast<element_id>(x % nb)) + "]");
    for (std::size_t y = 0; y < na * nb; ++y)
      table[x][y] = a.mul(static_cast<element_id>(x / nb), static_cast<element_id>(y / nb)) * nb +
                    b.mul(static_cast<element_id>(x % nb), static_cast<element_id>(y % nb));
  }
  return FiniteGroup::from_cayley(
      table, labels,
      {"product", a.source().description + " x " + b.source().description}, max_order);
}

// Splits a tuple literal "(1 2),(1 3)" on commas outside brackets.
inline std::vector<std::string> split_top_level(std::string_view text, char sep = ',') {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char ch : text) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == sep && depth == 0) {
      parts.push_back(trim(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (!trim(cur).empty() || !parts.empty()) parts.push_back(trim(cur));
  return parts;
}

}  // namespace hurwitz
