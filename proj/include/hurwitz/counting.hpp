#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/exact.hpp"
#include "hurwitz/likely_maps.hpp"
#include "hurwitz/orbit_engine.hpp"

namespace hurwitz {

struct LeadingMonomial {
  std::int64_t degree = 0;
  Rational coefficient = 0;
  bool operator==(const LeadingMonomial&) const = default;
};

struct H2Value {
  BigInt value = 1;
  std::string provenance = "user-supplied";  // or "empirical", "table"
  std::string evidence;
};

inline H2Value h2_user(const BigInt& v) {
  if (v < 1) throw PreconditionError("h2 must be a positive integer");
  return {v, "user-supplied", ""};
}

inline std::int64_t splitting_number(const ClassSetup& s) { return static_cast<std::int64_t>(s.omega()); }

// prod over blocks of xi^(m-1) / (m-1)!, m the number of classes in the block
inline Rational likely_coefficient(const ClassSetup& s) {
  Rational c = 1;
  for (std::size_t b = 0; b < s.num_blocks(); ++b) {
    std::uint64_t m = s.fiber_size(b);
    c *= Rational(pow_int(BigInt(s.xi(b)), m - 1), factorial(m - 1));
  }
  return c;
}

inline LeadingMonomial likely_leading_monomial(const ClassSetup& s) {
  return {splitting_number(s), likely_coefficient(s)};
}

inline const Subgroup& commutator_subgroup(const ClassSetup& s) { return s.abelian().commutator_subgroup; }

inline LeadingMonomial affine_leading_monomial(const ClassSetup& s, const H2Value& h2) {
  Rational c = Rational(BigInt(commutator_subgroup(s).order())) * Rational(h2.value) * likely_coefficient(s);
  return {splitting_number(s), c};
}

// image of xi: sum over blocks of xi(b) times the class of any block element
inline AbelianElement pi_tilde_of_xi(const ClassSetup& s) {
  const auto& ab = s.abelian();
  AbelianElement r = ab.zero();
  for (std::size_t b = 0; b < s.num_blocks(); ++b)
    r = ab.add(r, ab.scale(ab.project(block_elements(s, b).front()), s.xi(b)));
  return r;
}

struct ProjectiveStable {
  std::int64_t k = 1;
  BigInt stable_value = 1;
  Rational average = 1;
};

inline ProjectiveStable projective_stable_prediction(const ClassSetup& s, const H2Value& h2) {
  if (s.omega() != 0) throw PreconditionError("projective stable prediction needs a non-splitting setup");
  ProjectiveStable p;
  p.k = s.abelian().order_of(pi_tilde_of_xi(s));
  p.stable_value = h2.value;
  p.average = Rational(h2.value, BigInt(p.k));
  return p;
}

inline bool single_block_unit_xi(const ClassSetup& s) { return s.num_blocks() == 1 && s.xi(0) == 1; }

inline LeadingMonomial projective_average_order(const ClassSetup& s, const H2Value& h2) {
  if (!single_block_unit_xi(s))
    throw PreconditionError("average order formula needs a single block with xi = 1");
  std::uint64_t sz = s.num_dstar();
  return {static_cast<std::int64_t>(sz) - 1,
          Rational(h2.value, BigInt(s.abelian().ab_order) * factorial(sz - 1))};
}

struct EqualDegreeCoefficients {
  Rational q0;
  Rational subsequence;  // leading coefficient along n = d, 2d, 3d, ...
};

inline EqualDegreeCoefficients equal_degree_generator_coefficient(const ClassSetup& s, const H2Value& h2,
                                                                  std::int64_t d) {
  if (!single_block_unit_xi(s))
    throw PreconditionError("equal-degree coefficient needs a single block with xi = 1");
  if (d < 1) throw PreconditionError("generator degree must be positive");
  std::uint64_t sz = s.num_dstar();
  Rational base(h2.value, BigInt(s.abelian().ab_order) * factorial(sz - 1));
  return {base * d, base * Rational(pow_int(BigInt(d), sz))};
}

// Leading monomial of P_d, a polynomial in n/2, for S_d with transpositions.
inline LeadingMonomial symmetric_leading_monomial(std::int64_t d) {
  if (d < 2) throw PreconditionError("symmetric leading monomial needs d >= 2");
  std::uint64_t dp = static_cast<std::uint64_t>(d / 2);
  Rational c(factorial(static_cast<std::uint64_t>(d)),
             pow_int(BigInt(2), dp) * factorial(dp) * factorial(dp - 1));
  if (d % 2 == 1) c *= Rational(3 + dp, 3);
  return {static_cast<std::int64_t>(dp) - 1, c};
}

struct ReallyLikelyCount {
  BigInt exact = 0;
  std::optional<LeadingMonomial> predicted;  // n^s / (|G^ab| s!), single block with xi = 1 only
};

inline ReallyLikelyCount count_really_likely_upto(const ClassSetup& s, std::int64_t n) {
  if (n < 0) throw PreconditionError("degree must be nonnegative");
  ReallyLikelyCount r;
  for (std::int64_t m = 0; m <= n; ++m)
    for_each_likely_map(s, m, [&](const Multidiscriminant& psi) {
      if (is_really_likely(psi, s)) r.exact += 1;
      return true;
    });
  if (single_block_unit_xi(s)) {
    std::uint64_t sz = s.num_dstar();
    r.predicted = LeadingMonomial{static_cast<std::int64_t>(sz),
                                  Rational(BigInt(1), BigInt(s.abelian().ab_order) * factorial(sz))};
  }
  return r;
}

// Image of pi-tilde over likely maps of degree <= max_degree.
inline std::set<std::vector<std::int64_t>> pi_tilde_image(const ClassSetup& s, std::int64_t max_degree) {
  std::set<std::vector<std::int64_t>> out;
  for (std::int64_t m = 0; m <= max_degree; ++m)
    for_each_likely_map(s, m, [&](const Multidiscriminant& psi) {
      out.insert(abelianized_product(psi, s).coords);
      return true;
    });
  return out;
}

struct H2Estimate {
  bool stabilized = false;
  H2Value value;
  std::vector<std::pair<std::int64_t, std::uint64_t>> series;  // (n, |F_psi|) at the balanced psi
  std::string failure;
};

// Number of affine components of group G with multidiscriminant psi.
inline std::uint64_t affine_fiber_size(const ClassSetup& s, const Multidiscriminant& psi,
                                       const EngineConfig& cfg = {}) {
  return components_by_multidiscriminant(s, psi, Space::affine, Connectedness::connected, cfg).size();
}

inline H2Estimate estimate_h2c(const ClassSetup& s, std::int64_t n_max, std::int64_t window = 3,
                               const EngineConfig& cfg = {}) {
  if (window < 1) throw PreconditionError("window must be positive");
  H2Estimate est;
  const std::uint64_t comm = commutator_subgroup(s).order();
  std::int64_t run = 0;
  std::uint64_t last = 0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    auto psi = balanced_likely_map(s, n);
    std::uint64_t f;
    try {
      f = affine_fiber_size(s, psi, cfg);
    } catch (const BudgetExceeded& e) {
      est.failure = std::string("budget exceeded at n = ") + std::to_string(n) + ": " + e.what();
      return est;
    }
    est.series.emplace_back(n, f);
    run = (f == last && f != 0) ? run + 1 : 1;
    last = f;
    if (f != 0 && run >= window) {
      if (f % comm != 0) {
        est.failure = "plateau " + std::to_string(f) + " is not divisible by |[G,G]| = " + std::to_string(comm);
        return est;
      }
      est.stabilized = true;
      est.value.value = f / comm;
      est.value.provenance = "empirical";
      est.value.evidence = "|F_psi| = " + std::to_string(f) + " at balanced psi for n = " +
                           std::to_string(n - window + 1) + ".." + std::to_string(n) +
                           ", |[G,G]| = " + std::to_string(comm);
      return est;
    }
  }
  est.failure = "no plateau of length " + std::to_string(window) + " up to n = " + std::to_string(n_max);
  return est;
}

// Components of group G at degree n whose multidiscriminant has a class
// below M.
inline BigInt count_M_small(const ClassSetup& s, std::int64_t n, std::int64_t M, Space space,
                            const EngineConfig& cfg = {}) {
  if (M <= 0) return 0;
  auto res = count_components(s, n, space, Connectedness::connected, cfg);
  BigInt total = 0;
  for (const auto& b : res.buckets)
    if (b.psi.min() < M) total += b.components;
  return total;
}

// Known |H2(G,c)| for some builtin groups; used only on request.
inline std::optional<H2Value> h2_table_lookup(const ClassSetup& s) {
  const auto& src = s.group().source();
  if (src.kind != "builtin") return std::nullopt;
  const std::string& d = src.description;
  auto starts = [&](const char* p) { return d.rfind(p, 0) == 0; };
  if (starts("cyclic(")) return H2Value{1, "table", "Schur multiplier of a cyclic group is trivial"};
  if (starts("quaternion(")) return H2Value{1, "table", "Schur multiplier of Q8 is trivial"};
  if (starts("dihedral(")) {
    auto n = std::stoll(d.substr(9));
    if (n % 2 == 1) return H2Value{1, "table", "Schur multiplier of D_n is trivial for odd n"};
    return std::nullopt;
  }
  if (starts("symmetric(")) {
    const auto& g = s.group();
    auto t = g.parse_element("(1 2)");
    auto cls = s.classes().class_of[t];
    bool only_transpositions = s.num_dstar() == 1 && s.dstar_class(0) == cls;
    if (only_transpositions)
      return H2Value{1, "table", "transpositions in S_d: simply branched covers, trivial lifting invariant"};
  }
  return std::nullopt;
}

using json = nlohmann::json;

struct Prediction {
  LeadingMonomial monomial;
  std::string formula;  // "affine-leading", "projective-stable", "projective-average", "symmetric-transpositions", "projective-equal-degree"
  json inputs = json::object();
};

inline json to_json(const Prediction& p) {
  return json{{"degree", p.monomial.degree},
              {"coefficient_num", to_string(BigInt(numerator(p.monomial.coefficient)))},
              {"coefficient_den", to_string(BigInt(denominator(p.monomial.coefficient)))},
              {"formula", p.formula},
              {"inputs", p.inputs}};
}

inline json h2_json(const H2Value& h) {
  json j{{"value", to_string(h.value)}, {"provenance", h.provenance}};
  if (!h.evidence.empty()) j["evidence"] = h.evidence;
  return j;
}

// All predictions that apply to the setup.
inline std::vector<Prediction> predictions(const ClassSetup& s, const H2Value& h2) {
  std::vector<Prediction> out;
  json base{{"setup", s.describe()}, {"h2", h2_json(h2)}, {"omega", splitting_number(s)},
            {"commutator_order", commutator_subgroup(s).order()}, {"ab_order", s.abelian().ab_order}};
  out.push_back({affine_leading_monomial(s, h2), "affine-leading", base});
  if (s.omega() == 0) {
    auto p = projective_stable_prediction(s, h2);
    json in = base;
    in["k"] = p.k;
    in["stable_value"] = to_string(p.stable_value);
    out.push_back({{0, p.average}, "projective-stable", in});
  }
  if (single_block_unit_xi(s)) {
    json in = base;
    in["s"] = s.num_dstar();
    out.push_back({projective_average_order(s, h2), "projective-average", in});
  }
  const auto& src = s.group().source();
  if (src.kind == "builtin" && src.description.rfind("symmetric(", 0) == 0 && h2_table_lookup(s)) {
    std::int64_t d = std::stoll(src.description.substr(10));
    if (d >= 2) {
      json in = base;
      in["d"] = d;
      in["variable"] = "n/2";
      out.push_back({symmetric_leading_monomial(d), "symmetric-transpositions", in});
    }
  }
  return out;
}

}  // namespace hurwitz
