#pragma once

#include <chrono>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"

#include "hurwitz/counting.hpp"
#include "hurwitz/factorize.hpp"
#include "hurwitz/orbit_engine.hpp"
#include "hurwitz/quasipoly.hpp"
#include "hurwitz/stable.hpp"

namespace hurwitz {

struct Check {
  std::string name;
  std::string kind;  // "exact", "ratio", "growth"
  bool passed = false;
  bool hard = true;  // soft checks are reported but do not fail the scenario
  std::string enumerated;
  std::string predicted;
  std::string detail;
};

struct ScenarioReport {
  std::string id;
  nlohmann::json inputs = nlohmann::json::object();
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  std::uint64_t samples = 0;
  std::uint64_t states = 0;
  double seconds = 0;

  bool passed() const {
    if (checks.empty()) return false;
    for (const auto& c : checks)
      if (c.hard && !c.passed) return false;
    return true;
  }
  Check& add(Check c) {
    checks.push_back(std::move(c));
    return checks.back();
  }
};

inline nlohmann::json to_json(const ScenarioReport& r) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"kind", c.kind},
                      {"passed", c.passed},
                      {"hard", c.hard},
                      {"enumerated", c.enumerated},
                      {"predicted", c.predicted},
                      {"detail", c.detail}});
  return {{"scenario", r.id}, {"inputs", r.inputs}, {"seed", r.seed}, {"samples", r.samples},
          {"passed", r.passed()}, {"checks", checks}};
}

inline std::string to_text(const ScenarioReport& r) {
  std::ostringstream os;
  os << r.id << ": " << (r.passed() ? "PASS" : "FAIL") << " (" << r.checks.size() << " checks";
  if (r.samples) os << ", " << r.samples << " samples, seed " << r.seed;
  os << ")\n";
  for (const auto& c : r.checks) {
    os << "  [" << (c.passed ? "ok" : (c.hard ? "FAIL" : "note")) << "] " << c.name;
    if (!c.enumerated.empty() || !c.predicted.empty())
      os << ": enumerated " << c.enumerated << ", predicted " << c.predicted;
    if (!c.detail.empty()) os << " (" << c.detail << ")";
    os << '\n';
  }
  return os.str();
}

namespace detail {

inline NielsenTuple random_tuple(std::mt19937_64& rng, const std::vector<element_id>& pool, std::size_t n) {
  NielsenTuple t;
  for (std::size_t i = 0; i < n; ++i) t.entries.push_back(pool[rng() % pool.size()]);
  return t;
}

// random tuple of the given size with product 1 (the last entry closes it)
inline NielsenTuple random_product_one(const FiniteGroup& g, std::mt19937_64& rng, std::size_t n) {
  if (n == 0) return {};
  std::vector<element_id> all(g.order());
  for (element_id x = 0; x < g.order(); ++x) all[x] = x;
  auto t = random_tuple(rng, all, n - 1);
  t.entries.push_back(g.inv(product(g, t)));
  return t;
}

inline NielsenTuple random_braid_image(const FiniteGroup& g, std::mt19937_64& rng, const NielsenTuple& t) {
  if (t.size() < 2) return t;
  NielsenTuple u = t;
  for (int k = 0; k < 6; ++k) u = apply_braid(g, u, 1 + rng() % (t.size() - 1), rng() & 1);
  return u;
}

inline NielsenTuple conj_all(const FiniteGroup& g, element_id a, NielsenTuple t) {
  for (auto& x : t.entries) x = g.conj(a, x);
  return t;
}

inline element_id random_member(const Subgroup& h, std::mt19937_64& rng) {
  auto e = h.elements.elements();
  return e[rng() % e.size()];
}

}  // namespace detail

// Each braid-group identity on `samples` random tuples, checked with the orbit
// oracle. Tuples stay short (total size <= 5) to keep orbits small.
inline ScenarioReport run_identity_suite(const FiniteGroup& g, std::size_t samples, std::uint64_t seed = 1,
                                         const EngineConfig& cfg = {}) {
  using detail::random_tuple;
  auto t0 = std::chrono::steady_clock::now();
  ScenarioReport rep;
  rep.id = "identities " + g.source().description;
  rep.seed = seed;
  rep.inputs = {{"group", g.source().description}, {"samples", samples}};
  std::mt19937_64 rng(seed);
  std::vector<element_id> all(g.order());
  for (element_id x = 0; x < g.order(); ++x) all[x] = x;
  auto sizes = [&](std::size_t lo, std::size_t hi) { return lo + rng() % (hi - lo + 1); };

  struct Clause {
    const char* name;
    std::function<std::optional<std::string>()> run;  // counterexample text on failure
  };
  auto show = [&](const NielsenTuple& t) { return "[" + format_tuple(g, t) + "]"; };
  auto same = [&](const NielsenTuple& a, const NielsenTuple& b) { return same_orbit(g, a, b, cfg); };

  std::vector<Clause> clauses{
      {"(i) concatenation respects orbits",
       [&]() -> std::optional<std::string> {
         auto a = random_tuple(rng, all, sizes(1, 3)), b = random_tuple(rng, all, sizes(1, 2));
         auto a2 = detail::random_braid_image(g, rng, a), b2 = detail::random_braid_image(g, rng, b);
         if (same(concatenate(a, b), concatenate(a2, b2))) return std::nullopt;
         return show(a) + show(b) + " vs " + show(a2) + show(b2);
       }},
      {"(ii) passing a block across",
       [&]() -> std::optional<std::string> {
         auto a = random_tuple(rng, all, sizes(1, 3)), b = random_tuple(rng, all, sizes(1, 2));
         auto ab = concatenate(a, b);
         auto left = concatenate(detail::conj_all(g, product(g, a), b), a);
         auto right = concatenate(b, detail::conj_all(g, g.inv(product(g, b)), a));
         if (same(ab, left) && same(ab, right)) return std::nullopt;
         return show(a) + show(b);
       }},
      {"(iii) product-one blocks commute",
       [&]() -> std::optional<std::string> {
         auto a = detail::random_product_one(g, rng, sizes(2, 3)), b = random_tuple(rng, all, sizes(1, 2));
         if (same(concatenate(a, b), concatenate(b, a))) return std::nullopt;
         return show(a) + show(b);
       }},
      {"(iv) rotation of product-one tuples",
       [&]() -> std::optional<std::string> {
         auto a = detail::random_product_one(g, rng, sizes(2, 5));
         auto r = a;
         std::rotate(r.entries.begin(), r.entries.begin() + 1, r.entries.end());
         if (same(a, r)) return std::nullopt;
         return show(a);
       }},
      {"(v) conjugation by the generated group",
       [&]() -> std::optional<std::string> {
         auto a = detail::random_product_one(g, rng, sizes(2, 5));
         auto gam = detail::random_member(generated_subgroup(g, a), rng);
         if (same(a, detail::conj_all(g, gam, a))) return std::nullopt;
         return show(a) + " by " + g.label(gam);
       }},
      {"(vi) conjugating an inner product-one block",
       [&]() -> std::optional<std::string> {
         auto a = random_tuple(rng, all, sizes(1, 2)), b = detail::random_product_one(g, rng, 2),
              c = random_tuple(rng, all, 1);
         auto gam = detail::random_member(generated_subgroup(g, concatenate(a, c)), rng);
         auto lhs = concatenate(concatenate(a, b), c);
         auto rhs = concatenate(concatenate(a, detail::conj_all(g, gam, b)), c);
         if (same(lhs, rhs)) return std::nullopt;
         return show(a) + show(b) + show(c) + " by " + g.label(gam);
       }},
  };
  for (auto& cl : clauses) {
    Check c{cl.name, "exact", true, true, "", "", ""};
    std::size_t done = 0;
    try {
      for (; done < samples; ++done) {
        if (auto bad = cl.run()) {
          c.passed = false;
          c.detail = "counterexample " + *bad;
          break;
        }
      }
    } catch (const BudgetExceeded& e) {
      c.passed = false;
      c.detail = std::string("budget exceeded: ") + e.what();
    }
    if (samples == 0) {
      c.passed = false;
      c.detail = "no samples";
    }
    if (c.passed) c.detail = std::to_string(done) + " samples";
    rep.add(c);
  }
  rep.samples = samples;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

struct GrowthOptions {
  std::optional<H2Value> h2;
  std::int64_t max_period = 6;
  Rational ratio_tolerance = Rational(15, 100);
  bool strict_ratios = false;
};

struct GrowthData {
  std::vector<BigInt> affine, projective;  // connected counts, index n
  std::uint64_t k_obs = 0;                 // max |F_psi| seen (affine, connected)
  std::vector<BigInt> likely;
  std::int64_t seed_degree = 0;
};

inline std::string join(const std::vector<BigInt>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + to_string(v[i]);
  return s;
}

// Enumerated connected counts against degree, leading coefficient, stable
// values and average order, plus the upper and shifted lower bounds.
inline ScenarioReport run_growth_suite(const ClassSetup& s, std::int64_t n_max, const GrowthOptions& opt = {},
                                       const EngineConfig& cfg = {}, GrowthData* out = nullptr) {
  auto t0 = std::chrono::steady_clock::now();
  ScenarioReport rep;
  rep.id = "growth " + s.describe();
  rep.inputs = {{"setup", s.describe()}, {"n_max", n_max}};
  if (opt.h2) rep.inputs["h2"] = h2_json(*opt.h2);
  const std::int64_t omega = splitting_number(s);
  GrowthData d;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    auto a = count_components(s, n, Space::affine, Connectedness::connected, cfg);
    auto p = count_components(s, n, Space::projective, Connectedness::connected, cfg);
    d.affine.push_back(a.total);
    d.projective.push_back(p.total);
    d.k_obs = std::max(d.k_obs, a.max_bucket());
    d.likely.push_back(count_likely_maps(s, n));
    rep.states += a.states + p.states;
  }
  auto seq_of = [](const std::vector<BigInt>& v) {
    std::map<std::int64_t, BigInt> m;
    for (std::size_t i = 0; i < v.size(); ++i) m[static_cast<std::int64_t>(i)] = v[i];
    return m;
  };
  rep.inputs["affine_counts"] = join(d.affine);
  rep.inputs["projective_counts"] = join(d.projective);

  // affine: degree and closed-form leading coefficient
  std::optional<QuasiPolynomial> fa;
  try {
    fa = fit_quasipolynomial(seq_of(d.affine), opt.max_period, omega + 2);
  } catch (const QuasiPolyFitError& e) {
    rep.add({"affine fit", "growth", false, true, join(d.affine), "", e.what()});
  }
  if (fa) {
    auto lead = average_order_leading(*fa);
    rep.add({"affine degree equals splitting number", "exact", lead.degree == omega, true,
             std::to_string(lead.degree), std::to_string(omega),
             "W=" + std::to_string(fa->period) + ", onset " + std::to_string(fa->onset)});
    if (opt.h2) {
      auto pred = affine_leading_monomial(s, *opt.h2);
      rep.add({"affine leading coefficient", "exact",
               lead.degree == pred.degree && lead.coefficient == pred.coefficient, true, to_string(lead.coefficient),
               to_string(pred.coefficient), ""});
    }
  }

  // projective
  if (omega == 0 && opt.h2) {
    auto ps = projective_stable_prediction(s, *opt.h2);
    bool zeros = true;
    for (std::int64_t n = 1; n <= n_max; ++n)
      if (n % ps.k != 0 && d.projective[static_cast<std::size_t>(n)] != 0) zeros = false;
    rep.add({"projective counts vanish off multiples of k", "exact", zeros, true,
             join(d.projective), "0 off multiples of " + std::to_string(ps.k), ""});
    // stable value on the last three multiples of k
    std::vector<BigInt> tail;
    for (std::int64_t n = n_max; n >= 1 && tail.size() < 3; --n)
      if (n % ps.k == 0) tail.push_back(d.projective[static_cast<std::size_t>(n)]);
    bool stable = tail.size() == 3;
    for (const auto& v : tail) stable = stable && v == ps.stable_value;
    rep.add({"projective stable value", "exact", stable, true, join(tail), to_string(ps.stable_value),
             "last three multiples of k = " + std::to_string(ps.k)});
  }
  if (single_block_unit_xi(s) && opt.h2) {
    BigInt cum = 0;
    for (const auto& v : d.projective) cum += v;
    auto avg = projective_average_order(s, *opt.h2);
    std::uint64_t sz = s.num_dstar();
    Rational pred = Rational(opt.h2->value) * Rational(pow_int(BigInt(n_max), sz)) /
                    Rational(BigInt(s.abelian().ab_order) * factorial(sz));
    Rational ratio = pred == 0 ? Rational(0) : Rational(cum) / pred;
    bool ok = abs(ratio - 1) <= opt.ratio_tolerance;
    rep.add({"cumulative projective count vs average order", "ratio", ok, opt.strict_ratios, to_string(cum),
             to_string(pred),
             "ratio " + to_string(ratio) + ", tolerance " + to_string(opt.ratio_tolerance) +
                 ", average order coefficient " + to_string(avg.coefficient)});
  }

  // bounds
  bool upper = true;
  for (std::int64_t n = 0; n <= n_max; ++n) {
    BigInt cap = BigInt(d.k_obs) * d.likely[static_cast<std::size_t>(n)];
    upper = upper && d.affine[static_cast<std::size_t>(n)] <= cap && d.projective[static_cast<std::size_t>(n)] <= cap;
  }
  rep.add({"counts <= K_obs * likely maps", "exact", upper, true, "", "",
           "K_obs = " + std::to_string(d.k_obs)});
  auto seed = generating_seed(s);
  d.seed_degree = seed.degree;
  bool lower = true;
  std::int64_t checked = 0;
  for (std::int64_t n = 0; n + seed.degree <= n_max; ++n, ++checked)
    lower = lower && d.affine[static_cast<std::size_t>(n + seed.degree)] >= d.likely[static_cast<std::size_t>(n)];
  const std::int64_t e = s.group().exponent();
  for (std::int64_t n = 0; e * (n + seed.degree) <= n_max; ++n, ++checked)
    lower = lower && d.projective[static_cast<std::size_t>(e * (n + seed.degree))] >= d.likely[static_cast<std::size_t>(n)];
  rep.add({"shifted lower bound count(n+r) >= likely(n)", "exact", lower && checked > 0, true, "", "",
           "r = " + std::to_string(seed.degree) + ", " + std::to_string(checked) + " degrees"});

  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  if (out) *out = std::move(d);
  return rep;
}

// Random admissible (t_factor, t_big) pairs over c. Half of them are drawn
// through the multidiscriminant form of the hypothesis.
inline ScenarioReport run_factorization_suite(const ClassSetup& s, std::size_t samples, std::uint64_t seed = 1,
                                              std::size_t max_size = 14, const EngineConfig& cfg = {}) {
  auto t0 = std::chrono::steady_clock::now();
  ScenarioReport rep;
  rep.id = "factorization " + s.describe();
  rep.seed = seed;
  rep.inputs = {{"setup", s.describe()}, {"samples", samples}, {"max_size", max_size}};
  const FiniteGroup& g = s.group();
  std::mt19937_64 rng(seed);
  auto ct = conjugacy_classes(g);
  std::int64_t kappa = default_bigness_threshold(s) - 1;
  Check replay{"witness replays and remainder generates", "exact", true, true, "", "", ""};
  Check orbit{"orbit oracle agrees (size <= 9)", "exact", true, true, "", "", ""};
  Check cor{"multidiscriminant hypothesis implies the class hypothesis", "exact", true, true, "", "", ""};
  std::size_t done = 0, orbit_checked = 0, via_mu = 0, attempts = 0;
  while (done < samples && attempts < 200 * samples + 1000) {
    ++attempts;
    auto big = detail::random_tuple(rng, s.c(), 2 + rng() % (max_size - 1));
    if (!generates(g, big)) continue;
    NielsenTuple fac;
    bool use_mu = rng() & 1;
    if (use_mu) {
      // x with mu(big) >= mu(x) + kappa * [mu(x) > 0] per class of D*
      auto mb = multidiscriminant(big, s);
      for (std::size_t i = 0; i < s.num_dstar(); ++i) {
        std::int64_t room = mb.counts[i] - kappa;
        if (room <= 0) continue;
        std::int64_t take = static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(std::min<std::int64_t>(room, 3) + 1));
        const auto& el = s.dstar_elements(i);
        for (std::int64_t k = 0; k < take; ++k) fac.entries.push_back(el[rng() % el.size()]);
      }
      std::shuffle(fac.entries.begin(), fac.entries.end(), rng);
      if (!factorization_deficits(g, fac, big).empty()) {
        cor.passed = false;
        cor.detail = "counterexample " + format_tuple(g, fac) + " / " + format_tuple(g, big);
      }
      ++via_mu;
    } else {
      std::vector<std::size_t> have(ct.size(), 0), used(ct.size(), 0);
      for (auto x : big.entries) ++have[ct.class_of[x]];
      for (std::size_t k = 0, want = 1 + rng() % 3; k < want; ++k) {
        auto x = s.c()[rng() % s.c().size()];
        auto cls = ct.class_of[x];
        if (have[cls] >= ct.classes[cls].size() * ct.class_order[cls] + used[cls] + 1) {
          fac.entries.push_back(x);
          ++used[cls];
        }
      }
    }
    if (fac.empty()) continue;
    try {
      auto f = factorize(g, fac, big);
      if (apply_word(g, big, f.witness) != concatenate(fac, f.remainder) || !generates(g, f.remainder)) {
        replay.passed = false;
        replay.detail = "counterexample " + format_tuple(g, fac) + " / " + format_tuple(g, big);
      }
      if (big.size() <= 9) {
        ++orbit_checked;
        if (!same_orbit(g, concatenate(fac, f.remainder), big, cfg)) {
          orbit.passed = false;
          orbit.detail = "counterexample " + format_tuple(g, fac) + " / " + format_tuple(g, big);
        }
      }
    } catch (const std::exception& e) {
      replay.passed = false;
      replay.detail = std::string(e.what()) + " on " + format_tuple(g, fac) + " / " + format_tuple(g, big);
    }
    ++done;
  }
  if (done < samples) {
    replay.passed = false;
    replay.detail = "only " + std::to_string(done) + " admissible instances found";
  }
  if (replay.detail.empty()) replay.detail = std::to_string(done) + " instances";
  if (orbit.detail.empty()) orbit.detail = std::to_string(orbit_checked) + " instances";
  if (cor.detail.empty()) cor.detail = std::to_string(via_mu) + " instances";
  orbit.passed = orbit.passed && orbit_checked > 0;
  rep.add(replay);
  rep.add(orbit);
  rep.add(cor);
  rep.samples = done;
  rep.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace hurwitz
