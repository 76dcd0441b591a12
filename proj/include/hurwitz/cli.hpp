#pragma once

#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hurwitz/counting.hpp"
#include "hurwitz/decomposition.hpp"
#include "hurwitz/group_spec.hpp"
#include "hurwitz/orbit_engine.hpp"
#include "hurwitz/quasipoly.hpp"
#include "hurwitz/verification.hpp"

#ifndef HURWITZ_VERSION
#define HURWITZ_VERSION "0.0.0"
#endif

namespace hurwitz::cli {

enum ExitCode : int { kOk = 0, kBudget = 2, kConfig = 3, kVerification = 4 };

struct RunConfig {
  std::string command;
  std::string group;
  std::string setup;
  std::vector<std::string> blocks;
  std::vector<std::int64_t> xi;
  std::string n = "0..10";
  std::string space = "affine";
  bool connected = false;
  std::string h2;
  std::uint64_t max_states = 0;
  std::string max_memory;
  unsigned workers = 0;
  std::string format = "csv";
  std::string output;
  std::uint64_t seed = 1;
  // fit
  std::string series;
  std::int64_t max_period = 6;
  std::int64_t max_degree = 4;
  std::int64_t stride = 1;
  std::int64_t offset = 0;
  // verify / estimate
  std::string suite = "all";
  std::size_t samples = 200;
  std::int64_t n_max = 10;
  std::int64_t window = 3;
  // predict
  std::int64_t symmetric = 0;
  std::int64_t generator_degree = 0;
  std::string dump;
};

inline std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// Inline JSON, a path to a JSON file, or (for groups) a name.
inline json load_doc(const std::string& text, bool allow_name) {
  std::string t = trim(text);
  try {
    if (!t.empty() && (t.front() == '{' || t.front() == '[')) return json::parse(t);
    if (std::filesystem::exists(t)) return json::parse(read_text(t));
  } catch (const json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (allow_name) return json(t);
  throw ParseError("'" + t + "' is neither inline JSON nor a readable file");
}

inline std::pair<std::int64_t, std::int64_t> parse_range(const std::string& text) {
  auto dots = text.find("..");
  try {
    std::size_t pos = 0;
    if (dots == std::string::npos) {
      std::int64_t v = std::stoll(text, &pos);
      if (pos != text.size()) throw ParseError("");
      if (v < 0) throw ParseError("");
      return {v, v};
    }
    std::int64_t a = std::stoll(text.substr(0, dots), &pos);
    std::int64_t b = std::stoll(text.substr(dots + 2));
    if (a < 0 || b < a) throw ParseError("");
    return {a, b};
  } catch (const std::exception&) {
    throw ParseError("bad degree range '" + text + "' (use N or A..B)");
  }
}

inline std::vector<Space> parse_spaces(const std::string& s) {
  if (s == "affine") return {Space::affine};
  if (s == "projective") return {Space::projective};
  if (s == "both") return {Space::affine, Space::projective};
  throw ParseError("space must be affine, projective or both");
}

struct Context {
  RunConfig cfg;
  EngineConfig engine;
  std::shared_ptr<const FiniteGroup> group;
  std::optional<ClassSetup> setup;
  json config_echo;
};

inline std::shared_ptr<const FiniteGroup> resolve_group(const RunConfig& c, const json* setup_doc) {
  json gdoc;
  if (!c.group.empty()) gdoc = load_doc(c.group, true);
  else if (setup_doc && setup_doc->contains("group")) gdoc = setup_doc->at("group");
  else throw ParseError("a group is required (--group)");
  return std::make_shared<const FiniteGroup>(group_from_json(gdoc));
}

inline Context make_context(const RunConfig& c, bool need_setup) {
  Context ctx;
  ctx.cfg = c;
  ctx.engine = EngineConfig::from_env();
  if (c.max_states) ctx.engine.max_states = c.max_states;
  if (!c.max_memory.empty()) ctx.engine.max_memory = EngineConfig::parse_bytes(c.max_memory);
  if (c.workers) ctx.engine.workers = c.workers;
  std::optional<json> sdoc;
  if (!c.setup.empty()) sdoc = load_doc(c.setup, false);
  bool want_group = need_setup || !c.group.empty() || sdoc;
  if (want_group) ctx.group = resolve_group(c, sdoc ? &*sdoc : nullptr);
  if (sdoc) {
    ctx.setup = setup_from_json(ctx.group, *sdoc);
  } else if (!c.blocks.empty()) {
    std::vector<std::vector<element_id>> blocks;
    for (const auto& b : c.blocks) blocks.push_back(parse_block(*ctx.group, b));
    std::vector<std::int64_t> xi = c.xi;
    if (xi.empty()) xi.assign(blocks.size(), 1);
    if (xi.size() != blocks.size()) throw ParseError("give one --xi per --block");
    ctx.setup.emplace(ctx.group, blocks, xi);
  }
  if (need_setup && !ctx.setup) throw ParseError("a class setup is required (--block/--xi or --setup)");

  // the worker count is left out so runs with different counts produce identical files
  json e{{"command", c.command}};
  if (ctx.group) e["group"] = ctx.group->source().description;
  if (ctx.setup) e["setup"] = ctx.setup->describe();
  e["max_states"] = ctx.engine.max_states;
  e["max_memory"] = ctx.engine.max_memory;
  e["seed"] = c.seed;
  ctx.config_echo = e;
  return ctx;
}

class Output {
 public:
  Output(const RunConfig& c, std::ostream& fallback) {
    if (!c.output.empty()) {
      file_.open(c.output);
      if (!file_) throw ParseError("cannot write '" + c.output + "'");
    }
    os_ = c.output.empty() ? &fallback : &file_;
  }
  std::ostream& os() { return *os_; }

 private:
  std::ofstream file_;
  std::ostream* os_;
};

inline void csv_header(std::ostream& os, const json& config) {
  os << "# hurwitz " << HURWITZ_VERSION << "\n# config: " << config.dump() << "\n";
}

inline json envelope(const json& config) { return {{"version", HURWITZ_VERSION}, {"config", config}}; }

inline json count_value(const BigInt& v) {
  if (v <= std::numeric_limits<std::uint64_t>::max()) return static_cast<std::uint64_t>(v);
  return to_string(v);
}

inline std::optional<H2Value> resolve_h2(const Context& ctx, bool required) {
  const std::string& h = ctx.cfg.h2;
  if (h.empty()) {
    if (required) throw ParseError("--h2 is required (an integer, 'table' or 'estimate')");
    return std::nullopt;
  }
  if (h == "table") {
    auto v = h2_table_lookup(*ctx.setup);
    if (!v) throw ParseError("no table value of |H2(G,c)| for " + ctx.setup->describe());
    return v;
  }
  if (h == "estimate") {
    auto e = estimate_h2c(*ctx.setup, ctx.cfg.n_max, ctx.cfg.window, ctx.engine);
    if (!e.stabilized) throw VerificationFailure("h2 estimate did not stabilize: " + e.failure);
    return e.value;
  }
  try {
    std::size_t pos = 0;
    long long v = std::stoll(h, &pos);
    if (pos != h.size()) throw ParseError("");
    return h2_user(v);
  } catch (const std::exception&) {
    throw ParseError("bad --h2 value '" + h + "'");
  }
}

inline int cmd_count(const RunConfig& c, std::ostream& out) {
  auto ctx = make_context(c, true);
  auto [lo, hi] = parse_range(c.n);
  auto spaces = parse_spaces(c.space);
  Connectedness conn = c.connected ? Connectedness::connected : Connectedness::all;
  ctx.config_echo["n"] = c.n;
  ctx.config_echo["space"] = c.space;
  ctx.config_echo["connectedness"] = to_string(conn);
  std::vector<std::string> cols;
  for (auto sp : spaces) cols.push_back(std::string(to_string(sp)) + "_" + to_string(conn));
  std::vector<std::vector<BigInt>> rows;
  std::ofstream dump;
  if (!c.dump.empty()) {
    dump.open(c.dump);
    if (!dump) throw ParseError("cannot write '" + c.dump + "'");
  }
  for (std::int64_t n = lo; n <= hi; ++n) {
    std::vector<BigInt> row;
    for (auto sp : spaces) {
      row.push_back(count_components(*ctx.setup, n, sp, conn, ctx.engine).total);
      if (dump) {
        json q = ctx.config_echo;
        q["n"] = n;
        q["space"] = to_string(sp);
        dump << "# " << q.dump() << "\n";
        for (const auto& r : list_components(*ctx.setup, n, sp, conn, ctx.engine))
          dump << format_tuple(*ctx.group, r.canonical_rep) << "\n";
      }
    }
    rows.push_back(std::move(row));
  }
  Output o(c, out);
  if (c.format == "json") {
    json j = envelope(ctx.config_echo);
    j["rows"] = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      json r{{"n", lo + static_cast<std::int64_t>(i)}};
      for (std::size_t k = 0; k < cols.size(); ++k) r[cols[k]] = count_value(rows[i][k]);
      j["rows"].push_back(r);
    }
    o.os() << j.dump(2) << "\n";
  } else {
    csv_header(o.os(), ctx.config_echo);
    o.os() << "n";
    for (const auto& col : cols) o.os() << "," << col;
    o.os() << "\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      o.os() << lo + static_cast<std::int64_t>(i);
      for (const auto& v : rows[i]) o.os() << "," << v;
      o.os() << "\n";
    }
  }
  return kOk;
}

inline int cmd_predict(const RunConfig& c, std::ostream& out) {
  std::vector<Prediction> preds;
  json echo;
  if (c.symmetric) {
    echo = {{"command", c.command}, {"symmetric", c.symmetric}};
    preds.push_back({symmetric_leading_monomial(c.symmetric), "symmetric-transpositions",
                     {{"d", c.symmetric}, {"variable", "m = n/2"}}});
  } else {
    auto ctx = make_context(c, true);
    const auto& s = *ctx.setup;
    auto h2 = *resolve_h2(ctx, true);
    echo = ctx.config_echo;
    echo["space"] = c.space;
    echo["h2"] = h2_json(h2);
    for (auto sp : parse_spaces(c.space)) {
      for (auto& p : predictions(s, h2)) {
        bool affine_formula = p.formula == "affine-leading";
        if ((sp == Space::affine) == affine_formula) preds.push_back(std::move(p));
      }
      if (sp == Space::projective && single_block_unit_xi(s) && c.generator_degree > 0) {
        auto e = equal_degree_generator_coefficient(s, h2, c.generator_degree);
        json in{{"setup", s.describe()}, {"h2", h2_json(h2)}, {"d", c.generator_degree},
                {"subsequence_coefficient", to_string(e.subsequence)}};
        preds.push_back({{static_cast<std::int64_t>(s.num_dstar()) - 1, e.q0}, "projective-equal-degree", in});
      }
      bool any_projective = false;
      for (const auto& p : preds) any_projective = any_projective || p.formula != "affine-leading";
      if (sp == Space::projective && !any_projective) {
        // only the growth order is known here: n^omega along exp(G) * n
        json in{{"setup", s.describe()},
                {"bounds_only", true},
                {"exp_G", s.group().exponent()},
                {"statement", "count at degree exp(G)*n grows at least like n^omega and at most like n^omega"}};
        preds.push_back({{splitting_number(s), Rational(0)}, "growth-bounds", in});
      }
    }
  }
  Output o(c, out);
  if (c.format == "json") {
    json j = envelope(echo);
    j["predictions"] = json::array();
    for (const auto& p : preds) j["predictions"].push_back(to_json(p));
    o.os() << j.dump(2) << "\n";
  } else {
    csv_header(o.os(), echo);
    o.os() << "formula,degree,coefficient_num,coefficient_den\n";
    for (const auto& p : preds) {
      auto j = to_json(p);
      o.os() << p.formula << "," << p.monomial.degree << "," << j["coefficient_num"].get<std::string>() << ","
             << j["coefficient_den"].get<std::string>() << "\n";
    }
  }
  return kOk;
}

inline int cmd_decompose(const RunConfig& c, std::ostream& out) {
  auto ctx = make_context(c, true);
  auto [lo, hi] = parse_range(c.n);
  auto spaces = parse_spaces(c.space);
  ctx.config_echo["n"] = c.n;
  ctx.config_echo["space"] = c.space;
  auto L = d_lattice(*ctx.setup);
  Output o(c, out);
  if (c.format == "json") {
    json j = envelope(ctx.config_echo);
    j["tables"] = json::array();
    for (auto sp : spaces)
      for (std::int64_t n = lo; n <= hi; ++n) {
        auto t = hur_from_chur(*ctx.setup, L, n, sp, ctx.engine);
        json rows = json::array();
        for (const auto& r : t.rows)
          rows.push_back({{"subgroup", r.label}, {"order", r.order}, {"omega", r.omega}, {"count", count_value(r.chur)}});
        j["tables"].push_back({{"n", n}, {"space", to_string(sp)}, {"rows", rows}, {"hur", count_value(t.hur_direct)}});
      }
    o.os() << j.dump(2) << "\n";
  } else {
    csv_header(o.os(), ctx.config_echo);
    for (auto sp : spaces) {
      if (spaces.size() > 1) o.os() << "# space: " << to_string(sp) << "\n";
      write_decomposition_csv_header(o.os());
      for (std::int64_t n = lo; n <= hi; ++n)
        write_decomposition_csv(o.os(), *ctx.setup, hur_from_chur(*ctx.setup, L, n, sp, ctx.engine));
    }
  }
  return kOk;
}

// "n,count" lines; '#' comments and a non-numeric header are skipped.
inline std::map<std::int64_t, BigInt> read_series(std::istream& in, std::size_t column) {
  std::map<std::int64_t, BigInt> m;
  std::string line;
  while (std::getline(in, line)) {
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string x; std::getline(ss, x, ',');) f.push_back(trim(x));
    if (f.size() <= column) throw ParseError("series line has too few columns: '" + line + "'");
    if (!std::isdigit(static_cast<unsigned char>(f[0][0]))) continue;
    try {
      m[std::stoll(f[0])] = BigInt(f[column]);
    } catch (const std::exception&) {
      throw ParseError("bad series line '" + line + "'");
    }
  }
  return m;
}

inline int cmd_fit(const RunConfig& c, std::ostream& out, std::istream& in) {
  if (c.series.empty()) throw ParseError("--series is required");
  std::map<std::int64_t, BigInt> raw;
  if (c.series == "-") raw = read_series(in, 1);
  else {
    std::ifstream f(c.series);
    if (!f) throw ParseError("cannot read '" + c.series + "'");
    raw = read_series(f, 1);
  }
  if (c.stride < 1 || c.offset < 0) throw ParseError("stride must be positive and offset nonnegative");
  // subsequence n = offset + stride * m, refit in m
  std::map<std::int64_t, BigInt> seq;
  for (const auto& [n, v] : raw)
    if (n >= c.offset && (n - c.offset) % c.stride == 0) seq[(n - c.offset) / c.stride] = v;
  json echo{{"command", c.command}, {"series", c.series}, {"max_period", c.max_period},
            {"max_degree", c.max_degree}, {"stride", c.stride}, {"offset", c.offset}};
  auto q = fit_quasipolynomial(seq, c.max_period, c.max_degree);
  json j = envelope(echo);
  j["fit"] = to_json(q);
  std::string var = c.stride == 1 && c.offset == 0 ? "n" : "m";
  json polys = json::array();
  for (const auto& p : q.polys) polys.push_back(format_polynomial(p, var));
  j["fit"]["readable"] = polys;
  Output o(c, out);
  o.os() << j.dump(2) << "\n";
  return kOk;
}

inline int cmd_verify(const RunConfig& c, std::ostream& out) {
  bool need_setup = c.suite != "identities";
  auto ctx = make_context(c, need_setup);
  if (!ctx.group) throw ParseError("a group is required (--group)");
  ctx.config_echo["suite"] = c.suite;
  ctx.config_echo["samples"] = c.samples;
  ctx.config_echo["n_max"] = c.n_max;
  std::vector<ScenarioReport> reports;
  if (c.suite == "identities" || c.suite == "all")
    reports.push_back(run_identity_suite(*ctx.group, c.samples, c.seed, ctx.engine));
  if (c.suite == "growth" || c.suite == "all") {
    GrowthOptions opt;
    opt.h2 = resolve_h2(ctx, false);
    reports.push_back(run_growth_suite(*ctx.setup, c.n_max, opt, ctx.engine));
  }
  if (c.suite == "factorization" || c.suite == "all")
    reports.push_back(run_factorization_suite(*ctx.setup, c.samples, c.seed, 14, ctx.engine));
  if (reports.empty()) throw ParseError("suite must be identities, growth, factorization or all");
  bool ok = true;
  for (const auto& r : reports) ok = ok && r.passed();
  Output o(c, out);
  if (c.format == "json") {
    json j = envelope(ctx.config_echo);
    j["reports"] = json::array();
    for (const auto& r : reports) j["reports"].push_back(to_json(r));
    j["passed"] = ok;
    o.os() << j.dump(2) << "\n";
  } else {
    o.os() << "# hurwitz " << HURWITZ_VERSION << "\n# config: " << ctx.config_echo.dump() << "\n";
    for (const auto& r : reports) o.os() << to_text(r);
  }
  return ok ? kOk : kVerification;
}

inline int cmd_estimate_h2(const RunConfig& c, std::ostream& out) {
  auto ctx = make_context(c, true);
  ctx.config_echo["n_max"] = c.n_max;
  ctx.config_echo["window"] = c.window;
  auto e = estimate_h2c(*ctx.setup, c.n_max, c.window, ctx.engine);
  json j = envelope(ctx.config_echo);
  j["stabilized"] = e.stabilized;
  if (e.stabilized) j["h2"] = h2_json(e.value);
  else j["failure"] = e.failure;
  json series = json::array();
  for (auto [n, f] : e.series) series.push_back({{"n", n}, {"fiber", f}});
  j["series"] = series;
  Output o(c, out);
  o.os() << j.dump(2) << "\n";
  return e.stabilized ? kOk : kVerification;
}

inline int cmd_group_info(const RunConfig& c, std::ostream& out) {
  auto ctx = make_context(c, false);
  if (!ctx.group) throw ParseError("a group is required (--group)");
  const auto& g = *ctx.group;
  auto cls = conjugacy_classes(g);
  auto ab = abelianization(g);
  json classes = json::array();
  for (std::size_t i = 0; i < cls.size(); ++i)
    classes.push_back({{"representative", g.label(cls.classes[i].front())},
                       {"size", cls.classes[i].size()},
                       {"order", cls.class_order[i]}});
  json j = envelope(ctx.config_echo);
  j["order"] = g.order();
  j["exponent"] = g.exponent();
  j["abelian"] = g.is_abelian();
  j["classes"] = classes;
  j["abelianization"] = ab.factors;
  j["commutator_order"] = ab.commutator_subgroup.order();
  if (g.order() <= kDefaultLatticeBound) j["subgroups"] = all_subgroups(g).size();
  if (ctx.setup) {
    j["setup"] = ctx.setup->describe();
    j["omega"] = splitting_number(*ctx.setup);
    j["d_generated_subgroups"] = d_generated_subgroups(*ctx.setup).size();
  }
  Output o(c, out);
  if (c.format == "json") {
    o.os() << j.dump(2) << "\n";
  } else {
    o.os() << "order " << g.order() << ", exponent " << g.exponent() << ", " << cls.size() << " classes";
    if (j.contains("subgroups")) o.os() << ", " << j["subgroups"].get<std::size_t>() << " subgroups";
    o.os() << "\n";
    for (const auto& x : classes)
      o.os() << "  class of " << x["representative"].get<std::string>() << ": size " << x["size"] << ", order "
             << x["order"] << "\n";
    o.os() << "abelianization " << json(ab.factors).dump() << ", |[G,G]| = " << ab.commutator_subgroup.order()
           << "\n";
  }
  return kOk;
}

inline void add_common(CLI::App* sub, RunConfig& c, bool setup, bool range) {
  sub->add_option("--group", c.group, "group name (S4, C3, D5, Q8, S3xC2), JSON file or inline JSON");
  if (setup) {
    sub->add_option("--setup", c.setup, "setup JSON (file or inline) with blocks, xi and optionally group");
    sub->add_option("--block", c.blocks, "comma-separated class representatives of one block (repeatable)");
    sub->add_option("--xi", c.xi, "weight of each block, in order (repeatable)");
  }
  if (range) {
    sub->add_option("--n", c.n, "degree N or range A..B");
    sub->add_option("--space", c.space, "affine, projective or both")->check(CLI::IsMember({"affine", "projective", "both"}));
  }
  sub->add_option("--max-states", c.max_states, "visited-state budget per query");
  sub->add_option("--max-memory", c.max_memory, "memory budget, e.g. 8G");
  sub->add_option("--workers", c.workers, "worker threads for orbit closures");
  sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json", "text"}));
  sub->add_option("--output,-o", c.output, "output file (default stdout)");
  sub->add_option("--seed", c.seed, "random seed");
}

// Runs the tool; returns the process exit code.
inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr,
               std::istream& in = std::cin) {
  CLI::App app{"Braid orbit counts for Hurwitz spaces of branched covers"};
  app.set_version_flag("--version", std::string(HURWITZ_VERSION));
  app.require_subcommand(1);
  RunConfig c;

  auto* count = app.add_subcommand("count", "count braid orbits per degree");
  add_common(count, c, true, true);
  count->add_flag("--connected", c.connected, "only tuples generating the whole group");
  count->add_option("--dump", c.dump, "write canonical representatives to this file");

  auto* predict = app.add_subcommand("predict", "leading terms from the closed formulas");
  add_common(predict, c, true, false);
  predict->add_option("--space", c.space, "affine, projective or both")->check(CLI::IsMember({"affine", "projective", "both"}));
  predict->add_option("--h2", c.h2, "|H2(G,c)|: an integer, 'table' or 'estimate'");
  predict->add_option("--symmetric", c.symmetric, "leading monomial for S_d with transpositions");
  predict->add_option("--generator-degree", c.generator_degree, "common degree of the projective generators");
  predict->add_option("--n-max", c.n_max, "largest degree for --h2 estimate");
  predict->add_option("--window", c.window, "plateau length for --h2 estimate");

  auto* decompose = app.add_subcommand("decompose", "per-subgroup connected counts and their sum");
  add_common(decompose, c, true, true);

  auto* fit = app.add_subcommand("fit", "fit a quasi-polynomial to a count series");
  fit->add_option("--series", c.series, "CSV with n in the first column and counts in the second ('-' for stdin)");
  fit->add_option("--max-period", c.max_period, "largest period tried");
  fit->add_option("--max-degree", c.max_degree, "largest degree tried");
  fit->add_option("--stride", c.stride, "use only n = offset + stride*m and fit in m");
  fit->add_option("--offset", c.offset, "see --stride");
  fit->add_option("--output,-o", c.output, "output file (default stdout)");

  auto* verify = app.add_subcommand("verify", "run the property suites");
  add_common(verify, c, true, false);
  verify->add_option("--suite", c.suite, "identities, growth, factorization or all")
      ->check(CLI::IsMember({"identities", "growth", "factorization", "all"}));
  verify->add_option("--samples", c.samples, "random instances per check");
  verify->add_option("--n-max", c.n_max, "largest degree for the growth suite");
  verify->add_option("--h2", c.h2, "|H2(G,c)| for formula comparisons");
  verify->add_option("--window", c.window, "plateau length for --h2 estimate");

  auto* est = app.add_subcommand("estimate-h2", "estimate |H2(G,c)| from fiber sizes");
  add_common(est, c, true, false);
  est->add_option("--n-max", c.n_max, "largest degree to enumerate");
  est->add_option("--window", c.window, "number of equal consecutive values required");

  auto* info = app.add_subcommand("group-info", "order, classes and subgroups of a group");
  add_common(info, c, true, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e, out, err);
    return rc == 0 ? kOk : kConfig;
  }
  try {
    if (*count) return c.command = "count", cmd_count(c, out);
    if (*predict) return c.command = "predict", cmd_predict(c, out);
    if (*decompose) return c.command = "decompose", cmd_decompose(c, out);
    if (*fit) return c.command = "fit", cmd_fit(c, out, in);
    if (*verify) return c.command = "verify", cmd_verify(c, out);
    if (*est) return c.command = "estimate-h2", cmd_estimate_h2(c, out);
    if (*info) return c.command = "group-info", cmd_group_info(c, out);
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const VerificationFailure& e) {
    err << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const QuasiPolyFitError& e) {
    err << "fit failed: " << e.what() << "\n";
    for (const auto& d : e.failure().diagnostics) err << "  " << d << "\n";
    return kVerification;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return kConfig;
  }
  return kConfig;
}

}  // namespace hurwitz::cli
