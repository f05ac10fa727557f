// limitseries: command-line front end.
//
// Exit codes: 0 pass, 1 a mathematical check failed, 2 invalid input,
// 3 refused for resources (desk-scale limits, caps, precision).

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"

#include "limitseries/enriques.hpp"
#include "limitseries/errors.hpp"
#include "limitseries/hilbert.hpp"
#include "limitseries/horace.hpp"
#include "limitseries/interp.hpp"
#include "limitseries/io.hpp"
#include "limitseries/localring.hpp"
#include "limitseries/staircase.hpp"

using namespace limitseries;

namespace {

enum Exit { kPass = 0, kCheckFailed = 1, kInvalid = 2, kRefused = 3 };

struct Config {
  std::uint64_t seed = 1;
  bool seed_given = false;
  std::uint64_t prime = kDefaultPrime;
  std::uint64_t prime2 = 0;
  int x_cap = 0;   // 0: derived from the input
  int t_prec = 32;
  bool json = false;
  bool force = false;

  void finalize() {
    if (!seed_given) {
      if (const char* env = std::getenv("LIMITSERIES_SEED")) {
        try {
          seed = std::stoull(env);
        } catch (const std::exception&) {
          throw ParseError(std::string("LIMITSERIES_SEED is not an integer: ") + env);
        }
      }
    }
    if (!is_prime(prime) || prime >= (std::uint64_t{1} << 62)) throw DomainError("--prime must be a prime below 2^62");
    if (prime2 != 0 && (!is_prime(prime2) || prime2 >= (std::uint64_t{1} << 62)))
      throw DomainError("--prime2 must be a prime below 2^62");
    if (x_cap < 0) throw DomainError("--x-cap must be positive");
    if (t_prec < 1) throw DomainError("--t-prec must be positive");
  }
};

void emit(const Config& cfg, const Json& j, const std::string& text) {
  if (cfg.json)
    std::cout << j.dump(2) << '\n';
  else
    std::cout << text;
}

std::vector<int> parse_ints(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(part, &used));
      if (used != part.size()) throw ParseError("bad integer '" + part + "'");
    } catch (const std::logic_error&) {
      throw ParseError("bad integer '" + part + "'");
    }
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

/// --heights wins; otherwise a staircase file, JSON if it starts with '{'.
Staircase load_staircase(const std::string& heights, const std::string& file) {
  if (!file.empty()) {
    const auto text = read_file(file);
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
      try {
        return staircase_from_json(Json::parse(text));
      } catch (const Json::parse_error& e) {
        throw ParseError(e.what());
      }
    }
    return parse_staircase_text(text);
  }
  return parse_heights_list(heights);
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

// ---------------------------------------------------------------- staircase

struct StaircaseArgs {
  std::string heights, file, other, ts;
  int t = 0, m = 0;
};

int run_staircase(const Config& cfg, const std::string& op, const StaircaseArgs& a) {
  auto answer = [&](const Staircase& e) {
    Json j = to_json(e);
    emit(cfg, j, (e.dim() == 2 ? format_heights_list(e) : std::to_string(e.degree())) + "\n");
    return kPass;
  };
  if (op == "regular") return answer(regular(a.m));
  if (op == "f") return answer(f_staircase(a.m));
  const auto e = load_staircase(a.heights, a.file);
  if (op == "suppress") return answer(suppress(e, a.t));
  if (op == "slice") return answer(slice(e, a.t));
  if (op == "suppress-seq") return answer(suppress_seq(e, parse_ints(a.ts)));
  if (op == "collide") return answer(vertical_collision(e, parse_heights_list(a.other)));
  if (op == "quasi-regular") {
    const auto m = is_quasi_regular(e);
    Json j{{"quasi_regular", m.has_value()}};
    j["m"] = m ? Json(*m) : Json(nullptr);
    emit(cfg, j, m ? "true m=" + std::to_string(*m) + "\n" : "false\n");
    return kPass;
  }
  if (op == "right-specialized") {
    const bool r = is_right_specialized(e);
    emit(cfg, Json{{"right_specialized", r}}, bool_text(r) + "\n");
    return kPass;
  }
  if (op == "show") {
    emit(cfg, to_json(e), ascii_grid(e));
    return kPass;
  }
  throw ParseError("unknown staircase operation " + op);
}

// ---------------------------------------------------------------- chain

int run_chain(const Config& cfg, const std::string& heights, const std::string& file, int v, const std::string& ns_s) {
  const auto e = load_staircase(heights, file);
  const auto ns = parse_ints(ns_s);
  if (v < 1) throw DomainError("--v must be positive");
  RingContext ctx;
  ctx.dim = e.dim();
  ctx.field = PrimeField(cfg.prime);
  ctx.x_cap = cfg.x_cap > 0 ? cfg.x_cap : required_caps(e, v, ns).chain_cap;
  ctx.validate();
  const auto res = residual_chain(e, v, ns, ctx);
  const auto fib = special_fiber(res);
  std::vector<int> ts;
  for (int n : ns) ts.push_back(n / v);
  const auto comb = suppress_seq(e, ts);
  const bool matches = fib == monomial_ideal_span(comb, fib.context(), fib.context().x_cap);
  const bool boundary = is_boundary(e, v, ns);
  const auto predicted = fiber_staircase(e, v, ns);
  const bool fiber_ok = fib == monomial_ideal_span(predicted, fib.context(), fib.context().x_cap);

  Json j{{"x_cap", ctx.x_cap},
         {"dimension", res.dimension()},
         {"boundary", boundary},
         {"suppression", to_json(StaircaseTuple{comb})[0]},
         {"fiber_is_suppression", matches},
         {"predicted_fiber", to_json(StaircaseTuple{predicted})[0]},
         {"fiber_is_predicted", fiber_ok}};
  std::ostringstream os;
  os << "x-cap " << ctx.x_cap << ", residual span dimension " << res.dimension() << '\n'
     << "boundary: " << bool_text(boundary) << '\n'
     << "special fiber = I^S(E,t): " << bool_text(matches) << '\n'
     << "special fiber = predicted fiber: " << bool_text(fiber_ok) << '\n';
  emit(cfg, j, os.str());
  // Off the boundary both must hold; on it only the prediction.
  return fiber_ok && (boundary || matches) ? kPass : kCheckFailed;
}

// ---------------------------------------------------------------- nagata

int run_nagata(const Config& cfg, int k, int m, bool oracle, bool certificate, int d_max, int trials,
               const std::string& out_path) {
  if (!oracle && !certificate) oracle = certificate = true;
  Json j = Json::object();
  std::ostringstream text;
  bool pass = true;
  if (oracle) {
    if (d_max < 0) d_max = k * m + k;
    std::vector<std::uint64_t> primes{cfg.prime};
    if (cfg.prime2 != 0) primes.push_back(cfg.prime2);
    Json tables = Json::array();
    for (auto p : primes) {
      const auto t = verify_nagata_theorem(k, m, d_max, trials, cfg.seed, p, cfg.force);
      pass = pass && t.pass;
      tables.push_back(to_json(t));
      text << to_csv(t);
    }
    j["oracle"] = tables;
  }
  if (certificate) {
    const auto c = nagata_certificate(k, m, cfg.seed, cfg.prime);
    pass = pass && c.passed;
    j["certificate"] = to_json(c);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw ParseError("cannot write " + out_path);
      out << to_json(c).dump(2) << '\n';
    }
    text << to_json(c).dump(2) << '\n';
  }
  emit(cfg, j, text.str());
  return pass ? kPass : kCheckFailed;
}

// ---------------------------------------------------------------- limit

int run_limit(const Config& cfg, const std::string& path, bool verify, bool allow_boundary, bool oracle_mode) {
  PlanFile pf;
  try {
    pf = plan_from_json(Json::parse(read_file(path)));
  } catch (const Json::parse_error& e) {
    throw ParseError(e.what());
  }
  allow_boundary = allow_boundary || pf.allow_boundary;
  const auto findings = validate_plan(pf.plan);
  Json j{{"findings", to_json(findings)}};
  std::ostringstream text;
  for (const auto& f : findings)
    text << (f.severity == Finding::Severity::Error ? "error " : "warning ") << to_string(f.kind) << ": " << f.message
         << '\n';

  const OracleOptions oopt{cfg.seed, cfg.prime, 2};
  std::vector<LevelVerdict> verdicts;
  if (pf.system)
    verdicts = hypothesis_check(pf.plan, *pf.system, oracle_mode ? HypothesisMode::Oracle : HypothesisMode::DegreeCount,
                                oopt);
  else
    verdicts = hypothesis_check(pf.plan, pf.model);
  j["verdicts"] = to_json(verdicts);
  for (const auto& v : verdicts)
    text << "level " << v.level << ": deg Z = " << v.slice_degree << ", base " << v.base_degree << ", degree on D "
         << v.restricted_degree << " -> " << bool_text(v.holds) << '\n';

  int code = kPass;
  try {
    const auto cert = pf.system ? apply_theorem(pf.plan, *pf.system, allow_boundary, oopt)
                                : apply_theorem(pf.plan, pf.model, allow_boundary);
    j["certificate"] = to_json(cert);
    text << "r = " << cert.r << '\n' << "residual:";
    for (const auto& e : cert.residual) text << " [" << format_heights_list(e) << ']';
    text << '\n';
    if (cert.dimension_bound) text << "dimension bound: " << *cert.dimension_bound << '\n';
  } catch (const HypothesisFailed& e) {
    j["error"] = e.what();
    text << "hypothesis failed: " << e.what() << '\n';
    code = kCheckFailed;
  }

  if (verify && code == kPass) {
    if (!pf.system) throw DomainError("--verify-limit needs a plan file with a divisor system");
    InclusionOptions io;
    io.seed = cfg.seed;
    io.prime = cfg.prime;
    io.t_precision = cfg.t_prec;
    const auto r = limit_inclusion_check(pf.plan, *pf.system, io);
    j["inclusion"] = to_json(r);
    text << "limit contained in residual system: " << bool_text(r.contained) << " (limit dim " << r.limit_dimension
         << ", target dim " << r.target_dimension << ")\n";
    if (!r.contained) code = kCheckFailed;
  }
  emit(cfg, j, text.str());
  return code;
}

// ---------------------------------------------------------------- hilbert

int run_hilbert(const Config& cfg, int k, int m) {
  if (k < 1 || m < 1) throw DomainError("--k and --m must be positive");
  const auto deg = square_union_degree(k, m);
  const auto dc = critical_degree(deg);
  Json j{{"k", k}, {"m", m}, {"degree", deg}, {"critical_degree", dc}};
  std::ostringstream text;
  text << "deg Z = " << deg << ", d_c = " << dc << '\n';
  Json table = Json::array();
  for (int d = 0; d <= k * m + k; ++d) {
    const auto hv = virtual_hilbert(deg, d);
    table.push_back(Json{{"d", d}, {"virtual", hv}});
    text << "H_v(" << d << ") = " << hv << '\n';
  }
  j["virtual"] = table;
  bool pass = true;
  if (k >= 4) {
    const auto r = critical_bounds_report(k, m);
    j["bounds"] = Json{{"lower", r.lower}, {"upper", r.upper}, {"lower_holds", r.lower_holds},
                       {"upper_holds", r.upper_holds}};
    text << "upper bound d_c <= " << r.upper << ": " << bool_text(r.upper_holds) << '\n'
         << "lower bound d_c > " << r.lower << ": " << bool_text(r.lower_holds) << " (reported only)\n";
    pass = r.upper_holds;
    Json ids = Json::array();
    for (int s = 0; s <= k - 2; ++s) {
      const auto b = bookkeeping_sides(k, m, s);
      ids.push_back(Json{{"s", s}, {"d", b.d}, {"lhs", b.lhs}, {"rhs", b.rhs}, {"holds", b.lhs == b.rhs}});
      text << "bookkeeping s=" << s << ": " << b.lhs << " = " << b.rhs << '\n';
      pass = pass && b.lhs == b.rhs;
    }
    j["bookkeeping"] = ids;
  }
  emit(cfg, j, text.str());
  return pass ? kPass : kCheckFailed;
}

// ---------------------------------------------------------------- enriques

int run_enriques(const Config& cfg, const std::string& op, const std::string& mult, int m, int max_m) {
  const auto c = four_point_constellation();
  if (op == "constellation") {
    std::ostringstream text;
    for (const auto& v : c.vertices) {
      text << 'q' << v.id << ':';
      for (int p : v.proximate_to) text << " q" << p;
      text << '\n';
    }
    emit(cfg, to_json(c), text.str());
    return kPass;
  }
  if (op == "degree") {
    const auto d = c.with_multiplicities(parse_ints(mult));
    const auto loaded = loaded_vertices(d);
    Json j = to_json(d);
    j["unloaded"] = loaded.empty();
    j["loaded_vertices"] = loaded;
    std::ostringstream text;
    if (loaded.empty()) {
      j["degree"] = diagram_degree(d);
      text << "unloaded, degree " << diagram_degree(d) << '\n';
    } else {
      text << "loaded at";
      for (int v : loaded) text << " q" << v;
      text << '\n';
    }
    emit(cfg, j, text.str());
    return loaded.empty() ? kPass : kCheckFailed;
  }
  if (op == "search") {
    const auto found = search_multiplicities(m);
    Json j{{"m", m}, {"target_degree", 2 * m * (m + 1)}, {"reconstructed", true}, {"vectors", found}};
    std::ostringstream text;
    text << "# candidates reconstructed by search, m=" << m << ", degree " << 2 * m * (m + 1) << '\n';
    for (const auto& v : found) {
      for (std::size_t i = 0; i < v.size(); ++i) text << (i ? "," : "") << v[i];
      text << '\n';
    }
    emit(cfg, j, text.str());
    return found.empty() ? kCheckFailed : kPass;
  }
  if (op == "report") {
    Json rows = Json::array();
    std::ostringstream text;
    text << "m,roots,roots_m_plus_4,offset_7\n";
    for (const auto& r : period_four_report(max_m)) {
      rows.push_back(Json{{"m", r.m}, {"roots", r.roots}, {"roots_next", r.roots_next}, {"offset_seven", r.offset_seven}});
      auto join = [](const std::set<int>& s) {
        std::string o;
        for (int x : s) o += (o.empty() ? "" : " ") + std::to_string(x);
        return o;
      };
      text << r.m << ',' << join(r.roots) << ',' << join(r.roots_next) << ',' << bool_text(r.offset_seven) << '\n';
    }
    emit(cfg, rows, text.str());
    return kPass;
  }
  throw ParseError("unknown enriques operation " + op);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Limit linear series, residual chains and fat-point interpolation."};
  app.require_subcommand(1);
  Config cfg;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--seed", cfg.seed, "random seed (default LIMITSERIES_SEED or 1)")
        ->each([&](const std::string&) { cfg.seed_given = true; });
    sub->add_option("--prime", cfg.prime, "field characteristic");
    sub->add_option("--prime2", cfg.prime2, "second prime for cross-checks");
    sub->add_option("--x-cap", cfg.x_cap, "x-degree cap for truncated spans");
    sub->add_option("--t-prec", cfg.t_prec, "initial t-adic working precision");
    sub->add_flag("--json", cfg.json, "JSON output");
    sub->add_flag("--force", cfg.force, "lift desk-scale limits");
  };

  // staircase
  auto* st = app.add_subcommand("staircase", "staircase combinatorics");
  st->require_subcommand(1);
  StaircaseArgs sa;
  std::string st_op;
  for (const char* name : {"suppress", "slice", "suppress-seq", "collide", "regular", "f", "quasi-regular",
                           "right-specialized", "show"}) {
    auto* s = st->add_subcommand(name);
    add_common(s);
    const std::string n = name;
    if (n == "regular" || n == "f") {
      s->add_option("--m", sa.m, "size")->required();
    } else {
      s->add_option("--heights", sa.heights, "column heights, e.g. 3,2,1");
      s->add_option("--file", sa.file, "staircase text or JSON file");
    }
    if (n == "suppress" || n == "slice") s->add_option("--t", sa.t, "level")->required();
    if (n == "suppress-seq") s->add_option("--ts", sa.ts, "levels, e.g. 1,0")->required();
    if (n == "collide") {
      s->add_option("--a", sa.heights, "first staircase heights");
      s->add_option("--b", sa.other, "second staircase heights")->required();
    }
    s->callback([&st_op, n] { st_op = n; });
  }

  // chain
  auto* ch = app.add_subcommand("chain", "residual chain and its special fiber");
  add_common(ch);
  std::string ch_heights, ch_file, ch_ns;
  int ch_v = 1;
  ch->add_option("--heights", ch_heights, "column heights");
  ch->add_option("--file", ch_file, "staircase file");
  ch->add_option("--v", ch_v, "speed")->required();
  ch->add_option("--ns", ch_ns, "levels n_1 > n_2 > ...")->required();

  // nagata
  auto* ng = app.add_subcommand("nagata", "k^2 fat points of multiplicity m");
  add_common(ng);
  int ng_k = 0, ng_m = 0, ng_dmax = -1, ng_trials = 3;
  bool ng_oracle = false, ng_cert = false;
  std::string ng_out;
  ng->add_option("--k", ng_k)->required();
  ng->add_option("--m", ng_m)->required();
  ng->add_flag("--oracle", ng_oracle, "compare ranks with the virtual Hilbert function");
  ng->add_flag("--certificate", ng_cert, "emit the recursive certificate");
  ng->add_option("--d-max", ng_dmax, "largest degree for the oracle (default km+k)");
  ng->add_option("--trials", ng_trials, "random trials per degree");
  ng->add_option("--out", ng_out, "write the certificate JSON here");

  // limit
  auto* lm = app.add_subcommand("limit", "check a specialization plan file");
  add_common(lm);
  std::string lm_file;
  bool lm_verify = false, lm_boundary = false, lm_oracle = false;
  lm->add_option("plan", lm_file, "plan JSON file")->required();
  lm->add_flag("--verify-limit", lm_verify, "compute the flat limit and test the inclusion");
  lm->add_flag("--allow-boundary", lm_boundary, "accept boundary levels");
  lm->add_flag("--oracle", lm_oracle, "decide hypotheses by exact rank");

  // hilbert
  auto* hb = app.add_subcommand("hilbert", "virtual Hilbert function and critical degree");
  add_common(hb);
  int hb_k = 0, hb_m = 0;
  hb->add_option("--k", hb_k)->required();
  hb->add_option("--m", hb_m)->required();

  // enriques
  auto* en = app.add_subcommand("enriques", "four-point constellation");
  en->require_subcommand(1);
  std::string en_op, en_mult;
  int en_m = 1, en_max = 12;
  for (const char* name : {"constellation", "degree", "search", "report"}) {
    auto* s = en->add_subcommand(name);
    add_common(s);
    const std::string n = name;
    if (n == "degree") s->add_option("--mult", en_mult, "m_0,...,m_7")->required();
    if (n == "search") s->add_option("--m", en_m)->required();
    if (n == "report") s->add_option("--max-m", en_max);
    s->callback([&en_op, n] { en_op = n; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kPass : kInvalid;
  }

  try {
    cfg.finalize();
    if (st->parsed()) return run_staircase(cfg, st_op, sa);
    if (ch->parsed()) return run_chain(cfg, ch_heights, ch_file, ch_v, ch_ns);
    if (ng->parsed()) return run_nagata(cfg, ng_k, ng_m, ng_oracle, ng_cert, ng_dmax, ng_trials, ng_out);
    if (lm->parsed()) return run_limit(cfg, lm_file, lm_verify, lm_boundary, lm_oracle);
    if (hb->parsed()) return run_hilbert(cfg, hb_k, hb_m);
    if (en->parsed()) return run_enriques(cfg, en_op, en_mult, en_m, en_max);
  } catch (const ResourceLimit& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const CapExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const CapExhausted& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const PrecisionExceeded& e) {
    std::cerr << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const IdentityFailure& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const HypothesisFailed& e) {
    std::cerr << "check failed: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kInvalid;
  }
  return kInvalid;
}
