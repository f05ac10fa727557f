#include "limitseries/io.hpp"

#include <sstream>

#include "limitseries/errors.hpp"

namespace limitseries {

namespace {

int parse_int(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(s, &used);
  } catch (const std::exception&) {
    throw ParseError("expected an integer for " + what + ", got '" + s + "'");
  }
  if (used != s.size()) throw ParseError("trailing characters in " + what + ": '" + s + "'");
  return v;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  return s.substr(a, s.find_last_not_of(" \t\r") - a + 1);
}

// nlohmann errors surface as ParseError.
template <class F>
auto guarded(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error&) {
    throw;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

std::vector<int> int_list(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of integers");
  std::vector<int> out;
  for (const auto& x : j) {
    if (!x.is_number_integer()) throw ParseError(std::string(what) + " must be an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

StaircaseTuple tuple_from_json(const Json& j, const char* what) {
  if (!j.is_array()) throw ParseError(std::string(what) + " must be an array of staircases");
  StaircaseTuple out;
  for (const auto& e : j) out.push_back(staircase_from_any(e));
  return out;
}

}  // namespace

// ---------------------------------------------------------------- staircases

Staircase parse_staircase_text(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<int> cols;
  int expect = 0;
  while (std::getline(in, line)) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError("expected 'index:height', got '" + line + "'");
    const int idx = parse_int(trim(line.substr(0, colon)), "index");
    const int h = parse_int(trim(line.substr(colon + 1)), "height");
    if (idx != expect) throw ParseError("indices must be 0, 1, 2, ... in order; got " + std::to_string(idx));
    cols.push_back(h);
    ++expect;
  }
  return Staircase::from_columns(cols);
}

std::string format_staircase_text(const Staircase& e) {
  std::ostringstream os;
  const auto cols = e.columns();
  for (std::size_t y = 0; y < cols.size(); ++y) os << y << ':' << cols[y] << '\n';
  return os.str();
}

Staircase staircase_from_json(const Json& j) {
  return guarded("staircase", [&] {
    if (!j.is_object() || !j.contains("dim") || !j.contains("heights"))
      throw ParseError("staircase JSON needs \"dim\" and \"heights\"");
    const int dim = j.at("dim").get<int>();
    if (dim < 1) throw ParseError("dim must be positive");
    Staircase::HeightMap m;
    for (const auto& entry : j.at("heights")) {
      const auto v = int_list(entry, "heights entry");
      if (static_cast<int>(v.size()) != dim) throw ParseError("heights entries need dim integers");
      Exponent base(v.begin(), v.end() - 1);
      if (m.count(base)) throw ParseError("repeated base index in heights");
      m[base] = v.back();
    }
    return Staircase::from_heights(dim, m);
  });
}

Json to_json(const Staircase& e) {
  Json hs = Json::array();
  for (const auto& [base, h] : e.heights()) {
    Json entry(base);
    entry.push_back(h);
    hs.push_back(entry);
  }
  return Json{{"dim", e.dim()}, {"heights", hs}};
}

Staircase parse_heights_list(const std::string& s) {
  std::vector<int> cols;
  if (trim(s).empty()) return Staircase::from_columns(cols);
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) cols.push_back(parse_int(trim(part), "height"));
  return Staircase::from_columns(cols);
}

std::string format_heights_list(const Staircase& e) {
  std::string out;
  for (int h : e.columns()) out += (out.empty() ? "" : ",") + std::to_string(h);
  return out;
}

Staircase staircase_from_any(const Json& j) {
  if (j.is_array()) return Staircase::from_columns(int_list(j, "column heights"));
  return staircase_from_json(j);
}

Json to_json(const StaircaseTuple& es) {
  Json out = Json::array();
  for (const auto& e : es) out.push_back(e.dim() == 2 ? Json(e.columns()) : to_json(e));
  return out;
}

// ---------------------------------------------------------------- ring elements

Json to_json(const RingContext& ctx, const Poly& p) {
  const auto codec = ctx.codec();
  Json out = Json::array();
  for (const auto& term : p)
    out.push_back(Json::array({codec.x_exponent(term.key), codec.t_exponent(term.key), ctx.field.to_signed(term.coef)}));
  return out;
}

Poly poly_from_json(const RingContext& ctx, const Json& j) {
  return guarded("polynomial", [&] {
    if (!j.is_array()) throw ParseError("polynomial must be an array of terms");
    const auto codec = ctx.codec();
    std::vector<Term> terms;
    for (const auto& t : j) {
      if (!t.is_array() || t.size() != 3) throw ParseError("term must be [exponents, t, coefficient]");
      const auto a = int_list(t[0], "exponent vector");
      if (static_cast<int>(a.size()) != ctx.dim) throw ParseError("exponent vector has the wrong length");
      for (int x : a)
        if (x < 0 || x > MonomialCodec::kMaxExponent) throw ParseError("exponent out of range");
      const int b = t[1].get<int>();
      if (b < 0 || b > MonomialCodec::kMaxT) throw ParseError("t-exponent out of range");
      const auto c = t[2].get<std::int64_t>();
      terms.push_back({codec.encode(a, b), ctx.field.from_int(c)});
    }
    return poly_normalize(ctx.field, std::move(terms));
  });
}

Json to_json(const MonomialSpace& m) {
  const auto& ctx = m.context();
  Json basis = Json::array();
  for (const auto& p : m.basis()) basis.push_back(to_json(ctx, p));
  return Json{{"dim", ctx.dim},
              {"prime", ctx.field.characteristic()},
              {"t_trunc", ctx.t_trunc},
              {"x_cap", ctx.x_cap},
              {"basis", basis}};
}

// ---------------------------------------------------------------- plans

PlanFile plan_from_json(const Json& j) {
  return guarded("plan file", [&] {
    if (!j.is_object()) throw ParseError("plan file must be a JSON object");
    for (const char* key : {"shapes", "speeds", "levels", "degree"})
      if (!j.contains(key)) throw ParseError(std::string("plan file is missing \"") + key + "\"");
    PlanFile out;
    out.plan.shapes = tuple_from_json(j.at("shapes"), "shapes");
    out.plan.speeds = int_list(j.at("speeds"), "speeds");
    out.plan.levels = int_list(j.at("levels"), "levels");
    out.plan.check_structure();
    for (std::size_t i = 1; i < out.plan.levels.size(); ++i)
      if (out.plan.levels[i] >= out.plan.levels[i - 1]) throw ParseError("levels must be strictly decreasing");
    out.allow_boundary = j.value("allow_boundary", false);
    const int d = j.at("degree").get<int>();
    if (d < 0) throw ParseError("degree must be nonnegative");
    if (j.contains("on_divisor") || j.contains("off_divisor")) {
      DivisorSystem sys;
      sys.d = d;
      if (j.contains("on_divisor")) sys.on_divisor = tuple_from_json(j.at("on_divisor"), "on_divisor");
      if (j.contains("off_divisor")) {
        for (const auto& s : j.at("off_divisor")) {
          Site site;
          if (s.contains("multiplicity")) {
            site = Site::fat_point(s.at("multiplicity").get<int>());
          } else if (s.contains("shape")) {
            site.shape = staircase_from_any(s.at("shape"));
          } else {
            throw ParseError("off_divisor entries need \"multiplicity\" or \"shape\"");
          }
          if (s.contains("position")) {
            const auto p = s.at("position").get<std::vector<std::uint64_t>>();
            if (p.size() != 2) throw ParseError("position must be [x, y]");
            site.position = PlanePoint{p[0], p[1]};
          }
          sys.off_divisor.push_back(site);
        }
      }
      out.model = sys.model(out.plan.r());
      out.system = sys;
    } else if (j.contains("line_base_degrees")) {
      out.model.d = d;
      out.model.line_base_degrees = int_list(j.at("line_base_degrees"), "line_base_degrees");
      for (int b : out.model.line_base_degrees)
        if (b < 0) throw ParseError("line base degrees must be nonnegative");
    } else {
      throw ParseError("plan file needs \"line_base_degrees\" or a divisor system");
    }
    return out;
  });
}

Json to_json(const PlanFile& p) {
  Json j{{"shapes", to_json(p.plan.shapes)}, {"speeds", p.plan.speeds}, {"levels", p.plan.levels},
         {"degree", p.model.d}};
  if (p.system) {
    j["on_divisor"] = to_json(p.system->on_divisor);
    Json off = Json::array();
    for (const auto& s : p.system->off_divisor) off.push_back(Json{{"shape", to_json(StaircaseTuple{s.shape})[0]}});
    j["off_divisor"] = off;
  } else {
    j["line_base_degrees"] = p.model.line_base_degrees;
  }
  j["allow_boundary"] = p.allow_boundary;
  return j;
}

Json to_json(const std::vector<Finding>& findings) {
  Json out = Json::array();
  for (const auto& f : findings)
    out.push_back(Json{{"kind", to_string(f.kind)},
                       {"severity", f.severity == Finding::Severity::Error ? "error" : "warning"},
                       {"level", f.level},
                       {"site", f.site},
                       {"message", f.message}});
  return out;
}

Json to_json(const std::vector<LevelVerdict>& verdicts) {
  Json out = Json::array();
  for (const auto& v : verdicts) {
    Json j{{"level", v.level},
           {"slice_degree", v.slice_degree},
           {"base_degree", v.base_degree},
           {"restricted_degree", v.restricted_degree},
           {"holds", v.holds}};
    if (v.dim_with_slice) j["dim_with_slice"] = *v.dim_with_slice;
    if (v.dim_next) j["dim_next"] = *v.dim_next;
    out.push_back(j);
  }
  return out;
}

Json to_json(const ResidualCertificate& c) {
  Json j{{"r", c.r},
         {"residual", to_json(c.residual)},
         {"algebraic_residual", to_json(c.algebraic_residual)},
         {"findings", to_json(c.findings)},
         {"verdicts", to_json(c.verdicts)},
         {"boundary_override", c.boundary_override}};
  if (c.dimension_bound) j["dimension_bound"] = *c.dimension_bound;
  return j;
}

Json to_json(const InclusionResult& r) {
  return Json{{"contained", r.contained},
              {"limit_dimension", r.limit_dimension},
              {"target_dimension", r.target_dimension},
              {"t_precision", r.t_precision}};
}

// ---------------------------------------------------------------- certificates

Json to_json(const NagataCertificate& c) {
  Json plans = Json::array();
  for (const auto& st : c.steps) {
    Json slices = Json::array();
    for (const auto& row : st.slice_degrees)
      slices.push_back(Json{{"level", row.level},
                            {"degrees", row.degrees},
                            {"total", row.total},
                            {"by_count", row.by_count},
                            {"by_cardinal", row.by_cardinal},
                            {"holds", row.holds}});
    plans.push_back(Json{{"k", st.k},
                         {"d", st.d},
                         {"s", st.s},
                         {"v", st.setup.plan.speeds},
                         {"levels", st.setup.plan.levels},
                         {"slice_degrees", slices},
                         {"verdicts", to_json(st.verdicts)},
                         {"findings", to_json(st.findings)},
                         {"residual", to_json(st.residual)},
                         {"algebraic_residual", to_json(st.algebraic_residual)},
                         {"line_degree", st.line_degree},
                         {"algebraic_line_degree", st.algebraic_line_degree},
                         {"residual_critical_degree", st.residual_critical},
                         {"line_degree_ok", st.line_degree_ok},
                         {"passed", st.passed}});
  }
  Json ids = Json::array();
  for (const auto& id : c.identities)
    ids.push_back(Json{{"name", id.name}, {"k", id.k}, {"m", id.m}, {"s", id.s}, {"lhs", id.lhs}, {"rhs", id.rhs},
                       {"holds", id.holds}});
  return Json{{"k", c.k},
              {"m", c.m},
              {"d", c.d_c},
              {"plans", plans},
              {"base_case", Json{{"k", c.base_case_k}, {"citation", c.base_case}}},
              {"identities", ids},
              {"seed", c.seed},
              {"prime", c.prime},
              {"passed", c.passed}};
}

Json to_json(const NagataTable& t) {
  Json rows = Json::array();
  for (const auto& r : t.rows)
    rows.push_back(Json{{"d", r.d}, {"oracle", r.oracle}, {"virtual", r.virtual_value}, {"match", r.match}});
  return Json{{"k", t.k},  {"m", t.m},       {"seed", t.seed}, {"prime", t.prime},
              {"trials", t.trials}, {"rows", rows}, {"pass", t.pass}};
}

// ---------------------------------------------------------------- diagrams

Json to_json(const EnriquesDiagram& d) {
  Json vs = Json::array();
  for (const auto& v : d.vertices)
    vs.push_back(Json{{"id", v.id}, {"proximate_to", std::vector<int>(v.proximate_to.begin(), v.proximate_to.end())}});
  Json j{{"vertices", vs}};
  j["multiplicities"] = d.multiplicities ? Json(*d.multiplicities) : Json(nullptr);
  return j;
}

EnriquesDiagram enriques_from_json(const Json& j) {
  return guarded("diagram", [&] {
    EnriquesDiagram d;
    for (const auto& v : j.at("vertices")) {
      const auto prox = int_list(v.at("proximate_to"), "proximate_to");
      d.vertices.push_back({v.at("id").get<int>(), std::set<int>(prox.begin(), prox.end())});
    }
    if (j.contains("multiplicities") && !j.at("multiplicities").is_null())
      d.multiplicities = int_list(j.at("multiplicities"), "multiplicities");
    d.check_structure();
    return d;
  });
}

}  // namespace limitseries
