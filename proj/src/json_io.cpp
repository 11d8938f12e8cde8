#include "tropic/json_io.hpp"

#include <fstream>

namespace tropic {

Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

Rat rat_from_json(const Json& j, const ParamMap& params) {
  if (j.is_number_integer()) return Rat(j.get<long>());
  if (!j.is_string()) throw ParseError("rational must be a string or integer");
  std::string s = j.get<std::string>();
  if (s.empty()) throw ParseError("empty rational literal");
  bool neg = s[0] == '-';
  auto it = params.find(neg ? s.substr(1) : s);
  if (it != params.end()) return neg ? Rat(-it->second) : it->second;
  try {
    return parse_rat(s);
  } catch (const std::exception& e) {
    throw ParseError(e.what());
  }
}

Json rat_to_json(const Rat& r) { return format_rat(r); }

RatVec ratvec_from_json(const Json& j, const ParamMap& params) {
  if (!j.is_array()) throw ParseError("vector must be an array");
  RatVec v;
  for (const Json& x : j) v.push_back(rat_from_json(x, params));
  return v;
}

Json ratvec_to_json(const RatVec& v) {
  Json j = Json::array();
  for (const Rat& x : v) j.push_back(rat_to_json(x));
  return j;
}

IntVec intvec_from_json(const Json& j, const ParamMap& params) {
  RatVec r = ratvec_from_json(j, params);
  IntVec v;
  for (const Rat& x : r) {
    if (x.get_den() != 1)
      throw ParseError("integer entry expected, got " + format_rat(x));
    v.push_back(x.get_num());
  }
  return v;
}

Json intvec_to_json(const IntVec& v) {
  Json j = Json::array();
  for (const Int& x : v) j.push_back(x.get_str());
  return j;
}

Degree degree_from_json(const Json& j, const ParamMap& params) {
  if (!j.is_object() || !j.contains("n") || !j.contains("rays"))
    throw ParseError("degree needs \"n\" and \"rays\"");
  Degree d;
  d.n = j.at("n").get<int>();
  for (const Json& r : j.at("rays")) {
    IntVec v = intvec_from_json(r.at("v"), params);
    int c = r.contains("count") ? r.at("count").get<int>() : 1;
    d.rays[v] += c;
  }
  return d;
}

Json degree_to_json(const Degree& d) {
  Json j;
  j["n"] = d.n;
  Json rays = Json::array();
  for (auto& [v, c] : d.rays) rays.push_back({{"v", intvec_to_json(v)}, {"count", c}});
  j["rays"] = rays;
  return j;
}

AffineConstraint constraint_from_json(const Json& j, int n,
                                      const ParamMap& params) {
  AffineConstraint a;
  a.n = n;
  a.base = ratvec_from_json(j.at("base"), params);
  if (j.contains("directions"))
    for (const Json& d : j.at("directions"))
      a.directions.push_back(intvec_from_json(d, params));
  return a;
}

Json constraint_to_json(const AffineConstraint& a) {
  Json j;
  j["base"] = ratvec_to_json(a.base);
  Json dirs = Json::array();
  for (const IntVec& d : a.directions) dirs.push_back(intvec_to_json(d));
  j["directions"] = dirs;
  return j;
}

ProblemSpec problem_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("problem file must be a JSON object");
  ProblemSpec p;
  if (j.contains("params"))
    for (auto& [k, v] : j.at("params").items())
      p.params[k] = rat_from_json(v);
  p.degree = degree_from_json(j.at("degree"), p.params);
  if (!j.contains("constraints")) throw ParseError("problem needs \"constraints\"");
  for (const Json& c : j.at("constraints"))
    p.constraints.push_back(constraint_from_json(c, p.degree.n, p.params));
  if (j.contains("options")) {
    const Json& o = j.at("options");
    if (o.contains("seed")) p.options.seed = o.at("seed").get<std::uint64_t>();
    if (o.contains("box")) p.options.box = o.at("box").get<long>();
    if (o.contains("allow_resample"))
      p.options.allow_resample = o.at("allow_resample").get<bool>();
    if (o.contains("max_retries"))
      p.options.max_retries = o.at("max_retries").get<int>();
    if (o.contains("threads")) p.options.threads = o.at("threads").get<int>();
    if (o.contains("audit_warnings_only"))
      p.options.audit_warnings_only = o.at("audit_warnings_only").get<bool>();
  }
  return p;
}

Json solution_to_json(const CurveSolution& s) {
  Json j;
  Json vp = Json::array();
  for (const RatVec& v : s.vertex_positions) vp.push_back(ratvec_to_json(v));
  j["vertex_positions"] = vp;
  Json el = Json::object();
  for (auto& [e, l] : s.edge_lengths) el[std::to_string(e)] = rat_to_json(l);
  j["edge_lengths"] = el;
  return j;
}

Json count_result_to_json(const CountResult& r) {
  Json j;
  j["total"] = r.total.get_str();
  j["resamples"] = r.resamples;
  Json curves = Json::array();
  for (const CurveRecord& c : r.curves) {
    Json e;
    e["code"] = c.code;
    e["marked_weight"] = c.mult.marked_weight.get_str();
    e["D"] = c.mult.D_index.get_str();
    Json deltas = Json::array();
    for (const Int& d : c.mult.deltas) deltas.push_back(d.get_str());
    e["deltas"] = deltas;
    e["D_tilde"] = c.mult.D_tilde.get_str();
    e["contribution"] = c.mult.contribution.get_str();
    e["solution"] = solution_to_json(c.solution);
    curves.push_back(e);
  }
  j["curves"] = curves;
  Json cons = Json::array();
  for (const AffineConstraint& a : r.constraints_used)
    cons.push_back(constraint_to_json(a));
  j["constraints_used"] = cons;
  j["warnings"] = r.warnings;
  return j;
}

Int resummed_total(const Json& count_result) {
  Int s = 0;
  for (const Json& c : count_result.at("curves"))
    s += Int(c.at("contribution").get<std::string>());
  return s;
}

HPolyhedron cell_from_json(const Json& j, int n) {
  HPolyhedron p;
  p.n = n;
  for (const Json& q : j.at("ineqs")) {
    RatVec m = ratvec_from_json(q.at("m"));
    if (int(m.size()) != n) throw ParseError("inequality of wrong dimension");
    p.ineqs.push_back(normalize_ineq(m, rat_from_json(q.at("c"))));
  }
  return p;
}

Json cell_to_json(const HPolyhedron& p) {
  Json j;
  Json ineqs = Json::array();
  for (const LinIneq& q : p.ineqs)
    ineqs.push_back({{"m", intvec_to_json(q.m)}, {"c", q.c.get_str()}});
  j["ineqs"] = ineqs;
  return j;
}

Fan fan_from_json(const Json& j) {
  Fan f;
  f.n = j.at("n").get<int>();
  for (const Json& c : j.at("cones")) f.cones.push_back(cell_from_json(c, f.n));
  return f;
}

PolyhedralComplex complex_from_json(const Json& j) {
  PolyhedralComplex p;
  p.n = j.at("n").get<int>();
  for (const Json& c : j.at("cells")) p.cells.push_back(cell_from_json(c, p.n));
  return p;
}

Json complex_to_json(const PolyhedralComplex& p) {
  Json j;
  j["n"] = p.n;
  Json cells = Json::array();
  for (const HPolyhedron& c : p.cells) cells.push_back(cell_to_json(c));
  j["cells"] = cells;
  return j;
}

}  // namespace tropic
