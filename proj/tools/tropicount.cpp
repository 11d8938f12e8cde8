// tropicount: count tropical curves matching affine constraints, census the
// types of a degree, check the 2-D multiplicity equivalence, build adapted
// decompositions, and print the Kontsevich oracle.
//
// Exit codes: 0 success, 1 validation/parse error, 2 non-generic constraints.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <iostream>
#include <optional>

#include "tropic/json_io.hpp"

using namespace tropic;

namespace {

struct OutputMode {
  bool json = false;
  bool pretty = false;
};

void emit(const Json& j, const OutputMode& om) {
  std::cout << j.dump(om.pretty ? 2 : -1) << "\n";
}

struct CountFlags {
  std::optional<std::uint64_t> seed;
  std::optional<long> box;
  bool no_resample = false;
  std::optional<int> threads;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed override");
    cmd->add_option("--box", box, "resampling box override");
    cmd->add_flag("--no-resample", no_resample, "abort on non-generic hits");
    cmd->add_option("--threads", threads, "worker threads");
  }

  void apply(CountOptions& o) const {
    if (seed) o.seed = *seed;
    if (box) o.box = *box;
    if (no_resample) o.allow_resample = false;
    if (threads) o.threads = *threads;
    if (const char* mr = std::getenv("TROPICOUNT_MAX_RETRIES"))
      o.max_retries = std::atoi(mr);
  }
};

ProblemSpec load_problem(const std::string& path) {
  return problem_from_json(load_json(path));
}

int cmd_count(const std::string& file, const CountFlags& fl,
              const OutputMode& om) {
  ProblemSpec p = load_problem(file);
  fl.apply(p.options);
  CountResult r = count_tropical(p.degree, p.constraints, p.options);
  if (om.json || om.pretty) {
    emit(count_result_to_json(r), om);
  } else {
    std::cout << "total " << r.total.get_str() << " (" << r.curves.size()
              << " curves, " << r.resamples << " resamples)\n";
    for (const CurveRecord& c : r.curves)
      std::cout << "  w " << c.mult.marked_weight.get_str() << "  D "
                << c.mult.D_index.get_str() << "  D~ "
                << c.mult.D_tilde.get_str() << "  contributes "
                << c.mult.contribution.get_str() << "  [" << c.code << "]\n";
    for (const std::string& w : r.warnings) std::cout << "warning: " << w << "\n";
  }
  return 0;
}

int cmd_types(const std::string& file, const OutputMode& om) {
  Json j = load_json(file);
  Degree d = degree_from_json(j.contains("degree") ? j.at("degree") : j);
  DegreeValidation v = validate_degree(d);
  if (!v.ok) throw std::runtime_error("invalid degree: " + v.reason);
  std::vector<TropicalType> types = enumerate_types(d);
  if (om.json || om.pretty) {
    Json out;
    out["e"] = d.e();
    out["count"] = types.size();
    Json list = Json::array();
    for (const TropicalType& t : types) {
      Json e;
      e["code"] = canonical_code(t);
      e["bounded"] = t.bounded_count();
      Json w = Json::array();
      for (const TypeEdge& te : t.edges)
        if (te.bounded()) w.push_back(te.weight.get_str());
      e["bounded_weights"] = w;
      list.push_back(e);
    }
    out["types"] = list;
    emit(out, om);
  } else {
    std::cout << types.size() << " types, e = " << d.e() << ", bounded edges = "
              << d.e() - 3 << " each\n";
    for (const TropicalType& t : types)
      std::cout << "  " << canonical_code(t) << "\n";
  }
  return 0;
}

int cmd_check2d(const std::string& file, const CountFlags& fl,
                const OutputMode& om) {
  ProblemSpec p = load_problem(file);
  fl.apply(p.options);
  CountResult r = count_tropical(p.degree, p.constraints, p.options);
  bool all_equal = true;
  Json rows = Json::array();
  for (const CurveRecord& c : r.curves) {
    Equivalence2D eq = check_2d_equivalence(c.solution.type, r.constraints_used);
    all_equal = all_equal && eq.equal;
    if (om.json || om.pretty)
      rows.push_back({{"code", c.code},
                      {"lhs", eq.lhs.get_str()},
                      {"rhs", eq.rhs.get_str()},
                      {"equal", eq.equal}});
    else
      std::cout << "  " << eq.lhs.get_str() << " = " << eq.rhs.get_str()
                << "  " << (eq.equal ? "ok" : "MISMATCH") << "  [" << c.code
                << "]\n";
  }
  if (om.json || om.pretty) {
    Json out;
    out["total"] = r.total.get_str();
    out["rows"] = rows;
    out["all_equal"] = all_equal;
    emit(out, om);
  } else {
    std::cout << "total " << r.total.get_str() << ", "
              << (all_equal ? "all rows equal" : "MISMATCH") << "\n";
  }
  return all_equal ? 0 : 1;
}

int cmd_decompose(const std::string& file, const CountFlags& fl,
                  const OutputMode& om) {
  Json j = load_json(file);
  Fan sigma = fan_from_json(j.at("fan"));
  std::vector<CurveSolution> curves;
  if (j.contains("problem")) {
    ProblemSpec p = problem_from_json(j.at("problem"));
    fl.apply(p.options);
    CountResult r = count_tropical(p.degree, p.constraints, p.options);
    for (const CurveRecord& c : r.curves) curves.push_back(c.solution);
  }
  std::vector<RatVec> extra;
  if (j.contains("extra_points"))
    for (const Json& x : j.at("extra_points")) extra.push_back(ratvec_from_json(x));

  PolyhedralComplex p = adapted_decomposition(curves, sigma, extra);
  bool valid = check_complex(p);
  bool complete = check_complete(p);
  bool skeleton = true;
  for (const CurveSolution& s : curves)
    for (const TypeEdge& e : s.type.edges) {
      const RatVec& a = s.vertex_positions[e.v0];
      skeleton = skeleton &&
                 (e.bounded()
                      ? contains_in_one_skeleton(p, a, s.vertex_positions[e.v1])
                      : contains_in_one_skeleton(p, a, to_rat(e.dir), true));
    }
  Fan back = asymptotic_fan(p);
  auto keyset = [](const std::vector<HPolyhedron>& cs) {
    std::vector<std::string> k;
    for (const HPolyhedron& c : cs) k.push_back(poly_key(c));
    std::sort(k.begin(), k.end());
    return k;
  };
  bool fan_match = keyset(back.cones) == keyset(sigma.cones);
  Int k = integral_rescale(p, curves);

  Json out;
  out["complex"] = complex_to_json(p);
  out["checks"] = {{"complex", valid},
                   {"complete", complete},
                   {"skeleton", skeleton},
                   {"asymptotic_fan", fan_match}};
  out["rescale"] = k.get_str();
  if (om.json || om.pretty) {
    emit(out, om);
  } else {
    std::cout << p.cells.size() << " maximal cells, rescale k = " << k.get_str()
              << "\n  complex " << (valid ? "ok" : "FAIL") << ", complete "
              << (complete ? "ok" : "FAIL") << ", skeleton "
              << (skeleton ? "ok" : "FAIL") << ", asymptotic fan "
              << (fan_match ? "ok" : "FAIL") << "\n";
  }
  return (valid && complete && skeleton && fan_match) ? 0 : 1;
}

int cmd_oracle(int dmax, const OutputMode& om) {
  std::vector<Int> n = kontsevich_oracle(dmax);
  if (om.json || om.pretty) {
    Json out = Json::array();
    for (const Int& x : n) out.push_back(x.get_str());
    emit(out, om);
  } else {
    for (int d = 1; d <= dmax; ++d)
      std::cout << "N_" << d << " = " << n[d - 1].get_str() << "\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact counts of rational tropical curves"};
  app.require_subcommand(1);

  OutputMode om;
  app.add_flag("--json", om.json, "machine-readable output");
  app.add_flag("--pretty", om.pretty, "indented JSON output");

  std::string file;
  int dmax = 1;
  CountFlags fl;

  CLI::App* count = app.add_subcommand("count", "count curves for a problem file");
  count->add_option("file", file, "problem JSON")->required();
  fl.add_to(count);

  CLI::App* types = app.add_subcommand("types", "census of types of a degree");
  types->add_option("file", file, "degree JSON")->required();

  CLI::App* check2d =
      app.add_subcommand("check2d", "verify w(G)*D = prod mult(V) per curve");
  check2d->add_option("file", file, "problem JSON")->required();
  fl.add_to(check2d);

  CLI::App* decompose =
      app.add_subcommand("decompose", "adapted decomposition for curves + fan");
  decompose->add_option("file", file, "fan/problem JSON")->required();
  fl.add_to(decompose);

  CLI::App* oracle = app.add_subcommand("oracle", "Kontsevich counts N_1..N_dmax");
  oracle->add_option("dmax", dmax, "maximal degree")->required();

  for (CLI::App* c : {count, types, check2d, decompose, oracle}) {
    c->add_flag("--json", om.json, "machine-readable output");
    c->add_flag("--pretty", om.pretty, "indented JSON output");
  }

  CLI11_PARSE(app, argc, argv);

  try {
    if (count->parsed()) return cmd_count(file, fl, om);
    if (types->parsed()) return cmd_types(file, om);
    if (check2d->parsed()) return cmd_check2d(file, fl, om);
    if (decompose->parsed()) return cmd_decompose(file, fl, om);
    return cmd_oracle(dmax, om);
  } catch (const NonGenericConstraints& e) {
    std::cerr << "non-generic constraints: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
