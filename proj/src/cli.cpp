#include "qfrucht/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <map>
#include <ostream>
#include <set>
#include <sstream>

#include "qfrucht/corresp.hpp"
#include "qfrucht/frucht.hpp"
#include "qfrucht/json_io.hpp"
#include "qfrucht/rigidity.hpp"

namespace qfrucht {

namespace {

const char* kUsage = R"(usage: qfrucht <command> [options]

commands:
  group FILE                      validate a group file and report its structure
  irreps FILE                     compute a complete set of unitary irreps
  cayley --dual FILE --projection FILE
                                  build and verify a quantum Cayley graph
  verify FILE                     verify the quantum graph axioms of an operator
  rigidity --dual FILE --projection FILE
                                  level-set rigidity verdict for a projection
  rigid-search --dual FILE        randomized search for a rigid projection
  closure-check FILE              two-product closure dimensions per trial
  gap-cert FILE                   perfect-group rigidity certificate
  combine --mode directed|undirected FILE...
                                  combine regular loopless quantum graphs
  frucht --dual FILE              coloured family + undirected combination
  classical-frucht FILE --mode directed|undirected
                                  classical construction with automorphism check
  corresp-check --dual FILE --irreps I,J,...
                                  correspondence isometry check

common options:
  --seed N       randomization seed (default 0)
  --tol X        tolerance override (also via QFRUCHT_TOL)
  --trials N     trial count for randomized searches
  --jobs N       parallel trial workers
  --samples N    sample count (corresp-check)
  -o, --out F    write the report JSON to a file
)";

struct ParsedArgs {
  std::string command;
  std::vector<std::string> positional;
  std::map<std::string, std::string> options;
  std::set<std::string> flags;

  bool has(const std::string& key) const { return options.count(key) > 0; }
  std::string get(const std::string& key, const std::string& fallback = "") const {
    auto it = options.find(key);
    return it == options.end() ? fallback : it->second;
  }
  const std::string& require(const std::string& key) const {
    auto it = options.find(key);
    if (it == options.end())
      throw input_error("missing required option --" + key);
    return it->second;
  }
};

const std::set<std::string> kValueOptions = {
    "seed", "tol", "trials", "jobs", "samples", "out",
    "dual", "projection", "mode", "irreps"};
const std::set<std::string> kBoolFlags = {"verify-aut", "dot"};

ParsedArgs parse_args(const std::vector<std::string>& args) {
  ParsedArgs p;
  if (args.empty()) throw input_error("no command given");
  p.command = args[0];
  for (size_t i = 1; i < args.size(); ++i) {
    std::string a = args[i];
    if (a == "-o") a = "--out";
    if (a.rfind("--", 0) == 0) {
      std::string key = a.substr(2);
      if (kBoolFlags.count(key)) {
        p.flags.insert(key);
      } else if (kValueOptions.count(key)) {
        if (i + 1 >= args.size())
          throw input_error("option --" + key + " needs a value");
        p.options[key] = args[++i];
      } else {
        throw input_error("unknown option --" + key);
      }
    } else {
      p.positional.push_back(a);
    }
  }
  return p;
}

std::uint64_t parse_seed(const ParsedArgs& a) {
  return std::stoull(a.get("seed", "0"));
}

int parse_int(const ParsedArgs& a, const std::string& key, int fallback) {
  return a.has(key) ? std::stoi(a.get(key)) : fallback;
}

double effective_tol(const ParsedArgs& a) {
  if (a.has("tol")) return std::stod(a.get("tol"));
  if (const char* env = std::getenv("QFRUCHT_TOL")) return std::stod(env);
  return kDefaultTol;
}

Json base_report(const ParsedArgs& a, const std::vector<std::string>& argv) {
  Json r;
  r["schema_version"] = kSchemaVersion;
  r["library_version"] = kLibraryVersion;
  r["command"] = argv;
  r["inputs"] = Json::object();
  return r;
}

void add_input_digest(Json& report, const std::string& path) {
  report["inputs"][path] = file_digest(path);
}

void emit(const ParsedArgs& a, const Json& report, std::ostream& out) {
  if (a.has("out"))
    write_json_file(a.get("out"), report);
  else
    out << report.dump(2) << "\n";
}

FiniteGroup load_group(const std::string& path, Json& report) {
  add_input_digest(report, path);
  return group_from_json(load_json_file(path));
}

struct DualContext {
  FiniteGroup group;
  std::vector<Irrep> irreps;
  QGroupData dual;
};

DualContext load_dual(const ParsedArgs& a, Json& report) {
  DualContext ctx;
  ctx.group = load_group(a.require("dual"), report);
  ctx.irreps = decompose_regular(ctx.group, parse_seed(a));
  ctx.dual = dual_group(ctx.group, ctx.irreps);
  return ctx;
}

Vec load_projection(const ParsedArgs& a, const QGroupData& dual, Json& report) {
  const std::string path = a.require("projection");
  add_input_digest(report, path);
  ProjectionInput p = projection_from_json(load_json_file(path));
  if (p.basis == "lambda") {
    if (p.values.size() != dual.group->order)
      throw input_error("projection: lambda coefficients must have length " +
                        std::to_string(dual.group->order));
    return dual.lambda * p.values;
  }
  if (p.values.size() != dual.space->dim())
    throw input_error("projection: block coordinates must have length " +
                      std::to_string(dual.space->dim()));
  return p.values;
}

Json flags_to_json(const GraphFlags& f, double tol) {
  Json j;
  j["tolerance"] = tol;
  j["schur_idempotent"] = {{"pass", f.schur_idempotent},
                           {"residual", f.schur_residual}};
  j["real"] = {{"pass", f.real}, {"residual", f.real_residual}};
  j["undirected"] = {{"pass", f.undirected}, {"residual", f.undirected_residual}};
  j["loopless"] = {{"pass", f.loopless}, {"residual", f.loop_residual}};
  j["regular"] = {{"pass", f.regular},
                  {"residual", f.regular_residual},
                  {"degree_re", std::real(f.degree)},
                  {"degree_im", std::imag(f.degree)}};
  return j;
}

Json partition_to_json(const LevelPartition& p) {
  Json j = Json::array();
  for (const auto& block : p.blocks) j.push_back(block);
  return j;
}

int cmd_group(const ParsedArgs& a, Json& report) {
  if (a.positional.empty()) throw input_error("group: missing file argument");
  FiniteGroup g = load_group(a.positional[0], report);
  StructureReport sr = structure_report(g);
  report["group"] = {{"name", g.name},
                     {"order", g.order},
                     {"center_size", sr.center.size()},
                     {"conjugacy_classes", sr.conjugacy_classes.size()},
                     {"commutator_subgroup_order", sr.commutator_subgroup.size()},
                     {"is_perfect", sr.is_perfect},
                     {"is_abelian", sr.is_abelian}};
  report["verdict"] = "valid";
  return 0;
}

int cmd_irreps(const ParsedArgs& a, Json& report) {
  if (a.positional.empty()) throw input_error("irreps: missing file argument");
  FiniteGroup g = load_group(a.positional[0], report);
  std::vector<Irrep> irreps = decompose_regular(g, parse_seed(a));
  std::vector<int> dims;
  for (const Irrep& ir : irreps) dims.push_back(ir.dim);
  report["dimensions"] = dims;
  report["schur_orthogonality_residual"] =
      schur_orthogonality_residual(g, irreps);
  report["irreps"] = irreps_to_json(irreps);
  report["verdict"] = "complete";
  return 0;
}

int cmd_cayley(const ParsedArgs& a, Json& report) {
  double tol = effective_tol(a);
  DualContext ctx = load_dual(a, report);
  Vec p = load_projection(a, ctx.dual, report);
  CayleyReport cr = cayley_graph(ctx.dual, p, tol);
  report["projection"] = {{"idempotency_residual", cr.proj_idem_residual},
                          {"self_adjointness_residual", cr.proj_star_residual},
                          {"counit_value_re", std::real(cr.counit_value)},
                          {"counit_value_im", std::imag(cr.counit_value)},
                          {"antipode_symmetry_residual",
                           cr.antipode_sym_residual}};
  report["flags"] = flags_to_json(cr.graph.flags, tol);
  report["undirected_convention_disagreement"] = cr.convention_disagreement;
  report["adjacency"] = linop_to_json(cr.graph.adjacency);
  bool ok = cr.graph.flags.is_quantum_graph();
  report["verdict"] = ok ? "quantum_graph" : "not_a_quantum_graph";
  return ok ? 0 : 1;
}

int cmd_verify(const ParsedArgs& a, Json& report) {
  if (a.positional.empty()) throw input_error("verify: missing file argument");
  add_input_digest(report, a.positional[0]);
  double tol = effective_tol(a);
  LinOp op = linop_from_json(load_json_file(a.positional[0]));
  GraphFlags f = verify_quantum_graph(op, tol);
  report["flags"] = flags_to_json(f, tol);
  report["verdict"] = f.is_quantum_graph() ? "quantum_graph" : "not_a_quantum_graph";
  return f.is_quantum_graph() ? 0 : 1;
}

int cmd_rigidity(const ParsedArgs& a, Json& report) {
  DualContext ctx = load_dual(a, report);
  Vec p = load_projection(a, ctx.dual, report);
  Multiplier t = fourier_multiplier(ctx.dual, p);
  RigidityVerdict v = rigidity_verdict(ctx.group, t);
  report["partition"] = partition_to_json(v.partition);
  report["verdict"] = to_string(v.verdict);
  return v.verdict == Verdict::INCONCLUSIVE ? 1 : 0;
}

int cmd_rigid_search(const ParsedArgs& a, Json& report) {
  DualContext ctx = load_dual(a, report);
  RigidSearchResult r =
      rigid_projection_search(ctx.dual, parse_seed(a), parse_int(a, "trials", 100),
                              parse_int(a, "jobs", 1));
  report["trials_used"] = r.trials_used;
  report["projection"] = projection_to_json(r.projection, "block");
  report["partition"] = partition_to_json(r.verdict.partition);
  report["verdict"] = to_string(r.verdict.verdict);
  return r.verdict.verdict == Verdict::INCONCLUSIVE ? 1 : 0;
}

int cmd_closure_check(const ParsedArgs& a, Json& report) {
  if (a.positional.empty())
    throw input_error("closure-check: missing file argument");
  FiniteGroup g = load_group(a.positional[0], report);
  std::vector<Irrep> irreps = decompose_regular(g, parse_seed(a));
  std::vector<int> dims = closure_check(g, irreps, parse_seed(a),
                                        parse_int(a, "trials", 20),
                                        parse_int(a, "jobs", 1));
  report["dimensions"] = dims;
  report["trivial_start_dimension"] = closure_check_trivial_start(g, irreps);
  bool full = std::all_of(dims.begin(), dims.end(),
                          [&](int d) { return d == g.order; });
  report["verdict"] = full ? "full" : "deficient";
  return full ? 0 : 1;
}

int cmd_gap_cert(const ParsedArgs& a, Json& report) {
  if (a.positional.empty()) throw input_error("gap-cert: missing file argument");
  FiniteGroup g = load_group(a.positional[0], report);
  std::vector<Irrep> irreps = decompose_regular(g, parse_seed(a));
  GapCertificate cert =
      gap_certificate(g, irreps, parse_seed(a), parse_int(a, "trials", 100));
  report["perfect"] = cert.perfect;
  report["abelianization_order"] = cert.abelianization_order;
  if (cert.perfect) {
    report["rigid_verdict"] = to_string(cert.search.verdict.verdict);
    report["trials_used"] = cert.search.trials_used;
    report["lie_witness_dimension"] = cert.lie_witness_dimension;
    report["projection"] = projection_to_json(cert.search.projection, "block");
  }
  report["verdict"] = cert.certified ? "certified" : "refused";
  return cert.certified ? 0 : 1;
}

int cmd_combine(const ParsedArgs& a, Json& report) {
  double tol = effective_tol(a);
  std::string mode = a.require("mode");
  if (mode != "directed" && mode != "undirected")
    throw input_error("combine: --mode must be 'directed' or 'undirected'");
  if (a.positional.empty()) throw input_error("combine: no input graphs");
  std::vector<QuantumGraph> graphs;
  for (const std::string& path : a.positional) {
    add_input_digest(report, path);
    graphs.push_back(make_quantum_graph(linop_from_json(load_json_file(path)), tol));
  }
  CombineResult r = (mode == "directed") ? combine_directed(graphs, tol)
                                         : combine_undirected(graphs, tol);
  report["dimension"] = r.graph.space->dim();
  Json eigs = Json::array();
  for (Cplx e : r.class_eigenvalues)
    eigs.push_back({{"re", std::real(e)}, {"im", std::imag(e)}});
  report["class_eigenvalues"] = eigs;
  report["degree_collision"] = r.degree_collision;
  report["flags"] = flags_to_json(r.graph.flags, tol);
  report["adjacency"] = linop_to_json(r.graph.adjacency);
  bool ok = r.graph.flags.is_quantum_graph() && r.graph.flags.loopless &&
            (mode == "directed" || r.graph.flags.undirected);
  report["verdict"] = ok ? "verified" : "failed";
  return ok ? 0 : 1;
}

int cmd_frucht(const ParsedArgs& a, Json& report) {
  double tol = effective_tol(a);
  DualContext ctx = load_dual(a, report);
  FruchtReport fr = quantum_frucht_pipeline(ctx.dual, tol);
  std::vector<double> degrees;
  for (Cplx d : fr.combined.input_degrees) degrees.push_back(std::real(d));
  report["colour_count"] = fr.family.projections.size();
  report["colour_degrees"] = degrees;
  report["dimension"] = fr.combined.graph.space->dim();
  report["degree_collision"] = fr.combined.degree_collision;
  report["output_classical"] = fr.output_classical;
  report["flags"] = flags_to_json(fr.combined.graph.flags, tol);
  // Level-set rigidity evidence per colour.
  Json evidence = Json::array();
  for (const Vec& p : fr.family.projections) {
    Multiplier t = fourier_multiplier(ctx.dual, p);
    RigidityVerdict v = rigidity_verdict(ctx.group, t);
    evidence.push_back({{"verdict", to_string(v.verdict)},
                        {"partition", partition_to_json(v.partition)}});
  }
  report["colour_rigidity"] = evidence;
  if (a.has("out")) report["adjacency"] = linop_to_json(fr.combined.graph.adjacency);
  const GraphFlags& f = fr.combined.graph.flags;
  bool ok = f.is_quantum_graph() && f.undirected && f.loopless;
  report["verdict"] = ok ? "verified" : "failed";
  return ok ? 0 : 1;
}

int cmd_classical_frucht(const ParsedArgs& a, Json& report) {
  if (a.positional.empty())
    throw input_error("classical-frucht: missing file argument");
  FiniteGroup g = load_group(a.positional[0], report);
  std::string mode = a.get("mode", "undirected");
  if (mode != "directed" && mode != "undirected")
    throw input_error("classical-frucht: --mode must be 'directed' or 'undirected'");
  ClassicalFruchtResult r = classical_frucht(g, mode == "directed");
  report["vertices"] = r.graph.n;
  report["aut_order"] = r.aut.order;
  report["group_order"] = g.order;
  report["verified"] = r.verified;
  report["graph"] = classical_graph_to_json(r.graph);
  if (a.flags.count("dot")) report["dot"] = classical_graph_to_dot(r.graph);
  report["verdict"] = r.verified ? "verified" : "failed";
  return r.verified ? 0 : 1;
}

int cmd_corresp_check(const ParsedArgs& a, Json& report) {
  DualContext ctx = load_dual(a, report);
  std::vector<int> subset;
  std::stringstream ss(a.require("irreps"));
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) subset.push_back(std::stoi(item));
  for (int idx : subset)
    if (idx < 0 || idx >= static_cast<int>(ctx.irreps.size()))
      throw input_error("corresp-check: irrep index out of range");
  IsometryReport r = isometry_check(ctx.dual, subset,
                                    parse_int(a, "samples", 50), parse_seed(a),
                                    std::max(effective_tol(a), 1e-9));
  report["max_deviation"] = r.max_deviation;
  report["samples"] = r.samples;
  report["subset_symmetric"] = r.subset_symmetric;
  report["subset_generating"] = r.subset_generating;
  report["hypotheses_met"] = r.subset_symmetric && r.subset_generating;
  report["phi_rank"] = r.phi_rank;
  report["expected_rank"] = r.expected_rank;
  report["verdict"] = r.pass ? "isometric" : "failed";
  return r.pass ? 0 : 1;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out,
                std::ostream& err) {
  auto start = std::chrono::steady_clock::now();
  ParsedArgs parsed;
  Json report;
  try {
    parsed = parse_args(args);
    report = base_report(parsed, args);
    report["seed"] = parse_seed(parsed);
    int code;
    if (parsed.command == "group") code = cmd_group(parsed, report);
    else if (parsed.command == "irreps") code = cmd_irreps(parsed, report);
    else if (parsed.command == "cayley") code = cmd_cayley(parsed, report);
    else if (parsed.command == "verify") code = cmd_verify(parsed, report);
    else if (parsed.command == "rigidity") code = cmd_rigidity(parsed, report);
    else if (parsed.command == "rigid-search") code = cmd_rigid_search(parsed, report);
    else if (parsed.command == "closure-check") code = cmd_closure_check(parsed, report);
    else if (parsed.command == "gap-cert") code = cmd_gap_cert(parsed, report);
    else if (parsed.command == "combine") code = cmd_combine(parsed, report);
    else if (parsed.command == "frucht") code = cmd_frucht(parsed, report);
    else if (parsed.command == "classical-frucht")
      code = cmd_classical_frucht(parsed, report);
    else if (parsed.command == "corresp-check")
      code = cmd_corresp_check(parsed, report);
    else {
      err << "unknown command: " << parsed.command << "\n" << kUsage;
      return 2;
    }
    auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
        std::chrono::steady_clock::now() - start);
    report["timing_ms"] = elapsed.count();
    emit(parsed, report, out);
    return code;
  } catch (const input_error& e) {
    err << "error: " << e.what() << "\n";
    report["error"] = e.what();
    report["verdict"] = "input_error";
    try {
      emit(parsed, report, out);
    } catch (...) {
    }
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace qfrucht
