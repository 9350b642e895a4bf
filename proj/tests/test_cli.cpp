#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "qfrucht/cli.hpp"
#include "qfrucht/json_io.hpp"
#include "qfrucht/rigidity.hpp"
#include "test_helpers.hpp"

using namespace qfrucht;

namespace {

struct RunResult {
  int code;
  Json report;
  std::string err;
};

RunResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = run_command(args, out, err);
  RunResult r{code, Json(), err.str()};
  if (!out.str().empty()) r.report = Json::parse(out.str());
  return r;
}

std::string write_temp(const std::string& name, const Json& j) {
  std::string path = "qfrucht_test_" + name;
  write_json_file(path, j);
  return path;
}

Json s3_group_json() { return group_to_json(symmetric_group_s3()); }

}  // namespace

TEST_CASE("group command") {
  std::string path = write_temp("s3.json", s3_group_json());
  RunResult r = run({"group", path});
  CHECK(r.code == 0);
  CHECK(r.report["verdict"] == "valid");
  CHECK(r.report["schema_version"] == kSchemaVersion);
  CHECK(r.report["group"]["order"] == 6);
  CHECK(r.report["seed"] == 0);
  CHECK(r.report["inputs"].contains(path));
  CHECK(r.report.contains("timing_ms"));
}

TEST_CASE("input errors exit with code 2") {
  SUBCASE("unknown command") {
    CHECK(run({"frobnicate"}).code == 2);
  }
  SUBCASE("missing file") {
    RunResult r = run({"group", "no_such_file.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("cannot open") != std::string::npos);
  }
  SUBCASE("malformed JSON reports line and column") {
    std::ofstream("qfrucht_test_bad.json") << "{\"mul\": [[0,1],\n  [1,]]}";
    RunResult r = run({"group", "qfrucht_test_bad.json"});
    CHECK(r.code == 2);
    CHECK(r.err.find("line") != std::string::npos);
  }
  SUBCASE("bad multiplication table") {
    Json j;
    j["mul"] = {{0, 1}, {1, 1}};
    std::string path = write_temp("badtable.json", j);
    CHECK(run({"group", path}).code == 2);
  }
  SUBCASE("missing required option") {
    CHECK(run({"cayley"}).code == 2);
  }
}

TEST_CASE("verify command and operator round trip") {
  // Build a Cayley graph through the CLI and verify the emitted operator.
  std::string group_path = write_temp("s3b.json", s3_group_json());
  Json proj;
  proj["basis"] = "block";
  proj["re"] = {1, 0, 0, 0, 0, 0};
  proj["im"] = {0, 0, 0, 0, 0, 0};
  std::string proj_path = write_temp("proj.json", proj);

  RunResult cay = run({"cayley", "--dual", group_path, "--projection",
                       proj_path});
  REQUIRE(cay.code == 0);
  std::string op_path = write_temp("op.json", cay.report["adjacency"]);

  RunResult ver = run({"verify", op_path});
  CHECK(ver.code == 0);
  CHECK(ver.report["verdict"] == "quantum_graph");
  CHECK(ver.report["flags"]["schur_idempotent"]["pass"] == true);
  CHECK(ver.report["flags"].contains("tolerance"));

  // Emitted operator JSON round-trips to the same matrix.
  LinOp op = linop_from_json(load_json_file(op_path));
  LinOp back = linop_from_json(Json::parse(linop_to_json(op).dump()));
  CHECK((op.mat - back.mat).norm() == 0.0);
}

TEST_CASE("rigidity command exit codes") {
  std::string group_path = write_temp("s3c.json", s3_group_json());

  SUBCASE("central character projection is inconclusive") {
    // lambda coefficients (2/6)(2,0,0,0,-1,-1): the standard-block character.
    Json proj;
    proj["basis"] = "lambda";
    proj["re"] = {2.0 / 3, 0, 0, 0, -1.0 / 3, -1.0 / 3};
    proj["im"] = {0, 0, 0, 0, 0, 0};
    std::string proj_path = write_temp("projc.json", proj);
    RunResult r = run({"rigidity", "--dual", group_path, "--projection",
                       proj_path});
    CHECK(r.code == 1);
    CHECK(r.report["verdict"] == "INCONCLUSIVE");
  }
  SUBCASE("rank-one block projection is rigid") {
    // The CLI recomputes irreps deterministically at seed 0, so a projection
    // found in that basis can be passed back in block coordinates.
    FiniteGroup s3 = symmetric_group_s3();
    QGroupData q = dual_group(s3, decompose_regular(s3, 0));
    RigidSearchResult found = rigid_projection_search(q, 42, 20);
    REQUIRE(found.verdict.verdict != Verdict::INCONCLUSIVE);
    std::string proj_path = write_temp(
        "projr.json", projection_to_json(found.projection, "block"));
    RunResult r = run({"rigidity", "--dual", group_path, "--projection",
                       proj_path});
    CHECK(r.code == 0);
    std::string v = r.report["verdict"];
    CHECK(v.rfind("RIGID_", 0) == 0);
  }
}

TEST_CASE("rigid-search and closure-check") {
  std::string group_path = write_temp("s3d.json", s3_group_json());
  RunResult rs = run({"rigid-search", "--dual", group_path, "--seed", "42",
                      "--trials", "10"});
  CHECK(rs.code == 0);
  CHECK(rs.report.contains("projection"));
  CHECK(rs.report["seed"] == 42);

  RunResult cc = run({"closure-check", group_path, "--trials", "3"});
  CHECK(cc.code == 0);
  CHECK(cc.report["dimensions"] == Json::array({6, 6, 6}));
  CHECK(cc.report["trivial_start_dimension"] == 1);
}

TEST_CASE("tolerance override via the environment") {
  // A heavily perturbed operator passes only under an absurd tolerance.
  auto space = std::make_shared<const QSet>(std::vector<int>{1, 1});
  Mat m(2, 2);
  m << 0.0, 1.1, 0.9, 0.0;
  std::string op_path =
      write_temp("noisy.json", linop_to_json(LinOp(space, space, m)));

  CHECK(run({"verify", op_path}).code == 1);
  setenv("QFRUCHT_TOL", "10", 1);
  CHECK(run({"verify", op_path}).code == 0);
  unsetenv("QFRUCHT_TOL");
  CHECK(run({"verify", op_path, "--tol", "10"}).code == 0);
}

TEST_CASE("reports can be written to a file") {
  std::string group_path = write_temp("s3e.json", s3_group_json());
  RunResult r = run({"irreps", group_path, "-o", "qfrucht_test_out.json"});
  CHECK(r.code == 0);
  Json written = load_json_file("qfrucht_test_out.json");
  CHECK(written["dimensions"] == Json::array({1, 1, 2}));
  // Emitted irreps re-parse to the same matrices.
  auto irreps = irreps_from_json(written["irreps"]);
  CHECK(irreps.size() == 3);
  CHECK(irreps[2].dim == 2);
}
