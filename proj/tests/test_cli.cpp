#include <cstdio>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "reflexa/cli.hpp"
#include "reflexa/homology.hpp"
#include "support.hpp"

using namespace reflexa;
using namespace testsupport;
using json = nlohmann::json;

namespace {

const char* kA2_file = R"(algebras:
  A:
    field: F2
    quiver:
      vertices: 2
      arrows:
        - {name: a, src: 1, dst: 2}
modules:
  M:
    algebra: A
    side: left
    dims: {1: 1, 2: 1}
    actions:
      a: [["1"]]
  S:
    algebra: A
    dims: [0, 1]
maps:
  inc:
    source: S
    target: M
    blocks: {2: [["1"]]}
jobs:
  - check-conditions A --ln 2,2
  - [invariants, M]
)";

bool has_message(const WorkspaceParse& p, const std::string& needle, std::size_t line = 0) {
  for (const auto& d : p.diagnostics)
    if (d.message.find(needle) != std::string::npos && (line == 0 || d.line == line)) return true;
  return false;
}

CommandResult run(const std::string& line, const Workspace& ws = {}) {
  std::istringstream in(line);
  std::vector<std::string> args;
  std::string tok;
  while (in >> tok) args.push_back(tok);
  return run_command(args, ws, default_budget());
}

}  // namespace

TEST_CASE("minimal quiver workspace") {
  WorkspaceParse p = parse_workspace(kA2_file);
  REQUIRE(p.workspace);
  const Workspace& ws = *p.workspace;
  CHECK(ws.algebras.size() == 1);
  CHECK(ws.jobs.size() == 2);
  CHECK(ws.jobs[0].line == 24);
  AlgebraPtr a = ws.algebras.at("A");
  CHECK(a->dim() == 3);
  // the arrow matrix is read as a row-vector map, so M is the projective at 1
  CHECK(is_isomorphic(ws.modules.at("M"), projective_module(a, 0)));
  CHECK(is_isomorphic(ws.modules.at("S"), simple_module(a, 1)));
  CHECK(ws.maps.at("inc").is_injective());
}

TEST_CASE("diagnostics carry positions") {
  std::string unresolved = "modules:\n  M:\n    algebra: B\n    dims: [1]\n";
  WorkspaceParse p = parse_workspace(unresolved);
  CHECK(!p.workspace);
  CHECK(has_message(p, "unresolved algebra reference", 3));

  std::string short_relation =
      "algebras:\n  A:\n    field: F2\n    quiver: {vertices: 1, arrows: [{name: x, src: 1, dst: 1}]}\n"
      "    relations: [[x]]\n";
  p = parse_workspace(short_relation);
  CHECK(!p.workspace);
  CHECK(has_message(p, "relations must have length >= 2", 5));

  p = parse_workspace("algebras: {A: {field: F2, quiver: {vertices: 2, arrows: [{name: a, src: 1, dst: 2}]},"
                      " relations: [[a, a]]}}");
  CHECK(has_message(p, "not composable"));

  p = parse_workspace("algebras:\n  A: [unclosed\n");
  CHECK(!p.workspace);
  REQUIRE(!p.diagnostics.empty());
  CHECK(p.diagnostics[0].line >= 2);

  // a non-intertwining map between valid modules
  std::string bad_map = kA2_file;
  bad_map.replace(bad_map.find("blocks: {2: [[\"1\"]]}"), 20, "blocks: {1: [], 2: [[\"1\"]]}");
  CHECK(parse_workspace(bad_map).workspace);
  std::string bad_map2 = kA2_file;
  bad_map2.replace(bad_map2.find("source: S\n    target: M"), 23, "source: M\n    target: S");
  bad_map2.replace(bad_map2.find("blocks: {2: [[\"1\"]]}"), 20, "blocks: {2: [[\"1\"]]}");
  p = parse_workspace(bad_map2);
  CHECK(!p.workspace);

  p = parse_workspace("modules:\n  M:\n    algebra: kA2\n    dims: {1: 1, 2: 1}\n    actions: {a1: [[\"1\", \"0\"]]}\n");
  CHECK(has_message(p, "must have 1 entries", 5));
}

TEST_CASE("table algebra and basis-form module") {
  const char* text = R"(algebras:
  T:
    field: GF(3)
    basis: [e1, e2, a]
    table:
      - [["1","0","0"], ["0","0","0"], ["0","0","0"]]
      - [["0","0","0"], ["0","1","0"], ["0","0","1"]]
      - [["0","0","1"], ["0","0","0"], ["0","0","0"]]
    unit: ["1", "1", "0"]
    idempotents: [["1","0","0"], ["0","1","0"]]
modules:
  P:
    algebra: T
    total: 2
    actions:
      e1: [["1","0"], ["0","0"]]
      e2: [["0","0"], ["0","1"]]
      a: [["0","1"], ["0","0"]]
maps:
  id:
    source: P
    target: P
    matrix: [["2","0"], ["0","2"]]
)";
  WorkspaceParse p = parse_workspace(text);
  for (const auto& d : p.diagnostics) MESSAGE(d.to_string("table"));
  REQUIRE(p.workspace);
  AlgebraPtr a = p.workspace->algebras.at("T");
  CHECK(a->dim() == 3);
  CHECK(a->vertex_count() == 2);
  CHECK(is_isomorphic(p.workspace->modules.at("P"), projective_module(a, 0)));
  CHECK(p.workspace->maps.at("id").is_isomorphism());

  std::string broken = text;
  std::string good_a = R"(a: [["0","1"], ["0","0"]])";
  broken.replace(broken.find(good_a), good_a.size(), R"(a: [["0","1"], ["1","0"]])");
  p = parse_workspace(broken);
  CHECK(!p.workspace);
  CHECK(has_message(p, "not multiplicative"));
}

TEST_CASE("parsing is total on mangled input") {
  std::mt19937_64 rng(7);
  std::string base = kA2_file;
  const std::string alphabet = "{}[]:,- \n\"'ab12#&*!|>";
  for (int round = 0; round < 400; ++round) {
    std::string s = base;
    int edits = 1 + int(rng() % 6);
    for (int e = 0; e < edits; ++e) {
      std::size_t at = rng() % s.size();
      switch (rng() % 3) {
        case 0: s[at] = alphabet[rng() % alphabet.size()]; break;
        case 1: s.erase(at, 1 + rng() % 4); break;
        default: s.insert(at, 1, alphabet[rng() % alphabet.size()]);
      }
      if (s.empty()) s = " ";
    }
    WorkspaceParse p;
    CHECK_NOTHROW(p = parse_workspace(s));
    CHECK(p.workspace.has_value() == p.diagnostics.empty());
  }
}

TEST_CASE("exit statuses") {
  CommandResult r = run("check-conditions kA2 --ln 2,2 --ln 1,2");
  CHECK(r.exit_code == exit_fails);
  json j = json::parse(r.report);
  CHECK(j["dominant_dimension"]["value"] == 1);
  std::size_t fails = 0;
  for (const auto& e : j["ln"]) {
    if (e["l"] == 2) CHECK(e["verdict"] == "holds");
    if (e["l"] == 1) {
      CHECK(e["verdict"] == "fails");
      ++fails;
    }
  }
  CHECK(fails == 2);

  CHECK(run("check-conditions kA2").exit_code == exit_holds);
  CHECK(run("certify quasi-abelian kA2 --dim-budget 4").exit_code == exit_holds);

  r = run("invariants S1@kA2");
  CHECK(r.exit_code == exit_holds);
  j = json::parse(r.report);
  CHECK(j["grade"]["value"] == 1);
  CHECK(j["sgrade"]["value"] == 1);
  CHECK(j["torsion"] == true);
  CHECK(j["reflexive"] == false);

  CHECK(run("serre Aus(k[x]/x^2) --simples 1").exit_code == exit_fails);
  CHECK(run("serre Aus(k[x]/x^2) --simples 2").exit_code == exit_holds);
  CHECK(run("serre k[x,y]/(x,y)^2").exit_code == exit_fails);
  CHECK(run("refl hull S1@k[x,y]/(x,y)^2 --force").exit_code == exit_undetermined);
  CHECK(run("refl hull S1@k[x,y]/(x,y)^2").exit_code == exit_fails);
  CHECK(run("morita verify Lambda@k[x]/x^2 S1@k[x]/x^2").exit_code == exit_holds);
  CHECK(run("morita end P1@kA2 P1@kA2").exit_code == exit_input);
  CHECK(run("check-conditions nowhere").exit_code == exit_input);
  CHECK(run("invariants S9@kA2").exit_code == exit_input);
  CHECK(run("certify sideways kA2").exit_code == exit_input);
  CHECK(run("check-conditions kA2 --ln 2").exit_code == exit_input);
}

TEST_CASE("conflation and workspace maps") {
  const char* text = R"(algebras:
  A:
    field: F2
    quiver: {vertices: 2, arrows: [{name: a, src: 1, dst: 2}]}
modules:
  M: {algebra: A, dims: [1, 1], actions: {a: [["1"]]}}
  S: {algebra: A, dims: [0, 1]}
  N: {algebra: A, dims: [1, 2], actions: {a: [["1", "0"]]}}
  Z: {algebra: A, dims: [0, 0]}
maps:
  inc: {source: S, target: M, blocks: {2: [["1"]]}}
  i: {source: S, target: N, blocks: {2: [["0", "1"]]}}
  p: {source: N, target: M, blocks: {1: [["1"]], 2: [["1"], ["0"]]}}
  z: {source: M, target: Z, blocks: {}}
)";
  WorkspaceParse p = parse_workspace(text);
  for (const auto& d : p.diagnostics) MESSAGE(d.to_string("conflation"));
  REQUIRE(p.workspace);
  const Workspace& ws = *p.workspace;
  // 0 -> P2 -> P2 + P1 -> P1 -> 0 splits
  CommandResult r = run("refl conflation i p", ws);
  CHECK(r.exit_code == exit_holds);
  CHECK(json::parse(r.report)["agree"] == true);
  // P2 -> P1 -> 0 is no conflation: the cokernel in refl of P2 -> P1 is zero
  r = run("refl conflation inc z", ws);
  CHECK(r.exit_code == exit_fails);
  CHECK(json::parse(r.report)["agree"] == true);
  // S1 is torsion, so the sequence leaves refl
  r = run("refl conflation inc cover:S1@A", ws);
  CHECK(r.exit_code == exit_fails);
  CHECK(r.report.find("not reflexive") != std::string::npos);
  CHECK(run("refl kernel inc", ws).exit_code == exit_holds);
  CHECK(run("refl cokernel nothing", ws).exit_code == exit_input);
}

TEST_CASE("workspace jobs through the program entry") {
  std::string path = "test_cli_workspace.yaml";
  {
    std::ofstream f(path);
    f << kA2_file;
  }
  std::ostringstream out, err;
  CHECK(cli_main({"run", path}, out, err) == exit_holds);
  json j = json::parse(out.str());
  REQUIRE(j["jobs"].size() == 2);
  CHECK(j["jobs"][1]["report"]["reflexive"] == true);

  std::ostringstream out2, err2;
  CHECK(cli_main({"--workspace", path, "invariants", "S"}, out2, err2) == exit_holds);
  CHECK(json::parse(out2.str())["sgrade"]["value"] == 0);

  {
    std::ofstream f(path);
    f << "modules:\n  M: {algebra: Q9, dims: [1]}\n";
  }
  std::ostringstream out3, err3;
  CHECK(cli_main({"run", path}, out3, err3) == exit_input);
  CHECK(err3.str().find(path + ":2:") != std::string::npos);
  CHECK(err3.str().find("unresolved algebra reference") != std::string::npos);
  std::remove(path.c_str());

  std::ostringstream out4, err4;
  CHECK(cli_main({"--budget", "dim=x", "check-conditions", "kA2"}, out4, err4) == exit_input);
}

TEST_CASE("reports do not depend on the worker count") {
  std::vector<std::string> one{"corpus", "run", "--random", "1", "--dim-budget", "3", "--workers", "1"};
  std::vector<std::string> three{"corpus", "run", "--random", "1", "--dim-budget", "3", "--workers", "3"};
  CommandResult a = run_command(one, {}, default_budget());
  CommandResult b = run_command(three, {}, default_budget());
  CHECK(a.exit_code == exit_holds);
  CHECK(a.report == b.report);
}
