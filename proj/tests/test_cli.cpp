#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "isrg/cli.hpp"
#include "isrg/graph.hpp"
#include "isrg/parallel.hpp"
#include "support.hpp"

using isrg::cli::run_args;
using json = nlohmann::ordered_json;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run_args(args, out, err);
  return {code, out.str(), err.str()};
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("integral_srg_" + name);
}

}  // namespace

TEST_CASE("certify reports the certificate as JSON") {
  const auto r = invoke({"certify", "--q", "3", "--m", "4", "--format", "json", "--workers", "2"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["schema"] == 1);
  CHECK(j["is_srg"] == true);
  CHECK(j["v"] == 81);
  CHECK(j["k"] == 56);
  CHECK(j["lambda"] == 37);
  CHECK(j["mu"] == 42);
  CHECK(j["sigma"] == 37);
  CHECK(j["witness"].is_null());
  CHECK(j["matrix_identity"]["holds"] == true);
  REQUIRE(j["errata"].size() == 4);
  CHECK(j["errata"][2]["verdict"] == "TranscriptionSuspect");
  CHECK(j["errata"][3]["verdict"] == "Consistent");
  // Round trip: re-serializing reproduces the bytes.
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("reports are deterministic") {
  const std::vector<std::string> args{"lemma", "--q", "5", "--m", "4"};
  const auto a = invoke(args), b = invoke(args);
  CHECK(a.out == b.out);
  const auto c = invoke({"lemma", "--q", "5", "--m", "4", "--workers", "3"});
  CHECK(a.out == c.out);
}

TEST_CASE("even q is a usage error") {
  const auto r = invoke({"certify", "--q", "4", "--m", "4"});
  CHECK(r.code == 2);
  CHECK(r.err.find("q must be odd") != std::string::npos);
  CHECK(r.out.empty());
}

TEST_CASE("other usage errors") {
  CHECK(invoke({}).code == 2);
  CHECK(invoke({"frobnicate"}).code == 2);
  CHECK(invoke({"certify", "--q", "3"}).code == 2);
  CHECK(invoke({"certify", "--q", "3", "--m", "3"}).code == 2);
  CHECK(invoke({"certify", "--q", "15", "--m", "4"}).code == 2);
  CHECK(invoke({"certify", "--q", "3", "--m", "4", "--workers", "0"}).code == 2);
  CHECK(invoke({"certify", "--q", "3", "--m", "4", "--format", "xml"}).code == 2);
  CHECK(invoke({"lemma", "--q", "3", "--m", "2"}).code == 2);
  CHECK(invoke({"params", "--q", "3", "--m", "2"}).code == 2);
  CHECK(invoke({"certify", "--q", "3", "--m", "8", "--size-bound", "100"}).code == 2);
  CHECK(invoke({"certify", "--help"}).code == 0);
}

TEST_CASE("lemma report") {
  const auto r = invoke({"lemma", "--q", "3", "--m", "4"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["bracket0"]["oracle"] == 18);
  CHECK(j["sum"]["oracle"] == 30);
  CHECK(j["r"]["oracle"] == 12);
  CHECK(j["ell"]["oracle"] == 12);
  CHECK(j["sigma0"]["oracle"] == 12);
  CHECK(j["mu"]["direct"] == 42);
  CHECK(j["mu"]["assembled"] == 42);
  CHECK(j["audit"]["histogram"]["1"] == 36);
  CHECK(j["audit"]["histogram"]["2"] == 6);
  CHECK(j["quadrics"].size() == 8);
  CHECK(j["all_match"] == true);
  CHECK(j.dump(2) + "\n" == r.out);
}

TEST_CASE("text and csv formats") {
  const auto text = invoke({"certify", "--q", "3", "--m", "4", "--format", "text"});
  CHECK(text.code == 0);
  CHECK(text.out.find("lambda = 37\n") != std::string::npos);
  CHECK(text.out.find("census.isotropic = 32\n") != std::string::npos);
  const auto csv = invoke({"certify", "--q", "3", "--m", "4", "--format", "csv"});
  CHECK(csv.out.rfind("key,value\n", 0) == 0);
  CHECK(csv.out.find("mu,42\n") != std::string::npos);
}

TEST_CASE("params and build") {
  const auto p = invoke({"params", "--q", "5", "--m", "4"});
  CHECK(p.code == 0);
  const auto j = json::parse(p.out);
  CHECK(j["transcribed"]["k"] == 389);
  CHECK(j["validated"]["k"] == 384);
  CHECK(j["lambda_closed_form"] == 233);
  CHECK(j["feasibility"]["feasible"] == true);

  const auto b = invoke({"build", "--q", "3", "--m", "2"});
  CHECK(b.code == 0);
  CHECK(json::parse(b.out)["k"] == 4);
}

TEST_CASE("m = 2 certification is informational") {
  const auto r = invoke({"certify", "--q", "3", "--m", "2"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  CHECK(j["informational_only"] == true);
  CHECK(j["k"] == 4);
  CHECK(j["lambda"] == 1);
  CHECK(j["mu"] == 2);
  CHECK(j["errata"].empty());
}

TEST_CASE("sweep") {
  const auto r = invoke({"sweep", "--q", "3,5,7", "--m", "4", "--format", "json", "--no-timing"});
  CHECK(r.code == 0);
  const auto j = json::parse(r.out);
  REQUIRE(j["rows"].size() == 3);
  for (const auto& row : j["rows"]) {
    CHECK(row["status"] == "OK");
    CHECK(row["is_srg"] == true);
    CHECK(row["lemmas_match"] == true);
    CHECK(row["mu_agree"] == true);
    CHECK(row["wall_ms"] == 0);
  }
  CHECK(invoke({"sweep", "--q", "3,5,7", "--m", "4", "--format", "json", "--no-timing"}).out == r.out);

  const auto csv = invoke({"sweep", "--q", "3,5", "--m", "4", "--format", "csv", "--no-timing"});
  std::istringstream lines(csv.out);
  std::string head, first;
  std::getline(lines, head);
  std::getline(lines, first);
  CHECK(head == isrg::cli::kSweepColumns);
  CHECK(first == "3,4,OK,81,56,37,42,true,true,true,true,0");
}

TEST_CASE("sweep skips out-of-bound cells and records failures") {
  const auto r = invoke({"sweep", "--q", "3,5", "--m", "4", "--size-bound", "100", "--format", "csv", "--no-timing"});
  CHECK(r.code == 0);
  CHECK(r.out.find("5,4,SKIPPED(SizeBound),") != std::string::npos);
  CHECK(r.out.find("3,4,OK,") != std::string::npos);

  const auto bad = invoke({"sweep", "--q", "4,3", "--m", "4", "--format", "csv", "--no-timing"});
  CHECK(bad.code == 1);
  CHECK(bad.out.find("4,4,ERROR(EvenCharacteristic)") != std::string::npos);
  CHECK(bad.out.find("3,4,OK,") != std::string::npos);
}

TEST_CASE("empty sweep") {
  const auto r = invoke({"sweep", "--format", "csv"});
  CHECK(r.code == 0);
  CHECK(r.out == std::string(isrg::cli::kSweepColumns) + "\n");
  const auto j = invoke({"sweep"});
  CHECK(j.code == 0);
  CHECK(json::parse(j.out)["rows"].empty());
}

TEST_CASE("export writes graph6") {
  const auto path = temp_path("paley9.g6");
  const auto r = invoke({"export", "--q", "3", "--m", "2", "--output", path.string()});
  CHECK(r.code == 0);
  std::ifstream in(path);
  std::stringstream text;
  text << in.rdbuf();
  const auto d = support::decode_graph6(text.str());
  const auto g = isrg::graph::IntegralGraph::build(isrg::gf::Field::of_order(3), 2);
  REQUIRE(d.n == 9);
  for (std::uint32_t u = 0; u < 9; ++u)
    for (std::uint32_t v = 0; v < 9; ++v)
      CHECK(d.adj[u][v] == g.adjacent(isrg::graph::VertexId{u}, isrg::graph::VertexId{v}));
  std::filesystem::remove(path);
}

TEST_CASE("reports can go to a file") {
  const auto path = temp_path("cert.json");
  const auto r = invoke({"certify", "--q", "3", "--m", "4", "-o", path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.empty());
  std::ifstream in(path);
  CHECK(json::parse(in)["mu"] == 42);
  std::filesystem::remove(path);
  CHECK(invoke({"certify", "--q", "3", "--m", "4", "-o", "/nonexistent/dir/x.json"}).code == 2);
}

TEST_CASE("worker count falls back to the environment") {
  setenv(isrg::cli::kWorkersEnv, "3", 1);
  CHECK(isrg::cli::default_workers() == 3);
  setenv(isrg::cli::kWorkersEnv, "zero", 1);
  CHECK(isrg::cli::default_workers() == isrg::hardware_workers());
  unsetenv(isrg::cli::kWorkersEnv);
}
