#include <catch_amalgamated.hpp>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "hodge/fixtures/corpus.hpp"
#include "hodge/io/document.hpp"

using namespace hodge;

namespace {

const std::string cli = HODGE_CLI_PATH;
const std::string data = std::string(HODGE_TEST_DIR) + "/data/";
const std::string golden = std::string(HODGE_TEST_DIR) + "/golden/";

struct Run {
  int status;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = cli + " " + args + " 2>/dev/null";
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  std::string out;
  std::array<char, 4096> buf;
  while (auto n = std::fread(buf.data(), 1, buf.size(), p)) out.append(buf.data(), n);
  const int st = pclose(p);
  return {WIFEXITED(st) ? WEXITSTATUS(st) : -1, out};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  REQUIRE(in);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string verb_for(const std::string& task) {
  if (task == "monodromy" || task == "relmono" || task == "mf" || task == "lefschetz" || task == "compat")
    return "check " + task;
  return task;
}

}  // namespace

TEST_CASE("structured reports match the golden files") {
  std::size_t seen = 0;
  for (const auto& e : std::filesystem::directory_iterator(data)) {
    const std::string name = e.path().stem().string();
    CAPTURE(name);
    const auto doc = nlohmann::json::parse(slurp(e.path().string()));
    const auto r = run("--format structured " + verb_for(doc["task"]) + " --input " + e.path().string());
    CHECK(r.out == slurp(golden + name + ".json"));
    const auto status = nlohmann::json::parse(r.out)["status"];
    CHECK(r.status == (status == "pass" ? 0 : status == "fail" ? 1 : 2));
    ++seen;
  }
  CHECK(seen >= 10);
}

TEST_CASE("text reports match the golden files") {
  CHECK(run("check monodromy --input " + data + "monodromy-jordan-3-2-1.json").out ==
        slurp(golden + "monodromy-jordan-3-2-1.txt"));
  CHECK(run("check compat --input " + data + "three-lines.json").out == slurp(golden + "three-lines.txt"));
  CHECK(run("fixture Vk --k 2").out == slurp(golden + "fixture-Vk-2.txt"));
}

TEST_CASE("exit statuses") {
  CHECK(run("check monodromy --input " + data + "monodromy-jordan-3-2-1.json").status == 0);
  CHECK(run("check compat --input " + data + "three-lines.json").status == 1);
  CHECK(run("check monodromy --input " + data + "bad-denominator.json").status == 2);
  CHECK(run("check monodromy --input " + data + "not-nilpotent.json").status == 2);
  // verb and declared task disagree
  const auto mismatch = run("check lefschetz --input " + data + "three-lines.json");
  CHECK(mismatch.status == 2);
  CHECK_THAT(mismatch.out, Catch::Matchers::ContainsSubstring("declares task \"compat\""));
  CHECK(run("check monodromy --input " + data + "missing.json").status == 2);
  CHECK(run("check nonsense --input x").status == 2);
  CHECK(run("").status == 2);
  CHECK(run("--help").status == 0);
  CHECK(run("fixture no-such-fixture").status == 2);
  CHECK(run("nilsson demo").status == 0);
  CHECK(run("fixture mf-failing-pair").status == 1);
}

TEST_CASE("p = 1 reports hold trivially") {
  CHECK_THAT(run("check mf --input " + data + "mf-single-block.json").out,
             Catch::Matchers::ContainsSubstring("[pass] mf-holds: holds (trivially)"));
}

TEST_CASE("timings only on request") {
  const std::string args = "check monodromy --input " + data + "monodromy-jordan-3-2-1.json";
  CHECK(run(args).out.find("time ") == std::string::npos);
  CHECK(run("--timings " + args).out.find("time filtration") != std::string::npos);
  CHECK(run("--no-timings " + args).out == run(args).out);
  CHECK(run("--format structured " + args).out == run("--format structured " + args).out);
}

TEST_CASE("batch runs documents in name order with a summary") {
  const auto r = run("batch " + data);
  CHECK(r.status == 2);
  CHECK_THAT(r.out, Catch::Matchers::ContainsSubstring("batch: 13 documents, 6 pass, 5 fail, 2 error"));
  CHECK(r.out.find("[V3]") < r.out.find("[bad-denominator.json]"));
  CHECK(r.out.find("[bad-denominator.json]") < r.out.find("[two-lines]"));
  const auto s = nlohmann::json::parse(run("--format structured batch " + data).out);
  CHECK(s["summary"]["documents"] == 13);
  CHECK(s["reports"].size() == 13);
}

TEST_CASE("emitted fixtures parse back to the corpus task") {
  const auto corpus = fixture_corpus();
  for (const char* name : {"V2", "tensor-jordan-2-3-2", "koszul-torsion", "nilsson-j2xj2", "relmono-counterexample"}) {
    CAPTURE(name);
    const auto r = run(std::string("fixture ") + name + " --emit");
    CHECK(r.status == 0);
    CHECK(parse_document(r.out) == find_fixture(corpus, name)->task);
  }
  const auto a = run("fixture random-structure --seed 5 --max-dim 5 --emit");
  CHECK(a.out == run("fixture random-structure --seed 5 --max-dim 5 --emit").out);
  CHECK(parse_document(a.out).label == "random-structure seed 5");
}
