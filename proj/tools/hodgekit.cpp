#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodge/fixtures/corpus.hpp"
#include "hodge/io/document.hpp"
#include "hodge/io/run.hpp"

using namespace hodge;

namespace {

struct Options {
  std::string format = "text";
  bool timings = false;
  std::string input;
  std::string check_kind;
  std::string fixture_name;
  std::string batch_dir;
  std::size_t k = 2;
  std::uint64_t seed = 1;
  std::size_t max_dim = 6;
  bool emit = false;
};

ReportFormat format_of(const Options& o) { return o.format == "structured" ? ReportFormat::Structured : ReportFormat::Text; }

Report error_report(const std::string& task, const std::string& label, ErrorCode code, std::string message) {
  Report r;
  r.task = task;
  r.label = label;
  r.error = code;
  r.error_message = std::move(message);
  return r;
}

std::string read_file(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path, std::ios::binary);
  require(static_cast<bool>(in), ErrorCode::InvalidArgument, "cannot open input file " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Parses `path` and runs it; `expected` (when set) must equal the task kind.
Report run_file(const std::string& path, const std::string& expected) {
  const std::string label = std::filesystem::path(path).filename().string();
  Task t;
  try {
    t = parse_document(read_file(path));
  } catch (const Error& e) {
    return error_report(expected, label, e.code(), e.what());
  }
  if (!expected.empty() && task_kind(t.data) != expected)
    return error_report(expected, label, ErrorCode::InvalidArgument,
                        "document declares task \"" + std::string(task_kind(t.data)) + "\", expected \"" + expected + "\"");
  if (t.label.empty()) t.label = label;
  return run_task(t);
}

int finish(const Report& r, const Options& o) {
  std::cout << emit_report(r, format_of(o), o.timings);
  return exit_status(r);
}

int run_fixture(const Options& o) {
  const auto corpus = fixture_corpus();
  if (o.fixture_name == "list") {
    for (const auto& f : corpus) std::cout << f.name << "  " << task_kind(f.task.data) << "  " << f.parameters << "\n";
    std::cout << "Vk  vk  --k <n>\nrandom-structure  lefschetz  --seed <n> --max-dim <n>\n";
    return 0;
  }
  Task t;
  if (o.fixture_name == "Vk") {
    t = {"V" + std::to_string(o.k), VkTask{o.k}};
  } else if (o.fixture_name == "random-structure") {
    std::mt19937_64 rng(o.seed);
    auto s = random_graded_structure(rng, 1 + o.seed % 3, o.max_dim);
    t = {"random-structure seed " + std::to_string(o.seed), LefschetzTask{s.g, std::nullopt}};
  } else if (const auto* f = find_fixture(corpus, o.fixture_name)) {
    t = f->task;
  } else {
    return finish(error_report("fixture", o.fixture_name, ErrorCode::InvalidArgument,
                               "unknown fixture \"" + o.fixture_name + "\" (try `fixture list`)"),
                  o);
  }
  if (o.emit) {
    std::cout << serialize(t);
    return 0;
  }
  return finish(run_task(t), o);
}

int run_batch(const Options& o) {
  std::vector<std::filesystem::path> files;
  std::error_code ec;
  for (const auto& e : std::filesystem::directory_iterator(o.batch_dir, ec))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  if (ec) return finish(error_report("batch", o.batch_dir, ErrorCode::InvalidArgument, "cannot read directory: " + ec.message()), o);
  std::sort(files.begin(), files.end(), [](const auto& a, const auto& b) { return a.filename() < b.filename(); });

  int status = 0;
  std::size_t pass = 0, failed = 0, errors = 0;
  auto batch = nlohmann::ordered_json::array();
  for (const auto& f : files) {
    const Report r = run_file(f.string(), "");
    const int s = exit_status(r);
    status = std::max(status, s);
    (s == 0 ? pass : s == 1 ? failed : errors)++;
    if (format_of(o) == ReportFormat::Structured) batch.push_back(report_json(r, o.timings));
    else std::cout << emit_report(r, ReportFormat::Text, o.timings) << "\n";
  }
  if (format_of(o) == ReportFormat::Structured) {
    nlohmann::ordered_json j{{"format", "hodgekit-batch"},
                             {"version", report_version},
                             {"reports", batch},
                             {"summary", {{"documents", files.size()}, {"pass", pass}, {"fail", failed}, {"error", errors}}}};
    std::cout << pretty_json(j) << "\n";
  } else {
    std::cout << "batch: " << files.size() << " documents, " << pass << " pass, " << failed << " fail, " << errors
              << " error\n";
  }
  return status;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for monodromy filtrations, compatible multifiltrations and polarized Lefschetz structures"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--format", o.format, "Report format")->check(CLI::IsMember({"text", "structured"}));
  app.add_flag("--timings,!--no-timings", o.timings, "Include wall-clock timings in the report");

  auto* check = app.add_subcommand("check", "Run a check on a document");
  check->add_option("kind", o.check_kind, "Task kind")
      ->required()
      ->check(CLI::IsMember({"monodromy", "relmono", "mf", "lefschetz", "compat"}));
  check->add_option("--input", o.input, "Document path, - for stdin")->required();

  auto* koszul = app.add_subcommand("koszul", "Koszul homology and regularity of a module");
  koszul->add_option("--input", o.input, "Document path, - for stdin")->required();
  auto* rees = app.add_subcommand("rees", "Rees module of a multifiltration and its flatness");
  rees->add_option("--input", o.input, "Document path, - for stdin")->required();

  auto* nilsson = app.add_subcommand("nilsson", "Nils isomorphism on a monodromic module");
  std::string mode;
  nilsson->add_option("mode", mode, "demo")->check(CLI::IsMember({"demo"}));
  nilsson->add_option("--input", o.input, "Document path, - for stdin");

  auto* fixture = app.add_subcommand("fixture", "Run a built-in fixture (`fixture list` shows all)");
  fixture->add_option("name", o.fixture_name, "Fixture name")->required();
  fixture->add_option("--k", o.k, "k for Vk");
  fixture->add_option("--seed", o.seed, "Seed for random-structure");
  fixture->add_option("--max-dim", o.max_dim, "Dimension bound for random-structure")->check(CLI::Range(1, 64));
  fixture->add_flag("--emit", o.emit, "Print the fixture as a document instead of running it");

  auto* batch = app.add_subcommand("batch", "Run every .json document in a directory, sorted by name");
  batch->add_option("dir", o.batch_dir, "Directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (check->parsed()) return finish(run_file(o.input, o.check_kind), o);
    if (koszul->parsed()) return finish(run_file(o.input, "koszul"), o);
    if (rees->parsed()) return finish(run_file(o.input, "rees"), o);
    if (nilsson->parsed()) {
      if (mode == "demo") {
        const auto corpus = fixture_corpus();
        return finish(run_task(find_fixture(corpus, "nilsson-j2xj2")->task), o);
      }
      if (o.input.empty()) {
        std::cerr << "nilsson: give `demo` or --input <file>\n";
        return 2;
      }
      return finish(run_file(o.input, "nilsson"), o);
    }
    if (fixture->parsed()) return run_fixture(o);
    if (batch->parsed()) return run_batch(o);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.code()) << "): " << e.what() << "\n";
    return e.code() == ErrorCode::Internal ? 3 : 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
  return 2;
}
