// dyncomp command-line front end. Talks to the library only through the C API.

#include "dyncomp/dyncomp.h"

#include "CLI11.hpp"
#include "json.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

namespace {

enum Exit { kSuccess = 0, kNegative = 1, kUsage = 2, kBudget = 3 };

int exit_for(dc_status status) {
  switch (status) {
    case DC_OK:
      return kSuccess;
    case DC_STEP_BUDGET_EXCEEDED:
    case DC_SEARCH_BUDGET_EXCEEDED:
    case DC_BALL_TOO_LARGE:
      return kBudget;
    case DC_INVALID_ARGUMENT:
    case DC_PARSE_ERROR:
    case DC_VALIDATION_ERROR:
    case DC_IO_ERROR:
    case DC_KIND_MISMATCH:
      return kUsage;
    default:
      return kNegative;
  }
}

struct Owned {
  char* text = nullptr;
  ~Owned() { dc_string_free(text); }
};

struct ScenarioHandle {
  dc_scenario* ptr = nullptr;
  ~ScenarioHandle() { dc_scenario_free(ptr); }
};

struct Globals {
  std::string output = "json";
  bool trace_meta = false;
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
};

int report_failure(dc_status status) {
  std::cerr << "error: " << dc_status_name(status) << ": " << dc_last_error() << "\n";
  return exit_for(status);
}

double elapsed_ms(const Globals& g) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - g.start).count();
}

// Prints a document produced by the library, adding timing when asked.
void emit(const Globals& g, const char* text, bool json) {
  if (g.trace_meta && json) {
    auto doc = nlohmann::json::parse(text);
    doc["meta"] = {{"elapsed_ms", elapsed_ms(g)}, {"version", dc_version()}};
    std::cout << doc.dump(2) << "\n";
    return;
  }
  std::cout << text;
  if (g.trace_meta) std::cerr << "# elapsed_ms=" << elapsed_ms(g) << "\n";
}

std::optional<int> load(const std::string& path, ScenarioHandle& h) {
  const dc_status st = dc_scenario_load(path.c_str(), &h.ptr);
  if (st != DC_OK) return report_failure(st);
  return std::nullopt;
}

bool json_only(const Globals& g, const char* command) {
  if (g.output == "json") return true;
  std::cerr << "error: " << command << " only supports --output json\n";
  return false;
}

std::string read_file(const std::string& path, bool& ok) {
  std::ifstream in(path, std::ios::binary);
  ok = static_cast<bool>(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Dynamical comparison on finite models of Z^d and Heisenberg actions"};
  app.require_subcommand(1);
  Globals g;
  std::optional<std::string> output;
  app.add_option("--output", output, "Output format")->check(CLI::IsMember({"json", "csv"}));
  app.add_flag("--trace-meta", g.trace_meta, "Add timing information to the output");

  std::string scenario_path;
  int d_radius = -1;
  int m = -1;
  std::optional<std::string> epsilon;

  auto* growth = app.add_subcommand("ball-growth", "Ball sizes |B_n| and doubling ratios");
  std::string group;
  int nmax = 5;
  growth->add_option("--group", group, "z, z1..z8 or heisenberg")->required();
  growth->add_option("--nmax", nmax, "Largest radius")->check(CLI::NonNegativeNumber);

  auto* density = app.add_subcommand("density", "Window densities against exact densities");
  std::string set_name = "A";
  int density_nmax = 6;
  density->add_option("--scenario", scenario_path)->required();
  density->add_option("--set", set_name, "Set name");
  density->add_option("--nmax", density_nmax)->check(CLI::NonNegativeNumber);

  auto* hypothesis = app.add_subcommand("hypothesis", "Check the per-point counting hypothesis");
  auto* witness = app.add_subcommand("witness", "Build and verify a greedy witness");
  for (auto* sub : {hypothesis, witness}) {
    sub->add_option("--scenario", scenario_path)->required();
    sub->add_option("--D-radius,--d-radius", d_radius, "D = B_r")->check(CLI::NonNegativeNumber);
    sub->add_option("--m", m, "Number of families")->check(CLI::PositiveNumber);
    sub->add_option("--epsilon", epsilon, "Rational p/q; 0 means the limit eps -> 0+");
  }

  auto* verify = app.add_subcommand("verify", "Verify a witness document");
  std::string witness_path;
  verify->add_option("--scenario", scenario_path)->required();
  verify->add_option("--witness", witness_path)->required();

  auto* compare = app.add_subcommand("compare", "Comparison driver (full by default)");
  bool weak = false;
  int ord = -1;
  compare->add_option("--scenario", scenario_path)->required();
  compare->add_flag("--weak", weak, "Weak comparison from a density gap");
  compare->add_option("--ord", ord, "Growth order")->check(CLI::NonNegativeNumber);

  auto* oracle = app.add_subcommand("oracle", "Exhaustive search for A ≺ B");
  int word_radius = -1;
  int max_sets = -1;
  oracle->add_option("--scenario", scenario_path)->required();
  oracle->add_option("--word-radius", word_radius)->check(CLI::NonNegativeNumber);
  oracle->add_option("--max-sets", max_sets)->check(CLI::NonNegativeNumber);

  auto* gen = app.add_subcommand("gen", "Random scenario");
  dc_gen_options gen_options = dc_gen_defaults();
  std::uint64_t seed = 1;
  std::string gen_group = gen_options.group;
  bool intransitive = false;
  bool metric = false;
  gen->add_option("--seed", seed);
  gen->add_option("--group", gen_group)->check(CLI::IsMember({"z", "z2", "heisenberg"}));
  gen->add_option("--min-points", gen_options.min_points);
  gen->add_option("--max-points", gen_options.max_points);
  gen->add_flag("--intransitive", intransitive);
  gen->add_flag("--metric", metric, "Random shortest-path metric instead of the discrete one");
  gen->add_option("--a-fraction", gen_options.a_fraction)->check(CLI::Range(0.0, 1.0));
  gen->add_option("--b-fraction", gen_options.b_fraction)->check(CLI::Range(0.0, 1.0));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kSuccess : kUsage;
  }

  const bool table = app.got_subcommand(growth) || app.got_subcommand(density);
  g.output = output.value_or(table ? "csv" : "json");
  const dc_format format = g.output == "csv" ? DC_FORMAT_CSV : DC_FORMAT_JSON;
  const bool as_json = format == DC_FORMAT_JSON;
  Owned out;

  if (app.got_subcommand(growth)) {
    const dc_status st = dc_ball_growth(group.c_str(), nmax, format, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, as_json);
    return kSuccess;
  }

  if (app.got_subcommand(gen)) {
    if (!json_only(g, "gen")) return kUsage;
    gen_options.group = gen_group.c_str();
    gen_options.transitive = intransitive ? 0 : 1;
    gen_options.metric = metric ? 1 : 0;
    const dc_status st = dc_generate(seed, &gen_options, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, true);
    return kSuccess;
  }

  ScenarioHandle scenario;
  if (auto failed = load(scenario_path, scenario)) return *failed;

  if (app.got_subcommand(density)) {
    const dc_status st =
        dc_density_table(scenario.ptr, set_name.c_str(), density_nmax, format, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, as_json);
    return kSuccess;
  }

  const char* eps = epsilon ? epsilon->c_str() : nullptr;
  int flag = 0;

  if (app.got_subcommand(hypothesis)) {
    const dc_status st = dc_hypothesis(scenario.ptr, d_radius, m, eps, &flag, &out.text);
    if (st != DC_OK) return report_failure(st);
    if (as_json) {
      emit(g, out.text, true);
    } else {
      const auto doc = nlohmann::json::parse(out.text);
      std::ostringstream csv;
      csv << "x,lhs,rhs,margin\n";
      for (std::size_t x = 0; x < doc["lhs"].size(); ++x) {
        const auto l = doc["lhs"][x].get<long long>();
        const auto r = doc["rhs"][x].get<long long>();
        csv << x << "," << l << "," << r << "," << (r - l) << "\n";
      }
      emit(g, csv.str().c_str(), false);
    }
    return flag != 0 ? kSuccess : kNegative;
  }

  if (app.got_subcommand(witness)) {
    if (!json_only(g, "witness")) return kUsage;
    const dc_status st = dc_witness(scenario.ptr, d_radius, m, eps, &flag, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, true);
    return flag != 0 ? kSuccess : kNegative;
  }

  if (app.got_subcommand(verify)) {
    if (!json_only(g, "verify")) return kUsage;
    bool ok = false;
    const std::string text = read_file(witness_path, ok);
    if (!ok) {
      std::cerr << "error: IoError: cannot open " << witness_path << "\n";
      return kUsage;
    }
    const dc_status st = dc_verify(scenario.ptr, text.c_str(), &flag, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, true);
    return flag != 0 ? kSuccess : kNegative;
  }

  if (app.got_subcommand(compare)) {
    if (!json_only(g, "compare")) return kUsage;
    const dc_status st = dc_compare(scenario.ptr, weak ? 1 : 0, ord, &flag, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, true);
    return flag != 0 ? kSuccess : kNegative;
  }

  if (app.got_subcommand(oracle)) {
    if (!json_only(g, "oracle")) return kUsage;
    const dc_status st = dc_oracle(scenario.ptr, word_radius, max_sets, &flag, &out.text);
    if (st != DC_OK) return report_failure(st);
    emit(g, out.text, true);
    return flag != 0 ? kSuccess : kNegative;
  }
  return kUsage;
}
