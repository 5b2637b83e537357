#include "dyncomp/dyncomp.h"

#include "dyncomp/density.hpp"
#include "dyncomp/driver.hpp"
#include "dyncomp/error.hpp"
#include "dyncomp/gen.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/scenario.hpp"
#include "dyncomp/subequiv.hpp"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <new>
#include <sstream>

struct dc_scenario {
  dyncomp::Scenario scenario;
};

namespace {

using namespace dyncomp;

static_assert(static_cast<int>(ErrorCode::kInvalidArgument) == DC_INVALID_ARGUMENT);
static_assert(static_cast<int>(ErrorCode::kValidationError) == DC_VALIDATION_ERROR);
static_assert(static_cast<int>(ErrorCode::kNoSuitableN) == DC_NO_SUITABLE_N);
static_assert(static_cast<int>(ErrorCode::kInternal) == DC_INTERNAL);

thread_local std::string last_error;

template <typename F>
dc_status guard(F&& body) {
  last_error.clear();
  try {
    body();
    return DC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return static_cast<dc_status>(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  }
  return DC_INTERNAL;
}

char* copy_out(const std::string& text) {
  char* out = static_cast<char*>(std::malloc(text.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::kInvalidArgument, what);
}

std::string decimal(const Rational& r, int digits) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(digits) << to_double(r);
  return out.str();
}

Rational pick_epsilon(const Scenario& s, const char* epsilon) {
  Rational eps = epsilon != nullptr ? parse_rational(epsilon) : s.params.epsilon.value_or(Rational(0));
  return resolve_epsilon(s.action, eps);
}

int pick(int arg, const std::optional<int>& param, int fallback) {
  return arg >= 0 ? arg : param.value_or(fallback);
}

WeakComparisonOptions weak_options(const Scenario& s, int ord) {
  WeakComparisonOptions o;
  if (ord >= 0) {
    o.ord = ord;
  } else {
    o.ord = s.params.ord;
  }
  o.nmax = s.params.nmax.value_or(o.nmax);
  o.epsilon_grid = s.params.epsilon_grid;
  return o;
}

}  // namespace

extern "C" {

const char* dc_version(void) { return "1.0.0"; }

const char* dc_status_name(dc_status status) {
  static thread_local std::string name;
  name = status == DC_OK ? "Ok" : std::string(error_code_name(static_cast<ErrorCode>(status)));
  return name.c_str();
}

const char* dc_last_error(void) { return last_error.c_str(); }

void dc_string_free(char* text) { std::free(text); }

dc_status dc_scenario_load(const char* path, dc_scenario** out) {
  return guard([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new dc_scenario{load_scenario(path)};
  });
}

dc_status dc_scenario_parse(const char* json_text, dc_scenario** out) {
  return guard([&] {
    require(json_text != nullptr && out != nullptr, "null argument");
    *out = new dc_scenario{parse_scenario(json_text)};
  });
}

void dc_scenario_free(dc_scenario* scenario) { delete scenario; }

size_t dc_scenario_points(const dc_scenario* scenario) {
  return scenario == nullptr ? 0 : scenario->scenario.action.size();
}

dc_status dc_scenario_to_json(const dc_scenario* scenario, char** out) {
  return guard([&] {
    require(scenario != nullptr && out != nullptr, "null argument");
    *out = copy_out(dump_document(scenario_to_json(scenario->scenario)));
  });
}

dc_status dc_ball_growth(const char* group, int nmax, dc_format format, char** out) {
  return guard([&] {
    require(group != nullptr && out != nullptr, "null argument");
    require(nmax >= 0, "nmax must be nonnegative");
    const GroupSpec spec = GroupSpec::parse(group);
    const std::vector<std::size_t> sizes = ball_sizes(spec, 2 * nmax);
    if (format == DC_FORMAT_CSV) {
      std::ostringstream csv;
      csv << "n,size,ratio\n";
      for (int n = 0; n <= nmax; ++n) {
        const Rational ratio(static_cast<std::int64_t>(sizes[2 * n]),
                             static_cast<std::int64_t>(sizes[n]));
        csv << n << "," << sizes[n] << "," << decimal(ratio, 6) << "\n";
      }
      *out = copy_out(csv.str());
    } else {
      Json rows = Json::array();
      for (int n = 0; n <= nmax; ++n) {
        rows.push_back({{"n", n},
                        {"size", sizes[n]},
                        {"double_size", sizes[2 * n]},
                        {"ratio", format_rational(Rational(static_cast<std::int64_t>(sizes[2 * n]),
                                                           static_cast<std::int64_t>(sizes[n])))}});
      }
      *out = copy_out(dump_document({{"group", spec.name()}, {"rows", rows}}));
    }
  });
}

dc_status dc_density_table(const dc_scenario* scenario, const char* set, int nmax,
                           dc_format format, char** out) {
  return guard([&] {
    require(scenario != nullptr && set != nullptr && out != nullptr, "null argument");
    require(nmax >= 0, "nmax must be nonnegative");
    const Scenario& s = scenario->scenario;
    const PointSet& a = s.set(set);
    const DensityBounds exact = exact_density(s.action, a);
    BallEnumerator bfs(s.action.spec());
    std::ostringstream csv;
    csv << "n,lower_n,upper_n,exact_lower,exact_upper\n";
    Json rows = Json::array();
    for (int n = 0; n <= nmax; ++n) {
      const DensityBounds window = folner_density(s.action, a, n);
      csv << n << "," << decimal(window.lower, 8) << "," << decimal(window.upper, 8) << ","
          << decimal(exact.lower, 8) << "," << decimal(exact.upper, 8) << "\n";
      rows.push_back({{"n", n},
                      {"lower_n", format_rational(window.lower)},
                      {"upper_n", format_rational(window.upper)}});
    }
    if (format == DC_FORMAT_CSV) {
      *out = copy_out(csv.str());
    } else {
      *out = copy_out(dump_document({{"set", set},
                                     {"exact_lower", format_rational(exact.lower)},
                                     {"exact_upper", format_rational(exact.upper)},
                                     {"rows", rows}}));
    }
  });
}

dc_status dc_hypothesis(const dc_scenario* scenario, int d_radius, int m, const char* epsilon,
                        int* holds, char** out) {
  return guard([&] {
    require(scenario != nullptr && out != nullptr, "null argument");
    const Scenario& s = scenario->scenario;
    const int radius = pick(d_radius, s.params.d_radius, 1);
    const int mm = pick(m, s.params.m, 2);
    const Rational eps = pick_epsilon(s, epsilon);
    const ElementSet d = ball(s.action.spec(), radius);
    const HypothesisReport report = check_hypothesis(s.action, s.set("A"), s.set("B"), d, mm, eps);
    if (holds != nullptr) *holds = report.holds ? 1 : 0;
    Json doc = to_json(report);
    doc["d_radius"] = radius;
    *out = copy_out(dump_document(doc));
  });
}

dc_status dc_witness(const dc_scenario* scenario, int d_radius, int m, const char* epsilon,
                     int* verified, char** out) {
  return guard([&] {
    require(scenario != nullptr && out != nullptr, "null argument");
    const Scenario& s = scenario->scenario;
    const int radius = pick(d_radius, s.params.d_radius, 1);
    const int mm = pick(m, s.params.m, 2);
    const Rational eps = pick_epsilon(s, epsilon);
    const ElementSet d = ball(s.action.spec(), radius);
    const PointSet& a = s.set("A");
    const PointSet& b = s.set("B");
    const GreedyResult greedy = greedy_witness(s.action, a, b, d, mm, eps);
    const VerificationReport check = verify_witness(s.action, a, b, greedy.witness);
    if (verified != nullptr) *verified = check.passed ? 1 : 0;
    Json doc = witness_to_json(greedy.witness, s.action.spec());
    doc["construction"] = {{"d_radius", radius},
                           {"d_size", d.size()},
                           {"epsilon", format_rational(eps)},
                           {"final_epsilon", format_rational(greedy.epsilons.back())},
                           {"steps", greedy.steps},
                           {"empty_steps", greedy.empty_steps},
                           {"invariant_checks", greedy.invariant_checks}};
    doc["verification"] = to_json(check);
    *out = copy_out(dump_document(doc));
  });
}

dc_status dc_verify(const dc_scenario* scenario, const char* witness_json, int* passed,
                    char** out) {
  return guard([&] {
    require(scenario != nullptr && witness_json != nullptr && out != nullptr, "null argument");
    const Scenario& s = scenario->scenario;
    Json doc;
    try {
      doc = Json::parse(witness_json);
    } catch (const Json::parse_error& e) {
      throw Error(ErrorCode::kParseError, std::string("witness is not valid JSON: ") + e.what());
    }
    const Witness w = witness_from_json(doc, s.action);
    const VerificationReport report = verify_witness(s.action, s.set("A"), s.set("B"), w);
    if (passed != nullptr) *passed = report.passed ? 1 : 0;
    *out = copy_out(dump_document({{"verification", to_json(report)}}));
  });
}

dc_status dc_compare(const dc_scenario* scenario, int weak, int ord, int* verified, char** out) {
  return guard([&] {
    require(scenario != nullptr && out != nullptr, "null argument");
    const Scenario& s = scenario->scenario;
    const PointSet& a = s.set("A");
    const PointSet& b = s.set("B");
    Json doc;
    VerificationReport check;
    if (weak != 0) {
      const WeakComparisonResult r = weak_comparison_witness(s.action, a, b, weak_options(s, ord));
      check = verify_witness(s.action, a, b, r.witness);
      doc = witness_to_json(r.witness, s.action.spec());
      doc["mode"] = "weak";
      doc["trace"] = to_json(r.trace);
    } else {
      FullComparisonOptions options;
      options.weak = weak_options(s, ord);
      options.max_steps = s.params.max_steps.value_or(options.max_steps);
      const FullComparisonResult r = full_comparison_witness(s.action, a, b, options);
      check = verify_witness(s.action, a, b, r.witness);
      doc = witness_to_json(r.witness, s.action.spec());
      doc["mode"] = "full";
      doc["trace"] = to_json(r.trace);
    }
    doc["verification"] = to_json(check);
    if (verified != nullptr) *verified = check.passed ? 1 : 0;
    *out = copy_out(dump_document(doc));
  });
}

dc_status dc_oracle(const dc_scenario* scenario, int word_radius, int max_sets,
                    int* subequivalent, char** out) {
  return guard([&] {
    require(scenario != nullptr && out != nullptr, "null argument");
    const Scenario& s = scenario->scenario;
    OracleOptions options;
    options.word_radius = pick(word_radius, s.params.word_radius, options.word_radius);
    options.max_sets = pick(max_sets, s.params.max_sets, options.max_sets);
    const OracleResult r = brute_force_subequivalent(s.action, s.set("A"), s.set("B"), options);
    if (subequivalent != nullptr) *subequivalent = r.subequivalent ? 1 : 0;
    Json doc = to_json(r, s.action.spec());
    doc["word_radius"] = options.word_radius;
    doc["max_sets"] = options.max_sets;
    *out = copy_out(dump_document(doc));
  });
}

dc_gen_options dc_gen_defaults(void) {
  const RandomScenarioOptions d;
  return {"z", d.model.min_points, d.model.max_points, d.model.transitive ? 1 : 0,
          d.model.metric ? 1 : 0, d.a_fraction, d.b_fraction};
}

dc_status dc_generate(uint64_t seed, const dc_gen_options* options, char** out) {
  return guard([&] {
    require(options != nullptr && options->group != nullptr && out != nullptr, "null argument");
    RandomScenarioOptions o;
    o.model.group = options->group;
    o.model.min_points = options->min_points;
    o.model.max_points = options->max_points;
    o.model.transitive = options->transitive != 0;
    o.model.metric = options->metric != 0;
    o.a_fraction = options->a_fraction;
    o.b_fraction = options->b_fraction;
    *out = copy_out(dump_document(scenario_to_json(random_scenario(seed, o))));
  });
}

}  // extern "C"
