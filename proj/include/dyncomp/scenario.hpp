#ifndef DYNCOMP_SCENARIO_HPP
#define DYNCOMP_SCENARIO_HPP

#include "dyncomp/action.hpp"
#include "dyncomp/density.hpp"
#include "dyncomp/driver.hpp"
#include "dyncomp/group.hpp"
#include "dyncomp/rational.hpp"
#include "dyncomp/subequiv.hpp"

#include "json.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace dyncomp {

using Json = nlohmann::json;

enum class Mode { kExact, kMetric };

struct ScenarioParams {
  std::optional<Mode> mode;
  std::optional<int> m;
  std::optional<int> ord;
  std::vector<Rational> epsilon_grid;
  std::optional<Rational> epsilon;
  std::optional<int> nmax;
  std::optional<std::size_t> max_steps;
  std::optional<int> word_radius;
  std::optional<int> max_sets;
  std::optional<int> d_radius;

  friend bool operator==(const ScenarioParams&, const ScenarioParams&) = default;
};

struct Scenario {
  std::string name;
  FiniteMetricAction action;
  std::map<std::string, PointSet> sets;  // always holds "A" and "B"
  ScenarioParams params;

  // Throws ValidationError("sets", ...) for unknown names.
  const PointSet& set(const std::string& name) const;
  Mode mode() const { return action.exact_mode() ? Mode::kExact : Mode::kMetric; }

  friend bool operator==(const Scenario& lhs, const Scenario& rhs);
};

// Throws Error(kParseError) for malformed JSON and ValidationError(field,
// reason) for schema or consistency violations.
Scenario parse_scenario(const std::string& text);
Scenario scenario_from_json(const Json& doc);
// Throws Error(kIoError) if the file cannot be read.
Scenario load_scenario(const std::string& path);

Json scenario_to_json(const Scenario& scenario);
// Pretty-printed, sorted keys, trailing newline.
std::string dump_document(const Json& doc);

Json element_to_json(const GroupElement& g);
Json witness_to_json(const Witness& witness, const GroupSpec& spec);
// Validates shape and point ranges; family ranges are left to the verifier.
Witness witness_from_json(const Json& doc, const FiniteMetricAction& action);

Json to_json(const HypothesisReport& report);
Json to_json(const VerificationReport& report);
Json to_json(const WeakTrace& trace);
Json to_json(const FullTrace& trace);
Json to_json(const OracleResult& result, const GroupSpec& spec);

// Epsilon 0 stands for the limit eps -> 0+, resolved to half the smallest
// positive distance; positive values pass through.
Rational resolve_epsilon(const FiniteMetricAction& action, const Rational& eps);

}  // namespace dyncomp

#endif  // DYNCOMP_SCENARIO_HPP
