#include "dyncomp/scenario.hpp"

#include "dyncomp/error.hpp"

#include <fstream>
#include <set>
#include <sstream>

namespace dyncomp {

namespace {

constexpr const char* kWitnessFormat = "dyncomp.witness/1";

[[noreturn]] void invalid(const std::string& field, const std::string& reason) {
  throw ValidationError(field, reason);
}

std::string join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

std::string at(const std::string& path, std::size_t i) {
  return path + "[" + std::to_string(i) + "]";
}

std::int64_t get_int(const Json& v, const std::string& field) {
  if (!v.is_number_integer()) invalid(field, "expected an integer");
  return v.get<std::int64_t>();
}

int get_small_int(const Json& v, const std::string& field, std::int64_t lo, std::int64_t hi) {
  const std::int64_t x = get_int(v, field);
  if (x < lo || x > hi) {
    invalid(field, "must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return static_cast<int>(x);
}

Rational get_rational(const Json& v, const std::string& field) {
  if (v.is_number_integer()) return Rational(v.get<std::int64_t>());
  if (!v.is_string()) invalid(field, "expected a rational as \"p/q\" or an integer");
  try {
    return parse_rational(v.get<std::string>());
  } catch (const Error&) {
    invalid(field, "malformed rational \"" + v.get<std::string>() + "\"");
  }
}

std::vector<std::int64_t> get_coords(const Json& v, const std::string& field) {
  if (!v.is_array()) invalid(field, "expected an array of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i) out.push_back(get_int(v[i], at(field, i)));
  return out;
}

std::vector<std::size_t> get_points(const Json& v, const std::string& field, std::size_t n) {
  if (!v.is_array()) invalid(field, "expected an array of point indices");
  std::vector<std::size_t> out;
  std::set<std::size_t> seen;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const std::int64_t x = get_int(v[i], at(field, i));
    if (x < 0 || static_cast<std::size_t>(x) >= n) invalid(at(field, i), "point index out of range");
    if (!seen.insert(static_cast<std::size_t>(x)).second) invalid(at(field, i), "duplicate point");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

void check_keys(const Json& obj, const std::string& path, std::initializer_list<const char*> allowed,
                const char* reason) {
  for (const auto& [key, value] : obj.items()) {
    bool ok = false;
    for (const char* a : allowed) ok = ok || key == a;
    if (!ok) invalid(join(path, key), reason);
  }
}

GroupSpec parse_group(const Json& v) {
  try {
    if (v.is_string()) return GroupSpec::parse(v.get<std::string>());
    if (!v.is_object()) invalid("group", "expected a group name or an object");
    check_keys(v, "group", {"name", "generators"}, "unknown field");
    if (!v.contains("name") || !v["name"].is_string()) invalid("group.name", "missing group name");
    GroupSpec base = GroupSpec::parse(v["name"].get<std::string>());
    if (!v.contains("generators")) return base;
    const Json& gens = v["generators"];
    if (!gens.is_array()) invalid("group.generators", "expected an array of elements");
    std::vector<GroupElement> elements;
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const std::string field = at("group.generators", i);
      auto coords = get_coords(gens[i], field);
      if (static_cast<int>(coords.size()) != base.rank()) invalid(field, "wrong number of coordinates");
      elements.emplace_back(base.family(), std::move(coords));
    }
    return GroupSpec::with_generators(base.family(), base.rank(), std::move(elements));
  } catch (const ValidationError&) {
    throw;
  } catch (const Error& e) {
    invalid("group", e.what());
  }
}

Metric parse_metric(const Json& v, std::size_t n) {
  if (v.is_string()) {
    if (v.get<std::string>() != "discrete") invalid("action.metric", "unknown metric name");
    return Metric::discrete(n);
  }
  if (!v.is_array() || v.size() != n) invalid("action.metric", "expected an N x N matrix");
  std::vector<std::vector<Rational>> rows(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::string row_field = at("action.metric", i);
    if (!v[i].is_array() || v[i].size() != n) invalid(row_field, "expected a row of N entries");
    for (std::size_t j = 0; j < n; ++j) rows[i].push_back(get_rational(v[i][j], at(row_field, j)));
  }
  return Metric::from_rationals(rows);
}

FiniteMetricAction parse_action(const Json& v, const GroupSpec& spec) {
  if (!v.is_object()) invalid("action", "expected an object");
  check_keys(v, "action", {"points", "metric", "generators"}, "unknown field");
  if (!v.contains("points")) invalid("action.points", "missing");
  const auto n = static_cast<std::size_t>(get_small_int(v["points"], "action.points", 1, 1 << 24));
  Metric metric = v.contains("metric") ? parse_metric(v["metric"], n) : Metric::discrete(n);

  if (!v.contains("generators") || !v["generators"].is_array()) {
    invalid("action.generators", "expected an array of generator maps");
  }
  const Json& gens = v["generators"];
  const auto& spec_gens = spec.generators();
  std::vector<std::optional<Permutation>> maps(spec_gens.size());
  for (std::size_t i = 0; i < gens.size(); ++i) {
    const std::string field = at("action.generators", i);
    const Json& entry = gens[i];
    if (!entry.is_object() || !entry.contains("element") || !entry.contains("map")) {
      invalid(field, "expected {\"element\": [...], \"map\": [...]}");
    }
    check_keys(entry, field, {"element", "map"}, "unknown field");
    auto coords = get_coords(entry["element"], join(field, "element"));
    if (static_cast<int>(coords.size()) != spec.rank()) {
      invalid(join(field, "element"), "wrong number of coordinates");
    }
    const GroupElement g(spec.family(), std::move(coords));
    std::optional<std::size_t> index;
    for (std::size_t s = 0; s < spec_gens.size(); ++s) {
      if (spec_gens[s] == g) index = s;
    }
    if (!index) invalid(join(field, "element"), "not a generator of the group");
    if (maps[*index]) invalid(join(field, "element"), "duplicate generator");

    const Json& map = entry["map"];
    if (!map.is_array() || map.size() != n) invalid(field, "not a permutation");
    Permutation p(n);
    std::vector<bool> hit(n, false);
    for (std::size_t x = 0; x < n; ++x) {
      if (!map[x].is_number_integer()) invalid(field, "not a permutation");
      const std::int64_t y = map[x].get<std::int64_t>();
      if (y < 0 || static_cast<std::size_t>(y) >= n || hit[static_cast<std::size_t>(y)]) {
        invalid(field, "not a permutation");
      }
      hit[static_cast<std::size_t>(y)] = true;
      p[x] = static_cast<std::uint32_t>(y);
    }
    maps[*index] = std::move(p);
  }

  // A map may be given for only one generator of an inverse pair.
  std::vector<Permutation> full(spec_gens.size());
  for (std::size_t s = 0; s < spec_gens.size(); ++s) {
    if (maps[s]) {
      full[s] = *maps[s];
      continue;
    }
    const auto& partner = maps[spec.inverse_of(s)];
    if (!partner) {
      invalid("action.generators", "missing map for generator " + spec_gens[s].to_string());
    }
    full[s].resize(n);
    for (std::size_t x = 0; x < n; ++x) full[s][(*partner)[x]] = static_cast<std::uint32_t>(x);
  }
  return FiniteMetricAction(spec, std::move(metric), std::move(full));
}

ScenarioParams parse_params(const Json& v) {
  ScenarioParams p;
  if (v.is_null()) return p;
  if (!v.is_object()) invalid("params", "expected an object");
  check_keys(v, "params",
             {"mode", "m", "ord", "epsilon_grid", "epsilon", "nmax", "max_steps", "word_radius",
              "max_sets", "d_radius"},
             "unknown parameter");
  if (v.contains("mode")) {
    const Json& mode = v["mode"];
    if (mode == "exact") {
      p.mode = Mode::kExact;
    } else if (mode == "metric") {
      p.mode = Mode::kMetric;
    } else {
      invalid("params.mode", "expected \"exact\" or \"metric\"");
    }
  }
  if (v.contains("m")) p.m = get_small_int(v["m"], "params.m", 1, 1 << 20);
  if (v.contains("ord")) p.ord = get_small_int(v["ord"], "params.ord", 0, 20);
  if (v.contains("epsilon_grid")) {
    const Json& grid = v["epsilon_grid"];
    if (!grid.is_array()) invalid("params.epsilon_grid", "expected an array of rationals");
    for (std::size_t i = 0; i < grid.size(); ++i) {
      Rational r = get_rational(grid[i], at("params.epsilon_grid", i));
      if (r <= 0) invalid(at("params.epsilon_grid", i), "must be positive");
      p.epsilon_grid.push_back(std::move(r));
    }
  }
  if (v.contains("epsilon")) {
    p.epsilon = get_rational(v["epsilon"], "params.epsilon");
    if (*p.epsilon < 0) invalid("params.epsilon", "must be nonnegative");
  }
  if (v.contains("nmax")) p.nmax = get_small_int(v["nmax"], "params.nmax", 1, 1 << 16);
  if (v.contains("max_steps")) {
    p.max_steps = static_cast<std::size_t>(
        get_small_int(v["max_steps"], "params.max_steps", 1, std::numeric_limits<int>::max()));
  }
  if (v.contains("word_radius")) {
    p.word_radius = get_small_int(v["word_radius"], "params.word_radius", 0, 1 << 16);
  }
  if (v.contains("max_sets")) p.max_sets = get_small_int(v["max_sets"], "params.max_sets", 0, 1 << 16);
  if (v.contains("d_radius")) p.d_radius = get_small_int(v["d_radius"], "params.d_radius", 0, 1 << 16);
  return p;
}

Json points_to_json(const PointSet& s) { return Json(s.points()); }

Json rational_json(const Rational& r) { return format_rational(r); }

}  // namespace

const PointSet& Scenario::set(const std::string& name) const {
  auto it = sets.find(name);
  if (it == sets.end()) invalid("sets", "no set named \"" + name + "\"");
  return it->second;
}

bool operator==(const Scenario& lhs, const Scenario& rhs) {
  return lhs.name == rhs.name && lhs.action.spec() == rhs.action.spec() &&
         lhs.action.metric() == rhs.action.metric() &&
         lhs.action.generator_maps() == rhs.action.generator_maps() && lhs.sets == rhs.sets &&
         lhs.params == rhs.params;
}

Scenario scenario_from_json(const Json& doc) {
  if (!doc.is_object()) invalid("", "expected a JSON object");
  check_keys(doc, "", {"name", "group", "action", "sets", "params"}, "unknown field");
  std::string name;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) invalid("name", "expected a string");
    name = doc["name"].get<std::string>();
  }
  if (!doc.contains("group")) invalid("group", "missing");
  if (!doc.contains("action")) invalid("action", "missing");
  GroupSpec spec = parse_group(doc["group"]);
  FiniteMetricAction action = parse_action(doc["action"], spec);

  std::map<std::string, PointSet> sets;
  if (!doc.contains("sets") || !doc["sets"].is_object()) invalid("sets", "expected an object");
  for (const auto& [key, value] : doc["sets"].items()) {
    const auto pts = get_points(value, join("sets", key), action.size());
    sets.emplace(key, PointSet::from_points(action.size(), pts));
  }
  for (const char* required : {"A", "B"}) {
    if (!sets.count(required)) invalid(join("sets", required), "missing");
  }

  ScenarioParams params = parse_params(doc.contains("params") ? doc["params"] : Json());
  if (params.mode == Mode::kExact && !action.exact_mode()) {
    invalid("params.mode", "exact mode requires the discrete metric");
  }
  if (params.mode == Mode::kMetric && action.exact_mode()) {
    invalid("params.mode", "metric mode requires a non-discrete metric");
  }
  return Scenario{std::move(name), std::move(action), std::move(sets), std::move(params)};
}

Scenario parse_scenario(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::kParseError, std::string("scenario is not valid JSON: ") + e.what());
  }
  return scenario_from_json(doc);
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario(buf.str());
}

Json element_to_json(const GroupElement& g) { return Json(g.coords()); }

Json scenario_to_json(const Scenario& s) {
  Json doc;
  doc["name"] = s.name;
  const GroupSpec& spec = s.action.spec();
  if (spec.has_standard_generators()) {
    doc["group"] = spec.name();
  } else {
    Json gens = Json::array();
    for (const auto& g : spec.generators()) gens.push_back(element_to_json(g));
    doc["group"] = {{"name", spec.name()}, {"generators", gens}};
  }

  Json action;
  action["points"] = s.action.size();
  const Metric& metric = s.action.metric();
  if (metric.is_discrete()) {
    action["metric"] = "discrete";
  } else {
    Json rows = Json::array();
    for (std::size_t i = 0; i < metric.size(); ++i) {
      Json row = Json::array();
      for (std::size_t j = 0; j < metric.size(); ++j) row.push_back(rational_json(metric.distance(i, j)));
      rows.push_back(std::move(row));
    }
    action["metric"] = std::move(rows);
  }
  Json gens = Json::array();
  for (std::size_t i = 0; i < spec.generators().size(); ++i) {
    gens.push_back({{"element", element_to_json(spec.generators()[i])},
                    {"map", s.action.generator_maps()[i]}});
  }
  action["generators"] = std::move(gens);
  doc["action"] = std::move(action);

  Json sets = Json::object();
  for (const auto& [name, set] : s.sets) sets[name] = points_to_json(set);
  doc["sets"] = std::move(sets);

  const ScenarioParams& p = s.params;
  Json params = Json::object();
  if (p.mode) params["mode"] = *p.mode == Mode::kExact ? "exact" : "metric";
  if (p.m) params["m"] = *p.m;
  if (p.ord) params["ord"] = *p.ord;
  if (!p.epsilon_grid.empty()) {
    Json grid = Json::array();
    for (const auto& r : p.epsilon_grid) grid.push_back(rational_json(r));
    params["epsilon_grid"] = std::move(grid);
  }
  if (p.epsilon) params["epsilon"] = rational_json(*p.epsilon);
  if (p.nmax) params["nmax"] = *p.nmax;
  if (p.max_steps) params["max_steps"] = *p.max_steps;
  if (p.word_radius) params["word_radius"] = *p.word_radius;
  if (p.max_sets) params["max_sets"] = *p.max_sets;
  if (p.d_radius) params["d_radius"] = *p.d_radius;
  doc["params"] = std::move(params);
  return doc;
}

std::string dump_document(const Json& doc) { return doc.dump(2) + "\n"; }

Json witness_to_json(const Witness& witness, const GroupSpec& spec) {
  Json entries = Json::array();
  for (const auto& e : witness.entries) {
    entries.push_back({{"family", e.family},
                       {"element", element_to_json(e.element)},
                       {"points", points_to_json(e.set)}});
  }
  return {{"format", kWitnessFormat}, {"group", spec.name()}, {"m", witness.m}, {"entries", entries}};
}

Witness witness_from_json(const Json& doc, const FiniteMetricAction& action) {
  if (!doc.is_object()) invalid("witness", "expected an object");
  if (!doc.contains("format") || doc["format"] != kWitnessFormat) {
    invalid("witness.format", std::string("expected \"") + kWitnessFormat + "\"");
  }
  const GroupSpec& spec = action.spec();
  if (!doc.contains("group") || doc["group"] != spec.name()) {
    invalid("witness.group", "does not match the scenario group " + spec.name());
  }
  if (!doc.contains("m")) invalid("witness.m", "missing");
  Witness w;
  w.m = get_small_int(doc["m"], "witness.m", std::numeric_limits<int>::min(),
                      std::numeric_limits<int>::max());
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    invalid("witness.entries", "expected an array");
  }
  const Json& entries = doc["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string field = at("witness.entries", i);
    const Json& e = entries[i];
    if (!e.is_object() || !e.contains("family") || !e.contains("element") || !e.contains("points")) {
      invalid(field, "expected {\"family\", \"element\", \"points\"}");
    }
    const int family = get_small_int(e["family"], join(field, "family"),
                                     std::numeric_limits<int>::min(),
                                     std::numeric_limits<int>::max());
    auto coords = get_coords(e["element"], join(field, "element"));
    if (static_cast<int>(coords.size()) != spec.rank()) {
      invalid(join(field, "element"), "wrong number of coordinates");
    }
    const auto pts = get_points(e["points"], join(field, "points"), action.size());
    w.entries.push_back({PointSet::from_points(action.size(), pts),
                         GroupElement(spec.family(), std::move(coords)), family});
  }
  return w;
}

Json to_json(const HypothesisReport& r) {
  return {{"holds", r.holds},
          {"min_margin", r.min_margin},
          {"worst_point", r.worst_point},
          {"lhs", r.lhs},
          {"rhs", r.rhs},
          {"m", r.m},
          {"epsilon", rational_json(r.epsilon)},
          {"d_size", r.d_size},
          {"dd_size", r.dd_size}};
}

Json to_json(const VerificationReport& r) {
  Json doc = {{"passed", r.passed}};
  if (r.passed) return doc;
  doc["violation"] = r.violation;
  doc["message"] = r.message;
  if (r.family != 0) doc["family"] = r.family;
  if (r.entry) doc["entry"] = *r.entry;
  if (r.other_entry) doc["other_entry"] = *r.other_entry;
  if (r.point) doc["point"] = *r.point;
  return doc;
}

Json to_json(const WeakTrace& t) {
  Json attempts = Json::array();
  for (const auto& a : t.attempts) {
    Json row = {{"epsilon", rational_json(a.epsilon)},
                {"n", a.n},
                {"ball", a.ball},
                {"double_ball", a.double_ball},
                {"doubling", a.doubling}};
    row["min_margin"] = a.min_margin ? Json(*a.min_margin) : Json();
    attempts.push_back(std::move(row));
  }
  Json doc = {{"ord", t.ord},
              {"m", t.m},
              {"epsilon", rational_json(t.epsilon)},
              {"fattened_upper", rational_json(t.fattened_upper)},
              {"shrunk_lower", rational_json(t.shrunk_lower)},
              {"n", t.n},
              {"ball", t.ball},
              {"double_ball", t.double_ball},
              {"attempts", attempts},
              {"greedy_steps", t.greedy_steps},
              {"empty_steps", t.empty_steps},
              {"final_epsilon", rational_json(t.final_epsilon)}};
  doc["fit"] = t.fit ? Json(*t.fit) : Json();
  return doc;
}

Json to_json(const FullTrace& t) {
  Json translates = Json::array();
  for (const auto& h : t.translates) translates.push_back(element_to_json(h));
  Json pairing = Json::array();
  for (const auto& s : t.pairing) {
    pairing.push_back({{"index", s.index},
                       {"element", element_to_json(s.element)},
                       {"epsilon", rational_json(s.epsilon)},
                       {"points", points_to_json(s.set)}});
  }
  Json doc = {{"ord", t.ord},
              {"m", t.m},
              {"punctured", t.punctured},
              {"translates", translates},
              {"neighbourhood", points_to_json(t.neighbourhood)},
              {"radius", rational_json(t.radius)},
              {"epsilon", rational_json(t.epsilon)},
              {"pairing", pairing},
              {"steps", t.steps},
              {"terminal", t.terminal},
              {"remainder", points_to_json(t.remainder)}};
  doc["anchor"] = t.anchor ? Json(*t.anchor) : Json();
  doc["weak"] = t.weak ? to_json(*t.weak) : Json();
  return doc;
}

Json to_json(const OracleResult& r, const GroupSpec& spec) {
  Json doc = {{"subequivalent", r.subequivalent}, {"nodes", r.nodes}};
  doc["witness"] = r.witness ? witness_to_json(*r.witness, spec) : Json();
  return doc;
}

Rational resolve_epsilon(const FiniteMetricAction& action, const Rational& eps) {
  if (eps < 0) throw Error(ErrorCode::kInvalidArgument, "epsilon must be nonnegative");
  if (eps == 0) return action.metric().min_positive_distance() / 2;
  return eps;
}

}  // namespace dyncomp
