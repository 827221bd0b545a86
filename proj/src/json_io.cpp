#include "strata/json_io.hpp"

namespace strata {

json to_json(const Position& p) { return p.str(); }

json to_json(const Step& s) {
  return json{{"before", print(s.before)},
              {"after", print(s.after)},
              {"rule", to_string(s.occurrence.rule)},
              {"position", s.occurrence.position.str()},
              {"list_length", s.occurrence.list_length},
              {"calculus", to_string(s.calculus)},
              {"level_required", s.level_required}};
}

json to_json(const Trace& t) {
  json steps = json::array();
  for (const auto& s : t.steps) steps.push_back(to_json(s));
  json j{{"initial", print(t.initial)},
         {"calculus", to_string(t.calculus)},
         {"level", t.level.str()},
         {"strategy", to_string(t.strategy)},
         {"steps", std::move(steps)},
         {"outcome", to_string(t.outcome)},
         {"final", print(t.final_term())}};
  if (t.outcome == Outcome::Cycle) j["cycle_index"] = t.cycle_index;
  return j;
}

json to_json(const MeaningStatus& m) {
  json j{{"status", to_string(m.kind)}, {"asserted", m.asserted}, {"fuel_spent", m.fuel_spent}};
  if (m.trace) j["trace"] = to_json(*m.trace);
  return j;
}

json to_json(const Derivation& d) {
  json ctx = json::object();
  for (const auto& [x, m] : d.ctx.entries()) {
    json items = json::array();
    for (const auto& ty : m.items()) items.push_back(ty.str());
    ctx[x] = std::move(items);
  }
  json premises = json::array();
  for (const auto& p : d.premises) premises.push_back(to_json(p));
  return json{{"system", to_string(d.system)}, {"rule", to_string(d.rule)}, {"context", std::move(ctx)},
              {"term", print_raw(d.term)},     {"type", d.type.str()},      {"premises", std::move(premises)}};
}

Derivation derivation_from_json(const json& j) {
  try {
    Derivation d;
    std::string sys = j.at("system").get<std::string>();
    if (sys == "V")
      d.system = TypeSystem::V;
    else if (sys == "N")
      d.system = TypeSystem::N;
    else
      throw DerivationError("unknown type system '" + sys + "'");
    d.rule = parse_ty_rule(j.at("rule").get<std::string>());
    for (const auto& [x, items] : j.at("context").items()) {
      std::vector<Ty> tys;
      for (const auto& s : items) tys.push_back(parse_type(s.get<std::string>()));
      d.ctx.add(x, Ty::mult(std::move(tys)));
    }
    d.term = parse(j.at("term").get<std::string>());
    d.type = parse_type(j.at("type").get<std::string>());
    for (const auto& p : j.at("premises")) d.premises.push_back(derivation_from_json(p));
    return d;
  } catch (const json::exception& e) {
    throw DerivationError(std::string("malformed derivation document: ") + e.what());
  }
}

Step step_from_json(const json& j) {
  Term before = parse(j.at("before").get<std::string>());
  RedexOccurrence occ{Position::parse(j.at("position").get<std::string>()), parse_rule(j.at("rule").get<std::string>()),
                      j.value("list_length", std::size_t{0})};
  return make_step(before, occ, parse_calculus(j.at("calculus").get<std::string>()));
}

}  // namespace strata
