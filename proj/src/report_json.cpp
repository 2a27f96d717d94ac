#include "munu/report_json.hpp"

namespace munu::report {

Json to_json(const PrincipleReport& r, std::optional<std::uint64_t> seed) {
  Json j{{"principle", to_string(r.principle)},
         {"holds", r.holds},
         {"counterexample", r.counterexample},
         {"checked_count", r.checked_count}};
  if (r.universe_depth) j["universe_depth"] = *r.universe_depth;
  if (r.notion) j["notion"] = to_string(*r.notion);
  if (r.subject) j["subject"] = *r.subject;
  if (seed) j["seed"] = *seed;
  return j;
}

Json to_json(const Verdict& v) {
  Json trace = Json::array();
  for (const auto& [a, b] : v.assumption_trace) trace.push_back({a, b});
  Json j{{"holds", v.holds},
         {"assumption_trace", trace},
         {"visited_goals", v.visited_goals},
         {"goal_bound", v.goal_bound},
         {"notes", v.notes}};
  j["failure_pair"] = v.failure_pair ? Json{v.failure_pair->first, v.failure_pair->second} : Json(nullptr);
  return j;
}

Json envelope(const std::string& command, Json answer, std::vector<Json> reports, std::optional<Json> verdict) {
  Json j{{"command", command}, {"answer", std::move(answer)}, {"reports", std::move(reports)}};
  if (verdict) j["verdict"] = std::move(*verdict);
  return j;
}

std::string render(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace munu::report
