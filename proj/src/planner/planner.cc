// Copyright 2026 The Aspire Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "planner/planner.h"

#include <algorithm>
#include <chrono>
#include <deque>
#include <set>

#include "common/error.h"
#include "common/text.h"
#include "kr/translate.h"
#include "logic/ground.h"
#include "logic/solver.h"

namespace aspire::planner {
namespace {

using logic::Literal;
using logic::Term;
using Clock = std::chrono::steady_clock;

double Since(Clock::time_point t) {
  return std::chrono::duration<double>(Clock::now() - t).count();
}

Literal Lit(const std::string &pred, std::vector<Term> args, bool negated = false) {
  Literal l;
  l.negated = negated;
  l.predicate = pred;
  l.args = std::move(args);
  return l;
}

Literal LocOf(const std::string &who, const std::string &place) {
  return Lit("loc", {Term::Constant(who), Term::Constant(place)});
}

std::vector<logic::AnswerSet> SolveAt(const kr::SystemDescription &d, const kr::History &h,
                                      int horizon, const kr::TranslateOptions &o, size_t limit,
                                      logic::GroundProgram *g) {
  logic::GroundOptions go;
  go.simplify = true;
  *g = logic::Ground(kr::Translate(d, h, horizon, o), go);
  return logic::StableModels(*g, limit);
}

bool IsObs(const kr::Observation &o, const std::string &person, const std::string &place) {
  return o.fluent.predicate == "loc" && o.fluent.args.size() == 2 &&
         logic::ToString(o.fluent.args[0]) == person &&
         (place.empty() || logic::ToString(o.fluent.args[1]) == place);
}

}  // namespace

std::string Plan::ToText() const {
  std::string out;
  for (const Literal &a : actions) out += logic::ToString(a) + "\n";
  return out;
}

std::string AssumeLocation(const std::string &person) {
  return "holds(loc(" + person + ", L), 0) :- #place(L), not -holds(loc(" + person + ", L), 0).\n";
}

Plan MakePlan(const kr::SystemDescription &d, const kr::History &h, const Goal &goal,
              int max_horizon, const std::string &extra_rules) {
  if (max_horizon < 0) Fail(ErrorCode::kInvalidArgument, "max_horizon must be non-negative");
  auto start = Clock::now();
  std::vector<std::string> at_end;
  for (int horizon = 0; horizon <= max_horizon; ++horizon) {
    std::string n = std::to_string(horizon);
    kr::TranslateOptions o;
    std::string extra = "#pred goal_reached.\n";
    if (horizon > 0) {
      o.prelude_rules = "occurs(A, I) :- #action(A), #step(I), I < " + n + ", not -occurs(A, I).\n";
      extra += "#pred has_action(step).\n"
               ":- occurs(A1, I), occurs(A2, I), A1 != A2.\n"
               "has_action(I) :- occurs(A, I).\n"
               ":- #step(I), I < " + n + ", not has_action(I).\n";
    }
    std::vector<std::string> body;
    for (const Literal &g : goal) {
      body.push_back(logic::ToString(kr::AtStep(d, g, Term::Integer(horizon))));
    }
    extra += body.empty() ? "goal_reached.\n" : "goal_reached :- " + Join(body, ", ") + ".\n";
    extra += ":- not goal_reached.\n";
    o.extra_rules = extra + extra_rules;
    logic::GroundProgram g;
    auto models = SolveAt(d, h, horizon, o, 1, &g);
    if (models.empty()) continue;
    std::vector<std::pair<long, Literal>> steps;
    Plan plan;
    for (int a : models[0].atoms) {
      const Literal &l = g.atom(a);
      if (!l.negated && l.predicate == "holds" && l.args[1].value == 0) {
        plan.initial_state.push_back(Lit(l.args[0].name, l.args[0].args));
      }
      if (l.negated || l.predicate != "occurs") continue;
      const Term &act = l.args[0];
      steps.push_back({l.args[1].value, Lit(act.name, act.args)});
    }
    std::sort(steps.begin(), steps.end(),
              [](const auto &x, const auto &y) { return x.first < y.first; });
    for (auto &[i, act] : steps) plan.actions.push_back(std::move(act));
    plan.seconds = Since(start);
    return plan;
  }
  Fail(ErrorCode::kNoPlan, "no plan within horizon " + std::to_string(max_horizon));
}

std::map<std::string, std::string> BelievedLocations(const kr::SystemDescription &d,
                                                     const kr::History &h,
                                                     const std::vector<std::string> &people) {
  logic::GroundProgram g;
  auto models = SolveAt(d, h, 0, {}, logic::kNoLimit, &g);
  if (models.empty()) Fail(ErrorCode::kSemantic, "history has no consistent belief state");
  std::set<std::string> wanted(people.begin(), people.end());
  std::map<std::string, std::string> out;
  for (int a : models[0].atoms) {
    const Literal &l = g.atom(a);
    if (l.negated || l.predicate != "holds") continue;
    const Term &f = l.args[0];
    if (f.name != "loc" || f.args.size() != 2) continue;
    std::string who = logic::ToString(f.args[0]);
    if (!wanted.count(who)) continue;
    bool everywhere = std::all_of(models.begin(), models.end(),
                                  [&](const logic::AnswerSet &m) { return m.Contains(a); });
    if (everywhere) out[who] = logic::ToString(f.args[1]);
  }
  return out;
}

kr::History Diagnose(const kr::SystemDescription &d, const kr::History &h,
                     const domains::RaObservation &observation, const domains::RaWorld &world) {
  const domains::RaConfig &c = world.config;
  auto belief = BelievedLocations(d, h, c.people);
  kr::History out = h;
  const std::string &here = observation.robot_loc;

  std::erase_if(out.facts, [&](const Literal &f) {
    return f.predicate == "loc" && logic::ToString(f.args[0]) == c.robot;
  });
  out.facts.push_back(LocOf(c.robot, here));
  for (const auto &[m, p] : world.delivered) {
    Literal done = Lit("message_status", {Term::Constant(m), Term::Constant(p), Term::Constant("delivered")});
    if (std::find(out.facts.begin(), out.facts.end(), done) == out.facts.end()) out.facts.push_back(done);
  }

  std::set<std::string> seen(observation.people_seen.begin(), observation.people_seen.end());
  for (const std::string &p : c.people) {
    auto b = belief.find(p);
    bool believed_here = b != belief.end() && b->second == here;
    bool unknown = b == belief.end();
    if (seen.count(p)) {
      if (believed_here) continue;
      std::erase_if(out.observations,
                    [&](const kr::Observation &o) { return !o.value && IsObs(o, p, here); });
      out.observations.push_back({LocOf(p, here), true, 0});
    } else if (believed_here || unknown) {
      bool positive = std::any_of(out.observations.begin(), out.observations.end(),
                                  [&](const kr::Observation &o) { return o.value && IsObs(o, p, here); });
      bool already = std::any_of(out.observations.begin(), out.observations.end(),
                                 [&](const kr::Observation &o) { return !o.value && IsObs(o, p, here); });
      if (!positive && !already) out.observations.push_back({LocOf(p, here), false, 0});
    }
  }
  return out;
}

Goal DeliveryGoal(const domains::RaConfig &config, const DeliveryTask &task) {
  return {Lit("message_status", {Term::Constant(task.message), Term::Constant(task.recipient),
                                 Term::Constant("delivered")}),
          LocOf(config.robot, task.home)};
}

int OraclePlanLength(const domains::RaWorld &world, const DeliveryTask &task) {
  const domains::RaConfig &c = world.config;
  const std::string &target = world.person_loc.at(task.recipient);
  bool done0 = world.delivered.count({task.message, task.recipient}) > 0;
  using State = std::pair<std::string, bool>;
  std::map<State, int> dist;
  std::deque<State> queue;
  dist[{world.robot_loc, done0}] = 0;
  queue.push_back({world.robot_loc, done0});
  while (!queue.empty()) {
    State s = queue.front();
    queue.pop_front();
    int k = dist[s];
    if (s.second && s.first == task.home) return k;
    std::vector<State> next;
    for (const std::string &n : c.Neighbors(s.first)) next.push_back({n, s.second});
    if (s.first == target) next.push_back({s.first, true});
    for (const State &t : next) {
      if (dist.count(t)) continue;
      dist[t] = k + 1;
      queue.push_back(t);
    }
  }
  return -1;
}

std::string ExecutionLog::ToCsv() const {
  std::string out = "step,action,expected,robot,success,seen,mismatch\n";
  for (size_t i = 0; i < steps.size(); ++i) {
    const StepRecord &s = steps[i];
    out += FormatCsvRow({std::to_string(i), logic::ToString(s.action), s.expected,
                         s.observation.robot_loc, s.observation.success ? "true" : "false",
                         Join(s.observation.people_seen, " "), s.mismatch ? "true" : "false"}) +
           "\n";
  }
  return out;
}

ExecutionLog ExecuteDelivery(const kr::SystemDescription &d, domains::RaWorld &world,
                             const DeliveryTask &task, const ExecPolicy &policy, uint64_t seed,
                             kr::History h) {
  const domains::RaConfig &c = world.config;
  if (!c.HasPerson(task.recipient)) Fail(ErrorCode::kNotFound, "unknown person " + task.recipient);
  if (!c.HasPlace(task.home)) Fail(ErrorCode::kNotFound, "unknown place " + task.home);
  Rng rng(seed);
  ExecutionLog log;
  auto start = Clock::now();
  h = Diagnose(d, h, domains::Observe(world, rng), world);
  std::string reason;
  auto ruled_out = [&](const std::string &place) {
    return std::any_of(h.observations.begin(), h.observations.end(), [&](const kr::Observation &o) {
      return !o.value && IsObs(o, task.recipient, place);
    });
  };

  while (true) {
    bool delivered = world.delivered.count({task.message, task.recipient}) > 0;
    if (delivered && world.robot_loc == task.home) {
      log.success = true;
      break;
    }
    auto belief = BelievedLocations(d, h, c.people);
    std::string assumptions;
    if (!delivered && !belief.count(task.recipient)) {
      bool open = std::any_of(c.places.begin(), c.places.end(),
                              [&](const std::string &p) { return !ruled_out(p); });
      if (!open) {
        // Every place ruled out: some sighting was missed, so look again.
        size_t cleared = std::erase_if(h.observations, [&](const kr::Observation &o) {
          return !o.value && IsObs(o, task.recipient, "") &&
                 logic::ToString(o.fluent.args[1]) != world.robot_loc;
        });
        if (cleared == 0) {
          log.failure = task.recipient + " not found";
          break;
        }
      }
      assumptions = AssumeLocation(task.recipient);
    }
    if (log.plans > 0) {
      log.replans.push_back(reason);
      if (static_cast<int>(log.replans.size()) > policy.max_replans) {
        log.failure = "replan budget exhausted";
        break;
      }
    }
    Plan plan;
    try {
      plan = MakePlan(d, h, delivered ? Goal{LocOf(c.robot, task.home)} : DeliveryGoal(c, task),
                      policy.max_horizon, assumptions);
    } catch (const Error &e) {
      if (e.code() != ErrorCode::kNoPlan) throw;
      log.failure = e.what();
      break;
    }
    ++log.plans;
    log.planning_seconds += plan.seconds;
    // Where the plan takes the recipient to be, believed or assumed.
    std::string target;
    for (const Literal &f : plan.initial_state) {
      if (f.predicate == "loc" && logic::ToString(f.args[0]) == task.recipient) {
        target = logic::ToString(f.args[1]);
      }
    }

    std::string expected = world.robot_loc;
    reason.clear();
    for (const Literal &action : plan.actions) {
      if (action.predicate == "move") expected = logic::ToString(action.args[1]);
      domains::RaObservation obs = domains::Step(world, action, rng);
      ++log.actions;
      h = Diagnose(d, h, obs, world);
      StepRecord rec{action, expected, obs, false};
      bool seen = std::count(obs.people_seen.begin(), obs.people_seen.end(), task.recipient) > 0;
      if (!obs.success) {
        reason = "failed " + logic::ToString(action);
      } else if (obs.robot_loc != expected) {
        reason = "robot at " + obs.robot_loc + ", expected " + expected;
      } else if (!delivered && seen && target != obs.robot_loc) {
        reason = task.recipient + " seen at " + obs.robot_loc;
      } else if (!delivered && !seen && target == obs.robot_loc) {
        reason = task.recipient + " not at " + obs.robot_loc;
      }
      rec.mismatch = !reason.empty();
      log.steps.push_back(std::move(rec));
      if (!reason.empty()) break;
    }
    if (reason.empty()) reason = "plan ended short of the goal";
  }
  log.execution_seconds = Since(start) - log.planning_seconds;
  return log;
}

}  // namespace aspire::planner
