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

#ifndef ASPIRE_PLANNER_PLANNER_H_
#define ASPIRE_PLANNER_PLANNER_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "domains/ra.h"
#include "kr/description.h"
#include "logic/ast.h"

namespace aspire::planner {

// Ground fluent literals that must hold at the last step.
using Goal = std::vector<logic::Literal>;

struct Plan {
  std::vector<logic::Literal> actions;
  // Positive fluents at step 0 in the chosen answer set, including any
  // location the planner had to assume.
  std::vector<logic::Literal> initial_state;
  double seconds = 0.0;  // solving time, all horizons

  size_t size() const { return actions.size(); }
  // One action per line.
  std::string ToText() const;
};

// Shortest plan: the first horizon 0, 1, ... with an answer set. Extra
// rules (e.g. assumptions about unknown locations) join the program. Throws
// kNoPlan past max_horizon.
Plan MakePlan(const kr::SystemDescription &d, const kr::History &h, const Goal &goal,
              int max_horizon = 12, const std::string &extra_rules = "");

// Lets the planner assume a location for the person at step 0, among the
// places no observation rules out.
std::string AssumeLocation(const std::string &person);

// Where each person is believed to be at step 0; absent when unknown.
// Throws kSemantic when the history has no answer set.
std::map<std::string, std::string> BelievedLocations(const kr::SystemDescription &d,
                                                     const kr::History &h,
                                                     const std::vector<std::string> &people);

// Folds what the robot saw at its place into the history, at step 0:
// sightings that contradict the belief become positive observations, and
// people believed here (or nowhere) but not seen become negative ones. The
// robot's own location and delivered messages are restated as facts.
kr::History Diagnose(const kr::SystemDescription &d, const kr::History &h,
                     const domains::RaObservation &observation, const domains::RaWorld &world);

struct DeliveryTask {
  std::string message = "m1";
  std::string recipient;
  std::string home;  // where the robot returns
};

Goal DeliveryGoal(const domains::RaConfig &config, const DeliveryTask &task);

// Shortest delivery-and-return length on the true map and true recipient
// location; -1 when unreachable.
int OraclePlanLength(const domains::RaWorld &world, const DeliveryTask &task);

struct ExecPolicy {
  int max_replans = 40;
  int max_horizon = 12;
};

struct StepRecord {
  logic::Literal action;
  std::string expected;  // robot place the plan predicts
  domains::RaObservation observation;
  bool mismatch = false;
};

struct ExecutionLog {
  std::vector<StepRecord> steps;
  std::vector<std::string> replans;  // reasons, one per replanning event
  int plans = 0;
  int actions = 0;
  double planning_seconds = 0.0;
  double execution_seconds = 0.0;
  bool success = false;
  std::string failure;

  // step,action,expected,robot,success,seen,mismatch
  std::string ToCsv() const;
};

// Runs a delivery from the robot's current place: plan, act, observe,
// diagnose and replan on mismatch. When the recipient's location is not
// believed, plans assume whichever open place gives the shortest plan.
ExecutionLog ExecuteDelivery(const kr::SystemDescription &d, domains::RaWorld &world,
                             const DeliveryTask &task, const ExecPolicy &policy, uint64_t seed,
                             kr::History h = {});

}  // namespace aspire::planner

#endif  // ASPIRE_PLANNER_PLANNER_H_
