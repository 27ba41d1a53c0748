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

#ifndef ASPIRE_DOMAINS_RA_H_
#define ASPIRE_DOMAINS_RA_H_

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "common/random.h"
#include "features/scene.h"
#include "logic/ast.h"

namespace aspire::domains {

struct RaConfig {
  std::vector<std::string> places;
  std::vector<std::pair<std::string, std::string>> edges;
  std::vector<std::string> people;
  std::map<std::string, std::string> workplace;
  std::map<std::string, std::vector<std::string>> expected;
  std::vector<std::string> clutter;
  std::string robot = "rob1";
  std::vector<std::string> messages = {"m1"};
  double p_home = 0.8;
  double p_fail = 0.05;
  double p_miss = 0.05;
  double p_clutter = 0.15;

  // Reads map.csv, people.csv, objects.csv and world.cfg from a directory.
  static RaConfig Load(const std::string &dir);
  // The shipped office map.
  static RaConfig Canonical();

  bool HasPlace(const std::string &p) const;
  bool HasPerson(const std::string &p) const;
  bool Adjacent(const std::string &a, const std::string &b) const;
  std::vector<std::string> Neighbors(const std::string &p) const;
  // Shortest path lengths from one place; -1 for unreachable places.
  std::map<std::string, int> Distances(const std::string &from) const;
  // Throws kInvalidArgument unless edges are between known places and
  // the map is connected.
  void Check() const;
};

struct RaWorld {
  RaConfig config;
  std::string robot_loc;
  std::map<std::string, std::string> person_loc;
  std::set<std::pair<std::string, std::string>> delivered;  // (message, person)
  std::map<std::string, std::vector<std::string>> objects;  // per place

  // Each entity in exactly one known place.
  bool Consistent() const;
};

struct RaObservation {
  bool success = true;
  std::string robot_loc;
  std::vector<std::string> people_seen;
  std::vector<std::string> objects_seen;
  std::string note;
};

// People stay at their workplace with probability p_home, else at another
// place drawn once. The robot starts at robot_start when given, else at a
// random place.
RaWorld GenRaWorld(const RaConfig &config, uint64_t seed, const std::string &robot_start = "");

// What the robot perceives where it stands.
RaObservation Observe(const RaWorld &world, Rng &rng);

// Applies move(R, L) or deliver(R, M, P). Throws kNotFound for an unknown
// place, person or message, kInvalidArgument for another action.
RaObservation Step(RaWorld &world, const logic::Literal &action, Rng &rng);

struct Clutter {
  bool cluttered = false;
  std::vector<std::string> unexpected;
};

Clutter ClutterReport(const RaConfig &config, const std::string &place,
                      const std::vector<std::string> &detected);
Clutter ClutterReport(const RaWorld &world, const std::string &place);

// Full description text: generated sorts and map facts, the shipped
// dynamics and, when workplaces are given, the learned defaults.
std::string RaKbText(const RaConfig &config,
                     const std::map<std::string, std::string> &learned_workplaces = {});

// A random connected map with min..max places named p1, p2, ..., up to
// four people with distinct workplaces, and no objects.
RaConfig RandomRaConfig(uint64_t seed, int min_places = 3, int max_places = 7);

// Rooms where the robot found a person, described for question answering.
// Attributes: person, name, place, presence, objects, unexpected,
// room_kind, occupant, n_unexpected, delivered.
FeatureSchema RaQaSchema();
FeatureProvider RaQaProvider();
std::vector<SceneRecord> GenRaQaScenes(const RaConfig &config, int n, uint64_t seed);

}  // namespace aspire::domains

#endif  // ASPIRE_DOMAINS_RA_H_
