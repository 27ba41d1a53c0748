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

#include "domains/ra.h"

#include <algorithm>
#include <cctype>
#include <deque>
#include <sstream>

#include "common/error.h"
#include "common/paths.h"
#include "common/text.h"

namespace aspire::domains {

namespace {

std::vector<CsvRow> ReadTable(const std::string &path, const std::vector<std::string> &header) {
  std::vector<CsvRow> rows = ParseCsv(ReadFile(path));
  if (rows.empty() || rows[0] != header) {
    Fail(ErrorCode::kParse, path + ": expected header " + Join(header, ","));
  }
  rows.erase(rows.begin());
  return rows;
}

double Probability(const std::map<std::string, std::string> &kv, const std::string &key,
                   double fallback) {
  auto it = kv.find(key);
  if (it == kv.end()) return fallback;
  double p = std::stod(it->second);
  if (p < 0 || p > 1) Fail(ErrorCode::kInvalidArgument, key + " must be in [0, 1]");
  return p;
}

std::string Capitalized(std::string s) {
  if (!s.empty()) s[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
  return s;
}

std::string Spoken(const std::string &s) { return ReplaceAll(s, "_", " "); }

// "a", "a and b", "a, b, and c".
std::string ListText(const std::vector<std::string> &items) {
  if (items.size() <= 2) return Join(items, " and ");
  std::vector<std::string> head(items.begin(), items.end() - 1);
  return Join(head, ", ") + ", and " + items.back();
}

std::string WithArticle(const std::string &thing) {
  std::string s = Spoken(thing);
  return (std::string("aeiou").find(s[0]) != std::string::npos ? "an " : "a ") + s;
}

std::string PlaceText(const RaConfig &c, const std::string &place) {
  for (const auto &[person, work] : c.workplace) {
    if (work == place) return Capitalized(person) + "'s office";
  }
  return "the " + Spoken(place);
}

}  // namespace

RaConfig RaConfig::Load(const std::string &dir) {
  RaConfig c;
  auto add_place = [&](const std::string &p) {
    if (!c.HasPlace(p)) c.places.push_back(p);
  };
  for (const CsvRow &r : ReadTable(dir + "/objects.csv", {"place", "expected"})) {
    if (r.size() != 2) Fail(ErrorCode::kParse, "objects.csv: bad row");
    add_place(r[0]);
    c.expected[r[0]] = SplitWhitespace(r[1]);
  }
  for (const CsvRow &r : ReadTable(dir + "/map.csv", {"place_a", "place_b"})) {
    if (r.size() != 2) Fail(ErrorCode::kParse, "map.csv: bad row");
    add_place(r[0]);
    add_place(r[1]);
    c.edges.push_back({r[0], r[1]});
  }
  for (const CsvRow &r : ReadTable(dir + "/people.csv", {"person", "workplace"})) {
    if (r.size() != 2) Fail(ErrorCode::kParse, "people.csv: bad row");
    c.people.push_back(r[0]);
    c.workplace[r[0]] = r[1];
  }
  auto kv = ParseKeyValues(ReadFile(dir + "/world.cfg"));
  if (kv.count("robot")) c.robot = kv["robot"];
  if (kv.count("messages")) c.messages = SplitWhitespace(kv["messages"]);
  if (kv.count("clutter")) c.clutter = SplitWhitespace(kv["clutter"]);
  c.p_home = Probability(kv, "p_home", c.p_home);
  c.p_fail = Probability(kv, "p_fail", c.p_fail);
  c.p_miss = Probability(kv, "p_miss", c.p_miss);
  c.p_clutter = Probability(kv, "p_clutter", c.p_clutter);
  c.Check();
  return c;
}

RaConfig RaConfig::Canonical() { return Load(DataPath("ra")); }

bool RaConfig::HasPlace(const std::string &p) const {
  return std::find(places.begin(), places.end(), p) != places.end();
}

bool RaConfig::HasPerson(const std::string &p) const {
  return std::find(people.begin(), people.end(), p) != people.end();
}

bool RaConfig::Adjacent(const std::string &a, const std::string &b) const {
  for (const auto &[x, y] : edges) {
    if ((x == a && y == b) || (x == b && y == a)) return true;
  }
  return false;
}

std::vector<std::string> RaConfig::Neighbors(const std::string &p) const {
  std::vector<std::string> out;
  for (const std::string &q : places) {
    if (Adjacent(p, q)) out.push_back(q);
  }
  return out;
}

std::map<std::string, int> RaConfig::Distances(const std::string &from) const {
  std::map<std::string, int> dist;
  for (const std::string &p : places) dist[p] = -1;
  std::deque<std::string> queue = {from};
  dist[from] = 0;
  while (!queue.empty()) {
    std::string p = queue.front();
    queue.pop_front();
    for (const std::string &q : Neighbors(p)) {
      if (dist[q] < 0) {
        dist[q] = dist[p] + 1;
        queue.push_back(q);
      }
    }
  }
  return dist;
}

void RaConfig::Check() const {
  if (places.empty()) Fail(ErrorCode::kInvalidArgument, "map has no places");
  for (const auto &[a, b] : edges) {
    if (!HasPlace(a) || !HasPlace(b) || a == b) {
      Fail(ErrorCode::kInvalidArgument, "bad edge " + a + " - " + b);
    }
  }
  for (const auto &[person, place] : workplace) {
    if (!HasPlace(place)) Fail(ErrorCode::kInvalidArgument, "unknown workplace " + place);
  }
  for (const auto &[p, d] : Distances(places.front())) {
    if (d < 0) Fail(ErrorCode::kInvalidArgument, "map is not connected: " + p);
  }
}

bool RaWorld::Consistent() const {
  if (!config.HasPlace(robot_loc)) return false;
  for (const std::string &p : config.people) {
    auto it = person_loc.find(p);
    if (it == person_loc.end() || !config.HasPlace(it->second)) return false;
  }
  return person_loc.size() == config.people.size();
}

RaWorld GenRaWorld(const RaConfig &config, uint64_t seed, const std::string &robot_start) {
  Rng rng(seed);
  RaWorld w;
  w.config = config;
  if (!robot_start.empty() && !config.HasPlace(robot_start)) {
    Fail(ErrorCode::kNotFound, "unknown place " + robot_start);
  }
  w.robot_loc = robot_start.empty() ? config.places[rng.Below(config.places.size())] : robot_start;
  for (const std::string &p : config.people) {
    const std::string &home = config.workplace.at(p);
    if (config.places.size() < 2 || rng.Bernoulli(config.p_home)) {
      w.person_loc[p] = home;
      continue;
    }
    std::vector<std::string> others;
    for (const std::string &q : config.places) {
      if (q != home) others.push_back(q);
    }
    w.person_loc[p] = others[rng.Below(others.size())];
  }
  for (const std::string &place : config.places) {
    auto it = config.expected.find(place);
    std::vector<std::string> objs =
        it == config.expected.end() ? std::vector<std::string>{} : it->second;
    for (const std::string &o : config.clutter) {
      if (rng.Bernoulli(config.p_clutter)) objs.push_back(o);
    }
    w.objects[place] = objs;
  }
  return w;
}

RaObservation Observe(const RaWorld &world, Rng &rng) {
  RaObservation o;
  o.robot_loc = world.robot_loc;
  for (const std::string &p : world.config.people) {
    if (world.person_loc.at(p) == world.robot_loc && !rng.Bernoulli(world.config.p_miss)) {
      o.people_seen.push_back(p);
    }
  }
  for (const std::string &obj : world.objects.at(world.robot_loc)) {
    if (!rng.Bernoulli(world.config.p_miss)) o.objects_seen.push_back(obj);
  }
  return o;
}

RaObservation Step(RaWorld &world, const logic::Literal &action, Rng &rng) {
  const RaConfig &c = world.config;
  auto arg = [&](size_t i) { return logic::ToString(action.args.at(i)); };
  bool ok = false;
  std::string note;
  if (action.negated) Fail(ErrorCode::kInvalidArgument, "negated action");
  if (action.predicate == "move" && action.args.size() == 2) {
    std::string to = arg(1);
    if (!c.HasPlace(to)) Fail(ErrorCode::kNotFound, "unknown place " + to);
    if (!c.Adjacent(world.robot_loc, to)) {
      note = "not next to " + to;
    } else if (rng.Bernoulli(c.p_fail)) {
      note = "move failed";
    } else {
      world.robot_loc = to;
      ok = true;
    }
  } else if (action.predicate == "deliver" && action.args.size() == 3) {
    std::string msg = arg(1), person = arg(2);
    if (!c.HasPerson(person)) Fail(ErrorCode::kNotFound, "unknown person " + person);
    if (std::find(c.messages.begin(), c.messages.end(), msg) == c.messages.end()) {
      Fail(ErrorCode::kNotFound, "unknown message " + msg);
    }
    if (world.person_loc.at(person) != world.robot_loc) {
      note = person + " is not here";
    } else if (rng.Bernoulli(c.p_fail)) {
      note = "delivery failed";
    } else {
      world.delivered.insert({msg, person});
      ok = true;
    }
  } else {
    Fail(ErrorCode::kInvalidArgument, "unknown action " + logic::ToString(action));
  }
  RaObservation o = Observe(world, rng);
  o.success = ok;
  o.note = note;
  return o;
}

Clutter ClutterReport(const RaConfig &config, const std::string &place,
                      const std::vector<std::string> &detected) {
  if (!config.HasPlace(place)) Fail(ErrorCode::kNotFound, "unknown place " + place);
  Clutter out;
  auto it = config.expected.find(place);
  for (const std::string &o : detected) {
    bool usual = it != config.expected.end() &&
                 std::find(it->second.begin(), it->second.end(), o) != it->second.end();
    if (!usual) out.unexpected.push_back(o);
  }
  out.cluttered = !out.unexpected.empty();
  return out;
}

Clutter ClutterReport(const RaWorld &world, const std::string &place) {
  if (!world.config.HasPlace(place)) Fail(ErrorCode::kNotFound, "unknown place " + place);
  return ClutterReport(world.config, place, world.objects.at(place));
}

std::string RaKbText(const RaConfig &c, const std::map<std::string, std::string> &learned) {
  std::ostringstream out;
  out << "#sort place = {" << Join(c.places, ", ") << "}.\n";
  out << "#sort robot = {" << c.robot << "}.\n";
  out << "#sort person = {" << Join(c.people, ", ") << "}.\n";
  out << "#sort message = {" << Join(c.messages, ", ") << "}.\n";
  out << ReadFile(DataPath("ra/dynamics.sd")) << "\n";
  for (const auto &[a, b] : c.edges) {
    out << "next_to(" << a << ", " << b << ").\n";
    out << "next_to(" << b << ", " << a << ").\n";
  }
  if (!learned.empty()) {
    out << "\n" << ReadFile(DataPath("ra/defaults.sd"));
    for (const auto &[person, place] : learned) {
      out << "workplace(" << person << ", " << place << ").\n";
    }
  }
  return out.str();
}

RaConfig RandomRaConfig(uint64_t seed, int min_places, int max_places) {
  if (min_places < 1 || max_places < min_places) {
    Fail(ErrorCode::kInvalidArgument, "bad place range");
  }
  Rng rng(seed);
  RaConfig c;
  int n = rng.Int(min_places, max_places);
  for (int i = 1; i <= n; ++i) c.places.push_back("p" + std::to_string(i));
  // A random spanning tree, then a few shortcuts.
  for (int i = 1; i < n; ++i) c.edges.push_back({c.places[rng.Below(i)], c.places[i]});
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!c.Adjacent(c.places[i], c.places[j]) && rng.Bernoulli(0.2)) {
        c.edges.push_back({c.places[i], c.places[j]});
      }
    }
  }
  static const char *kNames[] = {"alice", "bob", "carol", "dave"};
  int people = rng.Int(1, std::min(4, n));
  std::vector<size_t> offices = rng.Sample(n, people);
  for (int i = 0; i < people; ++i) {
    c.people.push_back(kNames[i]);
    c.workplace[kNames[i]] = c.places[offices[i]];
  }
  c.Check();
  return c;
}

FeatureSchema RaQaSchema() {
  return FeatureSchema({{"room_kind", {"office", "shared"}},
                        {"occupant", {"owner", "visitor"}},
                        {"unexpected", {"0", "1", "2", "3"}},
                        {"delivered", {"true", "false"}}});
}

FeatureProvider RaQaProvider() {
  return FeatureProvider("ra", RaQaSchema(), [](const SceneRecord &s) {
    return FeatureVector{{"room_kind", s.Attr("room_kind")},
                         {"occupant", s.Attr("occupant")},
                         {"unexpected", std::to_string(std::min(3, std::stoi(s.Attr("n_unexpected"))))},
                         {"delivered", s.Attr("delivered")}};
  });
}

std::vector<SceneRecord> GenRaQaScenes(const RaConfig &config, int n, uint64_t seed) {
  if (n < 1) Fail(ErrorCode::kInvalidArgument, "scene count must be positive");
  config.Check();
  Rng rng(seed);
  std::vector<SceneRecord> out;
  for (int i = 0; i < n; ++i) {
    const std::string &person = config.people[rng.Below(config.people.size())];
    const std::string &work = config.workplace.at(person);
    std::string place = work;
    if (!rng.Bernoulli(config.p_home)) {
      std::vector<std::string> others;
      for (const auto &p : config.places) {
        if (p != work) others.push_back(p);
      }
      place = others[rng.Below(others.size())];
    }
    bool office = false;
    for (const auto &[who, w] : config.workplace) office = office || w == place;

    std::vector<std::string> seen;
    auto exp = config.expected.find(place);
    if (exp != config.expected.end()) {
      for (const auto &o : exp->second) {
        if (rng.Bernoulli(0.9)) seen.push_back(Spoken(o));
      }
    }
    int k = rng.Bernoulli(0.5) ? 0 : rng.Int(1, 3);
    std::vector<size_t> picks = rng.Sample(config.clutter.size(), std::min<size_t>(k, config.clutter.size()));
    std::vector<std::string> extra, extra_a;
    for (size_t j : picks) {
      extra.push_back(Spoken(config.clutter[j]));
      extra_a.push_back(WithArticle(config.clutter[j]));
    }

    std::string objects;
    if (!seen.empty()) {
      std::string owner = office ? PlaceText(config, place) : "the ";
      owner = office ? owner.substr(0, owner.find(' ')) + " " : owner;
      objects = owner + ListText(seen);
    }
    if (!extra.empty()) objects += (objects.empty() ? "" : ", and ") + ListText(extra_a);
    if (objects.empty()) objects = "nothing";

    SceneRecord s;
    s.domain = "ra";
    s.id = i + 1;
    s.attributes = {{"person", person},
                    {"name", Capitalized(person)},
                    {"place", place},
                    {"presence", Capitalized(person) + " is in " + PlaceText(config, place) + "."},
                    {"objects", objects},
                    {"unexpected", extra.empty() ? "none" : ListText(extra)},
                    {"room_kind", office ? "office" : "shared"},
                    {"occupant", place == work ? "owner" : "visitor"},
                    {"n_unexpected", std::to_string(extra.size())},
                    {"delivered", rng.Bernoulli(0.5) ? "true" : "false"}};
    s.label = extra.empty() ? "tidy" : "cluttered";
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace aspire::domains
