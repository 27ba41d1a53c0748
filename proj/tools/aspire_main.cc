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

// Command-line front end. Talks to the library only through aspire.h.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "aspire/aspire.h"

namespace {

// Owns a string handed out by the library.
class Str {
 public:
  Str() = default;
  Str(const Str &) = delete;
  Str &operator=(const Str &) = delete;
  ~Str() { aspire_free_string(p_); }
  char **out() { return &p_; }
  std::string get() const { return p_ == nullptr ? "" : p_; }

 private:
  char *p_ = nullptr;
};

bool Check(aspire_status s, const std::string &what) {
  if (s == ASPIRE_OK) return true;
  std::cerr << "aspire: " << what << ": " << aspire_status_name(s) << ": " << aspire_last_error()
            << "\n";
  return false;
}

bool Slurp(const std::string &path, std::string *out) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "aspire: cannot read " << path << "\n";
    return false;
  }
  std::ostringstream s;
  s << in.rdbuf();
  *out = s.str();
  return true;
}

std::vector<std::string> Lines(const std::string &text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos || line[b] == '#') continue;
    out.push_back(line);
  }
  return out;
}

// Questions recorded in the last field of a scene line, "q=>type;q=>type".
std::vector<std::pair<std::string, std::string>> SceneQuestions(const std::string &line) {
  std::vector<std::pair<std::string, std::string>> out;
  size_t bar = line.rfind('|');
  if (bar == std::string::npos) return out;
  std::string field = line.substr(bar + 1);
  std::istringstream in(field);
  for (std::string item; std::getline(in, item, ';');) {
    size_t arrow = item.find("=>");
    if (arrow == std::string::npos) continue;
    size_t b = item.find_first_not_of(' ');
    out.emplace_back(item.substr(b, arrow - b), item.substr(arrow + 2));
  }
  return out;
}

struct QaOptions {
  std::string domain = "ss";
  std::string kb;
  std::string scenes;
  int train = 2000;
  uint64_t seed = 1;
};

aspire_qa *OpenQa(const QaOptions &o) {
  aspire_qa *qa = nullptr;
  if (!Check(aspire_qa_open(o.domain.c_str(), o.kb.empty() ? nullptr : o.kb.c_str(), &qa),
             "open " + o.domain)) {
    return nullptr;
  }
  if (o.train > 0 && !Check(aspire_qa_train(qa, o.train, o.seed), "train")) {
    aspire_qa_free(qa);
    return nullptr;
  }
  return qa;
}

int RunSolve(const std::string &file, size_t models, bool cr) {
  std::string text;
  if (!Slurp(file, &text)) return 1;
  Str out;
  if (!Check(aspire_solve(text.c_str(), models, cr ? 1 : 0, out.out()), file)) return 1;
  std::string s = out.get();
  if (s.empty()) {
    std::cout << "UNSATISFIABLE\n";
    return 0;
  }
  std::cout << s;
  return 0;
}

int RunClassify(const std::string &kb_path, const std::vector<std::string> &features,
                bool explain) {
  aspire_kb *kb = nullptr;
  if (!Check(aspire_kb_load(kb_path.c_str(), &kb), kb_path)) return 1;
  std::string joined;
  for (const std::string &f : features) joined += f + " ";
  Str label, support;
  bool ok = Check(aspire_kb_classify(kb, joined.c_str(), label.out(), support.out()), "classify");
  aspire_kb_free(kb);
  if (!ok) return 1;
  std::cout << (label.get().empty() ? "unknown" : label.get()) << "\n";
  if (explain) std::cout << support.get();
  return 0;
}

int RunLearn(const std::string &domain, const std::string &kb_path, const std::string &data,
             int generate, double leaf, uint64_t seed, const std::string &out_path) {
  std::string csv;
  if (generate > 0) {
    Str gen;
    if (!Check(aspire_dataset(domain.c_str(), generate, seed, gen.out()), "generate")) return 1;
    csv = gen.get();
  } else if (data.empty()) {
    std::cerr << "aspire: learn needs --data or --generate\n";
    return 1;
  } else if (!Slurp(data, &csv)) {
    return 1;
  }
  aspire_kb *kb = nullptr;
  if (!Check(aspire_kb_load(kb_path.c_str(), &kb), kb_path)) return 1;
  Str report, text;
  bool ok = Check(aspire_kb_learn(kb, domain.c_str(), csv.c_str(), leaf, seed, report.out()),
                  "learn") &&
            Check(aspire_kb_text(kb, text.out()), "kb text");
  aspire_kb_free(kb);
  if (!ok) return 1;
  std::cout << report.get();
  if (!out_path.empty()) {
    std::ofstream f(out_path, std::ios::binary);
    f << text.get();
    if (!f) {
      std::cerr << "aspire: cannot write " << out_path << "\n";
      return 1;
    }
  }
  return 0;
}

int RunQa(const QaOptions &o, const std::vector<std::string> &questions, bool explain) {
  std::string text;
  if (!Slurp(o.scenes, &text)) return 1;
  aspire_qa *qa = OpenQa(o);
  if (qa == nullptr) return 1;
  int rc = 0;
  for (const std::string &line : Lines(text)) {
    if (!Check(aspire_qa_set_scene(qa, line.c_str()), "scene")) {
      rc = 1;
      continue;
    }
    std::vector<std::pair<std::string, std::string>> asks;
    for (const std::string &q : questions) asks.emplace_back(q, "");
    if (asks.empty()) asks = SceneQuestions(line);
    for (const auto &[q, expected] : asks) {
      Str answer, route;
      std::cout << "Q: " << q << "\n";
      if (!Check(aspire_qa_ask(qa, q.c_str(), answer.out(), route.out()), "ask")) {
        rc = 1;
        continue;
      }
      std::cout << "A: " << answer.get() << "  [" << route.get() << "]";
      if (!expected.empty()) std::cout << "  expected type " << expected;
      std::cout << "\n";
      if (explain) {
        Str why;
        if (Check(aspire_qa_explain(qa, why.out()), "explain")) std::cout << why.get();
      }
    }
  }
  aspire_qa_free(qa);
  return rc;
}

int RunRepl(const QaOptions &o) {
  std::vector<std::string> scenes;
  if (!o.scenes.empty()) {
    std::string text;
    if (!Slurp(o.scenes, &text)) return 1;
    scenes = Lines(text);
  }
  aspire_qa *qa = OpenQa(o);
  if (qa == nullptr) return 1;
  if (!scenes.empty() && Check(aspire_qa_set_scene(qa, scenes[0].c_str()), "scene")) {
    std::cout << "scene 1 of " << scenes.size() << "\n";
  }
  std::cout << "commands: scene <n> | scene <record> | explain | quit\n";
  for (;;) {
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line)) break;
    size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string::npos) continue;
    line = line.substr(b, line.find_last_not_of(" \t\r") + 1 - b);
    if (line == "quit" || line == "exit") break;
    if (line == "explain") {
      Str why;
      if (Check(aspire_qa_explain(qa, why.out()), "explain")) std::cout << why.get();
      continue;
    }
    if (line.rfind("scene ", 0) == 0) {
      std::string arg = line.substr(6);
      std::string record = arg;
      if (arg.find('|') == std::string::npos) {
        size_t n = 0;
        try {
          n = std::stoul(arg);
        } catch (const std::exception &) {
        }
        if (n < 1 || n > scenes.size()) {
          std::cout << "no scene " << arg << "\n";
          continue;
        }
        record = scenes[n - 1];
      }
      Check(aspire_qa_set_scene(qa, record.c_str()), "scene");
      continue;
    }
    Str answer, route;
    if (Check(aspire_qa_ask(qa, line.c_str(), answer.out(), route.out()), "ask")) {
      std::cout << answer.get() << "  [" << route.get() << "]\n";
    }
  }
  aspire_qa_free(qa);
  return 0;
}

int RunPlan(const std::string &map, const std::string &start, const std::string &to,
            bool no_defaults, int horizon, bool execute, uint64_t seed, bool show_log) {
  const char *m = map.empty() ? nullptr : map.c_str();
  if (execute) {
    Str log, summary;
    if (!Check(aspire_deliver(m, start.c_str(), to.c_str(), no_defaults ? 0 : 1, seed, log.out(),
                              summary.out()),
               "deliver")) {
      return 1;
    }
    if (show_log) std::cout << log.get();
    std::cout << summary.get();
    return summary.get().find("success=1") == std::string::npos ? 1 : 0;
  }
  Str plan;
  if (!Check(aspire_plan(m, start.c_str(), to.c_str(), no_defaults ? 0 : 1, horizon, plan.out()),
             "plan")) {
    return 1;
  }
  std::cout << plan.get();
  return 0;
}

int RunExperiment(const std::string &id, const std::string &config_path,
                  const std::vector<std::string> &sets, const std::string &out_dir) {
  std::string config;
  if (!config_path.empty() && !Slurp(config_path, &config)) return 1;
  for (const std::string &s : sets) {
    if (s.find('=') == std::string::npos) {
      std::cerr << "aspire: --set expects key=value, got '" << s << "'\n";
      return 1;
    }
    config += "\n" + s;
  }
  Str summary;
  int complete = 0;
  if (!Check(aspire_experiment(id.c_str(), config.empty() ? nullptr : config.c_str(),
                               out_dir.empty() ? nullptr : out_dir.c_str(), summary.out(),
                               &complete),
             id)) {
    return 1;
  }
  std::cout << summary.get();
  if (!complete) {
    std::cerr << "aspire: " << id << ": some trials failed; results flagged incomplete\n";
    return 1;
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Answer-set reasoning with learned axioms"};
  app.set_version_flag("--version", std::string(aspire_version()));
  app.require_subcommand(1);
  int rc = 0;

  std::string solve_file;
  size_t models = 0;
  bool cr = false;
  CLI::App *solve = app.add_subcommand("solve", "Print the answer sets of a program");
  solve->add_option("file", solve_file, "Program file")->required();
  solve->add_option("-n,--models", models, "Stop after this many answer sets (0 for all)");
  solve->add_flag("--cr", cr, "Apply consistency-restoring rules when inconsistent");
  solve->callback([&] { rc = RunSolve(solve_file, models, cr); });

  std::string kb_path;
  std::vector<std::string> features;
  bool explain = false;
  CLI::App *classify = app.add_subcommand("classify", "Classify a feature vector with a KB");
  classify->add_option("--kb", kb_path, "System description")->required();
  classify->add_option("features", features, "name=value pairs")->required();
  classify->add_flag("--explain", explain, "Print the supporting literals");
  classify->callback([&] { rc = RunClassify(kb_path, features, explain); });

  std::string domain = "ss", data, out_path;
  double leaf = 0.02;
  int generate = 0;
  uint64_t seed = 1;
  CLI::App *learn = app.add_subcommand("learn", "Learn state constraints from labelled data");
  learn->add_option("--domain", domain, "ss, ts or ra")->check(CLI::IsMember({"ss", "ts", "ra"}));
  learn->add_option("--kb", kb_path, "Starting system description")->required();
  learn->add_option("--data", data, "Labelled CSV");
  learn->add_option("--generate", generate, "Learn from this many generated examples instead");
  learn->add_option("--leaf-support", leaf, "Minimum leaf support as a fraction of examples");
  learn->add_option("--seed", seed, "Seed for the validation sample");
  learn->add_option("-o,--out", out_path, "Write the revised system description here");
  learn->callback([&] { rc = RunLearn(domain, kb_path, data, generate, leaf, seed, out_path); });

  QaOptions qo;
  std::vector<std::string> questions;
  auto qa_flags = [&](CLI::App *c) {
    c->add_option("--domain", qo.domain, "ss, ts or ra")->check(CLI::IsMember({"ss", "ts", "ra"}));
    c->add_option("--kb", qo.kb, "System description (default: the domain's)");
    c->add_option("--train", qo.train, "Generated scenes for the fallback tree (0 for none)");
    c->add_option("--seed", qo.seed, "Seed for the generated training scenes");
  };
  CLI::App *qa = app.add_subcommand("qa", "Answer questions about the scenes in a file");
  qa_flags(qa);
  qa->add_option("scenes", qo.scenes, "Scene file")->required();
  qa->add_option("-q,--question", questions, "Ask this instead of the recorded questions");
  qa->add_flag("--explain", explain, "Print the explanation after each answer");
  qa->callback([&] { rc = RunQa(qo, questions, explain); });

  CLI::App *repl = app.add_subcommand("repl", "Interactive question answering");
  qa_flags(repl);
  repl->add_option("--scenes", qo.scenes, "Scene file to choose scenes from");
  repl->callback([&] { rc = RunRepl(qo); });

  std::string map, start = "office_john", to;
  bool no_defaults = false, execute = false, show_log = false;
  int horizon = 12;
  CLI::App *plan = app.add_subcommand("plan", "Plan or simulate a message delivery");
  plan->add_option("--map", map, "Map directory (default: the shipped one)");
  plan->add_option("--from", start, "Start and return place");
  plan->add_option("--to", to, "Recipient")->required();
  plan->add_flag("--no-defaults", no_defaults, "Plan without the learned workplace defaults");
  plan->add_option("--horizon", horizon, "Maximum plan length");
  plan->add_flag("--execute", execute, "Run the delivery in the simulator with replanning");
  plan->add_option("--seed", seed, "World seed for --execute");
  plan->add_flag("--log", show_log, "Print the step log of --execute");
  plan->callback([&] { rc = RunPlan(map, start, to, no_defaults, horizon, execute, seed, show_log); });

  std::string experiment, config, out_dir;
  std::vector<std::string> sets;
  CLI::App *exp = app.add_subcommand("experiment", "Run an experiment and write its results");
  exp->add_option("id", experiment, "ss-classify, ss-vqa, ts-classify, ts-vqa, axiom-ablation, "
                                    "ra-paired or ra-qa")
      ->required();
  exp->add_option("--config", config, "key = value file");
  exp->add_option("--set", sets, "Override one setting, key=value");
  exp->add_option("-o,--out", out_dir, "Output directory (default: the config's)");
  exp->callback([&] { rc = RunExperiment(experiment, config, sets, out_dir); });

  CLI11_PARSE(app, argc, argv);
  return rc;
}
