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

#include "induction/tree.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>
#include <sstream>

#include "common/error.h"
#include "common/text.h"

namespace aspire::induction {

double Gini(const std::vector<double> &p) {
  if (p.empty()) Fail(ErrorCode::kInvalidArgument, "empty distribution");
  double sum = 0, sq = 0;
  for (double x : p) {
    if (x < 0) Fail(ErrorCode::kInvalidArgument, "negative proportion");
    sum += x;
    sq += x * x;
  }
  if (std::fabs(sum - 1.0) > 1e-9) {
    Fail(ErrorCode::kInvalidArgument, "proportions do not sum to 1");
  }
  return 1.0 - sq;
}

namespace {

double GiniOfCounts(const std::vector<int> &counts, int total) {
  if (total == 0) return 0.0;
  double sq = 0;
  for (int c : counts) {
    double p = static_cast<double>(c) / total;
    sq += p * p;
  }
  return 1.0 - sq;
}

int Majority(const std::vector<int> &counts) {
  // Ties go to the first label in sorted order.
  int best = 0;
  for (size_t i = 1; i < counts.size(); ++i) {
    if (counts[i] > counts[best]) best = static_cast<int>(i);
  }
  return best;
}

struct Encoded {
  std::vector<std::vector<int>> values;
  std::vector<int> labels;
};

Encoded Encode(const FeatureSchema &schema, const std::vector<std::string> &labels,
               const std::vector<LabeledExample> &examples) {
  Encoded e;
  for (const LabeledExample &ex : examples) {
    schema.Check(ex.features);
    std::vector<int> row(schema.size());
    for (size_t f = 0; f < schema.size(); ++f) {
      row[f] = schema.ValueIndex(f, ex.features.at(schema.at(f).name));
    }
    e.values.push_back(std::move(row));
    auto it = std::lower_bound(labels.begin(), labels.end(), ex.label);
    e.labels.push_back(it != labels.end() && *it == ex.label
                           ? static_cast<int>(it - labels.begin())
                           : -1);
  }
  return e;
}

}  // namespace

DecisionTree::DecisionTree(FeatureSchema schema, std::vector<std::string> labels,
                           std::vector<Node> nodes)
    : schema_(std::move(schema)), labels_(std::move(labels)), nodes_(std::move(nodes)) {}

size_t DecisionTree::num_leaves() const {
  std::function<size_t(int)> count = [&](int n) -> size_t {
    if (nodes_[n].feature < 0) return 1;
    size_t s = 0;
    for (int c : nodes_[n].children) s += count(c);
    return s;
  };
  return nodes_.empty() ? 0 : count(0);
}

int DecisionTree::depth() const {
  std::function<int(int)> d = [&](int n) -> int {
    if (nodes_[n].feature < 0) return 0;
    int m = 0;
    for (int c : nodes_[n].children) m = std::max(m, d(c));
    return m + 1;
  };
  return nodes_.empty() ? 0 : d(0);
}

PathExplanation DecisionTree::Predict(const FeatureVector &f) const {
  schema_.Check(f);
  PathExplanation out;
  int n = 0;
  while (nodes_[n].feature >= 0) {
    const FeatureDef &def = schema_.at(nodes_[n].feature);
    const std::string &v = f.at(def.name);
    out.tests.push_back({def.name, v});
    n = nodes_[n].children[schema_.ValueIndex(nodes_[n].feature, v)];
  }
  const Node &leaf = nodes_[n];
  out.label = labels_[leaf.label];
  out.support = leaf.support;
  out.purity = leaf.support > 0 ? static_cast<double>(leaf.counts[leaf.label]) / leaf.support : 0;
  return out;
}

std::vector<LeafInfo> DecisionTree::Leaves() const {
  std::vector<LeafInfo> out;
  std::vector<std::pair<std::string, std::string>> path;
  std::function<void(int)> walk = [&](int n) {
    const Node &node = nodes_[n];
    if (node.feature < 0) {
      LeafInfo info;
      info.tests = path;
      info.label = labels_[node.label];
      info.support = node.support;
      info.purity =
          node.support > 0 ? static_cast<double>(node.counts[node.label]) / node.support : 0;
      out.push_back(std::move(info));
      return;
    }
    const FeatureDef &def = schema_.at(node.feature);
    for (size_t v = 0; v < node.children.size(); ++v) {
      path.push_back({def.name, def.values[v]});
      walk(node.children[v]);
      path.pop_back();
    }
  };
  if (!nodes_.empty()) walk(0);
  return out;
}

std::string DecisionTree::ToText() const {
  std::ostringstream out;
  out << "aspire-tree 1\n";
  for (const FeatureDef &f : schema_.features()) {
    out << "feature " << f.name;
    for (const std::string &v : f.values) out << " " << v;
    out << "\n";
  }
  for (const std::string &l : labels_) out << "label " << l << "\n";
  std::function<void(int, int)> emit = [&](int n, int indent) {
    const Node &node = nodes_[n];
    std::string pad(indent * 2, ' ');
    if (node.feature < 0) {
      out << pad << "leaf " << labels_[node.label];
      for (int c : node.counts) out << " " << c;
      out << "\n";
      return;
    }
    const FeatureDef &def = schema_.at(node.feature);
    out << pad << "split " << def.name;
    for (int c : node.counts) out << " " << c;
    out << "\n";
    for (size_t v = 0; v < node.children.size(); ++v) {
      out << pad << "  = " << def.values[v] << "\n";
      emit(node.children[v], indent + 2);
    }
  };
  if (!nodes_.empty()) emit(0, 0);
  return out.str();
}

DecisionTree DecisionTree::FromText(std::string_view text) {
  std::vector<std::string> lines;
  for (const std::string &l : Split(text, '\n')) {
    if (!Trim(l).empty()) lines.push_back(l);
  }
  size_t i = 0;
  auto bad = [&](const std::string &why) {
    Fail(ErrorCode::kParse, "tree line " + std::to_string(i + 1) + ": " + why);
  };
  if (lines.empty() || Trim(lines[0]) != "aspire-tree 1") bad("missing header");
  ++i;
  std::vector<FeatureDef> feats;
  std::vector<std::string> labels;
  while (i < lines.size()) {
    auto w = SplitWhitespace(lines[i]);
    if (w[0] == "feature" && w.size() >= 3) {
      feats.push_back({w[1], std::vector<std::string>(w.begin() + 2, w.end())});
    } else if (w[0] == "label" && w.size() == 2) {
      labels.push_back(w[1]);
    } else {
      break;
    }
    ++i;
  }
  FeatureSchema schema(feats);
  std::vector<Node> nodes;
  std::function<int()> parse = [&]() -> int {
    if (i >= lines.size()) bad("unexpected end");
    auto w = SplitWhitespace(lines[i]);
    if (w.size() < 2 + labels.size()) bad("short node line");
    Node node;
    for (size_t k = 0; k < labels.size(); ++k) {
      node.counts.push_back(std::stoi(w[2 + k]));
      node.support += node.counts.back();
    }
    int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    ++i;
    if (w[0] == "leaf") {
      auto it = std::find(labels.begin(), labels.end(), w[1]);
      if (it == labels.end()) bad("unknown label " + w[1]);
      nodes[id].label = static_cast<int>(it - labels.begin());
      return id;
    }
    if (w[0] != "split") bad("expected leaf or split");
    int f = schema.IndexOf(w[1]);
    if (f < 0) bad("unknown feature " + w[1]);
    nodes[id].feature = f;
    nodes[id].label = Majority(nodes[id].counts);
    for (size_t v = 0; v < schema.at(f).values.size(); ++v) {
      auto eq = SplitWhitespace(lines[i]);
      if (eq.size() != 2 || eq[0] != "=" || eq[1] != schema.at(f).values[v]) {
        bad("expected branch = " + schema.at(f).values[v]);
      }
      ++i;
      int child = parse();
      nodes[id].children.push_back(child);
    }
    return id;
  };
  parse();
  return DecisionTree(std::move(schema), std::move(labels), std::move(nodes));
}

DecisionTree TrainTree(const std::vector<LabeledExample> &examples, const FeatureSchema &schema,
                       const TreeParams &params) {
  if (examples.empty()) Fail(ErrorCode::kInvalidArgument, "no training examples");
  std::set<std::string> label_set;
  for (const LabeledExample &e : examples) label_set.insert(e.label);
  std::vector<std::string> labels(label_set.begin(), label_set.end());
  Encoded enc = Encode(schema, labels, examples);
  size_t nl = labels.size();

  std::vector<DecisionTree::Node> nodes;
  // An empty child keeps its parent's majority.
  std::function<int(const std::vector<int> &, std::vector<bool> &, int)> build =
      [&](const std::vector<int> &idx, std::vector<bool> &used, int inherited) -> int {
    DecisionTree::Node node;
    node.counts.assign(nl, 0);
    for (int e : idx) ++node.counts[enc.labels[e]];
    node.support = static_cast<int>(idx.size());
    node.label = idx.empty() ? inherited : Majority(node.counts);
    int id = static_cast<int>(nodes.size());
    nodes.push_back(node);
    if (node.counts[node.label] == node.support) return id;

    double parent = GiniOfCounts(node.counts, node.support);
    int best = -1;
    double best_gain = 0;
    for (size_t f = 0; f < schema.size(); ++f) {
      if (used[f]) continue;
      size_t nv = schema.at(f).values.size();
      std::vector<std::vector<int>> counts(nv, std::vector<int>(nl, 0));
      std::vector<int> sizes(nv, 0);
      for (int e : idx) {
        int v = enc.values[e][f];
        ++counts[v][enc.labels[e]];
        ++sizes[v];
      }
      // Every populated child needs min_leaf_support examples; empty
      // children become leaves with the parent's label.
      bool admissible = true;
      double weighted = 0;
      for (size_t v = 0; v < nv; ++v) {
        if (sizes[v] > 0 && sizes[v] < params.min_leaf_support) admissible = false;
        weighted += static_cast<double>(sizes[v]) / node.support * GiniOfCounts(counts[v], sizes[v]);
      }
      if (!admissible) continue;
      double gain = parent - weighted;
      if (best < 0 || gain > best_gain + 1e-12) {
        best = static_cast<int>(f);
        best_gain = gain;
      }
    }
    if (best < 0 || best_gain < params.min_gain - 1e-12) return id;

    size_t nv = schema.at(best).values.size();
    std::vector<std::vector<int>> parts(nv);
    for (int e : idx) parts[enc.values[e][best]].push_back(e);
    used[best] = true;
    std::vector<int> children;
    for (size_t v = 0; v < nv; ++v) children.push_back(build(parts[v], used, nodes[id].label));
    used[best] = false;
    nodes[id].feature = best;
    nodes[id].children = std::move(children);
    return id;
  };
  std::vector<int> all(examples.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  std::vector<bool> used(schema.size(), false);
  build(all, used, 0);
  return DecisionTree(schema, std::move(labels), std::move(nodes));
}

DecisionTree Prune(const DecisionTree &tree, const std::vector<LabeledExample> &holdout) {
  if (holdout.empty() || tree.nodes().empty()) return tree;
  const FeatureSchema &schema = tree.schema();
  const std::vector<std::string> &labels = tree.labels();
  Encoded enc = Encode(schema, labels, holdout);
  std::vector<DecisionTree::Node> nodes = tree.nodes();

  // Holdout examples reaching each node.
  std::vector<std::vector<int>> reach(nodes.size());
  std::function<void(int, const std::vector<int> &)> route = [&](int n, const std::vector<int> &idx) {
    reach[n] = idx;
    if (nodes[n].feature < 0) return;
    std::vector<std::vector<int>> parts(nodes[n].children.size());
    for (int e : idx) parts[enc.values[e][nodes[n].feature]].push_back(e);
    for (size_t v = 0; v < parts.size(); ++v) route(nodes[n].children[v], parts[v]);
  };
  std::vector<int> all(holdout.size());
  for (size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
  route(0, all);

  auto leaf_errors = [&](int n) {
    int err = 0;
    for (int e : reach[n]) err += enc.labels[e] != nodes[n].label;
    return err;
  };
  std::function<int(int)> subtree_errors = [&](int n) -> int {
    if (nodes[n].feature < 0) return leaf_errors(n);
    int err = 0;
    for (int c : nodes[n].children) err += subtree_errors(c);
    return err;
  };
  bool changed = true;
  while (changed) {
    changed = false;
    std::function<void(int)> visit = [&](int n) {
      if (nodes[n].feature < 0) return;
      for (int c : nodes[n].children) visit(c);
      if (leaf_errors(n) <= subtree_errors(n)) {
        nodes[n].feature = -1;
        nodes[n].children.clear();
        changed = true;
      }
    };
    visit(0);
  }
  // Compact away unreachable nodes.
  std::vector<DecisionTree::Node> compact;
  std::function<int(int)> copy = [&](int n) -> int {
    int id = static_cast<int>(compact.size());
    compact.push_back(nodes[n]);
    std::vector<int> kids;
    for (int c : nodes[n].children) kids.push_back(copy(c));
    compact[id].children = std::move(kids);
    return id;
  };
  copy(0);
  return DecisionTree(schema, labels, std::move(compact));
}

double Accuracy(const DecisionTree &tree, const std::vector<LabeledExample> &examples) {
  if (examples.empty()) return 0.0;
  int ok = 0;
  for (const LabeledExample &e : examples) ok += tree.Predict(e.features).label == e.label;
  return static_cast<double>(ok) / examples.size();
}

std::string ExamplesToCsv(const FeatureSchema &schema, const std::vector<LabeledExample> &examples) {
  std::ostringstream out;
  CsvRow header = schema.Names();
  header.push_back("label");
  out << FormatCsvRow(header) << "\n";
  for (const LabeledExample &e : examples) {
    CsvRow row;
    for (const FeatureDef &f : schema.features()) row.push_back(e.features.at(f.name));
    row.push_back(e.label);
    out << FormatCsvRow(row) << "\n";
  }
  return out.str();
}

std::vector<LabeledExample> ExamplesFromCsv(const FeatureSchema &schema, std::string_view text) {
  std::vector<CsvRow> rows = ParseCsv(text);
  if (rows.empty()) Fail(ErrorCode::kParse, "empty dataset");
  CsvRow expected = schema.Names();
  expected.push_back("label");
  if (rows[0] != expected) Fail(ErrorCode::kParse, "dataset header does not match schema");
  std::vector<LabeledExample> out;
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != expected.size()) {
      Fail(ErrorCode::kParse, "dataset row " + std::to_string(r + 1) + " has wrong width");
    }
    LabeledExample e;
    for (size_t f = 0; f < schema.size(); ++f) e.features[schema.at(f).name] = rows[r][f];
    e.label = rows[r].back();
    schema.Check(e.features);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace aspire::induction
