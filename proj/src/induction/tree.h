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

#ifndef ASPIRE_INDUCTION_TREE_H_
#define ASPIRE_INDUCTION_TREE_H_

#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "features/schema.h"

namespace aspire::induction {

struct LabeledExample {
  FeatureVector features;
  std::string label;
};

struct TreeParams {
  double min_gain = 0.01;
  int min_leaf_support = 2;
};

// Ordered root-to-leaf tests for one prediction.
struct PathExplanation {
  std::vector<std::pair<std::string, std::string>> tests;
  std::string label;
  double purity = 0.0;
  int support = 0;
};

struct LeafInfo {
  std::vector<std::pair<std::string, std::string>> tests;
  std::string label;
  int support = 0;
  double purity = 0.0;
};

// 1 - sum p_i^2. Throws kInvalidArgument on an empty or invalid vector.
double Gini(const std::vector<double> &proportions);

class DecisionTree {
 public:
  struct Node {
    int feature = -1;              // -1 for a leaf
    std::vector<int> children;     // one per value of the split feature
    int label = 0;                 // majority label index
    std::vector<int> counts;       // per label
    int support = 0;
  };

  DecisionTree() = default;
  DecisionTree(FeatureSchema schema, std::vector<std::string> labels,
               std::vector<Node> nodes);

  const FeatureSchema &schema() const { return schema_; }
  const std::vector<std::string> &labels() const { return labels_; }
  const std::vector<Node> &nodes() const { return nodes_; }
  size_t num_leaves() const;
  int depth() const;

  PathExplanation Predict(const FeatureVector &f) const;
  std::vector<LeafInfo> Leaves() const;

  std::string ToText() const;
  static DecisionTree FromText(std::string_view text);

  bool operator==(const DecisionTree &other) const {
    return ToText() == other.ToText();
  }

 private:
  FeatureSchema schema_;
  std::vector<std::string> labels_;
  std::vector<Node> nodes_;
};

DecisionTree TrainTree(const std::vector<LabeledExample> &examples,
                       const FeatureSchema &schema, const TreeParams &params = {});

// Reduced-error pruning to a fixpoint: a subtree is replaced by its
// majority leaf whenever that does not increase holdout errors.
DecisionTree Prune(const DecisionTree &tree, const std::vector<LabeledExample> &holdout);

double Accuracy(const DecisionTree &tree, const std::vector<LabeledExample> &examples);

// Dataset rows: header is the schema names followed by "label".
std::string ExamplesToCsv(const FeatureSchema &schema,
                          const std::vector<LabeledExample> &examples);
std::vector<LabeledExample> ExamplesFromCsv(const FeatureSchema &schema, std::string_view text);

}  // namespace aspire::induction

#endif  // ASPIRE_INDUCTION_TREE_H_
