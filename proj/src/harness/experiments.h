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

#ifndef ASPIRE_HARNESS_EXPERIMENTS_H_
#define ASPIRE_HARNESS_EXPERIMENTS_H_

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "features/scene.h"
#include "harness/config.h"
#include "harness/manifest.h"
#include "kr/description.h"
#include "qa/catalog.h"

namespace aspire::domains {
struct TsOntology;
}

namespace aspire::harness {

// What the classification and QA experiments need from a domain.
struct DomainAssets {
  std::string domain;
  kr::SystemDescription kb;      // the configured KB
  kr::SystemDescription full;    // the domain's complete KB
  FeatureProvider provider;
  qa::Catalog catalog;
  std::vector<std::string> labels;  // for {label} slots; empty for ss
  std::vector<std::string> classes;
  // Feature cells the complete KB is meant to cover.
  std::vector<FeatureVector> cells;
  std::function<std::vector<SceneRecord>(int n, uint64_t seed)> generate;
};

DomainAssets LoadDomain(const ExperimentConfig &config);

// The catalog with the ontology's message and response tables.
qa::Catalog TsCatalog(const domains::TsOntology &ontology);

// Indices of the rules that map feature tests to a class.
std::vector<size_t> ClassificationAxioms(const kr::SystemDescription &d);
kr::SystemDescription WithoutRules(const kr::SystemDescription &d, std::vector<size_t> indices);

// Same label (or both none) on every cell.
bool SameLabels(const kr::SystemDescription &a, const kr::SystemDescription &b,
                const std::vector<FeatureVector> &cells);

struct ExperimentResult {
  RunManifest manifest;
  std::map<std::string, std::string> tables;  // file -> CSV text
  std::string summary;                        // markdown
  // Headline numbers by name, for reports and acceptance checks.
  std::map<std::string, double> metrics;
};

// Validates the config, runs every trial and records the inputs read.
// Failed trials mark the manifest incomplete instead of throwing.
ExperimentResult RunExperiment(const ExperimentConfig &config);

// Writes the tables, summary.md and manifest.txt under dir.
void WriteResult(const ExperimentResult &result, const std::string &dir);

}  // namespace aspire::harness

#endif  // ASPIRE_HARNESS_EXPERIMENTS_H_
