// Copyright 2026 forensic-dl contributors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef FDL_METRICS_HPP
#define FDL_METRICS_HPP

#include <set>
#include <string>
#include <vector>

#include "fdl/model.hpp"
#include "fdl/reasoner.hpp"
#include "fdl/text.hpp"

namespace fdl {

struct ContingencyTable {
    long tp = 0;
    long fp = 0;
    long fn = 0;
    long tn = 0;

    long population() const { return tp + fp + fn + tn; }
};

struct Prf {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

/// Precision / recall / F1 with total conventions: no predictions and no
/// gold positives count as vacuously perfect; a bare zero denominator
/// yields zero for that measure; F1 is zero when P+R is.
Prf prf(const ContingencyTable& t);

struct ClassReport {
    std::string class_name;
    ContingencyTable table;
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;

    static ClassReport from_table(std::string name, const ContingencyTable& t);
    // For aggregate-only uses where the raw counts are not available.
    static ClassReport from_values(std::string name, double precision, double recall);
};

struct AggregateReport {
    std::vector<ClassReport> classes;
    Prf micro;
    Prf macro;
};

/// Counts how `closure` classifies `population` against gold for class `c`.
/// Predicted membership is instance checking of the atomic class. Throws
/// UnknownClassError when `c` is not a gold key and not declared.
ContingencyTable contingency(const Closure& closure, const GoldLabels& gold,
                             const std::string& class_name,
                             const std::set<std::string>& population);

/// Micro averages recompute P/R from summed counts; macro averages are the
/// arithmetic means of per-class precision and recall, and macro-F1 is the
/// harmonic mean of those two macro values.
AggregateReport aggregate(const std::vector<ClassReport>& reports);

struct ExperimentOptions {
    // Individuals whose asserted type falls under this concept form the
    // evaluation population; empty = everything mentioned in assertions.
    std::string population_root = "Event";
    std::size_t fact_cap = 10'000'000;
};

/// The manual-GCI protocol: strip explicit gold-class assertions, then
/// materialize and score every gold class over the event population.
AggregateReport run_manual_experiment(const KnowledgeBase& kb, const std::vector<Axiom>& assertions,
                                      const GoldLabels& gold,
                                      const ExperimentOptions& options = {});

/// The population run_manual_experiment evaluates over.
std::set<std::string> event_population(const KnowledgeBase& kb,
                                       const std::vector<Axiom>& assertions,
                                       const std::string& population_root);

std::string report_to_tsv(const AggregateReport& report);
std::string report_to_json(const AggregateReport& report);

} // namespace fdl

#endif
