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

#ifndef FDL_LEARNER_HPP
#define FDL_LEARNER_HPP

#include <set>
#include <string>
#include <vector>

#include "fdl/model.hpp"
#include "fdl/reasoner.hpp"

namespace fdl {

// ---------------------------------------------------------------------------
// Class-expression learning: top-down refinement searched best-first and
// scored by predictive accuracy with a length penalty, in the style of
// CELOE's default configuration.
// ---------------------------------------------------------------------------

struct LearningProblem {
    std::string target;                // class being (re)described
    std::set<std::string> positives;   // known instances of the target
    const KnowledgeBase* background = nullptr; // target's explicit assertions removed
    std::set<std::string> population;  // evaluation universe; positives are a subset
};

struct Hypothesis {
    ConceptRef expr;
    double score = 0.0;
    int length = 0;
};

struct LearnerConfig {
    int max_hypotheses = 10;
    int max_length = 5;
    int max_expansions = 2000; // node budget for the best-first search
    double length_penalty = 0.02;
};

/// Downward refinements of `expr` over the vocabulary and class hierarchy of
/// `kb`, truncated to config.max_length.
std::vector<ConceptRef> refine(const ConceptRef& expr, const KnowledgeBase& kb,
                               const LearnerConfig& config);

/// Predictive accuracy minus the per-node length penalty. Predictions are
/// instance checks of `expr` against the materialized background closure.
double score(const ConceptRef& expr, const LearningProblem& problem, const Closure& background,
             const LearnerConfig& config);

/// Best-first search over refine/score. Returns at most max_hypotheses
/// hypotheses scoring above Top, best first, ties resolved by generation
/// order. Throws NoHypothesisError when nothing beats Top.
std::vector<Hypothesis> learn_gci(const LearningProblem& problem, const LearnerConfig& config = {});

struct FoldResult {
    int fold = 0;
    std::set<std::string> trainset;
    std::set<std::string> resultset;
    long tp = 0;
    long fp = 0;
    long fn = 0;
    double precision = 0.0;
    double recall = 0.0;
};

struct CrossValidation {
    std::vector<FoldResult> folds;
    double avg_precision = 0.0;
    double avg_recall = 0.0;
};

/// Leave-one-out cross validation: one fold per positive; each fold learns
/// on the remaining positives and scores the held-out instance per the
/// result-set protocol (result set excludes trainset positives).
CrossValidation loo_cv(const LearningProblem& problem, const LearnerConfig& config = {});

} // namespace fdl

#endif
