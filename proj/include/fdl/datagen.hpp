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

#ifndef FDL_DATAGEN_HPP
#define FDL_DATAGEN_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "fdl/model.hpp"
#include "fdl/ontology.hpp"
#include "fdl/text.hpp"

namespace fdl {

// ---------------------------------------------------------------------------
// Seedable generator. xorshift64* keeps output byte-stable across platforms;
// the exact recurrence is documented in the README.
// ---------------------------------------------------------------------------

class Xorshift64Star {
public:
    explicit Xorshift64Star(uint64_t seed);
    uint64_t next();
    /// Uniform draw in [0, n) via the 128-bit multiply-shift reduction.
    uint64_t below(uint64_t n);
    /// Uniform double in [0, 1).
    double unit();

private:
    uint64_t state_;
};

// ---------------------------------------------------------------------------
// Scenario generation: annotation corpora shaped like riot-surveillance
// footage metadata, with planted recall per class and zero accidental
// matches.
// ---------------------------------------------------------------------------

struct ClassPlan {
    std::string name;
    int gold_count = 0;  // |true(C)|
    int match_count = 0; // gold instances that carry a full GCI body pattern
};

struct ScenarioConfig {
    uint64_t seed = 1;
    std::vector<ClassPlan> classes;
    int camera_count = 35;
    int distractor_count = 20;
    // One shared sub-event serves at most this many parent plants.
    int share_limit = 4;
    std::vector<std::string> streets; // defaults to the 12-street pool

    /// Published instance counts with every instance matched (recall 1).
    static ScenarioConfig table2_profile(uint64_t seed);
    /// Published instance counts with match counts set to the reported
    /// per-class true-positive counts.
    static ScenarioConfig table4_profile(uint64_t seed);
};

struct Scenario {
    std::vector<AnnotationRecord> annotations;
    GoldLabels gold;
    CameraCatalog catalog;
};

/// Deterministic for a given config. Every matched gold instance satisfies
/// one body of its class (cycling across bodies); unmatched instances carry
/// an incomplete pattern; distractors match nothing. Throws
/// NoGciForClassError when a class with match_count > 0 has no bodies.
Scenario generate(const ScenarioConfig& config);

// ---------------------------------------------------------------------------
// Learning-problem planting.
// ---------------------------------------------------------------------------

struct LearningScenarioConfig {
    uint64_t seed = 1;
    std::string target = "DamageVehicle";
    ConceptRef body; // defaults to exists immediateRelation.Vehicle
    int positives = 16;
    int distractors = 50;
    double noise = 0.0; // fraction of positives whose pattern is omitted
};

struct LearningScenario {
    std::vector<AnnotationRecord> annotations;
    GoldLabels gold; // target -> positives
};

/// Positives satisfy the body; distractors violate it in varied ways (wrong
/// filler class, missing edge, wrong role).
LearningScenario plant_learning_scenario(const LearningScenarioConfig& config);

} // namespace fdl

#endif
