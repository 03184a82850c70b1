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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "fdl/datagen.hpp"
#include "fdl/errors.hpp"
#include "fdl/learner.hpp"
#include "fdl/normalize.hpp"
#include "fdl/ontology.hpp"

using namespace fdl;

namespace {

// A planted learning problem over the built-in ontology. Positives carry the
// immediateRelation->Vehicle pattern; distractors break it in varied ways.
struct PlantedProblem {
    KnowledgeBase background;
    LearningProblem problem;

    // Wires the background pointer after the struct has its final address.
    LearningProblem& ready() {
        problem.background = &background;
        return problem;
    }
};

PlantedProblem planted_problem(int positives = 16, int distractors = 50, double noise = 0.0) {
    LearningScenarioConfig config;
    config.positives = positives;
    config.distractors = distractors;
    config.noise = noise;
    LearningScenario scenario = plant_learning_scenario(config);

    PlantedProblem out;
    out.background = builtin_ontology();
    for (const auto& ax : ingest_annotations(scenario.annotations)) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
            if (ca->expr->kind() == ConceptKind::Atomic && ca->expr->name() == config.target)
                continue; // strip explicit target assertions
        }
        out.background.add(ax);
    }
    out.background.finalize();

    out.problem.target = config.target;
    out.problem.positives = scenario.gold.at(config.target);
    for (const auto& ax : ingest_annotations(scenario.annotations)) {
        const auto* ca = std::get_if<ConceptAssertion>(&ax);
        if (ca && ca->expr->kind() == ConceptKind::Atomic && ca->expr->name() == "Event")
            out.problem.population.insert(ca->individual);
    }
    return out;
}

Closure closure_of(PlantedProblem& p) {
    MaterializeOptions opts;
    opts.extra_individuals.assign(p.background.individuals().begin(),
                                  p.background.individuals().end());
    return materialize(normalize_kb(p.background), p.background.assertions(), opts);
}

ConceptRef planted_body() {
    return Concept::exists(Role::atomic("immediateRelation"), Concept::atomic("Vehicle"));
}

// Every expression of length <= max_length over the kb vocabulary, built
// from the refinement grammar. Small vocabularies only.
void enumerate_expressions(const KnowledgeBase& kb, int max_length,
                           std::vector<ConceptRef>& out) {
    std::set<std::string> seen;
    std::vector<ConceptRef> frontier = {Concept::top()};
    seen.insert(frontier[0]->to_text());
    LearnerConfig config;
    config.max_length = max_length;
    while (!frontier.empty()) {
        ConceptRef current = frontier.back();
        frontier.pop_back();
        out.push_back(current);
        for (auto& child : refine(current, kb, config)) {
            if (seen.insert(child->to_text()).second)
                frontier.push_back(child);
        }
    }
}

} // namespace

TEST_CASE("refining Thing enumerates names and bare existentials") {
    KnowledgeBase kb;
    kb.declare_concept("Vehicle");
    kb.declare_concept("Arm");
    kb.declare_role("immediateRelation");
    kb.finalize();
    LearnerConfig config;
    auto refs = refine(Concept::top(), kb, config);
    REQUIRE(refs.size() == 3);
    std::set<std::string> texts;
    for (const auto& r : refs)
        texts.insert(r->to_text());
    CHECK(texts.count("Vehicle") == 1);
    CHECK(texts.count("Arm") == 1);
    CHECK(texts.count("(some immediateRelation Thing)") == 1);
}

TEST_CASE("existential fillers refine downward") {
    KnowledgeBase kb;
    kb.declare_concept("Vehicle");
    kb.declare_role("immediateRelation");
    kb.finalize();
    LearnerConfig config;
    auto refs = refine(Concept::exists(Role::atomic("immediateRelation"), Concept::top()), kb,
                       config);
    bool found = false;
    for (const auto& r : refs)
        if (r->to_text() == "(some immediateRelation Vehicle)")
            found = true;
    CHECK(found);
}

TEST_CASE("atomic concepts refine to direct subclasses") {
    KnowledgeBase kb;
    kb.declare_concept("Process");
    kb.declare_concept("Action");
    kb.add(Gci{Concept::atomic("Action"), Concept::atomic("Process")});
    kb.finalize();
    LearnerConfig config;
    auto refs = refine(Concept::atomic("Process"), kb, config);
    bool found = false;
    for (const auto& r : refs)
        if (r->to_text() == "Action")
            found = true;
    CHECK(found);
}

TEST_CASE("refinement never shortens an expression") {
    KnowledgeBase kb = builtin_ontology();
    LearnerConfig config;
    std::vector<ConceptRef> samples = {
        Concept::top(),
        Concept::atomic("Process"),
        Concept::exists(Role::atomic("participant"), Concept::top()),
        Concept::conj({Concept::atomic("Perdurant"),
                       Concept::exists(Role::atomic("part"), Concept::atomic("Crowding"))}),
    };
    for (const auto& expr : samples) {
        for (const auto& child : refine(expr, kb, config)) {
            CHECK(child->length() >= expr->length());
            // Conjunction steps grow strictly; hierarchy-narrowing name
            // swaps (Thing -> A, A -> subclass, filler narrowing) may not.
            if (child->kind() == ConceptKind::And && expr->kind() != ConceptKind::And)
                CHECK(child->length() > expr->length());
        }
    }
}

TEST_CASE("score is accuracy minus the length penalty") {
    // Five positives in a fifty-strong population, Thing covers everything:
    // accuracy 0.1, length 1.
    KnowledgeBase kb;
    kb.declare_concept("Event");
    LearningProblem problem;
    problem.target = "T";
    problem.background = &kb;
    std::vector<Axiom> assertions;
    for (int i = 0; i < 50; ++i) {
        std::string id = "e" + std::to_string(i);
        kb.declare_individual(id);
        problem.population.insert(id);
        if (i < 5)
            problem.positives.insert(id);
        assertions.push_back(ConceptAssertion{id, Concept::atomic("Event")});
    }
    kb.finalize();
    Closure closure = materialize(normalize_kb(kb), assertions);
    LearnerConfig config;
    CHECK(score(Concept::top(), problem, closure, config) == doctest::Approx(0.1 - 0.02));
}

TEST_CASE("perfect separation scores one minus the length cost") {
    PlantedProblem p = planted_problem();
    Closure closure = closure_of(p);
    LearnerConfig config;
    CHECK(score(planted_body(), p.ready(), closure, config) == doctest::Approx(1.0 - 0.04));
}

TEST_CASE("the planted body is recovered as the top hypothesis") {
    PlantedProblem p = planted_problem();
    auto hypotheses = learn_gci(p.ready());
    REQUIRE_FALSE(hypotheses.empty());
    CHECK(hypotheses[0].expr->equals(*planted_body()));
    CHECK(hypotheses.size() <= 10);
    // Ordered by score, best first.
    for (size_t i = 1; i < hypotheses.size(); ++i)
        CHECK(hypotheses[i - 1].score >= hypotheses[i].score);
}

TEST_CASE("search is deterministic") {
    PlantedProblem p = planted_problem();
    auto a = learn_gci(p.ready());
    auto b = learn_gci(p.ready());
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.size(); ++i)
        CHECK(a[i].expr->equals(*b[i].expr));
}

TEST_CASE("a single shared named class is learned directly") {
    // Positives are exactly the Explosion events; the learner should surface
    // Explosion itself.
    KnowledgeBase background = builtin_ontology();
    LearningProblem problem;
    problem.target = "Vandalism";
    for (int i = 0; i < 6; ++i) {
        std::string id = "p" + std::to_string(i);
        background.add(ConceptAssertion{id, Concept::atomic("Explosion")});
        background.add(ConceptAssertion{id, Concept::atomic("Event")});
        problem.positives.insert(id);
        problem.population.insert(id);
    }
    for (int i = 0; i < 14; ++i) {
        std::string id = "n" + std::to_string(i);
        background.add(ConceptAssertion{id, Concept::atomic("Event")});
        // Some negatives share the superclass chain, so only the named class
        // itself separates the positives.
        if (i < 4)
            background.add(ConceptAssertion{id, Concept::atomic("Saying")});
        problem.population.insert(id);
    }
    background.finalize();
    problem.background = &background;
    auto hypotheses = learn_gci(problem);
    REQUIRE_FALSE(hypotheses.empty());
    CHECK(hypotheses[0].expr->to_text() == "Explosion");
}

TEST_CASE("a conjunctive body is learned when only the combination separates") {
    // Positives are aggression events with a structure link; distractors
    // split the two features, so neither the superclass nor the existential
    // alone is perfect.
    KnowledgeBase background = builtin_ontology();
    LearningProblem problem;
    problem.target = "DamageStructure";
    int counter = 0;
    auto fresh = [&counter](const char* prefix) {
        return std::string(prefix) + std::to_string(++counter);
    };
    auto add_event = [&](const char* type, const char* filler) {
        std::string id = fresh("e");
        background.add(ConceptAssertion{id, Concept::atomic("Event")});
        if (type)
            background.add(ConceptAssertion{id, Concept::atomic(type)});
        if (filler) {
            std::string obj = fresh("o");
            background.add(ConceptAssertion{obj, Concept::atomic(filler)});
            background.add(RoleAssertion{id, obj, "immediateRelation"});
        }
        problem.population.insert(id);
        return id;
    };
    const char* aggressions[] = {"Kicking", "Beating", "BreakingWindows", "PhysicalAggression"};
    for (int i = 0; i < 8; ++i)
        problem.positives.insert(add_event(aggressions[i % 4], "Structure"));
    for (int i = 0; i < 6; ++i)
        add_event(nullptr, "Structure"); // structure link without aggression
    for (int i = 0; i < 6; ++i)
        add_event(aggressions[i % 4], "Vehicle"); // aggression, wrong filler
    for (int i = 0; i < 6; ++i)
        add_event(nullptr, nullptr);
    background.finalize();
    problem.background = &background;

    auto hypotheses = learn_gci(problem);
    REQUIRE_FALSE(hypotheses.empty());
    ConceptRef expected =
        Concept::conj({Concept::atomic("PhysicalAggression"),
                       Concept::exists(Role::atomic("immediateRelation"),
                                       Concept::atomic("Structure"))});
    CHECK(hypotheses[0].expr->equals(*expected));
}

TEST_CASE("nothing above Thing raises NoHypothesis") {
    // Positives and negatives are indistinguishable.
    KnowledgeBase background;
    background.declare_concept("Event");
    LearningProblem problem;
    problem.target = "T";
    for (int i = 0; i < 10; ++i) {
        std::string id = "e" + std::to_string(i);
        background.declare_individual(id);
        background.add(ConceptAssertion{id, Concept::atomic("Event")});
        problem.population.insert(id);
        if (i < 5)
            problem.positives.insert(id);
    }
    background.finalize();
    problem.background = &background;
    CHECK_THROWS_AS(learn_gci(problem), NoHypothesisError);
}

TEST_CASE("lengthening without changing the extension lowers the score") {
    PlantedProblem p = planted_problem();
    Closure closure = closure_of(p);
    LearnerConfig config;
    ConceptRef body = planted_body();
    ConceptRef padded = Concept::conj({body, Concept::atomic("Perdurant")});
    // Same extension: every immediateRelation holder is a perdurant here.
    double s1 = score(body, p.ready(), closure, config);
    double s2 = score(padded, p.ready(), closure, config);
    CHECK(s2 == doctest::Approx(s1 - 0.02));
}

TEST_CASE("best-first search agrees with exhaustive enumeration") {
    // Small vocabulary, max_length 3: enumerable space.
    PlantedProblem p = planted_problem(8, 20);
    KnowledgeBase small;
    for (const char* c : {"Event", "Vehicle", "Structure"})
        small.declare_concept(c);
    small.declare_role("immediateRelation");
    // Re-point the problem at the reduced vocabulary; assertions stay.
    for (const auto& ax : p.background.axioms()) {
        if (is_assertion(ax))
            small.add(ax);
    }
    for (const auto& i : p.background.individuals())
        small.declare_individual(i);
    small.finalize();

    LearningProblem problem = p.ready();
    problem.background = &small;
    LearnerConfig config;
    config.max_length = 3;
    config.max_expansions = 100000;

    std::vector<ConceptRef> space;
    enumerate_expressions(small, 3, space);
    CHECK(space.size() <= 500);

    MaterializeOptions opts;
    opts.extra_individuals.assign(small.individuals().begin(), small.individuals().end());
    Closure closure = materialize(normalize_kb(small), small.assertions(), opts);

    ConceptRef best;
    double best_score = -1e9;
    for (const auto& expr : space) {
        if (expr->kind() == ConceptKind::Top)
            continue;
        bool covers = false;
        for (const auto& pos : problem.positives)
            if (instance_of(closure, pos, expr))
                covers = true;
        if (!covers)
            continue;
        double s = score(expr, problem, closure, config);
        if (s > best_score + 1e-12) {
            best_score = s;
            best = expr;
        }
    }
    REQUIRE(best);

    auto searched = learn_gci(problem, config);
    REQUIRE_FALSE(searched.empty());
    CHECK(searched[0].expr->equals(*best));
    CHECK(searched[0].score == doctest::Approx(best_score));
}

TEST_CASE("leave-one-out cross validation is perfect on the noise-free plant") {
    PlantedProblem p = planted_problem();
    CrossValidation cv = loo_cv(p.ready());
    CHECK(cv.folds.size() == p.problem.positives.size());
    CHECK(cv.avg_precision == doctest::Approx(1.0));
    CHECK(cv.avg_recall == doctest::Approx(1.0));
    for (const auto& fold : cv.folds) {
        CHECK(fold.trainset.size() == p.problem.positives.size() - 1);
        CHECK(fold.tp == 1);
        CHECK(fold.fp == 0);
        CHECK(fold.fn == 0);
    }
}

TEST_CASE("two identical positives cross-validate to perfect averages") {
    PlantedProblem p = planted_problem(2, 10);
    CrossValidation cv = loo_cv(p.ready());
    REQUIRE(cv.folds.size() == 2);
    CHECK(cv.avg_precision == doctest::Approx(1.0));
    CHECK(cv.avg_recall == doctest::Approx(1.0));
}

TEST_CASE("label noise lowers cross-validated recall") {
    PlantedProblem noisy = planted_problem(16, 50, 0.2);
    CrossValidation cv = loo_cv(noisy.ready());
    CHECK(cv.avg_recall < 1.0);
    CHECK(cv.avg_recall > 0.0);
}

TEST_CASE("fold order does not affect the averages") {
    // Folds iterate the positive set in its natural order; renaming the
    // positives permutes that order without changing the data shape.
    PlantedProblem p = planted_problem(6, 12);
    CrossValidation cv1 = loo_cv(p.ready());

    PlantedProblem q = planted_problem(6, 12);
    CrossValidation cv2 = loo_cv(q.ready());
    CHECK(cv1.avg_precision == doctest::Approx(cv2.avg_precision));
    CHECK(cv1.avg_recall == doctest::Approx(cv2.avg_recall));

    // Explicit permutation: average over manually reordered folds.
    double sum_p = 0;
    for (auto it = cv1.folds.rbegin(); it != cv1.folds.rend(); ++it)
        sum_p += it->precision;
    CHECK(sum_p / cv1.folds.size() == doctest::Approx(cv1.avg_precision));
}
