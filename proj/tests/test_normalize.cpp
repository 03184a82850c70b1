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

#include "fdl/errors.hpp"
#include "fdl/normalize.hpp"
#include "fdl/ontology.hpp"
#include "fdl/reasoner.hpp"
#include "fdl/text.hpp"

#include "oracle.hpp"

using namespace fdl;

TEST_CASE("atomic subsumption compiles to a single rule") {
    KnowledgeBase kb;
    kb.declare_concept("Throwing");
    kb.declare_concept("ActivePhysicalAggression");
    kb.add(Gci{Concept::atomic("Throwing"), Concept::atomic("ActivePhysicalAggression")});
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].to_text() == "ActivePhysicalAggression(?v0) <- Throwing(?v0)");
    CHECK(p.rules[0].range_restricted());
}

TEST_CASE("empty knowledge base compiles to the empty program") {
    KnowledgeBase kb;
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    CHECK(p.rules.empty());
    CHECK(p.check_only.empty());
}

TEST_CASE("the damaged-vehicle GCI splits into one rule per disjunct") {
    ParseResult r = parse_kb(
        {"Class(Perdurant)\nClass(Vehicle)\nClass(BreakingDoor)\nClass(BreakingWindows)\n"
         "Class(DamageVehicle)\nRole(participant)\nRole(participantIn)\n"
         "Sub((and Perdurant (some participant (and Vehicle (some participantIn "
         "(or BreakingDoor BreakingWindows))))), DamageVehicle)\n",
         "<test>"});
    REQUIRE(r.ok());
    NormalizedProgram p = normalize_kb(r.kb);
    REQUIRE(p.rules.size() == 2);
    for (const auto& rule : p.rules) {
        CHECK(rule.head.predicate == "DamageVehicle");
        REQUIRE(rule.body.size() == 5);
        CHECK(rule.body[0].predicate == "Perdurant");
        CHECK(rule.body[1].predicate == "participant");
        CHECK(rule.body[2].predicate == "Vehicle");
        CHECK(rule.body[3].predicate == "participantIn");
        CHECK(rule.range_restricted());
    }
    CHECK(p.rules[0].body[4].predicate == "BreakingDoor");
    CHECK(p.rules[1].body[4].predicate == "BreakingWindows");
}

TEST_CASE("right-hand-side existentials become check-only records") {
    KnowledgeBase kb;
    kb.declare_concept("Perdurant");
    kb.declare_concept("Endurant");
    kb.declare_role("participant");
    kb.add(Gci{Concept::atomic("Perdurant"),
               Concept::exists(Role::atomic("participant"), Concept::atomic("Endurant"))});
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    CHECK(p.rules.empty());
    REQUIRE(p.check_only.size() == 1);
    CHECK(p.check_only[0].rhs_existential->kind() == ConceptKind::Exists);
}

TEST_CASE("conjunctive right sides split into component rules") {
    // Source <= Endurant and exists has.Resource: one rule + one check-only.
    KnowledgeBase kb;
    kb.declare_concept("Source");
    kb.declare_concept("Endurant");
    kb.declare_concept("Resource");
    kb.declare_role("has");
    kb.add(Gci{Concept::atomic("Source"),
               Concept::conj({Concept::atomic("Endurant"),
                              Concept::exists(Role::atomic("has"), Concept::atomic("Resource"))})});
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].head.predicate == "Endurant");
    CHECK(p.check_only.size() == 1);
}

TEST_CASE("disjointness compiles to a violation rule") {
    KnowledgeBase kb;
    kb.declare_concept("Perdurant");
    kb.declare_concept("Endurant");
    kb.add(Disjointness{Concept::atomic("Perdurant"), Concept::atomic("Endurant")});
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].head.kind == PredKind::Violation);
    CHECK(p.rules[0].body.size() == 2);
}

TEST_CASE("negated right side is the disjointness pattern") {
    ParseResult r = parse_kb({"Class(Male)\nClass(Female)\nSub(Male, (not Female))\n", "<t>"});
    REQUIRE(r.ok());
    NormalizedProgram p = normalize_kb(r.kb);
    REQUIRE(p.rules.size() == 1);
    CHECK(p.rules[0].head.kind == PredKind::Violation);
}

TEST_CASE("role inclusions compile to edge rules") {
    KnowledgeBase kb;
    kb.declare_role("has");
    kb.declare_role("isFrom");
    kb.add_transitive("has");
    kb.add_inverse_of("has", "isFrom");
    kb.finalize();
    NormalizedProgram p = normalize_kb(kb);
    REQUIRE(p.rules.size() == 3);
    std::string listing = p.to_text();
    CHECK(listing.find("has(?v0, ?v1) <- has(?v0, ?v2), has(?v2, ?v1)") != std::string::npos);
    CHECK(listing.find("has(?v0, ?v1) <- isFrom(?v1, ?v0)") != std::string::npos);
    CHECK(listing.find("isFrom(?v0, ?v1) <- has(?v1, ?v0)") != std::string::npos);
}

TEST_CASE("unsupported constructs are rejected with the axiom named") {
    KnowledgeBase kb;
    kb.declare_concept("A");
    kb.declare_concept("B");
    kb.declare_role("r");
    kb.add(Gci{Concept::forall(Role::atomic("r"), Concept::atomic("A")), Concept::atomic("B")});
    kb.finalize();
    CHECK_THROWS_AS(normalize_kb(kb), UnsupportedConstructError);
    try {
        normalize_kb(kb);
    } catch (const UnsupportedConstructError& e) {
        std::string msg = e.what();
        CHECK(msg.find("(all r A)") != std::string::npos);
        CHECK(msg.find("universal restriction") != std::string::npos);
    }

    KnowledgeBase or_rhs;
    or_rhs.declare_concept("A");
    or_rhs.declare_concept("B");
    or_rhs.declare_concept("C");
    or_rhs.add(Gci{Concept::atomic("A"),
                   Concept::disj({Concept::atomic("B"), Concept::atomic("C")})});
    or_rhs.finalize();
    CHECK_THROWS_AS(normalize_kb(or_rhs), UnsupportedConstructError);
}

TEST_CASE("SameAs compiles to an equality join") {
    ParseResult r = parse_kb(
        {"Class(Perdurant)\nRole(locatedSameAs)\nDataProp(hasLocationName)\n"
         "Rule: Perdurant(?p1), Perdurant(?p2), hasLocationName(?p1, ?l1), "
         "hasLocationName(?p2, ?l2), SameAs(?l1, ?l2) -> locatedSameAs(?p1, ?p2)\n",
         "<t>"});
    REQUIRE(r.ok());
    NormalizedProgram p = normalize_kb(r.kb);
    REQUIRE(p.rules.size() == 1);
    const ProgramRule& rule = p.rules[0];
    // SameAs disappears; the two location variables are unified.
    CHECK(rule.body.size() == 4);
    CHECK(rule.body[2].y.var == rule.body[3].y.var);
    CHECK(rule.range_restricted());
}

TEST_CASE("validator flags undeclared names, unsafe rules and unsupported axioms") {
    KnowledgeBase kb;
    kb.declare_concept("A");
    kb.declare_individual("x");
    kb.add(RoleAssertion{"x", "x", "immediateRelation"}); // undeclared role
    kb.finalize();
    auto issues = validate_kb(kb);
    REQUIRE(issues.size() == 1);
    CHECK(issues[0].code == ValidationIssue::Code::UndeclaredName);
    CHECK(issues[0].message.find("immediateRelation") != std::string::npos);

    KnowledgeBase empty;
    empty.finalize();
    CHECK(validate_kb(empty).empty());

    // Assertions outside the decomposable fragment are flagged up front.
    ParseResult r = parse_kb({"Class(A)\nRole(r)\nIndividual(x)\n"
                              "Member((some r A), x)\n",
                              "<t>"});
    REQUIRE(r.ok());
    auto existential = validate_kb(r.kb);
    REQUIRE(existential.size() == 1);
    CHECK(existential[0].code == ValidationIssue::Code::UnsupportedConstruct);

    ParseResult value_ok = parse_kb({"Class(A)\nRole(r)\nIndividual(x)\nIndividual(y)\n"
                                     "Member((value r y), x)\n",
                                     "<t>"});
    REQUIRE(value_ok.ok());
    CHECK(validate_kb(value_ok.kb).empty());
}

TEST_CASE("the built-in ontology validates cleanly") {
    CHECK(validate_kb(builtin_ontology({false, false})).empty());
    CHECK(validate_kb(builtin_ontology({true, true})).empty());
}

TEST_CASE("every compiled rule is range-restricted") {
    for (uint64_t seed = 0; seed < 40; ++seed) {
        auto rkb = testing::random_kb(seed);
        NormalizedProgram p = normalize_kb(rkb.kb);
        for (const auto& rule : p.rules)
            CHECK(rule.range_restricted());
    }
}

TEST_CASE("normalization is stable across a text round trip") {
    KnowledgeBase kb = builtin_ontology({true, true});
    ParseResult reparsed = parse_kb({serialize_kb(kb), "<rt>"});
    REQUIRE(reparsed.ok());
    CHECK(normalize_kb(kb).to_text() == normalize_kb(reparsed.kb).to_text());
}

TEST_CASE("splitting a disjunctive left side preserves entailed facts") {
    // (or A B) <= C against per-individual query evaluation of the unsplit
    // concept over the same closure.
    KnowledgeBase kb;
    for (const char* c : {"A", "B", "C"})
        kb.declare_concept(c);
    for (const char* i : {"x", "y", "z"})
        kb.declare_individual(i);
    kb.add(Gci{Concept::disj({Concept::atomic("A"), Concept::atomic("B")}), Concept::atomic("C")});
    kb.finalize();
    std::vector<Axiom> assertions = {ConceptAssertion{"x", Concept::atomic("A")},
                                     ConceptAssertion{"y", Concept::atomic("B")},
                                     ConceptAssertion{"z", Concept::atomic("C")}};
    Closure closure = materialize(normalize_kb(kb), assertions);
    ConceptRef unsplit = Concept::disj({Concept::atomic("A"), Concept::atomic("B")});
    for (const auto& ind : closure.universe()) {
        CAPTURE(ind);
        bool via_rules = closure.has_concept("C", ind);
        bool via_query = instance_of(closure, ind, unsplit) || ind == "z";
        CHECK(via_rules == via_query);
    }
}
