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

#include "fdl/model.hpp"

using namespace fdl;

TEST_CASE("conjunctions flatten, sort and deduplicate") {
    auto a = Concept::atomic("A");
    auto b = Concept::atomic("B");
    auto c = Concept::atomic("C");
    auto nested = Concept::conj({c, Concept::conj({b, a}), a});
    CHECK(nested->kind() == ConceptKind::And);
    REQUIRE(nested->members().size() == 3);
    CHECK(nested->members()[0]->name() == "A");
    CHECK(nested->members()[1]->name() == "B");
    CHECK(nested->members()[2]->name() == "C");
    CHECK(nested->to_text() == "(and A B C)");

    auto collapsed = Concept::conj({a, a});
    CHECK(collapsed->kind() == ConceptKind::Atomic);

    CHECK(Concept::conj({a, Concept::top()})->kind() == ConceptKind::Atomic);
    CHECK(Concept::conj({a, Concept::bottom()})->kind() == ConceptKind::Bottom);
    CHECK(Concept::disj({a, Concept::top()})->kind() == ConceptKind::Top);
}

TEST_CASE("role inverses normalize") {
    auto r = Role::atomic("has");
    auto inv = Role::inverse(r);
    CHECK(inv->kind() == RoleKind::Inverse);
    CHECK(Role::inverse(inv)->kind() == RoleKind::Atomic);
    CHECK(Role::inverse(inv)->name() == "has");

    auto chain = Role::compose({Role::atomic("a"), Role::atomic("b")});
    auto invchain = Role::inverse(chain);
    REQUIRE(invchain->kind() == RoleKind::Compose);
    CHECK(invchain->parts()[0]->kind() == RoleKind::Inverse);
    CHECK(invchain->parts()[0]->name() == "b");
    CHECK(invchain->parts()[1]->name() == "a");

    auto flat = Role::compose({chain, Role::atomic("c")});
    CHECK(flat->parts().size() == 3);
}

TEST_CASE("value restrictions print with the value form") {
    auto value = Concept::exists(Role::atomic("hasCameraId"), Concept::nominal("cameraC004"));
    CHECK(value->to_text() == "(value hasCameraId cameraC004)");
    auto some = Concept::exists(Role::atomic("participant"), Concept::atomic("Vehicle"));
    CHECK(some->to_text() == "(some participant Vehicle)");
}

TEST_CASE("expression length counts nodes") {
    CHECK(Concept::top()->length() == 1);
    CHECK(Concept::atomic("A")->length() == 1);
    CHECK(Concept::exists(Role::atomic("r"), Concept::top())->length() == 2);
    auto ds = Concept::conj({Concept::atomic("PhysicalAggression"),
                             Concept::exists(Role::atomic("immediateRelation"),
                                             Concept::atomic("Structure"))});
    CHECK(ds->length() == 3);
}

TEST_CASE("axiom text forms") {
    Axiom gci = Gci{Concept::atomic("Throwing"), Concept::atomic("ActivePhysicalAggression")};
    CHECK(axiom_to_text(gci) == "Sub(Throwing, ActivePhysicalAggression)");
    Axiom ri = RoleInclusion{Role::compose({Role::atomic("has"), Role::atomic("has")}), "has"};
    CHECK(axiom_to_text(ri) == "SubRole((chain has has), has)");
    Axiom data = DataAssertion{"src1", "hasLocationName", "a \"quoted\" street"};
    CHECK(axiom_to_text(data) == "Data(hasLocationName, src1, \"a \\\"quoted\\\" street\")");
}

TEST_CASE("knowledge bases deduplicate axioms and compare structurally") {
    KnowledgeBase kb;
    kb.declare_concept("A");
    kb.declare_concept("B");
    kb.add(Gci{Concept::atomic("A"), Concept::atomic("B")});
    kb.add(Gci{Concept::atomic("A"), Concept::atomic("B")});
    kb.finalize();
    CHECK(kb.axioms().size() == 1);

    KnowledgeBase other;
    other.declare_concept("B");
    other.declare_concept("A");
    other.add(Gci{Concept::atomic("A"), Concept::atomic("B")});
    other.finalize();
    CHECK(kb == other);

    other.set_traits("A", {EventTraits::Sign::Plus, EventTraits::Sign::Minus,
                           EventTraits::Cumulative::Unspecified});
    CHECK_FALSE(kb == other);
}

TEST_CASE("sugar expands to role inclusions") {
    KnowledgeBase kb;
    kb.declare_role("has");
    kb.declare_role("isFrom");
    kb.add_transitive("has");
    kb.add_inverse_of("has", "isFrom");
    kb.finalize();
    REQUIRE(kb.axioms().size() == 3);
    CHECK(axiom_to_text(kb.axioms()[0]) == "SubRole((chain has has), has)");
    CHECK(axiom_to_text(kb.axioms()[1]) == "SubRole((inv has), isFrom)");
    CHECK(axiom_to_text(kb.axioms()[2]) == "SubRole((inv isFrom), has)");
}

TEST_CASE("direct subclasses read off atomic axioms") {
    KnowledgeBase kb;
    for (const char* c : {"Process", "Action", "Gesture", "PhysicalAggression"})
        kb.declare_concept(c);
    kb.add(Gci{Concept::atomic("Action"), Concept::atomic("Process")});
    kb.add(Gci{Concept::atomic("Gesture"), Concept::atomic("Process")});
    kb.add(Gci{Concept::atomic("PhysicalAggression"), Concept::atomic("Process")});
    kb.add(Gci{Concept::conj({Concept::atomic("Action"), Concept::atomic("Gesture")}),
               Concept::atomic("Process")}); // complex left side is not an edge
    kb.finalize();
    auto subs = kb.direct_subclasses("Process");
    REQUIRE(subs.size() == 3);
    CHECK(subs[0] == "Action");
}
