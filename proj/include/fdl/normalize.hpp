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

#ifndef FDL_NORMALIZE_HPP
#define FDL_NORMALIZE_HPP

#include <optional>
#include <string>
#include <vector>

#include "fdl/model.hpp"

namespace fdl {

// ---------------------------------------------------------------------------
// Executable program: range-restricted datalog rules over four predicate
// families (class membership, role edges, data values, disjointness
// violations) plus a universe predicate used for Thing on a GCI left side.
// ---------------------------------------------------------------------------

enum class PredKind { Concept, Role, Data, Violation, Any };

// Program terms: variables are non-negative indices, constants are names.
struct PTerm {
    int var = -1;       // >= 0 when a variable
    std::string value;  // constant individual / data value when var < 0

    static PTerm variable(int v) { return PTerm{v, {}}; }
    static PTerm constant(std::string s) { return PTerm{-1, std::move(s)}; }
    bool is_var() const { return var >= 0; }
};

struct ProgramAtom {
    PredKind kind = PredKind::Concept;
    std::string predicate; // concept/role/property name; violation axiom id
    PTerm x;
    PTerm y; // unused for Concept/Any/Violation

    std::string to_text() const;
};

struct ProgramRule {
    std::vector<ProgramAtom> body;
    ProgramAtom head;
    std::string provenance; // source axiom or rule, in .fkb syntax

    std::string to_text() const;
    bool range_restricted() const;
};

/// A GCI whose right side is an existential; retained for reporting, never
/// materialized (no fresh witnesses are invented).
struct CheckOnlyGci {
    ConceptRef lhs;
    ConceptRef rhs_existential;
    std::string provenance;
};

class NormalizedProgram {
public:
    std::vector<ProgramRule> rules;
    std::vector<CheckOnlyGci> check_only;

    std::string to_text() const; // rule-per-line listing, canonical order
};

/// Compiles every non-assertion axiom and every rule of `kb` into datalog
/// rules. Throws UnsupportedConstructError (naming axiom and construct) for
/// anything outside the Horn fragment.
NormalizedProgram normalize_kb(const KnowledgeBase& kb);

/// DNF compilation of a positive-existential concept rooted at variable 0;
/// each inner vector is one conjunctive body whose root variable is bound.
/// Shared by subsumption checking and witness construction.
std::vector<std::vector<ProgramAtom>> compile_concept_to_bodies(const ConceptRef& c,
                                                                const std::string& context);

// ---------------------------------------------------------------------------
// Validation: non-throwing preflight for normalize_kb plus declaration and
// rule-safety checks usable on hand-built KBs.
// ---------------------------------------------------------------------------

struct ValidationIssue {
    enum class Code { UndeclaredName, UnsafeRule, UnsupportedConstruct, MalformedExpression };
    Code code;
    std::string message;
    std::string statement; // offending axiom / rule in .fkb syntax
};

std::vector<ValidationIssue> validate_kb(const KnowledgeBase& kb);

/// Declaration check for externally supplied assertions (annotations).
/// Concept, role and data-property names must be declared in `kb`;
/// individuals are exempt, since annotations introduce them.
std::vector<ValidationIssue> validate_assertions(const KnowledgeBase& kb,
                                                 const std::vector<Axiom>& assertions);

} // namespace fdl

#endif
