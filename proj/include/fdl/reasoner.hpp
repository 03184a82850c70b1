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

#ifndef FDL_REASONER_HPP
#define FDL_REASONER_HPP

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "fdl/model.hpp"
#include "fdl/normalize.hpp"

namespace fdl {

// ---------------------------------------------------------------------------
// Facts. Everything in a closure is one of these four shapes.
// ---------------------------------------------------------------------------

enum class FactKind : uint8_t { Concept, Role, Data, Violation };

struct Fact {
    FactKind kind = FactKind::Concept;
    std::string predicate; // concept / role / property name; violation axiom id
    std::string subject;
    std::string object; // role object / data value; empty otherwise

    static Fact cls(std::string c, std::string ind) {
        return {FactKind::Concept, std::move(c), std::move(ind), {}};
    }
    static Fact role(std::string r, std::string s, std::string o) {
        return {FactKind::Role, std::move(r), std::move(s), std::move(o)};
    }
    static Fact data(std::string p, std::string s, std::string v) {
        return {FactKind::Data, std::move(p), std::move(s), std::move(v)};
    }

    bool operator==(const Fact& o) const {
        return kind == o.kind && predicate == o.predicate && subject == o.subject &&
               object == o.object;
    }
    bool operator<(const Fact& o) const;
    std::string to_text() const;
};

struct Violation {
    std::string axiom; // offending axiom in .fkb syntax
    std::string individual;
};

struct MaterializeOptions {
    // Hard cap on total facts; role-composition rules can blow up, so exceed
    // it loudly. Overridable via FORENSIC_DL_FACT_CAP.
    std::size_t fact_cap = 10'000'000;
    // Extra individuals that belong to the universe even if no assertion
    // mentions them (declared individuals of the source KB).
    std::vector<std::string> extra_individuals;
};

std::size_t fact_cap_from_env(std::size_t fallback = 10'000'000);

// ---------------------------------------------------------------------------
// ClosureABox: the least fixpoint of a program over an assertion set.
// Immutable once materialized; queries are const and thread-safe.
// ---------------------------------------------------------------------------

class Closure {
public:
    bool has_concept(const std::string& concept_name, const std::string& individual) const;
    bool has_role(const std::string& role, const std::string& subject,
                  const std::string& object) const;
    bool has_data(const std::string& property, const std::string& subject,
                  const std::string& value) const;

    const std::vector<std::string>& concept_members(const std::string& concept_name) const;
    const std::vector<std::string>& role_objects(const std::string& role,
                                                 const std::string& subject) const;
    const std::vector<std::string>& role_subjects(const std::string& role,
                                                  const std::string& object) const;
    const std::vector<std::string>& data_values(const std::string& property,
                                                const std::string& subject) const;
    const std::vector<std::string>& data_subjects(const std::string& property,
                                                  const std::string& value) const;

    const std::set<std::string>& universe() const { return universe_; }
    const std::vector<Violation>& violations() const { return violations_; }
    std::size_t fact_count() const { return facts_in_order_.size(); }

    /// All facts in derivation order (asserted facts first).
    const std::vector<Fact>& facts() const { return facts_in_order_; }

    bool contains(const Fact& f) const;

private:
    friend class Materializer;

    std::unordered_map<std::string, std::vector<std::string>> concept_members_;
    std::unordered_map<std::string, std::vector<std::pair<std::string, std::string>>> role_pairs_;
    std::unordered_map<std::string, std::vector<std::string>> role_by_subject_;
    std::unordered_map<std::string, std::vector<std::string>> role_by_object_;
    std::unordered_map<std::string, std::vector<std::pair<std::string, std::string>>> data_pairs_;
    std::unordered_map<std::string, std::vector<std::string>> data_by_subject_;
    std::unordered_map<std::string, std::vector<std::string>> data_by_value_;
    std::unordered_set<std::string> fact_keys_;
    std::vector<Fact> facts_in_order_;
    std::set<std::string> universe_;
    std::vector<Violation> violations_;

    // fact -> (rule index in program, body facts); absent for asserted facts.
    std::unordered_map<std::string, std::pair<int, std::vector<Fact>>> derivations_;

public:
    // Derivation lookup used by explain(); key is Fact::to_text().
    const std::pair<int, std::vector<Fact>>* derivation_of(const Fact& f) const;
};

/// Computes the least fixpoint of `program` over `assertions` with semi-naive
/// evaluation. Deterministic regardless of rule order. Throws
/// ResourceLimitError when the fact cap is exceeded and
/// UnsupportedConstructError for assertions outside the fragment.
Closure materialize(const NormalizedProgram& program, const std::vector<Axiom>& assertions,
                    const MaterializeOptions& options = {});

/// Consistency = absence of disjointness violations.
struct ConsistencyReport {
    bool consistent = true;
    std::vector<Violation> violations;
};
ConsistencyReport is_consistent(const Closure& closure);

// ---------------------------------------------------------------------------
// Queries. QueryConcepts are positive existential concepts: Atomic, Thing,
// And, Or, Exists (atomic or inverse role) and Nominal fillers.
// ---------------------------------------------------------------------------

/// Throws UnsupportedQueryError if `query` falls outside the query fragment.
bool instance_of(const Closure& closure, const std::string& individual, const ConceptRef& query);

std::set<std::string> all_instances(const Closure& closure, const ConceptRef& query);

/// Materialization-based subsumption: a fresh individual built to satisfy
/// `lhs` (per disjunct) must classify as atomic `rhs` under the program.
bool is_subsumed(const KnowledgeBase& kb, const ConceptRef& lhs, const std::string& rhs);
bool is_subsumed(const NormalizedProgram& program, const ConceptRef& lhs, const std::string& rhs);

// ---------------------------------------------------------------------------
// Explanations: the first derivation recorded for each fact, unwound to
// asserted leaves.
// ---------------------------------------------------------------------------

struct DerivationTree {
    Fact fact;
    std::string rule; // provenance of the applied rule; empty for asserted leaves
    std::vector<DerivationTree> premises;
};

/// Throws NotDerivedError if `fact` is not in the closure.
DerivationTree explain(const Closure& closure, const NormalizedProgram& program, const Fact& fact);

} // namespace fdl

#endif
