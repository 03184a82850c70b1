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

#ifndef FDL_MODEL_HPP
#define FDL_MODEL_HPP

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace fdl {

class Concept;
class Role;
using ConceptRef = std::shared_ptr<const Concept>;
using RoleRef = std::shared_ptr<const Role>;

// ---------------------------------------------------------------------------
// Role expressions: atomic name, inverse, or composition (chains only appear
// on the left-hand side of role inclusions).
// ---------------------------------------------------------------------------

enum class RoleKind { Atomic, Inverse, Compose };

class Role {
public:
    static RoleRef atomic(std::string name);
    // inv(inv(r)) collapses to r; inv(r.s) is rewritten to inv(s).inv(r),
    // so Inverse only ever wraps an atomic role.
    static RoleRef inverse(RoleRef inner);
    // Nested compositions are flattened; a singleton collapses to its part.
    static RoleRef compose(std::vector<RoleRef> parts);

    RoleKind kind() const { return kind_; }
    const std::string& name() const { return name_; } // Atomic/Inverse
    const std::vector<RoleRef>& parts() const { return parts_; } // Compose

    std::string to_text() const; // .fkb role-term syntax

    static int compare(const Role& a, const Role& b);
    bool equals(const Role& other) const { return compare(*this, other) == 0; }

private:
    Role() = default;
    RoleKind kind_ = RoleKind::Atomic;
    std::string name_;
    std::vector<RoleRef> parts_;
};

// ---------------------------------------------------------------------------
// Concept expressions. Construction canonicalizes: conjunctions and
// disjunctions are flattened, lexicographically sorted and deduplicated;
// a one-member And/Or collapses to that member.
// ---------------------------------------------------------------------------

enum class ConceptKind { Atomic, Top, Bottom, And, Or, Not, Exists, Forall, Nominal };

class Concept {
public:
    static ConceptRef atomic(std::string name);
    static ConceptRef top();
    static ConceptRef bottom();
    static ConceptRef conj(std::vector<ConceptRef> members);
    static ConceptRef disj(std::vector<ConceptRef> members);
    static ConceptRef negation(ConceptRef inner);
    static ConceptRef exists(RoleRef role, ConceptRef filler);
    static ConceptRef forall(RoleRef role, ConceptRef filler);
    static ConceptRef nominal(std::string individual); // only valid as an Exists filler

    ConceptKind kind() const { return kind_; }
    const std::string& name() const { return name_; } // Atomic concept / Nominal individual
    const RoleRef& role() const { return role_; }     // Exists/Forall
    const std::vector<ConceptRef>& members() const { return members_; } // And/Or
    const ConceptRef& inner() const { return members_[0]; } // Not/Exists/Forall filler

    std::string to_text() const; // .fkb concept-term syntax

    // Node count used by the learner's length penalty: every constructor node
    // counts one, fillers are added, And/Or members are summed.
    int length() const;

    static int compare(const Concept& a, const Concept& b);
    bool equals(const Concept& other) const { return compare(*this, other) == 0; }

private:
    Concept() = default;
    ConceptKind kind_ = ConceptKind::Top;
    std::string name_;
    RoleRef role_;
    std::vector<ConceptRef> members_;
};

bool concept_ref_equal(const ConceptRef& a, const ConceptRef& b);
bool role_ref_equal(const RoleRef& a, const RoleRef& b);

// ---------------------------------------------------------------------------
// Axioms.
// ---------------------------------------------------------------------------

struct Gci {
    ConceptRef lhs;
    ConceptRef rhs;
};

struct RoleInclusion {
    RoleRef lhs;
    std::string rhs; // right-hand side is always an atomic role
};

struct ConceptAssertion {
    std::string individual;
    ConceptRef expr;
};

struct RoleAssertion {
    std::string subject;
    std::string object;
    std::string role; // atomic
};

struct DataAssertion {
    std::string subject;
    std::string property;
    std::string value;
};

// Sugar for Gci(And(a, b), Bottom).
struct Disjointness {
    ConceptRef a;
    ConceptRef b;
};

using Axiom = std::variant<Gci, RoleInclusion, ConceptAssertion, RoleAssertion,
                           DataAssertion, Disjointness>;

bool is_assertion(const Axiom& ax);
std::string axiom_to_text(const Axiom& ax); // .fkb statement, no trailing newline
bool axiom_equal(const Axiom& a, const Axiom& b);

// ---------------------------------------------------------------------------
// Rules (SWRL-style, safe datalog over atomic predicates).
// ---------------------------------------------------------------------------

struct Term {
    bool is_variable = false;
    std::string text; // variable name without '?', or constant / string value

    static Term var(std::string name) { return Term{true, std::move(name)}; }
    static Term constant(std::string name) { return Term{false, std::move(name)}; }
    bool operator==(const Term& o) const { return is_variable == o.is_variable && text == o.text; }
};

enum class AtomKind { Class, Object, Data, SameAs };

struct RuleAtom {
    AtomKind kind = AtomKind::Class;
    std::string predicate; // concept / role / data-property name; empty for SameAs
    Term a;
    Term b; // unused for Class atoms

    std::string to_text() const;
};

struct Rule {
    std::vector<RuleAtom> body;
    RuleAtom head;

    std::string to_text() const;
};

// ---------------------------------------------------------------------------
// Event traits (telic / stage / cumulative classification of event roots).
// ---------------------------------------------------------------------------

struct EventTraits {
    enum class Sign { Plus, Minus };
    enum class Cumulative { Cumulative, NotCumulative, Unspecified };

    Sign telic = Sign::Minus;
    Sign stage = Sign::Minus;
    Cumulative cumulative = Cumulative::Unspecified;

    bool operator==(const EventTraits& o) const {
        return telic == o.telic && stage == o.stage && cumulative == o.cumulative;
    }
};

// ---------------------------------------------------------------------------
// Knowledge base: declarations + axioms + rules + traits. Mutate while
// loading, then finalize(); finalized KBs are treated as immutable and are
// safe to share across threads.
// ---------------------------------------------------------------------------

class KnowledgeBase {
public:
    void declare_concept(const std::string& name) { concepts_.insert(name); }
    void declare_role(const std::string& name) { roles_.insert(name); }
    void declare_data_property(const std::string& name) { data_properties_.insert(name); }
    void declare_individual(const std::string& name) { individuals_.insert(name); }

    void add(Axiom axiom);
    void add_rule(Rule rule);
    void set_traits(const std::string& concept_name, EventTraits traits);

    // Surface sugar, normalized to role inclusions on the spot.
    void add_transitive(const std::string& role);
    void add_symmetric(const std::string& role);
    void add_inverse_of(const std::string& role, const std::string& inverse);

    /// Sorts axioms and rules into canonical (textual) order and removes
    /// structural duplicates. Call once after the last mutation.
    void finalize();

    const std::set<std::string>& concepts() const { return concepts_; }
    const std::set<std::string>& roles() const { return roles_; }
    const std::set<std::string>& data_properties() const { return data_properties_; }
    const std::set<std::string>& individuals() const { return individuals_; }
    const std::vector<Axiom>& axioms() const { return axioms_; }
    const std::vector<Rule>& rules() const { return rules_; }
    const std::map<std::string, EventTraits>& traits() const { return traits_; }

    std::vector<Axiom> assertions() const; // the ABox subset of axioms()

    bool is_declared_concept(const std::string& n) const { return concepts_.count(n) > 0; }
    bool is_declared_role(const std::string& n) const { return roles_.count(n) > 0; }
    bool is_declared_data_property(const std::string& n) const { return data_properties_.count(n) > 0; }
    bool is_declared_individual(const std::string& n) const { return individuals_.count(n) > 0; }

    /// Direct atomic subclasses of `name`, read off plain A <= B axioms.
    std::vector<std::string> direct_subclasses(const std::string& name) const;

    bool operator==(const KnowledgeBase& other) const;

private:
    std::set<std::string> concepts_;
    std::set<std::string> roles_;
    std::set<std::string> data_properties_;
    std::set<std::string> individuals_;
    std::vector<Axiom> axioms_;
    std::vector<Rule> rules_;
    std::map<std::string, EventTraits> traits_;
};

} // namespace fdl

#endif
