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

#include "fdl/model.hpp"

#include <algorithm>
#include <cassert>

namespace fdl {

// ---------------------------------------------------------------------------
// Role
// ---------------------------------------------------------------------------

RoleRef Role::atomic(std::string name) {
    auto r = std::shared_ptr<Role>(new Role());
    r->kind_ = RoleKind::Atomic;
    r->name_ = std::move(name);
    return r;
}

RoleRef Role::inverse(RoleRef inner) {
    if (inner->kind() == RoleKind::Inverse)
        return Role::atomic(inner->name());
    if (inner->kind() == RoleKind::Compose) {
        // (r.s)^- = s^-.r^-
        std::vector<RoleRef> rev;
        for (auto it = inner->parts().rbegin(); it != inner->parts().rend(); ++it)
            rev.push_back(Role::inverse(*it));
        return Role::compose(std::move(rev));
    }
    auto r = std::shared_ptr<Role>(new Role());
    r->kind_ = RoleKind::Inverse;
    r->name_ = inner->name();
    return r;
}

RoleRef Role::compose(std::vector<RoleRef> parts) {
    std::vector<RoleRef> flat;
    for (auto& p : parts) {
        if (p->kind() == RoleKind::Compose)
            flat.insert(flat.end(), p->parts().begin(), p->parts().end());
        else
            flat.push_back(p);
    }
    if (flat.size() == 1)
        return flat[0];
    auto r = std::shared_ptr<Role>(new Role());
    r->kind_ = RoleKind::Compose;
    r->parts_ = std::move(flat);
    return r;
}

std::string Role::to_text() const {
    switch (kind_) {
    case RoleKind::Atomic:
        return name_;
    case RoleKind::Inverse:
        return "(inv " + name_ + ")";
    case RoleKind::Compose: {
        std::string out = "(chain";
        for (const auto& p : parts_)
            out += " " + p->to_text();
        return out + ")";
    }
    }
    return {};
}

int Role::compare(const Role& a, const Role& b) {
    if (a.kind_ != b.kind_)
        return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
    switch (a.kind_) {
    case RoleKind::Atomic:
    case RoleKind::Inverse:
        return a.name_.compare(b.name_);
    case RoleKind::Compose: {
        size_t n = std::min(a.parts_.size(), b.parts_.size());
        for (size_t i = 0; i < n; ++i)
            if (int c = compare(*a.parts_[i], *b.parts_[i]); c != 0)
                return c;
        if (a.parts_.size() != b.parts_.size())
            return a.parts_.size() < b.parts_.size() ? -1 : 1;
        return 0;
    }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Concept
// ---------------------------------------------------------------------------

ConceptRef Concept::atomic(std::string name) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Atomic;
    c->name_ = std::move(name);
    return c;
}

ConceptRef Concept::top() {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Top;
    return c;
}

ConceptRef Concept::bottom() {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Bottom;
    return c;
}

static void flatten_into(ConceptKind kind, const ConceptRef& m, std::vector<ConceptRef>& out) {
    if (m->kind() == kind) {
        for (const auto& k : m->members())
            flatten_into(kind, k, out);
    } else {
        out.push_back(m);
    }
}

ConceptRef Concept::conj(std::vector<ConceptRef> members) {
    std::vector<ConceptRef> flat;
    for (const auto& m : members)
        flatten_into(ConceptKind::And, m, flat);
    // Thing is the neutral element; Nothing absorbs.
    for (const auto& m : flat)
        if (m->kind() == ConceptKind::Bottom)
            return bottom();
    flat.erase(std::remove_if(flat.begin(), flat.end(),
                              [](const ConceptRef& m) { return m->kind() == ConceptKind::Top; }),
               flat.end());
    std::sort(flat.begin(), flat.end(),
              [](const ConceptRef& a, const ConceptRef& b) { return compare(*a, *b) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const ConceptRef& a, const ConceptRef& b) {
                               return compare(*a, *b) == 0;
                           }),
               flat.end());
    if (flat.empty())
        return top();
    if (flat.size() == 1)
        return flat[0];
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::And;
    c->members_ = std::move(flat);
    return c;
}

ConceptRef Concept::disj(std::vector<ConceptRef> members) {
    std::vector<ConceptRef> flat;
    for (const auto& m : members)
        flatten_into(ConceptKind::Or, m, flat);
    // Nothing is the neutral element; Thing absorbs.
    for (const auto& m : flat)
        if (m->kind() == ConceptKind::Top)
            return top();
    flat.erase(std::remove_if(flat.begin(), flat.end(),
                              [](const ConceptRef& m) { return m->kind() == ConceptKind::Bottom; }),
               flat.end());
    std::sort(flat.begin(), flat.end(),
              [](const ConceptRef& a, const ConceptRef& b) { return compare(*a, *b) < 0; });
    flat.erase(std::unique(flat.begin(), flat.end(),
                           [](const ConceptRef& a, const ConceptRef& b) {
                               return compare(*a, *b) == 0;
                           }),
               flat.end());
    if (flat.empty())
        return bottom();
    if (flat.size() == 1)
        return flat[0];
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Or;
    c->members_ = std::move(flat);
    return c;
}

ConceptRef Concept::negation(ConceptRef inner) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Not;
    c->members_ = {std::move(inner)};
    return c;
}

ConceptRef Concept::exists(RoleRef role, ConceptRef filler) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Exists;
    c->role_ = std::move(role);
    c->members_ = {std::move(filler)};
    return c;
}

ConceptRef Concept::forall(RoleRef role, ConceptRef filler) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Forall;
    c->role_ = std::move(role);
    c->members_ = {std::move(filler)};
    return c;
}

ConceptRef Concept::nominal(std::string individual) {
    auto c = std::shared_ptr<Concept>(new Concept());
    c->kind_ = ConceptKind::Nominal;
    c->name_ = std::move(individual);
    return c;
}

std::string Concept::to_text() const {
    switch (kind_) {
    case ConceptKind::Atomic:
        return name_;
    case ConceptKind::Top:
        return "Thing";
    case ConceptKind::Bottom:
        return "Nothing";
    case ConceptKind::And:
    case ConceptKind::Or: {
        std::string out = kind_ == ConceptKind::And ? "(and" : "(or";
        for (const auto& m : members_)
            out += " " + m->to_text();
        return out + ")";
    }
    case ConceptKind::Not:
        return "(not " + members_[0]->to_text() + ")";
    case ConceptKind::Exists:
        if (members_[0]->kind() == ConceptKind::Nominal)
            return "(value " + role_->to_text() + " " + members_[0]->name() + ")";
        return "(some " + role_->to_text() + " " + members_[0]->to_text() + ")";
    case ConceptKind::Forall:
        return "(all " + role_->to_text() + " " + members_[0]->to_text() + ")";
    case ConceptKind::Nominal:
        // Only reachable when printed outside an Exists; keep it readable.
        return "(value " + name_ + ")";
    }
    return {};
}

int Concept::length() const {
    switch (kind_) {
    case ConceptKind::Atomic:
    case ConceptKind::Top:
    case ConceptKind::Bottom:
    case ConceptKind::Nominal:
        return 1;
    case ConceptKind::And:
    case ConceptKind::Or: {
        int n = 0;
        for (const auto& m : members_)
            n += m->length();
        return n;
    }
    case ConceptKind::Not:
    case ConceptKind::Exists:
    case ConceptKind::Forall:
        return 1 + members_[0]->length();
    }
    return 1;
}

int Concept::compare(const Concept& a, const Concept& b) {
    if (a.kind_ != b.kind_)
        return static_cast<int>(a.kind_) < static_cast<int>(b.kind_) ? -1 : 1;
    switch (a.kind_) {
    case ConceptKind::Top:
    case ConceptKind::Bottom:
        return 0;
    case ConceptKind::Atomic:
    case ConceptKind::Nominal:
        return a.name_.compare(b.name_);
    case ConceptKind::Not:
        return compare(*a.members_[0], *b.members_[0]);
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
        if (int c = Role::compare(*a.role_, *b.role_); c != 0)
            return c;
        return compare(*a.members_[0], *b.members_[0]);
    }
    case ConceptKind::And:
    case ConceptKind::Or: {
        size_t n = std::min(a.members_.size(), b.members_.size());
        for (size_t i = 0; i < n; ++i)
            if (int c = compare(*a.members_[i], *b.members_[i]); c != 0)
                return c;
        if (a.members_.size() != b.members_.size())
            return a.members_.size() < b.members_.size() ? -1 : 1;
        return 0;
    }
    }
    return 0;
}

bool concept_ref_equal(const ConceptRef& a, const ConceptRef& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return Concept::compare(*a, *b) == 0;
}

bool role_ref_equal(const RoleRef& a, const RoleRef& b) {
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    return Role::compare(*a, *b) == 0;
}

// ---------------------------------------------------------------------------
// Axioms
// ---------------------------------------------------------------------------

bool is_assertion(const Axiom& ax) {
    return std::holds_alternative<ConceptAssertion>(ax) ||
           std::holds_alternative<RoleAssertion>(ax) ||
           std::holds_alternative<DataAssertion>(ax);
}

static std::string quote(const std::string& s) {
    std::string out = "\"";
    for (char ch : s) {
        if (ch == '\\' || ch == '"')
            out += '\\';
        out += ch;
    }
    return out + "\"";
}

std::string axiom_to_text(const Axiom& ax) {
    struct Printer {
        std::string operator()(const Gci& g) const {
            return "Sub(" + g.lhs->to_text() + ", " + g.rhs->to_text() + ")";
        }
        std::string operator()(const RoleInclusion& ri) const {
            return "SubRole(" + ri.lhs->to_text() + ", " + ri.rhs + ")";
        }
        std::string operator()(const ConceptAssertion& a) const {
            return "Member(" + a.expr->to_text() + ", " + a.individual + ")";
        }
        std::string operator()(const RoleAssertion& a) const {
            return "Related(" + a.role + ", " + a.subject + ", " + a.object + ")";
        }
        std::string operator()(const DataAssertion& a) const {
            return "Data(" + a.property + ", " + a.subject + ", " + quote(a.value) + ")";
        }
        std::string operator()(const Disjointness& d) const {
            return "Disjoint(" + d.a->to_text() + ", " + d.b->to_text() + ")";
        }
    };
    return std::visit(Printer{}, ax);
}

bool axiom_equal(const Axiom& a, const Axiom& b) {
    return axiom_to_text(a) == axiom_to_text(b);
}

// ---------------------------------------------------------------------------
// Rules
// ---------------------------------------------------------------------------

static std::string term_to_text(const Term& t) {
    if (t.is_variable)
        return "?" + t.text;
    return t.text;
}

std::string RuleAtom::to_text() const {
    switch (kind) {
    case AtomKind::Class:
        return predicate + "(" + term_to_text(a) + ")";
    case AtomKind::Object:
        return predicate + "(" + term_to_text(a) + ", " + term_to_text(b) + ")";
    case AtomKind::Data: {
        std::string rhs = b.is_variable ? "?" + b.text : quote(b.text);
        return predicate + "(" + term_to_text(a) + ", " + rhs + ")";
    }
    case AtomKind::SameAs:
        return "SameAs(" + term_to_text(a) + ", " + term_to_text(b) + ")";
    }
    return {};
}

std::string Rule::to_text() const {
    std::string out = "Rule: ";
    for (size_t i = 0; i < body.size(); ++i) {
        if (i)
            out += ", ";
        out += body[i].to_text();
    }
    out += " -> " + head.to_text();
    return out;
}

// ---------------------------------------------------------------------------
// KnowledgeBase
// ---------------------------------------------------------------------------

void KnowledgeBase::add(Axiom axiom) {
    axioms_.push_back(std::move(axiom));
}

void KnowledgeBase::add_rule(Rule rule) {
    rules_.push_back(std::move(rule));
}

void KnowledgeBase::set_traits(const std::string& concept_name, EventTraits traits) {
    traits_[concept_name] = traits;
}

void KnowledgeBase::add_transitive(const std::string& role) {
    auto r = Role::atomic(role);
    add(RoleInclusion{Role::compose({r, r}), role});
}

void KnowledgeBase::add_symmetric(const std::string& role) {
    add(RoleInclusion{Role::inverse(Role::atomic(role)), role});
}

void KnowledgeBase::add_inverse_of(const std::string& role, const std::string& inverse) {
    add(RoleInclusion{Role::inverse(Role::atomic(inverse)), role});
    add(RoleInclusion{Role::inverse(Role::atomic(role)), inverse});
}

void KnowledgeBase::finalize() {
    std::sort(axioms_.begin(), axioms_.end(), [](const Axiom& a, const Axiom& b) {
        return axiom_to_text(a) < axiom_to_text(b);
    });
    axioms_.erase(std::unique(axioms_.begin(), axioms_.end(), axiom_equal), axioms_.end());
    std::sort(rules_.begin(), rules_.end(),
              [](const Rule& a, const Rule& b) { return a.to_text() < b.to_text(); });
    rules_.erase(std::unique(rules_.begin(), rules_.end(),
                             [](const Rule& a, const Rule& b) {
                                 return a.to_text() == b.to_text();
                             }),
                 rules_.end());
}

std::vector<Axiom> KnowledgeBase::assertions() const {
    std::vector<Axiom> out;
    for (const auto& ax : axioms_)
        if (is_assertion(ax))
            out.push_back(ax);
    return out;
}

std::vector<std::string> KnowledgeBase::direct_subclasses(const std::string& name) const {
    std::vector<std::string> out;
    for (const auto& ax : axioms_) {
        if (const auto* g = std::get_if<Gci>(&ax)) {
            if (g->lhs->kind() == ConceptKind::Atomic && g->rhs->kind() == ConceptKind::Atomic &&
                g->rhs->name() == name && g->lhs->name() != name)
                out.push_back(g->lhs->name());
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

bool KnowledgeBase::operator==(const KnowledgeBase& other) const {
    if (concepts_ != other.concepts_ || roles_ != other.roles_ ||
        data_properties_ != other.data_properties_ || individuals_ != other.individuals_)
        return false;
    if (axioms_.size() != other.axioms_.size() || rules_.size() != other.rules_.size())
        return false;
    for (size_t i = 0; i < axioms_.size(); ++i)
        if (!axiom_equal(axioms_[i], other.axioms_[i]))
            return false;
    for (size_t i = 0; i < rules_.size(); ++i)
        if (rules_[i].to_text() != other.rules_[i].to_text())
            return false;
    return traits_ == other.traits_;
}

} // namespace fdl
