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

#include "fdl/normalize.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "fdl/errors.hpp"

namespace fdl {

std::string ProgramAtom::to_text() const {
    auto term = [](const PTerm& t) {
        return t.is_var() ? "?v" + std::to_string(t.var) : t.value;
    };
    switch (kind) {
    case PredKind::Concept:
        return predicate + "(" + term(x) + ")";
    case PredKind::Role:
        return predicate + "(" + term(x) + ", " + term(y) + ")";
    case PredKind::Data:
        return predicate + "(" + term(x) + ", " + term(y) + ")";
    case PredKind::Violation:
        return "violation[" + predicate + "](" + term(x) + ")";
    case PredKind::Any:
        return "thing(" + term(x) + ")";
    }
    return {};
}

std::string ProgramRule::to_text() const {
    std::string out = head.to_text() + " <- ";
    for (size_t i = 0; i < body.size(); ++i) {
        if (i)
            out += ", ";
        out += body[i].to_text();
    }
    if (body.empty())
        out += "true";
    return out;
}

bool ProgramRule::range_restricted() const {
    auto bound = [this](const PTerm& t) {
        if (!t.is_var())
            return true;
        for (const auto& a : body) {
            if (a.x.is_var() && a.x.var == t.var)
                return true;
            if ((a.kind == PredKind::Role || a.kind == PredKind::Data) && a.y.is_var() &&
                a.y.var == t.var)
                return true;
        }
        return false;
    };
    if (!bound(head.x))
        return false;
    if (head.kind == PredKind::Role || head.kind == PredKind::Data)
        return bound(head.y);
    return true;
}

std::string NormalizedProgram::to_text() const {
    std::vector<std::string> lines;
    lines.reserve(rules.size());
    for (const auto& r : rules)
        lines.push_back(r.to_text());
    std::sort(lines.begin(), lines.end());
    std::string out;
    for (const auto& l : lines)
        out += l + "\n";
    return out;
}

namespace {

// A conjunctive query under construction: body atoms over numbered variables.
struct Conj {
    std::vector<ProgramAtom> atoms;
};

struct Compiler {
    int next_var = 0;
    const std::string& axiom_text;

    explicit Compiler(const std::string& text) : axiom_text(text) {}

    [[noreturn]] void unsupported(const std::string& what) const {
        throw UnsupportedConstructError("unsupported construct in axiom '" + axiom_text +
                                        "': " + what);
    }

    int fresh() { return next_var++; }

    // Appends the atoms for a role step from variable `from`; returns the
    // term the filler attaches to. Compositions never occur inside concepts.
    void role_step(const RoleRef& role, int from, const PTerm& to, Conj& conj) const {
        switch (role->kind()) {
        case RoleKind::Atomic:
            conj.atoms.push_back({PredKind::Role, role->name(), PTerm::variable(from), to});
            break;
        case RoleKind::Inverse:
            conj.atoms.push_back({PredKind::Role, role->name(), to, PTerm::variable(from)});
            break;
        case RoleKind::Compose:
            unsupported("role composition inside a concept restriction");
        }
    }

    // Disjunctive normal form of a positive-existential concept rooted at
    // variable `v`: each returned Conj is one rule body.
    std::vector<Conj> compile(const ConceptRef& c, int v) {
        switch (c->kind()) {
        case ConceptKind::Atomic:
            return {{std::vector<ProgramAtom>{
                {PredKind::Concept, c->name(), PTerm::variable(v), {}}}}};
        case ConceptKind::Top:
            return {{}}; // no constraint; root binding handled by caller
        case ConceptKind::And: {
            std::vector<Conj> acc = {{}};
            for (const auto& m : c->members()) {
                std::vector<Conj> next;
                // Disjuncts multiply out; each member extends every branch.
                // Fresh variables inside members must stay distinct across
                // branches of *other* members, which holds because fresh()
                // is shared and monotone.
                std::vector<Conj> mem = compile(m, v);
                for (const auto& left : acc) {
                    for (const auto& right : mem) {
                        Conj merged = left;
                        merged.atoms.insert(merged.atoms.end(), right.atoms.begin(),
                                            right.atoms.end());
                        next.push_back(std::move(merged));
                    }
                }
                acc = std::move(next);
            }
            return acc;
        }
        case ConceptKind::Or: {
            std::vector<Conj> acc;
            for (const auto& m : c->members()) {
                auto branches = compile(m, v);
                acc.insert(acc.end(), branches.begin(), branches.end());
            }
            return acc;
        }
        case ConceptKind::Exists: {
            if (c->inner()->kind() == ConceptKind::Nominal) {
                Conj conj;
                role_step(c->role(), v, PTerm::constant(c->inner()->name()), conj);
                return {conj};
            }
            std::vector<Conj> out;
            for (auto& filler : compile_exists_filler(c, v))
                out.push_back(std::move(filler));
            return out;
        }
        case ConceptKind::Nominal:
            unsupported("nominal outside an existential filler");
        case ConceptKind::Not:
            unsupported("negation on the left-hand side");
        case ConceptKind::Forall:
            unsupported("universal restriction on the left-hand side");
        case ConceptKind::Bottom:
            unsupported("Nothing on the left-hand side");
        }
        return {};
    }

    std::vector<Conj> compile_exists_filler(const ConceptRef& c, int v) {
        // Each disjunct of the filler gets its own witness variable so that
        // variables never leak across disjuncts.
        std::vector<Conj> out;
        std::vector<Conj> filler_dnf;
        int w = fresh();
        filler_dnf = compile(c->inner(), w);
        for (auto& f : filler_dnf) {
            Conj conj;
            role_step(c->role(), v, PTerm::variable(w), conj);
            conj.atoms.insert(conj.atoms.end(), f.atoms.begin(), f.atoms.end());
            out.push_back(std::move(conj));
        }
        return out;
    }
};

// True when the concept is a pure existential tree (used to spot RHS
// existentials that become check-only records).
bool contains_exists(const ConceptRef& c) {
    switch (c->kind()) {
    case ConceptKind::Exists:
        return true;
    case ConceptKind::And:
    case ConceptKind::Or: {
        for (const auto& m : c->members())
            if (contains_exists(m))
                return true;
        return false;
    }
    case ConceptKind::Not:
    case ConceptKind::Forall:
        return contains_exists(c->inner());
    default:
        return false;
    }
}

void ensure_root_bound(Conj& conj, int root) {
    for (const auto& a : conj.atoms) {
        if (a.x.is_var() && a.x.var == root)
            return;
        if ((a.kind == PredKind::Role || a.kind == PredKind::Data) && a.y.is_var() &&
            a.y.var == root)
            return;
    }
    conj.atoms.insert(conj.atoms.begin(), {PredKind::Any, "", PTerm::variable(root), {}});
}

void compile_gci(const ConceptRef& lhs, const ConceptRef& rhs, const std::string& text,
                 NormalizedProgram& program) {
    Compiler compiler(text);
    int root = compiler.fresh();

    // Split a conjunctive right side into independent components.
    std::vector<ConceptRef> rhs_parts;
    if (rhs->kind() == ConceptKind::And)
        rhs_parts = rhs->members();
    else
        rhs_parts = {rhs};

    for (const auto& part : rhs_parts) {
        switch (part->kind()) {
        case ConceptKind::Top:
            continue; // trivially true
        case ConceptKind::Atomic: {
            for (auto conj : compiler.compile(lhs, root)) {
                ensure_root_bound(conj, root);
                ProgramRule rule;
                rule.body = std::move(conj.atoms);
                rule.head = {PredKind::Concept, part->name(), PTerm::variable(root), {}};
                rule.provenance = text;
                program.rules.push_back(std::move(rule));
            }
            break;
        }
        case ConceptKind::Exists: {
            // Not materialized: no paper inference relies on invented
            // witnesses and skolemization can diverge with transitive roles.
            program.check_only.push_back({lhs, part, text});
            break;
        }
        case ConceptKind::Bottom: {
            for (auto conj : compiler.compile(lhs, root)) {
                ensure_root_bound(conj, root);
                ProgramRule rule;
                rule.body = std::move(conj.atoms);
                rule.head = {PredKind::Violation, text, PTerm::variable(root), {}};
                rule.provenance = text;
                program.rules.push_back(std::move(rule));
            }
            break;
        }
        case ConceptKind::Not: {
            // C <= not D is the disjointness pattern: derive a violation
            // whenever both sides hold.
            ConceptRef both = Concept::conj({lhs, part->inner()});
            for (auto conj : compiler.compile(both, root)) {
                ensure_root_bound(conj, root);
                ProgramRule rule;
                rule.body = std::move(conj.atoms);
                rule.head = {PredKind::Violation, text, PTerm::variable(root), {}};
                rule.provenance = text;
                program.rules.push_back(std::move(rule));
            }
            break;
        }
        case ConceptKind::Or:
            compiler.unsupported("disjunction on the right-hand side");
        case ConceptKind::Forall:
            compiler.unsupported("universal restriction on the right-hand side");
        case ConceptKind::And:
            compiler.unsupported("nested conjunction on the right-hand side");
        case ConceptKind::Nominal:
            compiler.unsupported("nominal on the right-hand side");
        }
    }
}

void compile_role_inclusion(const RoleInclusion& ri, const std::string& text,
                            NormalizedProgram& program) {
    ProgramRule rule;
    rule.provenance = text;
    rule.head = {PredKind::Role, ri.rhs, PTerm::variable(0), PTerm::variable(1)};
    switch (ri.lhs->kind()) {
    case RoleKind::Atomic:
        rule.body.push_back({PredKind::Role, ri.lhs->name(), PTerm::variable(0), PTerm::variable(1)});
        break;
    case RoleKind::Inverse:
        rule.body.push_back({PredKind::Role, ri.lhs->name(), PTerm::variable(1), PTerm::variable(0)});
        break;
    case RoleKind::Compose: {
        int from = 0;
        int hop = 2;
        const auto& parts = ri.lhs->parts();
        for (size_t i = 0; i < parts.size(); ++i) {
            int to = (i + 1 == parts.size()) ? 1 : hop++;
            const RoleRef& p = parts[i];
            switch (p->kind()) {
            case RoleKind::Atomic:
                rule.body.push_back(
                    {PredKind::Role, p->name(), PTerm::variable(from), PTerm::variable(to)});
                break;
            case RoleKind::Inverse:
                rule.body.push_back(
                    {PredKind::Role, p->name(), PTerm::variable(to), PTerm::variable(from)});
                break;
            case RoleKind::Compose:
                throw UnsupportedConstructError("unsupported construct in axiom '" + text +
                                                "': nested composition");
            }
            from = to;
        }
        break;
    }
    }
    program.rules.push_back(std::move(rule));
}

void compile_user_rule(const Rule& rule, const KnowledgeBase& kb, NormalizedProgram& program) {
    const std::string text = rule.to_text();

    // SameAs atoms compile to an equality join: unify the two terms by
    // rewriting one variable into the other (or into a constant).
    std::map<std::string, int> var_ids;
    int next_var = 0;

    auto var_term = [&](const std::string& name) {
        auto it = var_ids.find(name);
        if (it == var_ids.end())
            it = var_ids.emplace(name, next_var++).first;
        return PTerm::variable(it->second);
    };

    // Resolve SameAs unifications first.
    std::map<std::string, Term> subst; // var name -> term it equals
    std::function<Term(Term)> resolve = [&](Term t) {
        while (t.is_variable) {
            auto it = subst.find(t.text);
            if (it == subst.end())
                break;
            t = it->second;
        }
        return t;
    };
    for (const auto& atom : rule.body) {
        if (atom.kind != AtomKind::SameAs)
            continue;
        Term a = resolve(atom.a);
        Term b = resolve(atom.b);
        if (a.is_variable && b.is_variable && a.text == b.text)
            continue; // already unified
        if (a.is_variable)
            subst[a.text] = b;
        else if (b.is_variable)
            subst[b.text] = a;
        else if (a.text != b.text)
            throw UnsupportedConstructError("rule '" + text +
                                            "' equates two distinct constants and can never fire");
    }

    auto convert_term = [&](const Term& t) {
        Term r = resolve(t);
        return r.is_variable ? var_term(r.text) : PTerm::constant(r.text);
    };

    auto convert_atom = [&](const RuleAtom& a) {
        ProgramAtom out;
        switch (a.kind) {
        case AtomKind::Class:
            out = {PredKind::Concept, a.predicate, convert_term(a.a), {}};
            break;
        case AtomKind::Object:
            out = {PredKind::Role, a.predicate, convert_term(a.a), convert_term(a.b)};
            break;
        case AtomKind::Data:
            out = {PredKind::Data, a.predicate, convert_term(a.a), convert_term(a.b)};
            break;
        case AtomKind::SameAs:
            break; // dropped; handled via substitution
        }
        return out;
    };

    ProgramRule prule;
    prule.provenance = text;
    for (const auto& atom : rule.body) {
        if (atom.kind == AtomKind::SameAs)
            continue;
        prule.body.push_back(convert_atom(atom));
    }
    if (rule.head.kind == AtomKind::Data || rule.head.kind == AtomKind::SameAs)
        throw UnsupportedConstructError("rule '" + text + "': head must be a class or role atom");
    if (rule.head.kind == AtomKind::Class && !kb.is_declared_concept(rule.head.predicate))
        throw UnsupportedConstructError("rule '" + text + "': undeclared head concept");
    prule.head = convert_atom(rule.head);
    if (!prule.range_restricted())
        throw UnsupportedConstructError("rule '" + text + "' is not range-restricted");
    program.rules.push_back(std::move(prule));
}

} // namespace

std::vector<std::vector<ProgramAtom>> compile_concept_to_bodies(const ConceptRef& c,
                                                                const std::string& context) {
    Compiler compiler(context);
    int root = compiler.fresh();
    std::vector<std::vector<ProgramAtom>> out;
    for (auto conj : compiler.compile(c, root)) {
        ensure_root_bound(conj, root);
        out.push_back(std::move(conj.atoms));
    }
    return out;
}

NormalizedProgram normalize_kb(const KnowledgeBase& kb) {
    NormalizedProgram program;
    for (const auto& ax : kb.axioms()) {
        const std::string text = axiom_to_text(ax);
        if (const auto* g = std::get_if<Gci>(&ax)) {
            compile_gci(g->lhs, g->rhs, text, program);
        } else if (const auto* ri = std::get_if<RoleInclusion>(&ax)) {
            compile_role_inclusion(*ri, text, program);
        } else if (const auto* d = std::get_if<Disjointness>(&ax)) {
            compile_gci(Concept::conj({d->a, d->b}), Concept::bottom(), text, program);
        }
        // Assertions are inputs to materialization, not rules.
    }
    for (const auto& rule : kb.rules())
        compile_user_rule(rule, kb, program);
    return program;
}

namespace {

void collect_names(const ConceptRef& c, std::set<std::string>& concepts,
                   std::set<std::string>& roles, std::set<std::string>& individuals) {
    switch (c->kind()) {
    case ConceptKind::Atomic:
        concepts.insert(c->name());
        break;
    case ConceptKind::Nominal:
        individuals.insert(c->name());
        break;
    case ConceptKind::And:
    case ConceptKind::Or:
        for (const auto& m : c->members())
            collect_names(m, concepts, roles, individuals);
        break;
    case ConceptKind::Not:
        collect_names(c->inner(), concepts, roles, individuals);
        break;
    case ConceptKind::Exists:
    case ConceptKind::Forall: {
        const Role* r = c->role().get();
        if (r->kind() == RoleKind::Compose) {
            for (const auto& p : r->parts())
                roles.insert(p->name());
        } else {
            roles.insert(r->name());
        }
        collect_names(c->inner(), concepts, roles, individuals);
        break;
    }
    default:
        break;
    }
}

// Mirrors the forms materialization can decompose into facts.
bool assertable_concept(const ConceptRef& c) {
    switch (c->kind()) {
    case ConceptKind::Atomic:
    case ConceptKind::Top:
    case ConceptKind::Bottom:
        return true;
    case ConceptKind::And: {
        for (const auto& m : c->members())
            if (!assertable_concept(m))
                return false;
        return true;
    }
    case ConceptKind::Exists:
        return c->inner()->kind() == ConceptKind::Nominal &&
               c->role()->kind() != RoleKind::Compose;
    default:
        return false;
    }
}

bool nominal_placement_ok(const ConceptRef& c, bool as_exists_filler) {
    switch (c->kind()) {
    case ConceptKind::Nominal:
        return as_exists_filler;
    case ConceptKind::And:
    case ConceptKind::Or: {
        for (const auto& m : c->members())
            if (!nominal_placement_ok(m, false))
                return false;
        return true;
    }
    case ConceptKind::Not:
    case ConceptKind::Forall:
        return nominal_placement_ok(c->inner(), false);
    case ConceptKind::Exists:
        return nominal_placement_ok(c->inner(), true);
    default:
        return true;
    }
}

} // namespace

std::vector<ValidationIssue> validate_assertions(const KnowledgeBase& kb,
                                                 const std::vector<Axiom>& assertions) {
    std::vector<ValidationIssue> issues;
    for (const auto& ax : assertions) {
        const std::string text = axiom_to_text(ax);
        std::set<std::string> cs, rs, is;
        if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
            collect_names(ca->expr, cs, rs, is);
            if (!assertable_concept(ca->expr))
                issues.push_back({ValidationIssue::Code::UnsupportedConstruct,
                                  "assertion cannot be decomposed into facts", text});
        } else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
            rs.insert(ra->role);
        } else if (const auto* da = std::get_if<DataAssertion>(&ax)) {
            if (!kb.is_declared_data_property(da->property))
                issues.push_back({ValidationIssue::Code::UndeclaredName,
                                  "undeclared data property '" + da->property + "'", text});
        }
        for (const auto& n : cs)
            if (!kb.is_declared_concept(n))
                issues.push_back({ValidationIssue::Code::UndeclaredName,
                                  "undeclared concept '" + n + "'", text});
        for (const auto& n : rs)
            if (!kb.is_declared_role(n))
                issues.push_back({ValidationIssue::Code::UndeclaredName,
                                  "undeclared role '" + n + "'", text});
    }
    return issues;
}

std::vector<ValidationIssue> validate_kb(const KnowledgeBase& kb) {
    std::vector<ValidationIssue> issues;

    auto undeclared = [&](const std::string& what, const std::string& name,
                          const std::string& stmt) {
        issues.push_back({ValidationIssue::Code::UndeclaredName,
                          "undeclared " + what + " '" + name + "'", stmt});
    };

    for (const auto& ax : kb.axioms()) {
        const std::string text = axiom_to_text(ax);
        std::set<std::string> cs, rs, is;

        if (const auto* g = std::get_if<Gci>(&ax)) {
            collect_names(g->lhs, cs, rs, is);
            collect_names(g->rhs, cs, rs, is);
            if (!nominal_placement_ok(g->lhs, false) || !nominal_placement_ok(g->rhs, false))
                issues.push_back({ValidationIssue::Code::MalformedExpression,
                                  "nominal outside an existential filler", text});
        } else if (const auto* ri = std::get_if<RoleInclusion>(&ax)) {
            rs.insert(ri->rhs);
            if (ri->lhs->kind() == RoleKind::Compose) {
                for (const auto& p : ri->lhs->parts())
                    rs.insert(p->name());
            } else {
                rs.insert(ri->lhs->name());
            }
        } else if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
            collect_names(ca->expr, cs, rs, is);
            is.insert(ca->individual);
            if (!assertable_concept(ca->expr))
                issues.push_back({ValidationIssue::Code::UnsupportedConstruct,
                                  "assertion cannot be decomposed into facts", text});
        } else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
            rs.insert(ra->role);
            is.insert(ra->subject);
            is.insert(ra->object);
        } else if (const auto* da = std::get_if<DataAssertion>(&ax)) {
            is.insert(da->subject);
            if (!kb.is_declared_data_property(da->property))
                undeclared("data property", da->property, text);
        } else if (const auto* dj = std::get_if<Disjointness>(&ax)) {
            collect_names(dj->a, cs, rs, is);
            collect_names(dj->b, cs, rs, is);
        }

        for (const auto& n : cs)
            if (!kb.is_declared_concept(n))
                undeclared("concept", n, text);
        for (const auto& n : rs)
            if (!kb.is_declared_role(n))
                undeclared("role", n, text);
        for (const auto& n : is)
            if (!kb.is_declared_individual(n))
                undeclared("individual", n, text);

        // Unsupported-construct preflight: try to compile just this axiom.
        try {
            NormalizedProgram scratch;
            if (const auto* g = std::get_if<Gci>(&ax))
                compile_gci(g->lhs, g->rhs, text, scratch);
            else if (const auto* ri = std::get_if<RoleInclusion>(&ax))
                compile_role_inclusion(*ri, text, scratch);
            else if (const auto* dj = std::get_if<Disjointness>(&ax))
                compile_gci(Concept::conj({dj->a, dj->b}), Concept::bottom(), text, scratch);
        } catch (const UnsupportedConstructError& e) {
            issues.push_back({ValidationIssue::Code::UnsupportedConstruct, e.what(), text});
        }
    }

    for (const auto& rule : kb.rules()) {
        const std::string text = rule.to_text();
        auto check_atom = [&](const RuleAtom& a) {
            switch (a.kind) {
            case AtomKind::Class:
                if (!kb.is_declared_concept(a.predicate))
                    undeclared("concept", a.predicate, text);
                break;
            case AtomKind::Object:
                if (!kb.is_declared_role(a.predicate))
                    undeclared("role", a.predicate, text);
                break;
            case AtomKind::Data:
                if (!kb.is_declared_data_property(a.predicate))
                    undeclared("data property", a.predicate, text);
                break;
            case AtomKind::SameAs:
                break;
            }
        };
        for (const auto& a : rule.body)
            check_atom(a);
        check_atom(rule.head);
        try {
            NormalizedProgram scratch;
            compile_user_rule(rule, kb, scratch);
        } catch (const UnsupportedConstructError& e) {
            issues.push_back({ValidationIssue::Code::UnsafeRule, e.what(), text});
        }
    }

    return issues;
}

} // namespace fdl
