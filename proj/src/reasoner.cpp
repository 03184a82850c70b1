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

#include "fdl/reasoner.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <optional>

#include "fdl/errors.hpp"

namespace fdl {

namespace {

// Composite hash-map keys; '\x1f' cannot occur in identifiers or values
// produced by the grammar's escape rules. Values may contain anything, so
// data keys escape it defensively.
std::string key2(const std::string& a, const std::string& b) {
    return a + '\x1f' + b;
}

const std::vector<std::string> kEmptyStrings;
const std::vector<std::pair<std::string, std::string>> kEmptyPairs;

} // namespace

bool Fact::operator<(const Fact& o) const {
    if (kind != o.kind)
        return kind < o.kind;
    if (predicate != o.predicate)
        return predicate < o.predicate;
    if (subject != o.subject)
        return subject < o.subject;
    return object < o.object;
}

std::string Fact::to_text() const {
    switch (kind) {
    case FactKind::Concept:
        return predicate + "(" + subject + ")";
    case FactKind::Role:
        return predicate + "(" + subject + ", " + object + ")";
    case FactKind::Data:
        return predicate + "(" + subject + ", \"" + object + "\")";
    case FactKind::Violation:
        return "violation[" + predicate + "](" + subject + ")";
    }
    return {};
}

std::size_t fact_cap_from_env(std::size_t fallback) {
    const char* v = std::getenv("FORENSIC_DL_FACT_CAP");
    if (!v || !*v)
        return fallback;
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(v, &end, 10);
    if (end == v || *end != '\0' || parsed == 0)
        return fallback;
    return static_cast<std::size_t>(parsed);
}

// ---------------------------------------------------------------------------
// Closure accessors
// ---------------------------------------------------------------------------

bool Closure::has_concept(const std::string& concept_name, const std::string& individual) const {
    return fact_keys_.count("c\x1f" + key2(concept_name, individual)) > 0;
}

bool Closure::has_role(const std::string& role, const std::string& subject,
                       const std::string& object) const {
    return fact_keys_.count("r\x1f" + key2(role, key2(subject, object))) > 0;
}

bool Closure::has_data(const std::string& property, const std::string& subject,
                       const std::string& value) const {
    return fact_keys_.count("d\x1f" + key2(property, key2(subject, value))) > 0;
}

const std::vector<std::string>& Closure::concept_members(const std::string& concept_name) const {
    auto it = concept_members_.find(concept_name);
    return it == concept_members_.end() ? kEmptyStrings : it->second;
}

const std::vector<std::string>& Closure::role_objects(const std::string& role,
                                                      const std::string& subject) const {
    auto it = role_by_subject_.find(key2(role, subject));
    return it == role_by_subject_.end() ? kEmptyStrings : it->second;
}

const std::vector<std::string>& Closure::role_subjects(const std::string& role,
                                                       const std::string& object) const {
    auto it = role_by_object_.find(key2(role, object));
    return it == role_by_object_.end() ? kEmptyStrings : it->second;
}

const std::vector<std::string>& Closure::data_values(const std::string& property,
                                                     const std::string& subject) const {
    auto it = data_by_subject_.find(key2(property, subject));
    return it == data_by_subject_.end() ? kEmptyStrings : it->second;
}

const std::vector<std::string>& Closure::data_subjects(const std::string& property,
                                                       const std::string& value) const {
    auto it = data_by_value_.find(key2(property, value));
    return it == data_by_value_.end() ? kEmptyStrings : it->second;
}

bool Closure::contains(const Fact& f) const {
    switch (f.kind) {
    case FactKind::Concept:
        return has_concept(f.predicate, f.subject);
    case FactKind::Role:
        return has_role(f.predicate, f.subject, f.object);
    case FactKind::Data:
        return has_data(f.predicate, f.subject, f.object);
    case FactKind::Violation:
        return fact_keys_.count("v\x1f" + key2(f.predicate, f.subject)) > 0;
    }
    return false;
}

const std::pair<int, std::vector<Fact>>* Closure::derivation_of(const Fact& f) const {
    auto it = derivations_.find(f.to_text());
    return it == derivations_.end() ? nullptr : &it->second;
}

// ---------------------------------------------------------------------------
// Materializer
// ---------------------------------------------------------------------------

class Materializer {
public:
    Materializer(const NormalizedProgram& program, const MaterializeOptions& options)
        : program_(program), options_(options) {
        build_plans();
    }

    Closure run(const std::vector<Axiom>& assertions) {
        seed(assertions);

        // Universe is fixed up front: no rule invents individuals, so only
        // assertion constants, declared extras and head constants can occur.
        for (const auto& ind : options_.extra_individuals)
            closure_.universe_.insert(ind);
        for (const auto& rule : program_.rules) {
            if (!rule.head.x.is_var())
                closure_.universe_.insert(rule.head.x.value);
            if (rule.head.kind == PredKind::Role && !rule.head.y.is_var())
                closure_.universe_.insert(rule.head.y.value);
        }

        // First round: naive evaluation over the seed facts, covering rules
        // whose bodies touch only the static universe. Later rounds are
        // semi-naive over the previous round's delta.
        std::vector<Fact> delta;
        for (std::size_t i = 0; i < program_.rules.size(); ++i)
            evaluate_rule(static_cast<int>(i), nullptr, delta);
        while (!delta.empty()) {
            std::vector<Fact> next;
            for (std::size_t i = 0; i < program_.rules.size(); ++i)
                evaluate_rule(static_cast<int>(i), &delta, next);
            delta = std::move(next);
        }
        return std::move(closure_);
    }

private:
    const NormalizedProgram& program_;
    const MaterializeOptions& options_;
    Closure closure_;

    // Facts found during a rule walk are buffered and only inserted after the
    // walk finishes: insertion mutates the index vectors the join iterates.
    struct Pending {
        Fact fact;
        std::vector<Fact> premises;
    };
    std::vector<Pending> pending_;
    std::unordered_set<std::string> pending_keys_;

    // Join plans: the logical body order is fixed by provenance, but the
    // evaluation order matters a great deal (a rule like the same-street one
    // starts with two unconstrained unary atoms and goes quadratic if walked
    // as written). For every rule and pivot choice, greedily order the
    // remaining atoms to prefer fully bound checks, then atoms with the most
    // bound variables, then binary atoms over unary ones.
    // plans_[rule][pivot + 1] is the atom visiting order with that pivot
    // bound first (pivot -1 = plain naive evaluation).
    std::vector<std::vector<std::vector<int>>> plans_;

    static void collect_vars(const ProgramAtom& atom, std::set<int>& vars) {
        if (atom.x.is_var())
            vars.insert(atom.x.var);
        if ((atom.kind == PredKind::Role || atom.kind == PredKind::Data) && atom.y.is_var())
            vars.insert(atom.y.var);
    }

    static std::vector<int> greedy_order(const ProgramRule& rule, int pivot) {
        std::set<int> bound;
        std::vector<int> order;
        std::vector<bool> used(rule.body.size(), false);
        if (pivot >= 0) {
            used[pivot] = true;
            collect_vars(rule.body[pivot], bound);
        }
        for (std::size_t step = 0; step < rule.body.size(); ++step) {
            int best = -1;
            long best_key = -1;
            for (std::size_t i = 0; i < rule.body.size(); ++i) {
                if (used[i])
                    continue;
                const ProgramAtom& atom = rule.body[i];
                std::set<int> vars;
                collect_vars(atom, vars);
                long bound_count = 0;
                for (int v : vars)
                    if (bound.count(v))
                        ++bound_count;
                bool fully_bound = bound_count == static_cast<long>(vars.size());
                bool binary = atom.kind == PredKind::Role || atom.kind == PredKind::Data;
                // Rank: fully-bound checks, then by bound-variable count,
                // then binary atoms; favour earlier atoms on ties.
                long key = (fully_bound ? 1000 : 0) + bound_count * 10 + (binary ? 1 : 0);
                if (key > best_key) {
                    best_key = key;
                    best = static_cast<int>(i);
                }
            }
            if (best < 0)
                break;
            used[best] = true;
            order.push_back(best);
            collect_vars(rule.body[best], bound);
        }
        return order;
    }

    void build_plans() {
        plans_.resize(program_.rules.size());
        for (std::size_t r = 0; r < program_.rules.size(); ++r) {
            const ProgramRule& rule = program_.rules[r];
            plans_[r].resize(rule.body.size() + 1);
            for (int pivot = -1; pivot < static_cast<int>(rule.body.size()); ++pivot)
                plans_[r][pivot + 1] = greedy_order(rule, pivot);
        }
    }

    [[noreturn]] void cap_exceeded() {
        throw ResourceLimitError("derived-fact cap of " + std::to_string(options_.fact_cap) +
                                 " exceeded (set FORENSIC_DL_FACT_CAP to raise it)");
    }

    bool add_fact(Fact f, int rule_index, const std::vector<Fact>* premises,
                  std::vector<Fact>* delta_out) {
        std::string k;
        switch (f.kind) {
        case FactKind::Concept:
            k = "c\x1f" + key2(f.predicate, f.subject);
            break;
        case FactKind::Role:
            k = "r\x1f" + key2(f.predicate, key2(f.subject, f.object));
            break;
        case FactKind::Data:
            k = "d\x1f" + key2(f.predicate, key2(f.subject, f.object));
            break;
        case FactKind::Violation:
            k = "v\x1f" + key2(f.predicate, f.subject);
            break;
        }
        if (!closure_.fact_keys_.insert(k).second)
            return false;
        if (closure_.facts_in_order_.size() + 1 > options_.fact_cap)
            cap_exceeded();

        switch (f.kind) {
        case FactKind::Concept:
            closure_.concept_members_[f.predicate].push_back(f.subject);
            closure_.universe_.insert(f.subject);
            break;
        case FactKind::Role:
            closure_.role_pairs_[f.predicate].emplace_back(f.subject, f.object);
            closure_.role_by_subject_[key2(f.predicate, f.subject)].push_back(f.object);
            closure_.role_by_object_[key2(f.predicate, f.object)].push_back(f.subject);
            closure_.universe_.insert(f.subject);
            closure_.universe_.insert(f.object);
            break;
        case FactKind::Data:
            closure_.data_pairs_[f.predicate].emplace_back(f.subject, f.object);
            closure_.data_by_subject_[key2(f.predicate, f.subject)].push_back(f.object);
            closure_.data_by_value_[key2(f.predicate, f.object)].push_back(f.subject);
            closure_.universe_.insert(f.subject);
            break;
        case FactKind::Violation:
            closure_.violations_.push_back({f.predicate, f.subject});
            break;
        }
        if (rule_index >= 0 && premises)
            closure_.derivations_.emplace(f.to_text(), std::make_pair(rule_index, *premises));
        if (delta_out)
            delta_out->push_back(f);
        closure_.facts_in_order_.push_back(std::move(f));
        return true;
    }

    void seed_concept(const std::string& individual, const ConceptRef& expr,
                      const std::string& context, std::vector<Fact>& out) {
        switch (expr->kind()) {
        case ConceptKind::Atomic:
            out.push_back(Fact::cls(expr->name(), individual));
            return;
        case ConceptKind::Top:
            closure_.universe_.insert(individual);
            return;
        case ConceptKind::And:
            for (const auto& m : expr->members())
                seed_concept(individual, m, context, out);
            return;
        case ConceptKind::Exists: {
            // Only nominal fillers have a named witness to assert.
            if (expr->inner()->kind() == ConceptKind::Nominal) {
                const RoleRef& role = expr->role();
                if (role->kind() == RoleKind::Atomic) {
                    out.push_back(Fact::role(role->name(), individual, expr->inner()->name()));
                    return;
                }
                if (role->kind() == RoleKind::Inverse) {
                    out.push_back(Fact::role(role->name(), expr->inner()->name(), individual));
                    return;
                }
            }
            break;
        }
        case ConceptKind::Bottom:
            out.push_back({FactKind::Violation, context, individual, {}});
            return;
        default:
            break;
        }
        throw UnsupportedConstructError("assertion '" + context +
                                        "' cannot be decomposed into facts");
    }

    void seed(const std::vector<Axiom>& assertions) {
        for (const auto& ax : assertions) {
            std::vector<Fact> facts;
            if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
                seed_concept(ca->individual, ca->expr, axiom_to_text(ax), facts);
            } else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
                facts.push_back(Fact::role(ra->role, ra->subject, ra->object));
            } else if (const auto* da = std::get_if<DataAssertion>(&ax)) {
                facts.push_back(Fact::data(da->property, da->subject, da->value));
            } else {
                continue; // TBox axioms live in the program
            }
            for (auto& f : facts)
                add_fact(std::move(f), -1, nullptr, nullptr);
        }
    }

    // --- join machinery ----------------------------------------------------

    struct Bindings {
        std::vector<std::optional<std::string>> slots;

        const std::string* get(int var) const {
            if (var < 0 || var >= static_cast<int>(slots.size()) || !slots[var])
                return nullptr;
            return &*slots[var];
        }
    };

    static int max_var(const ProgramRule& rule) {
        int m = -1;
        auto upd = [&m](const PTerm& t) {
            if (t.is_var())
                m = std::max(m, t.var);
        };
        for (const auto& a : rule.body) {
            upd(a.x);
            upd(a.y);
        }
        upd(rule.head.x);
        upd(rule.head.y);
        return m;
    }

    // Attempts to unify `term` with `value` under `b`.
    static bool unify(const PTerm& term, const std::string& value, Bindings& b,
                      std::vector<int>& trail) {
        if (!term.is_var())
            return term.value == value;
        if (const std::string* bound = b.get(term.var))
            return *bound == value;
        b.slots[term.var] = value;
        trail.push_back(term.var);
        return true;
    }

    static void undo(Bindings& b, std::vector<int>& trail, std::size_t mark) {
        while (trail.size() > mark) {
            b.slots[trail.back()].reset();
            trail.pop_back();
        }
    }

    // Enumerate matches of `atom` against the current closure, extending
    // bindings; calls `next` for every match.
    template <typename Fn>
    void match_atom(const ProgramAtom& atom, Bindings& b, std::vector<int>& trail, Fn&& next) {
        std::size_t mark = trail.size();
        switch (atom.kind) {
        case PredKind::Any: {
            if (const std::string* s = atom.x.is_var() ? b.get(atom.x.var) : &atom.x.value) {
                if (closure_.universe_.count(*s))
                    next();
                return;
            }
            for (const auto& ind : closure_.universe_) {
                if (unify(atom.x, ind, b, trail))
                    next();
                undo(b, trail, mark);
            }
            return;
        }
        case PredKind::Concept: {
            const std::string* s = atom.x.is_var() ? b.get(atom.x.var) : &atom.x.value;
            if (s) {
                if (closure_.has_concept(atom.predicate, *s))
                    next();
                return;
            }
            for (const auto& ind : closure_.concept_members(atom.predicate)) {
                if (unify(atom.x, ind, b, trail))
                    next();
                undo(b, trail, mark);
            }
            return;
        }
        case PredKind::Role:
        case PredKind::Data: {
            bool is_role = atom.kind == PredKind::Role;
            const std::string* s = atom.x.is_var() ? b.get(atom.x.var) : &atom.x.value;
            const std::string* o = atom.y.is_var() ? b.get(atom.y.var) : &atom.y.value;
            if (s && o) {
                bool hit = is_role ? closure_.has_role(atom.predicate, *s, *o)
                                   : closure_.has_data(atom.predicate, *s, *o);
                if (hit)
                    next();
                return;
            }
            if (s) {
                const auto& objs = is_role ? closure_.role_objects(atom.predicate, *s)
                                           : closure_.data_values(atom.predicate, *s);
                for (const auto& obj : objs) {
                    if (unify(atom.y, obj, b, trail))
                        next();
                    undo(b, trail, mark);
                }
                return;
            }
            if (o) {
                const auto& subjects = is_role ? closure_.role_subjects(atom.predicate, *o)
                                               : closure_.data_subjects(atom.predicate, *o);
                for (const auto& subj : subjects) {
                    if (unify(atom.x, subj, b, trail))
                        next();
                    undo(b, trail, mark);
                }
                return;
            }
            const auto& index = is_role ? closure_.role_pairs_ : closure_.data_pairs_;
            auto it = index.find(atom.predicate);
            if (it == index.end())
                return;
            for (const auto& pr : it->second) {
                std::size_t inner = trail.size();
                if (unify(atom.x, pr.first, b, trail) && unify(atom.y, pr.second, b, trail))
                    next();
                undo(b, trail, inner);
            }
            return;
        }
        case PredKind::Violation:
            return; // violations never occur in bodies
        }
    }

    bool fact_matches_atom(const ProgramAtom& atom, const Fact& f, Bindings& b,
                           std::vector<int>& trail) {
        switch (atom.kind) {
        case PredKind::Concept:
            if (f.kind != FactKind::Concept || f.predicate != atom.predicate)
                return false;
            return unify(atom.x, f.subject, b, trail);
        case PredKind::Role:
            if (f.kind != FactKind::Role || f.predicate != atom.predicate)
                return false;
            return unify(atom.x, f.subject, b, trail) && unify(atom.y, f.object, b, trail);
        case PredKind::Data:
            if (f.kind != FactKind::Data || f.predicate != atom.predicate)
                return false;
            return unify(atom.x, f.subject, b, trail) && unify(atom.y, f.object, b, trail);
        default:
            return false;
        }
    }

    // Evaluates one rule. With `delta`, at least one body atom must match a
    // delta fact (iterated over every pivot position); without, plain naive
    // evaluation. New facts go to `out`.
    void evaluate_rule(int rule_index, const std::vector<Fact>* delta, std::vector<Fact>& out) {
        const ProgramRule& rule = program_.rules[rule_index];
        Bindings b;
        b.slots.resize(static_cast<std::size_t>(max_var(rule)) + 1);
        std::vector<int> trail;

        auto derive = [&]() {
            auto term_value = [&](const PTerm& t) {
                return t.is_var() ? *b.get(t.var) : t.value;
            };
            Fact f;
            switch (rule.head.kind) {
            case PredKind::Concept:
                f = Fact::cls(rule.head.predicate, term_value(rule.head.x));
                break;
            case PredKind::Role:
                f = Fact::role(rule.head.predicate, term_value(rule.head.x),
                               term_value(rule.head.y));
                break;
            case PredKind::Violation:
                f = Fact{FactKind::Violation, rule.head.predicate, term_value(rule.head.x), {}};
                break;
            case PredKind::Data:
            case PredKind::Any:
                return; // not derivable heads
            }
            if (closure_.contains(f) || !pending_keys_.insert(f.to_text()).second)
                return;
            std::vector<Fact> premises;
            premises.reserve(rule.body.size());
            for (const auto& atom : rule.body) {
                if (atom.kind == PredKind::Any)
                    continue;
                Fact p;
                switch (atom.kind) {
                case PredKind::Concept:
                    p = Fact::cls(atom.predicate, term_value(atom.x));
                    break;
                case PredKind::Role:
                    p = Fact::role(atom.predicate, term_value(atom.x), term_value(atom.y));
                    break;
                case PredKind::Data:
                    p = Fact::data(atom.predicate, term_value(atom.x), term_value(atom.y));
                    break;
                default:
                    continue;
                }
                premises.push_back(std::move(p));
            }
            pending_.push_back({std::move(f), std::move(premises)});
        };

        // Depth-first join following the precomputed plan for this pivot.
        const std::vector<int>* plan = nullptr;
        std::function<void(std::size_t)> walk = [&](std::size_t step) {
            if (step == plan->size()) {
                derive();
                return;
            }
            match_atom(rule.body[(*plan)[step]], b, trail, [&] { walk(step + 1); });
        };

        if (!delta) {
            plan = &plans_[rule_index][0];
            walk(0);
        } else {
            for (std::size_t pivot = 0; pivot < rule.body.size(); ++pivot) {
                const ProgramAtom& atom = rule.body[pivot];
                if (atom.kind == PredKind::Any || atom.kind == PredKind::Violation)
                    continue;
                plan = &plans_[rule_index][pivot + 1];
                for (const Fact& f : *delta) {
                    std::size_t mark = trail.size();
                    if (fact_matches_atom(atom, f, b, trail))
                        walk(0);
                    undo(b, trail, mark);
                }
            }
        }

        // Flush: safe to touch the indexes now that no join is running.
        for (auto& p : pending_)
            add_fact(std::move(p.fact), rule_index, &p.premises, &out);
        pending_.clear();
        pending_keys_.clear();
    }
};

Closure materialize(const NormalizedProgram& program, const std::vector<Axiom>& assertions,
                    const MaterializeOptions& options) {
    Materializer m(program, options);
    return m.run(assertions);
}

ConsistencyReport is_consistent(const Closure& closure) {
    ConsistencyReport report;
    report.violations = closure.violations();
    report.consistent = report.violations.empty();
    return report;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

bool instance_of(const Closure& closure, const std::string& individual, const ConceptRef& query) {
    switch (query->kind()) {
    case ConceptKind::Atomic:
        return closure.has_concept(query->name(), individual);
    case ConceptKind::Top:
        return true;
    case ConceptKind::Nominal:
        return individual == query->name();
    case ConceptKind::And:
        for (const auto& m : query->members())
            if (!instance_of(closure, individual, m))
                return false;
        return true;
    case ConceptKind::Or:
        for (const auto& m : query->members())
            if (instance_of(closure, individual, m))
                return true;
        return false;
    case ConceptKind::Exists: {
        const RoleRef& role = query->role();
        const ConceptRef& filler = query->inner();
        switch (role->kind()) {
        case RoleKind::Atomic: {
            for (const auto& obj : closure.role_objects(role->name(), individual))
                if (instance_of(closure, obj, filler))
                    return true;
            return false;
        }
        case RoleKind::Inverse: {
            for (const auto& subj : closure.role_subjects(role->name(), individual))
                if (instance_of(closure, subj, filler))
                    return true;
            return false;
        }
        case RoleKind::Compose:
            throw UnsupportedQueryError("role composition is not allowed in queries: " +
                                        query->to_text());
        }
        return false;
    }
    case ConceptKind::Bottom:
    case ConceptKind::Not:
    case ConceptKind::Forall:
        throw UnsupportedQueryError("query uses a construct outside the query fragment: " +
                                    query->to_text());
    }
    return false;
}

std::set<std::string> all_instances(const Closure& closure, const ConceptRef& query) {
    std::set<std::string> out;
    for (const auto& ind : closure.universe())
        if (instance_of(closure, ind, query))
            out.insert(ind);
    return out;
}

bool is_subsumed(const NormalizedProgram& program, const ConceptRef& lhs, const std::string& rhs) {
    auto bodies = compile_concept_to_bodies(lhs, lhs->to_text());
    // Every disjunct of the left side must entail the right side.
    for (const auto& body : bodies) {
        std::vector<Axiom> assertions;
        std::vector<std::string> fresh;
        auto name_of = [&fresh](const PTerm& t) {
            if (!t.is_var())
                return t.value;
            return "_q" + std::to_string(t.var);
        };
        for (const auto& atom : body) {
            switch (atom.kind) {
            case PredKind::Concept:
                assertions.push_back(ConceptAssertion{name_of(atom.x), Concept::atomic(atom.predicate)});
                break;
            case PredKind::Role:
                assertions.push_back(RoleAssertion{name_of(atom.x), name_of(atom.y), atom.predicate});
                break;
            case PredKind::Any:
                fresh.push_back(name_of(atom.x));
                break;
            default:
                break;
            }
        }
        fresh.push_back("_q0");
        MaterializeOptions opts;
        opts.extra_individuals = fresh;
        Closure closure = materialize(program, assertions, opts);
        if (!closure.has_concept(rhs, "_q0"))
            return false;
    }
    return true;
}

bool is_subsumed(const KnowledgeBase& kb, const ConceptRef& lhs, const std::string& rhs) {
    return is_subsumed(normalize_kb(kb), lhs, rhs);
}

// ---------------------------------------------------------------------------
// Explanations
// ---------------------------------------------------------------------------

namespace {

DerivationTree build_tree(const Closure& closure, const NormalizedProgram& program,
                          const Fact& fact) {
    DerivationTree node;
    node.fact = fact;
    const auto* der = closure.derivation_of(fact);
    if (!der)
        return node; // asserted leaf
    node.rule = program.rules[der->first].provenance;
    for (const auto& premise : der->second)
        node.premises.push_back(build_tree(closure, program, premise));
    return node;
}

} // namespace

DerivationTree explain(const Closure& closure, const NormalizedProgram& program,
                       const Fact& fact) {
    if (!closure.contains(fact))
        throw NotDerivedError("fact not in closure: " + fact.to_text());
    return build_tree(closure, program, fact);
}

} // namespace fdl
