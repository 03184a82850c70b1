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

#include "fdl/learner.hpp"

#include <algorithm>
#include <queue>
#include <unordered_set>

#include "fdl/errors.hpp"
#include "fdl/normalize.hpp"

namespace fdl {

std::vector<ConceptRef> refine(const ConceptRef& expr, const KnowledgeBase& kb,
                               const LearnerConfig& config) {
    std::vector<ConceptRef> out;
    auto keep = [&](ConceptRef c) {
        if (c->length() <= config.max_length)
            out.push_back(std::move(c));
    };

    switch (expr->kind()) {
    case ConceptKind::Top: {
        for (const auto& name : kb.concepts())
            keep(Concept::atomic(name));
        for (const auto& role : kb.roles())
            keep(Concept::exists(Role::atomic(role), Concept::top()));
        break;
    }
    case ConceptKind::Atomic: {
        for (const auto& sub : kb.direct_subclasses(expr->name()))
            keep(Concept::atomic(sub));
        break;
    }
    case ConceptKind::Exists: {
        for (auto& finer : refine(expr->inner(), kb, config))
            keep(Concept::exists(expr->role(), std::move(finer)));
        break;
    }
    default:
        break;
    }

    // Any expression narrows by conjoining a class name not already present.
    std::set<std::string> present;
    if (expr->kind() == ConceptKind::And) {
        for (const auto& m : expr->members())
            if (m->kind() == ConceptKind::Atomic)
                present.insert(m->name());
    } else if (expr->kind() == ConceptKind::Atomic) {
        present.insert(expr->name());
    }
    if (expr->kind() != ConceptKind::Top) {
        for (const auto& name : kb.concepts()) {
            if (present.count(name))
                continue;
            keep(Concept::conj({expr, Concept::atomic(name)}));
        }
    }

    // Canonical constructors may merge duplicates; drop repeats and the
    // unchanged expression itself.
    std::sort(out.begin(), out.end(), [](const ConceptRef& a, const ConceptRef& b) {
        return Concept::compare(*a, *b) < 0;
    });
    out.erase(std::unique(out.begin(), out.end(), concept_ref_equal), out.end());
    out.erase(std::remove_if(out.begin(), out.end(),
                             [&](const ConceptRef& c) { return concept_ref_equal(c, expr); }),
              out.end());
    return out;
}

double score(const ConceptRef& expr, const LearningProblem& problem, const Closure& background,
             const LearnerConfig& config) {
    long tp = 0, tn = 0;
    for (const auto& e : problem.population) {
        bool predicted = instance_of(background, e, expr);
        bool positive = problem.positives.count(e) > 0;
        if (predicted && positive)
            ++tp;
        else if (!predicted && !positive)
            ++tn;
    }
    double accuracy = problem.population.empty()
                          ? 0.0
                          : static_cast<double>(tp + tn) /
                                static_cast<double>(problem.population.size());
    return accuracy - config.length_penalty * expr->length();
}

namespace {

long positive_coverage(const ConceptRef& expr, const LearningProblem& problem,
                       const Closure& background) {
    long tp = 0;
    for (const auto& p : problem.positives)
        if (instance_of(background, p, expr))
            ++tp;
    return tp;
}

Closure materialize_background(const LearningProblem& problem) {
    NormalizedProgram program = normalize_kb(*problem.background);
    MaterializeOptions opts;
    opts.fact_cap = fact_cap_from_env();
    opts.extra_individuals.assign(problem.background->individuals().begin(),
                                  problem.background->individuals().end());
    return materialize(program, problem.background->assertions(), opts);
}

struct Candidate {
    ConceptRef expr;
    double score = 0.0;
    long seq = 0; // generation order; lower wins ties
};

std::vector<Hypothesis> search(const LearningProblem& problem, const Closure& background,
                               const LearnerConfig& config) {
    // Best-first frontier ordered by (score desc, generation order asc).
    auto frontier_less = [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score)
            return a.score < b.score; // max-heap by score
        return a.seq > b.seq;
    };
    std::priority_queue<Candidate, std::vector<Candidate>, decltype(frontier_less)> frontier(
        frontier_less);

    std::unordered_set<std::string> seen;
    std::vector<Candidate> scored;
    long seq = 0;

    ConceptRef top = Concept::top();
    double top_score = score(top, problem, background, config);
    seen.insert(top->to_text());
    frontier.push({top, top_score, seq++});

    int expansions = 0;
    while (!frontier.empty() && expansions < config.max_expansions) {
        Candidate current = frontier.top();
        frontier.pop();
        ++expansions;
        for (auto& child : refine(current.expr, *problem.background, config)) {
            if (!seen.insert(child->to_text()).second)
                continue;
            // Downward refinement only narrows an extension, so a node that
            // covers no positive can never recover any; drop it outright.
            if (positive_coverage(child, problem, background) == 0)
                continue;
            Candidate c{child, score(child, problem, background, config), seq++};
            scored.push_back(c);
            frontier.push(std::move(c));
        }
    }

    std::stable_sort(scored.begin(), scored.end(), [](const Candidate& a, const Candidate& b) {
        if (a.score != b.score)
            return a.score > b.score;
        return a.seq < b.seq;
    });

    std::vector<Hypothesis> out;
    for (const auto& c : scored) {
        if (c.score <= top_score)
            continue;
        out.push_back({c.expr, c.score, c.expr->length()});
        if (static_cast<int>(out.size()) >= config.max_hypotheses)
            break;
    }
    if (out.empty())
        throw NoHypothesisError("no hypothesis scored above Thing for target '" + problem.target +
                                "'");
    return out;
}

} // namespace

std::vector<Hypothesis> learn_gci(const LearningProblem& problem, const LearnerConfig& config) {
    if (problem.positives.empty())
        throw Error("learning problem for '" + problem.target + "' has no positive examples");
    Closure background = materialize_background(problem);
    return search(problem, background, config);
}

CrossValidation loo_cv(const LearningProblem& problem, const LearnerConfig& config) {
    if (problem.positives.size() < 2)
        throw Error("leave-one-out cross validation needs at least two positives");

    Closure background = materialize_background(problem);
    CrossValidation cv;
    int fold_index = 0;

    for (const auto& held_out : problem.positives) {
        FoldResult fold;
        fold.fold = fold_index++;
        fold.trainset = problem.positives;
        fold.trainset.erase(held_out);

        LearningProblem sub = problem;
        sub.positives = fold.trainset;

        ConceptRef best;
        try {
            best = search(sub, background, config).front().expr;
        } catch (const NoHypothesisError&) {
            best = nullptr;
        }

        if (best) {
            // Result set: instances of the hypothesis that are not in the
            // training set.
            for (const auto& e : problem.population) {
                if (fold.trainset.count(e))
                    continue;
                if (instance_of(background, e, best))
                    fold.resultset.insert(e);
            }
        }

        for (const auto& e : fold.resultset) {
            if (problem.positives.count(e))
                ++fold.tp;
            else
                ++fold.fp;
        }
        fold.fn = fold.resultset.count(held_out) ? 0 : 1;

        // Degenerate fold: an empty result set makes no claims.
        if (fold.resultset.empty()) {
            fold.precision = 1.0;
            fold.recall = 0.0;
        } else {
            fold.precision = fold.tp + fold.fp == 0
                                 ? 1.0
                                 : static_cast<double>(fold.tp) / (fold.tp + fold.fp);
            fold.recall = fold.tp + fold.fn == 0
                              ? 0.0
                              : static_cast<double>(fold.tp) / (fold.tp + fold.fn);
        }

        cv.avg_precision += fold.precision;
        cv.avg_recall += fold.recall;
        cv.folds.push_back(std::move(fold));
    }

    cv.avg_precision /= static_cast<double>(cv.folds.size());
    cv.avg_recall /= static_cast<double>(cv.folds.size());
    return cv;
}

} // namespace fdl
