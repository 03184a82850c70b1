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

#include "fdl/metrics.hpp"

#include <cstdio>
#include <map>
#include <sstream>

#include <json.hpp>

#include "fdl/errors.hpp"
#include "fdl/normalize.hpp"

namespace fdl {

Prf prf(const ContingencyTable& t) {
    Prf out;
    bool no_predictions = t.tp + t.fp == 0;
    bool no_gold = t.tp + t.fn == 0;
    if (no_predictions && no_gold) {
        out.precision = out.recall = out.f1 = 1.0;
        return out;
    }
    out.precision = no_predictions ? 0.0 : static_cast<double>(t.tp) / (t.tp + t.fp);
    out.recall = no_gold ? 0.0 : static_cast<double>(t.tp) / (t.tp + t.fn);
    out.f1 = out.precision + out.recall == 0.0
                 ? 0.0
                 : 2.0 * out.precision * out.recall / (out.precision + out.recall);
    return out;
}

ClassReport ClassReport::from_table(std::string name, const ContingencyTable& t) {
    ClassReport r;
    r.class_name = std::move(name);
    r.table = t;
    Prf p = prf(t);
    r.precision = p.precision;
    r.recall = p.recall;
    r.f1 = p.f1;
    return r;
}

ClassReport ClassReport::from_values(std::string name, double precision, double recall) {
    ClassReport r;
    r.class_name = std::move(name);
    r.precision = precision;
    r.recall = recall;
    r.f1 = precision + recall == 0.0 ? 0.0 : 2.0 * precision * recall / (precision + recall);
    return r;
}

ContingencyTable contingency(const Closure& closure, const GoldLabels& gold,
                             const std::string& class_name,
                             const std::set<std::string>& population) {
    auto it = gold.find(class_name);
    static const std::set<std::string> empty;
    const std::set<std::string>& truth = it == gold.end() ? empty : it->second;
    if (it == gold.end() && closure.concept_members(class_name).empty())
        throw UnknownClassError("unknown class '" + class_name + "'");

    ContingencyTable t;
    ConceptRef query = Concept::atomic(class_name);
    for (const auto& e : population) {
        bool predicted = instance_of(closure, e, query);
        bool actual = truth.count(e) > 0;
        if (predicted && actual)
            ++t.tp;
        else if (predicted && !actual)
            ++t.fp;
        else if (!predicted && actual)
            ++t.fn;
        else
            ++t.tn;
    }
    return t;
}

AggregateReport aggregate(const std::vector<ClassReport>& reports) {
    AggregateReport out;
    out.classes = reports;

    ContingencyTable sums;
    double psum = 0.0, rsum = 0.0;
    for (const auto& r : reports) {
        sums.tp += r.table.tp;
        sums.fp += r.table.fp;
        sums.fn += r.table.fn;
        sums.tn += r.table.tn;
        psum += r.precision;
        rsum += r.recall;
    }
    out.micro = prf(sums);
    if (!reports.empty()) {
        out.macro.precision = psum / static_cast<double>(reports.size());
        out.macro.recall = rsum / static_cast<double>(reports.size());
        out.macro.f1 = out.macro.precision + out.macro.recall == 0.0
                           ? 0.0
                           : 2.0 * out.macro.precision * out.macro.recall /
                                 (out.macro.precision + out.macro.recall);
    }
    return out;
}

std::set<std::string> event_population(const KnowledgeBase& kb,
                                       const std::vector<Axiom>& assertions,
                                       const std::string& population_root) {
    std::set<std::string> population;
    if (population_root.empty() || !kb.is_declared_concept(population_root)) {
        for (const auto& ax : assertions) {
            if (const auto* ca = std::get_if<ConceptAssertion>(&ax))
                population.insert(ca->individual);
            else if (const auto* ra = std::get_if<RoleAssertion>(&ax)) {
                population.insert(ra->subject);
                population.insert(ra->object);
            } else if (const auto* da = std::get_if<DataAssertion>(&ax)) {
                population.insert(da->subject);
            }
        }
        return population;
    }

    // Individuals asserted into the population-root subtree. Subsumption of
    // asserted atomic types is resolved once per distinct type.
    NormalizedProgram program = normalize_kb(kb);
    std::map<std::string, bool> type_in_subtree;
    for (const auto& ax : assertions) {
        const auto* ca = std::get_if<ConceptAssertion>(&ax);
        if (!ca || ca->expr->kind() != ConceptKind::Atomic)
            continue;
        const std::string& type = ca->expr->name();
        auto it = type_in_subtree.find(type);
        if (it == type_in_subtree.end()) {
            bool in = type == population_root ||
                      is_subsumed(program, Concept::atomic(type), population_root);
            it = type_in_subtree.emplace(type, in).first;
        }
        if (it->second)
            population.insert(ca->individual);
    }
    return population;
}

AggregateReport run_manual_experiment(const KnowledgeBase& kb, const std::vector<Axiom>& assertions,
                                      const GoldLabels& gold, const ExperimentOptions& options) {
    if (gold.empty())
        return {};

    std::set<std::string> population = event_population(kb, assertions, options.population_root);
    for (const auto& [cls, members] : gold)
        population.insert(members.begin(), members.end());

    // Drop explicit gold-class assertions; without the GCIs nothing may
    // classify into a crime class.
    std::vector<Axiom> filtered;
    filtered.reserve(assertions.size());
    for (const auto& ax : assertions) {
        if (const auto* ca = std::get_if<ConceptAssertion>(&ax)) {
            if (ca->expr->kind() == ConceptKind::Atomic && gold.count(ca->expr->name()))
                continue;
        }
        filtered.push_back(ax);
    }

    NormalizedProgram program = normalize_kb(kb);
    MaterializeOptions mopts;
    mopts.fact_cap = options.fact_cap;
    mopts.extra_individuals.assign(kb.individuals().begin(), kb.individuals().end());
    Closure closure = materialize(program, filtered, mopts);

    std::vector<ClassReport> reports;
    for (const auto& [cls, members] : gold)
        reports.push_back(ClassReport::from_table(cls, contingency(closure, gold, cls, population)));
    return aggregate(reports);
}

namespace {

std::string fixed6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    return buf;
}

} // namespace

std::string report_to_tsv(const AggregateReport& report) {
    std::ostringstream out;
    out << "class\ttp\tfp\tfn\ttn\tprecision\trecall\tf1\n";
    for (const auto& r : report.classes)
        out << r.class_name << "\t" << r.table.tp << "\t" << r.table.fp << "\t" << r.table.fn
            << "\t" << r.table.tn << "\t" << fixed6(r.precision) << "\t" << fixed6(r.recall)
            << "\t" << fixed6(r.f1) << "\n";
    out << "#micro\t" << fixed6(report.micro.precision) << "\t" << fixed6(report.micro.recall)
        << "\t" << fixed6(report.micro.f1) << "\n";
    out << "#macro\t" << fixed6(report.macro.precision) << "\t" << fixed6(report.macro.recall)
        << "\t" << fixed6(report.macro.f1) << "\n";
    return out.str();
}

std::string report_to_json(const AggregateReport& report) {
    nlohmann::json j;
    nlohmann::json classes = nlohmann::json::array();
    for (const auto& r : report.classes) {
        classes.push_back({{"class", r.class_name},
                           {"tp", r.table.tp},
                           {"fp", r.table.fp},
                           {"fn", r.table.fn},
                           {"tn", r.table.tn},
                           {"precision", r.precision},
                           {"recall", r.recall},
                           {"f1", r.f1}});
    }
    j["classes"] = std::move(classes);
    j["micro"] = {{"precision", report.micro.precision},
                  {"recall", report.micro.recall},
                  {"f1", report.micro.f1}};
    j["macro"] = {{"precision", report.macro.precision},
                  {"recall", report.macro.recall},
                  {"f1", report.macro.f1}};
    return j.dump(2) + "\n";
}

} // namespace fdl
