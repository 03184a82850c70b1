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

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "fdl/datagen.hpp"
#include "fdl/errors.hpp"
#include "fdl/learner.hpp"
#include "fdl/metrics.hpp"
#include "fdl/normalize.hpp"
#include "fdl/ontology.hpp"
#include "fdl/reasoner.hpp"
#include "fdl/text.hpp"

namespace {

// Exit statuses are part of the interface; keep them stable.
constexpr int kOk = 0;
constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kInconsistent = 3;
constexpr int kResourceLimit = 4;

struct CliError {
    int code;
    std::string message;
};

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw CliError{kUsage, "cannot open '" + path + "'"};
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw CliError{kUsage, "cannot write '" + path + "'"};
    out << content;
}

fdl::KnowledgeBase load_kb(const std::string& path) {
    fdl::SourceDocument doc{read_file(path), path};
    fdl::ParseResult parsed = fdl::parse_kb(doc);
    for (const auto& d : parsed.diagnostics)
        std::cerr << d.to_text(path) << "\n";
    if (!parsed.ok())
        throw CliError{kValidation, "knowledge base '" + path + "' failed to parse"};
    auto issues = fdl::validate_kb(parsed.kb);
    for (const auto& issue : issues) {
        auto pos = parsed.statement_positions.find(issue.statement);
        int line = pos == parsed.statement_positions.end() ? 1 : pos->second.first;
        int col = pos == parsed.statement_positions.end() ? 1 : pos->second.second;
        std::cerr << path << ":" << line << ":" << col << ": error: " << issue.message << "\n";
    }
    if (!issues.empty())
        throw CliError{kValidation, "knowledge base '" + path + "' failed validation"};
    return std::move(parsed.kb);
}

std::vector<fdl::Axiom> load_annotations(const std::string& path, const fdl::KnowledgeBase& kb) {
    if (path.empty())
        return {};
    auto records = fdl::parse_annotations_jsonl(read_file(path));
    std::vector<fdl::Axiom> assertions = fdl::ingest_annotations(records);
    auto issues = fdl::validate_assertions(kb, assertions);
    for (const auto& issue : issues)
        std::cerr << path << ": error: " << issue.message << " in " << issue.statement << "\n";
    if (!issues.empty())
        throw CliError{kValidation, "annotations '" + path + "' use undeclared vocabulary"};
    return assertions;
}

fdl::GoldLabels load_gold(const std::string& path) {
    fdl::SourceDocument doc{read_file(path), path};
    fdl::GoldParseResult parsed = fdl::parse_gold_labels(doc);
    for (const auto& d : parsed.diagnostics)
        std::cerr << d.to_text(path) << "\n";
    if (!parsed.ok())
        throw CliError{kValidation, "gold labels '" + path + "' failed to parse"};
    return parsed.labels;
}

fdl::Closure materialize_kb(const fdl::KnowledgeBase& kb, std::vector<fdl::Axiom> assertions,
                            const fdl::NormalizedProgram& program) {
    fdl::MaterializeOptions opts;
    opts.fact_cap = fdl::fact_cap_from_env();
    opts.extra_individuals.assign(kb.individuals().begin(), kb.individuals().end());
    for (const auto& ax : kb.assertions())
        assertions.push_back(ax);
    return fdl::materialize(program, assertions, opts);
}

void require_consistent(const fdl::Closure& closure) {
    auto report = fdl::is_consistent(closure);
    if (report.consistent)
        return;
    for (const auto& v : report.violations)
        std::cerr << "violation: " << v.individual << " breaks " << v.axiom << "\n";
    throw CliError{kInconsistent, "knowledge base is inconsistent"};
}

int cmd_validate(const std::string& kb_path) {
    load_kb(kb_path);
    return kOk;
}

int cmd_classify(const std::string& kb_path, const std::string& annotations_path,
                 const std::string& query, bool json) {
    fdl::KnowledgeBase kb = load_kb(kb_path);
    fdl::NormalizedProgram program = fdl::normalize_kb(kb);
    fdl::Closure closure = materialize_kb(kb, load_annotations(annotations_path, kb), program);
    require_consistent(closure);

    std::vector<std::pair<std::string, std::string>> rows;
    if (!query.empty()) {
        std::vector<fdl::Diagnostic> diags;
        fdl::ConceptRef q = fdl::parse_concept_term(query, diags);
        for (const auto& d : diags)
            std::cerr << d.to_text("<query>") << "\n";
        if (!q)
            throw CliError{kUsage, "malformed query concept"};
        for (const auto& ind : fdl::all_instances(closure, q))
            rows.emplace_back(ind, q->to_text());
    } else {
        for (const auto& ind : closure.universe())
            for (const auto& cls : kb.concepts())
                if (closure.has_concept(cls, ind))
                    rows.emplace_back(ind, cls);
    }

    if (json) {
        nlohmann::json j = nlohmann::json::array();
        for (const auto& [ind, cls] : rows)
            j.push_back({{"individual", ind}, {"class", cls}});
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "individual\tclass\n";
        for (const auto& [ind, cls] : rows)
            std::cout << ind << "\t" << cls << "\n";
    }
    return kOk;
}

int cmd_evaluate(const std::string& kb_path, const std::string& annotations_path,
                 const std::string& gold_path, bool json) {
    fdl::KnowledgeBase kb = load_kb(kb_path);
    std::vector<fdl::Axiom> assertions = load_annotations(annotations_path, kb);
    for (const auto& ax : kb.assertions())
        assertions.push_back(ax);
    fdl::GoldLabels gold = load_gold(gold_path);

    fdl::ExperimentOptions opts;
    opts.fact_cap = fdl::fact_cap_from_env();
    fdl::AggregateReport report = fdl::run_manual_experiment(kb, assertions, gold, opts);
    std::cout << (json ? fdl::report_to_json(report) : fdl::report_to_tsv(report));
    return kOk;
}

int cmd_learn(const std::string& kb_path, const std::string& annotations_path,
              const std::string& gold_path, const std::string& target, bool loocv,
              int max_length, int max_hypotheses) {
    fdl::KnowledgeBase kb = load_kb(kb_path);
    std::vector<fdl::Axiom> assertions = load_annotations(annotations_path, kb);
    fdl::GoldLabels gold = load_gold(gold_path);

    auto gold_it = gold.find(target);
    if (gold_it == gold.end() || gold_it->second.empty())
        throw CliError{kUsage, "no gold instances for target '" + target + "'"};

    // Background: everything except explicit assertions of the target.
    fdl::KnowledgeBase background = kb;
    for (const auto& ax : assertions) {
        if (const auto* ca = std::get_if<fdl::ConceptAssertion>(&ax)) {
            if (ca->expr->kind() == fdl::ConceptKind::Atomic && ca->expr->name() == target)
                continue;
        }
        background.add(ax);
    }
    background.finalize();

    fdl::LearningProblem problem;
    problem.target = target;
    problem.positives = gold_it->second;
    problem.background = &background;
    problem.population = fdl::event_population(kb, assertions, "Event");
    for (const auto& p : problem.positives)
        problem.population.insert(p);

    fdl::LearnerConfig config;
    config.max_length = max_length;
    config.max_hypotheses = max_hypotheses;

    if (loocv) {
        fdl::CrossValidation cv = fdl::loo_cv(problem, config);
        std::cout << "fold\ttp\tfp\tfn\tprecision\trecall\n";
        char buf[64];
        for (const auto& fold : cv.folds) {
            std::snprintf(buf, sizeof buf, "%d\t%ld\t%ld\t%ld\t%.6f\t%.6f\n", fold.fold, fold.tp,
                          fold.fp, fold.fn, fold.precision, fold.recall);
            std::cout << buf;
        }
        std::snprintf(buf, sizeof buf, "#avg\t%.6f\t%.6f\n", cv.avg_precision, cv.avg_recall);
        std::cout << buf;
        return kOk;
    }

    std::vector<fdl::Hypothesis> hypotheses;
    try {
        hypotheses = fdl::learn_gci(problem, config);
    } catch (const fdl::NoHypothesisError& e) {
        std::cerr << e.what() << "\n";
        return kOk; // a reportable outcome, not a failure
    }
    for (const auto& h : hypotheses)
        std::cout << "Sub(" << h.expr->to_text() << ", " << target << ")\n";
    return kOk;
}

int cmd_generate(uint64_t seed, const std::string& out_dir, const std::string& profile) {
    std::filesystem::create_directories(out_dir);
    auto path = [&out_dir](const char* name) {
        return (std::filesystem::path(out_dir) / name).string();
    };

    fdl::OntologyOptions onto_opts;
    onto_opts.include_invented_gcis = true;

    if (profile == "learning") {
        fdl::LearningScenarioConfig config;
        config.seed = seed;
        config.positives = 16;
        config.distractors = 50;
        fdl::LearningScenario scenario = fdl::plant_learning_scenario(config);
        write_file(path("annotations.jsonl"), fdl::annotations_to_jsonl(scenario.annotations));
        write_file(path("labels.gold"), fdl::serialize_gold_labels(scenario.gold));
        write_file(path("cameras.tsv"), "id\tlat\tlon\tstreet\tstart\tend\n");
        write_file(path("kb.fkb"), fdl::builtin_ontology_text(onto_opts));
        return kOk;
    }

    fdl::ScenarioConfig config = profile == "table4"
                                     ? fdl::ScenarioConfig::table4_profile(seed)
                                     : fdl::ScenarioConfig::table2_profile(seed);
    fdl::Scenario scenario = fdl::generate(config);
    write_file(path("annotations.jsonl"), fdl::annotations_to_jsonl(scenario.annotations));
    write_file(path("labels.gold"), fdl::serialize_gold_labels(scenario.gold));
    write_file(path("cameras.tsv"), fdl::cameras_to_tsv(scenario.catalog));
    write_file(path("kb.fkb"), fdl::builtin_ontology_text(onto_opts));
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"forensic-dl: description-logic toolkit for forensic event classification"};
    app.require_subcommand(1);

    std::string kb_path, annotations_path, gold_path, query, target, out_dir;
    std::string profile = "table2";
    bool json = false, loocv = false;
    int max_length = 5, max_hypotheses = 10;
    uint64_t seed = 1;

    auto* validate = app.add_subcommand("validate", "parse and validate a knowledge base");
    validate->add_option("kb", kb_path, "path to .fkb file")->required();

    auto* classify = app.add_subcommand("classify", "materialize and list inferred memberships");
    classify->add_option("--kb", kb_path)->required();
    classify->add_option("--annotations", annotations_path);
    classify->add_option("--query", query, "restrict output to one query concept");
    classify->add_flag("--json", json);

    auto* evaluate = app.add_subcommand("evaluate", "score inferred classes against gold labels");
    evaluate->add_option("--kb", kb_path)->required();
    evaluate->add_option("--annotations", annotations_path)->required();
    evaluate->add_option("--gold", gold_path)->required();
    evaluate->add_flag("--json", json);

    auto* learn = app.add_subcommand("learn", "learn classification GCIs for a target class");
    learn->add_option("--kb", kb_path)->required();
    learn->add_option("--annotations", annotations_path)->required();
    learn->add_option("--gold", gold_path)->required();
    learn->add_option("--target", target)->required();
    learn->add_flag("--loocv", loocv, "run leave-one-out cross validation");
    learn->add_option("--max-length", max_length);
    learn->add_option("--max-hypotheses", max_hypotheses);

    auto* generate = app.add_subcommand("generate", "write a synthetic scenario to a directory");
    generate->add_option("--seed", seed)->required();
    generate->add_option("--out", out_dir)->required();
    generate->add_option("--profile", profile)
        ->check(CLI::IsMember({"table2", "table4", "learning"}));

    auto* export_onto = app.add_subcommand("export-ontology", "print the built-in ontology");
    bool with_learned = false, with_invented = false;
    export_onto->add_flag("--learned", with_learned);
    export_onto->add_flag("--invented", with_invented);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kUsage;
    }

    try {
        if (validate->parsed())
            return cmd_validate(kb_path);
        if (classify->parsed())
            return cmd_classify(kb_path, annotations_path, query, json);
        if (evaluate->parsed())
            return cmd_evaluate(kb_path, annotations_path, gold_path, json);
        if (learn->parsed())
            return cmd_learn(kb_path, annotations_path, gold_path, target, loocv, max_length,
                             max_hypotheses);
        if (generate->parsed())
            return cmd_generate(seed, out_dir, profile);
        if (export_onto->parsed()) {
            std::cout << fdl::builtin_ontology_text({with_learned, with_invented});
            return kOk;
        }
    } catch (const CliError& e) {
        std::cerr << "error: " << e.message << "\n";
        return e.code;
    } catch (const fdl::ResourceLimitError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kResourceLimit;
    } catch (const fdl::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kValidation;
    }
    return kUsage;
}
