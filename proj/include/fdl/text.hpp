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

#ifndef FDL_TEXT_HPP
#define FDL_TEXT_HPP

#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "fdl/model.hpp"

namespace fdl {

struct SourceDocument {
    std::string text;
    std::string origin; // path or label for diagnostics
};

struct Diagnostic {
    int line = 1;   // 1-based
    int column = 1; // 1-based
    std::string message;
    enum class Severity { Error, Warning } severity = Severity::Error;

    std::string to_text(const std::string& origin) const;
};

/// Result of parsing a .fkb document. The KB is usable iff ok() holds.
struct ParseResult {
    KnowledgeBase kb;
    std::vector<Diagnostic> diagnostics;
    // Source position of each axiom / rule, keyed by its canonical statement
    // text (first occurrence wins). Used to attach positions to validation
    // issues raised after parsing.
    std::map<std::string, std::pair<int, int>> statement_positions;

    bool ok() const {
        for (const auto& d : diagnostics)
            if (d.severity == Diagnostic::Severity::Error)
                return false;
        return true;
    }
};

/// Parses the line-oriented .fkb grammar. Never throws; syntax and
/// declaration problems are reported as error diagnostics.
ParseResult parse_kb(const SourceDocument& doc);

/// Deterministic serialization; parse_kb(serialize_kb(kb)) yields a KB equal
/// to a finalized `kb`. `comment_for` may attach a trailing `# ...` note to
/// individual axioms (pass nullptr for none).
std::string serialize_kb(const KnowledgeBase& kb,
                         const std::function<std::string(const Axiom&)>* comment_for = nullptr);

/// Parses a single concept term (the s-expression sub-grammar). Returns
/// nullptr and fills diagnostics on malformed input.
ConceptRef parse_concept_term(const std::string& text, std::vector<Diagnostic>& diagnostics);

using GoldLabels = std::map<std::string, std::set<std::string>>;

struct GoldParseResult {
    GoldLabels labels;
    std::vector<Diagnostic> diagnostics;
    bool ok() const {
        for (const auto& d : diagnostics)
            if (d.severity == Diagnostic::Severity::Error)
                return false;
        return true;
    }
};

/// Parses `Gold(Class, individual)` lines into the true(C) map.
GoldParseResult parse_gold_labels(const SourceDocument& doc);

std::string serialize_gold_labels(const GoldLabels& labels);

} // namespace fdl

#endif
