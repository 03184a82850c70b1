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

#include "fdl/text.hpp"

#include <cctype>
#include <sstream>

namespace fdl {

std::string Diagnostic::to_text(const std::string& origin) const {
    std::ostringstream os;
    os << origin << ":" << line << ":" << column << ": "
       << (severity == Severity::Error ? "error" : "warning") << ": " << message;
    return os.str();
}

namespace {

// ---------------------------------------------------------------------------
// Lexer. One statement per line; '#' starts a comment (outside strings).
// ---------------------------------------------------------------------------

enum class TokKind { Ident, String, Signed, LParen, RParen, Comma, Colon, Arrow, Question, End };

struct Token {
    TokKind kind = TokKind::End;
    std::string text;  // identifier / string payload / signed token incl. sign
    int line = 1;
    int column = 1;
};

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

struct LineLexer {
    const std::string& src;
    int line_no;
    size_t pos = 0;
    std::vector<Diagnostic>& diags;

    LineLexer(const std::string& s, int line, std::vector<Diagnostic>& d)
        : src(s), line_no(line), diags(d) {}

    void error(int col, const std::string& msg) {
        diags.push_back({line_no, col, msg, Diagnostic::Severity::Error});
    }

    std::vector<Token> run() {
        std::vector<Token> out;
        while (pos < src.size()) {
            char c = src[pos];
            int col = static_cast<int>(pos) + 1;
            if (c == '#')
                break; // comment to end of line
            if (std::isspace(static_cast<unsigned char>(c))) {
                ++pos;
                continue;
            }
            if (c == '(') { out.push_back({TokKind::LParen, "(", line_no, col}); ++pos; continue; }
            if (c == ')') { out.push_back({TokKind::RParen, ")", line_no, col}); ++pos; continue; }
            if (c == ',') { out.push_back({TokKind::Comma, ",", line_no, col}); ++pos; continue; }
            if (c == ':') { out.push_back({TokKind::Colon, ":", line_no, col}); ++pos; continue; }
            if (c == '?') { out.push_back({TokKind::Question, "?", line_no, col}); ++pos; continue; }
            if (c == '-' && pos + 1 < src.size() && src[pos + 1] == '>') {
                out.push_back({TokKind::Arrow, "->", line_no, col});
                pos += 2;
                continue;
            }
            if ((c == '+' || c == '-') && pos + 1 < src.size() && ident_start(src[pos + 1])) {
                size_t start = pos;
                ++pos;
                while (pos < src.size() && ident_char(src[pos]))
                    ++pos;
                out.push_back({TokKind::Signed, src.substr(start, pos - start), line_no, col});
                continue;
            }
            if (c == '"') {
                std::string value;
                ++pos;
                bool closed = false;
                while (pos < src.size()) {
                    char d = src[pos];
                    if (d == '\\') {
                        if (pos + 1 >= src.size()) {
                            error(static_cast<int>(pos) + 1, "dangling escape in string literal");
                            ++pos;
                            break;
                        }
                        value += src[pos + 1];
                        pos += 2;
                        continue;
                    }
                    if (d == '"') {
                        closed = true;
                        ++pos;
                        break;
                    }
                    value += d;
                    ++pos;
                }
                if (!closed)
                    error(col, "unterminated string literal");
                out.push_back({TokKind::String, value, line_no, col});
                continue;
            }
            if (ident_start(c)) {
                size_t start = pos;
                while (pos < src.size() && ident_char(src[pos]))
                    ++pos;
                out.push_back({TokKind::Ident, src.substr(start, pos - start), line_no, col});
                continue;
            }
            error(col, std::string("unexpected character '") + c + "'");
            ++pos;
        }
        out.push_back({TokKind::End, "", line_no, static_cast<int>(src.size()) + 1});
        return out;
    }
};

// ---------------------------------------------------------------------------
// Statement parser.
// ---------------------------------------------------------------------------

struct RawRuleAtom {
    std::string predicate; // empty for SameAs
    std::vector<Token> args;
    bool same_as = false;
    int line = 1, column = 1;
};

struct RawRule {
    std::vector<RawRuleAtom> body;
    RawRuleAtom head;
    int line = 1, column = 1;
};

struct Parser {
    std::vector<Token> toks;
    size_t at = 0;
    std::vector<Diagnostic>& diags;
    bool failed = false;

    Parser(std::vector<Token> t, std::vector<Diagnostic>& d) : toks(std::move(t)), diags(d) {}

    const Token& peek() const { return toks[at]; }
    Token next() { return toks[at == toks.size() - 1 ? at : at++]; }

    void error(const Token& t, const std::string& msg) {
        if (!failed)
            diags.push_back({t.line, t.column, msg, Diagnostic::Severity::Error});
        failed = true;
    }

    bool expect(TokKind k, const char* what) {
        if (peek().kind != k) {
            error(peek(), std::string("expected ") + what);
            return false;
        }
        next();
        return true;
    }

    std::string expect_ident(const char* what) {
        if (peek().kind != TokKind::Ident) {
            error(peek(), std::string("expected ") + what);
            return {};
        }
        return next().text;
    }

    // Concept terms in the s-expression sub-grammar.
    ConceptRef concept_term() {
        const Token& t = peek();
        if (t.kind == TokKind::Ident) {
            next();
            if (t.text == "Thing")
                return Concept::top();
            if (t.text == "Nothing")
                return Concept::bottom();
            return Concept::atomic(t.text);
        }
        if (t.kind != TokKind::LParen) {
            error(t, "expected concept term");
            return Concept::top();
        }
        next(); // (
        std::string op = expect_ident("concept operator");
        if (failed)
            return Concept::top();
        ConceptRef result = Concept::top();
        if (op == "and" || op == "or") {
            std::vector<ConceptRef> members;
            while (!failed && peek().kind != TokKind::RParen && peek().kind != TokKind::End)
                members.push_back(concept_term());
            if (members.size() < 2)
                error(peek(), op + " needs at least two members");
            result = op == "and" ? Concept::conj(std::move(members))
                                 : Concept::disj(std::move(members));
        } else if (op == "not") {
            result = Concept::negation(concept_term());
        } else if (op == "some" || op == "all") {
            RoleRef r = role_term();
            ConceptRef filler = concept_term();
            result = op == "some" ? Concept::exists(std::move(r), std::move(filler))
                                  : Concept::forall(std::move(r), std::move(filler));
        } else if (op == "value") {
            RoleRef r = role_term();
            std::string ind = expect_ident("individual name");
            result = Concept::exists(std::move(r), Concept::nominal(ind));
        } else {
            error(t, "unknown concept operator '" + op + "'");
        }
        expect(TokKind::RParen, "')'");
        return result;
    }

    RoleRef role_term() {
        const Token& t = peek();
        if (t.kind == TokKind::Ident) {
            next();
            return Role::atomic(t.text);
        }
        if (t.kind != TokKind::LParen) {
            error(t, "expected role term");
            return Role::atomic("_");
        }
        next();
        std::string op = expect_ident("role operator");
        RoleRef result = Role::atomic("_");
        if (op == "inv") {
            result = Role::inverse(role_term());
        } else if (op == "chain") {
            std::vector<RoleRef> parts;
            while (!failed && peek().kind != TokKind::RParen && peek().kind != TokKind::End)
                parts.push_back(role_term());
            if (parts.size() < 2)
                error(peek(), "chain needs at least two roles");
            else
                result = Role::compose(std::move(parts));
        } else {
            error(t, "unknown role operator '" + op + "'");
        }
        expect(TokKind::RParen, "')'");
        return result;
    }

    RawRuleAtom rule_atom() {
        RawRuleAtom atom;
        atom.line = peek().line;
        atom.column = peek().column;
        std::string pred = expect_ident("rule atom predicate");
        if (failed)
            return atom;
        atom.same_as = pred == "SameAs";
        atom.predicate = atom.same_as ? std::string{} : pred;
        expect(TokKind::LParen, "'('");
        while (!failed) {
            if (peek().kind == TokKind::Question) {
                Token q = next();
                if (peek().kind != TokKind::Ident) {
                    error(peek(), "expected variable name after '?'");
                    break;
                }
                Token v = next();
                v.column = q.column;
                v.text = "?" + v.text;
                atom.args.push_back(v);
            } else if (peek().kind == TokKind::Ident || peek().kind == TokKind::String) {
                atom.args.push_back(next());
            } else {
                error(peek(), "expected rule-atom argument");
                break;
            }
            if (peek().kind == TokKind::Comma) {
                next();
                continue;
            }
            break;
        }
        expect(TokKind::RParen, "')'");
        return atom;
    }
};

struct PendingRule {
    RawRule raw;
};

Term token_to_term(const Token& t) {
    if (!t.text.empty() && t.text[0] == '?')
        return Term::var(t.text.substr(1));
    return Term::constant(t.text);
}

} // namespace

ParseResult parse_kb(const SourceDocument& doc) {
    ParseResult result;
    KnowledgeBase& kb = result.kb;

    struct Stmt {
        std::string keyword;
        std::vector<Token> toks;
        int line;
    };

    // Split into lines and lex each. Lexing collects its own diagnostics.
    std::vector<std::pair<int, std::vector<Token>>> lexed;
    {
        std::istringstream in(doc.text);
        std::string line;
        int line_no = 0;
        while (std::getline(in, line)) {
            ++line_no;
            LineLexer lex(line, line_no, result.diagnostics);
            auto toks = lex.run();
            if (toks.size() > 1) // more than just End
                lexed.emplace_back(line_no, std::move(toks));
        }
    }

    // Pass 1: collect declarations so use-before-declaration across lines is
    // legal and binary rule atoms can be typed.
    for (auto& [line_no, toks] : lexed) {
        if (toks.size() >= 4 && toks[0].kind == TokKind::Ident && toks[1].kind == TokKind::LParen &&
            toks[2].kind == TokKind::Ident && toks[3].kind == TokKind::RParen) {
            const std::string& kw = toks[0].text;
            const std::string& name = toks[2].text;
            if (kw == "Class")
                kb.declare_concept(name);
            else if (kw == "Role")
                kb.declare_role(name);
            else if (kw == "DataProp")
                kb.declare_data_property(name);
            else if (kw == "Individual")
                kb.declare_individual(name);
        }
    }

    auto note_position = [&result](const std::string& text, int line, int col) {
        result.statement_positions.emplace(text, std::make_pair(line, col));
    };

    // Name-usage checks, reported at the statement's position.
    struct UseCheck {
        enum Kind { ConceptName, RoleName, DataPropName, IndividualName } kind;
        std::string name;
    };
    auto check_uses = [&](const std::vector<UseCheck>& uses, int line, int col) {
        for (const auto& u : uses) {
            bool ok = true;
            const char* what = "";
            switch (u.kind) {
            case UseCheck::ConceptName:
                ok = kb.is_declared_concept(u.name);
                what = "concept";
                break;
            case UseCheck::RoleName:
                ok = kb.is_declared_role(u.name);
                what = "role";
                break;
            case UseCheck::DataPropName:
                ok = kb.is_declared_data_property(u.name);
                what = "data property";
                break;
            case UseCheck::IndividualName:
                ok = kb.is_declared_individual(u.name);
                what = "individual";
                break;
            }
            if (!ok)
                result.diagnostics.push_back({line, col,
                                              std::string("undeclared ") + what + " '" + u.name + "'",
                                              Diagnostic::Severity::Error});
        }
    };

    std::function<void(const ConceptRef&, std::vector<UseCheck>&)> collect_concept_uses;
    std::function<void(const RoleRef&, std::vector<UseCheck>&)> collect_role_uses =
        [&](const RoleRef& r, std::vector<UseCheck>& uses) {
            switch (r->kind()) {
            case RoleKind::Atomic:
            case RoleKind::Inverse:
                uses.push_back({UseCheck::RoleName, r->name()});
                break;
            case RoleKind::Compose:
                for (const auto& p : r->parts())
                    collect_role_uses(p, uses);
                break;
            }
        };
    collect_concept_uses = [&](const ConceptRef& c, std::vector<UseCheck>& uses) {
        switch (c->kind()) {
        case ConceptKind::Atomic:
            uses.push_back({UseCheck::ConceptName, c->name()});
            break;
        case ConceptKind::Nominal:
            uses.push_back({UseCheck::IndividualName, c->name()});
            break;
        case ConceptKind::And:
        case ConceptKind::Or:
            for (const auto& m : c->members())
                collect_concept_uses(m, uses);
            break;
        case ConceptKind::Not:
            collect_concept_uses(c->inner(), uses);
            break;
        case ConceptKind::Exists:
        case ConceptKind::Forall:
            collect_role_uses(c->role(), uses);
            collect_concept_uses(c->inner(), uses);
            break;
        default:
            break;
        }
    };

    // Pass 2: parse statements.
    for (auto& [line_no, toks] : lexed) {
        Parser p(toks, result.diagnostics);
        if (p.peek().kind != TokKind::Ident) {
            p.error(p.peek(), "expected statement keyword");
            continue;
        }
        Token kw = p.next();
        const std::string& k = kw.text;

        if (k == "Class" || k == "Role" || k == "DataProp" || k == "Individual") {
            p.expect(TokKind::LParen, "'('");
            p.expect_ident("name");
            p.expect(TokKind::RParen, "')'");
            if (!p.failed && p.peek().kind != TokKind::End)
                p.error(p.peek(), "trailing tokens after statement");
            continue; // handled in pass 1
        }

        if (k == "Rule") {
            p.expect(TokKind::Colon, "':'");
            RawRule raw;
            raw.line = kw.line;
            raw.column = kw.column;
            while (!p.failed) {
                raw.body.push_back(p.rule_atom());
                if (p.peek().kind == TokKind::Comma) {
                    p.next();
                    continue;
                }
                break;
            }
            if (!p.expect(TokKind::Arrow, "'->'"))
                continue;
            raw.head = p.rule_atom();
            if (p.failed)
                continue;
            if (p.peek().kind != TokKind::End) {
                p.error(p.peek(), "trailing tokens after rule");
                continue;
            }

            // Resolve raw atoms against declarations.
            auto resolve = [&](const RawRuleAtom& ra, bool is_head,
                               RuleAtom& out) -> bool {
                auto fail = [&](const std::string& msg) {
                    result.diagnostics.push_back(
                        {ra.line, ra.column, msg, Diagnostic::Severity::Error});
                    return false;
                };
                if (ra.same_as) {
                    if (is_head)
                        return fail("SameAs cannot appear in a rule head");
                    if (ra.args.size() != 2)
                        return fail("SameAs takes two arguments");
                    out = RuleAtom{AtomKind::SameAs, "", token_to_term(ra.args[0]),
                                   token_to_term(ra.args[1])};
                    return true;
                }
                if (ra.args.size() == 1) {
                    if (!kb.is_declared_concept(ra.predicate))
                        return fail("undeclared concept '" + ra.predicate + "'");
                    out = RuleAtom{AtomKind::Class, ra.predicate, token_to_term(ra.args[0]), {}};
                    return true;
                }
                if (ra.args.size() != 2)
                    return fail("rule atoms take one or two arguments");
                bool is_role = kb.is_declared_role(ra.predicate);
                bool is_prop = kb.is_declared_data_property(ra.predicate);
                if (ra.args[1].kind == TokKind::String) {
                    if (!is_prop)
                        return fail("undeclared data property '" + ra.predicate + "'");
                    is_role = false;
                }
                if (!is_role && !is_prop)
                    return fail("undeclared role or data property '" + ra.predicate + "'");
                out = RuleAtom{is_role ? AtomKind::Object : AtomKind::Data, ra.predicate,
                               token_to_term(ra.args[0]), token_to_term(ra.args[1])};
                return true;
            };

            Rule rule;
            bool ok = true;
            for (const auto& ra : raw.body) {
                RuleAtom a;
                if (!resolve(ra, false, a)) {
                    ok = false;
                    break;
                }
                rule.body.push_back(std::move(a));
            }
            if (ok)
                ok = resolve(raw.head, true, rule.head);
            if (ok && rule.head.kind == AtomKind::Data) {
                result.diagnostics.push_back({raw.line, raw.column,
                                              "rule head must be a class or role atom",
                                              Diagnostic::Severity::Error});
                ok = false;
            }
            if (ok) {
                // Safety: every head variable occurs in the body.
                for (const Term* t : {&rule.head.a, &rule.head.b}) {
                    if (!t->is_variable)
                        continue;
                    if (rule.head.kind == AtomKind::Class && t == &rule.head.b)
                        continue;
                    bool found = false;
                    for (const auto& a : rule.body) {
                        if ((a.a.is_variable && a.a.text == t->text) ||
                            (a.kind != AtomKind::Class && a.b.is_variable && a.b.text == t->text))
                            found = true;
                    }
                    if (!found) {
                        result.diagnostics.push_back(
                            {raw.line, raw.column,
                             "unsafe rule: head variable ?" + t->text + " not bound in body",
                             Diagnostic::Severity::Error});
                        ok = false;
                    }
                }
            }
            if (ok) {
                note_position(rule.to_text(), raw.line, raw.column);
                kb.add_rule(std::move(rule));
            }
            continue;
        }

        // Remaining statement forms are Keyword(arg, arg[, arg]).
        if (!p.expect(TokKind::LParen, "'('"))
            continue;

        auto finish = [&](Axiom ax, std::vector<UseCheck> uses) {
            if (!p.expect(TokKind::RParen, "')'"))
                return;
            if (p.peek().kind != TokKind::End) {
                p.error(p.peek(), "trailing tokens after statement");
                return;
            }
            check_uses(uses, kw.line, kw.column);
            note_position(axiom_to_text(ax), kw.line, kw.column);
            kb.add(std::move(ax));
        };

        if (k == "Sub") {
            ConceptRef lhs = p.concept_term();
            p.expect(TokKind::Comma, "','");
            ConceptRef rhs = p.concept_term();
            if (p.failed)
                continue;
            std::vector<UseCheck> uses;
            collect_concept_uses(lhs, uses);
            collect_concept_uses(rhs, uses);
            finish(Gci{lhs, rhs}, std::move(uses));
        } else if (k == "SubRole") {
            RoleRef lhs = p.role_term();
            p.expect(TokKind::Comma, "','");
            std::string rhs = p.expect_ident("atomic role");
            if (p.failed)
                continue;
            std::vector<UseCheck> uses;
            collect_role_uses(lhs, uses);
            uses.push_back({UseCheck::RoleName, rhs});
            finish(RoleInclusion{lhs, rhs}, std::move(uses));
        } else if (k == "Disjoint") {
            ConceptRef a = p.concept_term();
            p.expect(TokKind::Comma, "','");
            ConceptRef b = p.concept_term();
            if (p.failed)
                continue;
            std::vector<UseCheck> uses;
            collect_concept_uses(a, uses);
            collect_concept_uses(b, uses);
            finish(Disjointness{a, b}, std::move(uses));
        } else if (k == "Member") {
            ConceptRef c = p.concept_term();
            p.expect(TokKind::Comma, "','");
            std::string ind = p.expect_ident("individual");
            if (p.failed)
                continue;
            std::vector<UseCheck> uses;
            collect_concept_uses(c, uses);
            uses.push_back({UseCheck::IndividualName, ind});
            finish(ConceptAssertion{ind, c}, std::move(uses));
        } else if (k == "Related") {
            std::string role = p.expect_ident("role");
            p.expect(TokKind::Comma, "','");
            std::string a = p.expect_ident("individual");
            p.expect(TokKind::Comma, "','");
            std::string b = p.expect_ident("individual");
            if (p.failed)
                continue;
            finish(RoleAssertion{a, b, role},
                   {{UseCheck::RoleName, role},
                    {UseCheck::IndividualName, a},
                    {UseCheck::IndividualName, b}});
        } else if (k == "Data") {
            std::string prop = p.expect_ident("data property");
            p.expect(TokKind::Comma, "','");
            std::string subj = p.expect_ident("individual");
            p.expect(TokKind::Comma, "','");
            if (p.peek().kind != TokKind::String) {
                p.error(p.peek(), "expected string literal");
                continue;
            }
            std::string value = p.next().text;
            if (p.failed)
                continue;
            finish(DataAssertion{subj, prop, value},
                   {{UseCheck::DataPropName, prop}, {UseCheck::IndividualName, subj}});
        } else if (k == "Trans") {
            std::string r = p.expect_ident("role");
            if (p.failed)
                continue;
            auto role = Role::atomic(r);
            finish(RoleInclusion{Role::compose({role, role}), r}, {{UseCheck::RoleName, r}});
        } else if (k == "Sym") {
            std::string r = p.expect_ident("role");
            if (p.failed)
                continue;
            finish(RoleInclusion{Role::inverse(Role::atomic(r)), r}, {{UseCheck::RoleName, r}});
        } else if (k == "InverseOf") {
            std::string r = p.expect_ident("role");
            p.expect(TokKind::Comma, "','");
            std::string s = p.expect_ident("role");
            if (p.failed)
                continue;
            // r = s^-  expands to two directional inclusions.
            if (!p.expect(TokKind::RParen, "')'"))
                continue;
            if (p.peek().kind != TokKind::End) {
                p.error(p.peek(), "trailing tokens after statement");
                continue;
            }
            check_uses({{UseCheck::RoleName, r}, {UseCheck::RoleName, s}}, kw.line, kw.column);
            Axiom a1 = RoleInclusion{Role::inverse(Role::atomic(s)), r};
            Axiom a2 = RoleInclusion{Role::inverse(Role::atomic(r)), s};
            note_position(axiom_to_text(a1), kw.line, kw.column);
            note_position(axiom_to_text(a2), kw.line, kw.column);
            kb.add(std::move(a1));
            kb.add(std::move(a2));
        } else if (k == "Traits") {
            std::string c = p.expect_ident("concept");
            EventTraits t;
            bool ok = !p.failed;
            auto read_sign = [&](const char* field, EventTraits::Sign& out) {
                p.expect(TokKind::Comma, "','");
                if (p.peek().kind != TokKind::Signed ||
                    p.peek().text.substr(1) != field) {
                    p.error(p.peek(), std::string("expected +") + field + " or -" + field);
                    ok = false;
                    return;
                }
                out = p.next().text[0] == '+' ? EventTraits::Sign::Plus : EventTraits::Sign::Minus;
            };
            read_sign("telic", t.telic);
            read_sign("stage", t.stage);
            if (ok) {
                p.expect(TokKind::Comma, "','");
                if (p.peek().kind == TokKind::Signed && p.peek().text.substr(1) == "cumulative") {
                    t.cumulative = p.next().text[0] == '+' ? EventTraits::Cumulative::Cumulative
                                                           : EventTraits::Cumulative::NotCumulative;
                } else if (p.peek().kind == TokKind::Ident && p.peek().text == "unspecified") {
                    p.next();
                    t.cumulative = EventTraits::Cumulative::Unspecified;
                } else {
                    p.error(p.peek(), "expected +cumulative, -cumulative or unspecified");
                    ok = false;
                }
            }
            if (!ok || p.failed)
                continue;
            if (!p.expect(TokKind::RParen, "')'"))
                continue;
            check_uses({{UseCheck::ConceptName, c}}, kw.line, kw.column);
            kb.set_traits(c, t);
        } else if (k == "Gold") {
            p.error(kw, "Gold statements belong in .gold files, not knowledge bases");
        } else {
            p.error(kw, "unknown statement '" + k + "'");
        }
    }

    kb.finalize();
    return result;
}

std::string serialize_kb(const KnowledgeBase& kb,
                         const std::function<std::string(const Axiom&)>* comment_for) {
    std::ostringstream out;
    out << "# forensic-dl knowledge base\n";
    for (const auto& n : kb.concepts())
        out << "Class(" << n << ")\n";
    for (const auto& n : kb.roles())
        out << "Role(" << n << ")\n";
    for (const auto& n : kb.data_properties())
        out << "DataProp(" << n << ")\n";
    for (const auto& n : kb.individuals())
        out << "Individual(" << n << ")\n";
    for (const auto& [name, t] : kb.traits()) {
        out << "Traits(" << name << ", " << (t.telic == EventTraits::Sign::Plus ? "+" : "-")
            << "telic, " << (t.stage == EventTraits::Sign::Plus ? "+" : "-") << "stage, ";
        switch (t.cumulative) {
        case EventTraits::Cumulative::Cumulative:
            out << "+cumulative";
            break;
        case EventTraits::Cumulative::NotCumulative:
            out << "-cumulative";
            break;
        case EventTraits::Cumulative::Unspecified:
            out << "unspecified";
            break;
        }
        out << ")\n";
    }
    for (const auto& ax : kb.axioms()) {
        out << axiom_to_text(ax);
        if (comment_for) {
            std::string note = (*comment_for)(ax);
            if (!note.empty())
                out << "  # " << note;
        }
        out << "\n";
    }
    for (const auto& r : kb.rules())
        out << r.to_text() << "\n";
    return out.str();
}

ConceptRef parse_concept_term(const std::string& text, std::vector<Diagnostic>& diagnostics) {
    LineLexer lex(text, 1, diagnostics);
    Parser p(lex.run(), diagnostics);
    ConceptRef c = p.concept_term();
    if (!p.failed && p.peek().kind != TokKind::End)
        p.error(p.peek(), "trailing tokens after concept term");
    if (p.failed)
        return nullptr;
    for (const auto& d : diagnostics)
        if (d.severity == Diagnostic::Severity::Error)
            return nullptr;
    return c;
}

GoldParseResult parse_gold_labels(const SourceDocument& doc) {
    GoldParseResult result;
    std::istringstream in(doc.text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        LineLexer lex(line, line_no, result.diagnostics);
        auto toks = lex.run();
        if (toks.size() <= 1)
            continue;
        Parser p(std::move(toks), result.diagnostics);
        Token kw = p.next();
        if (kw.kind != TokKind::Ident || kw.text != "Gold") {
            p.error(kw, "expected Gold(Class, individual)");
            continue;
        }
        p.expect(TokKind::LParen, "'('");
        std::string cls = p.expect_ident("class name");
        p.expect(TokKind::Comma, "','");
        std::string ind = p.expect_ident("individual");
        p.expect(TokKind::RParen, "')'");
        if (!p.failed && p.peek().kind != TokKind::End)
            p.error(p.peek(), "trailing tokens after statement");
        if (!p.failed)
            result.labels[cls].insert(ind);
    }
    return result;
}

std::string serialize_gold_labels(const GoldLabels& labels) {
    std::ostringstream out;
    for (const auto& [cls, members] : labels)
        for (const auto& m : members)
            out << "Gold(" << cls << ", " << m << ")\n";
    return out.str();
}

} // namespace fdl
