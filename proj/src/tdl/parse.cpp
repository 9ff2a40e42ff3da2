// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <cctype>
#include <optional>

#include "tdlmc/tdl/ast.hpp"

namespace tdlmc::tdl {

namespace {

enum class Tok {
    Ident,
    Arrow,      // ->
    Dash,       // -
    Bang,       // !
    Query,      // ?
    LParen,
    RParen,
    LBracket,
    RBracket,
    Comma,
    Semi,
    Colon,
    Assign,     // :=
    Eq,         // =
    Neq,        // !=
    End,
};

struct Token {
    Tok tok;
    std::string text;
    SourcePos pos;
};

const char* const kKeywords[] = {"const", "thread", "local", "init",  "pool", "run",
                                 "with",  "new",    "bot",   "start", "true"};

bool is_keyword(const std::string& s) {
    for (const char* k : kKeywords) {
        if (s == k) return true;
    }
    return false;
}

class Lexer {
public:
    explicit Lexer(std::string_view text) : text_(text) { advance(); }

    const Token& peek() const { return current_; }
    Token next() {
        Token t = current_;
        advance();
        return t;
    }

private:
    void advance() {
        skip_trivia();
        SourcePos pos{line_, col_};
        if (pos_ >= text_.size()) {
            current_ = {Tok::End, "", pos};
            return;
        }
        char c = text_[pos_];
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos_;
            while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                           text_[pos_] == '_' || text_[pos_] == '\'')) {
                take();
            }
            current_ = {Tok::Ident, std::string(text_.substr(start, pos_ - start)), pos};
            return;
        }
        auto two = [this](char a, char b) {
            return pos_ + 1 < text_.size() && text_[pos_] == a && text_[pos_ + 1] == b;
        };
        if (two('-', '>')) {
            take();
            take();
            current_ = {Tok::Arrow, "->", pos};
            return;
        }
        if (two(':', '=')) {
            take();
            take();
            current_ = {Tok::Assign, ":=", pos};
            return;
        }
        if (two('!', '=')) {
            take();
            take();
            current_ = {Tok::Neq, "!=", pos};
            return;
        }
        take();
        switch (c) {
            case '-': current_ = {Tok::Dash, "-", pos}; return;
            case '!': current_ = {Tok::Bang, "!", pos}; return;
            case '?': current_ = {Tok::Query, "?", pos}; return;
            case '(': current_ = {Tok::LParen, "(", pos}; return;
            case ')': current_ = {Tok::RParen, ")", pos}; return;
            case '[': current_ = {Tok::LBracket, "[", pos}; return;
            case ']': current_ = {Tok::RBracket, "]", pos}; return;
            case ',': current_ = {Tok::Comma, ",", pos}; return;
            case ';': current_ = {Tok::Semi, ";", pos}; return;
            case ':': current_ = {Tok::Colon, ":", pos}; return;
            case '=': current_ = {Tok::Eq, "=", pos}; return;
            default: throw ParseError(pos, std::string("unexpected character '") + c + "'");
        }
    }

    void skip_trivia() {
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (c == '#' || (c == '/' && pos_ + 1 < text_.size() && text_[pos_ + 1] == '/')) {
                while (pos_ < text_.size() && text_[pos_] != '\n') take();
            } else if (std::isspace(static_cast<unsigned char>(c))) {
                take();
            } else {
                break;
            }
        }
    }

    void take() {
        if (text_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }

    std::string_view text_;
    size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
    Token current_;
};

class Parser {
public:
    explicit Parser(std::string_view text) : lx_(text) {}

    Program run() {
        while (lx_.peek().tok != Tok::End) {
            Token t = expect_ident("declaration");
            if (t.text == "const") {
                parse_const_decl();
            } else if (t.text == "thread") {
                parse_thread();
            } else if (t.text == "init") {
                parse_pool(t.pos);
            } else {
                throw ParseError(t.pos, "expected 'const', 'thread' or 'init pool', got '" +
                                            t.text + "'");
            }
        }
        resolve_program();
        return std::move(program_);
    }

private:
    Lexer lx_;
    Program program_;
    std::vector<std::pair<SourcePos, std::string>> pool_refs_;

    Token expect(Tok tok, const char* what) {
        Token t = lx_.next();
        if (t.tok != tok) throw ParseError(t.pos, std::string("expected ") + what);
        return t;
    }
    Token expect_ident(const char* what) { return expect(Tok::Ident, what); }
    std::string ident(const char* what) {
        Token t = expect_ident(what);
        if (is_keyword(t.text))
            throw ParseError(t.pos, "keyword '" + t.text + "' cannot be used as " + what);
        return t.text;
    }

    void parse_const_decl() {
        for (;;) {
            program_.constants.push_back(ident("constant name"));
            Token t = lx_.next();
            if (t.tok == Tok::Semi) break;
            if (t.tok != Tok::Comma) throw ParseError(t.pos, "expected ',' or ';'");
        }
    }

    void parse_pool(SourcePos pos) {
        Token kw = expect_ident("'pool'");
        if (kw.text != "pool") throw ParseError(kw.pos, "expected 'pool' after 'init'");
        expect(Tok::Colon, "':'");
        if (lx_.peek().tok == Tok::Semi) {
            lx_.next();
            return;  // empty pool
        }
        for (;;) {
            Token t = expect_ident("thread name");
            pool_refs_.emplace_back(t.pos, t.text);
            program_.initial_pool.push_back(t.text);
            Token sep = lx_.next();
            if (sep.tok == Tok::Semi) break;
            if (sep.tok != Tok::Comma) throw ParseError(sep.pos, "expected ',' or ';'");
        }
        (void)pos;
    }

    void parse_thread() {
        ThreadDef td;
        Token name = expect_ident("thread name");
        if (is_keyword(name.text)) throw ParseError(name.pos, "bad thread name");
        td.name = name.text;
        td.pos = name.pos;
        expect(Tok::LParen, "'('");
        if (lx_.peek().tok == Tok::Ident && lx_.peek().text == "local") {
            lx_.next();
            for (;;) {
                td.locals.push_back(ident("local variable"));
                Token t = lx_.next();
                if (t.tok == Tok::RParen) break;
                if (t.tok != Tok::Comma) throw ParseError(t.pos, "expected ',' or ')'");
            }
        } else {
            expect(Tok::RParen, "')'");
        }
        expect(Tok::Semi, "';'");
        if (lx_.peek().tok == Tok::Ident && lx_.peek().text == "start") {
            lx_.next();
            td.initial = ident("start location");
            expect(Tok::Semi, "';'");
        }
        // Rules: IDENT - ... -> IDENT [ ... ]
        while (lx_.peek().tok == Tok::Ident && !is_keyword(lx_.peek().text)) {
            td.rules.push_back(parse_rule(td));
        }
        if (td.initial.empty()) {
            td.initial = td.rules.empty() ? default_initial_location(td.name)
                                          : td.rules.front().source;
        }
        program_.threads.push_back(std::move(td));
    }

    Expr resolve_expr(const Token& t, const ThreadDef& td, const std::vector<std::string>& tmpl) {
        if (t.text == "bot") return Expr::bottom();
        for (const auto& v : tmpl) {
            if (v == t.text) return Expr::var(t.text);
        }
        if (td.has_local(t.text)) return Expr::var(t.text);
        if (program_.has_constant(t.text)) return Expr::constant(t.text);
        throw ParseError(t.pos, "unknown name '" + t.text + "' (not a local, template variable, or declared constant)");
    }

    Rule parse_rule(const ThreadDef& td) {
        Rule r;
        Token src = expect_ident("source location");
        r.source = src.text;
        r.pos = src.pos;
        expect(Tok::Dash, "'-'");
        Token lbl = expect_ident("action label or channel");
        if (lx_.peek().tok == Tok::Bang || lx_.peek().tok == Tok::Query) {
            bool send = lx_.next().tok == Tok::Bang;
            r.kind = send ? Rule::Kind::Send : Rule::Kind::Receive;
            if (lbl.text == "bot") throw ParseError(lbl.pos, "channel expression cannot be bot");
            if (td.has_local(lbl.text)) {
                r.channel = Expr::var(lbl.text);
            } else if (program_.has_constant(lbl.text)) {
                r.channel = Expr::constant(lbl.text);
            } else {
                throw ParseError(lbl.pos, "unknown channel '" + lbl.text + "'");
            }
            expect(Tok::LParen, "'('");
            if (lx_.peek().tok != Tok::RParen) {
                for (;;) {
                    r.message.push_back(ident("message variable"));
                    Token t = lx_.next();
                    if (t.tok == Tok::RParen) break;
                    if (t.tok != Tok::Comma) throw ParseError(t.pos, "expected ',' or ')'");
                }
            } else {
                lx_.next();
            }
        } else {
            if (is_keyword(lbl.text)) throw ParseError(lbl.pos, "bad action label");
            r.label = lbl.text;
        }
        expect(Tok::Arrow, "'->'");
        r.target = ident("target location");
        expect(Tok::LBracket, "'['");
        parse_body(r, td);
        expect(Tok::RBracket, "']'");
        return r;
    }

    // Bracket body: `run T with ...`, `x := new`, or `guard ; assignment`
    // with either part optional. A part is an assignment iff it uses ':='.
    void parse_body(Rule& r, const ThreadDef& td) {
        std::vector<std::string> tmpl = r.kind == Rule::Kind::Receive ? r.message
                                                                      : std::vector<std::string>{};
        if (lx_.peek().tok == Tok::RBracket) return;  // empty body == true
        if (lx_.peek().tok == Tok::Ident && lx_.peek().text == "run") {
            if (r.kind == Rule::Kind::Send || r.kind == Rule::Kind::Receive)
                throw ParseError(lx_.peek().pos, "thread creation cannot synchronize");
            Token runTok = lx_.next();
            r.kind = Rule::Kind::Spawn;
            r.spawn_thread = ident("thread name");
            (void)runTok;
            if (lx_.peek().tok == Tok::Ident && lx_.peek().text == "with") {
                lx_.next();
                for (;;) {
                    Binding b;
                    b.target = ident("assignment target");
                    expect(Tok::Assign, "':='");
                    Token v = lx_.next();
                    if (v.tok != Tok::Ident) throw ParseError(v.pos, "expected expression");
                    if (v.text == "new")
                        throw ParseError(v.pos, "'new' is not allowed in spawn initialization");
                    b.value = resolve_expr(v, td, {});
                    r.assign.push_back(std::move(b));
                    if (lx_.peek().tok != Tok::Comma) break;
                    lx_.next();
                }
            }
            return;
        }
        bool saw_assign_part = false;
        bool first_part = true;
        while (lx_.peek().tok != Tok::RBracket) {
            if (!first_part) expect(Tok::Semi, "';'");
            first_part = false;
            if (lx_.peek().tok == Tok::RBracket) break;  // trailing ';'
            parse_part(r, td, tmpl, saw_assign_part);
        }
    }

    void parse_part(Rule& r, const ThreadDef& td, const std::vector<std::string>& tmpl,
                    bool& saw_assign_part) {
        // Peek classification: IDENT ':=' starts an assignment part; 'true' or
        // IDENT '='/'!=' starts a guard part.
        Token first = lx_.peek();
        bool is_assign;
        if (first.tok == Tok::Ident && first.text == "true") {
            is_assign = false;
        } else {
            Token id = lx_.next();
            if (id.tok != Tok::Ident) throw ParseError(id.pos, "expected guard or assignment");
            Tok op = lx_.peek().tok;
            is_assign = op == Tok::Assign;
            pending_ = id;  // push back
            if (op != Tok::Assign && op != Tok::Eq && op != Tok::Neq)
                throw ParseError(lx_.peek().pos, "expected ':=', '=' or '!='");
        }
        if (is_assign) {
            if (saw_assign_part) throw ParseError(first.pos, "multiple assignment parts");
            saw_assign_part = true;
            parse_assign_list(r, td, tmpl);
        } else {
            if (!r.guard.empty() || saw_assign_part)
                throw ParseError(first.pos, "guard must come first and appear once");
            parse_guard_list(r, td, tmpl);
        }
    }

    // One-token pushback used by part classification.
    std::optional<Token> pending_;
    Token take_ident(const char* what) {
        if (pending_) {
            Token t = *pending_;
            pending_.reset();
            return t;
        }
        return expect_ident(what);
    }

    void parse_guard_list(Rule& r, const ThreadDef& td, const std::vector<std::string>& tmpl) {
        for (;;) {
            Token id = take_ident("guard variable");
            if (id.text == "true") {
                // drop: true conjuncts are normalized away
            } else {
                GuardAtom g;
                Token op = lx_.next();
                if (op.tok == Tok::Eq) {
                    g.kind = GuardAtom::Kind::Eq;
                } else if (op.tok == Tok::Neq) {
                    g.kind = GuardAtom::Kind::Neq;
                } else {
                    throw ParseError(op.pos, "expected '=' or '!=' in guard");
                }
                g.var = id.text;
                bool known = td.has_local(id.text) ||
                             std::find(tmpl.begin(), tmpl.end(), id.text) != tmpl.end();
                if (!known) throw ParseError(id.pos, "guard variable '" + id.text + "' not in scope");
                Token v = lx_.next();
                if (v.tok != Tok::Ident) throw ParseError(v.pos, "expected expression");
                g.rhs = resolve_expr(v, td, tmpl);
                r.guard.push_back(std::move(g));
            }
            if (lx_.peek().tok != Tok::Comma) break;
            lx_.next();
        }
    }

    void parse_assign_list(Rule& r, const ThreadDef& td, const std::vector<std::string>& tmpl) {
        for (;;) {
            Token id = take_ident("assignment target");
            Token asg = lx_.next();
            if (asg.tok != Tok::Assign) throw ParseError(asg.pos, "expected ':='");
            Token v = lx_.next();
            if (v.tok != Tok::Ident) throw ParseError(v.pos, "expected expression");
            if (v.text == "new") {
                if (r.kind != Rule::Kind::Internal || !r.guard.empty() || !r.assign.empty())
                    throw ParseError(v.pos, "'x := new' must be the entire rule body");
                r.kind = Rule::Kind::NewName;
                r.new_var = id.text;
                if (!td.has_local(id.text))
                    throw ParseError(id.pos, "'" + id.text + "' is not a local variable");
                if (lx_.peek().tok == Tok::Comma)
                    throw ParseError(lx_.peek().pos, "'x := new' must be the entire rule body");
                return;
            }
            Binding b;
            b.target = id.text;
            b.value = resolve_expr(v, td, tmpl);
            r.assign.push_back(std::move(b));
            if (lx_.peek().tok != Tok::Comma) break;
            lx_.next();
        }
    }

    void resolve_program() {
        for (const auto& [pos, name] : pool_refs_) {
            if (!program_.find_thread(name))
                throw ParseError(pos, "initial pool references unknown thread '" + name + "'");
        }
        for (const auto& td : program_.threads) {
            for (const auto& r : td.rules) {
                if (r.kind != Rule::Kind::Spawn) continue;
                const ThreadDef* child = program_.find_thread(r.spawn_thread);
                if (!child)
                    throw ParseError(r.pos, "spawn of unknown thread '" + r.spawn_thread + "'");
                // Totality and target validity of the initialization.
                std::vector<std::string> seen;
                for (const auto& b : r.assign) {
                    if (!child->has_local(b.target))
                        throw ParseError(r.pos, "spawn initializes '" + b.target +
                                                    "', not a local of " + child->name);
                    if (std::find(seen.begin(), seen.end(), b.target) != seen.end())
                        throw ParseError(r.pos, "duplicate spawn target '" + b.target + "'");
                    seen.push_back(b.target);
                }
                if (seen.size() != child->locals.size())
                    throw ParseError(r.pos, "spawn must initialize every local of " + child->name);
            }
        }
    }
};

}  // namespace

Program parse_program(std::string_view text) { return Parser(text).run(); }

}  // namespace tdlmc::tdl
