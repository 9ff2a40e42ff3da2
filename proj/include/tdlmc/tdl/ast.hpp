// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace tdlmc::tdl {

struct SourcePos {
    int line = 0;
    int col = 0;
};

/// Expressions are names only: a local variable, a declared constant, or the
/// undefined value `bot`.
struct Expr {
    enum class Kind { Var, Const, Bottom };

    Kind kind = Kind::Bottom;
    std::string name;

    static Expr var(std::string n) { return {Kind::Var, std::move(n)}; }
    static Expr constant(std::string n) { return {Kind::Const, std::move(n)}; }
    static Expr bottom() { return {Kind::Bottom, ""}; }

    bool is_bottom() const { return kind == Kind::Bottom; }
    friend bool operator==(const Expr&, const Expr&) = default;
};

struct GuardAtom {
    enum class Kind { Eq, Neq };
    Kind kind = Kind::Eq;
    std::string var;
    Expr rhs;
    friend bool operator==(const GuardAtom&, const GuardAtom&) = default;
};

/// Conjunction; the empty list is `true`.
using Guard = std::vector<GuardAtom>;

struct Binding {
    std::string target;
    Expr value;
    friend bool operator==(const Binding&, const Binding&) = default;
};

using Assignment = std::vector<Binding>;

struct Rule {
    enum class Kind { Internal, NewName, Spawn, Send, Receive };

    Kind kind = Kind::Internal;
    std::string source;
    std::string label;  // internal action label (Internal/NewName/Spawn)
    std::string target;

    Guard guard;         // Internal/Send/Receive
    Assignment assign;   // Internal/Send/Receive updates; Spawn: child initialization
    std::string new_var;         // NewName
    std::string spawn_thread;    // Spawn
    Expr channel;                // Send/Receive (never Bottom)
    std::vector<std::string> message;  // template variables

    SourcePos pos;

    friend bool operator==(const Rule& a, const Rule& b) {
        return a.kind == b.kind && a.source == b.source && a.label == b.label &&
               a.target == b.target && a.guard == b.guard && a.assign == b.assign &&
               a.new_var == b.new_var && a.spawn_thread == b.spawn_thread &&
               a.channel == b.channel && a.message == b.message;
    }
};

struct ThreadDef {
    std::string name;
    std::vector<std::string> locals;
    std::string initial;
    std::vector<Rule> rules;
    SourcePos pos;

    /// Initial location plus every rule endpoint, in first-occurrence order.
    std::vector<std::string> locations() const;
    bool has_local(const std::string& n) const;

    friend bool operator==(const ThreadDef& a, const ThreadDef& b) {
        return a.name == b.name && a.locals == b.locals && a.initial == b.initial &&
               a.rules == b.rules;
    }
};

struct Program {
    std::vector<std::string> constants;
    std::vector<ThreadDef> threads;
    std::vector<std::string> initial_pool;  // multiset of thread names

    const ThreadDef* find_thread(const std::string& name) const;
    bool has_constant(const std::string& name) const;

    friend bool operator==(const Program& a, const Program& b) {
        return a.constants == b.constants && a.threads == b.threads &&
               a.initial_pool == b.initial_pool;
    }
};

/// Synthesized initial location for a thread declared with an empty body.
std::string default_initial_location(const std::string& thread_name);

struct ParseError : std::runtime_error {
    ParseError(SourcePos p, const std::string& msg)
        : std::runtime_error("line " + std::to_string(p.line) + ":" + std::to_string(p.col) +
                             ": " + msg),
          pos(p) {}
    SourcePos pos;
};

struct Diagnostic {
    SourcePos pos;
    std::string message;
};

Program parse_program(std::string_view text);
std::string pretty_print(const Program& p);
std::vector<Diagnostic> validate(const Program& p);

}  // namespace tdlmc::tdl
