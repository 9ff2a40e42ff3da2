// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <algorithm>
#include <map>
#include <set>

#include "tdlmc/tdl/ast.hpp"

namespace tdlmc::tdl {

namespace {

// Predicate names claimed by the MSR encoding.
bool reserved_location(const std::string& s) { return s == "init" || s == "fresh" || s == "zero"; }

class Validator {
public:
    explicit Validator(const Program& p) : p_(p) {}

    std::vector<Diagnostic> run() {
        global_names();
        for (const auto& name : p_.initial_pool) {
            if (!p_.find_thread(name))
                report({}, "initial pool references unknown thread '" + name + "'");
        }
        for (const auto& td : p_.threads) thread(td);
        return std::move(diags_);
    }

private:
    const Program& p_;
    std::vector<Diagnostic> diags_;

    void report(SourcePos pos, std::string msg) { diags_.push_back({pos, std::move(msg)}); }

    void global_names() {
        std::set<std::string> consts;
        for (const auto& c : p_.constants) {
            if (!consts.insert(c).second) report({}, "duplicate constant '" + c + "'");
        }
        std::set<std::string> threads;
        // Locals and control locations must be globally distinct.
        std::map<std::string, std::string> owner;  // name -> "local of T" / "location of T"
        for (const auto& td : p_.threads) {
            if (!threads.insert(td.name).second)
                report(td.pos, "duplicate thread name '" + td.name + "'");
            for (const auto& v : td.locals) {
                auto [it, fresh] = owner.emplace(v, "local of " + td.name);
                if (!fresh)
                    report(td.pos, "name '" + v + "' reused (" + it->second + ")");
                if (consts.count(v)) report(td.pos, "local '" + v + "' shadows a constant");
            }
        }
        for (const auto& td : p_.threads) {
            for (const auto& l : td.locations()) {
                auto [it, fresh] = owner.emplace(l, "location of " + td.name);
                if (!fresh)
                    report(td.pos, "name '" + l + "' reused (" + it->second + ")");
                if (consts.count(l)) report(td.pos, "location '" + l + "' shadows a constant");
                if (reserved_location(l))
                    report(td.pos, "location '" + l + "' is reserved by the MSR encoding");
            }
        }
    }

    bool expr_ok(const Expr& e, const ThreadDef& td, const std::vector<std::string>& tmpl,
                 SourcePos pos, const char* where) {
        switch (e.kind) {
            case Expr::Kind::Bottom:
                return true;
            case Expr::Kind::Const:
                if (!p_.has_constant(e.name)) {
                    report(pos, std::string(where) + ": undeclared constant '" + e.name + "'");
                    return false;
                }
                return true;
            case Expr::Kind::Var:
                if (td.has_local(e.name) ||
                    std::find(tmpl.begin(), tmpl.end(), e.name) != tmpl.end())
                    return true;
                report(pos, std::string(where) + ": variable '" + e.name + "' not in scope");
                return false;
        }
        return false;
    }

    void check_guard(const Rule& r, const ThreadDef& td, const std::vector<std::string>& tmpl) {
        for (const auto& g : r.guard) {
            bool lhs_ok = td.has_local(g.var) ||
                          std::find(tmpl.begin(), tmpl.end(), g.var) != tmpl.end();
            if (!lhs_ok) report(r.pos, "guard variable '" + g.var + "' not in scope");
            expr_ok(g.rhs, td, tmpl, r.pos, "guard");
        }
    }

    void check_assign(const Rule& r, const ThreadDef& td, const std::vector<std::string>& tmpl) {
        std::set<std::string> targets;
        for (const auto& b : r.assign) {
            if (!td.has_local(b.target))
                report(r.pos, "assignment target '" + b.target + "' is not a local variable");
            if (!targets.insert(b.target).second)
                report(r.pos, "duplicate assignment target '" + b.target + "'");
            expr_ok(b.value, td, tmpl, r.pos, "assignment");
        }
    }

    void thread(const ThreadDef& td) {
        std::set<std::string> locals(td.locals.begin(), td.locals.end());
        if (locals.size() != td.locals.size()) report(td.pos, "duplicate local variable");
        if (td.initial.empty()) report(td.pos, "thread has no initial location");
        for (const auto& r : td.rules) {
            switch (r.kind) {
                case Rule::Kind::Internal:
                    check_guard(r, td, {});
                    check_assign(r, td, {});
                    break;
                case Rule::Kind::NewName:
                    if (!td.has_local(r.new_var))
                        report(r.pos, "'" + r.new_var + "' is not a local variable");
                    break;
                case Rule::Kind::Spawn: {
                    const ThreadDef* child = p_.find_thread(r.spawn_thread);
                    if (!child) {
                        report(r.pos, "spawn of unknown thread '" + r.spawn_thread + "'");
                        break;
                    }
                    std::set<std::string> seen;
                    for (const auto& b : r.assign) {
                        if (!child->has_local(b.target))
                            report(r.pos, "spawn initializes '" + b.target + "', not a local of " +
                                              child->name);
                        if (!seen.insert(b.target).second)
                            report(r.pos, "duplicate spawn target '" + b.target + "'");
                        expr_ok(b.value, td, {}, r.pos, "spawn");
                    }
                    if (seen.size() != child->locals.size())
                        report(r.pos,
                               "spawn must initialize every local of " + child->name);
                    break;
                }
                case Rule::Kind::Send: {
                    if (r.channel.is_bottom()) {
                        report(r.pos, "channel cannot be bot");
                    } else {
                        expr_ok(r.channel, td, {}, r.pos, "channel");
                    }
                    for (const auto& m : r.message) {
                        if (!td.has_local(m))
                            report(r.pos, "message variable '" + m + "' is not a local");
                    }
                    check_guard(r, td, {});
                    check_assign(r, td, {});
                    break;
                }
                case Rule::Kind::Receive: {
                    if (r.channel.is_bottom()) {
                        report(r.pos, "channel cannot be bot");
                    } else {
                        expr_ok(r.channel, td, {}, r.pos, "channel");
                    }
                    std::set<std::string> tmpl;
                    for (const auto& m : r.message) {
                        if (!tmpl.insert(m).second)
                            report(r.pos, "duplicate template variable '" + m + "'");
                        if (td.has_local(m))
                            report(r.pos,
                                   "template variable '" + m + "' must be fresh, but is a local");
                    }
                    check_guard(r, td, r.message);
                    check_assign(r, td, r.message);
                    break;
                }
            }
        }
    }
};

}  // namespace

std::vector<Diagnostic> validate(const Program& p) { return Validator(p).run(); }

}  // namespace tdlmc::tdl
