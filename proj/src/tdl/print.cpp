// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#include <sstream>

#include "tdlmc/tdl/ast.hpp"

namespace tdlmc::tdl {

namespace {

std::string expr_str(const Expr& e) { return e.is_bottom() ? "bot" : e.name; }

std::string guard_str(const Guard& g) {
    std::string out;
    for (size_t i = 0; i < g.size(); ++i) {
        if (i) out += ", ";
        out += g[i].var + (g[i].kind == GuardAtom::Kind::Eq ? " = " : " != ") + expr_str(g[i].rhs);
    }
    return out;
}

std::string assign_str(const Assignment& a) {
    std::string out;
    for (size_t i = 0; i < a.size(); ++i) {
        if (i) out += ", ";
        out += a[i].target + " := " + expr_str(a[i].value);
    }
    return out;
}

std::string body_str(const Rule& r) {
    switch (r.kind) {
        case Rule::Kind::NewName:
            return r.new_var + " := new";
        case Rule::Kind::Spawn: {
            std::string out = "run " + r.spawn_thread;
            if (!r.assign.empty()) out += " with " + assign_str(r.assign);
            return out;
        }
        default: {
            if (r.guard.empty() && r.assign.empty()) return "true";
            if (r.guard.empty()) return assign_str(r.assign);
            if (r.assign.empty()) return guard_str(r.guard);
            return guard_str(r.guard) + "; " + assign_str(r.assign);
        }
    }
}

std::string label_str(const Rule& r) {
    if (r.kind == Rule::Kind::Send || r.kind == Rule::Kind::Receive) {
        std::string out = expr_str(r.channel);
        out += r.kind == Rule::Kind::Send ? "!(" : "?(";
        for (size_t i = 0; i < r.message.size(); ++i) {
            if (i) out += ", ";
            out += r.message[i];
        }
        out += ")";
        return out;
    }
    return r.label;
}

}  // namespace

std::string pretty_print(const Program& p) {
    std::ostringstream out;
    if (!p.constants.empty()) {
        out << "const ";
        for (size_t i = 0; i < p.constants.size(); ++i) {
            if (i) out << ", ";
            out << p.constants[i];
        }
        out << ";\n\n";
    }
    for (const auto& td : p.threads) {
        out << "thread " << td.name << "(";
        if (!td.locals.empty()) {
            out << "local ";
            for (size_t i = 0; i < td.locals.size(); ++i) {
                if (i) out << ", ";
                out << td.locals[i];
            }
        }
        out << ");\n";
        bool needs_start = td.rules.empty()
                               ? td.initial != default_initial_location(td.name)
                               : td.initial != td.rules.front().source;
        if (needs_start) out << "  start " << td.initial << ";\n";
        for (const auto& r : td.rules) {
            out << "  " << r.source << " -" << label_str(r) << "-> " << r.target << " ["
                << body_str(r) << "]\n";
        }
        out << "\n";
    }
    out << "init pool:";
    if (p.initial_pool.empty()) {
        out << ";\n";
    } else {
        for (size_t i = 0; i < p.initial_pool.size(); ++i) {
            out << (i ? ", " : " ") << p.initial_pool[i];
        }
        out << ";\n";
    }
    return out.str();
}

}  // namespace tdlmc::tdl
