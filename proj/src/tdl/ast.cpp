// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tdlmc/tdl/ast.hpp"

#include <algorithm>

namespace tdlmc::tdl {

std::vector<std::string> ThreadDef::locations() const {
    std::vector<std::string> out;
    auto add = [&out](const std::string& l) {
        if (!l.empty() && std::find(out.begin(), out.end(), l) == out.end()) out.push_back(l);
    };
    add(initial);
    for (const auto& r : rules) {
        add(r.source);
        add(r.target);
    }
    return out;
}

bool ThreadDef::has_local(const std::string& n) const {
    return std::find(locals.begin(), locals.end(), n) != locals.end();
}

const ThreadDef* Program::find_thread(const std::string& name) const {
    for (const auto& t : threads) {
        if (t.name == name) return &t;
    }
    return nullptr;
}

bool Program::has_constant(const std::string& name) const {
    return std::find(constants.begin(), constants.end(), name) != constants.end();
}

std::string default_initial_location(const std::string& thread_name) {
    return "s0_" + thread_name;
}

}  // namespace tdlmc::tdl
