// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <random>
#include <vector>

#include "tdlmc/nc/constraint.hpp"

namespace tdlmc::testing {

/// Random NC constraints over a fixed small variable pool with constants in
/// {0..4} — the regime the preorder oracle covers exhaustively.
class RandomNC {
public:
    explicit RandomNC(uint64_t seed) : rng_(seed) {
        for (const char* n : {"a", "b", "c", "d", "e"}) pool_.push_back(nc::VarId::intern(n));
    }

    nc::VarId var() { return pool_[rng_() % pool_.size()]; }
    long long constant() { return static_cast<long long>(rng_() % 5); }

    nc::NCAtom atom() {
        switch (rng_() % 5) {
            case 0: return nc::NCAtom::eq_vv(var(), var());
            case 1: return nc::NCAtom::gt_vv(var(), var());
            case 2: return nc::NCAtom::eq_vc(var(), constant());
            case 3: return nc::NCAtom::gt_vc(var(), constant());
            default: return nc::NCAtom::lt_vc(var(), constant());
        }
    }

    nc::NCConstraint constraint(size_t max_atoms = 6) {
        std::vector<nc::NCAtom> atoms;
        size_t n = rng_() % (max_atoms + 1);
        for (size_t i = 0; i < n; ++i) atoms.push_back(atom());
        return nc::NCConstraint::of(std::move(atoms));
    }

    std::vector<nc::VarId> var_subset() {
        std::vector<nc::VarId> out;
        for (nc::VarId v : pool_) {
            if (rng_() % 3 == 0) out.push_back(v);
        }
        return out;
    }

    std::mt19937_64& rng() { return rng_; }

private:
    std::mt19937_64 rng_;
    std::vector<nc::VarId> pool_;
};

}  // namespace tdlmc::testing
