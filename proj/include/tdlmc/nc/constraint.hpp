// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace tdlmc::nc {

/// Interned variable identifier. Interning keeps constraint operations on
/// dense integers; names survive for parsing and printing. Fresh identifiers
/// never collide with interned or previously minted ones.
class VarId {
public:
    VarId() : id_(0) {}

    static VarId intern(std::string_view name);
    static VarId fresh(std::string_view stem);
    static VarId of_raw(uint32_t raw) { return VarId(raw); }

    const std::string& name() const;
    uint32_t raw() const { return id_; }

    friend bool operator==(VarId a, VarId b) { return a.id_ == b.id_; }
    friend auto operator<=>(VarId a, VarId b) { return a.id_ <=> b.id_; }

private:
    explicit VarId(uint32_t id) : id_(id) {}
    uint32_t id_;
};

/// A variable or an integer constant.
struct Term {
    static Term var(VarId v) { return Term{false, v, 0}; }
    static Term constant(long long k) { return Term{true, VarId(), k}; }

    bool is_const = false;
    VarId v;
    long long k = 0;

    friend bool operator==(const Term& a, const Term& b) {
        if (a.is_const != b.is_const) return false;
        return a.is_const ? a.k == b.k : a.v == b.v;
    }
    friend auto operator<=>(const Term& a, const Term& b) {
        if (a.is_const != b.is_const) return a.is_const <=> b.is_const;  // vars before consts
        if (a.is_const) return a.k <=> b.k;
        return a.v <=> b.v;
    }
};

/// One conjunct. The allowed shapes are equality and strict order between a
/// variable and either a variable or an integer constant; Eq(const,const)
/// and Gt(const,const) are evaluated away at construction. The constant-above
/// form (c > x) is carried so that the language stays closed under
/// existential elimination.
struct NCAtom {
    enum class Kind : uint8_t { Eq, Gt };

    Kind kind = Kind::Eq;
    Term lhs, rhs;

    static NCAtom eq(Term a, Term b);
    static NCAtom gt(Term a, Term b) { return NCAtom{Kind::Gt, a, b}; }

    static NCAtom eq_vv(VarId a, VarId b) { return eq(Term::var(a), Term::var(b)); }
    static NCAtom gt_vv(VarId a, VarId b) { return gt(Term::var(a), Term::var(b)); }
    static NCAtom eq_vc(VarId a, long long c) { return eq(Term::var(a), Term::constant(c)); }
    static NCAtom gt_vc(VarId a, long long c) { return gt(Term::var(a), Term::constant(c)); }
    static NCAtom lt_vc(VarId a, long long c) { return gt(Term::constant(c), Term::var(a)); }

    friend bool operator==(const NCAtom&, const NCAtom&) = default;
    friend auto operator<=>(const NCAtom&, const NCAtom&) = default;

    std::string str() const;
};

/// A conjunction of NCAtoms over rational-valued variables. Immutable after
/// construction; the empty conjunction is `true`. Unsatisfiable constraints
/// are ordinary values. Atoms are kept sorted and deduplicated; `canonical`
/// gives the stronger semantic normal form.
class NCConstraint {
public:
    NCConstraint() = default;

    static NCConstraint top() { return NCConstraint(); }
    static NCConstraint bottom();
    static NCConstraint of(std::vector<NCAtom> atoms);

    bool is_top() const { return !false_ && atoms_.empty(); }
    /// Syntactically-false marker (e.g. after conjoining contradictory
    /// constants). Satisfiability in general requires the digest.
    bool is_false_marker() const { return false_; }

    const std::vector<NCAtom>& atoms() const { return atoms_; }
    std::vector<VarId> vars() const;
    bool mentions(VarId v) const;

    std::string str() const;

    friend bool operator==(const NCConstraint&, const NCConstraint&) = default;

private:
    std::vector<NCAtom> atoms_;
    bool false_ = false;
};

NCConstraint conjoin(const NCConstraint& a, const NCConstraint& b);

/// Rewrites variables pointwise. `map` must be injective on vars(phi);
/// throws std::invalid_argument otherwise. Unmapped variables stay.
NCConstraint rename(const NCConstraint& phi, const std::unordered_map<VarId, VarId, std::hash<VarId>>& map);

bool satisfiable(const NCConstraint& phi);
bool entails(const NCConstraint& psi, const NCConstraint& phi);

/// Exact projection: drops `kill` variables; the result's solutions over the
/// remaining variables are exactly the projection of Sol(phi). Exactness
/// rests on density of the rationals: saturating =/> through equivalence
/// classes captures every derivable relation among kept terms.
NCConstraint eliminate(const NCConstraint& phi, const std::vector<VarId>& kill);

/// Semantic normal form: equal for equivalent constraints over the same
/// variable set (a reduced closure, classes represented by least member).
NCConstraint canonical(const NCConstraint& phi);

/// Comma-separated atom syntax: `x = y, x > 0, z < 3`, `true` for the empty
/// conjunction, `false` for the canonical unsatisfiable value.
NCConstraint parse_constraint(std::string_view text);

/// Saturated view of one constraint: equivalence classes over variables and
/// the integer constants they touch, the strict-order closure between
/// classes, and derived constant bounds. All decision procedures run here.
class Digest {
public:
    explicit Digest(const NCConstraint& phi);

    bool satisfiable() const { return sat_; }

    /// True iff phi entails the atom (vacuously when phi is unsatisfiable).
    bool entails(const NCAtom& a) const;
    bool entails_all(const NCConstraint& phi) const;
    /// Entailment of phi with its variables rewritten through `map` on the
    /// fly (callers avoid materializing renamed constraints in inner loops).
    bool entails_all_renamed(const NCConstraint& phi,
                             const std::unordered_map<VarId, VarId, std::hash<VarId>>& map) const;

    /// Reduced saturation restricted to variables passing `keep`.
    NCConstraint project(const std::function<bool(VarId)>& keep) const;

    // Introspection used by the ground-witness enumerators.
    int class_count() const { return static_cast<int>(class_reps_.size()); }
    int class_of(VarId v) const;  // -1 when absent
    std::optional<long long> pinned(int cls) const { return pins_[cls]; }
    bool strictly_above(int a, int b) const { return closure(a, b); }
    const std::vector<std::vector<VarId>>& class_members() const { return members_; }

private:
    bool closure(int a, int b) const { return (reach_[a][b >> 6] >> (b & 63)) & 1; }

    bool sat_ = true;
    std::unordered_map<uint32_t, int> var_node_;            // VarId.raw -> node
    std::unordered_map<long long, int> const_node_;         // constant -> node
    std::vector<int> node_class_;                           // node -> class index
    std::vector<int> class_reps_;                           // class -> representative node
    std::vector<std::optional<long long>> pins_;            // class -> pinned constant
    std::vector<std::vector<uint64_t>> reach_;              // strict-order closure over classes
    std::vector<std::vector<VarId>> members_;               // class -> sorted member vars
    std::vector<std::optional<long long>> low_;             // max pinned strict descendant
    std::vector<std::optional<long long>> high_;            // min pinned strict ancestor

    bool entails_terms(NCAtom::Kind kind, const Term& l, const Term& r) const;
};

}  // namespace tdlmc::nc

template <>
struct std::hash<tdlmc::nc::VarId> {
    size_t operator()(const tdlmc::nc::VarId& v) const { return std::hash<uint32_t>()(v.raw()); }
};
