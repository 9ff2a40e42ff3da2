// Copyright (c) tdlmc contributors.
// SPDX-License-Identifier: Apache-2.0
#include "tdlmc/nc/constraint.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <mutex>
#include <numeric>
#include <stdexcept>

namespace tdlmc::nc {

// ---------------------------------------------------------------------------
// VarId interner
// ---------------------------------------------------------------------------

namespace {

struct Interner {
    std::mutex mu;
    std::deque<std::string> names{""};  // id 0 reserved; deque keeps references stable
    std::unordered_map<std::string, uint32_t> index;
    uint64_t mint_counter = 0;
};

Interner& interner() {
    static Interner it;
    return it;
}

}  // namespace

VarId VarId::intern(std::string_view name) {
    auto& it = interner();
    std::lock_guard<std::mutex> lock(it.mu);
    auto found = it.index.find(std::string(name));
    if (found != it.index.end()) return VarId(found->second);
    uint32_t id = static_cast<uint32_t>(it.names.size());
    it.names.emplace_back(name);
    it.index.emplace(std::string(name), id);
    return VarId(id);
}

VarId VarId::fresh(std::string_view stem) {
    auto& it = interner();
    std::lock_guard<std::mutex> lock(it.mu);
    for (;;) {
        std::string candidate = std::string(stem) + "$" + std::to_string(++it.mint_counter);
        if (it.index.count(candidate)) continue;
        uint32_t id = static_cast<uint32_t>(it.names.size());
        it.names.push_back(candidate);
        it.index.emplace(std::move(candidate), id);
        return VarId(id);
    }
}

const std::string& VarId::name() const {
    auto& it = interner();
    std::lock_guard<std::mutex> lock(it.mu);
    return it.names.at(id_);
}

// ---------------------------------------------------------------------------
// Atoms and constraints
// ---------------------------------------------------------------------------

NCAtom NCAtom::eq(Term a, Term b) {
    if (b < a) std::swap(a, b);
    return NCAtom{Kind::Eq, a, b};
}

namespace {

std::string term_str(const Term& t) {
    return t.is_const ? std::to_string(t.k) : t.v.name();
}

}  // namespace

std::string NCAtom::str() const {
    if (kind == Kind::Eq) return term_str(lhs) + " = " + term_str(rhs);
    if (lhs.is_const && !rhs.is_const) return term_str(rhs) + " < " + term_str(lhs);
    return term_str(lhs) + " > " + term_str(rhs);
}

NCConstraint NCConstraint::bottom() {
    NCConstraint c;
    c.false_ = true;
    return c;
}

NCConstraint NCConstraint::of(std::vector<NCAtom> atoms) {
    NCConstraint c;
    for (auto& a : atoms) {
        if (a.lhs.is_const && a.rhs.is_const) {
            bool holds = a.kind == NCAtom::Kind::Eq ? a.lhs.k == a.rhs.k : a.lhs.k > a.rhs.k;
            if (!holds) return bottom();
            continue;
        }
        if (a.kind == NCAtom::Kind::Eq && a.lhs == a.rhs) continue;
        c.atoms_.push_back(a);
    }
    std::sort(c.atoms_.begin(), c.atoms_.end());
    c.atoms_.erase(std::unique(c.atoms_.begin(), c.atoms_.end()), c.atoms_.end());
    return c;
}

std::vector<VarId> NCConstraint::vars() const {
    std::vector<VarId> vs;
    for (const auto& a : atoms_) {
        if (!a.lhs.is_const) vs.push_back(a.lhs.v);
        if (!a.rhs.is_const) vs.push_back(a.rhs.v);
    }
    std::sort(vs.begin(), vs.end());
    vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
    return vs;
}

bool NCConstraint::mentions(VarId v) const {
    for (const auto& a : atoms_) {
        if ((!a.lhs.is_const && a.lhs.v == v) || (!a.rhs.is_const && a.rhs.v == v)) return true;
    }
    return false;
}

std::string NCConstraint::str() const {
    if (false_) return "false";
    if (atoms_.empty()) return "true";
    std::string out;
    for (size_t i = 0; i < atoms_.size(); ++i) {
        if (i) out += ", ";
        out += atoms_[i].str();
    }
    return out;
}

NCConstraint conjoin(const NCConstraint& a, const NCConstraint& b) {
    if (a.is_false_marker() || b.is_false_marker()) return NCConstraint::bottom();
    std::vector<NCAtom> atoms = a.atoms();
    atoms.insert(atoms.end(), b.atoms().begin(), b.atoms().end());
    return NCConstraint::of(std::move(atoms));
}

NCConstraint rename(const NCConstraint& phi,
                    const std::unordered_map<VarId, VarId, std::hash<VarId>>& map) {
    // Injectivity on vars(phi): distinct sources must not collapse.
    {
        std::vector<VarId> images;
        for (VarId v : phi.vars()) {
            auto it = map.find(v);
            images.push_back(it == map.end() ? v : it->second);
        }
        std::sort(images.begin(), images.end());
        if (std::adjacent_find(images.begin(), images.end()) != images.end())
            throw std::invalid_argument("rename: mapping not injective on constraint variables");
    }
    if (phi.is_false_marker()) return NCConstraint::bottom();
    auto ren = [&map](Term t) {
        if (t.is_const) return t;
        auto it = map.find(t.v);
        return it == map.end() ? t : Term::var(it->second);
    };
    std::vector<NCAtom> atoms;
    atoms.reserve(phi.atoms().size());
    for (const auto& a : phi.atoms()) {
        atoms.push_back(a.kind == NCAtom::Kind::Eq ? NCAtom::eq(ren(a.lhs), ren(a.rhs))
                                                   : NCAtom::gt(ren(a.lhs), ren(a.rhs)));
    }
    return NCConstraint::of(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Digest: union-find + strict-order closure
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

Digest::Digest(const NCConstraint& phi) {
    if (phi.is_false_marker()) {
        sat_ = false;
        return;
    }
    // Nodes: every variable and every constant textually present.
    auto node_of = [this](const Term& t) {
        if (t.is_const) {
            auto it = const_node_.find(t.k);
            if (it != const_node_.end()) return it->second;
            int n = static_cast<int>(node_class_.size());
            const_node_.emplace(t.k, n);
            node_class_.push_back(n);
            return n;
        }
        auto it = var_node_.find(t.v.raw());
        if (it != var_node_.end()) return it->second;
        int n = static_cast<int>(node_class_.size());
        var_node_.emplace(t.v.raw(), n);
        node_class_.push_back(n);
        return n;
    };
    for (const auto& a : phi.atoms()) {
        node_of(a.lhs);
        node_of(a.rhs);
    }
    int n = static_cast<int>(node_class_.size());
    UnionFind uf(n);
    for (const auto& a : phi.atoms()) {
        if (a.kind == NCAtom::Kind::Eq) uf.unite(node_of(a.lhs), node_of(a.rhs));
    }
    // Dense class indices.
    std::unordered_map<int, int> root_to_class;
    for (int i = 0; i < n; ++i) {
        int root = uf.find(i);
        auto [it, inserted] = root_to_class.emplace(root, static_cast<int>(class_reps_.size()));
        if (inserted) class_reps_.push_back(root);
        node_class_[i] = it->second;
    }
    int k = static_cast<int>(class_reps_.size());
    pins_.assign(k, std::nullopt);
    members_.assign(k, {});
    for (const auto& [c, node] : const_node_) {
        int cls = node_class_[node];
        if (pins_[cls] && *pins_[cls] != c) {
            sat_ = false;  // two distinct constants merged
            return;
        }
        pins_[cls] = c;
    }
    for (const auto& [raw, node] : var_node_) members_[node_class_[node]].push_back(VarId::of_raw(raw));
    for (auto& m : members_) std::sort(m.begin(), m.end());

    // Strict edges: given Gt atoms plus the integer order between constants.
    size_t words = (k + 63) / 64;
    reach_.assign(k, std::vector<uint64_t>(words, 0));
    auto add_edge = [this](int a, int b) { reach_[a][b >> 6] |= uint64_t(1) << (b & 63); };
    for (const auto& a : phi.atoms()) {
        if (a.kind != NCAtom::Kind::Gt) continue;
        int la = a.lhs.is_const ? const_node_.at(a.lhs.k) : var_node_.at(a.lhs.v.raw());
        int lb = a.rhs.is_const ? const_node_.at(a.rhs.k) : var_node_.at(a.rhs.v.raw());
        add_edge(node_class_[la], node_class_[lb]);
    }
    for (const auto& [c1, n1] : const_node_) {
        for (const auto& [c2, n2] : const_node_) {
            if (c1 > c2) add_edge(node_class_[n1], node_class_[n2]);
        }
    }
    // Transitive closure (row-oriented Warshall).
    for (int via = 0; via < k; ++via) {
        for (int a = 0; a < k; ++a) {
            if (!((reach_[a][via >> 6] >> (via & 63)) & 1)) continue;
            for (size_t w = 0; w < words; ++w) reach_[a][w] |= reach_[via][w];
        }
    }
    for (int a = 0; a < k; ++a) {
        if ((reach_[a][a >> 6] >> (a & 63)) & 1) {
            sat_ = false;  // strict cycle
            return;
        }
    }
    // Derived constant bounds per class.
    low_.assign(k, std::nullopt);
    high_.assign(k, std::nullopt);
    for (int a = 0; a < k; ++a) {
        for (int b = 0; b < k; ++b) {
            if (a == b || !closure(a, b)) continue;
            if (pins_[b] && (!low_[a] || *pins_[b] > *low_[a])) low_[a] = pins_[b];
            if (pins_[a] && (!high_[b] || *pins_[a] < *high_[b])) high_[b] = pins_[a];
        }
    }
}

int Digest::class_of(VarId v) const {
    auto it = var_node_.find(v.raw());
    return it == var_node_.end() ? -1 : node_class_[it->second];
}

bool Digest::entails_terms(NCAtom::Kind kind, const Term& l, const Term& r) const {
    if (!sat_) return true;
    if (kind == NCAtom::Kind::Eq) {
        if (l == r) return true;
        if (l.is_const && r.is_const) return l.k == r.k;
        if (!l.is_const && !r.is_const) {
            int a = class_of(l.v), b = class_of(r.v);
            return a >= 0 && a == b;
        }
        const Term& var = l.is_const ? r : l;
        long long c = l.is_const ? l.k : r.k;
        int cls = class_of(var.v);
        return cls >= 0 && pins_[cls] && *pins_[cls] == c;
    }
    // Gt
    if (l == r) return false;
    if (l.is_const && r.is_const) return l.k > r.k;
    if (!l.is_const && !r.is_const) {
        int a = class_of(l.v), b = class_of(r.v);
        return a >= 0 && b >= 0 && a != b && closure(a, b);
    }
    if (r.is_const) {  // var > c
        int cls = class_of(l.v);
        if (cls < 0) return false;
        if (pins_[cls]) return *pins_[cls] > r.k;
        return low_[cls] && *low_[cls] >= r.k;
    }
    // c > var
    int cls = class_of(r.v);
    if (cls < 0) return false;
    if (pins_[cls]) return *pins_[cls] < l.k;
    return high_[cls] && *high_[cls] <= l.k;
}

bool Digest::entails(const NCAtom& a) const { return entails_terms(a.kind, a.lhs, a.rhs); }

bool Digest::entails_all(const NCConstraint& phi) const {
    if (!sat_) return true;
    if (phi.is_false_marker()) return false;
    for (const auto& a : phi.atoms()) {
        if (!entails(a)) return false;
    }
    return true;
}

bool Digest::entails_all_renamed(const NCConstraint& phi,
                                 const std::unordered_map<VarId, VarId, std::hash<VarId>>& map) const {
    if (!sat_) return true;
    if (phi.is_false_marker()) return false;
    auto ren = [&map](const Term& t) {
        if (t.is_const) return t;
        auto it = map.find(t.v);
        return it == map.end() ? t : Term::var(it->second);
    };
    for (const auto& a : phi.atoms()) {
        if (!entails_terms(a.kind, ren(a.lhs), ren(a.rhs))) return false;
    }
    return true;
}

NCConstraint Digest::project(const std::function<bool(VarId)>& keep) const {
    if (!sat_) return NCConstraint::bottom();
    int k = class_count();
    // Representative term per class: the pin when present, else the least
    // kept variable. Classes with neither vanish (their mediated orderings
    // are already in the closure).
    std::vector<std::optional<Term>> rep(k);
    std::vector<std::vector<VarId>> kept(k);
    for (int c = 0; c < k; ++c) {
        for (VarId v : members_[c]) {
            if (keep(v)) kept[c].push_back(v);
        }
        if (pins_[c]) {
            rep[c] = Term::constant(*pins_[c]);
        } else if (!kept[c].empty()) {
            rep[c] = Term::var(kept[c].front());
        }
    }
    std::vector<NCAtom> atoms;
    for (int c = 0; c < k; ++c) {
        if (kept[c].empty()) continue;
        if (pins_[c]) {
            for (VarId v : kept[c]) atoms.push_back(NCAtom::eq_vc(v, *pins_[c]));
        } else {
            for (size_t i = 1; i < kept[c].size(); ++i)
                atoms.push_back(NCAtom::eq_vv(kept[c].front(), kept[c][i]));
        }
    }
    for (int a = 0; a < k; ++a) {
        if (!rep[a]) continue;
        for (int b = 0; b < k; ++b) {
            if (a == b || !rep[b] || !closure(a, b)) continue;
            if (rep[a]->is_const && rep[b]->is_const) continue;  // integer order, implicit
            bool redundant = false;
            for (int m = 0; m < k && !redundant; ++m) {
                if (m != a && m != b && rep[m] && closure(a, m) && closure(m, b)) redundant = true;
            }
            if (!redundant) atoms.push_back(NCAtom::gt(*rep[a], *rep[b]));
        }
    }
    return NCConstraint::of(std::move(atoms));
}

// ---------------------------------------------------------------------------
// Top-level operations
// ---------------------------------------------------------------------------

bool satisfiable(const NCConstraint& phi) { return Digest(phi).satisfiable(); }

bool entails(const NCConstraint& psi, const NCConstraint& phi) {
    return Digest(psi).entails_all(phi);
}

NCConstraint eliminate(const NCConstraint& phi, const std::vector<VarId>& kill) {
    if (kill.empty()) return canonical(phi);
    std::vector<VarId> sorted = kill;
    std::sort(sorted.begin(), sorted.end());
    return Digest(phi).project([&sorted](VarId v) {
        return !std::binary_search(sorted.begin(), sorted.end(), v);
    });
}

NCConstraint canonical(const NCConstraint& phi) {
    return Digest(phi).project([](VarId) { return true; });
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace {

bool ident_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

struct AtomParser {
    std::string_view text;
    size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
    Term term() {
        skip_ws();
        if (pos >= text.size()) throw std::invalid_argument("constraint: expected term");
        char c = text[pos];
        if (c == '-' || std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            if (c == '-') ++pos;
            while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
            return Term::constant(std::stoll(std::string(text.substr(start, pos - start))));
        }
        if (!ident_start(c)) throw std::invalid_argument("constraint: bad term character");
        size_t start = pos;
        while (pos < text.size() && ident_char(text[pos])) ++pos;
        return Term::var(VarId::intern(text.substr(start, pos - start)));
    }
};

}  // namespace

NCConstraint parse_constraint(std::string_view text) {
    AtomParser p{text};
    p.skip_ws();
    std::vector<NCAtom> atoms;
    bool first = true;
    while (!p.done()) {
        if (!first) {
            if (p.text[p.pos] != ',') throw std::invalid_argument("constraint: expected ','");
            ++p.pos;
        }
        first = false;
        p.skip_ws();
        // keywords
        if (p.text.substr(p.pos, 4) == "true" &&
            (p.pos + 4 >= p.text.size() || !ident_char(p.text[p.pos + 4]))) {
            p.pos += 4;
            continue;
        }
        if (p.text.substr(p.pos, 5) == "false" &&
            (p.pos + 5 >= p.text.size() || !ident_char(p.text[p.pos + 5]))) {
            return NCConstraint::bottom();
        }
        Term lhs = p.term();
        p.skip_ws();
        if (p.pos >= p.text.size()) throw std::invalid_argument("constraint: expected relation");
        char op = p.text[p.pos++];
        if (op != '=' && op != '>' && op != '<') throw std::invalid_argument("constraint: bad relation");
        Term rhs = p.term();
        if (op == '=') {
            atoms.push_back(NCAtom::eq(lhs, rhs));
        } else if (op == '>') {
            atoms.push_back(NCAtom::gt(lhs, rhs));
        } else {
            atoms.push_back(NCAtom::gt(rhs, lhs));
        }
        p.skip_ws();
    }
    return NCConstraint::of(std::move(atoms));
}

}  // namespace tdlmc::nc
