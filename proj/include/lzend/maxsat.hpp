#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "lzend/parsing.hpp"
#include "lzend/text.hpp"

namespace lzend {

using Clause = std::vector<int32_t>;  // signed DIMACS-style literals

// Weighted CNF: hard clauses plus unit-weight soft clauses.
struct WcnfInstance {
    int32_t num_vars = 0;
    std::vector<Clause> hard;
    std::vector<Clause> soft;
};

// Ties solver variables back to positions: p[i] = "phrase starts at i",
// r (i -> j) = "position i copies position j". The c values are constants of
// the text (leftmost-occurrence flags), never solver variables.
struct VarMap {
    struct RVar {
        int64_t i = 0, j = 0;
        int32_t var = 0;
    };
    struct Group {
        std::vector<int32_t> lits;  // the exactly-one literals, in order
        std::vector<int32_t> aux;   // sequential-counter variables, empty for small groups
    };

    int64_t n = 0;
    int32_t num_vars = 0;
    std::vector<int32_t> p;    // index 1..n (index 0 unused)
    std::vector<uint8_t> c;    // index 1..n
    std::vector<RVar> r;       // ordered by (i, j)
    std::vector<int32_t> aux;  // all auxiliary variable ids
    std::vector<Group> groups;

    int32_t r_var(int64_t i, int64_t j) const {
        RVar key{i, j, 0};
        auto it = std::lower_bound(r.begin(), r.end(), key, [](const RVar& a, const RVar& b) {
            return a.i != b.i ? a.i < b.i : a.j < b.j;
        });
        if (it != r.end() && it->i == i && it->j == j) return it->var;
        return 0;
    }

    // all r variables whose i equals `i`, in j order
    std::span<const RVar> r_at(int64_t i) const {
        auto cmp = [](const RVar& a, const RVar& b) { return a.i < b.i; };
        auto lo = std::lower_bound(r.begin(), r.end(), RVar{i, 0, 0}, cmp);
        auto hi = std::upper_bound(r.begin(), r.end(), RVar{i, 0, 0}, cmp);
        return {r.data() + (lo - r.begin()), static_cast<size_t>(hi - lo)};
    }
};

struct Model {
    std::vector<uint8_t> value;  // index 1..num_vars; index 0 unused
    std::optional<int64_t> reported_cost;

    bool truth(int32_t lit) const {
        const bool v = value[static_cast<size_t>(lit < 0 ? -lit : lit)] != 0;
        return lit < 0 ? !v : v;
    }
};

// Exactly-one over `lits`: the at-least-one clause plus an at-most-one
// encoding, pairwise up to 4 literals and a sequential counter beyond that
// (k-1 auxiliary variables, clause count linear in k).
inline std::vector<Clause> exactly_one(std::span<const int32_t> lits, int32_t& next_var,
                                       std::vector<int32_t>& aux_out) {
    if (lits.empty()) throw ContractError("exactly-one over an empty literal set");
    std::vector<Clause> clauses;
    clauses.emplace_back(lits.begin(), lits.end());
    const size_t k = lits.size();
    if (k <= 4) {
        for (size_t a = 0; a + 1 < k; ++a)
            for (size_t b = a + 1; b < k; ++b) clauses.push_back({-lits[a], -lits[b]});
        return clauses;
    }
    std::vector<int32_t> s(k - 1);
    for (auto& v : s) {
        v = ++next_var;
        aux_out.push_back(v);
    }
    clauses.push_back({-lits[0], s[0]});
    for (size_t i = 1; i + 1 < k; ++i) {
        clauses.push_back({-lits[i], s[i]});
        clauses.push_back({-s[i - 1], s[i]});
        clauses.push_back({-lits[i], -s[i - 1]});
    }
    clauses.push_back({-lits[k - 1], -s[k - 2]});
    return clauses;
}

// Encodes a text as a weighted CNF whose minimum cost equals the optimal
// parsing size. Hard clauses, in generation order:
//   - unit p_i at every leftmost occurrence (p_1 among them),
//   - per non-leftmost i: exactly-one over {r_(i->j) : j in M_i},
//   - per r_(i->j): the phrase-consistency clause, either (~r v p_i) when
//     j = 1 or the preceding symbols differ, else (~r v p_i v r_(i-1 -> j-1)),
//   - per r_(i->j): the phrase-end clause (~r v ~p_(i+1) v p_(j+1)), with the
//     ~p_(i+1) literal dropped at i = n.
// Soft clauses are ~p_i for every i, so the optimum cost counts phrase starts.
inline std::pair<WcnfInstance, VarMap> encode(const Text& t) {
    const int64_t n = t.size();
    WcnfInstance inst;
    VarMap vm;
    vm.n = n;
    if (n == 0) return {inst, vm};

    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    vm.p.assign(static_cast<size_t>(n) + 1, 0);
    vm.c.assign(static_cast<size_t>(n) + 1, 0);
    int32_t next = 0;
    for (int64_t i = 1; i <= n; ++i) {
        vm.p[static_cast<size_t>(i)] = ++next;
        vm.c[static_cast<size_t>(i)] = leftmost[static_cast<size_t>(t.at(i))] == i;
    }
    // M_i = positions j < i with the same symbol; r variables in (i, j) order
    std::vector<std::vector<int64_t>> occurrences(static_cast<size_t>(t.alphabet_size));
    std::vector<std::vector<int64_t>> M(static_cast<size_t>(n) + 1);
    for (int64_t i = 1; i <= n; ++i) {
        auto& occ = occurrences[static_cast<size_t>(t.at(i))];
        M[static_cast<size_t>(i)] = occ;
        occ.push_back(i);
    }
    std::unordered_map<int64_t, int32_t> rlookup;
    for (int64_t i = 2; i <= n; ++i)
        for (int64_t j : M[static_cast<size_t>(i)]) {
            vm.r.push_back({i, j, ++next});
            rlookup.emplace(i * (n + 1) + j, next);
        }

    for (int64_t i = 1; i <= n; ++i)
        if (vm.c[static_cast<size_t>(i)]) inst.hard.push_back({vm.p[static_cast<size_t>(i)]});

    for (int64_t i = 2; i <= n; ++i) {
        const auto& Mi = M[static_cast<size_t>(i)];
        if (Mi.empty()) continue;  // leftmost occurrence, c_i = 1
        std::vector<int32_t> lits;
        lits.reserve(Mi.size());
        for (int64_t j : Mi) lits.push_back(rlookup.at(i * (n + 1) + j));
        VarMap::Group g;
        g.lits = lits;
        const size_t aux_before = vm.aux.size();
        for (Clause& cl : exactly_one(lits, next, vm.aux)) inst.hard.push_back(std::move(cl));
        g.aux.assign(vm.aux.begin() + static_cast<ptrdiff_t>(aux_before), vm.aux.end());
        vm.groups.push_back(std::move(g));
    }

    for (const auto& rv : vm.r) {
        const int32_t pi = vm.p[static_cast<size_t>(rv.i)];
        if (rv.j == 1 || t.at(rv.j - 1) != t.at(rv.i - 1)) {
            inst.hard.push_back({-rv.var, pi});
        } else {
            inst.hard.push_back({-rv.var, pi, rlookup.at((rv.i - 1) * (n + 1) + (rv.j - 1))});
        }
    }
    for (const auto& rv : vm.r) {
        const int32_t pj1 = vm.p[static_cast<size_t>(rv.j) + 1];
        if (rv.i < n) {
            inst.hard.push_back({-rv.var, -vm.p[static_cast<size_t>(rv.i) + 1], pj1});
        } else {
            inst.hard.push_back({-rv.var, pj1});
        }
    }
    for (int64_t i = 1; i <= n; ++i) inst.soft.push_back({-vm.p[static_cast<size_t>(i)]});

    inst.num_vars = next;
    vm.num_vars = next;
    return {inst, vm};
}

// Index of the first hard clause the model falsifies, if any.
inline std::optional<size_t> violated_hard_clause(const WcnfInstance& inst, const Model& m) {
    for (size_t ci = 0; ci < inst.hard.size(); ++ci) {
        bool sat = false;
        for (int32_t lit : inst.hard[ci])
            if (m.truth(lit)) {
                sat = true;
                break;
            }
        if (!sat) return ci;
    }
    return std::nullopt;
}

// Writes the instance in MaxSAT-evaluation WCNF. The default dialect has no
// header: hard clauses as "h <lits> 0", soft as "<weight> <lits> 0". The
// legacy dialect emits a "p wcnf <vars> <clauses> <top>" header with
// top = soft count + 1 and hard clauses weighted top. Output is byte-stable:
// hard clauses in generation order, then soft clauses by position.
inline void write_wcnf(const WcnfInstance& inst, std::ostream& os, bool legacy = false) {
    const auto emit_lits = [&](const Clause& cl) {
        for (int32_t lit : cl) os << ' ' << lit;
        os << " 0\n";
    };
    if (legacy) {
        const int64_t top = static_cast<int64_t>(inst.soft.size()) + 1;
        os << "p wcnf " << inst.num_vars << ' ' << inst.hard.size() + inst.soft.size() << ' '
           << top << '\n';
        for (const Clause& cl : inst.hard) {
            os << top;
            emit_lits(cl);
        }
    } else {
        for (const Clause& cl : inst.hard) {
            os << 'h';
            emit_lits(cl);
        }
    }
    for (const Clause& cl : inst.soft) {
        os << 1;
        emit_lits(cl);
    }
    if (!os) throw Error("io", "failed writing WCNF");
}

namespace detail {

inline bool varmaps_match(const VarMap& a, const VarMap& b) {
    if (a.n != b.n || a.num_vars != b.num_vars || a.p != b.p || a.c != b.c ||
        a.aux != b.aux || a.r.size() != b.r.size())
        return false;
    for (size_t k = 0; k < a.r.size(); ++k)
        if (a.r[k].i != b.r[k].i || a.r[k].j != b.r[k].j || a.r[k].var != b.r[k].var)
            return false;
    return true;
}

} // namespace detail

// Turns a hard-satisfying model back into a parsing: phrase starts are the
// true p_i, and the phrase ending at e copies from the unique j with
// r_(e->j) true. The result is checked against the validator.
inline Parsing decode(const Model& m, const VarMap& vm, const Text& t) {
    Parsing out;
    if (t.size() == 0) return out;
    auto [inst, vm2] = encode(t);
    if (!detail::varmaps_match(vm, vm2))
        throw InputError("variable map does not match the text");
    if (m.value.size() != static_cast<size_t>(inst.num_vars) + 1)
        throw InputError("model must assign all " + std::to_string(inst.num_vars) +
                         " variables");
    if (auto bad = violated_hard_clause(inst, m))
        throw IntegrityError("inconsistent-model",
                             "model violates hard clause " + std::to_string(*bad + 1));

    const int64_t n = t.size();
    std::vector<int64_t> starts;
    for (int64_t i = 1; i <= n; ++i)
        if (m.value[static_cast<size_t>(vm.p[static_cast<size_t>(i)])]) starts.push_back(i);
    if (starts.empty() || starts.front() != 1)
        throw IntegrityError("encoder-bug", "decoded model lacks a phrase start at position 1");
    for (size_t k = 0; k < starts.size(); ++k) {
        const int64_t s = starts[k];
        const int64_t e = (k + 1 < starts.size() ? starts[k + 1] : n + 1) - 1;
        const int64_t len = e - s + 1;
        if (vm.c[static_cast<size_t>(s)]) {
            if (len != 1)
                throw IntegrityError("encoder-bug",
                                     "leftmost occurrence inside a multi-symbol phrase");
            out.phrases.push_back({s, 1, PhraseKind::singleton, 0});
            continue;
        }
        int64_t src = 0;
        for (const auto& rv : vm.r_at(e))
            if (m.value[static_cast<size_t>(rv.var)]) {
                src = rv.j;
                break;
            }
        if (src == 0)
            throw IntegrityError("encoder-bug", "no reference at phrase end " + std::to_string(e));
        out.phrases.push_back({s, len, PhraseKind::copy, src});
    }
    if (ValidationReport rep = validate(t, out); !rep.ok)
        throw IntegrityError("encoder-bug", "decoded parsing fails validation at phrase " +
                                                std::to_string(rep.phrase_index) + ": " + rep.rule);
    return out;
}

// The assignment induced by a valid parsing: p at starts, reference chains
// along every copy phrase, sequential-counter variables as prefix ORs.
// Satisfies every hard clause whenever the parsing is valid.
inline Model assignment_from_parsing(const Parsing& parsing, const VarMap& vm) {
    Model m;
    m.value.assign(static_cast<size_t>(vm.num_vars) + 1, 0);
    for (const Phrase& q : parsing.phrases) {
        m.value[static_cast<size_t>(vm.p[static_cast<size_t>(q.start)])] = 1;
        if (q.kind == PhraseKind::copy) {
            if (q.source_end == 0)
                throw ContractError("copy phrase needs an explicit source end");
            for (int64_t d = 0; d < q.len; ++d) {
                const int32_t rv = vm.r_var(q.end() - d, q.source_end - d);
                if (rv == 0)
                    throw IntegrityError("induced-assignment",
                                         "missing reference variable for phrase at " +
                                             std::to_string(q.start));
                m.value[static_cast<size_t>(rv)] = 1;
            }
        }
    }
    for (const auto& g : vm.groups) {
        if (g.aux.empty()) continue;
        bool any = false;
        for (size_t i = 0; i + 1 < g.lits.size(); ++i) {
            any = any || m.value[static_cast<size_t>(g.lits[i])] != 0;
            m.value[static_cast<size_t>(g.aux[i])] = any ? 1 : 0;
        }
    }
    return m;
}

} // namespace lzend
