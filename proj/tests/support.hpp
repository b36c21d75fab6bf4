#pragma once

// Shared helpers for the unit and acceptance suites: text construction,
// exhaustive enumeration, random valid parsings, and a tiny randomized DPLL
// used to sample hard-satisfying assignments independently of any solver.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lzend/maxsat.hpp"
#include "lzend/optimal.hpp"
#include "lzend/parsing.hpp"
#include "lzend/text.hpp"

namespace lzend::test {

inline Text text_of(const std::string& s) { return canonicalize(std::string_view(s)); }

// Text with the given symbols over alphabet {0..alpha-1}; bypasses the dense
// remap so enumerated tuples keep their symbol pattern.
inline Text text_over(const std::vector<Symbol>& symbols, Symbol alpha) {
    Text t;
    t.symbols = symbols;
    t.alphabet_size = alpha;
    return t;
}

// Calls fn(text) for every string over {0..alpha-1} of each length in
// [min_len, max_len].
template <typename Fn>
void for_each_text(Symbol alpha, int64_t min_len, int64_t max_len, Fn&& fn) {
    for (int64_t n = min_len; n <= max_len; ++n) {
        std::vector<Symbol> sym(static_cast<size_t>(n), 0);
        while (true) {
            fn(text_over(sym, alpha));
            int64_t i = n - 1;
            while (i >= 0 && sym[static_cast<size_t>(i)] == alpha - 1) {
                sym[static_cast<size_t>(i)] = 0;
                --i;
            }
            if (i < 0) break;
            ++sym[static_cast<size_t>(i)];
        }
    }
}

inline Text random_text(std::mt19937_64& rng, int64_t min_len, int64_t max_len, Symbol max_alpha) {
    std::uniform_int_distribution<int64_t> len_dist(min_len, max_len);
    std::uniform_int_distribution<Symbol> alpha_dist(1, max_alpha);
    const int64_t n = len_dist(rng);
    const Symbol alpha = alpha_dist(rng);
    std::vector<Symbol> sym(static_cast<size_t>(n));
    std::uniform_int_distribution<Symbol> sym_dist(0, alpha - 1);
    for (auto& s : sym) s = sym_dist(rng);
    return text_over(sym, alpha);
}

// A uniformly improvised valid parsing: at each position pick any candidate
// length, then any witnessing source end.
inline Parsing random_valid_parsing(const Text& t, std::mt19937_64& rng) {
    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    Parsing p;
    std::vector<int64_t> ends;
    int64_t pos = 1;
    while (pos <= t.size()) {
        const std::vector<int64_t> cands = detail::candidate_lengths_impl(t, leftmost, pos, ends);
        std::uniform_int_distribution<size_t> pick(0, cands.size() - 1);
        const int64_t len = cands[pick(rng)];
        if (len == 1 && leftmost[static_cast<size_t>(t.at(pos))] == pos) {
            p.phrases.push_back({pos, 1, PhraseKind::singleton, 0});
        } else {
            std::vector<int64_t> sources;
            for (int64_t b : ends)
                if (b >= len && detail::ranges_equal(t, b - len + 1, pos, len))
                    sources.push_back(b);
            std::uniform_int_distribution<size_t> spick(0, sources.size() - 1);
            p.phrases.push_back({pos, len, PhraseKind::copy, sources[spick(rng)]});
        }
        pos += len;
        ends.push_back(pos - 1);
    }
    return p;
}

// Randomized DPLL with unit propagation over plain clauses. Good enough for
// the small always-satisfiable hard-clause sets the tests feed it.
class MiniDpll {
public:
    MiniDpll(int32_t num_vars, const std::vector<Clause>& clauses)
        : nv_(num_vars), clauses_(clauses) {}

    // Returns a total assignment (index 1..num_vars) or empty on UNSAT.
    std::vector<uint8_t> solve(std::mt19937_64& rng) {
        val_.assign(static_cast<size_t>(nv_) + 1, -1);
        order_.resize(static_cast<size_t>(nv_));
        for (int32_t v = 1; v <= nv_; ++v) order_[static_cast<size_t>(v - 1)] = v;
        std::shuffle(order_.begin(), order_.end(), rng);
        polarity_.resize(static_cast<size_t>(nv_) + 1);
        std::uniform_int_distribution<int> coin(0, 1);
        for (auto& b : polarity_) b = static_cast<uint8_t>(coin(rng));
        if (!dfs()) return {};
        std::vector<uint8_t> out(static_cast<size_t>(nv_) + 1, 0);
        for (int32_t v = 1; v <= nv_; ++v) out[static_cast<size_t>(v)] = val_[static_cast<size_t>(v)] == 1;
        return out;
    }

private:
    int lit_value(int32_t lit) const {  // -1 unassigned, 0 false, 1 true
        const int8_t v = val_[static_cast<size_t>(lit < 0 ? -lit : lit)];
        if (v < 0) return -1;
        return lit < 0 ? 1 - v : v;
    }

    bool propagate() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (const Clause& cl : clauses_) {
                int unassigned = 0;
                int32_t unit = 0;
                bool sat = false;
                for (int32_t lit : cl) {
                    const int lv = lit_value(lit);
                    if (lv == 1) {
                        sat = true;
                        break;
                    }
                    if (lv == -1) {
                        ++unassigned;
                        unit = lit;
                    }
                }
                if (sat) continue;
                if (unassigned == 0) return false;
                if (unassigned == 1) {
                    val_[static_cast<size_t>(unit < 0 ? -unit : unit)] = unit > 0 ? 1 : 0;
                    changed = true;
                }
            }
        }
        return true;
    }

    bool dfs() {
        std::vector<int8_t> saved = val_;
        if (!propagate()) {
            val_ = saved;
            return false;
        }
        int32_t var = 0;
        for (int32_t v : order_)
            if (val_[static_cast<size_t>(v)] < 0) {
                var = v;
                break;
            }
        if (var == 0) return true;
        std::vector<int8_t> at_decision = val_;
        for (int attempt = 0; attempt < 2; ++attempt) {
            const int8_t value =
                attempt == 0 ? static_cast<int8_t>(polarity_[static_cast<size_t>(var)])
                             : static_cast<int8_t>(1 - polarity_[static_cast<size_t>(var)]);
            val_[static_cast<size_t>(var)] = value;
            if (dfs()) return true;
            val_ = at_decision;
        }
        val_ = saved;
        return false;
    }

    int32_t nv_;
    const std::vector<Clause>& clauses_;
    std::vector<int8_t> val_;
    std::vector<int32_t> order_;
    std::vector<uint8_t> polarity_;
};

} // namespace lzend::test
