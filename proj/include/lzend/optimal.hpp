#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lzend/greedy.hpp"
#include "lzend/parsing.hpp"
#include "lzend/text.hpp"

namespace lzend {

namespace detail {

// All lengths l such that text[pos .. pos+l-1] equals text[b-l+1 .. b] for
// some committed end b. The set can have gaps, so every length is tried.
inline std::vector<int64_t> candidate_lengths_impl(const Text& t,
                                                   std::span<const int64_t> leftmost,
                                                   int64_t pos,
                                                   std::span<const int64_t> ends) {
    if (leftmost[static_cast<size_t>(t.at(pos))] == pos) return {1};
    const int64_t max_len = t.size() - pos + 1;
    std::vector<char> seen(static_cast<size_t>(max_len) + 1, 0);
    for (int64_t b : ends) {
        const int64_t cap = std::min(b, max_len);
        for (int64_t l = 1; l <= cap; ++l) {
            if (seen[static_cast<size_t>(l)]) continue;
            if (ranges_equal(t, b - l + 1, pos, l)) seen[static_cast<size_t>(l)] = 1;
        }
    }
    std::vector<int64_t> lens;
    for (int64_t l = 1; l <= max_len; ++l)
        if (seen[static_cast<size_t>(l)]) lens.push_back(l);
    return lens;
}

} // namespace detail

// Valid phrase lengths at `pos` given the committed phrase ends. {1} when the
// symbol at pos is a leftmost occurrence (the forced singleton).
inline std::vector<int64_t> candidate_lengths(const Text& t, int64_t pos,
                                              std::span<const int64_t> ends) {
    if (pos < 1 || pos > t.size())
        throw ContractError("position " + std::to_string(pos) + " out of range [1, " +
                            std::to_string(t.size()) + "]");
    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    return detail::candidate_lengths_impl(t, leftmost, pos, ends);
}

struct SearchOptions {
    std::optional<int64_t> upper_bound;  // accept only parsings of at most this size
    uint64_t node_budget = 100'000'000;
    bool prune = true;  // branch-and-bound pruning; disable for plain exhaustive search
};

struct SearchOutcome {
    std::optional<Parsing> parsing;  // empty iff upper_bound excluded every parsing
    uint64_t nodes = 0;
};

// Depth-first search over all LZ-End-like parsings, minimizing phrase count.
// Longer candidates are tried first; with pruning on, the greedy parsing is
// the initial incumbent and nodes are cut with an admissible lower bound
// (forced singletons remaining, plus one if any other symbol is unparsed).
// Ties between optimal parsings resolve toward longer earlier phrases.
inline SearchOutcome search_optimal(const Text& t, const SearchOptions& opts = {}) {
    const int64_t n = t.size();
    SearchOutcome outcome;
    if (n == 0) {
        if (!opts.upper_bound || *opts.upper_bound >= 0) outcome.parsing = Parsing{};
        return outcome;
    }
    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    // forced[pos] = distinct symbols whose leftmost occurrence is at >= pos
    std::vector<int64_t> forced(static_cast<size_t>(n) + 2, 0);
    for (int64_t pos = n; pos >= 1; --pos)
        forced[static_cast<size_t>(pos)] =
            forced[static_cast<size_t>(pos) + 1] +
            (leftmost[static_cast<size_t>(t.at(pos))] == pos ? 1 : 0);

    int64_t best_size;
    std::vector<int64_t> best_lens;
    bool have_best = false;
    if (opts.prune) {
        const Parsing greedy = greedy_parse(t);
        if (!opts.upper_bound || greedy.size() <= *opts.upper_bound) {
            best_size = greedy.size();
            best_lens = phrase_lengths(greedy);
            have_best = true;
        } else {
            best_size = *opts.upper_bound + 1;
        }
    } else {
        best_size = opts.upper_bound ? *opts.upper_bound + 1 : n + 1;
    }

    std::vector<int64_t> ends;
    std::vector<int64_t> lens;
    uint64_t nodes = 0;

    auto rec = [&](auto&& self, int64_t pos, int64_t count) -> void {
        if (++nodes > opts.node_budget)
            throw ResourceError("search node budget exceeded (" +
                                std::to_string(opts.node_budget) + " nodes)");
        if (pos > n) {
            if (count < best_size) {
                best_size = count;
                best_lens = lens;
                have_best = true;
            }
            return;
        }
        if (opts.prune) {
            const int64_t remaining = n - pos + 1;
            const int64_t f = forced[static_cast<size_t>(pos)];
            const int64_t lb = count + f + (remaining > f ? 1 : 0);
            if (lb >= best_size) return;
        }
        std::vector<int64_t> cands = detail::candidate_lengths_impl(t, leftmost, pos, ends);
        for (auto it = cands.rbegin(); it != cands.rend(); ++it) {
            const int64_t l = *it;
            ends.push_back(pos + l - 1);
            lens.push_back(l);
            self(self, pos + l, count + 1);
            lens.pop_back();
            ends.pop_back();
        }
    };
    rec(rec, 1, 0);

    outcome.nodes = nodes;
    if (have_best) outcome.parsing = annotate_lengths(t, best_lens);
    return outcome;
}

// Minimum-size parsing. Throws when an upper_bound excludes every parsing.
inline Parsing optimal_parse(const Text& t, const SearchOptions& opts = {}) {
    SearchOutcome res = search_optimal(t, opts);
    if (!res.parsing)
        throw ContractError("no-parsing-within-bound",
                            "no parsing within bound " +
                                std::to_string(opts.upper_bound.value_or(-1)));
    return *res.parsing;
}

inline int64_t z_end(const Text& t) { return optimal_parse(t).size(); }

} // namespace lzend
