#pragma once

#include <algorithm>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lzend/errors.hpp"
#include "lzend/text.hpp"

namespace lzend {

enum class PhraseKind { singleton, copy };

// One factor of a parsing. A singleton is the leftmost occurrence of its
// symbol and has len 1. A copy repeats text[source_end-len+1 .. source_end],
// where source_end is the end position of some earlier phrase.
// source_end == 0 on a copy means "unknown"; the validator then searches all
// earlier phrase ends for a witness.
struct Phrase {
    int64_t start = 0;  // 1-based
    int64_t len = 0;
    PhraseKind kind = PhraseKind::singleton;
    int64_t source_end = 0;

    int64_t end() const { return start + len - 1; }
};

struct Parsing {
    std::vector<Phrase> phrases;

    int64_t size() const { return static_cast<int64_t>(phrases.size()); }
};

// Cumulative end positions, strictly increasing; last equals the text length.
inline std::vector<int64_t> phrase_ends(const Parsing& p) {
    std::vector<int64_t> ends;
    ends.reserve(p.phrases.size());
    int64_t pos = 0;
    for (const Phrase& q : p.phrases) {
        pos += q.len;
        ends.push_back(pos);
    }
    return ends;
}

struct ValidationReport {
    bool ok = true;
    int64_t phrase_index = 0;  // 1-based index of the first offending phrase; 0 for global defects
    std::string rule;          // violated rule, empty on accept

    explicit operator bool() const { return ok; }
};

namespace detail {

inline bool ranges_equal(const Text& t, int64_t a, int64_t b, int64_t len) {
    for (int64_t d = 0; d < len; ++d)
        if (t.at(a + d) != t.at(b + d)) return false;
    return true;
}

} // namespace detail

// Checks that `p` tiles `t` and that every phrase is a valid singleton or a
// valid copy whose source ends at an earlier phrase end. Rejection reports
// the first offending phrase and the rule it breaks.
inline ValidationReport validate(const Text& t, const Parsing& p) {
    auto reject = [](int64_t idx, std::string rule) {
        return ValidationReport{false, idx, std::move(rule)};
    };
    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    std::vector<int64_t> ends;  // increasing by construction
    int64_t pos = 1;
    for (size_t qi = 0; qi < p.phrases.size(); ++qi) {
        const Phrase& q = p.phrases[qi];
        const int64_t idx = static_cast<int64_t>(qi) + 1;
        if (q.start != pos)
            return reject(idx, "phrase start does not match the parsed prefix");
        if (q.len < 1) return reject(idx, "phrase length must be at least 1");
        if (q.end() > t.size()) return reject(idx, "phrase runs past the end of the text");
        if (q.kind == PhraseKind::singleton) {
            if (q.len != 1) return reject(idx, "singleton phrase must have length 1");
            if (leftmost[static_cast<size_t>(t.at(q.start))] != q.start)
                return reject(idx, "singleton is not the leftmost occurrence of its symbol");
        } else {
            if (q.source_end != 0) {
                if (!std::binary_search(ends.begin(), ends.end(), q.source_end))
                    return reject(idx, "copy source does not end at an earlier phrase end");
                if (q.source_end < q.len)
                    return reject(idx, "copy source would start before the text");
                if (!detail::ranges_equal(t, q.source_end - q.len + 1, q.start, q.len))
                    return reject(idx, "copy does not match its source");
            } else {
                bool found = false;
                for (int64_t b : ends) {
                    if (b >= q.len && detail::ranges_equal(t, b - q.len + 1, q.start, q.len)) {
                        found = true;
                        break;
                    }
                }
                if (!found)
                    return reject(idx, "copy has no source ending at any earlier phrase end");
            }
        }
        pos = q.end() + 1;
        ends.push_back(q.end());
    }
    if (pos != t.size() + 1)
        return reject(0, "phrase lengths do not sum to the text length");
    return ValidationReport{};
}

// Builds a parsing from a length sequence: each factor becomes the forced
// singleton or a copy with the smallest witnessing source end.
inline Parsing annotate_lengths(const Text& t, std::span<const int64_t> lens) {
    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    Parsing p;
    p.phrases.reserve(lens.size());
    std::vector<int64_t> ends;
    int64_t pos = 1;
    for (size_t qi = 0; qi < lens.size(); ++qi) {
        const int64_t len = lens[qi];
        if (len < 1 || pos + len - 1 > t.size())
            throw ContractError("phrase length sequence does not tile the text");
        if (len == 1 && leftmost[static_cast<size_t>(t.at(pos))] == pos) {
            p.phrases.push_back({pos, 1, PhraseKind::singleton, 0});
        } else {
            int64_t src = 0;
            for (int64_t b : ends) {
                if (b >= len && detail::ranges_equal(t, b - len + 1, pos, len)) {
                    src = b;
                    break;
                }
            }
            if (src == 0)
                throw IntegrityError("no-source",
                                     "phrase " + std::to_string(qi + 1) + " at position " +
                                         std::to_string(pos) + " has no valid source");
            p.phrases.push_back({pos, len, PhraseKind::copy, src});
        }
        pos += len;
        ends.push_back(pos - 1);
    }
    if (pos != t.size() + 1) throw ContractError("phrase length sequence does not tile the text");
    return p;
}

inline std::vector<int64_t> phrase_lengths(const Parsing& p) {
    std::vector<int64_t> lens;
    lens.reserve(p.phrases.size());
    for (const Phrase& q : p.phrases) lens.push_back(q.len);
    return lens;
}

} // namespace lzend
