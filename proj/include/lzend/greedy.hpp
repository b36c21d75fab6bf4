#pragma once

#include <cstdint>
#include <vector>

#include "lzend/parsing.hpp"
#include "lzend/text.hpp"

namespace lzend {

namespace detail {

// Standard Z-array: z[i] = length of the longest common prefix of s and s[i..).
inline void z_array(const Symbol* s, int64_t m, int32_t* z) {
    if (m == 0) return;
    z[0] = static_cast<int32_t>(m);
    int64_t l = 0, r = 0;
    for (int64_t i = 1; i < m; ++i) {
        int64_t zi = 0;
        if (i < r) zi = std::min(r - i, static_cast<int64_t>(z[i - l]));
        while (i + zi < m && s[zi] == s[i + zi]) ++zi;
        z[i] = static_cast<int32_t>(zi);
        if (i + zi > r) {
            l = i;
            r = i + zi;
        }
    }
}

} // namespace detail

// Greedy LZ-End parsing: left to right, each phrase is the leftmost-occurrence
// singleton when the symbol is new, otherwise the longest prefix of the rest
// that occurs ending at some earlier phrase end. Among sources witnessing the
// longest length, the smallest end position is recorded.
//
// Candidate lengths are not closed under taking prefixes (a length can fail
// while a longer one succeeds), so per phrase we scan all occurrence starts
// via a Z-array of suffix # parsed-prefix instead of growing a match.
inline Parsing greedy_parse(const Text& t) {
    const int64_t n = t.size();
    Parsing out;
    if (n == 0) return out;

    const std::vector<int64_t> leftmost = leftmost_occurrences(t);
    std::vector<int64_t> ends;           // committed phrase ends, increasing
    std::vector<int64_t> prev_end(static_cast<size_t>(n) + 1, 0);  // largest end <= x
    std::vector<Symbol> buf;             // suffix, separator, parsed prefix
    std::vector<int32_t> z;
    buf.reserve(static_cast<size_t>(n) + 1);
    z.resize(static_cast<size_t>(n) + 1);

    int64_t pos = 1;
    while (pos <= n) {
        int64_t len = 1;
        int64_t src = 0;
        if (leftmost[static_cast<size_t>(t.at(pos))] == pos) {
            out.phrases.push_back({pos, 1, PhraseKind::singleton, 0});
        } else {
            const int64_t suffix_len = n - pos + 1;
            buf.clear();
            for (int64_t i = pos; i <= n; ++i) buf.push_back(t.at(i));
            buf.push_back(-1);
            for (int64_t i = 1; i < pos; ++i) buf.push_back(t.at(i));
            detail::z_array(buf.data(), static_cast<int64_t>(buf.size()), z.data());
            // z for text position s lives at buffer index suffix_len + s
            const auto zt = [&](int64_t s) { return static_cast<int64_t>(z[suffix_len + s]); };

            int64_t best = 0;
            for (int64_t s = 1; s < pos; ++s) {
                const int64_t zs = zt(s);
                if (zs == 0) continue;
                const int64_t b = prev_end[static_cast<size_t>(s + zs - 1)];
                if (b >= s && b - s + 1 > best) best = b - s + 1;
            }
            // the symbol has occurred before, and its leftmost occurrence is a
            // previous singleton phrase, so a length-1 copy always exists
            if (best < 1)
                throw IntegrityError("greedy", "no copy source at position " + std::to_string(pos));
            for (int64_t b : ends) {
                if (b >= best && zt(b - best + 1) >= best) {
                    src = b;
                    break;
                }
            }
            len = best;
            out.phrases.push_back({pos, len, PhraseKind::copy, src});
        }
        const int64_t last = ends.empty() ? 0 : ends.back();
        const int64_t e = pos + len - 1;
        for (int64_t x = last + 1; x < e; ++x) prev_end[static_cast<size_t>(x)] = last;
        prev_end[static_cast<size_t>(e)] = e;
        ends.push_back(e);
        pos = e + 1;
    }
    return out;
}

} // namespace lzend
