#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "lzend/errors.hpp"

namespace lzend {

using Symbol = int32_t;

// A labeled 1-based inclusive span of a text.
struct Segment {
    std::string label;
    int64_t start = 0, end = 0;
};

// A text over a dense 0-based integer alphabet. All public interfaces use
// 1-based positions; at(i) reads the i-th symbol, 1 <= i <= size().
struct Text {
    std::vector<Symbol> symbols;
    Symbol alphabet_size = 0;
    std::string origin;                // provenance note: "bytes", "tokens", "gadget", "family"
    std::vector<std::string> display;  // optional per-symbol rendering; size alphabet_size when set

    int64_t size() const { return static_cast<int64_t>(symbols.size()); }

    Symbol at(int64_t pos) const { return symbols[static_cast<size_t>(pos - 1)]; }

    std::string render(Symbol s) const {
        if (s >= 0 && static_cast<size_t>(s) < display.size()) return display[static_cast<size_t>(s)];
        return std::to_string(s);
    }
};

// 1-based position of the first occurrence of each symbol; index by symbol id.
inline std::vector<int64_t> leftmost_occurrences(const Text& t) {
    std::vector<int64_t> left(static_cast<size_t>(t.alphabet_size), 0);
    for (int64_t i = 1; i <= t.size(); ++i) {
        Symbol s = t.at(i);
        if (left[static_cast<size_t>(s)] == 0) left[static_cast<size_t>(s)] = i;
    }
    return left;
}

// Remaps raw bytes to a dense alphabet in order of first occurrence.
inline Text canonicalize(std::string_view bytes) {
    Text t;
    t.origin = "bytes";
    std::vector<Symbol> map(256, -1);
    t.symbols.reserve(bytes.size());
    for (unsigned char ch : bytes) {
        if (map[ch] < 0) {
            map[ch] = t.alphabet_size++;
            t.display.push_back(std::string(1, static_cast<char>(ch)));
        }
        t.symbols.push_back(map[ch]);
    }
    return t;
}

// Remaps arbitrary non-negative integer tokens to a dense alphabet,
// preserving the equality pattern. Original tokens are kept for display.
inline Text canonicalize(std::span<const int64_t> tokens) {
    Text t;
    t.origin = "tokens";
    std::unordered_map<int64_t, Symbol> seen;
    t.symbols.reserve(tokens.size());
    for (int64_t v : tokens) {
        if (v < 0) throw InputError("negative token " + std::to_string(v));
        auto [it, fresh] = seen.emplace(v, t.alphabet_size);
        if (fresh) {
            ++t.alphabet_size;
            t.display.push_back(std::to_string(v));
        }
        t.symbols.push_back(it->second);
    }
    return t;
}

} // namespace lzend
