#pragma once

#include <cstdint>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "lzend/greedy.hpp"
#include "lzend/parsing.hpp"
#include "lzend/text.hpp"

namespace lzend {

// The binary lower-bound family
//   w_k = aa . a^2 a^4 ... a^{2^k} . b^4 . (a^1 b^3)(a^2 b^3)...(a^K b^3)
// with K = 2^{k+1} - 2. Greedy parses it into 2K+k+5 phrases while a parsing
// of size K+k+6 exists, so the greedy/optimal ratio approaches 2.
struct FamilyInstance {
    int64_t k = 0;
    int64_t K = 0;
    Text text;              // alphabet {a -> 0, b -> 1}
    int64_t prefix_len = 0; // |W_0| = K + 6
    std::vector<Segment> spans;  // "W0", then "B1".."BK"
};

inline int64_t family_K(int64_t k) { return (int64_t{2} << k) - 2; }
inline int64_t family_length(int64_t k) {
    const int64_t K = family_K(k);
    return 6 + K + K * (K + 7) / 2;
}
inline int64_t family_greedy_size(int64_t k) { return 2 * family_K(k) + k + 5; }
inline int64_t family_witness_size(int64_t k) { return family_K(k) + k + 6; }

inline FamilyInstance build_family(int64_t k) {
    if (k < 1) throw ContractError("family parameter k must be at least 1, got " + std::to_string(k));
    FamilyInstance f;
    f.k = k;
    f.K = family_K(k);
    Text& t = f.text;
    t.alphabet_size = 2;
    t.display = {"a", "b"};
    t.origin = "family";
    t.symbols.reserve(static_cast<size_t>(family_length(k)));
    const Symbol a = 0, b = 1;
    const auto run = [&](Symbol s, int64_t count) {
        t.symbols.insert(t.symbols.end(), static_cast<size_t>(count), s);
    };
    run(a, 2);
    for (int64_t i = 1; i <= k; ++i) run(a, int64_t{1} << i);
    run(b, 4);
    f.prefix_len = t.size();
    f.spans.push_back({"W0", 1, f.prefix_len});
    for (int64_t j = 1; j <= f.K; ++j) {
        const int64_t start = t.size() + 1;
        run(a, j);
        run(b, 3);
        f.spans.push_back({"B" + std::to_string(j), start, t.size()});
    }
    if (t.size() != family_length(k))
        throw IntegrityError("family-integrity", "constructed length differs from the closed form");
    return f;
}

struct FamilyGreedyReport {
    int64_t k = 0, K = 0, n = 0;
    int64_t greedy_size = 0;
    int64_t expected = 0;       // 2K + k + 5
    bool prefix_ok = false;     // W0 parses as a, a, a^2, ..., a^{2^k}, b, b, b^2
    bool blocks_ok = false;     // every block j appends exactly a^j b^2, b
};

// Runs greedy on w_k and checks the phrase structure block by block.
inline FamilyGreedyReport check_greedy_family(int64_t k) {
    const FamilyInstance f = build_family(k);
    const Parsing greedy = greedy_parse(f.text);
    FamilyGreedyReport rep;
    rep.k = k;
    rep.K = f.K;
    rep.n = f.text.size();
    rep.greedy_size = greedy.size();
    rep.expected = family_greedy_size(k);

    std::vector<int64_t> expect_prefix = {1, 1};
    for (int64_t i = 1; i <= k; ++i) expect_prefix.push_back(int64_t{1} << i);
    expect_prefix.insert(expect_prefix.end(), {1, 1, 2});
    const std::vector<int64_t> lens = phrase_lengths(greedy);
    rep.prefix_ok = lens.size() >= expect_prefix.size() &&
                    std::equal(expect_prefix.begin(), expect_prefix.end(), lens.begin());
    rep.blocks_ok = true;
    size_t at = expect_prefix.size();
    for (int64_t j = 1; j <= f.K && rep.blocks_ok; ++j) {
        rep.blocks_ok = at + 2 <= lens.size() && lens[at] == j + 2 && lens[at + 1] == 1;
        at += 2;
    }
    if (rep.blocks_ok) rep.blocks_ok = at == lens.size();

    if (rep.greedy_size != rep.expected || !rep.prefix_ok || !rep.blocks_ok)
        throw IntegrityError("family-integrity",
                             "greedy parsing of w_" + std::to_string(k) +
                                 " does not match the closed form (size " +
                                 std::to_string(rep.greedy_size) + ", expected " +
                                 std::to_string(rep.expected) + ")");
    return rep;
}

// The explicit small parsing: a, a, a^2, ..., a^{2^k}, then the b run as four
// length-1 phrases, then each block a^j b^3 as a single phrase sourced at the
// end of the b run. All sources are written down, so validation is linear.
inline Parsing witness_parsing_family(int64_t k) {
    const FamilyInstance f = build_family(k);
    Parsing p;
    p.phrases.push_back({1, 1, PhraseKind::singleton, 0});
    p.phrases.push_back({2, 1, PhraseKind::copy, 1});
    int64_t pos = 3;
    for (int64_t i = 1; i <= k; ++i) {
        const int64_t len = int64_t{1} << i;
        p.phrases.push_back({pos, len, PhraseKind::copy, len});
        pos += len;
    }
    const int64_t K = f.K;
    p.phrases.push_back({K + 3, 1, PhraseKind::singleton, 0});
    for (int64_t d = 1; d <= 3; ++d) p.phrases.push_back({K + 3 + d, 1, PhraseKind::copy, K + 3});
    pos = K + 7;
    for (int64_t j = 1; j <= K; ++j) {
        p.phrases.push_back({pos, j + 3, PhraseKind::copy, K + 5});
        pos += j + 3;
    }
    if (ValidationReport rep = validate(f.text, p); !rep.ok)
        throw IntegrityError("family-integrity", "witness parsing rejected at phrase " +
                                                     std::to_string(rep.phrase_index) + ": " +
                                                     rep.rule);
    if (p.size() != family_witness_size(k))
        throw IntegrityError("family-integrity", "witness size differs from K+k+6");
    return p;
}

struct RatioRow {
    int64_t k = 0, K = 0, n = 0;
    int64_t greedy = 0;   // measured when `measured`, otherwise the closed form
    int64_t witness = 0;  // validated when `measured`, otherwise the closed form
    double ratio = 0.0;
    bool measured = false;
};

// Rows k = 1..k_max. Rows whose text fits under measure_max_n run the greedy
// parser and validate the witness; larger rows use the closed forms only and
// are marked. Ratios must increase strictly toward 2.
inline std::vector<RatioRow> ratio_table(int64_t k_max, int64_t measure_max_n = 200000) {
    if (k_max < 1) throw ContractError("table needs k_max >= 1");
    std::vector<RatioRow> rows;
    for (int64_t k = 1; k <= k_max; ++k) {
        RatioRow row;
        row.k = k;
        row.K = family_K(k);
        row.n = family_length(k);
        row.measured = row.n <= measure_max_n;
        if (row.measured) {
            row.greedy = check_greedy_family(k).greedy_size;
            row.witness = witness_parsing_family(k).size();
        } else {
            row.greedy = family_greedy_size(k);
            row.witness = family_witness_size(k);
        }
        row.ratio = static_cast<double>(row.greedy) / static_cast<double>(row.witness);
        if (!rows.empty() && row.ratio <= rows.back().ratio)
            throw IntegrityError("family-integrity", "ratio not increasing at k=" + std::to_string(k));
        rows.push_back(row);
    }
    return rows;
}

inline void write_ratio_table_text(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << std::setw(4) << "k" << std::setw(8) << "K" << std::setw(12) << "n" << std::setw(10)
       << "greedy" << std::setw(10) << "witness" << std::setw(10) << "ratio"
       << "  source\n";
    for (const RatioRow& r : rows) {
        os << std::setw(4) << r.k << std::setw(8) << r.K << std::setw(12) << r.n << std::setw(10)
           << r.greedy << std::setw(10) << r.witness << std::setw(10) << std::fixed
           << std::setprecision(4) << r.ratio << "  " << (r.measured ? "measured" : "formula")
           << "\n";
    }
}

inline void write_ratio_table_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << "k,n,z_e_measured,witness_size,ratio,measured\n";
    for (const RatioRow& r : rows) {
        os << r.k << ',' << r.n << ',' << r.greedy << ',' << r.witness << ','
           << std::fixed << std::setprecision(6) << r.ratio << ','
           << (r.measured ? "yes" : "no") << "\n";
    }
}

} // namespace lzend
