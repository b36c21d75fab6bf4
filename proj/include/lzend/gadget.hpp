#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lzend/graph.hpp"
#include "lzend/greedy.hpp"
#include "lzend/parsing.hpp"
#include "lzend/solver.hpp"
#include "lzend/text.hpp"

namespace lzend {

// The vertex-cover reduction string W_G = P_1..P_n Q_1..Q_m R_1..R_n S_1..S_m
// over the alphabet {v_1..v_n, e_1..e_m, $, #_1..#_h}, where every #_t is a
// fresh symbol occurring exactly once. Symbol ids: v_i -> i-1, e_j -> n+j-1,
// $ -> n+m, #_t -> n+m+t.
struct GadgetString {
    Text text;
    std::vector<Segment> segments;      // P..., Q..., R..., S... in text order
    std::vector<Segment> sub_segments;  // X_i and Y_i spans inside each P_i
    int64_t n = 0, m = 0;

    const Segment& segment(const std::string& label) const {
        for (const Segment& s : segments)
            if (s.label == label) return s;
        throw ContractError("unknown segment " + label);
    }
};

// Builds W_G from the graph. Segment shapes (Gam = incident edge list of v_i,
// ascending edge index):
//   P_i = v^3 # v^2 $ # v $ $ #  (v $ e #)*   (e e v #)*
//   Q_j = e^3 #
//   R_i = v^4 $ (e^3 v^2 $)* $ #
//   S_j = $ e^3 #
// Total length 19n + 37m; hash symbols number 4n + 6m.
inline GadgetString build_gadget(const Graph& g) {
    check_reduction_preconditions(g);
    const int64_t n = g.n, m = g.m();
    const auto inc = incident_edges(g);

    GadgetString out;
    out.n = n;
    out.m = m;
    Text& t = out.text;
    t.origin = "gadget";

    const Symbol dollar = static_cast<Symbol>(n + m);
    const auto vsym = [&](int64_t i) { return static_cast<Symbol>(i - 1); };
    const auto esym = [&](int64_t j) { return static_cast<Symbol>(n + j - 1); };
    int64_t hashes = 0;
    const auto fresh = [&]() { return static_cast<Symbol>(n + m + 1 + hashes++); };

    const auto begin_segment = [&]() { return t.size() + 1; };
    const auto close_segment = [&](std::vector<Segment>& where, const std::string& label,
                                   int64_t start) {
        where.push_back({label, start, t.size()});
    };
    const auto push = [&](Symbol s) { t.symbols.push_back(s); };

    for (int64_t i = 1; i <= n; ++i) {
        const int64_t start = begin_segment();
        const Symbol v = vsym(i);
        push(v); push(v); push(v); push(fresh());
        push(v); push(v); push(dollar); push(fresh());
        push(v); push(dollar); push(dollar); push(fresh());
        const int64_t xstart = begin_segment();
        for (int64_t j : inc[static_cast<size_t>(i)]) {
            push(v); push(dollar); push(esym(j)); push(fresh());
        }
        close_segment(out.sub_segments, "X" + std::to_string(i), xstart);
        const int64_t ystart = begin_segment();
        for (int64_t j : inc[static_cast<size_t>(i)]) {
            push(esym(j)); push(esym(j)); push(v); push(fresh());
        }
        close_segment(out.sub_segments, "Y" + std::to_string(i), ystart);
        close_segment(out.segments, "P" + std::to_string(i), start);
    }
    for (int64_t j = 1; j <= m; ++j) {
        const int64_t start = begin_segment();
        push(esym(j)); push(esym(j)); push(esym(j)); push(fresh());
        close_segment(out.segments, "Q" + std::to_string(j), start);
    }
    for (int64_t i = 1; i <= n; ++i) {
        const int64_t start = begin_segment();
        const Symbol v = vsym(i);
        push(v); push(v); push(v); push(v); push(dollar);
        for (int64_t j : inc[static_cast<size_t>(i)]) {
            push(esym(j)); push(esym(j)); push(esym(j)); push(v); push(v); push(dollar);
        }
        push(dollar); push(fresh());
        close_segment(out.segments, "R" + std::to_string(i), start);
    }
    for (int64_t j = 1; j <= m; ++j) {
        const int64_t start = begin_segment();
        push(dollar); push(esym(j)); push(esym(j)); push(esym(j)); push(fresh());
        close_segment(out.segments, "S" + std::to_string(j), start);
    }

    t.alphabet_size = static_cast<Symbol>(n + m + 1 + hashes);
    t.display.reserve(static_cast<size_t>(t.alphabet_size));
    for (int64_t i = 1; i <= n; ++i) t.display.push_back("v" + std::to_string(i));
    for (int64_t j = 1; j <= m; ++j) t.display.push_back("e" + std::to_string(j));
    t.display.push_back("$");
    for (int64_t h = 1; h <= hashes; ++h) t.display.push_back("#" + std::to_string(h));

    if (t.size() != 19 * n + 37 * m)
        throw IntegrityError("reduction-integrity",
                             "gadget length " + std::to_string(t.size()) + " differs from 19n+37m");
    if (hashes != 4 * n + 6 * m)
        throw IntegrityError("reduction-integrity", "hash symbol count differs from 4n+6m");
    return out;
}

// Per-segment phrase counts of a parsing of W_G. Every phrase must fall
// inside one top-level segment.
inline std::map<std::string, int64_t> bucket_by_segment(const GadgetString& w, const Parsing& p) {
    std::map<std::string, int64_t> counts;
    for (const Segment& s : w.segments) counts[s.label] = 0;
    size_t si = 0;
    for (const Phrase& q : p.phrases) {
        while (si < w.segments.size() && w.segments[si].end < q.start) ++si;
        if (si >= w.segments.size() || q.start < w.segments[si].start ||
            q.end() > w.segments[si].end)
            throw IntegrityError("segment-alignment",
                                 "phrase at position " + std::to_string(q.start) +
                                     " crosses a segment boundary");
        ++counts[w.segments[si].label];
    }
    return counts;
}

struct SegmentCounts {
    GadgetString gadget;
    Parsing greedy;
    std::map<std::string, int64_t> per_segment;
    int64_t p_part = 0, q_part = 0, r_part = 0, s_part = 0, total = 0;
};

// Greedy-parses W_G and checks every count the construction promises:
// P-part 10n+13m, Q-part 3m, each R_i 2|Gam(v_i)|+3, each S_j 3, and the
// grand total 13n+23m. Any mismatch is an integrity failure.
inline SegmentCounts greedy_counts(const Graph& g) {
    SegmentCounts sc;
    sc.gadget = build_gadget(g);
    sc.greedy = greedy_parse(sc.gadget.text);
    sc.per_segment = bucket_by_segment(sc.gadget, sc.greedy);
    const int64_t n = g.n, m = g.m();
    const auto inc = incident_edges(g);
    for (const auto& [label, cnt] : sc.per_segment) {
        switch (label[0]) {
            case 'P': sc.p_part += cnt; break;
            case 'Q': sc.q_part += cnt; break;
            case 'R': sc.r_part += cnt; break;
            case 'S': sc.s_part += cnt; break;
        }
    }
    sc.total = sc.greedy.size();
    const auto fail = [](const std::string& what) {
        throw IntegrityError("reduction-integrity", what);
    };
    if (sc.p_part != 10 * n + 13 * m) fail("P-part phrase count differs from 10n+13m");
    if (sc.q_part != 3 * m) fail("Q-part phrase count differs from 3m");
    for (int64_t i = 1; i <= n; ++i) {
        const int64_t deg = static_cast<int64_t>(inc[static_cast<size_t>(i)].size());
        if (sc.per_segment.at("R" + std::to_string(i)) != 2 * deg + 3)
            fail("R" + std::to_string(i) + " greedy phrase count differs from 2|Gam|+3");
    }
    for (int64_t j = 1; j <= m; ++j)
        if (sc.per_segment.at("S" + std::to_string(j)) != 3)
            fail("S" + std::to_string(j) + " greedy phrase count differs from 3");
    if (sc.total != 13 * n + 23 * m) fail("greedy total differs from 13n+23m");
    return sc;
}

// The explicit parsing a vertex cover induces: greedy on the P and Q parts;
// for covered vertices the alternative R_i tiling
//   v^2 | v^2 $ | e^3 | ... | v^2 $ | $ | #      (2|Gam|+4 phrases)
// which exposes a phrase end after every e^3; greedy R_i elsewhere; every
// S_j as [$ e^3][#]. Size is exactly 13n + 22m + |cover|.
inline Parsing witness_parsing(const Graph& g, const VertexCover& cover) {
    for (int64_t v : cover.vertices)
        if (v < 1 || v > g.n)
            throw ContractError("cover vertex " + std::to_string(v) + " out of range");
    if (!is_vertex_cover(g, cover)) throw ContractError("vertex set is not a cover");

    const GadgetString w = build_gadget(g);
    const auto inc = incident_edges(g);
    const Parsing greedy = greedy_parse(w.text);
    const int64_t pq_end = w.segment("Q" + std::to_string(g.m())).end;

    std::vector<int64_t> lens;
    int64_t covered = 0;
    for (const Phrase& q : greedy.phrases) {
        if (q.end() > pq_end) break;
        lens.push_back(q.len);
        covered = q.end();
    }
    if (covered != pq_end)
        throw IntegrityError("reduction-integrity", "greedy phrases do not tile the P and Q parts");
    for (int64_t i = 1; i <= g.n; ++i) {
        const int64_t deg = static_cast<int64_t>(inc[static_cast<size_t>(i)].size());
        if (cover.contains(i)) {
            lens.push_back(2);
            for (int64_t d = 0; d < deg; ++d) {
                lens.push_back(3);  // v^2 $
                lens.push_back(3);  // e^3
            }
            lens.push_back(3);  // v^2 $
            lens.push_back(1);  // $
            lens.push_back(1);  // #
        } else {
            lens.push_back(3);  // v^3
            for (int64_t d = 0; d < deg; ++d) {
                lens.push_back(3);  // v $ e
                lens.push_back(3);  // e^2 v
            }
            lens.push_back(3);  // v $ $
            lens.push_back(1);  // #
        }
    }
    for (int64_t j = 1; j <= g.m(); ++j) {
        lens.push_back(4);  // $ e^3
        lens.push_back(1);  // #
    }

    Parsing p = annotate_lengths(w.text, lens);
    if (ValidationReport rep = validate(w.text, p); !rep.ok)
        throw IntegrityError("reduction-integrity", "witness parsing rejected at phrase " +
                                                        std::to_string(rep.phrase_index) + ": " +
                                                        rep.rule);
    const int64_t expect = 13 * g.n + 22 * g.m() + cover.size();
    if (p.size() != expect)
        throw IntegrityError("reduction-integrity",
                             "witness size " + std::to_string(p.size()) + " differs from " +
                                 std::to_string(expect));
    return p;
}

struct CoverExtraction {
    VertexCover cover;
    std::vector<int64_t> v_prime;  // vertices whose R segment holds 2|Gam|+4 phrases
    std::vector<int64_t> e_prime;  // edges whose S segment holds 3 phrases
    int64_t r = 0;                 // |v_prime|
    int64_t s = 0;                 // number of two-phrase S segments = m - |e_prime|
};

// Reads a vertex cover off a valid parsing of W_G: V' from the R segments
// parsed into 2|Gam|+4 phrases, then one endpoint (the smaller index) for
// each still-uncovered edge whose S segment kept 3 phrases. The result must
// cover the graph and have size at most r + (m - s).
inline CoverExtraction cover_from_parsing(const Graph& g, const Parsing& p) {
    const GadgetString w = build_gadget(g);
    if (ValidationReport rep = validate(w.text, p); !rep.ok)
        throw ContractError("parsing rejected at phrase " + std::to_string(rep.phrase_index) +
                            ": " + rep.rule);
    const auto counts = bucket_by_segment(w, p);
    const auto inc = incident_edges(g);

    CoverExtraction out;
    for (int64_t i = 1; i <= g.n; ++i) {
        const int64_t deg = static_cast<int64_t>(inc[static_cast<size_t>(i)].size());
        if (counts.at("R" + std::to_string(i)) == 2 * deg + 4) out.v_prime.push_back(i);
    }
    int64_t two_phrase = 0;
    for (int64_t j = 1; j <= g.m(); ++j) {
        const int64_t cnt = counts.at("S" + std::to_string(j));
        if (cnt == 3)
            out.e_prime.push_back(j);
        else if (cnt == 2)
            ++two_phrase;
    }
    out.r = static_cast<int64_t>(out.v_prime.size());
    out.s = two_phrase;

    out.cover.vertices = out.v_prime;
    for (int64_t j : out.e_prime) {
        const auto& [u, v] = g.edges[static_cast<size_t>(j - 1)];
        if (!out.cover.contains(u) && !out.cover.contains(v)) {
            out.cover.vertices.insert(
                std::lower_bound(out.cover.vertices.begin(), out.cover.vertices.end(), u), u);
        }
    }
    if (!is_vertex_cover(g, out.cover))
        throw IntegrityError("reduction-integrity",
                             "extracted vertex set does not cover the graph");
    if (out.cover.size() > out.r + (g.m() - out.s))
        throw IntegrityError("reduction-integrity", "extracted cover exceeds r + (m - s)");
    return out;
}

struct ReductionReport {
    int64_t n = 0, m = 0;
    int64_t gadget_length = 0;
    int64_t greedy_size = 0;
    int64_t tau = 0;
    int64_t witness_size = 0;
    std::optional<int64_t> maxsat_optimum;  // set when a solver command was given
    bool optimum_matches = false;           // maxsat_optimum == 13n + 22m + tau
};

// Instance-level check of the reduction: greedy must hit 13n+23m, the witness
// built from an exhaustive minimum cover must hit 13n+22m+tau, and when a
// solver is available the MaxSAT optimum must equal the witness size.
inline ReductionReport verify_reduction(const Graph& g, const std::string& solver_command = "") {
    ReductionReport rep;
    rep.n = g.n;
    rep.m = g.m();
    SegmentCounts sc = greedy_counts(g);
    rep.gadget_length = sc.gadget.text.size();
    rep.greedy_size = sc.total;
    const VertexCover min_cover = minimum_vertex_cover(g);
    rep.tau = min_cover.size();
    rep.witness_size = witness_parsing(g, min_cover).size();
    if (!solver_command.empty()) {
        const Parsing opt = solve(sc.gadget.text, solver_command);
        rep.maxsat_optimum = opt.size();
        rep.optimum_matches = opt.size() == 13 * rep.n + 22 * rep.m + rep.tau;
        if (!rep.optimum_matches)
            throw IntegrityError("reduction-integrity",
                                 "MaxSAT optimum " + std::to_string(opt.size()) +
                                     " differs from 13n+22m+tau = " +
                                     std::to_string(13 * rep.n + 22 * rep.m + rep.tau));
    }
    return rep;
}

} // namespace lzend
