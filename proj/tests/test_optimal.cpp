#include <catch2/catch_amalgamated.hpp>

#include "lzend/greedy.hpp"
#include "lzend/optimal.hpp"
#include "support.hpp"

using namespace lzend;
using test::text_of;

namespace {
const char* kExample = "aacbbbbaababbabbba";
}

TEST_CASE("candidate lengths at a fresh symbol") {
    const std::vector<int64_t> ends{1, 2};
    CHECK(candidate_lengths(text_of("aab"), 3, ends) == std::vector<int64_t>{1});
}

TEST_CASE("candidate lengths on a unary run") {
    const std::vector<int64_t> ends{1, 2};
    CHECK(candidate_lengths(text_of("aaaa"), 3, ends) == std::vector<int64_t>{1, 2});
}

TEST_CASE("candidate lengths can be gapped") {
    // greedy prefix of the example up to position 12; at 13, "ba" has no
    // phrase-end source but "bab" does
    const Text t = text_of(kExample);
    const std::vector<int64_t> ends{1, 2, 3, 4, 5, 7, 9, 10, 12};
    CHECK(candidate_lengths(t, 13, ends) == std::vector<int64_t>{1, 3});
    // and at position 10 with the greedy prefix, 1 is the longest candidate
    const std::vector<int64_t> ends10{1, 2, 3, 4, 5, 7, 9};
    CHECK(candidate_lengths(t, 10, ends10) == std::vector<int64_t>{1});
}

TEST_CASE("candidate lengths checks its position contract") {
    CHECK_THROWS_AS(candidate_lengths(text_of("ab"), 0, {}), ContractError);
    CHECK_THROWS_AS(candidate_lengths(text_of("ab"), 3, {}), ContractError);
}

TEST_CASE("optimal parsing of the running example") {
    const Text t = text_of(kExample);
    const Parsing p = optimal_parse(t);
    CHECK(p.size() == 11);
    CHECK(validate(t, p).ok);
    CHECK(z_end(t) == 11);
}

TEST_CASE("optimal parsing of degenerate texts") {
    CHECK(optimal_parse(text_of("")).size() == 0);
    CHECK(optimal_parse(text_of("a")).size() == 1);
}

TEST_CASE("optimal parsing of a unary run breaks ties toward longer phrases") {
    const Parsing p = optimal_parse(text_of("aaaa"));
    CHECK(phrase_lengths(p) == std::vector<int64_t>{1, 1, 2});
}

TEST_CASE("optimum never exceeds greedy, exhaustively on binary texts") {
    int64_t checked = 0, failures = 0;
    test::for_each_text(2, 1, 12, [&](const Text& t) {
        ++checked;
        const Parsing opt = search_optimal(t).parsing.value();
        const Parsing greedy = greedy_parse(t);
        if (opt.size() > greedy.size()) ++failures;
        if (!validate(t, opt).ok) ++failures;
    });
    CHECK(checked == 8190);
    CHECK(failures == 0);
}

TEST_CASE("pruning does not change the minimum") {
    std::mt19937_64 rng(11);
    for (int round = 0; round < 100; ++round) {
        const Text t = test::random_text(rng, 1, 14, 3);
        SearchOptions no_prune;
        no_prune.prune = false;
        const SearchOutcome a = search_optimal(t);
        const SearchOutcome b = search_optimal(t, no_prune);
        REQUIRE(a.parsing.has_value());
        REQUIRE(b.parsing.has_value());
        CHECK(a.parsing->size() == b.parsing->size());
    }
}

TEST_CASE("upper bound contract") {
    const Text t = text_of(kExample);  // optimum 11
    SearchOptions opts;
    opts.upper_bound = 10;
    CHECK_FALSE(search_optimal(t, opts).parsing.has_value());
    CHECK_THROWS_AS(optimal_parse(t, opts), ContractError);
    opts.upper_bound = 11;
    CHECK(optimal_parse(t, opts).size() == 11);
}

TEST_CASE("node budget failure names the budget") {
    SearchOptions opts;
    opts.node_budget = 5;
    try {
        optimal_parse(text_of(kExample), opts);
        FAIL("expected a resource error");
    } catch (const ResourceError& e) {
        CHECK(std::string(e.what()).find("5") != std::string::npos);
    }
}

TEST_CASE("search is deterministic") {
    const Text t = text_of("abababbbabbba");
    const Parsing a = optimal_parse(t), b = optimal_parse(t);
    CHECK(phrase_lengths(a) == phrase_lengths(b));
}
