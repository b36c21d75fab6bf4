#include <catch2/catch_amalgamated.hpp>

#include "lzend/greedy.hpp"
#include "lzend/io.hpp"
#include "lzend/parsing.hpp"
#include "support.hpp"

using namespace lzend;
using test::text_of;

namespace {
const char* kExample = "aacbbbbaababbabbba";
}

TEST_CASE("greedy parsing of the running example") {
    const Text t = text_of(kExample);
    const Parsing p = greedy_parse(t);
    REQUIRE(p.size() == 12);
    CHECK(phrase_lengths(p) == std::vector<int64_t>{1, 1, 1, 1, 1, 2, 2, 1, 2, 3, 2, 1});
    // the length-2 extension "ba" at position 10 reoccurs at position 7, but
    // nothing ends at position 8, so the phrase stays a single symbol
    const Phrase* at10 = nullptr;
    for (const Phrase& q : p.phrases)
        if (q.start == 10) at10 = &q;
    REQUIRE(at10 != nullptr);
    CHECK(at10->len == 1);
    CHECK(validate(t, p).ok);
}

TEST_CASE("greedy parses doubling runs") {
    // aa a^2 a^4 a^8 = a^16 parses as a, a, a^2, a^4, a^8
    const Text t = text_of(std::string(16, 'a'));
    CHECK(phrase_lengths(greedy_parse(t)) == std::vector<int64_t>{1, 1, 2, 4, 8});
}

TEST_CASE("greedy on two fresh symbols") {
    const Parsing p = greedy_parse(text_of("ab"));
    REQUIRE(p.size() == 2);
    CHECK(p.phrases[0].kind == PhraseKind::singleton);
    CHECK(p.phrases[1].kind == PhraseKind::singleton);
}

TEST_CASE("greedy of the empty text") {
    CHECK(greedy_parse(text_of("")).size() == 0);
    CHECK(phrase_ends(Parsing{}).empty());
}

TEST_CASE("greedy records the smallest source end") {
    // at position 2 of "aaa", both nothing and end 1 witness length 1; end 1
    // is the only choice, and at position 3 the length-2 copy must end at 2
    const Parsing p = greedy_parse(text_of("aaaa"));
    REQUIRE(phrase_lengths(p) == std::vector<int64_t>{1, 1, 2});
    CHECK(p.phrases[1].source_end == 1);
    CHECK(p.phrases[2].source_end == 2);
}

TEST_CASE("phrase ends are prefix sums") {
    Parsing p;
    p.phrases = {{1, 1, PhraseKind::singleton, 0},
                 {2, 1, PhraseKind::copy, 1},
                 {3, 2, PhraseKind::copy, 2}};
    CHECK(phrase_ends(p) == std::vector<int64_t>{1, 2, 4});

    const Text t = text_of(kExample);
    const std::vector<int64_t> ends = phrase_ends(greedy_parse(t));
    REQUIRE(ends.size() == 12);
    CHECK(ends.back() == 18);
}

TEST_CASE("validator accepts all-singleton plus length-1-copy parsings") {
    const Text t = text_of("abcabc");
    Parsing p;
    for (int64_t i = 1; i <= 3; ++i) p.phrases.push_back({i, 1, PhraseKind::singleton, 0});
    for (int64_t i = 4; i <= 6; ++i) p.phrases.push_back({i, 1, PhraseKind::copy, i - 3});
    CHECK(validate(t, p).ok);
}

TEST_CASE("validator rejects a copy with no phrase-end source") {
    const Text t = text_of("aaaa");
    Parsing p;
    p.phrases = {{1, 1, PhraseKind::singleton, 0}, {2, 3, PhraseKind::copy, 0}};
    const ValidationReport rep = validate(t, p);
    REQUIRE_FALSE(rep.ok);
    CHECK(rep.phrase_index == 2);
    CHECK(rep.rule == "copy has no source ending at any earlier phrase end");
}

TEST_CASE("validator rejects structural defects") {
    const Text t = text_of("aab");
    SECTION("gap between phrases") {
        Parsing p;
        p.phrases = {{1, 1, PhraseKind::singleton, 0}, {3, 1, PhraseKind::singleton, 0}};
        const ValidationReport rep = validate(t, p);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.phrase_index == 2);
    }
    SECTION("parsing too short") {
        Parsing p;
        p.phrases = {{1, 1, PhraseKind::singleton, 0}};
        const ValidationReport rep = validate(t, p);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.phrase_index == 0);
    }
    SECTION("singleton off its leftmost occurrence") {
        Parsing p;
        p.phrases = {{1, 1, PhraseKind::singleton, 0},
                     {2, 1, PhraseKind::singleton, 0},
                     {3, 1, PhraseKind::singleton, 0}};
        const ValidationReport rep = validate(t, p);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.phrase_index == 2);
    }
    SECTION("wrong explicit source end") {
        Parsing p;
        p.phrases = {{1, 1, PhraseKind::singleton, 0},
                     {2, 1, PhraseKind::copy, 3},
                     {3, 1, PhraseKind::singleton, 0}};
        const ValidationReport rep = validate(t, p);
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.phrase_index == 2);
    }
    SECTION("copy of a mismatching source") {
        Parsing p;
        p.phrases = {{1, 1, PhraseKind::singleton, 0},
                     {2, 1, PhraseKind::copy, 1},
                     {3, 1, PhraseKind::copy, 2}};
        const ValidationReport rep = validate(t, p);  // text[3] = b, source is a
        REQUIRE_FALSE(rep.ok);
        CHECK(rep.phrase_index == 3);
    }
}

TEST_CASE("validator searches sources when none is recorded") {
    const Text t = text_of(kExample);
    Parsing p = greedy_parse(t);
    for (Phrase& q : p.phrases) q.source_end = 0;
    CHECK(validate(t, p).ok);
}

TEST_CASE("annotate_lengths rebuilds the greedy parsing from its lengths") {
    const Text t = text_of(kExample);
    const Parsing g = greedy_parse(t);
    const Parsing rebuilt = annotate_lengths(t, phrase_lengths(g));
    REQUIRE(rebuilt.size() == g.size());
    for (size_t i = 0; i < g.phrases.size(); ++i) {
        CHECK(rebuilt.phrases[i].start == g.phrases[i].start);
        CHECK(rebuilt.phrases[i].len == g.phrases[i].len);
        CHECK(rebuilt.phrases[i].kind == g.phrases[i].kind);
        CHECK(rebuilt.phrases[i].source_end == g.phrases[i].source_end);
    }
    const std::vector<int64_t> bad{1, 3};
    CHECK_THROWS_AS(annotate_lengths(text_of("aaaa"), bad), IntegrityError);
}

TEST_CASE("greedy is valid and deterministic on every short text") {
    // exhaustive over alphabets up to 3 and lengths up to 12
    int64_t texts = 0, failures = 0;
    test::for_each_text(3, 0, 12, [&](const Text& t) {
        ++texts;
        const Parsing p = greedy_parse(t);
        if (!validate(t, p).ok) ++failures;
        int64_t total = 0;
        for (const Phrase& q : p.phrases) total += q.len;
        if (total != t.size()) ++failures;
    });
    CHECK(texts == 797162);  // sum over n <= 12 of 3^n
    CHECK(failures == 0);

    const Text t = text_of(kExample);
    const Parsing a = greedy_parse(t), b = greedy_parse(t);
    REQUIRE(a.size() == b.size());
    for (size_t i = 0; i < a.phrases.size(); ++i)
        CHECK(a.phrases[i].source_end == b.phrases[i].source_end);
}

TEST_CASE("leftmost occurrences start length-1 phrases in valid parsings") {
    std::mt19937_64 rng(7);
    for (int round = 0; round < 200; ++round) {
        const Text t = test::random_text(rng, 1, 16, 3);
        const Parsing p = test::random_valid_parsing(t, rng);
        REQUIRE(validate(t, p).ok);
        const std::vector<int64_t> leftmost = leftmost_occurrences(t);
        for (int64_t pos : leftmost) {
            bool found = false;
            for (const Phrase& q : p.phrases)
                if (q.start == pos && q.len == 1) found = true;
            CHECK(found);
        }
    }
}

TEST_CASE("parsing record round-trips through JSON") {
    const Text t = text_of(kExample);
    const Parsing p = greedy_parse(t);
    const std::string body = parsing_to_json(p);
    const Parsing q = parsing_from_json(body);
    REQUIRE(q.size() == p.size());
    CHECK(parsing_to_json(q) == body);

    CHECK_THROWS_AS(parsing_from_json("{"), InputError);
    CHECK_THROWS_AS(parsing_from_json("{\"a\": 1}"), InputError);
    CHECK_THROWS_AS(parsing_from_json("[{\"start\": 1}]"), InputError);
    CHECK_THROWS_AS(
        parsing_from_json("[{\"start\":1,\"len\":1,\"kind\":\"singleton\",\"source_end\":2}]"),
        InputError);
}

TEST_CASE("parsing record serialization is the documented byte format") {
    Parsing p;
    p.phrases = {{1, 1, PhraseKind::singleton, 0}, {2, 3, PhraseKind::copy, 1}};
    CHECK(parsing_to_json(p) ==
          "[\n"
          "  {\"start\": 1, \"len\": 1, \"kind\": \"singleton\"},\n"
          "  {\"start\": 2, \"len\": 3, \"kind\": \"copy\", \"source_end\": 1}\n"
          "]\n");
}
