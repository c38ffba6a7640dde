#include <abels/rewrite.hpp>
#include <abels/word_io.hpp>

#include <catch2/catch_amalgamated.hpp>
#include <random>

using namespace abels;

namespace {
EvalContext ctx2{Backend::LaurentLoc, 2, Flavor::PowersOfT};
RelatorStore store2{kDefaultRelatorBound, ctx2};
}  // namespace

TEST_CASE("verify basics") {
    Certificate c;
    REQUIRE(verify(c, store2).ok);  // empty word, no steps

    // free reduction only, area 0
    Certificate c2;
    c2.initial = parse_word("E12 E12-", ctx2);
    REQUIRE(verify(c2, store2).ok);

    // delete a relator: E12 E12 is null over F_2
    Certificate c3;
    c3.initial = parse_word("E12 E12", ctx2);
    c3.steps.push_back({0, c3.initial, StepDir::Delete});
    auto r3 = verify(c3, store2, true);
    REQUIRE(r3.ok);
    REQUIRE(r3.max_relator_len == 2);

    // failing: relator that is not null
    Certificate c4;
    c4.initial = parse_word("E12 E12", ctx2);
    c4.steps.push_back({0, parse_word("E12", ctx2), StepDir::Delete});
    auto r4 = verify(c4, store2);
    REQUIRE_FALSE(r4.ok);
    REQUIRE(r4.fail_index == 0);

    // failing: replay does not reach empty
    Certificate c5;
    c5.initial = parse_word("E12 E23", ctx2);
    REQUIRE_FALSE(verify(c5, store2).ok);
}

TEST_CASE("apply_step splicing") {
    Word w = parse_word("E12 E23 E34", ctx2);
    Word r = parse_word("E23- E23", ctx2);
    Word w2 = apply_step(w, {1, r, StepDir::Insert});
    REQUIRE(free_reduce(w2) == w2);
    REQUIRE(eval(w2, ctx2) == eval(w, ctx2));

    REQUIRE_THROWS_AS(apply_step(w, {17, r, StepDir::Insert}), ReplayError);
    REQUIRE_THROWS_AS(apply_step(w, {0, parse_word("E23", ctx2), StepDir::Delete}), ReplayError);
}

TEST_CASE("rewriter subst") {
    // substitute E12 E23 -> E23 E12 E13 (a valid triangle relation)
    Word w = parse_word("E34 E12 E23 E34", ctx2);
    Rewriter rw(w, store2, true);
    rw.subst(1, 2, parse_word("E23 E12 E13", ctx2));
    REQUIRE(rw.word() == parse_word("E34 E23 E12 E13 E34", ctx2));
    REQUIRE(rw.area() == 1);
    auto cert = rw.certificate(w);
    Word replayed = free_reduce(w);
    for (const auto& s : cert.steps) replayed = apply_step(replayed, s);
    REQUIRE(replayed == rw.word());

    // value-changing substitution is rejected in checked mode
    Rewriter bad(w, store2, true);
    REQUIRE_THROWS_AS(bad.subst(1, 1, parse_word("E23", ctx2)), std::logic_error);
}

TEST_CASE("invert steps") {
    for (int it = 0; it < 200; ++it) {
        Word w = free_reduce(random_word(12, split_seed(1000, it), ctx2));
        Rewriter rw(w, store2, false);
        std::mt19937_64 rng(split_seed(2000, it));
        for (int s = 0; s < 8; ++s) {
            std::uniform_int_distribution<std::size_t> dpos(0, rw.word().size());
            std::uniform_int_distribution<int> dkind(0, 2);
            Word r;
            switch (dkind(rng)) {
                case 0: r = parse_word("D2t D3t D2t- D3t-", ctx2); break;
                case 1: r = parse_word("E12 E12", ctx2); break;
                default: r = parse_word("E13 E24 E13- E24-", ctx2); break;
            }
            rw.insert_relator(dpos(rng), r);
        }
        auto inv_steps = invert_steps(w, rw.steps());
        Word back = rw.word();
        for (const auto& s : inv_steps) back = apply_step(back, s);
        REQUIRE(back == free_reduce(w));
    }
}

TEST_CASE("tau steps preserve replay") {
    Word w = parse_word("E12 E23 E12- E23-", ctx2);
    Rewriter rw(w, store2, false);
    rw.subst(0, 2, parse_word("E23 E12 E13", ctx2));
    Word tw = tau_word(w);
    auto ts = tau_steps(rw.steps());
    Word cur = free_reduce(tw);
    for (const auto& s : ts) cur = apply_step(cur, s);
    REQUIRE(cur == tau_word(rw.word()));
    REQUIRE(eval(cur, ctx2) == eval(tw, ctx2));
}
