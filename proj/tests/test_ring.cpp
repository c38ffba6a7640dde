#include <abels/ring.hpp>
#include <abels/ring_io.hpp>

#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "ext_field.hpp"

using namespace abels;

namespace {

RingElem L(std::uint32_t p, const std::string& s) { return parse_ring(s, Backend::LaurentLoc, p); }

// Independent oracle: evaluate x = N t^e (t-1)^f at a sample point of an
// extension field (avoiding 0 and 1) and compare with a reference pair
// num/den evaluated directly.
oracle::ExtField::Elem eval_at(const oracle::ExtField& F, const RingElem& x,
                               const oracle::ExtField::Elem& pt) {
    auto n = F.eval_poly(x.num(), pt);
    auto te = F.pow(pt, x.e());
    auto one = F.from_int(1);
    auto se = F.pow(F.sub(pt, one), x.f());
    return F.mul(F.mul(n, te), se);
}

RingElem random_elem(std::mt19937_64& rng, std::uint32_t p, int max_deg, int max_pole) {
    std::uniform_int_distribution<int> dcoef(0, static_cast<int>(p) - 1);
    std::uniform_int_distribution<int> ddeg(0, max_deg);
    std::uniform_int_distribution<int> dpole(-max_pole, max_pole);
    fp::Poly n(static_cast<std::size_t>(ddeg(rng)) + 1);
    for (auto& c : n) c = static_cast<std::uint32_t>(dcoef(rng));
    return RingElem::laurent(p, n, dpole(rng), dpole(rng));
}

}  // namespace

TEST_CASE("canonicalize basics") {
    auto z = L(3, "0");
    REQUIRE(z.is_zero());
    REQUIRE(z.e() == 0);
    REQUIRE(z.f() == 0);

    auto one = L(3, "1");
    REQUIRE(one.num() == fp::Poly{1});
    REQUIRE(one.e() == 0);
    REQUIRE(one.f() == 0);

    // (t^2 - t)/t = t - 1: canonical (N=1, e=0, f=1); checked against the
    // evaluation oracle at five extension-field sample points.
    auto x = L(3, "(t^2-t)/t");
    REQUIRE(x.num() == fp::Poly{1});
    REQUIRE(x.e() == 0);
    REQUIRE(x.f() == 1);

    oracle::ExtField F(3, 5);
    auto g = F.gen();
    for (int i = 2; i < 7; ++i) {
        auto pt = F.pow(g, i);
        // reference: (pt^2 - pt) * pt^-1
        auto ref = F.mul(F.sub(F.mul(pt, pt), pt), F.inv(pt));
        REQUIRE(eval_at(F, x, pt) == ref);
    }
}

TEST_CASE("ring laws and units") {
    std::uint32_t p = 3;
    auto t = L(p, "t");
    auto one = L(p, "1");
    REQUIRE(t * one == t);
    REQUIRE((L(p, "t^4") * L(p, "t^-1")) == L(p, "t^3"));
    REQUIRE((t + (-t)).is_zero());

    auto tm1 = L(p, "t-1");
    REQUIRE(tm1.is_unit());
    auto up = tm1.unit_decompose();
    REQUIRE(up.u == 1);
    REQUIRE(up.e == 0);
    REQUIRE(up.f == 1);

    REQUIRE_FALSE(L(p, "t+1").is_unit());
    REQUIRE_FALSE(L(p, "0").is_unit());
    REQUIRE_THROWS_AS(L(p, "0").unit_decompose(), NotAUnit);
    REQUIRE_THROWS_AS(L(p, "1/(t+1)"), NotAUnit);
    REQUIRE_THROWS_AS(L(p, "1/0"), ZeroDenominator);

    // unit_decompose o reassemble = id on units with |e|, |f| <= 10
    for (std::uint32_t u = 1; u < p; ++u)
        for (std::int64_t e = -10; e <= 10; e += 5)
            for (std::int64_t f = -10; f <= 10; f += 5) {
                auto m = RingElem::monomial(p, u, e, f);
                auto d = m.unit_decompose();
                REQUIRE(RingElem::monomial(p, d.u, d.e, d.f) == m);
            }
}

TEST_CASE("valuations and length") {
    std::uint32_t p = 2;
    auto t3 = L(p, "t^3");
    REQUIRE(t3.valuation(Place::AtZero) == 3);
    REQUIRE(t3.valuation(Place::AtInfinity) == -3);
    REQUIRE(L(p, "(t-1)^-2").valuation(Place::AtOne) == -2);
    REQUIRE(L(p, "0").valuation(Place::AtZero) == kValInfinity);

    REQUIRE(L(p, "1").length() == 0);
    REQUIRE(t3.length() == 3);
    REQUIRE(L(p, "t^-2").length() == 2);
    REQUIRE_THROWS_AS(t3.valuation(Place::Real), BackendMismatch);
}

TEST_CASE("valuation properties on random pairs") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        std::mt19937_64 rng(41 + p);
        for (int it = 0; it < 1000; ++it) {
            auto x = random_elem(rng, p, 6, 4);
            auto y = random_elem(rng, p, 6, 4);
            auto xy = x * y;
            for (Place pl : {Place::AtZero, Place::AtOne, Place::AtInfinity}) {
                if (!x.is_zero() && !y.is_zero())
                    REQUIRE(xy.valuation(pl) == x.valuation(pl) + y.valuation(pl));
                auto s = x + y;
                if (!s.is_zero() && !x.is_zero() && !y.is_zero())
                    REQUIRE(s.valuation(pl) >= std::min(x.valuation(pl), y.valuation(pl)));
            }
            REQUIRE(xy.length() <= x.length() + y.length());
        }
    }
}

TEST_CASE("partial fractions") {
    std::uint32_t p = 2;
    auto x = L(p, "t^5");
    auto pf = x.partial_fractions();
    REQUIRE(pf.poly.size() == 1);
    REQUIRE(pf.poly.at(5) == 1);
    REQUIRE(pf.at_zero.empty());
    REQUIRE(pf.at_one.empty());

    auto z = L(p, "0").partial_fractions();
    REQUIRE(z.poly.empty());
    REQUIRE(z.at_zero.empty());
    REQUIRE(z.at_one.empty());

    // 1/(t(t-1)) over F_2 -> 1/t + 1/(t-1); verified by clearing denominators.
    auto y = L(p, "1/(t(t-1))");
    auto pfy = y.partial_fractions();
    REQUIRE(pfy.poly.empty());
    REQUIRE(pfy.at_zero == std::map<std::int64_t, std::uint32_t>{{1, 1}});
    REQUIRE(pfy.at_one == std::map<std::int64_t, std::uint32_t>{{1, 1}});
    // clearing check: t(t-1) * (sum of parts) == 1 as exact elements
    REQUIRE(RingElem::from_partial_fractions(p, pfy) * L(p, "t(t-1)") == L(p, "1"));

    // reassembly on random elements
    for (std::uint32_t q : {2u, 3u, 5u}) {
        std::mt19937_64 rng(97 + q);
        for (int it = 0; it < 1000; ++it) {
            auto r = random_elem(rng, q, 8, 6);
            REQUIRE(RingElem::from_partial_fractions(q, r.partial_fractions()) == r);
        }
    }
}

TEST_CASE("canonicalize idempotent via reconstruction") {
    std::mt19937_64 rng(7);
    for (int it = 0; it < 500; ++it) {
        auto r = random_elem(rng, 5, 8, 6);
        auto again = RingElem::laurent(5, r.num(), r.e(), r.f());
        REQUIRE(again == r);
    }
}

TEST_CASE("parse print round trip") {
    std::mt19937_64 rng(11);
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (int it = 0; it < 300; ++it) {
            auto r = random_elem(rng, p, 8, 6);
            REQUIRE(parse_ring(print_ring(r), Backend::LaurentLoc, p) == r);
        }
    }
    auto ex = L(3, "(t^2+1)/t(t-1)^2");
    REQUIRE(parse_ring(print_ring(ex), Backend::LaurentLoc, 3) == ex);
}

TEST_CASE("zinvp backend") {
    std::uint32_t p = 3;
    auto x = parse_ring("5/3^2", Backend::ZinvP, p);
    REQUIRE(x.a() == 5);
    REQUIRE(x.k() == 2);
    REQUIRE(x.valuation(Place::Padic) == -2);
    // |5/9| < 1 so the real log-size is <= 0
    REQUIRE(x.valuation(Place::Real) == 0);
    REQUIRE(x.length() == 2);

    auto y = RingElem::zinvp(p, 27, 1);  // 27/3 = 9 canonicalizes
    REQUIRE(y.a() == 9);
    REQUIRE(y.k() == 0);
    REQUIRE(y.valuation(Place::Real) == 2);
    REQUIRE(y.length() == 2);

    REQUIRE((x + y) == RingElem::zinvp(p, 86, 2));
    REQUIRE((x * y) == RingElem::zinvp(p, 5, 0));
    REQUIRE(parse_ring(print_ring(x), Backend::ZinvP, p) == x);
    REQUIRE_THROWS_AS(x + L(3, "t"), BackendMismatch);
}

TEST_CASE("degree cap is a hard error") {
    auto big = L(2, "t^64");
    set_degree_cap(32);
    bool threw = false;
    try {
        auto prod = (big + L(2, "1")) * (big + L(2, "1"));
        (void)prod;
    } catch (const DegreeCapExceeded&) {
        threw = true;
    }
    set_degree_cap(4096);
    REQUIRE(threw);
}
