#include <abels/group.hpp>
#include <abels/ring_io.hpp>

#include <catch2/catch_amalgamated.hpp>
#include <array>
#include <random>

using namespace abels;

namespace {

// Independent oracle: dense 4x4 matrix multiplication over R.
struct Dense {
    std::array<std::array<RingElem, 4>, 4> m;

    static Dense from(const AbelsElem& g) {
        Dense d;
        RingElem z = RingElem::zero(g.backend(), g.p());
        RingElem one = RingElem::one(g.backend(), g.p());
        for (auto& row : d.m) row.fill(z);
        d.m[0][0] = one;
        d.m[3][3] = one;
        d.m[1][1] = g.unit_value(g.d2());
        d.m[2][2] = g.unit_value(g.d3());
        d.m[0][1] = g.x12();
        d.m[0][2] = g.x13();
        d.m[0][3] = g.x14();
        d.m[1][2] = g.x23();
        d.m[1][3] = g.x24();
        d.m[2][3] = g.x34();
        return d;
    }

    Dense mul(const Dense& o, Backend b, std::uint32_t p) const {
        Dense r;
        RingElem z = RingElem::zero(b, p);
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) {
                RingElem acc = z;
                for (int k = 0; k < 4; ++k) acc = acc + m[i][k] * o.m[k][j];
                r.m[i][j] = acc;
            }
        return r;
    }

    bool operator==(const Dense& o) const { return m == o.m; }
};

RingElem L(std::uint32_t p, const std::string& s) { return parse_ring(s, Backend::LaurentLoc, p); }

AbelsElem random_elem(std::mt19937_64& rng, std::uint32_t p, Flavor fl) {
    std::uniform_int_distribution<int> dcoef(0, static_cast<int>(p) - 1);
    std::uniform_int_distribution<int> ddeg(0, 3);
    std::uniform_int_distribution<std::int64_t> dexp(-2, 2);
    auto rnd_ring = [&] {
        fp::Poly n(static_cast<std::size_t>(ddeg(rng)) + 1);
        for (auto& c : n) c = static_cast<std::uint32_t>(dcoef(rng));
        return RingElem::laurent(p, n, dexp(rng), dexp(rng));
    };
    DiagExp d2{dexp(rng), fl == Flavor::FullUnits ? dexp(rng) : 0};
    DiagExp d3{dexp(rng), fl == Flavor::FullUnits ? dexp(rng) : 0};
    AbelsElem g = AbelsElem::diagonal(Backend::LaurentLoc, p, fl, d2, d3);
    for (auto [i, j] : {std::pair{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})
        g.entry(i, j) = rnd_ring();
    return g;
}

}  // namespace

TEST_CASE("group laws") {
    std::uint32_t p = 3;
    auto id = AbelsElem::identity(Backend::LaurentLoc, p, Flavor::FullUnits);
    std::mt19937_64 rng(5);
    for (int it = 0; it < 200; ++it) {
        auto g = random_elem(rng, p, Flavor::FullUnits);
        REQUIRE(g * id == g);
        REQUIRE(id * g == g);
        REQUIRE(g * g.inverse() == id);
        REQUIRE(g.inverse() * g == id);
    }
}

TEST_CASE("multiplication agrees with dense 4x4 oracle") {
    for (std::uint32_t p : {2u, 3u, 5u}) {
        for (Flavor fl : {Flavor::PowersOfT, Flavor::FullUnits}) {
            std::mt19937_64 rng(100 + p);
            for (int it = 0; it < 250; ++it) {
                auto g = random_elem(rng, p, fl);
                auto h = random_elem(rng, p, fl);
                auto k = random_elem(rng, p, fl);
                REQUIRE((g * h) * k == g * (h * k));
                auto lhs = Dense::from(g * h);
                auto rhs = Dense::from(g).mul(Dense::from(h), Backend::LaurentLoc, p);
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("commutator of elementaries") {
    std::uint32_t p = 5;
    auto e12 = [&](const std::string& s) {
        return AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 2, L(p, s));
    };
    auto e23 = [&](const std::string& s) {
        return AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 2, 3, L(p, s));
    };
    auto x = e12("t^2+1");
    auto y = e23("t-1");
    // [x, y] = x^-1 y^-1 x y = e13(xy)
    auto comm = x.inverse() * y.inverse() * x * y;
    auto expect = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 3,
                                        L(p, "(t^2+1)(t-1)"));
    REQUIRE(comm == expect);
}

TEST_CASE("normal form") {
    std::uint32_t p = 3;
    auto id = AbelsElem::identity(Backend::LaurentLoc, p, Flavor::FullUnits);
    auto nf = id.normal_form();
    REQUIRE(nf.u12.is_zero());
    REQUIRE(nf.u14.is_zero());

    auto e13 = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 3, L(p, "t^2"));
    auto nf13 = e13.normal_form();
    REQUIRE(nf13.u13 == L(p, "t^2"));
    REQUIRE(nf13.u12.is_zero());

    // e23(y) * e12(x) has u13 = -xy
    auto x = L(p, "t+1");
    auto y = L(p, "t");
    auto g = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 2, 3, y) *
             AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 2, x);
    auto nfg = g.normal_form();
    REQUIRE(nfg.u12 == x);
    REQUIRE(nfg.u23 == y);
    REQUIRE(nfg.u13 == -(x * y));

    // round trip on 10^4 random elements
    for (std::uint32_t q : {2u, 5u}) {
        std::mt19937_64 rng(13 + q);
        for (int it = 0; it < 5000; ++it) {
            auto h = random_elem(rng, q, Flavor::FullUnits);
            auto back = AbelsElem::from_normal_form(Backend::LaurentLoc, q, Flavor::FullUnits,
                                                    h.normal_form());
            REQUIRE(back == h);
        }
    }
}

TEST_CASE("matrix length") {
    std::uint32_t p = 2;
    auto id = AbelsElem::identity(Backend::LaurentLoc, p, Flavor::FullUnits);
    REQUIRE(id.matrix_length() == 0);
    for (std::int64_t j : {1, 2, 7, 32}) {
        auto e14 = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 4,
                                         RingElem::monomial(p, 1, j, 0));
        REQUIRE(e14.matrix_length() == j);
    }
    auto d = AbelsElem::diagonal(Backend::LaurentLoc, p, Flavor::FullUnits, {3, 0}, {0, 0});
    REQUIRE(d.matrix_length() == 3);

    std::mt19937_64 rng(3);
    for (int it = 0; it < 500; ++it) {
        auto g = random_elem(rng, p, Flavor::FullUnits);
        auto h = random_elem(rng, p, Flavor::FullUnits);
        REQUIRE((g * h).matrix_length() <= g.matrix_length() + h.matrix_length());
    }
}

TEST_CASE("center") {
    std::uint32_t p = 3;
    auto id = AbelsElem::identity(Backend::LaurentLoc, p, Flavor::FullUnits);
    REQUIRE(id.is_central());
    REQUIRE(id.center_value().is_zero());

    auto c = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 4, L(p, "t^2+1"));
    REQUIRE(c.is_central());
    REQUIRE(c.center_value() == L(p, "t^2+1"));

    auto e12 = AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 2, L(p, "1"));
    REQUIRE_FALSE(e12.is_central());
    REQUIRE_THROWS_AS(e12.center_value(), NotCentral);

    // center is exactly ultrametric for matrix_length distance
    std::mt19937_64 rng(19);
    std::uniform_int_distribution<int> dcoef(0, 2);
    std::uniform_int_distribution<std::int64_t> dexp(-4, 4);
    auto rnd_central = [&] {
        fp::Poly n(4);
        for (auto& cc : n) cc = static_cast<std::uint32_t>(dcoef(rng));
        return AbelsElem::elementary(Backend::LaurentLoc, p, Flavor::FullUnits, 1, 4,
                                     RingElem::laurent(p, n, dexp(rng), dexp(rng)));
    };
    auto dist = [](const AbelsElem& a, const AbelsElem& b) {
        return (a.inverse() * b).matrix_length();
    };
    for (int it = 0; it < 2000; ++it) {
        auto x = rnd_central(), y = rnd_central(), z = rnd_central();
        REQUIRE(dist(x, z) <= std::max(dist(x, y), dist(y, z)));
    }
}

TEST_CASE("zinvp group") {
    std::uint32_t p = 2;
    auto id = AbelsElem::identity(Backend::ZinvP, p, Flavor::PowersOfT);
    auto g = AbelsElem::diagonal(Backend::ZinvP, p, Flavor::PowersOfT, {2, 0}, {-1, 0});
    auto e = AbelsElem::elementary(Backend::ZinvP, p, Flavor::PowersOfT, 1, 4,
                                   RingElem::zinvp(p, 3, 2));
    auto prod = g * e;
    REQUIRE(prod * prod.inverse() == id);
    REQUIRE(e.matrix_length() == 2);
    REQUIRE_THROWS_AS(AbelsElem::diagonal(Backend::ZinvP, p, Flavor::FullUnits, {0, 1}, {0, 0}),
                      FlavorMismatch);
}
