#include <random>

#include "cuspfrob/flat_series.hpp"
#include "doctest.h"

using namespace cuspfrob;

namespace {

FlatMonomial mono(const FlatContext& ctx, int n1, int p, int k,
                  std::vector<std::pair<std::pair<int, int>, int>> arms = {}) {
    FlatMonomial m(ctx.arm_slots());
    m.n1 = n1;
    m.p = p;
    m.k = k;
    for (auto& [ij, e] : arms) m.m[ctx.idx.arm_index(ij.first, ij.second) - 1] = e;
    return m;
}

FlatSeries random_series(const FlatContextPtr& ctx, Truncation tr, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nterms(1, 6), qpow(0, tr.K), deg(0, 2), num(-5, 5),
        den(1, 3);
    FlatSeries s(ctx, tr);
    int n = nterms(rng);
    for (int t = 0; t < n; ++t) {
        FlatMonomial m(ctx->arm_slots());
        m.n1 = deg(rng);
        m.k = qpow(rng);
        for (int v = 0; v < ctx->arm_slots(); ++v) m.m[v] = deg(rng);
        s.add_term(m, rat(num(rng), den(rng)));
    }
    return s;
}

}  // namespace

TEST_CASE("series multiplication with truncation") {
    auto ctx = make_flat_context({2, 2, 2});
    Truncation t3{3, 100}, t2{2, 100};

    FlatSeries q1(ctx, t3), q2(ctx, t3);
    q1.add_term(mono(*ctx, 0, 0, 1), 1);
    q2.add_term(mono(*ctx, 0, 0, 2), 1);
    auto q3 = q1 * q2;
    CHECK(q3.coeff(mono(*ctx, 0, 0, 3)) == 1);
    CHECK_FALSE(q3.lossy());

    FlatSeries q1b(ctx, t2), q2b(ctx, t2);
    q1b.add_term(mono(*ctx, 0, 0, 1), 1);
    q2b.add_term(mono(*ctx, 0, 0, 2), 1);
    auto dropped = q1b * q2b;
    CHECK(dropped.is_zero());
    CHECK(dropped.lossy());

    FlatSeries u(ctx, t2);
    u.add_term(mono(*ctx, 0, 0, 0, {{{1, 1}, 1}}), 1);
    auto u2 = u * u;
    CHECK(u2.coeff(mono(*ctx, 0, 0, 0, {{{1, 1}, 2}})) == 1);

    auto one = FlatSeries::constant(ctx, t2, 1);
    FlatSeries q(ctx, t2);
    q.add_term(mono(*ctx, 0, 0, 1), 1);
    auto prod = (one + q) * (one - q);
    CHECK(prod.coeff(mono(*ctx, 0, 0, 0)) == 1);
    CHECK(prod.coeff(mono(*ctx, 0, 0, 2)) == -1);
    CHECK(prod.coeff(mono(*ctx, 0, 0, 1)) == 0);
}

TEST_CASE("series differentiation") {
    auto ctx = make_flat_context({2, 2, 2});
    Truncation tr{4, 50};
    const auto& idx = ctx->idx;

    FlatSeries f(ctx, tr);
    f.add_term(mono(*ctx, 0, 0, 3), 1);  // q^3
    auto dmu = f.diff(idx.mu_index());
    CHECK(dmu.coeff(mono(*ctx, 0, 0, 3)) == 3);

    FlatSeries g(ctx, tr);
    g.add_term(mono(*ctx, 2, 1, 0), 1);  // t1^2 t_mu
    auto gmu = g.diff(idx.mu_index());
    CHECK(gmu.coeff(mono(*ctx, 2, 0, 0)) == 1);

    FlatSeries h(ctx, tr);
    h.add_term(mono(*ctx, 0, 0, 1, {{{1, 1}, 1}, {{2, 1}, 1}, {{3, 1}, 1}}), 1);
    auto h1 = h.diff(idx.arm_index(1, 1));
    CHECK(h1.coeff(mono(*ctx, 0, 0, 1, {{{2, 1}, 1}, {{3, 1}, 1}})) == 1);
}

TEST_CASE("mixed partials commute") {
    auto ctx = make_flat_context({2, 3, 5});
    Truncation tr{2, 12};
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_series(ctx, tr, rng);
        for (int a = 0; a < ctx->idx.rank(); ++a)
            for (int b = a; b < ctx->idx.rank(); ++b)
                CHECK(f.diff(a).diff(b) == f.diff(b).diff(a));
    }
}

TEST_CASE("euler application") {
    auto ctx = make_flat_context({2, 2, 2});
    Truncation tr{4, 50};

    FlatSeries f(ctx, tr);
    auto m = mono(*ctx, 0, 0, 1, {{{1, 1}, 1}, {{2, 1}, 1}, {{3, 1}, 1}});
    f.add_term(m, 1);
    CHECK(euler_degree(*ctx, m) == 2);
    CHECK(f.euler_applied().coeff(m) == 2);

    FlatSeries g(ctx, tr);
    g.add_term(mono(*ctx, 2, 1, 0), 1);  // t1^2 t_mu
    auto Eg = g.euler_applied();
    CHECK(Eg.coeff(mono(*ctx, 2, 1, 0)) == 2);
    CHECK(Eg.coeff(mono(*ctx, 2, 0, 0)) == rat(1, 2));  // chi = 1/2

    for (int k = 1; k <= 4; ++k) {
        FlatSeries h(ctx, tr);
        h.add_term(mono(*ctx, 0, 0, k), 1);
        CHECK(h.euler_applied().coeff(mono(*ctx, 0, 0, k)) == rat(k, 2));
    }
}

TEST_CASE("euler is a derivation") {
    auto ctx = make_flat_context({2, 3, 5});
    Truncation tr{3, 60};  // generous so nothing truncates
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_series(ctx, tr, rng);
        auto g = random_series(ctx, tr, rng);
        CHECK((f * g).euler_applied() == f.euler_applied() * g + f * g.euler_applied());
    }
}

TEST_CASE("term JSON round trip") {
    auto ctx = make_flat_context({2, 3, 5});
    Truncation tr{2, 20};
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 20; ++trial) {
        auto f = random_series(ctx, tr, rng);
        auto j = f.to_json();
        auto g = FlatSeries::from_json(ctx, tr, j);
        CHECK(f == g);
        CHECK(j.dump() == g.to_json().dump());
    }
}

TEST_CASE("evaluation at a point") {
    auto ctx = make_flat_context({2, 2, 2});
    Truncation tr{2, 20};
    FlatSeries f(ctx, tr);
    f.add_term(mono(*ctx, 1, 0, 1, {{{2, 1}, 2}}), rat(3, 2));  // (3/2) t1 t21^2 q
    FlatPoint pt;
    pt.t1 = rat(2);
    pt.arms = {rat(0), rat(1, 3), rat(0)};
    pt.q = rat(5);
    CHECK(f.eval(pt) == rat(3, 2) * 2 * rat(1, 9) * 5);

    FlatSeries bare(ctx, tr);
    bare.add_term(mono(*ctx, 0, 1, 0), 1);  // bare t_mu power needs a value
    CHECK_THROWS_AS(bare.eval(pt), std::invalid_argument);
    pt.tmu = rat(7);
    CHECK(bare.eval(pt) == 7);
}
