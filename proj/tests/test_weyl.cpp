#include <random>

#include "cuspfrob/weyl.hpp"
#include "doctest.h"

using namespace cuspfrob;

namespace {

CorootVector random_vector(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    CorootVector v(n);
    for (auto& x : v) x = rat(num(rng), den(rng));
    return v;
}

std::vector<Integer> zero_translation(int n) { return std::vector<Integer>(n, Integer(0)); }

}  // namespace

TEST_CASE("cartan determinants") {
    CHECK(cartan_matrix({2, 3, 5}).det() == 1);
    CHECK(cartan_matrix({2, 2, 2}).det() == 4);
    CHECK(cartan_matrix({2, 3, 7}).det() == -1);
    CHECK(cartan_matrix({2, 3, 6}).det() == 0);
    CHECK(cartan_matrix({3, 3, 3}).det() == 0);
}

TEST_CASE("det Cartan = a1 a2 a3 chi") {
    std::vector<Triplet> list = {{1, 1, 1}, {1, 1, 12}, {1, 2, 2},   {1, 2, 3},   {2, 2, 2},
                                 {2, 2, 3}, {2, 2, 12}, {2, 3, 3},   {2, 3, 4},   {2, 3, 5},
                                 {2, 3, 6}, {2, 4, 4},  {3, 3, 3},   {2, 3, 7},   {2, 3, 12},
                                 {2, 4, 5}, {3, 3, 4},  {4, 4, 4},   {5, 6, 7},   {12, 12, 12}};
    for (const auto& A : list) {
        Rational expect = A.chi() * A.a1 * A.a2 * A.a3;
        REQUIRE(is_integer(expect));
        CHECK(Rational(cartan_matrix(A).det()) == expect);
    }
}

TEST_CASE("cartan shape") {
    auto C = cartan_matrix({2, 3, 5});
    CHECK(C.size == 8);
    for (int i = 0; i < C.size; ++i) {
        CHECK(C.matrix[i][i] == 2);
        for (int j = 0; j < C.size; ++j) {
            CHECK(C.matrix[i][j] == C.matrix[j][i]);
            if (i != j) CHECK((C.matrix[i][j] == 0 || C.matrix[i][j] == -1));
        }
    }
    // central vertex adjacent to each (i,1)
    for (int i = 1; i <= 3; ++i) CHECK(C.adjacent(0, cartan_vertex(C, i, 1)));
    CHECK(C.adjacent(cartan_vertex(C, 3, 1), cartan_vertex(C, 3, 2)));
    CHECK_FALSE(C.adjacent(cartan_vertex(C, 2, 1), cartan_vertex(C, 3, 1)));
}

TEST_CASE("simple reflections") {
    auto C = cartan_matrix({2, 3, 5});
    std::mt19937_64 rng(3);

    // r_i(alpha_i^vee) = -alpha_i^vee
    for (int v = 0; v < C.size; ++v) {
        CorootVector e(C.size, Rational(0));
        e[v] = 1;
        auto r = simple_reflection(C, v, e);
        CHECK(r[v] == -1);
        for (int j = 0; j < C.size; ++j)
            if (j != v) CHECK(r[j] == 0);
    }

    // involution on random vectors
    for (int trial = 0; trial < 20; ++trial) {
        auto h = random_vector(C.size, rng);
        for (int v = 0; v < C.size; ++v)
            CHECK(simple_reflection(C, v, simple_reflection(C, v, h)) == h);
    }
}

TEST_CASE("braid relations") {
    auto C = cartan_matrix({2, 3, 5});
    std::mt19937_64 rng(17);
    for (int u = 0; u < C.size; ++u)
        for (int v = u + 1; v < C.size; ++v) {
            int order = C.adjacent(u, v) ? 3 : 2;
            for (int trial = 0; trial < 5; ++trial) {
                auto h = random_vector(C.size, rng);
                auto w = h;
                for (int rep = 0; rep < order; ++rep)
                    w = simple_reflection(C, u, simple_reflection(C, v, w));
                CHECK(w == h);
            }
        }
}

TEST_CASE("fundamental coweights") {
    auto C = cartan_matrix({2, 2, 2});
    auto om = fundamental_coweights(C);
    for (int i = 0; i < C.size; ++i)
        for (int j = 0; j < C.size; ++j) {
            Rational pairing = 0;
            for (int m = 0; m < C.size; ++m) pairing += Rational(C.matrix[i][m]) * om[j][m];
            CHECK(pairing == (i == j ? 1 : 0));
        }

    // unimodular Cartan: integer coweights
    auto C5 = cartan_matrix({2, 3, 5});
    for (const auto& w : fundamental_coweights(C5))
        for (const auto& x : w) CHECK(is_integer(x));

    CHECK_THROWS_AS(fundamental_coweights(cartan_matrix({2, 3, 6})), SingularCartanError);
    CHECK_THROWS_AS(fundamental_coweights(cartan_matrix({3, 3, 3})), SingularCartanError);
}

TEST_CASE("extended action") {
    auto C = cartan_matrix({2, 3, 5});
    auto om = fundamental_coweights(C);
    std::mt19937_64 rng(29);

    ExtendedElement id;
    id.translation = zero_translation(C.size);
    ExtendedPoint pt{random_vector(C.size, rng), rat(1, 2)};
    CHECK(extended_action(C, om, id, pt) == pt);

    // pure shift m = 1 at h = 0: lands on omega_1 with x_mu + 1
    ExtendedElement shift;
    shift.translation = zero_translation(C.size);
    shift.shift = 1;
    ExtendedPoint zero{CorootVector(C.size, Rational(0)), rat(0)};
    auto moved = extended_action(C, om, shift, zero);
    CHECK(moved.h == om[0]);
    CHECK(moved.x_mu == 1);

    // group law on random points
    std::uniform_int_distribution<int> tr(-2, 2), wd(0, C.size - 1), len(0, 3);
    for (int trial = 0; trial < 25; ++trial) {
        ExtendedElement e1, e2;
        for (int w = len(rng); w > 0; --w) e1.word.push_back(wd(rng));
        for (int w = len(rng); w > 0; --w) e2.word.push_back(wd(rng));
        for (int v = 0; v < C.size; ++v) {
            e1.translation.push_back(tr(rng));
            e2.translation.push_back(tr(rng));
        }
        e1.shift = tr(rng);
        e2.shift = tr(rng);
        auto point = ExtendedPoint{random_vector(C.size, rng), rat(tr(rng), 3)};
        auto lhs = extended_action(C, om, e1, extended_action(C, om, e2, point));
        auto rhs = extended_action(C, om, compose(C, om, e1, e2), point);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("reflections preserve the Cartan pairing") {
    auto C = cartan_matrix({2, 2, 3});
    std::mt19937_64 rng(31);
    auto pairing = [&](const CorootVector& u, const CorootVector& v) {
        Rational s = 0;
        for (int i = 0; i < C.size; ++i)
            for (int j = 0; j < C.size; ++j)
                if (u[i] != 0 && v[j] != 0) s += u[i] * v[j] * C.matrix[i][j];
        return s;
    };
    for (int trial = 0; trial < 20; ++trial) {
        auto u = random_vector(C.size, rng), v = random_vector(C.size, rng);
        for (int r = 0; r < C.size; ++r)
            CHECK(pairing(u, v) ==
                  pairing(simple_reflection(C, r, u), simple_reflection(C, r, v)));
    }
}

TEST_CASE("gram data") {
    auto g = gram_check({2, 2, 2});
    CHECK(g.corner == rat(-1, 2));  // -chi relative to the tagged unit
    CHECK(g.cartan.matrix == cartan_matrix({2, 2, 2}).matrix);
    CHECK_THROWS_AS(gram_check({3, 3, 3}), SingularCartanError);
    auto j = g.to_json();
    CHECK(j.at("cross_block") == "0");
    CHECK(j.at("corner") == "-1/2");
}
