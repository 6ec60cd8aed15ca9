#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspfrob/rational.hpp"

namespace cuspfrob {

// A triplet (a1, a2, a3) of positive integers, a1 <= a2 <= a3. Everything in
// the library is derived from one of these.
struct Triplet {
    int a1 = 0, a2 = 0, a3 = 0;

    Triplet() = default;
    Triplet(int a, int b, int c) : a1(a), a2(b), a3(c) {
        if (a1 < 1 || a2 < 1 || a3 < 1) throw std::invalid_argument("triplet entries must be positive");
        if (!(a1 <= a2 && a2 <= a3)) throw std::invalid_argument("triplet must be ascending");
    }

    int a(int i) const {  // i = 1,2,3
        switch (i) {
            case 1: return a1;
            case 2: return a2;
            case 3: return a3;
        }
        throw std::out_of_range("arm index");
    }

    int mu() const { return a1 + a2 + a3 - 1; }
    Rational chi() const { return rat(1, a1) + rat(1, a2) + rat(1, a3) - 1; }

    bool operator==(const Triplet& o) const { return a1 == o.a1 && a2 == o.a2 && a3 == o.a3; }
    std::string str() const {
        return "(" + std::to_string(a1) + "," + std::to_string(a2) + "," + std::to_string(a3) + ")";
    }
};

// Flat-coordinate index set: 0 is the unit direction t_1, then the arm
// directions t_{i,j} in (i,j)-order, and mu()-1 is the t_mu direction.
struct FlatIndexing {
    Triplet A;

    explicit FlatIndexing(const Triplet& t) : A(t) {}

    int rank() const { return A.mu(); }
    int arm_count() const { return A.mu() - 2; }
    int unit() const { return 0; }
    int mu_index() const { return rank() - 1; }

    bool is_arm(int fi) const { return fi > 0 && fi < mu_index(); }

    // 1-based (i, j), valid for arm indices.
    std::pair<int, int> arm_of(int fi) const {
        int k = fi - 1;
        for (int i = 1; i <= 3; ++i) {
            int len = A.a(i) - 1;
            if (k < len) return {i, k + 1};
            k -= len;
        }
        throw std::out_of_range("not an arm index");
    }

    int arm_index(int i, int j) const {
        if (i < 1 || i > 3 || j < 1 || j > A.a(i) - 1) throw std::out_of_range("arm coordinate");
        int fi = 1;
        for (int p = 1; p < i; ++p) fi += A.a(p) - 1;
        return fi + j - 1;
    }

    // Dual index under eta: unit <-> mu, (i,j) <-> (i, a_i - j).
    int eta_dual(int fi) const {
        if (fi == unit()) return mu_index();
        if (fi == mu_index()) return unit();
        auto [i, j] = arm_of(fi);
        return arm_index(i, A.a(i) - j);
    }

    // eta(fi, eta_dual(fi)); all other pairings vanish.
    Rational eta_dual_value(int fi) const {
        if (fi == unit() || fi == mu_index()) return 1;
        auto [i, j] = arm_of(fi);
        (void)j;
        return rat(1, A.a(i));
    }

    // Linear Euler weight d with E t = d t; defined for unit and arm
    // directions (E acts on t_mu affinely).
    Rational euler_weight(int fi) const {
        if (fi == unit()) return 1;
        if (fi == mu_index()) throw std::domain_error("t_mu has no linear Euler weight");
        auto [i, j] = arm_of(fi);
        return rat(A.a(i) - j, A.a(i));
    }

    std::string label(int fi) const {
        if (fi == unit()) return "1";
        if (fi == mu_index()) return "mu";
        auto [i, j] = arm_of(fi);
        return "(" + std::to_string(i) + "," + std::to_string(j) + ")";
    }
};

// Exponent multiset {1, 1 + j/a_i, 2}, ascending; size mu().
std::vector<Rational> exponents(const Triplet& A);

}  // namespace cuspfrob
