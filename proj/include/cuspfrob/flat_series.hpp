#pragma once

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <vector>

#include "json.hpp"

#include "cuspfrob/triplet.hpp"

namespace cuspfrob {

// Shared data for series in the flat coordinates of one triplet: the Euler
// weights of the arm directions and chi.
struct FlatContext {
    Triplet A;
    FlatIndexing idx;
    std::vector<Rational> arm_weight;  // (a_i - j)/a_i per arm slot
    Rational chi;

    explicit FlatContext(const Triplet& t) : A(t), idx(t), chi(t.chi()) {
        for (int f = 1; f < idx.mu_index(); ++f) arm_weight.push_back(idx.euler_weight(f));
    }
    int arm_slots() const { return static_cast<int>(arm_weight.size()); }
};

using FlatContextPtr = std::shared_ptr<const FlatContext>;
inline FlatContextPtr make_flat_context(const Triplet& A) {
    return std::make_shared<FlatContext>(A);
}

// Monomial t_1^{n1} t_mu^{p} q^{k} prod t_{i,j}^{m}; q = e^{t_mu} is a symbol
// of its own, tied to t_mu only through differentiation.
struct FlatMonomial {
    int n1 = 0;
    int p = 0;
    int k = 0;
    std::vector<int> m;

    explicit FlatMonomial(int arm_slots = 0) : m(arm_slots, 0) {}

    int t_degree() const {
        int d = n1 + p;
        for (int x : m) d += x;
        return d;
    }
    bool operator==(const FlatMonomial& o) const {
        return n1 == o.n1 && p == o.p && k == o.k && m == o.m;
    }
    bool operator<(const FlatMonomial& o) const {
        if (k != o.k) return k < o.k;
        int da = t_degree(), db = o.t_degree();
        if (da != db) return da < db;
        if (n1 != o.n1) return n1 < o.n1;
        if (p != o.p) return p < o.p;
        return m < o.m;
    }
};

// Euler scaling degree: n1 + sum m*weight + k*chi. Bare t_mu powers do not
// scale (E acts on them affinely).
Rational euler_degree(const FlatContext& ctx, const FlatMonomial& mono);

struct Truncation {
    int K = 0;
    int D = std::numeric_limits<int>::max();
    bool operator==(const Truncation& o) const { return K == o.K && D == o.D; }
};

// Coordinates of an evaluation point; q carries the value of e^{t_mu}. A
// t_mu value is only needed for series with bare t_mu powers.
struct FlatPoint {
    Rational t1;
    std::vector<Rational> arms;
    Rational q;
    std::optional<Rational> tmu;
};

class FlatSeries {
public:
    FlatSeries() = default;
    FlatSeries(FlatContextPtr ctx, Truncation tr) : ctx_(std::move(ctx)), tr_(tr) {}

    static FlatSeries constant(FlatContextPtr ctx, Truncation tr, const Rational& c);

    const FlatContextPtr& context() const { return ctx_; }
    const Truncation& truncation() const { return tr_; }
    const std::map<FlatMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    // Set when some term was dropped by the truncation; downstream residual
    // windows consult this.
    bool lossy() const { return lossy_; }

    void add_term(const FlatMonomial& m, const Rational& c);
    Rational coeff(const FlatMonomial& m) const;

    FlatSeries operator+(const FlatSeries& o) const;
    FlatSeries operator-(const FlatSeries& o) const;
    FlatSeries operator*(const FlatSeries& o) const;
    FlatSeries operator*(const Rational& c) const;
    bool operator==(const FlatSeries& o) const { return terms_ == o.terms_; }

    // Partial derivative along a flat index. The t_mu direction acts as
    // p-lowering plus multiplication by k on the q-power.
    FlatSeries diff(int flat_index) const;

    // The Euler field applied term by term.
    FlatSeries euler_applied() const;

    Rational eval(const FlatPoint& pt) const;

    nlohmann::json to_json() const;
    static FlatSeries from_json(FlatContextPtr ctx, Truncation tr, const nlohmann::json& j);

private:
    void check_compatible(const FlatSeries& o) const;

    FlatContextPtr ctx_;
    Truncation tr_;
    bool lossy_ = false;
    std::map<FlatMonomial, Rational> terms_;
};

// Canonical JSON encoding of one term: {"t1":n1,"arms":[[i,j,m],...],"q":k,
// "tmu":p,"c":"p/q"}; arms sorted by (i,j), zero exponents omitted.
nlohmann::json term_to_json(const FlatContext& ctx, const FlatMonomial& m, const Rational& c);
std::pair<FlatMonomial, Rational> term_from_json(const FlatContext& ctx, const nlohmann::json& j);

}  // namespace cuspfrob
