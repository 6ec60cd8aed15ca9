#include "cuspfrob/intersection.hpp"

#include "cuspfrob/cusp.hpp"

#include <algorithm>

namespace cuspfrob {

namespace {

Rational abs_rat(const Rational& r) { return r < 0 ? Rational(-r) : r; }

// splitmix64; fixed cross-platform stream for reproducible sample points.
std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

Rational small_rational(std::uint64_t& state, bool allow_zero) {
    long num = static_cast<long>(splitmix64(state) % 7) - 3;  // -3..3
    if (!allow_zero && num == 0) num = 1;
    long den = 1 + static_cast<long>(splitmix64(state) % 3);  // 1..3
    return rat(num, den);
}

}  // namespace

IntersectionForm intersection_form(const Potential& P) {
    const FlatIndexing& idx = P.ctx->idx;
    const int n = idx.rank();
    IntersectionForm g;
    g.ctx = P.ctx;
    g.K = P.K;
    g.D = P.D;
    g.entries.reserve(static_cast<std::size_t>(n) * n);
    FlatSeries F = P.as_series();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            // eta^{ik} is supported on k = dual(i) with value 1/eta(i, dual i).
            int di = idx.eta_dual(i), dj = idx.eta_dual(j);
            Rational scale = (Rational(1) / idx.eta_dual_value(i)) / idx.eta_dual_value(j);
            g.entries.push_back(F.diff(di).diff(dj).euler_applied() * scale);
        }
    return g;
}

std::vector<std::string> flat_identity_violations(const IntersectionForm& g) {
    std::vector<std::string> out;
    const FlatIndexing& idx = g.ctx->idx;
    const int n = g.rank();
    const int mu = idx.mu_index();

    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (!(g.at(i, j) == g.at(j, i)))
                out.push_back("g^{" + idx.label(i) + "," + idx.label(j) + "} not symmetric");

    auto linear_in = [&](int fi, const Rational& coef) {
        FlatSeries s(g.ctx, g.at(0, 0).truncation());
        FlatMonomial m(g.ctx->arm_slots());
        if (fi == idx.unit())
            m.n1 = 1;
        else
            m.m[fi - 1] = 1;
        s.add_term(m, coef);
        return s;
    };

    if (!(g.at(mu, idx.unit()) == linear_in(idx.unit(), 1)))
        out.push_back("g^{mu,1} != t_1");
    for (int fi = 1; fi < mu; ++fi) {
        auto [i, j] = idx.arm_of(fi);
        if (!(g.at(mu, fi) == linear_in(fi, rat(g.ctx->A.a(i) - j, g.ctx->A.a(i)))))
            out.push_back("g^{mu," + idx.label(fi) + "} != ((a_i-j)/a_i) t_{i,j}");
    }
    if (!(g.at(mu, mu) == FlatSeries::constant(g.ctx, g.at(0, 0).truncation(), g.ctx->chi)))
        out.push_back("g^{mu,mu} != chi");
    return out;
}

ChristoffelSample christoffel_at_point(const IntersectionForm& g, const FlatPoint& pt) {
    const int n = g.rank();
    ChristoffelSample s;
    s.point = pt;
    s.rank = n;

    s.g_at = QMatrix(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) s.g_at(i, j) = g.at(i, j).eval(pt);
    if (s.g_at.det() == 0) throw DegenerateMetricError();

    // dg[s](i,j) = (d_s g^{ij})(point)
    std::vector<QMatrix> dg(n, QMatrix(n, n));
    for (int t = 0; t < n; ++t)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) dg[t](i, j) = g.at(i, j).diff(t).eval(pt);

    // Covariant metric h = g^{-1} and its derivatives dh = -h (dg) h.
    QMatrix h = s.g_at.inverse();
    std::vector<QMatrix> dh;
    dh.reserve(n);
    for (int t = 0; t < n; ++t) dh.push_back((h * dg[t] * h).scaled(-1));

    // Christoffel symbols of h, then the contravariant components.
    std::vector<Rational> gam_low(static_cast<std::size_t>(n) * n * n);  // [l][j][k]
    for (int l = 0; l < n; ++l)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational sum = 0;
                for (int m = 0; m < n; ++m)
                    sum += s.g_at(l, m) * (dh[j](m, k) + dh[k](m, j) - dh[m](j, k));
                gam_low[(l * n + j) * n + k] = sum / 2;
            }
    s.gamma.assign(static_cast<std::size_t>(n) * n * n, Rational(0));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Rational sum = 0;
                for (int t = 0; t < n; ++t)
                    sum += s.g_at(i, t) * gam_low[(j * n + t) * n + k];
                s.gamma[(i * n + j) * n + k] = -sum;
            }
    return s;
}

namespace {

// Raised three-point values C^{ij}_k = sum eta^{ai} eta^{bj} C_{abk} at the
// sample point.
std::vector<Rational> raised_three_point(const Potential& P, const FlatPoint& pt) {
    const FlatIndexing& idx = P.ctx->idx;
    const int n = idx.rank();
    std::vector<Rational> lowered(static_cast<std::size_t>(n) * n * n);
    for (int a = 0; a < n; ++a)
        for (int b = a; b < n; ++b) {
            FlatSeries base = P.as_series().diff(a).diff(b);
            for (int k = 0; k < n; ++k) {
                Rational v = base.diff(k).eval(pt);
                lowered[(a * n + b) * n + k] = v;
                lowered[(b * n + a) * n + k] = v;
            }
        }
    std::vector<Rational> raised(static_cast<std::size_t>(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int a = idx.eta_dual(i), b = idx.eta_dual(j);
            Rational scale = (Rational(1) / idx.eta_dual_value(i)) / idx.eta_dual_value(j);
            for (int k = 0; k < n; ++k)
                raised[(i * n + j) * n + k] = scale * lowered[(a * n + b) * n + k];
        }
    return raised;
}

}  // namespace

GammaRelationResult gamma_relation_at_point(const Potential& P, const IntersectionForm& g,
                                            const ChristoffelSample& sample) {
    const FlatIndexing& idx = P.ctx->idx;
    const int n = idx.rank();
    const int mu = idx.mu_index();
    GammaRelationResult res;

    std::vector<Rational> raised = raised_three_point(P, sample.point);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                const Rational& gamma = sample.at(i, j, k);
                const Rational& c = raised[(i * n + j) * n + k];
                if (j == mu) {
                    // E t_mu is affine with zero linear part; record only.
                    Rational a = abs_rat(gamma);
                    if (a > res.mu_column_max_abs) res.mu_column_max_abs = a;
                    continue;
                }
                Rational expect = idx.euler_weight(j) * c;
                if (gamma != expect)
                    res.violations.push_back("Gamma^{" + idx.label(i) + "," + idx.label(j) +
                                             "}_" + idx.label(k) + " != d_j C");
            }
    for (int i = 0; i < n; ++i)
        for (int k = 0; k < n; ++k) {
            Rational expect = (i == k) ? 1 : 0;
            if (raised[(i * n + mu) * n + k] != expect)
                res.delta_violations.push_back("C^{" + idx.label(i) + ",mu}_" + idx.label(k) +
                                               " != delta");
        }
    return res;
}

std::vector<Rational> reconstruct_three_point(const IntersectionForm& g,
                                              const ChristoffelSample& sample) {
    const FlatIndexing& idx = g.ctx->idx;
    const int n = g.rank();
    const int mu = idx.mu_index();

    // Recover the raised table on usable columns, then lower with eta.
    // Entries carrying a unit slot follow from the mu-column identity
    // C^{i,mu}_k = delta^i_k, which lowers to C_{a,1,k} = eta_{ak}; the
    // Gamma routes must agree with them wherever both apply.
    std::vector<Rational> lowered(static_cast<std::size_t>(n) * n * n);
    std::vector<bool> have(static_cast<std::size_t>(n) * n * n, false);
    auto column_usable = [&](int j) { return j != mu; };

    QMatrix eta = eta_metric(g.ctx->A);
    auto fill = [&](int a, int b, int k, const Rational& value) {
        std::size_t pos = static_cast<std::size_t>(a * n + b) * n + k;
        if (have[pos] && lowered[pos] != value)
            throw InconsistentRecoveryError("columns disagree at C_{" + idx.label(a) + "," +
                                            idx.label(b) + "," + idx.label(k) + "}");
        lowered[pos] = value;
        have[pos] = true;
    };
    for (int b = 0; b < n; ++b)
        for (int k = 0; k < n; ++k) {
            fill(idx.unit(), b, k, eta(b, k));
            fill(b, idx.unit(), k, eta(b, k));
            fill(b, k, idx.unit(), eta(b, k));
        }

    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            int i = idx.eta_dual(a), j = idx.eta_dual(b);
            if (!column_usable(j)) continue;
            Rational scale = idx.eta_dual_value(a) * idx.eta_dual_value(b);
            Rational dj = idx.euler_weight(j);
            for (int k = 0; k < n; ++k)
                fill(a, b, k, scale * sample.at(i, j, k) / dj);
        }
    // Fill b with unusable dual column by symmetry, cross-checking when both
    // routes exist.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                std::size_t pos = static_cast<std::size_t>(a * n + b) * n + k;
                std::size_t swapped = static_cast<std::size_t>(b * n + a) * n + k;
                if (!have[pos] && have[swapped]) {
                    lowered[pos] = lowered[swapped];
                    have[pos] = true;
                } else if (have[pos] && have[swapped] && lowered[pos] != lowered[swapped]) {
                    throw InconsistentRecoveryError("symmetry violated at C_{" + idx.label(a) +
                                                    "," + idx.label(b) + "," + idx.label(k) +
                                                    "}");
                }
            }
    for (bool h : have)
        if (!h) throw InconsistentRecoveryError("table entry unreachable from usable columns");
    // Total symmetry across the third slot.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int k = 0; k < n; ++k) {
                std::size_t pos = static_cast<std::size_t>(a * n + b) * n + k;
                std::size_t rot = static_cast<std::size_t>(a * n + k) * n + b;
                if (lowered[pos] != lowered[rot])
                    throw InconsistentRecoveryError("third-slot symmetry violated");
            }
    return lowered;
}

std::vector<FlatPoint> sample_points(const IntersectionForm& g, const SampleOptions& opts) {
    std::uint64_t state = opts.seed;
    std::vector<FlatPoint> points;
    int attempts = 0;
    while (static_cast<int>(points.size()) < opts.count) {
        if (++attempts > 200 * opts.count)
            throw std::runtime_error("could not sample enough regular points");
        FlatPoint pt;
        pt.t1 = small_rational(state, /*allow_zero=*/false);
        for (int v = 0; v < g.ctx->arm_slots(); ++v)
            pt.arms.push_back(small_rational(state, /*allow_zero=*/true));
        pt.q = opts.zero_q ? Rational(0) : small_rational(state, /*allow_zero=*/false);
        QMatrix m(g.rank(), g.rank());
        bool ok = true;
        try {
            for (int i = 0; i < g.rank() && ok; ++i)
                for (int j = 0; j < g.rank(); ++j) m(i, j) = g.at(i, j).eval(pt);
            ok = m.det() != 0;
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) points.push_back(std::move(pt));
    }
    return points;
}

}  // namespace cuspfrob
