#include "cuspfrob/cusp.hpp"

#include <algorithm>

namespace cuspfrob {

std::vector<Rational> exponents(const Triplet& A) {
    std::vector<Rational> out;
    out.push_back(1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j) out.push_back(1 + rat(j, A.a(i)));
    out.push_back(2);
    std::sort(out.begin(), out.end());
    return out;
}

int Unfolding::sij_var(int i, int j) const {
    if (i < 1 || i > 3 || j < 1 || j > A.a(i) - 1) throw std::out_of_range("deformation index");
    int v = 4;
    for (int p = 1; p < i; ++p) v += A.a(p) - 1;
    return v + j - 1;
}

Unfolding build_unfolding(const Triplet& A) {
    std::vector<std::string> names = {"x1", "x2", "x3", "s1"};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j)
            names.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    names.push_back("smu");

    Unfolding u;
    u.A = A;
    u.vars = make_vars(std::move(names));
    Polynomial F(u.vars, /*laurent=*/true);
    for (int i = 1; i <= 3; ++i) {
        Monomial m(u.vars->size());
        m.e[u.x_var(i)] = A.a(i);
        F.add_term(m, 1);
    }
    {
        Monomial m(u.vars->size());
        m.e[0] = m.e[1] = m.e[2] = 1;
        m.e[u.smu_var()] = -1;
        F.add_term(m, -1);
    }
    {
        Monomial m(u.vars->size());
        m.e[u.s1_var()] = 1;
        F.add_term(m, 1);
    }
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j) {
            Monomial m(u.vars->size());
            m.e[u.sij_var(i, j)] = 1;
            m.e[u.x_var(i)] = j;
            F.add_term(m, 1);
        }
    u.F = std::move(F);
    return u;
}

Polynomial euler_identity_residual(const Unfolding& u) {
    const Triplet& A = u.A;
    // E = s1 d/ds1 + sum ((a_i-j)/a_i) s_{i,j} d/ds_{i,j} + chi smu d/dsmu
    Polynomial EF =
        Polynomial::variable(u.vars, u.s1_var(), 1, true) * u.F.diff(u.s1_var());
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j) {
            int v = u.sij_var(i, j);
            EF = EF + Polynomial::variable(u.vars, v, 1, true) * u.F.diff(v) *
                          rat(A.a(i) - j, A.a(i));
        }
    EF = EF + Polynomial::variable(u.vars, u.smu_var(), 1, true) * u.F.diff(u.smu_var()) * A.chi();

    Polynomial rest(u.vars, true);
    for (int i = 1; i <= 3; ++i)
        rest = rest + Polynomial::variable(u.vars, u.x_var(i), 1, true) *
                          u.F.diff(u.x_var(i)) * rat(1, A.a(i));
    return u.F - EF - rest;
}

QMatrix eta_metric(const Triplet& A) {
    FlatIndexing idx(A);
    const int n = idx.rank();
    QMatrix eta(n, n);
    eta(idx.unit(), idx.mu_index()) = 1;
    eta(idx.mu_index(), idx.unit()) = 1;
    for (int fi = 1; fi < idx.mu_index(); ++fi) {
        auto [i, j] = idx.arm_of(fi);
        eta(fi, idx.arm_index(i, A.a(i) - j)) = rat(1, A.a(i));
    }
    return eta;
}

LimitAlgebra::LimitAlgebra(const Triplet& A) : idx_(A) {
    if (A.a1 < 2) throw std::domain_error("limit algebra requires all a_i >= 2");
    VarTablePtr xv = make_vars({"x1", "x2", "x3"});
    auto var = [&](int i, int e) { return Polynomial::variable(xv, i - 1, e); };

    std::vector<Polynomial> gens;
    gens.push_back(var(1, 1) * var(2, 1));
    gens.push_back(var(2, 1) * var(3, 1));
    gens.push_back(var(3, 1) * var(1, 1));
    gens.push_back(var(1, A.a1) * A.a1 - var(2, A.a2) * A.a2);
    gens.push_back(var(2, A.a2) * A.a2 - var(3, A.a3) * A.a3);

    auto G = groebner_basis(gens);
    Q_ = build_quotient(G);
    if (Q_.dim() != static_cast<std::size_t>(A.mu()))
        throw std::logic_error("limit algebra has wrong dimension");

    // The three arm representatives of v agree in the quotient.
    for (int i = 2; i <= 3; ++i) {
        Polynomial d = var(i, A.a(i)) * A.a(i) - var(1, A.a1) * A.a1;
        if (!normal_form(d, G).is_zero())
            throw std::logic_error("limit algebra arm representatives disagree");
    }

    const int n = idx_.rank();
    QMatrix from_flat(n, n);  // columns: flat basis in std-monomial coords
    for (int f = 0; f < n; ++f) {
        auto coords = Q_.reduce(representative(f));
        for (int r = 0; r < n; ++r) from_flat(r, f) = coords[r];
    }
    to_flat_ = from_flat.inverse();

    table_.assign(n, std::vector<std::vector<Rational>>(n));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b <= a; ++b) {
            auto coords = Q_.reduce(representative(a) * representative(b));
            std::vector<Rational> flat(n);
            for (int r = 0; r < n; ++r) {
                Rational v = 0;
                for (int c = 0; c < n; ++c)
                    if (coords[c] != 0) v += to_flat_(r, c) * coords[c];
                flat[r] = v;
            }
            table_[a][b] = flat;
            table_[b][a] = std::move(flat);
        }
}

Polynomial LimitAlgebra::representative(int fi) const {
    VarTablePtr xv = Q_.vars;
    if (fi == idx_.unit()) return Polynomial::constant(xv, 1);
    if (fi == idx_.mu_index())
        return Polynomial::variable(xv, 0, idx_.A.a1) * idx_.A.a1;  // v = a1 x1^a1
    auto [i, j] = idx_.arm_of(fi);
    return Polynomial::variable(xv, i - 1, j);
}

const std::vector<Rational>& LimitAlgebra::product(int fa, int fb) const {
    return table_.at(fa).at(fb);
}

Polynomial period_normalization(const Triplet& A, int N) {
    if (N < 0) throw std::invalid_argument("negative truncation order");
    const bool with_deformations = A.chi() >= 0;

    std::vector<std::string> names = {"x1", "x2", "x3", "s1"};
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j)
            names.push_back("s" + std::to_string(i) + "_" + std::to_string(j));
    names.push_back("smu");
    VarTablePtr vars = make_vars(names);
    const std::size_t nv = vars->size();
    const int smu = static_cast<int>(nv) - 1;

    Polynomial numerator(vars);
    for (int i = 1; i <= 3; ++i) {
        Monomial m(nv);
        m.e[i - 1] = A.a(i);
        numerator.add_term(m, 1);
    }
    if (with_deformations) {
        Monomial s1m(nv);
        s1m.e[3] = 1;
        numerator.add_term(s1m, 1);
        int v = 4;
        for (int i = 1; i <= 3; ++i)
            for (int j = 1; j <= A.a(i) - 1; ++j, ++v) {
                Monomial m(nv);
                m.e[v] = 1;
                m.e[i - 1] = j;
                numerator.add_term(m, 1);
            }
    }

    Polynomial series = Polynomial::constant(vars, 1);  // n = 0 term
    Polynomial power = Polynomial::constant(vars, 1);
    for (int n = 1; n <= N; ++n) {
        power = power * numerator;
        for (const auto& [m, c] : power.terms()) {
            if (m.e[0] != n || m.e[1] != n || m.e[2] != n) continue;
            Monomial param = m;
            param.e[0] = param.e[1] = param.e[2] = 0;
            param.e[smu] = n;
            series.add_term(param, c);
        }
    }
    return series;
}

bool monomial_obstruction_check(const Triplet& A, int nmax) {
    if (nmax < 1) throw std::invalid_argument("nmax must be >= 1");
    const bool with_deformations = A.chi() >= 0;

    for (int n = 1; n <= nmax; ++n) {
        if (!with_deformations) {
            // factors x_i^{a_i}; counts e_i with sum e_i = n must solve a_i e_i = n.
            for (int e1 = 0; e1 <= n; ++e1)
                for (int e2 = 0; e1 + e2 <= n; ++e2) {
                    int e3 = n - e1 - e2;
                    if (A.a1 * e1 == n && A.a2 * e2 == n && A.a3 * e3 == n) return false;
                }
        } else {
            // factors x_i^j, j = 1..a_i, with total count <= n; each arm must
            // reach exponent sum exactly n. Enumerate achievable factor counts
            // per arm by brute force.
            auto arm_counts = [&](int ai) {
                std::vector<bool> reachable(n + 1, false);
                // counts[c] true if some multiset of parts in 1..ai of size c sums to n
                std::vector<std::vector<bool>> dp(n + 1, std::vector<bool>(n + 1, false));
                dp[0][0] = true;
                for (int part = 1; part <= ai; ++part)
                    for (int sum = part; sum <= n; ++sum)
                        for (int cnt = 1; cnt <= n; ++cnt)
                            if (dp[sum - part][cnt - 1]) dp[sum][cnt] = true;
                for (int cnt = 0; cnt <= n; ++cnt) reachable[cnt] = dp[n][cnt];
                return reachable;
            };
            auto r1 = arm_counts(A.a1), r2 = arm_counts(A.a2), r3 = arm_counts(A.a3);
            for (int c1 = 0; c1 <= n; ++c1)
                for (int c2 = 0; c1 + c2 <= n; ++c2)
                    for (int c3 = 0; c1 + c2 + c3 <= n; ++c3)
                        if (r1[c1] && r2[c2] && r3[c3]) return false;
        }
    }
    return true;
}

JacobianResidue::JacobianResidue(const Triplet& A, const Rational& smu,
                                 const GroebnerOptions& opts)
    : A_(A), smu_(smu) {
    if (smu == 0) throw std::invalid_argument("smu must be nonzero");
    xvars_ = make_vars({"x1", "x2", "x3"});
    auto var = [&](int i, int e) { return Polynomial::variable(xvars_, i - 1, e); };

    Polynomial f = var(1, A.a1) + var(2, A.a2) + var(3, A.a3);
    {
        Monomial m(3);
        m.e[0] = m.e[1] = m.e[2] = 1;
        f.add_term(m, -Rational(1) / smu);
    }
    std::vector<Polynomial> gens = {f.diff(0), f.diff(1), f.diff(2)};
    ExtendedBasis E = groebner_basis_extended(gens, opts);
    Q_ = build_quotient(groebner_basis(gens, opts));

    // det of the 3x3 second-derivative matrix.
    Polynomial h[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) h[i][j] = gens[i].diff(j);
    hessian_ = h[0][0] * (h[1][1] * h[2][2] - h[1][2] * h[2][1]) -
               h[0][1] * (h[1][0] * h[2][2] - h[1][2] * h[2][0]) +
               h[0][2] * (h[1][0] * h[2][1] - h[1][1] * h[2][0]);

    // For each variable a monic univariate h_i with h_i(x_i) in the ideal:
    // the minimal relation among the classes of 1, x_i, x_i^2, ... in the
    // quotient. Certificates h_i(x_i) = sum_j a_{ij} gens_j come from tracked
    // division.
    Polynomial a[3][3];
    for (int i = 0; i < 3; ++i) {
        const std::size_t dim = Q_.dim();
        std::vector<std::vector<Rational>> krylov;
        Polynomial hpoly(xvars_);
        for (std::size_t N = 0; N <= dim; ++N) {
            auto coords = Q_.reduce(Polynomial::variable(xvars_, i, static_cast<int>(N)));
            // Solve krylov * c = coords exactly, if possible.
            if (!krylov.empty()) {
                QMatrix sys(dim, krylov.size());
                for (std::size_t r = 0; r < dim; ++r)
                    for (std::size_t c = 0; c < krylov.size(); ++c) sys(r, c) = krylov[c][r];
                // least-structure exact solve by elimination on the augmented system
                std::vector<Rational> sol(krylov.size());
                if (solve_consistent(sys, coords, sol)) {
                    Monomial lead(3);
                    lead.e[i] = static_cast<int>(N);
                    hpoly.add_term(lead, 1);
                    for (std::size_t k = 0; k < sol.size(); ++k) {
                        if (sol[k] == 0) continue;
                        Monomial m(3);
                        m.e[i] = static_cast<int>(k);
                        hpoly.add_term(m, -sol[k]);
                    }
                    npow_[i] = static_cast<int>(N);
                    break;
                }
            }
            krylov.push_back(coords);
        }
        if (hpoly.is_zero()) throw std::logic_error("no univariate relation found in quotient");
        hsys_[i] = hpoly;
        DivisionResult d = divide_extended(hpoly, E);
        if (!d.remainder.is_zero())
            throw std::logic_error("membership certificate failed");
        for (int j = 0; j < 3; ++j) a[i][j] = d.cofactors[j];
    }
    bezout_det_ = a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1]) -
                  a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0]) +
                  a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0]);
}

Rational JacobianResidue::raw(const Polynomial& g) const {
    // Transformation law: residue of g against the partials equals the
    // residue of g * det(a) against the split system (h1(x1), h2(x2),
    // h3(x3)). Reducing each variable below deg h_i leaves the residue as a
    // single coefficient.
    Polynomial h = normal_form(g * bezout_det_, {hsys_[0], hsys_[1], hsys_[2]});
    Monomial target(3);
    for (int i = 0; i < 3; ++i) target.e[i] = npow_[i] - 1;
    return h.coeff(target);
}

Rational JacobianResidue::raw_via_trace(const Polynomial& g) const {
    QMatrix MH = Q_.mult_matrix(hessian_);
    if (MH.det() == 0) throw HessianNotInvertibleError();
    return (Q_.mult_matrix(g) * MH.inverse()).trace();
}

Rational JacobianResidue::raw_monomial(int e1, int e2, int e3) const {
    Monomial m(3);
    m.e[0] = e1;
    m.e[1] = e2;
    m.e[2] = e3;
    return raw(Polynomial::term(xvars_, m, 1));
}

}  // namespace cuspfrob
