#pragma once

#include <array>
#include <map>
#include <optional>

#include "cuspfrob/groebner.hpp"
#include "cuspfrob/poly.hpp"
#include "cuspfrob/qmatrix.hpp"
#include "cuspfrob/triplet.hpp"

namespace cuspfrob {

// Variable layout of the universal unfolding:
//   x1 < x2 < x3 < s1 < s1_1 < ... < s3_{a3-1} < smu
// with F_A = x1^a1 + x2^a2 + x3^a3 - smu^{-1} x1 x2 x3 + s1 + sum s_{i,j} x_i^j.
struct Unfolding {
    Triplet A;
    VarTablePtr vars;
    Polynomial F;  // Laurent in smu

    int x_var(int i) const { return i - 1; }  // i = 1,2,3
    int s1_var() const { return 3; }
    int sij_var(int i, int j) const;
    int smu_var() const { return static_cast<int>(vars->size()) - 1; }
};

Unfolding build_unfolding(const Triplet& A);

// F - E F - sum (1/a_i) x_i dF/dx_i; identically zero.
Polynomial euler_identity_residual(const Unfolding& u);

// The bilinear form of condition (ii) as a rank x rank matrix over the flat
// index set.
QMatrix eta_metric(const Triplet& A);

// The algebra C[x1,x2,x3] / (x1x2, x2x3, x3x1, a1 x1^a1 - a2 x2^a2,
// a2 x2^a2 - a3 x3^a3), of rank mu, presented on the flat basis
// unit -> 1, (i,j) -> x_i^j, mu -> v with v the common class of a_i x_i^{a_i}.
// Requires all a_i >= 2.
class LimitAlgebra {
public:
    explicit LimitAlgebra(const Triplet& A);

    const QuotientAlgebra& quotient() const { return Q_; }
    const FlatIndexing& indexing() const { return idx_; }
    std::size_t dim() const { return Q_.dim(); }

    // Structure constants on the flat basis: coordinates of basis[a] * basis[b].
    const std::vector<Rational>& product(int fa, int fb) const;

    // Class of a flat basis element as a polynomial in x1,x2,x3.
    Polynomial representative(int fi) const;

private:
    FlatIndexing idx_;
    QuotientAlgebra Q_;
    QMatrix to_flat_;  // std-monomial coords -> flat coords
    std::vector<std::vector<std::vector<Rational>>> table_;
};

// Constant-term expansion behind the period normalization: the sum over
// n = 0..N of smu^n times the coefficient of (x1 x2 x3)^n in numerator^n,
// where the numerator is x1^a1+x2^a2+x3^a3 for chi < 0 and additionally
// carries s1 and the s_{i,j} x_i^j terms otherwise. Returned over the
// parameter variables (s1, s_{i,j}, smu); equals the constant 1 whenever
// chi != 0.
Polynomial period_normalization(const Triplet& A, int N);

// True iff for every 1 <= n <= nmax no admissible exponent assignment
// produces the monomial (x1 x2 x3)^n. Brute force over the assignments.
bool monomial_obstruction_check(const Triplet& A, int nmax);

// Global residue data of the cusp polynomial at a fixed rational smu != 0.
// raw() is the Grothendieck residue of g dx / (dF/dx1 dF/dx2 dF/dx3) in the
// convention that sums g(p)/det Hess(p) over Morse critical points; it is
// computed through the transformation law against the monomial system
// x_i^{N_i} = sum_j a_{ij} dF/dx_j, which also covers the degenerate critical
// point at the origin (present whenever some a_i >= 3). Relative to the
// residue values quoted for the unfolding this convention carries one global
// sign, exposed as paper_sign().
class JacobianResidue {
public:
    JacobianResidue(const Triplet& A, const Rational& smu, const GroebnerOptions& opts = {});

    const QuotientAlgebra& algebra() const { return Q_; }
    const Triplet& triplet() const { return A_; }
    const Rational& smu() const { return smu_; }

    Rational raw(const Polynomial& g) const;
    // raw() of the monomial x1^e1 x2^e2 x3^e3.
    Rational raw_monomial(int e1, int e2, int e3) const;

    // Independent route: trace of mult(g) o mult(Hess)^{-1} on the quotient.
    // Throws HessianNotInvertibleError when the Hessian class is a zero
    // divisor (any a_i >= 3 puts a degenerate critical point at the origin).
    Rational raw_via_trace(const Polynomial& g) const;

    static int paper_sign() { return -1; }

private:
    Triplet A_;
    Rational smu_;
    VarTablePtr xvars_;
    QuotientAlgebra Q_;
    Polynomial hessian_;
    Polynomial bezout_det_;           // det of the cofactor matrix a_{ij}
    std::array<Polynomial, 3> hsys_;  // split system h_i(x_i)
    std::array<int, 3> npow_;         // deg h_i
};

}  // namespace cuspfrob
