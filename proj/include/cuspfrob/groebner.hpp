#pragma once

#include <stdexcept>
#include <vector>

#include "json.hpp"

#include "cuspfrob/poly.hpp"
#include "cuspfrob/qmatrix.hpp"

namespace cuspfrob {

struct ResourceLimitError : std::runtime_error {
    ResourceLimitError() : std::runtime_error("groebner: S-pair queue exceeded resource limit") {}
};

struct InfiniteDimensionalError : std::runtime_error {
    InfiniteDimensionalError() : std::runtime_error("infinite-dimensional quotient") {}
};

struct HessianNotInvertibleError : std::runtime_error {
    HessianNotInvertibleError() : std::runtime_error("Hessian not invertible") {}
};

struct GroebnerOptions {
    // Cap on S-pairs ever enqueued; the ideals here are tiny, so the default
    // is generous.
    std::size_t max_pairs = 200000;
};

// Remainder of p on division by G; no term of the result is divisible by any
// leading term of G. Unique once G is a Groebner basis.
Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G);

// Reduced Groebner basis w.r.t. the global graded-lex order, monic, sorted by
// leading term. Buchberger with normal pair selection and the coprimality and
// chain criteria.
std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                       const GroebnerOptions& opts = {});

// Groebner basis that remembers how each element is written over the original
// generators; needed for ideal-membership certificates.
struct ExtendedBasis {
    std::vector<Polynomial> basis;
    std::vector<std::vector<Polynomial>> reps;  // basis[k] = sum reps[k][j] * gens[j]
    std::vector<Polynomial> gens;
};

ExtendedBasis groebner_basis_extended(const std::vector<Polynomial>& gens,
                                      const GroebnerOptions& opts = {});

// Division with certificate: p = sum cofactors[j] * E.gens[j] + remainder.
struct DivisionResult {
    Polynomial remainder;
    std::vector<Polynomial> cofactors;
};

DivisionResult divide_extended(const Polynomial& p, const ExtendedBasis& E);

// Finite-dimensional quotient by the ideal of a Groebner basis: the standard
// monomials and one multiplication matrix per variable.
struct QuotientAlgebra {
    VarTablePtr vars;
    std::vector<Monomial> basis;          // standard monomials, ascending order
    std::vector<QMatrix> var_tables;      // mult-by-variable, one per variable
    std::vector<Polynomial> groebner;     // defining basis

    std::size_t dim() const { return basis.size(); }
    int basis_index(const Monomial& m) const;

    // Coordinates of the residue class of p in the standard-monomial basis.
    std::vector<Rational> reduce(const Polynomial& p) const;

    // Multiplication operator of the class of p.
    QMatrix mult_matrix(const Polynomial& p) const;

    // Basis monomials in canonical order, tables as row-major rational
    // strings.
    nlohmann::json to_json() const;
};

QuotientAlgebra build_quotient(const std::vector<Polynomial>& groebner);

}  // namespace cuspfrob
