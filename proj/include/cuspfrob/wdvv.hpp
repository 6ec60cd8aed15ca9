#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "cuspfrob/flat_series.hpp"
#include "cuspfrob/triplet.hpp"

namespace cuspfrob {

struct ChiZeroError : std::domain_error {
    ChiZeroError() : std::domain_error("chi zero") {}
};

struct TruncationTooSmallError : std::domain_error {
    TruncationTooSmallError(int given, int required)
        : std::domain_error("t-degree truncation " + std::to_string(given) +
                            " below required " + std::to_string(required)) {}
};

struct NormalizationMissingError : std::domain_error {
    NormalizationMissingError()
        : std::domain_error(
              "no normalization term available (some a_i = 1); supply one explicitly") {}
};

// Reported with the lowest unresolved (q-order, t-degree) level.
struct UnderdeterminedError : std::runtime_error {
    int k, d;
    UnderdeterminedError(int k_, int d_)
        : std::runtime_error("underdetermined at level (" + std::to_string(k_) + "," +
                             std::to_string(d_) + ")"),
          k(k_), d(d_) {}
};

struct InconsistentError : std::runtime_error {
    int k, d;
    InconsistentError(int k_, int d_)
        : std::runtime_error("inconsistent at level (" + std::to_string(k_) + "," +
                             std::to_string(d_) + ")"),
          k(k_), d(d_) {}
};

struct ReconstructionConfig {
    int K = 2;
    std::optional<int> D;  // defaults to the exact requirement for (A, K)
    bool strict = true;
    // Replacement for the t_{1,1} t_{2,1} t_{3,1} q = 1 normalization when
    // some a_i = 1 removes that monomial.
    std::optional<std::pair<FlatMonomial, Rational>> normalization;
};

// Smallest t-degree bound that keeps every Euler-degree-2 monomial with
// q-power <= K; solving with anything less would drop genuine potential
// terms.
int required_degree(const Triplet& A, int K);

// All candidate correction monomials: Euler degree exactly 2, q-power <= K,
// t-degree <= D, and for q-power 0 supported on a single arm (with t-degree
// at least 3). Sorted by (q-power, t-degree, canonical order).
std::vector<FlatMonomial> enumerate_unknowns(const Triplet& A, const ReconstructionConfig& cfg);

// The fixed cubic: (1/2) t1^2 t_mu + (1/2) t1 sum (1/a_i) t_{i,j} t_{i,a_i-j}.
std::map<FlatMonomial, Rational> cubic_part(const FlatContext& ctx);

// Degree-3 correction coefficients implied by the limit product: the value
// eta(x^{j1} x^{j2}, x^{j3}) divided by the derivative multiplicity of the
// monomial. Requires all a_i >= 2.
std::map<FlatMonomial, Rational> seed_cubic(const Triplet& A);

// A fully determined potential: cubic plus correction, all coefficients
// rational.
struct Potential {
    FlatContextPtr ctx;
    int K = 0;
    int D = 0;
    std::map<FlatMonomial, Rational> terms;  // includes the cubic part

    FlatSeries as_series() const;
    FlatSeries three_point(int a, int b, int c) const;

    nlohmann::json to_json() const;
    // Canonical byte encoding used for caching and CLI output.
    std::string canonical_bytes() const;
    static Potential from_json(const nlohmann::json& j);
};

Potential solve(const Triplet& A, const ReconstructionConfig& cfg);

struct ResidualTerm {
    int a, b, c, d;  // flat indices of the offending associativity equation
    FlatMonomial monomial;
    Rational value;
};

struct ResidualReport {
    int K;  // q-window the residual is valid in
    std::vector<ResidualTerm> terms;
    bool empty() const { return terms.empty(); }
};

// All nonzero coefficients of the WDVV expressions
//   sum_{e,f} C_{abe} eta^{ef} C_{fcd} - (b <-> d)
// within the reliable q-window. An exact reconstruction yields none.
// max_k, when set, restricts the window (e.g. to the q^0 sector).
ResidualReport wdvv_residual(const Potential& P, std::optional<int> max_k = std::nullopt,
                             std::size_t max_terms = 64);

}  // namespace cuspfrob
