#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cuspfrob/qmatrix.hpp"
#include "cuspfrob/wdvv.hpp"

namespace cuspfrob {

struct DegenerateMetricError : std::domain_error {
    DegenerateMetricError() : std::domain_error("degenerate metric at point") {}
};

struct InconsistentRecoveryError : std::runtime_error {
    explicit InconsistentRecoveryError(const std::string& what) : std::runtime_error(what) {}
};

// The second metric g^{ij} = sum eta^{ik} eta^{jl} E(d_k d_l F), kept as exact
// truncated series entry by entry.
struct IntersectionForm {
    FlatContextPtr ctx;
    int K = 0, D = 0;
    std::vector<FlatSeries> entries;  // rank x rank, row-major

    int rank() const { return ctx->idx.rank(); }
    const FlatSeries& at(int i, int j) const { return entries[i * rank() + j]; }
};

IntersectionForm intersection_form(const Potential& P);

// Violations of the flat-coordinate identities, as printable strings; empty
// means every identity holds exactly as a series:
//   g symmetric, g^{mu,1} = t_1, g^{mu,(i,j)} = ((a_i-j)/a_i) t_{i,j},
//   g^{mu,mu} = chi.
std::vector<std::string> flat_identity_violations(const IntersectionForm& g);

// Pointwise Levi-Civita data of the intersection form: the contravariant
// Christoffel symbols Gamma^{ij}_k = -sum_s g^{is} Gamma^j_{sk} at a regular
// rational point.
struct ChristoffelSample {
    FlatPoint point;
    QMatrix g_at;                  // g^{ij}(point)
    std::vector<Rational> gamma;   // rank^3, [i][j][k]
    int rank = 0;

    const Rational& at(int i, int j, int k) const {
        return gamma[(i * rank + j) * rank + k];
    }
};

ChristoffelSample christoffel_at_point(const IntersectionForm& g, const FlatPoint& pt);

// Outcome of checking Gamma^{ij}_k = d_j C^{ij}_k at one sample point. The
// t_mu column has no linear Euler weight and is reported, not asserted; its
// observed values land in mu_column_max_abs (zero for an exact potential).
struct GammaRelationResult {
    std::vector<std::string> violations;        // asserted columns (unit, arms)
    std::vector<std::string> delta_violations;  // C^{i,mu}_k = delta^i_k
    Rational mu_column_max_abs = 0;
};

GammaRelationResult gamma_relation_at_point(const Potential& P, const IntersectionForm& g,
                                            const ChristoffelSample& sample);

// Rebuilds the full three-point table C_{abk}(point) from the intersection
// form alone: unit and arm columns via Gamma^{ij}_k / d_j, lowered with eta,
// cross-checked over every usable column. Throws InconsistentRecoveryError
// when two routes disagree.
std::vector<Rational> reconstruct_three_point(const IntersectionForm& g,
                                              const ChristoffelSample& sample);

// Deterministic small-rational sample points off the discriminant. With
// zero_q set, points sit on the q = 0 slice (where a q-truncated potential is
// exact); otherwise q is a small nonzero rational.
struct SampleOptions {
    std::uint64_t seed = 9001;
    int count = 5;
    bool zero_q = false;
};

std::vector<FlatPoint> sample_points(const IntersectionForm& g, const SampleOptions& opts);

}  // namespace cuspfrob
