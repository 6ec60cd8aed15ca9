#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "cuspfrob/qmatrix.hpp"
#include "cuspfrob/triplet.hpp"

namespace cuspfrob {

struct SingularCartanError : std::domain_error {
    SingularCartanError() : std::domain_error("singular Cartan matrix (chi=0)") {}
};

// Cartan matrix of the star-shaped diagram: central vertex joined to the
// first vertex of each arm, arms joined along their length. Vertices are
// indexed 0 = central "1", then (i,j) in arm order; mu_A - 1 in total.
struct CartanData {
    Triplet A;
    int size = 0;
    std::vector<std::vector<int>> matrix;
    std::vector<std::string> labels;

    bool adjacent(int u, int v) const { return u != v && matrix[u][v] != 0; }
    Integer det() const;
    nlohmann::json to_json() const;
};

CartanData cartan_matrix(const Triplet& A);

// Vertex index helpers mirroring the flat-index arm layout, shifted by the
// missing t_mu direction.
int cartan_vertex(const CartanData& C, int i, int j);  // arm vertex (i,j)

// Coroot-basis vector: coordinates over the simple coroots.
using CorootVector = std::vector<Rational>;

// r_v(h) = h - <alpha_v, h> alpha_v^vee.
CorootVector simple_reflection(const CartanData& C, int vertex, const CorootVector& h);

// Fundamental coweights: <alpha_i, omega_j> = delta_ij. Throws
// SingularCartanError when chi = 0.
std::vector<CorootVector> fundamental_coweights(const CartanData& C);

// Element of the extended group in (word, translation, shift) form: the
// reflection word acts first (right to left), then the coroot-lattice
// translation, then the shift m along omega_1 with x_mu -> x_mu + m.
struct ExtendedElement {
    std::vector<int> word;
    std::vector<Integer> translation;  // over all simple coroots
    Integer shift = 0;
};

struct ExtendedPoint {
    CorootVector h;
    Rational x_mu;
    bool operator==(const ExtendedPoint& o) const { return h == o.h && x_mu == o.x_mu; }
};

ExtendedPoint extended_action(const CartanData& C, const std::vector<CorootVector>& coweights,
                              const ExtendedElement& e, const ExtendedPoint& pt);

// Group law in normal form; needs the coweights for the shift conjugation.
ExtendedElement compose(const CartanData& C, const std::vector<CorootVector>& coweights,
                        const ExtendedElement& e1, const ExtendedElement& e2);

// Block Gram data of the lattice-side intersection form, relative to the
// formal unit -1/(2 pi sqrt(-1))^2 (never evaluated): the Cartan pairing
// block, a vanishing cross block, and the corner -chi.
struct GramData {
    std::string tag = "-(2*pi*sqrt(-1))^(-2)";
    CartanData cartan;
    Rational corner;  // -chi relative to the tag
    nlohmann::json to_json() const;
};

GramData gram_check(const Triplet& A);

}  // namespace cuspfrob
