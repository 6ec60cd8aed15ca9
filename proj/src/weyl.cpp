#include "cuspfrob/weyl.hpp"

namespace cuspfrob {

CartanData cartan_matrix(const Triplet& A) {
    CartanData C;
    C.A = A;
    C.size = A.mu() - 1;
    C.labels.push_back("1");
    for (int i = 1; i <= 3; ++i)
        for (int j = 1; j <= A.a(i) - 1; ++j)
            C.labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + ")");

    C.matrix.assign(C.size, std::vector<int>(C.size, 0));
    for (int v = 0; v < C.size; ++v) C.matrix[v][v] = 2;
    auto join = [&](int u, int v) {
        C.matrix[u][v] = -1;
        C.matrix[v][u] = -1;
    };
    int pos = 1;
    for (int i = 1; i <= 3; ++i) {
        for (int j = 1; j <= A.a(i) - 1; ++j, ++pos) {
            if (j == 1)
                join(0, pos);
            else
                join(pos - 1, pos);
        }
    }
    return C;
}

int cartan_vertex(const CartanData& C, int i, int j) {
    if (i < 1 || i > 3 || j < 1 || j > C.A.a(i) - 1) throw std::out_of_range("arm vertex");
    int pos = 1;
    for (int p = 1; p < i; ++p) pos += C.A.a(p) - 1;
    return pos + j - 1;
}

Integer CartanData::det() const {
    std::vector<std::vector<Integer>> m(size, std::vector<Integer>(size));
    for (int i = 0; i < size; ++i)
        for (int j = 0; j < size; ++j) m[i][j] = matrix[i][j];
    return bareiss_det(std::move(m));
}

nlohmann::json CartanData::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : matrix) rows.push_back(r);
    return nlohmann::json{{"labels", labels}, {"matrix", rows}, {"det", det().get_str()}};
}

CorootVector simple_reflection(const CartanData& C, int vertex, const CorootVector& h) {
    if (vertex < 0 || vertex >= C.size) throw std::out_of_range("reflection vertex");
    if (static_cast<int>(h.size()) != C.size) throw std::invalid_argument("vector size mismatch");
    // <alpha_v, h> = sum_j Cartan[v][j] h_j in the coroot basis.
    Rational pairing = 0;
    for (int j = 0; j < C.size; ++j)
        if (h[j] != 0) pairing += Rational(C.matrix[vertex][j]) * h[j];
    CorootVector out = h;
    out[vertex] -= pairing;
    return out;
}

std::vector<CorootVector> fundamental_coweights(const CartanData& C) {
    QMatrix M(C.size, C.size);
    for (int i = 0; i < C.size; ++i)
        for (int j = 0; j < C.size; ++j) M(i, j) = C.matrix[i][j];
    if (M.det() == 0) throw SingularCartanError();
    QMatrix inv = M.inverse();
    // omega_j = sum_m inv(m, j) alpha_m^vee gives <alpha_i, omega_j> = delta_ij.
    std::vector<CorootVector> out(C.size, CorootVector(C.size));
    for (int j = 0; j < C.size; ++j)
        for (int m = 0; m < C.size; ++m) out[j][m] = inv(m, j);
    return out;
}

namespace {

CorootVector apply_word(const CartanData& C, const std::vector<int>& word, CorootVector h) {
    for (auto it = word.rbegin(); it != word.rend(); ++it) h = simple_reflection(C, *it, h);
    return h;
}

}  // namespace

ExtendedPoint extended_action(const CartanData& C, const std::vector<CorootVector>& coweights,
                              const ExtendedElement& e, const ExtendedPoint& pt) {
    if (static_cast<int>(e.translation.size()) != C.size)
        throw std::invalid_argument("translation size mismatch");
    ExtendedPoint out;
    out.h = apply_word(C, e.word, pt.h);
    for (int v = 0; v < C.size; ++v) out.h[v] += Rational(e.translation[v]);
    if (e.shift != 0) {
        const CorootVector& w1 = coweights.at(0);
        for (int v = 0; v < C.size; ++v) out.h[v] += Rational(e.shift) * w1[v];
    }
    out.x_mu = pt.x_mu + Rational(e.shift);
    return out;
}

ExtendedElement compose(const CartanData& C, const std::vector<CorootVector>& coweights,
                        const ExtendedElement& e1, const ExtendedElement& e2) {
    // e1 e2: h -> w1(w2 h + tau2 + m2 omega_1) + tau1 + m1 omega_1
    //          = (w1 w2) h + [w1(tau2) + m2 (w1(omega_1) - omega_1) + tau1]
    //            + (m1 + m2) omega_1.
    ExtendedElement out;
    out.word = e1.word;
    out.word.insert(out.word.end(), e2.word.begin(), e2.word.end());
    out.shift = e1.shift + e2.shift;

    CorootVector tau2(C.size);
    for (int v = 0; v < C.size; ++v) tau2[v] = Rational(e2.translation[v]);
    CorootVector moved = apply_word(C, e1.word, tau2);
    CorootVector w1_omega = apply_word(C, e1.word, coweights.at(0));

    out.translation.resize(C.size);
    for (int v = 0; v < C.size; ++v) {
        Rational val = moved[v] + Rational(e2.shift) * (w1_omega[v] - coweights.at(0)[v]) +
                       Rational(e1.translation[v]);
        if (!is_integer(val)) throw std::logic_error("composition left the coroot lattice");
        out.translation[v] = val.get_num();
    }
    return out;
}

nlohmann::json GramData::to_json() const {
    return nlohmann::json{{"tag", tag},
                          {"cartan_block", cartan.to_json()},
                          {"cross_block", "0"},
                          {"corner", rat_str(corner)}};
}

GramData gram_check(const Triplet& A) {
    if (A.chi() == 0) throw SingularCartanError();
    GramData g;
    g.cartan = cartan_matrix(A);
    g.corner = -A.chi();
    return g;
}

}  // namespace cuspfrob
