#include "cuspfrob/groebner.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace cuspfrob {

namespace {

const Monomial& leading_monomial(const Polynomial& p) {
    if (p.is_zero()) throw std::invalid_argument("leading term of zero polynomial");
    return p.terms().rbegin()->first;
}

const Rational& leading_coeff(const Polynomial& p) { return p.terms().rbegin()->second; }

Polynomial make_monic(const Polynomial& p) {
    if (p.is_zero()) return p;
    return p * (Rational(1) / leading_coeff(p));
}

bool coprime(const Monomial& a, const Monomial& b) {
    for (std::size_t i = 0; i < a.e.size(); ++i)
        if (a.e[i] > 0 && b.e[i] > 0) return false;
    return true;
}

}  // namespace

Polynomial normal_form(const Polynomial& p, const std::vector<Polynomial>& G) {
    Polynomial rem(p.vars());
    Polynomial work = p;
    while (!work.is_zero()) {
        Monomial lm = leading_monomial(work);
        Rational lc = leading_coeff(work);
        bool reduced = false;
        for (const auto& g : G) {
            const Monomial& glm = leading_monomial(g);
            if (!glm.divides(lm)) continue;
            Rational f = lc / leading_coeff(g);
            Polynomial sub = g * f;
            // shift by lm/glm
            Polynomial shifted(p.vars());
            Monomial q = lm.quotient(glm);
            for (const auto& [m, c] : sub.terms()) shifted.add_term(m * q, c);
            work = work - shifted;
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(lm, lc);
            work.add_term(lm, -lc);
        }
    }
    return rem;
}

namespace {

// Shared Buchberger core. When `track` is set, every basis element carries its
// representation over the original generators.
struct BuchbergerState {
    std::vector<Polynomial> G;
    std::vector<std::vector<Polynomial>> reps;
    std::vector<Polynomial> gens;
    bool track = false;

    void make_monic_at(std::size_t k) {
        Rational lc = leading_coeff(G[k]);
        if (lc == 1) return;
        Rational inv = Rational(1) / lc;
        G[k] = G[k] * inv;
        if (track)
            for (auto& r : reps[k]) r = r * inv;
    }
};

// Reduces p against state.G; cofactor accumulation is over the ORIGINAL
// generators (via the tracked representations).
DivisionResult reduce_tracked(const Polynomial& p, const BuchbergerState& st) {
    DivisionResult out;
    out.remainder = Polynomial(p.vars());
    if (st.track) out.cofactors.assign(st.gens.size(), Polynomial(p.vars()));
    Polynomial work = p;
    while (!work.is_zero()) {
        Monomial lm = leading_monomial(work);
        Rational lc = leading_coeff(work);
        bool reduced = false;
        for (std::size_t k = 0; k < st.G.size(); ++k) {
            const Monomial& glm = leading_monomial(st.G[k]);
            if (!glm.divides(lm)) continue;
            Rational f = lc / leading_coeff(st.G[k]);
            Monomial q = lm.quotient(glm);
            Polynomial shifted(p.vars());
            for (const auto& [m, c] : st.G[k].terms()) shifted.add_term(m * q, c * f);
            work = work - shifted;
            if (st.track) {
                Polynomial factor = Polynomial::term(p.vars(), q, f);
                for (std::size_t j = 0; j < st.gens.size(); ++j)
                    if (!st.reps[k][j].is_zero())
                        out.cofactors[j] = out.cofactors[j] + factor * st.reps[k][j];
            }
            reduced = true;
            break;
        }
        if (!reduced) {
            out.remainder.add_term(lm, lc);
            work.add_term(lm, -lc);
        }
    }
    return out;
}

void run_buchberger(BuchbergerState& st, const GroebnerOptions& opts) {
    struct Pair {
        std::size_t i, j;
        Monomial lcm;
        int deg;
    };
    GrlexLess less;
    auto pair_less = [&](const Pair& a, const Pair& b) {
        if (a.deg != b.deg) return a.deg < b.deg;
        if (less(a.lcm, b.lcm)) return true;
        if (less(b.lcm, a.lcm)) return false;
        if (a.i != b.i) return a.i < b.i;
        return a.j < b.j;
    };

    std::vector<Pair> queue;
    std::size_t enqueued = 0;
    auto push_pairs_for = [&](std::size_t k) {
        for (std::size_t i = 0; i < k; ++i) {
            Monomial l = Monomial::lcm(leading_monomial(st.G[i]), leading_monomial(st.G[k]));
            queue.push_back({i, k, l, l.degree()});
            if (++enqueued > opts.max_pairs) throw ResourceLimitError();
        }
    };
    for (std::size_t k = 0; k < st.G.size(); ++k) push_pairs_for(k);

    while (!queue.empty()) {
        auto it = std::min_element(queue.begin(), queue.end(), pair_less);
        Pair pr = *it;
        queue.erase(it);

        const Monomial& li = leading_monomial(st.G[pr.i]);
        const Monomial& lj = leading_monomial(st.G[pr.j]);
        if (coprime(li, lj)) continue;  // first criterion
        bool chained = false;           // chain criterion
        for (std::size_t k = 0; k < st.G.size() && !chained; ++k) {
            if (k == pr.i || k == pr.j) continue;
            if (!leading_monomial(st.G[k]).divides(pr.lcm)) continue;
            auto still_queued = [&](std::size_t a, std::size_t b) {
                if (a > b) std::swap(a, b);
                for (const auto& q : queue)
                    if (q.i == a && q.j == b) return true;
                return false;
            };
            if (!still_queued(pr.i, k) && !still_queued(pr.j, k)) chained = true;
        }
        if (chained) continue;

        VarTablePtr vars = st.G[pr.i].vars();
        Monomial qi = pr.lcm.quotient(li);
        Monomial qj = pr.lcm.quotient(lj);
        Polynomial spoly(vars);
        for (const auto& [m, c] : st.G[pr.i].terms()) spoly.add_term(m * qi, c);
        for (const auto& [m, c] : st.G[pr.j].terms()) spoly.add_term(m * qj, -c);

        DivisionResult red = reduce_tracked(spoly, st);
        if (red.remainder.is_zero()) continue;

        if (st.track) {
            Polynomial mi = Polynomial::term(vars, qi, 1);
            Polynomial mj = Polynomial::term(vars, qj, 1);
            std::vector<Polynomial> rep(st.gens.size(), Polynomial(vars));
            for (std::size_t j = 0; j < st.gens.size(); ++j)
                rep[j] = mi * st.reps[pr.i][j] - mj * st.reps[pr.j][j] - red.cofactors[j];
            st.reps.push_back(std::move(rep));
        }
        st.G.push_back(red.remainder);
        st.make_monic_at(st.G.size() - 1);
        push_pairs_for(st.G.size() - 1);
    }
}

}  // namespace

std::vector<Polynomial> groebner_basis(const std::vector<Polynomial>& gens,
                                       const GroebnerOptions& opts) {
    BuchbergerState st;
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        st.G.push_back(g);
        st.make_monic_at(st.G.size() - 1);
    }
    if (st.G.empty()) throw std::invalid_argument("groebner_basis: no nonzero generators");
    run_buchberger(st, opts);
    std::vector<Polynomial>& G = st.G;

    // Minimalize: drop elements whose leading term is divisible by another's.
    std::vector<Polynomial> minimal;
    for (std::size_t i = 0; i < G.size(); ++i) {
        bool redundant = false;
        for (std::size_t j = 0; j < G.size() && !redundant; ++j) {
            if (i == j) continue;
            if (leading_monomial(G[j]).divides(leading_monomial(G[i]))) {
                if (leading_monomial(G[i]) == leading_monomial(G[j]) && j > i) continue;
                redundant = true;
            }
        }
        if (!redundant) minimal.push_back(G[i]);
    }
    // Reduce tails against the rest.
    std::vector<Polynomial> reduced;
    for (std::size_t i = 0; i < minimal.size(); ++i) {
        std::vector<Polynomial> others;
        for (std::size_t j = 0; j < minimal.size(); ++j)
            if (j != i) others.push_back(minimal[j]);
        reduced.push_back(make_monic(normal_form(minimal[i], others)));
    }
    GrlexLess ml;
    std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
        return ml(leading_monomial(a), leading_monomial(b));
    });
    return reduced;
}


ExtendedBasis groebner_basis_extended(const std::vector<Polynomial>& gens,
                                      const GroebnerOptions& opts) {
    BuchbergerState st;
    st.track = true;
    st.gens = gens;
    VarTablePtr vars;
    for (std::size_t j = 0; j < gens.size(); ++j) {
        if (gens[j].is_zero()) continue;
        if (!vars) vars = gens[j].vars();
        st.G.push_back(gens[j]);
        std::vector<Polynomial> rep(gens.size(), Polynomial(vars));
        rep[j] = Polynomial::constant(vars, 1);
        st.reps.push_back(std::move(rep));
        st.make_monic_at(st.G.size() - 1);
    }
    if (st.G.empty()) throw std::invalid_argument("groebner_basis: no nonzero generators");
    run_buchberger(st, opts);
    return {st.G, st.reps, gens};
}

DivisionResult divide_extended(const Polynomial& p, const ExtendedBasis& E) {
    BuchbergerState st;
    st.track = true;
    st.gens = E.gens;
    st.G = E.basis;
    st.reps = E.reps;
    return reduce_tracked(p, st);
}

int QuotientAlgebra::basis_index(const Monomial& m) const {
    for (std::size_t i = 0; i < basis.size(); ++i)
        if (basis[i] == m) return static_cast<int>(i);
    return -1;
}

std::vector<Rational> QuotientAlgebra::reduce(const Polynomial& p) const {
    Polynomial nf = normal_form(p, groebner);
    std::vector<Rational> coords(dim(), Rational(0));
    for (const auto& [m, c] : nf.terms()) {
        int idx = basis_index(m);
        if (idx < 0) throw std::logic_error("normal form outside the standard basis");
        coords[idx] = c;
    }
    return coords;
}

QMatrix QuotientAlgebra::mult_matrix(const Polynomial& p) const {
    QMatrix M(dim(), dim());
    for (std::size_t j = 0; j < dim(); ++j) {
        Polynomial bj = Polynomial::term(vars, basis[j], 1);
        auto col = reduce(p * bj);
        for (std::size_t i = 0; i < dim(); ++i) M(i, j) = col[i];
    }
    return M;
}

nlohmann::json QuotientAlgebra::to_json() const {
    nlohmann::json basis_json = nlohmann::json::array();
    for (const auto& m : basis)
        basis_json.push_back(Polynomial::term(vars, m, 1).str());
    nlohmann::json tables = nlohmann::json::object();
    for (std::size_t v = 0; v < var_tables.size(); ++v) {
        nlohmann::json rows = nlohmann::json::array();
        for (std::size_t i = 0; i < dim(); ++i) {
            nlohmann::json row = nlohmann::json::array();
            for (std::size_t j = 0; j < dim(); ++j) row.push_back(rat_str(var_tables[v](i, j)));
            rows.push_back(std::move(row));
        }
        tables[vars->names[v]] = std::move(rows);
    }
    return nlohmann::json{{"dimension", dim()}, {"basis", basis_json}, {"tables", tables}};
}

QuotientAlgebra build_quotient(const std::vector<Polynomial>& groebner) {
    if (groebner.empty()) throw std::invalid_argument("build_quotient: empty basis");
    VarTablePtr vars = groebner.front().vars();
    const std::size_t n = vars->size();

    std::vector<Monomial> lts;
    for (const auto& g : groebner) lts.push_back(g.terms().rbegin()->first);

    // Finite dimension requires a pure power of every variable among the
    // leading terms.
    std::vector<int> bound(n, -1);
    for (const auto& lt : lts) {
        int var = -1;
        bool pure = true;
        for (std::size_t i = 0; i < n; ++i) {
            if (lt.e[i] == 0) continue;
            if (var >= 0) {
                pure = false;
                break;
            }
            var = static_cast<int>(i);
        }
        if (pure && var >= 0 && (bound[var] < 0 || lt.e[var] < bound[var])) bound[var] = lt.e[var];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (bound[i] < 0) throw InfiniteDimensionalError();

    // Enumerate standard monomials below the pure-power box.
    std::vector<Monomial> std_monos;
    Monomial cur(n);
    while (true) {
        bool standard = true;
        for (const auto& lt : lts)
            if (lt.divides(cur)) {
                standard = false;
                break;
            }
        if (standard) std_monos.push_back(cur);
        std::size_t pos = 0;
        while (pos < n) {
            if (++cur.e[pos] < bound[pos]) break;
            cur.e[pos] = 0;
            ++pos;
        }
        if (pos == n) break;
    }
    GrlexLess less;
    std::sort(std_monos.begin(), std_monos.end(), less);

    QuotientAlgebra Q;
    Q.vars = vars;
    Q.basis = std::move(std_monos);
    Q.groebner = groebner;
    for (std::size_t v = 0; v < n; ++v)
        Q.var_tables.push_back(Q.mult_matrix(Polynomial::variable(vars, static_cast<int>(v))));
    return Q;
}

}  // namespace cuspfrob
