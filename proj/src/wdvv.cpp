#include "cuspfrob/wdvv.hpp"

#include <algorithm>
#include <array>
#include <deque>

#include "cuspfrob/cusp.hpp"

namespace cuspfrob {

namespace {

// Candidate sets grow combinatorially with the arm lengths; cap hard rather
// than exhausting memory on triplets far outside desk scale.
constexpr std::size_t kMaxCandidates = 2000000;

// Enumerates arm-exponent vectors of a fixed Euler weight.
void enumerate_weighted(const FlatContext& ctx, int slot, const Rational& remaining,
                        FlatMonomial& cur, std::vector<FlatMonomial>& out) {
    if (remaining < 0) return;
    if (out.size() > kMaxCandidates)
        throw std::length_error("candidate monomial set exceeds the supported size");
    if (slot == ctx.arm_slots()) {
        if (remaining == 0) out.push_back(cur);
        return;
    }
    const Rational& w = ctx.arm_weight[slot];
    Rational rem = remaining;
    for (int e = 0; rem >= 0; ++e) {
        cur.m[slot] = e;
        enumerate_weighted(ctx, slot + 1, rem, cur, out);
        rem -= w;
    }
    cur.m[slot] = 0;
}

int arm_support(const FlatContext& ctx, const FlatMonomial& m) {
    int arms = 0;
    for (int i = 1; i <= 3; ++i) {
        bool used = false;
        for (int j = 1; j <= ctx.A.a(i) - 1; ++j)
            if (m.m[ctx.idx.arm_index(i, j) - 1] != 0) used = true;
        if (used) ++arms;
    }
    return arms;
}

}  // namespace

std::vector<FlatMonomial> enumerate_unknowns(const Triplet& A, const ReconstructionConfig& cfg) {
    if (A.chi() == 0) throw ChiZeroError();
    FlatContext ctx(A);
    const int D = cfg.D.value_or(std::numeric_limits<int>::max());

    std::vector<FlatMonomial> out;
    for (int k = 0; k <= cfg.K; ++k) {
        Rational target = Rational(2) - ctx.chi * k;
        if (target < 0) break;  // chi > 0: nothing beyond 2/chi
        std::vector<FlatMonomial> level;
        FlatMonomial cur(ctx.arm_slots());
        cur.k = k;
        enumerate_weighted(ctx, 0, target, cur, level);
        for (auto& m : level) {
            if (m.t_degree() > D) continue;
            if (k == 0) {
                if (arm_support(ctx, m) != 1) continue;  // condition (iv)
                if (m.t_degree() < 3) continue;
            }
            out.push_back(m);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

int required_degree(const Triplet& A, int K) {
    ReconstructionConfig cfg;
    cfg.K = K;
    cfg.D.reset();
    int d = 0;
    for (const auto& m : enumerate_unknowns(A, cfg)) d = std::max(d, m.t_degree());
    return d;
}

std::map<FlatMonomial, Rational> cubic_part(const FlatContext& ctx) {
    std::map<FlatMonomial, Rational> out;
    FlatMonomial t11tmu(ctx.arm_slots());
    t11tmu.n1 = 2;
    t11tmu.p = 1;
    out[t11tmu] = rat(1, 2);
    for (int i = 1; i <= 3; ++i) {
        int ai = ctx.A.a(i);
        for (int j = 1; 2 * j <= ai && j <= ai - 1; ++j) {
            FlatMonomial m(ctx.arm_slots());
            m.n1 = 1;
            m.m[ctx.idx.arm_index(i, j) - 1] += 1;
            m.m[ctx.idx.arm_index(i, ai - j) - 1] += 1;
            out[m] = (2 * j == ai) ? rat(1, 2 * ai) : rat(1, ai);
        }
    }
    return out;
}

namespace {

// Constant factor left after applying the derivative triple to a degree-3
// monomial; zero when the pattern does not exhaust it.
Rational derivative_multiplicity(const FlatContext& ctx, const FlatMonomial& m,
                                 std::array<int, 3> pattern) {
    FlatMonomial cur = m;
    Rational f = 1;
    for (int idx : pattern) {
        if (idx == ctx.idx.unit()) {
            if (cur.n1 == 0) return 0;
            f *= cur.n1--;
        } else if (idx == ctx.idx.mu_index()) {
            if (cur.p == 0) return 0;
            f *= cur.p--;
        } else {
            int slot = idx - 1;
            if (cur.m[slot] == 0) return 0;
            f *= cur.m[slot]--;
        }
    }
    if (cur.t_degree() != 0) return 0;
    return f;
}

}  // namespace

std::map<FlatMonomial, Rational> seed_cubic(const Triplet& A) {
    LimitAlgebra L(A);
    FlatContext ctx(A);
    QMatrix eta = eta_metric(A);
    const FlatIndexing& idx = ctx.idx;

    std::map<FlatMonomial, Rational> out;
    for (int fa = 1; fa < idx.mu_index(); ++fa)
        for (int fb = fa; fb < idx.mu_index(); ++fb)
            for (int fc = fb; fc < idx.mu_index(); ++fc) {
                if (idx.euler_weight(fa) + idx.euler_weight(fb) + idx.euler_weight(fc) != 2)
                    continue;
                const auto& prod = L.product(fa, fb);
                Rational value = 0;
                for (int r = 0; r < idx.rank(); ++r)
                    if (prod[r] != 0) value += prod[r] * eta(r, fc);
                if (value == 0) continue;
                FlatMonomial m(ctx.arm_slots());
                m.m[fa - 1] += 1;
                m.m[fb - 1] += 1;
                m.m[fc - 1] += 1;
                Rational mult = derivative_multiplicity(ctx, m, {fa, fb, fc});
                out[m] = value / mult;
            }
    return out;
}

FlatSeries Potential::as_series() const {
    Truncation tr{K, std::max(D, 3)};
    FlatSeries s(ctx, tr);
    for (const auto& [m, c] : terms) s.add_term(m, c);
    return s;
}

FlatSeries Potential::three_point(int a, int b, int c) const {
    return as_series().diff(a).diff(b).diff(c);
}

nlohmann::json Potential::to_json() const {
    nlohmann::json terms_json = nlohmann::json::array();
    for (const auto& [m, c] : terms) terms_json.push_back(term_to_json(*ctx, m, c));
    return nlohmann::json{{"A", {ctx->A.a1, ctx->A.a2, ctx->A.a3}},
                          {"K", K},
                          {"D", D},
                          {"terms", terms_json}};
}

std::string Potential::canonical_bytes() const { return to_json().dump() + "\n"; }

Potential Potential::from_json(const nlohmann::json& j) {
    auto a = j.at("A");
    Triplet A(a.at(0).get<int>(), a.at(1).get<int>(), a.at(2).get<int>());
    Potential P;
    P.ctx = make_flat_context(A);
    P.K = j.at("K").get<int>();
    P.D = j.at("D").get<int>();
    for (const auto& t : j.at("terms")) {
        auto [m, c] = term_from_json(*P.ctx, t);
        if (c != 0) P.terms[m] = c;
    }
    return P;
}

// ---------------------------------------------------------------------------
// Reconstruction engine.
//
// Every coefficient of F is either a known rational or a single unknown, so
// third derivatives keep that shape and each WDVV coefficient equation is a
// quadratic form in the unknowns. Equations are consumed in rounds: affine
// ones feed an exact elimination state immediately, quadratic ones wait
// until substitutions make them affine. A stalled round means the
// configuration (not the mathematics) is at fault, and is reported at the
// lowest unresolved (q-order, t-degree) level.
// ---------------------------------------------------------------------------

namespace {

struct SymTerm {
    Rational coef;
    int uid = -1;  // -1: known
};

using SymSeries = std::map<FlatMonomial, SymTerm>;

struct QuadForm {
    Rational c;
    std::map<int, Rational> lin;
    std::map<std::pair<int, int>, Rational> quad;
    int eq_k = 0, eq_d = 0;
};

class Saturator {
public:
    explicit Saturator(std::vector<std::pair<int, int>> levels) : level_(std::move(levels)) {
        value_.resize(level_.size());
    }

    const std::optional<Rational>& value(int uid) const { return value_[uid]; }
    long progress() const { return progress_; }
    int unresolved() const {
        int n = 0;
        for (const auto& v : value_)
            if (!v) ++n;
        return n;
    }
    std::pair<int, int> lowest_unresolved_level() const {
        std::pair<int, int> best{std::numeric_limits<int>::max(), 0};
        for (std::size_t u = 0; u < value_.size(); ++u)
            if (!value_[u] && level_[u] < best) best = level_[u];
        return best;
    }

    void clear_pending() { pending_.clear(); }

    void assign(int uid, const Rational& v) {
        worklist_.push_back({uid, v});
        drain();
        scan_pending();
    }

    void add(QuadForm qf) {
        reduce(qf);
        if (!qf.quad.empty()) {
            pending_.push_back(std::move(qf));
            return;
        }
        insert_affine(std::move(qf));
        drain();
        scan_pending();
    }

private:
    struct Row {
        std::map<int, Rational> lin;  // excludes the pivot (coefficient 1)
        Rational c;
    };

    void reduce(QuadForm& qf) const {
        for (auto it = qf.quad.begin(); it != qf.quad.end();) {
            auto [x, y] = it->first;
            const Rational& coef = it->second;
            if (value_[x] && value_[y]) {
                qf.c += coef * *value_[x] * *value_[y];
            } else if (value_[x]) {
                qf.lin[y] += coef * *value_[x];
            } else if (value_[y]) {
                qf.lin[x] += coef * *value_[y];
            } else {
                ++it;
                continue;
            }
            it = qf.quad.erase(it);
        }
        for (auto it = qf.lin.begin(); it != qf.lin.end();) {
            if (value_[it->first]) {
                qf.c += it->second * *value_[it->first];
                it = qf.lin.erase(it);
            } else if (it->second == 0) {
                it = qf.lin.erase(it);
            } else {
                ++it;
            }
        }
    }

    void insert_affine(QuadForm qf) {
        for (bool changed = true; changed;) {
            changed = false;
            for (auto it = qf.lin.begin(); it != qf.lin.end(); ++it) {
                auto row = rows_.find(it->first);
                if (row == rows_.end()) continue;
                Rational f = it->second;
                qf.lin.erase(it);
                for (const auto& [u, cu] : row->second.lin) {
                    auto& slot = qf.lin[u];
                    slot -= f * cu;
                    if (slot == 0) qf.lin.erase(u);
                }
                qf.c -= f * row->second.c;
                changed = true;
                break;
            }
        }
        for (auto it = qf.lin.begin(); it != qf.lin.end();)
            it = (it->second == 0) ? qf.lin.erase(it) : std::next(it);

        if (qf.lin.empty()) {
            if (qf.c != 0) throw InconsistentError(qf.eq_k, qf.eq_d);
            return;
        }
        if (qf.lin.size() == 1) {
            auto [uid, coef] = *qf.lin.begin();
            worklist_.push_back({uid, -qf.c / coef});
            return;
        }
        int pivot = qf.lin.begin()->first;
        Rational pc = qf.lin.begin()->second;
        Row row;
        row.c = qf.c / pc;
        for (auto it = std::next(qf.lin.begin()); it != qf.lin.end(); ++it)
            row.lin[it->first] = it->second / pc;
        for (auto& [p, r] : rows_) {
            auto hit = r.lin.find(pivot);
            if (hit == r.lin.end()) continue;
            Rational f = hit->second;
            r.lin.erase(hit);
            for (const auto& [u, cu] : row.lin) {
                auto& slot = r.lin[u];
                slot -= f * cu;
                if (slot == 0) r.lin.erase(u);
            }
            r.c -= f * row.c;
        }
        rows_.emplace(pivot, std::move(row));
        for (auto it = rows_.begin(); it != rows_.end();) {
            if (it->second.lin.empty()) {
                worklist_.push_back({it->first, -it->second.c});
                it = rows_.erase(it);
            } else {
                ++it;
            }
        }
    }

    void drain() {
        while (!worklist_.empty()) {
            auto [uid, v] = worklist_.front();
            worklist_.pop_front();
            if (value_[uid]) {
                if (*value_[uid] != v)
                    throw InconsistentError(level_[uid].first, level_[uid].second);
                continue;
            }
            value_[uid] = v;
            ++progress_;
            for (auto it = rows_.begin(); it != rows_.end();) {
                auto hit = it->second.lin.find(uid);
                if (hit != it->second.lin.end()) {
                    it->second.c += hit->second * v;
                    it->second.lin.erase(hit);
                    if (it->second.lin.empty()) {
                        worklist_.push_back({it->first, -it->second.c});
                        it = rows_.erase(it);
                        continue;
                    }
                }
                ++it;
            }
            auto self = rows_.find(uid);
            if (self != rows_.end()) {
                QuadForm qf;
                qf.c = self->second.c + v;
                qf.lin = self->second.lin;
                qf.eq_k = level_[uid].first;
                qf.eq_d = level_[uid].second;
                rows_.erase(self);
                insert_affine(std::move(qf));
            }
        }
    }

    void scan_pending() {
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = pending_.begin(); it != pending_.end();) {
                reduce(*it);
                if (it->quad.empty()) {
                    QuadForm qf = std::move(*it);
                    it = pending_.erase(it);
                    insert_affine(std::move(qf));
                    drain();
                    changed = true;
                } else {
                    ++it;
                }
            }
        }
    }

    std::vector<std::optional<Rational>> value_;
    std::vector<std::pair<int, int>> level_;
    std::map<int, Row> rows_;
    std::vector<QuadForm> pending_;
    std::deque<std::pair<int, Rational>> worklist_;
    long progress_ = 0;
};

struct Cell {
    Rational val;
    int uid = -1;
};

class Engine {
public:
    Engine(FlatContextPtr ctx, int K) : ctx_(std::move(ctx)), K_(K), rank_(ctx_->idx.rank()) {}

    std::map<FlatMonomial, Cell> cells;

    void build_triples() {
        triples_.assign(static_cast<std::size_t>(rank_ * rank_ * rank_), SymSeries());
        for (int a = 0; a < rank_; ++a)
            for (int b = a; b < rank_; ++b)
                for (int c = b; c < rank_; ++c)
                    triples_[triple_key(a, b, c)] = derive_triple(a, b, c);
        pair_has_unknown_.assign(static_cast<std::size_t>(rank_ * rank_), false);
        for (int a = 0; a < rank_; ++a)
            for (int b = a; b < rank_; ++b) {
                bool unknown = false;
                for (int c = 0; c < rank_ && !unknown; ++c)
                    for (const auto& [m, t] : triple(a, b, c))
                        if (t.uid >= 0) {
                            unknown = true;
                            break;
                        }
                pair_has_unknown_[a * rank_ + b] = unknown;
                pair_has_unknown_[b * rank_ + a] = unknown;
            }
    }

    const SymSeries& triple(int a, int b, int c) const {
        std::array<int, 3> t{a, b, c};
        std::sort(t.begin(), t.end());
        return triples_[triple_key(t[0], t[1], t[2])];
    }

    bool pair_unknown(int a, int b) const { return pair_has_unknown_[a * rank_ + b]; }

    // Accumulates sign * sum_{e,f} C_{abe} eta^{ef} C_{fcd} into eq.
    void add_half(std::map<FlatMonomial, QuadForm>& eq, int sign, int a, int b, int c,
                  int d) const {
        const FlatIndexing& idx = ctx_->idx;
        for (int e = 0; e < rank_; ++e) {
            int f = idx.eta_dual(e);
            Rational kappa = Rational(sign) / idx.eta_dual_value(e);
            const SymSeries& L = triple(a, b, e);
            const SymSeries& R = triple(f, c, d);
            if (L.empty() || R.empty()) continue;
            for (const auto& [m1, t1] : L)
                for (const auto& [m2, t2] : R) {
                    if (m1.k + m2.k > K_) continue;
                    FlatMonomial m(ctx_->arm_slots());
                    m.n1 = m1.n1 + m2.n1;
                    m.p = m1.p + m2.p;
                    m.k = m1.k + m2.k;
                    for (int v = 0; v < ctx_->arm_slots(); ++v) m.m[v] = m1.m[v] + m2.m[v];
                    QuadForm& qf = eq[m];
                    Rational coef = kappa * t1.coef * t2.coef;
                    if (t1.uid < 0 && t2.uid < 0)
                        qf.c += coef;
                    else if (t1.uid >= 0 && t2.uid >= 0) {
                        auto key = std::minmax(t1.uid, t2.uid);
                        qf.quad[{key.first, key.second}] += coef;
                    } else {
                        qf.lin[t1.uid >= 0 ? t1.uid : t2.uid] += coef;
                    }
                }
        }
    }

private:
    std::size_t triple_key(int a, int b, int c) const {
        return static_cast<std::size_t>((a * rank_ + b) * rank_ + c);
    }

    SymSeries derive_triple(int a, int b, int c) const {
        const FlatIndexing& idx = ctx_->idx;
        SymSeries out;
        std::array<int, 3> pattern{a, b, c};
        for (const auto& [src, cell] : cells) {
            // The t_mu derivative branches between the q-scaling route and
            // the bare-power route.
            std::vector<std::pair<FlatMonomial, Rational>> frontier{{src, Rational(1)}};
            for (int step = 0; step < 3 && !frontier.empty(); ++step) {
                int di = pattern[step];
                std::vector<std::pair<FlatMonomial, Rational>> next;
                for (auto& [m, f] : frontier) {
                    if (di == idx.unit()) {
                        if (m.n1 == 0) continue;
                        FlatMonomial n = m;
                        n.n1 -= 1;
                        next.push_back({std::move(n), f * m.n1});
                    } else if (di == idx.mu_index()) {
                        if (m.k != 0) next.push_back({m, f * m.k});
                        if (m.p != 0) {
                            FlatMonomial n = m;
                            n.p -= 1;
                            next.push_back({std::move(n), f * m.p});
                        }
                    } else {
                        int slot = di - 1;
                        if (m.m[slot] == 0) continue;
                        FlatMonomial n = m;
                        n.m[slot] -= 1;
                        next.push_back({std::move(n), f * m.m[slot]});
                    }
                }
                frontier = std::move(next);
            }
            for (auto& [m, f] : frontier) {
                Rational coef = f * (cell.uid < 0 ? cell.val : Rational(1));
                auto [it, inserted] = out.emplace(m, SymTerm{coef, cell.uid});
                if (!inserted) {
                    if (it->second.uid != cell.uid)
                        throw std::logic_error("derivative merged unlike coefficients");
                    it->second.coef += coef;
                    if (it->second.coef == 0 && it->second.uid < 0) out.erase(it);
                }
            }
        }
        return out;
    }

    FlatContextPtr ctx_;
    int K_;
    int rank_;
    std::vector<SymSeries> triples_;
    std::vector<bool> pair_has_unknown_;
};

}  // namespace

Potential solve(const Triplet& A, const ReconstructionConfig& cfg) {
    if (A.chi() == 0) throw ChiZeroError();
    FlatContextPtr ctx = make_flat_context(A);

    const int d_req = required_degree(A, cfg.K);
    const int D = cfg.D.value_or(d_req);
    if (D < d_req) throw TruncationTooSmallError(D, d_req);

    ReconstructionConfig ecfg = cfg;
    ecfg.D = D;
    std::vector<FlatMonomial> unknowns = enumerate_unknowns(A, ecfg);

    std::map<FlatMonomial, int> uid_of;
    std::vector<std::pair<int, int>> levels;
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        uid_of[unknowns[u]] = static_cast<int>(u);
        levels.push_back({unknowns[u].k, unknowns[u].t_degree()});
    }
    Saturator sat(levels);

    Engine engine(ctx, cfg.K);
    for (const auto& [m, c] : cubic_part(*ctx)) engine.cells[m] = Cell{c, -1};
    for (std::size_t u = 0; u < unknowns.size(); ++u)
        engine.cells[unknowns[u]] = Cell{Rational(0), static_cast<int>(u)};

    // Limit-product seeds, then the coefficient-one normalization of the
    // distinguished q-monomial.
    if (A.a1 >= 2) {
        for (const auto& [m, c] : seed_cubic(A)) {
            auto it = uid_of.find(m);
            if (it == uid_of.end()) {
                if (c != 0) throw std::logic_error("cubic seed outside the unknown set");
                continue;
            }
            sat.assign(it->second, c);
        }
    }
    if (cfg.normalization) {
        auto it = uid_of.find(cfg.normalization->first);
        if (it == uid_of.end())
            throw std::invalid_argument("normalization monomial is not a candidate term");
        sat.assign(it->second, cfg.normalization->second);
    } else if (cfg.K >= 1) {
        if (A.a1 < 2) throw NormalizationMissingError();
        FlatMonomial norm(ctx->arm_slots());
        norm.k = 1;
        for (int i = 1; i <= 3; ++i) norm.m[ctx->idx.arm_index(i, 1) - 1] = 1;
        auto it = uid_of.find(norm);
        if (it != uid_of.end()) sat.assign(it->second, 1);
    }

    const int rank = ctx->idx.rank();
    const int max_rounds = 16;
    for (int round = 0; round < max_rounds && sat.unresolved() > 0; ++round) {
        for (auto& [m, cell] : engine.cells)
            if (cell.uid >= 0 && sat.value(cell.uid)) {
                cell.val = *sat.value(cell.uid);
                cell.uid = -1;
            }
        engine.build_triples();
        sat.clear_pending();

        long before = sat.progress();
        for (int a = 1; a < rank && sat.unresolved() > 0; ++a)
            for (int c = a; c < rank && sat.unresolved() > 0; ++c)
                for (int b = 1; b < rank && sat.unresolved() > 0; ++b)
                    for (int d = b + 1; d < rank; ++d) {
                        if (!engine.pair_unknown(a, b) && !engine.pair_unknown(a, d) &&
                            !engine.pair_unknown(c, d) && !engine.pair_unknown(c, b))
                            continue;
                        std::map<FlatMonomial, QuadForm> eq;
                        engine.add_half(eq, +1, a, b, c, d);
                        engine.add_half(eq, -1, a, d, c, b);
                        for (auto& [mono, qf] : eq) {
                            if (qf.c == 0 && qf.lin.empty() && qf.quad.empty()) continue;
                            qf.eq_k = mono.k;
                            qf.eq_d = mono.t_degree();
                            sat.add(std::move(qf));
                        }
                    }
        if (sat.progress() == before && sat.unresolved() > 0) {
            auto [k, d] = sat.lowest_unresolved_level();
            if (cfg.strict) throw UnderdeterminedError(k, d);
            break;
        }
    }
    if (sat.unresolved() > 0 && cfg.strict) {
        auto [k, d] = sat.lowest_unresolved_level();
        throw UnderdeterminedError(k, d);
    }

    Potential P;
    P.ctx = ctx;
    P.K = cfg.K;
    P.D = D;
    P.terms = cubic_part(*ctx);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
        const auto& v = sat.value(static_cast<int>(u));
        if (v && *v != 0) P.terms[unknowns[u]] = *v;
    }
    return P;
}

ResidualReport wdvv_residual(const Potential& P, std::optional<int> max_k,
                             std::size_t max_terms) {
    const int window = std::min(P.K, max_k.value_or(P.K));
    Engine engine(P.ctx, window);
    for (const auto& [m, c] : P.terms) {
        if (m.k > window) continue;
        engine.cells[m] = Cell{c, -1};
    }
    engine.build_triples();

    ResidualReport report;
    report.K = window;
    const int rank = P.ctx->idx.rank();
    for (int a = 1; a < rank; ++a)
        for (int c = a; c < rank; ++c)
            for (int b = 1; b < rank; ++b)
                for (int d = b + 1; d < rank; ++d) {
                    std::map<FlatMonomial, QuadForm> eq;
                    engine.add_half(eq, +1, a, b, c, d);
                    engine.add_half(eq, -1, a, d, c, b);
                    for (const auto& [mono, qf] : eq) {
                        if (qf.c == 0) continue;
                        report.terms.push_back({a, b, c, d, mono, qf.c});
                        if (report.terms.size() >= max_terms) return report;
                    }
                }
    return report;
}

}  // namespace cuspfrob
