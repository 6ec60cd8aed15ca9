#include "cuspfrob/flat_series.hpp"

#include <stdexcept>

namespace cuspfrob {

Rational euler_degree(const FlatContext& ctx, const FlatMonomial& mono) {
    Rational d = mono.n1;
    for (int v = 0; v < ctx.arm_slots(); ++v)
        if (mono.m[v] != 0) d += ctx.arm_weight[v] * mono.m[v];
    d += ctx.chi * mono.k;
    return d;
}

FlatSeries FlatSeries::constant(FlatContextPtr ctx, Truncation tr, const Rational& c) {
    FlatSeries s(std::move(ctx), tr);
    if (c != 0) s.terms_.emplace(FlatMonomial(s.ctx_->arm_slots()), c);
    return s;
}

void FlatSeries::add_term(const FlatMonomial& m, const Rational& c) {
    if (c == 0) return;
    if (m.k > tr_.K || m.t_degree() > tr_.D) {
        lossy_ = true;
        return;
    }
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational FlatSeries::coeff(const FlatMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

void FlatSeries::check_compatible(const FlatSeries& o) const {
    if (!ctx_ || !o.ctx_) throw std::invalid_argument("series without context");
    if (!(ctx_->A == o.ctx_->A)) throw std::invalid_argument("series over different triplets");
    if (!(tr_ == o.tr_)) throw std::invalid_argument("series with different truncations");
}

FlatSeries FlatSeries::operator+(const FlatSeries& o) const {
    check_compatible(o);
    FlatSeries r = *this;
    r.lossy_ = lossy_ || o.lossy_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

FlatSeries FlatSeries::operator-(const FlatSeries& o) const {
    check_compatible(o);
    FlatSeries r = *this;
    r.lossy_ = lossy_ || o.lossy_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

FlatSeries FlatSeries::operator*(const FlatSeries& o) const {
    check_compatible(o);
    FlatSeries r(ctx_, tr_);
    r.lossy_ = lossy_ || o.lossy_;
    const int slots = ctx_->arm_slots();
    for (const auto& [m1, c1] : terms_) {
        for (const auto& [m2, c2] : o.terms_) {
            if (m1.k + m2.k > tr_.K) {
                r.lossy_ = true;
                continue;
            }
            FlatMonomial m(slots);
            m.n1 = m1.n1 + m2.n1;
            m.p = m1.p + m2.p;
            m.k = m1.k + m2.k;
            for (int v = 0; v < slots; ++v) m.m[v] = m1.m[v] + m2.m[v];
            r.add_term(m, c1 * c2);
        }
    }
    return r;
}

FlatSeries FlatSeries::operator*(const Rational& c) const {
    FlatSeries r(ctx_, tr_);
    r.lossy_ = lossy_;
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

FlatSeries FlatSeries::diff(int flat_index) const {
    FlatSeries r(ctx_, tr_);
    r.lossy_ = lossy_;
    const FlatIndexing& idx = ctx_->idx;
    if (flat_index == idx.unit()) {
        for (const auto& [m, c] : terms_) {
            if (m.n1 == 0) continue;
            FlatMonomial n = m;
            n.n1 -= 1;
            r.add_term(n, c * m.n1);
        }
    } else if (flat_index == idx.mu_index()) {
        for (const auto& [m, c] : terms_) {
            if (m.k != 0) r.add_term(m, c * m.k);  // d/dt_mu q^k = k q^k
            if (m.p != 0) {
                FlatMonomial n = m;
                n.p -= 1;
                r.add_term(n, c * m.p);
            }
        }
    } else {
        int slot = flat_index - 1;
        for (const auto& [m, c] : terms_) {
            if (m.m[slot] == 0) continue;
            FlatMonomial n = m;
            n.m[slot] -= 1;
            r.add_term(n, c * m.m[slot]);
        }
    }
    return r;
}

FlatSeries FlatSeries::euler_applied() const {
    FlatSeries r(ctx_, tr_);
    r.lossy_ = lossy_;
    for (const auto& [m, c] : terms_) {
        r.add_term(m, c * euler_degree(*ctx_, m));
        if (m.p != 0) {  // chi d/dt_mu on the bare t_mu power
            FlatMonomial n = m;
            n.p -= 1;
            r.add_term(n, c * ctx_->chi * m.p);
        }
    }
    return r;
}

Rational FlatSeries::eval(const FlatPoint& pt) const {
    if (static_cast<int>(pt.arms.size()) != ctx_->arm_slots())
        throw std::invalid_argument("evaluation point arity mismatch");
    auto ipow = [](const Rational& b, int e) {
        Rational r = 1;
        for (int i = 0; i < e; ++i) r *= b;
        return r;
    };
    Rational total = 0;
    for (const auto& [m, c] : terms_) {
        Rational v = c;
        if (m.n1) v *= ipow(pt.t1, m.n1);
        if (m.k) v *= ipow(pt.q, m.k);
        if (m.p) {
            if (!pt.tmu) throw std::invalid_argument("point lacks a t_mu value");
            v *= ipow(*pt.tmu, m.p);
        }
        for (std::size_t s = 0; s < pt.arms.size(); ++s)
            if (m.m[s]) v *= ipow(pt.arms[s], m.m[s]);
        total += v;
    }
    return total;
}

nlohmann::json term_to_json(const FlatContext& ctx, const FlatMonomial& m, const Rational& c) {
    nlohmann::json arms = nlohmann::json::array();
    for (int slot = 0; slot < ctx.arm_slots(); ++slot) {
        if (m.m[slot] == 0) continue;
        auto [i, j] = ctx.idx.arm_of(slot + 1);
        arms.push_back({i, j, m.m[slot]});
    }
    return nlohmann::json{{"t1", m.n1}, {"arms", arms}, {"q", m.k}, {"tmu", m.p},
                          {"c", rat_str(c)}};
}

std::pair<FlatMonomial, Rational> term_from_json(const FlatContext& ctx,
                                                 const nlohmann::json& j) {
    FlatMonomial m(ctx.arm_slots());
    m.n1 = j.at("t1").get<int>();
    m.p = j.at("tmu").get<int>();
    m.k = j.at("q").get<int>();
    for (const auto& arm : j.at("arms")) {
        int i = arm.at(0).get<int>(), jj = arm.at(1).get<int>(), e = arm.at(2).get<int>();
        m.m[ctx.idx.arm_index(i, jj) - 1] = e;
    }
    return {m, rat_parse(j.at("c").get<std::string>())};
}

nlohmann::json FlatSeries::to_json() const {
    nlohmann::json terms = nlohmann::json::array();
    for (const auto& [m, c] : terms_) terms.push_back(term_to_json(*ctx_, m, c));
    return terms;
}

FlatSeries FlatSeries::from_json(FlatContextPtr ctx, Truncation tr, const nlohmann::json& j) {
    FlatSeries s(std::move(ctx), tr);
    for (const auto& t : j) {
        auto [m, c] = term_from_json(*s.ctx_, t);
        s.add_term(m, c);
    }
    return s;
}

}  // namespace cuspfrob
