#include "cuspfrob/poly.hpp"

#include <cctype>
#include <sstream>

namespace cuspfrob {

int VarTable::index_of(const std::string& name) const {
    for (std::size_t i = 0; i < names.size(); ++i)
        if (names[i] == name) return static_cast<int>(i);
    return -1;
}

VarTablePtr make_vars(std::vector<std::string> names) {
    auto t = std::make_shared<VarTable>();
    t->names = std::move(names);
    return t;
}

Polynomial Polynomial::constant(VarTablePtr vars, const Rational& c, bool laurent) {
    Polynomial p(std::move(vars), laurent);
    if (c != 0) p.terms_.emplace(Monomial(p.vars_->size()), c);
    return p;
}

Polynomial Polynomial::variable(VarTablePtr vars, int var, int exp, bool laurent) {
    Polynomial p(std::move(vars), laurent);
    if (var < 0 || static_cast<std::size_t>(var) >= p.vars_->size())
        throw std::invalid_argument("variable index out of range");
    Monomial m(p.vars_->size());
    m.e[var] = exp;
    p.terms_.emplace(std::move(m), Rational(1));
    p.check_exponents();
    return p;
}

Polynomial Polynomial::term(VarTablePtr vars, const Monomial& m, const Rational& c, bool laurent) {
    Polynomial p(std::move(vars), laurent);
    if (m.e.size() != p.vars_->size()) throw std::invalid_argument("monomial arity mismatch");
    if (c != 0) p.terms_.emplace(m, c);
    p.check_exponents();
    return p;
}

void Polynomial::add_term(const Monomial& m, const Rational& c) {
    if (c == 0) return;
    if (!laurent_ && m.has_negative())
        throw std::domain_error("negative exponent outside a Laurent context");
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted) {
        it->second += c;
        if (it->second == 0) terms_.erase(it);
    }
}

Rational Polynomial::coeff(const Monomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? Rational(0) : it->second;
}

Rational Polynomial::constant_term() const { return coeff(Monomial(vars_->size())); }

void Polynomial::check_compatible(const Polynomial& o) const {
    if (vars_ == o.vars_) return;
    if (vars_ && o.vars_ && vars_->names == o.vars_->names) return;
    throw std::invalid_argument("polynomials over different variable tables");
}

void Polynomial::check_exponents() const {
    if (laurent_) return;
    for (const auto& [m, c] : terms_)
        if (m.has_negative())
            throw std::domain_error("negative exponent outside a Laurent context");
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(vars_, laurent_ || o.laurent_);
    r.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(vars_, laurent_ || o.laurent_);
    r.terms_ = terms_;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
}

Polynomial Polynomial::operator-() const {
    Polynomial r(vars_, laurent_);
    for (const auto& [m, c] : terms_) r.terms_.emplace(m, -c);
    return r;
}

Polynomial Polynomial::operator*(const Polynomial& o) const {
    check_compatible(o);
    Polynomial r(vars_, laurent_ || o.laurent_);
    for (const auto& [m1, c1] : terms_)
        for (const auto& [m2, c2] : o.terms_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

Polynomial Polynomial::operator*(const Rational& c) const {
    Polynomial r(vars_, laurent_);
    if (c == 0) return r;
    for (const auto& [m, k] : terms_) r.terms_.emplace(m, k * c);
    return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
    if (vars_ != o.vars_ && !(vars_ && o.vars_ && vars_->names == o.vars_->names)) return false;
    return terms_ == o.terms_;
}

Polynomial Polynomial::pow(unsigned n) const {
    Polynomial r = constant(vars_, 1, laurent_);
    Polynomial base = *this;
    while (n) {
        if (n & 1u) r = r * base;
        base = n > 1 ? base * base : base;
        n >>= 1u;
    }
    return r;
}

Polynomial Polynomial::diff(int var) const {
    if (var < 0 || static_cast<std::size_t>(var) >= vars_->size())
        throw std::invalid_argument("variable index out of range");
    Polynomial r(vars_, laurent_);
    for (const auto& [m, c] : terms_) {
        if (m.e[var] == 0) continue;
        Monomial n = m;
        n.e[var] -= 1;
        r.add_term(n, c * Rational(m.e[var]));
    }
    return r;
}

Polynomial Polynomial::eval(const std::map<int, Rational>& assignment) const {
    Polynomial r(vars_, laurent_);
    for (const auto& [m, c] : terms_) {
        Rational k = c;
        Monomial n = m;
        for (const auto& [var, val] : assignment) {
            int ex = n.e[var];
            if (ex == 0) continue;
            n.e[var] = 0;
            if (val == 0) {
                if (ex < 0) throw LaurentPoleError();
                k = 0;
                break;
            }
            Rational pw = 1;
            Rational base = ex > 0 ? val : Rational(1) / val;
            for (int i = 0; i < (ex > 0 ? ex : -ex); ++i) pw *= base;
            k *= pw;
        }
        r.add_term(n, k);
    }
    return r;
}

std::string Polynomial::str() const {
    if (terms_.empty()) return "0";
    std::ostringstream out;
    bool first = true;
    // Leading term first.
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const Monomial& m = it->first;
        Rational c = it->second;
        bool neg = c < 0;
        if (first) {
            if (neg) out << "-";
        } else {
            out << (neg ? " - " : " + ");
        }
        if (neg) c = -c;
        std::string varpart;
        for (std::size_t i = 0; i < m.e.size(); ++i) {
            if (m.e[i] == 0) continue;
            if (!varpart.empty()) varpart += "*";
            varpart += vars_->names[i];
            if (m.e[i] != 1) varpart += "^" + std::to_string(m.e[i]);
        }
        if (varpart.empty()) {
            out << rat_str(c);
        } else {
            if (c != 1) out << rat_str(c) << "*";
            out << varpart;
        }
        first = false;
    }
    return out.str();
}

namespace {

struct Lexer {
    const std::string& s;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eof() {
        skip_ws();
        return pos >= s.size();
    }
    char peek() {
        skip_ws();
        return pos < s.size() ? s[pos] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    std::string number() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (accept('/')) {
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        }
        return s.substr(start, pos - start);
    }
    std::string ident() {
        skip_ws();
        std::size_t start = pos;
        while (pos < s.size() &&
               (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_'))
            ++pos;
        return s.substr(start, pos - start);
    }
    int integer() {
        skip_ws();
        bool neg = accept('-');
        std::size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (start == pos) throw std::invalid_argument("expected integer in polynomial text");
        int v = std::stoi(s.substr(start, pos - start));
        return neg ? -v : v;
    }
};

}  // namespace

Polynomial Polynomial::parse(const VarTablePtr& vars, const std::string& text, bool laurent) {
    Polynomial result(vars, laurent);
    Lexer lx{text};
    if (lx.eof()) throw std::invalid_argument("empty polynomial text");
    bool first = true;
    while (!lx.eof()) {
        bool neg = false;
        if (lx.accept('-'))
            neg = true;
        else if (!first && !lx.accept('+'))
            throw std::invalid_argument("expected '+' or '-' in polynomial text");
        first = false;

        Rational coef = 1;
        Monomial m(vars->size());
        bool expect_factor = true;
        while (expect_factor) {
            char c = lx.peek();
            if (std::isdigit(static_cast<unsigned char>(c))) {
                coef *= rat_parse(lx.number());
            } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                std::string name = lx.ident();
                int idx = vars->index_of(name);
                if (idx < 0) throw std::invalid_argument("unknown variable '" + name + "'");
                int ex = 1;
                if (lx.accept('^')) ex = lx.integer();
                m.e[idx] += ex;
            } else {
                throw std::invalid_argument("unexpected character in polynomial text");
            }
            expect_factor = lx.accept('*');
        }
        result.add_term(m, neg ? -coef : coef);
    }
    return result;
}

}  // namespace cuspfrob
