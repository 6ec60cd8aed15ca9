#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "cuspfrob/rational.hpp"

namespace cuspfrob {

struct LaurentPoleError : std::domain_error {
    LaurentPoleError() : std::domain_error("laurent pole") {}
};

// Variable universe for one polynomial context. Index order is the global
// monomial-order variable order (later index = larger variable).
struct VarTable {
    std::vector<std::string> names;

    std::size_t size() const { return names.size(); }
    int index_of(const std::string& name) const;
};

using VarTablePtr = std::shared_ptr<const VarTable>;

VarTablePtr make_vars(std::vector<std::string> names);

// Exponent vector, dense over the context's variable table. Negative entries
// are legal only inside Laurent-flagged polynomials.
struct Monomial {
    std::vector<int> e;

    explicit Monomial(std::size_t nvars = 0) : e(nvars, 0) {}

    int degree() const {
        int d = 0;
        for (int x : e) d += x;
        return d;
    }
    bool is_constant() const {
        for (int x : e)
            if (x != 0) return false;
        return true;
    }
    bool has_negative() const {
        for (int x : e)
            if (x < 0) return true;
        return false;
    }
    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] += o.e[i];
        return r;
    }
    bool divides(const Monomial& o) const {
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] > o.e[i]) return false;
        return true;
    }
    Monomial quotient(const Monomial& o) const {  // *this / o
        Monomial r = *this;
        for (std::size_t i = 0; i < e.size(); ++i) r.e[i] -= o.e[i];
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (std::size_t i = 0; i < r.e.size(); ++i)
            if (b.e[i] > r.e[i]) r.e[i] = b.e[i];
        return r;
    }
    bool operator==(const Monomial& o) const { return e == o.e; }
};

// Graded lexicographic order: total degree first; ties broken at the largest
// variable index where the exponents differ (higher variables dominate).
struct GrlexLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        int da = a.degree(), db = b.degree();
        if (da != db) return da < db;
        for (std::size_t i = a.e.size(); i-- > 0;)
            if (a.e[i] != b.e[i]) return a.e[i] < b.e[i];
        return false;
    }
};

class Polynomial {
public:
    using TermMap = std::map<Monomial, Rational, GrlexLess>;

    Polynomial() = default;
    explicit Polynomial(VarTablePtr vars, bool laurent = false)
        : vars_(std::move(vars)), laurent_(laurent) {}

    static Polynomial constant(VarTablePtr vars, const Rational& c, bool laurent = false);
    static Polynomial variable(VarTablePtr vars, int var, int exp = 1, bool laurent = false);
    static Polynomial term(VarTablePtr vars, const Monomial& m, const Rational& c,
                           bool laurent = false);

    const VarTablePtr& vars() const { return vars_; }
    bool laurent() const { return laurent_; }
    const TermMap& terms() const { return terms_; }
    std::size_t term_count() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    // Adds c * m, erasing the entry if the coefficient cancels.
    void add_term(const Monomial& m, const Rational& c);

    Rational coeff(const Monomial& m) const;
    Rational constant_term() const;

    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator-() const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    bool operator==(const Polynomial& o) const;

    Polynomial pow(unsigned n) const;
    Polynomial diff(int var) const;

    // Partial evaluation; unassigned variables stay symbolic. Throws
    // LaurentPoleError when a variable carrying a negative exponent is sent
    // to zero.
    Polynomial eval(const std::map<int, Rational>& assignment) const;

    std::string str() const;
    static Polynomial parse(const VarTablePtr& vars, const std::string& text,
                            bool laurent = false);

private:
    void check_compatible(const Polynomial& o) const;
    void check_exponents() const;

    VarTablePtr vars_;
    bool laurent_ = false;
    TermMap terms_;
};

}  // namespace cuspfrob
