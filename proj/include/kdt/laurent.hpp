#pragma once

#include <cstdint>
#include <map>
#include <sstream>
#include <string>

namespace kdt {

/// Integer Laurent polynomial in one variable A (exponents may be negative).
/// All arithmetic is exact; zero coefficients are never stored.
class LaurentPolynomial {
public:
    using Coeff = std::int64_t;

    LaurentPolynomial() = default;

    static LaurentPolynomial zero() { return {}; }
    static LaurentPolynomial one() { return monomial(0, 1); }

    static LaurentPolynomial monomial(int exp, Coeff c) {
        LaurentPolynomial p;
        if (c != 0) p.terms_[exp] = c;
        return p;
    }

    /// The loop value delta = -A^2 - A^-2.
    static LaurentPolynomial loop_value() {
        LaurentPolynomial p;
        p.terms_[2] = -1;
        p.terms_[-2] = -1;
        return p;
    }

    static LaurentPolynomial loop_value_pow(unsigned k) {
        LaurentPolynomial r = one();
        LaurentPolynomial d = loop_value();
        while (k) {
            if (k & 1) r *= d;
            d = (k >>= 1) ? d * d : d;
        }
        return r;
    }

    bool is_zero() const { return terms_.empty(); }

    Coeff coeff(int exp) const {
        auto it = terms_.find(exp);
        return it == terms_.end() ? 0 : it->second;
    }

    const std::map<int, Coeff>& terms() const { return terms_; }

    int min_exp() const { return terms_.empty() ? 0 : terms_.begin()->first; }
    int max_exp() const { return terms_.empty() ? 0 : terms_.rbegin()->first; }

    /// Width of the exponent range (0 for the zero polynomial).
    int span() const { return terms_.empty() ? 0 : max_exp() - min_exp(); }

    LaurentPolynomial& operator+=(const LaurentPolynomial& o) {
        for (auto& [e, c] : o.terms_) add_term(e, c);
        return *this;
    }
    LaurentPolynomial& operator-=(const LaurentPolynomial& o) {
        for (auto& [e, c] : o.terms_) add_term(e, -c);
        return *this;
    }
    friend LaurentPolynomial operator+(LaurentPolynomial a, const LaurentPolynomial& b) {
        a += b;
        return a;
    }
    friend LaurentPolynomial operator-(LaurentPolynomial a, const LaurentPolynomial& b) {
        a -= b;
        return a;
    }

    friend LaurentPolynomial operator*(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        LaurentPolynomial r;
        for (auto& [ea, ca] : a.terms_)
            for (auto& [eb, cb] : b.terms_) r.add_term(ea + eb, ca * cb);
        return r;
    }
    LaurentPolynomial& operator*=(const LaurentPolynomial& o) {
        *this = *this * o;
        return *this;
    }

    LaurentPolynomial operator-() const {
        LaurentPolynomial r;
        for (auto& [e, c] : terms_) r.terms_[e] = -c;
        return r;
    }

    void add_term(int exp, Coeff c) {
        if (c == 0) return;
        auto it = terms_.find(exp);
        if (it == terms_.end()) {
            terms_[exp] = c;
        } else if ((it->second += c) == 0) {
            terms_.erase(it);
        }
    }

    /// Substitute A -> A^-1 (negates every exponent).
    LaurentPolynomial invert_variable() const {
        LaurentPolynomial r;
        for (auto& [e, c] : terms_) r.terms_[-e] = c;
        return r;
    }

    friend bool operator==(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.terms_ == b.terms_;
    }
    friend bool operator!=(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return !(a == b);
    }
    friend bool operator<(const LaurentPolynomial& a, const LaurentPolynomial& b) {
        return a.terms_ < b.terms_;
    }

    /// Sorted "exponent:coefficient" pairs, e.g. "-7:1 -3:-1 5:-1"; "0" if zero.
    std::string to_string() const {
        if (terms_.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (auto& [e, c] : terms_) {
            if (!first) os << ' ';
            os << e << ':' << c;
            first = false;
        }
        return os.str();
    }

private:
    std::map<int, Coeff> terms_;
};

}  // namespace kdt
