#ifndef SPECSUM_POLYNOMIAL_HPP
#define SPECSUM_POLYNOMIAL_HPP

// Exact-coefficient polynomials in one variable, used for the moment
// combinatorics (weight and eigenvalue-map polynomials) and for symbol data.

#include "specsum/common.hpp"

#include <initializer_list>
#include <sstream>

namespace specsum {

class RationalPolynomial {
public:
    RationalPolynomial() = default;

    // Coefficients in ascending order: c0 + c1 x + c2 x^2 + ...
    explicit RationalPolynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) {
        trim();
    }
    RationalPolynomial(std::initializer_list<Rational> ascending)
        : c_(ascending.begin(), ascending.end()) {
        trim();
    }

    static RationalPolynomial constant(const Rational& v) { return RationalPolynomial({v}); }
    static RationalPolynomial x() { return RationalPolynomial({Rational(0), Rational(1)}); }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? -1 : static_cast<int>(c_.size()) - 1; }

    Rational coeff(int k) const {
        if (k < 0 || k >= static_cast<int>(c_.size())) return 0;
        return c_[static_cast<std::size_t>(k)];
    }

    const std::vector<Rational>& coefficients() const { return c_; }

    Rational operator()(const Rational& x) const {
        Rational acc = 0;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
        return acc;
    }

    RationalPolynomial operator+(const RationalPolynomial& o) const {
        std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] += o.c_[i];
        return RationalPolynomial(std::move(out));
    }

    RationalPolynomial operator-(const RationalPolynomial& o) const {
        std::vector<Rational> out(std::max(c_.size(), o.c_.size()), Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i) out[i] += c_[i];
        for (std::size_t i = 0; i < o.c_.size(); ++i) out[i] -= o.c_[i];
        return RationalPolynomial(std::move(out));
    }

    RationalPolynomial operator*(const RationalPolynomial& o) const {
        if (is_zero() || o.is_zero()) return RationalPolynomial();
        std::vector<Rational> out(c_.size() + o.c_.size() - 1, Rational(0));
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < o.c_.size(); ++j) out[i + j] += c_[i] * o.c_[j];
        return RationalPolynomial(std::move(out));
    }

    RationalPolynomial operator*(const Rational& s) const {
        std::vector<Rational> out = c_;
        for (auto& v : out) v *= s;
        return RationalPolynomial(std::move(out));
    }

    RationalPolynomial pow(int e) const {
        if (e < 0) throw std::domain_error("RationalPolynomial::pow: negative exponent");
        RationalPolynomial out = constant(1);
        RationalPolynomial base = *this;
        while (e > 0) {
            if (e & 1) out = out * base;
            base = base * base;
            e >>= 1;
        }
        return out;
    }

    // Substitute the inner polynomial for the variable: (this o inner)(x).
    RationalPolynomial compose(const RationalPolynomial& inner) const {
        RationalPolynomial acc;
        for (auto it = c_.rbegin(); it != c_.rend(); ++it)
            acc = acc * inner + constant(*it);
        return acc;
    }

    // p(x + c), via composition with the shifted variable.
    RationalPolynomial shift(const Rational& c) const {
        return compose(RationalPolynomial({c, Rational(1)}));
    }

    std::string str(const std::string& var = "x") const {
        if (is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (int k = degree(); k >= 0; --k) {
            const Rational& v = c_[static_cast<std::size_t>(k)];
            if (v == 0) continue;
            if (!first) os << (v > 0 ? " + " : " - ");
            else if (v < 0) os << "-";
            Rational a = abs(v);
            if (a != 1 || k == 0) os << a.str();
            if (k >= 1) {
                if (a != 1) os << "*";
                os << var;
                if (k > 1) os << "^" << k;
            }
            first = false;
        }
        return os.str();
    }

private:
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }

    std::vector<Rational> c_;
};

}  // namespace specsum

#endif  // SPECSUM_POLYNOMIAL_HPP
