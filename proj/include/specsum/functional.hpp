#ifndef SPECSUM_FUNCTIONAL_HPP
#define SPECSUM_FUNCTIONAL_HPP

// Rapidly decaying test functionals g on [0, infinity): evaluation,
// derivatives at zero, and finite-part integrals Fp int_0^inf x^a g(x) dx.
// The two canonical functionals, exp(-x) and exp(-x^2), carry exact rational
// derivative data and closed-form finite parts; custom functionals fall back
// to quadrature where possible.

#include "specsum/common.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>
#include <limits>
#include <memory>
#include <optional>

namespace specsum {

inline constexpr double euler_gamma = 0.577215664901532860606512090082402431;

namespace detail {

// Fp Gamma(1 - j) for j = 1, 2, ...: the finite part of int_0^inf x^{-j} e^{-x} dx
// once the divergent powers of the cutoff and the log term are dropped.
// Expanding int_eps^inf by parts gives (-1)^{j-1} (H_{j-1} - gamma) / (j-1)!.
inline double fp_gamma_nonpos(int j) {
    double h = 0.0;
    for (int i = 1; i < j; ++i) h += 1.0 / i;
    double v = (h - euler_gamma) / to_double(factorial_r(j - 1));
    return (j % 2 == 1) ? v : -v;
}

}  // namespace detail

class TestFunctional {
public:
    using Eval = std::function<double(double)>;
    // m-th derivative at 0.
    using Deriv = std::function<double(int)>;
    using DerivExact = std::function<Rational(int)>;
    // Fp int_0^inf x^alpha g dx for a caller-supplied closed form.
    using FpEval = std::function<double(double)>;
    using FpExact = std::function<std::optional<Rational>(const Rational&)>;

    static TestFunctional exponential() {
        TestFunctional g;
        g.name_ = "exp";
        g.eval_ = [](double x) { return std::exp(-x); };
        g.deriv_exact_ = [](int m) { return (m % 2 == 0) ? Rational(1) : Rational(-1); };
        g.max_order_ = std::numeric_limits<int>::max();
        g.fp_ = [](double alpha) {
            double nearest = std::round(alpha);
            if (alpha < -0.5 && std::abs(alpha - nearest) < 1e-13)
                return detail::fp_gamma_nonpos(static_cast<int>(-nearest));
            return std::tgamma(alpha + 1.0);
        };
        g.fp_exact_ = [](const Rational& alpha) -> std::optional<Rational> {
            if (denominator(alpha) == 1 && alpha >= 0)
                return factorial_r(numerator(alpha).convert_to<int>());
            return std::nullopt;
        };
        return g;
    }

    static TestFunctional gaussian() {
        TestFunctional g;
        g.name_ = "gauss";
        g.eval_ = [](double x) { return std::exp(-x * x); };
        g.deriv_exact_ = [](int m) -> Rational {
            if (m % 2 != 0) return 0;
            // g(x) = sum (-1)^k x^{2k} / k!, so g^{(2k)}(0) = (-1)^k (2k)!/k!.
            int k = m / 2;
            Rational v = factorial_r(m) / factorial_r(k);
            return (k % 2 == 0) ? v : -v;
        };
        g.max_order_ = std::numeric_limits<int>::max();
        g.fp_ = [](double alpha) {
            // u = x^2 turns the integral into (1/2) Gamma((alpha+1)/2); the
            // substitution is finite-part clean except when (alpha+1)/2 hits
            // a non-positive integer, where the dropped log changes meaning.
            double half = (alpha + 1.0) / 2.0;
            if (half < 0.5 && std::abs(half - std::round(half)) < 1e-13)
                throw CapabilityError(
                    "gaussian finite part at negative odd exponent: use pseudofunction_eval");
            return 0.5 * std::tgamma(half);
        };
        g.fp_exact_ = [](const Rational& alpha) -> std::optional<Rational> {
            // (1/2) Gamma((alpha+1)/2) is rational exactly at odd alpha >= 1.
            if (denominator(alpha) == 1 && alpha >= 1 && numerator(alpha) % 2 == 1) {
                Rational half = (alpha - 1) / 2;
                return factorial_r(numerator(half).convert_to<int>()) / 2;
            }
            return std::nullopt;
        };
        return g;
    }

    static TestFunctional zero() {
        TestFunctional g;
        g.name_ = "zero";
        g.eval_ = [](double) { return 0.0; };
        g.deriv_exact_ = [](int) { return Rational(0); };
        g.max_order_ = std::numeric_limits<int>::max();
        g.fp_ = [](double) { return 0.0; };
        g.fp_exact_ = [](const Rational&) { return std::optional<Rational>(Rational(0)); };
        return g;
    }

    static TestFunctional custom(std::string name, Eval eval, Deriv derivs_at_zero = nullptr,
                                 int max_order = -1, FpEval fp = nullptr) {
        TestFunctional g;
        g.name_ = std::move(name);
        g.eval_ = std::move(eval);
        g.deriv_ = std::move(derivs_at_zero);
        g.max_order_ = g.deriv_ ? (max_order < 0 ? std::numeric_limits<int>::max() : max_order) : -1;
        g.fp_ = std::move(fp);
        return g;
    }

    const std::string& name() const { return name_; }

    double operator()(double x) const { return eval_(x); }

    int max_deriv_order() const { return max_order_; }

    double deriv0(int m) const {
        if (m < 0) throw std::domain_error("deriv0: negative order");
        if (deriv_exact_) return to_double(deriv_exact_(m));
        if (deriv_ && m <= max_order_) return deriv_(m);
        throw CapabilityError("functional '" + name_ + "' has no derivative of order " +
                              std::to_string(m) + " at 0");
    }

    std::optional<Rational> deriv0_exact(int m) const {
        if (deriv_exact_) return deriv_exact_(m);
        return std::nullopt;
    }

    // Fp int_0^inf x^alpha g(x) dx. Negative integer alpha needs the
    // pseudofunction machinery (the dropped log must be tracked), so plain
    // functionals reject it here.
    double fp_integral(double alpha) const {
        if (fp_) return fp_(alpha);
        return fp_integral_quadrature(alpha);
    }

    // Exact rational value of the same integral, when one exists.
    std::optional<Rational> fp_integral_exact(const Rational& alpha) const {
        if (fp_exact_) return fp_exact_(alpha);
        return std::nullopt;
    }

private:
    double fp_integral_quadrature(double alpha) const {
        double nearest = std::round(alpha);
        if (alpha < -0.5 && std::abs(alpha - nearest) < 1e-13)
            throw CapabilityError("finite part at negative integer exponent for '" + name_ +
                                  "': use pseudofunction_eval");
        boost::math::quadrature::exp_sinh<double> es;
        double tail_err = 0.0;
        double tail = es.integrate(
            [&](double u) { return eval_(1.0 + u) * std::pow(1.0 + u, alpha); }, 1e-12, &tail_err);

        boost::math::quadrature::tanh_sinh<double> ts;
        double head = 0.0;
        if (alpha > -1.0) {
            head = ts.integrate([&](double x) { return eval_(x) * std::pow(x, alpha); }, 0.0, 1.0);
        } else {
            // Subtract enough Taylor terms that the remainder is integrable,
            // then put back each subtracted power via its exact finite part
            // 1/(alpha + k + 1); non-integer alpha keeps every denominator
            // away from zero.
            int s = static_cast<int>(std::floor(-alpha));
            std::vector<double> d(static_cast<std::size_t>(s));
            for (int k = 0; k < s; ++k) d[static_cast<std::size_t>(k)] = deriv0(k);
            head = ts.integrate(
                [&](double x) {
                    double taylor = 0.0, xk = 1.0, fact = 1.0;
                    for (int k = 0; k < s; ++k) {
                        taylor += d[static_cast<std::size_t>(k)] / fact * xk;
                        xk *= x;
                        fact *= (k + 1);
                    }
                    return (eval_(x) - taylor) * std::pow(x, alpha);
                },
                0.0, 1.0);
            double fact = 1.0;
            for (int k = 0; k < s; ++k) {
                head += d[static_cast<std::size_t>(k)] / fact / (alpha + k + 1.0);
                fact *= (k + 1);
            }
        }
        return head + tail;
    }

    std::string name_;
    Eval eval_;
    Deriv deriv_;
    DerivExact deriv_exact_;
    FpEval fp_;
    FpExact fp_exact_;
    int max_order_ = -1;
};

}  // namespace specsum

#endif  // SPECSUM_FUNCTIONAL_HPP
