#ifndef SPECSUM_ZETA_HPP
#define SPECSUM_ZETA_HPP

// Riemann zeta values three ways:
//
//   * exact rationals at non-positive integers via Bernoulli numbers,
//   * the Cesaro route zeta(-alpha) = lim_X [ sum_{n<=X} n^alpha
//       - Fp int_0^X t^alpha dt ] evaluated through Riesz smoothing of
//       order k, with the integral replaced by the exact finite-part
//       primitive (including its log terms at negative integer alpha),
//   * a tail-corrected convergent sum for arguments s > 1.
//
// Also the sampled-series expansion
//
//   sum_{n>=1} g(n eps) ~ (1/eps) int_0^inf g
//                         + sum_m zeta(-m) g^(m)(0) eps^m / m!
//
// and its n-dimensional lattice counterpart, where every zeta correction
// cancels and the error is smaller than any power of eps.

#include "specsum/common.hpp"
#include "specsum/functional.hpp"
#include "specsum/lattice.hpp"
#include "specsum/summability.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <optional>

namespace specsum {

// B_0 = 1, B_1 = -1/2, B_2 = 1/6, ... by the defining recurrence
// sum_{j<=m} C(m+1, j) B_j = 0, memoized.
inline Rational bernoulli(int m) {
    if (m < 0) throw std::domain_error("bernoulli: negative index");
    static std::vector<Rational> cache{Rational(1)};
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    while (static_cast<int>(cache.size()) <= m) {
        int k = static_cast<int>(cache.size());
        Rational acc = 0;
        for (int j = 0; j < k; ++j) acc += binomial_r(k + 1, j) * cache[static_cast<std::size_t>(j)];
        cache.push_back(-acc / (k + 1));
    }
    return cache[static_cast<std::size_t>(m)];
}

// zeta(-m) for m >= 0: zeta(0) = -1/2, else -B_{m+1}/(m+1); exactly zero at
// even negative arguments.
inline Rational zeta_neg_int(int m) {
    if (m < 0) throw std::domain_error("zeta_neg_int: m must be >= 0");
    if (m == 0) return Rational(-1, 2);
    return -bernoulli(m + 1) / (m + 1);
}

// zeta(s) for s > 1 by direct summation with an Euler-Maclaurin tail.
inline double zeta_convergent(double s, long long N = 1000000) {
    if (!(s > 1.0)) throw std::domain_error("zeta_convergent: argument must exceed 1");
    double head = blocked_sum(static_cast<std::size_t>(N), [&](std::size_t i) {
        return std::pow(static_cast<double>(i + 1), -s);
    });
    double Nd = static_cast<double>(N);
    double tail = std::pow(Nd, 1.0 - s) / (s - 1.0) - 0.5 * std::pow(Nd, -s) +
                  s / 12.0 * std::pow(Nd, -s - 1.0);
    return head + tail;
}

namespace detail {

// Terms c * x^beta * (log x)^p. A single pure power only ever crosses the
// beta = -1 line once under repeated integration, so p stays <= 1.
struct PowerLogTerm {
    double c;
    double beta;
    int p;
};

inline std::vector<PowerLogTerm> fp_primitive(const std::vector<PowerLogTerm>& terms) {
    std::vector<PowerLogTerm> out;
    for (const auto& t : terms) {
        if (t.p == 0) {
            if (std::abs(t.beta + 1.0) < 1e-12) {
                out.push_back({t.c, 0.0, 1});  // int x^{-1} = log x
            } else {
                out.push_back({t.c / (t.beta + 1.0), t.beta + 1.0, 0});
            }
        } else {  // p == 1
            if (std::abs(t.beta + 1.0) < 1e-12)
                throw std::domain_error("fp_primitive: log^2 term encountered");
            // int x^beta log x = x^{beta+1} log x/(beta+1) - x^{beta+1}/(beta+1)^2
            double b1 = t.beta + 1.0;
            out.push_back({t.c / b1, b1, 1});
            out.push_back({-t.c / (b1 * b1), b1, 0});
        }
    }
    return out;
}

inline double eval_terms(const std::vector<PowerLogTerm>& terms, double x) {
    double acc = 0.0;
    double lx = std::log(x);
    for (const auto& t : terms) acc += t.c * std::pow(x, t.beta) * (t.p ? lx : 1.0);
    return acc;
}

// The single-cutoff estimator: order-k Riesz sum of n^alpha minus the
// finite-part primitive correction k! P_{k+1}(X) / X^k.
inline double zeta_estimator(double alpha, int k, double X) {
    long long top = static_cast<long long>(std::floor(X + 1e-9));
    double sum = blocked_sum(static_cast<std::size_t>(top), [&](std::size_t i) {
        double n = static_cast<double>(i + 1);
        return std::pow(n, alpha) * std::pow(1.0 - n / X, k);
    });
    std::vector<PowerLogTerm> prim{{1.0, alpha, 0}};
    for (int i = 0; i < k + 1; ++i) prim = fp_primitive(prim);
    double corr = to_double(factorial_r(k)) / std::pow(X, k) * eval_terms(prim, X);
    return sum - corr;
}

inline double zp0_estimator(int k, double X) {
    long long top = static_cast<long long>(std::floor(X + 1e-9));
    double sum = blocked_sum(static_cast<std::size_t>(top), [&](std::size_t i) {
        double n = static_cast<double>(i + 1);
        return std::log(n) * std::pow(1.0 - n / X, k);
    });
    // (k+1)-fold primitive of log x is x^{k+1} (log x - H_{k+1}) / (k+1)!.
    double H = 0.0;
    for (int i = 1; i <= k + 1; ++i) H += 1.0 / i;
    double corr = X * (std::log(X) - H) / (k + 1);
    return -(sum - corr);
}

}  // namespace detail

// Ladder report for the Cesaro zeta estimate at cutoffs {X/4, X/2, X}.
inline LadderEstimate zeta_via_cesaro_report(double alpha, int k, double X, double tol = 1e-3) {
    if (alpha == -1.0) throw std::domain_error("zeta_via_cesaro: alpha = -1 (the pole of zeta)");
    if (k < 1) throw std::domain_error("zeta_via_cesaro: order must be >= 1");
    if (!(X >= 100.0)) throw std::domain_error("zeta_via_cesaro: cutoff too small (need X >= 100)");
    return detail::ladder_from([&](double x) { return detail::zeta_estimator(alpha, k, x); }, X,
                               tol);
}

// zeta(-alpha) by the Cesaro construction. Throws NonConvergence when the
// ladder fails to stabilize within tol.
inline double zeta_via_cesaro(double alpha, int k, double X, double tol = 1e-3) {
    LadderEstimate lad = zeta_via_cesaro_report(alpha, k, X, tol);
    if (!lad.converged)
        throw NonConvergence("zeta_via_cesaro: cutoff ladder did not stabilize", lad.spread, tol);
    return lad.value;
}

inline LadderEstimate zeta_prime_zero_report(double X, int k, double tol = 1e-3) {
    if (k < 1) throw std::domain_error("zeta_prime_zero: order must be >= 1");
    if (!(X >= 1000.0)) throw std::domain_error("zeta_prime_zero: cutoff too small (need X >= 1e3)");
    return detail::ladder_from([&](double x) { return detail::zp0_estimator(k, x); }, X, tol);
}

// zeta'(0) = -log(2 pi)/2 by the same ladder.
inline double zeta_prime_zero(double X, int k, double tol = 1e-3) {
    LadderEstimate lad = zeta_prime_zero_report(X, k, tol);
    if (!lad.converged)
        throw NonConvergence("zeta_prime_zero: cutoff ladder did not stabilize", lad.spread, tol);
    return lad.value;
}

enum class ZetaMethod { cesaro, bernoulli_closed_form, convergent_sum };

struct ZetaValue {
    double argument = 0.0;
    double value = 0.0;
    std::optional<Rational> exact;
    ZetaMethod method = ZetaMethod::cesaro;
};

// Exact sum of the truncated sampled-series expansion.
inline double sampling_expansion(const TestFunctional& g, double eps, int order) {
    if (!(eps > 0)) throw std::domain_error("sampling_expansion: eps must be positive");
    if (order < 0) throw std::domain_error("sampling_expansion: negative order");
    double acc = g.fp_integral(0.0) / eps;
    double epsm = 1.0, fact = 1.0;
    for (int m = 0; m <= order; ++m) {
        acc += to_double(zeta_neg_int(m)) * g.deriv0(m) * epsm / fact;
        epsm *= eps;
        fact *= (m + 1);
    }
    return acc;
}

// Left-hand side by direct summation, truncated once terms are negligible.
inline double sampling_sum(const TestFunctional& g, double eps) {
    if (!(eps > 0)) throw std::domain_error("sampling_sum: eps must be positive");
    long double acc = 0.0L;
    int tiny_run = 0;
    for (long long n = 1; n <= 200000000LL; ++n) {
        double v = g(static_cast<double>(n) * eps);
        acc += v;
        if (std::abs(v) < 1e-20 * (1.0 + std::abs(static_cast<double>(acc)))) {
            if (++tiny_run >= 5) return static_cast<double>(acc);
        } else {
            tiny_run = 0;
        }
    }
    throw NumericalError("sampling_sum: series did not decay within the term budget", 1e-20);
}

namespace detail {

// Smallest q with |g(q eps^2)| below the drop threshold, by geometric probe
// then bisection; used to truncate radial lattice sums.
inline long long lattice_q_cut(const TestFunctional& g, double eps) {
    double e2 = eps * eps;
    double hi = 1.0;
    while (std::abs(g(hi * e2)) > 1e-22 && hi < 4.0e6) hi *= 2.0;
    if (std::abs(g(hi * e2)) > 1e-22)
        throw NumericalError("lattice sum: functional does not decay within the probe range",
                             std::abs(g(hi * e2)));
    double lo = hi / 2.0;
    for (int it = 0; it < 60 && hi - lo > 0.5; ++it) {
        double mid = 0.5 * (lo + hi);
        (std::abs(g(mid * e2)) > 1e-22 ? lo : hi) = mid;
    }
    return static_cast<long long>(std::ceil(hi)) + 1;
}

}  // namespace detail

// sum_{k in Z^n} g(|k eps|^2) for a radial profile g of the squared norm.
inline double lattice_sampling(const TestFunctional& g, double eps, int n) {
    if (!(eps > 0)) throw std::domain_error("lattice_sampling: eps must be positive");
    if (n < 1) throw std::domain_error("lattice_sampling: dimension must be >= 1");
    long long q_cut = detail::lattice_q_cut(g, eps);
    std::vector<long long> r = square_rep_counts(n, q_cut);
    double e2 = eps * eps;
    double total = blocked_sum(static_cast<std::size_t>(q_cut) + 1, [&](std::size_t q) {
        long long m = r[q];
        return m == 0 ? 0.0 : static_cast<double>(m) * g(static_cast<double>(q) * e2);
    });
    // Boundary-shell audit: the outermost decade must be negligible.
    long long lo = q_cut - std::max<long long>(q_cut / 10, 1);
    long double shell = 0.0L;
    for (long long q = lo; q <= q_cut; ++q)
        shell += static_cast<long double>(r[static_cast<std::size_t>(q)]) *
                 g(static_cast<double>(q) * e2);
    if (std::abs(static_cast<double>(shell)) > 1e-12 * std::max(1.0, std::abs(total)))
        throw NumericalError("lattice_sampling: truncation radius insufficient",
                             std::abs(static_cast<double>(shell)));
    return total;
}

// eps^{-n} int_{R^n} g(|x|^2) d^n x = eps^{-n} (Omega_n / 2) int_0^inf
// u^{n/2 - 1} g(u) du, via the functional's radial integral.
inline double lattice_integral(const TestFunctional& g, double eps, int n) {
    if (!(eps > 0)) throw std::domain_error("lattice_integral: eps must be positive");
    if (n < 1) throw std::domain_error("lattice_integral: dimension must be >= 1");
    double omega = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
    return std::pow(eps, -n) * 0.5 * omega * g.fp_integral(n / 2.0 - 1.0);
}

}  // namespace specsum

#endif  // SPECSUM_ZETA_HPP
