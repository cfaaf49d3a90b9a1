#ifndef SPECSUM_REVERSION_HPP
#define SPECSUM_REVERSION_HPP

// Lagrange-Buermann extraction of spectral-density coefficients from
// first-order elliptic symbols p(z) = p1 z + p0 + p-1/z + ..., plus the
// small closed-form constants that accompany them: sphere areas, the
// q-coefficient combinations, the pointwise a_2 formula for generalized
// Laplacians, and the heat-coefficient relation b_{2k} = 2^k a_{2k} /
// (Omega_n (n-2)(n-4)...(n-2k)).
//
// Writing w = 1/z, the symbol is a Laurent series with leading exponent -1
// and ellipticity means its leading coefficient p1 is positive. The
// density coefficient c_j is the coefficient of zeta^n in p(1/zeta)^{j-n};
// normalizing p(1/zeta) = p1 zeta^{-1} A(zeta) with A = 1 + b1 zeta + ...
// reduces that to c_j = p1^{j-n} [zeta^j] A^{j-n}, and powers of A come
// from the Miller recurrence in exact rational arithmetic. c_n = 0 falls
// out identically: A^0 = 1 has no zeta^n term.

#include "specsum/common.hpp"

#include <cmath>
#include <limits>

namespace specsum {

// Surface area of the unit sphere S^{n-1} in R^n: Omega_n = 2 pi^{n/2} / Gamma(n/2).
inline double sphere_area(int n) {
    if (n < 1) throw std::domain_error("sphere_area: dimension must be >= 1");
    return 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
}

struct LaurentSeries {
    int leading_exponent = 0;
    std::vector<Rational> coefficients;  // ascending from leading_exponent
    // Highest exponent whose coefficient is known; exponents in between the
    // stored range and truncation_order are exact zeros, beyond it unknown.
    int truncation_order = 0;

    Rational coeff(int exponent) const {
        int i = exponent - leading_exponent;
        if (i < 0 || i >= static_cast<int>(coefficients.size())) {
            if (exponent > truncation_order)
                throw std::length_error("LaurentSeries: coefficient beyond truncation order");
            return 0;
        }
        return coefficients[static_cast<std::size_t>(i)];
    }

    // Exactly specified symbol from descending coefficients p1, p0, p-1, ...
    // in the w = 1/z variable (leading exponent -1); everything past the
    // list is an exact zero.
    static LaurentSeries symbol(const std::vector<Rational>& descending) {
        if (descending.empty()) throw std::invalid_argument("LaurentSeries::symbol: empty symbol");
        LaurentSeries s;
        s.leading_exponent = -1;
        s.coefficients = descending;
        s.truncation_order = std::numeric_limits<int>::max() / 2;
        return s;
    }

    // Same layout, but known only through the given w-exponent.
    static LaurentSeries truncated_symbol(const std::vector<Rational>& descending,
                                          int known_upto) {
        LaurentSeries s;
        s.leading_exponent = -1;
        s.coefficients = descending;
        s.truncation_order = known_upto;
        return s;
    }
};

namespace detail {

// [zeta^m] A(zeta)^p for A = 1 + sum_{k>=1} b_k zeta^k, by the Miller
// recurrence c_m = (1/m) sum_{k=1..m} ((p+1)k - m) b_k c_{m-k}.
inline std::vector<Rational> series_power(const std::vector<Rational>& b, const Rational& p,
                                          int m_max) {
    std::vector<Rational> c(static_cast<std::size_t>(m_max) + 1, Rational(0));
    c[0] = 1;
    for (int m = 1; m <= m_max; ++m) {
        Rational acc = 0;
        for (int k = 1; k <= m; ++k) {
            Rational bk = (k - 1 < static_cast<int>(b.size())) ? b[static_cast<std::size_t>(k - 1)]
                                                               : Rational(0);
            if (bk == 0) continue;
            acc += ((p + 1) * k - m) * bk * c[static_cast<std::size_t>(m - k)];
        }
        c[static_cast<std::size_t>(m)] = acc / m;
    }
    return c;
}

}  // namespace detail

// c_j = [zeta^n] p(1/zeta)^{j-n}.
inline Rational lagrange_burmann_cj(const LaurentSeries& p, int n, int j) {
    if (n < 1) throw std::domain_error("lagrange_burmann_cj: dimension must be >= 1");
    if (j < 0) throw std::domain_error("lagrange_burmann_cj: j must be >= 0");
    if (p.leading_exponent != -1)
        throw std::invalid_argument("lagrange_burmann_cj: symbol must have leading exponent -1");
    Rational p1 = p.coeff(-1);
    if (p1 <= 0)
        throw std::invalid_argument("lagrange_burmann_cj: ellipticity violation (p1 <= 0)");
    // [zeta^j] A^{j-n} needs A through zeta^j, i.e. the symbol through w^{j-1}.
    if (p.truncation_order < j - 1)
        throw std::length_error("lagrange_burmann_cj: symbol truncation order too low for j");
    std::vector<Rational> b(static_cast<std::size_t>(j), Rational(0));
    for (int k = 1; k <= j; ++k) b[static_cast<std::size_t>(k - 1)] = p.coeff(k - 1) / p1;
    std::vector<Rational> a = detail::series_power(b, Rational(j - n), j);
    return pow_r(p1, j - n) * a[static_cast<std::size_t>(j)];
}

struct DensityExpansion {
    int n = 0;
    int d = 1;
    std::vector<Rational> c;  // reversion coefficients c_j
    std::vector<double> a;    // a_j = Omega_n c_j
    double prefactor = 0.0;   // 1/(d (2 pi)^n)

    // Terms prefactor * a_j * lambda^{(n-d-j)/d}, exponents descending by 1/d.
    std::vector<std::pair<double, double>> terms() const {
        std::vector<std::pair<double, double>> out;
        for (std::size_t j = 0; j < a.size(); ++j)
            out.emplace_back(prefactor * a[j],
                             (static_cast<double>(n) - d - static_cast<double>(j)) / d);
        return out;
    }
};

// Spectral-density expansion for a radial constant-coefficient symbol of
// order d built on the first-order profile p.
inline DensityExpansion density_expansion(const LaurentSeries& p, int n, int d, int j_max) {
    if (d < 1) throw std::domain_error("density_expansion: operator order must be >= 1");
    if (j_max < 0) throw std::domain_error("density_expansion: j_max must be >= 0");
    DensityExpansion e;
    e.n = n;
    e.d = d;
    e.prefactor = 1.0 / (d * std::pow(2.0 * M_PI, n));
    double omega = sphere_area(n);
    for (int j = 0; j <= j_max; ++j) {
        Rational cj = lagrange_burmann_cj(p, n, j);
        e.c.push_back(cj);
        e.a.push_back(omega * to_double(cj));
    }
    return e;
}

// q2 = (s2 - s1^2)/2 and q3 = (s3 - 3 s2 s1 + 2 s1^3)/6 from the pointwise
// symbol powers s_m = sigma(H^m); both vanish in the commuting case.
inline std::pair<double, double> q_coefficients(double s1, double s2, double s3) {
    double q2 = 0.5 * (s2 - s1 * s1);
    double q3 = (s3 - 3.0 * s2 * s1 + 2.0 * s1 * s1 * s1) / 6.0;
    return {q2, q3};
}

// a_2(x0) = (n-2) Omega_n / 2 * (R(x0)/6 - C(x0)) for H = -Laplacian + C,
// n >= 3 (in two dimensions this slot is a moment, not a power term).
inline double a2_laplacian(int n, double R, double C) {
    if (n < 3) throw std::invalid_argument("a2_laplacian: requires n >= 3");
    return (n - 2) * sphere_area(n) / 2.0 * (R / 6.0 - C);
}

// b_{2k} = 2^k a_{2k} / (Omega_n (n-2)(n-4)...(n-2k)); the denominator
// vanishes on even-dimensional spaces once 2k reaches n, which is the
// regime where the corresponding term is a moment instead.
inline double b2k_relation(double a2k, int n, int k) {
    if (k < 1) throw std::domain_error("b2k_relation: k must be >= 1");
    double denom = sphere_area(n);
    for (int m = 1; m <= k; ++m) {
        int factor = n - 2 * m;
        if (factor == 0)
            throw PoleError("b2k_relation: (n - " + std::to_string(2 * m) +
                            ") vanishes; the coefficient lives in the moment channel");
        denom *= factor;
    }
    return std::pow(2.0, k) * a2k / denom;
}

}  // namespace specsum

#endif  // SPECSUM_REVERSION_HPP
