#ifndef SPECSUM_COUNTING_HPP
#define SPECSUM_COUNTING_HPP

// Counting functions N(lambda), Riesz-smoothed counting, exact generalized
// moments for sphere Laplacians, Weyl-term predictors, and semiclassical
// phase-space counting integrals.
//
// Riesz smoothing of order k multiplies a pure power lambda^beta in the
// counting function by rho(beta, k) = Gamma(beta+1) k! / Gamma(beta+k+1),
// which is how the smoothed Weyl slopes (lambda/3 -> rho(1,2), lambda/4 ->
// rho(1,3), ...) arise.
//
// The CountingExpansion record keeps the density-level (N') data of the
// large-parameter development: the power terms c_k lambda^{alpha_k}, any
// pseudofunction channels b_j lambda^{-j}, and the generalized moments
// mu_m occupying the delta^(m) slots (in the normalization where the
// delta^(m) coefficient of N'(sigma lambda) is (-1)^m mu_m / (m! sigma^{m+1})).
// The familiar counting-function view and the displayed delta coefficients
// are derived from that data, so the bookkeeping between the two
// conventions lives in exactly one place.

#include "specsum/common.hpp"
#include "specsum/expansion.hpp"
#include "specsum/polynomial.hpp"
#include "specsum/spectra.hpp"
#include "specsum/summability.hpp"
#include "specsum/zeta.hpp"

#include <boost/math/quadrature/tanh_sinh.hpp>

#include <cmath>

namespace specsum {

enum class Side { left, right };

// N(lambda^-) or N(lambda^+), multiplicity-weighted.
inline long long counting_function(const Spectrum& s, double lam, Side side) {
    if (lam > s.horizon)
        throw std::out_of_range("counting_function: lambda beyond the enumeration horizon");
    return s.total_multiplicity_upto(lam, side == Side::right);
}

// N^(k)(lambda) = sum_{lambda_l <= lambda} m_l (1 - lambda_l/lambda)^k.
inline double riesz_counting(const Spectrum& s, CesaroOrder k, double lam) {
    if (k < 0) throw std::domain_error("riesz_counting: negative order");
    if (!(lam > 0)) throw std::domain_error("riesz_counting: lambda must be positive");
    if (lam > s.horizon)
        throw std::out_of_range("riesz_counting: lambda beyond the enumeration horizon");
    if (k == 0) return static_cast<double>(counting_function(s, lam, Side::right));
    long double acc = 0.0L;
    for (const auto& e : s.entries) {
        if (e.eigenvalue > lam) break;
        acc += static_cast<long double>(e.multiplicity) * std::pow(1.0 - e.eigenvalue / lam, k);
    }
    return static_cast<double>(acc);
}

// rho(beta, k) = Gamma(beta+1) k! / Gamma(beta+k+1).
inline double smoothing_factor(double beta, CesaroOrder k) {
    if (!(beta > -1.0)) throw std::domain_error("smoothing_factor: beta must exceed -1");
    if (k < 0) throw std::domain_error("smoothing_factor: negative order");
    return std::exp(std::lgamma(beta + 1.0) + std::lgamma(k + 1.0) - std::lgamma(beta + k + 1.0));
}

// Exact moment <weight(lambda) (sum_l delta(lambda - l) - H), map(lambda)^j>:
// expand weight * map^j in the summation variable u (= lambda + 1 - start,
// so that support points sit at u = 1, 2, ...), then each power u^r
// contributes zeta(-r).
inline Rational generalized_moments(const RationalPolynomial& weight,
                                    const RationalPolynomial& map, int j, int start_index = 1) {
    if (j < 0) throw std::domain_error("generalized_moments: negative moment index");
    if (start_index != 0 && start_index != 1)
        throw std::domain_error("generalized_moments: start index must be 0 or 1");
    RationalPolynomial q = weight * map.pow(j);
    if (start_index == 0) q = q.shift(Rational(-1));  // q(u - 1), support moved to u = 1, 2, ...
    Rational acc = 0;
    for (int r = 0; r <= q.degree(); ++r) acc += q.coeff(r) * zeta_neg_int(r);
    return acc;
}

struct CountingExpansion {
    // N'-level power channel: (c_k, alpha_k), exponents strictly decreasing.
    std::vector<std::pair<Rational, Rational>> density_terms;
    // Pseudofunction channel b_j lambda^{-j}, j = 1..b.size().
    std::vector<Rational> b;
    // Generalized moments mu_0, mu_1, ... in the delta^(m)-slot convention.
    std::vector<Rational> moments;

    // Counting-function view: each density power integrates to
    // c/(alpha+1) lambda^{alpha+1}, and mu_0 supplies the constant term.
    std::vector<std::pair<Rational, Rational>> counting_terms() const {
        std::vector<std::pair<Rational, Rational>> out;
        for (const auto& [c, alpha] : density_terms)
            out.emplace_back(c / (alpha + 1), alpha + 1);
        if (!moments.empty() && moments[0] != 0) out.emplace_back(moments[0], Rational(0));
        return out;
    }

    // Displayed coefficient of delta^(m-1), m = 1, 2, ...: (-1)^m mu_m / m!.
    std::vector<Rational> delta_coefficients() const {
        std::vector<Rational> out;
        for (std::size_t m = 1; m < moments.size(); ++m) {
            Rational v = moments[m] / factorial_r(static_cast<int>(m));
            out.push_back(m % 2 == 1 ? -v : v);
        }
        return out;
    }

    AsymptoticExpansion counting_asymptotics() const {
        AsymptoticExpansion e;
        e.variable = ExpansionVariable::lambda_to_infinity;
        e.sense = Sense{true, 0};
        for (const auto& [c, beta] : counting_terms())
            e.terms.push_back({to_double(c), to_double(beta), 0});
        return e;
    }
};

// The two sphere Laplacians with closed-form moment data: S^2 (weight
// 2 lambda + 1, eigenvalue map lambda^2 + lambda, plus the l = 0 atom in
// the zeroth slot) and S^3 shifted by 1, whose moments all vanish.
inline CountingExpansion counting_expansion_sphere(int n) {
    CountingExpansion e;
    if (n == 2) {
        e.density_terms = {{Rational(1), Rational(0)}};
        RationalPolynomial weight{Rational(1), Rational(2)};          // 2 lambda + 1
        RationalPolynomial map{Rational(0), Rational(1), Rational(1)};  // lambda^2 + lambda
        for (int j = 0; j <= 3; ++j) e.moments.push_back(generalized_moments(weight, map, j, 1));
        e.moments[0] += 1;  // the l = 0 eigenvalue carries weight 1 at lambda = 0
    } else if (n == 3) {
        e.density_terms = {{Rational(1, 2), Rational(1, 2)}};
        RationalPolynomial wm{Rational(1), Rational(2), Rational(1)};  // (lambda + 1)^2
        for (int j = 0; j <= 3; ++j) e.moments.push_back(generalized_moments(wm, wm, j, 0));
    } else {
        throw std::invalid_argument("counting_expansion_sphere: only n = 2 and n = 3 are supported");
    }
    return e;
}

// Leading Weyl coefficient Omega_n vol / (n (2 pi)^n) of lambda^{n/2}.
inline double weyl_leading(int n, double vol) {
    if (n < 1) throw std::domain_error("weyl_leading: dimension must be >= 1");
    if (!(vol > 0)) throw std::domain_error("weyl_leading: volume must be positive");
    double omega = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
    return omega * vol / (n * std::pow(2.0 * M_PI, n));
}

struct PhaseSpaceResult {
    double value = 0.0;
    // Set when (lambda - V)_+ fails to vanish at the integration boundary,
    // i.e. the classically allowed region may extend beyond the grid.
    bool boundary_warning = false;
};

// One-dimensional phase-space count (1/pi) int sqrt((lambda - V)_+) dx over
// the bracket [a, b]: locate the turning points by scan plus bisection,
// then integrate each classically allowed segment with tanh-sinh quadrature
// (which absorbs the square-root edges).
inline PhaseSpaceResult phase_space_counting(const std::function<double(double)>& V, double lam,
                                             double a, double b) {
    if (!(b > a)) throw std::invalid_argument("phase_space_counting: empty bracket");
    auto f = [&](double x) { return lam - V(x); };

    PhaseSpaceResult res;
    const int scan = 4096;
    double h = (b - a) / scan;
    std::vector<double> cut;  // segment boundaries where f changes sign
    double x_prev = a, f_prev = f(a);
    if (f_prev > 0) res.boundary_warning = true;
    cut.push_back(a);
    for (int i = 1; i <= scan; ++i) {
        double x = (i == scan) ? b : a + i * h;
        double fx = f(x);
        if ((f_prev > 0) != (fx > 0)) {
            double lo = x_prev, hi = x;
            for (int it = 0; it < 100; ++it) {
                double mid = 0.5 * (lo + hi);
                if ((f(lo) > 0) != (f(mid) > 0)) hi = mid;
                else lo = mid;
            }
            cut.push_back(0.5 * (lo + hi));
        }
        x_prev = x;
        f_prev = fx;
    }
    if (f_prev > 0) res.boundary_warning = true;
    cut.push_back(b);

    boost::math::quadrature::tanh_sinh<double> ts;
    long double acc = 0.0L;
    for (std::size_t i = 0; i + 1 < cut.size(); ++i) {
        double mid = 0.5 * (cut[i] + cut[i + 1]);
        if (f(mid) <= 0) continue;
        acc += ts.integrate([&](double x) { return std::sqrt(std::max(f(x), 0.0)); }, cut[i],
                            cut[i + 1], 1e-12);
    }
    res.value = static_cast<double>(acc) / M_PI;
    return res;
}

// n-dimensional version over a box, midpoint rule with one Richardson
// refinement; adequate for smooth potentials away from the support edge.
inline PhaseSpaceResult phase_space_counting(
    const std::function<double(const std::vector<double>&)>& V, int n, double lam,
    const std::vector<double>& lo, const std::vector<double>& hi, int cells_per_axis = 64) {
    if (n < 1) throw std::invalid_argument("phase_space_counting: dimension must be >= 1");
    if (static_cast<int>(lo.size()) != n || static_cast<int>(hi.size()) != n)
        throw std::invalid_argument("phase_space_counting: box dimension mismatch");

    bool warn = false;
    auto sweep = [&](int cells) {
        std::vector<int> idx(static_cast<std::size_t>(n), 0);
        std::vector<double> x(static_cast<std::size_t>(n), 0.0);
        long double acc = 0.0L;
        double cellvol = 1.0;
        for (int d = 0; d < n; ++d)
            cellvol *= (hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)]) / cells;
        while (true) {
            bool edge = false;
            for (int d = 0; d < n; ++d) {
                double frac = (idx[static_cast<std::size_t>(d)] + 0.5) / cells;
                x[static_cast<std::size_t>(d)] =
                    lo[static_cast<std::size_t>(d)] +
                    frac * (hi[static_cast<std::size_t>(d)] - lo[static_cast<std::size_t>(d)]);
                if (idx[static_cast<std::size_t>(d)] == 0 ||
                    idx[static_cast<std::size_t>(d)] == cells - 1)
                    edge = true;
            }
            double val = lam - V(x);
            if (val > 0) {
                acc += std::pow(val, n / 2.0);
                if (edge) warn = true;
            }
            int d = 0;
            for (; d < n; ++d) {
                if (++idx[static_cast<std::size_t>(d)] < cells) break;
                idx[static_cast<std::size_t>(d)] = 0;
            }
            if (d == n) break;
        }
        return static_cast<double>(acc) * cellvol;
    };

    double coarse = sweep(cells_per_axis);
    double fine = sweep(cells_per_axis * 2);
    double integral = (4.0 * fine - coarse) / 3.0;

    double omega = 2.0 * std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0);
    PhaseSpaceResult res;
    res.value = omega / (n * std::pow(2.0 * M_PI, n)) * integral;
    res.boundary_warning = warn;
    return res;
}

// WeightedComb adapter: the spectral density N' as a comb.
inline WeightedComb comb_of(const Spectrum& s) {
    auto entries = std::make_shared<std::vector<SpectrumEntry>>(s.entries);
    return WeightedComb([entries](std::size_t i) -> std::optional<WeightedComb::Atom> {
        if (i >= entries->size()) return std::nullopt;
        return WeightedComb::Atom{(*entries)[i].eigenvalue,
                                  static_cast<double>((*entries)[i].multiplicity)};
    });
}

}  // namespace specsum

#endif  // SPECSUM_COUNTING_HPP
