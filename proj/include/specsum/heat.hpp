#ifndef SPECSUM_HEAT_HPP
#define SPECSUM_HEAT_HPP

// Bridge between large-parameter spectral expansions and small-t heat-type
// expansions. Pairing a density term against g(t lambda) maps channels
// term by term:
//
//     c lambda^alpha        ->  c t^{-alpha-1} Fp int_0^inf lambda^alpha g
//     b_j lambda^{-j}       ->  b_j t^{j-1} (Fp int g/lambda^j
//                                            - g^{(j-1)}(0) log t / (j-1)!)
//     moment slot mu_m      ->  mu_m g^{(m)}(0) t^m / m!
//
// The power channel rescales by the substitution u = t lambda; at a
// negative integer exponent the same substitution picks up the scaling
// defect of the pseudofunction, which is where the log t and the t^{j-1}
// prefactor (one power below the naive count, from the du/t measure)
// come from. Log terms therefore appear exactly when a b_j channel is
// present. With g(lambda) = e^{-lambda} and the S^2 counting expansion
// this reproduces the diatomic-molecule partition function
// 1/t + 1/3 + t/15 + 4t^2/315 + ... with exact rational coefficients.
//
// Also here: numeric heat traces with a windowed geometric tail bound, the
// S^3 partition-function comparison against (sqrt(pi)/4) t^{-3/2} e^t, the
// bosonic spectral-action check on flat T^4, and the error-order fit that
// confirms the S^2 expansion's O(t^3) remainder.

#include "specsum/common.hpp"
#include "specsum/counting.hpp"
#include "specsum/expansion.hpp"
#include "specsum/finite_part.hpp"
#include "specsum/functional.hpp"
#include "specsum/reversion.hpp"
#include "specsum/spectra.hpp"

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cmath>
#include <optional>

namespace specsum {

struct SmallTTerm {
    double coefficient = 0.0;
    std::optional<Rational> exact;  // set when the coefficient is exactly rational
    double t_exponent = 0.0;
    int log_power = 0;  // 0 or 1; 1 only at integer exponents >= 0
};

struct SmallTExpansion {
    std::vector<SmallTTerm> terms;  // t_exponents non-decreasing

    double eval(double t) const {
        double lt = t > 0 ? std::log(t) : 0.0;
        double acc = 0.0;
        for (const auto& a : terms)
            acc += a.coefficient * std::pow(t, a.t_exponent) * (a.log_power ? lt : 1.0);
        return acc;
    }

    SmallTExpansion truncated(std::size_t n_terms) const {
        SmallTExpansion out;
        out.terms.assign(terms.begin(),
                         terms.begin() + static_cast<std::ptrdiff_t>(
                                             std::min(n_terms, terms.size())));
        return out;
    }

    bool has_log_terms() const {
        for (const auto& a : terms)
            if (a.log_power != 0) return true;
        return false;
    }

    AsymptoticExpansion as_asymptotic() const {
        AsymptoticExpansion e;
        e.variable = ExpansionVariable::t_to_zero;
        e.sense = Sense{false, 0};
        for (const auto& a : terms) e.terms.push_back({a.coefficient, a.t_exponent, a.log_power});
        return e;
    }
};

namespace detail {

struct SmallTBuilder {
    std::vector<SmallTTerm> terms;

    void add(double coeff, std::optional<Rational> exact, double t_exp, int log_power) {
        for (auto& a : terms) {
            if (a.log_power == log_power && std::abs(a.t_exponent - t_exp) < 1e-12) {
                a.coefficient += coeff;
                if (a.exact && exact)
                    *a.exact += *exact;
                else
                    a.exact.reset();
                return;
            }
        }
        terms.push_back({coeff, std::move(exact), t_exp, log_power});
    }

    SmallTExpansion finish() {
        std::erase_if(terms, [](const SmallTTerm& a) {
            return a.coefficient == 0.0 && (!a.exact || *a.exact == 0);
        });
        std::stable_sort(terms.begin(), terms.end(), [](const SmallTTerm& x, const SmallTTerm& y) {
            if (x.t_exponent != y.t_exponent) return x.t_exponent < y.t_exponent;
            return x.log_power < y.log_power;
        });
        return SmallTExpansion{std::move(terms)};
    }

    // c lambda^alpha channel; alpha must not be a negative integer.
    void add_power(double c, std::optional<Rational> c_exact, double alpha,
                   std::optional<Rational> alpha_exact, const TestFunctional& g, int t_orders) {
        if (alpha < -0.5 && std::abs(alpha - std::round(alpha)) < 1e-9)
            throw std::domain_error(
                "cesaro_to_small_t: negative integer exponent belongs in the b channel");
        double t_exp = -alpha - 1.0;
        if (t_exp > t_orders + 1e-9) return;
        double coeff = c * g.fp_integral(alpha);
        std::optional<Rational> exact;
        if (c_exact && alpha_exact)
            if (auto fe = g.fp_integral_exact(*alpha_exact)) exact = *c_exact * *fe;
        add(coeff, std::move(exact), t_exp, 0);
    }

    // b_j lambda^{-j} channel: finite-part value plus the scaling-defect log.
    void add_pseudofunction(int j, const Rational& bj, const TestFunctional& g, int t_orders) {
        if (bj == 0) return;
        double t_exp = j - 1;
        if (t_exp > t_orders + 1e-9) return;
        double b = to_double(bj);
        double fp;
        try {
            fp = g.fp_integral(-static_cast<double>(j));
        } catch (const CapabilityError&) {
            fp = pseudofunction_eval(j, g);
        }
        add(b * fp, std::nullopt, t_exp, 0);
        Rational fact = factorial_r(j - 1);
        double log_coeff = -b * g.deriv0(j - 1) / to_double(fact);
        std::optional<Rational> exact;
        if (auto de = g.deriv0_exact(j - 1)) exact = -bj * *de / fact;
        add(log_coeff, std::move(exact), t_exp, 1);
    }

    void add_moment(int m, const Rational& mu, const TestFunctional& g, int t_orders) {
        if (m > t_orders || mu == 0) return;
        Rational fact = factorial_r(m);
        double coeff = to_double(mu) * g.deriv0(m) / to_double(fact);
        std::optional<Rational> exact;
        if (auto de = g.deriv0_exact(m)) exact = mu * *de / fact;
        add(coeff, std::move(exact), m, 0);
    }
};

}  // namespace detail

// Raw power-channel input (coefficient, exponent) pairs.
inline SmallTExpansion cesaro_to_small_t(const std::vector<std::pair<double, double>>& power_terms,
                                         const TestFunctional& g, int t_orders) {
    detail::SmallTBuilder bld;
    for (const auto& [c, alpha] : power_terms)
        bld.add_power(c, std::nullopt, alpha, std::nullopt, g, t_orders);
    return bld.finish();
}

inline SmallTExpansion cesaro_to_small_t(const CountingExpansion& exp, const TestFunctional& g,
                                         int t_orders) {
    detail::SmallTBuilder bld;
    for (const auto& [c, alpha] : exp.density_terms)
        bld.add_power(to_double(c), c, to_double(alpha), alpha, g, t_orders);
    for (std::size_t i = 0; i < exp.b.size(); ++i)
        bld.add_pseudofunction(static_cast<int>(i) + 1, exp.b[i], g, t_orders);
    for (std::size_t m = 0; m < exp.moments.size(); ++m)
        bld.add_moment(static_cast<int>(m), exp.moments[m], g, t_orders);
    return bld.finish();
}

inline SmallTExpansion cesaro_to_small_t(const DensityExpansion& exp, const TestFunctional& g,
                                         int t_orders) {
    return cesaro_to_small_t(exp.terms(), g, t_orders);
}

// Sum m_l exp(-t lambda_l), truncated once the tail is provably below
// tol * partial_sum. Terms are grouped into lambda-windows of width 1/t
// (one e-fold); once three consecutive window sums decay by a factor
// below 0.9, the remaining tail is dominated by the geometric series
// 9 * (last window). Windowing rides out multiplicity fluctuations (the
// torus counts are far from monotone entry by entry).
inline double heat_trace(const Spectrum& s, double t, double tol = 1e-12) {
    if (!(t > 0)) throw std::domain_error("heat_trace: t must be positive");
    if (!(tol > 0)) throw std::domain_error("heat_trace: tolerance must be positive");
    if (s.entries.empty()) throw std::invalid_argument("heat_trace: empty spectrum");

    const double window = 1.0 / t;
    const double lam0 = s.entries.front().eigenvalue;
    long double acc = 0.0L;
    long double block = 0.0L;
    long double prev_block = -1.0L;  // last closed populated window
    long long block_index = 0;
    int streak = 0;

    for (const auto& e : s.entries) {
        long long bi = static_cast<long long>(std::floor((e.eigenvalue - lam0) / window));
        if (bi != block_index) {
            // Close the current window; windows with no entries in between
            // carry no decay information and are skipped outright.
            if (prev_block >= 0.0L) {
                bool decaying = block == 0.0L || (prev_block > 0.0L && block < 0.9L * prev_block);
                streak = decaying ? streak + 1 : 0;
                if (streak >= 3 && 9.0L * block <= tol * acc + 1e-300L)
                    return static_cast<double>(acc);
            }
            prev_block = block;
            block = 0.0L;
            block_index = bi;
        }
        long double term = static_cast<long double>(e.multiplicity) *
                           std::exp(-static_cast<long double>(t) * e.eigenvalue);
        acc += term;
        block += term;
    }
    throw std::out_of_range("heat_trace: spectrum horizon too low for the requested tolerance");
}

struct S3PartitionCheck {
    double exact = 0.0;      // e^t * heat trace of the shifted S^3 spectrum
    double asymptote = 0.0;  // (sqrt(pi)/4) t^{-3/2} e^t
    double rel_diff = 0.0;   // |exact - asymptote| / asymptote, high-precision
};

// The difference is O(e^{-pi^2/t}) (dual-lattice images), far below double
// resolution for small t, so the comparison runs in 50-digit arithmetic
// and only the final fields are rounded.
inline S3PartitionCheck s3_partition_check(double t) {
    if (!(t > 0) || t > 1) throw std::domain_error("s3_partition_check: t must lie in (0, 1]");
    using big = boost::multiprecision::cpp_bin_float_50;
    const big bt(t);
    big z = 0;
    for (long long m = 1; m <= 200000; ++m) {
        big term = big(m) * big(m) * exp(-bt * m * m);
        z += term;
        if (m * m * t > 8 && term < z * 1e-48) break;
    }
    big et = exp(bt);
    big exact = et * z;
    big asym = sqrt(boost::math::constants::pi<big>()) / 4 * pow(bt, big(-1.5)) * et;
    S3PartitionCheck out;
    out.exact = static_cast<double>(exact);
    out.asymptote = static_cast<double>(asym);
    out.rel_diff = static_cast<double>(abs(exact - asym) / asym);
    return out;
}

struct SpectralActionCheck {
    double numeric = 0.0;    // sum of m_l phi(lambda_l / Lambda^2)
    double predicted = 0.0;  // volume-channel expansion at t = Lambda^{-2}
    SmallTExpansion expansion;
};

// Bosonic action on a 4-dimensional spectrum: the numeric side samples the
// spectrum through phi at cutoff Lambda, the predicted side evaluates the
// volume (Weyl) channel vol/(16 pi^2) * lambda through cesaro_to_small_t at
// t = Lambda^{-2}. On flat tori every correction channel vanishes to all
// orders, so this is an equality up to O(Lambda^{-infinity}).
inline SpectralActionCheck chamseddine_connes(const Spectrum& s, const TestFunctional& phi,
                                              double lambda_cut, int n_terms) {
    if (s.n != 4) throw std::invalid_argument("chamseddine_connes: spectrum must be 4-dimensional");
    if (!s.volume)
        throw std::invalid_argument("chamseddine_connes: spectrum carries no volume metadata");
    if (!(lambda_cut > 0)) throw std::domain_error("chamseddine_connes: cutoff must be positive");
    if (n_terms < 1) throw std::domain_error("chamseddine_connes: need at least one term");

    const double cut2 = lambda_cut * lambda_cut;
    const auto& ent = s.entries;
    double numeric = blocked_sum(ent.size(), [&](std::size_t i) {
        return static_cast<double>(ent[i].multiplicity) * phi(ent[i].eigenvalue / cut2);
    });

    // The enumerated spectrum must reach far enough that phi has died off:
    // audit the top decade of the range.
    double shell = 0.0;
    for (auto it = ent.rbegin(); it != ent.rend() && it->eigenvalue >= 0.9 * s.horizon; ++it)
        shell += static_cast<double>(it->multiplicity) * std::abs(phi(it->eigenvalue / cut2));
    if (shell > 1e-9 * std::abs(numeric))
        throw std::out_of_range("chamseddine_connes: spectrum horizon too low for this cutoff");

    SpectralActionCheck out;
    out.numeric = numeric;
    std::vector<std::pair<double, double>> density = {
        {*s.volume / (16.0 * M_PI * M_PI), 1.0}};
    out.expansion = cesaro_to_small_t(density, phi, n_terms).truncated(
        static_cast<std::size_t>(n_terms));
    out.predicted = out.expansion.eval(1.0 / cut2);
    return out;
}

// Least-squares order of the remainder of the n_terms-term S^2 small-t
// expansion against the true heat trace: slope of log|error| vs log t.
inline double mulholland_error_order(const std::vector<double>& t_ladder, int n_terms = 4) {
    if (t_ladder.size() < 3)
        throw std::invalid_argument("mulholland_error_order: need at least 3 ladder points");
    for (double t : t_ladder)
        if (!(t > 0) || t > 0.5)
            throw std::domain_error("mulholland_error_order: ladder points must lie in (0, 0.5]");
    if (n_terms < 1) throw std::domain_error("mulholland_error_order: need at least one term");

    double t_min = *std::min_element(t_ladder.begin(), t_ladder.end());
    long long l_max = static_cast<long long>(std::ceil(std::sqrt(60.0 / t_min))) + 10;
    Spectrum s2 = sphere_spectrum(2, l_max);
    SmallTExpansion k =
        cesaro_to_small_t(counting_expansion_sphere(2), TestFunctional::exponential(), 3)
            .truncated(static_cast<std::size_t>(n_terms));

    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (double t : t_ladder) {
        double err = std::abs(heat_trace(s2, t, 1e-13) - k.eval(t));
        double x = std::log(t);
        double y = std::log(std::max(err, 1e-300));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    double n = static_cast<double>(t_ladder.size());
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace specsum

#endif  // SPECSUM_HEAT_HPP
