#ifndef SPECSUM_SUMMABILITY_HPP
#define SPECSUM_SUMMABILITY_HPP

// Hoelder, Cesaro, and Riesz means for sequences and for weighted Dirac
// combs f = sum_n a_n delta(x - p_n).
//
// For a comb with support bounded on the left, the k-th order primitive
//
//     f_k(x) = sum_{p_n <= x} (x - p_n)^{k-1} a_n / (k-1)!
//
// is the workhorse: the order-k Riesz evaluation of <f, phi> at cutoff X is
// k! I_k(X)/X^k with I_k the primitive of order k+1 of the phi-weighted
// comb, which collapses to the closed sum
//
//     sum_{p_n <= X} (1 - p_n/X)^k a_n phi(p_n).
//
// A limit is declared when estimates on a geometric cutoff ladder stabilize.

#include "specsum/common.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <memory>
#include <optional>
#include <utility>

namespace specsum {

using CesaroOrder = int;

class WeightedComb {
public:
    // (support point, weight)
    using Atom = std::pair<double, double>;
    // Lazy producer: atom #i (0-based, points strictly increasing), or
    // nullopt past the end of a finite comb.
    using Generator = std::function<std::optional<Atom>(std::size_t)>;

    WeightedComb(std::vector<double> points, std::vector<double> weights) {
        if (points.size() != weights.size())
            throw std::invalid_argument("WeightedComb: points/weights length mismatch");
        for (std::size_t i = 1; i < points.size(); ++i)
            if (!(points[i] > points[i - 1]))
                throw std::invalid_argument("WeightedComb: points must be strictly increasing");
        auto pts = std::make_shared<std::vector<double>>(std::move(points));
        auto wts = std::make_shared<std::vector<double>>(std::move(weights));
        gen_ = [pts, wts](std::size_t i) -> std::optional<Atom> {
            if (i >= pts->size()) return std::nullopt;
            return Atom{(*pts)[i], (*wts)[i]};
        };
    }

    explicit WeightedComb(Generator gen) : gen_(std::move(gen)) {}

    // Support at 1, 2, 3, ... with the given weight rule.
    static WeightedComb on_integers(std::function<double(long long)> weight) {
        return WeightedComb([w = std::move(weight)](std::size_t i) -> std::optional<Atom> {
            long long n = static_cast<long long>(i) + 1;
            return Atom{static_cast<double>(n), w(n)};
        });
    }

    std::optional<Atom> atom(std::size_t i) const { return gen_(i); }

    // Visit every atom with point <= cutoff, in support order. Atoms sitting
    // exactly at the cutoff are included (closed-interval convention).
    template <class F>
    void for_atoms_upto(double cutoff, F&& f) const {
        for (std::size_t i = 0;; ++i) {
            auto a = gen_(i);
            if (!a || a->first > cutoff) break;
            f(a->first, a->second);
        }
    }

private:
    Generator gen_;
};

// H^(k)_n by iterated arithmetic averaging of the sequence a_1..a_n
// (1-based index n); k = 0 returns a_n itself.
inline double holder_mean(const std::vector<double>& a, CesaroOrder k, std::size_t n) {
    if (a.empty()) throw std::domain_error("holder_mean: empty sequence");
    if (k < 0) throw std::domain_error("holder_mean: negative order");
    if (n < 1 || n > a.size()) throw std::domain_error("holder_mean: index out of range");
    std::vector<double> h(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    for (int level = 1; level <= k; ++level) {
        long double run = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            run += h[i];
            h[i] = static_cast<double>(run / static_cast<long double>(i + 1));
        }
    }
    return h[n - 1];
}

// k! A^(k)_n / n^k with A^(k) the k-fold partial-sum array; k = 0 gives a_n.
inline double cesaro_mean(const std::vector<double>& a, CesaroOrder k, std::size_t n) {
    if (a.empty()) throw std::domain_error("cesaro_mean: empty sequence");
    if (k < 0) throw std::domain_error("cesaro_mean: negative order");
    if (n < 1 || n > a.size()) throw std::domain_error("cesaro_mean: index out of range");
    std::vector<long double> s(a.begin(), a.begin() + static_cast<std::ptrdiff_t>(n));
    for (int level = 1; level <= k; ++level) {
        long double run = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            run += s[i];
            s[i] = run;
        }
    }
    long double scale = 1.0L;
    for (int i = 1; i <= k; ++i) scale *= static_cast<long double>(i) / static_cast<long double>(n);
    return static_cast<double>(s[n - 1] * scale);
}

// Pure-sum form: sum_{p_n <= mu} (1 - p_n/mu)^k a_n.
inline double riesz_sum(const WeightedComb& comb, CesaroOrder k, double mu) {
    if (k < 0) throw std::domain_error("riesz_sum: negative order");
    if (!(mu > 0)) throw std::domain_error("riesz_sum: cutoff must be positive");
    long double acc = 0.0L;
    comb.for_atoms_upto(mu, [&](double p, double w) {
        double base = 1.0 - p / mu;
        double factor = (k == 0) ? 1.0 : std::pow(base, k);
        acc += static_cast<long double>(w) * factor;
    });
    return static_cast<double>(acc);
}

// Integral-mean form: (1/mu) sum_{p_n <= mu} (1 - p_n/mu)^{k-1} a_n.
inline double riesz_mean(const WeightedComb& comb, CesaroOrder k, double mu) {
    if (k < 1) throw std::domain_error("riesz_mean: order must be >= 1");
    return riesz_sum(comb, k - 1, mu) / mu;
}

// f_k(x) = sum_{p_n <= x} (x - p_n)^{k-1} a_n / (k-1)!.
inline double riesz_primitive(const WeightedComb& comb, int k, double x) {
    if (k < 1)
        throw std::domain_error("riesz_primitive: order must be >= 1 (the comb itself is not a function)");
    long double fact = 1.0L;
    for (int i = 2; i < k; ++i) fact *= i;
    long double acc = 0.0L;
    comb.for_atoms_upto(x, [&](double p, double w) {
        acc += static_cast<long double>(w) * std::pow(x - p, k - 1);
    });
    return static_cast<double>(acc / fact);
}

// Exact-rational primitive for combs with rational support and weights.
inline Rational riesz_primitive_exact(const std::vector<std::pair<Rational, Rational>>& atoms,
                                      int k, const Rational& x) {
    if (k < 1) throw std::domain_error("riesz_primitive_exact: order must be >= 1");
    Rational acc = 0;
    for (const auto& [p, w] : atoms) {
        if (p > x) continue;
        acc += w * pow_r(x - p, k - 1);
    }
    return acc / factorial_r(k - 1);
}

// Order-k Riesz estimate of <f, phi> at cutoff X: the closed sum above.
inline double cesaro_evaluation(const WeightedComb& comb, const std::function<double(double)>& phi,
                                CesaroOrder k, double X) {
    if (k < 1) throw std::domain_error("cesaro_evaluation: order must be >= 1");
    if (!(X > 0)) throw std::domain_error("cesaro_evaluation: cutoff must be positive");
    long double acc = 0.0L;
    comb.for_atoms_upto(X, [&](double p, double w) {
        acc += static_cast<long double>(w) * phi(p) * std::pow(1.0 - p / X, k);
    });
    return static_cast<double>(acc);
}

struct LadderEstimate {
    std::array<double, 3> cutoffs{};    // X/4, X/2, X
    std::array<double, 3> estimates{};
    double value = 0.0;                 // estimate at the largest cutoff
    double spread = 0.0;                // max pairwise difference
    bool converged = false;
};

namespace detail {

inline LadderEstimate ladder_from(const std::function<double(double)>& estimate, double X,
                                  double tol) {
    LadderEstimate out;
    out.cutoffs = {X / 4.0, X / 2.0, X};
    for (int i = 0; i < 3; ++i) out.estimates[static_cast<std::size_t>(i)] = estimate(out.cutoffs[static_cast<std::size_t>(i)]);
    out.value = out.estimates[2];
    double lo = *std::min_element(out.estimates.begin(), out.estimates.end());
    double hi = *std::max_element(out.estimates.begin(), out.estimates.end());
    out.spread = hi - lo;
    out.converged = out.spread < tol;
    return out;
}

}  // namespace detail

// Evaluate on the geometric ladder {X/4, X/2, X}; converged when the three
// estimates pairwise differ by less than tol.
inline LadderEstimate cesaro_evaluation_ladder(const WeightedComb& comb,
                                               const std::function<double(double)>& phi,
                                               CesaroOrder k, double X, double tol) {
    return detail::ladder_from([&](double x) { return cesaro_evaluation(comb, phi, k, x); }, X,
                               tol);
}

}  // namespace specsum

#endif  // SPECSUM_SUMMABILITY_HPP
