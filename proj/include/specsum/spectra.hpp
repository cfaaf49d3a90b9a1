#ifndef SPECSUM_SPECTRA_HPP
#define SPECSUM_SPECTRA_HPP

// Model operator spectra: flat tori T^n (girths 2 pi), round spheres S^n,
// the harmonic oscillator, and the continuous diagonal density of the
// real-line Laplacian. A Spectrum is a value-semantics list of
// (eigenvalue, multiplicity) pairs in non-decreasing eigenvalue order,
// tagged with the geometry metadata the counting and heat routines need.

#include "specsum/common.hpp"
#include "specsum/lattice.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>

namespace specsum {

struct SpectrumEntry {
    double eigenvalue;
    long long multiplicity;
};

struct Spectrum {
    std::string name;
    int n = 0;                     // manifold dimension
    int d = 2;                     // operator order
    std::optional<double> volume;  // manifold volume, when defined
    double shift = 0.0;            // e.g. the 1 in 1 - Laplacian
    std::vector<SpectrumEntry> entries;
    double horizon = 0.0;          // counting is valid for lambda <= horizon

    long long total_multiplicity_upto(double lam, bool inclusive) const {
        long long acc = 0;
        for (const auto& e : entries) {
            if (inclusive ? (e.eigenvalue <= lam) : (e.eigenvalue < lam)) acc += e.multiplicity;
            else break;
        }
        return acc;
    }
};

// Eigenvalues q = |k|^2 <= q_max on the flat torus R^n / (2 pi Z)^n, with
// multiplicity the number of integer solutions.
inline Spectrum torus_spectrum(int n, long long q_max) {
    if (n < 1) throw std::invalid_argument("torus_spectrum: dimension must be >= 1");
    if (q_max < 0) throw std::invalid_argument("torus_spectrum: negative range");
    Spectrum s;
    s.name = "torus" + std::to_string(n);
    s.n = n;
    s.d = 2;
    s.volume = std::pow(2.0 * M_PI, n);
    std::vector<long long> r = square_rep_counts(n, q_max);
    for (long long q = 0; q <= q_max; ++q)
        if (r[static_cast<std::size_t>(q)] > 0)
            s.entries.push_back({static_cast<double>(q), r[static_cast<std::size_t>(q)]});
    s.horizon = static_cast<double>(q_max);
    return s;
}

// lambda_l = l (l + n - 1) + shift on the round S^n, multiplicity
// C(l+n, n) - C(l+n-2, n).
inline Spectrum sphere_spectrum(int n, long long l_max, double shift = 0.0) {
    if (n < 2) throw std::invalid_argument("sphere_spectrum: dimension must be >= 2");
    if (l_max < 0) throw std::invalid_argument("sphere_spectrum: negative range");
    Spectrum s;
    s.name = "sphere" + std::to_string(n);
    s.n = n;
    s.d = 2;
    s.volume = 2.0 * std::pow(M_PI, (n + 1) / 2.0) / std::tgamma((n + 1) / 2.0);
    s.shift = shift;
    for (long long l = 0; l <= l_max; ++l) {
        Rational m = binomial_r(l + n, n) - binomial_r(l + n - 2, n);
        if (m > Rational(std::numeric_limits<long long>::max()))
            throw std::overflow_error("sphere_spectrum: multiplicity exceeds 64-bit range");
        s.entries.push_back({static_cast<double>(l) * static_cast<double>(l + n - 1) + shift,
                             m.convert_to<long long>()});
    }
    s.horizon = static_cast<double>(l_max) * static_cast<double>(l_max + n - 1) + shift;
    return s;
}

// Eigenvalues l + 1/2, simple.
inline Spectrum oscillator_spectrum(long long l_max) {
    if (l_max < 0) throw std::invalid_argument("oscillator_spectrum: negative range");
    Spectrum s;
    s.name = "oscillator";
    s.n = 1;
    s.d = 2;
    for (long long l = 0; l <= l_max; ++l)
        s.entries.push_back({static_cast<double>(l) + 0.5, 1});
    s.horizon = static_cast<double>(l_max) + 0.5;
    return s;
}

// Diagonal spectral density of the Laplacian on the real line.
inline double line_density(double lam) {
    if (!(lam > 0)) throw std::domain_error("line_density: lambda must be positive");
    return 1.0 / (2.0 * M_PI * std::sqrt(lam));
}

// Line-oriented interchange format: eigenvalue<TAB>multiplicity.
inline void write_tab(std::ostream& os, const Spectrum& s) {
    for (const auto& e : s.entries) {
        std::ostringstream line;
        line.precision(17);
        line << e.eigenvalue << '\t' << e.multiplicity << '\n';
        os << line.str();
    }
}

inline Spectrum read_tab(std::istream& is, std::string name = "file") {
    Spectrum s;
    s.name = std::move(name);
    double lam;
    long long m;
    double prev = -std::numeric_limits<double>::infinity();
    while (is >> lam >> m) {
        if (lam < prev) throw std::invalid_argument("read_tab: eigenvalues must be non-decreasing");
        if (m < 1) throw std::invalid_argument("read_tab: multiplicities must be >= 1");
        s.entries.push_back({lam, m});
        prev = lam;
    }
    s.horizon = s.entries.empty() ? 0.0 : s.entries.back().eigenvalue;
    return s;
}

}  // namespace specsum

#endif  // SPECSUM_SPECTRA_HPP
