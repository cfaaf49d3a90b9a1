#ifndef SPECSUM_COMMON_HPP
#define SPECSUM_COMMON_HPP

// Shared plumbing for the specsum headers: the exact rational type, the
// error taxonomy used across the library, rational helpers (factorials,
// binomials, harmonic numbers), and a deterministic blocked summation
// routine that gives bit-identical results for any thread count.

#include <boost/multiprecision/cpp_int.hpp>

#include <atomic>
#include <cstddef>
#include <functional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

namespace specsum {

using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

// A ladder of geometrically spaced cutoffs failed to stabilize.
class NonConvergence : public std::runtime_error {
public:
    NonConvergence(const std::string& what, double spread, double tolerance)
        : std::runtime_error(what), spread_(spread), tolerance_(tolerance) {}
    double spread() const { return spread_; }
    double tolerance() const { return tolerance_; }

private:
    double spread_;
    double tolerance_;
};

// A quadrature or series evaluation could not reach the requested tolerance.
class NumericalError : public std::runtime_error {
public:
    NumericalError(const std::string& what, double achieved)
        : std::runtime_error(what + " (achieved tolerance " + std::to_string(achieved) + ")"),
          achieved_(achieved) {}
    double achieved_tolerance() const { return achieved_; }

private:
    double achieved_;
};

// An operation needed data (derivatives, finite-part integrals) the supplied
// functional cannot provide.
class CapabilityError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Division by a vanishing structural factor, e.g. the (n-2)(n-4)... chain in
// the heat-coefficient relation on even-dimensional spaces.
class PoleError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline Rational factorial_r(int n) {
    if (n < 0) throw std::domain_error("factorial_r: negative argument");
    Rational f = 1;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

inline Rational binomial_r(long long n, long long k) {
    if (k < 0 || k > n) return 0;
    Rational b = 1;
    for (long long i = 0; i < k; ++i) {
        b *= (n - i);
        b /= (i + 1);
    }
    return b;
}

// H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
inline Rational harmonic_r(int n) {
    Rational h = 0;
    for (int i = 1; i <= n; ++i) h += Rational(1, i);
    return h;
}

inline Rational pow_r(Rational base, long long e) {
    if (e < 0) {
        if (base == 0) throw std::domain_error("pow_r: zero to negative power");
        base = 1 / base;
        e = -e;
    }
    Rational out = 1;
    while (e > 0) {
        if (e & 1) out *= base;
        base *= base;
        e >>= 1;
    }
    return out;
}

// Library-wide worker count, settable by front ends. Summations always use
// a fixed block decomposition, so the value changes speed, never results.
inline std::atomic<int>& thread_count() {
    static std::atomic<int> n{1};
    return n;
}

// Sum term(0) + ... + term(n-1) by fixed 4096-element blocks. Each block is
// accumulated serially in index order (long double carry), block totals are
// added in block order. The decomposition is independent of the thread
// count, so results are reproducible byte for byte.
inline double blocked_sum(std::size_t n, const std::function<double(std::size_t)>& term) {
    constexpr std::size_t block = 4096;
    const std::size_t nblocks = (n + block - 1) / block;
    std::vector<long double> partial(nblocks, 0.0L);

    auto run = [&](std::size_t b) {
        const std::size_t lo = b * block;
        const std::size_t hi = std::min(lo + block, n);
        long double acc = 0.0L;
        for (std::size_t i = lo; i < hi; ++i) acc += term(i);
        partial[b] = acc;
    };

    int workers = thread_count().load();
    if (workers > 1 && nblocks > 1) {
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        int spawn = std::min<std::size_t>(workers, nblocks);
        pool.reserve(spawn);
        for (int w = 0; w < spawn; ++w) {
            pool.emplace_back([&] {
                for (std::size_t b = next.fetch_add(1); b < nblocks; b = next.fetch_add(1)) run(b);
            });
        }
        for (auto& t : pool) t.join();
    } else {
        for (std::size_t b = 0; b < nblocks; ++b) run(b);
    }

    long double total = 0.0L;
    for (std::size_t b = 0; b < nblocks; ++b) total += partial[b];
    return static_cast<double>(total);
}

}  // namespace specsum

#endif  // SPECSUM_COMMON_HPP
