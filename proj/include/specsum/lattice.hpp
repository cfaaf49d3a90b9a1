#ifndef SPECSUM_LATTICE_HPP
#define SPECSUM_LATTICE_HPP

// Exact counts r_n(q) = #{ k in Z^n : |k|^2 = q }, built by iterated
// convolution of the one-dimensional table (a reorganized direct
// enumeration; no divisor-sum identities involved).

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace specsum {

inline std::vector<long long> square_rep_counts(int n, long long q_max) {
    if (n < 1) throw std::invalid_argument("square_rep_counts: dimension must be >= 1");
    if (q_max < 0) throw std::invalid_argument("square_rep_counts: negative range");
    std::vector<long long> r(static_cast<std::size_t>(q_max) + 1, 0);
    for (long long m = 0; m * m <= q_max; ++m) r[static_cast<std::size_t>(m * m)] = (m == 0) ? 1 : 2;
    for (int dim = 2; dim <= n; ++dim) {
        std::vector<long long> next(static_cast<std::size_t>(q_max) + 1, 0);
        for (long long q = 0; q <= q_max; ++q) {
            long long acc = r[static_cast<std::size_t>(q)];  // a = 0 slice
            for (long long a = 1; a * a <= q; ++a)
                acc += 2 * r[static_cast<std::size_t>(q - a * a)];
            next[static_cast<std::size_t>(q)] = acc;
        }
        r.swap(next);
    }
    return r;
}

}  // namespace specsum

#endif  // SPECSUM_LATTICE_HPP
