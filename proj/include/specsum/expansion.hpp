#ifndef SPECSUM_EXPANSION_HPP
#define SPECSUM_EXPANSION_HPP

// Asymptotic expansions as finite term lists (coefficient, exponent,
// log power), tagged by the limiting variable and by the summability
// sense in which they hold.

#include <cmath>
#include <vector>

namespace specsum {

struct AsymptoticTerm {
    double coefficient;
    double exponent;
    int log_power;  // 0 or 1
};

enum class ExpansionVariable { lambda_to_infinity, t_to_zero };

struct Sense {
    bool cesaro = false;  // ordinary when false
    int order = 0;        // meaningful only in the Cesaro sense
};

struct AsymptoticExpansion {
    std::vector<AsymptoticTerm> terms;
    ExpansionVariable variable = ExpansionVariable::lambda_to_infinity;
    Sense sense;

    double eval(double x) const {
        double acc = 0.0;
        double lx = x > 0 ? std::log(x) : 0.0;
        for (const auto& t : terms)
            acc += t.coefficient * std::pow(x, t.exponent) * (t.log_power ? lx : 1.0);
        return acc;
    }
};

}  // namespace specsum

#endif  // SPECSUM_EXPANSION_HPP
