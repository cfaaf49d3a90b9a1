#include "specsum/zeta.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace specsum;

TEST(BernoulliTest, FirstValues) {
    EXPECT_EQ(bernoulli(0), Rational(1));
    EXPECT_EQ(bernoulli(1), Rational(-1, 2));
    EXPECT_EQ(bernoulli(2), Rational(1, 6));
    EXPECT_EQ(bernoulli(3), Rational(0));
    EXPECT_EQ(bernoulli(4), Rational(-1, 30));
    EXPECT_EQ(bernoulli(12), Rational(-691, 2730));
    EXPECT_THROW(bernoulli(-1), std::domain_error);
}

TEST(ZetaNegIntTest, ClosedForms) {
    EXPECT_EQ(zeta_neg_int(0), Rational(-1, 2));
    EXPECT_EQ(zeta_neg_int(1), Rational(-1, 12));
    EXPECT_EQ(zeta_neg_int(3), Rational(1, 120));
    EXPECT_EQ(zeta_neg_int(5), Rational(-1, 252));
    EXPECT_EQ(zeta_neg_int(7), Rational(1, 240));
    for (int m = 2; m <= 8; m += 2) EXPECT_EQ(zeta_neg_int(m), Rational(0)) << "m = " << m;
    EXPECT_THROW(zeta_neg_int(-1), std::domain_error);
}

TEST(ZetaConvergentTest, KnownValues) {
    EXPECT_NEAR(zeta_convergent(2.0), M_PI * M_PI / 6.0, 1e-10);
    EXPECT_NEAR(zeta_convergent(4.0), std::pow(M_PI, 4) / 90.0, 1e-12);
    EXPECT_NEAR(zeta_convergent(1.5), 2.612375348685488, 1e-9);
    EXPECT_THROW(zeta_convergent(1.0), std::domain_error);
    EXPECT_THROW(zeta_convergent(0.5), std::domain_error);
}

TEST(ZetaCesaroTest, ZetaZeroAtModestCutoff) {
    for (int k : {2, 3})
        EXPECT_NEAR(zeta_via_cesaro(0.0, k, 1e5), -0.5, 1e-5) << "order " << k;
}

TEST(ZetaCesaroTest, ZetaMinusOneAtModestCutoff) {
    for (int k : {2, 3})
        EXPECT_NEAR(zeta_via_cesaro(1.0, k, 1e5), -1.0 / 12.0, 1e-6) << "order " << k;
}

TEST(ZetaCesaroTest, ConvergentRegionAgreesWithDirectSum) {
    EXPECT_NEAR(zeta_via_cesaro(-2.0, 1, 4e6), M_PI * M_PI / 6.0, 1e-4);
}

TEST(ZetaCesaroTest, LadderReportIsCoherent) {
    LadderEstimate lad = zeta_via_cesaro_report(1.0, 2, 1e5);
    EXPECT_TRUE(lad.converged);
    EXPECT_DOUBLE_EQ(lad.cutoffs[0], 25000.0);
    EXPECT_DOUBLE_EQ(lad.cutoffs[2], 1e5);
    EXPECT_DOUBLE_EQ(lad.value, lad.estimates[2]);
    EXPECT_GE(lad.spread, 0.0);
    EXPECT_LT(lad.spread, 1e-3);
}

TEST(ZetaCesaroTest, RejectsThePoleAndBadArguments) {
    EXPECT_THROW(zeta_via_cesaro(-1.0, 2, 1e5), std::domain_error);
    EXPECT_THROW(zeta_via_cesaro(0.0, 0, 1e5), std::domain_error);
    EXPECT_THROW(zeta_via_cesaro(0.0, 2, 50.0), std::domain_error);
}

TEST(ZetaCesaroTest, OrderMonotonicity) {
    double v2 = zeta_via_cesaro(1.0, 2, 1e5);
    double v3 = zeta_via_cesaro(1.0, 3, 1e5);
    double v4 = zeta_via_cesaro(1.0, 4, 1e5);
    EXPECT_NEAR(v2, v3, 1e-6);
    EXPECT_NEAR(v3, v4, 1e-6);
}

TEST(ZetaPrimeZeroTest, MatchesTheClosedForm) {
    double target = -0.5 * std::log(2.0 * M_PI);
    EXPECT_NEAR(zeta_prime_zero(1e5, 2), target, 1e-4);
    LadderEstimate lad = zeta_prime_zero_report(1e5, 2);
    EXPECT_TRUE(lad.converged);
    EXPECT_THROW(zeta_prime_zero(500.0, 2), std::domain_error);
}

TEST(SamplingTest, ExponentialExpansionThirdOrder) {
    TestFunctional g = TestFunctional::exponential();
    double expansion = sampling_expansion(g, 0.1, 3);
    // 1/eps + zeta(0) - zeta(-1) eps + zeta(-3) (-1) eps^3 / 6
    EXPECT_NEAR(expansion, 9.508331944444444, 1e-12);
    double direct = sampling_sum(g, 0.1);
    EXPECT_NEAR(direct, 1.0 / (std::exp(0.1) - 1.0), 1e-12);
    double err = std::abs(expansion - direct);
    EXPECT_LT(err, 5e-10);
    EXPECT_GT(err, 1e-11);  // a genuine fifth-order remainder, not roundoff
}

TEST(SamplingTest, GaussianExpansionIsSuperAccurate) {
    // Odd derivatives vanish and zeta(-even) = 0, so every correction term
    // past zeta(0) drops; the remainder is below any power of eps.
    TestFunctional g = TestFunctional::gaussian();
    double expansion = sampling_expansion(g, 0.05, 5);
    double direct = sampling_sum(g, 0.05);
    EXPECT_NEAR(expansion, direct, 1e-10);
}

TEST(SamplingTest, ErrorRatioTracksTheFirstOmittedTerm) {
    // For g = e^{-x} the first omitted term after an even truncation order o
    // carries eps^{o+1}, so halving eps divides the error by about 2^{o+1}.
    TestFunctional g = TestFunctional::exponential();
    for (int o : {0, 2, 4}) {
        double e1 = std::abs(sampling_expansion(g, 0.05, o) - sampling_sum(g, 0.05));
        double e2 = std::abs(sampling_expansion(g, 0.10, o) - sampling_sum(g, 0.10));
        double ratio = e2 / e1;
        EXPECT_GT(ratio, std::pow(2.0, o + 0.5)) << "order " << o;
        EXPECT_LT(ratio, std::pow(2.0, o + 1.5)) << "order " << o;
    }
}

TEST(SamplingTest, DomainErrors) {
    TestFunctional g = TestFunctional::exponential();
    EXPECT_THROW(sampling_expansion(g, 0.0, 3), std::domain_error);
    EXPECT_THROW(sampling_expansion(g, 0.1, -1), std::domain_error);
    EXPECT_THROW(sampling_sum(g, -0.1), std::domain_error);
}

TEST(LatticeSamplingTest, FourTorusVolumeTerm) {
    // sum over Z^4 of e^{-|k eps|^2} ~ pi^2 / eps^4, all corrections cancel.
    TestFunctional g = TestFunctional::exponential();
    double eps = 0.05;
    double sum = lattice_sampling(g, eps, 4);
    double integral = lattice_integral(g, eps, 4);
    EXPECT_NEAR(integral, M_PI * M_PI * std::pow(eps, -4.0), 1e-4);
    EXPECT_LT(std::abs(sum - integral) / integral, 1e-9);
}

TEST(LatticeSamplingTest, PlaneCase) {
    TestFunctional g = TestFunctional::exponential();
    double eps = 0.1;
    double sum = lattice_sampling(g, eps, 2);
    double integral = lattice_integral(g, eps, 2);
    EXPECT_NEAR(integral, M_PI * std::pow(eps, -2.0), 1e-9);
    EXPECT_LT(std::abs(sum - integral) / integral, 1e-7);
}

TEST(LatticeSamplingTest, OneDimensionMatchesTheHalfLineSum) {
    // n = 1: 1 + 2 sum_{k>=1} g(k^2 eps^2).
    TestFunctional g = TestFunctional::exponential();
    double eps = 0.2;
    long double direct = 1.0L;
    for (long long k = 1; k * k * 0.04 < 60.0; ++k)
        direct += 2.0L * std::exp(-static_cast<double>(k * k) * eps * eps);
    EXPECT_NEAR(lattice_sampling(g, eps, 1), static_cast<double>(direct), 1e-10);
}

TEST(LatticeSamplingTest, DomainErrors) {
    TestFunctional g = TestFunctional::exponential();
    EXPECT_THROW(lattice_sampling(g, 0.0, 2), std::domain_error);
    EXPECT_THROW(lattice_sampling(g, 0.1, 0), std::domain_error);
    EXPECT_THROW(lattice_integral(g, -1.0, 2), std::domain_error);
    EXPECT_THROW(lattice_integral(g, 0.1, 0), std::domain_error);
}
