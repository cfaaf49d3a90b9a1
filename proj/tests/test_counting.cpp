#include "specsum/counting.hpp"
#include "specsum/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace specsum;

TEST(CountingFunctionTest, PlaneLatticeValues) {
    Spectrum s = torus_spectrum(2, 30);
    EXPECT_EQ(counting_function(s, 13.0, Side::right), 45);
    EXPECT_EQ(counting_function(s, 13.0, Side::left), 37);
    EXPECT_EQ(counting_function(s, 3.0, Side::right), 9);
    EXPECT_EQ(counting_function(s, 3.0, Side::left), 9);
    EXPECT_EQ(counting_function(s, -1.0, Side::right), 0);
}

TEST(CountingFunctionTest, HorizonGuard) {
    Spectrum s = torus_spectrum(2, 10);
    EXPECT_NO_THROW(counting_function(s, 10.0, Side::right));
    EXPECT_THROW(counting_function(s, 10.5, Side::right), std::out_of_range);
    EXPECT_THROW(riesz_counting(s, 2, 11.0), std::out_of_range);
}

TEST(RieszCountingTest, ZeroOrderIsThePlainCount) {
    Spectrum s = torus_spectrum(2, 30);
    EXPECT_DOUBLE_EQ(riesz_counting(s, 0, 13.0), 45.0);
    EXPECT_THROW(riesz_counting(s, -1, 13.0), std::domain_error);
    EXPECT_THROW(riesz_counting(s, 2, 0.0), std::domain_error);
}

TEST(RieszCountingTest, TwoSphereConstantTermEmerges) {
    // Order-3 smoothing of N on S^2: rho(1,3) lambda + 1/3 + o(1).
    Spectrum s = sphere_spectrum(2, 360);
    double v = riesz_counting(s, 3, 1e4);
    EXPECT_NEAR(v, 1e4 / 4.0 + 1.0 / 3.0, 1e-4);
    // The residual keeps shrinking at larger lambda.
    double r1 = std::abs(riesz_counting(s, 3, 1e3) - (1e3 / 4.0 + 1.0 / 3.0));
    double r2 = std::abs(riesz_counting(s, 3, 1e5) - (1e5 / 4.0 + 1.0 / 3.0));
    EXPECT_LT(r2, r1);
}

TEST(RieszCountingTest, ThreeSphereHasNoConstantTerm) {
    Spectrum s = sphere_spectrum(3, 200, 1.0);
    double lam = 3e4;
    double leading = smoothing_factor(1.5, 3) / 3.0 * std::pow(lam, 1.5);
    EXPECT_LT(std::abs(riesz_counting(s, 3, lam) - leading) / leading, 2e-4);
}

TEST(SmoothingFactorTest, ClosedForms) {
    EXPECT_NEAR(smoothing_factor(1.0, 3), 0.25, 1e-15);
    EXPECT_NEAR(smoothing_factor(1.5, 3), 16.0 / 105.0, 1e-15);
    EXPECT_NEAR(smoothing_factor(1.5, 1), 0.4, 1e-15);
    EXPECT_NEAR(smoothing_factor(0.0, 5), 1.0, 1e-15);
    EXPECT_NEAR(smoothing_factor(2.5, 0), 1.0, 1e-15);
    EXPECT_THROW(smoothing_factor(-1.0, 3), std::domain_error);
    EXPECT_THROW(smoothing_factor(1.0, -1), std::domain_error);
}

TEST(GeneralizedMomentsTest, TwoSphereExactValues) {
    RationalPolynomial weight{Rational(1), Rational(2)};
    RationalPolynomial map{Rational(0), Rational(1), Rational(1)};
    EXPECT_EQ(generalized_moments(weight, map, 0, 1), Rational(-2, 3));
    EXPECT_EQ(generalized_moments(weight, map, 1, 1), Rational(-1, 15));
    EXPECT_EQ(generalized_moments(weight, map, 2, 1), Rational(8, 315));
    EXPECT_EQ(generalized_moments(weight, map, 3, 1), Rational(-2, 105));
}

TEST(GeneralizedMomentsTest, ThreeSphereMomentsAllVanish) {
    RationalPolynomial wm{Rational(1), Rational(2), Rational(1)};
    for (int j = 0; j <= 5; ++j)
        EXPECT_EQ(generalized_moments(wm, wm, j, 0), Rational(0)) << "j = " << j;
}

TEST(GeneralizedMomentsTest, LinearInTheWeight) {
    RationalPolynomial w1{Rational(1), Rational(1, 2)};
    RationalPolynomial w2{Rational(0), Rational(2), Rational(3)};
    RationalPolynomial sum{Rational(1), Rational(5, 2), Rational(3)};
    RationalPolynomial map{Rational(1), Rational(1)};
    for (int j = 0; j <= 3; ++j)
        EXPECT_EQ(generalized_moments(sum, map, j, 1),
                  generalized_moments(w1, map, j, 1) + generalized_moments(w2, map, j, 1));
}

TEST(GeneralizedMomentsTest, StartIndexIsARelabeling) {
    // The regularization lives in the u = lambda + 1 - start variable, so a
    // spectrum starting at 0 is the same moment with both polynomials
    // shifted down one level; the shift must commute with the product.
    RationalPolynomial w{Rational(1), Rational(1)};
    RationalPolynomial m{Rational(2), Rational(1)};
    RationalPolynomial ws = w.shift(Rational(-1));
    RationalPolynomial ms = m.shift(Rational(-1));
    for (int j = 0; j <= 3; ++j)
        EXPECT_EQ(generalized_moments(w, m, j, 0), generalized_moments(ws, ms, j, 1))
            << "j = " << j;
    // A constant weight sees only zeta(0), whichever end the support starts.
    RationalPolynomial one{Rational(1)};
    EXPECT_EQ(generalized_moments(one, m, 0, 0), Rational(-1, 2));
    EXPECT_EQ(generalized_moments(one, m, 0, 1), Rational(-1, 2));
    EXPECT_THROW(generalized_moments(w, m, -1, 1), std::domain_error);
    EXPECT_THROW(generalized_moments(w, m, 0, 2), std::domain_error);
}

TEST(CountingExpansionTest, TwoSphereChannels) {
    CountingExpansion e = counting_expansion_sphere(2);
    ASSERT_EQ(e.density_terms.size(), 1u);
    EXPECT_EQ(e.density_terms[0].first, Rational(1));
    EXPECT_EQ(e.density_terms[0].second, Rational(0));
    EXPECT_TRUE(e.b.empty());

    ASSERT_EQ(e.moments.size(), 4u);
    EXPECT_EQ(e.moments[0], Rational(1, 3));  // -2/3 plus the l = 0 atom
    EXPECT_EQ(e.moments[1], Rational(-1, 15));
    EXPECT_EQ(e.moments[2], Rational(8, 315));
    EXPECT_EQ(e.moments[3], Rational(-2, 105));

    auto ct = e.counting_terms();
    ASSERT_EQ(ct.size(), 2u);
    EXPECT_EQ(ct[0].first, Rational(1));
    EXPECT_EQ(ct[0].second, Rational(1));
    EXPECT_EQ(ct[1].first, Rational(1, 3));
    EXPECT_EQ(ct[1].second, Rational(0));

    auto dc = e.delta_coefficients();
    ASSERT_EQ(dc.size(), 3u);
    EXPECT_EQ(dc[0], Rational(1, 15));
    EXPECT_EQ(dc[1], Rational(4, 315));
    EXPECT_EQ(dc[2], Rational(1, 315));
}

TEST(CountingExpansionTest, ThreeSphereChannels) {
    CountingExpansion e = counting_expansion_sphere(3);
    ASSERT_EQ(e.density_terms.size(), 1u);
    EXPECT_EQ(e.density_terms[0].first, Rational(1, 2));
    EXPECT_EQ(e.density_terms[0].second, Rational(1, 2));
    for (const auto& m : e.moments) EXPECT_EQ(m, Rational(0));

    auto ct = e.counting_terms();
    ASSERT_EQ(ct.size(), 1u);
    EXPECT_EQ(ct[0].first, Rational(1, 3));
    EXPECT_EQ(ct[0].second, Rational(3, 2));

    EXPECT_THROW(counting_expansion_sphere(4), std::invalid_argument);
}

TEST(CountingExpansionTest, AsymptoticViewEvaluates) {
    AsymptoticExpansion a = counting_expansion_sphere(2).counting_asymptotics();
    EXPECT_EQ(a.variable, ExpansionVariable::lambda_to_infinity);
    EXPECT_TRUE(a.sense.cesaro);
    EXPECT_NEAR(a.eval(1e4), 1e4 + 1.0 / 3.0, 1e-9);
}

TEST(WeylLeadingTest, ClosedForms) {
    EXPECT_NEAR(weyl_leading(2, 4.0 * M_PI * M_PI), M_PI, 1e-12);
    EXPECT_NEAR(weyl_leading(2, 4.0 * M_PI), 1.0, 1e-12);
    EXPECT_NEAR(weyl_leading(3, 2.0 * M_PI * M_PI), 1.0 / 3.0, 1e-12);
    EXPECT_NEAR(weyl_leading(1, 2.0 * M_PI), 2.0, 1e-12);  // circle: N ~ 2 sqrt(lambda)
    EXPECT_THROW(weyl_leading(0, 1.0), std::domain_error);
    EXPECT_THROW(weyl_leading(2, 0.0), std::domain_error);
}

TEST(WeylLeadingTest, EnumeratedCountsFitTheConstant) {
    // One-parameter least squares of N(lambda) against lambda^{n/2}.
    auto fit = [](const Spectrum& s, double n_half, double lo, double hi) {
        long double num = 0.0L, den = 0.0L;
        for (double lam = lo; lam <= hi * 1.0001; lam *= std::pow(10.0, 0.125)) {
            double x = std::pow(lam, n_half);
            double N = static_cast<double>(counting_function(s, lam, Side::right));
            num += static_cast<long double>(N) * x;
            den += static_cast<long double>(x) * x;
        }
        return static_cast<double>(num / den);
    };
    EXPECT_NEAR(fit(torus_spectrum(2, 11000), 1.0, 1e3, 1e4) / M_PI, 1.0, 0.02);
    EXPECT_NEAR(fit(sphere_spectrum(2, 120), 1.0, 1e3, 1e4), 1.0, 0.02);
    EXPECT_NEAR(fit(sphere_spectrum(3, 200, 1.0), 1.5, 1e3, 3e4) * 3.0, 1.0, 0.02);
}

TEST(PhaseSpaceTest, HarmonicOscillatorIsExact) {
    auto V = [](double x) { return 0.25 * x * x; };
    for (double lam : {1.0, 10.0, 100.0}) {
        double half_width = 2.0 * std::sqrt(lam) + 1.0;
        PhaseSpaceResult r = phase_space_counting(V, lam, -half_width, half_width);
        EXPECT_NEAR(r.value, lam, 1e-8) << "lambda = " << lam;
        EXPECT_FALSE(r.boundary_warning);
    }
}

TEST(PhaseSpaceTest, LinearWellClosedForm) {
    auto V = [](double x) { return std::abs(x); };
    for (double lam : {1.0, 4.0}) {
        PhaseSpaceResult r = phase_space_counting(V, lam, -lam - 1.0, lam + 1.0);
        EXPECT_NEAR(r.value, 4.0 / (3.0 * M_PI) * std::pow(lam, 1.5), 1e-8);
        EXPECT_FALSE(r.boundary_warning);
    }
}

TEST(PhaseSpaceTest, FreeSegmentAndWarnings) {
    auto zero = [](double) { return 0.0; };
    PhaseSpaceResult r = phase_space_counting(zero, 4.0, 0.0, M_PI);
    EXPECT_NEAR(r.value, 2.0, 1e-10);
    EXPECT_TRUE(r.boundary_warning);  // the allowed region touches the bracket

    auto V = [](double x) { return 0.25 * x * x; };
    PhaseSpaceResult cut = phase_space_counting(V, 10.0, -1.0, 1.0);
    EXPECT_TRUE(cut.boundary_warning);

    EXPECT_THROW(phase_space_counting(zero, 1.0, 1.0, 1.0), std::invalid_argument);
}

TEST(PhaseSpaceTest, TwoDimensionalBox) {
    auto zero = [](const std::vector<double>&) { return 0.0; };
    PhaseSpaceResult r =
        phase_space_counting(zero, 2, 100.0, {0.0, 0.0}, {1.0, 1.0});
    EXPECT_NEAR(r.value, 100.0 / (4.0 * M_PI), 1e-9);
    EXPECT_TRUE(r.boundary_warning);
}

TEST(PhaseSpaceTest, TwoDimensionalHarmonic) {
    // (2 pi)^{-2} vol{ |xi|^2 + (x^2+y^2)/4 <= lambda } = lambda^2 / 2.
    auto V = [](const std::vector<double>& x) {
        return 0.25 * (x[0] * x[0] + x[1] * x[1]);
    };
    double lam = 4.0;
    PhaseSpaceResult r =
        phase_space_counting(V, 2, lam, {-5.0, -5.0}, {5.0, 5.0}, 96);
    EXPECT_NEAR(r.value, lam * lam / 2.0, 0.01 * lam * lam / 2.0);
    EXPECT_FALSE(r.boundary_warning);

    EXPECT_THROW(phase_space_counting(V, 2, lam, {0.0}, {1.0, 1.0}),
                 std::invalid_argument);
}
