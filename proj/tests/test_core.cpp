#include <gtest/gtest.h>

#include "slipline/slipline.hpp"

using namespace slipline;

TEST(Point2, RoundTripCartesianPolar) {
    for (double x : {-3.0, -0.2, 0.7, 5.0})
        for (double y : {-2.0, 0.1, 4.0}) {
            const Point2 p = Point2::cartesian(x, y);
            const Point2 back = p.to_polar().to_cartesian();
            EXPECT_NEAR(back.x(), x, 1e-12 * std::hypot(x, y));
            EXPECT_NEAR(back.y(), y, 1e-12 * std::hypot(x, y));
        }
}

TEST(Point2, PolarRejectsNonPositiveRadius) {
    EXPECT_THROW(Point2::polar(0.0, 1.0), SingularCoords);
    EXPECT_THROW(Point2::polar(-1.0, 1.0), SingularCoords);
}

TEST(Levy, ForwardExamples) {
    FullStress a = levy_to_components({0.5, pi / 4.0, 0.5});
    EXPECT_NEAR(a.sigma_x, 0.0, 1e-15);
    EXPECT_NEAR(a.sigma_y, 1.0, 1e-15);
    EXPECT_NEAR(a.tau_xy, 0.0, 1e-15);

    FullStress b = levy_to_components({0.0, 0.0, 1.0});
    EXPECT_EQ(b.sigma_x, 0.0);
    EXPECT_EQ(b.sigma_y, 0.0);
    EXPECT_EQ(b.tau_xy, 1.0);
}

TEST(Levy, InverseExamples) {
    StressState a = components_to_levy({0.0, 1.0, 0.0}, 0.5);
    EXPECT_NEAR(a.sigma, 0.5, 1e-15);
    EXPECT_NEAR(a.theta, pi / 4.0, 1e-15);

    StressState b = components_to_levy({-1.0, -1.0, 1.0}, 1.0);
    EXPECT_NEAR(b.sigma, -1.0, 1e-15);
    EXPECT_NEAR(b.theta, 0.0, 1e-15);
}

TEST(Levy, InverseRejectsOffYield) {
    EXPECT_THROW(components_to_levy({0.0, 0.0, 0.5}, 1.0), YieldViolation);
    EXPECT_NEAR(FullStress({0.0, 0.0, 0.5}).yield_residual(1.0), -3.0, 1e-15);
}

TEST(Levy, RoundTripWithHint) {
    for (double t : {-2.9, -1.0, 0.3, 1.4, 4.0}) {
        const StressState s{0.37, t, 0.8};
        const StressState back = components_to_levy(levy_to_components(s), 0.8, t);
        EXPECT_NEAR(back.sigma, s.sigma, 1e-14);
        EXPECT_NEAR(back.theta, t, 1e-13);
    }
}

TEST(Levy, YieldIdentityHolds) {
    for (double t = -3.0; t < 3.0; t += 0.37) {
        const FullStress f = levy_to_components({1.3, t, 0.7});
        EXPECT_NEAR(f.yield_residual(0.7), 0.0, 1e-12 * 0.49);
    }
}

TEST(Angles, PolarCartesianShift) {
    EXPECT_DOUBLE_EQ(theta_cart_from_polar(pi / 4.0, 0.0), pi / 4.0);
    EXPECT_DOUBLE_EQ(theta_cart_from_polar(0.0, pi / 3.0), pi / 3.0);
    EXPECT_DOUBLE_EQ(theta_polar_from_cart(theta_cart_from_polar(0.2, 1.1), 1.1), 0.2);
}

TEST(FunctionParam, DerivativesAndAntiderivatives) {
    const auto p = FunctionParam::polynomial({1.0, -2.0, 3.0});
    EXPECT_DOUBLE_EQ(p(2.0), 9.0);
    EXPECT_NEAR(p.deriv(2.0), 10.0, 1e-12);
    ASSERT_TRUE(p.has_antiderivative());
    EXPECT_NEAR(p.antiderivative(1.0), 1.0 - 1.0 + 1.0, 1e-14);

    const auto e = FunctionParam::exponential(2.0);
    EXPECT_NEAR(e(1.0), 2.0 * std::exp(1.0), 1e-14);
    EXPECT_NEAR(e.deriv(0.5), 2.0 * std::exp(0.5), 1e-12);

    const FunctionParam bare([](double t) { return std::sin(t); });
    EXPECT_NEAR(bare.deriv(0.0), 1.0, 1e-10);
    EXPECT_FALSE(bare.has_antiderivative());
}

TEST(Numerics, RichardsonDerivative) {
    EXPECT_NEAR(num::richardson_derivative([](double x) { return x * x; }, 3.0, 1e-3), 6.0, 1e-9);
    EXPECT_NEAR(num::richardson_derivative([](double x) { return std::sin(x); }, 0.0, 1e-3), 1.0, 1e-10);
}

TEST(Numerics, BisectNewtonAndUniqueRoot) {
    auto f = [](double x) { return x * x - 2.0; };
    EXPECT_NEAR(num::bisect_newton(f, 0.0, 2.0), std::sqrt(2.0), 1e-12);
    EXPECT_THROW(num::bisect_newton(f, 2.0, 3.0), NoRootInBracket);
    auto g = [](double x) { return std::sin(x); };
    EXPECT_THROW(num::unique_root(g, -1.0, 7.0), MultipleRoots);
    EXPECT_NEAR(num::unique_root(g, 2.0, 4.0), pi, 1e-12);
}
