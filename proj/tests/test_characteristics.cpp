#include <gtest/gtest.h>

#include "slipline/slipline.hpp"

using namespace slipline;

TEST(SlipDirection, ZeroAngle) {
    const auto a = slip_direction(0.0, Family::first);
    EXPECT_DOUBLE_EQ(a[0], 1.0);
    EXPECT_DOUBLE_EQ(a[1], 0.0);
    const auto b = slip_direction(0.0, Family::second);
    EXPECT_DOUBLE_EQ(b[0], 0.0);
    EXPECT_DOUBLE_EQ(std::abs(b[1]), 1.0);
}

TEST(SlipDirection, FamiliesOrthogonal) {
    for (double t = -3.0; t < 3.0; t += 0.1) {
        const auto a = slip_direction(t, Family::first), b = slip_direction(t, Family::second);
        EXPECT_LT(std::abs(a[0] * b[0] + a[1] * b[1]), 1e-15);
    }
}

TEST(Riemann, ZeroStateAndSimpleWave) {
    const auto z = riemann_invariants({0.0, 0.0, 0.5});
    EXPECT_EQ(z.xi, 0.0);
    EXPECT_EQ(z.eta, 0.0);

    // sigma = 2k theta + const: xi constant everywhere
    const auto f = catalog::simple_wave(FunctionParam::constant(0.0), 0, 0.3, 0.5);
    const double xi0 = riemann_invariants(f.eval(Point2::cartesian(1.0, 1.0))).xi;
    for (double x : {0.3, 1.7})
        for (double y : {0.2, 1.9}) EXPECT_NEAR(riemann_invariants(f.eval(Point2::cartesian(x, y))).xi, xi0, 1e-12);
}

TEST(Trace, PrandtlFirstFamilyIsCycloid) {
    const auto f = catalog::prandtl();
    const auto pl = trace_slipline(f, Point2::cartesian(0.1, 0.2), Family::first, {1e-3, 1.5, 1e-2, 1});
    ASSERT_GT(pl.size(), 100u);
    const double c0 = pl.points[0].x() + 2.0 * pl.stress[0].theta - std::sqrt(1.0 - pl.points[0].y() * pl.points[0].y());
    for (std::size_t i = 0; i < pl.size(); ++i) {
        const double x = pl.points[i].x(), y = pl.points[i].y(), th = pl.stress[i].theta;
        EXPECT_NEAR(y, std::cos(2.0 * th), 1e-5);
        EXPECT_NEAR(x + 2.0 * th - std::sqrt(1.0 - y * y), c0, 1e-5);
    }
}

TEST(Trace, RiemannDriftAlongFamilies) {
    const auto f = catalog::nadai_vortex();
    for (Family fam : {Family::first, Family::second}) {
        const auto pl = trace_slipline(f, Point2::polar(1.5, 0.2), fam, {1e-3, 1.0, 1e-2, 1});
        ASSERT_GT(pl.size(), 10u);
        const auto c0 = riemann_invariants(pl.stress.front());
        double drift = 0.0;
        for (const auto& s : pl.stress) {
            const auto c = riemann_invariants(s);
            drift = std::max(drift, std::abs(fam == Family::first ? c.xi - c0.xi : c.eta - c0.eta));
        }
        EXPECT_LT(drift / std::max(pl.s.back(), 1e-12), 1e-5);
    }
}

TEST(Trace, StartOutsideDomain) {
    EXPECT_THROW(trace_slipline(catalog::prandtl(), Point2::cartesian(0.0, 2.0), Family::first), StartOutsideDomain);
}

TEST(Trace, CharacteristicFrameUnsupported) {
    EXPECT_THROW(trace_slipline(catalog::revuzhenko(1), Point2::characteristic(0.5, 0.5), Family::first),
                 UnsupportedField);
}

TEST(ClosedForm, PrandtlCycloidMatchesField) {
    const auto f = catalog::prandtl();
    const auto c = closed_form_family(f, Family::first, 0.3);
    for (const auto& p : c.sample(50)) {
        if (!f.contains(p, 1e-3)) continue;
        const double th = f.eval(p).theta;
        EXPECT_NEAR(p.y(), std::cos(2.0 * th), 1e-12);
    }
}

TEST(ClosedForm, SimpleWaveSecondFamilyIsStraight) {
    const auto f = catalog::simple_wave(FunctionParam::polynomial({0.5, 0.2}), 0, 0.0, 0.5, -pi / 2.0 + 0.05, -0.05);
    const auto c = closed_form_family(f, Family::second, -0.7);
    for (const auto& p : c.sample(11)) {
        if (f.contains(p, 1e-6)) {
            EXPECT_NEAR(f.eval(p).theta, -0.7, 1e-10);
        }
    }
}

TEST(ClosedForm, SpiralSimpleWaveCurve) {
    const double C = 1.0;
    const auto f = catalog::spiral_simple_wave(C, 0.0, 0.5);
    // r cos phi = C e^th (sin th + cos th) + tau sin th, r sin phi = C e^th (sin th - cos th) - tau cos th
    const double tau = 0.4;
    for (double th : {0.2, 0.6, 1.0}) {
        const double x = C * std::exp(th) * (std::sin(th) + std::cos(th)) + tau * std::sin(th);
        const double y = C * std::exp(th) * (std::sin(th) - std::cos(th)) - tau * std::cos(th);
        const Point2 p = Point2::cartesian(x, y);
        if (!f.contains(p, 1e-6)) continue;
        EXPECT_NEAR(f.eval(p).theta, th, 1e-9);
    }
}

TEST(ClosedForm, UnsupportedField) {
    EXPECT_THROW(closed_form_family(catalog::nadai_vortex(), Family::first, 1.0), UnsupportedField);
}

TEST(Envelope, RevuzhenkoRootAtHalf) {
    const double xi = 0.5;
    const double eta = revuzhenko_envelope_root(xi, -1, -1);
    EXPECT_NEAR(eta, -0.5, 1e-15);
    EXPECT_NEAR(2.0 * xi + eta / (xi * xi + eta * eta), 0.0, 1e-15);
    EXPECT_THROW(revuzhenko_envelope_root(0.6, -1, -1), NoEnvelope);
}

TEST(Envelope, RevuzhenkoProductNegative) {
    for (double xi : {0.1, 0.25, 0.45}) EXPECT_LT(xi * revuzhenko_envelope_root(xi, -1, -1), 0.0);
}

TEST(Envelope, RevuzhenkoNumericMatchesRoot) {
    const auto f = catalog::revuzhenko(-1);
    const auto e = envelope_numeric(f, Family::first, {0.05, 0.45, -12.0, -0.005}, 120);
    int stated = 0;
    for (const auto& st : e.params) {
        const double w = revuzhenko_envelope_root(st[0], -1, -1);
        if (std::abs(st[1] - w) < 1e-8) ++stated;
    }
    EXPECT_GT(stated, 50);
}

TEST(Envelope, TwoCirclesAreCircles) {
    const auto f = catalog::nadai_two_circles();
    const auto es = envelope_closed_form(f);
    ASSERT_EQ(es.size(), 2u);
    for (const auto& p : es[0].points) EXPECT_NEAR(std::hypot(p.x(), p.y()), 1.0, 1e-14);
    for (const auto& p : es[1].points) EXPECT_NEAR(std::hypot(p.x(), p.y()), std::sqrt(2.0), 1e-14);
}

TEST(Envelope, TwoCirclesNumericNearInnerCircle) {
    const auto f = catalog::nadai_two_circles(2.0, 2.0 * std::sqrt(2.0));
    const auto e = envelope_numeric(f, Family::first, {pi - 0.5, pi + 0.4, -0.5, 0.5}, 200, 1e-10, false);
    double worst = 0.0;
    for (const auto& p : e.points) worst = std::max(worst, std::abs(std::hypot(p.x(), p.y()) - 2.0));
    EXPECT_LT(worst, 1e-6);
}

TEST(Envelope, SpiralSimpleWaveRadius) {
    const auto es = envelope_closed_form(catalog::spiral_simple_wave(1.0));
    ASSERT_EQ(es.size(), 1u);
    const double phi = pi / 4.0;
    EXPECT_NEAR(1.0 * std::sqrt(2.0) * std::exp(phi - pi / 4.0), std::sqrt(2.0), 1e-15);
    bool hit = false;
    for (const auto& p : es[0].points) {
        const double r = std::hypot(p.x(), p.y()), ph = std::atan2(p.y(), p.x());
        EXPECT_NEAR(r, std::sqrt(2.0) * std::exp(ph - pi / 4.0), 1e-12);
        hit = hit || std::abs(ph - phi) < 1e-2;
    }
    EXPECT_TRUE(hit);
}

TEST(Envelope, ChannelSmallCHasNone) {
    EXPECT_THROW(envelope_closed_form(catalog::nadai_channel(0.5)), NoEnvelope);
    EXPECT_EQ(envelope_closed_form(catalog::nadai_channel(2.0)).size(), 2u);
}

TEST(Envelope, NumericWithoutSignChange) {
    const auto f = catalog::revuzhenko(-1);
    EXPECT_THROW(envelope_numeric(f, Family::first, {0.6, 0.9, 0.6, 0.9}, 40), NoSignChange);
}
