#include <gtest/gtest.h>

#include "slipline/slipline.hpp"

using namespace slipline;

namespace {

const StressField& prandtl() {
    static const StressField f = catalog::prandtl();
    return f;
}

double max_res(const VelocityField& vf, const Point2& p, DerivMode mode = DerivMode::analytic) {
    const auto r = velocity_residual(vf, vf.background, p, mode);
    return std::max(std::abs(r[0]), std::abs(r[1]));
}

}  // namespace

TEST(VelocityResidual, TrivialFields) {
    const auto rot = vcat::rigid(0.0, 0.0, 1.0);
    const auto tr = vcat::rigid(1.0, 0.0, 0.0);
    for (double x : {-1.0, 0.5})
        for (double y : {-0.6, 0.3}) {
            EXPECT_LT(max_res(rot, Point2::cartesian(x, y)), 1e-15);
            EXPECT_LT(max_res(tr, Point2::cartesian(x, y)), 1e-15);
        }
    const auto w = rot.eval(Point2::cartesian(0.3, 0.4));
    EXPECT_DOUBLE_EQ(w[0], 0.4);
    EXPECT_DOUBLE_EQ(w[1], -0.3);
}

TEST(Nadai, ResidualAndPlates) {
    const auto vf = vcat::nadai();
    for (double x : {-1.0, 0.0, 2.0}) {
        EXPECT_LT(max_res(vf, Point2::cartesian(x, 0.5)), 1e-12);
        EXPECT_LT(max_res(vf, Point2::cartesian(x, 0.5), DerivMode::fd), 1e-8);
        for (double y : {1.0, -1.0}) {
            const auto w = vf.eval(Point2::cartesian(x, y));
            EXPECT_NEAR(w[0], x, 1e-15);
            EXPECT_NEAR(w[1], -y, 1e-15);
        }
    }
}

TEST(Nadai, Dissipation) {
    const auto vf = vcat::nadai();
    EXPECT_NEAR(dissipation_at(vf, prandtl(), Point2::cartesian(0.3, 0.0)), 1.0, 1e-12);
    for (double y : {-0.9, -0.2, 0.6})
        EXPECT_NEAR(dissipation_at(vf, prandtl(), Point2::cartesian(0.3, y)), 1.0 / std::sqrt(1.0 - y * y), 1e-12);
    for (double y : {-0.95, 0.0, 0.7}) EXPECT_TRUE(dissipation_sign_ok(vf, prandtl(), Point2::cartesian(-3.0, y)));
}

TEST(Yakhno, PlatesResidualDissipation) {
    const auto vf = vcat::yakhno(3.0, pi);
    for (double x : {-1.0, 0.5, 2.0}) {
        const auto up = vf.eval(Point2::cartesian(x, 1.0)), lo = vf.eval(Point2::cartesian(x, -1.0));
        EXPECT_NEAR(up[0], x * x, 1e-12);
        EXPECT_NEAR(lo[0], x * x, 1e-12);
        EXPECT_NEAR(up[1], -(2.0 * x - pi), 1e-12);
        EXPECT_NEAR(lo[1], 2.0 * x - pi, 1e-12);
        for (double y : {-0.7, 0.1, 0.8}) {
            const Point2 p = Point2::cartesian(x, y);
            EXPECT_LT(max_res(vf, p), 1e-12);
            const double s = std::sqrt(1.0 - y * y);
            EXPECT_NEAR(dissipation_at(vf, prandtl(), p), 2.0 * (x - 2.0 * s) / s, 1e-11);
        }
    }
    EXPECT_TRUE(dissipation_sign_ok(vf, prandtl(), Point2::cartesian(3.0, 0.0)));
    EXPECT_FALSE(dissipation_sign_ok(vf, prandtl(), Point2::cartesian(0.0, 0.0)));
}

TEST(IvlevSenashov, FormAndResidual) {
    const auto vf = vcat::ivlev_senashov(0.3, 1.2);
    const double x = 0.7, y = 0.4, s = std::sqrt(1.0 - y * y);
    const auto w = vf.eval(Point2::cartesian(x, y));
    EXPECT_NEAR(w[0], x * y + std::asin(y) - y * s + 0.3, 1e-14);
    EXPECT_NEAR(w[1], -(x * x + y * y) / 2.0 + 1.2, 1e-14);
    EXPECT_LT(max_res(vf, Point2::cartesian(x, y)), 1e-12);
}

TEST(ThetaFamilies, ResidualOnGrid) {
    const Region strip{-2.0, 2.0, -0.99, 0.99, Frame::cartesian};
    for (const auto& vf : {vcat::theta3(0.3, 1.2), vcat::theta4(0.1), vcat::theta2(0.4, -1.0, vcat::Theta2Branch::smooth),
                           vcat::theta2(0.4, -1.0, vcat::Theta2Branch::printed)}) {
        const auto rep = sweep(vf, vf.background, strip, 50, DerivMode::fd);
        EXPECT_GT(rep.evaluated, 2000) << vf.name;
        EXPECT_LT(rep.max_abs, 1e-7) << vf.name;
    }
}

TEST(Theta2, PlateVelocities) {
    const double c2 = -1.0, g = pi / 2.0 - 1.0;
    const auto sm = vcat::theta2(0.0, c2, vcat::Theta2Branch::smooth);
    const auto pa = vcat::theta2(0.0, c2, vcat::Theta2Branch::printed);
    for (double x : {-1.0, 0.0, 1.5}) {
        const double e = std::exp(-x / 2.0);
        EXPECT_NEAR(sm.eval(Point2::cartesian(x, 1.0))[0], c2 * g * e, 1e-12);
        EXPECT_NEAR(sm.eval(Point2::cartesian(x, -1.0))[0], -c2 * g * e, 1e-12);
        EXPECT_NEAR(pa.eval(Point2::cartesian(x, 1.0))[0], c2 * g * e, 1e-12);
        EXPECT_NEAR(pa.eval(Point2::cartesian(x, -1.0))[0], c2 * g * e, 1e-12);
    }
}

TEST(Theta2, SmoothNearAxisMatchesSeries) {
    // arcsin y - y/(1+s) = y/2 + y^3/... ; the field is continuous through y = 0
    const auto sm = vcat::theta2(0.0, -1.0, vcat::Theta2Branch::smooth);
    const auto a = sm.eval(Point2::cartesian(0.2, 1e-7)), b = sm.eval(Point2::cartesian(0.2, -1e-7));
    EXPECT_NEAR(a[0], b[0], 1e-6);
    EXPECT_NEAR(a[1], b[1], 1e-6);
}

TEST(Theta2, DissipationSigns) {
    const auto pa = vcat::theta2(0.0, -1.0, vcat::Theta2Branch::printed);
    const auto sm = vcat::theta2(0.0, -1.0, vcat::Theta2Branch::smooth);
    for (double y : {-0.95, -0.4, 0.3, 0.9})
        for (double x : {-1.0, 1.0}) {
            const Point2 p = Point2::cartesian(x, y);
            const double D = dissipation_at(pa, prandtl(), p);
            EXPECT_GE(D, 0.0);
            EXPECT_NEAR(D, vcat::theta2_dissipation_closed(x, y, -1.0), 1e-10);
        }
    // the continued branch is odd in y, so D changes sign across the axis
    const double up = dissipation_at(sm, prandtl(), Point2::cartesian(0.0, 0.5));
    const double lo = dissipation_at(sm, prandtl(), Point2::cartesian(0.0, -0.5));
    EXPECT_LT(up * lo, 0.0);
    EXPECT_NEAR(up, -lo, 1e-12);
}

TEST(SimpleWaveVelocity, UnitNormalField) {
    // first family straight (odd n): U along the lines, V across them
    const auto bg = registry::make_stress("simple_wave", {{"n", 1}, {"relative", true}, {"theta_lo", -pi / 4.0},
                                                          {"theta_hi", pi / 4.0}});
    const auto vf = vcat::simple_wave_velocity(FunctionParam::constant(0.0), FunctionParam::constant(1.0),
                                               vcat::StraightFamily::first, bg);
    for (double x : {0.5, 1.5})
        for (double y : {0.4, 1.2}) {
            const Point2 p = Point2::cartesian(x, y);
            const double th = bg.eval(p).theta;
            const auto w = vf.eval(p);
            EXPECT_NEAR(w[0], -std::sin(th), 1e-12);
            EXPECT_NEAR(w[1], std::cos(th), 1e-12);
            EXPECT_LT(max_res(vf, p), 1e-10);
        }
}

TEST(SimpleWaveVelocity, PolynomialProfilesBothParities) {
    for (int n : {0, 1}) {
        const auto vf = registry::make_velocity(
            "simple_wave_velocity", {{"n", n}, {"U", {{"poly", {0.2, 0.5}}}}, {"V", {{"poly", {1.0, -0.3, 0.1}}}}});
        const auto rep = sweep(vf, vf.background, {0.2, 2.0, 0.2, 2.0, Frame::cartesian}, 12, DerivMode::fd);
        EXPECT_GT(rep.evaluated, 50);
        EXPECT_LT(rep.max_abs, 1e-8) << "n=" << n;
    }
}

TEST(SimpleWaveVelocity, BackgroundMismatch) {
    EXPECT_THROW(vcat::simple_wave_velocity(FunctionParam::constant(0.0), FunctionParam::constant(1.0),
                                            vcat::StraightFamily::second, catalog::prandtl()),
                 BackgroundMismatch);
    const auto even = catalog::centered_fan(0);
    EXPECT_THROW(vcat::simple_wave_velocity(FunctionParam::constant(0.0), FunctionParam::constant(1.0),
                                            vcat::StraightFamily::first, even),
                 BackgroundMismatch);
}

TEST(Streamline, NadaiInvariantConserved) {
    const auto vf = vcat::nadai();
    const auto sl = trace_streamline(vf, Point2::cartesian(0.5, 0.3), 1e-3, 1.0);
    ASSERT_GT(sl.size(), 100u);
    const double c0 = nadai_stream_invariant(0.5, 0.3);
    for (const auto& p : sl.points) EXPECT_NEAR(nadai_stream_invariant(p.x(), p.y()), c0, 1e-4);
}

TEST(Streamline, YakhnoInvariantConserved) {
    const auto vf = vcat::yakhno();
    const auto sl = trace_streamline(vf, Point2::cartesian(1.5, -0.2), 1e-3, 1.0);
    ASSERT_GT(sl.size(), 100u);
    const double c0 = yakhno_stream_invariant(1.5, -0.2);
    for (const auto& p : sl.points) EXPECT_NEAR(yakhno_stream_invariant(p.x(), p.y()), c0, 1e-4);
}

TEST(Streamline, HorizontalForUniformFlow) {
    const auto vf = vcat::rigid(1.0, 0.0, 0.0);
    const auto sl = trace_streamline(vf, Point2::cartesian(0.0, 0.25), 1e-2, 1.0);
    for (const auto& p : sl.points) EXPECT_NEAR(p.y(), 0.25, 1e-14);
    EXPECT_NEAR(sl.points.back().x(), 1.0, 1e-2);
}

TEST(Streamline, Stagnation) {
    EXPECT_THROW(trace_streamline(vcat::rigid(0.0, 0.0, 1.0), Point2::cartesian(0.0, 0.0)), StagnationPoint);
}

TEST(Dissipation, IndeterminateAtIsotropy) {
    // a background whose deviator vanishes cannot decide the sign
    StressField iso = catalog::prandtl();
    iso.k = 1e-300;
    iso.eval_fn = [](const Point2&) { return StressState{0.0, 0.0, 0.0}; };
    EXPECT_THROW(dissipation_sign_ok(vcat::nadai(), iso, Point2::cartesian(0.0, 0.0)), IndeterminateAtStressIsotropy);
}
