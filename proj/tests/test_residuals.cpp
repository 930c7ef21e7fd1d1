#include <gtest/gtest.h>

#include "slipline/slipline.hpp"

using namespace slipline;

namespace {

StressField constant_field(double s, double t) {
    StressField f;
    f.name = "constant";
    f.frame = Frame::cartesian;
    f.k = 0.5;
    f.domain_fn = [](const Point2&, double) { return true; };
    f.eval_fn = [s, t](const Point2&) { return StressState{s, t, 0.5}; };
    f.partials_fn = [](const Point2&) { return Partials{}; };
    return f;
}

double mx(const num::Vec2& r) { return std::max(std::abs(r[0]), std::abs(r[1])); }

}  // namespace

TEST(Residual, PrandtlInterior) {
    const auto f = catalog::prandtl();
    for (double x : {-1.5, 0.0, 1.2})
        for (double y : {-0.9, 0.1, 0.8}) {
            EXPECT_LT(mx(residual_cartesian(f, Point2::cartesian(x, y))), 1e-10);
            EXPECT_LT(mx(residual_cartesian(f, Point2::cartesian(x, y), DerivMode::fd)), 1e-4 * f.k);
        }
}

TEST(Residual, ConstantField) {
    const auto f = constant_field(0.7, -0.3);
    EXPECT_EQ(mx(residual_cartesian(f, Point2::cartesian(0.4, 0.4))), 0.0);
    EXPECT_LT(mx(residual_cartesian(f, Point2::cartesian(0.4, 0.4), DerivMode::fd)), 1e-14);
}

TEST(Residual, InjectedSigmaDefect) {
    const double eps = 0.01;
    const auto f = perturbed(catalog::prandtl(), eps);
    for (double x : {-1.0, 0.5, 1.5}) {
        const auto r = residual_cartesian(f, Point2::cartesian(x, 0.2));
        EXPECT_NEAR(r[0], 2.0 * eps * x, 1e-12);
        EXPECT_NEAR(r[1], 0.0, 1e-12);
    }
}

TEST(Residual, PolarFieldsAndCrossFrame) {
    for (const auto& f : {catalog::nadai_vortex(), catalog::nadai_two_circles(), catalog::nadai_cavity()}) {
        for (double r : {1.1, 1.3})
            for (double phi : {-1.0, 0.6}) {
                const Point2 p = Point2::polar(r, phi);
                if (!f.contains(p, 1e-2)) continue;
                EXPECT_LT(mx(residual_polar(f, p)), 1e-9) << f.name;
                EXPECT_LT(mx(residual_cartesian(f, p)), 1e-9) << f.name;
            }
    }
}

TEST(Residual, SimpleWavePolarParity) {
    // theta = phi, sigma = -2k theta solves the polar system; the sign-flipped pair does not
    const double k = 0.5;
    auto make = [k](double sgn) {
        StressField f;
        f.name = "ray_fan";
        f.frame = Frame::polar;
        f.k = k;
        f.domain_fn = [](const Point2& q, double) { return q.r() > 0.0; };
        f.eval_fn = [k, sgn](const Point2& q) { return StressState{sgn * 2.0 * k * q.phi(), q.phi(), k}; };
        f.partials_fn = [k, sgn](const Point2&) { return Partials{0.0, sgn * 2.0 * k, 0.0, 1.0}; };
        return f;
    };
    const Point2 p = Point2::polar(1.3, 0.4);
    EXPECT_LT(mx(residual_polar(make(-1.0), p)), 1e-15);
    EXPECT_NEAR(mx(residual_polar(make(1.0), p)), 4.0 * k, 1e-14);
}

TEST(Sweep, PrandtlGrid) {
    const auto f = catalog::prandtl();
    const auto rep = sweep(f, System::cartesian, {-2.0, 2.0, -0.99, 0.99, Frame::cartesian}, 50);
    EXPECT_EQ(rep.evaluated + rep.skipped, 2500);
    EXPECT_GT(rep.evaluated, 2000);
    EXPECT_LT(rep.max_abs, 1e-9);
    EXPECT_LE(rep.mean_abs, rep.max_abs);
}

TEST(Sweep, RevuzhenkoChain) {
    const auto f = catalog::revuzhenko(1);
    const auto rep = sweep(f, System::polar2, registry::default_region(f), 20, DerivMode::fd);
    EXPECT_LT(rep.max_abs, 1e-7);
}

TEST(Sweep, Theta4WithinQuadratureTolerance) {
    const auto vf = vcat::theta4(0.1);
    const auto rep = sweep(vf, vf.background, registry::strip_region(), 30);
    EXPECT_GT(rep.evaluated, 500);
    EXPECT_LT(rep.max_abs, 10.0 * vf.params.at("quad_tol"));
}

TEST(Sweep, DefectVisibleInReport) {
    const auto f = perturbed(catalog::nadai_vortex(), 1e-3, true);
    const auto rep = sweep(f, System::polar2, registry::default_region(catalog::nadai_vortex()), 10);
    EXPECT_GT(rep.max_abs, 1e-4);
}

TEST(Sweep, ThreadCountDoesNotChangeResult) {
    const auto f = catalog::nadai_two_circles();
    const Region reg = registry::default_region(f);
    const auto a = sweep(f, System::polar2, reg, 20, DerivMode::analytic, 1e-2, 1);
    const auto b = sweep(f, System::polar2, reg, 20, DerivMode::analytic, 1e-2, 4);
    EXPECT_EQ(a.max_abs, b.max_abs);
    EXPECT_EQ(a.mean_abs, b.mean_abs);
    EXPECT_EQ(a.evaluated, b.evaluated);
}

TEST(Sweep, RejectsTinyGrid) {
    EXPECT_THROW(sweep(catalog::prandtl(), System::cartesian, registry::strip_region(), 1), ConfigError);
}

TEST(Report, JsonFields) {
    const auto rep = sweep(catalog::prandtl(), System::cartesian, registry::strip_region(), 5);
    const auto j = to_json(rep);
    EXPECT_EQ(j.at("field"), "prandtl");
    EXPECT_EQ(j.at("system"), "cartesian");
    EXPECT_TRUE(j.contains("max_abs_residual"));
}
