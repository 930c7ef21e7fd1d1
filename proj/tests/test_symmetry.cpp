#include <gtest/gtest.h>

#include <random>

#include "slipline/slipline.hpp"

using namespace slipline;

namespace {

void expect_vec_near(const Vec& a, const Vec& b, double tol, const std::string& what = {}) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << what << " component " << i;
}

Vec scaled(const Vec& v, double c) {
    Vec o(v);
    for (double& x : o) x *= c;
    return o;
}

}  // namespace

TEST(Operators, ApplyExamples) {
    const Vec p{2.0, 0.5, 0.3, 0.1};
    EXPECT_NEAR(apply(ops::X3(), [](const Vec& q) { return q[2]; }, p), 1.0, 1e-10);
    EXPECT_NEAR(apply(ops::X2(), [](const Vec& q) { return q[3]; }, p), 1.0, 1e-10);
    EXPECT_NEAR(apply(ops::X1(), [](const Vec& q) { return q[0] * q[0]; }, p), 8.0, 1e-9);
}

TEST(Commutators, SigmaThetaExamples) {
    const Vec p{1.0, 2.0, 0.3, 0.1};
    expect_vec_near(commutator(ops::X2(), ops::X4(1.0), p), {0, 0, -4, 0}, 1e-12, "[X2,X4]");
    expect_vec_near(commutator(ops::X3(), ops::X4(1.0), p), {2, -1, 0, -1}, 1e-12, "[X3,X4]");
    expect_vec_near(commutator(ops::X3(), ops::X4(1.0), p), scaled(ops::X2()(p), -1.0), 1e-12, "-X2/k");
}

TEST(Commutators, SigmaThetaRandomPointsFD) {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double k : {1.0, 0.5}) {
        for (int i = 0; i < 100; ++i) {
            const Vec p{2 * u(rng), 2 * u(rng), u(rng), u(rng)};
            expect_vec_near(commutator(ops::X2(), ops::X4(k), p, false), scaled(ops::X3()(p), -4.0 * k), 1e-6);
            expect_vec_near(commutator(ops::X3(), ops::X4(k), p, false), scaled(ops::X2()(p), -1.0 / k), 1e-6);
            expect_vec_near(commutator(ops::X2(), ops::X4(k), p, true), scaled(ops::X3()(p), -4.0 * k), 1e-12);
        }
    }
}

TEST(Commutators, VelocityAlgebra) {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(-0.9, 0.9);
    for (int i = 0; i < 50; ++i) {
        const Vec p{2 * u(rng), u(rng), u(rng), u(rng)};
        expect_vec_near(commutator(ops::Z2(), ops::Z4(), p), scaled(ops::Z3()(p), -4.0), 1e-10, "[Z2,Z4]");
        expect_vec_near(commutator(ops::Z3(), ops::Z4(), p), scaled(ops::Z2()(p), -1.0), 1e-10, "[Z3,Z4]");
        expect_vec_near(commutator(ops::Z1(), ops::Z5(), p), scaled(ops::Z5()(p), -1.0), 1e-12, "[Z1,Z5]");
        expect_vec_near(commutator(ops::Z3(), ops::Z5(), p), scaled(ops::Dv()(p), -1.0), 1e-12, "[Z3,Z5]");
    }
}

TEST(Commutators, GenerateVelocityFields) {
    const auto nad = vcat::nadai();
    const auto yak = vcat::yakhno(2.0, 0.0);
    const auto sen = vcat::ivlev_senashov(-pi / 2.0, 3.0);
    for (double x : {-1.0, 0.4})
        for (double y : {-0.6, 0.2}) {
            const Vec p{x, y, 0.3, -0.2};
            const auto wn = nad.eval(Point2::cartesian(x, y));
            const auto wy = yak.eval(Point2::cartesian(x, y));
            const auto ws = sen.eval(Point2::cartesian(x, y));
            expect_vec_near(commutator(ops::Z2(), ops::Z5(), p), {0, 0, -wn[0], -wn[1]}, 1e-12, "[Z2,Z5]");
            expect_vec_near(commutator(ops::Z4(), ops::Z5(), p), {0, 0, wy[0], wy[1]}, 1e-12, "[Z4,Z5]");
            const Vec nested = bracket(ops::Z2(), bracket(ops::Z4(), ops::Z5()), false)(p);
            expect_vec_near(nested, {0, 0, 2.0 * ws[0], 2.0 * ws[1]}, 1e-6, "[Z2,[Z4,Z5]]");
        }
}

TEST(Commutators, JacobiIdentity) {
    const Vec p{0.7, -0.3, 0.2, 0.5};
    const auto a = ops::X2(), b = ops::X4(1.0), c = ops::X1();
    Vec sum(4, 0.0);
    for (const auto& t : {std::array<LieOperator, 3>{a, b, c}, std::array<LieOperator, 3>{b, c, a},
                          std::array<LieOperator, 3>{c, a, b}}) {
        const Vec v = commutator(bracket(t[0], t[1]), t[2], p, false);
        for (std::size_t i = 0; i < 4; ++i) sum[i] += v[i];
    }
    expect_vec_near(sum, {0, 0, 0, 0}, 1e-6, "jacobi");
}

TEST(Invariance, PrandtlSubalgebra) {
    const auto f = catalog::prandtl();
    const auto op = ops::make("ds-2dx", ops::xy_sigma_theta, [](const Vec&) { return Vec{-2, 0, 1, 0}; }, {});
    for (double x : {-1.0, 0.5})
        for (double y : {-0.5, 0.7}) {
            const auto r = check_invariance(op, f, Point2::cartesian(x, y));
            EXPECT_NEAR(r.res_sigma, 0.0, 1e-15);
            EXPECT_NEAR(r.res_theta, 0.0, 1e-15);
            EXPECT_LT(check_invariance(tag_operator(f), f, Point2::cartesian(x, y)).max_abs(), 1e-12);
        }
    EXPECT_GT(check_invariance(ops::X1(), f, Point2::cartesian(0.5, 0.5)).max_abs(), 1e-3);
}

TEST(Invariance, CatalogTags) {
    for (const auto& name : registry::stress_names()) {
        const auto f = registry::make_stress(name);
        if (!f.tag) continue;
        const auto pts = slipline::detail::lattice(registry::default_region(f), 6);
        int checked = 0;
        for (const auto& p : pts) {
            if (!f.contains(p, 1e-2)) continue;
            EXPECT_LT(check_invariance(tag_operator(f), f, p).max_abs(), 1e-9) << name;
            ++checked;
        }
        EXPECT_GT(checked, 0) << name;
    }
}

TEST(Invariance, OutsideDomain) {
    EXPECT_THROW(check_invariance(ops::X3(), catalog::prandtl(), Point2::cartesian(0.0, 3.0)), DomainError);
}

TEST(Hodograph, PrandtlSolvesLinearSystem) {
    const double k = 0.5;
    auto x = [k](double s, double t) { return -s / k - std::sin(2.0 * t); };
    auto y = [](double, double t) { return std::cos(2.0 * t); };
    for (double s : {-0.4, 0.3})
        for (double t : {-1.2, -0.4}) {
            const auto r = hodograph_residual(x, y, s, t, k);
            EXPECT_LT(std::max(std::abs(r[0]), std::abs(r[1])), 1e-9);
        }
    const auto bad = hodograph_residual([](double s, double) { return s; }, [](double, double t) { return t; }, 0.3,
                                        -0.4, k);
    EXPECT_GT(std::max(std::abs(bad[0]), std::abs(bad[1])), 1e-2);
}

TEST(Revuzhenko, OperatorChecks) {
    for (int sign : {1, -1})
        for (double xi : {0.3, 0.8})
            for (double eta : {-0.6, 0.4}) {
                const auto c = revuzhenko_operator_check(xi, eta, sign);
                EXPECT_LT(c.y1_on_solution, 1e-9);
                EXPECT_LT(c.eq_u, 1e-8);
                EXPECT_LT(c.pushforward, 1e-6);
            }
    EXPECT_THROW(revuzhenko_operator_check(0.0, 0.3), SingularCoords);
}

TEST(Revuzhenko, EqUDetectsWrongSolution) {
    EXPECT_GT(std::abs(eq_u_residual([](double a, double b) { return b / a + 0.1 * a; }, 0.5, 0.7)), 1e-3);
}
