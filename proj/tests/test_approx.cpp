#include <jackson/approx.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace jackson;
using namespace jackson::sets;
using namespace jackson::extremal;
using namespace jackson::approx;

namespace {

const Mesh& disk_mesh()
{
    static const Mesh m = build_mesh(disk(), MeshRole::boundary(), 2 * pi / 512);
    return m;
}

const NodeSequence& disk_nodes()
{
    static const NodeSequence s = leja_points(disk_mesh(), 40);
    return s;
}

} // namespace

TEST(BestApprox, PolynomialsAreExact)
{
    const auto f = poly({1.0, cplx(0, 2), -3.0, 0.5}).sample(disk_mesh().points);
    for (int n : {3, 5}) EXPECT_LE(best_approx(disk_mesh(), f, n, disk_nodes()).error, 1e-10);
    EXPECT_GT(best_approx(disk_mesh(), f, 2, disk_nodes()).error, 0.4);
}

TEST(BestApprox, CauchyKernelOnDiskMatchesClosedForm)
{
    // the image of the circle under 1/(a - z) is a circle of radius
    // 1/(|a|^2 - 1); multiplying by z^n/a^n gives dist = 1/(|a|^n (|a|^2 - 1))
    const auto f = cauchy(2.0).sample(disk_mesh().points);
    for (int n = 0; n <= 10; ++n) {
        const auto r = best_approx(disk_mesh(), f, n, disk_nodes());
        const double exact = 1.0 / (3.0 * std::pow(2.0, n));
        EXPECT_NEAR(r.error / exact, 1.0, 1e-6) << n;
        EXPECT_LE(r.lower, r.error);
        EXPECT_GE(r.error, 1.0 / (3.0 * std::pow(2.0, n + 1)));
        EXPECT_LE(r.error, 1.0 / std::pow(2.0, n + 1));
    }
}

TEST(BestApprox, ErrorMatchesRecomputedSup)
{
    const Mesh m = build_mesh(segment(), MeshRole::boundary(), 0.01);
    const auto s = leja_points(m, 12);
    const auto f = cauchy(cplx(0.2, 0.5)).sample(m.points);
    const auto r = best_approx(m, f, 12, s);
    EXPECT_NEAR(sup_error(r.approximant, m.points, f), r.error, 1e-12 * r.error);
    EXPECT_EQ(r.approximant.degree(), 12);
}

TEST(BestApprox, SequenceIsNonincreasing)
{
    const Mesh m = build_mesh(star(3), MeshRole::boundary(), 0.01);
    const auto s = leja_points(m, 20);
    const auto f = abs_fn().sample(m.points);
    const auto seq = best_approx_sequence(m, f, 20, make_basis(s));
    for (std::size_t n = 1; n < seq.size(); ++n) EXPECT_LE(seq[n].error, seq[n - 1].error);
}

TEST(BestApprox, Rejections)
{
    std::vector<cplx> f(disk_mesh().size(), 1.0);
    f[3] = cplx(std::numeric_limits<double>::infinity(), 0);
    EXPECT_THROW(best_approx(disk_mesh(), f, 3, disk_nodes()), rejection);
    const Mesh small = build_mesh(disk(), MeshRole::boundary(), 2 * pi / 32);
    std::vector<cplx> g(small.size(), 1.0);
    EXPECT_THROW(best_approx(small, g, 5, leja_points(small, 5)), rejection);
}

TEST(JacksonNorm, PolynomialHasNoSupTerm)
{
    const auto f = poly({0.0, 1.0}).sample(disk_mesh().points);
    const auto j = jackson_norm(disk_mesh(), f, 2.0, 8, disk_nodes());
    EXPECT_NEAR(j.value, 1.0, 1e-9);
    EXPECT_LT(j.sup_term, 1e-9);
    EXPECT_FALSE(j.tail_flag);
}

TEST(JacksonNorm, CauchyKernelAttainedEarly)
{
    const auto f = cauchy(3.0).sample(disk_mesh().points);
    const auto j = jackson_norm(disk_mesh(), f, 2.0, 30, disk_nodes());
    EXPECT_TRUE(std::isfinite(j.value));
    EXPECT_LE(j.attained_at, 4);
    EXPECT_FALSE(j.tail_flag);
    // n^2 / (8 * 3^n) peaks at n = 2
    EXPECT_NEAR(j.sup_term, 4.0 / 72.0, 1e-6);
}

TEST(JacksonNorm, NonSmoothFunctionFlagsTail)
{
    const Mesh m = build_mesh(disk(), MeshRole::interior_fill(), 0.1);
    const auto s = leja_points(m, 12);
    const auto f = abs_fn().sample(m.points);
    for (double ell : {1.0, 2.0}) EXPECT_TRUE(jackson_norm(m, f, ell, 12, s).tail_flag) << ell;
}

TEST(JacksonNorm, NondecreasingInEll)
{
    const Mesh m = build_mesh(segment(), MeshRole::boundary(), 0.01);
    const auto s = leja_points(m, 16);
    const auto f = abs_fn().sample(m.points);
    double prev = 0.0;
    for (double ell : {0.0, 0.5, 1.0, 2.0}) {
        const double v = jackson_norm(m, f, ell, 16, s).value;
        EXPECT_GE(v, prev);
        prev = v;
    }
}

TEST(CauchyBracket, DiskAtTwo)
{
    const ExtremalSolver solver(disk_mesh(), 20);
    const auto b = cauchy_kernel_bracket(solver, 2.0, 5);
    EXPECT_NEAR(b.lower, 1.0 / (3.0 * 64.0), 1e-6);
    EXPECT_NEAR(b.upper, 1.0 / 64.0, 1e-6);
    EXPECT_TRUE(b.holds());
}

TEST(CauchyBracket, SegmentAndFarPole)
{
    const Mesh m = build_mesh(segment(-2.0, 2.0), MeshRole::boundary(), 0.01);
    const ExtremalSolver solver(m, 20);
    const auto b = cauchy_kernel_bracket(solver, 3.0, 2);
    EXPECT_NEAR(b.upper, 1.0 / (1.0 * b.phi_upper), 1e-12);
    EXPECT_TRUE(b.holds());
    const auto far = cauchy_kernel_bracket(solver, 30.0, 2);
    EXPECT_TRUE(far.holds());
    EXPECT_LT(far.measured, 1e-4);
    EXPECT_LT(far.upper - far.lower, 1e-4);
}

TEST(Lagrange, ReproducesPolynomials)
{
    const Mesh m = build_mesh(star(4), MeshRole::boundary(), 0.02);
    const auto s = leja_points(m, 7);
    const auto f = poly({cplx(1, 1), 0.0, -2.0, cplx(0, 3), 0.0, 1.0});
    const auto vals = f.sample(s.nodes);
    std::mt19937 rng(3);
    std::uniform_real_distribution<double> u(-1.5, 1.5);
    for (int i = 0; i < 20; ++i) {
        const cplx z(u(rng), u(rng));
        EXPECT_LT(std::abs(lagrange_interp(s, vals, z) - f(z)), 1e-9 * std::max(1.0, std::abs(f(z))));
    }
}

TEST(Lagrange, CauchyClosedFormMatchesNewton)
{
    const Mesh m = build_mesh(segment(), MeshRole::boundary(), 0.01);
    const auto s = leja_points(m, 10);
    const cplx eta(2.0, 1.0);
    const auto vals = cauchy(eta).sample(s.nodes);
    for (cplx z : {cplx(0.3, 0), cplx(-0.9, 0.1), cplx(1.5, -0.5)})
        EXPECT_LT(std::abs(lagrange_interp(s, vals, z) - lagrange_cauchy(s, eta, z)), 1e-9);
    for (auto w : s.nodes) EXPECT_LT(std::abs(lagrange_cauchy(s, eta, w) - 1.0 / (eta - w)), 1e-14);
    EXPECT_THROW(lagrange_cauchy(s, eta, eta), rejection);
}

TEST(Lagrange, SingleNodeIsConstant)
{
    const auto s = leja_points(disk_mesh(), 0);
    const std::vector<cplx> v = {cplx(2, -1)};
    EXPECT_EQ(lagrange_interp(s, v, cplx(5, 5)), cplx(2, -1));
}

TEST(InterpolationBound, DiskBoundHolds)
{
    const auto s = leja_points(disk_mesh(), 6);
    const auto r = lemma33_bound(disk(), s, 4.0, 2.0, oracle_green(disk()));
    EXPECT_NEAR(r.d, 1.0, 0.02);
    EXPECT_NEAR(r.level_distance, 1.0, 0.02);
    EXPECT_NEAR(r.constant, 4.0, 0.05);
    EXPECT_GE(r.slack, 1.0);
}

TEST(InterpolationBound, SegmentBoundHolds)
{
    const Mesh m = build_mesh(segment(), MeshRole::boundary(), 0.005);
    const auto s = leja_points(m, 8);
    const auto g = oracle_green(segment());
    const cplx zeta(2, 1);
    const auto r = lemma33_bound(segment(), s, zeta, std::sqrt(std::exp(g(zeta))), g);
    EXPECT_GE(r.slack, 0.95);
}

TEST(InterpolationBound, BoundDivergesAsRhoApproachesOne)
{
    const auto s = leja_points(disk_mesh(), 6);
    const auto g = oracle_green(disk());
    const double b1 = lemma33_bound(disk(), s, 4.0, 1.5, g).bound;
    const double b2 = lemma33_bound(disk(), s, 4.0, 1.01, g, 0.001).bound;
    EXPECT_GT(b2, 2 * b1);
    EXPECT_THROW(lemma33_bound(disk(), s, 4.0, 5.0, g), rejection);
}

TEST(Runge, DiskCauchyKernel)
{
    const ExtremalSolver solver(disk_mesh(), 11);
    const auto r = runge_approximant(disk(), cauchy(3.0), 1.0, 10, solver);
    EXPECT_NEAR(r.phi / std::pow(1.5, 11), 1.0, 1e-4);
    EXPECT_NEAR(r.constant, 28.0 / pi * 16.0, 1e-12);
    EXPECT_NEAR(r.f_norm, 1.0, 1e-9);
    EXPECT_LE(r.approx.error, r.certified_bound);
    EXPECT_EQ(r.contour.pieces_per_edge, static_cast<int>(std::ceil(r.phi)));
    EXPECT_LE(r.contour.delta_tilde, r.contour.h / r.phi);
}

TEST(Runge, ContourInvariants)
{
    const Mesh m = build_mesh(star(4), MeshRole::boundary(), 0.01);
    const ExtremalSolver solver(m, 6);
    const auto r = runge_approximant(star(4), cauchy(2.0 * std::polar(1.0, pi / 4)), 0.5, 5, solver);
    double len = 0.0;
    for (const auto& pc : r.contour.pieces) {
        len += std::abs(pc.end - pc.start);
        EXPECT_GE(distance(star(4), pc.zeta), 0.25 - 1e-12);
        EXPECT_NEAR(std::abs(pc.end - pc.start), r.contour.delta_tilde, 1e-12);
    }
    EXPECT_NEAR(len, r.contour.length, 1e-9);
    EXPECT_LE(r.approx.error, r.certified_bound);
    // the rational stage is a quadrature of the Cauchy integral
    EXPECT_LT(r.rational_error, 0.1);
}

TEST(Runge, FinitePointSetIsInterpolated)
{
    const auto e = points({0.0, 1.0, cplx(0, 1), cplx(-1, -1), cplx(0.5, 0.2)});
    const Mesh m = build_mesh(e, MeshRole::boundary(), 0.1);
    const auto s = leja_points(m, 4);
    const ExtremalSolver solver(m, 4);
    const auto r = runge_approximant(e, cauchy(3.0), 0.5, 4, solver);
    EXPECT_EQ(r.approx.method, Method::interpolation);
    EXPECT_LT(r.approx.error, 1e-12);
}

TEST(Glue, ZeroFunctionGivesZero)
{
    GlueOptions opt;
    opt.n_max = 12;
    opt.q_degree_max = 24;
    const auto r = glue_union_approx(disk(-2.0), disk(2.0), constant_fn(0.0), opt);
    for (double e : r.errors) EXPECT_LT(e, 1e-12);
    EXPECT_DOUBLE_EQ(r.norm_ratio, 1.0);
}

TEST(Glue, IndicatorDecaysAndGluedErrorsShrink)
{
    GlueOptions opt;
    opt.n_max = 24;
    opt.q_degree_max = 48;
    const auto r = glue_union_approx(disk(-2.0), disk(2.0), constant_fn(1.0), opt);
    EXPECT_GT(r.rho_hat, 1.0);
    EXPECT_GT(r.r_squared, 0.95);
    EXPECT_NEAR(r.x, 5.0, 0.1);
    ASSERT_GE(r.errors.size(), 2u);
    for (std::size_t i = 0; i < r.errors.size(); ++i) {
        EXPECT_LE(r.r_on_b[i], r.p_on_b[i] * r.q_errors[i] * (1 + 1e-6) + 1e-12);
        if (i > 0) {
            EXPECT_LT(r.errors[i], r.errors[i - 1]);
        }
    }
}
