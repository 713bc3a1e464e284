#include <jackson/extremal.hpp>

#include <gtest/gtest.h>

using namespace jackson;
using namespace jackson::sets;
using namespace jackson::extremal;

namespace {

const Mesh& disk_mesh()
{
    static const Mesh m = build_mesh(disk(), MeshRole::boundary(), 2 * pi / 512);
    return m;
}

const Mesh& segment_mesh()
{
    static const Mesh m = build_mesh(segment(), MeshRole::boundary(), 0.005);
    return m;
}

} // namespace

TEST(Leja, StartsAtLargestModulusAndIsDeterministic)
{
    const Mesh m = build_mesh(segment(cplx(-1, 0), cplx(3, 0)), MeshRole::boundary(), 0.05);
    const auto a = leja_points(m, 20);
    const auto b = leja_points(m, 20);
    EXPECT_EQ(a.nodes.front(), cplx(3, 0));
    EXPECT_EQ(a.nodes[1], cplx(-1, 0));
    EXPECT_EQ(a.mesh_index, b.mesh_index);
    std::set<std::size_t> uniq(a.mesh_index.begin(), a.mesh_index.end());
    EXPECT_EQ(uniq.size(), a.nodes.size());
}

TEST(Leja, SupNormMatchesDirectComputation)
{
    const auto s = leja_points(segment_mesh(), 12);
    EXPECT_NEAR(s.log_nodal_supnorm, log_nodal_supnorm(segment_mesh().points, s.nodes), 1e-12);
    // capacity of [-1,1] is 1/2
    EXPECT_NEAR(s.capacity_estimate(), 0.5, 0.1);
}

TEST(Leja, MeshExhaustedIsRejected)
{
    const Mesh m = mesh_from_points({cplx(0, 0), cplx(1, 0), cplx(0, 1)}, 0.1);
    EXPECT_THROW(leja_points(m, 3), rejection);
    EXPECT_NO_THROW(leja_points(m, 2));
}

TEST(Leja, VandermondeWithinFactorOfFekete)
{
    const Mesh m = build_mesh(star(3), MeshRole::boundary(), 0.15);
    for (int n : {2, 3, 4}) {
        const auto l = leja_points(m, n);
        const auto f = fekete_points_exact(m, n);
        const double lv = log_vandermonde(l.nodes), fv = log_vandermonde(f.nodes);
        EXPECT_LE(lv, fv + 1e-12);
        EXPECT_GE(lv, fv - n * n * std::log(2.0));
    }
}

TEST(Fekete, CircleGivesRegularPolygons)
{
    const Mesh m = build_mesh(disk(), MeshRole::boundary(), 2 * pi / 24);
    ASSERT_EQ(m.size(), 24u);
    for (int n : {2, 3}) {
        const auto f = fekete_points_exact(m, n);
        const double side = 2 * std::sin(pi / (n + 1));
        for (std::size_t i = 0; i < f.nodes.size(); ++i) {
            double nearest = inf;
            for (std::size_t j = 0; j < f.nodes.size(); ++j)
                if (i != j) nearest = std::min(nearest, std::abs(f.nodes[i] - f.nodes[j]));
            EXPECT_NEAR(nearest, side, 1e-12);
        }
    }
    const auto s = fekete_points_exact(build_mesh(segment(), MeshRole::boundary(), 0.2), 1);
    EXPECT_NEAR(std::abs(s.nodes[0] - s.nodes[1]), 2.0, 1e-12);
}

TEST(Fekete, GuardRejectsLargeSearch)
{
    EXPECT_THROW(fekete_points_exact(disk_mesh(), 6), rejection);
}

TEST(GreenEstimate, DiskAtDegree200)
{
    const auto s = leja_points(disk_mesh(), 200);
    EXPECT_NEAR(green_estimate(s, 2.0), std::log(2.0), 0.02);
    EXPECT_EQ(green_estimate(s, 0.0), 0.0);
}

TEST(GreenEstimate, OracleFunctionRejectsSetWithoutOracle)
{
    EXPECT_THROW(oracle_green(polygon({0, 1, cplx(0, 1)})), rejection);
    EXPECT_NEAR(oracle_green(disk())(3.0), std::log(3.0), 1e-15);
}

TEST(Phi, DiskIsPowerOfModulus)
{
    const ExtremalSolver solver(disk_mesh(), 20);
    for (cplx z : {cplx(1.5, 0), cplx(2, 0), cplx(2, 1)})
        for (int n : {1, 2, 5, 10, 15, 20}) {
            const auto v = solver.phi(n, z);
            const double expect = std::pow(std::abs(z), n);
            EXPECT_NEAR(v.value / expect, 1.0, 1e-6) << z << " n=" << n;
            EXPECT_LE(v.value, v.upper * (1 + 1e-12));
        }
}

TEST(Phi, WitnessAttainsValue)
{
    const ExtremalSolver solver(segment_mesh(), 12);
    const cplx z(0.4, 0.6);
    const auto v = solver.phi(12, z);
    EXPECT_LE(v.witness.sup_norm(segment_mesh().points), 1.0 + 1e-8);
    EXPECT_NEAR(std::abs(v.witness(z)) / v.value, 1.0, 1e-8);
    EXPECT_EQ(v.witness.degree(), 12);
}

TEST(Phi, SegmentMatchesChebyshev)
{
    // Phi_n(x) = T_n(x) for real x > 1 on [-1, 1]
    const ExtremalSolver solver(segment_mesh(), 10);
    for (int n : {1, 3, 6, 10}) {
        const auto v = solver.phi(n, 2.0);
        const double t = std::cosh(n * std::acosh(2.0));
        EXPECT_GE(v.upper, t * (1 - 1e-9));
        EXPECT_NEAR(v.value / t, 1.0, 1e-3) << n;
    }
}

TEST(Phi, ScaledChebyshevOnLongSegment)
{
    const Mesh m = build_mesh(segment(cplx(-2, 0), cplx(2, 0)), MeshRole::boundary(), 0.005);
    // the mesh maximum sits below the true one, so the mesh value is slightly larger
    EXPECT_NEAR(phi_n(m, 2, 3.0).value, 3.5, 3.5e-4);
    EXPECT_NEAR(phi_n(build_mesh(disk(), MeshRole::boundary(), 2 * pi / 512), 3, 2.0).value, 8.0, 8e-6);
}

TEST(Phi, HighDegreeStaysAccurate)
{
    // Phi_n(x) = T_n(x) on [-1, 1]; values far beyond double-precision cancellation
    const Mesh fine = build_mesh(segment(), MeshRole::boundary(), 0.001);
    const ExtremalSolver solver(fine, 60);
    const auto v = solver.phi(60, 2.0);
    const double t = std::cosh(60 * std::acosh(2.0));
    EXPECT_GT(t, 1e34);
    EXPECT_NEAR(v.value / t, 1.0, 1e-3);
    EXPECT_LE(v.value, v.upper * (1 + 1e-12));
}

TEST(Phi, MonotoneInDegree)
{
    const ExtremalSolver solver(build_mesh(star(3), MeshRole::boundary(), 0.01), 12);
    double prev = 1.0;
    for (int n = 1; n <= 12; ++n) {
        const double v = solver.phi(n, cplx(0.6, 0.5)).value;
        EXPECT_GE(v, prev * (1 - 1e-8)) << n;
        prev = v;
    }
}

TEST(Phi, BernsteinWalshOnSegment)
{
    const ExtremalSolver solver(segment_mesh(), 8);
    for (cplx z : {cplx(0, 0.5), cplx(1.2, 0.3), cplx(-0.3, -1)}) {
        const double g = oracle::segment(-1.0, 1.0, z);
        for (int n : {2, 5, 8}) {
            const auto v = solver.phi(n, z);
            EXPECT_LE(v.value, std::exp(n * g) * (1 + 1e-6));
            EXPECT_GE(v.value, 1.0);
        }
    }
}

TEST(Phi, OnSetAndFarField)
{
    const ExtremalSolver solver(disk_mesh(), 10);
    EXPECT_EQ(solver.phi(5, cplx(0.3, 0.2)).value, 1.0);
    const auto far = solver.phi(5, cplx(100, 0));
    EXPECT_EQ(far.certificate, Certificate::lower_witness);
    EXPECT_LE(far.value, 1e10 * (1 + 1e-9));
    EXPECT_GE(far.value, 1e10 / 32);
    EXPECT_EQ(solver.phi(0, 4.0).value, 1.0);
}

TEST(Phi, GuardsAndRejections)
{
    const Mesh small = build_mesh(disk(), MeshRole::boundary(), 2 * pi / 16);
    const ExtremalSolver solver(small, 10);
    EXPECT_THROW(solver.phi(3, 2.0), rejection);
    EXPECT_THROW(solver.phi(11, 2.0), rejection);
    EXPECT_THROW(solver.phi(-1, 2.0), rejection);
}

TEST(ShellInf, DiskShellIsConstant)
{
    const Mesh shell = build_mesh(disk(), MeshRole::shell(0.5), 0.05);
    const auto s = phi_shell_inf(disk_mesh(), 8, 0.5, shell);
    EXPECT_NEAR(s.value / std::pow(1.5, 8), 1.0, 1e-6);
    EXPECT_LE(s.value, s.upper * (1 + 1e-12));
}

TEST(ShellInf, CandidateSearchMatchesExhaustive)
{
    const Mesh shell = build_mesh(segment(), MeshRole::shell(0.25), 0.02);
    const ExtremalSolver solver(segment_mesh(), 10);
    const auto fast = solver.shell_inf(10, shell);
    double best = inf;
    for (auto z : shell.points) best = std::min(best, solver.phi(10, z).value);
    EXPECT_LT(fast.evaluated, shell.size());
    EXPECT_NEAR(fast.value / best, 1.0, 1e-6);
    EXPECT_GE(fast.value, best * (1 - 1e-6));
}

TEST(ShellInf, RoleMismatchIsRejected)
{
    const Mesh shell = build_mesh(disk(), MeshRole::shell(0.5), 0.05);
    EXPECT_THROW(phi_shell_inf(disk_mesh(), 4, 0.25, shell), rejection);
    const Mesh other = build_mesh(segment(), MeshRole::shell(0.5), 0.05);
    EXPECT_THROW(phi_shell_inf(disk_mesh(), 4, 0.5, other), rejection);
}

TEST(LevelSet, DiskCircleOfRadiusRho)
{
    const auto ls = level_set(disk(), oracle_green(disk()), 2.0, 0.01);
    EXPECT_NEAR(ls.min_distance, 1.0, 0.01);
    EXPECT_NEAR(ls.max_distance, 1.0, 0.01);
    EXPECT_GT(ls.segments.size(), 100u);
}

TEST(LevelSet, SegmentEllipse)
{
    // {g = log rho} is the ellipse with semi-axes (rho +- 1/rho) / 2
    const double rho = 3.0;
    const auto ls = level_set(segment(), oracle_green(segment()), rho, 0.005);
    EXPECT_NEAR(ls.min_distance, (rho + 1 / rho) / 2 - 1, 0.01);
    EXPECT_NEAR(ls.max_distance, (rho - 1 / rho) / 2, 0.01);
}

TEST(LevelSet, ExitingWindowIsRejected)
{
    const Box tiny{-1.5, 1.5, -1.5, 1.5};
    EXPECT_THROW(level_set(disk(), oracle_green(disk()), 2.0, 0.05, tiny), rejection);
}
