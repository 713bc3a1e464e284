#include <jackson/regularity.hpp>

#include <gtest/gtest.h>

using namespace jackson;
using namespace jackson::sets;
using namespace jackson::regularity;

namespace {

JPOptions light_grid()
{
    JPOptions o;
    o.n_grid = {1, 2, 4, 8};
    return o;
}

const JPReport& disk_report()
{
    static const JPReport r = jp_condition5_check(disk(), light_grid());
    return r;
}

} // namespace

TEST(Scales, Dyadic)
{
    const auto t = dyadic_scales(2, 5);
    ASSERT_EQ(t.size(), 4u);
    EXPECT_DOUBLE_EQ(t.front(), 0.25);
    EXPECT_DOUBLE_EQ(t.back(), 1.0 / 32);
    EXPECT_THROW(dyadic_scales(3, 2), rejection);
}

TEST(LsExponent, StarsGiveHalfTheArmCount)
{
    for (int n : {2, 3, 4}) {
        const auto f = fit_ls_exponent(star(n), GreenSource::oracle());
        EXPECT_FALSE(f.divergent);
        EXPECT_NEAR(f.exponent, n / 2.0, 0.1 * n / 2.0) << "star " << n;
    }
}

TEST(LsExponent, SegmentWorstDirectionIsImaginaryAxis)
{
    const auto f = fit_ls_exponent(segment(), GreenSource::oracle());
    EXPECT_NEAR(f.exponent, 1.0, 0.1);
    for (const auto& s : f.samples) {
        EXPECT_LT(std::abs(s.where.real()), 0.05) << "t = " << s.t;
        EXPECT_NEAR(std::abs(s.where.imag()), s.t, 1e-9);
    }
}

TEST(LsExponent, TangentDisksDiverge)
{
    const auto f = fit_ls_exponent(tangent_disks(), GreenSource::oracle());
    EXPECT_TRUE(f.divergent);
    EXPECT_TRUE(std::isnan(f.exponent));
    // the local exponents themselves keep growing
    for (std::size_t i = 1; i < f.local.size(); ++i) EXPECT_GT(f.local[i].slope, f.local[i - 1].slope);
}

TEST(HcpExponent, ModelSets)
{
    EXPECT_NEAR(fit_hcp_exponent(disk(), GreenSource::oracle()).exponent, 1.0, 0.05);
    EXPECT_NEAR(fit_hcp_exponent(segment(), GreenSource::oracle()).exponent, 2.0, 0.2);
    EXPECT_NEAR(fit_hcp_exponent(star(3), GreenSource::oracle()).exponent, 2.0, 0.2);
}

TEST(ExponentFit, StoredQuantitiesAreReproducible)
{
    const auto f = fit_ls_exponent(star(3), GreenSource::oracle(), dyadic_scales(2, 6));
    EXPECT_DOUBLE_EQ(f.recompute_residual(), f.residual);
    ASSERT_EQ(f.local.size(), f.samples.size() - 1);
    for (std::size_t i = 0; i < f.local.size(); ++i) {
        const auto& a = f.samples[i];
        const auto& b = f.samples[i + 1];
        EXPECT_DOUBLE_EQ(f.local[i].slope, std::log(a.g / b.g) / std::log(a.t / b.t));
        EXPECT_NEAR(a.g, green_oracle(star(3), a.where), 1e-15);
    }
}

TEST(ExponentFit, AffineInvariance)
{
    const cplx a = std::polar(2.0, pi / 7), b{1.0, 1.0};
    for (const auto& s : {disk(), star(3)}) {
        const auto img = affine_image(s, a, b);
        for (auto kind : {FitKind::ls, FitKind::hcp}) {
            const auto f0 = fit_exponent(s, kind, GreenSource::oracle(), dyadic_scales(2, 8));
            const auto f1 = fit_exponent(img, kind, GreenSource::oracle(), dyadic_scales(2, 8));
            EXPECT_NEAR(f1.exponent, f0.exponent, 0.02 * f0.exponent) << s.name;
        }
    }
}

TEST(ExponentFit, Rejections)
{
    EXPECT_THROW(fit_ls_exponent(disk(), GreenSource::oracle(), dyadic_scales(2, 4)), rejection);
    EXPECT_THROW(fit_ls_exponent(disk(), GreenSource::oracle(), {2.0, 0.5, 0.25, 0.125}), rejection);
    EXPECT_THROW(fit_ls_exponent(polygon({{0, 0}, {1, 0}, {0, 1}}), GreenSource::oracle()), rejection);
    // the inner offsets of an outline lie in its polynomial hull, where g = 0
    const auto outline = polygon({{-1, -1}, {1, -1}, {1, 1}, {-1, 1}}, false);
    EXPECT_THROW(fit_ls_exponent(outline, GreenSource::nodal(200, 0.01), dyadic_scales(2, 5)), rejection);
}

TEST(JPCondition, DiskMatchesClosedForm)
{
    const auto& r = disk_report();
    for (const auto& p : r.phi) EXPECT_NEAR(p.phi, std::pow(1.0 + p.t, p.n + 1), 2e-3 * p.phi) << p.n << " " << p.t;
    EXPECT_FALSE(r.unbounded);
    EXPECT_EQ(r.s_min, 1.0);
    EXPECT_EQ(r.v, 1);
    EXPECT_TRUE(std::isfinite(r.c_tilde));
}

TEST(JPCondition, LhsReproducibleFromPhiTable)
{
    const auto& r = disk_report();
    for (std::size_t il = 0; il < r.ell_grid.size(); ++il)
        for (std::size_t it = 0; it < r.t_grid.size(); ++it) {
            const auto& e = r.at(il, it);
            double best = -inf;
            for (const auto& p : r.phi)
                if (p.t == e.t) best = std::max(best, e.ell * std::log(p.n) - std::log(p.phi));
            EXPECT_DOUBLE_EQ(e.log_direct, best);
            double n_at = 0.0;
            EXPECT_DOUBLE_EQ(e.log_tail, log_tail_sup(e.ell, r.tail_rate[it], r.n_grid.back(), n_at));
            EXPECT_EQ(r.tail_offset[it], 0.0);
        }
}

TEST(JPCondition, MonotoneInT)
{
    const auto& r = disk_report();
    for (int n : r.n_grid) {
        double prev = inf;
        for (const auto& p : r.phi)
            if (p.n == n) {
                EXPECT_LE(p.phi, prev * (1 + 1e-3));
                prev = p.phi;
            }
    }
    for (std::size_t il = 0; il < r.ell_grid.size(); ++il)
        for (std::size_t it = 1; it < r.t_grid.size(); ++it)
            EXPECT_GE(r.at(il, it).log_lhs(), r.at(il, it - 1).log_lhs() - 1e-3);
}

TEST(JPCondition, FittedConstantsHoldOrAreListed)
{
    const auto& r = disk_report();
    for (const auto& c : r.candidates) {
        if (!std::isfinite(c.c_v1)) continue;
        for (std::size_t il = 0; il < r.ell_grid.size(); ++il)
            for (std::size_t it = 0; it < r.t_grid.size(); ++it) {
                const auto& e = r.at(il, it);
                EXPECT_LE(e.log_lhs(), log_rhs5(c.c_v1, 1.0, c.s, e.ell, e.t) + 1e-9);
            }
    }
}

TEST(JPCondition, Star4NeedsTwo)
{
    const auto r = jp_condition5_check(star(4), light_grid());
    EXPECT_FALSE(r.feasible_at(1.5));
    EXPECT_TRUE(r.feasible_at(2.0));
    EXPECT_EQ(r.s_min, 2.0);
    const auto* c = r.candidate(1.5);
    ASSERT_NE(c, nullptr);
    ASSERT_FALSE(c->violations.empty());
    EXPECT_EQ(c->violations.front().t, r.t_grid.back());
}

TEST(JPCondition, FiniteSetIsTrivial)
{
    const auto r = jp_condition5_check(points({{0, 0}, {1, 0}}), light_grid());
    EXPECT_TRUE(r.trivial);
    EXPECT_EQ(r.s_min, 1.0);
    EXPECT_TRUE(r.phi.empty());
}

TEST(JPCondition, Guards)
{
    JPOptions o = light_grid();
    o.ell_grid = {0.5};
    EXPECT_THROW(jp_condition5_check(disk(), o), rejection);
    o = light_grid();
    o.t_grid = {0.5, 0.25};
    EXPECT_THROW(jp_condition5_check(disk(), o), rejection);
    o = light_grid();
    o.n_grid = {0, 4};
    EXPECT_THROW(jp_condition5_check(disk(), o), rejection);
}

TEST(JPCondition, MinimalConstantIsTight)
{
    for (double lhs : {5.0, 40.0, 200.0}) {
        const double c = minimal_c(lhs, 1.0, 1.0, 2.0, 0.0625, 1e4);
        ASSERT_TRUE(std::isfinite(c));
        EXPECT_GE(log_rhs5(c, 1.0, 1.0, 2.0, 0.0625), lhs - 1e-9);
        if (c > 1.0) {
            EXPECT_LT(log_rhs5(c * (1 - 1e-6), 1.0, 1.0, 2.0, 0.0625), lhs);
        }
    }
    EXPECT_EQ(minimal_c(1e9, 1.0, 1.0, 1.0, 0.5, 10.0), inf);
}

TEST(JPCondition, TailSupremum)
{
    for (double ell : {1.0, 4.0})
        for (double g : {0.2, 0.01}) {
            double n_at = 0.0;
            const double v = log_tail_sup(ell, g, 60, n_at);
            double best = -inf;
            for (int n = 61; n < 100000; ++n) best = std::max(best, ell * std::log(n) - (n + 1) * g);
            EXPECT_GE(v, best - 1e-12);
            EXPECT_LE(v - best, ell * std::log1p(1.0 / n_at) + 1e-12);
        }
}

TEST(DegreeChoice, DiskDegreeChoiceGivesLowerBound)
{
    const auto& r = disk_report();
    const double c = r.c_tilde;
    for (double ell : {1.0, 2.0, 4.0, 8.0})
        for (double t : r.t_grid) {
            const double n = prop37_degree(c, 1.0, 1.0, ell, t);
            // JP condition at that n with phi_{n+1}(t) = (1 + t)^{n+1}
            const double lhs = ell * std::log(n) - (n + 1) * std::log1p(t);
            EXPECT_LE(lhs, log_rhs5(c, 1.0, 1.0, ell, t));
            const double g_lower = (ell * std::log(n) - (ell + c) * (std::log(c * ell) - std::log(t))) / (n + 1);
            EXPECT_LE(g_lower, std::log1p(t));
            EXPECT_GE(g_lower, prop37_lower_bound(c, 1.0, 1.0, ell, t) * (1 - 1e-12));
        }
}

TEST(LsJpConsistency, DiskConsistent)
{
    const auto r = theorem14_consistency(disk(), light_grid());
    EXPECT_TRUE(r.pass);
    EXPECT_NEAR(r.ls.exponent, 1.0, 0.05);
    EXPECT_NEAR(r.hcp.exponent, 1.0, 0.05);
    EXPECT_EQ(r.jp.s_min, 1.0);
}

TEST(LsJpConsistency, TangentDisksFailEveryCandidate)
{
    const auto r = theorem14_consistency(tangent_disks(), light_grid());
    EXPECT_TRUE(r.ls.divergent);
    EXPECT_TRUE(r.jp.unbounded);
    EXPECT_TRUE(std::isnan(r.jp.s_min));
    for (const auto& c : r.jp.candidates) EXPECT_FALSE(c.feasible);
    EXPECT_TRUE(r.pass);
}

TEST(Union, TwoDisks)
{
    const auto r = union_jp_check(disk({-2, 0}, 1), disk({2, 0}, 1), light_grid());
    EXPECT_EQ(r.a.s_min, 1.0);
    EXPECT_EQ(r.b.s_min, 1.0);
    EXPECT_EQ(r.u.s_min, 1.0);
    EXPECT_TRUE(r.pass);
}

TEST(Union, DiskAndSegment)
{
    const auto r = union_jp_check(disk({-3, 0}, 1), segment({1, 0}, {2, 0}), light_grid());
    EXPECT_EQ(r.u.s_min, 1.0);
    EXPECT_TRUE(r.pass);
}

TEST(Union, Guards)
{
    // a tiny disk is below mesh resolution: rejected, not misfitted
    EXPECT_THROW(union_jp_check(disk(), disk({3, 0}, 1e-6), light_grid()), rejection);
    EXPECT_THROW(union_jp_check(disk(), disk({1.5, 0}, 1), light_grid()), rejection);
}
