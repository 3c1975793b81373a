#include "fixtures.hpp"
#include "oracles.hpp"

#include "pathbdg/davis.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace pathbdg;
using std::numbers::sqrt2;

TEST(DavisStrategyTest, FirstStepValue)
{
	const Strategy h = davis_strategy(Path{1.0, -1.0});
	ASSERT_EQ(h.size(), 1);
	EXPECT_DOUBLE_EQ(h[0], 1.0 / sqrt2);
}

TEST(DavisStrategyTest, ZeroOverZeroIsZero)
{
	const Strategy h = davis_strategy(Path{0.0, 0.0, 2.0});
	EXPECT_EQ(h[0], 0.0);
	EXPECT_EQ(h[1], 0.0);
	EXPECT_FALSE(std::isnan(h[0]));
}

TEST(DavisCertificateTest, TwoPointPath)
{
	const auto [qv, mx] = certify_davis(Path{1.0, -1.0});
	EXPECT_EQ(qv.inequality_id, InequalityId::DAVIS_QV_BOUND);
	EXPECT_DOUBLE_EQ(qv.lhs, std::sqrt(5.0));
	EXPECT_DOUBLE_EQ(qv.rhs, 3.0 + sqrt2);
	EXPECT_NEAR(qv.slack, 3.0 + sqrt2 - std::sqrt(5.0), 1e-15);
	EXPECT_TRUE(qv.passed);
	EXPECT_DOUBLE_EQ(mx.lhs, 1.0);
	EXPECT_NEAR(mx.rhs, 6.0 * std::sqrt(5.0) - 2.0 * sqrt2, 1e-14);
	EXPECT_TRUE(mx.passed);

	const Certificate sharp = certify_davis_sharp(Path{1.0, -1.0});
	EXPECT_NEAR(sharp.rhs, 1.0 + 2.0 * sqrt2, 1e-15);
	EXPECT_TRUE(sharp.passed);
}

TEST(DavisCertificateTest, SinglePointPath)
{
	const auto [qv, mx] = certify_davis(Path{-2.0});
	EXPECT_DOUBLE_EQ(qv.lhs, 2.0);
	EXPECT_DOUBLE_EQ(qv.rhs, 6.0);
	EXPECT_TRUE(qv.passed && mx.passed);
	EXPECT_TRUE(certify_davis_sharp(Path{0.0}).passed);
}

TEST(AuxFunctionTest, FrozenValues)
{
	EXPECT_DOUBLE_EQ(aux_f(1.0, 1.0, 0.0), 1.0);
	EXPECT_DOUBLE_EQ(aux_g(1.0, 1.0, 0.0), -1.0);
	EXPECT_DOUBLE_EQ(aux_f(0.0, 1.0, 0.0), 0.5);
	EXPECT_DOUBLE_EQ(aux_g(0.0, 1.0, 0.0), -0.5);
	EXPECT_EQ(aux_f(0.0, 0.0, 0.0), 0.0);
	EXPECT_EQ(aux_g(0.0, 0.0, 0.0), 0.0);
}

TEST(AuxFunctionTest, DomainIsEnforced)
{
	EXPECT_THROW(aux_f(2.0, 1.0, 0.0), std::invalid_argument);
	EXPECT_THROW(aux_g(0.0, -1.0, 0.0), std::invalid_argument);
	EXPECT_THROW(aux_f(0.0, 1.0, -1e-3), std::invalid_argument);
	EXPECT_THROW(check_aux_increments({2.0, 1.0, 0.0, 0.5}), std::invalid_argument);
}

TEST(AuxFunctionTest, HomogeneousNearUnderflow)
{
	// f and g are 1-homogeneous under (x, m, q) -> (l x, l m, l^2 q). The
	// reference uses the q actually stored, which is subnormal or zero here.
	for (double l : {1e-100, 1e-150, 1e-155, 1e-160, 1e-170})
	{
		const double q = 4.0 * l * l;
		const double q_unit = q / l / l;
		EXPECT_NEAR(aux_f(0.3 * l, l, q) / l, aux_f(0.3, 1.0, q_unit), 1e-12) << l;
		EXPECT_NEAR(aux_g(-0.7 * l, l, q) / l, aux_g(-0.7, 1.0, q_unit), 1e-12) << l;
		EXPECT_NEAR(aux_f(l, l, 0.0) / l, 1.0, 1e-15);
	}
}

TEST(AuxFunctionTest, AgreesWithDirectFormula)
{
	for (const AuxPoint &p : aux_grid())
	{
		EXPECT_NEAR(aux_f(p), oracle::aux_f(p.x, p.m, p.q), 1e-13 * (1.0 + std::sqrt(p.q)));
		EXPECT_NEAR(aux_g(p), oracle::aux_g(p.x, p.m, p.q), 1e-13 * (1.0 + std::sqrt(p.q)));
	}
}

TEST(AuxIncrementTest, FrozenFIncrement)
{
	const auto [f, g] = check_aux_increments({0.0, 1.0, 0.0, 1.0});
	EXPECT_NEAR(f.lhs, sqrt2 - 2.0 - 0.5, 1e-15);
	EXPECT_DOUBLE_EQ(f.rhs, 1.0);
	EXPECT_TRUE(f.passed);
	EXPECT_TRUE(g.passed);
}

TEST(AuxIncrementTest, FrozenGIncrement)
{
	const auto [f, g] = check_aux_increments({1.0, 1.0, 0.0, 1.0});
	EXPECT_NEAR(g.lhs, -4.0 + std::sqrt(5.0) + 1.0, 1e-15);
	EXPECT_NEAR(g.rhs, -1.0 + (sqrt2 - 1.0), 1e-15);
	EXPECT_TRUE(g.passed);
	EXPECT_TRUE(f.passed);
}

TEST(AuxIncrementTest, GridPasses)
{
	const auto grid = aux_grid();
	EXPECT_EQ(grid.size(), 21u * 9u * 43u);
	const AuxSweepResult r = sweep_aux_increments(grid);
	EXPECT_TRUE(r.passed()) << r.f_failures << " f / " << r.g_failures << " g failures";
}

TEST(AuxIncrementTest, RandomTuplesPass)
{
	const AuxSweepResult r = sweep_aux_random(20000, 17);
	EXPECT_EQ(r.points, 20000u);
	EXPECT_TRUE(r.passed()) << "worst f " << r.worst_f_slack << ", worst g " << r.worst_g_slack;
}

TEST(AuxIncrementTest, RandomTuplesAreAdmissible)
{
	for (std::uint64_t k = 0; k < 5000; ++k)
	{
		const AuxPoint p = random_aux_point(3, k);
		EXPECT_GE(p.m, 0.0);
		EXPECT_GE(p.q, 0.0);
		EXPECT_LE(std::abs(p.x), p.m);
	}
}

TEST(AuxIncrementTest, SweepIsThreadCountInvariant)
{
	const AuxSweepResult a = sweep_aux_random(3000, 99, kDefaultTolerance, 1);
	const AuxSweepResult b = sweep_aux_random(3000, 99, kDefaultTolerance, 4);
	EXPECT_EQ(a.worst_f_slack, b.worst_f_slack);
	EXPECT_EQ(a.worst_g_slack, b.worst_g_slack);
}

class DavisPropertyTest : public ::testing::TestWithParam<std::uint64_t>
{
protected:
	Path path() const { return fixtures::random_path(0xda15, GetParam()); }
};

TEST_P(DavisPropertyTest, StrategyIsBounded)
{
	const Strategy h = davis_strategy(path());
	EXPECT_LE(h.cwiseAbs().maxCoeff(), 1.0);
}

TEST_P(DavisPropertyTest, StrategyIsScaleInvariantAndSlackIsLinear)
{
	const Path x = path();
	const double lambda = 7.0;
	const Path y = scale_path(x, lambda);
	const Strategy hx = davis_strategy(x);
	const Strategy hy = davis_strategy(y);
	for (Index n = 0; n < hx.size(); ++n)
		EXPECT_NEAR(hx[n], hy[n], 1e-15);

	const auto [qx, mx] = certify_davis(x);
	const auto [qy, my] = certify_davis(y);
	EXPECT_NEAR(qy.slack, lambda * qx.slack, 1e-12 * lambda * qx.rhs);
	EXPECT_NEAR(my.slack, lambda * mx.slack, 1e-12 * lambda * std::abs(mx.rhs));
}

TEST_P(DavisPropertyTest, CertificatesPass)
{
	const Path x = path();
	const auto [qv, mx] = certify_davis(x);
	EXPECT_TRUE(qv.passed) << qv.slack;
	EXPECT_TRUE(mx.passed) << mx.slack;
	EXPECT_TRUE(certify_davis_sharp(x).passed);
}

TEST_P(DavisPropertyTest, MatchesNaiveOracle)
{
	const Path x = path();
	const auto v = x.to_vector();
	const Strategy h = davis_strategy(x);
	const auto ho = oracle::davis_strategy(v);
	for (Index n = 0; n < h.size(); ++n)
		EXPECT_LE(oracle::ulp_distance(h[n], ho[static_cast<std::size_t>(n)]), 4u);
}

TEST_P(DavisPropertyTest, AuxLowerBoundsAlongPath)
{
	const Path x = path();
	const PathStats s = compute_stats(x);
	for (Index n = 0; n <= x.last(); ++n)
	{
		const double m = s.running_max[n];
		const double q = s.quad_var[n];
		const double scale = std::max(1.0, m + std::sqrt(q));
		EXPECT_GE(aux_f(x[n], m, q) - (-2.0 * std::sqrt(q) + m / 2.0), -1e-12 * scale);
		EXPECT_GE(aux_g(x[n], m, q) - (-2.0 * m + std::sqrt(q)), -1e-12 * scale);
	}
	EXPECT_LE(aux_f(x[0], std::abs(x[0]), x[0] * x[0]), 1e-12 * std::abs(x[0]));
	EXPECT_LE(aux_g(x[0], std::abs(x[0]), x[0] * x[0]), 1e-12 * std::abs(x[0]));
}

TEST_P(DavisPropertyTest, AuxIncrementsTelescope)
{
	const Path x = path();
	const PathStats s = compute_stats(x);
	const Index N = x.last();
	const auto f_at = [&](Index n) { return aux_f(x[n], s.running_max[n], s.quad_var[n]); };
	const auto g_at = [&](Index n) { return aux_g(x[n], s.running_max[n], s.quad_var[n]); };
	double sum_f = 0.0;
	double sum_g = 0.0;
	double mag = 0.0;
	for (Index k = 0; k < N; ++k)
	{
		sum_f += f_at(k + 1) - f_at(k);
		sum_g += g_at(k + 1) - g_at(k);
		mag = std::max({mag, std::abs(f_at(k)), std::abs(g_at(k))});
	}
	mag = std::max({mag, std::abs(f_at(N)), std::abs(g_at(N))});
	const double ulps = 4.0 * static_cast<double>(std::max<Index>(N, 1)) * mag * 0x1.0p-52;
	EXPECT_NEAR(sum_f, f_at(N) - f_at(0), ulps);
	EXPECT_NEAR(sum_g, g_at(N) - g_at(0), ulps);
}

TEST_P(DavisPropertyTest, AuxIncrementsHoldAlongPath)
{
	const Path x = path();
	const PathStats s = compute_stats(x);
	for (Index n = 0; n < x.last(); ++n)
	{
		const auto [f, g] = check_aux_increments({x[n], s.running_max[n], s.quad_var[n], x[n + 1] - x[n]});
		EXPECT_TRUE(f.passed) << f.slack;
		EXPECT_TRUE(g.passed) << g.slack;
	}
}

INSTANTIATE_TEST_SUITE_P(RandomPaths, DavisPropertyTest, ::testing::Range<std::uint64_t>(0, 200));
