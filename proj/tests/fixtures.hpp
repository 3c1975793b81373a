#pragma once

#include "pathbdg/bdg.hpp"
#include "pathbdg/path.hpp"
#include "pathbdg/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace fixtures
{
	enum class Family
	{
		Gaussian,
		Rademacher,
		TruncatedCauchy,
		StickyMax,
	};

	inline constexpr Family kFamilies[] = {Family::Gaussian, Family::Rademacher, Family::TruncatedCauchy,
										   Family::StickyMax};

	/// Increments for the sticky-max family: mostly tiny moves pinned near the
	/// running maximum, interrupted by jumps to a fresh maximum or to the origin.
	inline double sticky_step(pathbdg::RandomStream &rng, double current, double running_max)
	{
		const double u = rng.uniform();
		if (u < 0.15)
			return rng.sign() * (running_max + rng.uniform(0.0, 1.0)) - current;
		if (u < 0.25)
			return -current;
		if (u < 0.35)
			return rng.sign() * running_max - current;
		return 1e-3 * rng.normal();
	}

	/// A random path of N + 1 points, N uniform in [1, max_steps], with the
	/// starting point drawn from the same family. Index k picks the stream.
	inline pathbdg::Path random_path(std::uint64_t seed, std::uint64_t k, Family family, int max_steps = 64)
	{
		auto rng = pathbdg::make_stream(seed, pathbdg::StreamDomain::Fixture, k);
		const int steps = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_steps)));
		const double scale = std::pow(10.0, rng.uniform(-3.0, 3.0));

		std::vector<double> x;
		x.reserve(static_cast<std::size_t>(steps) + 1);
		double running_max = 0.0;
		auto draw = [&](double current) {
			switch (family)
			{
			case Family::Gaussian:
				return scale * rng.normal();
			case Family::Rademacher:
				return scale * rng.sign();
			case Family::TruncatedCauchy:
				return scale * std::clamp(std::tan(std::numbers::pi * (rng.uniform() - 0.5)), -1e4, 1e4);
			case Family::StickyMax:
				return running_max == 0.0 ? scale * rng.normal() : sticky_step(rng, current, running_max);
			}
			return 0.0;
		};

		const double start = rng.uniform() < 0.3 ? 0.0 : draw(0.0);
		x.push_back(start);
		running_max = std::abs(start);
		for (int n = 0; n < steps; ++n)
		{
			x.push_back(x.back() + draw(x.back()));
			running_max = std::max(running_max, std::abs(x.back()));
		}
		return pathbdg::Path(std::span<const double>(x));
	}

	inline pathbdg::Path random_path(std::uint64_t seed, std::uint64_t k, int max_steps = 64)
	{
		return random_path(seed, k, kFamilies[k % 4], max_steps);
	}

	/// Premise-tight Garsia-Neveu data: random nondecreasing a, a random
	/// triangular integrand family in [-1, 1], a random path, and
	/// c_n = max_i (a_n - a_{i-1} - (h^{(i)}.x)_i^n) so that the premise binds.
	inline pathbdg::GnInstance random_gn_instance(std::uint64_t seed, std::uint64_t k)
	{
		auto rng = pathbdg::make_stream(seed, pathbdg::StreamDomain::Fixture, (1ull << 40) + k);
		const pathbdg::Index n = static_cast<pathbdg::Index>(rng.below(17));
		const double p = 1.0 + rng.uniform(0.0, 7.0);
		const double scale = std::pow(10.0, rng.uniform(-2.0, 2.0));
		Eigen::VectorXd values(n + 1);
		values[0] = scale * rng.normal();
		for (pathbdg::Index j = 0; j < n; ++j)
			values[j + 1] = values[j] + scale * rng.normal();
		const pathbdg::Path xn(std::move(values));

		Eigen::VectorXd a(n + 1);
		double level = rng.uniform() < 0.2 ? 0.0 : rng.uniform(0.0, 2.0);
		for (pathbdg::Index i = 0; i <= n; ++i)
		{
			if (rng.uniform() < 0.7)
				level += std::pow(10.0, rng.uniform(-3.0, 1.0));
			a[i] = level;
		}

		Eigen::MatrixXd h = Eigen::MatrixXd::Zero(n, n);
		for (pathbdg::Index i = 0; i < n; ++i)
			for (pathbdg::Index j = i; j < n; ++j)
				h(i, j) = rng.uniform(-1.0, 1.0);

		double cn = 0.0;
		for (pathbdg::Index i = 0; i <= n; ++i)
		{
			double gain = 0.0;
			for (pathbdg::Index j = i; j < n; ++j)
				gain += h(i, j) * (xn[j + 1] - xn[j]);
			cn = std::max(cn, a[n] - (i == 0 ? 0.0 : a[i - 1]) - gain);
		}
		Eigen::VectorXd c(n + 1);
		for (pathbdg::Index i = 0; i < n; ++i)
			c[i] = rng.uniform(0.0, 2.0);
		c[n] = cn;
		return pathbdg::GnInstance(p, std::move(a), std::move(c), std::move(h), xn);
	}
} // namespace fixtures
