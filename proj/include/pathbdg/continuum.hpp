#pragma once

#include "pathbdg/certificate.hpp"
#include "pathbdg/mc.hpp"
#include "pathbdg/path.hpp"

#include <cstdint>
#include <utility>
#include <vector>

namespace pathbdg
{
	/// Brownian motion sampled on the uniform grid t_k = k * dt, k = 0..n, with M_0 = 0.
	/// Exported as a plain Path plus its time step.
	struct BmPath
	{
		Path values{0.0};
		double dt = 1.0;

		Index steps() const { return values.last(); }
		double horizon() const { return dt * static_cast<double>(steps()); }
		double time(Index k) const { return dt * static_cast<double>(k); }

		/// M_k = sqrt(dt) * (xi_1 + ... + xi_k). Throws std::invalid_argument for
		/// dt <= 0 or non-finite normals.
		static BmPath from_normals(std::span<const double> normals, double dt);
	};

	/// Brownian path number k of (steps, horizon, seed); reproducible per k.
	BmPath simulate_bm(Index steps, double horizon, std::uint64_t seed, std::uint64_t k);

	/// Keeps every `factor`-th grid point; factor must divide steps().
	BmPath coarsen(const BmPath &path, Index factor);

	/// Continuous-time Davis bound on the discretized path:
	///   sqrt[M]_T <= 3/2 M*_T - sum_k H_k (M_{k+1} - M_k),
	///   H_k = M_k / (sqrt[M]_k v M*_k), 0/0 = 0,
	/// with [M] the sum of squared increments. Only holds exactly in the
	/// continuous limit; the slack is an observable, not an assertion.
	Certificate continuous_davis_slack(const BmPath &path, double tolerance = kDefaultTolerance);

	/// Left-point integrands
	///   first:  -M_k / (sqrt(t_k) v M*_k)
	///   second: -M_k / sqrt(t_k + (M*_k)^2)
	/// for k = 0..n-1, 0/0 = 0.
	std::pair<Strategy, Strategy> heuristic_strategies(const BmPath &path);

	struct SuperhedgeSummary
	{
		std::string strategy;
		/// Mean of the required constant a over paths with M*_T > 0.
		McReport mean;
		double min = 0.0;
		double max = 0.0;
		double median = 0.0;
		double q99 = 0.0;
		std::size_t defined = 0;
		/// Paths with M*_T = 0, where a is undefined.
		std::size_t undefined = 0;
	};

	/// Required constant a = (sqrt T - (f.M)_T) / M*_T, or nullopt when M*_T = 0.
	std::optional<double> required_constant(const BmPath &path, const Strategy &f);

	/// For each heuristic strategy, the distribution over sampled paths of the
	/// smallest a with sqrt T <= a M*_T + (f.M)_T.
	std::pair<SuperhedgeSummary, SuperhedgeSummary> superhedge_report(std::size_t count, Index steps, double horizon,
																	  std::uint64_t seed, unsigned threads = 1);

	struct SlackLevel
	{
		Index steps = 0;
		/// Empirical 1% quantile of the slack and its order-statistic error.
		double q01 = 0.0;
		double q01_std_error = 0.0;
		/// Mean of max(-slack, 0).
		double mean_negative_part = 0.0;
		double mean_negative_part_std_error = 0.0;
		/// Fraction of paths with slack >= -0.05 sqrt(T).
		double fraction_near_nonnegative = 0.0;
	};

	struct SlackStudy
	{
		std::size_t count = 0;
		double horizon = 1.0;
		std::uint64_t seed = 0;
		std::vector<SlackLevel> levels;
	};

	/// Slack distribution of continuous_davis_slack at each requested resolution.
	/// Every path is simulated once at the finest resolution and subsampled for
	/// the coarser ones, so all levels see the same Brownian paths. Each entry
	/// of step_counts must divide the largest one.
	SlackStudy continuum_slack_study(std::size_t count, const std::vector<Index> &step_counts, double horizon,
									 std::uint64_t seed, unsigned threads = 1);
} // namespace pathbdg
