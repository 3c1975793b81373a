#include "pathbdg/continuum.hpp"

#include "pathbdg/parallel.hpp"
#include "pathbdg/rng.hpp"
#include "pathbdg/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathbdg
{
	BmPath BmPath::from_normals(std::span<const double> normals, double dt)
	{
		if (!std::isfinite(dt) || dt <= 0.0)
			throw std::invalid_argument("time step must be finite and positive");
		const double scale = std::sqrt(dt);
		Eigen::VectorXd m(static_cast<Index>(normals.size()) + 1);
		m[0] = 0.0;
		for (std::size_t k = 0; k < normals.size(); ++k)
			m[static_cast<Index>(k) + 1] = m[static_cast<Index>(k)] + scale * normals[k];
		return {Path(std::move(m)), dt};
	}

	BmPath simulate_bm(Index steps, double horizon, std::uint64_t seed, std::uint64_t k)
	{
		if (steps < 1)
			throw std::invalid_argument("Brownian path needs at least one step");
		if (!std::isfinite(horizon) || horizon <= 0.0)
			throw std::invalid_argument("horizon must be finite and positive");
		RandomStream rng = make_stream(seed, StreamDomain::Brownian, k);
		std::vector<double> normals(static_cast<std::size_t>(steps));
		for (double &xi : normals)
			xi = rng.normal();
		return BmPath::from_normals(normals, horizon / static_cast<double>(steps));
	}

	BmPath coarsen(const BmPath &path, Index factor)
	{
		if (factor < 1 || path.steps() % factor != 0)
			throw std::invalid_argument("coarsening factor must divide the step count");
		const Index steps = path.steps() / factor;
		Eigen::VectorXd m(steps + 1);
		for (Index k = 0; k <= steps; ++k)
			m[k] = path.values[k * factor];
		return {Path(std::move(m)), path.dt * static_cast<double>(factor)};
	}

	Certificate continuous_davis_slack(const BmPath &path, double tolerance)
	{
		const Path &m = path.values;
		const PathStats stats = compute_stats(m);
		const Index n = m.last();
		double gain = 0.0;
		for (Index k = 0; k < n; ++k)
		{
			const double denom = std::max(std::sqrt(stats.quad_var[k]), stats.running_max[k]);
			const double integrand = denom == 0.0 ? 0.0 : m[k] / denom;
			gain += integrand * (m[k + 1] - m[k]);
		}
		return make_certificate(InequalityId::CONT_DAVIS, std::sqrt(stats.quad_var[n]),
								1.5 * stats.running_max[n] - gain, tolerance);
	}

	std::pair<Strategy, Strategy> heuristic_strategies(const BmPath &path)
	{
		const Path &m = path.values;
		const PathStats stats = compute_stats(m);
		const Index n = m.last();
		Strategy capped(n), smooth(n);
		for (Index k = 0; k < n; ++k)
		{
			const double t = path.time(k);
			const double peak = stats.running_max[k];
			const double denom_capped = std::max(std::sqrt(t), peak);
			const double denom_smooth = std::sqrt(t + peak * peak);
			capped[k] = denom_capped == 0.0 ? 0.0 : -m[k] / denom_capped;
			smooth[k] = denom_smooth == 0.0 ? 0.0 : -m[k] / denom_smooth;
		}
		return {capped, smooth};
	}

	std::optional<double> required_constant(const BmPath &path, const Strategy &f)
	{
		const Index n = path.steps();
		const double peak = path.values.values().head(n + 1).cwiseAbs().maxCoeff();
		if (peak == 0.0)
			return std::nullopt;
		return (std::sqrt(path.horizon()) - integral(f, path.values)) / peak;
	}

	namespace
	{
		SuperhedgeSummary summarize(std::string name, const std::vector<std::optional<double>> &required,
									Index steps, double horizon, std::uint64_t seed)
		{
			SuperhedgeSummary out;
			out.strategy = std::move(name);
			std::vector<double> defined;
			defined.reserve(required.size());
			for (const auto &a : required)
			{
				if (a)
					defined.push_back(*a);
			}
			out.defined = defined.size();
			out.undefined = required.size() - defined.size();

			const MeanEstimate est = estimate_mean(defined);
			out.mean.quantity = "required_constant";
			out.mean.generator = "bm(horizon=" + std::to_string(horizon) + ")";
			out.mean.N = steps;
			out.mean.samples = est.count;
			out.mean.estimate = est.mean;
			out.mean.std_error = est.std_error;
			out.mean.seed = seed;
			if (!defined.empty())
			{
				out.min = *std::min_element(defined.begin(), defined.end());
				out.max = *std::max_element(defined.begin(), defined.end());
				out.median = quantile(defined, 0.5);
				out.q99 = quantile(defined, 0.99);
			}
			return out;
		}
	} // namespace

	std::pair<SuperhedgeSummary, SuperhedgeSummary> superhedge_report(std::size_t count, Index steps, double horizon,
																	  std::uint64_t seed, unsigned threads)
	{
		if (count < 1)
			throw std::invalid_argument("sample count must be at least 1");
		using Pair = std::pair<std::optional<double>, std::optional<double>>;
		const auto required = parallel_map<Pair>(count, threads, [&](std::size_t k) {
			const BmPath path = simulate_bm(steps, horizon, seed, k);
			const auto [capped, smooth] = heuristic_strategies(path);
			return Pair{required_constant(path, capped), required_constant(path, smooth)};
		});

		std::vector<std::optional<double>> capped(count), smooth(count);
		for (std::size_t k = 0; k < count; ++k)
		{
			capped[k] = required[k].first;
			smooth[k] = required[k].second;
		}
		return {summarize("capped", capped, steps, horizon, seed), summarize("smooth", smooth, steps, horizon, seed)};
	}

	SlackStudy continuum_slack_study(std::size_t count, const std::vector<Index> &step_counts, double horizon,
									 std::uint64_t seed, unsigned threads)
	{
		if (count < 1 || step_counts.empty())
			throw std::invalid_argument("slack study needs at least one path and one resolution");
		const Index finest = *std::max_element(step_counts.begin(), step_counts.end());
		for (Index s : step_counts)
		{
			if (s < 1 || finest % s != 0)
				throw std::invalid_argument("every step count must divide the finest one");
		}

		const auto slacks = parallel_map<std::vector<double>>(count, threads, [&](std::size_t k) {
			const BmPath fine = simulate_bm(finest, horizon, seed, k);
			std::vector<double> out;
			out.reserve(step_counts.size());
			for (Index s : step_counts)
				out.push_back(continuous_davis_slack(coarsen(fine, finest / s)).slack);
			return out;
		});

		SlackStudy study{count, horizon, seed, {}};
		const double threshold = -0.05 * std::sqrt(horizon);
		for (std::size_t level = 0; level < step_counts.size(); ++level)
		{
			std::vector<double> slack(count), negative(count);
			std::size_t near = 0;
			for (std::size_t k = 0; k < count; ++k)
			{
				slack[k] = slacks[k][level];
				negative[k] = std::max(-slack[k], 0.0);
				near += slack[k] >= threshold ? 1 : 0;
			}
			const QuantileEstimate q = estimate_quantile(slack, 0.01);
			const MeanEstimate neg = estimate_mean(negative);
			study.levels.push_back({step_counts[level], q.value, q.std_error, neg.mean, neg.std_error,
									static_cast<double>(near) / static_cast<double>(count)});
		}
		return study;
	}
} // namespace pathbdg
