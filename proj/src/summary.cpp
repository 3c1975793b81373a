#include "pathbdg/summary.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathbdg
{
	double pairwise_sum(std::span<const double> values)
	{
		constexpr std::size_t kBlock = 8;
		if (values.size() <= kBlock)
		{
			double sum = 0.0;
			for (double v : values)
				sum += v;
			return sum;
		}
		const std::size_t half = values.size() / 2;
		return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
	}

	MeanEstimate estimate_mean(std::span<const double> values)
	{
		MeanEstimate est;
		est.count = values.size();
		if (values.empty())
			return est;
		const double n = static_cast<double>(values.size());
		est.mean = pairwise_sum(values) / n;
		if (values.size() < 2)
			return est;

		std::vector<double> sq(values.size());
		std::transform(values.begin(), values.end(), sq.begin(), [&](double v) { return (v - est.mean) * (v - est.mean); });
		const double variance = pairwise_sum(sq) / (n - 1.0);
		est.std_error = std::sqrt(variance / n);
		return est;
	}

	namespace
	{
		double sorted_quantile(const std::vector<double> &sorted, double level)
		{
			const double pos = level * static_cast<double>(sorted.size() - 1);
			const auto lo = static_cast<std::size_t>(std::floor(pos));
			const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
			const double frac = pos - static_cast<double>(lo);
			return sorted[lo] + frac * (sorted[hi] - sorted[lo]);
		}
	} // namespace

	double quantile(std::vector<double> values, double level)
	{
		if (values.empty())
			throw std::invalid_argument("quantile of an empty sample");
		if (!(level >= 0.0 && level <= 1.0))
			throw std::invalid_argument("quantile level must lie in [0, 1]");
		std::sort(values.begin(), values.end());
		return sorted_quantile(values, level);
	}

	QuantileEstimate estimate_quantile(std::vector<double> values, double level)
	{
		if (values.empty())
			throw std::invalid_argument("quantile of an empty sample");
		if (!(level >= 0.0 && level <= 1.0))
			throw std::invalid_argument("quantile level must lie in [0, 1]");
		std::sort(values.begin(), values.end());

		const double n = static_cast<double>(values.size());
		const double spread = std::sqrt(n * level * (1.0 - level));
		const double lo_level = std::clamp((n * level - spread) / n, 0.0, 1.0);
		const double hi_level = std::clamp((n * level + spread) / n, 0.0, 1.0);
		return {sorted_quantile(values, level),
				0.5 * (sorted_quantile(values, hi_level) - sorted_quantile(values, lo_level))};
	}
} // namespace pathbdg
