#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace pathbdg
{
	/// Pairwise (cascade) summation in a fixed order; the result is a pure
	/// function of the input sequence.
	double pairwise_sum(std::span<const double> values);

	struct MeanEstimate
	{
		double mean = 0.0;
		/// Sample standard deviation / sqrt(count); 0 for fewer than two samples.
		double std_error = 0.0;
		std::size_t count = 0;
	};

	/// Two-pass mean and standard error, both via pairwise summation.
	MeanEstimate estimate_mean(std::span<const double> values);

	/// Empirical quantile (type 7, linear interpolation) of an unsorted sample.
	double quantile(std::vector<double> values, double level);

	struct QuantileEstimate
	{
		double value = 0.0;
		/// Half-width of the order-statistic band at +-1 binomial standard deviation.
		double std_error = 0.0;
	};

	/// Quantile with an order-statistic standard error: the spread of the order
	/// statistics at ranks n*level -+ sqrt(n*level*(1-level)), halved.
	QuantileEstimate estimate_quantile(std::vector<double> values, double level);
} // namespace pathbdg
