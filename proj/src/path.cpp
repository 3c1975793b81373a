#include "pathbdg/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace pathbdg
{
	namespace
	{
		void validate(const Eigen::VectorXd &values)
		{
			if (values.size() < 1)
				throw std::invalid_argument("path must contain at least one point");
			for (Index n = 0; n < values.size(); ++n)
			{
				if (!std::isfinite(values[n]))
					throw std::invalid_argument("path entry " + std::to_string(n) + " is not finite");
			}
		}
	} // namespace

	Path::Path(Eigen::VectorXd values)
		: values_(std::move(values))
	{
		validate(values_);
	}

	Path::Path(std::initializer_list<double> values)
		: values_(static_cast<Index>(values.size()))
	{
		Index n = 0;
		for (double v : values)
			values_[n++] = v;
		validate(values_);
	}

	Path::Path(std::span<const double> values)
		: values_(Eigen::Map<const Eigen::VectorXd>(values.data(), static_cast<Index>(values.size())))
	{
		validate(values_);
	}

	double Path::at(Index n) const
	{
		if (n == -1)
			return 0.0;
		if (n < -1 || n > last())
			throw std::out_of_range("path index " + std::to_string(n) + " out of range");
		return values_[n];
	}

	std::vector<double> Path::to_vector() const
	{
		return {values_.data(), values_.data() + values_.size()};
	}

	PathStats compute_stats(const Path &path)
	{
		const Index len = path.size();
		PathStats stats{Eigen::VectorXd(len), Eigen::VectorXd(len)};

		double running = std::abs(path[0]);
		double qv = path[0] * path[0];
		stats.running_max[0] = running;
		stats.quad_var[0] = qv;
		for (Index n = 1; n < len; ++n)
		{
			const double step = path[n] - path[n - 1];
			running = std::max(running, std::abs(path[n]));
			qv += step * step;
			stats.running_max[n] = running;
			stats.quad_var[n] = qv;
		}
		return stats;
	}

	double integral(const Strategy &h, const Path &path, Index i, Index n)
	{
		if (i < 0 || i > n || n > path.last())
			throw std::out_of_range("integral range [" + std::to_string(i) + ", " + std::to_string(n)
									+ "] outside path of final index " + std::to_string(path.last()));
		if (h.size() < n)
			throw std::out_of_range("strategy has " + std::to_string(h.size()) + " entries, need "
									+ std::to_string(n));

		double sum = 0.0;
		for (Index j = i; j < n; ++j)
			sum += h[j] * (path[j + 1] - path[j]);
		return sum;
	}

	Path scale_path(const Path &path, double lambda)
	{
		if (!std::isfinite(lambda) || lambda <= 0.0)
			throw std::invalid_argument("scale factor must be finite and positive");
		return Path(Eigen::VectorXd(lambda * path.values()));
	}
} // namespace pathbdg
