#pragma once

#include <Eigen/Dense>

#include <initializer_list>
#include <span>
#include <vector>

namespace pathbdg
{
	using Index = Eigen::Index;

	/// Integrand values h_0..h_{N-1}; h_n is the position held over the step n -> n+1.
	using Strategy = Eigen::VectorXd;

	/// A finite real path x_0..x_N (N >= 0). Every entry is finite.
	///
	/// at(-1) returns 0, so formulas written with the "sequence is zero at
	/// time -1" convention can be transcribed without sentinel entries.
	class Path
	{
	public:
		explicit Path(Eigen::VectorXd values);
		Path(std::initializer_list<double> values);
		explicit Path(std::span<const double> values);

		const Eigen::VectorXd &values() const { return values_; }

		/// Number of points, N + 1.
		Index size() const { return values_.size(); }
		/// Final index N.
		Index last() const { return values_.size() - 1; }

		double operator[](Index n) const { return values_[n]; }
		double at(Index n) const;

		std::vector<double> to_vector() const;

		friend bool operator==(const Path &a, const Path &b) { return a.values_ == b.values_; }

	private:
		Eigen::VectorXd values_;
	};

	/// Running maximum x*_n = max_{k<=n} |x_k| and quadratic variation
	/// [x]_n = x_0^2 + sum_{k<n} (x_{k+1} - x_k)^2.
	struct PathStats
	{
		Eigen::VectorXd running_max;
		Eigen::VectorXd quad_var;

		/// Accessors honouring the index -1 convention.
		double max_at(Index n) const { return n < 0 ? 0.0 : running_max[n]; }
		double qv_at(Index n) const { return n < 0 ? 0.0 : quad_var[n]; }
	};

	PathStats compute_stats(const Path &path);

	/// (h.x)_i^n = sum_{j=i}^{n-1} h_j (x_{j+1} - x_j); zero when i == n.
	/// h is indexed from 0, so it must hold at least n entries.
	/// Throws std::out_of_range unless 0 <= i <= n <= N.
	double integral(const Strategy &h, const Path &path, Index i, Index n);

	/// (h.x)_N over the whole path.
	inline double integral(const Strategy &h, const Path &path)
	{
		return integral(h, path, 0, path.last());
	}

	/// Componentwise scaling; throws std::invalid_argument unless lambda is finite and positive.
	Path scale_path(const Path &path, double lambda);
} // namespace pathbdg
