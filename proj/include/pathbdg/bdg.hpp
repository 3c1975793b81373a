#pragma once

#include "pathbdg/certificate.hpp"
#include "pathbdg/path.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <utility>

namespace pathbdg
{
	inline constexpr double kMaxExponent = 8.0;

	/// Exponent and Davis constants for the p > 1 inequalities.
	///
	/// alpha and beta are the constants of the two Davis bounds fed into the
	/// time-shifted inequalities. The defaults (3, 6) reproduce the printed
	/// constant c_p = 6^p (p-1)^(p-1).
	struct BdgConfig
	{
		double p = 2.0;
		double alpha = 3.0;
		double beta = 6.0;
		double tolerance = kDefaultTolerance;
		/// Admit p > kMaxExponent. Precision of c_p degrades quickly past 8.
		bool allow_large_p = false;

		/// Throws std::invalid_argument on p <= 1, p > kMaxExponent without override,
		/// or non-positive alpha, beta, tolerance.
		void validate() const;
	};

	/// a^e for a >= 0 computed as exp(e log a), with a == 0 mapped to 0.
	template <typename Scalar>
	Scalar power_of_nonnegative(Scalar a, Scalar e)
	{
		using std::exp;
		using std::log;
		if (a == Scalar(0))
			return Scalar(0);
		return exp(e * log(a));
	}

	/// c_p = 6^p (p-1)^(p-1). Throws std::invalid_argument unless 1 < p <= kMaxExponent
	/// (or allow_large_p).
	double bdg_constant(double p, bool allow_large_p = false);

	/// Davis strategy restarted at index `origin` on the shifted path
	/// y_j = x_{j+origin} - x_{origin-1}:
	///
	///   f_n = (x_n - x_{i-1}) / sqrt([x]_n - [x]_{i-1} + max_{i<=k<=n} (x_k - x_{i-1})^2)
	///
	/// for n = origin..N-1, 0/0 = 0.
	struct ShiftedStrategy
	{
		Index origin = 0;
		Eigen::VectorXd values;

		/// Value at absolute index n, origin <= n < origin + values.size().
		double at(Index n) const { return values[n - origin]; }
		/// Zero-padded before origin, so it can be used with integral().
		Strategy to_full() const;
	};

	/// Throws std::out_of_range unless 0 <= origin <= N.
	ShiftedStrategy shifted_strategy(const Path &path, Index origin);

	/// (f.x)_i^n for the shifted strategy with i = f.origin.
	double integral(const ShiftedStrategy &f, const Path &path, Index n);

	/// First: sqrt[x]_N - sqrt[x]_{i-1} <= 2 alpha x*_N - (f.x)_i^N.
	/// Second: x*_N - x*_{i-1} <= beta sqrt[x]_N + 2 (f.x)_i^N.
	std::pair<Certificate, Certificate> certify_shifted_davis(const Path &path, Index origin,
															  const BdgConfig &cfg = {});

	class PremiseViolated : public std::domain_error
	{
	public:
		PremiseViolated(Index worst_index, double worst_slack);

		Index worst_index() const { return worst_index_; }
		double worst_slack() const { return worst_slack_; }

	private:
		Index worst_index_;
		double worst_slack_;
	};

	/// Data of the pathwise Garsia-Neveu lemma at final index n:
	/// nondecreasing a_0..a_n >= 0, c_0..c_n, a triangular family
	/// h^{(i)}_j (0 <= i <= j <= n-1, stored at integrands(i, j)) and a path x_0..x_n,
	/// subject to a_n - a_{i-1} <= c_n + (h^{(i)}.x)_i^n for every 0 <= i <= n.
	class GnInstance
	{
	public:
		/// Validates every invariant; throws std::invalid_argument on malformed data
		/// and PremiseViolated (carrying the worst index) when the premise fails.
		GnInstance(double p, Eigen::VectorXd a, Eigen::VectorXd c, Eigen::MatrixXd integrands, Path x,
				   double tolerance = kDefaultTolerance);

		double p() const { return p_; }
		const Eigen::VectorXd &a() const { return a_; }
		const Eigen::VectorXd &c() const { return c_; }
		const Eigen::MatrixXd &integrands() const { return h_; }
		const Path &x() const { return x_; }
		double tolerance() const { return tolerance_; }
		/// Final index n.
		Index last() const { return x_.last(); }

		/// Integrand h^{(i)} as a zero-padded strategy over the whole path.
		Strategy integrand(Index i) const;

		/// Smallest slack of the premise over i and the index attaining it.
		static std::pair<Index, double> worst_premise(const Eigen::VectorXd &a, double c_last,
													  const Eigen::MatrixXd &integrands, const Path &x);

	private:
		double p_;
		Eigen::VectorXd a_;
		Eigen::VectorXd c_;
		Eigen::MatrixXd h_;
		Path x_;
		double tolerance_;
	};

	/// w_j = sum_{i<=j} p (a_i^{p-1} - a_{i-1}^{p-1}) h^{(i)}_j, j = 0..n-1.
	Strategy gn_weights(const GnInstance &inst);

	/// First: a_n^p <= p c_n a_n^{p-1} + (w.x)_n.
	/// Second: a_n^p <= (p-1)^{p-1} c_n^p + (p w.x)_n.
	std::pair<Certificate, Certificate> certify_gn(const GnInstance &inst);

	/// Integrands of the p-th moment bounds:
	///   h_n = sum_{i<=n} p^2 (sqrt[x]_i^{p-1} - sqrt[x]_{i-1}^{p-1}) f^{(i)}_n
	///   g_n = sum_{i<=n} p^2 ((x*_i)^{p-1} - (x*_{i-1})^{p-1}) f^{(i)}_n
	/// O(N^2); each h_n, g_n is summed in increasing i.
	std::pair<Strategy, Strategy> bdg_strategies(const Path &path, const BdgConfig &cfg);
	inline std::pair<Strategy, Strategy> bdg_strategies(const Path &path, double p)
	{
		return bdg_strategies(path, BdgConfig{.p = p});
	}

	/// First: [x]_N^{p/2} <= c_p (x*_N)^p - (h.x)_N.
	/// Second: (x*_N)^p <= c_p [x]_N^{p/2} + 2 (g.x)_N.
	std::pair<Certificate, Certificate> certify_bdg(const Path &path, const BdgConfig &cfg);
	inline std::pair<Certificate, Certificate> certify_bdg(const Path &path, double p,
														   double tolerance = kDefaultTolerance)
	{
		return certify_bdg(path, BdgConfig{.p = p, .tolerance = tolerance});
	}
} // namespace pathbdg
