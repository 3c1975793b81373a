#include "pathbdg/bdg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace pathbdg
{
	namespace
	{
		// Shifted Davis integrand f^{(origin)}_n for n = origin..N-1, written into out[0..].
		// The shifted quadratic variation [x]_n - [x]_{i-1} is accumulated directly
		// from the increments rather than as a difference of prefix sums.
		template <typename Sink>
		void for_each_shifted(const Path &path, Index origin, Sink &&sink)
		{
			const Index N = path.last();
			const double base = path.at(origin - 1);
			double qv = 0.0;
			double max_sq = 0.0;
			double prev = base;
			for (Index n = origin; n < N; ++n)
			{
				const double step = path[n] - prev;
				qv += step * step;
				const double shifted = path[n] - base;
				max_sq = std::max(max_sq, shifted * shifted);
				const double denom = std::sqrt(qv + max_sq);
				sink(n, denom == 0.0 ? 0.0 : shifted / denom);
				prev = path[n];
			}
		}
	} // namespace

	void BdgConfig::validate() const
	{
		if (!(p > 1.0) || !std::isfinite(p))
			throw std::invalid_argument("exponent p must be finite and > 1");
		if (p > kMaxExponent && !allow_large_p)
			throw std::invalid_argument("exponent p = " + std::to_string(p) + " exceeds "
										+ std::to_string(kMaxExponent) + " (use the large-p override)");
		if (!(alpha > 0.0) || !(beta > 0.0))
			throw std::invalid_argument("Davis constants alpha and beta must be positive");
		if (!(tolerance > 0.0))
			throw std::invalid_argument("tolerance must be positive");
	}

	double bdg_constant(double p, bool allow_large_p)
	{
		BdgConfig{.p = p, .allow_large_p = allow_large_p}.validate();
		return std::pow(6.0, p) * std::pow(p - 1.0, p - 1.0);
	}

	Strategy ShiftedStrategy::to_full() const
	{
		Strategy full = Strategy::Zero(origin + values.size());
		full.tail(values.size()) = values;
		return full;
	}

	ShiftedStrategy shifted_strategy(const Path &path, Index origin)
	{
		if (origin < 0 || origin > path.last())
			throw std::out_of_range("shift origin " + std::to_string(origin) + " outside path");
		ShiftedStrategy f{origin, Eigen::VectorXd(path.last() - origin)};
		for_each_shifted(path, origin, [&](Index n, double v) { f.values[n - origin] = v; });
		return f;
	}

	double integral(const ShiftedStrategy &f, const Path &path, Index n)
	{
		if (n < f.origin || n > path.last() || n > f.origin + f.values.size())
			throw std::out_of_range("shifted integral end index out of range");
		double sum = 0.0;
		for (Index j = f.origin; j < n; ++j)
			sum += f.at(j) * (path[j + 1] - path[j]);
		return sum;
	}

	std::pair<Certificate, Certificate> certify_shifted_davis(const Path &path, Index origin, const BdgConfig &cfg)
	{
		cfg.validate();
		const ShiftedStrategy f = shifted_strategy(path, origin);
		const PathStats stats = compute_stats(path);
		const Index N = path.last();
		const double gain = integral(f, path, N);
		const double root_qv = std::sqrt(stats.quad_var[N]);

		return {make_certificate(InequalityId::SHIFTED_QV, root_qv - std::sqrt(stats.qv_at(origin - 1)),
								 2.0 * cfg.alpha * stats.running_max[N] - gain, cfg.tolerance),
				make_certificate(InequalityId::SHIFTED_MAX, stats.running_max[N] - stats.max_at(origin - 1),
								 cfg.beta * root_qv + 2.0 * gain, cfg.tolerance)};
	}

	PremiseViolated::PremiseViolated(Index worst_index, double worst_slack)
		: std::domain_error("Garsia-Neveu premise violated at index " + std::to_string(worst_index) + " (slack "
							+ std::to_string(worst_slack) + ")"),
		  worst_index_(worst_index),
		  worst_slack_(worst_slack)
	{
	}

	GnInstance::GnInstance(double p, Eigen::VectorXd a, Eigen::VectorXd c, Eigen::MatrixXd integrands, Path x,
						   double tolerance)
		: p_(p),
		  a_(std::move(a)),
		  c_(std::move(c)),
		  h_(std::move(integrands)),
		  x_(std::move(x)),
		  tolerance_(tolerance)
	{
		const Index n = x_.last();
		if (!(p_ > 1.0) || !std::isfinite(p_))
			throw std::invalid_argument("Garsia-Neveu exponent must be finite and > 1");
		if (!(tolerance_ > 0.0))
			throw std::invalid_argument("tolerance must be positive");
		if (a_.size() != n + 1 || c_.size() != n + 1)
			throw std::invalid_argument("sequences a and c must have one entry per path point");
		if (h_.rows() != n || h_.cols() != n)
			throw std::invalid_argument("integrand family must be n x n for a path of final index n");
		if (!a_.allFinite() || !c_.allFinite() || !h_.allFinite())
			throw std::invalid_argument("Garsia-Neveu data must be finite");
		for (Index k = 0; k <= n; ++k)
		{
			const double prev = k == 0 ? 0.0 : a_[k - 1];
			if (!(a_[k] >= prev))
				throw std::invalid_argument("sequence a must be nonnegative and nondecreasing (index "
											+ std::to_string(k) + ")");
		}

		for (Index i = 0; i <= n; ++i)
		{
			const double rhs = c_[n] + integral(integrand(i), x_, i, n);
			const double slack = rhs - (a_[n] - (i == 0 ? 0.0 : a_[i - 1]));
			if (slack < -tolerance_ * std::max(1.0, std::abs(rhs)))
			{
				const auto [worst, worst_slack] = worst_premise(a_, c_[n], h_, x_);
				throw PremiseViolated(worst, worst_slack);
			}
		}
	}

	Strategy GnInstance::integrand(Index i) const
	{
		const Index n = last();
		Strategy h = Strategy::Zero(n);
		for (Index j = i; j < n; ++j)
			h[j] = h_(i, j);
		return h;
	}

	std::pair<Index, double> GnInstance::worst_premise(const Eigen::VectorXd &a, double c_last,
													   const Eigen::MatrixXd &integrands, const Path &x)
	{
		const Index n = x.last();
		Index worst = 0;
		double worst_slack = std::numeric_limits<double>::infinity();
		for (Index i = 0; i <= n; ++i)
		{
			double gain = 0.0;
			for (Index j = i; j < n; ++j)
				gain += integrands(i, j) * (x[j + 1] - x[j]);
			const double slack = c_last + gain - (a[n] - (i == 0 ? 0.0 : a[i - 1]));
			if (slack < worst_slack)
			{
				worst_slack = slack;
				worst = i;
			}
		}
		return {worst, worst_slack};
	}

	Strategy gn_weights(const GnInstance &inst)
	{
		const Index n = inst.last();
		const double p = inst.p();
		const Eigen::VectorXd &a = inst.a();

		Eigen::VectorXd jumps(n + 1);
		double prev = 0.0;
		for (Index i = 0; i <= n; ++i)
		{
			const double cur = power_of_nonnegative(a[i], p - 1.0);
			jumps[i] = p * (cur - prev);
			prev = cur;
		}

		Strategy w = Strategy::Zero(n);
		for (Index j = 0; j < n; ++j)
		{
			for (Index i = 0; i <= j; ++i)
				w[j] += jumps[i] * inst.integrands()(i, j);
		}
		return w;
	}

	std::pair<Certificate, Certificate> certify_gn(const GnInstance &inst)
	{
		const Index n = inst.last();
		const double p = inst.p();
		const double an = inst.a()[n];
		// The premise at i = n forces c_n >= a_n - a_{n-1} >= 0 up to tolerance.
		const double cn = std::max(inst.c()[n], 0.0);
		const Strategy w = gn_weights(inst);

		const double lhs = std::pow(an, p);
		const double rhs_linear = p * inst.c()[n] * power_of_nonnegative(an, p - 1.0) + integral(w, inst.x());
		const double rhs_power = std::pow(p - 1.0, p - 1.0) * std::pow(cn, p)
								 + integral(Strategy(p * w), inst.x());
		return {make_certificate(InequalityId::GN_LINEAR, lhs, rhs_linear, inst.tolerance()),
				make_certificate(InequalityId::GN_POWER, lhs, rhs_power, inst.tolerance())};
	}

	std::pair<Strategy, Strategy> bdg_strategies(const Path &path, const BdgConfig &cfg)
	{
		cfg.validate();
		const double p = cfg.p;
		const double p2 = p * p;
		const Index N = path.last();
		const PathStats stats = compute_stats(path);

		Strategy h = Strategy::Zero(N);
		Strategy g = Strategy::Zero(N);
		double prev_qv_pow = 0.0;
		double prev_max_pow = 0.0;
		for (Index i = 0; i < N; ++i)
		{
			const double qv_pow = power_of_nonnegative(stats.quad_var[i], (p - 1.0) / 2.0);
			const double max_pow = power_of_nonnegative(stats.running_max[i], p - 1.0);
			const double weight_h = p2 * (qv_pow - prev_qv_pow);
			const double weight_g = p2 * (max_pow - prev_max_pow);
			prev_qv_pow = qv_pow;
			prev_max_pow = max_pow;

			for_each_shifted(path, i, [&](Index n, double f) {
				h[n] += weight_h * f;
				g[n] += weight_g * f;
			});
		}
		return {h, g};
	}

	std::pair<Certificate, Certificate> certify_bdg(const Path &path, const BdgConfig &cfg)
	{
		const auto [h, g] = bdg_strategies(path, cfg);
		const double cp = bdg_constant(cfg.p, cfg.allow_large_p);
		const PathStats stats = compute_stats(path);
		const Index N = path.last();
		const double qv_moment = std::pow(stats.quad_var[N], cfg.p / 2.0);
		const double max_moment = std::pow(stats.running_max[N], cfg.p);

		return {make_certificate(InequalityId::BDG_QV_BOUND, qv_moment, cp * max_moment - integral(h, path),
								 cfg.tolerance),
				make_certificate(InequalityId::BDG_MAX_BOUND, max_moment, cp * qv_moment + 2.0 * integral(g, path),
								 cfg.tolerance)};
	}
} // namespace pathbdg
