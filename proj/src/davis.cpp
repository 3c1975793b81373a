#include "pathbdg/davis.hpp"

#include "pathbdg/parallel.hpp"
#include "pathbdg/rng.hpp"

#include <algorithm>
#include <cmath>

namespace pathbdg
{
	Strategy davis_strategy(const Path &path)
	{
		return davis_strategy(path, compute_stats(path));
	}

	Strategy davis_strategy(const Path &path, const PathStats &stats)
	{
		const Index steps = path.last();
		Strategy h(steps);
		for (Index n = 0; n < steps; ++n)
		{
			const double denom = std::sqrt(stats.quad_var[n] + stats.running_max[n] * stats.running_max[n]);
			// 0/0 = 0; the numerator vanishes whenever the denominator does.
			h[n] = denom == 0.0 ? 0.0 : path[n] / denom;
		}
		return h;
	}

	std::pair<Certificate, Certificate> certify_davis(const Path &path, double tolerance)
	{
		const PathStats stats = compute_stats(path);
		const Index N = path.last();
		const double gain = integral(davis_strategy(path, stats), path, 0, N);
		const double root_qv = std::sqrt(stats.quad_var[N]);
		const double max = stats.running_max[N];
		return {make_certificate(InequalityId::DAVIS_QV_BOUND, root_qv, 3.0 * max - gain, tolerance),
				make_certificate(InequalityId::DAVIS_MAX_BOUND, max, 6.0 * root_qv + 2.0 * gain, tolerance)};
	}

	Certificate certify_davis_sharp(const Path &path, double tolerance)
	{
		const PathStats stats = compute_stats(path);
		const Index N = path.last();
		const double gain = integral(davis_strategy(path, stats), path, 0, N);
		return make_certificate(InequalityId::DAVIS_QV_SHARP, std::sqrt(stats.quad_var[N]),
								kSharpDavis * stats.running_max[N] - gain, tolerance);
	}

	std::pair<Certificate, Certificate> check_aux_increments(const AuxPoint &p, double tolerance)
	{
		detail::check_aux_domain(p.x, p.m, p.q);

		const double x1 = p.x + p.d;
		const double m1 = std::max(p.m, std::abs(x1));
		const double q1 = p.q + p.d * p.d;

		const double norm = std::hypot(p.m, std::sqrt(p.q));
		// |x| <= m, so norm == 0 forces x == 0 and the ratio is 0/0 = 0.
		const double drift = norm == 0.0 ? 0.0 : p.x * p.d / norm;

		const double df = aux_f(x1, m1, q1) - aux_f(p.x, p.m, p.q);
		const double dg = aux_g(x1, m1, q1) - aux_g(p.x, p.m, p.q);

		return {make_certificate(InequalityId::AUX_F_INCREMENT, df, drift + (std::sqrt(q1) - std::sqrt(p.q)), tolerance),
				make_certificate(InequalityId::AUX_G_INCREMENT, dg, -drift + kLemmaC * (m1 - p.m), tolerance)};
	}

	std::vector<AuxPoint> aux_grid()
	{
		std::vector<double> xs;
		for (int k = -10; k <= 10; ++k)
			xs.push_back(k / 10.0);
		std::vector<double> qs{0.0};
		for (int e = -3; e <= 4; ++e)
			qs.push_back(std::pow(10.0, e));
		std::vector<double> ds{0.0};
		for (int k = -12; k <= 8; ++k)
		{
			const double mag = std::pow(10.0, k / 4.0);
			ds.push_back(mag);
			ds.push_back(-mag);
		}

		std::vector<AuxPoint> grid;
		grid.reserve(xs.size() * qs.size() * ds.size());
		for (double x : xs)
			for (double q : qs)
				for (double d : ds)
					grid.push_back({x, 1.0, q, d});
		return grid;
	}

	AuxPoint random_aux_point(std::uint64_t seed, std::uint64_t k)
	{
		RandomStream rng = make_stream(seed, StreamDomain::AuxGrid, k);
		const double m = std::pow(10.0, rng.uniform(-3.0, 3.0));

		double x = 0.0;
		const double xmode = rng.uniform();
		if (xmode < 0.15)
			x = rng.sign() * m;
		else if (xmode < 0.2)
			x = 0.0;
		else
			x = rng.uniform(-m, m);

		const double q = rng.uniform() < 0.15 ? 0.0 : m * m * std::pow(10.0, rng.uniform(-6.0, 6.0));

		double d = 0.0;
		const double dmode = rng.uniform();
		if (dmode < 0.1)
			d = rng.sign() * m - x; // lands on the running maximum
		else if (dmode < 0.15)
			d = -2.0 * x; // mirror image
		else
			d = rng.sign() * m * std::pow(10.0, rng.uniform(-4.0, 4.0));
		return {x, m, q, d};
	}

	namespace
	{
		void record(AuxSweepResult &acc, const AuxPoint &p, const std::pair<Certificate, Certificate> &certs)
		{
			const auto normalized = [](const Certificate &c) { return c.slack / std::max(1.0, std::abs(c.rhs)); };
			const double sf = normalized(certs.first);
			const double sg = normalized(certs.second);
			if (!certs.first.passed)
				++acc.f_failures;
			if (!certs.second.passed)
				++acc.g_failures;
			if (!acc.worst_f_point || sf < acc.worst_f_slack)
			{
				acc.worst_f_slack = sf;
				acc.worst_f_point = p;
			}
			if (!acc.worst_g_point || sg < acc.worst_g_slack)
			{
				acc.worst_g_slack = sg;
				acc.worst_g_point = p;
			}
			++acc.points;
		}
	} // namespace

	AuxSweepResult sweep_aux_increments(const std::vector<AuxPoint> &points, double tolerance)
	{
		AuxSweepResult acc;
		for (const AuxPoint &p : points)
			record(acc, p, check_aux_increments(p, tolerance));
		return acc;
	}

	AuxSweepResult sweep_aux_random(std::size_t count, std::uint64_t seed, double tolerance, unsigned threads)
	{
		using Item = std::pair<AuxPoint, std::pair<Certificate, Certificate>>;
		const auto items = parallel_map<Item>(count, threads, [&](std::size_t k) {
			const AuxPoint p = random_aux_point(seed, k);
			return Item{p, check_aux_increments(p, tolerance)};
		});
		AuxSweepResult acc;
		for (const auto &[p, certs] : items)
			record(acc, p, certs);
		return acc;
	}
} // namespace pathbdg
