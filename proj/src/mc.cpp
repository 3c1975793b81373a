#include "pathbdg/mc.hpp"

#include "pathbdg/bdg.hpp"
#include "pathbdg/davis.hpp"
#include "pathbdg/parallel.hpp"
#include "pathbdg/rng.hpp"
#include "pathbdg/summary.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

namespace pathbdg
{
	namespace
	{
		using Clock = std::chrono::steady_clock;

		double seconds_since(Clock::time_point start)
		{
			return std::chrono::duration<double>(Clock::now() - start).count();
		}

		McReport make_report(std::string quantity, const Generator &gen, Index N, std::uint64_t seed,
							 std::span<const double> values)
		{
			const MeanEstimate est = estimate_mean(values);
			McReport report;
			report.quantity = std::move(quantity);
			report.generator = gen.id();
			report.N = N;
			report.samples = est.count;
			report.estimate = est.mean;
			report.std_error = est.std_error;
			report.seed = seed;
			return report;
		}
	} // namespace

	void Generator::validate() const
	{
		if (!std::isfinite(sigma) || sigma < 0.0)
			throw std::invalid_argument("generator sigma must be finite and nonnegative");
		if (!std::isfinite(horizon) || horizon <= 0.0)
			throw std::invalid_argument("generator horizon must be finite and positive");
		if (!std::isfinite(x0))
			throw std::invalid_argument("generator starting value must be finite");
	}

	std::string Generator::id() const
	{
		std::ostringstream os;
		os.precision(17);
		switch (kind)
		{
		case GeneratorKind::SRW:
			os << "srw";
			break;
		case GeneratorKind::GAUSSIAN_WALK:
			os << "gaussian(sigma=" << sigma << ")";
			break;
		case GeneratorKind::RADEMACHER_SCALED:
			os << "rademacher_scaled(sigma=" << sigma << ")";
			break;
		case GeneratorKind::BM_DISCRETE:
			os << "bm(horizon=" << horizon << ")";
			break;
		}
		if (x0 != 0.0)
			os << "+x0=" << x0;
		return os.str();
	}

	GeneratorKind generator_kind_from_string(const std::string &name)
	{
		if (name == "srw")
			return GeneratorKind::SRW;
		if (name == "gaussian")
			return GeneratorKind::GAUSSIAN_WALK;
		if (name == "rademacher")
			return GeneratorKind::RADEMACHER_SCALED;
		if (name == "bm")
			return GeneratorKind::BM_DISCRETE;
		throw std::invalid_argument("unknown generator '" + name + "'");
	}

	Path sample_path(const Generator &gen, Index N, std::uint64_t seed, std::uint64_t k)
	{
		if (N < 0)
			throw std::invalid_argument("path length must be nonnegative");
		gen.validate();

		RandomStream rng = make_stream(seed, StreamDomain::McSample, k);
		Eigen::VectorXd x(N + 1);
		x[0] = gen.x0;
		const double bm_scale = N > 0 ? std::sqrt(gen.horizon / static_cast<double>(N)) : 0.0;
		for (Index n = 0; n < N; ++n)
		{
			double step = 0.0;
			switch (gen.kind)
			{
			case GeneratorKind::SRW:
				step = rng.sign();
				break;
			case GeneratorKind::GAUSSIAN_WALK:
				step = gen.sigma * rng.normal();
				break;
			case GeneratorKind::RADEMACHER_SCALED:
				step = rng.sign() * gen.sigma * (1.0 + std::min(1.0, std::abs(x[n])));
				break;
			case GeneratorKind::BM_DISCRETE:
				step = bm_scale * rng.normal();
				break;
			}
			x[n + 1] = x[n] + step;
		}
		return Path(std::move(x));
	}

	std::vector<Path> sample_paths(const Generator &gen, Index N, std::size_t count, std::uint64_t seed,
								   unsigned threads)
	{
		if (count < 1)
			throw std::invalid_argument("sample count must be at least 1");
		if (N < 0)
			throw std::invalid_argument("path length must be nonnegative");
		gen.validate();
		auto raw = parallel_map<std::vector<double>>(count, threads, [&](std::size_t k) {
			return sample_path(gen, N, seed, k).to_vector();
		});
		std::vector<Path> paths;
		paths.reserve(count);
		for (const auto &values : raw)
			paths.emplace_back(std::span<const double>(values));
		return paths;
	}

	McReport verify_zero_integral(const Generator &gen, Index N, std::size_t count, std::uint64_t seed,
								  const McOptions &opts)
	{
		if (count < 1)
			throw std::invalid_argument("sample count must be at least 1");
		gen.validate();
		const auto start = Clock::now();
		const auto gains = parallel_map<double>(count, opts.threads, [&](std::size_t k) {
			const Path path = sample_path(gen, N, seed, k);
			return integral(davis_strategy(path), path);
		});
		McReport report = make_report("davis_integral", gen, N, seed, gains);
		report.passed = std::abs(report.estimate) <= opts.z * report.std_error;
		report.elapsed_seconds = seconds_since(start);
		return report;
	}

	BdgRatioReport empirical_bdg_ratio(const Generator &gen, Index N, std::size_t count, double p,
									   std::uint64_t seed, const McOptions &opts)
	{
		if (!(p >= 1.0) || !std::isfinite(p))
			throw std::invalid_argument("moment exponent p must be finite and >= 1");
		if (count < 1)
			throw std::invalid_argument("sample count must be at least 1");
		gen.validate();

		BdgRatioReport out;
		out.p = p;
		if (p == 1.0)
		{
			out.a_p = 3.0;
			out.b_p = 6.0;
		}
		else
		{
			out.a_p = out.b_p = bdg_constant(p);
		}

		const auto start = Clock::now();
		struct Moments
		{
			double qv = 0.0;
			double max = 0.0;
		};
		const auto moments = parallel_map<Moments>(count, opts.threads, [&](std::size_t k) {
			const Path path = sample_path(gen, N, seed, k);
			const PathStats stats = compute_stats(path);
			return Moments{std::pow(stats.quad_var[N], p / 2.0), std::pow(stats.running_max[N], p)};
		});

		std::vector<double> qv(count), max(count), lower(count), upper(count);
		for (std::size_t k = 0; k < count; ++k)
		{
			qv[k] = moments[k].qv;
			max[k] = moments[k].max;
			lower[k] = moments[k].qv - out.a_p * moments[k].max;
			upper[k] = moments[k].max - out.b_p * moments[k].qv;
		}
		out.qv_moment = make_report("qv_moment", gen, N, seed, qv);
		out.max_moment = make_report("max_moment", gen, N, seed, max);
		out.lower_gap = make_report("qv_minus_a_max", gen, N, seed, lower);
		out.upper_gap = make_report("max_minus_b_qv", gen, N, seed, upper);
		out.lower_gap.passed = out.lower_gap.estimate <= opts.z * out.lower_gap.std_error;
		out.upper_gap.passed = out.upper_gap.estimate <= opts.z * out.upper_gap.std_error;
		out.passed = *out.lower_gap.passed && *out.upper_gap.passed;

		const double eq = out.qv_moment.estimate;
		const double em = out.max_moment.estimate;
		out.qv_over_max = em == 0.0 ? 0.0 : eq / em;
		out.max_over_qv = eq == 0.0 ? 0.0 : em / eq;

		const double elapsed = seconds_since(start);
		for (McReport *r : {&out.qv_moment, &out.max_moment, &out.lower_gap, &out.upper_gap})
			r->elapsed_seconds = elapsed;
		return out;
	}

	CounterexampleFound::CounterexampleFound(InequalityId id, Path path, double ratio)
		: std::runtime_error("counterexample to " + std::string(to_string(id)) + " with ratio "
							 + std::to_string(ratio)),
		  id_(id),
		  path_(std::move(path)),
		  ratio_(ratio)
	{
	}

	namespace
	{
		Certificate scan_certificate(InequalityId id, const Path &path, const ScanOptions &opts)
		{
			switch (id)
			{
			case InequalityId::DAVIS_QV_BOUND:
				return certify_davis(path, opts.tolerance).first;
			case InequalityId::DAVIS_MAX_BOUND:
				return certify_davis(path, opts.tolerance).second;
			case InequalityId::DAVIS_QV_SHARP:
				return certify_davis_sharp(path, opts.tolerance);
			case InequalityId::BDG_QV_BOUND:
				return certify_bdg(path, opts.p, opts.tolerance).first;
			case InequalityId::BDG_MAX_BOUND:
				return certify_bdg(path, opts.p, opts.tolerance).second;
			default:
				throw std::invalid_argument("inequality " + std::string(to_string(id)) + " cannot be scanned");
			}
		}

		double ratio_of(const Certificate &cert)
		{
			if (cert.lhs == 0.0)
				return 0.0;
			if (cert.rhs > 0.0)
				return cert.lhs / cert.rhs;
			return std::numeric_limits<double>::infinity();
		}

		// Evaluates and enforces the no-counterexample contract.
		double checked_ratio(InequalityId id, const Path &path, const ScanOptions &opts)
		{
			const Certificate cert = scan_certificate(id, path, opts);
			const double ratio = ratio_of(cert);
			if (!cert.passed || !(ratio <= 1.0 + opts.tolerance))
				throw CounterexampleFound(id, path, ratio);
			return ratio;
		}

		Eigen::VectorXd normalized(Eigen::VectorXd x)
		{
			const double peak = x.cwiseAbs().maxCoeff();
			if (peak > 0.0)
				x /= peak;
			return x;
		}

		struct ClimbOutcome
		{
			double ratio = 0.0;
			std::vector<double> path;
			std::size_t iterations = 0;
		};

		ClimbOutcome climb(InequalityId id, std::size_t max_iters, std::uint64_t seed, std::size_t restart,
						   const ScanOptions &opts)
		{
			RandomStream rng = make_stream(seed, StreamDomain::Scan, restart);
			const Index max_len = std::max<Index>(1, opts.max_length);

			Eigen::VectorXd current;
			if (restart == 0 && opts.start)
			{
				current = opts.start->values();
			}
			else
			{
				const Index len = 1 + static_cast<Index>(rng.below(static_cast<std::uint64_t>(max_len)));
				current.resize(len);
				current[0] = rng.normal();
				for (Index n = 1; n < len; ++n)
					current[n] = current[n - 1] + rng.normal();
				current = normalized(std::move(current));
			}
			double current_ratio = checked_ratio(id, Path(current), opts);

			double step = 0.5;
			for (std::size_t it = 0; it < max_iters; ++it)
			{
				Eigen::VectorXd candidate = current;
				const Index len = candidate.size();
				const double move = rng.uniform();
				if (move < 0.15 && len < max_len)
				{
					candidate.conservativeResize(len + 1);
					candidate[len] = candidate[len - 1] + step * rng.normal();
				}
				else if (move < 0.3 && len > 1)
				{
					const Index drop = static_cast<Index>(rng.below(static_cast<std::uint64_t>(len)));
					Eigen::VectorXd shorter(len - 1);
					shorter.head(drop) = candidate.head(drop);
					shorter.tail(len - 1 - drop) = candidate.tail(len - 1 - drop);
					candidate = std::move(shorter);
				}
				else
				{
					const Index j = static_cast<Index>(rng.below(static_cast<std::uint64_t>(len)));
					candidate[j] += step * rng.normal();
				}
				candidate = normalized(std::move(candidate));

				const double ratio = checked_ratio(id, Path(candidate), opts);
				if (ratio >= current_ratio)
				{
					current = std::move(candidate);
					current_ratio = ratio;
					step = std::min(step * 1.2, 4.0);
				}
				else
				{
					step = std::max(step * 0.95, 1e-6);
				}
			}
			return {current_ratio, std::vector<double>(current.data(), current.data() + current.size()), max_iters};
		}
	} // namespace

	double tightness_ratio(InequalityId id, const Path &path, const ScanOptions &opts)
	{
		return ratio_of(scan_certificate(id, path, opts));
	}

	ScanResult scan_tightness(InequalityId id, std::size_t max_iters, std::uint64_t seed, std::size_t restarts,
							  const ScanOptions &opts)
	{
		// Validates the id up front.
		(void)scan_certificate(id, Path{0.0}, opts);
		restarts = std::max<std::size_t>(restarts, 1);

		const auto outcomes = parallel_map<ClimbOutcome>(restarts, opts.threads, [&](std::size_t r) {
			return climb(id, max_iters, seed, r, opts);
		});

		std::size_t best = 0;
		std::size_t iterations = 0;
		for (std::size_t r = 0; r < outcomes.size(); ++r)
		{
			iterations += outcomes[r].iterations;
			if (outcomes[r].ratio > outcomes[best].ratio)
				best = r;
		}

		ScanResult result{id};
		result.best_ratio = outcomes[best].ratio;
		result.argmax_path = Path(std::span<const double>(outcomes[best].path));
		result.iterations = iterations;
		result.seed = seed;
		result.restarts = restarts;
		result.p = (id == InequalityId::BDG_QV_BOUND || id == InequalityId::BDG_MAX_BOUND) ? opts.p : 0.0;
		return result;
	}
} // namespace pathbdg
