#pragma once

#include "pathbdg/certificate.hpp"
#include "pathbdg/path.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pathbdg
{
	enum class GeneratorKind
	{
		SRW,
		GAUSSIAN_WALK,
		RADEMACHER_SCALED,
		BM_DISCRETE,
	};

	/// Discrete-time martingale generators. Every increment is sign-symmetric
	/// given the past, so each generated process is a martingale.
	///
	///  - SRW: unit +-1 steps.
	///  - GAUSSIAN_WALK: N(0, sigma^2) steps.
	///  - RADEMACHER_SCALED: eps_k * sigma * (1 + min(1, |x_k|)), eps_k an independent sign.
	///  - BM_DISCRETE: Brownian motion on [0, horizon] sampled on a uniform grid of
	///    N steps, i.e. N(0, horizon / N) steps.
	struct Generator
	{
		GeneratorKind kind = GeneratorKind::SRW;
		double sigma = 1.0;
		double horizon = 1.0;
		double x0 = 0.0;

		/// Throws std::invalid_argument on negative or non-finite parameters.
		void validate() const;
		/// Stable identifier, e.g. "srw" or "gaussian(sigma=0.5)".
		std::string id() const;

		static Generator srw() { return {}; }
		static Generator gaussian(double sigma) { return {GeneratorKind::GAUSSIAN_WALK, sigma}; }
		static Generator rademacher_scaled(double sigma = 1.0) { return {GeneratorKind::RADEMACHER_SCALED, sigma}; }
		static Generator bm(double horizon) { return {GeneratorKind::BM_DISCRETE, 1.0, horizon}; }
	};

	/// Throws std::invalid_argument for an unknown name. Accepts srw, gaussian,
	/// rademacher, bm.
	GeneratorKind generator_kind_from_string(const std::string &name);

	/// Sample k of (gen, N, seed): a path of N + 1 points drawn from its own stream.
	Path sample_path(const Generator &gen, Index N, std::uint64_t seed, std::uint64_t k);

	/// Samples 0..count-1. Throws std::invalid_argument if count < 1 or N < 0.
	std::vector<Path> sample_paths(const Generator &gen, Index N, std::size_t count, std::uint64_t seed,
								   unsigned threads = 1);

	struct McReport
	{
		std::string quantity;
		std::string generator;
		Index N = 0;
		std::size_t samples = 0;
		double estimate = 0.0;
		double std_error = 0.0;
		std::uint64_t seed = 0;
		double elapsed_seconds = 0.0;
		/// Set by checks that carry a pass criterion.
		std::optional<bool> passed;
	};

	struct McOptions
	{
		unsigned threads = 1;
		/// Pass threshold in standard errors.
		double z = 3.0;
	};

	/// Estimates E[(H.X)_N] with H the Davis strategy of each sample path; passes
	/// iff |estimate| <= z * std_error.
	McReport verify_zero_integral(const Generator &gen, Index N, std::size_t count, std::uint64_t seed,
								  const McOptions &opts = {});

	struct BdgRatioReport
	{
		double p = 1.0;
		/// E[[X]_N^{p/2}].
		McReport qv_moment;
		/// E[(X*_N)^p].
		McReport max_moment;
		/// Constants checked: 3 and 6 for p = 1, c_p for both when p > 1.
		double a_p = 0.0;
		double b_p = 0.0;
		/// Per-sample differences [X]^{p/2} - a_p (X*)^p and (X*)^p - b_p [X]^{p/2}.
		McReport lower_gap;
		McReport upper_gap;
		/// E[[X]^{p/2}] / E[(X*)^p] and its inverse (0/0 = 0).
		double qv_over_max = 0.0;
		double max_over_qv = 0.0;
		/// Each gap mean is <= z * its standard error.
		bool passed = false;
	};

	/// Estimates both moments and checks them against the moment constants
	/// within statistical error. Throws std::invalid_argument if p < 1.
	BdgRatioReport empirical_bdg_ratio(const Generator &gen, Index N, std::size_t count, double p,
									   std::uint64_t seed, const McOptions &opts = {});

	class CounterexampleFound : public std::runtime_error
	{
	public:
		CounterexampleFound(InequalityId id, Path path, double ratio);

		InequalityId inequality_id() const { return id_; }
		const Path &path() const { return path_; }
		double ratio() const { return ratio_; }

	private:
		InequalityId id_;
		Path path_;
		double ratio_;
	};

	struct ScanOptions
	{
		/// Exponent for the BDG inequalities.
		double p = 2.0;
		double tolerance = kDefaultTolerance;
		Index max_length = 64;
		/// Starting path of restart 0; the others start from random paths.
		std::optional<Path> start;
		unsigned threads = 1;
	};

	struct ScanResult
	{
		InequalityId inequality_id;
		double best_ratio = 0.0;
		Path argmax_path{0.0};
		std::size_t iterations = 0;
		std::uint64_t seed = 0;
		std::size_t restarts = 0;
		double p = 0.0;
	};

	/// lhs / rhs for the scannable inequalities (DAVIS_QV_BOUND, DAVIS_MAX_BOUND,
	/// DAVIS_QV_SHARP, BDG_QV_BOUND, BDG_MAX_BOUND), with 0/0 = 0 and lhs > 0 >= rhs
	/// mapped to +infinity. Throws std::invalid_argument for other ids.
	double tightness_ratio(InequalityId id, const Path &path, const ScanOptions &opts = {});

	/// Random-restart hill climbing over paths maximizing tightness_ratio.
	/// Each restart runs `max_iters` moves. Throws CounterexampleFound if any
	/// visited path has ratio > 1 + tolerance or fails its certificate.
	ScanResult scan_tightness(InequalityId id, std::size_t max_iters, std::uint64_t seed, std::size_t restarts,
							  const ScanOptions &opts = {});
} // namespace pathbdg
