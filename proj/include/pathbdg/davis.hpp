#pragma once

#include "pathbdg/certificate.hpp"
#include "pathbdg/path.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <optional>
#include <vector>
#include <stdexcept>
#include <utility>

namespace pathbdg
{
	/// Constant of the increment bound for g.
	inline constexpr double kLemmaC = std::numbers::sqrt2 - 1.0;
	/// Sharpened constant replacing 3 in the quadratic-variation bound.
	inline constexpr double kSharpDavis = std::numbers::sqrt2 + 1.0;

	/// Davis hedging strategy h_n = x_n / sqrt([x]_n + (x*_n)^2), n = 0..N-1,
	/// with 0/0 = 0. |h_n| <= 1.
	Strategy davis_strategy(const Path &path);
	Strategy davis_strategy(const Path &path, const PathStats &stats);

	/// First: sqrt[x]_N <= 3 x*_N - (h.x)_N.  Second: x*_N <= 6 sqrt[x]_N + 2 (h.x)_N.
	std::pair<Certificate, Certificate> certify_davis(const Path &path, double tolerance = kDefaultTolerance);

	/// sqrt[x]_N <= (sqrt2 + 1) x*_N - (h.x)_N.
	Certificate certify_davis_sharp(const Path &path, double tolerance = kDefaultTolerance);

	/// A point (x, m, q) of the auxiliary domain |x| <= m, q >= 0 plus an increment d.
	struct AuxPoint
	{
		double x;
		double m;
		double q;
		double d = 0.0;
	};

	namespace detail
	{
		template <typename Scalar>
		void check_aux_domain(Scalar x, Scalar m, Scalar q)
		{
			using std::abs;
			if (!(m >= Scalar(0)) || !(q >= Scalar(0)) || !(abs(x) <= m))
				throw std::invalid_argument("auxiliary point outside |x| <= m, q >= 0");
		}

		// Returns sqrt(m^2 + q) and (m^2 - x^2) / (2 sqrt(m^2 + q)); the latter is
		// evaluated in normalized form when m^2 + q is close to underflow.
		template <typename Scalar>
		std::pair<Scalar, Scalar> aux_terms(Scalar x, Scalar m, Scalar q)
		{
			using std::sqrt;
			const Scalar radicand = m * m + q;
			if (radicand >= Scalar(1e-300))
			{
				const Scalar s = sqrt(radicand);
				return {s, (m * m - x * x) / (Scalar(2) * s)};
			}
			using std::hypot;
			const Scalar s = hypot(m, sqrt(q));
			return {s, ((m - x) / s) * (m + x) / Scalar(2)};
		}
	} // namespace detail

	/// f(x,m,q) = -2 sqrt q + sqrt(m^2+q) - (m^2-x^2) / (2 sqrt(m^2+q)), f(0,0,0) = 0.
	template <typename Scalar>
	Scalar aux_f(Scalar x, Scalar m, Scalar q)
	{
		using std::sqrt;
		detail::check_aux_domain(x, m, q);
		if (m == Scalar(0) && q == Scalar(0))
			return Scalar(0);
		const auto [s, corr] = detail::aux_terms(x, m, q);
		return -Scalar(2) * sqrt(q) + s - corr;
	}

	/// g(x,m,q) = -2 m + sqrt(m^2+q) + (m^2-x^2) / (2 sqrt(m^2+q)), g(0,0,0) = 0.
	template <typename Scalar>
	Scalar aux_g(Scalar x, Scalar m, Scalar q)
	{
		detail::check_aux_domain(x, m, q);
		if (m == Scalar(0) && q == Scalar(0))
			return Scalar(0);
		const auto [s, corr] = detail::aux_terms(x, m, q);
		return -Scalar(2) * m + s + corr;
	}

	inline double aux_f(const AuxPoint &p) { return aux_f(p.x, p.m, p.q); }
	inline double aux_g(const AuxPoint &p) { return aux_g(p.x, p.m, p.q); }

	/// Increment bounds for the auxiliary functions at (x, m, q) moved by d:
	///   f(x+d, m v |x+d|, q+d^2) - f(x,m,q) <= x d / sqrt(m^2+q) + sqrt(q+d^2) - sqrt q
	///   g(x+d, m v |x+d|, q+d^2) - g(x,m,q) <= -x d / sqrt(m^2+q) + c ((m v |x+d|) - m)
	/// with c = sqrt2 - 1. Throws std::invalid_argument outside the domain.
	std::pair<Certificate, Certificate> check_aux_increments(const AuxPoint &p, double tolerance = kDefaultTolerance);

	/// Deterministic sweep of the auxiliary domain at m = 1:
	/// x in {-1, -0.9, ..., 1}, q in {0, 1e-3, 1e-2, ..., 1e4},
	/// d in {0} and +-10^{k/4} for k = -12..8 (|d| from 1e-3 to 1e2).
	std::vector<AuxPoint> aux_grid();

	/// Random admissible point. m is log-uniform on [1e-3, 1e3] and x uniform on
	/// [-m, m], with extra mass on the boundary |x| = m, on q = 0 and on
	/// increments that land exactly on the running maximum.
	AuxPoint random_aux_point(std::uint64_t seed, std::uint64_t k);

	struct AuxSweepResult
	{
		std::size_t points = 0;
		std::size_t f_failures = 0;
		std::size_t g_failures = 0;
		/// Smallest slack of each bound, normalized by max(1, |rhs|).
		double worst_f_slack = 0.0;
		double worst_g_slack = 0.0;
		std::optional<AuxPoint> worst_f_point;
		std::optional<AuxPoint> worst_g_point;

		bool passed() const { return f_failures == 0 && g_failures == 0; }
	};

	/// Runs check_aux_increments over `points`.
	AuxSweepResult sweep_aux_increments(const std::vector<AuxPoint> &points, double tolerance = kDefaultTolerance);
	/// Runs check_aux_increments over random_aux_point(seed, 0..count-1).
	AuxSweepResult sweep_aux_random(std::size_t count, std::uint64_t seed, double tolerance = kDefaultTolerance,
									unsigned threads = 1);
} // namespace pathbdg
