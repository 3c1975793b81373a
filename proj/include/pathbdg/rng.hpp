#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>

namespace pathbdg
{
	/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
	/// as easy as 1, 2, 3"). Stateless: the output depends only on (counter, key).
	class Philox4x32
	{
	public:
		using Counter = std::array<std::uint32_t, 4>;
		using Key = std::array<std::uint32_t, 2>;

		static constexpr Counter generate(Counter ctr, Key key)
		{
			for (int round = 0; round < 10; ++round)
			{
				if (round > 0)
				{
					key[0] += kWeyl0;
					key[1] += kWeyl1;
				}
				const std::uint64_t p0 = std::uint64_t{kMul0} * ctr[0];
				const std::uint64_t p1 = std::uint64_t{kMul1} * ctr[2];
				ctr = {static_cast<std::uint32_t>(p1 >> 32) ^ ctr[1] ^ key[0], static_cast<std::uint32_t>(p1),
					   static_cast<std::uint32_t>(p0 >> 32) ^ ctr[3] ^ key[1], static_cast<std::uint32_t>(p0)};
			}
			return ctr;
		}

	private:
		static constexpr std::uint32_t kMul0 = 0xD2511F53u;
		static constexpr std::uint32_t kMul1 = 0xCD9E8D57u;
		static constexpr std::uint32_t kWeyl0 = 0x9E3779B9u;
		static constexpr std::uint32_t kWeyl1 = 0xBB67AE85u;
	};

	/// Independent streams keyed by (seed, domain, index). Sample k of any
	/// experiment draws from stream (seed, domain, k), so results never depend on
	/// the order in which samples are scheduled.
	///
	/// Satisfies UniformRandomBitGenerator, but the variates below are computed
	/// here rather than with <random> distributions so they are identical across
	/// standard library implementations.
	class RandomStream
	{
	public:
		using result_type = std::uint64_t;

		static constexpr const char *kGeneratorName = "philox4x32-10";

		RandomStream(std::uint64_t seed, std::uint32_t domain, std::uint64_t index)
			: key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
			  domain_(domain),
			  index_(index)
		{
		}

		static constexpr result_type min() { return 0; }
		static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

		result_type operator()()
		{
			if (lane_ == 2)
				refill();
			return buffer_[lane_++];
		}

		/// Uniform on the open interval (0, 1), 53-bit resolution.
		double uniform()
		{
			return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
		}

		/// Uniform on [lo, hi).
		double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

		/// Uniform integer on [0, n), n > 0.
		std::uint64_t below(std::uint64_t n)
		{
			// Lemire's multiply-shift; the bias is < n / 2^64, negligible here.
			return static_cast<std::uint64_t>((static_cast<unsigned __int128>((*this)()) * n) >> 64);
		}

		/// +1 or -1 with equal probability.
		double sign() { return ((*this)() >> 63) ? 1.0 : -1.0; }

		/// Standard normal via Box-Muller.
		double normal()
		{
			if (has_spare_)
			{
				has_spare_ = false;
				return spare_;
			}
			const double radius = std::sqrt(-2.0 * std::log(uniform()));
			const double angle = 2.0 * std::numbers::pi * uniform();
			spare_ = radius * std::sin(angle);
			has_spare_ = true;
			return radius * std::cos(angle);
		}

	private:
		void refill()
		{
			const Philox4x32::Counter ctr{block_++, static_cast<std::uint32_t>(index_),
										  static_cast<std::uint32_t>(index_ >> 32), domain_};
			const auto out = Philox4x32::generate(ctr, key_);
			buffer_[0] = (std::uint64_t{out[0]} << 32) | out[1];
			buffer_[1] = (std::uint64_t{out[2]} << 32) | out[3];
			lane_ = 0;
		}

		Philox4x32::Key key_;
		std::uint32_t domain_;
		std::uint64_t index_;
		std::uint32_t block_ = 0;
		std::array<std::uint64_t, 2> buffer_{};
		int lane_ = 2;
		double spare_ = 0.0;
		bool has_spare_ = false;
	};

	/// Stream domains, one per experiment family.
	enum class StreamDomain : std::uint32_t
	{
		McSample = 1,
		Scan = 2,
		AuxGrid = 3,
		Brownian = 4,
		Fixture = 5,
	};

	inline RandomStream make_stream(std::uint64_t seed, StreamDomain domain, std::uint64_t index)
	{
		return {seed, static_cast<std::uint32_t>(domain), index};
	}
} // namespace pathbdg
