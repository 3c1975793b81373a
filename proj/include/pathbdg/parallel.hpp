#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace pathbdg
{
	/// Resolves a requested thread count; 0 means hardware concurrency.
	inline unsigned resolve_threads(unsigned requested)
	{
		if (requested > 0)
			return requested;
		return std::max(1u, std::thread::hardware_concurrency());
	}

	/// out[k] = fn(k) for k in [0, count), split into contiguous blocks over
	/// `threads` workers. The result is independent of the thread count as long
	/// as fn(k) depends only on k. The first exception thrown by a worker is
	/// rethrown on the calling thread.
	template <typename Result, typename Fn>
	std::vector<Result> parallel_map(std::size_t count, unsigned threads, Fn &&fn)
	{
		std::vector<Result> out(count);
		const std::size_t workers = std::min<std::size_t>(resolve_threads(threads), std::max<std::size_t>(count, 1));
		if (workers <= 1)
		{
			for (std::size_t k = 0; k < count; ++k)
				out[k] = fn(k);
			return out;
		}

		std::exception_ptr failure;
		std::mutex failure_mutex;
		std::vector<std::thread> pool;
		pool.reserve(workers);
		const std::size_t block = (count + workers - 1) / workers;
		for (std::size_t w = 0; w < workers; ++w)
		{
			const std::size_t begin = w * block;
			const std::size_t end = std::min(count, begin + block);
			pool.emplace_back([&, begin, end] {
				try
				{
					for (std::size_t k = begin; k < end; ++k)
						out[k] = fn(k);
				}
				catch (...)
				{
					std::lock_guard lock(failure_mutex);
					if (!failure)
						failure = std::current_exception();
				}
			});
		}
		for (auto &t : pool)
			t.join();
		if (failure)
			std::rethrow_exception(failure);
		return out;
	}
} // namespace pathbdg
