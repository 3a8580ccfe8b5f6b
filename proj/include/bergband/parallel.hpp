// SPDX-License-Identifier: Apache-2.0

#ifndef BERGBAND_PARALLEL_HPP
#define BERGBAND_PARALLEL_HPP

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace bergband
{

inline int ResolveThreadCount(int requested)
{
  if (requested > 0)
  {
    return requested;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

// Runs fn(i) for i in [0, n) on up to `threads` workers. Each index is handled exactly
// once, so callers writing into slot i get results independent of scheduling. The first
// exception thrown by any task is rethrown on the calling thread.
template <typename Fn>
void ParallelFor(int n, int threads, Fn &&fn)
{
  const int workers = std::min(ResolveThreadCount(threads), std::max(n, 1));
  if (workers <= 1)
  {
    for (int i = 0; i < n; i++)
    {
      fn(i);
    }
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  {
    std::vector<std::jthread> pool;
    for (int t = 0; t < workers; t++)
    {
      pool.emplace_back(
          [&]
          {
            for (int i = next++; i < n; i = next++)
            {
              try
              {
                fn(i);
              }
              catch (...)
              {
                std::lock_guard lock(error_mutex);
                if (!error)
                {
                  error = std::current_exception();
                }
                next = n;
              }
            }
          });
    }
  }
  if (error)
  {
    std::rethrow_exception(error);
  }
}

}  // namespace bergband

#endif  // BERGBAND_PARALLEL_HPP
