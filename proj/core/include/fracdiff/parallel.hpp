#pragma once

#include <algorithm>
#include <cstddef>
#include <exception>
#include <thread>
#include <utility>
#include <vector>

namespace fracdiff {

/// Splits [0, count) into at most `threads` contiguous chunks and runs
/// fn(begin, end, chunk) for each, chunk 0 on the calling thread. The first
/// exception raised by any chunk is rethrown after all have finished.
template <class Fn>
std::size_t parallel_chunks(std::size_t count, unsigned threads, Fn&& fn) {
  const std::size_t chunks =
      std::max<std::size_t>(1, std::min<std::size_t>(threads, count));
  if (chunks == 1) {
    fn(std::size_t{0}, count, std::size_t{0});
    return 1;
  }
  std::vector<std::exception_ptr> errors(chunks);
  const auto bounds = [&](std::size_t c) { return count * c / chunks; };
  {
    std::vector<std::jthread> workers;
    workers.reserve(chunks - 1);
    for (std::size_t c = 1; c < chunks; ++c) {
      workers.emplace_back([&, c] {
        try {
          fn(bounds(c), bounds(c + 1), c);
        } catch (...) {
          errors[c] = std::current_exception();
        }
      });
    }
    try {
      fn(bounds(0), bounds(1), std::size_t{0});
    } catch (...) {
      errors[0] = std::current_exception();
    }
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return chunks;
}

/// total[n] += sum over fixed blocks of `block` items in [0, count), where
/// fn(begin, end, out) adds the contribution of items [begin, end) into
/// `out` (sized like `total`). Blocks are combined in index order, so the
/// result is bit-identical for every thread count.
template <class Fn>
void parallel_block_sums(std::size_t count, std::size_t block, unsigned threads,
                         std::vector<double>& total, Fn&& fn) {
  const std::size_t blocks = (count + block - 1) / block;
  const auto range = [&](std::size_t b) {
    return std::pair{b * block, std::min(count, (b + 1) * block)};
  };
  if (threads <= 1 || blocks <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) {
      const auto [begin, end] = range(b);
      fn(begin, end, total);
    }
    return;
  }
  std::vector<std::vector<double>> partial(
      blocks, std::vector<double>(total.size(), 0.0));
  parallel_chunks(blocks, threads,
                  [&](std::size_t first, std::size_t last, std::size_t) {
                    for (std::size_t b = first; b < last; ++b) {
                      const auto [begin, end] = range(b);
                      fn(begin, end, partial[b]);
                    }
                  });
  for (const auto& p : partial) {
    for (std::size_t n = 0; n < total.size(); ++n) total[n] += p[n];
  }
}

}  // namespace fracdiff
