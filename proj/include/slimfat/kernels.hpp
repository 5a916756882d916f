#pragma once

#include <cstdint>
#include <span>

#include "slimfat/error.hpp"

// Batch point-query kernels over an immutable sketch. The serial loop is the
// reference; the OpenMP loop must produce the same output for any thread count.
namespace slimfat {

template <class Sketch>
concept QueryableSketch = requires(const Sketch& s, std::uint64_t key) {
  { s.query(key) } -> std::convertible_to<std::uint64_t>;
};

namespace detail {
inline void check_batch(std::size_t keys, std::size_t out) {
  if (keys != out) throw SketchError(ErrorKind::kConfiguration, "batch query: output size mismatch");
}
}  // namespace detail

template <QueryableSketch Sketch>
void batch_query_serial(const Sketch& sketch, std::span<const std::uint64_t> keys,
                        std::span<std::uint64_t> out) {
  detail::check_batch(keys.size(), out.size());
  for (std::size_t k = 0; k < keys.size(); ++k) out[k] = sketch.query(keys[k]);
}

// threads <= 0 uses the OpenMP default team size.
template <QueryableSketch Sketch>
void batch_query_parallel(const Sketch& sketch, std::span<const std::uint64_t> keys,
                          std::span<std::uint64_t> out, int threads = 0) {
  detail::check_batch(keys.size(), out.size());
  const auto n = static_cast<std::int64_t>(keys.size());
  if (threads > 0) {
#pragma omp parallel for schedule(static) num_threads(threads)
    for (std::int64_t k = 0; k < n; ++k) out[k] = sketch.query(keys[k]);
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t k = 0; k < n; ++k) out[k] = sketch.query(keys[k]);
  }
}

// Number of hardware threads OpenMP will use by default.
int available_threads() noexcept;

}  // namespace slimfat
