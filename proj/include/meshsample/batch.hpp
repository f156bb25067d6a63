#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <string>
#include <thread>
#include <vector>

#include "meshsample/error.hpp"
#include "meshsample/inversion.hpp"
#include "meshsample/mesh.hpp"
#include "meshsample/random.hpp"
#include "meshsample/rejection.hpp"
#include "meshsample/triangle_select.hpp"

namespace meshsample {

enum class Method { inversion, rejection };

inline const char* to_string(Method m) { return m == Method::inversion ? "inversion" : "rejection"; }

inline Method parse_method(const std::string& s) {
  if (s == "inversion") return Method::inversion;
  if (s == "rejection") return Method::rejection;
  throw Error(ErrorCode::invalid_argument, "unknown method '" + s + "'");
}

struct BatchOptions {
  Method method = Method::inversion;
  NewtonConfig newton;
  RejectionConfig rejection;
  unsigned threads = 1;
};

inline constexpr std::size_t kBatchBlock = 65536;

struct BatchResult {
  std::vector<BaryPoint> points;
  RejectionStats rejection;  // zero for inversion
};

// Draws `count` points in blocks of kBatchBlock; block b uses the stream
// derive_seed(seed, b). Output is independent of `threads`.
inline BatchResult sample_points(const Mesh& mesh, const TriangleTable& table, std::size_t count,
                                 std::uint64_t seed, const BatchOptions& opts = {}) {
  opts.newton.validate();
  BatchResult result;
  result.points.resize(count);
  const std::size_t blocks = (count + kBatchBlock - 1) / kBatchBlock;
  const unsigned threads = static_cast<unsigned>(std::clamp<std::size_t>(opts.threads, 1, std::max<std::size_t>(blocks, 1)));
  std::vector<RejectionStats> stats(threads);

  auto work = [&](unsigned t) {
    for (std::size_t b = t; b < blocks; b += threads) {
      Rng rng(derive_seed(seed, b));
      const std::size_t end = std::min(count, (b + 1) * kBatchBlock);
      for (std::size_t k = b * kBatchBlock; k < end; ++k)
        result.points[k] = opts.method == Method::inversion
                               ? sample_point(table, mesh, rng, opts.newton)
                               : rejection_sample_point(table, mesh, rng, stats[t], opts.rejection);
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
  }
  for (const auto& s : stats) {
    result.rejection.samples += s.samples;
    result.rejection.trials += s.trials;
  }
  return result;
}

}  // namespace meshsample
