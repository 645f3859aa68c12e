#pragma once

#include <cstdint>
#include <random>

#include "cartan/matrix.hpp"
#include "cartan/rational.hpp"

namespace cartan {

/// Seeded generator for tests, samplers and the CLI. Draws are reduced with
/// plain modulo (not std::uniform_int_distribution) so sequences are the
/// same on every standard library.
class SeededRng {
 public:
  explicit SeededRng(std::uint64_t seed) : engine_(seed) {}

  std::int64_t uniform_int(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<std::uint64_t>(hi - lo) + 1;
    return lo + static_cast<std::int64_t>(engine_() % span);
  }

  std::int64_t nonzero_int(std::int64_t bound) {
    std::int64_t v = 0;
    while (v == 0) v = uniform_int(-bound, bound);
    return v;
  }

  Rational rational(std::int64_t num_bound, std::int64_t den_bound) {
    const auto num = uniform_int(-num_bound, num_bound);
    const auto den = uniform_int(1, den_bound);
    return Rational(num, den);
  }

  QMatrix int_matrix(std::size_t rows, std::size_t cols, std::int64_t bound) {
    QMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = uniform_int(-bound, bound);
    return m;
  }

  std::uint64_t next() { return engine_(); }

 private:
  std::mt19937_64 engine_;
};

}  // namespace cartan
