#pragma once

#include <cstddef>
#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include <Eigen/Dense>

#include "subalg/genred.hpp"
#include "subalg/series.hpp"

namespace subalg {

/// Synthetic observer-form system x(t+1) = f(x(t), y(t)), y(t) = h(x(t)) + e(t).
struct GeneratorSpec {
  std::size_t n = 0;
  std::size_t d_y = 0;
  MonomialMap f;  // n + d_y inputs, n outputs
  MonomialMap h;  // n inputs, d_y outputs
  Eigen::VectorXd x0_low;
  Eigen::VectorXd x0_high;
  double noise_std = 0.0;
  std::size_t t1 = 0;
  std::size_t s = 0;

  /// Throws InvalidInput on inconsistent arities or bounds.
  void validate() const;
};

/// Keys: n, d_y, f.K, f.L, h.K, h.L, x0_low, x0_high, noise_std, t1, s.
/// K rows may come in any order; they are sorted together with the L columns.
GeneratorSpec parse_generator_spec(std::string_view text, std::string source = "spec");

/// Seeded source for the generator: 64-bit Mersenne Twister, uniforms from
/// the top 53 bits, normals by Box-Muller. Identical streams on every platform.
class SeriesRng {
 public:
  explicit SeriesRng(std::uint64_t seed) : engine_(seed) {}
  double uniform();  // [0, 1)
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Deterministic given the seed. Throws Generation when a trajectory leaves
/// [-1e12, 1e12].
TimeSeriesSet generate(const GeneratorSpec& spec, std::uint64_t seed);

}  // namespace subalg
