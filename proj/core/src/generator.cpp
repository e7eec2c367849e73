#include "subalg/generator.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "subalg/error.hpp"
#include "subalg/keyvalue.hpp"
#include "subalg/model.hpp"

namespace subalg {

namespace {

MonomialMap map_from_doc(const KeyValueDocument& doc, const std::string& name, std::size_t inputs,
                         std::size_t outputs) {
  const auto rows = doc.integer_rows(name + ".K");
  const Eigen::MatrixXd L = doc.matrix(name + ".L");
  for (const auto& r : rows) {
    require(r.size() == inputs, ErrorCode::InvalidInput,
            name + ".K rows need " + std::to_string(inputs) + " exponents");
  }
  require(static_cast<std::size_t>(L.rows()) == outputs &&
              static_cast<std::size_t>(L.cols()) == rows.size(),
          ErrorCode::InvalidInput,
          name + ".L must be " + std::to_string(outputs) + " x " + std::to_string(rows.size()));

  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return lex_compare(std::span<const int>(rows[a]), std::span<const int>(rows[b])) > 0;
  });
  std::vector<PowerVector> sorted;
  Eigen::MatrixXd Ls(L.rows(), L.cols());
  for (std::size_t i = 0; i < order.size(); ++i) {
    sorted.emplace_back(rows[order[i]]);
    Ls.col(static_cast<Eigen::Index>(i)) = L.col(static_cast<Eigen::Index>(order[i]));
  }
  PowerMatrix K(inputs);
  try {
    K = PowerMatrix::from_rows(inputs, sorted);
  } catch (const Error&) {
    fail(ErrorCode::InvalidInput, name + ".K has duplicate rows");
  }
  return MonomialMap(std::move(Ls), std::move(K));
}

Eigen::VectorXd box_bound(const KeyValueDocument& doc, const char* key, std::size_t n,
                          double fallback) {
  if (!doc.has(key)) return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), fallback);
  const auto v = doc.numbers(key);
  if (v.size() == 1) return Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), v[0]);
  require(v.size() == n, ErrorCode::InvalidInput,
          std::string(key) + " needs 1 or " + std::to_string(n) + " entries");
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(n));
}

}  // namespace

void GeneratorSpec::validate() const {
  require(n >= 1 && d_y >= 1, ErrorCode::InvalidInput, "generator: n and d_y must be positive");
  require(f.inputs() == n + d_y && f.outputs() == n, ErrorCode::InvalidInput,
          "generator: f must map n + d_y inputs to n outputs");
  require(h.inputs() == n && h.outputs() == d_y, ErrorCode::InvalidInput,
          "generator: h must map n inputs to d_y outputs");
  require(f.coefficients().allFinite() && h.coefficients().allFinite(), ErrorCode::InvalidInput,
          "generator: coefficients must be finite");
  require(static_cast<std::size_t>(x0_low.size()) == n &&
              static_cast<std::size_t>(x0_high.size()) == n,
          ErrorCode::InvalidInput, "generator: x0 box needs n bounds");
  require((x0_low.array() <= x0_high.array()).all() && x0_low.allFinite() && x0_high.allFinite(),
          ErrorCode::InvalidInput, "generator: x0_low must not exceed x0_high");
  require(std::isfinite(noise_std) && noise_std >= 0.0, ErrorCode::InvalidInput,
          "generator: noise_std must be nonnegative");
  require(t1 >= 1 && s >= 1, ErrorCode::InvalidInput, "generator: t1 and s must be positive");
}

GeneratorSpec parse_generator_spec(std::string_view text, std::string source) {
  const KeyValueDocument doc = KeyValueDocument::parse(text, std::move(source));
  doc.reject_unknown({"n", "d_y", "f.K", "f.L", "h.K", "h.L", "x0_low", "x0_high", "noise_std",
                      "t1", "s"});
  GeneratorSpec spec;
  spec.n = doc.count("n");
  spec.d_y = doc.count("d_y");
  require(spec.n >= 1 && spec.d_y >= 1, ErrorCode::InvalidInput,
          "generator: n and d_y must be positive");
  spec.f = map_from_doc(doc, "f", spec.n + spec.d_y, spec.n);
  spec.h = map_from_doc(doc, "h", spec.n, spec.d_y);
  spec.x0_low = box_bound(doc, "x0_low", spec.n, -1.0);
  spec.x0_high = box_bound(doc, "x0_high", spec.n, 1.0);
  spec.noise_std = doc.has("noise_std") ? doc.number("noise_std") : 0.0;
  spec.t1 = doc.count("t1");
  spec.s = doc.count("s");
  spec.validate();
  return spec;
}

double SeriesRng::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double SeriesRng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  // 1 - u keeps the logarithm finite
  const double u1 = 1.0 - uniform();
  const double u2 = uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(a);
  has_spare_ = true;
  return r * std::cos(a);
}

TimeSeriesSet generate(const GeneratorSpec& spec, std::uint64_t seed) {
  spec.validate();
  SeriesRng rng(seed);
  const auto n = static_cast<Eigen::Index>(spec.n);
  const auto d = static_cast<Eigen::Index>(spec.d_y);
  TimeSeriesSet ts(spec.d_y, spec.t1, spec.s);
  Eigen::VectorXd x(n);
  Eigen::VectorXd xy(n + d);
  for (std::size_t k = 0; k < spec.s; ++k) {
    for (Eigen::Index i = 0; i < n; ++i) x(i) = rng.uniform(spec.x0_low(i), spec.x0_high(i));
    for (std::size_t t = 1; t <= spec.t1; ++t) {
      Eigen::VectorXd y = eval_monomial_map(spec.h, x);
      if (spec.noise_std > 0.0) {
        for (Eigen::Index j = 0; j < d; ++j) y(j) += spec.noise_std * rng.normal();
      }
      require(y.allFinite() && y.cwiseAbs().maxCoeff() <= kDivergenceGuard, ErrorCode::Generation,
              "series " + std::to_string(k + 1) + " diverged at t=" + std::to_string(t) +
                  "; use smaller coefficients or a smaller x0 box");
      for (Eigen::Index j = 0; j < d; ++j) ts(t, static_cast<std::size_t>(j), k) = y(j);
      if (t == spec.t1) break;
      xy << x, y;
      x = eval_monomial_map(spec.f, xy);
      require(x.allFinite() && x.cwiseAbs().maxCoeff() <= kDivergenceGuard, ErrorCode::Generation,
              "series " + std::to_string(k + 1) + " diverged at t=" + std::to_string(t + 1) +
                  "; use smaller coefficients or a smaller x0 box");
    }
  }
  return ts;
}

}  // namespace subalg
