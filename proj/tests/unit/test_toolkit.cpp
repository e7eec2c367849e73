#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "../support/generators.hpp"
#include "subalg/config_io.hpp"
#include "subalg/error.hpp"
#include "subalg/generator.hpp"
#include "subalg/keyvalue.hpp"
#include "subalg/model.hpp"
#include "subalg/report.hpp"
#include "subalg/series_io.hpp"

using namespace subalg;
using subalg_test::Gen;

namespace {

std::string fixture(const std::string& name) {
  return read_text_file(std::string(SUBALG_FIXTURE_DIR) + "/" + name);
}

std::string message_of(auto&& fn, ErrorCode expected) {
  try {
    fn();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), expected) << e.what();
    return e.what();
  }
  ADD_FAILURE() << "no error";
  return {};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

const char* kHalvingSpec =
    "n = 1\nd_y = 1\nf.K = 1 0\nf.L = 0.5\nh.K = 1\nh.L = 1\n"
    "x0_low = 1\nx0_high = 1\nnoise_std = 0\nt1 = 4\ns = 3\n";

}  // namespace

TEST(KeyValue, Accessors) {
  const auto doc = KeyValueDocument::parse(
      "# comment\n a = 1.5 \nb = 3\nflag = yes\nv = 1, 2 3\nM = 1 2; 3 4\nK = 0 1;1 0\n", "f");
  EXPECT_EQ(doc.number("a"), 1.5);
  EXPECT_EQ(doc.count("b"), 3u);
  EXPECT_TRUE(doc.boolean("flag"));
  EXPECT_EQ(doc.numbers("v"), (std::vector<double>{1, 2, 3}));
  EXPECT_EQ(doc.matrix("M"), (Eigen::MatrixXd(2, 2) << 1, 2, 3, 4).finished());
  EXPECT_EQ(doc.integer_rows("K"), (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
  EXPECT_EQ(doc.keys().size(), 6u);

  EXPECT_TRUE(contains(message_of([&] { doc.count("a"); }, ErrorCode::Parse), "f:2: a"));
  EXPECT_TRUE(contains(message_of([&] { doc.matrix("v"); doc.number("zz"); }, ErrorCode::Parse), "zz"));
  message_of([&] { doc.reject_unknown({"a", "b"}); }, ErrorCode::Parse);
  message_of([] { KeyValueDocument::parse("a = 1\na = 2\n"); }, ErrorCode::Parse);
  message_of([] { KeyValueDocument::parse("no equals sign\n"); }, ErrorCode::Parse);
  message_of([] { read_text_file("/nonexistent/file"); }, ErrorCode::Io);
}

TEST(ConfigIo, ThresholdsMandatoryAndRoundTrip) {
  const IdentConfig cfg = parse_ident_config(fixture("linear.cfg"));
  EXPECT_EQ(cfg.r1, 0.9999);
  EXPECT_EQ(cfg.r4, 0.001);
  EXPECT_EQ(cfg.t_plus_max, 4u);
  EXPECT_EQ(cfg.block_limit, 500u);
  EXPECT_FALSE(cfg.anchor_t.has_value());

  const IdentConfig back = parse_ident_config(format_ident_config(cfg));
  EXPECT_EQ(format_ident_config(back), format_ident_config(cfg));

  message_of([] { parse_ident_config("r1 = 0.9\nr2 = 0.9\nr3 = 0.1\n"); }, ErrorCode::Parse);
  message_of([] { parse_ident_config("r1 = 0.9\nr2 = 0.9\nr3 = 0.1\nr4 = 0.1\nbogus = 1\n"); },
             ErrorCode::Parse);
  const IdentConfig d = parse_ident_config("r1 = 0.9\nr2 = 0.9\nr3 = 0.1\nr4 = 0.1\nn_expected = 3\n");
  EXPECT_EQ(d.t_plus_max, 12u);
  EXPECT_EQ(d.t_minus_max, 12u);
  message_of([] { parse_ident_config("r1 = 1.5\nr2 = 0.9\nr3 = 0.1\nr4 = 0.1\n"); },
             ErrorCode::InvalidInput);
}

TEST(SeriesIo, IngestShapes) {
  const TimeSeriesSet ts = parse_series_csv("series,t,y1\n1,1,1\n1,2,2\n1,3,3\n2,1,4\n2,2,5\n2,3,6\n");
  EXPECT_EQ(ts.dim(), 1u);
  EXPECT_EQ(ts.length(), 3u);
  EXPECT_EQ(ts.count(), 2u);
  EXPECT_EQ(ts(3, 0, 1), 6.0);
  // rows may arrive in any order, extra columns are ignored
  const TimeSeriesSet shuffled = parse_series_csv("series,t,y1,note\n2,2,5,a\n1,3,3,b\n1,1,1,c\n2,1,4,d\n1,2,2,e\n2,3,6,f\n");
  EXPECT_TRUE(shuffled == ts);
}

TEST(SeriesIo, GapAndRaggedErrors) {
  const std::string gap = message_of([] { read_series_file(std::string(SUBALG_FIXTURE_DIR) + "/bad_gap.csv"); },
                                     ErrorCode::Format);
  EXPECT_TRUE(contains(gap, "series 1, t 2")) << gap;
  message_of([] { parse_series_csv("series,t,y1\n1,1,1\n1,1,2\n"); }, ErrorCode::Format);
  message_of([] { parse_series_csv("series,t,y1,y2\n1,1,1\n"); }, ErrorCode::Format);
  message_of([] { parse_series_csv("t,series,y1\n1,1,1\n"); }, ErrorCode::Format);
  message_of([] { parse_series_csv("series,t,y1\n1,1,abc\n"); }, ErrorCode::Format);
}

TEST(SeriesIo, RandomRoundTripIsByteIdentical) {
  Gen g(71);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t d = g.size(1, 3);
    const std::size_t t1 = g.size(1, 6);
    const std::size_t s = g.size(1, 4);
    std::vector<Eigen::MatrixXd> v;
    for (std::size_t k = 0; k < s; ++k) {
      Eigen::MatrixXd y(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(t1));
      for (Eigen::Index j = 0; j < y.cols(); ++j)
        for (Eigen::Index i = 0; i < y.rows(); ++i) y(i, j) = g.coin() ? g.any_finite() : g.real(-1, 1);
      v.push_back(y);
    }
    const TimeSeriesSet ts(std::move(v));
    const std::string text = format_series_csv(ts);
    const TimeSeriesSet back = parse_series_csv(text);
    ASSERT_TRUE(back == ts);
    EXPECT_EQ(format_series_csv(back), text);
  }
}

TEST(Generator, HalvingRecursion) {
  const GeneratorSpec spec = parse_generator_spec(kHalvingSpec);
  const TimeSeriesSet ts = generate(spec, 1);
  ASSERT_EQ(ts.count(), 3u);
  for (std::size_t k = 0; k < 3; ++k)
    EXPECT_EQ(ts.series(k), (Eigen::MatrixXd(1, 4) << 1, 0.5, 0.25, 0.125).finished());
}

TEST(Generator, SingleStepIsOutputOfInitialState) {
  GeneratorSpec spec = parse_generator_spec(fixture("linear.spec"));
  spec.t1 = 1;
  const TimeSeriesSet ts = generate(spec, 5);
  EXPECT_EQ(ts.length(), 1u);
  for (std::size_t k = 0; k < ts.count(); ++k) EXPECT_LE(std::abs(ts(1, 0, k)), 1.0);
}

TEST(Generator, DeterministicAndSeedSensitive) {
  const GeneratorSpec spec = parse_generator_spec(fixture("poly.spec"));
  EXPECT_TRUE(generate(spec, 9) == generate(spec, 9));
  EXPECT_FALSE(generate(spec, 9) == generate(spec, 10));
  const TimeSeriesSet ts = generate(spec, 9);
  for (std::size_t k = 0; k < ts.count(); ++k) EXPECT_LE(ts.series(k).cwiseAbs().maxCoeff(), 1.0);
}

TEST(Generator, UnsortedRowsMatchSorted) {
  const GeneratorSpec a = parse_generator_spec(
      "n = 2\nd_y = 1\nf.K = 0 1 0; 1 0 0\nf.L = 0.1 0.9; 0.8 0\nh.K = 1 0\nh.L = 1\nt1 = 5\ns = 2\n");
  const GeneratorSpec b = parse_generator_spec(
      "n = 2\nd_y = 1\nf.K = 1 0 0; 0 1 0\nf.L = 0.9 0.1; 0 0.8\nh.K = 1 0\nh.L = 1\nt1 = 5\ns = 2\n");
  EXPECT_TRUE(a.f == b.f);
  EXPECT_TRUE(generate(a, 3) == generate(b, 3));
}

TEST(Generator, DivergenceAndSpecErrors) {
  std::string s = kHalvingSpec;
  s.replace(s.find("f.L = 0.5"), 9, "f.L = 1e4");
  s.replace(s.find("t1 = 4"), 6, "t1 = 9");
  message_of([&] { generate(parse_generator_spec(s), 1); }, ErrorCode::Generation);
  message_of([] { parse_generator_spec("n = 1\nd_y = 1\nf.K = 1 0\nf.L = 0.5 1\nh.K = 1\nh.L = 1\nt1 = 3\ns = 1\n"); },
             ErrorCode::InvalidInput);
  message_of([] { parse_generator_spec("n = 1\nd_y = 1\nf.K = 1 0\nf.L = 0.5\nh.K = 1\nh.L = 1\nt1 = 3\ns = 1\nnoise_std = -1\n"); },
             ErrorCode::InvalidInput);
}

TEST(SeriesRng, Reproducible) {
  SeriesRng a(123), b(123);
  double mean = 0;
  for (int i = 0; i < 1000; ++i) {
    const double u = a.uniform();
    EXPECT_EQ(u, b.uniform());
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
    mean += a.normal();
    b.normal();
  }
  EXPECT_LT(std::abs(mean / 1000), 0.15);
}

TEST(Report, MonomialNames) {
  const auto names = variable_names(2, 1);
  EXPECT_EQ(names, (std::vector<std::string>{"x1", "x2", "y"}));
  EXPECT_EQ(variable_names(1, 2), (std::vector<std::string>{"x1", "y1", "y2"}));
  const std::vector<int> p{1, 2, 1};
  EXPECT_EQ(monomial_name(p, names), "x1*x2^2*y");
  const std::vector<int> c{0, 0, 0};
  EXPECT_EQ(monomial_name(c, names), "1");
}

TEST(Report, InspectReferenceObserver) {
  const ObserverModel m = deserialize_model(fixture("reference_observer.json"));
  const std::string text = format_inspect(m);
  EXPECT_TRUE(contains(text, "n = 2")) << text;
  EXPECT_TRUE(contains(text, "x1*x2*y, x1*x2, x1*y, x1, x2*y, x2")) << text;
  EXPECT_TRUE(contains(text, "(-0.0225, 0.0336)")) << text;
  EXPECT_TRUE(contains(text, "x1' = (0.009, 0.089, 0.023, 0.571, -0.004, -0.02)")) << text;
}

TEST(Report, EvaluationTable) {
  PredictionReport r;
  r.rmse = Eigen::Vector2d(0.5, 0.25);
  r.relative_rmse = Eigen::Vector2d(0.1, 0.2);
  const std::string text = format_evaluation(r);
  EXPECT_TRUE(contains(text, "output")) << text;
  EXPECT_TRUE(contains(text, "y1")) << text;
  EXPECT_TRUE(contains(text, "0.25")) << text;
}
