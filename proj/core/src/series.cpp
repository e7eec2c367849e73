#include "subalg/series.hpp"

#include <string>

#include "subalg/error.hpp"

namespace subalg {

TimeSeriesSet::TimeSeriesSet(std::size_t d_y, std::size_t t1, std::size_t s)
    : d_y_(d_y),
      t1_(t1),
      series_(s, Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(d_y), static_cast<Eigen::Index>(t1))) {}

TimeSeriesSet::TimeSeriesSet(std::vector<Eigen::MatrixXd> series) : series_(std::move(series)) {
  require(!series_.empty(), ErrorCode::InvalidInput, "time series set: no series");
  d_y_ = static_cast<std::size_t>(series_.front().rows());
  t1_ = static_cast<std::size_t>(series_.front().cols());
  for (std::size_t k = 0; k < series_.size(); ++k) {
    require(static_cast<std::size_t>(series_[k].rows()) == d_y_ &&
                static_cast<std::size_t>(series_[k].cols()) == t1_,
            ErrorCode::InvalidInput,
            "time series set: series " + std::to_string(k + 1) + " has a different shape");
  }
  validate();
}

TimeSeriesSet TimeSeriesSet::slice(std::size_t first, std::size_t count) const {
  require(first + count <= series_.size() && count > 0, ErrorCode::InvalidInput,
          "time series set: slice out of range");
  return TimeSeriesSet(std::vector<Eigen::MatrixXd>(
      series_.begin() + static_cast<std::ptrdiff_t>(first),
      series_.begin() + static_cast<std::ptrdiff_t>(first + count)));
}

void TimeSeriesSet::validate() const {
  require(d_y_ >= 1 && t1_ >= 1 && !series_.empty(), ErrorCode::InvalidInput,
          "time series set: need d_y >= 1, t_1 >= 1 and at least one series");
  for (std::size_t k = 0; k < series_.size(); ++k) {
    require(series_[k].allFinite(), ErrorCode::InvalidInput,
            "time series set: series " + std::to_string(k + 1) + " contains non-finite values");
  }
}

bool operator==(const TimeSeriesSet& a, const TimeSeriesSet& b) {
  if (a.d_y_ != b.d_y_ || a.t1_ != b.t1_ || a.series_.size() != b.series_.size()) return false;
  for (std::size_t k = 0; k < a.series_.size(); ++k) {
    if (a.series_[k] != b.series_[k]) return false;
  }
  return true;
}

Eigen::VectorXd past_window(const TimeSeriesSet& ts, std::size_t t, std::size_t t_minus,
                            std::size_t k) {
  require(t_minus >= 1 && t > t_minus && t - 1 <= ts.length() && k < ts.count(),
          ErrorCode::InvalidInput,
          "past window of length " + std::to_string(t_minus) + " at t=" + std::to_string(t) +
              " exceeds the series bounds");
  const auto d = static_cast<Eigen::Index>(ts.dim());
  Eigen::VectorXd w(d * static_cast<Eigen::Index>(t_minus));
  for (std::size_t lag = 1; lag <= t_minus; ++lag) {
    w.segment(d * static_cast<Eigen::Index>(lag - 1), d) = ts.at(t - lag, k);
  }
  return w;
}

Eigen::VectorXd future_window(const TimeSeriesSet& ts, std::size_t t, std::size_t t_plus,
                              std::size_t k) {
  require(t_plus >= 1 && t >= 1 && t + t_plus - 1 <= ts.length() && k < ts.count(),
          ErrorCode::InvalidInput,
          "future window of length " + std::to_string(t_plus) + " at t=" + std::to_string(t) +
              " exceeds the series bounds");
  const auto d = static_cast<Eigen::Index>(ts.dim());
  Eigen::VectorXd w(d * static_cast<Eigen::Index>(t_plus));
  for (std::size_t i = 0; i < t_plus; ++i) {
    w.segment(d * static_cast<Eigen::Index>(i), d) = ts.at(t + t_plus - 1 - i, k);
  }
  return w;
}

}  // namespace subalg
