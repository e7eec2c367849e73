#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace subalg {

/// s output time series of dimension d_y and common length t_1. Time indices
/// are 1-based (t = 1..t_1) throughout the public API.
class TimeSeriesSet {
 public:
  TimeSeriesSet() = default;
  /// Zero-filled set.
  TimeSeriesSet(std::size_t d_y, std::size_t t1, std::size_t s);
  /// One d_y × t_1 matrix per series (column t-1 holds y(t)). All entries
  /// must be finite and all series the same shape.
  explicit TimeSeriesSet(std::vector<Eigen::MatrixXd> series);

  std::size_t dim() const noexcept { return d_y_; }
  std::size_t length() const noexcept { return t1_; }
  std::size_t count() const noexcept { return series_.size(); }

  /// y(t, k) as a d_y vector.
  auto at(std::size_t t, std::size_t k) const {
    return series_[k].col(static_cast<Eigen::Index>(t - 1));
  }
  double& operator()(std::size_t t, std::size_t dim, std::size_t k) {
    return series_[k](static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(t - 1));
  }
  double operator()(std::size_t t, std::size_t dim, std::size_t k) const {
    return series_[k](static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(t - 1));
  }
  const Eigen::MatrixXd& series(std::size_t k) const { return series_[k]; }

  /// Series [first, first+count) as a new set.
  TimeSeriesSet slice(std::size_t first, std::size_t count) const;

  /// Throws InvalidInput unless every entry is finite and the set is nonempty.
  void validate() const;

  friend bool operator==(const TimeSeriesSet& a, const TimeSeriesSet& b);

 private:
  std::size_t d_y_ = 0;
  std::size_t t1_ = 0;
  std::vector<Eigen::MatrixXd> series_;
};

/// (y(t-1); y(t-2); ...; y(t-t_minus)) of series k, stacked top to bottom.
Eigen::VectorXd past_window(const TimeSeriesSet& ts, std::size_t t, std::size_t t_minus,
                            std::size_t k);
/// (y(t+t_plus-1); ...; y(t+1); y(t)) of series k.
Eigen::VectorXd future_window(const TimeSeriesSet& ts, std::size_t t, std::size_t t_plus,
                              std::size_t k);

}  // namespace subalg
