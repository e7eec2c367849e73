#include "subalg/numred.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include <Eigen/SVD>

#include "subalg/error.hpp"

namespace subalg {

namespace {

void require_threshold(double r, const char* what) {
  require(r > 0.0 && r < 1.0, ErrorCode::InvalidInput,
          std::string(what) + ": threshold must lie in (0,1), got " + std::to_string(r));
}

// Thin SVD A = U·diag(sigma)·Vᵀ. Tall inputs are reduced by a Householder QR
// first so the bidiagonalization only sees the square triangular factor.
struct ThinSvd {
  explicit ThinSvd(const Eigen::MatrixXd& A) : rows(A.rows()), tall(A.rows() > A.cols()) {
    if (tall) {
      qr.compute(A);
      const Eigen::MatrixXd R = qr.matrixQR().topRows(A.cols()).triangularView<Eigen::Upper>();
      Eigen::BDCSVD<Eigen::MatrixXd> svd(R, Eigen::ComputeFullU | Eigen::ComputeFullV);
      sigma = svd.singularValues();
      U = svd.matrixU();
      V = svd.matrixV();
    } else {
      Eigen::BDCSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
      sigma = svd.singularValues();
      U = svd.matrixU();
      V = svd.matrixV();
    }
  }

  // U_k·B where k = B.rows()
  Eigen::MatrixXd left_apply(const Eigen::MatrixXd& B) const {
    Eigen::MatrixXd small = U.leftCols(B.rows()) * B;
    if (!tall) return small;
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(rows, B.cols());
    out.topRows(small.rows()) = small;
    out.applyOnTheLeft(qr.householderQ());
    return out;
  }

  Eigen::Index rows;
  bool tall;
  Eigen::HouseholderQR<Eigen::MatrixXd> qr;
  Eigen::VectorXd sigma;
  Eigen::MatrixXd U;
  Eigen::MatrixXd V;
};

}  // namespace

DiagonalTruncation mdtrunc(std::span<const double> diagonal, double r) {
  require_threshold(r, "mdtrunc");
  require(!diagonal.empty(), ErrorCode::InvalidInput, "mdtrunc: empty diagonal");
  double total = 0.0;
  for (std::size_t i = 0; i < diagonal.size(); ++i) {
    double d = diagonal[i];
    require(std::isfinite(d) && d >= 0.0, ErrorCode::InvalidInput,
            "mdtrunc: diagonal entries must be finite and nonnegative");
    require(i == 0 || d <= diagonal[i - 1], ErrorCode::InvalidInput,
            "mdtrunc: diagonal must be nonincreasing (entry " + std::to_string(i + 1) + ")");
    total += d;
  }
  require(total > 0.0, ErrorCode::InvalidInput, "mdtrunc: diagonal is zero");

  DiagonalTruncation out;
  out.table.reserve(diagonal.size());
  double cumulative = 0.0;
  for (std::size_t j = 0; j < diagonal.size(); ++j) {
    cumulative += diagonal[j];
    double fraction = cumulative / total;
    out.table.push_back({j + 1, fraction});
    if (out.rank == 0 && fraction >= r) out.rank = j + 1;
  }
  // cumulative and total share one summation order, so the last fraction is exactly 1 >= r.

  out.truncated = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(diagonal.size()));
  for (std::size_t i = 0; i < out.rank; ++i) out.truncated(static_cast<Eigen::Index>(i)) = diagonal[i];
  return out;
}

double SvdTruncResult::discarded_fraction() const {
  if (table.empty() || n == 0) return 0.0;
  return 1.0 - table[n - 1].cumulative_fraction;
}

SvdTruncResult svd_trunc(const Eigen::MatrixXd& V_y, const Eigen::MatrixXd& V_u, double r,
                         SvdTruncOutput output) {
  require_threshold(r, "svd_trunc");
  require(V_u.size() > 0, ErrorCode::InvalidInput, "svd_trunc: empty V_u");
  require(V_y.cols() == V_u.cols(), ErrorCode::InvalidInput,
          "svd_trunc: V_y has " + std::to_string(V_y.cols()) + " columns, V_u has " +
              std::to_string(V_u.cols()));
  require(V_y.allFinite() && V_u.allFinite(), ErrorCode::NumericalOverflow,
          "svd_trunc: data matrices contain non-finite values");
  require(!V_u.isZero(0.0), ErrorCode::InvalidInput, "svd_trunc: V_u is zero");

  const ThinSvd svd(V_u);
  const Eigen::VectorXd& sigma = svd.sigma;

  const double floor = kSingularValueFloor *
                       static_cast<double>(std::max(V_u.rows(), V_u.cols())) * sigma(0);
  Eigen::Index positive = 0;
  while (positive < sigma.size() && sigma(positive) > floor) ++positive;

  SvdTruncResult out;
  out.singular_values = sigma;
  DiagonalTruncation trunc =
      mdtrunc(std::span<const double>(sigma.data(), static_cast<std::size_t>(positive)), r);
  out.n = trunc.rank;
  out.table = std::move(trunc.table);

  const auto n = static_cast<Eigen::Index>(out.n);
  out.D_n = sigma.head(n);
  out.C = V_y * svd.V.leftCols(n) * out.D_n.cwiseInverse().asDiagonal();
  if (output == SvdTruncOutput::MapOnly) {
    // H* = C·U_nᵀ without forming U_n
    out.H_star = svd.left_apply(out.C.transpose()).transpose();
    return out;
  }
  // V_u = V_1ᵀ S V_2 with V_1ᵀ = U, so L = (I_n 0)·V_1 = U_nᵀ.
  out.L = svd.left_apply(Eigen::MatrixXd::Identity(n, n)).transpose();
  out.H_star = out.C * out.L;
  out.X = out.L * V_u;
  return out;
}

LkReduction lk_reduce(const Eigen::MatrixXd& L, const PowerMatrix& K, double r) {
  require_threshold(r, "lk_reduce");
  require(static_cast<std::size_t>(L.cols()) == K.rows(), ErrorCode::InvalidInput,
          "lk_reduce: L has " + std::to_string(L.cols()) + " columns, K has " +
              std::to_string(K.rows()) + " rows");
  Eigen::VectorXd norms = L.cwiseAbs().colwise().sum().transpose();
  const double max_norm = norms.size() > 0 ? norms.maxCoeff() : 0.0;
  const double threshold = r * max_norm;

  LkReduction out;
  for (Eigen::Index j = 0; j < norms.size(); ++j) {
    if (norms(j) > threshold) out.kept.push_back(static_cast<std::size_t>(j));
  }
  out.L.resize(L.rows(), static_cast<Eigen::Index>(out.kept.size()));
  for (std::size_t c = 0; c < out.kept.size(); ++c) {
    out.L.col(static_cast<Eigen::Index>(c)) = L.col(static_cast<Eigen::Index>(out.kept[c]));
  }
  out.K = K.select_rows(out.kept);
  return out;
}

std::string format_truncation_table(const TruncationTable& table) {
  std::string text;
  char line[64];
  for (const auto& e : table) {
    std::snprintf(line, sizeof line, "%zu %.6g\n", e.index, e.cumulative_fraction);
    text += line;
  }
  return text;
}

}  // namespace subalg
