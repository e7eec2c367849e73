#include <gtest/gtest.h>

#include <cmath>

#include "../support/generators.hpp"
#include "subalg/error.hpp"
#include "subalg/genred.hpp"

using namespace subalg;
using subalg_test::Gen;

namespace {

// u1, u2, u1*u2 over two inputs
MonomialMap product_generators() {
  const PowerMatrix K = PowerMatrix::from_rows(2, {PowerVector{1, 1}, PowerVector{1, 0}, PowerVector{0, 1}});
  Eigen::MatrixXd L(3, 3);
  L << 0, 1, 0,
       0, 0, 1,
       1, 0, 0;
  return MonomialMap(L, K);
}

double preservation_error(const Eigen::MatrixXd& C, const MonomialMap& g_r, const Factorization& f,
                          const Eigen::MatrixXd& samples, double tol) {
  double worst = 0.0;
  for (Eigen::Index k = 0; k < samples.cols(); ++k) {
    const Eigen::VectorXd u = samples.col(k);
    const Eigen::VectorXd ref = C * eval_monomial_map(g_r, u);
    const Eigen::VectorXd got = eval_monomial_map(f.h, eval_monomial_map(f.g, u));
    worst = std::max(worst, (ref - got).cwiseAbs().maxCoeff() / (tol * (1 + ref.cwiseAbs().maxCoeff())));
  }
  return worst;
}

}  // namespace

TEST(MonomialMap, TwoTermMapAtOnes) {
  Eigen::MatrixXd L(2, 2);
  L << 0.1, 0.2, 0.3, 0.4;
  const MonomialMap m(L, PowerMatrix::from_rows(2, {PowerVector{3, 1}, PowerVector{1, 2}}));
  const Eigen::VectorXd y = eval_monomial_map(m, Eigen::Vector2d(1, 1));
  EXPECT_NEAR(y(0), 0.3, 1e-15);
  EXPECT_NEAR(y(1), 0.7, 1e-15);
}

TEST(MonomialMap, ZeroAndIdentity) {
  const MonomialMap z = MonomialMap::zero(3, 2);
  EXPECT_EQ(eval_monomial_map(z, Eigen::Vector2d(4, -1)), Eigen::Vector3d::Zero());
  const MonomialMap zl(Eigen::MatrixXd::Zero(2, 2), PowerMatrix::identity(2));
  EXPECT_EQ(eval_monomial_map(zl, Eigen::Vector2d(4, -1)), Eigen::Vector2d::Zero());
  EXPECT_FALSE(zl.nontrivial());
  EXPECT_EQ(zl.without_zero_columns().terms(), 0u);
  EXPECT_EQ(eval_monomial_map(MonomialMap::identity(3), Eigen::Vector3d(1, 2, 3)), Eigen::Vector3d(1, 2, 3));
}

TEST(MonomialMap, ArityErrors) {
  EXPECT_THROW(MonomialMap(Eigen::MatrixXd::Ones(1, 3), PowerMatrix::identity(2)), Error);
  EXPECT_THROW(eval_monomial_map(MonomialMap::identity(2), Eigen::Vector3d(1, 2, 3)), Error);
}

TEST(EliminateProducts, ProductGeneratorIsEliminated) {
  Gen g(31);
  const Eigen::MatrixXd samples = g.matrix(2, 100);
  const Eigen::MatrixXd C = Eigen::MatrixXd::Identity(3, 3);
  const MonomialMap g_r = product_generators();
  const Factorization f = eliminate_products(C, g_r, samples, 1e-6);
  EXPECT_EQ(f.state_dim(), 2u);
  // h holds x1*x2 among its monomials
  const std::vector<int> x1x2{1, 1};
  EXPECT_LT(f.h.powers().find(x1x2), f.h.terms());
  for (Eigen::Index k = 0; k < samples.cols(); ++k) {
    const Eigen::VectorXd u = samples.col(k);
    const Eigen::VectorXd ref = C * eval_monomial_map(g_r, u);
    const Eigen::VectorXd got = eval_monomial_map(f.h, eval_monomial_map(f.g, u));
    EXPECT_LE((ref - got).cwiseAbs().maxCoeff(), 1e-10);
  }
}

TEST(EliminateProducts, IndependentGeneratorsUnchanged) {
  Gen g(32);
  const PowerMatrix K = PowerMatrix::from_rows(2, {PowerVector{1, 0}, PowerVector{0, 2}});
  const MonomialMap g_r(Eigen::MatrixXd::Identity(2, 2), K);
  const Eigen::MatrixXd C = g.matrix(3, 2);
  const Factorization f = eliminate_products(C, g_r, g.matrix(2, 50), 1e-6);
  EXPECT_EQ(f.g, g_r);
  EXPECT_EQ(f.h, MonomialMap(C, PowerMatrix::identity(2)));

  const MonomialMap single(Eigen::MatrixXd::Ones(1, 1), PowerMatrix::from_rows(2, {PowerVector{1, 1}}));
  const Factorization one = eliminate_products(Eigen::MatrixXd::Ones(2, 1), single, g.matrix(2, 10), 1e-6);
  EXPECT_EQ(one.g, single);
}

TEST(EliminateProducts, Errors) {
  EXPECT_THROW(eliminate_products(Eigen::MatrixXd::Identity(3, 3), product_generators(),
                                  Eigen::MatrixXd(2, 0), 1e-6),
               Error);
  EXPECT_THROW(eliminate_products(Eigen::MatrixXd::Identity(2, 2), product_generators(),
                                  Eigen::MatrixXd::Ones(2, 3), 1e-6),
               Error);
}

TEST(EliminateProducts, RandomPropertyChecks) {
  Gen g(33);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t inputs = g.size(1, 3);
    const std::size_t comps = g.size(1, 5);
    MonomialMap g_r = subalg_test::random_map(g, inputs, comps, 6, 2);
    // sometimes plant an exact product of two components
    if (comps >= 3 && g.coin()) {
      const PowerVector a = subalg_test::random_power_vector(g, inputs, 1);
      const PowerVector b = subalg_test::random_power_vector(g, inputs, 1);
      std::vector<int> ab(inputs);
      for (std::size_t j = 0; j < inputs; ++j) ab[j] = a[j] + b[j];
      const PowerMatrix K = PowerMatrix::canonical(inputs, {a, b, PowerVector(ab)});
      if (K.rows() == 3) {
        Eigen::MatrixXd L = Eigen::MatrixXd::Zero(3, 3);
        L(0, K.find(a.exponents())) = 1.0;
        L(1, K.find(b.exponents())) = 1.0;
        L(2, K.find(ab)) = 1.0;
        g_r = MonomialMap(L, K);
      }
    }
    const Eigen::MatrixXd C = g.matrix(static_cast<Eigen::Index>(g.size(1, 3)),
                                       static_cast<Eigen::Index>(g_r.outputs()));
    const Eigen::MatrixXd samples = g.matrix(static_cast<Eigen::Index>(inputs), 60);
    const double tol = 1e-6;
    const Factorization f = eliminate_products(C, g_r, samples, tol);
    EXPECT_LE(f.state_dim(), g_r.outputs());
    EXPECT_LE(preservation_error(C, g_r, f, samples, tol), 1.0);
    EXPECT_TRUE(f.g.nontrivial());
    // no-op stability: the reduced generators admit no further elimination
    const Factorization again =
        eliminate_products(Eigen::MatrixXd::Identity(static_cast<Eigen::Index>(f.state_dim()),
                                                     static_cast<Eigen::Index>(f.state_dim())),
                           f.g, samples, tol);
    EXPECT_EQ(again.g, f.g);
  }
}

TEST(SubstituteAffineInputs, MatchesDirectEvaluation) {
  Gen g(34);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t inputs = g.size(1, 3);
    const MonomialMap m = subalg_test::random_map(g, inputs, g.size(1, 3), 6, 3);
    std::vector<double> off(inputs);
    std::vector<double> sc(inputs);
    for (std::size_t j = 0; j < inputs; ++j) {
      off[j] = g.real(-2, 2);
      sc[j] = g.real(0.2, 3);
    }
    const MonomialMap sub = substitute_affine_inputs(m, off, sc);
    for (int k = 0; k < 5; ++k) {
      Eigen::VectorXd v = g.matrix(static_cast<Eigen::Index>(inputs), 1, -3, 3);
      Eigen::VectorXd z(v.size());
      for (Eigen::Index j = 0; j < v.size(); ++j) z(j) = (v(j) - off[static_cast<std::size_t>(j)]) / sc[static_cast<std::size_t>(j)];
      const Eigen::VectorXd want = eval_monomial_map(m, z);
      const Eigen::VectorXd got = eval_monomial_map(sub, v);
      EXPECT_LE((want - got).cwiseAbs().maxCoeff(), 1e-9 * (1 + want.cwiseAbs().maxCoeff()));
    }
  }
}
