#include "bftk/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace bftk {

double top_eigenvalue_dense(const Eigen::MatrixXd& a) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(a,
                                                        Eigen::EigenvaluesOnly);
  return solver.eigenvalues().maxCoeff();
}

double spectral_norm(const Eigen::MatrixXd& a, double tol) {
  if (a.size() == 0) return 0.0;
  // Power iteration on the PSD matrix A^T A; singular value = sqrt of the
  // dominant eigenvalue.
  Eigen::MatrixXd gram = a.transpose() * a;
  auto apply = [&](const double* in, double* out) {
    Eigen::Map<const Eigen::VectorXd> vin(in, gram.rows());
    Eigen::Map<Eigen::VectorXd> vout(out, gram.rows());
    vout = gram * vin;
  };
  auto res = power_iteration_confirmed(uint64_t(gram.rows()), 0.0, apply, tol);
  return std::sqrt(std::max(0.0, res.eigenvalue));
}

double spectral_norm_dense(const Eigen::MatrixXd& a) {
  if (a.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXd> svd(a);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

}  // namespace bftk
