#include "szn/tensor.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace szn {

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

double max_abs(const CMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double frobenius(const CMatrix& a) { return a.norm(); }

bool approx_equal(const CMatrix& a, const CMatrix& b, double tolerance) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tolerance;
}

double hermiticity_defect(const CMatrix& h) {
  return max_abs(h - h.adjoint());
}

double unitarity_defect(const CMatrix& u) {
  return (u.adjoint() * u - CMatrix::Identity(u.cols(), u.cols())).norm();
}

CMatrix hermitize(const CMatrix& h) { return 0.5 * (h + h.adjoint()); }

namespace {

// Rotate the global phase of v so its first component with magnitude above
// threshold becomes real positive.
void phase_normalize(Eigen::Ref<CVector> v, double threshold = 1e-12) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    const double m = std::abs(v(i));
    if (m > threshold) {
      v *= std::conj(v(i)) / m;
      return;
    }
  }
}

bool lex_less(const CVector& a, const CVector& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i).real() != b(i).real()) return a(i).real() < b(i).real();
    if (a(i).imag() != b(i).imag()) return a(i).imag() < b(i).imag();
  }
  return false;
}

}  // namespace

HermitianEig eig_hermitian(const CMatrix& h, const Tolerances& tol) {
  if (h.rows() != h.cols())
    throw NotHermitian("eig_hermitian: matrix is not square");
  const double defect = hermiticity_defect(h);
  if (defect > tol.hermiticity)
    throw NotHermitian("eig_hermitian: hermiticity defect " + std::to_string(defect));

  Eigen::SelfAdjointEigenSolver<CMatrix> solver(hermitize(h));
  if (solver.info() != Eigen::Success)
    throw NoConvergence("eig_hermitian: eigensolver failed to converge");

  const Eigen::Index n = h.rows();
  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);

  CMatrix vecs = solver.eigenvectors();
  for (Eigen::Index i = 0; i < n; ++i) {
    CVector col = vecs.col(i);
    phase_normalize(col);
    vecs.col(i) = col;
  }
  const RVector& vals = solver.eigenvalues();
  const double tie = tol.eig_tie * std::max(1.0, vals.cwiseAbs().maxCoeff());
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    if (std::abs(vals(a) - vals(b)) > tie) return vals(a) > vals(b);
    CVector va = vecs.col(a), vb = vecs.col(b);
    return lex_less(va, vb);
  });

  HermitianEig out;
  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    out.values(i) = vals(order[static_cast<size_t>(i)]);
    out.vectors.col(i) = vecs.col(order[static_cast<size_t>(i)]);
  }
  return out;
}

CMatrix sqrtm_psd(const CMatrix& m, double clamp, const Tolerances& tol) {
  HermitianEig eig = eig_hermitian(m, tol);
  RVector vals = eig.values;
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -clamp)
      throw NotPsd("sqrtm_psd: eigenvalue " + std::to_string(vals(i)) +
                   " below -" + std::to_string(clamp));
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  CMatrix s = eig.vectors * vals.asDiagonal() * eig.vectors.adjoint();
  return hermitize(s);
}

double operator_norm(const CMatrix& a) {
  if (a.size() == 0) return 0.0;
  return Eigen::JacobiSVD<CMatrix>(a).singularValues()(0);
}

const std::vector<CMatrix>& pauli1() {
  static const std::vector<CMatrix> p = [] {
    const Complex i(0.0, 1.0);
    std::vector<CMatrix> v(4, CMatrix(2, 2));
    v[0] << 1, 0, 0, 1;
    v[1] << 0, 1, 1, 0;
    v[2] << 0, -i, i, 0;
    v[3] << 1, 0, 0, -1;
    return v;
  }();
  return p;
}

}  // namespace szn
