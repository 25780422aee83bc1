#include "szn/channel.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace szn {

const std::vector<CMatrix>& pauli_basis2() {
  static const std::vector<CMatrix> basis = [] {
    std::vector<CMatrix> b;
    b.reserve(16);
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) b.push_back(kron(pauli1()[a], pauli1()[c]));
    return b;
  }();
  return basis;
}

CVector vec(const CMatrix& m) {
  CVector v(m.rows() * m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) v(m.cols() * i + j) = m(i, j);
  return v;
}

CMatrix unvec(const CVector& v, Eigen::Index dim) {
  CMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i)
    for (Eigen::Index j = 0; j < dim; ++j) m(i, j) = v(dim * i + j);
  return m;
}

void DensityMatrix::validate(const Tolerances& tol) const {
  if (matrix.rows() != dim || matrix.cols() != dim)
    throw InvalidState("density matrix: dimension mismatch");
  if (hermiticity_defect(matrix) > tol.hermiticity)
    throw InvalidState("density matrix: not Hermitian");
  if (std::abs(matrix.trace().real() - 1.0) > tol.hermiticity ||
      std::abs(matrix.trace().imag()) > tol.hermiticity)
    throw InvalidState("density matrix: trace != 1");
  HermitianEig eig = eig_hermitian(hermitize(matrix), tol);
  if (eig.values.minCoeff() < -tol.hermiticity)
    throw InvalidState("density matrix: negative eigenvalue " +
                       std::to_string(eig.values.minCoeff()));
}

DensityMatrix pure_state(const CVector& phi) {
  if (std::abs(phi.norm() - 1.0) > default_tol().norm_check)
    throw NotNormalized("pure_state: ||phi|| = " + std::to_string(phi.norm()));
  return DensityMatrix(phi * phi.adjoint());
}

KrausSet::KrausSet(std::vector<CMatrix> ops) : operators(std::move(ops)) {
  if (operators.empty()) throw IncompleteSet("KrausSet: empty operator list");
  dim = operators.front().rows();
  CMatrix sum = CMatrix::Zero(dim, dim);
  max_operator_norm = 0.0;
  for (const CMatrix& a : operators) {
    if (a.rows() != dim || a.cols() != dim)
      throw InvalidState("KrausSet: inconsistent operator dimensions");
    sum += a.adjoint() * a;
    max_operator_norm = std::max(max_operator_norm, operator_norm(a));
  }
  completeness_defect = max_abs(sum - CMatrix::Identity(dim, dim));
}

CMatrix KrausSet::gram() const {
  CMatrix sum = CMatrix::Zero(dim, dim);
  for (const CMatrix& a : operators) sum += a.adjoint() * a;
  return sum;
}

KrausSet renormalize(const KrausSet& k) {
  const CMatrix m = k.gram();
  HermitianEig eig = eig_hermitian(hermitize(m));
  if (eig.values.minCoeff() <= 0.0)
    throw NotPsd("renormalize: sum A^dag A is singular");
  RVector inv_sqrt = eig.values.cwiseSqrt().cwiseInverse();
  const CMatrix m_inv_sqrt =
      eig.vectors * inv_sqrt.asDiagonal() * eig.vectors.adjoint();
  std::vector<CMatrix> ops;
  ops.reserve(k.operators.size());
  for (const CMatrix& a : k.operators) ops.push_back(a * m_inv_sqrt);
  return KrausSet(std::move(ops));
}

double trace_preservation_defect(const Superoperator& s) {
  const Eigen::Index d = s.state_dim();
  Eigen::RowVectorXcd trace_row = Eigen::RowVectorXcd::Zero(s.matrix.cols());
  Eigen::RowVectorXcd id_row = Eigen::RowVectorXcd::Zero(s.matrix.cols());
  for (Eigen::Index i = 0; i < d; ++i) {
    trace_row += s.matrix.row(d * i + i);
    id_row(d * i + i) += 1.0;
  }
  return (trace_row - id_row).cwiseAbs().maxCoeff();
}

void ChiMatrix::validate(const Tolerances& tol) const {
  if (matrix.rows() != 16 || matrix.cols() != 16)
    throw InvalidState("chi: expected 16x16");
  if (hermiticity_defect(matrix) > tol.hermiticity)
    throw InvalidState("chi: not Hermitian");
}

void DephasingParams::validate() const {
  if (gamma1 < 0 || gamma2 < 0 || t < 0)
    throw InvalidState("dephasing params must be non-negative");
}

Superoperator dephasing_generator(const DephasingParams& p) {
  p.validate();
  CMatrix z = CMatrix::Zero(16, 16);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      double g = 0.0;
      if (((i >> 1) & 1) != ((j >> 1) & 1)) g -= p.gamma1;
      if ((i & 1) != (j & 1)) g -= p.gamma2;
      z(4 * i + j, 4 * i + j) = g;
    }
  return Superoperator{z};
}

DensityMatrix evolve_superop(const Superoperator& z, double t, const DensityMatrix& rho,
                             const Tolerances& tol) {
  if (rho.dim * rho.dim != z.matrix.rows())
    throw InvalidState("evolve_superop: dimension mismatch");
  const CMatrix zt = z.matrix * t;
  CMatrix propagator;
  if (max_abs(zt - CMatrix(zt.diagonal().asDiagonal())) == 0.0) {
    propagator = CMatrix(zt.diagonal().array().exp().matrix().asDiagonal());
  } else {
    propagator = zt.exp();
  }
  DensityMatrix out(unvec(propagator * vec(rho.matrix), rho.dim));

  // A non-CPTP generator shows up as a PSD or trace violation here.
  const CMatrix h = hermitize(out.matrix);
  if (hermiticity_defect(out.matrix) > tol.state_validity ||
      std::abs(out.matrix.trace().real() - 1.0) > tol.state_validity ||
      std::abs(out.matrix.trace().imag()) > tol.state_validity)
    throw InvalidState("evolve_superop: output is not a valid state");
  HermitianEig eig = eig_hermitian(h, tol);
  if (eig.values.minCoeff() < -tol.state_validity)
    throw InvalidState("evolve_superop: output not PSD, min eigenvalue " +
                       std::to_string(eig.values.minCoeff()));
  return out;
}

Superoperator kraus_to_superop(const KrausSet& k) {
  CMatrix s = CMatrix::Zero(k.dim * k.dim, k.dim * k.dim);
  for (const CMatrix& a : k.operators) s += kron(a, a.conjugate());
  return Superoperator{s};
}

CMatrix superop_apply(const Superoperator& s, const CMatrix& rho) {
  return unvec(s.matrix * vec(rho), rho.rows());
}

CMatrix reshuffle(const CMatrix& m, Eigen::Index d) {
  CMatrix out(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      for (Eigen::Index k = 0; k < d; ++k)
        for (Eigen::Index l = 0; l < d; ++l)
          out(d * i + j, d * k + l) = m(d * i + k, d * j + l);
  return out;
}

namespace {

// Columns are vec(E_m); B^dag B = 4 I for the unnormalised Pauli products.
const CMatrix& basis_change() {
  static const CMatrix b = [] {
    CMatrix m(16, 16);
    for (int j = 0; j < 16; ++j) m.col(j) = vec(pauli_basis2()[size_t(j)]);
    return m;
  }();
  return b;
}

}  // namespace

ChiMatrix superop_to_chi(const Superoperator& s) {
  const CMatrix choi = reshuffle(s.matrix, 4);
  const CMatrix& b = basis_change();
  CMatrix chi = b.adjoint() * choi * b / 16.0;
  return ChiMatrix{hermitize(chi)};
}

Superoperator chi_to_superop(const ChiMatrix& chi) {
  const CMatrix& b = basis_change();
  const CMatrix choi = b * chi.matrix * b.adjoint();
  return Superoperator{reshuffle(choi, 4)};
}

KrausSet chi_to_kraus(const ChiMatrix& chi, const Tolerances& tol) {
  chi.validate(tol);
  HermitianEig eig = eig_hermitian(chi.matrix, tol);
  if (eig.values.minCoeff() < -tol.chi_clamp)
    throw NotCp("chi_to_kraus: eigenvalue " + std::to_string(eig.values.minCoeff()) +
                " below -" + std::to_string(tol.chi_clamp));
  std::vector<CMatrix> ops;
  for (Eigen::Index i = 0; i < 16; ++i) {
    const double d = eig.values(i);
    if (d <= tol.kraus_keep) continue;
    CMatrix a = CMatrix::Zero(4, 4);
    for (int j = 0; j < 16; ++j) a += eig.vectors(j, i) * pauli_basis2()[size_t(j)];
    ops.push_back(std::sqrt(d) * a);
  }
  if (ops.empty()) throw NotCp("chi_to_kraus: no eigenvalue above threshold");
  return KrausSet(std::move(ops));
}

ChiMatrix kraus_to_chi(const KrausSet& k) {
  const size_t n = k.operators.size();
  CMatrix coeff(static_cast<Eigen::Index>(n), 16);  // c_im, A_i = sum_m c_im E_m
  for (size_t i = 0; i < n; ++i)
    for (int m = 0; m < 16; ++m)
      coeff(static_cast<Eigen::Index>(i), m) =
          (pauli_basis2()[size_t(m)].adjoint() * k.operators[i]).trace() / 4.0;
  CMatrix chi = coeff.transpose() * coeff.conjugate();
  return ChiMatrix{hermitize(chi)};
}

DensityMatrix kraus_apply(const KrausSet& k, const DensityMatrix& rho,
                          double completeness_tol) {
  if (!k.complete(completeness_tol))
    throw IncompleteSet("kraus_apply: completeness defect " +
                        std::to_string(k.completeness_defect));
  CMatrix out = CMatrix::Zero(k.dim, k.dim);
  for (const CMatrix& a : k.operators) out += a * rho.matrix * a.adjoint();
  return DensityMatrix(out);
}

CMatrix chi_apply(const ChiMatrix& chi, const CMatrix& rho) {
  CMatrix out = CMatrix::Zero(4, 4);
  for (int m = 0; m < 16; ++m) {
    if (chi.matrix.row(m).cwiseAbs().maxCoeff() == 0.0) continue;
    const CMatrix left = pauli_basis2()[size_t(m)] * rho;
    for (int n = 0; n < 16; ++n) {
      const Complex c = chi.matrix(m, n);
      if (c == Complex(0, 0)) continue;
      out += c * left * pauli_basis2()[size_t(n)].adjoint();
    }
  }
  return out;
}

namespace {

double overlap_impl(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  const double na = frobenius(a), nb = frobenius(b);
  if (na < tol.zero_matrix || nb < tol.zero_matrix)
    throw ZeroMatrix("overlap: matrix has negligible norm");
  return std::abs((a * b.adjoint()).trace()) / (na * nb);
}

}  // namespace

double process_fidelity(const ChiMatrix& a, const ChiMatrix& b, const Tolerances& tol) {
  if (a.matrix.rows() != b.matrix.rows())
    throw InvalidState("process_fidelity: dimension mismatch");
  return overlap_impl(a.matrix, b.matrix, tol);
}

double normalized_overlap(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidState("normalized_overlap: dimension mismatch");
  if (hermiticity_defect(a) > tol.hermiticity || hermiticity_defect(b) > tol.hermiticity)
    throw NotHermitian("normalized_overlap: arguments must be Hermitian");
  return overlap_impl(a, b, tol);
}

}  // namespace szn
