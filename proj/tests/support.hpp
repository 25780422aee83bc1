#pragma once

// Seeded random matrix generators shared by the test suites. Kept out of the
// library on purpose: tests must not depend on library RNG behaviour.

#include "szn/channel.hpp"

#include <random>

namespace szn::testing {

inline CMatrix random_gaussian(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> dist(0.0, 1.0);
  CMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = Complex(dist(rng), dist(rng));
  return m;
}

inline CMatrix random_hermitian(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_gaussian(n, n, rng);
  return 0.5 * (g + g.adjoint());
}

// Haar-distributed unitary: QR of a Gaussian matrix with the R diagonal
// phases folded into Q.
inline CMatrix random_unitary(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < n; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= (std::abs(d) > 0 ? d / std::abs(d) : Complex(1, 0));
  }
  return q;
}

inline CVector random_pure_state(Eigen::Index n, std::mt19937_64& rng) {
  CVector v = random_gaussian(n, 1, rng);
  return v / v.norm();
}

inline CMatrix random_contraction(Eigen::Index n, std::mt19937_64& rng) {
  CMatrix m = random_gaussian(n, n, rng);
  const double norm = operator_norm(m);
  std::uniform_real_distribution<double> scale(0.1, 1.0);
  return m * (scale(rng) / norm);
}

// Complete Kraus set with `blocks` operators: QR-orthonormalised columns of
// a Gaussian (4*blocks) x 4 matrix, split into 4x4 blocks.
inline KrausSet random_cptp_channel(int blocks, std::mt19937_64& rng) {
  const Eigen::Index rows = 4 * blocks;
  const CMatrix g = random_gaussian(rows, 4, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix q = CMatrix(qr.householderQ()).leftCols(4);
  std::vector<CMatrix> ops;
  for (int b = 0; b < blocks; ++b) ops.push_back(q.middleRows(4 * b, 4));
  return KrausSet(std::move(ops));
}

inline CMatrix random_psd(Eigen::Index n, std::mt19937_64& rng) {
  const CMatrix g = random_gaussian(n, n, rng);
  return g * g.adjoint() / double(n);
}

// The published two-qubit phase-damping Kraus matrices (diagonal, printed
// at 4-decimal precision).
inline KrausSet published_phase_damping_set() {
  const Complex c1(-0.4723, 0.0);
  const Complex c2(0.0181, -0.4961);
  const Complex c3(-0.0085, -0.5019);
  const Complex c4(-0.5276, -0.007);
  CMatrix a1 = CMatrix::Zero(4, 4), a2 = CMatrix::Zero(4, 4),
          a3 = CMatrix::Zero(4, 4), a4 = CMatrix::Zero(4, 4);
  a1.diagonal() << c1, -c1, -c1, c1;
  a2.diagonal() << c2, c2, -c2, -c2;
  a3.diagonal() << c3, -c3, c3, -c3;
  a4.diagonal() << c4, c4, c4, c4;
  return KrausSet({a1, a2, a3, a4});
}

// Closed-form single-qubit dephasing weight p = (1 + e^{-gamma t}) / 2.
inline double dephasing_weight(double gamma, double t) {
  return 0.5 * (1.0 + std::exp(-gamma * t));
}

}  // namespace szn::testing
