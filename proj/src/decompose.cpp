#include "szn/decompose.hpp"

#include "szn/tensor.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <bit>
#include <cmath>
#include <vector>

namespace szn {

namespace {

constexpr double kTinySine = 1e-7;   // sine below this is treated as exactly 0
constexpr double kZeroAngle = 1e-12; // rotations closer to 0 (mod 2pi) are dropped

// Nearest unitary in Frobenius norm (polar factor).
CMatrix polar_unitary(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

struct CosineSine {
  CMatrix l0, l1, r0, r1;     // unitary N x N factors
  std::vector<double> theta;  // N angles, c = cos(theta), s = sin(theta)
};

// U = (l0 (+) l1) . [[C, -S], [S, C]] . (r0 (+) r1)^dag  with diagonal C, S.
//
// l0, C, r0 come from the SVD of the top-left block; the remaining factors
// are forced by unitarity: Z r0 has exactly orthogonal columns with norms
// sin(theta), and the last factor is recovered row-wise from whichever of
// the two defining equations is better conditioned. Indices with negligible
// sine get their l1 column from a deterministic orthonormal completion.
CosineSine csd(const CMatrix& u) {
  const Eigen::Index n = u.rows() / 2;
  const CMatrix x = u.topLeftCorner(n, n);
  const CMatrix y = u.topRightCorner(n, n);
  const CMatrix z = u.bottomLeftCorner(n, n);
  const CMatrix w = u.bottomRightCorner(n, n);

  Eigen::JacobiSVD<CMatrix> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CosineSine out;
  out.l0 = svd.matrixU();
  out.r0 = svd.matrixV();

  const CMatrix t = z * out.r0;
  std::vector<double> c(static_cast<size_t>(n));
  std::vector<double> s(static_cast<size_t>(n));
  out.l1 = CMatrix::Zero(n, n);
  std::vector<Eigen::Index> missing;
  for (Eigen::Index i = 0; i < n; ++i) {
    c[size_t(i)] = std::min(svd.singularValues()(i), 1.0);
    const double sn = t.col(i).norm();
    if (sn < kTinySine) {
      s[size_t(i)] = 0.0;
      c[size_t(i)] = 1.0;
      missing.push_back(i);
    } else {
      s[size_t(i)] = sn;
      out.l1.col(i) = t.col(i) / sn;
    }
  }
  // Complete l1 with canonical basis vectors orthogonal to the placed columns.
  Eigen::Index cursor = 0;
  for (Eigen::Index i : missing) {
    for (; cursor < n; ++cursor) {
      CVector cand = CVector::Unit(n, cursor);
      cand -= out.l1 * (out.l1.adjoint() * cand);
      if (cand.norm() > 0.3) {
        out.l1.col(i) = cand / cand.norm();
        ++cursor;
        break;
      }
    }
  }
  out.l1 = polar_unitary(out.l1);

  out.theta.resize(size_t(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    const double h = std::hypot(c[size_t(i)], s[size_t(i)]);
    c[size_t(i)] /= h;
    s[size_t(i)] /= h;
    out.theta[size_t(i)] = std::atan2(s[size_t(i)], c[size_t(i)]);
  }

  const CMatrix yp = out.l0.adjoint() * y;  // = -S r1^dag
  const CMatrix wp = out.l1.adjoint() * w;  // =  C r1^dag
  CMatrix r1dag(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    if (s[size_t(i)] >= c[size_t(i)])
      r1dag.row(i) = -yp.row(i) / s[size_t(i)];
    else
      r1dag.row(i) = wp.row(i) / c[size_t(i)];
  }
  out.r1 = polar_unitary(r1dag.adjoint());
  return out;
}

struct Demux {
  CMatrix v, w;            // A (+) B = (I (x) v) . (D (+) D^dag) . (I (x) w)
  std::vector<Complex> d;  // unit-modulus diagonal of D
};

Demux demux(const CMatrix& a, const CMatrix& b) {
  const Eigen::Index n = a.rows();
  const CMatrix m = a * b.adjoint();  // unitary, normal
  Eigen::ComplexSchur<CMatrix> schur(m);
  Demux out;
  out.v = schur.matrixU();
  out.d.resize(size_t(n));
  CMatrix d_conj = CMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Complex lambda = schur.matrixT()(i, i);
    lambda /= std::abs(lambda);
    const Complex di = std::exp(Complex(0, 0.5) * std::arg(lambda));
    out.d[size_t(i)] = di;
    d_conj(i, i) = std::conj(di);
  }
  out.w = d_conj * out.v.adjoint() * a;
  return out;
}

// beta_j = 2^{-k} sum_v (-1)^{popcount(gray(j) & v)} alpha_v.
// Inverts the Gray-code CNOT network below.
std::vector<double> mux_transform(const std::vector<double>& alpha) {
  const size_t m = alpha.size();
  std::vector<double> beta(m, 0.0);
  for (size_t j = 0; j < m; ++j) {
    const size_t gj = j ^ (j >> 1);
    double acc = 0.0;
    for (size_t v = 0; v < m; ++v)
      acc += (std::popcount(gj & v) & 1u) ? -alpha[v] : alpha[v];
    beta[j] = acc / double(m);
  }
  return beta;
}

// Multiplexed rotation about y or z on `target`, selected by `controls`
// (controls[0] = most significant bit of the angle index). Emitted in
// application order as the alternating rotation/CNOT ladder.
void emit_mux_rotation(std::vector<Gate>& gates, Axis axis, int target,
                       const std::vector<int>& controls,
                       const std::vector<double>& alpha) {
  const size_t k = controls.size();
  const size_t m = size_t(1) << k;
  const std::vector<double> beta = mux_transform(alpha);
  for (size_t j = 0; j < m; ++j) {
    gates.push_back(Gate::rotation(target, axis, beta[j]));
    const size_t bit = (j + 1 == m) ? k - 1 : size_t(std::countr_zero(j + 1));
    gates.push_back(Gate::cnot(controls[k - 1 - bit], target));
  }
}

// ZYZ angles; the global phase is discarded (the contract is equality up to
// phase and every factor enters the synthesis product exactly once).
void emit_zyz(std::vector<Gate>& gates, const CMatrix& u, int qubit) {
  const Complex det = u.determinant();
  const CMatrix v = u * std::exp(Complex(0, -0.5 * std::arg(det)));
  const double b = 2.0 * std::atan2(std::abs(v(1, 0)), std::abs(v(0, 0)));
  const double apc = std::abs(v(0, 0)) > 1e-12 ? -2.0 * std::arg(v(0, 0)) : 0.0;
  const double amc = std::abs(v(1, 0)) > 1e-12 ? 2.0 * std::arg(v(1, 0)) : 0.0;
  gates.push_back(Gate::rotation(qubit, Axis::Z, 0.5 * (apc - amc)));
  gates.push_back(Gate::rotation(qubit, Axis::Y, b));
  gates.push_back(Gate::rotation(qubit, Axis::Z, 0.5 * (apc + amc)));
}

void synth(std::vector<Gate>& gates, const CMatrix& u, const std::vector<int>& qubits);

// A (+) B selected on qubits[0], blocks acting on qubits[1:].
void synth_mux_pair(std::vector<Gate>& gates, const CMatrix& a, const CMatrix& b,
                    const std::vector<int>& qubits) {
  const Demux dm = demux(a, b);
  const std::vector<int> rest(qubits.begin() + 1, qubits.end());
  std::vector<double> alpha(dm.d.size());
  for (size_t i = 0; i < dm.d.size(); ++i) alpha[i] = -2.0 * std::arg(dm.d[i]);
  synth(gates, dm.w, rest);
  emit_mux_rotation(gates, Axis::Z, qubits[0], rest, alpha);
  synth(gates, dm.v, rest);
}

void synth(std::vector<Gate>& gates, const CMatrix& u, const std::vector<int>& qubits) {
  if (qubits.size() == 1) {
    emit_zyz(gates, u, qubits[0]);
    return;
  }
  const CosineSine cs = csd(u);
  const std::vector<int> rest(qubits.begin() + 1, qubits.end());
  std::vector<double> alpha(cs.theta.size());
  for (size_t i = 0; i < cs.theta.size(); ++i) alpha[i] = 2.0 * cs.theta[i];
  synth_mux_pair(gates, cs.r0.adjoint(), cs.r1.adjoint(), qubits);
  emit_mux_rotation(gates, Axis::Y, qubits[0], rest, alpha);
  synth_mux_pair(gates, cs.l0, cs.l1, qubits);
}

bool angle_is_trivial(double theta) {
  return std::abs(std::remainder(theta, 2.0 * M_PI)) < kZeroAngle;
}

// Merge adjacent same-axis rotations, drop rotations that are the identity
// up to phase, and cancel CNOT pairs (CNOTs sharing a target commute, so a
// run of same-target CNOTs reduces by control parity).
void peephole(std::vector<Gate>& gates) {
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Gate> next;
    next.reserve(gates.size());
    size_t i = 0;
    while (i < gates.size()) {
      const Gate& g = gates[i];
      if (g.kind == Gate::Kind::Rotation) {
        double theta = g.theta;
        size_t j = i + 1;
        while (j < gates.size() && gates[j].kind == Gate::Kind::Rotation &&
               gates[j].qubit == g.qubit && gates[j].axis == g.axis) {
          theta += gates[j].theta;
          ++j;
        }
        if (j > i + 1) changed = true;
        if (angle_is_trivial(theta)) {
          changed = true;
        } else {
          next.push_back(Gate::rotation(g.qubit, g.axis, theta));
        }
        i = j;
        continue;
      }
      // Maximal run of CNOTs with one shared target: keep odd-parity controls
      // in first-appearance order.
      size_t j = i;
      while (j < gates.size() && gates[j].kind == Gate::Kind::Cnot &&
             gates[j].target == g.target)
        ++j;
      std::vector<int> order;
      std::vector<int> parity(16, 0);
      for (size_t m = i; m < j; ++m) {
        const int c = gates[m].control;
        if (std::find(order.begin(), order.end(), c) == order.end()) order.push_back(c);
        parity[size_t(c)] ^= 1;
      }
      size_t kept = 0;
      for (int c : order)
        if (parity[size_t(c)]) {
          next.push_back(Gate::cnot(c, g.target));
          ++kept;
        }
      if (kept != j - i) changed = true;
      i = j;
    }
    gates = std::move(next);
  }
}

}  // namespace

Circuit decompose_unitary(const CMatrix& u, const Tolerances& tol) {
  if (u.rows() != 8 || u.cols() != 8)
    throw NotUnitary("decompose_unitary: expected an 8x8 matrix");
  const double defect = unitarity_defect(u);
  if (defect > 1e-8)
    throw NotUnitary("decompose_unitary: unitarity defect " + std::to_string(defect));
  (void)tol;
  Circuit c;
  synth(c.gates, u, {1, 2, 3});
  peephole(c.gates);
  return c;
}

}  // namespace szn
