#include "szn/dilation.hpp"

#include <cmath>

namespace szn {

DilationUnitary dilate(const CMatrix& a, const Tolerances& tol) {
  if (a.rows() != a.cols()) throw NotContraction("dilate: matrix not square");
  const Eigen::Index d = a.rows();
  const double norm = operator_norm(a);
  CMatrix contraction = a;
  if (norm > 1.0 + tol.contraction_slack)
    throw NotContraction("dilate: operator norm " + std::to_string(norm) +
                         " exceeds 1 by " + std::to_string(norm - 1.0));
  if (norm > 1.0) contraction /= norm;  // printed-precision slack

  const CMatrix id = CMatrix::Identity(d, d);
  const CMatrix d_a = sqrtm_psd(hermitize(id - contraction.adjoint() * contraction),
                                tol.psd_clamp, tol);
  const CMatrix d_adag = sqrtm_psd(hermitize(id - contraction * contraction.adjoint()),
                                   tol.psd_clamp, tol);

  CMatrix u(2 * d, 2 * d);
  u.topLeftCorner(d, d) = contraction;
  u.topRightCorner(d, d) = d_adag;
  u.bottomLeftCorner(d, d) = d_a;
  u.bottomRightCorner(d, d) = -contraction.adjoint();
  return DilationUnitary{0, u, d};
}

CVector embed_state(const CVector& phi, const Tolerances& tol) {
  if (std::abs(phi.norm() - 1.0) > tol.norm_check)
    throw NotNormalized("embed_state: ||phi|| = " + std::to_string(phi.norm()));
  CVector out = CVector::Zero(2 * phi.size());
  out.head(phi.size()) = phi;
  return out;
}

ProjectedOutcome simulate_kraus_via_dilation(const DilationUnitary& u, const CVector& phi) {
  const CVector big = u.matrix * embed_state(phi);
  const CVector top = big.head(u.source_dim);
  ProjectedOutcome out;
  out.block = top * top.adjoint();
  out.weight = out.block.trace().real();
  return out;
}

DensityMatrix simulate_channel_via_dilation(const KrausSet& k, const DensityMatrix& rho,
                                            double completeness_tol,
                                            const Tolerances& tol) {
  if (!k.complete(completeness_tol))
    throw IncompleteSet("simulate_channel_via_dilation: completeness defect " +
                        std::to_string(k.completeness_defect));
  HermitianEig eig = eig_hermitian(hermitize(rho.matrix), tol);
  CMatrix out = CMatrix::Zero(k.dim, k.dim);
  for (size_t i = 0; i < k.operators.size(); ++i) {
    DilationUnitary u = dilate(k.operators[i], tol);
    u.kraus_index = static_cast<int>(i);
    for (Eigen::Index j = 0; j < eig.values.size(); ++j) {
      const double p = eig.values(j);
      if (p <= 1e-12) continue;
      out += p * simulate_kraus_via_dilation(u, eig.vectors.col(j)).block;
    }
  }
  return DensityMatrix(out);
}

}  // namespace szn
