#pragma once

#include "szn/tensor.hpp"

#include <cmath>
#include <vector>

namespace szn {

/// Two-qubit operator basis E_1..E_16: E_{4a+b+1} = sigma_a (x) sigma_b with
/// (sigma_0..sigma_3) = (I, x, y, z). Unnormalised (Hilbert-Schmidt norm 2);
/// the identity channel then has chi(0,0) = 1.
const std::vector<CMatrix>& pauli_basis2();

/// Row-major vectorisation, vec index k = d*i + j for element (i,j).
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index dim);

struct DensityMatrix {
  Eigen::Index dim = 4;
  CMatrix matrix;

  DensityMatrix() = default;
  DensityMatrix(CMatrix m) : dim(m.rows()), matrix(std::move(m)) {}

  /// Hermitian within 1e-8, unit trace, eigenvalues >= -1e-8.
  void validate(const Tolerances& tol = default_tol()) const;
};

DensityMatrix pure_state(const CVector& phi);

struct KrausSet {
  Eigen::Index dim = 4;
  std::vector<CMatrix> operators;
  double completeness_defect = 0.0;  // ||sum A_i^dag A_i - I||_max
  double max_operator_norm = 0.0;

  KrausSet() = default;
  explicit KrausSet(std::vector<CMatrix> ops);

  bool complete(double tolerance = default_tol().completeness) const {
    return completeness_defect <= tolerance;
  }
  /// sum A_i^dag A_i
  CMatrix gram() const;
};

/// Rescale by the unique PSD factor M^{-1/2}, M = sum A_i^dag A_i, so the
/// result is exactly complete. Used for experimental sets printed at low
/// precision.
KrausSet renormalize(const KrausSet& k);

/// Linear map on row-major vectorised density matrices.
struct Superoperator {
  CMatrix matrix;  // 16x16 for two qubits

  Eigen::Index state_dim() const {
    return static_cast<Eigen::Index>(std::lround(std::sqrt(double(matrix.rows()))));
  }
};

/// Max-element deviation of the trace row (sum of rows k in {0,5,10,15})
/// from the identity's trace row. Zero for trace-preserving channels.
double trace_preservation_defect(const Superoperator& s);

/// Process matrix in the fixed pauli_basis2 ordering.
struct ChiMatrix {
  CMatrix matrix;  // 16x16 Hermitian

  void validate(const Tolerances& tol = default_tol()) const;
};

struct DephasingParams {
  double gamma1 = 0.0;  // rate, 1/s
  double gamma2 = 0.0;  // rate, 1/s
  double t = 0.0;       // duration, s

  void validate() const;
};

/// Diagonal generator of independent dephasing on the two qubits: entry at
/// vec index k = 4i+j is -g1*[bit1(i) != bit1(j)] - g2*[bit2(i) != bit2(j)],
/// bit1 being the most significant bit of the 2-bit row index.
Superoperator dephasing_generator(const DephasingParams& p);

/// unvec(exp(z t) vec(rho)). Element-wise exponential when z is diagonal,
/// scaling-and-squaring otherwise. Throws InvalidState if the result is not
/// a density matrix to within 1e-6 (non-CPTP generator).
DensityMatrix evolve_superop(const Superoperator& z, double t, const DensityMatrix& rho,
                             const Tolerances& tol = default_tol());

Superoperator kraus_to_superop(const KrausSet& k);
CMatrix superop_apply(const Superoperator& s, const CMatrix& rho);

/// Reshuffle a superoperator into the corresponding Choi matrix (and back;
/// the map is an involution): C[(i,j),(k,l)] = S[(i,k),(j,l)].
CMatrix reshuffle(const CMatrix& m, Eigen::Index dim);

ChiMatrix superop_to_chi(const Superoperator& s);
Superoperator chi_to_superop(const ChiMatrix& chi);

/// Canonical Kraus extraction: chi = V D V^dag, one operator per eigenvalue
/// above 1e-10, ordered by descending eigenvalue, A_i = sqrt(d_i) sum_j V_ji E_j.
KrausSet chi_to_kraus(const ChiMatrix& chi, const Tolerances& tol = default_tol());

ChiMatrix kraus_to_chi(const KrausSet& k);

/// sum_i A_i rho A_i^dag. Requires a complete set.
DensityMatrix kraus_apply(const KrausSet& k, const DensityMatrix& rho,
                          double completeness_tol = default_tol().completeness);

/// sum_mn chi_mn E_m rho E_n^dag (without completeness checks).
CMatrix chi_apply(const ChiMatrix& chi, const CMatrix& rho);

/// |Tr[a b^dag]| / sqrt(Tr[a a^dag] Tr[b b^dag]) on process matrices.
double process_fidelity(const ChiMatrix& a, const ChiMatrix& b,
                        const Tolerances& tol = default_tol());

/// Same overlap applied to Hermitian matrices (the per-state metric).
double normalized_overlap(const CMatrix& a, const CMatrix& b,
                          const Tolerances& tol = default_tol());

}  // namespace szn
