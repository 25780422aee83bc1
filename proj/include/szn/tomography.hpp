#pragma once

#include "szn/channel.hpp"

#include <cstdint>
#include <functional>
#include <optional>

namespace szn {

/// The 16-state tomography input basis: tensor square of (|0>, |1>, |+>, |->)
/// with |+> = (|0>+|1>)/sqrt2 and |-> = (|0>+i|1>)/sqrt2. Ordered so state
/// 4a+b is ket_a (x) ket_b, matching the row order |00>, |01>, |0+>, |0->,
/// |10>, ...
struct InputBasis {
  std::vector<CVector> kets;        // 16 unit vectors
  std::vector<CMatrix> projectors;  // the corresponding density matrices
};

const InputBasis& input_basis();

/// Condition number of the Gram matrix of the vectorised basis projectors.
double input_basis_gram_condition();

struct TomographyRecord {
  std::vector<DensityMatrix> inputs;  // 16
  std::vector<CMatrix> outputs;       // 16 Hermitian, possibly noisy / non-PSD
  std::optional<double> noise_sigma;
  std::optional<std::uint64_t> seed;

  void validate(const Tolerances& tol = default_tol()) const;
};

/// h + (G + G^dag)/2 with G i.i.d. complex Gaussian of std sigma.
/// Deterministic per seed; exactly preserves Hermiticity.
CMatrix add_measurement_noise(const CMatrix& h, double sigma, std::uint64_t seed);

/// Apply `channel` to every basis projector; optionally perturb the outputs.
TomographyRecord record_from_channel(const std::function<CMatrix(const CMatrix&)>& channel,
                                     std::optional<double> noise_sigma = std::nullopt,
                                     std::optional<std::uint64_t> seed = std::nullopt);

/// Unconstrained least-squares estimate of chi from the record. Exact (to
/// 1e-10) on noiseless data from a true channel. Throws SingularSystem when
/// the input Gram condition number exceeds 1e12.
ChiMatrix linear_inversion_qpt(const TomographyRecord& rec,
                               const Tolerances& tol = default_tol());

struct CptpOptions {
  int max_iterations = 10000;
  double constraint_tol = 1e-10;
  double objective_rel_tol = 1e-12;
};

/// Physical (CPTP-constrained) least squares: projected gradient descent
/// with step 1/L, alternating projections onto the PSD cone and the
/// trace-preservation affine subspace after each step.
ChiMatrix cptp_project_qpt(const TomographyRecord& rec, const CptpOptions& opts = {},
                           const Tolerances& tol = default_tol());

/// sum_k ||Lambda_chi(rho_k) - output_k||_F^2 for the record's data.
double qpt_objective(const TomographyRecord& rec, const ChiMatrix& chi);

/// Max-element violation of sum_mn chi_mn E_n^dag E_m = I.
double tp_constraint_defect(const ChiMatrix& chi);

}  // namespace szn
