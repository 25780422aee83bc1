#pragma once

#include "szn/channel.hpp"

namespace szn {

/// Minimal unitary dilation of a 4x4 contraction A:
///   U = [ A        D_{A^dag} ]      D_X = sqrt(I - X^dag X)
///       [ D_A      -A^dag    ]
/// The ancilla is the most significant qubit, so the top-left block acts on
/// the |0>-ancilla subspace and projecting the output is literally taking
/// that block.
struct DilationUnitary {
  int kraus_index = 0;
  CMatrix matrix;  // 8x8
  Eigen::Index source_dim = 4;

  CMatrix kraus_block() const { return matrix.topLeftCorner(source_dim, source_dim); }
};

/// 4x4 subnormalised output block and its trace weight.
struct ProjectedOutcome {
  CMatrix block;
  double weight = 0.0;
};

DilationUnitary dilate(const CMatrix& a, const Tolerances& tol = default_tol());

/// |0> (x) |phi|: components 0..3 = phi, 4..7 = 0.
CVector embed_state(const CVector& phi, const Tolerances& tol = default_tol());

/// Top-left 4x4 block of U |Phi><Phi| U^dag; equals A |phi><phi| A^dag.
ProjectedOutcome simulate_kraus_via_dilation(const DilationUnitary& u, const CVector& phi);

/// Full channel through the dilation route. Mixed inputs are spectrally
/// decomposed and each eigenvector simulated separately.
DensityMatrix simulate_channel_via_dilation(const KrausSet& k, const DensityMatrix& rho,
                                            double completeness_tol = default_tol().completeness,
                                            const Tolerances& tol = default_tol());

}  // namespace szn
