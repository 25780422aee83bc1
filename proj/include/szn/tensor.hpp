#pragma once

#include "szn/types.hpp"

#include <vector>

namespace szn {

/// Eigendecomposition of a Hermitian matrix. Eigenvalues are sorted
/// descending; column i of `vectors` belongs to `values[i]`. Each column is
/// phase-normalised so its first component of non-negligible magnitude is
/// real and positive, and degenerate groups are ordered lexicographically,
/// which makes the decomposition (and everything derived from it, notably
/// Kraus extraction) reproducible.
struct HermitianEig {
  RVector values;
  CMatrix vectors;
};

/// Kronecker product, block (i,j) = a(i,j) * b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

double max_abs(const CMatrix& a);
double frobenius(const CMatrix& a);
bool approx_equal(const CMatrix& a, const CMatrix& b, double tolerance);

/// Max-element distance from Hermiticity, |h - h^dag|.
double hermiticity_defect(const CMatrix& h);
/// ||u^dag u - I||_F.
double unitarity_defect(const CMatrix& u);

CMatrix hermitize(const CMatrix& h);

HermitianEig eig_hermitian(const CMatrix& h, const Tolerances& tol = default_tol());

/// Principal square root of a PSD Hermitian matrix. Eigenvalues in
/// [-clamp, 0) are treated as 0; anything more negative throws NotPsd.
CMatrix sqrtm_psd(const CMatrix& m, double clamp = default_tol().psd_clamp,
                  const Tolerances& tol = default_tol());

/// Largest singular value.
double operator_norm(const CMatrix& a);

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

/// The four single-qubit Paulis in the fixed order (I, x, y, z).
const std::vector<CMatrix>& pauli1();

}  // namespace szn
