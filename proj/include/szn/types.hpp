#pragma once

#include <Eigen/Dense>

#include <complex>
#include <stdexcept>
#include <string>

namespace szn {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

/// Central tolerance record. Every numeric threshold used by the library
/// lives here; functions take these as defaulted arguments so a caller can
/// relax or tighten a single check without touching global state.
struct Tolerances {
  double hermiticity = 1e-8;        // max |H - H^dag| element
  double psd_clamp = 1e-9;          // eigenvalues in [-psd_clamp, 0) clamp to 0
  double chi_clamp = 1e-6;          // same, for process matrices
  double completeness = 1e-8;       // ||sum A_i^dag A_i - I||_max, synthetic sets
  double completeness_loose = 0.05; // same, for experimental data files
  double contraction_slack = 1e-9;  // operator norm may exceed 1 by this much
  double unitarity = 1e-10;         // ||U^dag U - I||_F
  double state_validity = 1e-6;     // PSD/trace defect that flags a bad channel
  double zero_matrix = 1e-12;       // Frobenius norm below which a matrix is "zero"
  double kraus_keep = 1e-10;        // chi eigenvalues above this spawn a Kraus operator
  double eig_tie = 1e-12;           // eigenvalue gap treated as degenerate
  double norm_check = 1e-10;        // state normalisation
};

inline const Tolerances& default_tol() {
  static const Tolerances t{};
  return t;
}

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotHermitian : Error { using Error::Error; };
struct NoConvergence : Error { using Error::Error; };
struct NotPsd : Error { using Error::Error; };
struct NotCp : Error { using Error::Error; };
struct NotContraction : Error { using Error::Error; };
struct NotUnitary : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct IncompleteSet : Error { using Error::Error; };
struct InvalidState : Error { using Error::Error; };
struct SingularSystem : Error { using Error::Error; };
struct ZeroMatrix : Error { using Error::Error; };
struct ParseError : Error { using Error::Error; };
struct IoError : Error { using Error::Error; };

}  // namespace szn
