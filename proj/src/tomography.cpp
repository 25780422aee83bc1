#include "szn/tomography.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <random>

namespace szn {

const InputBasis& input_basis() {
  static const InputBasis basis = [] {
    const Complex i(0.0, 1.0);
    std::vector<CVector> single(4, CVector(2));
    single[0] << 1, 0;
    single[1] << 0, 1;
    single[2] << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
    single[3] << 1.0 / std::sqrt(2.0), i / std::sqrt(2.0);
    InputBasis b;
    for (int a = 0; a < 4; ++a)
      for (int c = 0; c < 4; ++c) {
        CVector ket(4);
        ket << single[size_t(a)](0) * single[size_t(c)],
               single[size_t(a)](1) * single[size_t(c)];
        b.kets.push_back(ket);
        b.projectors.push_back(ket * ket.adjoint());
      }
    return b;
  }();
  return basis;
}

double input_basis_gram_condition() {
  CMatrix v(16, 16);
  for (int k = 0; k < 16; ++k) v.col(k) = vec(input_basis().projectors[size_t(k)]);
  const CMatrix gram = v.adjoint() * v;
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
  return eig.eigenvalues().maxCoeff() / eig.eigenvalues().minCoeff();
}

void TomographyRecord::validate(const Tolerances& tol) const {
  if (inputs.size() != outputs.size())
    throw InvalidState("tomography record: input/output length mismatch");
  for (const DensityMatrix& rho : inputs) rho.validate(tol);
  for (const CMatrix& out : outputs)
    if (hermiticity_defect(out) > tol.hermiticity)
      throw InvalidState("tomography record: non-Hermitian output");
}

CMatrix add_measurement_noise(const CMatrix& h, double sigma, std::uint64_t seed) {
  if (sigma < 0) throw InvalidState("noise sigma must be non-negative");
  if (sigma == 0) return h;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> dist(0.0, sigma / std::sqrt(2.0));
  CMatrix g(h.rows(), h.cols());
  for (Eigen::Index i = 0; i < h.rows(); ++i)
    for (Eigen::Index j = 0; j < h.cols(); ++j) {
      const double re = dist(rng);
      const double im = dist(rng);
      g(i, j) = Complex(re, im);
    }
  return h + 0.5 * (g + g.adjoint());
}

TomographyRecord record_from_channel(const std::function<CMatrix(const CMatrix&)>& channel,
                                     std::optional<double> noise_sigma,
                                     std::optional<std::uint64_t> seed) {
  TomographyRecord rec;
  rec.noise_sigma = noise_sigma;
  rec.seed = seed;
  const std::uint64_t base_seed = seed.value_or(0);
  for (int k = 0; k < 16; ++k) {
    rec.inputs.emplace_back(input_basis().projectors[size_t(k)]);
    CMatrix out = channel(input_basis().projectors[size_t(k)]);
    if (noise_sigma && *noise_sigma > 0)
      out = add_measurement_noise(out, *noise_sigma, base_seed + std::uint64_t(k));
    rec.outputs.push_back(out);
  }
  return rec;
}

namespace {

// Stacked linear system: row block k holds vec(E_m rho_k E_n^dag) as the
// column (16 m + n), so A vec(chi) = stacked vec(outputs).
struct QptSystem {
  CMatrix a;  // (16 * n_states) x 256
  CVector b;

  static QptSystem build(const TomographyRecord& rec) {
    const size_t n_states = rec.inputs.size();
    QptSystem sys;
    sys.a.resize(Eigen::Index(16 * n_states), 256);
    sys.b.resize(Eigen::Index(16 * n_states));
    for (size_t k = 0; k < n_states; ++k) {
      sys.b.segment(Eigen::Index(16 * k), 16) = vec(rec.outputs[k]);
      for (int m = 0; m < 16; ++m) {
        const CMatrix left = pauli_basis2()[size_t(m)] * rec.inputs[k].matrix;
        for (int n = 0; n < 16; ++n)
          sys.a.block(Eigen::Index(16 * k), 16 * m + n, 16, 1) =
              vec(left * pauli_basis2()[size_t(n)].adjoint());
      }
    }
    return sys;
  }
};

double gram_condition(const std::vector<DensityMatrix>& inputs) {
  CMatrix v(16, Eigen::Index(inputs.size()));
  for (size_t k = 0; k < inputs.size(); ++k) v.col(Eigen::Index(k)) = vec(inputs[k].matrix);
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(v.adjoint() * v);
  const double lo = eig.eigenvalues().minCoeff();
  if (lo <= 0) return std::numeric_limits<double>::infinity();
  return eig.eigenvalues().maxCoeff() / lo;
}

CMatrix chi_from_vec(const CVector& x) { return unvec(x, 16); }

// Trace-preservation subspace K vec(chi) = vec(I): K row (4a+b), column
// (16m+n) is (E_n^dag E_m)(a, b).
struct TpProjector {
  CMatrix k;              // 16 x 256
  CVector c;              // vec(I_4)
  Eigen::LDLT<CMatrix> kkt;

  TpProjector() {
    k.resize(16, 256);
    for (int m = 0; m < 16; ++m)
      for (int n = 0; n < 16; ++n)
        k.col(16 * m + n) =
            vec(pauli_basis2()[size_t(n)].adjoint() * pauli_basis2()[size_t(m)]);
    c = vec(CMatrix::Identity(4, 4));
    kkt.compute(k * k.adjoint());
  }

  CVector project(const CVector& x) const {
    return x - k.adjoint() * kkt.solve(k * x - c);
  }
  double defect(const CVector& x) const {
    return (k * x - c).cwiseAbs().maxCoeff();
  }
};

const TpProjector& tp_projector() {
  static const TpProjector p;
  return p;
}

CVector project_psd_vec(const CVector& x, double* neg_eig = nullptr) {
  const CMatrix chi = hermitize(chi_from_vec(x));
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(chi);
  if (neg_eig) *neg_eig = std::max(0.0, -eig.eigenvalues().minCoeff());
  const RVector clamped = eig.eigenvalues().cwiseMax(0.0);
  return vec(hermitize(eig.eigenvectors() * clamped.asDiagonal() *
                       eig.eigenvectors().adjoint()));
}

double min_eigenvalue(const CVector& x) {
  Eigen::SelfAdjointEigenSolver<CMatrix> eig(hermitize(chi_from_vec(x)));
  return eig.eigenvalues().minCoeff();
}

}  // namespace

ChiMatrix linear_inversion_qpt(const TomographyRecord& rec, const Tolerances& tol) {
  rec.validate(tol);
  const double cond = gram_condition(rec.inputs);
  if (!(cond <= 1e12))
    throw SingularSystem("linear_inversion_qpt: input Gram condition number " +
                         std::to_string(cond));
  const QptSystem sys = QptSystem::build(rec);
  const CVector x = sys.a.colPivHouseholderQr().solve(sys.b);
  return ChiMatrix{hermitize(chi_from_vec(x))};
}

double qpt_objective(const TomographyRecord& rec, const ChiMatrix& chi) {
  double obj = 0.0;
  for (size_t k = 0; k < rec.inputs.size(); ++k) {
    const CMatrix delta = chi_apply(chi, rec.inputs[k].matrix) - rec.outputs[k];
    obj += delta.squaredNorm();
  }
  return obj;
}

double tp_constraint_defect(const ChiMatrix& chi) {
  return tp_projector().defect(vec(chi.matrix));
}

ChiMatrix cptp_project_qpt(const TomographyRecord& rec, const CptpOptions& opts,
                           const Tolerances& tol) {
  rec.validate(tol);
  const double cond = gram_condition(rec.inputs);
  if (!(cond <= 1e12))
    throw SingularSystem("cptp_project_qpt: input Gram condition number " +
                         std::to_string(cond));
  const QptSystem sys = QptSystem::build(rec);
  const CMatrix gram = sys.a.adjoint() * sys.a;
  Eigen::SelfAdjointEigenSolver<CMatrix> gram_eig(hermitize(gram));
  const double lipschitz = gram_eig.eigenvalues().maxCoeff();
  if (lipschitz <= 0) throw SingularSystem("cptp_project_qpt: degenerate system");

  const TpProjector& tp = tp_projector();
  const auto feasibility = [&](CVector& x) {
    double psd_viol = 0.0;
    for (int inner = 0; inner < 200; ++inner) {
      x = project_psd_vec(x);
      x = tp.project(x);
      psd_viol = std::max(0.0, -min_eigenvalue(x));
      if (psd_viol < opts.constraint_tol) break;
    }
    return psd_viol;
  };

  // Start from the clamped linear-inversion estimate.
  CVector x = sys.a.colPivHouseholderQr().solve(sys.b);
  double psd_viol = feasibility(x);

  double objective = (sys.a * x - sys.b).squaredNorm();
  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    const CVector residual = sys.a * x - sys.b;
    x -= (sys.a.adjoint() * residual) / lipschitz;
    psd_viol = feasibility(x);
    const double next_objective = (sys.a * x - sys.b).squaredNorm();
    // floor keeps the relative test meaningful when the fit is exact
    const double rel_change = std::abs(objective - next_objective) /
                              std::max(next_objective, 1e-15);
    objective = next_objective;
    if (psd_viol < opts.constraint_tol && rel_change < opts.objective_rel_tol)
      return ChiMatrix{hermitize(chi_from_vec(x))};
  }
  throw NoConvergence("cptp_project_qpt: iteration cap reached, objective " +
                      std::to_string(objective) + ", PSD violation " +
                      std::to_string(psd_viol));
}

}  // namespace szn
