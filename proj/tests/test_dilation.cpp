#include "szn/dilation.hpp"

#include "szn/io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace szn;
using namespace szn::testing;

namespace {

CVector basis_ket(int k) {
  CVector v = CVector::Zero(4);
  v(k) = 1;
  return v;
}

KrausSet mfgp_set() {
  return kraus_from_json(read_json_file(data_dir() / "kraus_mfgp_published.json"));
}

KrausSet dephasing_set() {
  const DephasingParams p{1.4, 1.5, 2.0};
  Superoperator prop = dephasing_generator(p);
  for (int k = 0; k < 16; ++k)
    prop.matrix(k, k) = std::exp(prop.matrix(k, k) * p.t);
  return chi_to_kraus(superop_to_chi(prop));
}

const std::vector<CVector>& tomography_kets() {
  static const std::vector<CVector> kets = [] {
    const Complex i(0, 1);
    const CVector zero = (CVector(2) << 1, 0).finished();
    const CVector one = (CVector(2) << 0, 1).finished();
    const CVector plus = (zero + one) / std::sqrt(2.0);
    const CVector plus_i = (zero + i * one) / std::sqrt(2.0);
    std::vector<CVector> out;
    for (const CVector& a : {zero, one, plus, plus_i})
      for (const CVector& b : {zero, one, plus, plus_i}) {
        CVector ket(4);
        ket << a(0) * b, a(1) * b;
        out.push_back(ket);
      }
    return out;
  }();
  return kets;
}

}  // namespace

TEST_CASE("dilate block structure") {
  SUBCASE("identity") {
    const DilationUnitary u = dilate(CMatrix::Identity(4, 4));
    CMatrix expect = CMatrix::Zero(8, 8);
    expect.topLeftCorner(4, 4).setIdentity();
    expect.bottomRightCorner(4, 4) = -CMatrix::Identity(4, 4);
    CHECK(approx_equal(u.matrix, expect, 1e-12));
  }
  SUBCASE("zero operator swaps the blocks") {
    const DilationUnitary u = dilate(CMatrix::Zero(4, 4));
    CMatrix expect = CMatrix::Zero(8, 8);
    expect.topRightCorner(4, 4).setIdentity();
    expect.bottomLeftCorner(4, 4).setIdentity();
    CHECK(approx_equal(u.matrix, expect, 1e-12));
  }
  SUBCASE("printed A4 gives a scalar defect block") {
    const CMatrix a4 = published_phase_damping_set().operators[3];
    const DilationUnitary u = dilate(a4);
    CHECK(approx_equal(u.kraus_block(), a4, 1e-14));
    const CMatrix d_block = u.matrix.bottomLeftCorner(4, 4);
    CHECK(approx_equal(d_block, CMatrix(0.8495 * CMatrix::Identity(4, 4)), 1e-3));
    CHECK(unitarity_defect(u.matrix) <= 1e-10);
  }
  SUBCASE("non-contraction is rejected with the excess in the message") {
    try {
      dilate(CMatrix(1.5 * CMatrix::Identity(4, 4)));
      FAIL("expected NotContraction");
    } catch (const NotContraction& e) {
      CHECK(std::string(e.what()).find("exceeds 1 by") != std::string::npos);
    }
  }
  SUBCASE("norm within printed-precision slack is rescaled") {
    CHECK_NOTHROW(dilate(CMatrix((1.0 + 5e-10) * CMatrix::Identity(4, 4))));
  }
}

TEST_CASE("embed_state") {
  CHECK(approx_equal(embed_state(basis_ket(0)) * embed_state(basis_ket(0)).adjoint(),
                     CVector::Unit(8, 0) * CVector::Unit(8, 0).adjoint(), 0.0));
  CHECK(embed_state(basis_ket(3))(3) == Complex(1, 0));
  const CVector bell = (basis_ket(0) + basis_ket(3)) / std::sqrt(2.0);
  const CVector big = embed_state(bell);
  CHECK(big(0) == bell(0));
  CHECK(big(3) == bell(3));
  CHECK(big.tail(4).norm() == 0.0);
  CHECK_THROWS_AS(embed_state(CVector(2 * basis_ket(0))), NotNormalized);
}

TEST_CASE("simulate_kraus_via_dilation") {
  SUBCASE("identity dilation returns the projector") {
    const DilationUnitary u = dilate(CMatrix::Identity(4, 4));
    const CVector phi = tomography_kets()[10];
    const ProjectedOutcome out = simulate_kraus_via_dilation(u, phi);
    CHECK(approx_equal(out.block, CMatrix(phi * phi.adjoint()), 1e-12));
    CHECK(out.weight == doctest::Approx(1).epsilon(1e-12));
  }
  SUBCASE("printed A1 on |00>") {
    const CMatrix a1 = published_phase_damping_set().operators[0];
    const ProjectedOutcome out = simulate_kraus_via_dilation(dilate(a1), basis_ket(0));
    CHECK(out.weight == doctest::Approx(0.2231).epsilon(1e-3 / 0.2231));
    CHECK(out.block(0, 0).real() == doctest::Approx(0.4723 * 0.4723).epsilon(1e-6));
  }
  SUBCASE("printed A1 on |0+> flips the off-diagonal sign") {
    const CMatrix a1 = published_phase_damping_set().operators[0];
    const CVector phi = (basis_ket(0) + basis_ket(1)) / std::sqrt(2.0);
    const ProjectedOutcome out = simulate_kraus_via_dilation(dilate(a1), phi);
    CHECK(out.weight == doctest::Approx(0.2231).epsilon(1e-3 / 0.2231));
    // A1 = 0.4723 diag(-1, 1, 1, -1): the (0,1) coherence changes sign
    CHECK(out.block(0, 1).real() == doctest::Approx(-0.2231 / 2).epsilon(1e-2));
  }
  SUBCASE("equals the direct Kraus action exactly") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 200; ++trial) {
      const CMatrix a = random_contraction(4, rng);
      const DilationUnitary u = dilate(a);
      CHECK(unitarity_defect(u.matrix) <= 1e-10);
      for (int s = 0; s < 20; ++s) {
        const CVector phi = random_pure_state(4, rng);
        const ProjectedOutcome out = simulate_kraus_via_dilation(u, phi);
        const CMatrix direct = a * phi * phi.adjoint() * a.adjoint();
        CHECK(max_abs(out.block - direct) <= 1e-10);
      }
    }
  }
}

TEST_CASE("simulate_channel_via_dilation") {
  SUBCASE("identity channel") {
    const KrausSet k({CMatrix::Identity(4, 4)});
    std::mt19937_64 rng(55);
    const CVector phi = random_pure_state(4, rng);
    const DensityMatrix rho = pure_state(phi);
    CHECK(approx_equal(simulate_channel_via_dilation(k, rho).matrix, rho.matrix, 1e-12));
  }
  SUBCASE("printed set on |++> matches the superoperator corner value") {
    const KrausSet k = published_phase_damping_set();
    const DensityMatrix rho = pure_state(CVector(CVector::Constant(4, 0.5)));
    const DensityMatrix out =
        simulate_channel_via_dilation(k, rho, default_tol().completeness_loose);
    CHECK(out.matrix(0, 3).real() == doctest::Approx(0.000752).epsilon(0.05));
  }
  SUBCASE("maximally mixed state is a fixed point of the diagonal channel") {
    const KrausSet k = published_phase_damping_set();
    const DensityMatrix rho(CMatrix(0.25 * CMatrix::Identity(4, 4)));
    const DensityMatrix out =
        simulate_channel_via_dilation(k, rho, default_tol().completeness_loose);
    CHECK(approx_equal(out.matrix, rho.matrix, 1e-3));
  }
  SUBCASE("agrees with kraus_apply on mixed states") {
    std::mt19937_64 rng(808);
    for (int trial = 0; trial < 5; ++trial) {
      const KrausSet k = random_cptp_channel(4, rng);
      CMatrix mix = random_psd(4, rng);
      mix /= mix.trace().real();
      const DensityMatrix rho(mix);
      CHECK(max_abs(simulate_channel_via_dilation(k, rho).matrix -
                    kraus_apply(k, rho).matrix) <= 1e-10);
    }
  }
  SUBCASE("incomplete set is rejected") {
    const KrausSet k({0.5 * CMatrix::Identity(4, 4)});
    const DensityMatrix rho(CMatrix(0.25 * CMatrix::Identity(4, 4)));
    CHECK_THROWS_AS(simulate_channel_via_dilation(k, rho), IncompleteSet);
  }
}

TEST_CASE("channel equivalence across the tomography basis") {
  SUBCASE("derived dephasing set at 1e-8") {
    const KrausSet k = dephasing_set();
    for (const CVector& ket : tomography_kets()) {
      const DensityMatrix rho = pure_state(ket);
      CHECK(max_abs(simulate_channel_via_dilation(k, rho).matrix -
                    kraus_apply(k, rho).matrix) <= 1e-8);
    }
  }
  SUBCASE("renormalized gradient-pulse set at 1e-3") {
    const KrausSet k = renormalize(mfgp_set());
    for (const CVector& ket : tomography_kets()) {
      const DensityMatrix rho = pure_state(ket);
      CHECK(max_abs(simulate_channel_via_dilation(k, rho).matrix -
                    kraus_apply(k, rho).matrix) <= 1e-3);
    }
  }
}

TEST_CASE("projected weights sum to 1 for complete sets on pure inputs") {
  const KrausSet k = dephasing_set();
  for (const CVector& ket : tomography_kets()) {
    double total = 0;
    for (const CMatrix& a : k.operators)
      total += simulate_kraus_via_dilation(dilate(a), ket).weight;
    CHECK(total == doctest::Approx(1).epsilon(1e-8));
  }
}
