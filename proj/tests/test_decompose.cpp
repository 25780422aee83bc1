#include "szn/decompose.hpp"

#include "szn/dilation.hpp"
#include "szn/io.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace szn;
using namespace szn::testing;

namespace {

double roundtrip(const CMatrix& u, int* cnots = nullptr, int* rots = nullptr) {
  const Circuit c = decompose_unitary(u);
  for (const Gate& g : c.gates) {
    const bool known = g.kind == Gate::Kind::Rotation || g.kind == Gate::Kind::Cnot;
    REQUIRE(known);
  }
  if (cnots) *cnots = c.cnot_count();
  if (rots) *rots = c.rotation_count();
  return phase_distance(circuit_unitary(c), u);
}

std::vector<CMatrix> all_dilations() {
  const DephasingParams p{1.4, 1.5, 2.0};
  Superoperator prop = dephasing_generator(p);
  for (int k = 0; k < 16; ++k)
    prop.matrix(k, k) = std::exp(prop.matrix(k, k) * p.t);
  const KrausSet pd = chi_to_kraus(superop_to_chi(prop));
  const KrausSet mfgp = renormalize(
      kraus_from_json(read_json_file(data_dir() / "kraus_mfgp_published.json")));
  std::vector<CMatrix> out;
  for (const CMatrix& a : pd.operators) out.push_back(dilate(a).matrix);
  for (const CMatrix& a : mfgp.operators) out.push_back(dilate(a).matrix);
  return out;
}

}  // namespace

TEST_CASE("identity compiles to nothing") {
  const Circuit c = decompose_unitary(CMatrix::Identity(8, 8));
  CHECK(c.gates.empty());
  CHECK(phase_distance(circuit_unitary(c), CMatrix::Identity(8, 8)) <= 1e-12);
}

TEST_CASE("global phase compiles to nothing") {
  const CMatrix u = std::exp(Complex(0, 1.1)) * CMatrix::Identity(8, 8);
  const Circuit c = decompose_unitary(u);
  CHECK(phase_distance(circuit_unitary(c), u) <= 1e-12);
  CHECK(c.gates.size() <= 1);
}

TEST_CASE("non-unitary input is rejected") {
  CHECK_THROWS_AS(decompose_unitary(CMatrix(2 * CMatrix::Identity(8, 8))), NotUnitary);
  CHECK_THROWS_AS(decompose_unitary(CMatrix::Identity(4, 4)), NotUnitary);
}

TEST_CASE("scalar-block dilation compiles to a short rotation sequence") {
  const CMatrix a4 = published_phase_damping_set().operators[3];
  const CMatrix u = dilate(a4).matrix;
  int cnots = 0, rots = 0;
  CHECK(roundtrip(u, &cnots, &rots) <= 1e-8);
  CHECK(cnots == 0);  // acts on the ancilla alone, as in the published list
  CHECK(rots <= 4);
}

TEST_CASE("all eight pipeline dilations rebuild exactly") {
  for (const CMatrix& u : all_dilations()) {
    int cnots = 0, rots = 0;
    CHECK(roundtrip(u, &cnots, &rots) <= 1e-8);
    CHECK(cnots <= 100);
    INFO("cnots=", cnots, " rotations=", rots);
  }
}

TEST_CASE("structured tensor products compile small") {
  std::mt19937_64 rng(7);
  const CMatrix v = random_unitary(2, rng);
  const CMatrix u = kron(v, CMatrix::Identity(4, 4));
  int cnots = 0, rots = 0;
  CHECK(roundtrip(u, &cnots, &rots) <= 1e-8);
  CHECK(cnots == 0);
  CHECK(rots <= 3);
}

TEST_CASE("CNOT itself survives the round trip") {
  for (int c = 1; c <= 3; ++c)
    for (int t = 1; t <= 3; ++t) {
      if (c == t) continue;
      const CMatrix u = gate_matrix(Gate::cnot(c, t));
      CHECK(roundtrip(u) <= 1e-8);
    }
}

TEST_CASE("100 seeded Haar-random unitaries round trip under the CNOT budget") {
  std::mt19937_64 rng(424242);
  int worst_cnots = 0;
  double worst_distance = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const CMatrix u = random_unitary(8, rng);
    int cnots = 0, rots = 0;
    const double d = roundtrip(u, &cnots, &rots);
    worst_distance = std::max(worst_distance, d);
    worst_cnots = std::max(worst_cnots, cnots);
    CHECK(d <= 1e-8);
    CHECK(cnots <= 100);
  }
  MESSAGE("worst distance ", worst_distance, ", worst CNOT count ", worst_cnots);
}

TEST_CASE("degenerate-spectrum blocks round trip") {
  // block-diagonal and block-antidiagonal unitaries exercise the sine = 0
  // and cosine = 0 corners of the cosine-sine split
  std::mt19937_64 rng(99);
  const CMatrix v = random_unitary(4, rng);
  const CMatrix w = random_unitary(4, rng);
  CMatrix u = CMatrix::Zero(8, 8);
  u.topLeftCorner(4, 4) = v;
  u.bottomRightCorner(4, 4) = w;
  CHECK(roundtrip(u) <= 1e-8);
  u.setZero();
  u.topRightCorner(4, 4) = v;
  u.bottomLeftCorner(4, 4) = w;
  CHECK(roundtrip(u) <= 1e-8);
  // mixed: half the singular values at 1, half at 0
  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = 1; m(1, 1) = 1;
  m(2, 6) = 1; m(3, 7) = 1;
  m(6, 2) = 1; m(7, 3) = 1;
  m(4, 4) = 1; m(5, 5) = 1;
  REQUIRE(unitarity_defect(m) <= 1e-12);
  CHECK(roundtrip(m) <= 1e-8);
}
