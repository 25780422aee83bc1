#include "szn/gates.hpp"

#include "szn/io.hpp"
#include "szn/tensor.hpp"
#include "support.hpp"

#include <doctest.h>

using namespace szn;
using namespace szn::testing;

namespace {

CVector basis8(int k) {
  CVector v = CVector::Zero(8);
  v(k) = 1;
  return v;
}

}  // namespace

TEST_CASE("gate_matrix rotations") {
  SUBCASE("zero angle is the identity") {
    const CMatrix u = gate_matrix(Gate::rotation(1, Axis::Z, 0.0));
    CHECK(approx_equal(u, CMatrix::Identity(8, 8), 1e-15));
  }
  SUBCASE("pi rotation about y flips qubit 1 up to phase") {
    const CMatrix u = gate_matrix(Gate::rotation(1, Axis::Y, M_PI));
    for (int xy = 0; xy < 4; ++xy) {
      const CVector out = u * basis8(xy);
      CHECK(std::abs(out(4 + xy)) == doctest::Approx(1).epsilon(1e-12));
    }
  }
  SUBCASE("embedding respects qubit position") {
    const double theta = 0.731;
    const CMatrix r = gate_matrix(Gate::rotation(2, Axis::X, theta));
    const Complex i(0, 1);
    const CMatrix rx = std::cos(theta / 2) * CMatrix::Identity(2, 2) -
                       i * std::sin(theta / 2) * pauli1()[1];
    CHECK(approx_equal(r, kron(kron(CMatrix::Identity(2, 2), rx),
                               CMatrix::Identity(2, 2)), 1e-14));
  }
  SUBCASE("barred axis negates the rotation under the default convention") {
    const double theta = 1.234;
    const CMatrix bar = gate_matrix(Gate::rotation(3, Axis::YBar, theta));
    const CMatrix neg = gate_matrix(Gate::rotation(3, Axis::Y, -theta));
    CHECK(approx_equal(bar, neg, 1e-14));
  }
  SUBCASE("all gate matrices are unitary") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> angle(-6.3, 6.3);
    for (int q = 1; q <= 3; ++q)
      for (Axis a : {Axis::X, Axis::Y, Axis::Z, Axis::XBar, Axis::YBar, Axis::ZBar})
        CHECK(unitarity_defect(gate_matrix(Gate::rotation(q, a, angle(rng)))) <= 1e-12);
    for (int c = 1; c <= 3; ++c)
      for (int t = 1; t <= 3; ++t)
        if (c != t) CHECK(unitarity_defect(gate_matrix(Gate::cnot(c, t))) <= 1e-12);
  }
}

TEST_CASE("gate_matrix CNOT permutation") {
  const CMatrix u = gate_matrix(Gate::cnot(3, 1));
  // |001>: qubit 3 set, so qubit 1 flips -> |101>
  CHECK(approx_equal(u * basis8(1), basis8(5), 0.0));
  // |000> untouched
  CHECK(approx_equal(u * basis8(0), basis8(0), 0.0));
  CHECK_THROWS_AS(Gate::cnot(2, 2), InvalidState);
  CHECK_THROWS_AS(gate_matrix(Gate::cnot(1, 4)), InvalidState);
}

TEST_CASE("circuit_unitary ordering") {
  SUBCASE("empty circuit") {
    CHECK(approx_equal(circuit_unitary(Circuit{}), CMatrix::Identity(8, 8), 0.0));
  }
  SUBCASE("CNOT involution") {
    Circuit c;
    c.gates = {Gate::cnot(3, 1), Gate::cnot(3, 1)};
    CHECK(approx_equal(circuit_unitary(c), CMatrix::Identity(8, 8), 0.0));
  }
  SUBCASE("two controlled flips of qubit 1 cancel on |111>") {
    Circuit c;  // CNOT31 . CNOT21 in application order: CNOT21 first
    c.gates = {Gate::cnot(2, 1), Gate::cnot(3, 1)};
    CHECK(approx_equal(circuit_unitary(c) * basis8(7), basis8(7), 0.0));
    // and |011> -> qubit1 flipped twice as well
    CHECK(approx_equal(circuit_unitary(c) * basis8(3), basis8(3), 0.0));
  }
  SUBCASE("first listed gate acts first") {
    Circuit c;
    c.gates = {Gate::rotation(1, Axis::Y, M_PI), Gate::cnot(1, 3)};
    const CMatrix expect =
        gate_matrix(Gate::cnot(1, 3)) * gate_matrix(Gate::rotation(1, Axis::Y, M_PI));
    CHECK(approx_equal(circuit_unitary(c), expect, 1e-14));
  }
}

TEST_CASE("phase_distance") {
  std::mt19937_64 rng(17);
  const CMatrix u = random_unitary(8, rng);
  CHECK(phase_distance(u, u) == doctest::Approx(0).epsilon(1e-14));
  const Complex phase = std::exp(Complex(0, M_PI / 3));
  CHECK(phase_distance(u, CMatrix(phase * u)) <= 1e-12);
  CMatrix flipped = CMatrix::Identity(8, 8);
  flipped(7, 7) = -1;
  CHECK(phase_distance(CMatrix::Identity(8, 8), flipped) ==
        doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("parse_gate_list") {
  SUBCASE("basic grammar") {
    const Circuit c = parse_gate_list("R 1 y- 1.5708\nCNOT 3 1\n");
    REQUIRE(c.gates.size() == 2);
    CHECK(c.gates[0].kind == Gate::Kind::Rotation);
    CHECK(c.gates[0].qubit == 1);
    CHECK(c.gates[0].axis == Axis::YBar);
    CHECK(c.gates[0].theta == doctest::Approx(M_PI / 2).epsilon(1e-4));
    CHECK(c.gates[1].kind == Gate::Kind::Cnot);
    CHECK(c.gates[1].control == 3);
    CHECK(c.gates[1].target == 1);
  }
  SUBCASE("comments and blank lines") {
    const Circuit c = parse_gate_list("# header\n\nR 2 x 0.5 # trailing\n");
    REQUIRE(c.gates.size() == 1);
    CHECK(c.gates[0].axis == Axis::X);
  }
  SUBCASE("errors carry line and column") {
    try {
      parse_gate_list("R 1 y- 1.0\nR 1 q 2.0\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      const std::string msg = e.what();
      CHECK(msg.find("line 2") != std::string::npos);
      CHECK(msg.find("column") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_gate_list("CNOT 1\n"), ParseError);
    CHECK_THROWS_AS(parse_gate_list("H 1\n"), ParseError);
    CHECK_THROWS_AS(parse_gate_list("R 1 y 0.5 junk\n"), ParseError);
    CHECK_THROWS_AS(parse_gate_list("CNOT 2 2\n"), ParseError);
  }
  SUBCASE("published 27-gate list parses with the expected counts") {
    const Circuit c =
        parse_gate_list(read_text_file(data_dir() / "gates_mfgp_u1.txt"));
    CHECK(c.gates.size() == 27);
    CHECK(c.cnot_count() == 9);
    CHECK(c.rotation_count() == 18);
    CHECK(c.gates[0].qubit == 3);                      // leading Rz on qubit 3
    CHECK(c.gates[0].theta == doctest::Approx(1.5708));
    CHECK(c.gates[26].theta == doctest::Approx(2.9373));
  }
}

TEST_CASE("serialization round trips") {
  SUBCASE("serialize then parse is the identity") {
    Circuit c;
    c.gates = {Gate::rotation(1, Axis::ZBar, 1.234567), Gate::cnot(2, 1),
               Gate::rotation(3, Axis::X, -0.5)};
    const std::string text = serialize_gate_list(c);
    const Circuit back = parse_gate_list(text);
    REQUIRE(back.gates.size() == c.gates.size());
    CHECK(serialize_gate_list(back) == text);  // bit-exact at printed precision
  }
  SUBCASE("parse then serialize preserves canonical text") {
    const std::string text = "R 1 y- 0.587000\nCNOT 3 2\nR 2 z 4.712389\n";
    CHECK(serialize_gate_list(parse_gate_list(text)) == text);
  }
}

TEST_CASE("rotation conventions") {
  CHECK(all_conventions().size() == 4);
  for (int id = 0; id < 4; ++id)
    CHECK(RotationConvention::by_id(id).id() == id);
  // the four conventions give distinct matrices on a barred rotation
  const Gate g = Gate::rotation(1, Axis::XBar, 0.7);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b) {
      const CMatrix ua = gate_matrix(g, RotationConvention::by_id(a));
      const CMatrix ub = gate_matrix(g, RotationConvention::by_id(b));
      // ids 0/3 and 1/2 coincide on barred axes; all others differ
      const bool same_pair = (a == 0 && b == 3) || (a == 1 && b == 2);
      CHECK((max_abs(ua - ub) < 1e-14) == same_pair);
    }
}

TEST_CASE("verify_gate_list reports per-convention distances") {
  Circuit c;
  c.gates = {Gate::rotation(1, Axis::YBar, 0.9), Gate::cnot(2, 1)};
  const CMatrix target = circuit_unitary(c);  // native convention
  const VerifyReport rep = verify_gate_list(c, target, all_conventions());
  REQUIRE(rep.distances.size() == 4);
  CHECK(rep.distances[size_t(rep.best)].convention.id() == 0);
  CHECK(rep.best_distance() <= 1e-12);
  bool any_far = false;
  for (const ConventionDistance& d : rep.distances)
    if (d.distance > 1e-3) any_far = true;
  CHECK(any_far);  // sweeping conventions actually discriminates
}
