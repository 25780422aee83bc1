#include "szn/gates.hpp"

#include "szn/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace szn {

Axis parse_axis(const std::string& s) {
  if (s == "x") return Axis::X;
  if (s == "y") return Axis::Y;
  if (s == "z") return Axis::Z;
  if (s == "x-") return Axis::XBar;
  if (s == "y-") return Axis::YBar;
  if (s == "z-") return Axis::ZBar;
  throw ParseError("unknown axis '" + s + "'");
}

std::string axis_name(Axis a) {
  switch (a) {
    case Axis::X: return "x";
    case Axis::Y: return "y";
    case Axis::Z: return "z";
    case Axis::XBar: return "x-";
    case Axis::YBar: return "y-";
    case Axis::ZBar: return "z-";
  }
  return "?";
}

bool axis_barred(Axis a) {
  return a == Axis::XBar || a == Axis::YBar || a == Axis::ZBar;
}

Axis axis_unbarred(Axis a) {
  switch (a) {
    case Axis::XBar: return Axis::X;
    case Axis::YBar: return Axis::Y;
    case Axis::ZBar: return Axis::Z;
    default: return a;
  }
}

Gate Gate::rotation(int qubit, Axis axis, double theta) {
  if (!std::isfinite(theta)) throw InvalidState("rotation angle must be finite");
  Gate g;
  g.kind = Kind::Rotation;
  g.qubit = qubit;
  g.axis = axis;
  g.theta = theta;
  return g;
}

Gate Gate::cnot(int control, int target) {
  if (control == target) throw InvalidState("CNOT control == target");
  Gate g;
  g.kind = Kind::Cnot;
  g.control = control;
  g.target = target;
  return g;
}

int Circuit::cnot_count() const {
  int n = 0;
  for (const Gate& g : gates) n += (g.kind == Gate::Kind::Cnot);
  return n;
}

int Circuit::rotation_count() const {
  return static_cast<int>(gates.size()) - cnot_count();
}

RotationConvention RotationConvention::by_id(int id) {
  RotationConvention c;
  c.exponent_sign = (id & 2) ? +1.0 : -1.0;
  c.bar_negates = !(id & 1);
  return c;
}

int RotationConvention::id() const {
  return (exponent_sign > 0 ? 2 : 0) | (bar_negates ? 0 : 1);
}

std::string RotationConvention::name() const {
  std::string s = exponent_sign > 0 ? "exp(+i t/2)" : "exp(-i t/2)";
  s += bar_negates ? ", bar negates axis" : ", bar ignored";
  return s;
}

std::vector<RotationConvention> all_conventions() {
  std::vector<RotationConvention> v;
  for (int id = 0; id < 4; ++id) v.push_back(RotationConvention::by_id(id));
  return v;
}

namespace {

CMatrix rotation2(Axis axis, double theta, const RotationConvention& c) {
  double sign = c.exponent_sign;
  Axis base = axis;
  if (axis_barred(axis)) {
    base = axis_unbarred(axis);
    if (c.bar_negates) sign = -sign;
  }
  const CMatrix* sigma = nullptr;
  switch (base) {
    case Axis::X: sigma = &pauli1()[1]; break;
    case Axis::Y: sigma = &pauli1()[2]; break;
    default: sigma = &pauli1()[3]; break;
  }
  const Complex i(0.0, 1.0);
  return std::cos(theta / 2) * CMatrix::Identity(2, 2) +
         sign * i * std::sin(theta / 2) * (*sigma);
}

void check_qubit(int q, int n) {
  if (q < 1 || q > n)
    throw InvalidState("qubit index " + std::to_string(q) + " out of range");
}

}  // namespace

CMatrix gate_matrix(const Gate& g, const RotationConvention& convention, int num_qubits) {
  const Eigen::Index dim = Eigen::Index(1) << num_qubits;
  if (g.kind == Gate::Kind::Rotation) {
    check_qubit(g.qubit, num_qubits);
    CMatrix u = CMatrix::Identity(1, 1);
    for (int q = 1; q <= num_qubits; ++q)
      u = kron(u, q == g.qubit ? rotation2(g.axis, g.theta, convention)
                               : CMatrix::Identity(2, 2));
    return u;
  }
  check_qubit(g.control, num_qubits);
  check_qubit(g.target, num_qubits);
  if (g.control == g.target) throw InvalidState("CNOT control == target");
  CMatrix u = CMatrix::Zero(dim, dim);
  const int cbit = num_qubits - g.control;  // qubit 1 = most significant bit
  const int tbit = num_qubits - g.target;
  for (Eigen::Index b = 0; b < dim; ++b) {
    Eigen::Index out = b;
    if ((b >> cbit) & 1) out = b ^ (Eigen::Index(1) << tbit);
    u(out, b) = 1.0;
  }
  return u;
}

CMatrix circuit_unitary(const Circuit& c, const RotationConvention& convention) {
  const Eigen::Index dim = Eigen::Index(1) << c.num_qubits;
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const Gate& g : c.gates) u = gate_matrix(g, convention, c.num_qubits) * u;
  return u;
}

double phase_distance(const CMatrix& u, const CMatrix& v) {
  if (u.rows() != v.rows() || u.cols() != v.cols())
    throw InvalidState("phase_distance: dimension mismatch");
  return std::max(0.0, 1.0 - std::abs((u.adjoint() * v).trace()) / double(u.rows()));
}

Circuit parse_gate_list(const std::string& text) {
  Circuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;  // blank
    const auto fail = [&](const std::string& what, const std::string& tok) -> ParseError {
      const size_t col = tok.empty() ? line.size() : line.find(tok) + 1;
      return ParseError("line " + std::to_string(lineno) + ", column " +
                        std::to_string(col) + ": " + what);
    };
    if (word == "R") {
      int qubit;
      std::string axis_tok;
      double theta;
      if (!(ls >> qubit >> axis_tok >> theta))
        throw fail("expected 'R <qubit> <axis> <theta>'", word);
      Axis axis;
      try {
        axis = parse_axis(axis_tok);
      } catch (const Error& e) {
        throw fail(e.what(), axis_tok);
      }
      try {
        c.gates.push_back(Gate::rotation(qubit, axis, theta));
      } catch (const Error& e) {
        throw fail(e.what(), word);
      }
    } else if (word == "CNOT") {
      int control, target;
      if (!(ls >> control >> target))
        throw fail("expected 'CNOT <control> <target>'", word);
      try {
        c.gates.push_back(Gate::cnot(control, target));
      } catch (const Error& e) {
        throw fail(e.what(), word);
      }
    } else {
      throw fail("unknown gate '" + word + "'", word);
    }
    std::string extra;
    if (ls >> extra) throw fail("trailing token '" + extra + "'", extra);
  }
  return c;
}

std::string serialize_gate_list(const Circuit& c) {
  std::string out;
  char buf[64];
  for (const Gate& g : c.gates) {
    if (g.kind == Gate::Kind::Rotation) {
      std::snprintf(buf, sizeof buf, "R %d %s %.6f\n", g.qubit,
                    axis_name(g.axis).c_str(), g.theta);
    } else {
      std::snprintf(buf, sizeof buf, "CNOT %d %d\n", g.control, g.target);
    }
    out += buf;
  }
  return out;
}

VerifyReport verify_gate_list(const Circuit& c, const CMatrix& target,
                              const std::vector<RotationConvention>& conventions) {
  VerifyReport report;
  for (const RotationConvention& conv : conventions) {
    const double d = phase_distance(circuit_unitary(c, conv), target);
    report.distances.push_back({conv, d});
  }
  for (size_t i = 1; i < report.distances.size(); ++i)
    if (report.distances[i].distance < report.distances[size_t(report.best)].distance)
      report.best = static_cast<int>(i);
  return report;
}

}  // namespace szn
