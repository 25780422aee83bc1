#pragma once

#include "szn/types.hpp"

#include <string>
#include <vector>

namespace szn {

enum class Axis { X, Y, Z, XBar, YBar, ZBar };

Axis parse_axis(const std::string& s);
std::string axis_name(Axis a);
bool axis_barred(Axis a);
Axis axis_unbarred(Axis a);

/// Single-qubit rotation or CNOT over a 3-qubit register. Qubit 1 is the
/// most significant bit of the basis index (the ancilla sits on qubit 1).
struct Gate {
  enum class Kind { Rotation, Cnot } kind = Kind::Rotation;
  int qubit = 1;  // rotation target
  Axis axis = Axis::Z;
  double theta = 0.0;
  int control = 1, target = 2;  // CNOT

  static Gate rotation(int qubit, Axis axis, double theta);
  static Gate cnot(int control, int target);
};

/// Gates in application order: gates.front() acts first.
struct Circuit {
  int num_qubits = 3;
  std::vector<Gate> gates;

  int cnot_count() const;
  int rotation_count() const;
};

/// The two undefined notational choices in published gate lists:
/// the sign of the rotation exponent and what a barred axis means.
struct RotationConvention {
  double exponent_sign = -1.0;  // R_n(theta) = exp(sign i theta n.sigma / 2)
  bool bar_negates = true;      // barred axis = negated axis vector

  static RotationConvention by_id(int id);  // 0..3
  int id() const;
  std::string name() const;
};

CMatrix gate_matrix(const Gate& g, const RotationConvention& convention = {},
                    int num_qubits = 3);

/// Ordered product of the gate matrices (first listed gate acts first).
CMatrix circuit_unitary(const Circuit& c, const RotationConvention& convention = {});

/// 1 - |Tr(u^dag v)| / dim; zero iff u = e^{i phi} v.
double phase_distance(const CMatrix& u, const CMatrix& v);

/// One gate per line, application order:
///   R <qubit> <axis in x,y,z,x-,y-,z-> <theta_radians>
///   CNOT <control> <target>
/// '#' starts a comment.
Circuit parse_gate_list(const std::string& text);
std::string serialize_gate_list(const Circuit& c);

struct ConventionDistance {
  RotationConvention convention;
  double distance = 0.0;
};

struct VerifyReport {
  std::vector<ConventionDistance> distances;  // one per convention tried
  int best = 0;                               // index into distances

  double best_distance() const { return distances[size_t(best)].distance; }
};

/// Evaluates the circuit under each convention and reports the phase
/// distance to `target`. Diagnostic only; never asserts a pass or fail.
VerifyReport verify_gate_list(const Circuit& c, const CMatrix& target,
                              const std::vector<RotationConvention>& conventions);

std::vector<RotationConvention> all_conventions();

}  // namespace szn
