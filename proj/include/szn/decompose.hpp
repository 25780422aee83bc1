#pragma once

#include "szn/gates.hpp"

namespace szn {

/// Compile an 8x8 unitary into CNOTs and single-qubit y/z rotations.
///
/// The unitary is reduced column-block by column-block: a cosine-sine split
/// peels the most significant qubit into two multiplexed 4x4 unitaries and a
/// multiplexed R_y; each multiplexed pair is demultiplexed through the Schur
/// form of A B^dag into plain unitaries and a multiplexed R_z; multiplexed
/// rotations expand into the standard Gray-code CNOT network. Recursing on
/// the 4x4 factors bottoms out in ZYZ rotations. The result reproduces the
/// input up to global phase; a peephole pass merges rotations and cancels
/// CNOT pairs so structured inputs compile small.
Circuit decompose_unitary(const CMatrix& u, const Tolerances& tol = default_tol());

}  // namespace szn
