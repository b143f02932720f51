#pragma once

#include <vector>

#include "cpmec/cpm.hpp"

namespace cpmec {

struct DistanceResult {
  double dmin_sq = 0.0;
  int kmin = 0;
  int search_depth = 0;
  // Minimum-distance difference sequences, negated twins included, so that
  // kmin == achieving_sequences.size().
  std::vector<std::vector<int>> achieving_sequences;
};

// Normalized squared Euclidean distance of one difference sequence observed
// over horizon_symbols intervals:
//   d^2 = (log2 M / T) * integral_0^{H*T} [1 - cos dphi(t)] dt,
//   dphi(t) = 2*pi*h * sum_i deltas[i] * q(t - iT).
// Composite Simpson quadrature, 64 panels per symbol; dphi is smooth inside
// each symbol interval so panel edges absorb the only kinks.
// Deltas must be even with |delta| <= 2(M-1) and a nonzero first element;
// horizon_symbols must cover the sequence.
double phase_difference_integral(const CpmScheme& scheme,
                                 const std::vector<int>& deltas,
                                 int horizon_symbols);

// Bounded depth-first enumeration of difference sequences with
// branch-and-bound pruning (prefixes whose partial distance exceeds the
// incumbent best + prune_margin are abandoned). A sequence closes when its
// phase difference is permanently zero:
//   - saturated merge: all pulses saturated and the residual phase state is
//     zero (exact rational test when h = p/q, 1e-9 modular tolerance else);
//   - sustained zero: the phase difference becomes identically zero while
//     pulses are still active and the trailing state can keep it zero forever
//     (detected against the greatest fixed point of the zero-transition
//     graph; rational h only). Partial-response schemes with weak indices,
//     h = 3/4 among them, attain their minima on such events.
// kmin counts closing sequences within relative tolerance 1e-6 of the
// minimum; negated twins are counted via symmetry. Deterministic: deltas are
// enumerated in ascending order. Throws std::runtime_error when nothing
// closes within max_depth.
DistanceResult dmin_search(const CpmScheme& scheme, int max_depth,
                           double prune_margin = 1e-4);

// Reference d^2min values for h = 3/4, N = 3 (BT = 0.3 for GMSK),
// M in {2, 4, 8, 16}. Pure lookup; rejects cells outside the table.
double dmin_sq_reference(PulseKind pulse, int m_ary);

// Depth defaults keeping the (2M-1)-ary enumeration desk-scale.
int default_search_depth(int m_ary);

}  // namespace cpmec
