#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "qprep/frames.hpp"
#include "qprep/operator_core.hpp"

namespace qprep {

enum class VectorKind { state_image, effect_image };

/// Length-N real vector: the image of an operator under T (state side) or
/// S (effect side). Entries may be negative; that is the point.
struct QuasiProbVector {
  std::vector<double> values;
  VectorKind kind = VectorKind::state_image;

  int size() const { return static_cast<int>(values.size()); }
  double sum() const;
};

/// A frame paired with its dual: the bijective finite-dimensional
/// quasi-probability representation (requires a complete frame with
/// N = dim^2 elements).
class QPRepresentation {
 public:
  QPRepresentation(Frame frame, DualFrame dual);
  static QPRepresentation from_frame(Frame frame);

  const Frame& frame() const { return frame_; }
  const DualFrame& dual() const { return dual_; }
  int dim() const { return frame_.dim; }
  int size() const { return frame_.size(); }

 private:
  Frame frame_;
  DualFrame dual_;
};

/// T: values_i = tr(V F_i). The frame overload serves the general
/// frame-representation case that has no dual.
QuasiProbVector t_map(const Frame& frame, const HermitianOperator& v);
QuasiProbVector t_map(const QPRepresentation& rep, const HermitianOperator& v);

/// S: values_i = tr(A D_i); S(I) is the all-ones vector.
QuasiProbVector s_map(const QPRepresentation& rep, const HermitianOperator& a);

/// <T V, S A> = tr(VA); throws when the residual exceeds
/// 1e-9 * max(1, ||V|| ||A||), which signals a broken dual pair.
double reconstruct(const QPRepresentation& rep, const HermitianOperator& v,
                   const HermitianOperator& a);

/// T': sum_i a_i F_i; indicator vectors reproduce sub_frame_sum.
HermitianOperator t_adjoint(const Frame& frame, const std::vector<double>& a);
HermitianOperator t_adjoint(const QPRepresentation& rep, const std::vector<double>& a);

/// T^-1 via the dual expansion: sum_i p_i D_i.
HermitianOperator inverse_t(const QPRepresentation& rep, const std::vector<double>& p);

struct SNegativityWitness {
  int dual_index = -1;
  double min_eigenvalue = 0.0;
};

struct TNegativityWitness {
  /// Probe 0..k-1 are deterministic (frame-element states and eigenprojectors),
  /// the rest are seeded random states.
  int probe_index = -1;
  int entry = -1;
  double value = 0.0;
};

/// Certificate that the representation is not doubly positive.
/// S-side negativity is exact (spectral, on the dual elements); T-side
/// negativity is only sampled, so absence of a witness means "not found",
/// never "false".
struct NegativityReport {
  bool s_negative = false;
  std::optional<SNegativityWitness> s_witness;
  bool t_negative_found = false;
  std::optional<TNegativityWitness> t_witness;
  int trials = 0;
  std::uint64_t seed = 0;

  bool t_nonpositive() const { return t_negative_found; }
  bool s_nonpositive() const { return s_negative; }
};

/// Probes T over `trials` random states plus the deterministic probe set, and
/// certifies S spectrally. For dim >= 2 with a positive frame, s_negative is
/// asserted true (the negativity-necessity disjunction); a violation throws.
NegativityReport negativity_report(const QPRepresentation& rep, int trials, std::uint64_t seed);

}  // namespace qprep
