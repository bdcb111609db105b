#pragma once

#include <cstdint>
#include <vector>

#include "qprep/operator_core.hpp"

namespace qprep {

/// A finite normalized operator-valued measure: Hermitian elements F_1..F_N
/// with sum(F_i) = I. When every element is PSD the frame is a discrete
/// observable (POVM) and positive_flag is set.
struct Frame {
  int dim = 0;
  std::vector<HermitianOperator> elements;
  bool positive_flag = false;

  int size() const { return static_cast<int>(elements.size()); }
};

/// The family biorthogonal to a frame under the Hilbert-Schmidt inner product.
struct DualFrame {
  int dim = 0;
  std::vector<HermitianOperator> elements;

  int size() const { return static_cast<int>(elements.size()); }
};

struct CompletenessReport {
  int gram_rank = 0;
  bool is_complete = false;
  double min_singular_value = 0.0;
  /// Set when some singular value falls within a factor 10 of the rank cutoff,
  /// i.e. the rank decision is numerically marginal.
  bool borderline = false;
};

/// Validates normalization (sum = I within tol * dim elementwise residual) and
/// computes positive_flag. Throws invariant_error reporting the residual norm
/// when the sum differs from the identity.
Frame frame_validate(std::vector<HermitianOperator> elements, double tol = kDefaultTol);

/// Rank of the N x N Gram matrix [tr(F_i F_j)] with a relative singular-value
/// cutoff of 1e-10; complete iff the rank equals dim^2.
CompletenessReport completeness(const Frame& frame);

/// Dual basis D_j = sum_i (Gram^-1)_{ji} F_i for a complete frame with
/// N = dim^2 elements. Unique in this situation; overcomplete frames are
/// rejected. Verifies biorthogonality and unit traces to 1e-8.
DualFrame dual_frame(const Frame& frame);

/// N = dim^2 linearly independent PSD operators summing to I, built by
/// conjugating random pure states with the inverse square root of their sum.
Frame random_positive_basis(int dim, std::uint64_t seed);

/// Telescoping POVM from a finite effect list: the first element is
/// I - sum_k 2^-k E_k and element k+1 is 2^-k E_k. All outputs are PSD and
/// sum to I; the result spans span{E_1..E_m, I}.
Frame theorem1_povm(const std::vector<Effect>& spanning_effects);

/// Sum of the elements selected by `subset` (0-based indices).
HermitianOperator sub_frame_sum(const Frame& frame, const std::vector<int>& subset);

/// The qubit tetrahedral POVM F_i = (I + n_i . sigma / sqrt(3)) / 4 over the
/// four alternating-sign unit vectors n_i.
Frame tetrahedral_frame();

/// Projective qubit frame {P_phi, P_psi} for an orthonormal pair.
Frame projective_frame(const std::vector<cplx>& phi, const std::vector<cplx>& psi);

}  // namespace qprep
