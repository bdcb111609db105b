#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace qprep {

using cplx = std::complex<double>;

/// Default absolute tolerance; boundary tests scale it by max(1, ||A||_HS).
inline constexpr double kDefaultTol = 1e-10;
/// Maximum per-entry asymmetry accepted before Hermitian symmetrization.
inline constexpr double kHermitianIngestTol = 1e-12;

/// Domain-invariant violation (CLI exit code 2).
class invariant_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or unreadable input (CLI exit code 1).
class io_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An n-by-n complex Hermitian matrix, immutable after construction.
///
/// Construction symmetrizes (A + A*)/2 when the per-entry asymmetry is at
/// most 1e-12 and rejects the input otherwise, so file-format rounding is
/// tolerated without masking genuinely non-Hermitian data.
class HermitianOperator {
 public:
  HermitianOperator(int dim, std::vector<cplx> entries);

  static HermitianOperator zero(int dim);
  static HermitianOperator identity(int dim);
  /// Builds a diagonal matrix from real values.
  static HermitianOperator diagonal(const std::vector<double>& values);

  int dim() const { return dim_; }
  cplx operator()(int r, int c) const { return entries_[static_cast<size_t>(r) * dim_ + c]; }
  const std::vector<cplx>& entries() const { return entries_; }

  HermitianOperator operator+(const HermitianOperator& other) const;
  HermitianOperator operator-(const HermitianOperator& other) const;
  HermitianOperator operator*(double scale) const;
  HermitianOperator operator-() const { return *this * -1.0; }

 private:
  HermitianOperator() = default;
  int dim_ = 0;
  std::vector<cplx> entries_;
  friend HermitianOperator hermitian_unchecked(int, std::vector<cplx>);
};

inline HermitianOperator operator*(double scale, const HermitianOperator& a) { return a * scale; }

/// Internal fast path used where Hermiticity holds by construction.
HermitianOperator hermitian_unchecked(int dim, std::vector<cplx> entries);

double trace(const HermitianOperator& a);
double hs_norm(const HermitianOperator& a);
/// Hilbert-Schmidt inner product tr(AB); symmetric and real for Hermitian inputs.
double hs_inner(const HermitianOperator& a, const HermitianOperator& b);

/// Eigendecomposition A = U diag(lambda) U* with eigenvalues in descending order.
struct Spectrum {
  int dim = 0;
  std::vector<double> eigenvalues;   // descending
  std::vector<cplx> eigenvectors;    // row-major; column j is the j-th eigenvector

  cplx vector_entry(int r, int j) const { return eigenvectors[static_cast<size_t>(r) * dim + j]; }
  std::vector<cplx> eigenvector(int j) const;
};

/// Cyclic complex Jacobi eigensolver with a fixed sweep order, so results are
/// deterministic for a fixed input. Throws invariant_error when the off-diagonal
/// mass has not converged after `max_sweeps` sweeps.
Spectrum eig(const HermitianOperator& a, int max_sweeps = 100);

double min_eigenvalue(const HermitianOperator& a);
double max_eigenvalue(const HermitianOperator& a);

/// U diag(f(lambda)) U* for the spectral decomposition of `a`.
HermitianOperator spectral_transform(const HermitianOperator& a,
                                     const std::function<double(double)>& f);
/// Clips negative eigenvalues to zero (nearest PSD matrix in HS norm).
HermitianOperator psd_part(const HermitianOperator& a);
/// Clamps the spectrum into [lo, hi].
HermitianOperator clip_spectrum(const HermitianOperator& a, double lo, double hi);

/// True iff the minimum eigenvalue is >= -tol.
bool is_psd(const HermitianOperator& a, double tol = kDefaultTol);
/// True iff -tol*I <= A <= (1+tol)*I in the PSD order.
bool in_effect_interval(const HermitianOperator& a, double tol = kDefaultTol);

/// U A U* for a row-major dim x dim unitary U.
HermitianOperator unitary_conjugate(const HermitianOperator& a, const std::vector<cplx>& u);
/// ||FG - GF||_HS.
double commutator_hs_norm(const HermitianOperator& f, const HermitianOperator& g);
/// Rank-one projector |v><v| from a unit vector (checked to 1e-10).
HermitianOperator projector(const std::vector<cplx>& v);

/// A positive trace-one operator.
class State {
 public:
  explicit State(HermitianOperator op, double tol = kDefaultTol);
  const HermitianOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

/// An operator in the order-unit interval [0, I].
class Effect {
 public:
  explicit Effect(HermitianOperator op, double tol = kDefaultTol);
  const HermitianOperator& op() const { return op_; }
  int dim() const { return op_.dim(); }

 private:
  HermitianOperator op_;
};

/// Deterministic stream: mt19937_64 plus explicit Box-Muller, so identical
/// seeds give identical draws on every platform (the engine's output sequence
/// is fixed by the standard; distributions are hand-rolled because theirs is not).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();        // [0, 1)
  double gaussian();       // N(0, 1)
  cplx gaussian_cplx();    // independent N(0,1) real and imaginary parts

 private:
  std::mt19937_64 engine_;
};

HermitianOperator random_hermitian(int dim, Rng& rng);
std::vector<cplx> random_unit_vector(int dim, Rng& rng);

/// Normalized G G* with G an dim-by-rank complex Gaussian matrix; rank = dim
/// draws are rejected until the smallest eigenvalue clears 1e-12.
State random_state(int dim, int rank, std::uint64_t seed);
State random_state(int dim, int rank, Rng& rng);

/// Random Hermitian matrix with its spectrum clamped into [0, 1].
Effect random_effect(int dim, std::uint64_t seed);
Effect random_effect(int dim, Rng& rng);

}  // namespace qprep
