#include "qprep/representation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qprep {

double QuasiProbVector::sum() const {
  double s = 0.0;
  for (double v : values) s += v;
  return s;
}

QPRepresentation::QPRepresentation(Frame frame, DualFrame dual)
    : frame_(std::move(frame)), dual_(std::move(dual)) {
  const int n = frame_.dim;
  const int N = frame_.size();
  if (N != n * n)
    throw invariant_error("QPRepresentation: frame must be a basis (N = dim^2)");
  if (dual_.dim != n || dual_.size() != N)
    throw invariant_error("QPRepresentation: dual does not match the frame shape");
  if (!completeness(frame_).is_complete)
    throw invariant_error("QPRepresentation: frame is not informationally complete");
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      const double b = hs_inner(frame_.elements[i], dual_.elements[j]);
      if (std::abs(b - (i == j ? 1.0 : 0.0)) > 1e-8)
        throw invariant_error("QPRepresentation: frame/dual pair is not biorthogonal");
    }
}

QPRepresentation QPRepresentation::from_frame(Frame frame) {
  DualFrame dual = dual_frame(frame);
  return QPRepresentation(std::move(frame), std::move(dual));
}

QuasiProbVector t_map(const Frame& frame, const HermitianOperator& v) {
  if (v.dim() != frame.dim) throw invariant_error("t_map: operator dimension mismatch");
  QuasiProbVector out;
  out.kind = VectorKind::state_image;
  out.values.reserve(frame.size());
  for (const auto& f : frame.elements) out.values.push_back(hs_inner(v, f));
  // (TV)(Omega) = tr V holds for every V, not just states.
  const double expected = trace(v);
  if (std::abs(out.sum() - expected) > 1e-10 * std::max(1.0, std::abs(expected)))
    throw invariant_error("t_map: image total differs from tr(V) beyond tolerance");
  return out;
}

QuasiProbVector t_map(const QPRepresentation& rep, const HermitianOperator& v) {
  return t_map(rep.frame(), v);
}

QuasiProbVector s_map(const QPRepresentation& rep, const HermitianOperator& a) {
  if (a.dim() != rep.dim()) throw invariant_error("s_map: operator dimension mismatch");
  QuasiProbVector out;
  out.kind = VectorKind::effect_image;
  out.values.reserve(rep.size());
  for (const auto& d : rep.dual().elements) out.values.push_back(hs_inner(a, d));
  return out;
}

double reconstruct(const QPRepresentation& rep, const HermitianOperator& v,
                   const HermitianOperator& a) {
  const QuasiProbVector p = t_map(rep, v);
  const QuasiProbVector q = s_map(rep, a);
  double result = 0.0;
  for (int i = 0; i < p.size(); ++i) result += p.values[i] * q.values[i];
  const double direct = hs_inner(v, a);
  const double bound = 1e-9 * std::max(1.0, hs_norm(v) * hs_norm(a));
  if (std::abs(result - direct) > bound) {
    std::ostringstream os;
    os << "reconstruct: residual " << std::abs(result - direct) << " exceeds " << bound
       << " (broken dual pair)";
    throw invariant_error(os.str());
  }
  return result;
}

HermitianOperator t_adjoint(const Frame& frame, const std::vector<double>& a) {
  if (static_cast<int>(a.size()) != frame.size())
    throw invariant_error("t_adjoint: vector length does not match frame size");
  HermitianOperator out = HermitianOperator::zero(frame.dim);
  for (int i = 0; i < frame.size(); ++i) out = out + frame.elements[i] * a[i];
  return out;
}

HermitianOperator t_adjoint(const QPRepresentation& rep, const std::vector<double>& a) {
  return t_adjoint(rep.frame(), a);
}

HermitianOperator inverse_t(const QPRepresentation& rep, const std::vector<double>& p) {
  if (static_cast<int>(p.size()) != rep.size())
    throw invariant_error("inverse_t: vector length does not match frame size");
  HermitianOperator out = HermitianOperator::zero(rep.dim());
  for (int i = 0; i < rep.size(); ++i) out = out + rep.dual().elements[i] * p[i];
  return out;
}

NegativityReport negativity_report(const QPRepresentation& rep, int trials, std::uint64_t seed) {
  NegativityReport report;
  report.trials = trials;
  report.seed = seed;
  const int n = rep.dim();

  // S side: exact. (SA)_i < 0 for some effect A iff D_i has a negative
  // eigenvalue; the projector onto that eigenvector is the witness effect.
  double worst = 0.0;
  int worst_index = -1;
  for (int i = 0; i < rep.size(); ++i) {
    const double mn = min_eigenvalue(rep.dual().elements[i]);
    if (mn < worst) {
      worst = mn;
      worst_index = i;
    }
  }
  if (worst < -1e-10) {
    report.s_negative = true;
    report.s_witness = SNegativityWitness{worst_index, worst};
  }

  // T side: sampled. Deterministic probes first: frame elements normalized to
  // states where possible, and every frame-element eigenprojector (these catch
  // non-positive elements exactly).
  std::vector<HermitianOperator> probes;
  for (const auto& f : rep.frame().elements) {
    const double t = trace(f);
    if (t > 1e-10 && is_psd(f, kDefaultTol)) probes.push_back(f * (1.0 / t));
    const Spectrum s = eig(f);
    for (int j = 0; j < n; ++j) probes.push_back(projector(s.eigenvector(j)));
  }
  Rng rng(seed);
  for (int t = 0; t < trials; ++t) probes.push_back(random_state(n, n, rng).op());

  for (int pi = 0; pi < static_cast<int>(probes.size()) && !report.t_negative_found; ++pi) {
    const QuasiProbVector img = t_map(rep, probes[pi]);
    for (int e = 0; e < img.size(); ++e) {
      if (img.values[e] < -1e-10) {
        report.t_negative_found = true;
        report.t_witness = TNegativityWitness{pi, e, img.values[e]};
        break;
      }
    }
  }

  // Negativity necessity: with dim >= 2 and a positive frame, S must fail
  // positivity. Anything else means the dual pair is broken.
  if (n >= 2 && rep.frame().positive_flag && !report.s_negative)
    throw invariant_error(
        "negativity_report: positive frame with a positive dual contradicts the "
        "negativity-necessity disjunction");
  return report;
}

}  // namespace qprep
