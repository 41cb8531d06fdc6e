#pragma once

// (In)equivalence of the four reality structures.
//
// All four structures are compared on one integer-labelled window. In those
// coordinates the structure (eps1, eps2) acts as
//   J e_{a,b,+-} = +- exp(+-i(phi mu + psi nu)) e^{i theta} lambda^{-mu nu}
//                  e_{-a+2eps1, -b+2eps2, -+},
// with mu = a - eps1, nu = b - eps2 (eps in {0, 1/2}; 2eps in {0, 1}).
// A candidate intertwiner commuting with the representation and the grading
// is determined by coefficients w(k, l); each shift (k, l) supports nonzero
// coefficients only when the phase ratio
//   r(n, m) = j_target(n, m) lambda^{2mk} / j_source(n+k, m+l)
// is independent of the sample point (n, m).

#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include "nctorus/lattice.hpp"
#include "nctorus/opalg.hpp"
#include "nctorus/triple.hpp"

namespace nctorus {

struct RelabeledStructure {
  SpinStructure spin;
  RealStructureParams params;
};

namespace detail {
inline int offset_shift(HalfOffset e) { return e == HalfOffset::half ? 1 : 0; }

/// j_{iota,+-}(a, b) in integer coordinates; sign s carries the chirality.
inline Complex relabeled_j(const RelabeledStructure& st, PhaseAngle lambda, int a, int b,
                           Chirality s) {
  const double mu = a - offset_value(st.spin.eps_mu);
  const double nu = b - offset_value(st.spin.eps_nu);
  const double block = (s == Chirality::plus) ? 1.0 : -1.0;
  const Complex phase =
      std::polar(1.0, block * (st.params.phi * mu + st.params.psi * nu) + st.params.theta_glob);
  const Complex val = phase * lambda.pow(-mu * nu);
  return (s == Chirality::plus) ? val : -val;
}

inline std::pair<int, int> relabeled_reflection(const SpinStructure& spin, int a, int b) {
  return {-a + offset_shift(spin.eps_mu), -b + offset_shift(spin.eps_nu)};
}
}  // namespace detail

/// The relabeled reality structure as a matrix on an integer window
/// (zero column where the reflected site leaves the window).
inline AntilinearOp build_relabeled_structure(const BasisIndexMap& map, PhaseAngle lambda,
                                              const RelabeledStructure& st) {
  Matrix out = Matrix::Zero(map.dim(), map.dim());
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    const auto [ra, rb] = detail::relabeled_reflection(st.spin, x.m, x.n);
    if (!map.in_window(ra, rb)) continue;
    out(map.index_of({ra, rb, flip(x.s)}), col) = detail::relabeled_j(st, lambda, x.m, x.n, x.s);
  }
  return AntilinearOp(std::move(out));
}

struct IntertwinerProblem {
  RelabeledStructure source;
  RelabeledStructure target;
  PhaseAngle lambda{generic_lambda_turns()};
  int shift_window = 3;     // K: scan (k, l) in [-K, K]^2
  int sample_halfwidth = 3; // sample (n, m) in [-S, S]^2
};

struct ShiftCandidate {
  int k = 0, l = 0;
  double deviation = 0.0;  // max |r(n,m) - r(0,0)| over the sample, both blocks
  Complex ratio{0.0, 0.0}; // r(0,0) on the + block
};

struct AdmissibleShiftSet {
  std::vector<ShiftCandidate> scanned;     // every (k, l) in the window
  std::vector<ShiftCandidate> admissible;  // deviation < tol
  double tol = 1e-10;
  bool rational_angle_warning = false;
};

/// True when lambda^q comes within 1e-9 of 1 for some q <= 64; such angles
/// make the shift scan degenerate (powers of lambda collide).
inline bool rational_angle(PhaseAngle lambda, int max_denominator = 64) {
  for (int q = 1; q <= max_denominator; ++q) {
    const double x = lambda.turns * q;
    if (std::abs(x - std::round(x)) < 1e-9) return true;
  }
  return false;
}

inline AdmissibleShiftSet admissible_shifts(const IntertwinerProblem& pr) {
  if (pr.sample_halfwidth < 1)
    throw std::invalid_argument("admissible_shifts: empty sample window");
  AdmissibleShiftSet out;
  out.rational_angle_warning = rational_angle(pr.lambda);

  const int K = pr.shift_window, S = pr.sample_halfwidth;
  for (int k = -K; k <= K; ++k)
    for (int l = -K; l <= K; ++l) {
      ShiftCandidate cand;
      cand.k = k;
      cand.l = l;
      std::optional<Complex> anchor_plus;
      for (Chirality s : {Chirality::plus, Chirality::minus}) {
        std::optional<Complex> anchor;
        for (int n = -S; n <= S; ++n)
          for (int m = -S; m <= S; ++m) {
            const Complex num =
                detail::relabeled_j(pr.target, pr.lambda, n, m, s) * pr.lambda.pow(2.0 * m * k);
            const Complex den = detail::relabeled_j(pr.source, pr.lambda, n + k, m + l, s);
            const Complex r = num / den;
            if (!anchor) {
              anchor = r;
              if (s == Chirality::plus) anchor_plus = r;
            } else {
              cand.deviation = std::max(cand.deviation, std::abs(r - *anchor));
            }
          }
      }
      cand.ratio = anchor_plus.value_or(Complex{0.0, 0.0});
      out.scanned.push_back(cand);
      if (cand.deviation < out.tol) out.admissible.push_back(cand);
    }
  return out;
}

struct IntertwinerVerdict {
  bool equivalent = false;
  AdmissibleShiftSet shifts;
  /// For equivalent pairs: the diagonal certificate (w_plus, w_minus), with
  /// W = w id on each block; determined up to a global sign.
  Complex w_plus{0.0, 0.0};
  Complex w_minus{0.0, 0.0};
  double certificate_residual = -1.0;  // ||W J_s W* - J_t|| interior, when built
  std::string note;
};

/// Decides equivalence and produces a certificate (the W matrix data for
/// equivalent pairs, the deviation table otherwise). The certificate is
/// verified against actual matrices on a small window.
inline IntertwinerVerdict intertwiner_verdict(const IntertwinerProblem& pr, int verify_n_max = 5) {
  IntertwinerVerdict v;
  v.shifts = admissible_shifts(pr);
  if (v.shifts.rational_angle_warning)
    v.note = "rational angle: lambda not generic, scan may degenerate";

  bool zero_shift_admissible = false;
  Complex r_plus{0, 0}, r_minus{0, 0};
  for (const ShiftCandidate& c : v.shifts.admissible)
    if (c.k == 0 && c.l == 0) {
      zero_shift_admissible = true;
      r_plus = c.ratio;
      // Recompute the - block anchor for the coefficient equations.
      r_minus = detail::relabeled_j(pr.target, pr.lambda, 0, 0, Chirality::minus) /
                detail::relabeled_j(pr.source, pr.lambda, 0, 0, Chirality::minus);
    }
  if (!zero_shift_admissible) return v;  // no translation-invariant coefficient survives

  // w_+ = r_+ w_-, w_- = r_- w_+: solvable with unit moduli iff r_+ r_- = 1.
  if (std::abs(r_plus * r_minus - Complex{1.0, 0.0}) > 1e-10) {
    v.note += (v.note.empty() ? "" : "; ");
    v.note += "zero shift admissible but coefficient equations inconsistent";
    return v;
  }
  v.w_minus = Complex{1.0, 0.0};
  v.w_plus = r_plus;

  // Verify on matrices: W block-diagonal with the solved coefficients.
  const BasisIndexMap map(Truncation(verify_n_max, SpinStructure{}));
  Matrix w = Matrix::Zero(map.dim(), map.dim());
  for (int i = 0; i < map.dim(); ++i)
    w(i, i) = (map.site_of(i).s == Chirality::plus) ? v.w_plus : v.w_minus;
  const LinearOp W{std::move(w)};
  const AntilinearOp js = build_relabeled_structure(map, pr.lambda, pr.source);
  const AntilinearOp jt = build_relabeled_structure(map, pr.lambda, pr.target);
  const AntilinearOp conj_j = compose_anti_lin(compose_lin_anti(W, js), adjoint(W));
  v.certificate_residual =
      interior_residual(conj_j - jt, interior_mask(map, 1));
  v.equivalent = v.certificate_residual <= 1e-10;
  return v;
}

/// Verdict matrix over the four canonical structures (phi = psi = theta = 0).
inline std::vector<std::vector<IntertwinerVerdict>> classify_all_pairs(PhaseAngle lambda,
                                                                       int shift_window = 3,
                                                                       int sample_halfwidth = 3) {
  const auto& spins = all_spin_structures();
  std::vector<std::vector<IntertwinerVerdict>> m(spins.size());
  for (std::size_t i = 0; i < spins.size(); ++i)
    for (std::size_t j = 0; j < spins.size(); ++j) {
      IntertwinerProblem pr;
      pr.source = {spins[i], RealStructureParams{}};
      pr.target = {spins[j], RealStructureParams{}};
      pr.lambda = lambda;
      pr.shift_window = shift_window;
      pr.sample_halfwidth = sample_halfwidth;
      m[i].push_back(intertwiner_verdict(pr));
    }
  return m;
}

struct CounterexampleReport {
  LinearOp w;
  double intertwine_residual = 0.0;       // ||W* J00 W - J0h|| interior depth 2
  double gamma_anticommute_residual = 0.0;// ||W gamma + gamma W||, should vanish
  double gamma_commute_defect = 0.0;      // ||W gamma - gamma W||, should be 2
  double alg_residual_u = 0.0;            // ||[W, pi(U)]||, nonzero
  double alg_residual_v = 0.0;            // ||[W, pi(V)]||
  double unitarity_residual = 0.0;        // ||W* W - 1|| interior depth 1
};

/// The explicit unitary intertwining J_00 and J_{0,1/2} once the grading and
/// algebra constraints are dropped:
///   W e_{m,n,+} = lambda^{m/2} e_{m,n-1,-},   W e_{m,n,-} = -e_{m,n,+}.
/// The minus sign on the second branch makes W* J00 W = J0h exact with the
/// J^2 = -1 sign convention; with +1 the conjugation lands on -J0h instead.
inline CounterexampleReport counterexample_unconstrained_w(const BasisIndexMap& map,
                                                           PhaseAngle lambda) {
  if (map.spin().has_half_offset())
    throw std::invalid_argument("counterexample_unconstrained_w: expects the integer window");

  Matrix wm = Matrix::Zero(map.dim(), map.dim());
  for (int col = 0; col < map.dim(); ++col) {
    const Site x = map.site_of(col);
    if (x.s == Chirality::plus) {
      if (!map.in_window(x.m, x.n - 1)) continue;
      wm(map.index_of({x.m, x.n - 1, Chirality::minus}), col) = lambda.pow(0.5 * x.m);
    } else {
      wm(map.index_of({x.m, x.n, Chirality::plus}), col) = -1.0;
    }
  }
  CounterexampleReport rep{LinearOp(std::move(wm))};

  const AntilinearOp j00 =
      build_relabeled_structure(map, lambda, {SpinStructure{}, RealStructureParams{}});
  const AntilinearOp j0h = build_relabeled_structure(
      map, lambda, {SpinStructure{HalfOffset::zero, HalfOffset::half}, RealStructureParams{}});

  const AntilinearOp conj_j =
      compose_anti_lin(compose_lin_anti(adjoint(rep.w), j00), rep.w);
  rep.intertwine_residual = interior_residual(conj_j - j0h, interior_mask(map, 2));

  const LinearOp gamma = grading_op(map);
  const InteriorMask depth1 = interior_mask(map, 1);
  rep.gamma_anticommute_residual =
      interior_residual(compose_lin_lin(rep.w, gamma) + compose_lin_lin(gamma, rep.w), depth1);
  rep.gamma_commute_defect = interior_residual(commutator(rep.w, gamma), depth1);

  const LinearOp pu = rep_u(map, lambda);
  const LinearOp pv = rep_v(map, lambda);
  const InteriorMask depth2 = interior_mask(map, 2);
  rep.alg_residual_u = interior_residual(commutator(rep.w, pu), depth2);
  rep.alg_residual_v = interior_residual(commutator(rep.w, pv), depth2);
  rep.unitarity_residual = interior_residual(
      compose_lin_lin(adjoint(rep.w), rep.w) - LinearOp::identity(map.dim()), depth1);
  return rep;
}

}  // namespace nctorus
