#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "sumdiff/channels.hpp"
#include "sumdiff/choi.hpp"
#include "sumdiff/linalg.hpp"

namespace sumdiff {

/// Maximally dephasing component: the nine rank-1 operators built from the
/// diagonal of the 2AD Choi matrix, labelled H, G, F, E, D, C, A, 1, B.
SignedKrausSet mdc_kraus(const TwoQubitAdCoeffs& c);

/// Purely dephasing component: the signed pairs J, M, L, U, V, R, S, P, T, Q
/// plus the four basis projectors (labelled Pi00 ... Pi11).
SignedKrausSet pdc_kraus(const TwoQubitAdCoeffs& c);

/// Positive partial transpose on the second factor within -tol.
bool is_ppt(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, double tol);
bool is_ppt(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b, double tol);

struct ChannelReport {
  bool is_cp = false;
  double min_choi_eigenvalue = 0.0;
  bool is_trace_preserving = false;
  double completeness_residual = 0.0;  // ||Tr_out B - I||_max
  bool ppt_of_choi = false;
  double min_pt_eigenvalue = 0.0;
  /// Exact for diagonal Choi matrices and product (point-channel) forms;
  /// otherwise PPT is only a necessary condition and this stays false.
  bool separable_certified = false;
  std::optional<ComplexMatrix> point_channel;
};

ChannelReport eb_report(const ChoiMatrix& b, double tol = 1e-10);

struct HolevoForm {
  std::vector<ComplexMatrix> states;  // R_i
  std::vector<ComplexMatrix> povm;    // F_i

  /// sum_i R_i Tr(F_i rho)
  ComplexMatrix apply(const ComplexMatrix& rho) const;
  /// Entanglement-breaking Kraus operators sqrt(r f) |psi><phi| from the
  /// spectral decompositions of each R_i and F_i.
  SignedKrausSet induced_kraus() const;
  /// ||sum F_i - I||_max
  double povm_residual() const;
};

/// Measure-and-prepare form of the asymptotic 2AD channel: every outcome
/// prepares |g><g|, the POVM is the computational basis.
HolevoForm holevo_point_form();

struct QcFormResult {
  bool is_qc = false;
  double max_offdiag_block = 0.0;
  double min_block_eigenvalue = 0.0;
  std::vector<ComplexMatrix> blocks;  // G_mm, m over the output basis
};

/// Fixed computational-basis test of b = sum_{m,m'} G_{m,m'} (x) |m><m'| with
/// the output factor second.
QcFormResult qc_form_test(const ChoiMatrix& b, double tol);

/// Wootters concurrence of a two-qubit state.
double concurrence(const DensityMatrix& rho);

struct ConcurrencePoint {
  double t = 0.0;
  double concurrence = 0.0;
  double abs_l = 0.0;  // |L(t)|, the e-g coherence factor
  double abs_j = 0.0;  // |J(t)|
};

/// Concurrence of (PDC x I) applied to (|e,e> + |g,g>)/sqrt(2), restricted to
/// span{|e,e>, |g,g>}.
double pdc_concurrence(const TwoQubitAdCoeffs& c);

/// Sends one half of (|e,e> + |g,g>)/sqrt(2) through the PDC and returns the
/// concurrence of the state restricted to span{|e,e>, |g,g>} at `steps`
/// evenly spaced times in [0, tmax].
std::vector<ConcurrencePoint> pdc_entanglement_trace(const TwoQubitAdParams& params,
                                                     double tmax, std::size_t steps);

/// Effective two-qubit state (|00><00| + |11><11| + z|00><11| + z*|11><00|)/2.
DensityMatrix correlated_pair_state(Complex coherence);

}  // namespace sumdiff
