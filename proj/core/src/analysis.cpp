#include "sumdiff/analysis.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <string>

#include "sumdiff/errors.hpp"

namespace sumdiff {

SignedKrausSet mdc_kraus(const TwoQubitAdCoeffs& c) {
  struct Entry {
    const char* label;
    std::size_t out;
    std::size_t in;
    double weight;
  };
  // |out><in| with Choi index in * 4 + out.
  const std::array<Entry, 9> entries{{
      {"H", kGround, kExcited, c.H},
      {"G", kGround, kAntisymmetric, c.G},
      {"F", kGround, kSymmetric, c.F},
      {"E", kAntisymmetric, kExcited, c.E},
      {"D", kAntisymmetric, kAntisymmetric, c.D},
      {"C", kSymmetric, kExcited, c.C},
      {"A", kExcited, kExcited, c.A},
      {"1", kGround, kGround, 1.0},
      {"B", kSymmetric, kSymmetric, c.B},
  }};
  SignedKrausSet ks;
  ks.dim = 4;
  for (const auto& e : entries) {
    ks.add_positive(std::sqrt(std::max(e.weight, 0.0)) * ComplexMatrix::unit(4, e.out, e.in),
                    e.label);
  }
  return ks;
}

SignedKrausSet pdc_kraus(const TwoQubitAdCoeffs& c) {
  HermitianPartition p = partition_2ad(c, PartitionKind::SplitRealImag);
  p.elements.erase(p.elements.begin());
  p.labels.erase(p.labels.begin());
  SignedKrausSet ks = extract_signed_kraus(p);
  ks.dim = 4;
  const std::array<const char*, 4> names{"Pi00", "Pi01", "Pi10", "Pi11"};
  for (std::size_t i = 0; i < 4; ++i) ks.add_positive(ComplexMatrix::unit(4, i, i), names[i]);
  return ks;
}

bool is_ppt(const ComplexMatrix& m, std::size_t dim_a, std::size_t dim_b, double tol) {
  return min_eigenvalue(partial_transpose(m, dim_a, dim_b)) >= -tol;
}

bool is_ppt(const DensityMatrix& rho, std::size_t dim_a, std::size_t dim_b, double tol) {
  return is_ppt(rho.matrix(), dim_a, dim_b, tol);
}

ChannelReport eb_report(const ChoiMatrix& b, double tol) {
  const std::size_t d = b.sys_dim();
  const ComplexMatrix& m = b.matrix();

  ChannelReport report;
  report.min_choi_eigenvalue = min_eigenvalue(m);
  report.is_cp = report.min_choi_eigenvalue >= -tol;
  report.completeness_residual =
      max_abs_diff(partial_trace(m, d, d, Subsystem::Second), ComplexMatrix::identity(d));
  report.is_trace_preserving = report.completeness_residual <= tol;
  report.min_pt_eigenvalue = min_eigenvalue(partial_transpose(m, d, d));
  report.ppt_of_choi = report.min_pt_eigenvalue >= -tol;

  const ComplexMatrix first = b.block(0, 0);
  bool point = std::abs(first.trace() - Complex(1.0)) <= tol;
  for (std::size_t j = 0; j < d && point; ++j) {
    for (std::size_t k = 0; k < d && point; ++k) {
      const ComplexMatrix blk = b.block(j, k);
      point = j == k ? max_abs_diff(blk, first) <= tol : blk.max_abs() <= tol;
    }
  }
  if (point && report.is_cp) report.point_channel = first;

  report.separable_certified =
      report.is_cp && (m.is_diagonal(tol) || report.point_channel.has_value());
  return report;
}

ComplexMatrix HolevoForm::apply(const ComplexMatrix& rho) const {
  if (states.size() != povm.size()) {
    throw ContractError("HolevoForm: states and POVM differ in length");
  }
  ComplexMatrix out(states.empty() ? rho.dim() : states.front().dim());
  for (std::size_t i = 0; i < states.size(); ++i) out += (povm[i] * rho).trace() * states[i];
  return out;
}

SignedKrausSet HolevoForm::induced_kraus() const {
  SignedKrausSet ks;
  ks.dim = states.empty() ? 0 : states.front().dim();
  for (std::size_t i = 0; i < states.size(); ++i) {
    const EigenSystem r = eig_hermitian(states[i]);
    const EigenSystem f = eig_hermitian(povm[i]);
    for (std::size_t a = 0; a < r.size(); ++a) {
      if (r.values[a] <= kEigenvalueCutoff) continue;
      for (std::size_t b = 0; b < f.size(); ++b) {
        if (f.values[b] <= kEigenvalueCutoff) continue;
        ks.add_positive(std::sqrt(r.values[a] * f.values[b]) *
                            ComplexMatrix::outer(r.vectors[a], f.vectors[b]),
                        "R" + std::to_string(i) + "F" + std::to_string(i));
      }
    }
  }
  return ks;
}

double HolevoForm::povm_residual() const {
  if (povm.empty()) return 0.0;
  ComplexMatrix sum(povm.front().dim());
  for (const auto& f : povm) sum += f;
  return max_abs_diff(sum, ComplexMatrix::identity(sum.dim()));
}

HolevoForm holevo_point_form() {
  HolevoForm form;
  for (std::size_t i = 0; i < 4; ++i) {
    form.states.push_back(ComplexMatrix::unit(4, kGround, kGround));
    form.povm.push_back(ComplexMatrix::unit(4, i, i));
  }
  return form;
}

QcFormResult qc_form_test(const ChoiMatrix& b, double tol) {
  const std::size_t d = b.sys_dim();
  const ComplexMatrix& m = b.matrix();

  QcFormResult result;
  result.min_block_eigenvalue = std::numeric_limits<double>::infinity();
  for (std::size_t mo = 0; mo < d; ++mo) {
    for (std::size_t mp = 0; mp < d; ++mp) {
      ComplexMatrix g(d);
      for (std::size_t j = 0; j < d; ++j) {
        for (std::size_t k = 0; k < d; ++k) g(j, k) = m(j * d + mo, k * d + mp);
      }
      if (mo == mp) {
        result.min_block_eigenvalue = std::min(result.min_block_eigenvalue, min_eigenvalue(g));
        result.blocks.push_back(std::move(g));
      } else {
        result.max_offdiag_block = std::max(result.max_offdiag_block, g.max_abs());
      }
    }
  }
  result.is_qc = result.max_offdiag_block <= tol && result.min_block_eigenvalue >= -tol;
  return result;
}

double concurrence(const DensityMatrix& rho) {
  if (rho.dim() != 4) throw DimensionError("concurrence: two-qubit state required");

  // With rho = W W^dag, the Wootters values (square roots of the spectrum of
  // rho * flip(rho)) are the singular values of tau = W^T (sy x sy) W. This
  // avoids square roots of rounding-level eigenvalues of sqrt(rho) ... sqrt(rho).
  const EigenSystem es = eig_hermitian(rho.matrix());
  ComplexMatrix w(4);
  for (std::size_t k = 0; k < 4; ++k) {
    const double scale = std::sqrt(std::max(es.values[k], 0.0));
    for (std::size_t r = 0; r < 4; ++r) w(r, k) = scale * es.vectors[k][r];
  }
  const ComplexMatrix flip{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, 1, 0, 0}, {-1, 0, 0, 0}};
  const ComplexMatrix tau = w.transpose() * flip * w;

  ComplexMatrix dilation(8);
  for (std::size_t r = 0; r < 4; ++r) {
    for (std::size_t c = 0; c < 4; ++c) {
      dilation(r, 4 + c) = tau(r, c);
      dilation(4 + c, r) = std::conj(tau(r, c));
    }
  }
  const std::vector<double> sv = eig_hermitian(dilation).values;  // +-sigma, descending
  const double value = sv[0] - std::max(sv[1], 0.0) - std::max(sv[2], 0.0) - std::max(sv[3], 0.0);
  return std::max(0.0, value);
}

DensityMatrix correlated_pair_state(Complex coherence) {
  ComplexMatrix m(4);
  m(0, 0) = 0.5;
  m(3, 3) = 0.5;
  m(0, 3) = 0.5 * coherence;
  m(3, 0) = 0.5 * std::conj(coherence);
  return DensityMatrix(std::move(m));
}

double pdc_concurrence(const TwoQubitAdCoeffs& c) {
  constexpr std::array<std::size_t, 2> support{kExcited, kGround};
  constexpr std::size_t ee = kExcited * 4 + kExcited;
  constexpr std::size_t gg = kGround * 4 + kGround;
  const SignedKrausSet pdc = pdc_kraus(c);

  // (PDC x I) applied to (1/2) sum_{x,y in {e,g}} |x><y| (x) |x><y|.
  ComplexMatrix out(16);
  for (auto x : support) {
    for (auto y : support) {
      out += 0.5 * kron(apply_signed_kraus(ComplexMatrix::unit(4, x, y), pdc),
                        ComplexMatrix::unit(4, x, y));
    }
  }
  ComplexMatrix pair(4);
  pair(0, 0) = out(ee, ee);
  pair(0, 3) = out(ee, gg);
  pair(3, 0) = out(gg, ee);
  pair(3, 3) = out(gg, gg);
  return concurrence(DensityMatrix(std::move(pair)));
}

std::vector<ConcurrencePoint> pdc_entanglement_trace(const TwoQubitAdParams& params,
                                                     double tmax, std::size_t steps) {
  if (steps < 2) throw ContractError("pdc_entanglement_trace: steps must be >= 2");
  if (!(tmax > 0.0)) throw ContractError("pdc_entanglement_trace: tmax must be > 0");
  params.validate();

  std::vector<ConcurrencePoint> series;
  series.reserve(steps);
  for (std::size_t n = 0; n < steps; ++n) {
    TwoQubitAdParams at = params;
    at.t = tmax * static_cast<double>(n) / static_cast<double>(steps - 1);
    const TwoQubitAdCoeffs c = ad2_coefficients(at);
    series.push_back({at.t, pdc_concurrence(c), std::abs(c.L), std::abs(c.J)});
  }
  return series;
}

}  // namespace sumdiff
