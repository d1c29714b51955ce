#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "sumdiff/channels.hpp"
#include "sumdiff/linalg.hpp"

namespace sumdiff {

/// Eigenvalues with |lambda| below this are dropped during Kraus extraction.
inline constexpr double kEigenvalueCutoff = 1e-12;
/// Off-diagonal entries at or below this fraction of the largest entry are
/// treated as structural zeros when partitioning.
inline constexpr double kPairThreshold = 1e-14;

/// B = sum_jk |j><k| (x) E(|j><k|), dimension d^2, input factor first.
class ChoiMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;

  /// Throws DimensionError unless mat.dim() == sys_dim^2, ContractError if
  /// `mat` is not Hermitian.
  ChoiMatrix(ComplexMatrix mat, std::size_t sys_dim);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t sys_dim() const { return sys_dim_; }

  /// E(|j><k|), the (j, k) block.
  ComplexMatrix block(std::size_t j, std::size_t k) const;

 private:
  ComplexMatrix mat_;
  std::size_t sys_dim_;
};

using ChannelAction = std::function<ComplexMatrix(const ComplexMatrix&)>;

/// Builds the Choi matrix by acting on all d^2 matrix units. Linearity is
/// checked on a fixed random pair; a nonlinear action raises ContractError.
ChoiMatrix choi_from_channel(const ChannelAction& action, std::size_t d);

/// Explicit 16x16 Choi matrix of the 2AD channel.
ChoiMatrix choi_2ad(const TwoQubitAdCoeffs& c);

/// 4x4 Choi matrix of the GAD channel.
ChoiMatrix choi_gad(const GadParams& params);

/// Choi matrix of a signed Kraus set: sum |A+><A+| - sum |A-><A-|.
ChoiMatrix reconstruct_choi(const SignedKrausSet& ks);

// ---------------------------------------------------------------------------
// Hermitian partitions

struct HermitianPartition {
  std::size_t sys_dim = 0;
  std::vector<ComplexMatrix> elements;
  std::vector<std::string> labels;
  /// Per Choi index, a symbol for the operator built from that diagonal
  /// entry ("" -> "(i,i)"). Sized d^2 or empty.
  std::vector<std::string> diag_symbols;
  /// Order in which diagonal-element operators are emitted; empty means
  /// ascending index.
  std::vector<std::size_t> diag_order;

  std::size_t size() const { return elements.size(); }
  ComplexMatrix sum() const;
};

enum class PartitionKind {
  DiagPlusPairs,  // diagonal part + one element per conjugate position pair
  SplitRealImag,  // 2AD only: U and iV (and -R and iS) as separate elements
  FullSpectral,   // the whole matrix as a single element
  Custom,         // caller-supplied index masks
};

using IndexPair = std::pair<std::size_t, std::size_t>;

struct PartitionStrategy {
  PartitionKind kind = PartitionKind::DiagPlusPairs;
  /// For Custom: each mask lists (row, col) positions owned by one element.
  /// A position and its transpose must belong to the same mask; together the
  /// masks must cover every nonzero entry exactly once.
  std::vector<std::vector<IndexPair>> masks;
};

/// Diagonal element first, then one Hermitian element per (r, c), r < c,
/// with |b(r, c)| above the pair threshold, in ascending (r, c) order.
HermitianPartition partition_diag_pairs(const ChoiMatrix& b);

HermitianPartition partition_full_spectral(const ChoiMatrix& b);

/// Throws ContractError if masks overlap, miss a nonzero entry, or split a
/// conjugate pair.
HermitianPartition partition_custom(const ChoiMatrix& b,
                                    const std::vector<std::vector<IndexPair>>& masks);

/// Dispatch for generic Choi matrices. SplitRealImag needs the 2AD
/// coefficients and raises ContractError here.
HermitianPartition partition(const ChoiMatrix& b, const PartitionStrategy& strategy);

/// 2AD partition with symbolic labels: diag, J, M, L, U+iV, iS-R, P, T, Q
/// (position pairs) or diag, J, M, L, U, V, R, S, P, T, Q (split-real-imag).
/// Pair elements whose coefficient vanishes are omitted.
HermitianPartition partition_2ad(const TwoQubitAdCoeffs& c, PartitionKind kind);

/// The textbook GAD split B = B+ - B- as a two-element partition {B+, -B-},
/// moved into this library's factor order so it sums to choi_gad. The two
/// elements share positions, so this is not expressible as masks.
HermitianPartition gad_printed_partition(const GadParams& params);

/// Eigendecompose every element and fold sqrt(|lambda|) v into positive or
/// negative operators. Diagonal and rank-2 pair elements use closed forms,
/// anything else goes through Jacobi.
SignedKrausSet extract_signed_kraus(const HermitianPartition& p);

/// Conventional route: one Jacobi decomposition of the full Choi matrix.
SignedKrausSet standard_kraus_from_choi(const ChoiMatrix& b);

/// Number of nonzero off-diagonal conjugate pairs (r < c) in `m`.
std::size_t count_offdiagonal_pairs(const ComplexMatrix& m);

// ---------------------------------------------------------------------------
// Characteristic-polynomial checks for the 2AD partition

struct BlockSpectrumCheck {
  std::string label;
  double expected_magnitude = 0.0;  // |coefficient|
  std::vector<double> nonzero_eigenvalues;  // Jacobi, |lambda| > cutoff
  double error = 0.0;
};

struct CharpolyReport {
  std::vector<double> diag_expected;   // {A, C, E, H, B, F, D, G, 1} sorted descending
  std::vector<double> diag_eigenvalues;  // Jacobi spectrum of B_diag, all 16
  double diag_error = 0.0;
  std::vector<BlockSpectrumCheck> pairs;
  double max_pair_error = 0.0;

  bool passed(double diag_tol, double pair_tol) const {
    return diag_error <= diag_tol && max_pair_error <= pair_tol;
  }
};

/// Compares the Jacobi spectra of the split-real-imag 2AD partition against
/// the closed forms: B_diag has the coefficient multiset plus seven zeros,
/// each pair element has nonzero eigenvalues +-|coefficient|.
CharpolyReport charpoly_checks(const TwoQubitAdCoeffs& c);

}  // namespace sumdiff
