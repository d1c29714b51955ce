#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sumdiff/linalg.hpp"

namespace sumdiff {

/// Two-qubit dressed basis, fixed as e, s, a, g <-> 0..3 <-> 00, 01, 10, 11.
enum Ad2Level : std::size_t { kExcited = 0, kSymmetric = 1, kAntisymmetric = 2, kGround = 3 };

/// A validated quantum state: Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  static constexpr double kHermitianTol = 1e-12;
  static constexpr double kTraceTol = 1e-12;
  static constexpr double kPsdSlack = -1e-10;

  /// Throws ContractError if `mat` is not a valid state.
  explicit DensityMatrix(ComplexMatrix mat);

  const ComplexMatrix& matrix() const { return mat_; }
  std::size_t dim() const { return mat_.dim(); }

 private:
  ComplexMatrix mat_;
};

/// Operator sum-difference set: rho -> sum A+ rho A+^dag - sum A- rho A-^dag.
struct SignedKrausSet {
  std::size_t dim = 0;
  std::vector<ComplexMatrix> positive;
  std::vector<ComplexMatrix> negative;
  // Optional, parallel to positive/negative when non-empty.
  std::vector<std::string> positive_labels;
  std::vector<std::string> negative_labels;

  std::size_t size() const { return positive.size() + negative.size(); }
  void add_positive(ComplexMatrix op, std::string label = {});
  void add_negative(ComplexMatrix op, std::string label = {});
};

/// General linear action of a signed set on any dim x dim operator.
ComplexMatrix apply_signed_kraus(const ComplexMatrix& rho, const SignedKrausSet& ks);
/// State-level action; the result must again be a valid state.
DensityMatrix apply_signed_kraus(const DensityMatrix& rho, const SignedKrausSet& ks);

/// max-entry norm of sum A+^dag A+ - sum A-^dag A- - I.
double check_completeness(const SignedKrausSet& ks);

// ---------------------------------------------------------------------------
// Single-qubit generalized amplitude damping

struct GadParams {
  double p = 0.0;    // mixing probability
  double lam = 0.0;  // damping strength

  void validate() const;
};

/// The four standard Kraus operators, all positive: sqrt(p) diag(1, sqrt(1-lam)),
/// sqrt(p lam) |0><1|, sqrt(1-p) diag(sqrt(1-lam), 1), sqrt((1-p) lam) |1><0|.
SignedKrausSet gad_kraus(const GadParams& params);

// ---------------------------------------------------------------------------
// Two-qubit amplitude damping in the dressed basis

struct TwoQubitAdParams {
  double gamma = 1.0;    // single-qubit decay rate
  double gamma12 = 0.0;  // collective decay rate, |gamma12| < gamma
  double omega12 = 0.0;  // dipole-dipole coupling
  double omega0 = 0.0;   // qubit transition frequency
  double t = 0.0;

  void validate() const;
};

struct TwoQubitAdCoeffs {
  double A = 1, B = 1, C = 0, D = 1, E = 0, F = 0, G = 0, H = 0;
  Complex J = 1, L = 1, M = 1, P = 1, Q = 1, T = 1;
  Complex U = 0, V = 0, R = 0, S = 0;
};

/// Reduced-dynamics coefficients of the 2AD channel at time params.t.
/// Throws ParameterError outside gamma > 0, |gamma12| < gamma, t >= 0.
TwoQubitAdCoeffs ad2_coefficients(const TwoQubitAdParams& params);

/// Entrywise 2AD action on a 4x4 operator.
ComplexMatrix ad2_apply(const ComplexMatrix& rho, const TwoQubitAdCoeffs& c);
DensityMatrix ad2_apply(const DensityMatrix& rho, const TwoQubitAdCoeffs& c);

// ---------------------------------------------------------------------------
// Known GAD discrepancy: the textbook split B = B+ - B- and the printed
// operators for it.

/// Matrices and operators exactly as printed. They use the output factor
/// first, i.e. they are the factor-swapped Choi matrix (and transposed
/// operators) of gad_kraus in this library's convention.
struct GadPrintedSplit {
  ComplexMatrix b_plus;
  ComplexMatrix b_minus;
  SignedKrausSet printed_operators;
};

GadPrintedSplit gad_printed_split(const GadParams& params);

struct GadNormalizationReport {
  double action_deviation = 0.0;     // transposed printed set vs. gad_kraus, max over inputs
  double b_minus_ratio = 0.0;        // (sum |K-><K-|)(0,0) / B-(0,0)
  double b_plus_residual = 0.0;      // ||sum |K+><K+| - B+||_max
  double rescaled_deviation = 0.0;   // same as action_deviation with K- / sqrt(2)
};

/// Apply the printed GAD operators to `samples` seeded random states and
/// compare against the standard four-operator action.
GadNormalizationReport gad_normalization_check(const GadParams& params,
                                               std::size_t samples,
                                               unsigned long long seed);

}  // namespace sumdiff
