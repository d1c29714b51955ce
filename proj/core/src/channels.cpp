#include "sumdiff/channels.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sumdiff/errors.hpp"
#include "sumdiff/random.hpp"

namespace sumdiff {

namespace {

void require_dims(const ComplexMatrix& m, std::size_t dim, const char* what) {
  if (m.dim() != dim) {
    throw DimensionError(std::string(what) + ": expected dimension " +
                         std::to_string(dim) + ", got " + std::to_string(m.dim()));
  }
}

bool finite(double x) { return std::isfinite(x); }

}  // namespace

DensityMatrix::DensityMatrix(ComplexMatrix mat) : mat_(std::move(mat)) {
  if (mat_.dim() == 0) throw ContractError("DensityMatrix: empty matrix");
  if (!mat_.is_hermitian(kHermitianTol)) {
    throw ContractError("DensityMatrix: not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex(1.0)) > kTraceTol) {
    throw ContractError("DensityMatrix: trace != 1");
  }
  if (min_eigenvalue(mat_) < kPsdSlack) {
    throw ContractError("DensityMatrix: negative eigenvalue");
  }
}

void SignedKrausSet::add_positive(ComplexMatrix op, std::string label) {
  if (dim == 0) dim = op.dim();
  require_dims(op, dim, "SignedKrausSet::add_positive");
  positive.push_back(std::move(op));
  if (!label.empty() || !positive_labels.empty()) {
    positive_labels.resize(positive.size() - 1);
    positive_labels.push_back(std::move(label));
  }
}

void SignedKrausSet::add_negative(ComplexMatrix op, std::string label) {
  if (dim == 0) dim = op.dim();
  require_dims(op, dim, "SignedKrausSet::add_negative");
  negative.push_back(std::move(op));
  if (!label.empty() || !negative_labels.empty()) {
    negative_labels.resize(negative.size() - 1);
    negative_labels.push_back(std::move(label));
  }
}

ComplexMatrix apply_signed_kraus(const ComplexMatrix& rho, const SignedKrausSet& ks) {
  require_dims(rho, ks.dim, "apply_signed_kraus");
  ComplexMatrix out(ks.dim);
  for (const auto& k : ks.positive) {
    require_dims(k, ks.dim, "apply_signed_kraus");
    out += k * rho * k.dagger();
  }
  for (const auto& k : ks.negative) {
    require_dims(k, ks.dim, "apply_signed_kraus");
    out -= k * rho * k.dagger();
  }
  return out;
}

DensityMatrix apply_signed_kraus(const DensityMatrix& rho, const SignedKrausSet& ks) {
  return DensityMatrix(apply_signed_kraus(rho.matrix(), ks));
}

double check_completeness(const SignedKrausSet& ks) {
  ComplexMatrix sum(ks.dim);
  for (const auto& k : ks.positive) {
    require_dims(k, ks.dim, "check_completeness");
    sum += k.dagger() * k;
  }
  for (const auto& k : ks.negative) {
    require_dims(k, ks.dim, "check_completeness");
    sum -= k.dagger() * k;
  }
  return max_abs_diff(sum, ComplexMatrix::identity(ks.dim));
}

void GadParams::validate() const {
  if (!(p >= 0.0 && p <= 1.0)) throw ParameterError("GAD: p must lie in [0, 1]");
  if (!(lam >= 0.0 && lam <= 1.0)) throw ParameterError("GAD: lambda must lie in [0, 1]");
}

SignedKrausSet gad_kraus(const GadParams& params) {
  params.validate();
  const double sp = std::sqrt(params.p);
  const double sq = std::sqrt(1.0 - params.p);
  const double damp = std::sqrt(1.0 - params.lam);
  const double jump = std::sqrt(params.lam);

  SignedKrausSet ks;
  ks.dim = 2;
  ks.add_positive(ComplexMatrix{{sp, 0.0}, {0.0, sp * damp}});
  ks.add_positive(ComplexMatrix{{0.0, sp * jump}, {0.0, 0.0}});
  ks.add_positive(ComplexMatrix{{sq * damp, 0.0}, {0.0, sq}});
  ks.add_positive(ComplexMatrix{{0.0, 0.0}, {sq * jump, 0.0}});
  return ks;
}

void TwoQubitAdParams::validate() const {
  if (!finite(gamma) || !finite(gamma12) || !finite(omega12) || !finite(omega0) ||
      !finite(t)) {
    throw ParameterError("2AD: parameters must be finite");
  }
  if (!(gamma > 0.0)) throw ParameterError("2AD: gamma must be > 0");
  if (!(std::abs(gamma12) < gamma)) {
    throw ParameterError("2AD: |gamma12| must be < gamma");
  }
  if (!(t >= 0.0)) throw ParameterError("2AD: t must be >= 0");
}

TwoQubitAdCoeffs ad2_coefficients(const TwoQubitAdParams& params) {
  params.validate();
  const double g = params.gamma;
  const double g12 = params.gamma12;
  const double w12 = params.omega12;
  const double w0 = params.omega0;
  const double t = params.t;
  const double gp = g + g12;
  const double gm = g - g12;
  const auto phase = [](double angle) { return std::polar(1.0, angle); };

  TwoQubitAdCoeffs c;
  c.A = std::exp(-2.0 * g * t);
  c.B = std::exp(-gp * t);
  c.C = gp / gm * (1.0 - std::exp(-gm * t)) * std::exp(-gp * t);
  c.D = std::exp(-gm * t);
  c.E = gm / gp * (1.0 - std::exp(-gp * t)) * std::exp(-gm * t);
  c.F = 1.0 - std::exp(-gp * t);
  c.G = 1.0 - std::exp(-gm * t);
  c.H = gp / (2.0 * g) *
            (1.0 - 2.0 / gm * (gp / 2.0 * (1.0 - std::exp(-gm * t)) + gm / 2.0) *
                       std::exp(-gp * t)) +
        gm / gp * ((1.0 - std::exp(-gm * t)) - gm / (2.0 * g) * (1.0 - std::exp(-2.0 * g * t)));

  c.J = phase(-(w0 - w12) * t) * std::exp(-(3.0 * g + g12) * t / 2.0);
  c.L = phase(-2.0 * w0 * t) * std::exp(-g * t);
  c.M = phase(-(w0 + w12) * t) * std::exp(-(3.0 * g - g12) * t / 2.0);
  c.P = phase(-2.0 * w12 * t) * std::exp(-g * t);
  c.Q = phase(-(w0 - w12) * t) * std::exp(-gm * t / 2.0);
  c.T = phase(-(w0 + w12) * t) * std::exp(-gp * t / 2.0);

  const double decay = std::exp(-g * t);
  const double cs = std::cos(2.0 * w12 * t);
  const double sn = std::sin(2.0 * w12 * t);
  const double norm = 1.0 / (g * g + 4.0 * w12 * w12);
  const double cos_like = 2.0 * w12 * decay * sn + g * (1.0 - decay * cs);
  const double sin_like = 2.0 * w12 * (1.0 - decay * cs) - g * decay * sn;
  const Complex lower = gm * norm * phase(-(w0 - w12) * t) * std::exp(-gm * t / 2.0);
  const Complex upper = gp * norm * phase(-(w0 + w12) * t) * std::exp(-gp * t / 2.0);
  c.R = lower * cos_like;
  c.S = lower * sin_like;
  c.U = upper * cos_like;
  c.V = upper * sin_like;
  return c;
}

ComplexMatrix ad2_apply(const ComplexMatrix& rho, const TwoQubitAdCoeffs& c) {
  require_dims(rho, 4, "ad2_apply");
  constexpr std::size_t e = kExcited, s = kSymmetric, a = kAntisymmetric, g = kGround;
  const Complex i(0.0, 1.0);
  ComplexMatrix out(4);

  out(e, e) = c.A * rho(e, e);
  out(e, s) = c.J * rho(e, s);
  out(e, a) = c.M * rho(e, a);
  out(e, g) = c.L * rho(e, g);

  out(s, e) = std::conj(c.J) * rho(s, e);
  out(s, s) = c.B * rho(s, s) + c.C * rho(e, e);
  out(s, a) = c.P * rho(s, a);
  out(s, g) = c.T * rho(s, g) + (c.U + i * c.V) * rho(e, s);

  out(a, e) = std::conj(c.M) * rho(a, e);
  out(a, s) = std::conj(c.P) * rho(a, s);
  out(a, a) = c.D * rho(a, a) + c.E * rho(e, e);
  out(a, g) = c.Q * rho(a, g) + (i * c.S - c.R) * rho(e, a);

  out(g, e) = std::conj(c.L) * rho(g, e);
  out(g, s) = std::conj(c.T) * rho(g, s) + (std::conj(c.U) - i * std::conj(c.V)) * rho(s, e);
  out(g, a) = std::conj(c.Q) * rho(g, a) + (-i * std::conj(c.S) - std::conj(c.R)) * rho(a, e);
  out(g, g) = rho(g, g) + c.F * rho(s, s) + c.G * rho(a, a) + c.H * rho(e, e);
  return out;
}

DensityMatrix ad2_apply(const DensityMatrix& rho, const TwoQubitAdCoeffs& c) {
  return DensityMatrix(ad2_apply(rho.matrix(), c));
}

GadPrintedSplit gad_printed_split(const GadParams& params) {
  params.validate();
  const double p = params.p;
  const double lam = params.lam;
  const double s = std::sqrt(1.0 - lam);

  GadPrintedSplit out;
  out.b_plus = ComplexMatrix(4);
  out.b_plus(0, 0) = 1.0 - lam + p * lam + s / 2.0;
  out.b_plus(0, 3) = 3.0 * s / 4.0;
  out.b_plus(3, 0) = 3.0 * s / 4.0;
  out.b_plus(1, 1) = p * lam;
  out.b_plus(2, 2) = (1.0 - p) * lam;
  out.b_plus(3, 3) = 1.0 - p * lam + s / 2.0;

  out.b_minus = ComplexMatrix(4);
  out.b_minus(0, 0) = s / 2.0;
  out.b_minus(3, 3) = s / 2.0;
  out.b_minus(0, 3) = -s / 4.0;
  out.b_minus(3, 0) = -s / 4.0;

  // The printed K1+, K2+ contain a 1/s factor; they are only defined for lam < 1.
  const double a = 9.0 * (1.0 - lam) + 4.0 * lam * lam * (1.0 - 2.0 * p) * (1.0 - 2.0 * p);
  const double ra = std::sqrt(a);
  const double tilt = 2.0 * lam * (1.0 - 2.0 * p);
  auto& ks = out.printed_operators;
  ks.dim = 2;
  if (lam < 1.0) {
    ks.add_positive(std::sqrt(4.0 + 2.0 * s - 2.0 * lam - ra) / 2.0 *
                        ComplexMatrix{{-(tilt + ra) / (3.0 * s), 0.0}, {0.0, 1.0}},
                    "K1+");
    ks.add_positive(std::sqrt(4.0 + 2.0 * s - 2.0 * lam + ra) / 2.0 *
                        ComplexMatrix{{-(tilt - ra) / (3.0 * s), 0.0}, {0.0, 1.0}},
                    "K2+");
  }
  ks.add_positive(ComplexMatrix{{0.0, std::sqrt((1.0 - p) * lam)}, {0.0, 0.0}}, "K3+");
  ks.add_positive(ComplexMatrix{{0.0, 0.0}, {std::sqrt(p * lam), 0.0}}, "K4+");
  const double quarter = std::pow(1.0 - lam, 0.25);
  ks.add_negative(quarter / 2.0 * ComplexMatrix::identity(2), "K1-");
  ks.add_negative(std::sqrt(3.0) * quarter / 2.0 * ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}},
                  "K2-");
  return out;
}

GadNormalizationReport gad_normalization_check(const GadParams& params,
                                               std::size_t samples,
                                               unsigned long long seed) {
  const GadPrintedSplit split = gad_printed_split(params);
  const SignedKrausSet standard = gad_kraus(params);
  SignedKrausSet rescaled = split.printed_operators;
  for (auto& k : rescaled.negative) k *= 1.0 / std::sqrt(2.0);

  GadNormalizationReport report;
  ComplexMatrix b_minus(4);
  for (const auto& k : split.printed_operators.negative) {
    const ComplexVector v = unfold(k);
    b_minus += ComplexMatrix::outer(v, v);
  }
  report.b_minus_ratio = b_minus(0, 0).real() / split.b_minus(0, 0).real();

  ComplexMatrix b_plus(4);
  for (const auto& k : split.printed_operators.positive) {
    const ComplexVector v = unfold(k);
    b_plus += ComplexMatrix::outer(v, v);
  }
  report.b_plus_residual = max_abs_diff(b_plus, split.b_plus);

  // The printed operators are written for the opposite factor order; their
  // transposes act in this library's convention.
  SignedKrausSet printed = split.printed_operators;
  for (auto* list : {&printed.positive, &rescaled.positive, &printed.negative, &rescaled.negative}) {
    for (auto& k : *list) k = k.transpose();
  }

  Rng rng(seed);
  for (std::size_t n = 0; n < samples; ++n) {
    const DensityMatrix rho = random_density_matrix(2, rng);
    const ComplexMatrix expected = apply_signed_kraus(rho.matrix(), standard);
    report.action_deviation =
        std::max(report.action_deviation,
                 max_abs_diff(apply_signed_kraus(rho.matrix(), printed), expected));
    report.rescaled_deviation =
        std::max(report.rescaled_deviation,
                 max_abs_diff(apply_signed_kraus(rho.matrix(), rescaled), expected));
  }
  return report;
}

}  // namespace sumdiff
