#include <catch_amalgamated.hpp>

#include <cmath>

#include "oracles.hpp"
#include "sumdiff/analysis.hpp"
#include "sumdiff/choi.hpp"
#include "sumdiff/errors.hpp"
#include "sumdiff/random.hpp"

using namespace sumdiff;
using Catch::Matchers::WithinAbs;

namespace {

TwoQubitAdParams generic() { return {1.0, 0.3, 2.0, 10.0, 0.7}; }

ComplexMatrix bell() {
  ComplexVector phi{1.0 / std::sqrt(2.0), 0, 0, 1.0 / std::sqrt(2.0)};
  return ComplexMatrix::outer(phi, phi);
}

ComplexMatrix diag_part(const ComplexMatrix& m) {
  ComplexMatrix d(m.dim());
  for (std::size_t i = 0; i < m.dim(); ++i) d(i, i) = m(i, i);
  return d;
}

}  // namespace

TEST_CASE("MDC keeps only populations", "[analysis]") {
  const TwoQubitAdCoeffs c = ad2_coefficients(generic());
  const SignedKrausSet mdc = mdc_kraus(c);
  CHECK(mdc.positive_labels ==
        std::vector<std::string>{"H", "G", "F", "E", "D", "C", "A", "1", "B"});
  CHECK(check_completeness(mdc) < 1e-14);

  const ComplexMatrix rho = ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4});
  const ComplexMatrix out = apply_signed_kraus(rho, mdc);
  CHECK(max_abs_diff(out, ComplexMatrix::diagonal({c.A * 0.1, c.B * 0.2 + c.C * 0.1,
                                                   c.D * 0.3 + c.E * 0.1,
                                                   0.4 + c.F * 0.2 + c.G * 0.3 + c.H * 0.1})) <
        1e-15);
  CHECK(apply_signed_kraus(ComplexMatrix::unit(4, kExcited, kSymmetric), mdc).max_abs() == 0.0);

  Rng rng(41);
  for (int n = 0; n < 20; ++n) {
    const TwoQubitAdCoeffs cc = ad2_coefficients(random_ad2_params(rng));
    const ComplexMatrix r = random_density_matrix(4, rng).matrix();
    const ComplexMatrix o = apply_signed_kraus(r, mdc_kraus(cc));
    CHECK(o.is_diagonal(1e-14));
    CHECK_THAT(o.trace().real(), WithinAbs(1.0, 1e-12));
    CHECK(is_ppt(reconstruct_choi(mdc_kraus(cc)).matrix(), 4, 4, 1e-12));
  }
}

TEST_CASE("PDC keeps populations and transports coherences", "[analysis]") {
  const TwoQubitAdCoeffs c = ad2_coefficients(generic());
  const SignedKrausSet pdc = pdc_kraus(c);
  CHECK(check_completeness(pdc) < 1e-12);

  Rng rng(42);
  for (int n = 0; n < 20; ++n) {
    const ComplexMatrix r = random_density_matrix(4, rng).matrix();
    const ComplexMatrix out = apply_signed_kraus(r, pdc);
    CHECK(max_abs_diff(diag_part(out), diag_part(r)) < 1e-15);
    // The PDC is the full map with the population transfer removed.
    ComplexMatrix expected = ad2_apply(r, c);
    expected -= diag_part(expected);
    expected += diag_part(r);
    CHECK(max_abs_diff(out, expected) < 1e-12);
  }
  const ComplexMatrix es = apply_signed_kraus(ComplexMatrix::unit(4, kExcited, kSymmetric), pdc);
  CHECK(std::abs(es(kExcited, kSymmetric) - c.J) < 1e-14);

  TwoQubitAdParams p = generic();
  p.t = 0.0;
  const SignedKrausSet id = pdc_kraus(ad2_coefficients(p));
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t k = 0; k < 4; ++k) {
      const ComplexMatrix u = ComplexMatrix::unit(4, j, k);
      CHECK(max_abs_diff(apply_signed_kraus(u, id), u) < 1e-14);
    }
  }
}

TEST_CASE("PDC is not completely positive (recorded finding)", "[analysis]") {
  const TwoQubitAdCoeffs c = ad2_coefficients({1.0, 0.3, 2.0, 10.0, 0.5});
  const ChannelReport r = eb_report(reconstruct_choi(pdc_kraus(c)));
  CHECK_FALSE(r.is_cp);
  CHECK_THAT(r.min_choi_eigenvalue, WithinAbs(-0.311750, 1e-6));
  CHECK(r.is_trace_preserving);
  CHECK_FALSE(r.ppt_of_choi);
  CHECK_THAT(r.min_pt_eigenvalue, WithinAbs(-0.839457, 1e-6));
}

TEST_CASE("PPT test", "[analysis]") {
  CHECK(is_ppt(ComplexMatrix::diagonal({0.1, 0.2, 0.3, 0.4}), 2, 2, 1e-12));
  CHECK_FALSE(is_ppt(DensityMatrix(bell()), 2, 2, 1e-12));
  const TwoQubitAdCoeffs c = ad2_coefficients({1.0, 0.3, 2.0, 10.0, 0.5});
  CHECK_FALSE(is_ppt(reconstruct_choi(pdc_kraus(c)).matrix(), 4, 4, 1e-10));
}

TEST_CASE("entanglement-breaking report", "[analysis]") {
  const ChannelReport mdc = eb_report(reconstruct_choi(mdc_kraus(ad2_coefficients(generic()))));
  CHECK(mdc.ppt_of_choi);
  CHECK(mdc.separable_certified);
  CHECK(mdc.is_cp);
  CHECK(mdc.completeness_residual < 1e-14);

  const ChannelReport asym = eb_report(choi_2ad(ad2_coefficients({1.0, 0.0, 2.0, 10.0, 50.0})));
  REQUIRE(asym.point_channel.has_value());
  CHECK(max_abs_diff(*asym.point_channel, ComplexMatrix::unit(4, kGround, kGround)) < 1e-10);
  CHECK(asym.separable_certified);
  // With input factor first the Choi matrix is I (x) |g><g|.
  CHECK(max_abs_diff(choi_2ad(ad2_coefficients({1.0, 0.0, 2.0, 10.0, 50.0})).matrix(),
                     kron(ComplexMatrix::identity(4), ComplexMatrix::unit(4, kGround, kGround))) <
        1e-10);

  ComplexVector phi(4);
  phi[0] = phi[3] = 1.0;
  const ChannelReport id = eb_report(ChoiMatrix(ComplexMatrix::outer(phi, phi), 2));
  CHECK_FALSE(id.ppt_of_choi);
  CHECK_FALSE(id.point_channel.has_value());
  CHECK_FALSE(id.separable_certified);
}

TEST_CASE("measure-and-prepare form of the asymptotic channel", "[analysis]") {
  const HolevoForm form = holevo_point_form();
  CHECK(form.povm_residual() == 0.0);
  Rng rng(43);
  for (int n = 0; n < 20; ++n) {
    const ComplexMatrix r = random_density_matrix(4, rng).matrix();
    CHECK(max_abs_diff(form.apply(r), ComplexMatrix::unit(4, kGround, kGround)) < 1e-14);
  }

  // The induced operators coincide with the surviving H, F, G, 1 operators at t -> inf.
  const SignedKrausSet induced = form.induced_kraus();
  REQUIRE(induced.positive.size() == 4);
  const std::vector<ComplexMatrix> expected{
      ComplexMatrix::unit(4, kGround, kExcited), ComplexMatrix::unit(4, kGround, kSymmetric),
      ComplexMatrix::unit(4, kGround, kAntisymmetric), ComplexMatrix::unit(4, kGround, kGround)};
  for (std::size_t k = 0; k < 4; ++k) {
    CHECK(max_abs_diff(induced.positive[k], expected[k]) < 1e-15);
  }
}

TEST_CASE("fixed-basis QC form test", "[analysis]") {
  Rng rng(44);
  ComplexMatrix b(4);
  for (std::size_t m = 0; m < 2; ++m) {
    const ComplexMatrix f = random_density_matrix(2, rng).matrix();
    b += kron(f.transpose(), ComplexMatrix::unit(2, m, m));
  }
  CHECK(qc_form_test(ChoiMatrix(b, 2), 1e-12).is_qc);

  ComplexVector phi(4);
  phi[0] = phi[3] = 1.0;
  CHECK_FALSE(qc_form_test(ChoiMatrix(ComplexMatrix::outer(phi, phi), 2), 1e-12).is_qc);

  // Recorded outcome: the diagonal MDC Choi matrix passes this test.
  const QcFormResult mdc =
      qc_form_test(reconstruct_choi(mdc_kraus(ad2_coefficients(generic()))), 1e-12);
  CHECK(mdc.is_qc);
  CHECK(mdc.max_offdiag_block == 0.0);
}

TEST_CASE("concurrence", "[analysis]") {
  CHECK_THAT(concurrence(DensityMatrix(bell())), WithinAbs(1.0, 1e-12));
  CHECK_THAT(concurrence(DensityMatrix(ComplexMatrix::diagonal({1, 0, 0, 0}))), WithinAbs(0.0, 1e-12));
  CHECK_THAT(concurrence(correlated_pair_state(0.5)), WithinAbs(0.5, 1e-10));
  CHECK_THAT(concurrence(correlated_pair_state(std::polar(0.5, 1.1))), WithinAbs(0.5, 1e-10));
  CHECK_THROWS_AS(concurrence(DensityMatrix(ComplexMatrix::identity(2) * 0.5)), DimensionError);

  // Against the sqrt(rho) route on random states (both ranks).
  Rng rng(45);
  for (int n = 0; n < 30; ++n) {
    const DensityMatrix full = random_density_matrix(4, rng);
    CHECK_THAT(concurrence(full), WithinAbs(oracle::concurrence_sqrt_route(full.matrix()), 1e-9));
    const ComplexVector psi = unfold(random_ginibre(2, rng));
    ComplexMatrix pure = ComplexMatrix::outer(psi, psi);
    pure *= 1.0 / pure.trace().real();
    CHECK_THAT(concurrence(DensityMatrix(pure)),
               WithinAbs(oracle::concurrence_sqrt_route(pure), 1e-6));
  }
}

TEST_CASE("PDC entanglement trace", "[analysis]") {
  const TwoQubitAdParams p{1.0, 0.3, 2.0, 10.0, 0.0};
  const std::vector<ConcurrencePoint> trace = pdc_entanglement_trace(p, 50.0, 101);
  REQUIRE(trace.size() == 101);
  CHECK_THAT(trace.front().concurrence, WithinAbs(1.0, 1e-12));
  CHECK(trace.back().concurrence < 1e-8);
  for (std::size_t k = 1; k < trace.size(); ++k) {
    CHECK(trace[k].concurrence <= trace[k - 1].concurrence + 1e-15);
    CHECK_THAT(trace[k].concurrence, WithinAbs(trace[k].abs_l, 1e-12));
  }
  // Closed form on the explicit state.
  const TwoQubitAdCoeffs c = ad2_coefficients({1.0, 0.3, 2.0, 10.0, 0.8});
  ComplexMatrix x(4);
  x(0, 0) = x(3, 3) = 0.5;
  x(0, 3) = 0.5 * c.L;
  x(3, 0) = 0.5 * std::conj(c.L);
  CHECK_THAT(pdc_concurrence(c), WithinAbs(oracle::concurrence_x_state(x), 1e-12));

  CHECK_THROWS_AS(pdc_entanglement_trace(p, 50.0, 1), ContractError);
  CHECK_THROWS_AS(pdc_entanglement_trace(p, 0.0, 10), ContractError);
}
