#include <cmath>
#include <numbers>
#include <string>

#include "doctest.h"
#include "specpoint/arith.hpp"
#include "specpoint/kuznetsov.hpp"

using namespace specpoint;

namespace {

const std::vector<MaassForm>& bundled() {
  static const Spectrum s = load_spectrum(std::string(SPECPOINT_DATA_DIR) + "/maass_spectrum.txt");
  return s.forms;
}

const SpectralWeight kSw{14, 4};

}  // namespace

TEST_CASE("spectral side against a direct sum") {
  const auto& forms = bundled();
  const double y = std::sqrt(2.0 / 3.0);
  double ref = 0.0;
  for (const auto& f : forms) ref += f.omega * weight_h_y(f.t, y, kSw) * f.lambda(2) * f.lambda(3);
  CHECK(spectral_side(2, 3, kSw, y, forms) == doctest::Approx(ref).epsilon(1e-13));
  CHECK(spectral_side(3, 2, kSw, 1.0 / y, forms) == doctest::Approx(ref).epsilon(1e-10));
  bool warn = true;
  spectral_side(1, 1, kSw, 1.0, forms, &warn);
  CHECK_FALSE(warn);
  CHECK_THROWS_AS(spectral_side(1, forms.front().nmax() + 1, kSw, 1.0, forms), std::out_of_range);
  CHECK(spectral_tail_bar(1, 1, kSw, forms) >= 0.0);
}

TEST_CASE("Eisenstein and diagonal terms") {
  const double y = std::sqrt(0.5);
  double im = 1.0;
  const auto a = eisenstein_side(1, 2, kSw, y, 1e-10, &im);
  const auto b = eisenstein_side(2, 1, kSw, 1.0 / y, 1e-10);
  CHECK(std::abs(im) <= 1e-10 * std::abs(a.real()));
  CHECK(std::abs(a.real() - b.real()) <= 1e-10 * std::abs(a.real()));
  CHECK(eisenstein_side(1, 1, kSw, 1.0).real() > 0.0);

  CHECK(diagonal_term(1, 2, kSw) == 0.0);
  CHECK(diagonal_term(3, 3, kSw) == diagonal_term(1, 1, kSw));
  CHECK(diagonal_term(1, 1, kSw) == doctest::Approx(diagonal_H_main_term(kSw)).epsilon(1e-6));
}

TEST_CASE("Kloosterman side against a direct sum and under exchange") {
  const double y = std::sqrt(0.5);
  const auto k12 = kloosterman_side(1, 2, kSw, y, 3);
  const auto k21 = kloosterman_side(2, 1, kSw, 1.0 / y, 3);
  double ref = 0.0, err = 0.0;
  for (std::int64_t c = 1; c <= 3; ++c) {
    const auto h = bessel_H(4 * std::numbers::pi * std::sqrt(2.0) / c, y, kSw, 1e-12);
    ref += arith::kloosterman(1, 2, c).real() / c * h.real();
    err += h.err_estimate / c;
  }
  CHECK(std::abs(k12.value - ref) <= 10 * (err + k12.quad_err) + 1e-12);
  CHECK(std::abs(k12.value - k21.value) <= 1e-10 * std::abs(k12.value));
  CHECK(k12.tail > 0.0);
  CHECK(k12.converged);
}

TEST_CASE("trace formula residual at a short modulus range") {
  const auto r = trace_residual(1, 1, kSw, bundled(), 16);
  CHECK(r.relative_residual() <= 0.02);
  CHECK(r.residual <= r.error_bar());
  CHECK(r.forms_used > 0);
  CHECK_FALSE(r.tail_warning);
}

TEST_CASE("decomposition of real sequences") {
  const auto& forms = bundled();
  const auto z = decomposition(Sequence(16, true), kSw, forms);
  CHECK(z.S == 0.0);
  CHECK(z.D == 0.0);
  CHECK(z.P == 0.0);

  const Sequence s = Sequence::random(16, 3, true);
  const auto d = decomposition(s, kSw, forms);
  CHECK(d.S >= 0.0);
  CHECK(d.T_eis >= 0.0);
  CHECK(d.D > 0.0);
  CHECK(d.relative_residual() <= 0.02);
  CHECK(std::abs(d.D - d.D_main) <= d.residual + d.P_tail + d.spectral_tail);
  CHECK(d.D_main == doctest::Approx(diagonal_H_main_term(kSw) * s.norm2()).epsilon(1e-12));

  double ref = 0.0;
  for (const auto& f : forms) {
    cplx acc = 0.0;
    for (std::int64_t n = s.first(); n <= s.last(); ++n) acc += s(n) * f.lambda(n) * std::polar(1.0, f.t * std::log(double(n)));
    ref += f.omega * weight_h(f.t, kSw) * std::norm(acc);
  }
  CHECK(cusp_form_sum(s, kSw, forms) == doctest::Approx(ref).epsilon(1e-12));
  CHECK(eisenstein_sum(s, kSw).real() >= 0.0);

  CHECK_THROWS_AS(decomposition(Sequence::random(16, 3, false), kSw, forms), std::invalid_argument);
}

TEST_CASE("P bound majorant") {
  const Sequence s = Sequence::random(32, 9, true);
  const double a = p_bound_rhs(s, kSw);
  CHECK(a > 0.0);
  CHECK(p_bound_rhs(s.scaled(-1.0), kSw) == a);
  CHECK(p_bound_rhs(s.scaled(2.0), kSw) == doctest::Approx(4.0 * a).epsilon(1e-12));
  CHECK(p_bound_rhs(s, kSw, 8.0, 4.0) >= a);
  CHECK(p_bound_rhs(Sequence(32, true), kSw) == 0.0);
}
