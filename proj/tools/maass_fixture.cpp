// Generates level-1 Maass cusp form fixtures (spectral parameter, parity, harmonic
// weight, Hecke eigenvalues) in the maass-spectrum v1 text format.
//
// Eigenvalues: Hejhal's method. For a trial t the expansion is matched against its
// own values at SL2(Z) pullbacks of points on a horizontal line, at two heights; a
// true eigenvalue makes the two coefficient vectors agree.
// Coefficients to large n: projection of pulled-back values on lines of decreasing
// height (FFT), combined across heights by least squares.
// Harmonic weight: Petersson norm over the fundamental domain.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>

#include "specpoint/kbessel.hpp"
#include "specpoint/quadrature.hpp"

using specpoint::KBesselIt;

namespace {

constexpr double kPi = std::numbers::pi;
const double kY0 = std::sqrt(3.0) / 2.0;

struct Point {
  double x, y;
};

Point pullback(double x, double y) {
  for (int it = 0; it < 10000; ++it) {
    x -= std::nearbyint(x);
    const double r2 = x * x + y * y;
    if (r2 >= 1.0 - 1e-15) break;
    x = -x / r2;
    y = y / r2;
  }
  return {x, y};
}

double cs(bool odd, double a) { return odd ? std::sin(a) : std::cos(a); }

// Smallest M with K~(2 pi M Y) negligible.
int truncation(const KBesselIt& K, double Y, double eps = 1e-17) {
  int M = 1;
  const double xt = K.t();
  while (2.0 * kPi * M * Y < xt || std::abs(K(2.0 * kPi * M * Y)) > eps) ++M;
  return M;
}

// Coefficients c(1..M) with c(1) = 1 from the collocation system at height Y.
std::vector<double> hejhal_solve(const KBesselIt& K, bool odd, double Y, int M) {
  const int Q = M + 12;
  std::vector<Point> zs(static_cast<std::size_t>(Q));
  std::vector<double> xm(static_cast<std::size_t>(Q));
  for (int m = 0; m < Q; ++m) {
    xm[static_cast<std::size_t>(m)] = (m + 0.5) / (2.0 * Q);
    zs[static_cast<std::size_t>(m)] = pullback(xm[static_cast<std::size_t>(m)], Y);
  }
  // W[m][l] = sqrt(y*) K~(2 pi l y*) cs(2 pi l x*)
  Eigen::MatrixXd W(Q, M), C(M, Q);
  for (int m = 0; m < Q; ++m) {
    const Point z = zs[static_cast<std::size_t>(m)];
    for (int l = 1; l <= M; ++l)
      W(m, l - 1) = std::sqrt(z.y) * K(2.0 * kPi * l * z.y) * cs(odd, 2.0 * kPi * l * z.x);
    for (int n = 1; n <= M; ++n) C(n - 1, m) = (2.0 / Q) * cs(odd, 2.0 * kPi * n * xm[static_cast<std::size_t>(m)]);
  }
  Eigen::MatrixXd V = -C * W;
  for (int n = 1; n <= M; ++n) V(n - 1, n - 1) += std::sqrt(Y) * K(2.0 * kPi * n * Y);
  // drop equation n = 1, fix c(1) = 1
  Eigen::MatrixXd A = V.block(1, 1, M - 1, M - 1);
  Eigen::VectorXd b = -V.block(1, 0, M - 1, 1);
  Eigen::VectorXd sol = A.partialPivLu().solve(b);
  std::vector<double> c(static_cast<std::size_t>(M) + 1, 0.0);
  c[1] = 1.0;
  for (int n = 2; n <= M; ++n) c[static_cast<std::size_t>(n)] = sol(n - 2);
  return c;
}

struct Functional {
  double f2, f3;
};

// Two independent height pairs: a height where K~(2 pi Y) vanishes poisons one pair's
// functional near that t, never both.
struct Heights {
  double y1, y2;
};
constexpr Heights kPairs[2] = {{0.85 * 0.8660254037844386, 0.782 * 0.8660254037844386},
                               {0.74 * 0.8660254037844386, 0.66 * 0.8660254037844386}};

Functional functional(double t, bool odd, int pair = 0) {
  const Heights h = kPairs[pair];
  KBesselIt K(t, 1.0);
  const int M = truncation(K, h.y2);
  const auto c1 = hejhal_solve(K, odd, h.y1, M);
  const auto c2 = hejhal_solve(K, odd, h.y2, M);
  return {c1[2] - c2[2], c1[3] - c2[3]};
}

double refine(double a, double b, double fa, double fb, bool odd, int pair) {
  // Illinois-modified regula falsi on the n = 2 functional
  int side = 0;
  for (int it = 0; it < 100 && std::abs(b - a) > 1e-13 * b; ++it) {
    const double c = (a * fb - b * fa) / (fb - fa);
    const double fc = functional(c, odd, pair).f2;
    if (fc == 0.0) return c;
    if ((fc > 0) == (fb > 0)) {
      b = c;
      fb = fc;
      if (side == -1) fa *= 0.5;
      side = -1;
    } else {
      a = c;
      fa = fc;
      if (side == +1) fb *= 0.5;
      side = +1;
    }
  }
  return 0.5 * (a + b);
}

struct Form {
  double t;
  bool odd;
  double omega;
  std::vector<double> lambda;  // index n, lambda[1] = 1
  double hecke_residual;
  double check_f3;
};

// Expansion value at a point inside the fundamental domain (y >= sqrt(3)/2).
double expansion(const KBesselIt& K, bool odd, const std::vector<double>& c, double x, double y) {
  double s = 0.0;
  for (std::size_t n = 1; n < c.size(); ++n) {
    const double k = K(2.0 * kPi * static_cast<double>(n) * y);
    if (k == 0.0) break;
    s += c[n] * k * cs(odd, 2.0 * kPi * static_cast<double>(n) * x);
  }
  return std::sqrt(y) * s;
}

std::size_t fft_size(std::size_t n) {
  std::size_t best = static_cast<std::size_t>(-1);
  for (std::size_t a = 1; a < 4 * n + 64; a *= 2)
    for (std::size_t b = a; b < 4 * n + 64; b *= 3)
      for (std::size_t c = b; c < 4 * n + 64; c *= 5)
        if (c >= n && c < best) best = c;
  return best;
}

// c(n) for n <= nmax from projections on lines of decreasing height.
std::vector<double> ladder_coefficients(const KBesselIt& K, bool odd, const std::vector<double>& low, int nmax) {
  const double t = K.t();
  std::vector<double> num(static_cast<std::size_t>(nmax) + 1, 0.0), den(num.size(), 0.0);
  Eigen::FFT<double> fft;
  for (double Y = 0.5;; Y *= 0.8) {
    const int nk = std::min(nmax, static_cast<int>(std::ceil((t + 8.0) / (2.0 * kPi * Y))));
    const std::size_t L = fft_size(static_cast<std::size_t>(std::ceil((t + 40.0) / (2.0 * kPi * Y))) +
                                   static_cast<std::size_t>(nk) + 2);
    std::vector<std::complex<double>> f(L), F;
    for (std::size_t m = 0; m < L; ++m) {
      const double x = (static_cast<double>(m) + 0.5) / static_cast<double>(L);
      const Point z = pullback(x, Y);
      f[m] = expansion(K, odd, low, z.x, z.y);
    }
    fft.fwd(F, f);
    for (int n = 1; n <= nk; ++n) {
      // sum_m f(x_m) e(-n x_m) = (L/2) b_n for cos, -(L/2) i b_n for sin
      const std::complex<double> ph = std::polar(1.0, -kPi * n / static_cast<double>(L));
      const std::complex<double> s = F[static_cast<std::size_t>(n)] * ph * (2.0 / static_cast<double>(L));
      const double bn = odd ? -s.imag() : s.real();
      const double kn = std::sqrt(Y) * K(2.0 * kPi * n * Y);
      num[static_cast<std::size_t>(n)] += kn * bn;
      den[static_cast<std::size_t>(n)] += kn * kn;
    }
    if (2.0 * kPi * nmax * Y < 0.25 * t) break;
  }
  std::vector<double> c(num.size(), 0.0);
  for (std::size_t n = 1; n < c.size(); ++n) c[n] = num[n] / den[n];
  return c;
}

double hecke_residual(const std::vector<double>& lam) {
  const int N = static_cast<int>(lam.size()) - 1;
  double worst = 0.0;
  for (int m = 2; m <= N; ++m)
    for (int n = m; static_cast<long>(m) * n <= N; ++n) {
      const int g = std::gcd(m, n);
      double s = 0.0;
      for (int d = 1; d <= g; ++d)
        if (g % d == 0) s += lam[static_cast<std::size_t>(m / d * (n / d))];
      worst = std::max(worst, std::abs(lam[static_cast<std::size_t>(m)] * lam[static_cast<std::size_t>(n)] - s));
    }
  return worst;
}

// 2 / (||v~||^2 (1 + e^{-2 pi t})) with v~ = sqrt(y) sum lambda(n) K~(2 pi n y) 2 cs(2 pi n x).
double harmonic_weight(const KBesselIt& K, bool odd, const std::vector<double>& lam) {
  const double t = K.t();
  const int M = truncation(K, kY0, 1e-18);
  std::vector<double> low(lam.begin(), lam.begin() + std::min<std::size_t>(lam.size(), static_cast<std::size_t>(M) + 1));
  // y >= 1 by Parseval: 2 sum lambda(n)^2 int_{2 pi n}^inf K~(x)^2 dx/x
  double upper = 0.0;
  for (int n = 1; n <= M && n < static_cast<int>(lam.size()); ++n) {
    auto r = specpoint::integrate([&](double x) { return specpoint::cplx(K(x) * K(x) / x); },
                                  {2.0 * kPi * n, std::max(2.0 * kPi * n + 1.0, t + 60.0)}, {1e-16, 1e-15, 200000});
    upper += 2.0 * lam[static_cast<std::size_t>(n)] * lam[static_cast<std::size_t>(n)] * r.value.real();
  }
  // arc region: 0 <= x <= 1/2, sqrt(1 - x^2) <= y <= 1, doubled
  const auto g = specpoint::gauss_legendre(48);
  double lower = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    const double x = 0.25 * (g.nodes[i] + 1.0), wx = 0.25 * g.weights[i];
    const double y0 = std::sqrt(1.0 - x * x), hy = 0.5 * (1.0 - y0);
    for (std::size_t j = 0; j < g.nodes.size(); ++j) {
      const double y = y0 + hy * (g.nodes[j] + 1.0), wy = hy * g.weights[j];
      const double v = 2.0 * expansion(K, odd, low, x, y);
      lower += 2.0 * wx * wy * v * v / (y * y);
    }
  }
  return 2.0 / ((upper + lower) * (1.0 + std::exp(-2.0 * kPi * t)));
}

Form finish_form(double t, bool odd, int nmax) {
  KBesselIt K(t, 1e-7);
  const int M = truncation(K, kPairs[1].y2);
  std::vector<double> low;
  Form f;
  f.t = t;
  f.odd = odd;
  f.check_f3 = 1e300;
  for (const Heights& h : kPairs) {
    auto a = hejhal_solve(K, odd, h.y2, M);
    const auto b = hejhal_solve(K, odd, h.y1, M);
    const double d = std::abs(a[3] - b[3]) + std::abs(a[2] - b[2]);
    if (d < f.check_f3) {
      f.check_f3 = d;
      low = std::move(a);
    }
  }
  const int Mf = truncation(K, kY0, 1e-18);
  low.resize(static_cast<std::size_t>(std::min(M, Mf)) + 1);
  f.lambda = ladder_coefficients(K, odd, low, nmax);
  f.lambda[1] = 1.0;
  f.hecke_residual = hecke_residual(f.lambda);
  f.omega = harmonic_weight(K, odd, f.lambda);
  return f;
}

std::vector<std::pair<double, bool>> scan(double tmin, double tmax, double step) {
  std::vector<std::pair<double, bool>> roots;
  for (bool odd : {false, true})
    for (int pair = 0; pair < 2; ++pair) {
      double tp = tmin;
      Functional fp = functional(tp, odd, pair);
      for (double tc = tmin + step; tc <= tmax + 1e-12; tc += step) {
        const Functional fc = functional(tc, odd, pair);
        if ((fp.f2 > 0) != (fc.f2 > 0)) {
          const double r = refine(tp, tc, fp.f2, fc.f2, odd, pair);
          const Functional fr = functional(r, odd, pair);
          const bool seen = std::any_of(roots.begin(), roots.end(), [&](const auto& q) {
            return q.second == odd && std::abs(q.first - r) < 1e-7;
          });
          if (!seen && std::abs(fr.f2) < 1e-8 && std::abs(fr.f3) < 1e-6) {
            roots.push_back({r, odd});
            std::fprintf(stderr, "  %s t = %.12f  |F3| = %.1e  (pair %d)\n", odd ? "odd " : "even", r,
                         std::abs(fr.f3), pair);
          }
        }
        tp = tc;
        fp = fc;
      }
    }
  std::sort(roots.begin(), roots.end());
  return roots;
}

void write_spectrum(const std::string& path, const std::vector<Form>& forms, int nmax, double tol, const std::string& label) {
  std::FILE* out = std::fopen(path.c_str(), "w");
  if (!out) throw std::runtime_error("cannot open " + path);
  std::fprintf(out, "#maass-spectrum v1 nmax=%d tol=%.1e\n", nmax, tol);
  std::fprintf(out, "# %s\n", label.c_str());
  for (const auto& f : forms) {
    std::fprintf(out, "%.12f %s %.12e", f.t, f.odd ? "odd" : "even", f.omega);
    for (int n = 2; n <= nmax; ++n) std::fprintf(out, " %.12e", f.lambda[static_cast<std::size_t>(n)]);
    std::fprintf(out, "\n");
  }
  std::fclose(out);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maass cusp form fixture generator (level 1)"};
  double tmin = 9.0, tmax = 41.0, step = 0.002;
  int nmax = 1024;
  std::string out = "maass_spectrum.txt";
  std::optional<double> single;
  std::string parity = "odd";
  app.add_option("--tmin", tmin);
  app.add_option("--tmax", tmax);
  app.add_option("--step", step);
  app.add_option("--nmax", nmax);
  app.add_option("--out", out);
  app.add_option("--single", single, "refine one form near this t instead of scanning");
  app.add_option("--parity", parity)->check(CLI::IsMember({"even", "odd"}));
  bool dump = false;
  app.add_flag("--dump", dump, "print the matching functionals over the t range and exit");
  CLI11_PARSE(app, argc, argv);

  if (dump) {
    for (double t = tmin; t <= tmax + 1e-12; t += step) {
      KBesselIt K(t, 1.0);
      const Heights h = kPairs[0];
      const int M = truncation(K, h.y2);
      std::printf("%.6f M=%d", t, M);
      for (bool odd : {false, true}) {
        const auto c1 = hejhal_solve(K, odd, h.y1, M);
        const auto c2 = hejhal_solve(K, odd, h.y2, M);
        std::printf("  %+.6e %+.6e %+.6e", c1[2], c2[2], c1[3] - c2[3]);
      }
      std::printf("\n");
    }
    return 0;
  }

  std::vector<std::pair<double, bool>> roots;
  if (single) {
    const bool odd = parity == "odd";
    const double a = *single - 0.01, b = *single + 0.01;
    bool found = false;
    for (int pair = 0; pair < 2 && !found; ++pair) {
      const Functional fa = functional(a, odd, pair), fb = functional(b, odd, pair);
      if ((fa.f2 > 0) == (fb.f2 > 0)) continue;
      const double r = refine(a, b, fa.f2, fb.f2, odd, pair);
      if (std::abs(functional(r, odd, pair).f2) > 1e-8) continue;
      roots.push_back({r, odd});
      found = true;
    }
    if (!found) {
      std::fprintf(stderr, "no eigenvalue bracketed near %g\n", *single);
      return 1;
    }
  } else {
    roots = scan(tmin, tmax, step);
  }
  std::vector<Form> forms;
  double worst = 0.0;
  for (const auto& [t, odd] : roots) {
    forms.push_back(finish_form(t, odd, nmax));
    const Form& f = forms.back();
    worst = std::max(worst, f.hecke_residual);
    std::fprintf(stderr, "%.10f %s omega=%.6e hecke=%.1e f3=%.1e\n", f.t, odd ? "odd" : "even", f.omega,
                 f.hecke_residual, f.check_f3);
  }
  const double tol = std::max(1e-10, 10.0 * worst);
  write_spectrum(out, forms, nmax, tol, "level 1 Maass cusp forms, Hejhal collocation; t range " +
                                            std::to_string(tmin) + " .. " + std::to_string(tmax));
  std::fprintf(stderr, "%zu forms written to %s (tol %.1e)\n", forms.size(), out.c_str(), tol);
  return 0;
}
