#include "specpoint/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "specpoint/arith.hpp"

namespace specpoint {

using arith::i64;

double MaassForm::lambda(i64 n) const {
  if (n < 1 || n > nmax()) {
    std::ostringstream os;
    os << "form t=" << std::setprecision(10) << t << ": lambda(" << n << ") outside table (nmax=" << nmax() << ")";
    throw std::out_of_range(os.str());
  }
  return hecke[static_cast<std::size_t>(n)];
}

namespace {

std::string form_name(const MaassForm& f) {
  std::ostringstream os;
  os << "t=" << std::setprecision(12) << f.t << (f.parity == Parity::odd ? " (odd)" : " (even)");
  return os.str();
}

struct HeckeWorst {
  double residual = 0.0;
  i64 m = 1, n = 1;
};

HeckeWorst hecke_worst(const MaassForm& f) {
  HeckeWorst w;
  const i64 N = f.nmax();
  for (i64 m = 2; m <= N; ++m)
    for (i64 n = m; m * n <= N; ++n) {
      const i64 g = arith::gcd(m, n);
      double s = 0.0;
      for (i64 d = 1; d <= g; ++d)
        if (g % d == 0) s += f.hecke[static_cast<std::size_t>((m / d) * (n / d))];
      const double r = std::abs(f.hecke[static_cast<std::size_t>(m)] * f.hecke[static_cast<std::size_t>(n)] - s);
      if (r > w.residual || std::isnan(r)) {
        w = {r, m, n};
        if (std::isnan(r)) return w;
      }
    }
  return w;
}

}  // namespace

double hecke_consistency(const MaassForm& f) { return hecke_worst(f).residual; }

Spectrum parse_spectrum(std::istream& in, const std::string& source) {
  Spectrum s;
  s.manifest.source = source;
  std::string line;
  int lineno = 0;
  bool have_header = false;
  auto fail = [&](const std::string& what) {
    throw SpectrumError(source + ":" + std::to_string(lineno) + ": " + what);
  };
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line[0] == '#') {
      if (line.rfind("#maass-spectrum", 0) == 0) {
        std::istringstream hs(line);
        std::string tag, version, tok;
        hs >> tag >> version;
        if (version != "v1") fail("unsupported version '" + version + "'");
        while (hs >> tok) {
          const auto eq = tok.find('=');
          if (eq == std::string::npos) fail("bad header token '" + tok + "'");
          const std::string key = tok.substr(0, eq), val = tok.substr(eq + 1);
          try {
            if (key == "nmax") s.manifest.nmax = std::stoi(val);
            else if (key == "tol") s.manifest.tol = std::stod(val);
          } catch (const std::exception&) {
            fail("bad header value '" + tok + "'");
          }
        }
        if (s.manifest.nmax < 1) fail("header needs nmax >= 1");
        if (!(s.manifest.tol > 0.0)) fail("header needs tol > 0");
        have_header = true;
      }
      continue;
    }
    if (!have_header) fail("record before '#maass-spectrum v1' header");
    std::istringstream ls(line);
    MaassForm f;
    std::string parity;
    if (!(ls >> f.t >> parity >> f.omega)) fail("expected 't parity omega lambda(2) ...'");
    if (parity == "even") f.parity = Parity::even;
    else if (parity == "odd") f.parity = Parity::odd;
    else fail("parity must be even or odd, got '" + parity + "'");
    if (!(f.t > 0.0)) fail("t must be positive");
    if (!(f.omega > 0.0)) fail("omega must be positive");
    f.hecke.assign(static_cast<std::size_t>(s.manifest.nmax) + 1, 0.0);
    f.hecke[1] = 1.0;
    for (int n = 2; n <= s.manifest.nmax; ++n) {
      if (!(ls >> f.hecke[static_cast<std::size_t>(n)])) fail("expected " + std::to_string(s.manifest.nmax - 1) + " eigenvalues, got " + std::to_string(n - 2));
      if (!std::isfinite(f.hecke[static_cast<std::size_t>(n)])) fail("non-finite eigenvalue");
    }
    std::string extra;
    if (ls >> extra) fail("trailing field '" + extra + "'");
    const HeckeWorst w = hecke_worst(f);
    if (!(w.residual <= s.manifest.tol)) {
      std::ostringstream os;
      os << "form " << form_name(f) << " fails Hecke multiplicativity at (m,n)=(" << w.m << "," << w.n
         << "): residual " << std::scientific << std::setprecision(3) << w.residual << " > tol " << s.manifest.tol;
      fail(os.str());
    }
    s.forms.push_back(std::move(f));
  }
  if (!have_header) throw SpectrumError(source + ": missing '#maass-spectrum v1' header");
  if (s.forms.empty()) throw SpectrumError(source + ": empty spectrum");
  std::stable_sort(s.forms.begin(), s.forms.end(), [](const MaassForm& a, const MaassForm& b) { return a.t < b.t; });
  s.manifest.count = s.forms.size();
  return s;
}

Spectrum load_spectrum(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpectrumError(path + ": cannot open");
  return parse_spectrum(in, path);
}

void write_spectrum(std::ostream& out, const Spectrum& s) {
  out << "#maass-spectrum v1 nmax=" << s.manifest.nmax << " tol=" << std::setprecision(3) << std::scientific
      << s.manifest.tol << "\n";
  out << std::setprecision(15);
  for (const auto& f : s.forms) {
    out << std::defaultfloat << std::setprecision(15) << f.t << (f.parity == Parity::odd ? " odd " : " even ")
        << f.omega;
    for (int n = 2; n <= s.manifest.nmax; ++n) out << ' ' << f.hecke[static_cast<std::size_t>(n)];
    out << "\n";
  }
}

std::vector<double> prime_power_eigenvalues(double lambda_p, int kmax) {
  std::vector<double> v(static_cast<std::size_t>(std::max(kmax, 1)) + 1);
  v[0] = 1.0;
  v[1] = lambda_p;
  for (int k = 1; k < kmax; ++k)
    v[static_cast<std::size_t>(k) + 1] = lambda_p * v[static_cast<std::size_t>(k)] - v[static_cast<std::size_t>(k) - 1];
  return v;
}

GL3Form::GL3Form(std::array<cplx, 3> langlands, std::vector<cplx> row, bool self_dual)
    : langlands_(langlands), row_(std::move(row)), self_dual_(self_dual) {
  if (std::abs(langlands_[0] + langlands_[1] + langlands_[2]) > 1e-12)
    throw std::invalid_argument("GL3Form: Langlands parameters must sum to zero");
  if (row_.size() < 2 || std::abs(row_[1] - 1.0) > 1e-12) throw std::invalid_argument("GL3Form: need A(1,1) = 1");
  row_[0] = 0.0;
}

cplx GL3Form::A(i64 m, i64 n) const {
  if (m < 1 || n < 1) throw std::out_of_range("GL3Form::A: indices must be positive");
  const i64 lim = row_limit();
  if (m > lim || n > lim) {
    std::ostringstream os;
    os << "GL3Form::A(" << m << "," << n << ") unavailable: coefficient row covers n <= " << lim;
    throw std::out_of_range(os.str());
  }
  if (m == 1) return row_[static_cast<std::size_t>(n)];
  if (n == 1) return std::conj(row_[static_cast<std::size_t>(m)]);
  const i64 g = arith::gcd(m, n);
  cplx s = 0.0;
  for (i64 d : arith::divisors(g)) {
    const int mu = arith::moebius(d);
    if (mu == 0) continue;
    s += static_cast<double>(mu) * std::conj(row_[static_cast<std::size_t>(m / d)]) * row_[static_cast<std::size_t>(n / d)];
  }
  return s;
}

GL3Form GL3Form::dual() const {
  std::vector<cplx> r(row_.size());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::conj(row_[i]);
  r[1] = 1.0;
  return GL3Form({-std::conj(langlands_[0]), -std::conj(langlands_[1]), -std::conj(langlands_[2])}, std::move(r),
                 self_dual_);
}

GL3Form sym_square_lift(const MaassForm& gl2, i64 x_max) {
  if (x_max < 1) throw std::invalid_argument("sym_square_lift: x_max must be >= 1");
  if (gl2.nmax() < x_max) {
    std::ostringstream os;
    os << "sym_square_lift: lambda(p) needed for primes p <= " << x_max << "; form " << form_name(gl2)
       << " has nmax=" << gl2.nmax() << " (required nmax >= " << x_max << ")";
    throw std::invalid_argument(os.str());
  }
  std::vector<cplx> row(static_cast<std::size_t>(x_max) + 1, 0.0);
  row[1] = 1.0;
  // A(1, .) is multiplicative; at p^k it is sum_{j <= k/2} lambda(p^{2(k-2j)})
  std::vector<i64> spf(static_cast<std::size_t>(x_max) + 1, 0);
  for (i64 i = 2; i <= x_max; ++i)
    if (spf[static_cast<std::size_t>(i)] == 0)
      for (i64 j = i; j <= x_max; j += i)
        if (spf[static_cast<std::size_t>(j)] == 0) spf[static_cast<std::size_t>(j)] = i;
  std::vector<std::vector<double>> local(static_cast<std::size_t>(x_max) + 1);
  for (i64 n = 2; n <= x_max; ++n) {
    const i64 p = spf[static_cast<std::size_t>(n)];
    i64 pk = 1, rest = n;
    int k = 0;
    while (rest % p == 0) {
      rest /= p;
      pk *= p;
      ++k;
    }
    auto& loc = local[static_cast<std::size_t>(p)];
    if (loc.empty()) {
      int kmax = 0;
      for (i64 q = p; q <= x_max / p; q *= p) ++kmax;
      ++kmax;
      const auto lp = prime_power_eigenvalues(gl2.lambda(p), 2 * kmax);
      loc.assign(static_cast<std::size_t>(kmax) + 1, 0.0);
      for (int kk = 0; kk <= kmax; ++kk)
        for (int j = 0; 2 * j <= kk; ++j) loc[static_cast<std::size_t>(kk)] += lp[static_cast<std::size_t>(2 * (kk - 2 * j))];
    }
    row[static_cast<std::size_t>(n)] = loc[static_cast<std::size_t>(k)] * row[static_cast<std::size_t>(rest)];
  }
  const cplx l1(0.0, 2.0 * gl2.t);
  return GL3Form({l1, 0.0, -l1}, std::move(row), true);
}

double rankin_selberg_ratio(const GL3Form& f, i64 X) {
  if (X < 1) throw std::invalid_argument("rankin_selberg_ratio: X must be >= 1");
  double s = 0.0;
  for (i64 m = 1; m * m <= X; ++m)
    for (i64 n = 1; m * m * n <= X; ++n) s += std::norm(f.A(m, n));
  return s / static_cast<double>(X);
}

double coefficient_box_sum(const GL3Form& f, i64 X, i64 Y) {
  double s = 0.0;
  for (i64 m = 1; m <= X; ++m)
    for (i64 n = 1; n <= Y; ++n) s += std::norm(f.A(m, n));
  return s;
}

void export_gl3_csv(std::ostream& out, const GL3Form& f, i64 X) {
  out << "# langlands";
  for (const auto& l : f.langlands()) out << ' ' << std::setprecision(17) << l.real() << ' ' << l.imag();
  out << (f.self_dual() ? " self_dual" : " general") << "\n";
  out << "m,n,re,im\n";
  for (i64 m = 1; m * m <= X; ++m)
    for (i64 n = 1; m * m * n <= X; ++n) {
      const cplx a = f.A(m, n);
      out << m << ',' << n << ',' << std::setprecision(17) << a.real() << ',' << a.imag() << "\n";
    }
}

GL3Form import_gl3_csv(std::istream& in) {
  std::string line;
  std::array<cplx, 3> lam{};
  bool have_params = false, self_dual = false;
  std::vector<cplx> row(2, 0.0);
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line.rfind("# langlands", 0) == 0) {
      std::istringstream ls(line.substr(11));
      double re, im;
      for (auto& l : lam) {
        if (!(ls >> re >> im)) throw std::invalid_argument("gl3 csv: malformed langlands line " + std::to_string(lineno));
        l = {re, im};
      }
      std::string kind;
      ls >> kind;
      self_dual = kind == "self_dual";
      have_params = true;
      continue;
    }
    if (line[0] == '#' || line.rfind("m,n", 0) == 0) continue;
    std::istringstream ls(line);
    i64 m, n;
    double re, im;
    char c1, c2, c3;
    if (!(ls >> m >> c1 >> n >> c2 >> re >> c3 >> im) || c1 != ',' || c2 != ',' || c3 != ',')
      throw std::invalid_argument("gl3 csv: malformed record at line " + std::to_string(lineno));
    if (m != 1) continue;
    if (n >= static_cast<i64>(row.size())) row.resize(static_cast<std::size_t>(n) + 1, cplx(NAN, NAN));
    row[static_cast<std::size_t>(n)] = {re, im};
  }
  if (!have_params) throw std::invalid_argument("gl3 csv: missing '# langlands' line");
  for (std::size_t n = 1; n < row.size(); ++n)
    if (std::isnan(row[n].real())) throw std::invalid_argument("gl3 csv: A(1," + std::to_string(n) + ") missing");
  return GL3Form(lam, std::move(row), self_dual);
}

}  // namespace specpoint
