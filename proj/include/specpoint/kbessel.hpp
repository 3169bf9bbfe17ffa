#pragma once

#include <vector>

namespace specpoint {

/// Scaled K-Bessel function of imaginary order, exp(pi t / 2) K_{it}(x), x > 0.
///
/// Built once per t: W(x) = exp(x) K_{it}(x) is started from the large-x asymptotic
/// series and carried down to x_min by Taylor steps of the ODE
///   x^2 W'' + (x - 2x^2) W' + (t^2 - x) W = 0.
/// Evaluation re-expands from the nearest node above x, so every step runs in the
/// direction where the companion solution decays. Below x_min the ascending series
/// of I_{it} is used.
class KBesselIt {
 public:
  explicit KBesselIt(double t, double x_min = 1e-6);

  double operator()(double x) const;
  double t() const { return t_; }

  /// Independent evaluation by the ascending series, usable for x up to about t.
  static double series(double t, double x);

 private:
  struct Node {
    double x, w, dw;
  };
  double asymptotic_w(double x) const;  // exp(pi t/2) W(x)
  double taylor(const Node& n, double h) const;

  double t_;
  double x_min_;
  double x_start_;
  std::vector<Node> nodes_;  // decreasing x
};

}  // namespace specpoint
