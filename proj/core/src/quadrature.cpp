#include "quanto/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace quanto {

GaussLegendre::GaussLegendre(std::size_t n) : nodes_(n), weights_(n) {
  if (n < 2) throw std::invalid_argument("Gauss-Legendre rule needs at least 2 nodes");
  const unsigned order = static_cast<unsigned>(n);
  for (std::size_t i = 0; i < (n + 1) / 2; ++i) {
    // Newton from the Chebyshev-like initial guess; roots are symmetric.
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) /
                        (static_cast<double>(n) + 0.5));
    double deriv = 0.0;
    for (int it = 0; it < 100; ++it) {
      const double p = std::legendre(order, x);
      const double p_prev = std::legendre(order - 1, x);
      deriv = static_cast<double>(n) * (x * p - p_prev) / (x * x - 1.0);
      const double step = p / deriv;
      x -= step;
      if (std::abs(step) < 1e-16) break;
    }
    const double p_prev = std::legendre(order - 1, x);
    deriv = static_cast<double>(n) * (x * std::legendre(order, x) - p_prev) / (x * x - 1.0);
    const double w = 2.0 / ((1.0 - x * x) * deriv * deriv);
    nodes_[i] = -x;
    nodes_[n - 1 - i] = x;
    weights_[i] = w;
    weights_[n - 1 - i] = w;
  }
}

double GaussLegendre::integrate(const std::function<double(double)>& f, double lo,
                                double hi) const {
  const double half = 0.5 * (hi - lo);
  const double mid = 0.5 * (hi + lo);
  double sum = 0.0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) sum += weights_[i] * f(mid + half * nodes_[i]);
  return half * sum;
}

namespace {

double refine(const std::function<double(double)>& f, double lo, double hi, double whole,
              const GaussLegendre& rule, const PanelOptions& opts, int depth) {
  const double mid = 0.5 * (lo + hi);
  const double left = rule.integrate(f, lo, mid);
  const double right = rule.integrate(f, mid, hi);
  const double fine = left + right;
  if (depth >= opts.max_depth || std::abs(fine - whole) <= opts.rel_tol * std::abs(fine) ||
      fine == whole) {
    return fine;
  }
  return refine(f, lo, mid, left, rule, opts, depth + 1) +
         refine(f, mid, hi, right, rule, opts, depth + 1);
}

}  // namespace

double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        std::span<const double> breaks, const GaussLegendre& rule,
                        const PanelOptions& opts) {
  if (!(hi > lo)) return 0.0;
  std::vector<double> cuts{lo, hi};
  for (double b : breaks) {
    if (b > lo && b < hi) cuts.push_back(b);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

  double total = 0.0;
  for (std::size_t j = 0; j + 1 < cuts.size(); ++j) {
    const double a = cuts[j];
    const double b = cuts[j + 1];
    const auto pieces =
        std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil((b - a) / opts.max_panel_width)));
    const double width = (b - a) / static_cast<double>(pieces);
    for (std::size_t k = 0; k < pieces; ++k) {
      const double p_lo = a + width * static_cast<double>(k);
      const double p_hi = k + 1 == pieces ? b : p_lo + width;
      total += refine(f, p_lo, p_hi, rule.integrate(f, p_lo, p_hi), rule, opts, 0);
    }
  }
  return total;
}

}  // namespace quanto
