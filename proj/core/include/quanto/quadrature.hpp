#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace quanto {

/// n-point Gauss-Legendre rule on [-1, 1].
class GaussLegendre {
 public:
  explicit GaussLegendre(std::size_t n);

  std::size_t size() const { return nodes_.size(); }
  std::span<const double> nodes() const { return nodes_; }
  std::span<const double> weights() const { return weights_; }

  /// Rule mapped onto [lo, hi].
  double integrate(const std::function<double(double)>& f, double lo, double hi) const;

 private:
  std::vector<double> nodes_;
  std::vector<double> weights_;
};

struct PanelOptions {
  double max_panel_width = 2.0;
  double rel_tol = 1e-8;
  int max_depth = 16;
};

/// Integral of f over [lo, hi] split at `breaks` (ignored outside the range).
/// Each piece is cut into panels no wider than max_panel_width and bisected
/// until the halves agree with the whole to rel_tol.
double integrate_panels(const std::function<double(double)>& f, double lo, double hi,
                        std::span<const double> breaks, const GaussLegendre& rule,
                        const PanelOptions& opts);

}  // namespace quanto
