#include "subfv/inner_product.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "subfv/quadrature.hpp"

namespace subfv {

Integrand Integrand::indicator(double a, double b) {
  if (!(0.0 <= a && a <= b && b <= 1.0))
    throw InvalidArgument("indicator interval must satisfy 0 <= a <= b <= 1");
  Integrand f{[a, b](double s) { return (s >= a && s <= b) ? 1.0 : 0.0; }, {}};
  for (double x : {a, b})
    if (x > 0.0 && x < 1.0) f.breakpoints.push_back(x);
  return f;
}

namespace {

constexpr int kOrder = 20;
constexpr int kMaxLevel = 9;

// Sorted, de-duplicated cut points of [lo, hi] including the ends.
std::vector<double> cut_points(double lo, double hi, std::vector<double> cuts) {
  const double eps = 1e-14 * std::max(1.0, hi - lo);
  cuts.erase(std::remove_if(cuts.begin(), cuts.end(),
                            [&](double c) { return !(c > lo + eps && c < hi - eps); }),
             cuts.end());
  cuts.push_back(lo);
  cuts.push_back(hi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end(),
                         [eps](double x, double y) { return std::abs(x - y) <= eps; }),
             cuts.end());
  cuts.front() = lo;
  cuts.back() = hi;
  return cuts;
}

// Composite Gauss-Legendre over the pieces of [lo, hi], each split in `panels`.
template <class F>
double composite(F&& f, const std::vector<double>& pieces, int panels) {
  const auto& rule = quad::gauss_legendre(kOrder);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    const double h = (pieces[p + 1] - pieces[p]) / panels;
    for (int j = 0; j < panels; ++j) {
      const double a = pieces[p] + j * h;
      const double half = 0.5 * h, mid = a + half;
      double acc = 0.0;
      for (std::size_t q = 0; q < rule.nodes.size(); ++q)
        acc += rule.weights[q] * f(mid + half * rule.nodes[q]);
      total += half * acc;
    }
  }
  return total;
}

// int_0^hi x^alpha g(x) dx for a g that is smooth between the given pieces.
// The panel touching 0 absorbs x^alpha into a Gauss-Jacobi weight.
template <class G>
double singular_at_zero(G&& g, double alpha, const std::vector<double>& pieces, int panels,
                        const quad::Rule& jacobi) {
  const auto& rule = quad::gauss_legendre(kOrder);
  double total = 0.0;
  for (std::size_t p = 0; p + 1 < pieces.size(); ++p) {
    const double h = (pieces[p + 1] - pieces[p]) / panels;
    for (int j = 0; j < panels; ++j) {
      const double a = pieces[p] + j * h;
      const double half = 0.5 * h, mid = a + half;
      double acc = 0.0;
      if (a == 0.0) {
        // x = half (1 + y): x^alpha = half^alpha (1 + y)^alpha.
        for (std::size_t q = 0; q < jacobi.nodes.size(); ++q)
          acc += jacobi.weights[q] * g(mid + half * jacobi.nodes[q]);
        total += std::pow(half, alpha + 1.0) * acc;
      } else {
        for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
          const double x = mid + half * rule.nodes[q];
          acc += rule.weights[q] * std::pow(x, alpha) * g(x);
        }
        total += half * acc;
      }
    }
  }
  return total;
}

struct KernelParts {
  double diagonal;  // int int phi psi |s-t|^alpha
  double corner;    // int int phi psi (s+t)^alpha
};

KernelParts kernel_parts(const Integrand& phi, const Integrand& psi, double alpha, int panels,
                         const quad::Rule& jacobi) {
  std::vector<double> breaks = phi.breakpoints;
  breaks.insert(breaks.end(), psi.breakpoints.begin(), psi.breakpoints.end());
  std::vector<double> with_ends = breaks;
  with_ends.push_back(0.0);
  with_ends.push_back(1.0);

  // Diagonal part: fold s > t onto s < t, t = s + r.
  //   int_0^1 r^alpha G(r) dr,  G(r) = int_0^{1-r} [phi(s) psi(s+r) + psi(s) phi(s+r)] ds.
  // G loses smoothness where r equals a difference of break points.
  std::vector<double> r_cuts;
  for (double b : with_ends)
    for (double c : with_ends)
      if (c > b) r_cuts.push_back(c - b);
  const auto r_pieces = cut_points(0.0, 1.0, r_cuts);

  auto g_diag = [&](double r) {
    std::vector<double> s_cuts = breaks;
    for (double b : breaks) s_cuts.push_back(b - r);
    const auto s_pieces = cut_points(0.0, 1.0 - r, std::move(s_cuts));
    return composite([&](double s) { return phi(s) * psi(s + r) + psi(s) * phi(s + r); },
                     s_pieces, panels);
  };
  const double diagonal = singular_at_zero(g_diag, alpha, r_pieces, panels, jacobi);

  // Corner part: w = s + t on [0, 2],
  //   int_0^2 w^alpha K(w) dw,  K(w) = int_{max(0,w-1)}^{min(1,w)} phi(s) psi(w-s) ds.
  std::vector<double> w_cuts{1.0};
  for (double b : with_ends)
    for (double c : with_ends) w_cuts.push_back(b + c);
  const auto w_pieces = cut_points(0.0, 2.0, w_cuts);

  auto k_corner = [&](double w) {
    const double lo = std::max(0.0, w - 1.0), hi = std::min(1.0, w);
    if (hi <= lo) return 0.0;
    std::vector<double> s_cuts = breaks;
    for (double b : breaks) s_cuts.push_back(w - b);
    const auto s_pieces = cut_points(lo, hi, std::move(s_cuts));
    return composite([&](double s) { return phi(s) * psi(w - s); }, s_pieces, panels);
  };
  const double corner = singular_at_zero(k_corner, alpha, w_pieces, panels, jacobi);
  return {diagonal, corner};
}

}  // namespace

double weighted_integral_covariance(const Integrand& phi, const Integrand& psi,
                                    HurstParameter h, double tol) {
  if (h.value() <= 0.5)
    throw InvalidArgument("weighted_integral_covariance requires H > 1/2: the kernel "
                          "H(2H-1)|s-t|^{2H-2} is not defined at H = 1/2");
  if (!(tol > 0.0)) throw InvalidArgument("quadrature tolerance must be positive");
  if (!phi.fn || !psi.fn) throw InvalidArgument("integrand is empty");

  const double hv = h.value();
  const double alpha = 2.0 * hv - 2.0;
  const double scale = hv * (2.0 * hv - 1.0);
  const auto jacobi = quad::gauss_jacobi(kOrder, 0.0, alpha);

  auto parts = kernel_parts(phi, psi, alpha, 1, jacobi);
  double previous = scale * (parts.diagonal - parts.corner);
  for (int level = 1; level <= kMaxLevel; ++level) {
    parts = kernel_parts(phi, psi, alpha, 1 << level, jacobi);
    const double current = scale * (parts.diagonal - parts.corner);
    // Relative to the result, or to the two kernel parts when they cancel.
    const double ref =
        std::max(std::abs(current), 1e-8 * scale * (std::abs(parts.diagonal) + std::abs(parts.corner)));
    if (std::abs(current - previous) <= tol * ref) return current;
    previous = current;
  }
  std::ostringstream msg;
  msg << "weighted_integral_covariance did not reach relative tolerance " << tol << " after "
      << kMaxLevel << " refinements";
  throw QuadratureNotConverged(msg.str());
}

}  // namespace subfv
