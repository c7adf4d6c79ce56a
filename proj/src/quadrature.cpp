#include "cavneg/quadrature.hpp"

#include <algorithm>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <limits>
#include <queue>
#include <sstream>

#include "cavneg/errors.hpp"

namespace cavneg {

namespace {

using Complex = std::complex<double>;
using Rule = boost::math::quadrature::gauss_kronrod<double, 31>;

struct Piece {
  double a;
  double b;
  Complex value;
  double error;
  bool operator<(const Piece& other) const { return error < other.error; }
};

// f is already expressed in the (finite) integration variable.
Piece evaluate_piece(const std::function<Complex(double)>& g, double a, double b) {
  double err = 0.0;
  const Complex v = Rule::integrate(g, a, b, 0, 0.0, &err);
  // With max_depth = 0 Boost reports the estimate on the reference interval
  // [-1, 1]; rescale it to [a, b].
  return {a, b, v, err * 0.5 * (b - a)};
}

}  // namespace

QuadratureResult integrate(const std::function<Complex(double)>& f, std::vector<double> points,
                           const QuadratureOptions& options) {
  if (points.size() < 2) throw ParameterError("quadrature needs at least two points");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  const double lo = points.front();
  const double hi = points.back();
  const bool lower_inf = std::isinf(lo);
  const bool upper_inf = std::isinf(hi);
  // Tails are mapped x = edge +/- u / (1 - u) with u in [0, 1).
  const double left_edge = lower_inf ? points[1] : lo;
  const double right_edge = upper_inf ? points[points.size() - 2] : hi;

  auto left_tail = [&](double u) {
    const double w = 1.0 - u;
    return f(left_edge - u / w) / (w * w);
  };
  auto right_tail = [&](double u) {
    const double w = 1.0 - u;
    return f(right_edge + u / w) / (w * w);
  };

  // Each queue entry remembers which transformed integrand it belongs to.
  struct Tagged {
    Piece piece;
    int which;  // 0 finite, 1 left tail, 2 right tail
    bool operator<(const Tagged& o) const { return piece < o.piece; }
  };
  const std::function<Complex(double)> integrands[3] = {f, left_tail, right_tail};

  std::priority_queue<Tagged> queue;
  if (lower_inf) queue.push({evaluate_piece(integrands[1], 0.0, 1.0), 1});
  if (upper_inf) queue.push({evaluate_piece(integrands[2], 0.0, 1.0), 2});
  for (std::size_t k = 0; k + 1 < points.size(); ++k) {
    const double a = points[k];
    const double b = points[k + 1];
    if (std::isinf(a) || std::isinf(b)) continue;
    queue.push({evaluate_piece(integrands[0], a, b), 0});
  }

  auto totals = [&queue]() {
    // priority_queue has no iteration; copy is cheap at these sizes.
    auto copy = queue;
    Complex v{};
    double e = 0.0;
    while (!copy.empty()) {
      v += copy.top().piece.value;
      e += copy.top().piece.error;
      copy.pop();
    }
    return std::pair{v, e};
  };

  auto [value, error] = totals();
  int subdivisions = 0;
  while (error > options.abs_tol) {
    if (subdivisions >= options.max_subdivisions) {
      std::ostringstream msg;
      msg << "quadrature did not converge after " << subdivisions
          << " subdivisions: achieved error estimate " << error << " > tolerance "
          << options.abs_tol;
      throw NumericalError(msg.str());
    }
    Tagged worst = queue.top();
    queue.pop();
    const double mid = 0.5 * (worst.piece.a + worst.piece.b);
    const Piece left = evaluate_piece(integrands[worst.which], worst.piece.a, mid);
    const Piece right = evaluate_piece(integrands[worst.which], mid, worst.piece.b);
    value += left.value + right.value - worst.piece.value;
    error += left.error + right.error - worst.piece.error;
    queue.push({left, worst.which});
    queue.push({right, worst.which});
    ++subdivisions;
    // Running sums drift; refresh occasionally.
    if (subdivisions % 64 == 0) {
      auto [v, e] = totals();
      value = v;
      error = e;
    }
  }
  auto [v, e] = totals();
  return {v, e, subdivisions};
}

}  // namespace cavneg
