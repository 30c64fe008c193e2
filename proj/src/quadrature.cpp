#include "edgediff/quadrature.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <queue>
#include <string>
#include <vector>

#include "edgediff/errors.hpp"

namespace edgediff {

namespace {

// Kronrod abscissae on [-1, 1] (non-negative half); odd entries are the
// Gauss 7-point nodes.
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};

constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};

constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  int depth;
  Complex value;
  double error;
};

struct WorseFirst {
  bool operator()(const Panel& lhs, const Panel& rhs) const {
    if (lhs.error != rhs.error) return lhs.error < rhs.error;
    return lhs.a > rhs.a;
  }
};

class PanelRule {
 public:
  PanelRule(const std::function<Complex(double)>& f, std::size_t& evals)
      : f_(f), evals_(evals) {}

  Panel apply(double a, double b, int depth) const {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const Complex fc = sample(center);
    Complex kronrod = fc * kWgk[7];
    Complex gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
      const double dx = half * kXgk[j];
      const Complex sum = sample(center - dx) + sample(center + dx);
      kronrod += kWgk[j] * sum;
      if (j % 2 == 1) gauss += kWg[j / 2] * sum;
    }
    kronrod *= half;
    gauss *= half;
    return {a, b, depth, kronrod, std::abs(kronrod - gauss)};
  }

 private:
  Complex sample(double x) const {
    const Complex v = f_(x);
    ++evals_;
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw NonFiniteError(
          "integrand is not finite at x = " + std::to_string(x), x);
    }
    return v;
  }

  const std::function<Complex(double)>& f_;
  std::size_t& evals_;
};

void seed_partition(double a, double b, int depth,
                    const QuadratureOptions& options,
                    std::vector<std::pair<double, double>>& out) {
  constexpr double kMaxPhase = std::numbers::pi / 4.0;
  // Iterative to keep deep oscillatory partitions off the call stack.
  std::vector<std::tuple<double, double, int>> stack{{a, b, depth}};
  while (!stack.empty()) {
    auto [lo, hi, d] = stack.back();
    stack.pop_back();
    const double mid = 0.5 * (lo + hi);
    const double phase = std::abs(options.phase_rate(mid)) * (hi - lo);
    if (phase > kMaxPhase && d < options.max_depth) {
      stack.emplace_back(mid, hi, d + 1);
      stack.emplace_back(lo, mid, d + 1);
    } else {
      out.emplace_back(lo, hi);
    }
    if (out.size() > options.max_panels) {
      throw ConvergenceError("phase-limited partition exceeds max_panels",
                             Complex{}, INFINITY);
    }
  }
}

}  // namespace

QuadratureResult integrate_complex(const std::function<Complex(double)>& f,
                                   double a, double b, double tol_abs,
                                   double tol_rel,
                                   const QuadratureOptions& options) {
  if (!(a <= b) || !std::isfinite(a) || !std::isfinite(b)) {
    throw DomainError("integrate_complex requires finite a <= b");
  }
  if (!(tol_abs > 0.0) || !(tol_rel > 0.0)) {
    throw DomainError("integrate_complex requires positive tolerances");
  }
  QuadratureResult result;
  if (a == b) return result;

  std::size_t evals = 0;
  const PanelRule rule(f, evals);

  std::vector<std::pair<double, double>> seeds;
  if (options.phase_rate) {
    seed_partition(a, b, 0, options, seeds);
  } else {
    seeds.emplace_back(a, b);
  }

  // Seeds need their depth for the depth limit; recompute it from width.
  const double width = b - a;
  std::priority_queue<Panel, std::vector<Panel>, WorseFirst> queue;
  Complex total{};
  double total_error = 0.0;
  for (const auto& [lo, hi] : seeds) {
    const int depth =
        static_cast<int>(std::lround(std::log2(width / (hi - lo))));
    Panel p = rule.apply(lo, hi, depth);
    total += p.value;
    total_error += p.error;
    queue.push(p);
  }

  auto collect = [&]() {
    // Sum in abscissa order so the result does not depend on heap layout.
    std::vector<Panel> panels;
    panels.reserve(queue.size());
    while (!queue.empty()) {
      panels.push_back(queue.top());
      queue.pop();
    }
    std::sort(panels.begin(), panels.end(),
              [](const Panel& l, const Panel& r) { return l.a < r.a; });
    Complex sum{};
    double err = 0.0;
    for (const auto& p : panels) {
      sum += p.value;
      err += p.error;
    }
    for (auto& p : panels) queue.push(p);
    return std::pair{sum, err};
  };

  for (;;) {
    const double target = std::max(tol_abs, tol_rel * std::abs(total));
    if (total_error <= target) {
      // Running sums drift; confirm with a fresh ordered sum.
      auto [sum, err] = collect();
      total = sum;
      total_error = err;
      if (total_error <= std::max(tol_abs, tol_rel * std::abs(total))) break;
    }
    const Panel worst = queue.top();
    if (worst.depth >= options.max_depth || queue.size() >= options.max_panels) {
      auto [sum, err] = collect();
      throw ConvergenceError(
          "adaptive quadrature did not converge (error estimate " +
              std::to_string(err) + ")",
          sum, err);
    }
    queue.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    const Panel left = rule.apply(worst.a, mid, worst.depth + 1);
    const Panel right = rule.apply(mid, worst.b, worst.depth + 1);
    total += left.value + right.value - worst.value;
    total_error += left.error + right.error - worst.error;
    queue.push(left);
    queue.push(right);
  }

  result.value = total;
  result.abs_error_estimate = total_error;
  result.evaluations = evals;
  return result;
}

}  // namespace edgediff
