#include "rmtlab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <vector>

#include "rmtlab/errors.hpp"

namespace rmtlab {

namespace {

// 15-point Kronrod nodes/weights with the embedded 7-point Gauss rule (QUADPACK qk15).
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

constexpr int kMaxIntervals = 2000;
constexpr double kEps = std::numeric_limits<double>::epsilon();

struct Interval {
  double a, b, value, error, abs_value;
  bool operator<(const Interval& o) const { return error < o.error; }
};

Interval gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) {
      gauss += kWg[j / 2] * (f1 + f2);
    }
  }
  const double value = kronrod * half;
  const double abs_value = abs_sum * std::abs(half);
  // Error below what the rounding of the 15 samples can resolve is reported at that floor.
  const double error = std::max(std::abs((kronrod - gauss) * half), 50.0 * kEps * abs_value);
  return {a, b, value, error, abs_value};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double rel_tol) {
  if (!std::isfinite(a) || !std::isfinite(b)) {
    throw InvalidArgument("integrate: limits must be finite");
  }
  if (a == b) {
    return {};
  }

  std::priority_queue<Interval> heap;
  const Interval whole = gk15(f, a, b);
  double value = whole.value;
  double error = whole.error;
  double abs_value = whole.abs_value;
  heap.push(whole);

  const auto converged = [&] {
    return error <= rel_tol * std::abs(value) || error <= 50.0 * kEps * abs_value;
  };
  for (int n = 1; n < kMaxIntervals && !converged(); ++n) {
    const Interval worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > std::min(worst.a, worst.b) && mid < std::max(worst.a, worst.b))) {
      break;  // interval cannot be split further in double precision
    }
    heap.pop();
    const Interval left = gk15(f, worst.a, mid);
    const Interval right = gk15(f, mid, worst.b);
    value += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    abs_value += left.abs_value + right.abs_value - worst.abs_value;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum to shed the drift of the running totals.
  value = 0.0;
  error = 0.0;
  while (!heap.empty()) {
    value += heap.top().value;
    error += heap.top().error;
    heap.pop();
  }
  if (!std::isfinite(value)) {
    throw DiagnosticsError("integrate: non-finite integral");
  }
  return {value, error};
}

}  // namespace rmtlab
