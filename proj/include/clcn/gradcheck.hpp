#pragma once

#include <cmath>
#include <utility>

#include "clcn/errors.hpp"
#include "clcn/graph.hpp"
#include "clcn/tensor.hpp"

namespace clcn {

/// Central-finite-difference check of a scalar-valued tensor function.
///
/// `f(graph, x)` must build a scalar from the already-recorded leaf `x` and
/// must not capture graph state between calls: it is re-evaluated on a fresh
/// graph for every probe. Training arithmetic is 32-bit; this oracle runs the
/// same templated ops in 64-bit so the difference quotients themselves do not
/// eat into the tolerance being verified.
///
/// Returns max_i |analytic_i - (f(x+h e_i) - f(x-h e_i)) / 2h| / max(1, |analytic_i|).
template <typename F>
double grad_check(F&& f, const Tensor64& point, double h = 1e-3) {
  if (!(h >= 1e-6 && h <= 1e-2))
    throw ContractError("grad_check: h must lie in [1e-6, 1e-2]");

  auto eval = [&](const Tensor64& at) {
    Graph64 g;
    Tensor64 x = g.var(at);
    Tensor64 out = f(g, x);
    if (!out.is_scalar()) throw ContractError("grad_check: f must return a scalar");
    const double v = out.item();
    if (!std::isfinite(v)) throw NumericError("grad_check: non-finite value at probe point");
    return v;
  };

  Graph64 g;
  Tensor64 x = g.var(point);
  Tensor64 out = f(g, x);
  if (!out.is_scalar()) throw ContractError("grad_check: f must return a scalar");
  if (!std::isfinite(out.item()))
    throw NumericError("grad_check: non-finite value at the expansion point");
  g.backward(out);
  const Tensor64 analytic = g.grad(x);

  double max_err = 0.0;
  Tensor64 probe = point;
  for (std::size_t i = 0; i < point.numel(); ++i) {
    const double orig = probe.values[i];
    probe.values[i] = orig + h;
    const double up = eval(probe);
    probe.values[i] = orig - h;
    const double down = eval(probe);
    probe.values[i] = orig;
    const double fd = (up - down) / (2.0 * h);
    const double a = analytic.values[i];
    const double err = std::abs(a - fd) / std::max(1.0, std::abs(a));
    max_err = std::max(max_err, err);
  }
  return max_err;
}

}  // namespace clcn
