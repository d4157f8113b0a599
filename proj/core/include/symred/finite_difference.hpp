#pragma once

#include <type_traits>
#include <utility>

namespace symred {

// Fourth-order central difference of a one-parameter family f(t) at t = 0.
// Works for any return type with vector-space arithmetic (double, Eigen).
template <class F>
auto central_difference(F&& f, double h) {
  using Result = std::decay_t<decltype(f(h))>;
  const Result plus2 = f(2.0 * h);
  const Result plus1 = f(h);
  const Result minus1 = f(-h);
  const Result minus2 = f(-2.0 * h);
  return Result(((minus2 - plus2) + 8.0 * (plus1 - minus1)) / (12.0 * h));
}

}  // namespace symred
