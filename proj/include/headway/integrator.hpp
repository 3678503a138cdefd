#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace headway {

template <std::size_t N>
using StateVector = std::array<double, N>;

template <std::size_t N>
struct Trajectory {
  std::vector<double> times;
  std::vector<StateVector<N>> states;
  bool converged = false;  // the stop predicate fired before max_time
};

/// One classical fourth-order Runge-Kutta step of size h for y' = f(t, y).
template <std::size_t N, class Field>
StateVector<N> rk4_step(const Field& f, double t, const StateVector<N>& y, double h) {
  auto shifted = [&y](const StateVector<N>& k, double scale) {
    StateVector<N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + scale * k[i];
    return out;
  };
  const StateVector<N> k1 = f(t, y);
  const StateVector<N> k2 = f(t + 0.5 * h, shifted(k1, 0.5 * h));
  const StateVector<N> k3 = f(t + 0.5 * h, shifted(k2, 0.5 * h));
  const StateVector<N> k4 = f(t + h, shifted(k3, h));
  StateVector<N> next;
  for (std::size_t i = 0; i < N; ++i) next[i] = y[i] + (h / 6.0) * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
  return next;
}

struct NoProjection {
  template <std::size_t N>
  void operator()(StateVector<N>&) const {}
};

/// Fixed-step RK4 with dense output at every step. Stops as soon as
/// stop(t, y) holds (checked at t = 0 and after every step) or when t reaches
/// max_time; the final step is shortened to land on max_time exactly.
/// project(y) runs after every step and may clamp state components.
template <std::size_t N, class Field, class Stop, class Project = NoProjection>
Trajectory<N> integrate(const Field& f, StateVector<N> y, double step, double max_time, const Stop& stop,
                        const Project& project = {}) {
  if (!(step > 0.0) || !std::isfinite(step)) throw std::invalid_argument("integrate: step must be positive");
  if (!(max_time > 0.0) || !std::isfinite(max_time)) {
    throw std::invalid_argument("integrate: max_time must be positive");
  }
  Trajectory<N> out;
  const auto n_steps = static_cast<std::size_t>(std::ceil(max_time / step - 1e-9));
  out.times.reserve(n_steps + 1);
  out.states.reserve(n_steps + 1);

  double t = 0.0;
  out.times.push_back(t);
  out.states.push_back(y);
  if (stop(t, y)) {
    out.converged = true;
    return out;
  }
  for (std::size_t k = 1; k <= n_steps; ++k) {
    const double t_next = k == n_steps ? max_time : static_cast<double>(k) * step;
    y = rk4_step(f, t, y, t_next - t);
    project(y);
    t = t_next;
    out.times.push_back(t);
    out.states.push_back(y);
    if (stop(t, y)) {
      out.converged = true;
      break;
    }
  }
  return out;
}

}  // namespace headway
