#pragma once

// Adaptive embedded Runge-Kutta integration (Dormand-Prince 5(4)) of linear or
// nonlinear complex ODE systems, with exact stops at output times and at
// impulse events.

#include "iohoem/operators.hpp"

#include <functional>
#include <limits>
#include <vector>

namespace iohoem {

using StateVector = std::vector<cplx>;
// Writes dy = f(t, y); y and dy have the state length.
using RhsFn = std::function<void(double t, const cplx* y, cplx* dy)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-12;
    double h_init = 0.0;  // 0 selects the starting step automatically
    double h_max = std::numeric_limits<double>::infinity();
    std::size_t max_steps = 20'000'000;
};

// An impulse applied atomically at `time`. An empty `apply` marks a
// breakpoint: the integrator stops and restarts there (used for kernels with
// a discontinuity).
struct OdeEvent {
    double time = 0.0;
    std::function<void(StateVector&)> apply;
};

struct OdeStats {
    std::size_t accepted = 0;
    std::size_t rejected = 0;
    std::size_t rhs_evals = 0;
};

// Integrates from (t0, y0) and returns the state at every time of t_grid
// (increasing, all >= t0). Events whose time equals an output time are applied
// before that output is recorded.
std::vector<StateVector> integrate_ode(const RhsFn& f, StateVector y0, double t0,
                                       const std::vector<double>& t_grid,
                                       std::vector<OdeEvent> events = {},
                                       const OdeOptions& opts = {}, OdeStats* stats = nullptr);

}  // namespace iohoem
