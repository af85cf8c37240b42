// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <functional>
#include <vector>

#include "dynamics/state.hpp"

namespace liedrag {

/// Time derivatives of the ideal MHD system in rotational form plus the
/// advected-gauge potential, Gamma and the Clebsch scalars. Every returned
/// field is truncated to the retained mode cube. Magnetic terms are skipped
/// when B, Atilde and Gamma are identically zero, since they then stay zero.
StateDerivative rhs(const MhdState& s);

/// s + a * d, with time advanced by time_step.
MhdState axpy(const MhdState& s, double a, const StateDerivative& d, double time_step);

/// The four classical RK4 stage states (t, t+dt/2, t+dt/2, t+dt).
using StageStates = std::array<MhdState, 4>;

/// Classical four-stage Runge-Kutta step. When `stages` is given, it receives
/// the states at which the right-hand side was evaluated so passive tracers can
/// be integrated consistently.
MhdState step_rk4(const MhdState& s, double dt, StageStates* stages = nullptr);

/// cfl * min(h) / max(|u| + c_s + |B| / sqrt(mu0 rho)); falls back to
/// cfl * min(h) when every signal speed vanishes.
double cfl_dt(const MhdState& s, double cfl);

struct RunOptions {
  double t_end = 1.0;
  double cfl = 0.25;
  double fixed_dt = 0.0;               // > 0 overrides the CFL step
  std::vector<double> observe_times;   // absolute times, ascending; t_end is always observed
};

using Observer = std::function<void(const MhdState&)>;
using StageHook = std::function<void(const StageStates&, double dt)>;

struct RunStats {
  int steps = 0;
  double last_dt = 0.0;
};

/// Advance to opts.t_end, landing exactly on every observation time. The
/// observer is called at each time in observe_times that lies in (s.t, t_end]
/// and at t_end. Non-finite values or rho <= 0 raise BlowupError carrying the
/// last valid time.
MhdState run(MhdState s, const RunOptions& opts, const Observer& observer = {},
             const StageHook& stage_hook = {}, RunStats* stats = nullptr);

/// Throws BlowupError if s has non-finite values or non-positive density.
void check_health(const MhdState& s, double last_valid_time);

}  // namespace liedrag
