#pragma once

#include <cstdint>
#include <functional>

#include "boltzmann/analytic.hpp"
#include "boltzmann/collision.hpp"
#include "boltzmann/grid.hpp"
#include "boltzmann/kernel.hpp"

namespace boltzmann {

/// Which formulation the integrator advances.
enum class SchemeVariant {
  kClassical,     ///< d/dt f = Q(f, f)
  kSteadyState,   ///< f = m + g, d/dt g = Q(m, g) + Q(g, m) + Q(g, g)
};

/// Fixed-step fourth-order Runge-Kutta parameters.
struct IntegratorSpec {
  double dt = 0.01;
  double t_end = 50.0;
};

/**
 * @brief Shared per-run context: the Maxwellian attractor of the initial
 *        datum and derived quantities both schemes use.
 *
 * The Maxwellian is built from the *discrete* moments of the initial
 * field, so it is the equilibrium the truncated dynamics actually
 * conserves toward, not the one of the underlying continuum datum.
 * `const_term` is Q(m, m) on the truncated grid — the equilibrium defect
 * of the classical formulation.  It is kept for diagnostics and for
 * relating the two formulations; the steady-state right-hand side never
 * evaluates it.
 */
struct SchemeSetup {
  GridSpec grid;
  Moments initial_moments;
  DistributionField maxwellian;  ///< nodal M with the discrete moments
  Spectrum maxwellian_hat;       ///< its coefficients
  Spectrum initial_hat;          ///< coefficients of the initial field
  Spectrum const_term;           ///< Q(m, m), diagnostics only
};

/// Evolving state; `unknown` is f for classical, g = f - m for steady-state.
struct SchemeState {
  SchemeVariant variant = SchemeVariant::kClassical;
  Spectrum unknown;
  double time = 0.0;
  std::int64_t step_count = 0;
};

/// Build the shared context from an initial field (computes two
/// transforms and one collision evaluation).
SchemeSetup prepare_setup(const DistributionField& initial,
                          const KernelTable& table);

/// Initial state of the chosen variant for a prepared setup.
SchemeState initial_state(SchemeVariant variant, const SchemeSetup& setup);

/// Spectrum the state represents: f itself, reconstructing m + g when
/// the unknown is the fluctuation.
Spectrum reconstruct_f(const SchemeState& state, const SchemeSetup& setup);

/// d/dt f = Q(f, f).
Spectrum rhs_classical(const Spectrum& f_hat, const KernelTable& table);

/**
 * @brief d/dt g = Q(m, g) + Q(g, m) + Q(g, g).
 *
 * Single fused pass; produces an exact zero at g = 0, which is what makes
 * the discrete Maxwellian a fixed point to the bit rather than up to
 * quadrature error.  Q(m, m) is never formed here.
 */
Spectrum rhs_steady_state(const Spectrum& g_hat, const Spectrum& m_hat,
                          const KernelTable& table);

/**
 * @brief One classical RK4 step of size spec.dt.
 *
 * Advances time to (step_count + 1) * dt (times are multiples of dt, no
 * accumulation drift).  Throws BlowUpError carrying the step index when
 * the result stops being finite.
 */
void step(SchemeState& state, const IntegratorSpec& spec,
          const SchemeSetup& setup, const KernelTable& table);

/// Called at observation times with (step index, time, current f).
using Observer =
    std::function<void(std::int64_t step, double time, const Spectrum& f_hat)>;

/**
 * @brief March ceil(t_end / dt) steps, reporting every `stride`-th step.
 *
 * The observer fires at step 0 (initial state) and at every step index
 * divisible by stride; the final step is reported only when its index is.
 * Returns the final state.  t_end = 0 performs no steps.
 */
SchemeState run(SchemeState state, const IntegratorSpec& spec,
                const SchemeSetup& setup, const KernelTable& table,
                const Observer& observer, std::int64_t stride = 1);

}  // namespace boltzmann
