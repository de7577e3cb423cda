#include "boltzmann/scheme.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "boltzmann/errors.hpp"

namespace boltzmann {

namespace {

void validate(const IntegratorSpec& spec)
{
  if (!(spec.dt > 0.0)) {
    throw std::invalid_argument("IntegratorSpec: dt must be positive, got " +
                                std::to_string(spec.dt));
  }
  if (spec.t_end < 0.0) {
    throw std::invalid_argument(
        "IntegratorSpec: t_end must be non-negative, got " +
        std::to_string(spec.t_end));
  }
  if (spec.t_end > 0.0 && spec.dt > spec.t_end) {
    throw std::invalid_argument("IntegratorSpec: dt exceeds t_end");
  }
}

bool all_finite(const Spectrum& s)
{
  for (const Complex& c : s.coeffs()) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      return false;
    }
  }
  return true;
}

Spectrum eval_rhs(const SchemeState& state, const Spectrum& y,
                  const SchemeSetup& setup, const KernelTable& table)
{
  if (state.variant == SchemeVariant::kClassical) {
    return rhs_classical(y, table);
  }
  return rhs_steady_state(y, setup.maxwellian_hat, table);
}

}  // namespace

SchemeSetup prepare_setup(const DistributionField& initial,
                          const KernelTable& table)
{
  if (!(initial.spec() == table.grid())) {
    throw std::invalid_argument(
        "prepare_setup: initial field and kernel table grids differ");
  }
  const Moments mom = moments(initial);  // throws on degenerate data
  DistributionField maxw =
      maxwellian_field(initial.spec(), mom.rho, mom.u, mom.temperature);
  Spectrum maxw_hat = to_spectrum(maxw);
  Spectrum init_hat = to_spectrum(initial);
  Spectrum const_term = collision_spectrum(maxw_hat, maxw_hat, table);
  return SchemeSetup{initial.spec(),      mom,
                     std::move(maxw),     std::move(maxw_hat),
                     std::move(init_hat), std::move(const_term)};
}

SchemeState initial_state(SchemeVariant variant, const SchemeSetup& setup)
{
  SchemeState state{variant, setup.initial_hat, 0.0, 0};
  if (variant == SchemeVariant::kSteadyState) {
    state.unknown -= setup.maxwellian_hat;
  }
  return state;
}

Spectrum reconstruct_f(const SchemeState& state, const SchemeSetup& setup)
{
  if (state.variant == SchemeVariant::kClassical) {
    return state.unknown;
  }
  Spectrum f = setup.maxwellian_hat;
  f += state.unknown;
  return f;
}

Spectrum rhs_classical(const Spectrum& f_hat, const KernelTable& table)
{
  return collision_spectrum(f_hat, f_hat, table);
}

Spectrum rhs_steady_state(const Spectrum& g_hat, const Spectrum& m_hat,
                          const KernelTable& table)
{
  return collision_micro(g_hat, m_hat, table);
}

void step(SchemeState& state, const IntegratorSpec& spec,
          const SchemeSetup& setup, const KernelTable& table)
{
  if (!(spec.dt > 0.0)) {
    throw std::invalid_argument("step: dt must be positive");
  }
  const double dt = spec.dt;

  const Spectrum k1 = eval_rhs(state, state.unknown, setup, table);
  Spectrum stage = state.unknown;
  stage.axpy(dt / 2.0, k1);
  const Spectrum k2 = eval_rhs(state, stage, setup, table);
  stage = state.unknown;
  stage.axpy(dt / 2.0, k2);
  const Spectrum k3 = eval_rhs(state, stage, setup, table);
  stage = state.unknown;
  stage.axpy(dt, k3);
  const Spectrum k4 = eval_rhs(state, stage, setup, table);

  state.unknown.axpy(dt / 6.0, k1);
  state.unknown.axpy(dt / 3.0, k2);
  state.unknown.axpy(dt / 3.0, k3);
  state.unknown.axpy(dt / 6.0, k4);
  ++state.step_count;
  state.time = static_cast<double>(state.step_count) * dt;

  if (!all_finite(state.unknown)) {
    throw BlowUpError(state.step_count,
                      "time integration blew up at step " +
                          std::to_string(state.step_count) + " (t = " +
                          std::to_string(state.time) + ")");
  }
}

SchemeState run(SchemeState state, const IntegratorSpec& spec,
                const SchemeSetup& setup, const KernelTable& table,
                const Observer& observer, std::int64_t stride)
{
  validate(spec);
  if (stride < 1) {
    throw std::invalid_argument("run: stride must be >= 1");
  }

  // ceil(t_end / dt), robust against 3.0000000000000004-style residues.
  const double ratio = spec.t_end / spec.dt;
  const std::int64_t n_steps =
      std::max<std::int64_t>(0, static_cast<std::int64_t>(
                                    std::ceil(ratio - 1e-9)));

  if (observer) {
    observer(state.step_count, state.time, reconstruct_f(state, setup));
  }
  for (std::int64_t i = 1; i <= n_steps; ++i) {
    step(state, spec, setup, table);
    if (observer && i % stride == 0) {
      observer(state.step_count, state.time, reconstruct_f(state, setup));
    }
  }
  return state;
}

}  // namespace boltzmann
