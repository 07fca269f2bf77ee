"""Named verification checks for a run: each builds a report and judges it against the thresholds."""

from dataclasses import dataclass, field
from typing import Callable, Optional, Union

import numpy as np

from travelwave.config.verification import VerificationSettings
from travelwave.core.exceptions import InapplicableCheckError, RejectedInputError
from travelwave.domain.entity.enums import Scenario, VerifyCheck
from travelwave.domain.entity.model import WaveParams
from travelwave.domain.entity.phase import Trajectory
from travelwave.domain.entity.report import IntegratorReport, ResidualReport
from travelwave.domain.entity.solution import PowerLawSolution
from travelwave.domain.schema.run_config import RunConfig
from travelwave.domain.service import closed_form, nbody_reference, residual_lab


@dataclass
class CheckOutcome:
    check: VerifyCheck
    passed: bool
    report: Optional[Union[ResidualReport, IntegratorReport]] = None
    failures: list[str] = field(default_factory=list)
    skipped: Optional[str] = None
    trajectory: Optional[Trajectory] = None

    @property
    def report_name(self) -> str:
        return f"report_{self.check.value}.json"


Check = Callable[[], CheckOutcome]


def ode_check(config: RunConfig, sol: PowerLawSolution, thresholds: VerificationSettings) -> CheckOutcome:
    w = config.grid.values()
    a, b = sol.domain
    if not (w.min() > a and w.max() < b):
        raise RejectedInputError(
            f"[grid] w in [{config.grid.w_min}, {config.grid.w_max}] leaves the solution domain ({a}, {b})",
            details={"grid": [config.grid.w_min, config.grid.w_max], "domain": [a, b]},
        )
    report = residual_lab.ode_residual(sol, config.body, config.params, w)
    failures = []
    if not report.max_rel_residual <= thresholds.ode_rel_tol:
        failures.append(f"relative residual {report.max_rel_residual!r} > {thresholds.ode_rel_tol!r}")
    return CheckOutcome(check=VerifyCheck.ODE, passed=not failures, report=report, failures=failures)


def _order_failures(report: ResidualReport, thresholds: VerificationSettings) -> list[str]:
    if thresholds.order_passes(report.estimated_order):
        return []
    return [f"estimated order {report.estimated_order!r} outside "
            f"[{thresholds.pde_order_min}, {thresholds.pde_order_max}]"]


def pde_check(config: RunConfig, sol: PowerLawSolution, thresholds: VerificationSettings) -> CheckOutcome:
    params = config.params
    field_fn = residual_lab.TravelingField(sol, params)
    report = residual_lab.companion_pde_residual(field_fn, params, config.body, config.lattice.to_lattice(params))
    failures = _order_failures(report, thresholds)
    return CheckOutcome(check=VerifyCheck.PDE, passed=not failures, report=report, failures=failures)


def linear_wave_check(config: RunConfig, sol: PowerLawSolution, thresholds: VerificationSettings) -> CheckOutcome:
    params = config.params
    field_fn = residual_lab.TravelingField(sol, params)
    try:
        report = residual_lab.linear_wave_residual(field_fn, params, config.lattice.to_lattice(params))
    except InapplicableCheckError as exc:
        return CheckOutcome(check=VerifyCheck.LINEAR_WAVE, passed=True, skipped=exc.message)
    failures = _order_failures(report, thresholds)
    return CheckOutcome(check=VerifyCheck.LINEAR_WAVE, passed=not failures, report=report, failures=failures)


def newtonian_reduction(config: RunConfig) -> PowerLawSolution:
    """The closed form the integrator is compared with: w = t, v = 0, mu = -1"""
    if config.scenario == Scenario.REL2BODY:
        return closed_form.relative_2body_solution(config.body, WaveParams.newtonian(q=1), config.direction)
    return closed_form.ncme_collision_solution(config.body, config.direction)


def rk4_check(config: RunConfig, thresholds: VerificationSettings) -> CheckOutcome:
    spec = config.rk4
    reference = newtonian_reduction(config)
    initial = nbody_reference.initial_state_from_solution(reference, spec.t0)
    trajectory = nbody_reference.rk4_integrate(
        initial, config.body, spec.t_end, spec.h, thresholds.collision_threshold
    )
    deviation = nbody_reference.deviation_from_solution(trajectory, reference)
    energy = float(np.max(np.abs(trajectory.energy(config.body))))
    momentum = float(np.max(np.linalg.norm(trajectory.angular_momentum(config.body), axis=1)))
    report = IntegratorReport(
        scenario=config.scenario.value,
        t0=spec.t0,
        t_end=spec.t_end,
        h=spec.h,
        steps=len(trajectory) - 1,
        max_deviation=deviation,
        max_abs_energy=energy,
        max_angular_momentum=momentum,
    )

    failures = []
    if not deviation <= thresholds.rk4_max_deviation:
        failures.append(f"max deviation {deviation!r} > {thresholds.rk4_max_deviation!r}")
    if not energy <= thresholds.rk4_max_energy:
        failures.append(f"max |E| {energy!r} > {thresholds.rk4_max_energy!r}")
    if not momentum <= thresholds.rk4_max_angular_momentum:
        failures.append(f"max |L| {momentum!r} > {thresholds.rk4_max_angular_momentum!r}")
    return CheckOutcome(check=VerifyCheck.RK4, passed=not failures, report=report,
                        failures=failures, trajectory=trajectory)


def build_checks(
    config: RunConfig, sol: PowerLawSolution, thresholds: VerificationSettings
) -> dict[VerifyCheck, Check]:
    """Zero-argument callables for every check the run can perform"""
    return {
        VerifyCheck.ODE: lambda: ode_check(config, sol, thresholds),
        VerifyCheck.PDE: lambda: pde_check(config, sol, thresholds),
        VerifyCheck.LINEAR_WAVE: lambda: linear_wave_check(config, sol, thresholds),
        VerifyCheck.RK4: lambda: rk4_check(config, thresholds),
    }
