import time

import pytest

from travelwave.config.verification import VerificationSettings
from travelwave.domain.entity.enums import Scenario, VerifyCheck
from travelwave.domain.entity.model import BodyConfig
from travelwave.domain.entity.report import IntegratorReport
from travelwave.domain.schema.run_config import GridSpec, RunConfig
from travelwave.domain.service import closed_form
from travelwave.infrastructure.verification.checks import CheckOutcome, build_checks
from travelwave.infrastructure.verification.manager import VerificationManager


def passing(check: VerifyCheck, delay: float = 0.0):
    def run():
        time.sleep(delay)
        return CheckOutcome(check=check, passed=True)

    return run


@pytest.fixture
def relative_config(unit_body, moving_params):
    return RunConfig(body=unit_body, wave=moving_params, scenario=Scenario.REL2BODY, direction=(1, 0, 0),
                     grid=GridSpec(w_min=0.5, w_max=5.0, points=51))


@pytest.fixture
def collision_config():
    return RunConfig(body=BodyConfig(G=1.0, m1=1.0, m2=2.0), scenario=Scenario.NCME_COLLISION,
                     direction=(0.0, 0.6, 0.8))


class TestVerificationManager:
    def test_register_once(self):
        manager = VerificationManager(num_threads=2)
        manager.register(VerifyCheck.ODE, passing(VerifyCheck.ODE))
        with pytest.raises(ValueError, match="already registered"):
            manager.register(VerifyCheck.ODE, passing(VerifyCheck.ODE))
        assert manager.list() == [VerifyCheck.ODE]

    def test_unknown_check(self):
        manager = VerificationManager(num_threads=1)
        with pytest.raises(ValueError, match="not found"):
            manager.run([VerifyCheck.PDE])

    def test_results_follow_the_requested_order(self):
        manager = VerificationManager(num_threads=4)
        manager.register_all({
            VerifyCheck.ODE: passing(VerifyCheck.ODE, delay=0.05),
            VerifyCheck.PDE: passing(VerifyCheck.PDE),
            VerifyCheck.RK4: passing(VerifyCheck.RK4, delay=0.02),
        })
        order = [VerifyCheck.RK4, VerifyCheck.ODE, VerifyCheck.RK4, VerifyCheck.PDE]
        outcomes = manager.run(order)
        assert [o.check for o in outcomes] == [VerifyCheck.RK4, VerifyCheck.ODE, VerifyCheck.PDE]

    def test_nothing_to_run(self):
        assert VerificationManager(num_threads=1).run([]) == []

    def test_thread_count_defaults_to_settings(self):
        manager = VerificationManager()
        assert manager.num_threads >= 1
        assert "threads=" in repr(manager)


class TestChecks:
    def test_relative_run_passes_everything(self, relative_config):
        sol = closed_form.relative_2body_solution(relative_config.body, relative_config.params, (1, 0, 0))
        manager = VerificationManager(num_threads=2)
        manager.register_all(build_checks(relative_config, sol, VerificationSettings()))
        outcomes = manager.run(list(VerifyCheck))
        assert all(o.passed for o in outcomes), [o.failures for o in outcomes]
        assert [o.report_name for o in outcomes] == [
            "report_ode.json", "report_pde.json", "report_linear-wave.json", "report_rk4.json",
        ]
        rk4 = outcomes[-1]
        assert isinstance(rk4.report, IntegratorReport) and rk4.report.steps == 1000
        assert len(rk4.trajectory) == 1001

    def test_linear_wave_is_inapplicable_for_a_collision(self, collision_config):
        sol = closed_form.ncme_collision_solution(collision_config.body, collision_config.direction)
        outcome = build_checks(collision_config, sol, VerificationSettings())[VerifyCheck.LINEAR_WAVE]()
        assert outcome.passed and outcome.report is None
        assert "v = 0" in outcome.skipped

    def test_collision_pde_is_second_order(self, collision_config):
        sol = closed_form.ncme_collision_solution(collision_config.body, collision_config.direction)
        outcome = build_checks(collision_config, sol, VerificationSettings())[VerifyCheck.PDE]()
        assert outcome.passed, outcome.failures

    def test_tight_thresholds_fail(self, collision_config):
        sol = closed_form.ncme_collision_solution(collision_config.body, collision_config.direction)
        thresholds = VerificationSettings(rk4_max_deviation=1e-300)
        outcome = build_checks(collision_config, sol, thresholds)[VerifyCheck.RK4]()
        assert not outcome.passed
        assert outcome.failures[0].startswith("max deviation")

    def test_order_window(self):
        thresholds = VerificationSettings()
        assert thresholds.order_passes(2.0)
        assert not thresholds.order_passes(None)
        assert not thresholds.order_passes(1.0)
        with pytest.raises(ValueError):
            VerificationSettings(pde_order_min=3.0, pde_order_max=2.0)
