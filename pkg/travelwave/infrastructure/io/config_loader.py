"""INI run configuration -> RunConfig"""

import configparser
import re
from pathlib import Path
from typing import Optional

from travelwave.config.config import get_settings
from travelwave.core.exceptions import RejectedInputError
from travelwave.domain.entity.enums import Scenario
from travelwave.domain.entity.model import WaveParams
from travelwave.domain.schema.run_config import RunConfig
from travelwave.utils.logger import get_logger

logger = get_logger(__name__)

_SEPARATOR = re.compile(r"[,\s]+")
BLOCKS = {Scenario.REL2BODY: 1, Scenario.TWOBODY: 2, Scenario.NCME_COLLISION: 2}


def split_list(text: str) -> list[str]:
    return [item for item in _SEPARATOR.split(text.strip()) if item]


def float_list(section: configparser.SectionProxy, key: str) -> list[float]:
    try:
        return [float(x) for x in split_list(section[key])]
    except ValueError as exc:
        raise RejectedInputError(f"[{section.name}] {key}: {exc}") from exc


def _optional_section(parser: configparser.ConfigParser, name: str, floats: tuple[str, ...] = ()) -> dict:
    """Raw key/value pairs of a section, with list-valued keys split into floats"""
    if not parser.has_section(name):
        return {}
    section = parser[name]
    values = {}
    for key in section:
        values[key] = float_list(section, key) if key in floats else section[key]
    return values


def _wave_params(parser: configparser.ConfigParser, scenario: Scenario) -> Optional[WaveParams]:
    if not parser.has_section("wave"):
        return None
    section = parser["wave"]
    for key in ("mu", "v", "lambda_sq"):
        if key not in section:
            raise RejectedInputError(f"[wave] is missing '{key}'")
    p = section.getint("p", fallback=3)
    m = section.getint("m", fallback=1)
    v = float_list(section, "v")
    lambda_sq = float_list(section, "lambda_sq")
    try:
        mu = section.getfloat("mu")
        c = section.getfloat("c", fallback=0.0)
    except ValueError as exc:
        raise RejectedInputError(f"[wave] {exc}") from exc

    q = BLOCKS[scenario]
    if len(lambda_sq) == q:
        return WaveParams.block_constant(mu=mu, v=v, block_lambda_sq=lambda_sq, c=c, p=p, m=m)
    if len(lambda_sq) == p * q:
        return WaveParams(mu=mu, c=c, v=v, ell=len(v) // m, m=m, lambda_sq=lambda_sq, p=p)
    raise RejectedInputError(
        f"[wave] lambda_sq needs {q} per-block value(s) or the full diagonal of {p * q}, got {len(lambda_sq)}"
    )


def load_run_config(path: Path, output_dir: Optional[Path] = None, seed: Optional[int] = None) -> RunConfig:
    """Parse and validate a run config; --out and --seed override [run]"""
    path = Path(path)
    parser = configparser.ConfigParser()
    # keep key case: G and g differ
    parser.optionxform = str
    try:
        read = parser.read(path, encoding="utf-8")
    except configparser.Error as exc:
        raise RejectedInputError(f"cannot parse {path}: {exc}") from exc
    if not read:
        raise RejectedInputError(f"config file {path} not found")
    for name in ("body", "run"):
        if not parser.has_section(name):
            raise RejectedInputError(f"config file {path} has no [{name}] section")

    run = parser["run"]
    try:
        scenario = Scenario(run.get("scenario", ""))
    except ValueError as exc:
        raise RejectedInputError(
            f"[run] scenario must be one of {[s.value for s in Scenario]}", details={"path": str(path)}
        ) from exc

    data = {
        "body": dict(parser["body"]),
        "wave": _wave_params(parser, scenario),
        "scenario": scenario,
        "direction": float_list(run, "direction") if "direction" in run else None,
        "verify": split_list(run.get("verify", "")),
        "output_dir": run.get("output_dir", get_settings().OUTPUT_DIR),
        "seed": run.getint("seed", fallback=0),
    }
    front = _optional_section(parser, "front", floats=("times",))
    if front:
        if "resolution" in front:
            try:
                front["resolution"] = [int(x) for x in split_list(front["resolution"])]
            except ValueError as exc:
                raise RejectedInputError(f"[front] resolution: {exc}") from exc
        data["front"] = front
    for name, floats in (("lattice", ("lower", "upper", "spacings")), ("grid", ()), ("rk4", ())):
        section = _optional_section(parser, name, floats)
        if section:
            data[name] = section

    config = RunConfig.model_validate(data).with_overrides(output_dir=output_dir, seed=seed)
    logger.debug(f"Loaded {scenario.value} config from {path}")
    return config
