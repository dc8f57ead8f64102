"""Scenario configuration: pydantic schema, defaults and parsing"""
#%%
# Import modules and libraries needed within code.
from enum import Enum
import json
import math
from typing import Literal

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from nonstatic.errors import (
    ConfigError
    , InvariantViolation
    , MalformedDocument
    , MissingField
    , NonstaticError
)
from nonstatic.fields import FieldParams
from nonstatic.phases import PhaseState
from nonstatic.timebase import ModeParams, resolve_c3, validate
from nonstatic.wavefunctions import QuantumConstants, SuperpositionSpec, check_index


#%%
#
class Scenario(str, Enum):
    PHASE_EVOLUTION = "phase-evolution"
    DENSITY_MAP = "density-map"
    GEOMETRIC_PHASE = "geometric-phase"
    FIELD_TRACE = "field-trace"
    FIELD_MAP = "field-map"
    SUPERPOSITION = "superposition"
    INTERFERENCE = "interference"
    CHECK = "check"


class _Section(BaseModel):
    model_config = ConfigDict(extra="forbid")


class ModeSection(_Section):
    omega: float = 1.0
    c1: float = 1.0
    c2: float = 1.0
    c3: float | None = None  # Resolved from c1*c2 - c3^2 = 1 when absent.
    sign: Literal["+", "-"] = "+"
    t0: float = 0.0
    phi: float = 0.0


class ConstsSection(_Section):
    hbar: float = 1.0
    epsilon: float = 1.0


class FockSection(_Section):
    n: int = Field(default=0, ge=0)
    m: int | None = Field(default=None, ge=0)
    beta_n: tuple[float, float] | None = None  # (re, im)
    beta_m: tuple[float, float] | None = None
    gamma_d0: float = 0.0
    gamma_g0: float = 0.0


class FieldSection(_Section):
    theta: float = 0.0
    alpha0: float = 1.0
    k: float = 1.0
    volume: float = 1.0


class InterferenceSection(_Section):
    omega_ii: float = 1.5
    sign_ii: Literal["+", "-"] | None = None  # Defaults to the first mode's c3 sign.


class GridSection(_Section):
    t_min: float = 0.0
    t_max: float = 10 * math.pi
    t_steps: int = 1001
    x_min: float = 0.0
    x_max: float = 2 * math.pi
    x_steps: int = 101
    q_min: float = -8.0
    q_max: float = 8.0
    q_steps: int = 201

    @model_validator(mode="after")
    def _check_steps(self) -> "GridSection":
        for axis in ("t", "x", "q"):
            if getattr(self, f"{axis}_steps") < 2:
                raise ValueError(f"{axis}_steps must be >= 2")
            if getattr(self, f"{axis}_max") <= getattr(self, f"{axis}_min"):
                raise ValueError(f"{axis}_max must exceed {axis}_min")
        return self


class OutputSection(_Section):
    prefix: str = "output/run"
    level: Literal["fast", "full"] = "fast"


class ScenarioConfig(_Section):
    """Complete description of one scenario run"""
    scenario: Scenario = Scenario.PHASE_EVOLUTION
    mode: ModeSection = Field(default_factory=ModeSection)
    consts: ConstsSection = Field(default_factory=ConstsSection)
    fock: FockSection = Field(default_factory=FockSection)
    field: FieldSection = Field(default_factory=FieldSection)
    interference: InterferenceSection = Field(default_factory=InterferenceSection)
    grid: GridSection = Field(default_factory=GridSection)
    output: OutputSection = Field(default_factory=OutputSection)

    @model_validator(mode="after")
    def _check_scenario_fields(self) -> "ScenarioConfig":
        if self.grid.t_min < self.mode.t0:
            raise ValueError(f"grid.t_min must be >= mode.t0 ({self.mode.t0})")
        if self.scenario == Scenario.SUPERPOSITION:
            for name in ("m", "beta_n", "beta_m"):
                if getattr(self.fock, name) is None:
                    raise ValueError(f"superposition requires fock.{name}")
        return self

    # Domain objects built from the validated document.
    def mode_params(self) -> ModeParams:
        mode = self.mode
        c3 = mode.c3 if mode.c3 is not None else resolve_c3(mode.c1, mode.c2, mode.sign)
        return validate(ModeParams(omega=mode.omega, c1=mode.c1, c2=mode.c2, c3=c3, t0=mode.t0, phi=mode.phi))

    def mode_params_ii(self) -> ModeParams:
        params = self.mode_params()
        sign = self.interference.sign_ii or ("-" if params.c3 < 0 else "+")
        c3 = abs(params.c3) if sign == "+" else -abs(params.c3)
        return validate(ModeParams(omega=self.interference.omega_ii, c1=params.c1, c2=params.c2, c3=c3, t0=params.t0, phi=params.phi))

    def quantum_constants(self) -> QuantumConstants:
        return QuantumConstants(hbar=self.consts.hbar, epsilon=self.consts.epsilon)

    def field_params(self) -> FieldParams:
        return FieldParams(theta=self.field.theta, alpha0=self.field.alpha0, k=self.field.k, volume=self.field.volume)

    def phase_state(self, n: int | None = None) -> PhaseState:
        return PhaseState(n=self.fock.n if n is None else n, gamma_d0=self.fock.gamma_d0, gamma_g0=self.fock.gamma_g0)

    def eigen_state(self) -> PhaseState:
        """Phase state of a single eigenfunction, with fock.n checked against the supported range."""
        check_index(self.fock.n)
        return self.phase_state()

    def superposition_spec(self) -> SuperpositionSpec:
        fock = self.fock
        return SuperpositionSpec(n=fock.n, m=fock.m, beta_n=complex(*fock.beta_n), beta_m=complex(*fock.beta_m))


#%%
# Parsing.
def _field_path(loc: tuple) -> str:
    return ".".join(str(part) for part in loc) or "<root>"


def _build_domain(config: ScenarioConfig) -> None:
    """Construct every domain object the scenario needs so invariant errors surface at parse time."""
    sections = {
        "mode": config.mode_params
        , "consts": config.quantum_constants
        , "field": config.field_params
        , "fock": config.phase_state
    }
    if config.scenario == Scenario.DENSITY_MAP:
        sections["fock"] = config.eigen_state
    if config.scenario == Scenario.INTERFERENCE:
        sections["interference"] = config.mode_params_ii
    if config.scenario == Scenario.SUPERPOSITION:
        sections["fock"] = config.superposition_spec
    for section, build in sections.items():
        try:
            build()
        except (NonstaticError, ValueError) as e:
            raise InvariantViolation(section, str(e)) from e


def parse_config(text: str, overrides: dict | None = None) -> ScenarioConfig:
    """
    Purpose:
        Parse and fully validate a JSON scenario document.
    Args:
        text: JSON document; empty text means all defaults.
        overrides: Nested mapping of values that take precedence over the document (CLI flags).
    Returns:
        Validated ScenarioConfig with defaults applied.
    Raises:
        MalformedDocument: If text is not a JSON object.
        MissingField: If a scenario-required field is absent.
        InvariantViolation: If a value breaks an invariant; carries the field path.
    """
    try:
        document = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as e:
        raise MalformedDocument(f"Config is not valid JSON: {e}") from e
    if not isinstance(document, dict):
        raise MalformedDocument(f"Config must be a JSON object, got {type(document).__name__}.")

    for section, values in (overrides or {}).items():
        if isinstance(values, dict):
            target = document.setdefault(section, {})
            if not isinstance(target, dict):
                raise MalformedDocument(f"Config section '{section}' must be an object.")
            target.update({key: value for key, value in values.items() if value is not None})
        elif values is not None:
            document[section] = values

    try:
        config = ScenarioConfig.model_validate(document)
    except ValidationError as e:
        first = e.errors()[0]
        path = _field_path(first["loc"])
        if first["type"] == "missing":
            raise MissingField(path) from e
        message = first["msg"]
        if "requires fock." in message:
            raise MissingField("fock." + message.rsplit("fock.", 1)[1]) from e
        raise InvariantViolation(path, message) from e

    _build_domain(config)
    return config


def config_echo(config: ScenarioConfig) -> dict:
    """JSON-ready copy of the config, with the resolved c3."""
    echo = config.model_dump(mode="json")
    echo["mode"]["c3"] = config.mode_params().c3
    return echo


def parse_config_file(path: str, overrides: dict | None = None) -> ScenarioConfig:
    """Read and parse a config file; overrides as in parse_config."""
    try:
        with open(path, encoding="utf-8") as handle:
            text = handle.read()
    except OSError as e:
        raise ConfigError(f"Cannot read config file {path}: {e}") from e
    return parse_config(text, overrides)
