"""Environment settings, string grammars and the run configuration."""

import logging
import os
import sys
from dataclasses import dataclass
from typing import List, Optional, Tuple

from dotenv import load_dotenv

from vilenkin.errors import ConfigError

# Load environment variables
load_dotenv()

DEFAULT_MAX_GRID = 2**22

THEOREM_IDS = ("1", "2", "3", "fejer")
FUNCTION_KINDS = ("random", "lip", "char")
WEIGHT_KINDS = ("const", "pow", "logpow", "custom")


@dataclass(frozen=True)
class Settings:
    """Process-wide knobs read from the environment (or a .env file)."""

    max_grid: int = DEFAULT_MAX_GRID
    workers: int = 1
    log_level: str = "WARNING"


def _env_int(name: str, default: int) -> int:
    raw = os.getenv(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        value = int(raw)
    except ValueError as e:
        raise ConfigError(f"{name} must be an integer, got {raw!r}") from e
    if value < 1:
        raise ConfigError(f"{name} must be positive, got {value}")
    return value


def get_settings() -> Settings:
    """Read settings from the environment on every call."""
    return Settings(
        max_grid=_env_int("VILENKIN_MAX_GRID", DEFAULT_MAX_GRID),
        workers=_env_int("VILENKIN_WORKERS", 1),
        log_level=os.getenv("VILENKIN_LOG_LEVEL", "WARNING").upper(),
    )


def configure_logging(level: Optional[str] = None) -> None:
    """Send library logs to stderr at the configured level."""
    name = (level or get_settings().log_level).upper()
    logging.basicConfig(
        level=getattr(logging, name, logging.WARNING),
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
    )


# --- string grammars -------------------------------------------------------


@dataclass(frozen=True)
class GroupText:
    """Parsed `m=<r0>,<r1>,...;L=<n>` string."""

    radices: Tuple[int, ...]
    level: int


def parse_group(text: str) -> GroupText:
    """Parse a group string such as ``m=2,3,4;L=6``.

    The ``L=`` part may be omitted, in which case L is the number of radices.
    """
    parts = {}
    for chunk in text.replace(" ", "").split(";"):
        if not chunk:
            continue
        key, sep, value = chunk.partition("=")
        if not sep or key not in ("m", "L"):
            raise ConfigError(f"bad group string {text!r}: expected m=...;L=...")
        parts[key] = value
    if "m" not in parts:
        raise ConfigError(f"bad group string {text!r}: missing m=")
    try:
        radices = tuple(int(r) for r in parts["m"].split(",") if r != "")
        level = int(parts["L"]) if "L" in parts else len(radices)
    except ValueError as e:
        raise ConfigError(f"bad group string {text!r}: {e}") from e
    if not radices:
        raise ConfigError(f"bad group string {text!r}: no radices")
    return GroupText(radices=radices, level=level)


def format_group(radices: Tuple[int, ...], level: int) -> str:
    return "m=" + ",".join(str(r) for r in radices) + f";L={level}"


@dataclass(frozen=True)
class WeightText:
    """Parsed weight kind string (``const``, ``pow:<g>``, ...)."""

    kind: str
    param: Optional[float] = None
    values: Tuple[float, ...] = ()


def parse_weights(text: str) -> WeightText:
    kind, _, rest = text.strip().partition(":")
    if kind not in WEIGHT_KINDS:
        raise ConfigError(f"unknown weight kind {kind!r} in {text!r}")
    try:
        if kind == "const":
            if rest:
                raise ConfigError(f"const weights take no parameter: {text!r}")
            return WeightText(kind)
        if kind == "custom":
            values = tuple(float(v) for v in rest.split(",") if v.strip() != "")
            return WeightText(kind, values=values)
        if not rest:
            raise ConfigError(f"{kind} weights need a parameter: {text!r}")
        return WeightText(kind, param=float(rest))
    except ValueError as e:
        raise ConfigError(f"bad weight string {text!r}: {e}") from e


@dataclass(frozen=True)
class FunctionText:
    """Parsed test-function selector (``random:<seed>``, ``lip:<a>``, ``char:<k>``)."""

    kind: str
    value: float

    @property
    def label(self) -> str:
        if self.kind == "lip":
            return f"lip:{self.value:g}"
        return f"{self.kind}:{int(self.value)}"


def parse_function(text: str) -> FunctionText:
    kind, sep, rest = text.strip().partition(":")
    if kind not in FUNCTION_KINDS or not sep:
        raise ConfigError(f"bad function selector {text!r}")
    try:
        if kind == "lip":
            alpha = float(rest)
            if not alpha > 0:
                raise ConfigError(f"lip exponent must be positive: {text!r}")
            return FunctionText(kind, alpha)
        value = int(rest)
    except ValueError as e:
        raise ConfigError(f"bad function selector {text!r}: {e}") from e
    if value < 0 or (kind == "random" and value >= 2**64):
        raise ConfigError(f"selector value out of range: {text!r}")
    return FunctionText(kind, value)


# --- run configuration -----------------------------------------------------


@dataclass(frozen=True)
class RunConfig:
    """Everything one CLI invocation needs, validated before any computation."""

    command: str
    group: str = "m=2;L=6"
    weights: str = "const"
    p_values: Tuple[float, ...] = (1.0,)
    theorem: str = "1"
    functions: Tuple[str, ...] = ("random:1",)
    level: Optional[int] = None
    output: Optional[str] = None
    fmt: str = "csv"
    alpha: float = 0.5
    tol: float = 0.15
    expect: Optional[float] = None
    workers: Optional[int] = None

    def group_text(self) -> GroupText:
        parsed = parse_group(self.group)
        if self.level is not None:
            return GroupText(parsed.radices, self.level)
        return parsed

    def validate(self) -> List[str]:
        """Check grammar-level preconditions; raise ConfigError on the first failure.

        Returns:
            The canonical labels of the test functions.
        """
        if self.command not in ("kernels", "theorem", "norlund", "probe", "rates"):
            raise ConfigError(f"unknown command {self.command!r}")
        if self.fmt not in ("csv", "json"):
            raise ConfigError(f"format must be csv or json, got {self.fmt!r}")
        if self.theorem not in THEOREM_IDS:
            raise ConfigError(f"theorem id must be one of {THEOREM_IDS}")
        if not self.p_values:
            raise ConfigError("at least one p is required")
        for p in self.p_values:
            if not 1.0 <= p <= 64.0:
                raise ConfigError(f"p must lie in [1, 64], got {p}")
        if not self.tol > 0:
            raise ConfigError(f"tolerance must be positive, got {self.tol}")
        if self.command == "rates" and not self.alpha > 0:
            raise ConfigError(f"alpha must be positive, got {self.alpha}")
        if self.workers is not None and self.workers < 1:
            raise ConfigError(f"workers must be positive, got {self.workers}")
        self.group_text()
        parse_weights(self.weights)
        return [parse_function(text).label for text in self.functions]
