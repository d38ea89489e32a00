"""Test functions named by selector strings."""

from vilenkin.analysis.approx import lip_function
from vilenkin.analysis.spectral import GridFunction, character
from vilenkin.analysis.vgroup import GroupSpec
from vilenkin.errors import IndexRangeError
from vilenkin.tools.config import parse_function
from vilenkin.tools.rng import random_function


def make_function(
    spec: GroupSpec, selector: str, mean_zero: bool = True
) -> GridFunction:
    """Build ``random:<seed>``, ``lip:<alpha>`` or ``char:<k>`` on ``spec``.

    Inequality suites use mean-zero functions, since T_n does not reproduce
    constants; ``char:0`` therefore becomes the zero function.
    """
    parsed = parse_function(selector)
    if parsed.kind == "random":
        return random_function(spec, int(parsed.value))
    if parsed.kind == "lip":
        f = lip_function(parsed.value, spec)
    else:
        k = int(parsed.value)
        if k >= spec.size:
            raise IndexRangeError(f"character index {k} outside [0, {spec.size})")
        f = character(spec, k)
    if mean_zero:
        f = GridFunction(spec, f.values - f.values.mean())
    return f
