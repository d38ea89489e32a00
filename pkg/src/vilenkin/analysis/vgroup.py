"""Truncated bounded Vilenkin groups: digits, points, cosets and Haar integration.

The group G_m is the complete direct product of the cyclic groups Z_{m_k}.
Everything here lives on the quotient by I_L, a grid of M_L points indexed by
rank(x) = sum_k x_k M_k, so digit 0 varies fastest.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from vilenkin.errors import GroupSpecError, IndexRangeError, SpecMismatchError
from vilenkin.tools.config import format_group, get_settings, parse_group

if TYPE_CHECKING:
    from vilenkin.analysis.spectral import GridFunction

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GroupSpec:
    """A bounded Vilenkin group truncated at level L.

    Attributes:
        radices: m_0, ..., m_{L-1}, each at least 2.
        powers: generalized powers M_0 = 1, ..., M_L with M_{k+1} = m_k M_k.
        bound: R, the largest radix.
    """

    radices: Tuple[int, ...]
    powers: Tuple[int, ...] = field(init=False, compare=False)
    bound: int = field(init=False, compare=False)

    def __post_init__(self) -> None:
        if len(self.radices) < 1:
            raise GroupSpecError("truncation level L must be at least 1")
        for k, m in enumerate(self.radices):
            if int(m) != m or m < 2:
                raise GroupSpecError(f"radix m_{k} = {m} is below 2")
        powers = [1]
        for m in self.radices:
            powers.append(powers[-1] * int(m))
        object.__setattr__(self, "radices", tuple(int(m) for m in self.radices))
        object.__setattr__(self, "powers", tuple(powers))
        object.__setattr__(self, "bound", max(self.radices))

    @property
    def level(self) -> int:
        """Truncation level L."""
        return len(self.radices)

    @property
    def size(self) -> int:
        """Number of grid points M_L."""
        return self.powers[-1]

    @property
    def shape(self) -> Tuple[int, ...]:
        """Digit-tensor shape; grid values reshape to it in Fortran order."""
        return self.radices

    @property
    def is_walsh(self) -> bool:
        return all(m == 2 for m in self.radices)

    def label(self) -> str:
        return format_group(self.radices, self.level)

    @cached_property
    def digit_grid(self) -> np.ndarray:
        """L x M_L array whose column r holds the digits of the point of rank r."""
        ranks = np.arange(self.size, dtype=np.int64)
        dtype = np.int16 if self.bound < 2**15 else np.int64
        grid = np.empty((self.level, self.size), dtype=dtype)
        for k, (m, mk) in enumerate(zip(self.radices, self.powers)):
            grid[k] = (ranks // mk) % m
        grid.setflags(write=False)
        return grid

    def __repr__(self) -> str:
        return f"GroupSpec({self.label()!r})"


def build_group(
    radices: Sequence[int], L: int, max_grid: Optional[int] = None
) -> GroupSpec:
    """Build the group truncated at level L.

    Radices are taken cyclically when fewer than L are given, so ``(2,)`` with
    L = 6 is the Walsh group of 64 points.

    Args:
        radices: the radix sequence (at least one value, each >= 2)
        L: truncation level, at least 1
        max_grid: cap on M_L; defaults to the VILENKIN_MAX_GRID setting

    Returns:
        The immutable GroupSpec.
    """
    if L < 1:
        raise GroupSpecError(f"truncation level L must be at least 1, got {L}")
    if len(radices) == 0:
        raise GroupSpecError("no radices given")
    for k, m in enumerate(radices):
        if int(m) != m:
            raise GroupSpecError(f"radix m_{k} = {m} is not an integer")
        if m < 2:
            raise GroupSpecError(f"radix m_{k} = {m} is below 2")
    cap = get_settings().max_grid if max_grid is None else max_grid
    full = tuple(int(radices[k % len(radices)]) for k in range(L))
    size = 1
    for m in full:
        size *= m
        if size > cap:
            raise GroupSpecError(f"grid size exceeds the cap of {cap} points")
    spec = GroupSpec(full)
    logger.debug("built %s with M_L=%d R=%d", spec.label(), spec.size, spec.bound)
    return spec


def group_from_string(text: str, max_grid: Optional[int] = None) -> GroupSpec:
    """Build a group from the ``m=<r0>,<r1>,...;L=<n>`` grammar."""
    parsed = parse_group(text)
    return build_group(parsed.radices, parsed.level, max_grid=max_grid)


@dataclass(frozen=True)
class Point:
    """A grid point, given by its digits x_0, ..., x_{L-1}."""

    spec: GroupSpec
    digits: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.digits) != self.spec.level:
            raise IndexRangeError(
                f"point needs {self.spec.level} digits, got {len(self.digits)}"
            )
        for k, (x, m) in enumerate(zip(self.digits, self.spec.radices)):
            if not 0 <= x < m:
                raise IndexRangeError(f"digit x_{k} = {x} outside Z_{m}")

    @classmethod
    def zero(cls, spec: GroupSpec) -> "Point":
        return cls(spec, (0,) * spec.level)


@dataclass(frozen=True)
class VIndex:
    """A character index n < M_L with its digit expansion and order |n|."""

    value: int
    digits: Tuple[int, ...]
    order: int


def digits(n: int, spec: GroupSpec) -> VIndex:
    """Expand n in the generalized number system; |0| is taken as 0."""
    if not 0 <= n < spec.size:
        raise IndexRangeError(f"index {n} outside [0, {spec.size})")
    expansion = tuple((n // mk) % m for m, mk in zip(spec.radices, spec.powers))
    order = max((j for j, d in enumerate(expansion) if d != 0), default=0)
    return VIndex(n, expansion, order)


def level_of(n: int, spec: GroupSpec) -> int:
    """The N with M_N <= n < M_{N+1}."""
    if not 1 <= n < spec.size:
        raise IndexRangeError(f"index {n} outside [1, {spec.size})")
    return digits(n, spec).order


def _check_same(x: Point, t: Point) -> None:
    if x.spec != t.spec:
        raise SpecMismatchError(f"{x.spec.label()} vs {t.spec.label()}")


def point_sub(x: Point, t: Point) -> Point:
    """Coordinate-wise (x_k - t_k) mod m_k."""
    _check_same(x, t)
    return Point(
        x.spec,
        tuple((a - b) % m for a, b, m in zip(x.digits, t.digits, x.spec.radices)),
    )


def point_add(x: Point, t: Point) -> Point:
    _check_same(x, t)
    return Point(
        x.spec,
        tuple((a + b) % m for a, b, m in zip(x.digits, t.digits, x.spec.radices)),
    )


def point_neg(x: Point) -> Point:
    return Point(x.spec, tuple((-a) % m for a, m in zip(x.digits, x.spec.radices)))


def rank(x: Point) -> int:
    """sum_k x_k M_k."""
    return sum(d * mk for d, mk in zip(x.digits, x.spec.powers))


def unrank(r: int, spec: GroupSpec) -> Point:
    if not 0 <= r < spec.size:
        raise IndexRangeError(f"rank {r} outside [0, {spec.size})")
    return Point(spec, digits(r, spec).digits)


def coset_rep_ranks(spec: GroupSpec, s: int) -> np.ndarray:
    """Ranks of the points of I_s: exactly the multiples of M_s."""
    if not 0 <= s <= spec.level:
        raise IndexRangeError(f"level {s} outside [0, {spec.level}]")
    return np.arange(0, spec.size, spec.powers[s], dtype=np.int64)


def coset_reps(spec: GroupSpec, s: int) -> List[Point]:
    """One point of I_s per coset of I_L, M_L / M_s points in all."""
    return [unrank(int(r), spec) for r in coset_rep_ranks(spec, s)]


def negated_ranks(spec: GroupSpec) -> np.ndarray:
    """rank(-x) for every rank(x)."""
    neg = np.zeros(spec.size, dtype=np.int64)
    for k, (m, mk) in enumerate(zip(spec.radices, spec.powers)):
        neg += ((-spec.digit_grid[k].astype(np.int64)) % m) * mk
    return neg


def in_coset(spec: GroupSpec, s: int, x: Optional[Point] = None) -> np.ndarray:
    """Boolean mask of I_s(x) over the grid (x defaults to the zero point)."""
    if not 0 <= s <= spec.level:
        raise IndexRangeError(f"level {s} outside [0, {spec.level}]")
    centre: Iterable[int] = x.digits if x is not None else (0,) * spec.level
    mask = np.ones(spec.size, dtype=bool)
    for k, c in zip(range(s), centre):
        mask &= spec.digit_grid[k] == c
    return mask


def haar_integral(f: "GridFunction") -> complex:
    """(1/M_L) sum_x f(x); exact for step functions constant on I_L cosets."""
    return complex(np.mean(f.values))
