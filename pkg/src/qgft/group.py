"""Finite abelian groups Z_{n1} x ... x Z_{nk}, their duals, and characters.

The group G doubles as its own dual: a frequency is just another coordinate
tuple, and the pairing of a frequency u with a point x is the angle
``2*pi * sum_t (u_t * x_t mod n_t) / n_t`` (the product is reduced mod n_t
before scaling, which keeps the phase error independent of the group size).
A character along a unit pure-imaginary axis mu takes the value
``cos(theta) + mu * sin(theta)`` on the unit circle of the plane span{1, mu}.

Normalization convention, used consistently by the signal and transform
layers: counting measure on G x G (weight 1 per point) and normalized
counting measure on the dual (weight 1/|G|^2 per frequency pair).  This is
the unique pair of weights for which the forward transforms below preserve
the 2-norm verbatim.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .quat import AXIS_TOL, Quaternion

__all__ = [
    "FiniteAbelianGroup",
    "GroupElement",
    "DualElement",
    "character_value",
    "character_table",
]

TWO_PI = 2.0 * math.pi


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """The group Z_{n1} x ... x Z_{nk}, elements enumerated row-major.

    The canonical enumeration orders coordinate tuples with the last
    coordinate varying fastest; it defines the linear index used by signals
    and by the file format.
    """

    moduli: tuple[int, ...]

    def __init__(self, moduli) -> None:
        if isinstance(moduli, int):
            moduli = (moduli,)
        moduli = tuple(int(n) for n in moduli)
        if not moduli or any(n < 1 for n in moduli):
            raise ValueError(f"moduli must be positive integers, got {moduli}")
        object.__setattr__(self, "moduli", moduli)

    @property
    def order(self) -> int:
        return math.prod(self.moduli)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    # Per-point Haar weights for the product domain G x G and its dual.
    @property
    def primal_weight(self) -> float:
        return 1.0

    @property
    def dual_weight(self) -> float:
        return 1.0 / float(self.order) ** 2

    def zero(self) -> "GroupElement":
        return GroupElement(self, (0,) * self.rank)

    def element(self, coords) -> "GroupElement":
        if isinstance(coords, int):
            coords = (coords,)
        return GroupElement(self, tuple(coords))

    def element_at(self, index: int) -> "GroupElement":
        if not 0 <= index < self.order:
            raise IndexError(f"index {index} out of range for group of order {self.order}")
        return GroupElement(self, tuple(int(c) for c in self.coords_matrix[index]))

    def index_of(self, el: "GroupElement") -> int:
        if el.group != self:
            raise ValueError("element belongs to a different group")
        return int(np.dot(el.coords, self._strides))

    def elements(self) -> list["GroupElement"]:
        """All elements in canonical order (last coordinate fastest)."""
        return [GroupElement(self, tuple(int(c) for c in row)) for row in self.coords_matrix]

    @cached_property
    def _strides(self) -> np.ndarray:
        s = np.ones(self.rank, dtype=np.int64)
        for t in range(self.rank - 2, -1, -1):
            s[t] = s[t + 1] * self.moduli[t + 1]
        return s

    @cached_property
    def coords_matrix(self) -> np.ndarray:
        """(order, rank) int64 matrix of coordinates in canonical order."""
        grids = np.meshgrid(*(np.arange(n) for n in self.moduli), indexing="ij")
        m = np.stack([g.reshape(-1) for g in grids], axis=-1).astype(np.int64)
        m.setflags(write=False)
        return m

    @cached_property
    def neg_perm(self) -> np.ndarray:
        """Index permutation sending index(x) to index(-x); an involution."""
        mods = np.asarray(self.moduli, dtype=np.int64)
        neg = (-self.coords_matrix) % mods
        p = neg @ self._strides
        p.setflags(write=False)
        return p

    @cached_property
    def angle_table(self) -> np.ndarray:
        """(order, order) table of pairing angles theta[u, x]."""
        th = np.zeros((self.order, self.order), dtype=np.float64)
        for t, n in enumerate(self.moduli):
            c = self.coords_matrix[:, t]
            th += (TWO_PI / n) * ((c[:, None] * c[None, :]) % n)
        th.setflags(write=False)
        return th

    @cached_property
    def difference_table(self) -> np.ndarray:
        """(order, order) table d[a, b] = index(element_a - element_b)."""
        mods = np.asarray(self.moduli, dtype=np.int64)
        c = self.coords_matrix
        d = (c[:, None, :] - c[None, :, :]) % mods
        tab = d @ self._strides
        tab.setflags(write=False)
        return tab

    def shift_perm(self, y: "GroupElement") -> np.ndarray:
        """Permutation p with p[index(x)] = index(x + y)."""
        if y.group != self:
            raise ValueError("shift element belongs to a different group")
        mods = np.asarray(self.moduli, dtype=np.int64)
        return ((self.coords_matrix + np.asarray(y.coords)) % mods) @ self._strides

    def __repr__(self) -> str:
        return "Z" + "xZ".join(str(n) for n in self.moduli)


@dataclass(frozen=True)
class GroupElement:
    """A point of a finite abelian group; coordinates are kept reduced."""

    group: FiniteAbelianGroup
    coords: tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.coords) != self.group.rank:
            raise ValueError(
                f"expected {self.group.rank} coordinates, got {len(self.coords)}"
            )
        reduced = tuple(int(c) % n for c, n in zip(self.coords, self.group.moduli))
        object.__setattr__(self, "coords", reduced)

    def _check_same_group(self, other: "GroupElement") -> None:
        if not isinstance(other, GroupElement) or other.group != self.group:
            raise ValueError("elements belong to different groups")

    def __add__(self, other: "GroupElement") -> "GroupElement":
        self._check_same_group(other)
        return GroupElement(
            self.group, tuple(a + b for a, b in zip(self.coords, other.coords))
        )

    def __sub__(self, other: "GroupElement") -> "GroupElement":
        self._check_same_group(other)
        return GroupElement(
            self.group, tuple(a - b for a, b in zip(self.coords, other.coords))
        )

    def __neg__(self) -> "GroupElement":
        return GroupElement(self.group, tuple(-c for c in self.coords))

    @property
    def index(self) -> int:
        return self.group.index_of(self)


# A frequency is represented exactly like a point; the alias only documents
# intent at call sites.
DualElement = GroupElement


def _check_axis(axis: Quaternion) -> None:
    if not axis.is_unit_pure_imaginary(AXIS_TOL):
        raise ValueError(f"character axis must be unit pure-imaginary, got {axis}")


def pairing_angle(freq: DualElement, point: GroupElement) -> float:
    if freq.group != point.group:
        raise ValueError("frequency and point belong to different groups")
    return sum(
        TWO_PI * ((u * x) % n) / n
        for u, x, n in zip(freq.coords, point.coords, freq.group.moduli)
    )


def character_value(freq: DualElement, point: GroupElement, axis: Quaternion) -> Quaternion:
    """Value of the frequency-u character at x along ``axis``.

    Returns cos(theta) + axis*sin(theta) with theta the pairing angle; the
    result is a unit quaternion in the plane span{1, axis}.
    """
    _check_axis(axis)
    th = pairing_angle(freq, point)
    c, s = math.cos(th), math.sin(th)
    return Quaternion(c, axis.x * s, axis.y * s, axis.z * s)


def character_table(group: FiniteAbelianGroup, axis: Quaternion) -> np.ndarray:
    """(order, order, 4) table K[u, x] of character values along ``axis``."""
    _check_axis(axis)
    th = group.angle_table
    c, s = np.cos(th), np.sin(th)
    out = np.empty(th.shape + (4,), dtype=np.float64)
    out[..., 0] = c
    out[..., 1] = axis.x * s
    out[..., 2] = axis.y * s
    out[..., 3] = axis.z * s
    return out
