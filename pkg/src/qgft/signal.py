"""Quaternion-valued signals on G x G and spectra on the dual.

A :class:`QSignal` (primal side, counting measure) or :class:`QSpectrum`
(dual side, weight 1/|G|^2 per bin) stores a dense float64 array of shape
``(order, order, 4)``; bin (i1, i2) holds the value at the pair of elements
with canonical indices i1 and i2, and the flat bin index used by file I/O is
``i1 * order + i2``.

Convolution order matters and is fixed here once and for all:

    (f * g)(x) = sum_y f(y) * g(x - y)

with the left factor's quaternion first.  Quaternion products do not
commute, so swapping the factors silently changes results.

All operations are pure; signals are treated as immutable value objects,
and every reduction uses a fixed summation order, so results are
reproducible bit for bit across runs.
"""

from __future__ import annotations

import numpy as np

from .group import FiniteAbelianGroup, GroupElement
from .quat import DEFAULT_AXES, AxisPair, Quaternion, qabs, qconj, qmul

__all__ = [
    "QSignal",
    "QSpectrum",
    "lp_norm",
    "inner_q",
    "inner_real",
    "translate",
    "reflect_conj",
    "convolve",
    "transform_W",
    "transform_beta",
    "random_signal",
    "random_spectrum",
]


class _QGrid:
    """Shared machinery for primal signals and dual spectra."""

    __slots__ = ("group", "values")

    def __init__(self, group: FiniteAbelianGroup, values) -> None:
        # always copy: grids are immutable value objects, never views
        values = np.array(values, dtype=np.float64, order="C", copy=True)
        n = group.order
        if values.shape != (n, n, 4):
            raise ValueError(
                f"expected values of shape {(n, n, 4)}, got {values.shape}"
            )
        if not np.isfinite(values).all():
            raise ValueError("signal values must be finite (no NaN/Inf)")
        self.group = group
        self.values = values

    # Per-bin Haar weight of the carrier.
    @property
    def weight(self) -> float:
        raise NotImplementedError

    @classmethod
    def zeros(cls, group: FiniteAbelianGroup):
        n = group.order
        return cls(group, np.zeros((n, n, 4)))

    @classmethod
    def constant(cls, group: FiniteAbelianGroup, q: Quaternion):
        n = group.order
        return cls(group, np.broadcast_to(q.to_array(), (n, n, 4)).copy())

    @classmethod
    def delta(cls, group: FiniteAbelianGroup, at=(0, 0), value: Quaternion = Quaternion(1.0)):
        """Point mass ``value`` at the bin pair ``at`` (indices or elements)."""
        i1, i2 = (p.index if isinstance(p, GroupElement) else int(p) for p in at)
        out = cls.zeros(group)
        out.values[i1, i2] = value.to_array()
        return out

    def at(self, x1, x2) -> Quaternion:
        i1 = x1.index if isinstance(x1, GroupElement) else int(x1)
        i2 = x2.index if isinstance(x2, GroupElement) else int(x2)
        return Quaternion.from_array(self.values[i1, i2])

    def copy(self):
        return type(self)(self.group, self.values.copy())

    def _check_same_carrier(self, other: "_QGrid") -> None:
        if type(other) is not type(self) or other.group != self.group:
            raise ValueError(
                f"carrier mismatch: {type(self).__name__} on {self.group} vs "
                f"{type(other).__name__} on {other.group}"
            )

    def __add__(self, other: "_QGrid"):
        self._check_same_carrier(other)
        return type(self)(self.group, self.values + other.values)

    def __sub__(self, other: "_QGrid"):
        self._check_same_carrier(other)
        return type(self)(self.group, self.values - other.values)

    def __mul__(self, s):
        if isinstance(s, (int, float)):
            return type(self)(self.group, self.values * float(s))
        return NotImplemented

    __rmul__ = __mul__

    def left_mul(self, q: Quaternion):
        """Pointwise product q * f(x)."""
        return type(self)(self.group, qmul(q.to_array(), self.values))

    def right_mul(self, q: Quaternion):
        """Pointwise product f(x) * q."""
        return type(self)(self.group, qmul(self.values, q.to_array()))

    def conj(self):
        return type(self)(self.group, qconj(self.values))

    def flat(self) -> np.ndarray:
        """View of the payload as (order^2, 4), bins in canonical order."""
        n = self.group.order
        return self.values.reshape(n * n, 4)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({self.group!r})"


class QSignal(_QGrid):
    """Quaternion-valued function on G x G under counting measure."""

    @property
    def weight(self) -> float:
        return self.group.primal_weight


class QSpectrum(_QGrid):
    """Quaternion-valued function on the dual of G x G, weight 1/|G|^2."""

    @property
    def weight(self) -> float:
        return self.group.dual_weight


def lp_norm(f: _QGrid, p) -> float:
    """Weighted p-norm of a signal or spectrum for p in {1, 2, inf}."""
    mag = qabs(f.values)
    if p == 1:
        return float(mag.sum() * f.weight)
    if p == 2:
        return float(np.sqrt((mag * mag).sum() * f.weight))
    if p in (np.inf, float("inf"), "inf"):
        return float(mag.max())
    raise ValueError(f"unsupported exponent p={p!r}; use 1, 2 or inf")


def inner_q(f: _QGrid, g: _QGrid) -> Quaternion:
    """Quaternion inner product sum_x f(x) * conj(g(x)) * weight.

    Left-linear over quaternion scalars and conjugate-linear on the right:
    inner_q(p*f, q*g) = p * inner_q(f, g) * conj(q).
    """
    f._check_same_carrier(g)
    s = qmul(f.values, qconj(g.values)).sum(axis=(0, 1)) * f.weight
    return Quaternion.from_array(s)


def inner_real(f: _QGrid, g: _QGrid) -> float:
    """Real inner product, the scalar part of :func:`inner_q`."""
    return inner_q(f, g).scalar_part()


def _as_element(group: FiniteAbelianGroup, y) -> GroupElement:
    return y if isinstance(y, GroupElement) else group.element(y)


def translate(f: QSignal, y) -> QSignal:
    """Translation (L_y f)(x1, x2) = f(x1 + y1, x2 + y2).

    On an abelian domain left and right translation coincide; translation is
    a bin permutation, hence exactly norm-preserving.
    """
    y1, y2 = (_as_element(f.group, c) for c in y)
    p1 = f.group.shift_perm(y1)
    p2 = f.group.shift_perm(y2)
    return type(f)(f.group, f.values[p1][:, p2])


def reflect_conj(f: QSignal) -> QSignal:
    """The reflected conjugate f~(x1, x2) = conj(f(-x1, -x2)); an involution."""
    neg = f.group.neg_perm
    return type(f)(f.group, qconj(f.values[neg][:, neg]))


def convolve(f: QSignal, g: QSignal) -> QSignal:
    """Quaternion convolution (f * g)(x) = sum_y f(y) * g(x - y).

    Not commutative in general.  Left H-linear in f.  Complexity is
    O(|G|^4) quaternion products; intended for desk-scale groups.
    """
    f._check_same_carrier(g)
    grp = f.group
    n = grp.order
    sub = grp.difference_table
    fv, gv = f.values, g.values
    out = np.empty_like(fv)
    for i1 in range(n):
        rows = sub[i1]
        for i2 in range(n):
            shifted = gv[rows[:, None], sub[i2][None, :]]
            out[i1, i2] = qmul(fv, shifted).sum(axis=(0, 1))
    return QSignal(grp, out * f.weight)


def transform_W(f: QSignal, axes: AxisPair = DEFAULT_AXES) -> QSignal:
    """Reflect the mu2 and mu3 frame components in the first variable.

    In frame coordinates (a, b, c, d) the map is

        (a, b, c, d)(x1, x2) -> (a(x1,x2), b(x1,x2), c(-x1,x2), d(-x1,x2)),

    i.e. f0 + i f1 + j f2(-x1,.) + k f3(-x1,.) for the default axes.  It is
    its own inverse, preserves all norms, and commutes with left
    multiplication by elements of the plane span{1, mu1}.  It converts the
    sandwiched transform into the right-sided one.
    """
    v = axes.to_frame(f.values)
    neg = f.group.neg_perm
    out = v.copy()
    out[..., 2] = v[neg, :, 2]
    out[..., 3] = v[neg, :, 3]
    return QSignal(f.group, axes.from_frame(out))


def transform_beta(g: QSpectrum, axes: AxisPair = DEFAULT_AXES) -> QSpectrum:
    """Frequency reflections making the multiplication pairing balance.

    In frame coordinates (a, b, c, d) over the dual:

        (a, b, c, d)(u, v) -> (a(u,v), b(u,-v), c(-u,v), d(-u,-v)).

    A bin permutation per component, hence norm-preserving.  Defined on
    spectra only, which is where it is consumed.
    """
    if not isinstance(g, QSpectrum):
        raise TypeError("transform_beta acts on spectra (dual side)")
    v = axes.to_frame(g.values)
    neg = g.group.neg_perm
    out = v.copy()
    out[..., 1] = v[:, neg, 1]
    out[..., 2] = v[neg, :, 2]
    out[..., 3] = v[neg][:, neg, 3]
    return QSpectrum(g.group, axes.from_frame(out))


def random_signal(group: FiniteAbelianGroup, rng: np.random.Generator) -> QSignal:
    """Signal with iid standard normal components; handy for property checks."""
    n = group.order
    return QSignal(group, rng.standard_normal((n, n, 4)))


def random_spectrum(group: FiniteAbelianGroup, rng: np.random.Generator) -> QSpectrum:
    n = group.order
    return QSpectrum(group, rng.standard_normal((n, n, 4)))
