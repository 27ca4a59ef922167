"""Choquet integral and Choquet expected disutility"""

import logging
from typing import Any, Dict, Optional, Sequence, Tuple, Union

import numpy as np

from src.core.capacity import Capacity, ProbabilityVector
from src.errors import CostError, DimensionError, DisutilityError

logger = logging.getLogger(__name__)

ArrayLike = Union[Sequence[float], np.ndarray]


def cost_vector(x: ArrayLike, m: Optional[int] = None) -> np.ndarray:
    """Validate a per-scenario cost vector (finite, non-negative)"""
    arr = np.asarray(x, dtype=float).reshape(-1)
    if m is not None and arr.size != m:
        raise DimensionError(f"cost vector has {arr.size} components, expected {m}")
    if not np.all(np.isfinite(arr)):
        raise CostError(f"cost vector has non-finite components: {arr.tolist()}")
    if np.any(arr < 0.0):
        raise CostError(f"cost vector has negative components: {arr.tolist()}")
    return arr


class DisutilityFn:
    """
    Increasing disutility on costs

    kind 'power': w(t) = (t / M)^α, so w(0) = 0 and w(M) = 1. The scale M may be
    left unset in instance files and filled in per instance.
    kind 'identity': w(t) = t.
    """

    KINDS = ('power', 'identity')

    def __init__(self, kind: str = 'power', exponent: float = 1.0, scale: Optional[float] = None):
        if kind not in self.KINDS:
            raise DisutilityError(f"unknown disutility kind '{kind}'")
        if kind == 'power':
            for name, value in (('exponent', exponent), ('scale', scale)):
                if value is not None and (isinstance(value, bool) or not isinstance(value, (int, float, np.number))):
                    raise DisutilityError(f"{name} must be a number, got {value!r}")
            if not exponent > 0.0 or not np.isfinite(exponent):
                raise DisutilityError(f"exponent must be positive, got {exponent}")
            if scale is not None and (not scale > 0.0 or not np.isfinite(scale)):
                raise DisutilityError(f"scale must be positive, got {scale}")
        self.kind = kind
        self.exponent = float(exponent) if kind == 'power' else 1.0
        self.scale = float(scale) if scale is not None and kind == 'power' else None

    @classmethod
    def power(cls, exponent: float, scale: Optional[float] = None) -> 'DisutilityFn':
        return cls('power', exponent, scale)

    @classmethod
    def identity(cls) -> 'DisutilityFn':
        return cls('identity')

    @property
    def is_convex(self) -> bool:
        return self.kind == 'identity' or self.exponent >= 1.0

    @property
    def is_resolved(self) -> bool:
        return self.kind == 'identity' or self.scale is not None

    def with_scale(self, scale: float) -> 'DisutilityFn':
        """Copy with M filled in (kept as is when already set)"""
        if self.kind == 'identity' or self.scale is not None:
            return self
        return DisutilityFn('power', self.exponent, scale)

    def __call__(self, t):
        if self.kind == 'identity':
            return t if isinstance(t, np.ndarray) else float(t)
        if self.scale is None:
            raise DisutilityError("power disutility has no scale M")
        if isinstance(t, np.ndarray):
            return (t / self.scale) ** self.exponent
        return (float(t) / self.scale) ** self.exponent

    def check_costs(self, x: np.ndarray) -> None:
        """Reject components above M (power kind only)"""
        if self.kind == 'power' and self.scale is not None and np.any(x > self.scale):
            raise DisutilityError(f"cost vector {x.tolist()} exceeds the bound M={self.scale}")

    def to_dict(self) -> Dict[str, Any]:
        doc: Dict[str, Any] = {'kind': self.kind}
        if self.kind == 'power':
            doc['exponent'] = self.exponent
            if self.scale is not None:
                doc['scale'] = self.scale
        return doc

    @classmethod
    def from_dict(cls, doc: Dict[str, Any]) -> 'DisutilityFn':
        kind = doc.get('kind', 'power')
        if kind == 'identity':
            return cls.identity()
        return cls(kind, doc.get('exponent', 1.0), doc.get('scale'))

    def __eq__(self, other) -> bool:
        if not isinstance(other, DisutilityFn):
            return NotImplemented
        return (self.kind, self.exponent, self.scale) == (other.kind, other.exponent, other.scale)

    def __repr__(self) -> str:
        if self.kind == 'identity':
            return "DisutilityFn(identity)"
        return f"DisutilityFn(power, exponent={self.exponent}, scale={self.scale})"


def choquet_batch(v: Capacity, z: np.ndarray, form: int = 1) -> np.ndarray:
    """
    Choquet integral of every row of z

    Rows are sorted ascending (stable, so ties keep scenario order); the upper
    level set of the i-th smallest value is the mask of the scenarios sorted
    at positions i..m-1.
    """
    z = np.asarray(z, dtype=float)
    if z.ndim != 2 or z.shape[1] != v.m:
        raise DimensionError(f"expected rows of {v.m} components, got shape {z.shape}")
    order = np.argsort(z, axis=1, kind='stable')
    ordered = np.take_along_axis(z, order, axis=1)
    bits = np.left_shift(1, order)
    upper = np.cumsum(bits[:, ::-1], axis=1)[:, ::-1]
    weights = v.values[upper]
    zeros = np.zeros((z.shape[0], 1))

    if form == 1:
        # Σ [v(X_(i)) - v(X_(i+1))] z_(i)
        following = np.hstack([weights[:, 1:], zeros])
        return np.sum((weights - following) * ordered, axis=1)
    elif form == 2:
        # Σ [z_(i) - z_(i-1)] v(X_(i))
        previous = np.hstack([zeros, ordered[:, :-1]])
        return np.sum((ordered - previous) * weights, axis=1)
    raise ValueError(f"form must be 1 or 2, got {form}")


def choquet_integral(v: Capacity, z: ArrayLike, form: int = 1) -> float:
    """Choquet integral C_v(z) of a non-negative vector"""
    z = cost_vector(z, v.m)
    return float(choquet_batch(v, z[np.newaxis, :], form)[0])


def ced(v: Capacity, w: DisutilityFn, x: ArrayLike) -> float:
    """Choquet expected disutility ψ(x) = C_v(w(x_1), ..., w(x_m))"""
    x = cost_vector(x, v.m)
    w.check_costs(x)
    return float(choquet_batch(v, w(x)[np.newaxis, :])[0])


def scalarize(p: ProbabilityVector, x: ArrayLike) -> float:
    """Linear aggregation c_p(x) = Σ p_i x_i"""
    x = np.asarray(x, dtype=float).reshape(-1)
    if x.size != p.m:
        raise DimensionError(f"cost vector has {x.size} components, expected {p.m}")
    return float(np.dot(p.p, x))


def linear_lower_bound(p: ProbabilityVector, w: DisutilityFn, x: ArrayLike) -> Tuple[float, float]:
    """
    Lower bounds on ψ(x) for p in core(v̄)

    Returns (Σ p_i w(x_i), w(Σ p_i x_i)); the second needs w convex.
    """
    x = cost_vector(x, p.m)
    strong = float(np.dot(p.p, w(x)))
    weak = float(w(scalarize(p, x)))
    return strong, weak


class CedEvaluator:
    """ψ for a fixed (capacity, disutility) pair, without the M check"""

    def __init__(self, capacity: Capacity, disutility: DisutilityFn):
        if not disutility.is_resolved:
            raise DisutilityError("disutility scale must be resolved before evaluation")
        self.capacity = capacity
        self.disutility = disutility

    def psi(self, x: np.ndarray) -> float:
        return float(choquet_batch(self.capacity, self.disutility(np.asarray(x, dtype=float))[np.newaxis, :])[0])

    def psi_batch(self, xs: np.ndarray) -> np.ndarray:
        if len(xs) == 0:
            return np.zeros(0)
        return choquet_batch(self.capacity, self.disutility(np.asarray(xs, dtype=float)))

    def bound(self, scalar: float) -> float:
        """w applied to a scalarized cost"""
        return float(self.disutility(float(scalar)))
