"""Shared parameter and path types, seed derivation and extended reals."""

from __future__ import annotations

import functools
import hashlib
import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

__all__ = [
    "ParameterError",
    "DomainError",
    "NumericError",
    "ResourceError",
    "ModelParams",
    "ScaledPath",
    "ExtReal",
    "POS_INF",
    "NEG_INF",
    "derive_seed",
    "rng_from_seed",
]

_MASK64 = (1 << 64) - 1


class ParameterError(ValueError):
    """Invalid model parameter (c <= 0, c > n, bad vertex index, ...)."""


class DomainError(ValueError):
    """Input outside the mathematical domain of an operation."""


class NumericError(ArithmeticError):
    """A numerical procedure failed to bracket or converge."""


class ResourceError(RuntimeError):
    """Requested computation exceeds a configured size cap."""


@dataclass(frozen=True)
class ModelParams:
    """Edge-density parameter ``c`` of G(n, c/n) and, optionally, the size ``n``.

    ``c <= n`` is required whenever ``n >= 2``; for ``n = 1`` there are no
    vertex pairs and any ``c > 0`` is accepted (``p`` is then reported as 1).
    """

    c: float
    n: Optional[int] = None

    def __post_init__(self):
        c = float(self.c)
        if not math.isfinite(c) or c <= 0.0:
            raise ParameterError(f"c must be a finite positive real, got {self.c!r}")
        object.__setattr__(self, "c", c)
        if self.n is not None:
            if int(self.n) != self.n or self.n < 1:
                raise ParameterError(f"n must be a positive integer, got {self.n!r}")
            object.__setattr__(self, "n", int(self.n))
            # a single vertex has no pairs, so the edge probability never enters
            if c > self.n and self.n > 1:
                raise ParameterError(
                    f"edge probability c/n = {c}/{self.n} exceeds 1 (requires c <= n)")

    @property
    def p(self) -> float:
        """Edge probability ``c / n``."""
        if self.n is None:
            raise ParameterError("edge probability needs n")
        return min(self.c / self.n, 1.0)

    def require_n(self) -> int:
        if self.n is None:
            raise ParameterError("this operation needs the graph size n")
        return self.n


@functools.total_ordering
@dataclass(frozen=True)
class ExtReal:
    """A real number or a signed infinity, kept as an explicit tag.

    ``ExtReal(2.5)`` is finite; ``POS_INF`` and ``NEG_INF`` are the two
    infinite values. Construction from a non-finite float is rejected so that
    overflow never masquerades as a semantic infinity.
    """

    value: float = 0.0
    inf: int = 0

    def __post_init__(self):
        if self.inf not in (-1, 0, 1):
            raise ValueError("inf tag must be -1, 0 or +1")
        if self.inf:
            object.__setattr__(self, "value", 0.0)
        else:
            v = float(self.value)
            if not math.isfinite(v):
                raise NumericError(f"non-finite float {v!r} used as a finite ExtReal")
            object.__setattr__(self, "value", v)

    @property
    def is_finite(self) -> bool:
        return self.inf == 0

    def __float__(self) -> float:
        if self.inf:
            return math.inf if self.inf > 0 else -math.inf
        return self.value

    def _key(self):
        return (self.inf, self.value)

    def __eq__(self, other):
        if isinstance(other, ExtReal):
            return self._key() == other._key()
        if isinstance(other, (int, float)):
            return float(self) == other
        return NotImplemented

    def __lt__(self, other):
        if isinstance(other, ExtReal):
            return self._key() < other._key()
        if isinstance(other, (int, float)):
            return float(self) < other
        return NotImplemented

    def __hash__(self):
        return hash(self._key())

    def __add__(self, other: "ExtReal") -> "ExtReal":
        if not isinstance(other, ExtReal):
            other = ExtReal(other)
        if self.inf and other.inf and self.inf != other.inf:
            raise NumericError("inf - inf is undefined")
        if self.inf or other.inf:
            return self if self.inf else other
        return ExtReal(self.value + other.value)

    def __repr__(self):
        if self.inf:
            return "ExtReal(+inf)" if self.inf > 0 else "ExtReal(-inf)"
        return f"ExtReal({self.value!r})"


POS_INF = ExtReal(inf=1)
NEG_INF = ExtReal(inf=-1)


@dataclass(frozen=True)
class ScaledPath:
    """Nondecreasing path on [0, 1] with values in [0, 1].

    ``interpolation`` is ``"step"`` (right-continuous, value ``values[i]`` on
    ``[times[i], times[i+1])``) or ``"linear"``.
    """

    times: np.ndarray
    values: np.ndarray
    interpolation: str = "step"

    def __post_init__(self):
        t = np.array(self.times, dtype=float)
        v = np.array(self.values, dtype=float)
        if t.ndim != 1 or t.shape != v.shape or t.size == 0:
            raise ParameterError("times and values must be 1-d arrays of equal, nonzero length")
        if self.interpolation not in ("step", "linear"):
            raise ParameterError(f"unknown interpolation {self.interpolation!r}")
        if t[0] != 0.0 or t[-1] > 1.0 or np.any(np.diff(t) < 0):
            raise ParameterError("times must be nondecreasing in [0, 1] and start at 0")
        if v[0] != 0.0:
            raise ParameterError("path must start at 0")
        if np.any(v < 0.0) or np.any(v > 1.0):
            raise ParameterError("path values must lie in [0, 1]")
        if np.any(np.diff(v) < 0):
            raise ParameterError("path values must be nondecreasing")
        t.flags.writeable = False
        v.flags.writeable = False
        object.__setattr__(self, "times", t)
        object.__setattr__(self, "values", v)

    def __call__(self, t):
        """Evaluate the path at time(s) ``t``; constant extension past the last knot."""
        t = np.asarray(t, dtype=float)
        if self.interpolation == "linear":
            return np.interp(t, self.times, self.values)
        idx = np.searchsorted(self.times, t, side="right") - 1
        return self.values[np.clip(idx, 0, self.values.size - 1)]


def derive_seed(master_seed: int, stream_index: int) -> int:
    """Derive an independent 64-bit seed for stream ``stream_index``.

    The derivation hashes both integers with BLAKE2b, so seeds for different
    streams are unrelated and the mapping does not depend on call order.

    >>> derive_seed(0, 0)
    7740861921850268097
    """
    payload = (int(master_seed) & _MASK64).to_bytes(8, "little") + \
        (int(stream_index) & _MASK64).to_bytes(8, "little")
    digest = hashlib.blake2b(payload, digest_size=8, person=b"greedy-ldp-seed").digest()
    return int.from_bytes(digest, "little")


def rng_from_seed(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))
