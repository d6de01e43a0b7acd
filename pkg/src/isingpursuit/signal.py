"""Sparse signals over a 2**n index space.

Positions are integers in [0, 2**n) read as n-bit strings with bit 1 the
most significant (leftmost) bit.  This convention is shared by the
measurement and hamiltonian modules and must not drift.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

# dense_vector materializes 2**n floats; keep that off the table for big n.
DENSE_VECTOR_CAP = 20


def bit_at(z: int, j: int, n: int) -> int:
    """Bit j (1-based, MSB-first) of the n-bit index z."""
    return (z >> (n - j)) & 1


@dataclass(frozen=True)
class SparseSignal:
    """A sparse vector of length 2**n as (position, value) spikes.

    Positions are pairwise distinct and values nonzero.  Empty spike lists
    are allowed so that reconstruction results can represent "nothing
    recovered"; the random generator always emits at least one spike.
    """

    n: int
    spikes: tuple[tuple[int, float], ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"bit count must be >= 1, got {self.n}")
        d = 1 << self.n
        positions = [p for p, _ in self.spikes]
        if len(set(positions)) != len(positions):
            raise ValueError("spike positions must be pairwise distinct")
        for pos, val in self.spikes:
            if not 0 <= pos < d:
                raise ValueError(f"position {pos} outside [0, {d})")
            if val == 0.0:
                raise ValueError(f"spike value at position {pos} is zero")

    @property
    def sparsity(self) -> int:
        return len(self.spikes)

    def positions(self) -> set[int]:
        return {p for p, _ in self.spikes}

    def dense(self) -> np.ndarray:
        """Full-length vector with spike values placed at their positions."""
        if self.n > DENSE_VECTOR_CAP:
            raise ValueError(
                f"refusing to materialize 2**{self.n} entries (cap {DENSE_VECTOR_CAP})"
            )
        x = np.zeros(1 << self.n)
        for pos, val in self.spikes:
            x[pos] = val
        return x

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "spikes": [{"pos": p, "val": v} for p, v in self.spikes],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @classmethod
    def from_dict(cls, data: dict) -> "SparseSignal":
        spikes = tuple((int(s["pos"]), float(s["val"])) for s in data["spikes"])
        return cls(n=int(data["n"]), spikes=spikes)

    @classmethod
    def from_json(cls, text: str) -> "SparseSignal":
        return cls.from_dict(json.loads(text))


def random_sparse_signal(
    n: int,
    s: int,
    value_range: tuple[float, float] = (0.1, 1.0),
    seed=None,
) -> SparseSignal:
    """Draw s spikes at distinct uniform positions with uniform positive values.

    The amplitude range is bounded away from zero so "position recovered"
    stays well-defined downstream.
    """
    d = 1 << n
    if not 1 <= s <= d:
        raise ValueError(f"sparsity must satisfy 1 <= s <= 2**{n}, got {s}")
    lo, hi = value_range
    if not 0.0 < lo < hi:
        raise ValueError(f"value range must be positive and increasing, got {value_range}")
    rng = np.random.default_rng(seed)
    if n <= DENSE_VECTOR_CAP:
        positions = rng.choice(d, size=s, replace=False)
    else:
        # rejection sampling; fine whenever s << 2**n, which is the sparse regime
        chosen: set[int] = set()
        while len(chosen) < s:
            chosen.add(int(rng.integers(0, d)))
        positions = sorted(chosen)
    values = rng.uniform(lo, hi, size=s)
    spikes = tuple((int(p), float(v)) for p, v in zip(positions, values))
    return SparseSignal(n=n, spikes=spikes)


def from_dense(x: np.ndarray, n: int) -> SparseSignal:
    """Re-sparsify a dense vector (inverse of SparseSignal.dense)."""
    if len(x) != 1 << n:
        raise ValueError(f"expected length {1 << n}, got {len(x)}")
    spikes = tuple((int(p), float(v)) for p, v in enumerate(x) if v != 0.0)
    return SparseSignal(n=n, spikes=spikes)
