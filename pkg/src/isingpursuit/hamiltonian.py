"""Diagonal Ising Hamiltonians as weighted Pauli-Z strings.

Each measurement pattern expands into a tensor product of (I+Z)/2 per
bit fixed to 0, (I-Z)/2 per bit fixed to 1, and I on free bits.  Scaling
the expansions by the residual entries and summing gives a generalized
Ising Hamiltonian whose diagonal equals A^T r: the spin value on bit b
is 1 - 2b, so bit 0 maps to +1 and bit 1 to -1.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .measurement import MeasurementSet

# Exact cancellations occur for complete value-assignment groups; drop the dust.
COEFF_PRUNE_TOL = 1e-15


@dataclass
class IsingHamiltonian:
    """Map from Z-string supports (frozensets of 1-based qubits) to coefficients."""

    n: int
    terms: dict[frozenset[int], float] = field(default_factory=dict)

    def __post_init__(self):
        for support in self.terms:
            for j in support:
                if not 1 <= j <= self.n:
                    raise ValueError(f"qubit {j} outside [1, {self.n}]")

    def evaluate(self, z: int) -> float:
        """Diagonal entry at basis index z: sum of coeff * prod of spin values."""
        total = 0.0
        for support, coeff in self.terms.items():
            sign = 1
            for j in support:
                if (z >> (self.n - j)) & 1:
                    sign = -sign
            total += coeff * sign
        return total

    def diagonal(self) -> np.ndarray:
        """All 2**n diagonal entries at once (vectorized evaluate)."""
        d = 1 << self.n
        zs = np.arange(d, dtype=np.int64)
        diag = np.zeros(d)
        for support, coeff in self.terms.items():
            signs = np.ones(d)
            for j in support:
                signs *= 1.0 - 2.0 * ((zs >> (self.n - j)) & 1)
            diag += coeff * signs
        return diag

    def negated(self) -> "IsingHamiltonian":
        return IsingHamiltonian(self.n, {s: -c for s, c in self.terms.items()})

    def max_support_size(self) -> int:
        return max((len(s) for s in self.terms), default=0)

    def __add__(self, other: "IsingHamiltonian") -> "IsingHamiltonian":
        if self.n != other.n:
            raise ValueError(f"cannot add Hamiltonians on {self.n} and {other.n} qubits")
        merged = dict(self.terms)
        for support, coeff in other.terms.items():
            merged[support] = merged.get(support, 0.0) + coeff
        return IsingHamiltonian(self.n, _pruned(merged))

    def dump(self) -> str:
        """One line per term, "coeff  Z_i Z_j ...", sorted by support."""
        lines = []
        for support in sorted(self.terms, key=lambda s: (len(s), sorted(s))):
            zs = " ".join(f"Z_{j}" for j in sorted(support))
            lines.append(f"{self.terms[support]:+.12g}  {zs}".rstrip())
        return "\n".join(lines)


def _pruned(terms: dict[frozenset[int], float]) -> dict[frozenset[int], float]:
    return {s: c for s, c in terms.items() if abs(c) >= COEFF_PRUNE_TOL}


def build_hamiltonian(ms: MeasurementSet, r: np.ndarray) -> IsingHamiltonian:
    """Assemble H = A^T r so that H.evaluate(z) == column_dot(z, r, ms).

    Pattern i with k fixed bits contributes r_i / 2**k to every subset of
    its fixed positions, signed by the product of (1 - 2*value) over the
    subset.  Like supports merge additively; near-zero results are pruned.
    """
    if len(r) != len(ms.patterns):
        raise ValueError(f"residual length {len(r)} != pattern count {len(ms.patterns)}")
    terms: dict[frozenset[int], float] = {}
    for p, ri in zip(ms.patterns, r):
        if ri == 0.0:
            continue
        k = p.k
        base = float(ri) / (1 << k)
        for subset in itertools.chain.from_iterable(
            itertools.combinations(p.constraints, size) for size in range(k + 1)
        ):
            sign = 1
            for _, val in subset:
                if val:
                    sign = -sign
            support = frozenset(bit for bit, _ in subset)
            terms[support] = terms.get(support, 0.0) + sign * base
    return IsingHamiltonian(ms.n, _pruned(terms))
