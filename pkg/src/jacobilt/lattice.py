"""Finite-support sequences on the integer lattice and the operators on them.

A `LatticeVector` stores phi(offset), phi(offset+1), ... and is zero
elsewhere; a `CompactPerturbation` stores the diagonal entries b_n and
off-diagonal couplings a_n of a doubly infinite symmetric tridiagonal
operator

    (W u)(n) = a_{n-1} u(n-1) + b_n u(n) + a_n u(n+1)

relative to the free values a_n = 1, b_n = 0 outside the stored window.
The convention throughout: the coupling stored at window index i sits
between sites offset+i and offset+i+1.

The difference operator is (D phi)(n) = phi(n+1) - phi(n), its adjoint
(D* phi)(n) = phi(n-1) - phi(n), and D*D is the (positive) lattice
Laplacian 2 phi(n) - phi(n+1) - phi(n-1).  All scalars are real.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .errors import UsageError


def _trimmed(offset: int, values: np.ndarray) -> tuple[int, np.ndarray]:
    nonzero = np.flatnonzero(values)
    if nonzero.size == 0:
        return 0, values[:0]
    lo, hi = nonzero[0], nonzero[-1] + 1
    return offset + int(lo), values[lo:hi]


@dataclass
class LatticeVector:
    """A real sequence with finite support; zero margins are trimmed."""

    offset: int = 0
    values: np.ndarray = field(default_factory=lambda: np.zeros(0))

    def __post_init__(self):
        vals = np.asarray(self.values, dtype=float)
        if vals.ndim != 1:
            raise UsageError("lattice vector values must be one-dimensional")
        self.offset, self.values = _trimmed(int(self.offset), vals)

    def __len__(self) -> int:
        return len(self.values)

    @property
    def end(self) -> int:
        """One past the last stored index."""
        return self.offset + len(self.values)

    def value_at(self, n: int) -> float:
        if self.offset <= n < self.end:
            return float(self.values[n - self.offset])
        return 0.0

    def on_window(self, first: int, last: int) -> np.ndarray:
        """Dense values on sites first..last inclusive."""
        out = np.zeros(last - first + 1)
        lo = max(first, self.offset)
        hi = min(last + 1, self.end)
        if lo < hi:
            out[lo - first : hi - first] = self.values[lo - self.offset : hi - self.offset]
        return out


def delta(n: int = 0) -> LatticeVector:
    """The unit vector supported at site n."""
    return LatticeVector(n, np.array([1.0]))


def inner(u: LatticeVector, v: LatticeVector) -> float:
    """Standard l2 pairing over the union of supports."""
    lo = max(u.offset, v.offset)
    hi = min(u.end, v.end)
    if lo >= hi:
        return 0.0
    return float(np.dot(u.values[lo - u.offset : hi - u.offset],
                        v.values[lo - v.offset : hi - v.offset]))


def norm(u: LatticeVector) -> float:
    return float(np.linalg.norm(u.values))


def apply_d(phi: LatticeVector) -> LatticeVector:
    """(D phi)(n) = phi(n+1) - phi(n); support grows one site to the left."""
    if len(phi) == 0:
        return LatticeVector()
    padded = np.concatenate(([0.0], phi.values, [0.0]))
    return LatticeVector(phi.offset - 1, padded[1:] - padded[:-1])


def apply_d_adjoint(phi: LatticeVector) -> LatticeVector:
    """(D* phi)(n) = phi(n-1) - phi(n); support grows one site to the right."""
    if len(phi) == 0:
        return LatticeVector()
    padded = np.concatenate(([0.0], phi.values, [0.0]))
    return LatticeVector(phi.offset, padded[:-1] - padded[1:])


def apply_laplacian(phi: LatticeVector) -> LatticeVector:
    """D*D phi, computed literally as the composition D* after D."""
    return apply_d_adjoint(apply_d(phi))


@dataclass
class CompactPerturbation:
    """Finite-window perturbation (b_n, a_n) of the free Jacobi operator.

    `b` and `a` share one window of equal length: b[i] lives at site
    offset+i and a[i] couples offset+i to offset+i+1.  Entries of `a`
    must be positive; omitted `a` means free couplings (all ones).
    """

    offset: int = 0
    b: np.ndarray = field(default_factory=lambda: np.zeros(0))
    a: np.ndarray | None = None

    def __post_init__(self):
        b = np.asarray(self.b, dtype=float)
        a = np.ones_like(b) if self.a is None else np.asarray(self.a, dtype=float)
        if b.ndim != 1 or a.ndim != 1:
            raise UsageError("perturbation windows must be one-dimensional")
        if len(a) != len(b):
            raise UsageError(f"a and b windows must match, got {len(a)} vs {len(b)}")
        if np.any(a <= 0.0):
            raise UsageError("off-diagonal entries a_n must be strictly positive")
        # canonical form: trim margins that already equal the free operator
        active = (b != 0.0) | (a != 1.0)
        idx = np.flatnonzero(active)
        if idx.size == 0:
            self.offset, self.b, self.a = 0, b[:0], a[:0]
        else:
            lo, hi = idx[0], idx[-1] + 1
            self.offset = int(self.offset) + int(lo)
            self.b, self.a = b[lo:hi], a[lo:hi]

    def __len__(self) -> int:
        return len(self.b)

    @property
    def end(self) -> int:
        return self.offset + len(self.b)

    @property
    def is_empty(self) -> bool:
        return len(self.b) == 0

    @property
    def has_free_couplings(self) -> bool:
        return bool(np.all(self.a == 1.0))

    def b_at(self, n: int) -> float:
        if self.offset <= n < self.end:
            return float(self.b[n - self.offset])
        return 0.0

    def a_at(self, n: int) -> float:
        """Coupling between sites n and n+1."""
        if self.offset <= n < self.end:
            return float(self.a[n - self.offset])
        return 1.0

    def to_json_dict(self) -> dict:
        return {"offset": int(self.offset), "b": self.b.tolist(), "a": self.a.tolist()}

    @classmethod
    def from_json_dict(cls, data: dict) -> "CompactPerturbation":
        if not isinstance(data, dict) or "b" not in data:
            raise UsageError('perturbation JSON must be an object with a "b" array')
        return cls(offset=int(data.get("offset", 0)), b=data["b"], a=data.get("a"))

    @classmethod
    def from_json_file(cls, path) -> "CompactPerturbation":
        with open(path) as fh:
            return cls.from_json_dict(json.load(fh))


def apply_jacobi(pert: CompactPerturbation, u: LatticeVector) -> LatticeVector:
    """Pointwise action of W on u, with free entries outside the window."""
    if len(u) == 0:
        return LatticeVector()
    first, last = u.offset - 1, u.end  # result support
    n_sites = last - first + 1
    sites = np.arange(first, last + 1)
    uvals = u.on_window(first - 1, last + 1)  # padded by one on each side
    b_vals = np.zeros(n_sites)
    a_vals = np.ones(n_sites + 1)  # a_vals[i] couples sites[i]-1 and sites[i]
    for i, n in enumerate(sites):
        b_vals[i] = pert.b_at(n)
        a_vals[i] = pert.a_at(n - 1)
    a_vals[n_sites] = pert.a_at(last)
    out = a_vals[:-1] * uvals[:-2] + b_vals * uvals[1:-1] + a_vals[1:] * uvals[2:]
    return LatticeVector(first, out)
