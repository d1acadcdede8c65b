"""Prefix-freedom of qubit strings, the Kraft chain, and prefix distinguishability.

A set M of qubit strings is prefix-free when no element can be reached by
appending a nonempty classical suffix to another: <phi | psi * s> = 0 for
all phi, psi in M and all nonempty classical s.  For a subspace the notion
is basis-independent, so orthonormal bases are the natural carriers here.

For an orthonormal prefix-free system {e_i} the three Kraft-style sums

    sum_i 2^(-L(e_i))  <=  sum_i 2^(-lbar(e_i))  <=  sum_i <e_i|2^(-Lambda)|e_i>  <=  1

hold, with the first two inequalities tight exactly when every e_i is a
length eigenvector (single support length).  The third sum is the trace of
2^(-Lambda) over the spanned subspace.

Prefix-freedom of zero-padded registers can be read off reduced density
operators: the code word phi, padded to l_max qubits and reduced to its
first n qubits, must be orthogonal to every other word psi of length n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import ValidationError
from .qstring import (EPS, BitString, QubitString, avg_length, base_length,
                      inner, zero_extended)

# Qubit count above which dense reduced density matrices are refused.
MAX_FRAGMENT_QUBITS = 12
# Residual norm below which a vector counts as linearly dependent.
DEP_TOL = 1e-7


@dataclass(frozen=True)
class Witness:
    """A violation of prefix-freedom: <phi | psi * suffix> != 0."""
    phi: int
    psi: int
    suffix: BitString


@dataclass(frozen=True)
class KraftChain:
    sum_base: float
    sum_avg: float
    trace_term: float

    def __post_init__(self):
        ok = (self.sum_base <= self.sum_avg + EPS
              and self.sum_avg <= self.trace_term + EPS
              and self.trace_term <= 1.0 + EPS)
        if not ok:
            raise ValidationError("Kraft chain ordering violated: %r" % (self,))


def _orthonormality_defect(vectors) -> float:
    worst = 0.0
    for i, u in enumerate(vectors):
        for j, v in enumerate(vectors):
            if j < i:
                continue
            g = inner(u, v)
            target = 1.0 if i == j else 0.0
            worst = max(worst, abs(g - target))
    return worst


def is_orthonormal(vectors, eps: float = EPS) -> bool:
    return _orthonormality_defect(vectors) <= eps


def is_prefix_free(vectors):
    """Decide prefix-freedom of a finite set; returns (flag, witness or None).

    Checks <phi | psi * s> = 0 for every ordered pair and every nonempty
    classical suffix s.  Suffixes longer than the maximal base length in the
    set cannot overlap any support string, so the scan stops there.
    """
    vectors = list(vectors)
    nonzero = [v for v in vectors if v.terms]
    if not nonzero:
        return True, None
    l_top = max(base_length(v) for v in nonzero)
    for i, phi in enumerate(vectors):
        for j, psi in enumerate(vectors):
            for length in range(1, l_top + 1):
                for value in range(1 << length):
                    s = BitString(length, value)
                    acc = 0j
                    for x, a in psi.items_sorted():
                        b = phi.terms.get(x.concat(s))
                        if b is not None:
                            acc += b.conjugate() * a
                    if abs(acc) > EPS:
                        return False, Witness(i, j, s)
    return True, None


def subspace_prefix_free(basis) -> bool:
    """Prefix-freedom of span(basis); the basis must be orthonormal."""
    basis = list(basis)
    if not is_orthonormal(basis):
        raise ValidationError("subspace test needs an orthonormal basis")
    ok, _ = is_prefix_free(basis)
    return ok


@dataclass(frozen=True)
class PrefixBasis:
    """Validated orthonormal prefix-free basis."""
    vectors: tuple = field(default_factory=tuple)
    is_classical: bool = True

    @classmethod
    def from_vectors(cls, vectors) -> "PrefixBasis":
        vectors = tuple(vectors)
        if not vectors:
            raise ValidationError("a prefix basis needs at least one vector")
        if not is_orthonormal(vectors):
            raise ValidationError("basis is not orthonormal")
        ok, wit = is_prefix_free(vectors)
        if not ok:
            raise ValidationError("basis is not prefix-free (witness %r)" % (wit,))
        classical = all(len(v.terms) == 1 and
                        abs(abs(next(iter(v.terms.values()))) - 1.0) <= EPS
                        for v in vectors)
        return cls(vectors, classical)


def kraft_chain(basis: PrefixBasis) -> KraftChain:
    """The three Kraft sums for an orthonormal prefix-free basis."""
    vecs = basis.vectors
    s_base = math.fsum(2.0 ** (-base_length(v)) for v in vecs)
    s_avg = math.fsum(2.0 ** (-avg_length(v)) for v in vecs)
    trace = math.fsum(abs(a) ** 2 * 2.0 ** (-s.length)
                      for v in vecs for s, a in v.items_sorted())
    return KraftChain(s_base, s_avg, trace)


@dataclass(frozen=True, eq=False)
class DensityFragment:
    """Reduced density operator on the first ``qubits`` qubits of a register."""
    qubits: int
    matrix: np.ndarray

    def __post_init__(self):
        n = self.qubits
        if not 0 <= n <= MAX_FRAGMENT_QUBITS:
            raise ValidationError("dense fragments support at most %d qubits"
                                  % MAX_FRAGMENT_QUBITS)
        m = self.matrix
        if m.shape != (1 << n, 1 << n):
            raise ValidationError("matrix shape does not match qubit count")
        if np.max(np.abs(m - m.conj().T)) > EPS:
            raise ValidationError("reduced state is not Hermitian")
        if abs(np.trace(m).real - 1.0) > EPS:
            raise ValidationError("reduced state trace is not 1")
        if np.linalg.eigvalsh(m).min() < -EPS:
            raise ValidationError("reduced state is not positive semidefinite")

    def expectation(self, psi: QubitString) -> float:
        """<psi| rho |psi> for a state supported on ``qubits``-bit strings."""
        acc = 0j
        for a_bits, a_amp in psi.items_sorted():
            if a_bits.length != self.qubits:
                raise ValidationError("state length does not match the fragment")
            for b_bits, b_amp in psi.items_sorted():
                acc += (a_amp.conjugate()
                        * self.matrix[a_bits.value, b_bits.value] * b_amp)
        return acc.real


def reduced_prefix_state(phi: QubitString, n: int, l_max: int) -> DensityFragment:
    """Trace qubits n+1 .. l_max out of the zero-extended form of ``phi``."""
    if n < 0 or n > l_max:
        raise ValidationError("need 0 <= n <= l_max")
    if n > MAX_FRAGMENT_QUBITS:
        raise ValidationError("dense fragments support at most %d qubits"
                              % MAX_FRAGMENT_QUBITS)
    if not phi.is_normalized():
        raise ValidationError("reduced states are defined for normalized inputs")
    padded = zero_extended(phi, l_max)
    dim = 1 << n
    rho = np.zeros((dim, dim), dtype=complex)
    by_tail: dict[BitString, list] = {}
    for s, a in padded.items_sorted():
        head, tail = s.prefix(n), BitString(l_max - n, s.value & ((1 << (l_max - n)) - 1))
        by_tail.setdefault(tail, []).append((head.value, a))
    for group in by_tail.values():
        for ia, aa in group:
            for ib, ab in group:
                rho[ia, ib] += aa * ab.conjugate()
    return DensityFragment(n, rho)


def _eigen_length(psi: QubitString) -> int:
    lengths = {s.length for s in psi.terms}
    if len(lengths) != 1:
        raise ValidationError("state is not a length eigenvector")
    return lengths.pop()


def distinguishable_by_prefix(vectors) -> bool:
    """Prefix distinguishability of orthonormal length eigenvectors.

    Equivalent to prefix-freedom on such systems: for every ordered pair,
    the reduction of the padded phi to the first len(psi) qubits must not
    overlap psi.
    """
    vectors = list(vectors)
    lengths = [_eigen_length(v) for v in vectors]
    if not is_orthonormal(vectors):
        raise ValidationError("prefix distinguishability needs an orthonormal system")
    l_max = max(lengths)
    for i, phi in enumerate(vectors):
        for j, psi in enumerate(vectors):
            if i == j:
                continue
            rho = reduced_prefix_state(phi, lengths[j], l_max)
            if rho.expectation(psi) > EPS:
                return False
    return True


def gram_schmidt(vectors, tol: float = DEP_TOL):
    """Orthonormalize in order; returns (orthonormal list, dependent flags).

    Accepts either QubitString values or ambient numpy vectors.  An input
    whose residual norm after projection drops below ``tol`` is flagged as
    dependent and excluded from the output list.
    """
    vectors = list(vectors)
    ortho = []
    flags = []
    for v in vectors:
        if isinstance(v, QubitString):
            w = v
            for u in ortho:
                w = w - inner(u, w) * u
            nrm = w.norm()
            if nrm < tol:
                flags.append(True)
                continue
            flags.append(False)
            ortho.append(w * (1.0 / nrm))
        else:
            w = np.asarray(v, dtype=complex).copy()
            for u in ortho:
                w = w - np.vdot(u, w) * u
            nrm = float(np.linalg.norm(w))
            if nrm < tol:
                flags.append(True)
                continue
            flags.append(False)
            ortho.append(w / nrm)
    return ortho, flags
