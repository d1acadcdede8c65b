"""Exhaustive reference solvers.

Small, slow, and deliberately independent of the optimized code paths in
:mod:`qprefix.codec`: monotone entropy is minimized by enumerating every
candidate length tuple, and the compression rate by iterating every
permutation of the state indices.  Probabilities are handled in exact
rational arithmetic (floats are dyadic rationals, so the scaling below is
lossless) and Kraft sums in exact dyadic integers, so the results can be
trusted as test oracles.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import ValidationError

MAX_N = 8
MAX_CAP = 16


@dataclass(frozen=True)
class OracleResult:
    value: float
    witness: tuple
    search_space_size: int


def _scaled_ints(p):
    # floats are dyadic, so the max denominator is the common denominator
    fracs = [Fraction(float(x)) for x in p]
    denom = max(f.denominator for f in fracs)
    return [int(f * denom) for f in fracs], denom


def hmon_bruteforce(p, cap: int) -> OracleResult:
    """Minimize sum p_i l_i over nondecreasing integer tuples with Kraft sum <= 1.

    Enumerates every nondecreasing tuple with entries in [0, cap] and keeps
    the exact minimum; ties go to the lexicographically smallest tuple.
    """
    p = [float(x) for x in p]
    n = len(p)
    if n == 0:
        raise ValidationError("empty distribution")
    if any(x <= 0.0 for x in p):
        raise ValidationError("weights must be strictly positive")
    if n > MAX_N:
        raise ValidationError("hmon_bruteforce handles at most %d weights" % MAX_N)
    if not 0 <= cap <= MAX_CAP:
        raise ValidationError("cap must lie in [0, %d]" % MAX_CAP)

    nums, denom = _scaled_ints(p)
    full = 1 << cap
    best_obj = None
    best = None
    count = 0
    for tup in itertools.combinations_with_replacement(range(cap + 1), n):
        count += 1
        if sum(1 << (cap - l) for l in tup) > full:
            continue
        obj = sum(w * l for w, l in zip(nums, tup))
        if best_obj is None or obj < best_obj:
            best_obj = obj
            best = tup
    if best is None:
        raise ValidationError("no Kraft-feasible tuple with entries <= %d" % cap)
    return OracleResult(float(Fraction(best_obj, denom)), best, count)


def _rank(mat) -> int:
    if mat.shape[1] == 0:
        return 0
    return int(np.linalg.matrix_rank(mat))


def rate_bruteforce(ensemble) -> OracleResult:
    """Minimum monotone entropy over every choice-order of the ensemble states.

    Each permutation of the indices is used as the sequence of chosen
    representatives; vectors already absorbed by an earlier group are
    skipped.  Group membership is decided by a matrix-rank test, which keeps
    this oracle mechanically independent of the Gram-Schmidt bookkeeping in
    the codec.
    """
    probs = [float(x) for x in ensemble.probs]
    vecs = [np.asarray(v, dtype=complex) for v in ensemble.vectors]
    n = len(probs)
    if n == 0:
        raise ValidationError("empty ensemble")
    if n > MAX_N:
        raise ValidationError("rate_bruteforce handles at most %d states" % MAX_N)
    cols = np.column_stack(vecs)

    rank_cache: dict[frozenset, int] = {}

    def rank_of(idx_set: frozenset) -> int:
        if idx_set not in rank_cache:
            rank_cache[idx_set] = _rank(cols[:, sorted(idx_set)])
        return rank_cache[idx_set]

    group_cache: dict[tuple, tuple] = {}

    def group_for(consumed: frozenset, rep: int) -> tuple:
        key = (consumed, rep)
        if key not in group_cache:
            span = consumed | {rep}
            r = rank_of(frozenset(span))
            members = [rep]
            for j in range(n):
                if j == rep or j in consumed:
                    continue
                if rank_of(frozenset(span | {j})) == r:
                    members.append(j)
            group_cache[key] = tuple(sorted(members))
        return group_cache[key]

    hmon_cache: dict[tuple, OracleResult] = {}
    best = None  # (value, order, projection, lengths)
    for perm in itertools.permutations(range(n)):
        consumed: frozenset = frozenset()
        pprime = []
        order = []
        for idx in perm:
            if idx in consumed:
                continue
            members = group_for(consumed, idx)
            pprime.append(math.fsum(probs[j] for j in members))
            order.append(idx)
            consumed = consumed | set(members)
        key = tuple(pprime)
        if key not in hmon_cache:
            hmon_cache[key] = hmon_bruteforce(pprime, min(MAX_CAP, 2 * len(pprime)))
        res = hmon_cache[key]
        cand = (res.value, tuple(order), key, res.witness)
        if best is None or cand[0] < best[0]:
            best = cand
    return OracleResult(best[0], (best[1], best[2], best[3]),
                        math.factorial(n))


def projections_bruteforce(ensemble) -> set:
    """Distinct grouped probability vectors reachable by any choice order.

    Same permutation sweep as :func:`rate_bruteforce`, returned as a set of
    tuples rounded to 12 decimals for comparison against the codec output.
    """
    probs = [float(x) for x in ensemble.probs]
    vecs = [np.asarray(v, dtype=complex) for v in ensemble.vectors]
    n = len(probs)
    if n > MAX_N:
        raise ValidationError("projections_bruteforce handles at most %d states" % MAX_N)
    cols = np.column_stack(vecs)

    rank_cache: dict[frozenset, int] = {}

    def rank_of(idx_set: frozenset) -> int:
        if idx_set not in rank_cache:
            rank_cache[idx_set] = _rank(cols[:, sorted(idx_set)])
        return rank_cache[idx_set]

    out = set()
    for perm in itertools.permutations(range(n)):
        consumed: frozenset = frozenset()
        pprime = []
        for idx in perm:
            if idx in consumed:
                continue
            span = consumed | {idx}
            r = rank_of(frozenset(span))
            members = [idx]
            for j in range(n):
                if j == idx or j in consumed:
                    continue
                if rank_of(frozenset(span | {j})) == r:
                    members.append(j)
            pprime.append(math.fsum(probs[j] for j in sorted(members)))
            consumed = consumed | set(members)
        out.add(tuple(round(x, 12) for x in pprime))
    return out
