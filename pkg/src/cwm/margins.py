"""Intersection-number systems for the folds of a candidate matrix.

Folding a CW(n, s^2) onto a quotient Z_m gives orbit-constant integers
b_i with

    sum_i b_i * size_i   = s
    sum_i b_i^2 * size_i = k = s^2
    |b_i| <= coefficient bound * (n / m)

one b per orbit of the multiplier on Z_m.  Solving these systems (and
shrinking the solution set with the self-conjugacy divisibility theorem
and with full fold consistency) yields the row/column margin targets
that drive the exhaustive search.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .numbertheory import OrbitPartition, is_self_conjugate


@dataclass(frozen=True)
class MarginSolution:
    orbit_sizes: tuple[int, ...]
    values: tuple[int, ...]  # one intersection number per orbit

    @property
    def scaled(self) -> tuple[int, ...]:
        return tuple(b * size for b, size in zip(self.values, self.orbit_sizes))

    @property
    def total(self) -> int:
        return sum(self.scaled)


def solve_margin_system(s: int, k: int, orbit_sizes: Sequence[int], bound: int) -> list[MarginSolution]:
    """All integer vectors b with sum b_i*size_i = s, sum b_i^2*size_i = k,
    |b_i| <= bound, in lexicographic order."""
    if s * s != k:
        raise ValueError(f"k = {k} is not s^2 for s = {s}")
    sizes = tuple(int(x) for x in orbit_sizes)
    nvar = len(sizes)
    # suffix sums for pruning: max residual linear mass, given remaining square budget
    suffix_size = [0] * (nvar + 1)
    for i in range(nvar - 1, -1, -1):
        suffix_size[i] = suffix_size[i + 1] + sizes[i]
    out: list[MarginSolution] = []
    acc = [0] * nvar

    def rec(i: int, lin: int, sq: int):
        if i == nvar:
            if lin == s and sq == k:
                out.append(MarginSolution(sizes, tuple(acc)))
            return
        size = sizes[i]
        for b in range(-bound, bound + 1):
            nsq = sq + b * b * size
            if nsq > k:
                continue
            nlin = lin + b * size
            # Cauchy-Schwarz: residual linear sum squared <= budget * mass
            need = s - nlin
            if need * need > (k - nsq) * suffix_size[i + 1]:
                continue
            acc[i] = b
            rec(i + 1, nlin, nsq)
        acc[i] = 0

    rec(0, 0, 0)
    return out


def self_conjugacy_filter(
    solutions: Iterable[MarginSolution], p: int, modulus: int, a: int
) -> list[MarginSolution]:
    """Keep only solutions with every b_i divisible by p^a.

    Sound only when p is self-conjugate mod the folded modulus (checked
    here); then the fold of any valid matrix is 0 mod p^a coefficientwise.
    """
    if a < 0:
        raise ValueError("a must be >= 0")
    if a == 0:
        return list(solutions)
    if not is_self_conjugate(p, modulus):
        raise ValueError(f"{p} is not self-conjugate mod {modulus}; filter would be unsound")
    q = p**a
    return [sol for sol in solutions if all(b % q == 0 for b in sol.values)]


def expand(solution: MarginSolution, partition: OrbitPartition) -> tuple[int, ...]:
    """Element-wise vector over Z_modulus with b_i on each orbit member."""
    vec = [0] * partition.modulus
    for (_, members), b in zip(partition.orbits, solution.values):
        for x in members:
            vec[x] = b
    return tuple(vec)


def fold_consistency_filter(
    solutions: Iterable[MarginSolution], partition: OrbitPartition, k: int
) -> list[MarginSolution]:
    """Keep solutions whose expanded vector B satisfies B * B^(-1) = k.

    The fold of any valid matrix satisfies the full defining equation on
    the quotient, not just the two moment identities, so this filter
    never discards the fold of a true solution.
    """
    mod = partition.modulus
    out = []
    for sol in solutions:
        vec = expand(sol, partition)
        ok = sum(v * v for v in vec) == k
        if ok:
            for shift in range(1, mod):
                if sum(vec[i] * vec[(i + shift) % mod] for i in range(mod)):
                    ok = False
                    break
        if ok:
            out.append(sol)
    return out


def shift_orbit_permutations(partition: OrbitPartition) -> list[tuple[int, ...]]:
    """Permutations of orbit indices induced by the translations that
    commute with the multiplier action (x with (t-1)x = 0 mod modulus)."""
    mod, t = partition.modulus, partition.multiplier
    perms = []
    for x in range(mod):
        if ((t - 1) * x) % mod == 0:
            perms.append(
                tuple(partition.orbit_of((rep + x) % mod) for rep, _ in partition.orbits)
            )
    return perms


def _canonical_scaled(scaled: tuple[int, ...], perms: list[tuple[int, ...]]) -> tuple[int, ...]:
    # lexicographically greatest image; index i of the result takes the value
    # of the orbit that moves onto position i
    best = None
    for perm in perms:
        cand = tuple(scaled[perm[i]] for i in range(len(scaled)))
        if best is None or cand > best:
            best = cand
    return best


def reduce_by_shifts(
    solutions: Iterable[MarginSolution], partition: OrbitPartition
) -> list[MarginSolution]:
    """One representative per orbit of the translation action, chosen as
    the lexicographically greatest scaled vector."""
    perms = shift_orbit_permutations(partition)
    sizes = partition.sizes
    seen = {}
    for sol in solutions:
        key = _canonical_scaled(sol.scaled, perms)
        if key not in seen:
            values = tuple(v // s for v, s in zip(key, sizes))
            seen[key] = MarginSolution(sizes, values)
    return [seen[key] for key in sorted(seen)]


def margin_pairs(
    row_solutions: Iterable[MarginSolution],
    col_solutions: Iterable[MarginSolution],
    row_partition: OrbitPartition = None,
    col_partition: OrbitPartition = None,
    symmetry_reduction: bool = True,
) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    """Cartesian pairs of scaled row/column margin vectors.

    With symmetry_reduction (requires the partitions), pairs are
    deduplicated under independent row/column translation actions,
    keeping the lexicographically greatest (r, c).
    """
    rows = [sol.scaled for sol in row_solutions]
    cols = [sol.scaled for sol in col_solutions]
    if not symmetry_reduction:
        return [(r, c) for r in rows for c in cols]
    if row_partition is None or col_partition is None:
        raise ValueError("symmetry reduction needs both orbit partitions")
    rperms = shift_orbit_permutations(row_partition)
    cperms = shift_orbit_permutations(col_partition)
    seen = {}
    for r in rows:
        rkey = _canonical_scaled(r, rperms)
        for c in cols:
            ckey = _canonical_scaled(c, cperms)
            seen[(rkey, ckey)] = None
    return sorted(seen)
