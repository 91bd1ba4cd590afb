"""Greedy construction of non-binary quasi-cyclic liftings.

Every nonzero position (i, j) of a binary base matrix receives a monomial
beta * x^z: the expanded parity-check matrix replaces that position with
the shift-z permutation circulant scaled by beta.  A cycle of the base
matrix is *eliminated* when the determinant of the assigned polynomial
submatrix over its rows and columns is nonzero in GF(q)[x]/(x^s - 1);
uneliminated short cycles survive into the expanded Tanner graph and are
what degrades message-passing decoding.

The construction starts from the all-(beta=1, z=0) assignment, walks the
edges column by column, and redraws each edge a fixed number of times
from the uniform distribution on {0..s-1} x GF(q)\\{0}.  A redraw is kept
when the matrix-wide ACE vector (minimum ACE per cycle length over the
cycles still uneliminated, infinity once a length is clear) does not get
lexicographically worse; accepting equal vectors keeps the search moving
across plateaus, which a strict-improvement rule cannot do once two
disjoint cycles share the minimum (neither single-edge redraw can then
improve the global minimum, and every elimination would be reverted).
The accepted-vector sequence is therefore non-decreasing, and once a
length reaches infinity no later redraw may break it.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

import numpy as np

from .base_graph import (
    AceVector,
    BaseMatrix,
    Cycle,
    all_cycles,
    cycle_ace,
    girth,
    lex_compare,
)
from .gf import GF
from .ring import Monomial, PolyMatrix, RingPoly

MAX_DEPTH = 12  # cycle submatrices stay within the supported determinant size


@dataclass(frozen=True)
class ConstructionConfig:
    """Inputs of the greedy construction."""

    s: int
    q: int
    depth: int = 8
    trials_per_edge: int = 100
    rng_seed: int = 0
    cycle_cap: int | None = 100_000

    def __post_init__(self) -> None:
        if self.s < 2:
            raise ValueError("circulant size must be at least 2")
        if self.q < 2 or self.q & (self.q - 1):
            raise ValueError(f"q must be a power of 2, got {self.q}")
        if self.depth < 4 or self.depth % 2:
            raise ValueError("depth must be even and at least 4")
        if self.depth > MAX_DEPTH:
            raise ValueError(f"depth above {MAX_DEPTH} is not supported")
        if self.trials_per_edge < 1:
            raise ValueError("trials_per_edge must be at least 1")
        if self.cycle_cap is not None and self.cycle_cap < 1:
            raise ValueError("cycle_cap must be positive or None")

    def make_field(self) -> GF:
        return GF(self.q.bit_length() - 1)


@dataclass(eq=True)
class Lifting:
    """A complete per-edge (beta, shift) assignment for a base matrix."""

    base: BaseMatrix
    s: int
    field: GF
    assignment: dict[tuple[int, int], Monomial]

    def __post_init__(self) -> None:
        expected = set(self.base.ones())
        if set(self.assignment) != expected:
            raise ValueError("assignment must cover exactly the nonzero base positions")
        for (i, j), mono in self.assignment.items():
            if not 0 <= mono.shift < self.s:
                raise ValueError(f"shift out of range at ({i}, {j})")
            if not 1 <= mono.beta < self.field.q:
                raise ValueError(f"coefficient out of range at ({i}, {j})")

    @classmethod
    def trivial(cls, base: BaseMatrix, s: int, field: GF) -> "Lifting":
        """The deterministic baseline: beta=1, shift=0 on every edge."""
        return cls(base, s, field, {pos: Monomial(1, 0) for pos in base.ones()})

    def to_poly_matrix(self) -> PolyMatrix:
        zero = RingPoly.zero(self.field, self.s)
        grid = [
            [
                self.assignment[(i, j)].to_poly(self.field, self.s)
                if self.base.bits[i, j]
                else zero
                for j in range(self.base.n)
            ]
            for i in range(self.base.m)
        ]
        return PolyMatrix.from_entries(self.field, self.s, grid)

    def expand(self) -> np.ndarray:
        return self.to_poly_matrix().expand()


@dataclass(frozen=True)
class AcceptedTrial:
    edge: tuple[int, int]
    shift: int
    beta: int
    ace: tuple[float, ...]

    def format(self) -> str:
        body = ", ".join("inf" if math.isinf(v) else str(int(v)) for v in self.ace)
        return (
            f"edge=({self.edge[0]},{self.edge[1]}) z={self.shift} "
            f"beta={self.beta} ace=({body})"
        )


@dataclass
class ConstructionReport:
    ace: AceVector
    cycle_counts: dict[int, tuple[int, int]]  # length -> (uneliminated, eliminated)
    expanded_girth: float
    seed: int
    trials_total: int
    trials_accepted: int
    accepted_log: list[AcceptedTrial] = dc_field(default_factory=list)
    enumeration_truncated: bool = False

    def to_dict(self) -> dict:
        return {
            "ace": ["inf" if math.isinf(v) else int(v) for v in self.ace.values],
            "depth": self.ace.depth,
            "cycle_counts": {
                str(length): {"uneliminated": u, "eliminated": e}
                for length, (u, e) in sorted(self.cycle_counts.items())
            },
            "expanded_girth": "inf"
            if math.isinf(self.expanded_girth)
            else int(self.expanded_girth),
            "seed": self.seed,
            "trials_total": self.trials_total,
            "trials_accepted": self.trials_accepted,
            "accepted_log": [t.format() for t in self.accepted_log],
            "enumeration_truncated": self.enumeration_truncated,
        }


# ----------------------------------------------------------------------
# cycle elimination test
# ----------------------------------------------------------------------
def cycle_submatrix(lifting: Lifting, cycle: Cycle) -> PolyMatrix:
    """The polynomial submatrix over the cycle's rows and columns.

    Includes every assigned entry inside rows(cycle) x cols(cycle), not
    just the positions the cycle walks through.
    """
    rows = sorted(cycle.rows)
    cols = sorted(cycle.cols)
    zero = RingPoly.zero(lifting.field, lifting.s)
    grid = []
    for i in rows:
        grid.append(
            [
                lifting.assignment[(i, j)].to_poly(lifting.field, lifting.s)
                if lifting.base.bits[i, j]
                else zero
                for j in cols
            ]
        )
    return PolyMatrix.from_entries(lifting.field, lifting.s, grid)


def _support_entries(
    lifting: Lifting, cycle: Cycle
) -> tuple[int, list[list[tuple[int, int, int]]]]:
    """Per-row lists of (local col, beta, shift) over the cycle submatrix."""
    rows = sorted(cycle.rows)
    cols = sorted(cycle.cols)
    out: list[list[tuple[int, int, int]]] = []
    for i in rows:
        row_entries = []
        for c, j in enumerate(cols):
            if lifting.base.bits[i, j]:
                mono = lifting.assignment.get((i, j))
                if mono is None:
                    raise RuntimeError(f"cycle edge ({i}, {j}) has no assignment")
                row_entries.append((c, mono.beta, mono.shift))
        out.append(row_entries)
    return len(rows), out


def _support_det_nonzero(field: GF, s: int, k: int, rows) -> bool:
    """Determinant-nonzero test by summing permutation products.

    In characteristic 2 the determinant is the unsigned sum over
    permutations of the entry products; with monomial entries each term
    is a monomial, so the sum accumulates into a length-s coefficient
    array.  Equals the cofactor determinant of the same submatrix.
    """
    acc = [0] * s
    used = [False] * k
    mul = field.mul

    def rec(r: int, beta: int, shift: int) -> None:
        if r == k:
            acc[shift] ^= beta
            return
        for c, b, z in rows[r]:
            if used[c]:
                continue
            used[c] = True
            nz = shift + z
            if nz >= s:
                nz -= s
            rec(r + 1, mul(beta, b), nz)
            used[c] = False

    rec(0, 1, 0)
    return any(acc)


def cycle_eliminated(lifting: Lifting, cycle: Cycle) -> bool:
    """True when the cycle's polynomial submatrix has nonzero determinant.

    4-cycles take a closed form: with monomials (b1,z1)..(b4,z4) at
    positions (i,j),(i,j'),(i',j),(i',j'), the determinant vanishes iff
    z1+z4 = z2+z3 (mod s) and b1*b4 = b2*b3.  Longer cycles fall back to
    the permutation-sum determinant of the full submatrix.
    """
    if cycle.length == 4:
        i, i2 = sorted(cycle.rows)
        j, j2 = sorted(cycle.cols)
        a = lifting.assignment
        try:
            m1, m2, m3, m4 = a[(i, j)], a[(i, j2)], a[(i2, j)], a[(i2, j2)]
        except KeyError as exc:
            raise RuntimeError(f"cycle edge {exc} has no assignment") from None
        shifts_match = (m1.shift + m4.shift - m2.shift - m3.shift) % lifting.s == 0
        betas_match = lifting.field.mul(m1.beta, m4.beta) == lifting.field.mul(
            m2.beta, m3.beta
        )
        return not (shifts_match and betas_match)
    k, rows = _support_entries(lifting, cycle)
    return _support_det_nonzero(lifting.field, lifting.s, k, rows)


# ----------------------------------------------------------------------
# greedy construction
# ----------------------------------------------------------------------
class _AceState:
    """Elimination statuses plus per-length ACE multisets of one lifting."""

    def __init__(self, h: BaseMatrix, lifting: Lifting, depth: int, cycles: list[Cycle]):
        self.h = h
        self.depth = depth
        self.cycles = cycles
        self.ace_of = [cycle_ace(h, c) for c in cycles]
        self.by_col: dict[int, list[int]] = {j: [] for j in range(h.n)}
        for idx, c in enumerate(cycles):
            for j in c.cols:
                self.by_col[j].append(idx)
        self.status = [cycle_eliminated(lifting, c) for c in cycles]
        self.counts: dict[int, dict[int, int]] = {
            length: {} for length in range(4, depth + 1, 2)
        }
        for idx, c in enumerate(cycles):
            if not self.status[idx]:
                self._bump(c.length, self.ace_of[idx], +1)

    def _bump(self, length: int, ace: int, delta: int) -> None:
        bucket = self.counts[length]
        new = bucket.get(ace, 0) + delta
        if new:
            bucket[ace] = new
        else:
            del bucket[ace]

    def vector(self) -> AceVector:
        values = tuple(
            min(self.counts[length]) if self.counts[length] else math.inf
            for length in range(4, self.depth + 1, 2)
        )
        return AceVector(self.depth, values)

    def affected(self, i: int, j: int) -> list[int]:
        """Cycles whose submatrix contains position (i, j)."""
        return [idx for idx in self.by_col[j] if i in self.cycles[idx].rows]

    def apply(self, lifting: Lifting, indices: list[int]) -> list[tuple[int, bool]]:
        """Recompute statuses for `indices`; returns an undo list."""
        undo = []
        for idx in indices:
            new = cycle_eliminated(lifting, self.cycles[idx])
            old = self.status[idx]
            if new != old:
                undo.append((idx, old))
                self.status[idx] = new
                c = self.cycles[idx]
                self._bump(c.length, self.ace_of[idx], -1 if new else +1)
        return undo

    def rollback(self, undo: list[tuple[int, bool]]) -> None:
        for idx, old in undo:
            new = self.status[idx]
            self.status[idx] = old
            c = self.cycles[idx]
            self._bump(c.length, self.ace_of[idx], +1 if new else -1)


def greedy_lift(
    h: BaseMatrix, cfg: ConstructionConfig
) -> tuple[Lifting, ConstructionReport]:
    """Run the randomized greedy edge assignment; reproducible per seed."""
    if int(h.bits.sum()) == 0:
        raise ValueError("base matrix has no edges to lift")
    return _greedy_lift_impl(h, cfg, strict=False)


def _greedy_lift_impl(
    h: BaseMatrix, cfg: ConstructionConfig, strict: bool
) -> tuple[Lifting, ConstructionReport]:
    field = cfg.make_field()
    lifting = Lifting.trivial(h, cfg.s, field)

    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        cycles = all_cycles(h, cfg.depth, cap=cfg.cycle_cap)
    truncated = any("cycle cap" in str(w.message) for w in caught)

    state = _AceState(h, lifting, cfg.depth, cycles)
    ace_max = state.vector()
    rng = np.random.default_rng(cfg.rng_seed)

    trials_total = 0
    accepted: list[AcceptedTrial] = []
    for j in range(h.n):
        for i in h.rows_of_col[j]:
            candidates = state.affected(i, j)
            for _ in range(cfg.trials_per_edge):
                trials_total += 1
                draw = Monomial(
                    beta=int(rng.integers(1, cfg.q)),
                    shift=int(rng.integers(0, cfg.s)),
                )
                old_mono = lifting.assignment[(i, j)]
                lifting.assignment[(i, j)] = draw
                undo = state.apply(lifting, candidates)
                ace = state.vector()
                cmp = lex_compare(ace_max, ace)
                keep = cmp < 0 if strict else cmp <= 0
                if keep:
                    ace_max = ace
                    accepted.append(AcceptedTrial((i, j), draw.shift, draw.beta, ace.values))
                else:
                    state.rollback(undo)
                    lifting.assignment[(i, j)] = old_mono

    counts: dict[int, tuple[int, int]] = {}
    for length in range(4, cfg.depth + 1, 2):
        idxs = [k for k, c in enumerate(cycles) if c.length == length]
        elim = sum(1 for k in idxs if state.status[k])
        counts[length] = (len(idxs) - elim, elim)

    report = ConstructionReport(
        ace=state.vector(),
        cycle_counts=counts,
        expanded_girth=expanded_girth(lifting),
        seed=cfg.rng_seed,
        trials_total=trials_total,
        trials_accepted=len(accepted),
        accepted_log=accepted,
        enumeration_truncated=truncated,
    )
    return lifting, report


def expanded_girth(lifting: Lifting) -> float:
    """Girth of the expanded Tanner graph.

    The expanded graph is invariant under the simultaneous cyclic shift of
    every circulant block, and that automorphism acts transitively on the
    s variable nodes of each column block; some shortest cycle therefore
    passes through a block representative, so scanning one variable node
    per base column is exact.
    """
    expanded = lifting.expand()
    sources = [j * lifting.s for j in range(lifting.base.n)]
    return girth(expanded, sources=sources)


# ----------------------------------------------------------------------
# code-parameter bounds
# ----------------------------------------------------------------------
def rate_lower_bound(h: BaseMatrix | tuple[int, int]) -> Fraction:
    """Design-rate lower bound 1 - m/n of an m x n base matrix."""
    if isinstance(h, BaseMatrix):
        m, n = h.m, h.n
    else:
        m, n = h
    if n <= 0:
        raise ValueError("base matrix must have columns")
    return Fraction(n - m, n)


def distance_upper_bound(ell: int | float, m: int) -> int | float:
    """Minimum-distance ceiling floor(l)! * l^(m - floor(l)) * (m + 1).

    Applies to quasi-cyclic codes whose base matrix has m rows and
    column weight l, independently of the circulant size.
    """
    if ell < 1 or m < 1:
        raise ValueError("column weight and row count must be at least 1")
    if isinstance(ell, int) or float(ell).is_integer():
        ell_int = int(ell)
        return math.factorial(ell_int) * ell_int ** (m - ell_int) * (m + 1)
    floor_ell = math.floor(ell)
    return math.factorial(floor_ell) * ell ** (m - floor_ell) * (m + 1)
