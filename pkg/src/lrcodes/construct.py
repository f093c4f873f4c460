"""Deterministic construction of distance-optimal locally repairable codes.

The pipeline: place a Vandermonde MDS base on the initial core Omega_0,
then assign the remaining columns group by group. Each new column for
coordinate lam must lie in the span of its group's already-assigned
columns while avoiding span(S0) for every (k-1)-set S0 that would form
a core together with lam. Random draws from the group span (seeded)
almost always succeed when q is at least C(n, k-1); a deterministic
lexicographic scan backs them up.

Avoidance checking has two equivalent implementations: a per-core
reduced-basis test, and a vectorized one for large prime fields that
computes, for every core, the linear functional whose kernel is its
span and batches the dot products through numpy. Both see the same
candidate stream, so results are bit-identical.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dataclass_field
from itertools import combinations, islice, product
from math import comb
from typing import Optional, Sequence

import numpy as np

from .covers import (
    CoverSet,
    Frame,
    Structure,
    coverage_check,
    hub_frame,
    paired_frame,
    remainder_partition,
    structure_from_json,
    uniform_partition,
)
from .cores import CoreQuery, _BlockModel, is_core, lambda_cores, omega0
from .errors import (
    FieldTooSmall,
    NotConstructible,
    NoValidVector,
    PreconditionViolated,
    UnknownCase,
)
from .gf import FieldSpec, field_at_least
from .linalg import Basis, Matrix, reduce_vector, reduced_basis
from .params import (
    EXISTS,
    EXISTS_MDS,
    METHOD_A1_REMAINDER,
    METHOD_A1_UNIFORM,
    METHOD_A2_HUB,
    METHOD_A2_PAIRED,
    NOT_EXISTS,
    CodeParams,
    classify,
    distance_bound,
    field_bound,
)

__all__ = [
    "ExtensionState",
    "LrcCode",
    "mds_generator",
    "pick_extension_vector",
    "run_algorithm1",
    "run_algorithm2",
    "construct",
]

RANDOM_ATTEMPTS = 64

# Combination-count threshold beyond which prime fields switch to the
# vectorized avoidance test; tests lower it to force either path.
_FAST_PATH_MIN_COMBOS = 512
_FAST_CHUNK = 1 << 17
# Cap on the deterministic fallback scan when the span is too large to
# sweep completely (only reachable after 64 failed draws at huge q).
_SCAN_LIMIT = 1 << 20

_INV_TABLES: dict[int, np.ndarray] = {}


def _inv_table(p: int) -> np.ndarray:
    """x -> x^(p-2) mod p for all x in [0, p); index 0 is unused."""
    tab = _INV_TABLES.get(p)
    if tab is None:
        x = np.arange(p, dtype=np.int64)
        result = np.ones(p, dtype=np.int64)
        base = x.copy()
        e = p - 2
        while e:
            if e & 1:
                result = result * base % p
            base = base * base % p
            e >>= 1
        tab = result
        _INV_TABLES[p] = tab
    return tab


@dataclass
class LrcCode:
    """A constructed code: generator matrix plus its repair-group witness."""

    field: FieldSpec
    generator: Matrix
    structure: Structure
    params: CodeParams
    claimed_d: int
    trace: tuple[tuple[int, tuple[int, ...]], ...] = ()

    def to_json(self) -> dict:
        return {
            "field": self.field.to_json(),
            "params": {"n": self.params.n, "k": self.params.k,
                       "r": self.params.r, "delta": self.params.delta},
            "claimed_d": self.claimed_d,
            "generator": self.generator.to_json(),
            "structure": self.structure.to_json(),
            "trace": [[lam, list(col)] for lam, col in self.trace],
        }

    @classmethod
    def from_json(cls, data: dict) -> "LrcCode":
        pp = data["params"]
        return cls(
            field=FieldSpec.from_json(data["field"]),
            generator=Matrix.from_json(data["generator"]),
            structure=structure_from_json(data["structure"]),
            params=CodeParams(pp["n"], pp["k"], pp["r"], pp["delta"]),
            claimed_d=data["claimed_d"],
            trace=tuple((lam, tuple(col)) for lam, col in data["trace"]),
        )


@dataclass
class ExtensionState:
    """Mutable state of one construction run."""

    field: FieldSpec
    params: CodeParams
    structure: Structure
    rng_seed: int
    columns: dict[int, tuple[int, ...]] = dataclass_field(default_factory=dict)
    omega: list[int] = dataclass_field(default_factory=list)
    trace: list[tuple[int, tuple[int, ...]]] = dataclass_field(default_factory=list)

    def __post_init__(self) -> None:
        self.rng = random.Random(self.rng_seed)

    @property
    def matrix(self) -> Matrix:
        """Current k x n matrix; unassigned coordinates hold zero columns."""
        k, n = self.params.k, self.params.n
        zero = (0,) * k
        return Matrix.from_columns(
            self.field, [self.columns.get(j, zero) for j in range(1, n + 1)])

    def assign(self, lam: int, col: tuple[int, ...]) -> None:
        self.columns[lam] = col
        self.omega.append(lam)
        self.omega.sort()
        self.trace.append((lam, col))

    def core_query(self) -> CoreQuery:
        return CoreQuery(self.structure, self.params.r, self.params.k,
                         self.params.delta, tuple(self.omega))


def mds_generator(L: int, k: int, field: FieldSpec) -> Matrix:
    """k x L matrix with every k columns independent.

    Column j is (1, x, x^2, ..., x^(k-1)) at the j-th canonical field
    element; distinct evaluation points make all maximal minors
    Vandermonde determinants, hence nonzero.
    """
    if not 1 <= k <= L:
        raise PreconditionViolated(f"need 1 <= k <= L, got k={k} L={L}")
    if field.q < L:
        raise FieldTooSmall(f"need q >= {L} evaluation points, field has q={field.q}")
    cols = []
    for j in range(L):
        x = j
        col = [1]
        for _ in range(k - 1):
            col.append(field.mul(col[-1], x))
        cols.append(col)
    return Matrix.from_columns(field, cols)


def _group_span_basis(state: ExtensionState, group: int) -> Basis:
    g = state.structure.groups[group - 1]
    assigned = [state.columns[x] for x in g if x in state.columns]
    return reduced_basis(state.field, assigned)


def _combine(field: FieldSpec, coeffs: Sequence[int], rows: Sequence[tuple[int, ...]],
             k: int) -> tuple[int, ...]:
    acc = [0] * k
    for c, row in zip(coeffs, rows):
        if c:
            for i in range(k):
                if row[i]:
                    acc[i] = field.add(acc[i], field.mul(c, row[i]))
    return tuple(acc)


def _avoidance_search(state: ExtensionState, lam: int, b: int, accept,
                      contained, ncores: int) -> tuple[int, ...]:
    """Shared coefficient search: 64 seeded draws, then a containment
    check (certifying impossibility cheaply before any long sweep), then
    a lexicographic scan. Returns the accepted coefficient tuple.

    Both avoidance implementations route through here, so they consume
    identical RNG streams and produce identical columns.
    """
    q = state.field.q
    for _ in range(RANDOM_ATTEMPTS):
        coeffs = tuple(state.rng.randrange(q) for _ in range(b))
        if any(coeffs) and accept(coeffs):
            return coeffs
    if contained():
        raise NoValidVector(
            f"no usable column for coordinate {lam}: the group span lies "
            f"inside a core span", num_cores=ncores, q=q)
    can_finish = q ** b <= _SCAN_LIMIT * 4
    scanned = 0
    for coeffs in product(range(q), repeat=b):
        if not any(coeffs):
            continue
        if accept(coeffs):
            return coeffs
        scanned += 1
        if not can_finish and scanned >= _SCAN_LIMIT:
            break
    raise NoValidVector(
        f"no usable column for coordinate {lam}: every candidate hits one of "
        f"{ncores} core spans", num_cores=ncores, q=q)


def _pick_pure(state: ExtensionState, lam: int, group: int,
               basis_rows: list[tuple[int, ...]]) -> tuple[int, ...]:
    field = state.field
    k = state.params.k
    cores = list(lambda_cores(state.core_query(), lam))
    core_bases = [
        reduced_basis(field, [state.columns[x] for x in S0]) for S0 in cores
    ]
    for cb, S0 in zip(core_bases, cores):
        if len(cb) != k - 1:
            raise RuntimeError(
                f"loop invariant violated: core {S0} spans rank {len(cb)} != {k - 1}")

    def accept(coeffs: Sequence[int]) -> bool:
        cand = _combine(field, coeffs, basis_rows, k)
        return all(any(reduce_vector(field, cb, cand)) for cb in core_bases)

    def contained() -> bool:
        return any(
            all(not any(reduce_vector(field, cb, row)) for row in basis_rows)
            for cb in core_bases)

    coeffs = _avoidance_search(state, lam, len(basis_rows), accept, contained,
                               len(cores))
    return _combine(field, coeffs, basis_rows, k)


def _batch_nullvec(A: np.ndarray, p: int, inv: np.ndarray) -> np.ndarray:
    """Right nullspace vectors for a batch of (k-1) x k matrices of rank k-1.

    Gauss-Jordan over F_p, vectorized across the batch. Raises if any
    matrix is rank-deficient (that would mean a dependent core slipped
    through the loop invariant).
    """
    N, m, kk = A.shape
    R = A % p
    piv_col = np.zeros((N, m), dtype=np.int64)
    lead = np.zeros(N, dtype=np.int64)
    row_ids = np.arange(m, dtype=np.int64)
    for c in range(kk):
        colvals = R[:, :, c]
        eligible = (colvals != 0) & (row_ids[None, :] >= lead[:, None]) & (lead[:, None] < m)
        has = eligible.any(axis=1)
        sel = np.nonzero(has)[0]
        if sel.size == 0:
            continue
        fr = np.argmax(eligible[sel], axis=1)
        ld = lead[sel]
        tmp = R[sel, fr, :].copy()
        R[sel, fr, :] = R[sel, ld, :]
        R[sel, ld, :] = tmp
        pivrow = R[sel, ld, :] * inv[R[sel, ld, c]][:, None] % p
        R[sel, ld, :] = pivrow
        factors = R[sel, :, c].copy()
        factors[np.arange(sel.size), ld] = 0
        R[sel] = (R[sel] - factors[:, :, None] * pivrow[:, None, :]) % p
        piv_col[sel, ld] = c
        lead[sel] = ld + 1
    if (lead < m).any():
        raise RuntimeError("loop invariant violated: rank-deficient core basis in batch")
    pivmask = np.zeros((N, kk), dtype=bool)
    np.put_along_axis(pivmask, piv_col, True, axis=1)
    free = (~pivmask).argmax(axis=1)
    vals = np.take_along_axis(R, free[:, None, None], axis=2)[:, :, 0]
    x = np.zeros((N, kk), dtype=np.int64)
    np.put_along_axis(x, piv_col, (p - vals) % p, axis=1)
    np.put_along_axis(x, free[:, None], np.ones((N, 1), dtype=np.int64), axis=1)
    return x


def _fast_psi(state: ExtensionState, lam: int, basis_rows: list[tuple[int, ...]]
              ) -> tuple[np.ndarray, int]:
    """For every core S0 paired with lam, the b coefficients of the linear
    functional ker = span(S0) restricted to the group-span basis.

    A candidate with coefficient vector c avoids span(S0) iff the matching
    row of the returned Psi has nonzero dot product with c.
    """
    p = state.field.q
    inv = _inv_table(p)
    model = _BlockModel(state.structure, state.params.r, state.params.delta)
    t = state.structure.t
    n = state.structure.n
    k = state.params.k
    r = state.params.r

    membership = np.zeros((n + 1, t), dtype=np.int64)
    for i, g in enumerate(state.structure.groups):
        for x in g:
            membership[x, i] = 1
    lam_counts = membership[lam]

    tail_caps = np.full(t, -1, dtype=np.int64)
    for i, cap in model.tail:
        tail_caps[i] = cap
    tail_idx = np.nonzero(tail_caps >= 0)[0]

    cols_arr = np.zeros((n + 1, k), dtype=np.int64)
    for x, col in state.columns.items():
        cols_arr[x] = col

    W = np.array(basis_rows, dtype=np.int64)
    ground = [x for x in state.omega if x != lam]
    psi_chunks = []
    total = 0
    it = combinations(ground, k - 1)
    while True:
        chunk = list(islice(it, _FAST_CHUNK))
        if not chunk:
            break
        E = np.fromiter(
            (x for S0 in chunk for x in S0), dtype=np.int64,
            count=len(chunk) * (k - 1)).reshape(len(chunk), k - 1)
        counts = membership[E].sum(axis=1) + lam_counts
        ok = np.ones(len(chunk), dtype=bool)
        if tail_idx.size:
            ok &= (counts[:, tail_idx] <= tail_caps[tail_idx]).all(axis=1)
        for hub, idx in model.hub_blocks:
            blk = counts[:, list(idx)]
            hub_in = (E == hub).any(axis=1) | (lam == hub)
            ok &= (blk <= r).all(axis=1) & (hub_in | ((blk == r).sum(axis=1) <= 1))
        if not ok.any():
            continue
        Ev = E[ok]
        A = cols_arr[Ev]
        phi = _batch_nullvec(A, p, inv)
        psi_chunks.append(phi @ W.T % p)
        total += Ev.shape[0]
    if psi_chunks:
        psi = np.concatenate(psi_chunks)
    else:
        psi = np.zeros((0, len(basis_rows)), dtype=np.int64)
    return psi, total


def _pick_fast(state: ExtensionState, lam: int, group: int,
               basis_rows: list[tuple[int, ...]]) -> tuple[int, ...]:
    field = state.field
    p = field.q
    k = state.params.k
    psi, ncores = _fast_psi(state, lam, basis_rows)

    def accept(coeffs: Sequence[int]) -> bool:
        if not psi.size:
            return True
        v = psi @ np.asarray(coeffs, dtype=np.int64) % p
        return bool((v != 0).all())

    def contained() -> bool:
        # an all-zero row means that core's functional kills the whole span
        return bool(psi.size) and not psi.any(axis=1).all()

    coeffs = _avoidance_search(state, lam, len(basis_rows), accept, contained,
                               ncores)
    return _combine(field, coeffs, basis_rows, k)


def pick_extension_vector(state: ExtensionState, lam: int, group: int) -> tuple[int, ...]:
    """A nonzero vector in the group span avoiding every paired-core span.

    64 seeded random draws, then a lexicographic scan of the span. The
    scan certifies NoValidVector for small spans; for spans too large to
    sweep it gives up after a fixed budget (the draw stage is then
    overwhelmingly likely to have succeeded first when q >= C(n, k-1)).
    """
    g = state.structure.groups[group - 1]
    if lam not in g or lam in state.columns:
        raise PreconditionViolated(
            f"coordinate {lam} is not an unassigned member of group {group}")
    basis = _group_span_basis(state, group)
    basis_rows = [row for _, row in basis]
    k = state.params.k
    use_fast = (
        k >= 2
        and state.field.e == 1
        and comb(len(state.omega), k - 1) >= _FAST_PATH_MIN_COMBOS
        and k * (state.field.q - 1) ** 2 < 2 ** 63
    )
    if use_fast:
        return _pick_fast(state, lam, group, basis_rows)
    return _pick_pure(state, lam, group, basis_rows)


def _assert_invariant(state: ExtensionState) -> None:
    """Full recheck: every core inside Omega has independent columns."""
    q = state.core_query()
    k = state.params.k
    ground = sorted(state.omega)
    for size in range(1, min(k, len(ground)) + 1):
        for S in combinations(ground, size):
            if is_core(S, q):
                basis = reduced_basis(state.field, [state.columns[x] for x in S])
                if len(basis) != size:
                    raise RuntimeError(
                        f"loop invariant violated: core {S} has rank {len(basis)}")


def _run_extension(structure: Structure, params: CodeParams, field: FieldSpec,
                   seed: int, check_invariants: bool = False) -> LrcCode:
    from .covers import validate as validate_structure

    if structure.n != params.n:
        raise PreconditionViolated(
            f"structure covers [1..{structure.n}] but params have n={params.n}")
    ok, bad = validate_structure(structure, params.r, params.delta)
    if not ok:
        raise PreconditionViolated("invalid structure: " + "; ".join(bad))
    if not coverage_check(structure, params.k, params.r, params.delta):
        raise PreconditionViolated(
            "structure fails the union-size coverage requirement")
    om = omega0(structure, params.r, params.delta)
    L = len(om.indices)
    base = mds_generator(L, params.k, field)
    state = ExtensionState(field=field, params=params, structure=structure,
                           rng_seed=seed)
    for j, x in enumerate(om.indices, start=1):
        state.columns[x] = base.column(j)
    state.omega = list(om.indices)
    if check_invariants:
        _assert_invariant(state)
    for gi, g in enumerate(structure.groups, start=1):
        for lam in g:
            if lam in state.columns:
                continue
            col = pick_extension_vector(state, lam, gi)
            state.assign(lam, col)
            if check_invariants:
                _assert_invariant(state)
    gen = Matrix.from_columns(
        field, [state.columns[j] for j in range(1, params.n + 1)])
    return LrcCode(field=field, generator=gen, structure=structure,
                   params=params, claimed_d=distance_bound(params),
                   trace=tuple(state.trace))


def run_algorithm1(structure: CoverSet, params: CodeParams, field: FieldSpec,
                   seed: int = 0, check_invariants: bool = False) -> LrcCode:
    """Extension construction over a plain partition."""
    if not isinstance(structure, CoverSet):
        raise PreconditionViolated("run_algorithm1 expects a partition structure")
    return _run_extension(structure, params, field, seed, check_invariants)


def run_algorithm2(structure: Frame, params: CodeParams, field: FieldSpec,
                   seed: int = 0, check_invariants: bool = False) -> LrcCode:
    """Extension construction over a hub frame."""
    if not isinstance(structure, Frame):
        raise PreconditionViolated("run_algorithm2 expects a frame structure")
    return _run_extension(structure, params, field, seed, check_invariants)


def _build_structure(params: CodeParams, method: str) -> Structure:
    n, r, delta = params.n, params.r, params.delta
    if method == METHOD_A1_UNIFORM:
        return uniform_partition(n, r, delta)
    if method == METHOD_A1_REMAINDER:
        return remainder_partition(n, r, delta, params.k)
    if method == METHOD_A2_HUB:
        return hub_frame(n, r, delta)
    if method == METHOD_A2_PAIRED:
        return paired_frame(n, r, delta)
    raise PreconditionViolated(f"unknown construction method {method!r}")


def construct(params: CodeParams, field: Optional[FieldSpec] = None,
              seed: int = 0, check_invariants: bool = False) -> LrcCode:
    """Classify, build the matching structure, and run its algorithm.

    The default field is the smallest prime at least max(C(n, k-1), n),
    which guarantees the extension loop succeeds. NotExists parameters
    raise NotConstructible carrying the deciding rule's tag; Unknown
    parameters raise UnknownCase.
    """
    verdict = classify(params)
    if verdict.verdict == NOT_EXISTS:
        raise NotConstructible(
            f"no optimal code exists for n={params.n} k={params.k} "
            f"r={params.r} delta={params.delta}", tag=verdict.tag)
    if verdict.verdict not in (EXISTS, EXISTS_MDS):
        raise UnknownCase(
            f"existence unsettled for n={params.n} k={params.k} "
            f"r={params.r} delta={params.delta}", tag=verdict.tag)
    if field is None:
        field = field_at_least(max(field_bound(params), params.n), "prime")
    if verdict.verdict == EXISTS_MDS:
        return _construct_mds(params, field, seed, check_invariants)
    structure = _build_structure(params, verdict.method)
    if isinstance(structure, Frame):
        return run_algorithm2(structure, params, field, seed, check_invariants)
    return run_algorithm1(structure, params, field, seed, check_invariants)


def _construct_mds(params: CodeParams, field: FieldSpec, seed: int,
                   check_invariants: bool) -> LrcCode:
    """r = k: optimal codes are exactly the MDS codes.

    Three shapes: n = k+delta-1 fits one repair group; group-size-divisible
    n runs the standard partition pipeline (whose output is MDS); anything
    else needs overlapping repair groups, which no partition or frame here
    expresses, so it is reported not constructible despite existing.
    """
    n, k, delta = params.n, params.k, params.delta
    size = params.group_size
    if n == k + delta - 1:
        gen = mds_generator(n, k, field)
        structure = CoverSet(n, [range(1, n + 1)])
        return LrcCode(field=field, generator=gen, structure=structure,
                       params=params, claimed_d=distance_bound(params))
    if n % size == 0:
        structure = uniform_partition(n, params.r, delta)
        return run_algorithm1(structure, params, field, seed, check_invariants)
    raise NotConstructible(
        f"optimal codes for r=k, n={n} need overlapping repair groups, "
        "which this builder does not emit", tag="mds-overlapping-cover")
