"""Core predicates and enumerators over a cover structure.

A core is an index set whose per-group intersections are small enough
that an optimal code may (indeed must) keep the matching columns
linearly independent. Partition groups cap intersections at
|S_i|-delta+1; frame groups cap at r with a case split on whether a
block's hub element is taken:

  hub in S:  |S n S_i| <= r for every group i of the block;
  hub not:   some designated group may reach r, the block's others
             stay <= r-1;
  tail:      |S n S_i| <= r.

Cores are closed downward (any subset of a core is a core), which is
what makes prefix-pruned DFS enumeration sound.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .covers import CoverSet, Frame, Structure
from .errors import IndexOutOfRange

__all__ = ["CoreQuery", "Omega0", "is_core", "omega0", "lambda_cores", "core_within"]


@dataclass(frozen=True)
class CoreQuery:
    """A structure with the (r, k, delta) limits and the live index set Omega."""

    structure: Structure
    r: int
    k: int
    delta: int
    ground: tuple[int, ...] = field(default=())

    def __post_init__(self) -> None:
        norm = tuple(sorted(set(int(x) for x in self.ground)))
        if norm and (norm[0] < 1 or norm[-1] > self.structure.n):
            raise IndexOutOfRange(
                f"ground set not within [1, {self.structure.n}]: {norm}")
        object.__setattr__(self, "ground", norm)

    def with_ground(self, ground: Iterable[int]) -> "CoreQuery":
        return CoreQuery(self.structure, self.r, self.k, self.delta, tuple(ground))


@dataclass(frozen=True)
class Omega0:
    """Initial index set: one max-cap pick U_i per group, hub elements first."""

    indices: tuple[int, ...]
    per_group_picks: tuple[tuple[int, ...], ...]


class _BlockModel:
    """Uniform view of both structure kinds for the core predicates.

    tail holds (group_index_0based, cap) pairs; hub_blocks holds
    (hub_element, group indices of the block) with the frame cap r.
    For partitions every group is tail with cap |S_i|-delta+1.
    """

    __slots__ = ("structure", "r", "masks", "tail", "hub_blocks", "groups_of_elem")

    def __init__(self, structure: Structure, r: int, delta: int) -> None:
        self.structure = structure
        self.r = r
        self.masks = structure.masks
        if isinstance(structure, Frame):
            in_hub = set()
            self.hub_blocks = []
            for j, block in enumerate(structure.hub_blocks):
                idx = tuple(i - 1 for i in block)
                self.hub_blocks.append((structure.hubs[j], idx))
                in_hub.update(idx)
            self.tail = [(i, r) for i in range(structure.t) if i not in in_hub]
        else:
            self.hub_blocks = []
            self.tail = [(i, len(g) - delta + 1)
                         for i, g in enumerate(structure.groups)]
        self.groups_of_elem: dict[int, list[int]] = {}
        for i, g in enumerate(structure.groups):
            for x in g:
                self.groups_of_elem.setdefault(x, []).append(i)

    def counts(self, smask: int) -> list[int]:
        return [bin(smask & m).count("1") for m in self.masks]

    def block_ok(self, hub: int, idx: tuple[int, ...], cnt: list[int], smask: int) -> bool:
        if smask >> (hub - 1) & 1:
            return all(cnt[i] <= self.r for i in idx)
        # hub absent: one designated group may use r, the rest r-1
        for des in idx:
            if cnt[des] <= self.r and all(
                    cnt[i] <= self.r - 1 for i in idx if i != des):
                return True
        return False

    def valid(self, smask: int) -> bool:
        cnt = self.counts(smask)
        for i, cap in self.tail:
            if cnt[i] > cap:
                return False
        for hub, idx in self.hub_blocks:
            if not self.block_ok(hub, idx, cnt, smask):
                return False
        return True


def _model(q: CoreQuery) -> _BlockModel:
    return _BlockModel(q.structure, q.r, q.delta)


def is_core(S: Iterable[int], q: CoreQuery) -> bool:
    """Whether S satisfies every per-group intersection cap of the structure."""
    smask = 0
    for x in S:
        if not 1 <= x <= q.structure.n:
            raise IndexOutOfRange(f"index {x} outside [1, {q.structure.n}]")
        smask |= 1 << (x - 1)
    return _model(q).valid(smask)


def omega0(structure: Structure, r: int, delta: int) -> Omega0:
    """Deterministic maximal initial core: smallest indices, hubs forced in."""
    picks = []
    if isinstance(structure, Frame):
        hub_by_group: dict[int, int] = {}
        for j, block in enumerate(structure.hub_blocks):
            for i in block:
                hub_by_group[i - 1] = structure.hubs[j]
        for i, g in enumerate(structure.groups):
            hub = hub_by_group.get(i)
            if hub is None:
                picks.append(tuple(g[:r]))
            else:
                rest = [x for x in g if x != hub]
                picks.append(tuple(sorted([hub] + rest[:r - 1])))
    else:
        for g in structure.groups:
            picks.append(tuple(g[:len(g) - delta + 1]))
    indices = sorted(set().union(*picks)) if picks else []
    return Omega0(tuple(indices), tuple(picks))


def lambda_cores(q: CoreQuery, lam: int) -> Iterator[tuple[int, ...]]:
    """All (k-1)-subsets S0 of the ground set with S0 u {lam} a core.

    Yields sorted tuples in lexicographic order via DFS. Downward
    closure justifies pruning: once a partial selection breaks a cap it
    cannot be completed. A second prune abandons branches whose suffix
    cannot supply enough elements under the most generous caps.
    """
    model = _model(q)
    ground = [x for x in q.ground if x != lam]
    target = q.k - 1
    if target < 0 or target > len(ground):
        return

    t = q.structure.t
    cnt = [0] * t
    lam_mask = 1 << (lam - 1)
    smask = lam_mask
    for i in model.groups_of_elem.get(lam, ()):
        cnt[i] += 1
    if not model.valid(smask):
        return

    # per-group generous cap: frame groups can hold at most r, partition
    # groups at most their own cap
    gen_cap = [0] * t
    for i, cap in model.tail:
        gen_cap[i] = cap
    for _, idx in model.hub_blocks:
        for i in idx:
            gen_cap[i] = model.r

    # suffix_in_group[i][pos] = how many of ground[pos:] lie in group i
    npos = len(ground)
    suffix_in_group = [[0] * (npos + 1) for _ in range(t)]
    for pos in range(npos - 1, -1, -1):
        e = ground[pos]
        for i in range(t):
            suffix_in_group[i][pos] = suffix_in_group[i][pos + 1]
        for i in model.groups_of_elem.get(e, ()):
            suffix_in_group[i][pos] += 1

    chosen: list[int] = []

    def capacity_left(pos: int) -> int:
        total = 0
        for i in range(t):
            room = gen_cap[i] - cnt[i]
            if room > 0:
                total += min(room, suffix_in_group[i][pos])
        return total

    def rec(start: int, smask: int) -> Iterator[tuple[int, ...]]:
        need = target - len(chosen)
        if need == 0:
            yield tuple(chosen)
            return
        if npos - start < need or capacity_left(start) < need:
            return
        for pos in range(start, npos - need + 1):
            e = ground[pos]
            groups = model.groups_of_elem.get(e, ())
            newmask = smask | 1 << (e - 1)
            for i in groups:
                cnt[i] += 1
            ok = True
            for i in groups:
                gcap = gen_cap[i]
                if cnt[i] > gcap:
                    ok = False
                    break
            if ok:
                # recheck hub blocks touched by e (cap r alone is not the
                # whole condition when the hub is absent)
                for hub, idx in model.hub_blocks:
                    if e == hub or any(i in idx for i in groups):
                        if not model.block_ok(hub, idx, cnt, newmask):
                            ok = False
                            break
            if ok:
                chosen.append(e)
                yield from rec(pos + 1, newmask)
                chosen.pop()
            for i in groups:
                cnt[i] -= 1

    yield from rec(0, smask)


def core_within(T: Iterable[int], q: CoreQuery) -> Optional[tuple[int, ...]]:
    """A k-sized core inside T, or None when T cannot contain one.

    Blocks are element-disjoint, so a maximum core inside T is the union
    of per-block maxima; those have closed forms. The result, when the
    union W reaches k elements, is the k smallest of W (subsets of cores
    are cores).
    """
    tset = set(int(x) for x in T)
    model = _model(q)
    groups = q.structure.groups
    w: list[int] = []
    for i, cap in model.tail:
        avail = [x for x in groups[i] if x in tset]
        w.extend(avail[:cap])
    for hub, idx in model.hub_blocks:
        per = []
        for i in idx:
            per.append([x for x in groups[i] if x in tset and x != hub])
        trimmed = sum(min(len(a), q.r - 1) for a in per)
        best_a = -1
        if hub in tset:
            best_a = 1 + trimmed
        # hub left out: the best single group may go one past r-1
        extra = 1 if any(len(a) >= q.r for a in per) else 0
        best_b = trimmed + extra
        if best_a >= best_b:
            w.append(hub)
            for a in per:
                w.extend(a[:q.r - 1])
        else:
            des = next(i for i, a in enumerate(per) if len(a) >= q.r) if extra else -1
            for i, a in enumerate(per):
                w.extend(a[:q.r] if i == des else a[:q.r - 1])
    if len(w) < q.k:
        return None
    return tuple(sorted(w)[:q.k])
