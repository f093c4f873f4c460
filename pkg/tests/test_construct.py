import importlib
import json
import random
from itertools import combinations

import pytest

from lrcodes.construct import (
    ExtensionState,
    LrcCode,
    construct,
    mds_generator,
    pick_extension_vector,
    run_algorithm1,
    run_algorithm2,
)
from lrcodes.covers import CoverSet, Frame, hub_frame, paired_frame, uniform_partition
from lrcodes.errors import (
    FieldTooSmall,
    NotConstructible,
    NoValidVector,
    PreconditionViolated,
    UnknownCase,
)
from lrcodes.gf import field_at_least, field_make
from lrcodes.linalg import rank
from lrcodes.params import EXISTS, CodeParams, classify, distance_bound, field_bound
from lrcodes.verify import certify_optimal

construct_mod = importlib.import_module("lrcodes.construct")


# ---------------------------------------------------------------------
# MDS base matrices
# ---------------------------------------------------------------------

def test_mds_generator_pinned():
    m = mds_generator(4, 2, field_make(5))
    assert [m.column(j) for j in range(1, 5)] == [(1, 0), (1, 1), (1, 2), (1, 3)]


def test_mds_generator_every_k_columns_independent():
    cases = [(6, 3, field_make(7)), (5, 2, field_make(5)),
             (8, 4, field_make(11)), (6, 3, field_make(2, 3)),
             (4, 4, field_make(5)), (7, 1, field_make(7))]
    for L, k, f in cases:
        m = mds_generator(L, k, f)
        assert m.rows == k and m.cols == L
        for cols in combinations(range(1, L + 1), k):
            assert rank(m, cols) == k


def test_mds_generator_errors():
    f = field_make(7)
    with pytest.raises(PreconditionViolated):
        mds_generator(4, 0, f)
    with pytest.raises(PreconditionViolated):
        mds_generator(4, 5, f)
    with pytest.raises(FieldTooSmall):
        mds_generator(8, 3, f)
    # q = L is enough: evaluation points 0..L-1
    mds_generator(7, 3, f)


# ---------------------------------------------------------------------
# pipeline examples
# ---------------------------------------------------------------------

def test_construct_uniform_example():
    code = construct(CodeParams(12, 5, 2, 3), field_make(499), seed=0)
    assert code.claimed_d == 4 == distance_bound(CodeParams(12, 5, 2, 3))
    assert isinstance(code.structure, CoverSet)
    assert code.structure.groups == ((1, 2, 3, 4), (5, 6, 7, 8), (9, 10, 11, 12))
    assert code.generator.rows == 5 and code.generator.cols == 12
    # extension fills exactly the complement of Omega0, in group order
    assert [lam for lam, _ in code.trace] == [3, 4, 7, 8, 11, 12]
    assert rank(code.generator, range(1, 13)) == 5


def test_construct_remainder_example():
    code = construct(CodeParams(11, 5, 2, 2), field_make(331), seed=0)
    assert code.claimed_d == 5
    assert code.structure.groups == ((1, 2, 3), (4, 5, 6), (7, 8, 9), (10, 11))


def test_construct_paired_frame_example():
    code = construct(CodeParams(10, 5, 2, 2), field_make(211), seed=0)
    assert code.claimed_d == 4
    assert isinstance(code.structure, Frame)
    assert code.structure.groups == ((1, 2, 3), (3, 4, 5), (6, 7, 8), (8, 9, 10))


def test_construct_hub_frame_example():
    code = run_algorithm2(hub_frame(8, 2, 2), CodeParams(8, 3, 2, 2),
                          field_make(29), seed=0)
    assert code.claimed_d == 5
    assert code.structure.groups == ((1, 2, 3), (1, 4, 5), (6, 7, 8))


def test_construct_binary_field():
    code = construct(CodeParams(6, 3, 2, 2), field_make(2, 4), seed=0)
    assert code.field.q == 16
    ok, _ = certify_optimal(code, budget=10**6)
    assert ok


def test_construct_default_field_is_smallest_adequate_prime():
    code = construct(CodeParams(12, 5, 2, 3), seed=0)
    p = CodeParams(12, 5, 2, 3)
    assert code.field.q == field_at_least(max(field_bound(p), p.n), "prime").q == 499
    code = construct(CodeParams(6, 3, 2, 2), seed=0)
    assert code.field.q == 17


# ---------------------------------------------------------------------
# determinism and path equivalence
# ---------------------------------------------------------------------

def test_construct_deterministic_per_seed():
    a = construct(CodeParams(12, 5, 2, 3), field_make(499), seed=7)
    b = construct(CodeParams(12, 5, 2, 3), field_make(499), seed=7)
    assert a.to_json() == b.to_json()
    c = construct(CodeParams(12, 5, 2, 3), field_make(499), seed=8)
    assert a.generator.to_json() != c.generator.to_json()


def test_fast_and_pure_paths_agree(monkeypatch):
    cases = [
        (CodeParams(12, 5, 2, 3), field_make(499)),
        (CodeParams(11, 5, 2, 2), field_make(331)),
        (CodeParams(10, 5, 2, 2), field_make(211)),
    ]
    for params, f in cases:
        for seed in (0, 1, 5):
            monkeypatch.setattr(construct_mod, "_FAST_PATH_MIN_COMBOS", 10**18)
            pure = construct(params, f, seed=seed)
            monkeypatch.setattr(construct_mod, "_FAST_PATH_MIN_COMBOS", 0)
            fast = construct(params, f, seed=seed)
            assert pure.to_json() == fast.to_json()
    for seed in (0, 3):
        monkeypatch.setattr(construct_mod, "_FAST_PATH_MIN_COMBOS", 10**18)
        pure = run_algorithm2(hub_frame(8, 2, 2), CodeParams(8, 3, 2, 2),
                              field_make(29), seed=seed)
        monkeypatch.setattr(construct_mod, "_FAST_PATH_MIN_COMBOS", 0)
        fast = run_algorithm2(hub_frame(8, 2, 2), CodeParams(8, 3, 2, 2),
                              field_make(29), seed=seed)
        assert pure.to_json() == fast.to_json()


# ---------------------------------------------------------------------
# extension step internals
# ---------------------------------------------------------------------

def test_no_valid_vector_when_core_spans_cover_group_span():
    # GF(2), k=2: three core spans {(1,0)}, {(0,1)}, {(1,1)} exhaust the
    # plane, so no admissible column for coordinate 3 can exist
    f = field_make(2)
    state = ExtensionState(field=f, params=CodeParams(6, 2, 2, 2),
                           structure=uniform_partition(6, 2, 2), rng_seed=0)
    state.columns = {1: (1, 0), 2: (0, 1), 4: (1, 1)}
    state.omega = [1, 2, 4]
    with pytest.raises(NoValidVector) as exc:
        pick_extension_vector(state, 3, 1)
    assert exc.value.num_cores == 3
    assert exc.value.q == 2


def test_pick_extension_vector_precondition():
    f = field_make(17)
    state = ExtensionState(field=f, params=CodeParams(6, 3, 2, 2),
                           structure=uniform_partition(6, 2, 2), rng_seed=0)
    state.columns = {1: (1, 0, 0), 2: (0, 1, 0), 4: (0, 0, 1), 5: (1, 1, 1)}
    state.omega = [1, 2, 4, 5]
    with pytest.raises(PreconditionViolated):
        pick_extension_vector(state, 4, 1)  # 4 is not in group 1
    with pytest.raises(PreconditionViolated):
        pick_extension_vector(state, 1, 1)  # already assigned


def test_per_group_rank_hits_cap():
    # partition groups end at rank |S_i|-delta+1, frame groups at rank r
    code = construct(CodeParams(12, 5, 2, 3), field_make(499), seed=0)
    for g in code.structure.groups:
        assert rank(code.generator, g) == len(g) - 3 + 1
    code = construct(CodeParams(10, 5, 2, 2), field_make(211), seed=0)
    for g in code.structure.groups:
        assert rank(code.generator, g) == 2
    code = run_algorithm2(hub_frame(8, 2, 2), CodeParams(8, 3, 2, 2),
                          field_make(29), seed=0)
    for g in code.structure.groups:
        assert rank(code.generator, g) == 2


# ---------------------------------------------------------------------
# dispatch and failure modes
# ---------------------------------------------------------------------

def test_construct_rejects_not_exists():
    with pytest.raises(NotConstructible) as exc:
        construct(CodeParams(13, 7, 2, 2))
    assert exc.value.tag == "thm-non-exst-1"
    with pytest.raises(NotConstructible) as exc:
        construct(CodeParams(60, 12, 4, 5))
    assert exc.value.tag == "thm-non-exst"


def test_construct_rejects_unknown():
    with pytest.raises(UnknownCase) as exc:
        construct(CodeParams(60, 11, 10, 5))
    assert exc.value.tag == "condition-8"


def test_construct_mds_shapes():
    # n = k+delta-1: one repair group, plain MDS generator
    code = construct(CodeParams(4, 2, 2, 3), field_make(7), seed=0)
    assert code.claimed_d == 3
    assert code.structure.groups == ((1, 2, 3, 4),)
    # group size divides n: partition pipeline output is MDS
    code = construct(CodeParams(6, 2, 2, 2), field_make(7), seed=0)
    assert code.claimed_d == 5
    assert isinstance(code.structure, CoverSet)
    ok, _ = certify_optimal(code, budget=10**6)
    assert ok
    # any other n needs overlapping groups: reported not constructible
    with pytest.raises(NotConstructible) as exc:
        construct(CodeParams(5, 2, 2, 2), field_make(7))
    assert exc.value.tag == "mds-overlapping-cover"


def test_algorithm_entry_points_check_structure_kind():
    p = CodeParams(12, 5, 2, 3)
    f = field_make(499)
    with pytest.raises(PreconditionViolated):
        run_algorithm1(hub_frame(8, 2, 2), CodeParams(8, 3, 2, 2), field_make(29))
    with pytest.raises(PreconditionViolated):
        run_algorithm2(uniform_partition(12, 2, 3), p, f)
    with pytest.raises(PreconditionViolated):
        run_algorithm1(uniform_partition(6, 2, 2), p, f)  # n mismatch


# ---------------------------------------------------------------------
# sweep: everything classified Exists actually builds and certifies
# ---------------------------------------------------------------------

def test_exists_sweep_builds_and_certifies():
    built = 0
    for n in range(4, 13):
        for k in range(2, n):
            for r in range(1, k + 1):
                for delta in range(2, n - k + 2):
                    try:
                        p = CodeParams(n, k, r, delta)
                    except ValueError:
                        continue
                    c = classify(p)
                    if c.verdict != EXISTS or field_bound(p) > 10**4:
                        continue
                    code = construct(p, seed=0)
                    assert code.claimed_d == distance_bound(p)
                    ok, rep = certify_optimal(code, budget=10**6)
                    assert ok, (p, rep.witness)
                    built += 1
    assert built > 150


# ---------------------------------------------------------------------
# serialization
# ---------------------------------------------------------------------

def test_code_json_round_trip():
    for code in (
        construct(CodeParams(12, 5, 2, 3), field_make(499), seed=0),
        construct(CodeParams(10, 5, 2, 2), field_make(211), seed=0),
        construct(CodeParams(6, 3, 2, 2), field_make(2, 4), seed=0),
    ):
        data = json.loads(json.dumps(code.to_json()))
        back = LrcCode.from_json(data)
        assert back.field == code.field
        assert back.generator == code.generator
        assert back.structure == code.structure
        assert back.params == code.params
        assert back.claimed_d == code.claimed_d
        assert back.trace == code.trace
