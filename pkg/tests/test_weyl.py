import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgs.rootsys import build_root_system, weyl_order
from tgs.weyl import (
    CapacityError,
    WeylAction,
    dominant_representative,
    enumerate_weyl,
    orbit,
    orbit_size,
    reflect,
    scalar_action_subgroups,
)

SMALL_SYSTEMS = [("A", 3), ("B", 2), ("C", 3), ("G2", 2)]

weights = st.tuples(*([st.integers(min_value=-4, max_value=4)] * 3))


@settings(max_examples=50, deadline=None)
@given(weights, st.integers(min_value=0, max_value=2))
def test_reflection_is_an_involution(w, i):
    rs = build_root_system("B", 3)
    assert reflect(rs, reflect(rs, w, i), i) == w


def test_reflection_index_bounds():
    rs = build_root_system("A", 2)
    with pytest.raises(IndexError):
        reflect(rs, (1, 0), 2)


@settings(max_examples=50, deadline=None)
@given(weights)
def test_dominant_representative_is_dominant_and_idempotent(w):
    rs = build_root_system("C", 3)
    d = dominant_representative(rs, w)
    assert all(x >= 0 for x in d)
    assert dominant_representative(rs, d) == d
    assert d in orbit(rs, w)


def test_orbit_size_matches_enumeration():
    for family, rank in SMALL_SYSTEMS:
        rs = build_root_system(family, rank)
        for mu in ((1,) + (0,) * (rank - 1), (1,) * rank, (0, 1) + (0,) * (rank - 2)):
            assert orbit_size(rs, mu) == len(orbit(rs, mu))
    with pytest.raises(ValueError):
        orbit_size(build_root_system("A", 2), (-1, 0))


def test_enumerate_weyl_counts_and_faithfulness():
    for family, rank in SMALL_SYSTEMS:
        rs = build_root_system(family, rank)
        action = WeylAction(rs)
        mats = list(enumerate_weyl(action))
        assert len(mats) == weyl_order(family, rank)
        keys = {m.astype(np.int64).tobytes() for m in mats}
        assert len(keys) == len(mats)


def test_enumerate_weyl_capacity_guard():
    action = WeylAction(build_root_system("E8"))
    with pytest.raises(CapacityError):
        list(enumerate_weyl(action, cap=10 ** 6))


def test_scalar_action_subgroup_orders_divide_the_weyl_order():
    for family, rank, p in (("A", 2, 3), ("B", 2, 2), ("D", 4, 3)):
        rep = scalar_action_subgroups(family, rank, p)
        assert weyl_order(family, rank) % rep.ddagger_order == 0
        assert rep.ddagger_order % rep.dagger_order == 0


def test_scalar_action_report_shape():
    rep = scalar_action_subgroups("A", 2, 3)
    d = rep.as_dict()
    assert d["centerDim"] == 1
    assert (d["ddaggerOrder"], d["daggerOrder"]) == (6, 3)
    assert scalar_action_subgroups("A", 2, 5).center_dim == 0
