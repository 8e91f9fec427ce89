import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tgs.rootsys import build_root_system, classify_subsystem
from tgs.stringnet import (
    UnsupportedPsiError,
    alpha_strings,
    c_s_net,
    c_s_string,
    c_u_net,
    c_u_string,
    cluster_bound,
    m_psi,
    min_unipotent_class_dim,
    net_report,
    psi_nets,
    string_discharge,
    string_table,
    u_arms_ok,
)
from tgs.weights import INFINITY, Triple, irreducible_character


def test_string_table_report_shape():
    rep = string_table(Triple("A", 2, (4, 0), 5), root="short")
    assert rep.cs_totals == {2: 6, 3: 8, 7: 10}
    assert rep.cu_total == 10
    assert rep.thresholds == {"M": 6, "M_2": 4, "M_3": 6, "M_p": 6}
    assert rep.flags == {
        "ss_ddag": False,
        "ss_dag": True,
        "u_ddag": True,
        "u_dag": True,
    }
    rows = rep.to_rows()
    assert rows[0][0] == "unit"
    assert rep.as_dict()["cuTotal"] == 10


def test_alpha_strings_partition_the_character():
    t = Triple("A", 2, (4, 0), 5)
    ch = irreducible_character(t)
    strings = alpha_strings(ch, t.rs.positive_roots[0])
    assert sum(s.total for s in strings) == ch.total
    assert c_s_string(strings[0], 2) == 2
    assert c_u_string(strings[0], 5) == 4


small_lams = st.sampled_from(
    [(1, 0), (0, 1), (1, 1), (2, 0), (2, 1), (0, 2)]
)


@settings(max_examples=12, deadline=None)
@given(small_lams, st.integers(min_value=0, max_value=1))
def test_string_and_net_partitions_cover_every_weight(lam, i):
    t = Triple("A", 2, lam, INFINITY)
    ch = irreducible_character(t)
    alpha = tuple(1 if j == i else 0 for j in range(2))
    assert sum(s.total for s in alpha_strings(ch, alpha)) == ch.total
    psi = classify_subsystem(t.rs, [i])
    nets = psi_nets(ch, psi)
    assert sum(n.total for n in nets) == ch.total
    assert all(c_s_net(n, 2) >= 0 and c_u_net(n, 3) >= 0 for n in nets)


def test_net_report_totals():
    rep = net_report(
        Triple("A", 9, (0, 0, 0, 0, 1, 0, 0, 0, 0), 5), (0, 2)
    )
    assert rep.cs_totals == {2: 100, 3: 100, 7: 100}
    assert rep.cu_total == 100


def test_m_psi_is_type_a_only():
    assert m_psi(build_root_system("A", 5), "A1^2") == 20
    with pytest.raises(UnsupportedPsiError):
        m_psi(build_root_system("B", 3), "A1^2")
    with pytest.raises(ValueError):
        m_psi(build_root_system("A", 5), "B2")


def test_min_unipotent_class_dim():
    assert min_unipotent_class_dim(build_root_system("A", 3)) == 6
    assert min_unipotent_class_dim(build_root_system("G2")) == 6


def test_string_discharge_in_scope():
    d = string_discharge(Triple("A", 2, (4, 0), 5))
    assert d["ok"] and d["ss_ok"] and d["u_ok"]
    assert d["ss_dag"] and not d["ss_ddag"]
    assert d["t_r"] == {2: 6, 3: 8, 7: 10}
    assert d["cu"] == {"short": 10, "long": 10}


def test_string_discharge_out_of_scope():
    d = string_discharge(Triple("A", 7, (0, 0, 1, 0, 0, 0, 0), 5))
    assert not d["ok"]
    assert d["t_r"] == {}


def test_u_arms():
    assert not u_arms_ok(build_root_system("B", 3), 5, 3, 3)
    assert u_arms_ok(build_root_system("A", 2), 5, 8, 8)


def test_cluster_bound_masses_cover_the_module():
    ch = irreducible_character(Triple("C", 4, (0, 0, 1, 0), 3))
    phi = classify_subsystem(build_root_system("C", 4), [0, 1, 2])
    diagram, bound = cluster_bound(ch, phi)
    assert bound == 20
    assert sum(diagram.masses) == ch.total
