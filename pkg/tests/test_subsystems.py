import pytest

from dilatonw import subsystems


def test_ascii_round_trip():
    for tag in (*subsystems.TRIPARTITE, *subsystems.BIPARTITE):
        assert subsystems.canonical(subsystems.ascii_name(tag)) == tag
        assert subsystems.canonical(tag) == tag


def test_named_examples():
    assert subsystems.ascii_name("AB_IC_I") == "a-b1-c1"
    assert subsystems.canonical("b2-c2") == "B_IIC_II"
    assert subsystems.modes_of("AB_IC_II") == (0, 1, 4)
    assert subsystems.is_tripartite("AB_IB_II") and not subsystems.is_tripartite("B_IC_I")


def test_unknown_name():
    with pytest.raises(ValueError):
        subsystems.canonical("a-b3")
