import pytest
from hypothesis import given, strategies as st

from sdcss.ftqc import (
    ancilla_classes,
    conversion_chain,
    convert_measurement,
    orbit,
    overcomplete_set,
    parse_target,
    render_chain,
)
from sdcss.pauli import TransversalLayer, dense_oracle_conjugate

targets = st.integers(1, 3).flatmap(
    lambda k: st.text(alphabet="IXYZ", min_size=k, max_size=k).filter(lambda s: set(s) != {"I"}))


def test_parse_forms_agree():
    assert parse_target("XIZ").label == "X1 Z3"
    assert parse_target("X1 Z3").label == "X1 Z3"
    assert parse_target("X1 Z3", k=4).k == 4
    assert parse_target("Zi Zj").label == "Z1 Z2"
    assert parse_target("-Y2").label == "-Y2"


@pytest.mark.parametrize("text", ["", "Q1", "X1 Z1", "X0"])
def test_parse_errors(text):
    with pytest.raises(ValueError):
        parse_target(text)


def test_parse_rejects_too_small_k():
    with pytest.raises(ValueError):
        parse_target("X3", k=2)


def test_single_moves():
    t, s = convert_measurement(parse_target("Z1 Z2"), ["H"])
    assert t.label == "X1 X2" and s == 1
    t, s = convert_measurement(parse_target("X1 X2"), ["S"])
    assert t.label == "Y1 Y2" and s == 1
    t, s = convert_measurement(parse_target("Y1"), ["S"])
    assert t.label == "X1" and s == -1


def test_chain_examples():
    zz = parse_target("Z1 Z2")
    assert conversion_chain(zz, parse_target("Y1 Y2")) == ["H", "S"]
    assert render_chain(zz, ["H", "S"]) == "Z1 Z2 <-H^k-> X1 X2 <-S^k-> Y1 Y2"
    assert conversion_chain(parse_target("X1 Z2"), parse_target("Z1 X2")) == ["H"]
    assert conversion_chain(parse_target("X1"), parse_target("X1")) == []


def test_unreachable_pair():
    assert conversion_chain(parse_target("X1", k=2), parse_target("Z1 Z2"), 8) is None
    assert conversion_chain(parse_target("XX"), parse_target("XZ"), 0) is None


def test_ancilla_classes_on_overcomplete_set():
    classes = ancilla_classes(overcomplete_set(3))
    labels = [sorted(t.label for t in c) for c in classes]
    assert sorted(["X1", "Y1", "Z1"]) in labels
    assert sorted(["X1 X2", "Y1 Y2", "Z1 Z2"]) in labels
    assert sorted(["X1 Y2", "Y1 Z2", "X1 Z2"]) in labels


@given(targets)
def test_orbit_is_closed_and_bounded(label):
    t = parse_target(label)
    orb = orbit(t)
    keys = {o.key() for o in orb}
    assert len(orb) <= 6
    for o in orb:
        for g in ("H", "S"):
            assert convert_measurement(o, [g])[0].key() in keys


@given(targets, st.lists(st.sampled_from(["H", "S", "Sdg"]), max_size=5))
def test_conversion_matches_oracle(label, word):
    t = parse_target(label)
    op = t.operator
    for g in word:
        op = dense_oracle_conjugate(op, TransversalLayer.uniform(t.k, g))
    got, sign = convert_measurement(t, word)
    expect = op if op.letter_phase == 0 else -op
    assert got.operator == expect
    assert sign == (1 if op.letter_phase == 0 else -1)


@given(targets, targets)
def test_chain_symmetry(a, b):
    ta, tb = parse_target(a), parse_target(b)
    if ta.k != tb.k:
        return
    forward = conversion_chain(ta, tb)
    backward = conversion_chain(tb, ta)
    assert (forward is None) == (backward is None)
    if forward is not None:
        assert convert_measurement(ta, forward)[0].key() == tb.key()
