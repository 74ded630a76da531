import itertools

import pytest
from hypothesis import given, strategies as st

from sdcss.basis import SymplecticBasis
from sdcss.codes import builtin
from sdcss.concat import (
    LevelIndexMap,
    LevelLayer,
    concatenate,
    conjugate_level0,
    level_index_map,
    level_layer,
    lift_transversal,
    merge_product,
    push_down,
    push_up,
    representations,
    transversal_levels,
    verify_multilevel,
)
from sdcss.errors import (
    DimensionError,
    IncompatibleSupportError,
    UnsupportedLevelError,
    UnsupportedShapeError,
)
from sdcss.gf2 import BitVector
from sdcss.pauli import PauliOperator


@pytest.fixture(scope="module")
def c622x2():
    return concatenate([builtin("c622"), builtin("c622")])


@pytest.fixture(scope="module")
def q15_c622():
    return concatenate([builtin("qhamming15"), builtin("c622")])


def test_shapes(c622x2, q15_c622):
    assert (c622x2.N, c622x2.K, c622x2.L) == (36, 4, 2)
    assert c622x2.level_widths == (36, 12, 4)
    assert c622x2.D_lb == 4
    assert (q15_c622.N, q15_c622.K) == (90, 14)
    assert q15_c622.level_widths == (90, 42, 14)
    assert q15_c622.dims(1) == (7, 6)


def test_unsupported_level():
    with pytest.raises(UnsupportedLevelError) as err:
        concatenate([builtin("c622"), builtin("c422")])
    assert err.value.level == 2


def test_supplied_basis_shape_checked():
    code = builtin("c622")
    other = concatenate([builtin("steane7")]).bases[0]
    with pytest.raises(DimensionError):
        concatenate([code], bases=[other])


@given(st.lists(st.integers(1, 5), min_size=1, max_size=4), st.data())
def test_index_map_roundtrip(dims, data):
    m = LevelIndexMap(0, dims)
    f = data.draw(st.integers(0, m.size - 1))
    assert m.to_flat(m.to_coords(f)) == f


def test_index_map_is_row_major():
    m = LevelIndexMap(1, (7, 6))
    assert m.to_flat((0, 1)) == 1
    assert m.to_flat((1, 0)) == 6


def test_stabilizers_and_logicals_are_consistent(q15_c622):
    cc = q15_c622
    stabs = cc.stabilizers
    assert len(stabs) == (cc.N - cc.K) // 2
    for a in stabs:
        assert all(a.dot(b) == 0 for b in stabs)
    for j, (x, z) in enumerate(cc.logical_pairs):
        assert all(x.dot(g) == 0 and z.dot(g) == 0 for g in stabs)
        for jj, (x2, z2) in enumerate(cc.logical_pairs):
            assert x.dot(z2) == (1 if j == jj else 0)
        assert x == z


def test_all_h_lifts_to_physical(c622x2):
    res = lift_transversal(c622x2, "H", 2, [[0, 1], [0, 1]])
    assert res.levels == [0, 1, 2]
    assert res.physical.gates == ("H",) * 36


def test_s_pattern_reaches_physical(c622x2):
    res = lift_transversal(c622x2, "S", 2, [[0, 1], [0, 1]], signs=[1, -1, -1, 1])
    layer = res.physical
    for j, (x, z) in enumerate(c622x2.logical_pairs):
        img = conjugate_level0(PauliOperator.x_type(x), res.lowest)
        want = 1 if [1, -1, -1, 1][j] == 1 else 3
        assert img == PauliOperator(x, z, want)
    assert set(layer.gates) <= {"S", "Sdg"}


@pytest.mark.parametrize("kind", ["X", "Z", "Y"])
def test_pauli_lift_matches_logical_operator(c622x2, kind):
    res = lift_transversal(c622x2, kind, 2, [[1], [0]])
    j = level_index_map(c622x2, 2).to_flat((1, 0))
    x, z = c622x2.logical_pairs[j]
    gates = res.physical.gates
    xs = BitVector.from_support(36, [i for i, g in enumerate(gates) if g in ("X", "Y")])
    zs = BitVector.from_support(36, [i for i, g in enumerate(gates) if g in ("Z", "Y")])
    assert xs == (x if kind in ("X", "Y") else BitVector.zeros(36))
    assert zs == (z if kind in ("Z", "Y") else BitVector.zeros(36))


def test_shape_rule_enforced(c622x2):
    with pytest.raises(UnsupportedShapeError):
        lift_transversal(c622x2, "H", 2, [[0, 1], [0]])
    res = lift_transversal(c622x2, "H", 2, [[0], [0, 1]])
    assert res.lowest.level == 1


def test_partial_gate_stops_above_physical(c622x2):
    with pytest.raises(UnsupportedShapeError):
        lift_transversal(c622x2, "H", 1, [[0], [3]])
    layer = level_layer(c622x2, 1, "H", [[0], [3]])
    assert transversal_levels(c622x2, layer) == [1]


def test_transversal_cnot_lift(c622x2):
    res = lift_transversal(c622x2, "CNOT", 2, [[0, 1], [0, 1]])
    layer = res.physical
    assert layer.cnot and layer.gates == ("CX",) * 36
    n = c622x2.N
    for x, z in c622x2.logical_pairs:
        xin = PauliOperator(BitVector(2 * n, x.bits), BitVector.zeros(2 * n))
        out = conjugate_level0(xin, res.lowest)
        assert out.x == BitVector(2 * n, x.bits | (x.bits << n)) and out.z == BitVector.zeros(2 * n)
        zin = PauliOperator(BitVector.zeros(2 * n), BitVector(2 * n, z.bits << n))
        out = conjugate_level0(zin, res.lowest)
        assert out.z == BitVector(2 * n, z.bits | (z.bits << n))


def test_push_up_inverts_push_down(q15_c622):
    cc = q15_c622
    top = level_layer(cc, 2, "S", [range(7), [0, 1]], signs=[1, -1] * 7)
    low = push_down(cc, top)
    assert push_up(cc, low) == top


def test_mixed_block_is_not_transversal(c622x2):
    gates = ["H", "S"] + ["I"] * 10
    layer = LevelLayer(1, tuple(gates))
    assert push_down(c622x2, layer) is None
    assert transversal_levels(c622x2, layer) == [1]


def test_merge_reaches_physical_level(q15_c622):
    cc = q15_c622
    j1 = 2
    u1 = level_layer(cc, 2, "H", [[j1], [0, 1]])
    u2 = level_layer(cc, 1, "H", [[j for j in range(7) if j != j1], range(6)])
    assert transversal_levels(cc, u1) == [1, 2]
    res = merge_product(cc, [u1, u2])
    assert res.common_level == 1 and res.lowest_level == 0
    assert res.product.gates == ("H",) * 90


def test_merge_with_partial_blocks(q15_c622):
    cc = q15_c622
    j1, subset = 2, {0, 2, 3}
    imap = level_index_map(cc, 1)
    gates = ["I"] * cc.width(1)
    for j, i in itertools.product(range(7), range(6)):
        if (j != j1) == (i in subset):
            gates[imap.to_flat((j, i))] = "H"
    u1 = level_layer(cc, 2, "H", [[j1], [0, 1]])
    u2 = LevelLayer(1, tuple(gates))
    assert transversal_levels(cc, u2) == [1]
    res = merge_product(cc, [u1, u2])
    assert res.levels == [0, 1]
    phys = res.product.gates
    for blk_i in range(6):
        block = [phys[q * 6 + blk_i] for q in range(15)]
        assert set(block) == ({"H"} if blk_i in subset else {"I"})


def test_merge_word_reduction(c622x2):
    h = level_layer(c622x2, 1, "H", [range(2), range(6)])
    s = level_layer(c622x2, 1, "S", [range(2), range(6)])
    res = merge_product(c622x2, [h, s, h, s, h, s])
    assert res.product.is_identity()


def test_merge_rejects_mixed_kinds(c622x2):
    h = level_layer(c622x2, 1, "H", [range(2), range(6)])
    cx = level_layer(c622x2, 1, "CNOT", [range(2), range(6)])
    with pytest.raises(IncompatibleSupportError):
        merge_product(c622x2, [h, cx])


def test_representations_cover_all_levels(c622x2):
    layer = level_layer(c622x2, 1, "H", [range(2), range(6)])
    assert list(representations(c622x2, layer)) == [0, 1, 2]


def test_verify_multilevel(c622x2):
    rep = verify_multilevel(c622x2, samples=16)
    assert rep.ok, rep.lines()
    assert sum(c.name.startswith("S pattern") for c in rep.checks) == 16


def test_verify_multilevel_flags_broken_basis():
    code = builtin("qhamming15")
    gauge = SymplecticBasis.from_pairs(code.reference_bases["gauge"])
    cc = concatenate([code, builtin("c622")], bases=[gauge, None])
    rep = verify_multilevel(cc, samples=4)
    assert not rep.ok
    assert 1 in rep.failed_levels
