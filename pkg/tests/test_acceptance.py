"""Acceptance suite: one PASS/FAIL line per criterion.

The lines are printed as each test runs and repeated in the terminal
summary, so ``pytest -v`` output always contains them.
"""

import itertools
import random
import time

import numpy as np
import pytest

from sdcss.basis import SymplecticBasis, build_compatible_basis, existence_check, verify_basis
from sdcss.codes import builtin, hamming_code, min_distance_bruteforce
from sdcss.concat import concatenate, level_layer, merge_product, transversal_levels, verify_multilevel
from sdcss.ftqc import ancilla_classes, convert_measurement, overcomplete_set, parse_target
from sdcss.gf2 import BitVector
from sdcss.pauli import (
    PauliOperator,
    TransversalLayer,
    conjugate_by_layer,
    conjugate_by_transversal_cnot,
    count_symplectic_matrices,
    dense_oracle_conjugate,
    equal_up_to_global_phase,
    full_clifford_generators,
    reduce_word,
    symplectic_closure,
    word_matrix,
)
from sdcss.phase import PhasePattern, logical_phase_signs, synthesize_phase_layer

RESULTS = pytest.StashKey[list]()


@pytest.fixture
def report(request, capsys):
    def _report(number: int, ok: bool, detail: str) -> None:
        line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
        request.config.stash.setdefault(RESULTS, []).append(line)
        with capsys.disabled():
            print("\n" + line)
        assert ok, line
    return _report


def pytest_terminal_summary_lines(config):
    return config.stash.get(RESULTS, [])


def _yes_codes():
    return [builtin("c622"), builtin("steane7"), builtin("qhamming15")] + [hamming_code(m) for m in (3, 4, 5, 6)]


def test_criterion_01_existence(report):
    t0 = time.perf_counter()
    no = not existence_check(builtin("c422")).exists
    witnesses_ok = True
    for code in _yes_codes():
        v = existence_check(code)
        w = v.witness
        witnesses_ok &= v.exists and w.dot(w) == 1 and code.in_code(w) and not code.in_dual(w)
    dt = time.perf_counter() - t0
    report(1, no and witnesses_ok and dt < 1.0,
           f"c422 refused={no}, 7 witnesses valid={witnesses_ok}, {dt:.3f}s")


def test_criterion_02_basis_construction(report):
    built_ok = all(verify_basis(c, build_compatible_basis(c), require_matched=True).ok for c in _yes_codes())
    q = builtin("qhamming15")
    new_ok = verify_basis(q, SymplecticBasis.from_pairs(q.reference_bases["compatible"])).ok
    gauge_rep = verify_basis(q, SymplecticBasis.from_pairs(q.reference_bases["gauge"]))
    pairs = sorted({tuple(sorted((a + 1, b + 1))) for a, b in gauge_rep.swaps})
    gauge_ok = not gauge_rep.ok and pairs == [(1, 2), (3, 4), (5, 6)]
    report(2, built_ok and new_ok and gauge_ok,
           f"built bases pass={built_ok}, new basis passes={new_ok}, gauge swaps={pairs}")


def test_criterion_03_phase_synthesis(report):
    q = builtin("qhamming15")
    basis = SymplecticBasis.from_pairs(q.reference_bases["compatible"])
    signs = logical_phase_signs(q, basis, PhasePattern.all_plus(15)).signs
    sdg = synthesize_phase_layer(q, basis, [1] * 7).minus_positions()
    ok = signs == (-1, -1, 1, 1, -1, -1, 1) and sdg == [3, 6, 9, 12]
    report(3, ok, f"all-S signs={signs}, all-+1 target puts S† on {sdg}")


def _random_case(rng: random.Random):
    if rng.random() < 0.25:
        n = rng.randint(1, 3)
        support = [i for i in range(n) if rng.random() < 0.7]
        layer = TransversalLayer.cnot_layer(n, support, reverse=rng.random() < 0.5)
        width = 2 * n
    else:
        width = rng.randint(1, 7)
        layer = TransversalLayer(tuple(rng.choice(("I", "X", "Y", "Z", "H", "S", "Sdg")) for _ in range(width)))
    p = PauliOperator(BitVector(width, rng.getrandbits(width)), BitVector(width, rng.getrandbits(width)),
                      rng.randrange(4))
    return p, layer


def test_criterion_04_oracle_equivalence(report):
    rng = random.Random(2024)
    t0 = time.perf_counter()
    mismatches = 0
    for _ in range(200):
        p, layer = _random_case(rng)
        fast = conjugate_by_transversal_cnot(p, layer) if layer.cnot else conjugate_by_layer(p, layer)
        if fast != dense_oracle_conjugate(p, layer):
            mismatches += 1
    dt = time.perf_counter() - t0
    report(4, mismatches == 0 and dt < 30.0, f"200 conjugations, {mismatches} mismatches, {dt:.2f}s")


def _odd_element_iff_odd_rep(code):
    gens = list(code.H.rows) + list(code.coset_reps.rows)
    odd_element = False
    for coeffs in itertools.product((0, 1), repeat=len(gens)):
        v = BitVector.zeros(code.n)
        for c, g in zip(coeffs, gens):
            if c:
                v = v ^ g
        if v.dot(v):
            odd_element = True
            break
    odd_rep = any(h.dot(h) for h in code.coset_reps.rows)
    return odd_element == odd_rep


def test_criterion_05_odd_element_equivalence(report):
    codes = [builtin(n) for n in ("c422", "c622", "steane7", "qhamming15")]
    codes += [hamming_code(m) for m in (3, 4, 5, 6)]
    checked = [c for c in codes if c.r + c.k <= 20]
    ok = all(_odd_element_iff_odd_rep(c) for c in checked)
    report(5, ok, f"equivalence holds on {len(checked)} codes: {[c.name for c in checked]}")


def test_criterion_06_concatenation(report):
    t0 = time.perf_counter()
    small = verify_multilevel(concatenate([builtin("c622"), builtin("c622")]), samples=16)
    n_s_small = sum(c.name.startswith("S pattern") and c.ok for c in small.checks)
    big_cc = concatenate([builtin("qhamming15"), builtin("c622")])
    big = verify_multilevel(big_cc, samples=32, seed=0)
    n_s_big = sum(c.name.startswith("S pattern") and c.ok for c in big.checks)
    h_big = any(c.name == "all-H" and c.ok for c in big.checks)
    dt = time.perf_counter() - t0
    ok = small.ok and n_s_small == 16 and big.ok and h_big and n_s_big >= 32 and dt < 60.0
    report(6, ok, f"[c622,c622] {n_s_small}/16 S patterns, [qhamming15,c622] N={big_cc.N} K={big_cc.K} "
                  f"all-H={h_big}, {n_s_big} sampled patterns, {dt:.1f}s")


def test_criterion_07_merge(report):
    cc = concatenate([builtin("qhamming15"), builtin("c622")])
    u1 = level_layer(cc, 2, "H", [[0], [0, 1]])
    u2 = level_layer(cc, 1, "H", [range(1, 7), range(6)])
    res = merge_product(cc, [u1, u2])
    merged = res.lowest_level == 0 and res.product.gates == ("H",) * cc.N
    word = ("H", "S") * 3
    reduced = reduce_word(word) == () and equal_up_to_global_phase(word_matrix(word), np.eye(2))
    report(7, merged and reduced,
           f"U1 levels {transversal_levels(cc, u1)}, product levels {res.levels}, HSHSHS -> identity={reduced}")


CHAINS = [
    (["Zi Zj", "Xi Xj", "Yi Yj"], ["H", "S"]),
    (["Zi Zj Zl", "Xi Xj Xl", "Yi Yj Yl"], ["H", "S"]),
    (["Xi Zj", "Yi Zj", "Yi Xj", "Xi Yj", "Zi Yj", "Zi Xj"], ["S", "H", "S", "H", "S"]),
]


def test_criterion_08_chains(report):
    links = 0
    ok = True
    for labels, moves in CHAINS:
        k = 3
        cur = parse_target(labels[0], k)
        for move, nxt in zip(moves, labels[1:]):
            cur, _ = convert_measurement(cur, [move])
            ok &= cur.key() == parse_target(nxt, k).key()
            links += 1
    classes = [sorted(t.label for t in c) for c in ancilla_classes(overcomplete_set(3))]
    single = ["X1", "Y1", "Z1"] in classes
    double = ["X1 X2", "Y1 Y2", "Z1 Z2"] in classes
    report(8, ok and single and double,
           f"{links} links reproduced={ok}, single-qubit class={single}, two-qubit class={double}")


def test_criterion_09_generator_closure(report):
    t0 = time.perf_counter()
    order = symplectic_closure(full_clifford_generators(2, 1, "2.1", "3.1"))
    full = count_symplectic_matrices(2)
    dt = time.perf_counter() - t0
    report(9, order == 720 == full and dt < 10.0, f"generated order {order}, enumerated |Sp(4,2)| = {full}, {dt:.2f}s")


def test_criterion_10_distances(report):
    got = [min_distance_bruteforce(builtin(n)) for n in ("c422", "c622", "steane7", "qhamming15")]
    report(10, got == [2, 2, 3, 3], f"distances {got}")
