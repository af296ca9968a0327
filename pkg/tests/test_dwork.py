import random

import pytest

from dworkbench.cyclotomic import CycloElem
from dworkbench.dwork import (
    DworkFiber,
    EigenTrace,
    GroupElement,
    boundary_term,
    count_points,
    duality_check,
    eigentrace_all_t,
    eigentrace_charsum,
    fix_count_bruteforce,
    strata_sets,
    weil_check,
)
from dworkbench.errors import BadN, BadParams, BadT, Infeasible, UnsupportedN
from dworkbench.finitefield import build_field
from dworkbench.weights import build_v


def test_fiber_validation(f7, f29):
    with pytest.raises(BadN):
        DworkFiber(f7, 4, 2)  # even
    with pytest.raises(BadN):
        DworkFiber(f29, 3, 2)  # 3 does not divide 28
    with pytest.raises(BadN):
        DworkFiber(build_field(7, 2), 3, 2)  # extension base
    fib = DworkFiber(f7, 3, 3)
    assert fib.t.code == 3


def test_smoothness_locus(f7):
    # cubes of units are 1, 2, 4; those fibers are singular
    smooth = [t for t in range(7) if DworkFiber(f7, 3, t).is_smooth()]
    assert smooth == [0, 3, 5, 6]


def test_group_element_canonical_form():
    g = GroupElement(3, (1, 2, 0))
    assert g.exps == (0, 1, 2)
    assert g == GroupElement(3, (0, 1, 2)) and hash(g) == hash(GroupElement(3, (0, 1, 2)))
    with pytest.raises(BadParams):
        GroupElement(3, (1, 1, 0))  # exponent sum not divisible by 3


def test_strata_sets_shape():
    sets = strata_sets((0, 0, 0, 2, 3, 4, 5))
    assert all(1 <= 7 - len(Z) <= 5 for Z in sets)
    # complements of the three equal slots: sizes 1 and 2 around index set {0,1,2}
    assert (1, 2, 3, 4, 5, 6) in sets and (0, 2, 3, 4, 5, 6) in sets
    assert (3, 4, 5, 6) in sets
    # no stratum may pin two different values
    assert all(len({(0, 0, 0, 2, 3, 4, 5)[i] for i in range(7) if i not in Z}) == 1 for Z in sets)


def test_boundary_term_anchor_choice_free(f29):
    entries = (0, 0, 0, 2, 3, 4, 5)
    Z = (1, 2, 3, 4, 5, 6)
    vals = [boundary_term(f29, 7, entries, Z, i0=i) for i in (1, 3, 6)]
    assert vals[0] == vals[1] == vals[2]


def test_boundary_term_validation(f29):
    entries = (0, 0, 0, 2, 3, 4, 5)
    with pytest.raises(BadParams):
        boundary_term(f29, 7, entries, (0, 1, 4, 5, 6))  # off-part not constant
    with pytest.raises(BadParams):
        boundary_term(f29, 7, entries, (3,))  # too small


def test_trace_requires_smooth_nonzero_t(f29):
    v = build_v(2, 7)
    with pytest.raises(BadT):
        eigentrace_charsum(v, DworkFiber(f29, 7, 0))
    singular = next(t for t in range(2, 29) if not DworkFiber(f29, 7, t).is_smooth())
    with pytest.raises(BadT):
        eigentrace_charsum(v, DworkFiber(f29, 7, singular))
    with pytest.raises(ValueError):
        eigentrace_charsum(v, DworkFiber(f29, 7, 2), engine="magic")


def test_engine_matches_defining_scan_n3(f7, f13):
    for f, t in ((f7, 3), (f7, 5), (f13, 2)):
        for exps in ((0, 0, 0), (0, 1, 2)):
            fib = DworkFiber(f, 3, t)
            a = eigentrace_charsum(exps, fib, engine="state")
            b = eigentrace_charsum(exps, fib, engine="scan")
            assert a.value == b.value, (f.q, t, exps)


def test_engine_matches_defining_scan_n5():
    f11 = build_field(11)
    fib = DworkFiber(f11, 5, 2)
    assert fib.is_smooth()
    for exps in ((0, 0, 0, 0, 0), (0, 1, 4, 2, 3)):
        a = eigentrace_charsum(exps, fib, engine="state")
        b = eigentrace_charsum(exps, fib, engine="scan")
        assert a.value == b.value


@pytest.mark.slow
def test_engine_matches_defining_scan_n7(f29):
    fib = DworkFiber(f29, 7, 2)
    v = build_v(2, 7)
    a = eigentrace_charsum(v, fib, engine="state")
    b = eigentrace_charsum(v, fib, engine="scan")
    assert a.value == b.value


def test_pinned_production_trace(f29):
    fib = DworkFiber(f29, 7, 2)
    tr = eigentrace_charsum(build_v(2, 7), fib)
    want = CycloElem.from_json({
        "M": 7,
        "coeffs": [[str(c), "1"] for c in (-5046, 0, -3364, -5046, -5046, -3364)],
    })
    assert tr.value == want


def test_hyperplane_block_only_on_constant_labels(f7):
    fib = DworkFiber(f7, 3, 3)
    triv = eigentrace_charsum((0, 0, 0), fib)
    assert triv.hyperplane == CycloElem.rational(3, (7 ** 2 - 1) // 6)
    nontriv = eigentrace_charsum((0, 1, 2), fib)
    assert nontriv.hyperplane.is_zero()
    # total = torus + hyperplane + boundary strata
    acc = triv.torus + triv.hyperplane
    for s in triv.strata.values():
        acc = acc + s
    assert acc == triv.value


def test_all_t_table_matches_single_calls(f13):
    v = (0, 0, 0)
    table = eigentrace_all_t(f13, 3, v)
    smooth = [t for t in range(1, 13) if DworkFiber(f13, 3, t).is_smooth()]
    assert sorted(table) == smooth
    for t in smooth:
        single = eigentrace_charsum(v, DworkFiber(f13, 3, t))
        assert table[t].value == single.value


def test_weil_bound_holds(f29):
    table = eigentrace_all_t(f29, 7, build_v(2, 7))
    assert all(weil_check(tr) for tr in table.values())


def test_translate_and_conjugation_duality(f29):
    v = build_v(2, 7)
    smooth = [t for t in range(2, 29) if DworkFiber(f29, 7, t).is_smooth()]
    for t in smooth[:3] + smooth[-1:]:
        assert duality_check(v, DworkFiber(f29, 7, t))


def test_translate_invariance_explicit(f13):
    # adding the all-ones vector to the label leaves every trace unchanged
    base = (0, 1, 2)
    shifted = tuple((e + 2) % 3 for e in base)
    for t in (2, 5, 6):
        fib = DworkFiber(f13, 3, t)
        assert eigentrace_charsum(base, fib).value == eigentrace_charsum(shifted, fib).value


def test_conjugation_duality_explicit(f13):
    v = (0, 1, 2)
    neg = tuple((-e) % 3 for e in v)
    for t in (2, 5):
        fib = DworkFiber(f13, 3, t)
        assert eigentrace_charsum(neg, fib).value == eigentrace_charsum(v, fib).value.conjugate()


def test_lefschetz_against_point_count(f7):
    # 1 + q - T = #points for the smooth cubic curve fibers
    for t in (3, 5, 6):
        fib = DworkFiber(f7, 3, t)
        tr = eigentrace_charsum((0, 0, 0), fib)
        total = CycloElem.rational(3, 1 + 7) - tr.value
        assert total == CycloElem.rational(3, count_points(fib))


def test_point_count_pins(f7):
    fib = DworkFiber(f7, 3, 3)
    assert count_points(fib) == 9
    assert count_points(fib, m=2) == 63


def test_point_count_weil_consistency(f7):
    # a curve with 9 rational points over F_7 has trace a = -1, so
    # #E(F_49) = 49 + 1 - (a^2 - 2q) = 63; checked above.  The t = 0 fiber
    # is the Fermat cubic.
    fermat = DworkFiber(f7, 3, 0)
    n1 = count_points(fermat)
    a = 7 + 1 - n1
    n2 = count_points(fermat, m=2)
    assert n2 == 49 + 1 - (a * a - 2 * 7)


def test_point_count_budget_guard(f29):
    with pytest.raises(Infeasible):
        count_points(DworkFiber(f29, 7, 2), m=2)


def test_fix_count_identity_element_is_point_count(f7):
    fib = DworkFiber(f7, 3, 3)
    assert fix_count_bruteforce(fib, GroupElement(3, (0, 0, 0))) == count_points(fib)


def test_fix_count_only_cubic(f29):
    with pytest.raises(UnsupportedN):
        fix_count_bruteforce(DworkFiber(f29, 7, 2), GroupElement(7, (0,) * 7))


def test_group_average_inversion(f7):
    # averaging fixed points against the dual character recovers each trace
    from fractions import Fraction

    from dworkbench.cyclotomic import root_of_unity

    t = 3
    fib = DworkFiber(f7, 3, t)
    gs = [GroupElement(3, e) for e in ((0, 0, 0), (0, 1, 2), (0, 2, 1))]
    fixes = {g: fix_count_bruteforce(fib, g) for g in gs}
    for label in ((0, 0, 0), (0, 1, 2), (0, 2, 1)):
        acc = CycloElem.zero(3)
        for g in gs:
            pair = sum(a * b for a, b in zip(label, g.exps))
            acc = acc + root_of_unity(3, (-pair) % 3) * fixes[g]
        pred = acc * Fraction(-1, 3)
        if len(set(label)) == 1:
            pred = pred + (1 + 7)
        got = eigentrace_charsum(label, fib)
        assert got.value == pred


def test_trace_json_shape(f29):
    tr = eigentrace_charsum(build_v(2, 7), DworkFiber(f29, 7, 2))
    obj = tr.to_json()
    assert set(obj) == {"t", "value", "strata"}
    assert obj["t"] == 2
    assert "torus" in obj["strata"]
    rebuilt = CycloElem.from_json(obj["value"])
    assert rebuilt == tr.value
