import pytest

from dworkbench.characters import (
    AddChar,
    MultChar,
    gauss_sum,
    grossen_value,
    jacobi_sum,
    kummer_trace,
    phi_inverse,
    phi_value,
    teich,
    teich_char,
)
from dworkbench.cyclotomic import CycloElem, common, root_of_unity
from dworkbench.errors import BadN, TrivialAdditive, ZeroInput
from dworkbench.finitefield import build_field


def test_mult_char_multiplicative(f13):
    chi = MultChar(f13, 3)
    for a in range(1, 13):
        for b in range(1, 13):
            x, y = f13.el(a), f13.el(b)
            assert chi(x * y) == chi(x) * chi(y)
    assert chi(f13.zero()).is_zero()


def test_add_char_homomorphism(f13):
    psi = AddChar(f13)
    for a in range(13):
        for b in range(13):
            x, y = f13.el(a), f13.el(b)
            assert psi(x + y) == psi(x) * psi(y)


def test_add_char_orthogonality(f13):
    psi = AddChar(f13)
    acc = CycloElem.zero(13)
    for x in f13.elements():
        acc = acc + psi(x)
    assert acc.is_zero()


def test_teich_char_has_exact_order(f29):
    chi = teich_char(f29, 7)
    assert chi.order == 7
    g = f29.generator
    assert teich(g, 7) == root_of_unity(7)
    with pytest.raises(BadN):
        teich_char(f29, 5)
    with pytest.raises(ZeroInput):
        teich(f29.zero(), 7)


def test_trivial_gauss_sum_is_minus_one(f7, f13, f29):
    for f in (f7, f13, f29):
        g = gauss_sum(AddChar(f), MultChar(f, 0))
        assert g == CycloElem.rational(g.M, -1)


def test_gauss_sum_rejects_trivial_additive(f7):
    with pytest.raises(TrivialAdditive):
        gauss_sum(AddChar(f7, 0), MultChar(f7, 1))


def test_gauss_modulus_all_characters(f13):
    q = 13
    for j in range(1, q - 1):
        g = gauss_sum(AddChar(f13), MultChar(f13, j))
        prod = g * g.conjugate()
        assert prod == CycloElem.rational(prod.M, q)


def _mul(a, b):
    x, y = common(a, b)
    return x * y


def test_gauss_conjugate_reflection(f13):
    # g(chi-bar) = chi(-1) conj(g(chi))
    psi = AddChar(f13)
    for j in range(1, 12):
        chi = MultChar(f13, j)
        lhs = gauss_sum(psi, chi.bar())
        rhs = _mul(chi(f13.el(-1)), gauss_sum(psi, chi).conjugate())
        a, b = common(lhs, rhs)
        assert a == b


def test_jacobi_factorization_all_pairs(f13):
    psi = AddChar(f13)
    cache = {j: gauss_sum(psi, MultChar(f13, j)) for j in range(12)}
    for a in range(1, 12):
        for b in range(1, 12):
            if (a + b) % 12 == 0:
                continue
            J = jacobi_sum(MultChar(f13, a), MultChar(f13, b))
            lhs = _mul(J, cache[(a + b) % 12])
            rhs = _mul(cache[a], cache[b])
            x, y = common(lhs, rhs)
            assert x == y


def test_jacobi_rejects_mixed_fields(f7, f13):
    with pytest.raises(ValueError):
        jacobi_sum(MultChar(f7, 1), MultChar(f13, 1))


def test_grossen_value_abs2(f29):
    # nondegenerate pairs carry weight one
    v = grossen_value(f29, 7, 1, 3)
    assert abs(v.abs2() - 29) < 1e-9


def test_kummer_trace_values(f29):
    chi = teich_char(f29, 7)
    assert kummer_trace(f29, 7, 1, 0).is_zero()
    assert kummer_trace(f29, 7, 1, f29.el(5)) == chi(f29.el(5)).coerce(7)
    assert kummer_trace(f29, 7, 2, 1, flavor="one_minus_x").is_zero()
    got = kummer_trace(f29, 7, 2, 3, flavor="one_minus_x")
    assert got == (chi ** 2)(f29.el(-2)).coerce(7)
    with pytest.raises(ValueError):
        kummer_trace(f29, 7, 1, 2, flavor="y")


def test_compose_norm_matches_norm_then_char():
    base = build_field(7)
    E = build_field(7, 2)
    chi = MultChar(base, 2)
    chiE = chi.compose_norm(E)
    for x in list(E.units())[:20]:
        nx = E.norm_to_subfield(x, 1)
        want = chi(base.from_code(nx.code)) if nx.field is not base else chi(nx)
        a, b = common(chiE(x), want)
        assert a == b


def test_phi_value_inverse_cancel(f29):
    psi = AddChar(f29)
    val = phi_value(f29, 7, (1, 6), (0, 0), psi)
    inv = phi_inverse(f29, 7, (1, 6), (0, 0), psi)
    prod = val * inv
    assert prod == CycloElem.one(prod.M)


def test_phi_value_weight(f29):
    # trivial slots contribute unit factors, nontrivial ones weight q each
    assert abs(phi_value(f29, 7, (1, 6), (0, 0)).abs2() - 29 ** 2) < 1e-4
    assert abs(phi_value(f29, 7, (1, 6), (2, 3)).abs2() - 29 ** 4) < 1e-4
