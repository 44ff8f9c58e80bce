import pytest
from hypothesis import given, settings, strategies as st

from oracles import frac_rank
from strongmonads import chain as ch
from strongmonads.algebras import (
    AugmentedMonad,
    FreeCellAttachment,
    ModuleOverMonoid,
    TAlgebra,
    adjunction_unit,
    adjunction_unit_check,
    bar_is_resolution,
    bar_resolution,
    check_excellent_partial,
    check_homotopically_right_exact,
    e_tensor,
    free_algebra,
    free_module,
    lambda_attachment,
    lambda_shriek,
    lambda_star,
    verify_free_cofibre_sequence,
)
from strongmonads.chain import ChainComplex, ChainMap
from strongmonads.linalg import FPAbGroup, FPMorphism, Matrix
from strongmonads.monad import (
    CHAIN_Q,
    CHAIN_Z,
    FPAB,
    IdentityMonad,
    TensorMonad,
    dual_numbers,
    exterior,
    group_ring_c2,
    make_monad,
    monoid_of_unit,
    perturb_map,
)

seeds = st.integers(0, 10**6)


def q(degree=0, ground="Q"):
    return ChainComplex.point(ground, degree, 1)


def trivial(T, ground="Q", row=None):
    """The ground ring acting through an augmentation ``row`` of ``T(R)`` in degree 0."""
    a = q(0, ground)
    ta = T.obj(a)
    row = row or [1] + [0] * (ta.dim(0) - 1)
    return TAlgebra(T, a, ChainMap(ta, a, [Matrix.from_rows([row], ta.dim(0))]))


def test_free_algebra_on_zero_and_on_the_unit():
    T = TensorMonad(dual_numbers())
    zero = free_algebra(T, ChainComplex.zero("Q"))
    assert zero.carrier.is_zero() and zero.check()
    unit = free_algebra(T, q())
    assert unit.check()
    assert unit.structure.components == T.monoid.mult.components


def test_perturbed_structure_fails_the_unit_law():
    alg = trivial(TensorMonad(exterior()))
    assert alg.check()
    bad = TAlgebra(alg.monad, alg.carrier, perturb_map(alg.structure, (0, 0, 0)))
    assert "unit" in bad.failures()


def test_e_tensor_with_the_unit_object():
    T = TensorMonad(exterior())
    alg = free_algebra(T, q(1))
    e = e_tensor(CHAIN_Q.unit(), alg)
    assert e.check()
    assert e.carrier.dims == alg.carrier.dims


def test_e_tensor_for_the_identity_monad():
    T = IdentityMonad(CHAIN_Q)
    x = ChainComplex.disk("Q", 2)
    alg = TAlgebra(T, x, ChainMap.identity(x))
    assert e_tensor(q(1), alg).carrier.dims == CHAIN_Q.tensor(q(1), x).dims


def test_e_tensor_of_free_tensor_algebra_matches_brute_force_cokernel():
    T = make_monad("tensoralg")
    z = q(1)
    alg = free_algebra(T, z)
    c = T.ctx
    zx = c.tensor(z, alg.carrier)
    first = T.mu(zx) @ T.fmap(T.sigma(z, alg.carrier))
    second = T.fmap(c.tensor_map(c.identity(z), alg.structure))
    diff = first - second
    expected = []
    for n in range(5):
        m = diff.comp(n)
        r = frac_rank(m.to_rows()) if m.nrows and m.ncols else 0
        expected.append(diff.target.dim(n) - r)
    e = e_tensor(z, alg)
    assert list(e.carrier.dims) == expected[: len(e.carrier.dims)]
    assert expected == [0, 0, 1, 0, 1]
    assert e.check()


def test_lambda_star_of_free_algebra_is_the_free_module():
    T = TensorMonad(dual_numbers())
    M = monoid_of_unit(T)
    x = ChainComplex.disk("Q", 1)
    mod = lambda_star(free_algebra(T, x), M)
    assert mod.check()
    assert mod.action.components == free_module(M, x).action.components


def test_lambda_star_for_identity_monad_is_trivial():
    T = IdentityMonad(FPAB)
    x = FPAbGroup.cyclic(3)
    mod = lambda_star(TAlgebra(T, x, FPMorphism.identity(x)))
    assert mod.check()
    assert mod.action.matrix == Matrix.identity(1)


def test_lambda_shriek_on_free_modules():
    T = TensorMonad(exterior())
    M = monoid_of_unit(T)
    x = q(1)
    free = free_module(M, x)
    assert lambda_shriek(T, free).carrier == T.obj(x)
    coeq = lambda_shriek(T, free, coequalizer=True)
    assert coeq.check()
    assert coeq.carrier.dims == T.obj(x).dims


def test_lambda_shriek_for_identity_monad_keeps_the_carrier():
    T = IdentityMonad(CHAIN_Q)
    M = monoid_of_unit(T)
    x = ChainComplex.disk("Q", 2)
    mod = ModuleOverMonoid(M, x, CHAIN_Q.right_unit(x))
    assert mod.check()
    assert lambda_shriek(T, mod).carrier.dims == x.dims


def test_sign_module_round_trip_over_group_ring():
    T = make_monad("tensor:C2")
    M = monoid_of_unit(T)
    z = FPAbGroup.free(1)
    sign = ModuleOverMonoid(M, z, FPMorphism(FPAB.tensor(z, M.carrier), z, Matrix.from_rows([[1, -1]])))
    assert sign.check()
    alg = lambda_shriek(T, sign)
    assert alg.check() and alg.carrier.canonical == (1, ())
    back = lambda_star(alg, M)
    assert back.check()
    assert adjunction_unit(T, sign).is_iso()


@pytest.mark.parametrize("name", ["identity", "tensor:C2", "tensor:Z2", "homtensor:Z:Z2", "homtensor:M2Z:e11"])
def test_unit_at_free_modules_is_the_strength_in_fpab(name):
    T = make_monad(name)
    for label, x in [("Z", FPAbGroup.free(1)), ("Z/2", FPAbGroup.cyclic(2)), ("0", FPAbGroup.free(0))]:
        rep = adjunction_unit_check(T, x, label)
        assert rep.equals_strength and rep.iso and rep.weq


@pytest.mark.parametrize("name", ["identity:Q", "identity:Z", "tensor:eps", "tensor:Lambda", "tensor:Q"])
def test_unit_at_free_modules_is_the_strength_on_chains(name):
    T = make_monad(name)
    for x in [q(1, T.ctx.ground), ChainComplex.disk(T.ctx.ground, 2), ChainComplex.zero(T.ctx.ground)]:
        rep = adjunction_unit_check(T, x, "x", 3)
        assert rep.equals_strength and rep.iso and rep.weq


def test_tensoralg_unit_is_the_strength_but_not_a_weak_equivalence():
    T = make_monad("tensoralg")
    rep = adjunction_unit_check(T, q(1), "Q[1]", 3)
    assert rep.equals_strength
    assert not rep.iso and not rep.weq


def test_bar_of_identity_monad_is_constant():
    T = IdentityMonad(CHAIN_Q)
    x = ChainComplex.disk("Q", 2)
    bar = bar_resolution(TAlgebra(T, x, ChainMap.identity(x)), 3)
    for n in range(1, 4):
        assert all(f.equals(ChainMap.identity(x)) for f in bar.simplicial.faces[n])
    assert bar.augmentation.check()


def test_bar_levels_of_free_module_are_tensor_powers():
    M = dual_numbers()
    T = TensorMonad(M)
    bar = bar_resolution(free_algebra(T, q()), 3)
    assert [l.dims for l in bar.carriers] == [(2 ** (n + 2),) for n in range(4)]


@pytest.mark.parametrize("monoid", [dual_numbers, exterior])
def test_bar_resolution_of_the_ground(monoid):
    rep = bar_is_resolution(trivial(TensorMonad(monoid())), 4)
    assert rep.ok
    assert rep.homology == [1, 0, 0, 0]
    assert rep.bound == 3


def test_bar_resolution_over_the_integers():
    T = TensorMonad(group_ring_c2(CHAIN_Z))
    alg = trivial(T, "Z", [1, 1])
    assert alg.check()
    assert not trivial(T, "Z").check()
    rep = bar_is_resolution(alg, 3)
    assert rep.ok
    assert rep.homology == [(1, ()), (0, ()), (0, ())]


def test_bar_needs_a_chain_context():
    from strongmonads.monad import UnsupportedError

    T = make_monad("tensor:C2")
    with pytest.raises(UnsupportedError):
        bar_resolution(free_algebra(T, FPAbGroup.free(1)), 2)


@given(seeds, st.sampled_from([dual_numbers, exterior]))
@settings(max_examples=8, deadline=None)
def test_bar_of_random_free_algebras(seed, monoid):
    T = TensorMonad(monoid())
    x = ch.random_complex(ch.seeded_rng(seed, "bar"), "Q", max_top=1, max_dim=2)
    rep = bar_is_resolution(free_algebra(T, x), 3)
    assert rep.ok
    assert rep.homology == ch.betti(T.obj(x), 2)


def test_lambda_attachment_preset():
    att = lambda_attachment()
    assert att.pushout.check() and att.quotient.check()
    assert att.pushout.carrier.dims == (0, 1, 2, 1)
    assert att.quotient.carrier.dims == (0, 0, 1, 1)
    assert att.quotient_is_free()
    rep = verify_free_cofibre_sequence(att, 4)
    assert rep.ok and rep.bound == 3


def test_attachment_along_zero_is_a_coproduct():
    T = TensorMonad(exterior())
    y = ChainComplex.disk("Q", 2)
    zero = ChainComplex.zero("Q")
    V = free_algebra(T, q(1))
    att = FreeCellAttachment(T, ChainMap.zero(zero, y), ChainMap.zero(zero, V.carrier), V)
    fy = T.obj(y)
    n = max(len(V.carrier.dims), len(fy.dims))
    assert att.pushout.carrier.dims == tuple(V.carrier.dim(k) + fy.dim(k) for k in range(n))
    assert att.quotient.carrier.dims == fy.dims
    assert verify_free_cofibre_sequence(att, 3).ok


def test_acyclic_base_makes_the_quotient_equivalent_to_the_pushout():
    T = TensorMonad(dual_numbers())
    x = q(0)
    y = ChainComplex.disk("Q", 1)
    cell = ChainMap(x, y, [Matrix.identity(1)])
    V = free_algebra(T, ChainComplex.disk("Q", 1))
    attaching = ChainMap(x, V.carrier, [Matrix.zero(V.carrier.dim(0), 1)])
    att = FreeCellAttachment(T, cell, attaching, V)
    assert ch.is_quasi_iso(att.projection)
    assert verify_free_cofibre_sequence(att, 3).ok


def test_attachment_needs_a_cofibration():
    T = TensorMonad(exterior())
    x = q(0)
    with pytest.raises(ValueError):
        FreeCellAttachment(T, ChainMap.zero(x, x), ChainMap.zero(x, T.obj(x)), free_algebra(T, x))


@pytest.mark.parametrize("name", ["identity:Q", "tensor:eps", "tensor:Lambda", "tensor:Q"])
def test_linear_monads_are_right_exact_and_excellent(name):
    T = make_monad(name)
    assert check_homotopically_right_exact(T).ok
    assert check_excellent_partial(T).ok


def test_augmented_monad_fails_the_null_object_clause():
    rep = check_homotopically_right_exact(AugmentedMonad(CHAIN_Q))
    assert not rep.clauses["null object"]
    assert rep.first_failure == ("null object", "0")


def test_tensoralg_unit_is_a_cofibration():
    rep = check_excellent_partial(make_monad("tensoralg"))
    assert rep.clauses["unit cofibration"]
