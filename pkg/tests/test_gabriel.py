import pytest

from oracles import hom_count, matmul
from strongmonads.algebras import TAlgebra, lambda_star
from strongmonads.gabriel import (
    ProjectiveSummand,
    RingPresentation,
    comparison_algebra,
    counit_map,
    endo_ring,
    endo_row_modules,
    gabriel_roundtrip,
    hom_tensor_monad,
    hom_tensor_preset,
    module_battery,
    morita_check,
    orientation_oracle,
    ring_m2z,
    ring_z,
    ring_zxz,
    summand_presets,
)
from strongmonads.linalg import FPAbGroup, fp_direct_sum
from strongmonads.monad import FPAB, check_monad_laws, is_linear, monoid_of_unit, unit_monoid_data

PRESETS = sorted(summand_presets())


def unit_matrices():
    return [[[int((r, c) == (i, j)) for c in range(2)] for r in range(2)] for i in range(2) for j in range(2)]


def flatten(m):
    return [m[0][0], m[0][1], m[1][0], m[1][1]]


def test_m2z_table_matches_matrix_multiplication():
    ring = ring_m2z()
    basis = unit_matrices()
    for a in range(4):
        for b in range(4):
            assert ring.table[a][b] == flatten(matmul(basis[a], basis[b]))
    assert ring.check()


@pytest.mark.parametrize("name", ["Z", "ZxZ", "M2Z", "C2"])
def test_ring_presets_are_rings_with_modules(name):
    ring = {s.ring.name: s.ring for s in summand_presets().values()}[name]
    assert ring.check()
    for m in module_battery(ring):
        assert m.check(), m.name


def test_bad_ring_tables_are_rejected():
    with pytest.raises(ValueError):
        RingPresentation.from_json({"table": [[[2]]], "unit": [1]})
    with pytest.raises(ValueError):
        RingPresentation.from_json({"table": [[[1]]]})
    ring = RingPresentation.from_json({"name": "Z", "table": [[[1]]], "unit": [1]})
    assert ring.table == ring_z().table


def test_idempotent_is_required():
    with pytest.raises(ValueError):
        ProjectiveSummand(ring_z(), [[[2]]])


def test_z_module_battery_has_nine_members():
    assert [m.name for m in module_battery(ring_z())] == [
        "0", "Z", "Z^2", "Z/2", "Z/4", "Z/6", "Z/2+Z", "Z/2+Z/4", "Z/3+Z",
    ]


@pytest.mark.parametrize("name", PRESETS)
def test_hom_tensor_monads_are_lawful_and_linear(name):
    T = hom_tensor_preset(name)
    assert check_monad_laws(T).ok
    assert is_linear(T)


def test_hom_tensor_on_z4_with_rank_two_summand():
    T = hom_tensor_preset("Z:Z2")
    tz4 = T.obj(FPAbGroup.cyclic(4))
    assert tz4.canonical == (0, (4, 4, 4, 4))
    assert tz4.order() == hom_count((0, 0), (4, 4))


@pytest.mark.parametrize("name", ["Z:Z", "ZxZ:first", "M2Z:e11"])
def test_rank_one_endomorphisms_give_an_identity_like_monad(name):
    T = hom_tensor_preset(name)
    for m in [FPAbGroup.cyclic(4), FPAbGroup.free(2), fp_direct_sum([FPAbGroup.cyclic(2), FPAbGroup.free(1)])]:
        assert T.obj(m).canonical == m.canonical


def test_strength_on_torsion_group():
    T = hom_tensor_preset("Z:Z2")
    z2 = FPAbGroup.cyclic(2)
    s = T.sigma(z2, FPAB.unit())
    assert s.source.canonical == s.target.canonical == (0, (2, 2, 2, 2))
    assert s.is_iso()
    s2 = T.sigma(FPAbGroup.free(2), FPAB.unit())
    assert s2.is_iso() and s2.target.canonical == (8, ())


def test_endomorphisms_of_z_squared_are_2x2_matrices():
    P = summand_presets()["Z:Z2"]
    endo = endo_ring(P)
    mats = [e.matrix.to_rows() for e in endo.morphisms]
    assert sorted(map(flatten, mats)) == sorted(map(flatten, unit_matrices()))
    # structure constants agree with brute-force composition
    for a in range(4):
        for b in range(4):
            prod = matmul(mats[a], mats[b])
            coords = endo.ring.table[a][b]
            combo = [sum(c * flatten(mats[k])[t] for k, c in enumerate(coords)) for t in range(4)]
            assert combo == flatten(prod)
    assert endo.ring.table == ring_m2z().table


@pytest.mark.parametrize("name", ["Z:Z", "ZxZ:first", "ZxZ:S"])
def test_small_endomorphism_rings(name):
    endo = endo_ring(summand_presets()[name])
    expected = {"Z:Z": 1, "ZxZ:first": 1, "ZxZ:S": 2}[name]
    assert endo.ring.rank == expected
    assert endo.ring.check()


@pytest.mark.parametrize("name", PRESETS)
def test_unit_monoid_is_the_endomorphism_ring(name):
    P = summand_presets()[name]
    T = hom_tensor_monad(P.ring, P)
    assert orientation_oracle(P) == "composition"
    monoid = monoid_of_unit(T)
    endo = endo_ring(P)
    r = endo.ring.rank
    table = monoid.mult.matrix
    for a in range(r):
        for b in range(r):
            assert list(table.column(a * r + b)) == endo.ring.table[a][b]


def test_gabriel_round_trip_on_z_squared():
    rep = gabriel_roundtrip(summand_presets()["Z:Z2"], preset="Z:Z2")
    assert len(rep.results) == 9 and rep.ok
    z2 = next(r for r in rep.results if r.module == "Z/2")
    assert z2.hom_size == (0, (2, 2))


def test_non_generator_is_witnessed_by_the_second_factor():
    rep = gabriel_roundtrip(summand_presets()["ZxZ:first"])
    assert not rep.ok
    assert rep.witness.module == "second"
    assert rep.witness.hom_size == (0, ())


@pytest.mark.parametrize("name", ["Z:Z", "ZxZ:S", "M2Z:e11", "C2:S"])
def test_generators_round_trip(name):
    assert gabriel_roundtrip(summand_presets()[name]).ok


def test_evaluation_is_an_isomorphism_for_z_mod_6():
    P = summand_presets()["Z:Z2"]
    z6 = module_battery(ring_z())[5]
    ev, phi = counit_map(P, z6)
    assert ev.is_iso()
    assert phi.carrier.canonical == (0, (6, 6))


def test_morita_correspondence_for_z_squared():
    P = summand_presets()["Z:Z2"]
    modules = endo_row_modules(endo_ring(P), [[0], [2], [3], [0, 2]])
    forward, backward = morita_check(P, modules)
    assert forward.ok
    assert [ok for _, ok in backward] == [True] * 4


def test_comparison_algebra_is_an_algebra_with_composition_action():
    P = summand_presets()["Z:Z2"]
    T = hom_tensor_monad(P.ring, P)
    for m in module_battery(ring_z())[:6]:
        alg = comparison_algebra(T, m)
        assert isinstance(alg, TAlgebra) and alg.check(), m.name
        mod = lambda_star(alg)
        assert mod.check()
