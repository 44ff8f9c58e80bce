import pytest
from hypothesis import given, settings, strategies as st

from oracles import betti as betti_oracle
from strongmonads import chain as ch
from strongmonads.chain import ChainComplex, ChainMap
from strongmonads.linalg import Matrix

seeds = st.integers(0, 10**6)
grounds = st.sampled_from(["Q", "Z"])


def rows(c):
    return [c.diff(n).to_rows() for n in range(1, c.top + 1)]


def sphere(ground, n):
    return ChainComplex.point(ground, n, 1)


def test_disk_is_acyclic_and_sphere_is_not():
    assert ch.betti(ChainComplex.disk("Q", 3)) == [0, 0, 0, 0, 0]
    assert ch.betti(sphere("Q", 2), 3) == [0, 0, 1, 0]


def test_integer_homology_sees_torsion():
    # Z --2--> Z
    c = ChainComplex("Z", [1, 1], [Matrix.from_rows([[2]])])
    assert ch.homology_canonical(c, 0) == (0, (2,))
    assert ch.homology_canonical(c, 1) == (0, ())
    assert ch.betti(c.to_ground("Q"), 1) == [0, 0]


def test_differential_must_square_to_zero():
    one = Matrix.identity(1)
    with pytest.raises(ValueError):
        ChainComplex("Q", [1, 1, 1], [one, one])


@given(seeds, grounds)
@settings(max_examples=40, deadline=None)
def test_rational_betti_numbers_match_rank_count(seed, ground):
    c = ch.random_complex(ch.seeded_rng(seed, "betti"), ground)
    q = c.to_ground("Q")
    assert ch.betti(q, c.top) == betti_oracle(list(c.dims), rows(c))
    assert sum((-1) ** n * b for n, b in enumerate(ch.betti(q, c.top))) == ch.euler_characteristic(c)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_kunneth_over_the_rationals(seed):
    rng = ch.seeded_rng(seed, "kunneth")
    x = ch.random_complex(rng, "Q", max_top=2)
    y = ch.random_complex(rng, "Q", max_top=2)
    bx, by = ch.betti(x, x.top), ch.betti(y, y.top)
    expected = [sum(bx[p] * by[n - p] for p in range(n + 1) if p < len(bx) and n - p < len(by)) for n in range(x.top + y.top + 1)]
    xy = ch.tensor(x, y)
    assert ch.betti(xy, x.top + y.top) == expected


@given(seeds, grounds)
@settings(max_examples=30, deadline=None)
def test_cone_detects_quasi_isomorphisms(seed, ground):
    rng = ch.seeded_rng(seed, "cone")
    x = ch.random_complex(rng, ground)
    f = ch.random_quasi_iso(rng, x)
    assert ch.is_quasi_iso(f)
    cone, seq = ch.mapping_cone(f)
    assert (seq.q @ seq.i).is_zero()
    if ground == "Q":
        assert ch.is_acyclic(cone)


@given(seeds)
@settings(max_examples=30, deadline=None)
def test_suspension_shifts_homology(seed):
    x = ch.random_complex(ch.seeded_rng(seed, "shift"), "Q")
    assert ch.betti(ch.suspension(x), x.top + 1) == [0] + ch.betti(x, x.top)


@given(seeds, grounds)
@settings(max_examples=30, deadline=None)
def test_random_cofibrations_have_free_cokernel(seed, ground):
    rng = ch.seeded_rng(seed, "cof")
    x = ch.random_complex(rng, ground, max_top=2)
    i = ch.random_cofibration(rng, x, max_top=2)
    assert ch.is_cofibration(i)
    seq = ch.cofibre_sequence(i)
    assert (seq.q @ i).is_zero()


def test_zero_differential_map_is_not_a_cofibration():
    z = ChainComplex("Z", [1])
    two = ChainMap(z, z, [Matrix.from_rows([[2]])])
    assert not ch.is_cofibration(two)
    assert ch.is_cofibration(ChainMap(z.to_ground("Q"), z.to_ground("Q"), [Matrix.from_rows([[2]])]))


def test_pushout_of_disk_along_its_boundary():
    s0 = sphere("Q", 0)
    d1 = ChainComplex.disk("Q", 1)
    i = ChainMap(s0, d1, [Matrix.identity(1)])
    p, a, b = ch.pushout(i, i)
    # two cones on S^0 glued along S^0: a circle
    assert ch.betti(p, 1) == [0, 1]
    assert (a @ i).equals(b @ i)


def test_pushout_comparison_rejects_non_commuting_maps():
    s = sphere("Q", 0)
    ident = ChainMap.identity(s)
    with pytest.raises(ValueError):
        ch.pushout_comparison(ident, ident, ident, ChainMap.zero(s, s))


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_pushout_product_of_cofibration_and_weak_equivalence(seed):
    rng = ch.seeded_rng(seed, "pp")
    x = ch.random_complex(rng, "Q", max_top=2, max_dim=2)
    f = ch.random_cofibration(rng, x, max_top=1, max_dim=2)
    v = ch.random_complex(rng, "Q", max_top=1, max_dim=2)
    g = ch.random_quasi_iso(rng, v, max_top=1, max_dim=2)
    assert ch.pushout_product_comparison(f, g)


@given(seeds)
@settings(max_examples=20, deadline=None)
def test_gluing_lemma(seed):
    rng = ch.seeded_rng(seed, "glue")
    a = ch.random_complex(rng, "Q", max_top=2, max_dim=2)
    f = ch.random_cofibration(rng, a, max_top=2, max_dim=2)
    c = ch.random_complex(rng, "Q", max_top=2, max_dim=2)
    g = ch.random_chain_map(rng, a, c)
    ident = [ChainMap.identity(a), ChainMap.identity(f.target), ChainMap.identity(c)]
    assert ch.gluing_check((f, g), (f, g), ident)


def test_excisive_suite_covers_fifty_instances_each():
    runs = ch.excisive_suite(count=50)
    assert [r.name for r in runs] == ["suspension", "saturation", "condition (a)", "condition (b)", "parallel cofibre"]
    for r in runs:
        assert r.checked == 50
        assert r.ok, r.failures
        # both outcomes of the hypothesis must be exercised
        assert 10 <= r.exercised <= 45


def test_saturation_ladder_must_commute():
    s = sphere("Q", 0)
    seq = ch.cofibre_sequence(ChainMap.identity(s))
    zero = ChainMap.zero(s, s)
    ladder = ch.Ladder(seq, seq, ChainMap.identity(s), zero, ChainMap.identity(seq.q.target))
    with pytest.raises(ValueError):
        ch.saturation_check(ladder)


@given(seeds, grounds)
@settings(max_examples=20, deadline=None)
def test_json_round_trip(seed, ground):
    c = ch.random_complex(ch.seeded_rng(seed, "json"), ground)
    assert ChainComplex.from_json(c.to_json()) == c
