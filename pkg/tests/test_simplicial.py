import json
from math import comb

import pytest
from hypothesis import given, settings, strategies as st

from oracles import frac_rank, monotone_surjections
from strongmonads import chain as ch
from strongmonads.chain import ChainComplex, ChainMap
from strongmonads.linalg import Matrix, vstack
from strongmonads.simplicial import (
    SimplicialChainComplex,
    SimplicialMap,
    check_split_augmented,
    coend_realization,
    codegeneracy,
    coface,
    compose,
    constant_augmentation,
    contraction_homology,
    epi_mono,
    fat_comparison_iso_through,
    fat_realize,
    identity_failures,
    is_reedy_cofibrant,
    is_tau_cofibrant,
    is_tau_cofibration,
    latching,
    levelwise_cokernel,
    monotone_maps,
    realize,
    realize_map,
    simplex_tensor,
    surjections,
    tau,
)


def point(ground="Q"):
    return ChainComplex.point(ground, 0, 1)


def ranks(c, up_to):
    """Betti numbers; over the integers the homology must also be torsion free."""
    out = []
    for h in ch.betti(c, up_to):
        if isinstance(h, tuple):
            assert h[1] == ()
            h = h[0]
        out.append(h)
    return out


@st.composite
def monotone_pairs(draw, top=4):
    """Composable ``alpha: [m] -> [n]`` and ``beta: [n] -> [k]``."""
    m, n, k = (draw(st.integers(0, top)) for _ in range(3))
    alpha = tuple(sorted(draw(st.lists(st.integers(0, n), min_size=m + 1, max_size=m + 1))))
    beta = tuple(sorted(draw(st.lists(st.integers(0, k), min_size=n + 1, max_size=n + 1))))
    return alpha, beta, n


@pytest.mark.parametrize("m,n", [(0, 0), (1, 2), (2, 2), (3, 1), (2, 4)])
def test_monotone_map_count(m, n):
    assert len(monotone_maps(m, n)) == comb(m + n + 1, m + 1)


@pytest.mark.parametrize("n", range(5))
def test_tau_of_constant_has_two_to_the_n_summands(n):
    assert len(surjections(n)) == 2 ** n == len(monotone_surjections(n))
    X = SimplicialChainComplex.constant(point(), 4)
    assert len(tau(X).summands[n]) == 2 ** n


@given(monotone_pairs())
def test_epi_mono_factorization(data):
    alpha, _, _ = data
    sigma, iota = epi_mono(alpha)
    assert compose(iota, sigma) == alpha
    assert set(sigma) == set(range(max(sigma) + 1))
    assert len(set(iota)) == len(iota)


@pytest.mark.parametrize("n", range(1, 5))
def test_cosimplicial_identities(n):
    for j in range(n + 1):
        for i in range(j):
            assert compose(coface(j, n), coface(i, n - 1)) == compose(coface(i, n), coface(j - 1, n - 1))
        assert compose(codegeneracy(j, n - 1), coface(j, n)) == tuple(range(n))


@given(monotone_pairs(top=3))
@settings(max_examples=40, deadline=None)
def test_operators_are_contravariantly_functorial(data):
    alpha, beta, n = data
    X, _ = simplex_tensor(ChainComplex.disk("Q", 1), 1, 3)
    k = max(max(beta), 0)
    if k > X.N or n > X.N:
        return
    lhs = X.op(compose(beta, alpha), k)
    rhs = X.op(alpha, n) @ X.op(beta, k)
    assert lhs.equals(rhs)


def test_perturbed_face_is_reported():
    X, _ = simplex_tensor(point(), 1, 2)
    faces = [list(f) for f in X.faces]
    f = faces[2][0]
    faces[2][0] = ChainMap(f.source, f.target, [f.comp(0) + Matrix.from_entries(f.target.dim(0), f.source.dim(0), {(0, 0): 1})])
    bad = SimplicialChainComplex(X.levels, faces, X.degens)
    assert identity_failures(bad)
    assert not identity_failures(X)


@pytest.mark.parametrize("ground", ["Q", "Z"])
def test_realizations_of_standard_objects(ground):
    const = SimplicialChainComplex.constant(ChainComplex.disk(ground, 2), 3)
    assert ranks(realize(const), 2) == [0, 0, 0]
    simplex, _ = simplex_tensor(point(ground), 2, 4)
    assert ranks(realize(simplex), 3) == [1, 0, 0, 0]
    circle, aug = simplex_tensor(point(ground), 2, 4, boundary=True)
    assert aug is None
    assert ranks(realize(circle), 3) == [1, 1, 0, 0]


def test_empty_object_realizes_to_zero():
    X = SimplicialChainComplex.constant(ChainComplex.zero("Q"), 3)
    assert realize(X).is_zero()


@pytest.mark.parametrize("N", [1, 2, 3])
@pytest.mark.parametrize("k", [1, 2])
def test_coend_matches_moore_totalization(N, k):
    for boundary in (False, True):
        X, _ = simplex_tensor(ChainComplex.disk("Q", 1), k, N, boundary=boundary)
        coend, comparison = coend_realization(X)
        assert comparison.is_iso()
        assert coend.dims == realize(X).dims


def test_coend_matches_for_the_tau_resolution():
    X, _ = simplex_tensor(point(), 1, 3)
    T = tau(X).obj
    _, comparison = coend_realization(T)
    assert comparison.is_iso()


def normalized_dim(X, n, q):
    """``dim ∩_(i>=1) ker d_i`` in chain degree ``q``, by rank counting."""
    if n == 0:
        return X.levels[0].dim(q)
    stacked = vstack([X.d(n, i).comp(q) for i in range(1, n + 1)], X.levels[n].dim(q))
    if stacked.nrows == 0 or stacked.ncols == 0:
        return X.levels[n].dim(q)
    return X.levels[n].dim(q) - frac_rank(stacked.to_rows())


@pytest.mark.parametrize("ground", ["Q", "Z"])
def test_latching_image_is_complement_of_normalized_part(ground):
    X, _ = simplex_tensor(ChainComplex.disk(ground, 1), 2, 3)
    for n in range(1, 4):
        L = latching(X, n)
        assert L.is_cofibration
        for q in range(2):
            assert L.image.dim(q) == X.levels[n].dim(q) - normalized_dim(X, n, q)
        assert all(ch.is_cofibration(c) for c in [L.inclusion])
    assert is_reedy_cofibrant(X)


@pytest.mark.parametrize("k", [0, 1, 2])
def test_split_augmented_simplices_contract(k):
    X, aug = simplex_tensor(ChainComplex.disk("Q", 1), k, 4)
    assert check_split_augmented(aug)
    report = contraction_homology(aug)
    assert report["identities"] == []
    assert report["realization"] and report["fat_realization"]
    assert report["exact_through"] == 3


def test_constant_augmentation_contracts():
    c = ChainComplex.point("Z", 1, 2)
    X = SimplicialChainComplex.constant(c, 3)
    aug = constant_augmentation(X, c)
    assert aug.check()
    assert contraction_homology(aug)["realization"]


def test_broken_extra_degeneracy_is_caught():
    X, aug = simplex_tensor(point(), 1, 3)
    aug.extra[2] = aug.extra[2].scaled(2)
    assert any(kind.startswith("extra") for kind, *_ in aug.failures())


@pytest.mark.parametrize("ground", ["Q", "Z"])
def test_fat_realization_compares_through_n_minus_one(ground):
    X, _ = simplex_tensor(point(ground), 2, 4, boundary=True)
    fat = fat_realize(X)
    assert ch.induces_iso_through(fat.comparison, 3)
    assert fat_comparison_iso_through(X, 3)
    assert is_tau_cofibrant(X)
    with pytest.raises(ValueError):
        is_tau_cofibrant(X, 4)


def test_boundary_inclusion_is_a_tau_cofibration_with_quotient():
    full, _ = simplex_tensor(point(), 2, 3)
    bd, _ = simplex_tensor(point(), 2, 3, boundary=True)
    comps = []
    for n in range(4):
        src = monotone_maps(n, 2)
        sub = [a for a in src if len(set(a)) < 3]
        entries = {(src.index(a), j): 1 for j, a in enumerate(sub)}
        comps.append(ChainMap(bd.levels[n], full.levels[n], [Matrix.from_entries(len(src), len(sub), entries)]))
    f = SimplicialMap(bd, full, comps)
    assert f.check()
    assert is_tau_cofibration(f)
    Q, q = levelwise_cokernel(f)
    # Δ[2]/∂Δ[2] is a 2-sphere
    assert ch.betti(realize(Q), 2) == [0, 0, 1]
    assert ch.is_quasi_iso(realize_map(q), 1) is False


@pytest.mark.parametrize("ground", ["Q", "Z"])
def test_json_round_trip_keeps_the_augmentation(ground):
    X, aug = simplex_tensor(ChainComplex.disk(ground, 1), 1, 2)
    data = X.to_json()
    data["augmentation"] = aug.to_json()
    Y, aug2 = SimplicialChainComplex.from_json(json.loads(json.dumps(data)))
    assert [l.dims for l in Y.levels] == [l.dims for l in X.levels]
    assert aug2.check()
    assert realize(Y).dims == realize(X).dims


def test_malformed_json_is_rejected():
    with pytest.raises(ValueError):
        SimplicialChainComplex.from_json({"N": 2, "levels": []})
    with pytest.raises(ValueError):
        SimplicialChainComplex.from_json([1, 2])
