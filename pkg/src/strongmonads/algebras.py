"""Algebras over strong monads, modules over ``T(I)``, and bar resolutions.

Coequalizers are exact cokernels.  Structure maps on a quotient ``q: C -> Q``
of an algebra are induced as ``q ∘ ξ ∘ T(s)`` for a linear section ``s`` of
``q``; the algebra laws are then re-checked on the result rather than assumed.

Statements about cofibrant T-algebras take the underlying carrier to be
cofibrant.  The transferred model structure on T-algebras is assumed, not
constructed, and every homotopical report carries that flag.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import chain as ch
from .chain import ChainComplex, ChainMap
from .linalg import FPAbGroup, FPMorphism, Matrix, solve
from .monad import (
    SCOPE,
    SEED,
    ChainContext,
    IdentityMonad,
    MonoidObject,
    StrongMonad,
    TensorMonad,
    UnsupportedError,
    linear_approximation,
    monoid_of_unit,
    unit_monoid_data,
)
from .simplicial import (
    SimplicialChainComplex,
    SimplicialMap,
    SplitAugmentation,
    is_reedy_cofibrant,
    is_tau_cofibrant,
    realize,
    realize_map,
)

ASSUMED = "transferred model structure on T-algebras assumed"


# Algebras


@dataclass
class TAlgebra:
    monad: StrongMonad
    carrier: object
    structure: object
    name: str = "A"

    def failures(self):
        T, x, xi = self.monad, self.carrier, self.structure
        eq = T.ctx.equal
        out = []
        if not eq(xi @ T.eta(x), T.ctx.identity(x)):
            out.append("unit")
        if not eq(xi @ T.mu(x), xi @ T.fmap(xi)):
            out.append("associativity")
        return out

    def check(self):
        return not self.failures()


def free_algebra(T, x, name=None):
    return TAlgebra(T, T.obj(x), T.mu(x), name or "free")


def check_algebra(alg):
    return alg.check()


def is_algebra_map(h, a, b):
    """``h: a.carrier -> b.carrier`` commutes with the structure maps."""
    T = a.monad
    return T.ctx.equal(h @ a.structure, b.structure @ T.fmap(h))


def _section(q, ground):
    """A degreewise linear section of a surjective chain map (not a chain map)."""
    comps = [solve(q.comp(n), Matrix.identity(q.target.dim(n)), ground) for n in range(len(q.target.dims))]
    return ChainMap(q.target, q.source, comps, check=False)


def quotient(ctx, f):
    """Cokernel ``q: Y -> Y / im f`` with a section of ``q`` on underlying objects."""
    if isinstance(f, FPMorphism):
        group = f.cokernel()
        q = FPMorphism(f.target, group, Matrix.identity(f.target.ngens), check=False)
        s = FPMorphism(group, f.target, Matrix.identity(f.target.ngens), check=False)
        return group, q, s
    Q, q = ch.cokernel(f)
    return Q, q, _section(q, f.ground)


def induced_algebra(alg, q, s, name="quotient"):
    """Structure on ``q.target`` making ``q`` an algebra map; ``ValueError`` if not well defined."""
    T = alg.monad
    xi = q @ alg.structure @ T.fmap(s)
    if isinstance(xi, ChainMap):
        xi = ChainMap(xi.source, xi.target, xi.components)
    res = TAlgebra(T, q.target, xi, name)
    if not is_algebra_map(q, alg, res):
        raise ValueError("quotient is not compatible with the algebra structure")
    return res


def e_tensor(z, alg):
    """``Z ⊗_E (X, ξ)``: the coequalizer of ``μ ∘ T(σ)`` and ``T(Z ⊗ ξ)`` out of ``T(Z ⊗ T X)``."""
    T = alg.monad
    c = T.ctx
    x = alg.carrier
    zx = c.tensor(z, x)
    first = T.mu(zx) @ T.fmap(T.sigma(z, x))
    second = T.fmap(c.tensor_map(c.identity(z), alg.structure))
    common = T.fmap(c.tensor_map(c.identity(z), T.eta(x)))
    target_id = c.identity(T.obj(zx))
    if not (c.equal(first @ common, target_id) and c.equal(second @ common, target_id)):
        raise ValueError("the pair has no common section")
    _, q, s = quotient(c, first - second)
    return induced_algebra(free_algebra(T, zx), q, s, "e-tensor")


# Modules over the monoid T(I)


@dataclass
class ModuleOverMonoid:
    monoid: MonoidObject
    carrier: object
    action: object
    free_on: object = None

    def failures(self):
        c, M, x, rho = self.monoid.ctx, self.monoid.carrier, self.carrier, self.action
        out = []
        lhs = rho @ c.tensor_map(rho, c.identity(M))
        rhs = rho @ c.tensor_map(c.identity(x), self.monoid.mult) @ c.associator(x, M, M)
        if not c.equal(lhs, rhs):
            out.append("associativity")
        unit = rho @ c.tensor_map(c.identity(x), self.monoid.unit) @ c.right_unit_inv(x)
        if not c.equal(unit, c.identity(x)):
            out.append("unit")
        return out

    def check(self):
        return not self.failures()


def free_module(monoid, x):
    """``X ⊗ M`` with action ``(X ⊗ m) ∘ a``."""
    c, M = monoid.ctx, monoid.carrier
    rho = c.tensor_map(c.identity(x), monoid.mult) @ c.associator(x, M, M)
    return ModuleOverMonoid(monoid, c.tensor(x, M), rho, free_on=x)


def lambda_star(alg, monoid=None):
    """``(X, ξ ∘ λ_X)`` as a module over ``T(I)``."""
    T = alg.monad
    monoid = monoid or monoid_of_unit(T)
    return ModuleOverMonoid(monoid, alg.carrier, alg.structure @ linear_approximation(T, alg.carrier))


def lambda_shriek(T, module, coequalizer=False):
    """The left adjoint of ``λ*``.

    Free modules go to free algebras.  Otherwise (or with ``coequalizer``)
    it is the coequalizer of ``T(ρ)`` and ``μ ∘ T(λ_X)`` out of ``T(X ⊗ T(I))``.
    """
    if module.free_on is not None and not coequalizer:
        return free_algebra(T, module.free_on, "free")
    x = module.carrier
    first = T.fmap(module.action)
    second = T.mu(x) @ T.fmap(linear_approximation(T, x))
    _, q, s = quotient(T.ctx, first - second)
    return induced_algebra(free_algebra(T, x), q, s, "lambda_!")


def adjunction_unit(T, module):
    """The unit ``M -> λ* λ_! M``; at ``M = X ⊗ T(I)`` it is ``μ_X ∘ λ_(TX) ∘ (η_X ⊗ T(I))``."""
    c = T.ctx
    if module.free_on is not None:
        x = module.free_on
        TI = T.obj(c.unit())
        return T.mu(x) @ linear_approximation(T, T.obj(x)) @ c.tensor_map(T.eta(x), c.identity(TI))
    x = module.carrier
    first = T.fmap(module.action)
    second = T.mu(x) @ T.fmap(linear_approximation(T, x))
    _, q, _ = quotient(c, first - second)
    return q @ T.eta(x)


@dataclass
class UnitReport:
    monad: str
    object: str
    equals_strength: bool
    iso: bool
    weq: bool
    bound: object
    scope: str = SCOPE

    def as_dict(self):
        return dict(self.__dict__)


def adjunction_unit_check(T, x, label="X", up_to=None):
    """At the free module on ``x``: unit equals ``σ_(X,I)`` exactly; report iso and weq."""
    c = T.ctx
    monoid = unit_monoid_data(T)
    module = free_module(monoid, x)
    unit = adjunction_unit(T, module)
    sigma = T.sigma(x, c.unit())
    lam = T.fmap(c.right_unit(x)) @ sigma
    literal = _same_matrices(unit, sigma)
    return UnitReport(T.name, label, c.equal(unit, lam) and literal, c.is_iso(unit), c.is_weq(unit, up_to), up_to)


def _same_matrices(f, g):
    if isinstance(f, FPMorphism):
        return f.matrix == g.matrix
    return f.components == g.components


# The bar resolution


@dataclass
class BarResolution:
    algebra: TAlgebra
    N: int
    carriers: list
    simplicial: SimplicialChainComplex
    augmentation: SplitAugmentation
    structures: list = field(default_factory=list)

    def failures(self):
        """Algebra-map failures of faces and degeneracies, as ``(kind, n, i)``."""
        out = []
        T = self.algebra.monad
        algs = [TAlgebra(T, c, s) for c, s in zip(self.carriers, self.structures)]
        X = self.simplicial
        for n in range(1, X.N + 1):
            for i in range(n + 1):
                if not is_algebra_map(X.d(n, i), algs[n], algs[n - 1]):
                    out.append(("face", n, i))
        for n in range(X.N):
            for j in range(n + 1):
                if not is_algebra_map(X.s(n, j), algs[n], algs[n + 1]):
                    out.append(("degeneracy", n, j))
        return out


def _iterate(T, f, k):
    for _ in range(k):
        f = T.fmap(f)
    return f


def bar_resolution(alg, N=4):
    """``B_n = T^(n+1)(A)``, ``∂_i = T^(n-i)(ε_i)``, ``s_j = T^(n-j+1)(η_(T^j A))``.

    ``ε_0 = ξ`` and ``ε_i = μ_(T^(i-1) A)`` for ``i >= 1``.  The extra
    degeneracies are ``η_(T^(n+1) A)``.
    """
    T = alg.monad
    if not isinstance(T.ctx, ChainContext):
        raise UnsupportedError("bar resolutions are realized in chain contexts only")
    powers = [alg.carrier]
    for _ in range(N + 2):
        powers.append(T.obj(powers[-1]))
    counits = [alg.structure] + [T.mu(powers[i - 1]) for i in range(1, N + 1)]
    levels = powers[1 : N + 2]
    faces = [[]]
    for n in range(1, N + 1):
        faces.append([_iterate(T, counits[i], n - i) for i in range(n + 1)])
    degens = []
    for n in range(N):
        degens.append([_iterate(T, T.eta(powers[j]), n - j + 1) for j in range(n + 1)])
    X = SimplicialChainComplex(levels, faces, degens, alg.carrier.ground)
    extra = [T.eta(powers[n + 1]) for n in range(-1, N)]
    aug = SplitAugmentation(X, alg.carrier, alg.structure, extra)
    structures = [T.mu(powers[n]) for n in range(N + 1)]
    return BarResolution(alg, N, levels, X, aug, structures)


def bar_map(h, bar_a, bar_b):
    """Levelwise ``T^(n+1)(h)`` for an algebra map ``h``."""
    T = bar_a.algebra.monad
    comps = [_iterate(T, h, n + 1) for n in range(bar_a.N + 1)]
    return SimplicialMap(bar_a.simplicial, bar_b.simplicial, comps)


@dataclass
class BarReport:
    instance: str
    bound: int
    identities: list
    augmentation: list
    algebra_maps: list
    resolution: bool
    reedy: bool
    tau: bool
    homology: list
    assumed: str = ASSUMED

    @property
    def ok(self):
        return not (self.identities or self.augmentation or self.algebra_maps) and self.resolution and self.reedy and self.tau

    def as_dict(self):
        d = dict(self.__dict__)
        d["pass"] = self.ok
        return d


def bar_is_resolution(alg, N=4, name="bar"):
    """(a) ``|B(A)| -> A`` is a quasi-isomorphism through ``N - 1``; (b) Reedy; (c) τ-cofibrant."""
    from .simplicial import identity_failures

    bar = bar_resolution(alg, N)
    aug = bar.augmentation
    k = N - 1
    real = realize(bar.simplicial)
    hom = [ch.homology_canonical(real, n) if real.ground == "Z" else ch.homology(real, n) for n in range(k + 1)]
    return BarReport(
        name,
        k,
        identity_failures(bar.simplicial),
        aug.failures(),
        bar.failures(),
        ch.induces_iso_through(aug.realized_augmentation(), k),
        is_reedy_cofibrant(bar.simplicial),
        is_tau_cofibrant(bar.simplicial, k),
        hom,
    )


# Free cell attachments


def _sum_algebra(T, algs):
    """Direct sum of algebras over an additive (tensor) monad."""
    total, inj, proj = ch.direct_sum([a.carrier for a in algs])
    xi = None
    for a, i, p in zip(algs, inj, proj):
        term = i @ a.structure @ T.fmap(p)
        xi = term if xi is None else xi + term
    return TAlgebra(T, total, ChainMap(xi.source, xi.target, xi.components), "sum"), inj


@dataclass
class FreeCellAttachment:
    """Pushout of ``F_T(X) -> V`` along ``F_T(X) -> F_T(Y)`` for a cofibration ``X -> Y``."""

    monad: StrongMonad
    cell: ChainMap
    attaching: ChainMap
    base: TAlgebra
    pushout: TAlgebra = None
    inclusion: ChainMap = None
    free_top: ChainMap = None
    quotient: TAlgebra = None
    projection: ChainMap = None

    def __post_init__(self):
        T = self.monad
        if not isinstance(T, (TensorMonad, IdentityMonad)):
            raise UnsupportedError("free cell attachments are computed for additive monads")
        if not ch.is_cofibration(self.cell):
            raise ValueError("the cell extension must be a cofibration")
        x, y = self.cell.source, self.cell.target
        ext = self.attaching  # X -> U(V)
        adj = self.base.structure @ T.fmap(ext)  # F_T(X) -> V
        fy = free_algebra(T, y)
        total, inj = _sum_algebra(T, [self.base, fy])
        glue = ch.map_into_sum(total.carrier, [adj, -T.fmap(self.cell)])
        _, q, s = quotient(T.ctx, glue)
        self.pushout = induced_algebra(total, q, s, "W")
        self.inclusion = q @ inj[0]
        self.free_top = q @ inj[1]
        _, q2, s2 = quotient(T.ctx, self.inclusion)
        self.quotient = induced_algebra(self.pushout, q2, s2, "W/V")
        self.projection = q2

    def quotient_is_free(self):
        """``W/V ≅ F_T(Y/X)`` via the map induced by ``F_T(Y) -> W -> W/V``."""
        T = self.monad
        yx, qyx = ch.cokernel(self.cell)
        fmap_q = T.fmap(qyx)
        sec = _section(fmap_q, yx.ground)
        comp = self.projection @ self.free_top @ sec
        comp = ChainMap(comp.source, comp.target, comp.components)
        return comp.is_iso()


def lambda_attachment():
    """``T = - ⊗ Λ(x)``, ``Q[1] -> D²``, ``V`` free on ``Q[1]`` with the identity attaching map."""
    from .monad import exterior

    T = TensorMonad(exterior())
    x = ChainComplex.point("Q", 1, 1)
    y = ChainComplex.disk("Q", 2)
    cell = ChainMap(x, y, [Matrix.zero(0, 0), Matrix.identity(1)])
    base = free_algebra(T, x, "V")
    return FreeCellAttachment(T, cell, T.eta(x), base)


@dataclass
class CofibreReport:
    bound: int
    inclusion_cofibration: bool
    pushout_square: tuple
    cone_comparison: bool
    quotient_free: bool
    bar_comparison: bool
    assumed: str = ASSUMED

    @property
    def ok(self):
        return (
            self.inclusion_cofibration
            and all(self.pushout_square)
            and self.cone_comparison
            and self.quotient_free
            and self.bar_comparison
        )

    def as_dict(self):
        d = dict(self.__dict__)
        d["pushout_square"] = list(self.pushout_square)
        d["pass"] = self.ok
        return d


def verify_free_cofibre_sequence(att, N=4):
    """(i) ``V -> W -> W/V`` is a homotopy cofibre sequence; (ii) ``B(W)/B(V) -> B(W/V)`` is a weq."""
    k = N - 1
    j, q = att.inclusion, att.projection
    V, W, Q = att.base.carrier, att.pushout.carrier, att.quotient.carrier
    zero = ChainComplex.zero(V.ground)
    cof = ch.is_cofibration(j)
    square = ch.homotopy_pushout_check(j, ChainMap.zero(V, zero), q, ChainMap.zero(zero, Q), k) if cof else (False, False)
    cv, i_v = ch.cone_on(V)
    _, comparison = ch.pushout_comparison(j, i_v, q, ChainMap.zero(cv, Q))
    cone_ok = ch.is_quasi_iso(comparison, k)
    bv, bw, bq = bar_resolution(att.base, N), bar_resolution(att.pushout, N), bar_resolution(att.quotient, N)
    bj = realize_map(bar_map(j, bv, bw))
    bqq = realize_map(bar_map(q, bw, bq))
    if ch.is_cofibration(bj):
        seq = ch.cofibre_sequence(bj)
        induced = bqq @ _section(seq.q, V.ground)
        induced = ChainMap(induced.source, induced.target, induced.components)
        bar_ok = ch.induces_iso_through(induced, k)
    else:
        bar_ok = False
    return CofibreReport(k, cof, square, cone_ok, att.quotient_is_free(), bar_ok)


# Homotopical conditions on the monad


def _quotient_comparison(T, i):
    """``T(Y)/T(X) -> T(Y/X)`` for a cofibration ``i: X -> Y``."""
    yx, q = ch.cokernel(i)
    ti = T.fmap(i)
    if not ch.is_cofibration(ti):
        return False, None
    Q, qq = ch.cokernel(ti)
    m = T.fmap(q) @ _section(qq, i.ground)
    return True, ChainMap(m.source, m.target, m.components)


@dataclass
class ClauseReport:
    monad: str
    clauses: dict
    first_failure: object = None
    scope: str = SCOPE
    assumed: str = ""

    @property
    def ok(self):
        return all(self.clauses.values())

    def as_dict(self):
        return dict(self.__dict__) | {"pass": self.ok}


def cell_extensions(ground="Q", seed=SEED, count=4):
    rng = ch.seeded_rng(seed, "cells", ground)
    out = []
    for k in range(count):
        x = ch.random_complex(rng, ground, max_top=2, max_dim=2)
        f = ch.random_cofibration(rng, x, max_top=2, max_dim=2)
        out.append((f"cell{k}", f))
    return out


def check_homotopically_right_exact(T, instances=None, up_to=3, seed=SEED):
    """(1) ``T(0) = 0``; (2) ``T`` keeps cofibrations and ``T(Y)/T(X) -> T(Y/X)`` is a weq; (3) free cells."""
    ground = T.ctx.ground
    instances = cell_extensions(ground, seed) if instances is None else instances
    clauses = {"null object": True, "cell extensions": True, "free cell attachments": True}
    first = None
    zero = T.ctx.zero()
    tz = T.obj(zero)
    if not (tz.is_zero() if isinstance(tz, ChainComplex) else tz.is_trivial()):
        clauses["null object"] = False
        first = ("null object", "0")
    for label, i in instances:
        cof, comp = _quotient_comparison(T, i)
        if not cof or not ch.is_quasi_iso(comp, up_to):
            clauses["cell extensions"] = False
            first = first or ("cell extensions", label)
    if isinstance(T, (TensorMonad, IdentityMonad)):
        for label, i in instances:
            att = FreeCellAttachment(T, i, T.eta(i.source), free_algebra(T, i.source))
            if not ch.is_cofibration(att.inclusion):
                clauses["free cell attachments"] = False
                first = first or ("free cell attachments", label)
    return ClauseReport(T.name, clauses, first)


def reflexive_pairs(ground="Q", seed=SEED, count=3):
    """Seeded pairs ``f, g: B ⊕ K -> B`` with common section the inclusion of ``B``."""
    rng = ch.seeded_rng(seed, "reflexive", ground)
    out = []
    for k in range(count):
        b = ch.random_complex(rng, ground, max_top=2, max_dim=2)
        kk = ch.random_complex(rng, ground, max_top=2, max_dim=2)
        total, inj, proj = ch.direct_sum([b, kk])
        u, v = ch.random_chain_map(rng, kk, b), ch.random_chain_map(rng, kk, b)
        f = ch.map_from_sum(total, [ChainMap.identity(b), u])
        g = ch.map_from_sum(total, [ChainMap.identity(b), v])
        out.append((f"pair{k}", f, g, inj[0]))
    return out


def check_excellent_partial(T, battery=None, seed=SEED):
    """Unit is a cofibration on the battery; reflexive coequalizers are preserved on samples."""
    battery = T.battery(seed) if battery is None else battery
    clauses = {"unit cofibration": True, "reflexive coequalizers": True}
    first = None
    for label, x in battery:
        if not ch.is_cofibration(T.eta(x)):
            clauses["unit cofibration"] = False
            first = first or ("unit cofibration", label)
    for label, f, g, s in reflexive_pairs(T.ctx.ground, seed):
        if not (f @ s).equals(ChainMap.identity(f.target)) or not (g @ s).equals(ChainMap.identity(g.target)):
            raise ValueError("sample pair is not reflexive")
        c, q = ch.cokernel(f - g)
        tc, tq = ch.cokernel(T.fmap(f) - T.fmap(g))
        comp = T.fmap(q) @ _section(tq, f.ground)
        comp = ChainMap(comp.source, comp.target, comp.components)
        if not comp.is_iso():
            clauses["reflexive coequalizers"] = False
            first = first or ("reflexive coequalizers", label)
    return ClauseReport(T.name, clauses, first, assumed="filtered colimits assumed")


class AugmentedMonad(StrongMonad):
    """``T(X) = X ⊕ I``: a monad with ``T(0) ≠ 0`` (its strength is not used)."""

    name = "augmented"

    def obj(self, x):
        return ch.direct_sum([x, self.ctx.unit()])[0]

    def fmap(self, f):
        src, inj_s, proj_s = ch.direct_sum([f.source, self.ctx.unit()])
        tgt, inj_t, proj_t = ch.direct_sum([f.target, self.ctx.unit()])
        m = inj_t[0] @ f @ proj_s[0] + inj_t[1] @ proj_s[1]
        return m

    def eta(self, x):
        return ch.direct_sum([x, self.ctx.unit()])[1][0]

    def mu(self, x):
        tx, inj, proj = ch.direct_sum([x, self.ctx.unit()])
        ttx, inj2, proj2 = ch.direct_sum([tx, self.ctx.unit()])
        return proj2[0] + inj[1] @ proj2[1]

    def sigma(self, x, y):
        raise UnsupportedError("the augmented monad carries no strength")
