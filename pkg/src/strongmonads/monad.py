"""Strong monads over closed symmetric monoidal contexts.

Contexts supply the monoidal structure.  In FPAb tensor generators are
ordered so that associators and unit constraints are identity matrices; in
chain complexes the associator is a basis permutation and the symmetry
carries the Koszul sign.

A strong monad has ``obj``, ``fmap``, ``mu``, ``eta`` and ``sigma`` with
``sigma(X, Y): X ⊗ T(Y) -> T(X ⊗ Y)``.  Law suites check exact equalities on a
finite battery of objects; "for all objects" is weakened to "verified on
battery" and every report says so.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from functools import cached_property

from . import chain as ch
from .chain import ChainComplex, ChainMap
from .linalg import (
    FPAbGroup,
    FPMorphism,
    Matrix,
    fp_coeval,
    fp_eval,
    fp_hom,
    fp_tensor,
    fp_tensor_map,
)

SEED = 0xC0FFEE
SCOPE = "verified on battery"


class UnsupportedError(ValueError):
    """Raised when a construction is not representable in the instance."""


# Contexts


class FPAbContext:
    """Finitely presented abelian groups with the tensor product over Z."""

    name = "FPAb"
    ground = "Z"

    def unit(self):
        return FPAbGroup.free(1)

    def zero(self):
        return FPAbGroup.free(0)

    def tensor(self, x, y):
        return fp_tensor(x, y)

    def tensor_map(self, f, g):
        return fp_tensor_map(f, g)

    def identity(self, x):
        return FPMorphism.identity(x)

    def zero_map(self, x, y):
        return FPMorphism.zero(x, y)

    def _relabel(self, source, target):
        return FPMorphism(source, target, Matrix.identity(source.ngens), check=False)

    def associator(self, x, y, z):
        return self._relabel(self.tensor(self.tensor(x, y), z), self.tensor(x, self.tensor(y, z)))

    def associator_inv(self, x, y, z):
        return self._relabel(self.tensor(x, self.tensor(y, z)), self.tensor(self.tensor(x, y), z))

    def left_unit(self, x):
        return self._relabel(self.tensor(self.unit(), x), x)

    def left_unit_inv(self, x):
        return self._relabel(x, self.tensor(self.unit(), x))

    def right_unit(self, x):
        return self._relabel(self.tensor(x, self.unit()), x)

    def right_unit_inv(self, x):
        return self._relabel(x, self.tensor(x, self.unit()))

    def symmetry(self, x, y):
        nx, ny = x.ngens, y.ngens
        perm = [j * nx + i for i in range(nx) for j in range(ny)]
        return FPMorphism(self.tensor(x, y), self.tensor(y, x), Matrix.permutation(perm), check=False)

    def equal(self, f, g):
        return f.equals(g)

    def is_iso(self, f):
        return f.is_iso()

    def is_weq(self, f, up_to=None):
        return f.is_iso()

    def is_cofibrant(self, x):
        return x.is_free()

    def size(self, x):
        return x.canonical

    def battery(self, seed=SEED):
        rng = ch.seeded_rng(seed, "fpab-battery")
        items = [
            ("0", FPAbGroup.free(0)),
            ("Z", FPAbGroup.free(1)),
            ("Z/2", FPAbGroup.cyclic(2)),
            ("Z/4", FPAbGroup.cyclic(4)),
            ("Z/2+Z", FPAbGroup.from_canonical(1, (2,))),
            ("Z^2", FPAbGroup.free(2)),
        ]
        for k in range(3):
            n, m = rng.randint(1, 3), rng.randint(1, 3)
            rel = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(m)] for _ in range(n)], m)
            items.append((f"random{k}", FPAbGroup(rel, n)))
        return items

    def random_map(self, rng, x, y):
        hom = fp_hom(x, y)
        coords = [rng.randint(-2, 2) for _ in range(hom.ngens)]
        return hom.morphism(coords)


def _tensor_basis(x, y, n):
    """Basis of ``(X⊗Y)_n`` as ``(p, i, q, j)`` in index order."""
    out = []
    for p in range(n + 1):
        q = n - p
        for i in range(x.dim(p)):
            for j in range(y.dim(q)):
                out.append((p, i, q, j))
    return out


def tensor_index(x, y, p, i, q, j):
    offs, _ = ch.tensor_offsets(x, y, p + q)
    return offs[p] + i * y.dim(q) + j


def truncate(c, top):
    """The subcomplex of degrees ``<= top``."""
    if c.top <= top:
        return c
    return ChainComplex(c.ground, c.dims[: top + 1], [c.diff(n) for n in range(1, top + 1)], check=False)


class ChainContext:
    """Nonnegatively graded chain complexes over Q or Z.

    With ``top`` set, tensor products are cut off above that degree; the
    degree-``<= top`` part is a subcomplex, so this is again monoidal on
    complexes concentrated in degrees ``<= top``.
    """

    def __init__(self, ground="Q", top=None):
        self.ground = ground
        self.top = top
        self.name = f"Chain({ground})" if top is None else f"Chain({ground})<={top}"
        self._tensors = {}

    def unit(self):
        return ChainComplex.point(self.ground, 0, 1)

    def zero(self):
        return ChainComplex.zero(self.ground)

    def cut(self, c):
        return c if self.top is None else truncate(c, self.top)

    def tensor(self, x, y):
        key = (x, y)
        t = self._tensors.get(key)
        if t is None:
            t = self.cut(ch.tensor(x, y))
            self._tensors[key] = t
        return t

    def tensor_map(self, f, g):
        src, tgt = self.tensor(f.source, g.source), self.tensor(f.target, g.target)
        full = ch.tensor_map(f, g, ch.tensor(f.source, g.source), ch.tensor(f.target, g.target))
        return ChainMap(src, tgt, full.components[: len(src.dims) if self.top is not None else None], check=False)

    def identity(self, x):
        return ChainMap.identity(x)

    def zero_map(self, x, y):
        return ChainMap.zero(x, y)

    def _basis_map(self, source, target, rule):
        """Signed basis map: ``rule(n, k) -> (target index, sign)``."""
        comps = []
        for n in range(len(source.dims)):
            rows = [{} for _ in range(target.dim(n))]
            for k in range(source.dim(n)):
                t, s = rule(n, k)
                rows[t][k] = s
            comps.append(Matrix(target.dim(n), source.dim(n), rows))
        return ChainMap(source, target, comps, check=False)

    def associator(self, x, y, z):
        xy, yz = self.tensor(x, y), self.tensor(y, z)
        src, tgt = self.tensor(xy, z), self.tensor(x, yz)
        xy_basis = {a: _tensor_basis(x, y, a) for a in range(len(xy.dims))}

        def rule(n, k):
            a, u, r, kk = _tensor_basis(xy, z, n)[k]
            p, i, q, j = xy_basis[a][u]
            return tensor_index(x, yz, p, i, q + r, tensor_index(y, z, q, j, r, kk)), 1

        return self._basis_map(src, tgt, rule)

    def associator_inv(self, x, y, z):
        xy, yz = self.tensor(x, y), self.tensor(y, z)
        src, tgt = self.tensor(x, yz), self.tensor(xy, z)
        yz_basis = {b: _tensor_basis(y, z, b) for b in range(len(yz.dims))}

        def rule(n, k):
            p, i, b, v = _tensor_basis(x, yz, n)[k]
            q, j, r, kk = yz_basis[b][v]
            return tensor_index(xy, z, p + q, tensor_index(x, y, p, i, q, j), r, kk), 1

        return self._basis_map(src, tgt, rule)

    def left_unit(self, x):
        return self._basis_map(self.tensor(self.unit(), x), x, lambda n, k: (k, 1))

    def left_unit_inv(self, x):
        return self._basis_map(x, self.tensor(self.unit(), x), lambda n, k: (k, 1))

    def right_unit(self, x):
        return self._basis_map(self.tensor(x, self.unit()), x, lambda n, k: (k, 1))

    def right_unit_inv(self, x):
        return self._basis_map(x, self.tensor(x, self.unit()), lambda n, k: (k, 1))

    def symmetry(self, x, y):
        def rule(n, k):
            p, i, q, j = _tensor_basis(x, y, n)[k]
            return tensor_index(y, x, q, j, p, i), -1 if (p * q) % 2 else 1

        return self._basis_map(self.tensor(x, y), self.tensor(y, x), rule)

    def equal(self, f, g):
        return f.equals(g)

    def is_iso(self, f):
        return f.is_iso()

    def is_weq(self, f, up_to=None):
        """``H_n(f)`` is an isomorphism for ``n <= up_to``.

        A truncated context only has exact homology below its top degree,
        so the default bound there is ``top - 1``.
        """
        if up_to is None and self.top is not None:
            up_to = self.top - 1
        if up_to is None:
            return ch.is_quasi_iso(f)
        return ch.induces_iso_through(f, up_to)

    def is_cofibrant(self, x):
        return True

    def size(self, x):
        return tuple(x.dims)

    def battery(self, seed=SEED, positive=False):
        g = self.ground
        rng = ch.seeded_rng(seed, "chain-battery", g)
        items = [("0", ChainComplex.zero(g))]
        if not positive:
            items.append((f"{g}[0]", ChainComplex.point(g, 0, 1)))
        items += [
            (f"{g}[1]", ChainComplex.point(g, 1, 1)),
            ("S2", ChainComplex.point(g, 2, 1)),
            ("D2", ChainComplex.disk(g, 2)),
        ]
        top = 4 if self.top is None else self.top
        max_dim = 2 if positive else 3
        for k in range(3):
            c = ch.random_complex(rng, g, max_top=top, max_dim=max_dim, min_degree=1 if positive else 0)
            items.append((f"random{k}", c))
        return items

    def random_map(self, rng, x, y):
        return ch.random_chain_map(rng, x, y)


FPAB = FPAbContext()
CHAIN_Q = ChainContext("Q")
CHAIN_Z = ChainContext("Z")


# Strong monads


class StrongMonad:
    """Base class; subclasses provide the structure maps."""

    name = "monad"

    def __init__(self, ctx):
        self.ctx = ctx
        self._cache = {}

    def _memo(self, key, build):
        v = self._cache.get(key)
        if v is None:
            v = build()
            self._cache[key] = v
        return v

    def obj(self, x):
        raise NotImplementedError

    def fmap(self, f):
        raise NotImplementedError

    def mu(self, x):
        raise NotImplementedError

    def eta(self, x):
        raise NotImplementedError

    def sigma(self, x, y):
        raise NotImplementedError

    def battery(self, seed=SEED):
        return self.ctx.battery(seed)

    def __repr__(self):
        return f"<{self.name} on {self.ctx.name}>"


class IdentityMonad(StrongMonad):
    name = "identity"

    def obj(self, x):
        return x

    def fmap(self, f):
        return f

    def mu(self, x):
        return self.ctx.identity(x)

    def eta(self, x):
        return self.ctx.identity(x)

    def sigma(self, x, y):
        return self.ctx.identity(self.ctx.tensor(x, y))


@dataclass
class MonoidObject:
    """A monoid ``(M, m: M⊗M -> M, e: I -> M)`` in a context."""

    ctx: object
    carrier: object
    mult: object
    unit: object
    name: str = "M"

    def failures(self):
        c, M, m, e = self.ctx, self.carrier, self.mult, self.unit
        out = []
        assoc_l = m @ c.tensor_map(m, c.identity(M))
        assoc_r = m @ c.tensor_map(c.identity(M), m) @ c.associator(M, M, M)
        if not c.equal(assoc_l, assoc_r):
            out.append("associativity")
        if not c.equal(m @ c.tensor_map(e, c.identity(M)), c.left_unit(M)):
            out.append("left unit")
        if not c.equal(m @ c.tensor_map(c.identity(M), e), c.right_unit(M)):
            out.append("right unit")
        return out

    def check(self):
        return not self.failures()


class TensorMonad(StrongMonad):
    """``T(X) = X ⊗ M`` for a monoid ``M``; the strength is the inverse associator."""

    def __init__(self, monoid, check=True):
        super().__init__(monoid.ctx)
        if check and not monoid.check():
            raise ValueError(f"monoid laws fail: {monoid.failures()}")
        self.monoid = monoid
        self.name = f"tensor:{monoid.name}"

    def obj(self, x):
        return self.ctx.tensor(x, self.monoid.carrier)

    def fmap(self, f):
        return self.ctx.tensor_map(f, self.ctx.identity(self.monoid.carrier))

    def mu(self, x):
        c, M = self.ctx, self.monoid.carrier
        return self._memo(("mu", x), lambda: c.tensor_map(c.identity(x), self.monoid.mult) @ c.associator(x, M, M))

    def eta(self, x):
        c = self.ctx
        return self._memo(("eta", x), lambda: c.tensor_map(c.identity(x), self.monoid.unit) @ c.right_unit_inv(x))

    def sigma(self, x, y):
        return self._memo(("sigma", x, y), lambda: self.ctx.associator_inv(x, y, self.monoid.carrier))


def monad_from_monoid(monoid):
    return TensorMonad(monoid)


# Monoid presets


def _fpab_monoid(name, group, products, unit):
    n = group.ngens
    cols = [products[i][j] for i in range(n) for j in range(n)]
    sq = fp_tensor(group, group)
    mult = FPMorphism(sq, group, Matrix.from_columns(cols, n))
    e = FPMorphism(FPAbGroup.free(1), group, Matrix.from_columns([unit], n))
    return MonoidObject(FPAB, group, mult, e, name)


def _chain_monoid(ctx, name, carrier, product, unit):
    """``product(p, i, q, j)`` gives the coordinate dict of ``b_(p,i) · b_(q,j)`` in degree ``p + q``."""
    sq = ctx.tensor(carrier, carrier)
    comps = []
    for n in range(len(sq.dims)):
        rows = [{} for _ in range(carrier.dim(n))]
        for k, (p, i, q, j) in enumerate(_tensor_basis(carrier, carrier, n)):
            for t, v in product(p, i, q, j).items():
                rows[t][k] = v
        comps.append(Matrix(carrier.dim(n), sq.dim(n), rows))
    mult = ChainMap(sq, carrier, comps)
    e = ChainMap(ctx.unit(), carrier, [Matrix.from_columns([unit], carrier.dim(0))])
    return MonoidObject(ctx, carrier, mult, e, name)


def group_ring_c2(ctx=FPAB):
    """``Z[C2]`` with basis ``(1, g)``."""
    table = [[[1, 0], [0, 1]], [[0, 1], [1, 0]]]
    if ctx is FPAB or ctx.name == "FPAb":
        return _fpab_monoid("Z[C2]", FPAbGroup.free(2), table, [1, 0])
    carrier = ChainComplex(ctx.ground, [2])
    return _chain_monoid(ctx, "Z[C2]", carrier, lambda p, i, q, j: {t: v for t, v in enumerate(table[i][j]) if v}, [1, 0])


def cyclic_ring(k):
    """``Z/k`` as a monoid in FPAb."""
    return _fpab_monoid(f"Z/{k}", FPAbGroup.cyclic(k), [[[1]]], [1])


def integers():
    return _fpab_monoid("Z", FPAbGroup.free(1), [[[1]]], [1])


def dual_numbers(ctx=CHAIN_Q):
    """``Q[ε]/ε²`` with ε in degree 0, basis ``(1, ε)``."""
    carrier = ChainComplex(ctx.ground, [2])

    def product(p, i, q, j):
        return {} if i == j == 1 else {i + j: 1}

    return _chain_monoid(ctx, "Q[eps]", carrier, product, [1, 0])


def exterior(ctx=CHAIN_Q):
    """``Λ(x)`` with ``|x| = 1``: basis ``1`` in degree 0 and ``x`` in degree 1."""
    carrier = ChainComplex(ctx.ground, [1, 1])

    def product(p, i, q, j):
        return {} if p + q > 1 else {0: 1}

    return _chain_monoid(ctx, "Lambda(x)", carrier, product, [1])


def rationals(ctx=CHAIN_Q):
    return _chain_monoid(ctx, "Q", ctx.unit(), lambda p, i, q, j: {0: 1}, [1])


MONOIDS = {
    "C2": group_ring_c2,
    "Z2": lambda: cyclic_ring(2),
    "Z": integers,
    "eps": dual_numbers,
    "Lambda": exterior,
    "Q": rationals,
}


# The truncated tensor algebra


class _Words:
    """Basis of ``⊕_(1<=k<=D) X^{⊗k}`` in degrees ``<= D`` as tuples of ``(degree, index)``."""

    def __init__(self, x, top):
        self.x = x
        letters = [(p, i) for p in range(len(x.dims)) for i in range(x.dim(p))]
        words = {n: [] for n in range(top + 1)}
        frontier = [()]
        for _ in range(top):
            nxt = []
            for w in frontier:
                deg = sum(p for p, _ in w)
                for a in letters:
                    if deg + a[0] <= top:
                        nxt.append(w + (a,))
            for w in nxt:
                words[sum(p for p, _ in w)].append(w)
            frontier = nxt
        for n in words:
            words[n].sort(key=lambda w: (len(w), w))
        self.words = words
        self.index = {w: k for n in words for k, w in enumerate(words[n])}
        last = max((n for n in words if words[n]), default=-1)
        dims = [len(words[n]) for n in range(last + 1)]
        d = []
        for n in range(1, last + 1):
            rows = [{} for _ in range(dims[n - 1])]
            for k, w in enumerate(words[n]):
                sign = 1
                for pos, (p, i) in enumerate(w):
                    if p >= 1:
                        col = x.diff(p)
                        for r in range(x.dim(p - 1)):
                            v = col[r, i]
                            if v:
                                t = self.index[w[:pos] + ((p - 1, r),) + w[pos + 1:]]
                                rows[t][k] = rows[t].get(k, 0) + sign * v
                    if p % 2:
                        sign = -sign
            d.append(Matrix(dims[n - 1], dims[n], rows))
        self.complex = ChainComplex(x.ground, dims, d)


class TensorAlgebraMonad(StrongMonad):
    """Free non-unital algebras with words of length ``<= D`` in degrees ``<= D``.

    The multiplication concatenates words and the unit is the inclusion of
    length-one words.  The strength is the linear part: ``x ⊗ (y)`` goes to
    the one-letter word ``(x ⊗ y)`` and longer words go to zero.  This passes
    every law except the unit constraint, which no strength for this functor
    can satisfy (see the README).
    """

    name = "tensoralg"

    def __init__(self, top=4):
        super().__init__(ChainContext("Q", top))
        self.top = top

    def battery(self, seed=SEED):
        return self.ctx.battery(seed, positive=True)

    def words(self, x):
        return self._memo(("words", x), lambda: _Words(x, self.top))

    def obj(self, x):
        return self.words(x).complex

    def _word_map(self, source_words, target, rule):
        src = source_words.complex
        comps = []
        for n in range(len(src.dims)):
            rows = [{} for _ in range(target.dim(n))]
            for k, w in enumerate(source_words.words[n]):
                for t, v in rule(w).items():
                    rows[t][k] = rows[t].get(k, 0) + v
            comps.append(Matrix(target.dim(n), src.dim(n), rows))
        return ChainMap(src, target, comps, check=False)

    def fmap(self, f):
        sw, tw = self.words(f.source), self.words(f.target)

        def rule(w):
            terms = {(): 1}
            for p, i in w:
                col = [(r, v) for r, v in enumerate(f.comp(p).column(i)) if v]
                terms = {u + ((p, r),): c * v for u, c in terms.items() for r, v in col}
            return {tw.index[u]: c for u, c in terms.items()}

        return self._word_map(sw, tw.complex, rule)

    def mu(self, x):
        def build():
            xw = self.words(x)
            ttw = self.words(xw.complex)

            def rule(w):
                flat = ()
                for p, k in w:
                    flat += xw.words[p][k]
                if len(flat) > self.top:
                    return {}
                return {xw.index[flat]: 1}

            return self._word_map(ttw, xw.complex, rule)

        return self._memo(("mu", x), build)

    def eta(self, x):
        xw = self.words(x)
        comps = []
        for n in range(len(x.dims)):
            rows = [{} for _ in range(xw.complex.dim(n))]
            for i in range(x.dim(n)):
                rows[xw.index[((n, i),)]][i] = 1
            comps.append(Matrix(xw.complex.dim(n), x.dim(n), rows))
        return ChainMap(x, xw.complex, comps, check=False)

    def sigma(self, x, y):
        def build():
            yw = self.words(y)
            xy = self.ctx.tensor(x, y)
            xyw = self.words(xy)
            src = self.ctx.tensor(x, yw.complex)
            comps = []
            for n in range(len(src.dims)):
                rows = [{} for _ in range(xyw.complex.dim(n))]
                for k, (p, i, q, j) in enumerate(_tensor_basis(x, yw.complex, n)):
                    w = yw.words[q][j]
                    if len(w) == 1:
                        _, b = w[0]
                        t = xyw.index[((n, tensor_index(x, y, p, i, q, b)),)]
                        rows[t][k] = 1
                comps.append(Matrix(xyw.complex.dim(n), src.dim(n), rows))
            return ChainMap(src, xyw.complex, comps, check=False)

        return self._memo(("sigma", x, y), build)


# Reports


@dataclass
class Failure:
    law: str
    objects: tuple
    detail: str = ""

    def as_dict(self):
        return {"law": self.law, "objects": list(self.objects), "detail": self.detail}


@dataclass
class LawReport:
    suite: str
    monad: str
    checked: int = 0
    failures: list = field(default_factory=list)
    scope: str = SCOPE

    @property
    def ok(self):
        return not self.failures

    @property
    def first(self):
        return self.failures[0] if self.failures else None

    def record(self, law, objects, holds, detail=""):
        self.checked += 1
        if not holds:
            self.failures.append(Failure(law, tuple(objects), detail))

    def as_dict(self):
        return {
            "suite": self.suite,
            "monad": self.monad,
            "checked": self.checked,
            "pass": self.ok,
            "scope": self.scope,
            "first_failure": self.first.as_dict() if self.first else None,
        }


def _pairs(battery, seed, label, limit):
    pairs = list(itertools.product(battery, repeat=2))
    if limit is None or len(pairs) <= limit:
        return pairs
    rng = ch.seeded_rng(seed, label)
    return rng.sample(pairs, limit)


def _triples(battery, seed, label, limit):
    rng = ch.seeded_rng(seed, label)
    return [tuple(rng.choice(battery) for _ in range(3)) for _ in range(limit)]


def sampled_morphisms(T, battery, seed=SEED, count=4):
    """Seeded morphisms between battery objects for naturality squares."""
    rng = ch.seeded_rng(seed, "morphisms", T.name)
    out = []
    nonzero = [b for b in battery if T.ctx.size(b[1]) not in ((0, ()), ())]
    for _ in range(count):
        (lx, x), (ly, y) = rng.choice(nonzero), rng.choice(nonzero)
        out.append(((lx, ly), T.ctx.random_map(rng, x, y)))
    return out


def check_monad_laws(T, battery=None, seed=SEED, morphisms=None):
    """Associativity, both unit laws, and naturality of ``mu`` and ``eta``."""
    battery = T.battery(seed) if battery is None else battery
    eq = T.ctx.equal
    rep = LawReport("monad", T.name)
    for label, x in battery:
        mu, eta, tx = T.mu(x), T.eta(x), T.obj(x)
        rep.record("associativity", [label], eq(mu @ T.fmap(mu), mu @ T.mu(tx)))
        ident = T.ctx.identity(tx)
        rep.record("unit (T eta)", [label], eq(mu @ T.fmap(eta), ident))
        rep.record("unit (eta T)", [label], eq(mu @ T.eta(tx), ident))
    if morphisms is None:
        morphisms = sampled_morphisms(T, battery, seed)
    for labels, f in morphisms:
        x, y = f.source, f.target
        tf = T.fmap(f)
        rep.record("eta naturality", labels, eq(tf @ T.eta(x), T.eta(y) @ f))
        rep.record("mu naturality", labels, eq(tf @ T.mu(x), T.mu(y) @ T.fmap(tf)))
    return rep


def check_strength_laws(T, battery=None, seed=SEED, pair_limit=12, triple_limit=6, morphisms=None):
    """The four strength diagrams, plus naturality of the strength."""
    battery = T.battery(seed) if battery is None else battery
    c = T.ctx
    eq = c.equal
    I = c.unit()
    rep = LawReport("strength", T.name)
    for label, y in battery:
        lhs = T.fmap(c.left_unit(y)) @ T.sigma(I, y)
        rep.record("unit constraint", ["I", label], eq(lhs, c.left_unit(T.obj(y))))
    for (lx, x), (ly, y) in _pairs(battery, seed, "strength-pairs", pair_limit):
        s = T.sigma(x, y)
        idx = c.identity(x)
        rep.record("unit naturality", [lx, ly], eq(s @ c.tensor_map(idx, T.eta(y)), T.eta(c.tensor(x, y))))
        lhs = s @ c.tensor_map(idx, T.mu(y))
        rhs = T.mu(c.tensor(x, y)) @ T.fmap(s) @ T.sigma(x, T.obj(y))
        rep.record("multiplication naturality", [lx, ly], eq(lhs, rhs))
    for (lx, x), (ly, y), (lz, z) in _triples(battery, seed, "strength-triples", triple_limit):
        lhs = T.sigma(c.tensor(x, y), z)
        rhs = (
            T.fmap(c.associator_inv(x, y, z))
            @ T.sigma(x, c.tensor(y, z))
            @ c.tensor_map(c.identity(x), T.sigma(y, z))
            @ c.associator(x, y, T.obj(z))
        )
        rep.record("associativity constraint", [lx, ly, lz], eq(lhs, rhs))
    if morphisms is None:
        morphisms = sampled_morphisms(T, battery, seed)
    for k in range(0, len(morphisms) - 1, 2):
        (la, f), (lb, g) = morphisms[k], morphisms[k + 1]
        lhs = T.sigma(f.target, g.target) @ c.tensor_map(f, T.fmap(g))
        rhs = T.fmap(c.tensor_map(f, g)) @ T.sigma(f.source, g.source)
        rep.record("strength naturality", list(la) + list(lb), eq(lhs, rhs))
    return rep


# Perturbations


class PerturbedMonad(StrongMonad):
    """``base`` with one entry of one structure map changed at one object."""

    def __init__(self, base, component, key, entry):
        super().__init__(base.ctx)
        self.base, self.component, self.key, self.entry = base, component, key, entry
        self.name = f"{base.name}~{component}"

    def obj(self, x):
        return self.base.obj(x)

    def fmap(self, f):
        return self.base.fmap(f)

    def battery(self, seed=SEED):
        return self.base.battery(seed)

    def _maybe(self, component, key, f):
        if component == self.component and key == self.key:
            return perturb_map(f, self.entry)
        return f

    def mu(self, x):
        return self._maybe("mu", (x,), self.base.mu(x))

    def eta(self, x):
        return self._maybe("eta", (x,), self.base.eta(x))

    def sigma(self, x, y):
        return self._maybe("sigma", (x, y), self.base.sigma(x, y))


def perturb_map(f, entry):
    degree, i, j = entry
    if isinstance(f, FPMorphism):
        m = f.matrix
        return FPMorphism(f.source, f.target, m + Matrix.from_entries(m.nrows, m.ncols, {(i, j): 1}), check=False)
    comps = list(f.components)
    m = comps[degree]
    comps[degree] = m + Matrix.from_entries(m.nrows, m.ncols, {(i, j): 1})
    return ChainMap(f.source, f.target, comps, check=False)


def _entries(f):
    if isinstance(f, FPMorphism):
        return [(0, i, j) for i in range(f.matrix.nrows) for j in range(f.matrix.ncols)]
    return [(n, i, j) for n, m in enumerate(f.components) for i in range(m.nrows) for j in range(m.ncols)]


def seeded_perturbation(T, seed, salt, pair_limit=12):
    """A single-entry change to ``mu``, ``eta`` or ``sigma`` at a battery object.

    Entries whose change is invisible (e.g. a coordinate of a trivial
    generator) or breaks well-definedness over Z are redrawn, so the result is
    always a genuinely different structure map.
    """
    rng = ch.seeded_rng(seed, "perturb", T.name, salt)
    full = T.battery(seed)
    battery = [b for b in full if T.ctx.size(b[1]) not in ((0, ()), ())]
    # strengths are only checked on sampled pairs, so perturb one of those
    pairs = [p for p in _pairs(full, seed, "strength-pairs", pair_limit) if p[0] in battery and p[1] in battery]
    for _ in range(200):
        component = rng.choice(["mu", "eta", "sigma"])
        if component == "sigma":
            (lx, x), (ly, y) = rng.choice(pairs)
            key, labels, f = (x, y), (lx, ly), T.sigma(x, y)
        else:
            lx, x = rng.choice(battery)
            key, labels = (x,), (lx,)
            f = T.mu(x) if component == "mu" else T.eta(x)
        entries = _entries(f)
        if not entries:
            continue
        entry = rng.choice(entries)
        g = perturb_map(f, entry)
        if isinstance(g, FPMorphism):
            try:
                FPMorphism(g.source, g.target, g.matrix)
            except ValueError:
                continue
        if T.ctx.equal(f, g):
            continue
        return PerturbedMonad(T, component, key, entry), labels
    raise RuntimeError("no visible perturbation found")


def _failure_set(T, seed):
    reports = (check_monad_laws(T, seed=seed), check_strength_laws(T, seed=seed))
    return {(f.law, f.objects) for r in reports for f in r.failures}


def perturbation_caught(T, perturbed, seed=SEED):
    """Whether the law suites see a failure the unperturbed monad does not have."""
    return bool(_failure_set(perturbed, seed) - _failure_set(T, seed))


# Linear approximation and the monoid of the unit


def linear_approximation(T, x):
    """``λ_X = T(r_X) ∘ σ_(X,I): X ⊗ T(I) -> T(X)``."""
    c = T.ctx
    return T.fmap(c.right_unit(x)) @ T.sigma(x, c.unit())


def unit_monoid_data(T):
    """``(T(I), μ_I ∘ T(r) ∘ σ_(T(I),I), η_I)`` without checking the laws."""
    c = T.ctx
    I = c.unit()
    TI = T.obj(I)
    mult = T.mu(I) @ T.fmap(c.right_unit(TI)) @ T.sigma(TI, I)
    return MonoidObject(c, TI, mult, T.eta(I), f"{T.name}(I)")


def monoid_of_unit(T):
    """The monoid ``T(I)``; raises ``UnsupportedError`` if the laws fail."""
    if isinstance(T, TensorAlgebraMonad):
        raise UnsupportedError("T(I) is not a monoid for the tensor-algebra monad in this truncation")
    m = unit_monoid_data(T)
    bad = m.failures()
    if bad:
        raise UnsupportedError(f"T(I) fails the monoid laws: {bad}")
    return m


@dataclass
class MonadMorphism:
    source: StrongMonad
    target: StrongMonad
    component: object  # callable X -> morphism S(X) -> T(X)
    name: str = "morphism"


def approximation_morphism(T):
    """``λ: - ⊗ T(I) -> T`` as a monad morphism (source built without law checks)."""
    source = TensorMonad(unit_monoid_data(T), check=False)
    return MonadMorphism(source, T, lambda x: linear_approximation(T, x), f"lambda[{T.name}]")


def identity_morphism(T):
    return MonadMorphism(T, T, lambda x: T.ctx.identity(T.obj(x)), f"id[{T.name}]")


def check_monad_morphism(phi, battery=None, seed=SEED):
    """``λ ∘ η̃ = η`` and ``λ ∘ μ̃ = μ ∘ T(λ) ∘ λ_S``."""
    S, T = phi.source, phi.target
    battery = T.battery(seed) if battery is None else battery
    eq = T.ctx.equal
    rep = LawReport("monad morphism", phi.name)
    for label, x in battery:
        lam = phi.component(x)
        rep.record("unit", [label], eq(lam @ S.eta(x), T.eta(x)))
        lhs = lam @ S.mu(x)
        rhs = T.mu(x) @ T.fmap(lam) @ phi.component(S.obj(x))
        rep.record("multiplication", [label], eq(lhs, rhs))
    return rep


def check_strong_naturality(T, battery=None, seed=SEED, pair_limit=12):
    """``λ`` commutes with the strengths: ``λ_(X⊗Y) ∘ σ̃ = σ ∘ (X ⊗ λ_Y)``."""
    phi = approximation_morphism(T)
    S = phi.source
    battery = T.battery(seed) if battery is None else battery
    c = T.ctx
    rep = LawReport("strong naturality", phi.name)
    for (lx, x), (ly, y) in _pairs(battery, seed, "lambda-pairs", pair_limit):
        lhs = phi.component(c.tensor(x, y)) @ S.sigma(x, y)
        rhs = T.sigma(x, y) @ c.tensor_map(c.identity(x), phi.component(y))
        rep.record("strong naturality", [lx, ly], c.equal(lhs, rhs))
    return rep


@dataclass
class LinearityReport:
    linear: bool
    checked: int
    witness: object = None
    scope: str = SCOPE


def is_linear(T, battery=None, seed=SEED, pair_limit=16):
    """Whether every battery strength ``σ_(X,Y)`` is invertible."""
    return linearity_report(T, battery, seed, pair_limit).linear


def linearity_report(T, battery=None, seed=SEED, pair_limit=16):
    battery = T.battery(seed) if battery is None else battery
    checked = 0
    for (lx, x), (ly, y) in _pairs(battery, seed, "linear-pairs", pair_limit):
        s = T.sigma(x, y)
        checked += 1
        if not T.ctx.is_iso(s):
            return LinearityReport(False, checked, _dimension_witness(T.ctx, s, (lx, ly)))
    return LinearityReport(True, checked)


def _dimension_witness(ctx, f, labels):
    if isinstance(f, ChainMap):
        for n in range(max(len(f.source.dims), len(f.target.dims))):
            if f.source.dim(n) != f.target.dim(n):
                return {"objects": list(labels), "degree": n, "source_dim": f.source.dim(n), "target_dim": f.target.dim(n)}
        return {"objects": list(labels), "detail": "not invertible"}
    return {"objects": list(labels), "source": ctx.size(f.source), "target": ctx.size(f.target)}


def strength_weak_invertibility(T, battery=None, up_to=None, seed=SEED, pair_limit=16):
    """``σ_(X,Y)`` is a weak equivalence for cofibrant battery pairs."""
    battery = T.battery(seed) if battery is None else battery
    c = T.ctx
    for (lx, x), (ly, y) in _pairs(battery, seed, "weak-pairs", pair_limit):
        if c.is_cofibrant(x) and c.is_cofibrant(y) and not c.is_weq(T.sigma(x, y), up_to):
            return False
    return True


# Strength and enrichment (FPAb)


def _require_fpab(T):
    if T.ctx.name != "FPAb":
        raise UnsupportedError("internal hom is only implemented for FPAb")


def curry(g, x, hom):
    """The adjoint ``x -> hom`` of ``g: x ⊗ hom.source -> hom.target``."""
    b = hom.source.ngens
    cols = []
    for i in range(x.ngens):
        mat = Matrix.from_columns([g.matrix.column(i * b + j) for j in range(b)], hom.target.ngens)
        cols.append(hom.coordinates(FPMorphism(hom.source, hom.target, mat, check=False)))
    return FPMorphism(x, hom, Matrix.from_columns(cols, hom.ngens), check=False)


def uncurry(f, domain):
    """The adjoint ``f.source ⊗ hom.source -> hom.target`` of ``f: x -> hom``."""
    hom = f.target
    cols = []
    for i in range(f.source.ngens):
        h = hom.morphism(f.matrix.column(i))
        for j in range(hom.source.ngens):
            cols.append(h.matrix.column(j))
    return FPMorphism(domain, hom.target, Matrix.from_columns(cols, hom.target.ngens), check=False)


def strength_to_enrichment(T, a1, a2):
    """``φ: Hom(A1, A2) -> Hom(T A1, T A2)``, the adjoint of ``T(ev) ∘ σ``."""
    _require_fpab(T)
    hom = fp_hom(a1, a2)
    ev = fp_eval(a1, a2, hom)
    g = T.fmap(ev) @ T.sigma(hom, a1)
    return curry(g, hom, fp_hom(T.obj(a1), T.obj(a2)))


def enrichment_to_strength(T, phi, x, a):
    """``σ_(X,A)``, the adjoint of ``φ_(A, X⊗A) ∘ coev``; ``phi(a1, a2)`` gives the enrichment."""
    _require_fpab(T)
    xa = FPAB.tensor(x, a)
    hom = fp_hom(a, xa)
    coev = fp_coeval(x, a, hom)
    f = phi(a, xa) @ coev
    return uncurry(f, FPAB.tensor(x, T.obj(a)))


def strength_roundtrip(T, battery=None, seed=SEED, pair_limit=None):
    """``σ -> φ -> σ`` reproduces the strength exactly on battery pairs."""
    _require_fpab(T)
    battery = T.battery(seed) if battery is None else battery
    rep = LawReport("strength-enrichment roundtrip", T.name)
    phi = lambda a1, a2: strength_to_enrichment(T, a1, a2)  # noqa: E731
    for (lx, x), (la, a) in _pairs(battery, seed, "roundtrip-pairs", pair_limit):
        back = enrichment_to_strength(T, phi, x, a)
        rep.record("roundtrip", [lx, la], back.equals(T.sigma(x, a)))
    return rep


# Registry


def make_monad(name, top=4):
    """Monads by CLI name: identity[:context] | tensor:<monoid> | tensoralg | homtensor:<S>:<P>."""
    head, _, rest = name.partition(":")
    if head == "identity":
        ctx = {"": FPAB, "FPAb": FPAB, "Q": CHAIN_Q, "Z": CHAIN_Z}.get(rest)
        if ctx is None:
            raise ValueError(f"unknown context {rest!r}")
        return IdentityMonad(ctx)
    if head == "tensor":
        if rest not in MONOIDS:
            raise ValueError(f"unknown monoid {rest!r}; choose from {sorted(MONOIDS)}")
        return TensorMonad(MONOIDS[rest]())
    if head == "tensoralg":
        return TensorAlgebraMonad(top)
    if head == "homtensor":
        from .gabriel import hom_tensor_preset

        return hom_tensor_preset(rest)
    raise ValueError(f"unknown monad {name!r}")
