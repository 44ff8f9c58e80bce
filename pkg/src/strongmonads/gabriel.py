"""Hom-tensor monads on abelian groups from projective summands.

For a ring ``S`` free of finite rank over Z and an idempotent ``e`` in
``M_n(S)``, the right module ``P = e·S^n`` gives the monad

    T(X) = Hom_S(P, X ⊗ P)

on finitely presented abelian groups.  Its unit monoid is ``End_S(P)`` with
``m(f ⊗ g) = f ∘ g``.  Round trips compare an S-module ``X`` with
``Hom_S(P, X) ⊗_R P`` for ``R = End_S(P)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .linalg import (
    FPAbGroup,
    FPMorphism,
    Matrix,
    block_diag,
    fp_hom,
    fp_tensor,
    hstack,
    int_solve,
    kron,
    lattice_basis,
)
from .monad import FPAB, SCOPE, StrongMonad


@dataclass
class RingPresentation:
    """A ring free over Z: ``table[i][j]`` holds the coordinates of ``s_i s_j``."""

    name: str
    table: list
    unit: list

    @property
    def rank(self):
        return len(self.unit)

    def basis(self, i):
        return [int(k == i) for k in range(self.rank)]

    def mul(self, a, b):
        out = [0] * self.rank
        for i, x in enumerate(a):
            if not x:
                continue
            for j, y in enumerate(b):
                if y:
                    for k, c in enumerate(self.table[i][j]):
                        out[k] += x * y * c
        return out

    def left_matrix(self, a):
        """Matrix of ``x -> a·x``."""
        return Matrix.from_columns([self.mul(a, self.basis(k)) for k in range(self.rank)], self.rank)

    def right_matrix(self, a):
        """Matrix of ``x -> x·a``."""
        return Matrix.from_columns([self.mul(self.basis(k), a) for k in range(self.rank)], self.rank)

    def failures(self):
        out = []
        r = self.rank
        for i in range(r):
            si = self.basis(i)
            if self.mul(self.unit, si) != si or self.mul(si, self.unit) != si:
                out.append(("unit", i))
            for j in range(r):
                for k in range(r):
                    sj, sk = self.basis(j), self.basis(k)
                    if self.mul(self.mul(si, sj), sk) != self.mul(si, self.mul(sj, sk)):
                        out.append(("associativity", i, j, k))
        return out

    def check(self):
        return not self.failures()

    @classmethod
    def from_json(cls, data):
        try:
            table, unit = data["table"], data["unit"]
        except (KeyError, TypeError) as exc:
            raise ValueError(f"ring needs 'table' and 'unit': {exc}") from None
        ring = cls(data.get("name", "custom"), [[list(map(int, c)) for c in row] for row in table], list(map(int, unit)))
        r = ring.rank
        if len(table) != r or any(len(row) != r or any(len(c) != r for c in row) for row in table):
            raise ValueError("structure table has the wrong shape")
        if not ring.check():
            raise ValueError(f"ring laws fail: {ring.failures()[:3]}")
        return ring


def ring_z():
    return RingPresentation("Z", [[[1]]], [1])


def ring_zxz():
    """``Z × Z`` on the idempotents ``e1, e2``."""
    return RingPresentation("ZxZ", [[[1, 0], [0, 0]], [[0, 0], [0, 1]]], [1, 1])


def ring_m2z():
    """``M_2(Z)`` on matrix units ``E_ij`` at index ``2i + j``."""
    table = []
    for a in range(4):
        i, j = divmod(a, 2)
        row = []
        for b in range(4):
            k, l = divmod(b, 2)
            c = [0] * 4
            if j == k:
                c[2 * i + l] = 1
            row.append(c)
        table.append(row)
    return RingPresentation("M2Z", table, [1, 0, 0, 1])


def ring_c2():
    """``Z[C2]`` on ``1, g``."""
    return RingPresentation("C2", [[[1, 0], [0, 1]], [[0, 1], [1, 0]]], [1, 0])


RINGS = {"Z": ring_z, "ZxZ": ring_zxz, "M2Z": ring_m2z, "C2": ring_c2}


@dataclass
class SModule:
    """A right S-module: ``actions[i]`` is the matrix of ``x -> x·s_i`` on generators."""

    ring: RingPresentation
    carrier: FPAbGroup
    actions: list
    name: str = "X"

    def action(self, a):
        n = self.carrier.ngens
        total = Matrix.zero(n, n)
        for c, m in zip(a, self.actions):
            if c:
                total = total + m.scaled(c)
        return total

    def _morphism(self, m):
        return FPMorphism(self.carrier, self.carrier, m, check=False)

    def failures(self):
        out = []
        X = self.carrier
        for i, m in enumerate(self.actions):
            try:
                FPMorphism(X, X, m)
            except ValueError:
                out.append(("well-defined", i))
        if not self._morphism(self.action(self.ring.unit)).equals(FPMorphism.identity(X)):
            out.append(("unit",))
        r = self.ring.rank
        for i in range(r):
            for j in range(r):
                lhs = self._morphism(self.actions[j] @ self.actions[i])
                rhs = self._morphism(self.action(self.ring.mul(self.ring.basis(i), self.ring.basis(j))))
                if not lhs.equals(rhs):
                    out.append(("associativity", i, j))
        return out

    def check(self):
        return not self.failures()

    def intertwiners(self, other):
        """Pairs ``(A, B)`` with ``f A = B f`` characterising S-linear ``self -> other``."""
        pairs = []
        for a, b in zip(self.actions, other.actions):
            if a == Matrix.identity(a.nrows) and b == Matrix.identity(b.nrows):
                continue
            pairs.append((a, b))
        return pairs


def module_hom(x, y):
    """``Hom_S(X, Y)`` as a presented group of explicit homomorphisms."""
    return fp_hom(x.carrier, y.carrier, x.intertwiners(y))


def scalar_extension(x, module):
    """``X ⊗_Z M`` with S acting on ``M``."""
    carrier = fp_tensor(x, module.carrier)
    ident = Matrix.identity(x.ngens)
    return SModule(module.ring, carrier, [kron(ident, a) for a in module.actions], f"X⊗{module.name}")


@dataclass
class ProjectiveSummand:
    """``P = e·S^n`` for an idempotent ``e`` in ``M_n(S)`` (entries as coordinate lists)."""

    ring: RingPresentation
    idempotent: list
    name: str = "P"
    generator: bool = True

    def __post_init__(self):
        n, r = self.size, self.ring.rank
        blocks = [[self.ring.left_matrix(self.idempotent[a][b]) for b in range(n)] for a in range(n)]
        E = Matrix.from_entries(
            n * r,
            n * r,
            {(a * r + i, b * r + j): v for a in range(n) for b in range(n) for i, j, v in blocks[a][b].nonzero()},
        )
        if E @ E != E:
            raise ValueError("e is not idempotent")
        self.matrix = E
        self.basis = lattice_basis(E)
        actions = []
        for k in range(r):
            R = block_diag([self.ring.right_matrix(self.ring.basis(k))] * n)
            actions.append(int_solve(self.basis, R @ self.basis))
        self.module = SModule(self.ring, FPAbGroup.free(self.basis.ncols), actions, self.name)

    @property
    def size(self):
        return len(self.idempotent)

    @property
    def rank(self):
        return self.basis.ncols


class HomTensorMonad(StrongMonad):
    """``T(X) = Hom_S(P, X ⊗ P)``."""

    def __init__(self, summand, name=None):
        super().__init__(FPAB)
        self.P = summand
        self.name = name or f"homtensor:{summand.ring.name}:{summand.name}"

    def extension(self, x):
        return self._memo(("ext", x), lambda: scalar_extension(x, self.P.module))

    def obj(self, x):
        return self._memo(("obj", x), lambda: module_hom(self.P.module, self.extension(x)))

    def _from_morphisms(self, source, target, morphisms):
        cols = [target.coordinates(FPMorphism(target.source, target.target, m, check=False)) for m in morphisms]
        return FPMorphism(source, target, Matrix.from_columns(cols, target.ngens), check=False)

    def fmap(self, f):
        tx, ty = self.obj(f.source), self.obj(f.target)
        lift = kron(f.matrix, Matrix.identity(self.P.rank))
        return self._from_morphisms(tx, ty, [lift @ tx.morphism(_unit(tx.ngens, k)).matrix for k in range(tx.ngens)])

    def eta(self, x):
        def build():
            tx, p = self.obj(x), self.P.rank
            mats = [Matrix.from_entries(x.ngens * p, p, {(i * p + j, j): 1 for j in range(p)}) for i in range(x.ngens)]
            return self._from_morphisms(x, tx, mats)

        return self._memo(("eta", x), build)

    def mu(self, x):
        def build():
            tx = self.obj(x)
            ttx = self.obj(tx)
            p = self.P.rank
            ev = hstack([tx.morphism(_unit(tx.ngens, k)).matrix for k in range(tx.ngens)], x.ngens * p)
            return self._from_morphisms(ttx, tx, [ev @ ttx.morphism(_unit(ttx.ngens, k)).matrix for k in range(ttx.ngens)])

        return self._memo(("mu", x), build)

    def sigma(self, x, y):
        def build():
            ty = self.obj(y)
            txy = self.obj(FPAB.tensor(x, y))
            mats = []
            for i in range(x.ngens):
                col = Matrix.from_columns([_unit(x.ngens, i)], x.ngens)
                for k in range(ty.ngens):
                    mats.append(kron(col, ty.morphism(_unit(ty.ngens, k)).matrix))
            return self._from_morphisms(FPAB.tensor(x, ty), txy, mats)

        return self._memo(("sigma", x, y), build)


def _unit(n, k):
    return [int(i == k) for i in range(n)]


def hom_tensor_monad(ring, summand):
    if summand.ring is not ring and summand.ring.table != ring.table:
        raise ValueError("summand lives over a different ring")
    return HomTensorMonad(summand)


# Presets


def summand_presets():
    z, zxz, m2z, c2 = ring_z(), ring_zxz(), ring_m2z(), ring_c2()
    return {
        "Z:Z": ProjectiveSummand(z, [[[1]]], "Z"),
        "Z:Z2": ProjectiveSummand(z, [[[1], [0]], [[0], [1]]], "Z2"),
        "ZxZ:first": ProjectiveSummand(zxz, [[[1, 0]]], "first", generator=False),
        "ZxZ:S": ProjectiveSummand(zxz, [[[1, 1]]], "S"),
        "M2Z:e11": ProjectiveSummand(m2z, [[[1, 0, 0, 0]]], "e11"),
        "C2:S": ProjectiveSummand(c2, [[[1, 0]]], "S"),
    }


def hom_tensor_preset(name):
    presets = summand_presets()
    if name not in presets:
        raise ValueError(f"unknown summand preset {name!r}; choose from {sorted(presets)}")
    return HomTensorMonad(presets[name])


def _diag_module(ring, name, parts):
    """Direct sum of cyclic pieces ``(order, action coefficients per basis element)``."""
    rels = [order for order, _ in parts]
    n = len(parts)
    carrier = FPAbGroup(Matrix.from_columns([[o if i == k else 0 for i in range(n)] for k, o in enumerate(rels) if o], n), n)
    actions = [Matrix.diagonal([coeffs[b] for _, coeffs in parts]) for b in range(ring.rank)]
    return SModule(ring, carrier, actions, name)


def _row_module(ring, name, orders):
    """Row vectors over ``M_2(Z)`` (copies ``(Z/k)^2``) with ``y -> y E_ij``."""
    n = 2 * len(orders)
    rels = []
    for c, k in enumerate(orders):
        if k:
            for t in range(2):
                rels.append([k if i == 2 * c + t else 0 for i in range(n)])
    carrier = FPAbGroup(Matrix.from_columns(rels, n), n)
    actions = []
    for b in range(4):
        i, j = divmod(b, 2)
        actions.append(Matrix.from_entries(n, n, {(2 * c + j, 2 * c + i): 1 for c in range(len(orders))}))
    return SModule(ring, carrier, actions, name)


def module_battery(ring):
    """Seeded S-module battery; nine modules for Z."""
    name = ring.name
    if name == "Z":
        layout = [
            ("0", []),
            ("Z", [0]),
            ("Z^2", [0, 0]),
            ("Z/2", [2]),
            ("Z/4", [4]),
            ("Z/6", [6]),
            ("Z/2+Z", [2, 0]),
            ("Z/2+Z/4", [2, 4]),
            ("Z/3+Z", [3, 0]),
        ]
        return [_diag_module(ring, label, [(o, [1]) for o in orders]) for label, orders in layout]
    if name == "ZxZ":
        return [
            _diag_module(ring, "first", [(0, [1, 0])]),
            _diag_module(ring, "second", [(0, [0, 1])]),
            _diag_module(ring, "S", [(0, [1, 0]), (0, [0, 1])]),
            _diag_module(ring, "Z/2(first)+Z/3(second)", [(2, [1, 0]), (3, [0, 1])]),
            _diag_module(ring, "Z/4(second)", [(4, [0, 1])]),
        ]
    if name == "C2":
        return [
            _diag_module(ring, "trivial", [(0, [1, 1])]),
            _diag_module(ring, "sign", [(0, [1, -1])]),
            SModule(ring, FPAbGroup.free(2), [Matrix.identity(2), ring.right_matrix([0, 1])], "S"),
            _diag_module(ring, "Z/2 trivial", [(2, [1, 1])]),
            _diag_module(ring, "Z/3 sign", [(3, [1, -1])]),
        ]
    if name == "M2Z":
        return [
            _row_module(ring, "Z^2 rows", [0]),
            _row_module(ring, "(Z/2)^2 rows", [2]),
            _row_module(ring, "(Z/3)^2 rows", [3]),
            _row_module(ring, "S", [0, 0]),
        ]
    raise ValueError(f"no module battery for ring {name!r}")


# Endomorphism ring and round trips


@dataclass
class EndoRing:
    """``R = End_S(P)`` with basis morphisms and composition table ``m(a, b) = a ∘ b``."""

    ring: RingPresentation
    hom: object
    morphisms: list

    def matrix(self, coords):
        return self.hom.morphism(coords).matrix


def endo_ring(summand):
    hom = module_hom(summand.module, summand.module)
    if not hom.is_free():
        raise ValueError("endomorphisms of a projective summand should form a free group")
    r = hom.ngens
    mats = [hom.morphism(_unit(r, k)) for k in range(r)]
    table = [[list(hom.coordinates(mats[a] @ mats[b])) for b in range(r)] for a in range(r)]
    unit = list(hom.coordinates(FPMorphism.identity(summand.module.carrier)))
    ring = RingPresentation(f"End({summand.name})", table, unit)
    return EndoRing(ring, hom, mats)


def tensor_over(y_carrier, y_actions, p_carrier, p_actions):
    """``Y ⊗_R P`` for a right action on ``Y`` and a left action on ``P``, both per basis element."""
    n, p = y_carrier.ngens, p_carrier.ngens
    base = fp_tensor(y_carrier, p_carrier)
    cols = []
    for ya, pa in zip(y_actions, p_actions):
        for k in range(n):
            for j in range(p):
                v = {}
                for m, c in enumerate(ya.column(k)):
                    if c:
                        v[m * p + j] = v.get(m * p + j, 0) + c
                for l, c in enumerate(pa.column(j)):
                    if c:
                        v[k * p + l] = v.get(k * p + l, 0) - c
                cols.append([v.get(i, 0) for i in range(n * p)])
    rels = hstack([base.relations, Matrix.from_columns(cols, n * p)], n * p)
    return FPAbGroup(rels, n * p)


@dataclass
class RoundTrip:
    module: str
    iso: bool
    hom_size: tuple
    back_size: tuple
    module_size: tuple


@dataclass
class RoundTripReport:
    preset: str
    generator: bool
    results: list = field(default_factory=list)
    scope: str = SCOPE

    @property
    def ok(self):
        return all(r.iso for r in self.results)

    @property
    def witness(self):
        return next((r for r in self.results if not r.iso), None)

    def as_dict(self):
        w = self.witness
        return {
            "preset": self.preset,
            "generator": self.generator,
            "checked": len(self.results),
            "all_iso": self.ok,
            "witness": None if w is None else w.module,
            "scope": self.scope,
        }


def comparison_functor(summand, module, endo=None):
    """``φ(X) = Hom_S(P, X)`` with its right ``End(P)``-action ``f -> f ∘ a``."""
    endo = endo or endo_ring(summand)
    hom = module_hom(summand.module, module)
    actions = []
    for a in endo.morphisms:
        cols = [hom.coordinates(hom.morphism(_unit(hom.ngens, k)) @ a) for k in range(hom.ngens)]
        actions.append(Matrix.from_columns(cols, hom.ngens))
    return SModule(endo.ring, FPAbGroup(hom.relations, hom.ngens), actions, f"Hom(P,{module.name})"), hom


def counit_map(summand, module, endo=None):
    """Evaluation ``Hom_S(P, X) ⊗_R P -> X``."""
    endo = endo or endo_ring(summand)
    phi, hom = comparison_functor(summand, module, endo)
    P = summand.module.carrier
    back = tensor_over(phi.carrier, phi.actions, P, [a.matrix for a in endo.morphisms])
    cols = []
    for k in range(hom.ngens):
        h = hom.morphism(_unit(hom.ngens, k))
        for j in range(P.ngens):
            cols.append(h.matrix.column(j))
    ev = FPMorphism(back, module.carrier, Matrix.from_columns(cols, module.carrier.ngens))
    return ev, phi


def comparison_algebra(T, module):
    """``Hom_S(P, X)`` as a T-algebra: ``Ψ -> ev ∘ Ψ`` for the hom-tensor monad ``T``."""
    from .algebras import TAlgebra

    hom = module_hom(T.P.module, module)
    carrier = FPAbGroup(hom.relations, hom.ngens)
    t = T.obj(carrier)
    ev = hstack([hom.morphism(_unit(hom.ngens, k)).matrix for k in range(hom.ngens)], module.carrier.ngens)
    cols = []
    for k in range(t.ngens):
        psi = t.morphism(_unit(t.ngens, k)).matrix
        cols.append(hom.coordinates(FPMorphism(hom.source, hom.target, ev @ psi, check=False)))
    xi = FPMorphism(t, carrier, Matrix.from_columns(cols, hom.ngens), check=False)
    return TAlgebra(T, carrier, xi)


def gabriel_roundtrip(summand, modules=None, preset=None):
    """Check ``Hom_S(P, X) ⊗_R P -> X`` is an isomorphism for each battery module."""
    modules = module_battery(summand.ring) if modules is None else modules
    endo = endo_ring(summand)
    rep = RoundTripReport(preset or f"{summand.ring.name}:{summand.name}", summand.generator)
    for m in modules:
        ev, phi = counit_map(summand, m, endo)
        rep.results.append(RoundTrip(m.name, ev.is_iso(), phi.carrier.canonical, ev.source.canonical, m.carrier.canonical))
    return rep


def unit_map(summand, rmodule, endo=None):
    """``Y -> Hom_S(P, Y ⊗_R P)`` for a right ``End(P)``-module ``Y`` (``y -> (p -> y ⊗ p)``)."""
    endo = endo or endo_ring(summand)
    P = summand.module
    yp = tensor_over(rmodule.carrier, rmodule.actions, P.carrier, [a.matrix for a in endo.morphisms])
    target = SModule(summand.ring, yp, [kron(Matrix.identity(rmodule.carrier.ngens), a) for a in P.actions], "Y⊗P")
    hom = module_hom(P, target)
    p = P.carrier.ngens
    cols = []
    for i in range(rmodule.carrier.ngens):
        m = Matrix.from_entries(yp.ngens, p, {(i * p + j, j): 1 for j in range(p)})
        cols.append(hom.coordinates(FPMorphism(P.carrier, yp, m, check=False)))
    return FPMorphism(rmodule.carrier, FPAbGroup(hom.relations, hom.ngens), Matrix.from_columns(cols, hom.ngens))


def morita_check(summand, endo_modules):
    """Both round trips: counit iso on S-modules and unit iso on ``End(P)``-modules."""
    endo = endo_ring(summand)
    forward = gabriel_roundtrip(summand)
    backward = []
    for y in endo_modules:
        if not y.check():
            raise ValueError(f"{y.name} is not an End(P)-module")
        backward.append((y.name, unit_map(summand, y, endo).is_iso()))
    return forward, backward


def endo_row_modules(endo, orders_list):
    """Right ``End(P)``-modules of row vectors ``y -> y · mat(a)`` for rank-2 ``P``."""
    out = []
    for orders in orders_list:
        n = 2 * len(orders)
        rels = []
        for c, k in enumerate(orders):
            if k:
                for t in range(2):
                    rels.append([k if i == 2 * c + t else 0 for i in range(n)])
        carrier = FPAbGroup(Matrix.from_columns(rels, n), n)
        actions = [block_diag([a.matrix.T] * len(orders)) for a in endo.morphisms]
        label = "+".join(f"(Z/{k})^2" if k else "Z^2" for k in orders)
        out.append(SModule(endo.ring, carrier, actions, label))
    return out


def orientation_oracle(summand):
    """Brute-force the orientation of ``T(I)``'s multiplication against composition.

    Returns ``"composition"`` if ``m(a ⊗ b) = a ∘ b`` on all basis pairs,
    ``"opposite"`` if ``m(a ⊗ b) = b ∘ a``, else ``None``.
    """
    from .monad import unit_monoid_data

    T = HomTensorMonad(summand)
    m = unit_monoid_data(T)
    hom = T.obj(FPAB.unit())
    r = hom.ngens
    mats = [hom.morphism(_unit(r, k)).matrix for k in range(r)]
    forward = opposite = True
    for a in range(r):
        for b in range(r):
            prod = hom.morphism(m.mult.matrix.column(a * r + b)).matrix
            forward &= prod == mats[a] @ mats[b]
            opposite &= prod == mats[b] @ mats[a]
    if forward:
        return "composition"
    return "opposite" if opposite else None
