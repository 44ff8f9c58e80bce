"""Nonnegatively graded chain complexes over the integers or the rationals.

Levels are free modules of finite rank; a complex is stored as its level
ranks and the differentials ``d_n: C_n -> C_{n-1}``.  Sign conventions:

* mapping cone: ``Cone(f)_n = X_{n-1} + Y_n`` with ``D(x, y) = (-dx, fx + dy)``;
* suspension: ``(ΣX)_n = X_{n-1}`` with differential ``-d``;
* tensor product: ``d(x ⊗ y) = dx ⊗ y + (-1)^|x| x ⊗ dy``, and the symmetry
  carries the Koszul sign ``(-1)^(|x||y|)``.

Homology over the integers goes through the Smith normal form and may have
torsion; over the rationals it is a dimension.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import cached_property

from .linalg import (
    Complement,
    FPAbGroup,
    FPMorphism,
    Matrix,
    block_diag,
    hstack,
    int_kernel,
    int_solve,
    kernel,
    kron,
    rank,
    rat_kernel,
    rat_solve,
    solve,
    vstack,
)

GROUNDS = ("Q", "Z")


class ChainComplex:
    """A bounded complex of finite free modules.

    ``d[k]`` is the differential out of degree ``k + 1``.

    >>> S2 = ChainComplex("Q", [0, 0, 1])
    >>> [homology(S2, n) for n in range(4)]
    [0, 0, 1, 0]
    """

    def __init__(self, ground, dims, d=None, check=True):
        if ground not in GROUNDS:
            raise ValueError(f"unknown ground ring {ground!r}")
        dims = list(dims)
        if any((not isinstance(n, int)) or n < 0 for n in dims):
            raise ValueError("level ranks must be nonnegative integers")
        if d is None:
            d = [Matrix.zero(dims[k], dims[k + 1]) for k in range(len(dims) - 1)]
        d = list(d)
        if len(d) != max(len(dims) - 1, 0):
            raise ValueError("need one differential per positive degree")
        for k, m in enumerate(d):
            if m.shape != (dims[k], dims[k + 1]):
                raise ValueError(f"d_{k + 1} has shape {m.shape}, expected {(dims[k], dims[k + 1])}")
            if ground == "Z" and not m.is_integral():
                raise ValueError("integer complex with non-integer differential")
        while dims and dims[-1] == 0:
            dims.pop()
            if d:
                d.pop()
        self.ground = ground
        self.dims = tuple(dims)
        self.d = tuple(d)
        if check:
            for k in range(1, len(self.d)):
                if not (self.d[k - 1] @ self.d[k]).is_zero():
                    raise ValueError(f"d_{k} d_{k + 1} != 0")

    @property
    def top(self):
        return len(self.dims) - 1

    def dim(self, n):
        return self.dims[n] if 0 <= n < len(self.dims) else 0

    def diff(self, n):
        """The differential ``C_n -> C_{n-1}`` as a matrix."""
        if 1 <= n <= self.top:
            return self.d[n - 1]
        return Matrix.zero(self.dim(n - 1), self.dim(n))

    def is_zero(self):
        return not self.dims

    def total_dim(self):
        return sum(self.dims)

    def __eq__(self, other):
        return (
            isinstance(other, ChainComplex)
            and self.ground == other.ground
            and self.dims == other.dims
            and self.d == other.d
        )

    def __hash__(self):
        return hash((self.ground, self.dims, self.d))

    def __repr__(self):
        return f"ChainComplex({self.ground}, dims={list(self.dims)})"

    @classmethod
    def zero(cls, ground="Q"):
        return cls(ground, [])

    @classmethod
    def point(cls, ground="Q", degree=0, rank=1):
        """``ground^rank`` concentrated in one degree."""
        return cls(ground, [0] * degree + [rank])

    @classmethod
    def disk(cls, ground="Q", degree=1):
        """Identity ``R -> R`` from ``degree`` to ``degree - 1``."""
        dims = [0] * (degree - 1) + [1, 1]
        d = [Matrix.zero(dims[k], dims[k + 1]) for k in range(len(dims) - 1)]
        d[-1] = Matrix.identity(1)
        return cls(ground, dims, d)

    def to_json(self):
        return {"ground": self.ground, "dims": list(self.dims), "d": [m.to_json() for m in self.d]}

    @classmethod
    def from_json(cls, data):
        if not isinstance(data, dict):
            raise ValueError("chain complex must be a JSON object")
        try:
            ground, dims = data["ground"], data["dims"]
        except KeyError as exc:
            raise ValueError(f"missing key {exc}") from None
        raw = data.get("d", [])
        if not isinstance(dims, list) or not isinstance(raw, list):
            raise ValueError("dims and d must be lists")
        if len(raw) != max(len(dims) - 1, 0):
            raise ValueError("need one differential per positive degree")
        d = [Matrix.from_json(m, dims[k], dims[k + 1]) for k, m in enumerate(raw)]
        return cls(ground, dims, d)

    def to_ground(self, ground):
        if ground == self.ground:
            return self
        if ground == "Z":
            return ChainComplex("Z", self.dims, self.d)
        return ChainComplex("Q", self.dims, self.d, check=False)


class ChainMap:
    """Degree-zero chain map given by one matrix per degree."""

    def __init__(self, source, target, components, check=True):
        if source.ground != target.ground:
            raise ValueError("chain map between different ground rings")
        span = max(len(source.dims), len(target.dims))
        comps = list(components)[:span] if isinstance(components, (list, tuple)) else components
        comps = list(comps)
        for n, m in enumerate(comps):
            if m.shape != (target.dim(n), source.dim(n)):
                raise ValueError(f"component {n} has shape {m.shape}")
        while len(comps) < span:
            n = len(comps)
            comps.append(Matrix.zero(target.dim(n), source.dim(n)))
        self.source, self.target = source, target
        self.components = tuple(comps[:span])
        if check:
            for n in range(1, span + 1):
                if self.comp(n - 1) @ source.diff(n) != target.diff(n) @ self.comp(n):
                    raise ValueError(f"not a chain map in degree {n}")

    @property
    def ground(self):
        return self.source.ground

    def comp(self, n):
        if 0 <= n < len(self.components):
            return self.components[n]
        return Matrix.zero(self.target.dim(n), self.source.dim(n))

    @classmethod
    def identity(cls, c):
        return cls(c, c, [Matrix.identity(n) for n in c.dims], check=False)

    @classmethod
    def zero(cls, source, target):
        return cls(source, target, [], check=False)

    def __matmul__(self, other):
        if other.target.dims != self.source.dims:
            raise ValueError("composing incompatible chain maps")
        span = max(len(other.source.dims), len(self.target.dims))
        return ChainMap(other.source, self.target, [self.comp(n) @ other.comp(n) for n in range(span)], check=False)

    def __add__(self, other):
        return ChainMap(self.source, self.target, [a + b for a, b in zip(self.components, other.components)], check=False)

    def __neg__(self):
        return ChainMap(self.source, self.target, [-a for a in self.components], check=False)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c):
        return ChainMap(self.source, self.target, [a.scaled(c) for a in self.components], check=False)

    def equals(self, other):
        return (
            self.source.dims == other.source.dims
            and self.target.dims == other.target.dims
            and self.components == other.components
        )

    __eq__ = equals

    def __hash__(self):
        return hash(self.components)

    def is_zero(self):
        return all(m.is_zero() for m in self.components)

    def is_iso(self):
        """Degreewise invertible (over the ground ring)."""
        for n in range(len(self.components)):
            m = self.comp(n)
            if m.nrows != m.ncols:
                return False
            if self.ground == "Q":
                if rank(m) != m.nrows:
                    return False
            elif m.nrows and int_solve(m, Matrix.identity(m.nrows)) is None:
                return False
        return True

    def inverse(self):
        comps = []
        for m in self.components:
            inv = solve(m, Matrix.identity(m.nrows), self.ground) if m.nrows else m.T
            if inv is None:
                raise ValueError("chain map is not invertible")
            comps.append(inv)
        return ChainMap(self.target, self.source, comps, check=False)

    def __repr__(self):
        return f"ChainMap({self.source!r} -> {self.target!r})"


@dataclass(frozen=True)
class CofibreSeq:
    """A cofibration ``i: X -> Y`` with its quotient ``q: Y -> Y/X``."""

    i: ChainMap
    q: ChainMap

    def check(self):
        if not (self.q @ self.i).is_zero():
            raise ValueError("q∘i != 0")
        if not is_cofibration(self.i):
            raise ValueError("i is not a cofibration")
        for n in range(len(self.q.components)):
            m = self.q.comp(n)
            if rank(m) != m.nrows:
                raise ValueError("q is not surjective")
            if rank(m) + rank(self.i.comp(n)) != m.ncols:
                raise ValueError("kernel of q is not the image of i")
        return True


# Homology


class _Homology:
    """Cycles, boundaries and a splitting of homology in one degree."""

    def __init__(self, c, n):
        self.ground = c.ground
        dn, dn1 = c.diff(n), c.diff(n + 1)
        self.cycles = kernel(dn, c.ground) if dn.ncols else Matrix.zero(0, 0)
        dim = c.dim(n)
        if dn.nrows == 0:
            self.cycles = Matrix.identity(dim)
        k = self.cycles.ncols
        if k and dn1.ncols:
            self.boundaries = solve(self.cycles, dn1, c.ground)
        else:
            self.boundaries = Matrix.zero(k, dn1.ncols)
        if c.ground == "Z":
            self.group = FPAbGroup(self.boundaries, k)
        else:
            comp = Complement(self.boundaries, "Q")
            self.proj, self.section, self.dim = comp.proj, comp.section, comp.dim

    def cycle_coordinates(self, vectors):
        if self.cycles.ncols == 0:
            return Matrix.zero(0, vectors.ncols)
        return solve(self.cycles, vectors, self.ground)


def _homology_data(c, n):
    cache = c.__dict__.setdefault("_hcache", {})
    if n not in cache:
        cache[n] = _Homology(c, n)
    return cache[n]


def homology(c, n):
    """``H_n`` as a dimension (rationals) or an FPAbGroup (integers)."""
    if n < 0:
        raise ValueError("negative degree")
    h = _homology_data(c, n)
    return h.group if c.ground == "Z" else h.dim


def homology_canonical(c, n):
    """Homology as a comparable value: an int over Q, a canonical form over Z."""
    h = homology(c, n)
    return h.canonical if c.ground == "Z" else h


def betti(c, up_to=None):
    top = c.top + 1 if up_to is None else up_to
    return [homology_canonical(c, n) for n in range(top + 1)]


def euler_characteristic(c):
    return sum((-1) ** n * d for n, d in enumerate(c.dims))


def is_acyclic(c, up_to=None):
    top = c.top if up_to is None else up_to
    for n in range(top + 1):
        h = homology(c, n)
        if (h.is_trivial() if c.ground == "Z" else h == 0) is False:
            return False
    return True


def induced_map(f, n):
    """``H_n(f)``: an FPMorphism over Z, a matrix in homology coordinates over Q."""
    hx, hy = _homology_data(f.source, n), _homology_data(f.target, n)
    images = f.comp(n) @ hx.cycles if hx.cycles.ncols else Matrix.zero(f.target.dim(n), 0)
    coords = hy.cycle_coordinates(images)
    if coords is None:
        raise ValueError("chain map does not send cycles to cycles")
    if f.ground == "Z":
        return FPMorphism(hx.group, hy.group, coords, check=False)
    return hy.proj @ coords @ hx.section


def induces_iso(f, n):
    h = induced_map(f, n)
    if f.ground == "Z":
        return h.is_iso()
    return h.nrows == h.ncols and rank(h) == h.nrows


def induces_iso_through(f, k):
    """Whether ``H_n(f)`` is an isomorphism for every ``n <= k``."""
    return all(induces_iso(f, n) for n in range(k + 1))


def _default_range(f):
    return max(f.source.top + 1, f.target.top) + 1


def is_quasi_iso(f, up_to=None):
    """Whether the mapping cone of ``f`` has no homology in degrees ``<= up_to``.

    Over the integers this is decided on induced maps of homology groups:
    isomorphisms below ``up_to`` and a surjection in degree ``up_to``.
    """
    k = _default_range(f) if up_to is None else up_to
    if f.ground == "Q":
        cone, _ = mapping_cone(f)
        return is_acyclic(cone, k)
    for n in range(k):
        if not induced_map(f, n).is_iso():
            return False
    return induced_map(f, k).is_surjective()


# Constructions


def direct_sum(complexes):
    """Direct sum with its injections and projections."""
    complexes = list(complexes)
    ground = complexes[0].ground
    top = max((c.top for c in complexes), default=-1)
    dims = [sum(c.dim(n) for c in complexes) for n in range(top + 1)]
    d = [block_diag([c.diff(n) for c in complexes]) for n in range(1, top + 1)]
    total = ChainComplex(ground, dims, d, check=False)
    inj, proj = [], []
    for idx, c in enumerate(complexes):
        ic, pc = [], []
        for n in range(top + 1):
            off = sum(x.dim(n) for x in complexes[:idx])
            ic.append(Matrix.identity(c.dim(n)).place(dims[n], c.dim(n), off, 0))
            pc.append(Matrix.identity(c.dim(n)).place(c.dim(n), dims[n], 0, off))
        inj.append(ChainMap(c, total, ic, check=False))
        proj.append(ChainMap(total, c, pc, check=False))
    return total, inj, proj


def map_into_sum(target, maps):
    """``(f_1, ..., f_k): X -> Y_1 + ... + Y_k``."""
    src = maps[0].source
    span = max(len(src.dims), len(target.dims))
    return ChainMap(src, target, [vstack([f.comp(n) for f in maps], src.dim(n)) for n in range(span)], check=False)


def map_from_sum(source, maps):
    """``[f_1, ..., f_k]: X_1 + ... + X_k -> Y``."""
    tgt = maps[0].target
    span = max(len(source.dims), len(tgt.dims))
    return ChainMap(source, tgt, [hstack([f.comp(n) for f in maps], tgt.dim(n)) for n in range(span)], check=False)


def suspension(c):
    """Shift up by one with negated differential."""
    if c.is_zero():
        return c
    dims = [0] + list(c.dims)
    d = [Matrix.zero(0, c.dim(0))] + [-m for m in c.d]
    return ChainComplex(c.ground, dims, d, check=False)


def suspension_map(f):
    return ChainMap(
        suspension(f.source),
        suspension(f.target),
        [Matrix.zero(0, 0)] + list(f.components),
        check=False,
    )


def mapping_cone(f):
    """The cone of ``f`` and the cofibre sequence ``Y -> Cone(f) -> ΣX``."""
    x, y = f.source, f.target
    top = max(x.top + 1, y.top)
    dims = [x.dim(n - 1) + y.dim(n) for n in range(top + 1)]
    d = []
    for n in range(1, top + 1):
        upper = hstack([-x.diff(n - 1), Matrix.zero(x.dim(n - 2), y.dim(n))], x.dim(n - 2))
        lower = hstack([f.comp(n - 1), y.diff(n)], y.dim(n - 1))
        d.append(vstack([upper, lower], x.dim(n - 1) + y.dim(n)))
    cone = ChainComplex(x.ground, dims, d)
    i = ChainMap(y, cone, [Matrix.identity(y.dim(n)).place(dims[n], y.dim(n), x.dim(n - 1), 0) for n in range(top + 1)], check=False)
    sx = suspension(x)
    q = ChainMap(cone, sx, [Matrix.identity(x.dim(n - 1)).place(x.dim(n - 1), dims[n], 0, 0) for n in range(top + 1)], check=False)
    return cone, CofibreSeq(i, q)


def cone_on(c):
    """The cone ``CX = Cone(id_X)`` with the inclusion ``X -> CX``."""
    cone, seq = mapping_cone(ChainMap.identity(c))
    return cone, seq.i


def is_cofibration(f):
    """Degreewise injective, with free cokernel over the integers."""
    for n in range(len(f.components)):
        m = f.comp(n)
        if m.ncols == 0:
            continue
        if rank(m) != m.ncols:
            return False
        if f.ground == "Z":
            try:
                Complement(m, "Z")
            except ValueError:
                return False
    return True


def cokernel(f):
    """Degreewise cokernel ``Y / f(X)`` and the quotient map.

    Over the integers the cokernel must be free in every degree.
    """
    y = f.target
    comps = [Complement(f.comp(n), f.ground) for n in range(y.top + 1)]
    dims = [c.dim for c in comps]
    d = [comps[n - 1].proj @ y.diff(n) @ comps[n].section for n in range(1, y.top + 1)]
    quotient = ChainComplex(y.ground, dims, d, check=False)
    q = ChainMap(y, quotient, [c.proj for c in comps], check=False)
    return quotient, q


def cofibre_sequence(i):
    if not is_cofibration(i):
        raise ValueError("not a cofibration")
    _, q = cokernel(i)
    return CofibreSeq(i, q)


def quotient_map(seq_a, seq_b, f):
    """Map ``Y/X -> Y'/X'`` induced by ``f: Y -> Y'`` between cofibre sequences."""
    qa, qb = seq_a.q, seq_b.q
    sections = []
    for n in range(len(qa.target.dims)):
        sec = solve(qa.comp(n), Matrix.identity(qa.target.dim(n)), f.ground)
        sections.append(sec)
    comps = [qb.comp(n) @ f.comp(n) @ sections[n] for n in range(len(sections))]
    return ChainMap(qa.target, qb.target, comps)


def pushout(f, g):
    """Pushout of ``B <-f- A -g-> C`` with the maps from ``B`` and ``C``."""
    if f.source.dims != g.source.dims:
        raise ValueError("pushout needs a common source")
    b, c = f.target, g.target
    total, inj, _ = direct_sum([b, c])
    fg = map_into_sum(total, [f, -g])
    p, q = cokernel(fg)
    return p, q @ inj[0], q @ inj[1]


def pushout_comparison(f, g, u, v):
    """Pushout ``P`` of ``B <-f- A -g-> C`` and the map ``P -> D`` induced by ``u: B->D``, ``v: C->D``."""
    if not (u @ f).equals(v @ g):
        raise ValueError("maps out of the span do not agree on the apex")
    p, _, _ = pushout(f, g)
    total, _, _ = direct_sum([f.target, g.target])
    _, q = cokernel(map_into_sum(total, [f, -g]))
    into = map_from_sum(total, [u, v])
    sections = [solve(q.comp(n), Matrix.identity(p.dim(n)), f.ground) for n in range(p.top + 1)]
    return p, ChainMap(p, u.target, [into.comp(n) @ sections[n] for n in range(p.top + 1)])


def pushout_map(span_a, span_b, maps):
    """Induced map of pushouts from maps ``a: A->A'``, ``b: B->B'``, ``c: C->C'``."""
    (f, g), (f2, g2) = span_a, span_b
    a, b, c = maps
    if not (b @ f).equals(f2 @ a) or not (c @ g).equals(g2 @ a):
        raise ValueError("spans do not commute with the comparison maps")
    p, jb, jc = pushout(f, g)
    p2, jb2, jc2 = pushout(f2, g2)
    total, inj, proj = direct_sum([f.target, g.target])
    source_map = map_from_sum(total, [jb2 @ b, jc2 @ c])
    _, q = cokernel(map_into_sum(total, [f, -g]))
    sections = [solve(q.comp(n), Matrix.identity(p.dim(n)), f.ground) for n in range(p.top + 1)]
    comps = [source_map.comp(n) @ sections[n] for n in range(p.top + 1)]
    return ChainMap(p, p2, comps)


def tensor_offsets(x, y, n):
    """Offsets of the summands ``X_p ⊗ Y_(n-p)`` inside ``(X⊗Y)_n``."""
    offs, off = {}, 0
    for p in range(n + 1):
        offs[p] = off
        off += x.dim(p) * y.dim(n - p)
    return offs, off


def tensor(x, y):
    """Tensor product of complexes with the Koszul sign rule."""
    if x.ground != y.ground:
        raise ValueError("tensor of complexes over different rings")
    if x.is_zero() or y.is_zero():
        return ChainComplex.zero(x.ground)
    top = x.top + y.top
    dims = [tensor_offsets(x, y, n)[1] for n in range(top + 1)]
    d = []
    for n in range(1, top + 1):
        src, _ = tensor_offsets(x, y, n)
        tgt, _ = tensor_offsets(x, y, n - 1)
        entries = {}
        for p in range(n + 1):
            q = n - p
            if x.dim(p) == 0 or y.dim(q) == 0:
                continue
            if p >= 1:
                blk = kron(x.diff(p), Matrix.identity(y.dim(q)))
                for i, j, v in blk.nonzero():
                    key = (tgt[p - 1] + i, src[p] + j)
                    entries[key] = entries.get(key, 0) + v
            if q >= 1:
                blk = kron(Matrix.identity(x.dim(p)), y.diff(q))
                sign = -1 if p % 2 else 1
                for i, j, v in blk.nonzero():
                    key = (tgt[p] + i, src[p] + j)
                    entries[key] = entries.get(key, 0) + sign * v
        d.append(Matrix.from_entries(dims[n - 1], dims[n], entries))
    return ChainComplex(x.ground, dims, d, check=False)


def tensor_map(f, g, source=None, target=None):
    """``f ⊗ g`` for degree-zero chain maps (no signs arise)."""
    source = source or tensor(f.source, g.source)
    target = target or tensor(f.target, g.target)
    comps = []
    for n in range(source.top + 1):
        src, _ = tensor_offsets(f.source, g.source, n)
        tgt, _ = tensor_offsets(f.target, g.target, n)
        entries = {}
        for p in range(n + 1):
            q = n - p
            blk = kron(f.comp(p), g.comp(q))
            for i, j, v in blk.nonzero():
                entries[(tgt[p] + i, src[p] + j)] = v
        comps.append(Matrix.from_entries(target.dim(n), source.dim(n), entries))
    return ChainMap(source, target, comps, check=False)


# Random objects for property suites


def random_complex(rng, ground="Q", max_top=3, max_dim=3, entry=2, min_degree=0):
    """A seeded random complex; differentials are built inside kernels."""
    top = rng.randint(min_degree, max_top)
    dims = [0 if n < min_degree else rng.randint(0, max_dim) for n in range(top + 1)]
    d = []
    for n in range(1, top + 1):
        prev = d[-1] if d else None
        if prev is not None and prev.ncols:
            basis = int_kernel(prev) if ground == "Z" else _integral_columns(rat_kernel(prev))
        else:
            basis = Matrix.identity(dims[n - 1])
        coeffs = Matrix.from_rows(
            [[rng.randint(-entry, entry) for _ in range(dims[n])] for _ in range(basis.ncols)], dims[n]
        )
        d.append(basis @ coeffs)
    return ChainComplex(ground, dims, d)


def _integral_columns(m):
    from .linalg import clear_denominators

    return clear_denominators(m)


def chain_map_space(x, y):
    """A basis of the space of chain maps ``x -> y`` (as lists of components)."""
    span = max(len(x.dims), len(y.dims))
    offsets, total = [], 0
    for n in range(span):
        offsets.append(total)
        total += y.dim(n) * x.dim(n)
    rows = []
    for n in range(1, span + 1):
        # f_{n-1} d^x_n - d^y_n f_n = 0
        dx, dy = x.diff(n), y.diff(n)
        for a in range(y.dim(n - 1)):
            for b in range(x.dim(n)):
                row = {}
                for k, v in dx.T.row(b).items():
                    idx = offsets[n - 1] + a * x.dim(n - 1) + k
                    row[idx] = row.get(idx, 0) + v
                if n < span:
                    for k, v in dy.row(a).items():
                        idx = offsets[n] + k * x.dim(n) + b
                        row[idx] = row.get(idx, 0) - v
                rows.append({j: v for j, v in row.items() if v})
    if total == 0:
        return []
    cons = Matrix(len(rows), total, rows)
    basis = (int_kernel(cons) if x.ground == "Z" else _integral_columns(rat_kernel(cons))) if rows else Matrix.identity(total)
    maps = []
    for j in range(basis.ncols):
        col = basis.column(j)
        comps = []
        for n in range(span):
            vals = col[offsets[n]: offsets[n] + y.dim(n) * x.dim(n)]
            comps.append(Matrix.from_rows([vals[a * x.dim(n):(a + 1) * x.dim(n)] for a in range(y.dim(n))], x.dim(n)))
        maps.append(comps)
    return maps


def random_chain_map(rng, x, y, entry=2):
    basis = chain_map_space(x, y)
    span = max(len(x.dims), len(y.dims))
    comps = [Matrix.zero(y.dim(n), x.dim(n)) for n in range(span)]
    for b in basis:
        c = rng.randint(-entry, entry)
        if c:
            comps = [acc + m.scaled(c) for acc, m in zip(comps, b)]
    return ChainMap(x, y, comps)


def random_cofibration(rng, x, ground=None, **kw):
    """``(f, j): X -> Y + CX`` for a random map ``f``; always a cofibration."""
    y = random_complex(rng, x.ground, **kw)
    f = random_chain_map(rng, x, y)
    cx, j = cone_on(x)
    total, _, _ = direct_sum([y, cx])
    return map_into_sum(total, [f, j])


def random_quasi_iso(rng, x, **kw):
    """``X -> X + CZ``, a quasi-isomorphism with a random acyclic summand."""
    z = random_complex(rng, x.ground, **kw)
    cz, _ = cone_on(z)
    total, _, _ = direct_sum([x, cz])
    return map_into_sum(total, [ChainMap.identity(x), random_chain_map(rng, x, cz)])


# Excisive property checks


@dataclass
class Ladder:
    """A map of cofibre sequences ``(α, β, γ)`` from ``top`` to ``bottom``."""

    top: CofibreSeq
    bottom: CofibreSeq
    alpha: ChainMap
    beta: ChainMap
    gamma: ChainMap

    def check(self):
        if not (self.bottom.i @ self.alpha).equals(self.beta @ self.top.i):
            raise ValueError("left square of the ladder does not commute")
        if not (self.bottom.q @ self.beta).equals(self.gamma @ self.top.q):
            raise ValueError("right square of the ladder does not commute")


def saturation_check(ladder, up_to=None):
    """For each two-out-of-three implication: ``(hypothesis held, conclusion held)``."""
    ladder.check()
    weq = {name: is_quasi_iso(getattr(ladder, name), up_to) for name in ("alpha", "beta", "gamma")}
    report = {}
    for third in ("gamma", "alpha", "beta"):
        two = [n for n in ("alpha", "beta", "gamma") if n != third]
        report[f"{two[0]},{two[1]}=>{third}"] = (weq[two[0]] and weq[two[1]], weq[third])
    return report


def saturation_holds(report):
    return all(concl or not hyp for hyp, concl in report.values())


def condition_a(i, up_to=None):
    """A cofibration with acyclic quotient is a quasi-isomorphism."""
    seq = cofibre_sequence(i)
    hyp = is_acyclic(seq.q.target, up_to)
    return hyp, is_quasi_iso(i, up_to)


def condition_b(i, j, h, up_to=None):
    """``h: Y -> Y'`` under ``X`` is a weak equivalence when ``h/X`` is."""
    if not (h @ i).equals(j):
        raise ValueError("h is not a map under X")
    si, sj = cofibre_sequence(i), cofibre_sequence(j)
    hx = quotient_map(si, sj, h)
    return is_quasi_iso(hx, up_to), is_quasi_iso(h, up_to)


def homotopy_pushout_check(f, alpha, beta, g, up_to=None):
    """For a square ``beta∘f = g∘alpha`` with cofibrations ``f: A->B``, ``g: C->D``.

    Returns ``(comparison weq, parallel cofibre weq)``: whether
    ``C ∪_A B -> D`` is a quasi-isomorphism, and whether ``B/A -> D/C`` is.
    """
    if not (beta @ f).equals(g @ alpha):
        raise ValueError("square does not commute")
    if not (is_cofibration(f) and is_cofibration(g)):
        raise ValueError("horizontal maps must be cofibrations")
    _, comparison = pushout_comparison(f, alpha, beta, g)
    parallel = quotient_map(cofibre_sequence(f), cofibre_sequence(g), beta)
    return is_quasi_iso(comparison, up_to), is_quasi_iso(parallel, up_to)


def pushout_product_comparison(f, g, up_to=None):
    """``X⊗Z ∪_(X⊗V) Y⊗V -> Y⊗Z`` is a quasi-isomorphism.

    ``f: X -> Y`` is a cofibration, ``g: V -> Z`` a quasi-isomorphism.
    """
    if not is_cofibration(f):
        raise ValueError("f must be a cofibration")
    if not is_quasi_iso(g):
        raise ValueError("g must be a quasi-isomorphism")
    x, y, v, z = f.source, f.target, g.source, g.target
    xv, xz, yv, yz = tensor(x, v), tensor(x, z), tensor(y, v), tensor(y, z)
    ix = ChainMap.identity(x)
    iy = ChainMap.identity(y)
    iv = ChainMap.identity(v)
    iz = ChainMap.identity(z)
    a = tensor_map(ix, g, xv, xz)
    b = tensor_map(f, iv, xv, yv)
    _, comparison = pushout_comparison(a, b, tensor_map(f, iz, xz, yz), tensor_map(iy, g, yv, yz))
    return is_quasi_iso(comparison, up_to)


def gluing_check(back, front, maps, up_to=None):
    """Gluing lemma: quasi-isomorphic spans along cofibrations have quasi-isomorphic pushouts.

    ``back = (f, g)`` and ``front = (f', g')`` are spans ``B <- A -> C`` with
    ``f, f'`` cofibrations; ``maps = (a, b, c)`` are quasi-isomorphisms.
    """
    (f, g), (f2, g2) = back, front
    if not (is_cofibration(f) and is_cofibration(f2)):
        raise ValueError("spans must contain a cofibration")
    if not all(is_quasi_iso(m) for m in maps):
        raise ValueError("comparison maps must be quasi-isomorphisms")
    return is_quasi_iso(pushout_map(back, front, maps), up_to)


def seeded_rng(seed, *salt):
    return random.Random(f"{seed}:" + ":".join(map(str, salt)))


# Seeded excisive suite


@dataclass
class PropertyRun:
    name: str
    checked: int = 0
    exercised: int = 0
    failures: list = None

    def __post_init__(self):
        self.failures = [] if self.failures is None else self.failures

    @property
    def ok(self):
        return not self.failures

    def as_dict(self):
        return {
            "property": self.name,
            "checked": self.checked,
            "hypothesis_held": self.exercised,
            "pass": self.ok,
            "first_failure": self.failures[0] if self.failures else None,
        }


def _pushout_ladder(i, alpha):
    """Push the cofibration ``i: X -> Y`` along ``alpha: X -> X'``."""
    yp, j, beta = pushout(alpha, i)
    top, bottom = cofibre_sequence(i), cofibre_sequence(j)
    gamma = quotient_map(top, bottom, beta)
    return Ladder(top, bottom, alpha, beta, gamma)


def excisive_suite(seed=0xC0FFEE, count=50, ground="Q", max_top=3, max_dim=2):
    """Suspension conservativity, saturation, conditions (a) and (b), parallel cofibres.

    Every property is checked on ``count`` seeded instances; roughly half
    of them are built so that the hypothesis holds.
    """
    kw = {"max_top": max_top, "max_dim": max_dim}
    runs = {n: PropertyRun(n) for n in ("suspension", "saturation", "condition (a)", "condition (b)", "parallel cofibre")}
    for k in range(count):
        rng = seeded_rng(seed, "excisive", ground, k)
        x = random_complex(rng, ground, **kw)
        weq_case = k % 2 == 0
        f = random_quasi_iso(rng, x, **kw) if weq_case else random_chain_map(rng, x, random_complex(rng, ground, **kw))

        r = runs["suspension"]
        r.checked += 1
        q = is_quasi_iso(f)
        r.exercised += q
        if q != is_quasi_iso(suspension_map(f)):
            r.failures.append(k)

        i = random_cofibration(rng, x, **kw)
        alpha = random_quasi_iso(rng, x, **kw) if weq_case else random_chain_map(rng, x, random_complex(rng, ground, **kw))
        r = runs["saturation"]
        r.checked += 1
        rep = saturation_check(_pushout_ladder(i, alpha))
        r.exercised += any(h for h, _ in rep.values())
        if not saturation_holds(rep):
            r.failures.append(k)

        if weq_case:
            z = random_complex(rng, ground, **kw)
            cz, _ = cone_on(z)
            total, _, _ = direct_sum([x, cz])
            a = map_into_sum(total, [ChainMap.identity(x), random_chain_map(rng, x, cz)])
        else:
            a = i
        r = runs["condition (a)"]
        r.checked += 1
        hyp, concl = condition_a(a)
        r.exercised += hyp
        if hyp and not concl:
            r.failures.append(k)

        y = i.target
        w = cone_on(random_complex(rng, ground, **kw))[0] if weq_case else random_complex(rng, ground, **kw)
        total, _, _ = direct_sum([y, w])
        h = map_into_sum(total, [ChainMap.identity(y), random_chain_map(rng, y, w)])
        r = runs["condition (b)"]
        r.checked += 1
        hx, hw = condition_b(i, h @ i, h)
        r.exercised += hx
        if hx != hw:
            r.failures.append(k)

        c = random_complex(rng, ground, **kw)
        g0 = random_chain_map(rng, x, c)
        d, to_d, from_c = pushout(i, g0)
        extra = cone_on(random_complex(rng, ground, **kw))[0] if weq_case else random_complex(rng, ground, **kw)
        dd, inj, _ = direct_sum([d, extra])
        g = inj[0] @ from_c
        beta = inj[0] @ to_d
        r = runs["parallel cofibre"]
        r.checked += 1
        comparison, parallel = homotopy_pushout_check(i, g0, beta, g)
        r.exercised += comparison
        if comparison != parallel:
            r.failures.append(k)
    return list(runs.values())
