"""Batch driver: ``strongmonads --suite NAME [options]``.

Every check becomes one JSON line ``{suite, check, anchor, instance, bound,
pass, witness}``; a summary footer follows.  Exit status is 0 when every
check passes, 1 when one fails and 2 on malformed input.
"""

from __future__ import annotations

import argparse
import json
import sys
from collections import defaultdict

from . import chain as ch
from .algebras import (
    TAlgebra,
    adjunction_unit_check,
    bar_is_resolution,
    bar_resolution,
    check_excellent_partial,
    check_homotopically_right_exact,
    free_algebra,
    lambda_attachment,
    verify_free_cofibre_sequence,
)
from .chain import ChainComplex, ChainMap
from .gabriel import (
    endo_ring,
    endo_row_modules,
    gabriel_roundtrip,
    hom_tensor_monad,
    morita_check,
    orientation_oracle,
    ring_m2z,
    summand_presets,
)
from .linalg import Matrix
from .monad import (
    SEED,
    ChainContext,
    IdentityMonad,
    TensorAlgebraMonad,
    TensorMonad,
    UnsupportedError,
    approximation_morphism,
    check_monad_laws,
    check_monad_morphism,
    check_strength_laws,
    linearity_report,
    make_monad,
    perturbation_caught,
    seeded_perturbation,
    strength_weak_invertibility,
    unit_monoid_data,
)
from .simplicial import (
    SimplicialChainComplex,
    coend_realization,
    contraction_homology,
    fat_realize,
    fat_comparison_iso_through,
    identity_failures,
    realize,
)

SUITES = ("laws", "bar", "gabriel", "excisive", "morita", "realize")
DEFAULT_MONAD = {"laws": "identity", "bar": "tensor:Lambda", "excisive": "tensor:Lambda"}


class InputError(ValueError):
    """Malformed configuration or input file (exit status 2)."""


class Report:
    def __init__(self, suite):
        self.suite = suite
        self.records = []

    def add(self, check, anchor, instance, passed, bound=None, witness=None):
        self.records.append(
            {
                "suite": self.suite,
                "check": check,
                "anchor": anchor,
                "instance": instance,
                "bound": bound,
                "pass": bool(passed),
                "witness": witness,
            }
        )

    @property
    def ok(self):
        return all(r["pass"] for r in self.records)

    def footer(self, config):
        failed = sum(not r["pass"] for r in self.records)
        return {
            "summary": {
                "suite": self.suite,
                "records": len(self.records),
                "passed": len(self.records) - failed,
                "failed": failed,
                "seed": hex(config.seed),
                "trunc": config.trunc,
            }
        }

    def lines(self, config):
        for r in self.records + [self.footer(config)]:
            yield json.dumps(_plain(r), sort_keys=True)


def _plain(value):
    if isinstance(value, dict):
        return {str(k): _plain(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, (bool, int, float, str)) or value is None:
        return value
    return str(value)


def _monad(name, context, trunc):
    if name == "identity" and context:
        name = f"identity:{context}"
    try:
        return make_monad(name, top=trunc)
    except ValueError as exc:
        raise InputError(str(exc)) from None


# Suites


def suite_laws(cfg, rep):
    T = _monad(cfg.monad or "identity", cfg.context, cfg.trunc)
    monad = check_monad_laws(T, seed=cfg.seed)
    rep.add("monad laws", "monad associativity, unit and naturality", T.name, monad.ok,
            witness=monad.as_dict()["first_failure"])
    strength = check_strength_laws(T, seed=cfg.seed)
    by_law = defaultdict(list)
    for f in strength.failures:
        by_law[f.law].append(f)
    for law in ("unit constraint", "unit naturality", "multiplication naturality", "associativity constraint",
                "strength naturality"):
        first = by_law[law][0].as_dict() if by_law[law] else None
        rep.add(f"strength: {law}", "strength diagrams", T.name, not by_law[law], witness=first)
    phi = check_monad_morphism(approximation_morphism(T), seed=cfg.seed)
    rep.add("linear approximation is a monad morphism", "lambda: -⊗T(I) => T", T.name, phi.ok,
            witness=phi.as_dict()["first_failure"])
    lin = linearity_report(T, seed=cfg.seed)
    rep.add("linearity", "strength invertible on the battery", T.name, True,
            witness={"linear": lin.linear, "checked": lin.checked, "witness": lin.witness})
    P, labels = seeded_perturbation(T, cfg.seed, "cli")
    caught = perturbation_caught(T, P, cfg.seed)
    rep.add("perturbation caught", "single-entry perturbation of a structure map", T.name, caught, witness=labels)


def trivial_algebra(T):
    """``Q`` as an algebra: identity structure, or the augmentation of ``M`` for ``- ⊗ M``."""
    if isinstance(T, TensorAlgebraMonad):
        return free_algebra(T, ChainComplex.point("Q", 1, 1), "free on Q[1]")
    a = ChainComplex.point(T.ctx.ground, 0, 1)
    if isinstance(T, IdentityMonad):
        return TAlgebra(T, a, ChainMap.identity(a), "Q")
    ta = T.obj(a)
    aug = Matrix.from_rows([[1] + [0] * (ta.dim(0) - 1)], ta.dim(0))
    alg = TAlgebra(T, a, ChainMap(ta, a, [aug]), "trivial")
    if not alg.check():
        raise InputError(f"{T.name} has no augmentation onto the ground")
    return alg


def suite_bar(cfg, rep):
    T = _monad(cfg.monad or DEFAULT_MONAD["bar"], cfg.context or "Q", cfg.trunc)
    if not isinstance(T.ctx, ChainContext):
        raise InputError("the bar suite runs in a chain context")
    alg = trivial_algebra(T) if cfg.preset in (None, "trivial") else _free_preset(T, cfg.preset)
    k = cfg.trunc - 1
    weak = strength_weak_invertibility(T, seed=cfg.seed)
    rep.add("strength weak invertibility", "necessary condition for the homotopy theory to be modules over T(I)",
            T.name, weak, bound=k, witness=None if weak else linearity_report(T, seed=cfg.seed).witness)
    r = bar_is_resolution(alg, cfg.trunc, alg.name)
    inst = f"{T.name} / {alg.name}"
    rep.add("simplicial identities", "bar resolution", inst, not r.identities, cfg.trunc, r.identities[:1] or None)
    rep.add("extra degeneracies", "bar resolution is split augmented", inst, not r.augmentation, cfg.trunc,
            r.augmentation[:1] or None)
    rep.add("faces and degeneracies are algebra maps", "bar resolution", inst, not r.algebra_maps, cfg.trunc,
            r.algebra_maps[:1] or None)
    rep.add("(a) realization resolves A", "bar resolution is a cofibrant replacement", inst, r.resolution, k,
            {"homology": r.homology, "assumed": r.assumed})
    rep.add("(b) Reedy cofibrant", "bar resolution is Reedy cofibrant", inst, r.reedy, cfg.trunc)
    rep.add("(c) tau-cofibrant", "bar resolution is tau-cofibrant", inst, r.tau, k)


def _free_preset(T, preset):
    if preset.startswith("free:"):
        degree = preset.split(":", 1)[1]
        if not degree.isdigit():
            raise InputError(f"bad free preset {preset!r}")
        return free_algebra(T, ChainComplex.point(T.ctx.ground, int(degree), 1), f"free on Q[{degree}]")
    raise InputError(f"unknown algebra preset {preset!r}; use trivial or free:<degree>")


def _summand(cfg):
    presets = summand_presets()
    name = cfg.preset or "Z:Z2"
    if name not in presets:
        raise InputError(f"unknown summand preset {name!r}; choose from {sorted(presets)}")
    return name, presets[name]


def suite_gabriel(cfg, rep):
    name, P = _summand(cfg)
    T = hom_tensor_monad(P.ring, P)
    laws = check_monad_laws(T, seed=cfg.seed)
    rep.add("monad laws", "hom-tensor monad", name, laws.ok, witness=laws.as_dict()["first_failure"])
    strength = check_strength_laws(T, seed=cfg.seed)
    rep.add("strength laws", "hom-tensor monad", name, strength.ok, witness=strength.as_dict()["first_failure"])
    lin = linearity_report(T, seed=cfg.seed)
    rep.add("linear strength", "hom-tensor monad is linear", name, lin.linear, witness=lin.witness)
    rt = gabriel_roundtrip(P, preset=name)
    expected = "round trip iso on the battery" if P.generator else "non-generator detected"
    passed = rt.ok if P.generator else rt.witness is not None
    rep.add("round trip", expected, name, passed, witness=rt.as_dict())
    orient = orientation_oracle(P)
    rep.add("T(I) multiplication is composition in End(P)", "monoid of the unit is the endomorphism ring", name,
            orient == "composition", witness=orient)
    endo = endo_ring(P)
    unit = unit_monoid_data(T)
    rep.add("End(P) rank", "endomorphism ring", name, endo.ring.rank == unit.carrier.ngens,
            witness={"rank": endo.ring.rank})
    if name == "Z:Z2":
        rep.add("End(Z^2) = M2(Z)", "endomorphism ring", name, endo.ring.table == ring_m2z().table)


def suite_morita(cfg, rep):
    name, P = _summand(cfg)
    if P.ring.name != "Z" or P.rank != 2:
        raise InputError("the Morita suite runs on a rank-2 free summand over Z")
    endo = endo_ring(P)
    modules = endo_row_modules(endo, [[0], [2], [3], [0, 2], [2, 4]])
    forward, backward = morita_check(P, modules)
    rep.add("S-modules round trip", "Morita correspondence", name, forward.ok, witness=forward.as_dict())
    for label, ok in backward:
        rep.add("End(P)-modules round trip", "Morita correspondence", f"{name} / {label}", ok)


def suite_excisive(cfg, rep):
    k = cfg.trunc - 1
    for run in ch.excisive_suite(cfg.seed, count=50, max_top=cfg.trunc - 1):
        d = run.as_dict()
        rep.add(run.name, "excisive chain-complex model", f"{run.checked} seeded instances", run.ok, cfg.trunc,
                {"hypothesis_held": d["hypothesis_held"], "first_failure": d["first_failure"]})
    T = _monad(cfg.monad or DEFAULT_MONAD["excisive"], cfg.context or "Q", cfg.trunc)
    if not isinstance(T.ctx, ChainContext):
        raise InputError("the excisive suite runs in a chain context")
    right = check_homotopically_right_exact(T, up_to=k, seed=cfg.seed)
    rep.add("homotopically right exact", "right exactness clauses", T.name, right.ok, k,
            {"clauses": right.clauses, "first_failure": right.first_failure})
    exc = check_excellent_partial(T, seed=cfg.seed)
    rep.add("excellent (sampled clauses)", "unit cofibration and reflexive coequalizers", T.name, exc.ok, None,
            {"clauses": exc.clauses, "assumed": exc.assumed})
    unit = adjunction_unit_check(T, ChainComplex.point(T.ctx.ground, 1, 1), "Q[1]", k)
    rep.add("adjunction unit equals the strength", "unit at a free module", T.name, unit.equals_strength, k)
    weak = strength_weak_invertibility(T, up_to=k, seed=cfg.seed)
    rep.add("unit weq iff strength weq", "modules over T(I) model the algebras", T.name, unit.weq == weak, k,
            {"unit_weq": unit.weq, "strength_weq": weak})
    att = verify_free_cofibre_sequence(lambda_attachment(), cfg.trunc)
    rep.add("free cofibre sequence", "free cell attachments give homotopy cofibre sequences",
            "Lambda(x): Q[1] -> D2", att.ok, k, att.as_dict())


def _realize_input(cfg):
    if cfg.input:
        try:
            with open(cfg.input) as fh:
                data = json.load(fh)
            return SimplicialChainComplex.from_json(data)
        except (OSError, json.JSONDecodeError, ValueError, KeyError, TypeError, IndexError) as exc:
            raise InputError(f"cannot read {cfg.input}: {exc}") from None
    preset = cfg.preset or "constant"
    if preset == "constant":
        return SimplicialChainComplex.constant(ChainComplex.point("Q", 0, 1), cfg.trunc), None
    if preset == "empty":
        return SimplicialChainComplex.constant(ChainComplex.zero("Q"), cfg.trunc), None
    if preset == "bar-lambda":
        T = make_monad("tensor:Lambda")
        bar = bar_resolution(trivial_algebra(T), cfg.trunc)
        return bar.simplicial, bar.augmentation
    raise InputError(f"unknown realize preset {preset!r}; use constant, empty or bar-lambda")


def suite_realize(cfg, rep):
    X, aug = _realize_input(cfg)
    k = X.N - 1
    inst = cfg.input or cfg.preset or "constant"
    bad = identity_failures(X)
    rep.add("simplicial identities", "simplicial object", inst, not bad, X.N, bad[:1] or None)
    real = realize(X)
    fat = fat_realize(X).complex
    table = [ch.homology_canonical(real, n) for n in range(k + 1)]
    rep.add("geometric realization", "normalized totalization", inst, True, k,
            {"complex": real.to_json(), "homology": table})
    rep.add("fat realization", "totalization of the semi-simplicial object", inst, True, k,
            {"dims": list(fat.dims), "homology": [ch.homology_canonical(fat, n) for n in range(k + 1)]})
    rep.add("fat comparison", "fat to geometric realization", inst, fat_comparison_iso_through(X, k), k)
    if X.N <= 3:
        _, comp = coend_realization(X)
        rep.add("coend agrees with totalization", "realization as a coend", inst, comp.is_iso(), X.N)
    if aug is not None:
        c = contraction_homology(aug)
        rep.add("split augmentation", "extra degeneracies", inst, not c["identities"], X.N, c["identities"][:1] or None)
        rep.add("realization resolves X_-1", "split-augmented objects", inst, c["realization"] and c["fat_realization"], k)


RUNNERS = {
    "laws": suite_laws,
    "bar": suite_bar,
    "gabriel": suite_gabriel,
    "excisive": suite_excisive,
    "morita": suite_morita,
    "realize": suite_realize,
}


def _seed(text):
    try:
        return int(text, 0) if text.lower().startswith("0x") else int(text, 16)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad seed {text!r}") from None


def parser():
    p = argparse.ArgumentParser(prog="strongmonads", description="Run exact law and homotopy suites.")
    p.add_argument("--suite", choices=SUITES, required=True)
    p.add_argument("--monad", help="identity | tensor:<monoid> | tensoralg | homtensor:<S>:<P>")
    p.add_argument("--context", choices=("Q", "Z", "FPAb"), help="ground context for the identity monad")
    p.add_argument("--trunc", type=int, default=4, metavar="N", help="truncation depth (N >= 2)")
    p.add_argument("--seed", type=_seed, default=SEED, metavar="HEX")
    p.add_argument("--out", metavar="PATH", help="write JSON lines here instead of stdout")
    p.add_argument("--preset", metavar="NAME", help="algebra, summand or realize preset")
    p.add_argument("--input", metavar="PATH", help="simplicial JSON file for the realize suite")
    return p


def run(cfg):
    if cfg.trunc < 2:
        raise InputError("--trunc must be at least 2")
    rep = Report(cfg.suite)
    try:
        RUNNERS[cfg.suite](cfg, rep)
    except UnsupportedError as exc:
        raise InputError(str(exc)) from None
    return rep


def main(argv=None):
    cfg = parser().parse_args(argv)
    try:
        rep = run(cfg)
    except InputError as exc:
        print(f"strongmonads: {exc}", file=sys.stderr)
        return 2
    text = "\n".join(rep.lines(cfg)) + "\n"
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.ok else 1


if __name__ == "__main__":
    sys.exit(main())
