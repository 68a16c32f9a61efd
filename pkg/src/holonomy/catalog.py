"""Registry of candidate holonomy representations and the full analysis pipeline."""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Any, Mapping

import yaml

from . import berger, spencer
from .linalg import Matrix
from .representations import (
    Representation,
    RepresentationError,
    add_center,
    classical_algebra,
    clifford_spin_rep,
    commutant,
    complexify,
    functor,
    g2_form,
    invariant_vectors,
    lambda_id_plus_j,
    primitive_wedge3,
    realify,
    sl2_irrep,
    stabilizer_algebra,
    symplectic_matrix,
    trivial,
)

TIERS = ("core", "extended", "declared")


class RecipeError(ValueError):
    """A recipe that does not describe a representation; the message names the field."""


class AnalysisError(RuntimeError):
    """A pipeline stage failed; the message names the stage."""


# ----------------------------------------------------------------------------
# recipes
# ----------------------------------------------------------------------------

_CLASSICAL = {
    "so": ("p", "q"),
    "sp": ("n",),
    "sl": ("n",),
    "gl": ("n",),
    "u": ("p", "q"),
    "su": ("p", "q"),
    "so_star": ("n",),
    "so_complex": ("n",),
    "sp_quaternionic": ("p", "q"),
    "sp_sp1": ("p", "q"),
}


def _int_field(spec: Mapping, key: str, where: str) -> int:
    if key not in spec:
        raise RecipeError(f"{where}: missing field '{key}'")
    v = spec[key]
    if isinstance(v, bool) or not isinstance(v, int):
        raise RecipeError(f"{where}.{key}: expected an integer, got {v!r}")
    return v


def build_base(spec: Any, where: str = "base", like: Representation | None = None) -> Representation:
    if not isinstance(spec, Mapping) or "family" not in spec:
        raise RecipeError(f"{where}: expected a mapping with a 'family' field")
    fam = spec["family"]
    try:
        if fam == "sl2_irrep":
            return sl2_irrep(_int_field(spec, "k", where))
        if fam in _CLASSICAL:
            params = {k: _int_field(spec, k, where) for k in _CLASSICAL[fam]}
            return classical_algebra(fam, **params)
        if fam == "spin":
            return clifford_spin_rep(_int_field(spec, "p", where), _int_field(spec, "q", where))
        if fam == "g2":
            form = spec.get("form", "compact")
            if form not in ("compact", "split"):
                raise RecipeError(f"{where}.form: expected 'compact' or 'split', got {form!r}")
            return stabilizer_algebra(g2_form(split=form == "split"), "g2" if form == "compact" else "g2 split")
        if fam == "trivial":
            if like is None:
                raise RecipeError(f"{where}: a trivial module needs an algebra to pair with")
            return trivial(_int_field(spec, "n", where), like)
    except RepresentationError as e:
        raise RecipeError(f"{where}: {e}") from e
    raise RecipeError(f"{where}.family: unknown family {fam!r}")


def build_recipe(recipe: Any) -> Representation:
    """Execute a recipe: base, then functors in order, then realify, then center."""
    if not isinstance(recipe, Mapping):
        raise RecipeError("recipe: expected a mapping")
    unknown = set(recipe) - {"base", "functors", "center", "realify", "name"}
    if unknown:
        raise RecipeError(f"recipe: unknown field(s) {sorted(unknown)}")
    if "base" not in recipe:
        raise RecipeError("recipe: missing field 'base'")
    rep = build_base(recipe["base"])
    base_spec = recipe["base"]
    functors = recipe.get("functors") or []
    if not isinstance(functors, list):
        raise RecipeError("functors: expected a list")
    for i, f in enumerate(functors):
        where = f"functors[{i}]"
        if not isinstance(f, Mapping) or "op" not in f:
            raise RecipeError(f"{where}: expected a mapping with an 'op' field")
        op = f["op"]
        try:
            if op == "dual":
                rep = functor("dual", rep)
            elif op in ("sym_power", "wedge_power"):
                rep = functor(op, rep, k=_int_field(f, "k", where))
            elif op in ("direct_sum", "tensor_product"):
                other = build_base(f.get("with"), f"{where}.with", like=rep)
                rep = functor(op, rep, other)
            elif op == "complexify":
                rep = complexify(rep)
            elif op == "primitive_wedge3":
                if base_spec.get("family") != "sp" or i != 0:
                    raise RecipeError(f"{where}: primitive_wedge3 applies directly to an sp base")
                rep = primitive_wedge3(rep, symplectic_matrix(rep.n // 2))
            else:
                raise RecipeError(f"{where}.op: unknown functor {op!r}")
        except RepresentationError as e:
            raise RecipeError(f"{where}: {e}") from e
    realify_flag = recipe.get("realify", False)
    if not isinstance(realify_flag, bool):
        raise RecipeError("realify: expected true or false")
    if realify_flag:
        rep = realify(rep)
    center = recipe.get("center", "none")
    try:
        if center in (None, "none"):
            pass
        elif center == "id":
            rep = add_center(rep, Matrix.identity(rep.n))
        elif center == "J":
            if "J" not in rep.structures:
                raise RecipeError("center: J requested but the representation has no complex structure")
            rep = add_center(rep, rep.structures["J"])
        elif center == "id+J":
            if "J" not in rep.structures:
                raise RecipeError("center: id+J requested but the representation has no complex structure")
            rep = add_center(add_center(rep, Matrix.identity(rep.n)), rep.structures["J"])
        elif isinstance(center, Mapping) and set(center) == {"lambda_id_plus_J"}:
            lam = center["lambda_id_plus_J"]
            try:
                lam = Fraction(str(lam))
            except (ValueError, ZeroDivisionError) as e:
                raise RecipeError(f"center.lambda_id_plus_J: not a rational number: {lam!r}") from e
            if "J" not in rep.structures:
                raise RecipeError("center: lambda_id_plus_J requested but the representation has no complex structure")
            rep = add_center(rep, lambda_id_plus_j(rep, lam))
        else:
            raise RecipeError(f"center: expected none, id, J, id+J or {{lambda_id_plus_J: x}}, got {center!r}")
    except RepresentationError as e:
        raise RecipeError(f"center: {e}") from e
    if recipe.get("name"):
        rep.name = str(recipe["name"])
    return rep


# ----------------------------------------------------------------------------
# catalog entries
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    tier: str
    recipe: Mapping | None
    provenance: str
    expected: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)
    derived: Mapping[str, Mapping[str, Any]] = field(default_factory=dict)

    def build(self, override: bool = False) -> Representation:
        if self.tier == "declared" and not override:
            raise RecipeError(f"{self.id}: declared entry, not built without override")
        if self.recipe is None:
            raise RecipeError(f"{self.id}: no construction recipe available")
        return build_recipe(self.recipe)


def _entry_from_dict(d: Mapping) -> CatalogEntry:
    for key in ("id", "tier", "provenance"):
        if key not in d:
            raise RecipeError(f"catalog entry {d.get('id', '?')}: missing '{key}'")
    if d["tier"] not in TIERS:
        raise RecipeError(f"catalog entry {d['id']}: unknown tier {d['tier']!r}")
    expected = d.get("expected") or {}
    for k, v in expected.items():
        if not isinstance(v, Mapping) or "value" not in v or not v.get("cite"):
            raise RecipeError(f"catalog entry {d['id']}: expected.{k} needs a value and a cite")
    derived = d.get("derived") or {}
    for k, v in derived.items():
        if not isinstance(v, Mapping) or "value" not in v or not v.get("cite"):
            raise RecipeError(f"catalog entry {d['id']}: derived.{k} needs a value and a cite")
    if d["tier"] == "declared" and (expected or derived):
        raise RecipeError(f"catalog entry {d['id']}: declared entries carry no expectations")
    return CatalogEntry(d["id"], d["tier"], d.get("recipe"), d["provenance"], expected, derived)


def load_catalog(path: str | Path | None = None) -> list[CatalogEntry]:
    if path is None:
        text = resources.files("holonomy").joinpath("data/catalog.yaml").read_text(encoding="utf-8")
    else:
        text = Path(path).read_text(encoding="utf-8")
    data = yaml.safe_load(text)
    entries = [_entry_from_dict(d) for d in data["entries"]]
    ids = [e.id for e in entries]
    if len(ids) != len(set(ids)):
        raise RecipeError("catalog: duplicate ids")
    return entries


def find_entry(entry_id: str, entries: list[CatalogEntry] | None = None) -> CatalogEntry:
    for e in entries if entries is not None else load_catalog():
        if e.id == entry_id:
            return e
    raise KeyError(entry_id)


# ----------------------------------------------------------------------------
# analysis
# ----------------------------------------------------------------------------

REPORT_FIELDS = (
    "dim_m",
    "dim_h",
    "dim_h1",
    "dim_torsion_coker",
    "dim_K",
    "dim_K1",
    "dim_K2",
    "characters",
    "involutive",
    "berger1",
    "berger2",
    "absorbable",
    "generality",
    "commutant_dim",
    "invariant_vectors_dim",
    "timing",
    "seed",
)


@dataclass
class AnalysisReport:
    dim_m: int
    dim_h: int
    dim_h1: int
    dim_torsion_coker: int
    dim_K: int
    dim_K1: int
    dim_K2: int
    characters: list[int]
    involutive: str
    berger1: bool
    berger2: bool
    absorbable: str
    generality: list[int] | None
    commutant_dim: int
    invariant_vectors_dim: int
    timing: dict[str, float] | None
    seed: int
    # not part of the serialized report
    details: dict = field(default_factory=dict, repr=False, compare=False)

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in REPORT_FIELDS}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2)

    @property
    def complex_type(self) -> bool:
        return bool(self.details.get("complex_algebra"))

    def complex_counts(self) -> dict | None:
        """Halved dimensions for a complex Lie algebra acting complex-linearly."""
        if not self.complex_type:
            return None
        out = {k: getattr(self, k) // 2 for k in ("dim_m", "dim_h", "dim_K", "dim_K1", "dim_K2")}
        if self.generality is not None:
            out["generality"] = [self.generality[0] // 2, self.generality[1]]
        return out


def _stage(name: str, timings: dict, fn, *args, **kwargs):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kwargs)
    except Exception as e:  # noqa: BLE001 - re-raised with the stage named
        raise AnalysisError(f"stage '{name}' failed: {e}") from e
    finally:
        timings[name] = round(time.perf_counter() - t0, 3)


def analyze(h: Representation, seed: int = 0, trials: int = 5, timing: bool = False) -> AnalysisReport:
    """Run the whole pipeline on h; deterministic given (seed, trials)."""
    times: dict[str, float] = {}
    hc = _stage("canonical basis", times, h.canonical)
    tor = _stage("torsion", times, spencer.delta_torsion, hc)
    k = _stage("curvature space", times, spencer.curvature_space, hc)
    k1 = _stage("first prolongation", times, spencer.curvature_prolongation, hc, k)
    tab = spencer.Tableau(k.dim, hc.n, k1.space)
    k2 = _stage("second prolongation", times, spencer.prolongation_dim, tab)
    chars = _stage("characters", times, spencer.cartan_characters, tab, seed, trials, k2)
    inv = _stage("involutivity", times, spencer.involutivity_test, tab, chars, k2)
    span = _stage("first criterion", times, berger.curvature_span, hc, k)
    absorb = _stage("absorbability", times, berger.absorbability_check, hc, k, k1)
    comm = _stage("commutant", times, commutant, hc)
    inv_vec = _stage("invariant vectors", times, invariant_vectors, hc)
    gen = list(spencer.generality(inv.characters, inv)) if inv.verdict == "involutive" else None
    report = AnalysisReport(
        dim_m=hc.n,
        dim_h=hc.dim,
        dim_h1=tor.h1.dim,
        dim_torsion_coker=tor.coker_dim,
        dim_K=k.dim,
        dim_K1=k1.dim,
        dim_K2=k2,
        characters=list(inv.characters.s),
        involutive=inv.verdict,
        berger1=span.dim == hc.dim,
        berger2=k1.dim > 0,
        absorbable=absorb.verdict,
        generality=gen,
        commutant_dim=comm.dim,
        invariant_vectors_dim=inv_vec.dim,
        timing=times if timing else None,
        seed=seed,
    )
    report.details.update(
        name=h.name,
        involutivity_certificate=inv.certificate,
        cartan_bound=inv.cartan_bound,
        trials_used=inv.characters.trials_used,
        curvature_span_dim=span.dim,
        absorbability_note=absorb.note,
        q_unique_modulo_dim=absorb.q_unique_modulo,
        complex_algebra=h.is_complex_algebra(),
    )
    return report


# ----------------------------------------------------------------------------
# verification
# ----------------------------------------------------------------------------


@dataclass(frozen=True)
class Check:
    entry: str
    field: str
    expected: Any
    got: Any
    passed: bool
    cite: str


def report_value(report: AnalysisReport, name: str):
    if name.startswith("complex_"):
        counts = report.complex_counts()
        return None if counts is None else counts.get(name[len("complex_"):])
    if name not in REPORT_FIELDS:
        raise KeyError(f"unknown report field {name!r}")
    return getattr(report, name)


def check_entry(entry: CatalogEntry, report: AnalysisReport) -> list[Check]:
    """Compare stated values, then frozen derived values (cite prefixed with "derived:")."""
    out = []
    for source, items in (("", entry.expected), ("derived: ", entry.derived)):
        for name, spec in items.items():
            want = spec["value"]
            got = report_value(report, name)
            if isinstance(want, tuple):
                want = list(want)
            out.append(Check(entry.id, name, want, got, got == want, source + spec["cite"]))
    return out


@dataclass
class EntryResult:
    entry: CatalogEntry
    status: str  # "verified" | "failed" | "declared" | "error"
    checks: list[Check] = field(default_factory=list)
    report: AnalysisReport | None = None
    error: str = ""
    seconds: float = 0.0


def select(entries: list[CatalogEntry], tier: str) -> list[CatalogEntry]:
    if tier == "all":
        return list(entries)
    if tier not in TIERS:
        raise ValueError(f"unknown tier {tier!r}")
    return [e for e in entries if e.tier == tier]


def verify_entry(entry: CatalogEntry, seed: int = 0, trials: int = 5) -> EntryResult:
    if entry.tier == "declared":
        return EntryResult(entry, "declared")
    t0 = time.perf_counter()
    try:
        report = analyze(entry.build(), seed=seed, trials=trials)
    except (RecipeError, AnalysisError) as e:
        return EntryResult(entry, "error", error=str(e), seconds=time.perf_counter() - t0)
    checks = check_entry(entry, report)
    status = "verified" if all(c.passed for c in checks) else "failed"
    return EntryResult(entry, status, checks, report, seconds=time.perf_counter() - t0)


def verify(tier: str = "core", entries: list[CatalogEntry] | None = None, seed: int = 0, trials: int = 5, progress=None) -> list[EntryResult]:
    """Analyze every entry of the tier and diff against its expected values."""
    entries = load_catalog() if entries is None else entries
    results = []
    for e in select(entries, tier):
        r = verify_entry(e, seed, trials)
        if progress is not None:
            progress(r)
        results.append(r)
    return results
