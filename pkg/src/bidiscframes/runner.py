"""Configuration-driven experiment runner.

A config is one JSON object describing a truncation order, a submodule
recipe (an inner function, a generator list, or a catalog fixture name),
and a list of named checks.  Checks always execute in dependency order:
submodule construction first, then quotient-level identities, then the
iterate system and its reports.  Given a seed, every run is
deterministic down to the report bytes; timestamps go to a separate
metadata file so reports can be compared directly.

Exit-code contract: 0 all checks pass, 1 a mathematical check failed,
2 config error (raised as ValueError), 3 numerical guard (GuardError).
"""

from __future__ import annotations

import csv
import json
import re
import time
import warnings
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ._linalg import subspace_distance
from .dynamics import adjoint_decay, conjecture_probe, equivalent_frame_vector
from .fixtures import catalog_inner_specs, get_fixture
from .frames import (
    GuardError,
    IterateSystem,
    OperatorTriple,
    _dim_limit,
    frame_bounds,
    iterate,
    kernel_doubly_commutes,
    kernel_shift_invariance,
    synthesis_kernel,
)
from .hardy import BidiscPoly, DegreePair, TruncatedSpace, make_space, shift_matrix
from .inner import InnerSpec, build_inner
from .models import (
    estimate_similarity,
    random_similarity,
    recover_model,
    transport,
    triple_from_quotient,
    uniqueness_of_L,
)
from .submodule import (
    beurling_submodule,
    codimension_profile,
    doubly_commute_test,
    generated_submodule,
    jordan_identity_check,
    quotient,
)

__all__ = [
    "ExperimentConfig",
    "CheckResult",
    "RunOutcome",
    "RunContext",
    "CHECK_NAMES",
    "run",
    "run_file",
    "run_suite",
]

_MONOMIAL_RE = re.compile(r"(?:z(\d+)?)?(?:w(\d+)?)?")


def _parse_monomial(text: str) -> BidiscPoly:
    m = _MONOMIAL_RE.fullmatch(text.strip())
    if m is None or not text.strip():
        raise ValueError(f"cannot parse generator {text!r}; expected e.g. 'z', 'zw2'")
    has_z = text.lstrip().startswith("z")
    a = int(m.group(1)) if m.group(1) else (1 if has_z else 0)
    b = int(m.group(2)) if m.group(2) else (1 if "w" in text else 0)
    if a == 0 and b == 0 and text.strip() not in ("1", ""):
        raise ValueError(f"cannot parse generator {text!r}")
    return BidiscPoly.monomial(a, b)


def _parse_generator(item) -> BidiscPoly:
    if isinstance(item, str):
        return _parse_monomial(item)
    if isinstance(item, (list, tuple)) and len(item) == 2:
        return BidiscPoly.monomial(int(item[0]), int(item[1]))
    raise ValueError(f"generator entries must be strings or [i, j] pairs, got {item!r}")


def _parse_inner(value) -> InnerSpec:
    if isinstance(value, str):
        catalog = catalog_inner_specs()
        if value in catalog:
            return catalog[value]
        raise ValueError(
            f"unknown inner name {value!r}; known: {', '.join(sorted(catalog))}"
        )
    if isinstance(value, dict):
        return InnerSpec.from_json(value)
    raise ValueError("inner must be a catalog name or a serialized spec")


_KNOWN_KEYS = {
    "order", "horizon", "inner", "generators", "fixture",
    "transport", "checks", "seed", "output", "format",
}


@dataclass(frozen=True)
class ExperimentConfig:
    """One experiment: a recipe, a horizon, checks, and a seed."""

    order: DegreePair
    horizon: DegreePair
    checks: tuple[str, ...]
    inner: InnerSpec | None = None
    generators: tuple[BidiscPoly, ...] = ()
    fixture: str | None = None
    seed: int = 0
    transport_seed: int | None = None
    condition_cap: float = 1e3
    output: str | None = None
    fmt: str = "json"

    @classmethod
    def from_json(cls, data: dict, **overrides) -> "ExperimentConfig":
        if not isinstance(data, dict):
            raise ValueError("config must be a JSON object")
        unknown = set(data) - _KNOWN_KEYS
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(sorted(unknown))}")
        merged = dict(data)
        for key, val in overrides.items():
            if val is not None:
                merged[key] = val

        fixture_name = merged.get("fixture")
        fixture = get_fixture(fixture_name) if fixture_name is not None else None

        recipes = [k for k in ("inner", "generators", "fixture") if merged.get(k)]
        if len(recipes) > 1:
            raise ValueError(f"give at most one of inner/generators/fixture, got {recipes}")

        if "order" in merged:
            order = DegreePair(int(merged["order"][0]), int(merged["order"][1]))
        elif fixture is not None:
            order = fixture.order
        else:
            raise ValueError("config requires an order (or a fixture with a default)")
        if min(order) < 0:
            raise ValueError(f"order must be nonnegative, got {tuple(order)}")

        if "horizon" in merged:
            horizon = DegreePair(int(merged["horizon"][0]), int(merged["horizon"][1]))
            if min(horizon) < 0:
                raise ValueError(f"horizon must be nonnegative, got {tuple(horizon)}")
            if not order.covers(horizon):
                warnings.warn(
                    f"horizon {tuple(horizon)} exceeds order {tuple(order)}; "
                    "model-exact checks may degrade",
                    stacklevel=2,
                )
        else:
            horizon = order

        checks = tuple(merged.get("checks", ()))
        unknown_checks = [c for c in checks if c not in _REGISTRY]
        if unknown_checks:
            raise ValueError(f"unknown check name: {', '.join(unknown_checks)}")

        inner = _parse_inner(merged["inner"]) if merged.get("inner") else None
        if fixture is not None:
            inner = fixture.spec
        gens: tuple[BidiscPoly, ...] = ()
        if merged.get("generators"):
            gens = tuple(_parse_generator(g) for g in merged["generators"])
        if fixture is not None and fixture.kind == "generated":
            gens = fixture.generators

        transport_cfg = merged.get("transport") or {}
        if not isinstance(transport_cfg, dict):
            raise ValueError("transport must be an object with seed/condition_cap")
        fmt = merged.get("format", "json")
        if fmt not in ("json", "csv"):
            raise ValueError(f"format must be json or csv, got {fmt!r}")

        return cls(
            order=order,
            horizon=horizon,
            checks=checks,
            inner=inner,
            generators=gens,
            fixture=fixture_name,
            seed=int(merged.get("seed", 0)),
            transport_seed=(
                int(transport_cfg["seed"]) if "seed" in transport_cfg else None
            ),
            condition_cap=float(transport_cfg.get("condition_cap", 1e3)),
            output=merged.get("output"),
            fmt=fmt,
        )

    @classmethod
    def from_file(cls, path, **overrides) -> "ExperimentConfig":
        try:
            data = json.loads(Path(path).read_text())
        except OSError as exc:
            raise ValueError(f"cannot read config {path}: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise ValueError(f"config {path} is not valid JSON: {exc}") from exc
        return cls.from_json(data, **overrides)

    def echo(self) -> dict:
        """Canonical JSON-ready form, embedded in the summary report."""
        out: dict = {
            "order": list(self.order),
            "horizon": list(self.horizon),
            "checks": list(self.checks),
            "seed": self.seed,
            "format": self.fmt,
        }
        if self.inner is not None:
            out["inner"] = self.inner.to_json()
        if self.generators:
            out["generators"] = [list(g.maxdeg) for g in self.generators]
        if self.fixture is not None:
            out["fixture"] = self.fixture
        out["transport"] = {
            "seed": self.seed if self.transport_seed is None else self.transport_seed,
            "condition_cap": self.condition_cap,
        }
        return out


@dataclass
class CheckResult:
    name: str
    passed: bool
    data: dict
    note: str = ""

    def to_json(self) -> dict:
        return {
            "check": self.name,
            "passed": bool(self.passed),
            "note": self.note,
            "data": _native(self.data),
        }


@dataclass
class RunOutcome:
    exit_code: int
    results: list[CheckResult]
    files: list[str] = field(default_factory=list)

    @property
    def summary_lines(self) -> list[str]:
        lines = [
            f"check {r.name}: {'pass' if r.passed else 'FAIL'}"
            + (f"  ({r.note})" if r.note else "")
            for r in self.results
        ]
        verdict = "pass" if self.exit_code == 0 else "FAIL"
        lines.append(f"summary: {verdict} ({len(self.results)} checks)")
        return lines


def _native(obj):
    """Recursively convert numpy scalars and arrays for JSON output."""
    if isinstance(obj, dict):
        return {str(k): _native(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_native(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _native(obj.tolist())
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    return obj


class RunContext:
    """Lazy construction chain shared by the checks of one run."""

    def __init__(self, cfg: ExperimentConfig):
        self.cfg = cfg
        self._space: TruncatedSpace | None = None
        self._submodule = None
        self._quotient = None
        self._triple: OperatorTriple | None = None
        self._system: IterateSystem | None = None

    @property
    def space(self) -> TruncatedSpace:
        if self._space is None:
            space = make_space(self.cfg.order)
            limit = _dim_limit()
            if space.dim >= limit:
                raise GuardError(
                    f"space dimension {space.dim} at or beyond the desk "
                    f"guard {limit}; set BDF_MAX_DIM to go bigger"
                )
            self._space = space
        return self._space

    @property
    def submodule(self):
        if self._submodule is None:
            cfg = self.cfg
            if cfg.fixture is not None:
                self._submodule = get_fixture(cfg.fixture).make_submodule(self.space)
            elif cfg.inner is not None:
                phi = build_inner(cfg.inner, self.space.order)
                self._submodule = beurling_submodule(phi, self.space)
            elif cfg.generators:
                self._submodule = generated_submodule(cfg.generators, self.space)
            else:
                raise ValueError(
                    "this check needs a submodule recipe: give inner, "
                    "generators, or fixture"
                )
        return self._submodule

    @property
    def quotient(self):
        if self._quotient is None:
            self._quotient = quotient(self.submodule)
        return self._quotient

    @property
    def triple(self) -> OperatorTriple:
        if self._triple is None:
            self._triple = triple_from_quotient(self.quotient)
        return self._triple

    @property
    def system(self) -> IterateSystem:
        if self._system is None:
            self._system = iterate(self.triple, self.cfg.horizon)
        return self._system

    def rng(self) -> np.random.Generator:
        return np.random.default_rng(self.cfg.seed)

    def transport_rng(self) -> np.random.Generator:
        seed = self.cfg.transport_seed
        return np.random.default_rng(self.cfg.seed if seed is None else seed)

    def random_vector(self, rng: np.random.Generator) -> np.ndarray:
        dim = self.triple.dim
        return rng.standard_normal(dim) + 1j * rng.standard_normal(dim)


# --- checks ------------------------------------------------------------


def _check_build(ctx: RunContext) -> CheckResult:
    sub = ctx.submodule
    quot = ctx.quotient
    data = {
        "kind": sub.kind,
        "rank": sub.rank,
        "space_dim": sub.space.dim,
        "quotient_dim": quot.dim,
        "commutator_residual": quot.comm_residual,
        "exact": sub.exact,
    }
    if sub.inner is not None:
        data["truncation_tail"] = sub.inner.trunc_error
    return CheckResult("build-module", True, data)


def _check_codimension(ctx: RunContext) -> CheckResult:
    if ctx.cfg.inner is None:
        raise ValueError("codimension check requires an inner recipe")
    top = min(ctx.cfg.order)
    ks = list(range(2, top + 1)) or [top]
    orders = [(k, k) for k in ks]
    profile = codimension_profile(ctx.cfg.inner, orders)
    constant = ctx.cfg.inner.degree == (0, 0)
    if constant:
        passed = all(c == 0 for c in profile)
    else:
        passed = all(b > a for a, b in zip(profile, profile[1:]))
    return CheckResult(
        "codimension", passed,
        {"orders": orders, "profile": profile, "constant_inner": constant},
    )


def _check_mandrekar(ctx: RunContext) -> CheckResult:
    rep = doubly_commute_test(ctx.submodule)
    data = {
        "residual_interior": rep.residual_interior,
        "verdict": rep.verdict,
        "residual_z": rep.residual_z,
        "residual_w": rep.residual_w,
        "n_interior_z": rep.n_interior_z,
        "n_interior_w": rep.n_interior_w,
    }
    note = "double-commutation holds" if rep.verdict else "double-commutation fails"
    return CheckResult("mandrekar", True, data, note=note)


def _check_jordan(ctx: RunContext) -> CheckResult:
    res = jordan_identity_check(ctx.quotient)
    passed = res["max_residual"] <= 1e-9
    return CheckResult("jordan", passed, res)


def _check_parseval(ctx: RunContext) -> CheckResult:
    rep = frame_bounds(ctx.system)
    tol = 1e-10
    passed = abs(rep.lower - 1.0) <= tol and abs(rep.upper - 1.0) <= tol
    data = rep.to_dict()
    data["tolerance"] = tol
    return CheckResult("parseval", passed, data)


def _check_frame_bounds(ctx: RunContext) -> CheckResult:
    rep = frame_bounds(ctx.system)
    return CheckResult("frame-bounds", rep.is_frame, rep.to_dict())


def _check_kernel_invariance(ctx: RunContext) -> CheckResult:
    rep = kernel_shift_invariance(ctx.system)
    if rep.inconclusive:
        return CheckResult(
            "kernel-invariance", True,
            {"inconclusive": True, "n_checked": 0}, note=rep.message,
        )
    passed = rep.vacuous or rep.residual <= 1e-8
    data = {
        "residual": rep.residual,
        "vacuous": rep.vacuous,
        "inconclusive": rep.inconclusive,
        "n_checked": rep.n_checked,
    }
    return CheckResult("kernel-invariance", passed, data, note=rep.message)


def _check_kernel_commutes(ctx: RunContext) -> CheckResult:
    rep = kernel_doubly_commutes(ctx.system)
    if rep.inconclusive:
        return CheckResult(
            "kernel-doubly-commutes", True,
            {"inconclusive": True, "n_checked": 0}, note=rep.message,
        )
    passed = rep.vacuous or rep.residual <= 1e-8
    data = {
        "residual": rep.residual,
        "verdict": rep.verdict,
        "vacuous": rep.vacuous,
        "residual_z": rep.residual_z,
        "residual_w": rep.residual_w,
        "n_checked": rep.n_checked,
    }
    return CheckResult("kernel-doubly-commutes", passed, data, note=rep.message)


def _check_riesz(ctx: RunContext) -> CheckResult:
    """The plain shift pair with constant seed over the config order."""
    space = ctx.space
    triple = OperatorTriple(
        T1=shift_matrix(space, "z"),
        T2=shift_matrix(space, "w"),
        phi=space.basis_vector(0, 0),
    )
    rep = frame_bounds(iterate(triple, space.order))
    passed = (
        rep.classification == "minimal_frame"
        and abs(rep.lower - 1.0) <= 1e-12
        and abs(rep.upper - 1.0) <= 1e-12
    )
    return CheckResult("riesz", passed, rep.to_dict())


def _check_similarity(ctx: RunContext) -> CheckResult:
    rng = ctx.transport_rng()
    base = frame_bounds(ctx.system)
    l = random_similarity(ctx.triple.dim, rng, condition_cap=ctx.cfg.condition_cap)
    moved_triple, witness = transport(ctx.triple, l, condition_cap=ctx.cfg.condition_cap)
    moved_sys = iterate(moved_triple, ctx.cfg.horizon)
    moved = frame_bounds(moved_sys)

    smin, smax = witness.sigma_min, witness.sigma_max
    slack = 1e-9
    bracket_ok = (
        moved.lower >= smin**2 * base.lower - slack
        and moved.upper <= smax**2 * base.upper + slack
    )
    gap = subspace_distance(synthesis_kernel(ctx.system), synthesis_kernel(moved_sys))
    l_est = estimate_similarity(ctx.system, moved_sys)
    uniq = uniqueness_of_L(ctx.system, l, l_est)
    passed = (
        witness.certified
        and base.is_frame == moved.is_frame
        and bracket_ok
        and gap <= 1e-10
        and uniq.distance <= 1e-8
    )
    data = {
        "condition": witness.cond,
        "certified": witness.certified,
        "base_bounds": [base.lower, base.upper],
        "moved_bounds": [moved.lower, moved.upper],
        "singular_bracket": [smin**2 * base.lower, smax**2 * base.upper],
        "base_class": base.classification,
        "moved_class": moved.classification,
        "kernel_distance": gap,
        "witness_distance": uniq.distance,
    }
    return CheckResult("similarity", passed, data)


def _check_recover(ctx: RunContext) -> CheckResult:
    rec = recover_model(ctx.system)
    gap = subspace_distance(
        ctx.system.synthesis.conj().T @ np.linalg.pinv(ctx.system.synthesis.conj().T),
        rec.k_onb @ rec.k_onb.conj().T,
    )
    passed = (
        rec.intertwine_residual_z <= 1e-7
        and rec.intertwine_residual_w <= 1e-7
        and rec.residual_phi <= 1e-8
        and gap <= 1e-8
    )
    data = {
        "k_dim": rec.k_dim,
        "intertwine_residual_z": rec.intertwine_residual_z,
        "intertwine_residual_w": rec.intertwine_residual_w,
        "residual_phi": rec.residual_phi,
        "cond_W": rec.cond_W,
        "rowspace_gap": gap,
    }
    return CheckResult("recover", passed, data)


def _decay_horizon(cfg: ExperimentConfig) -> DegreePair:
    """Default decay horizon: one past the order, the nilpotency index."""
    return DegreePair(cfg.order.d1 + 1, cfg.order.d2 + 1)


def _check_decay(ctx: RunContext) -> CheckResult:
    rng = ctx.rng()
    f = ctx.random_vector(rng)
    trace = adjoint_decay(ctx.triple, f, _decay_horizon(ctx.cfg))
    data = {
        "direction": trace.direction,
        "tail_max": trace.tail_max,
        "corner": trace.corner,
        "decayed": trace.decayed,
        "norms": trace.norms,
    }
    return CheckResult("decay", trace.decayed, data, note=trace.note)


def _check_probe(ctx: RunContext) -> CheckResult:
    rng = ctx.rng()
    f = ctx.random_vector(rng)
    kc = kernel_doubly_commutes(ctx.system)
    verdict = bool(kc.verdict) if not (kc.vacuous or kc.inconclusive) else None
    with warnings.catch_warnings():
        if verdict is not True:
            warnings.simplefilter("ignore")
        trace = conjecture_probe(ctx.triple, f, _decay_horizon(ctx.cfg),
                                 kernel_verdict=verdict)
    data = {
        "direction": trace.direction,
        "tail_max": trace.tail_max,
        "corner": trace.corner,
        "decayed": trace.decayed,
        "norms": trace.norms,
        "kernel_verdict": verdict,
        "evidence_only": True,
    }
    return CheckResult("probe-conjecture", True, data, note=trace.note)


def _check_equiv_vector(ctx: RunContext) -> CheckResult:
    t = ctx.triple
    v = np.eye(t.dim, dtype=np.complex128) + 0.5 * (t.T1 @ t.T2)
    base = frame_bounds(ctx.system)
    moved = equivalent_frame_vector(t, v, ctx.cfg.horizon)
    passed = base.classification == moved.classification
    data = {
        "map": "I + 0.5 T1 T2",
        "base_class": base.classification,
        "moved_class": moved.classification,
        "moved_bounds": [moved.lower, moved.upper],
    }
    return CheckResult("equiv-vector", passed, data)


_REGISTRY = {
    "build-module": _check_build,
    "codimension": _check_codimension,
    "mandrekar": _check_mandrekar,
    "jordan": _check_jordan,
    "parseval": _check_parseval,
    "frame-bounds": _check_frame_bounds,
    "kernel-invariance": _check_kernel_invariance,
    "kernel-doubly-commutes": _check_kernel_commutes,
    "riesz": _check_riesz,
    "similarity": _check_similarity,
    "recover": _check_recover,
    "decay": _check_decay,
    "probe-conjecture": _check_probe,
    "equiv-vector": _check_equiv_vector,
}

CHECK_NAMES = tuple(_REGISTRY)
_STAGE = {name: i for i, name in enumerate(_REGISTRY)}


def _dump_json(obj, path: Path):
    path.write_text(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _csv_mirror(result: CheckResult, prefix: Path) -> list[str]:
    """Tabular companions for checks with natural row data."""
    rows = None
    if result.name in ("frame-bounds", "parseval", "riesz"):
        trace = result.data.get("bound_trace")
        if trace:
            rows = [("horizon", "lower", "upper")]
            rows += [(h, repr(float(lo)), repr(float(hi))) for h, lo, hi in trace]
    elif result.name == "codimension":
        rows = [("order", "codimension")]
        rows += [
            (o[0], c) for o, c in zip(result.data["orders"], result.data["profile"])
        ]
    elif result.name in ("decay", "probe-conjecture"):
        norms = np.asarray(result.data["norms"])
        rows = [("i", "j", "norm")]
        rows += [
            (i, j, repr(float(norms[i, j])))
            for i in range(norms.shape[0])
            for j in range(norms.shape[1])
        ]
    if rows is None:
        return []
    path = Path(f"{prefix}.{result.name}.csv")
    with open(path, "w", newline="") as fh:
        csv.writer(fh).writerows(rows)
    return [str(path)]


def run(cfg: ExperimentConfig) -> RunOutcome:
    """Execute the configured checks in dependency order.

    Config problems raise ValueError and guard trips raise GuardError;
    mathematical failures are recorded in the results and the exit code,
    never raised.
    """
    ctx = RunContext(cfg)
    ordered = sorted(dict.fromkeys(cfg.checks), key=_STAGE.__getitem__)
    results = [_REGISTRY[name](ctx) for name in ordered]
    exit_code = 0 if all(r.passed for r in results) else 1

    files: list[str] = []
    if cfg.output:
        prefix = Path(cfg.output)
        if prefix.parent != Path("."):
            prefix.parent.mkdir(parents=True, exist_ok=True)
        for r in results:
            path = Path(f"{prefix}.{r.name}.json")
            _dump_json(r.to_json(), path)
            files.append(str(path))
            if cfg.fmt == "csv":
                files.extend(_csv_mirror(r, prefix))
        summary = {
            "passed": exit_code == 0,
            "exit_code": exit_code,
            "checks": [{"check": r.name, "passed": r.passed} for r in results],
            "config": cfg.echo(),
        }
        spath = Path(f"{prefix}.summary.json")
        _dump_json(summary, spath)
        files.append(str(spath))
        meta = {"written_at": time.strftime("%Y-%m-%dT%H:%M:%S%z"), "files": files}
        mpath = Path(f"{prefix}.meta.json")
        _dump_json(meta, mpath)
    return RunOutcome(exit_code=exit_code, results=results, files=files)


def run_file(path, **overrides) -> RunOutcome:
    return run(ExperimentConfig.from_file(path, **overrides))


def run_suite(directory, **overrides) -> list[tuple[str, RunOutcome]]:
    """Run every *.json config in a directory, in sorted order.

    An output override becomes a per-config prefix so reports from
    different configs never collide.
    """
    root = Path(directory)
    if not root.is_dir():
        raise ValueError(f"suite path {directory} is not a directory")
    configs = sorted(p for p in root.glob("*.json") if not p.name.endswith(".meta.json"))
    if not configs:
        raise ValueError(f"no *.json configs under {directory}")
    results = []
    for path in configs:
        per = dict(overrides)
        if per.get("output"):
            per["output"] = f"{per['output']}.{path.stem}"
        results.append((str(path), run_file(path, **per)))
    return results
