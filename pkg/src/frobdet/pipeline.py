"""Pipeline orchestration: gates, module computations, reports.

A pipeline run gathers the arithmetic side-tests, builds the module of
twisted sections of the locally exact differentials, extracts its square
presentation and certifies the determinant identity, producing an
:class:`AnalysisReport` with one of four verdicts:

* ``verified``            every applicable check passed exactly,
* ``hypothesis-not-met``  an arithmetic gate (smoothness, ordinarity,
                          splitting) failed; the theorems do not apply,
* ``inconsistent``        a gated run contradicted a theorem (a bug by
                          definition; must never happen),
* ``error``               a stage raised; the stage tag is recorded.
"""

from __future__ import annotations

import hashlib
import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field as dataclass_field
from pathlib import Path

import random

from . import detrep
from .errors import FrobdetError, GenusZero, Mismatch, NotACurve
from .fields import FiniteField
from .graded import (
    exact_differentials_module,
    is_ulrich_presentation,
    minimal_generators,
    presentation,
    regularity_from_betti,
    saturate,
)
from .hypersurface import (
    Hypersurface,
    degree_bound_check,
    fedder_split_test,
    hasse_witt,
    is_ordinary,
    is_smooth,
)
from .poly import HomogPoly, parse_poly

VERIFIED = "verified"
HYPOTHESIS_NOT_MET = "hypothesis-not-met"
INCONSISTENT = "inconsistent"
ERROR = "error"

EXIT_VERIFIED = 0
EXIT_INVALID_INPUT = 1
EXIT_SINGULAR = 2
EXIT_HYPOTHESIS = 3
EXIT_INCONSISTENT = 4
EXIT_INTERNAL = 5


@dataclass
class PipelineOptions:
    seed: int = 0
    sz_trials: int = 16
    skew_trials: int = 200
    run_skew_probe: bool = True
    force_gates: bool = False  # continue past failed gates, diagnostics only


@dataclass
class AnalysisReport:
    input: dict
    seed: int
    mode: str
    verdict: str = ERROR
    stage: str | None = None
    error: str | None = None
    smooth: bool | None = None
    fedder_split: bool | None = None
    degree_bound_ok: bool | None = None
    genus: int | None = None
    ordinary: bool | None = None
    hasse_witt: list | None = None
    untwisted_generator_degrees: list | None = None
    betti: dict | None = None
    matrix: dict | None = None
    certificate: dict | None = None
    skew_probe: dict | None = None
    timings_ms: dict = dataclass_field(default_factory=dict)
    report_hash: str | None = None

    _KEYS = (
        "input", "seed", "mode", "verdict", "stage", "error", "smooth",
        "fedder_split", "degree_bound_ok", "genus", "ordinary", "hasse_witt",
        "untwisted_generator_degrees", "betti", "matrix", "certificate",
        "skew_probe", "timings_ms", "report_hash",
    )

    def to_dict(self) -> dict:
        return {k: getattr(self, k) for k in self._KEYS}

    def content_hash(self) -> str:
        """Hash of the report content with the volatile fields (timings
        and the hash itself) removed."""
        payload = self.to_dict()
        payload.pop("timings_ms")
        payload.pop("report_hash")
        blob = json.dumps(payload, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode()).hexdigest()

    def finalize(self) -> "AnalysisReport":
        self.report_hash = self.content_hash()
        return self

    def json_text(self, indent: int = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)


def exit_code_for(report: AnalysisReport) -> int:
    if report.verdict == VERIFIED:
        return EXIT_VERIFIED
    if report.verdict == HYPOTHESIS_NOT_MET:
        return EXIT_SINGULAR if report.stage == "smooth" else EXIT_HYPOTHESIS
    if report.verdict == INCONSISTENT:
        return EXIT_INCONSISTENT
    return EXIT_INTERNAL


class _Timer:
    def __init__(self, report):
        self.report = report

    def __call__(self, name):
        return _Stage(self.report, name)


class _Stage:
    def __init__(self, report, name):
        self.report = report
        self.name = name

    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        ms = (time.perf_counter() - self.t0) * 1000.0
        self.report.timings_ms[self.name] = round(ms, 3)
        return False


def parse_input(text: str, p: int, expected_nvars: int | None = None) -> Hypersurface:
    """Parse polynomial text into a hypersurface over F_p (validates
    homogeneity, nonzero reduction mod p, and the variable count)."""
    field = FiniteField(p)
    poly = parse_poly(text, field, nvars=expected_nvars)
    return Hypersurface(poly)


def infer_mode(h: Hypersurface) -> str:
    if h.ambient_dim == 2 and h.genus >= 1:
        return "curve"
    return "hypersurface"


def _new_report(h: Hypersurface, mode: str, opts: PipelineOptions) -> AnalysisReport:
    return AnalysisReport(
        input={
            "poly": h.form.to_text(),
            "p": h.p,
            "nvars": h.nvars,
            "degree": h.degree,
        },
        seed=opts.seed,
        mode=mode,
    )


def _matrix_dict(pres, twist: int) -> dict:
    return {
        "twist": twist,
        "gen_degrees": list(pres.gen_degrees),
        "rel_degrees": list(pres.rel_degrees),
        "entries": [[e.to_text() for e in row] for row in pres.entries],
    }


def run_curve_pipeline(h: Hypersurface, options: PipelineOptions | None = None) -> AnalysisReport:
    """Ordinary plane curve pipeline: smoothness and ordinarity gates,
    then the twisted sections module, its linear presentation, the
    Ulrich shape check and the exact determinant certificate."""
    opts = options or PipelineOptions()
    if h.ambient_dim != 2:
        raise NotACurve("the curve pipeline needs a plane curve (3 variables)")
    if h.genus < 1:
        raise GenusZero("the curve pipeline needs genus >= 1 (degree >= 3)")
    report = _new_report(h, "curve", opts)
    report.genus = h.genus
    timer = _Timer(report)
    stage = "smooth"
    try:
        with timer("smooth"):
            report.smooth = is_smooth(h)
        if not report.smooth and not opts.force_gates:
            report.verdict = HYPOTHESIS_NOT_MET
            report.stage = "smooth"
            return report.finalize()

        stage = "splitting"
        with timer("splitting"):
            report.fedder_split = fedder_split_test(h)
            report.degree_bound_ok = degree_bound_check(h)

        stage = "ordinary"
        with timer("ordinary"):
            hw = hasse_witt(h)
            report.hasse_witt = hw.entries.tolist()
            report.ordinary = hw.is_invertible()
        gates_ok = bool(report.smooth and report.ordinary)
        if not report.ordinary and not opts.force_gates:
            report.verdict = HYPOTHESIS_NOT_MET
            report.stage = "ordinary"
            return report.finalize()

        stage = "module"
        sat_hi = 5
        with timer("module"):
            raw = exact_differentials_module(h, sat_hi + 3)
            sat = saturate(
                raw, 0, sat_hi,
                max_power=h.p * (h.degree + h.ambient_dim),
                extend=lambda hi: exact_differentials_module(h, hi),
            )
            gens = minimal_generators(sat, up_to=h.ambient_dim)
            report.untwisted_generator_degrees = [m for m, _ in gens]
            hilbert = sat.hilbert_function()

        stage = "presentation"
        with timer("presentation"):
            twisted = sat.twist(1)
            pres = presentation(twisted, h, e_max=h.ambient_dim)
        report.matrix = _matrix_dict(pres, twist=1)
        report.betti = {
            "gen_degrees": [a + 1 for a in pres.gen_degrees],
            "rel_degrees": [b + 1 for b in pres.rel_degrees],
            "regularity": regularity_from_betti(pres) + 1,
            "rank": h.p - 1,
            "hilbert": {str(m): d for m, d in sorted(hilbert.items())},
        }

        stage = "ulrich"
        ulrich = is_ulrich_presentation(pres, h)
        if not ulrich and gates_ok:
            report.verdict = INCONSISTENT
            report.stage = "ulrich"
            report.error = (
                "ordinary smooth curve without a linear Ulrich presentation"
            )
            return report.finalize()
        if gates_ok and (not report.untwisted_generator_degrees
                         or min(report.untwisted_generator_degrees) < 1):
            report.verdict = INCONSISTENT
            report.stage = "generator-degrees"
            report.error = "section module has a generator in degree <= 0"
            return report.finalize()

        stage = "determinant"
        with timer("determinant"):
            try:
                cert = detrep.verify_det_power(
                    pres, h.form, trials=opts.sz_trials, seed=opts.seed
                )
            except Mismatch as exc:
                if gates_ok:
                    report.verdict = INCONSISTENT
                    report.stage = "determinant"
                    report.error = str(exc)
                    return report.finalize()
                raise
        report.certificate = cert.to_dict()

        if h.p == 3 and opts.run_skew_probe:
            stage = "skew-probe"
            with timer("skew-probe"):
                witness = detrep.skew_equivalence_probe(
                    pres, seed=opts.seed, trials=opts.skew_trials
                )
                probe = {"found": witness is not None}
                if witness is not None:
                    pmat, qmat = witness
                    skew = detrep.transform_matrix(
                        h.field, h.nvars, 1, pmat, pres.rows(), qmat
                    )
                    pf = detrep.pfaffian(skew)
                    probe["pfaffian_squares_to_det"] = (
                        pf * pf == detrep.det_exact(skew)
                    )
                report.skew_probe = probe

        report.verdict = VERIFIED if gates_ok else HYPOTHESIS_NOT_MET
        report.stage = None if gates_ok else (
            "smooth" if not report.smooth else "ordinary"
        )
        return report.finalize()
    except FrobdetError as exc:
        report.verdict = ERROR
        report.stage = stage
        report.error = f"{type(exc).__name__}: {exc}"
        return report.finalize()


def run_hypersurface_pipeline(h: Hypersurface, options: PipelineOptions | None = None) -> AnalysisReport:
    """Frobenius split hypersurface pipeline: smoothness and splitting
    gates, untwisted sections module, bounded-degree presentation,
    regularity bound and the exact determinant certificate."""
    opts = options or PipelineOptions()
    n = h.ambient_dim
    report = _new_report(h, "hypersurface", opts)
    if n == 2:
        report.genus = h.genus
    timer = _Timer(report)
    stage = "smooth"
    try:
        with timer("smooth"):
            report.smooth = is_smooth(h)
        if not report.smooth and not opts.force_gates:
            report.verdict = HYPOTHESIS_NOT_MET
            report.stage = "smooth"
            return report.finalize()

        stage = "splitting"
        with timer("splitting"):
            report.fedder_split = fedder_split_test(h)
            report.degree_bound_ok = degree_bound_check(h)
        gates_ok = bool(report.smooth and report.fedder_split)
        if not report.fedder_split and not opts.force_gates:
            report.verdict = HYPOTHESIS_NOT_MET
            report.stage = "split"
            return report.finalize()
        if report.fedder_split and not report.degree_bound_ok:
            report.verdict = INCONSISTENT
            report.stage = "degree-bound"
            report.error = "split hypersurface of degree above n + 1"
            return report.finalize()

        stage = "module"
        sat_hi = n + 2
        with timer("module"):
            raw = exact_differentials_module(h, sat_hi + 3)
            sat = saturate(
                raw, 0, sat_hi,
                max_power=h.p * (h.degree + n),
                extend=lambda hi: exact_differentials_module(h, hi),
            )
            gens = minimal_generators(sat, up_to=n - 1)
            report.untwisted_generator_degrees = [m for m, _ in gens]
            hilbert = sat.hilbert_function()

        stage = "presentation"
        with timer("presentation"):
            pres = presentation(sat, h, e_max=n, gens_up_to=n - 1)
        report.matrix = _matrix_dict(pres, twist=0)
        regularity = regularity_from_betti(pres)
        report.betti = {
            "gen_degrees": list(pres.gen_degrees),
            "rel_degrees": list(pres.rel_degrees),
            "regularity": regularity,
            "rank": h.p ** (n - 1) - 1,
            "hilbert": {str(m): d for m, d in sorted(hilbert.items())},
        }

        stage = "degree-profile"
        if gates_ok:
            if not detrep.degree_profile_check(pres, n):
                report.verdict = INCONSISTENT
                report.stage = "degree-profile"
                report.error = (
                    f"entry degrees {pres.entry_degrees()} leave [1, {n - 1}]"
                )
                return report.finalize()
            if regularity > n - 1:
                report.verdict = INCONSISTENT
                report.stage = "regularity"
                report.error = f"regularity {regularity} exceeds dim X = {n - 1}"
                return report.finalize()
            if (not report.untwisted_generator_degrees
                    or min(report.untwisted_generator_degrees) < 1):
                report.verdict = INCONSISTENT
                report.stage = "generator-degrees"
                report.error = "section module has a generator in degree <= 0"
                return report.finalize()

        stage = "determinant"
        with timer("determinant"):
            try:
                cert = detrep.verify_det_power(
                    pres, h.form, trials=opts.sz_trials, seed=opts.seed
                )
            except Mismatch as exc:
                if gates_ok:
                    report.verdict = INCONSISTENT
                    report.stage = "determinant"
                    report.error = str(exc)
                    return report.finalize()
                raise
        report.certificate = cert.to_dict()

        report.verdict = VERIFIED if gates_ok else HYPOTHESIS_NOT_MET
        report.stage = None if gates_ok else (
            "smooth" if not report.smooth else "split"
        )
        return report.finalize()
    except FrobdetError as exc:
        report.verdict = ERROR
        report.stage = stage
        report.error = f"{type(exc).__name__}: {exc}"
        return report.finalize()


def analyze(h: Hypersurface, options: PipelineOptions | None = None,
            mode: str | None = None) -> AnalysisReport:
    """Dispatch to the curve pipeline (plane curves of genus >= 1) or the
    hypersurface pipeline, unless a mode is forced."""
    mode = mode or infer_mode(h)
    if mode == "curve":
        return run_curve_pipeline(h, options)
    if mode == "hypersurface":
        return run_hypersurface_pipeline(h, options)
    raise ValueError(f"unknown mode {mode!r}")


# ---------------------------------------------------------------------------
# Random search for gated inputs.


def random_search(kind: str, p: int, d: int, n: int, seed: int = 0,
                  budget: int = 500) -> Hypersurface | None:
    """Rejection-sample hypersurfaces of degree d in P^n over F_p until
    one passes smoothness plus the requested arithmetic gate.

    kind: "ordinary-curve" (needs n = 2, d >= 3) or "split-hypersurface".
    Returns None when the budget is exhausted."""
    if kind not in ("ordinary-curve", "split-hypersurface"):
        raise ValueError(f"unknown search kind {kind!r}")
    if kind == "ordinary-curve" and (n != 2 or d < 3):
        raise ValueError("ordinary-curve search needs n = 2 and d >= 3")
    field = FiniteField(p)
    rng = random.Random(seed)
    for _ in range(budget):
        poly = HomogPoly.random(field, n + 1, d, rng)
        if poly.is_zero():
            continue
        h = Hypersurface(poly)
        if not is_smooth(h):
            continue
        if kind == "ordinary-curve":
            if is_ordinary(h):
                return h
        else:
            if fedder_split_test(h):
                return h
    return None


# ---------------------------------------------------------------------------
# Corpus runner.


def derive_case_seed(global_seed: int, name: str) -> int:
    digest = hashlib.sha256(f"{global_seed}:{name}".encode()).digest()
    return int.from_bytes(digest[:8], "big") >> 1


def parse_case_file(path) -> dict:
    """Case file: line 1 ``p=<prime>``, line 2 ``poly=<expr>``, optional
    line 3 ``mode=curve|hypersurface``."""
    fields = {}
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise FrobdetError(f"malformed case line {line!r} in {path}")
        key, value = line.split("=", 1)
        fields[key.strip()] = value.strip()
    if "p" not in fields or "poly" not in fields:
        raise FrobdetError(f"case file {path} needs p= and poly= lines")
    mode = fields.get("mode")
    if mode is not None and mode not in ("curve", "hypersurface"):
        raise FrobdetError(f"bad mode {mode!r} in {path}")
    return {"p": int(fields["p"]), "poly": fields["poly"], "mode": mode}


def _run_case(path, global_seed: int, sz_trials: int) -> AnalysisReport:
    name = Path(path).name
    case_seed = derive_case_seed(global_seed, name)
    opts = PipelineOptions(seed=case_seed, sz_trials=sz_trials)
    try:
        case = parse_case_file(path)
        h = parse_input(case["poly"], case["p"])
        return analyze(h, opts, mode=case["mode"])
    except FrobdetError as exc:
        report = AnalysisReport(
            input={"case_file": name}, seed=case_seed, mode="unknown"
        )
        report.verdict = ERROR
        report.stage = "input"
        report.error = f"{type(exc).__name__}: {exc}"
        return report.finalize()


def run_corpus(directory, jobs: int = 1, seed: int = 0, out_dir=None,
               sz_trials: int = 16) -> dict:
    """Run the appropriate pipeline on every case file in a directory.

    Case failures stay isolated in their own report.  When out_dir is
    given, per-case JSON reports and a summary.json are written there.
    Deterministic for a fixed seed: each case derives its own seed from
    hash(seed, case name)."""
    directory = Path(directory)
    out_path = Path(out_dir) if out_dir is not None else None
    cases = sorted(
        f for f in directory.iterdir()
        if f.is_file() and not f.name.startswith(".")
    )
    t0 = time.perf_counter()
    if jobs > 1 and len(cases) > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            reports = list(
                pool.map(lambda f: _run_case(f, seed, sz_trials), cases)
            )
    else:
        reports = [_run_case(f, seed, sz_trials) for f in cases]
    total_ms = round((time.perf_counter() - t0) * 1000.0, 3)
    verdicts = {}
    case_ms = []
    results = {}
    for case, report in zip(cases, reports):
        verdicts[report.verdict] = verdicts.get(report.verdict, 0) + 1
        case_ms.append(sum(report.timings_ms.values()))
        results[case.name] = report.verdict
    summary = {
        "cases": len(cases),
        "seed": seed,
        "verdicts": dict(sorted(verdicts.items())),
        "results": results,
        "max_case_ms": round(max(case_ms), 3) if case_ms else 0.0,
        "total_ms": total_ms,
    }
    if out_path is not None:
        out_path.mkdir(parents=True, exist_ok=True)
        for case, report in zip(cases, reports):
            (out_path / f"{case.name}.json").write_text(
                report.json_text(), encoding="utf-8"
            )
        (out_path / "summary.json").write_text(
            json.dumps(summary, indent=2), encoding="utf-8"
        )
    summary["reports"] = {c.name: r for c, r in zip(cases, reports)}
    return summary
