"""Deterministic report documents for the analyze/audit pipelines.

Key order is fixed, set-like data is sorted, and every integer that can grow
with the input is serialized as a decimal string, so identical inputs yield
byte-identical output.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from . import algebra, graded
from .config import DEFAULT_EMBEDDED_AUDIT_LEN, AnalysisConfig
from .deciders import (
    ComplexityResult,
    DeciderOutputs,
    PropertyReport,
    Verdict,
    decide_uniform_recurrence,
    ring_property_report,
    run_deciders,
)
from .errors import ContractError, InvariantError, NoSplitError
from .matrices import (
    CharPoly,
    WeightSequences,
    char_poly,
    incidence_matrix,
    recurrence_from_charpoly,
    weight_sequence,
)
from .words import (
    FactorSet,
    Morphism,
    WordPrefix,
    classify_shape,
    factor_closure,
    fixed_point_prefix,
)

HEAD_LETTERS = 32
S_PREFIX_SHOWN = 32
HILBERT_SHOWN = 16
WEIGHT_TERMS = 20


def _s(x: int) -> str:
    return str(int(x))


def verdict_doc(v: Verdict) -> dict:
    return {
        "value": v.value.value,
        "conditional": v.conditional,
        "certificate": v.certificate,
        "bound": v.bound,
    }


@dataclass
class AnalysisContext:
    """Intermediate artifacts kept alongside the serialized document."""

    morphism: Morphism
    factor_set: FactorSet
    prefix: WordPrefix
    deciders: DeciderOutputs
    properties: PropertyReport
    poly: CharPoly
    weights: WeightSequences | None
    audit_passed: bool
    counterexamples: list[str]

    @property
    def has_unknown(self) -> bool:
        report = self.properties
        verdicts = [
            report.prime,
            report.semiprime,
            report.just_infinite,
            report.pi,
            report.noetherian,
            report.jacobson_trivial,
            report.primitive_algebra,
        ]
        return any(v.is_unknown for v in verdicts) or report.gk_dimension is None


def _morphism_doc(m: Morphism, source: str) -> dict:
    doc = {
        "source": source,
        "letters": list(m.letters),
        "start": m.letters[m.start],
        "images": {m.letters[i]: m.decode(m.images[i]) for i in range(m.size)},
    }
    if m.degrees is not None:
        doc["degrees"] = {m.letters[i]: m.degrees[i] for i in range(m.size)}
        doc["explicit_grading"] = m.explicit_grading
    return doc


def _shape_doc(m: Morphism) -> dict:
    shape = classify_shape(m)
    return {
        "d_uniform": shape.d_uniform,
        "erasing": shape.erasing,
        "growing": {m.letters[i]: shape.growing[i] for i in range(m.size)},
        "all_growing": shape.all_growing,
    }


def _matrix_doc(m: Morphism, poly: CharPoly) -> dict:
    M = incidence_matrix(m)
    doc = {
        "size": M.size,
        "entries": [[_s(e) for e in row] for row in M.rows],
        "trace": _s(M.trace()),
        "column_sums": [_s(c) for c in M.column_sums()],
        "char_poly": {
            "degree": poly.degree,
            "coefficients_high_to_low": [_s(c) for c in poly.high_to_low()],
            "cayley_hamilton_verified": True,
        },
    }
    shape = classify_shape(m)
    if shape.d_uniform is not None:
        doc["char_poly"]["value_at_d"] = _s(poly.evaluate(shape.d_uniform))
    return doc


def _word_doc(m: Morphism, prefix: WordPrefix, f: FactorSet) -> dict:
    complexity = [f.counts[n] for n in range(min(f.max_len, 32) + 1)]
    return {
        "prefix_letters": len(prefix.word),
        "generation_level": prefix.generation_level,
        "head": m.decode(prefix.word[:HEAD_LETTERS]),
        "factors": {
            "max_len": f.max_len,
            "exact": f.exact,
            "closure_rounds": f.closure_rounds,
            "complexity": complexity,
        },
    }


def _complexity_doc(result: ComplexityResult, f: FactorSet) -> dict:
    top = min(HILBERT_SHOWN, f.max_len)
    hilbert = []
    acc = 0
    for n in range(top + 1):
        acc += f.counts[n]
        hilbert.append(_s(acc))
    doc = {
        "class": result.complexity_class.value,
        "gk_dimension": result.gk_dimension if result.gk_dimension is not None else "Unknown",
        "conditional": result.conditional,
        "method": result.method,
        "hilbert": hilbert,
    }
    if result.fit:
        doc["fit"] = {
            k: (dict(sorted(v.items())) if isinstance(v, dict) else v)
            for k, v in sorted(result.fit.items())
        }
    return doc


def _properties_doc(report: PropertyReport) -> dict:
    return {
        "prime": verdict_doc(report.prime),
        "semiprime": verdict_doc(report.semiprime),
        "just_infinite": verdict_doc(report.just_infinite),
        "pi": verdict_doc(report.pi),
        "noetherian": verdict_doc(report.noetherian),
        "jacobson_trivial": verdict_doc(report.jacobson_trivial),
        "primitive_algebra": verdict_doc(report.primitive_algebra),
        "gk_dimension": report.gk_dimension if report.gk_dimension is not None else "Unknown",
        "complexity_class": report.complexity_class.value,
    }


def _graded_doc(
    m: Morphism,
    prefix: WordPrefix,
    f: FactorSet,
    cfg: AnalysisConfig,
    counterexamples: list[str],
) -> dict:
    assert m.degrees is not None
    s = graded.s_set(m, prefix)
    chains = []
    for d in range(1, cfg.d_max + 1):
        witness = graded.max_homogeneous_chain(m, s, f, d)
        chains.append(
            {
                "d": d,
                "max_r": witness.length,
                "witness": {
                    "start": _s(witness.start_value),
                    "pieces": [m.decode(p) for p in witness.pieces[:8]],
                },
            }
        )
    audit_len = min(DEFAULT_EMBEDDED_AUDIT_LEN, f.max_len)
    if audit_len >= 2:
        rotation = graded.cyclic_rotation_audit(f, audit_len)
        rotation_doc = {
            "max_len": rotation.max_len,
            "pass": rotation.passed,
            "counterexample": m.decode(rotation.counterexample)
            if rotation.counterexample is not None
            else None,
            "per_length": {str(l): n for l, n in rotation.per_length},
        }
        if not rotation.passed and rotation.counterexample is not None:
            counterexamples.append(
                f"rotation audit: every rotation of '{m.decode(rotation.counterexample)}' is a factor"
            )
        lie_failures: list[str] = []
        for w in sorted(
            (w for w in f.factors if 2 <= len(w) <= audit_len),
            key=lambda w: (len(w), w),
        ):
            try:
                graded.lie_decomposition(f, w)
            except NoSplitError:
                lie_failures.append(m.decode(w))
        lie_doc = {
            "max_len": audit_len,
            "pass": not lie_failures,
            "failures": lie_failures,
        }
        for w in lie_failures:
            counterexamples.append(f"bracket decomposition failed for '{w}'")
    else:
        rotation_doc = {"max_len": audit_len, "pass": None, "skipped": "factor bound below 2"}
        lie_doc = {"max_len": audit_len, "pass": None, "skipped": "factor bound below 2"}
    levels = (
        (prefix.generation_level - 1, prefix.generation_level)
        if prefix.generation_level >= 1
        else (prefix.generation_level,)
    )
    scan = graded.graded_nilpotency_scan(m, cfg.d_max, list(levels))
    scan_doc = {
        "levels": list(scan.levels),
        "degenerate_grading": scan.degenerate_grading,
        "table": [
            {
                "d": row.degree,
                "values": [_s(v) for v in row.values],
                "stabilized": row.stabilized,
                "unbounded_within_sample": row.unbounded_within_sample,
            }
            for row in scan.rows
        ],
    }
    dims = [
        _s(algebra.graded_dimension(f, m.degrees, d))
        for d in range(0, min(cfg.d_max, f.max_len) + 1)
    ]
    return {
        "s_prefix": [_s(v) for v in s.sums[:S_PREFIX_SHOWN]],
        "chains": chains,
        "rotation_audit": rotation_doc,
        "lie": lie_doc,
        "graded_dims": dims,
        "nilpotency_scan": scan_doc,
    }


def _diagnostics_doc(
    m: Morphism,
    poly: CharPoly,
    weights: WeightSequences | None,
    f: FactorSet,
    warnings: list[str],
) -> dict:
    doc: dict = {}
    if weights is not None:
        rec = recurrence_from_charpoly(poly, weights.direct)
        mismatch = weights.first_divergence is not None
        doc["weights"] = {
            "n_max": len(weights.direct) - 1,
            "direct": [_s(v) for v in weights.direct],
            "transposed": [_s(v) for v in weights.transposed],
            "cross_checked_upto": weights.cross_checked_upto,
            "convention_mismatch": mismatch,
            "first_divergence": weights.first_divergence,
            "gcd_w4_w5": {
                "direct": _s(math.gcd(weights.direct[4], weights.direct[5])),
                "transposed": _s(math.gcd(weights.transposed[4], weights.transposed[5])),
            },
            "mod2": {
                "direct": [v % 2 for v in weights.direct],
                "transposed": [v % 2 for v in weights.transposed],
            },
            "recurrence": {
                "order": rec.order,
                "coefficients": [_s(c) for c in rec.coeffs],
                "odd_coefficient_lags": [
                    k for k, c in enumerate(rec.coeffs, start=1) if c % 2
                ],
                "validated_terms": len(weights.direct),
            },
        }
        if mismatch:
            warnings.append(
                "weight conventions disagree from n="
                f"{weights.first_divergence}: direct u^T M^n theta vs transposed "
                "u^T (M^T)^n theta; both sequences reported, neither preferred"
            )
    if not f.exact:
        warnings.append(
            "factor set is a lower bound (erasing morphism); complexity values are flagged"
        )
    doc["warnings"] = warnings
    return doc


def analyze(m: Morphism, cfg: AnalysisConfig, source: str) -> tuple[dict, AnalysisContext]:
    """Run the full pipeline and build the ordered report document."""
    poly = char_poly(incidence_matrix(m))
    prefix = fixed_point_prefix(m, cfg.prefix_letters)
    f = factor_closure(m, cfg.max_len)
    deps = run_deciders(
        m,
        f,
        mh_bound=cfg.mh_bound,
        k_max=cfg.k_max,
        prefix_letters=cfg.prefix_letters,
    )
    properties = ring_property_report(m, deps)
    warnings: list[str] = []
    counterexamples: list[str] = []
    weights = (
        weight_sequence(m, WEIGHT_TERMS) if m.degrees is not None else None
    )

    doc = {
        "morphism": _morphism_doc(m, source),
        "shape": _shape_doc(m),
        "matrix": _matrix_doc(m, poly),
        "word": _word_doc(m, prefix, f),
        "complexity": _complexity_doc(deps.complexity, f),
        "properties": {
            **_properties_doc(properties),
            "primitive_morphism": verdict_doc(deps.primitive),
            "uniformly_recurrent": verdict_doc(deps.uniformly_recurrent),
            "eventually_periodic": verdict_doc(deps.eventually_periodic),
        },
    }
    if m.degrees is not None:
        doc["graded"] = _graded_doc(m, prefix, f, cfg, counterexamples)
    doc["diagnostics"] = _diagnostics_doc(m, poly, weights, f, warnings)

    ctx = AnalysisContext(
        morphism=m,
        factor_set=f,
        prefix=prefix,
        deciders=deps,
        properties=properties,
        poly=poly,
        weights=weights,
        audit_passed=not counterexamples,
        counterexamples=counterexamples,
    )
    return doc, ctx


def audit(
    m: Morphism, cfg: AnalysisConfig, source: str, max_len: int | None = None
) -> tuple[dict, bool, list[str]]:
    """Grading audit document: chains, rotations, brackets, windows, prefixes."""
    if m.degrees is None:
        raise ContractError("audit requires a grading")
    audit_len = max_len if max_len is not None else cfg.max_len
    if audit_len < 2:
        raise ContractError("audit needs a factor bound of at least 2")
    counterexamples: list[str] = []
    f = factor_closure(m, audit_len)
    prefix = fixed_point_prefix(m, cfg.prefix_letters)
    s = graded.s_set(m, prefix)

    chains = []
    for d in range(1, cfg.d_max + 1):
        witness = graded.max_homogeneous_chain(m, s, f, d)
        chains.append(
            {
                "d": d,
                "max_r": witness.length,
                "witness": {
                    "start": _s(witness.start_value),
                    "pieces": [m.decode(p) for p in witness.pieces[:8]],
                },
            }
        )

    rotation = graded.cyclic_rotation_audit(f, audit_len)
    if not rotation.passed and rotation.counterexample is not None:
        counterexamples.append(
            f"rotation audit: every rotation of '{m.decode(rotation.counterexample)}' is a factor"
        )
    lie_failures = []
    for w in sorted(
        (w for w in f.factors if 2 <= len(w) <= audit_len), key=lambda w: (len(w), w)
    ):
        try:
            graded.lie_decomposition(f, w)
        except NoSplitError:
            lie_failures.append(m.decode(w))
    for w in lie_failures:
        counterexamples.append(f"bracket decomposition failed for '{w}'")

    deps_ur = decide_uniform_recurrence(m, f, k_max=cfg.k_max)
    window_doc: dict = {"applicable": False}
    if deps_ur.is_yes and deps_ur.certificate.get("witness") == "block-cover":
        gap = deps_ur.certificate["start_gap_bound"]
        max_block = deps_ur.certificate["max_block"]
        needed = max(4 * max_block * 16, min(cfg.prefix_letters, len(prefix.word)))
        scan_prefix = (
            prefix.word if len(prefix.word) >= needed else fixed_point_prefix(m, needed).word
        )
        ok = graded.every_window_contains(scan_prefix[:needed], m.start, gap)
        if not ok:
            raise InvariantError(
                "block-cover certificate violated: a window without the start letter exists"
            )
        window_doc = {
            "applicable": True,
            "window": gap,
            "scanned_letters": needed,
            "pass": True,
        }

    identity_results = []
    n = 1
    while n <= 8:
        a = m.apply_n(chr(m.start), n + 1)
        b = m.apply_n(chr(m.start), n)
        if len(a) + len(b) > len(prefix.word):
            break
        holds = prefix.word.startswith(a + b)
        identity_results.append({"n": n, "holds": holds})
        if not holds:
            counterexamples.append(
                f"prefix identity fails at n={n}: phi^{n + 1}(start) phi^{n}(start) "
                "is not a prefix of the fixed point"
            )
        n += 1

    doc = {
        "morphism": _morphism_doc(m, source),
        "graded": {
            "s_prefix": [_s(v) for v in s.sums[:S_PREFIX_SHOWN]],
            "chains": chains,
            "rotation_audit": {
                "max_len": rotation.max_len,
                "pass": rotation.passed,
                "counterexample": m.decode(rotation.counterexample)
                if rotation.counterexample is not None
                else None,
                "per_length": {str(l): c for l, c in rotation.per_length},
            },
            "lie": {
                "max_len": audit_len,
                "pass": not lie_failures,
                "failures": lie_failures,
            },
        },
        "checks": {
            "window": window_doc,
            "prefix_identity": identity_results,
        },
        "result": {
            "pass": not counterexamples,
            "counterexamples": counterexamples,
        },
    }
    return doc, not counterexamples, counterexamples


def to_json(doc: dict) -> str:
    return json.dumps(doc, ensure_ascii=True, indent=2) + "\n"


def render_text(doc: dict, indent: int = 0) -> str:
    """Plain deterministic rendering that follows document order."""
    lines: list[str] = []

    def walk(node, depth: int, label: str | None) -> None:
        pad = "  " * depth
        if isinstance(node, dict):
            if label is not None:
                lines.append(f"{pad}{label}:")
            for k, v in node.items():
                walk(v, depth + (0 if label is None else 1), str(k))
        elif isinstance(node, list):
            if all(not isinstance(x, (dict, list)) for x in node):
                rendered = " ".join(str(x) for x in node)
                lines.append(f"{pad}{label}: [{rendered}]")
            else:
                lines.append(f"{pad}{label}:")
                for i, x in enumerate(node):
                    walk(x, depth + 1, f"[{i}]")
        else:
            lines.append(f"{pad}{label}: {node}")

    walk(doc, indent, None)
    return "\n".join(lines) + "\n"


__all__ = ["analyze", "audit", "to_json", "render_text", "verdict_doc", "AnalysisContext"]
