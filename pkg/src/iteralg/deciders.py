"""Three-valued decision procedures for word properties and the ring dictionary.

Every Yes/No verdict carries a machine-checkable certificate; bounded
searches that end inconclusively return Unknown with the exhausted bound.
A "conditional" verdict rests on a bounded search rather than a closed-form
certificate and is never presented as certified.
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

from .errors import InvariantError
from .words import (
    FactorSet,
    Morphism,
    Word,
    classify_shape,
    fixed_point_prefix,
    growing_letters,
    occurring_letters,
    subword_complexity,
)
from .matrices import (
    IncidenceMatrix,
    OccurrenceCount,
    incidence_matrix,
    occurrence_decider,
)


class VerdictValue(enum.Enum):
    YES = "Yes"
    NO = "No"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class Verdict:
    value: VerdictValue
    conditional: bool = False
    certificate: dict = field(default_factory=dict)
    bound: int | None = None

    @staticmethod
    def yes(certificate: dict, *, conditional: bool = False, bound: int | None = None) -> "Verdict":
        return Verdict(VerdictValue.YES, conditional, certificate, bound)

    @staticmethod
    def no(certificate: dict, *, conditional: bool = False, bound: int | None = None) -> "Verdict":
        return Verdict(VerdictValue.NO, conditional, certificate, bound)

    @staticmethod
    def unknown(bound: int | None = None, note: str | None = None) -> "Verdict":
        cert = {"note": note} if note else {}
        return Verdict(VerdictValue.UNKNOWN, True, cert, bound)

    @property
    def is_yes(self) -> bool:
        return self.value is VerdictValue.YES

    @property
    def is_no(self) -> bool:
        return self.value is VerdictValue.NO

    @property
    def is_unknown(self) -> bool:
        return self.value is VerdictValue.UNKNOWN


class ComplexityClass(enum.Enum):
    CONSTANT = "O(1)"
    LINEAR = "Theta(n)"
    N_LOG_LOG_N = "Theta(n log log n)"
    N_LOG_N = "Theta(n log n)"
    QUADRATIC = "Theta(n^2)"
    UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ComplexityResult:
    complexity_class: ComplexityClass
    gk_dimension: int | None  # None = Unknown
    conditional: bool
    method: str
    fit: dict = field(default_factory=dict)


@dataclass(frozen=True)
class PropertyReport:
    prime: Verdict
    semiprime: Verdict
    just_infinite: Verdict
    pi: Verdict
    noetherian: Verdict
    jacobson_trivial: Verdict
    primitive_algebra: Verdict
    gk_dimension: int | None
    complexity_class: ComplexityClass


@dataclass(frozen=True)
class DeciderOutputs:
    primitive: Verdict
    eventually_periodic: Verdict
    uniformly_recurrent: Verdict
    complexity: ComplexityResult
    start_occurrence: OccurrenceCount


# ---------------------------------------------------------------------------
# primitivity


def _support_reach(m: Morphism, letters: frozenset[int]) -> dict[int, set[int]]:
    """>= 1 step reachability in the digraph a -> letters of phi(a)."""
    reach = {a: {ord(ch) for ch in m.images[a] if ord(ch) in letters} for a in letters}
    changed = True
    while changed:
        changed = False
        for a in letters:
            add: set[int] = set()
            for b in reach[a]:
                add |= reach[b]
            if not add <= reach[a]:
                reach[a] |= add
                changed = True
    return reach


def decide_primitive(M: IncidenceMatrix, m: Morphism) -> Verdict:
    """Irreducibility of the incidence structure over the occurring letters."""
    occ = occurring_letters(m)
    reach = _support_reach(m, occ)
    missing = [
        (a, b) for a in sorted(occ) for b in sorted(occ) if b not in reach[a]
    ]
    full = not missing
    # Under the occurring-letter normalization, "every letter reaches the
    # start" must agree with full irreducibility.
    reduced = all(m.start in reach[a] for a in occ)
    if full != reduced:
        raise InvariantError("reduced start-reachability test disagrees with closure")
    if full:
        return Verdict.yes(
            {
                "witness": "support-closure",
                "letters": [m.letters[a] for a in sorted(occ)],
            }
        )
    a, b = missing[0]
    return Verdict.no(
        {
            "witness": "unreachable-pair",
            "from": m.letters[a],
            "to": m.letters[b],
        }
    )


# ---------------------------------------------------------------------------
# eventual periodicity


def _periodic_stream(preperiod: Word, period: Word, length: int) -> Word:
    if length <= len(preperiod):
        return preperiod[:length]
    reps = (length - len(preperiod)) // len(period) + 1
    return (preperiod + period * reps)[:length]


def _verify_periodic_fixed_point(m: Morphism, preperiod: Word, period: Word) -> int | None:
    """Length over which u v^omega was certified equal to phi(u v^omega).

    A word starting with the prolongable start letter and fixed by phi is the
    fixed point; equality of two eventually periodic words follows from
    agreement over preperiod + lcm of periods + slack.
    """
    if not period:
        return None
    img_pre = m.apply(preperiod)
    img_per = m.apply(period)
    if not img_per:
        return None
    stream = preperiod + period
    if not stream or ord(stream[0]) != m.start:
        return None
    need = max(len(preperiod), len(img_pre)) + math.lcm(len(period), len(img_per)) + len(period)
    lhs = _periodic_stream(preperiod, period, need)
    rhs = _periodic_stream(img_pre, img_per, need)
    return need if lhs == rhs else None


def _periodic_candidates(prefix: Word, max_period: int):
    """(preperiod, period) pairs consistent with the prefix, smallest q first.

    Candidates are only plausible; the caller must verify them against the
    morphism before trusting one.
    """
    n = len(prefix)
    for q in range(1, max_period + 1):
        j = n - q  # first index from which prefix[i] == prefix[i+q] holds on
        while j > 0 and prefix[j - 1] == prefix[j - 1 + q]:
            j -= 1
        # require the periodic tail to be observed for at least two periods
        if j + 2 * q <= n:
            yield prefix[:j], prefix[j : j + q]


def decide_eventual_periodicity(
    m: Morphism,
    f: FactorSet,
    *,
    mh_bound: int | None = None,
    prefix_letters: int = 4**8,
) -> Verdict:
    """Morse-Hedlund positive test plus verified period extraction.

    Yes is unconditional: the extracted (preperiod, period) pair is checked
    to reproduce a fixed point of the morphism starting with the start
    letter.  No is conditional on the exhausted complexity bound; factor
    counts are lower bounds even for inexact sets, so No stays sound there.
    """
    bound = min(f.max_len, mh_bound if mh_bound is not None else f.max_len)
    fired_at = None
    for n in range(1, bound + 1):
        if subword_complexity(f, n) <= n:
            fired_at = n
            break
    if fired_at is not None:
        budget = prefix_letters
        for attempt in range(3):
            prefix = fixed_point_prefix(m, budget).word
            for pre, per in _periodic_candidates(prefix, fired_at):
                verified = _verify_periodic_fixed_point(m, pre, per)
                if verified is not None:
                    return Verdict.yes(
                        {
                            "preperiod": m.decode(pre),
                            "period": m.decode(per),
                            "mh_length": fired_at,
                            "verified_letters": verified,
                        },
                        bound=bound,
                    )
            budget *= 4
        if f.exact:
            raise InvariantError(
                "complexity bound says eventually periodic but no verified "
                "period was found; this contradicts Morse-Hedlund"
            )
        return Verdict.unknown(bound=bound, note="inexact factor set fired MH without a verifiable period")
    if bound >= 1 and all(
        subword_complexity(f, n) >= n + 1 for n in range(1, bound + 1)
    ):
        return Verdict.no(
            {"witness": "complexity-exceeds-n", "checked_up_to": bound},
            conditional=True,
            bound=bound,
        )
    return Verdict.unknown(bound=bound)


# ---------------------------------------------------------------------------
# uniform recurrence


def decide_uniform_recurrence(
    m: Morphism,
    f: FactorSet,
    *,
    k_max: int = 6,
) -> Verdict:
    """Block-cover and primitivity sufficient tests, structural refutations.

    Block cover: if phi^k(a) begins with the start letter for every occurring
    a, the fixed point is a concatenation of such blocks and every factor
    recurs within a bounded window.  Refutations: the start letter occurring
    exactly once, or a growing occurring letter that never produces it.
    """
    occ = occurring_letters(m)
    b = m.start
    shape = classify_shape(m)
    for k in range(1, k_max + 1):
        images_k = {a: m.apply_n(chr(a), k) for a in sorted(occ)}
        if all(img and ord(img[0]) == b for img in images_k.values()):
            max_block = max(len(img) for img in images_k.values())
            window = (
                shape.d_uniform**k if shape.d_uniform is not None else 2 * max_block
            )
            return Verdict.yes(
                {
                    "witness": "block-cover",
                    "k": k,
                    "max_block": max_block,
                    "start_gap_bound": window,
                },
                bound=k_max,
            )

    M = incidence_matrix(m)
    prim = decide_primitive(M, m)
    if prim.is_yes:
        return Verdict.yes({"witness": "primitive"}, bound=k_max)

    occurrence = occurrence_decider(m, b)
    if occurrence is OccurrenceCount.EXACTLY_ONCE:
        return Verdict.no(
            {
                "witness": "start-letter-occurs-once",
                "letter": m.letters[b],
            }
        )
    growing = growing_letters(m)
    reach = _support_reach(m, occ)
    for a in sorted(occ):
        if a in growing and b != a and b not in reach[a]:
            return Verdict.no(
                {
                    "witness": "growing-start-free-branch",
                    "letter": m.letters[a],
                }
            )
    return Verdict.unknown(bound=k_max)


# ---------------------------------------------------------------------------
# complexity classification


def _fit_complexity(
    f: FactorSet, candidates: list[ComplexityClass], fit_max_n: int
) -> tuple[ComplexityClass, dict]:
    """Least-squares shape fit of exact p(n) values; heuristic by design."""
    shapes = {
        ComplexityClass.LINEAR: lambda n: float(n),
        ComplexityClass.N_LOG_LOG_N: lambda n: n * math.log(max(math.log(n), 1.0)) if n >= 3 else float(n),
        ComplexityClass.N_LOG_N: lambda n: n * math.log(n) if n >= 2 else float(n),
        ComplexityClass.QUADRATIC: lambda n: float(n * n),
    }
    ns = list(range(2, fit_max_n + 1))
    values = [subword_complexity(f, n) for n in ns]
    best: tuple[float, ComplexityClass] | None = None
    residuals: dict[str, float] = {}
    for cls in candidates:
        g = shapes[cls]
        gs = [g(n) for n in ns]
        denom = sum(x * x for x in gs)
        c = sum(v * x for v, x in zip(values, gs)) / denom if denom else 0.0
        ss = sum((v - c * x) ** 2 for v, x in zip(values, gs))
        norm = sum(v * v for v in values) or 1.0
        rel = ss / norm
        residuals[cls.value] = rel
        if best is None or rel < best[0]:
            best = (rel, cls)
    assert best is not None
    return best[1], {"residuals": residuals, "fit_up_to": fit_max_n}


def classify_complexity(
    m: Morphism,
    f: FactorSet,
    ep: Verdict,
    *,
    fit_max_n: int | None = None,
) -> ComplexityResult:
    """Complexity class and GK dimension from the periodicity verdict.

    Eventually periodic words have bounded complexity and dimension one.
    Aperiodic primitive or uniform morphisms have linear complexity and
    dimension two.  Anything else is narrowed structurally and then fitted
    against the admissible growth shapes; the fit is labeled heuristic.
    """
    if ep.is_yes:
        return ComplexityResult(
            ComplexityClass.CONSTANT, 1, ep.conditional, "eventually-periodic"
        )
    if ep.is_unknown:
        return ComplexityResult(ComplexityClass.UNKNOWN, None, True, "periodicity-unresolved")

    shape = classify_shape(m)
    M = incidence_matrix(m)
    if shape.d_uniform is not None and shape.d_uniform >= 2:
        return ComplexityResult(
            ComplexityClass.LINEAR, 2, ep.conditional, "d-uniform-aperiodic"
        )
    if decide_primitive(M, m).is_yes:
        return ComplexityResult(
            ComplexityClass.LINEAR, 2, ep.conditional, "primitive-aperiodic"
        )

    occ = occurring_letters(m)
    growing = growing_letters(m)
    bounded_present = any(a not in growing for a in occ)
    candidates = [
        ComplexityClass.LINEAR,
        ComplexityClass.N_LOG_LOG_N,
        ComplexityClass.N_LOG_N,
    ]
    if bounded_present:
        candidates.append(ComplexityClass.QUADRATIC)
    top = min(fit_max_n if fit_max_n is not None else f.max_len, f.max_len)
    if top < 4:
        return ComplexityResult(
            ComplexityClass.UNKNOWN, None, True, "insufficient-factor-bound"
        )
    cls, fit = _fit_complexity(f, candidates, top)
    fit["bounded_letters_present"] = bounded_present
    gk = 3 if cls is ComplexityClass.QUADRATIC else 2
    return ComplexityResult(cls, gk, True, "heuristic-fit", fit)


# ---------------------------------------------------------------------------
# ring dictionary


def _weakest(*verdicts: Verdict) -> bool:
    return any(v.conditional for v in verdicts)


def ring_property_report(m: Morphism, deps: DeciderOutputs) -> PropertyReport:
    """Map word-level verdicts to ring-theoretic ones.

    Prime iff the start letter occurs at least twice (exact decider), just
    infinite iff uniformly recurrent, PI and noetherian iff eventually
    periodic; the radical and primitivity entries use the uniformly
    recurrent + aperiodic implication and are Unknown outside it.
    """
    occurrence = deps.start_occurrence
    b_name = m.letters[m.start]
    if occurrence is OccurrenceCount.ZERO:
        raise InvariantError("start letter reported absent from its own fixed point")
    if occurrence is OccurrenceCount.AT_LEAST_TWICE:
        prime = Verdict.yes(
            {"witness": "start-occurs-at-least-twice", "letter": b_name}
        )
    else:
        prime = Verdict.no(
            {
                "witness": "nilpotent-ideal",
                "generator": b_name,
                "reason": f"{b_name} occurs exactly once, so {b_name}..{b_name} is never a factor",
            }
        )
    semiprime = Verdict(
        prime.value, prime.conditional, {**prime.certificate, "via": "semiprime-iff-prime"}, prime.bound
    )

    ep = deps.eventually_periodic
    ur = deps.uniformly_recurrent
    just_infinite = Verdict(
        ur.value, ur.conditional, {**ur.certificate, "via": "just-infinite-iff-uniformly-recurrent"}, ur.bound
    )
    pi = Verdict(
        ep.value, ep.conditional, {**ep.certificate, "via": "pi-iff-eventually-periodic"}, ep.bound
    )
    noetherian = Verdict(
        ep.value, ep.conditional, {**ep.certificate, "via": "noetherian-iff-eventually-periodic"}, ep.bound
    )

    if ur.is_yes and ep.is_no:
        jacobson = Verdict.yes(
            {"witness": "uniformly-recurrent-and-aperiodic"},
            conditional=_weakest(ur, ep),
        )
    else:
        jacobson = Verdict.unknown(note="implication applies only to uniformly recurrent aperiodic words")

    if prime.is_no:
        primitive_algebra = Verdict.no(
            {"witness": "not-prime", "via": "primitive-implies-prime"}
        )
    elif prime.is_yes and pi.is_no and jacobson.is_yes:
        primitive_algebra = Verdict.yes(
            {"witness": "prime-non-pi-semiprimitive"},
            conditional=_weakest(prime, pi, jacobson),
        )
    else:
        primitive_algebra = Verdict.unknown(note="needs prime, non-PI and trivial radical")

    return PropertyReport(
        prime=prime,
        semiprime=semiprime,
        just_infinite=just_infinite,
        pi=pi,
        noetherian=noetherian,
        jacobson_trivial=jacobson,
        primitive_algebra=primitive_algebra,
        gk_dimension=deps.complexity.gk_dimension,
        complexity_class=deps.complexity.complexity_class,
    )


def run_deciders(
    m: Morphism,
    f: FactorSet,
    *,
    mh_bound: int | None = None,
    k_max: int = 6,
    prefix_letters: int = 4**8,
    fit_max_n: int | None = None,
) -> DeciderOutputs:
    """Run the full decider battery over one shared factor set."""
    M = incidence_matrix(m)
    prim = decide_primitive(M, m)
    ep = decide_eventual_periodicity(
        m, f, mh_bound=mh_bound, prefix_letters=prefix_letters
    )
    ur = decide_uniform_recurrence(m, f, k_max=k_max)
    comp = classify_complexity(m, f, ep, fit_max_n=fit_max_n)
    occ = occurrence_decider(m, m.start)
    return DeciderOutputs(
        primitive=prim,
        eventually_periodic=ep,
        uniformly_recurrent=ur,
        complexity=comp,
        start_occurrence=occ,
    )


__all__ = [
    "VerdictValue",
    "Verdict",
    "ComplexityClass",
    "ComplexityResult",
    "PropertyReport",
    "DeciderOutputs",
    "decide_primitive",
    "decide_eventual_periodicity",
    "decide_uniform_recurrence",
    "classify_complexity",
    "ring_property_report",
    "run_deciders",
]
