"""Numerical audits of the divergence inequalities and their equality cases.

Each check computes both sides of one stated inequality, reports the signed
slack (rhs - lhs), a ``holds`` verdict at a relative tolerance, and an
equality verdict: ``equality_expected`` is predicted from the known equality
conditions (proportional integrands, identical densities, linear
generators), ``equality_observed`` measures whether the slack actually
vanished. Prediction is one-directional: a detected condition must force
equality, but observed equality without a detected condition is reported,
never raised.

Chain checks (the concave product bound) conjoin the per-link verdicts into
``holds``; the individual link slacks are kept in ``detail``.

``audit_suite`` runs seeded randomized instances of every check plus the
engine's identity properties and returns the reports in a deterministic
order; violations are report entries, not exceptions.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .divergence import (
    IthMixedSpec,
    PairTriple,
    f_divergence,
    integrand_factor,
    ith_mixed,
    ith_mixed_reference,
    mixed_divergence,
    mixed_divergence_k,
)
from .errors import (
    DegenerateIndices,
    IndexOutOfRange,
    LengthMismatch,
    MixdivError,
    NotProbability,
    ShapeMismatch,
)
from .generators import (
    CONCAVE,
    CONVEX,
    Generator,
    adjoint,
    make_generator,
    scale_generator,
)
from .measures import Density, MeasureSpace, integrate, make_space, validate_density


@dataclass(frozen=True)
class Tolerances:
    """Relative tolerances separating inequality slack, observed equality,
    and proportionality detection noise."""

    ineq: float = 1e-12
    eq: float = 1e-10
    prop: float = 1e-8


DEFAULT_TOLERANCES = Tolerances()


@dataclass(frozen=True)
class ProportionalityVerdict:
    """Outcome of an effective-proportionality test.

    ``null_factor_index`` identifies an identically zero input (0 for the
    first vector, 1 for the second); a null vector is proportional to
    anything. ``ratio_spread`` is the normalized max-min spread of the
    pointwise ratios, symmetrized over both ratio directions.
    """

    proportional: bool
    null_factor_index: Optional[int]
    ratio_spread: float


@dataclass(frozen=True)
class AuditReport:
    """One audited inequality: sides, slack, and verdicts.

    ``holds`` is slack >= -ineq * max(1, |rhs|), possibly conjoined with
    extra per-link conditions for chain checks; ``equality_observed`` is
    |slack| <= eq * max(1, |lhs|, |rhs|) and only ever true when ``holds``.
    """

    name: str
    lhs: float
    rhs: float
    slack: float
    holds: bool
    equality_expected: bool
    equality_observed: bool
    tolerances: Tolerances
    detail: dict = field(default_factory=dict)


def _report(
    name: str,
    lhs: float,
    rhs: float,
    tol: Tolerances,
    equality_expected: bool,
    detail: dict,
    extra_holds: bool = True,
) -> AuditReport:
    lhs = float(lhs)
    rhs = float(rhs)
    slack = rhs - lhs
    holds = bool(slack >= -tol.ineq * max(1.0, abs(rhs))) and bool(extra_holds)
    scale = max(1.0, abs(lhs), abs(rhs))
    observed = bool(holds and abs(slack) <= tol.eq * scale)
    return AuditReport(
        name=name,
        lhs=lhs,
        rhs=rhs,
        slack=slack,
        holds=holds,
        equality_expected=bool(equality_expected),
        equality_observed=observed,
        tolerances=tol,
        detail=detail,
    )


def _rel_diff(a: float, b: float) -> float:
    return abs(a - b) / max(1.0, abs(a), abs(b))


def _identity_report(
    name: str, value: float, reference: float, tol: Tolerances, detail: dict
) -> AuditReport:
    """Encode an exact identity as a report: lhs is the relative difference,
    rhs is 0, so ``holds`` means agreement within the inequality tolerance."""
    detail = dict(detail)
    detail["value"] = float(value)
    detail["reference"] = float(reference)
    return _report(name, _rel_diff(value, reference), 0.0, tol, True, detail)


def _require_prob(triples: Sequence[PairTriple], what: str) -> None:
    for t in triples:
        if not (t.p.prob_certified and t.q.prob_certified):
            raise NotProbability(f"{what} requires probability-certified densities")


def _rel_close(u: np.ndarray, v: np.ndarray, tol: float) -> bool:
    scale = max(float(np.max(np.abs(u))), float(np.max(np.abs(v))), 1e-300)
    return float(np.max(np.abs(u - v))) <= tol * scale


# --- effective proportionality ---------------------------------------------------

def effectively_proportional(
    u: Sequence[float], v: Sequence[float], eps_prop: float = DEFAULT_TOLERANCES.prop
) -> ProportionalityVerdict:
    """Decide whether a*u = b*v holds for constants (a, b) != (0, 0).

    A null vector is proportional to anything. Otherwise the zero patterns
    must coincide and the pointwise ratios must agree: the reported spread
    is (max - min) / |mean| of the ratios, maximized over both ratio
    directions so the verdict is symmetric in u and v and invariant under
    positive scaling of either argument.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if u.shape != v.shape:
        raise LengthMismatch(f"{u.size} values vs {v.size} values")
    if not u.any():
        return ProportionalityVerdict(True, 0, 0.0)
    if not v.any():
        return ProportionalityVerdict(True, 1, 0.0)
    zu = u == 0.0
    if not np.array_equal(zu, v == 0.0):
        return ProportionalityVerdict(False, None, math.inf)
    uu, vv = u[~zu], v[~zu]
    r = uu / vv
    if np.any(r > 0.0) and np.any(r < 0.0):
        return ProportionalityVerdict(False, None, math.inf)
    spread = 0.0
    for ratios in (r, vv / uu):
        mean = abs(float(np.mean(ratios)))
        if mean == 0.0:
            return ProportionalityVerdict(False, None, math.inf)
        spread = max(spread, (float(np.max(ratios)) - float(np.min(ratios))) / mean)
    return ProportionalityVerdict(bool(spread <= eps_prop), None, float(spread))


def _mutually_proportional(
    vectors: Sequence[np.ndarray], eps_prop: float
) -> tuple[bool, Optional[int], float]:
    """Null member or pairwise effective proportionality of a family."""
    for idx, w in enumerate(vectors):
        if not np.asarray(w).any():
            return True, idx, 0.0
    worst = 0.0
    for a in range(len(vectors)):
        for b in range(a + 1, len(vectors)):
            verdict = effectively_proportional(vectors[a], vectors[b], eps_prop)
            worst = max(worst, verdict.ratio_spread)
            if not verdict.proportional:
                return False, None, worst
    return True, None, worst


# --- substitution vectors ---------------------------------------------------------

def build_nk(triples: Sequence[PairTriple], m: int, k: int) -> list[PairTriple]:
    """Replace the last m coordinates by the k-th triple (k is 1-based).

    Requires 1 <= m <= n and n - m + 1 <= k <= n; the first n - m triples
    are kept, the remaining m slots all become triple k (generator and both
    densities substituted together).
    """
    n = len(triples)
    if not (1 <= m <= n):
        raise IndexOutOfRange(f"m={m} outside [1, {n}]")
    if not (n - m + 1 <= k <= n):
        raise IndexOutOfRange(f"k={k} outside [{n - m + 1}, {n}]")
    return list(triples[: n - m]) + [triples[k - 1]] * m


def _shape_class(triples: Sequence[PairTriple]) -> str:
    """'convex' or 'concave' for a compatible generator vector (linear fits
    both, preferring 'convex'); mixed strict shapes raise ShapeMismatch."""
    has_convex = any(t.generator.shape == CONVEX for t in triples)
    has_concave = any(t.generator.shape == CONCAVE for t in triples)
    if has_convex and has_concave:
        raise ShapeMismatch("generator vector mixes strictly convex and concave members")
    return CONCAVE if has_concave else CONVEX


# --- the product-substitution inequality -----------------------------------------

def check_alexandrov_fenchel(
    triples: Sequence[PairTriple], m: int, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> AuditReport:
    """Audit [D(triples)]^m <= prod_k D(substituted triples), k = n-m+1..n.

    Requires an all-convex or all-concave generator vector and
    probability-certified densities. Equality is predicted when one of the
    m Holder factors g0^(1/m) * g_j is null or all are mutually effectively
    proportional over the atoms.
    """
    n = len(triples)
    if not (1 <= m <= n):
        raise IndexOutOfRange(f"m={m} outside [1, {n}]")
    shape = _shape_class(triples)
    _require_prob(triples, "the substitution inequality")

    base = mixed_divergence(triples)
    substituted = [
        mixed_divergence(build_nk(triples, m, k)) for k in range(n - m + 1, n + 1)
    ]
    lhs = base**m
    rhs = math.prod(substituted)

    factors = [integrand_factor(t) for t in triples]
    g0 = np.ones(triples[0].space.n_atoms)
    for w in factors[: n - m]:
        g0 = g0 * w ** (1.0 / n)
    holder = [g0 ** (1.0 / m) * factors[n - 1 - j] ** (1.0 / n) for j in range(m)]
    expected, null_idx, spread = _mutually_proportional(holder, tolerances.prop)

    detail = {
        "shape": shape,
        "n": int(n),
        "m": int(m),
        "mixed_value": float(base),
        "substituted_values": [float(v) for v in substituted],
        "pair_divergences": [
            float(f_divergence(t.generator, t.p, t.q)) for t in triples
        ],
        "proportionality_spread": float(spread),
    }
    if null_idx is not None:
        detail["null_factor_index"] = int(null_idx)
    return _report("alexandrov_fenchel", lhs, rhs, tolerances, expected, detail)


# --- the concave product chain ----------------------------------------------------

def check_concave_upper(
    triples: Sequence[PairTriple], tolerances: Tolerances = DEFAULT_TOLERANCES
) -> AuditReport:
    """Audit the chain [D]^n <= prod_i D_i <= prod_i f_i(1) for concave
    generator vectors over probability pairs.

    The report's lhs/rhs are the chain ends; ``holds`` requires both links.
    Equality is predicted for all-strictly-concave vectors when every
    density equals one common probability density, and for all-linear
    vectors when the convex combinations (a_i p_i + b_i q_i)/(a_i + b_i)
    agree across coordinates.
    """
    n = len(triples)
    if n == 0:
        raise IndexOutOfRange("need at least one triple")
    for t in triples:
        if not t.generator.is_concave:
            raise ShapeMismatch(f"{t.generator.label} is not concave")
    _require_prob(triples, "the concave product chain")

    base = mixed_divergence(triples)
    lhs = base**n
    pair_divergences = [f_divergence(t.generator, t.p, t.q) for t in triples]
    middle = math.prod(pair_divergences)
    rhs = math.prod(t.generator(1.0) for t in triples)
    link1 = middle - lhs >= -tolerances.ineq * max(1.0, abs(middle))
    link2 = rhs - middle >= -tolerances.ineq * max(1.0, abs(rhs))

    basis = "none"
    expected = False
    if all(t.generator.strict and t.generator.shape == CONCAVE for t in triples):
        basis = "strict-concave"
        first = triples[0].p.values
        expected = all(
            _rel_close(d.values, first, tolerances.prop)
            for t in triples
            for d in (t.p, t.q)
        )
    elif all(t.generator.kind == "linear" for t in triples):
        basis = "linear-remark"
        combos = []
        for t in triples:
            a, b = t.generator.params
            combos.append((a * t.p.values + b * t.q.values) / (a + b))
        expected = all(
            _rel_close(combos[0], c, tolerances.prop) for c in combos[1:]
        )

    detail = {
        "n": int(n),
        "mixed_value": float(base),
        "pair_divergences": [float(v) for v in pair_divergences],
        "product_of_divergences": float(middle),
        "link_slacks": [float(middle - lhs), float(rhs - middle)],
        "equality_basis": basis,
    }
    return _report(
        "concave_product_chain", lhs, rhs, tolerances, expected, detail,
        extra_holds=link1 and link2,
    )


# --- Jensen bounds ----------------------------------------------------------------

def check_jensen_bound(
    g: Generator, p: Density, q: Density, tolerances: Tolerances = DEFAULT_TOLERANCES
) -> AuditReport:
    """Audit the one-pair bound against f(1): convex generators satisfy
    D >= f(1), concave ones D <= f(1), linear ones equality."""
    if not (p.prob_certified and q.prob_certified):
        raise NotProbability("Jensen bounds require probability-certified densities")
    value = f_divergence(g, p, q)
    f_one = g(1.0)
    if g.is_linear:
        lhs, rhs, direction = value, f_one, "equality"
    elif g.is_convex:
        lhs, rhs, direction = f_one, value, "lower"
    else:
        lhs, rhs, direction = value, f_one, "upper"

    if g.is_linear:
        expected = True
    elif g.strict:
        expected = _rel_close(p.values, q.values, tolerances.prop)
    else:
        expected = False

    extra = True
    if direction == "equality":
        extra = abs(rhs - lhs) <= tolerances.ineq * max(1.0, abs(rhs))
    detail = {
        "generator": g.label,
        "shape": g.shape,
        "direction": direction,
        "divergence": float(value),
        "f_at_one": float(f_one),
    }
    return _report("jensen_bound", lhs, rhs, tolerances, expected, detail, extra_holds=extra)


# --- index interpolation ----------------------------------------------------------

def check_interpolation(
    pair1: PairTriple,
    pair2: PairTriple,
    n: int,
    i: float,
    j: float,
    k: float,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> AuditReport:
    """Audit D(i) <= D(j)**((k-i)/(k-j)) * D(k)**((i-j)/(k-j)) for i between
    j and k (log-convexity of the index map).

    Both generators must be strictly positive on (0, inf). Equality is
    predicted at the endpoints or when the two integrand vectors are
    effectively proportional (a null integrand counts as proportional).
    """
    if j == k:
        raise DegenerateIndices("interpolation endpoints must differ")
    if not (min(j, k) <= i <= max(j, k)):
        raise IndexOutOfRange(f"i={i} not between j={j} and k={k}")
    for g in (pair1.generator, pair2.generator):
        if not g.positive:
            raise ShapeMismatch(f"{g.label} is not strictly positive on (0, inf)")

    def at(index: float) -> float:
        return ith_mixed(IthMixedSpec(pair1, pair2, i=index, n=n))

    d_i, d_j, d_k = at(i), at(j), at(k)
    lhs = d_i
    rhs = d_j ** ((k - i) / (k - j)) * d_k ** ((i - j) / (k - j))

    if i == j or i == k:
        expected, spread = True, 0.0
    else:
        verdict = effectively_proportional(
            integrand_factor(pair1), integrand_factor(pair2), tolerances.prop
        )
        expected, spread = verdict.proportional, verdict.ratio_spread

    detail = {
        "n": int(n),
        "i": float(i),
        "j": float(j),
        "k": float(k),
        "D_j": float(d_j),
        "D_k": float(d_k),
        "proportionality_spread": float(spread),
    }
    return _report("holder_interpolation", lhs, rhs, tolerances, expected, detail)


# --- endpoint corollaries ---------------------------------------------------------

COROLLARY_CASES = (
    "concave_0_i_n",
    "ref_concave",
    "convex_concave_k_ge_n",
    "ref_convex",
    "concave_convex_k_le_0",
    "ref_concave_k_le_0",
)

# (f1 requirement, f2 requirement, index predicate, direction of [D]^n vs bound)
_CASE_TABLE = {
    "concave_0_i_n": ("concave", "concave", "unit", "le"),
    "ref_concave": ("concave", "any", "unit", "le"),
    "convex_concave_k_ge_n": ("convex", "concave", "ge_n", "ge"),
    "ref_convex": ("convex", "any", "ge_n", "ge"),
    "concave_convex_k_le_0": ("concave", "convex", "le_0", "ge"),
    "ref_concave_k_le_0": ("concave", "any", "le_0", "ge"),
}


def _require_shape(g: Generator, requirement: str, role: str) -> None:
    if not g.positive:
        raise ShapeMismatch(f"{role} {g.label} is not strictly positive on (0, inf)")
    if requirement == "concave" and not g.is_concave:
        raise ShapeMismatch(f"{role} {g.label} must be concave")
    if requirement == "convex" and not g.is_convex:
        raise ShapeMismatch(f"{role} {g.label} must be convex")


def check_corollary(
    case: str,
    pair1: PairTriple,
    n: int,
    index: float,
    *,
    pair2: Optional[PairTriple] = None,
    f2: Optional[Generator] = None,
    tolerances: Tolerances = DEFAULT_TOLERANCES,
) -> AuditReport:
    """Audit one endpoint corollary: [D(index)]^n against
    f1(1)**index * f2(1)**(n-index).

    Cases (``ref_*`` use the base-measure variant and need mass-1 spaces,
    the others need a second triple):

    * ``concave_0_i_n``        both concave, 0 <= index <= n, bound from above
    * ``ref_concave``          f1 concave, 0 <= index <= n, bound from above
    * ``convex_concave_k_ge_n`` f1 convex, f2 concave, index >= n, bound from below
    * ``ref_convex``           f1 convex, index >= n, bound from below
    * ``concave_convex_k_le_0`` f1 concave, f2 convex, index <= 0, bound from below
    * ``ref_concave_k_le_0``   f1 concave, index <= 0, bound from below
    """
    if case not in _CASE_TABLE:
        raise MixdivError(f"unknown corollary case {case!r}")
    req1, req2, index_rule, direction = _CASE_TABLE[case]
    reference = case.startswith("ref_")
    f1 = pair1.generator
    _require_shape(f1, req1, "f1")
    if reference:
        if f2 is None:
            raise MixdivError(f"case {case!r} needs the f2 generator")
        other = f2
    else:
        if pair2 is None:
            raise MixdivError(f"case {case!r} needs a second triple")
        other = pair2.generator
    _require_shape(other, req2, "f2")
    if index_rule == "unit" and not (0.0 <= index <= n):
        raise IndexOutOfRange(f"index={index} outside [0, {n}]")
    if index_rule == "ge_n" and index < n:
        raise IndexOutOfRange(f"index={index} must be >= n={n}")
    if index_rule == "le_0" and index > 0.0:
        raise IndexOutOfRange(f"index={index} must be <= 0")

    if reference:
        _require_prob([pair1], "the corollary audit")
        value = ith_mixed_reference(pair1, index, n, other)
    else:
        _require_prob([pair1, pair2], "the corollary audit")
        value = ith_mixed(IthMixedSpec(pair1, pair2, i=index, n=n))
    powered = value**n
    bound = other(1.0) ** (n - index) * f1(1.0) ** index
    if direction == "le":
        lhs, rhs = powered, bound
    else:
        lhs, rhs = bound, powered

    expected, basis = _corollary_equality(
        case, pair1, pair2, f1, other, tolerances
    )
    detail = {
        "case": case,
        "n": int(n),
        "index": float(index),
        "value": float(value),
        "bound": float(bound),
        "equality_basis": basis,
    }
    return _report(f"corollary_{case}", lhs, rhs, tolerances, expected, detail)


def _corollary_equality(
    case: str,
    pair1: PairTriple,
    pair2: Optional[PairTriple],
    f1: Generator,
    f2: Generator,
    tol: Tolerances,
) -> tuple[bool, str]:
    if case.startswith("ref_"):
        ones = np.ones(pair1.space.n_atoms)
        if f1.kind == "linear":
            a, b = f1.params
            combo = (a * pair1.p.values + b * pair1.q.values) / (a + b)
            return _rel_close(combo, ones, tol.prop), "linear-remark"
        if f1.strict:
            ok = _rel_close(pair1.p.values, ones, tol.prop) and _rel_close(
                pair1.q.values, ones, tol.prop
            )
            return ok, "strict"
        return False, "none"
    if f1.kind == "linear" and f2.kind == "linear" and case != "concave_convex_k_le_0":
        a1, b1 = f1.params
        a2, b2 = f2.params
        c1 = (a1 * pair1.p.values + b1 * pair1.q.values) / (a1 + b1)
        c2 = (a2 * pair2.p.values + b2 * pair2.q.values) / (a2 + b2)
        return _rel_close(c1, c2, tol.prop), "linear-remark"
    if f1.strict and f2.strict:
        vecs = (pair1.p.values, pair1.q.values, pair2.p.values, pair2.q.values)
        ok = all(_rel_close(vecs[0], v, tol.prop) for v in vecs[1:])
        return ok, "strict"
    return False, "none"


# --- randomized suite --------------------------------------------------------------

@dataclass(frozen=True)
class AuditConfig:
    """Instance counts and parameters for :func:`audit_suite`.

    All counts default to zero; an all-zero config yields an empty report
    list. ``corollaries`` is the instance count per corollary case.
    """

    seed: int = 0
    identities: int = 0
    af_convex: int = 0
    af_concave: int = 0
    concave_chain: int = 0
    jensen: int = 0
    interpolation: int = 0
    corollaries: int = 0
    equality_families: int = 0
    min_atoms: int = 2
    max_atoms: int = 64
    max_pairs: int = 6
    tolerances: Tolerances = DEFAULT_TOLERANCES


_POWER_ALPHAS = (-1.0, -0.5, 0.25, 0.5, 0.75, 2.0, 3.0)
_CONVEX_ALPHAS = (-1.0, -0.5, 2.0, 3.0)
_CONCAVE_ALPHAS = (0.25, 0.5, 0.75)


def _rand_space(rng, config: AuditConfig, probability: bool = False) -> MeasureSpace:
    n_atoms = int(rng.integers(config.min_atoms, config.max_atoms + 1))
    w = rng.uniform(0.25, 2.0, n_atoms)
    if probability:
        w = w / w.sum()
    return make_space(w)


def _rand_prob_density(rng, space: MeasureSpace) -> Density:
    d = np.exp(rng.uniform(-2.0, 2.0, space.n_atoms))
    d = d / integrate(space, d)
    return validate_density(space, d, require_prob=True)


def _rand_generator(rng, pool: str) -> Generator:
    def lin() -> Generator:
        a, b = rng.uniform(0.1, 2.0, 2)
        return make_generator("linear", a=a, b=b)

    def pw(alphas) -> Generator:
        return make_generator("power", alpha=float(alphas[rng.integers(len(alphas))]))

    if pool == "any":
        choice = int(rng.integers(4))
        if choice == 0:
            return make_generator("total_variation")
        if choice == 1:
            return make_generator("kl_positive_part")
        if choice == 2:
            return lin()
        return pw(_POWER_ALPHAS)
    if pool == "convex":
        choice = int(rng.integers(4))
        if choice == 0:
            return make_generator("total_variation")
        if choice == 1:
            return make_generator("kl_positive_part")
        if choice == 2:
            return lin()
        return pw(_CONVEX_ALPHAS)
    if pool == "concave":
        return lin() if rng.integers(3) == 0 else pw(_CONCAVE_ALPHAS)
    if pool == "positive":
        return lin() if rng.integers(3) == 0 else pw(_POWER_ALPHAS)
    if pool == "positive_convex":
        return lin() if rng.integers(3) == 0 else pw(_CONVEX_ALPHAS)
    if pool == "positive_concave":
        return lin() if rng.integers(3) == 0 else pw(_CONCAVE_ALPHAS)
    if pool == "strict_convex":
        return pw(_CONVEX_ALPHAS)
    if pool == "strict_concave":
        return pw(_CONCAVE_ALPHAS)
    raise MixdivError(f"unknown generator pool {pool!r}")


def _rand_triples(rng, config: AuditConfig, pool: str, space=None, n=None):
    if space is None:
        space = _rand_space(rng, config)
    if n is None:
        n = int(rng.integers(1, config.max_pairs + 1))
    return [
        PairTriple(
            _rand_generator(rng, pool),
            _rand_prob_density(rng, space),
            _rand_prob_density(rng, space),
        )
        for _ in range(n)
    ]


def _identity_instance(rng, config: AuditConfig, idx: int) -> list[AuditReport]:
    tol = config.tolerances
    triples = _rand_triples(rng, config, "any")
    n = len(triples)
    space = triples[0].space
    base = mixed_divergence(triples)
    meta = {"instance": idx, "n": n, "atoms": space.n_atoms}
    out = []

    perm = [int(x) for x in rng.permutation(n)]
    permuted = mixed_divergence([triples[j] for j in perm])
    out.append(_identity_report("permutation_invariance", permuted, base, tol, meta))

    row = [mixed_divergence_k(triples, k) for k in range(n + 1)]
    worst = max(row, key=lambda v: _rel_diff(v, base))
    out.append(
        _identity_report("order_change", worst, base, tol, {**meta, "row": [float(v) for v in row]})
    )

    swapped = [PairTriple(adjoint(t.generator), t.q, t.p) for t in triples]
    out.append(_identity_report("adjoint_swap", mixed_divergence(swapped), base, tol, meta))

    adjointed = [PairTriple(adjoint(t.generator), t.p, t.q) for t in triples]
    reversed_ = [PairTriple(t.generator, t.q, t.p) for t in triples]
    rev_adjointed = [PairTriple(adjoint(t.generator), t.q, t.p) for t in triples]
    s_pq = base + mixed_divergence(adjointed)
    s_qp = mixed_divergence(reversed_) + mixed_divergence(rev_adjointed)
    out.append(_identity_report("symmetry_in_distributions", s_pq, s_qp, tol, meta))

    diag = [triples[0]] * n
    out.append(
        _identity_report(
            "diagonal_reduction",
            mixed_divergence(diag),
            f_divergence(triples[0].generator, triples[0].p, triples[0].q),
            tol,
            meta,
        )
    )

    c = float(rng.uniform(0.2, 5.0))
    scaled_space = make_space(space.weights * c)
    rescaled = [
        PairTriple(
            t.generator,
            validate_density(scaled_space, t.p.values / c, require_prob=True),
            validate_density(scaled_space, t.q.values / c, require_prob=True),
        )
        for t in triples
    ]
    out.append(
        _identity_report(
            "measure_rescaling", mixed_divergence(rescaled), base, tol, {**meta, "scale": c}
        )
    )
    return out


def _af_instance(rng, config: AuditConfig, pool: str, idx: int) -> list[AuditReport]:
    triples = _rand_triples(rng, config, pool)
    out = []
    for m in range(1, len(triples) + 1):
        rep = check_alexandrov_fenchel(triples, m, config.tolerances)
        rep.detail["instance"] = idx
        out.append(rep)
    return out


def _interpolation_instance(rng, config: AuditConfig, idx: int) -> list[AuditReport]:
    tol = config.tolerances
    space = _rand_space(rng, config)
    n = int(rng.integers(1, config.max_pairs + 1))
    pair1 = PairTriple(
        _rand_generator(rng, "positive"),
        _rand_prob_density(rng, space),
        _rand_prob_density(rng, space),
    )
    pair2 = PairTriple(
        _rand_generator(rng, "positive"),
        _rand_prob_density(rng, space),
        _rand_prob_density(rng, space),
    )
    j = float(rng.uniform(-3.0, n - 0.25))
    k = float(rng.uniform(j + 0.5, n + 3.0))
    i = float(rng.uniform(j, k))
    rep = check_interpolation(pair1, pair2, n, i, j, k, tol)
    rep.detail["instance"] = idx
    out = [rep]

    spec0 = IthMixedSpec(pair1, pair2, i=0.0, n=n)
    spec_n = IthMixedSpec(pair1, pair2, i=float(n), n=n)
    meta = {"instance": idx, "n": n}
    out.append(
        _identity_report(
            "ith_endpoint_low",
            ith_mixed(spec0),
            f_divergence(pair2.generator, pair2.p, pair2.q),
            tol,
            meta,
        )
    )
    out.append(
        _identity_report(
            "ith_endpoint_high",
            ith_mixed(spec_n),
            f_divergence(pair1.generator, pair1.p, pair1.q),
            tol,
            meta,
        )
    )
    # the index duality swaps the coordinate roles and reflects i to n - i
    dual = IthMixedSpec(pair2, pair1, i=n - i, n=n)
    out.append(
        _identity_report(
            "ith_duality",
            ith_mixed(IthMixedSpec(pair1, pair2, i=i, n=n)),
            ith_mixed(dual),
            tol,
            {**meta, "i": i},
        )
    )
    return out


def _corollary_instance(rng, config: AuditConfig, case: str, idx: int) -> AuditReport:
    tol = config.tolerances
    req1, req2, index_rule, _ = _CASE_TABLE[case]
    reference = case.startswith("ref_")
    space = _rand_space(rng, config, probability=reference)
    n = int(rng.integers(1, config.max_pairs + 1))
    pool1 = "positive_convex" if req1 == "convex" else "positive_concave"
    pool2 = {"convex": "positive_convex", "concave": "positive_concave", "any": "positive"}[req2]
    pair1 = PairTriple(
        _rand_generator(rng, pool1),
        _rand_prob_density(rng, space),
        _rand_prob_density(rng, space),
    )
    if index_rule == "unit":
        index = float(rng.uniform(0.0, n))
    elif index_rule == "ge_n":
        index = float(rng.uniform(n, n + 4.0))
    else:
        index = float(rng.uniform(-4.0, 0.0))
    if reference:
        rep = check_corollary(
            case, pair1, n, index, f2=_rand_generator(rng, pool2), tolerances=tol
        )
    else:
        pair2 = PairTriple(
            _rand_generator(rng, pool2),
            _rand_prob_density(rng, space),
            _rand_prob_density(rng, space),
        )
        rep = check_corollary(case, pair1, n, index, pair2=pair2, tolerances=tol)
    rep.detail["instance"] = idx
    return rep


def _equality_instance(rng, config: AuditConfig, idx: int) -> list[AuditReport]:
    tol = config.tolerances
    out = []
    space = _rand_space(rng, config)
    n = int(rng.integers(1, config.max_pairs + 1))
    p = _rand_prob_density(rng, space)
    q = _rand_prob_density(rng, space)

    # identical triples: substitution changes nothing
    g = _rand_generator(rng, "convex")
    identical = [PairTriple(g, p, q)] * n
    m = int(rng.integers(1, n + 1))
    rep = check_alexandrov_fenchel(identical, m, tol)
    rep.detail.update(instance=idx, family="identical_triples")
    out.append(rep)

    # scaled family: f_i = lambda_i * f with one shared pair
    f = _rand_generator(rng, "strict_convex")
    lams = rng.uniform(0.5, 3.0, n)
    scaled = [PairTriple(scale_generator(f, float(lam)), p, q) for lam in lams]
    m = int(rng.integers(1, n + 1))
    rep = check_alexandrov_fenchel(scaled, m, tol)
    rep.detail.update(instance=idx, family="scaled_generators")
    out.append(rep)

    # concave chain with every density equal to one common p
    gens = [_rand_generator(rng, "strict_concave") for _ in range(n)]
    diagonal = [PairTriple(gg, p, p) for gg in gens]
    rep = check_concave_upper(diagonal, tol)
    rep.detail.update(instance=idx, family="common_density")
    out.append(rep)

    # Jensen: linear always, strict with p = q
    a, b = rng.uniform(0.1, 2.0, 2)
    rep = check_jensen_bound(make_generator("linear", a=a, b=b), p, q, tol)
    rep.detail.update(instance=idx, family="jensen_linear")
    out.append(rep)
    rep = check_jensen_bound(_rand_generator(rng, "strict_convex"), p, p, tol)
    rep.detail.update(instance=idx, family="jensen_diagonal")
    out.append(rep)

    # interpolation: i at an endpoint, and a proportional pair family
    f2 = _rand_generator(rng, "positive")
    pair1 = PairTriple(f2, p, q)
    j = float(rng.uniform(-2.0, n))
    k = float(rng.uniform(j + 0.5, n + 2.0))
    rep = check_interpolation(pair1, PairTriple(_rand_generator(rng, "positive"), p, q),
                              n, j, j, k, tol)
    rep.detail.update(instance=idx, family="interpolation_endpoint")
    out.append(rep)
    lam = float(rng.uniform(0.5, 3.0))
    rep = check_interpolation(
        PairTriple(scale_generator(f2, lam), p, q), pair1, n,
        float(rng.uniform(j, k)), j, k, tol,
    )
    rep.detail.update(instance=idx, family="interpolation_proportional")
    out.append(rep)

    # corollary equality: all four densities equal (strict shapes)
    f_cc = _rand_generator(rng, "strict_concave")
    g_cc = _rand_generator(rng, "strict_concave")
    rep = check_corollary(
        "concave_0_i_n",
        PairTriple(f_cc, p, p),
        n,
        float(rng.uniform(0.0, n)),
        pair2=PairTriple(g_cc, p, p),
        tolerances=tol,
    )
    rep.detail.update(instance=idx, family="corollary_diagonal")
    out.append(rep)

    # reference corollary equality: P1 = Q1 = mu over a probability space
    prob_space = _rand_space(rng, config, probability=True)
    unit = validate_density(prob_space, np.ones(prob_space.n_atoms), require_prob=True)
    rep = check_corollary(
        "ref_concave",
        PairTriple(_rand_generator(rng, "strict_concave"), unit, unit),
        n,
        float(rng.uniform(0.0, n)),
        f2=_rand_generator(rng, "positive"),
        tolerances=tol,
    )
    rep.detail.update(instance=idx, family="corollary_reference")
    out.append(rep)
    return out


def audit_suite(config: AuditConfig) -> list[AuditReport]:
    """Run every configured family of randomized checks.

    Deterministic for a fixed config (one seeded RNG consumed in a fixed
    section order); returns the reports in generation order. Violations are
    reported, not raised; see :func:`violations`.
    """
    rng = np.random.default_rng(config.seed)
    reports: list[AuditReport] = []
    for idx in range(config.identities):
        reports.extend(_identity_instance(rng, config, idx))
    for idx in range(config.af_convex):
        reports.extend(_af_instance(rng, config, "convex", idx))
    for idx in range(config.af_concave):
        reports.extend(_af_instance(rng, config, "concave", idx))
    for idx in range(config.concave_chain):
        triples = _rand_triples(rng, config, "concave")
        rep = check_concave_upper(triples, config.tolerances)
        rep.detail["instance"] = idx
        reports.append(rep)
    for idx in range(config.jensen):
        space = _rand_space(rng, config)
        rep = check_jensen_bound(
            _rand_generator(rng, "any"),
            _rand_prob_density(rng, space),
            _rand_prob_density(rng, space),
            config.tolerances,
        )
        rep.detail["instance"] = idx
        reports.append(rep)
    for idx in range(config.interpolation):
        reports.extend(_interpolation_instance(rng, config, idx))
    for case in COROLLARY_CASES:
        for idx in range(config.corollaries):
            reports.append(_corollary_instance(rng, config, case, idx))
    for idx in range(config.equality_families):
        reports.extend(_equality_instance(rng, config, idx))
    return reports


def violations(reports: Sequence[AuditReport]) -> list[AuditReport]:
    """The subset of reports whose inequality failed."""
    return [r for r in reports if not r.holds]


def report_to_dict(report: AuditReport) -> dict:
    """JSON-ready form of a report (field names match the dataclass)."""
    return {
        "name": report.name,
        "lhs": report.lhs,
        "rhs": report.rhs,
        "slack": report.slack,
        "holds": report.holds,
        "equality_expected": report.equality_expected,
        "equality_observed": report.equality_observed,
        "tolerances": {
            "eps_ineq": report.tolerances.ineq,
            "eps_eq": report.tolerances.eq,
            "eps_prop": report.tolerances.prop,
        },
        "detail": report.detail,
    }


def reports_to_json(reports: Sequence[AuditReport]) -> str:
    """Serialize reports as a JSON list; floats use shortest round-trip form."""
    return json.dumps([report_to_dict(r) for r in reports], indent=2)
