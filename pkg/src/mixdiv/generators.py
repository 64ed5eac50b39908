"""Generator functions f: (0, inf) -> [0, inf) and the adjoint t*f(1/t).

The catalog covers the named divergence families:

* ``total_variation``   f(t) = |t - 1|              (convex, self-adjoint)
* ``kl_positive_part``  f(t) = max(t*ln(t), 0)      (convex; adjoint is max(-ln t, 0))
* ``power``             f(t) = t**alpha             (shape depends on alpha)
* ``linear``            f(t) = a*t + b, a,b >= 0    (adjoint swaps a and b)

plus user-supplied ``custom`` generators, whose declared shape is verified by
random midpoint sampling at construction.

Shape metadata drives the inequality audits: ``shape`` is one of ``convex``,
``concave``, ``linear`` (affine functions count as both convex and concave),
``strict`` claims strict convexity/concavity on all of (0, inf), and
``positive`` claims f(t) > 0 for every t > 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np

from .errors import (
    InvalidLinear,
    MixdivError,
    NegativeValue,
    NonpositiveArgument,
    ShapeMismatch,
)

CONVEX = "convex"
CONCAVE = "concave"
LINEAR = "linear"

#: number of random midpoint samples used to vet declared custom shapes
_SHAPE_SAMPLES = 1000
_SHAPE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Generator:
    """An immutable scalar generator with shape metadata.

    Instances are callable: ``g(t)`` evaluates f(t) for scalar t > 0, and
    ``g.eval_array(arr)`` evaluates over a positive numpy array.
    """

    kind: str
    shape: str
    strict: bool
    positive: bool
    params: tuple = ()
    adjoint_depth: int = 0
    fn: Optional[Callable[[float], float]] = None
    base: Optional["Generator"] = None

    @property
    def is_convex(self) -> bool:
        return self.shape in (CONVEX, LINEAR)

    @property
    def is_concave(self) -> bool:
        return self.shape in (CONCAVE, LINEAR)

    @property
    def is_linear(self) -> bool:
        return self.shape == LINEAR

    def __call__(self, t: float) -> float:
        return eval_generator(self, t)

    def eval_array(self, t: np.ndarray) -> np.ndarray:
        """Vectorized evaluation over strictly positive values."""
        t = np.asarray(t, dtype=float)
        if not np.all(np.isfinite(t) & (t > 0.0)):
            raise NonpositiveArgument("generator arguments must be finite and > 0")
        return _eval_array_unchecked(self, t)

    @property
    def label(self) -> str:
        if self.kind == "power":
            return f"power({self.params[0]:g})"
        if self.kind == "linear":
            return f"linear({self.params[0]:g},{self.params[1]:g})"
        return self.kind

    def __repr__(self) -> str:
        return f"Generator({self.label}, {self.shape}, strict={self.strict})"


def _power_shape(alpha: float) -> tuple[str, bool]:
    if alpha in (0.0, 1.0):
        return LINEAR, False
    if 0.0 < alpha < 1.0:
        return CONCAVE, True
    return CONVEX, True


def make_generator(kind: str, **params) -> Generator:
    """Build a catalog generator.

    Accepted kinds (with short aliases used by the JSON config format):

    * ``"total_variation"`` / ``"tv"``
    * ``"kl_positive_part"`` / ``"kl+"``
    * ``"power"`` with ``alpha=<real>``
    * ``"sqrt"`` (same as power with alpha=1/2)
    * ``"linear"`` with ``a=<real>, b=<real>``
    * ``"custom"`` with ``fn=<callable>, shape=..., strict=..., positive=...``

    Raises
    ------
    InvalidLinear
        For linear coefficients with a < 0, b < 0, or a = b = 0.
    ShapeMismatch
        When a declared custom shape contradicts midpoint sampling.
    NegativeValue
        When a custom generator produces a negative sample value.
    """
    kind = kind.lower()
    if kind in ("total_variation", "tv"):
        return Generator("total_variation", CONVEX, strict=False, positive=False)
    if kind in ("kl_positive_part", "kl+"):
        return Generator("kl_positive_part", CONVEX, strict=False, positive=False)
    if kind == "sqrt":
        kind, params = "power", {"alpha": 0.5}
    if kind == "power":
        alpha = float(params["alpha"])
        if not math.isfinite(alpha):
            raise MixdivError("power exponent must be finite")
        shape, strict = _power_shape(alpha)
        return Generator("power", shape, strict=strict, positive=True, params=(alpha,))
    if kind == "linear":
        a, b = float(params["a"]), float(params["b"])
        if a < 0.0 or b < 0.0 or (a == 0.0 and b == 0.0):
            raise InvalidLinear(f"need a >= 0, b >= 0, not both zero; got a={a}, b={b}")
        return Generator("linear", LINEAR, strict=False, positive=True, params=(a, b))
    if kind == "custom":
        return _make_custom(**params)
    raise MixdivError(f"unknown generator kind {kind!r}")


def _make_custom(
    fn: Callable[[float], float],
    shape: str,
    strict: bool = False,
    positive: bool = False,
) -> Generator:
    if shape == "both":
        shape = LINEAR
    if shape not in (CONVEX, CONCAVE, LINEAR):
        raise MixdivError(f"unknown shape {shape!r}")
    _verify_custom(fn, shape, positive)
    return Generator(
        "custom", shape, strict=bool(strict), positive=bool(positive), fn=fn
    )


def _verify_custom(fn: Callable[[float], float], shape: str, positive: bool) -> None:
    # Deterministic spot check of the declared shape on log-uniform samples.
    # t = 1 is probed explicitly: f(1) anchors every audited bound.
    if positive and fn(1.0) <= 0.0:
        raise ShapeMismatch(f"declared positive but value {fn(1.0)!r} at t=1")
    rng = np.random.default_rng(20240901)
    pts = np.exp(rng.uniform(math.log(2.0**-10), math.log(2.0**10), (_SHAPE_SAMPLES, 2)))
    for s, t in pts:
        fs, ft = fn(s), fn(t)
        fm = fn((s + t) / 2.0)
        for v, x in ((fs, s), (ft, t), (fm, (s + t) / 2.0)):
            if not math.isfinite(v):
                raise MixdivError(f"custom generator not finite at t={x!r}")
            if v < 0.0:
                raise NegativeValue(f"custom generator is {v!r} < 0 at t={x!r}")
            if positive and v <= 0.0:
                raise ShapeMismatch(f"declared positive but value {v!r} at t={x!r}")
        chord = 0.5 * (fs + ft)
        tol = _SHAPE_TOL * max(1.0, abs(chord), abs(fm))
        if shape in (CONVEX, LINEAR) and fm > chord + tol:
            raise ShapeMismatch(f"declared {shape} but midpoint exceeds chord at ({s!r}, {t!r})")
        if shape in (CONCAVE, LINEAR) and fm < chord - tol:
            raise ShapeMismatch(f"declared {shape} but midpoint is below chord at ({s!r}, {t!r})")


def adjoint(g: Generator) -> Generator:
    """Return the adjoint generator t -> t * f(1/t).

    Shape, strictness, and positivity are preserved. Known kinds map in
    closed form (power alpha -> power 1-alpha, linear(a,b) -> linear(b,a),
    total variation to itself, the positive-part entropy kinds to each
    other). Applying ``adjoint`` twice returns the original object, so the
    involution holds exactly.
    """
    if g.base is not None:
        return g.base
    depth = g.adjoint_depth + 1
    if g.kind == "power":
        alpha = g.params[0]
        shape, strict = _power_shape(1.0 - alpha)
        return Generator(
            "power", shape, strict=strict, positive=True,
            params=(1.0 - alpha,), adjoint_depth=depth, base=g,
        )
    if g.kind == "linear":
        a, b = g.params
        return Generator(
            "linear", LINEAR, strict=False, positive=True,
            params=(b, a), adjoint_depth=depth, base=g,
        )
    if g.kind == "total_variation":
        return Generator(
            "total_variation", CONVEX, strict=False, positive=False,
            adjoint_depth=depth, base=g,
        )
    if g.kind == "kl_positive_part":
        return Generator(
            "kl_adjoint", CONVEX, strict=False, positive=False,
            adjoint_depth=depth, base=g,
        )
    if g.kind == "kl_adjoint":
        return Generator(
            "kl_positive_part", CONVEX, strict=False, positive=False,
            adjoint_depth=depth, base=g,
        )
    # custom: pointwise closure
    inner = g.fn

    def star(t: float, _inner=inner) -> float:
        return t * _inner(1.0 / t)

    return Generator(
        "custom", g.shape, strict=g.strict, positive=g.positive,
        fn=star, adjoint_depth=depth, base=g,
    )


def eval_generator(g: Generator, t: float) -> float:
    """Evaluate f(t) for scalar t > 0.

    Raises
    ------
    NonpositiveArgument
        For t <= 0 or non-finite t.
    NegativeValue
        When a custom generator returns a negative value.
    """
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise NonpositiveArgument(f"generator argument {t!r} not in (0, inf)")
    kind = g.kind
    if kind == "total_variation":
        return abs(t - 1.0)
    if kind == "kl_positive_part":
        v = t * math.log(t)
        return v if v > 0.0 else 0.0
    if kind == "kl_adjoint":
        v = -math.log(t)
        return v if v > 0.0 else 0.0
    if kind == "power":
        return t ** g.params[0]
    if kind == "linear":
        a, b = g.params
        return a * t + b
    v = float(g.fn(t))
    if v < 0.0:
        raise NegativeValue(f"custom generator returned {v!r} < 0 at t={t!r}")
    return v


def _eval_array_unchecked(g: Generator, t: np.ndarray) -> np.ndarray:
    kind = g.kind
    if kind == "total_variation":
        return np.abs(t - 1.0)
    if kind == "kl_positive_part":
        return np.maximum(t * np.log(t), 0.0)
    if kind == "kl_adjoint":
        return np.maximum(-np.log(t), 0.0)
    if kind == "power":
        return t ** g.params[0]
    if kind == "linear":
        a, b = g.params
        return a * t + b
    out = np.array([float(g.fn(x)) for x in t])
    if np.any(out < 0.0):
        raise NegativeValue("custom generator returned a negative value")
    return out


def scale_generator(g: Generator, lam: float) -> Generator:
    """The generator lam * f for lam > 0; shape metadata is unchanged."""
    lam = float(lam)
    if not math.isfinite(lam) or lam <= 0.0:
        raise MixdivError(f"scale factor must be finite and > 0, got {lam!r}")

    def fn(t: float, _g=g, _l=lam) -> float:
        return _l * eval_generator(_g, t)

    return Generator(
        "custom", g.shape, strict=g.strict, positive=g.positive, fn=fn
    )


def generator_from_spec(spec: dict) -> Generator:
    """Build a generator from its JSON configuration form.

    Examples: ``{"kind": "power", "alpha": 0.5}``, ``{"kind": "tv"}``,
    ``{"kind": "kl+"}``, ``{"kind": "linear", "a": 1, "b": 0}``.
    """
    if not isinstance(spec, dict) or "kind" not in spec:
        raise MixdivError(f"generator spec must be an object with a 'kind': {spec!r}")
    params = {k: v for k, v in spec.items() if k != "kind"}
    return make_generator(spec["kind"], **params)


# --- multivariate generators ---------------------------------------------------

@dataclass(frozen=True, eq=False)
class MultivariateGenerator:
    """A function of l positive arguments, integrated pointwise over atoms.

    Unlike scalar generators the codomain may be negative (the affinity
    families are negated products).
    """

    arity: int
    fn: Callable[..., float]
    label: str = "custom"

    def __call__(self, *args: float) -> float:
        v = float(self.fn(*args))
        if not math.isfinite(v):
            raise MixdivError(f"multivariate generator not finite at {args!r}")
        return v


def multivariate(arity: int, fn: Callable[..., float], label: str = "custom") -> MultivariateGenerator:
    if arity < 1:
        raise MixdivError("arity must be >= 1")
    return MultivariateGenerator(arity=int(arity), fn=fn, label=label)


def matusita_affinity(arity: int) -> MultivariateGenerator:
    """-prod_i x_i**(1/l): the negated Matusita affinity integrand."""
    l = int(arity)

    def fn(*xs: float) -> float:
        out = 1.0
        for x in xs:
            out *= x ** (1.0 / l)
        return -out

    return multivariate(l, fn, label="matusita")


def toussaint_affinity(exponents) -> MultivariateGenerator:
    """-prod_i x_i**a_i with a_i >= 0 summing to 1."""
    a = [float(x) for x in exponents]
    if any(x < 0.0 for x in a) or abs(math.fsum(a) - 1.0) > 1e-12:
        raise MixdivError("exponents must be >= 0 and sum to 1")

    def fn(*xs: float) -> float:
        out = 1.0
        for x, e in zip(xs, a):
            out *= x ** e
        return -out

    return multivariate(len(a), fn, label="toussaint")


def paired(g: Generator) -> MultivariateGenerator:
    """The two-argument form (x, y) -> y * g(x / y).

    Its dissimilarity equals the classical divergence of g.
    """

    def fn(x: float, y: float) -> float:
        return y * eval_generator(g, x / y)

    return multivariate(2, fn, label=f"paired({g.label})")
