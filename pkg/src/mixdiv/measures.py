"""Finite atomic measure spaces, positive densities, and exact integration.

The computational substrate is a finite list of atoms with strictly positive
weights. Densities are per-atom values relative to those weights and are
required to be strictly positive everywhere, which keeps every downstream
ratio p/q well defined and finite.

Integration uses :func:`math.fsum`, an exactly rounded summation, so results
are bit-for-bit reproducible regardless of how callers might batch or reorder
atoms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .errors import (
    EmptySpace,
    LengthMismatch,
    MixdivError,
    NonpositiveDensity,
    NonpositiveWeight,
    NotNormalized,
    SpaceMismatch,
)

#: absolute tolerance on |integral - 1| for probability certification
EPS_NORM = 1e-9


def _frozen_array(values: Sequence[float]) -> np.ndarray:
    arr = np.array(values, dtype=float)
    if arr.ndim != 1:
        raise MixdivError("per-atom data must be one-dimensional")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class MeasureSpace:
    """A finite measure space: labelled atoms with positive weights.

    Attributes
    ----------
    atom_ids : tuple
        Opaque atom labels; defaults to 0..n-1.
    weights : numpy.ndarray
        Strictly positive atom masses, read-only.
    total_mass : float
        Exactly rounded sum of the weights.
    """

    atom_ids: tuple
    weights: np.ndarray
    total_mass: float

    @property
    def n_atoms(self) -> int:
        return len(self.atom_ids)

    @property
    def is_probability(self) -> bool:
        """True when the total mass is 1 up to ``EPS_NORM``."""
        return abs(self.total_mass - 1.0) <= EPS_NORM

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MeasureSpace):
            return NotImplemented
        return self.atom_ids == other.atom_ids and np.array_equal(
            self.weights, other.weights
        )

    def __repr__(self) -> str:
        return f"MeasureSpace(n_atoms={self.n_atoms}, total_mass={self.total_mass})"


@dataclass(frozen=True, eq=False)
class Density:
    """Per-atom density values with respect to a :class:`MeasureSpace`.

    ``prob_certified`` records that the integral was checked to be 1 at
    construction; operations needing probability inputs test this flag
    rather than re-integrating.
    """

    space: MeasureSpace
    values: np.ndarray
    prob_certified: bool

    def integral(self) -> float:
        return integrate(self.space, self.values)

    def __repr__(self) -> str:
        tag = "prob" if self.prob_certified else "raw"
        return f"Density({tag}, n_atoms={self.space.n_atoms})"


@dataclass(frozen=True, eq=False)
class MeasureVector:
    """An ordered vector of densities sharing one measure space."""

    densities: tuple[Density, ...]

    @property
    def space(self) -> MeasureSpace:
        return self.densities[0].space

    def __len__(self) -> int:
        return len(self.densities)


def make_space(
    weights: Sequence[float], atom_ids: Optional[Sequence] = None
) -> MeasureSpace:
    """Build a validated measure space from positive atom weights.

    Raises
    ------
    EmptySpace
        If ``weights`` is empty.
    NonpositiveWeight
        If any weight is <= 0 or not finite; the message reports the index.
    """
    arr = _frozen_array(weights)
    if arr.size == 0:
        raise EmptySpace("a measure space needs at least one atom")
    bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0.0)))
    if bad.size:
        idx = int(bad[0])
        raise NonpositiveWeight(f"weight at index {idx} is {arr[idx]!r}; must be finite and > 0")
    if atom_ids is None:
        ids = tuple(range(arr.size))
    else:
        ids = tuple(atom_ids)
        if len(ids) != arr.size:
            raise LengthMismatch(f"{len(ids)} atom ids for {arr.size} weights")
    total = math.fsum(arr.tolist())
    if not math.isfinite(total):
        raise NonpositiveWeight("total mass is not finite")
    return MeasureSpace(atom_ids=ids, weights=arr, total_mass=total)


def validate_density(
    space: MeasureSpace, values: Sequence[float], require_prob: bool = False
) -> Density:
    """Validate per-atom density values against a space.

    Every value must be strictly positive and finite. With
    ``require_prob=True`` the integral must equal 1 within ``EPS_NORM`` and
    the returned density carries ``prob_certified=True``.

    Raises
    ------
    LengthMismatch, NonpositiveDensity, NotNormalized
    """
    arr = _frozen_array(values)
    if arr.size != space.n_atoms:
        raise LengthMismatch(f"{arr.size} density values for {space.n_atoms} atoms")
    bad = np.flatnonzero(~(np.isfinite(arr) & (arr > 0.0)))
    if bad.size:
        idx = int(bad[0])
        raise NonpositiveDensity(
            f"density at atom {space.atom_ids[idx]!r} is {arr[idx]!r}; must be finite and > 0"
        )
    if require_prob:
        total = integrate(space, arr)
        if abs(total - 1.0) > EPS_NORM:
            raise NotNormalized(f"density integrates to {total!r}, not 1")
    return Density(space=space, values=arr, prob_certified=bool(require_prob))


def integrate(space: MeasureSpace, values: Sequence[float]) -> float:
    """Return the integral sum_j values[j] * mu[j], exactly rounded.

    Raises
    ------
    LengthMismatch
    """
    arr = np.asarray(values, dtype=float)
    if arr.shape != space.weights.shape:
        raise LengthMismatch(f"{arr.size} values for {space.n_atoms} atoms")
    return math.fsum((arr * space.weights).tolist())


def same_space(*densities: Density) -> MeasureSpace:
    """Return the shared space of the given densities or raise SpaceMismatch."""
    space = densities[0].space
    for d in densities[1:]:
        if d.space is not space and d.space != space:
            raise SpaceMismatch("densities live on different measure spaces")
    return space


def make_vector(densities: Sequence[Density]) -> MeasureVector:
    """Bundle densities into a vector after checking they share one space."""
    if not densities:
        raise EmptySpace("a measure vector needs at least one density")
    same_space(*densities)
    return MeasureVector(densities=tuple(densities))
