"""The enhanced tensor space V̄^{⊗r} and the representations Φ and Ψ.

Conventions: tensor positions are ``0..r-1`` and basis labels are ``0..n``,
label ``n`` being the extra vector η. Multi-indices are tuples of labels,
enumerated in lexicographic order; that order fixes every matrix coordinate
in the package. A sector is the set of positions carrying a V-label, encoded
as a bitmask over positions.
"""

from __future__ import annotations

import itertools
import logging
import random
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import comb

from sympy import QQ
from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix

from .exceptions import (
    DimensionMismatchError,
    PreconditionError,
    SingularMatrixError,
)
from .linalg import Scalar, Vector, apply, entries, kron, sparse_matrix, to_qq

_LOGGER = logging.getLogger(__name__)

MultiIndex = tuple[int, ...]


@dataclass(frozen=True)
class SpaceDescriptor:
    """V̄^{⊗r} for dim V = n."""

    n: int
    r: int

    def __post_init__(self) -> None:
        """Validate n ≥ 1 and r ≥ 1."""
        if self.n < 1 or self.r < 1:
            raise PreconditionError(
                f"Need n >= 1 and r >= 1, got n={self.n}, r={self.r}"
            )

    @property
    def big_n(self) -> int:
        """Return N = n + 1 = dim V̄."""
        return self.n + 1

    @property
    def eta(self) -> int:
        """Return the label of η."""
        return self.n

    @property
    def dim(self) -> int:
        """Return (n+1)^r."""
        return self.big_n**self.r

    @property
    def full_mask(self) -> int:
        """Return the bitmask of all positions."""
        return (1 << self.r) - 1

    @cached_property
    def basis(self) -> tuple[MultiIndex, ...]:
        """Return all multi-indices in lexicographic order."""
        return tuple(itertools.product(range(self.big_n), repeat=self.r))

    def index_of(self, index: Sequence[int]) -> int:
        """Return the lexicographic position of a multi-index."""
        if len(index) != self.r:
            raise DimensionMismatchError(
                f"Multi-index {index} is not of length {self.r}"
            )
        position = 0
        for label in index:
            if not 0 <= label <= self.n:
                raise DimensionMismatchError(f"Label {label} outside 0..{self.n}")
            position = position * self.big_n + label
        return position

    def __str__(self) -> str:
        """Render as ``(n=.., r=..)``."""
        return f"(n={self.n}, r={self.r})"


# ---------------------------------------------------------------------------
# Sectors and subsets
# ---------------------------------------------------------------------------


def subset_mask(subset: Iterable[int], r: int) -> int:
    """Encode a subset of positions as a bitmask.

    Raises:
        PreconditionError: If a position is outside 0..r-1.
    """
    mask = 0
    for k in subset:
        if not 0 <= k < r:
            raise PreconditionError(f"Position {k} outside 0..{r - 1}")
        mask |= 1 << k
    return mask


def mask_subset(mask: int) -> frozenset[int]:
    """Decode a bitmask into a subset of positions."""
    return frozenset(k for k in range(mask.bit_length()) if mask >> k & 1)


def subsets(r: int, size: int | None = None) -> list[frozenset[int]]:
    """Return subsets of 0..r-1 (of one size, if given) in bitmask order."""
    return [
        mask_subset(mask)
        for mask in range(1 << r)
        if size is None or mask.bit_count() == size
    ]


def sector_of(index: Sequence[int], n: int) -> int:
    """Return the sector bitmask {k : index[k] is a V-label}."""
    mask = 0
    for k, label in enumerate(index):
        if label < n:
            mask |= 1 << k
    return mask


def sector_dimension(space: SpaceDescriptor, degree: int) -> int:
    """Return dim V̄_l^{⊗r} = C(r, l)·n^l."""
    return comb(space.r, degree) * space.n**degree


def basis_enumerate(space: SpaceDescriptor) -> list[MultiIndex]:
    """Return all (n+1)^r multi-indices in lexicographic order."""
    return list(space.basis)


def sector_basis(space: SpaceDescriptor, subset: Iterable[int]) -> list[MultiIndex]:
    """Return the multi-indices whose sector is exactly the given subset."""
    mask = subset_mask(subset, space.r)
    choices = [
        range(space.n) if mask >> k & 1 else (space.eta,) for k in range(space.r)
    ]
    return list(itertools.product(*choices))


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------


def compose(sigma: Permutation, tau: Permutation) -> Permutation:
    """Return σ∘τ (apply τ first)."""
    if sigma.size != tau.size:
        raise PreconditionError("Cannot compose permutations of different sizes")
    return Permutation([sigma(tau(i)) for i in range(tau.size)])


def identity_permutation(size: int) -> Permutation:
    """Return the identity of S_size."""
    return Permutation(list(range(size)))


def transposition(i: int, size: int) -> Permutation:
    """Return the transposition exchanging positions i and i+1."""
    if not 0 <= i < size - 1:
        raise PreconditionError(f"No adjacent transposition ({i}, {i + 1}) in S_{size}")
    images = list(range(size))
    images[i], images[i + 1] = i + 1, i
    return Permutation(images)


def all_permutations(size: int) -> list[Permutation]:
    """Return S_size in lexicographic order of image lists."""
    return [Permutation(list(p)) for p in itertools.permutations(range(size))]


def random_permutation(size: int, rng: random.Random) -> Permutation:
    """Return a permutation drawn from an explicit generator."""
    images = list(range(size))
    rng.shuffle(images)
    return Permutation(images)


def place_action(sigma: Permutation, index: Sequence[int]) -> MultiIndex:
    """Return σ.i with (σ.i)_k = i_{σ^{-1}(k)}."""
    if sigma.size != len(index):
        raise PreconditionError(
            f"Permutation of size {sigma.size} cannot act on {len(index)} positions"
        )
    result = [0] * len(index)
    for k, label in enumerate(index):
        result[sigma(k)] = label
    return tuple(result)


# ---------------------------------------------------------------------------
# Tensors
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Tensor:
    """A sparse exact element of V̄^{⊗r}."""

    space: SpaceDescriptor
    coefficients: Mapping[MultiIndex, Scalar] = field(default_factory=dict)

    def __post_init__(self) -> None:
        """Convert coefficients to QQ and drop zeros."""
        cleaned: dict[MultiIndex, Scalar] = {}
        for index, value in self.coefficients.items():
            key = tuple(index)
            self.space.index_of(key)
            q = to_qq(value)
            if q:
                cleaned[key] = q
        object.__setattr__(self, "coefficients", cleaned)

    @classmethod
    def basis(cls, space: SpaceDescriptor, index: Sequence[int]) -> Tensor:
        """Return the basis tensor η_index."""
        return cls(space, {tuple(index): 1})

    @classmethod
    def pure(
        cls, space: SpaceDescriptor, vectors: Sequence[Sequence[object]]
    ) -> Tensor:
        """Return u_1 ⊗ ⋯ ⊗ u_r for coordinate vectors of length n+1."""
        if len(vectors) != space.r:
            raise DimensionMismatchError(f"Need {space.r} factors, got {len(vectors)}")
        factors = []
        for vector in vectors:
            if len(vector) != space.big_n:
                raise DimensionMismatchError(
                    f"Factor of length {len(vector)} is not in V̄ of dim {space.big_n}"
                )
            factors.append([(a, to_qq(x)) for a, x in enumerate(vector) if to_qq(x)])
        coefficients: dict[MultiIndex, Scalar] = {}
        for combo in itertools.product(*factors):
            value = QQ.one
            for _, x in combo:
                value *= x
            coefficients[tuple(a for a, _ in combo)] = value
        return cls(space, coefficients)

    @classmethod
    def from_vector(
        cls, space: SpaceDescriptor, vector: Mapping[int, Scalar]
    ) -> Tensor:
        """Build from coordinates in the lexicographic basis."""
        basis = space.basis
        return cls(space, {basis[k]: value for k, value in vector.items()})

    def to_vector(self) -> Vector:
        """Return coordinates in the lexicographic basis."""
        return {self.space.index_of(i): v for i, v in self.coefficients.items()}

    @property
    def is_zero(self) -> bool:
        """True if every coefficient vanishes."""
        return not self.coefficients

    def _require_same_space(self, other: Tensor) -> None:
        if self.space != other.space:
            raise DimensionMismatchError(f"Tensors over {self.space} and {other.space}")

    def __add__(self, other: Tensor) -> Tensor:
        """Sum of tensors."""
        self._require_same_space(other)
        result = dict(self.coefficients)
        for index, value in other.coefficients.items():
            result[index] = result.get(index, QQ.zero) + value
        return Tensor(self.space, result)

    def __neg__(self) -> Tensor:
        """Negation."""
        return self.scale(-1)

    def __sub__(self, other: Tensor) -> Tensor:
        """Difference of tensors."""
        return self + (-other)

    def scale(self, factor: object) -> Tensor:
        """Return factor·self."""
        c = to_qq(factor)
        return Tensor(self.space, {i: c * v for i, v in self.coefficients.items()})

    def apply(self, operator: DomainMatrix) -> Tensor:
        """Return operator(self) for an operator on V̄^{⊗r}."""
        if operator.shape != (self.space.dim, self.space.dim):
            raise DimensionMismatchError(
                f"Operator of shape {operator.shape} does not act on {self.space}"
            )
        return Tensor.from_vector(self.space, apply(operator, self.to_vector()))


# ---------------------------------------------------------------------------
# Representations
# ---------------------------------------------------------------------------


def psi_matrix(space: SpaceDescriptor, sigma: Permutation) -> DomainMatrix:
    """Return Ψ(σ): η_i ↦ η_{σ.i}.

    Raises:
        PreconditionError: If σ is not in S_r.
    """
    if sigma.size != space.r:
        raise PreconditionError(
            f"Permutation of size {sigma.size} is not in S_{space.r}"
        )
    return sparse_matrix(
        {
            (space.index_of(place_action(sigma, index)), col): 1
            for col, index in enumerate(space.basis)
        },
        space.dim,
        space.dim,
    )


def _require_label_matrix(space: SpaceDescriptor, m: DomainMatrix) -> None:
    if m.shape != (space.big_n, space.big_n):
        raise DimensionMismatchError(
            f"Expected a {space.big_n}x{space.big_n} matrix, got {m.shape}"
        )


def phi_matrix(space: SpaceDescriptor, g: DomainMatrix) -> DomainMatrix:
    """Return Φ(g) = g^{⊗r}.

    Raises:
        DimensionMismatchError: If g is not (n+1)×(n+1).
        SingularMatrixError: If det g = 0.
    """
    _require_label_matrix(space, g)
    if not g.det():
        raise SingularMatrixError("Φ is only defined on invertible matrices")
    result = g
    for _ in range(space.r - 1):
        result = kron(result, g)
    return result


def lie_derivation(space: SpaceDescriptor, x: DomainMatrix) -> DomainMatrix:
    """Return Σ_k 1⊗⋯⊗X⊗⋯⊗1 (X in slot k)."""
    _require_label_matrix(space, x)
    columns: dict[int, list[tuple[int, Scalar]]] = {}
    for (a, b), value in entries(x).items():
        columns.setdefault(b, []).append((a, value))
    result: dict[tuple[int, int], Scalar] = {}
    for col, index in enumerate(space.basis):
        for k, label in enumerate(index):
            for a, value in columns.get(label, ()):
                target = index[:k] + (a,) + index[k + 1 :]
                key = (space.index_of(target), col)
                result[key] = result.get(key, QQ.zero) + value
    return sparse_matrix(result, space.dim, space.dim)


def sector_projection(space: SpaceDescriptor, degree: int) -> DomainMatrix:
    """Return the diagonal projection onto V̄_l^{⊗r}.

    Raises:
        PreconditionError: If the degree is outside 0..r.
    """
    if not 0 <= degree <= space.r:
        raise PreconditionError(f"Sector degree {degree} outside 0..{space.r}")
    return sparse_matrix(
        {
            (k, k): 1
            for k, index in enumerate(space.basis)
            if sector_of(index, space.n).bit_count() == degree
        },
        space.dim,
        space.dim,
    )


def sector_projection_I(
    space: SpaceDescriptor, subset: Iterable[int]
) -> DomainMatrix:
    """Return the projection id^{[I]} onto V̄_I^{⊗r}."""
    mask = subset_mask(subset, space.r)
    return sparse_matrix(
        {
            (k, k): 1
            for k, index in enumerate(space.basis)
            if sector_of(index, space.n) == mask
        },
        space.dim,
        space.dim,
    )
