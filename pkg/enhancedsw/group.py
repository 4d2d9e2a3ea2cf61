"""The enhanced group and the parabolic subgroup of GL_{n+1}.

An element (g, v, c) is realized as the block matrix [[g, v], [0, c]]; every
composite computation goes through that matrix so the torus and unipotent
interaction is inherited from matrix multiplication.
"""

from __future__ import annotations

import logging
import random
from collections.abc import Sequence
from dataclasses import dataclass

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .const import GROUP_KINDS, GROUP_LEVI, GROUP_PARABOLIC, GROUP_UNIPOTENT
from .exceptions import DimensionMismatchError, PreconditionError, SingularMatrixError
from .linalg import Scalar, entries, from_rows, identity, sparse_matrix, to_qq
from .tensor import SpaceDescriptor, Tensor

_LOGGER = logging.getLogger(__name__)


@dataclass(frozen=True)
class ParabolicElement:
    """An element (g, v, c) of GL_n ⋉ V ⋊ G_m."""

    g: tuple[tuple[Scalar, ...], ...]
    v: tuple[Scalar, ...]
    c: Scalar

    def __post_init__(self) -> None:
        """Normalize entries to QQ and check invertibility."""
        g = tuple(tuple(to_qq(x) for x in row) for row in self.g)
        v = tuple(to_qq(x) for x in self.v)
        c = to_qq(self.c)
        n = len(g)
        if n < 1 or any(len(row) != n for row in g):
            raise DimensionMismatchError("g must be a nonempty square matrix")
        if len(v) != n:
            raise DimensionMismatchError(f"v has length {len(v)}, expected {n}")
        if not c:
            raise SingularMatrixError("The torus component c must be nonzero")
        if not from_rows(g).to_dense().det():
            raise SingularMatrixError("The GL_n component g is singular")
        object.__setattr__(self, "g", g)
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "c", c)

    @property
    def n(self) -> int:
        """Return dim V."""
        return len(self.g)

    def to_matrix(self) -> DomainMatrix:
        """Return the (n+1)×(n+1) block matrix [[g, v], [0, c]]."""
        n = self.n
        values: dict[tuple[int, int], Scalar] = {}
        for i, row in enumerate(self.g):
            for j, x in enumerate(row):
                values[(i, j)] = x
            values[(i, n)] = self.v[i]
        values[(n, n)] = self.c
        return sparse_matrix(values, n + 1, n + 1)

    @classmethod
    def from_matrix(cls, m: DomainMatrix) -> ParabolicElement:
        """Read (g, v, c) off a block upper-triangular matrix.

        Raises:
            DimensionMismatchError: If m is not square of size at least 2.
            PreconditionError: If the last row has a nonzero off-diagonal entry.
            SingularMatrixError: If g or c is singular.
        """
        rows, cols = m.shape
        if rows != cols or rows < 2:
            raise DimensionMismatchError(
                f"Expected a square matrix of size >= 2, got {m.shape}"
            )
        n = rows - 1
        values = entries(m)
        if any(i == n and j != n for i, j in values):
            raise PreconditionError("Matrix is not in the parabolic subgroup")
        zero = QQ.zero
        return cls(
            g=tuple(
                tuple(values.get((i, j), zero) for j in range(n)) for i in range(n)
            ),
            v=tuple(values.get((i, n), zero) for i in range(n)),
            c=values.get((n, n), zero),
        )

    @classmethod
    def identity(cls, n: int) -> ParabolicElement:
        """Return the unit element."""
        return cls.levi(_identity_rows(n), 1)

    @classmethod
    def unipotent(cls, w: Sequence[object]) -> ParabolicElement:
        """Return the translation e^w = (id, w, 1)."""
        return cls(g=_identity_rows(len(w)), v=tuple(w), c=1)

    @classmethod
    def levi(cls, g: Sequence[Sequence[object]], c: object = 1) -> ParabolicElement:
        """Return the Levi element (g, 0, c)."""
        return cls(g=tuple(tuple(row) for row in g), v=(0,) * len(g), c=c)

    @classmethod
    def torus(cls, n: int, c: object) -> ParabolicElement:
        """Return diag(1, …, 1, c)."""
        return cls.levi(_identity_rows(n), c)

    @classmethod
    def random(cls, n: int, rng: random.Random) -> ParabolicElement:
        """Return an element with small random rational entries."""

        def scalar() -> Scalar:
            return QQ(rng.randint(-3, 3), rng.randint(1, 3))

        while True:
            g = tuple(tuple(scalar() for _ in range(n)) for _ in range(n))
            if from_rows(g).to_dense().det():
                break
        c = QQ.zero
        while not c:
            c = scalar()
        return cls(g=g, v=tuple(scalar() for _ in range(n)), c=c)


def _identity_rows(n: int) -> tuple[tuple[int, ...], ...]:
    return tuple(tuple(int(i == j) for j in range(n)) for i in range(n))


def _require_same_n(a: ParabolicElement, b: ParabolicElement) -> None:
    if a.n != b.n:
        raise DimensionMismatchError(f"Elements over dim V = {a.n} and {b.n}")


def enhanced_mul(a: ParabolicElement, b: ParabolicElement) -> ParabolicElement:
    """Return a·b.

    For c_a = c_b = 1 this is (g_a g_b, g_a v_b + v_a, 1).
    """
    _require_same_n(a, b)
    return ParabolicElement.from_matrix(a.to_matrix().matmul(b.to_matrix()))


def enhanced_inverse(a: ParabolicElement) -> ParabolicElement:
    """Return a⁻¹."""
    return ParabolicElement.from_matrix(a.to_matrix().to_dense().inv().to_sparse())


def is_enhanced(a: ParabolicElement) -> bool:
    """True if a lies in the enhanced group (c = 1)."""
    return a.c == QQ.one


def act_enhanced(a: ParabolicElement, u: Tensor) -> Tensor:
    """Apply a to a vector of V̄: (g, v, 1)(u + s·η) = g·u + s·v + s·η.

    Raises:
        PreconditionError: If u is not of degree 1 over the same V.
    """
    if u.space.r != 1 or u.space.n != a.n:
        raise PreconditionError(
            f"Cannot act with an element over dim V = {a.n} on a tensor in {u.space}"
        )
    return u.apply(a.to_matrix())


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieGeneratorSet:
    """Labeled matrix units spanning the Lie algebra of one of the groups."""

    which: str
    n: int
    labels: tuple[str, ...]
    matrices: tuple[DomainMatrix, ...]

    def __len__(self) -> int:
        """Return the number of generators."""
        return len(self.matrices)


def matrix_unit(a: int, b: int, size: int) -> DomainMatrix:
    """Return E_ab of the given size."""
    return sparse_matrix({(a, b): 1}, size, size)


def _require_kind(which: str) -> None:
    if which not in GROUP_KINDS:
        raise PreconditionError(
            f"Unknown group {which!r}; expected one of {GROUP_KINDS}"
        )


def _unit_pairs(n: int, which: str) -> list[tuple[int, int]]:
    eta = n
    diagonal = [(i, i) for i in range(n)]
    gl_n = [(i, j) for i in range(n) for j in range(n) if i != j]
    translations = [(i, eta) for i in range(n)]
    if which == GROUP_UNIPOTENT:
        return translations
    levi = [*diagonal, (eta, eta), *gl_n]
    if which == GROUP_LEVI:
        return levi
    if which == GROUP_PARABOLIC:
        return levi + translations
    return levi + translations + [(eta, i) for i in range(n)]


def lie_generators(n: int, which: str) -> LieGeneratorSet:
    """Return the matrix units for ``full``, ``levi``, ``parabolic`` or ``unipotent``.

    Diagonal units come first.

    Raises:
        PreconditionError: If ``which`` is unknown or n < 1.
    """
    _require_kind(which)
    if n < 1:
        raise PreconditionError(f"Need n >= 1, got {n}")
    pairs = _unit_pairs(n, which)
    return LieGeneratorSet(
        which=which,
        n=n,
        labels=tuple(f"E[{a},{b}]" for a, b in pairs),
        matrices=tuple(matrix_unit(a, b, n + 1) for a, b in pairs),
    )


def _parabolic_elements(n: int) -> list[ParabolicElement]:
    elements = [
        ParabolicElement.unipotent([int(k == i) for k in range(n)]) for i in range(n)
    ]
    for i in range(n):
        for j in range(n):
            if i != j:
                g = [list(row) for row in _identity_rows(n)]
                g[i][j] = 1
                elements.append(ParabolicElement.levi(g))
    generic = [list(row) for row in _identity_rows(n)]
    generic[0][0] = 2
    elements.append(ParabolicElement.levi(generic))
    elements.append(ParabolicElement.torus(n, 2))
    return elements


def group_generators_parabolic(space: SpaceDescriptor) -> list[ParabolicElement]:
    """Return a finite set of elements generating a Zariski-dense subgroup.

    Translations e^{η_i}, elementary matrices id + E_ij (i ≠ j), one generic
    diagonal of GL_n and the torus element c = 2, in that order.
    """
    return _parabolic_elements(space.n)


def group_generators(n: int, which: str) -> list[DomainMatrix]:
    """Return (n+1)×(n+1) matrices generating a dense subgroup of the named group.

    The parabolic set is :func:`group_generators_parabolic` as matrices.
    ``levi`` drops the translations, ``unipotent`` keeps only them and
    ``full`` adds the transposed translations id + E_{η,i}.
    """
    _require_kind(which)
    _LOGGER.debug("Group generators for %s at n=%d", which, n)
    parabolic = [element.to_matrix() for element in _parabolic_elements(n)]
    translations, levi = parabolic[:n], parabolic[n:]
    if which == GROUP_UNIPOTENT:
        return translations
    if which == GROUP_LEVI:
        return levi
    if which == GROUP_PARABOLIC:
        return parabolic
    size = n + 1
    return parabolic + [identity(size) + matrix_unit(n, i, size) for i in range(n)]
