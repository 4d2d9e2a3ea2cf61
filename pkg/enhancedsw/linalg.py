"""Exact rational sparse linear algebra.

Every matrix is a sympy ``DomainMatrix`` in sparse format over ``QQ``; every
linear subspace is stored in reduced row echelon form so that equality of
subspaces is equality of stored bases. Operators on a d-dimensional space are
flattened row-major into coordinate vectors of length d².
"""

from __future__ import annotations

import logging
from collections import deque
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

from sympy import QQ
from sympy.polys.matrices import DomainMatrix

from .const import RREF_METHOD
from .exceptions import ClosureOverflowError, DimensionMismatchError

_LOGGER = logging.getLogger(__name__)

# An element of sympy's QQ domain (PythonMPQ or gmpy2.mpq).
Scalar = Any
Vector = dict[int, Scalar]


def to_qq(value: object) -> Scalar:
    """Convert an int, Fraction, sympy number or QQ element to QQ."""
    if isinstance(value, Fraction):
        return QQ(value.numerator, value.denominator)
    if isinstance(value, int):
        return QQ(value)
    return QQ.convert(value)


def format_scalar(value: Scalar) -> str:
    """Render a QQ element as ``p`` or ``p/q``."""
    return str(value)


def format_vector(vector: Mapping[int, Scalar]) -> str:
    """Render a sparse vector deterministically, e.g. ``{0: 1, 4: -1/2}``."""
    items = ", ".join(f"{k}: {format_scalar(vector[k])}" for k in sorted(vector))
    return "{" + items + "}"


# ---------------------------------------------------------------------------
# Sparse matrices
# ---------------------------------------------------------------------------


def sparse_matrix(
    entries: Mapping[tuple[int, int], object], rows: int, cols: int
) -> DomainMatrix:
    """Build a sparse QQ matrix from a ``{(row, col): value}`` mapping.

    Zero values are dropped.

    Raises:
        DimensionMismatchError: If a coordinate is out of bounds.
    """
    data: dict[int, dict[int, Scalar]] = {}
    for (i, j), value in entries.items():
        if not (0 <= i < rows and 0 <= j < cols):
            raise DimensionMismatchError(
                f"Entry ({i}, {j}) outside a {rows}x{cols} matrix"
            )
        q = to_qq(value)
        if q:
            data.setdefault(i, {})[j] = q
    return DomainMatrix(data, (rows, cols), QQ)


def from_rows(rows: Sequence[Sequence[object]]) -> DomainMatrix:
    """Build a sparse QQ matrix from a dense nested sequence."""
    n_rows = len(rows)
    n_cols = len(rows[0]) if rows else 0
    entries: dict[tuple[int, int], object] = {}
    for i, row in enumerate(rows):
        if len(row) != n_cols:
            raise DimensionMismatchError("Ragged rows")
        for j, value in enumerate(row):
            entries[(i, j)] = value
    return sparse_matrix(entries, n_rows, n_cols)


def identity(dim: int) -> DomainMatrix:
    """Return the dim×dim identity."""
    return sparse_matrix({(i, i): 1 for i in range(dim)}, dim, dim)


def zero_matrix(rows: int, cols: int) -> DomainMatrix:
    """Return the rows×cols zero matrix."""
    return sparse_matrix({}, rows, cols)


def entries(m: DomainMatrix) -> dict[tuple[int, int], Scalar]:
    """Return the nonzero entries of m as ``{(row, col): value}``."""
    return {
        (i, j): value
        for i, row in m.to_sdm().items()
        for j, value in row.items()
        if value
    }


def row_dicts(m: DomainMatrix) -> dict[int, Vector]:
    """Return the nonzero rows of m as ``{row: {col: value}}``."""
    return {
        i: {j: v for j, v in row.items() if v}
        for i, row in m.to_sdm().items()
        if any(row.values())
    }


def matrices_equal(a: DomainMatrix, b: DomainMatrix) -> bool:
    """Exact equality of two matrices of the same shape."""
    return a.shape == b.shape and entries(a) == entries(b)


def is_zero_matrix(m: DomainMatrix) -> bool:
    """True if m has no nonzero entry."""
    return not entries(m)


def is_diagonal(m: DomainMatrix) -> bool:
    """True if every nonzero entry of m lies on the diagonal."""
    return all(i == j for i, j in entries(m))


def is_square(m: DomainMatrix) -> bool:
    """True if m is square."""
    rows, cols = m.shape
    return rows == cols


def kron(a: DomainMatrix, b: DomainMatrix) -> DomainMatrix:
    """Kronecker product with a as the most significant factor."""
    ra, ca = a.shape
    rb, cb = b.shape
    eb = entries(b)
    result: dict[tuple[int, int], Scalar] = {}
    for (i1, j1), x in entries(a).items():
        for (i2, j2), y in eb.items():
            result[(i1 * rb + i2, j1 * cb + j2)] = x * y
    return sparse_matrix(result, ra * rb, ca * cb)


def apply(m: DomainMatrix, vector: Mapping[int, Scalar]) -> Vector:
    """Return m·v for a sparse coordinate vector v."""
    result: Vector = {}
    for i, row in m.to_sdm().items():
        total = QQ.zero
        for j, value in row.items():
            coeff = vector.get(j)
            if coeff:
                total += value * coeff
        if total:
            result[i] = total
    return result


def combine(
    coefficients: Mapping[int, Scalar], vectors: Sequence[Mapping[int, Scalar]]
) -> Vector:
    """Return Σ c_k · v_k over the sparse coefficient mapping."""
    result: Vector = {}
    for k, c in coefficients.items():
        if not c:
            continue
        for j, value in vectors[k].items():
            total = result.get(j, QQ.zero) + c * value
            if total:
                result[j] = total
            else:
                result.pop(j, None)
    return result


def operator_to_vector(m: DomainMatrix) -> Vector:
    """Flatten a d×d operator row-major into a d² coordinate vector."""
    rows, cols = m.shape
    if rows != cols:
        raise DimensionMismatchError(f"Operator must be square, got {m.shape}")
    return {i * cols + j: value for (i, j), value in entries(m).items()}


def vector_to_operator(vector: Mapping[int, Scalar], dim: int) -> DomainMatrix:
    """Inverse of :func:`operator_to_vector` for a d×d operator."""
    return sparse_matrix(
        {divmod(k, dim): value for k, value in vector.items()}, dim, dim
    )


def commutator_operator(a: DomainMatrix) -> DomainMatrix:
    """Return the d²×d² matrix of X ↦ X·A − A·X on flattened X."""
    if not is_square(a):
        raise DimensionMismatchError(f"Operator must be square, got {a.shape}")
    d = a.shape[0]
    result: dict[tuple[int, int], Scalar] = {}
    ea = entries(a)
    for (p, q), value in ea.items():
        for t in range(d):
            # (XA)_{t,q} picks up X_{t,p}·A_{p,q}
            key = (t * d + q, t * d + p)
            result[key] = result.get(key, QQ.zero) + value
            # (AX)_{p,t} picks up A_{p,q}·X_{q,t}
            key = (p * d + t, q * d + t)
            result[key] = result.get(key, QQ.zero) - value
    return sparse_matrix(result, d * d, d * d)


def mixed_operator(a: DomainMatrix) -> DomainMatrix:
    """Return the d²×d² matrix of X ↦ A·X − X·A on flattened X."""
    return -commutator_operator(a)


# ---------------------------------------------------------------------------
# Echelon forms
# ---------------------------------------------------------------------------


def rref(m: DomainMatrix) -> DomainMatrix:
    """Return the reduced row echelon form of m with zero rows removed."""
    rows, cols = m.shape
    if rows == 0 or cols == 0 or is_zero_matrix(m):
        return zero_matrix(0, cols)
    reduced, pivots = m.to_sparse().rref(method=RREF_METHOD)
    kept = row_dicts(reduced)
    return DomainMatrix(
        {i: kept[i] for i in range(len(pivots))}, (len(pivots), cols), QQ
    )


def rank(m: DomainMatrix) -> int:
    """Return the rank of m."""
    return rref(m).shape[0]


def _eliminate(vector: Mapping[int, Scalar], rows: Mapping[int, Vector]) -> Vector:
    result = dict(vector)
    # Rows are fully reduced: clearing one pivot never touches another.
    for pivot in [k for k in result if k in rows]:
        c = result[pivot]
        for j, value in rows[pivot].items():
            total = result.get(j, QQ.zero) - c * value
            if total:
                result[j] = total
            else:
                result.pop(j, None)
    return result


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of QQ^ambient_dim in canonical (RREF) form."""

    ambient_dim: int
    rows: tuple[tuple[tuple[int, Scalar], ...], ...]
    pivots: tuple[int, ...] = field(init=False)
    _by_pivot: dict[int, Vector] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        """Record pivot columns and check the echelon shape."""
        pivots = tuple(row[0][0] for row in self.rows)
        if any(a >= b for a, b in zip(pivots, pivots[1:], strict=False)):
            raise DimensionMismatchError("Basis rows are not in echelon order")
        object.__setattr__(self, "pivots", pivots)
        by_pivot = {p: dict(row) for p, row in zip(pivots, self.rows, strict=True)}
        object.__setattr__(self, "_by_pivot", by_pivot)

    @classmethod
    def from_matrix(cls, m: DomainMatrix) -> Subspace:
        """Return the row space of m."""
        reduced = rref(m)
        rows = row_dicts(reduced)
        return cls(
            ambient_dim=m.shape[1],
            rows=tuple(
                tuple(sorted(rows[i].items())) for i in range(reduced.shape[0])
            ),
        )

    @classmethod
    def span(
        cls, ambient_dim: int, vectors: Iterable[Mapping[int, Scalar]]
    ) -> Subspace:
        """Return the span of sparse coordinate vectors."""
        data = [{k: to_qq(x) for k, x in v.items() if x} for v in vectors]
        data = [v for v in data if v]
        for v in data:
            if any(not 0 <= k < ambient_dim for k in v):
                raise DimensionMismatchError(
                    f"Vector coordinate outside ambient dimension {ambient_dim}"
                )
        if not data:
            return cls.zero(ambient_dim)
        m = DomainMatrix(dict(enumerate(data)), (len(data), ambient_dim), QQ)
        return cls.from_matrix(m)

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        """Return the zero subspace."""
        return cls(ambient_dim=ambient_dim, rows=())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        """Return the whole coordinate space."""
        return cls(
            ambient_dim=ambient_dim,
            rows=tuple(((i, QQ.one),) for i in range(ambient_dim)),
        )

    @property
    def dim(self) -> int:
        """Return the dimension."""
        return len(self.rows)

    def vectors(self) -> list[Vector]:
        """Return the canonical basis as sparse vectors."""
        return [dict(row) for row in self.rows]

    def to_matrix(self) -> DomainMatrix:
        """Return the canonical basis as a dim×ambient matrix."""
        return DomainMatrix(
            {i: dict(row) for i, row in enumerate(self.rows)},
            (self.dim, self.ambient_dim),
            QQ,
        )

    def reduce(self, vector: Mapping[int, Scalar]) -> Vector:
        """Return the remainder of a vector modulo this subspace."""
        return _eliminate(vector, self._by_pivot)

    def __contains__(self, vector: object) -> bool:
        """Membership of a sparse coordinate vector."""
        if not isinstance(vector, Mapping):
            return False
        return not self.reduce(vector)

    def __eq__(self, other: object) -> bool:
        """Set equality, which is identity of canonical bases."""
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.rows == other.rows

    def __hash__(self) -> int:
        """Hash of the canonical basis."""
        return hash((self.ambient_dim, self.rows))

    def __repr__(self) -> str:
        """Short summary."""
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


class EchelonBasis:
    """Incrementally maintained RREF basis for fast membership tests."""

    def __init__(self, ambient_dim: int) -> None:
        """Start from the zero subspace of QQ^ambient_dim."""
        self.ambient_dim = ambient_dim
        self._rows: dict[int, Vector] = {}

    @property
    def dim(self) -> int:
        """Return the current dimension."""
        return len(self._rows)

    def reduce(self, vector: Mapping[int, Scalar]) -> Vector:
        """Return the remainder of a vector modulo the current span."""
        return _eliminate(vector, self._rows)

    def add(self, vector: Mapping[int, Scalar]) -> bool:
        """Add a vector; return True if it enlarged the span."""
        remainder = self.reduce(vector)
        if not remainder:
            return False
        pivot = min(remainder)
        scale = QQ.one / remainder[pivot]
        new_row = {j: value * scale for j, value in remainder.items()}
        for row in self._rows.values():
            c = row.get(pivot)
            if not c:
                continue
            for j, value in new_row.items():
                total = row.get(j, QQ.zero) - c * value
                if total:
                    row[j] = total
                else:
                    row.pop(j, None)
        self._rows[pivot] = new_row
        return True

    def subspace(self) -> Subspace:
        """Return the canonical Subspace of the current span."""
        return Subspace(
            ambient_dim=self.ambient_dim,
            rows=tuple(
                tuple(sorted(self._rows[p].items())) for p in sorted(self._rows)
            ),
        )


# ---------------------------------------------------------------------------
# Subspace calculus
# ---------------------------------------------------------------------------


def nullspace(m: DomainMatrix) -> Subspace:
    """Return the canonical Subspace {x : m·x = 0}."""
    rows, cols = m.shape
    if cols == 0:
        return Subspace.zero(0)
    if rows == 0 or is_zero_matrix(m):
        return Subspace.full(cols)
    kernel = m.to_sparse().nullspace()
    if kernel.shape[0] == 0:
        return Subspace.zero(cols)
    return Subspace.from_matrix(kernel)


def _require_same_ambient(a: Subspace, b: Subspace) -> None:
    if a.ambient_dim != b.ambient_dim:
        raise DimensionMismatchError(
            f"Ambient dimensions differ: {a.ambient_dim} != {b.ambient_dim}"
        )


def subspace_equal(a: Subspace, b: Subspace) -> bool:
    """Return True iff a and b are the same set.

    Raises:
        DimensionMismatchError: If the ambient dimensions differ.
    """
    _require_same_ambient(a, b)
    return a.rows == b.rows


def subspace_sum(a: Subspace, b: Subspace) -> Subspace:
    """Return a + b."""
    _require_same_ambient(a, b)
    return Subspace.span(a.ambient_dim, a.vectors() + b.vectors())


def subspace_contains(a: Subspace, b: Subspace) -> bool:
    """Return True iff b ⊆ a."""
    _require_same_ambient(a, b)
    return all(not a.reduce(v) for v in b.vectors())


def subspace_has_vector(a: Subspace, vector: Mapping[int, Scalar]) -> bool:
    """Return True iff the sparse vector lies in a."""
    if any(not 0 <= k < a.ambient_dim for k in vector):
        raise DimensionMismatchError(
            f"Vector coordinate outside ambient dimension {a.ambient_dim}"
        )
    return not a.reduce(vector)


def subspace_intersect(a: Subspace, b: Subspace) -> Subspace:
    """Return a ∩ b.

    Solves x·A + y·B = 0 for the stacked bases; the intersection is the span
    of the x·A parts.
    """
    _require_same_ambient(a, b)
    if a.dim == 0 or b.dim == 0:
        return Subspace.zero(a.ambient_dim)
    va, vb = a.vectors(), b.vectors()
    stacked = DomainMatrix(
        {i: v for i, v in enumerate(va + vb)}, (a.dim + b.dim, a.ambient_dim), QQ
    )
    relations = nullspace(stacked.transpose())
    pieces = [
        combine({k: c for k, c in rel.items() if k < a.dim}, va)
        for rel in relations.vectors()
    ]
    return Subspace.span(a.ambient_dim, pieces)


def joint_nullspace(operators: Sequence[DomainMatrix], dim: int) -> Subspace:
    """Return the common kernel of square operators on QQ^dim.

    Each operator is solved on the kernel of the ones before it, so the
    systems shrink as constraints accumulate. The result is canonical and
    does not depend on operator order.

    Raises:
        DimensionMismatchError: If an operator does not act on QQ^dim.
    """
    current: Subspace | None = None
    for op in operators:
        if op.shape != (dim, dim):
            raise DimensionMismatchError(
                f"Operator of shape {op.shape} does not act on dimension {dim}"
            )
        if current is None:
            current = nullspace(op)
        else:
            basis = current.vectors()
            images = [apply(op, v) for v in basis]
            system = sparse_matrix(
                {
                    (i, k): value
                    for k, img in enumerate(images)
                    for i, value in img.items()
                },
                dim,
                len(basis),
            )
            solutions = nullspace(system)
            current = Subspace.span(
                dim, [combine(sol, basis) for sol in solutions.vectors()]
            )
        _LOGGER.debug("Joint nullspace narrowed to dim %d", current.dim)
        if current.dim == 0:
            break
    return current if current is not None else Subspace.full(dim)


def _operator_dim(operators: Sequence[DomainMatrix], dim: int | None) -> int:
    sizes = set()
    for op in operators:
        if not is_square(op):
            raise DimensionMismatchError(f"Operator must be square, got {op.shape}")
        sizes.add(op.shape[0])
    if dim is not None:
        sizes.add(dim)
    if len(sizes) > 1:
        raise DimensionMismatchError(f"Operators of different sizes: {sorted(sizes)}")
    if not sizes:
        raise DimensionMismatchError("Operator dimension is undetermined")
    return sizes.pop()


def commutant(generators: Sequence[DomainMatrix], dim: int | None = None) -> Subspace:
    """Return {X : X·A = A·X for every generator A} in the d²-dim operator space.

    Args:
        generators: Square operators of a common size d.
        dim: The operator size d; required when generators is empty.

    Raises:
        DimensionMismatchError: If the generators differ in size.
    """
    d = _operator_dim(generators, dim)
    # Diagonal generators cut the space down cheapest, so solve them first.
    ordered = sorted(generators, key=lambda g: not is_diagonal(g))
    result = joint_nullspace([commutator_operator(g) for g in ordered], d * d)
    _LOGGER.debug("Commutant of %d generators: dim %d", len(generators), result.dim)
    return result


def algebra_closure(
    seed: Sequence[DomainMatrix],
    dim: int | None = None,
    *,
    unit: DomainMatrix | None = None,
) -> Subspace:
    """Return the associative algebra generated by seed and a unit.

    Words are grown breadth-first by left multiplication with the seed; a word
    is kept only when it enlarges the span, so the result is closed under
    products once the queue drains.

    Args:
        seed: Square operators of a common size d.
        dim: The operator size d; required when seed is empty.
        unit: The unit of the algebra; defaults to the identity. Pass an
            idempotent e with e·s = s·e = s for every seed s to build a
            non-unital subalgebra of e·End·e.

    Raises:
        DimensionMismatchError: If the operators differ in size.
        ClosureOverflowError: If the basis exceeds d².
    """
    d = _operator_dim(list(seed) + ([unit] if unit is not None else []), dim)
    start = unit if unit is not None else identity(d)
    basis = EchelonBasis(d * d)
    if not basis.add(operator_to_vector(start)):
        return basis.subspace()
    queue: deque[DomainMatrix] = deque([start])
    while queue:
        word = queue.popleft()
        for gen in seed:
            product = gen.matmul(word)
            if basis.add(operator_to_vector(product)):
                if basis.dim > d * d:
                    raise ClosureOverflowError(
                        f"Closure basis exceeded {d * d} operators"
                    )
                queue.append(product)
    _LOGGER.debug("Algebra closure of %d operators: dim %d", len(seed), basis.dim)
    return basis.subspace()


def span_operators(operators: Iterable[DomainMatrix], dim: int) -> Subspace:
    """Return the span of d×d operators in the flattened operator space."""
    return Subspace.span(dim * dim, (operator_to_vector(op) for op in operators))


def basis_operators(subspace: Subspace, dim: int) -> list[DomainMatrix]:
    """Return the canonical basis of an operator Subspace as d×d matrices."""
    if subspace.ambient_dim != dim * dim:
        raise DimensionMismatchError(
            f"Subspace of dimension {subspace.ambient_dim} is not an operator space"
        )
    return [vector_to_operator(v, dim) for v in subspace.vectors()]


def witness(a: Subspace, b: Subspace) -> str | None:
    """Return a basis vector of a not in b (or of b not in a), rendered."""
    for v in a.vectors():
        if b.reduce(v):
            return format_vector(v)
    for v in b.vectors():
        if a.reduce(v):
            return format_vector(v)
    return None
