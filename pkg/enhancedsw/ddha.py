"""Sector operators and the finite-dimensional degenerate double Hecke algebra.

The abstract algebra is never materialized; only the images of its
generators on V̄^{⊗r} and the spans they close up to.
"""

from __future__ import annotations

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from functools import lru_cache

from sympy.combinatorics import Permutation
from sympy.polys.matrices import DomainMatrix

from .exceptions import PreconditionError, VerificationError
from .linalg import (
    Subspace,
    algebra_closure,
    is_zero_matrix,
    matrices_equal,
    sparse_matrix,
    span_operators,
    subspace_equal,
    witness,
)
from .tensor import (
    SpaceDescriptor,
    all_permutations,
    compose,
    identity_permutation,
    mask_subset,
    place_action,
    psi_matrix,
    sector_of,
    sector_projection,
    subset_mask,
    subsets,
    transposition,
)

_LOGGER = logging.getLogger(__name__)

KIND_S = "s"
KIND_X = "x"


@dataclass(frozen=True)
class DDHAGenerator:
    """A generator s_i or x_σ^{(l)}.

    ``s(i)`` is the transposition of positions i and i+1; ``x(sigma)`` carries
    a permutation of size l, so S_0 and S_1 contribute one generator each.
    """

    kind: str
    index: int = 0
    sigma: Permutation | None = None

    @classmethod
    def s(cls, i: int) -> DDHAGenerator:
        """Return s_i."""
        return cls(kind=KIND_S, index=i)

    @classmethod
    def x(cls, sigma: Permutation) -> DDHAGenerator:
        """Return x_σ^{(l)} with l = sigma.size."""
        return cls(kind=KIND_X, index=sigma.size, sigma=sigma)

    @property
    def degree(self) -> int:
        """Return l for x_σ^{(l)}."""
        if self.kind != KIND_X:
            raise PreconditionError("Only x generators carry a degree")
        return self.index

    def __str__(self) -> str:
        """Render as ``s_i`` or ``x[images]^(l)``."""
        if self.kind == KIND_S:
            return f"s_{self.index}"
        assert self.sigma is not None
        return f"x{list(self.sigma.array_form)}^({self.index})"


@dataclass(frozen=True)
class SectorOperatorLabel:
    """Names a sector operator: x_σ^I, E_{J,I} or σ^{[I]}."""

    kind: str
    subset: frozenset[int]
    target: frozenset[int] | None = None
    sigma: Permutation | None = None

    def __post_init__(self) -> None:
        """Check #J = #I for E_{J,I} labels."""
        if self.kind == "E_JI" and (
            self.target is None or len(self.target) != len(self.subset)
        ):
            raise PreconditionError("E_{J,I} needs #J = #I")

    def __str__(self) -> str:
        """Render for witnesses."""
        source = sorted(self.subset)
        if self.kind == "E_JI":
            return f"E[{sorted(self.target or ())},{source}]"
        images = list(self.sigma.array_form) if self.sigma is not None else []
        return f"{self.kind}{images}{source}"


def _sorted_subset(subset: Iterable[int], r: int) -> tuple[int, ...]:
    return tuple(sorted(mask_subset(subset_mask(subset, r))))


# ---------------------------------------------------------------------------
# Sector operators
# ---------------------------------------------------------------------------


def x_sigma_I(
    space: SpaceDescriptor, subset: Iterable[int], sigma: Permutation
) -> DomainMatrix:
    """Return x_σ^I: permute the I-slots of V̄_I^{⊗r} by σ, zero elsewhere.

    The t-th smallest position of I moves to the σ(t)-th smallest.

    Raises:
        PreconditionError: If σ is not a permutation of size #I.
    """
    positions = _sorted_subset(subset, space.r)
    if sigma.size != len(positions):
        raise PreconditionError(
            f"Permutation of size {sigma.size} does not act on a subset of size "
            f"{len(positions)}"
        )
    mask = subset_mask(positions, space.r)
    values: dict[tuple[int, int], int] = {}
    for col, index in enumerate(space.basis):
        if sector_of(index, space.n) != mask:
            continue
        image = list(index)
        for t, k in enumerate(positions):
            image[positions[sigma(t)]] = index[k]
        values[(space.index_of(image), col)] = 1
    return sparse_matrix(values, space.dim, space.dim)


def epsilon_JI(
    subset: Iterable[int], target: Iterable[int], r: int
) -> Permutation:
    """Return the order-preserving ε_{J,I} in S_r.

    The t-th smallest element of I goes to the t-th smallest element of J,
    and likewise for the complements.

    Raises:
        PreconditionError: If #I ≠ #J.
    """
    source = _sorted_subset(subset, r)
    dest = _sorted_subset(target, r)
    if len(source) != len(dest):
        raise PreconditionError(f"Subsets {source} and {dest} differ in size")
    rest_source = [k for k in range(r) if k not in source]
    rest_dest = [k for k in range(r) if k not in dest]
    images = [0] * r
    for a, b in zip(source, dest, strict=True):
        images[a] = b
    for a, b in zip(rest_source, rest_dest, strict=True):
        images[a] = b
    return Permutation(images)


def sigma_bracket_I(
    space: SpaceDescriptor, sigma: Permutation, subset: Iterable[int]
) -> DomainMatrix:
    """Return σ^{[I]}: Ψ(σ) on V̄_I^{⊗r}, zero on the other sectors."""
    if sigma.size != space.r:
        raise PreconditionError(
            f"Permutation of size {sigma.size} is not in S_{space.r}"
        )
    mask = subset_mask(subset, space.r)
    return sparse_matrix(
        {
            (space.index_of(place_action(sigma, index)), col): 1
            for col, index in enumerate(space.basis)
            if sector_of(index, space.n) == mask
        },
        space.dim,
        space.dim,
    )


def E_JI(
    space: SpaceDescriptor,
    target: Iterable[int],
    subset: Iterable[int],
    epsilon: Permutation | None = None,
) -> DomainMatrix:
    """Return E_{J,I} = (Ψ(ε_{J,I}))^{[I]}.

    Args:
        space: The tensor space.
        target: J.
        subset: I, with #I = #J.
        epsilon: An admissible ε_{J,I}; defaults to the order-preserving one.

    Raises:
        PreconditionError: If #I ≠ #J or epsilon does not carry I onto J in
            order.
    """
    source = _sorted_subset(subset, space.r)
    dest = _sorted_subset(target, space.r)
    if epsilon is None:
        epsilon = epsilon_JI(source, dest, space.r)
    elif len(source) != len(dest) or any(
        epsilon(a) != b for a, b in zip(source, dest, strict=True)
    ):
        raise PreconditionError(f"ε does not map {source} onto {dest} in order")
    return sigma_bracket_I(space, epsilon, source)


def factorization_sigma(
    space: SpaceDescriptor, tau: Permutation, subset: Iterable[int]
) -> Permutation:
    """Return σ ∈ S_{#I} with (Ψ(τ))^{[I]} = E_{τ(I),I} · x_σ^I."""
    source = _sorted_subset(subset, space.r)
    dest = tuple(sorted(tau(k) for k in source))
    epsilon = epsilon_JI(source, dest, space.r)
    inverse = epsilon**-1
    position = {k: t for t, k in enumerate(source)}
    return Permutation([position[inverse(tau(k))] for k in source])


# ---------------------------------------------------------------------------
# The representation Ξ
# ---------------------------------------------------------------------------


def xi_generator(space: SpaceDescriptor, gen: DDHAGenerator) -> DomainMatrix:
    """Return Ξ(gen).

    s_i goes to Ψ of the transposition (i, i+1); x_σ^{(l)} goes to x_σ^I with
    I = {0..l-1}.

    Raises:
        PreconditionError: If the generator does not exist for this r.
    """
    if gen.kind == KIND_S:
        return psi_matrix(space, transposition(gen.index, space.r))
    if gen.sigma is None or not 0 <= gen.degree <= space.r:
        raise PreconditionError(f"Generator {gen} does not exist for r={space.r}")
    return x_sigma_I(space, range(gen.degree), gen.sigma)


def all_generators(r: int) -> list[DDHAGenerator]:
    """Return every s_i, then every x_σ^{(l)} for l = 0..r."""
    gens = [DDHAGenerator.s(i) for i in range(r - 1)]
    for degree in range(r + 1):
        gens.extend(DDHAGenerator.x(sigma) for sigma in all_permutations(degree))
    return gens


# ---------------------------------------------------------------------------
# Relations
# ---------------------------------------------------------------------------

FAMILY_S_SQUARED = "s_squared"
FAMILY_BRAID = "braid"
FAMILY_X_PRODUCT = "x_product"
FAMILY_S_X_INSIDE = "s_x_inside"
FAMILY_S_X_OUTSIDE = "s_x_outside"
FAMILY_X_ORTHOGONAL = "x_orthogonal"
RELATION_FAMILIES = (
    FAMILY_S_SQUARED,
    FAMILY_BRAID,
    FAMILY_X_PRODUCT,
    FAMILY_S_X_INSIDE,
    FAMILY_S_X_OUTSIDE,
    FAMILY_X_ORTHOGONAL,
)


@dataclass
class RelationOutcome:
    """Instance and failure counts for one relation family."""

    family: str
    instances: int = 0
    failures: int = 0
    witness: str | None = None

    @property
    def passed(self) -> bool:
        """True if no instance failed."""
        return self.failures == 0

    def record(self, ok: bool, label: str) -> None:
        """Count one instance."""
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.witness is None:
                self.witness = label


@dataclass
class RelationReport:
    """Outcomes of every relation family for one space."""

    space: SpaceDescriptor
    outcomes: dict[str, RelationOutcome] = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        """True if every family passed."""
        return all(outcome.passed for outcome in self.outcomes.values())

    @property
    def instances(self) -> int:
        """Return the total number of instances checked."""
        return sum(outcome.instances for outcome in self.outcomes.values())

    @property
    def failures(self) -> int:
        """Return the total number of failed instances."""
        return sum(outcome.failures for outcome in self.outcomes.values())

    def first_witness(self) -> str | None:
        """Return the first failing instance in family order."""
        for family in RELATION_FAMILIES:
            outcome = self.outcomes.get(family)
            if outcome is not None and outcome.witness is not None:
                return f"{family}: {outcome.witness}"
        return None


def check_ddha_relations(space: SpaceDescriptor) -> RelationReport:
    """Check every instance of the defining relations on the Ξ-images."""
    r = space.r
    report = RelationReport(space, {f: RelationOutcome(f) for f in RELATION_FAMILIES})
    out = report.outcomes
    identity = psi_matrix(space, identity_permutation(r))
    s = [xi_generator(space, DDHAGenerator.s(i)) for i in range(r - 1)]
    x = {
        degree: {
            tuple(sigma.array_form): (sigma, x_sigma_I(space, range(degree), sigma))
            for sigma in all_permutations(degree)
        }
        for degree in range(r + 1)
    }

    for i, si in enumerate(s):
        out[FAMILY_S_SQUARED].record(
            matrices_equal(si.matmul(si), identity), f"s_{i}^2 = 1"
        )
        for j in range(i + 2, r - 1):
            sj = s[j]
            out[FAMILY_S_SQUARED].record(
                matrices_equal(si.matmul(sj), sj.matmul(si)),
                f"s_{i} s_{j} = s_{j} s_{i}",
            )
    for i in range(r - 2):
        a, b = s[i], s[i + 1]
        out[FAMILY_BRAID].record(
            matrices_equal(a.matmul(b).matmul(a), b.matmul(a).matmul(b)),
            f"s_{i} s_{i + 1} s_{i} = s_{i + 1} s_{i} s_{i + 1}",
        )

    for degree, family in x.items():
        for sigma, x_sigma in family.values():
            label = f"x{list(sigma.array_form)}^({degree})"
            for mu, x_mu in family.values():
                product = family[tuple(compose(sigma, mu).array_form)][1]
                out[FAMILY_X_PRODUCT].record(
                    matrices_equal(x_sigma.matmul(x_mu), product),
                    f"{label} x{list(mu.array_form)} = x_(σ∘μ)",
                )
            for i, si in enumerate(s):
                if i < degree - 1:
                    t = transposition(i, degree)
                    left = family[tuple(compose(t, sigma).array_form)][1]
                    right = family[tuple(compose(sigma, t).array_form)][1]
                    out[FAMILY_S_X_INSIDE].record(
                        matrices_equal(si.matmul(x_sigma), left)
                        and matrices_equal(x_sigma.matmul(si), right),
                        f"s_{i} {label}",
                    )
                elif i >= degree:
                    out[FAMILY_S_X_OUTSIDE].record(
                        matrices_equal(si.matmul(x_sigma), x_sigma)
                        and matrices_equal(x_sigma.matmul(si), x_sigma),
                        f"s_{i} {label}",
                    )
            for other, other_family in x.items():
                if other == degree:
                    continue
                for gamma, x_gamma in other_family.values():
                    out[FAMILY_X_ORTHOGONAL].record(
                        is_zero_matrix(x_sigma.matmul(x_gamma)),
                        f"{label} x{list(gamma.array_form)}^({other}) = 0",
                    )

    _LOGGER.debug(
        "Relations at %s: %d instances, %d failures",
        space,
        report.instances,
        report.failures,
    )
    return report


# ---------------------------------------------------------------------------
# D(n,r) and its pieces
# ---------------------------------------------------------------------------


def Dnr_explicit_basis(space: SpaceDescriptor) -> list[DomainMatrix]:
    """Return the family {E_{J,I} ∘ x_σ^I : #I = #J = l, σ ∈ S_l}.

    Raises:
        PreconditionError: If n < r.
    """
    if space.n < space.r:
        raise PreconditionError(f"The explicit basis needs n >= r, got {space}")
    family = []
    for degree in range(space.r + 1):
        level = subsets(space.r, degree)
        perms = all_permutations(degree)
        for source in level:
            xs = [x_sigma_I(space, source, sigma) for sigma in perms]
            for dest in level:
                e = E_JI(space, dest, source)
                family.extend(e.matmul(x) for x in xs)
    return family


@lru_cache(maxsize=None)
def build_Dnr(space: SpaceDescriptor) -> Subspace:
    """Return D(n,r), the algebra generated by every Ξ-image.

    For n ≥ r the closure is compared with the span of the explicit basis.

    Raises:
        VerificationError: If the two constructions disagree.
    """
    seed = [xi_generator(space, gen) for gen in all_generators(space.r)]
    result = algebra_closure(seed, space.dim)
    if space.n >= space.r:
        explicit = span_operators(Dnr_explicit_basis(space), space.dim)
        if not subspace_equal(result, explicit):
            raise VerificationError(
                f"D(n,r) closure (dim {result.dim}) and explicit basis "
                f"(dim {explicit.dim}) differ at {space}: "
                f"{witness(result, explicit)}"
            )
    _LOGGER.debug("D(n,r) at %s: dim %d", space, result.dim)
    return result


@lru_cache(maxsize=None)
def build_Dnr_l(space: SpaceDescriptor, degree: int) -> Subspace:
    """Return D(n,r)_l inside P_l·End·P_l.

    Generated by the cut permutations P_l Ψ(s_i) P_l and every Ξ(x_σ^{(l)}),
    with P_l as unit.

    Raises:
        PreconditionError: If the degree is outside 0..r.
    """
    unit = sector_projection(space, degree)
    seed = [
        unit.matmul(xi_generator(space, DDHAGenerator.s(i))).matmul(unit)
        for i in range(space.r - 1)
    ]
    seed.extend(
        xi_generator(space, DDHAGenerator.x(sigma))
        for sigma in all_permutations(degree)
    )
    result = algebra_closure(seed, space.dim, unit=unit)
    _LOGGER.debug("D(n,r)_%d at %s: dim %d", degree, space, result.dim)
    return result


def build_D_bracket_I(space: SpaceDescriptor, subset: Iterable[int]) -> Subspace:
    """Return D_{[I]} = span{σ^{[I]} : σ ∈ S_r}."""
    source = _sorted_subset(subset, space.r)
    return span_operators(
        (sigma_bracket_I(space, sigma, source) for sigma in all_permutations(space.r)),
        space.dim,
    )


def sector_components(
    space: SpaceDescriptor, op: DomainMatrix
) -> dict[frozenset[int], DomainMatrix]:
    """Split op into {op ∘ id^{[I]}} over every sector I; the parts sum to op."""
    columns: dict[int, list[int]] = {}
    for col, index in enumerate(space.basis):
        columns.setdefault(sector_of(index, space.n), []).append(col)
    sdm = op.to_sdm()
    components = {}
    for mask in range(1 << space.r):
        keep = set(columns.get(mask, ()))
        components[mask_subset(mask)] = sparse_matrix(
            {
                (i, j): value
                for i, row in sdm.items()
                for j, value in row.items()
                if j in keep
            },
            space.dim,
            space.dim,
        )
    return components


def preserves_degree(space: SpaceDescriptor, op: DomainMatrix) -> bool:
    """True if op maps every V̄_l^{⊗r} into itself."""
    degrees = [sector_of(index, space.n).bit_count() for index in space.basis]
    return all(
        degrees[i] == degrees[j]
        for i, row in op.to_sdm().items()
        for j, value in row.items()
        if value
    )
