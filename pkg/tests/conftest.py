"""Shared fixtures for enhancedsw tests."""

import random

import pytest

from enhancedsw.tensor import SpaceDescriptor

# ---------------------------------------------------------------------------
# Known dimensions
#
# For n >= r, dim D(n,r) = sum_l C(r,l)^2 l!; ℂΨ(S_r) on (C^{n+1})^{⊗r} is
# the sum of (dim S^λ)^2 over partitions λ of r with at most n+1 rows.
# ---------------------------------------------------------------------------

DNR_DIMS = {(1, 1): 2, (2, 1): 2, (2, 2): 7, (3, 2): 7, (3, 3): 34}
DNR_L_DIMS = {(2, 2): (1, 4, 2)}
PSI_DIMS = {
    (1, 1): 1,
    (2, 1): 1,
    (1, 2): 2,
    (2, 2): 2,
    (1, 3): 5,
    (3, 2): 2,
    (3, 3): 6,
}
CENTRALIZER_DIMS_2_2 = {"full": 2, "levi": 7, "parabolic": 2}
INVARIANT_DIMS = {(1, 1): 1, (2, 1): 1, (2, 2): 2}

# Dimension table of the largest cell within the default ambient guard.
TABLE_3_3 = {"psi": 6, "dnr": 34, "dv": 6, "end_parabolic": 6, "invariants": 6}

# Commutant of S_2 on (C^3)^{⊗2}: End(Sym^2) ⊕ End(Λ^2).
SYMMETRIC_COMMUTANT_2_2 = 45


@pytest.fixture
def rng():
    """Provide a seeded random generator."""
    return random.Random(0)


@pytest.fixture
def space_1_1():
    """Provide V̄ for dim V = 1."""
    return SpaceDescriptor(1, 1)


@pytest.fixture
def space_2_1():
    """Provide V̄ for dim V = 2."""
    return SpaceDescriptor(2, 1)


@pytest.fixture
def space_1_2():
    """Provide V̄^{⊗2} for dim V = 1, the smallest n < r cell."""
    return SpaceDescriptor(1, 2)


@pytest.fixture
def space_2_2():
    """Provide V̄^{⊗2} for dim V = 2."""
    return SpaceDescriptor(2, 2)


@pytest.fixture
def space_3_2():
    """Provide V̄^{⊗2} for dim V = 3."""
    return SpaceDescriptor(3, 2)
