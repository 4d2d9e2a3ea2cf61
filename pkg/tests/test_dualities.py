"""Tests for centralizers, duality checks, the key lemma and invariants."""

import pytest
from sympy import QQ
from sympy.combinatorics import Permutation

from enhancedsw import dualities
from enhancedsw.const import (
    CHECK_CLASSICAL,
    CHECK_KEY_LEMMA,
    CHECK_MAIN_THEOREM,
    CHECK_NAMES,
    CHECK_PARABOLIC,
    EQUALITY,
    GROUP_FULL,
    GROUP_LEVI,
    GROUP_PARABOLIC,
    GROUP_UNIPOTENT,
    STATUS_FAIL,
    STATUS_PASS,
    STATUS_REPORT_ONLY,
    STRICT_INCLUSION,
)
from enhancedsw.dualities import (
    MixedTensor,
    T_map,
    build_AwJ,
    build_C_sigma,
    build_DV,
    centralizer_of_group,
    dimension_table,
    invariant_space,
    key_lemma_solutions,
    lie_images,
    mixed_action_generators,
    psi_span,
    run_checks,
    sampled_key_lemma_solutions,
    verify_classical_sw,
    verify_ddha_relations,
    verify_invariants,
    verify_key_lemma,
    verify_key_lemma_all,
    verify_levi_sw,
    verify_main_theorem,
    verify_parabolic_sw,
    verify_structure_lemma,
)
from enhancedsw.exceptions import (
    PreconditionError,
    UnknownCheckError,
    VerificationError,
)
from enhancedsw.group import matrix_unit
from enhancedsw.linalg import (
    Subspace,
    algebra_closure,
    basis_operators,
    matrices_equal,
    mixed_operator,
    subspace_contains,
)
from enhancedsw.models import CheckResult
from enhancedsw.tensor import (
    SpaceDescriptor,
    all_permutations,
    lie_derivation,
    psi_matrix,
)

from .conftest import (
    CENTRALIZER_DIMS_2_2,
    DNR_DIMS,
    INVARIANT_DIMS,
    PSI_DIMS,
    SYMMETRIC_COMMUTANT_2_2,
    TABLE_3_3,
)

# ---------------------------------------------------------------------------
# Centralizers
# ---------------------------------------------------------------------------


class TestCentralizers:
    @pytest.mark.parametrize("cell", sorted(PSI_DIMS))
    def test_psi_span(self, cell):
        assert psi_span(SpaceDescriptor(*cell)).dim == PSI_DIMS[cell]

    @pytest.mark.parametrize("which", [GROUP_FULL, GROUP_LEVI, GROUP_PARABOLIC])
    def test_dimensions(self, space_2_2, which):
        result = centralizer_of_group(space_2_2, which, cross_check=True)
        assert result.dim == CENTRALIZER_DIMS_2_2[which]

    def test_unknown_group(self, space_2_2):
        with pytest.raises(PreconditionError):
            centralizer_of_group(space_2_2, "borel")

    def test_cross_check_mismatch(self, space_1_1, monkeypatch):
        monkeypatch.setattr(
            dualities,
            "centralizer_of_group_elements",
            lambda space, which: Subspace.zero(space.dim**2),
        )
        with pytest.raises(VerificationError):
            centralizer_of_group(space_1_1, GROUP_LEVI, cross_check=True)

    def test_dv_in_stable_range(self, space_2_2):
        assert build_DV(space_2_2) == psi_span(space_2_2)

    @pytest.mark.parametrize("cell", [(1, 2), (2, 2), (2, 3)])
    def test_unipotent_cross_check(self, cell):
        space = SpaceDescriptor(*cell)
        result = centralizer_of_group(space, GROUP_UNIPOTENT, cross_check=True)
        assert subspace_contains(result, psi_span(space))

    def test_dv_cross_checks_translations(self, space_2_1, monkeypatch):
        build_DV.cache_clear()
        monkeypatch.setattr(
            dualities,
            "centralizer_of_group_elements",
            lambda space, which: Subspace.zero(space.dim**2),
        )
        try:
            with pytest.raises(VerificationError, match="unipotent"):
                build_DV(space_2_1)
        finally:
            build_DV.cache_clear()

    def test_commutant_is_an_algebra(self, space_2_2):
        centralizer = centralizer_of_group(space_2_2, GROUP_LEVI)
        d = space_2_2.dim
        assert algebra_closure(basis_operators(centralizer, d), d) == centralizer

    @pytest.mark.parametrize("cell", [(1, 1), (2, 1), (1, 2), (2, 2), (1, 3)])
    def test_inclusion_chain(self, cell):
        space = SpaceDescriptor(*cell)
        full = centralizer_of_group(space, GROUP_FULL)
        parabolic = centralizer_of_group(space, GROUP_PARABOLIC)
        levi = centralizer_of_group(space, GROUP_LEVI)
        assert full == psi_span(space)
        assert subspace_contains(parabolic, full)
        assert subspace_contains(levi, parabolic)


# ---------------------------------------------------------------------------
# Duality checks
# ---------------------------------------------------------------------------


class TestDualityChecks:
    def test_classical(self, space_2_2):
        result = verify_classical_sw(space_2_2)
        assert result.status == STATUS_PASS
        assert (result.lhs_dim, result.rhs_dim) == (2, 2)
        assert f"End_S_r={SYMMETRIC_COMMUTANT_2_2}={SYMMETRIC_COMMUTANT_2_2}" in (
            result.detail
        )
        assert result.witness is None

    @pytest.mark.parametrize("cell", [(1, 1), (2, 2)])
    def test_levi(self, cell):
        result = verify_levi_sw(SpaceDescriptor(*cell))
        assert result.passed

    def test_levi_below_stable_range(self, space_1_2):
        result = verify_levi_sw(space_1_2)
        assert result.passed
        assert result.lhs_dim == 6

    def test_parabolic(self, space_2_2):
        result = verify_parabolic_sw(space_2_2)
        assert result.passed
        assert result.lhs_dim == result.rhs_dim == 2

    @pytest.mark.parametrize("cell", [(1, 1), (2, 1), (2, 2)])
    def test_main_theorem(self, cell):
        result = verify_main_theorem(SpaceDescriptor(*cell))
        assert result.passed
        assert result.relation == EQUALITY
        assert result.rhs_dim == PSI_DIMS[cell]

    def test_main_theorem_at_3_2(self, space_3_2):
        result = verify_main_theorem(space_3_2)
        assert result.passed
        assert result.lhs_dim == result.rhs_dim == PSI_DIMS[(3, 2)]

    def test_main_theorem_agrees_with_parabolic(self, space_2_2):
        main = verify_main_theorem(space_2_2)
        parabolic = verify_parabolic_sw(space_2_2)
        assert main.passed == (
            parabolic.passed and build_DV(space_2_2) == psi_span(space_2_2)
        )

    def test_main_theorem_flags_disagreement(self, space_2_2, monkeypatch):
        forced = CheckResult(
            check=CHECK_PARABOLIC,
            n=2,
            r=2,
            status=STATUS_FAIL,
            detail="D^V=2<>3",
            witness="{0: 1}",
        )
        monkeypatch.setattr(dualities, "verify_parabolic_sw", lambda space: forced)
        result = verify_main_theorem(space_2_2)
        assert result.status == STATUS_FAIL
        assert "inconsistent with parabolic" in result.detail
        assert result.witness.endswith("{0: 1}")

    @pytest.mark.parametrize("cell", [(1, 2), (1, 3)])
    def test_parabolic_below_stable_range(self, cell):
        result = verify_parabolic_sw(SpaceDescriptor(*cell))
        assert result.passed
        assert result.lhs_dim == result.rhs_dim

    def test_main_theorem_below_stable_range(self, space_1_2):
        result = verify_main_theorem(space_1_2)
        assert result.status == STATUS_REPORT_ONLY
        assert result.relation in (EQUALITY, STRICT_INCLUSION)
        assert result.rhs_dim == PSI_DIMS[(1, 2)]
        assert result.lhs_dim >= result.rhs_dim

    def test_structure_lemma(self, space_2_2, rng):
        result = verify_structure_lemma(space_2_2, rng)
        assert result.status == STATUS_PASS
        assert result.lhs_dim == result.rhs_dim == 7

    def test_structure_lemma_at_3_2(self, space_3_2, rng):
        result = verify_structure_lemma(space_3_2, rng)
        assert result.status == STATUS_PASS
        assert result.lhs_dim == result.rhs_dim == DNR_DIMS[(3, 2)]

    def test_structure_lemma_below_stable_range(self, space_1_2):
        assert verify_structure_lemma(space_1_2).status == STATUS_REPORT_ONLY

    def test_ddha_relations(self, space_2_2):
        result = verify_ddha_relations(space_2_2)
        assert result.passed
        assert result.lhs_dim == result.rhs_dim == 20


# ---------------------------------------------------------------------------
# Key lemma
# ---------------------------------------------------------------------------


class TestKeyLemma:
    def test_concrete_vector(self, space_2_2):
        # v_0 ⊗ (w + η) − v_0 ⊗ η
        value = build_AwJ(space_2_2, {1}, w=(1, 0)).to_tensor()
        assert value.coefficients == {(0, 0): QQ(1)}

    def test_full_subset(self, space_2_2):
        value = build_AwJ(space_2_2, {0, 1}, w=(0, 1)).to_tensor()
        assert value.coefficients == {
            (1, 1): QQ(1),
            (1, 2): QQ(1),
            (2, 1): QQ(1),
        }

    def test_formal_matches_concrete(self, space_2_2):
        formal = build_AwJ(space_2_2, {0, 1})
        assert formal.is_formal
        w = (2, -3)
        assert formal.evaluate(w) == build_AwJ(space_2_2, {0, 1}, w=w).to_tensor()

    def test_formal_has_no_scalar_value(self, space_2_2):
        with pytest.raises(PreconditionError):
            build_AwJ(space_2_2, {0}).to_tensor()

    def test_preconditions(self, space_2_2, space_1_2):
        with pytest.raises(PreconditionError):
            build_AwJ(space_2_2, set())
        with pytest.raises(PreconditionError):
            build_AwJ(space_1_2, {0})
        with pytest.raises(PreconditionError):
            build_AwJ(space_2_2, {0}, w=(1,))

    def test_only_zero_kills_everything(self, space_2_2):
        solutions = key_lemma_solutions(space_2_2, {1})
        assert solutions.dim == 0
        assert solutions == sampled_key_lemma_solutions(space_2_2, {1})

    def test_verify_single(self, space_2_2):
        result = verify_key_lemma(space_2_2, {0})
        assert result.passed
        assert result.check == CHECK_KEY_LEMMA

    def test_verify_all(self, space_2_2):
        result = verify_key_lemma_all(space_2_2)
        assert result.passed
        assert result.lhs_dim == result.rhs_dim == 3

    def test_verify_all_below_stable_range(self, space_1_2):
        assert verify_key_lemma_all(space_1_2).status == STATUS_REPORT_ONLY


# ---------------------------------------------------------------------------
# Mixed tensors and invariants
# ---------------------------------------------------------------------------


class TestInvariants:
    def test_mixed_action_example(self, space_1_1):
        x = mixed_operator(lie_derivation(space_1_1, matrix_unit(0, 1, 2)))
        m = MixedTensor(space_1_1, {((1,), (0,)): 1})
        assert m.act(x).coefficients == {
            ((0,), (0,)): QQ(1),
            ((1,), (1,)): QQ(-1),
        }

    def test_T_of_C_sigma_is_psi(self):
        space = SpaceDescriptor(1, 3)
        for sigma in all_permutations(3):
            assert matrices_equal(
                T_map(space, build_C_sigma(space, sigma)), psi_matrix(space, sigma)
            )

    def test_T_rejects_other_space(self, space_1_1, space_2_2):
        with pytest.raises(PreconditionError):
            T_map(space_2_2, build_C_sigma(space_1_1, Permutation([0])))

    def test_mixed_vector_roundtrip(self, space_2_2):
        m = build_C_sigma(space_2_2, Permutation([1, 0]))
        assert MixedTensor.from_vector(space_2_2, m.to_vector()) == m

    @pytest.mark.parametrize("cell", [(1, 2), (2, 2)])
    def test_T_map_is_equivariant(self, cell, rng):
        space = SpaceDescriptor(*cell)
        basis = space.basis
        m = MixedTensor(
            space,
            {
                (i, j): rng.randint(-2, 2)
                for i in basis
                for j in basis
                if rng.random() < 0.3
            },
        )
        t = T_map(space, m)
        for image in lie_images(space, GROUP_PARABOLIC):
            moved = T_map(space, m.act(mixed_operator(image)))
            assert matrices_equal(moved, image.matmul(t) - t.matmul(image))

    def test_generators_match_lie_set(self, space_2_2):
        assert len(mixed_action_generators(space_2_2, GROUP_PARABOLIC)) == 7

    @pytest.mark.parametrize("cell", sorted(INVARIANT_DIMS))
    def test_invariant_dimension(self, cell):
        assert invariant_space(SpaceDescriptor(*cell)).dim == INVARIANT_DIMS[cell]

    @pytest.mark.parametrize("cell", [(1, 1), (2, 2)])
    def test_verify(self, cell):
        result = verify_invariants(SpaceDescriptor(*cell))
        assert result.passed
        assert result.witness is None


# ---------------------------------------------------------------------------
# Tables and dispatch
# ---------------------------------------------------------------------------


class TestDimensionTable:
    def test_stable_cell(self, space_2_2):
        table = dimension_table(space_2_2)
        assert (table.psi, table.dnr, table.dv) == (2, 7, 2)
        assert table.dnr_by_degree == (1, 4, 2)
        assert (table.end_full, table.end_levi, table.end_parabolic) == (2, 7, 2)
        assert table.invariants == 2

    def test_flat_keys(self, space_2_2):
        data = dimension_table(space_2_2).to_dict()
        assert list(data)[:7] == ["n", "r", "psi", "dnr", "dnr_0", "dnr_1", "dnr_2"]


class TestRunChecks:
    def test_fixed_order(self, space_1_1):
        results = run_checks(space_1_1, reversed(CHECK_NAMES))
        assert [res.check for res in results] == list(CHECK_NAMES)
        assert all(res.passed for res in results)
        assert all(res.elapsed_ms >= 0 for res in results)

    def test_deterministic(self, space_2_2):
        first = run_checks(space_2_2, CHECK_NAMES, seed=3)
        second = run_checks(space_2_2, CHECK_NAMES, seed=3)
        assert [r.to_dict() for r in first] == [r.to_dict() for r in second]

    def test_unknown_check(self, space_1_1):
        with pytest.raises(UnknownCheckError):
            run_checks(space_1_1, ["bogus"])

    def test_library_error_becomes_failure(self, space_1_1, monkeypatch):
        def broken(space):
            raise VerificationError("constructions disagree")

        monkeypatch.setattr(dualities, "verify_classical_sw", broken)
        (result,) = run_checks(space_1_1, [CHECK_CLASSICAL])
        assert result.status == STATUS_FAIL
        assert result.detail == "VerificationError: constructions disagree"
        assert result.witness == "constructions disagree"

    @pytest.mark.slow
    def test_full_suite_at_3_3(self):
        space = SpaceDescriptor(3, 3)
        results = run_checks(space, CHECK_NAMES)
        failed = [res.to_dict() for res in results if not res.passed]
        assert not failed
        (main,) = [res for res in results if res.check == CHECK_MAIN_THEOREM]
        assert main.rhs_dim == PSI_DIMS[(3, 3)]
        table = dimension_table(space).to_dict()
        assert {key: table[key] for key in TABLE_3_3} == TABLE_3_3
        assert table["dnr"] == DNR_DIMS[(3, 3)]
