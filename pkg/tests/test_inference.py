import pytest

from fiberkit.errors import ContradictionError, HypothesisError
from fiberkit.inference import FLAG_NAMES, FgPremises, fg_inference


def known(conclusions):
    return conclusions.known()


class TestForwardRules:
    def test_fg_off_edge_forces_finite_index(self):
        c = fg_inference("amalgam", FgPremises(n_fg=True, n_in_c=False))
        assert c["nc_finite_index"] is True

    def test_converse_with_fg_parts(self):
        c = fg_inference(
            "amalgam",
            FgPremises(nc_finite_index=True, n_and_a_fg=True, n_and_b_fg=True),
        )
        assert c["n_fg"] is True

    def test_hnn_converse_needs_only_a_side(self):
        c = fg_inference(
            "hnn", FgPremises(nc_finite_index=True, n_and_a_fg=True)
        )
        assert c["n_fg"] is True

    def test_amalgam_converse_waits_for_b_side(self):
        c = fg_inference(
            "amalgam", FgPremises(nc_finite_index=True, n_and_a_fg=True)
        )
        assert c["n_fg"] is None

    def test_finite_index_forces_off_edge(self):
        c = fg_inference("amalgam", FgPremises(nc_finite_index=True))
        assert c["n_in_c"] is False

    def test_fg_edge_kernel_gives_fg_parts(self):
        c = fg_inference(
            "amalgam",
            FgPremises(n_fg=True, n_in_c=False, n_and_c_fg=True),
        )
        assert c["n_and_a_fg"] is True
        assert c["n_and_b_fg"] is True

    def test_finite_quotient_transfer(self):
        c = fg_inference(
            "amalgam",
            FgPremises(nc_finite_index=True, c_over_n_finite=True),
        )
        assert c["g_over_n_finite"] is True
        c = fg_inference(
            "amalgam",
            FgPremises(nc_finite_index=True, c_over_n_finite=False),
        )
        assert c["g_over_n_finite"] is False
        c = fg_inference(
            "amalgam",
            FgPremises(nc_finite_index=True, g_over_n_finite=True),
        )
        assert c["c_over_n_finite"] is True


class TestTrivialEdgeRules:
    BASE = dict(n_nontrivial=True, n_and_c_trivial=True)

    def test_free_transfer_up(self):
        c = fg_inference(
            "amalgam",
            FgPremises(**self.BASE, n_and_a_free=True, n_and_b_free=True),
        )
        assert c["n_free"] is True

    def test_free_transfer_down(self):
        c = fg_inference("amalgam", FgPremises(**self.BASE, n_free=True))
        assert c["n_and_a_free"] is True
        assert c["n_and_b_free"] is True

    def test_fg_gives_finite_index_and_parts(self):
        c = fg_inference("amalgam", FgPremises(**self.BASE, n_fg=True))
        assert c["nc_finite_index"] is True
        assert c["n_and_a_fg"] is True
        assert c["n_and_b_fg"] is True

    def test_gated_on_nontrivial_kernel(self):
        c = fg_inference(
            "amalgam", FgPremises(n_and_c_trivial=True, n_free=True)
        )
        assert c["n_and_a_free"] is None

    def test_contrapositive_not_free(self):
        c = fg_inference(
            "amalgam",
            FgPremises(**self.BASE, n_free=False, n_and_a_free=True),
        )
        assert c["n_and_b_free"] is False


class TestDichotomy:
    PREMISES = dict(
        c_free_abelian=True,
        factors_have_no_fg_normal=True,
        n_fg=True,
        n_in_c=False,
    )

    def test_unresolved_disjunction(self):
        c = fg_inference("amalgam", FgPremises(**self.PREMISES))
        assert frozenset(
            {("g_over_n_finite", True), ("n_free", True)}
        ) in c.disjunctions

    def test_resolves_when_one_side_fails(self):
        c = fg_inference(
            "amalgam", FgPremises(**self.PREMISES, g_over_n_finite=False)
        )
        assert c["n_free"] is True
        assert not c.disjunctions

    def test_gated_on_structure_flags(self):
        c = fg_inference("amalgam", FgPremises(n_fg=True, n_in_c=False))
        assert frozenset(
            {("g_over_n_finite", True), ("n_free", True)}
        ) not in c.disjunctions


class TestContrapositives:
    def test_infinite_index_disjunction(self):
        c = fg_inference("amalgam", FgPremises(nc_finite_index=False))
        assert known(c) == {"nc_finite_index": False}
        assert frozenset({("n_fg", False), ("n_in_c", True)}) in c.disjunctions

    def test_disjunction_resolves_by_unit_propagation(self):
        c = fg_inference(
            "amalgam", FgPremises(nc_finite_index=False, n_fg=True)
        )
        assert c["n_in_c"] is True


class TestContradictions:
    def test_in_edge_with_finite_index(self):
        with pytest.raises(ContradictionError) as info:
            fg_inference(
                "amalgam", FgPremises(nc_finite_index=True, n_in_c=True)
            )
        assert info.value.rule == "finite-index-forces-off-edge"

    def test_fg_off_edge_with_infinite_index(self):
        with pytest.raises(ContradictionError):
            fg_inference(
                "amalgam",
                FgPremises(n_fg=True, n_in_c=False, nc_finite_index=False),
            )


class TestClosureShape:
    def test_monotone_on_examples(self):
        weak = fg_inference("amalgam", FgPremises(n_fg=True, n_in_c=False))
        strong = fg_inference(
            "amalgam",
            FgPremises(n_fg=True, n_in_c=False, n_and_c_fg=True),
        )
        assert weak.implies(strong)

    def test_idempotent_on_examples(self):
        for premises in (
            FgPremises(n_fg=True, n_in_c=False),
            FgPremises(nc_finite_index=True, c_over_n_finite=True),
            FgPremises(
                n_nontrivial=True, n_and_c_trivial=True, n_free=True
            ),
        ):
            once = fg_inference("amalgam", premises)
            twice = fg_inference("amalgam", once.as_premises())
            assert once.flags == twice.flags

    def test_amalgam_needs_nontriviality_assertion(self):
        with pytest.raises(HypothesisError):
            fg_inference(
                "amalgam",
                FgPremises(n_fg=True),
                nontrivial_decomposition=False,
            )

    def test_hnn_ignores_decomposition_flag(self):
        c = fg_inference(
            "hnn",
            FgPremises(n_fg=True, n_in_c=False),
            nontrivial_decomposition=False,
        )
        assert c["nc_finite_index"] is True

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            fg_inference("graph", FgPremises())

    def test_flag_vocabulary(self):
        assert len(FLAG_NAMES) == 15
        assert FLAG_NAMES[:11] == (
            "n_fg",
            "n_in_c",
            "nc_finite_index",
            "n_and_a_fg",
            "n_and_b_fg",
            "n_and_c_fg",
            "c_over_n_finite",
            "n_and_c_trivial",
            "n_and_a_free",
            "n_and_b_free",
            "factors_have_no_fg_normal",
        )
