from __future__ import annotations

import pytest
from hypothesis import given, strategies as st

from ivmf.model import SecurityProperty, TrustAssignment
from ivmf.trustexpr import (
    PERMITTED_ATOMS,
    TrustExprError,
    UnmappedCombinationError,
    format_trust_expr,
    lint_assignment,
    lint_dataset,
    parse_trust_expr,
    tier_of,
)


def tier(text: str) -> int:
    return tier_of(parse_trust_expr(text))


class TestParsing:
    def test_single_atom(self):
        expr = parse_trust_expr("0/N")
        assert len(expr.atoms) == 1
        assert str(expr.atoms[0]) == "0/N"
        assert not expr.fallback_branches

    def test_conjunction(self):
        expr = parse_trust_expr("1/N + 2/n")
        assert sorted(str(a) for a in expr.atoms) == ["1/N", "2/n"]

    def test_whitespace_insensitive(self):
        assert parse_trust_expr("1/N+2/n") == parse_trust_expr("  1/N  +  2/n ")

    def test_case_sensitive_population(self):
        # n and N are different populations, so these map to different tiers.
        assert tier("2/n") == 4
        assert tier("2/N") == 9

    def test_or_branches(self):
        expr = parse_trust_expr("2/n OR 1/1")
        assert len(expr.fallback_branches) == 1

    def test_parse_error_offset(self):
        with pytest.raises(TrustExprError) as exc_info:
            parse_trust_expr("1/x")
        assert exc_info.value.offset == 2
        assert set(exc_info.value.expected) == {"1", "n", "N"}

    @pytest.mark.parametrize("bad", ["", "   ", "+1/1", "1/1 +", "3/n", "few/x",
                                     "1/1 OR", "or", "1/1 AND 2/n"])
    def test_rejects_ungrammatical(self, bad):
        with pytest.raises(TrustExprError):
            parse_trust_expr(bad)

    @pytest.mark.parametrize("bad", ["0/1", "0/n", "2/1", "few/N"])
    def test_rejects_impermissible_atoms(self, bad):
        # Grammatical shape, but outside the permitted atom vocabulary.
        with pytest.raises(TrustExprError):
            parse_trust_expr(bad)


class TestTiers:
    @pytest.mark.parametrize(
        "text,expected",
        [
            ("1/1", 1),
            ("few/1", 2),
            ("1/1 + 1/1", 2),       # several single authorities collapse to few/1
            ("1/n", 3),
            ("few/n", 3),
            ("2/n", 4),
            ("1/n + few/1", 5),
            ("1/n + 1/1", 5),       # Estonian-style: collector AND all talliers
            ("1/N + 1/1", 6),
            ("1/N + 2/n", 7),
            ("1/N + 1/n + few/1", 8),
            ("1/N + 1/n + 1/1", 8),
            ("2/N", 9),
            ("0/N", 10),
        ],
    )
    def test_mapping_table(self, text, expected):
        assert tier(text) == expected

    def test_or_takes_minimum(self):
        assert tier("2/n OR 1/1") == 1
        assert tier("0/N OR 2/N OR 1/n") == 3

    def test_single_atom_monotonicity(self):
        assert tier("1/1") < tier("1/n") < tier("2/n") < tier("2/N") < tier("0/N")

    def test_unmapped_combination(self):
        with pytest.raises(UnmappedCombinationError) as exc_info:
            tier("2/N + 2/n")
        assert "unmapped combination" in str(exc_info.value)

    def test_unmapped_duplicate_closed(self):
        with pytest.raises(UnmappedCombinationError):
            tier("1/n + 1/n")


class TestLinting:
    def test_consistent_assignment_is_clean(self):
        a = TrustAssignment(SecurityProperty.EVF, 1, "1/1")
        assert lint_assignment(a) == []

    def test_missing_expression_is_clean(self):
        assert lint_assignment(TrustAssignment(SecurityProperty.SEC, 4)) == []

    def test_cres_is_exempt(self):
        # CRES scores live on the 0-4 mechanism scale, not the tier scale.
        a = TrustAssignment(SecurityProperty.CRES, 3, "1/1")
        assert lint_assignment(a) == []

    def test_mismatch_reports_both_values(self):
        a = TrustAssignment(SecurityProperty.UVF, 4, "1/N + 2/n")
        (finding,) = lint_assignment(a, protocol="Voatz")
        assert finding.stored_score == 4
        assert finding.expression_tier == 7
        assert finding.message == "stored 4, expression maps to 7"

    def test_parse_failure_is_a_finding_not_an_error(self):
        a = TrustAssignment(SecurityProperty.SEC, 3, "1/x")
        (finding,) = lint_assignment(a)
        assert finding.expression_tier is None
        assert "does not map to a tier" in finding.message

    def test_bundled_dataset_findings(self, dataset):
        findings = lint_dataset(dataset)
        assert [(f.protocol, f.property.value) for f in findings] == [
            ("Vocdoni", "IVF"),
            ("Vocdoni", "UVF"),
            ("Voatz", "UVF"),
        ]
        assert {f.message for f in findings} == {
            "stored 3, expression maps to 4",
            "stored 4, expression maps to 7",
        }


def all_dataset_expressions(dataset) -> list[str]:
    out = []
    for protocol in dataset.protocols:
        for assignment in protocol.assignments.values():
            if assignment.expression:
                out.append(assignment.expression)
    return out


class TestRoundTrip:
    def test_dataset_expressions_round_trip(self, dataset):
        expressions = all_dataset_expressions(dataset)
        assert expressions, "bundled dataset should carry expressions"
        for text in expressions:
            parsed = parse_trust_expr(text)
            canonical = format_trust_expr(parsed)
            assert parse_trust_expr(canonical) == parsed
            # The bundled dataset is stored in canonical form already.
            assert canonical == text

    def test_canonical_form_is_stable(self):
        canonical = format_trust_expr(parse_trust_expr("2/n+1/N OR 1/1"))
        again = format_trust_expr(parse_trust_expr(canonical))
        assert canonical == again == "1/N + 2/n OR 1/1"


_atoms = st.sampled_from(sorted(str(a) for a in PERMITTED_ATOMS))
_ws = st.sampled_from(["", " ", "  "])


@st.composite
def expression_strings(draw):
    def branch():
        atoms = draw(st.lists(_atoms, min_size=1, max_size=4))
        return draw(_ws).join(
            atoms[0:1] + [f"{draw(_ws)}+{draw(_ws)}{a}" for a in atoms[1:]]
        )

    n_branches = draw(st.integers(1, 3))
    parts = [branch() for _ in range(n_branches)]
    sep = f"{draw(_ws)}OR "
    return sep.join(parts)


@given(expression_strings())
def test_fuzzed_round_trip(text):
    parsed = parse_trust_expr(text)
    canonical = format_trust_expr(parsed)
    assert parse_trust_expr(canonical) == parsed
    assert format_trust_expr(parse_trust_expr(canonical)) == canonical
