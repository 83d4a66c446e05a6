"""Collusion-expression language: parsing, tier mapping, and score linting.

An expression names who must collude to break a security property, e.g.
``"1/N + 2/n"`` (at least one public auditor AND a majority of a closed
network). Grammar::

    expr   := branch ("OR" branch)*
    branch := atom ("+" atom)*
    atom   := ("0" | "1" | "2" | "few") "/" ("1" | "n" | "N")

Whitespace is insignificant; everything else, including the n/N population
distinction, is case-sensitive. ``+`` is conjunction (all must collude),
``OR`` separates alternative attack paths (the weakest path wins).
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from enum import Enum

from .model import SecurityProperty, TrustAssignment


class Quorum(Enum):
    ZERO = "0"
    ONE = "1"
    FEW = "few"
    MAJORITY = "2"


class Population(Enum):
    SINGLE_PARTY = "1"
    CLOSED_SET = "n"
    OPEN_SET = "N"


@dataclass(frozen=True)
class TrustAtom:
    """One collusion unit: how many (quorum) of which party set (population)."""

    quorum: Quorum
    population: Population

    def __str__(self) -> str:
        return f"{self.quorum.value}/{self.population.value}"


def _atom(text: str) -> TrustAtom:
    q, p = text.split("/")
    return TrustAtom(Quorum(q), Population(p))


# The vocabulary that actually occurs in trust models; grammatical atoms
# outside this set (e.g. "0/1") are rejected at parse time.
PERMITTED_ATOMS = frozenset(
    _atom(s) for s in ("1/1", "few/1", "1/n", "few/n", "2/n", "1/N", "2/N", "0/N")
)

# Canonical ordering inside a conjunction: open set first, single parties
# last, larger quorums first within a population.
_POPULATION_ORDER = {Population.OPEN_SET: 0, Population.CLOSED_SET: 1, Population.SINGLE_PARTY: 2}
_QUORUM_ORDER = {Quorum.ZERO: 0, Quorum.MAJORITY: 1, Quorum.FEW: 2, Quorum.ONE: 3}


def _atom_sort_key(atom: TrustAtom) -> tuple[int, int]:
    return (_POPULATION_ORDER[atom.population], _QUORUM_ORDER[atom.quorum])


@dataclass(frozen=True)
class TrustExpression:
    """A conjunction of atoms plus optional fallback (OR) branches."""

    atoms: tuple[TrustAtom, ...]
    fallback_branches: tuple["TrustExpression", ...] = ()

    def __post_init__(self):
        if not self.atoms and not self.fallback_branches:
            raise ValueError("expression needs at least one atom or branch")

    def branches(self) -> list[tuple[TrustAtom, ...]]:
        """All branches, primary first, each as a sorted atom tuple."""
        out = [tuple(sorted(self.atoms, key=_atom_sort_key))]
        for branch in self.fallback_branches:
            out.extend(branch.branches())
        return out

    def __eq__(self, other) -> bool:
        if not isinstance(other, TrustExpression):
            return NotImplemented
        # Atom order inside a branch is immaterial (multiset semantics).
        return [Counter(b) for b in self.branches()] == [
            Counter(b) for b in other.branches()
        ]

    def __hash__(self) -> int:
        return hash(tuple(frozenset(Counter(b).items()) for b in self.branches()))


class TrustExprError(ValueError):
    """Parse failure, carrying the byte offset and the expected tokens."""

    def __init__(self, message: str, offset: int, expected: tuple[str, ...] = ()):
        self.offset = offset
        self.expected = expected
        detail = f"{message} at offset {offset}"
        if expected:
            detail += f" (expected one of: {', '.join(expected)})"
        super().__init__(detail)


class UnmappedCombinationError(ValueError):
    """An atom combination with no defined trust tier."""

    def __init__(self, atoms: tuple[TrustAtom, ...]):
        self.atoms = atoms
        joined = " + ".join(str(a) for a in sorted(atoms, key=_atom_sort_key))
        super().__init__(f"unmapped combination: {{{joined}}}")


_QUORUM_TOKENS = ("0", "1", "2", "few")
_POPULATION_TOKENS = ("1", "n", "N")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0

    def _skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def _fail(self, message: str, expected: tuple[str, ...]) -> TrustExprError:
        return TrustExprError(message, self.pos, expected)

    def _literal(self, token: str) -> bool:
        if self.text.startswith(token, self.pos):
            self.pos += len(token)
            return True
        return False

    def parse(self) -> TrustExpression:
        self._skip_ws()
        expr = self._branch()
        fallbacks: list[TrustExpression] = []
        self._skip_ws()
        while self.pos < len(self.text):
            if not self._literal("OR"):
                raise self._fail("unexpected input", ("OR", "+", "end of input"))
            self._skip_ws()
            fallbacks.append(self._branch())
            self._skip_ws()
        if fallbacks:
            return TrustExpression(expr.atoms, tuple(fallbacks))
        return expr

    def _branch(self) -> TrustExpression:
        atoms = [self._atom()]
        while True:
            self._skip_ws()
            mark = self.pos
            if self._literal("+"):
                self._skip_ws()
                atoms.append(self._atom())
            else:
                self.pos = mark
                return TrustExpression(tuple(atoms))

    def _atom(self) -> TrustAtom:
        for token in ("few", "0", "1", "2"):
            if self._literal(token):
                quorum = Quorum(token)
                break
        else:
            raise self._fail("expected quorum", _QUORUM_TOKENS)
        if not self._literal("/"):
            raise self._fail("expected '/'", ("/",))
        for token in _POPULATION_TOKENS:
            if self._literal(token):
                population = Population(token)
                break
        else:
            raise self._fail("expected population", _POPULATION_TOKENS)
        atom = TrustAtom(quorum, population)
        if atom not in PERMITTED_ATOMS:
            raise TrustExprError(
                f"atom {atom} is not in the permitted vocabulary",
                self.pos - len(f"{atom}"),
                tuple(sorted(str(a) for a in PERMITTED_ATOMS)),
            )
        return atom


def parse_trust_expr(text: str) -> TrustExpression:
    """Parse an expression string; raises :class:`TrustExprError` otherwise."""
    if not text or text.isspace():
        raise TrustExprError("empty expression", 0, _QUORUM_TOKENS)
    return _Parser(text).parse()


def format_trust_expr(expr: TrustExpression) -> str:
    """Canonical form: sorted atoms joined by " + ", branches by " OR "."""
    return " OR ".join(
        " + ".join(str(a) for a in branch) for branch in expr.branches()
    )


# Tier table, keyed by the canonicalized atom multiset of a single branch.
# Canonicalization collapses repeated 1/1 atoms into few/1 (collusion among a
# small fixed set) and treats few/n as equivalent to 1/n (both are tier 3:
# one-or-threshold of a closed set).
_ONE_SINGLE = _atom("1/1")
_FEW_SINGLE = _atom("few/1")
_ONE_CLOSED = _atom("1/n")
_FEW_CLOSED = _atom("few/n")
_MAJ_CLOSED = _atom("2/n")
_ONE_OPEN = _atom("1/N")
_MAJ_OPEN = _atom("2/N")
_ZERO_OPEN = _atom("0/N")

_TIER_TABLE: dict[frozenset[tuple[TrustAtom, int]], int] = {}


def _tier_entry(atoms: list[TrustAtom], tier: int) -> None:
    _TIER_TABLE[frozenset(Counter(atoms).items())] = tier


_tier_entry([_ONE_SINGLE], 1)
_tier_entry([_FEW_SINGLE], 2)
_tier_entry([_ONE_CLOSED], 3)
_tier_entry([_MAJ_CLOSED], 4)
_tier_entry([_ONE_CLOSED, _FEW_SINGLE], 5)
_tier_entry([_ONE_CLOSED, _ONE_SINGLE], 5)
_tier_entry([_ONE_OPEN, _ONE_SINGLE], 6)
_tier_entry([_ONE_OPEN, _MAJ_CLOSED], 7)
_tier_entry([_ONE_OPEN, _ONE_CLOSED, _FEW_SINGLE], 8)
_tier_entry([_ONE_OPEN, _ONE_CLOSED, _ONE_SINGLE], 8)
_tier_entry([_MAJ_OPEN], 9)
_tier_entry([_ZERO_OPEN], 10)


def _canonical_multiset(atoms: tuple[TrustAtom, ...]) -> Counter:
    counts = Counter(atoms)
    # few/n shares tier semantics with 1/n everywhere it appears.
    if counts[_FEW_CLOSED]:
        counts[_ONE_CLOSED] += counts.pop(_FEW_CLOSED)
    # Several independent single authorities are "a few single authorities".
    if counts[_ONE_SINGLE] >= 2:
        counts[_FEW_SINGLE] += 1
        del counts[_ONE_SINGLE]
    return counts


def _branch_tier(atoms: tuple[TrustAtom, ...]) -> int:
    key = frozenset(_canonical_multiset(atoms).items())
    try:
        return _TIER_TABLE[key]
    except KeyError:
        raise UnmappedCombinationError(atoms) from None


def tier_of(expr: TrustExpression) -> int:
    """Map an expression to its 0-10 trust tier.

    With OR branches the result is the minimum tier over branches: a
    disjunction of attack paths is only as strong as its weakest path.
    """
    return min(_branch_tier(branch) for branch in expr.branches())


@dataclass(frozen=True)
class LintFinding:
    """Stored score and expression tier disagree (or the expression is broken)."""

    protocol: str | None
    property: SecurityProperty
    stored_score: int
    expression: str
    expression_tier: int | None
    message: str

    def __str__(self) -> str:
        where = f"{self.protocol} " if self.protocol else ""
        return f"{where}{self.property.value}: {self.message}"


def lint_assignment(
    assignment: TrustAssignment, protocol: str | None = None
) -> list[LintFinding]:
    """Cross-check one stored score against its expression annotation.

    No findings when there is no expression or when the property is CRES
    (its 0-4 scale is not the collusion-tier scale). Parse failures are
    reported as findings, never raised.
    """
    if assignment.expression is None or assignment.property is SecurityProperty.CRES:
        return []
    try:
        expr = parse_trust_expr(assignment.expression)
        tier = tier_of(expr)
    except (TrustExprError, UnmappedCombinationError) as exc:
        return [
            LintFinding(
                protocol,
                assignment.property,
                assignment.score,
                assignment.expression,
                None,
                f"expression {assignment.expression!r} does not map to a tier: {exc}",
            )
        ]
    if tier == assignment.score:
        return []
    return [
        LintFinding(
            protocol,
            assignment.property,
            assignment.score,
            assignment.expression,
            tier,
            f"stored {assignment.score}, expression maps to {tier}",
        )
    ]


def lint_dataset(dataset) -> list[LintFinding]:
    """Lint every assignment of every protocol, in dataset/property order."""
    findings: list[LintFinding] = []
    for record in dataset.protocols:
        for prop in SecurityProperty:
            assignment = record.assignments.get(prop)
            if assignment is not None:
                findings.extend(lint_assignment(assignment, record.name))
    return findings
