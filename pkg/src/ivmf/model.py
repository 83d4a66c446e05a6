"""Domain types for evaluated internet-voting protocols.

Everything in here is an immutable value object: a dataset is loaded once,
validated once, and then shared freely. Scoring and analysis live in
:mod:`ivmf.scoring` and :mod:`ivmf.stats`; file formats in :mod:`ivmf.dataio`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from typing import Mapping


class ComplexityClass(IntEnum):
    """Operational-burden class of one protocol component (1 = lightest)."""

    SINGLE_COMPONENT = 1
    PUBLIC_NETWORK = 2
    INDEPENDENT_PARTIES = 3
    MULTI_PARTY_COMPUTATION = 4
    DEDICATED_NETWORK = 5


class SecurityProperty(Enum):
    """The six security properties every protocol is scored on.

    Declaration order is the canonical presentation order used throughout
    reports and findings.
    """

    SEC = "SEC"
    ANON = "ANON"
    IVF = "IVF"
    UVF = "UVF"
    EVF = "EVF"
    CRES = "CRES"

    @property
    def scale_max(self) -> int:
        # CRES uses its own 0-4 mechanism scale; the rest use the 0-10
        # collusion-tier scale.
        return 4 if self is SecurityProperty.CRES else 10

    @property
    def label(self) -> str:
        return _PROPERTY_LABELS[self]


_PROPERTY_LABELS = {
    SecurityProperty.SEC: "Voting Secrecy",
    SecurityProperty.ANON: "Voter Anonymity",
    SecurityProperty.IVF: "Individual Verifiability",
    SecurityProperty.UVF: "Universal Verifiability",
    SecurityProperty.EVF: "Eligibility Verifiability",
    SecurityProperty.CRES: "Coercion Resistance",
}

PU_RANGE = range(0, 4)


@dataclass(frozen=True)
class ComponentSpec:
    """One physically or logically separate component of a protocol."""

    name: str
    complexity_class: ComplexityClass


@dataclass(frozen=True)
class TrustAssignment:
    """A stored ordinal score for one security property.

    ``score`` is authoritative. ``expression`` is a collusion-expression
    annotation that may disagree with the score; the linter in
    :mod:`ivmf.trustexpr` reports such disagreements but never rewrites them.
    """

    property: SecurityProperty
    score: int
    expression: str | None = None
    justification: str | None = None


@dataclass(frozen=True)
class ProtocolRecord:
    """One evaluated internet-voting system."""

    name: str
    components: tuple[ComponentSpec, ...]
    pu: int
    assignments: Mapping[SecurityProperty, TrustAssignment]
    sources: tuple[str, ...] = ()

    def assignment(self, prop: SecurityProperty) -> TrustAssignment:
        return self.assignments[prop]


@dataclass(frozen=True)
class WeightScheme:
    """The nine weights defining one scoring scenario.

    ``w_cmpx``/``w_pu``/``w_tm`` weight the three top-level indicators;
    the remaining six weight the security properties inside the trust-model
    composite.
    """

    name: str
    w_cmpx: float
    w_pu: float
    w_tm: float
    w_sec: float
    w_anon: float
    w_ivf: float
    w_uvf: float
    w_evf: float
    w_cres: float

    def tm_weights(self) -> dict[SecurityProperty, float]:
        return {
            SecurityProperty.SEC: self.w_sec,
            SecurityProperty.ANON: self.w_anon,
            SecurityProperty.IVF: self.w_ivf,
            SecurityProperty.UVF: self.w_uvf,
            SecurityProperty.EVF: self.w_evf,
            SecurityProperty.CRES: self.w_cres,
        }

    def all_weights(self) -> tuple[float, ...]:
        return (
            self.w_cmpx,
            self.w_pu,
            self.w_tm,
            self.w_sec,
            self.w_anon,
            self.w_ivf,
            self.w_uvf,
            self.w_evf,
            self.w_cres,
        )

    def valid_for_ranking(self) -> bool:
        """True unless the trust-model term is weighted but internally empty."""
        if self.w_tm == 0:
            return True
        return any(w != 0 for w in self.tm_weights().values())


@dataclass(frozen=True)
class Dataset:
    """An ordered collection of protocol records plus its schema version."""

    schema_version: str
    protocols: tuple[ProtocolRecord, ...]

    def names(self) -> list[str]:
        return [p.name for p in self.protocols]

    def __iter__(self):
        return iter(self.protocols)

    def __len__(self) -> int:
        return len(self.protocols)


@dataclass(frozen=True)
class ValidationFinding:
    """One violated invariant: which protocol, which field, which rule."""

    protocol: str | None
    field: str
    message: str

    def __str__(self) -> str:
        where = f"{self.protocol}: " if self.protocol else ""
        return f"{where}{self.field}: {self.message}"


def validate_dataset(dataset: Dataset) -> list[ValidationFinding]:
    """Check every dataset invariant; an empty list means the dataset is valid.

    Findings are data, not failures: the order is deterministic (dataset
    order, then field order) so repeated runs compare byte-for-byte.
    """
    findings: list[ValidationFinding] = []

    if len(dataset.protocols) < 2:
        findings.append(
            ValidationFinding(
                None,
                "protocols",
                f"dataset has {len(dataset.protocols)} protocols; "
                "at least 2 are required for min-max normalization",
            )
        )

    seen: set[str] = set()
    for record in dataset.protocols:
        if record.name in seen:
            findings.append(
                ValidationFinding(record.name, "name", "duplicate protocol name")
            )
        seen.add(record.name)
        findings.extend(_validate_protocol(record))

    return findings


def _validate_protocol(record: ProtocolRecord) -> list[ValidationFinding]:
    findings: list[ValidationFinding] = []
    name = record.name

    if not record.name:
        findings.append(ValidationFinding(name, "name", "protocol name is empty"))

    if not record.components:
        findings.append(
            ValidationFinding(name, "components", "protocol has no components")
        )
    for i, comp in enumerate(record.components):
        if not comp.name:
            findings.append(
                ValidationFinding(name, f"components[{i}].name", "component name is empty")
            )
        if int(comp.complexity_class) not in (1, 2, 3, 4, 5):
            findings.append(
                ValidationFinding(
                    name,
                    f"components[{i}].class",
                    f"complexity class {int(comp.complexity_class)} outside 1-5",
                )
            )

    if record.pu not in PU_RANGE:
        findings.append(
            ValidationFinding(name, "pu", f"pu {record.pu} out of range 0-3")
        )

    for prop in SecurityProperty:
        assignment = record.assignments.get(prop)
        if assignment is None:
            findings.append(
                ValidationFinding(
                    name, f"properties.{prop.value}", "missing trust assignment"
                )
            )
            continue
        if not (0 <= assignment.score <= prop.scale_max):
            findings.append(
                ValidationFinding(
                    name,
                    f"properties.{prop.value}.score",
                    f"score {assignment.score} out of range 0-{prop.scale_max}",
                )
            )
    for prop in record.assignments:
        if not isinstance(prop, SecurityProperty):
            findings.append(
                ValidationFinding(
                    name, "properties", f"unknown security property {prop!r}"
                )
            )

    return findings


def check_weight_scheme(scheme: WeightScheme) -> list[ValidationFinding]:
    """Weight-scheme invariants, reported in the same finding shape."""
    findings: list[ValidationFinding] = []
    labels = (
        "ivmf.cmpx", "ivmf.pu", "ivmf.tm",
        "tm.sec", "tm.anon", "tm.ivf", "tm.uvf", "tm.evf", "tm.cres",
    )
    for label, value in zip(labels, scheme.all_weights()):
        if not math.isfinite(value):
            findings.append(
                ValidationFinding(scheme.name, label, f"weight {value!r} is not finite")
            )
    if not findings and not scheme.valid_for_ranking():
        findings.append(
            ValidationFinding(
                scheme.name,
                "tm",
                "scheme weights the trust model (ivmf.tm != 0) but all six "
                "trust-model weights are zero",
            )
        )
    return findings
