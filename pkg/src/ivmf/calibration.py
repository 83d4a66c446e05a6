"""Re-derivation of the default trust-model weights.

The six TM weights shipped in ``data/weights/default.json`` are not taken on
faith: they are the unique least-squares solution of the linear system

    normalized property matrix (17 x 6)  @  w  =  published raw TM scores

over the bundled dataset. ``scripts/derive_tm_weights.py`` runs this solve
and the acceptance suite re-checks it, so the shipped constants can always be
reproduced from data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .model import Dataset, SecurityProperty
from .scoring import _minmax

# Published reference TM(p) values under the default scheme, the calibration
# targets for the solve (4-decimal precision as published).
REFERENCE_TM_RAW: dict[str, float] = {
    "Snapshot X": 5.5000,
    "Stellot": 5.5000,
    "Cicada": 5.4000,
    "MACI": 5.2600,
    "Open Vote Network": 4.9600,
    "Vocdoni": 4.6500,
    "CHVote": 4.6250,
    "Scytl": 4.1450,
    "Estonian e-voting system": 3.9950,
    "Agora": 3.9500,
    "Votem, Proof of Vote": 3.9411,
    "Belenios": 3.1506,
    "zkSnap": 3.1000,
    "Helios": 2.8350,
    "Decidim": 2.7350,
    "Snapshot": 1.7000,
    "Voatz": 1.0100,
}


@dataclass(frozen=True)
class WeightSolve:
    """Result of the calibration solve."""

    weights: dict[SecurityProperty, float]
    max_residual: float
    matrix_rank: int

    @property
    def unique(self) -> bool:
        return self.matrix_rank == len(SecurityProperty)


def normalized_property_matrix(dataset: Dataset) -> np.ndarray:
    """17 x 6 matrix of min-max normalized property columns, dataset order."""
    columns = []
    for prop in SecurityProperty:
        raw = [p.assignments[prop].score for p in dataset.protocols]
        norm, _ = _minmax(raw)
        columns.append(norm)
    return np.array(columns, dtype=float).T


def derive_tm_weights(
    dataset: Dataset, targets: dict[str, float] | None = None
) -> WeightSolve:
    """Solve the calibration system and report uniqueness and residual."""
    if targets is None:
        targets = REFERENCE_TM_RAW
    matrix = normalized_property_matrix(dataset)
    b = np.array([targets[p.name] for p in dataset.protocols], dtype=float)
    solution, _, rank, _ = np.linalg.lstsq(matrix, b, rcond=None)
    residual = float(np.max(np.abs(matrix @ solution - b)))
    weights = {
        prop: float(w) for prop, w in zip(SecurityProperty, solution)
    }
    return WeightSolve(weights=weights, max_residual=residual, matrix_rank=int(rank))
