"""Tabular experiment output and asymptotic-constant extraction."""

from __future__ import annotations

import io
import json
from dataclasses import dataclass, field

import numpy as np


def _fmt(value) -> str:
    if isinstance(value, str):
        return value
    if isinstance(value, (int, np.integer)):
        return str(int(value))
    return f"{float(value):.12e}"


@dataclass
class ExperimentRecord:
    """Rows of a sweep plus metadata, written as CSV (``%.12e``) or JSON."""

    name: str
    columns: tuple
    rows: list = field(default_factory=list)
    metadata: dict = field(default_factory=dict)

    def add(self, *values) -> None:
        if len(values) != len(self.columns):
            raise ValueError(f"expected {len(self.columns)} values, got {len(values)}")
        self.rows.append(tuple(values))

    def column(self, name: str) -> np.ndarray:
        j = self.columns.index(name)
        return np.array([r[j] for r in self.rows], dtype=float)

    def to_csv(self, fh=None) -> str:
        out = io.StringIO()
        out.write(",".join(self.columns) + "\n")
        for row in self.rows:
            out.write(",".join(_fmt(v) for v in row) + "\n")
        text = out.getvalue()
        if fh is not None:
            fh.write(text)
        return text

    def to_json(self) -> str:
        def clean(v):
            if isinstance(v, np.ndarray):
                return v.tolist()
            if isinstance(v, (np.floating, np.integer)):
                return v.item()
            return v

        data = {"name": self.name, "columns": list(self.columns),
                "rows": [[clean(v) for v in r] for r in self.rows],
                "metadata": {k: clean(v) for k, v in self.metadata.items()}}
        return json.dumps(data, indent=2, sort_keys=True)


@dataclass(frozen=True)
class InverseFit:
    """``value ~ a / eps**order + b`` from the two smallest ``eps``.

    ``residual`` is the relative misfit at the remaining largest ``eps``
    (``nan`` with only two points).
    """

    a: float
    b: float
    order: int
    residual: float

    def __call__(self, eps):
        return self.a / np.asarray(eps, dtype=float) ** self.order + self.b


def fit_inverse_eps(eps, values, order: int = 1) -> InverseFit:
    eps = np.asarray(eps, dtype=float)
    values = np.asarray(values, dtype=float)
    if eps.shape != values.shape or eps.size < 2:
        raise ValueError("need at least two matching (eps, value) pairs")
    idx = np.argsort(eps)
    e1, e2 = eps[idx[0]], eps[idx[1]]
    v1, v2 = values[idx[0]], values[idx[1]]
    x1, x2 = e1**-order, e2**-order
    a = (v1 - v2) / (x1 - x2)
    b = v1 - a * x1
    residual = float("nan")
    if eps.size >= 3:
        e3, v3 = eps[idx[-1]], values[idx[-1]]
        pred = a * e3**-order + b
        residual = float(abs(pred - v3) / max(abs(v3), 1e-300))
    return InverseFit(float(a), float(b), order, residual)
