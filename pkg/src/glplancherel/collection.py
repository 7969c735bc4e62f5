"""Partition collections: finitely supported maps from polynomial labels to partitions."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .fieldpolys import PolynomialLabel, check_label, polynomial_of, render_polynomial
from .partitions import Partition

__all__ = ["PartitionCollection"]


@dataclass(frozen=True)
class PartitionCollection:
    """``{phi: Lambda_phi}`` with empty partitions dropped, sorted by label.

    ``total`` is ``sum |Lambda_phi| * deg(phi)``.
    """

    assignments: tuple[tuple[PolynomialLabel, Partition], ...] = ()

    def __post_init__(self):
        items = sorted(((lab, lam) for lab, lam in self.assignments if lam), key=lambda t: t[0])
        labels = [lab for lab, _ in items]
        if len(set(labels)) != len(labels):
            raise ValueError("a polynomial label appears twice")
        object.__setattr__(self, "assignments", tuple(items))

    @classmethod
    def of(cls, mapping: Union[Mapping, Iterable] = ()) -> PartitionCollection:
        """Build from a mapping or pairs; keys may be labels or ``(degree, index)`` tuples."""
        pairs = mapping.items() if isinstance(mapping, Mapping) else mapping
        out = []
        for key, lam in pairs:
            if not isinstance(key, PolynomialLabel):
                key = PolynomialLabel(*key)
            if not isinstance(lam, Partition):
                lam = Partition(tuple(lam))
            out.append((key, lam))
        return cls(tuple(out))

    @property
    def total(self) -> int:
        return sum(lab.degree * lam.size for lab, lam in self.assignments)

    def __getitem__(self, label) -> Partition:
        if not isinstance(label, PolynomialLabel):
            label = PolynomialLabel(*label)
        for lab, lam in self.assignments:
            if lab == label:
                return lam
        return Partition(())

    def __iter__(self):
        return iter(self.assignments)

    def __len__(self):
        return len(self.assignments)

    def check(self, q: int) -> None:
        for lab, _ in self.assignments:
            check_label(lab, q)

    def to_dict(self, q: int | None = None, with_poly: bool = False) -> dict:
        rows = []
        for lab, lam in self.assignments:
            row = {"degree": lab.degree, "index": lab.index}
            if with_poly and q is not None:
                coeffs = polynomial_of(lab, q)
                if coeffs is not None:
                    row["poly"] = render_polynomial(coeffs, q)
            row["partition"] = str(lam)
            rows.append(row)
        return {"n": self.total, "assignments": rows}

    @classmethod
    def from_dict(cls, data: dict) -> PartitionCollection:
        coll = cls.of(
            ((row["degree"], row["index"]), Partition.parse(row["partition"]))
            for row in data["assignments"]
        )
        if "n" in data and data["n"] != coll.total:
            raise ValueError(f"stated n={data['n']} disagrees with assignments ({coll.total})")
        return coll

    def __str__(self):
        inner = "; ".join(f"{lab.degree}:{lab.index}={lam}" for lab, lam in self.assignments)
        return "{" + inner + "}"
