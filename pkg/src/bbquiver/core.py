"""Quivers, dimension vectors, stability conditions and their arithmetic.

A quiver is a finite directed multigraph.  Dimension vectors and stability
conditions are integer tuples aligned with the declared vertex order; all
arithmetic is exact (ints and Fractions, never floats).
"""

from __future__ import annotations

import itertools
import json
import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import ValidationError

DimVector = tuple[int, ...]
Stability = tuple[int, ...]


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Quiver:
    """Finite quiver with string-named vertices and arrows.

    Vertex and arrow order is significant: it fixes the coordinate order of
    dimension vectors and every downstream canonicalization.
    """

    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    _vindex: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise ValidationError("duplicate vertex names")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise ValidationError("duplicate arrow names")
        vset = set(self.vertices)
        for a in self.arrows:
            if a.source not in vset or a.target not in vset:
                raise ValidationError(f"arrow {a.name}: endpoint not a declared vertex")
        object.__setattr__(self, "_vindex", {v: k for k, v in enumerate(self.vertices)})

    @classmethod
    def from_arrows(cls, vertices, arrows):
        """Build from an iterable of (name, source, target) triples."""
        return cls(tuple(vertices), tuple(Arrow(*t) for t in arrows))

    def vertex_index(self, v: str) -> int:
        try:
            return self._vindex[v]
        except KeyError:
            raise ValidationError(f"unknown vertex {v!r}") from None

    def arrow(self, name: str) -> Arrow:
        for a in self.arrows:
            if a.name == name:
                return a
        raise ValidationError(f"unknown arrow {name!r}")

    def arrows_from(self, v: str):
        return [a for a in self.arrows if a.source == v]

    def arrows_into(self, v: str):
        return [a for a in self.arrows if a.target == v]

    def is_acyclic(self) -> bool:
        indeg = {v: 0 for v in self.vertices}
        for a in self.arrows:
            indeg[a.target] += 1
        queue = [v for v in self.vertices if indeg[v] == 0]
        seen = 0
        while queue:
            v = queue.pop()
            seen += 1
            for a in self.arrows_from(v):
                indeg[a.target] -= 1
                if indeg[a.target] == 0:
                    queue.append(a.target)
        return seen == len(self.vertices)

    def max_multiplicity(self) -> int:
        """Largest number of parallel arrows between an ordered vertex pair."""
        count: dict[tuple[str, str], int] = {}
        for a in self.arrows:
            count[(a.source, a.target)] = count.get((a.source, a.target), 0) + 1
        return max(count.values(), default=0)

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "arrows": [{"name": a.name, "from": a.source, "to": a.target} for a in self.arrows],
        }

    @classmethod
    def from_dict(cls, doc: dict) -> "Quiver":
        try:
            vertices = tuple(doc["vertices"])
            arrows = tuple(Arrow(a["name"], a["from"], a["to"]) for a in doc["arrows"])
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed quiver document: {exc}") from exc
        return cls(vertices, arrows)

    @classmethod
    def from_json(cls, text: str) -> "Quiver":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


def check_vector(quiver: Quiver, d, name: str = "vector", nonnegative: bool = False) -> tuple[int, ...]:
    """Coerce d to an int tuple matching the quiver's vertex count."""
    t = tuple(int(x) for x in d)
    if len(t) != len(quiver.vertices):
        raise ValidationError(
            f"{name} has {len(t)} entries, quiver has {len(quiver.vertices)} vertices"
        )
    if nonnegative and any(x < 0 for x in t):
        raise ValidationError(f"{name} has negative entries")
    return t


def euler_form(quiver: Quiver, d, e) -> int:
    """Euler form <d,e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j."""
    d = check_vector(quiver, d, "d")
    e = check_vector(quiver, e, "e")
    idx = quiver.vertex_index
    total = sum(di * ei for di, ei in zip(d, e))
    for a in quiver.arrows:
        total -= d[idx(a.source)] * e[idx(a.target)]
    return total


def slope(theta, d) -> Fraction:
    """theta(d) / sum_i d_i, exact; undefined for d = 0."""
    d = tuple(int(x) for x in d)
    total = sum(d)
    if total == 0:
        raise ValidationError("slope undefined for the zero dimension vector")
    num = sum(t * x for t, x in zip(theta, d))
    return Fraction(num, total)


def is_coprime(quiver: Quiver, d, theta) -> bool:
    """True iff no proper nonzero d' <= d has the same slope as d.

    Decided by exhausting the box 0 <= d' <= d; fine at desk scale.
    """
    d = check_vector(quiver, d, "d", nonnegative=True)
    theta = check_vector(quiver, theta, "theta")
    if sum(d) == 0:
        raise ValidationError("coprimality undefined for the zero dimension vector")
    mu = slope(theta, d)
    for dp in itertools.product(*(range(x + 1) for x in d)):
        if sum(dp) == 0 or dp == d:
            continue
        if slope(theta, dp) == mu:
            return False
    return True


def indivisible(d) -> bool:
    return math.gcd(*[int(x) for x in d]) == 1
