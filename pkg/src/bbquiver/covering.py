"""The covering quiver attached to a torus action, and its dimension vectors.

For weights w assigning a character in Z^n to every arrow, the covering
quiver has vertices Q_0 x Z^n and arrows Q_1 x Z^n with
(a, chi): (s(a), chi) -> (t(a), chi + w_a).  Finitely supported dimension
vectors of the covering are the combinatorial shadows of torus-fixed
points; they are considered up to simultaneous translation (shift) of all
characters.
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field

from .core import Arrow, Quiver, check_vector
from .errors import ValidationError

Character = tuple[int, ...]


def _as_char(chi, rank: int) -> Character:
    if isinstance(chi, int):
        chi = (chi,)
    t = tuple(int(x) for x in chi)
    if len(t) != rank:
        raise ValidationError(f"character {t} has length {len(t)}, expected rank {rank}")
    return t


def char_add(a: Character, b: Character) -> Character:
    return tuple(x + y for x, y in zip(a, b))


def char_sub(a: Character, b: Character) -> Character:
    return tuple(x - y for x, y in zip(a, b))


def char_neg(a: Character) -> Character:
    return tuple(-x for x in a)


@dataclass(frozen=True)
class WeightAssignment:
    """Rank-n torus weights: one integer n-tuple per arrow."""

    rank: int
    weights: dict = field(hash=False)

    def __post_init__(self):
        if self.rank < 1:
            raise ValidationError("torus rank must be positive")
        fixed = {}
        for name, w in self.weights.items():
            fixed[name] = _as_char(w, self.rank)
        object.__setattr__(self, "weights", fixed)

    def of(self, arrow: Arrow | str) -> Character:
        name = arrow.name if isinstance(arrow, Arrow) else arrow
        try:
            return self.weights[name]
        except KeyError:
            raise ValidationError(f"no weight assigned to arrow {name!r}") from None

    def zero(self) -> Character:
        return (0,) * self.rank

    def to_dict(self) -> dict:
        return {"rank": self.rank, "weights": {k: list(v) for k, v in self.weights.items()}}

    @classmethod
    def from_dict(cls, doc: dict) -> "WeightAssignment":
        try:
            return cls(int(doc["rank"]), dict(doc["weights"]))
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed weight document: {exc}") from exc

    @classmethod
    def from_json(cls, text: str) -> "WeightAssignment":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"invalid JSON: {exc}") from exc
        return cls.from_dict(doc)


def generic_rank1_weights(quiver: Quiver) -> WeightAssignment:
    """Rank-1 weights w_{a_k} = B^(N-k) realizing w_1 >> ... >> w_N > 0.

    B = 5 + 4 * (max arrow multiplicity) separates every integer combination
    of weights with coefficients in [-4, 4], which covers all character
    differences produced by the weight-space formulas on these quivers.
    """
    base = 5 + 4 * quiver.max_multiplicity()
    n = len(quiver.arrows)
    return WeightAssignment(1, {a.name: (base ** (n - k - 1),) for k, a in enumerate(quiver.arrows)})


def covering_target(quiver: Quiver, w: WeightAssignment, arrow: Arrow | str, chi) -> tuple[str, Character]:
    """Target of the covering arrow (a, chi), namely (t(a), chi + w_a)."""
    a = quiver.arrow(arrow) if isinstance(arrow, str) else arrow
    chi = _as_char(chi, w.rank)
    return (a.target, char_add(chi, w.of(a)))


@dataclass(frozen=True)
class CoveringDimVector:
    """Finitely supported dimension vector of the covering quiver.

    Entries are stored as a sorted tuple of ((vertex, character), count)
    with all counts positive, so equal vectors compare and hash equal.
    """

    rank: int
    entries: tuple

    def __post_init__(self):
        fixed = []
        for (v, chi), m in self.entries:
            m = int(m)
            if m < 0:
                raise ValidationError("negative covering multiplicity")
            if m == 0:
                continue
            fixed.append(((v, _as_char(chi, self.rank)), m))
        fixed.sort(key=lambda item: (item[0][1], item[0][0]))
        object.__setattr__(self, "entries", tuple(fixed))

    @classmethod
    def from_dict(cls, rank: int, support: dict) -> "CoveringDimVector":
        return cls(rank, tuple(support.items()))

    def support(self) -> dict:
        return {key: m for key, m in self.entries}

    def support_vertices(self) -> list[tuple[str, Character]]:
        return [key for key, _ in self.entries]

    def get(self, v: str, chi) -> int:
        chi = _as_char(chi, self.rank)
        for (u, xi), m in self.entries:
            if u == v and xi == chi:
                return m
        return 0

    def total(self) -> int:
        return sum(m for _, m in self.entries)

    def is_zero(self) -> bool:
        return not self.entries

    def characters(self) -> list[Character]:
        return sorted({chi for (_, chi), _ in self.entries})

    def to_jsonable(self) -> list[dict]:
        return [{"vertex": v, "char": list(chi), "dim": m} for (v, chi), m in self.entries]

    @classmethod
    def from_jsonable(cls, rank: int, items) -> "CoveringDimVector":
        support: dict = {}
        for it in items:
            key = (it["vertex"], tuple(it["char"]))
            support[key] = support.get(key, 0) + int(it["dim"])
        return cls.from_dict(rank, support)


def shift(beta: CoveringDimVector, chi) -> CoveringDimVector:
    """s_chi(beta), whose value at (i, xi) is beta at (i, chi + xi)."""
    chi = _as_char(chi, beta.rank)
    return CoveringDimVector(
        beta.rank,
        tuple((((v, char_sub(xi, chi)), m)) for (v, xi), m in beta.entries),
    )


def project(beta: CoveringDimVector, quiver: Quiver) -> tuple[int, ...]:
    """Push beta down to Q: d_i = sum over characters of beta_{i, chi}."""
    d = [0] * len(quiver.vertices)
    for (v, _), m in beta.entries:
        d[quiver.vertex_index(v)] += m
    return tuple(d)


def canonicalize(beta: CoveringDimVector) -> CoveringDimVector:
    """The unique shift whose lexicographically smallest support character is 0."""
    if beta.is_zero():
        raise ValidationError("cannot canonicalize the zero covering vector")
    chi_min = min(chi for (_, chi), _ in beta.entries)
    return shift(beta, chi_min)


def _neighbors(quiver: Quiver, w: WeightAssignment, cv: tuple[str, Character]):
    """Covering vertices adjacent to cv in the underlying graph of Q(w)."""
    v, chi = cv
    out = []
    for a in quiver.arrows_from(v):
        out.append((a.target, char_add(chi, w.of(a))))
    for a in quiver.arrows_into(v):
        out.append((a.source, char_sub(chi, w.of(a))))
    return out


def is_connected(quiver: Quiver, w: WeightAssignment, beta: CoveringDimVector) -> bool:
    supp = set(beta.support_vertices())
    if not supp:
        return True
    todo = [next(iter(supp))]
    seen = {todo[0]}
    while todo:
        cv = todo.pop()
        for nb in _neighbors(quiver, w, cv):
            if nb in supp and nb not in seen:
                seen.add(nb)
                todo.append(nb)
    return seen == supp


@dataclass(frozen=True)
class SupportQuiver:
    """Finite full subquiver of Q(w) on the support of some beta."""

    quiver: Quiver
    dims: tuple[int, ...]
    covering_vertices: tuple  # (vertex, character) per support quiver vertex
    covering_arrows: tuple    # (arrow name of Q, character) per support quiver arrow
    base: Quiver

    def lift_stability(self, theta) -> tuple[int, ...]:
        """theta-hat: the base weight of the underlying Q-vertex, per vertex."""
        theta = check_vector(self.base, theta, "theta")
        return tuple(theta[self.base.vertex_index(v)] for v, _ in self.covering_vertices)


def _cv_name(v: str, chi: Character) -> str:
    return f"{v}@{','.join(str(c) for c in chi)}"


def support_quiver(quiver: Quiver, w: WeightAssignment, beta: CoveringDimVector) -> SupportQuiver:
    """The finite subquiver of Q(w) carrying beta, with beta as dimension vector."""
    if beta.is_zero():
        raise ValidationError("support quiver of the zero vector")
    supp = beta.support()
    keys = sorted(supp, key=lambda cv: (quiver.vertex_index(cv[0]), cv[1]))
    names = {cv: _cv_name(*cv) for cv in keys}
    arrows = []
    cov_arrows = []
    for v, chi in keys:
        for a in quiver.arrows_from(v):
            tgt = (a.target, char_add(chi, w.of(a)))
            if tgt in supp:
                arrows.append(Arrow(_cv_name(a.name, chi), names[(v, chi)], names[tgt]))
                cov_arrows.append((a.name, chi))
    sub = Quiver(tuple(names[cv] for cv in keys), tuple(arrows))
    dims = tuple(supp[cv] for cv in keys)
    return SupportQuiver(sub, dims, tuple(keys), tuple(cov_arrows), quiver)


def euler_form_covering(quiver: Quiver, w: WeightAssignment,
                        beta: CoveringDimVector, gamma: CoveringDimVector) -> int:
    """<beta, gamma> for the covering quiver, via the finite supports."""
    gsup = gamma.support()
    total = 0
    for (v, chi), m in beta.entries:
        total += m * gsup.get((v, chi), 0)
        for a in quiver.arrows_from(v):
            total -= m * gsup.get((a.target, char_add(chi, w.of(a))), 0)
    return total


def _compositions(total: int, parts: int):
    """All tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    for cuts in itertools.combinations(range(1, total), parts - 1):
        prev = 0
        out = []
        for c in list(cuts) + [total]:
            out.append(c - prev)
            prev = c
        yield tuple(out)


def _connected_supports(quiver: Quiver, w: WeightAssignment, d: tuple[int, ...], seed):
    """Connected covering-vertex sets containing `seed`, each yielded once.

    Per base vertex v at most d_v covering vertices are used.  The classic
    banned-candidate recursion guarantees each connected set appears exactly
    once per seed.
    """
    vidx = quiver.vertex_index
    results = []

    def counts_ok(cv, per_vertex):
        return per_vertex.get(cv[0], 0) < d[vidx(cv[0])]

    def rec(current: frozenset, banned: frozenset, per_vertex: dict):
        results.append(current)
        cands = sorted(
            {nb for cv in current for nb in _neighbors(quiver, w, cv)} - current - banned,
            key=lambda cv: (cv[1], vidx(cv[0])),
        )
        for k, cv in enumerate(cands):
            if not counts_ok(cv, per_vertex):
                continue
            pv = dict(per_vertex)
            pv[cv[0]] = pv.get(cv[0], 0) + 1
            rec(current | {cv}, banned | frozenset(cands[:k]), pv)

    rec(frozenset([seed]), frozenset(), {seed[0]: 1})
    return results


def enumerate_compatible(quiver: Quiver, w: WeightAssignment, d, theta,
                         use_existence_filter: bool = True) -> list[CoveringDimVector]:
    """All shift classes of covering dimension vectors compatible with d.

    Each emitted vector is in canonical form, projects to d, and has
    connected support (a disconnected support carries no stable lift since
    stable representations are indecomposable).  With the filter on, classes
    whose stable moduli on the support quiver is empty are discarded.
    """
    d = check_vector(quiver, d, "d", nonnegative=True)
    theta = check_vector(quiver, theta, "theta")
    if sum(d) == 0:
        raise ValidationError("d must be nonzero")
    zero = w.zero()

    supports = set()
    for v in quiver.vertices:
        if d[quiver.vertex_index(v)] == 0:
            continue
        for sup in _connected_supports(quiver, w, d, (v, zero)):
            if min(chi for _, chi in sup) != zero:
                continue  # shift of a support found from another seed
            per = {}
            for u, _ in sup:
                per[u] = per.get(u, 0) + 1
            if all(per.get(u, 0) == 0 if d[quiver.vertex_index(u)] == 0
                   else 1 <= per.get(u, 0) <= d[quiver.vertex_index(u)]
                   for u in quiver.vertices):
                supports.add(sup)

    classes: dict = {}
    for sup in sorted(supports, key=lambda s: sorted(s, key=lambda cv: (cv[1], cv[0]))):
        slots = {}
        for v, chi in sup:
            slots.setdefault(v, []).append((v, chi))
        for v in slots:
            slots[v].sort(key=lambda cv: cv[1])
        order = [v for v in quiver.vertices if v in slots]
        per_vertex_fills = [
            list(_compositions(d[quiver.vertex_index(v)], len(slots[v]))) for v in order
        ]
        for fill in itertools.product(*per_vertex_fills):
            assign = {}
            for v, parts in zip(order, fill):
                for cv, m in zip(slots[v], parts):
                    assign[cv] = m
            beta = canonicalize(CoveringDimVector.from_dict(w.rank, assign))
            classes[beta.entries] = beta

    out = sorted(classes.values(), key=lambda b: b.entries)
    if use_existence_filter:
        from . import existence

        kept = []
        seen_shapes: dict = {}
        for beta in out:
            if 1 - euler_form_covering(quiver, w, beta, beta) < 0:
                continue
            sq = support_quiver(quiver, w, beta)
            theta_hat = sq.lift_stability(theta)
            vidx = sq.quiver.vertex_index
            # many classes share the support shape up to renaming characters
            sig = (sq.dims, theta_hat,
                   tuple(sorted((vidx(a.source), vidx(a.target)) for a in sq.quiver.arrows)))
            if sig not in seen_shapes:
                seen_shapes[sig] = existence.has_stable(sq.quiver, sq.dims, theta_hat)
            if seen_shapes[sig]:
                kept.append(beta)
        out = kept
    return out
