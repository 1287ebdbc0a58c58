"""Nonemptiness of stable moduli, and a finite-field counting oracle.

Two independent routes to the same question:

* `has_stable` decides M^{theta-st}(Q, d) != {} for coprime d on an acyclic
  quiver through the generic-subdimension recursion (a generic subdimension
  e of d exists iff <e', d - e> >= 0 for every generic subdimension e' of e)
  combined with the slope criterion.
* `brute_force_stable_count` counts the F_q-points of the moduli space by
  enumerating all of R(Q, d)(F_q) and testing stability of every single
  representation, either by exhaustive subrepresentation search or, for the
  two-vertex shapes d = (2, 2r+1), by the image/span criterion.
"""

from __future__ import annotations

import itertools

import numpy as np

from .core import Quiver, check_vector, is_coprime, slope
from .errors import BudgetExceededError, InconsistencyError, UnsupportedError
from .finitefield import (
    batch_rank_ge,
    mat_decode,
    maps_into,
    pg_order,
    small_field,
    subspaces,
)

DEFAULT_BUDGET = 2**24


class SubdimMemo:
    """Per-quiver cache of generic subdimension sets, keyed by ambient d."""

    def __init__(self, quiver: Quiver):
        if not quiver.is_acyclic():
            raise UnsupportedError("generic subdimension recursion needs an acyclic quiver")
        self.quiver = quiver
        self.cache: dict = {}
        self._gs_by_box: dict = {}
        n = len(quiver.vertices)
        m = np.eye(n, dtype=np.int64)
        for a in quiver.arrows:
            m[quiver.vertex_index(a.source), quiver.vertex_index(a.target)] -= 1
        self._pairing = m  # <u, v> = u . (M v)

    def generic_subdimensions(self, d) -> list[tuple[int, ...]]:
        """All generic subdimension vectors of d, computed bottom-up over the box."""
        d = tuple(int(x) for x in d)
        if d in self._gs_by_box:
            return self._gs_by_box[d]
        box = sorted(itertools.product(*(range(x + 1) for x in d)), key=lambda t: (sum(t), t))
        index = {e: k for k, e in enumerate(box)}
        mimg = (self._pairing @ np.array(box, dtype=np.int64).T).T  # row k = M . box[k]
        gs_tuples: dict[tuple, list] = {}
        gs_arrays: dict[tuple, np.ndarray] = {}
        for e in box:
            members = [e]
            for ep in itertools.product(*(range(x + 1) for x in e)):
                if ep == e:
                    continue
                pair_vals = gs_arrays[ep] @ (mimg[index[e]] - mimg[index[ep]])
                if pair_vals.size == 0 or int(pair_vals.min()) >= 0:
                    members.append(ep)
            members.sort()
            gs_tuples[e] = members
            gs_arrays[e] = np.array(members, dtype=np.int64)
        for e, members in gs_tuples.items():
            for ep in members:
                self.cache[(ep, e)] = True
        self._gs_by_box[d] = gs_tuples[d]
        return gs_tuples[d]

    def is_generic_subdimension(self, e, d) -> bool:
        e = tuple(int(x) for x in e)
        d = tuple(int(x) for x in d)
        key = (e, d)
        if key not in self.cache:
            self.cache[key] = e in set(self.generic_subdimensions(d))
        return self.cache[key]


def is_generic_subdimension(quiver: Quiver, e, d, memo: SubdimMemo | None = None) -> bool:
    """Does the generic representation of dimension d contain a subrepresentation
    of dimension e?  Requires 0 <= e <= d componentwise and Q acyclic."""
    e = check_vector(quiver, e, "e", nonnegative=True)
    d = check_vector(quiver, d, "d", nonnegative=True)
    if any(a > b for a, b in zip(e, d)):
        raise UnsupportedError("e must be componentwise at most d")
    memo = memo or SubdimMemo(quiver)
    return memo.is_generic_subdimension(e, d)


def has_stable(quiver: Quiver, d, theta, memo: SubdimMemo | None = None) -> bool:
    """M^{theta-st}(Q, d) != {} for theta-coprime d on an acyclic quiver.

    Every proper nonzero generic subdimension must have slope at most mu(d);
    strict inequality is automatic under coprimality.
    """
    d = check_vector(quiver, d, "d", nonnegative=True)
    theta = check_vector(quiver, theta, "theta")
    if sum(d) == 0:
        raise UnsupportedError("d must be nonzero")
    if not is_coprime(quiver, d, theta):
        raise UnsupportedError("has_stable requires a theta-coprime dimension vector")
    memo = memo or SubdimMemo(quiver)
    mu = slope(theta, d)
    for e in memo.generic_subdimensions(d):
        if sum(e) == 0 or e == d:
            continue
        if slope(theta, e) > mu:
            return False
    return True


def _is_kronecker_shape(quiver: Quiver, d, theta) -> bool:
    """Two vertices, every arrow source -> sink, d = (2, odd), theta favoring the source."""
    if len(quiver.vertices) != 2:
        return False
    v0, v1 = quiver.vertices
    if not all(a.source == v0 and a.target == v1 for a in quiver.arrows):
        return False
    if d[0] != 2 or d[1] % 2 != 1 or d[1] < 1:
        return False
    return theta[0] > theta[1]


def _rep_radices(quiver: Quiver, d, q):
    idx = quiver.vertex_index
    return [q ** (d[idx(a.source)] * d[idx(a.target)]) for a in quiver.arrows]


def _count_stable_generic(quiver: Quiver, d, theta, q) -> int:
    """Mark every representation admitting a destabilizing invariant subspace
    tuple, then count the unmarked ones.

    The subspace tuples range over products of the full subspace lattices of
    the vertex spaces; for a fixed tuple the invariant representations form a
    product set across arrows, marked in one numpy fancy-index assignment.
    """
    idx = quiver.vertex_index
    radices = _rep_radices(quiver, d, q)
    flags = np.zeros(radices, dtype=bool)
    subs = [subspaces(d[idx(v)], q) for v in quiver.vertices]
    mu = slope(theta, d)

    shape_tables: dict = {}
    arrow_tables = []
    for a in quiver.arrows:
        si, ti = idx(a.source), idx(a.target)
        if (si, ti) not in shape_tables:
            rows, cols = d[ti], d[si]
            mats = [mat_decode(code, rows, cols, q) for code in range(q ** (rows * cols))]
            table = {}
            for us_i, us in enumerate(subs[si]):
                for ut_i, ut in enumerate(subs[ti]):
                    codes = [code for code, m in enumerate(mats)
                             if maps_into(m, us, ut, cols, q)]
                    table[(us_i, ut_i)] = np.array(codes, dtype=np.int64)
            shape_tables[(si, ti)] = table
        arrow_tables.append(shape_tables[(si, ti)])

    for tup in itertools.product(*(range(len(s)) for s in subs)):
        dims = tuple(subs[i][k].dim for i, k in enumerate(tup))
        if sum(dims) == 0 or dims == tuple(d):
            continue
        if slope(theta, dims) < mu:
            continue
        lists = [arrow_tables[ai][(tup[idx(a.source)], tup[idx(a.target)])]
                 for ai, a in enumerate(quiver.arrows)]
        flags[np.ix_(*lists)] = True
    return int(flags.size - int(flags.sum()))


def _count_stable_kronecker(quiver: Quiver, d, q) -> int:
    """Stable count for d = (2, 2r+1) on the multi-arrow two-vertex quiver:
    the images of all arrows must fill the sink and every nonzero source
    vector must have its arrow images span at least r+1 dimensions."""
    F = small_field(q)
    rows = d[1]
    r = (rows - 1) // 2
    n_arrows = len(quiver.arrows)
    radix = q ** (2 * rows)
    total = radix**n_arrows
    codes = np.arange(radix, dtype=np.int64)
    # entry (i, j) of every matrix code, j in {0, 1}; column-major encoding
    ent = [[(codes // (q ** (j * rows + i))) % q for j in range(2)] for i in range(rows)]
    ent = [[col.astype(np.uint8) for col in row] for row in ent]

    shape = (radix,) * n_arrows
    arrow_axis = []
    for ai in range(n_arrows):
        sl = [1] * n_arrows
        sl[ai] = radix
        arrow_axis.append(tuple(sl))

    def entry(ai, i, j):
        return ent[i][j].reshape(arrow_axis[ai])

    # (a) the stacked columns of all arrows have full rank `rows`
    stack_cols = []
    for ai in range(n_arrows):
        for j in range(2):
            stack_cols.append([entry(ai, i, j) for i in range(rows)])
    ok = batch_rank_ge(stack_cols, rows, F)

    # (b) for every nonzero x in F_q^2, the images A_a x span >= r+1 dims
    nonzero_x = [x for x in itertools.product(range(q), repeat=2) if x != (0, 0)]
    for x in nonzero_x:
        c0, c1 = x
        img_cols = []
        for ai in range(n_arrows):
            col = []
            for i in range(rows):
                v = F.add[F.mul[entry(ai, i, 0), c0], F.mul[entry(ai, i, 1), c1]]
                col.append(v)
            img_cols.append(col)
        ok = ok & batch_rank_ge(img_cols, r + 1, F)
    return int(ok.sum())


def brute_force_stable_count(quiver: Quiver, d, theta, q: int,
                             budget: int = DEFAULT_BUDGET,
                             method: str = "auto") -> int:
    """|M^theta(Q, d)(F_q)|: stable points of R(Q, d)(F_q) divided by |PG_d(F_q)|.

    `method` is one of auto / generic / kronecker.  The representation space
    must not exceed `budget` points.
    """
    d = check_vector(quiver, d, "d", nonnegative=True)
    theta = check_vector(quiver, theta, "theta")
    if q < 2 or q > 5:
        raise UnsupportedError("the oracle is restricted to prime powers q <= 5")
    small_field(q)  # validates q is a prime power
    if not is_coprime(quiver, d, theta):
        raise UnsupportedError("counting requires a theta-coprime dimension vector")
    size = 1
    for r in _rep_radices(quiver, d, q):
        size *= r
    if size > budget:
        raise BudgetExceededError(
            f"representation space has {size} points, budget is {budget}"
        )
    if method == "auto":
        method = "kronecker" if _is_kronecker_shape(quiver, d, theta) else "generic"
    if method == "kronecker":
        if not _is_kronecker_shape(quiver, d, theta):
            raise UnsupportedError("kronecker method needs the two-vertex (2, 2r+1) shape")
        stable = _count_stable_kronecker(quiver, d, q)
    elif method == "generic":
        stable = _count_stable_generic(quiver, d, theta, q)
    else:
        raise UnsupportedError(f"unknown counting method {method!r}")
    order = pg_order(d, q)
    if stable % order != 0:
        raise InconsistencyError(
            f"stable point count {stable} not divisible by |PG_d| = {order}"
        )
    return stable // order
