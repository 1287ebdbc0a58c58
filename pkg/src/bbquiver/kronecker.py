"""Closed forms for the multi-arrow two-vertex quiver with d = (2, 2r+1).

Fixed points of the weight regime w_1 >> ... >> w_{l+1} > 0 come in two
kinds, indexed by arrow labels.  Attractor dimensions are given by counting
index comparisons; a comparison between two weight SUMS w_p + w_q vs
w_u + w_v is decided lexicographically on the sorted index pairs, because a
smaller index means a strictly dominant weight.  (Where a plain min()
comparison of the index pairs would tie, the sorted-pair rule still decides
the sum correctly; the two rules differ exactly when both sides share their
smallest index.)
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .betti import PoincarePolynomial, kirwan_subspace_poincare
from .core import Quiver
from .covering import CoveringDimVector, WeightAssignment, canonicalize, generic_rank1_weights
from .errors import ValidationError


def kronecker_quiver(num_arrows: int) -> Quiver:
    """Two vertices i, j with `num_arrows` parallel arrows i -> j."""
    if num_arrows < 1:
        raise ValidationError("need at least one arrow")
    return Quiver.from_arrows(
        ("i", "j"), [(f"a{k}", "i", "j") for k in range(1, num_arrows + 1)]
    )


def _check_lr(l: int, r: int):
    if l < 1 or r < 0:
        raise ValidationError("need l >= 1 and r >= 0")
    if l < r:
        raise ValidationError(f"empty moduli: l = {l} < r = {r}")


@dataclass(frozen=True)
class Label1:
    """Isolated fixed points: star pairs (m, m_*) and (n, n_*).

    m_star avoids m, n_star avoids n, both strictly increasing, m < n.
    The complements (of size s = l - r each) are derived.
    """

    l: int
    r: int
    m: int
    m_star: tuple[int, ...]
    n: int
    n_star: tuple[int, ...]

    def __post_init__(self):
        rng = range(1, self.l + 2)
        if not (self.m in rng and self.n in rng and self.m < self.n):
            raise ValidationError("need 1 <= m < n <= l+1")
        for name, star, avoid in (("m_star", self.m_star, self.m), ("n_star", self.n_star, self.n)):
            if len(star) != self.r or list(star) != sorted(set(star)):
                raise ValidationError(f"{name} must be a strictly increasing {self.r}-tuple")
            if avoid in star or any(x not in rng for x in star):
                raise ValidationError(f"{name} out of range or hitting its excluded index")

    @property
    def s(self) -> int:
        return self.l - self.r

    @property
    def m_complement(self) -> tuple[int, ...]:
        used = {self.m, *self.m_star}
        return tuple(x for x in range(1, self.l + 2) if x not in used)

    @property
    def n_complement(self) -> tuple[int, ...]:
        used = {self.n, *self.n_star}
        return tuple(x for x in range(1, self.l + 2) if x not in used)

    def display(self) -> str:
        if self.l == 2 and self.r == 1:
            return f"{self.m_star[0]}{self.m}{self.n}{self.n_star[0]}"
        ms = ",".join(map(str, self.m_star))
        ns = ",".join(map(str, self.n_star))
        return f"m={self.m};m*=({ms});n={self.n};n*=({ns})"

    def key(self) -> dict:
        return {"kind": 1, "m": self.m, "m_star": list(self.m_star),
                "n": self.n, "n_star": list(self.n_star)}


@dataclass(frozen=True)
class Label2:
    """Positive-dimensional candidates: a weight-2 source over x single and
    y double sinks, x + 2y = 2r + 1."""

    l: int
    r: int
    y: int
    m_star: tuple[int, ...]
    n_star: tuple[int, ...]

    def __post_init__(self):
        rng = range(1, self.l + 2)
        x = self.x
        if x % 2 == 0 or x < 3:
            raise ValidationError("x = 2(r - y) + 1 must be odd and at least 3")
        if len(self.m_star) != x or list(self.m_star) != sorted(set(self.m_star)):
            raise ValidationError(f"m_star must be a strictly increasing {x}-tuple")
        if len(self.n_star) != self.y or list(self.n_star) != sorted(set(self.n_star)):
            raise ValidationError(f"n_star must be a strictly increasing {self.y}-tuple")
        if set(self.m_star) & set(self.n_star):
            raise ValidationError("m_star and n_star must be disjoint")
        if any(i not in rng for i in self.m_star + self.n_star):
            raise ValidationError("indices out of range")

    @property
    def x(self) -> int:
        return 2 * (self.r - self.y) + 1

    @property
    def t(self) -> int:
        return self.l + 1 - self.x - self.y

    @property
    def complement(self) -> tuple[int, ...]:
        used = set(self.m_star) | set(self.n_star)
        return tuple(i for i in range(1, self.l + 2) if i not in used)

    def display(self) -> str:
        ms = ",".join(map(str, self.m_star))
        ns = ",".join(map(str, self.n_star))
        return f"x={self.x};m*=({ms});n*=({ns})"

    def key(self) -> dict:
        return {"kind": 2, "y": self.y, "m_star": list(self.m_star),
                "n_star": list(self.n_star)}


def enumerate_type1(l: int, r: int) -> list[Label1]:
    _check_lr(l, r)
    out = []
    idx = range(1, l + 2)
    for m, n in itertools.combinations(idx, 2):
        for m_star in itertools.combinations([i for i in idx if i != m], r):
            for n_star in itertools.combinations([i for i in idx if i != n], r):
                out.append(Label1(l, r, m, m_star, n, n_star))
    return out


def enumerate_type2(l: int, r: int) -> list[Label2]:
    _check_lr(l, r)
    out = []
    idx = range(1, l + 2)
    for y in range(max(0, 2 * r - l), r):
        x = 2 * (r - y) + 1
        if x + y > l + 1:
            continue
        for m_star in itertools.combinations(idx, x):
            rest = [i for i in idx if i not in m_star]
            for n_star in itertools.combinations(rest, y):
                out.append(Label2(l, r, y, m_star, n_star))
    return out


def _sum_gt(pair_a, pair_b) -> bool:
    """w_{a0} + w_{a1} > w_{b0} + w_{b1} in the regime w_1 >> ... >> w_{l+1} > 0."""
    return sorted(pair_a) < sorted(pair_b)


def d1_attractor(label: Label1, sign: str = "plus") -> int:
    """Attractor dimension of an isolated (type-1) fixed point.

    Eight comparison counts minus one; `sign`="minus" reverses every
    comparison and gives the opposite attractor.
    """
    if sign not in ("plus", "minus"):
        raise ValidationError("sign must be 'plus' or 'minus'")
    flip = sign == "minus"

    def lt(a, b):
        return (a > b) if flip else (a < b)

    def sum_gt(pa, pb):
        return _sum_gt(pb, pa) if flip else _sum_gt(pa, pb)

    m, n = label.m, label.n
    ms, ns = label.m_star, label.n_star
    mc, nc = label.m_complement, label.n_complement
    total = -1
    total += sum(1 for mv in ms if lt(m, mv))
    total += sum(1 for nv in ns if lt(n, nv))
    total += sum(1 for mu in mc if lt(mu, m))
    total += sum(1 for nu in nc if lt(nu, n))
    total += sum(1 for mu in mc for mv in ms if lt(mu, mv))
    total += sum(1 for mu in mc for nv in ns if sum_gt((mu, n), (m, nv)))
    total += sum(1 for nu in nc for nv in ns if lt(nu, nv))
    total += sum(1 for nu in nc for mv in ms if sum_gt((nu, m), (n, mv)))
    if total < 0:
        raise ValidationError(f"negative attractor dimension for label {label.display()}")
    return total


def d2_attractor(label: Label2) -> int:
    """Attractor dimension over a type-2 component."""
    x, y = label.x, label.y
    ms, ns, c = label.m_star, label.n_star, label.complement
    total = math.comb(x, 2)
    total += 2 * sum(1 for mu in ms for nv in ns if mu < nv)
    total += 2 * sum(1 for cx in c for mu in ms if cx < mu)
    total += 4 * sum(1 for cx in c for nv in ns if cx < nv)
    return total


def label_to_beta(label: Label1 | Label2, w: WeightAssignment, quiver: Quiver | None = None) -> CoveringDimVector:
    """The covering dimension vector of a label, under rank-1 weights.

    Arrow k of the quiver carries weight w_k; the label indices refer to the
    declared arrow order (1-based).
    """
    if w.rank != 1:
        raise ValidationError("labels live under rank-1 weight regimes")
    quiver = quiver or kronecker_quiver(label.l + 1)
    wt = [w.of(a)[0] for a in quiver.arrows]

    def wk(k: int) -> int:
        return wt[k - 1]

    support: dict = {}

    def put(v, c, mult=1):
        key = (v, (c,))
        support[key] = support.get(key, 0) + mult

    if isinstance(label, Label1):
        put("i", -wk(label.m))
        put("i", -wk(label.n))
        put("j", 0)
        for mv in label.m_star:
            put("j", wk(mv) - wk(label.m))
        for nv in label.n_star:
            put("j", wk(nv) - wk(label.n))
    else:
        put("i", 0, 2)
        for mu in label.m_star:
            put("j", wk(mu))
        for nv in label.n_star:
            put("j", wk(nv), 2)
    return canonicalize(CoveringDimVector.from_dict(1, support))


def normal_form_label(l: int, r: int) -> Label1:
    """The unique type-1 label whose minus-attractor vanishes, hence whose
    plus-attractor chart is the dense open cell of dimension
    (2s+1)(2r+1) - 3."""
    _check_lr(l, r)
    s = l - r
    m = s + 1
    m_star = tuple(range(s + 2, l + 2))
    n = s + 2
    n_star = tuple([s + 1] + list(range(s + 3, l + 2)))
    return Label1(l, r, m, m_star, n, n_star)


def kronecker_poincare(l: int, r: int) -> PoincarePolynomial:
    """Poincare polynomial of the moduli space for d = (2, 2r+1), assembled
    from the closed-form attractor dimensions."""
    _check_lr(l, r)
    total = PoincarePolynomial(())
    for lab in enumerate_type1(l, r):
        total = total + PoincarePolynomial(((2 * d1_attractor(lab, "plus"), 1),))
    for lab in enumerate_type2(l, r):
        total = total + kirwan_subspace_poincare(lab.x).shift(d2_attractor(lab))
    return total


def generic_kronecker_weights(l: int) -> WeightAssignment:
    return generic_rank1_weights(kronecker_quiver(l + 1))


def _form_mul(f, g):
    out = [Fraction(0)] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] += a * b
    return out


def _form_det(entries):
    """Determinant of a square matrix of linear binary forms, as a binary form.

    Each entry is a coefficient pair (c1, c2) for c1*x1 + c2*x2; a binary
    form of degree d is the coefficient list of x1^k x2^(d-k), k = 0..d.
    """
    k = len(entries)
    if k == 0:
        return [Fraction(1)]
    if k == 1:
        c1, c2 = entries[0][0]
        return [Fraction(c2), Fraction(c1)]
    total = [Fraction(0)] * (k + 1)
    for col in range(k):
        c1, c2 = entries[0][col]
        minor = [[entries[r][c] for c in range(k) if c != col] for r in range(1, k)]
        sub = _form_det(minor)
        term = _form_mul([Fraction(c2), Fraction(c1)], sub)
        sign = 1 if col % 2 == 0 else -1
        for i, x in enumerate(term):
            total[i] += sign * x
    return total


def _poly_gcd(p, q):
    """gcd of univariate rational polynomials given as coefficient lists."""

    def trim(f):
        while f and f[-1] == 0:
            f.pop()
        return f

    p, q = trim(list(p)), trim(list(q))
    while q:
        r = list(p)
        while True:
            trim(r)
            if len(r) < len(q):
                break
            coef = r[-1] / q[-1]
            off = len(r) - len(q)
            for i, x in enumerate(q):
                r[off + i] -= coef * x
        p, q = q, r
    return p


def kronecker_stable_exact(matrices, r: int | None = None) -> bool:
    """Stability of a tuple of (2r+1) x 2 rational matrices: the images must
    jointly fill the target and every nonzero column vector x must have
    arrow images spanning at least r+1 dimensions.

    The second condition is checked over the algebraic closure: the size
    r+1 minors of [A_1 x | ... | A_{l+1} x] are binary forms in x, and a bad
    x exists iff they share a projective root (a nonconstant gcd, or a
    common root at infinity).
    """
    from .linalg import rank as _rank

    mats = [[[Fraction(x) for x in row] for row in m] for m in matrices]
    rows = len(mats[0])
    if any(len(m) != rows or any(len(row) != 2 for row in m) for m in mats):
        raise ValidationError("expected matrices with two columns and equal heights")
    if r is None:
        if rows % 2 == 0:
            raise ValidationError("target dimension must be odd")
        r = (rows - 1) // 2
    stacked = [sum((m[i] for m in mats), []) for i in range(rows)]
    if _rank(stacked) != rows:
        return False
    # columns of B(x): entry (i, t) is the linear form A_t[i][0] x1 + A_t[i][1] x2
    n_cols = len(mats)
    if r + 1 > min(rows, n_cols):
        return False
    forms = []
    for rset in itertools.combinations(range(rows), r + 1):
        for tset in itertools.combinations(range(n_cols), r + 1):
            entries = [[(mats[t][i][0], mats[t][i][1]) for t in tset] for i in rset]
            f = _form_det(entries)
            if any(x != 0 for x in f):
                forms.append(f)
    if not forms:
        return False  # rank below r+1 for every x
    if all(f[-1] == 0 for f in forms):
        return False  # common root at x = (1, 0)
    g = []
    for f in forms:
        g = _poly_gcd(g, f) if g else [x for x in f]
        while g and g[-1] == 0:
            g = g[:-1]
        if len(g) == 1:
            return True  # coprime already
    return len(g) <= 1
