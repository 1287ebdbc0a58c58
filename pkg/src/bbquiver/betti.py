"""Poincare polynomials: per-component providers and global assembly.

Cohomology of the moduli spaces in scope is concentrated in even degrees,
so polynomials live in t^2; point counts over F_q are then polynomial in q
and the interpolation oracle can recover Betti numbers from counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .core import Quiver
from .covering import WeightAssignment, support_quiver
from .errors import (
    BudgetExceededError,
    InconsistencyError,
    PartialResultError,
    ValidationError,
)
from .fixedpoints import FixedComponent

UNKNOWN = None  # returned by component providers for out-of-reach components


@dataclass(frozen=True)
class PoincarePolynomial:
    """Integer polynomial in t with only even-degree terms."""

    coefficients: tuple  # tuple of (degree, coefficient), sorted, coefficient > 0

    def __post_init__(self):
        merged: dict = {}
        for deg, c in self.coefficients:
            deg, c = int(deg), int(c)
            if deg < 0 or deg % 2 != 0:
                raise ValidationError(f"degree {deg} is not even and nonnegative")
            merged[deg] = merged.get(deg, 0) + c
        fixed = []
        for deg in sorted(merged):
            c = merged[deg]
            if c == 0:
                continue
            if c < 0:
                raise ValidationError(f"negative coefficient {c} at degree {deg}")
            fixed.append((deg, c))
        object.__setattr__(self, "coefficients", tuple(fixed))

    @classmethod
    def from_dict(cls, coeffs: dict) -> "PoincarePolynomial":
        return cls(tuple(coeffs.items()))

    @classmethod
    def one(cls) -> "PoincarePolynomial":
        return cls(((0, 1),))

    @classmethod
    def from_cell_dimensions(cls, dims) -> "PoincarePolynomial":
        out: dict = {}
        for k in dims:
            out[2 * k] = out.get(2 * k, 0) + 1
        return cls.from_dict(out)

    def as_dict(self) -> dict:
        return dict(self.coefficients)

    def coefficient(self, degree: int) -> int:
        return self.as_dict().get(degree, 0)

    def degree(self) -> int:
        return self.coefficients[-1][0] if self.coefficients else 0

    def shift(self, cell_dim: int) -> "PoincarePolynomial":
        """Multiply by t^(2 * cell_dim)."""
        return PoincarePolynomial(tuple((d + 2 * cell_dim, c) for d, c in self.coefficients))

    def __add__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out = self.as_dict()
        for d, c in other.coefficients:
            out[d] = out.get(d, 0) + c
        return PoincarePolynomial.from_dict(out)

    def __mul__(self, other: "PoincarePolynomial") -> "PoincarePolynomial":
        out: dict = {}
        for d1, c1 in self.coefficients:
            for d2, c2 in other.coefficients:
                out[d1 + d2] = out.get(d1 + d2, 0) + c1 * c2
        return PoincarePolynomial.from_dict(out)

    def evaluate(self, t: int) -> int:
        return sum(c * t**d for d, c in self.coefficients)

    def evaluate_q(self, q: int) -> int:
        """Value after the substitution t^2 -> q (the point-count specialization)."""
        return sum(c * q ** (d // 2) for d, c in self.coefficients)

    def is_palindromic(self, dim: int) -> bool:
        """Poincare duality t^(2 dim) P(1/t) = P(t)."""
        coeffs = self.as_dict()
        degrees = set(coeffs) | {2 * dim - d for d in coeffs}
        return all(coeffs.get(d, 0) == coeffs.get(2 * dim - d, 0) for d in degrees)

    def text(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for d, c in self.coefficients:
            if d == 0:
                parts.append(str(c))
            else:
                term = f"t^{d}" if d > 1 else "t"
                parts.append(term if c == 1 else f"{c}{term}")
        return " + ".join(parts)

    def latex(self) -> str:
        if not self.coefficients:
            return "0"
        parts = []
        for d, c in self.coefficients:
            if d == 0:
                parts.append(str(c))
            else:
                term = f"t^{{{d}}}"
                parts.append(term if c == 1 else f"{c} {term}")
        return " + ".join(parts)

    def coefficient_list(self) -> list[int]:
        out = [0] * (self.degree() + 1)
        for d, c in self.coefficients:
            out[d] = c
        return out

    def __str__(self) -> str:
        return self.text()


def kirwan_subspace_poincare(x: int) -> PoincarePolynomial:
    """Betti numbers of stable configurations of x points on the line modulo
    the projective group: b_j = 1 + sum_{nu=1}^{min(j, x-3-j)} binom(x-1, j),
    for j = 0 .. x-3.  Implemented verbatim, including the summand that does
    not depend on nu."""
    if x < 3 or x % 2 == 0:
        raise ValidationError("the subspace-star count x must be odd and at least 3")
    coeffs = {}
    for j in range(x - 2):
        reps = min(j, x - 3 - j)
        coeffs[2 * j] = 1 + max(reps, 0) * math.comb(x - 1, j)
    return PoincarePolynomial.from_dict(coeffs)


def _star_leaf_count(quiver: Quiver, dims) -> int | None:
    """If the quiver is a star with a dimension-2 center, single arrows
    between center and leaves, and leaves of dimension 1 or 2, return the
    number of dimension-1 leaves; otherwise None.  Dimension-2 leaves carry
    an isomorphism generically and split off."""
    n = len(quiver.vertices)
    if n < 2:
        return None
    degree = {v: 0 for v in quiver.vertices}
    for a in quiver.arrows:
        if a.source == a.target:
            return None
        degree[a.source] += 1
        degree[a.target] += 1
    centers = [v for v in quiver.vertices if degree[v] == n - 1]
    if len(centers) != 1 or len(quiver.arrows) != n - 1:
        return None
    center = centers[0]
    if dims[quiver.vertex_index(center)] != 2:
        return None
    for a in quiver.arrows:
        if center not in (a.source, a.target):
            return None
    if any(degree[v] != 1 for v in quiver.vertices if v != center):
        return None
    x = 0
    for v in quiver.vertices:
        if v == center:
            continue
        dv = dims[quiver.vertex_index(v)]
        if dv == 1:
            x += 1
        elif dv != 2:
            return None
    return x


def component_poincare(quiver: Quiver, w: WeightAssignment, theta,
                       component: FixedComponent,
                       budget: int = 2**24,
                       field_sizes=(2, 3, 4, 5)):
    """Poincare polynomial of one fixed-point component, or UNKNOWN.

    Provider chain: isolated components are points; subspace-star supports
    use the closed Betti formula; anything else small enough goes through
    finite-field counting and interpolation.
    """
    if component.isolated and component.dim_component == 0:
        return PoincarePolynomial.one()
    sq = support_quiver(quiver, w, component.beta)
    x = _star_leaf_count(sq.quiver, sq.dims)
    if x is not None and x >= 3 and x % 2 == 1 and component.dim_component == x - 3:
        return kirwan_subspace_poincare(x)
    # interpolation oracle
    from .existence import brute_force_stable_count

    needed = component.dim_component + 1
    theta_hat = sq.lift_stability(theta)
    counts = []
    for q in field_sizes:
        try:
            counts.append((q, brute_force_stable_count(sq.quiver, sq.dims, theta_hat, q,
                                                       budget=budget)))
        except BudgetExceededError:
            continue
        if len(counts) >= needed:
            break
    if len(counts) < needed:
        return UNKNOWN
    return interpolate_from_counts(counts, component.dim_component)


def assemble_poincare(components) -> PoincarePolynomial:
    """Sum over components of t^(2 att_plus) times the component polynomial.

    `components` is an iterable of (FixedComponent, PoincarePolynomial or
    UNKNOWN); any UNKNOWN poisons the assembly.
    """
    components = list(components)
    offenders = [comp for comp, poly in components if poly is UNKNOWN]
    if offenders:
        raise PartialResultError(
            f"{len(offenders)} component(s) have unknown Poincare polynomials",
            offenders=offenders,
        )
    total = PoincarePolynomial(())
    for comp, poly in components:
        total = total + poly.shift(comp.att_plus)
    return total


def interpolate_from_counts(counts, dim: int) -> PoincarePolynomial:
    """The unique integer polynomial of degree <= dim through the counts,
    re-expressed in t with q = t^2.

    Extra counts beyond dim + 1 are used as consistency checks.  Rejects
    non-integer or negative coefficients.
    """
    pts = sorted(counts)
    if len({q for q, _ in pts}) != len(pts):
        raise ValidationError("duplicate field sizes in counts")
    if len(pts) < dim + 1:
        raise ValidationError(f"need at least {dim + 1} counts, got {len(pts)}")
    base, extra = pts[: dim + 1], pts[dim + 1:]
    # Lagrange interpolation over the rationals
    coeffs = [Fraction(0)] * (dim + 1)
    for qi, ci in base:
        num = [Fraction(1)]
        den = Fraction(1)
        for qj, _ in base:
            if qj == qi:
                continue
            num = _poly_mul(num, [Fraction(-qj), Fraction(1)])
            den *= Fraction(qi - qj)
        scale = Fraction(ci) / den
        for k, x in enumerate(num):
            coeffs[k] += scale * x
    out = {}
    for k, c in enumerate(coeffs):
        if c.denominator != 1:
            raise InconsistencyError(f"non-integer interpolated coefficient {c} at q^{k}")
        if c < 0:
            raise InconsistencyError(f"negative interpolated coefficient {c} at q^{k}")
        if c:
            out[2 * k] = int(c)
    poly = PoincarePolynomial.from_dict(out)
    for q, c in extra:
        if poly.evaluate_q(q) != c:
            raise InconsistencyError(
                f"count at q={q} is {c}, interpolant predicts {poly.evaluate_q(q)}"
            )
    return poly


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out
