"""Concrete fixed representations and explicit attractor cell charts.

A rank-one fixed point is realized as a graded representation: vertex
spaces split into integer levels, arrow maps respect levels shifted by the
arrow weight.  Around such a point M the attractor is parametrized by
{M} + sum over degrees k > 0 of a complement of the bracket image
[u_k, M] inside

    R_k = sum_{a: i->j} sum_n Hom(V_{i,n}, V_{j, n + w_a - k}),
    u_k = sum_i sum_n Hom(V_{i,n}, V_{i, n-k}),

with the bracket sending x to (x_j M_{a,n} - M_{a,n-k} x_i).  Complements
are chosen as coordinate complements by echelon pivoting in a fixed basis
order, so a chart is literally a star-pattern over the matrix entries;
which entries carry the stars is implementation-canonical, only their
number is intrinsic.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .core import Arrow, Quiver, check_vector
from .covering import (
    CoveringDimVector,
    WeightAssignment,
    shift as shift_covering,
)
from .errors import InconsistencyError, UnsupportedError, ValidationError
from .linalg import column_space_pivots, rank, row_space_contains, solve, zeros


def _freeze_matrix(m, rows, cols, what="matrix"):
    out = []
    if rows and cols:
        if len(m) != rows or any(len(r) != cols for r in m):
            raise ValidationError(f"{what} has wrong shape, expected {rows}x{cols}")
    out = tuple(tuple(Fraction(x) for x in row) for row in m)
    return out


@dataclass(frozen=True)
class Representation:
    """A representation of a finite quiver with exact rational matrices."""

    quiver: Quiver
    dims: tuple[int, ...]
    matrices: dict

    def __post_init__(self):
        dims = check_vector(self.quiver, self.dims, "dims", nonnegative=True)
        object.__setattr__(self, "dims", dims)
        idx = self.quiver.vertex_index
        fixed = {}
        for a in self.quiver.arrows:
            rows, cols = dims[idx(a.target)], dims[idx(a.source)]
            m = self.matrices.get(a.name)
            if m is None:
                m = tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))
            fixed[a.name] = _freeze_matrix(m, rows, cols, f"matrix of arrow {a.name}")
        object.__setattr__(self, "matrices", fixed)

    def matrix(self, arrow_name: str):
        return self.matrices[arrow_name]

    def dim(self, v: str) -> int:
        return self.dims[self.quiver.vertex_index(v)]


def hom_ext(M: Representation, N: Representation) -> tuple[int, int]:
    """(dim Hom, dim Ext^1) between representations of the same quiver.

    Computed as nullity and corank of the map sending a vertex-wise tuple
    (A_i) to (A_{t(a)} M_a - N_a A_{s(a)})_a, which resolves Hom and Ext^1
    for path algebras.
    """
    if M.quiver is not N.quiver and M.quiver != N.quiver:
        raise ValidationError("hom_ext needs representations of one common quiver")
    Q = M.quiver
    idx = Q.vertex_index
    dom_coords = []
    for v in Q.vertices:
        for r in range(N.dim(v)):
            for c in range(M.dim(v)):
                dom_coords.append((v, r, c))
    cod_coords = []
    cod_offset = {}
    for a in Q.arrows:
        cod_offset[a.name] = len(cod_coords)
        for r in range(N.dim(a.target)):
            for c in range(M.dim(a.source)):
                cod_coords.append((a.name, r, c))
    phi = zeros(len(cod_coords), len(dom_coords))
    for col, (v, r, c) in enumerate(dom_coords):
        for a in Q.arrows:
            if a.target == v:
                # (E_{rc} . M_a)[r, c'] = M_a[c][c']
                ma = M.matrix(a.name)
                base = cod_offset[a.name]
                for cp in range(M.dim(a.source)):
                    phi[base + r * M.dim(a.source) + cp][col] += ma[c][cp]
            if a.source == v:
                # (N_a . E_{rc})[r', c] = N_a[r'][r]
                na = N.matrix(a.name)
                base = cod_offset[a.name]
                for rp in range(N.dim(a.target)):
                    phi[base + rp * M.dim(a.source) + c][col] -= na[rp][r]
    rk = rank(phi)
    return len(dom_coords) - rk, len(cod_coords) - rk


def _cv_name(v: str, chi) -> str:
    return f"{v}@{','.join(str(c) for c in chi)}"


@dataclass(frozen=True)
class GradedRep:
    """Level-graded representation realizing a rank-one covering class.

    `blocks[(arrow, n)]` is the map V_{s(a), n} -> V_{t(a), n + w_a}; only
    blocks with both endpoint levels populated are stored.
    """

    quiver: Quiver
    weights: WeightAssignment
    beta: CoveringDimVector
    blocks: dict

    def __post_init__(self):
        if self.weights.rank != 1:
            raise UnsupportedError("graded representations live under rank-1 actions")
        fixed = {}
        for (name, n), m in self.blocks.items():
            a = self.quiver.arrow(name)
            rows = self.dim(a.target, n + self.weight(name))
            cols = self.dim(a.source, n)
            if rows == 0 or cols == 0:
                continue
            fixed[(name, int(n))] = _freeze_matrix(m, rows, cols, f"block ({name}, {n})")
        object.__setattr__(self, "blocks", fixed)

    def weight(self, arrow_name: str) -> int:
        return self.weights.of(arrow_name)[0]

    def dim(self, v: str, n: int) -> int:
        return self.beta.get(v, (n,))

    def levels(self, v: str) -> list[int]:
        return sorted({chi[0] for (u, chi), _ in self.beta.entries if u == v})

    def block(self, arrow_name: str, n: int):
        a = self.quiver.arrow(arrow_name)
        rows = self.dim(a.target, n + self.weight(arrow_name))
        cols = self.dim(a.source, n)
        got = self.blocks.get((arrow_name, n))
        if got is not None:
            return got
        return tuple(tuple(Fraction(0) for _ in range(cols)) for _ in range(rows))

    def shift(self, c: int) -> "GradedRep":
        """The translated representation whose level xi holds the old level xi + c."""
        return GradedRep(
            self.quiver,
            self.weights,
            shift_covering(self.beta, (c,)),
            {(name, n - c): m for (name, n), m in self.blocks.items()},
        )

    def level_offsets(self, v: str) -> dict:
        """Start index of each level inside the assembled plain vertex space."""
        out = {}
        acc = 0
        for n in self.levels(v):
            out[n] = acc
            acc += self.dim(v, n)
        return out

    def plain(self) -> Representation:
        """Forget the grading: one representation of the base quiver, with
        vertex bases ordered by ascending level."""
        from .covering import project

        dims = project(self.beta, self.quiver)
        mats = {}
        for a in self.quiver.arrows:
            rows = dims[self.quiver.vertex_index(a.target)]
            cols = dims[self.quiver.vertex_index(a.source)]
            m = [[Fraction(0)] * cols for _ in range(rows)]
            s_off = self.level_offsets(a.source)
            t_off = self.level_offsets(a.target)
            for n in self.levels(a.source):
                tgt = n + self.weight(a.name)
                if self.dim(a.target, tgt) == 0:
                    continue
                blk = self.block(a.name, n)
                for r in range(len(blk)):
                    for c in range(len(blk[0]) if blk else 0):
                        m[t_off[tgt] + r][s_off[n] + c] = blk[r][c]
            mats[a.name] = m
        return Representation(self.quiver, dims, mats)


def covering_union_rep(M: GradedRep, N: GradedRep):
    """Both graded reps as plain representations of one finite slice of the
    covering quiver (the full subquiver on the union of their supports)."""
    if M.quiver != N.quiver or M.weights != N.weights:
        raise ValidationError("graded representations live over different coverings")
    Q, w = M.quiver, M.weights
    cvs = sorted(
        {cv for cv, _ in M.beta.entries} | {cv for cv, _ in N.beta.entries},
        key=lambda cv: (Q.vertex_index(cv[0]), cv[1]),
    )
    names = {cv: _cv_name(*cv) for cv in cvs}
    cv_set = set(cvs)
    arrows = []
    arrow_src = []
    for v, chi in cvs:
        for a in Q.arrows_from(v):
            tgt = (a.target, (chi[0] + w.of(a)[0],))
            if tgt in cv_set:
                arrows.append(Arrow(_cv_name(a.name, chi), names[(v, chi)], names[tgt]))
                arrow_src.append((a.name, chi[0]))
    sub = Quiver(tuple(names[cv] for cv in cvs), tuple(arrows))

    def make(rep: GradedRep) -> Representation:
        dims = tuple(rep.beta.get(v, chi) for v, chi in cvs)
        mats = {}
        for arr, (aname, n) in zip(arrows, arrow_src):
            mats[arr.name] = rep.block(aname, n)
        return Representation(sub, dims, mats)

    return sub, make(M), make(N)


def covering_hom_ext(M: GradedRep, N: GradedRep) -> tuple[int, int]:
    _, rm, rn = covering_union_rep(M, N)
    return hom_ext(rm, rn)


def is_schur(rep: GradedRep) -> bool:
    hom, _ = covering_hom_ext(rep, rep)
    return hom == 1


def build_fixed_rep(quiver: Quiver, w: WeightAssignment, beta: CoveringDimVector,
                    strategy: str = "unit", seed: int = 0, retries: int = 5) -> GradedRep:
    """A certified representative of the fixed point of class beta.

    beta must already have passed the existence filter.  Certification is
    dim End = 1, plus rigidity (Ext^1 = 0) when beta is a real root; the
    unit strategy fills each block with a 0/1 partial identity, the random
    strategy draws small integer entries from the given seed and retries on
    certification failure.
    """
    from .covering import euler_form_covering

    if w.rank != 1:
        raise UnsupportedError("fixed representations are built for rank-1 actions")
    if strategy not in ("unit", "random"):
        raise ValidationError("strategy must be 'unit' or 'random'")
    real_root = euler_form_covering(quiver, w, beta, beta) == 1
    attempts = retries if strategy == "random" else 1
    for attempt in range(max(attempts, 1)):
        rng = random.Random(seed + attempt)
        blocks = {}
        for (v, chi), cols in beta.entries:
            for a in quiver.arrows_from(v):
                n = chi[0]
                rows = beta.get(a.target, (n + w.of(a)[0],))
                if rows == 0:
                    continue
                if strategy == "unit":
                    m = [[Fraction(1 if r == c else 0) for c in range(cols)] for r in range(rows)]
                else:
                    m = [[Fraction(rng.randint(-9, 9)) for _ in range(cols)] for r in range(rows)]
                blocks[(a.name, n)] = m
        rep = GradedRep(quiver, w, beta, blocks)
        hom, ext = covering_hom_ext(rep, rep)
        if hom == 1 and (not real_root or ext == 0):
            return rep
    if strategy == "unit":
        raise UnsupportedError(
            "unit lift failed certification (End too large); retry with strategy='random'"
        )
    raise InconsistencyError(
        f"no certified lift found for beta after {attempts} random attempts"
    )


def _degree_candidates(rep: GradedRep) -> list[int]:
    ks = set()
    for v in rep.quiver.vertices:
        lv = rep.levels(v)
        for n in lv:
            for m in lv:
                if n - m > 0:
                    ks.add(n - m)
    for a in rep.quiver.arrows:
        wa = rep.weight(a.name)
        for n in rep.levels(a.source):
            for m in rep.levels(a.target):
                if n + wa - m > 0:
                    ks.add(n + wa - m)
    return sorted(ks)


def graded_pieces(rep: GradedRep, k: int):
    """Bases of u_k and R_k plus the exact matrix of the bracket x -> [x, M]
    restricted to degree k.

    Coordinates are ordered by declaration order (vertices for u, arrows for
    R), then ascending level, then row-major within each block.
    """
    if k <= 0:
        raise ValidationError("graded pieces are indexed by positive degrees")
    u_basis = []
    for v in rep.quiver.vertices:
        for n in rep.levels(v):
            rows, cols = rep.dim(v, n - k), rep.dim(v, n)
            for r in range(rows):
                for c in range(cols):
                    u_basis.append((v, n, r, c))
    r_basis = []
    r_index = {}
    for a in rep.quiver.arrows:
        wa = rep.weight(a.name)
        for n in rep.levels(a.source):
            rows, cols = rep.dim(a.target, n + wa - k), rep.dim(a.source, n)
            for r in range(rows):
                for c in range(cols):
                    r_index[(a.name, n, r, c)] = len(r_basis)
                    r_basis.append((a.name, n, r, c))
    ad = zeros(len(r_basis), len(u_basis))
    for col, (v, n0, r, c) in enumerate(u_basis):
        for a in rep.quiver.arrows:
            wa = rep.weight(a.name)
            if a.target == v:
                n = n0 - wa
                blk = rep.block(a.name, n)
                cols_src = rep.dim(a.source, n)
                # x_{t} composed with M_{a,n}: row r of the x-block picks row c of M
                for cp in range(cols_src):
                    key = (a.name, n, r, cp)
                    if key in r_index and blk:
                        ad[r_index[key]][col] += blk[c][cp]
            if a.source == v:
                blk = rep.block(a.name, n0 - k)
                rows_tgt = rep.dim(a.target, n0 + wa - k)
                # M_{a, n0-k} composed with x_{s}
                for rp in range(rows_tgt):
                    key = (a.name, n0, rp, c)
                    if key in r_index and blk:
                        ad[r_index[key]][col] -= blk[rp][r]
    return u_basis, r_basis, ad


@dataclass(frozen=True)
class DegreeData:
    degree: int
    u_basis: tuple
    r_basis: tuple
    complement: tuple  # indices into r_basis


@dataclass(frozen=True)
class CellChart:
    """Coordinates of the plus-attractor cell around a fixed representation."""

    base: GradedRep
    degrees: tuple  # DegreeData per positive degree with nonzero spaces

    @property
    def total_dim(self) -> int:
        return sum(len(d.complement) for d in self.degrees)

    def free_coordinates(self) -> list[tuple]:
        """(arrow, source level, row, col, degree) for every free entry."""
        out = []
        for d in self.degrees:
            for i in d.complement:
                a, n, r, c = d.r_basis[i]
                out.append((a, n, r, c, d.degree))
        return out

    def sample_point(self, values) -> Representation:
        """The plain representation {M} + sum values[c] * (free coordinate c).

        `values` is a sequence of rationals, one per free coordinate, in the
        order of free_coordinates().
        """
        coords = self.free_coordinates()
        values = [Fraction(v) for v in values]
        if len(values) != len(coords):
            raise ValidationError(f"need {len(coords)} coordinate values")
        plain = self.base.plain()
        mats = {a: [list(row) for row in plain.matrix(a)] for a in plain.matrices}
        for (a, n, r, c, k), val in zip(coords, values):
            arrow = self.base.quiver.arrow(a)
            wa = self.base.weight(a)
            t_off = self.base.level_offsets(arrow.target)
            s_off = self.base.level_offsets(arrow.source)
            mats[a][t_off[n + wa - k] + r][s_off[n] + c] += val
        return Representation(plain.quiver, plain.dims, mats)


def choose_complements(rep: GradedRep) -> CellChart:
    """Row-echelon the bracket image in every positive degree and keep the
    non-pivot standard coordinates of R_k as the chart's free directions.

    Raises when the bracket is not injective in some degree, which would
    contradict freeness of the unipotent action at a genuine fixed point.
    """
    degrees = []
    for k in _degree_candidates(rep):
        u_b, r_b, ad = graded_pieces(rep, k)
        if not u_b and not r_b:
            continue
        pivots = column_space_pivots(ad)
        if len(pivots) != len(u_b):
            raise InconsistencyError(
                f"bracket with the fixed representation is not injective in degree {k}"
            )
        complement = tuple(i for i in range(len(r_b)) if i not in set(pivots))
        degrees.append(DegreeData(k, tuple(u_b), tuple(r_b), complement))
    return CellChart(rep, tuple(degrees))


def emit_cell_table(chart: CellChart) -> "CellTable":
    """Symbol matrices per arrow: fixed entries of M on their level diagonal,
    structural zeros above, and '*' on the chosen free coordinates below."""
    base = chart.base
    free = set(chart.free_coordinates())
    tables = {}
    for a in base.quiver.arrows:
        wa = base.weight(a.name)
        s_levels = base.levels(a.source)
        t_levels = base.levels(a.target)
        s_off = base.level_offsets(a.source)
        t_off = base.level_offsets(a.target)
        rows = sum(base.dim(a.target, m) for m in t_levels)
        cols = sum(base.dim(a.source, n) for n in s_levels)
        grid = [["0"] * cols for _ in range(rows)]
        for n in s_levels:
            for m in t_levels:
                blk_rows = base.dim(a.target, m)
                blk_cols = base.dim(a.source, n)
                for r in range(blk_rows):
                    for c in range(blk_cols):
                        gr_, gc = t_off[m] + r, s_off[n] + c
                        if m == n + wa:
                            grid[gr_][gc] = str(base.block(a.name, n)[r][c])
                        elif m < n + wa:
                            if (a.name, n, r, c, n + wa - m) in free:
                                grid[gr_][gc] = "*"
                        # m > n + wa stays a structural zero
        tables[a.name] = grid
    return CellTable(chart, tables)


@dataclass(frozen=True)
class CellTable:
    chart: CellChart
    patterns: dict

    def star_count(self) -> int:
        return sum(row.count("*") for grid in self.patterns.values() for row in grid)

    def text(self) -> str:
        parts = []
        for name in (a.name for a in self.chart.base.quiver.arrows):
            grid = self.patterns[name]
            width = max((len(x) for row in grid for x in row), default=1)
            lines = ["  ".join(x.rjust(width) for x in row) for row in grid]
            parts.append(f"{name}:\n" + "\n".join("  " + ln for ln in lines))
        return "\n".join(parts)

    def latex(self) -> str:
        mats = []
        for name in (a.name for a in self.chart.base.quiver.arrows):
            grid = self.patterns[name]
            body = r" \\ ".join(" & ".join(x.replace("*", r"\ast") for x in row) for row in grid)
            mats.append(r"\begin{pmatrix} " + body + r" \end{pmatrix}")
        return r",\; ".join(mats)

    def to_jsonable(self) -> dict:
        return {
            "dimension": self.chart.total_dim,
            "patterns": {name: [list(row) for row in grid]
                         for name, grid in self.patterns.items()},
        }


def standard_filtration(rep: GradedRep) -> dict:
    """F_{i,n} = sum of the level spaces up to n, in plain coordinates."""
    out = {}
    for v in rep.quiver.vertices:
        levels = rep.levels(v)
        if not levels:
            continue
        offs = rep.level_offsets(v)
        total = sum(rep.dim(v, n) for n in levels)
        by_level = {}
        for n in levels:
            top = offs[n] + rep.dim(v, n)
            rows = []
            for k in range(top):
                row = [Fraction(0)] * total
                row[k] = Fraction(1)
                rows.append(row)
            by_level[n] = rows
        out[v] = by_level
    return out


def _step_value(by_level: dict, n: int):
    """Value of a step filtration at level n: largest keyed level <= n."""
    chosen = None
    for key in sorted(by_level):
        if key <= n:
            chosen = key
    if chosen is None:
        return []
    return by_level[chosen]


def twisted_filtration_check(N: Representation, filtration: dict, w: WeightAssignment):
    """Does N map each filtration level into the weight-shifted level?

    Returns (True, gr) with the induced graded representation on success and
    (False, None) when some arrow violates a level containment.  The
    filtration is a per-vertex map {level: spanning rows}; it must be nested
    and exhaust the vertex space at its top level.
    """
    if w.rank != 1:
        raise UnsupportedError("twisted filtrations are a rank-1 notion")
    Q = N.quiver
    idx = Q.vertex_index
    for v in Q.vertices:
        if N.dim(v) == 0:
            continue
        if v not in filtration or not filtration[v]:
            raise ValidationError(f"no filtration given at vertex {v}")
        keys = sorted(filtration[v])
        prev = []
        for n in keys:
            cur = [list(row) for row in filtration[v][n]]
            if not row_space_contains(prev, cur):
                raise ValidationError(f"filtration at {v} is not nested at level {n}")
            prev = cur
        if rank(prev) != N.dim(v):
            raise ValidationError(f"filtration at {v} does not exhaust the vertex space")
    for a in Q.arrows:
        if N.dim(a.source) == 0:
            continue
        wa = w.of(a)[0]
        fs = filtration[a.source]
        ft = filtration[a.target] if N.dim(a.target) else {}
        mat = N.matrix(a.name)
        for n, rows in fs.items():
            images = [_mat_vec(mat, vec) for vec in rows]
            images = [img for img in images if any(x != 0 for x in img)]
            if not images:
                continue
            target_rows = [list(r) for r in _step_value(ft, n + wa)]
            if not row_space_contains(images, target_rows):
                return False, None
    gr = _associated_graded(N, filtration, w)
    return True, gr


def _mat_vec(mat, vec):
    return [sum(row[j] * vec[j] for j in range(len(vec))) for row in mat]


def _adapted_bases(filtration_v, dim_full):
    """Per level: vectors extending the previous level's space, plus the
    accumulated basis below each level."""
    keys = sorted(filtration_v)
    adapted = {}
    below = []
    for n in keys:
        cur = filtration_v[n]
        lifts = []
        acc = [list(r) for r in below]
        for vec in cur:
            cand = acc + [list(vec)]
            if rank(cand) > rank(acc):
                lifts.append(list(vec))
                acc = cand
        adapted[n] = (below, lifts)
        below = acc
    return adapted


def _associated_graded(N: Representation, filtration: dict, w: WeightAssignment) -> GradedRep:
    Q = N.quiver
    adapted = {}
    level_dims = {}
    for v in Q.vertices:
        if N.dim(v) == 0:
            continue
        adapted[v] = _adapted_bases(filtration[v], N.dim(v))
        for n, (below, lifts) in adapted[v].items():
            if lifts:
                level_dims[(v, (n,))] = len(lifts)
    beta = CoveringDimVector.from_dict(1, level_dims)
    blocks = {}
    for a in Q.arrows:
        wa = w.of(a)[0]
        if N.dim(a.source) == 0 or N.dim(a.target) == 0:
            continue
        mat = N.matrix(a.name)
        for n, (below_s, lifts_s) in adapted[a.source].items():
            if not lifts_s:
                continue
            m = n + wa
            if (a.target, (m,)) not in level_dims:
                continue
            below_t, lifts_t = adapted[a.target][m]
            basis_rows = [list(r) for r in below_t] + [list(r) for r in lifts_t]
            block = []
            for u in lifts_s:
                img = _mat_vec(mat, u)
                coeffs = solve([list(col) for col in zip(*basis_rows)],
                               [[x] for x in img])
                if coeffs is None:
                    raise InconsistencyError("graded image left the filtration step")
                block.append([coeffs[len(below_t) + i][0] for i in range(len(lifts_t))])
            # block rows currently indexed by source lifts; transpose to target x source
            rows = len(lifts_t)
            cols = len(lifts_s)
            blocks[(a.name, n)] = [[block[c][r] for c in range(cols)] for r in range(rows)]
    return GradedRep(Q, w, beta, blocks)


def graded_isomorphic(A: GradedRep, B: GradedRep) -> bool:
    """Same dimension data, both Schur, and a nonzero homomorphism: then the
    two graded representations are isomorphic."""
    if A.beta != B.beta:
        return False
    if not is_schur(A) or not is_schur(B):
        return False
    hom, _ = covering_hom_ext(A, B)
    return hom >= 1
