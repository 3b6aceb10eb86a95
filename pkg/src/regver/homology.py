"""Finite homological algebra over the integers.

Chain complexes are contiguous families of free abelian groups with
integer differential matrices (d_n : degree n -> n-1).  Cubical abelian
groups carry face and degeneracy matrices; the two identities the
constructions rely on (delta_i^j sigma_i = id and d^2 = 0 on the
associated complex) are validated numerically at construction time.
Homology is computed through Smith normal form; the rational helpers
back the rank-exactness checks of the long exact sequence.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from time import perf_counter

from .matrices import (IntMatrix, frac_kernel, frac_matrix, frac_rank,
                       frac_solve, invariant_factors, kernel_basis, rank,
                       solve_integral)
from .report import Report, report


class InvalidComplexData(ValueError):
    pass


class ComplexFormatError(ValueError):
    """Malformed complex/cubical JSON; message names the offending field."""


@dataclass
class ChainComplex:
    lo: int
    hi: int
    ranks: dict
    differentials: dict  # n -> IntMatrix (degree n -> n-1), for lo < n <= hi

    def __post_init__(self):
        if self.lo > self.hi:
            raise InvalidComplexData("empty degree range")
        for n in range(self.lo, self.hi + 1):
            self.ranks.setdefault(n, 0)
        self.validate()

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def diff(self, n: int) -> IntMatrix:
        """The differential out of degree n (zero matrix by default)."""
        m = self.differentials.get(n)
        if m is None:
            return IntMatrix.zero(self.rank(n - 1), self.rank(n))
        return m

    def validate(self):
        for n, m in self.differentials.items():
            if not (self.lo < n <= self.hi):
                raise InvalidComplexData(f"differential at degree {n} out of range")
            if (m.rows, m.cols) != (self.rank(n - 1), self.rank(n)):
                raise InvalidComplexData(
                    f"differential at degree {n} has shape {m.rows}x{m.cols}, "
                    f"expected {self.rank(n - 1)}x{self.rank(n)}")
        for n in range(self.lo + 2, self.hi + 1):
            if not (self.diff(n - 1) * self.diff(n)).is_zero():
                raise InvalidComplexData(f"d o d != 0 at degree {n}")

    def __eq__(self, other):
        if not isinstance(other, ChainComplex):
            return NotImplemented
        if (self.lo, self.hi) != (other.lo, other.hi):
            return False
        for n in range(self.lo, self.hi + 1):
            if self.rank(n) != other.rank(n) or self.diff(n) != other.diff(n):
                return False
        return True


def two_term_complex(top_degree: int, matrix_rows) -> ChainComplex:
    """Convenience: a single differential placed at top_degree."""
    m = IntMatrix.from_rows(matrix_rows)
    return ChainComplex(top_degree - 1, top_degree,
                        {top_degree: m.cols, top_degree - 1: m.rows},
                        {top_degree: m})


@dataclass
class ChainMap:
    source: ChainComplex
    target: ChainComplex
    mats: dict  # n -> IntMatrix, target.rank(n) x source.rank(n)

    def __post_init__(self):
        self.validate()

    def mat(self, n: int) -> IntMatrix:
        m = self.mats.get(n)
        if m is None:
            return IntMatrix.zero(self.target.rank(n), self.source.rank(n))
        return m

    def validate(self):
        a, b = self.source, self.target
        for n, m in self.mats.items():
            if (m.rows, m.cols) != (b.rank(n), a.rank(n)):
                raise InvalidComplexData(
                    f"chain map at degree {n} has shape {m.rows}x{m.cols}, "
                    f"expected {b.rank(n)}x{a.rank(n)}")
        lo = min(a.lo, b.lo)
        hi = max(a.hi, b.hi)
        for n in range(lo + 1, hi + 1):
            lhs = self.mat(n - 1) * a.diff(n)
            rhs = b.diff(n) * self.mat(n)
            if lhs != rhs:
                raise InvalidComplexData(f"map does not commute with d at degree {n}")


@dataclass
class CubicalGroup:
    """Levels 0..top of free abelian groups with faces and degeneracies.

    faces[(n, i, j)] : level n -> n-1   (1 <= i <= n, j in {0, 1})
    degeneracies[(n, i)] : level n -> n+1   (1 <= i <= n+1)
    """

    top: int
    ranks: dict
    faces: dict
    degeneracies: dict

    def __post_init__(self):
        self.validate()

    def rank(self, n: int) -> int:
        return self.ranks.get(n, 0)

    def face(self, n: int, i: int, j: int) -> IntMatrix:
        return self.faces[(n, i, j)]

    def degeneracy(self, n: int, i: int) -> IntMatrix:
        return self.degeneracies[(n, i)]

    def validate(self):
        for n in range(1, self.top + 1):
            for i in range(1, n + 1):
                for j in (0, 1):
                    m = self.faces.get((n, i, j))
                    if m is None:
                        raise InvalidComplexData(f"missing face ({n},{i},{j})")
                    if (m.rows, m.cols) != (self.rank(n - 1), self.rank(n)):
                        raise InvalidComplexData(f"face ({n},{i},{j}) has bad shape")
        for n in range(0, self.top):
            for i in range(1, n + 2):
                s = self.degeneracies.get((n, i))
                if s is None:
                    raise InvalidComplexData(f"missing degeneracy ({n},{i})")
                if (s.rows, s.cols) != (self.rank(n + 1), self.rank(n)):
                    raise InvalidComplexData(f"degeneracy ({n},{i}) has bad shape")
                for j in (0, 1):
                    if self.face(n + 1, i, j) * s != IntMatrix.identity(self.rank(n)):
                        raise InvalidComplexData(
                            f"face ({n + 1},{i},{j}) o degeneracy ({n},{i}) != id")
        associated_complex(self)  # validates d o d = 0


def associated_complex(c: CubicalGroup) -> ChainComplex:
    """Differential sum over faces with signs (-1)^(i+j)."""
    diffs = {}
    for n in range(1, c.top + 1):
        d = IntMatrix.zero(c.rank(n - 1), c.rank(n))
        for i in range(1, n + 1):
            for j in (0, 1):
                d = d + c.face(n, i, j).scale((-1) ** (i + j))
        diffs[n] = d
    try:
        return ChainComplex(0, c.top, {n: c.rank(n) for n in range(c.top + 1)},
                            diffs)
    except InvalidComplexData as e:
        raise InvalidComplexData(f"invalid cubical data: {e}") from e


def normalized_kernel_bases(c: CubicalGroup) -> dict:
    """Integer bases (as columns) of the intersections of ker delta_i^1."""
    bases = {0: IntMatrix.identity(c.rank(0))}
    for n in range(1, c.top + 1):
        stacked = c.face(n, 1, 1)
        for i in range(2, n + 1):
            stacked = stacked.stack(c.face(n, i, 1))
        bases[n] = kernel_basis(stacked)
    return bases


def normalized_complex(c: CubicalGroup) -> ChainComplex:
    """Chain complex on the normalized subgroups with d = sum (-1)^i delta_i^0."""
    bases = normalized_kernel_bases(c)
    ranks = {n: bases[n].cols for n in range(c.top + 1)}
    diffs = {}
    for n in range(1, c.top + 1):
        d = IntMatrix.zero(c.rank(n - 1), c.rank(n))
        for i in range(1, n + 1):
            d = d + c.face(n, i, 0).scale((-1) ** i)
        diffs[n] = solve_integral(bases[n - 1], d * bases[n])
    return ChainComplex(0, c.top, ranks, diffs)


def degenerate_generators(c: CubicalGroup, n: int) -> IntMatrix:
    """Columns generating the degenerate subgroup D_n."""
    if n == 0 or c.rank(n) == 0:
        return IntMatrix.zero(c.rank(n), 0)
    gens = None
    for i in range(1, n + 1):
        s = c.degeneracy(n - 1, i)
        gens = s if gens is None else gens.hstack(s)
    return gens


def decomposition_check(c: CubicalGroup) -> Report:
    """Rational rank decomposition C_n = NC_n + D_n with trivial intersection."""
    t0 = perf_counter()
    bases = normalized_kernel_bases(c)
    bad = None
    details = {}
    for n in range(c.top + 1):
        nc = bases[n]
        dg = degenerate_generators(c, n)
        rank_nc = nc.cols
        rank_d = frac_rank(frac_matrix(dg)) if dg.cols else 0
        joint = frac_rank(frac_matrix(nc.hstack(dg))) if nc.cols + dg.cols else 0
        details[n] = {"rank": c.rank(n), "normalized": rank_nc, "degenerate": rank_d}
        if rank_nc + rank_d != c.rank(n) or joint != rank_nc + rank_d:
            bad = {"level": n, "rank": c.rank(n), "normalized": rank_nc,
                   "degenerate": rank_d, "joint": joint}
            break
    return report("decomposition", {"top": c.top}, bad, perf_counter() - t0,
                  {"levels": details})


def simple_of_map(f: ChainMap) -> ChainComplex:
    """Cone-style complex of a chain map: degree n is A_n + B_{n+1} with
    d(a, b) = (d_A a, f(a) - d_B b)."""
    a, b = f.source, f.target
    lo = min(a.lo, b.lo - 1)
    hi = max(a.hi, b.hi - 1)
    ranks = {n: a.rank(n) + b.rank(n + 1) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        rows = []
        da = a.diff(n)
        fb = f.mat(n)
        db = b.diff(n + 1)
        for r in range(a.rank(n - 1)):
            rows.append(list(da.entries[r]) + [0] * b.rank(n + 1))
        for r in range(b.rank(n)):
            rows.append(list(fb.entries[r]) + [-x for x in db.entries[r]])
        diffs[n] = IntMatrix(ranks[n - 1], ranks[n],
                             tuple(tuple(r) for r in rows))
    return ChainComplex(lo, hi, ranks, diffs)


@dataclass
class TwoArrowDiagram:
    """Three complexes with maps g: A -> B and r: A -> C out of one source."""

    a: ChainComplex
    b: ChainComplex
    c: ChainComplex
    g: ChainMap
    r: ChainMap

    def __post_init__(self):
        if self.g.source is not self.a and self.g.source != self.a:
            raise InvalidComplexData("g must start at A")
        if self.r.source is not self.a and self.r.source != self.a:
            raise InvalidComplexData("r must start at A")
        if self.g.target != self.b or self.r.target != self.c:
            raise InvalidComplexData("arrow targets do not match diagram")


def simple_of_diagram(diag: TwoArrowDiagram) -> ChainComplex:
    """Shifted simple complex of the two-arrow diagram: degree n holds the
    triples (a, b, c) in A_{n-1} + B_n + C_n with differential
    d(a, b, c) = (-d_A a, d_B b + g(a), d_C c - r(a))."""
    a, b, c = diag.a, diag.b, diag.c
    lo = min(a.lo + 1, b.lo, c.lo)
    hi = max(a.hi + 1, b.hi, c.hi)
    ranks = {n: a.rank(n - 1) + b.rank(n) + c.rank(n) for n in range(lo, hi + 1)}
    diffs = {}
    for n in range(lo + 1, hi + 1):
        ra, rb, rc = a.rank(n - 1), b.rank(n), c.rank(n)
        da = a.diff(n - 1)
        db = b.diff(n)
        dc = c.diff(n)
        gm = diag.g.mat(n - 1)
        rm = diag.r.mat(n - 1)
        rows = []
        for i in range(a.rank(n - 2)):
            rows.append([-x for x in da.entries[i]] + [0] * (rb + rc))
        for i in range(b.rank(n - 1)):
            rows.append(list(gm.entries[i]) + list(db.entries[i]) + [0] * rc)
        for i in range(c.rank(n - 1)):
            rows.append([-x for x in rm.entries[i]] + [0] * rb
                        + list(dc.entries[i]))
        diffs[n] = IntMatrix(ranks[n - 1], ranks[n], tuple(tuple(r) for r in rows))
    return ChainComplex(lo, hi, ranks, diffs)


def translate(c: ChainComplex, k: int) -> ChainComplex:
    """Shift degrees by k and scale the differential by (-1)^k."""
    ranks = {n + k: c.rank(n) for n in range(c.lo, c.hi + 1)}
    sign = (-1) ** k
    diffs = {n + k: c.diff(n).scale(sign) for n in c.differentials}
    return ChainComplex(c.lo + k, c.hi + k, ranks, diffs)


def truncate_leq(c: ChainComplex, n: int) -> ChainComplex:
    """Canonical truncation at cochain degree n of the cochain view A^k = A_{-k}.

    Keeps chain degrees above -n, replaces degree -n by the integer kernel
    of its outgoing differential, and cuts everything below.
    """
    cut = -n
    if cut <= c.lo:
        return c
    if cut > c.hi:
        return ChainComplex(c.hi, c.hi, {c.hi: 0}, {})
    k = kernel_basis(c.diff(cut))
    ranks = {m: c.rank(m) for m in range(cut + 1, c.hi + 1)}
    ranks[cut] = k.cols
    diffs = {m: c.diff(m) for m in range(cut + 2, c.hi + 1)}
    if cut + 1 <= c.hi:
        diffs[cut + 1] = solve_integral(k, c.diff(cut + 1))
    return ChainComplex(cut, c.hi, ranks, diffs)


def homology(c: ChainComplex, n: int) -> tuple[int, list[int]]:
    """Free rank and invariant factors (> 1) of H_n = ker d_n / im d_{n+1}."""
    if n < c.lo or n > c.hi:
        return 0, []
    rank_out = rank(c.diff(n)) if n > c.lo else 0
    incoming = c.diff(n + 1) if n < c.hi else IntMatrix.zero(c.rank(n), 0)
    factors = invariant_factors(incoming)
    betti = c.rank(n) - rank_out - len(factors)
    return betti, [f for f in factors if f > 1]


# -- rational homology bases and the long exact sequence ----------------------

class RationalHomology:
    """Cycle representatives of H_*(X; Q), one basis per degree."""

    def __init__(self, cx: ChainComplex):
        self.cx = cx
        self.reps = {}
        self.boundary_cols = {}
        for n in range(cx.lo, cx.hi + 1):
            rk = cx.rank(n)
            cycles = frac_kernel(frac_matrix(cx.diff(n)), ncols=rk) if rk else []
            if n < cx.hi:
                dn1 = cx.diff(n + 1)
                bcols = [[Fraction(x) for x in dn1.column(j)]
                         for j in range(dn1.cols)]
            else:
                bcols = []
            self.boundary_cols[n] = bcols
            chosen = []
            span = [list(b) for b in bcols]
            base_rank = frac_rank(span) if span else 0
            for z in cycles:
                trial = span + [list(z)]
                r = frac_rank(trial)
                if r > base_rank:
                    chosen.append(z)
                    span = trial
                    base_rank = r
            self.reps[n] = chosen

    def dim(self, n: int) -> int:
        return len(self.reps.get(n, []))

    def express(self, n: int, vec) -> list[Fraction]:
        """Coordinates of a cycle class over the chosen representatives."""
        reps = self.reps.get(n, [])
        bcols = self.boundary_cols.get(n, [])
        if not reps and not bcols:
            if any(vec):
                raise ValueError("nonzero class in zero homology")
            return []
        cols = [list(b) for b in bcols] + [list(r) for r in reps]
        a = [list(row) for row in zip(*cols)] if cols else []
        x = frac_solve(a, list(vec))
        if x is None:
            raise ValueError("vector is not a cycle class")
        return x[len(bcols):]


def induced_map(hsrc: RationalHomology, hdst: RationalHomology,
                mat_for_degree, n: int) -> list[list[Fraction]]:
    """Matrix of the induced map H_n(src) -> H_n(dst) over the chosen bases."""
    cols = []
    for repv in hsrc.reps.get(n, []):
        m = mat_for_degree(n)
        img = [sum(Fraction(m.entries[i][j]) * repv[j] for j in range(m.cols))
               for i in range(m.rows)]
        cols.append(hdst.express(n, img))
    dim_dst = hdst.dim(n)
    return [[cols[j][i] for j in range(len(cols))] for i in range(dim_dst)]


def verify_les_exactness(f: ChainMap) -> Report:
    """Rank-exactness of ... -> H_{n+1}(B) -> H_n(s(f)) -> H_n(A) -> H_n(B) -> ...

    The three maps are realized explicitly: inclusion into the cone part,
    projection onto A, and the connecting map, which for this simple
    complex is induced by f itself.
    """
    t0 = perf_counter()
    a, b = f.source, f.target
    s = simple_of_map(f)
    ha, hb, hs = RationalHomology(a), RationalHomology(b), RationalHomology(s)

    def incl_mat(n):  # B_{n+1} block of s(f)_n; induces H_{n+1}(B) -> H_n(s)
        rows = []
        for i in range(a.rank(n)):
            rows.append([0] * b.rank(n + 1))
        for i in range(b.rank(n + 1)):
            rows.append([1 if i == j else 0 for j in range(b.rank(n + 1))])
        return IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, 0)

    def proj_mat(n):  # s(f)_n -> A_n
        rows = []
        for i in range(a.rank(n)):
            rows.append([1 if i == j else 0 for j in range(a.rank(n))]
                        + [0] * b.rank(n + 1))
        return IntMatrix.from_rows(rows) if rows else \
            IntMatrix.zero(0, s.rank(n))

    def incl(n):
        cols = []
        for repv in hb.reps.get(n + 1, []):
            m = incl_mat(n)
            img = [sum(Fraction(m.entries[i][j]) * repv[j]
                       for j in range(m.cols)) for i in range(m.rows)]
            cols.append(hs.express(n, img))
        return [[cols[j][i] for j in range(len(cols))]
                for i in range(hs.dim(n))]

    nodes = []
    for n in range(s.lo - 1, s.hi + 2):
        nodes.append(("S", n, hs.dim(n), incl(n),
                      induced_map(hs, ha, proj_mat, n)))
        nodes.append(("A", n, ha.dim(n), induced_map(hs, ha, proj_mat, n),
                      induced_map(ha, hb, f.mat, n)))
        nodes.append(("B", n, hb.dim(n), induced_map(ha, hb, f.mat, n),
                      incl(n - 1)))

    bad = None
    for name, n, dim, m_in, m_out in nodes:
        rank_in = frac_rank(m_in)
        rank_out = frac_rank(m_out)
        if rank_in + rank_out != dim:
            bad = {"node": f"H_{n}({name})", "dim": dim,
                   "rank_in": rank_in, "rank_out": rank_out}
            break
        comp = _frac_mul(m_out, m_in)
        if any(any(x for x in row) for row in comp):
            bad = {"node": f"H_{n}({name})", "reason": "composite nonzero"}
            break
    return report("les-exactness",
                  {"degrees": [s.lo, s.hi]}, bad, perf_counter() - t0,
                  {"dims": {str(n): [ha.dim(n), hb.dim(n), hs.dim(n)]
                            for n in range(s.lo, s.hi + 1)}})


def _frac_mul(a, b):
    rows = len(a)
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner))
             for j in range(cols)] for i in range(rows)]


# -- JSON interchange ---------------------------------------------------------

def complex_to_json(c: ChainComplex) -> dict:
    return {
        "degrees": [c.lo, c.hi],
        "ranks": {str(n): c.rank(n) for n in range(c.lo, c.hi + 1)},
        "differentials": {str(n): c.diff(n).to_lists()
                          for n in range(c.lo + 1, c.hi + 1)},
    }


def complex_from_json(obj) -> ChainComplex:
    if not isinstance(obj, dict):
        raise ComplexFormatError("top level: expected an object")
    for key in ("degrees", "ranks", "differentials"):
        if key not in obj:
            raise ComplexFormatError(f"{key}: missing field")
    degrees = obj["degrees"]
    if (not isinstance(degrees, list) or len(degrees) != 2
            or not all(isinstance(x, int) for x in degrees)):
        raise ComplexFormatError("degrees: expected [lo, hi] integers")
    lo, hi = degrees
    ranks = {}
    for n in range(lo, hi + 1):
        r = obj["ranks"].get(str(n), 0)
        if not isinstance(r, int) or r < 0:
            raise ComplexFormatError(f"ranks.{n}: expected a non-negative integer")
        ranks[n] = r
    diffs = {}
    for key, rows in obj["differentials"].items():
        try:
            n = int(key)
        except ValueError:
            raise ComplexFormatError(f"differentials.{key}: bad degree key")
        m = _matrix_from_json(rows, ranks.get(n - 1, 0), ranks.get(n, 0),
                              f"differentials.{key}")
        diffs[n] = m
    try:
        return ChainComplex(lo, hi, ranks, diffs)
    except InvalidComplexData as e:
        raise ComplexFormatError(str(e)) from e


def _matrix_from_json(rows, nrows, ncols, path) -> IntMatrix:
    if not isinstance(rows, list) or len(rows) != nrows:
        raise ComplexFormatError(
            f"{path}: expected {nrows} rows, got "
            f"{len(rows) if isinstance(rows, list) else type(rows).__name__}")
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != ncols:
            raise ComplexFormatError(f"{path}[{i}]: expected {ncols} integers")
        for x in row:
            if not isinstance(x, int):
                raise ComplexFormatError(f"{path}[{i}]: non-integer entry {x!r}")
    return IntMatrix(nrows, ncols, tuple(tuple(r) for r in rows))


def cubical_to_json(c: CubicalGroup) -> dict:
    faces = {}
    for n in range(1, c.top + 1):
        faces[str(n)] = {f"{i},{j}": c.face(n, i, j).to_lists()
                         for i in range(1, n + 1) for j in (0, 1)}
    degens = {}
    for n in range(0, c.top):
        degens[str(n)] = {str(i): c.degeneracy(n, i).to_lists()
                          for i in range(1, n + 2)}
    return {
        "levels": [0, c.top],
        "ranks": {str(n): c.rank(n) for n in range(c.top + 1)},
        "faces": faces,
        "degeneracies": degens,
    }


def cubical_from_json(obj) -> CubicalGroup:
    if not isinstance(obj, dict):
        raise ComplexFormatError("top level: expected an object")
    for key in ("levels", "ranks", "faces", "degeneracies"):
        if key not in obj:
            raise ComplexFormatError(f"{key}: missing field")
    levels = obj["levels"]
    if (not isinstance(levels, list) or len(levels) != 2 or levels[0] != 0
            or not isinstance(levels[1], int)):
        raise ComplexFormatError("levels: expected [0, top]")
    top = levels[1]
    ranks = {}
    for n in range(top + 1):
        r = obj["ranks"].get(str(n))
        if not isinstance(r, int) or r < 0:
            raise ComplexFormatError(f"ranks.{n}: expected a non-negative integer")
        ranks[n] = r
    faces = {}
    for n in range(1, top + 1):
        level = obj["faces"].get(str(n))
        if not isinstance(level, dict):
            raise ComplexFormatError(f"faces.{n}: missing level")
        for i in range(1, n + 1):
            for j in (0, 1):
                rows = level.get(f"{i},{j}")
                if rows is None:
                    raise ComplexFormatError(f"faces.{n}.{i},{j}: missing matrix")
                faces[(n, i, j)] = _matrix_from_json(
                    rows, ranks[n - 1], ranks[n], f"faces.{n}.{i},{j}")
    degens = {}
    for n in range(0, top):
        level = obj["degeneracies"].get(str(n))
        if not isinstance(level, dict):
            raise ComplexFormatError(f"degeneracies.{n}: missing level")
        for i in range(1, n + 2):
            rows = level.get(str(i))
            if rows is None:
                raise ComplexFormatError(f"degeneracies.{n}.{i}: missing matrix")
            degens[(n, i)] = _matrix_from_json(
                rows, ranks[n + 1], ranks[n], f"degeneracies.{n}.{i}")
    try:
        return CubicalGroup(top, ranks, faces, degens)
    except InvalidComplexData as e:
        raise ComplexFormatError(str(e)) from e


def load_json_file(path: str):
    with open(path, "r", encoding="utf-8") as fh:
        try:
            return json.load(fh)
        except json.JSONDecodeError as e:
            raise ComplexFormatError(
                f"invalid JSON at line {e.lineno} column {e.colno}: {e.msg}")
