"""Evaluation of an algebroid at rational points: exact kernel/image linear
algebra, the specialized finite-dimensional homotopy algebra on the anchor
kernel, the isotropy Lie algebra on kernel-mod-image classes, and the
regularity and minimality predicates."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .brackets import LieInftyAlgebroid
from .modres import FreeModuleMap, FreeResolution
from .polyring import Ring
from .symalg import TaylorMap, canonicalize, enumerate_words


# --- exact linear algebra over the rationals ---------------------------------


def rref(rows):
    """(reduced nonzero rows, pivot columns) of a rational matrix."""
    mat = [[Fraction(v) for v in r] for r in rows]
    ncols = len(mat[0]) if mat else 0
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(mat)) if mat[i][c] != 0), None)
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = mat[r][c]
        mat[r] = [v / inv for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                f = mat[i][c]
                mat[i] = [a - f * b for a, b in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return tuple(tuple(row) for row in mat[:r]), tuple(pivots)


def matrix_rank(rows) -> int:
    return len(rref(rows)[0])


def kernel_basis(rows, ncols):
    """Deterministic basis of the right kernel, one vector per free column."""
    red, pivots = rref(rows)
    pivot_set = set(pivots)
    out = []
    for fc in range(ncols):
        if fc in pivot_set:
            continue
        v = [Fraction(0)] * ncols
        v[fc] = Fraction(1)
        for row, pc in zip(red, pivots):
            v[pc] = -row[fc]
        out.append(tuple(v))
    return out


def solve_in_span(basis_rows, v):
    """Coordinates of v in the row span of the basis, or None if outside."""
    v = [Fraction(q) for q in v]
    if not basis_rows:
        return () if all(q == 0 for q in v) else None
    k = len(basis_rows)
    aug = [[Fraction(basis_rows[a][j]) for a in range(k)] + [v[j]]
           for j in range(len(v))]
    red, pivots = rref(aug)
    if k in pivots:
        return None
    coords = [Fraction(0)] * k
    for row, pc in zip(red, pivots):
        coords[pc] = row[k]
    return tuple(coords)


def _mat_mul(a, b):
    if not a or not b:
        return ()
    return tuple(tuple(sum(a[i][t] * b[t][j] for t in range(len(b)))
                       for j in range(len(b[0]))) for i in range(len(a)))


def _mat_nonzero(a) -> bool:
    return any(q != 0 for row in a for q in row)


# --- evaluated point data ----------------------------------------------------


def _as_point(ring: Ring, point):
    pt = tuple(Fraction(str(q)) if isinstance(q, str) else Fraction(q)
               for q in point)
    if len(pt) != ring.nvars:
        raise ValueError(f"point needs {ring.nvars} coordinates, got {len(pt)}")
    if ring.quotient is not None:
        for g in ring.quotient:
            if g.evaluate(pt) != 0:
                raise ValueError("point does not satisfy the quotient relations")
    return pt


def _eval_matrix(matrix, pt):
    return tuple(tuple(p.evaluate(pt) for p in row) for row in matrix)


@dataclass(frozen=True)
class PointData:
    """Anchor and differential matrices of a resolution evaluated at a point."""

    point: tuple
    ranks: tuple
    anchor: tuple  # nvars x rank(1)
    diffs: dict    # level -> rank(level-1) x rank(level)


def point_data(res: FreeResolution, point) -> PointData:
    pt = _as_point(res.ring, point)
    anchor = _eval_matrix(res.anchor.matrix, pt)
    diffs = {i: _eval_matrix(res.d(i).matrix, pt) for i in range(2, res.L + 1)}
    if 2 in diffs and _mat_nonzero(_mat_mul(anchor, diffs[2])):
        raise ValueError("evaluated anchor does not annihilate the differential")
    for i in range(3, res.L + 1):
        if _mat_nonzero(_mat_mul(diffs[i - 1], diffs[i])):
            raise ValueError(f"evaluated differentials do not compose to zero at level {i}")
    return PointData(pt, tuple(res.ranks), anchor, diffs)


# --- pointwise bracket tables ------------------------------------------------


def _pointwise_tables(alg: LieInftyAlgebroid, pt):
    out = {}
    for n, tm in alg.tables.items():
        table = {}
        for w, val in tm.entries.items():
            ev = {}
            for l, c in val.items():
                q = c.evaluate(pt)
                if q != 0:
                    ev[l] = q
            if ev:
                table[w] = ev
        out[n] = table
    return out


def _expand_word(pt_table, expand, word):
    """Rational bracket value on a word of expanded letters, in source coords."""
    out = {}

    def rec(idx, letters, coeff):
        if coeff == 0:
            return
        if idx == len(word):
            canon, sign = canonicalize(letters)
            if sign == 0:
                return
            val = pt_table.get(canon)
            if not val:
                return
            f = coeff * sign
            for l, q in val.items():
                out[l] = out.get(l, Fraction(0)) + f * q
            return
        for ol, c in expand[word[idx]]:
            rec(idx + 1, letters + [ol], coeff * c)

    rec(0, [], Fraction(1))
    return {l: q for l, q in out.items() if q != 0}


# --- the specialized finite-dimensional homotopy algebra ---------------------


def specialize(alg: LieInftyAlgebroid, point) -> LieInftyAlgebroid:
    """Evaluate the structure at a rational point: a homotopy algebra over the
    constants on (anchor kernel) + (higher levels), with zero anchor."""
    res = alg.res
    pd = point_data(res, point)
    r1 = res.rank(1)
    kernel = kernel_basis(pd.anchor, r1)
    k = len(kernel)
    ring0 = Ring(())
    ranks = (k,) + tuple(res.ranks[1:])
    names = {(1, a): f"κ{a + 1}" for a in range(k)}
    for lv in range(2, res.L + 1):
        for c in range(res.rank(lv)):
            names[(lv, c)] = res.gen_name(lv, c)

    diffs = {}
    if res.L >= 2:
        rows = [[ring0.zero()] * res.rank(2) for _ in range(k)]
        for c in range(res.rank(2)):
            col = tuple(pd.diffs[2][i][c] for i in range(r1))
            coords = solve_in_span(kernel, col)
            if coords is None:
                raise ValueError("differential image leaves the anchor kernel at the point")
            for a, q in enumerate(coords):
                if q != 0:
                    rows[a][c] = ring0.constant(q)
        diffs[2] = FreeModuleMap(ring0, tuple(tuple(r) for r in rows), -2, -1)
    for i in range(3, res.L + 1):
        diffs[i] = FreeModuleMap(
            ring0,
            tuple(tuple(ring0.constant(q) for q in row) for row in pd.diffs[i]),
            -i, -i + 1)
    new_res = FreeResolution(ring0, ranks, diffs, FreeModuleMap(ring0, (), -1, 0),
                             names)

    expand = {(1, a): [((1, j), kernel[a][j]) for j in range(r1)
                       if kernel[a][j] != 0]
              for a in range(k)}
    for lv in range(2, res.L + 1):
        for c in range(res.rank(lv)):
            expand[(lv, c)] = [((lv, c), Fraction(1))]

    pt_tables = _pointwise_tables(alg, pd.point)
    tables = {}
    for n, ptab in pt_tables.items():
        if not ptab:
            continue
        tm = TaylorMap(n, {}, 1)
        for m in range(-n, -n * res.L - 1, -1):
            for w in enumerate_words(ranks, n, m):
                raw = _expand_word(ptab, expand, w)
                if not raw:
                    continue
                combo = {}
                vec = [Fraction(0)] * r1
                has_level1 = False
                for l, q in raw.items():
                    if l[0] == 1:
                        vec[l[1]] = q
                        has_level1 = True
                    else:
                        combo[l] = ring0.constant(q)
                if has_level1:
                    coords = solve_in_span(kernel, vec)
                    if coords is None:
                        raise ValueError("bracket value leaves the anchor kernel at the point")
                    for a, q in enumerate(coords):
                        if q != 0:
                            combo[(1, a)] = ring0.constant(q)
                if combo:
                    tm.entries[w] = combo
        if tm.entries:
            tables[n] = tm
    out = LieInftyAlgebroid(new_res, tables)
    out.point = pd.point
    return out


# --- the isotropy Lie algebra ------------------------------------------------


@dataclass
class IsotropyAlgebra:
    """Kernel-mod-image classes at a point with rational structure constants."""

    point: tuple
    reps: tuple       # class representatives, vectors over the degree -1 rank
    image: tuple      # reduced basis of the evaluated differential image
    structure: dict   # (a, b) with a < b -> class coordinates of the bracket

    @property
    def dim(self) -> int:
        return len(self.reps)

    def bracket(self, a: int, b: int):
        """Structure constants of [class a, class b]."""
        zero = tuple(Fraction(0) for _ in self.reps)
        if a == b:
            return zero
        if a < b:
            return self.structure.get((a, b), zero)
        val = self.structure.get((b, a), zero)
        return tuple(-q for q in val)

    def class_coords(self, vector):
        """Class coordinates of a kernel vector, or None if outside the span."""
        coords = solve_in_span(list(self.reps) + list(self.image), vector)
        if coords is None:
            return None
        return tuple(coords[:len(self.reps)])


def isotropy_lie_algebra(alg: LieInftyAlgebroid, point) -> IsotropyAlgebra:
    res = alg.res
    pd = point_data(res, point)
    r1 = res.rank(1)
    kernel = kernel_basis(pd.anchor, r1)
    im_rows = []
    if res.L >= 2:
        im_rows = [tuple(pd.diffs[2][i][c] for i in range(r1))
                   for c in range(res.rank(2))]
    image, _ = rref(im_rows)

    reps = []
    span = list(image)
    for v in kernel:
        grown, _ = rref(span + [v])
        if len(grown) > len(span):
            reps.append(v)
            span = list(grown)
    reps = tuple(reps)

    proj_rows = list(reps) + list(image)
    pt2 = _pointwise_tables(alg, pd.point).get(2, {})
    expand = {(1, a): [((1, j), reps[a][j]) for j in range(r1)
                       if reps[a][j] != 0]
              for a in range(len(reps))}

    structure = {}
    for a in range(len(reps)):
        for b in range(a + 1, len(reps)):
            raw = _expand_word(pt2, expand, ((1, a), (1, b)))
            vec = [Fraction(0)] * r1
            for l, q in raw.items():
                if l[0] != 1:
                    raise ValueError("binary bracket of degree -1 classes left degree -1")
                vec[l[1]] = q
            coords = solve_in_span(proj_rows, vec)
            if coords is None:
                raise ValueError("bracket value leaves the kernel at the point")
            cls = tuple(coords[:len(reps)])
            if any(q != 0 for q in cls):
                structure[(a, b)] = cls

    out = IsotropyAlgebra(pd.point, reps, image, structure)
    _validate_lie(out)
    return out


def _validate_lie(iso: IsotropyAlgebra):
    """Jacobi identity for the structure constants, over the rationals."""
    n = iso.dim
    for a in range(n):
        for b in range(a + 1, n):
            for c in range(b + 1, n):
                acc = [Fraction(0)] * n
                for (x, y, z) in ((a, b, c), (b, c, a), (c, a, b)):
                    inner = iso.bracket(x, y)
                    for m, q in enumerate(inner):
                        if q == 0:
                            continue
                        outer = iso.bracket(m, z)
                        for t, p in enumerate(outer):
                            acc[t] += q * p
                if any(q != 0 for q in acc):
                    raise ValueError(f"structure constants fail Jacobi on ({a},{b},{c})")


# --- predicates --------------------------------------------------------------


def is_regular(alg: LieInftyAlgebroid, point) -> bool:
    """True when the evaluated differential image fills the anchor kernel."""
    res = alg.res
    pd = point_data(res, point)
    kdim = res.rank(1) - matrix_rank(pd.anchor)
    imrank = 0
    if res.L >= 2:
        im_rows = [tuple(pd.diffs[2][i][c] for i in range(res.rank(1)))
                   for c in range(res.rank(2))]
        imrank = matrix_rank(im_rows)
    return imrank == kdim


def minimality_at(alg: LieInftyAlgebroid, point):
    """(True, specialized algebra) when every differential vanishes at the
    point, else (False, None)."""
    pd = point_data(alg.res, point)
    for i in range(2, alg.res.L + 1):
        if _mat_nonzero(pd.diffs[i]):
            return False, None
    return True, specialize(alg, point)
