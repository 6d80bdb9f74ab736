"""Free modules over polynomial/quotient rings: Groebner bases with syzygy tracking,
free resolutions with exactness certificates, and tangent/vanishing generator constructors."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

from .polyring import (MonomialOrder, Poly, Ring, RingMismatch, VectorField,
                       divide, groebner, parse_poly, poly_to_string)


class CapExceeded(Exception):
    """Resolution did not terminate within the declared length cap."""


class NotExact(Exception):
    """Exactness certification failed at a level, with a witness syzygy."""

    def __init__(self, level: int, witness):
        self.level = level
        self.witness = witness
        super().__init__(f"complex not exact at level {level}")


# --- module vectors ---------------------------------------------------------

def vec_zero(ring: Ring, rank: int):
    return tuple(ring.zero() for _ in range(rank))


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(f, v):
    return tuple(f * a for a in v)


def vec_is_zero(v) -> bool:
    return all(a.is_zero() for a in v)


def _vec_terms(v):
    for comp, p in enumerate(v):
        for e, c in p.terms.items():
            yield (comp, e), c


def _term_key(order: MonomialOrder, term):
    comp, e = term
    # position-over-term, lower component index first (= larger)
    return (-comp, order.key(e))


def _vec_leading(order: MonomialOrder, v):
    """((comp, exp), coeff) of the leading module term, or None for the zero vector."""
    best = None
    best_c = None
    for term, c in _vec_terms(v):
        if best is None or _term_key(order, term) > _term_key(order, best):
            best, best_c = term, c
    if best is None:
        return None
    return best, best_c


def _vec_monic(order: MonomialOrder, v):
    ld = _vec_leading(order, v)
    if ld is None:
        return v
    inv = Fraction(1) / ld[1]
    return vec_scale(v[0].ring.constant(inv), v)


def module_divide(v, basis, ring: Ring, pref=None):
    """Divide a module vector by basis vectors: v = sum cofactor_k * basis_k + remainder.

    pref: ordering of basis indices used as reducer preference (default: lowest index first).
    Returns (remainder, cofactors list of Poly).
    """
    order = ring.order
    rank = len(v)
    if pref is None:
        pref = range(len(basis))
    pref = list(pref)
    leads = [_vec_leading(order, b) for b in basis]
    work = {term: c for term, c in _vec_terms(v)}
    rem: dict = {}
    cof = [dict() for _ in basis]
    while work:
        term = max(work, key=lambda t: _term_key(order, t))
        c = work[term]
        comp, e = term
        for i in pref:
            ld = leads[i]
            if ld is None:
                continue
            (bcomp, be), bc = ld
            if bcomp == comp and all(a <= b for a, b in zip(be, e)):
                q_exp = tuple(b - a for a, b in zip(be, e))
                q_c = c / bc
                cof[i][q_exp] = cof[i].get(q_exp, Fraction(0)) + q_c
                for (tcomp, te), tc in _vec_terms(basis[i]):
                    ne = (tcomp, tuple(a + b for a, b in zip(te, q_exp)))
                    work[ne] = work.get(ne, Fraction(0)) - q_c * tc
                    if work[ne] == 0:
                        del work[ne]
                break
        else:
            rem[term] = rem.get(term, Fraction(0)) + c
            del work[term]
    rem_vec = [dict() for _ in range(rank)]
    for (comp, e), c in rem.items():
        rem_vec[comp][e] = c
    remainder = tuple(Poly(ring, d, reduce=False) for d in rem_vec)
    cofactors = [Poly(ring, d, reduce=False) for d in cof]
    return remainder, cofactors


def _module_buchberger(vectors, ring: Ring):
    """All-pairs module Buchberger with cofactor and syzygy tracking over a free ring.

    Returns (G, A, syz) with G a Groebner basis of <vectors>, A[k] the cofactor row
    expressing G[k] over the inputs, and syz a generating set of the syzygy module of
    the *inputs* (Schreyer pairs composed back plus tautological rows).
    """
    order = ring.order
    n_in = len(vectors)
    G = []
    A = []
    for idx, v in enumerate(vectors):
        if vec_is_zero(v):
            continue
        rep = [ring.zero()] * n_in
        rep[idx] = ring.one()
        ld = _vec_leading(order, v)
        inv = Fraction(1) / ld[1]
        G.append(_vec_monic(order, v))
        A.append([p * inv for p in rep])
    zero_inputs = [i for i, v in enumerate(vectors) if vec_is_zero(v)]

    schreyer = []  # syzygies over G-indices: list of list[Poly]
    pairs = [(i, j) for i in range(len(G)) for j in range(i + 1, len(G))]
    while pairs:
        def pair_key(ij):
            (ci, ei), _ = _vec_leading(order, G[ij[0]])
            (cj, ej), _ = _vec_leading(order, G[ij[1]])
            if ci != cj:
                return (1, 0, 0, ij[0], ij[1])
            lcm = tuple(max(a, b) for a, b in zip(ei, ej))
            return (0, -ci, order.key(lcm), ij[0], ij[1])
        pairs.sort(key=pair_key)
        i, j = pairs.pop(0)
        (ci, ei), _ = _vec_leading(order, G[i])
        (cj, ej), _ = _vec_leading(order, G[j])
        if ci != cj:
            continue
        lcm = tuple(max(a, b) for a, b in zip(ei, ej))
        mi = ring.monomial(tuple(l - a for l, a in zip(lcm, ei)))
        mj = ring.monomial(tuple(l - a for l, a in zip(lcm, ej)))
        sp = vec_sub(vec_scale(mi, G[i]), vec_scale(mj, G[j]))
        rem, q = module_divide(sp, G, ring)
        srow = [ring.zero()] * len(G)
        srow[i] = srow[i] + mi
        srow[j] = srow[j] - mj
        for k, qk in enumerate(q):
            srow[k] = srow[k] - qk
        if vec_is_zero(rem):
            schreyer.append(srow)
        else:
            ld = _vec_leading(order, rem)
            inv = Fraction(1) / ld[1]
            new_rep = [ring.zero()] * n_in
            # rem = mi*G[i] - mj*G[j] - sum q_k G[k]; rep over inputs via A
            for k, coeff in enumerate(srow):
                if not coeff.is_zero():
                    for l in range(n_in):
                        if not A[k][l].is_zero():
                            new_rep[l] = new_rep[l] + coeff * A[k][l]
            G.append(vec_scale(ring.constant(inv), rem))
            A.append([p * inv for p in new_rep])
            pairs.extend((k, len(G) - 1) for k in range(len(G) - 1))

    # express inputs over G (always exact: G generates the same module)
    B = []
    for v in vectors:
        if vec_is_zero(v):
            B.append([ring.zero()] * len(G))
            continue
        rem, q = module_divide(v, G, ring)
        if not vec_is_zero(rem):
            raise AssertionError("input did not reduce to zero against its own Groebner basis")
        B.append(q)

    syz = []
    for srow in schreyer:
        out = [ring.zero()] * n_in
        for k, coeff in enumerate(srow):
            if not coeff.is_zero():
                for l in range(n_in):
                    if not A[k][l].is_zero():
                        out[l] = out[l] + coeff * A[k][l]
        syz.append(tuple(out))
    # tautological syzygies: rows of (Id - B*A)
    for l in range(n_in):
        row = [ring.zero()] * n_in
        row[l] = ring.one()
        for k in range(len(G)):
            if not B[l][k].is_zero():
                for m in range(n_in):
                    if not A[k][m].is_zero():
                        row[m] = row[m] - B[l][k] * A[k][m]
        if not vec_is_zero(tuple(row)):
            syz.append(tuple(row))
    # unit syzygies for zero input columns
    for i in zero_inputs:
        row = [ring.zero()] * n_in
        row[i] = ring.one()
        syz.append(tuple(row))
    return G, A, syz


class ModuleBasis:
    """Prepared Groebner data for the column module of a map, quotient-ring aware.

    Supports membership tests and deterministic lifts with cofactors over the
    original columns; over a quotient ring the computation is done in the ambient
    polynomial ring after augmenting with ideal multiples of the unit vectors.
    """

    def __init__(self, ring: Ring, columns, rank: int):
        self.ring = ring
        self.rank = rank
        self.n_columns = len(columns)
        self.ambient = ring.ambient()
        amb_cols = [tuple(p.map_ring(self.ambient) for p in col) for col in columns]
        self.aug = list(amb_cols)
        if ring.quotient is not None:
            for q in ring.quotient:
                for c in range(rank):
                    col = [self.ambient.zero()] * rank
                    col[c] = q
                    self.aug.append(tuple(col))
        self.G, self.A, self._syz_aug = _module_buchberger(self.aug, self.ambient)

    def reduce(self, v):
        """Normal form of v against the column module (zero iff v is a member)."""
        amb = tuple(p.map_ring(self.ambient) for p in v)
        rem, _ = module_divide(amb, self.G, self.ambient)
        return tuple(Poly(self.ring, dict(p.terms)) for p in rem)

    def lift(self, v, pref=None):
        """Cofactors over the original columns with exact reconstruction, or None.

        pref permutes the Groebner-basis reducer preference (deterministic per pref).
        """
        amb = tuple(p.map_ring(self.ambient) for p in v)
        rem, q = module_divide(amb, self.G, self.ambient, pref=pref)
        if not vec_is_zero(tuple(Poly(self.ring, dict(p.terms)) for p in rem)):
            return None
        out = [self.ambient.zero()] * self.n_columns
        for k, qk in enumerate(q):
            if not qk.is_zero():
                for l in range(self.n_columns):
                    if not self.A[k][l].is_zero():
                        out[l] = out[l] + qk * self.A[k][l]
        return [Poly(self.ring, dict(p.terms)) for p in out]

    def syzygies(self):
        """Generators of the syzygy module of the original columns (quotient-reduced, pruned)."""
        raw = []
        for s in self._syz_aug:
            proj = tuple(Poly(self.ring, dict(p.terms)) for p in s[:self.n_columns])
            if not vec_is_zero(proj):
                raw.append(_vec_monic(self.ring.order, proj))
        # dedupe, deterministic order
        seen = set()
        uniq = []
        for s in sorted(raw, key=lambda v: _syz_sort_key(self.ring.order, v)):
            key = tuple(p._freeze() for p in s)
            if key not in seen:
                seen.add(key)
                uniq.append(s)
        return prune_generators(self.ring, uniq, self.n_columns)


def _syz_sort_key(order, v):
    ld = _vec_leading(order, v)
    return (_term_key(order, ld[0]), tuple(p._freeze() for p in v)) if ld else ((0, ()), ())


def prune_generators(ring: Ring, vectors, rank: int):
    """Greedily drop generators contained in the module spanned by the others."""
    vectors = [v for v in vectors if not vec_is_zero(v)]
    i = 0
    while i < len(vectors):
        others = vectors[:i] + vectors[i + 1:]
        if others and ModuleBasis(ring, others, rank).lift(vectors[i]) is not None:
            vectors.pop(i)
        else:
            i += 1
    return vectors


def syzygy_generators(ring: Ring, columns, rank: int):
    """Generators of the syzygy module of the given columns of O^rank."""
    return ModuleBasis(ring, columns, rank).syzygies()


# --- free module maps and resolutions --------------------------------------


@dataclass(frozen=True)
class FreeModuleMap:
    """O-linear map between free modules, stored as a target_rank x source_rank matrix."""

    ring: Ring
    matrix: tuple  # tuple of rows (tuples of Poly)
    source_deg: int = 0
    target_deg: int = 0

    @property
    def target_rank(self) -> int:
        return len(self.matrix)

    @property
    def source_rank(self) -> int:
        return len(self.matrix[0]) if self.matrix else 0

    def column(self, j: int):
        return tuple(self.matrix[i][j] for i in range(self.target_rank))

    def columns(self):
        return [self.column(j) for j in range(self.source_rank)]

    def apply(self, vec):
        if not self.matrix:
            return ()
        if len(vec) != self.source_rank:
            raise RingMismatch("vector length does not match source rank")
        out = []
        for i in range(self.target_rank):
            acc = self.ring.zero()
            for j, v in enumerate(vec):
                if not v.is_zero() and not self.matrix[i][j].is_zero():
                    acc = acc + self.matrix[i][j] * v
            out.append(acc)
        return tuple(out)

    def compose(self, other: "FreeModuleMap") -> "FreeModuleMap":
        """self after other."""
        cols = [self.apply(other.column(j)) for j in range(other.source_rank)]
        rows = tuple(tuple(cols[j][i] for j in range(len(cols)))
                     for i in range(self.target_rank))
        return FreeModuleMap(self.ring, rows, other.source_deg, self.target_deg)

    def is_zero(self) -> bool:
        return all(p.is_zero() for row in self.matrix for p in row)


def map_from_columns(ring: Ring, columns, target_rank: int,
                     source_deg: int = 0, target_deg: int = 0) -> FreeModuleMap:
    rows = tuple(tuple(col[i] for col in columns) for i in range(target_rank))
    return FreeModuleMap(ring, rows, source_deg, target_deg)


class FreeResolution:
    """Chain of free modules E_{-1}..E_{-L} with differentials and an anchor into Der(O)."""

    def __init__(self, ring: Ring, ranks, diffs, anchor: FreeModuleMap,
                 generator_names=None):
        self.ring = ring
        self.ranks = tuple(ranks)           # ranks[i-1] = rank of E_{-i}
        self.diffs = dict(diffs)            # i -> FreeModuleMap E_{-i} -> E_{-i+1}, i >= 2
        self.anchor = anchor                # nvars x ranks[0]
        self.generator_names = dict(generator_names or {})
        self._cache: dict = {}
        for i, dmap in self.diffs.items():
            if dmap.source_rank != self.rank(i) or dmap.target_rank != self.rank(i - 1):
                raise RingMismatch(f"differential {i} has inconsistent shape")

    @property
    def L(self) -> int:
        return len(self.ranks)

    def rank(self, level: int) -> int:
        if 1 <= level <= self.L:
            return self.ranks[level - 1]
        return 0

    def d(self, i: int) -> FreeModuleMap:
        return self.diffs[i]

    def anchor_field(self, j: int) -> VectorField:
        return VectorField(self.ring, self.anchor.column(j))

    def anchor_of_vector(self, vec) -> VectorField:
        return VectorField(self.ring, self.anchor.apply(vec))

    def gen_name(self, level: int, index: int) -> str:
        return self.generator_names.get((level, index), f"e[{level},{index}]")

    def level_basis(self, level: int) -> "ModuleBasis":
        """Prepared column module of the map out of E_{-level} (anchor for level 1)."""
        key = ("basis", level)
        if key not in self._cache:
            if level == 1:
                cols = self.anchor.columns()
                rank = self.ring.nvars
            else:
                cols = self.diffs[level].columns()
                rank = self.rank(level - 1)
            self._cache[key] = ModuleBasis(self.ring, cols, rank)
        return self._cache[key]

    def check_complex(self):
        """d^{(i)} o d^{(i+1)} = 0 and rho o d^{(2)} = 0; returns list of violations."""
        bad = []
        for i in range(2, self.L):
            if not self.diffs[i].compose(self.diffs[i + 1]).is_zero():
                bad.append(("d.d", i))
        if self.L >= 2 and not self.anchor.compose(self.diffs[2]).is_zero():
            bad.append(("anchor.d", 2))
        return bad


@dataclass
class ExactnessCertificate:
    """Per level: syzygy generators of the outgoing map with lifting cofactors through
    the next differential; recorded products reproduce the syzygies exactly."""

    resolution: FreeResolution
    levels: dict  # level -> list of (syzygy vector, cofactor vector)

    def verify(self) -> bool:
        for level, entries in self.levels.items():
            if level >= self.resolution.L:
                if entries:
                    return False
                continue
            nxt = self.resolution.d(level + 1)
            for syz, cof in entries:
                if not vec_is_zero(vec_sub(nxt.apply(cof), syz)):
                    return False
        return True


def free_resolution(gens, ring: Ring | None = None, cap: int | None = None,
                    generator_names=None) -> FreeResolution:
    """Iterated syzygies starting from generator vector fields (or module vectors)."""
    columns = []
    for g in gens:
        if isinstance(g, VectorField):
            if ring is None:
                ring = g.ring
            columns.append(tuple(g.coeffs))
        else:
            columns.append(tuple(g))
            if ring is None and g:
                ring = g[0].ring
    if ring is None:
        raise ValueError("empty generator list requires an explicit ring")
    if cap is None:
        cap = ring.nvars + 1
    rank0 = ring.nvars
    anchor = map_from_columns(ring, columns, rank0, source_deg=-1, target_deg=0)
    ranks = [len(columns)]
    diffs: dict[int, FreeModuleMap] = {}
    if not columns:
        return FreeResolution(ring, [], {}, anchor, generator_names)
    current_cols = columns
    current_rank = rank0
    level = 1
    while True:
        syz = syzygy_generators(ring, current_cols, current_rank)
        if not syz:
            break
        level += 1
        if level > cap:
            raise CapExceeded(f"resolution exceeded length cap {cap}")
        dmap = map_from_columns(ring, syz, len(current_cols),
                                source_deg=-level, target_deg=-(level - 1))
        diffs[level] = dmap
        ranks.append(len(syz))
        current_rank = len(current_cols)
        current_cols = syz
    return FreeResolution(ring, ranks, diffs, anchor, generator_names)


def certify_exactness(res: FreeResolution) -> ExactnessCertificate:
    """Certify ker = im at every level by lifting all syzygy generators; raises NotExact."""
    levels: dict = {}
    for i in range(1, res.L + 1):
        syz = res.level_basis(i).syzygies()
        entries = []
        if i == res.L:
            if syz:
                raise NotExact(i, syz[0])
        else:
            nxt = res.level_basis(i + 1)
            for s in syz:
                cof = nxt.lift(s)
                if cof is None:
                    raise NotExact(i, s)
                entries.append((s, tuple(cof)))
        levels[i] = entries
    cert = ExactnessCertificate(res, levels)
    assert cert.verify()
    return cert


# --- foliation input constructors ------------------------------------------


def tangent_generators(ideal_gens) -> list[VectorField]:
    """Generators of the vector fields preserving the ideal: X[phi_i] in <phi_1..phi_r>."""
    if not ideal_gens:
        raise ValueError("need at least one ideal generator")
    ring = ideal_gens[0].ring
    r = len(ideal_gens)
    d = ring.nvars
    columns = []
    for a in range(d):
        columns.append(tuple(p.derivative(a) for p in ideal_gens))
    for k in range(r):
        for l in range(r):
            col = [ring.zero()] * r
            col[k] = ideal_gens[l]
            columns.append(tuple(col))
    syz = syzygy_generators(ring, columns, r)
    fields = []
    for s in syz:
        proj = tuple(s[:d])
        if not vec_is_zero(proj):
            fields.append(proj)
    fields = prune_generators(ring, fields, d)
    return [VectorField(ring, f) for f in fields]


def vanishing_generators(ideal_gens) -> list[VectorField]:
    """The fields phi_i * d/dx_a, ordered generator-major."""
    if not ideal_gens:
        return []
    ring = ideal_gens[0].ring
    out = []
    for p in ideal_gens:
        for a in range(ring.nvars):
            coeffs = [ring.zero()] * ring.nvars
            coeffs[a] = p
            out.append(VectorField(ring, coeffs))
    return out


# --- serialization ----------------------------------------------------------


def poly_to_obj(p: Poly):
    return [[list(e), str(c)] for e, c in sorted(p.terms.items())]


def poly_from_obj(obj, ring: Ring) -> Poly:
    return Poly(ring, {tuple(e): Fraction(c) for e, c in obj})


def matrix_to_obj(m: FreeModuleMap):
    return [[poly_to_obj(p) for p in row] for row in m.matrix]


def ring_to_obj(ring: Ring):
    obj = {"variables": list(ring.variables),
           "order": {"tag": ring.order.tag,
                     "perm": list(ring.order.perm) if ring.order.perm else None}}
    if ring.quotient is not None:
        obj["quotient"] = [poly_to_obj(q) for q in ring.quotient]
    return obj


def ring_from_obj(obj) -> Ring:
    order = MonomialOrder(obj["order"]["tag"],
                          tuple(obj["order"]["perm"]) if obj["order"]["perm"] else None)
    ring = Ring(obj["variables"], order)
    if "quotient" in obj:
        ambient = ring
        quotient = tuple(poly_from_obj(q, ambient) for q in obj["quotient"])
        ring = Ring(obj["variables"], order, quotient=quotient)
    return ring


def resolution_to_obj(res: FreeResolution):
    return {
        "ring": ring_to_obj(res.ring),
        "ranks": list(res.ranks),
        "anchor": matrix_to_obj(res.anchor),
        "differentials": {str(i): matrix_to_obj(m) for i, m in sorted(res.diffs.items())},
        "generator_names": {f"{lv}:{ix}": name
                            for (lv, ix), name in sorted(res.generator_names.items())},
    }


def resolution_from_obj(obj) -> FreeResolution:
    ring = ring_from_obj(obj["ring"])

    def mk_matrix(rows, source_deg, target_deg):
        mat = tuple(tuple(poly_from_obj(p, ring) for p in row) for row in rows)
        return FreeModuleMap(ring, mat, source_deg, target_deg)

    anchor = mk_matrix(obj["anchor"], -1, 0)
    diffs = {int(i): mk_matrix(rows, -int(i), -(int(i) - 1))
             for i, rows in obj["differentials"].items()}
    names = {}
    for key, name in obj.get("generator_names", {}).items():
        lv, ix = key.split(":")
        names[(int(lv), int(ix))] = name
    return FreeResolution(ring, obj["ranks"], diffs, anchor, names)


def resolution_to_json(res: FreeResolution) -> str:
    return json.dumps(resolution_to_obj(res), sort_keys=True, indent=1)


def resolution_from_json(text: str) -> FreeResolution:
    return resolution_from_obj(json.loads(text))
