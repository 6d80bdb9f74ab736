"""Bracket tables with anchor-aware Leibniz evaluation, Richardson-Nijenhuis
composition, the Jacobiator, the column-filtered bicomplex with its total
differential and coboundary solver, and the axiom/morphism verifiers."""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from fractions import Fraction

from .modres import (FreeResolution, ModuleBasis, matrix_to_obj, poly_from_obj,
                     poly_to_obj, resolution_from_obj, resolution_to_obj)
from .polyring import Poly, Ring, RingMismatch, VectorField
from .symalg import (TaylorMap, canonicalize, enumerate_words, koszul_sign,
                     letter_degree, position_subsets, set_partitions, word_degree,
                     word_to_string)


class AnchorNotMorphism(Exception):
    """The anchor fails to send the binary bracket to the commutator; carries a witness pair."""

    def __init__(self, witness):
        self.witness = witness
        super().__init__(f"anchor is not a bracket morphism on {witness}")


class LiftFailed(Exception):
    """A column lift during the coboundary solve did not exist (non-exact input)."""

    def __init__(self, level, witness):
        self.level = level
        self.witness = witness
        super().__init__(f"lift failed at column {level}")


# --- generator combinations -------------------------------------------------
# An Elem is a dict letter -> Poly: an O-combination of module generators.


def elem_add(a: dict, b: dict) -> dict:
    out = dict(a)
    for l, c in b.items():
        cur = out.get(l)
        out[l] = c if cur is None else cur + c
        if out[l].is_zero():
            del out[l]
    return out


def elem_scale(a: dict, f) -> dict:
    out = {}
    for l, c in a.items():
        v = c * f
        if not v.is_zero():
            out[l] = v
    return out


def elem_neg(a: dict) -> dict:
    return {l: -c for l, c in a.items()}


def elem_is_zero(a: dict) -> bool:
    return all(c.is_zero() for c in a.values())


def as_elem(arg, ring: Ring) -> dict:
    """Accept a letter or an Elem."""
    if isinstance(arg, tuple):
        return {arg: ring.one()}
    return arg


def elem_level_part(a: dict, level: int) -> dict:
    return {l: c for l, c in a.items() if l[0] == level}


def elem_to_vector(a: dict, level: int, rank: int, ring: Ring):
    vec = [ring.zero()] * rank
    for (lv, idx), c in a.items():
        if lv != level:
            raise RingMismatch("combination is not concentrated in the expected level")
        vec[idx] = vec[idx] + c
    return tuple(vec)


def elem_from_vector(vec, level: int) -> dict:
    return {(level, i): c for i, c in enumerate(vec) if not c.is_zero()}


# --- the algebroid ----------------------------------------------------------


class LieInftyAlgebroid:
    """Resolution plus arity-indexed bracket tables of degree +1 on canonical words.

    The unary table is always the resolution differential; the binary table is
    evaluated with anchor Leibniz corrections; higher tables are O-multilinear.
    """

    def __init__(self, res: FreeResolution, tables=None):
        self.res = res
        self.tables = {}
        for k, tm in (tables or {}).items():
            if k < 2:
                raise ValueError("unary data comes from the resolution")
            if tm.shift != 1:
                raise ValueError("bracket tables must have degree shift +1")
            if tm.arity != k:
                raise ValueError("table arity disagrees with its key")
            self.tables[k] = tm
        self.K = res.L + 1
        for k, tm in self.tables.items():
            if k > self.K and tm.entries:
                raise ValueError("nonzero table beyond the arity bound")
        self.partial = False

    @property
    def ring(self) -> Ring:
        return self.res.ring

    def l1_elem(self, letter) -> dict:
        level, idx = letter
        if level == 1:
            return {}
        return elem_from_vector(self.res.d(level).column(idx), level - 1)

    def anchor_field(self, elem: dict) -> VectorField:
        out = VectorField(self.ring, [self.ring.zero()] * self.ring.nvars)
        for (lv, idx), c in elem.items():
            if lv == 1:
                out = out + self.res.anchor_field(idx).scale(c)
        return out

    def table(self, k: int) -> TaylorMap | None:
        return self.tables.get(k)


def eval_multilinear(tm: TaylorMap | None, args, ring: Ring) -> dict:
    """Pure O-multilinear table evaluation on a list of Elems/letters."""
    if tm is None:
        return {}
    args = [as_elem(a, ring) for a in args]
    out: dict = {}

    def rec(idx, letters, coeff):
        if coeff.is_zero():
            return
        if idx == len(args):
            val = tm.value(tuple(letters))
            for l, c in val.items():
                cur = out.get(l)
                v = coeff * c
                out[l] = v if cur is None else cur + v
                if out[l].is_zero():
                    del out[l]
            return
        for l, c in args[idx].items():
            rec(idx + 1, letters + [l], coeff * c)

    rec(0, [], ring.one())
    return out


def eval_bracket(alg: LieInftyAlgebroid, k: int, args) -> dict:
    """Value of the k-ary bracket on Elems, with Leibniz anchor terms at arity 2."""
    ring = alg.ring
    if k < 1 or k > alg.K:
        raise ValueError(f"arity {k} outside 1..{alg.K}")
    if len(args) != k:
        raise ValueError("argument count differs from arity")
    args = [as_elem(a, ring) for a in args]
    if k == 1:
        out: dict = {}
        for l, c in args[0].items():
            out = elem_add(out, elem_scale(alg.l1_elem(l), c))
        return out
    if k == 2:
        x, y = args
        out = {}
        for lx, a in x.items():
            for ly, b in y.items():
                tab = alg.table(2)
                if tab is not None:
                    val = tab.value((lx, ly))
                    if val:
                        out = elem_add(out, elem_scale(val, a * b))
                if lx[0] == 1:
                    rho_b = alg.res.anchor_field(lx[1]).apply(b)
                    if not rho_b.is_zero():
                        out = elem_add(out, {ly: a * rho_b})
                if ly[0] == 1:
                    rho_a = alg.res.anchor_field(ly[1]).apply(a)
                    if not rho_a.is_zero():
                        sign = -1 if (lx[0] % 2) and (ly[0] % 2) else 1
                        out = elem_add(out, {lx: sign * b * rho_a})
        return out
    return eval_multilinear(alg.table(k), args, ring)


def compose_arity(alg: LieInftyAlgebroid, outer: int, inner: int, letters) -> dict:
    """(outer-bracket ∘ inner-bracket)(word): plug the inner value into the first slot
    over every position subset, with unshuffle Koszul signs."""
    ring = alg.ring
    if outer > alg.K or inner > alg.K:
        return {}
    n = len(letters)
    out: dict = {}
    degrees = [letter_degree(l) for l in letters]
    for S in position_subsets(n, inner):
        inS = set(S)
        rest = [p for p in range(n) if p not in inS]
        sign = koszul_sign(list(S) + rest, degrees)
        inner_val = eval_bracket(alg, inner, [letters[p] for p in S])
        if elem_is_zero(inner_val):
            continue
        term = eval_bracket(alg, outer, [inner_val] + [letters[p] for p in rest])
        if sign == -1:
            term = elem_neg(term)
        out = elem_add(out, term)
    return out


def jacobi_defect(alg: LieInftyAlgebroid, n: int, letters) -> dict:
    """Sum of l_i ∘ l_j over ordered pairs with i + j = n + 1 (vanishes iff the
    n-argument higher Jacobi identity holds on the word)."""
    out: dict = {}
    for i in range(1, n + 1):
        j = n + 1 - i
        if j < 1:
            continue
        out = elem_add(out, compose_arity(alg, i, j, letters))
    return out


def rn_bracket(P: TaylorMap, R: TaylorMap, ranks, ring: Ring) -> TaylorMap:
    """Richardson-Nijenhuis bracket of two O-multilinear maps, tabulated on all
    words the given ranks support: P∘R − (−1)^{|P||R|} R∘P."""
    sign_flip = -1 if (P.shift % 2) and (R.shift % 2) else 1
    arity = P.arity + R.arity - 1
    out = TaylorMap(arity, {}, P.shift + R.shift)
    ranks = list(ranks.ranks) if hasattr(ranks, "ranks") else list(ranks)
    max_depth = len(ranks)
    for m in range(-arity, -arity * max_depth - 1, -1):
        for w in enumerate_words(ranks, arity, m):
            acc = _compose_tables(P, R, w, ring)
            second = _compose_tables(R, P, w, ring)
            if sign_flip == -1:
                acc = elem_add(acc, second)
            else:
                acc = elem_add(acc, elem_neg(second))
            if acc:
                out.entries[w] = acc
    return out


def _compose_tables(P: TaylorMap, R: TaylorMap, letters, ring: Ring) -> dict:
    degrees = [letter_degree(l) for l in letters]
    n = len(letters)
    out: dict = {}
    for S in position_subsets(n, R.arity):
        inS = set(S)
        rest = [p for p in range(n) if p not in inS]
        sign = koszul_sign(list(S) + rest, degrees)
        inner = R.value(tuple(letters[p] for p in S))
        if not inner:
            continue
        term = eval_multilinear(P, [inner] + [letters[p] for p in rest], ring)
        if sign == -1:
            term = elem_neg(term)
        out = elem_add(out, term)
    return out


# --- bicomplex pages --------------------------------------------------------


@dataclass
class PageElement:
    """Arity-homogeneous element of the column-filtered bicomplex.

    entries: canonical word -> Elem (column = word level content; each word feeds
    exactly one column, namely -(word degree) - shift). colzero: canonical word ->
    vector field (column 0). src letters index the words; tgt letters the values.
    """

    src: FreeResolution
    tgt: FreeResolution
    arity: int
    shift: int
    entries: dict = field(default_factory=dict)
    colzero: dict = field(default_factory=dict)

    @property
    def page(self) -> int:
        return self.arity - 1

    def copy(self) -> "PageElement":
        return PageElement(self.src, self.tgt, self.arity, self.shift,
                           {w: dict(v) for w, v in self.entries.items()},
                           dict(self.colzero))

    def is_zero(self) -> bool:
        return (all(elem_is_zero(v) for v in self.entries.values())
                and all(v.is_zero() for v in self.colzero.values()))

    def add(self, other: "PageElement") -> "PageElement":
        if (self.arity, self.shift) != (other.arity, other.shift):
            raise RingMismatch("page shapes differ")
        out = self.copy()
        for w, v in other.entries.items():
            out.entries[w] = elem_add(out.entries.get(w, {}), v)
            if elem_is_zero(out.entries[w]):
                del out.entries[w]
        for w, v in other.colzero.items():
            cur = out.colzero.get(w)
            s = v if cur is None else cur + v
            if s.is_zero():
                out.colzero.pop(w, None)
            else:
                out.colzero[w] = s
        return out

    def neg(self) -> "PageElement":
        return PageElement(self.src, self.tgt, self.arity, self.shift,
                           {w: elem_neg(v) for w, v in self.entries.items()},
                           {w: -v for w, v in self.colzero.items()})

    def value(self, letters) -> dict:
        word, sign = canonicalize(letters)
        if sign == 0:
            return {}
        val = self.entries.get(word)
        if not val:
            return {}
        return val if sign == 1 else elem_neg(val)

    def value_colzero(self, letters):
        word, sign = canonicalize(letters)
        if sign == 0:
            return None
        vf = self.colzero.get(word)
        if vf is None:
            return None
        return vf if sign == 1 else -vf

    def prune(self) -> "PageElement":
        self.entries = {w: v for w, v in self.entries.items() if not elem_is_zero(v)}
        self.colzero = {w: v for w, v in self.colzero.items() if not v.is_zero()}
        return self


def page_from_defect(res: FreeResolution, arity: int, shift: int, entries) -> PageElement:
    return PageElement(res, res, arity, shift, dict(entries), {}).prune()


def _vertical_sign(letters, m: int) -> int:
    crossed = sum(l[0] for l in letters[:m])
    return -1 if crossed % 2 else 1


def page_D(P: PageElement) -> PageElement:
    """Total differential: horizontal (post-compose with d, anchor into column 0)
    minus (-1)^shift times vertical (insert the source differential slot-wise)."""
    src, tgt = P.src, P.tgt
    ring = tgt.ring
    out = PageElement(src, tgt, P.arity, P.shift + 1)
    degs = set()
    for w in P.entries:
        degs.add(word_degree(w))
    for w in P.colzero:
        degs.add(word_degree(w))
    if not degs:
        return out
    window = sorted(set(list(degs) + [m - 1 for m in degs]))
    vcoef = 1 if P.shift % 2 else -1  # the vertical part enters as -(-1)^shift
    for m in window:
        for w in enumerate_words(src.ranks, P.arity, m):
            acc_elem: dict = {}
            acc_vf = None
            val = P.entries.get(w)
            if val:
                col_in = -word_degree(w) - P.shift
                if col_in == 1:
                    vf = _anchor_apply(tgt, val)
                    if not vf.is_zero():
                        acc_vf = vf
                elif col_in >= 2:
                    dval: dict = {}
                    for l, c in val.items():
                        dval = elem_add(dval, elem_scale(
                            elem_from_vector(tgt.d(l[0]).column(l[1]), l[0] - 1), c))
                    acc_elem = elem_add(acc_elem, dval)
            for pos, letter in enumerate(w):
                if letter[0] < 2:
                    continue
                coef_base = _vertical_sign(w, pos) * vcoef
                dletter = elem_from_vector(src.d(letter[0]).column(letter[1]), letter[0] - 1)
                for l2, c in dletter.items():
                    mod = w[:pos] + (l2,) + w[pos + 1:]
                    sub = P.value(mod)
                    if sub:
                        acc_elem = elem_add(acc_elem, elem_scale(sub, c * coef_base))
                    vf = P.value_colzero(mod)
                    if vf is not None and not vf.is_zero():
                        scaled = vf.scale(c * coef_base)
                        acc_vf = scaled if acc_vf is None else acc_vf + scaled
            if acc_elem and not elem_is_zero(acc_elem):
                out.entries[w] = acc_elem
            if acc_vf is not None and not acc_vf.is_zero():
                out.colzero[w] = acc_vf
    return out.prune()


def _anchor_apply(res: FreeResolution, elem: dict) -> VectorField:
    out = VectorField(res.ring, [res.ring.zero()] * res.ring.nvars)
    for (lv, idx), c in elem.items():
        if lv != 1:
            raise RingMismatch("anchor applies to level-1 combinations only")
        out = out + res.anchor_field(idx).scale(c)
    return out


def _lift_pref(basis: ModuleBasis, seed, level: int):
    if seed is None:
        return None
    pref = list(range(len(basis.G)))
    random.Random(seed * 65537 + level).shuffle(pref)
    return pref


def page_solve(P: PageElement, seed=None) -> PageElement:
    """Column-by-column coboundary: R with D(R) = P, vanishing below P's support.

    Lifts through the target anchor for column 0 and through each differential at
    deeper columns; deterministic for a fixed seed. Raises LiftFailed when a lift
    does not exist or a residual survives past the last column.
    """
    src, tgt = P.src, P.tgt
    ring = tgt.ring
    j = P.shift
    R = PageElement(src, tgt, P.arity, j - 1)
    jr = j - 1
    vs = -1 if jr % 2 else 1  # (-1)^{shift of R}
    L = tgt.L

    def vertical_of_R(w):
        acc: dict = {}
        for pos, letter in enumerate(w):
            if letter[0] < 2:
                continue
            sgn = _vertical_sign(w, pos)
            dletter = elem_from_vector(src.d(letter[0]).column(letter[1]), letter[0] - 1)
            for l2, c in dletter.items():
                mod = w[:pos] + (l2,) + w[pos + 1:]
                sub = R.value(mod)
                if sub:
                    acc = elem_add(acc, elem_scale(sub, c if sgn == 1 else -c))
        return acc

    for i in range(0, L + 1):
        # equations indexed by column -i of P: words of degree -(j + i)
        for w in enumerate_words(src.ranks, P.arity, -(j + i)):
            if i == 0:
                vf = P.colzero.get(w)
                if vf is None or vf.is_zero():
                    continue
                basis = tgt.level_basis(1)
                cof = basis.lift(tuple(vf.coeffs), pref=_lift_pref(basis, seed, 1))
                if cof is None:
                    raise LiftFailed(1, (w, vf))
                R.entries[w] = elem_from_vector(cof, 1)
                continue
            rhs = P.entries.get(w, {})
            vert = vertical_of_R(w)
            if vert:
                rhs = elem_add(rhs, vert if vs == 1 else elem_neg(vert))
            if elem_is_zero(rhs):
                continue
            if i == L:
                raise LiftFailed(L + 1, (w, rhs))
            vec = elem_to_vector(rhs, i, tgt.rank(i), ring)
            basis = tgt.level_basis(i + 1)
            cof = basis.lift(vec, pref=_lift_pref(basis, seed, i + 1))
            if cof is None:
                raise LiftFailed(i + 1, (w, rhs))
            R.entries[w] = elem_from_vector(cof, i + 1)
    return R.prune()


def jacobiator(alg: LieInftyAlgebroid) -> PageElement:
    """The squared binary bracket as a page (arity 3, degree +2); raises
    AnchorNotMorphism if the anchor fails on a level-1 generator pair."""
    res = alg.res
    r1 = res.rank(1)
    for i in range(r1):
        for jx in range(i, r1):
            x, y = (1, i), (1, jx)
            br = eval_bracket(alg, 2, [x, y])
            lhs = alg.anchor_field(elem_level_part(br, 1))
            rhs = res.anchor_field(i).commutator(res.anchor_field(jx))
            if not (lhs - rhs).is_zero():
                raise AnchorNotMorphism(((1, i), (1, jx)))
    entries = {}
    for m in range(-3, -res.L - 3, -1):
        for w in enumerate_words(res.ranks, 3, m):
            val = compose_arity(alg, 2, 2, w)
            if val and not elem_is_zero(val):
                entries[w] = val
    return page_from_defect(res, 3, 2, entries)


# --- verification reports ---------------------------------------------------


@dataclass
class Report:
    """Outcome of a verification run: named checks with pass/fail and witnesses."""

    ok: bool
    checks: list  # (name, passed, witness-or-None)

    def to_text(self) -> str:
        lines = []
        for name, passed, witness in self.checks:
            mark = "ok" if passed else "FAIL"
            suffix = "" if witness is None else f"  witness: {witness}"
            lines.append(f"[{mark}] {name}{suffix}")
        lines.append("all checks passed" if self.ok else "verification FAILED")
        return "\n".join(lines)

    def to_json(self) -> str:
        return json.dumps({
            "ok": self.ok,
            "checks": [{"name": n, "passed": p,
                        "witness": None if w is None else str(w)}
                       for n, p, w in self.checks],
        }, indent=1)


def check_algebroid(alg: LieInftyAlgebroid, max_arity: int | None = None) -> Report:
    """Exhaustively verify the complex property, anchor conditions, and the higher
    Jacobi identities on every canonical word in the derived degree windows."""
    res = alg.res
    checks = []
    bad = res.check_complex()
    checks.append(("complex d.d = 0 and anchor.d = 0", not bad, bad or None))
    if bad:
        return Report(False, checks)
    r1 = res.rank(1)
    witness = None
    for i in range(r1):
        for jx in range(i, r1):
            br = eval_bracket(alg, 2, [(1, i), (1, jx)])
            lhs = alg.anchor_field(elem_level_part(br, 1))
            rhs = res.anchor_field(i).commutator(res.anchor_field(jx))
            if not (lhs - rhs).is_zero():
                witness = ((1, i), (1, jx))
                break
        if witness:
            break
    checks.append(("anchor is a bracket morphism", witness is None, witness))
    if witness:
        return Report(False, checks)
    if max_arity is None:
        max_arity = res.L + 2
    for n in range(1, max_arity + 1):
        witness = None
        for m in range(-n, -res.L - 3, -1):
            for w in enumerate_words(res.ranks, n, m):
                defect = jacobi_defect(alg, n, w)
                if defect and not elem_is_zero(defect):
                    witness = (word_to_string(w), defect)
                    break
            if witness:
                break
        checks.append((f"higher Jacobi, {n} argument(s)", witness is None, witness))
        if witness:
            return Report(False, checks)
    return Report(True, checks)


@dataclass
class MorphismTaylor:
    """Taylor data of a strict-up-to-homotopy morphism between two algebroids.

    coeffs[r] consumes r+1 source-side letters and emits target-side combinations.
    """

    source: LieInftyAlgebroid
    target: LieInftyAlgebroid
    coeffs: dict  # r -> TaylorMap with arity r+1, shift 0

    def phi(self, r: int) -> TaylorMap | None:
        return self.coeffs.get(r)


def check_morphism(phi: MorphismTaylor, cap: int | None = None) -> Report:
    """Chain map + anchor compatibility + arity-n morphism components up to cap+1."""
    srcalg, tgtalg = phi.source, phi.target
    srcres, tgtres = srcalg.res, tgtalg.res
    ring = tgtres.ring
    if cap is None:
        cap = max(phi.coeffs) if phi.coeffs else 0
    checks = []
    phi0 = phi.phi(0)
    witness = None
    if phi0 is None:
        witness = "missing arity-0 coefficient"
    else:
        for level in range(2, srcres.L + 1):
            for idx in range(srcres.rank(level)):
                e = (level, idx)
                lhs = eval_multilinear(phi0, [srcalg.l1_elem(e)], ring)
                rhs_in = phi0.value((e,))
                rhs: dict = {}
                for l, c in rhs_in.items():
                    rhs = elem_add(rhs, elem_scale(tgtalg.l1_elem(l), c))
                diff = elem_add(lhs, elem_neg(rhs))
                if not elem_is_zero(diff):
                    witness = (e, diff)
                    break
            if witness:
                break
    checks.append(("chain map at every level", witness is None, witness))
    if witness:
        return Report(False, checks)
    witness = None
    for idx in range(srcres.rank(1)):
        img = phi0.value(((1, idx),))
        lhs = tgtalg.anchor_field(img)
        rhs = srcres.anchor_field(idx)
        if not (lhs - VectorField(ring, rhs.coeffs)).is_zero():
            witness = ((1, idx), lhs, rhs)
            break
    checks.append(("anchor compatibility", witness is None, witness))
    if witness:
        return Report(False, checks)

    depth = max(srcres.L, tgtres.L)
    for n in range(2, cap + 2):
        witness = None
        for m in range(-n, -depth - 2, -1):
            for w in enumerate_words(srcres.ranks, n, m):
                a = _morphism_side_a(phi, w, ring)
                b = _morphism_side_b(phi, w, ring)
                diff = elem_add(a, elem_neg(b))
                if not elem_is_zero(diff):
                    witness = (word_to_string(w), diff)
                    break
            if witness:
                break
        checks.append((f"morphism component, {n} argument(s)", witness is None, witness))
        if witness:
            return Report(False, checks)
    return Report(True, checks)


def _morphism_side_a(phi: MorphismTaylor, letters, ring: Ring) -> dict:
    """Sum over k-subsets: Phi_{n-k}(l'_k(block), rest)."""
    srcalg = phi.source
    n = len(letters)
    degrees = [letter_degree(l) for l in letters]
    out: dict = {}
    for k in range(1, n + 1):
        outer = phi.phi(n - k)
        if outer is None:
            continue
        for S in position_subsets(n, k):
            inS = set(S)
            rest = [p for p in range(n) if p not in inS]
            sign = koszul_sign(list(S) + rest, degrees)
            inner = eval_bracket(srcalg, k, [letters[p] for p in S])
            if elem_is_zero(inner):
                continue
            term = eval_multilinear(outer, [inner] + [letters[p] for p in rest], ring)
            if sign == -1:
                term = elem_neg(term)
            out = elem_add(out, term)
    return out


def _morphism_side_b(phi: MorphismTaylor, letters, ring: Ring) -> dict:
    """Sum over partitions: l_t(Phi(B_1), ..., Phi(B_t)) with Leibniz at t = 2."""
    tgtalg = phi.target
    n = len(letters)
    degrees = [letter_degree(l) for l in letters]
    out: dict = {}
    for t in range(1, n + 1):
        for blocks in set_partitions(n, t):
            vals = []
            ok = True
            for b in blocks:
                tm = phi.phi(len(b) - 1)
                v = tm.value(tuple(letters[p] for p in b)) if tm else {}
                if not v:
                    ok = False
                    break
                vals.append(v)
            if not ok:
                continue
            perm = [p for b in blocks for p in b]
            sign = koszul_sign(perm, degrees)
            if t <= tgtalg.K:
                term = eval_bracket(tgtalg, t, vals)
            else:
                term = {}
            if elem_is_zero(term):
                continue
            if sign == -1:
                term = elem_neg(term)
            out = elem_add(out, term)
    return out


# --- serialization ----------------------------------------------------------


def _word_to_obj(word):
    return [list(l) for l in word]


def _elem_to_obj(elem: dict):
    return [[list(l), poly_to_obj(c)] for l, c in sorted(elem.items())]


def _elem_from_obj(obj, ring: Ring) -> dict:
    return {tuple(l): poly_from_obj(c, ring) for l, c in obj}


def table_to_obj(tm: TaylorMap):
    return {"arity": tm.arity, "shift": tm.shift,
            "entries": [[_word_to_obj(w), _elem_to_obj(v)]
                        for w, v in sorted(tm.entries.items())]}


def table_from_obj(obj, ring: Ring) -> TaylorMap:
    tm = TaylorMap(obj["arity"], {}, obj["shift"])
    for w, v in obj["entries"]:
        tm.entries[tuple(tuple(l) for l in w)] = _elem_from_obj(v, ring)
    return tm


def algebroid_to_obj(alg: LieInftyAlgebroid):
    return {"resolution": resolution_to_obj(alg.res),
            "tables": {str(k): table_to_obj(tm) for k, tm in sorted(alg.tables.items())}}


def algebroid_from_obj(obj) -> LieInftyAlgebroid:
    res = resolution_from_obj(obj["resolution"])
    tables = {int(k): table_from_obj(t, res.ring) for k, t in obj["tables"].items()}
    return LieInftyAlgebroid(res, tables)


def algebroid_to_json(alg: LieInftyAlgebroid) -> str:
    return json.dumps(algebroid_to_obj(alg), sort_keys=True, indent=1)


def algebroid_from_json(text: str) -> LieInftyAlgebroid:
    return algebroid_from_obj(json.loads(text))
