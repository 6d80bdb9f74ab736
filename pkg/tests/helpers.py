"""Plain helpers shared across test modules: random page elements, table
comparison, and table differences for the coboundary-equivalence checks."""

from oidforge.polyring import VectorField
from oidforge.brackets import PageElement, elem_add, elem_neg, elem_scale
from oidforge.symalg import TaylorMap, enumerate_words


def random_elem(rng, ring, level, rank):
    out = {}
    x = ring.var(0) if ring.nvars else None
    for idx in range(rank):
        c = rng.randint(-2, 2)
        d1 = rng.randint(-1, 1) if x is not None else 0
        if c or d1:
            p = ring.constant(c)
            if d1:
                p = p + d1 * x
            out[(level, idx)] = p
    return out


def random_page(rng, res, arity, shift, with_colzero=True):
    """Random page element over res with entries in the full degree window."""
    ring = res.ring
    P = PageElement(res, res, arity, shift)
    for m in range(-arity, -arity * (res.L + 1) - 1, -1):
        level = -m - shift
        for w in enumerate_words(res.ranks, arity, m):
            if 1 <= level <= res.L:
                e = random_elem(rng, ring, level, res.rank(level))
                if e:
                    P.entries[w] = e
            elif level == 0 and with_colzero:
                combo = random_elem(rng, ring, 1, res.rank(1))
                vf = VectorField(ring, [ring.zero()] * ring.nvars)
                for (lv, idx), c in combo.items():
                    vf = vf + res.anchor_field(idx).scale(c)
                if not vf.is_zero():
                    P.colzero[w] = vf
    return P.prune()


def tm_eq(A, B):
    for w in set(A.entries) | set(B.entries):
        if elem_add(A.entries.get(w, {}), elem_neg(B.entries.get(w, {}))):
            return False
    return True


def tm_add(A, B):
    out = TaylorMap(A.arity, {}, A.shift)
    for w in set(A.entries) | set(B.entries):
        v = elem_add(A.entries.get(w, {}), B.entries.get(w, {}))
        if v:
            out.entries[w] = v
    return out


def tm_scale(A, ring, s):
    out = TaylorMap(A.arity, {}, A.shift)
    for w, v in A.entries.items():
        out.entries[w] = elem_scale(v, ring.constant(s))
    return out


def table_diff(alg_a, alg_b, k):
    """Entrywise difference of the arity-k tables as a defect dictionary."""
    ta = alg_a.tables.get(k)
    tb = alg_b.tables.get(k)
    ea = ta.entries if ta else {}
    eb = tb.entries if tb else {}
    diff = {}
    for w in set(ea) | set(eb):
        d = elem_add(ea.get(w, {}), elem_neg(eb.get(w, {})))
        if d:
            diff[w] = d
    return diff
