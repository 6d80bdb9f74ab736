"""Exact rational polynomial rings, quotient rings, monomial orders, Groebner bases, derivations."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction


class RingMismatch(Exception):
    """Raised when operands live in different rings."""


class ParseError(Exception):
    """Raised on malformed polynomial text."""


@dataclass(frozen=True)
class MonomialOrder:
    """Total monomial order: 'grevlex' or 'lex', with an optional variable priority permutation."""

    tag: str = "grevlex"
    perm: tuple[int, ...] | None = None

    def key(self, exps: tuple[int, ...]):
        """Sort key; larger key = larger monomial."""
        e = exps if self.perm is None else tuple(exps[p] for p in self.perm)
        if self.tag == "lex":
            return e
        if self.tag == "grevlex":
            # higher total degree first; ties broken by smaller last nonzero of the difference,
            # encoded as reversed negated exponents
            return (sum(e), tuple(-x for x in reversed(e)))
        raise ValueError(f"unknown order tag {self.tag!r}")


class Ring:
    """Polynomial ring QQ[x_1..x_d] or a quotient by a precomputed reduced Groebner basis."""

    def __init__(self, variables, order: MonomialOrder | None = None, quotient=None):
        self.variables = tuple(variables)
        self.order = order or MonomialOrder()
        self.quotient = tuple(quotient) if quotient else None
        self._key = (self.variables, self.order.tag, self.order.perm,
                     None if self.quotient is None else tuple(p._freeze() for p in self.quotient))

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __eq__(self, other):
        return isinstance(other, Ring) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        base = f"QQ[{','.join(self.variables)}]"
        if self.quotient:
            base += "/<" + ", ".join(str(p) for p in self.quotient) + ">"
        return base

    # --- constructors -------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return self.constant(1)

    def constant(self, c) -> "Poly":
        c = Fraction(c)
        if c == 0:
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i: int) -> "Poly":
        e = [0] * self.nvars
        e[i] = 1
        return Poly(self, {tuple(e): Fraction(1)})

    def gens(self) -> list["Poly"]:
        return [self.var(i) for i in range(self.nvars)]

    def monomial(self, exps, coeff=1) -> "Poly":
        c = Fraction(coeff)
        if c == 0:
            return self.zero()
        return Poly(self, {tuple(exps): c})

    def quotient_ring(self, ideal_gens, order: MonomialOrder | None = None) -> "Ring":
        """Quotient by an ideal: computes the reduced Groebner basis once and stores it."""
        order = order or self.order
        ambient = Ring(self.variables, order)
        lifted = [Poly(ambient, dict(g.terms)) for g in ideal_gens]
        basis = groebner(lifted, order)
        return Ring(self.variables, order, quotient=basis)

    def ambient(self) -> "Ring":
        """The polynomial ring underlying a quotient ring (self if not a quotient)."""
        if self.quotient is None:
            return self
        return Ring(self.variables, self.order)

    def reduce(self, terms: dict) -> dict:
        """Normal form of a raw term dict modulo the quotient ideal (identity for free rings)."""
        if self.quotient is None:
            return terms
        ambient = self.ambient()
        rem, _ = divide(Poly(ambient, terms), list(self.quotient), self.order)
        return rem.terms


class Poly:
    """Sparse polynomial: map exponent-vector -> Fraction, canonical modulo the ring's quotient."""

    __slots__ = ("ring", "terms", "_frozen")

    def __init__(self, ring: Ring, terms: dict, reduce: bool = True):
        if reduce and ring.quotient is not None:
            terms = ring.reduce(terms)
        self.ring = ring
        self.terms = {e: c for e, c in terms.items() if c}
        self._frozen = None

    def _freeze(self):
        if self._frozen is None:
            self._frozen = tuple(sorted(self.terms.items()))
        return self._frozen

    # --- predicates ---------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(all(x == 0 for x in e) for e in self.terms)

    def constant_value(self) -> Fraction:
        return self.terms.get((0,) * self.ring.nvars, Fraction(0))

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    # --- arithmetic ---------------------------------------------------------

    def _check(self, other: "Poly"):
        if self.ring != other.ring:
            raise RingMismatch(f"{self.ring} vs {other.ring}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        self._check(other)
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = terms.get(e, Fraction(0)) + c
        return Poly(self.ring, terms, reduce=False)

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.ring, {e: -c for e, c in self.terms.items()}, reduce=False)

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            c = Fraction(other)
            if c == 0:
                return self.ring.zero()
            return Poly(self.ring, {e: k * c for e, k in self.terms.items()}, reduce=False)
        self._check(other)
        terms: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                terms[e] = terms.get(e, Fraction(0)) + c1 * c2
        return Poly(self.ring, terms)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = self.ring.one()
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring.constant(other)
        return isinstance(other, Poly) and self.ring == other.ring and self.terms == other.terms

    def __hash__(self):
        return hash((self.ring, self._freeze()))

    # --- calculus -----------------------------------------------------------

    def derivative(self, i: int) -> "Poly":
        """Partial derivative with respect to variable i (computed on the stored representative)."""
        terms: dict = {}
        for e, c in self.terms.items():
            if e[i] == 0:
                continue
            e2 = list(e)
            e2[i] -= 1
            terms[tuple(e2)] = terms.get(tuple(e2), Fraction(0)) + c * e[i]
        return Poly(self.ring, terms)

    def evaluate(self, point) -> Fraction:
        """Evaluate at a rational point (length-d sequence)."""
        out = Fraction(0)
        for e, c in self.terms.items():
            v = c
            for x, a in zip(point, e):
                v *= Fraction(x) ** a
            out += v
        return out

    def map_ring(self, ring: Ring) -> "Poly":
        """Reinterpret the representative in another ring with the same variables."""
        if len(ring.variables) != self.ring.nvars:
            raise RingMismatch("variable count differs")
        return Poly(ring, dict(self.terms))

    # --- leading data -------------------------------------------------------

    def leading(self, order: MonomialOrder | None = None):
        """(exponent, coeff) of the leading term."""
        order = order or self.ring.order
        e = max(self.terms, key=order.key)
        return e, self.terms[e]

    def monic(self, order: MonomialOrder | None = None) -> "Poly":
        if self.is_zero():
            return self
        _, c = self.leading(order)
        return self * (Fraction(1) / c)

    def __repr__(self):
        return poly_to_string(self)


# --- division and Groebner bases -------------------------------------------


def _divides(e1, e2) -> bool:
    return all(a <= b for a, b in zip(e1, e2))


def _exp_sub(e2, e1):
    return tuple(b - a for a, b in zip(e1, e2))


def _exp_lcm(e1, e2):
    return tuple(max(a, b) for a, b in zip(e1, e2))


def divide(f: Poly, basis: list[Poly], order: MonomialOrder | None = None):
    """Multivariate division: f = sum(cofactor_i * basis_i) + remainder.

    Deterministic: among reducers whose leading term divides, the lowest basis index wins.
    Returns (remainder, cofactors).
    """
    ring = f.ring
    order = order or ring.order
    lead = []
    for b in basis:
        lead.append(None if b.is_zero() else b.leading(order))
    work = dict(f.terms)
    rem: dict = {}
    cof = [dict() for _ in basis]
    while work:
        e = max(work, key=order.key)
        c = work[e]
        for i, ld in enumerate(lead):
            if ld is not None and _divides(ld[0], e):
                q_exp = _exp_sub(e, ld[0])
                q_c = c / ld[1]
                cof[i][q_exp] = cof[i].get(q_exp, Fraction(0)) + q_c
                for be, bc in basis[i].terms.items():
                    ne = tuple(a + b for a, b in zip(be, q_exp))
                    work[ne] = work.get(ne, Fraction(0)) - q_c * bc
                    if work[ne] == 0:
                        del work[ne]
                break
        else:
            rem[e] = rem.get(e, Fraction(0)) + c
            del work[e]
    remainder = Poly(ring, rem, reduce=False)
    cofactors = [Poly(ring, d, reduce=False) for d in cof]
    return remainder, cofactors


def normal_form_with_cofactors(f: Poly, basis: list[Poly], order: MonomialOrder | None = None):
    """Spec-named alias for division with cofactors."""
    return divide(f, basis, order)


def normal_form(f: Poly, basis: list[Poly], order: MonomialOrder | None = None) -> Poly:
    return divide(f, basis, order)[0]


def s_poly(f: Poly, g: Poly, order: MonomialOrder) -> Poly:
    ef, cf = f.leading(order)
    eg, cg = g.leading(order)
    lcm = _exp_lcm(ef, eg)
    mf = Poly(f.ring, {_exp_sub(lcm, ef): Fraction(1) / cf}, reduce=False)
    mg = Poly(g.ring, {_exp_sub(lcm, eg): Fraction(1) / cg}, reduce=False)
    return mf * f - mg * g


def groebner(gens: list[Poly], order: MonomialOrder | None = None) -> list[Poly]:
    """Reduced Groebner basis by Buchberger's algorithm; deterministic for fixed input order."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    ring = gens[0].ring
    if ring.quotient is not None:
        raise ValueError("groebner expects a free polynomial ring")
    order = order or ring.order
    basis = [g.monic(order) for g in gens]
    pairs = [(i, j) for i in range(len(basis)) for j in range(i + 1, len(basis))]
    while pairs:
        # normal selection: smallest lcm first for stability
        pairs.sort(key=lambda ij: order.key(_exp_lcm(basis[ij[0]].leading(order)[0],
                                                     basis[ij[1]].leading(order)[0])))
        i, j = pairs.pop(0)
        ei, _ = basis[i].leading(order)
        ej, _ = basis[j].leading(order)
        if _exp_lcm(ei, ej) == tuple(a + b for a, b in zip(ei, ej)):
            continue  # coprime leading terms: S-polynomial reduces to zero
        r, _ = divide(s_poly(basis[i], basis[j], order), basis, order)
        if not r.is_zero():
            r = r.monic(order)
            pairs.extend((k, len(basis)) for k in range(len(basis)))
            basis.append(r)
    return _interreduce(basis, order)


def _interreduce(basis: list[Poly], order: MonomialOrder) -> list[Poly]:
    """Minimal then reduced basis, sorted by leading monomial (descending), monic."""
    elems = [b.monic(order) for b in basis if not b.is_zero()]
    leads = [b.leading(order)[0] for b in elems]
    minimal = []
    for i, b in enumerate(elems):
        dominated = False
        for j in range(len(elems)):
            if j != i and _divides(leads[j], leads[i]) and (leads[j] != leads[i] or j < i):
                dominated = True
                break
        if not dominated:
            minimal.append(b)
    # tail-reduce each element against the others (leading terms are stable)
    out = list(minimal)
    for i in range(len(out)):
        others = out[:i] + out[i + 1:]
        if others:
            out[i] = divide(out[i], others, order)[0].monic(order)
    out.sort(key=lambda p: order.key(p.leading(order)[0]), reverse=True)
    return out


def buchberger_criterion(basis: list[Poly], order: MonomialOrder | None = None) -> bool:
    """True iff all S-polynomials of the basis reduce to zero (used by property tests)."""
    if not basis:
        return True
    order = order or basis[0].ring.order
    for i in range(len(basis)):
        for j in range(i + 1, len(basis)):
            r, _ = divide(s_poly(basis[i], basis[j], order), basis, order)
            if not r.is_zero():
                return False
    return True


# --- vector fields ----------------------------------------------------------


class VectorField:
    """Derivation sum_a X^a d/dx_a with polynomial coefficients."""

    __slots__ = ("ring", "coeffs")

    def __init__(self, ring: Ring, coeffs):
        coeffs = tuple(coeffs)
        if len(coeffs) != ring.nvars:
            raise RingMismatch("coefficient vector length must equal the number of variables")
        self.ring = ring
        self.coeffs = coeffs

    def apply(self, f: Poly) -> Poly:
        if f.ring != self.ring:
            raise RingMismatch("vector field and polynomial live in different rings")
        out = self.ring.zero()
        for a, xa in enumerate(self.coeffs):
            if not xa.is_zero():
                out = out + xa * f.derivative(a)
        return out

    def commutator(self, other: "VectorField") -> "VectorField":
        if other.ring != self.ring:
            raise RingMismatch("mismatched rings")
        coeffs = [self.apply(other.coeffs[a]) - other.apply(self.coeffs[a])
                  for a in range(self.ring.nvars)]
        return VectorField(self.ring, coeffs)

    def __add__(self, other):
        return VectorField(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        return VectorField(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return VectorField(self.ring, [-a for a in self.coeffs])

    def scale(self, f) -> "VectorField":
        return VectorField(self.ring, [f * a for a in self.coeffs])

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coeffs)

    def __eq__(self, other):
        return (isinstance(other, VectorField) and self.ring == other.ring
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.ring, tuple(p._freeze() for p in self.coeffs)))

    def __repr__(self):
        parts = []
        for a, c in enumerate(self.coeffs):
            if not c.is_zero():
                parts.append(f"({c})*d/d{self.ring.variables[a]}")
        return " + ".join(parts) if parts else "0"


def apply_vf(X: VectorField, f: Poly) -> Poly:
    """Spec-named alias: apply a derivation to a polynomial."""
    return X.apply(f)


# --- text grammar -----------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<name>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[\^\*\+\-\(\)]))")


def parse_poly(text: str, ring: Ring) -> Poly:
    """Parse the plain grammar: terms `c*x1^a*x2^b` joined by + and -."""
    pos = 0
    tokens = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            if text[pos:].strip() == "":
                break
            raise ParseError(f"bad token at {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            tokens.append(("num", m.group("num")))
        elif m.group("name"):
            tokens.append(("name", m.group("name")))
        else:
            tokens.append(("op", m.group("op")))
    if not tokens:
        raise ParseError("empty polynomial text")

    var_index = {v: i for i, v in enumerate(ring.variables)}
    result = ring.zero()
    i = 0
    n = len(tokens)
    while i < n:
        sign = Fraction(1)
        while i < n and tokens[i] == ("op", "+") or i < n and tokens[i] == ("op", "-"):
            if tokens[i] == ("op", "-"):
                sign = -sign
            i += 1
        if i >= n:
            raise ParseError("dangling sign")
        coeff = sign
        exps = [0] * ring.nvars
        expect_factor = True
        while i < n and expect_factor:
            kind, val = tokens[i]
            if kind == "num":
                coeff *= Fraction(val)
                i += 1
            elif kind == "name":
                if val not in var_index:
                    raise ParseError(f"unknown variable {val!r}")
                power = 1
                i += 1
                if i < n and tokens[i] == ("op", "^"):
                    i += 1
                    if i >= n or tokens[i][0] != "num" or "/" in tokens[i][1]:
                        raise ParseError("exponent must be a nonnegative integer")
                    power = int(tokens[i][1])
                    i += 1
                exps[var_index[val]] += power
            else:
                raise ParseError(f"unexpected {val!r} in term")
            if i < n and tokens[i] == ("op", "*"):
                i += 1
                continue
            expect_factor = False
        if i < n and tokens[i] not in (("op", "+"), ("op", "-")):
            raise ParseError(f"expected '+' or '-' before {tokens[i][1]!r}")
        result = result + ring.monomial(exps, coeff)
    return result


def poly_to_string(p: Poly) -> str:
    """Canonical text form: terms sorted descending by the ring's order."""
    if p.is_zero():
        return "0"
    order = p.ring.order
    items = sorted(p.terms.items(), key=lambda ec: order.key(ec[0]), reverse=True)
    parts = []
    for k, (e, c) in enumerate(items):
        factors = []
        for i, a in enumerate(e):
            if a == 1:
                factors.append(p.ring.variables[i])
            elif a > 1:
                factors.append(f"{p.ring.variables[i]}^{a}")
        mag = abs(c)
        if not factors or mag != 1:
            factors.insert(0, str(mag))
        body = "*".join(factors)
        if k == 0:
            parts.append(body if c > 0 else f"-{body}")
        else:
            parts.append(f"+ {body}" if c > 0 else f"- {body}")
    return " ".join(parts)


def parse_vector_field(text: str, ring: Ring) -> VectorField:
    """Parse `p1; p2; ...` (one coefficient polynomial per variable, ; separated)."""
    chunks = [c.strip() for c in text.split(";")]
    if len(chunks) != ring.nvars:
        raise ParseError(f"expected {ring.nvars} coefficients separated by ';'")
    return VectorField(ring, [parse_poly(c, ring) if c not in ("", "0") else ring.zero()
                              for c in chunks])
