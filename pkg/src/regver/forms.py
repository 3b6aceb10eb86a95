"""Canonical graded-commutative algebra of formal differential-form monomials.

Monomials are wedge products of four factor kinds attached to abstract
degree-0 symbols u: the symbol itself (degree 0, bidegree (0,0)), del u
(1, (1,0)), delbar u (1, (0,1)) and the composite second derivative
deldelbar u (2, (1,1)).  An expression is a map from canonically ordered
factor tuples to rational coefficients, so expression equality is plain
map equality.

Canonical factor order puts degree-0 factors first (by symbol id), then
the derivative factors sorted by (symbol id, kind).  Reordering absorbs
the Koszul sign into the coefficient: transposing two odd-degree factors
flips the sign, even-degree factors commute freely, and a repeated
odd-degree factor kills the monomial.  Degree-0 factors may repeat.

Sign convention for the second derivative: deldelbar u is del(delbar(u)),
so delbar(del_(u)) == -deldelbar(u).  Symbols flagged ``closed`` have a
vanishing second derivative (the log|f|^2-type generators).  There is no
deeper alphabet: del_ and delbar annihilate all derivative factors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

ZERO, DEL, DELBAR, DELDELBAR = 0, 1, 2, 3

KIND_NAMES = {ZERO: "u", DEL: "del", DELBAR: "delbar", DELDELBAR: "deldelbar"}

_DEGREE = (0, 1, 1, 2)
_BIDEGREE = ((0, 0), (1, 0), (0, 1), (1, 1))


@dataclass(frozen=True)
class Symbol:
    """Abstract degree-0 generator; ids must be unique within a context."""

    index: int
    name: str = ""
    closed: bool = False  # second derivative vanishes

    def label(self) -> str:
        return self.name or f"u{self.index}"


def symbols(m: int, prefix: str = "u") -> list[Symbol]:
    return [Symbol(k + 1, f"{prefix}{k + 1}") for k in range(m)]


def _sort_key(factor):
    kind, sym = factor
    if kind == ZERO:
        return (0, sym.index, kind)
    return (1, sym.index, kind)


def canonicalize(factors):
    """Sort a factor sequence into canonical order.

    Returns (sign, tuple) with the Koszul sign of the sorting permutation,
    or (0, ()) when the monomial vanishes (repeated odd factor).
    """
    fs = list(factors)
    sign = 1
    for i in range(1, len(fs)):
        j = i
        while j > 0 and _sort_key(fs[j - 1]) > _sort_key(fs[j]):
            if _DEGREE[fs[j - 1][0]] % 2 and _DEGREE[fs[j][0]] % 2:
                sign = -sign
            fs[j - 1], fs[j] = fs[j], fs[j - 1]
            j -= 1
    for a, b in zip(fs, fs[1:]):
        if a == b and _DEGREE[a[0]] % 2:
            return 0, ()
    return sign, tuple(fs)


def monomial_degree(mono) -> int:
    return sum(_DEGREE[kind] for kind, _ in mono)


def monomial_bidegree(mono) -> tuple[int, int]:
    a = sum(_BIDEGREE[kind][0] for kind, _ in mono)
    b = sum(_BIDEGREE[kind][1] for kind, _ in mono)
    return a, b


class FormExpr:
    """Rational combination of canonical wedge monomials."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        # terms are assumed canonical; use from_terms for raw factor lists
        self.terms = {m: c for m, c in (terms or {}).items() if c}

    @classmethod
    def from_terms(cls, pairs) -> "FormExpr":
        """Accumulate (coefficient, factor-sequence) pairs, canonicalizing."""
        acc = {}
        for coeff, factors in pairs:
            coeff = Fraction(coeff)
            if not coeff:
                continue
            sign, mono = canonicalize(factors)
            if sign == 0:
                continue
            c = acc.get(mono, _ZERO_FRAC) + sign * coeff
            if c:
                acc[mono] = c
            else:
                acc.pop(mono, None)
        return cls(acc)

    @classmethod
    def zero(cls) -> "FormExpr":
        return cls()

    @classmethod
    def scalar(cls, c) -> "FormExpr":
        c = Fraction(c)
        return cls({(): c} if c else {})

    @classmethod
    def monomial(cls, coeff, factors) -> "FormExpr":
        return cls.from_terms([(coeff, factors)])

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, FormExpr):
            return self.terms == other.terms
        return NotImplemented

    def __add__(self, other):
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out.get(m, _ZERO_FRAC) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return FormExpr(out)

    def __sub__(self, other):
        return self + (-other)

    def __neg__(self):
        return FormExpr({m: -c for m, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            if not q:
                return FormExpr()
            return FormExpr({m: c * q for m, c in self.terms.items()})
        return NotImplemented

    __rmul__ = __mul__

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        if not self.terms:
            return "FormExpr(0)"
        return f"FormExpr({self.to_text()})"

    def to_text(self) -> str:
        parts = []
        for mono in sorted(self.terms, key=lambda m: tuple(map(_sort_key, m))):
            c = self.terms[mono]
            if mono:
                body = " ".join(_factor_text(f) for f in mono)
                parts.append(f"({c})·{body}" if c != 1 else body)
            else:
                parts.append(str(c))
        return " + ".join(parts)

    def homogeneous_components(self):
        """Group terms by (form degree, Hodge bidegree)."""
        out = {}
        for mono, c in self.terms.items():
            key = (monomial_degree(mono), monomial_bidegree(mono))
            out.setdefault(key, {})[mono] = c
        return {k: FormExpr(v) for k, v in out.items()}


_ZERO_FRAC = Fraction(0)


def _factor_text(factor) -> str:
    kind, sym = factor
    name = sym.label()
    return name if kind == ZERO else f"{KIND_NAMES[kind]}({name})"


def gen(sym: Symbol) -> FormExpr:
    """The degree-0 generator expression of a symbol."""
    return FormExpr({((ZERO, sym),): Fraction(1)})


def factor_expr(kind: int, sym: Symbol, coeff=1) -> FormExpr:
    return FormExpr.monomial(coeff, ((kind, sym),))


def wedge(a: FormExpr, b: FormExpr) -> FormExpr:
    """Bilinear extension of monomial concatenation plus canonicalization."""
    pairs = []
    for m1, c1 in a.terms.items():
        for m2, c2 in b.terms.items():
            pairs.append((c1 * c2, m1 + m2))
    return FormExpr.from_terms(pairs)


# Factor-level actions. del_(delbar u) = +deldelbar u, delbar(del_ u) =
# -deldelbar u; everything else with a derivative factor dies.
_DEL_ACTION = {ZERO: (1, DEL), DEL: None, DELBAR: (1, DELDELBAR), DELDELBAR: None}
_DELBAR_ACTION = {ZERO: (1, DELBAR), DEL: (-1, DELDELBAR), DELBAR: None,
                  DELDELBAR: None}


def _derivation(expr: FormExpr, action) -> FormExpr:
    pairs = []
    for mono, coeff in expr.terms.items():
        prefix_odd = False
        for pos, (kind, sym) in enumerate(mono):
            act = action[kind]
            if act is not None and not (sym.closed and act[1] == DELDELBAR):
                s, newkind = act
                c = coeff * s
                if prefix_odd:
                    c = -c
                pairs.append((c, mono[:pos] + ((newkind, sym),) + mono[pos + 1:]))
            if _DEGREE[kind] % 2:
                prefix_odd = not prefix_odd
    return FormExpr.from_terms(pairs)


def del_(a: FormExpr) -> FormExpr:
    """Holomorphic Dolbeault derivation, bidegree (1,0)."""
    return _derivation(a, _DEL_ACTION)


def delbar(a: FormExpr) -> FormExpr:
    """Antiholomorphic Dolbeault derivation, bidegree (0,1)."""
    return _derivation(a, _DELBAR_ACTION)


def d(a: FormExpr) -> FormExpr:
    """Total differential del_ + delbar; satisfies d(d(a)) == 0."""
    return del_(a) + delbar(a)


_CONJ = {ZERO: (1, ZERO), DEL: (1, DELBAR), DELBAR: (1, DEL),
         DELDELBAR: (-1, DELDELBAR)}


def conjugate(a: FormExpr) -> FormExpr:
    """Complex conjugation for real symbols.

    Swaps del and delbar factors, negates deldelbar factors and fixes the
    degree-0 ones; multiplicative over the wedge in the given order.
    """
    pairs = []
    for mono, coeff in a.terms.items():
        sign = 1
        newmono = []
        for kind, sym in mono:
            s, newkind = _CONJ[kind]
            sign *= s
            newmono.append((newkind, sym))
        pairs.append((coeff * sign, tuple(newmono)))
    return FormExpr.from_terms(pairs)


def bidegree_project(a: FormExpr, hol: int, antihol: int) -> FormExpr:
    """The component of Hodge bidegree exactly (hol, antihol)."""
    if hol < 0 or antihol < 0:
        raise ValueError("bidegrees must be non-negative")
    out = {m: c for m, c in a.terms.items()
           if monomial_bidegree(m) == (hol, antihol)}
    return FormExpr(out)


def project_if(a: FormExpr, keep) -> FormExpr:
    """Keep the monomials whose bidegree satisfies the predicate."""
    return FormExpr({m: c for m, c in a.terms.items()
                     if keep(*monomial_bidegree(m))})


def dlog_piece(syms, i: int) -> FormExpr:
    """Bidegree (i, n-i) piece of d(u_1) ^ ... ^ d(u_n)."""
    n = len(syms)
    if not 0 <= i <= n:
        raise ValueError(f"need 0 <= i <= {n}, got {i}")
    prod = FormExpr.scalar(1)
    for s in syms:
        prod = wedge(prod, d(gen(s)))
    return bidegree_project(prod, i, n - i)


def substitute_zero(a: FormExpr, sym: Symbol) -> FormExpr:
    """Drop every monomial containing any factor built on the symbol."""
    return FormExpr({m: c for m, c in a.terms.items()
                     if all(s != sym for _, s in m)})


def rescale_per_factor(a: FormExpr, scale) -> FormExpr:
    """Multiply each monomial by scale**(number of factors).

    Realizes slot-wise unit changes such as u = -(1/2) log|f|^2, where every
    factor of a monomial picks up one copy of the conversion constant.
    """
    scale = Fraction(scale)
    return FormExpr({m: c * scale ** len(m) for m, c in a.terms.items()})


# -- serialization ----------------------------------------------------------

def to_json_obj(a: FormExpr) -> list:
    """Stable JSON shape: canonically sorted list of monomial records."""
    out = []
    for mono in sorted(a.terms, key=lambda m: tuple(map(_sort_key, m))):
        c = a.terms[mono]
        out.append({
            "coeff": f"{c.numerator}/{c.denominator}",
            "factors": [{"kind": KIND_NAMES[k], "symbol": s.label()}
                        for k, s in mono],
        })
    return out


_LATEX_PLAIN = {ZERO: "{sym}", DEL: r"\partial {sym}", DELBAR: r"\bar\partial {sym}",
                DELDELBAR: r"\partial\bar\partial {sym}"}
_LATEX_LOG = {ZERO: r"\log\lvert {sym}\rvert^2", DEL: r"\tfrac{{d({sym})}}{{{sym}}}",
              DELBAR: r"\tfrac{{d\overline{{{sym}}}}}{{\overline{{{sym}}}}}",
              DELDELBAR: r"\partial\bar\partial\log\lvert {sym}\rvert^2"}


def _latex_symbol(name: str) -> str:
    head = name.rstrip("0123456789")
    tail = name[len(head):]
    if head and tail and head.isalpha():
        return f"{head}_{{{tail}}}"
    return name


def to_latex(a: FormExpr) -> str:
    if not a.terms:
        return "0"
    chunks = []
    for mono in sorted(a.terms, key=lambda m: tuple(map(_sort_key, m))):
        c = a.terms[mono]
        if c.denominator == 1:
            coeff = str(c.numerator)
        else:
            sign = "-" if c < 0 else ""
            coeff = f"{sign}\\tfrac{{{abs(c.numerator)}}}{{{c.denominator}}}"
        factors = []
        for kind, sym in mono:
            table = _LATEX_LOG if sym.closed else _LATEX_PLAIN
            factors.append(table[kind].format(sym=_latex_symbol(sym.label())))
        body = r" \wedge ".join(factors) if factors else "1"
        if coeff == "1" and factors:
            chunks.append(body)
        elif coeff == "-1" and factors:
            chunks.append("-" + body)
        else:
            chunks.append(f"{coeff} \\, {body}" if factors else coeff)
    text = " + ".join(chunks)
    return text.replace("+ -", "- ")
