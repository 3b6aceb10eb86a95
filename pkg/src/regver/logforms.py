"""Specialization of the abstract calculus to rational-function arguments.

A function argument f enters through its Green generator -(1/2) log|f|^2,
a closed degree-0 symbol: its second derivative vanishes, which is what
kills every deldelbar term of the abstract identities.  Expressions are
kept in "log units", i.e. over the alphabet

    log|f|^2   (degree-0 factor),
    df/f       (del factor),
    dfbar/fbar (delbar factor),

obtained from the abstract forms by rescaling each factor by -1/2.  With
that normalization the basis forms S_m^i(f_1..f_m) have coefficient 1 per
permutation monomial and T_1(f) = -(1/2) log|f|^2.

The Goncharov family is assembled from log|f| = (1/2) log|f|^2,
dlog|f| = (df/f + dfbar/fbar)/2 and di arg f = (df/f - dfbar/fbar)/2, with
coefficients c_{j,m} = 1/((2j+1)!(m-2j-1)!); the comparison verifier
checks it agrees with the Wang family, slot for slot.
"""

from __future__ import annotations

import math
from fractions import Fraction
from time import perf_counter

from .deligne import DeligneElement, build_s, build_t
from .forms import (DEL, DELBAR, ZERO, FormExpr, Symbol, factor_expr,
                    rescale_per_factor, substitute_zero, to_json_obj, wedge)
from .report import Report, report
from .residues import Ambient, FaceDivisor, WedgeElement

HALF = Fraction(1, 2)


def log_symbols(m: int, prefix: str = "f") -> list[Symbol]:
    """Closed symbols standing for m generic function labels."""
    return [Symbol(k + 1, f"{prefix}{k + 1}", closed=True) for k in range(m)]


def ambient_symbols(ambient: Ambient) -> list[Symbol]:
    """Closed symbols bound to the canonical basis monomials of an ambient."""
    return [Symbol(k + 1, f.label(), closed=True)
            for k, f in enumerate(ambient.basis_functions())]


def build_s_log(fs, i: int) -> FormExpr:
    """S_m^i on function slots, in log units."""
    _require_closed(fs)
    return rescale_per_factor(build_s(fs, i), -HALF)


def build_t_log(fs) -> FormExpr:
    """T_m on function slots, in log units; T_0 = 1."""
    _require_closed(fs)
    return rescale_per_factor(build_t(fs).expr, -HALF)


def build_t_log_element(fs) -> DeligneElement:
    """T_m in log units with its degree/twist annotation."""
    m = len(fs)
    return DeligneElement(build_t_log(fs), m, m) if m else \
        DeligneElement(FormExpr.scalar(1), 0, 0)


def _require_closed(fs):
    for s in fs:
        if not s.closed:
            raise ValueError(f"symbol {s.label()} is not a function symbol")


def default_cjm(j: int, m: int) -> Fraction:
    return Fraction(1, math.factorial(2 * j + 1) * math.factorial(m - 2 * j - 1))


def build_goncharov(fs, cjm=default_cjm) -> FormExpr:
    """Goncharov's alternating log/arg family on m function slots.

    (-1)^m sum over j with 2j+1 <= m of c_{j,m} Alt_m of
    log|f_1| dlog|f_2| ^ .. ^ dlog|f_{2j+1}| ^ diarg f_{2j+2} ^ .. ^ diarg f_m.
    The optional cjm hook exists for fault injection in the exit-code tests.
    """
    from .deligne import signed_permutations

    m = len(fs)
    if m < 1:
        raise ValueError("need at least one function slot")
    _require_closed(fs)
    total = FormExpr.zero()
    outer = Fraction((-1) ** m)
    for perm, sign in signed_permutations(fs):
        j = 0
        while 2 * j + 1 <= m:
            expr = factor_expr(ZERO, perm[0], outer * sign * cjm(j, m) * HALF)
            for k in range(1, m):
                s = perm[k]
                if k <= 2 * j:  # dlog slot
                    one_form = (factor_expr(DEL, s) + factor_expr(DELBAR, s)) * HALF
                else:  # diarg slot
                    one_form = (factor_expr(DEL, s) - factor_expr(DELBAR, s)) * HALF
                expr = wedge(expr, one_form)
            total = total + expr
            j += 1
    return total


def verify_goncharov_equals_wang(m: int, cjm=default_cjm) -> Report:
    """Goncharov's family coincides with the Wang family on generic slots."""
    if m < 1:
        raise ValueError("m must be >= 1")
    t0 = perf_counter()
    fs = log_symbols(m)
    gonch = build_goncharov(fs, cjm)
    wang = build_t_log(fs)
    bad = None
    if gonch != wang:
        diff = to_json_obj(gonch - wang)
        bad = {"m": m, "difference_term_count": len(diff),
               "difference": diff[:40]}
    return report("goncharov-wang", {"m": m}, bad, perf_counter() - t0,
                  {"monomials": len(wang)})


# -- geometric families ------------------------------------------------------

def build_w(m: int) -> FormExpr:
    """Wang's form on the m-fold product of lines: T_m(y_1/x_1 .. y_m/x_m)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return build_t_log(ambient_symbols(Ambient(m, 0)))


def build_g(m: int) -> FormExpr:
    """Goncharov's geometric form on P^m: T_m(z_1/z_0 .. z_m/z_0)."""
    if m < 0:
        raise ValueError("m must be >= 0")
    return build_t_log(ambient_symbols(Ambient(0, m)))


def build_m(n: int, m: int) -> FormExpr:
    """Mixed family on (P^1)^n x P^m: T_{n+m} on lines then z-ratios."""
    if n < 0 or m < 0:
        raise ValueError("n and m must be >= 0")
    return build_t_log(ambient_symbols(Ambient(n, m)))


def wang_form(w: WedgeElement) -> FormExpr:
    """Multilinear alternating extension of the Wang family to wedges.

    Expands over the canonical basis wedges of the ambient, applying T to
    each basis tuple with the stored integer coefficient.
    """
    syms = ambient_symbols(w.ambient)
    total = FormExpr.zero()
    for subset, coeff in w.terms.items():
        total = total + build_t_log([syms[j] for j in subset]) * coeff
    return total


def expand_in_basis(expr: FormExpr, binding: dict[Symbol, list[int]],
                    basis_syms: list[Symbol]) -> FormExpr:
    """Rewrite factors on bound symbols as combinations of basis symbols.

    Realizes the alphabet identifications log|fg|^2 = log|f|^2 + log|g|^2
    and d(fg)/(fg) = df/f + dg/g for monomial arguments.
    """
    total = FormExpr.zero()
    for mono, coeff in expr.terms.items():
        acc = FormExpr.scalar(coeff)
        for kind, sym in mono:
            vec = binding[sym]
            lin = FormExpr.zero()
            for k, a in enumerate(vec):
                if a:
                    lin = lin + factor_expr(kind, basis_syms[k], a)
            acc = wedge(acc, lin)
        total = total + acc
    return total


def verify_vanishing_on_diagonal(m: int) -> Report:
    """Killing any single slot annihilates the Wang form on (P^1)^m."""
    if m < 1:
        raise ValueError("m must be >= 1")
    t0 = perf_counter()
    syms = ambient_symbols(Ambient(m, 0))
    expr = build_t_log(syms)
    bad = None
    for i, s in enumerate(syms, start=1):
        killed = substitute_zero(expr, s)
        if not killed.is_zero():
            bad = {"m": m, "slot": i, "survivors": to_json_obj(killed)[:20]}
            break
    return report("vanishing", {"m": m}, bad, perf_counter() - t0,
                  {"monomials": len(expr)})


# -- boundary verifiers at the residue level ---------------------------------

def _boundary_check(suite: str, params: dict, ambient: Ambient,
                    expected_sign) -> Report:
    """Shared sweep: for every coordinate divisor d of the ambient, the
    residue transport -T(Res_d(omega)) must equal the signed standard form
    of the divisor geometry; expected_sign(divisor) supplies the sign."""
    t0 = perf_counter()
    wedge_el = WedgeElement.from_functions(ambient.basis_functions())
    bad = None
    table = {}
    for div in ambient.divisors():
        res = wedge_el.residue(div)
        table[div.label()] = res.to_json_obj()
        lhs = -wang_form(res)
        target_syms = ambient_symbols(div.target())
        rhs = build_t_log(target_syms) * expected_sign(div)
        if lhs != rhs:
            diff = to_json_obj(lhs - rhs)
            bad = {"divisor": div.label(), "expected_sign": expected_sign(div),
                   "residue": res.to_json_obj(),
                   "difference_term_count": len(diff), "difference": diff[:40]}
            break
    stats = {"divisors": len(ambient.divisors()), "residues": table}
    return report(suite, params, bad, perf_counter() - t0, stats)


def verify_wang_boundary(m: int) -> Report:
    """Cubical boundary of the Wang current at the residue level.

    The divisor y_i = 0 is the j = 0 face of the i-th line and x_i = 0 the
    j = 1 face; each must contribute the sign (-1)^(i+j).
    """
    if m < 1:
        raise ValueError("m must be >= 1")

    def sign(div: FaceDivisor) -> int:
        kind, i = div.coord
        j = 0 if kind == "y" else 1
        return (-1) ** (i + j)

    return _boundary_check("wang-boundary", {"m": m}, Ambient(m, 0), sign)


def verify_goncharov_boundary(m: int) -> Report:
    """Simplicial boundary of the Goncharov current at the residue level:
    the divisor z_i = 0 carries the sign (-1)^i."""
    if m < 1:
        raise ValueError("m must be >= 1")

    def sign(div: FaceDivisor) -> int:
        return (-1) ** div.coord[1]

    return _boundary_check("goncharov-boundary", {"m": m}, Ambient(0, m), sign)


def verify_mixed_boundary(n: int, m: int) -> Report:
    """Boundary of the mixed family: cubical faces keep (-1)^(i+j), the
    simplicial faces pick up the extra cross sign (-1)^n."""
    if n < 0 or m < 0 or n + m < 1:
        raise ValueError("need n, m >= 0 with n + m >= 1")

    def sign(div: FaceDivisor) -> int:
        kind, i = div.coord
        if kind == "z":
            return (-1) ** n * (-1) ** i
        j = 0 if kind == "y" else 1
        return (-1) ** (i + j)

    return _boundary_check("mixed-boundary", {"n": n, "m": m},
                           Ambient(n, m), sign)
