"""Exact scalars, vectors, and sparse multivariate polynomials.

Every quantity in this package is an exact rational: scalars are
``fractions.Fraction``, vectors are plain tuples of Fractions, and
polynomials are sparse dicts mapping exponent tuples to nonzero Fraction
coefficients (the zero polynomial is the empty dict).  A vector doubles as
a linear form through the standard pairing ``dot``, so no separate linear
form type is needed.

Nothing here ever touches floating point; polynomial identity is exact
dictionary equality.
"""

from __future__ import annotations

import random
from fractions import Fraction
from math import gcd, lcm

from .errors import DomainError

Vec = tuple[Fraction, ...]

# Exponent tuple (one entry per variable) -> nonzero coefficient.
Poly = dict[tuple[int, ...], Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# vectors


def vec(*entries) -> Vec:
    """Build a vector, coercing ints / strings like "3/4" to Fractions."""
    return tuple(Fraction(e) for e in entries)


def as_vec(entries) -> Vec:
    return tuple(Fraction(e) for e in entries)


def dot(u: Vec, v: Vec) -> Fraction:
    if len(u) != len(v):
        raise ValueError(f"vector length mismatch: {len(u)} vs {len(v)}")
    return sum((a * b for a, b in zip(u, v)), ZERO)


def vadd(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v))


def vsub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v))


def vneg(u: Vec) -> Vec:
    return tuple(-a for a in u)


def vscale(c, u: Vec) -> Vec:
    c = Fraction(c)
    return tuple(c * a for a in u)


def is_zero_vec(u: Vec) -> bool:
    return all(a == 0 for a in u)


def primitive(v) -> Vec:
    """Unique positive scalar multiple of v with coprime integer entries.

    The direction of v is preserved: primitive((-3, 0, 6)) == (-1, 0, 2).
    """
    v = as_vec(v)
    if is_zero_vec(v):
        raise DomainError("primitive vector of the zero vector is undefined")
    denom = lcm(*(e.denominator for e in v))
    ints = [int(e * denom) for e in v]
    g = gcd(*ints)
    return tuple(Fraction(i // g) for i in ints)


def generic_vector(dim: int, vectors, seed=0, attempts: int = 1000) -> Vec:
    """Deterministic-from-seed integer vector pairing nonzero with every input.

    Candidates are drawn with entries in [-999, 999]; a generic draw succeeds
    essentially immediately, so hitting the attempt bound signals a bug.
    """
    vectors = [as_vec(v) for v in vectors]
    rng = random.Random(seed)
    for _ in range(attempts):
        cand = tuple(Fraction(rng.randint(-999, 999)) for _ in range(dim))
        if is_zero_vec(cand):
            continue
        if all(dot(cand, v) != 0 for v in vectors):
            return cand
    raise RuntimeError(
        f"internal error: no generic vector found in {attempts} attempts"
    )


# ---------------------------------------------------------------------------
# serialization: rationals print as "p/q" (or "p" when q == 1)


def format_rat(q) -> str:
    return str(Fraction(q))


def parse_rat(s) -> Fraction:
    if not isinstance(s, (str, int)):
        raise ValueError(f"expected rational string, got {s!r}")
    return Fraction(s)


def vec_to_json(v: Vec) -> list[str]:
    return [format_rat(e) for e in v]


def vec_from_json(items) -> Vec:
    if not isinstance(items, (list, tuple)):
        raise ValueError(f"expected list of rational strings, got {items!r}")
    return tuple(parse_rat(e) for e in items)


# ---------------------------------------------------------------------------
# sparse polynomials


def poly_zero() -> Poly:
    return {}


def poly_const(nvars: int, value) -> Poly:
    c = Fraction(value)
    if c == 0:
        return {}
    return {(0,) * nvars: c}


def poly_var(nvars: int, index: int) -> Poly:
    if not 0 <= index < nvars:
        raise ValueError(f"variable index {index} out of range for {nvars} vars")
    e = [0] * nvars
    e[index] = 1
    return {tuple(e): ONE}


def linear_poly(coeffs: Vec) -> Poly:
    """Degree-1 polynomial sum(coeffs[i] * x_i), no constant term."""
    out: Poly = {}
    n = len(coeffs)
    for i, c in enumerate(coeffs):
        if c != 0:
            e = [0] * n
            e[i] = 1
            out[tuple(e)] = Fraction(c)
    return out


def poly_add(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, ZERO) + c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_sub(a: Poly, b: Poly) -> Poly:
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, ZERO) - c
        if s:
            out[mono] = s
        else:
            out.pop(mono, None)
    return out


def poly_neg(a: Poly) -> Poly:
    return {mono: -c for mono, c in a.items()}


def poly_scale(c, a: Poly) -> Poly:
    c = Fraction(c)
    if c == 0:
        return {}
    return {mono: c * coeff for mono, coeff in a.items()}


def poly_mul(a: Poly, b: Poly) -> Poly:
    if not a or not b:
        return {}
    out: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            mono = tuple(x + y for x, y in zip(ma, mb))
            s = out.get(mono, ZERO) + ca * cb
            if s:
                out[mono] = s
            else:
                out.pop(mono, None)
    return out


def poly_pow(a: Poly, k: int) -> Poly:
    if k < 0:
        raise ValueError("negative polynomial power")
    nvars = len(next(iter(a))) if a else 0
    out = poly_const(nvars, 1)
    for _ in range(k):
        out = poly_mul(out, a)
    return out


def poly_eval(f: Poly, point: Vec) -> Fraction:
    total = ZERO
    for mono, c in f.items():
        term = c
        for e, x in zip(mono, point):
            if e:
                term *= x**e
        total += term
    return total


def poly_degree(f: Poly) -> int:
    """Total degree; the zero polynomial has degree -1 by convention."""
    if not f:
        return -1
    return max(sum(mono) for mono in f)


def homogeneous_degree(f: Poly) -> int | None:
    """Common total degree of all terms, -1 for zero, None if mixed."""
    if not f:
        return -1
    degs = {sum(mono) for mono in f}
    if len(degs) == 1:
        return degs.pop()
    return None


def monomials(nvars: int, degree: int) -> list[tuple[int, ...]]:
    """All exponent tuples of the given total degree, descending lex order."""
    if degree < 0:
        return []
    if nvars == 0:
        return [()] if degree == 0 else []
    out: list[tuple[int, ...]] = []

    def rec(prefix: tuple[int, ...], remaining: int, slots: int) -> None:
        if slots == 1:
            out.append(prefix + (remaining,))
            return
        for e in range(remaining, -1, -1):
            rec(prefix + (e,), remaining - e, slots - 1)

    rec((), degree, nvars)
    return out


# ---------------------------------------------------------------------------
# divisibility by a nonzero linear form


def pivot_index(ell: Vec) -> int:
    """Coefficient index used to eliminate a variable: largest absolute
    value, lowest index on ties.  Deterministic so constraint matrices and
    golden outputs are reproducible."""
    best = -1
    best_abs = ZERO
    for i, c in enumerate(ell):
        a = abs(c)
        if a > best_abs:
            best, best_abs = i, a
    if best < 0:
        raise DomainError("zero linear form")
    return best


def restrict_to_hyperplane(ell: Vec, f: Poly, piv: int | None = None) -> Poly:
    """Substitute the solution of ell = 0 for its pivot variable in f.

    The result has exponent 0 in the pivot slot; it is identically zero
    exactly when ell divides f.
    """
    ell = as_vec(ell)
    if piv is None:
        piv = pivot_index(ell)
    n = len(ell)
    a = ell[piv]
    sol: Poly = {}
    for j, c in enumerate(ell):
        if j != piv and c != 0:
            e = [0] * n
            e[j] = 1
            sol[tuple(e)] = -c / a

    powers: dict[int, Poly] = {0: poly_const(n, 1)}

    def sol_pow(k: int) -> Poly:
        if k not in powers:
            powers[k] = poly_mul(sol_pow(k - 1), sol)
        return powers[k]

    out: Poly = {}
    for mono, coeff in f.items():
        rest = list(mono)
        t = rest[piv]
        rest[piv] = 0
        out = poly_add(out, poly_mul({tuple(rest): coeff}, sol_pow(t)))
    return out


def divides_linear(ell: Vec, f: Poly) -> bool:
    """True iff f = ell * g for some polynomial g."""
    ell = as_vec(ell)
    if is_zero_vec(ell):
        raise DomainError("divisibility by the zero linear form is undefined")
    return not restrict_to_hyperplane(ell, f)


def poly_quotient_by_linear(ell: Vec, f: Poly) -> Poly:
    """Exact quotient g with f = ell * g; raises if ell does not divide f.

    Synthetic division along the pivot variable: writing ell = a*x_p + r
    with r free of x_p, the layers of f by x_p-exponent are peeled top down.
    """
    ell = as_vec(ell)
    if is_zero_vec(ell):
        raise DomainError("division by the zero linear form is undefined")
    if not f:
        return {}
    piv = pivot_index(ell)
    a = ell[piv]
    rem = list(ell)
    rem[piv] = ZERO
    r = linear_poly(tuple(rem))

    layers: dict[int, Poly] = {}
    for mono, coeff in f.items():
        rest = list(mono)
        t = rest[piv]
        rest[piv] = 0
        layers.setdefault(t, {})[tuple(rest)] = coeff
    top = max(layers)

    quotient: Poly = {}
    for k in range(top, 0, -1):
        qk = poly_scale(1 / a, layers.get(k, {}))
        for mono, coeff in qk.items():
            e = list(mono)
            e[piv] = k - 1
            quotient[tuple(e)] = coeff
        layers[k - 1] = poly_sub(layers.get(k - 1, {}), poly_mul(qk, r))
    if layers.get(0):
        raise DomainError("linear form does not divide the polynomial")
    return quotient


# ---------------------------------------------------------------------------
# canonical text and JSON forms


def _grlex_descending(f: Poly) -> list[tuple[int, ...]]:
    return sorted(f, key=lambda m: (sum(m), m), reverse=True)


_SHORT_NAMES = ("x", "y", "z", "w")


def var_names(nvars: int) -> list[str]:
    if nvars <= len(_SHORT_NAMES):
        return list(_SHORT_NAMES[:nvars])
    return [f"x{i + 1}" for i in range(nvars)]


def poly_str(f: Poly, names: list[str] | None = None) -> str:
    """Canonical human-readable form, graded lexicographic term order."""
    if not f:
        return "0"
    monos = _grlex_descending(f)
    if names is None:
        names = var_names(len(monos[0]))
    pieces: list[str] = []
    for mono, first in zip(monos, (True,) + (False,) * (len(monos) - 1)):
        c = f[mono]
        sign = "-" if c < 0 else "+"
        mag = abs(c)
        factors = []
        for name, e in zip(names, mono):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if not factors:
            body = format_rat(mag)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = "*".join([format_rat(mag)] + factors)
        if first:
            pieces.append(body if sign == "+" else f"-{body}")
        else:
            pieces.append(f"{sign} {body}")
    return " ".join(pieces)


def poly_to_json(f: Poly) -> dict[str, str]:
    """Map exponent strings like "2,0" to coefficient strings, grlex order."""
    return {
        ",".join(str(e) for e in mono): format_rat(f[mono])
        for mono in _grlex_descending(f)
    }


def poly_from_json(obj, nvars: int) -> Poly:
    if not isinstance(obj, dict):
        raise ValueError(f"expected monomial/coefficient map, got {obj!r}")
    out: Poly = {}
    for key, val in obj.items():
        parts = str(key).split(",")
        if len(parts) != nvars:
            raise ValueError(f"exponent key {key!r} does not have {nvars} entries")
        mono = tuple(int(p) for p in parts)
        if any(e < 0 for e in mono):
            raise ValueError(f"negative exponent in key {key!r}")
        c = parse_rat(val)
        if c != 0:
            out[mono] = c
    return out
