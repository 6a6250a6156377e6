"""Sparse polynomial and free-module vector arithmetic over GF(p).

A polynomial is a dict ``{exp: coeff}``; a vector in a free module is a
dict ``{(row, exp): coeff}``. Zero coefficients are never stored.
"""
from .monomials import mono_mul


def padd(a, b, p):
    out = dict(a)
    for e, c in b.items():
        v = (out.get(e, 0) + c) % p
        if v:
            out[e] = v
        else:
            out.pop(e, None)
    return out


def pscale(a, c, p):
    c %= p
    if not c:
        return {}
    return {e: (v * c) % p for e, v in a.items()}


def psub(a, b, p):
    return padd(a, pscale(b, -1, p), p)


def pmul(a, b, p):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = mono_mul(e1, e2)
            v = (out.get(e, 0) + c1 * c2) % p
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def pmono(a, exp, c, p):
    """c * x^exp * a"""
    c %= p
    if not c:
        return {}
    return {mono_mul(e, exp): (v * c) % p for e, v in a.items()}


def ppow(a, k, n, p):
    out = {(0,) * n: 1}
    for _ in range(k):
        out = pmul(out, a, p)
    return out


def vadd(a, b, p):
    return padd(a, b, p)


def vscale(a, c, p):
    return pscale(a, c, p)


def vmono(v, exp, c, p):
    c %= p
    if not c:
        return {}
    return {(i, mono_mul(e, exp)): (x * c) % p for (i, e), x in v.items()}


def vpoly(v, f, p):
    """f * v for a polynomial f and vector v."""
    out = {}
    for (i, e), x in v.items():
        for e2, c in f.items():
            k = (i, mono_mul(e, e2))
            val = (out.get(k, 0) + x * c) % p
            if val:
                out[k] = val
            else:
                out.pop(k, None)
    return out


def poly_to_vec(f, row=0):
    return {(row, e): c for e, c in f.items()}


def vec_entry(v, row):
    return {e: c for (i, e), c in v.items() if i == row}


def vec_rows(v):
    rows = {}
    for (i, e), c in v.items():
        rows.setdefault(i, {})[e] = c
    return rows


def vec_from_rows(rows):
    return {(i, e): c for i, f in rows.items() for e, c in f.items()}


def reindex_rows(v, mapping):
    """Move row i to mapping[i]; rows mapped to None are dropped."""
    out = {}
    for (i, e), c in v.items():
        j = mapping[i]
        if j is not None:
            out[(j, e)] = c
    return out


def shift_rows(v, offset):
    return {(i + offset, e): c for (i, e), c in v.items()}
