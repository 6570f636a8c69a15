"""Pure-Python arithmetic kernels (the fallback when the compiled core is absent)."""

from gmpy2 import mpq

_ZERO = mpq(0)


def cyc_mul(a, b, sparse_powers, n):
    """Product of two coordinate vectors in Q(zeta_n).

    ``sparse_powers[p]`` lists the nonzero (index, coefficient) pairs of
    zeta^p in the power basis.
    """
    out = [_ZERO] * len(a)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            xy = x * y
            for k, c in sparse_powers[(i + j) % n]:
                out[k] += c * xy
    return tuple(out)


def poly_mul(terms_a, terms_b, add_exponents):
    """Product of two sparse polynomials {exponent tuple: coefficient}."""
    out = {}
    for ea, ca in terms_a.items():
        for eb, cb in terms_b.items():
            e = add_exponents(ea, eb)
            p = ca * cb
            prev = out.get(e)
            out[e] = p if prev is None else prev + p
    return {e: c for e, c in out.items() if c}
