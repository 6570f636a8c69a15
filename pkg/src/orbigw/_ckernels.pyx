# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled arithmetic core: cyclotomic and sparse-polynomial products.

Rationals stay gmpy2.mpq objects at the boundary; inside the loops the
multiply-accumulate work runs on raw GMP mpq_t values.
"""

from cpython.tuple cimport PyTuple_New, PyTuple_SET_ITEM, PyTuple_GET_SIZE, PyTuple_GET_ITEM
from cpython.ref cimport Py_INCREF
from libc.stdlib cimport malloc, free

from gmpy2 cimport import_gmpy2, mpq, GMPy_MPQ_New, MPQ, mpq_t, mpq_ptr, mpq_srcptr

cdef extern from "gmp.h":
    void mpq_init(mpq_ptr x)
    void mpq_clear(mpq_ptr x)
    void mpq_set(mpq_ptr rop, mpq_srcptr op)
    void mpq_add(mpq_ptr s, mpq_srcptr a, mpq_srcptr b)
    void mpq_mul(mpq_ptr p, mpq_srcptr a, mpq_srcptr b)
    int mpq_sgn(mpq_srcptr x)

import_gmpy2()


cdef inline mpq _wrap(mpq_srcptr value):
    cdef mpq out = GMPy_MPQ_New(NULL)
    mpq_set(MPQ(out), value)
    return out


def cyc_mul(tuple a, tuple b, sparse_powers, int n):
    """Product of two coordinate vectors in Q(zeta_n).

    ``sparse_powers[p]`` lists the nonzero (index, coefficient) pairs of
    zeta^p in the power basis.
    """
    cdef Py_ssize_t size = PyTuple_GET_SIZE(a)
    cdef Py_ssize_t i, j, k
    cdef mpq x, y, c
    cdef mpq_t xy, term
    cdef mpq_t *acc = <mpq_t *> malloc(size * sizeof(mpq_t))
    if acc == NULL:
        raise MemoryError()
    for k in range(size):
        mpq_init(acc[k])
    mpq_init(xy)
    mpq_init(term)
    try:
        for i in range(size):
            x = <mpq?> PyTuple_GET_ITEM(a, i)
            if mpq_sgn(MPQ(x)) == 0:
                continue
            for j in range(size):
                y = <mpq?> PyTuple_GET_ITEM(b, j)
                if mpq_sgn(MPQ(y)) == 0:
                    continue
                mpq_mul(xy, MPQ(x), MPQ(y))
                for pair in sparse_powers[(i + j) % n]:
                    k = <Py_ssize_t> (<tuple> pair)[0]
                    c = <mpq?> (<tuple> pair)[1]
                    mpq_mul(term, MPQ(c), xy)
                    mpq_add(acc[k], acc[k], term)
        out = PyTuple_New(size)
        for k in range(size):
            item = _wrap(acc[k])
            Py_INCREF(item)
            PyTuple_SET_ITEM(out, k, item)
        return out
    finally:
        for k in range(size):
            mpq_clear(acc[k])
        mpq_clear(xy)
        mpq_clear(term)
        free(acc)


cdef tuple _add_exponents(tuple ea, tuple eb):
    cdef Py_ssize_t r = PyTuple_GET_SIZE(ea)
    cdef Py_ssize_t i
    cdef mpq x, y, s
    out = PyTuple_New(r)
    for i in range(r):
        x = <mpq?> PyTuple_GET_ITEM(ea, i)
        y = <mpq?> PyTuple_GET_ITEM(eb, i)
        s = GMPy_MPQ_New(NULL)
        mpq_add(MPQ(s), MPQ(x), MPQ(y))
        Py_INCREF(s)
        PyTuple_SET_ITEM(out, i, s)
    return <tuple> out


def poly_mul(dict terms_a, dict terms_b, add_exponents=None):
    """Product of two sparse polynomials {exponent tuple: coefficient}.

    Exponent entries must be gmpy2.mpq; ``add_exponents`` is accepted for
    signature parity with the pure-Python kernel and ignored.
    """
    cdef dict out = {}
    cdef tuple e
    for ea, ca in terms_a.items():
        for eb, cb in terms_b.items():
            e = _add_exponents(<tuple> ea, <tuple> eb)
            p = ca * cb
            prev = out.get(e)
            out[e] = p if prev is None else prev + p
    return {e: c for e, c in out.items() if c}
