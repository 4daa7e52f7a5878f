# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse-polynomial kernels (see _kernel_impl.hpp)."""

import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t, uint64_t
from libcpp.vector cimport vector

cnp.import_array()


cdef extern from "_kernel_impl.hpp" namespace "jt":
    cdef struct Poly:
        const uint64_t* keys
        const int64_t* nums
        size_t len
    int sparse_dot(const vector[Poly]& a, const vector[Poly]& b,
                   const vector[int64_t]& scale, uint64_t zero,
                   vector[uint64_t]& okeys, vector[int64_t]& onums) nogil
    int exact_div(const Poly& num, const Poly& den, int nvars, int width,
                  uint64_t zero, const int64_t* lo, const int64_t* hi,
                  vector[uint64_t]& qkeys, vector[int64_t]& qnums) nogil


class Inexact(ArithmeticError):
    pass


class NonIntegral(ArithmeticError):
    pass


cdef Poly _view(cnp.ndarray keys, cnp.ndarray nums):
    cdef Poly p
    p.keys = <const uint64_t*> cnp.PyArray_DATA(keys)
    p.nums = <const int64_t*> cnp.PyArray_DATA(nums)
    p.len = keys.shape[0]
    return p


cdef tuple _to_arrays(vector[uint64_t]& k, vector[int64_t]& v):
    cdef size_t n = k.size()
    out_k = np.empty(n, dtype=np.uint64)
    out_v = np.empty(n, dtype=np.int64)
    cdef uint64_t[::1] ok = out_k
    cdef int64_t[::1] ov = out_v
    cdef size_t i
    for i in range(n):
        ok[i] = k[i]
        ov[i] = v[i]
    return out_k, out_v


def dot(list terms, uint64_t zero):
    """Sum of ``scale * a * b`` over ``(ak, an, bk, bn, scale)`` tuples.

    Raises OverflowError when an int64 intermediate would overflow.
    """
    cdef vector[Poly] va
    cdef vector[Poly] vb
    cdef vector[int64_t] sc
    keep = []
    for ak, an, bk, bn, s in terms:
        ak = np.ascontiguousarray(ak, dtype=np.uint64)
        an = np.ascontiguousarray(an, dtype=np.int64)
        bk = np.ascontiguousarray(bk, dtype=np.uint64)
        bn = np.ascontiguousarray(bn, dtype=np.int64)
        keep.append((ak, an, bk, bn))
        va.push_back(_view(ak, an))
        vb.push_back(_view(bk, bn))
        sc.push_back(s)
    cdef vector[uint64_t] ok
    cdef vector[int64_t] ov
    cdef int status
    with nogil:
        status = sparse_dot(va, vb, sc, zero, ok, ov)
    if status != 0:
        raise OverflowError("int64 overflow in sparse product")
    return _to_arrays(ok, ov)


def divide(nk, nn, dk, dn, int nvars, int width, uint64_t zero, lo, hi):
    """Exact quotient of two integer Laurent polynomials.

    Raises Inexact if no Laurent polynomial quotient exists, NonIntegral if
    the quotient needs non-integer coefficients, OverflowError on overflow.
    """
    nk = np.ascontiguousarray(nk, dtype=np.uint64)
    nn = np.ascontiguousarray(nn, dtype=np.int64)
    dk = np.ascontiguousarray(dk, dtype=np.uint64)
    dn = np.ascontiguousarray(dn, dtype=np.int64)
    cdef cnp.ndarray alo = np.ascontiguousarray(lo, dtype=np.int64)
    cdef cnp.ndarray ahi = np.ascontiguousarray(hi, dtype=np.int64)
    cdef Poly pn = _view(nk, nn)
    cdef Poly pd = _view(dk, dn)
    cdef vector[uint64_t] qk
    cdef vector[int64_t] qv
    cdef int status
    cdef const int64_t* plo = <const int64_t*> cnp.PyArray_DATA(alo)
    cdef const int64_t* phi = <const int64_t*> cnp.PyArray_DATA(ahi)
    with nogil:
        status = exact_div(pn, pd, nvars, width, zero, plo, phi, qk, qv)
    if status == 1:
        raise OverflowError("int64 overflow in exact division")
    if status == 2:
        raise Inexact("quotient leaves its support bound")
    if status == 3:
        raise NonIntegral("leading coefficient does not divide")
    return _to_arrays(qk, qv)
