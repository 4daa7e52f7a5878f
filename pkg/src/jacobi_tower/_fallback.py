"""Pure-Python/numpy implementations of the sparse kernels.

Same contracts as the compiled ``_kernel`` module.  Products are formed by
chunked broadcasting and reduced with a sort; coefficients stay int64 when a
magnitude bound proves it safe and become Python ints otherwise.
"""

import heapq
from fractions import Fraction

import numpy as np

_CHUNK = 1 << 21
_INT64_SAFE = 1 << 62


class Inexact(ArithmeticError):
    pass


class NonIntegral(ArithmeticError):
    pass


def max_abs(nums):
    if len(nums) == 0:
        return 0
    if nums.dtype == object:
        return max(abs(int(x)) for x in nums)
    return int(np.abs(nums).max())


def as_object(nums):
    if nums.dtype == object:
        return nums
    return np.array([int(x) for x in nums.tolist()], dtype=object)


def group_sum(keys, vals):
    """Sort by key and add up duplicates, dropping zero sums."""
    if len(keys) == 0:
        return keys.astype(np.uint64), vals
    order = np.argsort(keys, kind="stable")
    ks = keys[order]
    vs = vals[order]
    first = np.empty(len(ks), dtype=bool)
    first[0] = True
    np.not_equal(ks[1:], ks[:-1], out=first[1:])
    starts = np.flatnonzero(first)
    sums = np.add.reduceat(vs, starts)
    uk = ks[starts]
    nz = np.asarray(sums != 0, dtype=bool)
    return uk[nz], sums[nz]


def dot(terms, zero):
    zero = np.uint64(zero)
    bound = 0
    overlap = 0
    for ak, an, bk, bn, s in terms:
        bound = max(bound, max_abs(an) * max_abs(bn) * abs(int(s)))
        overlap += min(len(ak), len(bk))
    use_object = bound * max(overlap, 1) >= _INT64_SAFE
    key_parts, val_parts = [], []
    pending = 0
    for ak, an, bk, bn, s in terms:
        if len(ak) == 0 or len(bk) == 0:
            continue
        if use_object:
            an, bn = as_object(an), as_object(bn)
            s = int(s)
        else:
            an = an.astype(np.int64, copy=False)
            bn = bn.astype(np.int64, copy=False)
            s = np.int64(s)
        shifted = ak - zero
        step = max(1, _CHUNK // len(bk))
        for i in range(0, len(ak), step):
            k = shifted[i:i + step, None] + bk[None, :]
            v = (an[i:i + step] * s)[:, None] * bn[None, :]
            key_parts.append(k.ravel())
            val_parts.append(v.ravel())
            pending += k.size
            if pending > 4 * _CHUNK:
                merged = group_sum(np.concatenate(key_parts), np.concatenate(val_parts))
                key_parts, val_parts = [merged[0]], [merged[1]]
                pending = len(merged[0])
    if not key_parts:
        return np.empty(0, np.uint64), np.empty(0, object if use_object else np.int64)
    return group_sum(np.concatenate(key_parts), np.concatenate(val_parts))


def _unpack_one(key, nvars, width):
    mask = (1 << width) - 1
    bias = 1 << (width - 1)
    return tuple(((key >> (width * i)) & mask) - bias for i in range(nvars))


def divide_exact(num, den, nvars, width, zero, lo, hi):
    """Exact quotient of ``num`` by ``den`` (dicts key -> int or Fraction).

    Graded-lex leading-term cancellation; raises Inexact when a quotient
    monomial leaves the box ``[lo, hi]``.  Returns a dict with Fraction values.
    """
    def order_key(k):
        return (sum(_unpack_one(k, nvars, width)), k)

    dlead = max(den, key=order_key)
    lc = Fraction(den[dlead])
    rem = {k: Fraction(v) for k, v in num.items() if v}
    heap = [(-order_key(k)[0], -k) for k in rem]
    heapq.heapify(heap)
    quot = {}
    while heap:
        _, negk = heapq.heappop(heap)
        key = -negk
        c = rem.get(key)
        if not c:
            rem.pop(key, None)
            continue
        t = c / lc
        qk = key - dlead + zero
        exps = _unpack_one(qk, nvars, width)
        if any(e < a or e > b for e, a, b in zip(exps, lo, hi)):
            raise Inexact("quotient leaves its support bound")
        quot[qk] = t
        base = qk - zero
        for dk, dc in den.items():
            k = base + dk
            if k in rem:
                v = rem[k] - t * dc
                if v:
                    rem[k] = v
                else:
                    del rem[k]
            else:
                rem[k] = -t * dc
                heapq.heappush(heap, (-order_key(k)[0], -k))
    return quot


def divide(nk, nn, dk, dn, nvars, width, zero, lo, hi):
    num = dict(zip(nk.tolist(), (int(x) for x in nn.tolist())))
    den = dict(zip(dk.tolist(), (int(x) for x in dn.tolist())))
    quot = divide_exact(num, den, nvars, width, zero, lo, hi)
    if any(v.denominator != 1 for v in quot.values()):
        raise NonIntegral("leading coefficient does not divide")
    keys = np.array(sorted(quot), dtype=np.uint64)
    vals = np.array([int(quot[k]) for k in keys.tolist()], dtype=object)
    return keys, vals
