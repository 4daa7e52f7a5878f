"""Backend selection for the sparse polynomial kernels.

The compiled extension is used when it imports, unless the environment
variable ``JACOBI_TOWER_PURE`` is set.  Both backends expose ``dot`` and
``divide``; the wrappers here add the int64-overflow and non-integral
retries so callers never see backend differences.
"""

import contextlib
import os
from fractions import Fraction

import numpy as np

from . import _fallback

try:
    if os.environ.get("JACOBI_TOWER_PURE"):
        raise ImportError("pure backend requested")
    from . import _kernel as _compiled
except ImportError:
    _compiled = None

_active = _compiled if _compiled is not None else _fallback


class InexactDivisionError(ArithmeticError):
    """The divisor does not divide the dividend in the Laurent ring."""


def backend():
    return "compiled" if _active is _compiled else "python"


def available_backends():
    return ["compiled", "python"] if _compiled is not None else ["python"]


@contextlib.contextmanager
def use_backend(name):
    global _active
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel is not available")
        new = _compiled
    elif name == "python":
        new = _fallback
    else:
        raise ValueError(f"unknown backend {name!r}")
    old, _active = _active, new
    try:
        yield
    finally:
        _active = old


def _int64_ok(nums):
    return nums.dtype != object or _fallback.max_abs(nums) < (1 << 62)


def dot(terms, zero):
    """Sum of ``scale * a * b``; returns sorted unique keys and nonzero values."""
    terms = [t for t in terms if len(t[0]) and len(t[2])]
    if not terms:
        return np.empty(0, np.uint64), np.empty(0, np.int64)
    if _active is _compiled and all(_int64_ok(t[1]) and _int64_ok(t[3]) and abs(t[4]) < (1 << 62)
                                    for t in terms):
        try:
            return _compiled.dot([(ak, an.astype(np.int64), bk, bn.astype(np.int64), int(s))
                                  for ak, an, bk, bn, s in terms], zero)
        except OverflowError:
            pass
    return _fallback.dot(terms, zero)


def divide(nk, nn, dk, dn, nvars, width, zero, lo, hi):
    """Exact quotient of integer-coefficient polynomials.

    Returns ``(keys, values)``; ``values`` may hold Fractions when the
    leading coefficient of the divisor does not divide evenly.
    """
    errors = (_fallback.Inexact,) + ((_compiled.Inexact,) if _compiled is not None else ())
    try:
        if _active is _compiled and _int64_ok(nn) and _int64_ok(dn):
            try:
                return _compiled.divide(nk, nn.astype(np.int64), dk, dn.astype(np.int64),
                                        nvars, width, zero, lo, hi)
            except (OverflowError, _compiled.NonIntegral):
                pass
        num = dict(zip(nk.tolist(), (int(x) for x in nn.tolist())))
        den = dict(zip(dk.tolist(), (int(x) for x in dn.tolist())))
        quot = _fallback.divide_exact(num, den, nvars, width, zero, lo, hi)
    except errors as exc:
        raise InexactDivisionError(str(exc)) from None
    keys = np.array(sorted(quot), dtype=np.uint64)
    vals = np.array([quot[k] for k in keys.tolist()], dtype=object)
    return keys, vals


def is_fraction_array(vals):
    return vals.dtype == object and any(isinstance(v, Fraction) and v.denominator != 1 for v in vals)
