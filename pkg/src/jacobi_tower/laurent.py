"""Sparse multivariate Laurent polynomials with half-integer exponents.

Exponents are stored doubled, so ``ζ^{1/2}`` has stored exponent ``1``.
A polynomial is a sorted array of packed exponent keys, a parallel array of
integer numerators and one positive common denominator.  Numerators are
int64 while they provably fit and Python ints otherwise.

Packing: with ``n`` variables each doubled exponent occupies
``width = min(16, 64 // n)`` bits, biased by ``2**(width - 1)``.  Adding two
keys and subtracting the packed zero adds the exponent vectors, so products
never unpack anything.
"""

import math
from fractions import Fraction
from functools import reduce

import numpy as np

from . import kernel
from ._fallback import group_sum, max_abs
from .kernel import InexactDivisionError

__all__ = [
    "LaurentPoly",
    "InexactDivisionError",
    "lp_add",
    "lp_sub",
    "lp_neg",
    "lp_scale",
    "lp_lincomb",
    "lp_mul",
    "lp_pow",
    "lp_exact_div",
    "lp_substitute_linear",
    "lp_scale_exponents",
    "lp_restrict",
    "lp_act",
    "lp_apply_weight",
    "lp_tensor",
    "packing",
]

_SAFE = 1 << 62
_SUPERSCRIPT = str.maketrans("0123456789-", "⁰¹²³⁴⁵⁶⁷⁸⁹⁻")
_SUBSCRIPT = str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉")


def packing(nvars):
    """Return ``(width, bias, zero_key)`` for ``nvars`` variables."""
    if nvars < 0:
        raise ValueError("nvars must be non-negative")
    if nvars == 0:
        return 16, 1 << 15, 0
    width = min(16, 64 // nvars)
    if width < 4:
        raise ValueError(f"at most 16 variables are supported, got {nvars}")
    bias = 1 << (width - 1)
    zero = 0
    for i in range(nvars):
        zero |= bias << (width * i)
    return width, bias, zero


def _pack(exps, nvars):
    """Pack an ``(m, nvars)`` integer array of doubled exponents."""
    width, bias, _ = packing(nvars)
    if nvars == 0:
        return np.zeros(len(exps), dtype=np.uint64)
    exps = np.asarray(exps, dtype=np.int64).reshape(-1, nvars)
    if exps.size and (exps.min() < -bias or exps.max() >= bias):
        raise OverflowError(f"exponent outside the packable range ±{bias // 2} for {nvars} variables")
    shifted = (exps + bias).astype(np.uint64)
    keys = np.zeros(len(exps), dtype=np.uint64)
    for i in range(nvars):
        keys |= shifted[:, i] << np.uint64(width * i)
    return keys


def _unpack(keys, nvars):
    width, bias, _ = packing(nvars)
    if nvars == 0:
        return np.zeros((len(keys), 0), dtype=np.int64)
    shifts = (np.arange(nvars, dtype=np.uint64) * np.uint64(width))
    mask = np.uint64((1 << width) - 1)
    fields = (keys[:, None] >> shifts[None, :]) & mask
    return fields.astype(np.int64) - bias


def _as_int_array(values):
    """Integer values as int64 if they fit, else an object array of ints."""
    if isinstance(values, np.ndarray) and values.dtype != object:
        return values.astype(np.int64, copy=False)
    vals = [int(v) for v in values]
    if not vals or max(abs(v) for v in vals) < _SAFE:
        return np.array(vals, dtype=np.int64)
    return np.array(vals, dtype=object)


def _narrow(nums):
    if nums.dtype == object and max_abs(nums) < _SAFE:
        return nums.astype(np.int64)
    return nums


def _mul_array(nums, factor):
    """``nums * factor`` for an int factor, widening to Python ints if needed."""
    factor = int(factor)
    if factor == 1:
        return nums
    if nums.dtype != object and max_abs(nums) * abs(factor) < _SAFE:
        return nums * np.int64(factor)
    return np.array([int(v) * factor for v in nums.tolist()], dtype=object)


def _gcd_array(nums):
    if len(nums) == 0:
        return 0
    if nums.dtype != object:
        return int(np.gcd.reduce(np.abs(nums)))
    return math.gcd(*nums.tolist())


def _lcm(values):
    return reduce(lambda a, b: a * b // math.gcd(a, b), values, 1)


class LaurentPoly:
    """Immutable sparse Laurent polynomial over the rationals."""

    __slots__ = ("nvars", "keys", "nums", "den", "_hash")

    def __init__(self, nvars, keys, nums, den=1, *, _normalized=False):
        self.nvars = int(nvars)
        self._hash = None
        if _normalized:
            self.keys, self.nums, self.den = keys, nums, den
            return
        keys = np.asarray(keys, dtype=np.uint64)
        nums = _as_int_array(nums)
        den = int(den)
        if den == 0:
            raise ZeroDivisionError("zero denominator")
        if den < 0:
            den, nums = -den, _mul_array(nums, -1)
        if len(keys) > 1 and not np.all(keys[1:] > keys[:-1]):
            keys, nums = group_sum(keys, nums)
        else:
            nz = np.asarray(nums != 0, dtype=bool)
            keys, nums = keys[nz], nums[nz]
        if den != 1:
            g = math.gcd(_gcd_array(nums), den)
            if g > 1:
                nums = nums // g if nums.dtype != object else np.array([v // g for v in nums.tolist()], dtype=object)
                den //= g
        if len(nums) == 0:
            den = 1
        self.keys = keys
        self.nums = _narrow(nums)
        self.den = den

    # construction -------------------------------------------------------

    @classmethod
    def zero(cls, nvars):
        return cls(nvars, np.empty(0, np.uint64), np.empty(0, np.int64), 1, _normalized=True)

    @classmethod
    def constant(cls, value, nvars=0):
        value = Fraction(value)
        if value == 0:
            return cls.zero(nvars)
        _, _, zero = packing(nvars)
        return cls(nvars, np.array([zero], np.uint64), [value.numerator], value.denominator)

    @classmethod
    def monomial(cls, exps2, coeff=1, nvars=None):
        """Monomial with doubled exponent vector ``exps2``."""
        exps2 = tuple(int(e) for e in exps2)
        nvars = len(exps2) if nvars is None else nvars
        if len(exps2) != nvars:
            raise ValueError("exponent vector length does not match nvars")
        return cls.from_dict({exps2: coeff}, nvars)

    @classmethod
    def from_dict(cls, terms, nvars):
        """Build from ``{doubled exponent tuple: rational}``."""
        items = [(tuple(e), Fraction(c)) for e, c in terms.items() if c != 0]
        if not items:
            return cls.zero(nvars)
        for e, _ in items:
            if len(e) != nvars:
                raise ValueError("exponent vector length does not match nvars")
        den = _lcm(c.denominator for _, c in items)
        exps = np.array([e for e, _ in items], dtype=np.int64).reshape(len(items), nvars)
        nums = [c.numerator * (den // c.denominator) for _, c in items]
        return cls(nvars, _pack(exps, nvars), nums, den)

    @classmethod
    def from_arrays(cls, exps2, nums, den=1):
        """Build from an ``(m, nvars)`` doubled-exponent array and numerators."""
        exps2 = np.asarray(exps2, dtype=np.int64)
        nvars = exps2.shape[1]
        return cls(nvars, _pack(exps2, nvars), nums, den)

    # inspection ---------------------------------------------------------

    def __len__(self):
        return len(self.keys)

    def is_zero(self):
        return len(self.keys) == 0

    def exponents(self):
        """Doubled exponents as an ``(len, nvars)`` int64 array."""
        return _unpack(self.keys, self.nvars)

    def coefficients(self):
        return [Fraction(int(v), self.den) for v in self.nums.tolist()]

    def items(self):
        exps = self.exponents().tolist()
        return [(tuple(e), c) for e, c in zip(exps, self.coefficients())]

    def to_dict(self):
        return dict(self.items())

    def coefficient(self, exps2):
        exps2 = tuple(int(e) for e in exps2)
        if len(exps2) != self.nvars:
            raise ValueError("exponent vector length does not match nvars")
        try:
            key = _pack(np.array([exps2]), self.nvars)[0]
        except OverflowError:
            return Fraction(0)
        i = np.searchsorted(self.keys, key)
        if i < len(self.keys) and self.keys[i] == key:
            return Fraction(int(self.nums[i]), self.den)
        return Fraction(0)

    def constant_term(self):
        return self.coefficient((0,) * self.nvars)

    def bounds(self):
        """Per-variable (min, max) of doubled exponents; ``None`` for zero."""
        if self.is_zero():
            return None
        e = self.exponents()
        return e.min(axis=0), e.max(axis=0)

    def value_at_one(self):
        """Sum of all coefficients (every ζ set to 1)."""
        return Fraction(int(sum(int(v) for v in self.nums.tolist())), self.den)

    # protocol -----------------------------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.constant(other, self.nvars)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return (
            self.nvars == other.nvars
            and self.den == other.den
            and np.array_equal(self.keys, other.keys)
            and all(int(a) == int(b) for a, b in zip(self.nums.tolist(), other.nums.tolist()))
        )

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.nvars, self.den, self.keys.tobytes(), tuple(int(v) for v in self.nums.tolist())))
        return self._hash

    def __add__(self, other):
        return lp_add(self, _coerce(other, self.nvars))

    __radd__ = __add__

    def __sub__(self, other):
        return lp_sub(self, _coerce(other, self.nvars))

    def __rsub__(self, other):
        return lp_sub(_coerce(other, self.nvars), self)

    def __neg__(self):
        return lp_neg(self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return lp_scale(self, other)
        if isinstance(other, LaurentPoly):
            return lp_mul(self, other)
        return NotImplemented

    __rmul__ = __mul__

    def __pow__(self, e):
        return lp_pow(self, e)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return lp_scale(self, 1 / Fraction(other))
        if isinstance(other, LaurentPoly):
            return lp_exact_div(self, other)
        return NotImplemented

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self})"

    def __str__(self):
        return format_poly(self)


def _coerce(x, nvars):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.constant(x, nvars)
    raise TypeError(f"cannot use {type(x).__name__} as a Laurent polynomial")


def _check_same(a, b):
    if a.nvars != b.nvars:
        raise ValueError(f"variable count mismatch: {a.nvars} vs {b.nvars}")


# formatting ---------------------------------------------------------------


def _format_var(i, e):
    name = "ζ" + str(i + 1).translate(_SUBSCRIPT)
    if e == 2:
        return name
    if e % 2 == 0:
        return name + str(e // 2).translate(_SUPERSCRIPT)
    return f"{name}^({e}/2)"


def _display_order(exps):
    return (sum(abs(x) for x in exps), tuple((x == 0, -x) for x in exps))


def format_poly(p, var_names=None):
    if p.is_zero():
        return "0"
    parts = []
    for exps, c in sorted(p.items(), key=lambda t: _display_order(t[0])):
        mono = "·".join(_format_var(i, e) for i, e in enumerate(exps) if e)
        if not mono:
            body = str(abs(c))
        elif abs(c) == 1:
            body = mono
        else:
            body = f"{abs(c)}·{mono}"
        parts.append(("-" if c < 0 else "+", body))
    first_sign, first = parts[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in parts[1:]:
        out += f" {sign} {body}"
    return out


# ring operations ----------------------------------------------------------


def lp_lincomb(pairs, nvars=None):
    """``Σ c_i p_i`` for ``(coefficient, polynomial)`` pairs."""
    pairs = [(Fraction(c), p) for c, p in pairs]
    if nvars is None:
        if not pairs:
            raise ValueError("empty combination needs nvars")
        nvars = pairs[0][1].nvars
    for _, p in pairs:
        if p.nvars != nvars:
            raise ValueError(f"variable count mismatch: {p.nvars} vs {nvars}")
    pairs = [(c, p) for c, p in pairs if c != 0 and not p.is_zero()]
    if not pairs:
        return LaurentPoly.zero(nvars)
    if len(pairs) == 1 and pairs[0][0] == 1:
        return pairs[0][1]
    mults = [(c.numerator, c.denominator * p.den) for c, p in pairs]
    den = _lcm(b for _, b in mults)
    factors = [a * (den // b) for a, b in mults]
    bound = sum(max_abs(p.nums) * abs(f) for (_, p), f in zip(pairs, factors))
    keys = np.concatenate([p.keys for _, p in pairs])
    if bound < _SAFE:
        nums = np.concatenate([p.nums.astype(np.int64) * np.int64(f) for (_, p), f in zip(pairs, factors)])
    else:
        nums = np.concatenate([
            np.array([int(v) * f for v in p.nums.tolist()], dtype=object) for (_, p), f in zip(pairs, factors)
        ])
    keys, nums = group_sum(keys, nums)
    return LaurentPoly(nvars, keys, nums, den)


def lp_add(a, b):
    _check_same(a, b)
    return lp_lincomb([(1, a), (1, b)], a.nvars)


def lp_sub(a, b):
    _check_same(a, b)
    return lp_lincomb([(1, a), (-1, b)], a.nvars)


def lp_neg(a):
    return LaurentPoly(a.nvars, a.keys, _mul_array(a.nums, -1), a.den, _normalized=True)


def lp_scale(a, c):
    c = Fraction(c)
    if c == 0 or a.is_zero():
        return LaurentPoly.zero(a.nvars)
    if c == 1:
        return a
    return LaurentPoly(a.nvars, a.keys, _mul_array(a.nums, c.numerator), a.den * c.denominator)


def _check_sum_range(ba, bb, nvars):
    _, bias, _ = packing(nvars)
    lo = ba[0] + bb[0]
    hi = ba[1] + bb[1]
    if nvars and (lo.min() < -bias or hi.max() >= bias):
        raise OverflowError("product exponents leave the packable range")


def lp_dot(pairs, nvars):
    """``Σ c_i a_i b_i`` over ``(c, a, b)`` triples with integer ``c``-scaling."""
    terms = []
    dens = []
    prepared = []
    for c, a, b in pairs:
        _check_same(a, b)
        if a.nvars != nvars:
            raise ValueError(f"variable count mismatch: {a.nvars} vs {nvars}")
        c = Fraction(c)
        if c == 0 or a.is_zero() or b.is_zero():
            continue
        _check_sum_range(a.bounds(), b.bounds(), nvars)
        prepared.append((c, a, b))
        dens.append(c.denominator * a.den * b.den)
    if not prepared:
        return LaurentPoly.zero(nvars)
    den = _lcm(dens)
    for (c, a, b), d in zip(prepared, dens):
        terms.append((a.keys, a.nums, b.keys, b.nums, c.numerator * (den // d)))
    _, _, zero = packing(nvars)
    keys, nums = kernel.dot(terms, zero)
    return LaurentPoly(nvars, keys, nums, den, _normalized=False)


def lp_mul(a, b):
    _check_same(a, b)
    return lp_dot([(1, a, b)], a.nvars)


def lp_pow(a, e):
    if e < 0:
        raise ValueError("negative powers are not polynomial")
    result = LaurentPoly.constant(1, a.nvars)
    base = a
    while e:
        if e & 1:
            result = lp_mul(result, base)
        e >>= 1
        if e:
            base = lp_mul(base, base)
    return result


def lp_exact_div(num, den):
    """Exact quotient ``num / den``.

    Raises ``InexactDivisionError`` when no Laurent polynomial ``q`` with
    ``q * den == num`` exists and ``ZeroDivisionError`` for a zero divisor.
    """
    _check_same(num, den)
    if den.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if num.is_zero():
        return LaurentPoly.zero(num.nvars)
    nvars = num.nvars
    if nvars == 0:
        return lp_scale(num, 1 / den.constant_term())
    nmin, nmax = num.bounds()
    dmin, dmax = den.bounds()
    lo = nmin - dmin
    hi = nmax - dmax
    if np.any(lo > hi):
        raise InexactDivisionError("divisor support does not fit inside the dividend support")
    _, bias, zero = packing(nvars)
    if (nmin - dmax).min() < -bias or (nmax - dmin).max() >= bias:
        raise OverflowError("quotient exponents leave the packable range")
    width = packing(nvars)[0]
    keys, vals = kernel.divide(num.keys, num.nums, den.keys, den.nums, nvars, width, zero, lo, hi)
    if vals.dtype == object:
        lcm = _lcm(Fraction(v).denominator for v in vals.tolist())
        vals = [int(Fraction(v) * lcm) for v in vals.tolist()]
    else:
        lcm = 1
    # (N / dn) / (D / dd) = (N / D) * dd / dn
    return LaurentPoly(nvars, keys, _mul_array(_as_int_array(vals), den.den), lcm * num.den)


# exponent maps ------------------------------------------------------------


def _remap(p, new_exps, nvars):
    keys = _pack(new_exps, nvars)
    order = np.argsort(keys, kind="stable")
    keys = keys[order]
    nums = p.nums[order]
    if len(keys) > 1 and np.any(keys[1:] == keys[:-1]):
        if nums.dtype != object and max_abs(nums) * len(nums) >= _SAFE:
            nums = nums.astype(object)
        keys, nums = group_sum(keys, nums)
    return LaurentPoly(nvars, keys, nums, p.den)


def lp_substitute_linear(p, A):
    """Substitute ``z = A w``; exponent vectors map by ``l_w = A^T l_z``.

    ``A`` is a square rational matrix.  Raises ``ValueError`` when an image
    exponent is not a half-integer or ``A`` is singular.
    """
    n = p.nvars
    A = [[Fraction(x) for x in row] for row in A]
    if len(A) != n or any(len(row) != n for row in A):
        raise ValueError(f"expected a {n}x{n} matrix")
    if _det(A) == 0:
        raise ValueError("substitution matrix is singular")
    if p.is_zero():
        return p
    scale = _lcm(x.denominator for row in A for x in row)
    At = np.array([[int(A[j][i] * scale) for j in range(n)] for i in range(n)], dtype=object)
    exps = p.exponents().astype(object)
    img = exps.dot(At.T)
    if any(int(v) % scale for v in img.ravel().tolist()):
        raise ValueError("image exponent is not a half-integer")
    img = np.array([[int(v) // scale for v in row] for row in img.tolist()], dtype=np.int64).reshape(len(exps), n)
    return _remap(p, img, n)


def _det(A):
    n = len(A)
    M = [row[:] for row in A]
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for r in range(c + 1, n):
            f = M[r][c] / M[c][c]
            if f:
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return det


def lp_scale_exponents(p, c):
    """Multiply every exponent by the positive integer ``c``."""
    if c == 1 or p.is_zero():
        return p
    return _remap(p, p.exponents() * int(c), p.nvars)


def lp_restrict(p, i):
    """Set ``ζ_i = 1`` (0-based ``i``) and drop that variable."""
    if not 0 <= i < p.nvars:
        raise IndexError(f"variable index {i} out of range for {p.nvars} variables")
    if p.is_zero():
        return LaurentPoly.zero(p.nvars - 1)
    exps = np.delete(p.exponents(), i, axis=1)
    return _remap(p, exps, p.nvars - 1)


def lp_act(g, p):
    """Apply a signed permutation: ``ζ^l -> ζ^{g l}``.

    ``g`` provides ``perm`` and ``signs`` with ``(g l)[perm[i]] = signs[perm[i]] * l[i]``.
    """
    perm = np.asarray(g.perm, dtype=np.int64)
    signs = np.asarray(g.signs, dtype=np.int64)
    if len(perm) != p.nvars:
        raise ValueError(f"group element acts on {len(perm)} variables, polynomial has {p.nvars}")
    if p.is_zero():
        return p
    exps = p.exponents()
    out = np.empty_like(exps)
    out[:, perm] = exps * signs[perm][None, :]
    return _remap(p, out, p.nvars)


def lp_apply_weight(p, weights, wden=1):
    """Multiply the coefficient of each term by ``weights[j] / wden``.

    ``weights`` is an integer array aligned with ``p.keys``.
    """
    if p.is_zero():
        return p
    weights = _as_int_array(weights)
    if p.nums.dtype != object and weights.dtype != object and max_abs(p.nums) * max_abs(weights) < _SAFE:
        nums = p.nums * weights
    else:
        nums = np.array([int(a) * int(b) for a, b in zip(p.nums.tolist(), weights.tolist())], dtype=object)
    return LaurentPoly(p.nvars, p.keys, nums, p.den * int(wden))


def lp_tensor(a, b):
    """Product of polynomials in disjoint variable sets (``a``'s variables first)."""
    if a.is_zero() or b.is_zero():
        return LaurentPoly.zero(a.nvars + b.nvars)
    ea, eb = a.exponents(), b.exponents()
    n = a.nvars + b.nvars
    exps = np.concatenate([np.repeat(ea, len(eb), axis=0), np.tile(eb, (len(ea), 1))], axis=1)
    if a.nums.dtype != object and b.nums.dtype != object and max_abs(a.nums) * max_abs(b.nums) < _SAFE:
        nums = np.outer(a.nums, b.nums).ravel()
    else:
        nums = np.array([int(x) * int(y) for x in a.nums.tolist() for y in b.nums.tolist()], dtype=object)
    return LaurentPoly(n, _pack(exps, n), nums, a.den * b.den)
