"""Signed permutations, the groups W(Dₙ), O(Dₙ), O′(D₄), and lattice enumeration.

A signed permutation ``g = (π, s)`` acts on vectors by
``(g x)[π(i)] = s[π(i)] · x[i]``: move coordinate ``i`` to slot ``π(i)``,
then apply the sign of that slot.  It acts on Laurent polynomials by
``ζ^l -> ζ^{g l}``.
"""

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from .laurent import lp_act, lp_neg

__all__ = [
    "SignedPermutation",
    "GroupTag",
    "group_generators",
    "group_closure",
    "is_invariant",
    "is_anti_invariant",
    "random_word",
    "enumerate_lattice_vectors",
    "in_dual_Dn",
]


@dataclass(frozen=True)
class SignedPermutation:
    perm: tuple
    signs: tuple

    def __post_init__(self):
        object.__setattr__(self, "perm", tuple(int(p) for p in self.perm))
        object.__setattr__(self, "signs", tuple(int(s) for s in self.signs))
        n = len(self.perm)
        if sorted(self.perm) != list(range(n)) or len(self.signs) != n:
            raise ValueError("not a signed permutation")
        if any(s not in (1, -1) for s in self.signs):
            raise ValueError("signs must be ±1")

    @classmethod
    def identity(cls, n):
        return cls(tuple(range(n)), (1,) * n)

    @classmethod
    def transposition(cls, n, i, j):
        p = list(range(n))
        p[i], p[j] = p[j], p[i]
        return cls(tuple(p), (1,) * n)

    @classmethod
    def flip(cls, n, *idx):
        return cls(tuple(range(n)), tuple(-1 if i in idx else 1 for i in range(n)))

    @property
    def size(self):
        return len(self.perm)

    @property
    def parity(self):
        """Number of sign changes mod 2."""
        return sum(1 for s in self.signs if s < 0) % 2

    def apply(self, x):
        out = [None] * self.size
        for i, v in enumerate(x):
            out[self.perm[i]] = self.signs[self.perm[i]] * v
        return tuple(out)

    def __mul__(self, other):
        """Composition ``(self * other)(x) = self(other(x))``."""
        if self.size != other.size:
            raise ValueError("size mismatch")
        n = self.size
        perm = tuple(self.perm[other.perm[i]] for i in range(n))
        inv = [0] * n
        for i, p in enumerate(self.perm):
            inv[p] = i
        signs = tuple(self.signs[k] * other.signs[inv[k]] for k in range(n))
        return SignedPermutation(perm, signs)

    def inverse(self):
        n = self.size
        inv = [0] * n
        for i, p in enumerate(self.perm):
            inv[p] = i
        return SignedPermutation(tuple(inv), tuple(self.signs[self.perm[j]] for j in range(n)))


@dataclass(frozen=True)
class GroupTag:
    """``kind`` is ``"W"``, ``"O"`` or ``"OPrime"`` (the last only for n = 4)."""

    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in ("W", "O", "OPrime"):
            raise ValueError(f"unknown group kind {self.kind!r}")
        if self.n < 1:
            raise ValueError("n must be positive")
        if self.kind == "OPrime" and self.n != 4:
            raise ValueError("O′(D₄) only exists for n = 4")
        if self.kind == "O" and self.n == 4:
            raise ValueError("full O(D₄) includes triality, which is not a signed permutation; use OPrime")
        if self.kind == "W" and self.n < 2:
            raise ValueError("W(Dₙ) needs n >= 2")

    @classmethod
    def orthogonal(cls, n):
        """The signed-permutation orthogonal group used for Dₙ forms."""
        return cls("OPrime", 4) if n == 4 else cls("O", n)

    def __str__(self):
        return {"W": f"W(D{self.n})", "O": f"O(D{self.n})", "OPrime": "O′(D4)"}[self.kind]


def group_generators(tag):
    """Adjacent transpositions plus a flip of z₁ (O, O′) or of (z₁, z₂) (W)."""
    n = tag.n
    gens = [SignedPermutation.transposition(n, i, i + 1) for i in range(n - 1)]
    if tag.kind == "W":
        gens.append(SignedPermutation.flip(n, 0, 1))
    else:
        gens.append(SignedPermutation.flip(n, 0))
    return gens


def group_closure(gens, limit=100000):
    """All elements generated by ``gens`` (small groups only)."""
    n = gens[0].size
    seen = {SignedPermutation.identity(n)}
    frontier = list(seen)
    while frontier:
        nxt = []
        for g in frontier:
            for h in gens:
                x = h * g
                if x not in seen:
                    seen.add(x)
                    nxt.append(x)
                    if len(seen) > limit:
                        raise ValueError("group too large to enumerate")
        frontier = nxt
    return seen


def random_word(gens, length, rng=None):
    rng = rng or random.Random(0)
    g = SignedPermutation.identity(gens[0].size)
    for _ in range(length):
        g = rng.choice(gens) * g
    return g


def _coeffs(a):
    return a.coeffs.values() if hasattr(a, "coeffs") else [a]


def is_invariant(a, tag):
    """``g·c = c`` for every generator ``g`` and every stored coefficient ``c``."""
    if a.nvars != tag.n:
        raise ValueError(f"group acts on {tag.n} variables, expansion has {a.nvars}")
    gens = group_generators(tag)
    return all(lp_act(g, c) == c for c in _coeffs(a) for g in gens)


def is_anti_invariant(a, tag):
    """Invariant under W(Dₙ) and negated by the flip of z₁."""
    n = tag.n
    if a.nvars != n:
        raise ValueError(f"group acts on {n} variables, expansion has {a.nvars}")
    if not is_invariant(a, GroupTag("W", n)):
        return False
    f = SignedPermutation.flip(n, 0)
    return all(lp_act(f, c) == lp_neg(c) for c in _coeffs(a))


# lattices -----------------------------------------------------------------

# Doubled-coordinate description of each lattice: coordinates x = X/2 with X
# integers of fixed parity class, plus a parity rule on the coordinate sum.


def _lattice_cosets(lattice):
    """List of ``(half, sum_rule)``: ``half`` means all coordinates in ℤ+½.

    ``sum_rule`` maps the integer vector ``m`` (with ``x = m`` or
    ``x = m + ½``) to membership.
    """
    kind, n = lattice
    if kind == "Z":
        return n, [(False, lambda m: True)]
    if kind == "D":
        return n, [(False, lambda m: sum(m) % 2 == 0)]
    if kind == "D+s":
        # D_n + (½,…,½): x = m + ½ with Σx ∈ Σ(½) + 2ℤ, i.e. Σm even
        return n, [(True, lambda m: sum(m) % 2 == 0)]
    if kind == "E8":
        if n != 8:
            raise ValueError("E8 has rank 8")
        return 8, [(False, lambda m: sum(m) % 2 == 0), (True, lambda m: sum(m) % 2 == 0)]
    if kind == "D16+":
        if n != 16:
            raise ValueError("D16+ has rank 16")
        return 16, [(False, lambda m: sum(m) % 2 == 0), (True, lambda m: sum(m) % 2 == 0)]
    raise ValueError(f"unknown lattice {kind!r}")


def _parse_lattice(lattice):
    if isinstance(lattice, tuple):
        return lattice
    name = str(lattice)
    for prefix, kind in (("D16+", "D16+"), ("E8", "E8")):
        if name == prefix:
            return (kind, 16 if kind == "D16+" else 8)
    if name.startswith("Z^"):
        return ("Z", int(name[2:]))
    if name.startswith("D") and name.endswith("+s"):
        return ("D+s", int(name[1:-2]))
    if name.startswith("D"):
        return ("D", int(name[1:]))
    raise ValueError(f"unknown lattice {lattice!r}")


def enumerate_lattice_vectors(lattice, max_norm, doubled=False):
    """All vectors with ``(x, x) = Σ x_i² ≤ max_norm``, each once.

    ``lattice`` is ``"Z^n"``, ``"Dn"``, ``"Dn+s"`` (the coset of the glue
    vector ``(½,…,½)``), ``"E8"`` or ``"D16+"``, or a ``(kind, n)`` tuple.
    Vectors are returned as tuples of Fractions, or of the integers ``2x``
    with ``doubled=True``.
    """
    n, cosets = _lattice_cosets(_parse_lattice(lattice))
    max_norm = Fraction(max_norm)
    if max_norm < 0:
        raise ValueError("max_norm must be non-negative")
    # work with X = 2x so that Σ X_i² ≤ 4·max_norm
    bound4 = max_norm * 4
    out = []
    for half, rule in cosets:
        for X in _doubled_vectors(n, bound4, half):
            m = [(v - 1) // 2 if half else v // 2 for v in X]
            if rule(m):
                out.append(X if doubled else tuple(Fraction(v, 2) for v in X))
    return out


def _doubled_vectors(n, bound, odd):
    """Integer vectors of fixed parity (all odd or all even) with Σ X² ≤ bound."""
    r = isqrt(int(bound))
    vals = [v for v in range(-r, r + 1) if (v % 2 == 1) == odd]
    vals.sort(key=abs)

    def rec(i, remaining):
        if i == n:
            yield ()
            return
        for v in vals:
            sq = v * v
            if sq > remaining:
                continue
            for rest in rec(i + 1, remaining - sq):
                yield (v,) + rest

    yield from rec(0, bound)


def in_dual_Dn(exps2):
    """A doubled exponent vector lies in Dₙ^∨: all entries even or all odd."""
    parities = {int(e) % 2 for e in exps2}
    return len(parities) <= 1


def full_group(tag):
    """Enumerate the whole group (intended for n ≤ 3 oracles)."""
    return group_closure(group_generators(tag))


def all_signed_permutations(n):
    for p in itertools.permutations(range(n)):
        for s in itertools.product((1, -1), repeat=n):
            yield SignedPermutation(p, s)
