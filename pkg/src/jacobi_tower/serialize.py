"""JSON interchange for expansions.

Schema ``jacobi-tower/expansion`` version 1::

    {
      "schema": "jacobi-tower/expansion", "version": 1,
      "nvars": 8, "trunc24": 96,
      "meta": {"weight2": 0, "index": "1", "norm_form": ["1", ...],
               "lattice": "D8", "symmetry": "O", "name": "..."} | null,
      "coeffs": [{"q24": 0, "terms": [[[2, 0, ...], "1"], ...]}, ...]
    }

Exponent vectors are doubled integers, q-exponents are integers over 24 and
rationals are ``"p/q"`` strings (``"p"`` when integral).
"""

import json
from fractions import Fraction
from math import lcm

import numpy as np

from .laurent import LaurentPoly
from .qexpansion import JacobiFormMeta, QExpansion

__all__ = ["SCHEMA", "VERSION", "to_json_obj", "from_json_obj", "dumps", "loads", "SchemaError"]

SCHEMA = "jacobi-tower/expansion"
VERSION = 1


class SchemaError(ValueError):
    pass


def _rat(x):
    return str(Fraction(x))


def _meta_obj(m):
    if m is None:
        return None
    return {"weight2": m.weight2, "index": _rat(m.index), "norm_form": [_rat(d) for d in m.norm_form],
            "lattice": m.lattice, "symmetry": m.symmetry, "name": m.name}


def to_json_obj(a):
    levels = []
    for k, c in a.coeffs.items():
        exps = c.exponents().tolist()
        nums = c.nums.tolist()
        terms = [[e, _rat(Fraction(int(v), c.den))] for e, v in zip(exps, nums)]
        levels.append({"q24": int(k), "terms": terms})
    return {"schema": SCHEMA, "version": VERSION, "nvars": a.nvars, "trunc24": a.trunc,
            "meta": _meta_obj(a.meta), "coeffs": levels}


def from_json_obj(obj):
    if obj.get("schema") != SCHEMA:
        raise SchemaError(f"not a {SCHEMA} document")
    if obj.get("version") != VERSION:
        raise SchemaError(f"unsupported version {obj.get('version')!r}; this reader handles {VERSION}")
    try:
        nvars = int(obj["nvars"])
        coeffs = {}
        for level in obj["coeffs"]:
            terms = level["terms"]
            if terms:
                exps = np.array([t[0] for t in terms], dtype=np.int64).reshape(len(terms), nvars)
                vals = [Fraction(t[1]) for t in terms]
                den = lcm(*(v.denominator for v in vals))
                nums = [int(v * den) for v in vals]
                coeffs[int(level["q24"])] = LaurentPoly.from_arrays(exps, nums, den)
            else:
                coeffs[int(level["q24"])] = LaurentPoly.zero(nvars)
        m = obj.get("meta")
        meta = None
        if m is not None:
            meta = JacobiFormMeta(int(m["weight2"]), Fraction(m["index"]), tuple(Fraction(d) for d in m["norm_form"]),
                                  m.get("lattice", ""), m.get("symmetry"), m.get("name", ""))
        return QExpansion(nvars, coeffs, int(obj["trunc24"]), meta)
    except (KeyError, TypeError, IndexError) as exc:
        raise SchemaError(f"malformed expansion document: {exc}") from exc


def dumps(a, **kw):
    return json.dumps(to_json_obj(a), **kw)


def loads(text):
    return from_json_obj(json.loads(text))
