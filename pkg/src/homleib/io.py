"""JSON description files for algebras, representations, cochains and matrices.

Basis indices are 1-based in files and 0-based in memory; the conversion
happens only in this module.  Scalars are written as exact strings
(``"3/2"``, ``"-4"``); integers are accepted on input.

Algebra file::

    {"schema_version": "1", "kind": "algebra", "field": "Q", "dim": 2, "arity": 3,
     "alpha": [["1", "0"], ["0", "1"]],
     "bracket": [[[1, 2, 2], 1, "1"]]}

``alpha`` may also be a list of ``arity - 1`` matrices, or be omitted for
identity twists.  A representation file carries ``module_dim``,
``alpha_m`` and ``actions`` (one entry list per slot; in the entries of
slot ``i`` the ``i``-th index runs over the module basis).  A cochain file
carries ``degree``, optional ``module_dim`` and sparse ``entries``
``[indices, target, coeff]`` with ``1 + (n-1)(p-1)`` algebra indices.
"""

from __future__ import annotations

import hashlib
import json
from pathlib import Path

import numpy as np

from .algebra import NHomLeibnizAlgebra
from .cochains import Cochain
from .errors import InputError, ParseError
from .fields import QQ, Field, field_from_tag, field_tag
from .representations import Representation

SCHEMA_VERSION = "1"


def _locate(text: str, token) -> tuple:
    """Line and column of the first occurrence of ``token`` rendered as JSON."""
    if text is None or token is None:
        return None, None
    pos = text.find(json.dumps(token))
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


class _Source:
    """Parsed JSON plus the raw text, so that semantic errors can carry positions."""

    def __init__(self, text: str, path: str | None = None):
        self.text = text
        self.path = path
        try:
            self.data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.lineno, exc.colno, path) from None

    def fail(self, message: str, token=None):
        line, col = _locate(self.text, token)
        raise ParseError(message, line, col, self.path)

    def get(self, obj, key, kind=None, default=...):
        if not isinstance(obj, dict):
            self.fail("expected a JSON object")
        if key not in obj:
            if default is not ...:
                return default
            self.fail(f"missing key {key!r}")
        val = obj[key]
        if kind is int and (not isinstance(val, int) or isinstance(val, bool)):
            self.fail(f"{key!r} must be an integer", key)
        return val

    def scalar(self, field: Field, raw):
        try:
            return field.scalar(raw)
        except (InputError, ValueError) as exc:
            self.fail(f"bad coefficient {raw!r}: {exc}", raw)

    def matrix(self, field: Field, raw, n: int, what: str):
        if not isinstance(raw, list) or len(raw) != n or any(not isinstance(r, list) or len(r) != n for r in raw):
            self.fail(f"{what} must be a {n}x{n} matrix", what)
        out = field.zeros((n, n))
        for i, row in enumerate(raw):
            for j, x in enumerate(row):
                out[i, j] = self.scalar(field, x)
        return out

    def index(self, raw, bound: int, what: str) -> int:
        if not isinstance(raw, int) or isinstance(raw, bool) or not 1 <= raw <= bound:
            self.fail(f"{what} {raw!r} outside 1..{bound}", raw)
        return raw - 1


def _read(path) -> _Source:
    p = Path(path)
    try:
        text = p.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    return _Source(text, str(path))


def _check_header(src: _Source, kind: str):
    data = src.data
    if not isinstance(data, dict):
        src.fail("top level must be a JSON object")
    version = data.get("schema_version", SCHEMA_VERSION)
    if str(version) != SCHEMA_VERSION:
        src.fail(f"unsupported schema_version {version!r}", version)
    k = data.get("kind", kind)
    if k != kind:
        src.fail(f"expected a {kind} file, got kind {k!r}", k)


def _field(src: _Source, override: Field | None) -> Field:
    if override is not None:
        return override
    raw = src.data.get("field", "Q")
    try:
        return field_from_tag(raw)
    except InputError as exc:
        src.fail(str(exc), raw if isinstance(raw, str) else None)


def _entry(src: _Source, e, nidx: int):
    if isinstance(e, dict):
        e = [e.get("indices"), e.get("target"), e.get("coeff")]
    if not isinstance(e, list) or len(e) != 3 or not isinstance(e[0], list):
        src.fail("entries must have the form [indices, target, coeff]")
    if len(e[0]) != nidx:
        src.fail(f"entry {e[0]} does not have {nidx} indices", e[0])
    return e


# -- algebras ------------------------------------------------------------------------------

def parse_algebra(text: str, path: str | None = None, field: Field | None = None) -> NHomLeibnizAlgebra:
    src = _Source(text, path)
    _check_header(src, "algebra")
    data = src.data
    F = _field(src, field)
    d = src.get(data, "dim", int)
    n = src.get(data, "arity", int)
    if d < 1 or n < 2:
        src.fail("need dim >= 1 and arity >= 2", "dim" if d < 1 else "arity")
    raw_alpha = data.get("alpha")
    if raw_alpha is None:
        twists = [F.eye(d)] * (n - 1)
    elif isinstance(raw_alpha, list) and raw_alpha and isinstance(raw_alpha[0], list) \
            and raw_alpha[0] and isinstance(raw_alpha[0][0], list):
        if len(raw_alpha) != n - 1:
            src.fail(f"expected {n - 1} twist matrices", "alpha")
        twists = [src.matrix(F, m, d, "alpha") for m in raw_alpha]
    else:
        twists = [src.matrix(F, raw_alpha, d, "alpha")] * (n - 1)
    br = F.zeros((d,) * (n + 1))
    seen = set()
    entries = src.get(data, "bracket", default=[])
    if not isinstance(entries, list):
        src.fail("'bracket' must be a list of entries", "bracket")
    for e in entries:
        e = _entry(src, e, n)
        idx = tuple(src.index(i, d, "index") for i in e[0])
        tgt = src.index(e[1], d, "target")
        if (idx, tgt) in seen:
            src.fail(f"duplicate bracket entry {e[0]} -> {e[1]}", e[0])
        seen.add((idx, tgt))
        br[(tgt,) + idx] = src.scalar(F, e[2])
    return NHomLeibnizAlgebra(F, d, n, br, twists, name=data.get("name"))


def load_algebra(path, field: Field | None = None) -> NHomLeibnizAlgebra:
    src = _read(path)
    return parse_algebra(src.text, str(path), field)


def _fmt(F: Field, x) -> str:
    return F.format(x)


def _matrix_json(F: Field, M) -> list:
    return [[_fmt(F, x) for x in row] for row in M]


def algebra_to_json(A: NHomLeibnizAlgebra) -> dict:
    F = A.field
    out = {"schema_version": SCHEMA_VERSION, "kind": "algebra"}
    if A.name:
        out["name"] = A.name
    out["field"] = field_tag(F)
    out["dim"] = A.dim
    out["arity"] = A.arity
    if A.uniform_twist:
        out["alpha"] = _matrix_json(F, A.twists[0])
    else:
        out["alpha"] = [_matrix_json(F, t) for t in A.twists]
    out["bracket"] = [[[i + 1 for i in idx], k + 1, _fmt(F, c)] for idx, k, c in A.entries()]
    return out


# -- representations -----------------------------------------------------------------------

def parse_representation(text: str, A: NHomLeibnizAlgebra, path: str | None = None) -> Representation:
    src = _Source(text, path)
    _check_header(src, "representation")
    data = src.data
    F = A.field
    for key, want in (("dim", A.dim), ("arity", A.arity)):
        if key in data and data[key] != want:
            src.fail(f"representation {key} {data[key]!r} does not match the algebra ({want})", key)
    m = src.get(data, "module_dim", int)
    if m < 1:
        src.fail("module_dim must be positive", "module_dim")
    raw_am = data.get("alpha_m")
    alpha_m = F.eye(m) if raw_am is None else src.matrix(F, raw_am, m, "alpha_m")
    acts_raw = src.get(data, "actions")
    if not isinstance(acts_raw, list) or len(acts_raw) != A.arity:
        src.fail(f"'actions' must list {A.arity} entry lists", "actions")
    actions = []
    for i, entries in enumerate(acts_raw):
        shape = [A.dim] * A.arity
        shape[i] = m
        arr = F.zeros((m, *shape))
        seen = set()
        for e in entries:
            e = _entry(src, e, A.arity)
            idx = tuple(src.index(x, shape[t], "index") for t, x in enumerate(e[0]))
            tgt = src.index(e[1], m, "target")
            if (idx, tgt) in seen:
                src.fail(f"duplicate action entry {e[0]} -> {e[1]}", e[0])
            seen.add((idx, tgt))
            arr[(tgt,) + idx] = src.scalar(F, e[2])
        actions.append(arr)
    return Representation(F, A.dim, A.arity, m, alpha_m, actions, name=data.get("name"))


def load_representation(path, A: NHomLeibnizAlgebra) -> Representation:
    src = _read(path)
    return parse_representation(src.text, A, str(path))


def representation_to_json(R: Representation) -> dict:
    F = R.field
    out = {"schema_version": SCHEMA_VERSION, "kind": "representation"}
    if R.name:
        out["name"] = R.name
    out.update({"dim": R.dim, "arity": R.arity, "module_dim": R.module_dim,
                "alpha_m": _matrix_json(F, R.alpha_m)})
    out["actions"] = [_sparse(F, a) for a in R.actions]
    return out


# -- cochains ------------------------------------------------------------------------------

def _sparse(F: Field, arr: np.ndarray) -> list:
    """``[[indices], target, coeff]`` for the nonzero entries, output axis first, lexicographic in indices."""
    out = []
    moved = np.moveaxis(arr, 0, -1)
    for idx in np.ndindex(*moved.shape[:-1]):
        for k in range(moved.shape[-1]):
            c = moved[idx + (k,)]
            if c != 0:
                out.append([[i + 1 for i in idx], k + 1, _fmt(F, c)])
    return out


def parse_cochain(text: str, A: NHomLeibnizAlgebra, R: Representation, path: str | None = None) -> Cochain:
    src = _Source(text, path)
    _check_header(src, "cochain")
    data = src.data
    F = A.field
    p = src.get(data, "degree", int)
    if p < 1:
        src.fail("cochain degree must be at least 1", "degree")
    m = data.get("module_dim", R.module_dim)
    if m != R.module_dim:
        src.fail(f"module_dim {m} does not match the coefficients ({R.module_dim})", "module_dim")
    nidx = 1 + (A.arity - 1) * (p - 1)
    arr = F.zeros((m,) + (A.dim,) * nidx)
    seen = set()
    for e in src.get(data, "entries", default=[]):
        e = _entry(src, e, nidx)
        idx = tuple(src.index(i, A.dim, "index") for i in e[0])
        tgt = src.index(e[1], m, "target")
        if (idx, tgt) in seen:
            src.fail(f"duplicate cochain entry {e[0]} -> {e[1]}", e[0])
        seen.add((idx, tgt))
        arr[(tgt,) + idx] = src.scalar(F, e[2])
    shape = (m, A.dim) + (A.block_dim,) * (p - 1)
    return Cochain(A, R, p, arr.reshape(shape))


def load_cochain(path, A: NHomLeibnizAlgebra, R: Representation) -> Cochain:
    src = _read(path)
    return parse_cochain(src.text, A, R, str(path))


def cochain_to_json(f: Cochain) -> dict:
    F = f.algebra.field
    return {"schema_version": SCHEMA_VERSION, "kind": "cochain", "degree": f.degree,
            "module_dim": f.rep.module_dim, "entries": _sparse(F, f.unblocked())}


def parse_matrix(text: str, dim: int, field: Field = QQ, path: str | None = None) -> np.ndarray:
    """A bare JSON matrix or ``{"matrix": [[..]]}``."""
    src = _Source(text, path)
    raw = src.data
    if isinstance(raw, dict):
        raw = src.get(raw, "matrix")
    return src.matrix(field, raw, dim, "matrix")


def load_matrix(path, dim: int, field: Field = QQ) -> np.ndarray:
    src = _read(path)
    return parse_matrix(src.text, dim, field, str(path))


def digest(paths) -> str:
    """SHA-256 over the named files' bytes, in order."""
    h = hashlib.sha256()
    for p in paths:
        data = Path(p).read_bytes()
        h.update(len(data).to_bytes(8, "big"))
        h.update(data)
    return h.hexdigest()


def _render(obj, indent: int) -> str:
    pad = "  " * (indent + 1)
    if isinstance(obj, dict) and obj:
        items = [f"{pad}{json.dumps(k)}: {_render(v, indent + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + "  " * indent + "}"
    if isinstance(obj, list) and any(isinstance(v, dict) for v in obj):
        items = [pad + _render(v, indent + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + "  " * indent + "]"
    return json.dumps(obj, ensure_ascii=False)


def dumps(obj) -> str:
    """Indented JSON with entry lists and matrices kept on one line."""
    return _render(obj, 0) + "\n"


__all__ = [
    "SCHEMA_VERSION", "algebra_to_json", "cochain_to_json", "digest", "dumps", "load_algebra",
    "load_cochain", "load_matrix", "load_representation", "parse_algebra", "parse_cochain",
    "parse_matrix", "parse_representation", "representation_to_json",
]
