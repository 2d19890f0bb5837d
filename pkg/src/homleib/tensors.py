"""Named-axis contraction of multilinear maps.

A multilinear map ``V_1 x ... x V_k -> W`` is an array with the output on
axis 0 and one axis per argument.  Extra trailing axes are *batch* axes:
they are carried along untouched, which lets one formula act on a whole
stack of cochains at once.

:func:`call` evaluates a map on operands that are either free variables
(optionally precomposed with a linear map, e.g. a twist) or results of
other calls, and returns a :class:`Term` whose axes are labelled by the
free variables.  :func:`arrange` transposes (and optionally merges) the
labelled axes into a requested order.

Example: ``f(alpha z, [x, y])`` is
``call(F, f, [("z", alpha), call(F, bracket, ["x", "y"])])``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import Field

OUT = "@"


@dataclass
class Term:
    arr: np.ndarray
    labels: list


def var(name: str, linear=None):
    """A free variable, optionally precomposed with ``linear`` (matrix, or None)."""
    return (name, linear)


def call(field: Field, arr: np.ndarray, operands, arity: int | None = None) -> Term:
    """Evaluate the map ``arr`` on ``operands``.

    ``arity`` defaults to ``len(operands)``; any further trailing axes of
    ``arr`` are batch axes.
    """
    k = len(operands) if arity is None else arity
    if k != len(operands):
        raise ValueError("operand count does not match arity")
    extra = arr.ndim - 1 - k
    if extra < 0:
        raise ValueError(f"map with {arr.ndim - 1} inputs called with {k} operands")
    t = arr
    labels = [OUT] + [("#", i) for i in range(k)] + [("$", j) for j in range(extra)]
    for i, op in enumerate(operands):
        pos = labels.index(("#", i))
        if isinstance(op, Term):
            t = field.tensordot(t, op.arr, axes=([pos], [0]))
            labels = labels[:pos] + labels[pos + 1:] + op.labels[1:]
            continue
        if isinstance(op, str):
            name, lin = op, None
        else:
            name, lin = op
        if lin is None:
            labels[pos] = name
        else:
            t = field.tensordot(t, lin, axes=([pos], [0]))
            labels = labels[:pos] + labels[pos + 1:] + [name]
    if len(set(labels)) != len(labels):
        raise ValueError(f"repeated axis labels {labels}")
    return Term(t, labels)


def arrange(term: Term, order) -> np.ndarray:
    """Array with axes ``[output] + order + batch``.

    Entries of ``order`` are labels, or tuples of labels to be merged into
    one axis (C order).
    """
    flat = []
    for item in order:
        flat.extend(item if isinstance(item, tuple) else (item,))
    batch = sorted((lab for lab in term.labels if isinstance(lab, tuple) and lab[0] == "$"),
                   key=lambda lab: lab[1])
    wanted = [OUT] + flat + batch
    if sorted(map(str, wanted)) != sorted(map(str, term.labels)):
        raise ValueError(f"cannot arrange {term.labels} as {wanted}")
    perm = [term.labels.index(lab) for lab in wanted]
    arr = np.transpose(term.arr, perm)
    shape = [arr.shape[0]]
    pos = 1
    for item in order:
        width = len(item) if isinstance(item, tuple) else 1
        shape.append(int(np.prod(arr.shape[pos:pos + width], dtype=int)))
        pos += width
    shape.extend(arr.shape[pos:])
    return arr.reshape(shape)


def outer_product(field: Field, pieces) -> tuple[np.ndarray, list]:
    """Outer product of labelled arrays ``[(arr, labels), ...]``."""
    arr, labels = pieces[0][0], list(pieces[0][1])
    for a, labs in pieces[1:]:
        arr = field.outer(arr, a)
        labels += list(labs)
    return arr, labels


def permute(arr: np.ndarray, labels, order) -> np.ndarray:
    """Transpose a labelled array to ``order``; tuples in ``order`` merge axes."""
    flat = []
    for item in order:
        flat.extend(item if isinstance(item, tuple) else (item,))
    if sorted(flat) != sorted(labels):
        raise ValueError(f"cannot permute {labels} to {order}")
    arr = np.transpose(arr, [list(labels).index(lab) for lab in flat])
    shape = []
    pos = 0
    for item in order:
        width = len(item) if isinstance(item, tuple) else 1
        shape.append(int(np.prod(arr.shape[pos:pos + width], dtype=int)))
        pos += width
    return arr.reshape(shape)


def evaluate(field: Field, arr: np.ndarray, operands, order) -> np.ndarray:
    return arrange(call(field, arr, operands), order)


def split_axis(arr: np.ndarray, axis: int, parts: int, width: int) -> np.ndarray:
    """Unflatten ``axis`` (of length ``width**parts``) into ``parts`` axes."""
    shape = arr.shape[:axis] + (width,) * parts + arr.shape[axis + 1:]
    return arr.reshape(shape)
