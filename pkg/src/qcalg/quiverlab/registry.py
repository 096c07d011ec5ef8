"""Built-in quiver presentations, embedded verbatim so golden runs need no files.

``ex1``: one sink/source vertex a, a family of vertices b[n] with arrows
x[n]: a -> b[n] and y[n]: b[n] -> a, and the admissible length-two paths
p[n] = x[n].y[n].  ``ex2``: vertices b[n] receiving n parallel arrows
x[n,i] from a.  ``mutant-ex1`` is the ex1 truncation at bound 1 with the
final splitting of p[1] deliberately miswritten (p[1] (x) b[1] instead of
p[1] (x) a); it fails coassociativity and feeds the regression tests.
"""

from __future__ import annotations

EX1 = """\
coalgebra ex1
field rational
param N = 3
vertex a
vertex b[n], n=1..N
arrow x[n]: a -> b[n], n=1..N
arrow y[n]: b[n] -> a, n=1..N
path p[n] = x[n] . y[n], n=1..N
mode declared
"""

EX2 = """\
coalgebra ex2
field rational
param N = 3
vertex a
vertex b[n], n=1..N
arrow x[n,i]: a -> b[n], n=1..N, i=1..n
mode declared
"""


def _mutant_ex1_text() -> str:
    from ..textfmt import dumps_coalgebra
    from .dsl import parse_spec
    from .paths import compile_truncation
    coalgebra, basis = compile_truncation(parse_spec(EX1), n_bound=1)
    p = basis.index_of_label("p[1]")
    a = basis.index_of_label("a")
    b1 = basis.index_of_label("b[1]")
    delta = list(coalgebra.delta)
    delta[p] = tuple((j, b1 if (j, k) == (p, a) else k, c) for j, k, c in delta[p])
    broken = type(coalgebra)(
        field=coalgebra.field, dim=coalgebra.dim, labels=coalgebra.labels,
        delta=tuple(delta), epsilon=coalgebra.epsilon)
    return dumps_coalgebra(broken, name="mutant-ex1")


_DSL_BUILTINS = {"ex1": EX1, "ex2": EX2}


def builtin_names() -> "list[str]":
    return sorted(_DSL_BUILTINS) + ["mutant-ex1"]


def builtin_kind(name: str) -> str:
    """'quiver-dsl' or 'structure-constants'."""
    if name in _DSL_BUILTINS:
        return "quiver-dsl"
    if name == "mutant-ex1":
        return "structure-constants"
    raise KeyError(f"unknown builtin {name!r}")


def builtin_text(name: str) -> str:
    if name in _DSL_BUILTINS:
        return _DSL_BUILTINS[name]
    if name == "mutant-ex1":
        return _mutant_ex1_text()
    raise KeyError(f"unknown builtin {name!r}")
