"""Finite-dimensional coalgebras, their convolution duals, and the wedge.

A coalgebra is stored as a sparse comultiplication tensor together with a
counit vector over an exact field.  This module supplies the axiom
checker, the convolution (dual) algebra with its Jacobson radical, the
coradical filtration, wedges of subspaces, products of ideals in the
dual, coideal predicates, and skew-primitive spaces.

Conventions fixed here and used bit-exactly everywhere else:

* tensor coordinates on C (x) C are flattened as (j, k) -> j*dim + k;
* ``right coideal``  means  Delta(X) <= X (x) C   (X is then a right
  subcomodule of C), ``left coideal`` means Delta(X) <= C (x) X.
"""

from __future__ import annotations

from dataclasses import dataclass

from .exactlin import (
    Field,
    Matrix,
    Scalar,
    Subspace,
    kernel,
    preimage,
)


def flatten_index(j: int, k: int, dim: int) -> int:
    """The fixed (j, k) -> j*dim + k tensor-square coordinate convention."""
    return j * dim + k


DeltaTerm = "tuple[int, int, Scalar]"


@dataclass(frozen=True)
class Coalgebra:
    """A coalgebra by structure constants: Delta(e_i) = sum c e_j (x) e_k."""

    field: Field
    dim: int
    labels: "tuple[str, ...]"
    delta: "tuple[tuple[tuple[int, int, Scalar], ...], ...]"
    epsilon: "tuple[Scalar, ...]"

    def __post_init__(self):
        if len(self.labels) != self.dim or len(self.delta) != self.dim \
                or len(self.epsilon) != self.dim:
            raise ValueError("label/delta/epsilon lengths must equal dim")
        if len(set(self.labels)) != self.dim:
            raise ValueError("duplicate basis labels")

    def label_index(self, name: str) -> int:
        try:
            return self.labels.index(name)
        except ValueError:
            raise KeyError(f"unknown basis label {name!r}") from None

    def delta_dict(self, i: int) -> dict:
        """Delta(e_i) as a sparse {(j, k): c} dict."""
        out: dict = {}
        for j, k, c in self.delta[i]:
            key = (j, k)
            v = out.get(key)
            nv = c if v is None else v + c
            if nv:
                out[key] = nv
            else:
                out.pop(key, None)
        return out

    def delta_matrix(self) -> Matrix:
        """Delta as a dim^2 x dim matrix in flattened coordinates."""
        n = self.dim
        entries: dict = {}
        for i in range(n):
            for (j, k), c in self.delta_dict(i).items():
                entries[(flatten_index(j, k, n), i)] = c
        return Matrix(n * n, n, entries)

    def is_grouplike(self, i: int) -> bool:
        one = self.field.one
        return self.delta_dict(i) == {(i, i): one} and self.epsilon[i] == one

    def grouplike_indices(self) -> "tuple[int, ...]":
        return tuple(i for i in range(self.dim) if self.is_grouplike(i))

    def span_of_labels(self, names: "list[str]") -> Subspace:
        vecs = [{self.label_index(n): self.field.one} for n in names]
        return Subspace.span(self.field, self.dim, vecs)

    def format_vector(self, vec: dict) -> str:
        """Render a coordinate vector as a signed combination of labels."""
        if not vec:
            return "0"
        parts = []
        for j in sorted(vec):
            c = self.field.format(vec[j])
            if c == "1":
                parts.append(self.labels[j])
            elif c == "-1":
                parts.append(f"-{self.labels[j]}")
            else:
                parts.append(f"{c}*{self.labels[j]}")
        return " + ".join(parts).replace(" + -", " - ")


# -- axiom checking ----------------------------------------------------------

@dataclass(frozen=True)
class AxiomFailure:
    law: str
    element: str
    position: "tuple[str, ...]"
    lhs: str
    rhs: str

    def __str__(self) -> str:
        where = " (x) ".join(self.position)
        return (f"{self.law} fails on {self.element} at {where}: "
                f"{self.lhs} != {self.rhs}")


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    failures: "tuple[AxiomFailure, ...]"

    def first(self) -> "AxiomFailure | None":
        return self.failures[0] if self.failures else None


def _tensor_cube_sides(c: Coalgebra, i: int) -> "tuple[dict, dict]":
    """(Delta (x) id)Delta(e_i) and (id (x) Delta)Delta(e_i) as sparse dicts."""
    lhs: dict = {}
    rhs: dict = {}
    for j, k, coeff in c.delta[i]:
        for r, s, coeff2 in c.delta[j]:
            key = (r, s, k)
            lhs[key] = lhs.get(key, c.field.zero) + coeff * coeff2
        for r, s, coeff2 in c.delta[k]:
            key = (j, r, s)
            rhs[key] = rhs.get(key, c.field.zero) + coeff * coeff2
    return ({k: v for k, v in lhs.items() if v},
            {k: v for k, v in rhs.items() if v})


def check_axioms(c: Coalgebra, max_failures: int = 16) -> AxiomReport:
    """Exact coassociativity and counit test; failures are reported, not raised."""
    failures: list[AxiomFailure] = []
    fmt = c.field.format
    zero_s = fmt(c.field.zero)
    for i in range(c.dim):
        lhs, rhs = _tensor_cube_sides(c, i)
        for key in sorted(set(lhs) | set(rhs)):
            if lhs.get(key, c.field.zero) != rhs.get(key, c.field.zero):
                failures.append(AxiomFailure(
                    law="coassociativity",
                    element=c.labels[i],
                    position=tuple(c.labels[t] for t in key),
                    lhs=fmt(lhs.get(key, c.field.zero)),
                    rhs=fmt(rhs.get(key, c.field.zero)),
                ))
                if len(failures) >= max_failures:
                    return AxiomReport(False, tuple(failures))
    for i in range(c.dim):
        left: dict = {}
        right: dict = {}
        for j, k, coeff in c.delta[i]:
            left[k] = left.get(k, c.field.zero) + coeff * c.epsilon[j]
            right[j] = right.get(j, c.field.zero) + coeff * c.epsilon[k]
        expected = {i: c.field.one}
        for law, got in (("counit-left", left), ("counit-right", right)):
            got = {k: v for k, v in got.items() if v}
            if got != expected:
                bad = sorted(set(got) | set(expected))[0]
                failures.append(AxiomFailure(
                    law=law,
                    element=c.labels[i],
                    position=(c.labels[bad],),
                    lhs=fmt(got.get(bad, c.field.zero)),
                    rhs=fmt(expected.get(bad, c.field.zero)),
                ))
                if len(failures) >= max_failures:
                    return AxiomReport(False, tuple(failures))
    return AxiomReport(not failures, tuple(failures))


# -- the convolution algebra -------------------------------------------------

class RadicalRangeError(ValueError):
    """Raised when the trace-form radical criterion is not valid."""


@dataclass(frozen=True)
class DualAlgebra:
    """Convolution algebra on the dual basis; unit is the counit vector.

    mult maps (i, j) to the structure constants of e_i^* e_j^*: the
    (i, j) coefficient of Delta(e_k) becomes the e_k^* coefficient of the
    product (transpose placement of the comultiplication tensor).
    """

    field: Field
    dim: int
    labels: "tuple[str, ...]"
    mult: "dict[tuple[int, int], tuple[tuple[int, Scalar], ...]]"
    unit: "tuple[Scalar, ...]"

    def multiply(self, u: dict, v: dict) -> dict:
        out: dict = {}
        for (i, j), terms in self.mult.items():
            ui = u.get(i)
            if not ui:
                continue
            vj = v.get(j)
            if not vj:
                continue
            w = ui * vj
            for k, c in terms:
                nv = out.get(k, self.field.zero) + w * c
                if nv:
                    out[k] = nv
                else:
                    out.pop(k, None)
        return out

    def unit_dict(self) -> dict:
        return {i: v for i, v in enumerate(self.unit) if v}

    def left_mult_matrix(self, u: dict) -> Matrix:
        """Matrix of v -> u*v on dual coordinates."""
        entries: dict = {}
        for (i, j), terms in self.mult.items():
            ui = u.get(i)
            if not ui:
                continue
            for k, c in terms:
                key = (k, j)
                nv = entries.get(key, self.field.zero) + ui * c
                if nv:
                    entries[key] = nv
                else:
                    entries.pop(key, None)
        return Matrix(self.dim, self.dim, entries)


def dual_algebra(c: Coalgebra) -> DualAlgebra:
    mult: dict = {}
    for k in range(c.dim):
        for (i, j), coeff in c.delta_dict(k).items():
            mult.setdefault((i, j), []).append((k, coeff))
    frozen = {key: tuple(sorted(terms)) for key, terms in mult.items()}
    return DualAlgebra(field=c.field, dim=c.dim, labels=c.labels,
                       mult=frozen, unit=c.epsilon)


def radical(a: DualAlgebra) -> Subspace:
    """Jacobson radical via the trace-form kernel of the regular representation.

    Valid in characteristic 0 or p > dim; anything else is rejected rather
    than silently wrong.
    """
    if a.field.char != 0 and a.field.char <= a.dim:
        raise RadicalRangeError(
            f"radical algorithm out of validity range: characteristic "
            f"{a.field.char} <= dimension {a.dim}")
    mats = [a.left_mult_matrix({i: a.field.one}) for i in range(a.dim)]
    gram: dict = {}
    for i, mi in enumerate(mats):
        for j in range(i, a.dim):
            acc = a.field.zero
            entries_j = mats[j].entries
            for (k, t), v in mi.entries.items():
                w = entries_j.get((t, k))
                if w:
                    acc = acc + v * w
            if acc:
                gram[(i, j)] = acc
                if i != j:
                    gram[(j, i)] = acc
    return kernel(Matrix(a.dim, a.dim, gram), a.field)


def ideal_product(i: Subspace, j: Subspace, a: DualAlgebra) -> Subspace:
    """Span of all pairwise convolution products of basis elements."""
    if i.ambient_dim != a.dim or j.ambient_dim != a.dim:
        raise ValueError("ideal_product: ambient mismatch with the dual algebra")
    products = [a.multiply(u, v) for u in i.basis_dicts() for v in j.basis_dicts()]
    return Subspace.span(a.field, a.dim, products)


# -- filtrations ---------------------------------------------------------------

@dataclass(frozen=True)
class FiltrationChain:
    """Ascending chain of subspaces; constant after two equal terms."""

    terms: "tuple[Subspace, ...]"
    stabilized_at: "int | None"

    def dims(self) -> "tuple[int, ...]":
        return tuple(t.dim for t in self.terms)


def coradical_filtration(c: Coalgebra) -> FiltrationChain:
    """Terms C_n = perp(J^{n+1}) for J the radical of the convolution dual."""
    a = dual_algebra(c)
    j = radical(a)
    power = j
    terms: list[Subspace] = []
    for _ in range(c.dim + 1):
        term = power.perp()
        if terms and term == terms[-1]:
            return FiltrationChain(tuple(terms), len(terms) - 1)
        terms.append(term)
        if term.dim == c.dim:
            return FiltrationChain(tuple(terms), len(terms) - 1)
        power = ideal_product(power, j, a)
    return FiltrationChain(tuple(terms), None)


# -- wedge and coideal predicates ---------------------------------------------

def _tensor_flank(x: Subspace, dim: int, side: str) -> "list[dict]":
    """Basis of X (x) C (side='left') or C (x) X (side='right') flattened."""
    rows: list[dict] = []
    for u in x.basis_dicts():
        for t in range(dim):
            if side == "left":
                rows.append({flatten_index(j, t, dim): v for j, v in u.items()})
            else:
                rows.append({flatten_index(t, k, dim): v for k, v in u.items()})
    return rows


def wedge(x: Subspace, y: Subspace, c: Coalgebra) -> Subspace:
    """The wedge of two subspaces: pull X (x) C + C (x) Y back through Delta."""
    if x.ambient_dim != c.dim or y.ambient_dim != c.dim:
        raise ValueError("wedge: subspaces must live in the coalgebra's coordinates")
    target = Subspace.span(c.field, c.dim * c.dim,
                           _tensor_flank(x, c.dim, "left") +
                           _tensor_flank(y, c.dim, "right"))
    return preimage(c.delta_matrix(), target, c.field)


def _delta_image_contained(x: Subspace, c: Coalgebra, target_rows: "list[dict]") -> bool:
    target = Subspace.span(c.field, c.dim * c.dim, target_rows)
    dmat = c.delta_matrix()
    return all(target.contains_vector(dmat.apply(u)) for u in x.basis_dicts())


def is_right_coideal(x: Subspace, c: Coalgebra) -> bool:
    """Delta(X) <= X (x) C, i.e. X is a right subcomodule of C."""
    return _delta_image_contained(x, c, _tensor_flank(x, c.dim, "left"))


def is_left_coideal(x: Subspace, c: Coalgebra) -> bool:
    """Delta(X) <= C (x) X, i.e. X is a left subcomodule of C."""
    return _delta_image_contained(x, c, _tensor_flank(x, c.dim, "right"))


def is_subcoalgebra(x: Subspace, c: Coalgebra) -> bool:
    """Delta(X) <= X (x) X."""
    rows: list[dict] = []
    basis = x.basis_dicts()
    for u in basis:
        for v in basis:
            rows.append({flatten_index(j, k, c.dim): cu * cv
                         for j, cu in u.items() for k, cv in v.items()})
    return _delta_image_contained(x, c, rows)


def skew_primitives(g: int, h: int, c: Coalgebra) -> Subspace:
    """{v : Delta v = e_g (x) v + v (x) e_h} for grouplike e_g, e_h."""
    for idx in (g, h):
        if not c.is_grouplike(idx):
            raise ValueError(f"basis element {c.labels[idx]!r} is not grouplike")
    n = c.dim
    entries = dict(c.delta_matrix().entries)
    for t in range(n):
        for row in (flatten_index(g, t, n), flatten_index(t, h, n)):
            key = (row, t)
            nv = entries.get(key, c.field.zero) - c.field.one
            if nv:
                entries[key] = nv
            else:
                entries.pop(key, None)
    return kernel(Matrix(n * n, n, entries), c.field)
