"""Exact fields and a canonical-echelon subspace calculus.

Scalars are arbitrary-precision rationals (``fractions.Fraction``) or
residues modulo a prime.  No floating point anywhere: every operation is
an exact field operation.  Subspaces are stored in reduced row-echelon
form with sparse rows, so two equal subspaces have identical stored bases
and equality is a plain comparison.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Union


class FieldMismatchError(ValueError):
    """Operands belong to different ground fields."""


def _is_prime(n: int) -> bool:
    # Deterministic Miller-Rabin, valid for n < 3.3e24.
    if n < 2:
        return False
    for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class GFElement:
    """Residue modulo a prime; arithmetic stays in the field."""

    val: int
    p: int

    def _check(self, other: "GFElement") -> None:
        if self.p != other.p:
            raise FieldMismatchError(f"GF({self.p}) vs GF({other.p})")

    def __add__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement((self.val + other.val) % self.p, self.p)

    def __sub__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement((self.val - other.val) % self.p, self.p)

    def __mul__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        return GFElement(self.val * other.val % self.p, self.p)

    def __truediv__(self, other: "GFElement") -> "GFElement":
        self._check(other)
        if other.val == 0:
            raise ZeroDivisionError("division by zero in GF(p)")
        return GFElement(self.val * pow(other.val, self.p - 2, self.p) % self.p, self.p)

    def __neg__(self) -> "GFElement":
        return GFElement(-self.val % self.p, self.p)

    def __bool__(self) -> bool:
        return self.val != 0

    def __repr__(self) -> str:
        return f"{self.val}"


Scalar = Union[Fraction, GFElement]


class Rationals:
    """The field of rationals; scalars are ``fractions.Fraction``."""

    char = 0

    @property
    def zero(self) -> Fraction:
        return Fraction(0)

    @property
    def one(self) -> Fraction:
        return Fraction(1)

    def from_int(self, n: int) -> Fraction:
        return Fraction(n)

    def parse(self, text: str) -> Fraction:
        return Fraction(text.strip())

    def format(self, x: Fraction) -> str:
        return str(x)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Rationals)

    def __hash__(self) -> int:
        return hash("QQ")

    def __repr__(self) -> str:
        return "QQ"


class PrimeField:
    """GF(p) for a prime p; scalars are :class:`GFElement`."""

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.char = p

    @property
    def zero(self) -> GFElement:
        return GFElement(0, self.p)

    @property
    def one(self) -> GFElement:
        return GFElement(1, self.p)

    def from_int(self, n: int) -> GFElement:
        return GFElement(n % self.p, self.p)

    def parse(self, text: str) -> GFElement:
        text = text.strip()
        if "/" in text:
            num, den = text.split("/", 1)
            return self.from_int(int(num)) / self.from_int(int(den))
        return self.from_int(int(text))

    def format(self, x: GFElement) -> str:
        return str(x.val)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self) -> int:
        return hash(("GF", self.p))

    def __repr__(self) -> str:
        return f"GF({self.p})"


Field = Union[Rationals, PrimeField]

QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_named(name: str) -> Field:
    """Resolve 'rational' / 'gf(p)' / 'gf:p' to a field object."""
    name = name.strip().lower()
    if name in ("rational", "rationals", "q", "qq"):
        return QQ
    for prefix, suffix in (("gf(", ")"), ("gf:", "")):
        if name.startswith(prefix) and name.endswith(suffix):
            body = name[len(prefix):len(name) - len(suffix) if suffix else len(name)]
            return GF(int(body))
    raise ValueError(f"unknown field {name!r}")


# -- sparse rows ------------------------------------------------------------
#
# A "row" is a dict {col: scalar} with no zero values stored.


def row_add(a: dict, b: dict, coeff: Scalar) -> dict:
    """a + coeff*b, dropping zeros."""
    out = dict(a)
    for j, v in b.items():
        w = out.get(j)
        nv = coeff * v if w is None else w + coeff * v
        if nv:
            out[j] = nv
        else:
            out.pop(j, None)
    return out


def _rref(rows: Iterable[dict]) -> list[dict]:
    """Reduced row echelon form of sparse rows; canonical and unique."""
    pivots: dict[int, dict] = {}  # pivot column -> normalized row
    for row in rows:
        row = {j: v for j, v in row.items() if v}
        # Pivot rows carry no other pivot columns, so one sweep suffices.
        for j in [c for c in row if c in pivots]:
            v = row.get(j)
            if v:
                row = row_add(row, pivots[j], -v)
        if not row:
            continue
        lead = min(row)
        inv = row[lead]
        row = {j: v / inv for j, v in row.items()}
        for col, piv in list(pivots.items()):
            if lead in piv:
                pivots[col] = row_add(piv, row, -piv[lead])
        pivots[lead] = row
    return [pivots[c] for c in sorted(pivots)]


def _freeze_row(row: dict) -> tuple:
    return tuple(sorted(row.items()))


def _thaw_row(row: tuple) -> dict:
    return dict(row)


@dataclass(frozen=True)
class Matrix:
    """Sparse exact matrix; absent entries are zero, stored entries are not."""

    rows: int
    cols: int
    entries: "dict[tuple[int, int], Scalar]"

    @classmethod
    def from_entries(cls, rows: int, cols: int, entries: dict) -> "Matrix":
        return cls(rows, cols, {k: v for k, v in entries.items() if v})

    @classmethod
    def from_rows(cls, cols: int, row_dicts: "Iterable[dict]") -> "Matrix":
        entries = {}
        n = 0
        for i, row in enumerate(row_dicts):
            n = i + 1
            for j, v in row.items():
                if v:
                    entries[(i, j)] = v
        return cls(n, cols, entries)

    def row_dicts(self) -> list[dict]:
        out: list[dict] = [dict() for _ in range(self.rows)]
        for (i, j), v in self.entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, {(j, i): v for (i, j), v in self.entries.items()})

    def apply(self, vec: dict) -> dict:
        """Matrix times column vector (vector as sparse dict)."""
        out: dict = {}
        for (i, j), v in self.entries.items():
            c = vec.get(j)
            if c is None:
                continue
            w = out.get(i)
            nv = v * c if w is None else w + v * c
            if nv:
                out[i] = nv
            else:
                out.pop(i, None)
        return out

    def compose(self, other: "Matrix") -> "Matrix":
        """self @ other (apply other first)."""
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch: {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        by_row: dict[int, dict] = {}
        for (i, j), v in self.entries.items():
            by_row.setdefault(i, {})[j] = v
        entries: dict = {}
        other_rows = other.row_dicts()
        for i, row in by_row.items():
            acc: dict = {}
            for j, v in row.items():
                acc = row_add(acc, other_rows[j], v)
            for k, v in acc.items():
                entries[(i, k)] = v
        return Matrix(self.rows, other.cols, entries)

    @classmethod
    def vstack(cls, mats: "Iterable[Matrix]") -> "Matrix":
        mats = list(mats)
        if not mats:
            raise ValueError("vstack of nothing")
        cols = mats[0].cols
        entries: dict = {}
        offset = 0
        for m in mats:
            if m.cols != cols:
                raise ValueError("vstack: column counts differ")
            for (i, j), v in m.entries.items():
                entries[(i + offset, j)] = v
            offset += m.rows
        return cls(offset, cols, entries)

    def trace_in(self, field: Field) -> Scalar:
        acc = field.zero
        for (i, j), v in self.entries.items():
            if i == j:
                acc = acc + v
        return acc


@dataclass(frozen=True)
class Subspace:
    """Subspace of a coordinate space, stored as a canonical RREF basis.

    ``basis`` rows are sparse (sorted (col, scalar) tuples); uniqueness of
    the reduced echelon form makes subspace equality a tuple comparison.
    """

    field: Field
    ambient_dim: int
    basis: "tuple[tuple[tuple[int, Scalar], ...], ...]"

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: "Iterable[dict]") -> "Subspace":
        vectors = list(vectors)
        for vec in vectors:
            for j in vec:
                if j < 0 or j >= ambient_dim:
                    raise ValueError(f"coordinate {j} outside ambient dimension {ambient_dim}")
        rows = _rref(vectors)
        return cls(field, ambient_dim, tuple(_freeze_row(r) for r in rows))

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> "Subspace":
        return cls(field, ambient_dim, ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> "Subspace":
        one = field.one
        return cls(field, ambient_dim, tuple(((j, one),) for j in range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def basis_dicts(self) -> list[dict]:
        return [_thaw_row(r) for r in self.basis]

    def _require_compatible(self, other: "Subspace") -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: {self.ambient_dim} vs {other.ambient_dim}")

    def __add__(self, other: "Subspace") -> "Subspace":
        self._require_compatible(other)
        return Subspace.span(self.field, self.ambient_dim,
                             self.basis_dicts() + other.basis_dicts())

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: echelonize [a|a; b|0], read the 0|* block."""
        self._require_compatible(other)
        n = self.ambient_dim
        stacked: list[dict] = []
        for row in self.basis_dicts():
            double = dict(row)
            double.update({j + n: v for j, v in row.items()})
            stacked.append(double)
        stacked.extend(other.basis_dicts())
        meet: list[dict] = []
        for row in _rref(stacked):
            if min(row) >= n:
                meet.append({j - n: v for j, v in row.items()})
        return Subspace.span(self.field, n, meet)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def reduce_vector(self, vec: dict) -> dict:
        """Residual of vec after elimination by the stored basis."""
        vec = {j: v for j, v in vec.items() if v}
        for frozen in self.basis:
            row = _thaw_row(frozen)
            c = vec.get(min(row))
            if c:
                vec = row_add(vec, row, -c)
        return vec

    def contains_vector(self, vec: dict) -> bool:
        return not self.reduce_vector(vec)

    def contains(self, other: "Subspace") -> bool:
        self._require_compatible(other)
        return all(self.contains_vector(v) for v in other.basis_dicts())

    def quotient_dim(self, other: "Subspace") -> int:
        """dim(self/other); other must be contained in self."""
        if not self.contains(other):
            raise ValueError("quotient_dim: second argument is not a subspace of the first")
        return self.dim - other.dim

    def perp(self) -> "Subspace":
        """Annihilator in the dual coordinate space (same coordinates)."""
        mat = Matrix.from_rows(self.ambient_dim, self.basis_dicts())
        return kernel(mat, self.field)

    def pivot_columns(self) -> list[int]:
        return [min(_thaw_row(r)) for r in self.basis]

    def coordinates_of(self, vec: dict) -> dict:
        """Coefficients of vec in the stored basis; raises if not a member."""
        vec = dict(vec)
        coeffs: dict = {}
        for idx, frozen in enumerate(self.basis):
            row = _thaw_row(frozen)
            lead = min(row)
            c = vec.get(lead)
            if c:
                coeffs[idx] = c
                vec = row_add(vec, row, -c)
        if vec:
            raise ValueError("vector not in subspace")
        return coeffs

    def __repr__(self) -> str:
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim}, field={self.field})"


def echelonize(m: Matrix, field: Field) -> "tuple[int, Subspace]":
    """Rank and canonical row-space basis of a matrix."""
    space = Subspace.span(field, m.cols, m.row_dicts())
    return space.dim, space


def kernel(m: Matrix, field: Field) -> Subspace:
    """Null space {v : m v = 0} as a canonical subspace of the domain."""
    rows = _rref(m.row_dicts())
    pivot_cols = [min(r) for r in rows]
    pivot_set = set(pivot_cols)
    free_cols = [j for j in range(m.cols) if j not in pivot_set]
    gens: list[dict] = []
    for f in free_cols:
        vec = {f: field.one}
        for r, pc in zip(rows, pivot_cols):
            c = r.get(f)
            if c:
                vec[pc] = -c
        gens.append(vec)
    return Subspace.span(field, m.cols, gens)


def preimage(f: Matrix, w: Subspace, field: Field) -> Subspace:
    """{v : f(v) in w}; contains kernel(f).

    Linear because reduction by a fixed echelon basis is linear: v maps to
    the residual of f(v), and the preimage is that composite's kernel.
    """
    if w.ambient_dim != f.rows:
        raise ValueError(f"codomain mismatch: matrix has {f.rows} rows, subspace ambient {w.ambient_dim}")
    cols: list[dict] = []
    for t in range(f.cols):
        image = f.apply({t: field.one})
        cols.append(w.reduce_vector(image))
    residual = Matrix(f.rows, f.cols,
                      {(i, t): v for t, col in enumerate(cols) for i, v in col.items()})
    return kernel(residual, field)


def solve(m: Matrix, target: dict, field: Field) -> "dict | None":
    """One solution x of m x = target (free variables zero), or None."""
    aug = m.cols  # augmented column sits past every unknown
    rows = []
    for i, row in enumerate(m.row_dicts()):
        row = dict(row)
        t = target.get(i)
        if t:
            row[aug] = t
        rows.append(row)
    sol: dict = {}
    for r in _rref(rows):
        lead = min(r)
        if lead == aug:
            return None
        c = r.get(aug)
        if c:
            sol[lead] = c
    return sol
