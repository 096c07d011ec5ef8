"""Structure-constants text format for standalone finite coalgebras.

Grammar (line-oriented, ``#`` starts a comment, blanks ignored):

    coalgebra <name>          optional display name
    dim <n>                   required, first content line
    label <i> <name>          optional; default labels are e0, e1, ...
    delta <i>: <j> <k> <num[/den]>; <j> <k> <num[/den]>; ...
    epsilon: <v_0> <v_1> ... <v_{n-1}>
    side left|right           optional, applies to rho (default right)
    mdim <n>                  comodule dimension (default: dim)
    mlabel <i> <name>         optional comodule labels
    rho <i>: <j> <k> <num[/den]>; ...

``delta i: j k c`` contributes c * e_j (x) e_k to the comultiplication of
e_i.  ``rho`` lines, when present, define a standalone comodule over the
coalgebra in the same file, with the same (j, k, c) placement convention
as :mod:`qcalg.comod`.  Scalars are exact: integers or num/den.

Loading is lazily validated: well-formedness (dimensions, index ranges)
is always enforced, the coalgebra and comodule axioms only when
``check=True``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .coalg import Coalgebra, check_axioms
from .comod import Comodule, check_comodule
from .exactlin import Field, QQ


class FormatError(ValueError):
    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class LoadedFile:
    name: "str | None"
    coalgebra: Coalgebra
    comodule: "Comodule | None"


def _parse_terms(body: str, field: Field, line: int) -> "tuple[tuple[int, int, object], ...]":
    terms = []
    for chunk in body.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        bits = chunk.split()
        if len(bits) != 3:
            raise FormatError(f"expected 'j k coeff', got {chunk!r}", line)
        try:
            j, k = int(bits[0]), int(bits[1])
            c = field.parse(bits[2])
        except (ValueError, ZeroDivisionError) as exc:
            raise FormatError(str(exc), line) from None
        if c:
            terms.append((j, k, c))
    return tuple(terms)


def loads(text: str, field: Field = QQ, check: bool = False) -> LoadedFile:
    name = None
    dim = None
    mdim = None
    side = "right"
    labels: dict[int, str] = {}
    mlabels: dict[int, str] = {}
    delta: dict[int, tuple] = {}
    rho: dict[int, tuple] = {}
    epsilon = None

    for lineno, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        keyword, _, rest = stmt.partition(" ")
        rest = rest.strip()
        if keyword == "coalgebra":
            name = rest
        elif keyword == "dim":
            try:
                dim = int(rest)
            except ValueError:
                raise FormatError(f"bad dimension {rest!r}", lineno) from None
            if dim < 0:
                raise FormatError("dimension must be nonnegative", lineno)
        elif keyword == "mdim":
            mdim = int(rest)
        elif keyword == "side":
            if rest not in ("left", "right"):
                raise FormatError("side must be left or right", lineno)
            side = rest
        elif keyword in ("label", "mlabel"):
            bits = rest.split(None, 1)
            if len(bits) != 2:
                raise FormatError("expected '<index> <name>'", lineno)
            target = labels if keyword == "label" else mlabels
            target[int(bits[0])] = bits[1].strip()
        elif keyword in ("delta", "rho"):
            head, sep, body = rest.partition(":")
            if not sep:
                raise FormatError(f"expected '{keyword} <i>: ...'", lineno)
            i = int(head)
            target = delta if keyword == "delta" else rho
            if i in target:
                raise FormatError(f"{keyword} {i} given twice", lineno)
            target[i] = _parse_terms(body, field, lineno)
        elif keyword == "epsilon":
            body = rest
            if body.startswith(":"):
                body = body[1:]
            epsilon = tuple(field.parse(tok) for tok in body.split())
        elif keyword == "epsilon:":
            epsilon = tuple(field.parse(tok) for tok in rest.split())
        else:
            raise FormatError(f"unknown keyword {keyword!r}", lineno)

    if dim is None:
        raise FormatError("missing 'dim' line", 1)
    if epsilon is None:
        raise FormatError("missing 'epsilon' line", 1)
    if len(epsilon) != dim:
        raise FormatError(f"epsilon has {len(epsilon)} entries, expected {dim}", 1)
    for i, terms in delta.items():
        if i < 0 or i >= dim:
            raise FormatError(f"delta index {i} out of range", 1)
        for j, k, _ in terms:
            if not (0 <= j < dim and 0 <= k < dim):
                raise FormatError(f"delta {i}: tensor index out of range", 1)

    final_labels = tuple(labels.get(i, f"e{i}") for i in range(dim))
    if len(set(final_labels)) != dim:
        raise FormatError("duplicate labels", 1)
    coalgebra = Coalgebra(field=field, dim=dim, labels=final_labels,
                          delta=tuple(delta.get(i, ()) for i in range(dim)),
                          epsilon=epsilon)

    comodule = None
    if rho:
        m = mdim if mdim is not None else dim
        for i, terms in rho.items():
            if i < 0 or i >= m:
                raise FormatError(f"rho index {i} out of range", 1)
            for j, k, _ in terms:
                mod, coalg = (j, k) if side == "right" else (k, j)
                if not (0 <= mod < m and 0 <= coalg < dim):
                    raise FormatError(f"rho {i}: tensor index out of range", 1)
        comodule = Comodule(side=side, dim=m, over=coalgebra,
                            coaction=tuple(rho.get(i, ()) for i in range(m)),
                            labels=tuple(mlabels.get(i, f"m{i}") for i in range(m)))

    if check:
        report = check_axioms(coalgebra)
        if not report.ok:
            raise FormatError(f"coalgebra axioms fail: {report.first()}", 1)
        if comodule is not None:
            report = check_comodule(comodule)
            if not report.ok:
                raise FormatError(f"comodule axioms fail: {report.first()}", 1)
    return LoadedFile(name=name, coalgebra=coalgebra, comodule=comodule)


def dumps_coalgebra(c: Coalgebra, name: "str | None" = None) -> str:
    lines = []
    if name:
        lines.append(f"coalgebra {name}")
    lines.append(f"dim {c.dim}")
    for i, lab in enumerate(c.labels):
        if lab != f"e{i}":
            lines.append(f"label {i} {lab}")
    fmt = c.field.format
    for i in range(c.dim):
        terms = c.delta_dict(i)
        if not terms:
            continue
        rendered = "; ".join(f"{j} {k} {fmt(terms[(j, k)])}" for j, k in sorted(terms))
        lines.append(f"delta {i}: {rendered}")
    lines.append("epsilon: " + " ".join(fmt(v) for v in c.epsilon))
    return "\n".join(lines) + "\n"


def dumps_comodule(m: Comodule, name: "str | None" = None) -> str:
    """Coalgebra block followed by the comodule extension lines."""
    lines = [dumps_coalgebra(m.over, name=name).rstrip("\n")]
    lines.append(f"side {m.side}")
    if m.dim != m.over.dim:
        lines.append(f"mdim {m.dim}")
    for i, lab in enumerate(m.labels):
        if lab != f"m{i}":
            lines.append(f"mlabel {i} {lab}")
    fmt = m.field.format
    for i in range(m.dim):
        if not m.coaction[i]:
            continue
        rendered = "; ".join(f"{j} {k} {fmt(c)}" for j, k, c in m.coaction[i])
        lines.append(f"rho {i}: {rendered}")
    return "\n".join(lines) + "\n"
