"""Reading algebras, tensors and parameter grids from JSON or inline shorthand.

Algebra documents::

    {"field": "gf:3", "dim": 3, "structure": [[1, 3, ["1", "0", "0"]], ...]}
    {"field": "q", "canonical": {"alpha": "1", "beta": "0", "gamma": "0", "delta": "1"}}

Structure entries are 1-based ``[i, j, coefficients of [e_i, e_j]]``; the
reverse bracket is filled in when absent. The field may be a spec string or
a field object. Tensor documents are ``{"coefficients": [[...], ...]}`` or the
alias form ``{"x": ..., "p": ..., ...}``. Inline forms: ``canonical:a,b,c,d``,
``0`` and ``p=1,q=-1``.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass

from .errors import ParseError
from .fields import QQ, Field, field_from_dict
from .lie import CanonicalParams, LieAlgebra, canonical_algebra, make_algebra
from .tensors import ALIASES, Tensor2


def dumps(doc) -> str:
    """Byte-stable JSON."""
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def loads(text: str, source: str = "<input>"):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{source}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from exc


def _read_document(arg: str):
    """Inline JSON, or the contents of a file; ``None`` when ``arg`` is neither."""
    stripped = arg.lstrip()
    if stripped.startswith(("{", "[")):
        return loads(arg)
    if os.path.isfile(arg):
        with open(arg, encoding="utf-8") as fh:
            return loads(fh.read(), arg)
    return None


def _scalar(field: Field, value, where: str):
    if isinstance(value, bool) or not isinstance(value, (str, int)):
        raise ParseError(f"{where}: expected a scalar string, got {value!r}")
    try:
        return field.parse(str(value))
    except ParseError as exc:
        raise ParseError(f"{where}: {exc}") from exc


def resolve_field(doc_field, override: Field | None) -> Field:
    if override is not None:
        return override
    if doc_field is None:
        return QQ
    return field_from_dict(doc_field)


@dataclass(frozen=True)
class AlgebraInput:
    field: Field
    algebra: LieAlgebra
    params: CanonicalParams | None = None


def _canonical(field: Field, values, where: str) -> CanonicalParams:
    if isinstance(values, dict):
        try:
            values = [values[k] for k in ("alpha", "beta", "gamma", "delta")]
        except KeyError as exc:
            raise ParseError(f"{where}: missing {exc.args[0]!r}") from None
    if len(values) != 4:
        raise ParseError(f"{where}: expected four parameters, got {len(values)}")
    return CanonicalParams(*(_scalar(field, v, where) for v in values))


def parse_params(text: str, field: Field) -> CanonicalParams:
    """``a,b,c,d`` (optionally prefixed ``canonical:``)."""
    body = text.split(":", 1)[1] if text.startswith("canonical:") else text
    return _canonical(field, [v.strip() for v in body.split(",")], "parameters")


def parse_algebra(arg: str, field: Field | None = None) -> AlgebraInput:
    if arg.startswith("canonical:"):
        f = field or QQ
        params = parse_params(arg, f)
        return AlgebraInput(f, canonical_algebra(params), params)
    doc = _read_document(arg)
    if not isinstance(doc, dict):
        raise ParseError(f"cannot read algebra {arg!r}: expected canonical:a,b,c,d or a JSON object")
    f = resolve_field(doc.get("field"), field)
    if "canonical" in doc:
        params = _canonical(f, doc["canonical"], "canonical")
        return AlgebraInput(f, canonical_algebra(params), params)
    return AlgebraInput(f, make_algebra(f, _structure(f, doc)))


def _structure(field: Field, doc: dict):
    try:
        n = int(doc["dim"])
        entries = doc["structure"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"algebra document needs 'dim' and 'structure': {exc}") from None
    tab = [[None] * n for _ in range(n)]
    for k, entry in enumerate(entries):
        where = f"structure[{k}]"
        try:
            i, j, coeffs = entry
            i, j = int(i) - 1, int(j) - 1
        except (TypeError, ValueError):
            raise ParseError(f"{where}: expected [i, j, [coefficients]]") from None
        if not (0 <= i < n and 0 <= j < n) or len(coeffs) != n:
            raise ParseError(f"{where}: index out of range or wrong coefficient count")
        tab[i][j] = [_scalar(field, c, where) for c in coeffs]
    for i in range(n):
        for j in range(n):
            if tab[i][j] is None:
                tab[i][j] = [-c for c in tab[j][i]] if tab[j][i] is not None else [field.zero] * n
    return tab


def parse_tensor(arg: str, field: Field, n: int = 3) -> Tensor2:
    text = arg.strip()
    if text == "0":
        return Tensor2.zeros(field, n)
    doc = _read_document(text)
    if doc is None:
        if "=" not in text:
            raise ParseError(f"cannot read tensor {arg!r}")
        doc = {}
        for part in text.split(","):
            name, _, value = part.partition("=")
            doc[name.strip()] = value.strip()
    if not isinstance(doc, dict):
        raise ParseError("tensor document must be a JSON object")
    if "coefficients" in doc:
        rows = doc["coefficients"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise ParseError(f"coefficients must be a {n}x{n} array")
        return Tensor2(field, tuple(tuple(_scalar(field, c, f"coefficients[{i}]") for c in row)
                                    for i, row in enumerate(rows)))
    unknown = set(doc) - set(ALIASES) - {"field"}
    if unknown:
        raise ParseError(f"unknown coefficient names: {', '.join(sorted(unknown))}")
    if n != 3:
        raise ParseError("the alias form is only defined for three dimensional algebras")
    values = {k: _scalar(field, v, k) for k, v in doc.items() if k != "field"}
    return Tensor2.from_aliases(field, **values)


def tensor_to_dict(r: Tensor2) -> dict:
    return {"coefficients": [[str(c) for c in row] for row in r.K]}


@dataclass(frozen=True)
class GridEntry:
    field: Field
    predicate: str
    params: list[CanonicalParams] | None
    shape: str = "all"
    sample: int | None = None
    seed: int = 0


def parse_grid(arg: str, field: Field | None = None) -> list[GridEntry]:
    """A batch of sweeps.

    ``{"runs": [{"field": "gf:3", "predicate": "thm2.1", "params": "all"}, ...]}``;
    ``params`` is ``"all"`` or a list of ``"a,b,c,d"`` strings.
    """
    doc = _read_document(arg)
    if doc is None:
        raise ParseError(f"cannot read grid {arg!r}")
    runs = doc.get("runs") if isinstance(doc, dict) else doc
    if not isinstance(runs, list):
        raise ParseError("grid document needs a 'runs' list")
    out = []
    for k, run in enumerate(runs):
        if not isinstance(run, dict) or "predicate" not in run:
            raise ParseError(f"runs[{k}]: expected an object with a 'predicate'")
        f = resolve_field(run.get("field"), field)
        raw = run.get("params", "all")
        params = None if raw == "all" else [parse_params(str(p), f) for p in raw]
        out.append(GridEntry(f, str(run["predicate"]), params, run.get("shape", "all"),
                             run.get("sample"), int(run.get("seed", 0))))
    return out
