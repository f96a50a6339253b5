"""Manifold description files: JSON schema, loading, and emission.

A file either spells out the full data

    { "name": str, "n": int, "m": int,
      "symbols": [{"name": str, "value": float}, ...],
      "alphas": [character, ...],
      "lattice": [[complex, ...], ...],
      "lattice_fiber": [[complex, ...], ...] | null }

or delegates to a builder: { "builder": "example1", "a": [1, -2],
"t_mode": "symbolic" }.  Characters are either explicit exponent vectors
{"a": [complex...], "b": [complex...]} or the real shorthand
{"real_exp": [scalar...]} for exp(sum c_j x_j).  A complex number is
{"re": scalar, "im": scalar} and a scalar maps symbol names to rational
strings "p" or "p/q".

Loading errors carry the JSON path of the offending node so command-line
users get position-annotated diagnostics.
"""

from __future__ import annotations

import json
import math
from pathlib import Path
from typing import Any, Mapping, Union

from .characters import CharacterExponent, LatticeBasis
from .exact import ComplexExact, ExactScalar, SymbolTable, parse_rational
from .manifold import SolvManifoldSpec, example1, example2_n1, torus

__all__ = ["SpecFileError", "load_spec", "load_spec_dict", "save_spec", "spec_to_dict"]


class SpecFileError(ValueError):
    """A manifold description file is malformed; carries the JSON path."""

    def __init__(self, message: str, where: str = "$"):
        super().__init__(f"{where}: {message}")
        self.where = where


def _require(condition: bool, message: str, where: str):
    if not condition:
        raise SpecFileError(message, where)


def _scalar(table: SymbolTable, node: Any, where: str) -> ExactScalar:
    _require(isinstance(node, Mapping), "scalar literal must be an object", where)
    coeffs = {}
    for name, text in node.items():
        _require(name in table, f"undeclared symbol {name!r}", where)
        try:
            coeffs[name] = parse_rational(text)
        except (TypeError, ValueError):
            raise SpecFileError(f"bad rational literal {text!r}", f"{where}.{name}")
    return ExactScalar.make(table, coeffs)


def _complex(table: SymbolTable, node: Any, where: str) -> ComplexExact:
    _require(isinstance(node, Mapping), "complex literal must be an object", where)
    unknown = set(node) - {"re", "im"}
    _require(not unknown, f"unknown complex fields {sorted(unknown)}", where)
    re = _scalar(table, node.get("re", {}), f"{where}.re")
    im = _scalar(table, node.get("im", {}), f"{where}.im")
    return ComplexExact(re, im)


def _character(table: SymbolTable, n: int, node: Any, where: str) -> CharacterExponent:
    _require(isinstance(node, Mapping), "character must be an object", where)
    if "real_exp" in node:
        _require(
            set(node) == {"real_exp"},
            'the "real_exp" shorthand cannot be mixed with explicit exponents',
            where,
        )
        coeffs = node["real_exp"]
        _require(isinstance(coeffs, list) and len(coeffs) == n,
                 f"real_exp must list {n} scalars", f"{where}.real_exp")
        scalars = [
            _scalar(table, c, f"{where}.real_exp[{j}]") for j, c in enumerate(coeffs)
        ]
        return CharacterExponent.from_real_exponent(table, scalars)
    _require(set(node) == {"a", "b"}, 'character needs fields "a" and "b"', where)
    vectors = []
    for key in ("a", "b"):
        entries = node[key]
        _require(isinstance(entries, list) and len(entries) == n,
                 f'"{key}" must list {n} complex numbers', f"{where}.{key}")
        vectors.append(
            tuple(
                _complex(table, entry, f"{where}.{key}[{j}]")
                for j, entry in enumerate(entries)
            )
        )
    return CharacterExponent(table, vectors[0], vectors[1])


def _lattice(table: SymbolTable, n: int, node: Any, where: str) -> LatticeBasis:
    _require(isinstance(node, list) and len(node) == 2 * n,
             f"lattice must list {2 * n} generators", where)
    generators = []
    for gi, gen in enumerate(node):
        _require(isinstance(gen, list) and len(gen) == n,
                 f"generator must list {n} complex numbers", f"{where}[{gi}]")
        generators.append(
            tuple(_complex(table, c, f"{where}[{gi}][{k}]") for k, c in enumerate(gen))
        )
    return LatticeBasis(n, tuple(generators))


def _symbol_table(node: Any, where: str) -> SymbolTable:
    table = SymbolTable.base()
    if node is None:
        return table
    _require(isinstance(node, list), "symbols must be a list", where)
    for si, entry in enumerate(node):
        here = f"{where}[{si}]"
        _require(isinstance(entry, Mapping) and {"name", "value"} <= set(entry),
                 'symbol entries need "name" and "value"', here)
        name, value = entry["name"], entry["value"]
        _require(isinstance(name, str) and name, "symbol name must be a nonempty string", here)
        if name in ("one", "pi"):
            expected = 1.0 if name == "one" else math.pi
            _require(value == expected, f"reserved symbol {name!r} must have witness {expected!r}", here)
            continue
        _require(isinstance(value, (int, float)) and math.isfinite(value) and value != 0,
                 "witness must be a finite nonzero number", here)
        try:
            table = table.with_symbol(name, float(value))
        except ValueError as exc:
            raise SpecFileError(str(exc), here)
    return table


_BUILDERS = ("torus", "example1", "example2_n1")


def _build(node: Mapping, where: str) -> SolvManifoldSpec:
    name = node["builder"]
    _require(name in _BUILDERS, f"unknown builder {name!r}", f"{where}.builder")
    try:
        if name == "torus":
            return torus(int(node.get("n", 1)), int(node.get("m", 1)))
        if name == "example1":
            return example1(node.get("a", []), node.get("t_mode", "symbolic"))
        return example2_n1(node.get("A", []))
    except (TypeError, ValueError) as exc:
        raise SpecFileError(f"builder {name!r} rejected its parameters: {exc}", where)


def load_spec_dict(data: Any, where: str = "$") -> SolvManifoldSpec:
    """Build a manifold from already parsed JSON data."""
    _require(isinstance(data, Mapping), "top level must be an object", where)
    if "builder" in data:
        return _build(data, where)
    for key in ("name", "n", "m", "alphas", "lattice"):
        _require(key in data, f'missing required field "{key}"', where)
    name = data["name"]
    _require(isinstance(name, str) and name, '"name" must be a nonempty string', f"{where}.name")
    n, m = data["n"], data["m"]
    _require(isinstance(n, int) and isinstance(m, int) and n >= 0 and m >= 0 and n + m >= 1,
             "need integer n, m >= 0 with n + m >= 1", where)
    table = _symbol_table(data.get("symbols"), f"{where}.symbols")
    alphas_node = data["alphas"]
    _require(isinstance(alphas_node, list) and len(alphas_node) == m,
             f'"alphas" must list {m} characters', f"{where}.alphas")
    alphas = tuple(
        _character(table, n, node, f"{where}.alphas[{i}]") for i, node in enumerate(alphas_node)
    )
    lattice = _lattice(table, n, data["lattice"], f"{where}.lattice")
    fiber_node = data.get("lattice_fiber")
    fiber = None if fiber_node is None else _lattice(table, m, fiber_node, f"{where}.lattice_fiber")
    try:
        return SolvManifoldSpec(
            name=name, n=n, m=m, alphas=alphas, lattice=lattice,
            lattice_fiber=fiber, symbols=table,
        )
    except ValueError as exc:
        raise SpecFileError(str(exc), where)


def load_spec(path: Union[str, Path]) -> SolvManifoldSpec:
    """Load a manifold description file; raises SpecFileError on any defect."""
    text = Path(path).read_text()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise SpecFileError(
            f"invalid JSON: {exc.msg}", f"line {exc.lineno}, column {exc.colno}"
        )
    return load_spec_dict(data)


def spec_to_dict(spec: SolvManifoldSpec) -> dict:
    """Serialise to the schema in a form that reloads to an equal manifold."""

    def scalar(s: ExactScalar) -> dict:
        return s.to_literal()

    def cplx(c: ComplexExact) -> dict:
        return {"re": scalar(c.re), "im": scalar(c.im)}

    def character(chi: CharacterExponent) -> dict:
        return {"a": [cplx(c) for c in chi.a], "b": [cplx(c) for c in chi.b]}

    def lattice(basis: LatticeBasis) -> list:
        return [[cplx(c) for c in gen] for gen in basis.generators]

    return {
        "schema_version": 1,
        "name": spec.name,
        "n": spec.n,
        "m": spec.m,
        "symbols": [{"name": name, "value": value} for name, value in spec.symbols.entries],
        "alphas": [character(alpha) for alpha in spec.alphas],
        "lattice": lattice(spec.lattice),
        "lattice_fiber": None if spec.lattice_fiber is None else lattice(spec.lattice_fiber),
    }


def save_spec(spec: SolvManifoldSpec, path: Union[str, Path]):
    Path(path).write_text(json.dumps(spec_to_dict(spec), indent=2) + "\n")
