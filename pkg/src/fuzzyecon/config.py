"""JSON configuration parsing and serialization.

Fuzzy numbers are encoded as one of

    {"trapezoid": [a, b, c, d]}
    {"crisp": v}
    {"levels": [[alpha, lower, upper], ...]}

where every scalar may be a JSON number or a string such as ``"1/3"``
(parsed as an exact rational).  Validation failures raise
:class:`ConfigError` carrying the JSON path of the offending value and,
when the source text is available, its line and column.
"""

from __future__ import annotations

import json
from fractions import Fraction
from json.decoder import scanstring
from pathlib import Path

import numpy as np

from .economy import Economy, FuzzyQuadraticUtility
from .fuzzy import (
    FuzzyNumber,
    InvalidFuzzyNumberError,
    Trapezoid,
    crisp,
    from_trapezoid,
    to_fraction,
)
from .game import FuzzyGame
from .preference import FuzzyRelation

__all__ = [
    "ConfigError",
    "dump_economy",
    "dump_fuzzy_number",
    "dump_game",
    "dump_relation",
    "load_economy",
    "load_fuzzy_number",
    "load_game",
    "load_relation",
    "parse_economy",
    "parse_fuzzy_number",
    "parse_game",
    "parse_relation",
]


class ConfigError(ValueError):
    """Invalid configuration content, located by JSON path and line."""

    def __init__(self, message: str, path: tuple = (), source: str | None = None,
                 line: int | None = None, column: int | None = None):
        self.message = message
        self.path = path
        self.source = source
        self.line = line
        self.column = column
        super().__init__(self._format())

    def _format(self) -> str:
        where = self.source or "<config>"
        if self.line is not None:
            where += f":{self.line}"
            if self.column is not None:
                where += f":{self.column}"
        at = format_path(self.path)
        return f"{where}: at {at}: {self.message}" if at else f"{where}: {self.message}"

    def located(self, source: str, text: str | None) -> "ConfigError":
        line = column = None
        if text is not None:
            pos = locate(text, self.path)
            if pos is not None:
                line, column = pos
        return ConfigError(self.message, self.path, source, line, column)


def format_path(path: tuple) -> str:
    out = ""
    for part in path:
        out += f"[{part}]" if isinstance(part, int) else (f".{part}" if out else part)
    return out


# -- locating JSON paths in source text -------------------------------------


def locate(text: str, path: tuple) -> tuple[int, int] | None:
    """(line, column) of the value at ``path`` in already-valid JSON text."""
    try:
        pos = _seek_value(text, _skip_ws(text, 0), tuple(path))
    except (ValueError, IndexError):
        return None
    if pos is None:
        return None
    line = text.count("\n", 0, pos) + 1
    column = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, column


def _skip_ws(text: str, i: int) -> int:
    while i < len(text) and text[i] in " \t\n\r":
        i += 1
    return i


def _skip_value(text: str, i: int) -> int:
    """Index just past the value starting at ``i``."""
    c = text[i]
    if c == '"':
        _, end = scanstring(text, i + 1)
        return end
    if c == "{":
        i = _skip_ws(text, i + 1)
        while text[i] != "}":
            _, i = scanstring(text, i + 1)  # key
            i = _skip_ws(text, i)
            i = _skip_ws(text, i + 1)  # past ':'
            i = _skip_value(text, i)
            i = _skip_ws(text, i)
            if text[i] == ",":
                i = _skip_ws(text, i + 1)
        return i + 1
    if c == "[":
        i = _skip_ws(text, i + 1)
        while text[i] != "]":
            i = _skip_value(text, i)
            i = _skip_ws(text, i)
            if text[i] == ",":
                i = _skip_ws(text, i + 1)
        return i + 1
    j = i
    while j < len(text) and text[j] not in ",]}\t\n\r ":
        j += 1
    return j


def _seek_value(text: str, i: int, path: tuple) -> int | None:
    if not path:
        return i
    head, rest = path[0], path[1:]
    c = text[i]
    if c == "{" and isinstance(head, str):
        i = _skip_ws(text, i + 1)
        while text[i] != "}":
            key, i = scanstring(text, i + 1)
            i = _skip_ws(text, i)
            i = _skip_ws(text, i + 1)  # past ':'
            if key == head:
                return _seek_value(text, i, rest)
            i = _skip_ws(text, _skip_value(text, i))
            if text[i] == ",":
                i = _skip_ws(text, i + 1)
        return None
    if c == "[" and isinstance(head, int):
        i = _skip_ws(text, i + 1)
        index = 0
        while text[i] != "]":
            if index == head:
                return _seek_value(text, i, rest)
            i = _skip_ws(text, _skip_value(text, i))
            if text[i] == ",":
                i = _skip_ws(text, i + 1)
            index += 1
        return None
    return None


# -- scalar and fuzzy-number parsing ----------------------------------------


def _parse_fraction(obj, path) -> Fraction:
    if not isinstance(obj, (int, float, str)) or isinstance(obj, bool):
        raise ConfigError(f"expected a number, got {type(obj).__name__}", path)
    try:
        return to_fraction(obj)
    except InvalidFuzzyNumberError as exc:
        raise ConfigError(str(exc), path) from exc


def _parse_scalar(obj, path) -> float:
    return float(_parse_fraction(obj, path))


def parse_fuzzy_number(obj, path=()) -> FuzzyNumber:
    if not isinstance(obj, dict):
        raise ConfigError(
            "fuzzy number must be an object with key 'trapezoid', 'crisp' or 'levels'", path
        )
    keys = set(obj)
    if keys == {"trapezoid"}:
        vals = obj["trapezoid"]
        if not isinstance(vals, list) or len(vals) != 4:
            raise ConfigError("'trapezoid' needs exactly 4 numbers", path + ("trapezoid",))
        a, b, c, d = (_parse_fraction(v, path + ("trapezoid", k)) for k, v in enumerate(vals))
        try:
            return from_trapezoid(Trapezoid(a, b, c, d))
        except InvalidFuzzyNumberError as exc:
            raise ConfigError(str(exc), path + ("trapezoid",)) from exc
    if keys == {"crisp"}:
        return crisp(_parse_fraction(obj["crisp"], path + ("crisp",)))
    if keys == {"levels"}:
        rows = obj["levels"]
        if not isinstance(rows, list) or not rows:
            raise ConfigError("'levels' needs a non-empty list of [alpha, lower, upper]",
                              path + ("levels",))
        levels = []
        for k, row in enumerate(rows):
            if not isinstance(row, list) or len(row) != 3:
                raise ConfigError("level entry must be [alpha, lower, upper]",
                                  path + ("levels", k))
            levels.append(tuple(_parse_fraction(v, path + ("levels", k, j))
                                for j, v in enumerate(row)))
        try:
            return FuzzyNumber(tuple(levels))
        except InvalidFuzzyNumberError as exc:
            raise ConfigError(str(exc), path + ("levels",)) from exc
    raise ConfigError(
        f"fuzzy number needs exactly one of 'trapezoid', 'crisp' or 'levels', got {sorted(keys)}",
        path,
    )


def dump_fuzzy_number(f: FuzzyNumber) -> dict:
    return {"levels": [[_dump_number(a), _dump_number(lo), _dump_number(hi)]
                       for a, lo, hi in f.levels]}


def _dump_number(fr: Fraction):
    # floats round-trip exactly; anything else (e.g. 1/3) is kept rational
    as_float = float(fr)
    if Fraction(as_float) == fr:
        return as_float
    return str(fr)


# -- relation ----------------------------------------------------------------


def parse_relation(doc, path=()) -> FuzzyRelation:
    if not isinstance(doc, dict):
        raise ConfigError("relation config must be an object", path)
    elements = doc.get("elements")
    if not isinstance(elements, list) or not elements:
        raise ConfigError("'elements' must be a non-empty list of labels", path + ("elements",))
    labels = tuple(str(e) for e in elements)
    mu = doc.get("mu")
    n = len(labels)
    if not isinstance(mu, list) or len(mu) != n:
        raise ConfigError(f"'mu' must be a {n}x{n} matrix", path + ("mu",))
    rows = []
    for i, row in enumerate(mu):
        if not isinstance(row, list) or len(row) != n:
            raise ConfigError(f"'mu' row {i} must have {n} entries", path + ("mu", i))
        rows.append(tuple(parse_fuzzy_number(entry, path + ("mu", i, j))
                          for j, entry in enumerate(row)))
    return FuzzyRelation(labels, tuple(rows))


def dump_relation(rel: FuzzyRelation) -> dict:
    return {
        "elements": list(rel.elements),
        "mu": [[dump_fuzzy_number(f) for f in row] for row in rel.mu],
    }


# -- game --------------------------------------------------------------------


def parse_game(doc, path=()) -> FuzzyGame:
    if not isinstance(doc, dict):
        raise ConfigError("game config must be an object", path)
    counts = doc.get("strategy_counts")
    if not isinstance(counts, list) or not counts or not all(
        isinstance(c, int) and not isinstance(c, bool) and c >= 1 for c in counts
    ):
        raise ConfigError("'strategy_counts' must be a list of positive integers",
                          path + ("strategy_counts",))
    payoffs_doc = doc.get("payoffs")
    if not isinstance(payoffs_doc, dict):
        raise ConfigError("'payoffs' must map player index to a flat payoff list",
                          path + ("payoffs",))
    n = len(counts)
    tensors = []
    for i in range(n):
        key = str(i)
        if key not in payoffs_doc:
            raise ConfigError(f"missing payoffs for player {i}", path + ("payoffs",))
        flat = payoffs_doc[key]
        if not isinstance(flat, list):
            raise ConfigError(f"payoffs for player {i} must be a list", path + ("payoffs", key))
        tensors.append(tuple(parse_fuzzy_number(entry, path + ("payoffs", key, k))
                             for k, entry in enumerate(flat)))
    extra = set(payoffs_doc) - {str(i) for i in range(n)}
    if extra:
        raise ConfigError(f"unknown players in 'payoffs': {sorted(extra)}", path + ("payoffs",))
    try:
        return FuzzyGame(tuple(counts), tuple(tensors))
    except ValueError as exc:
        raise ConfigError(str(exc), path) from exc


def dump_game(game: FuzzyGame) -> dict:
    return {
        "strategy_counts": list(game.strategy_counts),
        "payoffs": {str(i): [dump_fuzzy_number(f) for f in tensor]
                    for i, tensor in enumerate(game.payoffs)},
    }


# -- economy -----------------------------------------------------------------


def parse_economy(doc, path=()) -> Economy:
    if not isinstance(doc, dict):
        raise ConfigError("economy config must be an object", path)
    goods = doc.get("goods")
    agents = doc.get("agents")
    for name, value in (("goods", goods), ("agents", agents)):
        if not isinstance(value, int) or isinstance(value, bool) or value < 1:
            raise ConfigError(f"'{name}' must be a positive integer", path + (name,))
    endowments = doc.get("endowments")
    if not isinstance(endowments, list) or len(endowments) != agents:
        raise ConfigError(f"'endowments' must list {agents} agent rows", path + ("endowments",))
    w = np.zeros((agents, goods))
    for i, row in enumerate(endowments):
        if not isinstance(row, list) or len(row) != goods:
            raise ConfigError(f"endowment row {i} must have {goods} entries",
                              path + ("endowments", i))
        for h, v in enumerate(row):
            w[i, h] = _parse_scalar(v, path + ("endowments", i, h))
    utilities_doc = doc.get("utilities")
    if not isinstance(utilities_doc, list) or len(utilities_doc) != agents:
        raise ConfigError(f"'utilities' must list {agents} utility objects",
                          path + ("utilities",))
    utilities = []
    for i, u in enumerate(utilities_doc):
        utilities.append(_parse_utility(u, goods, path + ("utilities", i)))
    try:
        return Economy(w, tuple(utilities))
    except ValueError as exc:
        raise ConfigError(str(exc), path) from exc


def _parse_utility(doc, goods: int, path) -> FuzzyQuadraticUtility:
    if not isinstance(doc, dict):
        raise ConfigError("utility must be an object", path)
    coeffs = {}
    for name in ("quad", "lin"):
        entries = doc.get(name)
        if not isinstance(entries, list) or len(entries) != goods:
            raise ConfigError(f"'{name}' must list {goods} fuzzy coefficients",
                              path + (name,))
        coeffs[name] = tuple(parse_fuzzy_number(e, path + (name, h))
                             for h, e in enumerate(entries))
    const = parse_fuzzy_number(doc["const"], path + ("const",)) if "const" in doc else crisp(0)
    sign_token = doc.get("const_sign", "+")
    if sign_token not in ("+", "-"):
        raise ConfigError(f"'const_sign' must be '+' or '-', got {sign_token!r}",
                          path + ("const_sign",))
    try:
        return FuzzyQuadraticUtility(
            coeffs["quad"], coeffs["lin"], const, 1 if sign_token == "+" else -1
        )
    except ValueError as exc:
        raise ConfigError(str(exc), path) from exc


def dump_economy(econ: Economy) -> dict:
    return {
        "goods": econ.goods,
        "agents": econ.agents,
        "endowments": [[float(v) for v in row] for row in econ.w],
        "utilities": [
            {
                "quad": [dump_fuzzy_number(f) for f in u.quad],
                "lin": [dump_fuzzy_number(f) for f in u.lin],
                "const": dump_fuzzy_number(u.const),
                "const_sign": "+" if u.const_sign == 1 else "-",
            }
            for u in econ.utilities
        ],
    }


# -- file loading -------------------------------------------------------------


def _load(path, parser):
    source = str(path)
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ConfigError(f"cannot read config: {exc}", source=source) from exc
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigError(f"invalid JSON: {exc.msg}", source=source,
                          line=exc.lineno, column=exc.colno) from exc
    try:
        return parser(doc)
    except ConfigError as exc:
        raise exc.located(source, text) from None


def load_fuzzy_number(path) -> FuzzyNumber:
    return _load(path, parse_fuzzy_number)


def load_relation(path) -> FuzzyRelation:
    return _load(path, parse_relation)


def load_game(path) -> FuzzyGame:
    return _load(path, parse_game)


def load_economy(path) -> Economy:
    return _load(path, parse_economy)
