"""Text format for model specifications.

A spec file is a list of ``key = value`` lines; ``#`` starts a comment::

    origin       = normal(1, 2)
    core_left    = uniform(0, 1)
    core_right   = uniform(0, 1)
    spread_left  = exponential(3)
    spread_right = exponential(3)
    k    = 2
    n    = 1
    seed = 0
    mode = piecewise

The five distributions may instead be given at once in bracket notation,
``model = [normal(1, 2), uniform(0, 1), uniform(0, 1), exponential(3), exponential(3)]_2``,
where the optional ``_2`` suffix sets ``k``.  Grammar (EBNF)::

    file         = { line } ;
    line         = [ key "=" value ] [ "#" comment ] newline ;
    key          = "origin" | "core_left" | "core_right" | "spread_left"
                 | "spread_right" | "model" | "k" | "n" | "seed" | "mode" ;
    distribution = family "(" number { "," number } ")" ;
    family       = "normal" | "uniform" | "exponential" | "constant"
                 | "N" | "U" | "Exp" | "const" ;           (case-insensitive)
    model        = "[" distribution 4 * ( "," distribution ) "]" [ "_" integer ] ;
    mode         = "piecewise" | "limit" ;
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .dist import Constant, Distribution, Exponential, Normal, Uniform
from .simulate import MODES, FuzzyModelSpec

__all__ = [
    "SpecParseError",
    "ModelSpecFile",
    "parse_distribution",
    "parse_spec",
    "parse_spec_file",
    "format_spec",
]

FAMILIES: dict[str, type[Distribution]] = {
    "normal": Normal,
    "n": Normal,
    "uniform": Uniform,
    "u": Uniform,
    "exponential": Exponential,
    "exp": Exponential,
    "constant": Constant,
    "const": Constant,
}
_ARITY = {Normal: 2, Uniform: 2, Exponential: 1, Constant: 1}

DIST_KEYS = ("origin", "core_left", "core_right", "spread_left", "spread_right")
INT_KEYS = ("k", "n", "seed")
KEYS = DIST_KEYS + INT_KEYS + ("mode", "model")
_ATTR_TO_KEY = dict(zip(("f_o", "f_cl", "f_cr", "f_sl", "f_sr", "k", "seed"), DIST_KEYS + ("k", "seed")))

_CALL = re.compile(r"^\s*([A-Za-z_]+)\s*\((.*)\)\s*$")
_MODEL = re.compile(r"^\s*\[(.*)\]\s*(?:_\s*(\S+))?\s*$")


class SpecParseError(ValueError):
    def __init__(self, message, line=None, field=None):
        where = []
        if line is not None:
            where.append(f"line {line}")
        if field is not None:
            where.append(f"field {field!r}")
        prefix = f"{', '.join(where)}: " if where else ""
        super().__init__(prefix + message)
        self.line = line
        self.field = field


@dataclass(frozen=True)
class ModelSpecFile:
    spec: FuzzyModelSpec
    n: int = 1
    mode: str = "limit"


def distribution_from_params(family: str, params) -> Distribution:
    cls = FAMILIES.get(family.lower())
    if cls is None:
        raise ValueError(f"unknown distribution family {family!r}")
    params = [float(p) for p in params]
    if len(params) != _ARITY[cls]:
        raise ValueError(
            f"{cls.name} takes {_ARITY[cls]} parameter(s), got {len(params)}"
        )
    return cls(*params)


def parse_distribution(text: str) -> Distribution:
    """Parse ``family(p1, p2, ...)`` into a distribution."""
    m = _CALL.match(text)
    if not m:
        raise ValueError(f"expected family(params), got {text.strip()!r}")
    family, args = m.group(1), m.group(2)
    try:
        params = [float(a) for a in args.split(",")] if args.strip() else []
    except ValueError:
        raise ValueError(f"non-numeric parameter in {text.strip()!r}") from None
    return distribution_from_params(family, params)


def _split_top(text):
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    parts.append("".join(cur))
    return parts


def _parse_int(value, key, lineno):
    try:
        v = int(value, 0)
    except ValueError:
        raise SpecParseError(f"expected an integer, got {value!r}", lineno, key) from None
    if v < 0:
        raise SpecParseError(f"must be nonnegative, got {v}", lineno, key)
    return v


def parse_spec_file(text: str, default_seed: int = 0) -> ModelSpecFile:
    """Parse a full spec file, including sample size and mode."""
    values: dict[str, object] = {}
    lines: dict[str, int] = {}

    def put(key, value, lineno):
        if key in values:
            raise SpecParseError(
                f"duplicate definition (first on line {lines[key]})", lineno, key
            )
        values[key] = value
        lines[key] = lineno

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise SpecParseError(f"expected 'key = value', got {line!r}", lineno)
        key, value = (s.strip() for s in line.split("=", 1))
        key = key.lower()
        if key not in KEYS:
            raise SpecParseError(f"unknown key (expected one of {', '.join(KEYS)})", lineno, key)
        if key in DIST_KEYS:
            try:
                put(key, parse_distribution(value), lineno)
            except ValueError as exc:
                raise SpecParseError(str(exc), lineno, key) from None
        elif key == "model":
            m = _MODEL.match(value)
            parts = _split_top(m.group(1)) if m else []
            if len(parts) != 5:
                raise SpecParseError(
                    "expected [f_O, f_Cl, f_Cr, f_Sl, f_Sr] with five distributions",
                    lineno, key,
                )
            for dkey, part in zip(DIST_KEYS, parts):
                try:
                    put(dkey, parse_distribution(part), lineno)
                except ValueError as exc:
                    raise SpecParseError(str(exc), lineno, dkey) from None
            if m.group(2) is not None:
                put("k", _parse_int(m.group(2), "k", lineno), lineno)
        elif key in INT_KEYS:
            put(key, _parse_int(value, key, lineno), lineno)
        else:
            mode = value.lower()
            if mode not in MODES:
                raise SpecParseError(f"expected one of {MODES}, got {value!r}", lineno, key)
            put(key, mode, lineno)

    missing = [k for k in DIST_KEYS if k not in values]
    if missing:
        raise SpecParseError(f"missing required field(s): {', '.join(missing)}")

    try:
        spec = FuzzyModelSpec(
            *(values[k] for k in DIST_KEYS),
            k=values.get("k", 0),
            seed=values.get("seed", default_seed),
        )
    except (TypeError, ValueError) as exc:
        field = _ATTR_TO_KEY.get(str(exc).split(" ", 1)[0])
        raise SpecParseError(str(exc), lines.get(field), field) from None
    return ModelSpecFile(spec, n=values.get("n", 1), mode=values.get("mode", "limit"))


def parse_spec(text: str, default_seed: int = 0) -> FuzzyModelSpec:
    return parse_spec_file(text, default_seed).spec


def format_spec(spec: FuzzyModelSpec | ModelSpecFile) -> str:
    """Canonical text for a spec; ``parse_spec(format_spec(s)) == s``."""
    doc = spec if isinstance(spec, ModelSpecFile) else None
    spec = doc.spec if doc else spec
    width = max(len(k) for k in DIST_KEYS)
    out = [f"{key:<{width}} = {d.to_text()}" for key, d in zip(DIST_KEYS, spec.distributions)]
    out.append(f"{'k':<{width}} = {spec.k}")
    if doc is not None:
        out.append(f"{'n':<{width}} = {doc.n}")
    out.append(f"{'seed':<{width}} = {spec.seed}")
    if doc is not None:
        out.append(f"{'mode':<{width}} = {doc.mode}")
    return "\n".join(out) + "\n"
