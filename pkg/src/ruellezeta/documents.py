"""System-description documents and the JSON encodings used in reports.

Integers that may grow past 53 bits (matrix entries, polynomial
coefficients, torsion orders) are written as decimal strings; inputs accept
either JSON integers or decimal strings.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from decimal import Decimal, InvalidOperation
from fractions import Fraction
from typing import Any

from .complex_det import LogMonomial
from .errors import ParseError, ValidationError
from .exact_linalg import IntegerMatrix, unimodular_inverse
from .mapping_torus import (
    GradedEndo,
    Period,
    check_semisimple_at_one,
    graded_system,
    torus_system,
)

OPTION_KEYS = ("max_period", "series_order")
GENERATORS = ("random_semisimple_torus",)


def encode_int(n: int) -> str:
    return str(int(n))


def encode_rational(q) -> dict:
    q = Fraction(q)
    return {"num": str(q.numerator), "den": str(q.denominator)}


def encode_log_monomial(x: LogMonomial, ell: Period) -> dict:
    return {"coeff": encode_rational(x.coeff), "ell_pow": x.ell_power, "ell": ell.to_json()}


def decode_int(x: Any, where: str) -> int:
    if isinstance(x, bool):
        raise ParseError(f"{where}: expected an integer, got a boolean")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        s = x.strip()
        if s.lstrip("+-").isdigit():
            return int(s)
    raise ParseError(f"{where}: expected an integer or decimal string, got {x!r}")


def decode_rational(x: Any, where: str) -> Fraction:
    if not isinstance(x, dict) or set(x) != {"num", "den"}:
        raise ParseError(f"{where}: expected {{'num', 'den'}}")
    den = decode_int(x["den"], where + ".den")
    if den == 0:
        raise ParseError(f"{where}: zero denominator")
    return Fraction(decode_int(x["num"], where + ".num"), den)


def decode_log_monomial(x: Any, where: str) -> tuple[LogMonomial, Period]:
    if not isinstance(x, dict) or set(x) != {"coeff", "ell_pow", "ell"}:
        raise ParseError(f"{where}: expected {{'coeff', 'ell_pow', 'ell'}}")
    coeff = decode_rational(x["coeff"], where + ".coeff")
    power = decode_int(x["ell_pow"], where + ".ell_pow")
    return LogMonomial(coeff, power), decode_period(x["ell"], where + ".ell")


def decode_period(x: Any, where: str) -> Period:
    if isinstance(x, dict) and set(x) == {"log_of"}:
        return Period(log_of=decode_int(x["log_of"], where))
    if isinstance(x, dict) and set(x) == {"value"}:
        return Period(length=_decimal(x["value"], where))
    raise ParseError(f"{where}: expected {{'log_of': p}} or {{'value': decimal}}")


def _decimal(x: Any, where: str) -> Decimal:
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise ParseError(f"{where}: length must be a decimal string")
    try:
        return Decimal(str(x))
    except InvalidOperation as exc:
        raise ParseError(f"{where}: bad decimal {x!r}") from exc


def _matrix(x: Any, where: str) -> IntegerMatrix:
    if not isinstance(x, list) or not all(isinstance(r, list) for r in x):
        raise ParseError(f"{where}: expected a list of rows")
    rows = [[decode_int(v, f"{where}[{i}][{j}]") for j, v in enumerate(r)] for i, r in enumerate(x)]
    if len({len(r) for r in rows}) > 1:
        raise ParseError(f"{where}: ragged rows")
    if not rows or not rows[0]:
        raise ParseError(f"{where}: empty matrix")
    return IntegerMatrix.from_rows(rows)


def _encode_matrix(a: IntegerMatrix) -> list:
    return [[encode_int(v) for v in row] for row in a.to_rows()]


@dataclass(frozen=True)
class Generator:
    """A seeded recipe for a random torus matrix, resolved when parsed."""

    kind: str
    seed: int
    dim: int

    def to_json(self) -> dict:
        return {"kind": self.kind, "seed": self.seed, "dim": self.dim}


@dataclass(frozen=True)
class SystemDescription:
    name: str
    mode: str
    ell: Period
    matrix: IntegerMatrix | None = None
    maps: tuple[IntegerMatrix, ...] = ()
    generator: Generator | None = None
    options: dict = field(default_factory=dict)
    description: str = ""

    def build(self) -> GradedEndo:
        if self.mode == "torus":
            return torus_system(self.matrix, self.ell)
        return graded_system(self.maps, self.ell)

    def to_json(self) -> dict:
        out: dict = {"name": self.name, "mode": self.mode}
        if self.description:
            out["description"] = self.description
        if self.ell.log_of is not None:
            out["p"] = self.ell.log_of
        else:
            out["length"] = str(self.ell.length)
        if self.generator is not None:
            out["generator"] = self.generator.to_json()
        elif self.mode == "torus":
            out["matrix"] = _encode_matrix(self.matrix)
        else:
            out["maps"] = [_encode_matrix(a) for a in self.maps]
        if self.options:
            out["options"] = {k: self.options[k] for k in OPTION_KEYS if k in self.options}
        return out


def random_unimodular(rng: random.Random, n: int, steps: int = 6) -> IntegerMatrix:
    """A product of random elementary matrices and sign flips."""
    rows = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps):
        i, j = rng.sample(range(n), 2) if n > 1 else (0, 0)
        if i != j:
            k = rng.choice((-2, -1, 1, 2))
            rows[i] = [a + k * b for a, b in zip(rows[i], rows[j])]
        if rng.random() < 0.2:
            r = rng.randrange(n)
            rows[r] = [-a for a in rows[r]]
    return IntegerMatrix.from_rows(rows)


# diagonalizable blocks with |det| = 1
_BLOCKS = (
    ((1,),),
    ((-1,),),
    ((0, -1), (1, 0)),
    ((0, 1), (-1, -1)),
    ((0, 1), (-1, 1)),
    ((2, 1), (1, 1)),
    ((3, 1), (2, 1)),
)


def random_semisimple_torus(rng: random.Random, n: int) -> IntegerMatrix:
    """A random unimodular ``n x n`` matrix that is diagonalizable over C.

    Block diagonal from diagonalizable pieces, conjugated by a random
    unimodular matrix; every exterior power is then semisimple at one.
    """
    if n < 1:
        raise ValidationError("dimension must be positive")
    while True:
        blocks, size = [], 0
        while size < n:
            b = rng.choice([b for b in _BLOCKS if len(b) <= n - size])
            blocks.append(b)
            size += len(b)
        d = [[0] * n for _ in range(n)]
        off = 0
        for b in blocks:
            for i, row in enumerate(b):
                for j, v in enumerate(row):
                    d[off + i][off + j] = v
            off += len(b)
        p = random_unimodular(rng, n)
        a = p @ IntegerMatrix.from_rows(d) @ unimodular_inverse(p)
        if check_semisimple_at_one(torus_system(a, 2)):
            return a


def _options(x: Any, where: str) -> dict:
    if x is None:
        return {}
    if not isinstance(x, dict):
        raise ParseError(f"{where}: options must be an object")
    unknown = set(x) - set(OPTION_KEYS)
    if unknown:
        raise ParseError(f"{where}: unknown options {sorted(unknown)}")
    out = {}
    for k in OPTION_KEYS:
        if k in x:
            v = decode_int(x[k], f"{where}.{k}")
            if v < 1:
                raise ValidationError(f"{where}.{k} must be positive")
            out[k] = v
    return out


def parse_system(doc: Any, where: str = "system") -> SystemDescription:
    if not isinstance(doc, dict):
        raise ParseError(f"{where}: expected an object")
    allowed = {"name", "mode", "p", "length", "matrix", "maps", "generator", "options", "description"}
    unknown = set(doc) - allowed
    if unknown:
        raise ParseError(f"{where}: unknown keys {sorted(unknown)}")
    name = doc.get("name")
    if not isinstance(name, str) or not name:
        raise ParseError(f"{where}: 'name' must be a nonempty string")
    where = f"{where} {name!r}"
    mode = doc.get("mode")
    if mode not in ("torus", "graded"):
        raise ParseError(f"{where}: mode must be 'torus' or 'graded'")
    if ("p" in doc) == ("length" in doc):
        raise ValidationError(f"{where}: exactly one of p / length must be given")
    if "p" in doc:
        ell = Period(log_of=decode_int(doc["p"], where + ".p"))
    else:
        ell = Period(length=_decimal(doc["length"], where + ".length"))
    options = _options(doc.get("options"), where + ".options")
    description = doc.get("description", "")
    if not isinstance(description, str):
        raise ParseError(f"{where}: description must be a string")

    if mode == "torus":
        if "maps" in doc:
            raise ParseError(f"{where}: torus mode takes 'matrix' or 'generator', not 'maps'")
        if ("matrix" in doc) == ("generator" in doc):
            raise ParseError(f"{where}: give exactly one of 'matrix' / 'generator'")
        gen = None
        if "generator" in doc:
            g = doc["generator"]
            if not isinstance(g, dict) or set(g) != {"kind", "seed", "dim"}:
                raise ParseError(f"{where}.generator: expected {{'kind', 'seed', 'dim'}}")
            if g["kind"] not in GENERATORS:
                raise ParseError(f"{where}.generator: unknown kind {g['kind']!r}")
            gen = Generator(g["kind"], decode_int(g["seed"], where + ".seed"),
                            decode_int(g["dim"], where + ".dim"))
            if not 1 <= gen.dim <= 6:
                raise ValidationError(f"{where}.generator: dim must be in 1..6")
            matrix = random_semisimple_torus(random.Random(gen.seed), gen.dim)
        else:
            matrix = _matrix(doc["matrix"], where + ".matrix")
            if not matrix.is_square:
                raise ValidationError(f"{where}: torus matrix must be square")
        return SystemDescription(name, mode, ell, matrix=matrix, generator=gen,
                                 options=options, description=description)

    if "matrix" in doc or "generator" in doc:
        raise ParseError(f"{where}: graded mode takes 'maps'")
    maps = doc.get("maps")
    if not isinstance(maps, list) or not maps:
        raise ParseError(f"{where}: 'maps' must be a nonempty list of matrices")
    mats = tuple(_matrix(m, f"{where}.maps[{i}]") for i, m in enumerate(maps))
    return SystemDescription(name, mode, ell, maps=mats, options=options,
                             description=description)


def parse_document(doc: Any) -> list[SystemDescription]:
    """A single system object or a batch ``{"systems": [...]}``."""
    if isinstance(doc, dict) and "systems" in doc:
        if set(doc) != {"systems"} or not isinstance(doc["systems"], list) or not doc["systems"]:
            raise ParseError("batch documents are {'systems': [nonempty list]}")
        systems = [parse_system(d, f"systems[{i}]") for i, d in enumerate(doc["systems"])]
        names = [s.name for s in systems]
        if len(set(names)) != len(names):
            raise ParseError("system names in a batch must be unique")
        return systems
    return [parse_system(doc)]


def load_document(path) -> list[SystemDescription]:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}: invalid JSON ({exc})") from exc
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror}") from exc
    return parse_document(doc)


def dump_json(obj: Any) -> str:
    """Deterministic rendering: insertion order, two-space indent, trailing newline."""
    return json.dumps(obj, indent=2, ensure_ascii=False) + "\n"
