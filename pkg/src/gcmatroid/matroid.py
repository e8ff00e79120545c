"""Point configurations and the matroids they realize."""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb, lcm
from typing import Iterable, Mapping, Sequence

from .brackets import Bracket, BracketMonomial
from .exact import RatMatrix, int_det, rank as matrix_rank, scalar


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PointConfig:
    """r x n exact matrix whose columns are homogeneous point coordinates.

    Columns are labelled 1..n.  Zero columns are allowed; they model points
    that witness configurations collapse to the zero vector.
    """

    columns: tuple[tuple[Fraction, ...], ...]
    annotations: tuple[str, ...] = ()
    lines: Mapping[str, tuple[int, ...]] = field(default_factory=dict)
    meta: Mapping = field(default_factory=dict)

    def __post_init__(self):
        cols = tuple(tuple(scalar(x) for x in col) for col in self.columns)
        object.__setattr__(self, "columns", cols)
        if cols:
            r = len(cols[0])
            if any(len(c) != r for c in cols):
                raise ConfigError("columns of a configuration must have equal length")
        if self.annotations and len(self.annotations) != len(cols):
            raise ConfigError("one annotation per column is required")

    @property
    def r(self) -> int:
        return len(self.columns[0]) if self.columns else 0

    @property
    def n(self) -> int:
        return len(self.columns)

    def column(self, label: int) -> tuple[Fraction, ...]:
        if label < 1 or label > self.n:
            raise ConfigError(f"unknown point label {label} (configuration has {self.n} columns)")
        return self.columns[label - 1]

    def matrix(self) -> RatMatrix:
        return RatMatrix.from_columns(self.columns)

    def replace_columns(self, updates: Mapping[int, Sequence]) -> "PointConfig":
        cols = list(self.columns)
        for label, vec in updates.items():
            cols[label - 1] = tuple(scalar(x) for x in vec)
        return PointConfig(tuple(cols), self.annotations, dict(self.lines), dict(self.meta))

    def zeroed(self, labels: Iterable[int]) -> "PointConfig":
        labels = list(labels)
        cfg = self.replace_columns({i: [0] * self.r for i in labels})
        if cfg.annotations:
            ann = list(cfg.annotations)
            for i in labels:
                ann[i - 1] = "zeroed"
            cfg = PointConfig(cfg.columns, tuple(ann), cfg.lines, cfg.meta)
        return cfg

    def left_multiply(self, g: Sequence[Sequence]) -> "PointConfig":
        cols = [tuple(sum((scalar(a) * x for a, x in zip(row, col)), Fraction(0)) for row in g) for col in self.columns]
        return PointConfig(tuple(cols), self.annotations, dict(self.lines), dict(self.meta))

    def scale_columns(self, factors: Sequence) -> "PointConfig":
        cols = [tuple(scalar(f) * x for x in col) for f, col in zip(factors, self.columns)]
        return PointConfig(tuple(cols), self.annotations, dict(self.lines), dict(self.meta))

    def to_json(self) -> dict:
        out = {
            "r": self.r,
            "n": self.n,
            "columns": [[str(x) for x in col] for col in self.columns],
        }
        if self.annotations:
            out["annotations"] = list(self.annotations)
        if self.lines:
            out["lines"] = {k: list(v) for k, v in self.lines.items()}
        if self.meta:
            out["meta"] = self.meta
        return out

    @classmethod
    def from_json(cls, data: Mapping) -> "PointConfig":
        cols = tuple(tuple(scalar(x) for x in col) for col in data["columns"])
        cfg = cls(
            cols,
            tuple(data.get("annotations", ())),
            {k: tuple(v) for k, v in data.get("lines", {}).items()},
            dict(data.get("meta", {})),
        )
        if "r" in data and cfg.n and cfg.r != data["r"]:
            raise ConfigError(f"declared r={data['r']} but columns have length {cfg.r}")
        if "n" in data and cfg.n != data["n"]:
            raise ConfigError(f"declared n={data['n']} but found {cfg.n} columns")
        return cfg

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2)


def _int_columns(columns) -> list[tuple[int, ...]]:
    out = []
    for col in columns:
        m = lcm(*(x.denominator for x in col)) if col else 1
        out.append(tuple(int(x * m) for x in col))
    return out


@dataclass(frozen=True)
class Matroid:
    r: int
    n: int
    bases: frozenset

    def __post_init__(self):
        object.__setattr__(self, "bases", frozenset(tuple(sorted(b)) for b in self.bases))
        if not self.bases:
            raise ConfigError("a matroid needs at least one basis")
        for b in self.bases:
            if len(b) != self.r:
                raise ConfigError(f"basis {b} does not have cardinality {self.r}")

    @classmethod
    def from_nonbases(cls, r: int, n: int, nonbases: Iterable[Sequence[int]]) -> "Matroid":
        bad = {tuple(sorted(s)) for s in nonbases}
        return cls(r, n, frozenset(s for s in combinations(range(1, n + 1), r) if s not in bad))

    def nonbases(self) -> list[tuple[int, ...]]:
        return [s for s in combinations(range(1, self.n + 1), self.r) if s not in self.bases]

    def is_basis(self, subset: Sequence[int]) -> bool:
        return tuple(sorted(subset)) in self.bases

    def loops(self) -> list[int]:
        used = {i for b in self.bases for i in b}
        return [i for i in range(1, self.n + 1) if i not in used]

    def satisfies_exchange(self) -> bool:
        """Basis exchange axiom.

        For a basis B1 and beta in B1, let D be the elements x outside B1 with
        B1 - beta + x dependent.  The axiom fails for (B1, beta) exactly when
        some basis avoiding beta lies inside (B1 - beta) | D, so only those
        few candidates are enumerated instead of all pairs of bases.
        """
        universe = range(1, self.n + 1)
        for b1 in self.bases:
            s1 = set(b1)
            for beta in b1:
                rest = s1 - {beta}
                dead = [x for x in universe if x not in s1 and tuple(sorted(rest | {x})) not in self.bases]
                if not dead:
                    continue
                for cand in combinations(sorted(rest | set(dead)), self.r):
                    if cand in self.bases:
                        return False
        return True

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "nonbases": [list(s) for s in self.nonbases()]}

    @classmethod
    def from_json(cls, data: Mapping) -> "Matroid":
        return cls.from_nonbases(int(data["r"]), int(data["n"]), data["nonbases"])


def matroid_from_config(config: PointConfig) -> Matroid:
    """Bases are the r-subsets of columns with nonzero minor."""
    r, n = config.r, config.n
    if r > n:
        raise ConfigError(f"need r <= n, got r={r}, n={n}")
    if matrix_rank(config.matrix()) != r:
        raise ConfigError("configuration matrix is row-rank deficient")
    cols = _int_columns(config.columns)
    live = [i for i in range(n) if any(cols[i])]
    bases = []
    for subset in combinations(live, r):
        if int_det([cols[i] for i in subset]) != 0:
            bases.append(tuple(i + 1 for i in subset))
    return Matroid(r, n, frozenset(bases))


def nonbases(m: Matroid) -> list[tuple[int, ...]]:
    return m.nonbases()


def n_ideal_generators(m: Matroid) -> list[Bracket]:
    return m.nonbases()


def j_generator(m: Matroid) -> BracketMonomial:
    """Product of all basis brackets, coefficient 1."""
    return BracketMonomial(Fraction(1), tuple(sorted(m.bases)))


def same_matroid(a: Matroid, b: Matroid) -> bool:
    if (a.r, a.n) != (b.r, b.n):
        raise ConfigError(f"cannot compare matroids of shape ({a.r},{a.n}) and ({b.r},{b.n})")
    return a.bases == b.bases


def nonbases_from_flats(r: int, flats: Iterable[Iterable[int]]) -> set[tuple[int, ...]]:
    """All r-subsets lying inside one of the given dependent flats (e.g. lines in rank 3)."""
    out = set()
    for flat in flats:
        for s in combinations(sorted(set(flat)), r):
            out.add(s)
    return out


def basis_count(m: Matroid) -> int:
    return len(m.bases)


def subset_count(m: Matroid) -> int:
    return comb(m.n, m.r)
