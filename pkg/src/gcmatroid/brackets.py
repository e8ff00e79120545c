"""Brackets, bracket polynomials and their evaluation.

A bracket ``[l1 ... lr]`` is the r x r minor of a configuration matrix on the
listed columns.  Brackets are stored as strictly increasing label tuples; a
monomial is a sorted tuple of brackets and a polynomial maps monomials to
Fraction coefficients.  Because monomials are kept sorted, two polynomials
that are equal as formal expressions compare equal structurally.

Equality in the coordinate ring of the Grassmannian (i.e. modulo the Pluecker
relations) is decided by :func:`generic_expand`, which substitutes every
bracket by the symbolic minor of a generic r x n matrix and expands.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Iterable, Mapping, Sequence

from .exact import int_det, scalar

Bracket = tuple[int, ...]
Monomial = tuple[Bracket, ...]


class RankMismatch(ValueError):
    pass


def permutation_sign(seq: Sequence[int]) -> int:
    """Sign of the permutation sorting ``seq`` (0 when an entry repeats)."""
    items = list(seq)
    if len(set(items)) != len(items):
        return 0
    sign = 1
    # selection-style parity count; r is tiny
    for i in range(len(items)):
        j = min(range(i, len(items)), key=items.__getitem__)
        if j != i:
            items[i], items[j] = items[j], items[i]
            sign = -sign
    return sign


def normalize_bracket(raw: Sequence[int], n: int | None = None) -> tuple[int, Bracket] | None:
    """Sort a label tuple, returning ``(sign, sorted)`` or None on a repeated label."""
    for label in raw:
        if label < 1 or (n is not None and label > n):
            raise ValueError(f"bracket label {label} out of range 1..{n}")
    sign = permutation_sign(raw)
    if sign == 0:
        return None
    return sign, tuple(sorted(raw))


@dataclass(frozen=True)
class BracketMonomial:
    coefficient: Fraction
    brackets: Monomial

    def as_polynomial(self, rank: int) -> "BracketPolynomial":
        return BracketPolynomial(rank, {self.brackets: self.coefficient})

    @property
    def degree(self) -> int:
        return len(self.brackets)


def _format_coefficient(c: Fraction) -> str:
    return str(abs(c))


def format_bracket(b: Bracket) -> str:
    if all(label < 10 for label in b):
        return "[" + "".join(str(x) for x in b) + "]"
    return "[" + " ".join(str(x) for x in b) + "]"


def parse_bracket(body: str) -> tuple[int, ...]:
    body = body.strip()
    if re.search(r"[\s,]", body):
        return tuple(int(x) for x in re.split(r"[\s,]+", body) if x)
    return tuple(int(ch) for ch in body)


class BracketPolynomial:
    """Exact linear combination of products of normalized rank-r brackets."""

    __slots__ = ("rank", "_terms", "_hash")

    def __init__(self, rank: int, terms: Mapping[Monomial, Fraction] | None = None):
        self.rank = rank
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            c = scalar(c)
            if c == 0:
                continue
            mono = tuple(sorted(mono))
            for b in mono:
                if len(b) != rank:
                    raise RankMismatch(f"bracket {b} does not have rank {rank}")
            clean[mono] = clean.get(mono, Fraction(0)) + c
            if clean[mono] == 0:
                del clean[mono]
        self._terms = dict(sorted(clean.items()))
        self._hash = None

    # construction helpers

    @classmethod
    def zero(cls, rank: int) -> "BracketPolynomial":
        return cls(rank)

    @classmethod
    def constant(cls, c, rank: int) -> "BracketPolynomial":
        return cls(rank, {(): scalar(c)})

    @classmethod
    def bracket(cls, *labels: int) -> "BracketPolynomial":
        """The (normalized) single bracket on ``labels``; zero on repeats."""
        norm = normalize_bracket(labels)
        if norm is None:
            return cls(len(labels))
        sign, b = norm
        return cls(len(labels), {(b,): Fraction(sign)})

    @classmethod
    def product(cls, *words: Sequence[int]) -> "BracketPolynomial":
        out = None
        for w in words:
            term = cls.bracket(*w)
            out = term if out is None else out * term
        return out

    # access

    def terms(self) -> list[BracketMonomial]:
        return [BracketMonomial(c, m) for m, c in self._terms.items()]

    def items(self):
        return self._terms.items()

    def coefficient(self, mono: Iterable[Bracket]) -> Fraction:
        return self._terms.get(tuple(sorted(mono)), Fraction(0))

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def labels(self) -> set[int]:
        return {label for mono in self._terms for b in mono for label in b}

    def brackets(self) -> set[Bracket]:
        return {b for mono in self._terms for b in mono}

    def degree(self) -> int | None:
        """Bracket degree if homogeneous, else None (zero polynomial: 0)."""
        degs = {len(m) for m in self._terms}
        if not degs:
            return 0
        return degs.pop() if len(degs) == 1 else None

    # ring operations

    def _check(self, other: "BracketPolynomial"):
        if self.rank != other.rank:
            raise RankMismatch(f"rank {self.rank} vs rank {other.rank}")

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BracketPolynomial.constant(other, self.rank)
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for m, c in other._terms.items():
            terms[m] = terms.get(m, Fraction(0)) + c
        return BracketPolynomial(self.rank, terms)

    __radd__ = __add__

    def __neg__(self):
        return BracketPolynomial(self.rank, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = BracketPolynomial.constant(other, self.rank)
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        self._check(other)
        terms: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(sorted(m1 + m2))
                terms[m] = terms.get(m, Fraction(0)) + c1 * c2
        return BracketPolynomial(self.rank, terms)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def scale(self, c) -> "BracketPolynomial":
        c = scalar(c)
        return BracketPolynomial(self.rank, {m: c * v for m, v in self._terms.items()})

    def __eq__(self, other):
        if not isinstance(other, BracketPolynomial):
            return NotImplemented
        return self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.rank, tuple(self._terms.items())))
        return self._hash

    # text / JSON

    def to_text(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for mono, c in self._terms.items():
            sign = "+" if c > 0 else "-"
            body = "".join(format_bracket(b) for b in mono)
            parts.append(f"{sign} {_format_coefficient(c)}" + (f" {body}" if body else ""))
        return " ".join(parts)

    def __str__(self):
        return self.to_text()

    def __repr__(self):
        return f"BracketPolynomial(rank={self.rank}, {self.to_text()!r})"

    _TERM = re.compile(r"\s*([+-])\s*(\d+(?:/\d+)?)\s*((?:\[[^\]]*\]\s*)*)")

    @classmethod
    def from_text(cls, text: str, rank: int | None = None) -> "BracketPolynomial":
        text = text.strip()
        if text == "0":
            if rank is None:
                raise ValueError("rank is required to parse the zero polynomial")
            return cls(rank)
        pos = 0
        terms: dict[Monomial, Fraction] = {}
        found_rank = rank
        while pos < len(text):
            m = cls._TERM.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"cannot parse bracket polynomial at position {pos}: {text[pos:pos + 20]!r}")
            sign = 1 if m.group(1) == "+" else -1
            c = Fraction(m.group(2)) * sign
            mono = []
            for body in re.findall(r"\[([^\]]*)\]", m.group(3)):
                labels = parse_bracket(body)
                if found_rank is None:
                    found_rank = len(labels)
                norm = normalize_bracket(labels)
                if norm is None:
                    c = Fraction(0)
                    continue
                s, b = norm
                c *= s
                mono.append(b)
            key = tuple(sorted(mono))
            terms[key] = terms.get(key, Fraction(0)) + c
            pos = m.end()
        if found_rank is None:
            raise ValueError("rank is required for a constant polynomial")
        return cls(found_rank, terms)

    def to_json(self) -> dict:
        return {
            "rank": self.rank,
            "terms": [
                {"coefficient": str(c), "brackets": [list(b) for b in mono]}
                for mono, c in self._terms.items()
            ],
        }

    @classmethod
    def from_json(cls, data: Mapping) -> "BracketPolynomial":
        terms: dict[Monomial, Fraction] = {}
        for t in data["terms"]:
            key = tuple(sorted(tuple(b) for b in t["brackets"]))
            terms[key] = terms.get(key, Fraction(0)) + scalar(t["coefficient"])
        return cls(int(data["rank"]), terms)


def gp_relation(l1: int, l2: int, l3: int, l4: int, l5: int) -> BracketPolynomial:
    """Three-term rank-3 Grassmann-Pluecker relation with first label ``l1`` repeated."""
    labels = (l1, l2, l3, l4, l5)
    if len(set(labels)) != 5:
        raise ValueError(f"Grassmann-Pluecker relation needs five distinct labels, got {labels}")
    b = BracketPolynomial.product
    return (
        b((l1, l2, l3), (l1, l4, l5))
        - b((l1, l2, l4), (l1, l3, l5))
        + b((l1, l2, l5), (l1, l3, l4))
    )


# evaluation ----------------------------------------------------------------


class BracketEvaluator:
    """Evaluates brackets on a fixed list of columns, caching minors.

    Columns are rescaled to integer vectors once so each minor is an integer
    determinant divided by the product of the column scales.
    """

    def __init__(self, columns: Sequence[Sequence[Fraction]]):
        from math import lcm

        self.columns = columns
        self.n = len(columns)
        self._int_cols = []
        self._scales = []
        for col in columns:
            m = lcm(*(Fraction(x).denominator for x in col)) if col else 1
            self._int_cols.append(tuple(int(Fraction(x) * m) for x in col))
            self._scales.append(m)
        self._cache: dict[Bracket, Fraction] = {}

    def bracket(self, b: Bracket) -> Fraction:
        v = self._cache.get(b)
        if v is None:
            for label in b:
                if label < 1 or label > self.n:
                    raise ValueError(f"label {label} exceeds the {self.n} columns of the configuration")
            cols = [self._int_cols[i - 1] for i in b]
            if len(cols[0]) != len(b):
                raise ValueError(f"bracket {b} has rank {len(b)} but columns have {len(cols[0])} rows")
            d = int_det(cols)
            scale = 1
            for i in b:
                scale *= self._scales[i - 1]
            v = Fraction(d, scale)
            self._cache[b] = v
        return v

    def polynomial(self, p: BracketPolynomial) -> Fraction:
        total = Fraction(0)
        for mono, c in p.items():
            term = c
            for b in mono:
                term *= self.bracket(b)
                if term == 0:
                    break
            total += term
        return total


def config_columns(config) -> Sequence[Sequence[Fraction]]:
    if hasattr(config, "columns") and not callable(config.columns):
        return config.columns
    if hasattr(config, "columns") and callable(config.columns):
        return config.columns()
    return config


def evaluate(p: BracketPolynomial, config) -> Fraction:
    """Exact value of ``p`` on a configuration (PointConfig or list of columns)."""
    return BracketEvaluator(config_columns(config)).polynomial(p)


# generic expansion ------------------------------------------------------------

Var = tuple[int, int]  # (row s, column t), both 1-based
CoordMonomial = tuple[Var, ...]


class CoordPolynomial:
    """Sparse polynomial in the entries x[s][t] of a generic r x n matrix."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[CoordMonomial, Fraction] | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            if c != 0:
                clean[tuple(sorted(m))] = c
        self.terms = dict(sorted(clean.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if not isinstance(other, CoordPolynomial):
            return NotImplemented
        return self.terms == other.terms

    def __len__(self):
        return len(self.terms)

    def __add__(self, other: "CoordPolynomial") -> "CoordPolynomial":
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, 0) + c
        return CoordPolynomial(out)

    def __neg__(self):
        return CoordPolynomial({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CoordPolynomial({m: c * other for m, c in self.terms.items()})
        return CoordPolynomial(_coord_mul(self.terms, other.terms))

    __rmul__ = __mul__

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for m, c in self.terms.items():
            mono = "*".join(f"x[{s}][{t}]" for s, t in m)
            sign = "+" if c > 0 else "-"
            coeff = "" if abs(c) == 1 and mono else str(abs(c))
            parts.append(f"{sign} {coeff}{'*' if coeff and mono else ''}{mono}")
        return " ".join(parts)

    __repr__ = __str__


def _coord_mul(a: Mapping, b: Mapping) -> dict:
    out: dict = {}
    for m1, c1 in a.items():
        for m2, c2 in b.items():
            m = tuple(sorted(m1 + m2))
            out[m] = out.get(m, 0) + c1 * c2
    return out


def generic_minor(b: Bracket) -> dict[CoordMonomial, int]:
    r = len(b)
    terms: dict[CoordMonomial, int] = {}
    for perm in permutations(range(r)):
        sign = permutation_sign(perm)
        mono = tuple(sorted((s + 1, b[perm[s]]) for s in range(r)))
        terms[mono] = terms.get(mono, 0) + sign
    return terms


def generic_expand(p: BracketPolynomial, n: int | None = None) -> CoordPolynomial:
    """Expand ``p`` over the entries of a generic rank x n matrix.

    The kernel of this map is exactly the ideal of Pluecker relations, so the
    image is zero iff ``p`` vanishes on the Grassmannian.
    """
    if n is not None:
        for label in p.labels():
            if label > n:
                raise ValueError(f"label {label} exceeds n = {n}")
    minors: dict[Bracket, dict] = {}
    total: dict[CoordMonomial, Fraction] = {}
    for mono, c in p.items():
        acc: dict = {(): 1}
        for b in mono:
            if b not in minors:
                minors[b] = generic_minor(b)
            acc = _coord_mul(acc, minors[b])
        for m, v in acc.items():
            total[m] = total.get(m, 0) + c * v
    return CoordPolynomial(total)


def equal_mod_plucker(p: BracketPolynomial, q: BracketPolynomial) -> bool:
    if p.rank != q.rank:
        raise RankMismatch(f"rank {p.rank} vs rank {q.rank}")
    return generic_expand(p - q).is_zero()


def proportional_mod_plucker(p: BracketPolynomial, q: BracketPolynomial) -> Fraction | None:
    """The nonzero c with p = c*q modulo Pluecker relations, or None."""
    if p.rank != q.rank:
        raise RankMismatch(f"rank {p.rank} vs rank {q.rank}")
    ep = generic_expand(p)
    eq = generic_expand(q)
    if ep.is_zero() or eq.is_zero():
        return None
    mono, cq = next(iter(eq.terms.items()))
    cp = ep.terms.get(mono)
    if cp is None:
        return None
    c = Fraction(cp) / Fraction(cq)
    if (ep - eq * c).is_zero():
        return c
    return None
