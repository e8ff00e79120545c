"""Grassmann-Cayley algebra: expressions, numeric extensors and symbolic expansion.

Expression grammar::

    expr    := seq (OP seq)*        OP is '^' (meet) or 'v' (join); one kind per level
    seq     := primary+             juxtaposition is join
    primary := DIGIT | '{' INT '}' | '(' expr ')'

Single digits are point labels, so ``"457"`` is the join of points 4, 5 and 7;
labels above 9 are written in braces, ``{12}``.  Joins associate to the left.
Mixing ``^`` and ``v`` at the same parenthesis level is rejected as ambiguous.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence, Union

from .brackets import BracketEvaluator, BracketPolynomial, config_columns, normalize_bracket, permutation_sign
from .exact import det_of, scalar


class GcSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


# AST -------------------------------------------------------------------------


@dataclass(frozen=True)
class Atom:
    label: int


@dataclass(frozen=True)
class Join:
    left: "GcExpression"
    right: "GcExpression"


@dataclass(frozen=True)
class Meet:
    left: "GcExpression"
    right: "GcExpression"


GcExpression = Union[Atom, Join, Meet]


def word(*labels: int) -> GcExpression:
    """Left-associated join of atoms."""
    node: GcExpression = Atom(labels[0])
    for label in labels[1:]:
        node = Join(node, Atom(label))
    return node


def atoms(e: GcExpression) -> list[int]:
    if isinstance(e, Atom):
        return [e.label]
    return atoms(e.left) + atoms(e.right)


def _is_word(e: GcExpression) -> bool:
    if isinstance(e, Atom):
        return True
    return isinstance(e, Join) and _is_word(e.left) and _is_word(e.right) and isinstance(e.right, Atom)


def _label_text(label: int) -> str:
    return str(label) if label < 10 else "{" + str(label) + "}"


def to_text(e: GcExpression) -> str:
    """Inverse of :func:`parse` (parse(to_text(e)) == e)."""
    if isinstance(e, Atom):
        return _label_text(e.label)
    if _is_word(e):
        return "".join(_label_text(x) for x in atoms(e))
    if isinstance(e, Join):
        left = to_text(e.left)
        if not (_is_word(e.left) or isinstance(e.left, Join)):
            left = f"({left})"
        right = to_text(e.right)
        if not isinstance(e.right, Atom):
            right = f"({right})"
        return f"{left}v{right}"
    left = to_text(e.left)
    if not (_is_word(e.left) or isinstance(e.left, Meet)):
        left = f"({left})"
    right = to_text(e.right)
    if not _is_word(e.right):
        right = f"({right})"
    return f"{left}^{right}"


# parser ------------------------------------------------------------------------


class _Parser:
    def __init__(self, text: str):
        self.text = text.replace("∧", "^").replace("∨", "v")
        self.pos = 0

    def peek(self) -> str | None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1
        return self.text[self.pos] if self.pos < len(self.text) else None

    def parse(self) -> GcExpression:
        if self.peek() is None:
            raise GcSyntaxError("empty expression", 0)
        e = self.expr()
        if self.peek() is not None:
            raise GcSyntaxError(f"unexpected {self.text[self.pos]!r}", self.pos)
        return e

    def expr(self) -> GcExpression:
        node = self.seq()
        op = None
        while (ch := self.peek()) in ("^", "v"):
            if op is not None and ch != op:
                raise GcSyntaxError("ambiguous mix of '^' and 'v'; add parentheses", self.pos)
            op = ch
            self.pos += 1
            rhs = self.seq()
            node = Meet(node, rhs) if ch == "^" else Join(node, rhs)
        return node

    def seq(self) -> GcExpression:
        node = self.primary()
        while (ch := self.peek()) is not None and (ch.isdigit() or ch in "({"):
            node = Join(node, self.primary())
        return node

    def primary(self) -> GcExpression:
        ch = self.peek()
        start = self.pos
        if ch is None:
            raise GcSyntaxError("unexpected end of expression", self.pos)
        if ch.isdigit():
            self.pos += 1
            if ch == "0":
                raise GcSyntaxError("point labels start at 1", start)
            return Atom(int(ch))
        if ch == "{":
            end = self.text.find("}", self.pos)
            if end < 0:
                raise GcSyntaxError("unterminated '{'", start)
            body = self.text[self.pos + 1:end].strip()
            if not body.isdigit() or int(body) < 1:
                raise GcSyntaxError(f"bad point label {body!r}", start)
            self.pos = end + 1
            return Atom(int(body))
        if ch == "(":
            self.pos += 1
            e = self.expr()
            if self.peek() != ")":
                raise GcSyntaxError("expected ')'", self.pos)
            self.pos += 1
            return e
        raise GcSyntaxError(f"unexpected {ch!r}", start)


def parse(text: str) -> GcExpression:
    return _Parser(text).parse()


# numeric extensors -------------------------------------------------------------


def _minor(vectors: Sequence[Sequence[Fraction]], rows: Sequence[int]) -> Fraction:
    return det_of([[v[i] for v in vectors] for i in rows])


class Extensor:
    """Decomposable antisymmetric tensor of a given step in rank r.

    ``plucker`` lists the k x k minors of the vector list over the sorted
    k-subsets of coordinate rows (lexicographic order).  ``vectors`` is a
    decomposition whose join reproduces ``plucker`` exactly; a step-0 extensor
    is a scalar held in ``plucker[0]``.
    """

    __slots__ = ("r", "step", "vectors", "plucker")

    def __init__(self, r: int, step: int, vectors, plucker):
        self.r = r
        self.step = step
        self.vectors = tuple(tuple(v) for v in vectors)
        self.plucker = tuple(plucker)

    @staticmethod
    def subsets(r: int, k: int) -> list[tuple[int, ...]]:
        return list(combinations(range(r), k))

    @classmethod
    def from_vectors(cls, vectors: Sequence[Sequence], r: int | None = None) -> "Extensor":
        vectors = [tuple(scalar(x) for x in v) for v in vectors]
        if r is None:
            r = len(vectors[0])
        k = len(vectors)
        if k > r:
            return cls(r, k, vectors, ())
        plucker = [_minor(vectors, rows) for rows in cls.subsets(r, k)]
        return cls(r, k, vectors, plucker)

    @classmethod
    def scalar(cls, value, r: int) -> "Extensor":
        return cls(r, 0, (), (scalar(value),))

    @classmethod
    def point(cls, coords: Sequence) -> "Extensor":
        return cls.from_vectors([coords])

    @classmethod
    def from_plucker(cls, r: int, step: int, plucker: Sequence[Fraction]) -> "Extensor":
        """Rebuild a vector decomposition from decomposable Pluecker coordinates."""
        plucker = tuple(scalar(x) for x in plucker)
        if step == 0:
            return cls.scalar(plucker[0], r)
        subsets = cls.subsets(r, step)
        index = {s: i for i, s in enumerate(subsets)}
        pivot = next((i for i, x in enumerate(plucker) if x != 0), None)
        if pivot is None:
            return cls(r, step, [(Fraction(0),) * r] * step, plucker)
        top = subsets[pivot]
        lead = plucker[pivot]

        def coord(labels):
            norm = normalize_bracket([x + 1 for x in labels])
            if norm is None:
                return Fraction(0)
            sign, b = norm
            return sign * plucker[index[tuple(x - 1 for x in b)]]

        vectors = []
        for p in range(step):
            vec = []
            for j in range(r):
                labels = list(top)
                labels[p] = j
                vec.append(coord(labels))
            vectors.append(vec)
        vectors[0] = [x / lead ** (step - 1) for x in vectors[0]]
        out = cls.from_vectors(vectors, r)
        if out.plucker != plucker:
            raise ValueError("Pluecker vector is not decomposable")
        return out

    def is_zero(self) -> bool:
        return not any(self.plucker)

    @property
    def value(self) -> Fraction:
        """The scalar held by a step-0 or step-r extensor."""
        if self.step not in (0, self.r):
            raise ValueError(f"extensor of step {self.step} is not a scalar in rank {self.r}")
        return self.plucker[0] if self.plucker else Fraction(0)

    def coordinates(self) -> dict[tuple[int, ...], Fraction]:
        return {tuple(i + 1 for i in s): x for s, x in zip(self.subsets(self.r, self.step), self.plucker)}

    def __eq__(self, other):
        if not isinstance(other, Extensor):
            return NotImplemented
        return (self.r, self.step, self.plucker) == (other.r, other.step, other.plucker)

    def __repr__(self):
        return f"Extensor(r={self.r}, step={self.step}, plucker={[str(x) for x in self.plucker]})"

    def to_json(self) -> dict:
        return {
            "rank": self.r,
            "step": self.step,
            "plucker": [str(x) for x in self.plucker],
            "zero": self.is_zero(),
        }

    def scaled(self, c) -> "Extensor":
        c = scalar(c)
        if self.step == 0:
            return Extensor.scalar(self.plucker[0] * c, self.r)
        if self.step > self.r:
            return self
        vectors = [list(v) for v in self.vectors]
        vectors[0] = [x * c for x in vectors[0]]
        return Extensor.from_vectors(vectors, self.r)


def join(a: Extensor, b: Extensor) -> Extensor:
    if a.r != b.r:
        raise ValueError(f"rank mismatch: {a.r} vs {b.r}")
    if a.step == 0:
        return b.scaled(a.value)
    if b.step == 0:
        return a.scaled(b.value)
    if a.step + b.step > a.r:
        return Extensor(a.r, a.step + b.step, (), ())
    return Extensor.from_vectors(a.vectors + b.vectors, a.r)


def meet(a: Extensor, b: Extensor) -> Extensor:
    """Shuffle-formula meet; zero scalar when the steps sum below r."""
    if a.r != b.r:
        raise ValueError(f"rank mismatch: {a.r} vs {b.r}")
    r, k, l = a.r, a.step, b.step
    if k > r or l > r:
        return Extensor.scalar(0, r) if k + l - r <= 0 else Extensor(r, k + l - r, (), ())
    if k + l < r:
        return Extensor.scalar(0, r)
    if k == r:
        return b.scaled(a.value)
    if l == r:
        return a.scaled(b.value)
    m = k + l - r
    vs, ws = a.vectors, b.vectors
    total = [Fraction(0)] * len(Extensor.subsets(r, m)) if m else [Fraction(0)]
    for chosen in combinations(range(k), r - l):
        rest = tuple(i for i in range(k) if i not in chosen)
        sign = permutation_sign(chosen + rest)
        coef = det_of([[v[i] for v in [vs[c] for c in chosen] + list(ws)] for i in range(r)])
        if coef == 0:
            continue
        if m == 0:
            total[0] += sign * coef
            continue
        part = Extensor.from_vectors([vs[i] for i in rest], r).plucker
        for idx, x in enumerate(part):
            total[idx] += sign * coef * x
    return Extensor.from_plucker(r, m, total)


def eval_numeric(e: GcExpression | str, config) -> Extensor:
    """Evaluate an expression with atoms taken from the configuration's columns."""
    if isinstance(e, str):
        e = parse(e)
    columns = config_columns(config)
    if not columns:
        raise ValueError("empty configuration")
    r = len(columns[0])
    cache: dict = {}

    def go(node):
        if isinstance(node, Atom):
            if node.label < 1 or node.label > len(columns):
                raise ValueError(f"unknown point label {node.label} (configuration has {len(columns)} columns)")
            return Extensor.from_vectors([columns[node.label - 1]], r)
        if node in cache:
            return cache[node]
        left, right = go(node.left), go(node.right)
        out = join(left, right) if isinstance(node, Join) else meet(left, right)
        cache[node] = out
        return out

    return go(e)


# symbolic expansion ------------------------------------------------------------

Word = tuple[int, ...]


class FormalExtensor:
    """Linear combination of point-symbol words with bracket-polynomial coefficients.

    Words are sorted (antisymmetry sign folded into the coefficient).  A term of
    step r is stored under the empty word: it stands for its coefficient times
    the unit extensor e1...er, i.e. a bracket polynomial.
    """

    __slots__ = ("r", "step", "terms")

    def __init__(self, r: int, step: int, terms: dict[Word, BracketPolynomial] | None = None):
        self.r = r
        self.step = step
        self.terms = {w: c for w, c in (terms or {}).items() if not c.is_zero()}

    @classmethod
    def atom(cls, label: int, r: int) -> "FormalExtensor":
        return cls(r, 1, {(label,): BracketPolynomial.constant(1, r)})

    def is_zero(self) -> bool:
        return not self.terms

    def is_scalar(self) -> bool:
        return self.step in (0, self.r)

    def polynomial(self) -> BracketPolynomial:
        if not self.is_scalar():
            raise ValueError(f"expression has step {self.step}; not a bracket polynomial in rank {self.r}")
        return self.terms.get((), BracketPolynomial.zero(self.r))

    def scaled(self, c: BracketPolynomial) -> "FormalExtensor":
        return FormalExtensor(self.r, self.step, {w: v * c for w, v in self.terms.items()})

    def _add(self, acc: dict, w: Word, c: BracketPolynomial):
        if w in acc:
            acc[w] = acc[w] + c
        else:
            acc[w] = c

    def join(self, other: "FormalExtensor") -> "FormalExtensor":
        r = self.r
        if self.step == 0:
            return other.scaled(self.polynomial())
        if other.step == 0:
            return self.scaled(other.polynomial())
        step = self.step + other.step
        if step > r:
            return FormalExtensor(r, step)
        acc: dict[Word, BracketPolynomial] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                norm = normalize_bracket(w1 + w2)
                if norm is None:
                    continue
                sign, w = norm
                c = c1 * c2
                if step == r:
                    self._add(acc, (), c * BracketPolynomial(r, {(w,): Fraction(sign)}))
                else:
                    self._add(acc, w, c.scale(sign))
        return FormalExtensor(r, step, acc)

    def meet(self, other: "FormalExtensor") -> "FormalExtensor":
        r, k, l = self.r, self.step, other.step
        if k + l < r or k > r or l > r:
            return FormalExtensor(r, max(k + l - r, 0))
        if k == r:
            return other.scaled(self.polynomial())
        if l == r:
            return self.scaled(other.polynomial())
        m = k + l - r
        acc: dict[Word, BracketPolynomial] = {}
        for v, c1 in self.terms.items():
            for w, c2 in other.terms.items():
                c12 = c1 * c2
                for chosen in combinations(range(k), r - l):
                    rest = tuple(i for i in range(k) if i not in chosen)
                    norm = normalize_bracket(tuple(v[i] for i in chosen) + w)
                    if norm is None:
                        continue
                    bsign, b = norm
                    sign = permutation_sign(chosen + rest) * bsign
                    rest_word = tuple(v[i] for i in rest)
                    self._add(acc, rest_word, c12 * BracketPolynomial(r, {(b,): Fraction(sign)}))
        return FormalExtensor(r, m, acc)

    def __repr__(self):
        body = " + ".join(f"({c.to_text()})*{''.join(map(str, w)) or '1'}" for w, c in self.terms.items())
        return f"FormalExtensor(r={self.r}, step={self.step}, {body or '0'})"


def expand_symbolic(e: GcExpression | str, r: int) -> FormalExtensor:
    if isinstance(e, str):
        e = parse(e)
    if isinstance(e, Atom):
        return FormalExtensor.atom(e.label, r)
    left, right = expand_symbolic(e.left, r), expand_symbolic(e.right, r)
    return left.join(right) if isinstance(e, Join) else left.meet(right)


def expand_polynomial(e: GcExpression | str, r: int) -> BracketPolynomial:
    """Bracket polynomial of a fully contracted expression (step 0 or r)."""
    return expand_symbolic(e, r).polynomial()


def eval_scalar(e: GcExpression | str, config) -> Fraction:
    """Value of a step-r (or step-0) expression on a configuration."""
    return eval_numeric(e, config).value


def evaluate_expansion(e: GcExpression | str, r: int, config) -> Fraction:
    return BracketEvaluator(config_columns(config)).polynomial(expand_polynomial(e, r))
