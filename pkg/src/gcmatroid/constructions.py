"""Exact builders for the incidence configurations.

Every builder is a deterministic function of its parameters and validates
its output: the realized matroid must have exactly the expected dependent
sets, otherwise :class:`DegenerateConfiguration` is raised naming the
offending subsets.
"""
from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Sequence

from .exact import primitive, proportional, scalar
from .gc import Extensor, GcExpression, Join, Meet, join, meet, word
from .matroid import ConfigError, Matroid, PointConfig, matroid_from_config, nonbases_from_flats

Point = tuple[Fraction, ...]


class DegenerateConfiguration(ConfigError):
    def __init__(self, message: str, unexpected=(), missing=()):
        self.unexpected = sorted(unexpected)
        self.missing = sorted(missing)
        detail = []
        if self.unexpected:
            detail.append("unexpected dependent sets " + ", ".join(_fmt(s) for s in self.unexpected[:8]))
        if self.missing:
            detail.append("missing dependent sets " + ", ".join(_fmt(s) for s in self.missing[:8]))
        super().__init__(message + (": " + "; ".join(detail) if detail else ""))


def _fmt(s) -> str:
    return "{" + ",".join(str(x) for x in s) + "}"


def point(*coords) -> Point:
    p = tuple(scalar(x) for x in coords)
    if not any(p):
        raise ConfigError("a projective point cannot be the zero vector")
    return p


def normalized(p: Sequence[Fraction]) -> Point:
    """Primitive integer representative with positive leading entry."""
    return primitive(p)


def conic_point(t) -> Point:
    """(1, t, t^2) on the conic xz = y^2."""
    t = scalar(t)
    return (Fraction(1), t, t * t)


def moment_point(t, d: int) -> Point:
    """(1, t, ..., t^d) on the rational normal curve of degree d."""
    if d < 2:
        raise ValueError(f"rational normal curve needs degree d >= 2, got {d}")
    t = scalar(t)
    return tuple(t ** e for e in range(d + 1))


def line_through(p: Sequence, q: Sequence) -> Extensor:
    ext = join(Extensor.point(p), Extensor.point(q))
    if ext.is_zero():
        raise ConfigError(f"coincident points {list(map(str, p))} and {list(map(str, q))} do not span a line")
    return ext


def span(*points: Sequence) -> Extensor:
    ext = Extensor.from_vectors(points)
    if ext.is_zero():
        raise ConfigError("dependent points do not span a subspace of the expected dimension")
    return ext


def intersect(a: Extensor, b: Extensor) -> Point:
    """Meet of two flats, expected to be a single point."""
    m = meet(a, b)
    if m.step != 1:
        raise ConfigError(f"meet has step {m.step}, not a point")
    if m.is_zero():
        raise ConfigError("flats are not transversal; their meet vanishes")
    return normalized(m.vectors[0])


def meet_lines(p1, p2, q1, q2) -> Point:
    return intersect(line_through(p1, p2), line_through(q1, q2))


def dedup_points(points: Sequence[Sequence]) -> tuple[list[Point], list[int]]:
    """Drop projective duplicates, keeping first occurrences in order.

    Returns the kept points and, for every input point, the index of its
    representative in the kept list.
    """
    kept: list[Point] = []
    keys: dict[Point, int] = {}
    index = []
    for p in points:
        key = primitive(p)
        if key not in keys:
            keys[key] = len(kept)
            kept.append(tuple(p))
        index.append(keys[key])
    return kept, index


def validate(config: PointConfig, expected_nonbases, what: str) -> Matroid:
    try:
        m = matroid_from_config(config)
    except ConfigError as exc:
        raise DegenerateConfiguration(f"{what}: {exc}") from None
    got = set(m.nonbases())
    expected = set(expected_nonbases)
    if got != expected:
        raise DegenerateConfiguration(f"degenerate {what}", got - expected, expected - got)
    return m


def _distinct(params, what):
    if len(set(params)) != len(params):
        raise DegenerateConfiguration(f"{what} parameters must be distinct, got {[str(t) for t in params]}")


# pencil ------------------------------------------------------------------------

PENCIL_NONBASES = {(1, 2, 7), (3, 4, 7), (5, 6, 7)}

DEFAULT_PENCIL = dict(
    center=(0, 0, 1),
    directions=((1, 0, 0), (0, 1, 0), (1, 1, 0)),
    params=((1, 3), (2, 5), (-1, 4)),
)


def build_pencil(center=DEFAULT_PENCIL["center"], directions=DEFAULT_PENCIL["directions"],
                 params=DEFAULT_PENCIL["params"]) -> PointConfig:
    """Three lines through P7; the line j carries P_{2j-1}, P_{2j} = direction_j + s * P7."""
    c = point(*center)
    cols = []
    for d, (s1, s2) in zip(directions, params):
        d = point(*d)
        for s in (s1, s2):
            s = scalar(s)
            cols.append(tuple(x + s * y for x, y in zip(d, c)))
    cols.append(c)
    lines = {"L127": (1, 2, 7), "L347": (3, 4, 7), "L567": (5, 6, 7)}
    cfg = PointConfig(tuple(cols), ("original",) * 7, lines, {"family": "pencil"})
    validate(cfg, PENCIL_NONBASES, "pencil configuration")
    return cfg


def pencil_from_points(points: Sequence[Sequence]) -> PointConfig:
    cfg = PointConfig(tuple(tuple(scalar(x) for x in p) for p in points), ("original",) * 7,
                      {"L127": (1, 2, 7), "L347": (3, 4, 7), "L567": (5, 6, 7)}, {"family": "pencil"})
    validate(cfg, PENCIL_NONBASES, "pencil configuration")
    return cfg


# Pascal ------------------------------------------------------------------------

PASCAL_LINES = {
    "L127": (1, 2, 7), "L457": (4, 5, 7), "L238": (2, 3, 8),
    "L568": (5, 6, 8), "L349": (3, 4, 9), "L169": (1, 6, 9), "L789": (7, 8, 9),
}
PASCAL_NONBASES = {(1, 2, 7), (2, 3, 8), (3, 4, 9), (4, 5, 7), (5, 6, 8), (1, 6, 9), (7, 8, 9)}
DEFAULT_PASCAL_PARAMS = (0, 1, -1, 2, -2, 3)


def pascal_auxiliaries(p: Sequence[Point]) -> list[Point]:
    """P7 = 12^45, P8 = 23^56, P9 = 34^61 for six points p[0..5]."""
    return [
        meet_lines(p[0], p[1], p[3], p[4]),
        meet_lines(p[1], p[2], p[4], p[5]),
        meet_lines(p[2], p[3], p[5], p[0]),
    ]


def build_pascal(params: Sequence = DEFAULT_PASCAL_PARAMS) -> PointConfig:
    ts = [scalar(t) for t in params]
    if len(ts) != 6:
        raise ValueError(f"Pascal configuration needs 6 parameters, got {len(ts)}")
    _distinct(ts, "conic")
    pts = [conic_point(t) for t in ts]
    cols = pts + pascal_auxiliaries(pts)
    ann = ("original",) * 6 + ("auxiliary",) * 3
    cfg = PointConfig(tuple(cols), ann, dict(PASCAL_LINES), {"family": "pascal", "params": [str(t) for t in ts]})
    validate(cfg, PASCAL_NONBASES, "Pascal configuration")
    return cfg


# more points on a conic ---------------------------------------------------------

DEFAULT_MORE_POINTS_PARAMS = (0, 1, -1, 2, -2, 3, -3, 4, -4, 5, -5, 6)


def more_points_layout(n: int) -> tuple[list[tuple[str, int]], dict[str, tuple]]:
    """Names of the deduplicated auxiliary points and the expected lines.

    Auxiliary order: Q1 = 12^45 once, then Q_i2 = 23^5i and Q_i3 = 34^i1 for
    i = 6..n.  Q_i1 = 12^45 does not depend on i, so q = 2(n-5) + 1.
    """
    names = [("Q1", 0)]
    for i in range(6, n + 1):
        names += [(f"Q{i}2", i), (f"Q{i}3", i)]
    label = {name: n + 1 + idx for idx, (name, _) in enumerate(names)}
    lines: dict[str, tuple] = {
        "L12": (1, 2, label["Q1"]),
        "L45": (4, 5, label["Q1"]),
        "L23": (2, 3) + tuple(label[f"Q{i}2"] for i in range(6, n + 1)),
        "L34": (3, 4) + tuple(label[f"Q{i}3"] for i in range(6, n + 1)),
    }
    for i in range(6, n + 1):
        lines[f"L5{i}"] = (5, i, label[f"Q{i}2"])
        lines[f"L{i}1"] = (1, i, label[f"Q{i}3"])
        lines[f"Pascal{i}"] = (label["Q1"], label[f"Q{i}2"], label[f"Q{i}3"])
    return names, lines


def build_more_points(params: Sequence) -> PointConfig:
    ts = [scalar(t) for t in params]
    n = len(ts)
    if n < 6:
        raise ValueError(f"need at least 6 conic points, got {n}")
    _distinct(ts, "conic")
    pts = [conic_point(t) for t in ts]
    raw = []
    for i in range(6, n + 1):
        pi = pts[i - 1]
        raw += [
            meet_lines(pts[0], pts[1], pts[3], pts[4]),
            meet_lines(pts[1], pts[2], pts[4], pi),
            meet_lines(pts[2], pts[3], pi, pts[0]),
        ]
    aux, _ = dedup_points(raw)
    names, lines = more_points_layout(n)
    if len(aux) != len(names):
        raise DegenerateConfiguration(f"expected {len(names)} distinct auxiliary points, found {len(aux)}")
    cols = pts + aux
    ann = ("original",) * n + ("auxiliary",) * len(aux)
    meta = {"family": "more_points", "n_points": n, "q": len(aux),
            "aux_names": [nm for nm, _ in names], "params": [str(t) for t in ts]}
    cfg = PointConfig(tuple(cols), ann, lines, meta)
    validate(cfg, nonbases_from_flats(3, lines.values()), f"{n}-point conic configuration")
    return cfg


# Caminata-Schaffler --------------------------------------------------------------


def cs_lambdas(d: int) -> list[tuple[int, ...]]:
    return list(combinations(range(1, d + 5), 6))


def cs_hyperplane_labels(d: int, lam: Sequence[int]) -> tuple[int, ...]:
    return tuple(j for j in range(1, d + 5) if j not in lam)


def cs_meet_terms(d: int, lam: Sequence[int]) -> list[tuple[tuple[int, int], tuple[int, ...]]]:
    """The three (line, hyperplane) pairs i1i2 ^ i4i5H, i2i3 ^ i5i6H, i3i4 ^ i6i1H."""
    i1, i2, i3, i4, i5, i6 = lam
    h = cs_hyperplane_labels(d, lam)
    return [((i1, i2), (i4, i5) + h), ((i2, i3), (i5, i6) + h), ((i3, i4), (i6, i1) + h)]


def cs_expression(d: int, lam: Sequence[int]) -> GcExpression:
    """(i1i2 ^ i4i5H) v (i2i3 ^ i5i6H) v (i3i4 ^ i6i1H) v H."""
    parts = [Meet(word(*line), word(*plane)) for line, plane in cs_meet_terms(d, lam)]
    e: GcExpression = Join(Join(parts[0], parts[1]), parts[2])
    for j in cs_hyperplane_labels(d, lam):
        e = Join(e, word(j))
    return e


def default_cs_params(d: int) -> tuple[Fraction, ...]:
    base = [0, 1, 3, -2, 5, -7, Fraction(11, 2), Fraction(-13, 3), 17, Fraction(19, 5), -23, Fraction(29, 7)]
    if d + 4 > len(base):
        raise ValueError(f"no default parameters for d = {d}; pass them explicitly")
    return tuple(Fraction(x) for x in base[: d + 4])


def _cs_raw(d: int, ts: Sequence[Fraction]):
    pts = [moment_point(t, d) for t in ts]
    raw, sources = [], []
    for lam in cs_lambdas(d):
        for slot, (line, plane) in enumerate(cs_meet_terms(d, lam)):
            ln = span(*(pts[i - 1] for i in line))
            pl = span(*(pts[i - 1] for i in plane))
            raw.append(intersect(ln, pl))
            sources.append({"lambda": list(lam), "slot": slot, "line": list(line), "hyperplane": list(plane)})
    return pts, raw, sources


def build_caminata_schaffler(d: int, params: Sequence | None = None, *, validate_matroid: bool | None = None
                             ) -> tuple[PointConfig, list[tuple[tuple[int, ...], GcExpression]]]:
    """d+4 moment-curve points plus the deduplicated line/hyperplane meets.

    Returns the configuration and, per 6-subset lambda, its coplanarity
    expression.  Auxiliary labels follow first appearance (lambda in
    lexicographic order, then the three meets in order).

    Matroid validation compares against :func:`cs_reference_matroid`; it is on
    by default for d <= 3 only, since C(n, d+1) minors get expensive beyond.
    """
    if d < 2:
        raise ValueError(f"Caminata-Schaffler configurations need d >= 2, got {d}")
    ts = [scalar(t) for t in (params if params is not None else default_cs_params(d))]
    if len(ts) != d + 4:
        raise ValueError(f"need d+4 = {d + 4} parameters, got {len(ts)}")
    _distinct(ts, "moment curve")
    try:
        pts, raw, sources = _cs_raw(d, ts)
    except ConfigError as exc:
        raise DegenerateConfiguration(f"degenerate rational normal curve configuration: {exc}") from None
    aux, index = dedup_points(raw)
    for src, k in zip(sources, index):
        src["label"] = d + 5 + k
    cols = pts + aux
    ann = ("original",) * (d + 4) + ("auxiliary",) * len(aux)
    meta = {"family": "cs", "d": d, "params": [str(t) for t in ts], "raw_auxiliaries": len(raw),
            "q": len(aux), "sources": sources}
    cfg = PointConfig(tuple(cols), ann, {}, meta)
    if validate_matroid is None:
        validate_matroid = d <= CS_VALIDATION_MAX_D
    if validate_matroid:
        ref = cs_reference_matroid(d)
        validate(cfg, set(ref.nonbases()), f"Caminata-Schaffler configuration (d={d})")
    exprs = [(lam, cs_expression(d, lam)) for lam in cs_lambdas(d)]
    return cfg, exprs


CS_VALIDATION_MAX_D = 3
CS_REFERENCE_SEED = 2024


def random_rational(rng, num: int = 40, den: int = 11) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def distinct_rationals(rng, count: int, num: int = 40, den: int = 11) -> list[Fraction]:
    out: list[Fraction] = []
    while len(out) < count:
        t = random_rational(rng, num, den)
        if t not in out:
            out.append(t)
    return out


@lru_cache(maxsize=None)
def cs_reference_matroid(d: int) -> Matroid:
    """Matroid of a generic Caminata-Schaffler configuration.

    Three seeded random parameter draws must realize the same matroid, which
    is then taken as the generic one.
    """
    import random

    rng = random.Random(CS_REFERENCE_SEED + d)
    found = []
    for _ in range(3):
        cfg, _ = build_caminata_schaffler(d, distinct_rationals(rng, d + 4), validate_matroid=False)
        found.append(matroid_from_config(cfg))
    if any(m.bases != found[0].bases for m in found[1:]):
        raise DegenerateConfiguration(f"random reference draws disagree on the generic matroid for d={d}")
    return found[0]


# Cayley-Bacharach grids ------------------------------------------------------------


def grid_label(k: int, i: int, j: int) -> int:
    return (i - 1) * k + j


def grid_lines(k: int) -> dict[str, tuple[int, ...]]:
    lines = {"L": tuple(grid_label(k, i, i) for i in range(1, k + 1))}
    for i in range(1, k + 1):
        lines[f"l{i}"] = tuple(grid_label(k, i, j) for j in range(1, k + 1))
    for j in range(1, k + 1):
        lines[f"m{j}"] = tuple(grid_label(k, i, j) for i in range(1, k + 1))
    return lines


def default_cb_params(k: int) -> dict:
    """Fixed parameters for k <= 5; larger k uses a seeded search for a generic grid."""
    if k <= 5:
        base = [Fraction(x) for x in (0, 1, 3, -2, 5)][:k]
        ell = [Fraction(x) for x in (1, -2, 3, Fraction(1, 2), -5)][:k]
        em = [Fraction(x) for x in (-1, Fraction(2, 3), Fraction(-5, 2), 2, 7)][:k]
        return {"base": base, "ell_slopes": ell, "m_slopes": em}
    import random

    rng = random.Random(7000 + k)
    for _ in range(200):
        params = {
            "base": distinct_rationals(rng, k),
            "ell_slopes": distinct_rationals(rng, k),
            "m_slopes": distinct_rationals(rng, k),
        }
        try:
            build_cb_grid(k, **params)
        except DegenerateConfiguration:
            continue
        return params
    raise DegenerateConfiguration(f"no generic default grid found for k={k}")


def build_cb_grid(k: int, base: Sequence | None = None, ell_slopes: Sequence | None = None,
                  m_slopes: Sequence | None = None) -> PointConfig:
    """k^2 intersection points of two unions of k lines through k collinear points.

    P_i = (base_i, 0, 1) on the line y = 0; l_i and m_i pass through P_i with
    slopes ell_slopes[i] and m_slopes[i].  Grid point l_i ^ m_j gets label
    (i-1)k + j, so P_i = l_i ^ m_i has label (i-1)k + i.
    """
    if k < 3:
        raise ValueError(f"Cayley-Bacharach grids need k >= 3, got {k}")
    defaults = default_cb_params(k) if None in (base, ell_slopes, m_slopes) else {}
    base = [scalar(x) for x in (base if base is not None else defaults["base"])]
    ell_slopes = [scalar(x) for x in (ell_slopes if ell_slopes is not None else defaults["ell_slopes"])]
    m_slopes = [scalar(x) for x in (m_slopes if m_slopes is not None else defaults["m_slopes"])]
    if not (len(base) == len(ell_slopes) == len(m_slopes) == k):
        raise ValueError(f"need k = {k} base points and slopes")
    _distinct(base, "base point")
    ps = [point(a, 0, 1) for a in base]
    try:
        ells = [line_through(p, (1, s, 0)) for p, s in zip(ps, ell_slopes)]
        ems = [line_through(p, (1, s, 0)) for p, s in zip(ps, m_slopes)]
        cols = []
        for i in range(k):
            for j in range(k):
                cols.append(normalized(ps[i]) if i == j else intersect(ells[i], ems[j]))
    except ConfigError as exc:
        raise DegenerateConfiguration(f"degenerate Cayley-Bacharach grid: {exc}") from None
    lines = grid_lines(k)
    residual = [grid_label(k, i, j) for i in range(1, k + 1) for j in range(1, k + 1) if i != j]
    ann = tuple("original" if i == j else "residual" for i in range(1, k + 1) for j in range(1, k + 1))
    meta = {"family": "cb", "k": k, "residual": residual,
            "base": [str(x) for x in base], "ell_slopes": [str(x) for x in ell_slopes],
            "m_slopes": [str(x) for x in m_slopes]}
    cfg = PointConfig(tuple(cols), ann, lines, meta)
    validate(cfg, nonbases_from_flats(3, lines.values()), f"Cayley-Bacharach grid (k={k})")
    return cfg


def residual_labels(cfg: PointConfig) -> list[int]:
    return list(cfg.meta["residual"])


def same_point(p: Sequence, q: Sequence) -> bool:
    return proportional(p, q)
