"""Dyck paths with labels and decorations, their statistics, and enumeration.

A path of size N is stored as its area word a_1..a_N (1-based rows, bottom
to top): a_i counts the whole squares between the path and the main
diagonal in row i.  The i-th vertical step sits in column x_i = i-1-a_i.

Three decorated flavors share one class:

  ddd          decorated rises (star slot), decorated peaks, zero valleys;
               statistics (dinv, area)
  ddb_star     decorated falls (star slot holds column indices),
               decorated peaks, zero valleys; statistics (area, bounce)
  ddb_triangle as ddb_star but the star slot holds fake-fall columns

Valleys are the vertical steps directly preceded by a horizontal step,
i.e. a_i <= a_{i-1}; rises are a_i > a_{i-1}; peaks are followed by a
horizontal step.  Falls are horizontal steps followed by another
horizontal step, the last step of the path counting as a fall.
"""

from __future__ import annotations

import itertools
from collections import namedtuple
from dataclasses import dataclass, field
from typing import Iterator

from .errors import (
    FlavorMismatch,
    InvalidDecoration,
    MalformedAreaWord,
    NoValidLabelling,
)
from .qtpoly import QTPolynomial

DDD = "ddd"
DDB_STAR = "ddb_star"
DDB_TRIANGLE = "ddb_triangle"
FLAVORS = (DDD, DDB_STAR, DDB_TRIANGLE)

Features = namedtuple("Features", ["rises", "valleys", "peaks", "falls"])


def validate_path(word) -> tuple[int, ...]:
    """Check an integer sequence is a valid area word and return it as a tuple.

    Raises MalformedAreaWord if a_1 != 0, any letter is negative, or a step
    increases by more than 1.
    """
    w = tuple(int(a) for a in word)
    if not w:
        return w
    if w[0] != 0:
        raise MalformedAreaWord(f"area word must start with 0, got {w[0]}")
    for i in range(1, len(w)):
        if w[i] < 0:
            raise MalformedAreaWord(f"negative letter {w[i]} at row {i + 1}")
        if w[i] > w[i - 1] + 1:
            raise MalformedAreaWord(
                f"jump from {w[i - 1]} to {w[i]} at row {i + 1}"
            )
    return w


def rises(word) -> frozenset[int]:
    return frozenset(i for i in range(2, len(word) + 1) if word[i - 1] > word[i - 2])


def valleys(word) -> frozenset[int]:
    # non-strict: one horizontal step between equal-height rows still precedes i
    return frozenset(i for i in range(2, len(word) + 1) if word[i - 1] <= word[i - 2])


def peaks(word) -> frozenset[int]:
    n = len(word)
    out = {n} if n else set()
    out.update(i for i in range(1, n) if word[i] <= word[i - 1])
    return frozenset(out)


def columns(word) -> tuple[int, ...]:
    """Column x_i of each row's vertical step (0-based lines)."""
    return tuple(i - a for i, a in enumerate(word))


def col_heights(word) -> tuple[int, ...]:
    """Height y_c of the horizontal step crossing column c, for c = 1..N."""
    n = len(word)
    xs = columns(word)
    heights = []
    row = 0
    for c in range(1, n + 1):
        while row < n and xs[row] < c:
            row += 1
        heights.append(row)
    return tuple(heights)


def falls(word) -> frozenset[int]:
    """Columns of horizontal steps followed by another horizontal step.

    The last step of the path always qualifies.
    """
    n = len(word)
    if n == 0:
        return frozenset()
    ys = col_heights(word)
    out = {c for c in range(1, n) if ys[c - 1] == ys[c]}
    out.add(n)
    return frozenset(out)


def fake_falls(word, zval) -> frozenset[int]:
    """Columns of fake falls, given the set of zero-valley rows.

    A fake fall is a horizontal step not in the column of a zero valley
    that is followed by another horizontal step, or by a vertical step
    that is both a zero valley and a peak; the last step also qualifies.
    The column of a zero valley is the one crossed just right of its
    vertical step.
    """
    n = len(word)
    if n == 0:
        return frozenset()
    xs = columns(word)
    ys = col_heights(word)
    pk = peaks(word)
    blocked = {xs[i - 1] + 1 for i in zval}
    out = set()
    for c in range(1, n + 1):
        if c in blocked:
            continue
        if c == n:
            out.add(c)
        elif ys[c - 1] == ys[c]:
            out.add(c)
        else:
            row_after = ys[c - 1] + 1  # first vertical step after this column
            if row_after in zval and row_after in pk:
                out.add(c)
    return frozenset(out)


def features(word) -> Features:
    return Features(rises(word), valleys(word), peaks(word), falls(word))


def initial_run(word) -> int:
    """Number of leading vertical steps (rows with a_i = i-1)."""
    r = 0
    for i, a in enumerate(word):
        if a == i:
            r += 1
        else:
            break
    return r


@dataclass(frozen=True)
class DecoratedDyckPath:
    """Area word plus decoration index sets and a flavor tag.

    ``drise`` holds row indices of decorated rises for flavor ddd and
    column indices of decorated (fake) falls for the ddb flavors.
    """

    word: tuple[int, ...]
    drise: frozenset[int] = field(default_factory=frozenset)
    dpeak: frozenset[int] = field(default_factory=frozenset)
    zval: frozenset[int] = field(default_factory=frozenset)
    flavor: str = DDD

    def __post_init__(self):
        object.__setattr__(self, "word", validate_path(self.word))
        object.__setattr__(self, "drise", frozenset(self.drise))
        object.__setattr__(self, "dpeak", frozenset(self.dpeak))
        object.__setattr__(self, "zval", frozenset(self.zval))
        if self.flavor not in FLAVORS:
            raise FlavorMismatch(f"unknown flavor {self.flavor!r}")
        if not self.zval <= valleys(self.word):
            raise InvalidDecoration("zero valleys must be valleys")
        pk = peaks(self.word)
        if not self.dpeak <= pk:
            raise InvalidDecoration("decorated peaks must be peaks")
        if self.dpeak & self.zval:
            raise InvalidDecoration("decorated peaks cannot be zero valleys")
        if self.flavor == DDD:
            if not self.drise <= rises(self.word):
                raise InvalidDecoration("decorated rises must be rises")
        else:
            if pk and min(pk) in self.dpeak:
                raise InvalidDecoration("the leftmost peak cannot be decorated")
            pool = (
                falls(self.word)
                if self.flavor == DDB_STAR
                else fake_falls(self.word, self.zval)
            )
            if not self.drise <= pool:
                raise InvalidDecoration("decorated falls must be (fake) falls")

    @property
    def size(self) -> int:
        return len(self.word)

    @property
    def zero_valley_count(self) -> int:
        return len(self.zval)

    @property
    def label_count(self) -> int:
        """Number of vertical steps that are not zero valleys."""
        return len(self.word) - len(self.zval)

    def family_r(self) -> int:
        """Flavor-specific r: zeros not in zval (ddd) or initial run (ddb)."""
        if self.flavor == DDD:
            return sum(
                1
                for i, a in enumerate(self.word, start=1)
                if a == 0 and i not in self.zval
            )
        return initial_run(self.word)

    def to_obj(self) -> dict:
        return {
            "kind": "dyck",
            "flavor": self.flavor,
            "area_word": list(self.word),
            "drise": sorted(self.drise),
            "dpeak": sorted(self.dpeak),
            "zval": sorted(self.zval),
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "DecoratedDyckPath":
        if obj.get("kind") != "dyck":
            raise ValueError("not a dyck object")
        return cls(
            word=tuple(obj["area_word"]),
            drise=frozenset(obj.get("drise", ())),
            dpeak=frozenset(obj.get("dpeak", ())),
            zval=frozenset(obj.get("zval", ())),
            flavor=obj.get("flavor", DDD),
        )


@dataclass(frozen=True)
class LabelledDyckPath:
    """Dyck path with per-row labels (0 = blank) and decorated rises."""

    word: tuple[int, ...]
    labels: tuple[int, ...]
    drise: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "word", validate_path(self.word))
        object.__setattr__(self, "labels", tuple(int(l) for l in self.labels))
        object.__setattr__(self, "drise", frozenset(self.drise))
        if len(self.labels) != len(self.word):
            raise InvalidDecoration("one label per vertical step required")
        if any(l < 0 for l in self.labels):
            raise InvalidDecoration("labels are non-negative")
        if not self.drise <= rises(self.word):
            raise InvalidDecoration("decorated rises must be rises")
        xs = columns(self.word)
        for i in range(1, len(self.word)):
            if xs[i] == xs[i - 1] and self.labels[i] <= self.labels[i - 1]:
                raise InvalidDecoration(
                    "labels must strictly increase up each column"
                )
        if any(l == 0 and x == 0 for l, x in zip(self.labels, xs)):
            raise InvalidDecoration("label 0 cannot appear in the first column")

    @property
    def size(self) -> int:
        return len(self.word)

    def to_obj(self) -> dict:
        return {
            "kind": "dyck",
            "flavor": "pld",
            "area_word": list(self.word),
            "labels": list(self.labels),
            "drise": sorted(self.drise),
            "dpeak": [],
            "zval": [],
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "LabelledDyckPath":
        return cls(
            word=tuple(obj["area_word"]),
            labels=tuple(obj["labels"]),
            drise=frozenset(obj.get("drise", ())),
        )


# -- statistics -------------------------------------------------------


def area(obj) -> int:
    """Area statistic of a decorated or labelled path.

    Rows of decorated rises are skipped; for the ddb flavors the columns
    of decorated (fake) falls are skipped instead.
    """
    if isinstance(obj, LabelledDyckPath):
        return sum(a for i, a in enumerate(obj.word, start=1) if i not in obj.drise)
    if obj.flavor == DDD:
        return sum(a for i, a in enumerate(obj.word, start=1) if i not in obj.drise)
    ys = col_heights(obj.word)
    return sum(
        ys[c - 1] - c for c in range(1, len(obj.word) + 1) if c not in obj.drise
    )


def dinv_labelled(lp: LabelledDyckPath) -> int:
    """Number of primary and secondary label inversions."""
    w, l = lp.word, lp.labels
    n = len(w)
    total = 0
    for i in range(n):
        for j in range(i + 1, n):
            if w[i] == w[j] and l[i] < l[j]:
                total += 1
            elif w[i] == w[j] + 1 and l[i] > l[j]:
                total += 1
    return total


def dinv_decorated(dd: DecoratedDyckPath) -> int:
    """dinv with the exclusions imposed by decorated peaks and zero valleys."""
    if dd.flavor != DDD:
        raise FlavorMismatch("dinv is a ddd statistic")
    w = dd.word
    n = len(w)
    dp, zv = dd.dpeak, dd.zval
    total = 0
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            if w[i - 1] == w[j - 1]:
                if i not in dp and j not in zv:
                    total += 1
            elif w[i - 1] == w[j - 1] + 1:
                if j not in dp and i not in zv:
                    total += 1
    return total


def _modified_columns(word, zval):
    """Column steps after replacing each zero valley and its preceding
    horizontal step by a diagonal: per column c = 1..N a pair
    (kind, start_height) with kind 'E' or 'D'."""
    n = len(word)
    xs = columns(word)
    diag_cols = {xs[i - 1] for i in zval}  # 1-based column of the merged step
    ys = col_heights(word)
    cols = []
    for c in range(1, n + 1):
        kind = "D" if c in diag_cols else "E"
        cols.append((kind, ys[c - 1]))
    return cols


def _bounce_structure(word, zval):
    """Bounce word and geometry for the ball construction.

    Returns (bounce_word, kinds, cols, endpoints): the labels of the
    vertical and diagonal bounce steps bottom to top, their kinds
    ('V'/'D'), the modified column table, and a map from the end point of
    every vertical/diagonal bounce step to its 1-based index.
    """
    n = len(word)
    cols = _modified_columns(word, zval)
    bounce_word: list[int] = []
    kinds: list[str] = []
    endpoints: dict[tuple[int, int], int] = {}
    x = y = 0
    label = 0
    while (x, y) != (n, n):
        target = cols[x][1]  # start height of the step crossing column x+1
        while y < target:
            y += 1
            bounce_word.append(label)
            kinds.append("V")
            endpoints[(x, y)] = len(bounce_word)
        while True:
            kind = cols[x][0]
            x += 1
            if kind == "D":
                y += 1
                bounce_word.append(label)
                kinds.append("D")
                endpoints[(x, y)] = len(bounce_word)
            if y == x:
                label += 1
                break
    return bounce_word, kinds, cols, endpoints


def bounce(dd: DecoratedDyckPath) -> int:
    """Bounce statistic of a ddb path.

    Zero valleys become diagonal steps, the ball generates the bounce
    word, and each decorated peak cancels the bounce letter where its
    eastward trace meets the bounce path.
    """
    if dd.flavor not in (DDB_STAR, DDB_TRIANGLE):
        raise FlavorMismatch("bounce is a ddb statistic")
    n = len(dd.word)
    bounce_word, _, cols, endpoints = _bounce_structure(dd.word, dd.zval)
    xs = columns(dd.word)
    cancelled = set()
    for i in dd.dpeak:
        x, y = xs[i - 1], i  # corner joining the vertical step and the next step
        while True:
            idx = endpoints.get((x, y))
            if idx is not None:
                cancelled.add(idx)
                break
            if x >= n:
                raise AssertionError("peak trace escaped the grid")
            if cols[x][0] == "D":
                y += 1
            x += 1
    return sum(b for k, b in enumerate(bounce_word, start=1) if k not in cancelled)


def shuffle_labellings(dd: DecoratedDyckPath) -> set[LabelledDyckPath]:
    """The unique labelled path whose dinv reading word realizes dd.

    Zero valleys get label 0, decorated peaks take the largest labels in
    decreasing reading order, and the remaining labels are forced in
    increasing reading order.
    """
    if dd.flavor != DDD:
        raise FlavorMismatch("shuffle labelling applies to ddd paths")
    w = dd.word
    size = len(w)
    n = size - len(dd.zval)
    b = len(dd.dpeak)
    reading = sorted(range(1, size + 1), key=lambda i: (w[i - 1], i))
    labels = [0] * size
    next_big = n
    next_small = 1
    for pos in reading:
        if pos in dd.zval:
            labels[pos - 1] = 0
        elif pos in dd.dpeak:
            labels[pos - 1] = next_big
            next_big -= 1
        else:
            labels[pos - 1] = next_small
            next_small += 1
    if next_small != n - b + 1 or next_big != n - b:
        raise NoValidLabelling("label supply mismatch")
    try:
        lp = LabelledDyckPath(w, tuple(labels), dd.drise)
    except InvalidDecoration as exc:
        raise NoValidLabelling(str(exc)) from exc
    return {lp}


# -- enumeration ------------------------------------------------------


def dyck_words(size: int) -> Iterator[tuple[int, ...]]:
    """All valid area words of the given size in lexicographic order."""
    if size == 0:
        return
    word = [0] * size

    def rec(i: int):
        if i == size:
            yield tuple(word)
            return
        for v in range(word[i - 1] + 2):
            word[i] = v
            yield from rec(i + 1)

    yield from rec(1)


def _star_pool(word, zval, flavor):
    if flavor == DDD:
        return sorted(rises(word))
    if flavor == DDB_STAR:
        return sorted(falls(word))
    return sorted(fake_falls(word, zval))


def _circ_pool(word, zval, flavor):
    pk = peaks(word)
    pool = pk - zval
    if flavor != DDD and pk:
        pool -= {min(pk)}
    return sorted(pool)


def enumerate_dd(
    m: int, n: int, r: int, a: int, b: int, flavor: str = DDD
) -> Iterator[DecoratedDyckPath]:
    """Stream the family with m zero valleys, n other vertical steps,
    family parameter r, a star decorations and b decorated peaks.

    Deterministic order: area words lexicographically, then zero-valley,
    star and peak decoration sets in sorted-combination order.  Infeasible
    parameters yield an empty stream.
    """
    if flavor not in FLAVORS:
        raise FlavorMismatch(f"unknown flavor {flavor!r}")
    if min(m, n, r, a, b) < 0 or n == 0:
        return
    size = m + n
    for word in dyck_words(size):
        if flavor != DDD and initial_run(word) != r:
            continue
        vals = sorted(valleys(word))
        for zv_tuple in itertools.combinations(vals, m):
            zv = frozenset(zv_tuple)
            if flavor == DDD:
                nonzv_zeros = sum(
                    1 for i, x in enumerate(word, start=1) if x == 0 and i not in zv
                )
                if nonzv_zeros != r:
                    continue
            star_pool = _star_pool(word, zv, flavor)
            if len(star_pool) < a:
                continue
            circ_pool = _circ_pool(word, zv, flavor)
            if len(circ_pool) < b:
                continue
            for ds in itertools.combinations(star_pool, a):
                for dp in itertools.combinations(circ_pool, b):
                    yield DecoratedDyckPath(
                        word, frozenset(ds), frozenset(dp), zv, flavor
                    )


def dd_qt(m: int, n: int, r: int, a: int, b: int, flavor: str = DDD) -> QTPolynomial:
    """q,t-enumerator of the family: q^dinv t^area for ddd paths and
    q^area t^bounce for the ddb flavors."""
    total = QTPolynomial.zero()
    for dd in enumerate_dd(m, n, r, a, b, flavor):
        if flavor == DDD:
            total = total + QTPolynomial.monomial(dinv_decorated(dd), area(dd))
        else:
            total = total + QTPolynomial.monomial(area(dd), bounce(dd))
    return total


def enumerate_pld(m: int, n: int, k: int) -> Iterator[LabelledDyckPath]:
    """Partially labelled paths with m zero labels, the labels 1..n each
    once, and k decorated rises."""
    if min(m, n, k) < 0 or n == 0:
        return
    size = m + n
    for word in dyck_words(size):
        xs = columns(word)
        # zero labels sit at the bottom of their column, never in column 0
        zero_ok = [
            i
            for i in range(1, size + 1)
            if xs[i - 1] != 0 and (i == 1 or xs[i - 2] != xs[i - 1])
        ]
        rs = sorted(rises(word))
        if len(rs) < k:
            continue
        for zpos in itertools.combinations(zero_ok, m):
            rest = [i for i in range(1, size + 1) if i not in zpos]
            for perm in _column_increasing_labelings(xs, rest, n):
                labels = [0] * size
                for pos, lab in zip(rest, perm):
                    labels[pos - 1] = lab
                for dr in itertools.combinations(rs, k):
                    yield LabelledDyckPath(word, tuple(labels), frozenset(dr))


def _column_increasing_labelings(xs, positions, n):
    """Assignments of 1..n to positions, increasing up each column."""
    groups: dict[int, list[int]] = {}
    for pos in positions:
        groups.setdefault(xs[pos - 1], []).append(pos)
    group_list = sorted(groups.values(), key=lambda g: g[0])

    def rec(remaining, idx):
        if idx == len(group_list):
            yield {}
            return
        g = group_list[idx]
        for chosen in itertools.combinations(sorted(remaining), len(g)):
            rest = remaining - set(chosen)
            for tail in rec(rest, idx + 1):
                assignment = dict(zip(g, chosen))
                assignment.update(tail)
                yield assignment

    for assignment in rec(set(range(1, n + 1)), 0):
        yield [assignment[pos] for pos in positions]
