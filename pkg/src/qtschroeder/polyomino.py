"""Reduced parallelogram polyominoes via barred area words.

A reduced polyomino of size m x n is a pair of north/east lattice paths
from (0,0) to (m,n), the red one weakly above the green one.  Its
canonical form here is the area word over the alphabet

    0 < 0bar < 1 < 1bar < 2 < ...

with an artificial leading 0.  Letters are (value, barred) pairs; barred
letters correspond to the n vertical red steps (bottom to top) and the
unbarred letters after the artificial one to the m horizontal green
steps (left to right).  A word is valid iff it starts with (0, False)
and every increase moves to the successor in the alphabet.

The word and the path pair determine each other through the level
structure: after L steps both paths sit on the anti-diagonal x + y = L,
and level L contributes the red letter h-1+... precisely, with
h = (green x) - (red x) the width gap after the level's steps:

    red N + green E   ->  (h-1)bar then h      (gap grows)
    red N + green N   ->  h bar
    red E + green E   ->  h
    red E + green N   ->  nothing              (gap shrinks)

Decorations live on word positions (1-based, the artificial 0 at
position 1).  STAR objects decorate unbarred/barred rises, CIRC objects
decorate green peaks and red valleys.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .errors import FlavorMismatch, InvalidDecoration, MalformedAreaWord
from .qtpoly import QTPolynomial

STAR = "star"
CIRC = "circ"
RP_FLAVORS = (STAR, CIRC)

Letter = tuple[int, bool]


def rank(letter: Letter) -> int:
    v, barred = letter
    return 2 * v + (1 if barred else 0)


def successor(letter: Letter) -> Letter:
    v, barred = letter
    return (v + 1, False) if barred else (v, True)


def validate_poly_word(word) -> tuple[Letter, ...]:
    w = tuple((int(v), bool(b)) for v, b in word)
    if not w or w[0] != (0, False):
        raise MalformedAreaWord("polyomino area word must start with the artificial 0")
    for i in range(1, len(w)):
        if w[i][0] < 0:
            raise MalformedAreaWord(f"negative letter value at position {i + 1}")
        if rank(w[i]) > rank(w[i - 1]) + 1:
            raise MalformedAreaWord(
                f"increase at position {i + 1} skips the successor"
            )
    return w


# -- level structure ---------------------------------------------------

CASE_PAIR = 1  # red N, green E: barred letter then unbarred successor
CASE_RED_N = 2  # red N, green N: barred letter
CASE_GREEN_E = 3  # red E, green E: unbarred letter
CASE_SILENT = 4  # red E, green N: no letter


def parse_levels(word) -> list[tuple[int, tuple[int, ...]]]:
    """Split a valid word into levels: (case, word positions) per level."""
    w = validate_poly_word(word)
    levels: list[tuple[int, tuple[int, ...]]] = []
    h = 0
    i = 1
    while i < len(w):
        v, barred = w[i]
        if h < v:
            raise MalformedAreaWord(f"letter at position {i + 1} exceeds the gap")
        while h > v:
            levels.append((CASE_SILENT, ()))
            h -= 1
        if barred and i + 1 < len(w) and w[i + 1] == (v + 1, False):
            levels.append((CASE_PAIR, (i + 1, i + 2)))
            h = v + 1
            i += 2
        elif barred:
            levels.append((CASE_RED_N, (i + 1,)))
            i += 1
        else:
            levels.append((CASE_GREEN_E, (i + 1,)))
            i += 1
    while h > 0:
        levels.append((CASE_SILENT, ()))
        h -= 1
    return levels


_RED_STEP = {CASE_PAIR: "N", CASE_RED_N: "N", CASE_GREEN_E: "E", CASE_SILENT: "E"}
_GREEN_STEP = {CASE_PAIR: "E", CASE_RED_N: "N", CASE_GREEN_E: "E", CASE_SILENT: "N"}


def paths_from_word(word) -> tuple[str, str]:
    """Red and green step strings ('N'/'E') derived from the word."""
    levels = parse_levels(word)
    red = "".join(_RED_STEP[c] for c, _ in levels)
    green = "".join(_GREEN_STEP[c] for c, _ in levels)
    return red, green


def word_from_paths(red: str, green: str) -> tuple[Letter, ...]:
    """Area word of a path pair (the construction inverse to paths_from_word)."""
    if len(red) != len(green):
        raise MalformedAreaWord("paths must have the same number of steps")
    if sorted(red) != sorted(green):
        raise MalformedAreaWord("paths must share their endpoint")
    word: list[Letter] = [(0, False)]
    h = 0
    for rs, gs in zip(red, green):
        if rs not in "NE" or gs not in "NE":
            raise MalformedAreaWord("steps must be 'N' or 'E'")
        if rs == "N" and gs == "E":
            word.append((h, True))
            word.append((h + 1, False))
            h += 1
        elif rs == "N" and gs == "N":
            word.append((h, True))
        elif rs == "E" and gs == "E":
            word.append((h, False))
        else:
            h -= 1
            if h < 0:
                raise MalformedAreaWord("red path dips below the green path")
    if h != 0:
        raise MalformedAreaWord("paths do not close up")
    return tuple(word)


# -- features ----------------------------------------------------------


def unbarred_rises(word) -> frozenset[int]:
    w = validate_poly_word(word)
    return frozenset(
        i + 1
        for i in range(1, len(w))
        if not w[i][1] and rank(w[i]) == rank(w[i - 1]) + 1
    )


def barred_rises(word) -> frozenset[int]:
    w = validate_poly_word(word)
    return frozenset(
        i + 1
        for i in range(1, len(w))
        if w[i][1] and rank(w[i]) == rank(w[i - 1]) + 1
    )


def green_peaks(word) -> frozenset[int]:
    """Positions of unbarred letters whose green step follows a green N."""
    levels = parse_levels(word)
    out = set()
    for idx, (case, pos) in enumerate(levels):
        if case not in (CASE_PAIR, CASE_GREEN_E) or idx == 0:
            continue
        if _GREEN_STEP[levels[idx - 1][0]] == "N":
            out.add(pos[-1])
    return frozenset(out)


def red_valleys(word) -> frozenset[int]:
    """Positions of barred letters whose red step follows a red E (or starts)."""
    levels = parse_levels(word)
    out = set()
    for idx, (case, pos) in enumerate(levels):
        if case not in (CASE_PAIR, CASE_RED_N):
            continue
        if idx == 0 or _RED_STEP[levels[idx - 1][0]] == "E":
            out.add(pos[0])
    return frozenset(out)


@dataclass(frozen=True)
class ReducedPolyomino:
    """Barred area word plus one flavor of decorations."""

    word: tuple[Letter, ...]
    flavor: str = STAR
    dec_ur: frozenset[int] = field(default_factory=frozenset)
    dec_br: frozenset[int] = field(default_factory=frozenset)
    dec_gp: frozenset[int] = field(default_factory=frozenset)
    dec_rv: frozenset[int] = field(default_factory=frozenset)

    def __post_init__(self):
        object.__setattr__(self, "word", validate_poly_word(self.word))
        for name in ("dec_ur", "dec_br", "dec_gp", "dec_rv"):
            object.__setattr__(self, name, frozenset(getattr(self, name)))
        if self.flavor not in RP_FLAVORS:
            raise FlavorMismatch(f"unknown flavor {self.flavor!r}")
        if self.flavor == STAR:
            if self.dec_gp or self.dec_rv:
                raise InvalidDecoration("star flavor uses rise decorations only")
            if not self.dec_ur <= unbarred_rises(self.word):
                raise InvalidDecoration("decorated unbarred rises must be rises")
            if not self.dec_br <= barred_rises(self.word):
                raise InvalidDecoration("decorated barred rises must be rises")
        else:
            if self.dec_ur or self.dec_br:
                raise InvalidDecoration("circ flavor uses peak/valley decorations only")
            if not self.dec_gp <= green_peaks(self.word):
                raise InvalidDecoration("decorated green peaks must be green peaks")
            if not self.dec_rv <= red_valleys(self.word):
                raise InvalidDecoration("decorated red valleys must be red valleys")

    @property
    def m(self) -> int:
        return sum(1 for l in self.word if not l[1]) - 1

    @property
    def n(self) -> int:
        return sum(1 for l in self.word if l[1])

    @property
    def paths(self) -> tuple[str, str]:
        return paths_from_word(self.word)

    @classmethod
    def from_paths(cls, red: str, green: str, flavor: str = STAR, **dec) -> "ReducedPolyomino":
        return cls(word_from_paths(red, green), flavor, **dec)

    def r_star(self) -> int:
        """Unbarred zeros in the area word, the artificial one included."""
        return sum(1 for l in self.word if l == (0, False))

    def r_circ(self) -> int:
        """One more than the number of unbarred zeros in the bounce word."""
        bw = bounce_word(self.word)
        return 1 + sum(1 for l in bw if l == (0, False))

    def to_obj(self) -> dict:
        return {
            "kind": "polyomino",
            "flavor": self.flavor,
            "word": [[v, b] for v, b in self.word],
            "dec": {
                "ur": sorted(self.dec_ur),
                "br": sorted(self.dec_br),
                "gp": sorted(self.dec_gp),
                "rv": sorted(self.dec_rv),
            },
        }

    @classmethod
    def from_obj(cls, obj: dict) -> "ReducedPolyomino":
        if obj.get("kind") != "polyomino":
            raise ValueError("not a polyomino object")
        dec = obj.get("dec", {})
        return cls(
            word=tuple((v, bool(b)) for v, b in obj["word"]),
            flavor=obj.get("flavor", STAR),
            dec_ur=frozenset(dec.get("ur", ())),
            dec_br=frozenset(dec.get("br", ())),
            dec_gp=frozenset(dec.get("gp", ())),
            dec_rv=frozenset(dec.get("rv", ())),
        )


def poly_area_word(P: ReducedPolyomino) -> tuple[Letter, ...]:
    """The area word (canonical form) of the polyomino."""
    return P.word


# -- bounce path -------------------------------------------------------


def bounce_word(word) -> tuple[Letter, ...]:
    """Labels along the bounce path, one letter per unit step."""
    bw, _, _ = _bounce_labels(word)
    return bw


def _bounce_labels(word):
    """Bounce word plus per-row and per-column projected labels.

    Returns (bounce_word, row_label, col_label) with row_label[j] the
    barred letter of row j (1-based) and col_label[c] the unbarred letter
    of column c.
    """
    red, green = paths_from_word(word)
    m = red.count("E")
    n = red.count("N")
    # gamma[j]: column where green's j-th N starts; R[c]: height where red's
    # c-th E starts.
    gamma = [None] * (n + 2)
    row = 0
    col = 0
    for s in green:
        if s == "N":
            row += 1
            gamma[row] = col
        else:
            col += 1
    R = [None] * (m + 2)
    row = 0
    col = 0
    for s in red:
        if s == "E":
            col += 1
            R[col] = row
        else:
            row += 1
    bw: list[Letter] = []
    row_label: dict[int, Letter] = {}
    col_label: dict[int, Letter] = {}
    x = y = 0
    alphabet_rank = 0
    guard = 0
    while (x, y) != (m, n):
        guard += 1
        if guard > 2 * (m + n) + 4:
            raise AssertionError("bounce path failed to terminate")
        x_target = gamma[y + 1] if y < n else m
        letter = (alphabet_rank // 2, False)
        for c in range(x + 1, x_target + 1):
            col_label[c] = letter
            bw.append(letter)
        x = x_target
        alphabet_rank += 1
        if (x, y) == (m, n):
            break
        y_target = R[x + 1] if x < m else n
        letter = (alphabet_rank // 2, True)
        for r in range(y + 1, y_target + 1):
            row_label[r] = letter
            bw.append(letter)
        y = y_target
        alphabet_rank += 1
    return tuple(bw), row_label, col_label


# -- statistics --------------------------------------------------------


def _barred_position_rows(word) -> dict[int, int]:
    """Word position of the j-th barred letter, inverted: position -> row."""
    out = {}
    row = 0
    for i, l in enumerate(word):
        if l[1]:
            row += 1
            out[i + 1] = row
    return out


def _unbarred_position_cols(word) -> dict[int, int]:
    out = {}
    col = 0
    for i, l in enumerate(word):
        if not l[1] and i > 0:
            col += 1
            out[i + 1] = col
    return out


def poly_area(P: ReducedPolyomino) -> int:
    """Sum of letter values, decorated rises of either kind not counting."""
    dec = P.dec_ur | P.dec_br
    return sum(v for i, (v, _) in enumerate(P.word, start=1) if i not in dec)


def poly_bounce(P: ReducedPolyomino) -> int:
    """Sum of bounce-word values, skipping rows of decorated red valleys
    and columns of decorated green peaks."""
    if P.flavor != CIRC and (P.dec_ur or P.dec_br):
        raise FlavorMismatch("bounce with decorations needs the circ flavor")
    _, row_label, col_label = _bounce_labels(P.word)
    total = sum(l[0] for l in row_label.values()) + sum(
        l[0] for l in col_label.values()
    )
    pos_rows = _barred_position_rows(P.word)
    pos_cols = _unbarred_position_cols(P.word)
    for pos in P.dec_rv:
        total -= row_label[pos_rows[pos]][0]
    for pos in P.dec_gp:
        total -= col_label[pos_cols[pos]][0]
    return total


def poly_dinv(P: ReducedPolyomino) -> int:
    """Pairs i < j whose i-th letter is the successor of the j-th letter."""
    w = P.word
    total = 0
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] == successor(w[j]):
                total += 1
    return total


# -- enumeration -------------------------------------------------------


def polyomino_words(m: int, n: int) -> Iterator[tuple[Letter, ...]]:
    """All valid area words with m+1 unbarred and n barred letters,
    ordered lexicographically by letter rank."""
    if m < 0 or n < 0:
        return
    word: list[Letter] = [(0, False)]

    def rec(unbarred_left: int, barred_left: int):
        if unbarred_left == 0 and barred_left == 0:
            yield tuple(word)
            return
        max_rank = rank(word[-1]) + 1
        for r in range(max_rank + 1):
            letter = (r // 2, r % 2 == 1)
            if letter[1]:
                if barred_left == 0:
                    continue
            elif unbarred_left == 0:
                continue
            word.append(letter)
            yield from rec(
                unbarred_left - (0 if letter[1] else 1),
                barred_left - (1 if letter[1] else 0),
            )
            word.pop()

    yield from rec(m, n)


def enumerate_rp(
    m: int, r: int, n: int, k: int, j: int, flavor: str = STAR
) -> Iterator[ReducedPolyomino]:
    """Stream the family of decorated m x n reduced polyominoes.

    For the star flavor r counts unbarred zeros in the area word (the
    artificial one included) and (k, j) decorate unbarred/barred rises;
    for the circ flavor r-1 counts unbarred zeros in the bounce word and
    (k, j) decorate green peaks/red valleys.
    """
    if flavor not in RP_FLAVORS:
        raise FlavorMismatch(f"unknown flavor {flavor!r}")
    if min(m, n, k, j) < 0 or r < 1:
        return
    for word in polyomino_words(m, n):
        if flavor == STAR:
            if sum(1 for l in word if l == (0, False)) != r:
                continue
            pool_a = sorted(unbarred_rises(word))
            pool_b = sorted(barred_rises(word))
        else:
            bw = bounce_word(word)
            if sum(1 for l in bw if l == (0, False)) != r - 1:
                continue
            pool_a = sorted(green_peaks(word))
            pool_b = sorted(red_valleys(word))
        if len(pool_a) < k or len(pool_b) < j:
            continue
        for da in itertools.combinations(pool_a, k):
            for db in itertools.combinations(pool_b, j):
                if flavor == STAR:
                    yield ReducedPolyomino(
                        word, STAR, dec_ur=frozenset(da), dec_br=frozenset(db)
                    )
                else:
                    yield ReducedPolyomino(
                        word, CIRC, dec_gp=frozenset(da), dec_rv=frozenset(db)
                    )


def rp_qt(m: int, r: int, n: int, k: int, j: int, flavor: str = STAR) -> QTPolynomial:
    """q,t-enumerator: q^dinv t^area for star, q^area t^bounce for circ."""
    total = QTPolynomial.zero()
    for P in enumerate_rp(m, r, n, k, j, flavor):
        if flavor == STAR:
            total = total + QTPolynomial.monomial(poly_dinv(P), poly_area(P))
        else:
            total = total + QTPolynomial.monomial(poly_area(P), poly_bounce(P))
    return total
