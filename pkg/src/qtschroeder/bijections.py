"""Statistic-preserving and statistic-swapping bijections.

All three maps and their inverses work on area words, never on raw step
geometry:

  sweep        ddd path -> ddb_triangle path, (dinv, area) -> (area, bounce)
  zeta         circ polyomino -> star polyomino, (area, bounce) -> (dinv, area)
  poly_to_dyck star polyomino -> ddd path, preserving (dinv, area)

Inverses validate membership in the image (NotInImage) by reconstructing
and re-applying the forward map.
"""

from __future__ import annotations

from .dyck import (
    DDB_TRIANGLE,
    DDD,
    DecoratedDyckPath,
    _bounce_structure,
    columns,
    col_heights,
    falls,
    peaks,
    rises,
    valleys,
)
from .errors import FlavorMismatch, InvalidDecoration, MalformedAreaWord, NotInImage
from .polyomino import (
    CIRC,
    STAR,
    ReducedPolyomino,
    _barred_position_rows,
    _bounce_labels,
    _unbarred_position_cols,
    paths_from_word,
    word_from_paths,
)

# -- rise/fall correspondence -----------------------------------------


def rise_to_fall(word, i: int) -> int:
    """Column of the first fall crossing the diagonal of rise i.

    The number of whole squares in that column equals a_i by construction.
    """
    if i not in rises(word):
        raise InvalidDecoration(f"row {i} is not a rise")
    delta = word[i - 1]
    xs = columns(word)
    ys = col_heights(word)
    fl = falls(word)
    for c in range(xs[i - 1] + 1, len(word) + 1):
        if ys[c - 1] - c == delta and c in fl:
            return c
    raise AssertionError("every rise crosses its diagonal at a fall")


# -- sweep -------------------------------------------------------------


def _sweep_draw(word, zval):
    """Draw the sweep image; returns the step list with letter tags.

    Each entry is (kind, letter, pair) with kind 'N' or 'E', letter the
    1-based position of the scanned letter, and pair True when the step
    belongs to a zero-valley vertical-plus-horizontal pair.
    """
    n = len(word)
    steps = []
    for p in range(1, n + 1):
        if word[p - 1] == 0 and p not in zval:
            steps.append(("N", p, False))
    for value in range(max(word) + 1):
        for p in range(1, n + 1):
            a = word[p - 1]
            if a == value and p not in zval:
                steps.append(("E", p, False))
            elif a == value and p in zval:
                steps.append(("N", p, True))
                steps.append(("E", p, True))
            elif a == value + 1 and p not in zval:
                steps.append(("N", p, False))
    return steps


def sweep(dd: DecoratedDyckPath) -> DecoratedDyckPath:
    """Image of a ddd path under the generalized sweep map."""
    if dd.flavor != DDD:
        raise FlavorMismatch("sweep applies to ddd paths")
    steps = _sweep_draw(dd.word, dd.zval)
    row = col = x = 0
    prev_was_n = False
    row_x: list[int] = []
    run_start_of_row: dict[int, int] = {}
    run_top: dict[int, int] = {}
    n_row_of_letter: dict[int, int] = {}
    e_col_of_letter: dict[int, int] = {}
    pair_n_row_of_letter: dict[int, int] = {}
    current_start = 0
    for kind, p, pair in steps:
        if kind == "N":
            row += 1
            row_x.append(x)
            if not prev_was_n:
                current_start = row
            run_start_of_row[row] = current_start
            run_top[current_start] = row
            if pair:
                pair_n_row_of_letter[p] = row
            else:
                n_row_of_letter[p] = row
            prev_was_n = True
        else:
            col += 1
            x += 1
            if not pair:
                e_col_of_letter[p] = col
            prev_was_n = False
    image_word = tuple(r - 1 - row_x[r - 1] for r in range(1, row + 1))
    zval_img = frozenset(
        run_start_of_row[pair_n_row_of_letter[p]] for p in dd.zval
    )
    dpeak_img = frozenset(
        run_top[run_start_of_row[n_row_of_letter[p]]] for p in dd.drise
    )
    dfall_img = frozenset(e_col_of_letter[p] for p in dd.dpeak)
    return DecoratedDyckPath(
        image_word, dfall_img, dpeak_img, zval_img, DDB_TRIANGLE
    )


def _image_events(dd: DecoratedDyckPath):
    """Classify the steps of a triangle path into sweep events.

    Returns (initial_count, events) where events is the ordered list of
    ('L', col) / ('Z', run_start_row) / ('V', row) entries after the
    initial vertical run.
    """
    word = dd.word
    n = len(word)
    xs = columns(word)
    # run structure
    run_start_of_row = {}
    run_top = {}
    start = 1
    for r in range(1, n + 1):
        if r > 1 and xs[r - 1] != xs[r - 2]:
            start = r
        run_start_of_row[r] = start
        run_top[start] = r
    marked_tops = {run_top[s] for s in dd.zval}
    pair_e_cols = {xs[i - 1] + 1 for i in dd.zval}
    events = []
    initial = 0
    row = 0
    col = 0
    # walk the path steps in order
    for r in range(1, n + 1):
        while col < xs[r - 1]:
            col += 1
            if col not in pair_e_cols:
                events.append(("L", col))
        row = r
        if run_start_of_row[r] == 1:
            initial += 1
        elif r in marked_tops:
            events.append(("Z", run_start_of_row[r]))
        else:
            events.append(("V", r))
    while col < n:
        col += 1
        if col not in pair_e_cols:
            events.append(("L", col))
    return initial, events


def sweep_inv(dd: DecoratedDyckPath) -> DecoratedDyckPath:
    """Unique ddd preimage of a triangle path under sweep."""
    if dd.flavor != DDB_TRIANGLE:
        raise FlavorMismatch("sweep_inv applies to ddb_triangle paths")
    word = dd.word
    n = len(word)
    bounce_word, kinds, _, _ = _bounce_structure(word, dd.zval)
    c = {}
    z = {}
    for label, kind in zip(bounce_word, kinds):
        if kind == "V":
            c[label] = c.get(label, 0) + 1
        else:
            z[label] = z.get(label, 0) + 1
    initial, events = _image_events(dd)
    if initial != c.get(0, 0):
        raise NotInImage("initial run does not match the bounce word")
    # split events into value rounds
    rounds: list[list] = []
    cursor = 0
    value = 0
    while cursor < len(events):
        need = {
            "L": c.get(value, 0),
            "Z": z.get(value, 0),
            "V": c.get(value + 1, 0),
        }
        if need["L"] + need["Z"] + need["V"] == 0:
            raise NotInImage("leftover steps after the last round")
        batch = []
        while need["L"] + need["Z"] + need["V"] > 0:
            if cursor >= len(events):
                raise NotInImage("steps exhausted mid-round")
            kind, payload = events[cursor]
            if need[kind] == 0:
                raise NotInImage(f"unexpected {kind} event in round {value}")
            need[kind] -= 1
            batch.append((kind, payload))
            cursor += 1
        rounds.append(batch)
        value += 1
    # letters: (value, zero_valley?, identifying payloads)
    # a non-zv letter of value v is the k-th L of round v and (v >= 1) the
    # k-th V of round v-1; a zv letter of value v is the k-th Z of round v.
    streams = []
    for batch in rounds:
        streams.append(list(batch))
    n_rounds = len(streams)

    def front(ri):
        return streams[ri][0] if ri < n_rounds and streams[ri] else None

    # index letters by their event coordinates
    letters = []
    for v in range(n_rounds):
        kL = sum(1 for kind, _ in streams[v] if kind == "L")
        kZ = sum(1 for kind, _ in streams[v] if kind == "Z")
        for k in range(kL):
            letters.append({"value": v, "zv": False, "L": (v, k), "V": (v - 1, k)})
        for k in range(kZ):
            letters.append({"value": v, "zv": True, "Z": (v, k)})
    # merge greedily: a letter is placeable when its pending events sit at
    # the front of their rounds; the largest placeable value must go first.
    seen = {("L", v): 0 for v in range(n_rounds)}
    seen.update({("Z", v): 0 for v in range(n_rounds)})
    seen.update({("V", v): 0 for v in range(n_rounds)})

    def ready(letter):
        if letter["zv"]:
            v, k = letter["Z"]
            f = front(v)
            return f is not None and f[0] == "Z" and seen[("Z", v)] == k
        v, k = letter["L"]
        f = front(v)
        if f is None or f[0] != "L" or seen[("L", v)] != k:
            return False
        if letter["value"] == 0:
            return True
        w, kk = letter["V"]
        f = front(w)
        return f is not None and f[0] == "V" and seen[("V", w)] == kk

    placed = []
    payloads = []
    remaining = list(letters)
    last_value = None
    while remaining:
        candidates = []
        for letter in remaining:
            if not ready(letter):
                continue
            v = letter["value"]
            if last_value is None:
                if v == 0 and not letter["zv"]:
                    candidates.append(letter)
            elif letter["zv"]:
                if v <= last_value:
                    candidates.append(letter)
            elif v <= last_value + 1:
                candidates.append(letter)
        if not candidates:
            raise NotInImage("no letter can be placed next")
        letter = max(candidates, key=lambda l: l["value"])
        remaining.remove(letter)
        placed.append(letter)
        if letter["zv"]:
            v, _ = letter["Z"]
            kind, payload = streams[v].pop(0)
            seen[("Z", v)] += 1
            payloads.append({"Z": payload})
        else:
            v, _ = letter["L"]
            kind, payload = streams[v].pop(0)
            seen[("L", v)] += 1
            rec = {"L": payload}
            if letter["value"] >= 1:
                w, _ = letter["V"]
                kind, payload = streams[w].pop(0)
                seen[("V", w)] += 1
                rec["V"] = payload
            payloads.append(rec)
        last_value = letter["value"]
    if len(placed) != n:
        raise NotInImage("letter count does not match the path size")
    pre_word = tuple(l["value"] for l in placed)
    zval_pre = frozenset(
        i for i, l in enumerate(placed, start=1) if l["zv"]
    )
    # decorations
    col_to_pos = {}
    row_to_pos = {}
    for i, rec in enumerate(payloads, start=1):
        if "L" in rec:
            col_to_pos[rec["L"]] = i
        if "V" in rec:
            row_to_pos[rec["V"]] = i
    xs = columns(word)
    run_start_of_row = {}
    start = 1
    for r in range(1, n + 1):
        if r > 1 and xs[r - 1] != xs[r - 2]:
            start = r
        run_start_of_row[r] = start
    try:
        dpeak_pre = frozenset(col_to_pos[c_] for c_ in dd.drise)
        drise_pre = frozenset(
            row_to_pos[run_start_of_row[r]] for r in dd.dpeak
        )
    except KeyError as exc:
        raise NotInImage("decoration cannot be pulled back") from exc
    try:
        result = DecoratedDyckPath(pre_word, drise_pre, dpeak_pre, zval_pre, DDD)
    except (MalformedAreaWord, InvalidDecoration) as exc:
        raise NotInImage(str(exc)) from exc
    if sweep(result) != dd:
        raise NotInImage("forward map does not reproduce the input")
    return result


# -- zeta --------------------------------------------------------------


def zeta(P: ReducedPolyomino) -> ReducedPolyomino:
    """Image of a circ polyomino, sending (area, bounce) to (dinv, area)."""
    if P.flavor != CIRC:
        raise FlavorMismatch("zeta applies to circ polyominoes")
    word = P.word
    _, row_label, col_label = _bounce_labels(word)
    red, green = paths_from_word(word)
    # items identify rows and columns; their image letters come from the
    # projected bounce labels
    red_items = []
    row = col = 0
    for s in red:
        if s == "N":
            row += 1
            red_items.append(("row", row))
        else:
            col += 1
            red_items.append(("col", col))
    green_items = []
    row = col = 0
    for s in green:
        if s == "N":
            row += 1
            green_items.append(("row", row))
        else:
            col += 1
            green_items.append(("col", col))

    def label_of(item):
        kind, idx = item
        return row_label[idx] if kind == "row" else col_label[idx]

    max_value = max((l[0] for l in row_label.values()), default=0)
    max_value = max(
        max_value, max((l[0] for l in col_label.values()), default=0)
    )
    red_segments: dict[int, list] = {}
    for item in red_items:
        red_segments.setdefault(label_of(item)[0], []).append(item)
    # assemble: value-0 red segment first, then alternate green/red inserts
    out: list = [("art", 0)]
    out.extend(red_segments.get(0, []))
    green_by_segment: dict[int, list] = {}
    for item in green_items:
        v, barred = label_of(item)
        seg = v + 1 if barred else v
        green_by_segment.setdefault(seg, []).append(item)
    for value in range(max_value + 1):
        # insert the (value+1)-columns after their row anchors
        segment = green_by_segment.get(value + 1, ())
        anchor = None
        pending: list = []

        def flush(anchor, pending):
            if anchor is None or not pending:
                return
            idx = out.index(anchor)
            out[idx + 1 : idx + 1] = pending

        for item in segment:
            if item[0] == "row":
                flush(anchor, pending)
                anchor, pending = item, []
            else:
                pending.append(item)
        flush(anchor, pending)
        # insert the (value+1)-bar rows after their column anchors
        segment = red_segments.get(value + 1, ())
        anchor = None
        pending = []
        for item in segment:
            if item[0] == "col":
                flush(anchor, pending)
                anchor, pending = item, []
            else:
                pending.append(item)
        flush(anchor, pending)
    word_out = tuple(
        (0, False) if item[0] == "art" else label_of(item) for item in out
    )
    pos_rows = _barred_position_rows(word)
    pos_cols = _unbarred_position_cols(word)
    rv_rows = {pos_rows[pos] for pos in P.dec_rv}
    gp_cols = {pos_cols[pos] for pos in P.dec_gp}
    dec_br = frozenset(
        i for i, item in enumerate(out, start=1) if item[0] == "row" and item[1] in rv_rows
    )
    dec_ur = frozenset(
        i for i, item in enumerate(out, start=1) if item[0] == "col" and item[1] in gp_cols
    )
    return ReducedPolyomino(word_out, STAR, dec_ur=dec_ur, dec_br=dec_br)


def zeta_inv(Q: ReducedPolyomino) -> ReducedPolyomino:
    """Unique circ preimage of a star polyomino under zeta."""
    if Q.flavor != STAR:
        raise FlavorMismatch("zeta_inv applies to star polyominoes")
    word = Q.word
    max_value = max(l[0] for l in word)
    red = []
    for v in range(max_value + 1):
        for i, l in enumerate(word):
            if i == 0:
                continue
            if l[0] == v:
                red.append("N" if l[1] else "E")
    green = ["E"] * sum(1 for l in word[1:] if l == (0, False))
    for v in range(1, max_value + 2):
        for i, l in enumerate(word):
            if i == 0:
                continue
            if l == (v - 1, True):
                green.append("N")
            elif l == (v, False):
                green.append("E")
    try:
        pre_word = word_from_paths("".join(red), "".join(green))
    except MalformedAreaWord as exc:
        raise NotInImage(str(exc)) from exc
    # the value-class walk of the image retraces the red path, so its k-th
    # barred letter is row k and its c-th unbarred letter is column c
    pos_to_row = {}
    pos_to_col = {}
    row = col = 0
    for v in range(max_value + 1):
        for i, l in enumerate(word):
            if i == 0 or l[0] != v:
                continue
            if l[1]:
                row += 1
                pos_to_row[i + 1] = row
            else:
                col += 1
                pos_to_col[i + 1] = col
    rows_dec = {pos_to_row[pos] for pos in Q.dec_br}
    cols_dec = {pos_to_col[pos] for pos in Q.dec_ur}
    pre_rows = _barred_position_rows(pre_word)
    pre_cols = _unbarred_position_cols(pre_word)
    dec_rv = frozenset(pos for pos, row in pre_rows.items() if row in rows_dec)
    dec_gp = frozenset(pos for pos, col in pre_cols.items() if col in cols_dec)
    try:
        result = ReducedPolyomino(pre_word, CIRC, dec_gp=dec_gp, dec_rv=dec_rv)
    except (MalformedAreaWord, InvalidDecoration) as exc:
        raise NotInImage(str(exc)) from exc
    if zeta(result) != Q:
        raise NotInImage("forward map does not reproduce the input")
    return result


# -- polyomino <-> path ------------------------------------------------


def poly_to_dyck(P: ReducedPolyomino) -> DecoratedDyckPath:
    """Statistics-preserving image of a star polyomino as a ddd path."""
    if P.flavor != STAR:
        raise FlavorMismatch("poly_to_dyck applies to star polyominoes")
    word = P.word
    deleted = P.dec_br
    keep = [i for i in range(1, len(word) + 1) if i not in deleted]
    new_pos = {old: new for new, old in enumerate(keep, start=1)}
    image_word = tuple(word[i - 1][0] for i in keep)
    zval = frozenset(new_pos[i] for i in keep if word[i - 1][1])
    drise = frozenset(new_pos[i] for i in P.dec_ur)
    exceptions = {new_pos[i - 1] for i in deleted}
    dpeak = frozenset(peaks(image_word)) - zval - exceptions
    return DecoratedDyckPath(image_word, drise, dpeak, zval, DDD)


def dyck_to_poly(D: DecoratedDyckPath) -> ReducedPolyomino:
    """Unique star preimage of a ddd path under poly_to_dyck."""
    if D.flavor != DDD:
        raise FlavorMismatch("dyck_to_poly applies to ddd paths")
    w = D.word
    out: list[tuple[int, bool]] = []
    dec_br = set()
    dec_ur = set()
    for i in range(1, len(w) + 1):
        out.append((w[i - 1], i in D.zval))
        if i in D.drise:
            dec_ur.add(len(out))
        if i not in D.zval and i not in D.dpeak:
            out.append((w[i - 1], True))
            dec_br.add(len(out))
    try:
        result = ReducedPolyomino(
            tuple(out), STAR, dec_ur=frozenset(dec_ur), dec_br=frozenset(dec_br)
        )
    except (MalformedAreaWord, InvalidDecoration) as exc:
        raise NotInImage(str(exc)) from exc
    if poly_to_dyck(result) != D:
        raise NotInImage("forward map does not reproduce the input")
    return result
