"""The published coefficient table: rows (scale) * h_i at q^0 .. q^6, i = 0..9."""
from __future__ import annotations

from fractions import Fraction

from .ramanujan import TABLE_ROW_SCALES
from .report import Check

ROW_LABELS = (
    "(1/24) h0", "(-1/750) h1", "(-1/50) h2", "(-1/5) h3", "-h4",
    "(1/125) h5", "(1/25) h6", "(1/125) h7", "(1/10) h8", "(1/10) h9",
)

_ROWS = (
    ("1/120", 1, 175, 117625, 111784375, 126958105626, 160715581780591),
    ("1/30", 3, 930, 566375, 526770000, 592132503858, 745012928951258),
    ("7/10", 107, 50390, 29007975, 26014527500, 28743493632402, 35790559257796542),
    ("6/5", 71, 188330, 100324275, 86097977000, 93009679497426, 114266677893238146),
    (0, -1, 170, 41475, 32183000, 32678171250, 38612049889554),
    ("-1/125", 15, 938, 587805, 525369650, 577718296190, 716515428667010),
    ("-3/5", 187, 28760, 16677425, 15028305250, 16597280453022, 20644227272244012),
    ("-1/5", 13, 2860, 1855775, 1750773750, 1981335668498, 2502724752660128),
    ("-1/50", 13, 6425, 6744325, 8719953625, 12525150549888, 19171976431076873),
    ("-1/10", 17, 11185, 12261425, 16166719625, 23478405649152, 36191848368238417),
)

TABLE: tuple[tuple[Fraction, ...], ...] = tuple(tuple(Fraction(x) for x in row) for row in _ROWS)
TABLE_ORDER = 6


def compare_table(rows_scaled: list[list[Fraction]]) -> list[Check]:
    """One check per row; ``rows_scaled`` are the table-scaled rows h_0..h_9."""
    out = []
    for i, (label, expected) in enumerate(zip(ROW_LABELS, TABLE)):
        got = tuple(rows_scaled[i][: TABLE_ORDER + 1])
        if len(got) <= TABLE_ORDER:
            out.append(Check.exact(f"table row {label}", False, f"only {len(got)} coefficients"))
            continue
        bad = next((n for n in range(TABLE_ORDER + 1) if got[n] != expected[n]), None)
        detail = "q^0..q^6" if bad is None else f"q^{bad}: {got[bad]} vs {expected[bad]}"
        out.append(Check.exact(f"table row {label}", bad is None, detail))
    return out


def unscaled_table() -> tuple[tuple[Fraction, ...], ...]:
    """The table divided by its row scalings, i.e. the raw coefficients h_{i,n}."""
    return tuple(tuple(c / k for c in row) for row, k in zip(TABLE, TABLE_ROW_SCALES))
