"""Published cost tables used as golden references.

Cells are strings in the source notation: plain integers, ``2^e`` or
``m*2^e``.  Table ids follow the numbering used by the CLI
(``estimate table --id N``); table 13 has a partial-key-guessing part
(``13a``) and a remaining-key-search part (``13b``).  Each row is keyed by a
label and carries the eleven cost columns in ``TABLE_COLUMNS`` order.
"""

from __future__ import annotations

from dataclasses import dataclass

from .analysis import TABLE_COLUMNS


@dataclass(frozen=True)
class PublishedRow:
    label: str
    cells: tuple[str, ...]
    extra: dict | None = None

    def __post_init__(self) -> None:
        if len(self.cells) != len(TABLE_COLUMNS):
            raise ValueError(f"row {self.label!r} has {len(self.cells)} cells")

    def as_dict(self) -> dict[str, str]:
        return dict(zip(TABLE_COLUMNS, self.cells))


def _row(label: str, text: str, **extra) -> PublishedRow:
    return PublishedRow(label, tuple(text.split()), extra or None)


TABLES: dict[str, dict] = {
    "4": {
        "title": "SIMON32/64 encryption circuit",
        "rows": [
            _row("32", "448 2816 3584 0 1024 512 8384 3584 288 1024 96"),
            _row("19", "240 1568 2128 0 608 304 4848 2128 171 608 96"),
        ],
    },
    "5": {
        "title": "master-key search iterator, SIMON32/64",
        "rows": [
            _row("32", "896 9728 23723 128 6778 3389 44642 23723 1527 5318 255"),
            _row("19", "480 5568 14987 128 4282 2141 27586 14987 1293 4434 255"),
        ],
    },
    "6": {
        "title": "master-key search, SIMON32/64, all iterations",
        "rows": [
            _row("32", "1.41*2^41 1.87*2^44 1.15*2^46 1.62*2^38 1.32*2^44 1.32*2^43 "
                       "1.07*2^47 1.15*2^46 1.15*2^42 2^44 255"),
            _row("19", "1.52*2^40 1.07*2^44 1.41*2^45 1.62*2^38 1.62*2^43 1.62*2^42 "
                       "1.32*2^46 1.41*2^45 2^42 1.74*2^43 255"),
        ],
    },
    "8": {
        "title": "partial key guessing iterator, SIMON32/64",
        "rows": [
            _row("1", "0 488 2667 50 762 381 4348 2667 591 2000 209"),
            _row("all", "0 1.62*2^15 2^18 1.23*2^12 1.15*2^16 1.15*2^15 1.62*2^18 1.52*2^18 "
                        "1.74*2^15 1.52*2^17 209"),
        ],
    },
    "9": {
        "title": "remaining key search iterator, SIMON32/64",
        "rows": [
            _row("1", "480 3392 10262 78 2932 1466 18610 10262 1092 3718 191"),
            _row("all", "1.15*2^36 2^39 1.52*2^40 1.41*2^33 1.74*2^38 1.74*2^37 1.32*2^41 "
                        "1.52*2^40 1.23*2^37 1.07*2^39 191"),
        ],
    },
    "10": {
        "title": "master-key search vs round-key recovery, SIMON32/64",
        "rows": [
            _row("QMKS", "1.52*2^40 1.07*2^44 1.41*2^45 1.62*2^38 1.62*2^43 1.62*2^42 "
                         "1.32*2^46 1.41*2^45 2^42 1.74*2^43 255"),
            _row("QRKR-phase1", "0 1.62*2^17 2^20 1.23*2^14 1.15*2^18 1.15*2^17 1.62*2^20 "
                                "1.52*2^20 1.23*2^39 1.07*2^41 209"),
            _row("QRKR-phase2", "1.15*2^36 2^39 1.52*2^40 1.41*2^33 1.74*2^38 1.74*2^37 "
                                "1.15*2^41 1.52*2^40 1.23*2^37 1.07*2^39 191"),
        ],
    },
    "11": {
        "title": "SIMON48 and SIMON64 encryption circuits",
        "rows": [
            _row("SIMON48/72:36", "792 3312 6048 0 1728 864 12744 6048 432 1512 120"),
            _row("SIMON48/72:19", "384 1680 3192 0 912 456 6624 3192 228 798 120"),
            _row("SIMON48/96:36", "768 4800 6048 0 1728 864 14208 6048 432 1512 144"),
            _row("SIMON48/96:19", "360 2352 3192 0 912 456 7272 3192 228 798 144"),
            _row("SIMON64/96:42", "1248 5184 9408 0 2688 1344 19872 9408 630 2184 160"),
            _row("SIMON64/96:26", "736 3136 5824 0 1664 832 12192 5824 390 1352 160"),
            _row("SIMON64/128:44", "1216 7396 9856 0 2816 1408 22692 9856 630 2184 192"),
            _row("SIMON64/128:26", "704 4480 6654 0 1664 832 8184 3192 390 1352 192"),
        ],
    },
    "12": {
        "title": "master-key search, SIMON48 and SIMON64, all iterations",
        "rows": [
            _row("SIMON48/72:36", "1.23*2^46 1.23*2^49 1.23*2^50 1.74*2^42 1.41*2^48 1.41*2^47 "
                                  "1.23*2^53 1.23*2^50 1.41*2^46 1.23*2^48 263"),
            _row("SIMON48/72:19", "1.15*2^46 1.32*2^48 1.41*2^49 1.74*2^42 1.62*2^47 1.62*2^46 "
                                  "1.41*2^50 1.41*2^49 1.15*2^46 1.87*2^47 263"),
            _row("SIMON48/96:36", "1.15*2^58 1.41*2^62 1.74*2^62 1.15*2^55 2^61 2^59 "
                                  "2^64 1.74*2^62 1.74*2^58 1.52*2^60 383"),
            _row("SIMON48/96:19", "1.15*2^58 1.32*2^61 1.07*2^62 1.15*2^55 1.23*2^60 1.23*2^59 "
                                  "1.15*2^63 1.07*2^62 1.41*2^58 1.23*2^60 383"),
            _row("SIMON64/96:42", "1.87*2^58 2^62 2^63 1.15*2^55 1.15*2^61 1.15*2^60 "
                                  "2^64 2^63 1.23*2^60 1.41*2^60 351"),
            _row("SIMON64/96:26", "1.15*2^59 2^62 1.23*2^62 1.15*2^55 1.41*2^60 1.41*2^59 "
                                  "1.52*2^63 1.23*2^62 1.62*2^58 1.41*2^60 351"),
            _row("SIMON64/128:44", "1.87*2^74 1.07*2^79 1.52*2^79 1.62*2^71 1.77*2^76 1.74*2^76 "
                                   "1.62*2^80 1.52*2^79 1.23*2^75 2^77 511"),
            _row("SIMON64/128:26", "1.62*2^75 1.32*2^78 1.87*2^78 1.62*2^71 1.07*2^77 1.07*2^76 "
                                   "1.07*2^80 1.87*2^78 2^75 1.74*2^76 511"),
        ],
    },
    "13a": {
        "title": "partial key guessing, SIMON48 and SIMON64, all runs",
        "rows": [
            _row("SIMON48/72", "0 1.62*2^20 1.87*2^22 1.07*2^17 1.07*2^21 1.07*2^20 1.52*2^23 "
                               "1.87*2^22 1.23*2^45 1.07*2^47 347"),
            _row("SIMON48/96", "0 1.62*2^20 1.87*2^22 1.07*2^17 1.07*2^21 1.07*2^20 1.52*2^23 "
                               "1.87*2^22 1.23*2^45 1.07*2^47 347"),
            _row("SIMON64/96", "0 1.23*2^24 1.41*2^26 1.87*2^20 1.62*2^24 1.62*2^23 1.23*2^27 "
                               "1.41*2^26 1.74*2^73 1.62*2^74 487"),
            _row("SIMON64/128", "0 1.23*2^24 1.41*2^26 1.87*2^20 1.62*2^24 1.62*2^23 1.23*2^27 "
                                "1.41*2^26 1.74*2^73 1.62*2^74 487"),
        ],
    },
    "13b": {
        "title": "remaining key search, SIMON48 and SIMON64, all iterations",
        "rows": [
            _row("SIMON48/72", "1.07*2^43 1.23*2^45 1.32*2^46 1.87*2^38 1.52*2^44 1.52*2^43 "
                               "1.32*2^47 1.32*2^46 1.07*2^43 1.74*2^44 263"),
            _row("SIMON48/96", "2^55 1.74*2^57 1.41*2^58 1.52*2^51 1.62*2^55 1.87*2^56 "
                               "1.52*2^59 1.41*2^58 1.15*2^55 2^57 287"),
            _row("SIMON64/96", "1.07*2^57 1.15*2^59 1.32*2^59 2^52 1.32*2^58 1.32*2^57 "
                               "1.87*2^60 1.23*2^61 1.52*2^56 1.32*2^58 351"),
            _row("SIMON64/128", "1.23*2^73 1.62*2^75 1.23*2^76 1.74*2^68 1.41*2^74 1.41*2^73 "
                                "1.32*2^77 1.23*2^76 1.62*2^72 1.41*2^74 368"),
        ],
    },
}

# Summary comparison: encryption complexity (log2) and the five circuit columns.
SUMMARY_COLUMNS = ("ec_log2", "cliff", "t", "t_depth", "full_depth", "qubits")
SUMMARY: dict[tuple[str, str], tuple[str, ...]] = {
    ("SIMON32/64", "QMKS"): ("32.6", "1.32*2^46", "1.41*2^45", "2^42", "1.74*2^43", "255"),
    ("SIMON32/64", "QRKR"): ("31.1", "1.15*2^41", "1.52*2^40", "1.52*2^39", "1.32*2^41", "400"),
    ("SIMON48/72", "QMKS"): ("36.6", "1.41*2^50", "1.41*2^49", "1.15*2^46", "1.87*2^47", "263"),
    ("SIMON48/72", "QRKR"): ("34.8", "1.32*2^47", "1.32*2^46", "1.52*2^45", "1.32*2^47", "610"),
    ("SIMON48/96", "QMKS"): ("48.6", "1.15*2^63", "1.07*2^62", "1.41*2^58", "1.23*2^60", "383"),
    ("SIMON48/96", "QRKR"): ("45.6", "1.52*2^59", "1.41*2^58", "1.15*2^55", "2^57", "634"),
    ("SIMON64/96", "QMKS"): ("48.6", "1.52*2^63", "1.23*2^62", "1.62*2^58", "1.41*2^60", "351"),
    ("SIMON64/96", "QRKR"): ("60.5", "1.87*2^60", "1.23*2^61", "1.74*2^73", "1.62*2^74", "838"),
    ("SIMON64/128", "QMKS"): ("64.6", "1.07*2^80", "1.87*2^78", "2^75", "1.74*2^76", "511"),
    ("SIMON64/128", "QRKR"): ("62.8", "1.32*2^77", "1.23*2^76", "1.23*2^74", "1.52*2^75", "855"),
}

# Figures quoted in the text rather than in a table.
H_CIRCUIT = {"cnot": 244, "toffoli": 103, "t_depth": 33, "full_depth": 124}
DISTINCT_CANDIDATES_LOG2 = {"SIMON32/64": 22.8, "SIMON48/72": 23.8, "SIMON64/96": 47.8}
COMBINED_CANDIDATES_LOG2 = {"before": 33.0, "after": 30.2}

# Cells of the exact-reproduction targets that the built circuits do not hit,
# keyed by (table, row, column).  Each names the open question that covers it;
# the acceptance check requires this set to equal the set of mismatching cells.
_H_GAP = ("h-circuit gap: the built h uses 102 Toffolis, 196 CNOTs, T-depth 30, full depth 113; "
          "the published gate-level breakdown is not given")
_LADDER_DEPTH = ("full depth: the published value charges the combined 2(32+57)-3 ladder at 10 "
                 "layers per Toffoli, which the master-key search row does not do")
OPEN_QUESTION_CELLS: dict[tuple[str, str, str], str] = {
    ("h", "D2", "cnot"): _H_GAP,
    ("h", "D2", "toffoli"): _H_GAP,
    ("h", "D2", "t_depth"): _H_GAP,
    ("h", "D2", "full_depth"): _H_GAP,
    ("8", "1", "cnot"): _H_GAP + " (2 x 48 CNOTs)",
    ("8", "1", "toff_c"): _H_GAP + " (2 x 1 Toffoli)",
    ("8", "1", "toff_h"): _H_GAP + " (2 x 1 Toffoli)",
    ("8", "1", "toff_s"): _H_GAP + " (2 x 1 Toffoli)",
    ("8", "1", "t"): _H_GAP + " (2 x 1 Toffoli)",
    ("8", "1", "cliff"): _H_GAP + " (sum of the above)",
    ("8", "1", "t_depth"): _H_GAP + " (2 x 3 T layers)",
    ("8", "1", "full_depth"): _H_GAP + " (2 x 11 layers); " + _LADDER_DEPTH + " (30 layers)",
    ("9", "1", "cnot"): ("remaining-key search CNOTs: the published 3392 is 4352 minus one 15-step key "
                         "expansion (960), while its NOT column counts both expansions"),
    ("9", "1", "h"): ("remaining-key search H: the published 78 is 2 x 39, H on the candidate bits; "
                      "the built iterator prepares candidates with C and puts H on the 25 free bits"),
    ("9", "1", "cliff"): "remaining-key search Cliff: follows the CNOT and H cells",
    ("9", "1", "full_depth"): ("remaining-key search full depth: built 3754 from the fenced schedule; "
                               "the published 3718 has no itemization"),
}
