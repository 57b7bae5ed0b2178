#!/usr/bin/env python3
"""Regenerate the embedded data files in src/nfcert/data/.

The solution tables below are transcribed from the published source data.
Sign-linked rows ("+-") are stored once for the positive right-hand side and
mirrored here; every pair is re-substituted into its equation before anything
is written, so a transcription slip cannot survive a run of this script.
"""

from __future__ import annotations

import json
import pathlib
import sys

OUT = pathlib.Path(__file__).resolve().parents[1] / "src" / "nfcert" / "data"

# --------------------------------------------------------------------------
# defective Lucas terms, sporadic rows: values listed for the positive trace;
# the negative trace flips the sign of even-indexed terms.
SPORADIC = [
    {"A": 1, "B": 2, "defects": [[5, -1], [7, 7], [8, -3], [12, 45], [13, -1], [18, 85], [30, -24475]]},
    {"A": 1, "B": 4, "defects": [[5, 5], [12, -231]]},
    {"A": 1, "B": 3, "defects": [[5, 1], [12, 160]]},
    {"A": 1, "B": 5, "defects": [[7, 1], [12, -3024]]},
    {"A": 2, "B": 3, "defects": [[3, 1], [10, -22]]},
    {"A": 2, "B": 7, "defects": [[8, -40]]},
    {"A": 2, "B": 11, "defects": [[5, 5]]},
    {"A": 3, "B": 4, "defects": [[4, 3]]},
    {"A": 3, "B": 8, "defects": [[3, 1]]},
    {"A": 4, "B": 5, "defects": [[6, 44]]},
    {"A": 5, "B": 8, "defects": [[6, 85]]},
    {"A": 5, "B": 7, "defects": [[10, -3725]]},
]

# parametric families (documentation; the matching logic lives in lucas.py)
PARAMETRIC = [
    {"row": 1, "index": 3, "norm_shape": "p", "value": "-1", "constraint": "p = m^2 + 1"},
    {"row": 2, "index": 3, "norm_shape": "p^e", "value": "eps*3^r", "constraint": "p^e = m^2 - eps*3^r, 3 !| m, r > 0"},
    {"row": 3, "index": 3, "norm_shape": "-p^odd", "value": "3^r", "constraint": "p^odd + m^2 = 3^r, 3 !| m, r > 0"},
    {"row": 4, "index": 4, "norm_shape": "p^e", "value": "-+m", "constraint": "2p^e = m^2 + 1"},
    {"row": 5, "index": 4, "norm_shape": "p^e", "value": "+-2*eps*m", "constraint": "2p^e = m^2 - 2*eps"},
    {"row": 6, "index": 6, "norm_shape": "p^e", "value": "+-(-2)^r*m*(2m^2+(-2)^r)/3", "constraint": "3p^e = m^2 - (-2)^r, r > 0"},
    {"row": 7, "index": 6, "norm_shape": "-p^odd", "value": "+-(-2)^r*m*(2m^2+(-2)^r)/3", "constraint": "3p^odd + m^2 = 2^r, r > 0"},
    {"row": 8, "index": 6, "norm_shape": "p^odd", "value": "+-eps*m*(2m^2+3*eps)", "constraint": "3p^odd = m^2 - 3*eps"},
    {"row": 9, "index": 6, "norm_shape": "p^odd", "value": "+-2^(r+1)*eps*m*(m^2+3*eps*2^(r-1))", "constraint": "3p^odd = m^2 - 3*eps*2^r, r > 0"},
    {"row": 10, "index": 6, "norm_shape": "-p^odd", "value": "+-2^(r+1)*m*(m^2+3*2^(r-1))", "constraint": "3p^odd + m^2 = 3*2^r, r > 0"},
]

# --------------------------------------------------------------------------
# solutions of F_{d-1}(X, Y) = D.  "mirror": the row was published for +-D
# with sign-linked pairs; the -D row is obtained by negating both coordinates
# (valid exactly when (d-1)/2 is odd, which holds for every mirrored row).
F_CERTIFIED = [
    (7, 7, [(1, 4), (2, 1), (-3, -5)], True),
    (7, 13, [(3, 10), (2, 7), (3, 4), (4, 1), (3, 1), (-1, 1), (-2, -5), (-5, -8), (-7, -11)], True),
    (7, 29, [(-6, -1), (-5, -16), (-4, -7), (1, 5), (3, 2), (11, 17)], True),
    (11, 11, [(1, 4)], True),
    (19, 19, [(1, 4)], True),
    (23, 23, [(1, 4)], True),
    (31, 31, [(1, 4)], True),
    (11, 23, [(3, 2), (2, 1), (-2, -3)], True),
    (13, 13, [(-1, -4), (1, 4)], False),
    (13, -13, [], False),
    (17, 17, [(-1, -4), (1, 4)], False),
    (17, -17, [], False),
    (29, 29, [(-1, -4), (1, 4)], False),
    (29, -29, [], False),
    (37, 37, [(-1, -4), (1, 4)], False),
    (37, -37, [], False),
    (19, 37, [(-2, -5)], True),
]

F_GRH = [
    (7, 41, [(-3, -7), (-1, 2), (4, 5)], True),
    (41, 41, [(-1, -4), (1, 4)], False),
    (41, -41, [], False),
    (53, 53, [(-1, -4), (1, 4)], False),
    (53, -53, [], False),
    (61, 61, [(-1, -4), (1, 4)], False),
    (61, -61, [], False),
    (73, 73, [(-1, -4), (1, 4)], False),
    (73, -73, [], False),
    (89, 89, [(-1, -4), (1, 4)], False),
    (89, -89, [], False),
    (97, 97, [(-1, -4), (1, 4)], False),
    (97, -97, [], False),
    (23, 47, [], True),
    (13, 53, [], False),
    (29, 59, [], True),
    (31, 61, [], True),
    (17, -67, [], False),
    (37, 73, [], True),
    (13, -79, [], False),
    (41, 83, [], True),
    (7, 43, [(-3, -8), (-2, 1), (5, 7)], True),
    (11, 43, [(-3, -5), (2, 5)], True),
    (43, 43, [(1, 4)], True),
    (47, 47, [(1, 4)], True),
    (59, 59, [(1, 4)], True),
    (67, 67, [(1, 4)], True),
    (71, 71, [(1, 4)], True),
    (79, 79, [(1, 4)], True),
    (83, 83, [(1, 4)], True),
    (13, -53, [(-2, -3), (2, 3)], False),
    (17, 67, [(-2, -3), (2, 3)], False),
    (11, 67, [(-7, -12), (-3, -11), (-2, -7)], True),
    (7, 71, [(-16, -25), (-5, -9), (1, 6), (4, 3), (7, 23), (9, 2)], True),
    (13, 79, [(-2, -5), (2, 5)], False),
    (7, 83, [(-8, -13), (-7, -1), (-6, -19), (3, 11), (5, 2), (13, 20)], True),
    (11, 89, [(-1, 1)], True),
    (7, 97, [(-4, -11), (-3, 1), (7, 10)], True),
]

# --------------------------------------------------------------------------
# quartic curves y^4 + s*3*x^2*y^2 + x^4 = ell (s = -1 or +1); pairs (x, y)
# listed with "+-x" expanded here via the evenness of the form in x.
def _pm_x(pairs):
    out = []
    for x, y in pairs:
        out.append((x, y))
        out.append((-x, y))
    return out

C4 = [
    {"sign": -1, "ell": 5, "pairs": _pm_x([(1, -2), (2, -1), (2, 1), (1, 2)])},
    {"sign": -1, "ell": 31, "pairs": _pm_x([(3, -5), (5, -3), (5, 3), (3, 5)])},
    *[{"sign": -1, "ell": l, "pairs": []} for l in (11, 19, 29, 41, 59, 61, 71, 79, 89)],
    {"sign": -1, "ell": -11, "pairs": _pm_x([(2, -3), (3, -2), (3, 2), (2, 3)])},
    {"sign": -1, "ell": -79, "pairs": _pm_x([(5, -8), (8, -5), (8, 5), (5, 8)])},
    *[{"sign": -1, "ell": -l, "pairs": []} for l in (5, 19, 29, 31, 41, 59, 61, 71, 89)],
    {"sign": 1, "ell": 5, "pairs": _pm_x([(1, -1), (1, 1)])},
    {"sign": 1, "ell": 29, "pairs": _pm_x([(1, -2), (2, -1), (2, 1), (1, 2)])},
    *[{"sign": 1, "ell": l, "pairs": []} for l in (11, 19, 31, 41, 59, 61, 71, 79, 89)],
]

# quartic y^4 - 3*x*y^2 + x^2 = ell; pairs (x, +-y) expanded.
def _pm_y(pairs):
    out = []
    for x, y in pairs:
        out.append((x, y))
        out.append((x, -y))
    return out

W2Q = [
    {"ell": 11, "pairs": _pm_y([(-2, 1), (5, 1)])},
    {"ell": -19, "pairs": _pm_y([(5, 2), (7, 2)])},
    {"ell": 29, "pairs": _pm_y([(-4, 1), (-1, 2), (7, 1), (13, 2)])},
    {"ell": -31, "pairs": _pm_y([(7, 4), (19, 7), (41, 4), (128, 7)])},
    {"ell": 41, "pairs": _pm_y([(-5, 1), (5, 4), (8, 1), (43, 4)])},
    {"ell": 59, "pairs": _pm_y([(46, 11), (317, 11)])},
    {"ell": -61, "pairs": []},
    {"ell": 71, "pairs": _pm_y([(-7, 1), (10, 1), (202, 23), (1385, 23)])},
    {"ell": -79, "pairs": _pm_y([(11, 5), (25, 8), (64, 5), (167, 8)])},
    {"ell": 89, "pairs": _pm_y([(-8, 1), (8, 5), (11, 1), (67, 5)])},
]

# --------------------------------------------------------------------------
# claimed exclusion lists (reproduction targets) and witness values
def pm(*vals):
    out = []
    for v in vals:
        out.extend([v, -v])
    return out

CLAIMS = {
    "1.1-1": {
        "weight": 2,
        "torsion": 3,
        "unconditional": [5, -7, 11, -13, 17, 23, -25, 35, -37, -49, -55, 65, -73, 77, -85, -91, -97],
        "grh": [-43, 47, 53, 59, -61, -67, 71, -73, -79, 83, 89],
    },
    "1.1-2": {
        "weight": 2,
        "torsion": 5,
        "unconditional": [-11, -31, -41, -61, -71, -101],
        "grh": [],
    },
    "1.2-l1": {
        "weight": 3,
        "lambdas": ["1"],
        "unconditional": pm(1, 3) + [5] + pm(7, 9) + [11] + pm(13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39, 45) + [-49] + pm(51) + [-55] + pm(57, 63, 65, 69) + [-75] + pm(77, 85, 87, 91, 95, 99),
        "grh": pm(41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97),
    },
    "1.2-l8": {
        "weight": 3,
        "lambdas": ["8", "1/8"],
        "unconditional": pm(1, 3, 5, 7) + [-9, -11] + pm(13, 15, 17, 19, 21, 23, 25, 27, 29, 31, 33, 35, 37, 39, 45) + [-49] + pm(51, 55, 57, 63, 65) + [69] + pm(75, 77, 85, 87, 91, 95) + [-99],
        "grh": pm(41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97),
    },
    "1.2-l-4": {
        "weight": 3,
        "lambdas": ["-4", "-1/4"],
        "unconditional": pm(1, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23) + [-25] + pm(27, 29, 31, 33, 35, 37, 39) + [45] + pm(49, 51, 55, 57, 63, 65, 69, 75, 77, 85, 87, 91, 95, 99),
        "grh": pm(41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97),
    },
    "1.2-l-64": {
        "weight": 3,
        "lambdas": ["-64", "-1/64"],
        "unconditional": pm(1, 3, 5, 7) + [-9] + pm(11, 13, 15, 17, 19, 21, 23) + [-25] + pm(27, 29, 31, 33, 35, 37, 39, 45, 49, 51, 55, 57, 63, 65, 69) + [-75] + pm(77, 85, 87, 91, 95, 99),
        "grh": pm(41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97),
    },
    "1.3": {
        "weight": 3,
        "lambdas": ["all"],
        "unconditional": pm(1, 3) + [5, -7, -15] + pm(17, 19) + [21, -23, -27, -29] + pm(31) + [33, 37, -39, -51, 57, 69, -87],
        "grh": [-41] + pm(43) + [-47, -53, -59] + pm(67, 71) + [79, -83, -89] + pm(97),
    },
}

# Two published data points fail exact recomputation and are recorded as
# divergences rather than silently adopted:
#  * the 27^2 witness entry reads 55, but direct expansion and the Hecke
#    chain both give 559 (55 equals a(27)^2 - 27^2, the prime-square identity
#    applied at the composite 27); the corrected value is stored;
#  * the first lambda case excludes +25, but its expansion attains 25 at
#    n = 25 (a(5) = 0 at the inert prime 5 gives a(25) = 0 + 25), the same
#    configuration the witness notes use for a(7^2) = 49 and, in the third
#    case, for a(5^2) = 25;
#  * the fourth lambda case excludes -85, but its expansion attains -85 at
#    n = 121 (a(11) = -6 with chi(11) = +1 gives a(121) = 36 - 121).
KNOWN_DIVERGENCES = {
    "1.2-l1": [
        {
            "alpha": 25,
            "finding": "attained at n = 25: a(5) = 0 with chi(5) = -1 gives a(25) = 25",
        }
    ],
    "1.2-l-64": [
        {
            "alpha": -85,
            "finding": "attained at n = 121: a(11) = -6 with chi(11) = +1 gives a(121) = -85",
        }
    ],
}

WITNESSES = {
    "1": {"9": -5, "81": -11, "49": 49, "729": 559, "121": 75},
    "8": {"9": 9, "25": 11, "49": 49, "169": -69, "225": 99},
    "1/8": {"9": 9, "25": 11, "49": 49, "169": -69, "225": 99},
    "-4": {"25": 25, "49": -45},
    "-1/4": {"25": 25, "49": -45},
    "-64": {"9": 9, "25": 25, "1369": 75},
    "-1/64": {"9": 9, "25": 25, "1369": 75},
}
WITNESS_NOTES = {"1": {"729": {"published_value": 55, "computed_value": 559}}}


def eval_f(two_m: int, x: int, y: int) -> int:
    h0, h1 = 1, y - x
    for _ in range(2, two_m // 2 + 1):
        h0, h1 = h1, (y - 2 * x) * h1 - x * x * h0
    return h1 if two_m >= 2 else h0


def validate() -> list[dict]:
    f_rows = []
    for grh, rows in ((False, F_CERTIFIED), (True, F_GRH)):
        for d, big_d, pairs, mirror in rows:
            m = (d - 1) // 2
            for x, y in pairs:
                assert eval_f(d - 1, x, y) == big_d, (d, big_d, x, y)
            f_rows.append({"d": d, "D": big_d, "pairs": sorted(pairs), "grh": grh})
            if mirror:
                assert m % 2 == 1 or not pairs, (d, big_d)
                mirrored = sorted((-x, -y) for x, y in pairs)
                for x, y in mirrored:
                    assert eval_f(d - 1, x, y) == -big_d, (d, -big_d, x, y)
                f_rows.append({"d": d, "D": -big_d, "pairs": mirrored, "grh": grh})
    keys = [(r["d"], r["D"]) for r in f_rows]
    assert len(keys) == len(set(keys))

    for row in C4:
        s, ell = row["sign"], row["ell"]
        for x, y in row["pairs"]:
            assert y**4 + s * 3 * x * x * y * y + x**4 == ell, (s, ell, x, y)
        row["pairs"] = sorted(set(map(tuple, row["pairs"])))

    for row in W2Q:
        for x, y in row["pairs"]:
            assert y**4 - 3 * x * y * y + x * x == row["ell"], (row["ell"], x, y)
        row["pairs"] = sorted(set(map(tuple, row["pairs"])))

    # sporadic defect values re-substitute via the recurrence
    for row in SPORADIC:
        a, b = row["A"], row["B"]
        us = [1, a]
        for _ in range(3, 31):
            us.append(a * us[-1] - b * us[-2])
        for n, v in row["defects"]:
            assert us[n - 1] == v, (a, b, n, v, us[n - 1])
    return f_rows


def main() -> int:
    f_rows = validate()
    OUT.mkdir(parents=True, exist_ok=True)
    files = {
        "defect_sporadic.json": SPORADIC,
        "defect_parametric.json": PARAMETRIC,
        "f_solutions.json": f_rows,
        "c4_solutions.json": C4,
        "w2_quartic_solutions.json": W2Q,
        "claimed_exclusions.json": {"cases": CLAIMS, "known_divergences": KNOWN_DIVERGENCES},
        "remark_witnesses.json": {"values": WITNESSES, "notes": WITNESS_NOTES},
    }
    for name, payload in files.items():
        path = OUT / name
        path.write_text(json.dumps(payload, indent=1, sort_keys=True) + "\n", encoding="utf-8")
        print(f"wrote {path}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
