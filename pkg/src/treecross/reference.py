"""Frozen ground-truth fixtures for the regression suite.

REFERENCE_COUNTS holds the exact crossing-count distributions of labelled
trees on n <= 10 points in convex position (counts for k = 0, 1, 2, ...).
Every row is reproduced independently by the enumeration suite
(`treecross verify --suite tables`), which is what makes these fixtures
trustworthy rather than merely copied.

The tabulated source of the two moment rows contains one error:
its n=9 mean reads 56/7, while both the closed form and exhaustive
enumeration give 56/9.  REFERENCE_MEANS keeps the corrected value and
TABULATED_MEAN_DEVIATIONS records the discrepancy so the verify suite can
surface it as a documented deviation instead of silently patching it.
"""

from fractions import Fraction

REFERENCE_COUNTS: dict[int, tuple[int, ...]] = {
    1: (1,),
    2: (1,),
    3: (3,),
    4: (12, 4),
    5: (55, 45, 20, 5),
    6: (273, 378, 321, 204, 78, 36, 6),
    7: (1428, 2856, 3535, 3430, 2415, 1659, 847, 385, 203, 42, 7),
    8: (7752, 20520, 33216, 42408, 41936, 38192, 29048, 20280, 13696, 7752,
        4048, 2016, 960, 248, 64, 8),
    9: (43263, 143451, 286308, 448371, 560124, 629019, 613413, 549162, 462285,
        356193, 257121, 176040, 115740, 67563, 38538, 19863, 10323, 4275,
        1386, 450, 72, 9),
    10: (246675, 986700, 2339450, 4314890, 6440875, 8531520, 9974515,
         10686500, 10686395, 9966550, 8771495, 7339860, 5890895, 4463120,
         3265750, 2269070, 1534005, 982890, 592545, 345720, 190395, 100350,
         49115, 20040, 7480, 2570, 520, 100, 10),
}

REFERENCE_MEANS: dict[int, Fraction] = {
    1: Fraction(0),
    2: Fraction(0),
    3: Fraction(0),
    4: Fraction(1, 4),
    5: Fraction(4, 5),
    6: Fraction(5, 3),
    7: Fraction(20, 7),
    8: Fraction(35, 8),
    9: Fraction(56, 9),
    10: Fraction(42, 5),
}

REFERENCE_SECOND_MOMENTS: dict[int, Fraction] = {
    1: Fraction(0),
    2: Fraction(0),
    3: Fraction(0),
    4: Fraction(1, 4),
    5: Fraction(34, 25),
    6: Fraction(977, 216),
    7: Fraction(3968, 343),
    8: Fraction(12789, 512),
    9: Fraction(34916, 729),
    10: Fraction(42063, 500),
}

# n -> (value exactly as tabulated, corrected value); resolved by
# enumeration.  The tabulated form is kept verbatim (unreduced) because the
# transcription itself is the deviation being documented.
TABULATED_MEAN_DEVIATIONS: dict[int, tuple[str, Fraction]] = {
    9: ("56/7", Fraction(56, 9)),
}

# Laurent coefficients of the exact second moment, exponent -> coefficient;
# recovering these (with a zero n^-4 term) from the n = 2..10 values is the
# fit-recovery regression check.
SECOND_MOMENT_COEFFICIENTS: dict[int, Fraction] = {
    4: Fraction(1, 36),
    3: Fraction(-14, 45),
    2: Fraction(553, 360),
    1: Fraction(-305, 72),
    0: Fraction(491, 72),
    -1: Fraction(-2323, 360),
    -2: Fraction(217, 60),
    -3: Fraction(-1),
    -4: Fraction(0),
}
