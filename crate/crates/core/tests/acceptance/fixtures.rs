//! Published tables, transcribed.

/// phi(n) for n = 1..=69.
pub const TOTIENT_1_TO_69: [u64; 69] = [
    1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4, 12, 6, 8, 8, 16, 6, 18, 8, 12, //
    10, 22, 8, 20, 12, 18, 12, 28, 8, 30, 16, 20, 16, 24, 12, 36, 18, //
    24, 16, 40, 12, 42, 20, 24, 22, 46, 16, 42, 20, 32, 24, 52, 18, //
    40, 24, 36, 28, 58, 16, 60, 30, 36, 32, 48, 20, 66, 32, 44,
];

/// Partition of 1..=104 by the Möbius function.
pub const MOBIUS_MINUS_ONE: &[u64] = &[
    2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 30, 31, 37, 41, 42, 43, 47, 53, 59, 61, 66, 67, 70, 71, 73, 78, 79, 83, 89, 97,
    101, 102, 103,
];
pub const MOBIUS_PLUS_ONE: &[u64] = &[
    1, 6, 10, 14, 15, 21, 22, 26, 33, 34, 35, 38, 39, 46, 51, 55, 57, 58, 62, 65, 69, 74, 77, 82, 85, 86, 87, 91, 93, 94,
    95,
];
pub const MOBIUS_ZERO: &[u64] = &[
    4, 8, 9, 12, 16, 18, 20, 24, 25, 27, 28, 32, 36, 40, 44, 45, 48, 49, 50, 52, 54, 56, 60, 63, 64, 68, 72, 75, 76, 80,
    81, 84, 88, 90, 92, 96, 98, 99, 100, 104,
];

/// Expanded cyclotomic polynomials.
pub const CP_TABLE: &[(u32, &str)] = &[
    (2, "1 + z^-1"),
    (3, "1 + z^-1 + z^-2"),
    (12, "1 - z^-2 + z^-4"),
    (15, "1 - z^-1 + z^-3 - z^-4 + z^-5 - z^-7 + z^-8"),
    (22, "1 - z^-1 + z^-2 - z^-3 + z^-4 - z^-5 + z^-6 - z^-7 + z^-8 - z^-9 + z^-10"),
    (27, "1 + z^-9 + z^-18"),
    (
        33,
        "1 - z^-1 + z^-3 - z^-4 + z^-6 - z^-7 + z^-9 - z^-10 + z^-11 - z^-13 + z^-14 - z^-16 + z^-17 - z^-19 + z^-20",
    ),
    (
        39,
        "1 - z^-1 + z^-3 - z^-4 + z^-6 - z^-7 + z^-9 - z^-10 + z^-12 - z^-14 + z^-15 - z^-17 + z^-18 - z^-20 + z^-21 \
         - z^-23 + z^-24",
    ),
    (
        51,
        "1 - z^-1 + z^-3 - z^-4 + z^-6 - z^-7 + z^-9 - z^-10 + z^-12 - z^-13 + z^-15 - z^-16 + z^-17 - z^-19 + z^-20 \
         - z^-22 + z^-23 - z^-25 + z^-26 - z^-28 + z^-29 - z^-31 + z^-32",
    ),
    (
        55,
        "1 - z^-1 + z^-5 - z^-6 + z^-10 - z^-12 + z^-15 - z^-17 + z^-20 - z^-23 + z^-25 - z^-28 + z^-30 - z^-34 \
         + z^-35 - z^-39 + z^-40",
    ),
    (
        57,
        "1 - z^-1 + z^-3 - z^-4 + z^-6 - z^-7 + z^-9 - z^-10 + z^-12 - z^-13 + z^-15 - z^-16 + z^-18 - z^-20 + z^-21 \
         - z^-23 + z^-24 - z^-26 + z^-27 - z^-29 + z^-30 - z^-32 + z^-33 - z^-35 + z^-36",
    ),
    (60, "1 + z^-2 - z^-6 - z^-8 - z^-10 + z^-14 + z^-16"),
];

/// Eligible CP sets for nu = 4.
pub const ELIGIBLE_D8: &[u32] = &[
    2, 4, 8, 9, 11, 15, 17, 18, 19, 21, 22, 25, 27, 29, 30, 31, 33, 34, 35, 36, 37, 38, 39, 41, 42, 43, 44, 45, 47, 49,
    50, 51, 53, 54, 55, 57, 58, 59, 60, 61, 62, 63, 64,
];
pub const ELIGIBLE_D16: &[u32] = &[
    2, 4, 8, 9, 11, 15, 16, 17, 18, 19, 21, 22, 25, 27, 29, 30, 31, 33, 34, 35, 36, 37, 38, 39, 41, 42, 43, 44, 45, 47,
    49, 50, 51, 53, 54, 55, 57, 58, 59, 60, 61, 62, 63, 65, 66, 67, 68, 69, 70, 71, 72, 73, 74, 75, 76, 77, 78, 79, 81,
    82, 83, 84, 85, 86, 87, 88, 89, 90, 91, 93, 94, 95, 97, 98, 99, 100, 101, 102, 103,
];
pub const ELIGIBLE_D32: &[u32] = &[
    2, 4, 8, 9, 11, 15, 16, 17, 18, 19, 21, 22, 25, 27, 29, 30, 31, 32, 33, 34, 35, 36, 37, 38, 39, 41, 42, 43, 44, 45,
    47, 49, 50, 51, 53, 54, 55, 57, 58, 59, 60, 61, 62, 63, 65, 66, 67, 68, 69, 70, 71, 72, 73, 74, 75, 76, 77, 78, 79,
    81, 82, 83, 84, 85, 86, 87, 88, 89, 90, 91, 93, 94, 95, 97, 98, 99, 100, 101, 102, 103,
];

/// Published designs: `(D, Rp, As, [(q, m)])`, all with nu = 4.
pub type Design = (u32, f64, f64, &'static [(u32, u32)]);

pub const DESIGNS: &[Design] = &[
    (8, 1.0, 40.0, &[(2, 1), (4, 1), (8, 2), (11, 1)]),
    (8, 1.0, 50.0, &[(2, 2), (4, 3), (8, 3)]),
    (8, 1.0, 60.0, &[(2, 2), (4, 3), (8, 3), (9, 1)]),
    (8, 2.0, 40.0, &[(4, 1), (8, 1), (11, 1), (17, 1)]),
    (8, 2.0, 50.0, &[(2, 1), (4, 2), (8, 2), (19, 1)]),
    (8, 2.0, 60.0, &[(2, 1), (4, 1), (8, 2), (11, 1), (17, 1)]),
    (16, 1.0, 40.0, &[(8, 1), (16, 1), (17, 1), (19, 1)]),
    (16, 1.0, 50.0, &[(11, 1), (16, 1), (17, 2)]),
    (16, 1.0, 60.0, &[(4, 1), (16, 1), (17, 3)]),
    (16, 2.0, 40.0, &[(16, 1), (29, 2)]),
    (16, 2.0, 50.0, &[(8, 1), (16, 1), (17, 1), (41, 1)]),
    (16, 2.0, 60.0, &[(16, 1), (17, 2), (37, 1)]),
    (32, 1.0, 40.0, &[(31, 2), (41, 1)]),
    (32, 1.0, 50.0, &[(25, 1), (31, 3)]),
    (32, 1.0, 60.0, &[(17, 4)]),
    (32, 2.0, 40.0, &[(31, 1), (53, 1), (67, 1)]),
    (32, 2.0, 50.0, &[(16, 1), (31, 2), (79, 1)]),
    (32, 2.0, 60.0, &[(17, 2), (37, 1), (67, 1)]),
];
