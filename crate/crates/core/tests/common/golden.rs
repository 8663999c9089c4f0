//! Published variable-count tables. Rows of the `d`-indexed tables start at
//! the column `p + q = d` (Gelfand–Tsetlin and dimension counts) or at the
//! first printed column (full symmetry).

#![allow(dead_code)]

pub const GT: &[(usize, &[u128])] = &[
    (2, &[2, 3, 6, 10, 20, 35, 70, 126, 252]),
    (3, &[4, 9, 21, 51, 127, 323, 835, 2188]),
    (4, &[10, 25, 70, 196, 588, 1764, 5544]),
    (5, &[26, 75, 225, 715, 2347, 7990]),
    (6, &[76, 231, 756, 2556, 9096]),
    (7, &[232, 763, 2611, 9415]),
    (8, &[764, 2619, 9486]),
    (9, &[2620, 9495]),
    (10, &[9496]),
];

pub const DIMENSION: &[(usize, &[u128])] = &[
    (2, &[2, 5, 14, 42, 132, 429, 1430, 4862, 16796]),
    (3, &[6, 23, 103, 513, 2761, 15767, 94359, 586590]),
    (4, &[24, 119, 694, 4582, 33324, 261808, 2190688]),
    (5, &[120, 719, 5003, 39429, 344837, 3291590]),
    (6, &[720, 5039, 40270, 361302, 3587916]),
    (7, &[5040, 40319, 362815, 3626197]),
    (8, &[40320, 362879, 3628718]),
    (9, &[362880, 3628799]),
    (10, &[3628800]),
];

/// Column shapes of the full-symmetry table.
pub const FULL_COLUMNS: &[(usize, usize)] = &[
    (1, 1),
    (1, 2),
    (1, 3),
    (2, 2),
    (1, 4),
    (2, 3),
    (1, 5),
    (2, 4),
    (3, 3),
    (1, 6),
    (2, 5),
    (3, 4),
    (1, 7),
    (2, 6),
    (3, 5),
    (4, 4),
    (1, 8),
    (2, 7),
    (3, 6),
    (4, 5),
    (1, 9),
    (2, 8),
    (3, 7),
    (4, 6),
    (5, 5),
];

/// `(d, index of the first printed column, values)`.
pub const FULL: &[(usize, usize, &[u128])] = &[
    (2, 0, &[2, 2, 3, 3, 3, 3, 4, 4, 4, 4, 4, 4, 5, 5, 5, 5, 5, 5, 5, 5, 6, 6, 6, 6, 6]),
    (3, 0, &[2, 3, 4, 5, 6, 6, 7, 8, 8, 9, 10, 10, 11, 12, 12, 13, 13, 14, 15, 15, 15, 17, 17, 18, 18]),
    (4, 0, &[2, 3, 5, 6, 7, 8, 10, 12, 12, 13, 15, 16, 17, 21, 21, 23, 21, 25, 27, 28, 27, 32, 34, 37, 36]),
    (5, 0, &[2, 3, 5, 6, 8, 9, 11, 14, 14, 16, 19, 21, 21, 27, 28, 31, 28, 35, 39, 41, 36, 46, 50, 56, 54]),
    (6, 6, &[12, 15, 15, 17, 21, 23, 24, 31, 33, 37, 32, 41, 47, 50, 43, 57, 63, 72, 70]),
    (7, 9, &[18, 22, 24, 25, 33, 35, 39, 35, 45, 52, 56, 47, 63, 71, 82, 80]),
    (8, 12, &[26, 34, 36, 40, 36, 47, 54, 58, 50, 67, 76, 88, 86]),
    (9, 16, &[37, 48, 55, 59, 51, 69, 78, 90, 88]),
    (10, 20, &[52, 70, 79, 91, 89]),
];

/// `((p, q), values for d = 2..=p+q)`.
pub const SPSQ: &[((usize, usize), &[u128])] = &[
    ((1, 1), &[2]),
    ((1, 2), &[3, 4]),
    ((1, 3), &[4, 6, 7]),
    ((2, 2), &[6, 9, 10]),
    ((1, 4), &[5, 9, 11, 12]),
    ((2, 3), &[7, 14, 17, 18]),
    ((1, 5), &[6, 12, 16, 18, 19]),
    ((2, 4), &[10, 22, 30, 33, 34]),
    ((3, 3), &[10, 25, 34, 37, 38]),
    ((1, 6), &[7, 16, 23, 27, 29, 30]),
    ((2, 5), &[11, 30, 44, 52, 55, 56]),
    ((3, 4), &[13, 39, 60, 70, 73, 74]),
    ((1, 7), &[8, 20, 31, 38, 42, 44, 45]),
    ((2, 6), &[14, 41, 67, 82, 90, 93, 94]),
    ((3, 5), &[16, 56, 96, 119, 129, 132, 133]),
    ((4, 4), &[19, 66, 116, 143, 154, 157, 158]),
    ((1, 8), &[9, 25, 41, 53, 60, 64, 66, 67]),
    ((2, 7), &[15, 52, 91, 119, 134, 142, 145, 146]),
    ((3, 6), &[19, 79, 148, 195, 219, 229, 232, 233]),
    ((4, 5), &[22, 97, 189, 253, 282, 293, 296, 297]),
    ((1, 9), &[10, 30, 53, 71, 83, 90, 94, 96, 97]),
    ((2, 8), &[18, 66, 126, 172, 201, 216, 224, 227, 228]),
    ((3, 7), &[22, 102, 213, 298, 347, 371, 381, 384, 385]),
    ((4, 6), &[28, 139, 306, 434, 505, 535, 546, 549, 550]),
    ((5, 5), &[28, 149, 332, 478, 556, 587, 598, 601, 602]),
];
