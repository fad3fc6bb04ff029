//! Reference data shared by the integration tests.
#![allow(dead_code)]

/// Parses a space separated list of sizes and sorts it.
pub fn sizes(s: &str) -> Vec<u64> {
    let mut v: Vec<u64> = s.split_whitespace().map(|x| x.parse().unwrap()).collect();
    v.sort_unstable();
    v
}

/// Orbit sizes on x² + y² + z² − 3xyz = k mod p under Dehn twists,
/// transpositions and double sign changes, origin included, as printed.
pub const LEVEL_COMPONENTS: &[(u64, u64, &str)] = &[
    (5, 0, "1 40"),
    (5, 1, "4 6 16"),
    (5, 2, "36"),
    (5, 3, "16"),
    (5, 4, "6"),
    (7, 0, "1 28"),
    (7, 1, "6 16"),
    (7, 2, "4 6 16 24"),
    (7, 3, "64"),
    (7, 4, "64"),
    (7, 5, "36"),
    (7, 6, "64"),
    (11, 0, "1 88"),
    (11, 1, "6 160"),
    (11, 2, "144"),
    (11, 3, "6 160"),
    (11, 4, "6 160"),
    (11, 5, "6 72"),
    (11, 6, "40 60"),
    (11, 7, "144"),
    (11, 8, "40 60"),
    (11, 9, "4 6 16 48 48"),
    (11, 10, "16 128"),
    (13, 0, "1 208"),
    (13, 1, "6 112"),
    (13, 2, "196"),
    (13, 3, "6 216"),
    (13, 4, "6 112"),
    (13, 5, "144"),
    (13, 6, "128 16"),
    (13, 7, "144"),
    (13, 8, "196"),
    (13, 9, "6 216"),
    (13, 10, "6 112"),
    (13, 11, "196"),
    (13, 12, "4 6 16 48 96"),
    (17, 0, "1 340"),
    (17, 1, "6 216"),
    (17, 2, "6 216"),
    (17, 3, "256"),
    (17, 4, "6 16 336"),
    (17, 5, "256"),
    (17, 6, "36 288"),
    (17, 7, "324"),
    (17, 8, "4 6 16 24 96 144"),
    (17, 9, "6 352"),
    (17, 10, "324"),
    (17, 11, "256"),
    (17, 12, "324"),
    (17, 13, "6 216"),
    (17, 14, "256"),
    (17, 15, "6 216"),
    (17, 16, "6 352"),
];

/// Printed cells whose sizes do not add up to the number of points, with the
/// sizes found by enumeration.
pub const MISPRINTED_LEVEL_CELLS: &[(u64, u64, &str)] = &[(7, 4, "6 72"), (11, 4, "6 72")];

/// Orbit sizes on x² + y² + z² = xyz + 4 mod p under Vieta moves,
/// transpositions and double sign changes.
pub const CAYLEY_WITH_SIGNS: &[(u64, &str)] = &[
    (5, "4 6 16"),
    (7, "4 6 16 24"),
    (11, "4 6 16 48 48"),
    (13, "4 6 16 48 96"),
    (17, "4 6 16 24 96 144"),
    (19, "4 6 16 48 144 144"),
    (23, "4 6 16 24 48 192 240"),
    (29, "4 6 16 48 96 288 384"),
    (31, "4 6 16 24 48 96 384 384"),
    (37, "4 6 16 48 144 432 720"),
    (41, "4 6 16 24 48 96 144 576 768"),
    (43, "4 6 16 96 240 720 768"),
    (47, "4 6 16 24 48 96 192 768 1056"),
    (53, "4 6 16 144 336 1008 1296"),
    (59, "4 6 16 48 48 144 384 1152 1680"),
    (61, "4 6 16 48 48 144 384 1152 1920"),
    (67, "4 6 16 240 576 1728 1920"),
    (71, "4 6 16 24 48 48 96 144 192 432 1728 2304"),
    (73, "4 6 16 24 48 144 192 432 1728 2736"),
    (79, "4 6 16 24 48 96 144 336 576 2304 2688"),
    (83, "4 6 16 48 96 288 768 2304 3360"),
    (89, "4 6 16 24 48 144 240 384 720 2880 3456"),
    (97, "4 6 16 24 48 96 96 192 384 768 3072 4704"),
    (101, "4 6 16 48 144 576 1200 3600 4608"),
    (103, "4 6 16 24 336 576 1008 4032 4608"),
    (107, "4 6 16 48 144 432 1296 3888 5616"),
    (109, "4 6 16 48 48 144 240 432 1296 3888 5760"),
    (113, "4 6 16 24 96 96 288 720 1152 4608 5760"),
    (127, "4 6 16 24 96 96 144 384 768 1536 6144 6912"),
    (131, "4 6 16 48 48 240 336 720 1920 5760 8064"),
    (137, "4 6 16 24 576 1056 1728 6912 8448"),
    (139, "4 6 16 48 96 144 288 1056 2304 6912 8448"),
    (149, "4 6 16 48 384 1200 2736 8208 9600"),
    (151, "4 6 16 24 48 384 720 1200 2160 8640 9600"),
    (157, "4 6 16 48 336 1008 2688 8064 12480"),
    (163, "4 6 16 144 1296 3360 10080 11664"),
    (167, "4 6 16 24 48 96 192 288 768 1152 2304 9216 13776"),
    (173, "4 6 16 1680 3696 11088 13440"),
    (179, "4 6 16 48 48 144 144 384 432 1152 3456 10368 15840"),
    (181, "4 6 16 48 48 96 144 144 336 384 432 1152 3456 10368 16128"),
    (191, "4 6 16 24 48 48 96 192 384 720 768 1536 3072 12288 17280"),
    (193, "4 6 16 24 48 96 192 384 768 1536 3072 12288 18816"),
    (197, "4 6 16 96 144 240 288 1920 4704 14112 17280"),
    (199, "4 6 16 24 48 144 144 240 576 1200 1920 3600 14400 17280"),
];

/// The same orbits without the sign changes.
pub const CAYLEY_WITHOUT_SIGNS: &[(u64, &str)] = &[
    (5, "1 3 4 6 12"),
    (7, "1 3 4 6 12 24"),
    (11, "1 3 4 6 12 12 36 48"),
    (13, "1 3 4 6 12 24 48 72"),
    (17, "1 3 4 6 12 24 36 96 108"),
    (19, "1 3 4 6 12 12 36 36 108 144"),
    (23, "1 3 4 6 12 24 48 60 180 192"),
    (29, "1 3 4 6 12 12 24 36 72 96 288 288"),
    (31, "1 3 4 6 12 12 24 36 96 96 288 384"),
    (37, "1 3 4 6 12 36 48 108 180 432 540"),
    (41, "1 3 4 6 12 12 24 24 36 72 144 192 576 576"),
    (43, "1 3 4 6 12 24 60 72 180 192 576 720"),
    (47, "1 3 4 6 12 24 48 96 192 264 768 792"),
    (53, "1 3 4 6 12 36 84 108 252 324 972 1008"),
    (59, "1 3 4 6 12 12 36 48 96 144 288 420 1152 1260"),
    (61, "1 3 4 6 12 12 36 48 96 144 288 480 1152 1440"),
    (67, "1 3 4 6 12 60 144 180 432 480 1440 1728"),
    (71, "1 3 4 6 12 12 24 24 36 36 48 72 108 192 432 576 1728 1728"),
    (73, "1 3 4 6 12 24 36 48 108 192 432 684 1728 2052"),
    (79, "1 3 4 6 12 12 24 36 84 96 144 252 576 672 2016 2304"),
    (83, "1 3 4 6 12 24 48 72 192 288 576 840 2304 2520"),
    (89, "1 3 4 6 12 12 24 36 36 60 96 108 180 288 720 864 2592 2880"),
    (97, "1 3 4 6 12 24 24 48 72 96 192 384 768 1176 3072 3528"),
    (101, "1 3 4 6 12 12 36 144 144 300 432 900 1152 3456 3600"),
    (103, "1 3 4 6 12 24 84 144 252 432 1008 1152 3456 4032"),
    (107, "1 3 4 6 12 36 48 108 324 432 972 1404 3888 4212"),
    (109, "1 3 4 6 12 12 36 36 48 60 108 180 324 432 972 1440 3888 4320"),
    (113, "1 3 4 6 12 24 24 72 96 180 288 540 1152 1440 4320 4608"),
    (127, "1 3 4 6 12 24 24 36 72 96 108 192 384 576 1536 1728 5184 6144"),
    (131, "1 3 4 6 12 12 36 48 60 84 180 252 480 720 1440 2016 5760 6048"),
    (137, "1 3 4 6 12 24 144 264 432 792 1728 2112 6336 6912"),
    (139, "1 3 4 6 12 12 24 36 72 144 264 288 576 792 1728 2112 6336 6912"),
    (149, "1 3 4 6 12 12 36 96 288 300 684 900 2052 2400 7200 8208"),
    (151, "1 3 4 6 12 12 24 36 96 180 288 300 540 900 2160 2400 7200 8640"),
    (157, "1 3 4 6 12 48 84 252 672 1008 2016 3120 8064 9360"),
    (163, "1 3 4 6 12 36 108 324 840 972 2520 2916 8748 10080"),
    (167, "1 3 4 6 12 24 24 48 72 192 192 288 576 1152 2304 3444 9216 10332"),
    (173, "1 3 4 6 12 420 924 1260 2772 3360 10080 11088"),
    (179, "1 3 4 6 12 12 36 36 48 96 108 144 288 432 864 1152 2592 3960 10368 11880"),
];
