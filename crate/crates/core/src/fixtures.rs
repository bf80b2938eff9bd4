//! Published `A_3` and `A_4` tables (`p = h`), transcribed row by row.

/// One transcribed row. `y_word` is the word printed in the table; the
/// element is `w = w_0 y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixtureRow {
    pub y_word: &'static str,
    pub epsilon: &'static [i64],
    pub omega: &'static [i64],
    pub length: u32,
    pub counts: (u64, u64, u64),
}

/// The transcribed table for rank `n`, if there is one.
pub fn table(n: usize) -> Option<&'static [FixtureRow]> {
    match n {
        3 => Some(A3_TABLE),
        4 => Some(A4_TABLE),
        _ => None,
    }
}

pub const A3_TABLE: &[FixtureRow] = &[
    FixtureRow { y_word: "s0s3s1s2", epsilon: &[3, 1, -1, -3], omega: &[2, 2, 2], length: 10, counts: (1, 5, 8) },
    FixtureRow { y_word: "s0s1s2", epsilon: &[3, -1, -1, -1], omega: &[4, 0, 0], length: 9, counts: (1, 1, 4) },
    FixtureRow { y_word: "s0s3s1", epsilon: &[2, 1, -1, -2], omega: &[1, 2, 1], length: 9, counts: (1, 2, 5) },
    FixtureRow { y_word: "s0s3s2", epsilon: &[1, 1, 1, -3], omega: &[0, 0, 4], length: 9, counts: (1, 1, 4) },
    FixtureRow { y_word: "s0s1", epsilon: &[2, 0, -1, -1], omega: &[2, 1, 0], length: 8, counts: (1, 1, 3) },
    FixtureRow { y_word: "s0s3", epsilon: &[1, 1, 0, -2], omega: &[0, 1, 2], length: 8, counts: (1, 1, 3) },
    FixtureRow { y_word: "s0", epsilon: &[1, 0, 0, -1], omega: &[1, 0, 1], length: 7, counts: (1, 1, 2) },
    FixtureRow { y_word: "", epsilon: &[0, 0, 0, 0], omega: &[0, 0, 0], length: 6, counts: (1, 1, 1) },
];

pub const A4_TABLE: &[FixtureRow] = &[
    FixtureRow { y_word: "s0s4s1s2s3s0s4s2s1s0", epsilon: &[6, 3, 0, -3, -6], omega: &[3, 3, 3, 3], length: 20, counts: (1, 31, 52) },
    FixtureRow { y_word: "s0s1s2s3s4s3s2s1s0", epsilon: &[6, 0, 0, 0, -6], omega: &[6, 0, 0, 6], length: 19, counts: (5, 7, 34) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s1s0", epsilon: &[6, 3, -3, -3, -3], omega: &[3, 6, 0, 0], length: 19, counts: (3, 4, 26) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s2s0", epsilon: &[6, 1, 0, -3, -4], omega: &[5, 1, 3, 1], length: 19, counts: (5, 6, 32) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s2s1", epsilon: &[5, 3, 0, -3, -5], omega: &[2, 3, 3, 2], length: 19, counts: (2, 15, 38) },
    FixtureRow { y_word: "s0s4s1s2s3s2s0s1s0", epsilon: &[4, 3, 0, -1, -6], omega: &[1, 3, 1, 5], length: 19, counts: (5, 6, 32) },
    FixtureRow { y_word: "s0s4s3s1s0s4s2s1s0", epsilon: &[3, 3, 3, -3, -6], omega: &[0, 0, 6, 3], length: 19, counts: (3, 4, 26) },
    FixtureRow { y_word: "s0s1s2s3s4s3s2s0", epsilon: &[6, 0, 0, -2, -4], omega: &[6, 0, 2, 2], length: 18, counts: (3, 5, 26) },
    FixtureRow { y_word: "s0s1s2s3s4s3s2s1", epsilon: &[5, 0, 0, 0, -5], omega: &[5, 0, 0, 5], length: 18, counts: (2, 2, 21) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s0", epsilon: &[6, 1, -1, -3, -3], omega: &[5, 2, 2, 0], length: 18, counts: (2, 3, 22) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s1", epsilon: &[5, 3, -2, -3, -3], omega: &[2, 5, 1, 0], length: 18, counts: (3, 5, 22) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4s2", epsilon: &[5, 2, 0, -3, -4], omega: &[3, 2, 3, 1], length: 18, counts: (2, 10, 27) },
    FixtureRow { y_word: "s0s4s1s2s3s2s0s1", epsilon: &[4, 3, 0, -2, -5], omega: &[1, 3, 2, 3], length: 18, counts: (2, 10, 27) },
    FixtureRow { y_word: "s0s4s1s2s3s2s1s0", epsilon: &[4, 2, 0, 0, -6], omega: &[2, 2, 0, 6], length: 18, counts: (3, 5, 26) },
    FixtureRow { y_word: "s0s4s3s1s0s4s2s1", epsilon: &[3, 3, 2, -3, -5], omega: &[0, 1, 5, 2], length: 18, counts: (3, 5, 22) },
    FixtureRow { y_word: "s0s4s3s1s2s0s1s0", epsilon: &[3, 3, 1, -1, -6], omega: &[0, 2, 2, 5], length: 18, counts: (2, 3, 22) },
    FixtureRow { y_word: "s0s1s2s3s4s3s0", epsilon: &[6, 0, -1, -2, -3], omega: &[6, 1, 1, 1], length: 17, counts: (2, 7, 19) },
    FixtureRow { y_word: "s0s1s2s3s4s3s2", epsilon: &[5, 0, 0, -1, -4], omega: &[5, 0, 1, 3], length: 17, counts: (1, 3, 17) },
    FixtureRow { y_word: "s0s4s1s2s3s0s1", epsilon: &[4, 3, -2, -2, -3], omega: &[1, 5, 0, 1], length: 17, counts: (3, 4, 17) },
    FixtureRow { y_word: "s0s4s1s2s3s0s4", epsilon: &[5, 2, -1, -3, -3], omega: &[3, 3, 2, 0], length: 17, counts: (1, 6, 19) },
    FixtureRow { y_word: "s0s4s1s2s3s2s0", epsilon: &[4, 2, 0, -2, -4], omega: &[2, 2, 2, 2], length: 17, counts: (2, 4, 20) },
    FixtureRow { y_word: "s0s4s1s2s3s2s1", epsilon: &[4, 1, 0, 0, -5], omega: &[3, 1, 0, 5], length: 17, counts: (1, 3, 17) },
    FixtureRow { y_word: "s0s4s3s1s0s4s2", epsilon: &[3, 2, 2, -3, -4], omega: &[1, 0, 5, 1], length: 17, counts: (3, 4, 17) },
    FixtureRow { y_word: "s0s4s3s1s2s0s1", epsilon: &[3, 3, 1, -2, -5], omega: &[0, 2, 3, 3], length: 17, counts: (1, 6, 19) },
    FixtureRow { y_word: "s0s4s3s1s2s1s0", epsilon: &[3, 2, 1, 0, -6], omega: &[1, 1, 1, 6], length: 17, counts: (2, 7, 19) },
    FixtureRow { y_word: "s0s1s2s3s4s0", epsilon: &[6, -1, -1, -2, -2], omega: &[7, 0, 1, 0], length: 16, counts: (3, 3, 12) },
    FixtureRow { y_word: "s0s1s2s3s4s3", epsilon: &[5, 0, -1, -1, -3], omega: &[5, 1, 0, 2], length: 16, counts: (2, 3, 13) },
    FixtureRow { y_word: "s0s4s1s2s0s1", epsilon: &[3, 3, -2, -2, -2], omega: &[0, 5, 0, 0], length: 16, counts: (1, 1, 10) },
    FixtureRow { y_word: "s0s4s1s2s3s0", epsilon: &[4, 2, -1, -2, -3], omega: &[2, 3, 1, 1], length: 16, counts: (1, 6, 15) },
    FixtureRow { y_word: "s0s4s1s2s3s2", epsilon: &[4, 1, 0, -1, -4], omega: &[3, 1, 1, 3], length: 16, counts: (1, 5, 14) },
    FixtureRow { y_word: "s0s4s3s1s0s4", epsilon: &[2, 2, 2, -3, -3], omega: &[0, 0, 5, 0], length: 16, counts: (1, 1, 10) },
    FixtureRow { y_word: "s0s4s3s1s2s0", epsilon: &[3, 2, 1, -2, -4], omega: &[1, 1, 3, 2], length: 16, counts: (1, 6, 15) },
    FixtureRow { y_word: "s0s4s3s1s2s1", epsilon: &[3, 1, 1, 0, -5], omega: &[2, 0, 1, 5], length: 16, counts: (2, 3, 13) },
    FixtureRow { y_word: "s0s4s3s2s1s0", epsilon: &[2, 2, 1, 1, -6], omega: &[0, 1, 0, 7], length: 16, counts: (3, 3, 12) },
    FixtureRow { y_word: "s0s1s2s3s4", epsilon: &[5, -1, -1, -1, -2], omega: &[6, 0, 0, 1], length: 15, counts: (2, 3, 9) },
    FixtureRow { y_word: "s0s4s1s2s0", epsilon: &[3, 2, -1, -2, -2], omega: &[1, 3, 1, 0], length: 15, counts: (2, 2, 9) },
    FixtureRow { y_word: "s0s4s1s2s3", epsilon: &[4, 1, -1, -1, -3], omega: &[3, 2, 0, 2], length: 15, counts: (1, 5, 11) },
    FixtureRow { y_word: "s0s4s3s1s0", epsilon: &[2, 2, 1, -2, -3], omega: &[0, 1, 3, 1], length: 15, counts: (2, 2, 9) },
    FixtureRow { y_word: "s0s4s3s1s2", epsilon: &[3, 1, 1, -1, -4], omega: &[2, 0, 2, 3], length: 15, counts: (1, 5, 11) },
    FixtureRow { y_word: "s0s4s3s2s1", epsilon: &[2, 1, 1, 1, -5], omega: &[1, 0, 0, 6], length: 15, counts: (2, 3, 9) },
    FixtureRow { y_word: "s0s1s2s3", epsilon: &[4, -1, -1, -1, -1], omega: &[5, 0, 0, 0], length: 14, counts: (1, 1, 5) },
    FixtureRow { y_word: "s0s4s1s0", epsilon: &[2, 2, 0, -2, -2], omega: &[0, 2, 2, 0], length: 14, counts: (1, 1, 6) },
    FixtureRow { y_word: "s0s4s1s2", epsilon: &[3, 1, -1, -1, -2], omega: &[2, 2, 0, 1], length: 14, counts: (1, 2, 7) },
    FixtureRow { y_word: "s0s4s3s1", epsilon: &[2, 1, 1, -1, -3], omega: &[1, 0, 2, 2], length: 14, counts: (1, 2, 7) },
    FixtureRow { y_word: "s0s4s3s2", epsilon: &[1, 1, 1, 1, -4], omega: &[0, 0, 0, 5], length: 14, counts: (1, 1, 5) },
    FixtureRow { y_word: "s0s1s2", epsilon: &[3, 0, -1, -1, -1], omega: &[3, 1, 0, 0], length: 13, counts: (1, 1, 4) },
    FixtureRow { y_word: "s0s4s1", epsilon: &[2, 1, 0, -1, -2], omega: &[1, 1, 1, 1], length: 13, counts: (1, 2, 5) },
    FixtureRow { y_word: "s0s4s3", epsilon: &[1, 1, 1, 0, -3], omega: &[0, 0, 1, 3], length: 13, counts: (1, 1, 4) },
    FixtureRow { y_word: "s0s1", epsilon: &[2, 0, 0, -1, -1], omega: &[2, 0, 1, 0], length: 12, counts: (1, 1, 3) },
    FixtureRow { y_word: "s0s4", epsilon: &[1, 1, 0, 0, -2], omega: &[0, 1, 0, 2], length: 12, counts: (1, 1, 3) },
    FixtureRow { y_word: "s0", epsilon: &[1, 0, 0, 0, -1], omega: &[1, 0, 0, 1], length: 11, counts: (1, 1, 2) },
    FixtureRow { y_word: "", epsilon: &[0, 0, 0, 0, 0], omega: &[0, 0, 0, 0], length: 10, counts: (1, 1, 1) },
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::affine_group::{AffineWeylGroup, Word};
    use crate::ko_analysis::build_rows;
    use crate::weights::{omega_from_epsilon, RankConfig, Weight};

    #[test]
    fn printed_epsilon_and_omega_agree() {
        for (n, rows) in [(3, A3_TABLE), (4, A4_TABLE)] {
            for r in rows {
                assert_eq!(omega_from_epsilon(n, r.epsilon).unwrap(), r.omega, "{r:?}");
            }
        }
    }

    #[test]
    fn printed_lengths_match_elements() {
        for (n, rows) in [(3, A3_TABLE), (4, A4_TABLE)] {
            let g = AffineWeylGroup::new(RankConfig::with_coxeter_p(n).unwrap());
            for r in rows {
                let w = g.element_from_weight(&Weight::from_omega(r.omega.to_vec())).unwrap();
                assert_eq!(g.length(&w), r.length, "{r:?}");
            }
        }
    }

    #[test]
    fn printed_words_give_printed_weights() {
        for (n, rows) in [(3, A3_TABLE), (4, A4_TABLE)] {
            let g = AffineWeylGroup::new(RankConfig::with_coxeter_p(n).unwrap());
            let w0 = g.longest_finite_element();
            for r in rows {
                let y: Word = r.y_word.parse().unwrap();
                let w = w0.compose(&g.from_word(&y.0).unwrap()).unwrap();
                assert_eq!(g.weight_epsilon(&w), r.epsilon, "{r:?}");
                assert_eq!(g.length(&w), r.length, "{r:?}");
            }
        }
    }

    #[test]
    fn computed_rows_match_tables() {
        for n in [3, 4] {
            let expected = table(n).unwrap();
            let rows = build_rows(RankConfig::with_coxeter_p(n).unwrap()).unwrap();
            assert_eq!(rows.len(), expected.len());
            for e in expected {
                let r = rows.iter().find(|r| r.omega == e.omega).unwrap_or_else(|| panic!("missing {e:?}"));
                assert_eq!(r.epsilon, e.epsilon);
                assert_eq!(r.length, e.length);
                assert_eq!(r.counts().as_tuple(), e.counts, "{e:?}");
            }
        }
    }
}
