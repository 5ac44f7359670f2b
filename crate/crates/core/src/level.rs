//! Game level thresholds of the case-study shooter.

/// Level 1..=6 for an integer game score.
///
/// | level | score          |
/// |-------|----------------|
/// | 1     | < 500          |
/// | 2     | 500 ..= 1000   |
/// | 3     | 1001 ..= 2000  |
/// | 4     | 2001 ..= 3000  |
/// | 5     | 3001 ..= 5000  |
/// | 6     | > 5000         |
pub fn level_for_score(score: u64) -> u8 {
    match score {
        0..=499 => 1,
        500..=1000 => 2,
        1001..=2000 => 3,
        2001..=3000 => 4,
        3001..=5000 => 5,
        _ => 6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_boundaries() {
        let cases = [
            (0, 1),
            (499, 1),
            (500, 2),
            (1000, 2),
            (1001, 3),
            (2000, 3),
            (2001, 4),
            (3000, 4),
            (3001, 5),
            (5000, 5),
            (5001, 6),
            (u64::MAX, 6),
        ];
        for (score, level) in cases {
            assert_eq!(level_for_score(score), level, "score {score}");
        }
    }
}
