//! Upper envelope of lines with logarithmic point queries.

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Line {
    pub slope: f64,
    pub intercept: f64,
}

impl Line {
    pub fn new(slope: f64, intercept: f64) -> Self {
        Line { slope, intercept }
    }

    #[inline]
    pub fn at(&self, x: f64) -> f64 {
        self.slope * x + self.intercept
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("an envelope needs at least one line")]
pub struct EmptyInput;

/// Pointwise maximum of a set of lines.
///
/// `pieces[k]` is the maximum on `[breakpoints[k-1], breakpoints[k]]`, with
/// the first and last pieces unbounded.
#[derive(Debug, Clone)]
pub struct Envelope {
    breakpoints: Vec<f64>,
    pieces: Vec<Line>,
}

impl Envelope {
    pub fn build(lines: &[Line]) -> Result<Self, EmptyInput> {
        if lines.is_empty() {
            return Err(EmptyInput);
        }
        let mut sorted = lines.to_vec();
        sorted.sort_by(|a, b| {
            a.slope
                .total_cmp(&b.slope)
                .then(b.intercept.total_cmp(&a.intercept))
        });
        sorted.dedup_by(|later, kept| later.slope == kept.slope);

        let mut hull: Vec<Line> = Vec::with_capacity(sorted.len());
        for line in sorted {
            while hull.len() >= 2 {
                let l1 = hull[hull.len() - 2];
                let l2 = hull[hull.len() - 1];
                // l2 is hidden once l1 and `line` meet no later than l1 and l2.
                let lhs = (l1.intercept - line.intercept) * (l2.slope - l1.slope);
                let rhs = (l1.intercept - l2.intercept) * (line.slope - l1.slope);
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(line);
        }
        let breakpoints = hull
            .windows(2)
            .map(|w| (w[0].intercept - w[1].intercept) / (w[1].slope - w[0].slope))
            .collect();
        Ok(Envelope {
            breakpoints,
            pieces: hull,
        })
    }

    pub fn pieces(&self) -> &[Line] {
        &self.pieces
    }

    pub fn breakpoints(&self) -> &[f64] {
        &self.breakpoints
    }

    /// Value of the envelope at `x`.
    pub fn query(&self, x: f64) -> f64 {
        let idx = self.breakpoints.partition_point(|&b| b < x);
        // Neighbouring pieces absorb rounding in the stored breakpoints.
        let lo = idx.saturating_sub(1);
        let hi = (idx + 1).min(self.pieces.len() - 1);
        self.pieces[lo..=hi]
            .iter()
            .map(|l| l.at(x))
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(lines: &[Line], x: f64) -> f64 {
        lines.iter().map(|l| l.at(x)).fold(f64::NEG_INFINITY, f64::max)
    }

    #[test]
    fn two_crossing_lines() {
        let env = Envelope::build(&[Line::new(1.0, 0.0), Line::new(-1.0, 2.0)]).unwrap();
        assert_eq!(env.breakpoints(), &[1.0]);
        assert_eq!(env.query(-1.0), 3.0);
        assert_eq!(env.query(1.0), 1.0);
        assert_eq!(env.query(3.0), 3.0);
    }

    #[test]
    fn single_and_duplicate_slopes() {
        let env = Envelope::build(&[Line::new(2.0, 1.0)]).unwrap();
        assert_eq!(env.query(10.0), 21.0);
        let env = Envelope::build(&[Line::new(0.0, 1.0), Line::new(0.0, 5.0)]).unwrap();
        assert_eq!(env.pieces().len(), 1);
        assert_eq!(env.query(-3.0), 5.0);
        assert!(Envelope::build(&[]).is_err());
    }

    #[test]
    fn hidden_middle_line() {
        let lines = [Line::new(-1.0, 0.0), Line::new(0.0, -5.0), Line::new(1.0, 0.0)];
        let env = Envelope::build(&lines).unwrap();
        assert_eq!(env.pieces().len(), 2);
        // Three lines through one point keep only the outer two.
        let lines = [Line::new(-1.0, 0.0), Line::new(0.0, 0.0), Line::new(1.0, 0.0)];
        assert_eq!(Envelope::build(&lines).unwrap().pieces().len(), 2);
    }

    proptest! {
        #[test]
        fn matches_pointwise_max(
            raw in prop::collection::vec((-50i32..50, -1000i32..1000), 1..64),
            xs in prop::collection::vec(-200i32..200, 1..20),
        ) {
            let lines: Vec<Line> = raw.iter().map(|&(m, b)| Line::new(m.into(), b.into())).collect();
            let env = Envelope::build(&lines).unwrap();
            for w in env.pieces().windows(2) {
                prop_assert!(w[0].slope < w[1].slope);
            }
            for w in env.breakpoints().windows(2) {
                prop_assert!(w[0] < w[1]);
            }
            for x in xs {
                let x = f64::from(x) / 4.0;
                prop_assert_eq!(env.query(x), brute(&lines, x));
            }
        }
    }
}
