use thiserror::Error;

use crate::boolsemi::{BoolMatrix, BoolVec};
use crate::error::Result;
use crate::residuation::TestingScheme;

/// Axiom violations found while validating a point-line structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("no lines given")]
    NoLines,
    #[error("line {line} is empty")]
    EmptyLine { line: usize },
    #[error("line {line} mentions point {point}, but there are only {points} points")]
    PointOutOfRange {
        line: usize,
        point: usize,
        points: usize,
    },
    #[error("line {line} lists point {point} twice")]
    RepeatedPoint { line: usize, point: usize },
    #[error("line {line} has {size} points, line 0 has {expected}")]
    LineSize {
        line: usize,
        size: usize,
        expected: usize,
    },
    #[error("point {point} lies on {count} lines, point 0 on {expected}")]
    PencilSize {
        point: usize,
        count: usize,
        expected: usize,
    },
    #[error("points {points:?} share lines {lines:?}")]
    TwoCommonLines {
        points: (usize, usize),
        lines: (usize, usize),
    },
    #[error("lines {0} and {1} coincide")]
    DuplicateLine(usize, usize),
    #[error("order ({s},{t}) structure has {points} points and {lines} lines, expected {expected_points} and {expected_lines}")]
    Counts {
        s: usize,
        t: usize,
        points: usize,
        lines: usize,
        expected_points: usize,
        expected_lines: usize,
    },
    #[error("not a generalized quadrangle: point {point} is collinear with {count} points of line {line}")]
    NotQuadrangle {
        point: usize,
        line: usize,
        count: usize,
    },
}

/// A validated partial linear space of order `(s, t)`: every line has `s+1`
/// points, every point is on `t+1` lines, two points share at most one line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialLinearSpace {
    points: usize,
    lines: Vec<Vec<usize>>,
    s: usize,
    t: usize,
}

impl PartialLinearSpace {
    pub fn points(&self) -> usize {
        self.points
    }

    /// Lines as ascending point-index lists.
    pub fn lines(&self) -> &[Vec<usize>] {
        &self.lines
    }

    /// Order `(s, t)`.
    pub fn order(&self) -> (usize, usize) {
        (self.s, self.t)
    }

    /// Swaps the roles of points and lines. Point `p` of the result is line
    /// `p` here; line `i` of the result is the pencil of point `i`.
    pub fn dual(&self) -> Result<PartialLinearSpace> {
        let mut pencils = vec![Vec::new(); self.points];
        for (l, line) in self.lines.iter().enumerate() {
            for &p in line {
                pencils[p].push(l);
            }
        }
        validate_pls(self.lines.len(), pencils)
    }

    /// For every point, the indicator of the points sharing a line with it.
    pub fn collinearity(&self) -> Vec<BoolVec> {
        let mut adj = vec![BoolVec::zeros(self.points); self.points];
        for line in &self.lines {
            for &a in line {
                for &b in line {
                    if a != b {
                        adj[a].set(b, true);
                    }
                }
            }
        }
        adj
    }

    fn line_indicators(&self) -> Vec<BoolVec> {
        self.lines
            .iter()
            .map(|l| BoolVec::from_support(self.points, l.iter().copied()))
            .collect()
    }
}

/// Validates a point-line structure on points `0..points` and infers `(s, t)`.
///
/// Lines may be given in any order; each is stored sorted.
pub fn validate_pls(points: usize, lines: Vec<Vec<usize>>) -> Result<PartialLinearSpace> {
    if lines.is_empty() {
        return Err(GeometryError::NoLines.into());
    }
    let mut sorted = Vec::with_capacity(lines.len());
    for (l, mut line) in lines.into_iter().enumerate() {
        if line.is_empty() {
            return Err(GeometryError::EmptyLine { line: l }.into());
        }
        line.sort_unstable();
        if let Some(&point) = line.iter().find(|&&p| p >= points) {
            return Err(GeometryError::PointOutOfRange {
                line: l,
                point,
                points,
            }
            .into());
        }
        if let Some(w) = line.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::RepeatedPoint {
                line: l,
                point: w[0],
            }
            .into());
        }
        sorted.push(line);
    }

    let size = sorted[0].len();
    if let Some((line, l)) = sorted.iter().enumerate().find(|(_, l)| l.len() != size) {
        return Err(GeometryError::LineSize {
            line,
            size: l.len(),
            expected: size,
        }
        .into());
    }

    // first line joining each pair of points, indexed a * points + b
    let mut joined: Vec<u32> = vec![u32::MAX; points * points];
    for (l, line) in sorted.iter().enumerate() {
        for (i, &a) in line.iter().enumerate() {
            for &b in &line[i + 1..] {
                let slot = &mut joined[a * points + b];
                if *slot != u32::MAX {
                    return Err(GeometryError::TwoCommonLines {
                        points: (a, b),
                        lines: (*slot as usize, l),
                    }
                    .into());
                }
                *slot = l as u32;
            }
        }
    }
    let mut pencil = vec![0usize; points];
    for line in &sorted {
        for &p in line {
            pencil[p] += 1;
        }
    }
    let degree = pencil.first().copied().unwrap_or(0);
    if let Some((point, &count)) = pencil.iter().enumerate().find(|(_, &c)| c != degree) {
        return Err(GeometryError::PencilSize {
            point,
            count,
            expected: degree,
        }
        .into());
    }
    if degree == 0 {
        return Err(GeometryError::PencilSize {
            point: 0,
            count: 0,
            expected: 1,
        }
        .into());
    }

    if size == 1 {
        let mut seen = vec![usize::MAX; points];
        for (l, line) in sorted.iter().enumerate() {
            let p = line[0];
            if seen[p] != usize::MAX {
                return Err(GeometryError::DuplicateLine(seen[p], l).into());
            }
            seen[p] = l;
        }
    }

    Ok(PartialLinearSpace {
        points,
        lines: sorted,
        s: size - 1,
        t: degree - 1,
    })
}

/// A non-incident point-line pair where the number of points on the line
/// collinear with the point is not exactly one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadrangleViolation {
    pub point: usize,
    pub line: usize,
    pub collinear: usize,
}

/// Checks the generalized quadrangle axiom on every non-incident pair.
/// Returns the first violation, scanning points then lines by index.
pub fn is_generalized_quadrangle(pls: &PartialLinearSpace) -> (bool, Option<QuadrangleViolation>) {
    let adj = pls.collinearity();
    let lines = pls.line_indicators();
    for (p, near) in adj.iter().enumerate() {
        for (l, ind) in lines.iter().enumerate() {
            if ind.get(p) {
                continue;
            }
            let mut common = ind.clone();
            common.and_assign(near);
            let collinear = common.weight();
            if collinear != 1 {
                return (
                    false,
                    Some(QuadrangleViolation {
                        point: p,
                        line: l,
                        collinear,
                    }),
                );
            }
        }
    }
    (true, None)
}

/// Point-by-line incidence matrix: `M[p][c] = 1` iff `p` lies on line `c`.
pub fn incidence_matrix(pls: &PartialLinearSpace) -> BoolMatrix {
    let mut m = BoolMatrix::zeros(pls.points, pls.lines.len());
    for (c, line) in pls.lines.iter().enumerate() {
        for &p in line {
            m.set(p, c, true);
        }
    }
    m
}

/// The testing scheme whose samples are the lines and whose tests are the
/// points, certified `s`-disjunct.
///
/// No line is covered by `s` other lines: each meets the line in at most one
/// point, and the line has `s+1` points. Rows are therefore lines, i.e. the
/// matrix is the transpose of [`incidence_matrix`].
pub fn to_testing_scheme(pls: &PartialLinearSpace, workers: usize) -> Result<TestingScheme> {
    let h = incidence_matrix(pls).transpose();
    TestingScheme::new(h)?.certify(pls.s, workers)
}
