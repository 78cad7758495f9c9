use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::field::{FieldElement, PrimeField};
use super::pls::{
    is_generalized_quadrangle, to_testing_scheme, validate_pls, GeometryError, PartialLinearSpace,
};
use crate::error::{Error, Result};
use crate::residuation::TestingScheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// The (s+1)×(s+1) grid, GQ(s,1).
    Grid(usize),
    /// The symplectic quadrangle W(q), GQ(q,q).
    Symplectic(u32),
    /// Read from a file.
    File,
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Grid(s) => write!(f, "grid({s})"),
            Provenance::Symplectic(q) => write!(f, "W({q})"),
            Provenance::File => f.write_str("file"),
        }
    }
}

/// A generalized quadrangle with point labels and provenance.
///
/// Construction checks the point and line counts `(s+1)(st+1)` and
/// `(t+1)(st+1)` and the quadrangle axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GqDescriptor {
    pls: PartialLinearSpace,
    labels: Vec<String>,
    provenance: Provenance,
}

impl GqDescriptor {
    pub fn new(
        pls: PartialLinearSpace,
        labels: Vec<String>,
        provenance: Provenance,
    ) -> Result<Self> {
        let (s, t) = pls.order();
        let expected_points = (s + 1) * (s * t + 1);
        let expected_lines = (t + 1) * (s * t + 1);
        if pls.points() != expected_points || pls.lines().len() != expected_lines {
            return Err(GeometryError::Counts {
                s,
                t,
                points: pls.points(),
                lines: pls.lines().len(),
                expected_points,
                expected_lines,
            }
            .into());
        }
        if let (false, Some(v)) = is_generalized_quadrangle(&pls) {
            return Err(GeometryError::NotQuadrangle {
                point: v.point,
                line: v.line,
                count: v.collinear,
            }
            .into());
        }
        if labels.len() != pls.points() {
            return Err(Error::InvalidParameter(format!(
                "{} labels for {} points",
                labels.len(),
                pls.points()
            )));
        }
        Ok(GqDescriptor {
            pls,
            labels,
            provenance,
        })
    }

    pub fn order(&self) -> (usize, usize) {
        self.pls.order()
    }

    pub fn pls(&self) -> &PartialLinearSpace {
        &self.pls
    }

    pub fn lines(&self) -> &[Vec<usize>] {
        self.pls.lines()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Lines as samples, points as tests, certified at `d = s`.
    pub fn to_testing_scheme(&self, workers: usize) -> Result<TestingScheme> {
        Ok(to_testing_scheme(&self.pls, workers)?.with_source(self.provenance.to_string()))
    }
}

/// The grid GQ(s,1): points `(i, j)` with `0 ≤ i, j ≤ s`, lines the rows then
/// the columns. Point `(i, j)` has index `i(s+1) + j`.
pub fn construct_grid(s: usize) -> Result<GqDescriptor> {
    if s == 0 {
        return Err(Error::InvalidParameter("grid needs s >= 1".into()));
    }
    let side = s + 1;
    let rows = (0..side).map(|i| (0..side).map(|j| i * side + j).collect());
    let cols = (0..side).map(|j| (0..side).map(|i| i * side + j).collect());
    let pls = validate_pls(side * side, rows.chain(cols).collect())?;
    let labels = (0..side * side)
        .map(|p| format!("({},{})", p / side, p % side))
        .collect();
    GqDescriptor::new(pls, labels, Provenance::Grid(s))
}

type Point = [FieldElement; 4];

/// ⟨x, y⟩ = x₁y₂ − x₂y₁ + x₃y₄ − x₄y₃.
pub fn symplectic_form(x: &[FieldElement; 4], y: &[FieldElement; 4]) -> FieldElement {
    x[0] * y[1] - x[1] * y[0] + x[2] * y[3] - x[3] * y[2]
}

/// Scales `x` so that its first nonzero coordinate is 1.
fn normalize(x: Point) -> Option<Point> {
    let lead = x.iter().find(|c| !c.is_zero())?;
    let inv = lead.inverse()?;
    Some(x.map(|c| c * inv))
}

/// The symplectic quadrangle W(q) for prime `q`: all points of PG(3,q) and
/// the lines that are totally isotropic for [`symplectic_form`].
///
/// Points are the normalized 4-tuples (first nonzero coordinate 1) in
/// lexicographic order of their coordinates. Lines are sorted point-index
/// lists in lexicographic order.
pub fn construct_symplectic(q: u32) -> Result<GqDescriptor> {
    let field = PrimeField::new(q).map_err(|_| {
        Error::InvalidParameter(format!(
            "W(q) is only constructed for prime q (prime powers are not supported), got q={q}"
        ))
    })?;

    let mut points: Vec<Point> = Vec::new();
    for a in field.elements() {
        for b in field.elements() {
            for c in field.elements() {
                for d in field.elements() {
                    let x = [a, b, c, d];
                    if normalize(x) == Some(x) {
                        points.push(x);
                    }
                }
            }
        }
    }
    let index: HashMap<Point, usize> = points.iter().enumerate().map(|(i, p)| (*p, i)).collect();

    let mut lines: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            if !symplectic_form(x, y).is_zero() {
                continue;
            }
            // the q+1 points x and y + λx, λ ∈ GF(q)
            let mut line: Vec<usize> = std::iter::once(i)
                .chain(field.elements().map(|lambda| {
                    let z = [0, 1, 2, 3].map(|c| y[c] + lambda * x[c]);
                    index[&normalize(z).expect("y + λx is nonzero")]
                }))
                .collect();
            line.sort_unstable();
            lines.insert(line);
        }
    }

    let pls = validate_pls(points.len(), lines.into_iter().collect())?;
    let labels = points
        .iter()
        .map(|p| format!("({},{},{},{})", p[0], p[1], p[2], p[3]))
        .collect();
    GqDescriptor::new(pls, labels, Provenance::Symplectic(q))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_counts() {
        let g = construct_grid(2).unwrap();
        assert_eq!((g.pls().points(), g.lines().len()), (9, 6));
        assert_eq!(g.order(), (2, 1));
        let g = construct_grid(1).unwrap();
        assert_eq!((g.pls().points(), g.lines().len()), (4, 4));
        let g = construct_grid(4).unwrap();
        assert_eq!((g.pls().points(), g.lines().len()), (25, 10));
        assert!(construct_grid(0).is_err());
    }

    #[test]
    fn w2_structure() {
        let w = construct_symplectic(2).unwrap();
        assert_eq!(w.order(), (2, 2));
        assert_eq!((w.pls().points(), w.lines().len()), (15, 15));
        assert!(w.lines().iter().all(|l| l.len() == 3));
        assert_eq!(w.labels()[0], "(0,0,0,1)");
        assert_eq!(w.provenance().to_string(), "W(2)");
    }

    #[test]
    fn w3_and_w5_counts() {
        let w = construct_symplectic(3).unwrap();
        assert_eq!((w.pls().points(), w.lines().len()), (40, 40));
        let w = construct_symplectic(5).unwrap();
        assert_eq!((w.pls().points(), w.lines().len()), (156, 156));
    }

    #[test]
    fn non_prime_rejected() {
        let err = construct_symplectic(4).unwrap_err();
        assert!(err.to_string().contains("prime"), "{err}");
        assert!(construct_symplectic(1).is_err());
    }

    #[test]
    fn lines_totally_isotropic() {
        let field = PrimeField::new(3).unwrap();
        let w = construct_symplectic(3).unwrap();
        let coords: Vec<[FieldElement; 4]> = w
            .labels()
            .iter()
            .map(|l| {
                let v: Vec<u32> = l
                    .trim_matches(|c| c == '(' || c == ')')
                    .split(',')
                    .map(|c| c.parse().unwrap())
                    .collect();
                [0, 1, 2, 3].map(|i| field.element(v[i]))
            })
            .collect();
        for line in w.lines() {
            for &a in line {
                for &b in line {
                    assert!(symplectic_form(&coords[a], &coords[b]).is_zero());
                }
            }
        }
    }

    #[test]
    fn schemes() {
        let s = construct_symplectic(2).unwrap().to_testing_scheme(1).unwrap();
        assert_eq!((s.n(), s.k(), s.certified_d()), (15, 15, Some(2)));
        assert_eq!(s.source(), Some("W(2)"));
        let s = construct_grid(3).unwrap().to_testing_scheme(1).unwrap();
        assert_eq!((s.n(), s.k(), s.certified_d()), (8, 16, Some(3)));
        let s = construct_symplectic(3).unwrap().to_testing_scheme(1).unwrap();
        assert_eq!((s.n(), s.k(), s.certified_d()), (40, 40, Some(3)));
    }
}
