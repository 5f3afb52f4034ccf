//! Shapes of indecomposable double complexes and their combinatorics.
//!
//! A shape is the support of an indecomposable bounded double complex: a
//! 2×2 square, or a staircase ("zigzag"). Zigzags of even length `2r` come
//! in two kinds depending on whether their distinguished outgoing arrow is
//! horizontal or vertical; zigzags of odd length are determined by the
//! total degree `d` carrying most of their components together with the
//! bidegree `(p, q)` where the two induced filtrations jump.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Which of the two directions/spectral sequences an even zigzag feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SsSide {
    One,
    Two,
}

impl SsSide {
    pub fn other(self) -> SsSide {
        match self {
            SsSide::One => SsSide::Two,
            SsSide::Two => SsSide::One,
        }
    }

    pub fn index(self) -> u8 {
        match self {
            SsSide::One => 1,
            SsSide::Two => 2,
        }
    }

    pub fn from_index(i: u8) -> Result<SsSide> {
        match i {
            1 => Ok(SsSide::One),
            2 => Ok(SsSide::Two),
            _ => Err(Error::InvalidArgument(format!(
                "side must be 1 or 2, got {i}"
            ))),
        }
    }
}

impl fmt::Display for SsSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.index())
    }
}

/// A page index `r ≥ 1` or `∞`, used when comparing complexes up to
/// `E_r`-isomorphism.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PageBound {
    Finite(u32),
    Infinite,
}

impl fmt::Display for PageBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PageBound::Finite(r) => write!(f, "{r}"),
            PageBound::Infinite => write!(f, "inf"),
        }
    }
}

impl FromStr for PageBound {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "∞" => Ok(PageBound::Infinite),
            t => {
                let r: u32 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad page index `{s}`")))?;
                if r == 0 {
                    return Err(Error::InvalidArgument("page index must be ≥ 1".into()));
                }
                Ok(PageBound::Finite(r))
            }
        }
    }
}

/// Label of an indecomposable double complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Shape {
    /// Odd-length zigzag `S_d^{p,q}`: most components in total degree `d`,
    /// filtration jumps at column `p` and row `q`. A dot iff `p + q = d`.
    Odd { d: i32, p: i32, q: i32 },
    /// Even-length zigzag `S_{i,r}^{p,q}` with `2r` components, starting
    /// point `(p, q)` and outgoing arrow in direction `i`.
    Even {
        side: SsSide,
        r: u32,
        p: i32,
        q: i32,
    },
    /// Square `S^{p,q}` with top-right corner `(p, q)`.
    Square { p: i32, q: i32 },
}

impl Shape {
    pub fn dot(p: i32, q: i32) -> Shape {
        Shape::Odd { d: p + q, p, q }
    }

    pub fn is_dot(&self) -> bool {
        matches!(self, Shape::Odd { d, p, q } if p + q == *d)
    }

    pub fn is_zigzag(&self) -> bool {
        !matches!(self, Shape::Square { .. })
    }

    pub fn is_square(&self) -> bool {
        matches!(self, Shape::Square { .. })
    }

    /// Even zigzags need `r ≥ 1`.
    pub fn check(self) -> Result<Shape> {
        if let Shape::Even { r, .. } = self {
            if r < 1 {
                return Err(Error::InvalidShape("even zigzag needs r ≥ 1".into()));
            }
        }
        Ok(self)
    }

    /// The support, listed along the staircase (zigzags) or in fixed corner
    /// order bottom-left, top-left, bottom-right, top-right (squares).
    pub fn points(&self) -> Vec<(i32, i32)> {
        match *self {
            Shape::Square { p, q } => {
                vec![(p - 1, q - 1), (p - 1, q), (p, q - 1), (p, q)]
            }
            Shape::Even {
                side: SsSide::One,
                r,
                p,
                q,
            } => {
                let mut pts = Vec::with_capacity(2 * r as usize);
                for j in 0..r as i32 {
                    pts.push((p + j, q - j));
                    pts.push((p + j + 1, q - j));
                }
                pts
            }
            Shape::Even {
                side: SsSide::Two,
                r,
                p,
                q,
            } => {
                let mut pts = Vec::with_capacity(2 * r as usize);
                for j in 0..r as i32 {
                    pts.push((p - j, q + j));
                    pts.push((p - j, q + j + 1));
                }
                pts
            }
            Shape::Odd { d, p, q } => {
                let m = p + q - d;
                let mut pts = Vec::new();
                if m >= 0 {
                    for j in 0..=m {
                        pts.push((p - j, d - p + j));
                        if j < m {
                            pts.push((p - j - 1, d - p + j));
                        }
                    }
                } else {
                    let m = -m;
                    for j in 0..=m {
                        pts.push((p + j, d - p - j));
                        if j < m {
                            pts.push((p + j + 1, d - p - j));
                        }
                    }
                }
                pts
            }
        }
    }

    pub fn point_set(&self) -> BTreeSet<(i32, i32)> {
        self.points().into_iter().collect()
    }

    /// Number of nonzero components.
    pub fn len(&self) -> usize {
        match *self {
            Shape::Square { .. } => 4,
            Shape::Even { r, .. } => 2 * r as usize,
            Shape::Odd { d, p, q } => (2 * (p + q - d).abs() + 1) as usize,
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Smallest total degree of a point; the degree an elementary complex
    /// of this shape is generated in.
    pub fn generated_degree(&self) -> i32 {
        self.points()
            .iter()
            .map(|&(p, q)| p + q)
            .min()
            .expect("shapes are nonempty")
    }

    /// Reflection along the diagonal `p = q`.
    pub fn transpose(&self) -> Shape {
        match *self {
            Shape::Odd { d, p, q } => Shape::Odd { d, p: q, q: p },
            Shape::Even { side, r, p, q } => Shape::Even {
                side: side.other(),
                r,
                p: q,
                q: p,
            },
            Shape::Square { p, q } => Shape::Square { p: q, q: p },
        }
    }

    /// Reflection at the antidiagonal `p + q = n` (the shape of the dual
    /// complex's summand).
    pub fn reflect(&self, n: i32) -> Shape {
        match *self {
            Shape::Odd { d, p, q } => Shape::Odd {
                d: 2 * n - d,
                p: n - p,
                q: n - q,
            },
            Shape::Even {
                side: SsSide::One,
                r,
                p,
                q,
            } => Shape::Even {
                side: SsSide::One,
                r,
                p: n - p - r as i32,
                q: n - q + r as i32 - 1,
            },
            Shape::Even {
                side: SsSide::Two,
                r,
                p,
                q,
            } => Shape::Even {
                side: SsSide::Two,
                r,
                p: n - p + r as i32 - 1,
                q: n - q - r as i32,
            },
            Shape::Square { p, q } => Shape::Square {
                p: n - p + 1,
                q: n - q + 1,
            },
        }
    }

    /// Shift by `(i, i)`.
    pub fn shift(&self, i: i32) -> Shape {
        match *self {
            Shape::Odd { d, p, q } => Shape::Odd {
                d: d + 2 * i,
                p: p + i,
                q: q + i,
            },
            Shape::Even { side, r, p, q } => Shape::Even {
                side,
                r,
                p: p + i,
                q: q + i,
            },
            Shape::Square { p, q } => Shape::Square { p: p + i, q: q + i },
        }
    }

    /// Sort key used by the renderers: generated degree, then odd < even <
    /// square, then length, then position.
    pub fn render_key(&self) -> (i32, u8, usize, i32, i32) {
        let variant = match self {
            Shape::Odd { .. } => 0,
            Shape::Even { .. } => 1,
            Shape::Square { .. } => 2,
        };
        let (p, q) = match *self {
            Shape::Odd { p, q, .. } => (p, q),
            Shape::Even { p, q, .. } => (p, q),
            Shape::Square { p, q } => (p, q),
        };
        (self.generated_degree(), variant, self.len(), p, q)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Shape::Odd { d, p, q } => write!(f, "S_{d}^{{{p},{q}}}"),
            Shape::Even { side, r, p, q } => write!(f, "S_{{{side},{r}}}^{{{p},{q}}}"),
            Shape::Square { p, q } => write!(f, "S^{{{p},{q}}}"),
        }
    }
}

impl FromStr for Shape {
    type Err = Error;

    /// Parses the label grammar `S^{p,q}`, `S_{i,r}^{p,q}`, `S_d^{p,q}`.
    /// Subscripts may be written with or without braces.
    fn from_str(s: &str) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidShape(format!("`{s}`: {msg}"));
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = t
            .strip_prefix('S')
            .ok_or_else(|| bad("must start with S"))?;
        let (sub, sup) = match rest.find('^') {
            Some(idx) => (&rest[..idx], &rest[idx + 1..]),
            None => return Err(bad("missing superscript")),
        };
        let sup = sup
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .ok_or_else(|| bad("superscript must be {p,q}"))?;
        let (p, q) = parse_pair(sup).ok_or_else(|| bad("superscript must be {p,q}"))?;
        if sub.is_empty() {
            return Ok(Shape::Square { p, q });
        }
        let sub = sub
            .strip_prefix('_')
            .ok_or_else(|| bad("subscript must start with _"))?;
        let sub = sub
            .strip_prefix('{')
            .and_then(|x| x.strip_suffix('}'))
            .unwrap_or(sub);
        if let Some((i, r)) = parse_pair(sub) {
            let side =
                SsSide::from_index(u8::try_from(i).map_err(|_| bad("side must be 1 or 2"))?)?;
            let r = u32::try_from(r).map_err(|_| bad("r must be ≥ 1"))?;
            Shape::Even { side, r, p, q }.check()
        } else {
            let d: i32 = sub.parse().map_err(|_| bad("bad subscript"))?;
            Ok(Shape::Odd { d, p, q })
        }
    }
}

fn parse_pair(s: &str) -> Option<(i32, i32)> {
    let (a, b) = s.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(shape: &str) -> BTreeSet<(i32, i32)> {
        shape.parse::<Shape>().unwrap().point_set()
    }

    #[test]
    fn even_zigzag_points_match_the_pictures() {
        assert_eq!(
            pts("S_{1,2}^{0,1}"),
            BTreeSet::from([(0, 1), (1, 1), (1, 0), (2, 0)])
        );
        assert_eq!(pts("S_{2,1}^{0,0}"), BTreeSet::from([(0, 0), (0, 1)]));
    }

    #[test]
    fn odd_zigzag_points_match_the_pictures() {
        assert_eq!(pts("S_1^{1,1}"), BTreeSet::from([(1, 0), (0, 1), (0, 0)]));
        assert_eq!(pts("S_2^{1,1}"), BTreeSet::from([(1, 1)]));
        assert_eq!(pts("S_2^{0,1}"), BTreeSet::from([(0, 2), (1, 2), (1, 1)]));
        assert!(Shape::Odd { d: 2, p: 1, q: 1 }.is_dot());
    }

    #[test]
    fn square_points() {
        assert_eq!(
            pts("S^{1,1}"),
            BTreeSet::from([(0, 0), (0, 1), (1, 0), (1, 1)])
        );
    }

    #[test]
    fn odd_endpoints_and_length() {
        // Endpoints are (p, d-p) and (d-q, q); length 2|p+q-d|+1.
        for &(d, p, q) in &[(1, 0, 0), (3, 2, 2), (2, 0, 0), (5, 3, 3), (0, 2, -2)] {
            let s = Shape::Odd { d, p, q };
            let set = s.point_set();
            assert!(set.contains(&(p, d - p)), "{s}");
            assert!(set.contains(&(d - q, q)), "{s}");
            assert_eq!(s.len(), (2 * (p + q - d).abs() + 1) as usize);
            assert_eq!(set.len(), s.len());
        }
    }

    #[test]
    fn transforms_commute_with_point_sets() {
        let shapes: Vec<Shape> = [
            "S_1^{0,0}",
            "S_3^{2,2}",
            "S_2^{0,0}",
            "S_{1,2}^{0,1}",
            "S_{2,3}^{4,1}",
            "S^{1,1}",
            "S_5^{3,2}",
        ]
        .iter()
        .map(|s| s.parse().unwrap())
        .collect();
        for s in shapes {
            let transposed: BTreeSet<_> = s.point_set().iter().map(|&(p, q)| (q, p)).collect();
            assert_eq!(s.transpose().point_set(), transposed, "transpose of {s}");
            for n in -1..4 {
                let reflected: BTreeSet<_> =
                    s.point_set().iter().map(|&(p, q)| (n - p, n - q)).collect();
                assert_eq!(s.reflect(n).point_set(), reflected, "reflect {s} at {n}");
            }
            let shifted: BTreeSet<_> = s.point_set().iter().map(|&(p, q)| (p + 2, q + 2)).collect();
            assert_eq!(s.shift(2).point_set(), shifted, "shift of {s}");
        }
    }

    #[test]
    fn labels_round_trip() {
        for text in [
            "S_1^{0,0}",
            "S_-2^{0,-3}",
            "S_{1,2}^{0,1}",
            "S_{2,7}^{-1,4}",
            "S^{1,1}",
            "S_12^{3,4}",
        ] {
            let s: Shape = text.parse().unwrap();
            let printed = s.to_string();
            let again: Shape = printed.parse().unwrap();
            assert_eq!(s, again, "round trip via {printed}");
        }
        assert!("S_{0,1}^{0,0}".parse::<Shape>().is_err(), "side 0 rejected");
        assert!("S_{1,0}^{0,0}".parse::<Shape>().is_err(), "r = 0 rejected");
        assert!("T^{0,0}".parse::<Shape>().is_err());
    }
}
