//! Grothendieck rings of bounded double complexes up to `E_r`-isomorphism.
//!
//! Classes are finitely supported ℤ-linear combinations of shapes, with
//! direct sum as addition and tensor product as multiplication. Three
//! levels are supported: `R0` (isomorphism classes: squares allowed),
//! `R1` (squares vanish) and `RInf` (even zigzags vanish too). At level
//! `R0` the square content of a product of zigzags is recovered from the
//! dimension table of the tensor product: zigzags account for part of it
//! and the remainder is a unique square multiset.
//!
//! The zigzag multiplication table is grounded by [`verify_product`], the
//! brute-force oracle comparing against the multiplicities of an honest
//! tensor product.

use std::collections::BTreeMap;
use std::fmt;

use crate::complex::DoubleComplex;
use crate::multiplicity::{multiplicities, MultiplicityVector};
use crate::shape::{Shape, SsSide};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Level {
    R0,
    R1,
    RInf,
}

impl Level {
    fn admits(self, shape: &Shape) -> bool {
        match (self, shape) {
            (Level::R0, _) => true,
            (Level::R1, s) => s.is_zigzag(),
            (Level::RInf, s) => matches!(s, Shape::Odd { .. }),
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Level::R0 => write!(f, "R_0"),
            Level::R1 => write!(f, "R_1"),
            Level::RInf => write!(f, "R_inf"),
        }
    }
}

impl std::str::FromStr for Level {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r0" | "0" => Ok(Level::R0),
            "r1" | "1" => Ok(Level::R1),
            "rinf" | "inf" | "infinity" => Ok(Level::RInf),
            other => Err(Error::Parse(format!("unknown ring level `{other}`"))),
        }
    }
}

/// An element of `R_0`, `R_1` or `R_∞`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingClass {
    level: Level,
    terms: BTreeMap<Shape, i64>,
}

impl RingClass {
    pub fn zero(level: Level) -> Self {
        RingClass {
            level,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(level: Level) -> Self {
        RingClass::from_terms(level, [(Shape::dot(0, 0), 1)]).expect("dots live at all levels")
    }

    pub fn from_terms(level: Level, terms: impl IntoIterator<Item = (Shape, i64)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (s, c) in terms {
            if !level.admits(&s) {
                return Err(Error::LevelMismatch(format!(
                    "{s} does not live in {level}"
                )));
            }
            let entry = map.entry(s).or_insert(0);
            *entry += c;
        }
        map.retain(|_, c| *c != 0);
        Ok(RingClass { level, terms: map })
    }

    /// The class of a multiplicity vector, with shapes outside the level
    /// discarded (squares at `R1`, squares and evens at `RInf`).
    pub fn class_of(m: &MultiplicityVector, level: Level) -> Self {
        RingClass::from_terms(
            level,
            m.iter()
                .filter(|(s, _)| level.admits(s))
                .map(|(s, c)| (*s, c as i64)),
        )
        .expect("filtered terms are admissible")
    }

    pub fn level(&self) -> Level {
        self.level
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Shape, i64)> {
        self.terms.iter().map(|(s, &c)| (s, c))
    }

    pub fn coefficient(&self, s: &Shape) -> i64 {
        self.terms.get(s).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &RingClass) -> Result<RingClass> {
        self.check_level(other)?;
        RingClass::from_terms(
            self.level,
            self.terms().chain(other.terms()).map(|(s, c)| (*s, c)),
        )
    }

    pub fn neg(&self) -> RingClass {
        RingClass {
            level: self.level,
            terms: self.terms.iter().map(|(&s, &c)| (s, -c)).collect(),
        }
    }

    pub fn sub(&self, other: &RingClass) -> Result<RingClass> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: i64) -> RingClass {
        if c == 0 {
            return RingClass::zero(self.level);
        }
        RingClass {
            level: self.level,
            terms: self.terms.iter().map(|(&s, &k)| (s, c * k)).collect(),
        }
    }

    /// Projection to a coarser level (dropping squares, then even zigzags).
    pub fn project(&self, level: Level) -> Result<RingClass> {
        if level < self.level {
            return Err(Error::LevelMismatch(format!(
                "cannot project {} to the finer level {level}",
                self.level
            )));
        }
        RingClass::from_terms(
            level,
            self.terms()
                .filter(|(s, _)| level.admits(s))
                .map(|(s, c)| (*s, c)),
        )
    }

    /// Tensor-product multiplication, bilinear over the per-shape table.
    pub fn mul(&self, other: &RingClass) -> Result<RingClass> {
        self.check_level(other)?;
        let mut acc: BTreeMap<Shape, i64> = BTreeMap::new();
        for (s1, c1) in self.terms() {
            for (s2, c2) in other.terms() {
                for (s, c) in shape_product(s1, s2, self.level) {
                    *acc.entry(s).or_insert(0) += c * c1 * c2;
                }
            }
        }
        RingClass::from_terms(self.level, acc)
    }

    /// Does every supporting shape lie in the first quadrant?
    pub fn is_first_quadrant(&self) -> bool {
        self.terms()
            .all(|(s, _)| s.point_set().iter().all(|&(p, q)| p >= 0 && q >= 0))
    }

    fn check_level(&self, other: &RingClass) -> Result<()> {
        if self.level != other.level {
            return Err(Error::LevelMismatch(format!(
                "{} vs {}",
                self.level, other.level
            )));
        }
        Ok(())
    }

    /// Parses expressions like `2*S_1^{0,0} + S_{1,2}^{0,1} - 3*S^{1,1}`.
    /// Bare integers denote multiples of the unit `[S_0^{0,0}]`.
    pub fn parse(input: &str, level: Level) -> Result<RingClass> {
        let mut terms: Vec<(Shape, i64)> = Vec::new();
        for (sign, term) in split_terms(input) {
            let term = term.trim();
            if term.is_empty() {
                return Err(Error::Parse("empty term in class expression".into()));
            }
            let (coeff, label) = match term.split_once('*') {
                Some((c, l)) => {
                    let c: i64 = c
                        .trim()
                        .parse()
                        .map_err(|_| Error::Parse(format!("bad coefficient in `{term}`")))?;
                    (c, l.trim())
                }
                None => (1, term),
            };
            if label.is_empty() {
                return Err(Error::Parse(format!("missing shape in `{term}`")));
            }
            let (shape, coeff) = if let Ok(n) = label.parse::<i64>() {
                (Shape::dot(0, 0), coeff * n)
            } else {
                (label.parse::<Shape>()?, coeff)
            };
            terms.push((shape, sign * coeff));
        }
        RingClass::from_terms(level, terms)
    }
}

impl fmt::Display for RingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (s, c)) in self.terms().enumerate() {
            if idx == 0 {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else if c < 0 {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}*", c.abs())?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Splits a sum expression at top-level `+`/`-`, respecting braces and a
/// sign directly after `_` (unbraced negative subscripts).
fn split_terms(input: &str) -> Vec<(i64, String)> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut sign = 1i64;
    let mut depth = 0i32;
    let mut prev_meaningful: Option<char> = None;
    for c in input.chars() {
        match c {
            '{' => depth += 1,
            '}' => depth -= 1,
            _ => {}
        }
        let is_separator = (c == '+' || c == '-')
            && depth == 0
            && !matches!(prev_meaningful, Some('_') | Some('*') | None);
        if is_separator {
            out.push((sign, std::mem::take(&mut current)));
            sign = if c == '-' { -1 } else { 1 };
        } else if c == '-' && depth == 0 && prev_meaningful.is_none() {
            sign = -sign;
        } else if c == '+' && depth == 0 && prev_meaningful.is_none() {
            // leading plus, ignore
        } else {
            current.push(c);
        }
        if !c.is_whitespace() {
            prev_meaningful = Some(c);
        }
    }
    out.push((sign, current));
    out
}

/// The product of two basis shapes as a list of `(shape, coefficient)`.
///
/// Zigzag products follow the six structure formulas; a square times
/// anything spreads the square over the other shape's support; and at
/// level `R0` the square content of a zigzag product is reconstructed from
/// the dimension count of the tensor product.
pub fn shape_product(s1: &Shape, s2: &Shape, level: Level) -> Vec<(Shape, i64)> {
    use Shape::*;
    let mut out: Vec<(Shape, i64)> = Vec::new();
    match (*s1, *s2) {
        (Square { p, q }, other) | (other, Square { p, q }) => {
            if level == Level::R0 {
                for (r, s) in other.point_set() {
                    out.push((Square { p: p + r, q: q + s }, 1));
                }
            }
        }
        (
            Odd { d, p, q },
            Odd {
                d: d2,
                p: p2,
                q: q2,
            },
        ) => {
            out.push((
                Odd {
                    d: d + d2,
                    p: p + p2,
                    q: q + q2,
                },
                1,
            ));
        }
        (
            Odd { d, p, q },
            Even {
                side,
                r,
                p: p2,
                q: q2,
            },
        )
        | (
            Even {
                side,
                r,
                p: p2,
                q: q2,
            },
            Odd { d, p, q },
        ) => {
            if level != Level::RInf {
                let shape = match side {
                    SsSide::One => Even {
                        side,
                        r,
                        p: p + p2,
                        q: q2 + d - p,
                    },
                    SsSide::Two => Even {
                        side,
                        r,
                        p: p2 + d - q,
                        q: q + q2,
                    },
                };
                out.push((shape, 1));
            }
        }
        (
            Even {
                side: i1,
                r: l1,
                p,
                q,
            },
            Even {
                side: i2,
                r: l2,
                p: p2,
                q: q2,
            },
        ) => {
            if i1 == i2 && level != Level::RInf {
                let lmin = l1.min(l2);
                let lmax = l1.max(l2) as i32;
                match i1 {
                    SsSide::One => {
                        out.push((
                            Even {
                                side: i1,
                                r: lmin,
                                p: p + p2,
                                q: q + q2,
                            },
                            1,
                        ));
                        out.push((
                            Even {
                                side: i1,
                                r: lmin,
                                p: p + p2 + lmax,
                                q: q + q2 - lmax + 1,
                            },
                            1,
                        ));
                    }
                    SsSide::Two => {
                        out.push((
                            Even {
                                side: i1,
                                r: lmin,
                                p: p + p2,
                                q: q + q2,
                            },
                            1,
                        ));
                        out.push((
                            Even {
                                side: i1,
                                r: lmin,
                                p: p + p2 - lmax + 1,
                                q: q + q2 + lmax,
                            },
                            1,
                        ));
                    }
                }
            }
            // opposite-side even products vanish in R_1
        }
    }
    if level == Level::R0 && s1.is_zigzag() && s2.is_zigzag() {
        out.extend(square_content(s1, s2, &out));
    }
    out
}

/// Squares inside the tensor product of two zigzags: whatever dimension the
/// zigzag part does not cover, written as a unique square multiset.
fn square_content(s1: &Shape, s2: &Shape, zigzags: &[(Shape, i64)]) -> Vec<(Shape, i64)> {
    let mut residual: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    for (p1, q1) in s1.point_set() {
        for (p2, q2) in s2.point_set() {
            *residual.entry((p1 + p2, q1 + q2)).or_insert(0) += 1;
        }
    }
    for (s, c) in zigzags {
        for pt in s.point_set() {
            *residual.entry(pt).or_insert(0) -= c;
        }
    }
    // A square with top-right corner (p, q) covers (p,q), (p-1,q), (p,q-1),
    // (p-1,q-1); solving top-right to bottom-left is exact.
    let mut counts: BTreeMap<(i32, i32), i64> = BTreeMap::new();
    let keys: Vec<(i32, i32)> = residual.keys().rev().copied().collect();
    let get = |m: &BTreeMap<(i32, i32), i64>, k: (i32, i32)| m.get(&k).copied().unwrap_or(0);
    for (p, q) in keys {
        let c = get(&residual, (p, q))
            - get(&counts, (p + 1, q))
            - get(&counts, (p, q + 1))
            - get(&counts, (p + 1, q + 1));
        if c != 0 {
            counts.insert((p, q), c);
        }
    }
    counts
        .into_iter()
        .map(|((p, q), c)| (Shape::Square { p, q }, c))
        .collect()
}

/// Brute-force oracle: the class of the multiplicities of an honest tensor
/// product must match the formula-driven product, both at `R0` and after
/// projection to `R1`.
pub fn verify_product(a: &DoubleComplex, b: &DoubleComplex) -> Result<bool> {
    let ma = multiplicities(a)?;
    let mb = multiplicities(b)?;
    let t = a.tensor(b)?;
    let mt = multiplicities(&t)?;

    let lhs0 = RingClass::class_of(&mt, Level::R0);
    let rhs0 = RingClass::class_of(&ma, Level::R0).mul(&RingClass::class_of(&mb, Level::R0))?;
    let lhs1 = lhs0.project(Level::R1)?;
    let rhs1 = RingClass::class_of(&ma, Level::R1).mul(&RingClass::class_of(&mb, Level::R1))?;
    Ok(lhs0 == rhs0 && lhs1 == rhs1)
}

/// Normal form of a class at level `R1` or `RInf` over the generators
/// `R = [S_1^{0,1}]`, `U = [S_1^{1,0}]`, `L = [S_1^{1,1}]`,
/// `X_l = [S_{1,l}^{0,0}]`, `Y_l = [S_{2,l}^{0,0}]`:
/// odd shapes become Laurent monomials `R^{d-p} U^{d-q} L^{p+q-d}`, even
/// shapes become `R^q U^p X_l` resp. `R^q U^p Y_l`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NormalForm {
    /// `(a, b, c) ↦ coefficient of R^a U^b L^c`.
    pub laurent: BTreeMap<(i32, i32, i32), i64>,
    /// `(l, a, b) ↦ coefficient of R^a U^b X_l`.
    pub x_part: BTreeMap<(u32, i32, i32), i64>,
    /// `(l, a, b) ↦ coefficient of R^a U^b Y_l`.
    pub y_part: BTreeMap<(u32, i32, i32), i64>,
}

pub fn normal_form(x: &RingClass) -> Result<NormalForm> {
    if x.level() == Level::R0 {
        return Err(Error::LevelMismatch(
            "normal forms exist at levels R_1 and R_inf only".into(),
        ));
    }
    let mut nf = NormalForm::default();
    for (s, c) in x.terms() {
        match *s {
            Shape::Odd { d, p, q } => {
                *nf.laurent.entry((d - p, d - q, p + q - d)).or_insert(0) += c;
            }
            Shape::Even {
                side: SsSide::One,
                r,
                p,
                q,
            } => {
                *nf.x_part.entry((r, q, p)).or_insert(0) += c;
            }
            Shape::Even {
                side: SsSide::Two,
                r,
                p,
                q,
            } => {
                *nf.y_part.entry((r, q, p)).or_insert(0) += c;
            }
            Shape::Square { .. } => unreachable!("level-checked"),
        }
    }
    Ok(nf)
}

/// Inverse of [`normal_form`]: monomials back to shapes.
pub fn from_normal_form(nf: &NormalForm, level: Level) -> Result<RingClass> {
    let mut terms: Vec<(Shape, i64)> = Vec::new();
    for (&(a, b, c), &coeff) in &nf.laurent {
        terms.push((
            Shape::Odd {
                d: a + b + c,
                p: b + c,
                q: a + c,
            },
            coeff,
        ));
    }
    for (&(l, a, b), &coeff) in &nf.x_part {
        terms.push((
            Shape::Even {
                side: SsSide::One,
                r: l,
                p: b,
                q: a,
            },
            coeff,
        ));
    }
    for (&(l, a, b), &coeff) in &nf.y_part {
        terms.push((
            Shape::Even {
                side: SsSide::Two,
                r: l,
                p: b,
                q: a,
            },
            coeff,
        ));
    }
    RingClass::from_terms(level, terms)
}

impl fmt::Display for NormalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut pieces: Vec<String> = Vec::new();
        let monomial = |a: i32, b: i32, c: Option<i32>| -> String {
            let mut factors = Vec::new();
            for (name, e) in [("R", a), ("U", b), ("L", c.unwrap_or(0))] {
                match e {
                    0 => {}
                    1 => factors.push(name.to_string()),
                    _ => factors.push(format!("{name}^{e}")),
                }
            }
            factors.join("·")
        };
        let push = |pieces: &mut Vec<String>, coeff: i64, mono: String, gen: Option<String>| {
            let mut parts = Vec::new();
            if coeff != 1 || (mono.is_empty() && gen.is_none()) {
                parts.push(coeff.to_string());
            }
            if !mono.is_empty() {
                parts.push(mono);
            }
            if let Some(g) = gen {
                parts.push(g);
            }
            pieces.push(parts.join("·"));
        };
        for (&(a, b, c), &coeff) in &self.laurent {
            push(&mut pieces, coeff, monomial(a, b, Some(c)), None);
        }
        for (&(l, a, b), &coeff) in &self.x_part {
            push(
                &mut pieces,
                coeff,
                monomial(a, b, None),
                Some(format!("X_{l}")),
            );
        }
        for (&(l, a, b), &coeff) in &self.y_part {
            push(
                &mut pieces,
                coeff,
                monomial(a, b, None),
                Some(format!("Y_{l}")),
            );
        }
        if pieces.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", pieces.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;

    const Q: FieldSpec = FieldSpec::Rationals;

    fn sh(s: &str) -> Shape {
        s.parse().unwrap()
    }

    fn class(expr: &str, level: Level) -> RingClass {
        RingClass::parse(expr, level).unwrap()
    }

    #[test]
    fn odd_times_odd() {
        let x = class("S_1^{1,1}", Level::R1);
        let prod = x.mul(&x).unwrap();
        assert_eq!(prod, class("S_2^{2,2} ", Level::R1));
    }

    #[test]
    fn opposite_sides_annihilate() {
        let x = class("S_{1,1}^{0,0}", Level::R1);
        let y = class("S_{2,1}^{0,0}", Level::R1);
        assert!(x.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn even_times_even_formula() {
        // l = 2 against l' = 1: min 1, max 2.
        let a = class("S_{1,2}^{0,0}", Level::R1);
        let b = class("S_{1,1}^{0,0}", Level::R1);
        let prod = a.mul(&b).unwrap();
        assert_eq!(prod, class("S_{1,1}^{0,0} + S_{1,1}^{2,-1}", Level::R1));
    }

    #[test]
    fn square_spreads_over_support() {
        let sq = class("S^{1,1}", Level::R0);
        let prod = sq.mul(&sq).unwrap();
        assert_eq!(
            prod,
            class("S^{2,2} + S^{1,2} + S^{2,1} + S^{1,1}", Level::R0)
        );
    }

    #[test]
    fn unit_and_ring_axioms_on_samples() {
        let one = RingClass::one(Level::R1);
        let samples = [
            class("S_1^{0,0}", Level::R1),
            class("2*S_{1,2}^{0,1} - S_3^{1,2}", Level::R1),
            class("S_{2,3}^{2,0}", Level::R1),
        ];
        for x in &samples {
            assert_eq!(&x.mul(&one).unwrap(), x);
            assert_eq!(&one.mul(x).unwrap(), x);
            for y in &samples {
                assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap(), "commutativity");
                for z in &samples {
                    let left = x.mul(y).unwrap().mul(z).unwrap();
                    let right = x.mul(&y.mul(z).unwrap()).unwrap();
                    assert_eq!(left, right, "associativity");
                }
            }
        }
    }

    #[test]
    fn oracle_on_pinned_cases() {
        // square × square
        let sq = DoubleComplex::elementary(sh("S^{1,1}"), Q);
        assert!(verify_product(&sq, &sq).unwrap());

        // X_1 · Y_1 = 0 in R_1 (the honest tensor is one square)
        let x1 = DoubleComplex::elementary(sh("S_{1,1}^{0,0}"), Q);
        let y1 = DoubleComplex::elementary(sh("S_{2,1}^{0,0}"), Q);
        assert!(verify_product(&x1, &y1).unwrap());
        let t = x1.tensor(&y1).unwrap();
        let mt = multiplicities(&t).unwrap();
        assert!(RingClass::class_of(&mt, Level::R1).is_zero());
        assert_eq!(mt.get(&sh("S^{1,1}")), 1);

        // X_2 · X_1
        let x2 = DoubleComplex::elementary(sh("S_{1,2}^{0,0}"), Q);
        assert!(verify_product(&x2, &x1).unwrap());

        // odd × odd and odd × even
        let odd = DoubleComplex::elementary(sh("S_1^{0,0}"), Q);
        assert!(verify_product(&odd, &odd).unwrap());
        assert!(verify_product(&odd, &x2).unwrap());
    }

    #[test]
    fn level_projections_are_ring_maps_on_samples() {
        let pairs = [
            ("S_1^{0,0} + S^{1,1}", "S_{1,1}^{0,0}"),
            ("2*S^{0,0} - S_0^{0,0}", "S_2^{1,1}"),
        ];
        for (ea, eb) in pairs {
            let a0 = class(ea, Level::R0);
            let b0 = class(eb, Level::R0);
            let prod0 = a0.mul(&b0).unwrap();
            let prod1 = a0
                .project(Level::R1)
                .unwrap()
                .mul(&b0.project(Level::R1).unwrap());
            assert_eq!(
                prod0.project(Level::R1).unwrap(),
                prod1.unwrap(),
                "{ea} × {eb}"
            );
        }
    }

    #[test]
    fn normal_form_round_trip_and_generators() {
        assert_eq!(
            normal_form(&class("S_1^{0,1}", Level::RInf))
                .unwrap()
                .laurent,
            BTreeMap::from([((1, 0, 0), 1)]),
            "R"
        );
        // Dot at (2,1): R·U².
        assert_eq!(
            normal_form(&class("S_3^{2,1}", Level::RInf))
                .unwrap()
                .laurent,
            BTreeMap::from([((1, 2, 0), 1)])
        );
        // X_1.
        let x1 = normal_form(&class("S_{1,1}^{0,0}", Level::R1)).unwrap();
        assert_eq!(x1.x_part, BTreeMap::from([((1, 0, 0), 1)]));

        for expr in ["S_1^{0,0} - 2*S_{2,3}^{4,-1}", "S_5^{2,2} + S_{1,1}^{1,1}"] {
            let x = class(expr, Level::R1);
            let nf = normal_form(&x).unwrap();
            assert_eq!(from_normal_form(&nf, Level::R1).unwrap(), x, "{expr}");
        }
    }

    #[test]
    fn odd_part_is_monomial_iso() {
        // The odd monoid maps isomorphically onto Laurent monomials.
        let r = class("S_1^{0,1}", Level::RInf);
        let u = class("S_1^{1,0}", Level::RInf);
        let l = class("S_1^{1,1}", Level::RInf);
        let prod = r.mul(&u).unwrap().mul(&l).unwrap().mul(&l).unwrap();
        let nf = normal_form(&prod).unwrap();
        assert_eq!(nf.laurent, BTreeMap::from([((1, 1, 2), 1)]));
    }

    #[test]
    fn x_y_annihilation_at_class_level() {
        let x = class("S_{1,1}^{2,0} + 2*S_{1,3}^{0,0}", Level::R1);
        let y = class("S_{2,2}^{0,1}", Level::R1);
        assert!(x.mul(&y).unwrap().is_zero());
    }

    #[test]
    fn first_quadrant_predicate() {
        assert!(class("S_0^{0,0}", Level::R1).is_first_quadrant());
        assert!(!class("S_{1,1}^{2,-1}", Level::R1).is_first_quadrant());
    }

    #[test]
    fn expression_parser_handles_negatives() {
        let x = class("-S_-1^{0,-1} + 3*S_1^{0,0}", Level::R1);
        assert_eq!(x.coefficient(&sh("S_-1^{0,-1}")), -1);
        assert_eq!(x.coefficient(&sh("S_1^{0,0}")), 3);
        // Bare integers are multiples of the unit.
        let y = class("2 + S_1^{0,0}", Level::R1);
        assert_eq!(y.coefficient(&Shape::dot(0, 0)), 2);
        assert!(
            RingClass::parse("S^{1,1}", Level::R1).is_err(),
            "level guard"
        );
    }
}
