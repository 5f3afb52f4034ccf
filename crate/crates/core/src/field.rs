//! The three coefficient fields (ℚ, ℚ(i), 𝔽_p) and their exact elements.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Tag for the active coefficient field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum FieldSpec {
    /// The rational numbers ℚ.
    Rationals,
    /// The Gaussian rationals ℚ(i).
    GaussianRationals,
    /// The prime field 𝔽_p.
    PrimeField(u64),
}

impl FieldSpec {
    /// Checks that a prime-field modulus really is prime.
    pub fn check(self) -> Result<Self> {
        if let FieldSpec::PrimeField(p) = self {
            if !is_prime(p) {
                return Err(Error::InvalidArgument(format!("{p} is not prime")));
            }
        }
        Ok(self)
    }

    pub fn zero(self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::zero()),
            FieldSpec::GaussianRationals => Scalar::Gaussian {
                re: BigRational::zero(),
                im: BigRational::zero(),
            },
            FieldSpec::PrimeField(p) => Scalar::Prime {
                value: 0,
                modulus: p,
            },
        }
    }

    pub fn one(self) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::one()),
            FieldSpec::GaussianRationals => Scalar::Gaussian {
                re: BigRational::one(),
                im: BigRational::zero(),
            },
            FieldSpec::PrimeField(p) => Scalar::Prime {
                value: 1 % p,
                modulus: p,
            },
        }
    }

    /// Embeds a signed integer.
    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from(BigInt::from(n))),
            FieldSpec::GaussianRationals => Scalar::Gaussian {
                re: BigRational::from(BigInt::from(n)),
                im: BigRational::zero(),
            },
            FieldSpec::PrimeField(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Prime {
                    value: m,
                    modulus: p,
                }
            }
        }
    }

    /// Short text tag used in documents: `Q`, `Q(i)` or `F<p>`.
    pub fn label(self) -> String {
        match self {
            FieldSpec::Rationals => "Q".into(),
            FieldSpec::GaussianRationals => "Q(i)".into(),
            FieldSpec::PrimeField(p) => format!("F{p}"),
        }
    }

    /// Parses a field tag as produced by [`FieldSpec::label`].
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        match s {
            "Q" | "QQ" | "rationals" => Ok(FieldSpec::Rationals),
            "Q(i)" | "Qi" | "gaussian_rationals" => Ok(FieldSpec::GaussianRationals),
            _ => {
                let body = s
                    .strip_prefix("F_")
                    .or_else(|| s.strip_prefix('F'))
                    .ok_or_else(|| Error::Parse(format!("unknown field tag `{s}`")))?;
                let p: u64 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("unknown field tag `{s}`")))?;
                FieldSpec::PrimeField(p).check()
            }
        }
    }

    /// Parses a scalar literal in this field.
    ///
    /// Rational: `n/d` or `n`. Gaussian: `a/b+c/di` with optional signs and
    /// omitted zero parts (`i`, `-i`, `3i`, `1/2-3/4i`, ...). Prime field:
    /// a bare integer or `k mod p`.
    pub fn parse_scalar(self, s: &str) -> Result<Scalar> {
        let s = s.trim();
        match self {
            FieldSpec::Rationals => Ok(Scalar::Rational(parse_rational(s)?)),
            FieldSpec::GaussianRationals => parse_gaussian(s),
            FieldSpec::PrimeField(p) => {
                let body = match s.split_once("mod") {
                    Some((k, m)) => {
                        let stated: u64 = m
                            .trim()
                            .parse()
                            .map_err(|_| Error::Parse(format!("bad modulus in `{s}`")))?;
                        if stated != p {
                            return Err(Error::FieldMismatch(format!(
                                "scalar `{s}` declares modulus {stated}, field is F{p}"
                            )));
                        }
                        k.trim()
                    }
                    None => s,
                };
                let n: i64 = body
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad prime-field scalar `{s}`")))?;
                Ok(self.from_i64(n))
            }
        }
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.label())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// An exact field element. The variant is determined by the active field.
///
/// Rationals are kept reduced with positive denominator (enforced by
/// `num-rational`); prime-field residues are canonical in `[0, p)`.
///
/// Arithmetic between scalars of different fields panics; matrix-level
/// operations check field compatibility before descending to scalars.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Gaussian { re: BigRational, im: BigRational },
    Prime { value: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Gaussian { .. } => FieldSpec::GaussianRationals,
            Scalar::Prime { modulus, .. } => FieldSpec::PrimeField(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian { re, im } => re.is_zero() && im.is_zero(),
            Scalar::Prime { value, .. } => *value == 0,
        }
    }

    /// The imaginary unit of ℚ(i).
    pub fn i() -> Scalar {
        Scalar::Gaussian {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    /// Builds `n/d` in the given field (`d` must be invertible there).
    pub fn ratio(field: FieldSpec, n: i64, d: i64) -> Scalar {
        assert!(d != 0, "zero denominator");
        let num = field.from_i64(n);
        let den = field.from_i64(d);
        num.mul(
            &den.inverse()
                .expect("denominator not invertible in this field"),
        )
    }

    /// Builds `a + bi` over ℚ(i).
    pub fn gaussian(re: BigRational, im: BigRational) -> Scalar {
        Scalar::Gaussian { re, im }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian {
                    re: a + c,
                    im: b + d,
                }
            }
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => Scalar::Prime {
                value: (a + b) % p,
                modulus: *p,
            },
            _ => panic!("scalar arithmetic across fields"),
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian { re, im } => Scalar::Gaussian { re: -re, im: -im },
            Scalar::Prime { value, modulus } => Scalar::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian { re: a, im: b }, Scalar::Gaussian { re: c, im: d }) => {
                Scalar::Gaussian {
                    re: a * c - b * d,
                    im: a * d + b * c,
                }
            }
            (
                Scalar::Prime {
                    value: a,
                    modulus: p,
                },
                Scalar::Prime {
                    value: b,
                    modulus: q,
                },
            ) if p == q => {
                let prod = (*a as u128 * *b as u128) % (*p as u128);
                Scalar::Prime {
                    value: prod as u64,
                    modulus: *p,
                }
            }
            _ => panic!("scalar arithmetic across fields"),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(a) => Scalar::Rational(a.recip()),
            Scalar::Gaussian { re, im } => {
                let norm = re * re + im * im;
                Scalar::Gaussian {
                    re: re / &norm,
                    im: -(im / &norm),
                }
            }
            Scalar::Prime { value, modulus } => {
                // Fermat: a^(p-2) mod p.
                let mut result: u128 = 1;
                let mut base = *value as u128;
                let mut exp = *modulus - 2;
                let p = *modulus as u128;
                while exp > 0 {
                    if exp & 1 == 1 {
                        result = result * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                Scalar::Prime {
                    value: result as u64,
                    modulus: *modulus,
                }
            }
        })
    }

    /// Complex conjugation: negates the imaginary part over ℚ(i), identity
    /// on ℚ and 𝔽_p.
    pub fn conjugate(&self) -> Scalar {
        match self {
            Scalar::Gaussian { re, im } => Scalar::Gaussian {
                re: re.clone(),
                im: -im,
            },
            other => other.clone(),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => write!(f, "{r}"),
            Scalar::Gaussian { re, im } => {
                if im.is_zero() {
                    write!(f, "{re}")
                } else if re.is_zero() {
                    write!(f, "{im}i")
                } else if im.is_negative() {
                    write!(f, "{re}-{}i", -im)
                } else {
                    write!(f, "{re}+{im}i")
                }
            }
            Scalar::Prime { value, .. } => write!(f, "{value}"),
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    BigRational::from_str(s.trim()).map_err(|_| Error::Parse(format!("bad rational `{s}`")))
}

fn parse_gaussian(s: &str) -> Result<Scalar> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return Err(Error::Parse("empty scalar".into()));
    }
    if !s.ends_with('i') {
        return Ok(Scalar::Gaussian {
            re: parse_rational(&s)?,
            im: BigRational::zero(),
        });
    }
    let body = &s[..s.len() - 1];
    // Split off the imaginary term at the last sign (index > 0).
    let mut split = None;
    for (idx, c) in body.char_indices() {
        if idx > 0 && (c == '+' || c == '-') {
            split = Some(idx);
        }
    }
    let (re_str, im_str) = match split {
        Some(idx) => (&body[..idx], &body[idx..]),
        None => ("", body),
    };
    let im = match im_str {
        "" | "+" => BigRational::one(),
        "-" => -BigRational::one(),
        t => parse_rational(t)?,
    };
    let re = if re_str.is_empty() {
        BigRational::zero()
    } else {
        parse_rational(re_str)?
    };
    Ok(Scalar::Gaussian { re, im })
}
