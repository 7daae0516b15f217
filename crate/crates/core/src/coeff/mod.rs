//! Exact coefficients, sparse matrices, ranks and Smith normal forms.

mod elim;
mod lin;
mod matrix;
mod snf;

pub use elim::rank;
pub use lin::Lin;
pub use matrix::SparseMatrix;
pub use snf::{smith_normal_form, smith_normal_form_bounded, DEFAULT_SNF_COLUMN_BOUND};

use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Exact scalar used for structure constants and assembled matrices.
pub type Scalar = BigRational;

pub fn int(v: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(v))
}

pub fn sign(odd: bool) -> Scalar {
    if odd {
        -Scalar::one()
    } else {
        Scalar::one()
    }
}

/// Parse `"p"` or `"p/q"`; fractions must be in lowest terms with q > 0.
pub fn parse_scalar(s: &str) -> Result<Scalar> {
    let bad = || Error::Schema(format!("malformed scalar literal `{s}`"));
    let t = s.trim();
    match t.split_once('/') {
        None => Ok(Scalar::from_integer(t.parse::<BigInt>().map_err(|_| bad())?)),
        Some((p, q)) => {
            let p: BigInt = p.trim().parse().map_err(|_| bad())?;
            let q: BigInt = q.trim().parse().map_err(|_| bad())?;
            if !q.is_positive() {
                return Err(Error::Schema(format!("denominator of `{s}` must be positive")));
            }
            if !p.gcd(&q).is_one() {
                return Err(Error::Schema(format!("scalar `{s}` is not in lowest terms")));
            }
            Ok(Scalar::new_raw(p, q))
        }
    }
}

pub fn format_scalar(x: &Scalar) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// The ground ring k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CoefficientRing {
    Rationals,
    PrimeField(u32),
    Integers,
}

fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p as u64 {
        if p as u64 % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl CoefficientRing {
    pub fn prime_field(p: u32) -> Result<Self> {
        if p >= 1 << 31 || !is_prime(p) {
            return Err(Error::Invalid(format!("{p} is not a prime below 2^31")));
        }
        Ok(CoefficientRing::PrimeField(p))
    }

    /// Parse the command-line spelling `q`, `z` or `f:P`.
    pub fn parse(s: &str) -> Result<Self> {
        match s.trim() {
            "q" | "Q" => Ok(CoefficientRing::Rationals),
            "z" | "Z" => Ok(CoefficientRing::Integers),
            other => match other.strip_prefix("f:").or_else(|| other.strip_prefix("F:")) {
                Some(p) => {
                    let p: u32 = p
                        .parse()
                        .map_err(|_| Error::Invalid(format!("bad prime in ring `{s}`")))?;
                    Self::prime_field(p)
                }
                None => Err(Error::Invalid(format!("unknown ring `{s}` (use q, z or f:P)"))),
            },
        }
    }

    pub fn is_field(&self) -> bool {
        !matches!(self, CoefficientRing::Integers)
    }

    /// Residue of an exact scalar in F_p, if the denominator is invertible.
    pub fn residue(p: u32, x: &Scalar) -> Option<u64> {
        let pb = BigInt::from(p);
        let num = x.numer().mod_floor(&pb).to_u64()?;
        let den = x.denom().mod_floor(&pb).to_u64()?;
        if den == 0 {
            return None;
        }
        Some(num * elim::inv_mod(den, p as u64) % p as u64)
    }

    /// Canonical representative of `x` in this ring.
    pub fn reduce(&self, x: &Scalar) -> Result<Scalar> {
        match self {
            CoefficientRing::Rationals => Ok(x.clone()),
            CoefficientRing::PrimeField(p) => Self::residue(*p, x)
                .map(|r| Scalar::from_integer(BigInt::from(r)))
                .ok_or_else(|| {
                    Error::Ring(format!(
                        "scalar {} has a denominator divisible by {p}",
                        format_scalar(x)
                    ))
                }),
            CoefficientRing::Integers => {
                if x.is_integer() {
                    Ok(x.clone())
                } else {
                    Err(Error::Ring(format!(
                        "scalar {} is not an integer",
                        format_scalar(x)
                    )))
                }
            }
        }
    }

    pub fn is_zero(&self, x: &Scalar) -> bool {
        match self {
            CoefficientRing::PrimeField(p) => Self::residue(*p, x) == Some(0),
            _ => x.is_zero(),
        }
    }

    pub fn label(&self) -> String {
        match self {
            CoefficientRing::Rationals => "q".into(),
            CoefficientRing::Integers => "z".into(),
            CoefficientRing::PrimeField(p) => format!("f:{p}"),
        }
    }
}

impl fmt::Display for CoefficientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

/// Free rank and torsion invariant factors of ker(d_out) / im(d_in).
///
/// `d_in` maps into the middle space, `d_out` maps out of it.
pub fn homology_dims(
    d_in: &SparseMatrix,
    d_out: &SparseMatrix,
    ring: CoefficientRing,
) -> Result<(usize, Vec<BigInt>)> {
    if d_in.rows() != d_out.cols() {
        return Err(Error::Invalid(format!(
            "incoming matrix has {} rows but outgoing matrix has {} columns",
            d_in.rows(),
            d_out.cols()
        )));
    }
    let comp = d_out.mul(d_in);
    if !comp.is_zero_in(ring) {
        return Err(Error::Invariant("composite of consecutive differentials is nonzero".into()));
    }
    let dim = d_in.rows();
    match ring {
        CoefficientRing::Integers => {
            let out_rank = rank(d_out, CoefficientRing::Rationals)?;
            let factors = smith_normal_form(d_in)?;
            let torsion = factors.iter().filter(|f| !f.is_one()).cloned().collect();
            Ok((dim - out_rank - factors.len(), torsion))
        }
        field => Ok((dim - rank(d_out, field)? - rank(d_in, field)?, Vec::new())),
    }
}
