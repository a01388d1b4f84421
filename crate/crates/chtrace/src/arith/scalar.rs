//! Tagged scalars: exact rationals, exact cyclotomic numbers, or complex
//! floating-point values under one interface.
//!
//! Binary operations promote along the one-way lattice
//! Rational → CycloNum → complex; a pair with no promotion path (for
//! instance two cyclotomic tags with distinct ℓ) is rejected so that the
//! exactness provenance of a computation stays auditable.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::cyclo::{rat_to_f64, CycloNum, Rat};
use crate::error::{Error, Result};

/// Marker for the field a scalar (or a whole algebra) lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScalarTag {
    Rat,
    Cyc(u32),
    C64,
}

impl std::fmt::Display for ScalarTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ScalarTag::Rat => write!(f, "Q"),
            ScalarTag::Cyc(ell) => write!(f, "cyc:{ell}"),
            ScalarTag::C64 => write!(f, "C64"),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Rat(Rat),
    Cyc(CycloNum),
    C64(Complex64),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rat(Rat::zero())
    }

    pub fn one() -> Self {
        Scalar::Rat(Rat::from_integer(BigInt::from(1)))
    }

    pub fn from_i64(n: i64) -> Self {
        Scalar::Rat(Rat::from_integer(BigInt::from(n)))
    }

    pub fn from_rat(n: i64, d: i64) -> Self {
        Scalar::Rat(Rat::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn complex(re: f64, im: f64) -> Self {
        Scalar::C64(Complex64::new(re, im))
    }

    pub fn tag(&self) -> ScalarTag {
        match self {
            Scalar::Rat(_) => ScalarTag::Rat,
            Scalar::Cyc(c) => ScalarTag::Cyc(c.ell()),
            Scalar::C64(_) => ScalarTag::C64,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Cyc(c) => c.is_zero(),
            Scalar::C64(z) => z.re == 0.0 && z.im == 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Scalar::C64(_))
    }

    /// Join of the two tags in the promotion lattice, if one exists.
    pub fn join_tag(a: ScalarTag, b: ScalarTag) -> Result<ScalarTag> {
        use ScalarTag::*;
        match (a, b) {
            (x, y) if x == y => Ok(x),
            (Rat, Cyc(l)) | (Cyc(l), Rat) => Ok(Cyc(l)),
            (Rat, C64) | (C64, Rat) => Ok(C64),
            (Cyc(_), C64) | (C64, Cyc(_)) => Ok(C64),
            (Cyc(l1), Cyc(l2)) => Err(Error::invalid_parameter(format!(
                "no promotion path between cyc:{l1} and cyc:{l2}"
            ))),
            _ => unreachable!(),
        }
    }

    /// Promote this scalar to the given tag along the lattice.
    pub fn promote(&self, target: ScalarTag) -> Result<Scalar> {
        match (self, target) {
            (s, t) if s.tag() == t => Ok(s.clone()),
            (Scalar::Rat(r), ScalarTag::Cyc(ell)) => Ok(Scalar::Cyc(CycloNum::from_rat(ell, r)?)),
            (Scalar::Rat(r), ScalarTag::C64) => Ok(Scalar::C64(Complex64::new(rat_to_f64(r), 0.0))),
            (Scalar::Cyc(c), ScalarTag::C64) => Ok(Scalar::C64(c.embed())),
            (s, t) => Err(Error::invalid_parameter(format!(
                "cannot promote {} to {}",
                s.tag(),
                t
            ))),
        }
    }

    fn promoted_pair(&self, other: &Scalar) -> Result<(Scalar, Scalar)> {
        let tag = Self::join_tag(self.tag(), other.tag())?;
        Ok((self.promote(tag)?, other.promote(tag)?))
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.promoted_pair(other)?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x + y),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => Scalar::Cyc(x.add(&y)),
            (Scalar::C64(x), Scalar::C64(y)) => Scalar::C64(x + y),
            _ => unreachable!(),
        })
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.promoted_pair(other)?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x - y),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => Scalar::Cyc(x.sub(&y)),
            (Scalar::C64(x), Scalar::C64(y)) => Scalar::C64(x - y),
            _ => unreachable!(),
        })
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        let (a, b) = self.promoted_pair(other)?;
        Ok(match (a, b) {
            (Scalar::Rat(x), Scalar::Rat(y)) => Scalar::Rat(x * y),
            (Scalar::Cyc(x), Scalar::Cyc(y)) => Scalar::Cyc(x.mul(&y)),
            (Scalar::C64(x), Scalar::C64(y)) => Scalar::C64(x * y),
            _ => unreachable!(),
        })
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.try_mul(&other.try_inv()?)
    }

    pub fn try_inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::Arithmetic("division by zero".into()));
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Cyc(c) => Scalar::Cyc(c.inv()?),
            Scalar::C64(z) => Scalar::C64(1.0 / z),
        })
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Rat(r) => Scalar::Rat(-r),
            Scalar::Cyc(c) => Scalar::Cyc(c.neg()),
            Scalar::C64(z) => Scalar::C64(-z),
        }
    }

    /// Exact equality on exact tags; literal equality on the complex tag.
    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        let (a, b) = self.promoted_pair(other)?;
        Ok(a == b)
    }

    /// Embedding into complex floating point (ε ↦ exp(2πi/ℓ)).
    pub fn embed(&self) -> Complex64 {
        match self {
            Scalar::Rat(r) => Complex64::new(rat_to_f64(r), 0.0),
            Scalar::Cyc(c) => c.embed(),
            Scalar::C64(z) => *z,
        }
    }

    /// Magnitude of the complex embedding; ranking device for probes.
    pub fn abs_embed(&self) -> f64 {
        self.embed().norm()
    }

    pub fn as_rat(&self) -> Option<Rat> {
        match self {
            Scalar::Rat(r) => Some(r.clone()),
            Scalar::Cyc(c) => c.as_rat(),
            Scalar::C64(_) => None,
        }
    }
}

// Panicking operator conveniences for internal code where tags are
// uniform by construction. Public entry points validate tags first.
impl std::ops::Add for &Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        self.try_add(rhs).expect("scalar tag mismatch in add")
    }
}

impl std::ops::Sub for &Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self.try_sub(rhs).expect("scalar tag mismatch in sub")
    }
}

impl std::ops::Mul for &Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        self.try_mul(rhs).expect("scalar tag mismatch in mul")
    }
}

impl std::ops::Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar::neg(self)
    }
}

impl std::fmt::Display for Scalar {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Scalar::Rat(r) => write!(f, "{r}"),
            Scalar::Cyc(c) => write!(f, "{c}"),
            Scalar::C64(z) => write!(f, "{}+{}i", z.re, z.im),
        }
    }
}

// ---- serde: tagged JSON forms ----
// {"tag":"rat","n":"-3","d":"7"}
// {"tag":"cyc","ell":5,"coeffs":[{"n":"1","d":"2"},...]}
// {"tag":"c64","re":0.5,"im":-1.0}

#[derive(Serialize, Deserialize)]
struct RatJson {
    n: String,
    d: String,
}

fn rat_to_json(r: &Rat) -> RatJson {
    RatJson {
        n: r.numer().to_string(),
        d: r.denom().to_string(),
    }
}

fn rat_from_json(j: &RatJson) -> std::result::Result<Rat, String> {
    let n: BigInt = j.n.parse().map_err(|_| format!("bad integer {:?}", j.n))?;
    let d: BigInt = j.d.parse().map_err(|_| format!("bad integer {:?}", j.d))?;
    if d.is_zero() {
        return Err("zero denominator".into());
    }
    Ok(Rat::new(n, d))
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "tag")]
enum ScalarJson {
    #[serde(rename = "rat")]
    Rat { n: String, d: String },
    #[serde(rename = "cyc")]
    Cyc { ell: u32, coeffs: Vec<RatJson> },
    #[serde(rename = "c64")]
    C64 { re: f64, im: f64 },
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let j = match self {
            Scalar::Rat(r) => ScalarJson::Rat {
                n: r.numer().to_string(),
                d: r.denom().to_string(),
            },
            Scalar::Cyc(c) => ScalarJson::Cyc {
                ell: c.ell(),
                coeffs: c.coeffs().iter().map(rat_to_json).collect(),
            },
            Scalar::C64(z) => ScalarJson::C64 { re: z.re, im: z.im },
        };
        j.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let j = ScalarJson::deserialize(deserializer)?;
        match j {
            ScalarJson::Rat { n, d } => rat_from_json(&RatJson { n, d })
                .map(Scalar::Rat)
                .map_err(D::Error::custom),
            ScalarJson::Cyc { ell, coeffs } => {
                let coeffs: std::result::Result<Vec<Rat>, String> =
                    coeffs.iter().map(rat_from_json).collect();
                let coeffs = coeffs.map_err(D::Error::custom)?;
                CycloNum::from_coeffs(ell, coeffs)
                    .map(Scalar::Cyc)
                    .map_err(|e| D::Error::custom(e.to_string()))
            }
            ScalarJson::C64 { re, im } => Ok(Scalar::C64(Complex64::new(re, im))),
        }
    }
}

/// Parse a scalar from the shorthand forms accepted in data files:
/// a JSON integer, a string "p/q" or "p", or the full tagged object.
pub fn scalar_from_json_value(v: &serde_json::Value) -> Result<Scalar> {
    match v {
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Ok(Scalar::from_i64(i))
            } else {
                Ok(Scalar::C64(Complex64::new(n.as_f64().unwrap(), 0.0)))
            }
        }
        serde_json::Value::String(s) => parse_rat_shorthand(s),
        other => serde_json::from_value(other.clone())
            .map_err(|e| Error::Parse(format!("bad scalar: {e}"))),
    }
}

fn parse_rat_shorthand(s: &str) -> Result<Scalar> {
    let s = s.trim();
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator {n:?}")))?;
        let d: BigInt = d
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator {d:?}")))?;
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        Ok(Scalar::Rat(Rat::new(n, d)))
    } else {
        let n: BigInt = s
            .parse()
            .map_err(|_| Error::Parse(format!("bad integer {s:?}")))?;
        Ok(Scalar::Rat(Rat::from_integer(n)))
    }
}

pub fn rat_is_integer(r: &Rat) -> bool {
    r.denom().abs().to_i64() == Some(1)
}
