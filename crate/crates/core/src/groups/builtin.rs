use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::localring::{teichmueller, RingElt, RingSpec};
use crate::matrix::Mat;

use super::{FiniteGroup, Presentation, DEFAULT_CAP};

/// The builtin presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BuiltinPresentation {
    /// `<S, T | S^7 = T^2 = (ST)^3 = (S^4 T)^4 = 1>` for `SL_3(F_2)`.
    Sunday,
    /// `<A, C | A^p = (A^-1 C)^3 = C^2>` for `SL_2(F_p)`, `p` in {3, 5}.
    Coxeter(u64),
    /// `<tau, eps | tau^3 = eps^2 = 1, eps tau eps^-1 = tau^2>` for `SL_2(F_2)`.
    S3,
}

impl BuiltinPresentation {
    /// The presentation and its standard generator matrices over the prime
    /// field.
    pub fn build(self) -> Result<(Presentation, Vec<Mat>)> {
        match self {
            BuiltinPresentation::Sunday => {
                let f2 = RingSpec::zmod(2, 1)?;
                let a = Mat::from_ints(&f2, &[&[1, 1, 0], &[0, 1, 0], &[0, 0, 1]]);
                let b = Mat::from_ints(&f2, &[&[0, 1, 0], &[0, 0, 1], &[1, 0, 0]]);
                let p = Presentation::parse(
                    "gens: S, T; rel: S^7 = 1; rel: T^2 = 1; rel: (S T)^3 = 1; rel: (S^4 T)^4 = 1",
                )?;
                Ok((p, vec![b.mul(&a), a]))
            }
            BuiltinPresentation::Coxeter(p) if p == 3 || p == 5 => {
                let fp = RingSpec::zmod(p, 1)?;
                let a = Mat::from_ints(&fp, &[&[-1, 0], &[-1, -1]]);
                let c = Mat::from_ints(&fp, &[&[0, 1], &[-1, 0]]);
                let pres = Presentation::parse(&format!("gens: A, C; rel: A^{p} = (A^-1 C)^3 = C^2"))?;
                Ok((pres, vec![a, c]))
            }
            BuiltinPresentation::Coxeter(p) => Err(Error::UnsupportedPresentation(format!(
                "coxeter({p}): only p = 3 and p = 5 are available"
            ))),
            BuiltinPresentation::S3 => {
                let f2 = RingSpec::zmod(2, 1)?;
                let tau = Mat::from_ints(&f2, &[&[0, 1], &[1, 1]]);
                let eps = Mat::from_ints(&f2, &[&[0, 1], &[1, 0]]);
                let p = Presentation::parse(
                    "gens: tau, eps; rel: tau^3 = 1; rel: eps^2 = 1; rel: eps tau eps^-1 = tau^2",
                )?;
                Ok((p, vec![tau, eps]))
            }
        }
    }
}

impl FromStr for BuiltinPresentation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().to_ascii_lowercase();
        match s.as_str() {
            "sunday" => Ok(BuiltinPresentation::Sunday),
            "s3" => Ok(BuiltinPresentation::S3),
            _ => {
                let p = s
                    .strip_prefix("coxeter")
                    .map(|r| r.trim_matches(|c| c == '(' || c == ')'))
                    .and_then(|r| r.parse::<u64>().ok())
                    .ok_or_else(|| Error::UnsupportedPresentation(s.clone()))?;
                Ok(BuiltinPresentation::Coxeter(p))
            }
        }
    }
}

impl fmt::Display for BuiltinPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BuiltinPresentation::Sunday => write!(f, "sunday"),
            BuiltinPresentation::Coxeter(p) => write!(f, "coxeter{p}"),
            BuiltinPresentation::S3 => write!(f, "s3"),
        }
    }
}

/// The small residual groups used throughout.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum NamedGroup {
    Sl2F2,
    Sl2F3,
    Sl2F5,
    Sl3F2,
    Gl2F3,
}

impl NamedGroup {
    pub const ALL: [NamedGroup; 5] = [
        NamedGroup::Sl2F2,
        NamedGroup::Sl2F3,
        NamedGroup::Sl2F5,
        NamedGroup::Sl3F2,
        NamedGroup::Gl2F3,
    ];

    pub fn degree(self) -> usize {
        match self {
            NamedGroup::Sl3F2 => 3,
            _ => 2,
        }
    }

    pub fn field_size(self) -> u64 {
        match self {
            NamedGroup::Sl2F2 | NamedGroup::Sl3F2 => 2,
            NamedGroup::Sl2F3 | NamedGroup::Gl2F3 => 3,
            NamedGroup::Sl2F5 => 5,
        }
    }

    pub fn base_ring(self) -> RingSpec {
        RingSpec::zmod(self.field_size(), 1).expect("prime field")
    }

    /// The presentation matching [`NamedGroup::generators`], if any.
    pub fn presentation(self) -> Option<BuiltinPresentation> {
        match self {
            NamedGroup::Sl2F2 => Some(BuiltinPresentation::S3),
            NamedGroup::Sl2F3 => Some(BuiltinPresentation::Coxeter(3)),
            NamedGroup::Sl2F5 => Some(BuiltinPresentation::Coxeter(5)),
            NamedGroup::Sl3F2 => Some(BuiltinPresentation::Sunday),
            NamedGroup::Gl2F3 => None,
        }
    }

    pub fn generators(self) -> Vec<Mat> {
        match self.presentation() {
            Some(p) => p.build().expect("builtin").1,
            None => {
                let mut gens = BuiltinPresentation::Coxeter(3).build().expect("builtin").1;
                let f3 = self.base_ring();
                gens.push(Mat::from_ints(&f3, &[&[-1, 0], &[0, 1]]));
                gens
            }
        }
    }

    pub fn group(self) -> FiniteGroup {
        FiniteGroup::generate(&self.generators(), DEFAULT_CAP).expect("small group")
    }
}

impl FromStr for NamedGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "sl2f2" => Ok(NamedGroup::Sl2F2),
            "sl2f3" => Ok(NamedGroup::Sl2F3),
            "sl2f5" => Ok(NamedGroup::Sl2F5),
            "sl3f2" => Ok(NamedGroup::Sl3F2),
            "gl2f3" => Ok(NamedGroup::Gl2F3),
            other => Err(Error::Parse(format!("unknown group {other:?}"))),
        }
    }
}

impl fmt::Display for NamedGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            NamedGroup::Sl2F2 => "sl2f2",
            NamedGroup::Sl2F3 => "sl2f3",
            NamedGroup::Sl2F5 => "sl2f5",
            NamedGroup::Sl3F2 => "sl3f2",
            NamedGroup::Gl2F3 => "gl2f3",
        };
        write!(f, "{s}")
    }
}

/// A generator of the cyclic group `k^x`.
pub fn primitive_residue(ring: &RingSpec) -> RingElt {
    let k = ring.residue_field();
    let q = k.residue_field_size();
    let found = k
        .elements()
        .find(|c| {
            !c.is_zero() && {
                let mut ord = 1u64;
                let mut cur = c.clone();
                while !cur.is_one() {
                    cur = &cur * c;
                    ord += 1;
                }
                ord == q - 1
            }
        })
        .expect("finite fields have primitive elements");
    found
}

/// `diag(a, a^-1)` for `a` a Teichmuller root of unity, inside `SL_2(ring)`;
/// a cyclic group of order `#k - 1`.
pub fn teichmueller_torus(ring: &RingSpec) -> Result<FiniteGroup> {
    let omega = teichmueller(ring, &primitive_residue(ring))?;
    let gen = Mat::diagonal(&[omega.clone(), omega.inverse()?]);
    FiniteGroup::generate(&[gen], DEFAULT_CAP)
}
