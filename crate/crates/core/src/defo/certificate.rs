//! JSON lift certificates. Ring elements are canonical coefficient vectors
//! (constant term first), matrices are row-major lists of elements, and
//! transvection indices are 1-based.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::localring::{RingElt, RingHom, RingSpec};
use crate::matrix::Mat;
use crate::normalize::GeneratorLift;

use super::Lift;

pub const SCHEMA_VERSION: u32 = 1;

pub type EltJson = Vec<u64>;
pub type MatJson = Vec<EltJson>;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ImageEntry {
    Transvection {
        a: usize,
        b: usize,
        r: EltJson,
        image: MatJson,
    },
    Named {
        name: String,
        image: MatJson,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusEntry {
    pub element: MatJson,
    pub image: MatJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomJson {
    pub source: String,
    pub target: String,
    pub x_image: EltJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub schema_version: u32,
    /// The target ring `S`.
    pub ring: String,
    /// The residue field.
    pub base_ring: String,
    /// The ring `R` of a transvection-family lift of `SL_n(R)`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source_ring: Option<String>,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub presentation: Option<String>,
    pub generator_images: Vec<ImageEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub torus_images: Option<Vec<TorusEntry>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator: Option<MatJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub hom: Option<HomJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub conjugator_chain: Option<Vec<MatJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub recovered_hom: Option<HomJson>,
}

fn cert_err(msg: impl Into<String>) -> Error {
    Error::Certificate(msg.into())
}

pub fn encode_elt(x: &RingElt) -> EltJson {
    x.coeffs().to_vec()
}

pub fn decode_elt(ring: &RingSpec, v: &[u64]) -> Result<RingElt> {
    ring.elt_from_canonical(v)
}

pub fn encode_mat(m: &Mat) -> MatJson {
    m.entries().iter().flatten().map(encode_elt).collect()
}

pub fn decode_mat(ring: &RingSpec, n: usize, v: &[EltJson]) -> Result<Mat> {
    if v.len() != n * n {
        return Err(cert_err(format!("expected {} entries, got {}", n * n, v.len())));
    }
    let rows: Vec<Vec<RingElt>> = v
        .chunks(n)
        .map(|row| row.iter().map(|e| decode_elt(ring, e)).collect())
        .collect::<Result<_>>()?;
    Mat::from_rows(ring, &rows)
}

pub fn encode_hom(f: &RingHom) -> HomJson {
    HomJson {
        source: f.source().to_string(),
        target: f.target().to_string(),
        x_image: encode_elt(f.x_image()),
    }
}

pub fn decode_hom(h: &HomJson) -> Result<RingHom> {
    let source: RingSpec = h.source.parse()?;
    let target: RingSpec = h.target.parse()?;
    RingHom::new(&source, &target, decode_elt(&target, &h.x_image)?)
}

impl Certificate {
    fn empty(ring: &RingSpec, n: usize) -> Certificate {
        Certificate {
            schema_version: SCHEMA_VERSION,
            ring: ring.to_string(),
            base_ring: ring.residue_field().to_string(),
            source_ring: None,
            n,
            presentation: None,
            generator_images: Vec::new(),
            torus_images: None,
            conjugator: None,
            hom: None,
            conjugator_chain: None,
            recovered_hom: None,
        }
    }

    /// A certificate for a lift of a presented group; `names` label the
    /// generators in order.
    pub fn from_lift(lift: &Lift, presentation: Option<String>, names: &[String]) -> Result<Certificate> {
        if names.len() != lift.images().len() {
            return Err(cert_err("one name per generator is required"));
        }
        let mut cert = Certificate::empty(lift.target(), lift.degree());
        cert.presentation = presentation;
        cert.generator_images = names
            .iter()
            .zip(lift.images())
            .map(|(name, m)| ImageEntry::Named {
                name: name.clone(),
                image: encode_mat(m),
            })
            .collect();
        Ok(cert)
    }

    /// Named images over the target ring in certificate order.
    pub fn named_images(&self) -> Result<Vec<(String, Mat)>> {
        let ring = self.target()?;
        self.generator_images
            .iter()
            .map(|e| match e {
                ImageEntry::Named { name, image } => {
                    Ok((name.clone(), decode_mat(&ring, self.n, image)?))
                }
                ImageEntry::Transvection { .. } => {
                    Err(cert_err("expected named generator images"))
                }
            })
            .collect()
    }

    pub fn from_generator_lift(lift: &GeneratorLift) -> Certificate {
        let mut cert = Certificate::empty(lift.target(), lift.n());
        cert.source_ring = Some(lift.source().to_string());
        cert.generator_images = lift
            .entries()
            .map(|((a, b), r, m)| ImageEntry::Transvection {
                a: a + 1,
                b: b + 1,
                r: encode_elt(&r),
                image: encode_mat(m),
            })
            .collect();
        cert.torus_images = lift.torus().map(|t| {
            t.iter()
                .map(|(d, m)| TorusEntry {
                    element: encode_mat(d),
                    image: encode_mat(m),
                })
                .collect()
        });
        cert
    }

    pub fn target(&self) -> Result<RingSpec> {
        let ring: RingSpec = self.ring.parse()?;
        if ring.residue_field().to_string() != self.base_ring {
            return Err(cert_err(format!(
                "base ring {} is not the residue field of {}",
                self.base_ring, self.ring
            )));
        }
        Ok(ring)
    }

    /// Rebuilds the transvection family, checking residues and relations.
    pub fn to_generator_lift(&self) -> Result<GeneratorLift> {
        let target = self.target()?;
        let source: RingSpec = self
            .source_ring
            .as_deref()
            .ok_or_else(|| cert_err("source_ring is required for a transvection family"))?
            .parse()?;
        let n = self.n;
        let mut table = std::collections::HashMap::new();
        for e in &self.generator_images {
            let ImageEntry::Transvection { a, b, r, image } = e else {
                return Err(cert_err("expected transvection images"));
            };
            if *a == 0 || *b == 0 || a == b || *a > n || *b > n {
                return Err(cert_err(format!("bad indices ({a}, {b})")));
            }
            let r = decode_elt(&source, r)?;
            let m = decode_mat(&target, n, image)?;
            if table.insert((a - 1, b - 1, source.index_of(&r)), m).is_some() {
                return Err(cert_err(format!("duplicate image for ({a}, {b}, {r})")));
            }
        }
        let torus = self
            .torus_images
            .as_ref()
            .map(|t| {
                t.iter()
                    .map(|e| {
                        Ok((
                            decode_mat(&source, n, &e.element)?,
                            decode_mat(&target, n, &e.image)?,
                        ))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        GeneratorLift::new(
            &source,
            &target,
            n,
            |a, b, r| {
                table
                    .remove(&(a, b, source.index_of(r)))
                    .ok_or_else(|| cert_err(format!("missing image for ({}, {}, {r})", a + 1, b + 1)))
            },
            torus,
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Certificate> {
        let cert: Certificate =
            serde_json::from_str(text).map_err(|e| cert_err(e.to_string()))?;
        if cert.schema_version != SCHEMA_VERSION {
            return Err(cert_err(format!(
                "unsupported schema version {}",
                cert.schema_version
            )));
        }
        Ok(cert)
    }
}
