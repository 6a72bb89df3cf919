//! Self-contained witness certificates and their independent re-verification.
//!
//! A certificate names a base complex (embedded, with its hash), a
//! subdivision depth, and a domain on the subdivided complex. Everything it
//! claims is recomputed from those three inputs by [`check_certificate`].

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::complex::{ComplexError, SimplicialComplex};
use crate::domain::{CutReport, Domain, DomainError};
use crate::homology::{
    boundary_of_chain, is_coboundary, is_cocycle, pairing, EdgeValues, IntegerChain, IntegerCochain,
};
use crate::tower::Tower;

pub const CERTIFICATE_FORMAT: &str = "h1cut-witness/1";

/// Facet list of a complex as stored inside certificates and reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexRecord {
    pub dim: usize,
    pub vertices: usize,
    pub facets: Vec<Vec<usize>>,
}

impl ComplexRecord {
    pub fn new(complex: &SimplicialComplex) -> Self {
        Self {
            dim: complex.dim(),
            vertices: complex.vertex_count(),
            facets: complex.facets().to_vec(),
        }
    }

    /// Rebuilds the complex through the `.sc` parser so the same validation
    /// applies to embedded and on-disk complexes.
    pub fn to_complex(&self) -> Result<SimplicialComplex, ComplexError> {
        let mut text = format!("dim {}\nvertices {}\n", self.dim, self.vertices);
        for f in &self.facets {
            let line: Vec<String> = f.iter().map(usize::to_string).collect();
            text.push_str(&line.join(" "));
            text.push('\n');
        }
        let complex = SimplicialComplex::parse_sc(&text)?;
        // Parsing sorts each facet; a record with unsorted or repeated facets
        // would not describe the stored facet order.
        if complex.facets() != self.facets.as_slice() {
            return Err(ComplexError::Parse {
                line: 0,
                message: "facets must be sorted and distinct".into(),
            });
        }
        Ok(complex)
    }
}

/// The claims of a [`CutReport`] that a certificate records.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutVerdicts {
    pub domain_connected: bool,
    pub boundary_components: usize,
    /// SHA-256 of the canonical boundary simplex list.
    pub boundary_digest: String,
    pub complement_connected: bool,
    pub cuts: bool,
}

impl From<&CutReport> for CutVerdicts {
    fn from(r: &CutReport) -> Self {
        Self {
            domain_connected: r.domain_connected,
            boundary_components: r.boundary.component_count,
            boundary_digest: r.boundary.digest(),
            complement_connected: r.complement_connected,
            cuts: r.cuts,
        }
    }
}

/// One candidate considered while constructing a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogEntry {
    pub source: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cocycle: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub component: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub domain_size: Option<usize>,
    pub outcome: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub format: String,
    pub base_complex_hash: String,
    pub base_complex: ComplexRecord,
    /// The domain lives on the base complex subdivided this many times.
    pub subdivision_depth: usize,
    pub domain: Vec<usize>,
    pub cut: CutVerdicts,
    /// Winding cocycle on the base complex.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cocycle: Option<EdgeValues>,
    /// Closed loop on the base complex paired against `cocycle`.
    #[serde(rename = "loop", skip_serializing_if = "Option::is_none", default)]
    pub loop_cycle: Option<EdgeValues>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub pairing_value: Option<i64>,
    #[serde(default)]
    pub construction_log: Vec<LogEntry>,
}

impl WitnessCertificate {
    /// A certificate for `domain`, a domain on `tower.top()`; the tower's
    /// base is the certificate's base complex.
    pub fn for_domain(tower: &Tower, domain: &Domain<'_>, report: &CutReport) -> Self {
        Self {
            format: CERTIFICATE_FORMAT.to_string(),
            base_complex_hash: tower.base().hash(),
            base_complex: ComplexRecord::new(tower.base()),
            subdivision_depth: tower.depth(),
            domain: domain.facets().to_vec(),
            cut: CutVerdicts::from(report),
            cocycle: None,
            loop_cycle: None,
            pairing_value: None,
            construction_log: Vec::new(),
        }
    }

    pub fn with_cocycle(mut self, base: &SimplicialComplex, z: &IntegerCochain, loop_cycle: &IntegerChain, value: i64) -> Self {
        self.cocycle = Some(EdgeValues::new(base, &z.values));
        self.loop_cycle = Some(EdgeValues::new(base, &loop_cycle.values));
        self.pairing_value = Some(value);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("certificate serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertificateFailure {
    #[error("unknown certificate format {0:?}")]
    Format(String),
    #[error("embedded complex is invalid: {0}")]
    Complex(#[from] ComplexError),
    #[error("complex hash mismatch")]
    Hash,
    #[error("domain is invalid: {0}")]
    Domain(#[from] DomainError),
    #[error("domain list is not sorted and duplicate free")]
    UnsortedDomain,
    #[error("recorded verdicts differ from recomputed ones")]
    Verdicts,
    #[error("domain is not a non-cutting connected domain with disconnected boundary")]
    NotAWitness,
    #[error("cochain data does not match the base complex edges")]
    EdgeLayout,
    #[error("attached cochain is not a cocycle")]
    NotACocycle,
    #[error("attached cocycle is a coboundary")]
    Coboundary,
    #[error("attached loop is not a cycle")]
    NotACycle,
    #[error("pairing is {found}, certificate states {stated}")]
    Pairing { stated: i64, found: i64 },
    #[error("cocycle, loop and pairing value must be given together")]
    Incomplete,
}

/// Re-derives every claim of `cert` from scratch.
pub fn check_certificate(cert: &WitnessCertificate) -> Result<(), CertificateFailure> {
    if cert.format != CERTIFICATE_FORMAT {
        return Err(CertificateFailure::Format(cert.format.clone()));
    }
    let base = cert.base_complex.to_complex()?;
    if base.hash() != cert.base_complex_hash {
        return Err(CertificateFailure::Hash);
    }
    if cert.domain.windows(2).any(|w| w[0] >= w[1]) {
        return Err(CertificateFailure::UnsortedDomain);
    }
    let tower = Tower::with_depth(base.clone(), cert.subdivision_depth);
    let domain = Domain::new(tower.top(), cert.domain.iter().copied())?;
    let report = domain.cut_report();
    if CutVerdicts::from(&report) != cert.cut {
        return Err(CertificateFailure::Verdicts);
    }
    if !report.is_witness() {
        return Err(CertificateFailure::NotAWitness);
    }
    match (&cert.cocycle, &cert.loop_cycle, cert.pairing_value) {
        (None, None, None) => Ok(()),
        (Some(z), Some(c), Some(stated)) => {
            if !z.matches(&base) || !c.matches(&base) {
                return Err(CertificateFailure::EdgeLayout);
            }
            let z = IntegerCochain::one(z.values.clone());
            let c = IntegerChain::one(c.values.clone());
            if !is_cocycle(&base, &z) {
                return Err(CertificateFailure::NotACocycle);
            }
            if is_coboundary(&base, &z).map_err(|_| CertificateFailure::NotACocycle)? {
                return Err(CertificateFailure::Coboundary);
            }
            if boundary_of_chain(&base, &c).iter().any(|x| *x != 0) {
                return Err(CertificateFailure::NotACycle);
            }
            let found = pairing(&base, &z, &c).map_err(|_| CertificateFailure::NotACycle)?;
            if found != stated {
                return Err(CertificateFailure::Pairing { stated, found });
            }
            Ok(())
        }
        _ => Err(CertificateFailure::Incomplete),
    }
}

pub fn verify_certificate(cert: &WitnessCertificate) -> bool {
    check_certificate(cert).is_ok()
}
