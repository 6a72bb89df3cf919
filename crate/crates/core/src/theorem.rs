//! Checks the cutting criterion against cohomology on one complex.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::WitnessCertificate;
use crate::complex::SimplicialComplex;
use crate::domain::{scan_domains, Domain, ScanMode};
use crate::homology::homology_summary;
use crate::tower::Tower;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub complex_hash: String,
    pub betti: Vec<usize>,
    pub h1_trivial: bool,
    pub max_facets: usize,
    pub scan_mode: ScanMode,
    pub candidates_tested: usize,
    /// Connected domains with disconnected boundary.
    pub disconnected_boundary_domains: usize,
    /// Cutting domains whose boundary is connected. Always zero in theory.
    pub connected_boundary_cuts: usize,
    /// Non-cutting connected domains with disconnected boundary, sorted.
    pub non_cutting_witnesses: Vec<WitnessCertificate>,
    /// Trivial cohomology implies no witness was found.
    pub consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TheoremError {
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("candidate budget exhausted after {} domains", partial.candidates_tested)]
    BudgetExceeded { partial: Box<TheoremReport> },
}

pub fn theorem_check(complex: &SimplicialComplex, max_facets: usize) -> Result<TheoremReport, TheoremError> {
    theorem_check_with_limit(complex, max_facets, None)
}

/// As [`theorem_check`], giving up after `limit` candidate domains.
pub fn theorem_check_with_limit(
    complex: &SimplicialComplex,
    max_facets: usize,
    limit: Option<usize>,
) -> Result<TheoremReport, TheoremError> {
    if max_facets == 0 {
        return Err(TheoremError::Precondition("max_facets must be positive".into()));
    }
    if !complex.validate().is_admissible() {
        return Err(TheoremError::Precondition("complex is not a closed connected pseudomanifold".into()));
    }
    let cohomology = homology_summary(complex);
    let mut witnesses = Vec::new();
    let (mut disconnected, mut violations) = (0, 0);
    let outcome = scan_domains(complex, max_facets, limit, |facets, s| {
        if s.domain_connected && s.boundary_components >= 2 {
            disconnected += 1;
        }
        if s.cuts() && s.boundary_components < 2 {
            violations += 1;
        }
        if s.is_witness() {
            witnesses.push(facets.to_vec());
        }
    });
    witnesses.sort();
    let tower = Tower::new(complex.clone());
    let non_cutting_witnesses: Vec<WitnessCertificate> = witnesses
        .into_iter()
        .map(|f| {
            let domain = Domain::new(complex, f).expect("scanned domain is proper");
            WitnessCertificate::for_domain(&tower, &domain, &domain.cut_report())
        })
        .collect();
    let report = TheoremReport {
        complex_hash: complex.hash(),
        betti: cohomology.betti.clone(),
        h1_trivial: cohomology.h1_trivial,
        max_facets,
        scan_mode: outcome.mode,
        candidates_tested: outcome.tested,
        disconnected_boundary_domains: disconnected,
        connected_boundary_cuts: violations,
        consistent: !cohomology.h1_trivial || non_cutting_witnesses.is_empty(),
        non_cutting_witnesses,
    };
    if outcome.complete {
        Ok(report)
    } else {
        Err(TheoremError::BudgetExceeded { partial: Box::new(report) })
    }
}
