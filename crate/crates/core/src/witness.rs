//! From a nontrivial cocycle to a verified non-cutting domain.
//!
//! The cocycle's mod-2 Poincaré dual is a codimension-1 cycle in the first
//! subdivision. A component of it that is two-sided and non-separating has a
//! collar in the second subdivision which is connected, has two boundary
//! components and does not cut.

use std::collections::{HashMap, HashSet};

use petgraph::unionfind::UnionFind;
use thiserror::Error;

use crate::certificate::{check_certificate, LogEntry, WitnessCertificate};
use crate::circle_map::{build_circle_map, certify_nontrivial, thicken, CircleMapError, CircleMapResult, MAX_RETRIES};
use crate::complex::{Simplex, SimplicialComplex};
use crate::domain::{enumerate_candidates, Domain};
use crate::homology::{
    cocycle_basis, fundamental_cycles, homology_summary, is_coboundary, is_cocycle, pairing, HomologyError,
    IntegerCochain,
};
use crate::tower::Tower;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("cocycle is a coboundary")]
    TrivialClass,
    #[error("cocycle is even on every edge; its mod-2 dual is empty")]
    EmptySurface,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("no witness found within budget after {} candidates", log.len())]
    SearchExhausted { log: Vec<LogEntry> },
    #[error(transparent)]
    CircleMap(#[from] CircleMapError),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// Mod-2 dual of a 1-cocycle.
#[derive(Debug, Clone)]
pub struct DualHypersurface {
    /// Base complex and its first subdivision, which carries the cells.
    pub tower: Tower,
    /// `(d - 1)`-simplices of the subdivision, in canonical order.
    pub cells: Vec<Simplex>,
    /// Cell indices grouped into connected pieces, ordered by smallest cell.
    pub components: Vec<Vec<usize>>,
    pub source_cocycle: IntegerCochain,
}

/// Builds the mod-2 dual of `z`: every flag simplex of `Sd K` whose smallest
/// element is an edge on which `z` is odd.
pub fn dual_hypersurface(complex: &SimplicialComplex, z: &IntegerCochain) -> Result<DualHypersurface, WitnessError> {
    if !is_cocycle(complex, z) {
        return Err(WitnessError::NotACocycle);
    }
    if is_coboundary(complex, z)? {
        return Err(WitnessError::TrivialClass);
    }
    if z.is_even() {
        return Err(WitnessError::EmptySurface);
    }
    let tower = Tower::with_depth(complex.clone(), 1);
    let sd = tower.top();
    let d = complex.dim();
    let carriers: Vec<Simplex> = (0..sd.vertex_count()).map(|v| tower.carrier(1, &[v], 0)).collect();
    let odd_edge = |s: &Simplex| s.len() == 2 && z.values[complex.index_of(s).expect("edge")] % 2 != 0;
    let cells: Vec<Simplex> = sd
        .faces(d - 1)
        .iter()
        .filter(|cell| {
            let smallest = cell.iter().map(|v| &carriers[*v]).min_by_key(|c| c.len()).expect("non-empty");
            odd_edge(smallest)
        })
        .cloned()
        .collect();
    if cells.is_empty() {
        return Err(WitnessError::EmptySurface);
    }

    let mut ridge_index: HashMap<Simplex, usize> = HashMap::new();
    let mut uf = UnionFind::<usize>::new(cells.len());
    if d >= 2 {
        let mut incidence: HashMap<Simplex, usize> = HashMap::new();
        for (i, cell) in cells.iter().enumerate() {
            for face in crate::complex::drop_each(cell) {
                *incidence.entry(face.clone()).or_default() += 1;
                match ridge_index.get(&face) {
                    Some(&j) => {
                        uf.union(i, j);
                    }
                    None => {
                        ridge_index.insert(face, i);
                    }
                }
            }
        }
        assert!(
            incidence.values().all(|n| n % 2 == 0),
            "dual of a cocycle must be a mod-2 cycle"
        );
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot: HashMap<usize, usize> = HashMap::new();
    for i in 0..cells.len() {
        let root = uf.find(i);
        let g = *slot.entry(root).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[g].push(i);
    }
    Ok(DualHypersurface {
        tower,
        cells,
        components: groups,
        source_cocycle: z.clone(),
    })
}

impl DualHypersurface {
    /// Closure of one component as a set of simplices of `Sd K`.
    fn closure(&self, component: usize) -> HashSet<Simplex> {
        let mut faces = HashSet::new();
        for &i in &self.components[component] {
            let cell = &self.cells[i];
            for mask in 1u32..(1 << cell.len()) {
                faces.insert(
                    cell.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, v)| *v).collect::<Simplex>(),
                );
            }
        }
        faces
    }

    /// Whether removing the component disconnects `Sd K`: facets are joined
    /// through any shared face off the component.
    pub fn separates(&self, component: usize) -> bool {
        let sd = self.tower.top();
        let closed = self.closure(component);
        let n = sd.facet_count();
        let mut uf = UnionFind::<usize>::new(n);
        let mut first: HashMap<Simplex, usize> = HashMap::new();
        for (f, facet) in sd.facets().iter().enumerate() {
            for mask in 1u32..(1 << facet.len()) {
                let face: Simplex =
                    facet.iter().enumerate().filter(|(j, _)| mask >> j & 1 == 1).map(|(_, v)| *v).collect();
                if closed.contains(&face) {
                    continue;
                }
                match first.get(&face) {
                    Some(&g) => {
                        uf.union(f, g);
                    }
                    None => {
                        first.insert(face, f);
                    }
                }
            }
        }
        let root = uf.find(0);
        (1..n).any(|f| uf.find(f) != root)
    }

    /// Facet neighbourhood of one component in `Sd² K`.
    pub fn collar(&self, component: usize) -> Collar {
        let mut tower = self.tower.clone();
        tower.subdivide();
        let closed = self.closure(component);
        let carriers = tower.vertex_carriers(1);
        let near: Vec<bool> = carriers.iter().map(|c| closed.contains(c)).collect();
        let facets = tower
            .top()
            .facets()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.iter().any(|v| near[*v]))
            .map(|(i, _)| i)
            .collect();
        Collar { tower, facets }
    }
}

/// A domain on `tower.top()`.
#[derive(Debug, Clone)]
pub struct Collar {
    pub tower: Tower,
    pub facets: Vec<usize>,
}

impl Collar {
    pub fn domain(&self) -> Domain<'_> {
        Domain::new(self.tower.top(), self.facets.iter().copied()).expect("collar is a proper non-empty facet set")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WitnessOptions {
    /// Run the circle map on the witness and attach its winding cocycle.
    pub full_pipeline: bool,
    /// Largest domain tried by the enumeration fallback.
    pub fallback_max_facets: usize,
    pub retries: usize,
    /// Refuse to build circle maps on ambient complexes larger than this.
    pub max_ambient_facets: usize,
}

impl Default for WitnessOptions {
    fn default() -> Self {
        Self {
            full_pipeline: false,
            fallback_max_facets: 16,
            retries: MAX_RETRIES,
            max_ambient_facets: 2_000_000,
        }
    }
}

/// Everything the full pipeline produces.
#[derive(Debug, Clone)]
pub struct PipelineResult {
    pub certificate: WitnessCertificate,
    pub circle_map: CircleMapResult,
}

/// Searches for a verified witness on `complex` with default options.
pub fn construct_witness(complex: &SimplicialComplex) -> Result<WitnessCertificate, WitnessError> {
    construct_witness_with(complex, &WitnessOptions::default())
}

/// The witness, then circle map, winding cocycle and certificate.
pub fn full_pipeline(complex: &SimplicialComplex, options: &WitnessOptions) -> Result<PipelineResult, WitnessError> {
    let options = WitnessOptions { full_pipeline: true, ..*options };
    let mut cert = construct_witness_with(complex, &options)?;
    let tower = Tower::with_depth(complex.clone(), cert.subdivision_depth);
    let result = circle_map_for(&tower, &cert.domain, &options)?;
    let log = std::mem::take(&mut cert.construction_log);
    let mut certificate = certify_nontrivial(&result)?;
    certificate.construction_log = log;
    Ok(PipelineResult { certificate, circle_map: result })
}

fn circle_map_for(tower: &Tower, domain: &[usize], options: &WitnessOptions) -> Result<CircleMapResult, CircleMapError> {
    let growth = (1..=tower.top().dim() + 1).product::<usize>().pow(2);
    let estimate = tower.top().facet_count().saturating_mul(growth);
    if estimate > options.max_ambient_facets {
        return Err(CircleMapError::AmbientTooLarge { facets: estimate });
    }
    let thickening = thicken(tower.clone(), domain, options.retries)?;
    build_circle_map(&thickening)
}

const ONE_SIDED: &str = "one-sided collar; the doubled boundary class has even pairing, discarded";

pub fn construct_witness_with(complex: &SimplicialComplex, options: &WitnessOptions) -> Result<WitnessCertificate, WitnessError> {
    let report = complex.validate();
    if !report.is_admissible() {
        return Err(WitnessError::PreconditionViolated("complex is not a closed connected pseudomanifold".into()));
    }
    if homology_summary(complex).h1_trivial {
        return Err(WitnessError::PreconditionViolated("first cohomology is trivial".into()));
    }
    let mut log = Vec::new();
    let basis = cocycle_basis(complex)?;
    for (index, z) in basis.iter().enumerate() {
        let entry = |component, domain_size, outcome: &str| LogEntry {
            source: "dual".into(),
            cocycle: Some(index),
            component,
            domain_size,
            outcome: outcome.to_string(),
        };
        let surface = match dual_hypersurface(complex, z) {
            Ok(s) => s,
            Err(e) => {
                log.push(entry(None, None, &e.to_string()));
                continue;
            }
        };
        for component in 0..surface.components.len() {
            let collar = surface.collar(component);
            let domain = collar.domain();
            let cut = domain.cut_report();
            assert_eq!(
                cut.complement_connected,
                !surface.separates(component),
                "collar complement connectivity must match separation by the dual component"
            );
            let outcome = if !cut.domain_connected {
                "collar is not connected"
            } else if cut.boundary.component_count < 2 {
                ONE_SIDED
            } else if cut.cuts {
                "dual component separates; collar cuts"
            } else {
                "accepted"
            };
            log.push(entry(Some(component), Some(collar.facets.len()), outcome));
            if outcome != "accepted" {
                continue;
            }
            let cert = WitnessCertificate::for_domain(&collar.tower, &domain, &cut);
            if let Some(cert) = finish(cert, complex, z, &mut log, options) {
                return Ok(cert);
            }
        }
    }

    let mut budget = 4.min(options.fallback_max_facets);
    loop {
        for domain in enumerate_candidates(complex, budget) {
            let cut = domain.cut_report();
            if cut.cuts {
                continue;
            }
            log.push(LogEntry {
                source: "enumeration".into(),
                cocycle: None,
                component: None,
                domain_size: Some(domain.facets().len()),
                outcome: "accepted".into(),
            });
            let tower = Tower::new(complex.clone());
            let cert = WitnessCertificate::for_domain(&tower, &domain, &cut);
            let z = basis.first().expect("nontrivial cohomology has a basis");
            if let Some(cert) = finish(cert, complex, z, &mut log, options) {
                return Ok(cert);
            }
        }
        log.push(LogEntry {
            source: "enumeration".into(),
            cocycle: None,
            component: None,
            domain_size: Some(budget),
            outcome: "no non-cutting domain within budget".into(),
        });
        if budget >= options.fallback_max_facets {
            return Err(WitnessError::SearchExhausted { log });
        }
        budget = (budget * 2).min(options.fallback_max_facets);
    }
}

/// Attaches a cocycle with a loop it pairs nontrivially with, re-verifies,
/// and records the construction log. Without the full pipeline the attached
/// class is the source cocycle; the pipeline replaces it with the winding
/// cocycle of the witness.
fn finish(
    cert: WitnessCertificate,
    complex: &SimplicialComplex,
    z: &IntegerCochain,
    log: &mut [LogEntry],
    options: &WitnessOptions,
) -> Option<WitnessCertificate> {
    let mut cert = if options.full_pipeline {
        cert
    } else {
        let loop_cycle = fundamental_cycles(complex)
            .into_iter()
            .find(|c| pairing(complex, z, c).is_ok_and(|v| v != 0))?;
        let value = pairing(complex, z, &loop_cycle).ok()?;
        cert.with_cocycle(complex, z, &loop_cycle, value)
    };
    match check_certificate(&cert) {
        Ok(()) => {
            cert.construction_log = log.to_vec();
            Some(cert)
        }
        Err(e) => {
            if let Some(last) = log.last_mut() {
                last.outcome = format!("rejected by verification: {e}");
            }
            None
        }
    }
}
