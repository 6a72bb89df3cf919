//! Facet-union domains and the cutting predicate.
//!
//! A domain is a non-empty proper set `F` of facets. With `K_F` the
//! subcomplex generated by `F` and `K_C` the one generated by the remaining
//! facets, the open set is `U = |K| \ |K_C|`, its closed complement is `|K_C|`
//! and its topological boundary is `|K_F ∩ K_C|`.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::complex::{canonical_cmp, Simplex, SimplicialComplex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DomainError {
    #[error("domain must contain at least one facet")]
    Empty,
    #[error("domain must omit at least one facet")]
    Full,
    #[error("facet index {index} out of range for {count} facets")]
    OutOfRange { index: usize, count: usize },
}

/// A non-empty proper set of facets of a complex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Domain<'a> {
    complex: &'a SimplicialComplex,
    facets: Vec<usize>,
}

impl<'a> Domain<'a> {
    pub fn new(complex: &'a SimplicialComplex, facets: impl IntoIterator<Item = usize>) -> Result<Self, DomainError> {
        let mut facets: Vec<usize> = facets.into_iter().collect();
        facets.sort_unstable();
        facets.dedup();
        if let Some(&index) = facets.iter().find(|&&f| f >= complex.facet_count()) {
            return Err(DomainError::OutOfRange {
                index,
                count: complex.facet_count(),
            });
        }
        if facets.is_empty() {
            return Err(DomainError::Empty);
        }
        if facets.len() == complex.facet_count() {
            return Err(DomainError::Full);
        }
        Ok(Self { complex, facets })
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    /// Sorted facet indices.
    pub fn facets(&self) -> &[usize] {
        &self.facets
    }

    /// The domain generated by the complementary facets.
    pub fn complement(&self) -> Domain<'a> {
        let inside: std::collections::HashSet<usize> = self.facets.iter().copied().collect();
        Domain {
            complex: self.complex,
            facets: (0..self.complex.facet_count()).filter(|f| !inside.contains(f)).collect(),
        }
    }

    pub fn boundary_report(&self) -> BoundaryReport {
        CutContext::new(self.complex).boundary_report(&self.mask())
    }

    pub fn cut_report(&self) -> CutReport {
        CutContext::new(self.complex).cut_report(&self.mask())
    }

    pub(crate) fn mask(&self) -> Vec<bool> {
        let mut mask = vec![false; self.complex.facet_count()];
        for f in &self.facets {
            mask[*f] = true;
        }
        mask
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundaryReport {
    /// `K_F ∩ K_C` in canonical order.
    pub boundary_simplices: Vec<Simplex>,
    pub component_count: usize,
    /// Vertex-sharing classes, ordered by smallest member.
    pub components: Vec<Vec<Simplex>>,
}

impl BoundaryReport {
    /// SHA-256 over the canonical boundary simplex list.
    pub fn digest(&self) -> String {
        let mut hasher = Sha256::new();
        for s in &self.boundary_simplices {
            let line: Vec<String> = s.iter().map(usize::to_string).collect();
            hasher.update(line.join(" ").as_bytes());
            hasher.update(b"\n");
        }
        hex::encode(hasher.finalize())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutReport {
    pub domain_connected: bool,
    pub boundary: BoundaryReport,
    pub complement_connected: bool,
    pub cuts: bool,
}

impl CutReport {
    /// Connected, disconnected boundary, does not cut.
    pub fn is_witness(&self) -> bool {
        self.domain_connected && self.boundary.component_count >= 2 && !self.cuts
    }
}

/// The three verdicts without the simplex lists; what enumeration needs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CutSummary {
    pub domain_connected: bool,
    pub boundary_components: usize,
    pub complement_connected: bool,
}

impl CutSummary {
    pub fn cuts(&self) -> bool {
        !self.complement_connected
    }

    pub fn is_witness(&self) -> bool {
        self.domain_connected && self.boundary_components >= 2 && !self.cuts()
    }
}

/// Precomputed incidence data for evaluating many domains on one complex.
///
/// Simplices get global ids in dimension-major face order, so vertex `v` has
/// id `v`.
pub struct CutContext<'a> {
    complex: &'a SimplicialComplex,
    simplices: Vec<&'a Simplex>,
    offsets: Vec<usize>,
    /// Facets containing each simplex.
    star: Vec<Vec<usize>>,
    /// Codimension-one faces of each simplex.
    faces: Vec<Vec<usize>>,
}

impl<'a> CutContext<'a> {
    pub fn new(complex: &'a SimplicialComplex) -> Self {
        let mut offsets = Vec::new();
        let mut simplices = Vec::new();
        for k in 0..=complex.dim() {
            offsets.push(simplices.len());
            simplices.extend(complex.faces(k));
        }
        let id = |s: &[usize]| offsets[s.len() - 1] + complex.index_of(s).expect("face");
        let mut star = vec![Vec::new(); simplices.len()];
        for (f, facet) in complex.facets().iter().enumerate() {
            for mask in 1u32..(1u32 << facet.len()) {
                let face: Simplex = facet
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask & (1 << i) != 0)
                    .map(|(_, v)| *v)
                    .collect();
                star[id(&face)].push(f);
            }
        }
        let faces = simplices
            .iter()
            .map(|s| {
                if s.len() == 1 {
                    Vec::new()
                } else {
                    crate::complex::drop_each(s).map(|t| id(&t)).collect()
                }
            })
            .collect();
        Self {
            complex,
            simplices,
            offsets,
            star,
            faces,
        }
    }

    pub fn complex(&self) -> &'a SimplicialComplex {
        self.complex
    }

    /// Membership of every simplex in `K_F` and `K_C`.
    fn membership(&self, in_domain: &[bool]) -> (Vec<bool>, Vec<bool>) {
        let mut in_f = vec![false; self.simplices.len()];
        let mut in_c = vec![false; self.simplices.len()];
        for (s, star) in self.star.iter().enumerate() {
            for f in star {
                if in_domain[*f] {
                    in_f[s] = true;
                } else {
                    in_c[s] = true;
                }
                if in_f[s] && in_c[s] {
                    break;
                }
            }
        }
        (in_f, in_c)
    }

    /// Components of the subcomplex selected by `member`, counted on its
    /// 1-skeleton (vertex sharing within a subcomplex). Returns the class of
    /// each vertex root and the count.
    fn subcomplex_classes(&self, member: &[bool]) -> (UnionFind<usize>, usize) {
        let n = self.complex.vertex_count();
        let mut uf = UnionFind::new(n);
        let edges = self.offsets.get(1).map_or(0..0, |&start| start..start + self.complex.count(1));
        for e in edges {
            if member[e] {
                uf.union(self.simplices[e][0], self.simplices[e][1]);
            }
        }
        let count = (0..n).filter(|&v| member[v] && uf.find(v) == v).count();
        (uf, count)
    }

    fn open_components(&self, in_f: &[bool], in_c: &[bool]) -> usize {
        let open = |s: usize| in_f[s] && !in_c[s];
        let mut uf = UnionFind::new(self.simplices.len());
        for s in 0..self.simplices.len() {
            if open(s) {
                for &t in &self.faces[s] {
                    if open(t) {
                        uf.union(s, t);
                    }
                }
            }
        }
        (0..self.simplices.len()).filter(|&s| open(s) && uf.find(s) == s).count()
    }

    pub fn summary(&self, in_domain: &[bool]) -> CutSummary {
        let (in_f, in_c) = self.membership(in_domain);
        let boundary: Vec<bool> = in_f.iter().zip(&in_c).map(|(a, b)| *a && *b).collect();
        CutSummary {
            domain_connected: self.open_components(&in_f, &in_c) == 1,
            boundary_components: self.subcomplex_classes(&boundary).1,
            complement_connected: self.subcomplex_classes(&in_c).1 == 1,
        }
    }

    pub fn boundary_report(&self, in_domain: &[bool]) -> BoundaryReport {
        let (in_f, in_c) = self.membership(in_domain);
        self.boundary_from(&in_f, &in_c)
    }

    fn boundary_from(&self, in_f: &[bool], in_c: &[bool]) -> BoundaryReport {
        let member: Vec<bool> = in_f.iter().zip(in_c).map(|(a, b)| *a && *b).collect();
        let (uf, component_count) = self.subcomplex_classes(&member);
        let boundary_simplices: Vec<Simplex> = (0..self.simplices.len())
            .filter(|&s| member[s])
            .map(|s| self.simplices[s].clone())
            .collect();
        // Global ids are already canonical, so first appearance orders classes
        // by their smallest member.
        let mut class_of: HashMap<usize, usize> = HashMap::new();
        let mut components: Vec<Vec<Simplex>> = Vec::new();
        for s in &boundary_simplices {
            let root = uf.find(s[0]);
            let c = *class_of.entry(root).or_insert_with(|| {
                components.push(Vec::new());
                components.len() - 1
            });
            components[c].push(s.clone());
        }
        debug_assert_eq!(components.len(), component_count);
        debug_assert!(boundary_simplices.windows(2).all(|w| canonical_cmp(&w[0], &w[1]).is_lt()));
        BoundaryReport {
            boundary_simplices,
            component_count,
            components,
        }
    }

    pub fn cut_report(&self, in_domain: &[bool]) -> CutReport {
        let (in_f, in_c) = self.membership(in_domain);
        let complement_connected = self.subcomplex_classes(&in_c).1 == 1;
        CutReport {
            domain_connected: self.open_components(&in_f, &in_c) == 1,
            boundary: self.boundary_from(&in_f, &in_c),
            complement_connected,
            cuts: !complement_connected,
        }
    }

    /// Facet adjacency used to grow candidate domains: facets sharing a ridge,
    /// plus every pair around a lower face whose star is not ridge connected.
    /// Any `F` with connected open set is connected in this graph.
    pub fn growth_graph(&self) -> Vec<Vec<usize>> {
        let n = self.complex.facet_count();
        let d = self.complex.dim();
        let mut adjacent = vec![std::collections::BTreeSet::new(); n];
        if d == 0 {
            return vec![Vec::new(); n];
        }
        let ridge_range = self.offsets[d - 1]..self.offsets[d - 1] + self.complex.count(d - 1);
        let link = |a: usize, b: usize, adjacent: &mut Vec<std::collections::BTreeSet<usize>>| {
            if a != b {
                adjacent[a].insert(b);
                adjacent[b].insert(a);
            }
        };
        for r in ridge_range.clone() {
            let star = &self.star[r];
            for i in 0..star.len() {
                for j in i + 1..star.len() {
                    link(star[i], star[j], &mut adjacent);
                }
            }
        }
        for s in 0..ridge_range.start {
            let star = &self.star[s];
            let position: HashMap<usize, usize> = star.iter().enumerate().map(|(i, f)| (*f, i)).collect();
            let mut uf = UnionFind::<usize>::new(star.len());
            for (i, f) in star.iter().enumerate() {
                for g in &adjacent[*f] {
                    if let Some(&j) = position.get(g) {
                        uf.union(i, j);
                    }
                }
            }
            if (1..star.len()).any(|i| !uf.equiv(0, i)) {
                for i in 0..star.len() {
                    for j in i + 1..star.len() {
                        link(star[i], star[j], &mut adjacent);
                    }
                }
            }
        }
        adjacent.into_iter().map(|s| s.into_iter().collect()).collect()
    }
}

/// How a scan covered the candidate space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    /// Every proper non-empty facet subset up to the size bound.
    AllSubsets,
    /// Connected subsets of the growth graph up to the size bound.
    ConnectedGrowth,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ScanOutcome {
    pub mode: ScanMode,
    pub tested: usize,
    /// False if the candidate limit stopped the scan early.
    pub complete: bool,
}

/// Largest facet count for which the all-subsets mode is used.
const ALL_SUBSETS_MAX_FACETS: usize = 24;

/// Visits candidate domains with at most `max_facets` facets.
///
/// When the bound admits every proper subset of a small complex, all subsets
/// are visited. Otherwise connected subsets of the growth graph are grown
/// one facet at a time, which still reaches every domain whose open set is
/// connected. The visitor receives the sorted facet list and its summary;
/// visiting order is deterministic but not lexicographic.
pub fn scan_domains(
    complex: &SimplicialComplex,
    max_facets: usize,
    limit: Option<usize>,
    mut visit: impl FnMut(&[usize], &CutSummary),
) -> ScanOutcome {
    let ctx = CutContext::new(complex);
    let n = complex.facet_count();
    let max = max_facets.min(n.saturating_sub(1));
    let limit = limit.unwrap_or(usize::MAX);
    let mut tested = 0usize;
    if max + 1 >= n && n <= ALL_SUBSETS_MAX_FACETS {
        let mut mask = vec![false; n];
        for bits in 1u64..(1u64 << n) - 1 {
            if tested == limit {
                return ScanOutcome {
                    mode: ScanMode::AllSubsets,
                    tested,
                    complete: false,
                };
            }
            let mut facets = Vec::new();
            for (i, m) in mask.iter_mut().enumerate() {
                *m = bits & (1 << i) != 0;
                if *m {
                    facets.push(i);
                }
            }
            tested += 1;
            visit(&facets, &ctx.summary(&mask));
        }
        return ScanOutcome {
            mode: ScanMode::AllSubsets,
            tested,
            complete: true,
        };
    }
    let graph = ctx.growth_graph();
    let mut grower = Grower {
        ctx: &ctx,
        graph: &graph,
        max,
        limit,
        tested: 0,
        mask: vec![false; n],
        blocked: vec![0; n],
        subset: Vec::new(),
    };
    let mut complete = true;
    for root in 0..n {
        let extension: Vec<usize> = graph[root].iter().copied().filter(|&u| u > root).collect();
        if !grower.start(root, extension, &mut visit) {
            complete = false;
            break;
        }
    }
    ScanOutcome {
        mode: ScanMode::ConnectedGrowth,
        tested: grower.tested,
        complete,
    }
}

/// Enumerates connected vertex subsets exactly once each, by extension with
/// exclusive neighbours larger than the root.
struct Grower<'g, 'c> {
    ctx: &'g CutContext<'c>,
    graph: &'g [Vec<usize>],
    max: usize,
    limit: usize,
    tested: usize,
    mask: Vec<bool>,
    /// Number of chosen facets whose closed neighbourhood contains the facet.
    blocked: Vec<usize>,
    subset: Vec<usize>,
}

impl Grower<'_, '_> {
    fn push(&mut self, v: usize) {
        self.subset.push(v);
        self.mask[v] = true;
        self.blocked[v] += 1;
        for &u in &self.graph[v] {
            self.blocked[u] += 1;
        }
    }

    fn pop(&mut self) {
        let v = self.subset.pop().expect("non-empty");
        self.mask[v] = false;
        self.blocked[v] -= 1;
        for &u in &self.graph[v] {
            self.blocked[u] -= 1;
        }
    }

    fn start(&mut self, root: usize, extension: Vec<usize>, visit: &mut impl FnMut(&[usize], &CutSummary)) -> bool {
        self.push(root);
        let ok = self.extend(root, extension, visit);
        self.pop();
        ok
    }

    fn extend(&mut self, root: usize, mut extension: Vec<usize>, visit: &mut impl FnMut(&[usize], &CutSummary)) -> bool {
        if self.tested == self.limit {
            return false;
        }
        self.tested += 1;
        let mut sorted = self.subset.clone();
        sorted.sort_unstable();
        visit(&sorted, &self.ctx.summary(&self.mask));
        if self.subset.len() == self.max {
            return true;
        }
        while let Some(w) = extension.pop() {
            let mut next = extension.clone();
            next.extend(self.graph[w].iter().copied().filter(|&u| u > root && self.blocked[u] == 0));
            self.push(w);
            let ok = self.extend(root, next, visit);
            self.pop();
            if !ok {
                return false;
            }
        }
        true
    }
}

/// Domains with at most `max_facets` facets whose open set is connected and
/// whose boundary has at least two components, in lexicographic order of `F`.
pub fn enumerate_candidates(complex: &SimplicialComplex, max_facets: usize) -> Vec<Domain<'_>> {
    let mut found: Vec<Vec<usize>> = Vec::new();
    scan_domains(complex, max_facets, None, |facets, summary| {
        if summary.domain_connected && summary.boundary_components >= 2 {
            found.push(facets.to_vec());
        }
    });
    found.sort();
    found
        .into_iter()
        .map(|facets| Domain { complex, facets })
        .collect()
}
