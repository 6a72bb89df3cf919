//! From a non-cutting connected domain with disconnected boundary to an
//! integer winding cocycle that is not a coboundary.
//!
//! The circle is `[0, 1)` with north pole `0`, south pole `1/2`, the left arc
//! `(0, 1/2)` reached through the domain and the right arc `(1/2, 1)` through
//! the complement. Every value is an exact rational.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::certificate::WitnessCertificate;
use crate::complex::{Simplex, SimplicialComplex};
use crate::domain::Domain;
use crate::homology::{
    is_coboundary, is_cocycle, pairing, EdgeValues, HomologyError, IntegerChain, IntegerCochain,
};
use crate::tower::Tower;

/// Upper bound on extra subdivisions in thickening and wrap repair.
pub const MAX_RETRIES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircleMapError {
    #[error("domain does not satisfy the thickening precondition: {0}")]
    Precondition(String),
    #[error("neighbourhoods of the boundary parts still meet after {attempts} subdivisions")]
    CannotSeparate { attempts: usize },
    #[error("a 2-simplex still wraps around the circle after {attempts} subdivisions")]
    NoWrapFixpoint { attempts: usize },
    #[error("vertex {vertex} on the {side:?} side cannot reach both neighbourhoods")]
    DisconnectedSide { side: Side, vertex: usize },
    #[error("winding cocycle is a coboundary; the map would be nullhomotopic")]
    CoboundaryContradiction,
    #[error("ambient complex would have about {facets} facets")]
    AmbientTooLarge { facets: usize },
    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Domain,
    Complement,
}

/// Role of a vertex of the ambient complex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Region {
    /// In the neighbourhood of boundary part `A`.
    NearA,
    NearB,
    /// Only in facets refining the domain.
    Inside,
    /// Only in facets refining the complement.
    Outside,
}

/// The decomposition of a subdivided ambient complex into neighbourhoods of
/// the two boundary parts and the two remaining sides.
#[derive(Debug, Clone)]
pub struct Thickening {
    /// Levels `0..=domain_level` lead to the complex carrying the domain;
    /// the top level is the ambient complex.
    pub tower: Tower,
    pub domain_level: usize,
    pub domain: Vec<usize>,
    /// Boundary component containing the smallest boundary simplex.
    pub part_a: Vec<Simplex>,
    /// Union of the other boundary components.
    pub part_b: Vec<Simplex>,
    pub a_hat: Vec<usize>,
    pub b_hat: Vec<usize>,
    pub u_side: Vec<usize>,
    pub v_side: Vec<usize>,
    pub regions: Vec<Region>,
    retries: usize,
}

impl Thickening {
    pub fn ambient(&self) -> &SimplicialComplex {
        self.tower.top()
    }

    /// Subdivisions applied on top of the domain's complex.
    pub fn extra_levels(&self) -> usize {
        self.tower.depth() - self.domain_level
    }

    /// Recomputes the decomposition one subdivision deeper.
    fn refined(&self) -> Option<Thickening> {
        let mut tower = self.tower.clone();
        tower.subdivide();
        classify(tower, self.domain_level, &self.domain, &self.part_a, &self.part_b, self.retries)
    }
}

/// Builds the decomposition for `domain_facets`, a domain on `tower.top()`.
///
/// The ambient complex is the domain's complex subdivided twice, and once more
/// per failed attempt while the neighbourhoods of `A` and `B` share a vertex
/// or are joined by an edge.
pub fn thicken(tower: Tower, domain_facets: &[usize], retries: usize) -> Result<Thickening, CircleMapError> {
    let retries = retries.min(MAX_RETRIES);
    let working = tower.top();
    let domain = Domain::new(working, domain_facets.iter().copied())
        .map_err(|e| CircleMapError::Precondition(e.to_string()))?;
    let report = domain.cut_report();
    if !report.domain_connected {
        return Err(CircleMapError::Precondition("domain is not connected".into()));
    }
    if report.boundary.component_count < 2 {
        return Err(CircleMapError::Precondition("boundary is connected".into()));
    }
    if report.cuts {
        return Err(CircleMapError::Precondition("domain cuts the complex".into()));
    }
    let mut components = report.boundary.components.into_iter();
    let part_a = components.next().expect("two components");
    let part_b: Vec<Simplex> = components.flatten().collect();
    let domain_level = tower.depth();
    let domain = domain.facets().to_vec();
    let mut tower = tower;
    tower.subdivide();
    tower.subdivide();
    for attempt in 0..=retries {
        if let Some(t) = classify(tower.clone(), domain_level, &domain, &part_a, &part_b, retries) {
            return Ok(t);
        }
        if attempt < retries {
            tower.subdivide();
        }
    }
    Err(CircleMapError::CannotSeparate { attempts: retries })
}

fn classify(
    tower: Tower,
    domain_level: usize,
    domain: &[usize],
    part_a: &[Simplex],
    part_b: &[Simplex],
    retries: usize,
) -> Option<Thickening> {
    let ambient = tower.top();
    let carriers = tower.vertex_carriers(domain_level);
    let a_set: HashSet<&Simplex> = part_a.iter().collect();
    let b_set: HashSet<&Simplex> = part_b.iter().collect();
    let near_a: Vec<bool> = carriers.iter().map(|c| a_set.contains(c)).collect();
    let near_b: Vec<bool> = carriers.iter().map(|c| b_set.contains(c)).collect();
    let inside: HashSet<usize> = domain.iter().copied().collect();
    let facet_home = tower.facet_carriers(domain_level);
    let (mut a_hat, mut b_hat, mut u_side, mut v_side) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for (f, facet) in ambient.facets().iter().enumerate() {
        let touches_a = facet.iter().any(|v| near_a[*v]);
        let touches_b = facet.iter().any(|v| near_b[*v]);
        match (touches_a, touches_b) {
            (true, true) => return None,
            (true, false) => a_hat.push(f),
            (false, true) => b_hat.push(f),
            (false, false) if inside.contains(&facet_home[f]) => u_side.push(f),
            (false, false) => v_side.push(f),
        }
    }
    let n = ambient.vertex_count();
    let mut regions: Vec<Option<Region>> = vec![None; n];
    for (facets, region) in [(&a_hat, Region::NearA), (&b_hat, Region::NearB)] {
        for f in facets {
            for v in &ambient.facets()[*f] {
                match regions[*v] {
                    None => regions[*v] = Some(region),
                    Some(r) if r == region => {}
                    Some(_) => return None,
                }
            }
        }
    }
    for (facets, region) in [(&u_side, Region::Inside), (&v_side, Region::Outside)] {
        for f in facets {
            for v in &ambient.facets()[*f] {
                if regions[*v].is_none() {
                    regions[*v] = Some(region);
                }
            }
        }
    }
    let regions: Vec<Region> = regions.into_iter().map(|r| r.expect("every vertex lies in a facet")).collect();
    let separated = ambient.edges().iter().all(|e| {
        !matches!(
            (regions[e[0]], regions[e[1]]),
            (Region::NearA, Region::NearB) | (Region::NearB, Region::NearA) | (Region::Inside, Region::Outside) | (Region::Outside, Region::Inside)
        )
    });
    if !separated {
        return None;
    }
    Some(Thickening {
        tower,
        domain_level,
        domain: domain.to_vec(),
        part_a: part_a.to_vec(),
        part_b: part_b.to_vec(),
        a_hat,
        b_hat,
        u_side,
        v_side,
        regions,
        retries,
    })
}

#[derive(Debug, Clone)]
pub struct CircleMapResult {
    pub thickening: Thickening,
    /// Circle coordinate of each ambient vertex, in `[0, 1)`.
    pub vertex_values: Vec<BigRational>,
    /// Edge increments lifted to `(-1/2, 1/2]`.
    pub lift_cochain: Vec<BigRational>,
    /// `lift - δ⁰(values)`: the integer winding cocycle on the ambient complex.
    pub ambient_winding: IntegerCochain,
    /// The winding class transported to the base complex.
    pub winding_cocycle: IntegerCochain,
    /// Levels between the domain's complex and the ambient complex.
    pub subdivisions_used: usize,
    /// Closed vertex walk on the ambient complex.
    pub loop_walk: Vec<usize>,
    pub loop_cycle: IntegerChain,
    /// The loop pushed down to the base complex.
    pub base_loop: IntegerChain,
    pub pairing_value: i64,
    /// Signed count of the loop's steps from the `A` neighbourhood into the
    /// domain side.
    pub crossing_count: i64,
}

fn half() -> BigRational {
    BigRational::new(BigInt::one(), BigInt::from(2))
}

/// Multi-source breadth-first distances over an adjacency list.
fn distances(adjacency: &[Vec<usize>], sources: impl Iterator<Item = usize>) -> Vec<Option<usize>> {
    let mut dist = vec![None; adjacency.len()];
    let mut queue = VecDeque::new();
    for s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[u].expect("queued");
        for &w in &adjacency[u] {
            if dist[w].is_none() {
                dist[w] = Some(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest path from any source to any vertex accepted by `target`, sources
/// and adjacency scanned in ascending order.
fn shortest_path(adjacency: &[Vec<usize>], sources: &[usize], target: impl Fn(usize) -> bool) -> Option<Vec<usize>> {
    let mut parent: Vec<Option<usize>> = vec![None; adjacency.len()];
    let mut seen = vec![false; adjacency.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        seen[s] = true;
        queue.push_back(s);
    }
    while let Some(u) = queue.pop_front() {
        for &w in &adjacency[u] {
            if seen[w] {
                continue;
            }
            seen[w] = true;
            parent[w] = Some(u);
            if target(w) {
                let mut path = vec![w];
                let mut v = w;
                while let Some(p) = parent[v] {
                    path.push(p);
                    v = p;
                }
                path.reverse();
                return Some(path);
            }
            queue.push_back(w);
        }
    }
    None
}

/// 1-skeleton of the union of the given facets.
fn side_graph(ambient: &SimplicialComplex, facet_sets: &[&[usize]]) -> Vec<Vec<usize>> {
    let mut adjacency = vec![Vec::new(); ambient.vertex_count()];
    for set in facet_sets {
        for f in set.iter() {
            let facet = &ambient.facets()[*f];
            for i in 0..facet.len() {
                for j in i + 1..facet.len() {
                    adjacency[facet[i]].push(facet[j]);
                    adjacency[facet[j]].push(facet[i]);
                }
            }
        }
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    adjacency
}

/// Evaluates the circle map on a thickening and extracts its winding data.
///
/// If some 2-simplex wraps around the circle the decomposition is recomputed
/// one subdivision deeper, at most `MAX_RETRIES` times.
pub fn build_circle_map(thickening: &Thickening) -> Result<CircleMapResult, CircleMapError> {
    let mut current = thickening.clone();
    let mut attempts = 0;
    loop {
        match evaluate(&current)? {
            Some(result) => return Ok(result),
            None if attempts < current.retries => {
                attempts += 1;
                current = current
                    .refined()
                    .ok_or(CircleMapError::CannotSeparate { attempts })?;
            }
            None => return Err(CircleMapError::NoWrapFixpoint { attempts }),
        }
    }
}

/// `Ok(None)` signals a wrapping 2-simplex.
fn evaluate(t: &Thickening) -> Result<Option<CircleMapResult>, CircleMapError> {
    let ambient = t.ambient();
    let regions = &t.regions;
    let inner = side_graph(ambient, &[&t.u_side, &t.a_hat, &t.b_hat]);
    let outer = side_graph(ambient, &[&t.v_side, &t.a_hat, &t.b_hat]);
    let near = |r: Region| move |v: &usize| regions[*v] == r;
    let a_vertices: Vec<usize> = (0..ambient.vertex_count()).filter(near(Region::NearA)).collect();
    let b_vertices: Vec<usize> = (0..ambient.vertex_count()).filter(near(Region::NearB)).collect();
    let inner_a = distances(&inner, a_vertices.iter().copied());
    let inner_b = distances(&inner, b_vertices.iter().copied());
    let outer_a = distances(&outer, a_vertices.iter().copied());
    let outer_b = distances(&outer, b_vertices.iter().copied());

    let mut values = Vec::with_capacity(ambient.vertex_count());
    for (v, region) in regions.iter().enumerate() {
        let value = match region {
            Region::NearA => BigRational::zero(),
            Region::NearB => half(),
            Region::Inside | Region::Outside => {
                let (side, da, db) = if *region == Region::Inside {
                    (Side::Domain, inner_a[v], inner_b[v])
                } else {
                    (Side::Complement, outer_a[v], outer_b[v])
                };
                let (Some(da), Some(db)) = (da, db) else {
                    return Err(CircleMapError::DisconnectedSide { side, vertex: v });
                };
                let total = BigInt::from(da + db);
                if *region == Region::Inside {
                    BigRational::new(BigInt::from(da), total * 2)
                } else {
                    half() + BigRational::new(BigInt::from(db), total * 2)
                }
            }
        };
        values.push(value);
    }

    let one = BigRational::one();
    let lift: Vec<BigRational> = ambient
        .edges()
        .iter()
        .map(|e| {
            let mut d = &values[e[1]] - &values[e[0]];
            if d > half() {
                d -= &one;
            } else if d <= -half() {
                d += &one;
            }
            d
        })
        .collect();
    let edge = |a: usize, b: usize| &lift[ambient.index_of(&[a, b]).expect("edge of triangle")];
    let wraps = ambient
        .faces(2)
        .iter()
        .any(|tri| !(edge(tri[0], tri[1]) + edge(tri[1], tri[2]) - edge(tri[0], tri[2])).is_zero());
    if wraps {
        return Ok(None);
    }
    let winding = ambient
        .edges()
        .iter()
        .zip(&lift)
        .map(|(e, l)| {
            let w = l - (&values[e[1]] - &values[e[0]]);
            debug_assert!(w.is_integer());
            w.to_integer().to_i64().expect("winding is -1, 0 or 1")
        })
        .collect();
    let ambient_winding = IntegerCochain::one(winding);

    // γ: from A through the domain side to B, back through the complement.
    let there = shortest_path(&inner, &a_vertices, |v| regions[v] == Region::NearB)
        .ok_or(CircleMapError::DisconnectedSide { side: Side::Domain, vertex: a_vertices[0] })?;
    let (start, turn) = (there[0], *there.last().expect("non-empty"));
    let back = shortest_path(&outer, &[turn], |v| v == start)
        .ok_or(CircleMapError::DisconnectedSide { side: Side::Complement, vertex: turn })?;
    let mut walk = there;
    walk.extend_from_slice(&back[1..]);

    let crossing = |walk: &[usize]| -> i64 {
        walk.windows(2)
            .map(|w| match (regions[w[0]], regions[w[1]]) {
                (Region::NearA, Region::Inside) => 1,
                (Region::Inside, Region::NearA) => -1,
                _ => 0,
            })
            .sum()
    };
    let mut loop_cycle = IntegerChain::from_walk(ambient, &walk);
    let mut value = pairing(ambient, &ambient_winding, &loop_cycle)?;
    if value < 0 {
        walk.reverse();
        loop_cycle = IntegerChain::from_walk(ambient, &walk);
        value = -value;
    }
    let crossing_count = crossing(&walk);
    if crossing_count != value {
        return Err(CircleMapError::Inconsistent(format!(
            "pairing {value} but {crossing_count} interface crossings"
        )));
    }

    let top = t.tower.depth();
    let base = t.tower.base();
    let winding_cocycle = t.tower.cochain_down(top, &ambient_winding, 0);
    let base_walk = t.tower.walk_down(top, &walk, 0);
    let base_loop = IntegerChain::from_walk(base, &base_walk);
    let base_value = pairing(base, &winding_cocycle, &base_loop)?;
    if base_value != value {
        return Err(CircleMapError::Inconsistent(format!(
            "pairing {value} on the ambient complex but {base_value} on the base"
        )));
    }
    Ok(Some(CircleMapResult {
        thickening: t.clone(),
        vertex_values: values,
        lift_cochain: lift,
        ambient_winding,
        winding_cocycle,
        subdivisions_used: t.extra_levels(),
        loop_walk: walk,
        loop_cycle,
        base_loop,
        pairing_value: value,
        crossing_count,
    }))
}

/// Turns a circle map into a witness certificate carrying its winding
/// cocycle. A coboundary here means the map is nullhomotopic, which the
/// construction rules out; it is reported as an error, never ignored.
pub fn certify_nontrivial(result: &CircleMapResult) -> Result<WitnessCertificate, CircleMapError> {
    let t = &result.thickening;
    let base = t.tower.base();
    let z = &result.winding_cocycle;
    if !is_cocycle(base, z) {
        return Err(CircleMapError::Inconsistent("winding cochain is not a cocycle".into()));
    }
    if is_coboundary(base, z)? {
        return Err(CircleMapError::CoboundaryContradiction);
    }
    let value = pairing(base, z, &result.base_loop)?;
    if value != result.pairing_value || value == 0 {
        return Err(CircleMapError::Inconsistent(format!(
            "stated pairing {} but recomputed {value}",
            result.pairing_value
        )));
    }
    let prefix = t.tower.truncated(t.domain_level);
    let domain = Domain::new(prefix.top(), t.domain.iter().copied())
        .map_err(|e| CircleMapError::Precondition(e.to_string()))?;
    let report = domain.cut_report();
    Ok(WitnessCertificate::for_domain(&prefix, &domain, &report).with_cocycle(base, z, &result.base_loop, value))
}

/// JSON form of a [`CircleMapResult`]; rationals are `"p/q"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleMapRecord {
    pub base_complex_hash: String,
    pub domain_depth: usize,
    pub subdivisions_used: usize,
    #[serde(with = "crate::util::rational_str")]
    pub vertex_values: Vec<BigRational>,
    #[serde(with = "crate::util::rational_str")]
    pub lift_cochain: Vec<BigRational>,
    pub winding_cocycle: EdgeValues,
    pub loop_walk: Vec<usize>,
    pub base_loop: EdgeValues,
    pub pairing_value: i64,
    pub crossing_count: i64,
}

impl CircleMapResult {
    pub fn record(&self) -> CircleMapRecord {
        let base = self.thickening.tower.base();
        CircleMapRecord {
            base_complex_hash: base.hash(),
            domain_depth: self.thickening.domain_level,
            subdivisions_used: self.subdivisions_used,
            vertex_values: self.vertex_values.clone(),
            lift_cochain: self.lift_cochain.clone(),
            winding_cocycle: EdgeValues::new(base, &self.winding_cocycle.values),
            loop_walk: self.loop_walk.clone(),
            base_loop: EdgeValues::new(base, &self.base_loop.values),
            pairing_value: self.pairing_value,
            crossing_count: self.crossing_count,
        }
    }
}
