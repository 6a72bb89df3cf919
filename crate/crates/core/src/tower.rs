//! Iterated barycentric subdivisions with the maps between levels.

use std::collections::HashMap;

use crate::complex::{Simplex, SimplicialComplex, Subdivision};
use crate::homology::{oriented_edge, IntegerChain, IntegerCochain};

/// `levels[0]` is the base complex and `levels[i + 1] = Sd(levels[i])`.
#[derive(Debug, Clone)]
pub struct Tower {
    levels: Vec<SimplicialComplex>,
    /// `carriers[i][v]`: the simplex of `levels[i]` whose barycenter is vertex
    /// `v` of `levels[i + 1]`.
    carriers: Vec<Vec<Simplex>>,
}

impl Tower {
    pub fn new(base: SimplicialComplex) -> Self {
        Self {
            levels: vec![base],
            carriers: Vec::new(),
        }
    }

    /// The base complex subdivided `depth` times.
    pub fn with_depth(base: SimplicialComplex, depth: usize) -> Self {
        let mut t = Self::new(base);
        for _ in 0..depth {
            t.subdivide();
        }
        t
    }

    pub fn subdivide(&mut self) {
        let Subdivision { complex, carriers } = self.top().barycentric_subdivision();
        self.levels.push(complex);
        self.carriers.push(carriers);
    }

    pub fn depth(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn base(&self) -> &SimplicialComplex {
        &self.levels[0]
    }

    pub fn top(&self) -> &SimplicialComplex {
        self.levels.last().expect("non-empty tower")
    }

    pub fn level(&self, i: usize) -> &SimplicialComplex {
        &self.levels[i]
    }

    /// The tower truncated to `levels[from..]`, re-based at `from`.
    pub fn from_level(&self, from: usize) -> Tower {
        Tower {
            levels: self.levels[from..].to_vec(),
            carriers: self.carriers[from..].to_vec(),
        }
    }

    /// The first `depth + 1` levels.
    pub fn truncated(&self, depth: usize) -> Tower {
        Tower {
            levels: self.levels[..=depth].to_vec(),
            carriers: self.carriers[..depth].to_vec(),
        }
    }

    /// Carrier of a simplex of `levels[level]` in `levels[level - 1]`: the
    /// top of its flag.
    fn carrier_one(&self, level: usize, simplex: &[usize]) -> Simplex {
        let carriers = &self.carriers[level - 1];
        simplex
            .iter()
            .map(|v| &carriers[*v])
            .max_by_key(|s| s.len())
            .expect("non-empty simplex")
            .clone()
    }

    /// The simplex of `levels[target]` whose interior contains the interior
    /// of `simplex` (a simplex of `levels[level]`), `target <= level`.
    pub fn carrier(&self, level: usize, simplex: &[usize], target: usize) -> Simplex {
        let mut s = simplex.to_vec();
        for l in (target + 1..=level).rev() {
            s = self.carrier_one(l, &s);
        }
        s
    }

    /// For each vertex of the top level, its carrier in `levels[target]`.
    pub fn vertex_carriers(&self, target: usize) -> Vec<Simplex> {
        let mut current: Vec<Simplex> = (0..self.top().vertex_count()).map(|v| vec![v]).collect();
        for l in (target + 1..=self.depth()).rev() {
            let mut memo: HashMap<Simplex, Simplex> = HashMap::new();
            current = current
                .into_iter()
                .map(|s| memo.entry(s.clone()).or_insert_with(|| self.carrier_one(l, &s)).clone())
                .collect();
        }
        current
    }

    /// For each facet of the top level, the index of the facet of
    /// `levels[target]` containing it.
    pub fn facet_carriers(&self, target: usize) -> Vec<usize> {
        let index: HashMap<&Simplex, usize> =
            self.levels[target].facets().iter().enumerate().map(|(i, f)| (f, i)).collect();
        self.top()
            .facets()
            .iter()
            .map(|f| index[&self.carrier(self.depth(), f, target)])
            .collect()
    }

    /// Pulls a 1-cochain on `levels[level]` back to `levels[level - 1]` along
    /// the subdivision chain map `[a, b] ↦ [a, m] + [m, b]`.
    fn cochain_down_one(&self, level: usize, z: &IntegerCochain) -> IntegerCochain {
        let fine = &self.levels[level];
        let coarse = &self.levels[level - 1];
        let edge_offset = coarse.vertex_count();
        let values = coarse
            .edges()
            .iter()
            .enumerate()
            .map(|(i, e)| {
                let m = edge_offset + i;
                z.on_edge(fine, e[0], m) + z.on_edge(fine, m, e[1])
            })
            .collect();
        IntegerCochain::one(values)
    }

    /// Transports a 1-cochain from `levels[level]` down to `levels[target]`.
    /// On cohomology this inverts subdivision.
    pub fn cochain_down(&self, level: usize, z: &IntegerCochain, target: usize) -> IntegerCochain {
        let mut z = z.clone();
        for l in (target + 1..=level).rev() {
            z = self.cochain_down_one(l, &z);
        }
        z
    }

    /// Pushes a vertex walk on `levels[level]` down to `levels[target]` with
    /// the simplicial approximation barycenter ↦ smallest carrier vertex.
    pub fn walk_down(&self, level: usize, walk: &[usize], target: usize) -> Vec<usize> {
        let mut w = walk.to_vec();
        for l in (target + 1..=level).rev() {
            w = w.iter().map(|v| self.carriers[l - 1][*v][0]).collect();
            w.dedup();
        }
        w
    }

    /// Refines a vertex walk on `levels[level]` to `levels[target]`,
    /// `target >= level`, by inserting edge midpoints.
    pub fn walk_up(&self, level: usize, walk: &[usize], target: usize) -> Vec<usize> {
        let mut w = walk.to_vec();
        for l in level..target {
            let coarse = &self.levels[l];
            let offset = coarse.vertex_count();
            let mut next = Vec::with_capacity(2 * w.len());
            for (i, v) in w.iter().enumerate() {
                next.push(*v);
                if let Some(u) = w.get(i + 1) {
                    let (e, _) = oriented_edge(coarse, *v, *u);
                    next.push(offset + e);
                }
            }
            w = next;
        }
        w
    }

    /// Chain of a closed walk on `levels[level]`.
    pub fn walk_chain(&self, level: usize, walk: &[usize]) -> IntegerChain {
        IntegerChain::from_walk(&self.levels[level], walk)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{cocycle_basis, fundamental_cycles, pairing};
    use crate::library::{generate, GeneratorSpec};

    #[test]
    fn pairing_survives_subdivision_round_trip() {
        // Pairing a basis cocycle pulled up (via the retraction) and brought
        // back down must return the original cocycle's pairings.
        let k = generate(GeneratorSpec::Torus2).unwrap();
        let tower = Tower::with_depth(k.clone(), 2);
        let basis = cocycle_basis(&k).unwrap();
        let cycles = fundamental_cycles(&k);
        for z in &basis {
            // Pull back along the retraction top -> base.
            let top = tower.top();
            let carriers = tower.vertex_carriers(0);
            let lifted = IntegerCochain::one(
                top.edges()
                    .iter()
                    .map(|e| {
                        let (a, b) = (carriers[e[0]][0], carriers[e[1]][0]);
                        if a == b {
                            0
                        } else {
                            z.on_edge(&k, a, b)
                        }
                    })
                    .collect(),
            );
            let back = tower.cochain_down(2, &lifted, 0);
            for c in &cycles {
                assert_eq!(pairing(&k, &back, c), pairing(&k, z, c));
            }
        }
    }

    #[test]
    fn walks_round_trip() {
        let k = generate(GeneratorSpec::Torus2).unwrap();
        let tower = Tower::with_depth(k.clone(), 2);
        let walk = vec![0, 1, 2, 0];
        let up = tower.walk_up(0, &walk, 2);
        assert_eq!(up.len(), 3 * 4 + 1);
        assert_eq!(tower.walk_down(2, &up, 0), walk);
    }

    #[test]
    fn facet_carriers_cover_each_facet() {
        let k = generate(GeneratorSpec::Sphere(2)).unwrap();
        let tower = Tower::with_depth(k, 2);
        let carriers = tower.facet_carriers(0);
        for f in 0..4 {
            assert_eq!(carriers.iter().filter(|c| **c == f).count(), 36);
        }
    }
}
