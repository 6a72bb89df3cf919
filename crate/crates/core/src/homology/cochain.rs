use serde::{Deserialize, Serialize};

use crate::complex::SimplicialComplex;

/// Integer values on the canonically oriented `degree`-simplices of a
/// complex (orientation = ascending vertex order, index = face enumeration).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerCochain {
    pub degree: usize,
    pub values: Vec<i64>,
}

/// An integer chain in the same indexing as [`IntegerCochain`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntegerChain {
    pub degree: usize,
    pub values: Vec<i64>,
}

impl IntegerCochain {
    pub fn one(values: Vec<i64>) -> Self {
        Self { degree: 1, values }
    }

    pub fn zero(complex: &SimplicialComplex) -> Self {
        Self::one(vec![0; complex.count(1)])
    }

    /// The value on the edge `from -> to`, negated against the canonical
    /// orientation. Panics if the edge is absent.
    pub fn on_edge(&self, complex: &SimplicialComplex, from: usize, to: usize) -> i64 {
        let (e, sign) = oriented_edge(complex, from, to);
        sign * self.values[e]
    }

    pub fn is_even(&self) -> bool {
        self.values.iter().all(|x| x % 2 == 0)
    }

    pub fn scaled(&self, factor: i64) -> Self {
        Self {
            degree: self.degree,
            values: self.values.iter().map(|x| x * factor).collect(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len());
        Self {
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }
}

impl IntegerChain {
    pub fn one(values: Vec<i64>) -> Self {
        Self { degree: 1, values }
    }

    pub fn zero(complex: &SimplicialComplex) -> Self {
        Self::one(vec![0; complex.count(1)])
    }

    /// Adds the oriented edge `from -> to` with the given multiplicity.
    pub fn add_step(&mut self, complex: &SimplicialComplex, from: usize, to: usize, times: i64) {
        let (e, sign) = oriented_edge(complex, from, to);
        self.values[e] += sign * times;
    }

    /// The chain traced by a closed or open vertex walk.
    pub fn from_walk(complex: &SimplicialComplex, walk: &[usize]) -> Self {
        let mut c = Self::zero(complex);
        for w in walk.windows(2) {
            if w[0] != w[1] {
                c.add_step(complex, w[0], w[1], 1);
            }
        }
        c
    }

    pub fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.values.len(), other.values.len());
        Self {
            degree: self.degree,
            values: self.values.iter().zip(&other.values).map(|(a, b)| a + b).collect(),
        }
    }
}

/// Index of the edge `{from, to}` and `+1` if `from < to`, else `-1`.
pub fn oriented_edge(complex: &SimplicialComplex, from: usize, to: usize) -> (usize, i64) {
    let (key, sign) = if from < to { ([from, to], 1) } else { ([to, from], -1) };
    let e = complex
        .index_of(&key)
        .unwrap_or_else(|| panic!("no edge {from}-{to} in complex"));
    (e, sign)
}

/// `δ⁰g`: the edge `[a, b]` gets `g(b) - g(a)`.
pub fn coboundary_of_potential(complex: &SimplicialComplex, potential: &[i64]) -> IntegerCochain {
    IntegerCochain::one(complex.edges().iter().map(|e| potential[e[1]] - potential[e[0]]).collect())
}

/// `δz` evaluated on every triangle `[a, b, c]`: `z(bc) - z(ac) + z(ab)`.
pub fn coboundary_on_triangles(complex: &SimplicialComplex, z: &IntegerCochain) -> Vec<i64> {
    complex
        .faces(2)
        .iter()
        .map(|t| {
            let e = |a: usize, b: usize| z.values[complex.index_of(&[a, b]).expect("edge of triangle")];
            e(t[1], t[2]) - e(t[0], t[2]) + e(t[0], t[1])
        })
        .collect()
}

/// `∂c` on vertices.
pub fn boundary_of_chain(complex: &SimplicialComplex, c: &IntegerChain) -> Vec<i64> {
    let mut out = vec![0i64; complex.vertex_count()];
    for (e, x) in complex.edges().iter().zip(&c.values) {
        out[e[1]] += x;
        out[e[0]] -= x;
    }
    out
}

/// `∂w` for a 2-chain `w` indexed by triangles.
pub fn boundary_of_two_chain(complex: &SimplicialComplex, w: &[i64]) -> IntegerChain {
    let mut c = IntegerChain::zero(complex);
    for (t, x) in complex.faces(2).iter().zip(w) {
        c.add_step(complex, t[1], t[2], *x);
        c.add_step(complex, t[0], t[2], -*x);
        c.add_step(complex, t[0], t[1], *x);
    }
    c
}

/// JSON form: values in canonical edge order next to the edge enumeration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeValues {
    pub edges: Vec<[usize; 2]>,
    pub values: Vec<i64>,
}

impl EdgeValues {
    pub fn new(complex: &SimplicialComplex, values: &[i64]) -> Self {
        Self {
            edges: complex.edges().iter().map(|e| [e[0], e[1]]).collect(),
            values: values.to_vec(),
        }
    }

    /// True when the recorded edge enumeration is exactly the complex's.
    pub fn matches(&self, complex: &SimplicialComplex) -> bool {
        self.edges.len() == complex.count(1)
            && self.values.len() == self.edges.len()
            && self.edges.iter().zip(complex.edges()).all(|(a, b)| a[..] == b[..])
    }
}
