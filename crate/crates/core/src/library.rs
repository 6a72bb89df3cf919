//! Deterministic triangulations of the standard test manifolds.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::complex::SimplicialComplex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GeneratorSpec {
    /// Boundary of the `(d+1)`-simplex.
    Sphere(usize),
    /// Möbius' 7-vertex torus.
    Torus2,
    /// 6-vertex projective plane.
    Rp2,
    Klein,
    /// Orientable surface of genus `g` from the identified `4g`-gon.
    Genus(usize),
    /// 3×3×3 periodic grid, six tetrahedra per cube.
    Torus3,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("unknown generator {0:?}")]
    Unknown(String),
    #[error("bad parameter for {name}: {message}")]
    BadSpec { name: &'static str, message: String },
}

impl GeneratorSpec {
    /// All bundled generators used by the test suites.
    pub const BUNDLED: [GeneratorSpec; 8] = [
        GeneratorSpec::Sphere(1),
        GeneratorSpec::Sphere(2),
        GeneratorSpec::Sphere(3),
        GeneratorSpec::Torus2,
        GeneratorSpec::Rp2,
        GeneratorSpec::Klein,
        GeneratorSpec::Genus(2),
        GeneratorSpec::Torus3,
    ];

    pub fn check(&self) -> Result<(), GeneratorError> {
        match *self {
            GeneratorSpec::Sphere(d) if !(1..=3).contains(&d) => Err(GeneratorError::BadSpec {
                name: "sphere",
                message: format!("dimension {d} not in 1..=3"),
            }),
            GeneratorSpec::Genus(g) if g < 2 => Err(GeneratorError::BadSpec {
                name: "genus",
                message: format!("genus {g} < 2"),
            }),
            _ => Ok(()),
        }
    }

    /// Closed-form Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        match *self {
            GeneratorSpec::Sphere(d) => 1 + if d % 2 == 0 { 1 } else { -1 },
            GeneratorSpec::Torus2 | GeneratorSpec::Klein | GeneratorSpec::Torus3 => 0,
            GeneratorSpec::Rp2 => 1,
            GeneratorSpec::Genus(g) => 2 - 2 * g as i64,
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeneratorSpec::Sphere(d) => write!(f, "sphere:{d}"),
            GeneratorSpec::Torus2 => write!(f, "torus2"),
            GeneratorSpec::Rp2 => write!(f, "rp2"),
            GeneratorSpec::Klein => write!(f, "klein"),
            GeneratorSpec::Genus(g) => write!(f, "genus:{g}"),
            GeneratorSpec::Torus3 => write!(f, "torus3"),
        }
    }
}

impl FromStr for GeneratorSpec {
    type Err = GeneratorError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (name, param) = match s.split_once(':') {
            Some((n, p)) => (n, Some(p)),
            None => (s, None),
        };
        let number = |name: &'static str| -> Result<usize, GeneratorError> {
            param
                .ok_or_else(|| GeneratorError::BadSpec {
                    name,
                    message: "missing parameter".into(),
                })?
                .parse()
                .map_err(|_| GeneratorError::BadSpec {
                    name,
                    message: format!("bad parameter {:?}", param.unwrap_or_default()),
                })
        };
        let no_param = |spec: GeneratorSpec| match param {
            None => Ok(spec),
            Some(p) => Err(GeneratorError::BadSpec {
                name: "generator",
                message: format!("{name} takes no parameter, got {p:?}"),
            }),
        };
        let spec = match name {
            "sphere" => GeneratorSpec::Sphere(number("sphere")?),
            "genus" => GeneratorSpec::Genus(number("genus")?),
            "torus2" | "torus" => no_param(GeneratorSpec::Torus2)?,
            "rp2" => no_param(GeneratorSpec::Rp2)?,
            "klein" => no_param(GeneratorSpec::Klein)?,
            "torus3" => no_param(GeneratorSpec::Torus3)?,
            other => return Err(GeneratorError::Unknown(other.to_string())),
        };
        spec.check()?;
        Ok(spec)
    }
}

pub fn generate(spec: GeneratorSpec) -> Result<SimplicialComplex, GeneratorError> {
    spec.check()?;
    let facets = match spec {
        GeneratorSpec::Sphere(d) => sphere(d),
        GeneratorSpec::Torus2 => torus7(),
        GeneratorSpec::Rp2 => RP2.iter().map(|f| f.to_vec()).collect(),
        GeneratorSpec::Klein => klein(),
        GeneratorSpec::Genus(g) => polygon_surface(g),
        GeneratorSpec::Torus3 => torus3(),
    };
    Ok(SimplicialComplex::build(facets).expect("bundled generators are well formed"))
}

fn sphere(d: usize) -> Vec<Vec<usize>> {
    (0..d + 2)
        .map(|skip| (0..d + 2).filter(|&v| v != skip).collect())
        .collect()
}

fn torus7() -> Vec<Vec<usize>> {
    (0..7)
        .flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]])
        .collect()
}

const RP2: [[usize; 3]; 10] = [
    [0, 1, 2],
    [0, 2, 3],
    [0, 3, 4],
    [0, 4, 5],
    [0, 5, 1],
    [1, 2, 4],
    [2, 3, 5],
    [3, 4, 1],
    [4, 5, 2],
    [5, 1, 3],
];

/// Square grid of side `m` with `(x, 0) ~ (x, m)` and `(0, y) ~ (m, m - y)`,
/// each cell split along its main diagonal.
fn klein() -> Vec<Vec<usize>> {
    const M: usize = 4;
    let label = |i: usize, j: usize| -> usize {
        let j = j % M;
        if i == M {
            (M - j) % M
        } else {
            i * M + j
        }
    };
    let mut facets = Vec::new();
    for i in 0..M {
        for j in 0..M {
            let (a, b, c, d) = (label(i, j), label(i + 1, j), label(i, j + 1), label(i + 1, j + 1));
            facets.push(vec![a, b, d]);
            facets.push(vec![a, c, d]);
        }
    }
    facets
}

/// The `4g`-gon with word `a₁b₁a₁⁻¹b₁⁻¹…`: every side is split in three so the
/// identified boundary is a simplicial graph, an inner ring of `12g` vertices
/// sits parallel to the boundary, and a centre vertex cones off the ring.
fn polygon_surface(g: usize) -> Vec<Vec<usize>> {
    let sides = 4 * g;
    let ring = 3 * sides;
    let corner = 0;
    // Side s (0-based) of block t = s / 4 carries the letter pair 2t + (s % 2),
    // read forwards on the first occurrence and backwards on the second.
    let side_point = |s: usize, k: usize| -> usize {
        let letter = 2 * (s / 4) + (s % 2);
        let forward = s % 4 < 2;
        let k = if forward { k } else { 3 - k };
        1 + 2 * letter + (k - 1)
    };
    let boundary = |p: usize| -> usize {
        let p = p % ring;
        match p % 3 {
            0 => corner,
            k => side_point(p / 3, k),
        }
    };
    let first_inner = 1 + 2 * (2 * g);
    let inner = |p: usize| first_inner + p % ring;
    let centre = first_inner + ring;
    let mut facets = Vec::new();
    for p in 0..ring {
        facets.push(vec![boundary(p), boundary(p + 1), inner(p)]);
        facets.push(vec![boundary(p + 1), inner(p + 1), inner(p)]);
    }
    for p in 0..ring {
        facets.push(vec![inner(p), inner(p + 1), centre]);
    }
    facets
}

fn torus3() -> Vec<Vec<usize>> {
    const M: usize = 3;
    let label = |x: usize, y: usize, z: usize| (x % M) * M * M + (y % M) * M + (z % M);
    let axes: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let mut facets = Vec::new();
    for x in 0..M {
        for y in 0..M {
            for z in 0..M {
                for order in axes {
                    let mut p = [x, y, z];
                    let mut tet = vec![label(p[0], p[1], p[2])];
                    for axis in order {
                        p[axis] += 1;
                        tet.push(label(p[0], p[1], p[2]));
                    }
                    facets.push(tet);
                }
            }
        }
    }
    facets
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_names() {
        assert_eq!("sphere:2".parse(), Ok(GeneratorSpec::Sphere(2)));
        assert_eq!("genus:3".parse(), Ok(GeneratorSpec::Genus(3)));
        assert_eq!("torus2".parse(), Ok(GeneratorSpec::Torus2));
        assert!(matches!("sphere:4".parse::<GeneratorSpec>(), Err(GeneratorError::BadSpec { .. })));
        assert!(matches!("genus:1".parse::<GeneratorSpec>(), Err(GeneratorError::BadSpec { .. })));
        assert!(matches!("sphere".parse::<GeneratorSpec>(), Err(GeneratorError::BadSpec { .. })));
        assert!(matches!("rp2:1".parse::<GeneratorSpec>(), Err(GeneratorError::BadSpec { .. })));
        assert!(matches!("lens".parse::<GeneratorSpec>(), Err(GeneratorError::Unknown(_))));
        for spec in GeneratorSpec::BUNDLED {
            assert_eq!(spec.to_string().parse(), Ok(spec));
        }
    }

    #[test]
    fn counts_and_euler() {
        let torus = generate(GeneratorSpec::Torus2).unwrap();
        assert_eq!((torus.count(0), torus.count(1), torus.count(2)), (7, 21, 14));
        let rp2 = generate(GeneratorSpec::Rp2).unwrap();
        assert_eq!((rp2.count(0), rp2.count(1), rp2.count(2)), (6, 15, 10));
        let t3 = generate(GeneratorSpec::Torus3).unwrap();
        assert_eq!((t3.count(0), t3.count(3)), (27, 162));
        for spec in GeneratorSpec::BUNDLED.into_iter().chain([GeneratorSpec::Genus(3)]) {
            let k = generate(spec).unwrap();
            assert_eq!(k.euler_characteristic(), spec.euler_characteristic(), "{spec}");
            assert!(k.validate().is_admissible(), "{spec}");
        }
    }

    #[test]
    fn deterministic_output() {
        for spec in GeneratorSpec::BUNDLED {
            assert_eq!(generate(spec).unwrap().to_sc(), generate(spec).unwrap().to_sc());
        }
    }
}
