mod common;

use h1cut::complex::SimplicialComplex;
use h1cut::homology::{
    cocycle_basis, coboundary_of_potential, fundamental_cycles, homology_summary, invariant_factors, is_coboundary,
    is_cocycle, pairing, smith_normal_form, IntegerChain, IntegerCochain, IntegerMatrix, SparseMatrix,
};
use h1cut::library::{generate, GeneratorSpec};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn betti_numbers_match_rational_oracle() {
    for spec in GeneratorSpec::BUNDLED {
        let k = generate(spec).unwrap();
        let summary = homology_summary(&k);
        assert_eq!(summary.betti, common::betti(k.facets()), "{spec}");
        let alternating: i64 = summary.betti.iter().enumerate().map(|(i, b)| if i % 2 == 0 { *b as i64 } else { -(*b as i64) }).sum();
        assert_eq!(alternating, common::euler(k.facets()), "{spec}");
        assert_eq!(alternating, spec.euler_characteristic(), "{spec}");
    }
}

#[test]
fn known_groups() {
    let expect: [(GeneratorSpec, &[usize], &[i64]); 8] = [
        (GeneratorSpec::Sphere(1), &[1, 1], &[]),
        (GeneratorSpec::Sphere(2), &[1, 0, 1], &[]),
        (GeneratorSpec::Sphere(3), &[1, 0, 0, 1], &[]),
        (GeneratorSpec::Torus2, &[1, 2, 1], &[]),
        (GeneratorSpec::Rp2, &[1, 0, 0], &[2]),
        (GeneratorSpec::Klein, &[1, 1, 0], &[2]),
        (GeneratorSpec::Genus(2), &[1, 4, 1], &[]),
        (GeneratorSpec::Torus3, &[1, 3, 3, 1], &[]),
    ];
    for (spec, betti, torsion) in expect {
        let r = homology_summary(&generate(spec).unwrap());
        assert_eq!(r.betti, betti, "{spec}");
        assert_eq!(r.h1_torsion, torsion.iter().map(|t| BigInt::from(*t)).collect::<Vec<_>>(), "{spec}");
        assert_eq!(r.h1_trivial, betti[1] == 0, "{spec}");
    }
}

#[test]
fn subdivision_preserves_homology() {
    for spec in [GeneratorSpec::Sphere(2), GeneratorSpec::Torus2, GeneratorSpec::Rp2, GeneratorSpec::Klein] {
        let k = generate(spec).unwrap();
        let sd = k.barycentric_subdivision().complex;
        assert_eq!(homology_summary(&sd), homology_summary(&k), "{spec}");
        assert_eq!(homology_summary(&sd).betti, common::betti(sd.facets()), "{spec}");
    }
}

#[test]
fn basis_cocycles_are_independent_classes() {
    for spec in [GeneratorSpec::Sphere(1), GeneratorSpec::Torus2, GeneratorSpec::Klein, GeneratorSpec::Genus(2), GeneratorSpec::Torus3] {
        let k = generate(spec).unwrap();
        let basis = cocycle_basis(&k).unwrap();
        assert_eq!(basis.len(), homology_summary(&k).b1(), "{spec}");
        for z in &basis {
            assert!(is_cocycle(&k, z));
            assert!(!common::is_coboundary(k.facets(), &z.values), "{spec}");
        }
        // Pairing against the fundamental cycles has full rank.
        let cycles = fundamental_cycles(&k);
        let m = IntegerMatrix::from_fn(basis.len(), cycles.len(), |i, j| {
            BigInt::from(pairing(&k, &basis[i], &cycles[j]).unwrap())
        });
        assert_eq!(smith_normal_form(&m).rank, basis.len(), "{spec}");
    }
}

#[test]
fn coboundary_test_agrees_with_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for spec in [GeneratorSpec::Torus2, GeneratorSpec::Klein, GeneratorSpec::Rp2] {
        let k = generate(spec).unwrap();
        let basis = cocycle_basis(&k).unwrap();
        for _ in 0..20 {
            let g: Vec<i64> = (0..k.vertex_count()).map(|_| rng.gen_range(-4..=4)).collect();
            let mut z = coboundary_of_potential(&k, &g);
            if !basis.is_empty() && rng.gen_bool(0.5) {
                z = z.plus(&basis[rng.gen_range(0..basis.len())].scaled(rng.gen_range(1..=3)));
            }
            assert_eq!(is_coboundary(&k, &z).unwrap(), common::is_coboundary(k.facets(), &z.values), "{spec}");
        }
    }
}

#[test]
fn non_cocycles_are_rejected() {
    let k = generate(GeneratorSpec::Torus2).unwrap();
    let mut z = IntegerCochain::zero(&k);
    z.values[0] = 1;
    assert!(!is_cocycle(&k, &z));
    assert!(is_coboundary(&k, &z).is_err());
    let mut c = IntegerChain::zero(&k);
    c.values[0] = 1;
    assert!(pairing(&k, &cocycle_basis(&k).unwrap()[0], &c).is_err());
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..6, 1usize..6).prop_flat_map(|(r, c)| prop::collection::vec(prop::collection::vec(-6i64..=6, c), r))
}

proptest! {
    #[test]
    fn smith_form_is_a_valid_factorisation(rows in small_matrix()) {
        let a = IntegerMatrix::from_rows(&rows);
        let snf = smith_normal_form(&a);
        prop_assert!(snf.verify(&a));
        prop_assert!(snf.u.is_unimodular() && snf.v.is_unimodular());
        prop_assert!(snf.d.is_diagonal());
        for w in snf.invariant_factors.windows(2) {
            prop_assert!((&w[1] % &w[0]) == BigInt::from(0));
        }
        let dense: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|x| num_rational::BigRational::from_integer(BigInt::from(*x))).collect()).collect();
        prop_assert_eq!(snf.rank, common::rank(dense));
        let sparse = SparseMatrix::from_dense(&a).unwrap();
        prop_assert_eq!(invariant_factors(&sparse), snf.invariant_factors);
    }

    #[test]
    fn random_subcomplexes_match_oracle(mask in prop::collection::vec(any::<bool>(), 14)) {
        let torus = generate(GeneratorSpec::Torus2).unwrap();
        let facets: Vec<Vec<usize>> = torus.facets().iter().zip(&mask).filter(|(_, m)| **m).map(|(f, _)| f.clone()).collect();
        prop_assume!(!facets.is_empty());
        let k = SimplicialComplex::build(facets.clone()).unwrap();
        prop_assert_eq!(homology_summary(&k).betti, common::betti(k.facets()));
        let sd = k.barycentric_subdivision().complex;
        prop_assert_eq!(homology_summary(&sd), homology_summary(&k));
    }
}
