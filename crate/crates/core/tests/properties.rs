use h1cut::homology::{
    boundary_of_two_chain, cocycle_basis, coboundary_of_potential, fundamental_cycles, is_coboundary, pairing,
};
use h1cut::library::{generate, GeneratorSpec};
use h1cut::tower::Tower;
use proptest::prelude::*;

proptest! {
    #[test]
    fn pairing_ignores_coboundaries_and_boundaries(
        g in prop::collection::vec(-5i64..=5, 7),
        w in prop::collection::vec(-3i64..=3, 14),
        which in 0usize..2,
        cycle in 0usize..2,
    ) {
        let k = generate(GeneratorSpec::Torus2).unwrap();
        let z = &cocycle_basis(&k).unwrap()[which];
        let c = &fundamental_cycles(&k)[cycle];
        let base = pairing(&k, z, c).unwrap();
        let z2 = z.plus(&coboundary_of_potential(&k, &g));
        let c2 = c.plus(&boundary_of_two_chain(&k, &w));
        prop_assert_eq!(pairing(&k, &z2, &c2).unwrap(), base);
        prop_assert!(!is_coboundary(&k, &z2).unwrap());
        prop_assert!(is_coboundary(&k, &coboundary_of_potential(&k, &g)).unwrap());
    }

    #[test]
    fn transported_cocycles_keep_their_class(g in prop::collection::vec(-5i64..=5, 7), which in 0usize..2) {
        // Pull back along the vertex retraction, perturb, then transport down.
        let k = generate(GeneratorSpec::Torus2).unwrap();
        let tower = Tower::with_depth(k.clone(), 1);
        let sd = tower.top();
        let z = &cocycle_basis(&k).unwrap()[which];
        let carriers = tower.vertex_carriers(0);
        let pulled = h1cut::homology::IntegerCochain::one(
            sd.edges().iter().map(|e| {
                let (a, b) = (carriers[e[0]][0], carriers[e[1]][0]);
                if a == b { 0 } else { z.on_edge(&k, a, b) }
            }).collect(),
        );
        let mut potential = vec![0; sd.vertex_count()];
        potential[..7].copy_from_slice(&g);
        let perturbed = pulled.plus(&coboundary_of_potential(sd, &potential));
        let down = tower.cochain_down(1, &perturbed, 0);
        let diff = down.plus(&z.scaled(-1));
        prop_assert!(is_coboundary(&k, &diff).unwrap());
    }
}
