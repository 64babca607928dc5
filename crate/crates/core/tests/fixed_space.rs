use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use spinstab::chevalley::{ChevalleyAlgebra, LatticeKind, RootSystem, RootSystemKind};
use spinstab::spinrep::{
    direct_sum, halfspin_rep_on, is_noncentral, jordan_type, nilpotent_from_partition,
    torus_max_eigenspace, unipotent_from_roots, ExponentVector, Parity, Partition, Representation,
};
use spinstab::stab::{fixed_space_dim, group_fixed_dim};
use spinstab::{Elem, Field};

fn d_alg(r: usize, p: u32) -> ChevalleyAlgebra {
    ChevalleyAlgebra::new(
        RootSystemKind::D(r),
        LatticeKind::SimplyConnected,
        &Field::prime(p).unwrap(),
    )
    .unwrap()
}

/// A mix of dense elements and sparse combinations of a few basis vectors.
fn random_element(alg: &ChevalleyAlgebra, rng: &mut ChaCha8Rng) -> Vec<Elem> {
    let f = alg.field();
    let mut x = alg.zero();
    if rng.gen_bool(0.25) {
        for c in x.iter_mut() {
            *c = f.random(rng);
        }
    } else {
        for _ in 0..rng.gen_range(1..=4) {
            let j = rng.gen_range(0..alg.dim());
            x[j] = f.add(x[j], 1 + rng.gen_range(0..f.order() as u8 - 1));
        }
    }
    x
}

#[test]
fn three_quarter_bound_on_lie_algebra_elements() {
    // Over GF(7) the Lie algebra of Spin_{2r} has trivial centre, so noncentral means nonzero.
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for r in 4..=7 {
        let alg = d_alg(r, 7);
        let even = halfspin_rep_on(&alg, Parity::Even).unwrap();
        let odd = halfspin_rep_on(&alg, Parity::Odd).unwrap();
        let spin = direct_sum(&even, &odd).unwrap();
        let mut checked = 0;
        let mut largest = 0;
        while checked < 200 {
            let x = random_element(&alg, &mut rng);
            if x.iter().all(|&c| c == 0) {
                continue;
            }
            for rep in [&even, &spin] {
                let d = fixed_space_dim(rep, &x).unwrap();
                assert!(
                    4 * d <= 3 * rep.dim(),
                    "D{r} {}: dim V^x = {d} of {}",
                    rep.label(),
                    rep.dim()
                );
                largest = largest.max(4 * d / rep.dim());
            }
            checked += 1;
        }
        // Root vectors reach the bound, so the sample is not vacuous.
        assert_eq!(largest, 3, "D{r}");
    }
}

#[test]
fn three_quarter_bound_on_unipotents() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for r in 4..=7 {
        let f = Field::prime(2).unwrap();
        let alg =
            ChevalleyAlgebra::new(RootSystemKind::D(r), LatticeKind::SimplyConnected, &f).unwrap();
        let rep = halfspin_rep_on(&alg, Parity::Even).unwrap();
        let roots = alg.root_system().roots().to_vec();
        for _ in 0..50 {
            let k = rng.gen_range(1..=3);
            let mut chosen: Vec<spinstab::RootVec> = Vec::new();
            while chosen.len() < k {
                let a = &roots[rng.gen_range(0..roots.len())];
                if chosen.iter().all(|b| a.dot4(b) == 0) {
                    chosen.push(a.clone());
                }
            }
            let g = unipotent_from_roots(&rep, &chosen).unwrap();
            let d = group_fixed_dim(&g).unwrap();
            assert!(4 * d <= 3 * rep.dim(), "D{r}: {d} of {}", rep.dim());
        }
    }
}

#[test]
fn long_root_element_on_d9_fixes_three_quarters() {
    let f = Field::prime(2).unwrap();
    let alg =
        ChevalleyAlgebra::new(RootSystemKind::D(9), LatticeKind::SimplyConnected, &f).unwrap();
    let rep = halfspin_rep_on(&alg, Parity::Even).unwrap();
    let roots = alg.root_system().roots();
    let g = unipotent_from_roots(&rep, &roots[..1]).unwrap();
    assert_eq!(group_fixed_dim(&g).unwrap(), 192);
    // ε_1 − ε_2 and ε_3 − ε_4 are orthogonal.
    let a = spinstab::RootVec::from_integer(&[1, -1, 0, 0, 0, 0, 0, 0, 0]);
    let b = spinstab::RootVec::from_integer(&[0, 0, 1, -1, 0, 0, 0, 0, 0]);
    let g2 = unipotent_from_roots(&rep, &[a, b]).unwrap();
    assert!(8 * group_fixed_dim(&g2).unwrap() <= 5 * 256);
}

fn all_vectors(r: usize, m: u64) -> impl Iterator<Item = ExponentVector> {
    let total = (m as usize).pow(r as u32);
    (0..total).map(move |mut k| {
        let c: Vec<i64> = (0..r)
            .map(|_| {
                let d = (k % m as usize) as i64;
                k /= m as usize;
                d
            })
            .collect();
        ExponentVector::new(c, m).unwrap()
    })
}

fn weights(r: usize, parity: Parity) -> Representation {
    let alg = ChevalleyAlgebra::new(
        RootSystemKind::D(r),
        LatticeKind::SimplyConnected,
        &Field::prime(2).unwrap(),
    )
    .unwrap();
    halfspin_rep_on(&alg, parity).unwrap()
}

#[test]
fn five_eighths_bound_exhaustive_orders_two_and_three() {
    for r in 5..=7 {
        let roots = RootSystem::new(RootSystemKind::D(r))
            .unwrap()
            .roots()
            .to_vec();
        for parity in [Parity::Even, Parity::Odd] {
            let rep = weights(r, parity);
            let mut noncentral = 0;
            for m in [2, 3] {
                for c in all_vectors(r, m).filter(|c| is_noncentral(&roots, c)) {
                    let e = torus_max_eigenspace(rep.weights(), &c).unwrap();
                    assert!(
                        8 * e <= 5 * rep.dim(),
                        "D{r} {parity:?} {c:?}: {e} of {}",
                        rep.dim()
                    );
                    noncentral += 1;
                }
            }
            assert!(noncentral > 0);
        }
    }
}

#[test]
fn five_eighths_bound_sampled_orders_five_and_seven() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for r in 5..=7 {
        let roots = RootSystem::new(RootSystemKind::D(r))
            .unwrap()
            .roots()
            .to_vec();
        let rep = weights(r, Parity::Even);
        for m in [5u64, 7] {
            for _ in 0..500 {
                let c =
                    ExponentVector::new((0..r).map(|_| rng.gen_range(0..m as i64)).collect(), m)
                        .unwrap();
                if is_noncentral(&roots, &c) {
                    let e = torus_max_eigenspace(rep.weights(), &c).unwrap();
                    assert!(8 * e <= 5 * rep.dim());
                }
            }
        }
    }
}

#[test]
fn largest_eigenspace_on_d5() {
    let rep = weights(5, Parity::Even);
    let c = ExponentVector::new(vec![1, 1, 1, 1, 0], 1000).unwrap();
    assert_eq!(torus_max_eigenspace(rep.weights(), &c).unwrap(), 6);
}

#[test]
fn jordan_types_on_so9_spin_module() {
    let alg = d_alg(5, 7);
    let spin = halfspin_rep_on(&alg, Parity::Even).unwrap();
    for (lambda, expected) in [("2^4,1", "(3,2^4,1^5)"), ("2^2,1^5", "(2^4,1^8)")] {
        let x = nilpotent_from_partition(&alg, &lambda.parse().unwrap()).unwrap();
        assert_eq!(
            jordan_type(&spin.element_matrix(&x).unwrap())
                .unwrap()
                .to_string(),
            expected
        );
    }
}

#[test]
fn so18_partition_fixed_space() {
    let alg = d_alg(9, 7);
    let rep = halfspin_rep_on(&alg, Parity::Even).unwrap();
    let lambda: Partition = "2,2,2,2,1x8"
        .parse::<Partition>()
        .unwrap()
        .padded(18)
        .unwrap();
    let x = nilpotent_from_partition(&alg, &lambda).unwrap();
    assert_eq!(fixed_space_dim(&rep, &x).unwrap(), 160);
    // Sixteen copies of (3, 2^4, 1^5).
    assert_eq!(
        jordan_type(&rep.element_matrix(&x).unwrap())
            .unwrap()
            .to_string(),
        "(3^16,2^64,1^80)"
    );
}
