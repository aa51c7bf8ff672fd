//! Counting functions checked against brute-force enumeration of
//! particle-to-cell assignment functions.

use std::collections::BTreeSet;

use gibbs_core::exactnum::{power, rational_power};
use gibbs_core::occupancy::{
    arrangement_weight, count_arrangements, count_w_d, count_w_i, enumerate_macrostates,
    enumerate_occupations, limit_ratio, reduced_volume, reduced_volume_constrained, CellUnit,
    LevelSpec, MacrostateConstraint, OccupationVector, StatisticsKind,
};
use gibbs_core::factorial;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Every function from `particles` labelled particles to `cells` cells.
fn assignments(cells: usize, particles: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..particles {
        out = out
            .into_iter()
            .flat_map(|a| {
                (0..cells).map(move |c| {
                    let mut b = a.clone();
                    b.push(c);
                    b
                })
            })
            .collect();
    }
    out
}

fn occupation_of(assignment: &[usize], cells: usize) -> Vec<u64> {
    let mut counts = vec![0u64; cells];
    for &c in assignment {
        counts[c] += 1;
    }
    counts
}

#[test]
fn counts_match_assignment_oracle() {
    for cells in 1..=7usize {
        for particles in 0..=7usize {
            if cells.pow(particles as u32) > 200_000 {
                continue;
            }
            let all = assignments(cells, particles);
            let occupations: BTreeSet<Vec<u64>> = all.iter().map(|a| occupation_of(a, cells)).collect();
            let exclusive = occupations.iter().filter(|v| v.iter().all(|&n| n <= 1)).count();
            let (c, n) = (cells as u64, particles as u64);

            assert_eq!(count_arrangements(c, n, StatisticsKind::Distinguishable), BigInt::from(all.len()));
            assert_eq!(count_arrangements(c, n, StatisticsKind::BoseEinstein), BigInt::from(occupations.len()));
            assert_eq!(count_arrangements(c, n, StatisticsKind::ReducedClassical), BigInt::from(occupations.len()));
            assert_eq!(count_arrangements(c, n, StatisticsKind::FermiDirac), BigInt::from(exclusive));

            let listed = enumerate_occupations(c, n, StatisticsKind::BoseEinstein).unwrap();
            let listed_set: BTreeSet<Vec<u64>> = listed.iter().map(|v| v.counts().to_vec()).collect();
            assert_eq!(listed_set, occupations);
        }
    }
}

#[test]
fn enumeration_length_equals_count_for_every_kind() {
    for c in 1..=7u64 {
        for n in 0..=7u64 {
            for kind in StatisticsKind::ALL {
                let listed = enumerate_occupations(c, n, kind).unwrap();
                // Occupation vectors, not labelled assignments: classical kinds list the
                // same vectors as Bose-Einstein and differ only in weight.
                let vectors = match kind {
                    StatisticsKind::FermiDirac => StatisticsKind::FermiDirac,
                    _ => StatisticsKind::BoseEinstein,
                };
                assert_eq!(BigInt::from(listed.len()), count_arrangements(c, n, vectors), "C={c} N={n} {kind}");
                if kind == StatisticsKind::FermiDirac {
                    assert!(listed.iter().all(OccupationVector::is_exclusive));
                }
                // Strictly descending lexicographic order, hence distinct.
                assert!(listed.windows(2).all(|w| w[0].counts() > w[1].counts()));
                assert!(listed.iter().all(|v| v.particles() == n && v.cells() == c as usize));
            }
        }
    }
}

#[test]
fn weights_sum_to_unreduced_and_reduced_volumes() {
    for c in 1..=7u64 {
        for n in 0..=7u64 {
            let vectors = enumerate_occupations(c, n, StatisticsKind::BoseEinstein).unwrap();
            let mb: BigRational = vectors
                .iter()
                .map(|v| arrangement_weight(v, StatisticsKind::Distinguishable))
                .sum();
            assert_eq!(mb, BigRational::from_integer(power(c, n)));
            let rc: BigRational = vectors
                .iter()
                .map(|v| arrangement_weight(v, StatisticsKind::ReducedClassical))
                .sum();
            assert_eq!(rc, BigRational::new(power(c, n), factorial(n)));
            assert_eq!(rc, reduced_volume(c, n, &CellUnit::unit()));
        }
    }
}

#[test]
fn reduced_volume_two_cells_three_particles_by_hand() {
    // [3,0], [2,1], [1,2], [0,3] -> 1/6 + 1/2 + 1/2 + 1/6
    let by_hand = BigRational::new(1.into(), 6.into())
        + BigRational::new(1.into(), 2.into())
        + BigRational::new(1.into(), 2.into())
        + BigRational::new(1.into(), 6.into());
    assert_eq!(reduced_volume(2, 3, &CellUnit::unit()), by_hand);
}

#[test]
fn two_particle_space_splits_into_symmetric_and_antisymmetric() {
    for c in 1..=40u64 {
        let be = count_arrangements(c, 2, StatisticsKind::BoseEinstein);
        let fd = count_arrangements(c, 2, StatisticsKind::FermiDirac);
        assert_eq!(be + fd, BigInt::from(c * c));
    }
}

/// Cell energies of a level spec, one entry per cell.
fn cell_energies(spec: &LevelSpec) -> Vec<BigRational> {
    spec.levels()
        .iter()
        .flat_map(|l| std::iter::repeat(l.energy.clone()).take(l.degeneracy as usize))
        .collect()
}

fn brute_force_w_d(spec: &LevelSpec, c: &MacrostateConstraint) -> BigInt {
    let energies = cell_energies(spec);
    let hits = assignments(energies.len(), c.n_total as usize)
        .into_iter()
        .filter(|a| a.iter().map(|&cell| energies[cell].clone()).sum::<BigRational>() == c.e_total)
        .count();
    BigInt::from(hits)
}

fn brute_force_w_i(spec: &LevelSpec, c: &MacrostateConstraint) -> BigInt {
    let energies = cell_energies(spec);
    let vectors: BTreeSet<Vec<u64>> = assignments(energies.len(), c.n_total as usize)
        .iter()
        .map(|a| occupation_of(a, energies.len()))
        .collect();
    let hits = vectors
        .iter()
        .filter(|v| {
            v.iter()
                .zip(&energies)
                .map(|(&n, e)| e * BigRational::from_integer(n.into()))
                .sum::<BigRational>()
                == c.e_total
        })
        .count();
    BigInt::from(hits)
}

fn random_instance(rng: &mut StdRng) -> (LevelSpec, MacrostateConstraint) {
    let levels = rng.gen_range(1..=4);
    let pairs: Vec<(i64, u64)> = (0..levels).map(|_| (rng.gen_range(0..=3), rng.gen_range(1..=3))).collect();
    let spec = LevelSpec::from_integers(&pairs).unwrap();
    let n_total = rng.gen_range(0..=4u64);
    let e_total = rng.gen_range(0..=(3 * n_total as i64).max(1));
    (spec, MacrostateConstraint::integer(n_total, e_total))
}

#[test]
fn level_counts_match_brute_force_on_random_specs() {
    let mut rng = StdRng::seed_from_u64(0x5eed_1905);
    let mut nonzero = 0;
    for _ in 0..200 {
        let (spec, c) = random_instance(&mut rng);
        let w_d = count_w_d(&spec, &c).unwrap();
        assert_eq!(w_d, brute_force_w_d(&spec, &c), "{spec:?} {c:?}");
        assert_eq!(count_w_i(&spec, &c).unwrap(), brute_force_w_i(&spec, &c), "{spec:?} {c:?}");
        let volume = reduced_volume_constrained(&spec, &c, &CellUnit::unit()).unwrap();
        assert_eq!(volume, BigRational::new(w_d.clone(), factorial(c.n_total)));
        if !w_d.is_zero() {
            nonzero += 1;
        }
    }
    assert!(nonzero > 50, "too few non-trivial instances: {nonzero}");
}

#[test]
fn macrostates_match_exhaustive_filter() {
    let mut rng = StdRng::seed_from_u64(42);
    for _ in 0..100 {
        let (spec, c) = random_instance(&mut rng);
        let j = spec.levels().len();
        let mut expected = Vec::new();
        let mut stack = vec![Vec::<u64>::new()];
        while let Some(partial) = stack.pop() {
            if partial.len() == j {
                let count: u64 = partial.iter().sum();
                let energy: BigRational = partial
                    .iter()
                    .zip(spec.levels())
                    .map(|(&n, l)| &l.energy * BigRational::from_integer(n.into()))
                    .sum();
                if count == c.n_total && energy == c.e_total {
                    expected.push(partial);
                }
                continue;
            }
            for n in 0..=c.n_total {
                let mut next = partial.clone();
                next.push(n);
                stack.push(next);
            }
        }
        expected.sort_by(|a, b| b.cmp(a));
        assert_eq!(enumerate_macrostates(&spec, &c).unwrap(), expected);
    }
}

#[test]
fn constrained_volume_scales_with_tau() {
    let spec = LevelSpec::from_integers(&[(0, 2), (1, 3), (2, 1)]).unwrap();
    let c = MacrostateConstraint::integer(3, 3);
    let tau = BigRational::new(2.into(), 5.into());
    let unit = CellUnit::new(tau.clone()).unwrap();
    let w_d = count_w_d(&spec, &c).unwrap();
    let expected = BigRational::from_integer(w_d) * rational_power(&tau, 3) / BigRational::from_integer(factorial(3));
    assert_eq!(reduced_volume_constrained(&spec, &c, &unit).unwrap(), expected);
}

#[test]
fn limit_ratio_is_the_closed_product() {
    for c in 1..=30u64 {
        for n in 0..=8u64 {
            let product: BigRational = (1..n)
                .map(|i| BigRational::one() + BigRational::new(i.into(), c.into()))
                .product();
            assert_eq!(limit_ratio(c, n).unwrap(), product, "C={c} N={n}");
        }
    }
}

#[test]
fn limit_ratio_decreases_toward_one() {
    for n in 2..=6u64 {
        let mut previous: Option<BigRational> = None;
        for c in 1..=60u64 {
            let r = limit_ratio(c, n).unwrap();
            assert!(r >= BigRational::one());
            let bound = BigRational::new((n * n).into(), (2 * c).into()) * &r;
            assert!(&r - BigRational::one() <= bound, "C={c} N={n}");
            if let Some(p) = previous {
                assert!(r < p);
            }
            previous = Some(r);
        }
    }
}
