//! Acceptance criteria, one PASS/FAIL line each. Runs without the libtest
//! harness so the lines reach the terminal; exits non-zero on any failure.

use std::collections::BTreeSet;
use std::f64::consts::LN_2;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gibbs_core::ensembles::coin_distribution;
use gibbs_core::folsym::{
    check_equivalence, check_total_symmetry, parse_document, satisfiable_cardinalities, symmetrize,
};
use gibbs_core::thermo::{grand_canonical_limit, mixing_entropy};
use gibbs_core::{
    count_arrangements, count_w_d, count_w_i, distribution, hilbert_dimensions, limit_ratio, reduced_volume, CellUnit,
    GasSample, LevelSpec, MacrostateConstraint, SpeciesTag, StatisticsKind,
};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Wall-clock budgets.
const GOLDEN_BUDGET: Duration = Duration::from_millis(1);
const ORACLE_BUDGET: Duration = Duration::from_secs(5);
const THEOREM_BUDGET: Duration = Duration::from_secs(30);

/// Relative tolerance for real-valued entropy comparisons.
const ENTROPY_REL_TOL: f64 = 1e-9;
/// Per-particle mixing entropy ceiling at N = 10^4.
const MIXING_CEILING: f64 = 1e-3;
/// Grand-canonical ratio floor at N* = 10^4, N = 3.
const GRAND_FLOOR: (i64, i64) = (997, 1000);

const RANDOM_LEVEL_SPECS: usize = 40;

type Check = Result<String, String>;

fn ensure(cond: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(message())
    }
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn int(n: i64) -> BigInt {
    BigInt::from(n)
}

fn golden_values() -> Check {
    let start = Instant::now();
    let mb = count_arrangements(3, 2, StatisticsKind::Distinguishable);
    let be = count_arrangements(3, 2, StatisticsKind::BoseEinstein);
    let volume = reduced_volume(3, 2, &CellUnit::unit());
    let dims = hilbert_dimensions(3, 2);
    let elapsed = start.elapsed();
    ensure(mb == int(9), || format!("distinguishable count {mb}"))?;
    ensure(be == int(6), || format!("bose-einstein count {be}"))?;
    ensure(volume == q(9, 2), || format!("reduced volume {volume}"))?;
    ensure((dims.full.clone(), dims.symmetric.clone(), dims.antisymmetric.clone()) == (int(9), int(6), int(3)), || {
        format!("dimensions {dims:?}")
    })?;
    ensure(elapsed < GOLDEN_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("9, 6, 9/2, (9,6,3) in {elapsed:?}"))
}

fn coin_examples() -> Check {
    let probabilities = |kind| -> Vec<BigRational> {
        coin_distribution(kind).unwrap().into_iter().map(|(_, p)| p).collect()
    };
    let rc = probabilities(StatisticsKind::ReducedClassical);
    let be = probabilities(StatisticsKind::BoseEinstein);
    ensure(rc == [q(1, 4), q(1, 2), q(1, 4)], || format!("reduced-classical HH,HT,TT = {rc:?}"))?;
    ensure(be == [q(1, 3), q(1, 3), q(1, 3)], || format!("bose-einstein HH,HT,TT = {be:?}"))?;
    Ok("HT 1/2, HH 1/4, TT 1/4; bose-einstein 1/3 each".into())
}

fn maxwell_boltzmann_invariance() -> Check {
    let mut compared = 0;
    for c in 1..=6 {
        for n in 0..=6 {
            let mb = distribution(c, n, StatisticsKind::Distinguishable).map_err(|e| e.to_string())?;
            let rc = distribution(c, n, StatisticsKind::ReducedClassical).map_err(|e| e.to_string())?;
            ensure(mb.entries() == rc.entries(), || format!("C={c} N={n} differ"))?;
            compared += mb.entries().len();
        }
    }
    Ok(format!("{compared} entries identical over C, N <= 6"))
}

/// Assignment oracle: every map from labelled particles to cells, filtered
/// by total energy.
fn assignment_oracle(energies: &[BigRational], n: usize, e: &BigRational) -> (BigInt, BigInt) {
    let cells = energies.len();
    let mut hits = 0u64;
    let mut occupations = BTreeSet::new();
    let mut tuple = vec![0usize; n];
    loop {
        let total: BigRational = tuple.iter().map(|&c| energies[c].clone()).sum();
        if &total == e {
            hits += 1;
            let mut occ = vec![0u32; cells];
            tuple.iter().for_each(|&c| occ[c] += 1);
            occupations.insert(occ);
        }
        let mut i = 0;
        loop {
            if i == n {
                return (BigInt::from(hits), BigInt::from(occupations.len()));
            }
            tuple[i] += 1;
            if tuple[i] < cells {
                break;
            }
            tuple[i] = 0;
            i += 1;
        }
    }
}

fn level_oracles() -> Check {
    let mut rng = StdRng::seed_from_u64(0x6962_6273);
    let start = Instant::now();
    let mut nonzero = 0;
    for i in 0..RANDOM_LEVEL_SPECS {
        let levels = rng.gen_range(1..=4);
        let pairs: Vec<(i64, u64)> = (0..levels).map(|_| (rng.gen_range(0..=3), rng.gen_range(1..=3))).collect();
        let spec = LevelSpec::from_integers(&pairs).map_err(|e| e.to_string())?;
        let n = rng.gen_range(0..=4u64);
        let e = rng.gen_range(0..=3 * n as i64);
        let constraint = MacrostateConstraint::integer(n, e);
        let energies: Vec<BigRational> = pairs
            .iter()
            .flat_map(|&(energy, d)| std::iter::repeat(q(energy, 1)).take(d as usize))
            .collect();
        let (w_d, w_i) = assignment_oracle(&energies, n as usize, &q(e, 1));
        let got_d = count_w_d(&spec, &constraint).map_err(|e| e.to_string())?;
        let got_i = count_w_i(&spec, &constraint).map_err(|e| e.to_string())?;
        ensure(got_d == w_d && got_i == w_i, || {
            format!("level set #{i} {pairs:?} N={n} E={e}: got ({got_d}, {got_i}), oracle ({w_d}, {w_i})")
        })?;
        if w_d > BigInt::from(0) {
            nonzero += 1;
        }
    }
    let elapsed = start.elapsed();
    ensure(elapsed < ORACLE_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{RANDOM_LEVEL_SPECS} random specs ({nonzero} non-empty) in {elapsed:?}"))
}

fn classical_limit() -> Check {
    let mut previous: Option<BigRational> = None;
    for c in [10u64, 100, 1000, 10_000] {
        let r = limit_ratio(c, 3).map_err(|e| e.to_string())?;
        ensure(r > BigRational::one(), || format!("C={c}: ratio {r} not above 1"))?;
        if let Some(p) = &previous {
            ensure(&r < p, || format!("C={c}: ratio {r} not below {p}"))?;
        }
        let gap = BigRational::one() - r.recip();
        ensure(gap <= q(3, c as i64), || format!("C={c}: 1 - 1/ratio = {gap} exceeds 3/C"))?;
        previous = Some(r);
    }
    Ok(format!("ratio at C=10^4 is {}", previous.unwrap()))
}

fn gibbs_paradox() -> Check {
    let mut previous = f64::INFINITY;
    let mut last = 0.0;
    for n in [10u64, 100, 1000, 10_000] {
        let sample = GasSample::new(n, 10 * n, SpeciesTag(0)).map_err(|e| e.to_string())?;
        let per_particle = mixing_entropy(&sample, &sample, true) / (2 * n) as f64;
        ensure(per_particle < previous, || format!("N={n}: {per_particle} not below {previous}"))?;
        let raw = mixing_entropy(&sample, &sample, false);
        let expected = 2.0 * n as f64 * LN_2;
        ensure((raw - expected).abs() <= ENTROPY_REL_TOL * expected, || {
            format!("N={n}: uncorrected {raw} vs 2N ln 2 = {expected}")
        })?;
        previous = per_particle;
        last = per_particle;
    }
    ensure(last < MIXING_CEILING, || format!("per-particle mixing at N=10^4 is {last}"))?;
    Ok(format!("per-particle mixing at N=10^4 is {last:.3e}"))
}

fn grand_canonical() -> Check {
    let ratio = grand_canonical_limit(3, &[10_000]).map_err(|e| e.to_string())?.remove(0);
    ensure(ratio >= q(GRAND_FLOOR.0, GRAND_FLOOR.1), || format!("ratio {ratio}"))?;
    ensure(ratio <= BigRational::one(), || format!("ratio {ratio} above 1"))?;
    Ok(format!("ratio {ratio}"))
}

const CORPUS: &[(&str, usize)] = &[
    ("forall x. forall y. x = y", 1),
    ("exists x. (P(x) & forall y. y = x)", 1),
    ("exists x. exists y. (x != y & forall z. (z = x | z = y))", 2),
    ("(forall x. forall y. F(x, y)) & exists x. exists y. (x != y & forall z. (z = x | z = y))", 2),
    ("exists x. exists y. (x != y & F(x, y) & ~F(y, x) & forall z. (z = x | z = y))", 2),
    ("forall x. exists y. (x != y & forall z. (z = x | z = y))", 2),
    (
        "(forall x. forall y. forall z. (x = y | x = z | y = z)) & (exists x. exists y. x != y) \
         & forall x. (P(x) <-> ~Q(x))",
        2,
    ),
    ("exists x. exists y. exists z. (x != y & x != z & y != z & forall w. (w = x | w = y | w = z))", 3),
    (
        "(exists x. exists y. exists z. (x != y & x != z & y != z & forall w. (w = x | w = y | w = z))) \
         & (exists x. P(x)) & ~forall x. P(x)",
        3,
    ),
];

fn symmetrization_theorem() -> Check {
    const MAX_SIZE: usize = 4;
    let start = Instant::now();
    for &(text, n) in CORPUS {
        let t = parse_document(text).map_err(|e| format!("{text}: {e}"))?.0;
        let sizes = satisfiable_cardinalities(&t, MAX_SIZE).map_err(|e| e.to_string())?;
        ensure(sizes == BTreeSet::from([n]), || format!("{text}: cardinalities {sizes:?}, expected {{{n}}}"))?;
        let s = symmetrize(&t, n).map_err(|e| e.to_string())?;
        let symmetry = check_total_symmetry(&s.g, n, MAX_SIZE).map_err(|e| e.to_string())?;
        ensure(symmetry.is_symmetric(), || format!("{text}: {symmetry}"))?;
        let verdict = check_equivalence(&t, &s.t_s, MAX_SIZE).map_err(|e| e.to_string())?;
        ensure(verdict.is_equivalent(), || format!("{text}: {verdict}"))?;
    }
    let elapsed = start.elapsed();
    ensure(elapsed < THEOREM_BUDGET, || format!("took {elapsed:?}"))?;
    Ok(format!("{} sentences, sizes 1..={MAX_SIZE}, in {elapsed:?}", CORPUS.len()))
}

fn invocations() -> Vec<Vec<String>> {
    let levels = format!("{}/tests/fixtures/levels.txt", env!("CARGO_MANIFEST_DIR"));
    let commands: Vec<Vec<&str>> = vec![
        vec!["count", "--cells", "3", "--particles", "2"],
        vec!["enumerate", "--cells", "4", "--particles", "3", "--statistics", "mb"],
        vec!["dist", "--cells", "3", "--particles", "3", "--statistics", "be"],
        vec!["coins"],
        vec!["dims", "--cells", "3", "--particles", "3"],
        vec!["labels", "--base-cells", "2", "--labels", "3"],
        vec!["macro", "--levels", &levels, "--n-total", "3", "--e-total", "3", "--tau", "1/2"],
        vec!["volume", "--cells", "3", "--particles", "2", "--tau", "2/3"],
        vec!["limit", "--cells", "10,100,1000,10000", "--particles", "3"],
        vec!["entropy", "--cells", "3", "--particles", "2", "--ground-degeneracy", "3"],
        vec!["mix", "--particles-a", "10", "--cells-a", "100", "--particles-b", "10", "--cells-b", "100"],
        vec!["extensivity", "--cells", "1000", "--particles", "100"],
        vec!["grand", "--particles", "3", "--reservoir", "3..30:3"],
        vec!["et-correction", "--counts", "1,1,1", "--atoms", "3"],
        vec!["symmetrize", "--n", "2", "--formula", CORPUS[4].0, "--check-max-size", "3"],
        vec!["check-equiv", "--left", "exists x. F(x)", "--right", "forall x. F(x)", "--max-size", "2"],
        vec!["cardinalities", "--formula", CORPUS[5].0],
    ];
    let mut out = Vec::new();
    for format in ["json", "csv", "table"] {
        for c in &commands {
            let mut argv = vec!["--format".to_string(), format.to_string()];
            argv.extend(c.iter().map(|s| s.to_string()));
            out.push(argv);
        }
    }
    out
}

fn determinism() -> Check {
    let run = |argv: &[String]| {
        Command::new(env!("CARGO_BIN_EXE_gibbs"))
            .args(argv)
            .env_remove("GIBBS_FORMAT")
            .output()
            .map_err(|e| e.to_string())
    };
    let all = invocations();
    for argv in &all {
        let first = run(argv)?;
        let second = run(argv)?;
        ensure(first.status.success(), || {
            format!("{argv:?} failed: {}", String::from_utf8_lossy(&first.stderr))
        })?;
        ensure(first.stdout == second.stdout && first.stderr == second.stderr, || {
            format!("{argv:?} differs between runs")
        })?;
    }
    Ok(format!("{} invocations byte-identical across two runs", all.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Check); 9] = [
        ("golden counts, volume and dimensions", golden_values),
        ("two-coin distributions", coin_examples),
        ("distinguishable and reduced-classical distributions coincide", maxwell_boltzmann_invariance),
        ("level-constrained counts match brute-force oracles", level_oracles),
        ("classical-limit ratio decreases toward 1", classical_limit),
        ("same-gas mixing entropy vanishes per particle", gibbs_paradox),
        ("grand-canonical ratio approaches 1", grand_canonical),
        ("symmetrized sentences are symmetric and equivalent", symmetrization_theorem),
        ("CLI output is deterministic", determinism),
    ];
    let mut failures = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {}: PASS  {name} ({detail})", i + 1),
            Err(reason) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {reason}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
