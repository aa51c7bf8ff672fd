use std::collections::BTreeSet;

use gibbs_core::ensembles::coin_distribution;
use gibbs_core::folsym::{
    check_equivalence, check_total_symmetry, model_count, parse_document_with, satisfiable_cardinalities, symmetrize,
    EquivalenceVerdict, Formula, Signature, SymmetryVerdict, MODEL_LIMIT,
};
use gibbs_core::occupancy::{reduced_volume_constrained, StatisticsKind};
use gibbs_core::thermo::{
    ehrenfest_trkal_correction, entropy_report, extensivity_defect, grand_canonical_limit, ground_state_entropy,
    mixing_entropy,
};
use gibbs_core::{
    arrangement_weight, coincidence_probability, count_arrangements, count_w_d, count_w_i, distribution,
    enumerate_macrostates, enumerate_occupations, hilbert_dimensions, limit_ratio, ln_exact, reduced_volume,
    stable_label_reduction, CellUnit, GasSample, LabeledSystem, MacrostateConstraint, SpeciesTag,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::args::{Command, System};
use crate::error::CliError;
use crate::inputs::{formula_text, read_levels};
use crate::output::{Record, Value};

type Outcome = Result<Record, CliError>;

const COUNT_FORMULA: &str = "distinguishable: C^N; reduced-classical and bose-einstein: binomial(N+C-1, N) \
                             occupation vectors; fermi-dirac: binomial(C, N)";
const WEIGHT_FORMULA: &str = "w(n) = N!/prod n_k! (distinguishable), 1/prod n_k! (reduced-classical), \
                              1 (bose-einstein), 1 if every n_k <= 1 else 0 (fermi-dirac)";

pub fn run(command: Command) -> Outcome {
    match command {
        Command::Count { system, statistics } => count(&system, statistics),
        Command::Enumerate { system, statistics } => enumerate(&system, statistics),
        Command::Dist {
            system,
            statistics,
            coincidence,
        } => dist(&system, statistics, coincidence),
        Command::Coins { statistics } => coins(statistics),
        Command::Dims { system } => dims(&system),
        Command::Labels { base_cells, labels } => labels_command(base_cells, labels),
        Command::Macro {
            levels,
            n_total,
            e_total,
            tau,
            list,
        } => {
            let spec = read_levels(&levels)?;
            let constraint = MacrostateConstraint::new(n_total, e_total.clone());
            let mut record = Record::new(
                "macro",
                "W_D = sum over level occupations N_k of N! prod C_k^N_k / N_k!; \
                 W_I = sum of prod binomial(N_k+C_k-1, N_k); volume = W_D tau^N / N!",
            )
            .param("levels", levels.display().to_string())
            .param("n_total", n_total)
            .param("e_total", e_total);
            if list {
                record = record.columns(&["occupation"]);
                for occupation in enumerate_macrostates(&spec, &constraint)? {
                    record.row(vec![Value::List(occupation.into_iter().map(Value::Nat).collect())]);
                }
                return Ok(record);
            }
            let unit = cell_unit(tau)?;
            let macrostates = enumerate_macrostates(&spec, &constraint)?.len() as u64;
            let volume = reduced_volume_constrained(&spec, &constraint, &unit)?;
            Ok(record
                .param("tau", unit.tau().clone())
                .columns(&["macrostates", "w_d", "w_i", "reduced_volume"])
                .with_row(vec![
                    macrostates.into(),
                    count_w_d(&spec, &constraint)?.into(),
                    count_w_i(&spec, &constraint)?.into(),
                    volume.into(),
                ]))
        }
        Command::Volume { system, tau } => {
            let unit = cell_unit(tau)?;
            let volume = reduced_volume(system.cells, system.particles, &unit);
            let ln_volume = if volume > num_rational::BigRational::from_integer(0.into()) {
                Value::Real(ln_exact(&volume)?)
            } else {
                Value::Null
            };
            Ok(Record::new("volume", "(C tau)^N / N!")
                .param("cells", system.cells)
                .param("particles", system.particles)
                .param("tau", unit.tau().clone())
                .columns(&["volume", "ln_volume"])
                .with_row(vec![volume.into(), ln_volume]))
        }
        Command::Limit { cells, particles } => {
            let mut record = Record::new(
                "limit",
                "binomial(N+C-1, N) / (C^N / N!) = prod_{i<N} (1 + i/C)",
            )
            .param("particles", particles)
            .param("cells", series_value(&cells.0))
            .columns(&["cells", "ratio"]);
            for &c in &cells.0 {
                record.row(vec![c.into(), limit_ratio(c, particles)?.into()]);
            }
            Ok(record)
        }
        Command::Entropy {
            system,
            ground_degeneracy,
        } => {
            let sample = GasSample::new(system.particles, system.cells, SpeciesTag::default())?;
            let report = entropy_report(&sample);
            let mut record = Record::new("entropy", "S = ln C^N; corrected S = ln(C^N / N!); ground state S = N ln C0")
                .param("cells", system.cells)
                .param("particles", system.particles);
            let mut row = vec![report.uncorrected.into(), report.corrected.into()];
            if let Some(c0) = ground_degeneracy {
                record = record.param("ground_degeneracy", c0).columns(&["uncorrected", "corrected", "ground_state"]);
                row.push(ground_state_entropy(system.particles, c0)?.into());
            } else {
                record = record.columns(&["uncorrected", "corrected"]);
            }
            Ok(record.with_row(row))
        }
        Command::Mix {
            particles_a,
            cells_a,
            species_a,
            particles_b,
            cells_b,
            species_b,
        } => {
            let a = GasSample::new(particles_a, cells_a, SpeciesTag(species_a))?;
            let b = GasSample::new(particles_b, cells_b, SpeciesTag(species_b))?;
            let corrected = mixing_entropy(&a, &b, true);
            let uncorrected = mixing_entropy(&a, &b, false);
            let total = particles_a + particles_b;
            let per_particle = if total == 0 {
                Value::Null
            } else {
                Value::Real(corrected / total as f64)
            };
            Ok(Record::new(
                "mix",
                "S(combined over C_a + C_b cells) - S(a) - S(b); one species is counted jointly, \
                 different species independently",
            )
            .param("particles_a", particles_a)
            .param("cells_a", cells_a)
            .param("species_a", species_a as u64)
            .param("particles_b", particles_b)
            .param("cells_b", cells_b)
            .param("species_b", species_b as u64)
            .columns(&["same_species", "corrected", "uncorrected", "corrected_per_particle"])
            .with_row(vec![(species_a == species_b).into(), corrected.into(), uncorrected.into(), per_particle]))
        }
        Command::Extensivity { system, scale } => {
            let sample = GasSample::new(system.particles, system.cells, SpeciesTag::default())?;
            let corrected = extensivity_defect(&sample, scale, true)?;
            let uncorrected = extensivity_defect(&sample, scale, false)?;
            let per = |x: f64| match system.particles {
                0 => Value::Null,
                n => Value::Real(x / n as f64),
            };
            Ok(Record::new("extensivity", "S(mN, mC) - m S(N, C)")
                .param("cells", system.cells)
                .param("particles", system.particles)
                .param("scale", scale)
                .columns(&["corrected", "uncorrected", "corrected_per_particle", "uncorrected_per_particle"])
                .with_row(vec![corrected.into(), uncorrected.into(), per(corrected), per(uncorrected)]))
        }
        Command::Grand { particles, reservoir } => {
            let ratios = grand_canonical_limit(particles, &reservoir.0)?;
            let mut record = Record::new("grand", "binomial(N*, N) N! / N*^N")
                .param("particles", particles)
                .param("reservoir", series_value(&reservoir.0))
                .columns(&["reservoir", "ratio"]);
            for (&size, ratio) in reservoir.0.iter().zip(ratios) {
                record.row(vec![size.into(), ratio.into()]);
            }
            Ok(record)
        }
        Command::EtCorrection { counts, atoms } => Ok(Record::new("et-correction", "ln(N*! / prod N_i!)")
            .param("counts", series_value(&counts))
            .param("atoms", atoms)
            .columns(&["correction"])
            .with_row(vec![ehrenfest_trkal_correction(&counts, atoms).into()])),
        Command::Symmetrize {
            n,
            formula,
            sig,
            check_max_size,
            no_check,
        } => symmetrize_command(n, &formula, sig.as_deref(), check_max_size, no_check),
        Command::CheckEquiv {
            left,
            right,
            sig,
            max_size,
        } => check_equiv(&left, &right, sig.as_deref(), max_size),
        Command::Cardinalities { formula, sig, max_size } => {
            let (t, signature) = read_sentence(&formula, &declared(sig.as_deref())?)?;
            let (bound, mut warnings) = feasible_bound(&signature, max_size);
            let sizes = satisfiable_cardinalities(&t, bound)?;
            warnings.push(format!("models larger than {bound} were not examined"));
            let mut record = Record::new("cardinalities", "exhaustive enumeration of models of each size")
                .param("formula", t.to_string())
                .param("signature", signature.to_string())
                .param("max_size", max_size as u64)
                .columns(&["sizes", "checked_up_to"])
                .with_row(vec![sizes_value(&sizes), (bound as u64).into()]);
            warnings.into_iter().for_each(|w| record.warn(w));
            Ok(record)
        }
    }
}

fn count(system: &System, statistics: Option<StatisticsKind>) -> Outcome {
    let kinds: Vec<StatisticsKind> = statistics.map_or(StatisticsKind::ALL.to_vec(), |k| vec![k]);
    let mut record = Record::new("count", COUNT_FORMULA)
        .param("cells", system.cells)
        .param("particles", system.particles)
        .columns(&["statistics", "count"]);
    for kind in kinds {
        record.row(vec![kind.name().into(), count_arrangements(system.cells, system.particles, kind).into()]);
    }
    Ok(record)
}

fn enumerate(system: &System, kind: StatisticsKind) -> Outcome {
    let mut record = Record::new("enumerate", WEIGHT_FORMULA)
        .param("cells", system.cells)
        .param("particles", system.particles)
        .param("statistics", kind.name())
        .columns(&["occupation", "weight"]);
    for v in enumerate_occupations(system.cells, system.particles, kind)? {
        let weight = arrangement_weight(&v, kind);
        record.row(vec![occupation_value(v.counts()), weight.into()]);
    }
    Ok(record)
}

fn dist(system: &System, kind: StatisticsKind, coincidence: bool) -> Outcome {
    let record = Record::new("dist", format!("p(n) = w(n) / sum_m w(m); {WEIGHT_FORMULA}"))
        .param("cells", system.cells)
        .param("particles", system.particles)
        .param("statistics", kind.name());
    if coincidence {
        let p = coincidence_probability(system.cells, system.particles, kind)?;
        return Ok(record.columns(&["coincidence"]).with_row(vec![p.into()]));
    }
    let mut record = record.columns(&["occupation", "probability"]);
    for (v, p) in distribution(system.cells, system.particles, kind)?.entries() {
        record.row(vec![occupation_value(v.counts()), p.clone().into()]);
    }
    Ok(record)
}

fn coins(statistics: Option<StatisticsKind>) -> Outcome {
    let kinds: Vec<StatisticsKind> = statistics.map_or(StatisticsKind::ALL.to_vec(), |k| vec![k]);
    let mut record = Record::new(
        "coins",
        format!("two particles, cells (heads, tails); p(n) = w(n) / sum_m w(m); {WEIGHT_FORMULA}"),
    )
    .columns(&["statistics", "outcome", "probability"]);
    for kind in kinds {
        for (outcome, p) in coin_distribution(kind)? {
            record.row(vec![kind.name().into(), outcome.into(), p.into()]);
        }
    }
    if let Some(kind) = statistics {
        record = record.param("statistics", kind.name());
    }
    Ok(record)
}

fn dims(system: &System) -> Outcome {
    let d = hilbert_dimensions(system.cells, system.particles);
    let deficit = d.mixed_deficit();
    Ok(Record::new(
        "dims",
        "full C^N; symmetric binomial(N+C-1, N); antisymmetric binomial(C, N); remainder has mixed symmetry",
    )
    .param("cells", system.cells)
    .param("particles", system.particles)
    .columns(&["full", "symmetric", "antisymmetric", "mixed_deficit"])
    .with_row(vec![d.full.into(), d.symmetric.into(), d.antisymmetric.into(), deficit.into()]))
}

fn labels_command(base_cells: u64, labels: u64) -> Outcome {
    let r = stable_label_reduction(&LabeledSystem::new(base_cells, labels)?);
    Ok(Record::new(
        "labels",
        "composite cells L*C; reduced count binomial(N+LC-1, N); vectors with one particle per label block C^L",
    )
    .param("base_cells", base_cells)
    .param("labels", labels)
    .columns(&["composite_cells", "reduced_count", "accessible_count"])
    .with_row(vec![r.composite_cells.into(), r.reduced_count.into(), r.accessible_count.into()]))
}

fn cell_unit(tau: Option<num_rational::BigRational>) -> Result<CellUnit, CliError> {
    Ok(match tau {
        Some(t) => CellUnit::new(t)?,
        None => CellUnit::unit(),
    })
}

fn occupation_value(counts: &[u64]) -> Value {
    Value::List(counts.iter().copied().map(Value::Nat).collect())
}

fn series_value(values: &[u64]) -> Value {
    Value::List(values.iter().copied().map(Value::Nat).collect())
}

fn sizes_value(sizes: &BTreeSet<usize>) -> Value {
    Value::List(sizes.iter().map(|&s| Value::Nat(s as u64)).collect())
}

fn declared(sig: Option<&str>) -> Result<Signature, CliError> {
    Ok(match sig {
        Some(text) => text.parse()?,
        None => Signature::new(),
    })
}

fn read_sentence(arg: &str, declared: &Signature) -> Result<(Formula, Signature), CliError> {
    let text = formula_text(arg)?;
    Ok(parse_document_with(&text, declared)?)
}

/// Largest size up to `requested` whose model count stays under the
/// enumeration limit, with a warning when that cuts the range short.
fn feasible_bound(sig: &Signature, requested: usize) -> (usize, Vec<String>) {
    let limit = BigInt::from(MODEL_LIMIT);
    let bound = (1..=requested).take_while(|&s| model_count(sig, s) <= limit).last().unwrap_or(0);
    let mut warnings = Vec::new();
    if bound < requested {
        warnings.push(format!(
            "checks stop at size {bound}: size {} has more than {MODEL_LIMIT} models",
            bound + 1
        ));
    }
    (bound, warnings)
}

fn symmetrize_command(n: usize, formula: &str, sig: Option<&str>, max_size: usize, no_check: bool) -> Outcome {
    let (t, signature) = read_sentence(formula, &declared(sig)?)?;
    let s = symmetrize(&t, n)?;
    let mut record = Record::new(
        "symmetrize",
        "T_S = exists x1..xn G(x1..xn); G expands the prenex matrix over names a1..an (conjunction for forall, \
         disjunction for exists, innermost first), adds distinctness and totality of the names, then replaces a_k by x_k",
    )
    .param("n", n as u64)
    .param("formula", t.to_string())
    .param("signature", signature.to_string());

    let mut columns = vec!["prenex", "g", "t_s"];
    let mut row: Vec<Value> = vec![
        s.prenex.to_formula().to_string().into(),
        s.g.to_string().into(),
        s.t_s.to_string().into(),
    ];
    if no_check {
        record.warn("semantic checks skipped; the construction is faithful only if the sentence has models of size n alone");
        return Ok(record.param("check_max_size", Value::Null).columns(&columns).with_row(row));
    }

    let (bound, warnings) = feasible_bound(&signature, max_size);
    warnings.into_iter().for_each(|w| record.warn(w));
    record = record.param("check_max_size", max_size as u64);
    if bound == 0 {
        record.warn("no universe size is small enough to check");
        return Ok(record.columns(&columns).with_row(row));
    }
    let sizes = satisfiable_cardinalities(&t, bound)?;
    if sizes != BTreeSet::from([n]) {
        record.warn(format!(
            "the sentence has models at sizes {:?} up to {bound}; the construction assumes size {n} only",
            sizes
        ));
    }
    record.warn(format!(
        "cardinality hypothesis and equivalence verified only up to size {bound}; larger models are unverified"
    ));
    let sym_bound = symmetry_bound(&signature, n, bound);
    if sym_bound < bound {
        record.warn(format!("total symmetry of G checked only up to size {sym_bound}"));
    }
    let symmetry = check_total_symmetry(&s.g, n, sym_bound)?;
    let equivalence = check_equivalence(&t, &s.t_s, bound)?;
    columns.extend([
        "cardinalities",
        "checked_up_to",
        "symmetric",
        "symmetry_checked_up_to",
        "equivalent",
        "models_checked",
        "counterexample",
    ]);
    let (models_checked, counterexample) = match &equivalence {
        EquivalenceVerdict::Equivalent { models_checked, .. } => (Value::Nat(*models_checked), Value::Null),
        EquivalenceVerdict::Counterexample { model, .. } => (Value::Null, Value::Text(model.to_string())),
    };
    row.extend([
        sizes_value(&sizes),
        (bound as u64).into(),
        symmetry.is_symmetric().into(),
        (sym_bound as u64).into(),
        equivalence.is_equivalent().into(),
        models_checked,
        counterexample,
    ]);
    if let SymmetryVerdict::Asymmetric { .. } = &symmetry {
        record.warn(symmetry.to_string());
    }
    Ok(record.columns(&columns).with_row(row))
}

/// The symmetry check evaluates `size^n` assignments per model; keep the
/// total work comparable to the enumeration limit.
fn symmetry_bound(sig: &Signature, n: usize, bound: usize) -> usize {
    let work = |size: usize| {
        let assignments = (size as u64).checked_pow(n as u32).unwrap_or(u64::MAX);
        model_count(sig, size).to_u64().unwrap_or(u64::MAX).saturating_mul(assignments)
    };
    (1..=bound).take_while(|&s| work(s) <= 16 * MODEL_LIMIT).last().unwrap_or(1)
}

fn check_equiv(left: &str, right: &str, sig: Option<&str>, max_size: usize) -> Outcome {
    if left == "-" && right == "-" {
        return Err(CliError::Input("only one of --left and --right may read standard input".into()));
    }
    let (l, sig_l) = read_sentence(left, &declared(sig)?)?;
    let (r, signature) = read_sentence(right, &sig_l)?;
    let (bound, warnings) = feasible_bound(&signature, max_size);
    let verdict = check_equivalence(&l, &r, bound.max(1))?;
    let mut record = Record::new("check-equiv", "exhaustive enumeration of models of each size up to the bound")
        .param("left", l.to_string())
        .param("right", r.to_string())
        .param("signature", signature.to_string())
        .param("max_size", max_size as u64);
    warnings.into_iter().for_each(|w| record.warn(w));
    let row = match &verdict {
        EquivalenceVerdict::Equivalent { models_checked, .. } => {
            vec![true.into(), Value::Nat(*models_checked), Value::Null, Value::Null, Value::Null]
        }
        EquivalenceVerdict::Counterexample { model, left, right } => vec![
            false.into(),
            Value::Null,
            model.to_string().into(),
            (*left).into(),
            (*right).into(),
        ],
    };
    Ok(record
        .columns(&["equivalent", "models_checked", "counterexample", "left_value", "right_value"])
        .with_row(row))
}
