//! Seeded random property suites over periodic-tier sets.

use density_core::density::{lower_density, upper_density};
use density_core::metric::exact_dist;
use density_core::rational::abs_diff;
use density_core::setfun::SetFunctionTable;
use density_core::{DensitySet, PeriodicSet, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Window handed to the density estimators; periodic-tier answers are exact
/// regardless of its value.
const WINDOW: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub failures: Vec<String>,
}

impl SuiteResult {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// A random eventually periodic set: threshold below 6, period at most 12.
pub fn random_periodic(rng: &mut ChaCha8Rng) -> DensitySet {
    let threshold = rng.gen_range(0..6u64);
    let period = rng.gen_range(1..=12u64);
    let residues: Vec<u64> = (0..period).filter(|_| rng.gen_bool(0.5)).collect();
    let prefix: Vec<bool> = (0..threshold).map(|_| rng.gen_bool(0.5)).collect();
    DensitySet::from_periodic(PeriodicSet::new(threshold, period, &residues, prefix).expect("valid parameters"))
}

fn upper(s: &DensitySet) -> Rational {
    upper_density(s, WINDOW).exact().expect("periodic tier is exact")
}

fn lower(s: &DensitySet) -> Rational {
    lower_density(s, WINDOW).exact().expect("periodic tier is exact")
}

fn d(a: &DensitySet, b: &DensitySet) -> Rational {
    exact_dist(a, b, WINDOW).expect("periodic tier is exact")
}

fn show(s: &DensitySet) -> String {
    match s.as_periodic() {
        Some(p) => format!("{p:?}"),
        None => format!("{s:?}"),
    }
}

fn triples(seed: u64, samples: usize) -> Vec<[DensitySet; 3]> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..samples)
        .map(|_| {
            [
                random_periodic(&mut rng),
                random_periodic(&mut rng),
                random_periodic(&mut rng),
            ]
        })
        .collect()
}

/// `d(a,a) = 0`, symmetry and the triangle inequality.
pub fn pseudometric_suite(seed: u64, samples: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for (case, [a, b, c]) in triples(seed, samples).iter().enumerate() {
        if d(a, a) != Rational::from_integer(0) {
            failures.push(format!("case {case}: d(a,a) != 0 for a = {}", show(a)));
        }
        if d(a, b) != d(b, a) {
            failures.push(format!("case {case}: asymmetric on {} and {}", show(a), show(b)));
        }
        if d(a, c) > d(a, b) + d(b, c) {
            failures.push(format!(
                "case {case}: triangle fails on {}, {}, {}",
                show(a),
                show(b),
                show(c)
            ));
        }
    }
    SuiteResult {
        name: "pseudometric",
        cases: samples,
        failures,
    }
}

/// The four conjugacy implications for `(ν⁺, ν⁻)`. Each random triple is
/// bent into an instance of the premise: `a ∩ (b ∪ c)` is covered by `b`
/// and `c`, and `b`, `c ∖ b` pack inside `a ∪ b ∪ c`.
pub fn conjugacy_suite(seed: u64, samples: usize) -> SuiteResult {
    let mut failures = Vec::new();
    for (case, [a, b, c]) in triples(seed, samples).iter().enumerate() {
        let covered = a.intersect(&b.union(c));
        if upper(&covered) > upper(b) + upper(c) {
            failures.push(format!("case {case}: subadditivity"));
        }
        if lower(&covered) > lower(b) + upper(c) {
            failures.push(format!("case {case}: co-subadditivity"));
        }
        let c2 = c.difference(b);
        let packed = a.union(b).union(c);
        if lower(&packed) < lower(b) + lower(&c2) {
            failures.push(format!("case {case}: superadditivity"));
        }
        if upper(&packed) < upper(b) + lower(&c2) {
            failures.push(format!("case {case}: co-superadditivity"));
        }
    }
    SuiteResult {
        name: "conjugacy",
        cases: samples,
        failures,
    }
}

/// `|ν⁺(A) − ν⁺(B)| ≤ d(A,B)` and `|ν⁻(A) − ν⁻(B)| ≤ d(A,B)`.
pub fn continuity_suite(seed: u64, samples: usize) -> SuiteResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..samples {
        let (a, b) = (random_periodic(&mut rng), random_periodic(&mut rng));
        let dist = d(&a, &b);
        if abs_diff(upper(&a), upper(&b)) > dist {
            failures.push(format!(
                "case {case}: upper density jumps on {} and {}",
                show(&a),
                show(&b)
            ));
        }
        if abs_diff(lower(&a), lower(&b)) > dist {
            failures.push(format!(
                "case {case}: lower density jumps on {} and {}",
                show(&a),
                show(&b)
            ));
        }
    }
    SuiteResult {
        name: "continuity",
        cases: samples,
        failures,
    }
}

/// Conjugacy of `(ν⁺, ν⁻)` restricted to unions of residue classes mod `m`.
pub fn residue_model_suite(modulus: u64) -> SuiteResult {
    let mut failures = Vec::new();
    match SetFunctionTable::residue_model(modulus, WINDOW) {
        Ok(t) => {
            let checks = [
                ("subadditive", t.is_subadditive()),
                ("superadditive", t.is_superadditive()),
                ("co-subadditive", t.is_co_subadditive()),
                ("co-superadditive", t.is_co_superadditive()),
            ];
            for (name, check) in checks {
                match check {
                    Ok(c) => {
                        if let Some(x) = c.counterexample {
                            failures.push(format!("{name}: {x}"));
                        }
                    }
                    Err(e) => failures.push(format!("{name}: {e}")),
                }
            }
        }
        Err(e) => failures.push(e.to_string()),
    }
    SuiteResult {
        name: "residue-model",
        cases: 4,
        failures,
    }
}

pub fn all_suites(seed: u64, samples: usize) -> Vec<SuiteResult> {
    vec![
        pseudometric_suite(seed, samples),
        conjugacy_suite(seed, samples),
        continuity_suite(seed, samples),
        residue_model_suite(4),
    ]
}
