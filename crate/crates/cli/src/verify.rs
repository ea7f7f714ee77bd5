//! Randomized checks of the divided-difference and series identities.

use std::f64::consts::TAU;
use std::io::Write;

use clap::ValueEnum;
use newton_holo::{
    builtin, divided_difference_distinct, divided_difference_integral, divided_difference_recursive, eval_fn,
    expand_disc, lemma1_partial, parse_function, partial_fraction_lhs, ComplexValue, Contour, HolomorphicFn,
    NodeSequence, QuadConfig,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::csv::{num, row};
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Lemma1,
    PartialFraction,
    Permutation,
    Routes,
    Uniqueness,
}

impl Suite {
    pub fn tolerance(self) -> f64 {
        match self {
            Suite::Lemma1 => 1e-13,
            Suite::PartialFraction => 1e-11,
            Suite::Permutation => 1e-12,
            Suite::Routes => 1e-9,
            Suite::Uniqueness => 1e-10,
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Lemma1 => "lemma1",
            Suite::PartialFraction => "partial-fraction",
            Suite::Permutation => "permutation",
            Suite::Routes => "routes",
            Suite::Uniqueness => "uniqueness",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Trial {
    pub index: usize,
    pub deviation: f64,
    pub tolerance: f64,
}

impl Trial {
    pub fn passed(&self) -> bool {
        self.deviation < self.tolerance
    }
}

fn in_disc(rng: &mut ChaCha8Rng, radius: f64) -> ComplexValue {
    ComplexValue::from_polar(radius * rng.gen::<f64>().sqrt(), TAU * rng.gen::<f64>())
}

fn in_annulus(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> ComplexValue {
    let r2 = lo * lo + rng.gen::<f64>() * (hi * hi - lo * lo);
    ComplexValue::from_polar(r2.sqrt(), TAU * rng.gen::<f64>())
}

/// `count` points in the disc, pairwise at least `sep` apart and at least
/// `sep` from the origin when `avoid_zero` is set.
fn separated(rng: &mut ChaCha8Rng, count: usize, radius: f64, sep: f64, avoid_zero: bool) -> Vec<ComplexValue> {
    let mut pts: Vec<ComplexValue> = Vec::with_capacity(count);
    while pts.len() < count {
        let z = in_disc(rng, radius);
        if (avoid_zero && z.norm() < sep) || pts.iter().any(|p| (p - z).norm() < sep) {
            continue;
        }
        pts.push(z);
    }
    pts
}

fn rel(a: ComplexValue, b: ComplexValue, floor: f64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm()).max(floor)
}

fn catalog() -> Vec<HolomorphicFn> {
    let parsed = |t: &str| parse_function(t).expect("catalog expression parses");
    vec![
        builtin("exp").expect("catalog builtin"),
        builtin("sin").expect("catalog builtin"),
        parsed("z^5 + 2*z - 1"),
        parsed("1/(z-3)"),
    ]
}

fn lemma1_trial(rng: &mut ChaCha8Rng) -> Result<f64, CliError> {
    let k = rng.gen_range(0..=20);
    let lambdas: Vec<_> = (0..=k).map(|_| in_annulus(rng, 0.5, 2.0)).collect();
    let x = loop {
        let x = in_disc(rng, 1.0);
        if x.norm() > 1e-6 {
            break x;
        }
    };
    let split = lemma1_partial(&lambdas, x)?;
    let inv = 1.0 / x;
    Ok((split.partial_sum + split.remainder - inv).norm() / inv.norm())
}

fn partial_fraction_trial(rng: &mut ChaCha8Rng) -> Result<f64, CliError> {
    let s = rng.gen_range(1..=8);
    let a = separated(rng, s, 2.0, 0.1, true);
    let lhs = partial_fraction_lhs(&a)?;
    let rhs = 1.0 / a.iter().product::<ComplexValue>();
    Ok(rel(lhs, rhs, 0.0))
}

fn permutation_trial(rng: &mut ChaCha8Rng) -> Result<f64, CliError> {
    let f = builtin("exp")?;
    let count = rng.gen_range(2..=7);
    let nodes = separated(rng, count, 1.0, 0.2, false);
    let base = divided_difference_distinct(&f, &nodes)?;
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let mut shuffled = nodes.clone();
        shuffled.shuffle(rng);
        worst = worst.max(rel(divided_difference_distinct(&f, &shuffled)?, base, 0.0));
    }
    Ok(worst)
}

fn routes_trial(rng: &mut ChaCha8Rng, functions: &[HolomorphicFn]) -> Result<f64, CliError> {
    let contour = Contour::circle(ComplexValue::new(0.0, 0.0), 2.0)?;
    let cfg = QuadConfig::default();
    let count = rng.gen_range(1..=7);
    let nodes = separated(rng, count, 1.0, 0.2, false);
    let mut worst: f64 = 0.0;
    for f in functions {
        let integral = divided_difference_integral(f, &contour, &nodes, &cfg)?.value;
        let recursive = divided_difference_recursive(f, &nodes, &contour, &cfg)?;
        let distinct = divided_difference_distinct(f, &nodes)?;
        // z⁵+2z−1 has Δ⁶ = 0 exactly; measure against the sampled values
        let mut floor: f64 = 0.0;
        for &z in &nodes {
            floor = floor.max(eval_fn(f, z)?.norm());
        }
        let floor = 1e-3 * floor;
        worst = worst
            .max(rel(integral, recursive, floor))
            .max(rel(integral, distinct, floor))
            .max(rel(recursive, distinct, floor));
    }
    Ok(worst)
}

fn uniqueness_trial(rng: &mut ChaCha8Rng, f: &HolomorphicFn) -> Result<f64, CliError> {
    let cfg = QuadConfig::default();
    let zero = ComplexValue::new(0.0, 0.0);
    let offset = in_disc(rng, 0.5);
    let ratio = in_annulus(rng, 0.05, 0.9);
    let nodes = NodeSequence::geometric(zero, offset, ratio)?;
    let (r1, r2) = (rng.gen_range(1.0..2.5), rng.gen_range(1.0..2.5));
    let a = expand_disc(f, &Contour::circle(zero, r1)?, &nodes, 15, &cfg)?;
    let b = expand_disc(f, &Contour::circle(zero, r2)?, &nodes, 15, &cfg)?;
    let pairs = a.regular_coeffs().iter().zip(b.regular_coeffs());
    let scale = pairs.clone().map(|(x, y)| x.norm().max(y.norm())).fold(0.0, f64::max);
    let diff = pairs.map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    Ok(diff / scale.max(f64::MIN_POSITIVE))
}

/// Runs `trials` seeded trials of one suite.
pub fn run_suite(suite: Suite, seed: u64, trials: usize) -> Result<Vec<Trial>, CliError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let functions = catalog();
    let quotient = parse_function("exp(z)/(z-3)")?;
    (0..trials)
        .map(|index| {
            let deviation = match suite {
                Suite::Lemma1 => lemma1_trial(&mut rng)?,
                Suite::PartialFraction => partial_fraction_trial(&mut rng)?,
                Suite::Permutation => permutation_trial(&mut rng)?,
                Suite::Routes => routes_trial(&mut rng, &functions)?,
                Suite::Uniqueness => uniqueness_trial(&mut rng, &quotient)?,
            };
            Ok(Trial {
                index,
                deviation,
                tolerance: suite.tolerance(),
            })
        })
        .collect()
}

/// Writes the per-trial table and a summary; returns whether every trial passed.
pub fn cmd_verify(
    suite: Suite,
    seed: u64,
    trials: usize,
    stdout: &mut impl Write,
    stderr: &mut impl Write,
) -> Result<bool, CliError> {
    let results = run_suite(suite, seed, trials)?;
    let io = |source| CliError::Io {
        path: "<stdout>".into(),
        source,
    };
    writeln!(stdout, "trial,max_deviation,tolerance,pass").map_err(io)?;
    for t in &results {
        let line = row(&[
            t.index.to_string(),
            num(t.deviation),
            num(t.tolerance),
            t.passed().to_string(),
        ]);
        writeln!(stdout, "{line}").map_err(io)?;
    }
    let passed = results.iter().filter(|t| t.passed()).count();
    let worst = results.iter().map(|t| t.deviation).fold(0.0, f64::max);
    writeln!(
        stderr,
        "{}: {passed}/{} trials passed, max deviation {worst:.3e} (tolerance {:.0e}, seed {seed})",
        suite.name(),
        results.len(),
        suite.tolerance()
    )
    .map_err(io)?;
    Ok(passed == results.len())
}
