//! Acceptance criteria, one pass/fail line each. All comparisons are exact
//! (tolerance 0); the time limit printed next to each line is informative.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use ncinvert::freealg::{FormalMap, NCSeries};
use ncinvert::inversion::{
    invert_charp_direct, invert_charp_lift, invert_fixed_point, invert_recurrent, verify_inverse,
    LiftOptions,
};
use ncinvert::random::Sampler;
use ncinvert::rings::{PrimeField, Rationals, Ring};
use ncinvert::suite::{run_suite, SuiteConfig};
use ncinvert::trees::{
    catalan, enumerate_pbtrees, factorial_identity_check, gf_identity_check, invert_tree,
};
use ncinvert::Result;
use num_rational::BigRational;
use num_traits::One;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Result<Outcome> {
    Ok(Outcome {
        passed,
        detail: detail.into(),
    })
}

/// `ad_y(u) = yu - uy`.
fn ad_y<R: Ring>(u: &NCSeries<R>, y: &NCSeries<R>) -> NCSeries<R> {
    &(y * u) - &(u * y)
}

/// `Σ_{m<D} c^m ad_y^m(x)` in two letters.
fn ad_series<R: Ring>(ring: R, d: usize, c: &R::Elem) -> NCSeries<R> {
    let x = NCSeries::var(ring.clone(), 2, d, 0);
    let y = NCSeries::var(ring.clone(), 2, d, 1);
    let mut term = x.clone();
    let mut sum = x.zero_like();
    let mut power = ring.one();
    for _ in 0..d {
        sum = &sum + &term.scale(&power);
        term = ad_y(&term, &y);
        power = ring.mul(&power, c);
    }
    sum
}

/// `F = (x - c(yx - xy), y)`.
fn commutator_h<R: Ring>(ring: R, d: usize, c: &R::Elem) -> Vec<NCSeries<R>> {
    let x = NCSeries::var(ring.clone(), 2, d, 0);
    let y = NCSeries::var(ring.clone(), 2, d, 1);
    vec![(&(&y * &x) - &(&x * &y)).scale(c), y.zero_like()]
}

fn commutator_example_char0() -> Result<Outcome> {
    let d = 10;
    let h = commutator_h(Rationals, d, &Rationals.one());
    let f = FormalMap::from_h(h.clone())?;
    let want = ad_series(Rationals, d, &Rationals.one());
    let y = NCSeries::var(Rationals, 2, d, 1);
    let engines: [(&str, FormalMap<Rationals>); 3] = [
        ("fixed-point", invert_fixed_point(&h)?),
        ("recurrent", invert_recurrent(&h)?),
        ("tree", invert_tree(&h)?),
    ];
    let mut bad = Vec::new();
    for (name, g) in &engines {
        let ok =
            *g.component(0) == want && *g.component(1) == y && verify_inverse(&f, g)?.verified();
        if !ok {
            bad.push(*name);
        }
    }
    outcome(
        bad.is_empty(),
        format!("D={d}, engines fixed-point/recurrent/tree, failing: {bad:?}"),
    )
}

fn commutator_example_char5() -> Result<Outcome> {
    let d = 8;
    let gf = PrimeField::new(5)?;
    let four = gf.from_i64(4);
    let h = commutator_h(gf, d, &four);
    let f = FormalMap::from_h(h.clone())?;
    let want = ad_series(gf, d, &four);
    let engines = [
        ("charp-direct", invert_charp_direct(&h)?.assemble(&1)),
        ("charp-lift", invert_charp_lift(&h, LiftOptions::default())?),
        (
            "charp-lift(int)",
            invert_charp_lift(
                &h,
                LiftOptions {
                    integer_representatives: true,
                },
            )?,
        ),
    ];
    let mut bad = Vec::new();
    for (name, g) in &engines {
        if *g.component(0) != want || !verify_inverse(&f, g)?.verified() {
            bad.push(*name);
        }
    }
    outcome(bad.is_empty(), format!("GF(5), D={d}, failing: {bad:?}"))
}

fn engine_equivalence() -> Result<Outcome> {
    let d = 8;
    let mut sampler = Sampler::new(20_240_601);
    let mut mismatches = 0;
    let mut unverified = 0;
    for _ in 0..50 {
        let n = sampler.range(1, 3);
        let h = sampler.h(&Rationals, n, d, 3);
        let f = FormalMap::from_h(h.clone())?;
        let g = invert_fixed_point(&h)?;
        if invert_recurrent(&h)? != g || invert_tree(&h)? != g {
            mismatches += 1;
        }
        if !verify_inverse(&f, &g)?.verified() {
            unverified += 1;
        }
    }
    outcome(
        mismatches == 0 && unverified == 0,
        format!("50 maps, D={d}, mismatches {mismatches}, unverified {unverified}"),
    )
}

fn catalan_sanity() -> Result<Outcome> {
    let d = 12;
    let z = NCSeries::var(Rationals, 1, d, 0);
    let g = invert_fixed_point(&[&z * &z])?;
    let listed: [u64; 12] = [1, 1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786];
    let mut ok = true;
    let mut word = Vec::new();
    for (k, &c) in listed.iter().enumerate() {
        word.push(0u8);
        let got = g
            .component(0)
            .coeff(&ncinvert::freealg::Word::from_letters(&word));
        ok &= got == Rationals.from_i64(c as i64) && catalan(k) == c.into();
    }
    outcome(ok, format!("n=1, H=z^2, D={d}"))
}

fn tree_factorials() -> Result<Outcome> {
    let sums = factorial_identity_check(10);
    let all_one = sums.len() == 10 && sums.iter().all(|(_, s)| *s == BigRational::one());
    let count = enumerate_pbtrees(10)?.len();
    let gf = gf_identity_check(10);
    outcome(
        all_one && count == 4862 && gf,
        format!("m<=10, {count} trees at m=10, generating function to order 10: {gf}"),
    )
}

fn identity_suite() -> Result<Outcome> {
    let config = SuiteConfig {
        seed: 1,
        ..SuiteConfig::default()
    };
    let results = run_suite(&config);
    let failing: Vec<_> = results.iter().filter(|r| !r.ok()).map(|r| r.name).collect();
    for r in results.iter().filter(|r| !r.ok()) {
        eprintln!(
            "  {}: failed trials {:?} {:?}",
            r.name, r.failed_trials, r.errors
        );
    }
    outcome(
        failing.is_empty(),
        format!(
            "{} identities x {} trials, n<={}, D={}, K<={}, failing: {failing:?}",
            results.len(),
            config.trials,
            config.max_arity,
            config.degree,
            config.t_order
        ),
    )
}

/// Bumps every stored coefficient of `g` in turn and checks that the
/// reported first failing degree is the bumped word's degree.
fn mutations_detected<R: Ring>(f: &FormalMap<R>, g: &FormalMap<R>) -> Result<(usize, usize)> {
    let ring = g.ring().clone();
    let (mut total, mut wrong) = (0, 0);
    for i in 0..g.arity() {
        for (w, c) in g.component(i).terms() {
            let mut comps = g.components().to_vec();
            comps[i].set_coeff(w.clone(), ring.add(c, &ring.one()));
            let mutated = FormalMap::general(comps)?;
            total += 1;
            if verify_inverse(f, &mutated)?.first_failing_degree() != Some(w.degree()) {
                wrong += 1;
            }
        }
    }
    Ok((total, wrong))
}

fn mutation_sensitivity() -> Result<Outcome> {
    let d = 7;
    let h = commutator_h(Rationals, d, &Rationals.one());
    let (t1, w1) = mutations_detected(&FormalMap::from_h(h.clone())?, &invert_recurrent(&h)?)?;
    let gf = PrimeField::new(5)?;
    let h5 = commutator_h(gf, d, &gf.from_i64(4));
    let g5 = invert_charp_direct(&h5)?.assemble(&1);
    let (t2, w2) = mutations_detected(&FormalMap::from_h(h5)?, &g5)?;
    let h3 = Sampler::new(99).h(&Rationals, 3, 5, 3);
    let (t3, w3) = mutations_detected(&FormalMap::from_h(h3.clone())?, &invert_fixed_point(&h3)?)?;
    let total = t1 + t2 + t3;
    let wrong = w1 + w2 + w3;
    outcome(
        wrong == 0,
        format!("{total} single-coefficient mutations, misreported {wrong}"),
    )
}

type Criterion = (&'static str, Duration, fn() -> Result<Outcome>);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        (
            "1 commutator-example-char0",
            Duration::from_secs(5),
            commutator_example_char0,
        ),
        (
            "2 commutator-example-char5",
            Duration::from_secs(5),
            commutator_example_char5,
        ),
        (
            "3 engine-equivalence",
            Duration::from_secs(60),
            engine_equivalence,
        ),
        ("4 catalan", Duration::from_secs(1), catalan_sanity),
        (
            "5 tree-factorials",
            Duration::from_secs(10),
            tree_factorials,
        ),
        ("6 identity-suite", Duration::from_secs(300), identity_suite),
        (
            "7 mutation-sensitivity",
            Duration::from_secs(60),
            mutation_sensitivity,
        ),
    ];
    let mut all = true;
    for (name, limit, run) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let (passed, detail) = match result {
            Ok(o) => (o.passed, o.detail),
            Err(e) => (false, format!("error: {e}")),
        };
        all &= passed;
        println!(
            "{} criterion {name}: {detail} [tolerance 0, {:.2}s, limit {}s]",
            if passed { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            limit.as_secs()
        );
    }
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
