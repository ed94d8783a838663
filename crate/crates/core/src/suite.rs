//! The randomized identity suite behind `ncinvert identities`.
//!
//! Each identity runs on `trials` independent instances drawn from
//! [`Sampler::derived`], so any single trial can be replayed from the seed,
//! the identity's position in [`IDENTITIES`] and the trial index.

use rayon::prelude::*;
use serde::Serialize;

use crate::commutative::{
    abelianize_all, abelianized_nt_satisfies_comm_pde, c_seq_abelianizes, comm_pde_check,
};
use crate::deformation::*;
use crate::error::Result;
use crate::freealg::FormalMap;
use crate::inversion::{invert_fixed_point, n_seq_recurrent};
use crate::random::Sampler;
use crate::rings::{PrimeField, Rationals, Ring, TQuotient};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub trials: usize,
    /// Instances use `1..=max_arity` variables.
    pub max_arity: usize,
    /// Truncation degree `D`.
    pub degree: usize,
    /// Largest `t`-order `K`; instances use `2..=t_order`.
    pub t_order: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            trials: 20,
            max_arity: 3,
            degree: 6,
            t_order: 5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// Indices of failing trials.
    pub failed_trials: Vec<usize>,
    pub errors: Vec<String>,
}

impl IdentityOutcome {
    pub fn ok(&self) -> bool {
        self.passed == self.trials
    }
}

type Check = fn(&mut Sampler, &SuiteConfig) -> Result<bool>;

/// Every identity in the suite, in report order.
pub const IDENTITIES: &[(&str, Check)] = &[
    ("chain-rule", chain_rule),
    ("jacobian-chain-rule", jacobian_chain_rule),
    ("t-chain-rule", t_chain_rule),
    ("deformation-inverse-identities", deformation_inverses),
    ("induced-derivations", induced_derivations),
    ("flow-equations", flow_equations),
    ("special-deformation", special_structure),
    ("nt-equation", nt_equation),
    ("nt-boundary", nt_boundary),
    ("abelianized-c-sequence", abelianized_c_sequence),
    ("commutative-nt-equation", commutative_nt_equation),
    ("charp-vanishing-p2", |s, c| charp_vanishing(s, c, 2)),
    ("charp-vanishing-p3", |s, c| charp_vanishing(s, c, 3)),
    ("charp-vanishing-p5", |s, c| charp_vanishing(s, c, 5)),
    ("n-sequence-order-bound", order_bound),
    ("n-sequence-degree-bound", degree_bound),
    ("n-sequence-homogeneity", homogeneity),
    ("inverse-family", inverse_family),
    ("pullback-equation", pullback_equation),
    ("convolution-recurrence", convolution_recurrence),
];

pub fn identity_names() -> Vec<&'static str> {
    IDENTITIES.iter().map(|(n, _)| *n).collect()
}

/// Runs one identity by name; `None` when the name is unknown.
pub fn run_identity(name: &str, config: &SuiteConfig) -> Option<IdentityOutcome> {
    let label = IDENTITIES.iter().position(|(n, _)| *n == name)?;
    let (name, check) = IDENTITIES[label];
    let results: Vec<Result<bool>> = (0..config.trials)
        .into_par_iter()
        .map(|trial| {
            let mut sampler = Sampler::derived(config.seed, label as u64, trial as u64);
            check(&mut sampler, config)
        })
        .collect();
    let mut outcome = IdentityOutcome {
        name,
        trials: config.trials,
        passed: 0,
        failed_trials: Vec::new(),
        errors: Vec::new(),
    };
    for (trial, r) in results.into_iter().enumerate() {
        match r {
            Ok(true) => outcome.passed += 1,
            Ok(false) => outcome.failed_trials.push(trial),
            Err(e) => {
                outcome.failed_trials.push(trial);
                outcome.errors.push(format!("trial {trial}: {e}"));
            }
        }
    }
    Some(outcome)
}

pub fn run_suite(config: &SuiteConfig) -> Vec<IdentityOutcome> {
    IDENTITIES
        .iter()
        .map(|(name, _)| run_identity(name, config).expect("listed identity"))
        .collect()
}

fn arity(s: &mut Sampler, c: &SuiteConfig) -> usize {
    s.range(1, c.max_arity)
}

fn t_order(s: &mut Sampler, c: &SuiteConfig) -> usize {
    s.range(2.min(c.t_order), c.t_order)
}

fn deformed(s: &mut Sampler, c: &SuiteConfig) -> Result<DeformedMap<Rationals>> {
    let n = arity(s, c);
    let tq = TQuotient::new(Rationals, t_order(s, c));
    deform_invert(s.h_t(&tq, n, c.degree))
}

fn chain_rule(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    let f = FormalMap::from_h(h.clone())?;
    let g = invert_fixed_point(&h)?;
    let delta = s.derivation(&Rationals, n, c.degree);
    let u = s.series(&Rationals, n, c.degree, 0, 3, 4);
    chain_rule_holds(&f, &g, &delta, &u)
}

fn jacobian_chain_rule(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    let f = FormalMap::from_h(h.clone())?;
    let g = invert_fixed_point(&h)?;
    let us: Vec<_> = (0..n)
        .map(|_| s.series(&Rationals, n, c.degree, 1, 3, 3))
        .collect();
    Ok(jacobian_chain_rule_holds(&f, &g)? && matrix_chain_rule_holds(&f, &g, &us)?)
}

fn t_chain_rule(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let d = deformed(s, c)?;
    let coeffs: Vec<_> = (0..=d.t_order())
        .map(|_| s.series(&Rationals, d.arity(), c.degree, 0, 3, 2))
        .collect();
    let u_t = from_t_coefficients(d.quotient(), &coeffs);
    t_chain_rule_holds(d.f_t(), d.g_t(), &u_t)
}

fn deformation_inverses(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    Ok(deformation_identities(&deformed(s, c)?)?.iter().all(|&b| b))
}

fn induced_derivations(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    Ok(induced_derivation_identities(&deformed(s, c)?)?
        .iter()
        .all(|&b| b))
}

fn flow_equations(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let d = deformed(s, c)?;
    let u = s.series(&Rationals, d.arity(), c.degree, 0, 3, 4);
    Ok(flow_identities(&d, &u)?.iter().all(|&b| b))
}

fn special(s: &mut Sampler, c: &SuiteConfig) -> Result<SpecialDeformation<Rationals>> {
    let n = arity(s, c);
    let k = t_order(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    special_deformation(&h, k)
}

fn special_structure(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    Ok(special_deformation_identities(&special(s, c)?)?
        .iter()
        .all(|&b| b))
}

fn nt_equation(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let sd = special(s, c)?;
    Ok(nt_pde_holds(sd.n_t(), sd.h())?[0])
}

fn nt_boundary(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let sd = special(s, c)?;
    Ok(nt_pde_holds(sd.n_t(), sd.h())?[1])
}

fn abelianized_c_sequence(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    c_seq_abelianizes(&h, 5)
}

fn commutative_nt_equation(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let k = t_order(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    Ok(comm_pde_check(&abelianize_all(&h), k)? && abelianized_nt_satisfies_comm_pde(&h, k)?)
}

/// Needs `N_[p+1]` inside the truncation, so the degree is raised to at
/// least `p + 2` and, for `p = 5`, the arity capped at 2.
fn charp_vanishing(s: &mut Sampler, c: &SuiteConfig, p: u64) -> Result<bool> {
    let gf = PrimeField::new(p)?;
    let degree = c.degree.max(p as usize + 2);
    let max_arity = if degree > c.degree {
        c.max_arity.min(2)
    } else {
        c.max_arity
    };
    let n = s.range(1, max_arity);
    let h = s.h(&gf, n, degree, 3);
    let seq = n_seq_via_deformation(&h)?;
    let (holds, checked) = charp_vanishing_holds(&seq)?;
    Ok(holds && checked > 0)
}

fn order_bound(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    Ok(n_seq_recurrent(&h)?.satisfies_order_bound())
}

fn degree_bound(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    Ok(n_seq_recurrent(&h)?.satisfies_degree_bound())
}

fn homogeneity(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let d = s.range(2, 3);
    let h = s.homogeneous_h(&Rationals, n, c.degree, d);
    Ok(n_seq_recurrent(&h)?.satisfies_homogeneity(d))
}

fn inverse_family(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    let h = s.h(&Rationals, n, c.degree, 3);
    let seq = n_seq_recurrent(&h)?;
    let q = |t: &str| Rationals.parse(t).expect("literal");
    for (t0, s0) in [("1/3", "1/2"), ("-2", "3/4")] {
        if !inverse_family_holds(&seq, &q(t0), &q(s0))? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pullback_equation(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let sd = special(s, c)?;
    let u = s.series(&Rationals, sd.h().len(), c.degree, 0, 3, 4);
    pullback_pde_holds(&sd, &u)
}

/// Alternates between the rationals and a small prime field, since the
/// recurrence read off the deformation holds in every characteristic.
fn convolution_recurrence(s: &mut Sampler, c: &SuiteConfig) -> Result<bool> {
    let n = arity(s, c);
    if s.range(0, 1) == 0 {
        let h = s.h(&Rationals, n, c.degree, 3);
        recurrence_holds(&n_seq_via_deformation(&h)?)
    } else {
        let gf = PrimeField::new(*s.pick(&[2, 3, 5]))?;
        let h = s.h(&gf, n, c.degree, 3);
        recurrence_holds(&n_seq_via_deformation(&h)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suite_passes() {
        let config = SuiteConfig {
            seed: 3,
            trials: 3,
            max_arity: 2,
            degree: 5,
            t_order: 3,
        };
        for outcome in run_suite(&config) {
            assert!(outcome.ok(), "{outcome:?}");
        }
    }

    #[test]
    fn unknown_identity() {
        assert!(run_identity("no-such-identity", &SuiteConfig::default()).is_none());
    }
}
