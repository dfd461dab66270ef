use std::collections::BTreeSet;

use itertools::Itertools;
use serde::Serialize;

use super::{check_bound, consequence_span, evaluation_functional, kernel_of, Family, TidealError, DEFAULT_MAX_N};
use crate::algebras::{ThinAlgebra, ThinKind};
use crate::degree::Degree;
use crate::exec::{map_collect, Execution};
use crate::field::{FieldSpec, Scalar};
use crate::freelie::Ambient;
use crate::linalg::{unit, Subspace};
use crate::tuples::{self, Verdict};

/// Marker attached to tuples whose span used `x^-2`.
pub const FLAG_SUPPORT_AT_MINUS_TWO: &str =
    "support_zero(-2) used: the strict bound c < -2 would not generate x^-2";

/// Outcome of checking one tuple.
#[derive(Debug, Clone, Serialize)]
pub struct TupleVerdict {
    pub tuple: Vec<Degree>,
    pub class: Verdict,
    /// Agreement with the closed-form classifier (`U_1` only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classifier_agrees: Option<bool>,
    pub dim_ambient: usize,
    pub dim_kernel: usize,
    pub dim_span: usize,
    pub span_subset_kernel: bool,
    pub kernel_subset_span: bool,
    /// Good tuples: every `N_σ` is a scalar multiple of a fixed non-identity
    /// `N_τ` modulo the span.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equivalence: Option<bool>,
    pub rows_generated: usize,
    pub stopped_early: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub flags: Vec<String>,
    pub verified: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub span_rows: Option<Vec<Vec<Scalar>>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub bound: usize,
    /// Enumerate every consequence even after the span has reached the kernel
    /// dimension, so every specialization is checked for soundness.
    pub exhaustive: bool,
    /// Keep the echelon rows of the span in the verdict.
    pub keep_rows: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            bound: DEFAULT_MAX_N,
            exhaustive: false,
            keep_rows: false,
        }
    }
}

/// Non-identity basis monomials are pairwise proportional modulo `span`.
fn equivalence_holds(amb: &Ambient, phi: &[Scalar], span: &Subspace, field: FieldSpec) -> bool {
    let Some(r) = phi.iter().position(|x| !x.is_zero()) else {
        return false;
    };
    (0..amb.dim()).all(|s| {
        let mut v = unit(field, amb.dim(), s);
        if !phi[s].is_zero() {
            let ratio = phi[s].try_div(&phi[r]).expect("nonzero");
            v[r] = &v[r] - &ratio;
        }
        span.contains(&v)
    })
}

pub fn verify_tuple(
    g: &[Degree],
    a: &ThinAlgebra,
    families: &[Family],
    opts: VerifyOptions,
) -> Result<TupleVerdict, TidealError> {
    check_bound(g.len(), opts.bound)?;
    let field = a.field();
    let amb = Ambient::for_degrees(g);
    let phi = evaluation_functional(&amb, a);
    let kernel = kernel_of(&amb, a);
    let target = (!opts.exhaustive).then_some(kernel.rank());
    let outcome = consequence_span(g, a, families, target);
    let span = &outcome.span;

    let class = if kernel.rank() == amb.dim() {
        Verdict::Bad
    } else {
        Verdict::Good
    };
    let classifier_agrees = match a.kind() {
        ThinKind::U1 => {
            let ints: Option<Vec<i64>> = g.iter().map(Degree::as_int).collect();
            ints.map(|t| {
                tuples::classify(&t, field.characteristic())
                    .map(|c| c.verdict == class)
                    .unwrap_or(false)
            })
        }
        _ => None,
    };
    let span_subset_kernel = outcome.unsound.is_empty() && span.is_subspace_of(&kernel);
    let kernel_subset_span = kernel.is_subspace_of(span);
    let equivalence = (class == Verdict::Good).then(|| equivalence_holds(&amb, &phi, span, field));

    let mut flags = Vec::new();
    if outcome.instances.contains("support_zero(-2)") {
        flags.push(FLAG_SUPPORT_AT_MINUS_TWO.to_string());
    }
    for name in outcome.unsound.iter().unique() {
        flags.push(format!("unsound consequence from {name}"));
    }
    let verified = span_subset_kernel
        && kernel_subset_span
        && classifier_agrees != Some(false)
        && equivalence != Some(false);
    Ok(TupleVerdict {
        tuple: g.to_vec(),
        class,
        classifier_agrees,
        dim_ambient: amb.dim(),
        dim_kernel: kernel.rank(),
        dim_span: span.rank(),
        span_subset_kernel,
        kernel_subset_span,
        equivalence,
        rows_generated: outcome.rows_generated,
        stopped_early: outcome.stopped_early,
        flags,
        verified,
        span_rows: opts.keep_rows.then(|| span.rows().to_vec()),
    })
}

/// A grid of tuples to verify.
#[derive(Debug, Clone)]
pub struct SweepConfig {
    pub algebra: ThinAlgebra,
    pub families: Vec<Family>,
    pub n_min: usize,
    pub n_max: usize,
    /// Entries are drawn from this list; one tuple per multiset.
    pub alphabet: Vec<Degree>,
    pub options: VerifyOptions,
    pub execution: Execution,
}

impl SweepConfig {
    pub fn integer(algebra: ThinAlgebra, families: Vec<Family>, n_max: usize, entry_min: i64, entry_max: i64) -> Self {
        SweepConfig {
            algebra,
            families,
            n_min: 1,
            n_max,
            alphabet: (entry_min..=entry_max).map(Degree::Int).collect(),
            options: VerifyOptions::default(),
            execution: Execution::default(),
        }
    }

    /// Entries range over the whole grading group.
    pub fn finite_group(algebra: ThinAlgebra, families: Vec<Family>, n_max: usize) -> Self {
        let alphabet = algebra.grading().elements().expect("finite grading group");
        SweepConfig {
            algebra,
            families,
            n_min: 1,
            n_max,
            alphabet,
            options: VerifyOptions::default(),
            execution: Execution::default(),
        }
    }

    /// Sorted representatives of every multiset in the grid.
    pub fn tuples(&self) -> Vec<Vec<Degree>> {
        let mut alphabet = self.alphabet.clone();
        alphabet.sort();
        alphabet.dedup();
        (self.n_min..=self.n_max)
            .flat_map(|n| alphabet.iter().copied().combinations_with_replacement(n).collect::<Vec<_>>())
            .collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub algebra: String,
    pub field: FieldSpec,
    pub families: Vec<Family>,
    pub n_min: usize,
    pub n_max: usize,
    pub alphabet: Vec<Degree>,
    pub tuples_checked: usize,
    pub good: usize,
    pub bad: usize,
    pub verified: usize,
    pub counterexamples: Vec<Vec<Degree>>,
    pub flags: BTreeSet<String>,
    pub passed: bool,
    pub verdicts: Vec<TupleVerdict>,
}

pub fn sweep(cfg: &SweepConfig) -> Result<VerificationReport, TidealError> {
    check_bound(cfg.n_max.max(1), cfg.options.bound)?;
    let tuples = cfg.tuples();
    let results = map_collect(&tuples, cfg.execution, |t| {
        verify_tuple(t, &cfg.algebra, &cfg.families, cfg.options)
    });
    let verdicts: Vec<TupleVerdict> = results.into_iter().collect::<Result<_, _>>()?;
    let counterexamples: Vec<Vec<Degree>> =
        verdicts.iter().filter(|v| !v.verified).map(|v| v.tuple.clone()).collect();
    let flags = verdicts.iter().flat_map(|v| v.flags.iter().cloned()).collect();
    let mut alphabet = cfg.alphabet.clone();
    alphabet.sort();
    alphabet.dedup();
    Ok(VerificationReport {
        algebra: cfg.algebra.name(),
        field: cfg.algebra.field(),
        families: cfg.families.clone(),
        n_min: cfg.n_min,
        n_max: cfg.n_max,
        alphabet,
        tuples_checked: verdicts.len(),
        good: verdicts.iter().filter(|v| v.class == Verdict::Good).count(),
        bad: verdicts.iter().filter(|v| v.class == Verdict::Bad).count(),
        verified: verdicts.iter().filter(|v| v.verified).count(),
        passed: counterexamples.is_empty(),
        counterexamples,
        flags,
        verdicts,
    })
}
