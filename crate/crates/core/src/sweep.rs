//! Exhaustive verification over small quivers: every identity between
//! incidence, Gram, Laplace and Coxeter matrices, and every invariant of
//! the associated form, checked quiver by quiver.

use std::collections::BTreeMap;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::invariants::{
    cycle_type_from_cox_poly, cyclotomic_multiplicity, spectral_multiplicity_of, totient,
    verify_coxeter_numbers_of,
};
use crate::linalg::{char_poly, rational_rank, unimodular_inverse, Matrix, Permutation};
use crate::partition::{cycle_type_of_permutation, FactoredCoxPoly, Partition};
use crate::quiver::{
    cycle_type_of_quiver, for_each_connected_quiver, incidence_bigraph_adjacency, incidence_matrix,
    inverse_quiver, normalize_vertex_labels, opposite, relabel_vertices, triangular_gram,
    underlying_degree_adjacency, vertex_permutation, Labeling, Quiver,
};
use crate::realize::{realize, Strategy};
use crate::unitform::form_of_quiver;

/// One verified property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    /// `I^T I = G + G^T`
    GramSplitting,
    /// `I^T I = 2 Id - SAdj(Inc(Q))`
    IncidenceBigraph,
    /// `I I^T = D - SAdj`
    LaplaceGraph,
    /// `Id - I^T I(Q^-1) = -G^T G^-1`
    CoxeterMatrix,
    /// `Id - I(Q^-1) I^T` is the permutation matrix of `xi^-`
    CoxeterLaplace,
    /// the Laplace matrix has corank 1 with the all-ones kernel
    LaplaceKernel,
    /// the factored Coxeter polynomial expands to `char_poly(Phi)`
    CoxeterPolynomial,
    /// the cycle type lies in `Part_1^c(m)`
    CycleTypeRange,
    /// Coxeter numbers agree with powers of `Phi`
    CoxeterNumbers,
    /// the realized quiver has the same form and cycle type
    Realization,
    /// the cycle type is recovered from the Coxeter polynomial
    PolynomialRoundTrip,
    /// root multiplicities of the Coxeter polynomial
    SpectralMultiplicity,
    /// relabeled and opposite quivers share form and cycle type
    Congruence,
}

impl Check {
    pub const ALL: [Check; 13] = [
        Check::GramSplitting,
        Check::IncidenceBigraph,
        Check::LaplaceGraph,
        Check::CoxeterMatrix,
        Check::CoxeterLaplace,
        Check::LaplaceKernel,
        Check::CoxeterPolynomial,
        Check::CycleTypeRange,
        Check::CoxeterNumbers,
        Check::Realization,
        Check::PolynomialRoundTrip,
        Check::SpectralMultiplicity,
        Check::Congruence,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::GramSplitting => "gram-splitting",
            Check::IncidenceBigraph => "incidence-bigraph",
            Check::LaplaceGraph => "laplace-graph",
            Check::CoxeterMatrix => "coxeter-matrix",
            Check::CoxeterLaplace => "coxeter-laplace",
            Check::LaplaceKernel => "laplace-kernel",
            Check::CoxeterPolynomial => "coxeter-polynomial",
            Check::CycleTypeRange => "cycle-type-range",
            Check::CoxeterNumbers => "coxeter-numbers",
            Check::Realization => "realization",
            Check::PolynomialRoundTrip => "polynomial-round-trip",
            Check::SpectralMultiplicity => "spectral-multiplicity",
            Check::Congruence => "congruence",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_vertices: usize,
    pub max_arrows: usize,
    pub labeling: Labeling,
    /// Seed for the sampled relabeling and orientation checks.
    pub seed: u64,
    /// One quiver in this many also gets the sampled checks; 0 disables them.
    pub congruence_every: u64,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            max_vertices: 5,
            max_arrows: 7,
            labeling: Labeling::FirstAppearance,
            seed: 0,
            congruence_every: 97,
        }
    }
}

/// A failed check on a specific quiver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub check: Check,
    pub quiver: Quiver,
    pub detail: String,
}

/// JSON: the fields below, with `failures` keyed by check name.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepReport {
    pub quivers: u64,
    /// Quivers realized by the exhaustive search after the basis change failed.
    pub fallbacks: u64,
    pub congruence_samples: u64,
    /// Quivers that went through the form checks.
    pub form_checks: u64,
    /// Quivers whose form checks were covered by their opposite quiver.
    pub paired: u64,
    pub failures: BTreeMap<Check, u64>,
    /// The first few failures, for diagnosis.
    pub examples: Vec<Failure>,
}

const KEPT_EXAMPLES: usize = 20;

impl SweepReport {
    pub fn failures_of(&self, check: Check) -> u64 {
        self.failures.get(&check).copied().unwrap_or(0)
    }

    pub fn total_failures(&self) -> u64 {
        self.failures.values().sum()
    }

    pub fn is_clean(&self) -> bool {
        self.total_failures() == 0
    }

    fn fail(&mut self, check: Check, q: &Quiver, detail: impl Into<String>) {
        *self.failures.entry(check).or_insert(0) += 1;
        if self.examples.len() < KEPT_EXAMPLES {
            self.examples.push(Failure {
                check,
                quiver: q.clone(),
                detail: detail.into(),
            });
        }
    }
}

impl fmt::Display for SweepReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "quivers checked: {}", self.quivers)?;
        writeln!(f, "realization fallbacks: {}", self.fallbacks)?;
        writeln!(
            f,
            "form checks: {} (plus {} covered by the opposite quiver)",
            self.form_checks, self.paired
        )?;
        writeln!(f, "sampled congruence checks: {}", self.congruence_samples)?;
        for check in Check::ALL {
            writeln!(
                f,
                "{:<24} {} failures",
                check.name(),
                self.failures_of(check)
            )?;
        }
        for e in &self.examples {
            writeln!(
                f,
                "failure {}: {} on {}",
                e.check,
                e.detail,
                serde_json::to_string(&e.quiver).unwrap_or_default()
            )?;
        }
        if self.is_clean() {
            write!(f, "all identities hold")?;
        }
        Ok(())
    }
}

/// Runs every check on every connected quiver within the bounds.
pub fn run_sweep(config: &SweepConfig) -> SweepReport {
    let mut report = SweepReport::default();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    for m in 1..=config.max_vertices {
        for n in m.saturating_sub(1)..=config.max_arrows {
            for_each_connected_quiver(m, n, config.labeling, |q| {
                report.quivers += 1;
                check_quiver_paired(q, &mut report);
                if config.congruence_every > 0 && rng.random_range(0..config.congruence_every) == 0
                {
                    report.congruence_samples += 1;
                    check_congruence(q, &mut rng, &mut report);
                }
            });
        }
    }
    report
}

fn ones_kernel(l: &Matrix<i64>) -> bool {
    let m = l.rows();
    let ones = vec![1i64; m];
    rational_rank(l) + 1 == m && l.mul_vec(&ones).is_ok_and(|v| v.iter().all(|x| *x == 0))
}

/// Runs the per-quiver checks, recording failures in `report`.
pub fn check_quiver(q: &Quiver, report: &mut SweepReport) {
    if let Some((phi, ct)) = check_matrices(q, report) {
        if q.arrow_count() > 0 {
            check_form_reporting(q, &phi, &ct, report);
        }
    }
}

/// Like [`check_quiver`], but when the opposite quiver comes earlier in
/// the sweep order only confirms that both share form and cycle type: the
/// form checks then ran on the opposite quiver already, or will.
fn check_quiver_paired(q: &Quiver, report: &mut SweepReport) {
    let Some((phi, ct)) = check_matrices(q, report) else {
        return;
    };
    if q.arrow_count() == 0 {
        return;
    }
    let op = normalize_vertex_labels(&opposite(q));
    if op.arrows() >= q.arrows() {
        check_form_reporting(q, &phi, &ct, report);
        return;
    }
    report.paired += 1;
    if triangular_gram::<i64>(&op) != triangular_gram::<i64>(q)
        || cycle_type_of_quiver(&op).as_ref() != Ok(&ct)
    {
        report.fail(
            Check::Congruence,
            q,
            "opposite quiver has another form or cycle type",
        );
    }
}

fn check_form_reporting(q: &Quiver, phi: &Matrix<i64>, ct: &Partition, report: &mut SweepReport) {
    report.form_checks += 1;
    if let Err(e) = check_form(q, phi, ct, report) {
        report.fail(Check::Realization, q, e.to_string());
    }
}

/// Quiver-level identities; returns the Coxeter matrix and the cycle type
/// when both formulas for the Coxeter matrix agree.
fn check_matrices(q: &Quiver, report: &mut SweepReport) -> Option<(Matrix<i64>, Partition)> {
    let (m, n) = (q.vertex_count(), q.arrow_count());
    let inc = incidence_matrix::<i64>(q);
    let inc_t = inc.transpose();
    let gram = triangular_gram::<i64>(q);
    let sym = inc_t.mul(&inc).expect("conformable");

    if gram.add(&gram.transpose()).as_ref() != Ok(&sym) {
        report.fail(Check::GramSplitting, q, "I^T I differs from G + G^T");
    }
    let two = Matrix::<i64>::from_fn(n, n, |i, j| if i == j { 2 } else { 0 });
    if two.sub(&incidence_bigraph_adjacency(q)).as_ref() != Ok(&sym) {
        report.fail(
            Check::IncidenceBigraph,
            q,
            "I^T I differs from 2 Id - SAdj(Inc(Q))",
        );
    }
    let lap = inc.mul(&inc_t).expect("conformable");
    let (deg, adj) = underlying_degree_adjacency::<i64>(q);
    if deg.sub(&adj).as_ref() != Ok(&lap) {
        report.fail(Check::LaplaceGraph, q, "I I^T differs from D - SAdj");
    }
    if !ones_kernel(&lap) {
        report.fail(
            Check::LaplaceKernel,
            q,
            "Laplace matrix kernel is not spanned by the all-ones vector",
        );
    }
    let walks = inverse_quiver(q).and_then(|inv| Ok((inv, vertex_permutation(q)?)));
    let (inv, xi) = match walks {
        Ok(w) => w,
        Err(e) => {
            report.fail(Check::CoxeterLaplace, q, e.to_string());
            return None;
        }
    };
    let inc_inv = incidence_matrix::<i64>(&inv);
    let lambda = Matrix::<i64>::identity(m).sub(&inc_inv.mul(&inc_t).expect("conformable"));
    if lambda
        .ok()
        .and_then(|l| Permutation::from_matrix(&l))
        .as_ref()
        != Some(&xi)
    {
        report.fail(
            Check::CoxeterLaplace,
            q,
            "Id - I(Q^-1) I^T is not the permutation matrix of the vertex permutation",
        );
    }
    let via_inverse = Matrix::<i64>::identity(n).sub(&inc_t.mul(&inc_inv).expect("conformable"));
    let via_gram = unimodular_inverse(&gram).and_then(|g_inv| gram.transpose().mul(&g_inv));
    match (via_inverse, via_gram) {
        (Ok(a), Ok(b)) if a == b.neg() => Some((a, cycle_type_of_permutation(&xi))),
        _ => {
            report.fail(
                Check::CoxeterMatrix,
                q,
                "Id - I^T I(Q^-1) differs from -G^T G^-1",
            );
            None
        }
    }
}

fn check_form(
    q: &Quiver,
    phi: &Matrix<i64>,
    ct: &Partition,
    report: &mut SweepReport,
) -> Result<()> {
    let m = q.vertex_count();
    let n = q.arrow_count();
    let c = n + 1 - m;
    let form = form_of_quiver::<i64>(q);
    let res = realize(&form)?;
    if res.strategy == Strategy::Backtracking {
        report.fallbacks += 1;
    }
    let realized_ct = cycle_type_of_quiver(&res.quiver)?;
    if triangular_gram::<i64>(&res.quiver) != *form.upper() || realized_ct != *ct {
        report.fail(
            Check::Realization,
            q,
            format!(
                "realized {:?} with cycle type {realized_ct}",
                res.quiver.arrows()
            ),
        );
    }
    let cox = char_poly(phi)?;
    // the factored polynomial of the form, from the realized quiver's cycle type
    if FactoredCoxPoly::for_cycle_type(&realized_ct, c).expand::<i64>() != cox {
        report.fail(
            Check::CoxeterPolynomial,
            q,
            format!("char poly {cox} for cycle type {realized_ct}"),
        );
    }
    if !ct.fits_corank(c) || ct.total() != m {
        report.fail(
            Check::CycleTypeRange,
            q,
            format!("cycle type {ct} with corank {c}"),
        );
    }
    if !verify_coxeter_numbers_of(phi, ct)? {
        report.fail(
            Check::CoxeterNumbers,
            q,
            format!("powers of Phi disagree with cycle type {ct}"),
        );
    }
    match cycle_type_from_cox_poly(&cox, c) {
        Ok(back) if back == *ct => {}
        other => report.fail(
            Check::PolynomialRoundTrip,
            q,
            format!("{cox} gave {other:?}"),
        ),
    }
    if !spectrum_matches(&cox, ct, c, n)? {
        report.fail(
            Check::SpectralMultiplicity,
            q,
            format!("{cox} against cycle type {ct}"),
        );
    }
    Ok(())
}

/// Multiplicity of each root order `d` (1 and every divisor of a part) in
/// `cox` equals the predicted one, and these roots account for all `n`.
fn spectrum_matches(
    cox: &crate::linalg::Polynomial<i64>,
    ct: &Partition,
    c: usize,
    n: usize,
) -> Result<bool> {
    let max = ct.parts()[0];
    let mut degree = 0;
    for d in 1..=max {
        if d > 1 && !ct.parts().iter().any(|p| p % d == 0) {
            continue;
        }
        let found = cyclotomic_multiplicity(cox, d);
        if found != spectral_multiplicity_of(ct, c, d)? {
            return Ok(false);
        }
        degree += found * totient(d);
    }
    Ok(degree == n && cox.degree() == Some(n))
}

/// Relabels vertices at random and reverses all arrows: the form must not
/// change and neither must the cycle type.
fn check_congruence(q: &Quiver, rng: &mut ChaCha8Rng, report: &mut SweepReport) {
    let m = q.vertex_count();
    let mut images: Vec<usize> = (1..=m).collect();
    images.shuffle(rng);
    let rho = Permutation::from_images(images).expect("shuffled identity");
    let relabeled = relabel_vertices(q, &rho).expect("sizes agree");
    let variants = [relabeled, opposite(q)];
    let form = triangular_gram::<i64>(q);
    let ct = cycle_type_of_quiver(q);
    for v in &variants {
        if triangular_gram::<i64>(v) != form || cycle_type_of_quiver(v) != ct {
            report.fail(Check::Congruence, q, format!("variant {:?}", v.arrows()));
        }
    }
}
