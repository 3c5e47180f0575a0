//! Exact checks of the Rayleigh inequality
//! `M_ef(a) M^ef(a) <= M^f_e(a) M^e_f(a)`, the difference polynomial behind
//! it, balancedness of all minors, and a sampling probe of the
//! strong-Rayleigh (derivative) form at signed inputs.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::labels::LabelSet;
use crate::poly::SparsePolynomial;
use crate::positroid::{Positroid, PositroidError};
use crate::weights::{self, Rational, WeightVector};

/// Ground sets above this size are refused by [`balanced_check`].
pub const BALANCED_MAX_N: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RayleighError {
    #[error("e and f must differ (both are {0})")]
    SameLabel(usize),
    #[error("label {label} outside 1..={n}")]
    LabelRange { label: usize, n: usize },
    #[error("negative weight in a certification run")]
    NegativeWeight,
    #[error("ground set of size {n} exceeds the limit {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("at least one trial is required")]
    NoTrials,
    #[error(transparent)]
    Positroid(#[from] PositroidError),
}

fn check_labels(p: &Positroid, e: usize, f: usize) -> Result<(), RayleighError> {
    for label in [e, f] {
        if label == 0 || label > p.n() {
            return Err(RayleighError::LabelRange { label, n: p.n() });
        }
    }
    if e == f {
        return Err(RayleighError::SameLabel(e));
    }
    Ok(())
}

/// `M^f_e(w) M^e_f(w) - M_ef(w) M^ef(w)`, built from four minor evaluations.
/// With `require_nonnegative`, negative entries in `w` are an error.
pub fn rayleigh_delta_eval(
    p: &Positroid,
    e: usize,
    f: usize,
    w: &WeightVector,
    require_nonnegative: bool,
) -> Result<Rational, RayleighError> {
    check_labels(p, e, f)?;
    if require_nonnegative && !w.is_nonnegative() {
        return Err(RayleighError::NegativeWeight);
    }
    let (se, sf) = (LabelSet::singleton(e), LabelSet::singleton(f));
    let ef = se.union(sf);
    let e_not_f = p.enumerator_eval(w, se, sf)?;
    let f_not_e = p.enumerator_eval(w, sf, se)?;
    let both = p.enumerator_eval(w, ef, LabelSet::EMPTY)?;
    let neither = p.enumerator_eval(w, LabelSet::EMPTY, ef)?;
    Ok(e_not_f * f_not_e - both * neither)
}

/// The difference as a polynomial: `M^f_e M^e_f - M_ef M^ef`.
pub fn rayleigh_delta_poly(p: &Positroid, e: usize, f: usize) -> Result<SparsePolynomial, RayleighError> {
    check_labels(p, e, f)?;
    let (se, sf) = (LabelSet::singleton(e), LabelSet::singleton(f));
    let ef = se.union(sf);
    let gain = &p.enumerator_poly(se, sf)? * &p.enumerator_poly(sf, se)?;
    let loss = &p.enumerator_poly(ef, LabelSet::EMPTY)? * &p.enumerator_poly(LabelSet::EMPTY, ef)?;
    Ok(&gain - &loss)
}

/// `(dM/dx_e)(dM/dx_f) - M d^2M/(dx_e dx_f)` at `w`; equals the literal
/// difference divided by `w_e w_f` whenever both are nonzero.
pub fn derivative_delta_eval(
    p: &Positroid,
    e: usize,
    f: usize,
    w: &WeightVector,
) -> Result<Rational, RayleighError> {
    check_labels(p, e, f)?;
    p.check_weights(w)?;
    let m = SparsePolynomial::from_sets(p.bases().iter().copied());
    Ok(DerivativeForm::new(&m, e, f).eval(w))
}

struct DerivativeForm {
    m: SparsePolynomial,
    de: SparsePolynomial,
    df: SparsePolynomial,
    def: SparsePolynomial,
}

impl DerivativeForm {
    fn new(m: &SparsePolynomial, e: usize, f: usize) -> Self {
        let de = m.derivative(e);
        let df = m.derivative(f);
        let def = de.derivative(f);
        DerivativeForm { m: m.clone(), de, df, def }
    }

    fn eval(&self, w: &WeightVector) -> Rational {
        self.de.eval(w) * self.df.eval(w) - self.m.eval(w) * self.def.eval(w)
    }
}

/// Differences for every ordered pair at one weight vector, sharing the basis
/// monomials between pairs. Entry `[e-1][f-1]`; the diagonal is zero.
pub fn all_pair_deltas(p: &Positroid, w: &WeightVector) -> Result<Vec<Vec<Rational>>, RayleighError> {
    p.check_weights(w)?;
    let n = p.n();
    let scaled = w.scaled();
    let mut total = BigInt::zero();
    let mut with = vec![BigInt::zero(); n];
    let mut with_both = vec![vec![BigInt::zero(); n]; n];
    for &b in p.bases() {
        let value = scaled.monomial(b);
        let labels = b.to_vec();
        for (i, &e) in labels.iter().enumerate() {
            with[e - 1] += &value;
            for &f in &labels[i + 1..] {
                with_both[e - 1][f - 1] += &value;
            }
        }
        total += value;
    }
    let denom = scaled.denominator(2 * p.r());
    let mut out = vec![vec![Rational::zero(); n]; n];
    for e in 0..n {
        for f in e + 1..n {
            let both = &with_both[e][f];
            let e_only = &with[e] - both;
            let f_only = &with[f] - both;
            let neither = &total - &with[e] - &with[f] + both;
            let delta = Rational::new(e_only * f_only - both * neither, denom.clone());
            out[f][e] = delta.clone();
            out[e][f] = delta;
        }
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DeltaForm {
    /// `M^f_e M^e_f - M_ef M^ef`
    Literal,
    /// `(dM/dx_e)(dM/dx_f) - M d^2M/(dx_e dx_f)`
    Derivative,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayleighViolation {
    pub weights: WeightVector,
    #[serde(serialize_with = "weights::serialize_fraction")]
    pub delta: Rational,
}

/// Outcome of sampling one ordered pair `(e, f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RayleighReport {
    pub pair: (usize, usize),
    pub form: DeltaForm,
    pub trials: usize,
    pub violations: Vec<RayleighViolation>,
    #[serde(serialize_with = "weights::serialize_opt_fraction")]
    pub min_delta: Option<Rational>,
    /// Difference at trial 0, the all-ones vector.
    #[serde(serialize_with = "weights::serialize_opt_fraction")]
    pub delta_at_ones: Option<Rational>,
    pub evaluations: usize,
    /// Strictly positive trials where the literal and derivative forms were
    /// compared, and how many disagreed in sign.
    pub sign_checks: usize,
    pub sign_mismatches: usize,
}

impl RayleighReport {
    fn new(pair: (usize, usize), form: DeltaForm) -> Self {
        RayleighReport {
            pair,
            form,
            trials: 0,
            violations: Vec::new(),
            min_delta: None,
            delta_at_ones: None,
            evaluations: 0,
            sign_checks: 0,
            sign_mismatches: 0,
        }
    }

    fn record(&mut self, w: &WeightVector, delta: Rational) {
        if self.trials == 0 {
            self.delta_at_ones = Some(delta.clone());
        }
        self.trials += 1;
        self.evaluations += 1;
        if self.min_delta.as_ref().is_none_or(|m| delta < *m) {
            self.min_delta = Some(delta.clone());
        }
        if delta.is_negative() {
            self.violations.push(RayleighViolation { weights: w.clone(), delta });
        }
    }

    pub fn holds(&self) -> bool {
        self.violations.is_empty() && self.sign_mismatches == 0
    }
}

/// Trial 0 is the all-ones vector; the rest are drawn from the rational grid.
fn weight_trials(n: usize, trials: usize, seed: u64, positive: bool) -> Vec<WeightVector> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = vec![WeightVector::ones(n)];
    out.extend((1..trials).map(|_| WeightVector::sample_grid(&mut rng, n, positive)));
    out
}

/// Samples the literal difference for every ordered pair `e != f`.
/// Deterministic in `seed`; weights are positive with `positive_only`,
/// nonnegative otherwise.
pub fn sample_rayleigh(
    p: &Positroid,
    trials: usize,
    seed: u64,
    positive_only: bool,
) -> Result<Vec<RayleighReport>, RayleighError> {
    if trials == 0 {
        return Err(RayleighError::NoTrials);
    }
    let n = p.n();
    let vectors = weight_trials(n, trials, seed, positive_only);
    let tables = map_ordered(&vectors, |w| all_pair_deltas(p, w))?;
    let mut reports = Vec::with_capacity(n * n.saturating_sub(1));
    for e in 1..=n {
        for f in 1..=n {
            if e == f {
                continue;
            }
            let mut report = RayleighReport::new((e, f), DeltaForm::Literal);
            for (w, table) in vectors.iter().zip(&tables) {
                report.record(w, table[e - 1][f - 1].clone());
            }
            reports.push(report);
        }
    }
    Ok(reports)
}

fn map_ordered<T, U, E, F>(items: &[T], f: F) -> Result<Vec<U>, E>
where
    T: Sync,
    U: Send,
    E: Send,
    F: Fn(&T) -> Result<U, E> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Evaluates the derivative-form difference at signed rational inputs from
/// `[-10, 10]` (trial 0 is all-ones). A negative value is evidence against
/// the strong Rayleigh property for this positroid, nothing more. At strictly
/// positive inputs the sign is cross-checked against the literal form.
pub fn strong_probe(
    p: &Positroid,
    e: usize,
    f: usize,
    trials: usize,
    seed: u64,
) -> Result<RayleighReport, RayleighError> {
    check_labels(p, e, f)?;
    if trials == 0 {
        return Err(RayleighError::NoTrials);
    }
    let m = SparsePolynomial::from_sets(p.bases().iter().copied());
    let form = DerivativeForm::new(&m, e, f);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = RayleighReport::new((e, f), DeltaForm::Derivative);
    for t in 0..trials {
        let w = if t == 0 { WeightVector::ones(p.n()) } else { WeightVector::sample_signed(&mut rng, p.n()) };
        let delta = form.eval(&w);
        if w.is_positive() {
            let literal = rayleigh_delta_eval(p, e, f, &w, true)?;
            report.sign_checks += 1;
            if literal.signum() != delta.signum() {
                report.sign_mismatches += 1;
            }
        }
        report.record(&w, delta);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalanceViolation {
    pub contract: LabelSet,
    pub delete: LabelSet,
    pub pair: (usize, usize),
    /// `|N_ef| * |N^ef|`
    pub lhs: u64,
    /// `|N^f_e| * |N^e_f|`
    pub rhs: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BalanceReport {
    pub minors_checked: u64,
    pub inequalities_checked: u64,
    pub violations: Vec<BalanceViolation>,
}

impl BalanceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Counting form of the inequality on every nonempty minor `N = M^J_I` and
/// every pair `e, f` outside `I ∪ J`.
pub fn balanced_check(p: &Positroid) -> Result<BalanceReport, RayleighError> {
    if p.n() > BALANCED_MAX_N {
        return Err(RayleighError::TooLarge { n: p.n(), limit: BALANCED_MAX_N });
    }
    let mut report = BalanceReport::default();
    let mut walker = MinorWalk { n: p.n(), report: &mut report };
    walker.visit(1, p.bases().to_vec(), LabelSet::EMPTY, LabelSet::EMPTY);
    Ok(report)
}

/// Counting inequality for a single minor and pair.
pub fn minor_pair_counts(minor: &[LabelSet], e: usize, f: usize) -> (u64, u64) {
    let (mut both, mut neither, mut e_only, mut f_only) = (0u64, 0u64, 0u64, 0u64);
    for b in minor {
        match (b.contains(e), b.contains(f)) {
            (true, true) => both += 1,
            (false, false) => neither += 1,
            (true, false) => e_only += 1,
            (false, true) => f_only += 1,
        }
    }
    (both * neither, e_only * f_only)
}

struct MinorWalk<'a> {
    n: usize,
    report: &'a mut BalanceReport,
}

impl MinorWalk<'_> {
    /// Assigns label `k` to contract, delete or free, filtering as it goes.
    fn visit(&mut self, k: usize, bases: Vec<LabelSet>, contract: LabelSet, delete: LabelSet) {
        if bases.is_empty() {
            return;
        }
        if k > self.n {
            self.check_minor(&bases, contract, delete);
            return;
        }
        let (with, without): (Vec<LabelSet>, Vec<LabelSet>) = bases.iter().partition(|b| b.contains(k));
        let mut c = contract;
        c.insert(k);
        self.visit(k + 1, with, c, delete);
        let mut d = delete;
        d.insert(k);
        self.visit(k + 1, without, contract, d);
        self.visit(k + 1, bases, contract, delete);
    }

    fn check_minor(&mut self, minor: &[LabelSet], contract: LabelSet, delete: LabelSet) {
        self.report.minors_checked += 1;
        let free = LabelSet::full(self.n).difference(contract.union(delete)).to_vec();
        for (i, &e) in free.iter().enumerate() {
            for &f in &free[i + 1..] {
                self.report.inequalities_checked += 1;
                let (lhs, rhs) = minor_pair_counts(minor, e, f);
                if lhs > rhs {
                    self.report.violations.push(BalanceViolation { contract, delete, pair: (e, f), lhs, rhs });
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lediagram::parse_diagram;
    use crate::poly::Monomial;
    use crate::weights::int;

    fn example() -> Positroid {
        let g = parse_diagram(r#"{"n":7,"r":3,"steps":"HVVHVHH","dots":[[1,2],[2,1],[2,2],[2,3],[3,2]]}"#)
            .unwrap()
            .build_graph();
        Positroid::enumerate(&g)
    }

    fn set(labels: &[usize]) -> LabelSet {
        LabelSet::from_labels(labels.iter().copied())
    }

    fn u12() -> Positroid {
        Positroid::from_bases(2, 1, vec![set(&[1]), set(&[2])]).unwrap()
    }

    #[test]
    fn example_delta_at_ones() {
        let p = example();
        // M^7_2 = 5 bases, M^2_7 = 4, M_27 = 2, M^27 = 2
        assert_eq!(rayleigh_delta_eval(&p, 2, 7, &WeightVector::ones(7), true), Ok(int(16)));
        assert_eq!(rayleigh_delta_eval(&p, 2, 7, &WeightVector::zeros(7), true), Ok(int(0)));
        assert_eq!(rayleigh_delta_eval(&p, 2, 2, &WeightVector::ones(7), true), Err(RayleighError::SameLabel(2)));
        let negative = WeightVector::from_integers(&[1, -1, 1, 1, 1, 1, 1]);
        assert_eq!(rayleigh_delta_eval(&p, 2, 7, &negative, true), Err(RayleighError::NegativeWeight));
    }

    #[test]
    fn no_common_basis_leaves_right_side() {
        // 1 lies in no example basis
        let p = example();
        let w = WeightVector::from_integers(&[3, 1, 2, 1, 5, 1, 2]);
        let delta = rayleigh_delta_eval(&p, 1, 4, &w, true).unwrap();
        let rhs = p.enumerator_eval(&w, set(&[1]), set(&[4])).unwrap() * p.enumerator_eval(&w, set(&[4]), set(&[1])).unwrap();
        assert_eq!(delta, rhs);
    }

    #[test]
    fn difference_polynomials() {
        let p = example();
        let poly = rayleigh_delta_poly(&p, 2, 7).unwrap();
        assert!(poly.min_coefficient().unwrap() >= 0);
        assert_eq!(poly.eval(&WeightVector::ones(7)), int(16));

        let single = Positroid::from_bases(2, 2, vec![set(&[1, 2])]).unwrap();
        assert!(rayleigh_delta_poly(&single, 1, 2).unwrap().is_zero());

        let u = rayleigh_delta_poly(&u12(), 1, 2).unwrap();
        assert_eq!(u.to_string(), "x1x2");
        assert_eq!(u.coefficient(Monomial::multilinear(set(&[1, 2]))), 1);
    }

    #[test]
    fn batched_deltas_match_reference() {
        let p = example();
        let w = WeightVector::new(vec![weights::ratio(1, 3), int(2), weights::ratio(5, 7), int(1), weights::ratio(9, 2), int(3), weights::ratio(1, 100)]);
        let table = all_pair_deltas(&p, &w).unwrap();
        for e in 1..=7 {
            for f in 1..=7 {
                if e != f {
                    assert_eq!(table[e - 1][f - 1], rayleigh_delta_eval(&p, e, f, &w, true).unwrap());
                }
            }
        }
    }

    #[test]
    fn sampling_example() {
        let p = example();
        let reports = sample_rayleigh(&p, 200, 7, true).unwrap();
        assert_eq!(reports.len(), 42);
        assert!(reports.iter().all(|r| r.holds() && r.trials == 200));
        let r27 = reports.iter().find(|r| r.pair == (2, 7)).unwrap();
        assert_eq!(r27.delta_at_ones, Some(int(16)));
        assert!(r27.min_delta.as_ref().unwrap() <= &int(16));
        assert_eq!(sample_rayleigh(&p, 20, 7, true).unwrap(), sample_rayleigh(&p, 20, 7, true).unwrap());
        assert_eq!(sample_rayleigh(&p, 0, 7, true), Err(RayleighError::NoTrials));
    }

    #[test]
    fn sampling_single_basis() {
        let single = Positroid::from_bases(3, 2, vec![set(&[1, 3])]).unwrap();
        for report in sample_rayleigh(&single, 50, 1, false).unwrap() {
            assert!(report.holds());
            assert_eq!(report.min_delta, Some(int(0)));
        }
    }

    #[test]
    fn balanced_example() {
        let p = example();
        let report = balanced_check(&p).unwrap();
        assert!(report.holds(), "{:?}", report.violations);
        assert!(report.minors_checked > 0);
        let minor = p.minor(set(&[2]), set(&[7])).unwrap();
        // 235 236 245 246 256: both {3,5}: 235; neither: 246; 3 only: 236; 5 only: 245 256
        assert_eq!(minor_pair_counts(&minor, 3, 5), (1, 2));
        let big = Positroid::from_bases(13, 1, vec![set(&[1])]).unwrap();
        assert!(matches!(balanced_check(&big), Err(RayleighError::TooLarge { .. })));
    }

    #[test]
    fn strong_forms_on_u12() {
        let u = u12();
        let w = WeightVector::from_integers(&[1, -1]);
        assert_eq!(derivative_delta_eval(&u, 1, 2, &w), Ok(int(1)));
        assert_eq!(rayleigh_delta_eval(&u, 1, 2, &w, false), Ok(int(-1)));
        let report = strong_probe(&u, 1, 2, 100, 3).unwrap();
        assert!(report.holds());
        assert_eq!(report.min_delta, Some(int(1)));
        assert!(report.sign_checks >= 1);
    }

    #[test]
    fn strong_probe_example_runs() {
        let p = example();
        let report = strong_probe(&p, 2, 7, 300, 11).unwrap();
        assert_eq!(report.trials, 300);
        assert_eq!(report.sign_mismatches, 0);
        assert!(report.violations.iter().all(|v| v.delta.is_negative()));
        assert_eq!(report, strong_probe(&p, 2, 7, 300, 11).unwrap());
    }

    #[test]
    fn derivative_form_scales_literal_form() {
        let p = example();
        let w = WeightVector::from_integers(&[2, 3, 1, 4, 1, 5, 2]);
        for (e, f) in [(2, 7), (3, 5), (1, 6)] {
            let literal = rayleigh_delta_eval(&p, e, f, &w, true).unwrap();
            let derivative = derivative_delta_eval(&p, e, f, &w).unwrap();
            assert_eq!(literal, derivative * w.get(e) * w.get(f));
        }
    }
}
