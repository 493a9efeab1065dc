//! Seeded checks of the ℝ³ composition identities on random polynomial fields.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::poly::{rational, Direction, Field, Poly3, Rational, VecField3};
use super::{apply_sequence, dot, gateaux, grad};
use crate::enumerate::{chain_name, CompositionChain};
use crate::error::{Error, Result};
use crate::opgraph::{build_space, Family, OperationId};

/// Compositions that vanish identically, leftmost-first.
pub fn zero_identities() -> Vec<Vec<i32>> {
    vec![
        vec![2, 1],
        vec![3, 2],
        vec![2, 2, 1],
        vec![3, 2, 1],
        vec![3, 2, 2],
        vec![1, 3, 2],
        vec![2, 1, 3],
        vec![2, 1, 0],
        vec![0, 3, 2],
    ]
}

/// Second- and third-order compositions that do not vanish identically.
pub fn nonzero_compositions() -> Vec<Vec<i32>> {
    vec![
        vec![3, 1],
        vec![2, 2],
        vec![1, 3],
        vec![0, 0],
        vec![1, 0],
        vec![0, 3],
        vec![1, 3, 1],
        vec![2, 2, 2],
        vec![3, 1, 3],
        vec![0, 0, 0],
        vec![1, 0, 0],
        vec![3, 1, 0],
        vec![0, 3, 1],
        vec![0, 0, 3],
        vec![1, 0, 3],
    ]
}

/// Rational unit vectors used as Gateaux directions.
const UNIT_DIRECTIONS: [[(i64, i64); 3]; 7] = [
    [(1, 1), (0, 1), (0, 1)],
    [(0, 1), (1, 1), (0, 1)],
    [(0, 1), (0, 1), (1, 1)],
    [(3, 5), (4, 5), (0, 1)],
    [(0, 1), (-5, 13), (12, 13)],
    [(2, 3), (2, 3), (1, 3)],
    [(2, 7), (-3, 7), (6, 7)],
];

pub fn random_direction(rng: &mut impl Rng) -> Direction {
    let e = UNIT_DIRECTIONS.choose(rng).expect("nonempty");
    Direction::unit(e.map(|(n, d)| rational(n, d))).expect("table holds unit vectors")
}

/// Up to six terms of total degree `<= max_degree`, coefficients `a/b` with
/// `a ∈ [−9, 9]` and `b ∈ {1, 2, 3}`.
pub fn random_poly(rng: &mut impl Rng, max_degree: u32) -> Poly3 {
    let mut p = Poly3::zero();
    for _ in 0..rng.gen_range(1..=6) {
        let d = rng.gen_range(0..=max_degree);
        let e1 = rng.gen_range(0..=d);
        let e2 = rng.gen_range(0..=d - e1);
        let num = rng.gen_range(-9..=9);
        let den = rng.gen_range(1..=3);
        p.add_term([e1, e2, d - e1 - e2], rational(num, den));
    }
    p
}

pub fn random_vec_field(rng: &mut impl Rng, max_degree: u32) -> VecField3 {
    VecField3::new(
        random_poly(rng, max_degree),
        random_poly(rng, max_degree),
        random_poly(rng, max_degree),
    )
}

/// Fixed fields of degree four tried before the random ones when looking for a
/// non-zero witness, so low-degree runs still find one.
fn fixed_witnesses() -> (Vec<Poly3>, Vec<VecField3>) {
    let scalars = vec![
        Poly3::from_terms(&[(1, [4, 0, 0]), (1, [1, 2, 1]), (1, [0, 0, 2])]),
        Poly3::from_terms(&[(1, [2, 2, 0]), (1, [0, 1, 3])]),
    ];
    let vectors = vec![
        VecField3::new(
            Poly3::from_terms(&[(1, [3, 1, 0]), (1, [0, 2, 2])]),
            Poly3::from_terms(&[(1, [1, 3, 0]), (1, [2, 0, 1])]),
            Poly3::from_terms(&[(1, [0, 1, 3]), (1, [1, 1, 1])]),
        ),
        VecField3::new(
            Poly3::from_terms(&[(1, [0, 0, 4])]),
            Poly3::from_terms(&[(1, [4, 0, 0])]),
            Poly3::from_terms(&[(1, [0, 4, 0])]),
        ),
    ];
    (scalars, vectors)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityOutcome {
    pub name: String,
    pub chain: Vec<i32>,
    pub trials: usize,
    /// Description of every field on which the composition did not vanish.
    pub failures: Vec<String>,
}

impl IdentityOutcome {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessOutcome {
    pub name: String,
    pub chain: Vec<i32>,
    /// A field on which the composition is non-zero, if one was found.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub seed: u64,
    pub trials: usize,
    pub max_degree: u32,
    pub zero_identities: Vec<IdentityOutcome>,
    pub nonzero_witnesses: Vec<WitnessOutcome>,
    pub gateaux_failures: Vec<String>,
}

impl IdentityReport {
    pub fn zero_identities_holding(&self) -> usize {
        self.zero_identities.iter().filter(|o| o.holds()).count()
    }

    pub fn witnesses_found(&self) -> usize {
        self.nonzero_witnesses
            .iter()
            .filter(|w| w.witness.is_some())
            .count()
    }

    pub fn gateaux_holds(&self) -> bool {
        self.gateaux_failures.is_empty()
    }

    pub fn all_passed(&self) -> bool {
        self.zero_identities_holding() == self.zero_identities.len()
            && self.witnesses_found() == self.nonzero_witnesses.len()
            && self.gateaux_holds()
    }

    pub fn to_text(&self) -> String {
        let mut s = format!(
            "{}/{} zero-identities hold (trials={}, degree<={}, seed={})\n",
            self.zero_identities_holding(),
            self.zero_identities.len(),
            self.trials,
            self.max_degree,
            self.seed
        );
        for o in &self.zero_identities {
            let mark = if o.holds() { "ok  " } else { "FAIL" };
            s.push_str(&format!("  {mark} {} = 0\n", o.name));
            for f in &o.failures {
                s.push_str(&format!("       {f}\n"));
            }
        }
        s.push_str(&format!(
            "{}/{} non-zero compositions have a witness\n",
            self.witnesses_found(),
            self.nonzero_witnesses.len()
        ));
        for w in &self.nonzero_witnesses {
            match &w.witness {
                Some(field) => s.push_str(&format!("  ok   {} != 0 on {field}\n", w.name)),
                None => s.push_str(&format!("  FAIL {} has no witness\n", w.name)),
            }
        }
        if self.gateaux_holds() {
            s.push_str(&format!(
                "gateaux(f, e) = grad(f)·e on {} trials\n",
                self.trials
            ));
        } else {
            s.push_str("gateaux(f, e) = grad(f)·e FAILED\n");
            for f in &self.gateaux_failures {
                s.push_str(&format!("  {f}\n"));
            }
        }
        s
    }
}

struct Trial {
    scalar: Poly3,
    vector: VecField3,
    direction: Direction,
}

fn trials_for(seed: u64, trials: usize, max_degree: u32) -> Vec<Trial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..trials)
        .map(|_| Trial {
            scalar: random_poly(&mut rng, max_degree),
            vector: random_vec_field(&mut rng, max_degree),
            direction: random_direction(&mut rng),
        })
        .collect()
}

fn input_for(ops: &[OperationId], scalar: &Poly3, vector: &VecField3) -> Field {
    match ops.last().map(|o| o.0) {
        Some(0 | 1) => Field::Scalar(scalar.clone()),
        _ => Field::Vector(vector.clone()),
    }
}

/// Runs every zero identity and non-zero witness search on seeded random fields.
pub fn verify_identities(trials: usize, max_degree: u32, seed: u64) -> Result<IdentityReport> {
    if trials < 1 {
        return Err(Error::InvalidArgument("trials must be at least 1".into()));
    }
    if max_degree < 2 {
        return Err(Error::InvalidArgument(
            "max_degree must be at least 2".into(),
        ));
    }
    let space = build_space(3, Family::B)?;
    let samples = trials_for(seed, trials, max_degree);

    let mut zero = Vec::new();
    for ix in zero_identities() {
        let chain = CompositionChain::from_indices(&space, &ix)?;
        let mut failures = Vec::new();
        for t in &samples {
            let input = input_for(&chain.ops, &t.scalar, &t.vector);
            let shown = input.to_string();
            let out = apply_sequence(&chain.ops, input, &t.direction)?;
            if !out.is_zero() {
                failures.push(format!("input {shown}, e = {}: got {out}", t.direction));
            }
        }
        zero.push(IdentityOutcome {
            name: chain_name(&chain, 3),
            chain: ix,
            trials,
            failures,
        });
    }

    let (fixed_s, fixed_v) = fixed_witnesses();
    let mut candidates: Vec<(Poly3, VecField3, Direction)> = fixed_s
        .into_iter()
        .zip(fixed_v)
        .enumerate()
        .map(|(i, (s, v))| {
            (
                s,
                v,
                Direction::unit(UNIT_DIRECTIONS[3 + i].map(|(n, d)| rational(n, d))).expect("unit"),
            )
        })
        .collect();
    candidates.extend(
        samples
            .iter()
            .map(|t| (t.scalar.clone(), t.vector.clone(), t.direction.clone())),
    );

    let mut nonzero = Vec::new();
    for ix in nonzero_compositions() {
        let chain = CompositionChain::from_indices(&space, &ix)?;
        let mut witness = None;
        for (s, v, e) in &candidates {
            let input = input_for(&chain.ops, s, v);
            let shown = input.to_string();
            if !apply_sequence(&chain.ops, input, e)?.is_zero() {
                witness = Some(format!("{shown} with e = {e}"));
                break;
            }
        }
        nonzero.push(WitnessOutcome {
            name: chain_name(&chain, 3),
            chain: ix,
            witness,
        });
    }

    let gateaux_failures = samples
        .iter()
        .filter(|t| gateaux(&t.scalar, &t.direction) != dot(&grad(&t.scalar), &t.direction))
        .map(|t| format!("f = {}, e = {}", t.scalar, t.direction))
        .collect();

    Ok(IdentityReport {
        seed,
        trials,
        max_degree,
        zero_identities: zero,
        nonzero_witnesses: nonzero,
        gateaux_failures,
    })
}

/// Marks each ℝ³ chain as vanishing when it is zero on every seeded random field.
pub fn annotate_vanishing(chains: &mut [CompositionChain], trials: usize, seed: u64) -> Result<()> {
    let samples = trials_for(seed, trials.max(1), 4);
    for chain in chains.iter_mut() {
        let mut vanishes = true;
        for t in &samples {
            let input = input_for(&chain.ops, &t.scalar, &t.vector);
            if !apply_sequence(&chain.ops, input, &t.direction)?.is_zero() {
                vanishes = false;
                break;
            }
        }
        chain.vanishes_identically = Some(vanishes);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FiniteDifferenceReport {
    pub cases: usize,
    pub step: f64,
    pub tolerance: f64,
    /// Largest `|exact − approx| / max(|exact|, 1)` over all compared derivatives.
    pub max_relative_error: f64,
}

impl FiniteDifferenceReport {
    pub fn passed(&self) -> bool {
        self.max_relative_error <= self.tolerance
    }
}

fn random_point(rng: &mut impl Rng) -> [Rational; 3] {
    std::array::from_fn(|_| {
        let den = rng.gen_range(1..=8);
        rational(rng.gen_range(-den..=den), den)
    })
}

fn to_f64(point: &[Rational; 3]) -> [f64; 3] {
    use num_traits::ToPrimitive;
    point.clone().map(|x| x.to_f64().unwrap_or(f64::NAN))
}

/// Compares exact gradients, divergences and Gateaux derivatives at rational
/// points against central differences of the numerically evaluated polynomials.
pub fn finite_difference_check(cases: usize, seed: u64) -> FiniteDifferenceReport {
    use num_traits::ToPrimitive;
    const STEP: f64 = 1e-4;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let central = |p: &Poly3, x: [f64; 3], k: usize| {
        let (mut fwd, mut back) = (x, x);
        fwd[k] += STEP;
        back[k] -= STEP;
        (p.eval_f64(fwd) - p.eval_f64(back)) / (2.0 * STEP)
    };
    let mut worst: f64 = 0.0;
    let mut record = |exact: &Rational, approx: f64| {
        let exact = exact.to_f64().unwrap_or(f64::NAN);
        let err = (exact - approx).abs() / exact.abs().max(1.0);
        worst = if err.is_nan() {
            f64::INFINITY
        } else {
            worst.max(err)
        };
    };
    for _ in 0..cases {
        let f = random_poly(&mut rng, 4);
        let v = random_vec_field(&mut rng, 4);
        let e = random_direction(&mut rng);
        let pt = random_point(&mut rng);
        let x = to_f64(&pt);

        for (k, g) in grad(&f).components.iter().enumerate() {
            record(&g.eval(&pt), central(&f, x, k));
        }
        let div_fd: f64 = (0..3).map(|k| central(&v.components[k], x, k)).sum();
        record(&super::div(&v).eval(&pt), div_fd);
        let dir: Vec<f64> = e.e.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let gateaux_fd: f64 = (0..3).map(|k| central(&f, x, k) * dir[k]).sum();
        record(&gateaux(&f, &e).eval(&pt), gateaux_fd);
    }
    FiniteDifferenceReport {
        cases,
        step: STEP,
        tolerance: 1e-6,
        max_relative_error: worst,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symcalc3::{curl, div};

    #[test]
    fn default_run_passes() {
        let report = verify_identities(25, 4, 7).unwrap();
        assert_eq!(report.zero_identities.len(), 9);
        assert_eq!(report.zero_identities_holding(), 9);
        assert_eq!(report.witnesses_found(), 15);
        assert!(report.gateaux_holds());
        assert!(report.to_text().starts_with("9/9 zero-identities hold"));
    }

    #[test]
    fn low_degree_still_finds_witnesses() {
        let report = verify_identities(1, 2, 0).unwrap();
        assert!(report.all_passed(), "{}", report.to_text());
    }

    #[test]
    fn seeded_runs_are_reproducible() {
        assert_eq!(
            verify_identities(5, 3, 11).unwrap(),
            verify_identities(5, 3, 11).unwrap()
        );
        let mut a = ChaCha8Rng::seed_from_u64(3);
        let mut b = ChaCha8Rng::seed_from_u64(3);
        assert_eq!(random_vec_field(&mut a, 4), random_vec_field(&mut b, 4));
    }

    #[test]
    fn argument_checks() {
        assert!(matches!(
            verify_identities(0, 4, 1),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            verify_identities(3, 1, 1),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn random_fields_respect_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        for _ in 0..200 {
            let p = random_poly(&mut rng, 3);
            assert!(p.total_degree().unwrap_or(0) <= 3);
            for (_, c) in p.terms() {
                assert!((c * Rational::from_integer(6.into())).is_integer());
                assert!(c.numer().magnitude() <= &54u32.into());
            }
        }
    }

    #[test]
    fn named_witnesses() {
        let lap = Poly3::from_terms(&[(1, [2, 0, 0])]);
        assert_eq!(div(&grad(&lap)), Poly3::from_terms(&[(2, [0, 0, 0])]));
        let f = VecField3::new(
            Poly3::zero(),
            Poly3::zero(),
            Poly3::from_terms(&[(1, [2, 0, 0])]),
        );
        assert_eq!(
            curl(&curl(&f)),
            VecField3::new(
                Poly3::zero(),
                Poly3::zero(),
                Poly3::from_terms(&[(-2, [0, 0, 0])])
            )
        );
    }

    #[test]
    fn annotation_marks_identities() {
        let space = build_space(3, Family::B).unwrap();
        let mut chains = crate::enumerate::enumerate_chains(&space, 3).unwrap();
        annotate_vanishing(&mut chains, 10, 5).unwrap();
        let zero: Vec<Vec<i32>> = chains
            .iter()
            .filter(|c| c.vanishes_identically == Some(true))
            .map(|c| c.indices())
            .collect();
        let mut expected: Vec<Vec<i32>> = zero_identities()
            .into_iter()
            .filter(|c| c.len() == 3)
            .collect();
        expected.sort();
        assert_eq!(zero, expected);
    }

    #[test]
    fn finite_differences_agree() {
        let report = finite_difference_check(20, 2024);
        assert!(report.passed(), "{report:?}");
    }
}
