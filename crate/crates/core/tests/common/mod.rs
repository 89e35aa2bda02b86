//! Property checks shared by the property tests and the acceptance suite.
//! Each runs `cases` random cases and returns the first counterexample.

#![allow(dead_code)]

use std::collections::BTreeSet;

use nalgebra::DMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use cgsig_core::exact_algebra::{
    enumerate_subspaces, gaussian_binomial, hermitian_signature_at_root, smith_normal_form, IntMatrix, Subspace,
};
use cgsig_core::knot_model::{figure_eight_base, HopfSurgery, KnotSum, SatelliteKnot};
use cgsig_core::signatures::{base_cg_estimate, cf_hopf_signature, sum_cg_estimate, Character, SignatureEstimate};

pub type PropResult = Result<(), String>;

fn run<S: Strategy>(cases: u32, strategy: S, test: impl Fn(S::Value) -> Result<(), TestCaseError>) -> PropResult
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, test).map_err(|e| e.to_string())
}

pub fn matrix_strategy(rows: std::ops::RangeInclusive<usize>, cols: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntMatrix> {
    (rows, cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, c), r)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

fn square_strategy(n: std::ops::RangeInclusive<usize>, bound: i64) -> impl Strategy<Value = IntMatrix> {
    n.prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(-bound..=bound, n), n)
            .prop_map(|rows| IntMatrix::from_rows(&rows).unwrap())
    })
}

/// `U·A·W = D`, `U` and `W` unimodular, `D` diagonal with `d₁ | d₂ | …`.
pub fn snf_unimodular_divisibility(cases: u32) -> PropResult {
    run(cases, matrix_strategy(1..=4, 1..=4, 9), |a| {
        let s = smith_normal_form(&a);
        prop_assert_eq!(s.left.mul(&a).mul(&s.right), s.diagonal.clone());
        prop_assert!(s.left.determinant().abs().is_one());
        prop_assert!(s.right.determinant().abs().is_one());
        prop_assert!(s.diagonal.is_diagonal());
        let k = a.rows().min(a.cols());
        let d: Vec<BigInt> = (0..k).map(|i| s.diagonal[(i, i)].clone()).collect();
        for w in d.windows(2) {
            prop_assert!(!w[0].is_negative());
            if w[0].is_zero() {
                prop_assert!(w[1].is_zero());
            } else {
                prop_assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        // the product of invariant factors is the gcd-free determinant for square input
        if a.is_square() {
            prop_assert_eq!(d.iter().product::<BigInt>(), a.determinant().abs());
        }
        Ok(())
    })
}

fn qk_strategy() -> impl Strategy<Value = (u64, i64)> {
    prop_oneof![Just(2u64), Just(3), Just(5), Just(7), Just(12)].prop_flat_map(|q| (Just(q), 1..q as i64))
}

/// `σ(k) = σ(q−k)`, `σ(−V) = −σ(V)`, `σ(V ⊕ W) = σ(V) + σ(W)`.
pub fn hermitian_symmetries(cases: u32) -> PropResult {
    run(
        cases,
        (square_strategy(1..=3, 3), square_strategy(1..=3, 3), qk_strategy()),
        |(v, w, (q, k))| {
            let s = |m: &IntMatrix, k: i64| hermitian_signature_at_root(m, q, k).unwrap();
            prop_assert_eq!(s(&v, k), s(&v, q as i64 - k));
            prop_assert_eq!(s(&v.neg(), k), -s(&v, k));
            prop_assert_eq!(s(&v.direct_sum(&w), k), s(&v, k) + s(&w, k));
            // Vᵀ gives the conjugate form, which has the same signature
            prop_assert_eq!(s(&v.transpose(), k), s(&v, k));
            Ok(())
        },
    )
}

/// Floating-point oracle: eigenvalues of the real 2n×2n embedding of
/// `(1−ω)V + (1−ω̄)Vᵀ`, each complex eigenvalue appearing twice.
pub fn float_signature(v: &IntMatrix, q: u64, k: i64) -> (i64, usize) {
    let n = v.rows();
    let theta = 2.0 * std::f64::consts::PI * k as f64 / q as f64;
    let (c, s) = (theta.cos(), theta.sin());
    let f = |i: usize, j: usize| -> f64 { v[(i, j)].to_string().parse().unwrap() };
    // (1−ω)V + (1−ω̄)Vᵀ = (1−c)(V+Vᵀ) + i·s·(Vᵀ − V)... with ω = c + is
    let mut re = DMatrix::<f64>::zeros(n, n);
    let mut im = DMatrix::<f64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            re[(i, j)] = (1.0 - c) * (f(i, j) + f(j, i));
            im[(i, j)] = -s * f(i, j) + s * f(j, i);
        }
    }
    let mut big = DMatrix::<f64>::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            big[(i, j)] = re[(i, j)];
            big[(n + i, n + j)] = re[(i, j)];
            big[(i, n + j)] = -im[(i, j)];
            big[(n + i, j)] = im[(i, j)];
        }
    }
    let eig = big.symmetric_eigen().eigenvalues;
    let scale = 1.0 + eig.iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let tol = 1e-9 * scale;
    let pos = eig.iter().filter(|&&x| x > tol).count() as i64;
    let neg = eig.iter().filter(|&&x| x < -tol).count() as i64;
    let zero = eig.iter().filter(|&&x| x.abs() <= tol).count();
    ((pos - neg) / 2, zero / 2)
}

pub fn hermitian_matches_float_oracle(cases: u32) -> PropResult {
    run(cases, (square_strategy(1..=4, 4), qk_strategy()), |(v, (q, k))| {
        let exact = hermitian_signature_at_root(&v, q, k).unwrap();
        let (approx, _) = float_signature(&v, q, k);
        prop_assert_eq!(exact, approx);
        Ok(())
    })
}

fn subspace_strategy(p: u32) -> impl Strategy<Value = Subspace> {
    (1usize..=5).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::collection::vec(0..p, n), 0..=n)
            .prop_map(move |vs| Subspace::span(n, p, &vs).unwrap())
    })
}

/// `(S^⊥)^⊥ = S`, `dim S + dim S^⊥ = n`, and `S^⊥` pairs to zero with `S`.
pub fn annihilator_double_dual(cases: u32) -> PropResult {
    run(cases, subspace_strategy(5), |s| {
        let ann = s.annihilator();
        prop_assert_eq!(ann.annihilator(), s.clone());
        prop_assert_eq!(s.dim() + ann.dim(), s.ambient_dim());
        for a in ann.basis() {
            for b in s.basis() {
                let d: u32 = a.iter().zip(b).map(|(x, y)| x * y).sum::<u32>() % 5;
                prop_assert_eq!(d, 0);
            }
        }
        Ok(())
    })
}

fn rat_strategy() -> impl Strategy<Value = BigRational> {
    (-500i64..=500, 1i64..=12).prop_map(|(n, d)| BigRational::new(n.into(), d.into()))
}

fn estimate_with_member() -> impl Strategy<Value = (SignatureEstimate, BigRational)> {
    (rat_strategy(), 0i64..=40, 1i64..=12, 0i64..=1000).prop_map(|(c, sn, sd, t)| {
        let slack = BigRational::new(sn.into(), sd.into());
        // a point of [c − slack, c + slack]
        let x = &c - &slack + &slack * BigRational::new(BigInt::from(2 * t), 1000.into());
        (SignatureEstimate::new(c, slack), x)
    })
}

/// Sums, negations and shifts of intervals contain the images of members.
pub fn estimate_containment(cases: u32) -> PropResult {
    run(cases, (estimate_with_member(), estimate_with_member(), rat_strategy()), |((a, x), (b, y), t)| {
        prop_assert!(a.contains(&x) && b.contains(&y));
        prop_assert!((a.clone() + b.clone()).contains(&(&x + &y)));
        prop_assert!((-a.clone()).contains(&-x.clone()));
        prop_assert!(a.shift(&t).contains(&(&x + &t)));
        prop_assert!(a.magnitude_lower_bound() <= x.abs());
        prop_assert!(x.abs() <= a.magnitude_upper_bound());
        Ok(())
    })
}

/// `σ(n₁, n₂) = σ(q−n₁, q−n₂)` for Hopf-link surgeries.
pub fn cf_conjugation_symmetry(cases: u32) -> PropResult {
    let strat = (-8i64..=8, -8i64..=8, prop_oneof![Just(3u64), Just(5), Just(7), Just(11), Just(13)])
        .prop_filter("nonsingular", |(a, b, _)| a * b != 1)
        .prop_flat_map(|(a, b, q)| (Just(a), Just(b), Just(q), 1..q as i64, 1..q as i64));
    run(cases, strat, |(a, b, q, n1, n2)| {
        let h = HopfSurgery::new(a, b).unwrap();
        let s = cf_hopf_signature(&h, q, n1, n2).unwrap();
        let t = cf_hopf_signature(&h, q, q as i64 - n1, q as i64 - n2).unwrap();
        prop_assert_eq!(s, t);
        Ok(())
    })
}

/// For sums of uninfected figure-eight bases, `σ(χ_{2j}) = −σ(χ_j)`.
pub fn amphichiral_antisymmetry(cases: u32) -> PropResult {
    let strat = (1usize..=4).prop_flat_map(|r| (Just(r), proptest::collection::vec(0u32..5, r)));
    run(cases, strat, |(r, coeffs)| {
        let single = SatelliteKnot::new(figure_eight_base(), Vec::new()).unwrap();
        let sum = KnotSum::new(vec![single; r]).unwrap();
        let chi = Character::new(5, coeffs.clone()).unwrap();
        let chi2 = Character::new(5, coeffs.iter().map(|c| 2 * c % 5).collect()).unwrap();
        let e = sum_cg_estimate(&sum, &chi).unwrap();
        let e2 = sum_cg_estimate(&sum, &chi2).unwrap();
        prop_assert_eq!(e2.center, -e.center);
        for j in 1..5u32 {
            let b = figure_eight_base();
            prop_assert_eq!(
                base_cg_estimate(&b, 5, 2 * j % 5).unwrap().center,
                -base_cg_estimate(&b, 5, j).unwrap().center
            );
        }
        Ok(())
    })
}

/// All subspaces of F_p^n, built by joining lines onto smaller subspaces.
pub fn brute_force_subspaces(n: usize, p: u32) -> Vec<BTreeSet<Subspace>> {
    let lines: Vec<Subspace> = (1..(p as usize).pow(n as u32))
        .map(|mut i| {
            let v: Vec<u32> = (0..n)
                .map(|_| {
                    let d = (i % p as usize) as u32;
                    i /= p as usize;
                    d
                })
                .collect();
            Subspace::span(n, p, &[v]).unwrap()
        })
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut layers = vec![BTreeSet::from([Subspace::zero(n, p)])];
    for d in 0..n {
        let next: BTreeSet<Subspace> = layers[d]
            .iter()
            .flat_map(|s| lines.iter().map(move |l| s.join(l)))
            .filter(|t| t.dim() == d + 1)
            .collect();
        layers.push(next);
    }
    layers
}

pub fn subspace_counts_match_brute_force(max_n: usize) -> PropResult {
    for n in 1..=max_n {
        let layers = brute_force_subspaces(n, 5);
        for (d, layer) in layers.iter().enumerate() {
            let listed: Vec<Subspace> = enumerate_subspaces(n, 5, d).unwrap().collect();
            let set: BTreeSet<Subspace> = listed.iter().cloned().collect();
            if set.len() != listed.len() || set != *layer {
                return Err(format!("n={n} d={d}: enumeration differs from brute force"));
            }
            if gaussian_binomial(n, d, 5) != layer.len().into() {
                return Err(format!("n={n} d={d}: Gaussian binomial differs"));
            }
        }
    }
    Ok(())
}

pub fn all_properties(cases: u32) -> Vec<(&'static str, PropResult)> {
    vec![
        ("SNF unimodularity and divisibility", snf_unimodular_divisibility(cases)),
        ("Hermitian conjugation symmetry and block additivity", hermitian_symmetries(cases)),
        ("Hermitian signature vs float eigenvalues", hermitian_matches_float_oracle(cases)),
        ("annihilator double dual", annihilator_double_dual(cases)),
        ("SignatureEstimate containment", estimate_containment(cases)),
        ("CF conjugation symmetry", cf_conjugation_symmetry(cases)),
        ("amphichiral antisymmetry", amphichiral_antisymmetry(cases)),
    ]
}

pub fn one() -> BigRational {
    BigRational::one()
}
