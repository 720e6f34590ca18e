//! Right and invariant probability distributions on factor sets.

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::scalar::{Quadratic, Scalar};
use crate::words::{Generator, Substitution, Word};

const POWER_ITERATION_CAP: usize = 200_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Right,
    Invariant,
}

/// Values of a distribution on every word of a factor set up to its depth.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Distribution {
    pub flavor: Flavor,
    pub depth: usize,
    values: BTreeMap<Word, Scalar>,
}

impl Distribution {
    /// `π(w)`, zero for words of the window outside `F`.
    pub fn get(&self, w: &Word) -> Result<Scalar> {
        if w.len() > self.depth {
            return Err(Error::WindowTooSmall { needed: w.len(), depth: self.depth });
        }
        Ok(self.values.get(w).cloned().unwrap_or_else(Scalar::zero))
    }

    pub fn values(&self) -> &BTreeMap<Word, Scalar> {
        &self.values
    }

    pub fn is_exact(&self) -> bool {
        self.values.values().all(Scalar::is_exact)
    }

    /// `Σ_{a} π(wa) = π(w)` for every stored `w` below the depth.
    pub fn satisfies_right_condition(&self, f: &FactorSet) -> bool {
        self.kirchhoff(f, |w, a| w.push(a))
    }

    /// `Σ_{a} π(aw) = π(w)` for every stored `w` below the depth.
    pub fn satisfies_left_condition(&self, f: &FactorSet) -> bool {
        self.kirchhoff(f, |w, a| w.prepend(a))
    }

    fn kirchhoff(&self, f: &FactorSet, extend: impl Fn(&Word, u8) -> Word) -> bool {
        f.words().filter(|w| w.len() < self.depth).all(|w| {
            let total: Scalar = f
                .alphabet()
                .symbols()
                .iter()
                .map(|&a| self.get(&extend(w, a)).unwrap())
                .sum();
            total.approx_eq(&self.get(w).unwrap())
        })
    }

    pub fn in_unit_interval(&self) -> bool {
        self.values
            .values()
            .all(|v| v.is_nonnegative() && (&Scalar::one() - v).is_nonnegative())
    }
}

/// The distribution `π(wa) = π(w) / rightorder(w)`.
pub fn uniform_right_distribution(f: &FactorSet) -> Result<Distribution> {
    let mut values = BTreeMap::new();
    values.insert(Word::empty(), Scalar::one());
    for l in 0..f.depth() {
        for w in f.level(l) {
            let ext = f.right_extensions(w);
            if ext.is_empty() {
                return Err(Error::Precondition(format!("{w} has right order 0")));
            }
            let share = &values[w] / &Scalar::from_ratio(ext.len() as i64, 1);
            for a in ext {
                values.insert(w.push(a), share.clone());
            }
        }
    }
    Ok(Distribution { flavor: Flavor::Right, depth: f.depth(), values })
}

/// Dominant eigenvalue of a primitive incidence matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct PerronRoot {
    pub approx: f64,
    /// Present when the root is rational or quadratic.
    pub exact: Option<Quadratic>,
    pub char_poly: Vec<BigRational>,
}

pub fn is_primitive(m: &[Vec<u64>]) -> bool {
    let k = m.len();
    let b: Vec<Vec<bool>> = m.iter().map(|r| r.iter().map(|&x| x > 0).collect()).collect();
    let mul = |x: &Vec<Vec<bool>>, y: &Vec<Vec<bool>>| -> Vec<Vec<bool>> {
        (0..k)
            .map(|i| (0..k).map(|j| (0..k).any(|t| x[i][t] && y[t][j])).collect())
            .collect()
    };
    // Wielandt: a primitive k×k matrix has a positive power at exponent (k−1)²+1
    let mut p = b.clone();
    for _ in 1..(k - 1) * (k - 1) + 1 {
        p = mul(&p, &b);
    }
    p.iter().all(|r| r.iter().all(|&x| x))
}

/// Characteristic polynomial coefficients `c_0..c_k` (monic) by Faddeev–LeVerrier.
pub fn characteristic_polynomial(m: &[Vec<u64>]) -> Vec<BigRational> {
    let k = m.len();
    let a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
        .collect();
    let mut c = vec![BigRational::zero(); k + 1];
    c[k] = BigRational::one();
    let mut mk = vec![vec![BigRational::zero(); k]; k];
    for step in 1..=k {
        // M_step = A·M_{step−1} + c_{k−step+1}·I
        let mut next = vec![vec![BigRational::zero(); k]; k];
        for i in 0..k {
            for j in 0..k {
                let mut s = BigRational::zero();
                for t in 0..k {
                    s += &a[i][t] * &mk[t][j];
                }
                if i == j {
                    s += &c[k - step + 1];
                }
                next[i][j] = s;
            }
        }
        let mut tr = BigRational::zero();
        for i in 0..k {
            for t in 0..k {
                tr += &a[i][t] * &next[t][i];
            }
        }
        c[k - step] = -tr / BigRational::from_integer(BigInt::from(step));
        mk = next;
    }
    c
}

fn poly_eval(c: &[BigRational], x: &BigRational) -> BigRational {
    c.iter().rev().fold(BigRational::zero(), |acc, ci| acc * x + ci)
}

/// True iff `x² + p·x + q` divides the polynomial exactly.
fn divides_by_quadratic(c: &[BigRational], p: &BigRational, q: &BigRational) -> bool {
    let mut r: Vec<BigRational> = c.to_vec();
    while r.len() > 2 {
        let lead = r.pop().unwrap();
        let n = r.len();
        r[n - 1] -= &lead * p;
        r[n - 2] -= &lead * q;
    }
    r.iter().all(Zero::is_zero)
}

fn power_iteration(m: &[Vec<f64>]) -> Result<(f64, Vec<f64>)> {
    let k = m.len();
    let mut v = vec![1.0 / k as f64; k];
    for _ in 0..POWER_ITERATION_CAP {
        let mut w = vec![0.0; k];
        for (i, row) in m.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                w[i] += x * v[j];
            }
        }
        let s: f64 = w.iter().sum();
        for x in &mut w {
            *x /= s;
        }
        let diff = v.iter().zip(&w).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        v = w;
        if diff < 1e-15 {
            return Ok((s, v));
        }
    }
    Err(Error::NoConvergence(POWER_ITERATION_CAP))
}

pub fn perron_root(sub: &Substitution) -> Result<PerronRoot> {
    let m = sub.incidence_matrix();
    if !is_primitive(&m) {
        return Err(Error::NotPrimitive);
    }
    let mf: Vec<Vec<f64>> = m.iter().map(|r| r.iter().map(|&x| x as f64).collect()).collect();
    let (approx, _) = power_iteration(&mf)?;
    let c = characteristic_polynomial(&m);
    let int = approx.round();
    let int_big = BigRational::from_integer(BigInt::from(int as i64));
    if (approx - int).abs() < 1e-6 && poly_eval(&c, &int_big).is_zero() {
        return Ok(PerronRoot { approx, exact: Some(Quadratic::int(int as i64)), char_poly: c });
    }
    let bound = (2.0 * approx).ceil() as i64 + 1;
    for p in -bound..=bound {
        let q = (-(approx * approx + p as f64 * approx)).round() as i64;
        let disc = p * p - 4 * q;
        if disc <= 0 {
            continue;
        }
        let root = (-(p as f64) + (disc as f64).sqrt()) / 2.0;
        if (root - approx).abs() > 1e-6 {
            continue;
        }
        let pr = BigRational::from_integer(BigInt::from(p));
        let qr = BigRational::from_integer(BigInt::from(q));
        if divides_by_quadratic(&c, &pr, &qr) {
            let theta = Quadratic::new(
                BigRational::new(BigInt::from(-p), BigInt::from(2)),
                BigRational::new(BigInt::one(), BigInt::from(2)),
                disc as u64,
            );
            return Ok(PerronRoot { approx, exact: Some(theta), char_poly: c });
        }
    }
    Ok(PerronRoot { approx, exact: None, char_poly: c })
}

/// Incidence matrix of the `n`-block substitution on the length-`n` factors.
fn block_matrix(sub: &Substitution, f: &FactorSet, n: usize) -> Result<(Vec<Word>, Vec<Vec<u64>>)> {
    let letters: Vec<Word> = f.level(n).iter().cloned().collect();
    let index: HashMap<&Word, usize> = letters.iter().enumerate().map(|(i, w)| (w, i)).collect();
    let mut m = vec![vec![0u64; letters.len()]; letters.len()];
    for (i, w) in letters.iter().enumerate() {
        let img = sub.apply(w);
        let first = sub.image(w.symbol(0)).len();
        for p in 0..first {
            let v = img.slice(p, p + n);
            let j = *index
                .get(&v)
                .ok_or_else(|| Error::Verification(format!("block {v} of f({w}) is not a factor")))?;
            m[i][j] += 1;
        }
    }
    Ok((letters, m))
}

/// Nonzero vector `v` with `(Mᵀ − θI)v = 0`, normalized to sum 1.
fn exact_left_eigenvector(m: &[Vec<u64>], theta: &Quadratic) -> Result<Vec<Quadratic>> {
    let k = m.len();
    let mut a: Vec<Vec<Quadratic>> = (0..k)
        .map(|i| {
            (0..k)
                .map(|j| {
                    let x = Quadratic::int(m[j][i] as i64);
                    if i == j {
                        &x - theta
                    } else {
                        x
                    }
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(row, p);
        let inv = a[row][col].inverse();
        for j in col..k {
            a[row][j] = &a[row][j] * &inv;
        }
        for r in 0..k {
            if r != row && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for j in col..k {
                    let t = &factor * &a[row][j];
                    a[r][j] = &a[r][j] - &t;
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() + 1 != k {
        return Err(Error::Verification(format!(
            "eigenspace has dimension {}, expected 1",
            k - pivots.len()
        )));
    }
    let free = (0..k).find(|c| !pivots.contains(c)).unwrap();
    let mut v = vec![Quadratic::int(0); k];
    v[free] = Quadratic::int(1);
    for (r, &c) in pivots.iter().enumerate() {
        v[c] = -&a[r][free];
    }
    let total = v.iter().fold(Quadratic::int(0), |acc, x| &acc + x);
    Ok(v.iter().map(|x| x / &total).collect())
}

fn float_left_eigenvector(m: &[Vec<u64>]) -> Result<Vec<f64>> {
    let k = m.len();
    let mt: Vec<Vec<f64>> = (0..k).map(|i| (0..k).map(|j| m[j][i] as f64).collect()).collect();
    Ok(power_iteration(&mt)?.1)
}

/// The unique invariant distribution of a primitive substitutive factor set.
pub fn invariant_distribution(f: &FactorSet) -> Result<Distribution> {
    let Some(Generator::FixPoint { substitution, .. }) = f.generator() else {
        return Err(Error::InvalidGenerator(
            "invariant distribution needs a substitution fix-point".into(),
        ));
    };
    let root = perron_root(substitution)?;
    let mut values = BTreeMap::new();
    values.insert(Word::empty(), Scalar::one());
    for n in 1..=f.depth() {
        let (letters, m) = block_matrix(substitution, f, n)?;
        let v: Vec<Scalar> = match &root.exact {
            Some(theta) => exact_left_eigenvector(&m, theta)?.into_iter().map(Scalar::Exact).collect(),
            None => float_left_eigenvector(&m)?.into_iter().map(Scalar::Float).collect(),
        };
        values.extend(letters.into_iter().zip(v));
    }
    Ok(Distribution { flavor: Flavor::Invariant, depth: f.depth(), values })
}

/// Relative frequencies of the length-`n` factors of `sample`.
pub fn empirical_frequencies(sample: &Word, n: usize) -> BTreeMap<Word, f64> {
    let mut counts: HashMap<&[u8], usize> = HashMap::new();
    let windows = sample.len() + 1 - n;
    for w in sample.as_bytes().windows(n) {
        *counts.entry(w).or_default() += 1;
    }
    counts
        .into_iter()
        .map(|(w, c)| (Word::from_bytes(w), c as f64 / windows as f64))
        .collect()
}

/// `π(X) = Σ π(x)`.
pub fn set_probability<'a>(pi: &Distribution, x: impl IntoIterator<Item = &'a Word>) -> Result<Scalar> {
    let mut total = Scalar::zero();
    for w in x {
        total = &total + &pi.get(w)?;
    }
    Ok(total)
}

/// `λ(X) = Σ |x|·π(x)`, defined when `π(X) = 1`.
pub fn average_length<'a>(pi: &Distribution, x: impl IntoIterator<Item = &'a Word> + Clone) -> Result<Scalar> {
    let total = set_probability(pi, x.clone())?;
    if !total.approx_eq(&Scalar::one()) {
        return Err(Error::NotProbabilityOne(total.to_string()));
    }
    let mut sum = Scalar::zero();
    for w in x {
        sum = &sum + &pi.get(w)?.scale(w.len() as i64);
    }
    Ok(sum)
}

/// Largest deviation between exact values and empirical frequencies up to `depth`.
pub fn max_empirical_deviation(pi: &Distribution, sample: &Word, depth: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for n in 1..=depth.min(pi.depth) {
        let emp = empirical_frequencies(sample, n);
        for (w, v) in pi.values.iter().filter(|(w, _)| w.len() == n) {
            let e = emp.get(w).copied().unwrap_or(0.0);
            worst = worst.max((v.to_f64() - e).abs());
        }
    }
    worst
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Substitution;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    fn words(s: &[&str]) -> Vec<Word> {
        s.iter().map(|x| w(x)).collect()
    }

    fn lam(p: i64, q: i64) -> Scalar {
        let l = Quadratic::lambda();
        Scalar::Exact(&Quadratic::int(p) + &(&Quadratic::int(q) * &l))
    }

    #[test]
    fn uniform_right_values() {
        let f = FactorSet::build(&Generator::fibonacci(), 4).unwrap();
        let pi = uniform_right_distribution(&f).unwrap();
        assert_eq!(pi.get(&w("a")).unwrap(), Scalar::from_ratio(1, 2));
        assert_eq!(pi.get(&w("ab")).unwrap(), Scalar::from_ratio(1, 4));
        assert_eq!(pi.get(&w("ba")).unwrap(), Scalar::from_ratio(1, 2));
        assert!(pi.satisfies_right_condition(&f));
    }

    #[test]
    fn perron_roots() {
        let fib = perron_root(&Substitution::fibonacci()).unwrap();
        let golden = &Quadratic::lambda() + &Quadratic::int(1);
        assert_eq!(fib.exact.unwrap(), golden);
        let tm = perron_root(&Substitution::thue_morse()).unwrap();
        assert_eq!(tm.exact.unwrap(), Quadratic::int(2));
        let tri = perron_root(&Substitution::tribonacci()).unwrap();
        assert!(tri.exact.is_none());
        assert!((tri.approx - 1.839286755214161).abs() < 1e-9);
    }

    #[test]
    fn non_primitive_rejected() {
        let s = Substitution::new([(b'a', w("ab")), (b'b', w("b"))]).unwrap();
        assert_eq!(perron_root(&s), Err(Error::NotPrimitive));
    }

    #[test]
    fn fibonacci_invariant_values() {
        let f = FactorSet::build(&Generator::fibonacci(), 4).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        assert_eq!(pi.get(&w("a")).unwrap(), lam(0, 1));
        assert_eq!(pi.get(&w("b")).unwrap(), lam(1, -1));
        assert_eq!(pi.get(&w("bab")).unwrap(), lam(2, -3));
        assert!(pi.satisfies_right_condition(&f));
        assert!(pi.satisfies_left_condition(&f));
        assert!(pi.in_unit_interval());
    }

    #[test]
    fn thue_morse_invariant_values() {
        let f = FactorSet::build(&Generator::thue_morse(), 3).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        assert_eq!(pi.get(&w("aa")).unwrap(), Scalar::from_ratio(1, 6));
        assert_eq!(pi.get(&w("ab")).unwrap(), Scalar::from_ratio(1, 3));
    }

    #[test]
    fn tribonacci_float_distribution() {
        let f = FactorSet::build(&Generator::tribonacci(), 4).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        assert!(!pi.is_exact());
        assert!(pi.satisfies_right_condition(&f));
        assert!(pi.satisfies_left_condition(&f));
        let sample = Generator::tribonacci().prefix(100_000).unwrap();
        assert!(max_empirical_deviation(&pi, &sample, 4) < 1e-3);
    }

    #[test]
    fn probabilities_and_lengths() {
        let f = FactorSet::build(&Generator::fibonacci(), 4).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        assert_eq!(set_probability(&pi, &words(&["a", "ba"])).unwrap(), Scalar::one());
        assert_eq!(set_probability(&pi, &words(&["", "b"])).unwrap(), lam(2, -1));
        assert_eq!(set_probability(&pi, &[]).unwrap(), Scalar::zero());
        assert_eq!(average_length(&pi, &words(&["a", "ba"])).unwrap(), lam(2, -1));
        assert_eq!(average_length(&pi, &words(&["a", "bab", "baab"])).unwrap(), Scalar::from_ratio(2, 1));
        assert_eq!(average_length(&pi, &words(&["aa", "ab", "ba"])).unwrap(), Scalar::from_ratio(2, 1));
        assert!(matches!(average_length(&pi, &words(&["a"])), Err(Error::NotProbabilityOne(_))));
    }

    #[test]
    fn slices_sum_to_one() {
        let f = FactorSet::build(&Generator::fibonacci(), 6).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        for n in 0..=6 {
            assert_eq!(set_probability(&pi, f.level(n)).unwrap(), Scalar::one());
        }
    }
}
