//! Exact rational weight vectors and the sampling grids used to draw them.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::{Serialize, Serializer};

use crate::labels::LabelSet;

pub type Rational = BigRational;

/// Canonical fraction string, always `p/q` with `q > 0` (so 16 is `16/1`).
pub fn fraction_string(value: &Rational) -> String {
    format!("{}/{}", value.numer(), value.denom())
}

/// Human-facing form: `16` for integers, `p/q` otherwise.
pub fn plain_string(value: &Rational) -> String {
    if value.is_integer() {
        value.numer().to_string()
    } else {
        fraction_string(value)
    }
}

/// Serde helper writing a rational as its canonical fraction string.
pub fn serialize_fraction<S: Serializer>(value: &Rational, serializer: S) -> Result<S::Ok, S::Error> {
    serializer.serialize_str(&fraction_string(value))
}

pub fn serialize_opt_fraction<S: Serializer>(
    value: &Option<Rational>,
    serializer: S,
) -> Result<S::Ok, S::Error> {
    match value {
        Some(v) => serializer.serialize_some(&fraction_string(v)),
        None => serializer.serialize_none(),
    }
}

pub fn int(value: i64) -> Rational {
    Rational::from_integer(BigInt::from(value))
}

pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(values: Vec<Rational>) -> Self {
        WeightVector(values)
    }

    pub fn from_integers(values: &[i64]) -> Self {
        WeightVector(values.iter().map(|&v| int(v)).collect())
    }

    pub fn ones(n: usize) -> Self {
        WeightVector(vec![Rational::one(); n])
    }

    pub fn zeros(n: usize) -> Self {
        WeightVector(vec![Rational::zero(); n])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    /// Weight of label `i` (1-indexed).
    pub fn get(&self, label: usize) -> &Rational {
        &self.0[label - 1]
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|v| !v.is_negative())
    }

    pub fn is_positive(&self) -> bool {
        self.0.iter().all(|v| v.is_positive())
    }

    /// Clears denominators: returns integers `y` and `L > 0` with `w = y / L`.
    pub fn scaled(&self) -> ScaledWeights {
        let common = self.0.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
        let numerators = self.0.iter().map(|v| v.numer() * (&common / v.denom())).collect();
        ScaledWeights { numerators, common }
    }

    /// Grid sample: each entry `p/q` with `q` uniform in `1..=100` and `p`
    /// uniform in `1..=100` (positive) or `0..=100` (nonnegative).
    pub fn sample_grid<R: Rng>(rng: &mut R, n: usize, positive: bool) -> Self {
        let low = if positive { 1 } else { 0 };
        WeightVector(
            (0..n)
                .map(|_| {
                    let p: i64 = rng.gen_range(low..=100);
                    let q: i64 = rng.gen_range(1..=100);
                    ratio(p, q)
                })
                .collect(),
        )
    }

    /// Signed grid sample on `[-10, 10]`: `p/q` with `q` in `1..=100` and
    /// `|p| <= 10 q`.
    pub fn sample_signed<R: Rng>(rng: &mut R, n: usize) -> Self {
        WeightVector(
            (0..n)
                .map(|_| {
                    let q: i64 = rng.gen_range(1..=100);
                    let p: i64 = rng.gen_range(-10 * q..=10 * q);
                    ratio(p, q)
                })
                .collect(),
        )
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(plain_string).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl Serialize for WeightVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.0.iter().map(fraction_string))
    }
}

impl FromStr for WeightVector {
    type Err = String;

    /// Comma-separated entries, each an integer or `p/q`.
    fn from_str(text: &str) -> Result<Self, String> {
        text.split(',')
            .map(|part| {
                let part = part.trim();
                let (p, q) = part.split_once('/').unwrap_or((part, "1"));
                let p: BigInt = p.trim().parse().map_err(|_| format!("bad weight {part:?}"))?;
                let q: BigInt = q.trim().parse().map_err(|_| format!("bad weight {part:?}"))?;
                if q.is_zero() {
                    return Err(format!("zero denominator in {part:?}"));
                }
                Ok(Rational::new(p, q))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(WeightVector)
    }
}

/// Integer numerators over one common denominator.
#[derive(Clone, Debug)]
pub struct ScaledWeights {
    pub numerators: Vec<BigInt>,
    pub common: BigInt,
}

impl ScaledWeights {
    /// Product of the numerators over `set`.
    pub fn monomial(&self, set: LabelSet) -> BigInt {
        set.iter().fold(BigInt::one(), |acc, label| acc * &self.numerators[label - 1])
    }

    /// `L^degree`.
    pub fn denominator(&self, degree: usize) -> BigInt {
        num_traits::pow(self.common.clone(), degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fraction_formats() {
        assert_eq!(fraction_string(&int(16)), "16/1");
        assert_eq!(plain_string(&int(16)), "16");
        assert_eq!(fraction_string(&ratio(-6, 4)), "-3/2");
        assert_eq!(plain_string(&ratio(6, 4)), "3/2");
    }

    #[test]
    fn scaling_clears_denominators() {
        let w: WeightVector = "1/2, 2/3, 5".parse().unwrap();
        let s = w.scaled();
        assert_eq!(s.common, BigInt::from(6));
        assert_eq!(s.numerators, vec![BigInt::from(3), BigInt::from(4), BigInt::from(30)]);
        assert!("1/0".parse::<WeightVector>().is_err());
    }

    #[test]
    fn grid_samples_stay_in_range() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let w = WeightVector::sample_grid(&mut rng, 5, true);
            assert!(w.is_positive());
            let s = WeightVector::sample_signed(&mut rng, 5);
            assert!(s.values().iter().all(|v| v.abs() <= int(10)));
        }
    }
}
