//! Cyclotomic integers: elements of `Z[x] / Phi_m(x)` in the power basis
//! `1, z, ..., z^(phi(m)-1)` where `z` is a primitive `m`-th root of unity.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::ring::Ring;

fn cyclotomic_cache() -> &'static Mutex<HashMap<u64, Arc<Vec<i64>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<i64>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Coefficients of the `m`-th cyclotomic polynomial, constant term first.
pub fn cyclotomic_polynomial(m: u64) -> Arc<Vec<i64>> {
    assert!(m >= 1, "cyclotomic polynomial of order 0");
    if let Some(p) = cyclotomic_cache().lock().unwrap().get(&m) {
        return p.clone();
    }
    // x^m - 1 divided by Phi_d for every proper divisor d.
    let mut num = vec![0i64; m as usize + 1];
    num[0] = -1;
    num[m as usize] = 1;
    for d in 1..m {
        if m.is_multiple_of(d) {
            let den = cyclotomic_polynomial(d);
            num = divide_monic(&num, &den);
        }
    }
    let result = Arc::new(num);
    cyclotomic_cache()
        .lock()
        .unwrap()
        .insert(m, result.clone());
    result
}

fn divide_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let nd = rem.len() - 1;
    let mut quot = vec![0i64; nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd];
        quot[i] = c;
        if c != 0 {
            for (j, &dj) in den.iter().enumerate() {
                rem[i + j] -= c * dj;
            }
        }
    }
    debug_assert!(rem.iter().all(|&r| r == 0));
    quot
}

/// Euler's totient.
pub fn euler_phi(m: u64) -> u64 {
    (1..=m).filter(|k| k.gcd(&m) == 1).count() as u64
}

/// An element of `Z[zeta_m]`.
///
/// Conductors 1 and 2 both describe the rational integers and are stored as
/// conductor 1. Binary operations on elements of different conductors lift
/// both operands to the least common multiple.
#[derive(Clone, Debug)]
pub struct CycInt {
    conductor: u64,
    coeffs: Vec<BigInt>,
}

impl CycInt {
    pub fn integer(n: impl Into<BigInt>) -> Self {
        CycInt {
            conductor: 1,
            coeffs: vec![n.into()],
        }
    }

    /// Reduces an arbitrary coefficient vector (powers of `zeta_m`) modulo `Phi_m`.
    pub fn from_power_coeffs(m: u64, raw: Vec<BigInt>) -> Self {
        assert!(m >= 1, "conductor must be positive");
        if m <= 2 {
            // zeta_2 = -1
            let mut v = BigInt::zero();
            for (i, c) in raw.iter().enumerate() {
                if m == 2 && i % 2 == 1 {
                    v -= c;
                } else {
                    v += c;
                }
            }
            return CycInt::integer(v);
        }
        let phi_poly = cyclotomic_polynomial(m);
        let deg = phi_poly.len() - 1;
        let mut a = raw;
        if a.len() < deg {
            a.resize(deg, BigInt::zero());
        }
        for i in (deg..a.len()).rev() {
            if a[i].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut a[i]);
            for (j, &pj) in phi_poly.iter().enumerate().take(deg) {
                if pj != 0 {
                    a[i - deg + j] -= &c * pj;
                }
            }
        }
        a.truncate(deg);
        CycInt {
            conductor: m,
            coeffs: a,
        }
    }

    /// `zeta_m ^ power`.
    pub fn root_of_unity(m: u64, power: i64) -> Self {
        assert!(m >= 1, "conductor must be positive");
        let k = power.rem_euclid(m as i64) as usize;
        let mut raw = vec![BigInt::zero(); m as usize];
        raw[k] = BigInt::from(1);
        CycInt::from_power_coeffs(m, raw)
    }

    /// `(1 - zeta^power)(1 - zeta^-power) = 2 - zeta^power - zeta^-power`.
    pub fn weight_of_root(m: u64, power: i64) -> Self {
        let two = CycInt::integer(2);
        two.minus(&CycInt::root_of_unity(m, power))
            .minus(&CycInt::root_of_unity(m, -power))
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Power-basis coefficients, length `phi(conductor)`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Re-expresses the element in `Z[zeta_target]`; `target` must be a multiple of the conductor.
    pub fn lift(&self, target: u64) -> Self {
        if target == self.conductor || (target <= 2 && self.conductor == 1) {
            return self.clone();
        }
        assert!(
            target.is_multiple_of(self.conductor),
            "cannot lift conductor {} to {}",
            self.conductor,
            target
        );
        let step = (target / self.conductor) as usize;
        let mut raw = vec![BigInt::zero(); target as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            raw[(i * step) % target as usize] += c;
        }
        CycInt::from_power_coeffs(target, raw)
    }

    fn aligned(&self, other: &CycInt) -> (CycInt, CycInt) {
        if self.conductor == other.conductor {
            return (self.clone(), other.clone());
        }
        let l = self.conductor.lcm(&other.conductor);
        (self.lift(l), other.lift(l))
    }

    /// The Galois automorphism `zeta -> zeta^a`, `gcd(a, m) = 1`.
    pub fn galois(&self, a: i64) -> Self {
        let m = self.conductor;
        if m == 1 {
            return self.clone();
        }
        let mut raw = vec![BigInt::zero(); m as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            let k = (i as i64 * a).rem_euclid(m as i64) as usize;
            raw[k] += c;
        }
        CycInt::from_power_coeffs(m, raw)
    }

    /// Complex conjugation, `zeta -> zeta^-1`.
    pub fn conj(&self) -> Self {
        self.galois(-1)
    }

    /// Product of all Galois conjugates; always a rational integer.
    pub fn norm(&self) -> BigInt {
        let m = self.conductor;
        let mut acc = self.clone();
        for a in 2..m {
            if a.gcd(&m) == 1 {
                acc = acc.times(&self.galois(a as i64));
            }
        }
        acc.as_integer().expect("norm is rational")
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_integer(&self) -> Option<BigInt> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    /// Image under the embedding `zeta_m -> exp(2 pi i / m)`.
    pub fn to_complex(&self) -> (f64, f64) {
        let m = self.conductor as f64;
        let mut re = 0.0;
        let mut im = 0.0;
        for (i, c) in self.coeffs.iter().enumerate() {
            let c = c.to_f64().unwrap_or(f64::NAN);
            let ang = 2.0 * std::f64::consts::PI * i as f64 / m;
            re += c * ang.cos();
            im += c * ang.sin();
        }
        (re, im)
    }
}

impl PartialEq for CycInt {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.coeffs == b.coeffs
    }
}

impl Eq for CycInt {}

impl Ring for CycInt {
    fn zero() -> Self {
        CycInt::integer(0)
    }

    fn one() -> Self {
        CycInt::integer(1)
    }

    fn from_bigint(n: &BigInt) -> Self {
        CycInt::integer(n.clone())
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn plus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x += y;
        }
        a
    }

    fn minus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (x, y) in a.coeffs.iter_mut().zip(&b.coeffs) {
            *x -= y;
        }
        a
    }

    fn times(&self, other: &Self) -> Self {
        if self.conductor == 1 {
            let k = &self.coeffs[0];
            return CycInt {
                conductor: other.conductor,
                coeffs: other.coeffs.iter().map(|c| c * k).collect(),
            };
        }
        if other.conductor == 1 {
            return other.times(self);
        }
        let (a, b) = self.aligned(other);
        let mut raw = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                raw[i + j] += x * y;
            }
        }
        CycInt::from_power_coeffs(a.conductor, raw)
    }

    fn negate(&self) -> Self {
        CycInt {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if let Some(d) = other.as_integer() {
            let mut coeffs = Vec::with_capacity(self.coeffs.len());
            for c in &self.coeffs {
                let (q, r) = c.div_rem(&d);
                if !r.is_zero() {
                    return None;
                }
                coeffs.push(q);
            }
            return Some(CycInt {
                conductor: self.conductor,
                coeffs,
            });
        }
        let (a, b) = self.aligned(other);
        // a / b = a * (prod of the other conjugates of b) / N(b)
        let m = b.conductor;
        let mut cofactor = CycInt::one();
        for k in 2..m {
            if k.gcd(&m) == 1 {
                cofactor = cofactor.times(&b.galois(k as i64));
            }
        }
        let norm = b.times(&cofactor).as_integer()?;
        a.times(&cofactor).div_exact(&CycInt::integer(norm))
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(n) = self.as_integer() {
            return write!(f, "{n}");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c.sign() == num_bigint::Sign::Minus;
            let mag = if neg { -c } else { c.clone() };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let unit = mag == BigInt::from(1);
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !unit {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.conductor)?;
                    } else {
                        write!(f, "z{}^{}", self.conductor, i)?;
                    }
                }
            }
        }
        Ok(())
    }
}
