//! Multi-modular evaluation and interpolation of integer polynomials.
//!
//! A polynomial with known per-variable degree bounds and a known bound on
//! the absolute value of its coefficients is recovered exactly from its
//! values on a grid modulo several word-sized primes.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

/// Largest primes below `2^31`, in decreasing order.
pub fn primes() -> impl Iterator<Item = u64> {
    static CACHED: OnceLock<Vec<u64>> = OnceLock::new();
    let cached = CACHED.get_or_init(|| raw_primes().take(64).collect());
    let last = *cached.last().unwrap();
    cached
        .iter()
        .copied()
        .chain(raw_primes().skip_while(move |&q| q >= last))
}

fn raw_primes() -> impl Iterator<Item = u64> {
    (3..(1u64 << 31)).rev().step_by(2).filter(|&n| is_prime(n))
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    a * b % p
}

pub fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow_mod(a, p - 2, p)
}

/// Reduces a signed integer into `[0, p)`.
pub fn reduce(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

pub fn reduce_i64(n: i64, p: u64) -> u64 {
    n.rem_euclid(p as i64) as u64
}

/// Barrett reduction for a fixed modulus below `2^32`.
#[derive(Clone, Copy, Debug)]
struct Barrett {
    p: u64,
    m: u64,
}

impl Barrett {
    fn new(p: u64) -> Self {
        debug_assert!(p > 1 && p < 1 << 32);
        Barrett {
            p,
            m: (u128::from(u64::MAX) / u128::from(p)) as u64,
        }
    }

    /// `x mod p` for any `x < 2^64`.
    #[inline]
    fn reduce(self, x: u64) -> u64 {
        let q = ((u128::from(x) * u128::from(self.m)) >> 64) as u64;
        let r = x - q * self.p;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }
}

/// Determinant of a row-major `n x n` matrix modulo `p`; the input is consumed.
pub fn det_mod(mut a: Vec<u64>, n: usize, p: u64) -> u64 {
    let br = Barrett::new(p);
    let bias = p * p;
    let mut det = 1u64;
    for k in 0..n {
        let Some(piv) = (k..n).find(|&i| a[i * n + k] != 0) else {
            return 0;
        };
        if piv != k {
            for j in 0..n {
                a.swap(piv * n + j, k * n + j);
            }
            det = (p - det) % p;
        }
        let pk = a[k * n + k];
        det = br.reduce(det * pk);
        let inv = inv_mod(pk, p);
        let (upper, lower) = a.split_at_mut((k + 1) * n);
        let pivot_row = &upper[k * n + k + 1..k * n + n];
        for row in lower.chunks_exact_mut(n) {
            let f = br.reduce(row[k] * inv);
            if f == 0 {
                continue;
            }
            for (x, &y) in row[k + 1..].iter_mut().zip(pivot_row) {
                *x = br.reduce(*x + bias - f * y);
            }
        }
    }
    det
}

/// Interpolation nodes: index `j` sits at the point `j + 1`, so every node
/// is nonzero and may be inverted.
pub fn node(j: usize) -> u64 {
    j as u64 + 1
}

/// In-place Newton divided differences along one line of nodes.
fn divided_differences(values: &mut [u64], line: &[usize], p: u64) {
    let n = line.len();
    for level in 1..n {
        // node(i) - node(i - level) = level
        let inv = inv_mod(level as u64 % p, p);
        for i in (level..n).rev() {
            let d = (values[line[i]] + p - values[line[i - 1]]) % p;
            values[line[i]] = mul_mod(d, inv, p);
        }
    }
}

/// In-place conversion from the Newton basis to monomials along one line.
fn newton_to_monomial(values: &mut [u64], line: &[usize], p: u64) {
    let n = line.len();
    let newton: Vec<u64> = line.iter().map(|&i| values[i]).collect();
    let mut coeffs = vec![0u64; n];
    for k in (0..n).rev() {
        // coeffs <- coeffs * (x - node(k)) + newton[k]
        let t = node(k) % p;
        let mut next = vec![0u64; n];
        for i in 0..n {
            if coeffs[i] == 0 {
                continue;
            }
            if i + 1 < n {
                next[i + 1] = (next[i + 1] + coeffs[i]) % p;
            }
            next[i] = (next[i] + p - mul_mod(coeffs[i], t, p)) % p;
        }
        next[0] = (next[0] + newton[k]) % p;
        coeffs = next;
    }
    for (&i, c) in line.iter().zip(coeffs) {
        values[i] = c;
    }
}

/// Monomial coefficients of the polynomial taking values `ys[j]` at `node(j)`.
pub fn interpolate(ys: &[u64], p: u64) -> Vec<u64> {
    let mut values = ys.to_vec();
    let line: Vec<usize> = (0..ys.len()).collect();
    divided_differences(&mut values, &line, p);
    newton_to_monomial(&mut values, &line, p);
    values
}

/// Exponent vectors bounded coordinatewise by `caps` with sum at most
/// `total`; downward closed, so Newton interpolation on it is unisolvent.
pub struct LowerSet {
    points: Vec<Vec<u32>>,
    /// `lines[l]` lists the maximal runs along axis `l`, as point indices.
    lines: Vec<Vec<Vec<usize>>>,
}

impl LowerSet {
    pub fn new(caps: &[usize], total: usize) -> Self {
        let dims = caps.len();
        let mut points = Vec::new();
        let mut cur = vec![0u32; dims];
        fn rec(l: usize, room: usize, caps: &[usize], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if l == caps.len() {
                out.push(cur.clone());
                return;
            }
            for v in 0..=caps[l].min(room) {
                cur[l] = v as u32;
                rec(l + 1, room - v, caps, cur, out);
            }
            cur[l] = 0;
        }
        rec(0, total, caps, &mut cur, &mut points);
        let index: std::collections::HashMap<&[u32], usize> =
            points.iter().enumerate().map(|(i, a)| (a.as_slice(), i)).collect();
        let lines = (0..dims)
            .map(|l| {
                points
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a[l] == 0)
                    .map(|(start, a)| {
                        let mut run = vec![start];
                        let mut b = a.clone();
                        loop {
                            b[l] += 1;
                            match index.get(b.as_slice()) {
                                Some(&i) => run.push(i),
                                None => break,
                            }
                        }
                        run
                    })
                    .collect()
            })
            .collect();
        LowerSet { points, lines }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Number of points, without building the set.
    pub fn count(caps: &[usize], total: usize) -> u128 {
        let mut ways = vec![0u128; total + 1];
        ways[0] = 1;
        for &c in caps {
            let mut next = vec![0u128; total + 1];
            for (s, &w) in ways.iter().enumerate() {
                if w == 0 {
                    continue;
                }
                for v in 0..=c.min(total - s) {
                    next[s + v] += w;
                }
            }
            ways = next;
        }
        ways.iter().sum()
    }

    fn interpolate(&self, values: &mut [u64], p: u64) {
        for lines in &self.lines {
            for line in lines {
                divided_differences(values, line, p);
            }
        }
        for lines in &self.lines {
            for line in lines {
                newton_to_monomial(values, line, p);
            }
        }
    }
}

/// Chinese remaindering into the symmetric range around zero.
pub fn crt_symmetric(residues: &[u64], moduli: &[u64]) -> BigInt {
    let mut x = BigInt::zero();
    let mut m = BigInt::one();
    for (&r, &p) in residues.iter().zip(moduli) {
        // x' = x + m * ((r - x) * m^-1 mod p)
        let xm = reduce(&x, p);
        let mm = reduce(&m, p);
        let t = mul_mod((r + p - xm) % p, inv_mod(mm, p), p);
        x += &m * t;
        m *= p;
    }
    let half = &m >> 1;
    if x > half {
        x - m
    } else {
        x
    }
}

/// Recovers an integer polynomial from modular evaluations.
///
/// `degrees[i]` bounds the degree in variable `i`; `coeff_bound` bounds the
/// absolute value of every coefficient. `eval(point, p)` must return the
/// polynomial's value modulo `p` at the integer point `point`. Returns the
/// nonzero coefficients keyed by exponent vector.
pub fn reconstruct<F>(degrees: &[usize], coeff_bound: &BigInt, eval: F) -> BTreeMap<Vec<u32>, BigInt>
where
    F: Fn(&[u64], u64) -> u64 + Sync,
{
    reconstruct_lower(&LowerSet::new(degrees, degrees.iter().sum()), coeff_bound, eval)
}

/// As [`reconstruct`], for a polynomial whose support lies in `set`.
pub fn reconstruct_lower<F>(set: &LowerSet, coeff_bound: &BigInt, eval: F) -> BTreeMap<Vec<u32>, BigInt>
where
    F: Fn(&[u64], u64) -> u64 + Sync,
{
    let target = coeff_bound.abs() * 2u32 + 1u32;
    let mut moduli = Vec::new();
    let mut product = BigInt::one();
    let mut tables: Vec<Vec<u64>> = Vec::new();
    for p in primes() {
        if product > target {
            break;
        }
        let mut values: Vec<u64> = set
            .points
            .par_iter()
            .map(|a| {
                let point: Vec<u64> = a.iter().map(|&j| node(j as usize)).collect();
                eval(&point, p)
            })
            .collect();
        set.interpolate(&mut values, p);
        tables.push(values);
        moduli.push(p);
        product *= p;
    }
    let mut out = BTreeMap::new();
    for (idx, a) in set.points.iter().enumerate() {
        let residues: Vec<u64> = tables.iter().map(|t| t[idx]).collect();
        if residues.iter().all(|&r| r == 0) {
            continue;
        }
        let c = crt_symmetric(&residues, &moduli);
        if !c.is_zero() {
            out.insert(a.clone(), c);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_primes() {
        let ps: Vec<u64> = primes().take(2).collect();
        assert_eq!(ps, vec![2147483647, 2147483629]);
    }

    #[test]
    fn modular_determinant() {
        let p = 101;
        let m = [0i64, 2, 1, 3, 1, 4, 1, 5, 9];
        let a: Vec<u64> = m.iter().map(|&x| reduce_i64(x, p)).collect();
        assert_eq!(det_mod(a, 3, p), reduce_i64(-32, p));
    }

    #[test]
    fn univariate_interpolation() {
        let p = 1_000_003;
        // 3 - 2x + 5x^3
        let f = |x: u64| (3 + p - 2 * x % p + 5 * x * x * x) % p;
        let ys: Vec<u64> = (0..5).map(|j| f(node(j))).collect();
        assert_eq!(interpolate(&ys, p), vec![3, p - 2, 0, 5, 0]);
    }

    #[test]
    fn chinese_remainder_signs() {
        let moduli = [7u64, 11];
        let r = |n: i64| moduli.map(|p| reduce_i64(n, p));
        assert_eq!(crt_symmetric(&r(-20), &moduli), BigInt::from(-20));
        assert_eq!(crt_symmetric(&r(38), &moduli), BigInt::from(38));
    }

    #[test]
    fn bivariate_with_large_coefficients() {
        // 10^12 x^2 y - 7 y^3 + x
        let big = BigInt::from(10u64.pow(12));
        let bigs = [big.clone()];
        let got = reconstruct(&[2, 3], &big, |pt, p| {
            let (x, y) = (pt[0], pt[1]);
            let c = reduce(&bigs[0], p);
            let t1 = mul_mod(mul_mod(c, mul_mod(x, x, p), p), y, p);
            let t2 = mul_mod(7, pow_mod(y, 3, p), p);
            (t1 + p - t2 + x) % p
        });
        let mut expected = BTreeMap::new();
        expected.insert(vec![2, 1], big);
        expected.insert(vec![0, 3], BigInt::from(-7));
        expected.insert(vec![1, 0], BigInt::from(1));
        assert_eq!(got, expected);
    }

    #[test]
    fn lower_set_recovers_sparse_support() {
        // 4 x^2 z - 3 x y z + y^3 - 11, total degree 3, caps (2, 3, 1)
        let set = LowerSet::new(&[2, 3, 1], 3);
        assert_eq!(set.len() as u128, LowerSet::count(&[2, 3, 1], 3));
        assert!(set.len() < 3 * 4 * 2);
        let got = reconstruct_lower(&set, &BigInt::from(11), |pt, p| {
            let (x, y, z) = (pt[0], pt[1], pt[2]);
            let a = mul_mod(4, mul_mod(mul_mod(x, x, p), z, p), p);
            let b = mul_mod(3, mul_mod(mul_mod(x, y, p), z, p), p);
            (a + p - b + pow_mod(y, 3, p) + p - 11) % p
        });
        let mut expected = BTreeMap::new();
        expected.insert(vec![2, 0, 1], BigInt::from(4));
        expected.insert(vec![1, 1, 1], BigInt::from(-3));
        expected.insert(vec![0, 3, 0], BigInt::from(1));
        expected.insert(vec![0, 0, 0], BigInt::from(-11));
        assert_eq!(got, expected);
    }

    #[test]
    fn empty_lower_set_is_a_constant() {
        let set = LowerSet::new(&[], 0);
        assert_eq!(set.len(), 1);
        let got = reconstruct_lower(&set, &BigInt::from(5), |_, p| p - 5);
        assert_eq!(got.into_iter().collect::<Vec<_>>(), vec![(vec![], BigInt::from(-5))]);
    }
}
