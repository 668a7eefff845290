//! Sparse multivariate polynomials over named variables.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;

use super::ring::Ring;

/// A polynomial whose variables are named by strings (edge ids).
///
/// The variable list is kept sorted and exponent vectors are indexed by it.
/// Two polynomials over different variable lists compare equal when they
/// agree after both are re-expressed over the union of their variables.
#[derive(Clone, Debug)]
pub struct MultiPoly<R: Ring> {
    vars: Vec<String>,
    terms: BTreeMap<Vec<u32>, R>,
}

impl<R: Ring> MultiPoly<R> {
    /// The zero polynomial over the given variables.
    pub fn zero_in(vars: &[String]) -> Self {
        let mut vars = vars.to_vec();
        vars.sort();
        vars.dedup();
        MultiPoly {
            vars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: R) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MultiPoly {
            vars: Vec::new(),
            terms,
        }
    }

    pub fn var(name: &str) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(vec![1], R::one());
        MultiPoly {
            vars: vec![name.to_string()],
            terms,
        }
    }

    /// Builds a polynomial from `(coefficient, [(var, exponent)])` terms.
    pub fn from_terms<'a, I, J>(terms: I) -> Self
    where
        I: IntoIterator<Item = (R, J)>,
        J: IntoIterator<Item = (&'a str, u32)>,
    {
        let raw: Vec<(R, Vec<(&'a str, u32)>)> = terms
            .into_iter()
            .map(|(c, m)| (c, m.into_iter().collect()))
            .collect();
        let mut vars: Vec<String> = raw
            .iter()
            .flat_map(|(_, m)| m.iter().map(|(v, _)| v.to_string()))
            .collect();
        vars.sort();
        vars.dedup();
        let mut out = Self::zero_in(&vars);
        for (c, m) in raw {
            let mut exps = vec![0u32; out.vars.len()];
            for (v, e) in m {
                let i = out.vars.binary_search_by(|x| x.as_str().cmp(v)).unwrap();
                exps[i] += e;
            }
            out.add_term(exps, c);
        }
        out
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    /// Terms in ascending lexicographic exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &R)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Coefficient of the monomial with the given exponents (by variable name).
    pub fn coeff_of(&self, exps: &[(&str, u32)]) -> R {
        let mut key = vec![0u32; self.vars.len()];
        for (v, e) in exps {
            match self.var_index(v) {
                Some(i) => key[i] += e,
                None if *e == 0 => {}
                None => return R::zero(),
            }
        }
        self.terms.get(&key).cloned().unwrap_or_else(R::zero)
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.binary_search_by(|x| x.as_str().cmp(name)).ok()
    }

    /// Adds `c * x^exps`; `exps` is indexed by this polynomial's variables.
    pub fn add_term(&mut self, exps: Vec<u32>, c: R) {
        debug_assert_eq!(exps.len(), self.vars.len());
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&exps) {
            Some(existing) => {
                let s = existing.plus(&c);
                if s.is_zero() {
                    self.terms.remove(&exps);
                } else {
                    *existing = s;
                }
            }
            None => {
                self.terms.insert(exps, c);
            }
        }
    }

    /// Re-expresses the polynomial over a superset of its variables.
    pub fn extend_vars(&self, vars: &[String]) -> Self {
        if vars == self.vars.as_slice() {
            return self.clone();
        }
        let positions: Vec<usize> = self
            .vars
            .iter()
            .map(|v| {
                vars.binary_search(v)
                    .expect("target variable list must contain every variable")
            })
            .collect();
        let mut terms = BTreeMap::new();
        for (k, c) in &self.terms {
            let mut nk = vec![0u32; vars.len()];
            for (i, &p) in positions.iter().enumerate() {
                nk[p] = k[i];
            }
            terms.insert(nk, c.clone());
        }
        MultiPoly {
            vars: vars.to_vec(),
            terms,
        }
    }

    fn aligned(&self, other: &Self) -> (Self, Self) {
        if self.vars == other.vars {
            return (self.clone(), other.clone());
        }
        let mut vars: Vec<String> = self.vars.iter().chain(&other.vars).cloned().collect();
        vars.sort();
        vars.dedup();
        (self.extend_vars(&vars), other.extend_vars(&vars))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero_in(&self.vars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v.times(c));
        }
        out
    }

    pub fn map_coeffs<S: Ring>(&self, f: impl Fn(&R) -> S) -> MultiPoly<S> {
        let mut out = MultiPoly::zero_in(&self.vars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), f(v));
        }
        out
    }

    /// `Some(d)` when every term has total degree `d`; `Some(0)` for zero.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|k| k.iter().sum::<u32>());
        let first = degs.next().unwrap_or(0);
        degs.all(|d| d == first).then_some(first)
    }

    /// Evaluates at a point; variables missing from `point` are an error.
    pub fn eval(&self, point: &HashMap<String, R>) -> Result<R, String> {
        let vals: Vec<&R> = self
            .vars
            .iter()
            .map(|v| point.get(v).ok_or_else(|| v.clone()))
            .collect::<Result<_, _>>()?;
        let mut acc = R::zero();
        for (k, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in k.iter().enumerate() {
                if e > 0 {
                    t = t.times(&vals[i].pow(e as u64));
                }
            }
            acc = acc.plus(&t);
        }
        Ok(acc)
    }

    /// Sum of all coefficients, i.e. the value at the all-ones point.
    pub fn eval_ones(&self) -> R {
        self.terms.values().fold(R::zero(), |acc, c| acc.plus(c))
    }

    /// Replaces the variable `name` by the constant `value`.
    pub fn substitute(&self, name: &str, value: &R) -> Self {
        let Some(i) = self.var_index(name) else {
            return self.clone();
        };
        let mut vars = self.vars.clone();
        vars.remove(i);
        let mut out = Self::zero_in(&vars);
        for (k, c) in &self.terms {
            let mut nk = k.clone();
            let e = nk.remove(i);
            out.add_term(nk, c.times(&value.pow(e as u64)));
        }
        out
    }

    /// Exact quotient by the single variable `name`, or `None` if some term lacks it.
    pub fn divide_by_var(&self, name: &str) -> Option<Self> {
        let i = self.var_index(name)?;
        let mut out = Self::zero_in(&self.vars);
        for (k, c) in &self.terms {
            if k[i] == 0 {
                return None;
            }
            let mut nk = k.clone();
            nk[i] -= 1;
            out.add_term(nk, c.clone());
        }
        Some(out)
    }

    /// Renames variables through `f`; variables sent to the same name merge.
    pub fn rename_vars(&self, f: impl Fn(&str) -> String) -> Self {
        let new_names: Vec<String> = self.vars.iter().map(|v| f(v)).collect();
        let mut vars = new_names.clone();
        vars.sort();
        vars.dedup();
        let pos: Vec<usize> = new_names
            .iter()
            .map(|n| vars.binary_search(n).unwrap())
            .collect();
        let mut out = Self::zero_in(&vars);
        for (k, c) in &self.terms {
            let mut nk = vec![0u32; vars.len()];
            for (i, &e) in k.iter().enumerate() {
                nk[pos[i]] += e;
            }
            out.add_term(nk, c.clone());
        }
        out
    }

    /// Drops variables that occur in no term.
    pub fn trim_vars(&self) -> Self {
        let used: Vec<usize> = (0..self.vars.len())
            .filter(|&i| self.terms.keys().any(|k| k[i] > 0))
            .collect();
        if used.len() == self.vars.len() {
            return self.clone();
        }
        let vars: Vec<String> = used.iter().map(|&i| self.vars[i].clone()).collect();
        let mut out = Self::zero_in(&vars);
        for (k, c) in &self.terms {
            out.add_term(used.iter().map(|&i| k[i]).collect(), c.clone());
        }
        out
    }

    /// Multivariate division by lexicographic leading terms.
    ///
    /// Returns `(q, r)` with `self = q * d + r`, where no term of `r` is
    /// divisible by the leading term of `d`.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (mut p, d) = self.aligned(d);
        let (lk, lc) = d.terms.iter().next_back().map(|(k, c)| (k.clone(), c.clone())).unwrap();
        let mut q = Self::zero_in(&p.vars);
        let mut r = Self::zero_in(&p.vars);
        while let Some((pk, pc)) = p.terms.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            let divisible = pk.iter().zip(&lk).all(|(a, b)| a >= b);
            let quotient = if divisible { pc.div_exact(&lc) } else { None };
            match quotient {
                Some(qc) => {
                    let shift: Vec<u32> = pk.iter().zip(&lk).map(|(a, b)| a - b).collect();
                    for (dk, dc) in &d.terms {
                        let k: Vec<u32> = dk.iter().zip(&shift).map(|(a, b)| a + b).collect();
                        p.add_term(k, dc.times(&qc).negate());
                    }
                    q.add_term(shift, qc);
                }
                None => {
                    p.terms.remove(&pk);
                    r.add_term(pk, pc);
                }
            }
        }
        (q, r)
    }

    /// Exact quotient, or the nonzero remainder left by the division.
    pub fn exact_divide(&self, d: &Self) -> Result<Self, Self> {
        let (q, r) = self.div_rem(d);
        if r.is_zero() {
            Ok(q)
        } else {
            Err(r)
        }
    }
}

impl<R: Ring> PartialEq for MultiPoly<R> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = self.aligned(other);
        a.terms == b.terms
    }
}

impl<R: Ring> Ring for MultiPoly<R> {
    fn zero() -> Self {
        Self::zero_in(&[])
    }

    fn one() -> Self {
        Self::constant(R::one())
    }

    fn from_bigint(n: &BigInt) -> Self {
        Self::constant(R::from_bigint(n))
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn plus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (k, c) in b.terms {
            a.add_term(k, c);
        }
        a
    }

    fn minus(&self, other: &Self) -> Self {
        let (mut a, b) = self.aligned(other);
        for (k, c) in b.terms {
            a.add_term(k, c.negate());
        }
        a
    }

    fn times(&self, other: &Self) -> Self {
        let (a, b) = self.aligned(other);
        let mut acc: HashMap<Vec<u32>, R> = HashMap::new();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                let t = ca.times(cb);
                match acc.get_mut(&k) {
                    Some(v) => *v = v.plus(&t),
                    None => {
                        acc.insert(k, t);
                    }
                }
            }
        }
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        MultiPoly { vars: a.vars, terms }
    }

    fn negate(&self) -> Self {
        self.map_coeffs(Ring::negate)
    }

    fn div_exact(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        self.exact_divide(other).ok()
    }
}

impl<R: Ring + fmt::Display> fmt::Display for MultiPoly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.terms.iter().rev() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let mono: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| {
                    if e == 1 {
                        self.vars[i].clone()
                    } else {
                        format!("{}^{}", self.vars[i], e)
                    }
                })
                .collect();
            if mono.is_empty() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "{}", mono.join("*"))?;
            } else {
                write!(f, "({c})*{}", mono.join("*"))?;
            }
        }
        Ok(())
    }
}
