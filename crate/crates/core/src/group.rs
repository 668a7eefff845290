//! Finite abelian groups `Z/n_1 x ... x Z/n_k`, their subgroups and characters.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// A group element as a tuple of reduced residues.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(pub Vec<u64>);

impl fmt::Display for GroupElement {
    /// A single residue prints bare; tuples print as `(a,b,...)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.len() == 1 {
            return write!(f, "{}", self.0[0]);
        }
        let parts: Vec<String> = self.0.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianGroup {
    orders: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(orders: &[i64]) -> Result<Self> {
        if let Some(&bad) = orders.iter().find(|&&n| n < 1) {
            return Err(Error::BadGroup(bad));
        }
        Ok(AbelianGroup {
            orders: orders.iter().map(|&n| n as u64).collect(),
        })
    }

    pub fn cyclic(n: u64) -> Self {
        assert!(n >= 1);
        AbelianGroup { orders: vec![n] }
    }

    pub fn orders(&self) -> &[u64] {
        &self.orders
    }

    /// `N = |G|`.
    pub fn order(&self) -> u64 {
        self.orders.iter().product()
    }

    /// Least common multiple of the cyclic orders.
    pub fn exponent(&self) -> u64 {
        self.orders.iter().fold(1, |a, n| a.lcm(n))
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement(vec![0; self.orders.len()])
    }

    /// Reduces an arbitrary integer tuple into the group.
    pub fn element(&self, raw: &[i64]) -> Result<GroupElement> {
        if raw.len() != self.orders.len() {
            return Err(Error::MalformedElement {
                element: raw.to_vec(),
                orders: self.orders.clone(),
            });
        }
        Ok(GroupElement(
            raw.iter()
                .zip(&self.orders)
                .map(|(&a, &n)| a.rem_euclid(n as i64) as u64)
                .collect(),
        ))
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        g.0.len() == self.orders.len() && g.0.iter().zip(&self.orders).all(|(a, n)| a < n)
    }

    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&b.0)
                .zip(&self.orders)
                .map(|((x, y), n)| (x + y) % n)
                .collect(),
        )
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(x, n)| (n - x) % n)
                .collect(),
        )
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    /// `k * a` for any integer `k`.
    pub fn scale(&self, k: i64, a: &GroupElement) -> GroupElement {
        GroupElement(
            a.0.iter()
                .zip(&self.orders)
                .map(|(&x, &n)| ((k.rem_euclid(n as i64) as u64) * x) % n)
                .collect(),
        )
    }

    /// Every element, in lexicographic order.
    pub fn elements(&self) -> Vec<GroupElement> {
        let mut out = vec![Vec::new()];
        for &n in &self.orders {
            out = out
                .into_iter()
                .flat_map(|prefix| {
                    (0..n).map(move |a| {
                        let mut v = prefix.clone();
                        v.push(a);
                        v
                    })
                })
                .collect();
        }
        out.into_iter().map(GroupElement).collect()
    }

    /// All characters, trivial first, ordered by exponent tuple.
    pub fn characters(&self) -> Vec<Character> {
        self.elements()
            .into_iter()
            .map(|g| Character {
                group: self.clone(),
                exponents: g.0,
            })
            .collect()
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            elements: vec![self.zero()],
        }
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            group: self.clone(),
            elements: self.elements(),
        }
    }

    /// Smallest subgroup containing `gens`, by breadth-first closure.
    pub fn subgroup(&self, gens: &[GroupElement]) -> Result<Subgroup> {
        for g in gens {
            if !self.contains(g) {
                return Err(Error::MalformedElement {
                    element: g.0.iter().map(|&x| x as i64).collect(),
                    orders: self.orders.clone(),
                });
            }
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::new();
        seen.insert(self.zero());
        let mut frontier = vec![self.zero()];
        while let Some(x) = frontier.pop() {
            for g in gens {
                let y = self.add(&x, g);
                if seen.insert(y.clone()) {
                    frontier.push(y);
                }
            }
        }
        Ok(Subgroup {
            group: self.clone(),
            elements: seen.into_iter().collect(),
        })
    }
}

/// A subgroup stored as its sorted element list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subgroup {
    group: AbelianGroup,
    elements: Vec<GroupElement>,
}

impl Subgroup {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn elements(&self) -> &[GroupElement] {
        &self.elements
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    /// `[G : H]`.
    pub fn index(&self) -> u64 {
        self.group.order() / self.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn contains(&self, g: &GroupElement) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// `A + B`.
    pub fn sum(&self, other: &Subgroup) -> Result<Subgroup> {
        if self.group != other.group {
            return Err(Error::ParentMismatch);
        }
        let gens: Vec<GroupElement> = self
            .generators()
            .into_iter()
            .chain(other.generators())
            .collect();
        self.group.subgroup(&gens)
    }

    /// Greedy generating set: walk the sorted elements and keep each one
    /// not already in the span of those kept so far.
    pub fn generators(&self) -> Vec<GroupElement> {
        let mut gens: Vec<GroupElement> = Vec::new();
        let mut span = self.group.trivial_subgroup();
        for g in &self.elements {
            if !span.contains(g) {
                gens.push(g.clone());
                span = self.group.subgroup(&gens).expect("elements lie in the group");
                if span.order() == self.order() {
                    break;
                }
            }
        }
        gens
    }

    /// Lexicographically smallest element of the coset `g + H`.
    pub fn coset_rep(&self, g: &GroupElement) -> GroupElement {
        self.elements
            .iter()
            .map(|h| self.group.add(g, h))
            .min()
            .expect("subgroups are nonempty")
    }

    /// Canonical representatives of `G / H`, sorted.
    pub fn coset_reps(&self) -> Vec<GroupElement> {
        let reps: BTreeSet<GroupElement> = self
            .group
            .elements()
            .iter()
            .map(|g| self.coset_rep(g))
            .collect();
        reps.into_iter().collect()
    }
}

/// A character `rho: G -> mu_m`, `m = exponent(G)`, recorded by the
/// exponent of the root of unity it assigns to each element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    group: AbelianGroup,
    exponents: Vec<u64>,
}

impl Character {
    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn exponents(&self) -> &[u64] {
        &self.exponents
    }

    /// The conductor the values live in.
    pub fn modulus(&self) -> u64 {
        self.group.exponent()
    }

    /// `k` with `rho(g) = zeta_m^k`.
    pub fn value(&self, g: &GroupElement) -> u64 {
        let m = self.modulus();
        self.exponents
            .iter()
            .zip(&g.0)
            .zip(self.group.orders())
            .map(|((c, a), n)| (c * a % n) * (m / n))
            .sum::<u64>()
            % m
    }

    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&c| c == 0)
    }

    /// True iff `rho` is identically 1 on `h`.
    pub fn kills(&self, h: &Subgroup) -> Result<bool> {
        if h.group() != &self.group {
            return Err(Error::ParentMismatch);
        }
        Ok(h.elements().iter().all(|g| self.value(g) == 0))
    }

    /// The complex conjugate character.
    pub fn conj(&self) -> Character {
        Character {
            group: self.group.clone(),
            exponents: self.group.neg(&GroupElement(self.exponents.clone())).0,
        }
    }

    /// `rho^a`.
    pub fn power(&self, a: i64) -> Character {
        Character {
            group: self.group.clone(),
            exponents: self.group.scale(a, &GroupElement(self.exponents.clone())).0,
        }
    }

    /// Position in `AbelianGroup::characters`.
    pub fn index(&self) -> usize {
        self.exponents
            .iter()
            .zip(self.group.orders())
            .fold(0usize, |acc, (&c, &n)| acc * n as usize + c as usize)
    }
}
