//! Sparse multivariate polynomials with rational coefficients in the
//! variables `v1..vn, z1..zm, t` (always in that order).

mod diffops;

pub use diffops::{
    apply_di, apply_dz, bold_d, compose_affine, laplace_v, laplace_z, s_operator,
};

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};
use crate::htype::SpaceSignature;
use crate::rational::{qi, to_f64, Q};

pub type Exponent = SmallVec<[u8; 16]>;

/// Variable bookkeeping: `n` coordinates of `v`, `m` of `z`, then `t`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
}

impl Layout {
    pub fn new(n: usize, m: usize) -> Self {
        Layout { n, m }
    }

    pub fn of(sig: &SpaceSignature) -> Self {
        Layout { n: sig.n(), m: sig.m() }
    }

    pub fn nvars(&self) -> usize {
        self.n + self.m + 1
    }

    pub fn v(&self, i: usize) -> usize {
        assert!(i < self.n, "v index {i} out of range");
        i
    }

    pub fn z(&self, alpha: usize) -> usize {
        assert!(alpha < self.m, "z index {alpha} out of range");
        self.n + alpha
    }

    pub fn t(&self) -> usize {
        self.n + self.m
    }

    pub fn name(&self, var: usize) -> String {
        if var < self.n {
            format!("v{}", var + 1)
        } else if var < self.n + self.m {
            format!("z{}", var - self.n + 1)
        } else {
            "t".to_string()
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    layout: Layout,
    terms: BTreeMap<Exponent, Q>,
}

impl Poly {
    pub fn zero(layout: Layout) -> Self {
        Poly { layout, terms: BTreeMap::new() }
    }

    pub fn constant(layout: Layout, c: Q) -> Self {
        let mut p = Self::zero(layout);
        p.add_term(Exponent::from_elem(0, layout.nvars()), c);
        p
    }

    pub fn one(layout: Layout) -> Self {
        Self::constant(layout, Q::one())
    }

    pub fn var(layout: Layout, var: usize) -> Self {
        let mut e = Exponent::from_elem(0, layout.nvars());
        e[var] = 1;
        let mut p = Self::zero(layout);
        p.add_term(e, Q::one());
        p
    }

    /// The monomial `c · x^exp`.
    pub fn monomial(layout: Layout, exp: &[u8], c: Q) -> Self {
        assert_eq!(exp.len(), layout.nvars());
        let mut p = Self::zero(layout);
        p.add_term(Exponent::from_slice(exp), c);
        p
    }

    /// `Σ coeffs[i] · v_i`.
    pub fn linear_in_v(layout: Layout, coeffs: &[Q]) -> Self {
        let mut p = Self::zero(layout);
        for (i, c) in coeffs.iter().enumerate() {
            p += &Poly::var(layout, layout.v(i)).scale(c);
        }
        p
    }

    pub fn layout(&self) -> Layout {
        self.layout
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored monomials.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Q)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[u8]) -> Q {
        self.terms.get(exp).cloned().unwrap_or_else(Q::zero)
    }

    pub fn constant_term(&self) -> Q {
        self.coefficient(&vec![0; self.layout.nvars()])
    }

    pub fn add_term(&mut self, exp: Exponent, c: Q) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Q) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.layout);
        }
        Poly { layout: self.layout, terms: self.terms.iter().map(|(e, x)| (e.clone(), x * c)).collect() }
    }

    pub fn pow(&self, k: u32) -> Poly {
        let mut out = Poly::one(self.layout);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.layout);
        for (e, c) in &self.terms {
            let d = e[var];
            if d > 0 {
                let mut e2 = e.clone();
                e2[var] = d - 1;
                out.add_term(e2, c * qi(d as i64));
            }
        }
        out
    }

    pub fn evaluate(&self, x: &[Q]) -> Q {
        assert_eq!(x.len(), self.layout.nvars());
        let mut acc = Q::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for (xi, &d) in x.iter().zip(e.iter()) {
                if d > 0 {
                    term *= num_traits::pow(xi.clone(), d as usize);
                }
            }
            acc += term;
        }
        acc
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.layout.nvars());
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter().zip(x).fold(to_f64(c), |acc, (&d, xi)| if d > 0 { acc * xi.powi(d as i32) } else { acc })
            })
            .sum()
    }

    /// Replaces every variable `x_k` by `subs[k]`; the result lives in the
    /// layout of the substitutes.
    pub fn substitute(&self, subs: &[Poly]) -> Result<Poly> {
        if subs.len() != self.layout.nvars() {
            return Err(Error::DimensionMismatch { expected: self.layout.nvars(), got: subs.len() });
        }
        let target = subs.first().map_or(self.layout, |p| p.layout);
        let mut powers: Vec<Vec<Poly>> = subs.iter().map(|s| vec![Poly::one(target), s.clone()]).collect();
        let mut out = Poly::zero(target);
        for (e, c) in &self.terms {
            let mut term = Poly::constant(target, c.clone());
            for (k, &d) in e.iter().enumerate() {
                if d == 0 {
                    continue;
                }
                while powers[k].len() <= d as usize {
                    let next = &powers[k][powers[k].len() - 1] * &subs[k];
                    powers[k].push(next);
                }
                term = &term * &powers[k][d as usize];
            }
            out += &term;
        }
        Ok(out)
    }

    pub fn degree(&self, var: usize) -> u32 {
        self.terms.keys().map(|e| e[var] as u32).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(|e| e.iter().map(|&d| d as u32).sum()).max().unwrap_or(0)
    }

    /// Coefficient of `x_var^power`, as a polynomial not involving `x_var`.
    pub fn coefficient_in(&self, var: usize, power: u8) -> Poly {
        let mut out = Poly::zero(self.layout);
        for (e, c) in &self.terms {
            if e[var] == power {
                let mut e2 = e.clone();
                e2[var] = 0;
                out.add_term(e2, c.clone());
            }
        }
        out
    }

    /// Multiplies by `x_var^k`.
    pub fn shift(&self, var: usize, k: u8) -> Poly {
        Poly {
            layout: self.layout,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e2 = e.clone();
                    e2[var] += k;
                    (e2, c.clone())
                })
                .collect(),
        }
    }

    /// `true` when every monomial contains `x_var` (the zero polynomial
    /// counts as divisible).
    pub fn divisible_by(&self, var: usize) -> bool {
        self.terms.keys().all(|e| e[var] > 0)
    }

    /// Monomials grouped by their degree in `var`, lowest first.
    pub fn split_by_degree(&self, var: usize) -> Vec<(u8, Poly)> {
        let mut degs: Vec<u8> = self.terms.keys().map(|e| e[var]).collect();
        degs.sort_unstable();
        degs.dedup();
        degs.into_iter()
            .map(|d| {
                let mut part = Poly::zero(self.layout);
                for (e, c) in &self.terms {
                    if e[var] == d {
                        part.add_term(e.clone(), c.clone());
                    }
                }
                (d, part)
            })
            .collect()
    }

    pub fn format_monomial(&self, exp: &[u8]) -> String {
        let vars: Vec<String> = exp
            .iter()
            .enumerate()
            .filter(|(_, &d)| d > 0)
            .map(|(k, &d)| if d == 1 { self.layout.name(k) } else { format!("{}^{}", self.layout.name(k), d) })
            .collect();
        vars.join("*")
    }
}

impl fmt::Display for Poly {
    /// Canonical text: monomials in ascending lexicographic order of their
    /// exponent vectors, e.g. `1/4*v1^2 + -2*z1 + t`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mono = self.format_monomial(e);
                match (mono.is_empty(), c.is_one()) {
                    (true, _) => c.to_string(),
                    (false, true) => mono,
                    (false, false) => format!("{c}*{mono}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

impl<'a> Add<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out += o;
        out
    }
}

impl std::ops::AddAssign<&Poly> for Poly {
    fn add_assign(&mut self, o: &Poly) {
        debug_assert_eq!(self.layout, o.layout);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }
}

impl std::ops::SubAssign<&Poly> for Poly {
    fn sub_assign(&mut self, o: &Poly) {
        debug_assert_eq!(self.layout, o.layout);
        for (e, c) in &o.terms {
            self.add_term(e.clone(), -c);
        }
    }
}

impl<'a> Sub<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        let mut out = self.clone();
        out -= o;
        out
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly { layout: self.layout, terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect() }
    }
}

impl<'a> Mul<&'a Poly> for &'a Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        debug_assert_eq!(self.layout, o.layout);
        let mut out = Poly::zero(self.layout);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Exponent = e1.iter().zip(e2.iter()).map(|(a, b)| a + b).collect();
                out.add_term(e, c1 * c2);
            }
        }
        out
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: Poly) -> Poly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a Poly> for Poly {
            type Output = Poly;
            fn $f(self, o: &Poly) -> Poly {
                (&self).$f(o)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

/// `F = numerator / t^k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyFraction {
    numerator: Poly,
    k: u32,
}

impl PolyFraction {
    /// Fails with [`Error::DivisibleByT`] when `k ≥ 1` and `t` divides the
    /// numerator (including the zero numerator).
    pub fn new(numerator: Poly, k: u32) -> Result<Self> {
        if k >= 1 && numerator.divisible_by(numerator.layout.t()) {
            return Err(Error::DivisibleByT);
        }
        Ok(PolyFraction { numerator, k })
    }

    pub fn numerator(&self) -> &Poly {
        &self.numerator
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn layout(&self) -> Layout {
        self.numerator.layout
    }

    /// `F(x)` at a point with `t ≠ 0`.
    pub fn evaluate(&self, x: &[Q]) -> Q {
        let t = x[self.layout().t()].clone();
        self.numerator.evaluate(x) / num_traits::pow(t, self.k as usize)
    }

    pub fn evaluate_f64(&self, x: &[f64]) -> f64 {
        self.numerator.evaluate_f64(x) / x[self.layout().t()].powi(self.k as i32)
    }
}

/// `Σ_{i ∈ idx} x_i²`.
pub fn sum_of_squares(layout: Layout, vars: impl IntoIterator<Item = usize>) -> Poly {
    let mut out = Poly::zero(layout);
    for k in vars {
        let x = Poly::var(layout, k);
        out += &(&x * &x);
    }
    out
}

/// `‖v‖²`.
pub fn norm_v_sq(layout: Layout) -> Poly {
    sum_of_squares(layout, 0..layout.n)
}

/// `‖z‖²`.
pub fn norm_z_sq(layout: Layout) -> Poly {
    sum_of_squares(layout, layout.n..layout.n + layout.m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    fn lay() -> Layout {
        Layout::new(2, 1)
    }

    #[test]
    fn derivative_basics() {
        let l = lay();
        let t = Poly::var(l, l.t());
        assert_eq!(t.pow(2).derivative(l.t()), t.scale(&qi(2)));
        let nz = norm_z_sq(l);
        assert_eq!(nz.derivative(l.z(0)), Poly::var(l, l.z(0)).scale(&qi(2)));
        let nv = norm_v_sq(l);
        let want = (&nv * &Poly::var(l, 0)).scale(&qi(4));
        assert_eq!(nv.pow(2).derivative(0), want);
    }

    #[test]
    fn canonical_text() {
        let l = lay();
        let p = &(&Poly::var(l, l.t()) + &norm_v_sq(l).scale(&q(1, 4))) - &Poly::var(l, l.z(0)).scale(&qi(2));
        assert_eq!(p.to_string(), "t + -2*z1 + 1/4*v2^2 + 1/4*v1^2");
        assert_eq!(Poly::zero(l).to_string(), "0");
        assert_eq!(Poly::constant(l, q(-3, 2)).to_string(), "-3/2");
    }

    #[test]
    fn substitution_composes() {
        let l = lay();
        let x = Poly::var(l, 0);
        let t = Poly::var(l, l.t());
        let p = &x.pow(2) + &t;
        // x -> x + t, t -> 2t
        let subs = vec![&x + &t, Poly::var(l, 1), Poly::var(l, 2), t.scale(&qi(2))];
        let r = p.substitute(&subs).unwrap();
        let want = &(&x + &t).pow(2) + &t.scale(&qi(2));
        assert_eq!(r, want);
    }

    #[test]
    fn fraction_rejects_divisible_numerator() {
        let l = lay();
        let t = Poly::var(l, l.t());
        assert_eq!(PolyFraction::new(t.clone(), 1), Err(Error::DivisibleByT));
        assert!(PolyFraction::new(Poly::zero(l), 1).is_err());
        assert!(PolyFraction::new(&t + &Poly::one(l), 1).is_ok());
        assert!(PolyFraction::new(t, 0).is_ok());
    }

    #[test]
    fn degree_split() {
        let l = lay();
        let t = Poly::var(l, l.t());
        let p = &(&t.pow(2) + &t) + &norm_v_sq(l);
        let parts = p.split_by_degree(l.t());
        assert_eq!(parts.iter().map(|(d, _)| *d).collect::<Vec<_>>(), vec![0, 1, 2]);
        assert_eq!(p.coefficient_in(l.t(), 0), norm_v_sq(l));
        assert!(!p.divisible_by(l.t()));
        assert!(p.shift(l.t(), 1).divisible_by(l.t()));
    }
}
