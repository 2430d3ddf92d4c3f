//! H-type algebra `n = v ⊕ z` and its solvable extension `s = v ⊕ z ⊕ a`.
//!
//! The nilpotent bracket is dual to the Clifford action:
//! `⟨[v1, v2], f_α⟩ = ⟨J_α v1, v2⟩`. Structure constants
//! `c[i][j][α] = ⟨J_α e_i, e_j⟩` are computed once per signature.
//!
//! The bracket on `s` follows
//! `[(v1,z1,τ1), (v2,z2,τ2)] = (τ1/2 v2 − τ2/2 v1, [v2,v1] + τ1 z2 − τ2 z1, 0)`.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::clifford::{build_clifford_module, CliffordModule};
use crate::error::{check_dim, Result};
use crate::rational::{qi, to_f64, RatPair, Q};
use crate::scalar::Scalar;

/// One nonzero structure constant `c[i][j][α]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstant {
    pub i: usize,
    pub j: usize,
    pub alpha: usize,
    pub value: Q,
    pub approx: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SpaceSignature {
    module: CliffordModule,
    n: usize,
    m: usize,
    /// Dense table indexed by `(i * n + j) * m + α`.
    table: Vec<Q>,
    /// Nonzero constants grouped by their first index `i`.
    by_first: Vec<Vec<StructureConstant>>,
}

/// Element `(v, z, τ)` of the solvable algebra.
#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraElement {
    pub v: Vec<Q>,
    pub z: Vec<Q>,
    pub tau: Q,
}

impl AlgebraElement {
    pub fn zero(n: usize, m: usize) -> Self {
        AlgebraElement { v: vec![Q::zero(); n], z: vec![Q::zero(); m], tau: Q::zero() }
    }

    /// Basis vector number `k` in the order `e_1..e_n, f_1..f_m, a`.
    pub fn basis(n: usize, m: usize, k: usize) -> Self {
        let mut x = Self::zero(n, m);
        if k < n {
            x.v[k] = qi(1);
        } else if k < n + m {
            x.z[k - n] = qi(1);
        } else {
            x.tau = qi(1);
        }
        x
    }

    pub fn is_zero(&self) -> bool {
        self.v.iter().all(Zero::is_zero) && self.z.iter().all(Zero::is_zero) && self.tau.is_zero()
    }

    fn add(&self, o: &Self) -> Self {
        AlgebraElement {
            v: self.v.iter().zip(&o.v).map(|(a, b)| a + b).collect(),
            z: self.z.iter().zip(&o.z).map(|(a, b)| a + b).collect(),
            tau: &self.tau + &o.tau,
        }
    }
}

/// Name of basis vector `k` of `s`: `e1..en`, `f1..fm`, `a`.
pub fn basis_label(n: usize, m: usize, k: usize) -> String {
    if k < n {
        format!("e{}", k + 1)
    } else if k < n + m {
        format!("f{}", k - n + 1)
    } else {
        "a".to_string()
    }
}

/// `(label, m, copies)` of the spaces used throughout the test suites:
/// ℝH⁴, ℂH², ℂH³, ℍH², and the non-symmetric `m = 2, n = 8` and
/// `m = 5, n = 8` spaces.
pub const REFERENCE_SPACES: [(&str, usize, usize); 6] =
    [("RH4", 0, 3), ("CH2", 1, 1), ("CH3", 1, 2), ("HH2", 3, 1), ("DR_m2_n8", 2, 2), ("DR_m5_n8", 5, 1)];

impl SpaceSignature {
    pub fn new(module: CliffordModule) -> Self {
        let n = module.n();
        let m = module.m();
        let mut table = vec![Q::zero(); n * n * m];
        for (alpha, g) in module.generators().iter().enumerate() {
            for i in 0..n {
                for j in 0..n {
                    // ⟨J_α e_i, e_j⟩ is the (j, i) entry of J_α.
                    table[(i * n + j) * m + alpha] = g.get(j, i).clone();
                }
            }
        }
        let mut sig = SpaceSignature { module, n, m, table, by_first: Vec::new() };
        sig.rebuild_sparse();
        sig
    }

    /// Signature of the standard module with `copies` irreducible summands.
    pub fn build(m: usize, copies: usize) -> Result<Self> {
        Ok(SpaceSignature::new(build_clifford_module(m, copies)?))
    }

    fn rebuild_sparse(&mut self) {
        let (n, m) = (self.n, self.m);
        self.by_first = (0..n)
            .map(|i| {
                let mut row = Vec::new();
                for j in 0..n {
                    for alpha in 0..m {
                        let value = &self.table[(i * n + j) * m + alpha];
                        if !value.is_zero() {
                            row.push(StructureConstant {
                                i,
                                j,
                                alpha,
                                value: value.clone(),
                                approx: to_f64(value),
                            });
                        }
                    }
                }
                row
            })
            .collect();
    }

    /// Copy of this signature with `c[i][j][α]` shifted by `delta`; the
    /// antisymmetric partner `c[j][i][α]` is left alone.
    pub fn with_perturbed_constant(&self, i: usize, j: usize, alpha: usize, delta: &Q) -> Self {
        let mut out = self.clone();
        out.table[(i * self.n + j) * self.m + alpha] += delta;
        out.rebuild_sparse();
        out
    }

    pub fn module(&self) -> &CliffordModule {
        &self.module
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Dimension of `s`.
    pub fn dim(&self) -> usize {
        self.n + self.m + 1
    }

    pub fn constant(&self, i: usize, j: usize, alpha: usize) -> &Q {
        &self.table[(i * self.n + j) * self.m + alpha]
    }

    /// Nonzero constants `c[i][·][·]`.
    pub fn constants_from(&self, i: usize) -> &[StructureConstant] {
        &self.by_first[i]
    }

    pub fn constants(&self) -> impl Iterator<Item = &StructureConstant> {
        self.by_first.iter().flatten()
    }

    /// `[v1, v2]` in `z`, with components `⟨J_α v1, v2⟩`.
    pub fn bracket_vv<S: Scalar>(&self, v1: &[S], v2: &[S]) -> Result<Vec<S>> {
        check_dim(self.n, v1.len())?;
        check_dim(self.n, v2.len())?;
        Ok(self.bracket_unchecked(v1, v2))
    }

    pub(crate) fn bracket_unchecked<S: Scalar>(&self, v1: &[S], v2: &[S]) -> Vec<S> {
        let mut z = vec![S::from_i64(0); self.m];
        for c in self.constants() {
            let w: S = constant_as(c);
            z[c.alpha] = z[c.alpha].clone() + w * v1[c.i].clone() * v2[c.j].clone();
        }
        z
    }

    /// `[e_i, v]` in `z`.
    pub fn bracket_basis<S: Scalar>(&self, i: usize, v: &[S]) -> Vec<S> {
        let mut z = vec![S::from_i64(0); self.m];
        for c in &self.by_first[i] {
            let w: S = constant_as(c);
            z[c.alpha] = z[c.alpha].clone() + w * v[c.j].clone();
        }
        z
    }

    /// Bracket of `s`, computed from the stored table (so that perturbed
    /// tables produce perturbed brackets).
    pub fn bracket_solvable(&self, x1: &AlgebraElement, x2: &AlgebraElement) -> Result<AlgebraElement> {
        for x in [x1, x2] {
            check_dim(self.n, x.v.len())?;
            check_dim(self.m, x.z.len())?;
        }
        let half = Q::new(1.into(), 2.into());
        let v = x2
            .v
            .iter()
            .zip(&x1.v)
            .map(|(a, b)| &half * &x1.tau * a - &half * &x2.tau * b)
            .collect();
        let vv = self.bracket_unchecked(&x2.v, &x1.v);
        let z = (0..self.m)
            .map(|a| &vv[a] + &x1.tau * &x2.z[a] - &x2.tau * &x1.z[a])
            .collect();
        Ok(AlgebraElement { v, z, tau: Q::zero() })
    }

    /// Checks the Jacobi identity on all basis triples of `s`, antisymmetry of
    /// the table and centrality of `z` in `n`.
    pub fn verify_lie_axioms(&self) -> LieCheck {
        let (n, m) = (self.n, self.m);
        let dim = self.dim();
        let basis: Vec<AlgebraElement> = (0..dim).map(|k| AlgebraElement::basis(n, m, k)).collect();
        let br = |a: &AlgebraElement, b: &AlgebraElement| self.bracket_solvable(a, b).expect("basis dims");
        let mut violations = Vec::new();

        for i in 0..n {
            for j in i..n {
                for alpha in 0..m {
                    let s = self.constant(i, j, alpha) + self.constant(j, i, alpha);
                    if !s.is_zero() {
                        violations.push(LieViolation::NotAntisymmetric { i, j, alpha });
                    }
                }
            }
        }
        for k in 0..n + m {
            for alpha in 0..m {
                if !br(&basis[k], &basis[n + alpha]).is_zero() {
                    violations.push(LieViolation::NotCentral { element: k, alpha });
                }
            }
        }
        for a in 0..dim {
            for b in a + 1..dim {
                let ab = br(&basis[a], &basis[b]);
                for c in b + 1..dim {
                    let bc = br(&basis[b], &basis[c]);
                    let ca = br(&basis[c], &basis[a]);
                    let sum = br(&basis[a], &bc).add(&br(&basis[b], &ca)).add(&br(&basis[c], &ab));
                    if !sum.is_zero() {
                        violations.push(LieViolation::Jacobi {
                            triple: [a, b, c],
                            labels: [a, b, c].map(|k| basis_label(n, m, k)),
                        });
                    }
                }
            }
        }
        LieCheck { violations }
    }
}

fn constant_as<S: Scalar>(c: &StructureConstant) -> S {
    S::from_cached(&c.value, c.approx)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LieViolation {
    Jacobi { triple: [usize; 3], labels: [String; 3] },
    NotAntisymmetric { i: usize, j: usize, alpha: usize },
    NotCentral { element: usize, alpha: usize },
}

impl fmt::Display for LieViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LieViolation::Jacobi { labels, .. } => {
                write!(f, "Jacobi fails on ({}, {}, {})", labels[0], labels[1], labels[2])
            }
            LieViolation::NotAntisymmetric { i, j, alpha } => {
                write!(f, "[e{}, e{}] + [e{}, e{}] has nonzero f{} component", i + 1, j + 1, j + 1, i + 1, alpha + 1)
            }
            LieViolation::NotCentral { element, alpha } => {
                write!(f, "basis element {} does not commute with f{}", element + 1, alpha + 1)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieCheck {
    pub violations: Vec<LieViolation>,
}

impl LieCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Serialize, Deserialize)]
struct SignatureJson {
    #[serde(default)]
    schema_version: u32,
    module: CliffordModule,
    /// `[i, j, α, [num, den]]`; recomputed from `module` on load.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    structure_constants: Option<Vec<(usize, usize, usize, RatPair)>>,
}

impl Serialize for SpaceSignature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let constants = self.constants().map(|c| (c.i, c.j, c.alpha, RatPair(c.value.clone()))).collect();
        SignatureJson { schema_version: 1, module: self.module.clone(), structure_constants: Some(constants) }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SpaceSignature {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = SignatureJson::deserialize(d)?;
        Ok(SpaceSignature::new(raw.module))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::build_clifford_module;

    fn sig(m: usize, copies: usize) -> SpaceSignature {
        SpaceSignature::new(build_clifford_module(m, copies).unwrap())
    }

    #[test]
    fn complex_bracket() {
        let s = sig(1, 1);
        let z = s.bracket_vv(&[qi(1), qi(0)], &[qi(0), qi(1)]).unwrap();
        assert_eq!(z, vec![qi(1)]);
        let z = s.bracket_vv(&[qi(3), qi(5)], &[qi(3), qi(5)]).unwrap();
        assert_eq!(z, vec![qi(0)]);
    }

    #[test]
    fn trivial_center_bracket() {
        let s = sig(0, 3);
        let v = vec![qi(1), qi(2), qi(3)];
        assert!(s.bracket_vv(&v, &[qi(0), qi(1), qi(0)]).unwrap().is_empty());
        assert!(s.verify_lie_axioms().is_valid());
        let a = AlgebraElement::basis(3, 0, 3);
        let x = AlgebraElement { v: v.clone(), z: vec![], tau: qi(0) };
        let r = s.bracket_solvable(&a, &x).unwrap();
        assert_eq!(r.v, v.iter().map(|x| x / qi(2)).collect::<Vec<_>>());
    }

    #[test]
    fn solvable_bracket_signs() {
        let s = sig(1, 1);
        let e1 = AlgebraElement::basis(2, 1, 0);
        let e2 = AlgebraElement::basis(2, 1, 1);
        let r = s.bracket_solvable(&e1, &e2).unwrap();
        // [v2, v1] = [e2, e1] = -f1
        assert_eq!(r.z, vec![qi(-1)]);
        assert!(s.bracket_solvable(&e1, &e1).unwrap().is_zero());
    }

    #[test]
    fn lie_axioms_hold() {
        for (m, c) in [(1, 1), (1, 2), (2, 1), (3, 1), (5, 1)] {
            let check = sig(m, c).verify_lie_axioms();
            assert!(check.is_valid(), "m={m}: {:?}", check.violations);
        }
    }

    #[test]
    fn perturbation_breaks_jacobi() {
        let s = sig(1, 1).with_perturbed_constant(0, 1, 0, &qi(1));
        let check = s.verify_lie_axioms();
        assert!(check
            .violations
            .iter()
            .any(|v| matches!(v, LieViolation::Jacobi { labels, .. } if labels == &["e1", "e2", "a"])));
    }

    #[test]
    fn json_recomputes_constants() {
        let s = sig(3, 1);
        let text = serde_json::to_string(&s).unwrap();
        let back: SpaceSignature = serde_json::from_str(&text).unwrap();
        assert_eq!(back, s);
    }
}
