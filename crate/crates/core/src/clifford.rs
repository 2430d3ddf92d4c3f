//! Real representations of the Clifford algebra `Cl(0, m)` satisfying the
//! H-type identity `|J_z v| = |z| |v|`.
//!
//! Irreducible generators come from a fixed recipe so that every run produces
//! the same matrices:
//!
//! * `m = 1`: left multiplication by `i` on `C = R^2`;
//! * `m = 2, 3`: left multiplication by `i, j(, k)` on the quaternions `R^4`;
//! * `4 <= m <= 7`: left multiplication by `e_1..e_m` on the octonions `R^8`
//!   (Fano-plane table `e_a e_{a+1} = e_{a+3}`, indices mod 7);
//! * `m >= 8`: `Cl(0, m) = Cl(0, m-8) ⊗ Cl(0, 8)`. With `K_1..K_8` generating
//!   `Cl(0, 8)` on `R^16` and `ω = K_1⋯K_8`, the generators are `K_a ⊗ I` and
//!   `ω ⊗ J_α`.
//!
//! Multi-copy modules repeat the irreducible generators block-diagonally. For
//! `m ≡ 3 (mod 4)` only one chirality is ever produced.

use std::fmt;
use std::ops::Range;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::QMatrix;
use crate::rational::{qi, RatPair, Q};

/// Dimension of the irreducible real `Cl(0, m)`-module.
pub fn irreducible_dim(m: usize) -> usize {
    const TABLE: [usize; 8] = [1, 2, 4, 4, 8, 8, 8, 8];
    16usize.pow((m / 8) as u32) * TABLE[m % 8]
}

#[derive(Clone, Debug, PartialEq)]
pub struct CliffordModule {
    m: usize,
    n: usize,
    copies: usize,
    generators: Vec<QMatrix>,
}

const OCTONION_TRIPLES: [(usize, usize, usize); 7] =
    [(1, 2, 4), (2, 3, 5), (3, 4, 6), (4, 5, 7), (5, 6, 1), (6, 7, 2), (7, 1, 3)];
const QUATERNION_TRIPLES: [(usize, usize, usize); 1] = [(1, 2, 3)];

/// Product of two basis units of a Cayley-Dickson algebra given by its
/// quaternionic triples. Returns `(sign, index)`.
fn unit_product(triples: &[(usize, usize, usize)], a: usize, b: usize) -> (i64, usize) {
    match (a, b) {
        (0, b) => (1, b),
        (a, 0) => (1, a),
        (a, b) if a == b => (-1, 0),
        (a, b) => {
            for &(x, y, z) in triples {
                let cyc = [(x, y, z), (y, z, x), (z, x, y)];
                for (p, r, s) in cyc {
                    if (p, r) == (a, b) {
                        return (1, s);
                    }
                    if (r, p) == (a, b) {
                        return (-1, s);
                    }
                }
            }
            unreachable!("units {a} and {b} lie on no triple")
        }
    }
}

fn left_multiplication(dim: usize, triples: &[(usize, usize, usize)], a: usize) -> QMatrix {
    let mut mat = QMatrix::zeros(dim, dim);
    for b in 0..dim {
        let (sign, c) = unit_product(triples, a, b);
        mat.set(c, b, qi(sign));
    }
    mat
}

fn irreducible_generators(m: usize) -> Vec<QMatrix> {
    match m {
        0 => Vec::new(),
        1 => vec![left_multiplication(2, &[], 1)],
        2 | 3 => (1..=m).map(|a| left_multiplication(4, &QUATERNION_TRIPLES, a)).collect(),
        4..=7 => (1..=m).map(|a| left_multiplication(8, &OCTONION_TRIPLES, a)).collect(),
        _ => {
            let inner = irreducible_generators(m - 8);
            let d = irreducible_dim(m - 8);
            let k = cl08_generators();
            let omega = k.iter().skip(1).fold(k[0].clone(), |acc, g| acc.mul(g));
            let id = QMatrix::identity(d);
            let mut out: Vec<QMatrix> = k.iter().map(|g| g.kron(&id)).collect();
            out.extend(inner.iter().map(|j| omega.kron(j)));
            out
        }
    }
}

/// Generators of `Cl(0, 8)` on `O ⊕ O = R^16`:
/// `K_a = diag(L_a, -L_a)` for `a = 1..7` and `K_8 = [[0, -I], [I, 0]]`.
fn cl08_generators() -> Vec<QMatrix> {
    let mut out = Vec::with_capacity(8);
    for a in 1..=7 {
        let l = left_multiplication(8, &OCTONION_TRIPLES, a);
        out.push(QMatrix::block_diag(&[l.clone(), l.neg()]));
    }
    let rot = QMatrix::from_fn(2, 2, |i, j| match (i, j) {
        (0, 1) => qi(-1),
        (1, 0) => qi(1),
        _ => Q::zero(),
    });
    out.push(rot.kron(&QMatrix::identity(8)));
    out
}

/// Builds `copies` copies of the irreducible `Cl(0, m)`-module.
///
/// For `m = 0` there are no generators and `copies` is the dimension `n`.
pub fn build_clifford_module(m: usize, copies: usize) -> Result<CliffordModule> {
    if copies == 0 {
        return Err(Error::InvalidArgument("copies must be at least 1".into()));
    }
    let d = irreducible_dim(m);
    let irr = irreducible_generators(m);
    let generators = irr
        .iter()
        .map(|g| QMatrix::block_diag(&vec![g.clone(); copies]))
        .collect();
    Ok(CliffordModule { m, n: d * copies, copies, generators })
}

impl CliffordModule {
    /// Assembles a module from raw generators without checking the Clifford
    /// relations; use [`verify_clifford_relations`] to validate.
    pub fn from_parts(m: usize, copies: usize, generators: Vec<QMatrix>) -> Result<Self> {
        if copies == 0 {
            return Err(Error::InvalidArgument("copies must be at least 1".into()));
        }
        if generators.len() != m {
            return Err(Error::DimensionMismatch { expected: m, got: generators.len() });
        }
        let n = irreducible_dim(m) * copies;
        for g in &generators {
            if g.rows() != n || g.cols() != n {
                return Err(Error::DimensionMismatch { expected: n, got: g.rows() });
            }
        }
        Ok(CliffordModule { m, n, copies, generators })
    }

    /// Center dimension.
    pub fn m(&self) -> usize {
        self.m
    }

    /// Module dimension.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn irreducible_dim(&self) -> usize {
        irreducible_dim(self.m)
    }

    pub fn generators(&self) -> &[QMatrix] {
        &self.generators
    }

    pub fn generator(&self, alpha: usize) -> &QMatrix {
        &self.generators[alpha]
    }

    /// Replaces one generator; intended for mutation tests.
    pub fn with_generator(mut self, alpha: usize, g: QMatrix) -> Self {
        self.generators[alpha] = g;
        self
    }

    /// Index ranges of the irreducible summands.
    pub fn block_boundaries(&self) -> Vec<Range<usize>> {
        let d = self.irreducible_dim();
        (0..self.copies).map(|c| c * d..(c + 1) * d).collect()
    }

    /// `J_z = Σ z^α J_α`.
    pub fn j_of(&self, z: &[Q]) -> Result<QMatrix> {
        crate::error::check_dim(self.m, z.len())?;
        let mut out = QMatrix::zeros(self.n, self.n);
        for (za, g) in z.iter().zip(&self.generators) {
            if !za.is_zero() {
                out = out.add(&g.scale(za));
            }
        }
        Ok(out)
    }

    /// `true` when the subspace with orthogonal projector `p` is preserved by
    /// every generator, i.e. `(I - P) J_α P = 0`.
    pub fn preserves_subspace(&self, p: &QMatrix) -> bool {
        let comp = QMatrix::identity(self.n).sub(p);
        self.generators.iter().all(|g| comp.mul(&g.mul(p)).is_zero())
    }
}

/// One failed Clifford relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CliffordViolation {
    NotSkew { alpha: usize },
    /// `J_α J_α ≠ -I`.
    NotSquareMinusOne { alpha: usize },
    /// `J_α J_β + J_β J_α ≠ 0` for `α < β`.
    NotAnticommuting { alpha: usize, beta: usize },
    DimensionMismatch { expected: usize, got: usize },
}

fn sub(i: usize) -> String {
    const DIGITS: [char; 10] = ['₀', '₁', '₂', '₃', '₄', '₅', '₆', '₇', '₈', '₉'];
    (i + 1).to_string().chars().map(|c| DIGITS[c.to_digit(10).unwrap() as usize]).collect()
}

impl fmt::Display for CliffordViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            CliffordViolation::NotSkew { alpha } => write!(f, "J{} not skew-symmetric", sub(alpha)),
            CliffordViolation::NotSquareMinusOne { alpha } => {
                write!(f, "J{0}J{0} ≠ −I", sub(alpha))
            }
            CliffordViolation::NotAnticommuting { alpha, beta } => {
                write!(f, "J{0}J{1} + J{1}J{0} ≠ 0", sub(alpha), sub(beta))
            }
            CliffordViolation::DimensionMismatch { expected, got } => {
                write!(f, "n = {got} but copies·d(m) = {expected}")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordCheck {
    pub violations: Vec<CliffordViolation>,
}

impl CliffordCheck {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks skew-symmetry, `J_α² = -I` and anticommutation exactly.
pub fn verify_clifford_relations(module: &CliffordModule) -> CliffordCheck {
    let mut violations = Vec::new();
    let expected = module.copies * module.irreducible_dim();
    if expected != module.n {
        violations.push(CliffordViolation::DimensionMismatch { expected, got: module.n });
    }
    let minus_id = QMatrix::identity(module.n).neg();
    for (a, g) in module.generators.iter().enumerate() {
        if g.transpose() != g.neg() {
            violations.push(CliffordViolation::NotSkew { alpha: a });
        }
        if g.mul(g) != minus_id {
            violations.push(CliffordViolation::NotSquareMinusOne { alpha: a });
        }
    }
    for a in 0..module.m {
        for b in a + 1..module.m {
            let ga = &module.generators[a];
            let gb = &module.generators[b];
            if !ga.mul(gb).add(&gb.mul(ga)).is_zero() {
                violations.push(CliffordViolation::NotAnticommuting { alpha: a, beta: b });
            }
        }
    }
    CliffordCheck { violations }
}

/// Splits the module into the first `plus_copies` irreducible summands and
/// the rest. Indices are 0-based coordinate indices of `v`.
pub fn invariant_splitting(
    module: &CliffordModule,
    plus_copies: usize,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if plus_copies > module.copies {
        return Err(Error::InvalidArgument(format!(
            "plus_copies = {plus_copies} exceeds copies = {}",
            module.copies
        )));
    }
    let d = module.irreducible_dim();
    let plus: Vec<usize> = (0..plus_copies * d).collect();
    let minus: Vec<usize> = (plus_copies * d..module.n).collect();
    for g in &module.generators {
        let leaks = plus.iter().any(|&i| minus.iter().any(|&j| !g.get(i, j).is_zero()))
            || minus.iter().any(|&i| plus.iter().any(|&j| !g.get(i, j).is_zero()));
        if leaks {
            return Err(Error::InvalidArgument("block splitting is not generator-invariant".into()));
        }
    }
    Ok((plus, minus))
}

/// Coordinate projector onto the span of `indices`.
pub fn coordinate_projector(n: usize, indices: &[usize]) -> QMatrix {
    QMatrix::from_fn(n, n, |i, j| if i == j && indices.contains(&i) { Q::one() } else { Q::zero() })
}

#[derive(Serialize, Deserialize)]
struct ModuleJson {
    #[serde(default = "schema_one")]
    schema_version: u32,
    m: usize,
    n: usize,
    copies: usize,
    /// One flat row-major list of `n²` entries per generator.
    generators: Vec<Vec<RatPair>>,
}

fn schema_one() -> u32 {
    1
}

impl Serialize for CliffordModule {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let generators = self
            .generators
            .iter()
            .map(|g| {
                (0..self.n)
                    .flat_map(|i| (0..self.n).map(move |j| (i, j)))
                    .map(|(i, j)| RatPair(g.get(i, j).clone()))
                    .collect()
            })
            .collect();
        ModuleJson { schema_version: 1, m: self.m, n: self.n, copies: self.copies, generators }
            .serialize(s)
    }
}

impl<'de> Deserialize<'de> for CliffordModule {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = ModuleJson::deserialize(d)?;
        let n = raw.n;
        let mut gens = Vec::with_capacity(raw.generators.len());
        for flat in raw.generators {
            if flat.len() != n * n {
                return Err(D::Error::custom(format!(
                    "generator has {} entries, expected {}",
                    flat.len(),
                    n * n
                )));
            }
            gens.push(QMatrix::from_fn(n, n, |i, j| flat[i * n + j].0.clone()));
        }
        let module = CliffordModule::from_parts(raw.m, raw.copies, gens).map_err(D::Error::custom)?;
        if module.n != n {
            return Err(D::Error::custom(format!("n = {n} inconsistent with m and copies")));
        }
        Ok(module)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimension_table() {
        let want = [1, 2, 4, 4, 8, 8, 8, 8, 16, 32, 64, 64, 128];
        for (m, &d) in want.iter().enumerate() {
            assert_eq!(irreducible_dim(m), d, "m = {m}");
        }
    }

    #[test]
    fn trivial_center() {
        let md = build_clifford_module(0, 3).unwrap();
        assert_eq!(md.n(), 3);
        assert!(md.generators().is_empty());
        assert!(verify_clifford_relations(&md).is_valid());
    }

    #[test]
    fn complex_structure() {
        let md = build_clifford_module(1, 1).unwrap();
        let j = md.generator(0);
        assert_eq!(j.row(0), &[qi(0), qi(-1)]);
        assert_eq!(j.row(1), &[qi(1), qi(0)]);
        assert_eq!(j.mul(j), QMatrix::identity(2).neg());
        assert_eq!(j.transpose(), j.neg());
        assert_eq!(j.transpose().mul(j), QMatrix::identity(2));
    }

    #[test]
    fn quaternion_units_anticommute() {
        let md = build_clifford_module(3, 1).unwrap();
        assert_eq!(md.n(), 4);
        for a in 0..3 {
            for b in 0..3 {
                if a != b {
                    let (ga, gb) = (md.generator(a), md.generator(b));
                    assert_eq!(ga.mul(gb), gb.mul(ga).neg());
                }
            }
        }
        // i j = k
        assert_eq!(md.generator(0).mul(md.generator(1)), *md.generator(2));
    }

    #[test]
    fn every_small_m_is_valid() {
        for m in 0..=10 {
            let md = build_clifford_module(m, 1).unwrap();
            let check = verify_clifford_relations(&md);
            assert!(check.is_valid(), "m = {m}: {:?}", check.violations);
        }
        let md = build_clifford_module(3, 2).unwrap();
        assert!(verify_clifford_relations(&md).is_valid());
    }

    #[test]
    fn mutated_generators_are_reported() {
        let md = build_clifford_module(2, 1).unwrap();
        let bad = md.clone().with_generator(0, QMatrix::identity(4));
        let check = verify_clifford_relations(&bad);
        assert!(!check.is_valid());
        assert!(check.violations.iter().any(|v| v.to_string() == "J₁ not skew-symmetric"));

        let scaled = md.generator(1).scale(&qi(2));
        let bad = md.with_generator(1, scaled);
        let check = verify_clifford_relations(&bad);
        assert!(check.violations.iter().any(|v| v.to_string() == "J₂J₂ ≠ −I"));
        assert!(check.violations.contains(&CliffordViolation::NotSquareMinusOne { alpha: 1 }));
    }

    #[test]
    fn splitting_blocks() {
        let md = build_clifford_module(1, 2).unwrap();
        assert_eq!(invariant_splitting(&md, 2).unwrap(), ((0..4).collect(), vec![]));
        assert_eq!(invariant_splitting(&md, 1).unwrap(), (vec![0, 1], vec![2, 3]));
        let md = build_clifford_module(3, 2).unwrap();
        let (p, mi) = invariant_splitting(&md, 1).unwrap();
        assert_eq!(p, (0..4).collect::<Vec<_>>());
        assert_eq!(mi, (4..8).collect::<Vec<_>>());
        assert!(md.preserves_subspace(&coordinate_projector(8, &p)));
        assert!(md.preserves_subspace(&coordinate_projector(8, &mi)));
        assert!(invariant_splitting(&md, 3).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let md = build_clifford_module(3, 2).unwrap();
        let s = serde_json::to_string(&md).unwrap();
        let back: CliffordModule = serde_json::from_str(&s).unwrap();
        assert_eq!(back, md);
        let v: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(v["n"], 8);
        assert_eq!(v["generators"][0].as_array().unwrap().len(), 64);
    }
}
