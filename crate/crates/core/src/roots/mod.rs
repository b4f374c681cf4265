//! Root data and Weyl groups.
//!
//! Coordinates: weights in the fundamental-weight basis, roots in the
//! simple-root basis, coroots in the simple-coroot basis. The Cartan matrix
//! is stored as `cartan[i][j] = (alpha_i, alpha_j^vee)`, so row `i` gives the
//! fundamental-weight coordinates of `alpha_i`.

mod weyl;

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::kernel::{rat, ratio, Matrix, Rational};

pub use weyl::{expected_order, WeylElement, WeylGroup, DEFAULT_GROUP_BOUND};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootsError {
    #[error("unsupported root system {0}")]
    UnsupportedType(String),
    #[error("Weyl group of order {order} exceeds the bound {bound}")]
    GroupTooLarge { order: u64, bound: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

/// An irreducible Cartan type such as `B2` or `G2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CartanType {
    pub family: Family,
    pub rank: usize,
}

impl CartanType {
    pub fn new(family: Family, rank: usize) -> Result<Self, RootsError> {
        let ok = match family {
            Family::A => rank >= 1,
            Family::B | Family::C => rank >= 2,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        };
        if ok && rank <= 8 {
            Ok(CartanType { family, rank })
        } else {
            Err(RootsError::UnsupportedType(format!("{family:?}{rank}")))
        }
    }

    /// Every irreducible type of rank at most `max_rank`.
    pub fn all_up_to(max_rank: usize) -> Vec<CartanType> {
        let mut out = Vec::new();
        for family in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for rank in 1..=max_rank {
                if let Ok(t) = CartanType::new(family, rank) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.family, self.rank)
    }
}

impl FromStr for CartanType {
    type Err = RootsError;
    fn from_str(s: &str) -> Result<Self, RootsError> {
        let s = s.trim();
        let bad = || RootsError::UnsupportedType(s.to_string());
        let mut chars = s.chars();
        let family = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => Family::A,
            Some('B') => Family::B,
            Some('C') => Family::C,
            Some('D') => Family::D,
            Some('E') => Family::E,
            Some('F') => Family::F,
            Some('G') => Family::G,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        CartanType::new(family, rank)
    }
}

/// A positive root with its coroot and derived data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Root {
    /// Simple-root coordinates.
    pub coords: Vec<i64>,
    /// Simple-coroot coordinates of the coroot.
    pub coroot: Vec<i64>,
    pub long: bool,
}

impl Root {
    pub fn height(&self) -> i64 {
        self.coords.iter().sum()
    }

    /// `(2 rho, alpha^vee)`, which is twice the height of the coroot.
    pub fn two_rho_pairing(&self) -> i64 {
        2 * self.coroot.iter().sum::<i64>()
    }

    pub fn is_simple(&self) -> bool {
        self.height() == 1
    }

    pub fn simple_index(&self) -> Option<usize> {
        if self.is_simple() {
            self.coords.iter().position(|&c| c == 1)
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RootSystem {
    kind: CartanType,
    cartan: Vec<Vec<i64>>,
    /// `(alpha_i, alpha_i)` with short roots normalized to 1.
    simple_lengths: Vec<Rational>,
    positive: Vec<Root>,
    root_index: HashMap<Vec<i64>, usize>,
}

impl RootSystem {
    pub fn build(kind: CartanType) -> Result<Self, RootsError> {
        let (bourbaki, lengths) = bourbaki_data(kind)?;
        let r = kind.rank;
        let cartan: Vec<Vec<i64>> = (0..r)
            .map(|i| (0..r).map(|j| bourbaki[j][i]).collect())
            .collect();
        let simple_lengths: Vec<Rational> = lengths.iter().map(|&(n, d)| ratio(n, d)).collect();

        // closure of (root, coroot) pairs under simple reflections
        let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
        let mut pairs: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        let mut queue = VecDeque::new();
        for i in 0..r {
            let e = unit(r, i);
            seen.insert(e.clone());
            queue.push_back((e.clone(), e));
        }
        while let Some((beta, cobeta)) = queue.pop_front() {
            pairs.push((beta.clone(), cobeta.clone()));
            for i in 0..r {
                let p: i64 = (0..r).map(|j| beta[j] * cartan[j][i]).sum();
                let mut b2 = beta.clone();
                b2[i] -= p;
                if b2.iter().any(|&c| c < 0) || seen.contains(&b2) {
                    continue;
                }
                let q: i64 = (0..r).map(|j| cartan[i][j] * cobeta[j]).sum();
                let mut c2 = cobeta.clone();
                c2[i] -= q;
                seen.insert(b2.clone());
                queue.push_back((b2, c2));
            }
        }
        let mut positive: Vec<Root> = pairs
            .into_iter()
            .map(|(coords, coroot)| Root {
                coords,
                coroot,
                long: false,
            })
            .collect();
        positive.sort_by(|a, b| {
            a.height()
                .cmp(&b.height())
                .then_with(|| b.coords.cmp(&a.coords))
        });
        let mut rs = RootSystem {
            kind,
            cartan,
            simple_lengths,
            positive,
            root_index: HashMap::new(),
        };
        let lens: Vec<Rational> = rs.positive.iter().map(|a| rs.root_norm(&a.coords)).collect();
        let max = lens.iter().max().cloned().unwrap_or_else(Rational::zero);
        for (a, l) in rs.positive.iter_mut().zip(lens) {
            a.long = l == max;
        }
        rs.root_index = rs
            .positive
            .iter()
            .enumerate()
            .map(|(k, a)| (a.coords.clone(), k))
            .collect();
        Ok(rs)
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.kind.rank
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn root(&self, k: usize) -> &Root {
        &self.positive[k]
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.root_index.get(coords).copied()
    }

    /// Index of the simple root `alpha_i` among the positive roots.
    pub fn simple_root_index(&self, i: usize) -> usize {
        self.root_index[&unit(self.rank(), i)]
    }

    pub fn simple_lengths(&self) -> &[Rational] {
        &self.simple_lengths
    }

    pub fn is_simply_laced(&self) -> bool {
        self.positive.iter().all(|a| a.long)
    }

    pub fn simple_is_long(&self, i: usize) -> bool {
        self.positive[self.simple_root_index(i)].long
    }

    /// Weyl vector in fundamental-weight coordinates.
    pub fn rho(&self) -> Vec<i64> {
        vec![1; self.rank()]
    }

    /// Fundamental-weight coordinates of a root given in simple-root coordinates.
    pub fn root_to_weight(&self, coords: &[i64]) -> Vec<i64> {
        let r = self.rank();
        (0..r)
            .map(|k| (0..r).map(|i| coords[i] * self.cartan[i][k]).sum())
            .collect()
    }

    /// `(lambda, beta^vee)` for a weight in fundamental-weight coordinates and a
    /// coweight in simple-coroot coordinates.
    pub fn pair(weight: &[i64], coweight: &[i64]) -> i64 {
        weight.iter().zip(coweight).map(|(a, b)| a * b).sum()
    }

    /// `(alpha_i, alpha_j)` in the normalized invariant form.
    pub fn simple_form(&self, i: usize, j: usize) -> Rational {
        rat(self.cartan[i][j]) * &self.simple_lengths[j] / rat(2)
    }

    /// `(beta, beta)` for a root in simple-root coordinates.
    pub fn root_norm(&self, coords: &[i64]) -> Rational {
        let r = self.rank();
        let mut acc = Rational::zero();
        for i in 0..r {
            for j in 0..r {
                if coords[i] != 0 && coords[j] != 0 {
                    acc += rat(coords[i] * coords[j]) * self.simple_form(i, j);
                }
            }
        }
        acc
    }

    /// Gram matrix `(omega_i, omega_j)` of the invariant form.
    pub fn weight_gram(&self) -> Matrix<Rational> {
        let r = self.rank();
        let a = Matrix::from_rows(
            self.cartan
                .iter()
                .map(|row| row.iter().map(|&x| rat(x)).collect())
                .collect(),
        );
        let d = Matrix::diagonal(self.simple_lengths.iter().map(|l| l / rat(2)).collect());
        let g = a.inverse().expect("Cartan matrix is invertible").mul(&d);
        debug_assert_eq!(g.rows(), r);
        g
    }

    /// Gram matrix `(alpha_i^vee, alpha_j^vee)` of the dual form on the coroot lattice.
    pub fn coroot_gram(&self) -> Matrix<Rational> {
        let r = self.rank();
        Matrix::from_rows(
            (0..r)
                .map(|i| {
                    (0..r)
                        .map(|j| rat(2 * self.cartan[i][j]) / &self.simple_lengths[i])
                        .collect()
                })
                .collect(),
        )
    }

    /// `(beta^vee, beta^vee)` for a coroot in simple-coroot coordinates.
    pub fn coroot_norm(&self, coroot: &[i64]) -> Rational {
        let g = self.coroot_gram();
        let r = self.rank();
        let mut acc = Rational::zero();
        for i in 0..r {
            for j in 0..r {
                acc += rat(coroot[i] * coroot[j]) * &g[(i, j)];
            }
        }
        acc
    }

    /// Simple reflection on a weight.
    pub fn reflect_weight(&self, i: usize, weight: &[i64]) -> Vec<i64> {
        let li = weight[i];
        weight
            .iter()
            .zip(&self.cartan[i])
            .map(|(w, a)| w - li * a)
            .collect()
    }

    /// Simple reflection on simple-root coordinates.
    pub fn reflect_root(&self, i: usize, coords: &[i64]) -> Vec<i64> {
        let r = self.rank();
        let p: i64 = (0..r).map(|j| coords[j] * self.cartan[j][i]).sum();
        let mut out = coords.to_vec();
        out[i] -= p;
        out
    }

    /// Simple reflection on simple-coroot coordinates.
    pub fn reflect_coroot(&self, i: usize, coords: &[i64]) -> Vec<i64> {
        let r = self.rank();
        let p: i64 = (0..r).map(|j| self.cartan[i][j] * coords[j]).sum();
        let mut out = coords.to_vec();
        out[i] -= p;
        out
    }

    /// The subset `R_+'`: long roots, and roots supported only on short simple roots.
    pub fn r_plus_prime(&self) -> Vec<usize> {
        let r = self.rank();
        let long_simple: Vec<bool> = (0..r).map(|i| self.simple_is_long(i)).collect();
        self.positive
            .iter()
            .enumerate()
            .filter(|(_, a)| {
                a.long || a.coords.iter().zip(&long_simple).all(|(&c, &l)| !l || c == 0)
            })
            .map(|(k, _)| k)
            .collect()
    }

    pub fn in_r_plus_prime(&self, k: usize) -> bool {
        self.r_plus_prime().contains(&k)
    }

    pub fn root_label(&self, k: usize) -> String {
        label(&self.positive[k].coords, "a")
    }

    pub fn coroot_label(&self, k: usize) -> String {
        label(&self.positive[k].coroot, "a^")
    }

    pub fn to_data(&self, group: Option<&WeylGroup>) -> RootData {
        RootData {
            schema: ROOT_DATA_SCHEMA,
            kind: self.kind.to_string(),
            rank: self.rank(),
            cartan: self.cartan.clone(),
            positive_roots: self.positive.iter().map(|a| a.coords.clone()).collect(),
            positive_coroots: self.positive.iter().map(|a| a.coroot.clone()).collect(),
            long: self.positive.iter().map(|a| a.long).collect(),
            r_plus_prime: self.r_plus_prime(),
            weyl_order: group.map(|g| g.len()),
            reduced_words: group.map(|g| g.elements().iter().map(|w| w.word().to_vec()).collect()),
        }
    }
}

pub const ROOT_DATA_SCHEMA: u32 = 1;

/// Serializable snapshot of a root system and, optionally, its Weyl group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootData {
    pub schema: u32,
    pub kind: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_coroots: Vec<Vec<i64>>,
    pub long: Vec<bool>,
    pub r_plus_prime: Vec<usize>,
    pub weyl_order: Option<usize>,
    pub reduced_words: Option<Vec<Vec<u8>>>,
}

/// One row of the length-lemma table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthRow {
    pub root: Vec<i64>,
    pub reflection_length: usize,
    pub two_rho_pairing: i64,
    pub in_r_plus_prime: bool,
    pub equality: bool,
    pub ok: bool,
}

/// Checks `l(s_alpha) <= (2 rho, alpha^vee) - 1` with equality exactly on `R_+'`.
pub fn length_lemma_check(rs: &RootSystem, group: &WeylGroup) -> Vec<LengthRow> {
    let prime = rs.r_plus_prime();
    rs.positive_roots()
        .iter()
        .enumerate()
        .map(|(k, a)| {
            let len = group.element(group.reflection(k)).length();
            let bound = a.two_rho_pairing() - 1;
            let equality = len as i64 == bound;
            let in_prime = prime.contains(&k);
            LengthRow {
                root: a.coords.clone(),
                reflection_length: len,
                two_rho_pairing: a.two_rho_pairing(),
                in_r_plus_prime: in_prime,
                equality,
                ok: len as i64 <= bound && equality == in_prime,
            }
        })
        .collect()
}

fn unit(r: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

fn label(coords: &[i64], base: &str) -> String {
    let mut parts = Vec::new();
    for (i, &c) in coords.iter().enumerate() {
        match c {
            0 => {}
            1 => parts.push(format!("{base}{}", i + 1)),
            _ => parts.push(format!("{c}{base}{}", i + 1)),
        }
    }
    parts.join("+")
}

/// Bourbaki Cartan matrix `<alpha_i^vee, alpha_j>` and squared simple root
/// lengths as fractions, short roots of length 1.
#[allow(clippy::type_complexity)]
fn bourbaki_data(kind: CartanType) -> Result<(Vec<Vec<i64>>, Vec<(i64, i64)>), RootsError> {
    let n = kind.rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize, aij: i64, aji: i64| {
        a[i][j] = aij;
        a[j][i] = aji;
    };
    let mut lengths = vec![(1, 1); n];
    match kind.family {
        Family::A => {
            for i in 0..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::B => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -1, -2);
            lengths = vec![(2, 1); n];
            lengths[n - 1] = (1, 1);
        }
        Family::C => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 2, n - 1, -2, -1);
            lengths[n - 1] = (2, 1);
        }
        Family::D => {
            for i in 0..n - 2 {
                link(i, i + 1, -1, -1);
            }
            link(n - 3, n - 1, -1, -1);
        }
        Family::E => {
            link(0, 2, -1, -1);
            link(1, 3, -1, -1);
            for i in 2..n - 1 {
                link(i, i + 1, -1, -1);
            }
        }
        Family::F => {
            link(0, 1, -1, -1);
            link(1, 2, -1, -2);
            link(2, 3, -1, -1);
            lengths = vec![(2, 1), (2, 1), (1, 1), (1, 1)];
        }
        Family::G => {
            link(0, 1, -3, -1);
            lengths = vec![(1, 1), (3, 1)];
        }
    }
    Ok((a, lengths))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s.parse().unwrap()).unwrap()
    }

    #[test]
    fn root_counts() {
        for (t, n) in [
            ("A1", 1),
            ("A3", 6),
            ("B2", 4),
            ("B3", 9),
            ("C3", 9),
            ("D4", 12),
            ("E6", 36),
            ("E8", 120),
            ("F4", 24),
            ("G2", 6),
        ] {
            assert_eq!(rs(t).positive_roots().len(), n, "{t}");
        }
    }

    #[test]
    fn b2_roots_and_prime() {
        let b2 = rs("B2");
        let coords: Vec<_> = b2.positive_roots().iter().map(|a| a.coords.clone()).collect();
        assert_eq!(coords, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, 2]]);
        let prime: Vec<_> = b2.r_plus_prime().iter().map(|&k| b2.root(k).coords.clone()).collect();
        assert_eq!(prime, vec![vec![1, 0], vec![0, 1], vec![1, 2]]);
    }

    #[test]
    fn g2_prime_has_four_roots() {
        let g2 = rs("G2");
        let prime = g2.r_plus_prime();
        assert_eq!(prime.len(), 4);
        assert!(prime.contains(&g2.simple_root_index(0)));
        assert!(!g2.simple_is_long(0));
    }

    #[test]
    fn short_roots_have_unit_norm() {
        for t in ["B3", "C3", "F4", "G2", "A2"] {
            let r = rs(t);
            let min = r.positive_roots().iter().map(|a| r.root_norm(&a.coords)).min().unwrap();
            assert_eq!(min, rat(1), "{t}");
        }
    }

    #[test]
    fn sum_of_positive_roots_is_two_rho() {
        for t in ["A3", "B3", "C4", "D4", "F4", "G2"] {
            let r = rs(t);
            let mut sum = vec![0; r.rank()];
            for a in r.positive_roots() {
                for (s, w) in sum.iter_mut().zip(r.root_to_weight(&a.coords)) {
                    *s += w;
                }
            }
            assert_eq!(sum, vec![2; r.rank()], "{t}");
        }
    }

    #[test]
    fn length_lemma_all_small_types() {
        let mut types = CartanType::all_up_to(4);
        types.retain(|t| t.family != Family::E);
        for t in types {
            let r = RootSystem::build(t).unwrap();
            let g = WeylGroup::new(&r).unwrap();
            let rows = length_lemma_check(&r, &g);
            assert!(rows.iter().all(|row| row.ok), "{t}");
        }
    }

    #[test]
    fn b2_short_root_is_strict() {
        let r = rs("B2");
        let g = WeylGroup::new(&r).unwrap();
        let row = &length_lemma_check(&r, &g)[2];
        assert_eq!(row.root, vec![1, 1]);
        assert_eq!((row.reflection_length, row.two_rho_pairing - 1), (3, 5));
        assert!(!row.in_r_plus_prime);
    }

    #[test]
    fn coroot_norm_is_dual() {
        for t in ["B2", "G2", "C3"] {
            let r = rs(t);
            for a in r.positive_roots() {
                assert_eq!(r.coroot_norm(&a.coroot), rat(4) / r.root_norm(&a.coords), "{t}");
            }
        }
    }
}
