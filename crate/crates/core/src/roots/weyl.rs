use std::collections::HashMap;

use super::{RootSystem, RootsError};

pub const DEFAULT_GROUP_BOUND: u64 = 1_000_000;

/// An element of the Weyl group, stored with the lexicographically first
/// reduced word found by breadth-first search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeylElement {
    word: Vec<u8>,
    /// Action on fundamental-weight coordinates, row-major `r x r`.
    matrix: Vec<i64>,
}

impl WeylElement {
    /// Reduced word `[i1, ..., ik]` meaning `s_i1 s_i2 ... s_ik`.
    pub fn word(&self) -> &[u8] {
        &self.word
    }

    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn matrix(&self) -> &[i64] {
        &self.matrix
    }

    pub fn act_weight(&self, weight: &[i64]) -> Vec<i64> {
        let r = weight.len();
        (0..r)
            .map(|i| (0..r).map(|j| self.matrix[i * r + j] * weight[j]).sum())
            .collect()
    }
}

/// Complete enumeration of `W`, identity first, in order of length.
#[derive(Debug, Clone)]
pub struct WeylGroup {
    rs: RootSystem,
    elements: Vec<WeylElement>,
    /// Keyed by the image of `rho`, which has trivial stabilizer.
    index: HashMap<Vec<i64>, usize>,
    longest: usize,
    reflections: Vec<usize>,
}

/// Order of `W` from the classical formulas.
pub fn expected_order(rs: &RootSystem) -> u64 {
    use super::Family::*;
    let n = rs.rank() as u64;
    let fact = |k: u64| (1..=k).product::<u64>();
    match rs.kind().family {
        A => fact(n + 1),
        B | C => (1u64 << n) * fact(n),
        D => (1u64 << (n - 1)) * fact(n),
        E => match n {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
        F => 1152,
        G => 12,
    }
}

impl WeylGroup {
    pub fn new(rs: &RootSystem) -> Result<Self, RootsError> {
        Self::with_bound(rs, DEFAULT_GROUP_BOUND)
    }

    pub fn with_bound(rs: &RootSystem, bound: u64) -> Result<Self, RootsError> {
        let order = expected_order(rs);
        if order > bound {
            return Err(RootsError::GroupTooLarge { order, bound });
        }
        let r = rs.rank();
        let mut identity = vec![0i64; r * r];
        for i in 0..r {
            identity[i * r + i] = 1;
        }
        let mut elements = vec![WeylElement {
            word: Vec::new(),
            matrix: identity,
        }];
        let mut index = HashMap::new();
        index.insert(rs.rho(), 0);
        let mut head = 0;
        while head < elements.len() {
            for i in 0..r {
                let w = &elements[head];
                // s_i w: reflect every column of the matrix
                let mut m = w.matrix.clone();
                for col in 0..r {
                    let li = m[i * r + col];
                    if li != 0 {
                        for row in 0..r {
                            m[row * r + col] -= li * rs.cartan[i][row];
                        }
                    }
                }
                let rho: Vec<i64> = (0..r).map(|row| (0..r).map(|c| m[row * r + c]).sum()).collect();
                if index.contains_key(&rho) {
                    continue;
                }
                let mut word = Vec::with_capacity(w.word.len() + 1);
                word.push(i as u8);
                word.extend_from_slice(&w.word);
                index.insert(rho, elements.len());
                elements.push(WeylElement { word, matrix: m });
            }
            head += 1;
        }
        debug_assert_eq!(elements.len() as u64, order);
        let longest = elements.len() - 1;
        let mut g = WeylGroup {
            rs: rs.clone(),
            elements,
            index,
            longest,
            reflections: Vec::new(),
        };
        g.reflections = (0..rs.positive_roots().len())
            .map(|k| {
                let a = rs.root(k);
                let ht = a.coroot.iter().sum::<i64>();
                let aw = rs.root_to_weight(&a.coords);
                let key: Vec<i64> = aw.iter().map(|x| 1 - ht * x).collect();
                g.index[&key]
            })
            .collect();
        Ok(g)
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn elements(&self) -> &[WeylElement] {
        &self.elements
    }

    pub fn element(&self, k: usize) -> &WeylElement {
        &self.elements[k]
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    /// Index of `s_i`.
    pub fn simple(&self, i: usize) -> usize {
        i + 1
    }

    fn key_of(&self, w: usize) -> Vec<i64> {
        self.elements[w].act_weight(&self.rs.rho())
    }

    pub fn index_of_rho_image(&self, image: &[i64]) -> Option<usize> {
        self.index.get(image).copied()
    }

    pub fn multiply(&self, u: usize, v: usize) -> usize {
        let key = self.elements[u].act_weight(&self.key_of(v));
        self.index[&key]
    }

    pub fn inverse(&self, w: usize) -> usize {
        let mut word = self.elements[w].word.clone();
        word.reverse();
        self.from_word(&word)
    }

    /// Element represented by an arbitrary (not necessarily reduced) word.
    pub fn from_word(&self, word: &[u8]) -> usize {
        let mut rho = self.rs.rho();
        for &i in word.iter().rev() {
            rho = self.rs.reflect_weight(i as usize, &rho);
        }
        self.index[&rho]
    }

    /// Index of the reflection `s_alpha` for the positive root with index `k`.
    pub fn reflection(&self, k: usize) -> usize {
        self.reflections[k]
    }

    pub fn act_weight(&self, w: usize, weight: &[i64]) -> Vec<i64> {
        self.elements[w].act_weight(weight)
    }

    /// Action on simple-root coordinates.
    pub fn act_root(&self, w: usize, coords: &[i64]) -> Vec<i64> {
        let mut v = coords.to_vec();
        for &i in self.elements[w].word.iter().rev() {
            v = self.rs.reflect_root(i as usize, &v);
        }
        v
    }

    /// Action on simple-coroot coordinates.
    pub fn act_coroot(&self, w: usize, coords: &[i64]) -> Vec<i64> {
        let mut v = coords.to_vec();
        for &i in self.elements[w].word.iter().rev() {
            v = self.rs.reflect_coroot(i as usize, &v);
        }
        v
    }

    /// Number of positive roots sent to negative roots.
    pub fn inversions(&self, w: usize) -> usize {
        self.rs
            .positive_roots()
            .iter()
            .filter(|a| self.act_root(w, &a.coords).iter().any(|&c| c < 0))
            .count()
    }

    /// `l(u v) = l(u) + l(v)`.
    pub fn lengths_add(&self, u: usize, v: usize) -> bool {
        let uv = self.multiply(u, v);
        self.elements[uv].length() == self.elements[u].length() + self.elements[v].length()
    }

    /// Every reduced word of `w`, in lexicographic order.
    pub fn reduced_words(&self, w: usize) -> Vec<Vec<u8>> {
        let len = self.elements[w].length();
        if len == 0 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for i in 0..self.rs.rank() {
            let si = self.simple(i);
            let rest = self.multiply(si, w);
            if self.elements[rest].length() + 1 == len {
                for mut tail in self.reduced_words(rest) {
                    tail.insert(0, i as u8);
                    out.push(tail);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::Rational;
    use crate::roots::CartanType;

    fn group(s: &str) -> WeylGroup {
        let rs = RootSystem::build(s.parse::<CartanType>().unwrap()).unwrap();
        WeylGroup::new(&rs).unwrap()
    }

    #[test]
    fn orders() {
        for (t, n) in [("A1", 2), ("A2", 6), ("B2", 8), ("G2", 12), ("F4", 1152), ("D4", 192)] {
            assert_eq!(group(t).len(), n, "{t}");
        }
    }

    #[test]
    fn a2_length_profile() {
        let g = group("A2");
        let lens: Vec<usize> = g.elements().iter().map(|w| w.length()).collect();
        assert_eq!(lens, vec![0, 1, 1, 2, 2, 3]);
    }

    #[test]
    fn e8_is_too_large() {
        let rs = RootSystem::build("E8".parse().unwrap()).unwrap();
        assert!(matches!(
            WeylGroup::new(&rs),
            Err(RootsError::GroupTooLarge { order: 696_729_600, .. })
        ));
    }

    #[test]
    fn length_is_inversion_count() {
        for t in ["A3", "B3", "G2"] {
            let g = group(t);
            for w in 0..g.len() {
                assert_eq!(g.inversions(w), g.element(w).length());
            }
        }
    }

    #[test]
    fn right_multiplication_changes_length_by_one() {
        let g = group("B3");
        for w in 0..g.len() {
            for i in 0..3 {
                let ws = g.multiply(w, g.simple(i));
                let (a, b) = (g.element(w).length() as i64, g.element(ws).length() as i64);
                assert_eq!((a - b).abs(), 1);
            }
        }
    }

    #[test]
    fn reflections_match_formula() {
        for t in ["B2", "G2", "C3"] {
            let g = group(t);
            let rs = g.root_system();
            for (k, a) in rs.positive_roots().iter().enumerate() {
                let s = g.reflection(k);
                let aw = rs.root_to_weight(&a.coords);
                for i in 0..rs.rank() {
                    let mut lam = vec![0; rs.rank()];
                    lam[i] = 1;
                    let p = RootSystem::pair(&lam, &a.coroot);
                    let expect: Vec<i64> = lam.iter().zip(&aw).map(|(l, x)| l - p * x).collect();
                    assert_eq!(g.act_weight(s, &lam), expect, "{t}");
                }
            }
        }
    }

    #[test]
    fn matrices_preserve_form() {
        for t in ["B2", "G2", "F4"] {
            let g = group(t);
            let gram = g.root_system().weight_gram();
            let r = g.root_system().rank();
            for w in g.elements() {
                let m = crate::kernel::Matrix::from_rows(
                    (0..r)
                        .map(|i| (0..r).map(|j| Rational::from_integer(w.matrix()[i * r + j].into())).collect())
                        .collect(),
                );
                assert_eq!(m.transpose().mul(&gram).mul(&m), gram, "{t}");
            }
        }
    }
}
