//! Monodromy of a covering over a small neighbourhood of a cusp of the
//! branch curve. The local fundamental group is the braid group on three
//! strands, generated by two meridians `a`, `b` with `aba = bab`. For a
//! covering with reduced ramification both meridians act as involutions.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;

use thiserror::Error;

pub const DEFAULT_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MonodromyError {
    #[error("degree {degree} exceeds the enumeration cap {cap}")]
    DegreeTooLarge { degree: usize, cap: usize },
    #[error("degree must be at least 2, got {0}")]
    DegreeTooSmall(usize),
    #[error("not a permutation: {0:?}")]
    NotBijective(Vec<usize>),
}

/// A permutation of `{0, .., n-1}`, displayed 1-based in cycle notation.
/// Products compose right to left: `(p * q)(i) = p(q(i))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, MonodromyError> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            if i >= images.len() || seen[i] {
                return Err(MonodromyError::NotBijective(images));
            }
            seen[i] = true;
        }
        Ok(Permutation(images))
    }

    pub fn identity(n: usize) -> Self {
        Permutation((0..n).collect())
    }

    /// Product of disjoint 1-based cycles.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Result<Self, MonodromyError> {
        let mut images: Vec<usize> = (0..n).collect();
        for cycle in cycles {
            for (i, &from) in cycle.iter().enumerate() {
                let to = cycle[(i + 1) % cycle.len()];
                if from == 0 || to == 0 || from > n || to > n {
                    return Err(MonodromyError::NotBijective(images));
                }
                images[from - 1] = to - 1;
            }
        }
        Self::new(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Permutation(inv)
    }

    /// `g p g^-1`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn is_involution(&self) -> bool {
        !self.is_identity() && self.compose(self).is_identity()
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            out.push(cycle);
        }
        out
    }

    /// Cycle lengths in descending order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut t: Vec<usize> = self.cycles().iter().map(Vec::len).collect();
        t.sort_unstable_by(|a, b| b.cmp(a));
        t
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles: Vec<_> = self.cycles().into_iter().filter(|c| c.len() > 1).collect();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Non-identity involutions of degree `n`, in lexicographic order of images.
pub fn involutions(n: usize) -> Vec<Permutation> {
    fn extend(images: &mut Vec<Option<usize>>, out: &mut Vec<Permutation>) {
        match images.iter().position(Option::is_none) {
            None => {
                let p = Permutation(images.iter().map(|i| i.unwrap()).collect());
                if !p.is_identity() {
                    out.push(p);
                }
            }
            Some(i) => {
                images[i] = Some(i);
                extend(images, out);
                for j in i + 1..images.len() {
                    if images[j].is_none() {
                        images[i] = Some(j);
                        images[j] = Some(i);
                        extend(images, out);
                        images[j] = None;
                    }
                }
                images[i] = None;
            }
        }
    }
    let mut out = Vec::new();
    extend(&mut vec![None; n], &mut out);
    out.sort();
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BraidPair {
    pub a: Permutation,
    pub b: Permutation,
}

impl BraidPair {
    pub fn satisfies_braid_relation(&self) -> bool {
        let (a, b) = (&self.a, &self.b);
        a.compose(b).compose(a) == b.compose(a).compose(b)
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.a.degree();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(i) = queue.pop_front() {
            for j in [self.a.apply(i), self.b.apply(i)] {
                if !seen[j] {
                    seen[j] = true;
                    count += 1;
                    queue.push_back(j);
                }
            }
        }
        count == n
    }

    pub fn conjugate_by(&self, g: &Permutation) -> BraidPair {
        BraidPair {
            a: self.a.conjugate_by(g),
            b: self.b.conjugate_by(g),
        }
    }

    /// Canonical representative of the simultaneous conjugacy class of a
    /// transitive pair: relabel points in breadth-first order from each
    /// starting point and keep the smallest result. Panics on an
    /// intransitive pair.
    pub fn canonical(&self) -> BraidPair {
        assert!(
            self.is_transitive(),
            "canonical form is defined for transitive pairs only"
        );
        let n = self.a.degree();
        (0..n)
            .map(|start| {
                let mut label = vec![usize::MAX; n];
                let mut order = Vec::with_capacity(n);
                label[start] = 0;
                order.push(start);
                let mut head = 0;
                while head < order.len() {
                    let i = order[head];
                    head += 1;
                    for j in [self.a.apply(i), self.b.apply(i)] {
                        if label[j] == usize::MAX {
                            label[j] = order.len();
                            order.push(j);
                        }
                    }
                }
                let relabel = Permutation(label);
                self.conjugate_by(&relabel)
            })
            .min()
            .expect("degree is positive")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ClassTag {
    F2,
    F3,
    F6,
    Unexpected,
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassTag::F2 => "F2",
            ClassTag::F3 => "F3",
            ClassTag::F6 => "F6",
            ClassTag::Unexpected => "unexpected",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalCoveringClass {
    pub tag: ClassTag,
    pub degree: usize,
    pub representative: BraidPair,
    pub meridian_type: Vec<usize>,
    /// Number of enumerated pairs conjugate to the representative.
    pub orbit_size: usize,
}

fn tag_for(degree: usize, meridian_type: &[usize]) -> ClassTag {
    match (degree, meridian_type) {
        (2, [2]) => ClassTag::F2,
        (3, [2, 1]) => ClassTag::F3,
        (6, [2, 2, 2]) => ClassTag::F6,
        _ => ClassTag::Unexpected,
    }
}

/// All transitive pairs of involutions satisfying the braid relation, up
/// to simultaneous conjugation, sorted by canonical representative.
pub fn enumerate_cusp_monodromies(
    degree: usize,
    cap: usize,
) -> Result<Vec<LocalCoveringClass>, MonodromyError> {
    if degree < 2 {
        return Err(MonodromyError::DegreeTooSmall(degree));
    }
    if degree > cap {
        return Err(MonodromyError::DegreeTooLarge { degree, cap });
    }
    let invs = involutions(degree);
    let mut classes: BTreeMap<BraidPair, usize> = BTreeMap::new();
    for a in &invs {
        for b in &invs {
            let pair = BraidPair {
                a: a.clone(),
                b: b.clone(),
            };
            if pair.satisfies_braid_relation() && pair.is_transitive() {
                *classes.entry(pair.canonical()).or_default() += 1;
            }
        }
    }
    Ok(classes
        .into_iter()
        .map(|(rep, orbit_size)| {
            let meridian_type = rep.a.cycle_type();
            LocalCoveringClass {
                tag: tag_for(degree, &meridian_type),
                degree,
                representative: rep,
                meridian_type,
                orbit_size,
            }
        })
        .collect())
}

/// Order of the centralizer of a pair in the symmetric group, by brute
/// force. The orbit of the pair has size `n! / |C|`.
pub fn centralizer_order(pair: &BraidPair) -> usize {
    all_permutations(pair.a.degree())
        .into_iter()
        .filter(|g| pair.conjugate_by(g) == *pair)
        .count()
}

pub fn all_permutations(n: usize) -> Vec<Permutation> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    permute(&mut current, 0, &mut out);
    out.sort();
    out
}

fn permute(v: &mut Vec<usize>, k: usize, out: &mut Vec<Permutation>) {
    if k == v.len() {
        out.push(Permutation(v.clone()));
        return;
    }
    for i in k..v.len() {
        v.swap(k, i);
        permute(v, k + 1, out);
        v.swap(k, i);
    }
}
