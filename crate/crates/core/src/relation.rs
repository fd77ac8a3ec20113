//! Equivalence relations (stored as partitions) and partial equivalence
//! relations (stored as partial partitions) on `0..n`.

use std::collections::HashMap;

use crate::error::{EquilogError, Result};

/// A total equivalence relation on `0..n`, stored as a canonical block
/// labelling: blocks are numbered in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    block_of: Vec<usize>,
    blocks: usize,
}

impl Partition {
    /// Builds a partition from any labelling; labels are renumbered canonically.
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[T]) -> Partition {
        let mut seen: HashMap<&T, usize> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                let next = seen.len();
                *seen.entry(l).or_insert(next)
            })
            .collect();
        Partition {
            block_of,
            blocks: seen.len(),
        }
    }

    pub fn discrete(n: usize) -> Partition {
        Partition {
            block_of: (0..n).collect(),
            blocks: n,
        }
    }

    pub fn full(n: usize) -> Partition {
        Partition {
            block_of: vec![0; n],
            blocks: usize::from(n > 0),
        }
    }

    /// Builds a partition from explicit blocks, which must cover `0..n` disjointly.
    pub fn from_blocks(n: usize, blocks: &[Vec<usize>]) -> Result<Partition> {
        let mut label = vec![usize::MAX; n];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(EquilogError::Invalid("empty equivalence block".into()));
            }
            for &i in block {
                if i >= n {
                    return Err(EquilogError::Invalid(format!("element {i} out of range")));
                }
                if label[i] != usize::MAX {
                    return Err(EquilogError::Invalid(format!(
                        "element {i} occurs in two blocks"
                    )));
                }
                label[i] = b;
            }
        }
        if let Some(i) = label.iter().position(|&l| l == usize::MAX) {
            return Err(EquilogError::Invalid(format!("element {i} is in no block")));
        }
        Ok(Partition::from_labels(&label))
    }

    /// Accepts an arbitrary relation only if it is reflexive, symmetric and
    /// transitive.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Partition> {
        let rel = bool_matrix(n, pairs)?;
        if let Some(i) = (0..n).find(|&i| !rel[i][i]) {
            return Err(EquilogError::Invalid(format!(
                "relation not reflexive at {i}"
            )));
        }
        check_symmetric_transitive(n, &rel)?;
        let labels: Vec<usize> = (0..n)
            .map(|i| (0..n).find(|&j| rel[i][j]).unwrap())
            .collect();
        Ok(Partition::from_labels(&labels))
    }

    /// The least equivalence relation containing `base` and `pairs`.
    pub fn closure_with(base: &Partition, pairs: &[(usize, usize)]) -> Partition {
        let n = base.len();
        let mut uf: Vec<usize> = (0..n).collect();
        fn find(uf: &mut [usize], mut i: usize) -> usize {
            while uf[i] != i {
                uf[i] = uf[uf[i]];
                i = uf[i];
            }
            i
        }
        let union = |uf: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(uf, a), find(uf, b));
            if ra != rb {
                uf[ra.max(rb)] = ra.min(rb);
            }
        };
        let mut first: HashMap<usize, usize> = HashMap::new();
        for i in 0..n {
            let b = base.block(i);
            match first.get(&b) {
                Some(&r) => union(&mut uf, r, i),
                None => {
                    first.insert(b, i);
                }
            }
        }
        for &(a, b) in pairs {
            union(&mut uf, a, b);
        }
        let labels: Vec<usize> = (0..n).map(|i| find(&mut uf, i)).collect();
        Partition::from_labels(&labels)
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block(&self, i: usize) -> usize {
        self.block_of[i]
    }

    pub fn labels(&self) -> &[usize] {
        &self.block_of
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        self.block_of[i] == self.block_of[j]
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            out[b].push(i);
        }
        out
    }

    /// A representative (the least element) of each block.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.blocks];
        for (i, &b) in self.block_of.iter().enumerate() {
            if reps[b] == usize::MAX {
                reps[b] = i;
            }
        }
        reps
    }

    /// The product relation on `0..n*m`, with `(i, j) ↦ i * m + j`.
    pub fn product(&self, other: &Partition) -> Partition {
        let m = other.len();
        let labels: Vec<(usize, usize)> = (0..self.len() * m)
            .map(|k| (self.block(k / m), other.block(k % m)))
            .collect();
        Partition::from_labels(&labels)
    }

    /// Disjoint union on `0..n+m`.
    pub fn sum(&self, other: &Partition) -> Partition {
        let labels: Vec<(bool, usize)> = self
            .block_of
            .iter()
            .map(|&b| (false, b))
            .chain(other.block_of.iter().map(|&b| (true, b)))
            .collect();
        Partition::from_labels(&labels)
    }

    /// Restriction to the listed elements, renumbered `0..subset.len()`.
    pub fn restrict(&self, subset: &[usize]) -> Partition {
        let labels: Vec<usize> = subset.iter().map(|&i| self.block(i)).collect();
        Partition::from_labels(&labels)
    }

    /// Relabels along a permutation `perm` (new index `k` holds old `perm[k]`).
    pub fn permute(&self, perm: &[usize]) -> Partition {
        self.restrict(perm)
    }

    pub fn as_per(&self) -> Per {
        Per {
            block_of: self.block_of.iter().map(|&b| Some(b)).collect(),
            blocks: self.blocks,
        }
    }
}

/// A partial equivalence relation (symmetric and transitive) on `0..n`,
/// stored as a canonical partial block labelling. Elements outside the
/// domain of definition carry `None`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Per {
    block_of: Vec<Option<usize>>,
    blocks: usize,
}

impl Per {
    pub fn from_labels<T: Eq + std::hash::Hash>(labels: &[Option<T>]) -> Per {
        let mut seen: HashMap<&T, usize> = HashMap::new();
        let block_of = labels
            .iter()
            .map(|l| {
                l.as_ref().map(|l| {
                    let next = seen.len();
                    *seen.entry(l).or_insert(next)
                })
            })
            .collect();
        Per {
            block_of,
            blocks: seen.len(),
        }
    }

    pub fn empty(n: usize) -> Per {
        Per {
            block_of: vec![None; n],
            blocks: 0,
        }
    }

    /// Accepts an arbitrary relation only if it is symmetric and transitive.
    pub fn from_relation(n: usize, pairs: &[(usize, usize)]) -> Result<Per> {
        let rel = bool_matrix(n, pairs)?;
        check_symmetric_transitive(n, &rel)?;
        let labels: Vec<Option<usize>> = (0..n)
            .map(|i| {
                if rel[i][i] {
                    (0..n).find(|&j| rel[i][j])
                } else {
                    None
                }
            })
            .collect();
        Ok(Per::from_labels(&labels))
    }

    pub fn len(&self) -> usize {
        self.block_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.block_of.is_empty()
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks
    }

    pub fn block(&self, i: usize) -> Option<usize> {
        self.block_of[i]
    }

    pub fn labels(&self) -> &[Option<usize>] {
        &self.block_of
    }

    pub fn related(&self, i: usize, j: usize) -> bool {
        matches!((self.block_of[i], self.block_of[j]), (Some(a), Some(b)) if a == b)
    }

    pub fn in_domain(&self, i: usize) -> bool {
        self.block_of[i].is_some()
    }

    /// `{x | x per x}`, in increasing order.
    pub fn domain(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.in_domain(i)).collect()
    }

    pub fn is_total(&self) -> bool {
        self.block_of.iter().all(Option::is_some)
    }

    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.blocks];
        for (i, b) in self.block_of.iter().enumerate() {
            if let Some(b) = b {
                out[*b].push(i);
            }
        }
        out
    }

    pub fn representatives(&self) -> Vec<usize> {
        self.blocks().into_iter().map(|b| b[0]).collect()
    }

    /// Restriction to the domain of definition, as a total relation on
    /// `0..domain().len()`.
    pub fn restrict_to_domain(&self) -> Partition {
        let labels: Vec<usize> = self.block_of.iter().flatten().copied().collect();
        Partition::from_labels(&labels)
    }

    pub fn to_total(&self) -> Option<Partition> {
        self.is_total()
            .then(|| Partition::from_labels(&self.block_of.iter().flatten().collect::<Vec<_>>()))
    }

    pub fn product(&self, other: &Per) -> Per {
        let m = other.len();
        let labels: Vec<Option<(usize, usize)>> = (0..self.len() * m)
            .map(|k| Some((self.block(k / m)?, other.block(k % m)?)))
            .collect();
        Per::from_labels(&labels)
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.related(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn permute(&self, perm: &[usize]) -> Per {
        let labels: Vec<Option<usize>> = perm.iter().map(|&i| self.block(i)).collect();
        Per::from_labels(&labels)
    }
}

fn bool_matrix(n: usize, pairs: &[(usize, usize)]) -> Result<Vec<Vec<bool>>> {
    let mut rel = vec![vec![false; n]; n];
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(EquilogError::Invalid(format!(
                "pair ({a},{b}) out of range"
            )));
        }
        rel[a][b] = true;
    }
    Ok(rel)
}

fn check_symmetric_transitive(n: usize, rel: &[Vec<bool>]) -> Result<()> {
    for i in 0..n {
        for j in 0..n {
            if rel[i][j] && !rel[j][i] {
                return Err(EquilogError::Invalid(format!(
                    "relation not symmetric at ({i},{j})"
                )));
            }
            for k in 0..n {
                if rel[i][j] && rel[j][k] && !rel[i][k] {
                    return Err(EquilogError::Invalid(format!(
                        "relation not transitive at ({i},{j},{k})"
                    )));
                }
            }
        }
    }
    Ok(())
}

/// All partitions of `0..n` (restricted growth strings).
pub fn all_partitions(n: usize) -> Vec<Partition> {
    let mut out = Vec::new();
    let mut labels = vec![0usize; n];
    fn rec(i: usize, max: usize, labels: &mut Vec<usize>, out: &mut Vec<Partition>) {
        if i == labels.len() {
            out.push(Partition::from_labels(labels));
            return;
        }
        for l in 0..=max {
            labels[i] = l;
            rec(i + 1, max.max(l + 1), labels, out);
        }
    }
    if n == 0 {
        return vec![Partition::discrete(0)];
    }
    rec(0, 0, &mut labels, &mut out);
    out
}

/// All partial equivalence relations on `0..n`.
pub fn all_pers(n: usize) -> Vec<Per> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let dom: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
        for p in all_partitions(dom.len()) {
            let mut labels = vec![None; n];
            for (k, &i) in dom.iter().enumerate() {
                labels[i] = Some(p.block(k));
            }
            out.push(Per::from_labels(&labels));
        }
    }
    out
}
