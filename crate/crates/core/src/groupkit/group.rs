use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Violations reported by [`FiniteGroup::from_table`] and friends.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("empty multiplication table")]
    Empty,
    #[error("table is not closed: row {row} has {len} entries or an entry out of range")]
    NotClosed { row: usize, len: usize },
    #[error("element 0 is not a two-sided identity (fails at {0})")]
    NoIdentityAtZero(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails for ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("group of order {order} exceeds the enumeration bound {bound}")]
    OrderTooLarge { order: usize, bound: usize },
    #[error("map has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("subgroup is not normal (conjugating {k} by {g} leaves it)")]
    NotNormal { g: usize, k: usize },
    #[error("group is not abelian ({0}, {1} do not commute)")]
    NotAbelian(usize, usize),
    #[error("map is not a homomorphism at ({0}, {1})")]
    NotHomomorphism(usize, usize),
    #[error("invalid permutation generator: {0}")]
    BadPermutation(String),
    #[error("matrix entry ({row}, {col}) does not respect the order of domain generator {col}")]
    MatrixNotWellDefined { row: usize, col: usize },
}

struct GroupData {
    name: Option<String>,
    order: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
}

/// A finite group on `{0, .., n-1}` given by its Cayley table, identity 0.
///
/// Cloning is cheap; the table is shared.
#[derive(Clone)]
pub struct FiniteGroup {
    data: Arc<GroupData>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.data, &other.data) || self.data.table == other.data.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.data.name {
            Some(name) => write!(f, "FiniteGroup({name}, order {})", self.order()),
            None => write!(f, "FiniteGroup(order {})", self.order()),
        }
    }
}

impl FiniteGroup {
    /// Validates a square table. Checks closure, identity at 0, inverses and
    /// associativity in that order and reports the first failure.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Self, GroupError> {
        let n = table.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n || entries.iter().any(|&x| x >= n) {
                return Err(GroupError::NotClosed { row, len: entries.len() });
            }
        }
        let flat: Vec<usize> = table.iter().flatten().copied().collect();
        Self::from_flat(None, n, flat)
    }

    pub(crate) fn from_flat(
        name: Option<String>,
        n: usize,
        flat: Vec<usize>,
    ) -> Result<Self, GroupError> {
        let at = |i: usize, j: usize| flat[i * n + j];
        for j in 0..n {
            if at(0, j) != j || at(j, 0) != j {
                return Err(GroupError::NoIdentityAtZero(j));
            }
        }
        let mut inverse = vec![usize::MAX; n];
        for (i, inv) in inverse.iter_mut().enumerate() {
            match (0..n).find(|&j| at(i, j) == 0 && at(j, i) == 0) {
                Some(j) => *inv = j,
                None => return Err(GroupError::NoInverse(i)),
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = at(i, j);
                for k in 0..n {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(GroupError::NotAssociative(i, j, k));
                    }
                }
            }
        }
        Ok(FiniteGroup {
            data: Arc::new(GroupData { name, order: n, table: flat, inverse }),
        })
    }

    pub fn with_name(self, name: impl Into<String>) -> Self {
        let d = &self.data;
        FiniteGroup {
            data: Arc::new(GroupData {
                name: Some(name.into()),
                order: d.order,
                table: d.table.clone(),
                inverse: d.inverse.clone(),
            }),
        }
    }

    pub fn name(&self) -> Option<&str> {
        self.data.name.as_deref()
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.data.table[a * self.data.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.data.inverse[a]
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order()
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.data.table.chunks(self.order()).map(|r| r.to_vec()).collect()
    }

    pub fn pow(&self, a: usize, mut e: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        self.first_noncommuting().is_none()
    }

    pub(crate) fn first_noncommuting(&self) -> Option<(usize, usize)> {
        let n = self.order();
        (0..n)
            .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
            .find(|&(a, b)| self.mul(a, b) != self.mul(b, a))
    }

    pub fn exponent(&self) -> usize {
        self.elements()
            .map(|a| self.element_order(a))
            .fold(1, num_integer::lcm)
    }

    /// `a^{-1} b a`.
    pub fn conj(&self, a: usize, b: usize) -> usize {
        self.mul(self.inv(a), self.mul(b, a))
    }

    pub fn center(&self) -> Vec<usize> {
        self.elements()
            .filter(|&z| self.elements().all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }

    pub fn trivial() -> Self {
        Self::from_flat(Some("1".into()), 1, vec![0]).expect("trivial group")
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let flat = (0..n).flat_map(|i| (0..n).map(move |j| (i + j) % n)).collect();
        Self::from_flat(Some(format!("Z{n}")), n, flat).expect("cyclic table is a group")
    }

    pub fn klein() -> Self {
        let flat = (0..4).flat_map(|i| (0..4).map(move |j| i ^ j)).collect();
        Self::from_flat(Some("V4".into()), 4, flat).expect("Klein table is a group")
    }

    /// Symmetric group on `degree` points, elements sorted lexicographically
    /// as permutation arrays.
    pub fn symmetric(degree: usize) -> Self {
        use itertools::Itertools;
        let perms: Vec<Vec<usize>> = (0..degree).permutations(degree).collect();
        Self::from_permutation_list(perms)
            .expect("symmetric group")
            .with_name(format!("S{degree}"))
    }

    /// Closes a set of permutations of `{0..degree}` under composition and
    /// builds the Cayley table. Elements are sorted lexicographically, so
    /// the identity permutation is element 0. The product `p * q` is the
    /// function composition `x -> p(q(x))`.
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<Self, GroupError> {
        for g in generators {
            let mut seen = vec![false; degree];
            if g.len() != degree {
                return Err(GroupError::BadPermutation(format!("{g:?} has wrong degree")));
            }
            for &x in g {
                if x >= degree || seen[x] {
                    return Err(GroupError::BadPermutation(format!("{g:?} is not a bijection")));
                }
                seen[x] = true;
            }
        }
        let identity: Vec<usize> = (0..degree).collect();
        let mut elems: BTreeSet<Vec<usize>> = BTreeSet::new();
        elems.insert(identity.clone());
        let mut frontier = vec![identity];
        while let Some(p) = frontier.pop() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|x| p[g[x]]).collect();
                if elems.insert(q.clone()) {
                    frontier.push(q);
                }
            }
        }
        Self::from_permutation_list(elems.into_iter().collect())
    }

    fn from_permutation_list(mut perms: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        perms.sort();
        let n = perms.len();
        let index: std::collections::HashMap<&Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p, i)).collect();
        let mut flat = Vec::with_capacity(n * n);
        for p in &perms {
            for q in &perms {
                let pq: Vec<usize> = (0..p.len()).map(|x| p[q[x]]).collect();
                flat.push(*index.get(&pq).ok_or_else(|| {
                    GroupError::BadPermutation("permutation set not closed".into())
                })?);
            }
        }
        Self::from_flat(None, n, flat)
    }

    /// Index of `(g, h)` in `G x H` under the pair encoding `g * |H| + h`.
    pub fn pair_index(h_order: usize, g: usize, h: usize) -> usize {
        g * h_order + h
    }
}

/// Smallest subgroup containing `generators`, as a sorted element list.
pub fn subgroup_closure(group: &FiniteGroup, generators: &[usize]) -> Result<Vec<usize>, GroupError> {
    if let Some(&bad) = generators.iter().find(|&&x| x >= group.order()) {
        return Err(GroupError::IndexOutOfRange(bad));
    }
    let mut member = vec![false; group.order()];
    member[0] = true;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for &g in generators {
            let y = group.mul(x, g);
            if !member[y] {
                member[y] = true;
                frontier.push(y);
            }
        }
    }
    Ok(group.elements().filter(|&x| member[x]).collect())
}

/// Checks that a sorted-or-not element set is a subgroup.
pub fn is_subgroup(group: &FiniteGroup, elements: &[usize]) -> bool {
    if elements.iter().any(|&x| x >= group.order()) {
        return false;
    }
    let mut member = vec![false; group.order()];
    for &x in elements {
        member[x] = true;
    }
    member[0]
        && elements
            .iter()
            .all(|&a| elements.iter().all(|&b| member[group.mul(a, b)]))
}

/// First witness `(g, k)` with `g^{-1} k g` outside the subgroup.
pub fn normality_witness(group: &FiniteGroup, subgroup: &[usize]) -> Option<(usize, usize)> {
    let mut member = vec![false; group.order()];
    for &x in subgroup {
        member[x] = true;
    }
    group
        .elements()
        .flat_map(|g| subgroup.iter().map(move |&k| (g, k)))
        .find(|&(g, k)| !member[group.conj(g, k)])
}

pub fn is_normal(group: &FiniteGroup, subgroup: &[usize]) -> bool {
    normality_witness(group, subgroup).is_none()
}

/// Greedy generating set, preferring elements of large order.
pub fn generating_set(group: &FiniteGroup) -> Vec<usize> {
    let mut candidates: Vec<usize> = group.elements().skip(1).collect();
    candidates.sort_by_key(|&x| (std::cmp::Reverse(group.element_order(x)), x));
    let mut gens = Vec::new();
    let mut member = vec![false; group.order()];
    member[0] = true;
    for x in candidates {
        if member[x] {
            continue;
        }
        gens.push(x);
        for y in subgroup_closure(group, &gens).expect("indices in range") {
            member[y] = true;
        }
    }
    gens
}
