//! Finite abelian groups in coordinates.
//!
//! An ambient group is `Z^n / diag(d)` for a list of moduli `d` (not
//! necessarily a divisibility chain). Elements are `Vec<i64>` reduced into
//! `[0, d_i)`. Subgroups, kernels, images and cokernels are computed with
//! the Smith normal form.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use super::group::{generating_set, FiniteGroup, GroupError};
use super::hom::GroupHom;
use super::snf::{smith_normal_form, IntMatrix, SnfFlags};

pub fn reduce(v: &mut [i64], moduli: &[u64]) {
    for (x, &d) in v.iter_mut().zip(moduli) {
        *x = x.rem_euclid(d as i64);
    }
}

pub fn reduced(mut v: Vec<i64>, moduli: &[u64]) -> Vec<i64> {
    reduce(&mut v, moduli);
    v
}

pub fn add_vec(a: &[i64], b: &[i64], moduli: &[u64]) -> Vec<i64> {
    a.iter().zip(b).zip(moduli).map(|((x, y), &d)| (x + y).rem_euclid(d as i64)).collect()
}

pub fn neg_vec(a: &[i64], moduli: &[u64]) -> Vec<i64> {
    a.iter().zip(moduli).map(|(x, &d)| (-x).rem_euclid(d as i64)).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64], moduli: &[u64]) -> Vec<i64> {
    a.iter().zip(b).zip(moduli).map(|((x, y), &d)| (x - y).rem_euclid(d as i64)).collect()
}

pub fn group_order(moduli: &[u64]) -> u128 {
    moduli
        .iter()
        .try_fold(1u128, |acc, &d| acc.checked_mul(d as u128))
        .expect("group order overflows u128")
}

/// All elements of `Z^n / diag(d)` in lexicographic order.
pub fn all_vectors(moduli: &[u64]) -> Vec<Vec<i64>> {
    let total = group_order(moduli) as usize;
    let mut out = Vec::with_capacity(total);
    let mut cur = vec![0i64; moduli.len()];
    for _ in 0..total {
        out.push(cur.clone());
        for i in (0..moduli.len()).rev() {
            cur[i] += 1;
            if cur[i] < moduli[i] as i64 {
                break;
            }
            cur[i] = 0;
        }
    }
    out
}

fn big(x: i64) -> BigInt {
    BigInt::from(x)
}

fn to_mod(x: &BigInt, d: u64) -> i64 {
    x.mod_floor(&BigInt::from(d)).to_i64().expect("reduced value fits")
}

fn diag_block(moduli: &[u64]) -> IntMatrix {
    let mut m = IntMatrix::zeros(moduli.len(), moduli.len());
    for (i, &d) in moduli.iter().enumerate() {
        m[(i, i)] = BigInt::from(d);
    }
    m
}

/// Matrix whose columns are the given vectors.
fn columns_matrix(rows: usize, cols: &[Vec<i64>]) -> IntMatrix {
    let mut m = IntMatrix::zeros(rows, cols.len());
    for (j, c) in cols.iter().enumerate() {
        for (i, &x) in c.iter().enumerate() {
            m[(i, j)] = big(x);
        }
    }
    m
}

/// Invariant-factor presentation of an abelian [`FiniteGroup`].
#[derive(Clone, Debug)]
pub struct AbelianPresentation {
    invariant_factors: Vec<u64>,
    coords: Vec<Vec<i64>>,
    lookup: HashMap<Vec<i64>, usize>,
    generators: Vec<usize>,
}

impl AbelianPresentation {
    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    pub fn order(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self, x: usize) -> &[i64] {
        &self.coords[x]
    }

    /// Group element with the given coordinates (reduced first).
    pub fn element(&self, coords: &[i64]) -> usize {
        let key = reduced(coords.to_vec(), &self.invariant_factors);
        self.lookup[&key]
    }

    /// Element whose coordinate vector is the i-th unit vector.
    pub fn generator(&self, i: usize) -> usize {
        self.generators[i]
    }
}

/// Invariant factors and coordinate isomorphism of an abelian group.
///
/// Relations come from a Schreier-style scan: every element gets a word in a
/// greedy generating set, and each product with a generator contributes one
/// relation.
pub fn abelian_presentation(group: &FiniteGroup) -> Result<AbelianPresentation, GroupError> {
    if let Some((a, b)) = group.first_noncommuting() {
        return Err(GroupError::NotAbelian(a, b));
    }
    let n = group.order();
    let gens = generating_set(group);
    let t = gens.len();
    let mut word: Vec<Option<Vec<i64>>> = vec![None; n];
    word[0] = Some(vec![0; t]);
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            if word[y].is_none() {
                let mut w = word[x].clone().unwrap();
                w[i] += 1;
                word[y] = Some(w);
                queue.push_back(y);
            }
        }
    }
    let word: Vec<Vec<i64>> = word.into_iter().map(|w| w.expect("generating set spans")).collect();

    let mut relations: Vec<Vec<i64>> = Vec::new();
    for x in 0..n {
        for (i, &g) in gens.iter().enumerate() {
            let y = group.mul(x, g);
            let rel: Vec<i64> = (0..t)
                .map(|j| word[x][j] + i64::from(i == j) - word[y][j])
                .collect();
            if rel.iter().any(|&v| v != 0) && !relations.contains(&rel) {
                relations.push(rel);
            }
        }
    }
    let snf = smith_normal_form(&columns_matrix(t, &relations), SnfFlags { p: true, ..Default::default() });
    assert_eq!(snf.rank(), t, "finite group must give a full-rank relation lattice");
    let p = snf.p.unwrap();
    let keep: Vec<usize> = (0..t).filter(|&i| !snf.diagonal[i].is_one()).collect();
    let invariant_factors: Vec<u64> = keep.iter().map(|&i| snf.diagonal[i].to_u64().unwrap()).collect();

    let coords: Vec<Vec<i64>> = word
        .iter()
        .map(|w| {
            let wb: Vec<BigInt> = w.iter().map(|&x| big(x)).collect();
            let pw = p.mul_vec(&wb);
            keep.iter().zip(&invariant_factors).map(|(&i, &d)| to_mod(&pw[i], d)).collect()
        })
        .collect();
    let lookup: HashMap<Vec<i64>, usize> = coords.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
    assert_eq!(lookup.len(), n, "coordinate map must be bijective");
    let generators = (0..invariant_factors.len())
        .map(|i| {
            let mut e = vec![0i64; invariant_factors.len()];
            e[i] = 1;
            lookup[&e]
        })
        .collect();
    Ok(AbelianPresentation { invariant_factors, coords, lookup, generators })
}

/// A homomorphism `Z^m/diag(domain) -> Z^n/diag(codomain)` given by an
/// `n x m` matrix acting on column vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinAbHom {
    pub domain: Vec<u64>,
    pub codomain: Vec<u64>,
    pub matrix: Vec<Vec<i64>>,
}

impl FinAbHom {
    /// Reduces entries modulo the codomain and checks that every column is
    /// killed by the order of its domain generator.
    pub fn new(domain: Vec<u64>, codomain: Vec<u64>, mut matrix: Vec<Vec<i64>>) -> Result<Self, GroupError> {
        if matrix.len() != codomain.len() {
            return Err(GroupError::LengthMismatch { expected: codomain.len(), got: matrix.len() });
        }
        for (i, row) in matrix.iter_mut().enumerate() {
            if row.len() != domain.len() {
                return Err(GroupError::LengthMismatch { expected: domain.len(), got: row.len() });
            }
            let d = codomain[i] as i64;
            for (j, x) in row.iter_mut().enumerate() {
                *x = x.rem_euclid(d);
                if (*x as i128 * domain[j] as i128) % d as i128 != 0 {
                    return Err(GroupError::MatrixNotWellDefined { row: i, col: j });
                }
            }
        }
        Ok(FinAbHom { domain, codomain, matrix })
    }

    /// Matrix of a homomorphism between abelian table groups.
    pub fn from_group_hom(hom: &GroupHom, dom: &AbelianPresentation, cod: &AbelianPresentation) -> Self {
        let cols: Vec<&[i64]> = (0..dom.rank()).map(|j| cod.coords(hom.apply(dom.generator(j)))).collect();
        let matrix = (0..cod.rank()).map(|i| cols.iter().map(|c| c[i]).collect()).collect();
        FinAbHom {
            domain: dom.invariant_factors().to_vec(),
            codomain: cod.invariant_factors().to_vec(),
            matrix,
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        self.matrix
            .iter()
            .zip(&self.codomain)
            .map(|(row, &d)| {
                let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
                s.rem_euclid(d as i128) as i64
            })
            .collect()
    }

    pub fn column(&self, j: usize) -> Vec<i64> {
        self.matrix.iter().map(|r| r[j]).collect()
    }
}

/// Solves `y = G c (mod d)` for `c`.
#[derive(Clone, Debug)]
struct SpanSolver {
    p: IntMatrix,
    diagonal: Vec<BigInt>,
    /// First `k` rows and first `rank` columns of `Q`.
    q_top: IntMatrix,
}

impl SpanSolver {
    fn solve(&self, y: &[i64]) -> Option<Vec<BigInt>> {
        let yb: Vec<BigInt> = y.iter().map(|&x| big(x)).collect();
        let z = self.p.mul_vec(&yb);
        let r = self.diagonal.len();
        let mut w = Vec::with_capacity(r);
        for (i, zi) in z.iter().enumerate() {
            if i < r {
                let (q, rem) = zi.div_mod_floor(&self.diagonal[i]);
                if !rem.is_zero() {
                    return None;
                }
                w.push(q);
            } else if !zi.is_zero() {
                return None;
            }
        }
        Some(self.q_top.mul_vec(&w))
    }
}

/// A subgroup of `Z^n / diag(d)` with its own invariant-factor coordinates.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: Vec<u64>,
    spanning: Vec<Vec<i64>>,
    factors: Vec<u64>,
    generators: Vec<Vec<i64>>,
    solver: SpanSolver,
    /// Rows of `P2` with nontrivial factor: spanning-set coefficients to
    /// subgroup coordinates.
    to_coords: IntMatrix,
}

impl Subgroup {
    /// The subgroup generated by `spanning`.
    pub fn generated_by(ambient: &[u64], spanning: &[Vec<i64>]) -> Self {
        assert!(ambient.iter().all(|&d| d >= 1), "moduli must be positive");
        let n = ambient.len();
        let k = spanning.len();
        let spanning: Vec<Vec<i64>> = spanning
            .iter()
            .map(|v| {
                assert_eq!(v.len(), n, "generator length");
                reduced(v.clone(), ambient)
            })
            .collect();
        let m = columns_matrix(n, &spanning).hstack(&diag_block(ambient));
        let snf = smith_normal_form(&m, SnfFlags { p: true, p_inv: false, q: true });
        let r = snf.rank();
        let q = snf.q.unwrap();
        let mut q_top = IntMatrix::zeros(k, r);
        for i in 0..k {
            for j in 0..r {
                q_top[(i, j)] = q[(i, j)].clone();
            }
        }
        // relation lattice on the coefficients: x-part of ker M
        let kc_cols = k + n - r;
        let mut kc = IntMatrix::zeros(k, kc_cols);
        for i in 0..k {
            for j in 0..kc_cols {
                kc[(i, j)] = q[(i, r + j)].clone();
            }
        }
        let snf2 = smith_normal_form(&kc, SnfFlags { p: true, p_inv: true, q: false });
        assert_eq!(snf2.rank(), k, "subgroup of a finite group is finite");
        let p2 = snf2.p.unwrap();
        let p2_inv = snf2.p_inv.unwrap();
        let keep: Vec<usize> = (0..k).filter(|&i| !snf2.diagonal[i].is_one()).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| snf2.diagonal[i].to_u64().unwrap()).collect();
        let mut to_coords = IntMatrix::zeros(keep.len(), k);
        for (a, &i) in keep.iter().enumerate() {
            for j in 0..k {
                to_coords[(a, j)] = p2[(i, j)].clone();
            }
        }
        let generators = keep
            .iter()
            .map(|&i| {
                let c = p2_inv.column(i);
                let mut g = vec![BigInt::zero(); n];
                for (j, cj) in c.iter().enumerate() {
                    if cj.is_zero() {
                        continue;
                    }
                    for (t, gt) in g.iter_mut().enumerate() {
                        *gt += cj * spanning[j][t];
                    }
                }
                g.iter().zip(ambient).map(|(x, &d)| to_mod(x, d)).collect()
            })
            .collect();
        Subgroup {
            ambient: ambient.to_vec(),
            spanning,
            factors,
            generators,
            solver: SpanSolver { p: snf.p.unwrap(), diagonal: snf.diagonal, q_top },
            to_coords,
        }
    }

    pub fn whole(ambient: &[u64]) -> Self {
        let gens: Vec<Vec<i64>> = (0..ambient.len())
            .map(|i| {
                let mut e = vec![0; ambient.len()];
                e[i] = 1;
                e
            })
            .collect();
        Self::generated_by(ambient, &gens)
    }

    pub fn ambient(&self) -> &[u64] {
        &self.ambient
    }

    /// Invariant factors of the subgroup, each at least 2.
    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    /// One ambient vector per invariant factor.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// The spanning set the subgroup was built from.
    pub fn spanning_set(&self) -> &[Vec<i64>] {
        &self.spanning
    }

    pub fn order(&self) -> u128 {
        group_order(&self.factors)
    }

    /// Coefficients `c` with `y = sum c_j spanning_j`, if `y` is a member.
    pub fn solve(&self, y: &[i64]) -> Option<Vec<i64>> {
        let y = reduced(y.to_vec(), &self.ambient);
        let c = self.solver.solve(&y)?;
        // the ambient exponent kills every element, so coefficients can be reduced by it
        let exponent = self.ambient.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        Some(c.iter().map(|x| to_mod(x, exponent)).collect())
    }

    pub fn contains(&self, y: &[i64]) -> bool {
        let y = reduced(y.to_vec(), &self.ambient);
        self.solver.solve(&y).is_some()
    }

    /// Subgroup coordinates of a member.
    pub fn coords(&self, y: &[i64]) -> Option<Vec<i64>> {
        let y = reduced(y.to_vec(), &self.ambient);
        let c = self.solver.solve(&y)?;
        let v = self.to_coords.mul_vec(&c);
        Some(v.iter().zip(&self.factors).map(|(x, &d)| to_mod(x, d)).collect())
    }

    /// Ambient vector with the given subgroup coordinates.
    pub fn element(&self, coords: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.ambient.len()];
        for (c, g) in coords.iter().zip(&self.generators) {
            for (o, &x) in out.iter_mut().zip(g) {
                *o += c * x;
            }
        }
        reduced(out, &self.ambient)
    }

    pub fn elements(&self) -> Vec<Vec<i64>> {
        all_vectors(&self.factors).iter().map(|c| self.element(c)).collect()
    }
}

/// `Z^n / (A Z^m + diag(d) Z^n)` with a class map.
#[derive(Clone, Debug)]
pub struct Cokernel {
    codomain: Vec<u64>,
    factors: Vec<u64>,
    class_rows: IntMatrix,
    lift_cols: IntMatrix,
}

impl Cokernel {
    /// Cokernel of the map whose image is spanned by `columns`.
    pub fn of_columns(codomain: &[u64], columns: &[Vec<i64>]) -> Self {
        let n = codomain.len();
        let m = columns_matrix(n, columns).hstack(&diag_block(codomain));
        let snf = smith_normal_form(&m, SnfFlags { p: true, p_inv: true, q: false });
        assert_eq!(snf.rank(), n, "cokernel of a finite group is finite");
        let p = snf.p.unwrap();
        let p_inv = snf.p_inv.unwrap();
        let keep: Vec<usize> = (0..n).filter(|&i| !snf.diagonal[i].is_one()).collect();
        let factors: Vec<u64> = keep.iter().map(|&i| snf.diagonal[i].to_u64().unwrap()).collect();
        let mut class_rows = IntMatrix::zeros(keep.len(), n);
        let mut lift_cols = IntMatrix::zeros(n, keep.len());
        for (a, &i) in keep.iter().enumerate() {
            for j in 0..n {
                class_rows[(a, j)] = p[(i, j)].clone();
                lift_cols[(j, a)] = p_inv[(j, i)].clone();
            }
        }
        Cokernel { codomain: codomain.to_vec(), factors, class_rows, lift_cols }
    }

    pub fn factors(&self) -> &[u64] {
        &self.factors
    }

    pub fn order(&self) -> u128 {
        group_order(&self.factors)
    }

    pub fn codomain(&self) -> &[u64] {
        &self.codomain
    }

    pub fn class_of(&self, y: &[i64]) -> Vec<i64> {
        let yb: Vec<BigInt> = y.iter().map(|&x| big(x)).collect();
        let v = self.class_rows.mul_vec(&yb);
        v.iter().zip(&self.factors).map(|(x, &d)| to_mod(x, d)).collect()
    }

    /// A codomain vector in the given class.
    pub fn lift(&self, class: &[i64]) -> Vec<i64> {
        let cb: Vec<BigInt> = class.iter().map(|&x| big(x)).collect();
        let v = self.lift_cols.mul_vec(&cb);
        v.iter().zip(&self.codomain).map(|(x, &d)| to_mod(x, d)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct KernelImageCokernel {
    pub kernel: Subgroup,
    pub image: Subgroup,
    pub cokernel: Cokernel,
}

/// Kernel of `h` as a subgroup of its domain.
///
/// Solves `A x = 0 (mod d)` one row at a time; zero rows and repeated
/// (row, modulus) pairs are dropped before the SNF.
pub fn hom_kernel(h: &FinAbHom) -> Subgroup {
    let m = h.domain.len();
    let mut rows: Vec<(Vec<i64>, u64)> = Vec::new();
    for (row, &d) in h.matrix.iter().zip(&h.codomain) {
        if d == 1 || row.iter().all(|&x| x.rem_euclid(d as i64) == 0) {
            continue;
        }
        let key = (reduced(row.clone(), &vec![d; m]), d);
        if !rows.contains(&key) {
            rows.push(key);
        }
    }
    let nr = rows.len();
    let mut mat = IntMatrix::zeros(nr, m + nr);
    for (i, (row, d)) in rows.iter().enumerate() {
        for (j, &x) in row.iter().enumerate() {
            mat[(i, j)] = big(x);
        }
        mat[(i, m + i)] = BigInt::from(*d);
    }
    let snf = smith_normal_form(&mat, SnfFlags { q: true, ..Default::default() });
    let r = snf.rank();
    let q = snf.q.unwrap();
    let gens: Vec<Vec<i64>> = (r..m + nr)
        .map(|j| (0..m).map(|i| to_mod(&q[(i, j)], h.domain[i])).collect())
        .filter(|v: &Vec<i64>| v.iter().any(|&x| x != 0))
        .collect();
    Subgroup::generated_by(&h.domain, &gens)
}

pub fn hom_kernel_image_quotient(h: &FinAbHom) -> KernelImageCokernel {
    let columns: Vec<Vec<i64>> = (0..h.domain.len()).map(|j| h.column(j)).collect();
    KernelImageCokernel {
        kernel: hom_kernel(h),
        image: Subgroup::generated_by(&h.codomain, &columns),
        cokernel: Cokernel::of_columns(&h.codomain, &columns),
    }
}
