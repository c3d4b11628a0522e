//! Cochain groups of an RRB module and `Z^1`, `Z^2`, `B^2`, `H^2 = Z^2/B^2`
//! as finite abelian groups.
//!
//! Cochains are flattened to coordinate vectors: nondegenerate tuples in
//! lexicographic order, each contributing the invariant-factor coordinates
//! of its value. `C^1` lists `kappa1` then `kappa2`; `C^2` lists `tau1`,
//! `tau2`, `rho`, `chi`. This order is part of the serialization contract.

use thiserror::Error;

use crate::groupkit::{hom_kernel, Cokernel, FinAbHom, Subgroup};
use crate::module::{CocycleResidual, FactorSystem, Module, OneCochain};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CohomologyError {
    #[error("factor system is not a cocycle")]
    NotACocycle,
    #[error("class coordinates have the wrong length")]
    BadClass,
}

/// Which component a coordinate belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Kappa1(usize),
    Kappa2(usize),
    Tau1(usize, usize),
    Tau2(usize, usize),
    Rho(usize, usize),
    Chi(usize),
}

/// Coordinate layout of a cochain group.
#[derive(Clone, Debug)]
pub struct CochainSpace {
    pub shape: (usize, usize, usize, usize),
    /// One entry per coordinate: the slot and the coordinate index within
    /// the value group.
    pub index: Vec<(Slot, usize)>,
    pub moduli: Vec<u64>,
}

impl CochainSpace {
    fn push_slot(&mut self, slot: Slot, factors: &[u64]) {
        for (i, &d) in factors.iter().enumerate() {
            self.index.push((slot, i));
            self.moduli.push(d);
        }
    }

    pub fn one_cochains(module: &Module) -> Self {
        let (na, nb, _, _) = module.shape();
        let kf = module.k_presentation().invariant_factors().to_vec();
        let lf = module.l_presentation().invariant_factors().to_vec();
        let mut s = CochainSpace { shape: module.shape(), index: Vec::new(), moduli: Vec::new() };
        for a in 1..na {
            s.push_slot(Slot::Kappa1(a), &kf);
        }
        for b in 1..nb {
            s.push_slot(Slot::Kappa2(b), &lf);
        }
        s
    }

    pub fn two_cochains(module: &Module) -> Self {
        let (na, nb, _, _) = module.shape();
        let kf = module.k_presentation().invariant_factors().to_vec();
        let lf = module.l_presentation().invariant_factors().to_vec();
        let mut s = CochainSpace { shape: module.shape(), index: Vec::new(), moduli: Vec::new() };
        for a1 in 1..na {
            for a2 in 1..na {
                s.push_slot(Slot::Tau1(a1, a2), &kf);
            }
        }
        for b1 in 1..nb {
            for b2 in 1..nb {
                s.push_slot(Slot::Tau2(b1, b2), &lf);
            }
        }
        for a in 1..na {
            for b in 1..nb {
                s.push_slot(Slot::Rho(a, b), &kf);
            }
        }
        for a in 1..na {
            s.push_slot(Slot::Chi(a), &lf);
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.moduli.len()
    }

    pub fn order(&self) -> u128 {
        crate::groupkit::abelian::group_order(&self.moduli)
    }
}

/// Coordinates of a 1-cochain.
pub fn one_cochain_vector(module: &Module, space: &CochainSpace, kappa: &OneCochain) -> Vec<i64> {
    let (kp, lp) = (module.k_presentation(), module.l_presentation());
    space
        .index
        .iter()
        .map(|&(slot, i)| match slot {
            Slot::Kappa1(a) => kp.coords(kappa.kappa1[a])[i],
            Slot::Kappa2(b) => lp.coords(kappa.kappa2[b])[i],
            _ => unreachable!("not a 1-cochain slot"),
        })
        .collect()
}

fn collect_values(module: &Module, space: &CochainSpace, v: &[i64]) -> Vec<(Slot, usize)> {
    // groups coordinates by slot and converts each coordinate block to an element
    let (kp, lp) = (module.k_presentation(), module.l_presentation());
    let mut out = Vec::new();
    let mut i = 0;
    while i < space.index.len() {
        let slot = space.index[i].0;
        let mut j = i;
        while j < space.index.len() && space.index[j].0 == slot {
            j += 1;
        }
        let coords = &v[i..j];
        let value = match slot {
            Slot::Kappa1(_) | Slot::Tau1(..) | Slot::Rho(..) => kp.element(coords),
            Slot::Kappa2(_) | Slot::Tau2(..) | Slot::Chi(_) => lp.element(coords),
        };
        out.push((slot, value));
        i = j;
    }
    out
}

pub fn one_cochain_from_vector(module: &Module, space: &CochainSpace, v: &[i64]) -> OneCochain {
    let (na, nb, _, _) = module.shape();
    let mut kappa = OneCochain::zero(na, nb);
    for (slot, value) in collect_values(module, space, v) {
        match slot {
            Slot::Kappa1(a) => kappa.kappa1[a] = value,
            Slot::Kappa2(b) => kappa.kappa2[b] = value,
            _ => unreachable!("not a 1-cochain slot"),
        }
    }
    kappa
}

/// Coordinates of a factor system; degenerate entries are not read.
pub fn factor_system_vector(module: &Module, space: &CochainSpace, fs: &FactorSystem) -> Vec<i64> {
    let (kp, lp) = (module.k_presentation(), module.l_presentation());
    space
        .index
        .iter()
        .map(|&(slot, i)| match slot {
            Slot::Tau1(a1, a2) => kp.coords(fs.tau1[a1][a2])[i],
            Slot::Tau2(b1, b2) => lp.coords(fs.tau2[b1][b2])[i],
            Slot::Rho(a, b) => kp.coords(fs.rho[a][b])[i],
            Slot::Chi(a) => lp.coords(fs.chi[a])[i],
            _ => unreachable!("not a 2-cochain slot"),
        })
        .collect()
}

pub fn factor_system_from_vector(module: &Module, space: &CochainSpace, v: &[i64]) -> FactorSystem {
    let mut fs = module.zero_fs();
    for (slot, value) in collect_values(module, space, v) {
        match slot {
            Slot::Tau1(a1, a2) => fs.tau1[a1][a2] = value,
            Slot::Tau2(b1, b2) => fs.tau2[b1][b2] = value,
            Slot::Rho(a, b) => fs.rho[a][b] = value,
            Slot::Chi(a) => fs.chi[a] = value,
            _ => unreachable!("not a 2-cochain slot"),
        }
    }
    fs
}

/// Named block of the cocycle matrix, for diagnostics.
#[derive(Clone, Debug)]
pub struct ConditionBlock {
    pub condition: usize,
    pub rows: std::ops::Range<usize>,
}

/// Coordinates of the residual vector and the moduli of its target group.
fn residual_vector(module: &Module, r: &CocycleResidual) -> Vec<i64> {
    let (kp, lp) = (module.k_presentation(), module.l_presentation());
    let mut out = Vec::new();
    for &x in r.c1.iter() {
        out.extend_from_slice(kp.coords(x));
    }
    for &x in r.c2.iter() {
        out.extend_from_slice(lp.coords(x));
    }
    for &x in r.c3.iter().chain(&r.c4) {
        out.extend_from_slice(kp.coords(x));
    }
    for &x in r.c5.iter() {
        out.extend_from_slice(lp.coords(x));
    }
    out
}

fn residual_layout(module: &Module) -> (Vec<u64>, Vec<ConditionBlock>) {
    let (na, nb, _, _) = module.shape();
    let kf = module.k_presentation().invariant_factors();
    let lf = module.l_presentation().invariant_factors();
    let counts = [
        (na * na * na, kf),
        (nb * nb * nb, lf),
        (na * nb * nb, kf),
        (na * na * nb, kf),
        (na * na, lf),
    ];
    let mut moduli = Vec::new();
    let mut blocks = Vec::new();
    for (i, (n, f)) in counts.iter().enumerate() {
        let start = moduli.len();
        for _ in 0..*n {
            moduli.extend_from_slice(f);
        }
        blocks.push(ConditionBlock { condition: i + 1, rows: start..moduli.len() });
    }
    (moduli, blocks)
}

fn unit_vectors(n: usize) -> impl Iterator<Item = Vec<i64>> {
    (0..n).map(move |i| {
        let mut e = vec![0; n];
        e[i] = 1;
        e
    })
}

fn matrix_from_columns(rows: usize, cols: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..rows).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
}

/// A cohomology class: `H^2` coordinates plus one representative cocycle.
#[derive(Clone, Debug)]
pub struct CohomologyClass {
    pub coords: Vec<i64>,
    pub representative: FactorSystem,
}

impl PartialEq for CohomologyClass {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for CohomologyClass {}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&x| x == 0)
    }
}

/// `Z^1`, `Z^2`, `B^2` and `H^2` of a module.
#[derive(Clone, Debug)]
pub struct Cohomology {
    module: Module,
    c1: CochainSpace,
    c2: CochainSpace,
    cocycle_map: FinAbHom,
    blocks: Vec<ConditionBlock>,
    z1: Subgroup,
    z2: Subgroup,
    b2: Subgroup,
    h2: Cokernel,
}

impl Cohomology {
    pub fn new(module: &Module) -> Self {
        let c1 = CochainSpace::one_cochains(module);
        let c2 = CochainSpace::two_cochains(module);
        let (res_moduli, blocks) = residual_layout(module);

        // the cocycle conditions are linear, so each column is the residual of a basis cochain
        let cocycle_cols: Vec<Vec<i64>> = unit_vectors(c2.dim())
            .map(|e| {
                let fs = factor_system_from_vector(module, &c2, &e);
                residual_vector(module, &module.cocycle_residual(&fs))
            })
            .collect();
        let cocycle_map = FinAbHom::new(
            c2.moduli.clone(),
            res_moduli.clone(),
            matrix_from_columns(res_moduli.len(), &cocycle_cols),
        )
        .expect("cocycle conditions are linear");

        let coboundary_cols: Vec<Vec<i64>> = unit_vectors(c1.dim())
            .map(|e| {
                let kappa = one_cochain_from_vector(module, &c1, &e);
                factor_system_vector(module, &c2, &module.coboundary(&kappa))
            })
            .collect();
        let coboundary_map = FinAbHom::new(
            c1.moduli.clone(),
            c2.moduli.clone(),
            matrix_from_columns(c2.dim(), &coboundary_cols),
        )
        .expect("coboundary is linear");

        let z1 = hom_kernel(&coboundary_map);
        let z2 = hom_kernel(&cocycle_map);
        let b2 = Subgroup::generated_by(&c2.moduli, &coboundary_cols);
        let b2_in_z2: Vec<Vec<i64>> = coboundary_cols
            .iter()
            .map(|v| z2.coords(v).expect("coboundaries are cocycles"))
            .collect();
        let h2 = Cokernel::of_columns(z2.factors(), &b2_in_z2);
        Cohomology { module: module.clone(), c1, c2, cocycle_map, blocks, z1, z2, b2, h2 }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn one_cochain_space(&self) -> &CochainSpace {
        &self.c1
    }

    pub fn two_cochain_space(&self) -> &CochainSpace {
        &self.c2
    }

    pub fn z1(&self) -> &Subgroup {
        &self.z1
    }

    pub fn z2(&self) -> &Subgroup {
        &self.z2
    }

    pub fn b2(&self) -> &Subgroup {
        &self.b2
    }

    pub fn h2(&self) -> &Cokernel {
        &self.h2
    }

    pub fn condition_blocks(&self) -> &[ConditionBlock] {
        &self.blocks
    }

    pub fn to_vector(&self, fs: &FactorSystem) -> Vec<i64> {
        factor_system_vector(&self.module, &self.c2, fs)
    }

    pub fn from_vector(&self, v: &[i64]) -> FactorSystem {
        factor_system_from_vector(&self.module, &self.c2, v)
    }

    /// Residual coordinates of the linearized cocycle map.
    pub fn violation_vector(&self, fs: &FactorSystem) -> Vec<i64> {
        self.cocycle_map.apply(&self.to_vector(fs))
    }

    /// First cocycle condition whose block of the violation vector is nonzero.
    pub fn violated_condition(&self, fs: &FactorSystem) -> Option<usize> {
        let v = self.violation_vector(fs);
        self.blocks.iter().find(|b| v[b.rows.clone()].iter().any(|&x| x != 0)).map(|b| b.condition)
    }

    pub fn is_cocycle(&self, fs: &FactorSystem) -> bool {
        fs.first_degenerate_nonzero().is_none() && self.z2.contains(&self.to_vector(fs))
    }

    pub fn is_coboundary(&self, fs: &FactorSystem) -> bool {
        fs.first_degenerate_nonzero().is_none() && self.b2.contains(&self.to_vector(fs))
    }

    /// Some `kappa` with `coboundary(kappa) = fs`.
    pub fn solve_coboundary(&self, fs: &FactorSystem) -> Option<OneCochain> {
        if fs.first_degenerate_nonzero().is_some() {
            return None;
        }
        let coeffs = self.b2.solve(&self.to_vector(fs))?;
        // the spanning set is the image of the unit basis of C^1
        let v = crate::groupkit::abelian::reduced(coeffs, &self.c1.moduli);
        let kappa = one_cochain_from_vector(&self.module, &self.c1, &v);
        debug_assert_eq!(&self.module.coboundary(&kappa), fs);
        Some(kappa)
    }

    pub fn class_of(&self, fs: &FactorSystem) -> Result<CohomologyClass, CohomologyError> {
        if fs.first_degenerate_nonzero().is_some() {
            return Err(CohomologyError::NotACocycle);
        }
        let z = self.z2.coords(&self.to_vector(fs)).ok_or(CohomologyError::NotACocycle)?;
        Ok(CohomologyClass { coords: self.h2.class_of(&z), representative: fs.clone() })
    }

    /// The class with the given coordinates, with a canonical representative.
    pub fn class_from_coords(&self, coords: &[i64]) -> Result<CohomologyClass, CohomologyError> {
        if coords.len() != self.h2.factors().len() {
            return Err(CohomologyError::BadClass);
        }
        let coords = crate::groupkit::abelian::reduced(coords.to_vec(), self.h2.factors());
        let z = self.h2.lift(&coords);
        let representative = self.from_vector(&self.z2.element(&z));
        Ok(CohomologyClass { coords, representative })
    }

    pub fn zero_class(&self) -> CohomologyClass {
        self.class_from_coords(&vec![0; self.h2.factors().len()]).unwrap()
    }

    pub fn add_classes(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        let coords = crate::groupkit::abelian::add_vec(&x.coords, &y.coords, self.h2.factors());
        CohomologyClass { coords, representative: self.module.fs_add(&x.representative, &y.representative) }
    }

    pub fn sub_classes(&self, x: &CohomologyClass, y: &CohomologyClass) -> CohomologyClass {
        let coords = crate::groupkit::abelian::sub_vec(&x.coords, &y.coords, self.h2.factors());
        CohomologyClass { coords, representative: self.module.fs_sub(&x.representative, &y.representative) }
    }

    /// One representative per class, in class-coordinate order.
    pub fn class_representatives(&self) -> Vec<CohomologyClass> {
        crate::groupkit::abelian::all_vectors(self.h2.factors())
            .iter()
            .map(|c| self.class_from_coords(c).unwrap())
            .collect()
    }

    pub fn z1_elements(&self) -> Vec<OneCochain> {
        self.z1.elements().iter().map(|v| one_cochain_from_vector(&self.module, &self.c1, v)).collect()
    }

    pub fn z2_elements(&self) -> Vec<FactorSystem> {
        self.z2.elements().iter().map(|v| self.from_vector(v)).collect()
    }
}

/// Classical `H^2(A, K)` for a right action `mu` (`mu[a]` a permutation of
/// K, `mu_{a1 a2} = mu_{a2} mu_{a1}`), computed by the `tau1` block alone:
/// the module over `(A, 1, trivial, 0)` with kernel `(K, 1, trivial, 0)`
/// has every other block empty.
pub fn classical_h2_check(
    a: &crate::groupkit::FiniteGroup,
    k: &crate::groupkit::FiniteGroup,
    mu: Vec<Vec<usize>>,
) -> Result<Cokernel, crate::module::ModuleError> {
    use crate::module::ActionQuadruple;
    use crate::rrb::RRBGroup;
    let one = crate::groupkit::FiniteGroup::trivial();
    let quotient = RRBGroup::trivial_action(a, &one, vec![0; a.order()]).expect("zero operator is valid");
    let kernel = RRBGroup::trivial_action(k, &one, vec![0; k.order()]).expect("zero operator is valid");
    let mut action = ActionQuadruple::trivial(a.order(), 1, k.order(), 1);
    action.mu = mu;
    let module = Module::new(&quotient, &kernel, action)?;
    Ok(Cohomology::new(&module).h2().clone())
}
