//! Relative Rota-Baxter groups `(H, G, phi, R)` on finite groups.
//!
//! `phi` is stored as one permutation of `H` per element of `G`, and
//! `phi[g1 g2] = phi[g1] . phi[g2]` as functions. The operator satisfies
//! `R(h1) R(h2) = R(h1 phi_{R(h1)}(h2))`.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::groupkit::{
    automorphism_group, direct_product, homomorphisms, is_subgroup, normality_witness, quotient_group,
    FiniteGroup, GroupError, GroupHom,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RrbError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("phi has {got} entries, expected one per element of G ({expected})")]
    PhiShape { expected: usize, got: usize },
    #[error("R has {got} entries, expected one per element of H ({expected})")]
    RShape { expected: usize, got: usize },
    #[error("phi_{0} is not an automorphism of H")]
    PhiNotAutomorphism(usize),
    #[error("phi is not a homomorphism at ({0}, {1})")]
    PhiNotAction(usize, usize),
    #[error("R({0}) is out of range")]
    ROutOfRange(usize),
    #[error("Rota-Baxter axiom fails at ({0}, {1})")]
    RRBAxiomFails(usize, usize),
    #[error("eta(R(h)) != S(psi(h)) at h = {0}")]
    EtaRNeqSPsi(usize),
    #[error("psi phi_g != phi'_eta(g) psi at (g, h) = ({0}, {1})")]
    EquivarianceFails(usize, usize),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("not an ideal: {0:?}")]
    NotIdeal(SubViolation),
    #[error("induced quotient map is not well defined: {0}")]
    WellDefinednessFailure(String),
    #[error("enumeration budget of {0} evaluations exceeded")]
    BudgetExceeded(u64),
}

/// First failed condition when testing a pair of subsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubViolation {
    /// `phi_l(k)` leaves K for some `l` in L.
    LActionLeavesK { l: usize, k: usize },
    /// `R(k)` is not in L.
    RLeavesL { k: usize },
    KNotNormal { h: usize, k: usize },
    LNotNormal { g: usize, l: usize },
    /// `phi_g(k)` leaves K.
    GActionLeavesK { g: usize, k: usize },
    /// `phi_l(h) h^-1` is not in K.
    DisplacementLeavesK { l: usize, h: usize },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBGroup {
    h: FiniteGroup,
    g: FiniteGroup,
    phi: Vec<Vec<usize>>,
    r: Vec<usize>,
}

impl RRBGroup {
    pub fn h(&self) -> &FiniteGroup {
        &self.h
    }

    pub fn g(&self) -> &FiniteGroup {
        &self.g
    }

    /// `phi_g` as a permutation of H.
    pub fn phi(&self, g: usize) -> &[usize] {
        &self.phi[g]
    }

    pub fn phi_table(&self) -> &[Vec<usize>] {
        &self.phi
    }

    pub fn act(&self, g: usize, x: usize) -> usize {
        self.phi[g][x]
    }

    pub fn r(&self, x: usize) -> usize {
        self.r[x]
    }

    pub fn r_map(&self) -> &[usize] {
        &self.r
    }

    /// `(H, G)` with trivial action and the given operator.
    pub fn trivial_action(h: &FiniteGroup, g: &FiniteGroup, r: Vec<usize>) -> Result<Self, RrbError> {
        let id: Vec<usize> = h.elements().collect();
        validate_rrb(h, g, vec![id; g.order()], r)
    }

    /// The one-point RRB group.
    pub fn one_point() -> Self {
        let t = FiniteGroup::trivial();
        RRBGroup { h: t.clone(), g: t, phi: vec![vec![0]], r: vec![0] }
    }

    /// `h1 . phi_{R(h1)}(h2)`.
    pub fn circ(&self, h1: usize, h2: usize) -> usize {
        self.h.mul(h1, self.act(self.r[h1], h2))
    }
}

fn first_action_failure(h: &FiniteGroup, g: &FiniteGroup, phi: &[Vec<usize>]) -> Result<(), RrbError> {
    for (x, p) in phi.iter().enumerate() {
        let ok = p.len() == h.order()
            && p.iter().all(|&y| y < h.order())
            && GroupHom::new(h, h, p.clone()).is_ok_and(|m| m.is_bijective());
        if !ok {
            return Err(RrbError::PhiNotAutomorphism(x));
        }
    }
    for g1 in g.elements() {
        for g2 in g.elements() {
            let lhs = &phi[g.mul(g1, g2)];
            if h.elements().any(|x| lhs[x] != phi[g1][phi[g2][x]]) {
                return Err(RrbError::PhiNotAction(g1, g2));
            }
        }
    }
    Ok(())
}

/// Checks shapes, that `phi` is a homomorphism into `Aut(H)`, and the
/// Rota-Baxter axiom, reporting the first failure.
pub fn validate_rrb(
    h: &FiniteGroup,
    g: &FiniteGroup,
    phi: Vec<Vec<usize>>,
    r: Vec<usize>,
) -> Result<RRBGroup, RrbError> {
    if phi.len() != g.order() {
        return Err(RrbError::PhiShape { expected: g.order(), got: phi.len() });
    }
    if r.len() != h.order() {
        return Err(RrbError::RShape { expected: h.order(), got: r.len() });
    }
    first_action_failure(h, g, &phi)?;
    if let Some(x) = r.iter().position(|&y| y >= g.order()) {
        return Err(RrbError::ROutOfRange(x));
    }
    for h1 in h.elements() {
        for h2 in h.elements() {
            let lhs = g.mul(r[h1], r[h2]);
            let rhs = r[h.mul(h1, phi[r[h1]][h2])];
            if lhs != rhs {
                return Err(RrbError::RRBAxiomFails(h1, h2));
            }
        }
    }
    Ok(RRBGroup { h: h.clone(), g: g.clone(), phi, r })
}

pub fn is_trivial(rrb: &RRBGroup) -> bool {
    rrb.phi.iter().all(|p| p.iter().enumerate().all(|(i, &x)| i == x))
}

pub fn is_bijective(rrb: &RRBGroup) -> bool {
    rrb.h.order() == rrb.g.order() && rrb.r.iter().collect::<BTreeSet<_>>().len() == rrb.r.len()
}

/// The group `H` under `h1 o h2 = h1 phi_{R(h1)}(h2)`.
///
/// Panics if the result is not a group, which would mean `rrb` was not
/// actually valid.
pub fn descended_operation(rrb: &RRBGroup) -> FiniteGroup {
    let n = rrb.h.order();
    let flat = (0..n).flat_map(|a| (0..n).map(move |b| rrb.circ(a, b))).collect();
    FiniteGroup::from_flat(None, n, flat).expect("descended operation of a valid RRB group is a group")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBMorphism {
    pub source: RRBGroup,
    pub target: RRBGroup,
    pub psi: GroupHom,
    pub eta: GroupHom,
}

impl RRBMorphism {
    pub fn identity(rrb: &RRBGroup) -> Self {
        RRBMorphism {
            source: rrb.clone(),
            target: rrb.clone(),
            psi: GroupHom::identity(&rrb.h),
            eta: GroupHom::identity(&rrb.g),
        }
    }

    /// `self . other`.
    pub fn compose(&self, other: &RRBMorphism) -> RRBMorphism {
        RRBMorphism {
            source: other.source.clone(),
            target: self.target.clone(),
            psi: self.psi.compose(&other.psi),
            eta: self.eta.compose(&other.eta),
        }
    }

    pub fn inverse(&self) -> Option<RRBMorphism> {
        Some(RRBMorphism {
            source: self.target.clone(),
            target: self.source.clone(),
            psi: self.psi.inverse()?,
            eta: self.eta.inverse()?,
        })
    }

    pub fn is_isomorphism(&self) -> bool {
        self.psi.is_bijective() && self.eta.is_bijective()
    }
}

/// Checks that `(psi, eta)` are homomorphisms with `eta R = S psi` and
/// `psi phi_g = phi'_{eta(g)} psi`.
pub fn validate_morphism(
    src: &RRBGroup,
    dst: &RRBGroup,
    psi: Vec<usize>,
    eta: Vec<usize>,
) -> Result<RRBMorphism, RrbError> {
    let psi = GroupHom::new(&src.h, &dst.h, psi)?;
    let eta = GroupHom::new(&src.g, &dst.g, eta)?;
    if let Some(x) = src.h.elements().find(|&x| eta.apply(src.r(x)) != dst.r(psi.apply(x))) {
        return Err(RrbError::EtaRNeqSPsi(x));
    }
    for g in src.g.elements() {
        let eg = eta.apply(g);
        if let Some(x) = src.h.elements().find(|&x| psi.apply(src.act(g, x)) != dst.act(eg, psi.apply(x))) {
            return Err(RrbError::EquivarianceFails(g, x));
        }
    }
    Ok(RRBMorphism { source: src.clone(), target: dst.clone(), psi, eta })
}

/// A pair of subsets `(K, L)` of `(H, G)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RRBIdeal {
    pub k_elements: Vec<usize>,
    pub l_elements: Vec<usize>,
}

impl RRBIdeal {
    pub fn new(mut k: Vec<usize>, mut l: Vec<usize>) -> Self {
        k.sort_unstable();
        k.dedup();
        l.sort_unstable();
        l.dedup();
        RRBIdeal { k_elements: k, l_elements: l }
    }

    pub fn zero() -> Self {
        RRBIdeal::new(vec![0], vec![0])
    }

    pub fn whole(rrb: &RRBGroup) -> Self {
        RRBIdeal::new(rrb.h.elements().collect(), rrb.g.elements().collect())
    }
}

pub fn morphism_kernel(m: &RRBMorphism) -> RRBIdeal {
    RRBIdeal::new(m.psi.kernel(), m.eta.kernel())
}

/// The image as a sub-RRB group of the target, given by its element sets.
pub fn morphism_image(m: &RRBMorphism) -> RRBIdeal {
    RRBIdeal::new(m.psi.image_set(), m.eta.image_set())
}

fn membership(n: usize, elements: &[usize]) -> Vec<bool> {
    let mut v = vec![false; n];
    for &x in elements {
        v[x] = true;
    }
    v
}

fn ensure_subgroups(rrb: &RRBGroup, k: &[usize], l: &[usize]) -> Result<(Vec<bool>, Vec<bool>), RrbError> {
    let in_range = k.iter().all(|&x| x < rrb.h.order()) && l.iter().all(|&x| x < rrb.g.order());
    if !in_range || !is_subgroup(&rrb.h, k) || !is_subgroup(&rrb.g, l) {
        return Err(RrbError::NotSubgroup);
    }
    Ok((membership(rrb.h.order(), k), membership(rrb.g.order(), l)))
}

fn sub_violation(rrb: &RRBGroup, in_k: &[bool], in_l: &[bool], k: &[usize], l: &[usize]) -> Option<SubViolation> {
    for &ll in l {
        if let Some(&kk) = k.iter().find(|&&kk| !in_k[rrb.act(ll, kk)]) {
            return Some(SubViolation::LActionLeavesK { l: ll, k: kk });
        }
    }
    if let Some(&kk) = k.iter().find(|&&kk| !in_l[rrb.r(kk)]) {
        return Some(SubViolation::RLeavesL { k: kk });
    }
    None
}

/// First failed sub-RRB condition, or `None`.
pub fn check_subrrb(rrb: &RRBGroup, k: &[usize], l: &[usize]) -> Result<Option<SubViolation>, RrbError> {
    let (in_k, in_l) = ensure_subgroups(rrb, k, l)?;
    Ok(sub_violation(rrb, &in_k, &in_l, k, l))
}

pub fn is_subrrb(rrb: &RRBGroup, k: &[usize], l: &[usize]) -> Result<bool, RrbError> {
    Ok(check_subrrb(rrb, k, l)?.is_none())
}

/// First failed ideal condition, or `None`.
pub fn check_ideal(rrb: &RRBGroup, k: &[usize], l: &[usize]) -> Result<Option<SubViolation>, RrbError> {
    let (in_k, in_l) = ensure_subgroups(rrb, k, l)?;
    if let Some(v) = sub_violation(rrb, &in_k, &in_l, k, l) {
        return Ok(Some(v));
    }
    if let Some((h, kk)) = normality_witness(&rrb.h, k) {
        return Ok(Some(SubViolation::KNotNormal { h, k: kk }));
    }
    if let Some((g, ll)) = normality_witness(&rrb.g, l) {
        return Ok(Some(SubViolation::LNotNormal { g, l: ll }));
    }
    for g in rrb.g.elements() {
        if let Some(&kk) = k.iter().find(|&&kk| !in_k[rrb.act(g, kk)]) {
            return Ok(Some(SubViolation::GActionLeavesK { g, k: kk }));
        }
    }
    for &ll in l {
        for h in rrb.h.elements() {
            if !in_k[rrb.h.mul(rrb.act(ll, h), rrb.h.inv(h))] {
                return Ok(Some(SubViolation::DisplacementLeavesK { l: ll, h }));
            }
        }
    }
    Ok(None)
}

pub fn is_ideal(rrb: &RRBGroup, k: &[usize], l: &[usize]) -> Result<bool, RrbError> {
    Ok(check_ideal(rrb, k, l)?.is_none())
}

/// Restriction `(K, L, phi|, R|)` of a sub-RRB pair, relabelled on
/// `0..|K|` and `0..|L|` in increasing element order.
pub fn restrict(rrb: &RRBGroup, sub: &RRBIdeal) -> Result<(RRBGroup, RRBMorphism), RrbError> {
    if let Some(v) = check_subrrb(rrb, &sub.k_elements, &sub.l_elements)? {
        return Err(RrbError::NotIdeal(v));
    }
    let (k, l) = (&sub.k_elements, &sub.l_elements);
    let k_index = |x: usize| k.binary_search(&x).unwrap();
    let l_index = |x: usize| l.binary_search(&x).unwrap();
    let kt: Vec<Vec<usize>> = k.iter().map(|&a| k.iter().map(|&b| k_index(rrb.h.mul(a, b))).collect()).collect();
    let lt: Vec<Vec<usize>> = l.iter().map(|&a| l.iter().map(|&b| l_index(rrb.g.mul(a, b))).collect()).collect();
    let kg = FiniteGroup::from_table(&kt)?;
    let lg = FiniteGroup::from_table(&lt)?;
    let phi = l.iter().map(|&ll| k.iter().map(|&kk| k_index(rrb.act(ll, kk))).collect()).collect();
    let r = k.iter().map(|&kk| l_index(rrb.r(kk))).collect();
    let restricted = validate_rrb(&kg, &lg, phi, r)?;
    let incl = validate_morphism(&restricted, rrb, k.clone(), l.clone())?;
    Ok((restricted, incl))
}

/// Quotient by an ideal with the induced action and operator on the
/// canonical (minimum-index) coset representatives.
pub fn quotient_rrb(rrb: &RRBGroup, ideal: &RRBIdeal) -> Result<(RRBGroup, RRBMorphism), RrbError> {
    if let Some(v) = check_ideal(rrb, &ideal.k_elements, &ideal.l_elements)? {
        return Err(RrbError::NotIdeal(v));
    }
    let qh = quotient_group(&rrb.h, &ideal.k_elements)?;
    let qg = quotient_group(&rrb.g, &ideal.l_elements)?;
    let (ph, pg) = (&qh.projection, &qg.projection);
    let phi: Vec<Vec<usize>> = qg
        .section
        .iter()
        .map(|&g| qh.section.iter().map(|&x| ph.apply(rrb.act(g, x))).collect())
        .collect();
    let r: Vec<usize> = qh.section.iter().map(|&x| pg.apply(rrb.r(x))).collect();
    for g in rrb.g.elements() {
        for x in rrb.h.elements() {
            if ph.apply(rrb.act(g, x)) != phi[pg.apply(g)][ph.apply(x)] {
                return Err(RrbError::WellDefinednessFailure(format!("phi at ({g}, {x})")));
            }
        }
    }
    for x in rrb.h.elements() {
        if pg.apply(rrb.r(x)) != r[ph.apply(x)] {
            return Err(RrbError::WellDefinednessFailure(format!("R at {x}")));
        }
    }
    let quotient = validate_rrb(&qh.group, &qg.group, phi, r)?;
    let proj = validate_morphism(rrb, &quotient, ph.image.clone(), pg.image.clone())?;
    Ok((quotient, proj))
}

/// `(Z(H) ∩ {h : phi_{R(h)} = id} ∩ Fix(phi), ker phi)`.
pub fn center(rrb: &RRBGroup) -> RRBIdeal {
    let trivial_phi = |g: usize| rrb.phi[g].iter().enumerate().all(|(i, &x)| i == x);
    let center_h = rrb.h.center();
    let k = center_h
        .into_iter()
        .filter(|&x| trivial_phi(rrb.r(x)) && rrb.g.elements().all(|g| rrb.act(g, x) == x))
        .collect();
    let l = rrb.g.elements().filter(|&g| trivial_phi(g)).collect();
    RRBIdeal::new(k, l)
}

/// `(H1 x H2, G1 x G2, phi1 x phi2, R1 x R2)` with the pair encoding.
pub fn direct_product_rrb(a: &RRBGroup, b: &RRBGroup) -> RRBGroup {
    let hp = direct_product(&a.h, &b.h);
    let gp = direct_product(&a.g, &b.g);
    let (nh, ng) = (b.h.order(), b.g.order());
    let phi = gp
        .group
        .elements()
        .map(|g| {
            let (g1, g2) = (g / ng, g % ng);
            hp.group.elements().map(|x| a.act(g1, x / nh) * nh + b.act(g2, x % nh)).collect()
        })
        .collect();
    let r = hp.group.elements().map(|x| a.r(x / nh) * ng + b.r(x % nh)).collect();
    validate_rrb(&hp.group, &gp.group, phi, r).expect("product of valid RRB groups is valid")
}

fn morphism_key(m: &RRBMorphism) -> (Vec<usize>, Vec<usize>) {
    (m.psi.image.clone(), m.eta.image.clone())
}

/// All RRB automorphisms, sorted by `(psi, eta)` image arrays.
pub fn rrb_automorphism_group(rrb: &RRBGroup, max_order: usize) -> Result<Vec<RRBMorphism>, RrbError> {
    let auth = automorphism_group(&rrb.h, max_order)?;
    let autg = automorphism_group(&rrb.g, max_order)?;
    let mut out = Vec::new();
    for psi in &auth {
        for eta in &autg {
            if let Ok(m) = validate_morphism(rrb, rrb, psi.image.clone(), eta.image.clone()) {
                out.push(m);
            }
        }
    }
    out.sort_by_key(morphism_key);
    Ok(out)
}

/// Counts axiom evaluations against an optional cap.
struct Budget {
    used: u64,
    cap: Option<u64>,
}

impl Budget {
    fn spend(&mut self, n: u64) -> Result<(), RrbError> {
        self.used += n;
        match self.cap {
            Some(c) if self.used > c => Err(RrbError::BudgetExceeded(c)),
            _ => Ok(()),
        }
    }
}

/// Fills in every value the axiom forces from the current partial
/// assignment; `Ok(false)` on a contradiction.
fn propagate(
    h: &FiniteGroup,
    g: &FiniteGroup,
    phi: &[Vec<usize>],
    r: &mut [Option<usize>],
    budget: &mut Budget,
) -> Result<bool, RrbError> {
    loop {
        let mut changed = false;
        for h1 in h.elements() {
            let Some(r1) = r[h1] else { continue };
            for h2 in h.elements() {
                let Some(r2) = r[h2] else { continue };
                budget.spend(1)?;
                let target = h.mul(h1, phi[r1][h2]);
                let value = g.mul(r1, r2);
                match r[target] {
                    Some(v) if v != value => return Ok(false),
                    Some(_) => {}
                    None => {
                        r[target] = Some(value);
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            return Ok(true);
        }
    }
}

fn search_operators(
    h: &FiniteGroup,
    g: &FiniteGroup,
    phi: &[Vec<usize>],
    r: Vec<Option<usize>>,
    budget: &mut Budget,
    out: &mut Vec<Vec<usize>>,
) -> Result<(), RrbError> {
    let Some(next) = r.iter().position(Option::is_none) else {
        out.push(r.into_iter().map(Option::unwrap).collect());
        return Ok(());
    };
    for value in g.elements() {
        let mut trial = r.clone();
        trial[next] = Some(value);
        if propagate(h, g, phi, &mut trial, budget)? {
            search_operators(h, g, phi, trial, budget, out)?;
        }
    }
    Ok(())
}

/// Every operator `R` making `(H, G, phi, R)` an RRB group, sorted.
///
/// `phi` must be a valid action. Assigns `R(0) = 0` and then branches on
/// the first unassigned element, propagating the axiom after each choice.
/// `budget` caps the number of axiom evaluations.
pub fn enumerate_rrb_operators(
    h: &FiniteGroup,
    g: &FiniteGroup,
    phi: &[Vec<usize>],
    budget: Option<u64>,
) -> Result<Vec<Vec<usize>>, RrbError> {
    if phi.len() != g.order() {
        return Err(RrbError::PhiShape { expected: g.order(), got: phi.len() });
    }
    first_action_failure(h, g, phi)?;
    let mut budget = Budget { used: 0, cap: budget };
    let mut r = vec![None; h.order()];
    r[0] = Some(0);
    let mut out = Vec::new();
    if propagate(h, g, phi, &mut r, &mut budget)? {
        search_operators(h, g, phi, r, &mut budget, &mut out)?;
    }
    out.sort();
    Ok(out)
}

/// Bijective group homomorphisms between two groups of equal order.
pub fn isomorphisms(a: &FiniteGroup, b: &FiniteGroup) -> Vec<GroupHom> {
    if a.order() != b.order() {
        return Vec::new();
    }
    homomorphisms(a, b).into_iter().filter(GroupHom::is_bijective).collect()
}

/// Some RRB isomorphism `a -> b`, by search over group isomorphism pairs.
pub fn find_rrb_isomorphism(a: &RRBGroup, b: &RRBGroup) -> Option<RRBMorphism> {
    let hs = isomorphisms(&a.h, &b.h);
    if hs.is_empty() {
        return None;
    }
    let gs = isomorphisms(&a.g, &b.g);
    for psi in &hs {
        for eta in &gs {
            if let Ok(m) = validate_morphism(a, b, psi.image.clone(), eta.image.clone()) {
                return Some(m);
            }
        }
    }
    None
}

/// `Aut(H)` as a table group with the identity at index 0, together with
/// the automorphism for each index. The product is composition.
pub fn automorphism_table_group(h: &FiniteGroup, max_order: usize) -> Result<(FiniteGroup, Vec<GroupHom>), RrbError> {
    let auts = automorphism_group(h, max_order)?;
    let index = |m: &GroupHom| auts.binary_search_by(|x| x.image.cmp(&m.image)).unwrap();
    let table: Vec<Vec<usize>> = auts.iter().map(|a| auts.iter().map(|b| index(&a.compose(b))).collect()).collect();
    Ok((FiniteGroup::from_table(&table)?, auts))
}

/// Every action `G -> Aut(H)` as a permutation table, sorted.
pub fn enumerate_actions(h: &FiniteGroup, g: &FiniteGroup, max_order: usize) -> Result<Vec<Vec<Vec<usize>>>, RrbError> {
    let (autg, auts) = automorphism_table_group(h, max_order)?;
    let mut out: Vec<Vec<Vec<usize>>> = homomorphisms(g, &autg)
        .iter()
        .map(|m| g.elements().map(|x| auts[m.apply(x)].image.clone()).collect())
        .collect();
    out.sort();
    Ok(out)
}

/// All RRB groups on the given `(H, G)` pairs: every action and every
/// operator. Used as a test corpus.
pub fn rrb_corpus(pairs: &[(FiniteGroup, FiniteGroup)], budget: Option<u64>) -> Result<Vec<RRBGroup>, RrbError> {
    let mut out = Vec::new();
    for (h, g) in pairs {
        for phi in enumerate_actions(h, g, crate::groupkit::DEFAULT_MAX_ORDER)? {
            for r in enumerate_rrb_operators(h, g, &phi, budget)? {
                out.push(RRBGroup { h: h.clone(), g: g.clone(), phi: phi.clone(), r });
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inversion_phi() -> Vec<Vec<usize>> {
        vec![vec![0, 1, 2], vec![0, 2, 1]]
    }

    #[test]
    fn trivial_phi_with_identity_operator() {
        let z2 = FiniteGroup::cyclic(2);
        let rrb = RRBGroup::trivial_action(&z2, &z2, vec![0, 1]).unwrap();
        assert!(is_trivial(&rrb));
        assert!(is_bijective(&rrb));
    }

    #[test]
    fn zero_operator_always_valid() {
        let (z3, z2) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        let rrb = validate_rrb(&z3, &z2, inversion_phi(), vec![0; 3]).unwrap();
        assert!(!is_bijective(&rrb));
        assert!(!is_trivial(&rrb));
        assert_eq!(descended_operation(&rrb), z3);
    }

    #[test]
    fn error_kinds() {
        let (z3, z2) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        assert_eq!(
            validate_rrb(&z3, &z2, vec![vec![0, 1, 2], vec![0, 1, 1]], vec![0; 3]),
            Err(RrbError::PhiNotAutomorphism(1))
        );
        let z4 = FiniteGroup::cyclic(4);
        let v4 = FiniteGroup::klein();
        // phi_1 = phi_3 = swap of 1 and 2 is fine on Z4 -> Aut(V4)? phi_1 . phi_1 must equal phi_2 = id
        let swap = vec![0, 2, 1, 3];
        let id = vec![0, 1, 2, 3];
        assert_eq!(
            validate_rrb(&v4, &z4, vec![id.clone(), swap.clone(), swap.clone(), swap], vec![0; 4]),
            Err(RrbError::PhiNotAction(1, 1))
        );
        assert_eq!(
            validate_rrb(&z2.clone(), &z2, vec![vec![0, 1]; 2], vec![1, 0]),
            Err(RrbError::RRBAxiomFails(0, 0))
        );
        assert!(matches!(validate_rrb(&z3, &z2, vec![], vec![0; 3]), Err(RrbError::PhiShape { .. })));
    }

    #[test]
    fn quotient_by_zero_and_whole() {
        let (z3, z2) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        let rrb = validate_rrb(&z3, &z2, inversion_phi(), vec![0; 3]).unwrap();
        let (q, proj) = quotient_rrb(&rrb, &RRBIdeal::zero()).unwrap();
        assert!(find_rrb_isomorphism(&rrb, &q).is_some());
        assert_eq!(morphism_kernel(&proj), RRBIdeal::zero());
        let (q, _) = quotient_rrb(&rrb, &RRBIdeal::whole(&rrb)).unwrap();
        assert_eq!(q.h().order(), 1);
        assert_eq!(q.g().order(), 1);
    }

    #[test]
    fn non_ideal_is_rejected() {
        let (z3, z2) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        let rrb = validate_rrb(&z3, &z2, inversion_phi(), vec![0; 3]).unwrap();
        // phi_1(h) h^-1 = -2h, which is nonzero for h = 1
        assert_eq!(
            check_ideal(&rrb, &[0], &[0, 1]).unwrap(),
            Some(SubViolation::DisplacementLeavesK { l: 1, h: 1 })
        );
        assert!(matches!(quotient_rrb(&rrb, &RRBIdeal::new(vec![0], vec![0, 1])), Err(RrbError::NotIdeal(_))));
        assert_eq!(check_ideal(&rrb, &[0, 1], &[0]), Err(RrbError::NotSubgroup));
    }

    #[test]
    fn center_examples() {
        let v4 = FiniteGroup::klein();
        let z2 = FiniteGroup::cyclic(2);
        let rrb = RRBGroup::trivial_action(&v4, &z2, vec![0, 1, 0, 1]).unwrap();
        assert_eq!(center(&rrb), RRBIdeal::whole(&rrb));
        let (z3, z2) = (FiniteGroup::cyclic(3), FiniteGroup::cyclic(2));
        let rrb = validate_rrb(&z3, &z2, inversion_phi(), vec![0; 3]).unwrap();
        // faithful action, no fixed points besides 0
        assert_eq!(center(&rrb), RRBIdeal::zero());
    }

    #[test]
    fn automorphisms_of_trivial_pair() {
        let z2 = FiniteGroup::cyclic(2);
        let rrb = RRBGroup::trivial_action(&z2, &z2, vec![0, 0]).unwrap();
        assert_eq!(rrb_automorphism_group(&rrb, 64).unwrap().len(), 1);
    }

    #[test]
    fn operators_for_trivial_z2() {
        let z2 = FiniteGroup::cyclic(2);
        let ops = enumerate_rrb_operators(&z2, &z2, &[vec![0, 1], vec![0, 1]], None).unwrap();
        assert_eq!(ops, vec![vec![0, 0], vec![0, 1]]);
    }

    #[test]
    fn budget_is_enforced() {
        let z4 = FiniteGroup::cyclic(4);
        let id: Vec<usize> = (0..4).collect();
        assert_eq!(
            enumerate_rrb_operators(&z4, &z4, &vec![id; 4], Some(5)),
            Err(RrbError::BudgetExceeded(5))
        );
    }

    #[test]
    fn actions_of_z2_on_z3() {
        let acts = enumerate_actions(&FiniteGroup::cyclic(3), &FiniteGroup::cyclic(2), 64).unwrap();
        assert_eq!(acts, vec![vec![vec![0, 1, 2], vec![0, 1, 2]], inversion_phi()]);
    }
}
