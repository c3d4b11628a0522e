//! Compatible pairs, their action on factor systems and classes, the Wells
//! map, and the exact sequence relating automorphisms of an abelian
//! extension to automorphisms of its quotient and kernel.
//!
//! Pairs act on the right: `fs^(psi, theta) = theta^-1 . fs . psi`, so the
//! product is `(psi, theta)(psi', theta') = (psi psi', theta theta')`.
//! With `[E(fs)]^c = [E(fs^c)]` and translation `[E(fs)]^t = [E(fs + t)]`,
//! the Wells map is `omega(c) = [fs^c] - [fs]`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cohomology::{Cohomology, CohomologyClass};
use crate::extension::{canonical_section, extract_factor_system, module_of, Extension, ExtensionError, Section};
use crate::module::{ActionQuadruple, FactorSystem, Module, ModuleError, OneCochain};
use crate::rrb::{rrb_automorphism_group, validate_morphism, RRBGroup, RRBMorphism, RrbError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WellsError {
    #[error(transparent)]
    Rrb(#[from] RrbError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("pair is not compatible with the module")]
    PairNotCompatible,
    #[error("pair is not a pair of automorphisms")]
    PairNotAutomorphism,
    #[error("classes belong to different modules")]
    ModuleMismatch,
    #[error("1-cochain is not a derivation")]
    NotInZ1,
    #[error("automorphism does not normalize the kernel")]
    NotNormalizing,
    #[error("automorphism does not act trivially on quotient and kernel")]
    NotInAutAK,
}

/// `(psi, theta)` in `Aut(A) x Aut(K)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatiblePair {
    pub psi: RRBMorphism,
    pub theta: RRBMorphism,
}

pub type PairKey = (Vec<usize>, Vec<usize>, Vec<usize>, Vec<usize>);

impl CompatiblePair {
    /// Validates both components as RRB automorphisms.
    pub fn new(
        quotient: &RRBGroup,
        kernel: &RRBGroup,
        psi: (Vec<usize>, Vec<usize>),
        theta: (Vec<usize>, Vec<usize>),
    ) -> Result<Self, WellsError> {
        let psi = validate_morphism(quotient, quotient, psi.0, psi.1).map_err(|_| WellsError::PairNotAutomorphism)?;
        let theta = validate_morphism(kernel, kernel, theta.0, theta.1).map_err(|_| WellsError::PairNotAutomorphism)?;
        if !psi.is_isomorphism() || !theta.is_isomorphism() {
            return Err(WellsError::PairNotAutomorphism);
        }
        Ok(CompatiblePair { psi, theta })
    }

    pub fn identity(module: &Module) -> Self {
        CompatiblePair {
            psi: RRBMorphism::identity(module.quotient()),
            theta: RRBMorphism::identity(module.kernel()),
        }
    }

    pub fn compose(&self, other: &CompatiblePair) -> CompatiblePair {
        CompatiblePair { psi: self.psi.compose(&other.psi), theta: self.theta.compose(&other.theta) }
    }

    pub fn inverse(&self) -> CompatiblePair {
        CompatiblePair {
            psi: self.psi.inverse().expect("automorphism"),
            theta: self.theta.inverse().expect("automorphism"),
        }
    }

    pub fn key(&self) -> PairKey {
        (
            self.psi.psi.image.clone(),
            self.psi.eta.image.clone(),
            self.theta.psi.image.clone(),
            self.theta.eta.image.clone(),
        )
    }

    pub fn is_identity(&self) -> bool {
        let id = |v: &[usize]| v.iter().enumerate().all(|(i, &x)| i == x);
        id(&self.psi.psi.image) && id(&self.psi.eta.image) && id(&self.theta.psi.image) && id(&self.theta.eta.image)
    }

    fn psi1(&self, a: usize) -> usize {
        self.psi.psi.apply(a)
    }

    fn psi2(&self, b: usize) -> usize {
        self.psi.eta.apply(b)
    }

    fn theta1(&self, k: usize) -> usize {
        self.theta.psi.apply(k)
    }

    fn theta2(&self, l: usize) -> usize {
        self.theta.eta.apply(l)
    }
}

/// `theta1 nu_b = nu_{psi2 b} theta1`, `theta1 mu_a = mu_{psi1 a} theta1`,
/// `theta2 sigma_b = sigma_{psi2 b} theta2`, `theta1 f(l,a) = f(theta2 l, psi1 a)`.
pub fn is_compatible(module: &Module, pair: &CompatiblePair) -> bool {
    let (na, nb, nk, nl) = module.shape();
    let nu_ok = (0..nb).all(|b| (0..nk).all(|k| pair.theta1(module.nu(b, k)) == module.nu(pair.psi2(b), pair.theta1(k))));
    let mu_ok = (0..na).all(|a| (0..nk).all(|k| pair.theta1(module.mu(a, k)) == module.mu(pair.psi1(a), pair.theta1(k))));
    let sigma_ok =
        (0..nb).all(|b| (0..nl).all(|l| pair.theta2(module.sigma(b, l)) == module.sigma(pair.psi2(b), pair.theta2(l))));
    let f_ok =
        (0..nl).all(|l| (0..na).all(|a| pair.theta1(module.f(l, a)) == module.f(pair.theta2(l), pair.psi1(a))));
    nu_ok && mu_ok && sigma_ok && f_ok
}

/// `Aut(A) x Aut(K)`, sorted by key.
pub fn all_pairs(module: &Module, max_order: usize) -> Result<Vec<CompatiblePair>, WellsError> {
    let aut_a = rrb_automorphism_group(module.quotient(), max_order)?;
    let aut_k = rrb_automorphism_group(module.kernel(), max_order)?;
    let mut out = Vec::with_capacity(aut_a.len() * aut_k.len());
    for psi in &aut_a {
        for theta in &aut_k {
            out.push(CompatiblePair { psi: psi.clone(), theta: theta.clone() });
        }
    }
    Ok(out)
}

/// The subgroup `C` of compatible pairs, sorted by key.
pub fn compatible_pairs(module: &Module, max_order: usize) -> Result<Vec<CompatiblePair>, WellsError> {
    let pairs: Vec<CompatiblePair> =
        all_pairs(module, max_order)?.into_iter().filter(|p| is_compatible(module, p)).collect();
    debug_assert!(pairs.len() > 64 || is_closed(&pairs), "compatible pairs must form a subgroup");
    Ok(pairs)
}

/// Closure of a set of pairs under products and inverses.
pub fn is_closed(pairs: &[CompatiblePair]) -> bool {
    let keys: BTreeSet<PairKey> = pairs.iter().map(CompatiblePair::key).collect();
    pairs.iter().all(|p| {
        keys.contains(&p.inverse().key()) && pairs.iter().all(|q| keys.contains(&p.compose(q).key()))
    })
}

fn twist(module: &Module, fs: &FactorSystem, psi: &RRBMorphism, theta_inv: &RRBMorphism) -> FactorSystem {
    let (na, nb, _, _) = module.shape();
    let p1 = |a: usize| psi.psi.apply(a);
    let p2 = |b: usize| psi.eta.apply(b);
    let t1 = |k: usize| theta_inv.psi.apply(k);
    let t2 = |l: usize| theta_inv.eta.apply(l);
    FactorSystem {
        tau1: (0..na).map(|x| (0..na).map(|y| t1(fs.tau1[p1(x)][p1(y)])).collect()).collect(),
        tau2: (0..nb).map(|x| (0..nb).map(|y| t2(fs.tau2[p2(x)][p2(y)])).collect()).collect(),
        rho: (0..na).map(|x| (0..nb).map(|y| t1(fs.rho[p1(x)][p2(y)])).collect()).collect(),
        chi: (0..na).map(|x| t2(fs.chi[p1(x)])).collect(),
    }
}

/// `fs^(psi, theta)`; defined for every pair, meaningful on `C`.
pub fn act_unchecked(module: &Module, pair: &CompatiblePair, fs: &FactorSystem) -> FactorSystem {
    twist(module, fs, &pair.psi, &pair.theta.inverse().expect("automorphism"))
}

pub fn act_on_factor_system(
    module: &Module,
    pair: &CompatiblePair,
    fs: &FactorSystem,
) -> Result<FactorSystem, WellsError> {
    if !is_compatible(module, pair) {
        return Err(WellsError::PairNotCompatible);
    }
    Ok(act_unchecked(module, pair, fs))
}

pub fn act_on_class(
    coh: &Cohomology,
    pair: &CompatiblePair,
    class: &CohomologyClass,
) -> Result<CohomologyClass, WellsError> {
    let fs = act_on_factor_system(coh.module(), pair, &class.representative)?;
    coh.class_of(&fs).map_err(|_| WellsError::ModuleMismatch)
}

/// `[E]^(c, h) = ([E]^c)^h` for `(c, h)` in `C x| H^2`.
pub fn gamma_act(
    coh: &Cohomology,
    pair: &CompatiblePair,
    h: &CohomologyClass,
    ext_class: &CohomologyClass,
) -> Result<CohomologyClass, WellsError> {
    if h.coords.len() != ext_class.coords.len() {
        return Err(WellsError::ModuleMismatch);
    }
    Ok(coh.add_classes(&act_on_class(coh, pair, ext_class)?, h))
}

/// Twisted module `K_psi = (nu psi2, mu psi1, sigma psi2, f(-, psi1 -))`.
pub fn twisted_module(module: &Module, psi: &RRBMorphism) -> Result<Module, WellsError> {
    if !psi.is_isomorphism() || psi.source != *module.quotient() || psi.target != *module.quotient() {
        return Err(WellsError::PairNotAutomorphism);
    }
    let act = module.action();
    let p1 = |a: usize| psi.psi.apply(a);
    let p2 = |b: usize| psi.eta.apply(b);
    let action = ActionQuadruple {
        nu: (0..module.nb()).map(|b| act.nu[p2(b)].clone()).collect(),
        mu: (0..module.na()).map(|a| act.mu[p1(a)].clone()).collect(),
        sigma: (0..module.nb()).map(|b| act.sigma[p2(b)].clone()).collect(),
        f: act.f.iter().map(|row| (0..module.na()).map(|a| row[p1(a)]).collect()).collect(),
    };
    Ok(Module::new(module.quotient(), module.kernel(), action)?)
}

/// Outcome of the inducibility test.
#[derive(Clone, Debug)]
pub struct Inducibility {
    pub inducible: bool,
    pub witness: Option<RRBMorphism>,
}

/// Everything the Wells sequence needs about one abelian extension,
/// evaluated against the canonical section.
#[derive(Clone, Debug)]
pub struct WellsContext {
    ext: Extension,
    module: Module,
    coh: Cohomology,
    section: Section,
    fs: FactorSystem,
    max_order: usize,
}

impl WellsContext {
    pub fn new(ext: &Extension, max_order: usize) -> Result<Self, WellsError> {
        let module = module_of(ext)?;
        let section = canonical_section(ext);
        let fs = extract_factor_system(ext, &section)?;
        let coh = Cohomology::new(&module);
        Ok(WellsContext { ext: ext.clone(), module, coh, section, fs, max_order })
    }

    pub fn extension(&self) -> &Extension {
        &self.ext
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn cohomology(&self) -> &Cohomology {
        &self.coh
    }

    pub fn factor_system(&self) -> &FactorSystem {
        &self.fs
    }

    pub fn compatible_pairs(&self) -> Result<Vec<CompatiblePair>, WellsError> {
        compatible_pairs(&self.module, self.max_order)
    }

    pub fn all_pairs(&self) -> Result<Vec<CompatiblePair>, WellsError> {
        all_pairs(&self.module, self.max_order)
    }

    pub fn class(&self) -> CohomologyClass {
        self.coh.class_of(&self.fs).expect("extracted factor system is a cocycle")
    }

    /// `omega(E)(c) = [fs^c] - [fs]`.
    pub fn wells_map(&self, pair: &CompatiblePair) -> Result<CohomologyClass, WellsError> {
        let moved = act_on_factor_system(&self.module, pair, &self.fs)?;
        let moved = self.coh.class_of(&moved).expect("C preserves cocycles");
        Ok(self.coh.sub_classes(&moved, &self.class()))
    }

    fn split_h(&self, sec: &Section, h: usize) -> (usize, usize) {
        let total = self.ext.total().h();
        let a = self.ext.proj().psi.apply(h);
        let k = self.ext.k_preimage(total.mul(total.inv(sec.s_h[a]), h)).expect("fibre lies over K");
        (a, k)
    }

    fn split_g(&self, sec: &Section, g: usize) -> (usize, usize) {
        let total = self.ext.total().g();
        let b = self.ext.proj().eta.apply(g);
        let l = self.ext.l_preimage(total.mul(total.inv(sec.s_g[b]), g)).expect("fibre lies over L");
        (b, l)
    }

    fn join_h(&self, a: usize, k: usize) -> usize {
        self.ext.total().h().mul(self.section.s_h[a], self.ext.incl().psi.apply(k))
    }

    fn join_g(&self, b: usize, l: usize) -> usize {
        self.ext.total().g().mul(self.section.s_g[b], self.ext.incl().eta.apply(l))
    }

    /// Automorphisms of the total group with `gamma1(K) = K`, `gamma2(L) = L`.
    pub fn aut_k_h(&self) -> Result<Vec<RRBMorphism>, WellsError> {
        let incl = self.ext.incl();
        let ks: Vec<usize> = incl.psi.image.clone();
        let ls: Vec<usize> = incl.eta.image.clone();
        Ok(rrb_automorphism_group(self.ext.total(), self.max_order)?
            .into_iter()
            .filter(|g| {
                ks.iter().all(|&k| self.ext.k_preimage(g.psi.apply(k)).is_some())
                    && ls.iter().all(|&l| self.ext.l_preimage(g.eta.apply(l)).is_some())
            })
            .collect())
    }

    /// `(gamma_A, gamma_K)` read off through `sec`.
    pub fn restrict_and_induce_with(&self, gamma: &RRBMorphism, sec: &Section) -> Result<CompatiblePair, WellsError> {
        let (na, nb, nk, nl) = self.module.shape();
        let proj = self.ext.proj();
        let incl = self.ext.incl();
        let psi1 = (0..na).map(|a| proj.psi.apply(gamma.psi.apply(sec.s_h[a]))).collect();
        let psi2 = (0..nb).map(|b| proj.eta.apply(gamma.eta.apply(sec.s_g[b]))).collect();
        let theta1 = (0..nk)
            .map(|k| self.ext.k_preimage(gamma.psi.apply(incl.psi.apply(k))).ok_or(WellsError::NotNormalizing))
            .collect::<Result<_, _>>()?;
        let theta2 = (0..nl)
            .map(|l| self.ext.l_preimage(gamma.eta.apply(incl.eta.apply(l))).ok_or(WellsError::NotNormalizing))
            .collect::<Result<_, _>>()?;
        let pair = CompatiblePair::new(self.ext.quotient(), self.ext.kernel(), (psi1, psi2), (theta1, theta2))?;
        debug_assert!(is_compatible(&self.module, &pair), "induced pairs are compatible");
        Ok(pair)
    }

    pub fn restrict_and_induce(&self, gamma: &RRBMorphism) -> Result<CompatiblePair, WellsError> {
        self.restrict_and_induce_with(gamma, &self.section)
    }

    /// Kernel of `restrict_and_induce`.
    pub fn aut_ak_h(&self) -> Result<Vec<RRBMorphism>, WellsError> {
        let mut out = Vec::new();
        for g in self.aut_k_h()? {
            if self.restrict_and_induce(&g)?.is_identity() {
                out.push(g);
            }
        }
        Ok(out)
    }

    /// `eta(kappa)`: `s_H(a) k -> s_H(a) kappa1(a) k`, likewise on G.
    pub fn z1_to_aut(&self, kappa: &OneCochain) -> Result<RRBMorphism, WellsError> {
        if !self.module.is_one_cocycle(kappa) {
            return Err(WellsError::NotInZ1);
        }
        let (nh, ng) = (self.ext.total().h().order(), self.ext.total().g().order());
        let m = &self.module;
        let psi = (0..nh)
            .map(|h| {
                let (a, k) = self.split_h(&self.section, h);
                self.join_h(a, m.kadd(kappa.kappa1[a], k))
            })
            .collect();
        let eta = (0..ng)
            .map(|g| {
                let (b, l) = self.split_g(&self.section, g);
                self.join_g(b, m.ladd(kappa.kappa2[b], l))
            })
            .collect();
        Ok(validate_morphism(self.ext.total(), self.ext.total(), psi, eta)?)
    }

    /// `zeta(gamma)`: `gamma(s(a)) = s(a) kappa1(a)`.
    pub fn aut_to_z1(&self, gamma: &RRBMorphism) -> Result<OneCochain, WellsError> {
        let (na, nb, _, _) = self.module.shape();
        let mut kappa = OneCochain::zero(na, nb);
        for a in 0..na {
            let (a2, k) = self.split_h(&self.section, gamma.psi.apply(self.section.s_h[a]));
            if a2 != a {
                return Err(WellsError::NotInAutAK);
            }
            kappa.kappa1[a] = k;
        }
        for b in 0..nb {
            let (b2, l) = self.split_g(&self.section, gamma.eta.apply(self.section.s_g[b]));
            if b2 != b {
                return Err(WellsError::NotInAutAK);
            }
            kappa.kappa2[b] = l;
        }
        if !self.module.is_one_cocycle(&kappa) {
            return Err(WellsError::NotInZ1);
        }
        Ok(kappa)
    }

    /// `gamma(s(a) k) = s(psi1 a) theta1(kappa1(a) + k)` with
    /// `fs - fs^c = coboundary(kappa)`; `None` when no such `kappa` exists
    /// or the result fails validation.
    pub fn witness(&self, pair: &CompatiblePair) -> Option<RRBMorphism> {
        if !is_compatible(&self.module, pair) {
            return None;
        }
        let m = &self.module;
        let diff = m.fs_sub(&self.fs, &act_unchecked(m, pair, &self.fs));
        let kappa = self.coh.solve_coboundary(&diff)?;
        let (nh, ng) = (self.ext.total().h().order(), self.ext.total().g().order());
        let psi = (0..nh)
            .map(|h| {
                let (a, k) = self.split_h(&self.section, h);
                self.join_h(pair.psi1(a), pair.theta1(m.kadd(kappa.kappa1[a], k)))
            })
            .collect();
        let eta = (0..ng)
            .map(|g| {
                let (b, l) = self.split_g(&self.section, g);
                self.join_g(pair.psi2(b), pair.theta2(m.ladd(kappa.kappa2[b], l)))
            })
            .collect();
        validate_morphism(self.ext.total(), self.ext.total(), psi, eta).ok()
    }

    /// Inducible iff compatible with vanishing Wells class.
    pub fn is_inducible(&self, pair: &CompatiblePair) -> Inducibility {
        if !is_compatible(&self.module, pair) {
            return Inducibility { inducible: false, witness: None };
        }
        let inducible = self.wells_map(pair).expect("compatible").is_zero();
        Inducibility { inducible, witness: if inducible { self.witness(pair) } else { None } }
    }

    /// `theta: K -> K_psi` is a module isomorphism and `theta_*[fs] = psi^*[fs]`
    /// in the cohomology of `K_psi`.
    pub fn inducible_by_module_criterion(&self, pair: &CompatiblePair) -> Result<bool, WellsError> {
        let twisted = twisted_module(&self.module, &pair.psi)?;
        let (na, nb, nk, nl) = self.module.shape();
        let m = &self.module;
        let t = &twisted;
        let iso = (0..nb).all(|b| (0..nk).all(|k| pair.theta1(m.nu(b, k)) == t.nu(b, pair.theta1(k))))
            && (0..na).all(|a| (0..nk).all(|k| pair.theta1(m.mu(a, k)) == t.mu(a, pair.theta1(k))))
            && (0..nb).all(|b| (0..nl).all(|l| pair.theta2(m.sigma(b, l)) == t.sigma(b, pair.theta2(l))))
            && (0..nl).all(|l| (0..na).all(|a| pair.theta1(m.f(l, a)) == t.f(pair.theta2(l), a)));
        if !iso {
            return Ok(false);
        }
        let identity_a = RRBMorphism::identity(m.quotient());
        let pulled = twist(m, &self.fs, &pair.psi, &RRBMorphism::identity(m.kernel()));
        let pushed = twist(m, &self.fs, &identity_a, &pair.theta);
        let coh = Cohomology::new(&twisted);
        let (Ok(x), Ok(y)) = (coh.class_of(&pulled), coh.class_of(&pushed)) else {
            return Ok(false);
        };
        Ok(x == y)
    }

    pub fn verify_exactness(&self) -> Result<WellsReport, WellsError> {
        self.verify_exactness_with(|_, class| class)
    }

    /// Exactness checks with the Wells map post-composed by `corrupt`
    /// (identity for the honest report).
    pub fn verify_exactness_with<F>(&self, corrupt: F) -> Result<WellsReport, WellsError>
    where
        F: Fn(&CompatiblePair, CohomologyClass) -> CohomologyClass,
    {
        let omega = |p: &CompatiblePair| -> Result<CohomologyClass, WellsError> { Ok(corrupt(p, self.wells_map(p)?)) };
        let mut failures = Vec::new();

        let c = self.compatible_pairs()?;
        let aut_k = self.aut_k_h()?;
        let aut_ak = self.aut_ak_h()?;
        let z1 = self.coh.z1_elements();

        // (i) eta is an injective homomorphism into Aut_K(H), inverse to zeta
        let mut eta_images = Vec::with_capacity(z1.len());
        let mut eta_injective = true;
        for kappa in &z1 {
            let g = self.z1_to_aut(kappa)?;
            if self.aut_to_z1(&g).ok().as_ref() != Some(kappa) {
                eta_injective = false;
                failures.push(format!("zeta(eta(kappa)) != kappa for {:?}", kappa));
            }
            eta_images.push(g);
        }
        let eta_keys: BTreeSet<_> = eta_images.iter().map(morphism_key).collect();
        if eta_keys.len() != z1.len() {
            eta_injective = false;
            failures.push("eta is not injective".into());
        }
        let m = &self.module;
        'hom: for (x, gx) in z1.iter().zip(&eta_images) {
            for (y, gy) in z1.iter().zip(&eta_images) {
                let sum = OneCochain {
                    kappa1: x.kappa1.iter().zip(&y.kappa1).map(|(&p, &q)| m.kadd(p, q)).collect(),
                    kappa2: x.kappa2.iter().zip(&y.kappa2).map(|(&p, &q)| m.ladd(p, q)).collect(),
                };
                if morphism_key(&self.z1_to_aut(&sum)?) != morphism_key(&gx.compose(gy)) {
                    eta_injective = false;
                    failures.push("eta is not a homomorphism".into());
                    break 'hom;
                }
            }
        }

        // (ii) im(eta) = Aut^{A,K}(H) = ker(restrict_and_induce)
        let ak_keys: BTreeSet<_> = aut_ak.iter().map(morphism_key).collect();
        let ker_rho_eq_im_eta = ak_keys == eta_keys;
        if !ker_rho_eq_im_eta {
            failures.push(format!("|Aut^(A,K)(H)| = {}, |im eta| = {}", ak_keys.len(), eta_keys.len()));
        }

        // (iii) im(restrict_and_induce) = ker(omega)
        let mut im_rho = BTreeSet::new();
        for g in &aut_k {
            im_rho.insert(self.restrict_and_induce(g)?.key());
        }
        let mut ker_omega = BTreeSet::new();
        let mut omegas = Vec::with_capacity(c.len());
        for p in &c {
            let w = omega(p)?;
            if w.is_zero() {
                ker_omega.insert(p.key());
            }
            omegas.push(w);
        }
        let ker_omega_eq_im_rho = im_rho == ker_omega;
        if !ker_omega_eq_im_rho {
            if let Some(k) = im_rho.symmetric_difference(&ker_omega).next() {
                failures.push(format!("pair {:?} lies in exactly one of im(rho), ker(omega)", k));
            }
        }

        // (iv) omega(c1 c2) = omega(c1)^c2 + omega(c2)
        let index: std::collections::BTreeMap<PairKey, usize> =
            c.iter().enumerate().map(|(i, p)| (p.key(), i)).collect();
        let mut omega_derivation = true;
        let mut omega_homomorphism = true;
        for (i, p) in c.iter().enumerate() {
            for (j, q) in c.iter().enumerate() {
                let pq = index[&p.compose(q).key()];
                let lhs = &omegas[pq];
                let rhs = self.coh.add_classes(&act_on_class(&self.coh, q, &omegas[i])?, &omegas[j]);
                if *lhs != rhs && omega_derivation {
                    omega_derivation = false;
                    failures.push(format!("derivation law fails at pairs {} and {}", i, j));
                }
                if *lhs != self.coh.add_classes(&omegas[i], &omegas[j]) {
                    omega_homomorphism = false;
                }
            }
        }

        let mut pairs = Vec::new();
        let c_keys: BTreeSet<PairKey> = c.iter().map(CompatiblePair::key).collect();
        for p in self.all_pairs()? {
            let in_c = c_keys.contains(&p.key());
            let (omega_coords, verdict) = if in_c {
                let w = omegas[index[&p.key()]].clone();
                let inducible = w.is_zero();
                let witness = if inducible { self.witness(&p) } else { None };
                (Some(w.coords), Inducibility { inducible, witness })
            } else {
                (None, Inducibility { inducible: false, witness: None })
            };
            pairs.push(PairRecord {
                psi: MapPair::of(&p.psi),
                theta: MapPair::of(&p.theta),
                in_c,
                omega: omega_coords,
                inducible: verdict.inducible,
                witness: verdict.witness.as_ref().map(MapPair::of),
            });
        }

        Ok(WellsReport {
            h2: self.coh.h2().factors().to_vec(),
            class: self.class().coords,
            z1_order: z1.len(),
            aut_ak_order: aut_ak.len(),
            aut_k_order: aut_k.len(),
            c_order: c.len(),
            pairs,
            exactness: Exactness { eta_injective, ker_rho_eq_im_eta, ker_omega_eq_im_rho, omega_derivation },
            omega_is_homomorphism: omega_homomorphism,
            failures,
        })
    }
}

fn morphism_key(m: &RRBMorphism) -> (Vec<usize>, Vec<usize>) {
    (m.psi.image.clone(), m.eta.image.clone())
}

/// Image arrays of an RRB morphism: `psi` on H, `eta` on G.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapPair {
    #[serde(alias = "h")]
    pub psi: Vec<usize>,
    #[serde(alias = "g")]
    pub eta: Vec<usize>,
}

impl MapPair {
    pub fn of(m: &RRBMorphism) -> Self {
        MapPair { psi: m.psi.image.clone(), eta: m.eta.image.clone() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairRecord {
    pub psi: MapPair,
    pub theta: MapPair,
    #[serde(rename = "in_C")]
    pub in_c: bool,
    pub omega: Option<Vec<i64>>,
    pub inducible: bool,
    pub witness: Option<MapPair>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Exactness {
    pub eta_injective: bool,
    pub ker_rho_eq_im_eta: bool,
    pub ker_omega_eq_im_rho: bool,
    pub omega_derivation: bool,
}

impl Exactness {
    pub fn all(&self) -> bool {
        self.eta_injective && self.ker_rho_eq_im_eta && self.ker_omega_eq_im_rho && self.omega_derivation
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WellsReport {
    pub h2: Vec<u64>,
    pub class: Vec<i64>,
    pub z1_order: usize,
    pub aut_ak_order: usize,
    pub aut_k_order: usize,
    pub c_order: usize,
    pub pairs: Vec<PairRecord>,
    pub exactness: Exactness,
    /// Reported only; the Wells map need not be a homomorphism.
    pub omega_is_homomorphism: bool,
    pub failures: Vec<String>,
}

pub fn verify_wells_exactness(ext: &Extension, max_order: usize) -> Result<WellsReport, WellsError> {
    WellsContext::new(ext, max_order)?.verify_exactness()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extension::{build_extension, direct_product_extension};
    use crate::groupkit::{FiniteGroup, DEFAULT_MAX_ORDER};

    fn z2_zero() -> RRBGroup {
        let z2 = FiniteGroup::cyclic(2);
        RRBGroup::trivial_action(&z2, &z2, vec![0, 0]).unwrap()
    }

    #[test]
    fn direct_product_is_exact() {
        let ext = direct_product_extension(&z2_zero(), &z2_zero()).unwrap();
        let report = verify_wells_exactness(&ext, DEFAULT_MAX_ORDER).unwrap();
        assert!(report.exactness.all(), "{:?}", report.failures);
        assert!(report.pairs.iter().all(|p| p.inducible && p.witness.is_some()));
        assert_eq!(report.z1_order, report.aut_ak_order);
    }

    #[test]
    fn nonsplit_extension_is_exact() {
        let m = Module::trivial(&z2_zero(), &z2_zero()).unwrap();
        let mut fs = m.zero_fs();
        fs.tau1[1][1] = 1;
        let ext = build_extension(&m, &fs).unwrap();
        let ctx = WellsContext::new(&ext, DEFAULT_MAX_ORDER).unwrap();
        let id = CompatiblePair::identity(ctx.module());
        assert!(ctx.wells_map(&id).unwrap().is_zero());
        assert!(ctx.inducible_by_module_criterion(&id).unwrap());
        let report = ctx.verify_exactness().unwrap();
        assert!(report.exactness.all(), "{:?}", report.failures);
    }

    #[test]
    fn corrupted_omega_breaks_exactness() {
        let ext = direct_product_extension(&z2_zero(), &z2_zero()).unwrap();
        let ctx = WellsContext::new(&ext, DEFAULT_MAX_ORDER).unwrap();
        let coh = ctx.cohomology().clone();
        let mut shift = vec![0; coh.h2().factors().len()];
        shift[0] = 1;
        let shift = coh.class_from_coords(&shift).unwrap();
        let report = ctx.verify_exactness_with(|_, w| coh.add_classes(&w, &shift)).unwrap();
        assert!(!report.exactness.ker_omega_eq_im_rho);
        assert!(!report.failures.is_empty());
    }

    #[test]
    fn twisting_by_identity_is_trivial() {
        let m = Module::trivial(&z2_zero(), &z2_zero()).unwrap();
        let t = twisted_module(&m, &RRBMorphism::identity(m.quotient())).unwrap();
        assert_eq!(t.action(), m.action());
    }
}
