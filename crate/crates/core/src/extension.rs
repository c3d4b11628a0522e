//! Extensions `1 -> K -> H -> A -> 1` of RRB groups, sections, extraction
//! of the action quadruple and factor system, and construction of an
//! extension from a module and a cocycle.

use thiserror::Error;

use crate::groupkit::{FiniteGroup, GroupError};
use crate::module::{ActionQuadruple, FactorSystem, Module, ModuleError};
use crate::rrb::{is_trivial, validate_morphism, validate_rrb, RRBGroup, RRBMorphism, RrbError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtensionError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rrb(#[from] RrbError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error("morphisms do not connect kernel, total and quotient")]
    MorphismMismatch,
    #[error("inclusion is not injective")]
    NotInjective,
    #[error("projection is not surjective")]
    NotSurjective,
    #[error("image of the inclusion differs from the kernel of the projection")]
    ImageKernelMismatch,
    #[error("extension is not abelian")]
    NotAbelianExtension,
    #[error("section does not split the projection at {0}")]
    SectionNotSplitting(usize),
    #[error("section does not send the identity to the identity")]
    SectionNotNormalized,
    #[error("factor system is not a cocycle: condition {condition} fails at {tuple:?}")]
    NotACocycle { condition: usize, tuple: Vec<usize> },
    #[error("factor system is nonzero on a degenerate tuple of {0}")]
    NotNormalized(&'static str),
    #[error("factor system has the wrong shape")]
    ShapeMismatch,
    #[error("extensions have different kernels, quotients or actions")]
    ActionMismatch,
}

#[derive(Clone, Debug)]
pub struct Extension {
    kernel: RRBGroup,
    total: RRBGroup,
    quotient: RRBGroup,
    incl: RRBMorphism,
    proj: RRBMorphism,
    is_abelian: bool,
    /// For each element of H, its preimage in K if any.
    k_of: Vec<Option<usize>>,
    l_of: Vec<Option<usize>>,
}

impl Extension {
    pub fn kernel(&self) -> &RRBGroup {
        &self.kernel
    }

    pub fn total(&self) -> &RRBGroup {
        &self.total
    }

    pub fn quotient(&self) -> &RRBGroup {
        &self.quotient
    }

    pub fn incl(&self) -> &RRBMorphism {
        &self.incl
    }

    pub fn proj(&self) -> &RRBMorphism {
        &self.proj
    }

    pub fn is_abelian(&self) -> bool {
        self.is_abelian
    }

    /// Preimage in K of an element of H lying in the image of the inclusion.
    pub fn k_preimage(&self, h: usize) -> Option<usize> {
        self.k_of[h]
    }

    pub fn l_preimage(&self, g: usize) -> Option<usize> {
        self.l_of[g]
    }
}

fn preimages(map: &[usize], n: usize) -> Vec<Option<usize>> {
    let mut out = vec![None; n];
    for (i, &x) in map.iter().enumerate() {
        out[x] = Some(i);
    }
    out
}

pub fn validate_extension(
    kernel: &RRBGroup,
    total: &RRBGroup,
    quotient: &RRBGroup,
    incl: &RRBMorphism,
    proj: &RRBMorphism,
) -> Result<Extension, ExtensionError> {
    if &incl.source != kernel || &incl.target != total || &proj.source != total || &proj.target != quotient {
        return Err(ExtensionError::MorphismMismatch);
    }
    if !incl.psi.is_injective() || !incl.eta.is_injective() {
        return Err(ExtensionError::NotInjective);
    }
    if !proj.psi.is_surjective() || !proj.eta.is_surjective() {
        return Err(ExtensionError::NotSurjective);
    }
    if incl.psi.image_set() != proj.psi.kernel() || incl.eta.image_set() != proj.eta.kernel() {
        return Err(ExtensionError::ImageKernelMismatch);
    }
    let is_abelian = is_trivial(kernel) && kernel.h().is_abelian() && kernel.g().is_abelian();
    Ok(Extension {
        kernel: kernel.clone(),
        total: total.clone(),
        quotient: quotient.clone(),
        incl: incl.clone(),
        proj: proj.clone(),
        is_abelian,
        k_of: preimages(&incl.psi.image, total.h().order()),
        l_of: preimages(&incl.eta.image, total.g().order()),
    })
}

/// Set-theoretic section `(s_H, s_G)` of the projection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Section {
    pub s_h: Vec<usize>,
    pub s_g: Vec<usize>,
}

fn min_preimages(map: &[usize], n: usize) -> Vec<usize> {
    let mut out = vec![usize::MAX; n];
    for (i, &x) in map.iter().enumerate().rev() {
        out[x] = i;
    }
    out
}

/// Minimum-index representative of each fibre.
pub fn canonical_section(ext: &Extension) -> Section {
    Section {
        s_h: min_preimages(&ext.proj.psi.image, ext.quotient.h().order()),
        s_g: min_preimages(&ext.proj.eta.image, ext.quotient.g().order()),
    }
}

pub fn check_section(ext: &Extension, sec: &Section) -> Result<(), ExtensionError> {
    let na = ext.quotient.h().order();
    let nb = ext.quotient.g().order();
    if sec.s_h.len() != na || sec.s_g.len() != nb {
        return Err(ExtensionError::ShapeMismatch);
    }
    if let Some(a) = (0..na).find(|&a| sec.s_h[a] >= ext.total.h().order() || ext.proj.psi.apply(sec.s_h[a]) != a) {
        return Err(ExtensionError::SectionNotSplitting(a));
    }
    if let Some(b) = (0..nb).find(|&b| sec.s_g[b] >= ext.total.g().order() || ext.proj.eta.apply(sec.s_g[b]) != b) {
        return Err(ExtensionError::SectionNotSplitting(b));
    }
    if sec.s_h[0] != 0 || sec.s_g[0] != 0 {
        return Err(ExtensionError::SectionNotNormalized);
    }
    Ok(())
}

fn require_abelian(ext: &Extension) -> Result<(), ExtensionError> {
    if ext.is_abelian {
        Ok(())
    } else {
        Err(ExtensionError::NotAbelianExtension)
    }
}

/// `nu_b(k) = phi_{s_G(b)}(k)`, `mu_a(k) = s_H(a)^-1 k s_H(a)`,
/// `sigma_b(l) = s_G(b)^-1 l s_G(b)`, `f(l, a) = s_H(a)^-1 phi_l(s_H(a))`.
pub fn extract_actions(ext: &Extension, sec: &Section) -> Result<ActionQuadruple, ExtensionError> {
    require_abelian(ext)?;
    check_section(ext, sec)?;
    let (h, g) = (ext.total.h(), ext.total.g());
    let (nk, nl) = (ext.kernel.h().order(), ext.kernel.g().order());
    let ik = |k: usize| ext.incl.psi.apply(k);
    let il = |l: usize| ext.incl.eta.apply(l);
    let back_k = |x: usize| ext.k_of[x].expect("value lies in K");
    let back_l = |x: usize| ext.l_of[x].expect("value lies in L");
    let nu = sec.s_g.iter().map(|&sb| (0..nk).map(|k| back_k(ext.total.act(sb, ik(k)))).collect()).collect();
    let mu = sec.s_h.iter().map(|&sa| (0..nk).map(|k| back_k(h.conj(sa, ik(k)))).collect()).collect();
    let sigma = sec.s_g.iter().map(|&sb| (0..nl).map(|l| back_l(g.conj(sb, il(l)))).collect()).collect();
    let f = (0..nl)
        .map(|l| {
            sec.s_h
                .iter()
                .map(|&sa| back_k(h.mul(h.inv(sa), ext.total.act(il(l), sa))))
                .collect()
        })
        .collect();
    Ok(ActionQuadruple { nu, mu, sigma, f })
}

/// `tau1(a1,a2) = s(a1a2)^-1 s(a1) s(a2)`, `tau2` likewise,
/// `rho(a,b) = s_H(beta_b a)^-1 phi_{s_G(b)}(s_H(a))`,
/// `chi(a) = s_G(T a)^-1 R(s_H(a))`.
pub fn extract_factor_system(ext: &Extension, sec: &Section) -> Result<FactorSystem, ExtensionError> {
    require_abelian(ext)?;
    check_section(ext, sec)?;
    let (h, g) = (ext.total.h(), ext.total.g());
    let (a, b) = (ext.quotient.h(), ext.quotient.g());
    let back_k = |x: usize| ext.k_of[x].expect("value lies in K");
    let back_l = |x: usize| ext.l_of[x].expect("value lies in L");
    let sh = &sec.s_h;
    let sg = &sec.s_g;
    let tau1 = a
        .elements()
        .map(|a1| a.elements().map(|a2| back_k(h.mul(h.inv(sh[a.mul(a1, a2)]), h.mul(sh[a1], sh[a2])))).collect())
        .collect();
    let tau2 = b
        .elements()
        .map(|b1| b.elements().map(|b2| back_l(g.mul(g.inv(sg[b.mul(b1, b2)]), g.mul(sg[b1], sg[b2])))).collect())
        .collect();
    let rho = a
        .elements()
        .map(|x| {
            b.elements()
                .map(|y| {
                    let bx = ext.quotient.act(y, x);
                    back_k(h.mul(h.inv(sh[bx]), ext.total.act(sg[y], sh[x])))
                })
                .collect()
        })
        .collect();
    let chi = a
        .elements()
        .map(|x| back_l(g.mul(g.inv(sg[ext.quotient.r(x)]), ext.total.r(sh[x]))))
        .collect();
    Ok(FactorSystem { tau1, tau2, rho, chi })
}

/// The module structure an abelian extension induces on its kernel,
/// read off with the canonical section.
pub fn module_of(ext: &Extension) -> Result<Module, ExtensionError> {
    let action = extract_actions(ext, &canonical_section(ext))?;
    Ok(Module::new(&ext.quotient, &ext.kernel, action)?)
}

pub fn check_factor_system_shape(module: &Module, fs: &FactorSystem) -> Result<(), ExtensionError> {
    let (na, nb, nk, nl) = module.shape();
    let ok = fs.tau1.len() == na
        && fs.tau1.iter().all(|r| r.len() == na && r.iter().all(|&x| x < nk))
        && fs.tau2.len() == nb
        && fs.tau2.iter().all(|r| r.len() == nb && r.iter().all(|&x| x < nl))
        && fs.rho.len() == na
        && fs.rho.iter().all(|r| r.len() == nb && r.iter().all(|&x| x < nk))
        && fs.chi.len() == na
        && fs.chi.iter().all(|&x| x < nl);
    if ok {
        Ok(())
    } else {
        Err(ExtensionError::ShapeMismatch)
    }
}

/// Checks shape, normalization and the five cocycle conditions.
pub fn check_cocycle(module: &Module, fs: &FactorSystem) -> Result<(), ExtensionError> {
    check_factor_system_shape(module, fs)?;
    if let Some((name, _, _)) = fs.first_degenerate_nonzero() {
        return Err(ExtensionError::NotNormalized(name));
    }
    if let Some((condition, tuple)) = module.first_cocycle_violation(fs) {
        return Err(ExtensionError::NotACocycle { condition, tuple });
    }
    Ok(())
}

/// The extension on `A x K` and `B x L` (pair encoding `a |K| + k`):
///
/// - `(a1,k1)(a2,k2) = (a1a2, tau1(a1,a2) + mu_{a2}(k1) + k2)`
/// - `(b1,l1)(b2,l2) = (b1b2, tau2(b1,b2) + sigma_{b2}(l1) + l2)`
/// - `phi_{(b,l)}(a,k) = (beta_b(a), rho(a,b) + nu_b(f(l,a) + k))`
/// - `R(a,k) = (T(a), chi(a) + S(nu^-1_{T(a)}(k)))`
pub fn build_extension(module: &Module, fs: &FactorSystem) -> Result<Extension, ExtensionError> {
    check_cocycle(module, fs)?;
    let (na, nb, nk, nl) = module.shape();
    let (a, b) = (module.a(), module.b());
    let enc_h = |x: usize, k: usize| x * nk + k;
    let enc_g = |y: usize, l: usize| y * nl + l;

    let mut h_flat = Vec::with_capacity(na * nk * na * nk);
    for p in 0..na * nk {
        let (a1, k1) = (p / nk, p % nk);
        for q in 0..na * nk {
            let (a2, k2) = (q / nk, q % nk);
            let k = module.kadd(module.kadd(fs.tau1[a1][a2], module.mu(a2, k1)), k2);
            h_flat.push(enc_h(a.mul(a1, a2), k));
        }
    }
    let mut g_flat = Vec::with_capacity(nb * nl * nb * nl);
    for p in 0..nb * nl {
        let (b1, l1) = (p / nl, p % nl);
        for q in 0..nb * nl {
            let (b2, l2) = (q / nl, q % nl);
            let l = module.ladd(module.ladd(fs.tau2[b1][b2], module.sigma(b2, l1)), l2);
            g_flat.push(enc_g(b.mul(b1, b2), l));
        }
    }
    let h = FiniteGroup::from_flat(None, na * nk, h_flat)?;
    let g = FiniteGroup::from_flat(None, nb * nl, g_flat)?;

    let phi: Vec<Vec<usize>> = (0..nb * nl)
        .map(|p| {
            let (y, l) = (p / nl, p % nl);
            (0..na * nk)
                .map(|q| {
                    let (x, k) = (q / nk, q % nk);
                    let inner = module.nu(y, module.kadd(module.f(l, x), k));
                    enc_h(module.beta(y, x), module.kadd(fs.rho[x][y], inner))
                })
                .collect()
        })
        .collect();
    let r: Vec<usize> = (0..na * nk)
        .map(|q| {
            let (x, k) = (q / nk, q % nk);
            let tx = module.t(x);
            enc_g(tx, module.ladd(fs.chi[x], module.s(module.nu_inv(tx, k))))
        })
        .collect();
    let total = validate_rrb(&h, &g, phi, r)?;
    let kernel = module.kernel().clone();
    let quotient = module.quotient().clone();
    let incl = validate_morphism(
        &kernel,
        &total,
        (0..nk).map(|k| enc_h(0, k)).collect(),
        (0..nl).map(|l| enc_g(0, l)).collect(),
    )?;
    let proj = validate_morphism(
        &total,
        &quotient,
        (0..na * nk).map(|q| q / nk).collect(),
        (0..nb * nl).map(|p| p / nl).collect(),
    )?;
    validate_extension(&kernel, &total, &quotient, &incl, &proj)
}

/// Same kernel, quotient and extracted action.
pub fn same_module(e1: &Extension, e2: &Extension) -> Result<Module, ExtensionError> {
    if e1.kernel != e2.kernel || e1.quotient != e2.quotient {
        return Err(ExtensionError::ActionMismatch);
    }
    let m1 = module_of(e1)?;
    let m2 = module_of(e2)?;
    if m1.action() != m2.action() {
        return Err(ExtensionError::ActionMismatch);
    }
    Ok(m1)
}

/// Equivalence of two abelian extensions with the same module: their
/// factor systems (canonical sections) differ by a coboundary.
pub fn are_equivalent(e1: &Extension, e2: &Extension) -> Result<bool, ExtensionError> {
    let module = same_module(e1, e2)?;
    let fs1 = extract_factor_system(e1, &canonical_section(e1))?;
    let fs2 = extract_factor_system(e2, &canonical_section(e2))?;
    let coh = crate::cohomology::Cohomology::new(&module);
    Ok(coh.is_coboundary(&module.fs_sub(&fs1, &fs2)))
}

/// `A x K` with the direct product structure and canonical maps.
pub fn direct_product_extension(module_quotient: &RRBGroup, kernel: &RRBGroup) -> Result<Extension, ExtensionError> {
    let total = crate::rrb::direct_product_rrb(module_quotient, kernel);
    let (na, nb) = (module_quotient.h().order(), module_quotient.g().order());
    let (nk, nl) = (kernel.h().order(), kernel.g().order());
    let incl = validate_morphism(kernel, &total, (0..nk).collect(), (0..nl).collect())?;
    let proj = validate_morphism(
        &total,
        module_quotient,
        (0..na * nk).map(|q| q / nk).collect(),
        (0..nb * nl).map(|p| p / nl).collect(),
    )?;
    validate_extension(kernel, &total, module_quotient, &incl, &proj)
}
