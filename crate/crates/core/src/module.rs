//! Modules over an RRB group, factor systems, and the cocycle and
//! coboundary formulas.
//!
//! The kernel groups `K` and `L` are abelian and written additively: the
//! table product is `+`, the table inverse is unary minus. Every
//! multiplicative identity of the theory is transcribed below with its
//! terms moved to one side, so that a residual of zero means "holds".

use thiserror::Error;

use crate::groupkit::{abelian_presentation, AbelianPresentation, FiniteGroup, GroupError, GroupHom};
use crate::rrb::{is_trivial, RRBGroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModuleError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("kernel RRB group must have trivial action")]
    KernelNotTrivial,
    #[error("kernel groups must be abelian")]
    KernelNotAbelian,
    #[error("{0} has the wrong shape")]
    Shape(&'static str),
    #[error("module conditions fail: {0:?}")]
    ModuleInvalid(ModuleViolation),
}

/// First failing module condition with its witness.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ModuleViolation {
    NuNotAutomorphism(usize),
    NuNotHomomorphism(usize, usize),
    MuNotAutomorphism(usize),
    /// `mu_{a1 a2} != mu_{a2} mu_{a1}`.
    MuNotAntiHomomorphism(usize, usize),
    SigmaNotAutomorphism(usize),
    SigmaNotAntiHomomorphism(usize, usize),
    /// `f(l1 + l2, a) != f(l1, a) + f(l2, a)`.
    FNotAdditive { l1: usize, l2: usize, a: usize },
    /// `f(l, a1 a2) != mu_{a2} f(l, a1) + f(l, a2)`.
    FNotDerivation { l: usize, a1: usize, a2: usize },
    /// `S(nu^-1_{T a}(mu_a k + f(S k, a))) != sigma_{T a}(S k)`.
    OperatorCompatibility { a: usize, k: usize },
    /// `nu_b mu_a k != mu_{beta_b a} nu_b k`.
    ActionsCommute { a: usize, b: usize, k: usize },
    /// `nu_b f(sigma_b l, a) != f(l, beta_b a)`. Needed for the total
    /// action to be a homomorphism; holds in every extension.
    FEquivariance { b: usize, l: usize, a: usize },
}

/// Action quadruple of `(A, B, beta, T)` on `(K, L, trivial, S)`.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct ActionQuadruple {
    /// `nu[b]` is a permutation of K.
    pub nu: Vec<Vec<usize>>,
    /// `mu[a]` is a permutation of K.
    pub mu: Vec<Vec<usize>>,
    /// `sigma[b]` is a permutation of L.
    pub sigma: Vec<Vec<usize>>,
    /// `f[l][a]` is an element of K.
    pub f: Vec<Vec<usize>>,
}

impl ActionQuadruple {
    pub fn trivial(na: usize, nb: usize, nk: usize, nl: usize) -> Self {
        let idk: Vec<usize> = (0..nk).collect();
        let idl: Vec<usize> = (0..nl).collect();
        ActionQuadruple {
            nu: vec![idk.clone(); nb],
            mu: vec![idk; na],
            sigma: vec![idl; nb],
            f: vec![vec![0; na]; nl],
        }
    }
}

/// `(tau1, tau2, rho, chi)` stored densely, degenerate entries included.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FactorSystem {
    /// `tau1[a1][a2]` in K.
    pub tau1: Vec<Vec<usize>>,
    /// `tau2[b1][b2]` in L.
    pub tau2: Vec<Vec<usize>>,
    /// `rho[a][b]` in K.
    pub rho: Vec<Vec<usize>>,
    /// `chi[a]` in L.
    pub chi: Vec<usize>,
}

impl FactorSystem {
    pub fn zero(na: usize, nb: usize) -> Self {
        FactorSystem {
            tau1: vec![vec![0; na]; na],
            tau2: vec![vec![0; nb]; nb],
            rho: vec![vec![0; nb]; na],
            chi: vec![0; na],
        }
    }

    /// Position and component of a nonzero entry on a degenerate tuple.
    pub fn first_degenerate_nonzero(&self) -> Option<(&'static str, usize, usize)> {
        let na = self.tau1.len();
        let nb = self.tau2.len();
        for x in 0..na {
            if self.tau1[0][x] != 0 || self.tau1[x][0] != 0 {
                return Some(("tau1", x, 0));
            }
        }
        for x in 0..nb {
            if self.tau2[0][x] != 0 || self.tau2[x][0] != 0 {
                return Some(("tau2", x, 0));
            }
            if self.rho[0][x] != 0 {
                return Some(("rho", 0, x));
            }
        }
        for a in 0..na {
            if self.rho[a][0] != 0 {
                return Some(("rho", a, 0));
            }
        }
        if self.chi[0] != 0 {
            return Some(("chi", 0, 0));
        }
        None
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.tau1.len(), self.tau2.len())
    }
}

/// `(kappa1, kappa2)`: normalized maps `A -> K` and `B -> L`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneCochain {
    pub kappa1: Vec<usize>,
    pub kappa2: Vec<usize>,
}

impl OneCochain {
    pub fn zero(na: usize, nb: usize) -> Self {
        OneCochain { kappa1: vec![0; na], kappa2: vec![0; nb] }
    }
}

/// Values of the five cocycle conditions, `lhs - rhs`, over all tuples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleResidual {
    /// Over `(a1, a2, a3)`, row-major, in K.
    pub c1: Vec<usize>,
    /// Over `(b1, b2, b3)`, in L.
    pub c2: Vec<usize>,
    /// Over `(a, b1, b2)`, in K.
    pub c3: Vec<usize>,
    /// Over `(a1, a2, b)`, in K.
    pub c4: Vec<usize>,
    /// Over `(a1, a2)`, in L.
    pub c5: Vec<usize>,
}

/// An `(A, B, beta, T)`-module `(K, L, trivial, S)` with a validated action.
#[derive(Clone, Debug)]
pub struct Module {
    quotient: RRBGroup,
    kernel: RRBGroup,
    action: ActionQuadruple,
    k_pres: AbelianPresentation,
    l_pres: AbelianPresentation,
    nu_inv: Vec<Vec<usize>>,
}

impl PartialEq for Module {
    fn eq(&self, other: &Self) -> bool {
        self.quotient == other.quotient && self.kernel == other.kernel && self.action == other.action
    }
}

fn invert(p: &[usize]) -> Vec<usize> {
    let mut q = vec![0; p.len()];
    for (i, &x) in p.iter().enumerate() {
        q[x] = i;
    }
    q
}

fn is_automorphism(group: &FiniteGroup, p: &[usize]) -> bool {
    p.len() == group.order()
        && p.iter().all(|&x| x < group.order())
        && GroupHom::new(group, group, p.to_vec()).is_ok_and(|m| m.is_bijective())
}

fn check_shapes(quotient: &RRBGroup, kernel: &RRBGroup, action: &ActionQuadruple) -> Result<(), ModuleError> {
    let (na, nb) = (quotient.h().order(), quotient.g().order());
    let (nk, nl) = (kernel.h().order(), kernel.g().order());
    if !is_trivial(kernel) {
        return Err(ModuleError::KernelNotTrivial);
    }
    if !kernel.h().is_abelian() || !kernel.g().is_abelian() {
        return Err(ModuleError::KernelNotAbelian);
    }
    let rows_ok = |m: &Vec<Vec<usize>>, n: usize, w: usize, bound: usize| {
        m.len() == n && m.iter().all(|r| r.len() == w && r.iter().all(|&x| x < bound))
    };
    if !rows_ok(&action.nu, nb, nk, nk) {
        return Err(ModuleError::Shape("nu"));
    }
    if !rows_ok(&action.mu, na, nk, nk) {
        return Err(ModuleError::Shape("mu"));
    }
    if !rows_ok(&action.sigma, nb, nl, nl) {
        return Err(ModuleError::Shape("sigma"));
    }
    if !rows_ok(&action.f, nl, na, nk) {
        return Err(ModuleError::Shape("f"));
    }
    Ok(())
}

/// Checks the module conditions in order: `nu` a homomorphism into
/// `Aut(K)`, `mu` and `sigma` anti-homomorphisms, `f` additive in `L` and a
/// `mu`-derivation in `A`, compatibility with `S`, commuting actions, and
/// equivariance of `f`. Returns the first violation.
pub fn validate_module(
    quotient: &RRBGroup,
    kernel: &RRBGroup,
    action: &ActionQuadruple,
) -> Result<Option<ModuleViolation>, ModuleError> {
    check_shapes(quotient, kernel, action)?;
    let (a_grp, b_grp) = (quotient.h(), quotient.g());
    let (k_grp, l_grp) = (kernel.h(), kernel.g());
    let ActionQuadruple { nu, mu, sigma, f } = action;

    if let Some(b) = b_grp.elements().find(|&b| !is_automorphism(k_grp, &nu[b])) {
        return Ok(Some(ModuleViolation::NuNotAutomorphism(b)));
    }
    for b1 in b_grp.elements() {
        for b2 in b_grp.elements() {
            let p = &nu[b_grp.mul(b1, b2)];
            if k_grp.elements().any(|k| p[k] != nu[b1][nu[b2][k]]) {
                return Ok(Some(ModuleViolation::NuNotHomomorphism(b1, b2)));
            }
        }
    }
    if let Some(a) = a_grp.elements().find(|&a| !is_automorphism(k_grp, &mu[a])) {
        return Ok(Some(ModuleViolation::MuNotAutomorphism(a)));
    }
    for a1 in a_grp.elements() {
        for a2 in a_grp.elements() {
            let p = &mu[a_grp.mul(a1, a2)];
            if k_grp.elements().any(|k| p[k] != mu[a2][mu[a1][k]]) {
                return Ok(Some(ModuleViolation::MuNotAntiHomomorphism(a1, a2)));
            }
        }
    }
    if let Some(b) = b_grp.elements().find(|&b| !is_automorphism(l_grp, &sigma[b])) {
        return Ok(Some(ModuleViolation::SigmaNotAutomorphism(b)));
    }
    for b1 in b_grp.elements() {
        for b2 in b_grp.elements() {
            let p = &sigma[b_grp.mul(b1, b2)];
            if l_grp.elements().any(|l| p[l] != sigma[b2][sigma[b1][l]]) {
                return Ok(Some(ModuleViolation::SigmaNotAntiHomomorphism(b1, b2)));
            }
        }
    }
    for a in a_grp.elements() {
        for l1 in l_grp.elements() {
            for l2 in l_grp.elements() {
                if f[l_grp.mul(l1, l2)][a] != k_grp.mul(f[l1][a], f[l2][a]) {
                    return Ok(Some(ModuleViolation::FNotAdditive { l1, l2, a }));
                }
            }
        }
    }
    for l in l_grp.elements() {
        for a1 in a_grp.elements() {
            for a2 in a_grp.elements() {
                let rhs = k_grp.mul(mu[a2][f[l][a1]], f[l][a2]);
                if f[l][a_grp.mul(a1, a2)] != rhs {
                    return Ok(Some(ModuleViolation::FNotDerivation { l, a1, a2 }));
                }
            }
        }
    }
    for a in a_grp.elements() {
        let ta = quotient.r(a);
        let nu_inv = invert(&nu[ta]);
        for k in k_grp.elements() {
            let sk = kernel.r(k);
            let lhs = kernel.r(nu_inv[k_grp.mul(mu[a][k], f[sk][a])]);
            if lhs != sigma[ta][sk] {
                return Ok(Some(ModuleViolation::OperatorCompatibility { a, k }));
            }
        }
    }
    for a in a_grp.elements() {
        for b in b_grp.elements() {
            let ba = quotient.act(b, a);
            if let Some(k) = k_grp.elements().find(|&k| nu[b][mu[a][k]] != mu[ba][nu[b][k]]) {
                return Ok(Some(ModuleViolation::ActionsCommute { a, b, k }));
            }
        }
    }
    for b in b_grp.elements() {
        for l in l_grp.elements() {
            for a in a_grp.elements() {
                if nu[b][f[sigma[b][l]][a]] != f[l][quotient.act(b, a)] {
                    return Ok(Some(ModuleViolation::FEquivariance { b, l, a }));
                }
            }
        }
    }
    Ok(None)
}

impl Module {
    pub fn new(quotient: &RRBGroup, kernel: &RRBGroup, action: ActionQuadruple) -> Result<Self, ModuleError> {
        if let Some(v) = validate_module(quotient, kernel, &action)? {
            return Err(ModuleError::ModuleInvalid(v));
        }
        let k_pres = abelian_presentation(kernel.h())?;
        let l_pres = abelian_presentation(kernel.g())?;
        let nu_inv = action.nu.iter().map(|p| invert(p)).collect();
        Ok(Module { quotient: quotient.clone(), kernel: kernel.clone(), action, k_pres, l_pres, nu_inv })
    }

    /// Trivial action quadruple on the given kernel.
    pub fn trivial(quotient: &RRBGroup, kernel: &RRBGroup) -> Result<Self, ModuleError> {
        let action = ActionQuadruple::trivial(
            quotient.h().order(),
            quotient.g().order(),
            kernel.h().order(),
            kernel.g().order(),
        );
        Module::new(quotient, kernel, action)
    }

    pub fn quotient(&self) -> &RRBGroup {
        &self.quotient
    }

    pub fn kernel(&self) -> &RRBGroup {
        &self.kernel
    }

    pub fn action(&self) -> &ActionQuadruple {
        &self.action
    }

    pub fn k_presentation(&self) -> &AbelianPresentation {
        &self.k_pres
    }

    pub fn l_presentation(&self) -> &AbelianPresentation {
        &self.l_pres
    }

    /// `(|A|, |B|, |K|, |L|)`.
    pub fn shape(&self) -> (usize, usize, usize, usize) {
        (self.na(), self.nb(), self.kernel.h().order(), self.kernel.g().order())
    }

    pub fn na(&self) -> usize {
        self.quotient.h().order()
    }

    pub fn nb(&self) -> usize {
        self.quotient.g().order()
    }

    pub fn a(&self) -> &FiniteGroup {
        self.quotient.h()
    }

    pub fn b(&self) -> &FiniteGroup {
        self.quotient.g()
    }

    pub fn k(&self) -> &FiniteGroup {
        self.kernel.h()
    }

    pub fn l(&self) -> &FiniteGroup {
        self.kernel.g()
    }

    pub fn beta(&self, b: usize, a: usize) -> usize {
        self.quotient.act(b, a)
    }

    pub fn t(&self, a: usize) -> usize {
        self.quotient.r(a)
    }

    pub fn s(&self, k: usize) -> usize {
        self.kernel.r(k)
    }

    pub fn nu(&self, b: usize, k: usize) -> usize {
        self.action.nu[b][k]
    }

    pub fn nu_inv(&self, b: usize, k: usize) -> usize {
        self.nu_inv[b][k]
    }

    pub fn mu(&self, a: usize, k: usize) -> usize {
        self.action.mu[a][k]
    }

    pub fn sigma(&self, b: usize, l: usize) -> usize {
        self.action.sigma[b][l]
    }

    pub fn f(&self, l: usize, a: usize) -> usize {
        self.action.f[l][a]
    }

    pub fn kadd(&self, x: usize, y: usize) -> usize {
        self.kernel.h().mul(x, y)
    }

    pub fn ksub(&self, x: usize, y: usize) -> usize {
        self.kernel.h().mul(x, self.kernel.h().inv(y))
    }

    pub fn ladd(&self, x: usize, y: usize) -> usize {
        self.kernel.g().mul(x, y)
    }

    pub fn lsub(&self, x: usize, y: usize) -> usize {
        self.kernel.g().mul(x, self.kernel.g().inv(y))
    }

    fn ksum(&self, xs: &[usize]) -> usize {
        xs.iter().fold(0, |acc, &x| self.kadd(acc, x))
    }

    pub fn fs_add(&self, x: &FactorSystem, y: &FactorSystem) -> FactorSystem {
        let kk = |p: &Vec<Vec<usize>>, q: &Vec<Vec<usize>>| -> Vec<Vec<usize>> {
            p.iter().zip(q).map(|(r, s)| r.iter().zip(s).map(|(&u, &v)| self.kadd(u, v)).collect()).collect()
        };
        FactorSystem {
            tau1: kk(&x.tau1, &y.tau1),
            tau2: x
                .tau2
                .iter()
                .zip(&y.tau2)
                .map(|(r, s)| r.iter().zip(s).map(|(&u, &v)| self.ladd(u, v)).collect())
                .collect(),
            rho: kk(&x.rho, &y.rho),
            chi: x.chi.iter().zip(&y.chi).map(|(&u, &v)| self.ladd(u, v)).collect(),
        }
    }

    pub fn fs_neg(&self, x: &FactorSystem) -> FactorSystem {
        let (k, l) = (self.kernel.h(), self.kernel.g());
        FactorSystem {
            tau1: x.tau1.iter().map(|r| r.iter().map(|&u| k.inv(u)).collect()).collect(),
            tau2: x.tau2.iter().map(|r| r.iter().map(|&u| l.inv(u)).collect()).collect(),
            rho: x.rho.iter().map(|r| r.iter().map(|&u| k.inv(u)).collect()).collect(),
            chi: x.chi.iter().map(|&u| l.inv(u)).collect(),
        }
    }

    pub fn fs_sub(&self, x: &FactorSystem, y: &FactorSystem) -> FactorSystem {
        self.fs_add(x, &self.fs_neg(y))
    }

    pub fn zero_fs(&self) -> FactorSystem {
        FactorSystem::zero(self.na(), self.nb())
    }

    /// `a1 o_T a2 = a1 beta_{T(a1)}(a2)`.
    pub fn circ(&self, a1: usize, a2: usize) -> usize {
        self.quotient.circ(a1, a2)
    }

    /// `delta(chi)(a1, a2) = chi(a2) - chi(a1 o_T a2) + sigma_{T(a2)}(chi(a1))`.
    pub fn delta1_sigma(&self, chi: &[usize]) -> Vec<Vec<usize>> {
        let na = self.na();
        (0..na)
            .map(|a1| {
                (0..na)
                    .map(|a2| {
                        let x = self.lsub(chi[a2], chi[self.circ(a1, a2)]);
                        self.ladd(x, self.sigma(self.t(a2), chi[a1]))
                    })
                    .collect()
            })
            .collect()
    }

    /// Residuals of the five cocycle conditions for `fs`.
    #[allow(clippy::needless_range_loop)]
    pub fn cocycle_residual(&self, fs: &FactorSystem) -> CocycleResidual {
        let (a, b) = (self.a(), self.b());
        let (na, nb) = (self.na(), self.nb());
        let FactorSystem { tau1, tau2, rho, chi } = fs;

        // tau1(a2,a3) + tau1(a1,a2a3) = tau1(a1a2,a3) + mu_{a3} tau1(a1,a2)
        let mut c1 = Vec::with_capacity(na * na * na);
        for a1 in 0..na {
            for a2 in 0..na {
                for a3 in 0..na {
                    let lhs = self.kadd(tau1[a2][a3], tau1[a1][a.mul(a2, a3)]);
                    let rhs = self.kadd(tau1[a.mul(a1, a2)][a3], self.mu(a3, tau1[a1][a2]));
                    c1.push(self.ksub(lhs, rhs));
                }
            }
        }
        // tau2(b2,b3) + tau2(b1,b2b3) = tau2(b1b2,b3) + sigma_{b3} tau2(b1,b2)
        let mut c2 = Vec::with_capacity(nb * nb * nb);
        for b1 in 0..nb {
            for b2 in 0..nb {
                for b3 in 0..nb {
                    let lhs = self.ladd(tau2[b2][b3], tau2[b1][b.mul(b2, b3)]);
                    let rhs = self.ladd(tau2[b.mul(b1, b2)][b3], self.sigma(b3, tau2[b1][b2]));
                    c2.push(self.lsub(lhs, rhs));
                }
            }
        }
        // rho(beta_{b2} a, b1) + nu_{b1} rho(a,b2) = rho(a,b1b2) + nu_{b1b2} f(tau2(b1,b2), a)
        let mut c3 = Vec::with_capacity(na * nb * nb);
        for x in 0..na {
            for b1 in 0..nb {
                for b2 in 0..nb {
                    let b12 = b.mul(b1, b2);
                    let lhs = self.kadd(rho[self.beta(b2, x)][b1], self.nu(b1, rho[x][b2]));
                    let rhs = self.kadd(rho[x][b12], self.nu(b12, self.f(tau2[b1][b2], x)));
                    c3.push(self.ksub(lhs, rhs));
                }
            }
        }
        // rho(a1a2,b) + nu_b tau1(a1,a2)
        //   = mu_{beta_b a2} rho(a1,b) + rho(a2,b) + tau1(beta_b a1, beta_b a2)
        let mut c4 = Vec::with_capacity(na * na * nb);
        for a1 in 0..na {
            for a2 in 0..na {
                for y in 0..nb {
                    let (ba1, ba2) = (self.beta(y, a1), self.beta(y, a2));
                    let lhs = self.kadd(rho[a.mul(a1, a2)][y], self.nu(y, tau1[a1][a2]));
                    let rhs = self.ksum(&[self.mu(ba2, rho[a1][y]), rho[a2][y], tau1[ba1][ba2]]);
                    c4.push(self.ksub(lhs, rhs));
                }
            }
        }
        // tau2(Ta1,Ta2) + delta(chi)(a1,a2)
        //   = S nu^-1_{T(a1 o a2)} [rho(a2,Ta1) + tau1(a1, beta_{Ta1} a2) + nu_{Ta1} f(chi(a1), a2)]
        let delta = self.delta1_sigma(chi);
        let mut c5 = Vec::with_capacity(na * na);
        for a1 in 0..na {
            for a2 in 0..na {
                let (t1, t2) = (self.t(a1), self.t(a2));
                let lhs = self.ladd(tau2[t1][t2], delta[a1][a2]);
                let inner = self.ksum(&[
                    rho[a2][t1],
                    tau1[a1][self.beta(t1, a2)],
                    self.nu(t1, self.f(chi[a1], a2)),
                ]);
                let rhs = self.s(self.nu_inv(self.t(self.circ(a1, a2)), inner));
                c5.push(self.lsub(lhs, rhs));
            }
        }
        CocycleResidual { c1, c2, c3, c4, c5 }
    }

    /// First failing cocycle condition as `(index 1..=5, tuple)`, where the
    /// tuple lists the arguments in the order of the condition.
    pub fn first_cocycle_violation(&self, fs: &FactorSystem) -> Option<(usize, Vec<usize>)> {
        let (na, nb) = (self.na(), self.nb());
        let r = self.cocycle_residual(fs);
        let unflatten = |i: usize, dims: &[usize]| -> Vec<usize> {
            let mut out = vec![0; dims.len()];
            let mut rest = i;
            for (j, &d) in dims.iter().enumerate().rev() {
                out[j] = rest % d;
                rest /= d;
            }
            out
        };
        let blocks: [(&[usize], Vec<usize>); 5] = [
            (&r.c1, vec![na, na, na]),
            (&r.c2, vec![nb, nb, nb]),
            (&r.c3, vec![na, nb, nb]),
            (&r.c4, vec![na, na, nb]),
            (&r.c5, vec![na, na]),
        ];
        for (idx, (vals, dims)) in blocks.iter().enumerate() {
            if let Some(i) = vals.iter().position(|&v| v != 0) {
                return Some((idx + 1, unflatten(i, dims)));
            }
        }
        None
    }

    pub fn is_cocycle(&self, fs: &FactorSystem) -> bool {
        fs.first_degenerate_nonzero().is_none() && self.first_cocycle_violation(fs).is_none()
    }

    /// The coboundary of `(kappa1, kappa2)`:
    /// `tau1 = k1(a2) - k1(a1a2) + mu_{a2} k1(a1)`, `tau2` likewise,
    /// `rho(a,b) = nu_b(f(k2(b), a) + k1(a)) - k1(beta_b a)`,
    /// `chi(a) = S nu^-1_{Ta} k1(a) - k2(Ta)`.
    pub fn coboundary(&self, kappa: &OneCochain) -> FactorSystem {
        let (a, b) = (self.a(), self.b());
        let (na, nb) = (self.na(), self.nb());
        let OneCochain { kappa1: k1, kappa2: k2 } = kappa;
        let tau1 = (0..na)
            .map(|a1| {
                (0..na)
                    .map(|a2| self.kadd(self.ksub(k1[a2], k1[a.mul(a1, a2)]), self.mu(a2, k1[a1])))
                    .collect()
            })
            .collect();
        let tau2 = (0..nb)
            .map(|b1| {
                (0..nb)
                    .map(|b2| self.ladd(self.lsub(k2[b2], k2[b.mul(b1, b2)]), self.sigma(b2, k2[b1])))
                    .collect()
            })
            .collect();
        let rho = (0..na)
            .map(|x| {
                (0..nb)
                    .map(|y| self.ksub(self.nu(y, self.kadd(self.f(k2[y], x), k1[x])), k1[self.beta(y, x)]))
                    .collect()
            })
            .collect();
        let chi = (0..na).map(|x| self.lsub(self.s(self.nu_inv(self.t(x), k1[x])), k2[self.t(x)])).collect();
        FactorSystem { tau1, tau2, rho, chi }
    }

    pub fn is_one_cocycle(&self, kappa: &OneCochain) -> bool {
        self.coboundary(kappa) == self.zero_fs()
    }
}
