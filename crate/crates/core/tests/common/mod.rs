//! Brute-force oracles shared by the integration tests and the acceptance
//! suite. None of them go through the linear algebra in `cohomology`.

#![allow(dead_code)]

use std::collections::BTreeSet;

use itertools::Itertools;
use rrb_core::extension::{build_extension, canonical_section, extract_factor_system, Extension, Section};
use rrb_core::groupkit::FiniteGroup;
use rrb_core::module::{FactorSystem, Module, OneCochain};
use rrb_core::rrb::{validate_morphism, validate_rrb};

/// Number of normalized 2-cochains, counted from the group orders.
pub fn two_cochain_count(m: &Module) -> u128 {
    let (na, nb, nk, nl) = m.shape();
    let (na, nb) = (na as u32 - 1, nb as u32 - 1);
    (nk as u128).pow(na * na + na * nb) * (nl as u128).pow(nb * nb + na)
}

/// Every normalized 2-cochain, as dense tables with zero on degenerate tuples.
pub fn all_two_cochains(m: &Module) -> Vec<FactorSystem> {
    let (na, nb, nk, nl) = m.shape();
    let slots_k = (na - 1) * (na - 1) + (na - 1) * (nb - 1);
    let slots_l = (nb - 1) * (nb - 1) + (na - 1);
    let ks = std::iter::repeat_n(0..nk, slots_k).multi_cartesian_product();
    let ls: Vec<Vec<usize>> = std::iter::repeat_n(0..nl, slots_l).multi_cartesian_product().collect();
    let mut out = Vec::new();
    for kv in ks {
        for lv in &ls {
            let mut fs = FactorSystem::zero(na, nb);
            let mut ki = kv.iter();
            let mut li = lv.iter();
            for a1 in 1..na {
                for a2 in 1..na {
                    fs.tau1[a1][a2] = *ki.next().unwrap();
                }
            }
            for a in 1..na {
                for b in 1..nb {
                    fs.rho[a][b] = *ki.next().unwrap();
                }
            }
            for b1 in 1..nb {
                for b2 in 1..nb {
                    fs.tau2[b1][b2] = *li.next().unwrap();
                }
            }
            for a in 1..na {
                fs.chi[a] = *li.next().unwrap();
            }
            out.push(fs);
        }
    }
    out
}

/// Every normalized pair of maps `A -> K`, `B -> L`.
pub fn all_one_cochains(m: &Module) -> Vec<OneCochain> {
    let k1 = std::iter::repeat_n(m.k().elements(), m.na() - 1).multi_cartesian_product();
    let k2: Vec<Vec<usize>> = std::iter::repeat_n(m.l().elements(), m.nb() - 1).multi_cartesian_product().collect();
    k1.flat_map(|x| {
        k2.iter().map(move |y| OneCochain {
            kappa1: std::iter::once(0).chain(x.iter().copied()).collect(),
            kappa2: std::iter::once(0).chain(y.iter().copied()).collect(),
        })
    })
    .collect()
}

/// Whether the tables built on `A x K` and `B x L` from `fs` form an RRB
/// group. The construction is written out here rather than borrowed from
/// the library, so this decides the cocycle property structurally.
pub fn builds_an_rrb_group(m: &Module, fs: &FactorSystem) -> bool {
    let (na, nb, nk, nl) = m.shape();
    let (a, b) = (m.a(), m.b());
    let h: Vec<Vec<usize>> = (0..na)
        .cartesian_product(0..nk)
        .map(|(a1, k1)| {
            (0..na)
                .cartesian_product(0..nk)
                .map(|(a2, k2)| a.mul(a1, a2) * nk + m.kadd(m.kadd(fs.tau1[a1][a2], m.mu(a2, k1)), k2))
                .collect()
        })
        .collect();
    let g: Vec<Vec<usize>> = (0..nb)
        .cartesian_product(0..nl)
        .map(|(b1, l1)| {
            (0..nb)
                .cartesian_product(0..nl)
                .map(|(b2, l2)| b.mul(b1, b2) * nl + m.ladd(m.ladd(fs.tau2[b1][b2], m.sigma(b2, l1)), l2))
                .collect()
        })
        .collect();
    let (Ok(h), Ok(g)) = (FiniteGroup::from_table(&h), FiniteGroup::from_table(&g)) else {
        return false;
    };
    let phi = (0..nb)
        .cartesian_product(0..nl)
        .map(|(y, l)| {
            (0..na)
                .cartesian_product(0..nk)
                .map(|(x, k)| m.beta(y, x) * nk + m.kadd(fs.rho[x][y], m.nu(y, m.kadd(m.f(l, x), k))))
                .collect()
        })
        .collect();
    let r = (0..na)
        .cartesian_product(0..nk)
        .map(|(x, k)| {
            let tx = m.t(x);
            tx * nl + m.ladd(fs.chi[x], m.s(m.nu_inv(tx, k)))
        })
        .collect();
    validate_rrb(&h, &g, phi, r).is_ok()
}

/// Section shifted by `kappa`: `s'(a) = s(a) kappa1(a)`, `s'(b) = s(b) kappa2(b)`.
pub fn shifted(ext: &Extension, sec: &Section, kappa: &OneCochain) -> Section {
    let (h, g) = (ext.total().h(), ext.total().g());
    let s_h = sec.s_h.iter().zip(&kappa.kappa1).map(|(&s, &k)| h.mul(s, ext.incl().psi.apply(k))).collect();
    let s_g = sec.s_g.iter().zip(&kappa.kappa2).map(|(&s, &l)| g.mul(s, ext.incl().eta.apply(l))).collect();
    Section { s_h, s_g }
}

/// Factor systems of one extension over every normalized section.
pub fn orbit(ext: &Extension, one_cochains: &[OneCochain]) -> BTreeSet<FactorSystem> {
    let sec = canonical_section(ext);
    one_cochains.iter().map(|k| extract_factor_system(ext, &shifted(ext, &sec, k)).unwrap()).collect()
}

/// Coboundaries, read off the split extension under every section.
pub fn coboundaries(m: &Module) -> BTreeSet<FactorSystem> {
    let split = build_extension(m, &m.zero_fs()).unwrap();
    orbit(&split, &all_one_cochains(m))
}

/// Equivalence by direct search: some morphism `H1 -> H2` fixing K and
/// inducing the identity on A, of the form `s1(a) k -> s2(a) (kappa(a) + k)`.
pub fn equivalent_by_search(e1: &Extension, e2: &Extension, m: &Module) -> bool {
    let (s1, s2) = (canonical_section(e1), canonical_section(e2));
    let (t1, t2) = (e1.total(), e2.total());
    all_one_cochains(m).iter().any(|kappa| {
        let mut psi = vec![0; t1.h().order()];
        for a in m.a().elements() {
            for k in m.k().elements() {
                let src = t1.h().mul(s1.s_h[a], e1.incl().psi.apply(k));
                psi[src] = t2.h().mul(s2.s_h[a], e2.incl().psi.apply(m.kadd(kappa.kappa1[a], k)));
            }
        }
        let mut eta = vec![0; t1.g().order()];
        for b in m.b().elements() {
            for l in m.l().elements() {
                let src = t1.g().mul(s1.s_g[b], e1.incl().eta.apply(l));
                eta[src] = t2.g().mul(s2.s_g[b], e2.incl().eta.apply(m.ladd(kappa.kappa2[b], l)));
            }
        }
        validate_morphism(t1, t2, psi, eta).is_ok()
    })
}
