//! Named small modules and extensions (total orders at most 8) shared by
//! tests, the acceptance suite and the CLI fixtures.

use crate::cohomology::Cohomology;
use crate::extension::{build_extension, direct_product_extension, Extension};
use crate::groupkit::FiniteGroup;
use crate::module::{ActionQuadruple, FactorSystem, Module};
use crate::rrb::{validate_rrb, RRBGroup};

fn pair(h: &FiniteGroup, g: &FiniteGroup, r: Vec<usize>) -> RRBGroup {
    RRBGroup::trivial_action(h, g, r).expect("corpus RRB group")
}

/// `A = K = (Z2, Z2, trivial, 0)`, all actions trivial.
pub fn trivial_z2() -> Module {
    let z2 = FiniteGroup::cyclic(2);
    let zero = pair(&z2, &z2, vec![0, 0]);
    Module::trivial(&zero, &zero).expect("corpus module")
}

/// `A = K = (Z2, Z2, trivial, id)`, all actions trivial.
pub fn identity_operators() -> Module {
    let z2 = FiniteGroup::cyclic(2);
    let id = pair(&z2, &z2, vec![0, 1]);
    Module::trivial(&id, &id).expect("corpus module")
}

/// `A = (Z2, Z2, trivial, 0)`, `K = (Z3, 1)`, `nu_1` inversion.
pub fn z3_inversion() -> Module {
    let z2 = FiniteGroup::cyclic(2);
    let z3 = FiniteGroup::cyclic(3);
    let a = pair(&z2, &z2, vec![0, 0]);
    let k = pair(&z3, &FiniteGroup::trivial(), vec![0; 3]);
    let mut action = ActionQuadruple::trivial(2, 2, 3, 1);
    action.nu[1] = vec![0, 2, 1];
    Module::new(&a, &k, action).expect("corpus module")
}

/// `A = (Z2, Z2, trivial, id)`, `K = (Z2, Z2, trivial, 0)`, `f(l, a) = l a`.
pub fn bilinear_f() -> Module {
    let z2 = FiniteGroup::cyclic(2);
    let a = pair(&z2, &z2, vec![0, 1]);
    let k = pair(&z2, &z2, vec![0, 0]);
    let mut action = ActionQuadruple::trivial(2, 2, 2, 2);
    action.f = vec![vec![0, 0], vec![0, 1]];
    Module::new(&a, &k, action).expect("corpus module")
}

/// `A = (V4, Z2, swap, 0)`, `K = (Z2, Z2, trivial, 0)`, trivial actions.
pub fn klein_swap() -> Module {
    let v4 = FiniteGroup::klein();
    let z2 = FiniteGroup::cyclic(2);
    let a = validate_rrb(&v4, &z2, vec![vec![0, 1, 2, 3], vec![0, 2, 1, 3]], vec![0; 4]).expect("corpus RRB group");
    let k = pair(&z2, &z2, vec![0, 0]);
    Module::trivial(&a, &k).expect("corpus module")
}

/// `A = (1, V4)`, `K = (V4, 1)`, `nu` swapping the generators for `b = 1, 2`.
pub fn klein_nu() -> Module {
    let v4 = FiniteGroup::klein();
    let one = FiniteGroup::trivial();
    let a = pair(&one, &v4, vec![0]);
    let k = pair(&v4, &one, vec![0; 4]);
    let mut action = ActionQuadruple::trivial(1, 4, 4, 1);
    let swap = vec![0, 2, 1, 3];
    action.nu[1] = swap.clone();
    action.nu[2] = swap;
    Module::new(&a, &k, action).expect("corpus module")
}

/// `A = (V4, 1)`, `K = (Z2, 1)`, trivial actions: the classical `H^2(V4, Z2)`.
pub fn klein_classical() -> Module {
    let one = FiniteGroup::trivial();
    let a = pair(&FiniteGroup::klein(), &one, vec![0; 4]);
    let k = pair(&FiniteGroup::cyclic(2), &one, vec![0; 2]);
    Module::trivial(&a, &k).expect("corpus module")
}

/// `A = (1, V4)`, `K = (1, Z2)`, trivial actions: the same on the operator side.
pub fn klein_classical_operator() -> Module {
    let one = FiniteGroup::trivial();
    let a = pair(&one, &FiniteGroup::klein(), vec![0]);
    let k = pair(&one, &FiniteGroup::cyclic(2), vec![0]);
    Module::trivial(&a, &k).expect("corpus module")
}

/// Every corpus module with its name.
pub fn modules() -> Vec<(&'static str, Module)> {
    vec![
        ("trivial_z2", trivial_z2()),
        ("identity_operators", identity_operators()),
        ("z3_inversion", z3_inversion()),
        ("bilinear_f", bilinear_f()),
        ("klein_swap", klein_swap()),
        ("klein_nu", klein_nu()),
        ("klein_classical", klein_classical()),
        ("klein_classical_operator", klein_classical_operator()),
    ]
}

/// A nonzero cocycle: a representative of a nonzero class when `H^2` is
/// nontrivial, else a nonzero coboundary, else zero.
pub fn nontrivial_factor_system(module: &Module) -> FactorSystem {
    let coh = Cohomology::new(module);
    if coh.h2().order() > 1 {
        let mut coords = vec![0; coh.h2().factors().len()];
        coords[0] = 1;
        return coh.class_from_coords(&coords).expect("valid coordinates").representative;
    }
    let b2 = coh.b2();
    if b2.order() > 1 {
        let mut coords = vec![0; b2.factors().len()];
        coords[0] = 1;
        return coh.from_vector(&b2.element(&coords));
    }
    module.zero_fs()
}

/// Direct product and one built extension per module.
pub fn extensions() -> Vec<(String, Extension)> {
    let mut out = Vec::new();
    for (name, m) in modules() {
        if m.action() == &ActionQuadruple::trivial(m.na(), m.nb(), m.k().order(), m.l().order()) {
            let split = direct_product_extension(m.quotient(), m.kernel()).expect("direct product");
            out.push((format!("{name}_direct"), split));
        }
        let fs = nontrivial_factor_system(&m);
        out.push((format!("{name}_built"), build_extension(&m, &fs).expect("cocycle builds")));
    }
    out
}
