use std::collections::BTreeSet;

use itertools::Itertools;
use proptest::prelude::*;
use rrb_core::groupkit::*;

fn z4_table() -> Vec<Vec<usize>> {
    vec![vec![0, 1, 2, 3], vec![1, 2, 3, 0], vec![2, 3, 0, 1], vec![3, 0, 1, 2]]
}

fn small_groups() -> Vec<FiniteGroup> {
    vec![
        FiniteGroup::trivial(),
        FiniteGroup::cyclic(2),
        FiniteGroup::cyclic(3),
        FiniteGroup::cyclic(4),
        FiniteGroup::klein(),
        FiniteGroup::cyclic(6),
        FiniteGroup::symmetric(3),
        direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(4)).group,
        direct_product(&FiniteGroup::klein(), &FiniteGroup::cyclic(2)).group,
    ]
}

#[test]
fn validation_examples() {
    assert_eq!(FiniteGroup::from_table(&z4_table()).unwrap().order(), 4);
    assert_eq!(FiniteGroup::from_table(&[vec![0, 1], vec![1, 1]]).unwrap_err(), GroupError::NoInverse(1));

    // S3 by composing all six permutations of {0,1,2}
    let perms: Vec<Vec<usize>> = (0..3).permutations(3).collect();
    let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| perms.iter().map(|q| index(&(0..3).map(|i| p[q[i]]).collect())).collect())
        .collect();
    let s3 = FiniteGroup::from_table(&table).unwrap();
    assert_eq!(s3.order(), 6);
    assert!(!s3.is_abelian());
}

#[test]
fn homomorphism_examples() {
    let z4 = FiniteGroup::cyclic(4);
    let z2 = FiniteGroup::cyclic(2);
    assert!(is_homomorphism(&[0, 1, 2, 3], &z4, &z4).unwrap());
    assert!(is_homomorphism(&[0, 0, 0, 0], &z4, &z2).unwrap());
    assert!(!is_homomorphism(&[0, 1, 0, 1], &z4, &z4).unwrap());
    assert!(is_homomorphism(&[0, 1], &z4, &z2).is_err());
}

#[test]
fn automorphism_examples() {
    assert_eq!(automorphism_group(&FiniteGroup::cyclic(2), 64).unwrap().len(), 1);
    let z4 = automorphism_group(&FiniteGroup::cyclic(4), 64).unwrap();
    let images: Vec<_> = z4.iter().map(|a| a.image.clone()).collect();
    assert_eq!(images, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);

    // oracle: bijections of V4 fixing 0 that respect the table
    let v4 = FiniteGroup::klein();
    let brute = (1..4)
        .permutations(3)
        .filter(|p| {
            let map: Vec<usize> = std::iter::once(0).chain(p.iter().copied()).collect();
            v4.elements().all(|x| v4.elements().all(|y| map[v4.mul(x, y)] == v4.mul(map[x], map[y])))
        })
        .count();
    assert_eq!(brute, 6);
    assert_eq!(automorphism_group(&v4, 64).unwrap().len(), brute);
    assert!(matches!(
        automorphism_group(&FiniteGroup::cyclic(65), 64),
        Err(GroupError::OrderTooLarge { .. })
    ));
}

#[test]
fn automorphisms_form_a_group() {
    for g in small_groups() {
        let auts = automorphism_group(&g, 64).unwrap();
        let set: BTreeSet<Vec<usize>> = auts.iter().map(|a| a.image.clone()).collect();
        assert_eq!(set.len(), auts.len());
        assert!(set.contains(&g.elements().collect::<Vec<_>>()));
        assert!(auts.windows(2).all(|w| w[0].image < w[1].image));
        for a in &auts {
            assert!(set.contains(&a.inverse().unwrap().image));
            for b in &auts {
                assert!(set.contains(&a.compose(b).image));
            }
        }
    }
}

#[test]
fn closure_and_normality() {
    let z4 = FiniteGroup::cyclic(4);
    assert_eq!(subgroup_closure(&z4, &[0]).unwrap(), vec![0]);
    assert_eq!(subgroup_closure(&z4, &[2]).unwrap(), vec![0, 2]);
    assert!(is_normal(&z4, &[0, 2]));
    let s3 = FiniteGroup::symmetric(3);
    let t = s3.elements().find(|&x| x != 0 && s3.element_order(x) == 2).unwrap();
    let sub = subgroup_closure(&s3, &[t]).unwrap();
    assert_eq!(sub.len(), 2);
    assert!(!is_normal(&s3, &sub));
}

#[test]
fn quotient_examples() {
    let z4 = FiniteGroup::cyclic(4);
    let q = quotient_group(&z4, &[0, 2]).unwrap();
    assert_eq!(q.group.order(), 2);
    assert_eq!(q.section, vec![0, 1]);
    let q = quotient_group(&z4, &[0]).unwrap();
    assert_eq!(q.projection.image, vec![0, 1, 2, 3]);
    let s3 = FiniteGroup::symmetric(3);
    let a3: Vec<usize> = s3.elements().filter(|&x| s3.element_order(x) != 2).collect();
    let q = quotient_group(&s3, &a3).unwrap();
    assert!(find_isomorphism(&q.group, &FiniteGroup::cyclic(2)).is_some());
}

#[test]
fn quotient_invariants() {
    for g in small_groups() {
        for n in g.elements() {
            let sub = subgroup_closure(&g, &[n]).unwrap();
            if !is_normal(&g, &sub) {
                continue;
            }
            let q = quotient_group(&g, &sub).unwrap();
            assert!(q.projection.is_surjective());
            assert_eq!(q.section[0], 0);
            for (c, &s) in q.section.iter().enumerate() {
                assert_eq!(q.projection.apply(s), c);
            }
        }
    }
}

#[test]
fn presentation_examples() {
    let factors = |g: &FiniteGroup| abelian_presentation(g).unwrap().invariant_factors().to_vec();
    assert_eq!(factors(&FiniteGroup::cyclic(4)), vec![4]);
    assert_eq!(factors(&FiniteGroup::klein()), vec![2, 2]);
    assert_eq!(factors(&direct_product(&FiniteGroup::cyclic(2), &FiniteGroup::cyclic(3)).group), vec![6]);
    assert!(abelian_presentation(&FiniteGroup::symmetric(3)).is_err());
}

#[test]
fn presentations_are_additive_bijections() {
    for g in small_groups().into_iter().filter(FiniteGroup::is_abelian) {
        let p = abelian_presentation(&g).unwrap();
        let f = p.invariant_factors();
        assert!(f.windows(2).all(|w| w[1] % w[0] == 0));
        assert!(f.iter().all(|&d| d >= 2));
        let coords: BTreeSet<Vec<i64>> = g.elements().map(|x| p.coords(x).to_vec()).collect();
        assert_eq!(coords.len(), g.order());
        for x in g.elements() {
            assert_eq!(p.element(p.coords(x)), x);
            for y in g.elements() {
                let sum: Vec<i64> = p.coords(x).iter().zip(p.coords(y)).map(|(a, b)| a + b).collect();
                assert_eq!(p.element(&sum), g.mul(x, y));
            }
        }
    }
}

#[test]
fn kernel_image_cokernel_examples() {
    let zero = FinAbHom::new(vec![2], vec![2], vec![vec![0]]).unwrap();
    let kic = hom_kernel_image_quotient(&zero);
    assert_eq!((kic.kernel.order(), kic.image.order(), kic.cokernel.order()), (2, 1, 2));
    let id = FinAbHom::new(vec![4], vec![4], vec![vec![1]]).unwrap();
    let kic = hom_kernel_image_quotient(&id);
    assert_eq!((kic.kernel.order(), kic.cokernel.order()), (1, 1));
    let twice = FinAbHom::new(vec![4], vec![4], vec![vec![2]]).unwrap();
    let kic = hom_kernel_image_quotient(&twice);
    // oracle: enumerate the four elements
    let images: BTreeSet<i64> = (0..4).map(|x| (2 * x) % 4).collect();
    let kernel = (0..4).filter(|x| (2 * x) % 4 == 0).count();
    assert_eq!(kic.kernel.order(), kernel as u128);
    assert_eq!(kic.image.order(), images.len() as u128);
    assert_eq!(kic.cokernel.order(), 4 / images.len() as u128);
}

#[test]
fn direct_product_examples() {
    let z2 = FiniteGroup::cyclic(2);
    let v = direct_product(&z2, &z2).group;
    assert_eq!(v.exponent(), 2);
    assert!(find_isomorphism(&v, &FiniteGroup::klein()).is_some());
    let g = FiniteGroup::symmetric(3);
    assert!(find_isomorphism(&direct_product(&g, &FiniteGroup::trivial()).group, &g).is_some());
    let z6 = direct_product(&z2, &FiniteGroup::cyclic(3)).group;
    assert!(find_isomorphism(&z6, &FiniteGroup::cyclic(6)).is_some());
}

fn moduli_strategy() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 6]), 1..4)
}

proptest! {
    #[test]
    fn cancellation_holds(idx in 0usize..9) {
        let g = &small_groups()[idx];
        for x in g.elements() {
            let row: BTreeSet<usize> = g.elements().map(|y| g.mul(x, y)).collect();
            let col: BTreeSet<usize> = g.elements().map(|y| g.mul(y, x)).collect();
            prop_assert_eq!(row.len(), g.order());
            prop_assert_eq!(col.len(), g.order());
        }
    }

    #[test]
    fn order_identities(
        (dom, cod, entries) in (moduli_strategy(), moduli_strategy())
            .prop_flat_map(|(d, c)| {
                let n = d.len() * c.len();
                (Just(d), Just(c), prop::collection::vec(0i64..12, n))
            })
    ) {
        // make the matrix well defined: scale entry (i, j) so d_j kills it mod c_i
        let matrix: Vec<Vec<i64>> = cod.iter().enumerate().map(|(i, &ci)| {
            dom.iter().enumerate().map(|(j, &dj)| {
                let g = num_integer::gcd(ci, dj) as i64;
                entries[i * dom.len() + j] * (ci as i64 / g)
            }).collect()
        }).collect();
        let h = FinAbHom::new(dom.clone(), cod.clone(), matrix).unwrap();
        let kic = hom_kernel_image_quotient(&h);
        let dom_order: u128 = dom.iter().map(|&d| d as u128).product();
        let cod_order: u128 = cod.iter().map(|&d| d as u128).product();
        prop_assert_eq!(kic.kernel.order() * kic.image.order(), dom_order);
        prop_assert_eq!(kic.image.order() * kic.cokernel.order(), cod_order);

        // brute-force kernel and image
        let mut kernel = 0u128;
        let mut image = BTreeSet::new();
        for x in rrb_core::groupkit::abelian::all_vectors(&dom) {
            let y = h.apply(&x);
            if y.iter().all(|&v| v == 0) {
                kernel += 1;
                prop_assert!(kic.kernel.contains(&x));
            }
            prop_assert!(kic.cokernel.class_of(&y).iter().all(|&v| v == 0));
            image.insert(y);
        }
        prop_assert_eq!(kic.kernel.order(), kernel);
        prop_assert_eq!(kic.image.order(), image.len() as u128);
    }
}
