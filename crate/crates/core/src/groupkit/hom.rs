use itertools::Itertools;

use super::group::{generating_set, normality_witness, subgroup_closure, FiniteGroup, GroupError};

/// Default cap on group orders for automorphism enumeration.
pub const DEFAULT_MAX_ORDER: usize = 64;

/// Orders at or below this use the full bijection search.
const BIJECTION_SEARCH_MAX: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub domain: FiniteGroup,
    pub codomain: FiniteGroup,
    pub image: Vec<usize>,
}

impl GroupHom {
    pub fn new(domain: &FiniteGroup, codomain: &FiniteGroup, image: Vec<usize>) -> Result<Self, GroupError> {
        if !is_homomorphism(&image, domain, codomain)? {
            let (x, y) = first_hom_failure(&image, domain, codomain);
            return Err(GroupError::NotHomomorphism(x, y));
        }
        Ok(GroupHom { domain: domain.clone(), codomain: codomain.clone(), image })
    }

    /// Builds without checking; callers guarantee the homomorphism property.
    pub(crate) fn unchecked(domain: &FiniteGroup, codomain: &FiniteGroup, image: Vec<usize>) -> Self {
        debug_assert_eq!(image.len(), domain.order());
        GroupHom { domain: domain.clone(), codomain: codomain.clone(), image }
    }

    pub fn identity(group: &FiniteGroup) -> Self {
        GroupHom::unchecked(group, group, group.elements().collect())
    }

    pub fn trivial(domain: &FiniteGroup, codomain: &FiniteGroup) -> Self {
        GroupHom::unchecked(domain, codomain, vec![0; domain.order()])
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// `self ∘ other`, i.e. `x -> self(other(x))`.
    pub fn compose(&self, other: &GroupHom) -> GroupHom {
        assert_eq!(other.codomain, self.domain, "composing incompatible homomorphisms");
        GroupHom::unchecked(
            &other.domain,
            &self.codomain,
            other.image.iter().map(|&x| self.image[x]).collect(),
        )
    }

    pub fn is_injective(&self) -> bool {
        self.kernel() == vec![0]
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.codomain.order()];
        for &y in &self.image {
            hit[y] = true;
        }
        hit.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain.order() == self.codomain.order() && self.is_surjective()
    }

    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            inv[y] = x;
        }
        Some(GroupHom::unchecked(&self.codomain, &self.domain, inv))
    }

    pub fn kernel(&self) -> Vec<usize> {
        self.domain.elements().filter(|&x| self.image[x] == 0).collect()
    }

    pub fn image_set(&self) -> Vec<usize> {
        self.image.iter().copied().sorted().dedup().collect()
    }
}

fn first_hom_failure(map: &[usize], g: &FiniteGroup, h: &FiniteGroup) -> (usize, usize) {
    g.elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .find(|&(x, y)| map[g.mul(x, y)] != h.mul(map[x], map[y]))
        .unwrap_or((0, 0))
}

/// `map[x y] == map[x] map[y]` for all pairs.
pub fn is_homomorphism(map: &[usize], g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, GroupError> {
    if map.len() != g.order() {
        return Err(GroupError::LengthMismatch { expected: g.order(), got: map.len() });
    }
    if let Some(&bad) = map.iter().find(|&&y| y >= h.order()) {
        return Err(GroupError::IndexOutOfRange(bad));
    }
    Ok(g.elements()
        .all(|x| g.elements().all(|y| map[g.mul(x, y)] == h.mul(map[x], map[y]))))
}

/// Extends generator images to a map on the whole group, or `None` when the
/// assignment is inconsistent.
fn extend_from_generators(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[0] = 0;
    let mut frontier = vec![0usize];
    while let Some(x) = frontier.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let y = g.mul(x, s);
            let v = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = v;
                frontier.push(y);
            } else if map[y] != v {
                return None;
            }
        }
    }
    Some(map)
}

/// All homomorphisms `g -> h`, sorted by image array.
pub fn homomorphisms(g: &FiniteGroup, h: &FiniteGroup) -> Vec<GroupHom> {
    let gens = generating_set(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let ord = g.element_order(s);
            h.elements().filter(|&t| ord.is_multiple_of(h.element_order(t))).collect()
        })
        .collect();
    let mut out: Vec<Vec<usize>> = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    backtrack_homs(g, h, &gens, &candidates, &mut images, &mut out);
    out.sort();
    out.dedup();
    out.into_iter().map(|m| GroupHom::unchecked(g, h, m)).collect()
}

fn backtrack_homs(
    g: &FiniteGroup,
    h: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(map) = extend_from_generators(g, h, gens, images) {
            out.push(map);
        }
        return;
    }
    for &t in &candidates[depth] {
        images.push(t);
        // prune on the subgroup generated so far
        if extend_from_generators(g, h, &gens[..=depth], images).is_some() {
            backtrack_homs(g, h, gens, candidates, images, out);
        }
        images.pop();
    }
}

/// The full automorphism group, sorted lexicographically by image array.
pub fn automorphism_group(g: &FiniteGroup, max_order: usize) -> Result<Vec<GroupHom>, GroupError> {
    if g.order() > max_order {
        return Err(GroupError::OrderTooLarge { order: g.order(), bound: max_order });
    }
    if g.order() <= BIJECTION_SEARCH_MAX {
        Ok(automorphisms_by_bijection(g))
    } else {
        Ok(automorphisms_by_generators(g))
    }
}

pub(crate) fn automorphisms_by_bijection(g: &FiniteGroup) -> Vec<GroupHom> {
    let n = g.order();
    let mut out = Vec::new();
    for perm in (1..n).permutations(n - 1) {
        let mut map = Vec::with_capacity(n);
        map.push(0);
        map.extend(perm);
        if is_homomorphism(&map, g, g).expect("shape is correct") {
            out.push(map);
        }
    }
    out.sort();
    out.into_iter().map(|m| GroupHom::unchecked(g, g, m)).collect()
}

pub(crate) fn automorphisms_by_generators(g: &FiniteGroup) -> Vec<GroupHom> {
    let gens = generating_set(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let ord = g.element_order(s);
            g.elements().filter(|&t| g.element_order(t) == ord).collect()
        })
        .collect();
    let mut maps = Vec::new();
    let mut images = Vec::new();
    backtrack_homs(g, g, &gens, &candidates, &mut images, &mut maps);
    maps.retain(|m| {
        let mut seen = vec![false; m.len()];
        m.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    });
    maps.sort();
    maps.into_iter().map(|m| GroupHom::unchecked(g, g, m)).collect()
}

/// A group together with its two injections and two projections.
#[derive(Clone, Debug)]
pub struct DirectProduct {
    pub group: FiniteGroup,
    pub inj_left: GroupHom,
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

/// `G x H` with pair encoding `g * |H| + h` and componentwise product.
pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup) -> DirectProduct {
    let (m, n) = (g.order(), h.order());
    let mut flat = Vec::with_capacity(m * n * m * n);
    for x in 0..m * n {
        for y in 0..m * n {
            flat.push(g.mul(x / n, y / n) * n + h.mul(x % n, y % n));
        }
    }
    let name = match (g.name(), h.name()) {
        (Some(a), Some(b)) => Some(format!("{a}x{b}")),
        _ => None,
    };
    let group = FiniteGroup::from_flat(name, m * n, flat).expect("direct product is a group");
    DirectProduct {
        inj_left: GroupHom::unchecked(g, &group, (0..m).map(|x| x * n).collect()),
        inj_right: GroupHom::unchecked(h, &group, (0..n).collect()),
        proj_left: GroupHom::unchecked(&group, g, (0..m * n).map(|x| x / n).collect()),
        proj_right: GroupHom::unchecked(&group, h, (0..m * n).map(|x| x % n).collect()),
        group,
    }
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    pub projection: GroupHom,
    /// Minimum-index representative of each coset; `section[0] == 0`.
    pub section: Vec<usize>,
}

/// `G / N`. Cosets are indexed by increasing minimum representative, so
/// the identity coset is element 0.
pub fn quotient_group(g: &FiniteGroup, normal: &[usize]) -> Result<Quotient, GroupError> {
    let sub = subgroup_closure(g, normal)?;
    if sub.len() != normal.iter().copied().sorted().dedup().count() {
        return Err(GroupError::IndexOutOfRange(normal.iter().copied().max().unwrap_or(0)));
    }
    if let Some((x, k)) = normality_witness(g, &sub) {
        return Err(GroupError::NotNormal { g: x, k });
    }
    let mut coset_of = vec![usize::MAX; g.order()];
    let mut section = Vec::new();
    for x in g.elements() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let c = section.len();
        section.push(x);
        for &k in &sub {
            coset_of[g.mul(x, k)] = c;
        }
    }
    let q = section.len();
    let flat = (0..q)
        .flat_map(|i| {
            let (section, coset_of) = (&section, &coset_of);
            (0..q).map(move |j| coset_of[g.mul(section[i], section[j])])
        })
        .collect();
    let group = FiniteGroup::from_flat(None, q, flat).expect("quotient by a normal subgroup is a group");
    Ok(Quotient { projection: GroupHom::unchecked(g, &group, coset_of), group, section })
}

/// Brute-force isomorphism search; returns one isomorphism if any.
pub fn find_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Option<GroupHom> {
    if g.order() != h.order() {
        return None;
    }
    homomorphisms(g, h).into_iter().find(|m| m.is_bijective())
}
