//! JSON documents for groups, RRB groups, modules, factor systems,
//! extensions and automorphism pairs.
//!
//! Every document carries a `"type"` tag. Groups are given by a Cayley
//! table (`{"table": [[..]]}`) or by permutation generators
//! (`{"degree": n, "generators": [[..]]}`). Factor systems list values on
//! nondegenerate tuples only, in lexicographic tuple order.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::extension::{build_extension, validate_extension, Extension, ExtensionError};
use crate::groupkit::{FiniteGroup, GroupError};
use crate::module::{ActionQuadruple, FactorSystem, Module, ModuleError};
use crate::rrb::{validate_morphism, validate_rrb, RRBGroup, RrbError};
use crate::wells::{CompatiblePair, MapPair, WellsError};

#[derive(Debug, Error)]
pub enum JsonError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Rrb(#[from] RrbError),
    #[error(transparent)]
    Module(#[from] ModuleError),
    #[error(transparent)]
    Extension(#[from] ExtensionError),
    #[error(transparent)]
    Wells(#[from] WellsError),
    #[error("factor system shape {got:?} does not match module shape {expected:?}")]
    FactorSystemShape { expected: (usize, usize, usize, usize), got: (usize, usize, usize, usize) },
}

impl JsonError {
    /// Parse failures, as opposed to well-formed but invalid payloads.
    pub fn is_parse(&self) -> bool {
        matches!(self, JsonError::Parse(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupJson {
    Table {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        order: Option<usize>,
        table: Vec<Vec<usize>>,
    },
    Permutations {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        name: Option<String>,
        degree: usize,
        generators: Vec<Vec<usize>>,
    },
}

impl GroupJson {
    pub fn of(g: &FiniteGroup) -> Self {
        GroupJson::Table { name: g.name().map(str::to_string), order: Some(g.order()), table: g.table() }
    }

    pub fn to_group(&self) -> Result<FiniteGroup, GroupError> {
        match self {
            GroupJson::Table { name, order, table } => {
                if let Some(n) = *order {
                    if n != table.len() {
                        return Err(GroupError::LengthMismatch { expected: n, got: table.len() });
                    }
                }
                let g = FiniteGroup::from_table(table)?;
                Ok(match name {
                    Some(n) => g.with_name(n.clone()),
                    None => g,
                })
            }
            GroupJson::Permutations { name, degree, generators } => {
                let g = FiniteGroup::from_permutations(*degree, generators)?;
                Ok(match name {
                    Some(n) => g.with_name(n.clone()),
                    None => g,
                })
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RrbJson {
    #[serde(rename = "H", alias = "h")]
    pub h: GroupJson,
    #[serde(rename = "G", alias = "g")]
    pub g: GroupJson,
    /// `phi[g]` is a permutation of H; omitted means trivial.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<Vec<usize>>>,
    #[serde(rename = "R", alias = "r")]
    pub r: Vec<usize>,
}

impl RrbJson {
    pub fn of(rrb: &RRBGroup) -> Self {
        RrbJson {
            h: GroupJson::of(rrb.h()),
            g: GroupJson::of(rrb.g()),
            phi: Some(rrb.phi_table().to_vec()),
            r: rrb.r_map().to_vec(),
        }
    }

    pub fn to_rrb(&self) -> Result<RRBGroup, JsonError> {
        let h = self.h.to_group()?;
        let g = self.g.to_group()?;
        let phi = match &self.phi {
            Some(p) => p.clone(),
            None => vec![h.elements().collect(); g.order()],
        };
        Ok(validate_rrb(&h, &g, phi, self.r.clone())?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub quotient: RrbJson,
    pub kernel: RrbJson,
    pub action: ActionQuadruple,
}

impl ModuleJson {
    pub fn of(m: &Module) -> Self {
        ModuleJson {
            quotient: RrbJson::of(m.quotient()),
            kernel: RrbJson::of(m.kernel()),
            action: m.action().clone(),
        }
    }

    pub fn to_module(&self) -> Result<Module, JsonError> {
        Ok(Module::new(&self.quotient.to_rrb()?, &self.kernel.to_rrb()?, self.action.clone())?)
    }
}

/// Factor system on nondegenerate tuples: `tau1` over `(a1, a2)`, `tau2`
/// over `(b1, b2)`, `rho` over `(a, b)`, `chi` over `a`, all nonzero indices.
/// `shape` is `(|A|, |B|, |K|, |L|)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorSystemJson {
    pub shape: (usize, usize, usize, usize),
    pub tau1: Vec<usize>,
    pub tau2: Vec<usize>,
    pub rho: Vec<usize>,
    pub chi: Vec<usize>,
}

impl FactorSystemJson {
    pub fn of(module: &Module, fs: &FactorSystem) -> Self {
        let (na, nb) = fs.shape();
        let nd = |n: usize| 1..n;
        FactorSystemJson {
            shape: (na, nb, module.k().order(), module.l().order()),
            tau1: nd(na).flat_map(|x| nd(na).map(move |y| fs.tau1[x][y])).collect(),
            tau2: nd(nb).flat_map(|x| nd(nb).map(move |y| fs.tau2[x][y])).collect(),
            rho: nd(na).flat_map(|x| nd(nb).map(move |y| fs.rho[x][y])).collect(),
            chi: nd(na).map(|x| fs.chi[x]).collect(),
        }
    }

    pub fn to_factor_system(&self) -> Result<FactorSystem, JsonError> {
        let (na, nb, _, _) = self.shape;
        let (ma, mb) = (na.saturating_sub(1), nb.saturating_sub(1));
        if na == 0 || nb == 0 || self.tau1.len() != ma * ma || self.tau2.len() != mb * mb || self.rho.len() != ma * mb || self.chi.len() != ma {
            return Err(JsonError::Parse("factor system arrays do not match the declared shape".into()));
        }
        let mut fs = FactorSystem::zero(na, nb);
        for x in 1..na {
            for y in 1..na {
                fs.tau1[x][y] = self.tau1[(x - 1) * ma + y - 1];
            }
            for y in 1..nb {
                fs.rho[x][y] = self.rho[(x - 1) * mb + y - 1];
            }
            fs.chi[x] = self.chi[x - 1];
        }
        for x in 1..nb {
            for y in 1..nb {
                fs.tau2[x][y] = self.tau2[(x - 1) * mb + y - 1];
            }
        }
        Ok(fs)
    }
}

/// An extension given either explicitly or as a module with a cocycle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ExtensionJson {
    Explicit { kernel: RrbJson, total: RrbJson, quotient: RrbJson, incl: MapPair, proj: MapPair },
    Built { module: ModuleJson, factor_system: FactorSystemJson },
}

impl ExtensionJson {
    pub fn of(ext: &Extension) -> Self {
        ExtensionJson::Explicit {
            kernel: RrbJson::of(ext.kernel()),
            total: RrbJson::of(ext.total()),
            quotient: RrbJson::of(ext.quotient()),
            incl: MapPair::of(ext.incl()),
            proj: MapPair::of(ext.proj()),
        }
    }

    pub fn to_extension(&self) -> Result<Extension, JsonError> {
        match self {
            ExtensionJson::Explicit { kernel, total, quotient, incl, proj } => {
                let (k, h, a) = (kernel.to_rrb()?, total.to_rrb()?, quotient.to_rrb()?);
                let i = validate_morphism(&k, &h, incl.psi.clone(), incl.eta.clone())?;
                let p = validate_morphism(&h, &a, proj.psi.clone(), proj.eta.clone())?;
                Ok(validate_extension(&k, &h, &a, &i, &p)?)
            }
            ExtensionJson::Built { module, factor_system } => {
                let m = module.to_module()?;
                let fs = factor_system.to_factor_system()?;
                if factor_system.shape != m.shape() {
                    return Err(JsonError::FactorSystemShape { expected: m.shape(), got: factor_system.shape });
                }
                Ok(build_extension(&m, &fs)?)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairJson {
    pub psi: MapPair,
    pub theta: MapPair,
}

impl PairJson {
    pub fn of(pair: &CompatiblePair) -> Self {
        PairJson { psi: MapPair::of(&pair.psi), theta: MapPair::of(&pair.theta) }
    }

    pub fn to_pair(&self, quotient: &RRBGroup, kernel: &RRBGroup) -> Result<CompatiblePair, JsonError> {
        Ok(CompatiblePair::new(
            quotient,
            kernel,
            (self.psi.psi.clone(), self.psi.eta.clone()),
            (self.theta.psi.clone(), self.theta.eta.clone()),
        )?)
    }
}

/// Any top-level document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Document {
    Group(GroupJson),
    Rrb(RrbJson),
    Module(ModuleJson),
    FactorSystem(FactorSystemJson),
    Extension(ExtensionJson),
    Pair(PairJson),
}

impl Document {
    pub fn parse(text: &str) -> Result<Self, JsonError> {
        serde_json::from_str(text).map_err(|e| JsonError::Parse(e.to_string()))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Document::Group(_) => "group",
            Document::Rrb(_) => "rrb",
            Document::Module(_) => "module",
            Document::FactorSystem(_) => "factor_system",
            Document::Extension(_) => "extension",
            Document::Pair(_) => "pair",
        }
    }

    pub fn to_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn module_roundtrip() {
        for (_, m) in corpus::modules() {
            let doc = Document::Module(ModuleJson::of(&m));
            let Document::Module(back) = Document::parse(&doc.to_pretty()).unwrap() else { panic!() };
            let m2 = back.to_module().unwrap();
            assert_eq!(m2.action(), m.action());
            assert_eq!(m2.quotient(), m.quotient());
        }
    }

    #[test]
    fn extension_roundtrip() {
        for (_, e) in corpus::extensions() {
            let doc = Document::Extension(ExtensionJson::of(&e));
            let Document::Extension(back) = Document::parse(&doc.to_pretty()).unwrap() else { panic!() };
            let e2 = back.to_extension().unwrap();
            assert_eq!(e2.total(), e.total());
        }
    }

    #[test]
    fn factor_system_roundtrip() {
        let m = corpus::klein_swap();
        let fs = corpus::nontrivial_factor_system(&m);
        assert_eq!(FactorSystemJson::of(&m, &fs).to_factor_system().unwrap(), fs);
    }

    #[test]
    fn permutation_groups_parse() {
        let doc = r#"{"type": "group", "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]]}"#;
        let Document::Group(g) = Document::parse(doc).unwrap() else { panic!() };
        assert_eq!(g.to_group().unwrap().order(), 6);
    }

    #[test]
    fn broken_table_is_invalid_not_unparseable() {
        let doc = r#"{"type": "group", "table": [[0, 1], [1, 1]]}"#;
        let Document::Group(g) = Document::parse(doc).unwrap() else { panic!() };
        assert_eq!(g.to_group().unwrap_err(), GroupError::NoInverse(1));
        assert!(Document::parse("{").unwrap_err().is_parse());
    }
}
