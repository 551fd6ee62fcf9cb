//! Passing between irredundant sets and general-position families.

use super::{is_general_position, is_irredundant, MaximalFamily};
use crate::group::{ElemId, FiniteGroup};
use crate::lattice::MaximalCatalog;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertificateKind {
    FamilyFromGenerators,
    IrredundantFromFamily,
}

/// Elements `g_i` paired with members `M_i` so that `g_i ∉ M_i` while every
/// other `g_j` lies in `M_i`.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub kind: CertificateKind,
    pub elements: Vec<ElemId>,
    pub family: MaximalFamily,
}

impl Certificate {
    /// Checks the pairing condition directly.
    pub fn is_valid(&self) -> bool {
        self.elements.len() == self.family.len()
            && self.family.members().iter().enumerate().all(|(i, m)| {
                self.elements
                    .iter()
                    .enumerate()
                    .all(|(j, &x)| m.contains(x) == (i != j))
            })
    }
}

/// For each `g_i`, the first catalog entry containing the other generators.
pub fn certify_family_from_generators(
    g: &FiniteGroup,
    gens: &[ElemId],
    catalog: &MaximalCatalog,
) -> Result<Certificate> {
    if catalog.parent != g.uid() {
        return Err(Error::MixedParents);
    }
    if !is_irredundant(g, gens, true) {
        return Err(Error::InvalidInput("not an irredundant generating set".into()));
    }
    let mut indices = Vec::with_capacity(gens.len());
    for i in 0..gens.len() {
        let idx = catalog
            .maximals
            .iter()
            .position(|m| gens.iter().enumerate().all(|(j, &x)| j == i || m.contains(x)))
            .ok_or(Error::NoMaximalOvergroup)?;
        indices.push(idx);
    }
    let family = MaximalFamily::from_catalog(g, catalog, &indices)?;
    let cert = Certificate {
        kind: CertificateKind::FamilyFromGenerators,
        elements: gens.to_vec(),
        family,
    };
    if !cert.is_valid() || !is_general_position(&cert.family) {
        return Err(Error::ConstructionFailed("family from generators is not in general position".into()));
    }
    Ok(cert)
}

/// For each member, the smallest element of `⋂_{j≠i} M_j ∖ M_i`.
pub fn certify_irredundant_from_family(g: &FiniteGroup, family: &MaximalFamily) -> Result<Certificate> {
    if family.parent_uid() != g.uid() {
        return Err(Error::MixedParents);
    }
    let mut elements = Vec::with_capacity(family.len());
    for (i, m) in family.members().iter().enumerate() {
        let others = family.intersection_without(i);
        let x = others.first_not_in(m.members()).ok_or(Error::EmptyDifference(i))?;
        elements.push(x as ElemId);
    }
    if !is_irredundant(g, &elements, false) {
        return Err(Error::ConstructionFailed("elements from family are not irredundant".into()));
    }
    Ok(Certificate {
        kind: CertificateKind::IrredundantFromFamily,
        elements,
        family: family.clone(),
    })
}
