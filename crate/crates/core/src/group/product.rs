use super::{ElemId, FiniteGroup, GroupMap, MapKind};
use crate::{Error, Result};
use std::sync::Arc;

/// `G × H` on the disjoint union of the two point sets, with coordinate
/// tables in both directions.
#[derive(Debug)]
pub struct DirectProduct {
    pub left: Arc<FiniteGroup>,
    pub right: Arc<FiniteGroup>,
    pub group: Arc<FiniteGroup>,
    pairs: Vec<(ElemId, ElemId)>,
    /// `ids[a * |H| + b]` is the product element `(a, b)`.
    ids: Vec<ElemId>,
}

pub fn direct_product(
    left: Arc<FiniteGroup>,
    right: Arc<FiniteGroup>,
    cap: usize,
) -> Result<DirectProduct> {
    let (n, m) = (left.order(), right.order());
    if n.saturating_mul(m) > cap {
        return Err(Error::cap("direct product order", cap as u64));
    }
    let (d1, d2) = (left.degree(), right.degree());
    let total = d1 + d2;
    let gens: Vec<_> = left
        .generators()
        .iter()
        .map(|g| g.shifted(0, total))
        .chain(right.generators().iter().map(|g| g.shifted(d1, total)))
        .collect();
    let group = FiniteGroup::from_generators(&gens, cap)?;
    debug_assert_eq!(group.order(), n * m);
    let mut pairs = Vec::with_capacity(n * m);
    let mut ids = vec![0; n * m];
    for (x, p) in group.elements().iter().enumerate() {
        let a = left.id_of(&p.restrict(0, d1).expect("left block is invariant")).expect("left coordinate");
        let b = right.id_of(&p.restrict(d1, d2).expect("right block is invariant")).expect("right coordinate");
        pairs.push((a, b));
        ids[a as usize * m + b as usize] = x as ElemId;
    }
    Ok(DirectProduct {
        left,
        right,
        group: Arc::new(group),
        pairs,
        ids,
    })
}

impl DirectProduct {
    pub fn pair(&self, x: ElemId) -> (ElemId, ElemId) {
        self.pairs[x as usize]
    }

    pub fn element_of(&self, a: ElemId, b: ElemId) -> ElemId {
        self.ids[a as usize * self.right.order() + b as usize]
    }

    pub fn embed_left(&self) -> Result<GroupMap> {
        let imgs: Vec<ElemId> = self.left.generator_ids().into_iter().map(|a| self.element_of(a, 0)).collect();
        GroupMap::from_generator_images(&self.left, &self.group, &imgs, MapKind::Embedding)
    }

    pub fn embed_right(&self) -> Result<GroupMap> {
        let imgs: Vec<ElemId> = self.right.generator_ids().into_iter().map(|b| self.element_of(0, b)).collect();
        GroupMap::from_generator_images(&self.right, &self.group, &imgs, MapKind::Embedding)
    }

    pub fn project_left(&self) -> Result<GroupMap> {
        let imgs: Vec<ElemId> = self.group.generator_ids().into_iter().map(|x| self.pair(x).0).collect();
        GroupMap::from_generator_images(&self.group, &self.left, &imgs, MapKind::Projection)
    }

    pub fn project_right(&self) -> Result<GroupMap> {
        let imgs: Vec<ElemId> = self.group.generator_ids().into_iter().map(|x| self.pair(x).1).collect();
        GroupMap::from_generator_images(&self.group, &self.right, &imgs, MapKind::Projection)
    }
}
