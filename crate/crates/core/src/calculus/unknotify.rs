use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::linkdiag::{
    insert_crossing_gadget, ComponentId, CrossingId, DiagramError, End, FramedLinkDiagram,
    GadgetRecord, Level, Side,
};

/// Which crossings `unknotify` changes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum UnknotMode {
    /// Only self-crossings, each component traversed on its own: every
    /// component becomes an unknot.
    #[default]
    Components,
    /// Every crossing of the descending switch set for the whole order: the
    /// original components become an unlink.
    Unlink,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Unknotified {
    pub diagram: FramedLinkDiagram,
    /// In insertion order.
    pub gadgets: Vec<GadgetRecord>,
    pub p: usize,
}

/// Side used for the gadget at crossing `c`: a self-crossing is encircled
/// with opposite orientations so the unknot does not link its component.
pub fn gadget_side(d: &FramedLinkDiagram, c: CrossingId) -> Result<Side, DiagramError> {
    let x = d.crossing(c).ok_or(DiagramError::UnknownCrossing(c))?;
    if d.strand_owner(x, Level::Over) == d.strand_owner(x, Level::Under) {
        Ok(Side {
            over: End::In,
            under: End::Out,
        })
    } else {
        Ok(Side::INCOMING)
    }
}

/// Crossings to change so that the components of `order` become descending.
pub fn unknot_switch_set(
    d: &FramedLinkDiagram,
    order: &[ComponentId],
    mode: UnknotMode,
) -> Result<BTreeSet<CrossingId>, DiagramError> {
    match mode {
        UnknotMode::Unlink => d.descending_switch_set(order),
        UnknotMode::Components => {
            let mut set = BTreeSet::new();
            for &id in order {
                set.extend(d.descending_switch_set(&[id])?);
            }
            Ok(set)
        }
    }
}

/// Realizes the crossing changes that make `d` descending by blow-up
/// gadgets, in increasing crossing id. `order` defaults to declaration order.
pub fn unknotify(
    d: &FramedLinkDiagram,
    order: Option<&[ComponentId]>,
    mode: UnknotMode,
) -> Result<Unknotified, DiagramError> {
    let default = d.default_order();
    let order = order.unwrap_or(&default);
    let set = unknot_switch_set(d, order, mode)?;
    let mut out = d.clone();
    let mut gadgets = Vec::with_capacity(set.len());
    for &c in &set {
        let side = gadget_side(&out, c)?;
        let (next, record) = insert_crossing_gadget(&out, c, side)?;
        out = next;
        gadgets.push(record);
    }
    debug_assert!(unknot_switch_set(&out, order, mode).is_ok_and(|s| s.is_empty()));
    Ok(Unknotified {
        diagram: out,
        p: gadgets.len(),
        gadgets,
    })
}
