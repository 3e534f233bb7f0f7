use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::intlattice::{blow_down, congruence_slide, stabilize, IntegralLattice, LatticeError};
use crate::linkdiag::{
    blow_down_component, gadget_epsilon, gadget_switch, slide_handle, ComponentId, CrossingId,
    DiagramError, FramedLinkDiagram, Level, Side,
};
use crate::Sign;

/// A Kirby move, applied to a diagram and, in parallel, to its linking matrix.
///
/// `MatrixSlide` and `BlowDownIndex` address components by position in
/// declaration order (the matrix index); the other moves use component ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KirbyMove {
    /// Switches `crossing`, turning the split ±1 unknot `unknot` into the
    /// encircling gadget of [`gadget_switch`].
    GadgetSwitch {
        crossing: CrossingId,
        unknot: ComponentId,
        side: Side,
    },
    /// Slides `component` over the split ±1 unknot `unknot`; the framing of
    /// `component` moves by the unknot's framing.
    SlideOverUnknot {
        component: ComponentId,
        unknot: ComponentId,
        s: Sign,
    },
    /// Adds a split unknot with framing ±1 as the last component.
    AddSplitUnknot(Sign),
    /// Slides component `i` over component `j`.
    MatrixSlide { i: usize, j: usize, s: Sign },
    /// Blows down component `k`, which must be a ±1-framed unknot encircling
    /// some strands.
    BlowDownIndex(usize),
    /// Redraws zero-crossing components as a descending unlink drawing
    /// (see [`FramedLinkDiagram::redraw_unlink`]); the matrix is unchanged.
    DrawUnlink(FramedLinkDiagram),
}

impl KirbyMove {
    pub fn name(&self) -> &'static str {
        match self {
            KirbyMove::GadgetSwitch { .. } => "gadget_switch",
            KirbyMove::SlideOverUnknot { .. } => "slide_over_unknot",
            KirbyMove::AddSplitUnknot(_) => "add_split_unknot",
            KirbyMove::MatrixSlide { .. } => "matrix_slide",
            KirbyMove::BlowDownIndex(_) => "blow_down_index",
            KirbyMove::DrawUnlink(_) => "draw_unlink",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveScript {
    pub initial: FramedLinkDiagram,
    pub moves: Vec<KirbyMove>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MoveError {
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error("component index {index} out of range for {len} components")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("component {0} is not a split zero-crossing unknot")]
    NotSplitUnknot(ComponentId),
    #[error("component {0} does not have framing +1 or -1")]
    FramingNotUnit(ComponentId),
    #[error("matrix-level update disagrees with the linking matrix of the diagram")]
    TraceMismatch,
}

/// A move that failed during replay; `step` counts moves from 1.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("step {step} ({name}): {error}")]
pub struct ReplayError {
    pub step: usize,
    pub name: &'static str,
    pub error: MoveError,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Replay {
    pub diagram: FramedLinkDiagram,
    /// `trace[t]` is the linking matrix after `t` moves.
    pub trace: Vec<IntegralLattice>,
}

/// Replays `script`, checking after every move that the matrix-level update
/// of the previous matrix equals the linking matrix of the new diagram.
pub fn replay(script: &MoveScript) -> Result<Replay, ReplayError> {
    let fail = |step, mv: &KirbyMove, error| ReplayError {
        step,
        name: mv.name(),
        error,
    };
    let mut d = script.initial.clone();
    let first = d.linking_matrix().map_err(|e| ReplayError {
        step: 0,
        name: "initial",
        error: e.into(),
    })?;
    let mut trace = vec![first];
    for (t, mv) in script.moves.iter().enumerate() {
        let before = trace.last().expect("trace starts non-empty");
        let (next_d, next_m) = apply_move(&d, before, mv).map_err(|e| fail(t + 1, mv, e))?;
        d = next_d;
        trace.push(next_m);
    }
    Ok(Replay { diagram: d, trace })
}

/// Applies one move to a diagram and to the matrix `l` (which should be the
/// diagram's linking matrix), cross-checking the two results.
pub fn apply_move(
    d: &FramedLinkDiagram,
    l: &IntegralLattice,
    mv: &KirbyMove,
) -> Result<(FramedLinkDiagram, IntegralLattice), MoveError> {
    let (out, m) = match mv {
        KirbyMove::GadgetSwitch {
            crossing,
            unknot,
            side,
        } => {
            let (out, _) = gadget_switch(d, *crossing, *unknot, *side)?;
            (out, gadget_matrix(d, l, *crossing, *unknot, *side)?)
        }
        KirbyMove::SlideOverUnknot {
            component,
            unknot,
            s,
        } => {
            split_unit_unknot(d, *unknot)?;
            let i = position(d, *component)?;
            let j = position(d, *unknot)?;
            (
                slide_handle(d, *component, *unknot, *s)?,
                congruence_slide(l, i, j, *s)?,
            )
        }
        KirbyMove::AddSplitUnknot(eps) => {
            (d.add_split_unknot(eps.to_bigint()).0, stabilize(l, *eps))
        }
        KirbyMove::MatrixSlide { i, j, s } => {
            let (a, b) = (component_at(d, *i)?, component_at(d, *j)?);
            (slide_handle(d, a, b, *s)?, congruence_slide(l, *i, *j, *s)?)
        }
        KirbyMove::BlowDownIndex(k) => (
            blow_down_component(d, component_at(d, *k)?)?,
            blow_down(l, *k)?,
        ),
        KirbyMove::DrawUnlink(drawing) => (d.redraw_unlink(drawing)?, l.clone()),
    };
    if out.linking_matrix()? != m {
        return Err(MoveError::TraceMismatch);
    }
    Ok((out, m))
}

/// Matrix effect of a gadget switch: the switched crossing changes the
/// linking of its two strands by `-s`, and the unknot `U` picks up the
/// linking vector `v` while each encircled component gains `eps v^2`.
fn gadget_matrix(
    d: &FramedLinkDiagram,
    l: &IntegralLattice,
    c: CrossingId,
    u: ComponentId,
    side: Side,
) -> Result<IntegralLattice, MoveError> {
    let x = d.crossing(c).ok_or(DiagramError::UnknownCrossing(c))?;
    let over = position(
        d,
        d.strand_owner(x, Level::Over)
            .ok_or(DiagramError::UnknownCrossing(c))?,
    )?;
    let under = position(
        d,
        d.strand_owner(x, Level::Under)
            .ok_or(DiagramError::UnknownCrossing(c))?,
    )?;
    let ui = position(d, u)?;
    let eps = gadget_epsilon(x.sign, side).to_bigint();
    let (a, b) = side.passage_signs();
    let mut rows = l.to_rows();
    if over != under {
        rows[over][under] -= x.sign.to_bigint();
        rows[under][over] -= x.sign.to_bigint();
    }
    let mut v = vec![BigInt::from(0); rows.len()];
    v[over] += a.to_bigint();
    v[under] += b.to_bigint();
    for k in 0..rows.len() {
        rows[ui][k] += &v[k];
        if k != ui {
            rows[k][ui] += &v[k];
        }
        rows[k][k] += &eps * &v[k] * &v[k];
    }
    Ok(IntegralLattice::from_rows(rows)?)
}

fn split_unit_unknot(d: &FramedLinkDiagram, u: ComponentId) -> Result<Sign, MoveError> {
    let f = d.framing(u)?;
    let eps = Sign::from_unit(f).ok_or(MoveError::FramingNotUnit(u))?;
    if !d.is_zero_crossing(u) {
        return Err(MoveError::NotSplitUnknot(u));
    }
    Ok(eps)
}

fn position(d: &FramedLinkDiagram, id: ComponentId) -> Result<usize, MoveError> {
    d.index_of(id)
        .ok_or(MoveError::Diagram(DiagramError::UnknownComponent(id)))
}

fn component_at(d: &FramedLinkDiagram, index: usize) -> Result<ComponentId, MoveError> {
    let len = d.num_components();
    d.components()
        .get(index)
        .map(|c| c.id)
        .ok_or(MoveError::IndexOutOfRange { index, len })
}
