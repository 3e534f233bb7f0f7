//! Crossing changes by blow-up gadgets, and diagram-level blow-downs.
//!
//! A gadget at crossing `c` is a ±1-framed unknot `U` encircling the two
//! strands next to `c`, together with the switch of `c`. Algebraically it is
//! the slide of each encircled strand over a split unknot of framing `eps`:
//! blowing `U` back down subtracts `eps * v v^T` from the linking matrix, where
//! `v` is the vector of linking numbers with `U`, and that exactly undoes the
//! switch when `eps = -s * a * b` (`s` the sign of `c` before the switch,
//! `a`, `b` the passage signs of the two strands through `U`).

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;
use core::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;

use super::{ArcId, ComponentId, CrossingId, DiagramError, FramedLinkDiagram, Level, Passage};
use crate::Sign;

/// Which segment of a strand, relative to the crossing, the gadget encircles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum End {
    In,
    Out,
}

/// Where the gadget unknot sits for each of the two strands at a crossing.
///
/// `U` is oriented so the over-strand passes through it positively. The
/// under-strand passes positively when both segments lie on the same end of
/// the crossing and negatively otherwise.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Side {
    pub over: End,
    pub under: End,
}

impl Side {
    pub const INCOMING: Side = Side {
        over: End::In,
        under: End::In,
    };
    pub const OUTGOING: Side = Side {
        over: End::Out,
        under: End::Out,
    };

    /// `(a, b)`: passage signs of the over- and under-strand.
    pub fn passage_signs(self) -> (Sign, Sign) {
        (
            Sign::Plus,
            if self.over == self.under {
                Sign::Plus
            } else {
                Sign::Minus
            },
        )
    }
}

impl Default for Side {
    fn default() -> Self {
        Side::INCOMING
    }
}

impl FromStr for Side {
    type Err = DiagramError;

    /// `in`, `out`, or `<over>-<under>` such as `in-out`.
    fn from_str(s: &str) -> Result<Self, DiagramError> {
        let end = |t: &str| match t {
            "in" => Some(End::In),
            "out" => Some(End::Out),
            _ => None,
        };
        let parsed = match s.split_once('-') {
            None => end(s).map(|e| Side { over: e, under: e }),
            Some((o, u)) => end(o).zip(end(u)).map(|(over, under)| Side { over, under }),
        };
        parsed.ok_or_else(|| DiagramError::MalformedSide(s.into()))
    }
}

impl core::fmt::Display for Side {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        let e = |e: End| if e == End::In { "in" } else { "out" };
        if self.over == self.under {
            f.write_str(e(self.over))
        } else {
            write!(f, "{}-{}", e(self.over), e(self.under))
        }
    }
}

/// What a gadget insertion did, enough to undo it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GadgetRecord {
    pub unknot: ComponentId,
    pub crossing: CrossingId,
    pub epsilon: Sign,
    pub passage_signs: (Sign, Sign),
    /// Framing added to each encircled component, `eps * v^2`; zero entries omitted.
    pub framing_compensations: BTreeMap<ComponentId, BigInt>,
}

/// Framing of the gadget unknot for a crossing of sign `s`.
pub fn gadget_epsilon(s: Sign, side: Side) -> Sign {
    let (a, b) = side.passage_signs();
    -(s * a * b)
}

/// Linking vector of a gadget unknot with the encircled components.
fn linking_vector(
    over: ComponentId,
    under: ComponentId,
    (a, b): (Sign, Sign),
) -> BTreeMap<ComponentId, i64> {
    let mut v = BTreeMap::new();
    *v.entry(over).or_insert(0) += a.value();
    *v.entry(under).or_insert(0) += b.value();
    v
}

/// Switches `c` and adds a fresh gadget unknot around its two strands.
///
/// Ids: the unknot takes the smallest unused component id; then, as in
/// [`gadget_switch`], four crossings and the arcs are allocated.
pub fn insert_crossing_gadget(
    d: &FramedLinkDiagram,
    c: CrossingId,
    side: Side,
) -> Result<(FramedLinkDiagram, GadgetRecord), DiagramError> {
    d.check()?;
    let s = d.crossing(c).ok_or(DiagramError::UnknownCrossing(c))?.sign;
    let eps = gadget_epsilon(s, side);
    let (with_unknot, u) = d.add_split_unknot(eps.to_bigint());
    gadget_switch(&with_unknot, c, u, side)
}

/// Turns the existing split unknot `u` into a gadget at crossing `c`.
///
/// `u` must be a zero-crossing component whose framing is `-s * a * b`. New
/// crossings `g0..g3` are allocated in that order (smallest unused ids):
/// `U` meets them as over X, over Y, under Y, under X, where X/Y are the over-
/// and under-strand of `c`. Then `U`'s four arcs, then the two pieces split
/// off X, then the two split off Y.
pub fn gadget_switch(
    d: &FramedLinkDiagram,
    c: CrossingId,
    u: ComponentId,
    side: Side,
) -> Result<(FramedLinkDiagram, GadgetRecord), DiagramError> {
    d.check()?;
    let x = d
        .crossing(c)
        .ok_or(DiagramError::UnknownCrossing(c))?
        .clone();
    let framing = d.framing(u)?.clone();
    if !d.is_zero_crossing(u) {
        return Err(DiagramError::NotSplitUnknot(u));
    }
    let (a, b) = side.passage_signs();
    let eps = -(x.sign * a * b);
    if framing != eps.to_bigint() {
        return Err(DiagramError::FramingMismatch {
            component: u,
            framing,
            expected: eps.to_bigint(),
        });
    }
    let over_comp = d.strand_owner(&x, Level::Over).expect("valid diagram");
    let under_comp = d.strand_owner(&x, Level::Under).expect("valid diagram");

    let mut out = d.clone();
    let anchors = out.basepoint_anchors(&[over_comp, under_comp]);
    let stale: Vec<ArcId> = out.component_arcs(u);
    for arc in stale {
        out.arcs.remove(&arc);
    }
    out.component_mut(u)?.basepoint = None;

    let g: Vec<CrossingId> = [a, b, b, a]
        .iter()
        .map(|&sg| out.fresh_crossing(sg))
        .collect();
    out.build_cycle(
        u,
        &[
            Passage {
                crossing: g[0],
                level: Level::Over,
            },
            Passage {
                crossing: g[1],
                level: Level::Over,
            },
            Passage {
                crossing: g[2],
                level: Level::Under,
            },
            Passage {
                crossing: g[3],
                level: Level::Under,
            },
        ],
    );

    let over_arc = match side.over {
        End::In => out.crossings[&c].over_in,
        End::Out => out.crossings[&c].over_out,
    };
    out.splice(
        over_arc,
        &[
            Passage {
                crossing: g[0],
                level: Level::Under,
            },
            Passage {
                crossing: g[3],
                level: Level::Over,
            },
        ],
    );
    let under_arc = match side.under {
        End::In => out.crossings[&c].under_in,
        End::Out => out.crossings[&c].under_out,
    };
    out.splice(
        under_arc,
        &[
            Passage {
                crossing: g[1],
                level: Level::Under,
            },
            Passage {
                crossing: g[2],
                level: Level::Over,
            },
        ],
    );
    out.crossings.get_mut(&c).expect("crossing exists").switch();
    out.restore_basepoints(&anchors);

    let mut framing_compensations = BTreeMap::new();
    for (comp, v) in linking_vector(over_comp, under_comp, (a, b)) {
        let comp_framing = eps.to_bigint() * BigInt::from(v * v);
        if comp_framing.is_zero() {
            continue;
        }
        out.component_mut(comp)?.framing += &comp_framing;
        framing_compensations.insert(comp, comp_framing);
    }
    debug_assert!(out.is_valid(), "gadget insertion broke the diagram");
    let record = GadgetRecord {
        unknot: u,
        crossing: c,
        epsilon: eps,
        passage_signs: (a, b),
        framing_compensations,
    };
    Ok((out, record))
}

/// One strand passing through the disc of an encircling unknot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrandPassage {
    pub component: ComponentId,
    /// Crossing where the unknot runs over the strand.
    pub unknot_over: CrossingId,
    /// Crossing where the unknot runs under the strand.
    pub unknot_under: CrossingId,
    /// Strand arc between the two crossings.
    pub inner_arc: ArcId,
    /// Linking contribution of this passage.
    pub sign: Sign,
}

/// Recognizes an unknot bounding a disc crossed by strands.
///
/// Read from some starting point, `u` must run over strands `s_1..s_r` and
/// then under `s_r..s_1`, with each strand meeting its two crossings
/// consecutively and with equal signs. `u` may have no self-crossings. A
/// zero-crossing loop is the `r = 0` case.
pub fn encircling_strands(
    d: &FramedLinkDiagram,
    u: ComponentId,
) -> Result<Vec<StrandPassage>, DiagramError> {
    let shape = |reason| DiagramError::NotGadgetShaped {
        component: u,
        reason,
    };
    d.component(u).ok_or(DiagramError::UnknownComponent(u))?;
    let seq = d.passages(u);
    if seq.is_empty() {
        return Ok(Vec::new());
    }
    let m = seq.len();
    if !m.is_multiple_of(2) {
        return Err(shape("odd number of crossings"));
    }
    for p in &seq {
        let x = &d.crossings[&p.crossing];
        if d.strand_owner(x, p.level.other()) == Some(u) {
            return Err(shape("self-crossing"));
        }
    }
    let r = m / 2;
    let rot = (0..m)
        .find(|&k| (0..m).all(|t| (seq[(k + t) % m].level == Level::Over) == (t < r)))
        .ok_or(shape("over-crossings are not contiguous"))?;
    let at = |t: usize| &d.crossings[&seq[(rot + t) % m].crossing];
    let mut out = Vec::with_capacity(r);
    for p in 0..r {
        let g = at(p);
        let h = at(m - 1 - p);
        let comp = d.strand_owner(g, Level::Under).expect("valid diagram");
        if d.strand_owner(h, Level::Over) != Some(comp) {
            return Err(shape("strand enters and leaves on different components"));
        }
        let inner_arc = if g.under_out == h.over_in {
            g.under_out
        } else if h.over_out == g.under_in {
            h.over_out
        } else {
            return Err(shape("strand does not pass straight through"));
        };
        if g.sign != h.sign {
            return Err(shape("passage crossings have opposite signs"));
        }
        out.push(StrandPassage {
            component: comp,
            unknot_over: g.id,
            unknot_under: h.id,
            inner_arc,
            sign: g.sign,
        });
    }
    Ok(out)
}

/// Undoes a gadget using its record: deletes the unknot and its crossings,
/// re-switches the recorded crossing and removes the framing compensation.
///
/// A zero-crossing ±1 unknot (a gadget around nothing) is simply deleted.
pub fn blow_down_gadget(
    d: &FramedLinkDiagram,
    g: &GadgetRecord,
) -> Result<FramedLinkDiagram, DiagramError> {
    d.check()?;
    let u = g.unknot;
    let framing = d.framing(u)?;
    let eps = Sign::from_unit(framing).ok_or(DiagramError::FramingNotUnit(u))?;
    if eps != g.epsilon {
        return Err(DiagramError::RecordMismatch(
            "unknot framing differs from recorded epsilon",
        ));
    }
    let strands = encircling_strands(d, u)?;
    let mut out = d.clone();
    if strands.is_empty() {
        out.remove_component(u);
        return Ok(out);
    }
    if strands.len() != 2 {
        return Err(DiagramError::NotGadgetShaped {
            component: u,
            reason: "does not encircle exactly two strands",
        });
    }
    let x = d
        .crossing(g.crossing)
        .ok_or(DiagramError::RecordMismatch("recorded crossing is missing"))?;
    if (strands[0].sign, strands[1].sign) != g.passage_signs {
        return Err(DiagramError::RecordMismatch("passage signs differ"));
    }
    // the crossing is switched, so the recorded over-strand now runs under
    let over_comp = d.strand_owner(x, Level::Under).expect("valid diagram");
    let under_comp = d.strand_owner(x, Level::Over).expect("valid diagram");
    if strands[0].component != over_comp || strands[1].component != under_comp {
        return Err(DiagramError::RecordMismatch(
            "encircled strands do not belong to the recorded crossing",
        ));
    }
    let mut expected = BTreeMap::new();
    for (comp, v) in linking_vector(over_comp, under_comp, g.passage_signs) {
        let f = eps.to_bigint() * BigInt::from(v * v);
        if !f.is_zero() {
            expected.insert(comp, f);
        }
    }
    if expected != g.framing_compensations {
        return Err(DiagramError::RecordMismatch("framing compensations differ"));
    }

    for s in &strands {
        out.remove_crossing(s.unknot_over);
        out.remove_crossing(s.unknot_under);
    }
    out.remove_component(u);
    out.crossings
        .get_mut(&g.crossing)
        .expect("crossing exists")
        .switch();
    for (comp, f) in &g.framing_compensations {
        out.component_mut(*comp)?.framing -= f;
    }
    out.normalize_loops();
    debug_assert!(out.is_valid(), "gadget blow-down broke the diagram");
    Ok(out)
}

/// Blows down a ±1-framed encircling unknot (see [`encircling_strands`]).
///
/// The strands through it receive a full twist of sign `-eps`: every pair of
/// passages `p < q` gets two new crossings (first `p` over `q`, then `q` over
/// `p`) of sign `-eps * a_p * a_q`, threaded onto the inner arcs in pair
/// order. Each component's framing drops by `eps * v^2`, with `v` its linking
/// number with the unknot. The net effect on the linking matrix is the
/// rank-one update `L - eps * v v^T`.
pub fn blow_down_component(
    d: &FramedLinkDiagram,
    u: ComponentId,
) -> Result<FramedLinkDiagram, DiagramError> {
    d.check()?;
    let eps = Sign::from_unit(d.framing(u)?).ok_or(DiagramError::FramingNotUnit(u))?;
    let strands = encircling_strands(d, u)?;
    let mut out = d.clone();
    let r = strands.len();
    let mut stops: Vec<Vec<Passage>> = vec![Vec::new(); r];
    for p in 0..r {
        for q in p + 1..r {
            let sign = -(eps * strands[p].sign * strands[q].sign);
            let t1 = out.fresh_crossing(sign);
            let t2 = out.fresh_crossing(sign);
            stops[p].push(Passage {
                crossing: t1,
                level: Level::Over,
            });
            stops[p].push(Passage {
                crossing: t2,
                level: Level::Under,
            });
            stops[q].push(Passage {
                crossing: t1,
                level: Level::Under,
            });
            stops[q].push(Passage {
                crossing: t2,
                level: Level::Over,
            });
        }
    }
    for (s, st) in strands.iter().zip(&stops) {
        out.splice(s.inner_arc, st);
    }
    for s in &strands {
        out.remove_crossing(s.unknot_over);
        out.remove_crossing(s.unknot_under);
    }
    out.remove_component(u);
    let mut v: BTreeMap<ComponentId, i64> = BTreeMap::new();
    for s in &strands {
        *v.entry(s.component).or_insert(0) += s.sign.value();
    }
    for (comp, vk) in v {
        out.component_mut(comp)?.framing -= eps.to_bigint() * BigInt::from(vk * vk);
    }
    out.normalize_loops();
    debug_assert!(out.is_valid(), "blow-down broke the diagram");
    Ok(out)
}
