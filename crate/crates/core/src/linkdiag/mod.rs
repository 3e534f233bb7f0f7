//! Combinatorial framed-link diagrams.
//!
//! A diagram is a set of oriented arcs running between crossings. Every arc
//! leaves exactly one crossing slot and enters exactly one; following the
//! successor map around a component visits each of its arcs once. Crossing
//! signs are stored (right-handed = `+1`) rather than derived from a planar
//! picture, and each component carries a framing that is independent of the
//! diagram's writhe. Components that meet no crossing are zero-crossing loops;
//! they may carry a single self-successor arc or none at all.

mod gadget;
mod slide;

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::intlattice::{IntMatrix, IntegralLattice};
use crate::Sign;

pub use gadget::{
    blow_down_component, blow_down_gadget, encircling_strands, gadget_epsilon, gadget_switch,
    insert_crossing_gadget, End, GadgetRecord, Side, StrandPassage,
};
pub use slide::{slide_handle, MAX_SLIDE_TWISTS};

macro_rules! id_type {
    ($(#[$m:meta])* $name:ident) => {
        $(#[$m])*
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub struct $name(pub u64);

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt(f)
            }
        }
    };
}

id_type!(ArcId);
id_type!(ComponentId);
id_type!(CrossingId);

/// Marks a crossing slot that a rewrite has not wired up yet.
const UNWIRED: ArcId = ArcId(u64::MAX);

/// Which strand of a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    Over,
    Under,
}

impl Level {
    pub fn other(self) -> Level {
        match self {
            Level::Over => Level::Under,
            Level::Under => Level::Over,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub id: CrossingId,
    pub over_in: ArcId,
    pub over_out: ArcId,
    pub under_in: ArcId,
    pub under_out: ArcId,
    pub sign: Sign,
}

impl Crossing {
    fn unwired(id: CrossingId, sign: Sign) -> Self {
        Crossing {
            id,
            over_in: UNWIRED,
            over_out: UNWIRED,
            under_in: UNWIRED,
            under_out: UNWIRED,
            sign,
        }
    }

    pub fn incoming(&self, level: Level) -> ArcId {
        match level {
            Level::Over => self.over_in,
            Level::Under => self.under_in,
        }
    }

    pub fn outgoing(&self, level: Level) -> ArcId {
        match level {
            Level::Over => self.over_out,
            Level::Under => self.under_out,
        }
    }

    fn incoming_mut(&mut self, level: Level) -> &mut ArcId {
        match level {
            Level::Over => &mut self.over_in,
            Level::Under => &mut self.under_in,
        }
    }

    fn outgoing_mut(&mut self, level: Level) -> &mut ArcId {
        match level {
            Level::Over => &mut self.over_out,
            Level::Under => &mut self.under_out,
        }
    }

    /// Exchanges the over and under strands and negates the sign.
    fn switch(&mut self) {
        core::mem::swap(&mut self.over_in, &mut self.under_in);
        core::mem::swap(&mut self.over_out, &mut self.under_out);
        self.sign = -self.sign;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub id: ComponentId,
    pub framing: BigInt,
    pub basepoint: Option<ArcId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arc {
    pub id: ArcId,
    pub component: ComponentId,
    pub next: ArcId,
}

/// One passage of a component through a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Passage {
    pub crossing: CrossingId,
    pub level: Level,
}

impl Passage {
    pub fn over(c: u64) -> Self {
        Passage {
            crossing: CrossingId(c),
            level: Level::Over,
        }
    }

    pub fn under(c: u64) -> Self {
        Passage {
            crossing: CrossingId(c),
            level: Level::Under,
        }
    }
}

/// A failed diagram invariant, naming the offending ids.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Violation {
    DuplicateComponent(ComponentId),
    DuplicateArc(ArcId),
    DuplicateCrossing(CrossingId),
    ArcOwnerUnknown { arc: ArcId, component: ComponentId },
    SuccessorMissing { arc: ArcId, next: ArcId },
    SuccessorLeavesComponent { arc: ArcId, next: ArcId },
    SuccessorNotInjective { next: ArcId },
    ComponentNotSingleCycle { component: ComponentId },
    CrossingArcMissing { crossing: CrossingId, arc: ArcId },
    IncomingCount { arc: ArcId, count: usize },
    OutgoingCount { arc: ArcId, count: usize },
    SuccessorDisagreesWithCrossing { crossing: CrossingId, level: Level },
    BasepointInvalid { component: ComponentId, arc: ArcId },
    ComponentWithoutArcs { component: ComponentId },
    OddLinking { a: ComponentId, b: ComponentId },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::DuplicateComponent(c) => {
                write!(f, "unique ids: component {c} declared twice")
            }
            Violation::DuplicateArc(a) => write!(f, "unique ids: arc {a} declared twice"),
            Violation::DuplicateCrossing(c) => write!(f, "unique ids: crossing {c} declared twice"),
            Violation::ArcOwnerUnknown { arc, component } => {
                write!(
                    f,
                    "arc ownership: arc {arc} names unknown component {component}"
                )
            }
            Violation::SuccessorMissing { arc, next } => {
                write!(f, "successor: arc {arc} points to missing arc {next}")
            }
            Violation::SuccessorLeavesComponent { arc, next } => {
                write!(
                    f,
                    "successor: arc {arc} continues into arc {next} of another component"
                )
            }
            Violation::SuccessorNotInjective { next } => {
                write!(f, "successor: arc {next} has several predecessors")
            }
            Violation::ComponentNotSingleCycle { component } => {
                write!(
                    f,
                    "component cycle: successor map on component {component} is not a single cycle"
                )
            }
            Violation::CrossingArcMissing { crossing, arc } => {
                write!(f, "incidence: crossing {crossing} names missing arc {arc}")
            }
            Violation::IncomingCount { arc, count } => {
                write!(
                    f,
                    "incidence: arc {arc} enters {count} crossing slots, expected 1"
                )
            }
            Violation::OutgoingCount { arc, count } => {
                write!(
                    f,
                    "incidence: arc {arc} leaves {count} crossing slots, expected 1"
                )
            }
            Violation::SuccessorDisagreesWithCrossing { crossing, level } => {
                write!(f, "incidence: {level:?} strand of crossing {crossing} disagrees with the successor map")
            }
            Violation::BasepointInvalid { component, arc } => {
                write!(
                    f,
                    "basepoint: arc {arc} is not an arc of component {component}"
                )
            }
            Violation::ComponentWithoutArcs { component } => {
                write!(
                    f,
                    "incidence: component {component} meets crossings but owns no arcs"
                )
            }
            Violation::OddLinking { a, b } => {
                write!(
                    f,
                    "linking: crossings between components {a} and {b} have odd sign sum"
                )
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DiagramError {
    #[error("invalid diagram: {}", join_violations(.0))]
    Invalid(Vec<Violation>),
    #[error("unknown component {0}")]
    UnknownComponent(ComponentId),
    #[error("unknown crossing {0}")]
    UnknownCrossing(CrossingId),
    #[error("linking number of component {0} with itself is its framing")]
    SameComponent(ComponentId),
    #[error("component {0} listed twice in traversal order")]
    RepeatedInOrder(ComponentId),
    #[error("malformed gauss code: {0}")]
    GaussCode(String),
    #[error("malformed side selector {0:?}")]
    MalformedSide(String),
    #[error("component {0} is not a split zero-crossing unknot")]
    NotSplitUnknot(ComponentId),
    #[error("component {component} has framing {framing}, expected {expected}")]
    FramingMismatch {
        component: ComponentId,
        framing: BigInt,
        expected: BigInt,
    },
    #[error("component {0} does not have framing +1 or -1")]
    FramingNotUnit(ComponentId),
    #[error("component {component} is not gadget-shaped: {reason}")]
    NotGadgetShaped {
        component: ComponentId,
        reason: &'static str,
    },
    #[error("gadget record disagrees with the diagram: {0}")]
    RecordMismatch(&'static str),
    #[error("slide would need {twists} full twists on component {component}, limit is {limit}")]
    TwistTooLarge {
        component: ComponentId,
        twists: BigInt,
        limit: u64,
    },
    #[error("drawing is not descending in its declaration order")]
    NotDescending,
    #[error("drawing links components {0} and {1}")]
    DrawingLinked(ComponentId, ComponentId),
    #[error("drawing reuses {0} id {1}")]
    IdInUse(&'static str, u64),
}

fn join_violations(v: &[Violation]) -> String {
    use core::fmt::Write;
    let mut s = String::new();
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            s.push_str("; ");
        }
        let _ = write!(s, "{x}");
    }
    s
}

/// Per-component passages for [`FramedLinkDiagram::from_gauss_code`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussComponent {
    pub framing: BigInt,
    pub passages: Vec<Passage>,
}

impl GaussComponent {
    pub fn new(framing: i64, passages: Vec<Passage>) -> Self {
        GaussComponent {
            framing: BigInt::from(framing),
            passages,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FramedLinkDiagram {
    components: Vec<Component>,
    arcs: BTreeMap<ArcId, Arc>,
    crossings: BTreeMap<CrossingId, Crossing>,
}

impl Default for FramedLinkDiagram {
    fn default() -> Self {
        Self::empty()
    }
}

impl FramedLinkDiagram {
    pub fn empty() -> Self {
        FramedLinkDiagram {
            components: Vec::new(),
            arcs: BTreeMap::new(),
            crossings: BTreeMap::new(),
        }
    }

    /// Assembles a diagram from raw records. Only id uniqueness is enforced
    /// here; everything else is reported by [`validate`](Self::validate).
    pub fn from_parts(
        components: Vec<Component>,
        arcs: Vec<Arc>,
        crossings: Vec<Crossing>,
    ) -> Result<Self, Vec<Violation>> {
        let mut bad = Vec::new();
        let mut seen = BTreeSet::new();
        for c in &components {
            if !seen.insert(c.id) {
                bad.push(Violation::DuplicateComponent(c.id));
            }
        }
        let mut arc_map = BTreeMap::new();
        for a in arcs {
            let id = a.id;
            if arc_map.insert(id, a).is_some() {
                bad.push(Violation::DuplicateArc(id));
            }
        }
        let mut crossing_map = BTreeMap::new();
        for c in crossings {
            let id = c.id;
            if crossing_map.insert(id, c).is_some() {
                bad.push(Violation::DuplicateCrossing(id));
            }
        }
        if !bad.is_empty() {
            return Err(bad);
        }
        Ok(FramedLinkDiagram {
            components,
            arcs: arc_map,
            crossings: crossing_map,
        })
    }

    /// Builds a diagram from a signed Gauss code.
    ///
    /// Component `k` gets id `k`. Arcs are numbered consecutively per
    /// component, arc `m` of a component being the one that enters its
    /// `m`-th passage, so the default basepoint traversal meets the passages
    /// in the listed order. Each crossing must be passed once over and once
    /// under.
    pub fn from_gauss_code(
        components: &[GaussComponent],
        signs: &[(u64, Sign)],
    ) -> Result<Self, DiagramError> {
        let sign_of: BTreeMap<u64, Sign> = signs.iter().copied().collect();
        if sign_of.len() != signs.len() {
            return Err(DiagramError::GaussCode("crossing signed twice".into()));
        }
        let mut d = FramedLinkDiagram::empty();
        for (&c, &sign) in &sign_of {
            d.crossings
                .insert(CrossingId(c), Crossing::unwired(CrossingId(c), sign));
        }
        let mut used: BTreeSet<(CrossingId, Level)> = BTreeSet::new();
        for (k, comp) in components.iter().enumerate() {
            let id = ComponentId(k as u64);
            d.components.push(Component {
                id,
                framing: comp.framing.clone(),
                basepoint: None,
            });
            for p in &comp.passages {
                if !d.crossings.contains_key(&p.crossing) {
                    return Err(DiagramError::GaussCode(alloc::format!(
                        "crossing {} has no sign",
                        p.crossing
                    )));
                }
                if !used.insert((p.crossing, p.level)) {
                    return Err(DiagramError::GaussCode(alloc::format!(
                        "crossing {} passed {:?} twice",
                        p.crossing,
                        p.level
                    )));
                }
            }
            d.build_cycle(id, &comp.passages);
        }
        if used.len() != 2 * d.crossings.len() {
            return Err(DiagramError::GaussCode(
                "some crossing is not passed both over and under".into(),
            ));
        }
        Ok(d)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn arcs(&self) -> impl Iterator<Item = &Arc> {
        self.arcs.values()
    }

    pub fn crossings(&self) -> impl Iterator<Item = &Crossing> {
        self.crossings.values()
    }

    pub fn crossing(&self, id: CrossingId) -> Option<&Crossing> {
        self.crossings.get(&id)
    }

    pub fn arc(&self, id: ArcId) -> Option<&Arc> {
        self.arcs.get(&id)
    }

    pub fn component(&self, id: ComponentId) -> Option<&Component> {
        self.components.iter().find(|c| c.id == id)
    }

    pub fn component_ids(&self) -> Vec<ComponentId> {
        self.components.iter().map(|c| c.id).collect()
    }

    /// Position of a component in declaration order, which is also its row in
    /// the linking matrix.
    pub fn index_of(&self, id: ComponentId) -> Option<usize> {
        self.components.iter().position(|c| c.id == id)
    }

    pub fn num_components(&self) -> usize {
        self.components.len()
    }

    pub fn num_crossings(&self) -> usize {
        self.crossings.len()
    }

    pub fn framing(&self, id: ComponentId) -> Result<&BigInt, DiagramError> {
        self.component(id)
            .map(|c| &c.framing)
            .ok_or(DiagramError::UnknownComponent(id))
    }

    /// Copy with one framing replaced.
    pub fn with_framing(&self, id: ComponentId, framing: BigInt) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.component_mut(id)?.framing = framing;
        Ok(d)
    }

    /// Component owning the strand at `level` of crossing `c`.
    pub fn strand_owner(&self, c: &Crossing, level: Level) -> Option<ComponentId> {
        self.arcs.get(&c.incoming(level)).map(|a| a.component)
    }

    /// True iff no crossing involves the component.
    pub fn is_zero_crossing(&self, id: ComponentId) -> bool {
        self.crossings.values().all(|c| {
            self.strand_owner(c, Level::Over) != Some(id)
                && self.strand_owner(c, Level::Under) != Some(id)
        })
    }

    pub fn component_arcs(&self, id: ComponentId) -> Vec<ArcId> {
        self.arcs
            .values()
            .filter(|a| a.component == id)
            .map(|a| a.id)
            .collect()
    }

    /// The stored basepoint, or the lowest-numbered arc of the component.
    pub fn basepoint(&self, id: ComponentId) -> Option<ArcId> {
        self.component(id)?
            .basepoint
            .or_else(|| self.component_arcs(id).first().copied())
    }

    /// Slot `(crossing, level)` that `arc` enters, if any.
    fn arc_end(&self, arc: ArcId) -> Option<(CrossingId, Level)> {
        self.crossings.values().find_map(|c| {
            if c.over_in == arc {
                Some((c.id, Level::Over))
            } else if c.under_in == arc {
                Some((c.id, Level::Under))
            } else {
                None
            }
        })
    }

    /// Crossing passages of a component in traversal order, starting with the
    /// crossing its basepoint arc enters. Empty for zero-crossing loops.
    pub fn passages(&self, id: ComponentId) -> Vec<Passage> {
        let Some(start) = self.basepoint(id) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        let mut cur = start;
        while let Some((crossing, level)) = self.arc_end(cur) {
            out.push(Passage { crossing, level });
            cur = self.crossings[&crossing].outgoing(level);
            if cur == start || out.len() > 2 * self.crossings.len() {
                break;
            }
        }
        out
    }

    /// All invariant violations; empty iff the diagram is well formed.
    pub fn validate(&self) -> Vec<Violation> {
        let mut bad = Vec::new();
        let declared: BTreeSet<ComponentId> = self.components.iter().map(|c| c.id).collect();

        for a in self.arcs.values() {
            if !declared.contains(&a.component) {
                bad.push(Violation::ArcOwnerUnknown {
                    arc: a.id,
                    component: a.component,
                });
            }
            match self.arcs.get(&a.next) {
                None => bad.push(Violation::SuccessorMissing {
                    arc: a.id,
                    next: a.next,
                }),
                Some(n) if n.component != a.component => {
                    bad.push(Violation::SuccessorLeavesComponent {
                        arc: a.id,
                        next: a.next,
                    })
                }
                Some(_) => {}
            }
        }
        let mut preds: BTreeMap<ArcId, usize> = BTreeMap::new();
        for a in self.arcs.values() {
            *preds.entry(a.next).or_default() += 1;
        }
        for (&next, &k) in &preds {
            if k > 1 && self.arcs.contains_key(&next) {
                bad.push(Violation::SuccessorNotInjective { next });
            }
        }

        for comp in &self.components {
            let arcs = self.component_arcs(comp.id);
            if let Some(&start) = arcs.first() {
                let mut seen = BTreeSet::new();
                let mut cur = start;
                loop {
                    if !seen.insert(cur) {
                        break;
                    }
                    match self.arcs.get(&cur) {
                        Some(a) if a.component == comp.id => cur = a.next,
                        _ => break,
                    }
                }
                if cur != start || seen.len() != arcs.len() {
                    bad.push(Violation::ComponentNotSingleCycle { component: comp.id });
                }
            }
            if let Some(bp) = comp.basepoint {
                if self.arcs.get(&bp).map(|a| a.component) != Some(comp.id) {
                    bad.push(Violation::BasepointInvalid {
                        component: comp.id,
                        arc: bp,
                    });
                }
            }
        }

        let mut ins: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut outs: BTreeMap<ArcId, usize> = BTreeMap::new();
        let mut touched: BTreeSet<ComponentId> = BTreeSet::new();
        for c in self.crossings.values() {
            for arc in [c.over_in, c.over_out, c.under_in, c.under_out] {
                match self.arcs.get(&arc) {
                    None => bad.push(Violation::CrossingArcMissing {
                        crossing: c.id,
                        arc,
                    }),
                    Some(a) => {
                        touched.insert(a.component);
                    }
                }
            }
            *ins.entry(c.over_in).or_default() += 1;
            *ins.entry(c.under_in).or_default() += 1;
            *outs.entry(c.over_out).or_default() += 1;
            *outs.entry(c.under_out).or_default() += 1;
            for level in [Level::Over, Level::Under] {
                if let Some(a) = self.arcs.get(&c.incoming(level)) {
                    if a.next != c.outgoing(level) {
                        bad.push(Violation::SuccessorDisagreesWithCrossing {
                            crossing: c.id,
                            level,
                        });
                    }
                }
            }
        }
        for a in self.arcs.values() {
            if !touched.contains(&a.component) {
                continue;
            }
            let i = ins.get(&a.id).copied().unwrap_or(0);
            let o = outs.get(&a.id).copied().unwrap_or(0);
            if i != 1 {
                bad.push(Violation::IncomingCount {
                    arc: a.id,
                    count: i,
                });
            }
            if o != 1 {
                bad.push(Violation::OutgoingCount {
                    arc: a.id,
                    count: o,
                });
            }
        }

        if bad.is_empty() {
            let mut sums: BTreeMap<(ComponentId, ComponentId), i64> = BTreeMap::new();
            for c in self.crossings.values() {
                let (Some(o), Some(u)) = (
                    self.strand_owner(c, Level::Over),
                    self.strand_owner(c, Level::Under),
                ) else {
                    continue;
                };
                if o != u {
                    *sums.entry((o.min(u), o.max(u))).or_default() += c.sign.value();
                }
            }
            for ((a, b), s) in sums {
                if s % 2 != 0 {
                    bad.push(Violation::OddLinking { a, b });
                }
            }
        }
        bad
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_empty()
    }

    pub(crate) fn check(&self) -> Result<(), DiagramError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(DiagramError::Invalid(v))
        }
    }

    /// Half the sign sum of the crossings between two distinct components.
    pub fn linking_number(&self, i: ComponentId, j: ComponentId) -> Result<BigInt, DiagramError> {
        self.component(i).ok_or(DiagramError::UnknownComponent(i))?;
        self.component(j).ok_or(DiagramError::UnknownComponent(j))?;
        if i == j {
            return Err(DiagramError::SameComponent(i));
        }
        let mut sum = 0i64;
        for c in self.crossings.values() {
            let (o, u) = (
                self.strand_owner(c, Level::Over),
                self.strand_owner(c, Level::Under),
            );
            if (o == Some(i) && u == Some(j)) || (o == Some(j) && u == Some(i)) {
                sum += c.sign.value();
            }
        }
        if sum % 2 != 0 {
            return Err(DiagramError::Invalid(vec![Violation::OddLinking {
                a: i.min(j),
                b: i.max(j),
            }]));
        }
        Ok(BigInt::from(sum / 2))
    }

    /// Framings on the diagonal, pairwise linking numbers off it, rows in
    /// declaration order.
    pub fn linking_matrix(&self) -> Result<IntegralLattice, DiagramError> {
        self.check()?;
        Ok(self.linking_matrix_unchecked())
    }

    pub(crate) fn linking_matrix_unchecked(&self) -> IntegralLattice {
        let n = self.components.len();
        let index: BTreeMap<ComponentId, usize> = self
            .components
            .iter()
            .enumerate()
            .map(|(k, c)| (c.id, k))
            .collect();
        let mut sums = vec![vec![0i64; n]; n];
        for c in self.crossings.values() {
            let (Some(o), Some(u)) = (
                self.strand_owner(c, Level::Over),
                self.strand_owner(c, Level::Under),
            ) else {
                continue;
            };
            if o != u {
                let (a, b) = (index[&o], index[&u]);
                sums[a][b] += c.sign.value();
                sums[b][a] += c.sign.value();
            }
        }
        let mut m = IntMatrix::zeros(n, n);
        for a in 0..n {
            for b in 0..n {
                m[(a, b)] = if a == b {
                    self.components[a].framing.clone()
                } else {
                    BigInt::from(sums[a][b] / 2)
                };
            }
        }
        IntegralLattice::new(m).expect("linking sums are symmetric")
    }

    /// Exchanges the strands at `c` and negates its sign.
    pub fn switch_crossing(&self, c: CrossingId) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.crossings
            .get_mut(&c)
            .ok_or(DiagramError::UnknownCrossing(c))?
            .switch();
        Ok(d)
    }

    /// Appends a zero-crossing component with the given framing.
    pub fn add_split_unknot(&self, framing: BigInt) -> (Self, ComponentId) {
        let mut d = self.clone();
        let id = d.fresh_component_id();
        d.components.push(Component {
            id,
            framing,
            basepoint: None,
        });
        (d, id)
    }

    /// Reverses the orientation of one component. Crossings between it and
    /// another component change sign; its self-crossings keep theirs.
    pub fn reverse_component(&self, id: ComponentId) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        d.reverse_in_place(id)?;
        Ok(d)
    }

    fn reverse_in_place(&mut self, id: ComponentId) -> Result<(), DiagramError> {
        self.component(id)
            .ok_or(DiagramError::UnknownComponent(id))?;
        let owner: BTreeMap<ArcId, ComponentId> =
            self.arcs.values().map(|a| (a.id, a.component)).collect();
        for c in self.crossings.values_mut() {
            let over = owner.get(&c.over_in) == Some(&id);
            let under = owner.get(&c.under_in) == Some(&id);
            if over {
                core::mem::swap(&mut c.over_in, &mut c.over_out);
            }
            if under {
                core::mem::swap(&mut c.under_in, &mut c.under_out);
            }
            if over != under {
                c.sign = -c.sign;
            }
        }
        let prev: Vec<(ArcId, ArcId)> = self
            .arcs
            .values()
            .filter(|a| a.component == id)
            .map(|a| (a.next, a.id))
            .collect();
        for (arc, p) in prev {
            if let Some(a) = self.arcs.get_mut(&arc) {
                a.next = p;
            }
        }
        Ok(())
    }

    /// Crossings to switch so that, traversing the components of `order` from
    /// their basepoints, every crossing between two of them is first met on
    /// its over-strand. Crossings involving components outside `order` are
    /// ignored.
    pub fn descending_switch_set(
        &self,
        order: &[ComponentId],
    ) -> Result<BTreeSet<CrossingId>, DiagramError> {
        self.check()?;
        let mut listed = BTreeSet::new();
        for &id in order {
            self.component(id)
                .ok_or(DiagramError::UnknownComponent(id))?;
            if !listed.insert(id) {
                return Err(DiagramError::RepeatedInOrder(id));
            }
        }
        let mut seen = BTreeSet::new();
        let mut switch = BTreeSet::new();
        for &id in order {
            for p in self.passages(id) {
                let c = &self.crossings[&p.crossing];
                let both_listed = [Level::Over, Level::Under]
                    .iter()
                    .all(|&l| self.strand_owner(c, l).is_some_and(|o| listed.contains(&o)));
                if both_listed && seen.insert(p.crossing) && p.level == Level::Under {
                    switch.insert(p.crossing);
                }
            }
        }
        Ok(switch)
    }

    /// Declaration order, the default traversal order.
    pub fn default_order(&self) -> Vec<ComponentId> {
        self.component_ids()
    }

    pub fn is_descending(&self, order: &[ComponentId]) -> Result<bool, DiagramError> {
        Ok(self.descending_switch_set(order)?.is_empty())
    }

    /// Replaces zero-crossing components by a drawing of them with crossings.
    ///
    /// Every component of `drawing` must be a zero-crossing component here
    /// with the same framing; `drawing` must be descending in its declaration
    /// order with all linking numbers zero, so it is an unlink. Its arc and
    /// crossing ids are kept and must be unused.
    pub fn redraw_unlink(&self, drawing: &Self) -> Result<Self, DiagramError> {
        self.check()?;
        drawing.check()?;
        for c in &drawing.components {
            let mine = self
                .component(c.id)
                .ok_or(DiagramError::UnknownComponent(c.id))?;
            if !self.is_zero_crossing(c.id) {
                return Err(DiagramError::NotSplitUnknot(c.id));
            }
            if mine.framing != c.framing {
                return Err(DiagramError::FramingMismatch {
                    component: c.id,
                    framing: c.framing.clone(),
                    expected: mine.framing.clone(),
                });
            }
        }
        let ids = drawing.component_ids();
        if !drawing.is_descending(&ids)? {
            return Err(DiagramError::NotDescending);
        }
        for (k, &a) in ids.iter().enumerate() {
            for &b in &ids[k + 1..] {
                if !drawing.linking_number(a, b)?.is_zero() {
                    return Err(DiagramError::DrawingLinked(a, b));
                }
            }
        }
        let mut out = self.clone();
        out.arcs.retain(|_, a| !ids.contains(&a.component));
        for c in &drawing.components {
            out.component_mut(c.id)?.basepoint = c.basepoint;
        }
        for a in drawing.arcs.values() {
            if out.arcs.insert(a.id, a.clone()).is_some() {
                return Err(DiagramError::IdInUse("arc", a.id.0));
            }
        }
        for x in drawing.crossings.values() {
            if out.crossings.insert(x.id, x.clone()).is_some() {
                return Err(DiagramError::IdInUse("crossing", x.id.0));
            }
        }
        Ok(out)
    }

    /// Switches every crossing in `set`.
    pub fn switch_all(&self, set: &BTreeSet<CrossingId>) -> Result<Self, DiagramError> {
        let mut d = self.clone();
        for &c in set {
            d.crossings
                .get_mut(&c)
                .ok_or(DiagramError::UnknownCrossing(c))?
                .switch();
        }
        Ok(d)
    }

    /// Sum of the signs of the component's self-crossings.
    pub fn writhe(&self, id: ComponentId) -> i64 {
        self.crossings
            .values()
            .filter(|c| {
                self.strand_owner(c, Level::Over) == Some(id)
                    && self.strand_owner(c, Level::Under) == Some(id)
            })
            .map(|c| c.sign.value())
            .sum()
    }

    // ---- rewrite plumbing ----------------------------------------------

    fn component_mut(&mut self, id: ComponentId) -> Result<&mut Component, DiagramError> {
        self.components
            .iter_mut()
            .find(|c| c.id == id)
            .ok_or(DiagramError::UnknownComponent(id))
    }

    fn fresh_component_id(&self) -> ComponentId {
        let used: BTreeSet<u64> = self.components.iter().map(|c| c.id.0).collect();
        ComponentId(smallest_unused(&used))
    }

    fn fresh_arc(&mut self, component: ComponentId) -> ArcId {
        let mut k = 0;
        while self.arcs.contains_key(&ArcId(k)) {
            k += 1;
        }
        let id = ArcId(k);
        self.arcs.insert(
            id,
            Arc {
                id,
                component,
                next: id,
            },
        );
        id
    }

    fn fresh_crossing(&mut self, sign: Sign) -> CrossingId {
        let mut k = 0;
        while self.crossings.contains_key(&CrossingId(k)) {
            k += 1;
        }
        let id = CrossingId(k);
        self.crossings.insert(id, Crossing::unwired(id, sign));
        id
    }

    /// Current basepoints, to be passed to [`restore_basepoints`](Self::restore_basepoints)
    /// after a rewrite that allocates arcs.
    fn basepoint_anchors(&self, ids: &[ComponentId]) -> Vec<(ComponentId, Option<ArcId>)> {
        ids.iter().map(|&id| (id, self.basepoint(id))).collect()
    }

    /// Pins a defaulted basepoint when fresh low-numbered arcs would move it.
    fn restore_basepoints(&mut self, anchors: &[(ComponentId, Option<ArcId>)]) {
        for &(id, before) in anchors {
            let Some(before) = before else { continue };
            if self.basepoint(id) != Some(before) && self.arcs.contains_key(&before) {
                if let Ok(c) = self.component_mut(id) {
                    c.basepoint = Some(before);
                }
            }
        }
    }

    /// Gives `id` (which must have no arcs) a fresh arc cycle passing through
    /// `stops` in order; arc `k` enters stop `k`. Returns the arcs.
    fn build_cycle(&mut self, id: ComponentId, stops: &[Passage]) -> Vec<ArcId> {
        if stops.is_empty() {
            return Vec::new();
        }
        let arcs: Vec<ArcId> = stops.iter().map(|_| self.fresh_arc(id)).collect();
        let r = stops.len();
        for k in 0..r {
            let next = arcs[(k + 1) % r];
            self.arcs.get_mut(&arcs[k]).expect("fresh arc").next = next;
            let here = self
                .crossings
                .get_mut(&stops[k].crossing)
                .expect("stop exists");
            *here.incoming_mut(stops[k].level) = arcs[k];
            *here.outgoing_mut(stops[k].level) = next;
        }
        arcs
    }

    /// Threads the strand carried by `arc` through `stops`, placed right
    /// after the start of `arc`. The original arc keeps its start; fresh arcs
    /// take over the pieces behind each stop.
    fn splice(&mut self, arc: ArcId, stops: &[Passage]) {
        if stops.is_empty() {
            return;
        }
        let component = self.arcs[&arc].component;
        let Some(end) = self.arc_end(arc) else {
            // a crossingless loop: `arc` becomes the arc entering the first stop
            let mut arcs = alloc::vec![arc];
            arcs.extend(stops[1..].iter().map(|_| self.fresh_arc(component)));
            let r = stops.len();
            for k in 0..r {
                let next = arcs[(k + 1) % r];
                self.arcs.get_mut(&arcs[k]).expect("arc exists").next = next;
                let x = self
                    .crossings
                    .get_mut(&stops[k].crossing)
                    .expect("stop exists");
                *x.incoming_mut(stops[k].level) = arcs[k];
                *x.outgoing_mut(stops[k].level) = next;
            }
            return;
        };
        let old_next = self.arcs[&arc].next;
        let mut cur = arc;
        for stop in stops {
            let fresh = self.fresh_arc(component);
            self.arcs.get_mut(&fresh).expect("fresh arc").next = old_next;
            self.arcs.get_mut(&cur).expect("arc exists").next = fresh;
            let x = self.crossings.get_mut(&stop.crossing).expect("stop exists");
            *x.incoming_mut(stop.level) = cur;
            *x.outgoing_mut(stop.level) = fresh;
            cur = fresh;
        }
        let (c, level) = end;
        *self
            .crossings
            .get_mut(&c)
            .expect("end crossing")
            .incoming_mut(level) = cur;
    }

    /// Deletes a crossing, joining the arcs on either side of each strand.
    /// The incoming arc survives; basepoints on the absorbed arc move to it.
    fn remove_crossing(&mut self, id: CrossingId) {
        for level in [Level::Over, Level::Under] {
            let x = &self.crossings[&id];
            let (keep, drop) = (x.incoming(level), x.outgoing(level));
            if keep == drop {
                continue;
            }
            let drop_end = self.arc_end(drop);
            let drop_next = self.arcs[&drop].next;
            self.arcs.get_mut(&keep).expect("arc exists").next = drop_next;
            if let Some((c, l)) = drop_end {
                *self
                    .crossings
                    .get_mut(&c)
                    .expect("end crossing")
                    .incoming_mut(l) = keep;
            }
            self.arcs.remove(&drop);
            for comp in &mut self.components {
                if comp.basepoint == Some(drop) {
                    comp.basepoint = Some(keep);
                }
            }
        }
        self.crossings.remove(&id);
    }

    /// Components left without crossings lose their arcs and basepoint.
    fn normalize_loops(&mut self) {
        let mut touched = BTreeSet::new();
        for c in self.crossings.values() {
            for arc in [c.over_in, c.under_in] {
                if let Some(a) = self.arcs.get(&arc) {
                    touched.insert(a.component);
                }
            }
        }
        self.arcs.retain(|_, a| touched.contains(&a.component));
        for comp in &mut self.components {
            if !touched.contains(&comp.id) {
                comp.basepoint = None;
            }
        }
    }

    fn remove_component(&mut self, id: ComponentId) {
        self.arcs.retain(|_, a| a.component != id);
        self.components.retain(|c| c.id != id);
    }
}

fn smallest_unused(used: &BTreeSet<u64>) -> u64 {
    let mut k = 0;
    while used.contains(&k) {
        k += 1;
    }
    k
}

/// Sample diagrams used throughout the tests and fixtures.
pub mod samples {
    use super::*;

    /// Zero-crossing unknot.
    pub fn unknot(framing: i64) -> FramedLinkDiagram {
        FramedLinkDiagram::empty()
            .add_split_unknot(BigInt::from(framing))
            .0
    }

    /// Split union of zero-crossing unknots.
    pub fn unlink(framings: &[i64]) -> FramedLinkDiagram {
        framings.iter().fold(FramedLinkDiagram::empty(), |d, &f| {
            d.add_split_unknot(BigInt::from(f)).0
        })
    }

    /// One-crossing curl; `over_first` says whether the basepoint traversal
    /// meets the crossing on its over-strand first.
    pub fn kink(framing: i64, over_first: bool, sign: Sign) -> FramedLinkDiagram {
        let passages = if over_first {
            vec![Passage::over(0), Passage::under(0)]
        } else {
            vec![Passage::under(0), Passage::over(0)]
        };
        FramedLinkDiagram::from_gauss_code(&[GaussComponent::new(framing, passages)], &[(0, sign)])
            .expect("kink is well formed")
    }

    /// Standard alternating three-crossing trefoil; all crossings share `sign`.
    pub fn trefoil(framing: i64, sign: Sign) -> FramedLinkDiagram {
        let p = vec![
            Passage::over(0),
            Passage::under(1),
            Passage::over(2),
            Passage::under(0),
            Passage::over(1),
            Passage::under(2),
        ];
        FramedLinkDiagram::from_gauss_code(
            &[GaussComponent::new(framing, p)],
            &[(0, sign), (1, sign), (2, sign)],
        )
        .expect("trefoil is well formed")
    }

    /// Hopf link with both crossings of sign `sign`.
    pub fn hopf(f0: i64, f1: i64, sign: Sign) -> FramedLinkDiagram {
        FramedLinkDiagram::from_gauss_code(
            &[
                GaussComponent::new(f0, vec![Passage::over(0), Passage::under(1)]),
                GaussComponent::new(f1, vec![Passage::under(0), Passage::over(1)]),
            ],
            &[(0, sign), (1, sign)],
        )
        .expect("hopf link is well formed")
    }

    /// Plumbing diagram: one unknot per node, a positive clasp per edge.
    pub fn plumbing(framings: &[i64], edges: &[(usize, usize)]) -> FramedLinkDiagram {
        let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); framings.len()];
        let mut signs = Vec::new();
        for (k, &(a, b)) in edges.iter().enumerate() {
            let (c0, c1) = (2 * k as u64, 2 * k as u64 + 1);
            passages[a].push(Passage::over(c0));
            passages[a].push(Passage::under(c1));
            passages[b].push(Passage::under(c0));
            passages[b].push(Passage::over(c1));
            signs.push((c0, Sign::Plus));
            signs.push((c1, Sign::Plus));
        }
        let comps: Vec<GaussComponent> = framings
            .iter()
            .zip(passages)
            .map(|(&f, p)| GaussComponent::new(f, p))
            .collect();
        FramedLinkDiagram::from_gauss_code(&comps, &signs).expect("plumbing is well formed")
    }

    /// Linear chain of `framings.len()` unknots, neighbours clasped once.
    pub fn chain(framings: &[i64]) -> FramedLinkDiagram {
        let edges: Vec<(usize, usize)> = (1..framings.len()).map(|k| (k - 1, k)).collect();
        plumbing(framings, &edges)
    }

    /// Surgery diagram of the E8 plumbing, all framings 2.
    pub fn e8_link() -> FramedLinkDiagram {
        plumbing(&[2; 8], &crate::intlattice::E8_EDGES)
    }
}

#[cfg(test)]
mod tests {
    use super::samples::*;
    use super::*;
    use crate::intlattice::e8_matrix;

    fn lk(d: &FramedLinkDiagram, i: u64, j: u64) -> BigInt {
        d.linking_number(ComponentId(i), ComponentId(j)).unwrap()
    }

    #[test]
    fn validate_examples() {
        assert!(unknot(5).validate().is_empty());
        assert!(trefoil(0, Sign::Plus).validate().is_empty());
        assert!(e8_link().validate().is_empty());
        assert!(kink(0, true, Sign::Minus).validate().is_empty());
    }

    #[test]
    fn validate_two_cycle_in_one_component() {
        let comp = Component {
            id: ComponentId(0),
            framing: BigInt::from(0),
            basepoint: None,
        };
        let arc = |id, next| Arc {
            id: ArcId(id),
            component: ComponentId(0),
            next: ArcId(next),
        };
        let d = FramedLinkDiagram::from_parts(
            vec![comp],
            vec![arc(0, 1), arc(1, 0), arc(2, 3), arc(3, 2)],
            vec![],
        )
        .unwrap();
        let v = d.validate();
        assert!(
            v.contains(&Violation::ComponentNotSingleCycle {
                component: ComponentId(0)
            }),
            "{v:?}"
        );
    }

    #[test]
    fn validate_reports_incidence_and_duplicates() {
        let t = trefoil(0, Sign::Plus);
        let mut crossings: Vec<Crossing> = t.crossings().cloned().collect();
        crossings[0].over_out = crossings[1].over_out;
        let d = FramedLinkDiagram::from_parts(
            t.components().to_vec(),
            t.arcs().cloned().collect(),
            crossings,
        )
        .unwrap();
        let v = d.validate();
        assert!(
            v.iter()
                .any(|x| matches!(x, Violation::OutgoingCount { .. })),
            "{v:?}"
        );
        assert!(v
            .iter()
            .any(|x| matches!(x, Violation::SuccessorDisagreesWithCrossing { .. })));

        let dup = FramedLinkDiagram::from_parts(
            vec![t.components()[0].clone(), t.components()[0].clone()],
            Vec::new(),
            Vec::new(),
        );
        assert_eq!(
            dup.unwrap_err(),
            vec![Violation::DuplicateComponent(ComponentId(0))]
        );
    }

    #[test]
    fn odd_linking_is_a_violation() {
        let d = FramedLinkDiagram::from_gauss_code(
            &[
                GaussComponent::new(0, vec![Passage::over(0)]),
                GaussComponent::new(0, vec![Passage::under(0)]),
            ],
            &[(0, Sign::Plus)],
        )
        .unwrap();
        assert_eq!(
            d.validate(),
            vec![Violation::OddLinking {
                a: ComponentId(0),
                b: ComponentId(1)
            }]
        );
        assert!(d.linking_matrix().is_err());
    }

    #[test]
    fn linking_numbers() {
        let h = hopf(0, 0, Sign::Plus);
        assert_eq!(lk(&h, 0, 1), BigInt::from(1));
        assert_eq!(lk(&h, 1, 0), BigInt::from(1));
        assert_eq!(lk(&unlink(&[1, 2]), 0, 1), BigInt::from(0));
        let c = chain(&[0, 0, 0]);
        assert_eq!(lk(&c, 0, 2), BigInt::from(0));
        assert_eq!(lk(&c, 0, 1), BigInt::from(1));
        assert_eq!(
            h.linking_number(ComponentId(0), ComponentId(0)),
            Err(DiagramError::SameComponent(ComponentId(0)))
        );
        assert_eq!(
            h.linking_number(ComponentId(0), ComponentId(7)),
            Err(DiagramError::UnknownComponent(ComponentId(7)))
        );
    }

    #[test]
    fn linking_matrices() {
        assert_eq!(
            unknot(7).linking_matrix().unwrap(),
            IntegralLattice::from_i64_rows(&[[7]]).unwrap()
        );
        assert_eq!(
            hopf(0, 0, Sign::Plus).linking_matrix().unwrap(),
            IntegralLattice::from_i64_rows(&[[0, 1], [1, 0]]).unwrap()
        );
        assert_eq!(e8_link().linking_matrix().unwrap(), e8_matrix());
    }

    #[test]
    fn switching() {
        let h = hopf(0, 0, Sign::Plus);
        let s = h.switch_crossing(CrossingId(0)).unwrap();
        assert_eq!(lk(&s, 0, 1), BigInt::from(0));
        assert_eq!(s.switch_crossing(CrossingId(0)).unwrap(), h);
        let t = trefoil(3, Sign::Plus);
        let st = t.switch_crossing(CrossingId(1)).unwrap();
        assert_eq!(st.linking_matrix().unwrap(), t.linking_matrix().unwrap());
        assert_eq!(
            h.switch_crossing(CrossingId(9)),
            Err(DiagramError::UnknownCrossing(CrossingId(9)))
        );
    }

    #[test]
    fn split_unknots() {
        let (d, id) = FramedLinkDiagram::empty().add_split_unknot(BigInt::from(-1));
        assert_eq!(id, ComponentId(0));
        assert_eq!(
            d.linking_matrix().unwrap(),
            IntegralLattice::from_i64_rows(&[[-1]]).unwrap()
        );
        let (d, _) = hopf(0, 0, Sign::Plus).add_split_unknot(BigInt::from(1));
        assert_eq!(
            d.linking_matrix().unwrap(),
            IntegralLattice::from_i64_rows(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap()
        );
        let d = unlink(&[1, 1, 1, 1]);
        assert!((0..4).all(|k| d.is_zero_crossing(ComponentId(k))));
    }

    #[test]
    fn reversal() {
        let h = hopf(0, 0, Sign::Plus);
        let r = h.reverse_component(ComponentId(1)).unwrap();
        assert!(r.is_valid());
        assert_eq!(lk(&r, 0, 1), BigInt::from(-1));
        assert_eq!(r.reverse_component(ComponentId(1)).unwrap(), h);
        let t = trefoil(1, Sign::Plus);
        let rt = t.reverse_component(ComponentId(0)).unwrap();
        assert!(rt.is_valid());
        assert_eq!(rt.writhe(ComponentId(0)), 3);
        let u = unknot(4);
        assert_eq!(
            u.reverse_component(ComponentId(0))
                .unwrap()
                .linking_matrix(),
            u.linking_matrix()
        );
    }

    #[test]
    fn descending_sets() {
        let ok = kink(0, true, Sign::Plus);
        assert!(ok
            .descending_switch_set(&[ComponentId(0)])
            .unwrap()
            .is_empty());
        let bad = kink(0, false, Sign::Plus);
        let set = bad.descending_switch_set(&[ComponentId(0)]).unwrap();
        assert_eq!(set.into_iter().collect::<Vec<_>>(), vec![CrossingId(0)]);

        // O0 U1 O2 U0 O1 U2: crossing 1 is first met under
        let t = trefoil(0, Sign::Plus);
        let set = t.descending_switch_set(&[ComponentId(0)]).unwrap();
        assert_eq!(set.iter().copied().collect::<Vec<_>>(), vec![CrossingId(1)]);
        let fixed = t.switch_all(&set).unwrap();
        assert!(fixed.is_descending(&[ComponentId(0)]).unwrap());

        assert_eq!(
            t.descending_switch_set(&[ComponentId(0), ComponentId(0)]),
            Err(DiagramError::RepeatedInOrder(ComponentId(0)))
        );
    }

    #[test]
    fn passages_follow_gauss_order() {
        let t = trefoil(0, Sign::Plus);
        let p = t.passages(ComponentId(0));
        assert_eq!(p.len(), 6);
        assert_eq!(p[0], Passage::over(0));
        assert_eq!(p[1], Passage::under(1));
        assert!(unknot(1).passages(ComponentId(0)).is_empty());
    }

    #[test]
    fn gauss_code_errors() {
        let e = FramedLinkDiagram::from_gauss_code(
            &[GaussComponent::new(0, vec![Passage::over(0)])],
            &[(0, Sign::Plus)],
        );
        assert!(matches!(e, Err(DiagramError::GaussCode(_))));
        let e = FramedLinkDiagram::from_gauss_code(
            &[GaussComponent::new(0, vec![Passage::over(3)])],
            &[],
        );
        assert!(matches!(e, Err(DiagramError::GaussCode(_))));
    }
}
