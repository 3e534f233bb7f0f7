//! JSON file formats.
//!
//! Integers that fit in 64 bits are written as JSON numbers and larger ones
//! as decimal strings; both spellings are accepted on input. Unknown keys are
//! rejected everywhere.

use std::collections::BTreeMap;

use dominance_core::calculus::{EmbeddingCertificate, KirbyMove, MoveScript};
use dominance_core::intlattice::{IntegralLattice, LatticeError};
use dominance_core::linkdiag::{
    Arc, ArcId, Component, ComponentId, Crossing, CrossingId, DiagramError, FramedLinkDiagram, Side,
};
use dominance_core::{BigInt, Sign};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{0}")]
    Diagram(#[from] DiagramError),
    #[error("{0}")]
    Lattice(#[from] LatticeError),
    #[error("{0}")]
    Schema(String),
}

/// Arbitrary-precision integer in JSON.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Int(pub BigInt);

impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match i64::try_from(&self.0) {
            Ok(v) => s.serialize_i64(v),
            Err(_) => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Signed(i64),
            Unsigned(u64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Signed(v) => Ok(Int(v.into())),
            Raw::Unsigned(v) => Ok(Int(v.into())),
            Raw::Text(t) => t
                .parse::<BigInt>()
                .map(Int)
                .map_err(|_| serde::de::Error::custom(format!("not a decimal integer: {t:?}"))),
        }
    }
}

/// `1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SignRec(pub Sign);

impl Serialize for SignRec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_i64(self.0.value())
    }
}

impl<'de> Deserialize<'de> for SignRec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = i64::deserialize(d)?;
        Sign::from_i64(v)
            .map(SignRec)
            .ok_or_else(|| serde::de::Error::custom(format!("sign must be 1 or -1, got {v}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentRec {
    pub id: u64,
    pub framing: Int,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basepoint: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ArcRec {
    pub id: u64,
    pub component: u64,
    pub next: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CrossingRec {
    pub id: u64,
    pub over_in: u64,
    pub over_out: u64,
    pub under_in: u64,
    pub under_out: u64,
    pub sign: SignRec,
}

/// Link file: components, arcs and crossings.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinkFile {
    pub components: Vec<ComponentRec>,
    pub arcs: Vec<ArcRec>,
    pub crossings: Vec<CrossingRec>,
}

impl LinkFile {
    pub fn from_diagram(d: &FramedLinkDiagram) -> Self {
        LinkFile {
            components: d
                .components()
                .iter()
                .map(|c| ComponentRec {
                    id: c.id.0,
                    framing: Int(c.framing.clone()),
                    basepoint: c.basepoint.map(|a| a.0),
                })
                .collect(),
            arcs: d
                .arcs()
                .map(|a| ArcRec {
                    id: a.id.0,
                    component: a.component.0,
                    next: a.next.0,
                })
                .collect(),
            crossings: d
                .crossings()
                .map(|x| CrossingRec {
                    id: x.id.0,
                    over_in: x.over_in.0,
                    over_out: x.over_out.0,
                    under_in: x.under_in.0,
                    under_out: x.under_out.0,
                    sign: SignRec(x.sign),
                })
                .collect(),
        }
    }

    /// Builds the diagram and checks every invariant.
    pub fn to_diagram(&self) -> Result<FramedLinkDiagram, FormatError> {
        let components = self
            .components
            .iter()
            .map(|c| Component {
                id: ComponentId(c.id),
                framing: c.framing.0.clone(),
                basepoint: c.basepoint.map(ArcId),
            })
            .collect();
        let arcs = self
            .arcs
            .iter()
            .map(|a| Arc {
                id: ArcId(a.id),
                component: ComponentId(a.component),
                next: ArcId(a.next),
            })
            .collect();
        let crossings = self
            .crossings
            .iter()
            .map(|x| Crossing {
                id: CrossingId(x.id),
                over_in: ArcId(x.over_in),
                over_out: ArcId(x.over_out),
                under_in: ArcId(x.under_in),
                under_out: ArcId(x.under_out),
                sign: x.sign.0,
            })
            .collect();
        let d = FramedLinkDiagram::from_parts(components, arcs, crossings)
            .map_err(DiagramError::Invalid)?;
        let violations = d.validate();
        if !violations.is_empty() {
            return Err(DiagramError::Invalid(violations).into());
        }
        Ok(d)
    }
}

/// Matrix file: `{"n": 2, "entries": [[0, 1], [1, 0]]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixFile {
    pub n: usize,
    pub entries: Vec<Vec<Int>>,
}

impl MatrixFile {
    pub fn from_lattice(l: &IntegralLattice) -> Self {
        MatrixFile {
            n: l.dim(),
            entries: l
                .to_rows()
                .into_iter()
                .map(|r| r.into_iter().map(Int).collect())
                .collect(),
        }
    }

    pub fn to_lattice(&self) -> Result<IntegralLattice, FormatError> {
        if self.entries.len() != self.n || self.entries.iter().any(|r| r.len() != self.n) {
            return Err(FormatError::Schema(format!(
                "entries must be a {0}x{0} array",
                self.n
            )));
        }
        let rows = self
            .entries
            .iter()
            .map(|r| r.iter().map(|x| x.0.clone()).collect())
            .collect();
        Ok(IntegralLattice::from_rows(rows)?)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionRec {
    pub disc: usize,
    pub sign: SignRec,
}

/// Signed intersections of a loop with the meridian discs, in order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntersectionsFile {
    pub intersections: Vec<IntersectionRec>,
}

impl IntersectionsFile {
    pub fn sequence(&self) -> Vec<(usize, Sign)> {
        self.intersections
            .iter()
            .map(|r| (r.disc, r.sign.0))
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case", deny_unknown_fields)]
pub enum MoveRec {
    GadgetSwitch {
        crossing: u64,
        unknot: u64,
        side: String,
    },
    SlideOverUnknot {
        component: u64,
        unknot: u64,
        s: SignRec,
    },
    AddSplitUnknot {
        framing: SignRec,
    },
    MatrixSlide {
        i: usize,
        j: usize,
        s: SignRec,
    },
    BlowDownIndex {
        k: usize,
    },
    DrawUnlink {
        drawing: LinkFile,
    },
}

impl MoveRec {
    pub fn from_move(m: &KirbyMove) -> Self {
        match m {
            KirbyMove::GadgetSwitch {
                crossing,
                unknot,
                side,
            } => MoveRec::GadgetSwitch {
                crossing: crossing.0,
                unknot: unknot.0,
                side: side.to_string(),
            },
            KirbyMove::SlideOverUnknot {
                component,
                unknot,
                s,
            } => MoveRec::SlideOverUnknot {
                component: component.0,
                unknot: unknot.0,
                s: SignRec(*s),
            },
            KirbyMove::AddSplitUnknot(eps) => MoveRec::AddSplitUnknot {
                framing: SignRec(*eps),
            },
            KirbyMove::MatrixSlide { i, j, s } => MoveRec::MatrixSlide {
                i: *i,
                j: *j,
                s: SignRec(*s),
            },
            KirbyMove::BlowDownIndex(k) => MoveRec::BlowDownIndex { k: *k },
            KirbyMove::DrawUnlink(d) => MoveRec::DrawUnlink {
                drawing: LinkFile::from_diagram(d),
            },
        }
    }

    pub fn to_move(&self) -> Result<KirbyMove, FormatError> {
        Ok(match self {
            MoveRec::GadgetSwitch {
                crossing,
                unknot,
                side,
            } => KirbyMove::GadgetSwitch {
                crossing: CrossingId(*crossing),
                unknot: ComponentId(*unknot),
                side: side.parse::<Side>()?,
            },
            MoveRec::SlideOverUnknot {
                component,
                unknot,
                s,
            } => KirbyMove::SlideOverUnknot {
                component: ComponentId(*component),
                unknot: ComponentId(*unknot),
                s: s.0,
            },
            MoveRec::AddSplitUnknot { framing } => KirbyMove::AddSplitUnknot(framing.0),
            MoveRec::MatrixSlide { i, j, s } => KirbyMove::MatrixSlide {
                i: *i,
                j: *j,
                s: s.0,
            },
            MoveRec::BlowDownIndex { k } => KirbyMove::BlowDownIndex(*k),
            MoveRec::DrawUnlink { drawing } => KirbyMove::DrawUnlink(drawing.to_diagram()?),
        })
    }
}

/// Certificate file. `sublink` maps target component ids (as JSON object
/// keys) to components of the final diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CertificateFile {
    pub target: LinkFile,
    pub initial: LinkFile,
    pub moves: Vec<MoveRec>,
    pub sublink: BTreeMap<u64, u64>,
    pub m: usize,
    pub n: usize,
    pub p: usize,
}

impl CertificateFile {
    pub fn from_certificate(c: &EmbeddingCertificate) -> Self {
        CertificateFile {
            target: LinkFile::from_diagram(&c.target),
            initial: LinkFile::from_diagram(&c.script.initial),
            moves: c.script.moves.iter().map(MoveRec::from_move).collect(),
            sublink: c.sublink.iter().map(|(k, v)| (k.0, v.0)).collect(),
            m: c.m,
            n: c.n,
            p: c.p,
        }
    }

    /// Structural decoding only; validity of the diagrams and moves is left
    /// to the verifier so that it can report it.
    pub fn to_certificate(&self) -> Result<EmbeddingCertificate, FormatError> {
        let moves = self
            .moves
            .iter()
            .map(MoveRec::to_move)
            .collect::<Result<_, _>>()?;
        Ok(EmbeddingCertificate {
            target: self.target.to_diagram()?,
            script: MoveScript {
                initial: self.initial.to_diagram()?,
                moves,
            },
            sublink: self
                .sublink
                .iter()
                .map(|(&k, &v)| (ComponentId(k), ComponentId(v)))
                .collect(),
            m: self.m,
            n: self.n,
            p: self.p,
        })
    }
}

pub fn parse_link(text: &str) -> Result<FramedLinkDiagram, FormatError> {
    serde_json::from_str::<LinkFile>(text)?.to_diagram()
}

pub fn parse_matrix(text: &str) -> Result<IntegralLattice, FormatError> {
    serde_json::from_str::<MatrixFile>(text)?.to_lattice()
}

pub fn parse_certificate(text: &str) -> Result<EmbeddingCertificate, FormatError> {
    serde_json::from_str::<CertificateFile>(text)?.to_certificate()
}

pub fn parse_intersections(text: &str) -> Result<Vec<(usize, Sign)>, FormatError> {
    Ok(serde_json::from_str::<IntersectionsFile>(text)?.sequence())
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("format types always serialize");
    s.push('\n');
    s
}

pub fn link_json(d: &FramedLinkDiagram) -> String {
    to_json(&LinkFile::from_diagram(d))
}

pub fn matrix_json(l: &IntegralLattice) -> String {
    to_json(&MatrixFile::from_lattice(l))
}

pub fn certificate_json(c: &EmbeddingCertificate) -> String {
    to_json(&CertificateFile::from_certificate(c))
}
