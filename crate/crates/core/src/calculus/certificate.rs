use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::moves::{apply_move, replay, KirbyMove, MoveError, MoveScript, Replay};
use super::unknotify::{gadget_side, unknotify, UnknotMode};
use crate::linkdiag::{gadget_epsilon, Component, ComponentId, DiagramError, FramedLinkDiagram};
use crate::Sign;

/// Witness that surgery on `target` embeds, separating, in a connected sum of
/// `m` copies of CP^2 and `n` of its reverse (with `S^3 x I`): starting from a
/// split unlink of `m + n` unknots framed ±1, the script reaches a diagram
/// containing `target` as the sublink `sublink`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingCertificate {
    pub target: FramedLinkDiagram,
    pub script: MoveScript,
    /// Target component -> component of the final diagram.
    pub sublink: BTreeMap<ComponentId, ComponentId>,
    pub m: usize,
    pub n: usize,
    /// Number of gadget switches.
    pub p: usize,
}

impl EmbeddingCertificate {
    pub fn initial(&self) -> &FramedLinkDiagram {
        &self.script.initial
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CertificateOptions {
    /// Run [`unknotify`] first when a component is not descending on its own.
    pub auto_unknotify: bool,
    /// Add a `+1`/`-1` pair of split unknots when `m` or `n` would be zero.
    pub pad_positive: bool,
    /// Traversal order for the descending switch set; missing components
    /// follow in declaration order.
    pub order: Option<Vec<ComponentId>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertificateError {
    #[error("component {0} is not presented as a descending unknot")]
    NotUnknot(ComponentId),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
    #[error("construction failed while applying its own moves: {0}")]
    Move(#[from] MoveError),
    #[error("framing change of {0} units is too large")]
    FramingTooLarge(BigInt),
}

/// Builds the certificate of the embedding construction for a link of
/// unknots.
///
/// Each target component starts as a split unknot framed `sign(f)` (`+1`
/// for `f = 0`). The link is drawn as the descending unlink obtained by
/// switching the descending switch set; each of those `p` crossings is then
/// switched back by a gadget, consuming one split ±1 unknot. Finally every
/// component slides over `|f - current framing|` fresh split unknots, each
/// shifting its framing by one.
pub fn build_embedding_certificate(
    d: &FramedLinkDiagram,
    options: &CertificateOptions,
) -> Result<EmbeddingCertificate, CertificateError> {
    d.check()?;
    let mut order: Vec<ComponentId> = options.order.clone().unwrap_or_default();
    let target = match d
        .component_ids()
        .into_iter()
        .find(|&c| !d.is_descending(&[c]).unwrap_or(false))
    {
        None => d.clone(),
        Some(_) if options.auto_unknotify => {
            unknotify(
                d,
                options.order.as_deref().filter(|o| !o.is_empty()),
                UnknotMode::Components,
            )?
            .diagram
        }
        Some(c) => return Err(CertificateError::NotUnknot(c)),
    };
    for id in target.component_ids() {
        if !order.contains(&id) {
            order.push(id);
        }
    }
    let switches = target.descending_switch_set(&order)?;
    let unit = |f: &BigInt| {
        if f.is_negative() {
            Sign::Minus
        } else {
            Sign::Plus
        }
    };

    let mut drawing = target.switch_all(&switches)?;
    for c in target.components() {
        drawing = drawing.with_framing(c.id, unit(&c.framing).to_bigint())?;
    }

    let mut used: BTreeSet<ComponentId> = target.component_ids().into_iter().collect();
    let mut fresh = || {
        let mut k = 0;
        while used.contains(&ComponentId(k)) {
            k += 1;
        }
        used.insert(ComponentId(k));
        ComponentId(k)
    };
    let mut components: Vec<Component> = target
        .components()
        .iter()
        .map(|c| Component {
            id: c.id,
            framing: unit(&c.framing).to_bigint(),
            basepoint: None,
        })
        .collect();
    let mut moves = Vec::new();
    if target.arcs().next().is_some() {
        moves.push(KirbyMove::DrawUnlink(drawing.clone()));
    }
    for &c in &switches {
        let side = gadget_side(&drawing, c)?;
        let sign = drawing
            .crossing(c)
            .ok_or(DiagramError::UnknownCrossing(c))?
            .sign;
        let unknot = fresh();
        components.push(Component {
            id: unknot,
            framing: gadget_epsilon(sign, side).to_bigint(),
            basepoint: None,
        });
        moves.push(KirbyMove::GadgetSwitch {
            crossing: c,
            unknot,
            side,
        });
    }

    // framings after the gadgets, read off a dry run
    let dry = MoveScript {
        initial: initial_diagram(&components)?,
        moves: moves.clone(),
    };
    let mut state = dry.initial.clone();
    let mut matrix = state.linking_matrix()?;
    for mv in &dry.moves {
        (state, matrix) = apply_move(&state, &matrix, mv)?;
    }
    for c in target.components() {
        let gap = &c.framing - state.framing(c.id)?;
        let Some(step) = Sign::of(&gap) else { continue };
        let units = gap
            .abs()
            .to_usize()
            .ok_or_else(|| CertificateError::FramingTooLarge(gap.clone()))?;
        for _ in 0..units {
            let unknot = fresh();
            components.push(Component {
                id: unknot,
                framing: step.to_bigint(),
                basepoint: None,
            });
            moves.push(KirbyMove::SlideOverUnknot {
                component: c.id,
                unknot,
                s: Sign::Plus,
            });
        }
    }

    let count =
        |cs: &[Component], s: Sign| cs.iter().filter(|c| c.framing == s.to_bigint()).count();
    if options.pad_positive
        && (count(&components, Sign::Plus) == 0 || count(&components, Sign::Minus) == 0)
    {
        for s in [Sign::Plus, Sign::Minus] {
            let id = fresh();
            components.push(Component {
                id,
                framing: s.to_bigint(),
                basepoint: None,
            });
        }
    }
    let (m, n) = (
        count(&components, Sign::Plus),
        count(&components, Sign::Minus),
    );
    let sublink = target.component_ids().into_iter().map(|c| (c, c)).collect();
    let script = MoveScript {
        initial: initial_diagram(&components)?,
        moves,
    };
    Ok(EmbeddingCertificate {
        target,
        script,
        sublink,
        m,
        n,
        p: switches.len(),
    })
}

fn initial_diagram(components: &[Component]) -> Result<FramedLinkDiagram, DiagramError> {
    FramedLinkDiagram::from_parts(components.to_vec(), Vec::new(), Vec::new())
        .map_err(DiagramError::Invalid)
}

/// One verification check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateReport {
    pub checks: Vec<Check>,
    /// Present when the script replayed completely.
    pub replay: Option<Replay>,
}

impl CertificateReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

/// Names of the checks, in report order.
pub const CERTIFICATE_CHECKS: [&str; 5] = [
    "initial_unlink",
    "counts",
    "replay",
    "gadget_count",
    "sublink",
];

/// Replays the certificate and checks it.
///
/// * `initial_unlink`: the initial diagram is valid, has no crossings and
///   every framing is ±1.
/// * `counts`: `m` and `n` count the `+1` and `-1` framings.
/// * `replay`: every move applies, with diagram and matrix traces agreeing.
/// * `gadget_count`: `p` equals the number of gadget switches.
/// * `sublink`: the linking matrix of the final diagram restricted to the
///   sublink equals that of the target.
///
/// Only linking data of the sublink is compared; its isotopy class is not.
pub fn verify_certificate(c: &EmbeddingCertificate) -> CertificateReport {
    let mut checks = Vec::with_capacity(CERTIFICATE_CHECKS.len());
    let mut push = |name, result: Result<(), String>| {
        let (passed, detail) = match result {
            Ok(()) => (true, String::new()),
            Err(e) => (false, e),
        };
        checks.push(Check {
            name,
            passed,
            detail,
        });
    };
    let initial = c.initial();

    push("initial_unlink", {
        let violations = initial.validate();
        if !violations.is_empty() {
            Err(format!(
                "initial diagram is invalid: {}",
                DiagramError::Invalid(violations)
            ))
        } else if initial.num_crossings() > 0 {
            Err(format!(
                "initial diagram has {} crossings",
                initial.num_crossings()
            ))
        } else if let Some(bad) = initial
            .components()
            .iter()
            .find(|k| Sign::from_unit(&k.framing).is_none())
        {
            Err(format!("component {} has framing {}", bad.id, bad.framing))
        } else {
            Ok(())
        }
    });

    push("counts", {
        let plus = initial
            .components()
            .iter()
            .filter(|k| k.framing == BigInt::from(1))
            .count();
        let minus = initial
            .components()
            .iter()
            .filter(|k| k.framing == BigInt::from(-1))
            .count();
        if (plus, minus) != (c.m, c.n) {
            Err(format!(
                "declared m = {}, n = {}; initial framings give m = {plus}, n = {minus}",
                c.m, c.n
            ))
        } else if c.m + c.n != initial.num_components() {
            Err(format!(
                "m + n = {} but the initial diagram has {} components",
                c.m + c.n,
                initial.num_components()
            ))
        } else {
            Ok(())
        }
    });

    let replayed = replay(&c.script);
    push(
        "replay",
        replayed.as_ref().map(|_| ()).map_err(|e| format!("{e}")),
    );

    push("gadget_count", {
        let switches = c
            .script
            .moves
            .iter()
            .filter(|m| matches!(m, KirbyMove::GadgetSwitch { .. }))
            .count();
        if switches == c.p {
            Ok(())
        } else {
            Err(format!(
                "declared p = {} but the script has {switches} gadget switches",
                c.p
            ))
        }
    });

    push(
        "sublink",
        match &replayed {
            Err(_) => Err(String::from("no final diagram to compare")),
            Ok(r) => check_sublink(c, &r.diagram),
        },
    );

    CertificateReport {
        checks,
        replay: replayed.ok(),
    }
}

fn check_sublink(c: &EmbeddingCertificate, last: &FramedLinkDiagram) -> Result<(), String> {
    let expected = c
        .target
        .linking_matrix()
        .map_err(|e| format!("target: {e}"))?;
    let ids = c.target.component_ids();
    let keys: Vec<ComponentId> = c.sublink.keys().copied().collect();
    let mut sorted = ids.clone();
    sorted.sort();
    if keys != sorted {
        return Err(String::from(
            "sublink does not list exactly the target components",
        ));
    }
    let mut indices = Vec::with_capacity(ids.len());
    for id in &ids {
        let image = c.sublink[id];
        let k = last
            .index_of(image)
            .ok_or_else(|| format!("sublink image {image} is not in the final diagram"))?;
        if indices.contains(&k) {
            return Err(format!("sublink image {image} is used twice"));
        }
        indices.push(k);
    }
    let full = last
        .linking_matrix()
        .map_err(|e| format!("final diagram: {e}"))?;
    let got = full.submatrix(&indices);
    for i in 0..ids.len() {
        for j in 0..ids.len() {
            if got.entry(i, j) != expected.entry(i, j) {
                return Err(format!(
                    "entry ({}, {}) is {} in the final sublink but {} in the target",
                    ids[i],
                    ids[j],
                    got.entry(i, j),
                    expected.entry(i, j)
                ));
            }
        }
    }
    Ok(())
}
