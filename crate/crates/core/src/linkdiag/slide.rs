//! Handle slides on diagrams.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

use super::{Component, ComponentId, CrossingId, DiagramError, FramedLinkDiagram, Level, Passage};
use crate::Sign;

/// Largest number of full twists a slide will draw into the pushoff.
pub const MAX_SLIDE_TWISTS: u64 = 1024;

/// Slides component `mover` over component `over`: band-sums `mover` with a
/// framed pushoff of `over`, oriented parallel (`s = +1`) or antiparallel.
///
/// The pushoff copies every crossing of `over`: a crossing with another strand
/// is doubled along that strand, and each self-crossing becomes four. Its
/// linking with `over` is then the writhe of `over`; `|framing - writhe|` full
/// twists bring it to the framing. The band joins the basepoint arc of
/// `mover` to the first arc of the pushoff. The new framing is
/// `f_mover + 2 s lk(mover, over) + f_over`, so the linking matrix changes by
/// the congruence `e_mover -> e_mover + s e_over`.
///
/// Fresh ids: twist crossings, then per passage of `over` in traversal order
/// its copies (a self-crossing's three copies when it is first met), then the
/// pushoff arcs, then arcs split off existing strands.
pub fn slide_handle(
    d: &FramedLinkDiagram,
    mover: ComponentId,
    over: ComponentId,
    s: Sign,
) -> Result<FramedLinkDiagram, DiagramError> {
    d.check()?;
    let lk = d.linking_number(mover, over)?;
    let f_mover = d.framing(mover)?.clone();
    let f_over = d.framing(over)?.clone();
    let twist = &f_over - BigInt::from(d.writhe(over));
    let twists = twist
        .abs()
        .to_u64()
        .filter(|&t| t <= MAX_SLIDE_TWISTS)
        .ok_or_else(|| DiagramError::TwistTooLarge {
            component: over,
            twists: twist.abs(),
            limit: MAX_SLIDE_TWISTS,
        })?;

    let mut out = d.clone();
    let anchors = out.basepoint_anchors(&d.component_ids());
    let route = out.passages(over);
    let pushoff = out.fresh_component_id();
    out.components.push(Component {
        id: pushoff,
        framing: BigInt::from(0),
        basepoint: None,
    });

    let mut pushoff_stops = Vec::new();
    let mut over_twists = Vec::new();
    if let Some(tsign) = Sign::of(&twist) {
        for _ in 0..twists {
            let z1 = out.fresh_crossing(tsign);
            let z2 = out.fresh_crossing(tsign);
            over_twists.push(Passage {
                crossing: z1,
                level: Level::Over,
            });
            over_twists.push(Passage {
                crossing: z2,
                level: Level::Under,
            });
            pushoff_stops.push(Passage {
                crossing: z1,
                level: Level::Under,
            });
            pushoff_stops.push(Passage {
                crossing: z2,
                level: Level::Over,
            });
        }
    }

    // (crossing, level of the existing strand, stop to add right after it)
    let mut after: Vec<(CrossingId, Level, Passage)> = Vec::new();
    // self-crossing -> (over runs over pushoff, pushoff over over, pushoff over pushoff)
    let mut copies: BTreeMap<CrossingId, (CrossingId, CrossingId, CrossingId)> = BTreeMap::new();
    for p in &route {
        let x = out.crossings[&p.crossing].clone();
        if out.strand_owner(&x, p.level.other()) != Some(over) {
            let copy = out.fresh_crossing(x.sign);
            pushoff_stops.push(Passage {
                crossing: copy,
                level: p.level,
            });
            after.push((
                x.id,
                p.level.other(),
                Passage {
                    crossing: copy,
                    level: p.level.other(),
                },
            ));
            continue;
        }
        let (on_top, under_top, both) = match copies.get(&x.id) {
            Some(&c) => c,
            None => {
                let c = (
                    out.fresh_crossing(x.sign),
                    out.fresh_crossing(x.sign),
                    out.fresh_crossing(x.sign),
                );
                copies.insert(x.id, c);
                c
            }
        };
        match p.level {
            Level::Over => {
                pushoff_stops.push(Passage {
                    crossing: under_top,
                    level: Level::Over,
                });
                pushoff_stops.push(Passage {
                    crossing: both,
                    level: Level::Over,
                });
                after.push((
                    x.id,
                    Level::Over,
                    Passage {
                        crossing: on_top,
                        level: Level::Over,
                    },
                ));
            }
            Level::Under => {
                pushoff_stops.push(Passage {
                    crossing: on_top,
                    level: Level::Under,
                });
                pushoff_stops.push(Passage {
                    crossing: both,
                    level: Level::Under,
                });
                after.push((
                    x.id,
                    Level::Under,
                    Passage {
                        crossing: under_top,
                        level: Level::Under,
                    },
                ));
            }
        }
    }

    out.build_cycle(pushoff, &pushoff_stops);
    for (x, level, stop) in after {
        let arc = out.crossings[&x].outgoing(level);
        out.splice(arc, &[stop]);
    }
    if !over_twists.is_empty() {
        let start = match out.basepoint(over) {
            Some(b) => b,
            None => out.fresh_arc(over),
        };
        out.splice(start, &over_twists);
    }
    if s == Sign::Minus {
        out.reverse_in_place(pushoff)?;
    }

    band_sum(&mut out, mover, pushoff);
    out.component_mut(mover)?.framing = f_mover + BigInt::from(2 * s.value()) * lk + f_over;
    out.restore_basepoints(&anchors);
    out.normalize_loops();
    debug_assert!(
        out.is_valid(),
        "slide broke the diagram: {:?}",
        out.validate()
    );
    Ok(out)
}

/// Merges `other` into `keep` by exchanging the ends of one arc of each.
fn band_sum(d: &mut FramedLinkDiagram, keep: ComponentId, other: ComponentId) {
    let other_arcs = d.component_arcs(other);
    if other_arcs.is_empty() {
        d.remove_component(other);
        return;
    }
    if d.is_zero_crossing(keep) {
        d.arcs.retain(|_, a| a.component != keep);
        if let Ok(c) = d.component_mut(keep) {
            c.basepoint = None;
        }
    } else {
        let alpha = d
            .basepoint(keep)
            .expect("component with crossings has arcs");
        let beta = other_arcs[0];
        let (ca, la) = d
            .arc_end(alpha)
            .expect("arc of a crossing component ends somewhere");
        let (cb, lb) = d.arc_end(beta).expect("pushoff arc ends somewhere");
        *d.crossings.get_mut(&ca).expect("crossing").incoming_mut(la) = beta;
        *d.crossings.get_mut(&cb).expect("crossing").incoming_mut(lb) = alpha;
        let alpha_next = d.crossings[&cb].outgoing(lb);
        let beta_next = d.crossings[&ca].outgoing(la);
        d.arcs.get_mut(&alpha).expect("arc").next = alpha_next;
        d.arcs.get_mut(&beta).expect("arc").next = beta_next;
    }
    for arc in d.arcs.values_mut() {
        if arc.component == other {
            arc.component = keep;
        }
    }
    d.components.retain(|c| c.id != other);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intlattice::congruence_slide;
    use crate::linkdiag::samples::*;

    fn check_slide(d: &FramedLinkDiagram, i: u64, j: u64, s: Sign) -> FramedLinkDiagram {
        let out = slide_handle(d, ComponentId(i), ComponentId(j), s).unwrap();
        assert!(out.is_valid(), "{:?}", out.validate());
        let (ii, jj) = (
            d.index_of(ComponentId(i)).unwrap(),
            d.index_of(ComponentId(j)).unwrap(),
        );
        let expected = congruence_slide(&d.linking_matrix().unwrap(), ii, jj, s).unwrap();
        assert_eq!(out.linking_matrix().unwrap(), expected);
        out
    }

    #[test]
    fn slide_over_split_unknot_adds_a_meridian() {
        let d = unlink(&[3, 1]);
        let out = check_slide(&d, 0, 1, Sign::Plus);
        assert_eq!(out.num_crossings(), 2);
        assert_eq!(out.framing(ComponentId(0)).unwrap(), &BigInt::from(4));
        assert_eq!(
            out.linking_number(ComponentId(0), ComponentId(1)).unwrap(),
            BigInt::from(1)
        );
        let strands = crate::linkdiag::encircling_strands(&out, ComponentId(1)).unwrap();
        assert_eq!(strands.len(), 1);
    }

    #[test]
    fn slides_agree_with_congruence() {
        let samples = [
            hopf(1, -2, Sign::Plus),
            chain(&[2, 0, -1]),
            e8_link(),
            trefoil(-1, Sign::Plus).add_split_unknot(BigInt::from(1)).0,
        ];
        for d in &samples {
            let ids = d.component_ids();
            for &i in &ids {
                for &j in &ids {
                    if i == j {
                        continue;
                    }
                    for s in [Sign::Plus, Sign::Minus] {
                        check_slide(d, i.0, j.0, s);
                    }
                }
            }
        }
    }

    #[test]
    fn repeated_slides_stay_consistent() {
        let mut d = chain(&[1, 2, -1]);
        for (i, j, s) in [
            (0, 1, Sign::Plus),
            (2, 0, Sign::Minus),
            (1, 2, Sign::Plus),
            (0, 2, Sign::Minus),
        ] {
            d = check_slide(&d, i, j, s);
        }
    }

    #[test]
    fn slide_errors() {
        let h = hopf(0, 0, Sign::Plus);
        assert_eq!(
            slide_handle(&h, ComponentId(0), ComponentId(0), Sign::Plus),
            Err(DiagramError::SameComponent(ComponentId(0)))
        );
        let big = h.with_framing(ComponentId(1), BigInt::from(5000)).unwrap();
        assert!(matches!(
            slide_handle(&big, ComponentId(0), ComponentId(1), Sign::Plus),
            Err(DiagramError::TwistTooLarge { .. })
        ));
    }
}
