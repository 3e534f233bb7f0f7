//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use common::*;
use dominance::cli::run;
use dominance::format;
use dominance_core::calculus::{
    build_embedding_certificate, reduce_free_word, replay, unknotify, verify_certificate,
    word_from_intersections, CertificateOptions, FreeWord, KirbyMove, Letter, MoveScript,
    UnknotMode, Unknotified,
};
use dominance_core::intlattice::{
    diagonalizable_over_z, e8_matrix, homology_from_linking, inertia, matrix_determinant,
    short_vectors, smith_normal_form, AbelianGroupPresentation, Inertia, IntMatrix,
    IntegralLattice,
};
use dominance_core::linkdiag::{
    blow_down_gadget, insert_crossing_gadget, samples, End, FramedLinkDiagram, Level, Side,
};
use dominance_core::{BigInt, Sign};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SIDES: [Side; 4] = [
    Side::INCOMING,
    Side::OUTGOING,
    Side {
        over: End::In,
        under: End::Out,
    },
    Side {
        over: End::Out,
        under: End::In,
    },
];

const FAST: Duration = Duration::from_secs(1);

type Outcome = Result<String, String>;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
        .display()
        .to_string()
}

fn load_link(name: &str) -> FramedLinkDiagram {
    format::parse_link(&std::fs::read_to_string(fixture(name)).unwrap()).unwrap()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn timed(limit: Duration, started: Instant) -> Result<String, String> {
    let t = started.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(format!("{:.1} ms", t.as_secs_f64() * 1e3))
}

fn e8_suite() -> Outcome {
    let started = Instant::now();
    for l in [
        e8_matrix(),
        samples::e8_link()
            .linking_matrix()
            .map_err(|e| e.to_string())?,
    ] {
        ensure(l.determinant() == BigInt::from(1), || {
            format!("det {}", l.determinant())
        })?;
        let i = inertia(&l);
        ensure(
            i == Inertia {
                positive: 8,
                zero: 0,
                negative: 0,
            },
            || format!("inertia {i:?}"),
        )?;
        let h = homology_from_linking(&l);
        ensure(h.is_trivial(), || format!("H1 = {h}"))?;
        let diag = diagonalizable_over_z(&l).map_err(|e| e.to_string())?;
        ensure(!diag.diagonalizable, || "E8 reported diagonalizable".into())?;
    }
    for input in ["e8.matrix.json", "e8.link.json"] {
        let out = run(["dominance", "obstruction", &fixture(input)]);
        ensure(
            out.status == 0 && out.stdout.contains("verdict: OBSTRUCTED\n"),
            || format!("{input}: status {} {}", out.status, out.stdout),
        )?;
    }
    timed(FAST, started)
}

fn lens_spaces() -> Outcome {
    let started = Instant::now();
    let cases: [(i64, AbelianGroupPresentation); 5] = [
        (
            0,
            AbelianGroupPresentation {
                rank: 1,
                torsion: vec![],
            },
        ),
        (1, AbelianGroupPresentation::trivial()),
        (
            2,
            AbelianGroupPresentation {
                rank: 0,
                torsion: vec![BigInt::from(2)],
            },
        ),
        (
            5,
            AbelianGroupPresentation {
                rank: 0,
                torsion: vec![BigInt::from(5)],
            },
        ),
        (
            -7,
            AbelianGroupPresentation {
                rank: 0,
                torsion: vec![BigInt::from(7)],
            },
        ),
    ];
    for (p, expected) in cases {
        let h = homology_from_linking(
            &samples::unknot(p)
                .linking_matrix()
                .map_err(|e| e.to_string())?,
        );
        ensure(h == expected, || {
            format!("p = {p}: got {h}, expected {expected}")
        })?;
    }
    timed(FAST, started)
}

fn gadget_soundness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(101);
    let mut diagrams = 0;
    let mut gadgets = 0;
    while diagrams < 200 {
        let d = random_diagram(&mut rng, 3, 8);
        if d.num_crossings() == 0 {
            continue;
        }
        let before = d.linking_matrix().map_err(|e| e.to_string())?;
        for x in d.crossings().map(|x| x.id).collect::<Vec<_>>() {
            for side in SIDES {
                let (g, rec) = insert_crossing_gadget(&d, x, side).map_err(|e| e.to_string())?;
                let back = blow_down_gadget(&g, &rec).map_err(|e| e.to_string())?;
                let after = back.linking_matrix().map_err(|e| e.to_string())?;
                ensure(after == before, || {
                    format!("crossing {x:?} side {side:?}: {after:?} != {before:?}")
                })?;
                gadgets += 1;
            }
        }
        diagrams += 1;
    }
    Ok(format!("{diagrams} diagrams, {gadgets} gadgets, exact"))
}

fn move_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(102);
    let mut steps = 0;
    for k in 0..100 {
        let d = random_diagram(&mut rng, 3, 6);
        let moves = random_script(&mut rng, &d, 20);
        ensure(moves.len() <= 20, || format!("script {k} too long"))?;
        let r = replay(&MoveScript {
            initial: d.clone(),
            moves,
        })
        .map_err(|e| format!("script {k}: {e}"))?;
        let h = homology_from_linking(&d.linking_matrix().map_err(|e| e.to_string())?);
        for (t, m) in r.trace.iter().enumerate() {
            let ht = homology_from_linking(m);
            ensure(ht == h, || format!("script {k} step {t}: {ht} != {h}"))?;
        }
        let last = r.diagram.linking_matrix().map_err(|e| e.to_string())?;
        ensure(r.trace.last() == Some(&last), || {
            format!("script {k}: final traces differ")
        })?;
        steps += r.trace.len() - 1;
    }
    Ok(format!("100 scripts, {steps} steps"))
}

fn is_unimodular_matrix(m: &IntMatrix) -> bool {
    matrix_determinant(m).is_ok_and(|d| d == BigInt::from(1) || d == BigInt::from(-1))
}

fn snf_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(103);
    for k in 0..500 {
        let a: Vec<Vec<i64>> = (0..4)
            .map(|_| (0..4).map(|_| rng.gen_range(-5..=5)).collect())
            .collect();
        let am = IntMatrix::from_i64_rows(&a).unwrap();
        let snf = smith_normal_form(&am);
        ensure(snf.left.mul(&snf.diagonal).mul(&snf.right) == am, || {
            format!("#{k} {a:?}: A != U S V")
        })?;
        ensure(
            is_unimodular_matrix(&snf.left) && is_unimodular_matrix(&snf.right),
            || format!("#{k} {a:?}: U or V not unimodular"),
        )?;
        let f = snf.invariant_factors();
        for w in f.windows(2) {
            let divides = if w[0] == BigInt::from(0) {
                w[1] == BigInt::from(0)
            } else {
                &w[1] % &w[0] == BigInt::from(0)
            };
            ensure(divides, || format!("#{k} {a:?}: chain {f:?}"))?;
        }
        let det_s: BigInt = f.iter().product();
        let det_a = BigInt::from(cofactor_det(&a).abs());
        ensure(det_s.magnitude() == det_a.magnitude(), || {
            format!("#{k} {a:?}: |det S| {det_s} != {det_a}")
        })?;
    }
    Ok("500 matrices".into())
}

fn short_vector_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(104);
    let mut done = 0;
    let mut vectors = 0;
    while done < 50 {
        let n = rng.gen_range(1..=4);
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = rng.gen_range(1..=4);
            for j in 0..i {
                let x = rng.gen_range(-2..=2);
                a[i][j] = x;
                a[j][i] = x;
            }
        }
        if !positive_definite_by_minors(&a) {
            continue;
        }
        let l = IntegralLattice::from_i64_rows(&a).unwrap();
        for bound in 1..=4 {
            let got = short_vectors(&l, &BigInt::from(bound)).map_err(|e| e.to_string())?;
            let mut expected: Vec<Vec<BigInt>> = brute_force_short_vectors(&a, bound)
                .into_iter()
                .map(|v| v.into_iter().map(BigInt::from).collect())
                .collect();
            expected.sort_by_key(|v| (l.norm(v), v.clone()));
            ensure(got == expected, || format!("{a:?} bound {bound}"))?;
            vectors += got.len();
        }
        done += 1;
    }
    Ok(format!("50 matrices, {vectors} vectors"))
}

fn certificate_round_trip() -> Outcome {
    let corpus = [
        "unknot_m3.link.json",
        "unknot_m2.link.json",
        "unknot_m1.link.json",
        "unknot_0.link.json",
        "unknot_1.link.json",
        "unknot_2.link.json",
        "unknot_3.link.json",
        "chain2.link.json",
        "chain3.link.json",
    ];
    for name in corpus {
        let d = load_link(name);
        for pad_positive in [false, true] {
            let opts = CertificateOptions {
                pad_positive,
                ..Default::default()
            };
            let c = build_embedding_certificate(&d, &opts).map_err(|e| format!("{name}: {e}"))?;
            let report = verify_certificate(&c);
            ensure(report.passed(), || format!("{name}: {:?}", report.checks))?;
            let switches = c
                .script
                .moves
                .iter()
                .filter(|m| matches!(m, KirbyMove::GadgetSwitch { .. }))
                .count();
            ensure(c.p == switches, || {
                format!("{name}: p {} but {switches} switches", c.p)
            })?;
            ensure(c.m + c.n == c.initial().num_components(), || {
                format!("{name}: m + n mismatch")
            })?;
            if pad_positive {
                ensure(c.m > 0 && c.n > 0, || {
                    format!("{name}: padded m {} n {}", c.m, c.n)
                })?;
            }
        }
        let out = run([
            "dominance",
            "certify-embedding",
            "--pad-positive",
            &fixture(name),
        ]);
        ensure(out.status == 0, || {
            format!("{name}: cli status {}", out.status)
        })?;
    }
    Ok(format!("{} links, padded and unpadded", corpus.len()))
}

fn literally_descending(d: &FramedLinkDiagram, c: dominance_core::linkdiag::ComponentId) -> bool {
    let own = |x| {
        d.crossing(x)
            .is_some_and(|x| d.strand_owner(x, Level::Over) == d.strand_owner(x, Level::Under))
    };
    let mut seen = std::collections::BTreeSet::new();
    d.passages(c)
        .into_iter()
        .filter(|p| own(p.crossing))
        .all(|p| !seen.insert(p.crossing) || p.level == Level::Over)
}

fn check_unknotified(label: &str, d: &FramedLinkDiagram, u: &Unknotified) -> Result<(), String> {
    for c in d.component_ids() {
        ensure(literally_descending(&u.diagram, c), || {
            format!("{label}: {c:?} not descending")
        })?;
    }
    for g in &u.gadgets {
        let f = u.diagram.framing(g.unknot).cloned().unwrap_or_default();
        ensure(Sign::from_unit(&f).is_some(), || {
            format!("{label}: gadget framing {f}")
        })?;
    }
    let mut back = u.diagram.clone();
    for g in u.gadgets.iter().rev() {
        back = blow_down_gadget(&back, g).map_err(|e| format!("{label}: {e}"))?;
    }
    let (a, b) = (
        back.linking_matrix().map_err(|e| e.to_string())?,
        d.linking_matrix().map_err(|e| e.to_string())?,
    );
    ensure(a == b, || format!("{label}: {a:?} != {b:?}"))
}

fn unknotify_suite() -> Outcome {
    let trefoil = load_link("trefoil.link.json");
    let u = unknotify(&trefoil, None, UnknotMode::Components).map_err(|e| e.to_string())?;
    ensure(u.p >= 1, || "trefoil needed no gadgets".into())?;
    check_unknotified("trefoil", &trefoil, &u)?;
    let mut rng = ChaCha8Rng::seed_from_u64(105);
    let mut gadgets = u.p;
    for k in 0..20 {
        let d = random_diagram(&mut rng, 3, 8);
        let u = unknotify(&d, None, UnknotMode::Components).map_err(|e| e.to_string())?;
        check_unknotified(&format!("random #{k}"), &d, &u)?;
        gadgets += u.p;
    }
    Ok(format!("trefoil + 20 random, {gadgets} gadgets"))
}

fn free_group_lemma() -> Outcome {
    for i in 1..=50 {
        let w = word_from_intersections(&[(i, Sign::Plus), (i, Sign::Minus)]);
        let r = reduce_free_word(&w);
        ensure(r.trivial, || {
            format!("gamma pattern at {i} reduced to {}", r.reduced)
        })?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(106);
    for k in 0..300 {
        let len = rng.gen_range(0..16);
        let w = FreeWord::new(
            (0..len)
                .map(|_| Letter::new(rng.gen_range(1..=3), sign(&mut rng)))
                .collect(),
        );
        let expected = reduce_free_word(&w).reduced.letters;
        for _ in 0..5 {
            let mut v = w.letters.clone();
            loop {
                let spots: Vec<usize> = (0..v.len().saturating_sub(1))
                    .filter(|&j| v[j].cancels(v[j + 1]))
                    .collect();
                if spots.is_empty() {
                    break;
                }
                let j = spots[rng.gen_range(0..spots.len())];
                v.drain(j..j + 2);
            }
            ensure(v == expected, || {
                format!("word #{k} {w}: schedule gave a different normal form")
            })?;
        }
    }
    Ok("50 gamma patterns, 300 words x 5 schedules".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("1 e8_suite", e8_suite),
        ("2 lens_space_homology", lens_spaces),
        ("3 gadget_soundness", gadget_soundness),
        ("4 move_invariance", move_invariance),
        ("5 snf_oracle", snf_oracle),
        ("6 short_vector_oracle", short_vector_oracle),
        ("7 certificate_round_trip", certificate_round_trip),
        ("8 unknotify", unknotify_suite),
        ("9 free_group_lemma", free_group_lemma),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        match check() {
            Ok(detail) => println!("PASS {name}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("FAIL {name}: {detail}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
