//! Random inputs and independent oracles shared by the integration tests.
#![allow(dead_code)]

use dominance_core::calculus::KirbyMove;
use dominance_core::linkdiag::{
    encircling_strands, ComponentId, FramedLinkDiagram, GaussComponent, Passage,
};
use dominance_core::{BigInt, Sign};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn sign<R: Rng>(rng: &mut R) -> Sign {
    if rng.gen_bool(0.5) {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

/// A random valid diagram with 1..=max_components components and at most
/// `max_crossings` crossings. Crossings between two components come in
/// pairs so every linking number is an integer.
pub fn random_diagram<R: Rng>(
    rng: &mut R,
    max_components: usize,
    max_crossings: usize,
) -> FramedLinkDiagram {
    let k = rng.gen_range(1..=max_components);
    let mut passages: Vec<Vec<Passage>> = vec![Vec::new(); k];
    let mut signs: Vec<(u64, Sign)> = Vec::new();
    let budget = rng.gen_range(0..=max_crossings);
    while signs.len() < budget {
        let a = rng.gen_range(0..k);
        let b = rng.gen_range(0..k);
        let pair = a != b && signs.len() + 2 <= budget;
        for _ in 0..if pair { 2 } else { 1 } {
            let (a, b) = if pair { (a, b) } else { (a, a) };
            let (o, u) = if rng.gen_bool(0.5) { (a, b) } else { (b, a) };
            let c = signs.len() as u64;
            passages[o].push(Passage::over(c));
            passages[u].push(Passage::under(c));
            signs.push((c, sign(rng)));
        }
    }
    let comps: Vec<GaussComponent> = passages
        .into_iter()
        .map(|mut p| {
            p.shuffle(rng);
            GaussComponent::new(rng.gen_range(-3..=3), p)
        })
        .collect();
    let d = FramedLinkDiagram::from_gauss_code(&comps, &signs)
        .expect("generated gauss code is well formed");
    assert!(d.is_valid(), "{:?}", d.validate());
    d
}

/// A random move whose preconditions hold on `d`, or `None` when only
/// growth-limiting moves were drawn and none applied.
pub fn random_move<R: Rng>(
    rng: &mut R,
    d: &FramedLinkDiagram,
    crossing_cap: usize,
) -> Option<KirbyMove> {
    let n = d.num_components();
    let comps = d.components();
    let units: Vec<usize> = (0..n)
        .filter(|&i| Sign::from_unit(&comps[i].framing).is_some())
        .collect();
    let split_units: Vec<usize> = units
        .iter()
        .copied()
        .filter(|&i| d.is_zero_crossing(comps[i].id))
        .collect();
    let blowable: Vec<usize> = units
        .iter()
        .copied()
        .filter(|&i| encircling_strands(d, comps[i].id).is_ok())
        .collect();
    match rng.gen_range(0..4) {
        0 => Some(KirbyMove::AddSplitUnknot(sign(rng))),
        1 if n >= 2 && d.num_crossings() <= crossing_cap => {
            let i = rng.gen_range(0..n);
            let j = (i + rng.gen_range(1..n)) % n;
            let twists = &comps[j].framing - BigInt::from(d.writhe(comps[j].id));
            if twists > BigInt::from(8) || twists < BigInt::from(-8) {
                return None;
            }
            Some(KirbyMove::MatrixSlide { i, j, s: sign(rng) })
        }
        2 if !split_units.is_empty() && n >= 2 => {
            let u = *split_units.choose(rng).unwrap();
            let i = (u + rng.gen_range(1..n)) % n;
            Some(KirbyMove::SlideOverUnknot {
                component: comps[i].id,
                unknot: comps[u].id,
                s: sign(rng),
            })
        }
        3 if !blowable.is_empty() && d.num_crossings() <= crossing_cap => {
            Some(KirbyMove::BlowDownIndex(*blowable.choose(rng).unwrap()))
        }
        _ => None,
    }
}

/// `max_len` random applicable moves, replayed while generating.
pub fn random_script<R: Rng>(rng: &mut R, d: &FramedLinkDiagram, max_len: usize) -> Vec<KirbyMove> {
    use dominance_core::calculus::apply_move;
    let len = rng.gen_range(1..=max_len);
    let mut moves = Vec::new();
    let mut cur = d.clone();
    let mut l = cur.linking_matrix().unwrap();
    let mut attempts = 0;
    while moves.len() < len && attempts < 50 * max_len {
        attempts += 1;
        let Some(mv) = random_move(rng, &cur, 60) else {
            continue;
        };
        if let Ok((next, m)) = apply_move(&cur, &l, &mv) {
            cur = next;
            l = m;
            moves.push(mv);
        }
    }
    moves
}

pub fn ids(v: &[u64]) -> Vec<ComponentId> {
    v.iter().map(|&k| ComponentId(k)).collect()
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(a: &[Vec<i64>]) -> i128 {
    let n = a.len();
    if n == 0 {
        return 1;
    }
    let mut total = 0i128;
    for c in 0..n {
        if a[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = a[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != c)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = a[0][c] as i128 * cofactor_det(&minor);
        total += if c % 2 == 0 { term } else { -term };
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

fn gcd(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of all
/// `k x k` minors and the `k`-th factor is `d_k / d_{k-1}`.
pub fn invariant_factors_by_minors(a: &[Vec<i64>]) -> Vec<i128> {
    let (r, c) = (a.len(), a.first().map_or(0, |row| row.len()));
    let mut prev = 1i128;
    let mut out = Vec::new();
    for k in 1..=r.min(c) {
        let mut g = 0i128;
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                let m: Vec<Vec<i64>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| a[i][j]).collect())
                    .collect();
                g = gcd(g, cofactor_det(&m));
            }
        }
        if g == 0 {
            break;
        }
        out.push(g / prev);
        prev = g;
    }
    out
}

/// Sylvester's criterion.
pub fn positive_definite_by_minors(a: &[Vec<i64>]) -> bool {
    (1..=a.len()).all(|k| {
        let m: Vec<Vec<i64>> = a[..k].iter().map(|row| row[..k].to_vec()).collect();
        cofactor_det(&m) > 0
    })
}

/// Short vectors by scanning the box `|x_i|^2 det <= bound * C_ii` (`C` the
/// cofactor matrix, so `C_ii / det` is the diagonal of the inverse), keeping
/// one of each `±x` pair.
pub fn brute_force_short_vectors(a: &[Vec<i64>], bound: i64) -> Vec<Vec<i64>> {
    let n = a.len();
    let det = cofactor_det(a);
    let radius: Vec<i64> = (0..n)
        .map(|i| {
            let minor: Vec<Vec<i64>> = (0..n)
                .filter(|&r| r != i)
                .map(|r| (0..n).filter(|&c| c != i).map(|c| a[r][c]).collect())
                .collect();
            let cii = cofactor_det(&minor);
            let mut t = 0i64;
            while ((t + 1) as i128).pow(2) * det <= bound as i128 * cii {
                t += 1;
            }
            t
        })
        .collect();
    let mut out = Vec::new();
    let mut x = radius.iter().map(|r| -r).collect::<Vec<_>>();
    loop {
        let norm: i64 = (0..n)
            .map(|i| (0..n).map(|j| x[i] * a[i][j] * x[j]).sum::<i64>())
            .sum();
        let first = x.iter().find(|&&c| c != 0);
        if first.is_some_and(|&c| c > 0) && norm <= bound {
            out.push(x.clone());
        }
        let mut k = 0;
        loop {
            if k == n {
                return out;
            }
            if x[k] < radius[k] {
                x[k] += 1;
                break;
            }
            x[k] = -radius[k];
            k += 1;
        }
    }
}
