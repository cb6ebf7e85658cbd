//! Exact lower bounds from segment families: maximum pairwise-disjoint
//! subfamilies and minimum stabbing sets, both by branch and bound.

use crate::exactnum::{rat, Scalar};
use crate::surface::{Surface, SurfacePoint};
use crate::tracer::{interiors_intersect, Segment, TrailPiece};

/// Segment count above which the exact searches fall back to greedy bounds.
pub const EXACT_SEARCH_LIMIT: usize = 2000;

fn conflict_graph(m: &Surface, segments: &[Segment]) -> Vec<Vec<bool>> {
    let n = segments.len();
    let mut adj = vec![vec![false; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            if interiors_intersect(m, &segments[i], &segments[j]) {
                adj[i][j] = true;
                adj[j][i] = true;
            }
        }
    }
    adj
}

/// A maximum pairwise interior-disjoint subfamily. One blocking point can
/// stab at most one member, so the size bounds bc from below. The boolean is
/// false when the instance was too large for the exact search and a greedy
/// family is returned instead.
pub fn disjoint_family(m: &Surface, segments: &[Segment]) -> (Vec<usize>, bool) {
    let n = segments.len();
    if n == 0 {
        return (Vec::new(), true);
    }
    let adj = conflict_graph(m, segments);
    let degree = |i: usize| adj[i].iter().filter(|&&b| b).count();
    // greedy warm start: repeatedly take the lowest-degree compatible vertex
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&i| degree(i));
    let mut greedy: Vec<usize> = Vec::new();
    for &i in &order {
        if greedy.iter().all(|&j| !adj[i][j]) {
            greedy.push(i);
        }
    }
    if n > EXACT_SEARCH_LIMIT {
        greedy.sort();
        return (greedy, false);
    }
    let mut best = greedy.clone();
    let mut current: Vec<usize> = Vec::new();
    let candidates: Vec<usize> = (0..n).collect();
    mis_search(&adj, &mut current, candidates, &mut best);
    best.sort();
    (best, true)
}

fn mis_search(adj: &[Vec<bool>], current: &mut Vec<usize>, mut candidates: Vec<usize>, best: &mut Vec<usize>) {
    if current.len() + candidates.len() <= best.len() {
        return;
    }
    if candidates.is_empty() {
        if current.len() > best.len() {
            *best = current.clone();
        }
        return;
    }
    // branch on the candidate with the most remaining conflicts
    let (idx, &v) = candidates
        .iter()
        .enumerate()
        .max_by_key(|(_, &v)| candidates.iter().filter(|&&u| adj[v][u]).count())
        .expect("candidates nonempty");
    candidates.swap_remove(idx);
    // include v
    let filtered: Vec<usize> = candidates.iter().copied().filter(|&u| !adj[v][u]).collect();
    current.push(v);
    mis_search(adj, current, filtered, best);
    current.pop();
    // exclude v
    mis_search(adj, current, candidates, best);
}

/// Interior intersection points of two segments, as canonical points.
/// Collinear overlaps contribute inner sample points at several parameters
/// so that at least one avoids any two forbidden endpoints.
fn intersection_points(
    m: &Surface,
    s1: &Segment,
    s2: &Segment,
    avoid: &[&SurfacePoint],
) -> Vec<SurfacePoint> {
    use TrailPiece::*;
    let mut out: Vec<SurfacePoint> = Vec::new();
    let mut push = |p: SurfacePoint, out: &mut Vec<SurfacePoint>| {
        if !avoid.contains(&&p) && !out.contains(&p) {
            out.push(p);
        }
    };
    for p1 in &s1.trail {
        for p2 in &s2.trail {
            match (p1, p2) {
                (PassVertex { class: c1, .. }, PassVertex { class: c2, .. }) if c1 == c2 => {
                    push(m.vertex_point(*c1), &mut out);
                }
                (Cross { edge: e1, t: t1, .. }, Cross { edge: e2, t: t2, .. })
                    if e1 == e2 && t1 == t2 =>
                {
                    if let Ok(p) = edge_point(m, e1, t1) {
                        push(p, &mut out);
                    }
                }
                (Cross { edge, t, .. }, Ride { edge: re, t_enter, t_exit, .. })
                | (Ride { edge: re, t_enter, t_exit, .. }, Cross { edge, t, .. })
                    if edge == re =>
                {
                    let (lo, hi) = ordered(t_enter, t_exit);
                    if lo < t && t < hi {
                        if let Ok(p) = edge_point(m, edge, t) {
                            push(p, &mut out);
                        }
                    }
                }
                (
                    Ride { edge: e1, t_enter: a1, t_exit: b1, .. },
                    Ride { edge: e2, t_enter: a2, t_exit: b2, .. },
                ) if e1 == e2 => {
                    let (lo1, hi1) = ordered(a1, b1);
                    let (lo2, hi2) = ordered(a2, b2);
                    let lo = lo1.max(lo2);
                    let hi = hi1.min(hi2);
                    if lo < hi {
                        for (num, den) in [(1i64, 2i64), (1, 4), (3, 4)] {
                            let t = lo + &((hi - lo) * Scalar::from_rational(rat(num, den)));
                            if let Ok(p) = edge_point(m, e1, &t) {
                                push(p, &mut out);
                            }
                        }
                    }
                }
                (
                    Face { face: f1, enter: e1, exit: x1, offset: o1 },
                    Face { face: f2, enter: e2, exit: x2, offset: o2 },
                ) if f1 == f2 => {
                    let a1 = e1 - o1;
                    let b1 = x1 - o1;
                    let a2 = e2 - o2;
                    let b2 = x2 - o2;
                    match crate::tracer::closed_segment_intersection_points(&a1, &b1, &a2, &b2) {
                        None => {}
                        Some((u, None)) => {
                            if let Ok(p) = m.point(*f1, u) {
                                push(p, &mut out);
                            }
                        }
                        Some((u, Some(v))) => {
                            for (num, den) in [(1i64, 2i64), (1, 4), (3, 4)] {
                                let t = Scalar::from_rational(rat(num, den));
                                let w = &u + &(&v - &u).scale(&t);
                                if let Ok(p) = m.point(*f1, w) {
                                    push(p, &mut out);
                                }
                            }
                        }
                    }
                }
                _ => {}
            }
        }
    }
    out
}

fn ordered<'a>(a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn edge_point(m: &Surface, e: &crate::surface::EdgeRef, t: &Scalar) -> crate::error::Result<SurfacePoint> {
    let a = &m.face(e.face)[e.edge];
    let ev = m.edge_vector(*e);
    m.point(e.face, a + &ev.scale(t))
}

/// Minimum number of points stabbing the interior of every segment, with a
/// witness. The candidate pool is every pairwise intersection point plus
/// interior sample points of each segment; it always contains an optimal
/// stabbing set: any point stabbing a subfamily lies in the common
/// intersection of their interiors, which is either a single point (then a
/// pairwise crossing, hence a candidate) or a shared subsegment bounded by
/// two members whose overlap samples are candidates stabbing the same
/// subfamily. The boolean is false when the exact search was skipped.
pub fn min_stab(
    m: &Surface,
    segments: &[Segment],
    x: &SurfacePoint,
    y: &SurfacePoint,
) -> (usize, Vec<SurfacePoint>, bool) {
    let n = segments.len();
    if n == 0 {
        return (0, Vec::new(), true);
    }
    let avoid = [x, y];
    let mut candidates: Vec<SurfacePoint> = Vec::new();
    for s in segments {
        for (num, den) in [(1i64, 2i64), (1, 3), (2, 3)] {
            if let Ok(p) = s.point_at(m, &Scalar::from_rational(rat(num, den))) {
                if !avoid.contains(&&p) && !candidates.contains(&p) {
                    candidates.push(p);
                    break;
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            for p in intersection_points(m, &segments[i], &segments[j], &avoid) {
                if !candidates.contains(&p) {
                    candidates.push(p);
                }
            }
        }
    }
    // coverage bitsets
    let words = n.div_ceil(64);
    let mut cover: Vec<Vec<u64>> = Vec::with_capacity(candidates.len());
    for c in &candidates {
        let mut bits = vec![0u64; words];
        for (i, s) in segments.iter().enumerate() {
            if s.contains_interior_point(m, c) {
                bits[i / 64] |= 1 << (i % 64);
            }
        }
        cover.push(bits);
    }
    // drop candidates that stab nothing
    let keep: Vec<usize> = (0..candidates.len())
        .filter(|&i| cover[i].iter().any(|&w| w != 0))
        .collect();
    let candidates: Vec<SurfacePoint> = keep.iter().map(|&i| candidates[i].clone()).collect();
    let cover: Vec<Vec<u64>> = keep.iter().map(|&i| cover[i].clone()).collect();

    let full: Vec<u64> = (0..words)
        .map(|w| {
            if (w + 1) * 64 <= n {
                u64::MAX
            } else {
                (1u64 << (n % 64)) - 1
            }
        })
        .collect();

    // greedy warm start
    let popcount = |bits: &[u64]| -> usize { bits.iter().map(|w| w.count_ones() as usize).sum() };
    let mut covered = vec![0u64; words];
    let mut greedy: Vec<usize> = Vec::new();
    while covered != full {
        let best = (0..candidates.len())
            .max_by_key(|&i| {
                let gain: usize = (0..words)
                    .map(|w| (cover[i][w] & !covered[w]).count_ones() as usize)
                    .sum();
                gain
            })
            .expect("candidates cover all segments");
        let gain: usize = (0..words)
            .map(|w| (cover[best][w] & !covered[w]).count_ones() as usize)
            .sum();
        assert!(gain > 0, "candidate pool must cover every segment");
        for w in 0..words {
            covered[w] |= cover[best][w];
        }
        greedy.push(best);
    }
    if n > EXACT_SEARCH_LIMIT {
        let pts = greedy.iter().map(|&i| candidates[i].clone()).collect();
        return (greedy.len(), pts, false);
    }

    let mut best = greedy;
    let max_cover = cover.iter().map(|b| popcount(b)).max().unwrap_or(1).max(1);
    let mut chosen: Vec<usize> = Vec::new();
    cover_search(
        &cover,
        &full,
        &mut chosen,
        &vec![0u64; words],
        &mut best,
        max_cover,
    );
    let pts = best.iter().map(|&i| candidates[i].clone()).collect();
    (best.len(), pts, true)
}

fn cover_search(
    cover: &[Vec<u64>],
    full: &[u64],
    chosen: &mut Vec<usize>,
    covered: &[u64],
    best: &mut Vec<usize>,
    max_cover: usize,
) {
    if covered == full {
        if chosen.len() < best.len() {
            *best = chosen.clone();
        }
        return;
    }
    let words = full.len();
    let uncovered_count: usize = (0..words)
        .map(|w| (full[w] & !covered[w]).count_ones() as usize)
        .sum();
    // lower bound: each new point stabs at most max_cover segments
    let lb = chosen.len() + uncovered_count.div_ceil(max_cover);
    if lb >= best.len() {
        return;
    }
    // pick the uncovered segment with the fewest stabbing candidates
    let mut target = usize::MAX;
    let mut target_opts = usize::MAX;
    for w in 0..words {
        let mut bits = full[w] & !covered[w];
        while bits != 0 {
            let b = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            let seg = w * 64 + b;
            let opts = (0..cover.len())
                .filter(|&i| cover[i][w] & (1 << b) != 0)
                .count();
            if opts < target_opts {
                target_opts = opts;
                target = seg;
            }
        }
    }
    if target == usize::MAX {
        return;
    }
    let (tw, tb) = (target / 64, target % 64);
    let mut options: Vec<usize> = (0..cover.len())
        .filter(|&i| cover[i][tw] & (1 << tb) != 0)
        .collect();
    options.sort_by_key(|&i| {
        let gain: usize = (0..words)
            .map(|w| (cover[i][w] & !covered[w]).count_ones() as usize)
            .sum();
        usize::MAX - gain
    });
    for i in options {
        let mut next = covered.to_vec();
        for w in 0..words {
            next[w] |= cover[i][w];
        }
        chosen.push(i);
        cover_search(cover, full, chosen, &next, best, max_cover);
        chosen.pop();
    }
}
