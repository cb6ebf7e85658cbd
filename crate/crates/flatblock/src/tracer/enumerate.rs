//! Complete enumeration of straight segments between two points.
//!
//! The search unfolds face copies into the developing plane with the start
//! point at the origin. Each tree node keeps a closed cone of directions that
//! can still traverse its corridor; candidate holonomies are developed copies
//! of the target inside the cone and the budget disk. Candidates are then
//! re-traced exactly by the walker, which rejects any path that meets a
//! singular or marked vertex, so the enumeration only needs to be
//! conservative, never exact, and duplicates collapse on the canonical trail.

use super::walk::{sector_contains_closed, Walker};
use super::{cmp_vec, on_closed_subsegment, Segment, TrailPiece, WalkStop};
use crate::error::{Error, Result};
use crate::exactnum::{cross, dot, norm_sq, same_direction, Scalar, Vec2};
use crate::surface::{EdgeRef, PointKind, Surface, SurfacePoint};
use rayon::prelude::*;
use std::collections::BTreeSet;

#[derive(Clone, Debug)]
pub struct EnumerationConfig {
    /// Cap on unfolding-tree nodes before giving up.
    pub node_guard: usize,
    /// Worker threads for candidate verification; output is identical.
    pub workers: usize,
}

impl Default for EnumerationConfig {
    fn default() -> Self {
        EnumerationConfig {
            node_guard: 10_000_000,
            workers: 1,
        }
    }
}

/// Closed cone of directions.
#[derive(Clone, Debug)]
enum Cone {
    Full,
    /// Directions from `lo` counterclockwise to `hi`, boundary included;
    /// angle in (0, pi]. `lo` parallel to `hi` with positive dot is a ray.
    Sector { lo: Vec2, hi: Vec2 },
}

impl Cone {
    fn contains(&self, w: &Vec2) -> bool {
        match self {
            Cone::Full => true,
            Cone::Sector { lo, hi } => {
                if cross(lo, hi).is_zero() && dot(lo, hi).is_positive() {
                    return same_direction(lo, w);
                }
                let cl = cross(lo, w);
                let ch = cross(w, hi);
                let lo_ok = cl.is_positive() || (cl.is_zero() && dot(lo, w).is_positive());
                let hi_ok = ch.is_positive() || (ch.is_zero() && dot(w, hi).is_positive());
                lo_ok && hi_ok
            }
        }
    }

    fn as_ray(&self) -> Option<&Vec2> {
        match self {
            Cone::Sector { lo, hi } if cross(lo, hi).is_zero() && dot(lo, hi).is_positive() => {
                Some(lo)
            }
            _ => None,
        }
    }

    fn intersect(&self, other: &Cone) -> Option<Cone> {
        match (self, other) {
            (Cone::Full, c) | (c, Cone::Full) => Some(c.clone()),
            (Cone::Sector { lo: l1, hi: h1 }, Cone::Sector { lo: l2, hi: h2 }) => {
                let lo = if other.contains(l1) { l1 } else { l2 };
                let hi = if other.contains(h1) { h1 } else { h2 };
                let cand = Cone::Sector {
                    lo: lo.clone(),
                    hi: hi.clone(),
                };
                let ok = self.contains(lo)
                    && other.contains(lo)
                    && self.contains(hi)
                    && other.contains(hi)
                    && cand.contains(lo)
                    && cand.contains(hi);
                if ok {
                    Some(cand)
                } else {
                    None
                }
            }
        }
    }
}

/// Directions from the origin through the closed developed segment [a, b].
/// Collinear cases degenerate to rays.
fn edge_cones(a: &Vec2, b: &Vec2) -> Vec<Cone> {
    let cs = cross(a, b);
    if cs.is_positive() {
        return vec![Cone::Sector { lo: a.clone(), hi: b.clone() }];
    }
    if cs.is_negative() {
        return vec![Cone::Sector { lo: b.clone(), hi: a.clone() }];
    }
    let mut out = Vec::new();
    let mut push_ray = |v: Vec2, out: &mut Vec<Cone>| {
        if !v.is_zero() {
            out.push(Cone::Sector { lo: v.clone(), hi: v });
        }
    };
    if a.is_zero() {
        push_ray(b - a, &mut out);
    } else if b.is_zero() {
        push_ray(a - b, &mut out);
    } else if dot(a, b).is_negative() {
        // origin strictly inside: both along-edge directions escape
        push_ray(b - a, &mut out);
        push_ray(a - b, &mut out);
    } else {
        push_ray(a.clone(), &mut out);
    }
    out
}

/// Squared distance from the origin to a closed convex developed polygon.
fn min_dist_sq(poly: &[Vec2]) -> Scalar {
    let n = poly.len();
    let origin_inside = (0..n).all(|i| {
        let ev = &poly[(i + 1) % n] - &poly[i];
        !cross(&ev, &(-&poly[i])).is_negative()
    });
    if origin_inside {
        return Scalar::zero();
    }
    let mut best: Option<Scalar> = None;
    for i in 0..n {
        let a = &poly[i];
        let ab = &poly[(i + 1) % n] - a;
        let t = (-&dot(a, &ab)) / norm_sq(&ab);
        let t = t.max(Scalar::zero()).min(Scalar::one());
        let p = a + &ab.scale(&t);
        let d = norm_sq(&p);
        best = Some(match best {
            None => d,
            Some(b) => b.min(d),
        });
    }
    best.expect("polygon has edges")
}

/// Canonical representative of a direction up to positive scaling.
fn dir_key(v: &Vec2) -> Vec2 {
    let scale = if !v.x.is_zero() { v.x.abs() } else { v.y.abs() };
    Vec2::new(&v.x / &scale, &v.y / &scale)
}

struct Node {
    face: usize,
    offset: Vec2,
    cone: Cone,
    entry: Option<usize>,
    root: Option<usize>,
}

struct SearchCtx<'a> {
    m: &'a Surface,
    budget: Scalar,
    x_start: SurfacePoint,
    y_reps: Vec<(usize, Vec2)>,
    y_class: Option<usize>,
    /// (start corner rank for vertex starts, holonomy)
    candidates: BTreeSet<(Option<usize>, Vec2)>,
    harvested: BTreeSet<Vec2>,
    nodes: usize,
    guard: usize,
}

impl<'a> SearchCtx<'a> {
    fn push_candidate(&mut self, root: Option<usize>, h: Vec2) {
        if !h.is_zero() && norm_sq(&h) <= self.budget {
            self.candidates.insert((root, h));
        }
    }

    fn explore(&mut self, mut stack: Vec<Node>) -> Result<()> {
        while let Some(node) = stack.pop() {
            self.nodes += 1;
            if self.nodes > self.guard {
                return Err(Error::BudgetTooLarge(self.nodes));
            }
            let poly: Vec<Vec2> = self
                .m
                .face(node.face)
                .iter()
                .map(|v| v + &node.offset)
                .collect();
            if min_dist_sq(&poly) > self.budget {
                continue;
            }
            let mut found: Vec<Vec2> = Vec::new();
            for (f, pos) in &self.y_reps {
                if *f == node.face {
                    let h = pos + &node.offset;
                    if !h.is_zero() && node.cone.contains(&h) {
                        found.push(h);
                    }
                }
            }
            for h in found {
                self.push_candidate(node.root, h);
            }
            let n = poly.len();
            for e in 0..n {
                if node.entry == Some(e) {
                    continue;
                }
                let a = &poly[e];
                let b = &poly[(e + 1) % n];
                for window in edge_cones(a, b) {
                    let Some(cone) = node.cone.intersect(&window) else {
                        continue;
                    };
                    if let Some(ray) = cone.as_ray() {
                        let ray = ray.clone();
                        self.harvest_ray(&ray)?;
                        continue;
                    }
                    let here = EdgeRef::new(node.face, e);
                    let partner = self.m.partner(here);
                    let offset = &node.offset - self.m.gluing_translation(here);
                    stack.push(Node {
                        face: partner.face,
                        offset,
                        cone,
                        entry: Some(partner.edge),
                        root: node.root,
                    });
                }
            }
        }
        Ok(())
    }

    /// Resolve a degenerate single-direction corridor by tracing the ray
    /// itself, collecting every target copy it passes over.
    fn harvest_ray(&mut self, ray: &Vec2) -> Result<()> {
        if !self.harvested.insert(dir_key(ray)) {
            return Ok(());
        }
        let x_start = self.x_start.clone();
        match x_start.kind() {
            PointKind::Vertex { class } => {
                let class = *class;
                let n_corners = self.m.classes()[class].corners.len();
                for rank in 0..n_corners {
                    let (f, i) = self.m.classes()[class].corners[rank];
                    if sector_contains_closed(self.m, f, i, ray) {
                        if let Ok(w) = Walker::from_corner(self.m, class, rank, ray.clone()) {
                            self.walk_and_collect(w, Some(rank))?;
                        }
                    }
                }
            }
            _ => {
                if let Ok(w) = Walker::new(self.m, &x_start, ray.clone()) {
                    self.walk_and_collect(w, None)?;
                }
            }
        }
        Ok(())
    }

    fn walk_and_collect(&mut self, mut walker: Walker, root: Option<usize>) -> Result<()> {
        loop {
            self.nodes += 1;
            if self.nodes > self.guard {
                return Err(Error::BudgetTooLarge(self.nodes));
            }
            let before = walker.trail.len();
            let advanced = match walker.step() {
                Ok(a) => a,
                Err(_) => return Ok(()),
            };
            let mut found: Vec<Vec2> = Vec::new();
            for piece in &walker.trail[before..] {
                match piece {
                    TrailPiece::Face { face, enter, exit, offset } => {
                        for (f, pos) in &self.y_reps {
                            if f == face {
                                let ydev = pos + offset;
                                if on_closed_subsegment(enter, exit, &ydev) {
                                    found.push(ydev);
                                }
                            }
                        }
                    }
                    TrailPiece::Ride { edge, enter, exit, offset, .. } => {
                        for (f, pos) in &self.y_reps {
                            if *f == edge.face {
                                let ydev = pos + offset;
                                if on_closed_subsegment(enter, exit, &ydev) {
                                    found.push(ydev);
                                }
                            }
                        }
                    }
                    TrailPiece::PassVertex { class, at } => {
                        if self.y_class == Some(*class) {
                            found.push(at.clone());
                        }
                    }
                    TrailPiece::Cross { .. } => {}
                }
            }
            if !advanced {
                if let Some(WalkStop::VertexHit { class, at }) = walker.stop_reason() {
                    if self.y_class == Some(*class) {
                        found.push(at.clone());
                    }
                }
                for h in found {
                    self.push_candidate(root, h);
                }
                return Ok(());
            }
            for h in found {
                self.push_candidate(root, h);
            }
            if norm_sq(&walker.dev_pos()) > self.budget {
                return Ok(());
            }
        }
    }
}

/// All singularity-free straight segments from x to y with squared length at
/// most `max_len_sq`, complete, deduplicated and in canonical order.
pub fn segments_between(
    m: &Surface,
    x: &SurfacePoint,
    y: &SurfacePoint,
    max_len_sq: &Scalar,
) -> Result<Vec<Segment>> {
    segments_between_with(m, x, y, max_len_sq, &EnumerationConfig::default())
}

pub fn segments_between_with(
    m: &Surface,
    x: &SurfacePoint,
    y: &SurfacePoint,
    max_len_sq: &Scalar,
    cfg: &EnumerationConfig,
) -> Result<Vec<Segment>> {
    let budget = max_len_sq.with_field(m.field())?;
    if !budget.is_positive() {
        return Ok(Vec::new());
    }
    let mut ctx = SearchCtx {
        m,
        budget,
        x_start: x.clone(),
        y_reps: m.representations(y),
        y_class: y.vertex_class(),
        candidates: BTreeSet::new(),
        harvested: BTreeSet::new(),
        nodes: 0,
        guard: cfg.node_guard,
    };

    // roots: one node per chart representation of x, each developed with the
    // start at the origin
    let mut roots = Vec::new();
    match x.kind() {
        PointKind::Vertex { class } => {
            for (rank, &(f, i)) in m.classes()[*class].corners.iter().enumerate() {
                let (u_out, u_prev) = m.corner_sector(f, i);
                roots.push(Node {
                    face: f,
                    offset: -&m.face(f)[i],
                    cone: Cone::Sector { lo: u_out, hi: u_prev },
                    entry: None,
                    root: Some(rank),
                });
            }
        }
        _ => {
            for (f, pos) in m.representations(x) {
                roots.push(Node {
                    face: f,
                    offset: -&pos,
                    cone: Cone::Full,
                    entry: None,
                    root: None,
                });
            }
        }
    }
    ctx.explore(roots)?;

    let candidates: Vec<(Option<usize>, Vec2)> = ctx.candidates.into_iter().collect();
    let verify = |c: &(Option<usize>, Vec2)| verify_candidate(m, x, y, c.0, &c.1);
    let mut segments: Vec<Segment> = if cfg.workers > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.workers)
            .build()
            .map_err(|e| Error::BadParams(e.to_string()))?;
        pool.install(|| candidates.par_iter().filter_map(verify).collect())
    } else {
        candidates.iter().filter_map(verify).collect()
    };
    segments.sort_by(|a, b| a.cmp_canonical(b));
    segments.dedup_by(|a, b| a.trail == b.trail && a.holonomy == b.holonomy);
    Ok(segments)
}

/// Trace the candidate holonomy from x and accept it only when the straight
/// path is singularity-free and lands exactly on y.
fn verify_candidate(
    m: &Surface,
    x: &SurfacePoint,
    y: &SurfacePoint,
    root: Option<usize>,
    h: &Vec2,
) -> Option<Segment> {
    let mut walker = match (x.kind(), root) {
        (PointKind::Vertex { class }, Some(rank)) => {
            Walker::from_corner(m, *class, rank, h.clone()).ok()?
        }
        (PointKind::Vertex { .. }, None) => return None,
        _ => Walker::new(m, x, h.clone()).ok()?,
    };
    let len_sq = norm_sq(h);
    let one = Scalar::one();
    let mut steps = 0usize;
    loop {
        steps += 1;
        if steps > 1_000_000 {
            return None;
        }
        let advanced = walker.step().ok()?;
        let dev = walker.dev_pos();
        let s = dot(&dev, h) / &len_sq;
        if s < one {
            if !advanced {
                return None; // singular hit strictly before the target
            }
            continue;
        }
        if s == one {
            // the target is exactly this event point
            let reached = match walker.trail.last()? {
                TrailPiece::PassVertex { class, .. } => y.vertex_class() == Some(*class),
                _ => match walker.stop_reason() {
                    Some(WalkStop::VertexHit { class, .. }) => y.vertex_class() == Some(*class),
                    None => m.point(walker.face(), walker.face_pos().clone()).ok()? == *y,
                },
            };
            if !reached {
                return None;
            }
            let mut trail = walker.trail;
            // endpoint events are not part of the interior
            while matches!(
                trail.last(),
                Some(TrailPiece::PassVertex { .. }) | Some(TrailPiece::Cross { .. })
            ) {
                trail.pop();
            }
            return Some(Segment {
                start: x.clone(),
                end: y.clone(),
                holonomy: h.clone(),
                length_sq: len_sq,
                trail,
            });
        }
        // s > 1: the target sits strictly inside the last travel piece
        let mut trail = walker.trail;
        while matches!(
            trail.last(),
            Some(TrailPiece::PassVertex { .. }) | Some(TrailPiece::Cross { .. })
        ) {
            trail.pop();
        }
        let piece = trail.pop()?;
        let truncated = match piece {
            TrailPiece::Face { face, enter, offset, .. } => {
                let pos = h - &offset;
                if m.point(face, pos).ok()? != *y {
                    return None;
                }
                TrailPiece::Face { face, enter, exit: h.clone(), offset }
            }
            TrailPiece::Ride { edge, t_enter, enter, offset, .. } => {
                let pos = h - &offset;
                if m.point(edge.face, pos.clone()).ok()? != *y {
                    return None;
                }
                let a = &m.face(edge.face)[edge.edge];
                let ev = m.edge_vector(edge);
                let t_exit = dot(&ev, &(&pos - a)) / norm_sq(&ev);
                TrailPiece::Ride {
                    edge,
                    t_enter,
                    t_exit,
                    enter,
                    exit: h.clone(),
                    offset,
                }
            }
            _ => return None,
        };
        trail.push(truncated);
        return Some(Segment {
            start: x.clone(),
            end: y.clone(),
            holonomy: h.clone(),
            length_sq: len_sq,
            trail,
        });
    }
}

/// All straight segments joining singular or marked vertices, up to the
/// budget, over every ordered pair of such classes.
pub fn saddle_connections(m: &Surface, max_len_sq: &Scalar) -> Result<Vec<Segment>> {
    saddle_connections_with(m, max_len_sq, &EnumerationConfig::default())
}

pub fn saddle_connections_with(
    m: &Surface,
    max_len_sq: &Scalar,
    cfg: &EnumerationConfig,
) -> Result<Vec<Segment>> {
    let classes: Vec<usize> = m.singular_classes().collect();
    if classes.is_empty() {
        return Err(Error::NoSingularities);
    }
    let mut out = Vec::new();
    for &a in &classes {
        for &b in &classes {
            let x = m.vertex_point(a);
            let y = m.vertex_point(b);
            out.extend(segments_between_with(m, &x, &y, max_len_sq, cfg)?);
        }
    }
    out.sort_by(|s1, s2| {
        s1.cmp_canonical(s2)
            .then_with(|| cmp_vec(s1.start.pos(), s2.start.pos()))
    });
    Ok(out)
}
