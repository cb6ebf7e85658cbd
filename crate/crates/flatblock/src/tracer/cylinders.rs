//! Directional cylinder decompositions via interval first-return maps.
//!
//! Every vertex (singular or not) is traced forward and backward in the given
//! direction until its leaf meets another vertex. The crossing parameters cut
//! the transversal edges into intervals whose one-face flow map is then free
//! of vertices; orbits of that map are flat strips. Strips glued across
//! leaves that carry no singular vertex are the same cylinder and get merged,
//! so reported heights are the true cylinder heights.

use super::walk::Walker;
use super::{Segment, TrailPiece, WalkStop};
use crate::error::{Error, Result};
use crate::exactnum::{cross, dot, norm_sq, Scalar, Vec2};
use crate::surface::{EdgeRef, Surface};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Clone, Debug)]
pub struct Cylinder {
    pub direction: Vec2,
    /// Core holonomy is `circumference_factor * direction`.
    pub circumference_factor: Scalar,
    pub circumference_sq: Scalar,
    pub height_sq: Scalar,
    /// Saddle connections on the cylinder boundary, canonical order.
    pub boundary: Vec<Segment>,
}

#[derive(Clone, Debug)]
pub enum CylinderVerdict {
    Complete(Vec<Cylinder>),
    /// Some leaf failed to close within the exploration cap; the direction
    /// could not be decided. Reported with the vertex class of the prong.
    Undecided { prong_class: usize, explored_len_sq: Scalar },
}

#[derive(Clone, Debug)]
pub enum Periodicity {
    Yes { ratios: Vec<(usize, usize, Scalar)> },
    No { pair: (usize, usize), ratio: Scalar },
    Undecided { prong_class: usize, explored_len_sq: Scalar },
}

struct ProngTrace {
    start_class: usize,
    end_class: usize,
    trail: Vec<TrailPiece>,
    holonomy: Vec2,
    singular: bool,
}

/// Trace every vertex leaf in directions +-dir up to the squared budget.
/// Returns Err(prong class) when a leaf fails to meet a vertex in budget.
fn trace_leaves(
    m: &Surface,
    dir: &Vec2,
    budget: &Scalar,
) -> std::result::Result<Vec<ProngTrace>, usize> {
    let mut traces = Vec::new();
    for class in 0..m.classes().len() {
        let start_singular = m.classes()[class].is_singular();
        for signed in [dir.clone(), -dir] {
            let corners = m.classes()[class].corners.len();
            for rank in 0..corners {
                let (f, i) = m.classes()[class].corners[rank];
                if !super::walk::sector_contains_closed(m, f, i, &signed) {
                    continue;
                }
                // boundary directions are claimed by two sectors; let the
                // half-open owner trace to avoid duplicates
                let (u_out, u_prev) = m.corner_sector(f, i);
                if !crate::surface::sector_contains_half_open(&u_out, &u_prev, &signed) {
                    continue;
                }
                let mut walker = match Walker::from_corner(m, class, rank, signed.clone()) {
                    Ok(w) => w,
                    Err(_) => continue,
                };
                let mut end: Option<usize> = None;
                loop {
                    match walker.step() {
                        Err(_) => break,
                        Ok(true) => {
                            if let Some(TrailPiece::PassVertex { class: c, .. }) =
                                walker.trail.last()
                            {
                                end = Some(*c);
                                break;
                            }
                            if norm_sq(&walker.dev_pos()) > *budget {
                                break;
                            }
                        }
                        Ok(false) => {
                            if let Some(WalkStop::VertexHit { class: c, .. }) =
                                walker.stop_reason()
                            {
                                end = Some(*c);
                            }
                            break;
                        }
                    }
                }
                match end {
                    None => return Err(class),
                    Some(end_class) => {
                        let holonomy = walker.dev_pos();
                        traces.push(ProngTrace {
                            start_class: class,
                            end_class,
                            trail: walker.trail,
                            holonomy,
                            singular: start_singular || m.classes()[end_class].is_singular(),
                        });
                    }
                }
            }
        }
    }
    Ok(traces)
}

/// Union-find over the regular-leaf graph: a component is interior when none
/// of its traces touches a singular class.
struct LeafComponents {
    parent: Vec<usize>,
    interior: Vec<bool>,
}

impl LeafComponents {
    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let keep = self.interior[ra] && self.interior[rb];
            self.parent[ra] = rb;
            self.interior[rb] = keep;
        }
    }

    fn build(m: &Surface, traces: &[ProngTrace]) -> LeafComponents {
        let n = m.classes().len();
        let mut lc = LeafComponents {
            parent: (0..n).collect(),
            interior: (0..n).map(|c| !m.classes()[c].is_singular()).collect(),
        };
        for t in traces {
            lc.union(t.start_class, t.end_class);
            if t.singular {
                let r = lc.find(t.start_class);
                lc.interior[r] = false;
            }
        }
        lc
    }

    fn class_interior(&mut self, class: usize) -> bool {
        let r = self.find(class);
        self.interior[r]
    }
}

pub fn cylinder_decomposition(m: &Surface, dir: &Vec2) -> Result<CylinderVerdict> {
    if dir.is_zero() {
        return Err(Error::ZeroDirection);
    }
    let dir = Vec2::new(dir.x.with_field(m.field())?, dir.y.with_field(m.field())?);
    let mut budget = m.area() * Scalar::from_int(4);
    let max_doublings = 14;
    for round in 0..=max_doublings {
        match trace_leaves(m, &dir, &budget) {
            Err(prong_class) => {
                if round == max_doublings {
                    return Ok(CylinderVerdict::Undecided {
                        prong_class,
                        explored_len_sq: budget,
                    });
                }
                budget = budget * Scalar::from_int(4);
            }
            Ok(traces) => return assemble(m, &dir, traces).map(CylinderVerdict::Complete),
        }
    }
    unreachable!()
}

/// Key a crossing parameter exactly.
type Cut = (usize, usize); // (edge slot, index into its sorted params)

fn assemble(m: &Surface, dir: &Vec2, traces: Vec<ProngTrace>) -> Result<Vec<Cylinder>> {
    // transversal canonical edges
    let mut edges: Vec<EdgeRef> = Vec::new();
    for (e1, _) in m.gluing_pairs() {
        if !cross(&m.edge_vector(e1), dir).is_zero() {
            edges.push(e1);
        }
    }
    if edges.is_empty() {
        return Err(Error::BadParams(
            "no transversal edges; the surface degenerates in this direction".into(),
        ));
    }
    let slot_of = |e: EdgeRef| edges.iter().position(|&x| x == e);

    // cut parameters per edge, tagged singular when a singular leaf crosses
    let mut params: Vec<Vec<Scalar>> = vec![Vec::new(); edges.len()];
    let mut singular_cut: Vec<Vec<bool>> = vec![Vec::new(); edges.len()];
    let mut add_cut = |slot: usize,
                       t: Scalar,
                       singular: bool,
                       params: &mut Vec<Vec<Scalar>>,
                       singular_cut: &mut Vec<Vec<bool>>| {
        match params[slot].iter().position(|p| *p == t) {
            Some(i) => singular_cut[slot][i] = singular_cut[slot][i] || singular,
            None => {
                params[slot].push(t);
                singular_cut[slot].push(singular);
            }
        }
    };
    for tr in &traces {
        for piece in &tr.trail {
            if let TrailPiece::Cross { edge, t, .. } = piece {
                if let Some(slot) = slot_of(*edge) {
                    add_cut(slot, t.clone(), tr.singular, &mut params, &mut singular_cut);
                }
            }
        }
    }
    // edge endpoints are vertex cuts
    for slot in 0..edges.len() {
        add_cut(slot, Scalar::zero(), false, &mut params, &mut singular_cut);
        add_cut(slot, Scalar::one(), false, &mut params, &mut singular_cut);
        let mut order: Vec<usize> = (0..params[slot].len()).collect();
        order.sort_by(|&a, &b| params[slot][a].cmp(&params[slot][b]));
        params[slot] = order.iter().map(|&i| params[slot][i].clone()).collect();
        singular_cut[slot] = order.iter().map(|&i| singular_cut[slot][i]).collect();
    }

    // interval ids
    let mut interval_base = vec![0usize; edges.len() + 1];
    for slot in 0..edges.len() {
        interval_base[slot + 1] = interval_base[slot] + params[slot].len() - 1;
    }
    let total = interval_base[edges.len()];
    let two = Scalar::from_int(2);
    let dir_norm = norm_sq(dir);

    // one-face flow: interval midpoint forward to the next edge
    let mut successor = vec![usize::MAX; total];
    let mut drift = vec![Scalar::zero(); total];
    let mut width = vec![Scalar::zero(); total];
    for slot in 0..edges.len() {
        let e = edges[slot];
        let ev = m.edge_vector(e);
        let enters_own = cross(&ev, dir).is_positive();
        for i in 0..params[slot].len() - 1 {
            let id = interval_base[slot] + i;
            let tm = (&params[slot][i] + &params[slot][i + 1]) / &two;
            let a = &m.face(e.face)[e.edge];
            let p_canon = a + &ev.scale(&tm);
            let (face, pos) = if enters_own {
                (e.face, p_canon)
            } else {
                let partner = m.partner(e);
                (partner.face, &p_canon + m.gluing_translation(e))
            };
            let mut w = Walker::new(m, &m.point(face, pos)?, dir.clone())
                .map_err(|_| Error::BadParams("flow midpoint failed to start".into()))?;
            let advanced = w.step()?;
            if !advanced {
                return Err(Error::BadParams("flow hit a vertex inside an interval".into()));
            }
            let Some(TrailPiece::Cross { edge: e2, t: t2, .. }) = w.trail.last() else {
                return Err(Error::BadParams("flow passed a vertex inside an interval".into()));
            };
            let slot2 = slot_of(*e2)
                .ok_or_else(|| Error::BadParams("flow crossed a parallel edge".into()))?;
            let idx2 = params[slot2]
                .windows(2)
                .position(|wnd| wnd[0] < *t2 && *t2 < wnd[1])
                .ok_or_else(|| Error::BadParams("flow exit lands on a cut".into()))?;
            successor[id] = interval_base[slot2] + idx2;
            drift[id] = dot(&w.dev_pos(), dir) / &dir_norm;
            let ivec = ev.scale(&(&params[slot][i + 1] - &params[slot][i]));
            width[id] = cross(dir, &ivec).abs();
        }
    }

    // orbits = strips
    let mut strip_of = vec![usize::MAX; total];
    let mut strips: Vec<(Scalar, Scalar)> = Vec::new(); // (circ factor, width)
    for start in 0..total {
        if strip_of[start] != usize::MAX {
            continue;
        }
        let sid = strips.len();
        let mut t_total = Scalar::zero();
        let mut cur = start;
        loop {
            strip_of[cur] = sid;
            t_total = t_total + &drift[cur];
            cur = successor[cur];
            if cur == start {
                break;
            }
            if strip_of[cur] != usize::MAX {
                return Err(Error::BadParams("flow orbit merged mid-cycle".into()));
            }
        }
        strips.push((t_total, width[start].clone()));
    }

    // merge strips across interior (all-regular) leaves
    let mut leaf_comp = LeafComponents::build(m, &traces);
    let mut merge = UnionFind::new(strips.len());
    for slot in 0..edges.len() {
        let e = edges[slot];
        let k = params[slot].len();
        for i in 0..k {
            let below = if i > 0 {
                Some(strip_of[interval_base[slot] + i - 1])
            } else {
                None
            };
            let above = if i + 1 < k {
                Some(strip_of[interval_base[slot] + i])
            } else {
                None
            };
            let mergeable = if i == 0 || i == k - 1 {
                // endpoint: the leaf passes through the edge-end vertex
                let corner = if i == 0 { e.edge } else { (e.edge + 1) % m.face(e.face).len() };
                let class = m.class_of_corner(e.face, corner);
                !m.classes()[class].is_singular() && leaf_comp.class_interior(class)
            } else {
                !singular_cut[slot][i] && {
                    // the interior cut belongs to the leaf of whichever trace
                    // crossed here; singular flags were accumulated above, so
                    // a regular cut is mergeable iff its leaf component is
                    regular_cut_interior(&traces, &mut leaf_comp, e, &params[slot][i])
                }
            };
            if mergeable {
                if let (Some(a), Some(b)) = (below, above) {
                    merge.union(a, b);
                }
            }
        }
    }

    // endpoint merges across the vertex need the intervals that flank the
    // leaf on the far side of the vertex; gluing the strips that touch the
    // same interior vertex class achieves exactly that.
    let mut vertex_strips: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for slot in 0..edges.len() {
        let e = edges[slot];
        let k = params[slot].len();
        for (i, corner_at) in [(0usize, e.edge), (k - 1, (e.edge + 1) % m.face(e.face).len())] {
            let class = m.class_of_corner(e.face, corner_at);
            if m.classes()[class].is_singular() || !leaf_comp.class_interior(class) {
                continue;
            }
            let touching = if i == 0 {
                interval_base[slot]
            } else {
                interval_base[slot] + k - 2
            };
            vertex_strips.entry(class).or_default().push(strip_of[touching]);
        }
    }
    for (_, group) in vertex_strips {
        for w in group.windows(2) {
            merge.union(w[0], w[1]);
        }
    }

    // accumulate circumference and height per merged cylinder
    let mut by_root: BTreeMap<usize, (Scalar, Scalar)> = BTreeMap::new();
    for sid in 0..strips.len() {
        let root = merge.find(sid);
        let (t, w) = &strips[sid];
        match by_root.get_mut(&root) {
            None => {
                by_root.insert(root, (t.clone(), w.clone()));
            }
            Some((t0, w0)) => {
                if t0 != t {
                    return Err(Error::BadParams(
                        "merged strips disagree on circumference".into(),
                    ));
                }
                *w0 = &*w0 + w;
            }
        }
    }

    // per-cylinder boundary: singular traces adjacent to the member strips
    let saddle_traces: Vec<usize> = (0..traces.len())
        .filter(|&i| {
            m.classes()[traces[i].start_class].is_singular()
                && m.classes()[traces[i].end_class].is_singular()
        })
        .collect();
    let mut boundary_ids: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for slot in 0..edges.len() {
        let e = edges[slot];
        let k = params[slot].len();
        for i in 0..k {
            let neighbors = [
                (i > 0).then(|| strip_of[interval_base[slot] + i - 1]),
                (i + 1 < k).then(|| strip_of[interval_base[slot] + i]),
            ];
            let touching: Vec<usize> = if i == 0 || i == k - 1 {
                let corner = if i == 0 { e.edge } else { (e.edge + 1) % m.face(e.face).len() };
                let class = m.class_of_corner(e.face, corner);
                if !m.classes()[class].is_singular() {
                    continue;
                }
                saddle_traces
                    .iter()
                    .copied()
                    .filter(|&ti| {
                        traces[ti].start_class == class || traces[ti].end_class == class
                    })
                    .collect()
            } else {
                if !singular_cut[slot][i] {
                    continue;
                }
                saddle_traces
                    .iter()
                    .copied()
                    .filter(|&ti| {
                        traces[ti].trail.iter().any(|p| {
                            matches!(p, TrailPiece::Cross { edge, t, .. }
                                if *edge == e && t == &params[slot][i])
                        })
                    })
                    .collect()
            };
            for strip in neighbors.into_iter().flatten() {
                let root = merge.find(strip);
                boundary_ids.entry(root).or_default().extend(touching.iter().copied());
            }
        }
    }
    let segment_of = |ti: usize| -> Segment {
        let tr = &traces[ti];
        Segment {
            start: m.vertex_point(tr.start_class),
            end: m.vertex_point(tr.end_class),
            holonomy: tr.holonomy.clone(),
            length_sq: norm_sq(&tr.holonomy),
            trail: tr.trail.clone(),
        }
    };

    let mut cylinders: Vec<Cylinder> = by_root
        .into_iter()
        .map(|(root, (t, w))| {
            let t = t.abs();
            let mut boundary: Vec<Segment> = boundary_ids
                .get(&root)
                .map(|ids| ids.iter().map(|&ti| segment_of(ti)).collect())
                .unwrap_or_default();
            boundary.sort_by(|a, b| a.cmp_canonical(b));
            boundary.dedup_by(|a, b| a.trail == b.trail);
            Cylinder {
                direction: dir.clone(),
                circumference_sq: &t * &t * &dir_norm,
                circumference_factor: t,
                height_sq: (&w * &w).checked_div(&dir_norm).expect("direction is nonzero"),
                boundary,
            }
        })
        .collect();
    cylinders.sort_by(|a, b| {
        a.circumference_sq
            .cmp(&b.circumference_sq)
            .then_with(|| a.height_sq.cmp(&b.height_sq))
    });

    // conservation: total cylinder area equals the surface area
    let mut area = Scalar::zero();
    for c in &cylinders {
        let a2 = &c.circumference_sq * &c.height_sq;
        let a = a2.sqrt_in(m.field()).ok_or_else(|| {
            Error::BadParams("cylinder area is not representable in the field".into())
        })?;
        area = area + a;
    }
    if &area != m.area() {
        return Err(Error::BadParams(format!(
            "cylinder areas sum to {area}, expected {}",
            m.area()
        )));
    }
    Ok(cylinders)
}

fn regular_cut_interior(
    traces: &[ProngTrace],
    leaf_comp: &mut LeafComponents,
    e: EdgeRef,
    t: &Scalar,
) -> bool {
    for tr in traces {
        if tr.singular {
            continue;
        }
        for piece in &tr.trail {
            if let TrailPiece::Cross { edge, t: tc, .. } = piece {
                if *edge == e && tc == t {
                    return leaf_comp.class_interior(tr.start_class);
                }
            }
        }
    }
    false
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, x: usize) -> usize {
        if self.parent[x] != x {
            let r = self.find(self.parent[x]);
            self.parent[x] = r;
        }
        self.parent[x]
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// Pure periodicity in one direction: complete decomposition with pairwise
/// rational circumference ratios.
pub fn purely_periodic_in_direction(m: &Surface, dir: &Vec2) -> Result<Periodicity> {
    match cylinder_decomposition(m, dir)? {
        CylinderVerdict::Undecided { prong_class, explored_len_sq } => Ok(Periodicity::Undecided {
            prong_class,
            explored_len_sq,
        }),
        CylinderVerdict::Complete(cyls) => {
            let mut ratios = Vec::new();
            for i in 0..cyls.len() {
                for j in i + 1..cyls.len() {
                    let ratio = cyls[i]
                        .circumference_factor
                        .checked_div(&cyls[j].circumference_factor)?;
                    if !ratio.is_rational() {
                        return Ok(Periodicity::No { pair: (i, j), ratio });
                    }
                    ratios.push((i, j, ratio));
                }
            }
            Ok(Periodicity::Yes { ratios })
        }
    }
}
