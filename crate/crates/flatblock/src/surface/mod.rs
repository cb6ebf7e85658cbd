//! Translation surfaces as glued convex polygons.
//!
//! A surface is a list of strictly convex counterclockwise faces over a fixed
//! quadratic field, plus an involution on directed edges that glues each edge
//! to a partner with the exactly opposite vector. Vertex classes, cone
//! multiplicities, genus and area are derived at construction and the
//! Gauss-Bonnet relation is checked before a `Surface` is handed out.

mod builtins;
mod cover;
mod format;
mod origami;
mod unfold;

pub use builtins::{builtin, builtin_names};
pub use cover::{branched_cover_grid, full_ramification_shifts, CoverData, GridEdge};
pub use format::{parse_surface, serialize_surface};
pub use origami::origami;
pub use unfold::{unfold_billiard, RationalPolygon, Unfolding};

use crate::error::{Error, Result};
use crate::exactnum::{cross, dot, norm_sq, same_direction, Mat2, Scalar, Vec2};
use std::collections::VecDeque;

/// Directed edge id: side `edge` of face `face`, running from vertex `edge`
/// to vertex `edge + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeRef {
    pub face: usize,
    pub edge: usize,
}

impl EdgeRef {
    pub fn new(face: usize, edge: usize) -> EdgeRef {
        EdgeRef { face, edge }
    }
}

/// A surface vertex: the cycle of face corners identified by the gluings.
#[derive(Clone, Debug)]
pub struct VertexClass {
    /// Corner cycle in counterclockwise order, as (face, corner) pairs.
    pub corners: Vec<(usize, usize)>,
    /// Cone angle is 2 pi * multiplicity.
    pub multiplicity: usize,
    pub marked: bool,
}

impl VertexClass {
    /// Singular vertices terminate trajectories.
    pub fn is_singular(&self) -> bool {
        self.multiplicity > 1 || self.marked
    }
}

#[derive(Clone, Debug)]
pub struct Surface {
    d: u64,
    faces: Vec<Vec<Vec2>>,
    partner: Vec<Vec<EdgeRef>>,
    translations: Vec<Vec<Vec2>>,
    classes: Vec<VertexClass>,
    corner_class: Vec<Vec<usize>>,
    genus: usize,
    area: Scalar,
    cover: Option<CoverData>,
    name: Option<String>,
}

impl Surface {
    pub fn field(&self) -> u64 {
        self.d
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, f: usize) -> &[Vec2] {
        &self.faces[f]
    }

    pub fn vertex(&self, f: usize, i: usize) -> &Vec2 {
        let n = self.faces[f].len();
        &self.faces[f][i % n]
    }

    pub fn edge_vector(&self, e: EdgeRef) -> Vec2 {
        self.vertex(e.face, e.edge + 1) - self.vertex(e.face, e.edge)
    }

    pub fn partner(&self, e: EdgeRef) -> EdgeRef {
        self.partner[e.face][e.edge]
    }

    /// Translation applied to face coordinates when crossing edge `e`.
    pub fn gluing_translation(&self, e: EdgeRef) -> &Vec2 {
        &self.translations[e.face][e.edge]
    }

    /// The canonical representative of a glued edge pair (the smaller id).
    pub fn canonical_edge(&self, e: EdgeRef) -> EdgeRef {
        e.min(self.partner(e))
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    pub fn class_of_corner(&self, f: usize, corner: usize) -> usize {
        self.corner_class[f][corner]
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn area(&self) -> &Scalar {
        &self.area
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: &str) -> Surface {
        self.name = Some(name.to_string());
        self
    }

    pub fn cover(&self) -> Option<&CoverData> {
        self.cover.as_ref()
    }

    pub(crate) fn set_cover(&mut self, cover: CoverData) {
        self.cover = Some(cover);
    }

    pub fn singular_classes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.classes.len()).filter(|&c| self.classes[c].is_singular())
    }

    pub fn has_singularities(&self) -> bool {
        self.singular_classes().next().is_some()
    }

    /// Outgoing corner sector at corner (f, i): directions from the vertex
    /// towards the next vertex (`u_out`, inclusive) counterclockwise to the
    /// previous vertex (`u_prev`, exclusive). Strict convexity keeps the
    /// sector angle below pi, and the sectors of a vertex class tile the
    /// full cone angle.
    pub fn corner_sector(&self, f: usize, i: usize) -> (Vec2, Vec2) {
        let n = self.faces[f].len();
        let v = &self.faces[f][i];
        let u_out = self.vertex(f, i + 1) - v;
        let u_prev = &self.faces[f][(i + n - 1) % n] - v;
        (u_out, u_prev)
    }

    /// Next corner counterclockwise around the vertex class of (f, i).
    pub fn next_corner_ccw(&self, f: usize, i: usize) -> (usize, usize) {
        let n = self.faces[f].len();
        let incoming = EdgeRef::new(f, (i + n - 1) % n);
        let p = self.partner(incoming);
        (p.face, p.edge)
    }

    /// Where `pos` sits in the closed face polygon `f`.
    pub fn locate_in_face(&self, f: usize, pos: &Vec2) -> FaceLocation {
        let verts = &self.faces[f];
        let n = verts.len();
        for (i, v) in verts.iter().enumerate() {
            if v == pos {
                return FaceLocation::AtVertex(i);
            }
            let next = &verts[(i + 1) % n];
            let ev = next - v;
            let w = pos - v;
            if cross(&ev, &w).is_zero() {
                let t_num = dot(&ev, &w);
                let t_den = norm_sq(&ev);
                if t_num.is_positive() && t_num < t_den {
                    return FaceLocation::OnEdge(i, t_num / t_den);
                }
            }
        }
        for (i, v) in verts.iter().enumerate() {
            let next = &verts[(i + 1) % n];
            let ev = next - v;
            if !cross(&ev, &(pos - v)).is_positive() {
                return FaceLocation::Outside;
            }
            let _ = i;
        }
        FaceLocation::Interior
    }

    /// Canonical surface point at `pos` in face `f`.
    ///
    /// Edge points are stored on the smaller edge of the glued pair and
    /// vertex points collapse to their class, represented by the class's
    /// first corner. This makes point equality plain structural equality.
    pub fn point(&self, f: usize, pos: Vec2) -> Result<SurfacePoint> {
        if f >= self.faces.len() {
            return Err(Error::BadParams(format!("face {f} out of range")));
        }
        for c in [&pos.x, &pos.y] {
            c.with_field(self.d)?;
        }
        match self.locate_in_face(f, &pos) {
            FaceLocation::Outside => Err(Error::BadParams(format!(
                "point {pos} lies outside face {f}"
            ))),
            FaceLocation::Interior => Ok(SurfacePoint {
                face: f,
                pos,
                kind: PointKind::Interior,
            }),
            FaceLocation::AtVertex(i) => Ok(self.vertex_point(self.corner_class[f][i])),
            FaceLocation::OnEdge(e, _) => {
                let here = EdgeRef::new(f, e);
                let partner = self.partner(here);
                if here <= partner {
                    Ok(SurfacePoint {
                        face: f,
                        pos,
                        kind: PointKind::Edge { edge: e },
                    })
                } else {
                    let moved = &pos + self.gluing_translation(here);
                    Ok(SurfacePoint {
                        face: partner.face,
                        pos: moved,
                        kind: PointKind::Edge { edge: partner.edge },
                    })
                }
            }
        }
    }

    /// The canonical point of a vertex class.
    pub fn vertex_point(&self, class: usize) -> SurfacePoint {
        let (f, i) = self.classes[class].corners[0];
        SurfacePoint {
            face: f,
            pos: self.faces[f][i].clone(),
            kind: PointKind::Vertex { class },
        }
    }

    /// All chart representations of a canonical point, as (face, pos) pairs.
    pub fn representations(&self, p: &SurfacePoint) -> Vec<(usize, Vec2)> {
        match p.kind {
            PointKind::Interior => vec![(p.face, p.pos.clone())],
            PointKind::Edge { edge } => {
                let here = EdgeRef::new(p.face, edge);
                let partner = self.partner(here);
                let moved = &p.pos + self.gluing_translation(here);
                vec![(p.face, p.pos.clone()), (partner.face, moved)]
            }
            PointKind::Vertex { class } => self.classes[class]
                .corners
                .iter()
                .map(|&(f, i)| (f, self.faces[f][i].clone()))
                .collect(),
        }
    }

    /// Apply g in GL+(2) by postcomposition of all charts.
    pub fn gl2_act(&self, g: &Mat2) -> Result<Surface> {
        if !g.det().is_positive() {
            return Err(Error::NonPositiveDeterminant);
        }
        let faces: Vec<Vec<Vec2>> = self
            .faces
            .iter()
            .map(|f| f.iter().map(|v| g.apply(v)).collect())
            .collect();
        for face in &faces {
            for v in face {
                v.x.with_field(self.d)?;
                v.y.with_field(self.d)?;
            }
        }
        let gluings = self.gluing_pairs();
        let marked = self.marked_corner_reps();
        let mut out = build_surface(self.d, faces, &gluings, &marked)?;
        if let Some(c) = &self.cover {
            out.set_cover(c.transformed(g));
        }
        Ok(out)
    }

    /// Gluing pairs with each undirected pair listed once, sorted.
    pub fn gluing_pairs(&self) -> Vec<(EdgeRef, EdgeRef)> {
        let mut out = Vec::new();
        for f in 0..self.faces.len() {
            for e in 0..self.faces[f].len() {
                let here = EdgeRef::new(f, e);
                let p = self.partner(here);
                if here < p {
                    out.push((here, p));
                }
            }
        }
        out
    }

    pub fn marked_corner_reps(&self) -> Vec<(usize, usize)> {
        self.classes
            .iter()
            .filter(|c| c.marked)
            .map(|c| c.corners[0])
            .collect()
    }

    /// Total squared diameter bound of a face, used for search pruning.
    pub(crate) fn face_contains(&self, f: usize, pos: &Vec2) -> bool {
        !matches!(self.locate_in_face(f, pos), FaceLocation::Outside)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FaceLocation {
    Interior,
    /// On the open edge `i` at parameter in (0,1).
    OnEdge(usize, Scalar),
    AtVertex(usize),
    Outside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    Interior,
    Edge { edge: usize },
    Vertex { class: usize },
}

/// A point on a surface in canonical form; see [`Surface::point`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SurfacePoint {
    face: usize,
    pos: Vec2,
    kind: PointKind,
}

impl SurfacePoint {
    pub fn face(&self) -> usize {
        self.face
    }

    pub fn pos(&self) -> &Vec2 {
        &self.pos
    }

    pub fn kind(&self) -> &PointKind {
        &self.kind
    }

    pub fn vertex_class(&self) -> Option<usize> {
        match self.kind {
            PointKind::Vertex { class } => Some(class),
            _ => None,
        }
    }

    pub fn is_vertex(&self) -> bool {
        matches!(self.kind, PointKind::Vertex { .. })
    }
}

impl std::fmt::Display for SurfacePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.kind {
            PointKind::Vertex { class } => write!(f, "vertex:{class}"),
            _ => write!(f, "{}:{}", self.face, self.pos),
        }
    }
}

/// Validate raw faces and gluings and derive the surface structure.
///
/// `gluings` lists each undirected pair once; `marked` holds (face, corner)
/// representatives of 2 pi vertex classes that should block trajectories.
pub fn build_surface(
    d: u64,
    faces: Vec<Vec<Vec2>>,
    gluings: &[(EdgeRef, EdgeRef)],
    marked: &[(usize, usize)],
) -> Result<Surface> {
    if faces.is_empty() {
        return Err(Error::BadParams("surface needs at least one face".into()));
    }
    if !crate::exactnum::is_square_free(d) {
        return Err(Error::BadParams(format!("field {d} is not square-free positive")));
    }
    let mut area = Scalar::zero();
    for (f, verts) in faces.iter().enumerate() {
        if verts.len() < 3 {
            return Err(Error::NonConvexFace(f));
        }
        let n = verts.len();
        for v in verts {
            if v.x.with_field(d).is_err() || v.y.with_field(d).is_err() {
                return Err(Error::FieldMismatch(
                    if v.x.with_field(d).is_err() { v.x.field() } else { v.y.field() },
                    d,
                ));
            }
        }
        let mut twice_area = Scalar::zero();
        for i in 0..n {
            let a = &verts[i];
            let b = &verts[(i + 1) % n];
            let c = &verts[(i + 2) % n];
            if !cross(&(b - a), &(c - b)).is_positive() {
                return Err(Error::NonConvexFace(f));
            }
            twice_area = twice_area + cross(a, b);
        }
        area = area + twice_area / Scalar::from_int(2);
    }

    // Gluing involution with opposite edge vectors.
    let mut partner: Vec<Vec<Option<EdgeRef>>> =
        faces.iter().map(|f| vec![None; f.len()]).collect();
    for &(e1, e2) in gluings {
        for e in [e1, e2] {
            if e.face >= faces.len() || e.edge >= faces[e.face].len() {
                return Err(Error::BadGluing(format!(
                    "edge ({}.{}) does not exist",
                    e.face, e.edge
                )));
            }
        }
        if e1 == e2 {
            return Err(Error::BadGluing(format!(
                "edge ({}.{}) glued to itself",
                e1.face, e1.edge
            )));
        }
        for (a, b) in [(e1, e2), (e2, e1)] {
            if partner[a.face][a.edge].replace(b).is_some() {
                return Err(Error::BadGluing(format!(
                    "edge ({}.{}) glued twice",
                    a.face, a.edge
                )));
            }
        }
    }
    let mut partner_full = Vec::with_capacity(faces.len());
    for (f, row) in partner.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for (e, p) in row.iter().enumerate() {
            match p {
                Some(p) => out.push(*p),
                None => {
                    return Err(Error::BadGluing(format!("edge ({f}.{e}) is unglued")));
                }
            }
        }
        partner_full.push(out);
    }

    let edge_vec = |e: EdgeRef| -> Vec2 {
        let n = faces[e.face].len();
        &faces[e.face][(e.edge + 1) % n] - &faces[e.face][e.edge]
    };
    let mut translations: Vec<Vec<Vec2>> = faces.iter().map(|f| vec![Vec2::zero(); f.len()]).collect();
    for f in 0..faces.len() {
        for e in 0..faces[f].len() {
            let here = EdgeRef::new(f, e);
            let p = partner_full[f][e];
            let v1 = edge_vec(here);
            let v2 = edge_vec(p);
            if !(&v1 + &v2).is_zero() {
                return Err(Error::NonParallelGluing(f, e, p.face, p.edge));
            }
            // crossing edge (f,e): A maps onto the far end of the partner edge
            let n2 = faces[p.face].len();
            translations[f][e] = &faces[p.face][(p.edge + 1) % n2] - &faces[f][e];
        }
    }

    // Connectivity over the face adjacency graph.
    let mut seen = vec![false; faces.len()];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(f) = queue.pop_front() {
        for e in 0..faces[f].len() {
            let p = partner_full[f][e];
            if !seen[p.face] {
                seen[p.face] = true;
                queue.push_back(p.face);
            }
        }
    }
    if !seen.iter().all(|&s| s) {
        return Err(Error::Disconnected);
    }

    // Vertex classes: walk corner cycles, counting windings past +x.
    let mut corner_class: Vec<Vec<usize>> = faces.iter().map(|f| vec![usize::MAX; f.len()]).collect();
    let mut classes: Vec<VertexClass> = Vec::new();
    let x_axis = Vec2::from_ints(1, 0);
    for f0 in 0..faces.len() {
        for i0 in 0..faces[f0].len() {
            if corner_class[f0][i0] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut corners = Vec::new();
            let mut multiplicity = 0usize;
            let (mut f, mut i) = (f0, i0);
            loop {
                corner_class[f][i] = id;
                corners.push((f, i));
                let n = faces[f].len();
                let v = &faces[f][i];
                let u_out = &faces[f][(i + 1) % n] - v;
                let u_prev = &faces[f][(i + n - 1) % n] - v;
                if sector_contains_half_open(&u_out, &u_prev, &x_axis) {
                    multiplicity += 1;
                }
                let incoming = EdgeRef::new(f, (i + n - 1) % n);
                let p = partner_full[f][incoming.edge];
                (f, i) = (p.face, p.edge);
                if (f, i) == (f0, i0) {
                    break;
                }
            }
            if multiplicity == 0 {
                return Err(Error::BadGluing(format!(
                    "corner cycle at face {f0} corner {i0} has zero total angle"
                )));
            }
            classes.push(VertexClass {
                corners,
                multiplicity,
                marked: false,
            });
        }
    }

    for &(f, i) in marked {
        if f >= faces.len() || i >= faces[f].len() {
            return Err(Error::BadParams(format!("marked corner ({f},{i}) does not exist")));
        }
        classes[corner_class[f][i]].marked = true;
    }

    // Euler characteristic and Gauss-Bonnet.
    let v = classes.len() as i64;
    let e: i64 = faces.iter().map(|f| f.len() as i64).sum::<i64>() / 2;
    let fc = faces.len() as i64;
    let chi = v - e + fc;
    if chi > 0 || chi % 2 != 0 {
        return Err(Error::BadGluing(format!("Euler characteristic {chi} is not that of a closed translation surface")));
    }
    let genus = ((2 - chi) / 2) as usize;
    let excess: i64 = classes.iter().map(|c| c.multiplicity as i64 - 1).sum();
    if excess != 2 * genus as i64 - 2 {
        return Err(Error::BadGluing(format!(
            "cone angles are inconsistent: sum(k-1) = {excess}, expected {}",
            2 * genus as i64 - 2
        )));
    }
    if !area.is_positive() {
        return Err(Error::BadParams("surface area is not positive".into()));
    }

    Ok(Surface {
        d,
        faces,
        partner: partner_full,
        translations,
        classes,
        corner_class,
        genus,
        area,
        cover: None,
        name: None,
    })
}

/// Is `w` in the half-open sector from `lo` (inclusive) counterclockwise to
/// `hi` (exclusive)? Sector angle must be in (0, pi).
pub fn sector_contains_half_open(lo: &Vec2, hi: &Vec2, w: &Vec2) -> bool {
    let cl = cross(lo, w);
    let on_lo = cl.is_zero() && dot(lo, w).is_positive();
    (cl.is_positive() || on_lo) && cross(w, hi).is_positive()
}

/// Cut an axis-aligned rectilinear outline into grid-cell faces.
///
/// Convenience for entering L-shapes and other rectilinear polygons as the
/// several convex faces the builder requires. Returns the cells only; gluings
/// are up to the caller.
pub fn rectilinear_cells(outline: &[Vec2]) -> Result<Vec<Vec<Vec2>>> {
    let mut xs: Vec<Scalar> = outline.iter().map(|v| v.x.clone()).collect();
    let mut ys: Vec<Scalar> = outline.iter().map(|v| v.y.clone()).collect();
    xs.sort();
    xs.dedup();
    ys.sort();
    ys.dedup();
    let n = outline.len();
    for i in 0..n {
        let e = &outline[(i + 1) % n] - &outline[i];
        if !e.x.is_zero() && !e.y.is_zero() {
            return Err(Error::BadParams("outline is not axis-aligned".into()));
        }
    }
    // A cell belongs to the polygon iff its center is inside (ray parity).
    let inside = |p: &Vec2| -> bool {
        let mut parity = false;
        for i in 0..n {
            let a = &outline[i];
            let b = &outline[(i + 1) % n];
            if a.x == b.x {
                let (ylo, yhi) = if a.y < b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
                if a.x > p.x && &p.y >= ylo && &p.y < yhi {
                    parity = !parity;
                }
            }
        }
        parity
    };
    let mut cells = Vec::new();
    let two = Scalar::from_int(2);
    for xi in 0..xs.len().saturating_sub(1) {
        for yi in 0..ys.len().saturating_sub(1) {
            let cx = (&xs[xi] + &xs[xi + 1]) / &two;
            let cy = (&ys[yi] + &ys[yi + 1]) / &two;
            if inside(&Vec2::new(cx, cy)) {
                cells.push(vec![
                    Vec2::new(xs[xi].clone(), ys[yi].clone()),
                    Vec2::new(xs[xi + 1].clone(), ys[yi].clone()),
                    Vec2::new(xs[xi + 1].clone(), ys[yi + 1].clone()),
                    Vec2::new(xs[xi].clone(), ys[yi + 1].clone()),
                ]);
            }
        }
    }
    Ok(cells)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    #[test]
    fn torus_builds() {
        let t = builtin("torus", &[]).unwrap();
        assert_eq!(t.genus(), 1);
        assert_eq!(t.area(), &Scalar::one());
        assert_eq!(t.classes().len(), 1);
        assert_eq!(t.classes()[0].multiplicity, 1);
        assert!(!t.classes()[0].is_singular());
    }

    #[test]
    fn l_shaped_is_h2() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        assert_eq!(l.genus(), 2);
        assert_eq!(l.area(), &Scalar::from_int(3));
        assert_eq!(l.classes().len(), 1);
        assert_eq!(l.classes()[0].multiplicity, 3);
        assert!(l.classes()[0].is_singular());
    }

    #[test]
    fn bad_gluing_rejected() {
        // square with left glued to top: vectors not opposite
        let faces = vec![vec![
            Vec2::from_ints(0, 0),
            Vec2::from_ints(1, 0),
            Vec2::from_ints(1, 1),
            Vec2::from_ints(0, 1),
        ]];
        let gluings = [
            (EdgeRef::new(0, 0), EdgeRef::new(0, 1)),
            (EdgeRef::new(0, 2), EdgeRef::new(0, 3)),
        ];
        assert!(matches!(
            build_surface(1, faces, &gluings, &[]),
            Err(Error::NonParallelGluing(..))
        ));
    }

    #[test]
    fn point_canonicalization() {
        let t = builtin("torus", &[]).unwrap();
        // edge point: bottom edge is canonical for the bottom/top pair
        let p = t
            .point(0, Vec2::from_rats(rat(1, 2), rat(0, 1)))
            .unwrap();
        let q = t
            .point(0, Vec2::from_rats(rat(1, 2), rat(1, 1)))
            .unwrap();
        assert_eq!(p, q);
        assert!(matches!(p.kind(), PointKind::Edge { .. }));
        // all four corners are the single vertex class
        let a = t.point(0, Vec2::from_ints(0, 0)).unwrap();
        let b = t.point(0, Vec2::from_ints(1, 1)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.vertex_class(), Some(0));
        assert!(t.point(0, Vec2::from_ints(2, 2)).is_err());
    }

    #[test]
    fn gl2_action() {
        let t = builtin("torus", &[]).unwrap();
        let g = Mat2::new(
            Scalar::from_int(2),
            Scalar::zero(),
            Scalar::zero(),
            Scalar::from_rational(rat(1, 2)),
        );
        let tg = t.gl2_act(&g).unwrap();
        assert_eq!(tg.area(), &Scalar::one());
        assert_eq!(tg.genus(), 1);
        let singular = Mat2::new(Scalar::one(), Scalar::zero(), Scalar::one(), Scalar::zero());
        assert!(matches!(t.gl2_act(&singular), Err(Error::NonPositiveDeterminant)));
        // group action composition on faces
        let h = Mat2::new(Scalar::one(), Scalar::one(), Scalar::zero(), Scalar::one());
        let lhs = t.gl2_act(&g).unwrap().gl2_act(&h).unwrap();
        let rhs = t.gl2_act(&h.mul(&g)).unwrap();
        assert_eq!(lhs.faces, rhs.faces);
    }

    #[test]
    fn rectilinear_split() {
        let outline = vec![
            Vec2::from_ints(0, 0),
            Vec2::from_ints(2, 0),
            Vec2::from_ints(2, 1),
            Vec2::from_ints(1, 1),
            Vec2::from_ints(1, 2),
            Vec2::from_ints(0, 2),
        ];
        let cells = rectilinear_cells(&outline).unwrap();
        assert_eq!(cells.len(), 3);
    }
}
