//! The exact straight-line walker.
//!
//! A walk advances event by event: transversal edge crossings, passes through
//! regular vertices, rides along edges that are parallel to the direction,
//! and stops at singular or marked vertices. Transition maps are translations,
//! so the direction vector never changes and all tests are sign tests.

use super::{TrailPiece, WalkStop};
use crate::error::{Error, Result};
use crate::exactnum::{cross, dot, norm_sq, Scalar, Vec2};
use crate::surface::{EdgeRef, PointKind, Surface, SurfacePoint};

pub(crate) struct Walker<'a> {
    m: &'a Surface,
    dir: Vec2,
    face: usize,
    pos: Vec2,
    /// developed position = face position + offset
    offset: Vec2,
    pub trail: Vec<TrailPiece>,
    stopped: Option<WalkStop>,
}

enum Contact {
    Edge { edge: usize, point: Vec2, t: Scalar },
    Vertex { corner: usize },
}

impl<'a> Walker<'a> {
    /// Start a walk at a canonical surface point. Vertex starts need the
    /// corner whose (closed) sector contains `dir`; `from_vertex` picks it.
    pub(crate) fn new(m: &'a Surface, start: &SurfacePoint, dir: Vec2) -> Result<Walker<'a>> {
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        match start.kind() {
            PointKind::Vertex { class } => {
                let corner = Self::find_start_corner(m, *class, &dir).ok_or(Error::SectorRequired)?;
                Self::from_corner(m, *class, corner, dir)
            }
            PointKind::Interior => Ok(Self::at(m, start.face(), start.pos().clone(), dir)),
            PointKind::Edge { edge } => {
                let here = EdgeRef::new(start.face(), *edge);
                let ev = m.edge_vector(here);
                if cross(&ev, &dir).is_negative() {
                    // points into the partner chart
                    let p = m.partner(here);
                    let pos = start.pos() + m.gluing_translation(here);
                    Ok(Self::at(m, p.face, pos, dir))
                } else {
                    Ok(Self::at(m, start.face(), start.pos().clone(), dir))
                }
            }
        }
    }

    /// Start from a specific corner of a vertex class (rank into the class's
    /// corner list). Fails if `dir` is outside the corner's closed sector.
    pub(crate) fn from_corner(
        m: &'a Surface,
        class: usize,
        corner_rank: usize,
        dir: Vec2,
    ) -> Result<Walker<'a>> {
        if dir.is_zero() {
            return Err(Error::ZeroDirection);
        }
        let corners = &m.classes()[class].corners;
        let &(f, i) = corners.get(corner_rank).ok_or(Error::SectorRequired)?;
        if !sector_contains_closed(m, f, i, &dir) {
            return Err(Error::SectorRequired);
        }
        Ok(Self::at(m, f, m.face(f)[i].clone(), dir))
    }

    /// The corner of `class` whose closed sector contains `dir`, preferring
    /// the half-open owner so the choice is deterministic.
    pub(crate) fn find_start_corner(m: &Surface, class: usize, dir: &Vec2) -> Option<usize> {
        let corners = &m.classes()[class].corners;
        for (rank, &(f, i)) in corners.iter().enumerate() {
            let (u_out, u_prev) = m.corner_sector(f, i);
            if crate::surface::sector_contains_half_open(&u_out, &u_prev, dir) {
                return Some(rank);
            }
        }
        // dir lies exactly along a sector boundary: accept a closed match
        (0..corners.len()).find(|&rank| {
            let (f, i) = corners[rank];
            sector_contains_closed(m, f, i, dir)
        })
    }

    fn at(m: &'a Surface, face: usize, pos: Vec2, dir: Vec2) -> Walker<'a> {
        // developed frame: the walk starts at the origin
        let offset = -&pos;
        Walker {
            m,
            dir,
            face,
            pos,
            offset,
            trail: Vec::new(),
            stopped: None,
        }
    }

    /// Developed coordinates of the current position (dev = pos + offset).
    pub(crate) fn dev_pos(&self) -> Vec2 {
        &self.pos + &self.offset
    }

    pub(crate) fn face(&self) -> usize {
        self.face
    }

    pub(crate) fn face_pos(&self) -> &Vec2 {
        &self.pos
    }

    pub(crate) fn offset(&self) -> &Vec2 {
        &self.offset
    }

    pub(crate) fn stop_reason(&self) -> Option<&WalkStop> {
        self.stopped.as_ref()
    }

    /// Advance to the next event. Returns false once stopped.
    pub(crate) fn step(&mut self) -> Result<bool> {
        if self.stopped.is_some() {
            return Ok(false);
        }
        let contact = self.next_contact()?;
        match contact {
            Contact::Edge { edge, point, t } => {
                let here = EdgeRef::new(self.face, edge);
                self.push_travel_piece(&point, None);
                let canon = self.m.canonical_edge(here);
                let t_canon = if canon == here { t } else { Scalar::one() - t };
                self.trail.push(TrailPiece::Cross {
                    edge: canon,
                    t: t_canon,
                    at: &point + &self.offset,
                });
                let partner = self.m.partner(here);
                let moved = &point + self.m.gluing_translation(here);
                self.offset = &(&point + &self.offset) - &moved;
                self.face = partner.face;
                self.pos = moved;
                Ok(true)
            }
            Contact::Vertex { corner } => {
                let vpos = self.m.face(self.face)[corner].clone();
                self.push_travel_piece(&vpos, Some(corner));
                let class = self.m.class_of_corner(self.face, corner);
                let dev = &vpos + &self.offset;
                if self.m.classes()[class].is_singular() {
                    self.pos = vpos;
                    self.stopped = Some(WalkStop::VertexHit { class, at: dev });
                    return Ok(false);
                }
                self.trail.push(TrailPiece::PassVertex { class, at: dev.clone() });
                // continue into the unique corner sector containing dir
                let corners = &self.m.classes()[class].corners;
                let next = corners.iter().find(|&&(f, i)| {
                    let (u_out, u_prev) = self.m.corner_sector(f, i);
                    crate::surface::sector_contains_half_open(&u_out, &u_prev, &self.dir)
                });
                let &(f, i) = next.expect("sectors of a regular vertex tile the circle");
                let vnew = self.m.face(f)[i].clone();
                self.offset = &dev - &vnew;
                self.face = f;
                self.pos = vnew;
                Ok(true)
            }
        }
    }

    /// Record the traversal from self.pos to `end` as a face run or a ride.
    fn push_travel_piece(&mut self, end: &Vec2, _end_corner: Option<usize>) {
        let enter = self.dev_pos();
        let exit = end + &self.offset;
        if let Some((edge, t_enter, t_exit)) = self.riding_edge(end) {
            let here = EdgeRef::new(self.face, edge);
            let canon = self.m.canonical_edge(here);
            let (t_enter, t_exit, offset) = if canon == here {
                (t_enter, t_exit, self.offset.clone())
            } else {
                // canonical chart sits across the gluing
                (
                    Scalar::one() - t_enter,
                    Scalar::one() - t_exit,
                    &self.offset - self.m.gluing_translation(here),
                )
            };
            self.trail.push(TrailPiece::Ride {
                edge: canon,
                t_enter,
                t_exit,
                enter,
                exit,
                offset,
            });
        } else {
            self.trail.push(TrailPiece::Face {
                face: self.face,
                enter,
                exit,
                offset: self.offset.clone(),
            });
        }
    }

    /// If the run from self.pos to `end` lies along an edge of the current
    /// face, return (edge, param at start, param at end).
    fn riding_edge(&self, end: &Vec2) -> Option<(usize, Scalar, Scalar)> {
        let verts = self.m.face(self.face);
        let n = verts.len();
        for e in 0..n {
            let a = &verts[e];
            let ev = &verts[(e + 1) % n] - a;
            if cross(&ev, &self.dir).is_zero()
                && cross(&ev, &(&self.pos - a)).is_zero()
                && cross(&ev, &(end - a)).is_zero()
            {
                let den = norm_sq(&ev);
                let t_enter = dot(&ev, &(&self.pos - a)) / &den;
                let t_exit = dot(&ev, &(end - a)) / den;
                return Some((e, t_enter, t_exit));
            }
        }
        None
    }

    /// First boundary contact of the forward ray from self.pos.
    fn next_contact(&self) -> Result<Contact> {
        let verts = self.m.face(self.face);
        let n = verts.len();
        let mut best: Option<(Scalar, Contact)> = None;
        let mut consider = |s: Scalar, c: Contact, best: &mut Option<(Scalar, Contact)>| {
            if !s.is_positive() {
                return;
            }
            match best {
                Some((bs, _)) if &s >= bs => {}
                _ => *best = Some((s, c)),
            }
        };
        let dir_norm = norm_sq(&self.dir);
        let crosses: Vec<Scalar> = verts
            .iter()
            .map(|v| cross(&self.dir, &(v - &self.pos)))
            .collect();
        for i in 0..n {
            let to_v = &verts[i] - &self.pos;
            if crosses[i].is_zero() {
                let d = dot(&self.dir, &to_v);
                if d.is_positive() {
                    consider(d / &dir_norm, Contact::Vertex { corner: i }, &mut best);
                }
            }
            let j = (i + 1) % n;
            if crosses[i].is_negative() && crosses[j].is_positive() {
                let ev = &verts[j] - &verts[i];
                let den = cross(&self.dir, &ev);
                let s = cross(&to_v, &ev) / &den;
                if s.is_positive() {
                    let point = &self.pos + &self.dir.scale(&s);
                    let t = dot(&ev, &(&point - &verts[i])) / norm_sq(&ev);
                    consider(s, Contact::Edge { edge: i, point, t }, &mut best);
                }
            }
        }
        match best {
            Some((_, c)) => Ok(c),
            None => Err(Error::BadParams(
                "ray does not advance into the face; walker started in the wrong chart".into(),
            )),
        }
    }
}

/// Closed-sector membership for vertex starts: dir between u_out and u_prev
/// inclusive, with parallel cases requiring positive dot.
pub(crate) fn sector_contains_closed(m: &Surface, f: usize, i: usize, dir: &Vec2) -> bool {
    let (u_out, u_prev) = m.corner_sector(f, i);
    let lo = cross(&u_out, dir);
    let hi = cross(dir, &u_prev);
    let lo_ok = lo.is_positive() || (lo.is_zero() && dot(&u_out, dir).is_positive());
    let hi_ok = hi.is_positive() || (hi.is_zero() && dot(dir, &u_prev).is_positive());
    lo_ok && hi_ok
}
