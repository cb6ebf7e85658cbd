//! Affine automorphisms of the builtin families: the staircase deck
//! translation and the hyperelliptic involution of L-shaped surfaces, with
//! exact fixed-point sets.
//!
//! Automorphisms are verified, not discovered: each candidate passes a full
//! gluing-compatibility audit before it is returned.

use crate::error::{Error, Result};
use crate::exactnum::{dot, norm_sq, Mat2, Scalar, Vec2};
use crate::surface::{EdgeRef, Surface, SurfacePoint};
use crate::tracer::{segments_between, Segment};

/// An affine automorphism with constant derivative: face f maps onto
/// `face_perm[f]` by p -> D p + t_f.
#[derive(Clone, Debug)]
pub struct AffineAuto {
    pub face_perm: Vec<usize>,
    pub derivative: Mat2,
    pub translations: Vec<Vec2>,
    pub order: usize,
}

impl AffineAuto {
    /// Image of a canonical point, canonicalized.
    pub fn apply(&self, m: &Surface, p: &SurfacePoint) -> Result<SurfacePoint> {
        let f = p.face();
        let q = &self.derivative.apply(p.pos()) + &self.translations[f];
        m.point(self.face_perm[f], q)
    }
}

/// Check that the candidate maps faces onto faces and respects every gluing.
fn audit(m: &Surface, auto: &AffineAuto) -> Result<Vec<Vec<usize>>> {
    let n_faces = m.num_faces();
    if auto.face_perm.len() != n_faces || auto.translations.len() != n_faces {
        return Err(Error::NotApplicable);
    }
    // vertex index shift per face
    let mut shifts = Vec::with_capacity(n_faces);
    for f in 0..n_faces {
        let g = auto.face_perm[f];
        let src = m.face(f);
        let dst = m.face(g);
        if src.len() != dst.len() {
            return Err(Error::NotApplicable);
        }
        let n = src.len();
        let image0 = &auto.derivative.apply(&src[0]) + &auto.translations[f];
        let Some(shift) = (0..n).find(|&s| dst[s] == image0) else {
            return Err(Error::NotApplicable);
        };
        let mut map = Vec::with_capacity(n);
        for i in 0..n {
            let img = &auto.derivative.apply(&src[i]) + &auto.translations[f];
            if dst[(i + shift) % n] != img {
                return Err(Error::NotApplicable);
            }
            map.push((i + shift) % n);
        }
        shifts.push(map);
    }
    // gluing compatibility: image of the partner is the partner of the image
    for f in 0..n_faces {
        for e in 0..m.face(f).len() {
            let here = EdgeRef::new(f, e);
            let p = m.partner(here);
            let img_here = EdgeRef::new(auto.face_perm[f], shifts[f][e]);
            let img_partner = EdgeRef::new(auto.face_perm[p.face], shifts[p.face][p.edge]);
            if m.partner(img_here) != img_partner {
                return Err(Error::NotApplicable);
            }
        }
    }
    Ok(shifts)
}

fn compose(m: &Surface, a: &AffineAuto, b: &AffineAuto) -> AffineAuto {
    // first a, then b
    let n = m.num_faces();
    let mut face_perm = Vec::with_capacity(n);
    let mut translations = Vec::with_capacity(n);
    for f in 0..n {
        let g = a.face_perm[f];
        face_perm.push(b.face_perm[g]);
        translations.push(&b.derivative.apply(&a.translations[f]) + &b.translations[g]);
    }
    AffineAuto {
        face_perm,
        derivative: b.derivative.mul(&a.derivative),
        translations,
        order: 0,
    }
}

fn is_identity(m: &Surface, a: &AffineAuto) -> bool {
    a.derivative == Mat2::identity()
        && a.face_perm.iter().enumerate().all(|(f, &g)| f == g)
        && a.translations.iter().all(|t| t.is_zero())
        && m.num_faces() == a.face_perm.len()
}

fn with_order(m: &Surface, mut auto: AffineAuto) -> Result<AffineAuto> {
    let mut power = auto.clone();
    for k in 1..=64 {
        if is_identity(m, &power) {
            auto.order = k;
            return Ok(auto);
        }
        power = compose(m, &power, &auto);
    }
    Err(Error::NotApplicable)
}

/// The order-3 deck translation of the staircase builtin (one step up the
/// stair: square i to square i+2).
pub fn deck_translation(m: &Surface) -> Result<AffineAuto> {
    if m.name() != Some("staircase") || m.num_faces() != 6 {
        return Err(Error::NotApplicable);
    }
    let face_perm: Vec<usize> = (0..6).map(|i| (i + 2) % 6).collect();
    let translations: Vec<Vec2> = (0..6)
        .map(|i| &m.face(face_perm[i])[0] - &m.face(i)[0])
        .collect();
    let auto = AffineAuto {
        face_perm,
        derivative: Mat2::identity(),
        translations,
        order: 0,
    };
    audit(m, &auto)?;
    let auto = with_order(m, auto)?;
    debug_assert_eq!(auto.order, 3);
    Ok(auto)
}

/// A fixed point of an automorphism, labelled.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedPoint {
    pub point: SurfacePoint,
    pub is_cone_point: bool,
}

/// The hyperelliptic involution of the L-shaped family (including the golden
/// L): the point symmetry of each rectangle. Returns the involution and its
/// six fixed classes: the cone point and five Weierstrass points.
pub fn hyperelliptic_involution(m: &Surface) -> Result<(AffineAuto, Vec<FixedPoint>)> {
    if !matches!(m.name(), Some("l_shaped") | Some("golden_l")) || m.num_faces() != 3 {
        return Err(Error::NotApplicable);
    }
    let translations: Vec<Vec2> = (0..3)
        .map(|f| {
            let verts = m.face(f);
            &verts[0] + &verts[2]
        })
        .collect();
    let auto = AffineAuto {
        face_perm: vec![0, 1, 2],
        derivative: Mat2::neg_identity(),
        translations,
        order: 0,
    };
    audit(m, &auto)?;
    let auto = with_order(m, auto)?;
    debug_assert_eq!(auto.order, 2);
    let fixed = fixed_points(m, &auto)?;
    Ok((auto, fixed))
}

/// All fixed points of an automorphism with derivative -I, exactly: face
/// centers, edge points solving the reflection equations, and fixed vertex
/// classes.
pub fn fixed_points(m: &Surface, auto: &AffineAuto) -> Result<Vec<FixedPoint>> {
    let mut out: Vec<FixedPoint> = Vec::new();
    let mut push = |p: SurfacePoint, m: &Surface, out: &mut Vec<FixedPoint>| {
        let is_cone = p
            .vertex_class()
            .is_some_and(|c| m.classes()[c].is_singular());
        let fp = FixedPoint { point: p, is_cone_point: is_cone };
        if !out.contains(&fp) {
            out.push(fp);
        }
    };
    let two = Scalar::from_int(2);
    // face interiors: (I - D) p = t has the unique solution p = t/2 for D = -I
    for f in 0..m.num_faces() {
        if auto.face_perm[f] != f {
            continue;
        }
        let center = Vec2::new(
            (&auto.translations[f].x) / &two,
            (&auto.translations[f].y) / &two,
        );
        if m.face_contains(f, &center) {
            let p = m.point(f, center)?;
            if auto.apply(m, &p)? == p {
                push(p, m, &mut out);
            }
        }
    }
    // edge points: solve on each canonical edge against both chart images
    for f in 0..m.num_faces() {
        for e in 0..m.face(f).len() {
            let here = EdgeRef::new(f, e);
            if m.canonical_edge(here) != here {
                continue;
            }
            let a = &m.face(f)[e];
            let ev = m.edge_vector(here);
            let g = auto.face_perm[f];
            let t = &auto.translations[f];
            let c = m.gluing_translation(here);
            let partner = m.partner(here);
            // candidate equations: image(q) == q (same chart, g == f) or
            // image(q) == q + c (partner chart, g == partner face)
            let mut rhs = Vec::new();
            if g == f {
                rhs.push(Vec2::zero());
            }
            if g == partner.face {
                rhs.push(c.clone());
            }
            for shift in rhs {
                // -(a + s ev) + t = a + s ev + shift  =>  2 s ev = t - shift - 2a
                let w = &(t - &shift) - &(a + a);
                let s = dot(&ev, &w) / (&two * norm_sq(&ev));
                if !s.is_positive() || s >= Scalar::one() {
                    continue;
                }
                let q = a + &ev.scale(&s);
                let image = &auto.derivative.apply(&q) + t;
                if image == &q + &shift {
                    let p = m.point(f, q)?;
                    if auto.apply(m, &p)? == p {
                        push(p, m, &mut out);
                    }
                }
            }
        }
    }
    // vertex classes
    for class in 0..m.classes().len() {
        let p = m.vertex_point(class);
        if auto.apply(m, &p)? == p {
            push(p, m, &mut out);
        }
    }
    Ok(out)
}

/// Outcome of the Weierstrass midpoint verification.
#[derive(Clone, Debug)]
pub enum MidpointCheck {
    Verified { segments: usize },
    Counterexample { segment: Box<Segment>, midpoint: SurfacePoint },
}

/// Every segment from x to h(x) must carry a fixed point of h at its exact
/// midpoint; verified by enumeration up to the budget.
pub fn weierstrass_midpoint_check(
    m: &Surface,
    x: &SurfacePoint,
    budget: &Scalar,
) -> Result<MidpointCheck> {
    let (h, fixed) = hyperelliptic_involution(m)?;
    let y = h.apply(m, x)?;
    if &y == x {
        return Err(Error::BadParams(
            "x is fixed by the involution; the pair (x, h(x)) needs x not Weierstrass".into(),
        ));
    }
    check_midpoints_against(m, x, &y, budget, &fixed)
}

/// The same check against an arbitrary candidate fixed-point set, so tests
/// can corrupt the set and watch the counterexample appear.
pub fn check_midpoints_against(
    m: &Surface,
    x: &SurfacePoint,
    y: &SurfacePoint,
    budget: &Scalar,
    fixed: &[FixedPoint],
) -> Result<MidpointCheck> {
    let segs = segments_between(m, x, y, budget)?;
    let half = Scalar::from_rational(crate::exactnum::rat(1, 2));
    for s in &segs {
        let mid = s.point_at(m, &half)?;
        if !fixed.iter().any(|fp| fp.point == mid) {
            return Ok(MidpointCheck::Counterexample {
                segment: Box::new(s.clone()),
                midpoint: mid,
            });
        }
    }
    Ok(MidpointCheck::Verified { segments: segs.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;
    use crate::surface::builtin;

    #[test]
    fn staircase_deck_map_order_three() {
        let s = builtin("staircase", &[]).unwrap();
        let d = deck_translation(&s).unwrap();
        assert_eq!(d.order, 3);
        assert_eq!(d.derivative, Mat2::identity());
        // orbit of a point closes after three applications
        let p = s.point(0, Vec2::from_rats(rat(1, 3), rat(1, 7))).unwrap();
        let p1 = d.apply(&s, &p).unwrap();
        let p2 = d.apply(&s, &p1).unwrap();
        let p3 = d.apply(&s, &p2).unwrap();
        assert_ne!(p1, p);
        assert_eq!(p3, p);
        assert!(matches!(
            deck_translation(&builtin("torus", &[]).unwrap()),
            Err(Error::NotApplicable)
        ));
    }

    #[test]
    fn deck_map_preserves_segments() {
        let s = builtin("staircase", &[]).unwrap();
        let d = deck_translation(&s).unwrap();
        let x = s.point(0, Vec2::from_rats(rat(1, 3), rat(1, 5))).unwrap();
        let y = s
            .point(1, &s.face(1)[0] + &Vec2::from_rats(rat(1, 2), rat(2, 7)))
            .unwrap();
        let dx = d.apply(&s, &x).unwrap();
        let dy = d.apply(&s, &y).unwrap();
        let budget = Scalar::from_int(8);
        let a = segments_between(&s, &x, &y, &budget).unwrap();
        let b = segments_between(&s, &dx, &dy, &budget).unwrap();
        let hols = |v: &[Segment]| {
            let mut h: Vec<Vec2> = v.iter().map(|s| s.holonomy.clone()).collect();
            h.sort();
            h
        };
        assert_eq!(hols(&a), hols(&b));
    }

    #[test]
    fn l_involution_has_six_fixed_classes() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        let (h, fixed) = hyperelliptic_involution(&l).unwrap();
        assert_eq!(h.order, 2);
        assert_eq!(fixed.len(), 6);
        let cones: Vec<_> = fixed.iter().filter(|f| f.is_cone_point).collect();
        assert_eq!(cones.len(), 1);
        // the five Weierstrass points of the unit L
        let expect = [
            l.point(0, Vec2::from_rats(rat(1, 2), rat(1, 2))).unwrap(),
            l.point(1, Vec2::from_rats(rat(3, 2), rat(1, 2))).unwrap(),
            l.point(2, Vec2::from_rats(rat(1, 2), rat(3, 2))).unwrap(),
            l.point(1, Vec2::from_rats(rat(3, 2), rat(0, 1))).unwrap(),
            l.point(2, Vec2::from_rats(rat(0, 1), rat(3, 2))).unwrap(),
        ];
        for w in &expect {
            assert!(fixed.iter().any(|f| &f.point == w), "missing {w}");
        }
    }

    #[test]
    fn golden_l_involution() {
        let g = builtin("golden_l", &[]).unwrap();
        let (h, fixed) = hyperelliptic_involution(&g).unwrap();
        assert_eq!(h.order, 2);
        assert_eq!(fixed.len(), 6);
        // involution squares to the identity on sample points
        let mut state = 77u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(97);
            let a = ((state >> 33) % 13) as i64;
            let b = ((state >> 13) % 13) as i64;
            let p = g.point(0, Vec2::from_rats(rat(a, 13), rat(b, 13))).unwrap();
            let hp = h.apply(&g, &p).unwrap();
            assert_eq!(h.apply(&g, &hp).unwrap(), p);
        }
    }

    #[test]
    fn midpoint_check_and_corruption() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        let x = l.point(0, Vec2::from_rats(rat(1, 3), rat(1, 7))).unwrap();
        match weierstrass_midpoint_check(&l, &x, &Scalar::from_int(16)).unwrap() {
            MidpointCheck::Verified { segments } => assert!(segments > 0),
            other => panic!("expected verification, got {other:?}"),
        }
        // removing a fixed point produces an explicit counterexample
        let (h, fixed) = hyperelliptic_involution(&l).unwrap();
        let y = h.apply(&l, &x).unwrap();
        let broken: Vec<FixedPoint> = fixed
            .iter()
            .filter(|f| {
                f.point != l.point(0, Vec2::from_rats(rat(1, 2), rat(1, 2))).unwrap()
            })
            .cloned()
            .collect();
        match check_midpoints_against(&l, &x, &y, &Scalar::from_int(16), &broken).unwrap() {
            MidpointCheck::Counterexample { midpoint, .. } => {
                assert_eq!(
                    midpoint,
                    l.point(0, Vec2::from_rats(rat(1, 2), rat(1, 2))).unwrap()
                );
            }
            other => panic!("expected counterexample, got {other:?}"),
        }
        // a Weierstrass point is rejected as x
        let w = l.point(0, Vec2::from_rats(rat(1, 2), rat(1, 2))).unwrap();
        assert!(weierstrass_midpoint_check(&l, &w, &Scalar::from_int(4)).is_err());
    }
}
