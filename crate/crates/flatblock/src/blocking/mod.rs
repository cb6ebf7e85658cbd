//! Blocking-set verification and certified bounds on the blocking
//! cardinality bc(x, y).
//!
//! Upper bounds from finite enumeration are only certified up to the budget;
//! the single budget-free certificate is structural non-illumination through
//! a fully ramified cover. Lower bounds are exact: a pairwise disjoint family
//! and a minimum stabbing number both bound bc from below outright.

mod family;
mod lift;
mod torus;

pub use family::{disjoint_family, min_stab, EXACT_SEARCH_LIMIT};
pub use lift::{
    certify_non_illumination, check_certificate, lift_blocking_to_cover, Certification,
    LiftedBlockingSet, NonIlluminationCertificate,
};
pub use torus::{mn_preimage, torus_blocking_set, TorusBlockingSet, TorusPoint};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::surface::{Surface, SurfacePoint};
use crate::tracer::{segments_between_with, EnumerationConfig, Segment};

/// A blocking question: do finitely many points block every straight segment
/// from x to y of squared length at most `budget`?
#[derive(Clone, Debug)]
pub struct BlockingInstance {
    pub x: SurfacePoint,
    pub y: SurfacePoint,
    pub budget: Scalar,
}

#[derive(Clone, Debug)]
pub enum BlockingVerdict {
    Blocked { segments: usize },
    Unblocked { witness: Box<Segment> },
}

/// Does B meet the interior of every enumerated segment from x to y?
///
/// Singular and marked vertices in B block vacuously: no valid segment
/// passes through them, so they never stab and never hurt.
pub fn verify_blocking(
    m: &Surface,
    inst: &BlockingInstance,
    blockers: &[SurfacePoint],
) -> Result<BlockingVerdict> {
    verify_blocking_with(m, inst, blockers, &EnumerationConfig::default())
}

pub fn verify_blocking_with(
    m: &Surface,
    inst: &BlockingInstance,
    blockers: &[SurfacePoint],
    cfg: &EnumerationConfig,
) -> Result<BlockingVerdict> {
    if blockers.contains(&inst.x) || blockers.contains(&inst.y) {
        return Err(Error::ContainsEndpoint);
    }
    let segments = segments_between_with(m, &inst.x, &inst.y, &inst.budget, cfg)?;
    for s in &segments {
        let stabbed = blockers.iter().any(|b| s.contains_interior_point(m, b));
        if !stabbed {
            return Ok(BlockingVerdict::Unblocked {
                witness: Box::new(s.clone()),
            });
        }
    }
    Ok(BlockingVerdict::Blocked {
        segments: segments.len(),
    })
}

/// How an upper bound on bc was certified.
#[derive(Clone, Debug)]
pub enum UpperCertificate {
    /// A set that stabs every segment up to the budget.
    LengthBounded { points: Vec<SurfacePoint> },
    /// A torus-formula set (n, a), verified at the budget.
    TorusFormula {
        n: i64,
        a: i64,
        diagonal: bool,
        points: Vec<SurfacePoint>,
    },
    /// A lifted torus-formula set through the recorded cover, verified.
    LiftedFormula {
        n: i64,
        a: i64,
        diagonal: bool,
        degree: String,
        points: Vec<SurfacePoint>,
    },
    /// Midpoint fixed-point set of the hyperelliptic involution, verified.
    InvolutionMidpoints { points: Vec<SurfacePoint> },
    /// Non-illumination certificate: bc = 0 at every length.
    Structural(NonIlluminationCertificate),
}

impl UpperCertificate {
    pub fn size(&self) -> usize {
        match self {
            UpperCertificate::LengthBounded { points }
            | UpperCertificate::TorusFormula { points, .. }
            | UpperCertificate::LiftedFormula { points, .. }
            | UpperCertificate::InvolutionMidpoints { points } => points.len(),
            UpperCertificate::Structural(_) => 0,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            UpperCertificate::LengthBounded { .. } => "length-bounded",
            UpperCertificate::TorusFormula { .. } => "torus-formula",
            UpperCertificate::LiftedFormula { .. } => "lifted-formula",
            UpperCertificate::InvolutionMidpoints { .. } => "involution-midpoints",
            UpperCertificate::Structural(_) => "structural",
        }
    }

    /// Budget-free certificates stay valid at every length.
    pub fn is_structural(&self) -> bool {
        matches!(self, UpperCertificate::Structural(_))
    }
}

/// Certified bounds on bc(x, y) with re-checkable witnesses.
#[derive(Clone, Debug)]
pub struct BlockingReport {
    pub instance: BlockingInstance,
    pub segment_count: usize,
    /// exact lower bound: minimum stabbing number of the segment family
    pub lower: usize,
    pub lower_exact: bool,
    pub min_stab_witness: Vec<SurfacePoint>,
    /// secondary lower certificate: a pairwise interior-disjoint family
    pub disjoint_family: Vec<Segment>,
    pub disjoint_family_exact: bool,
    /// least upper bound among the verified certificates
    pub upper: usize,
    pub certificates: Vec<UpperCertificate>,
}

impl BlockingReport {
    pub fn interval(&self) -> (usize, usize) {
        (self.lower, self.upper)
    }

    pub fn structural(&self) -> Option<&NonIlluminationCertificate> {
        self.certificates.iter().find_map(|c| match c {
            UpperCertificate::Structural(cert) => Some(cert),
            _ => None,
        })
    }
}

/// Surface points of a torus-formula set on a degree-one recorded torus.
fn formula_points_on_torus(m: &Surface, set: &TorusBlockingSet) -> Result<Vec<SurfacePoint>> {
    let cov = m.cover().ok_or(Error::NoCoverData)?;
    let mut out = Vec::new();
    for p in &set.points {
        let fiber = cov.preimages(m, &(p.x().clone(), p.y().clone()))?;
        for (sp, _) in fiber {
            if !out.contains(&sp) {
                out.push(sp);
            }
        }
    }
    Ok(out)
}

/// Combine every applicable bound into a certified interval.
pub fn bc_report(m: &Surface, inst: &BlockingInstance) -> Result<BlockingReport> {
    bc_report_with(m, inst, &EnumerationConfig::default())
}

pub fn bc_report_with(
    m: &Surface,
    inst: &BlockingInstance,
    cfg: &EnumerationConfig,
) -> Result<BlockingReport> {
    let segments = segments_between_with(m, &inst.x, &inst.y, &inst.budget, cfg)?;
    let (fam, fam_exact) = disjoint_family(m, &segments);
    let (stab, stab_witness, stab_exact) = min_stab(m, &segments, &inst.x, &inst.y);
    let mut certificates: Vec<UpperCertificate> = Vec::new();

    // structural non-illumination through a recorded cover
    if let Ok(Certification::Certified(cert)) = certify_non_illumination(m, &inst.x, &inst.y, 6) {
        certificates.push(UpperCertificate::Structural(cert));
    }

    // the min-stab witness is itself a budget-certified blocking set
    if stab_exact || !stab_witness.is_empty() {
        certificates.push(UpperCertificate::LengthBounded {
            points: stab_witness.clone(),
        });
    }

    // torus formulas, direct or lifted through the recorded cover
    if let Some(cov) = m.cover() {
        let base = (lift::base_point(m, &inst.x), lift::base_point(m, &inst.y));
        if let (Ok(bx), Ok(by)) = base {
            let set = torus_blocking_set(&bx, &by, 2, 1)?;
            let degree_one = cov.degree(m).map(|d| d == crate::exactnum::rat_int(1)).unwrap_or(false);
            let lifted = lift_blocking_to_cover(m, &set)?;
            let points = lifted.points.clone();
            let usable = !points.contains(&inst.x) && !points.contains(&inst.y);
            if usable {
                let verdict = verify_blocking_with(
                    m,
                    inst,
                    &points,
                    cfg,
                )?;
                if matches!(verdict, BlockingVerdict::Blocked { .. }) {
                    if degree_one && !m.has_singularities() {
                        certificates.push(UpperCertificate::TorusFormula {
                            n: set.n,
                            a: set.a,
                            diagonal: set.diagonal,
                            points,
                        });
                    } else {
                        certificates.push(UpperCertificate::LiftedFormula {
                            n: set.n,
                            a: set.a,
                            diagonal: set.diagonal,
                            degree: cov.degree(m).map(|d| d.to_string()).unwrap_or_default(),
                            points,
                        });
                    }
                }
            }
        }
    }

    // hyperelliptic midpoint set on the L family
    if let Ok((h, fixed)) = crate::autos::hyperelliptic_involution(m) {
        if let Ok(hx) = h.apply(m, &inst.x) {
            if hx == inst.y && inst.x != inst.y {
                let points: Vec<SurfacePoint> = fixed
                    .iter()
                    .filter(|f| !f.is_cone_point)
                    .map(|f| f.point.clone())
                    .collect();
                let verdict = verify_blocking_with(m, inst, &points, cfg)?;
                if matches!(verdict, BlockingVerdict::Blocked { .. }) {
                    certificates.push(UpperCertificate::InvolutionMidpoints { points });
                }
            }
        }
    }

    certificates.sort_by_key(|c| (c.size(), c.kind()));
    let structural = certificates.iter().any(|c| c.is_structural());
    let upper = if structural {
        0
    } else {
        certificates.iter().map(|c| c.size()).min().unwrap_or(usize::MAX)
    };
    Ok(BlockingReport {
        instance: inst.clone(),
        segment_count: segments.len(),
        lower: stab,
        lower_exact: stab_exact,
        min_stab_witness: stab_witness,
        disjoint_family: fam.iter().map(|&i| segments[i].clone()).collect(),
        disjoint_family_exact: fam_exact,
        upper,
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, Vec2};
    use crate::surface::builtin;

    fn torus() -> Surface {
        builtin("torus", &[]).unwrap()
    }

    fn tpoint(m: &Surface, a: (i64, i64), b: (i64, i64)) -> SurfacePoint {
        m.point(0, Vec2::from_rats(rat(a.0, a.1), rat(b.0, b.1))).unwrap()
    }

    fn to_surface_points(m: &Surface, pts: &[TorusPoint]) -> Vec<SurfacePoint> {
        pts.iter()
            .flat_map(|p| {
                m.cover()
                    .unwrap()
                    .preimages(m, &(p.x().clone(), p.y().clone()))
                    .unwrap()
                    .into_iter()
                    .map(|(sp, _)| sp)
            })
            .collect()
    }

    #[test]
    fn midpoint_set_blocks_the_example_pair() {
        let t = torus();
        let x = tpoint(&t, (0, 1), (0, 1));
        let y = tpoint(&t, (1, 4), (0, 1));
        let set = torus_blocking_set(
            &TorusPoint::new(rat(0, 1), rat(0, 1)),
            &TorusPoint::new(rat(1, 4), rat(0, 1)),
            2,
            1,
        )
        .unwrap();
        let blockers = to_surface_points(&t, &set.points);
        assert_eq!(blockers.len(), 4);
        let inst = BlockingInstance { x: x.clone(), y: y.clone(), budget: Scalar::from_int(16) };
        assert!(matches!(
            verify_blocking(&t, &inst, &blockers).unwrap(),
            BlockingVerdict::Blocked { .. }
        ));
        // dropping the direct midpoint (1/8, 0) unblocks with a short witness
        let missing = tpoint(&t, (1, 8), (0, 1));
        let partial: Vec<SurfacePoint> =
            blockers.iter().filter(|b| **b != missing).cloned().collect();
        match verify_blocking(&t, &inst, &partial).unwrap() {
            BlockingVerdict::Unblocked { witness } => {
                assert_eq!(witness.holonomy, Vec2::from_rats(rat(1, 4), rat(0, 1)));
            }
            other => panic!("expected unblocked, got {other:?}"),
        }
        // endpoints are rejected
        let with_x: Vec<SurfacePoint> = std::iter::once(x.clone()).chain(blockers).collect();
        assert!(matches!(
            verify_blocking(&t, &inst, &with_x),
            Err(Error::ContainsEndpoint)
        ));
    }

    #[test]
    fn torus_distinct_report_is_four_four() {
        let t = torus();
        let inst = BlockingInstance {
            x: tpoint(&t, (0, 1), (0, 1)),
            y: tpoint(&t, (1, 3), (1, 7)),
            budget: Scalar::from_int(16),
        };
        let report = bc_report(&t, &inst).unwrap();
        assert_eq!(report.interval(), (4, 4));
        assert!(report.lower_exact);
        assert!(report.disjoint_family.len() >= 4);
        assert!(report
            .certificates
            .iter()
            .any(|c| matches!(c, UpperCertificate::TorusFormula { n: 2, a: 1, .. })));
    }

    #[test]
    fn torus_diagonal_report_is_three_three() {
        let t = torus();
        let x = tpoint(&t, (1, 2), (1, 2));
        let inst = BlockingInstance { x: x.clone(), y: x, budget: Scalar::from_int(16) };
        let report = bc_report(&t, &inst).unwrap();
        assert_eq!(report.interval(), (3, 3));
        assert!(report.disjoint_family.len() >= 3);
    }

    #[test]
    fn lifted_diagonal_set_blocks_deck_pairs() {
        let s = builtin("staircase", &[]).unwrap();
        let d = crate::autos::deck_translation(&s).unwrap();
        let x = s.point(0, Vec2::from_rats(rat(1, 3), rat(1, 7))).unwrap();
        let y = d.apply(&s, &x).unwrap();
        let bx = lift::base_point(&s, &x).unwrap();
        let by = lift::base_point(&s, &y).unwrap();
        assert_eq!(bx, by);
        let set = torus_blocking_set(&bx, &by, 2, 1).unwrap();
        assert!(set.diagonal);
        let lifted = lift_blocking_to_cover(&s, &set).unwrap();
        assert!(lifted.cardinality() <= 9);
        let inst = BlockingInstance { x, y, budget: Scalar::from_int(25) };
        assert!(matches!(
            verify_blocking(&s, &inst, &lifted.points).unwrap(),
            BlockingVerdict::Blocked { .. }
        ));
    }

    #[test]
    fn generic_lift_has_four_d_points() {
        let s = builtin("staircase", &[]).unwrap();
        let x = s.point(0, Vec2::from_rats(rat(1, 5), rat(1, 7))).unwrap();
        let y = s
            .point(2, &s.face(2)[0] + &Vec2::from_rats(rat(1, 2), rat(2, 3)))
            .unwrap();
        let bx = lift::base_point(&s, &x).unwrap();
        let by = lift::base_point(&s, &y).unwrap();
        assert_ne!(bx, by);
        let set = torus_blocking_set(&bx, &by, 2, 1).unwrap();
        let lifted = lift_blocking_to_cover(&s, &set).unwrap();
        // degree 3 cover, no branch point hit: exactly 4 * 3 preimages
        assert_eq!(lifted.cardinality(), 12);
    }

    #[test]
    fn fully_ramified_cover_certifies_non_illumination() {
        let shifts = crate::surface::full_ramification_shifts(2, 2).unwrap();
        let c = crate::surface::branched_cover_grid(2, 2, &shifts).unwrap();
        // lift of the pair (-t, t) with t = (1/3, 1/5)
        let t_plane = Vec2::from_rats(rat(1, 3), rat(1, 5));
        let neg = Vec2::from_rats(rat(2, 3), rat(4, 5));
        let xs = c.cover().unwrap().preimages(&c, &(rat(2, 3), rat(4, 5))).unwrap();
        let ys = c.cover().unwrap().preimages(&c, &(rat(1, 3), rat(1, 5))).unwrap();
        let (x, _) = &xs[0];
        let (y, _) = &ys[0];
        match certify_non_illumination(&c, x, y, 6).unwrap() {
            Certification::Certified(cert) => {
                assert_eq!((cert.n, cert.a), (2, 1));
                check_certificate(&c, &cert).unwrap();
                // the certificate implies an empty segment family
                let segs =
                    crate::tracer::segments_between(&c, x, y, &Scalar::from_int(49)).unwrap();
                assert!(segs.is_empty());
                let report = bc_report(
                    &c,
                    &BlockingInstance { x: x.clone(), y: y.clone(), budget: Scalar::from_int(49) },
                )
                .unwrap();
                assert_eq!(report.interval(), (0, 0));
                assert!(report.structural().is_some());
            }
            other => panic!("expected certification, got {other:?}"),
        }
        let _ = (t_plane, neg);
        // an unbranched origami pair is not applicable
        let torus3 = crate::surface::origami(&[1, 2, 0], &[0, 1, 2]).unwrap();
        let a = torus3.point(0, Vec2::from_rats(rat(1, 3), rat(1, 7))).unwrap();
        let b = torus3
            .point(1, &torus3.face(1)[0] + &Vec2::from_rats(rat(1, 2), rat(1, 5)))
            .unwrap();
        assert!(matches!(
            certify_non_illumination(&torus3, &a, &b, 6).unwrap(),
            Certification::NotApplicable
        ));
    }

    #[test]
    fn l_shaped_weierstrass_upper_bound() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        let (h, _) = crate::autos::hyperelliptic_involution(&l).unwrap();
        let x = l.point(0, Vec2::from_rats(rat(1, 3), rat(1, 7))).unwrap();
        let y = h.apply(&l, &x).unwrap();
        let inst = BlockingInstance { x, y, budget: Scalar::from_int(16) };
        let report = bc_report(&l, &inst).unwrap();
        assert!(report.lower >= 1);
        assert!(report.upper <= 5);
        assert!(report
            .certificates
            .iter()
            .any(|c| matches!(c, UpperCertificate::InvolutionMidpoints { points } if points.len() == 5)));
    }

    #[test]
    fn nine_disjoint_loops_at_the_cone_point() {
        let l = builtin("l_shaped", &["1".into(), "1".into()]).unwrap();
        let xi = l.vertex_point(0);
        let segs =
            crate::tracer::segments_between(&l, &xi, &xi, &Scalar::from_int(25)).unwrap();
        let (fam, exact) = disjoint_family(&l, &segs);
        assert!(exact);
        assert!(fam.len() >= 9, "found only {}", fam.len());
    }

    #[test]
    fn empty_family_reports_zero() {
        let t = torus();
        let x = tpoint(&t, (0, 1), (0, 1));
        let y = tpoint(&t, (1, 3), (1, 7));
        let segs = crate::tracer::segments_between(&t, &x, &y, &Scalar::zero()).unwrap();
        let (n, w, exact) = min_stab(&t, &segs, &x, &y);
        assert_eq!((n, w.len(), exact), (0, 0, true));
    }

    /// Brute-force oracle on a tiny instance: no 2-point set from a fine
    /// grid stabs every segment, so min_stab = 3 is genuinely minimal.
    #[test]
    fn min_stab_matches_grid_brute_force() {
        let t = torus();
        let x = tpoint(&t, (1, 2), (1, 2));
        let segs = crate::tracer::segments_between(&t, &x, &x, &Scalar::from_int(2)).unwrap();
        let (m_count, witness, exact) = min_stab(&t, &segs, &x, &x);
        assert!(exact);
        assert_eq!(m_count, 3);
        for w in &witness {
            assert!(segs.iter().any(|s| s.contains_interior_point(&t, w)));
        }
        // grid candidates with denominator 4
        let mut grid = Vec::new();
        for a in 0..8i64 {
            for b in 0..8i64 {
                let p = tpoint(&t, (a, 8), (b, 8));
                if p != x {
                    grid.push(p);
                }
            }
        }
        let stabs = |p: &SurfacePoint| -> Vec<bool> {
            segs.iter().map(|s| s.contains_interior_point(&t, p)).collect()
        };
        let all: Vec<Vec<bool>> = grid.iter().map(stabs).collect();
        for i in 0..grid.len() {
            for j in i..grid.len() {
                let covers_all = (0..segs.len()).all(|k| all[i][k] || all[j][k]);
                assert!(!covers_all, "two grid points {} and {} stab everything", grid[i], grid[j]);
            }
        }
    }
}
