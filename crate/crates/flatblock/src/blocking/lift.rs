//! Lifting torus blocking sets through recorded covering maps, and the
//! structural non-illumination certificate for fully ramified covers.

use super::torus::{gcd, torus_blocking_set, TorusBlockingSet, TorusPoint};
use crate::error::{Error, Result};
use crate::exactnum::Rational;
use crate::surface::{Surface, SurfacePoint};

/// A blocking set pulled back through the covering map, with the cardinality
/// bookkeeping of the ramified fibers.
#[derive(Clone, Debug)]
pub struct LiftedBlockingSet {
    pub base: TorusBlockingSet,
    pub points: Vec<SurfacePoint>,
    /// per base point: its preimages with ramification indices
    pub fibers: Vec<(TorusPoint, Vec<(SurfacePoint, usize)>)>,
}

impl LiftedBlockingSet {
    pub fn cardinality(&self) -> usize {
        self.points.len()
    }
}

pub(crate) fn base_point(m: &Surface, p: &SurfacePoint) -> Result<TorusPoint> {
    let cov = m.cover().ok_or(Error::NoCoverData)?;
    let (x, y) = cov.base_point(p)?;
    Ok(TorusPoint::new(x, y))
}

/// Full preimage of a torus blocking set under the recorded covering map.
pub fn lift_blocking_to_cover(m: &Surface, base: &TorusBlockingSet) -> Result<LiftedBlockingSet> {
    let cov = m.cover().ok_or(Error::NoCoverData)?;
    let mut points: Vec<SurfacePoint> = Vec::new();
    let mut fibers = Vec::new();
    for b in &base.points {
        let fiber = cov.preimages(m, &(b.x().clone(), b.y().clone()))?;
        for (p, _) in &fiber {
            if !points.contains(p) {
                points.push(p.clone());
            }
        }
        fibers.push((b.clone(), fiber));
    }
    Ok(LiftedBlockingSet {
        base: base.clone(),
        points,
        fibers,
    })
}

/// A machine-checkable certificate that no straight segment of any length
/// joins x and y: some fraction-point blocking set of the base consists of
/// branch points whose every preimage is a singular vertex, so each would-be
/// trajectory carries a cone point in its interior.
#[derive(Clone, Debug)]
pub struct NonIlluminationCertificate {
    pub n: i64,
    pub a: i64,
    pub base_x: TorusPoint,
    pub base_y: TorusPoint,
    pub base_set: Vec<TorusPoint>,
    /// per base blocking point: the singular preimages with cone multiplicity
    pub ramification: Vec<(TorusPoint, Vec<(usize, usize)>)>,
}

#[derive(Clone, Debug)]
pub enum Certification {
    Certified(NonIlluminationCertificate),
    NotApplicable,
}

/// Search small (n, a) for a certificate. Only distinct base images can be
/// certified: diagonal blocking sets exclude the point itself, which is
/// regular here.
pub fn certify_non_illumination(
    m: &Surface,
    x: &SurfacePoint,
    y: &SurfacePoint,
    max_n: i64,
) -> Result<Certification> {
    if m.cover().is_none() {
        return Ok(Certification::NotApplicable);
    }
    let cov = m.cover().expect("checked above");
    let bx = base_point(m, x)?;
    let by = base_point(m, y)?;
    if bx == by {
        return Ok(Certification::NotApplicable);
    }
    for n in 2..=max_n {
        for a in 1..n {
            if gcd(a, n) != 1 {
                continue;
            }
            let set = torus_blocking_set(&bx, &by, n, a)?;
            let mut ramification = Vec::new();
            let mut all_singular = true;
            'points: for b in &set.points {
                let fiber = cov.preimages(m, &(b.x().clone(), b.y().clone()))?;
                let mut classes = Vec::new();
                for (p, mult) in fiber {
                    match p.vertex_class() {
                        Some(c) if m.classes()[c].is_singular() => classes.push((c, mult)),
                        _ => {
                            all_singular = false;
                            break 'points;
                        }
                    }
                }
                ramification.push((b.clone(), classes));
            }
            if all_singular {
                return Ok(Certification::Certified(NonIlluminationCertificate {
                    n,
                    a,
                    base_x: bx,
                    base_y: by,
                    base_set: set.points,
                    ramification,
                }));
            }
        }
    }
    Ok(Certification::NotApplicable)
}

/// Re-check a certificate independently of the search that produced it.
pub fn check_certificate(m: &Surface, cert: &NonIlluminationCertificate) -> Result<()> {
    let cov = m.cover().ok_or(Error::NoCoverData)?;
    if gcd(cert.a, cert.n) != 1 || !(1..cert.n).contains(&cert.a) {
        return Err(Error::BadParams("certificate parameters are not coprime".into()));
    }
    let set = torus_blocking_set(&cert.base_x, &cert.base_y, cert.n, cert.a)?;
    if set.points != cert.base_set {
        return Err(Error::BadParams("certificate base set mismatch".into()));
    }
    for b in &set.points {
        let fiber = cov.preimages(m, &(b.x().clone(), b.y().clone()))?;
        for (p, _) in fiber {
            let ok = p
                .vertex_class()
                .is_some_and(|c| m.classes()[c].is_singular());
            if !ok {
                return Err(Error::BadParams(format!(
                    "preimage {p} of {b} is not a singular vertex"
                )));
            }
        }
    }
    Ok(())
}

/// Lattice-coordinate torus point of a plane rational pair, for callers that
/// hold raw coordinates.
pub fn torus_point_of(x: Rational, y: Rational) -> TorusPoint {
    TorusPoint::new(x, y)
}
