//! Exact torus points and the blocking-set formulas on R^2 / Z^2.
//!
//! Points live in lattice coordinates, so the same formulas serve the unit
//! torus and any recorded quotient torus of a cover.

use crate::error::{Error, Result};
use crate::exactnum::{rat_int, Rational};
use num_traits::Zero;

/// A point of the torus in coordinates [0,1)^2.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TorusPoint {
    x: Rational,
    y: Rational,
}

fn frac(r: &Rational) -> Rational {
    r - r.floor()
}

impl TorusPoint {
    pub fn new(x: Rational, y: Rational) -> TorusPoint {
        TorusPoint { x: frac(&x), y: frac(&y) }
    }

    pub fn zero() -> TorusPoint {
        TorusPoint::new(Rational::zero(), Rational::zero())
    }

    pub fn x(&self) -> &Rational {
        &self.x
    }

    pub fn y(&self) -> &Rational {
        &self.y
    }

    pub fn add(&self, other: &TorusPoint) -> TorusPoint {
        TorusPoint::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn neg(&self) -> TorusPoint {
        TorusPoint::new(-&self.x, -&self.y)
    }

    pub fn scale(&self, k: &Rational) -> TorusPoint {
        TorusPoint::new(&self.x * k, &self.y * k)
    }

    /// The image under m_n: both coordinates multiplied by n.
    pub fn mn_image(&self, n: i64) -> TorusPoint {
        self.scale(&rat_int(n))
    }
}

impl std::fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

/// The n^2 preimages of p under multiplication by n.
pub fn mn_preimage(n: i64, p: &TorusPoint) -> Result<Vec<TorusPoint>> {
    if n < 1 {
        return Err(Error::BadParams("mn_preimage needs n >= 1".into()));
    }
    let nr = rat_int(n);
    let mut out = Vec::with_capacity((n * n) as usize);
    for i in 0..n {
        for j in 0..n {
            out.push(TorusPoint::new(
                (p.x() + rat_int(i)) / &nr,
                (p.y() + rat_int(j)) / &nr,
            ));
        }
    }
    out.sort();
    Ok(out)
}

/// A torus blocking set with its construction data.
#[derive(Clone, Debug)]
pub struct TorusBlockingSet {
    pub points: Vec<TorusPoint>,
    pub n: i64,
    pub a: i64,
    pub diagonal: bool,
    /// The common m_n image of the points, recording which preimage set the
    /// fraction points form: (n-a) x + a y in the distinct case.
    pub mn_image: TorusPoint,
}

/// Blocking sets of the torus lemmas, built directly from fraction points.
///
/// Distinct points: the n^2 points sitting a/n of the way along every
/// straight segment from x to y (gcd(a,n)=1, 1 <= a < n); their m_n image is
/// (n-a) x + a y. Diagonal (x = y): the n^2 - 1 points x + (i,j)/n without x
/// itself, the midpoint set of all primitive loops when n = 2.
pub fn torus_blocking_set(
    x: &TorusPoint,
    y: &TorusPoint,
    n: i64,
    a: i64,
) -> Result<TorusBlockingSet> {
    if n < 2 {
        return Err(Error::BadParams("blocking sets need n >= 2".into()));
    }
    let nr = rat_int(n);
    if x == y {
        let mut points = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == 0 && j == 0 {
                    continue;
                }
                points.push(TorusPoint::new(
                    x.x() + rat_int(i) / &nr,
                    x.y() + rat_int(j) / &nr,
                ));
            }
        }
        points.sort();
        return Ok(TorusBlockingSet {
            points,
            n,
            a: 1,
            diagonal: true,
            mn_image: x.mn_image(n),
        });
    }
    if !(1..n).contains(&a) || gcd(a, n) != 1 {
        return Err(Error::BadParams(format!(
            "need 1 <= a < n coprime, got a={a}, n={n}"
        )));
    }
    let ar = rat_int(a);
    let na = rat_int(n - a);
    let mut points = Vec::new();
    for i in 0..n {
        for j in 0..n {
            points.push(TorusPoint::new(
                (&na * x.x() + &ar * y.x() + &ar * rat_int(i)) / &nr,
                (&na * x.y() + &ar * y.y() + &ar * rat_int(j)) / &nr,
            ));
        }
    }
    points.sort();
    points.dedup();
    debug_assert_eq!(points.len(), (n * n) as usize);
    let mn_image = x.scale(&na).add(&y.scale(&ar));
    Ok(TorusBlockingSet {
        points,
        n,
        a,
        diagonal: false,
        mn_image,
    })
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat;

    fn tp(a: i64, b: i64, c: i64, d: i64) -> TorusPoint {
        TorusPoint::new(rat(a, b), rat(c, d))
    }

    #[test]
    fn m2_preimage_of_zero() {
        let pre = mn_preimage(2, &TorusPoint::zero()).unwrap();
        assert_eq!(
            pre,
            vec![tp(0, 1, 0, 1), tp(0, 1, 1, 2), tp(1, 2, 0, 1), tp(1, 2, 1, 2)]
        );
        assert_eq!(mn_preimage(1, &tp(1, 3, 2, 5)).unwrap(), vec![tp(1, 3, 2, 5)]);
        let nine = mn_preimage(3, &tp(1, 7, 2, 7)).unwrap();
        assert_eq!(nine.len(), 9);
    }

    #[test]
    fn midpoint_set_of_distinct_pair() {
        // x = (0,0), y = (1/4,0): B = {(1/8,0),(5/8,0),(1/8,1/2),(5/8,1/2)}
        let b = torus_blocking_set(&TorusPoint::zero(), &tp(1, 4, 0, 1), 2, 1).unwrap();
        assert_eq!(
            b.points,
            vec![tp(1, 8, 0, 1), tp(1, 8, 1, 2), tp(5, 8, 0, 1), tp(5, 8, 1, 2)]
        );
        assert_eq!(b.mn_image, tp(1, 4, 0, 1));
        // the points form an m_2 preimage of the recorded image
        let pre = mn_preimage(2, &b.mn_image).unwrap();
        assert_eq!(b.points, pre);
    }

    #[test]
    fn diagonal_mode_drops_the_point() {
        let b = torus_blocking_set(&TorusPoint::zero(), &TorusPoint::zero(), 2, 1).unwrap();
        assert!(b.diagonal);
        assert_eq!(
            b.points,
            vec![tp(0, 1, 1, 2), tp(1, 2, 0, 1), tp(1, 2, 1, 2)]
        );
        let b3 = torus_blocking_set(&tp(1, 3, 1, 7), &tp(1, 3, 1, 7), 3, 1).unwrap();
        assert_eq!(b3.points.len(), 8);
    }

    #[test]
    fn cardinality_n_squared() {
        let b = torus_blocking_set(&TorusPoint::zero(), &tp(1, 3, 1, 7), 3, 1).unwrap();
        assert_eq!(b.points.len(), 9);
        assert!(torus_blocking_set(&TorusPoint::zero(), &tp(1, 3, 1, 7), 4, 2).is_err());
    }
}
