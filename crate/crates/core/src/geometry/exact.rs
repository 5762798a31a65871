//! Exact coordinates for reflected triangle copies.
//!
//! A point is stored as `(x, eta)` standing for the real point `(x, eta * sqrt(D))`
//! where `D` is a fixed positive rational (the squared height of the canonical
//! tile). Reflections through lines joining two such points produce points of
//! the same form, so all placements reachable by gluing stay exact.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses the shortest decimal representation of `v` into an exact rational,
/// so `1.1` becomes `11/10` rather than the nearest binary fraction.
pub fn rat_from_f64(v: f64) -> Option<Rat> {
    if !v.is_finite() {
        return None;
    }
    let s = format!("{v:e}");
    let (mant, exp) = s.split_once('e')?;
    let exp: i32 = exp.parse().ok()?;
    let neg = mant.starts_with('-');
    let mant = mant.trim_start_matches('-');
    let (int_part, frac_part) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = if scale >= 0 {
        Rat::from_integer(digits * num_traits::pow(ten, scale as usize))
    } else {
        Rat::new(digits, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        r = -r;
    }
    Some(r)
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SurdPoint {
    pub x: Rat,
    pub eta: Rat,
}

impl SurdPoint {
    pub fn new(x: Rat, eta: Rat) -> Self {
        SurdPoint { x, eta }
    }

    pub fn origin() -> Self {
        SurdPoint { x: Rat::zero(), eta: Rat::zero() }
    }

    pub fn to_f64(&self, sqrt_d: f64) -> [f64; 2] {
        [rat_to_f64(&self.x), rat_to_f64(&self.eta) * sqrt_d]
    }

    /// Mirror image across the x-axis.
    pub fn mirrored(&self) -> Self {
        SurdPoint { x: self.x.clone(), eta: -self.eta.clone() }
    }

    fn sub(&self, o: &SurdPoint) -> (Rat, Rat) {
        (&self.x - &o.x, &self.eta - &o.eta)
    }
}

/// Reflects `p` through the line joining `u` and `v`.
pub fn reflect(p: &SurdPoint, u: &SurdPoint, v: &SurdPoint, d: &Rat) -> SurdPoint {
    let (dx, de) = v.sub(u);
    let (px, pe) = p.sub(u);
    let n = &dx * &dx + d * &de * &de;
    let dot = &px * &dx + d * &pe * &de;
    let t = dot / n;
    // foot = u + t*(v-u); reflected = 2*foot - p
    let two = rat(2, 1);
    let x = &two * (&u.x + &t * &dx) - &p.x;
    let eta = &two * (&u.eta + &t * &de) - &p.eta;
    SurdPoint { x, eta }
}

/// Sign of the cross product `(b - a) x (c - a)`. The true value is the
/// rational part times `sqrt(D) > 0`, so the sign is exact.
pub fn orient(a: &SurdPoint, b: &SurdPoint, c: &SurdPoint) -> Ordering {
    let (x1, e1) = b.sub(a);
    let (x2, e2) = c.sub(a);
    let cross = x1 * e2 - e1 * x2;
    cross.cmp(&Rat::zero())
}

/// True when the open interiors of the two triangles intersect.
///
/// Separating-axis test over the six edge lines. Triangles that only touch
/// along an edge or at a vertex are not overlapping.
pub fn interiors_overlap(t1: &[SurdPoint; 3], t2: &[SurdPoint; 3]) -> bool {
    !(separated_by_edges(t1, t2) || separated_by_edges(t2, t1))
}

fn separated_by_edges(t: &[SurdPoint; 3], other: &[SurdPoint; 3]) -> bool {
    let o = orient(&t[0], &t[1], &t[2]);
    if o == Ordering::Equal {
        return true;
    }
    for k in 0..3 {
        let a = &t[k];
        let b = &t[(k + 1) % 3];
        // interior of t lies on side `o` of edge a->b; separation if every
        // vertex of `other` lies on the closed opposite side
        if other.iter().all(|p| {
            let s = orient(a, b, p);
            s == Ordering::Equal || s == o.reverse()
        }) {
            return true;
        }
    }
    false
}

/// Twice the signed area in units of `sqrt(D)`.
pub fn doubled_area_coeff(t: &[SurdPoint; 3]) -> Rat {
    let (x1, e1) = t[1].sub(&t[0]);
    let (x2, e2) = t[2].sub(&t[0]);
    (x1 * e2 - e1 * x2).abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: i64, e: i64) -> SurdPoint {
        SurdPoint::new(rat(x, 1), rat(e, 1))
    }

    #[test]
    fn decimal_parsing_is_exact() {
        assert_eq!(rat_from_f64(1.1).unwrap(), rat(11, 10));
        assert_eq!(rat_from_f64(1.3).unwrap(), rat(13, 10));
        assert_eq!(rat_from_f64(5.0).unwrap(), rat(5, 1));
        assert_eq!(rat_from_f64(-0.25).unwrap(), rat(-1, 4));
        assert_eq!(rat_from_f64(1e-3).unwrap(), rat(1, 1000));
        assert!(rat_from_f64(f64::NAN).is_none());
    }

    #[test]
    fn reflection_is_an_involution_and_fixes_the_line() {
        let d = rat(3, 4);
        let u = p(0, 0);
        let v = SurdPoint::new(rat(1, 2), rat(1, 1));
        let q = p(1, 0);
        let r = reflect(&q, &u, &v, &d);
        assert_eq!(reflect(&r, &u, &v, &d), q);
        assert_eq!(reflect(&u, &u, &v, &d), u);
        assert_eq!(reflect(&v, &u, &v, &d), v);
        // equilateral: reflecting (1,0) through the 60 degree line lands at (-1/2, 1)
        assert_eq!(r, SurdPoint::new(rat(-1, 2), rat(1, 1)));
    }

    #[test]
    fn shared_edge_is_not_overlap() {
        let a = [p(0, 0), p(2, 0), p(1, 1)];
        let b = [p(0, 0), p(2, 0), p(1, -1)];
        assert!(!interiors_overlap(&a, &b));
        assert!(interiors_overlap(&a, &a.clone()));
        let c = [p(1, 0), p(3, 0), p(2, 1)];
        assert!(interiors_overlap(&a, &c));
        let e = [p(2, 0), p(4, 0), p(3, 1)];
        assert!(!interiors_overlap(&a, &e));
    }
}
