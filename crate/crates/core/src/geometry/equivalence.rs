use std::collections::HashMap;

use super::exact::{Rat, SurdPoint};
use super::volume::DiscretizedVolume;
use crate::label::{Label, LabelMap};

/// Affine map determined by three point correspondences, exact in the
/// `(x, eta)` coordinates.
struct Affine {
    p0: SurdPoint,
    e1: (Rat, Rat),
    e2: (Rat, Rat),
    det: Rat,
    q0: SurdPoint,
    f1: (Rat, Rat),
    f2: (Rat, Rat),
}

impl Affine {
    fn new(from: [&SurdPoint; 3], to: [&SurdPoint; 3]) -> Affine {
        let d = |a: &SurdPoint, b: &SurdPoint| (&b.x - &a.x, &b.eta - &a.eta);
        let e1 = d(from[0], from[1]);
        let e2 = d(from[0], from[2]);
        let det = &e1.0 * &e2.1 - &e1.1 * &e2.0;
        Affine {
            p0: from[0].clone(),
            e1,
            e2,
            det,
            q0: to[0].clone(),
            f1: d(to[0], to[1]),
            f2: d(to[0], to[2]),
        }
    }

    fn apply(&self, p: &SurdPoint) -> SurdPoint {
        let vx = &p.x - &self.p0.x;
        let ve = &p.eta - &self.p0.eta;
        let s = (&vx * &self.e2.1 - &ve * &self.e2.0) / &self.det;
        let t = (&self.e1.0 * &ve - &self.e1.1 * &vx) / &self.det;
        SurdPoint::new(
            &self.q0.x + &s * &self.f1.0 + &t * &self.f2.0,
            &self.q0.eta + &s * &self.f1.1 + &t * &self.f2.1,
        )
    }
}

/// Whether some plane isometry carries the copies of `dv1` onto those of
/// `dv2`. Labels must correspond up to a symmetry of the tile, so for a
/// scalene tile they must match exactly.
pub fn are_equivalent(dv1: &DiscretizedVolume, dv2: &DiscretizedVolume) -> bool {
    if dv1.tile() != dv2.tile() || dv1.n_copies() != dv2.n_copies() {
        return false;
    }
    // index dv2 copies by their labelled corners
    let target: HashMap<[SurdPoint; 3], usize> =
        dv2.placements().iter().map(|p| (p.vertices.clone(), p.copy_index)).collect();
    let anchor = &dv1.placements()[0];
    for sigma in dv1.tile().automorphisms() {
        for q in dv2.placements() {
            let from = [anchor.vertex(Label::Alpha), anchor.vertex(Label::Beta), anchor.vertex(Label::Gamma)];
            let to = [
                q.vertex(sigma.apply(Label::Alpha)),
                q.vertex(sigma.apply(Label::Beta)),
                q.vertex(sigma.apply(Label::Gamma)),
            ];
            let f = Affine::new(from, to);
            if dv1.placements().iter().all(|p| target.contains_key(&mapped(&f, &sigma, &p.vertices))) {
                return true;
            }
        }
    }
    false
}

fn mapped(f: &Affine, sigma: &LabelMap, vertices: &[SurdPoint; 3]) -> [SurdPoint; 3] {
    let mut out = [SurdPoint::origin(), SurdPoint::origin(), SurdPoint::origin()];
    for l in Label::ALL {
        out[sigma.apply(l).index()] = f.apply(&vertices[l.index()]);
    }
    out
}
