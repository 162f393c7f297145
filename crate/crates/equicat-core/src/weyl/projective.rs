//! The real-projective model: rational points of projective n-space acted on
//! by even sign changes of the homogeneous coordinates.
//!
//! The cover is the n+1 affine charts `U_i = { z : z_i != 0 }`, each carrying
//! the straight-line contraction `[.. z_j ..] -> [.. (1-t) z_j / z_i .. 1 ..]`
//! onto the coordinate point `e_i`. Chart covering is forced: every nonzero
//! vector has a nonzero coordinate. Equivariance is exact because a sign
//! change commutes with the contraction up to the overall scale `d_i`.
//!
//! For n >= 2 the fixed points of the sign-change group are exactly the
//! coordinate points: flipping two coordinates inside the support of a point
//! scales no nonzero pair consistently. For n = 1 the group is trivial
//! projectively and its fixed set is the whole line, so the lower bound falls
//! back to the fixed points of the ambient torus action on complex projective
//! space, which are the same coordinate points; a rational separating torus
//! element witnesses that nothing else is fixed.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use super::rat::{rat, Rat};
use super::{
    CoveringReport, EquivarianceReport, LowerBoundSide, StarShapeReport, WeylBounds, WeylError,
};

/// A rational projective point in canonical form: the first nonzero
/// coordinate is scaled to 1.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProjPoint {
    coords: Vec<Rat>,
}

impl fmt::Debug for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, " : ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

impl ProjPoint {
    pub fn new(coords: Vec<Rat>) -> Result<ProjPoint, WeylError> {
        let scale = match coords.iter().find(|c| !c.is_zero()) {
            Some(c) => *c,
            None => return Err(WeylError::ZeroVector),
        };
        Ok(ProjPoint {
            coords: coords.into_iter().map(|c| c / scale).collect(),
        })
    }

    pub fn coordinate_point(n: usize, i: usize) -> ProjPoint {
        let mut coords = vec![Rat::zero(); n + 1];
        coords[i] = rat(1, 1);
        ProjPoint { coords }
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn support(&self) -> Vec<usize> {
        self.coords
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, _)| i)
            .collect()
    }

    /// Act by a sign vector (`true` flips) and re-canonicalize.
    pub fn acted(&self, signs: &SignVector) -> ProjPoint {
        let coords: Vec<Rat> = self
            .coords
            .iter()
            .zip(&signs.flips)
            .map(|(c, &flip)| if flip { -*c } else { *c })
            .collect();
        ProjPoint::new(coords).expect("sign change preserves nonzeroness")
    }
}

/// An even sign change of the n+1 homogeneous coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SignVector {
    flips: Vec<bool>,
}

impl SignVector {
    pub fn flips(&self) -> &[bool] {
        &self.flips
    }
}

#[derive(Clone, Debug)]
pub struct ProjModel {
    n: usize,
    elements: Vec<SignVector>,
}

fn t_samples() -> Vec<Rat> {
    vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
}

impl ProjModel {
    pub fn new(n: usize) -> Result<ProjModel, WeylError> {
        if n == 0 || n > 10 {
            return Err(WeylError::BadParameter {
                detail: "projective dimension must be in 1..=10".to_string(),
            });
        }
        let mut elements = Vec::new();
        for mask in 0u32..(1 << (n + 1)) {
            if mask.count_ones() % 2 == 0 {
                elements.push(SignVector {
                    flips: (0..=n).map(|i| mask & (1 << i) != 0).collect(),
                });
            }
        }
        Ok(ProjModel { n, elements })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[SignVector] {
        &self.elements
    }

    /// The n+1 coordinate points, fixed by every even sign change.
    pub fn weyl_fixed_points(&self) -> Vec<ProjPoint> {
        (0..=self.n)
            .map(|i| ProjPoint::coordinate_point(self.n, i))
            .collect()
    }

    pub fn membership(&self, i: usize, z: &ProjPoint) -> bool {
        !z.coords[i].is_zero()
    }

    /// Chart contraction onto `e_i`: identity at `t = 0`, `e_i` at `t = 1`.
    pub fn contract(&self, i: usize, z: &ProjPoint, t: Rat) -> Result<ProjPoint, WeylError> {
        if t.is_negative() || t > rat(1, 1) {
            return Err(WeylError::BadParameter {
                detail: format!("contraction parameter {t} outside [0,1]"),
            });
        }
        if !self.membership(i, z) {
            return Err(WeylError::NotMember { set: i });
        }
        let zi = z.coords[i];
        let one_minus_t = rat(1, 1) - t;
        let coords: Vec<Rat> = z
            .coords
            .iter()
            .enumerate()
            .map(|(j, c)| if j == i { rat(1, 1) } else { one_minus_t * *c / zi })
            .collect();
        ProjPoint::new(coords)
    }

    /// Deterministic rational sample: stride through tuples over a small
    /// value alphabet, skipping the zero vector.
    fn sample_points(&self, budget: usize) -> Vec<ProjPoint> {
        let alphabet = [
            rat(1, 1),
            rat(-1, 1),
            rat(1, 2),
            rat(-1, 3),
            rat(0, 1),
            rat(2, 1),
        ];
        let total = alphabet.len().pow(self.n as u32 + 1);
        let stride = (total / budget.max(1)).max(1);
        let mut out = Vec::new();
        let mut idx = 0usize;
        while idx < total && out.len() < budget {
            let mut coords = Vec::with_capacity(self.n + 1);
            let mut rest = idx;
            for _ in 0..=self.n {
                coords.push(alphabet[rest % alphabet.len()]);
                rest /= alphabet.len();
            }
            if let Ok(p) = ProjPoint::new(coords) {
                out.push(p);
            }
            idx += stride;
        }
        out
    }

    /// Exact equivariance of membership and contraction for every even sign
    /// change over the deterministic sample.
    pub fn verify_equivariance(&self, budget: usize) -> Result<EquivarianceReport, WeylError> {
        let ts = t_samples();
        let samples = self.sample_points(budget);
        for i in 0..=self.n {
            for (wid, w) in self.elements.iter().enumerate() {
                for z in &samples {
                    let wz = z.acted(w);
                    if self.membership(i, z) != self.membership(i, &wz) {
                        return Err(WeylError::MembershipNotInvariant {
                            set: i,
                            element: wid,
                            point: z.to_string(),
                        });
                    }
                    if !self.membership(i, z) {
                        continue;
                    }
                    for &t in &ts {
                        let lhs = self.contract(i, &wz, t)?;
                        let rhs = self.contract(i, z, t)?.acted(w);
                        if lhs != rhs {
                            return Err(WeylError::EquivarianceFailed {
                                set: i,
                                element: wid,
                                t,
                                point: z.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(EquivarianceReport {
            sets: self.n + 1,
            elements: self.elements.len(),
            points_per_set: samples.len(),
            t_values: t_samples().len(),
        })
    }

    /// Chart covering is structural: the canonical form has a leading 1.
    pub fn verify_covering(&self) -> CoveringReport {
        CoveringReport::Symbolic {
            margin: rat(1, 1),
            reason: "every nonzero vector has a nonzero coordinate; its chart contains it"
                .to_string(),
        }
    }

    /// Contractions stay inside their chart: coordinate `i` is pinned to 1.
    pub fn verify_star_shape(&self, budget: usize) -> Result<StarShapeReport, WeylError> {
        let ts = vec![rat(1, 4), rat(1, 2), rat(3, 4)];
        let samples = self.sample_points(budget);
        let mut used = 0;
        for i in 0..=self.n {
            for z in &samples {
                if !self.membership(i, z) {
                    continue;
                }
                used += 1;
                for &t in &ts {
                    let q = self.contract(i, z, t)?;
                    if !self.membership(i, &q) {
                        return Err(WeylError::StarShapeFailed {
                            set: i,
                            t,
                            point: z.to_string(),
                        });
                    }
                }
            }
        }
        let _ = used;
        Ok(StarShapeReport {
            points_per_set: samples.len(),
            t_values: 3,
        })
    }

    /// Verify the coordinate points are fixed and pairwise distinct, and
    /// decide which side certifies their isolation.
    ///
    /// For n >= 2 a sampled point with support of size >= 2 is moved by the
    /// sign change flipping one support coordinate against one other
    /// coordinate. For n = 1 the even sign changes are projectively trivial,
    /// so isolation is certified on the ambient side: a rational torus
    /// element scaling the two coordinates differently moves every point
    /// with full support.
    pub fn verify_fixed_points(&self) -> Result<(Vec<ProjPoint>, LowerBoundSide), WeylError> {
        let points = self.weyl_fixed_points();
        for (i, e) in points.iter().enumerate() {
            for w in &self.elements {
                if &e.acted(w) != e {
                    return Err(WeylError::FixedPointFailure {
                        detail: format!("coordinate point {i} moves under a sign change"),
                    });
                }
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(WeylError::FixedPointFailure {
                        detail: "coordinate points are not pairwise distinct".to_string(),
                    });
                }
            }
        }
        if self.n >= 2 {
            for z in self.sample_points(24) {
                if z.support().len() < 2 {
                    continue;
                }
                if self.elements.iter().all(|w| z.acted(w) == z) {
                    return Err(WeylError::FixedPointFailure {
                        detail: format!("non-coordinate point {z} is sign-change fixed"),
                    });
                }
            }
            Ok((points, LowerBoundSide::SectionWeylFixed))
        } else {
            // ambient torus side: (2, 1/2) scales the coordinates apart
            for z in self.sample_points(24) {
                if z.support().len() == 2 {
                    let scaled = ProjPoint::new(vec![
                        rat(2, 1) * z.coords[0],
                        rat(1, 2) * z.coords[1],
                    ])?;
                    if scaled == z {
                        return Err(WeylError::FixedPointFailure {
                            detail: format!("full-support point {z} is torus fixed"),
                        });
                    }
                }
            }
            Ok((points, LowerBoundSide::AmbientGroupFixed))
        }
    }

    pub fn certify(&self) -> Result<WeylBounds, WeylError> {
        let (fixed, lower_side) = self.verify_fixed_points()?;
        let equivariance = self.verify_equivariance(48)?;
        let star_shape = self.verify_star_shape(48)?;
        let covering = self.verify_covering();
        let lower = fixed.len();
        let upper = self.n + 1;
        let n = self.n;
        let mut conclusion = format!(
            "cat(CP^{n}) = cat_T^{n}(CP^{n}) = {}; the same section and group give cat(HP^{n}) = {}",
            n + 1,
            n + 1
        );
        if n == 2 {
            conclusion.push_str("; and cat(OP^2) = 3");
        }
        Ok(WeylBounds {
            model: format!("projective-evensign({n})"),
            lower,
            fixed_points: fixed.iter().map(|p| p.to_string()).collect(),
            lower_side,
            upper,
            sets: (0..=n).map(|i| format!("U_{i} = {{ z_{i} != 0 }}")).collect(),
            covering,
            equivariance,
            star_shape,
            injectivity: None,
            exact: lower == upper,
            conclusion,
        })
    }
}
