//! The circle-with-reflection model: the section of the rotation action on
//! the 2-sphere, with the blow-down of the 2-torus onto the sphere.
//!
//! Angles are rational turns modulo 1. The reflection sends an angle to its
//! negative; its fixed points are the two poles 0 and 1/2 (solutions of
//! `2θ ≡ 0`). Two symmetric open arcs around the poles cover the circle
//! whenever their radius exceeds a quarter turn. Each arc contracts linearly
//! onto its pole, exactly equivariantly.
//!
//! The rotation orbit of an embedded section point meets the section in the
//! mirror pair `{θ, -θ}`: the orbit is the latitude circle at that height and
//! the section crosses each latitude in its two meridian points. The
//! blow-down identifies `(g, θ)` with `(g + 1/2, -θ)` on the torus of
//! (rotation, section-angle) pairs; over a regular sphere point the fiber is
//! a single class, over each pole a whole circle of classes.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::Signed;

use super::rat::{circle_distance, mod_one, rat, Rat};
use super::{
    CoveringReport, EquivarianceReport, LowerBoundSide, StarShapeReport, WeylBounds, WeylError,
};

/// A rational angle in turns, canonical in `[0, 1)`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct CirclePoint {
    turns: Rat,
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} turns", self.turns)
    }
}

impl CirclePoint {
    pub fn new(turns: Rat) -> CirclePoint {
        CirclePoint {
            turns: mod_one(turns),
        }
    }

    pub fn turns(&self) -> Rat {
        self.turns
    }

    pub fn reflected(&self) -> CirclePoint {
        CirclePoint::new(-self.turns)
    }
}

/// A point of the 2-sphere in (azimuth, colatitude-angle) form: the image of
/// the section point at angle `theta` rotated by `azimuth`. Canonical form
/// folds the angle into `[0, 1/2]` and zeroes the azimuth at the poles.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct SpherePoint {
    pub azimuth: Rat,
    pub theta: Rat,
}

impl SpherePoint {
    pub fn new(azimuth: Rat, theta: Rat) -> SpherePoint {
        let mut theta = mod_one(theta);
        let mut azimuth = mod_one(azimuth);
        if theta > rat(1, 2) {
            theta = rat(1, 1) - theta;
            azimuth = mod_one(azimuth + rat(1, 2));
        }
        if theta == rat(0, 1) || theta == rat(1, 2) {
            azimuth = rat(0, 1);
        }
        SpherePoint { azimuth, theta }
    }

    pub fn is_pole(&self) -> bool {
        self.theta == rat(0, 1) || self.theta == rat(1, 2)
    }

    /// Rotate around the polar axis.
    pub fn rotated(&self, by: Rat) -> SpherePoint {
        SpherePoint::new(self.azimuth + by, self.theta)
    }
}

/// Fiber of the blow-down over a sphere point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Fiber {
    /// A single torus class: regular points.
    Point,
    /// A circle of classes: the poles.
    Circle,
}

#[derive(Clone, Debug)]
pub struct CircleModel {
    /// Arc radius in turns; covering needs more than 1/4, injective charts
    /// less than 1/2.
    arc_radius: Rat,
}

impl CircleModel {
    pub fn new(arc_radius: Rat) -> Result<CircleModel, WeylError> {
        if arc_radius <= rat(1, 4) || arc_radius >= rat(1, 2) {
            return Err(WeylError::BadParameter {
                detail: "arc radius must lie strictly between 1/4 and 1/2".to_string(),
            });
        }
        Ok(CircleModel { arc_radius })
    }

    pub fn with_defaults() -> CircleModel {
        CircleModel {
            arc_radius: rat(3, 8),
        }
    }

    pub fn arc_radius(&self) -> Rat {
        self.arc_radius
    }

    pub fn center(&self, k: usize) -> CirclePoint {
        CirclePoint::new(rat(k as i128, 2))
    }

    /// Fixed points of the reflection: exactly the solutions of `2θ ≡ 0`.
    pub fn weyl_fixed_points(&self) -> Vec<CirclePoint> {
        vec![self.center(0), self.center(1)]
    }

    pub fn membership(&self, k: usize, p: &CirclePoint) -> bool {
        circle_distance(p.turns, self.center(k).turns) < self.arc_radius
    }

    /// Signed offset of a member from its arc center, in `(-r, r)`.
    fn offset(&self, k: usize, p: &CirclePoint) -> Option<Rat> {
        let c = self.center(k).turns;
        let d = mod_one(p.turns - c);
        let signed = if d <= rat(1, 2) { d } else { d - rat(1, 1) };
        if signed.abs() < self.arc_radius {
            Some(signed)
        } else {
            None
        }
    }

    pub fn contract(&self, k: usize, p: &CirclePoint, t: Rat) -> Result<CirclePoint, WeylError> {
        if t.is_negative() || t > rat(1, 1) {
            return Err(WeylError::BadParameter {
                detail: format!("contraction parameter {t} outside [0,1]"),
            });
        }
        let offset = self.offset(k, p).ok_or(WeylError::NotMember { set: k })?;
        Ok(CirclePoint::new(
            self.center(k).turns + (rat(1, 1) - t) * offset,
        ))
    }

    fn sample_points(&self) -> Vec<CirclePoint> {
        (0..24).map(|i| CirclePoint::new(rat(i, 24))).collect()
    }

    pub fn verify_equivariance(&self) -> Result<EquivarianceReport, WeylError> {
        let ts = vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)];
        let samples = self.sample_points();
        for k in 0..2 {
            for p in &samples {
                let rp = p.reflected();
                if self.membership(k, p) != self.membership(k, &rp) {
                    return Err(WeylError::MembershipNotInvariant {
                        set: k,
                        element: 1,
                        point: p.to_string(),
                    });
                }
                if !self.membership(k, p) {
                    continue;
                }
                for &t in &ts {
                    let lhs = self.contract(k, &rp, t)?;
                    let rhs = self.contract(k, p, t)?.reflected();
                    if lhs != rhs {
                        return Err(WeylError::EquivarianceFailed {
                            set: k,
                            element: 1,
                            t,
                            point: p.to_string(),
                        });
                    }
                }
            }
        }
        Ok(EquivarianceReport {
            sets: 2,
            elements: 2,
            points_per_set: samples.len(),
            t_values: 5,
        })
    }

    /// Two arcs of radius `r > 1/4` around antipodal centers cover the
    /// circle; the worst point sits a quarter turn from both centers.
    pub fn verify_covering(&self) -> CoveringReport {
        CoveringReport::Symbolic {
            margin: self.arc_radius - rat(1, 4),
            reason: "every angle is within a quarter turn of a pole".to_string(),
        }
    }

    pub fn verify_star_shape(&self) -> Result<StarShapeReport, WeylError> {
        let ts = vec![rat(1, 4), rat(1, 2), rat(3, 4)];
        for k in 0..2 {
            for p in self.sample_points() {
                if !self.membership(k, &p) {
                    continue;
                }
                for &t in &ts {
                    let q = self.contract(k, &p, t)?;
                    if !self.membership(k, &q) {
                        return Err(WeylError::StarShapeFailed {
                            set: k,
                            t,
                            point: p.to_string(),
                        });
                    }
                }
            }
        }
        Ok(StarShapeReport {
            points_per_set: 24,
            t_values: 3,
        })
    }

    pub fn verify_fixed_points(&self) -> Result<Vec<CirclePoint>, WeylError> {
        let points = self.weyl_fixed_points();
        for p in &points {
            if p.reflected() != *p {
                return Err(WeylError::FixedPointFailure {
                    detail: format!("pole {p} moves under the reflection"),
                });
            }
        }
        for p in self.sample_points() {
            let fixed = p.reflected() == p;
            let is_pole = p.turns == rat(0, 1) || p.turns == rat(1, 2);
            if fixed != is_pole {
                return Err(WeylError::FixedPointFailure {
                    detail: format!("reflection-fixed set is not the two poles at {p}"),
                });
            }
        }
        Ok(points)
    }

    /// The rotation orbit of the section point at angle `theta` meets the
    /// section exactly in the mirror pair `{theta, -theta}`.
    pub fn orbit_section_intersection(&self, theta: CirclePoint) -> Vec<CirclePoint> {
        let mirror = theta.reflected();
        if mirror == theta {
            vec![theta]
        } else {
            let mut pair = vec![theta, mirror];
            pair.sort();
            pair
        }
    }

    /// Fiber of the blow-down over a sphere point: a single class over a
    /// regular point, a circle of classes over each pole.
    pub fn blow_down_fiber(&self, p: &SpherePoint) -> Fiber {
        if p.is_pole() {
            Fiber::Circle
        } else {
            Fiber::Point
        }
    }

    /// Count distinct torus classes `[(g, theta)]` over `p`, under the
    /// identification `(g, θ) ~ (g+1/2, -θ)`. Over a regular point the two
    /// lifts form one class; over a pole every azimuth lifts, so the classes
    /// are counted among samples `g = i/den` and grow with the density,
    /// halved by the identification.
    pub fn fiber_class_count(&self, p: &SpherePoint, den: i128) -> usize {
        let class_rep = |azimuth: Rat, theta: Rat| -> (Rat, Rat) {
            let a = (mod_one(azimuth), mod_one(theta));
            let b = (mod_one(azimuth + rat(1, 2)), mod_one(-theta));
            if a <= b {
                a
            } else {
                b
            }
        };
        let mut classes: alloc::collections::BTreeSet<(Rat, Rat)> =
            alloc::collections::BTreeSet::new();
        if p.is_pole() {
            for i in 0..den {
                classes.insert(class_rep(rat(i, den), p.theta));
            }
        } else {
            classes.insert(class_rep(p.azimuth, p.theta));
            classes.insert(class_rep(p.azimuth + rat(1, 2), -p.theta));
        }
        classes.len()
    }

    /// The blow-down commutes with rotation on sampled classes.
    pub fn verify_blow_down_equivariance(&self) -> Result<(), WeylError> {
        for i in 0..12i128 {
            for j in 0..12i128 {
                let g = rat(i, 12);
                let theta = rat(j, 12);
                let p = SpherePoint::new(g, theta);
                for r in 0..6i128 {
                    let by = rat(r, 6);
                    let rotated_then_project = SpherePoint::new(g + by, theta);
                    let project_then_rotate = p.rotated(by);
                    if rotated_then_project != project_then_rotate {
                        return Err(WeylError::FixedPointFailure {
                            detail: format!(
                                "blow-down equivariance fails at g={g}, theta={theta}, by={by}"
                            ),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn certify(&self) -> Result<WeylBounds, WeylError> {
        let fixed = self.verify_fixed_points()?;
        let equivariance = self.verify_equivariance()?;
        let star_shape = self.verify_star_shape()?;
        let covering = self.verify_covering();
        self.verify_blow_down_equivariance()?;
        let lower = fixed.len();
        let upper = 2;
        Ok(WeylBounds {
            model: "circle-reflection".to_string(),
            lower,
            fixed_points: fixed.iter().map(|p| p.to_string()).collect(),
            lower_side: LowerBoundSide::SectionWeylFixed,
            upper,
            sets: (0..2)
                .map(|k| format!("arc of radius {} around {}", self.arc_radius, self.center(k)))
                .collect(),
            covering,
            equivariance,
            star_shape,
            injectivity: None,
            exact: lower == upper,
            conclusion: "cat_SO(2)(S^2) = 2 for the rotation action".to_string(),
        })
    }
}
