//! The maximal-torus model: `(n+1)`-tuples of rational turns with integer
//! coordinate sum, modulo integer vectors, acted on by the symmetric group
//! permuting coordinates.
//!
//! The fixed points of the action are the n+1 diagonal points
//! `z_k = (k/(n+1), …, k/(n+1))`: a point fixed by every transposition has
//! all coordinates equal modulo 1, and the integer-sum constraint forces the
//! common value into `{k/(n+1)}`. Each fixed point is therefore isolated, and
//! the fixed-point count certifies the lower bound n+1.
//!
//! The cover consists of n+1 congruent sets `V_k`, one per fixed point. `V_k`
//! is the image of an inflated lattice Voronoi cell around a lift of `z_k`:
//! a point belongs to `V_k` when its unique nearby lift `w` into the chart of
//! `z_k` (per-coordinate nearest-integer offsets against the diagonal value
//! `k/(n+1)`, with the right total shift) satisfies
//!
//! ```text
//!   sum of the s largest w_i  <  (1+eta) * s(n+1-s) / (2(n+1))   for s = 1..n
//! ```
//!
//! which are exactly the facet inequalities of the cell, inflated by `1+eta`.
//! The cells at inflation zero tile the subtorus, so the inflated open cells
//! cover it with positive margin; they are convex, hence star-shaped around
//! their centers, and the facet family is permutation-symmetric, making each
//! `V_k` invariant and the straight-line contraction to `z_k` exactly
//! equivariant. For `eta < 1/n` every admissible lift offset stays strictly
//! below one half per coordinate, so chart lifts are unique and the chart is
//! injective; at larger inflations two lifts of one point differing by a
//! lattice vector both pass the facet bounds and the injectivity verifier
//! reports the collision.

use alloc::format;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_traits::{Signed, Zero};

use crate::perm::{Perm, PermGroup};

use super::rat::{mod_one, rat, round_nearest, Rat};
use super::{
    CoveringReport, EquivarianceReport, InjectivityReport, LowerBoundSide, StarShapeReport,
    WeylBounds, WeylError,
};

/// A point of the subtorus: canonical coordinates in `[0,1)` with integer sum.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TorusPoint {
    coords: Vec<Rat>,
}

impl fmt::Debug for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

impl TorusPoint {
    /// Canonicalize arbitrary rational coordinates; the sum must be integral.
    pub fn new(coords: Vec<Rat>) -> Result<TorusPoint, WeylError> {
        let sum: Rat = coords.iter().sum();
        if !sum.is_integer() {
            return Err(WeylError::NotOnSubtorus);
        }
        Ok(TorusPoint {
            coords: coords.into_iter().map(mod_one).collect(),
        })
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    /// Integer sum of the canonical coordinates, in `0..=n`.
    pub fn level(&self) -> i128 {
        let sum: Rat = self.coords.iter().sum();
        debug_assert!(sum.is_integer());
        sum.to_integer()
    }

    /// Left action by a coordinate permutation: slot `g(i)` receives
    /// coordinate `i`.
    pub fn acted(&self, g: &Perm) -> TorusPoint {
        let mut coords = vec![Rat::zero(); self.coords.len()];
        for (i, c) in self.coords.iter().enumerate() {
            coords[g.apply(i as u32) as usize] = *c;
        }
        TorusPoint { coords }
    }
}

/// Descriptor of one cover set.
#[derive(Clone, Debug)]
pub struct TorusCoverSet {
    pub index: usize,
    pub center: TorusPoint,
    pub inflation: Rat,
}

#[derive(Clone, Debug)]
pub struct TorusModel {
    n: usize,
    /// Cell inflation; injective charts need strictly less than `1/n`.
    inflation: Rat,
    /// Required covering margin (exclusive lower bound when zero).
    min_margin: Rat,
    /// Grid spacing `1/m` for the covering scan; `n+1` must divide `m`.
    mesh: Rat,
    group: PermGroup,
}

/// Deterministic contraction parameters exercised by the verifiers.
fn t_samples() -> Vec<Rat> {
    vec![rat(0, 1), rat(1, 4), rat(1, 2), rat(3, 4), rat(1, 1)]
}

impl TorusModel {
    pub fn new(
        n: usize,
        inflation: Rat,
        min_margin: Rat,
        mesh: Rat,
    ) -> Result<TorusModel, WeylError> {
        if n == 0 {
            return Err(WeylError::BadParameter {
                detail: "torus dimension must be at least 1".to_string(),
            });
        }
        if n > 7 {
            return Err(WeylError::BadParameter {
                detail: "torus dimension capped at 7".to_string(),
            });
        }
        if !inflation.is_positive() {
            return Err(WeylError::BadParameter {
                detail: "inflation must be positive".to_string(),
            });
        }
        if min_margin.is_negative() {
            return Err(WeylError::BadParameter {
                detail: "margin requirement must be nonnegative".to_string(),
            });
        }
        if *mesh.numer() != 1 || !mesh.is_positive() {
            return Err(WeylError::BadParameter {
                detail: "mesh must be a unit fraction 1/m".to_string(),
            });
        }
        if mesh.denom() % ((n as i128) + 1) != 0 {
            return Err(WeylError::BadParameter {
                detail: format!("mesh denominator must be divisible by {}", n + 1),
            });
        }
        let degree = n + 1;
        let mut generators = vec![Perm::from_cycles(degree, &[vec![0, 1]]).expect("cycle")];
        if degree > 2 {
            let full: Vec<u32> = (0..degree as u32).collect();
            generators.push(Perm::from_cycles(degree, &[full]).expect("cycle"));
        }
        let order_cap = (1..=degree).product::<usize>();
        let group = PermGroup::from_generators(degree, generators, order_cap)
            .expect("symmetric group enumerates");
        Ok(TorusModel {
            n,
            inflation,
            min_margin,
            mesh,
            group,
        })
    }

    /// Defaults: inflation `1/(2n)`, margin requirement 0, mesh `1/(16(n+1))`.
    pub fn with_defaults(n: usize) -> Result<TorusModel, WeylError> {
        TorusModel::new(
            n,
            rat(1, 2 * n.max(1) as i128),
            rat(0, 1),
            rat(1, 16 * (n as i128 + 1)),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn inflation(&self) -> Rat {
        self.inflation
    }

    pub fn mesh(&self) -> Rat {
        self.mesh
    }

    pub fn min_margin(&self) -> Rat {
        self.min_margin
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    /// The diagonal fixed point `z_k`.
    pub fn center(&self, k: usize) -> TorusPoint {
        let a = rat(k as i128, self.n as i128 + 1);
        TorusPoint {
            coords: vec![a; self.n + 1],
        }
    }

    /// Facet bound of the inflated cell for subset size `s`.
    pub fn facet_bound(&self, s: usize) -> Rat {
        let np1 = self.n as i128 + 1;
        (rat(1, 1) + self.inflation) * rat((s as i128) * (np1 - s as i128), 2 * np1)
    }

    /// All n+1 fixed points, in index order.
    pub fn weyl_fixed_points(&self) -> Vec<TorusPoint> {
        (0..=self.n).map(|k| self.center(k)).collect()
    }

    pub fn generate_cover(&self) -> Vec<TorusCoverSet> {
        (0..=self.n)
            .map(|k| TorusCoverSet {
                index: k,
                center: self.center(k),
                inflation: self.inflation,
            })
            .collect()
    }

    /// Per-coordinate chart offsets of `x` against the diagonal value of
    /// chart `k`, or `None` when some offset ties at one half or the total
    /// shift does not match the chart level.
    fn chart_offsets(&self, k: usize, x: &TorusPoint) -> Option<Vec<Rat>> {
        let a = rat(k as i128, self.n as i128 + 1);
        let mut shift_total: i128 = 0;
        let mut w = Vec::with_capacity(self.n + 1);
        for c in &x.coords {
            let d = *c - a;
            let m = round_nearest(d)?;
            shift_total += m;
            w.push(d - rat(m, 1));
        }
        if shift_total != x.level() - k as i128 {
            return None;
        }
        Some(w)
    }

    /// Membership slack of `x` in set `k`: the minimum facet gap of the
    /// chart lift, positive exactly on members. `None` when no lift exists.
    pub fn slack(&self, k: usize, x: &TorusPoint) -> Option<Rat> {
        let mut w = self.chart_offsets(k, x)?;
        w.sort_by(|a, b| b.cmp(a));
        let mut prefix = Rat::zero();
        let mut best: Option<Rat> = None;
        for s in 1..=self.n {
            prefix += w[s - 1];
            let gap = self.facet_bound(s) - prefix;
            best = Some(match best {
                None => gap,
                Some(b) if gap < b => gap,
                Some(b) => b,
            });
        }
        best
    }

    pub fn membership(&self, k: usize, x: &TorusPoint) -> bool {
        matches!(self.slack(k, x), Some(s) if s.is_positive())
    }

    /// Straight-line contraction of set `k` onto its center: at `t = 0` the
    /// identity, at `t = 1` the fixed point `z_k`, exactly equivariant.
    pub fn contract(&self, k: usize, x: &TorusPoint, t: Rat) -> Result<TorusPoint, WeylError> {
        if t.is_negative() || t > rat(1, 1) {
            return Err(WeylError::BadParameter {
                detail: format!("contraction parameter {t} outside [0,1]"),
            });
        }
        if !self.membership(k, x) {
            return Err(WeylError::NotMember { set: k });
        }
        let w = self.chart_offsets(k, x).expect("member has a lift");
        let a = rat(k as i128, self.n as i128 + 1);
        let one_minus_t = rat(1, 1) - t;
        let coords: Vec<Rat> = w.iter().map(|wi| a + one_minus_t * *wi).collect();
        TorusPoint::new(coords)
    }

    /// Deterministic sample of canonical grid points, sorted-representative
    /// form, at a coarse mesh: all members of set `k` first, then arbitrary
    /// points, each capped.
    fn sample_points(&self, k: usize, members: usize, others: usize) -> Vec<TorusPoint> {
        let m = 4 * (self.n as i128 + 1);
        let mut got_members = Vec::new();
        let mut got_others = Vec::new();
        let mut stack: Vec<Vec<i128>> = vec![vec![]];
        while let Some(prefix) = stack.pop() {
            if got_members.len() >= members && got_others.len() >= others {
                break;
            }
            if prefix.len() == self.n {
                let partial: i128 = prefix.iter().sum();
                let need = (-partial).rem_euclid(m);
                let last = *prefix.last().unwrap_or(&0);
                if need >= last {
                    let mut coords: Vec<Rat> =
                        prefix.iter().map(|&u| rat(u, m)).collect();
                    coords.push(rat(need, m));
                    let p = TorusPoint::new(coords).expect("grid point on subtorus");
                    if self.membership(k, &p) {
                        if got_members.len() < members {
                            got_members.push(p);
                        }
                    } else if got_others.len() < others {
                        got_others.push(p);
                    }
                }
                continue;
            }
            let lo = *prefix.last().unwrap_or(&0);
            // descending push so smaller values pop first
            for u in (lo..m).rev() {
                let mut next = prefix.clone();
                next.push(u);
                stack.push(next);
            }
        }
        got_members.extend(got_others);
        got_members
    }

    /// Exact equivariance of membership and contraction over every group
    /// element, a deterministic sample of points per set, and the standard
    /// contraction parameters.
    pub fn verify_equivariance(&self, points_per_set: usize) -> Result<EquivarianceReport, WeylError> {
        let ts = t_samples();
        for k in 0..=self.n {
            let samples = {
                let mut s = vec![self.center(k)];
                s.extend(self.sample_points(k, points_per_set.saturating_sub(1), 4));
                s
            };
            for (gid, g) in self.group.elements().iter().enumerate() {
                for p in &samples {
                    let gp = p.acted(g);
                    if self.membership(k, p) != self.membership(k, &gp) {
                        return Err(WeylError::MembershipNotInvariant {
                            set: k,
                            element: gid,
                            point: p.to_string(),
                        });
                    }
                    if !self.membership(k, p) {
                        continue;
                    }
                    for &t in &ts {
                        let lhs = self.contract(k, &gp, t)?;
                        let rhs = self.contract(k, p, t)?.acted(g);
                        if lhs != rhs {
                            return Err(WeylError::EquivarianceFailed {
                                set: k,
                                element: gid,
                                t,
                                point: p.to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(EquivarianceReport {
            sets: self.n + 1,
            elements: self.group.order(),
            points_per_set,
            t_values: t_samples().len(),
        })
    }

    /// Midpoint membership along contraction rays; convexity of the cells
    /// makes this structural, the scan keeps it honest.
    pub fn verify_star_shape(&self, points_per_set: usize) -> Result<StarShapeReport, WeylError> {
        let ts = vec![rat(1, 4), rat(1, 2), rat(3, 4)];
        for k in 0..=self.n {
            for p in self.sample_points(k, points_per_set, 0) {
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
            points_per_set,
            t_values: 3,
        })
    }

    /// Exhaustive scan of the rational grid at the stated mesh: every grid
    /// point of the subtorus must lie in some set, and the reported margin is
    /// the minimum over grid points of the best membership slack.
    ///
    /// Membership slack is a symmetric function of the coordinates (the sets
    /// are invariant), so the scan runs over sorted representatives only; a
    /// unit test pins the symmetry.
    pub fn verify_covering_grid(&self, mesh: Rat) -> Result<CoveringReport, WeylError> {
        if *mesh.numer() != 1 || !mesh.is_positive() || mesh.denom() % (self.n as i128 + 1) != 0 {
            return Err(WeylError::BadParameter {
                detail: format!("mesh {mesh} must be 1/m with {} dividing m", self.n + 1),
            });
        }
        let m = *mesh.denom();
        let np1 = self.n as i128 + 1;
        // facet bounds scaled: tau_s * m = num_s / den, compared against
        // integer-unit prefix sums scaled by den
        let (ip, iq) = (*self.inflation.numer(), *self.inflation.denom());
        let den = 2 * np1 * iq;
        let num: Vec<i128> = (1..=self.n as i128)
            .map(|s| (iq + ip) * s * (np1 - s) * m)
            .collect();
        let a_units: Vec<i128> = (0..=self.n as i128).map(|k| k * m / np1).collect();

        let mut worst: Option<(i128, Vec<i128>)> = None;
        let mut points: u64 = 0;
        // iterate sorted coordinate tuples u_1 <= ... <= u_{n+1} summing to
        // a multiple of m; the final coordinate is forced
        let mut prefix: Vec<i128> = Vec::with_capacity(self.n);
        scan_sorted_tuples(m, self.n, &mut prefix, &mut |units: &[i128]| {
            points += 1;
            let j = units.iter().sum::<i128>() / m;
            let mut best: Option<i128> = None;
            let mut w = [0i128; 8];
            for (k, &a) in a_units.iter().enumerate() {
                // per-coordinate nearest-integer offsets, in units of 1/m
                let mut shift = 0i128;
                let mut ok = true;
                for (i, &u) in units.iter().enumerate() {
                    let d = u - a;
                    let q = d.div_euclid(m);
                    let r = d.rem_euclid(m);
                    if 2 * r == m {
                        ok = false;
                        break;
                    }
                    if 2 * r < m {
                        shift += q;
                        w[i] = r;
                    } else {
                        shift += q + 1;
                        w[i] = r - m;
                    }
                }
                if !ok || shift != j - k as i128 {
                    continue;
                }
                let wslice = &mut w[..units.len()];
                wslice.sort_unstable_by(|a, b| b.cmp(a));
                let mut psum = 0i128;
                let mut slack = i128::MAX;
                for s in 1..=self.n {
                    psum += wslice[s - 1];
                    let gap = num[s - 1] - psum * den;
                    if gap < slack {
                        slack = gap;
                    }
                }
                best = Some(match best {
                    None => slack,
                    Some(b) if slack > b => slack,
                    Some(b) => b,
                });
            }
            let best = best.unwrap_or(i128::MIN);
            match &worst {
                Some((b, _)) if best >= *b => {}
                _ => worst = Some((best, units.to_vec())),
            }
        });

        let (worst_slack, worst_units) = worst.expect("grid is nonempty");
        let margin = if worst_slack == i128::MIN {
            rat(-1, 1)
        } else {
            Rat::new(worst_slack, m * den)
        };
        let worst_point = TorusPoint::new(
            worst_units.iter().map(|&u| rat(u, m)).collect(),
        )
        .expect("grid point");
        if !margin.is_positive() {
            return Err(WeylError::Uncovered {
                point: worst_point.to_string(),
            });
        }
        if margin < self.min_margin {
            return Err(WeylError::MarginBelowRequirement {
                margin,
                required: self.min_margin,
            });
        }
        Ok(CoveringReport::Grid {
            mesh,
            margin,
            points,
        })
    }

    /// Injectivity of the chart of set `k`.
    ///
    /// Structurally, a member's lift offsets satisfy `|w_i| < tau_1`; when
    /// `tau_1 <= 1/2` two lifts differing by a nonzero lattice vector cannot
    /// both be admissible, so lifts are unique. The check enumerates every
    /// nonzero `{-1,0,1}` lattice step and demands it escape the doubled
    /// inflated cell (strict separation); larger steps are excluded by the
    /// per-coordinate bound, which is also checked. On failure the offending
    /// identified pair is reported. A deterministic sample additionally
    /// confirms pairwise-distinct canonical forms.
    pub fn verify_chart_injectivity(
        &self,
        k: usize,
        sample_budget: usize,
    ) -> Result<InjectivityReport, WeylError> {
        let np1 = self.n as i128 + 1;
        let one_plus = rat(1, 1) + self.inflation;
        // per-coordinate reach of the doubled inflated cell must rule out
        // steps with an entry of absolute value 2 or more
        if one_plus * rat(self.n as i128, np1) >= rat(2, 1) {
            return Err(WeylError::BadParameter {
                detail: "inflation too large for the lattice-step bound".to_string(),
            });
        }
        let mut checked = 0usize;
        let mut step: Vec<i128> = vec![0; self.n + 1];
        let mut failure: Option<Vec<i128>> = None;
        enumerate_steps(&mut step, 0, 0, &mut |lam: &[i128]| {
            if failure.is_some() {
                return;
            }
            checked += 1;
            // escape iff some facet sees lam beyond (1+eta)*s(n+1-s)/(n+1)
            let mut sorted: Vec<i128> = lam.to_vec();
            sorted.sort_unstable_by(|a, b| b.cmp(a));
            let mut psum = 0i128;
            let mut escapes = false;
            for s in 1..=self.n {
                psum += sorted[s - 1];
                let bound = one_plus * rat((s as i128) * (np1 - s as i128), np1);
                if rat(psum, 1) > bound {
                    escapes = true;
                    break;
                }
            }
            if !escapes {
                failure = Some(lam.to_vec());
            }
        });
        if let Some(lam) = failure {
            // two admissible lifts of one point: the center shifted by half
            // the step, and that lift minus the step
            let a = rat(k as i128, np1);
            let coords: Vec<Rat> = lam.iter().map(|&l| a + rat(l, 2)).collect();
            let witness = TorusPoint::new(coords).expect("half-step point");
            return Err(WeylError::Collision {
                set: k,
                point: witness.to_string(),
                lattice_step: lam,
            });
        }
        // sampled pairwise distinctness of canonical forms
        let samples = self.sample_points(k, sample_budget, 0);
        let mut seen: alloc::collections::BTreeSet<TorusPoint> =
            alloc::collections::BTreeSet::new();
        for p in &samples {
            if !seen.insert(p.clone()) {
                return Err(WeylError::Collision {
                    set: k,
                    point: p.to_string(),
                    lattice_step: vec![],
                });
            }
        }
        Ok(InjectivityReport {
            lattice_vectors: checked,
            samples: samples.len(),
            structural: self.facet_bound(1) <= rat(1, 2),
        })
    }

    /// Fixed points are exactly the diagonals: verified fixed and pairwise
    /// distinct; isolation holds because a point with two distinct
    /// coordinates is moved by the transposition swapping them.
    pub fn verify_fixed_points(&self) -> Result<Vec<TorusPoint>, WeylError> {
        let points = self.weyl_fixed_points();
        for (k, z) in points.iter().enumerate() {
            for g in self.group.elements() {
                if &z.acted(g) != z {
                    return Err(WeylError::FixedPointFailure {
                        detail: format!("center {k} moves under the group"),
                    });
                }
            }
        }
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                if points[i] == points[j] {
                    return Err(WeylError::FixedPointFailure {
                        detail: "centers are not pairwise distinct".to_string(),
                    });
                }
            }
        }
        // spot check of isolation: sampled non-diagonal points are moved
        let swap = Perm::from_cycles(self.n + 1, &[vec![0, 1]]).expect("transposition");
        for p in self.sample_points(0, 6, 6) {
            if p.coords[0] != p.coords[1] && p.acted(&swap) == p {
                return Err(WeylError::FixedPointFailure {
                    detail: format!("point {p} with distinct coordinates is fixed"),
                });
            }
        }
        Ok(points)
    }

    /// Run every verifier and assemble the certified bounds.
    pub fn certify(&self) -> Result<WeylBounds, WeylError> {
        let fixed = self.verify_fixed_points()?;
        let sets = self.generate_cover();
        let equivariance = self.verify_equivariance(8)?;
        let star_shape = self.verify_star_shape(12)?;
        let covering = self.verify_covering_grid(self.mesh)?;
        let mut injectivity: Option<InjectivityReport> = None;
        for k in 0..=self.n {
            injectivity = Some(self.verify_chart_injectivity(k, 12)?);
        }
        let lower = fixed.len();
        let upper = sets.len();
        let n = self.n;
        Ok(WeylBounds {
            model: format!("torus-sym({n})"),
            lower,
            fixed_points: fixed.iter().map(|p| p.to_string()).collect(),
            lower_side: LowerBoundSide::SectionWeylFixed,
            upper,
            sets: sets
                .iter()
                .map(|s| format!("V_{} around {}", s.index, s.center))
                .collect(),
            covering,
            equivariance,
            star_shape,
            injectivity,
            exact: lower == upper,
            conclusion: format!(
                "cat_SU({})(SU({})) = {} for the conjugation action",
                n + 1,
                n + 1,
                n + 1
            ),
        })
    }
}

/// Sorted tuples `u_1 <= ... <= u_{n+1}` in `[0, m)` with sum divisible by
/// `m`; the last coordinate is resolved directly from the prefix.
fn scan_sorted_tuples(
    m: i128,
    n: usize,
    prefix: &mut Vec<i128>,
    visit: &mut impl FnMut(&[i128]),
) {
    if prefix.len() == n {
        let partial: i128 = prefix.iter().sum();
        let need = (-partial).rem_euclid(m);
        let lo = *prefix.last().unwrap_or(&0);
        if need >= lo {
            prefix.push(need);
            visit(prefix);
            prefix.pop();
        }
        return;
    }
    let lo = *prefix.last().unwrap_or(&0);
    for u in lo..m {
        prefix.push(u);
        scan_sorted_tuples(m, n, prefix, visit);
        prefix.pop();
    }
}

/// Nonzero `{-1,0,1}` vectors with zero sum.
fn enumerate_steps(
    step: &mut Vec<i128>,
    idx: usize,
    sum: i128,
    visit: &mut impl FnMut(&[i128]),
) {
    if idx == step.len() {
        if sum == 0 && step.iter().any(|&x| x != 0) {
            visit(step);
        }
        return;
    }
    for v in [-1i128, 0, 1] {
        step[idx] = v;
        enumerate_steps(step, idx + 1, sum + v, visit);
    }
    step[idx] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn model(n: usize) -> TorusModel {
        TorusModel::with_defaults(n).unwrap()
    }

    #[test]
    fn canonicalization_is_idempotent_and_sum_checked() {
        let p = TorusPoint::new(vec![rat(5, 4), rat(-1, 4), rat(1, 1)]).unwrap();
        assert_eq!(p.coords(), &[rat(1, 4), rat(3, 4), rat(0, 1)]);
        let again = TorusPoint::new(p.coords().to_vec()).unwrap();
        assert_eq!(p, again);
        assert!(TorusPoint::new(vec![rat(1, 3), rat(1, 3)]).is_err());
    }

    #[test]
    fn fixed_points_of_the_circle_model() {
        let m = model(1);
        let fps = m.verify_fixed_points().unwrap();
        assert_eq!(fps.len(), 2);
        assert_eq!(fps[0].coords(), &[rat(0, 1), rat(0, 1)]);
        assert_eq!(fps[1].coords(), &[rat(1, 2), rat(1, 2)]);
    }

    #[test]
    fn cover_has_one_set_per_fixed_point() {
        assert_eq!(model(1).generate_cover().len(), 2);
        assert_eq!(model(2).generate_cover().len(), 3);
        assert_eq!(model(5).generate_cover().len(), 6);
    }

    #[test]
    fn centers_are_members_of_their_own_sets() {
        for n in 1..=3 {
            let m = model(n);
            for k in 0..=n {
                assert!(m.membership(k, &m.center(k)), "n={n} k={k}");
            }
        }
    }

    #[test]
    fn origin_is_excluded_from_the_far_set() {
        let m = model(1);
        let origin = TorusPoint::new(vec![rat(0, 1), rat(0, 1)]).unwrap();
        assert!(m.membership(0, &origin));
        assert!(!m.membership(1, &origin));
    }

    #[test]
    fn contract_is_identity_at_zero_and_center_at_one() {
        let m = model(2);
        let p = TorusPoint::new(vec![rat(5, 12), rat(3, 12), rat(4, 12)]).unwrap();
        assert!(m.membership(1, &p));
        assert_eq!(m.contract(1, &p, rat(0, 1)).unwrap(), p);
        assert_eq!(m.contract(1, &p, rat(1, 1)).unwrap(), m.center(1));
        assert!(m.contract(1, &p, rat(3, 2)).is_err());
    }

    #[test]
    fn contraction_composes_along_straight_lines() {
        let m = model(2);
        let p = TorusPoint::new(vec![rat(5, 12), rat(3, 12), rat(4, 12)]).unwrap();
        let s = rat(1, 3);
        let t = rat(1, 2);
        let mid = m.contract(1, &p, s).unwrap();
        let lhs = m.contract(1, &mid, t).unwrap();
        let rhs = m.contract(1, &p, s + (rat(1, 1) - s) * t).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn transposition_equivariance_at_a_specific_point() {
        let m = model(2);
        let p = TorusPoint::new(vec![rat(5, 12), rat(3, 12), rat(4, 12)]).unwrap();
        let g = Perm::from_cycles(3, &[vec![0, 1]]).unwrap();
        let t = rat(1, 2);
        let lhs = m.contract(1, &p.acted(&g), t).unwrap();
        let rhs = m.contract(1, &p, t).unwrap().acted(&g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_commutes_with_canonicalization() {
        let raw = vec![rat(7, 4), rat(-5, 12), rat(-1, 3)];
        let g = Perm::from_cycles(3, &[vec![0, 1, 2]]).unwrap();
        let canonical_first = TorusPoint::new(raw.clone()).unwrap().acted(&g);
        let mut permuted = vec![rat(0, 1); 3];
        for (i, c) in raw.iter().enumerate() {
            permuted[g.apply(i as u32) as usize] = *c;
        }
        let act_first = TorusPoint::new(permuted).unwrap();
        assert_eq!(canonical_first, act_first);
    }

    #[test]
    fn slack_is_a_symmetric_function_of_coordinates() {
        let m = model(2);
        let p = TorusPoint::new(vec![rat(1, 12), rat(7, 12), rat(4, 12)]).unwrap();
        for g in m.group().elements() {
            let q = p.acted(g);
            for k in 0..=2 {
                assert_eq!(m.slack(k, &p), m.slack(k, &q));
            }
        }
    }

    #[test]
    fn equivariance_verifier_passes_defaults() {
        for n in 1..=2 {
            model(n).verify_equivariance(6).unwrap();
        }
    }

    #[test]
    fn star_shape_verifier_passes_defaults() {
        for n in 1..=2 {
            model(n).verify_star_shape(8).unwrap();
        }
    }

    #[test]
    fn covering_grid_n1_mesh_32_has_margin_at_least_a_unit() {
        let m = model(1);
        match m.verify_covering_grid(rat(1, 32)).unwrap() {
            CoveringReport::Grid { margin, points, .. } => {
                assert!(margin >= rat(1, 32), "margin {margin}");
                // sorted representatives of the 32 grid points
                assert_eq!(points, 17);
            }
            other => panic!("expected grid report, got {other:?}"),
        }
    }

    #[test]
    fn covering_grid_n2_mesh_24_passes() {
        let m = model(2);
        match m.verify_covering_grid(rat(1, 24)).unwrap() {
            CoveringReport::Grid { margin, .. } => assert!(margin.is_positive()),
            other => panic!("expected grid report, got {other:?}"),
        }
    }

    #[test]
    fn default_grid_margin_is_the_facet_slack() {
        // the worst grid points sit on cell facets, where the slack of the
        // inflated cell is eta * |r|^2 / 2 with |r|^2 = n/(n+1)
        for n in 1..=3usize {
            let m = model(n);
            let eta = m.inflation();
            let expected = eta * rat(n as i128, n as i128 + 1) / rat(2, 1);
            match m.verify_covering_grid(m.mesh()).unwrap() {
                CoveringReport::Grid { margin, .. } => assert_eq!(margin, expected, "n={n}"),
                other => panic!("expected grid report, got {other:?}"),
            }
        }
    }

    #[test]
    fn injectivity_passes_at_default_inflation() {
        for n in 1..=3 {
            let m = model(n);
            for k in 0..=n {
                let report = m.verify_chart_injectivity(k, 8).unwrap();
                assert!(report.structural);
                assert!(report.lattice_vectors > 0);
            }
        }
    }

    #[test]
    fn over_inflated_charts_collide() {
        // inflation beyond 1/n makes the lift offsets reach one half
        let m = TorusModel::new(2, rat(3, 4), rat(0, 1), rat(1, 24)).unwrap();
        let err = m.verify_chart_injectivity(1, 4).unwrap_err();
        match err {
            WeylError::Collision { lattice_step, .. } => {
                assert_eq!(lattice_step.iter().sum::<i128>(), 0);
                assert!(lattice_step.iter().any(|&x| x != 0));
            }
            other => panic!("expected collision, got {other:?}"),
        }
    }

    #[test]
    fn certify_small_dimensions_exactly() {
        for n in 1..=2 {
            let bounds = model(n).certify().unwrap();
            assert_eq!(bounds.lower, n + 1);
            assert_eq!(bounds.upper, n + 1);
            assert!(bounds.exact);
            assert!(bounds.covering.margin().is_positive());
        }
    }
}
