//! Orbit-type stratification and the lower bounds it certifies.
//!
//! Open simplices of a regular [`GComplex`] are partitioned by orbit type;
//! each stratum is the saturation of a face-incidence component of one
//! orbit-type set under the group. Strata carry an incidence partial order
//! (closure containment). A stratum is locally minimal exactly when it is
//! closed, equivalently minimal in the incidence order; both facts are
//! computed independently so they can be cross-checked. The count of locally
//! minimal strata and the count of fixed-point components are each certified
//! lower bounds for the equivariant category.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::action::{ActionError, GComplex};
use crate::complex::SimplexId;
use crate::perm::SubgroupClass;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrataError {
    Action(ActionError),
    /// A custom hierarchy table violates monotonicity.
    NotMonotone { smaller: usize, larger: usize },
    /// No unique principal (maximal) orbit type among occurring types.
    NoPrincipal,
    /// A hierarchy value is missing for an occurring orbit type.
    MissingValue { class: usize },
}

impl fmt::Display for StrataError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StrataError::Action(e) => write!(f, "{e}"),
            StrataError::NotMonotone { smaller, larger } => write!(
                f,
                "hierarchy not monotone: class {smaller} <= class {larger} but value decreases"
            ),
            StrataError::NoPrincipal => {
                write!(f, "no unique principal orbit type among occurring types")
            }
            StrataError::MissingValue { class } => {
                write!(f, "hierarchy table misses occurring orbit type {class}")
            }
        }
    }
}

impl From<ActionError> for StrataError {
    fn from(e: ActionError) -> Self {
        StrataError::Action(e)
    }
}

/// One G-component of an orbit-type set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratum {
    pub id: usize,
    /// Index into [`StratificationReport::classes`].
    pub class: usize,
    /// Sorted open simplices of the stratum.
    pub simplices: Vec<SimplexId>,
    /// Closure check: is the simplex set face-closed?
    pub is_closed: bool,
}

#[derive(Clone, Debug)]
pub struct StratificationReport {
    /// Occurring orbit types, sorted by canonical key.
    pub classes: Vec<SubgroupClass>,
    pub class_of_simplex: Vec<usize>,
    pub strata: Vec<Stratum>,
    /// Strict incidence pairs `(x, y)` meaning stratum x lies in the closure
    /// of stratum y, x != y.
    pub order: Vec<(usize, usize)>,
    /// Locally minimal strata: minimal in the incidence order.
    pub minimal: Vec<usize>,
    /// Connected components of the fixed subcomplex of the whole group.
    pub fixed_components: Vec<Vec<SimplexId>>,
}

/// Which certificate attains the lower bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LowerCertificate {
    /// Corollary-style bound: components of the fixed-point set, each checked
    /// to lie inside a locally minimal stratum.
    FixedComponents { components: Vec<Vec<SimplexId>> },
    /// Theorem-style bound: the locally minimal strata themselves.
    MinimalStrata { strata: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct LowerBound {
    pub value: usize,
    pub certificate: LowerCertificate,
    /// Every fixed component lies inside some locally minimal stratum.
    pub fixed_components_in_minimal: bool,
}

/// Partition the open simplices into strata and compute the incidence data.
pub fn stratify(gc: &GComplex) -> Result<StratificationReport, StrataError> {
    if !gc.is_regular_action() {
        return Err(StrataError::Action(ActionError::NotRegular));
    }
    let (classes, class_of_simplex) = gc.orbit_type_registry()?;
    let complex = gc.complex();
    let n = complex.simplex_count();

    // union face-incident same-type simplices, then saturate by the action
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut root = x;
        while parent[root] != root {
            root = parent[root];
        }
        let mut cur = x;
        while parent[cur] != root {
            let next = parent[cur];
            parent[cur] = root;
            cur = next;
        }
        root
    }
    let union = |parent: &mut [usize], a: usize, b: usize| {
        let (ra, rb) = (find(parent, a), find(parent, b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            parent[hi] = lo;
        }
    };
    for s in 0..n {
        for f in complex.face_ids(s) {
            if class_of_simplex[f] == class_of_simplex[s] {
                union(&mut parent, f, s);
            }
        }
        for g in 0..gc.group().order() {
            union(&mut parent, s, gc.apply(g, s));
        }
    }
    let mut by_root: BTreeMap<usize, Vec<SimplexId>> = BTreeMap::new();
    for s in 0..n {
        by_root.entry(find(&mut parent, s)).or_default().push(s);
    }
    let mut strata: Vec<Stratum> = Vec::new();
    for (_, simplices) in by_root {
        let class = class_of_simplex[simplices[0]];
        debug_assert!(simplices.iter().all(|&s| class_of_simplex[s] == class));
        let is_closed = complex.is_face_closed(&simplices);
        strata.push(Stratum {
            id: strata.len(),
            class,
            simplices,
            is_closed,
        });
    }

    // incidence order via closure containment
    let closure_of: Vec<BTreeSet<SimplexId>> = strata
        .iter()
        .map(|st| {
            let mut cl: BTreeSet<SimplexId> = st.simplices.iter().copied().collect();
            for &s in &st.simplices {
                cl.extend(complex.face_ids(s));
            }
            cl
        })
        .collect();
    let mut order = Vec::new();
    for (x, stratum) in strata.iter().enumerate() {
        for (y, closure) in closure_of.iter().enumerate() {
            if x != y && stratum.simplices.iter().all(|s| closure.contains(s)) {
                order.push((x, y));
            }
        }
    }
    let minimal: Vec<usize> = (0..strata.len())
        .filter(|&x| order.iter().all(|&(a, b)| !(b == x && a != x)))
        .collect();

    let whole_group: Vec<usize> = (0..gc.group().order()).collect();
    let fixed = gc.fixed_subcomplex(&whole_group);
    let fixed_components = complex.incidence_components(&fixed);

    Ok(StratificationReport {
        classes,
        class_of_simplex,
        strata,
        order,
        minimal,
        fixed_components,
    })
}

/// The certified lower bound from a stratification.
pub fn lower_bound(report: &StratificationReport) -> LowerBound {
    let fixed_in_minimal = report.fixed_components.iter().all(|comp| {
        report.minimal.iter().any(|&m| {
            let set: BTreeSet<SimplexId> = report.strata[m].simplices.iter().copied().collect();
            comp.iter().all(|s| set.contains(s))
        })
    });
    let n_fixed = report.fixed_components.len();
    let n_minimal = report.minimal.len();
    if n_fixed >= n_minimal && n_fixed > 0 {
        LowerBound {
            value: n_fixed,
            certificate: LowerCertificate::FixedComponents {
                components: report.fixed_components.clone(),
            },
            fixed_components_in_minimal: fixed_in_minimal,
        }
    } else {
        LowerBound {
            value: n_minimal,
            certificate: LowerCertificate::MinimalStrata {
                strata: report.minimal.clone(),
            },
            fixed_components_in_minimal: fixed_in_minimal,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HierarchyKind {
    /// Orbit cardinality of a simplex of that type.
    OrbitSize,
    /// Levels counted down from the unique principal type by longest chains.
    ChainFromPrincipal,
    /// Longest chain up from a minimal occurring type, zero-based.
    ChainFromMinimal,
    /// User-supplied table, validated for monotonicity.
    Custom(BTreeMap<usize, u64>),
}

/// A monotone labeling of the occurring orbit types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Hierarchy {
    pub kind: HierarchyKind,
    /// Value per class index of the report.
    pub values: Vec<u64>,
}

impl Hierarchy {
    pub fn value_of_simplex(&self, report: &StratificationReport, s: SimplexId) -> u64 {
        self.values[report.class_of_simplex[s]]
    }
}

/// Strict order among occurring classes: `i < j` iff type i <= type j and not
/// conversely. Canonical keys make equality unambiguous.
fn strict_type_pairs(classes: &[SubgroupClass]) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..classes.len() {
        for j in 0..classes.len() {
            if i != j && classes[i].type_leq(&classes[j]) {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn build_hierarchy(
    gc: &GComplex,
    report: &StratificationReport,
    kind: HierarchyKind,
) -> Result<Hierarchy, StrataError> {
    let classes = &report.classes;
    let pairs = strict_type_pairs(classes);
    let values: Vec<u64> = match &kind {
        HierarchyKind::OrbitSize => classes
            .iter()
            .map(|c| (gc.group().order() / c.subgroup_order()) as u64)
            .collect(),
        HierarchyKind::ChainFromPrincipal => {
            // the principal type must be the unique maximum
            let maxima: Vec<usize> = (0..classes.len())
                .filter(|&i| {
                    (0..classes.len()).all(|j| j == i || classes[j].type_leq(&classes[i]))
                })
                .collect();
            let &principal = match maxima.as_slice() {
                [p] => p,
                _ => return Err(StrataError::NoPrincipal),
            };
            let mut longest_to_principal = vec![1u64; classes.len()];
            // longest chains in a finite poset: iterate relaxation
            for _ in 0..classes.len() {
                for &(a, b) in &pairs {
                    let via = longest_to_principal[b] + 1;
                    if longest_to_principal[a] < via {
                        longest_to_principal[a] = via;
                    }
                }
            }
            let l_max = *longest_to_principal.iter().max().unwrap_or(&1);
            debug_assert_eq!(longest_to_principal[principal], 1);
            longest_to_principal
                .iter()
                .map(|&l| l_max - l)
                .collect()
        }
        HierarchyKind::ChainFromMinimal => {
            let mut longest_from_minimal = vec![1u64; classes.len()];
            for _ in 0..classes.len() {
                for &(a, b) in &pairs {
                    let via = longest_from_minimal[a] + 1;
                    if longest_from_minimal[b] < via {
                        longest_from_minimal[b] = via;
                    }
                }
            }
            longest_from_minimal.iter().map(|&l| l - 1).collect()
        }
        HierarchyKind::Custom(table) => {
            let mut values = Vec::with_capacity(classes.len());
            for i in 0..classes.len() {
                match table.get(&i) {
                    Some(&v) => values.push(v),
                    None => return Err(StrataError::MissingValue { class: i }),
                }
            }
            values
        }
    };
    for &(a, b) in &pairs {
        if values[a] > values[b] {
            return Err(StrataError::NotMonotone {
                smaller: a,
                larger: b,
            });
        }
    }
    Ok(Hierarchy { kind, values })
}

/// Cumulative filtration levels: for each occurring value v in ascending
/// order, all simplices whose type value is at most v.
pub fn hierarchy_filtration(
    report: &StratificationReport,
    h: &Hierarchy,
) -> Vec<(u64, Vec<SimplexId>)> {
    let mut levels: Vec<u64> = h.values.clone();
    levels.sort_unstable();
    levels.dedup();
    levels
        .into_iter()
        .map(|v| {
            let simplices: Vec<SimplexId> = (0..report.class_of_simplex.len())
                .filter(|&s| h.values[report.class_of_simplex[s]] <= v)
                .collect();
            (v, simplices)
        })
        .collect()
}

/// Discrete lower semicontinuity: along every face pair the extended value
/// does not increase from a simplex to its faces.
pub fn check_semicontinuity(gc: &GComplex, report: &StratificationReport, h: &Hierarchy) -> bool {
    let complex = gc.complex();
    for s in 0..complex.simplex_count() {
        for f in complex.face_ids(s) {
            if h.value_of_simplex(report, f) > h.value_of_simplex(report, s) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::Complex;
    use crate::perm::{Perm, PermGroup, DEFAULT_ORDER_CAP};

    fn square_reflection() -> GComplex {
        let c = Complex::from_maximal(4, &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3]])
            .unwrap();
        let g = PermGroup::from_generators(
            4,
            vec![Perm::from_cycles(4, &[vec![1, 3]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        GComplex::new(c, g).unwrap().regularize().unwrap()
    }

    fn hexagon_rot3() -> GComplex {
        let edges: Vec<Vec<u32>> = (0..6u32).map(|i| vec![i, (i + 1) % 6]).collect();
        let c = Complex::from_maximal(6, &edges).unwrap();
        let g = PermGroup::from_generators(
            6,
            vec![Perm::from_cycles(6, &[vec![0, 2, 4], vec![1, 3, 5]]).unwrap()],
            DEFAULT_ORDER_CAP,
        )
        .unwrap();
        GComplex::new(c, g).unwrap().regularize().unwrap()
    }

    fn connected_trivial() -> GComplex {
        let c = Complex::from_maximal(3, &[vec![0, 1], vec![1, 2]]).unwrap();
        let g = PermGroup::trivial(3);
        GComplex::new(c, g).unwrap()
    }

    #[test]
    fn trivial_group_gives_one_closed_stratum() {
        let gc = connected_trivial();
        let report = stratify(&gc).unwrap();
        assert_eq!(report.strata.len(), 1);
        assert!(report.strata[0].is_closed);
        assert_eq!(report.minimal, vec![0]);
        assert_eq!(report.fixed_components.len(), 1);
        assert_eq!(lower_bound(&report).value, 1);
    }

    #[test]
    fn reflected_square_has_three_strata_and_lower_bound_two() {
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        assert_eq!(report.strata.len(), 3);
        let closed: Vec<bool> = report.strata.iter().map(|s| s.is_closed).collect();
        assert_eq!(closed.iter().filter(|&&c| c).count(), 2);
        assert_eq!(report.minimal.len(), 2);
        assert_eq!(report.fixed_components.len(), 2);
        let lb = lower_bound(&report);
        assert_eq!(lb.value, 2);
        assert!(matches!(
            lb.certificate,
            LowerCertificate::FixedComponents { .. }
        ));
        assert!(lb.fixed_components_in_minimal);
    }

    #[test]
    fn free_rotation_has_one_stratum() {
        let gc = hexagon_rot3();
        let report = stratify(&gc).unwrap();
        assert_eq!(report.strata.len(), 1);
        assert!(report.strata[0].is_closed);
        assert_eq!(lower_bound(&report).value, 1);
        assert!(matches!(
            lower_bound(&report).certificate,
            LowerCertificate::MinimalStrata { .. }
        ));
    }

    #[test]
    fn closedness_equals_order_minimality() {
        for gc in [square_reflection(), hexagon_rot3(), connected_trivial()] {
            let report = stratify(&gc).unwrap();
            for st in &report.strata {
                assert_eq!(st.is_closed, report.minimal.contains(&st.id));
            }
        }
    }

    #[test]
    fn strata_partition_the_open_simplices() {
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        let mut seen = vec![0usize; gc.complex().simplex_count()];
        for st in &report.strata {
            for &s in &st.simplices {
                seen[s] += 1;
            }
        }
        assert!(seen.iter().all(|&c| c == 1));
    }

    #[test]
    fn orbit_size_hierarchy_on_reflected_square() {
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        let h = build_hierarchy(&gc, &report, HierarchyKind::OrbitSize).unwrap();
        // fixed simplices have orbit size 1, free ones 2
        let filtration = hierarchy_filtration(&report, &h);
        assert_eq!(filtration.len(), 2);
        assert_eq!(filtration[0].0, 1);
        let fixed_level = &filtration[0].1;
        let whole: Vec<usize> = (0..gc.group().order()).collect();
        assert_eq!(*fixed_level, gc.fixed_subcomplex(&whole));
        assert!(check_semicontinuity(&gc, &report, &h));
    }

    #[test]
    fn trivial_group_hierarchy_is_constant() {
        let gc = connected_trivial();
        let report = stratify(&gc).unwrap();
        let h = build_hierarchy(&gc, &report, HierarchyKind::OrbitSize).unwrap();
        assert_eq!(hierarchy_filtration(&report, &h).len(), 1);
    }

    #[test]
    fn chain_hierarchies_on_reflected_square() {
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        let h = build_hierarchy(&gc, &report, HierarchyKind::ChainFromPrincipal).unwrap();
        // two occurring types: fixed -> 0, free (principal) -> 1
        let mut values = h.values.clone();
        values.sort_unstable();
        assert_eq!(values, vec![0, 1]);
        let h2 = build_hierarchy(&gc, &report, HierarchyKind::ChainFromMinimal).unwrap();
        assert_eq!(h.values, h2.values);
        assert!(check_semicontinuity(&gc, &report, &h));
        assert!(check_semicontinuity(&gc, &report, &h2));
    }

    #[test]
    fn custom_tables_are_validated() {
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        let good = build_hierarchy(&gc, &report, HierarchyKind::OrbitSize).unwrap();
        // reversing a nonconstant monotone table breaks monotonicity
        let max = *good.values.iter().max().unwrap();
        let reversed: BTreeMap<usize, u64> = good
            .values
            .iter()
            .enumerate()
            .map(|(i, &v)| (i, max - v))
            .collect();
        let err = build_hierarchy(&gc, &report, HierarchyKind::Custom(reversed)).unwrap_err();
        assert!(matches!(err, StrataError::NotMonotone { .. }));
    }

    #[test]
    fn fixed_components_lie_in_minimal_strata() {
        for gc in [square_reflection(), hexagon_rot3()] {
            let report = stratify(&gc).unwrap();
            assert!(lower_bound(&report).fixed_components_in_minimal);
        }
    }

    #[test]
    fn strictly_incident_strata_meet_only_through_boundaries() {
        // the smaller stratum lies in the closure of the larger minus itself
        let gc = square_reflection();
        let report = stratify(&gc).unwrap();
        for &(x, y) in &report.order {
            let closure: alloc::collections::BTreeSet<_> = report.strata[y]
                .simplices
                .iter()
                .copied()
                .chain(
                    report.strata[y]
                        .simplices
                        .iter()
                        .flat_map(|&s| gc.complex().face_ids(s)),
                )
                .collect();
            let larger: alloc::collections::BTreeSet<_> =
                report.strata[y].simplices.iter().copied().collect();
            for &s in &report.strata[x].simplices {
                assert!(closure.contains(&s));
                assert!(!larger.contains(&s));
            }
        }
        assert!(!report.order.is_empty());
    }

    #[test]
    fn type_downsets_are_face_closed() {
        // the union of strata with type at most a fixed class is closed
        for gc in [square_reflection(), hexagon_rot3(), connected_trivial()] {
            let report = stratify(&gc).unwrap();
            for bound in 0..report.classes.len() {
                let downset: Vec<_> = report
                    .strata
                    .iter()
                    .filter(|st| report.classes[st.class].type_leq(&report.classes[bound]))
                    .flat_map(|st| st.simplices.iter().copied())
                    .collect();
                assert!(gc.complex().is_face_closed(&downset));
            }
        }
    }
}
