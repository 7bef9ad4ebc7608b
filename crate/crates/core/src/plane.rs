//! Colorings of the plane: horizontal and diagonal lifts of line colorings,
//! periodic grid colorings, their certification against a triangle, a
//! falsification sweep for arbitrary colorings, and the period/anti-period
//! sign algebra.

use std::ops::{Add, Neg};

use rayon::prelude::*;

use crate::geometry::{lattice, Point, Triangle};
use crate::line::{avoids_distances, Avoidance, DistanceSet, LineColoring, LineError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PlaneError {
    #[error("diagonal route needs a non-degenerate triangle (diagonal distance set contains 0)")]
    DegenerateDiagonalRoute,
    #[error("coloring is not a horizontal or diagonal lift")]
    NotALift,
    #[error("sampling grid is empty (window and step must be positive)")]
    EmptyGrid,
    #[error("shift label missing: only periods and anti-periods combine")]
    UnlabeledInput,
    #[error("grid coloring table must be a non-empty rectangle with contiguous colors")]
    BadGridTable,
    #[error("grid cell sizes must be positive")]
    NonPositiveCell,
    #[error(transparent)]
    Line(#[from] LineError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LiftAxis {
    Horizontal,
    Diagonal,
}

/// Periodic coloring by rectangular cells: the cell containing `(x, y)` is
/// `(floor(x / cell_w) mod cols, floor(y / cell_h) mod rows)` and
/// `table[row][col]` is its color.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GridColoring<S> {
    cell_w: S,
    cell_h: S,
    table: Vec<Vec<usize>>,
}

impl<S: Scalar> GridColoring<S> {
    pub fn new(cell_w: S, cell_h: S, table: Vec<Vec<usize>>) -> Result<Self, PlaneError> {
        if !cell_w.is_positive() || !cell_h.is_positive() {
            return Err(PlaneError::NonPositiveCell);
        }
        let cols = table.first().map_or(0, Vec::len);
        if cols == 0 || table.iter().any(|r| r.len() != cols) {
            return Err(PlaneError::BadGridTable);
        }
        let k = table.iter().flatten().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; k];
        table.iter().flatten().for_each(|&c| seen[c] = true);
        if seen.contains(&false) {
            return Err(PlaneError::BadGridTable);
        }
        Ok(GridColoring { cell_w, cell_h, table })
    }

    pub fn cell_w(&self) -> &S {
        &self.cell_w
    }

    pub fn cell_h(&self) -> &S {
        &self.cell_h
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn cols(&self) -> usize {
        self.table[0].len()
    }

    pub fn rows(&self) -> usize {
        self.table.len()
    }

    /// Column partition of one x-period as a line coloring whose "colors" are
    /// the column indices; same for rows.
    fn axis_partition(cell: &S, count: usize) -> LineColoring<S> {
        let breaks = (0..count).map(|i| S::from_int(i as i64) * cell.clone()).collect();
        LineColoring::new(S::from_int(count as i64) * cell.clone(), breaks, (0..count).collect())
            .expect("uniform partition is valid")
    }

    fn columns(&self) -> LineColoring<S> {
        Self::axis_partition(&self.cell_w, self.cols())
    }

    fn rows_partition(&self) -> LineColoring<S> {
        Self::axis_partition(&self.cell_h, self.rows())
    }

    pub fn eval(&self, p: &Point<S>) -> usize {
        let col = self.columns().eval(&p.x);
        let row = self.rows_partition().eval(&p.y);
        self.table[row][col]
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PlaneKind<S> {
    Horizontal(LineColoring<S>),
    Diagonal(LineColoring<S>),
    Grid(GridColoring<S>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PlaneColoring<S> {
    kind: PlaneKind<S>,
}

impl<S: Scalar> PlaneColoring<S> {
    pub fn grid(grid: GridColoring<S>) -> Self {
        PlaneColoring { kind: PlaneKind::Grid(grid) }
    }

    /// One color everywhere, as a horizontal lift of the constant coloring.
    pub fn constant() -> Self {
        lift(&LineColoring::constant(), LiftAxis::Horizontal)
    }

    pub fn kind(&self) -> &PlaneKind<S> {
        &self.kind
    }

    pub fn color_count(&self) -> usize {
        match &self.kind {
            PlaneKind::Horizontal(c) | PlaneKind::Diagonal(c) => c.color_count(),
            PlaneKind::Grid(g) => g.table.iter().flatten().max().map_or(0, |m| m + 1),
        }
    }

    pub fn eval(&self, p: &Point<S>) -> usize {
        match &self.kind {
            PlaneKind::Horizontal(c) => c.eval(&p.y),
            PlaneKind::Diagonal(c) => c.eval(&(p.x.clone() + p.y.clone())),
            PlaneKind::Grid(g) => g.eval(p),
        }
    }
}

/// Anything that assigns a color to every point of the plane.
pub trait PlaneColor<S>: Sync {
    fn color_at(&self, p: &Point<S>) -> usize;
}

impl<S: Scalar> PlaneColor<S> for PlaneColoring<S> {
    fn color_at(&self, p: &Point<S>) -> usize {
        self.eval(p)
    }
}

impl<S, F> PlaneColor<S> for F
where
    F: Fn(&Point<S>) -> usize + Sync,
{
    fn color_at(&self, p: &Point<S>) -> usize {
        self(p)
    }
}

/// `C(x, y) = C1(y)` for horizontal, `C(x, y) = C1(x + y)` for diagonal.
pub fn lift<S: Scalar>(line: &LineColoring<S>, axis: LiftAxis) -> PlaneColoring<S> {
    let kind = match axis {
        LiftAxis::Horizontal => PlaneKind::Horizontal(line.clone()),
        LiftAxis::Diagonal => PlaneKind::Diagonal(line.clone()),
    };
    PlaneColoring { kind }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LiftCertificate<S> {
    /// The line coloring avoids `distances`, hence the lift has no
    /// monochromatic copy.
    CopyFree { axis: LiftAxis, distances: DistanceSet<S> },
    /// The sufficient condition fails; `violation` is the 1D witness.
    NotCertified { axis: LiftAxis, distances: DistanceSet<S>, violation: Avoidance<S> },
}

impl<S> LiftCertificate<S> {
    pub fn is_copy_free(&self) -> bool {
        matches!(self, LiftCertificate::CopyFree { .. })
    }
}

/// A horizontal lift is copy-free when its line coloring avoids the side
/// lengths; a diagonal lift when it avoids the diagonal set.
pub fn certify_lift<S: Scalar>(
    coloring: &PlaneColoring<S>,
    t: &Triangle<S>,
) -> Result<LiftCertificate<S>, PlaneError> {
    let (axis, line, dists) = match &coloring.kind {
        PlaneKind::Horizontal(c) => (LiftAxis::Horizontal, c, t.side_set()),
        PlaneKind::Diagonal(c) => {
            if t.is_degenerate() {
                return Err(PlaneError::DegenerateDiagonalRoute);
            }
            (LiftAxis::Diagonal, c, t.diag_set())
        }
        PlaneKind::Grid(_) => return Err(PlaneError::NotALift),
    };
    let distances = DistanceSet::new(dists.to_vec())?;
    match avoids_distances(line, &distances)? {
        Avoidance::Avoids => Ok(LiftCertificate::CopyFree { axis, distances }),
        violation => Ok(LiftCertificate::NotCertified { axis, distances, violation }),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SampleVerdict<S> {
    /// No monochromatic copy among `copies_checked` grid copies. This is
    /// evidence, not a certificate.
    NoCounterexample { copies_checked: u64, grid_side: u64 },
    /// Lexicographically first monochromatic copy (by its smallest vertex).
    MonochromaticCopy { points: [Point<S>; 3], color: usize, copies_checked: u64 },
}

impl<S> SampleVerdict<S> {
    pub fn found_counterexample(&self) -> bool {
        matches!(self, SampleVerdict::MonochromaticCopy { .. })
    }
}

/// Checks every copy of `t` on the grid `(step Z)^2 ∩ [0, window]^2` for
/// monochromaticity.
pub fn sample_verify<S: Scalar, C: PlaneColor<S> + ?Sized>(
    coloring: &C,
    t: &Triangle<S>,
    window: &S,
    step: &S,
) -> Result<SampleVerdict<S>, PlaneError> {
    if !step.is_positive() || !window.is_positive() {
        return Err(PlaneError::EmptyGrid);
    }
    let per_axis = (window.clone() / step.clone()).floor();
    let side = per_axis.to_i64_exact().ok_or(PlaneError::EmptyGrid)? + 1;
    // In grid units the triangle must have integral sides, otherwise no
    // three grid points realise it.
    let sides = match t.scaled(&(S::one() / step.clone())).ok().and_then(|s| s.integer_sides()) {
        Some(s) => s,
        None => return Ok(SampleVerdict::NoCounterexample { copies_checked: 0, grid_side: side as u64 }),
    };
    let n = side as usize;
    let colors: Vec<usize> = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let (i, j) = ((idx / n) as i64, (idx % n) as i64);
            coloring.color_at(&Point::new(S::from_int(i) * step.clone(), S::from_int(j) * step.clone()))
        })
        .collect();
    // Offsets with both other vertices lexicographically after the origin,
    // so each copy is visited once, from its smallest vertex.
    let offsets: Vec<_> = lattice::copy_offsets(sides, false)
        .into_iter()
        .filter(|&(o2, o3)| o2 > (0, 0) && o3 > (0, 0))
        .collect();
    let inside = |p: lattice::IPoint| p.0 >= 0 && p.1 >= 0 && p.0 < side && p.1 < side;
    let at = |p: lattice::IPoint| colors[p.0 as usize * n + p.1 as usize];
    let (count, first) = (0..n * n)
        .into_par_iter()
        .map(|idx| {
            let z1 = ((idx / n) as i64, (idx % n) as i64);
            let c1 = colors[idx];
            let mut count = 0u64;
            let mut first = None;
            for &(o2, o3) in &offsets {
                let z2 = (z1.0 + o2.0, z1.1 + o2.1);
                let z3 = (z1.0 + o3.0, z1.1 + o3.1);
                if !inside(z2) || !inside(z3) {
                    continue;
                }
                count += 1;
                if first.is_none() && at(z2) == c1 && at(z3) == c1 {
                    first = Some((z1, z2, z3, c1));
                }
            }
            (count, first)
        })
        .reduce(|| (0, None), |a, b| (a.0 + b.0, a.1.or(b.1)));
    let to_point = |p: lattice::IPoint| {
        Point::new(S::from_int(p.0) * step.clone(), S::from_int(p.1) * step.clone())
    };
    Ok(match first {
        Some((z1, z2, z3, color)) => SampleVerdict::MonochromaticCopy {
            points: [to_point(z1), to_point(z2), to_point(z3)],
            color,
            copies_checked: count,
        },
        None => SampleVerdict::NoCounterexample { copies_checked: count, grid_side: side as u64 },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ShiftVector<S> {
    pub dx: S,
    pub dy: S,
}

impl<S: Scalar> ShiftVector<S> {
    pub fn new(dx: S, dy: S) -> Self {
        ShiftVector { dx, dy }
    }

    pub fn from_ints(dx: i64, dy: i64) -> Self {
        ShiftVector::new(S::from_int(dx), S::from_int(dy))
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }
}

impl<S: Scalar> Add for ShiftVector<S> {
    type Output = Self;

    fn add(self, o: Self) -> Self {
        ShiftVector::new(self.dx + o.dx, self.dy + o.dy)
    }
}

impl<S: Scalar> Neg for ShiftVector<S> {
    type Output = Self;

    fn neg(self) -> Self {
        ShiftVector::new(-self.dx, -self.dy)
    }
}

impl<S: Scalar> std::fmt::Display for ShiftVector<S> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.dx, self.dy)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ShiftParity<S> {
    Period,
    AntiPeriod,
    /// `same` is a pair `(p, p + v)` of equal colors, `different` a pair of
    /// distinct colors.
    Neither { same: (Point<S>, Point<S>), different: (Point<S>, Point<S>) },
}

/// Label of a shift whose parity is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShiftLabel {
    Period,
    AntiPeriod,
}

impl ShiftLabel {
    /// Sign multiplication: equal labels give a period.
    pub fn combine(self, other: ShiftLabel) -> ShiftLabel {
        if self == other {
            ShiftLabel::Period
        } else {
            ShiftLabel::AntiPeriod
        }
    }
}

impl<S> ShiftParity<S> {
    pub fn label(&self) -> Option<ShiftLabel> {
        match self {
            ShiftParity::Period => Some(ShiftLabel::Period),
            ShiftParity::AntiPeriod => Some(ShiftLabel::AntiPeriod),
            ShiftParity::Neither { .. } => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabeledShift<S> {
    pub vector: ShiftVector<S>,
    pub label: Option<ShiftLabel>,
}

impl<S: Scalar> LabeledShift<S> {
    pub fn new(vector: ShiftVector<S>, label: ShiftLabel) -> Self {
        LabeledShift { vector, label: Some(label) }
    }

    /// `-v` keeps the label: colors at `x - v` and `x` relate exactly as at
    /// `x` and `x + v`.
    pub fn negated(&self) -> Self {
        LabeledShift { vector: -self.vector.clone(), label: self.label }
    }
}

/// Vector sum, labels multiply like signs.
pub fn combine_shifts<S: Scalar>(
    p1: &LabeledShift<S>,
    p2: &LabeledShift<S>,
) -> Result<LabeledShift<S>, PlaneError> {
    let (l1, l2) = match (p1.label, p2.label) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(PlaneError::UnlabeledInput),
    };
    Ok(LabeledShift::new(p1.vector.clone() + p2.vector.clone(), l1.combine(l2)))
}

/// Classifies pairs of intervals meeting under a 1D shift.
fn classify<S: Scalar>(
    pairs: impl IntoIterator<Item = (bool, Point<S>, Point<S>)>,
) -> ShiftParity<S> {
    let mut same = None;
    let mut different = None;
    for (eq, p, q) in pairs {
        if eq {
            same.get_or_insert((p, q));
        } else {
            different.get_or_insert((p, q));
        }
        if same.is_some() && different.is_some() {
            break;
        }
    }
    match (same, different) {
        (Some(same), Some(different)) => ShiftParity::Neither { same, different },
        (Some(_), None) => ShiftParity::Period,
        (None, Some(_)) => ShiftParity::AntiPeriod,
        (None, None) => unreachable!("a shift always maps some interval somewhere"),
    }
}

/// Exact decision whether `v` preserves every color (period), changes every
/// color (anti-period) or neither.
pub fn shift_parity<S: Scalar>(coloring: &PlaneColoring<S>, v: &ShiftVector<S>) -> ShiftParity<S> {
    match &coloring.kind {
        PlaneKind::Horizontal(c) => {
            let pairs = c.shifted_overlaps(&v.dy).into_iter().map(|(i, j, y)| {
                let p = Point::new(S::zero(), y);
                let q = p.translate(&v.dx, &v.dy);
                (c.colors()[i] == c.colors()[j], p, q)
            });
            classify(pairs.collect::<Vec<_>>())
        }
        PlaneKind::Diagonal(c) => {
            let s = v.dx.clone() + v.dy.clone();
            let pairs = c.shifted_overlaps(&s).into_iter().map(|(i, j, x)| {
                let p = Point::new(x, S::zero());
                let q = p.translate(&v.dx, &v.dy);
                (c.colors()[i] == c.colors()[j], p, q)
            });
            classify(pairs.collect::<Vec<_>>())
        }
        PlaneKind::Grid(g) => {
            let xs = g.columns().shifted_overlaps(&v.dx);
            let ys = g.rows_partition().shifted_overlaps(&v.dy);
            let mut pairs = Vec::with_capacity(xs.len() * ys.len());
            for (c0, c1, x) in &xs {
                for (r0, r1, y) in &ys {
                    let p = Point::new(x.clone(), y.clone());
                    let q = p.translate(&v.dx, &v.dy);
                    pairs.push((g.table[*r0][*c0] == g.table[*r1][*c1], p, q));
                }
            }
            classify(pairs)
        }
    }
}

/// Best bounds on the number of colors the plane needs for `t` obtainable
/// from lifted residue colorings (upper) and one explicit copy (lower).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneChromaticBounds<S> {
    pub lower: usize,
    /// A copy of `t`, which forces at least two colors.
    pub copy: [Point<S>; 3],
    pub upper: Option<usize>,
    /// The certified lift achieving `upper`.
    pub witness: Option<(PlaneColoring<S>, LiftCertificate<S>)>,
}

impl<S> PlaneChromaticBounds<S> {
    pub fn is_exact(&self) -> bool {
        self.upper == Some(self.lower)
    }
}

/// Runs the residue search on both the side route and the diagonal route,
/// lifts the better coloring and certifies it.
pub fn plane_chromatic_bounds<S: Scalar>(
    t: &Triangle<S>,
    max_period: usize,
) -> Result<PlaneChromaticBounds<S>, PlaneError> {
    // (0, 0), (c, 0), (b, a) realise the distances c, b, a.
    let copy = [
        Point::new(S::zero(), S::zero()),
        Point::new(t.c().clone(), S::zero()),
        Point::new(t.b().clone(), t.a().clone()),
    ];
    debug_assert!(crate::geometry::is_copy(&copy[0], &copy[1], &copy[2], t));

    let mut routes = vec![(LiftAxis::Horizontal, t.side_set())];
    if !t.is_degenerate() {
        routes.push((LiftAxis::Diagonal, t.diag_set()));
    }
    let mut best: Option<(usize, PlaneColoring<S>, LiftCertificate<S>)> = None;
    for (axis, dists) in routes {
        let reduction = crate::line::rational_distance_reduction(&DistanceSet::new(dists.to_vec())?)?;
        let upper = match crate::line::chi_line_upper::<S>(&reduction.integers, max_period) {
            Ok(u) => u,
            Err(LineError::NoColoringWithinBudget { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        // Undo the integer scaling before lifting.
        let line = upper.coloring.scaled(&(S::one() / reduction.scale.clone()));
        let plane = lift(&line, axis);
        let cert = certify_lift(&plane, t)?;
        if cert.is_copy_free() && best.as_ref().is_none_or(|b| upper.value < b.0) {
            best = Some((upper.value, plane, cert));
        }
    }
    let (upper, witness) = match best {
        Some((k, p, c)) => (Some(k), Some((p, c))),
        None => (None, None),
    };
    Ok(PlaneChromaticBounds { lower: 2, copy, upper, witness })
}
