//! Periodic piecewise-constant colorings of the real line and exact
//! distance-avoidance checks, plus chromatic bounds for integer distance
//! graphs.

use rayon::prelude::*;

use crate::scalar::{denominator_lcm, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LineError {
    #[error("period must be positive")]
    NonPositivePeriod,
    #[error("breakpoints must start at 0, increase strictly and stay below the period")]
    BadBreakpoints,
    #[error("expected one color per interval ({intervals} intervals, {colors} colors)")]
    ColorCountMismatch { intervals: usize, colors: usize },
    #[error("color indices must be contiguous from 0")]
    NonContiguousColors,
    #[error("distances must be nonnegative")]
    NegativeDistance,
    #[error("distance set contains 0: every point is at distance 0 from itself")]
    ZeroDistanceWithNonemptyColoring,
    #[error("distance set contains 0")]
    ZeroDistance,
    #[error("distance set must be integral (apply the rational reduction first)")]
    NonIntegralDistances,
    #[error("distance set is empty")]
    EmptyDistanceSet,
    #[error("window {window} is smaller than the least distance {min}")]
    WindowTooSmall { window: usize, min: i64 },
    #[error("no residue coloring with period <= {max_period} avoids the distances")]
    NoColoringWithinBudget { max_period: usize },
}

/// A periodic coloring of the line: interval `i` is `[breaks[i], breaks[i+1])`
/// (the last one ends at `period`) and carries `colors[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LineColoring<S> {
    period: S,
    breaks: Vec<S>,
    colors: Vec<usize>,
}

impl<S: Scalar> LineColoring<S> {
    /// Validates the description. Adjacent intervals with equal colors are
    /// kept as given; [`LineColoring::normal_form`] merges them.
    pub fn new(period: S, breaks: Vec<S>, colors: Vec<usize>) -> Result<Self, LineError> {
        if !period.is_positive() {
            return Err(LineError::NonPositivePeriod);
        }
        if breaks.first() != Some(&S::zero())
            || breaks.windows(2).any(|w| w[0] >= w[1])
            || breaks.last().is_some_and(|b| *b >= period)
        {
            return Err(LineError::BadBreakpoints);
        }
        if colors.len() != breaks.len() {
            return Err(LineError::ColorCountMismatch {
                intervals: breaks.len(),
                colors: colors.len(),
            });
        }
        let k = colors.iter().max().map_or(0, |m| m + 1);
        let mut seen = vec![false; k];
        for &c in &colors {
            seen[c] = true;
        }
        if seen.iter().any(|s| !s) {
            return Err(LineError::NonContiguousColors);
        }
        Ok(LineColoring { period, breaks, colors })
    }

    /// Residue-class coloring of period `word.len()` with integer breakpoints:
    /// `[r, r + 1)` gets `word[r]`. Returned in normal form.
    pub fn from_word(word: &[usize]) -> Result<Self, LineError> {
        let breaks = (0..word.len()).map(|r| S::from_int(r as i64)).collect();
        Ok(Self::new(S::from_int(word.len() as i64), breaks, word.to_vec())?.normal_form())
    }

    /// Single color everywhere.
    pub fn constant() -> Self {
        LineColoring { period: S::one(), breaks: vec![S::zero()], colors: vec![0] }
    }

    /// Period 2, `[0, 1) -> 0`, `[1, 2) -> 1`.
    pub fn parity() -> Self {
        LineColoring {
            period: S::from_int(2),
            breaks: vec![S::zero(), S::one()],
            colors: vec![0, 1],
        }
    }

    pub fn period(&self) -> &S {
        &self.period
    }

    pub fn breaks(&self) -> &[S] {
        &self.breaks
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color_count(&self) -> usize {
        self.colors.iter().max().map_or(0, |m| m + 1)
    }

    pub fn interval_count(&self) -> usize {
        self.breaks.len()
    }

    /// `[lo, hi)` of interval `i`.
    pub fn interval(&self, i: usize) -> (S, S) {
        let hi = self.breaks.get(i + 1).cloned().unwrap_or_else(|| self.period.clone());
        (self.breaks[i].clone(), hi)
    }

    /// Merges neighbouring intervals of equal color. The first breakpoint
    /// stays at 0, so a run wrapping around the period is left split.
    pub fn normal_form(&self) -> Self {
        let mut breaks = Vec::with_capacity(self.breaks.len());
        let mut colors = Vec::with_capacity(self.colors.len());
        for (b, &c) in self.breaks.iter().zip(&self.colors) {
            if colors.last() != Some(&c) {
                breaks.push(b.clone());
                colors.push(c);
            }
        }
        LineColoring { period: self.period.clone(), breaks, colors }
    }

    pub fn scaled(&self, factor: &S) -> Self {
        LineColoring {
            period: self.period.clone() * factor.clone(),
            breaks: self.breaks.iter().map(|b| b.clone() * factor.clone()).collect(),
            colors: self.colors.clone(),
        }
    }

    fn locate(&self, r: &S) -> usize {
        self.breaks.partition_point(|b| b <= r) - 1
    }

    /// Color at `x`, half-open interval semantics, periodic.
    pub fn eval(&self, x: &S) -> usize {
        self.colors[self.locate(&x.rem_euclid_exact(&self.period))]
    }

    /// Every pair `(i, j, x)` where `x` lies in interval `i` and `x + shift`
    /// (mod period) lies in interval `j`, one entry per pair of intervals
    /// whose overlap has positive length. `x` is the left end of that overlap
    /// pulled back by the shift, so it belongs to both half-open pieces.
    pub fn shifted_overlaps(&self, shift: &S) -> Vec<(usize, usize, S)> {
        let p = &self.period;
        let d = shift.rem_euclid_exact(p);
        let k = self.interval_count();
        let mut out = Vec::new();
        for i in 0..k {
            let (lo, hi) = self.interval(i);
            let (s, e) = (lo.clone() + d.clone(), hi + d.clone());
            // [s, e) lies in [0, 2p); split at p.
            let mut pieces = Vec::with_capacity(2);
            if s < *p {
                pieces.push((s.clone(), e.clone().min(p.clone()), S::zero()));
            }
            if e > *p {
                pieces.push((s.max(p.clone()) - p.clone(), e - p.clone(), p.clone()));
            }
            for (ps, pe, wrap) in pieces {
                for j in 0..k {
                    let (lj, hj) = self.interval(j);
                    let start = ps.clone().max(lj);
                    let end = pe.clone().min(hj);
                    if start < end {
                        let x = start + wrap.clone() - d.clone();
                        out.push((i, j, x));
                    }
                }
            }
        }
        out.sort_by(|a, b| (a.0, a.1).cmp(&(b.0, b.1)));
        out.dedup_by(|a, b| a.0 == b.0 && a.1 == b.1);
        out
    }
}

/// A finite set of nonnegative distances, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DistanceSet<S> {
    distances: Vec<S>,
}

impl<S: Scalar> DistanceSet<S> {
    pub fn new(mut distances: Vec<S>) -> Result<Self, LineError> {
        if distances.iter().any(|d| d.is_negative()) {
            return Err(LineError::NegativeDistance);
        }
        distances.sort();
        distances.dedup();
        Ok(DistanceSet { distances })
    }

    pub fn from_ints(values: &[i64]) -> Result<Self, LineError> {
        Self::new(values.iter().map(|&v| S::from_int(v)).collect())
    }

    pub fn distances(&self) -> &[S] {
        &self.distances
    }

    pub fn contains_zero(&self) -> bool {
        self.distances.first().is_some_and(|d| d.is_zero())
    }

    pub fn scaled(&self, factor: &S) -> Self {
        DistanceSet {
            distances: self.distances.iter().map(|d| d.clone() * factor.clone()).collect(),
        }
    }

    /// The same set as machine integers; fails if any distance is fractional.
    pub fn to_integers(&self) -> Result<IntDistances, LineError> {
        let v = self
            .distances
            .iter()
            .map(|d| d.to_i64_exact().ok_or(LineError::NonIntegralDistances))
            .collect::<Result<Vec<_>, _>>()?;
        IntDistances::new(v)
    }
}

/// Positive integer distances, sorted and deduplicated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntDistances(Vec<i64>);

impl IntDistances {
    pub fn new(mut v: Vec<i64>) -> Result<Self, LineError> {
        if v.is_empty() {
            return Err(LineError::EmptyDistanceSet);
        }
        if v.iter().any(|&d| d < 0) {
            return Err(LineError::NegativeDistance);
        }
        if v.contains(&0) {
            return Err(LineError::ZeroDistance);
        }
        v.sort_unstable();
        v.dedup();
        Ok(IntDistances(v))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn min(&self) -> i64 {
        self.0[0]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Avoidance<S> {
    Avoids,
    /// `x` and `y = x + d` receive the same color.
    Violation { x: S, y: S, d: S },
}

impl<S> Avoidance<S> {
    pub fn avoids(&self) -> bool {
        matches!(self, Avoidance::Avoids)
    }
}

/// Decides exactly whether no two points at a distance in `dists` share a
/// color. The first violation in (distance, interval, interval) order is
/// returned as a witness.
pub fn avoids_distances<S: Scalar>(
    coloring: &LineColoring<S>,
    dists: &DistanceSet<S>,
) -> Result<Avoidance<S>, LineError> {
    if dists.contains_zero() {
        return Err(LineError::ZeroDistanceWithNonemptyColoring);
    }
    for d in dists.distances() {
        for (i, j, x) in coloring.shifted_overlaps(d) {
            if coloring.colors[i] == coloring.colors[j] {
                let y = x.clone() + d.clone();
                return Ok(Avoidance::Violation { x, y, d: d.clone() });
            }
        }
    }
    Ok(Avoidance::Avoids)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reduction<S> {
    /// `scale * D`, all integral.
    pub integers: IntDistances,
    /// Least common multiple of the denominators.
    pub scale: S,
    /// gcd of the integral distances.
    pub gcd: i64,
}

/// Clears denominators: multiplies every distance by the lcm of their
/// denominators.
pub fn rational_distance_reduction<S: Scalar>(
    dists: &DistanceSet<S>,
) -> Result<Reduction<S>, LineError> {
    if dists.distances().is_empty() {
        return Err(LineError::EmptyDistanceSet);
    }
    if dists.contains_zero() {
        return Err(LineError::ZeroDistance);
    }
    let lcm = denominator_lcm(dists.distances());
    let scale = S::from_ratio(&num_rational::BigRational::from_integer(lcm))
        .ok_or(LineError::NonIntegralDistances)?;
    let integers = dists.scaled(&scale).to_integers()?;
    let gcd = integers.values().iter().fold(0i64, |g, &d| num_integer::gcd(g, d));
    Ok(Reduction { integers, scale, gcd })
}

/// Exact chromatic number of a finite distance graph, with search statistics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBound {
    pub value: usize,
    /// Vertices are `0..=window`.
    pub window: usize,
    /// For each `k < value`, the number of search nodes spent refuting a
    /// proper `k`-coloring.
    pub refutations: Vec<(usize, u64)>,
    /// An optimal coloring of the window.
    pub coloring: Vec<usize>,
}

fn distance_graph(n: usize, dists: &IntDistances) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n + 1];
    for i in 0..=n {
        for &d in dists.values() {
            let j = i + d as usize;
            if j <= n {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Backtracking k-coloring of a graph in vertex order, new colors opened one
/// at a time. Returns the coloring and the number of nodes visited.
fn color_graph(adj: &[Vec<usize>], k: usize) -> (Option<Vec<usize>>, u64) {
    fn go(adj: &[Vec<usize>], k: usize, v: usize, used: usize, col: &mut [usize], nodes: &mut u64) -> bool {
        *nodes += 1;
        if v == adj.len() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if adj[v].iter().any(|&u| u < v && col[u] == c) {
                continue;
            }
            col[v] = c;
            if go(adj, k, v + 1, used.max(c + 1), col, nodes) {
                return true;
            }
        }
        false
    }
    let mut col = vec![usize::MAX; adj.len()];
    let mut nodes = 0;
    if go(adj, k, 0, 0, &mut col, &mut nodes) {
        (Some(col), nodes)
    } else {
        (None, nodes)
    }
}

/// Chromatic number of the graph on `{0, ..., window}` with edges
/// `|i - j| ∈ dists`; a lower bound for the chromatic number of the line.
pub fn chi_line_lower(dists: &IntDistances, window: usize) -> Result<LowerBound, LineError> {
    if (window as i64) < dists.min() {
        return Err(LineError::WindowTooSmall { window, min: dists.min() });
    }
    let adj = distance_graph(window, dists);
    let mut refutations = Vec::new();
    for k in 1..=window + 1 {
        let (found, nodes) = color_graph(&adj, k);
        match found {
            Some(coloring) => return Ok(LowerBound { value: k, window, refutations, coloring }),
            None => refutations.push((k, nodes)),
        }
    }
    unreachable!("window + 1 colors always suffice")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpperBound<S> {
    pub value: usize,
    pub period: usize,
    /// Color of each residue class mod `period`.
    pub word: Vec<usize>,
    pub coloring: LineColoring<S>,
}

/// Lexicographically smallest `k`-coloring of the residues mod `p` in which
/// `r` and `r + d` differ for every `d`.
fn residue_word(p: usize, k: usize, dists: &IntDistances) -> Option<Vec<usize>> {
    let shifts: Vec<usize> = dists.values().iter().map(|&d| (d as usize) % p).collect();
    if shifts.contains(&0) {
        return None;
    }
    let mut nbrs = vec![Vec::new(); p];
    for r in 0..p {
        for &s in &shifts {
            let t = (r + s) % p;
            nbrs[r].push(t);
            nbrs[t].push(r);
        }
    }
    fn go(nbrs: &[Vec<usize>], k: usize, v: usize, used: usize, w: &mut [usize]) -> bool {
        if v == nbrs.len() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if nbrs[v].iter().any(|&u| u < v && w[u] == c) {
                continue;
            }
            w[v] = c;
            if go(nbrs, k, v + 1, used.max(c + 1), w) {
                return true;
            }
        }
        false
    }
    let mut w = vec![0; p];
    go(&nbrs, k, 0, 0, &mut w).then_some(w)
}

/// Fewest colors of a residue-class coloring with period at most
/// `max_period` avoiding `dists`. Ties go to the smallest period, then the
/// lexicographically smallest word. Integer breakpoints suffice: two points
/// with different fractional parts are never an integer apart.
pub fn chi_line_upper<S: Scalar>(
    dists: &IntDistances,
    max_period: usize,
) -> Result<UpperBound<S>, LineError> {
    for k in 1..=max_period {
        let hit = (1..=max_period)
            .into_par_iter()
            .find_map_first(|p| residue_word(p, k, dists).map(|w| (p, w)));
        if let Some((period, word)) = hit {
            let coloring = LineColoring::from_word(&word)?;
            return Ok(UpperBound { value: k, period, word, coloring });
        }
    }
    Err(LineError::NoColoringWithinBudget { max_period })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundStatus {
    Exact,
    Bounds,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChromaticResult<S> {
    pub lower: LowerBound,
    pub upper: UpperBound<S>,
    pub status: BoundStatus,
}

/// Both bounds for the distance graph of the line.
pub fn chi_line<S: Scalar>(
    dists: &IntDistances,
    window: usize,
    max_period: usize,
) -> Result<ChromaticResult<S>, LineError> {
    let lower = chi_line_lower(dists, window)?;
    let upper = chi_line_upper(dists, max_period)?;
    debug_assert!(lower.value <= upper.value);
    let status = if lower.value == upper.value { BoundStatus::Exact } else { BoundStatus::Bounds };
    Ok(ChromaticResult { lower, upper, status })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    type Q = BigRational;

    fn q(s: &str) -> Q {
        crate::scalar::parse_scalar(s).unwrap()
    }

    fn ints(v: &[i64]) -> IntDistances {
        IntDistances::new(v.to_vec()).unwrap()
    }

    fn dset(v: &[i64]) -> DistanceSet<Q> {
        DistanceSet::from_ints(v).unwrap()
    }

    #[test]
    fn eval_examples() {
        let c = LineColoring::<Q>::parity();
        assert_eq!(c.eval(&q("3/2")), 1);
        assert_eq!(c.eval(&q("2")), 0);
        assert_eq!(c.eval(&q("-1/2")), 1);
        assert_eq!(c.eval(&q("1")), 1);
    }

    #[test]
    fn constructor_validation() {
        assert_eq!(
            LineColoring::new(q("0"), vec![q("0")], vec![0]),
            Err(LineError::NonPositivePeriod)
        );
        assert_eq!(
            LineColoring::new(q("2"), vec![q("1/2")], vec![0]),
            Err(LineError::BadBreakpoints)
        );
        assert_eq!(
            LineColoring::new(q("2"), vec![q("0"), q("2")], vec![0, 1]),
            Err(LineError::BadBreakpoints)
        );
        assert_eq!(
            LineColoring::new(q("2"), vec![q("0"), q("1")], vec![0, 2]),
            Err(LineError::NonContiguousColors)
        );
        assert!(matches!(
            LineColoring::new(q("2"), vec![q("0")], vec![0, 1]),
            Err(LineError::ColorCountMismatch { .. })
        ));
    }

    #[test]
    fn normal_form_merges_runs() {
        let c = LineColoring::new(q("4"), vec![q("0"), q("1"), q("2"), q("3")], vec![0, 0, 1, 0])
            .unwrap();
        let n = c.normal_form();
        assert_eq!(n.breaks(), &[q("0"), q("2"), q("3")]);
        assert_eq!(n.colors(), &[0, 1, 0]);
        for x in ["0", "1/2", "5/2", "7/2", "-1/3"] {
            assert_eq!(c.eval(&q(x)), n.eval(&q(x)));
        }
    }

    #[test]
    fn avoids_examples() {
        let parity = LineColoring::<Q>::parity();
        assert_eq!(avoids_distances(&parity, &dset(&[1])), Ok(Avoidance::Avoids));
        assert_eq!(
            avoids_distances(&parity, &dset(&[2])),
            Ok(Avoidance::Violation { x: q("0"), y: q("2"), d: q("2") })
        );
        let three = LineColoring::new(q("6"), vec![q("0"), q("2"), q("4")], vec![0, 1, 2]).unwrap();
        assert_eq!(avoids_distances(&three, &dset(&[2, 3, 4])), Ok(Avoidance::Avoids));
        assert_eq!(
            avoids_distances(&parity, &dset(&[0, 1])),
            Err(LineError::ZeroDistanceWithNonemptyColoring)
        );
    }

    #[test]
    fn fractional_distance_violation_witness_rechecks() {
        let parity = LineColoring::<Q>::parity();
        match avoids_distances(&parity, &DistanceSet::new(vec![q("1/2")]).unwrap()).unwrap() {
            Avoidance::Violation { x, y, d } => {
                assert_eq!(y.clone() - x.clone(), d);
                assert_eq!(parity.eval(&x), parity.eval(&y));
            }
            Avoidance::Avoids => panic!("parity cannot avoid 1/2"),
        }
    }

    #[test]
    fn reduction_examples() {
        let r = rational_distance_reduction(&DistanceSet::new(vec![q("1/2"), q("3/4")]).unwrap())
            .unwrap();
        assert_eq!(r.integers.values(), &[2, 3]);
        assert_eq!(r.scale, q("4"));
        assert_eq!(r.gcd, 1);
        let r = rational_distance_reduction(&dset(&[2, 3, 4])).unwrap();
        assert_eq!((r.integers.values(), r.scale), (&[2i64, 3, 4][..], q("1")));
        let r = rational_distance_reduction(&dset(&[1, 3, 5])).unwrap();
        assert_eq!(r.integers.values(), &[1, 3, 5]);
        assert_eq!(rational_distance_reduction(&dset(&[0, 1])), Err(LineError::ZeroDistance));
        let r = rational_distance_reduction(&dset(&[4, 6])).unwrap();
        assert_eq!(r.gcd, 2);
    }

    #[test]
    fn lower_examples() {
        assert_eq!(chi_line_lower(&ints(&[1]), 1).unwrap().value, 2);
        let lb = chi_line_lower(&ints(&[2, 3, 4]), 6).unwrap();
        assert_eq!(lb.value, 3);
        assert_eq!(lb.refutations.len(), 2);
        assert_eq!(chi_line_lower(&ints(&[1, 2]), 2).unwrap().value, 3);
        assert_eq!(
            chi_line_lower(&ints(&[2, 3]), 1),
            Err(LineError::WindowTooSmall { window: 1, min: 2 })
        );
    }

    #[test]
    fn upper_examples() {
        let ub = chi_line_upper::<Q>(&ints(&[1]), 2).unwrap();
        assert_eq!((ub.value, ub.word.clone()), (2, vec![0, 1]));
        assert_eq!(ub.coloring, LineColoring::parity());

        let ub = chi_line_upper::<Q>(&ints(&[1, 3, 5]), 2).unwrap();
        assert_eq!((ub.value, ub.period), (2, 2));

        let ub = chi_line_upper::<Q>(&ints(&[2, 3, 4]), 6).unwrap();
        assert_eq!(ub.value, 3);
        assert_eq!(ub.word, vec![0, 0, 1, 1, 2, 2]);
        assert!(avoids_distances(&ub.coloring, &dset(&[2, 3, 4])).unwrap().avoids());

        assert_eq!(
            chi_line_upper::<Q>(&ints(&[1, 2]), 2),
            Err(LineError::NoColoringWithinBudget { max_period: 2 })
        );
    }

    #[test]
    fn combined_bounds_are_exact_for_side_route() {
        let r = chi_line::<Q>(&ints(&[2, 3, 4]), 6, 6).unwrap();
        assert_eq!(r.status, BoundStatus::Exact);
        assert_eq!(r.lower.value, 3);
    }

    #[test]
    fn lower_coloring_is_proper() {
        let d = ints(&[2, 3, 4]);
        let lb = chi_line_lower(&d, 9).unwrap();
        for i in 0..=9usize {
            for &dd in d.values() {
                let j = i + dd as usize;
                if j <= 9 {
                    assert_ne!(lb.coloring[i], lb.coloring[j]);
                }
            }
        }
    }
}
