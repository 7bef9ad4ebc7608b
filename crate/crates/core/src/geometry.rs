//! Exact max-norm geometry: points, triangles, the copy predicate and copy
//! enumeration over finite point sets.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("side lengths must be positive")]
    NonPositiveSide,
    #[error("triangle inequality violated: {c} > {a} + {b}")]
    TriangleInequalityViolated { a: String, b: String, c: String },
    #[error("operation requires a non-degenerate triangle")]
    DegenerateTriangleUnsupported,
    #[error("duplicate point ({x}, {y}) in point set")]
    DuplicatePoint { x: String, y: String },
    #[error("scale factor must be positive")]
    NonPositiveScale,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point<S> {
    pub x: S,
    pub y: S,
}

impl<S: Scalar> Point<S> {
    pub fn new(x: S, y: S) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(S::from_int(x), S::from_int(y))
    }

    pub fn translate(&self, dx: &S, dy: &S) -> Self {
        Point::new(self.x.clone() + dx.clone(), self.y.clone() + dy.clone())
    }

    pub fn scale(&self, factor: &S) -> Self {
        Point::new(self.x.clone() * factor.clone(), self.y.clone() * factor.clone())
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Max-norm distance `max(|Δx|, |Δy|)`.
pub fn linf_dist<S: Scalar>(p: &Point<S>, q: &Point<S>) -> S {
    let dx = (p.x.clone() - q.x.clone()).abs();
    let dy = (p.y.clone() - q.y.clone()).abs();
    dx.max(dy)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TriangleClass {
    NonDegenerate,
    Degenerate,
}

/// A triangle given by its max-norm side lengths, stored sorted `a <= b <= c`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Triangle<S> {
    a: S,
    b: S,
    c: S,
    class: TriangleClass,
}

impl<S: Scalar> Triangle<S> {
    /// Sorts the sides and classifies the triangle. Rejects non-positive
    /// sides and violations of `c <= a + b`.
    pub fn new(a: S, b: S, c: S) -> Result<Self, GeometryError> {
        let mut sides = [a, b, c];
        if sides.iter().any(|s| !s.is_positive()) {
            return Err(GeometryError::NonPositiveSide);
        }
        sides.sort();
        let [a, b, c] = sides;
        let sum = a.clone() + b.clone();
        let class = match c.cmp(&sum) {
            Ordering::Greater => {
                return Err(GeometryError::TriangleInequalityViolated {
                    a: a.to_string(),
                    b: b.to_string(),
                    c: c.to_string(),
                })
            }
            Ordering::Equal => TriangleClass::Degenerate,
            Ordering::Less => TriangleClass::NonDegenerate,
        };
        Ok(Triangle { a, b, c, class })
    }

    pub fn from_ints(a: i64, b: i64, c: i64) -> Result<Self, GeometryError> {
        Triangle::new(S::from_int(a), S::from_int(b), S::from_int(c))
    }

    pub fn a(&self) -> &S {
        &self.a
    }

    pub fn b(&self) -> &S {
        &self.b
    }

    pub fn c(&self) -> &S {
        &self.c
    }

    pub fn class(&self) -> TriangleClass {
        self.class
    }

    pub fn is_degenerate(&self) -> bool {
        self.class == TriangleClass::Degenerate
    }

    /// `[a, b, c]`, ascending.
    pub fn side_set(&self) -> [S; 3] {
        [self.a.clone(), self.b.clone(), self.c.clone()]
    }

    /// `[a + b - c, c + a - b, b + c - a]`, ascending (the order the
    /// expressions are listed in is already ascending for sorted sides).
    pub fn diag_set(&self) -> [S; 3] {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        [
            a.clone() + b.clone() - c.clone(),
            c.clone() + a.clone() - b.clone(),
            b.clone() + c.clone() - a.clone(),
        ]
    }

    pub fn is_side(&self, d: &S) -> bool {
        *d == self.a || *d == self.b || *d == self.c
    }

    pub fn scaled(&self, factor: &S) -> Result<Self, GeometryError> {
        if !factor.is_positive() {
            return Err(GeometryError::NonPositiveScale);
        }
        Triangle::new(
            self.a.clone() * factor.clone(),
            self.b.clone() * factor.clone(),
            self.c.clone() * factor.clone(),
        )
    }

    /// Sides as machine integers, if all are integral.
    pub fn integer_sides(&self) -> Option<[i64; 3]> {
        Some([
            self.a.to_i64_exact()?,
            self.b.to_i64_exact()?,
            self.c.to_i64_exact()?,
        ])
    }
}

impl<S: Scalar> fmt::Display for Triangle<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T({}, {}, {})", self.a, self.b, self.c)
    }
}

/// True iff the pairwise distances of the three points are `{a, b, c}` as a
/// multiset.
pub fn is_copy<S: Scalar>(z1: &Point<S>, z2: &Point<S>, z3: &Point<S>, t: &Triangle<S>) -> bool {
    let mut d = [linf_dist(z1, z2), linf_dist(z2, z3), linf_dist(z3, z1)];
    d.sort();
    d[0] == t.a && d[1] == t.b && d[2] == t.c
}

/// Necessary condition for a copy of a non-degenerate triangle: some
/// pairwise `|Δy|` is a side length and some pairwise `|Δ(x + y)|` lies in
/// the diagonal set.
pub fn lemma1_filter<S: Scalar>(
    z1: &Point<S>,
    z2: &Point<S>,
    z3: &Point<S>,
    t: &Triangle<S>,
) -> Result<bool, GeometryError> {
    if t.is_degenerate() {
        return Err(GeometryError::DegenerateTriangleUnsupported);
    }
    let pts = [z1, z2, z3];
    let pairs = [(0, 1), (1, 2), (2, 0)];
    let diag = t.diag_set();
    let vertical = pairs
        .iter()
        .any(|&(i, j)| t.is_side(&(pts[i].y.clone() - pts[j].y.clone()).abs()));
    if !vertical {
        return Ok(false);
    }
    let diagonal = pairs.iter().any(|&(i, j)| {
        let si = pts[i].x.clone() + pts[i].y.clone();
        let sj = pts[j].x.clone() + pts[j].y.clone();
        let d = (si - sj).abs();
        diag.contains(&d)
    });
    Ok(diagonal)
}

/// A finite set of distinct points, kept in lexicographic `(x, y)` order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet<S> {
    points: Vec<Point<S>>,
}

impl<S: Scalar> PointSet<S> {
    /// Sorts the points; duplicates are an error rather than silently merged.
    pub fn new(mut points: Vec<Point<S>>) -> Result<Self, GeometryError> {
        points.sort();
        if let Some(w) = points.windows(2).find(|w| w[0] == w[1]) {
            return Err(GeometryError::DuplicatePoint {
                x: w[0].x.to_string(),
                y: w[0].y.to_string(),
            });
        }
        Ok(PointSet { points })
    }

    pub fn empty() -> Self {
        PointSet { points: Vec::new() }
    }

    /// The points `(i * step, j * step)` for `0 <= i < cols`, `0 <= j < rows`.
    pub fn grid(cols: i64, rows: i64, step: &S) -> Self {
        let mut points = Vec::with_capacity((cols.max(0) * rows.max(0)) as usize);
        for i in 0..cols {
            for j in 0..rows {
                points.push(Point::new(
                    S::from_int(i) * step.clone(),
                    S::from_int(j) * step.clone(),
                ));
            }
        }
        PointSet { points }
    }

    pub fn points(&self) -> &[Point<S>] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn get(&self, i: usize) -> &Point<S> {
        &self.points[i]
    }

    /// Restriction to the given indices (kept sorted).
    pub fn subset(&self, indices: &[usize]) -> Self {
        let mut points: Vec<_> = indices.iter().map(|&i| self.points[i].clone()).collect();
        points.sort();
        points.dedup();
        PointSet { points }
    }
}

/// All index triples `i < j < k` of `set` forming a copy of `t`, in
/// lexicographic order.
///
/// Pairs are pruned by requiring their distance to be a side length; for
/// non-degenerate triangles the remaining candidates pass the Lemma-1 style
/// pre-filter before the exact copy test. Neither step changes the result.
pub fn enumerate_copies<S: Scalar>(set: &PointSet<S>, t: &Triangle<S>) -> Vec<[usize; 3]> {
    let pts = set.points();
    let n = pts.len();
    if n < 3 {
        return Vec::new();
    }
    let use_filter = !t.is_degenerate();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            for j in i + 1..n {
                if !t.is_side(&linf_dist(&pts[i], &pts[j])) {
                    continue;
                }
                for k in j + 1..n {
                    if use_filter
                        && !lemma1_filter(&pts[i], &pts[j], &pts[k], t).unwrap_or(true)
                    {
                        continue;
                    }
                    if is_copy(&pts[i], &pts[j], &pts[k], t) {
                        out.push([i, j, k]);
                    }
                }
            }
            out
        })
        .collect()
}

/// Boundary of the max-norm sphere of radius `r > 0` about `c` as four
/// closed segments (bottom, top, left, right).
fn sphere_sides<S: Scalar>(c: &Point<S>, r: &S) -> [(Point<S>, Point<S>); 4] {
    let (x0, x1) = (c.x.clone() - r.clone(), c.x.clone() + r.clone());
    let (y0, y1) = (c.y.clone() - r.clone(), c.y.clone() + r.clone());
    [
        (Point::new(x0.clone(), y0.clone()), Point::new(x1.clone(), y0.clone())),
        (Point::new(x0.clone(), y1.clone()), Point::new(x1.clone(), y1.clone())),
        (Point::new(x0.clone(), y0.clone()), Point::new(x0, y1.clone())),
        (Point::new(x1.clone(), y0), Point::new(x1, y1)),
    ]
}

/// Intersection of two closed axis-parallel segments given as
/// `(lo, hi)` with `lo <= hi`.
fn meet<S: Scalar>(p: &(Point<S>, Point<S>), q: &(Point<S>, Point<S>)) -> Option<(Point<S>, Point<S>)> {
    let x0 = p.0.x.clone().max(q.0.x.clone());
    let x1 = p.1.x.clone().min(q.1.x.clone());
    let y0 = p.0.y.clone().max(q.0.y.clone());
    let y1 = p.1.y.clone().min(q.1.y.clone());
    (x0 <= x1 && y0 <= y1).then(|| (Point::new(x0, y0), Point::new(x1, y1)))
}

/// All points at distance `r1` from `z1` and `r2` from `z2`, as closed
/// axis-parallel segments (possibly single points), sorted and deduplicated.
pub fn two_distance_locus<S: Scalar>(
    z1: &Point<S>,
    r1: &S,
    z2: &Point<S>,
    r2: &S,
) -> Vec<(Point<S>, Point<S>)> {
    if !r1.is_positive() || !r2.is_positive() {
        return Vec::new();
    }
    let mut out = Vec::new();
    for p in &sphere_sides(z1, r1) {
        for q in &sphere_sides(z2, r2) {
            if let Some(m) = meet(p, q) {
                out.push(m);
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Multiplies every side and coordinate by `factor > 0`. Positive scaling
/// keeps the lexicographic order, so index triples are unchanged.
pub fn scale_instance<S: Scalar>(
    t: &Triangle<S>,
    set: &PointSet<S>,
    factor: &S,
) -> Result<(Triangle<S>, PointSet<S>), GeometryError> {
    let t2 = t.scaled(factor)?;
    let points = set.points.iter().map(|p| p.scale(factor)).collect();
    Ok((t2, PointSet { points }))
}

/// Integer lattice helpers shared by grid sampling and the density code.
pub mod lattice {
    pub type IPoint = (i64, i64);

    #[inline]
    pub fn dist(p: IPoint, q: IPoint) -> i64 {
        (p.0 - q.0).abs().max((p.1 - q.1).abs())
    }

    /// Lattice points at max-norm distance exactly `r` from `center`, in
    /// lexicographic order. For `r == 0` this is the center itself.
    pub fn ring(center: IPoint, r: i64) -> Vec<IPoint> {
        if r == 0 {
            return vec![center];
        }
        let (cx, cy) = center;
        let mut out = Vec::with_capacity(8 * r as usize);
        for dx in -r..=r {
            if dx.abs() == r {
                for dy in -r..=r {
                    out.push((cx + dx, cy + dy));
                }
            } else {
                out.push((cx + dx, cy - r));
                out.push((cx + dx, cy + r));
            }
        }
        out
    }

    /// Points on the integer line (`y = 0`) at distance exactly `r`.
    pub fn ring_1d(center: IPoint, r: i64) -> Vec<IPoint> {
        if r == 0 {
            vec![center]
        } else {
            vec![(center.0 - r, center.1), (center.0 + r, center.1)]
        }
    }

    pub fn is_copy(z1: IPoint, z2: IPoint, z3: IPoint, sides: [i64; 3]) -> bool {
        let mut d = [dist(z1, z2), dist(z2, z3), dist(z3, z1)];
        d.sort_unstable();
        d == sides
    }

    /// All unordered pairs `{z2, z3}` (returned with `z2 < z3`) such that
    /// `{z1, z2, z3}` is a copy of the integer triangle with sorted `sides`.
    /// With `one_dim` the search is restricted to the line through `z1`.
    pub fn copies_through(z1: IPoint, sides: [i64; 3], one_dim: bool) -> Vec<(IPoint, IPoint)> {
        copy_offsets(sides, one_dim)
            .into_iter()
            .map(|(o2, o3)| ((z1.0 + o2.0, z1.1 + o2.1), (z1.0 + o3.0, z1.1 + o3.1)))
            .collect()
    }

    /// [`copies_through`] the origin: the translation-invariant list of
    /// offset pairs, sorted.
    pub fn copy_offsets(sides: [i64; 3], one_dim: bool) -> Vec<(IPoint, IPoint)> {
        let z1 = (0, 0);
        let mut radii = sides.to_vec();
        radii.dedup();
        let ring_fn = if one_dim { ring_1d } else { ring };
        let rings: Vec<Vec<IPoint>> = radii.iter().map(|&r| ring_fn(z1, r)).collect();
        let mut out = Vec::new();
        for (i2, r2) in radii.iter().enumerate() {
            for z2 in &rings[i2] {
                for (i3, r3) in radii.iter().enumerate() {
                    for z3 in &rings[i3] {
                        if z3 <= z2 {
                            continue;
                        }
                        let mut d = [*r2, *r3, dist(*z2, *z3)];
                        d.sort_unstable();
                        if d == sides {
                            out.push((*z2, *z3));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;
    use proptest::prelude::*;

    #[test]
    fn locus_of_third_vertex() {
        let q = |v: i64| BigRational::from_integer(v.into());
        let z1 = Point::from_ints(0, 0);
        let z2 = Point::from_ints(4, 0);
        let locus = two_distance_locus(&z1, &q(2), &z2, &q(3));
        assert!(!locus.is_empty());
        for (a, b) in &locus {
            for p in [a, b] {
                assert_eq!(linf_dist(p, &z1), q(2));
                assert_eq!(linf_dist(p, &z2), q(3));
            }
        }
        assert!(locus.iter().any(|(a, b)| a.x == q(1) && b.x == q(1) && a.y == q(-2) && b.y == q(-2)));
    }

    type Q = BigRational;

    fn q(s: &str) -> Q {
        crate::scalar::parse_scalar(s).unwrap()
    }

    fn p(x: i64, y: i64) -> Point<Q> {
        Point::from_ints(x, y)
    }

    fn t(a: i64, b: i64, c: i64) -> Triangle<Q> {
        Triangle::from_ints(a, b, c).unwrap()
    }

    fn five_points() -> Vec<Point<Q>> {
        vec![p(2, 2), p(1, 0), p(5, 3), p(5, -1), p(3, 2)]
    }

    #[test]
    fn linf_dist_examples() {
        assert_eq!(linf_dist(&p(0, 0), &p(0, 0)), q("0"));
        assert_eq!(linf_dist(&p(0, 0), &p(-4, 0)), q("4"));
        assert_eq!(linf_dist(&p(0, 2), &p(-1, 0)), q("2"));
    }

    #[test]
    fn validate_triangle_examples() {
        let tr = t(4, 2, 3);
        assert_eq!(tr.side_set(), [q("2"), q("3"), q("4")]);
        assert_eq!(tr.class(), TriangleClass::NonDegenerate);
        assert_eq!(tr.diag_set(), [q("1"), q("3"), q("5")]);

        let deg = t(1, 1, 2);
        assert_eq!(deg.class(), TriangleClass::Degenerate);
        assert_eq!(deg.diag_set(), [q("0"), q("2"), q("2")]);

        assert!(matches!(
            Triangle::<Q>::from_ints(1, 1, 3),
            Err(GeometryError::TriangleInequalityViolated { .. })
        ));
        assert_eq!(Triangle::<Q>::from_ints(0, 1, 1), Err(GeometryError::NonPositiveSide));
        assert_eq!(Triangle::<Q>::from_ints(-1, 1, 1), Err(GeometryError::NonPositiveSide));
    }

    #[test]
    fn is_copy_examples() {
        assert!(is_copy(&p(2, 2), &p(1, 0), &p(5, 3), &t(2, 3, 4)));
        assert!(!is_copy(&p(0, 0), &p(0, 0), &p(1, 1), &t(1, 1, 1)));
        assert!(is_copy(&p(0, 2), &p(-4, 0), &p(-1, 0), &t(2, 3, 4)));
    }

    #[test]
    fn lemma1_filter_examples() {
        let tr = t(2, 3, 4);
        assert_eq!(lemma1_filter(&p(2, 2), &p(1, 0), &p(5, 3), &tr), Ok(true));
        assert_eq!(lemma1_filter(&p(0, 0), &p(10, 0), &p(20, 0), &tr), Ok(false));
        assert_eq!(
            lemma1_filter(&p(0, 0), &p(1, 0), &p(2, 0), &t(1, 1, 2)),
            Err(GeometryError::DegenerateTriangleUnsupported)
        );
    }

    #[test]
    fn five_point_copies_include_the_three_named_triples() {
        let pts = five_points();
        let set = PointSet::new(pts.clone()).unwrap();
        let found: Vec<Vec<Point<Q>>> = enumerate_copies(&set, &t(2, 3, 4))
            .into_iter()
            .map(|tr| tr.iter().map(|&i| set.get(i).clone()).collect())
            .collect();
        let has = |a: usize, b: usize, c: usize| {
            let mut want = vec![pts[a].clone(), pts[b].clone(), pts[c].clone()];
            want.sort();
            found.contains(&want)
        };
        assert!(has(0, 1, 2));
        assert!(has(0, 1, 3));
        assert!(has(2, 3, 4));
        // z2, z4, z5 is also a copy of T(2,3,4): distances 4, 2, 3 (c = 2a).
        assert!(has(1, 3, 4));
        assert_eq!(found.len(), 4);
    }

    #[test]
    fn five_point_set_with_long_side_has_exactly_three_copies() {
        // Same construction with c > 2a: only the three argument triples remain.
        let (a, b, c, x1) = (2, 4, 5, 3);
        let pts = vec![
            p(x1, a),
            p(x1 + b - c, 0),
            p(x1 + b, c + a - b),
            p(x1 + b, a - b),
            p(x1 + b - a, a),
        ];
        let set = PointSet::new(pts).unwrap();
        assert_eq!(enumerate_copies(&set, &t(a, b, c)).len(), 3);
    }

    #[test]
    fn small_sets_have_no_copies() {
        let set = PointSet::new(vec![p(0, 0), p(2, 0)]).unwrap();
        assert!(enumerate_copies(&set, &t(2, 3, 4)).is_empty());
        assert!(enumerate_copies(&PointSet::<Q>::empty(), &t(2, 3, 4)).is_empty());
    }

    #[test]
    fn duplicate_points_rejected() {
        assert!(matches!(
            PointSet::new(vec![p(1, 1), p(0, 0), p(1, 1)]),
            Err(GeometryError::DuplicatePoint { .. })
        ));
    }

    #[test]
    fn scale_examples() {
        let tr = Triangle::new(q("1/2"), q("3/4"), q("1")).unwrap();
        let (t4, _) = scale_instance(&tr, &PointSet::empty(), &q("4")).unwrap();
        assert_eq!(t4, t(2, 3, 4));
        let set = PointSet::new(five_points()).unwrap();
        let (t1, s1) = scale_instance(&t(2, 3, 4), &set, &q("1")).unwrap();
        assert_eq!((t1, s1.clone()), (t(2, 3, 4), set.clone()));
        let (t3, s3) = scale_instance(&t(2, 3, 4), &set, &q("3")).unwrap();
        assert_eq!(enumerate_copies(&s3, &t3), enumerate_copies(&set, &t(2, 3, 4)));
        assert_eq!(
            scale_instance(&t(2, 3, 4), &set, &q("0")).unwrap_err(),
            GeometryError::NonPositiveScale
        );
    }

    #[test]
    fn works_over_fixed_width_and_integer_scalars() {
        use num_rational::Ratio;
        let tr = Triangle::<i64>::from_ints(2, 3, 4).unwrap();
        assert!(is_copy(&Point::new(2, 2), &Point::new(1, 0), &Point::new(5, 3), &tr));
        let tr = Triangle::<Ratio<i64>>::from_ints(2, 3, 4).unwrap();
        assert_eq!(tr.diag_set()[2], Ratio::from_integer(5));
    }

    #[test]
    fn lattice_copies_match_point_set_enumeration() {
        let sides = [2, 3, 4];
        let z1 = (0, 0);
        let pairs = lattice::copies_through(z1, sides, false);
        for &(z2, z3) in &pairs {
            assert!(lattice::is_copy(z1, z2, z3, sides));
            assert!(is_copy(&p(0, 0), &p(z2.0, z2.1), &p(z3.0, z3.1), &t(2, 3, 4)));
        }
        // Brute force over the ball of radius c.
        let mut brute = Vec::new();
        let ball: Vec<_> = (-4..=4).flat_map(|x| (-4..=4).map(move |y| (x, y))).collect();
        for &a in &ball {
            for &b in &ball {
                if a < b && lattice::is_copy(z1, a, b, sides) {
                    brute.push((a, b));
                }
            }
        }
        brute.sort_unstable();
        assert_eq!(pairs, brute);
    }

    fn small_q() -> impl Strategy<Value = Q> {
        (-20i64..20, 1i64..5).prop_map(|(n, d)| Q::new(n.into(), d.into()))
    }

    fn point() -> impl Strategy<Value = Point<Q>> {
        (small_q(), small_q()).prop_map(|(x, y)| Point::new(x, y))
    }

    proptest! {
        #[test]
        fn linf_metric_axioms(p1 in point(), p2 in point(), p3 in point()) {
            prop_assert_eq!(linf_dist(&p1, &p2), linf_dist(&p2, &p1));
            prop_assert_eq!(linf_dist(&p1, &p2) == Q::from_int(0), p1 == p2);
            prop_assert!(linf_dist(&p1, &p3) <= linf_dist(&p1, &p2) + linf_dist(&p2, &p3));
        }

        #[test]
        fn is_copy_permutation_invariant(p1 in point(), p2 in point(), p3 in point()) {
            // Anchor the triangle on the realized distances so that copies occur.
            let d = [linf_dist(&p1, &p2), linf_dist(&p2, &p3), linf_dist(&p3, &p1)];
            let tri = Triangle::new(d[0].clone(), d[1].clone(), d[2].clone())
                .unwrap_or_else(|_| Triangle::from_ints(1, 1, 1).unwrap());
            let base = is_copy(&p1, &p2, &p3, &tri);
            prop_assert_eq!(base, is_copy(&p1, &p3, &p2, &tri));
            prop_assert_eq!(base, is_copy(&p2, &p1, &p3, &tri));
            prop_assert_eq!(base, is_copy(&p2, &p3, &p1, &tri));
            prop_assert_eq!(base, is_copy(&p3, &p1, &p2, &tri));
            prop_assert_eq!(base, is_copy(&p3, &p2, &p1, &tri));
        }

        #[test]
        fn scale_keeps_copy_triples(pts in prop::collection::btree_set((-6i64..6, -6i64..6), 0..10), num in 1i64..7, den in 1i64..4) {
            let set = PointSet::new(pts.into_iter().map(|(x, y)| p(x, y)).collect()).unwrap();
            let tri = t(1, 2, 2);
            let lambda = Q::new(num.into(), den.into());
            let (t2, s2) = scale_instance(&tri, &set, &lambda).unwrap();
            prop_assert_eq!(enumerate_copies(&s2, &t2), enumerate_copies(&set, &tri));
        }
    }
}
