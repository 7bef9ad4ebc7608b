//! Replays the period/anti-period deductions for a fixed red-blue coloring
//! with no monochromatic copy of a non-degenerate triangle, on concrete
//! rational side lengths.
//!
//! Nothing here is a theorem prover. Every step that relies on three points
//! forming a copy is emitted as an [`Obligation`] and checked with exact
//! arithmetic when it is created, so a report is only as trustworthy as its
//! `verified` flags.

use crate::geometry::{is_copy, Point, Triangle};
use crate::plane::{ShiftLabel, ShiftVector};
use crate::scalar::{denominator_lcm, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DeductionError {
    #[error("deduction requires a non-degenerate triangle")]
    DegenerateTriangle,
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),
    #[error("pair difference does not match the case vector")]
    PairDoesNotMatchCase,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentAxis {
    Horizontal,
    Vertical,
}

/// Closed axis-parallel segment starting at `anchor` (its lower or left
/// end).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Segment<S> {
    pub axis: SegmentAxis,
    pub anchor: Point<S>,
    pub length: S,
}

impl<S: Scalar> Segment<S> {
    /// Segment between two points sharing an x or a y coordinate.
    pub fn between(p: Point<S>, q: Point<S>) -> Self {
        let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
        if lo.x == hi.x {
            Segment { axis: SegmentAxis::Vertical, length: hi.y - lo.y.clone(), anchor: lo }
        } else {
            debug_assert!(lo.y == hi.y);
            Segment { axis: SegmentAxis::Horizontal, length: hi.x - lo.x.clone(), anchor: lo }
        }
    }

    pub fn horizontal(x0: S, x1: S, y: S) -> Self {
        Segment::between(Point::new(x0, y.clone()), Point::new(x1, y))
    }

    pub fn start(&self) -> Point<S> {
        self.anchor.clone()
    }

    pub fn end(&self) -> Point<S> {
        self.point_at(&self.length)
    }

    /// Point at arclength `t` from the anchor.
    pub fn point_at(&self, t: &S) -> Point<S> {
        match self.axis {
            SegmentAxis::Horizontal => self.anchor.translate(t, &S::zero()),
            SegmentAxis::Vertical => self.anchor.translate(&S::zero(), t),
        }
    }

    pub fn contains(&self, p: &Point<S>) -> bool {
        let (along, across, a0, c0) = match self.axis {
            SegmentAxis::Horizontal => (&p.x, &p.y, &self.anchor.x, &self.anchor.y),
            SegmentAxis::Vertical => (&p.y, &p.x, &self.anchor.y, &self.anchor.x),
        };
        across == c0 && along >= a0 && *along <= a0.clone() + self.length.clone()
    }

    /// `k + 1` equally spaced points including both ends.
    pub fn samples(&self, k: i64) -> Vec<Point<S>> {
        let k = k.max(1);
        (0..=k)
            .map(|i| self.point_at(&(self.length.clone() * S::from_int(i) / S::from_int(k))))
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expectation {
    /// The three points form a copy of the triangle.
    Copy,
    /// `points[0]` lies on the closed segment `points[1]..points[2]`.
    OnSegment,
    /// The segment `points[0..2]` reflects onto `points[2..4]` about the
    /// vertical line `x = points[4].x`.
    Reflection,
    /// Segments `points[0..2]` and `points[2..4]` overlap or touch.
    Cover,
    /// `points[0].x < points[1].x` (a scalar inequality carried as points).
    StrictLess,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Obligation<S> {
    pub expected: Expectation,
    pub points: Vec<Point<S>>,
    pub verified: bool,
    pub note: String,
}

impl<S: Scalar> Obligation<S> {
    pub fn copy(note: impl Into<String>, z: [Point<S>; 3], t: &Triangle<S>) -> Self {
        let verified = is_copy(&z[0], &z[1], &z[2], t);
        Obligation { expected: Expectation::Copy, points: z.to_vec(), verified, note: note.into() }
    }

    pub fn on_segment(note: impl Into<String>, p: Point<S>, seg: &Segment<S>) -> Self {
        let verified = seg.contains(&p);
        Obligation {
            expected: Expectation::OnSegment,
            points: vec![p, seg.start(), seg.end()],
            verified,
            note: note.into(),
        }
    }

    pub fn reflection(note: impl Into<String>, from: &Segment<S>, onto: &Segment<S>, axis_x: S) -> Self {
        let two = S::from_int(2);
        let mirror = |p: &Point<S>| Point::new(two.clone() * axis_x.clone() - p.x.clone(), p.y.clone());
        let image = Segment::between(mirror(&from.start()), mirror(&from.end()));
        let verified = image == *onto;
        Obligation {
            expected: Expectation::Reflection,
            points: vec![from.start(), from.end(), onto.start(), onto.end(), Point::new(axis_x, S::zero())],
            verified,
            note: note.into(),
        }
    }

    pub fn cover(note: impl Into<String>, left: &Segment<S>, right: &Segment<S>) -> Self {
        let verified = left.axis == right.axis
            && (right.contains(&left.start())
                || right.contains(&left.end())
                || left.contains(&right.start()));
        Obligation {
            expected: Expectation::Cover,
            points: vec![left.start(), left.end(), right.start(), right.end()],
            verified,
            note: note.into(),
        }
    }

    pub fn less(note: impl Into<String>, lhs: S, rhs: S) -> Self {
        let verified = lhs < rhs;
        Obligation {
            expected: Expectation::StrictLess,
            points: vec![Point::new(lhs, S::zero()), Point::new(rhs, S::zero())],
            verified,
            note: note.into(),
        }
    }
}

fn require_nondegenerate<S: Scalar>(t: &Triangle<S>) -> Result<(), DeductionError> {
    if t.is_degenerate() {
        Err(DeductionError::DegenerateTriangle)
    } else {
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Forced segments

/// Which part of the anti-period lemma a vector belongs to; named by the
/// length of the segment it forces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LemmaPart {
    /// `(±a, c-b)`, `(c-b, ±a)`; forces length `b+c-a`.
    LongSide,
    /// `(±b, a-c)`, `(a-c, ±b)`; forces length `c+a-b`.
    MiddleSide,
    /// `(±c, b-a)`, `(b-a, ±c)`; forces length `a+b-c`.
    ShortSide,
}

impl LemmaPart {
    pub const ALL: [LemmaPart; 3] = [LemmaPart::LongSide, LemmaPart::MiddleSide, LemmaPart::ShortSide];

    /// Side lengths `(s1, s2, s3)` with base vector `(s2 - s1, s3)` and
    /// forced length `s1 + s2 - s3`.
    fn roles<S: Scalar>(self, t: &Triangle<S>) -> (S, S, S) {
        let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
        match self {
            LemmaPart::LongSide => (b, c, a),
            LemmaPart::MiddleSide => (c, a, b),
            LemmaPart::ShortSide => (a, b, c),
        }
    }

    pub fn number(self) -> u8 {
        match self {
            LemmaPart::LongSide => 1,
            LemmaPart::MiddleSide => 2,
            LemmaPart::ShortSide => 3,
        }
    }
}

/// Orientation of a case vector relative to its base `(X, Y)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Orientation {
    /// `(X, Y)`
    Base,
    /// `(X, -Y)`
    FlipY,
    /// `(Y, X)`
    Swap,
    /// `(-Y, X)`
    SwapNeg,
}

impl Orientation {
    pub const ALL: [Orientation; 4] =
        [Orientation::Base, Orientation::FlipY, Orientation::Swap, Orientation::SwapNeg];

    /// The signed permutation taking the base vector to this orientation;
    /// every such map is a max-norm isometry.
    fn apply<S: Scalar>(self, u: S, v: S) -> (S, S) {
        match self {
            Orientation::Base => (u, v),
            Orientation::FlipY => (u, -v),
            Orientation::Swap => (v, u),
            Orientation::SwapNeg => (-v, u),
        }
    }
}

/// One of the twelve vectors of the anti-period lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub struct VectorCase {
    pub part: LemmaPart,
    pub orientation: Orientation,
}

impl VectorCase {
    pub fn all() -> Vec<VectorCase> {
        LemmaPart::ALL
            .iter()
            .flat_map(|&part| Orientation::ALL.iter().map(move |&orientation| VectorCase { part, orientation }))
            .collect()
    }

    pub fn vector<S: Scalar>(&self, t: &Triangle<S>) -> ShiftVector<S> {
        let (s1, s2, s3) = self.part.roles(t);
        let (dx, dy) = self.orientation.apply(s2 - s1, s3);
        ShiftVector::new(dx, dy)
    }

    pub fn forced_length<S: Scalar>(&self, t: &Triangle<S>) -> S {
        let (s1, s2, s3) = self.part.roles(t);
        s1 + s2 - s3
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedSegment<S> {
    pub case: VectorCase,
    pub segment: Segment<S>,
    /// Copies formed by the pair and sample points of the segment.
    pub obligations: Vec<Obligation<S>>,
}

/// If the pair has equal colors and differs by the case vector (either
/// sign), every point of the returned closed segment forms a copy with it,
/// so the segment is monochromatic in the other color.
pub fn forced_segment<S: Scalar>(
    pair: (&Point<S>, &Point<S>),
    case: VectorCase,
    t: &Triangle<S>,
) -> Result<ForcedSegment<S>, DeductionError> {
    require_nondegenerate(t)?;
    let v = case.vector(t);
    let diff = ShiftVector::new(pair.1.x.clone() - pair.0.x.clone(), pair.1.y.clone() - pair.0.y.clone());
    // Base configuration: first = p, second = p - v.
    let first = if diff == -v.clone() {
        pair.0
    } else if diff == v {
        pair.1
    } else {
        return Err(DeductionError::PairDoesNotMatchCase);
    };
    let (s1, s2, s3) = case.part.roles(t);
    // Offsets from `first` in the base frame: (-s2, y) for y in [-s2, s1 - s3].
    let lo = case.orientation.apply(-s2.clone(), -s2.clone());
    let hi = case.orientation.apply(-s2, s1 - s3);
    let segment = Segment::between(first.translate(&lo.0, &lo.1), first.translate(&hi.0, &hi.1));
    debug_assert!(segment.length == case.forced_length(t));
    let obligations = segment
        .samples(4)
        .into_iter()
        .map(|z| Obligation::copy("pair + segment point", [pair.0.clone(), pair.1.clone(), z], t))
        .collect();
    Ok(ForcedSegment { case, segment, obligations })
}

// ---------------------------------------------------------------------------
// Anti-period consequences

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reason<S> {
    /// Forced directly by a part of the anti-period lemma.
    Lemma(LemmaPart),
    /// Integer combination of earlier derived vectors.
    Combination(Vec<(i64, ShiftVector<S>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derived<S> {
    pub vector: ShiftVector<S>,
    pub label: ShiftLabel,
    pub reason: Reason<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeductionReport<S> {
    pub triangle: Triangle<S>,
    pub hypothesis: String,
    pub anti_periods: Vec<Derived<S>>,
    pub periods: Vec<Derived<S>>,
    pub search_bound: u32,
    /// First `(n, m, k)` in the search order with `0 < 2an + 2bm + 2ck <= a+b-c`.
    pub certificate: Option<[i64; 3]>,
    /// `(w, 0)` and `(0, w)` for `w = 2an + 2bm + 2ck`.
    pub certificate_periods: Vec<Derived<S>>,
    pub extra_anti_periods: Vec<Derived<S>>,
}

impl<S: Scalar> DeductionReport<S> {
    pub fn all(&self) -> impl Iterator<Item = &Derived<S>> {
        self.anti_periods
            .iter()
            .chain(&self.periods)
            .chain(&self.certificate_periods)
            .chain(&self.extra_anti_periods)
    }

    /// Every combination sums to its vector, uses only vectors derived
    /// before it, and its label is the sign product of its terms.
    pub fn check_decompositions(&self) -> bool {
        let mut known: Vec<(ShiftVector<S>, ShiftLabel)> = Vec::new();
        for d in self.all() {
            if let Reason::Combination(terms) = &d.reason {
                let mut sum = ShiftVector::new(S::zero(), S::zero());
                let mut label = ShiftLabel::Period;
                for (coef, v) in terms {
                    let Some((_, l)) = known.iter().find(|(k, _)| k == v) else {
                        return false;
                    };
                    sum = sum
                        + ShiftVector::new(v.dx.clone() * S::from_int(*coef), v.dy.clone() * S::from_int(*coef));
                    if coef.rem_euclid(2) == 1 {
                        label = label.combine(*l);
                    }
                }
                if sum != d.vector || label != d.label {
                    return false;
                }
            }
            known.push((d.vector.clone(), d.label));
        }
        true
    }
}

/// Sides scaled to integers by the lcm of their denominators.
fn integer_sides<S: Scalar>(t: &Triangle<S>) -> [i128; 3] {
    let sides = t.side_set();
    let l = num_rational::BigRational::from_integer(denominator_lcm(&sides));
    sides.map(|s| {
        let r = s.to_ratio() * l.clone();
        i128::try_from(r.to_integer()).expect("side lengths fit in i128 after clearing denominators")
    })
}

/// All `(n, m, k)` with `|n|, |m|, |k| <= bound` and
/// `0 < 2an + 2bm + 2ck <= a + b - c`, ordered by `|n| + |m| + |k|` and then
/// lexicographically.
pub fn antiperiod_certificates<S: Scalar>(t: &Triangle<S>, bound: u32) -> Vec<[i64; 3]> {
    let [a, b, c] = integer_sides(t);
    let limit = a + b - c;
    let n = bound as i64;
    let mut out = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            for k in -n..=n {
                let w = 2 * (a * i as i128 + b * j as i128 + c * k as i128);
                if w > 0 && w <= limit {
                    out.push([i, j, k]);
                }
            }
        }
    }
    out.sort_by_key(|v| (v.iter().map(|x| x.abs()).sum::<i64>(), *v));
    out
}

/// `(n, m)` with `|n|, |m| <= bound`, `n + m` even and `c - b <= an + bm <= a`,
/// in the same order as [`antiperiod_certificates`].
pub fn line_certificates<S: Scalar>(t: &Triangle<S>, bound: u32) -> Vec<[i64; 2]> {
    let [a, b, c] = integer_sides(t);
    let n = bound as i64;
    let mut out = Vec::new();
    for i in -n..=n {
        for j in -n..=n {
            let h = a * i as i128 + b * j as i128;
            if (i + j).rem_euclid(2) == 0 && c - b <= h && h <= a {
                out.push([i, j]);
            }
        }
    }
    out.sort_by_key(|v| (v[0].abs() + v[1].abs(), *v));
    out
}

fn push_unique<S: Scalar>(list: &mut Vec<Derived<S>>, d: Derived<S>) {
    if !list.iter().any(|e| e.vector == d.vector) {
        list.push(d);
    }
}

/// Consequences of "no axis-parallel segment of length `c+a-b` is
/// monochromatic": eight anti-periods, six periods with their
/// decompositions, and, when a small integer certificate exists, four more
/// anti-periods.
pub fn antiperiod_consequences<S: Scalar>(
    t: &Triangle<S>,
    bound: u32,
) -> Result<DeductionReport<S>, DeductionError> {
    require_nondegenerate(t)?;
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let z = S::zero();
    let two = S::from_int(2);
    let v = |x: &S, y: &S| ShiftVector::new(x.clone(), y.clone());

    let mut anti_periods = Vec::new();
    for part in [LemmaPart::LongSide, LemmaPart::MiddleSide] {
        // Order: (a, ·), (-a, ·), (·, a), (·, -a).
        let (_, _, s3) = part.roles(t);
        let (s1, s2, _) = part.roles(t);
        let x = s2 - s1;
        for vec in [v(&s3, &x), v(&-s3.clone(), &x), v(&x, &s3), v(&x, &-s3.clone())] {
            push_unique(&mut anti_periods, Derived { vector: vec, label: ShiftLabel::AntiPeriod, reason: Reason::Lemma(part) });
        }
    }

    let (cb, ac) = (c.clone() - b.clone(), a.clone() - c.clone());
    let combo = |terms: Vec<(i64, ShiftVector<S>)>| Reason::Combination(terms);
    let period = |vector: ShiftVector<S>, reason: Reason<S>| Derived { vector, label: ShiftLabel::Period, reason };
    let p2b_x = v(&(two.clone() * b.clone()), &z);
    let p2b_y = v(&z, &(two.clone() * b.clone()));
    let candidates = vec![
        period(v(&(two.clone() * a.clone()), &z), combo(vec![(1, v(&a, &cb)), (-1, v(&-a.clone(), &cb))])),
        period(p2b_x.clone(), combo(vec![(1, v(&b, &ac)), (-1, v(&-b.clone(), &ac))])),
        period(
            v(&(two.clone() * c.clone()), &z),
            combo(vec![(1, v(&cb, &a)), (1, v(&cb, &-a.clone())), (1, p2b_x)]),
        ),
        period(v(&z, &(two.clone() * a.clone())), combo(vec![(1, v(&cb, &a)), (-1, v(&cb, &-a.clone()))])),
        period(p2b_y.clone(), combo(vec![(1, v(&ac, &b)), (-1, v(&ac, &-b.clone()))])),
        period(
            v(&z, &(two.clone() * c.clone())),
            combo(vec![(1, v(&a, &cb)), (1, v(&-a.clone(), &cb)), (1, p2b_y)]),
        ),
    ];
    let mut periods = Vec::new();
    for p in candidates {
        push_unique(&mut periods, p);
    }

    let certificate = antiperiod_certificates(t, bound).into_iter().next();
    let mut certificate_periods = Vec::new();
    let mut extra_anti_periods = Vec::new();
    if let Some([n, m, k]) = certificate {
        let w = two.clone() * (a.clone() * S::from_int(n) + b.clone() * S::from_int(m) + c.clone() * S::from_int(k));
        let terms_x = vec![
            (n, v(&(two.clone() * a.clone()), &z)),
            (m, v(&(two.clone() * b.clone()), &z)),
            (k, v(&(two.clone() * c.clone()), &z)),
        ];
        let terms_y = terms_x.iter().map(|(k, t)| (*k, v(&t.dy, &t.dx))).collect();
        let keep = |terms: Vec<(i64, ShiftVector<S>)>| terms.into_iter().filter(|(k, _)| *k != 0).collect();
        certificate_periods.push(period(v(&w, &z), combo(keep(terms_x))));
        certificate_periods.push(period(v(&z, &w), combo(keep(terms_y))));
        let ba = b.clone() - a.clone();
        for vec in [v(&c, &ba), v(&-c.clone(), &ba), v(&ba, &c), v(&ba, &-c.clone())] {
            push_unique(
                &mut extra_anti_periods,
                Derived { vector: vec, label: ShiftLabel::AntiPeriod, reason: Reason::Lemma(LemmaPart::ShortSide) },
            );
        }
    }

    Ok(DeductionReport {
        triangle: t.clone(),
        hypothesis: format!("no monochromatic axis-parallel segment of length c+a-b = {}", c + a - b),
        anti_periods,
        periods,
        search_bound: bound,
        certificate,
        certificate_periods,
        extra_anti_periods,
    })
}

// ---------------------------------------------------------------------------
// Forced lines

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForcedLines<S> {
    pub triangle: Triangle<S>,
    /// The hypothesis line `y = 0` (red).
    pub red_line: S,
    /// Lines `y = h` forced blue.
    pub blue_lines: Vec<S>,
    pub search_bound: u32,
    pub certificate: Option<[i64; 2]>,
    pub obligations: Vec<Obligation<S>>,
}

/// Copy witnessing that the line `y = h + sign * s` has the opposite color of
/// the monochromatic line `y = h`, instantiated at `x = 0`.
fn line_step<S: Scalar>(t: &Triangle<S>, h: &S, step_is_a: bool, sign: i64) -> Obligation<S> {
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let (s, other) = if step_is_a { (a, b) } else { (b, a) };
    let target = h.clone() + S::from_int(sign) * s;
    Obligation::copy(
        format!("line y={h} forces opposite color on y={target}"),
        [
            Point::new(S::zero(), target),
            Point::new(-c.clone(), h.clone()),
            Point::new(other - c, h.clone()),
        ],
        t,
    )
}

/// If `y = 0` is red then `y = a` and `y = b` are blue, and `y = c` too when
/// some `n + m` even has `c - b <= an + bm <= a`.
pub fn forced_lines<S: Scalar>(t: &Triangle<S>, bound: u32) -> Result<ForcedLines<S>, DeductionError> {
    require_nondegenerate(t)?;
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let zero = S::zero();
    let mut obligations = vec![
        Obligation::copy(
            "line y=a blue",
            [Point::new(zero.clone(), a.clone()), Point::new(-c.clone(), zero.clone()), Point::new(b.clone() - c.clone(), zero.clone())],
            t,
        ),
        Obligation::copy(
            "line y=b blue",
            [Point::new(zero.clone(), b.clone()), Point::new(-c.clone(), zero.clone()), Point::new(a.clone() - c.clone(), zero.clone())],
            t,
        ),
    ];
    let mut blue_lines = vec![a.clone(), b.clone()];
    let certificate = line_certificates(t, bound).into_iter().next();
    if let Some([n, m]) = certificate {
        // Walk from y = 0 to y = an + bm; each step flips the line color.
        let mut h = zero.clone();
        for (count, is_a, s) in [(n, true, &a), (m, false, &b)] {
            let sign = count.signum();
            for _ in 0..count.abs() {
                obligations.push(line_step(t, &h, is_a, sign));
                h = h + S::from_int(sign) * s.clone();
            }
        }
        obligations.push(Obligation::copy(
            "line y=c blue",
            [Point::new(zero.clone(), c.clone()), Point::new(-b.clone(), h), Point::new(a - b, zero)],
            t,
        ));
        if !blue_lines.contains(&c) {
            blue_lines.push(c);
        }
    }
    blue_lines.dedup();
    Ok(ForcedLines {
        triangle: t.clone(),
        red_line: S::zero(),
        blue_lines,
        search_bound: bound,
        certificate,
        obligations,
    })
}

// ---------------------------------------------------------------------------
// Segment extension

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TraceCase {
    /// `a < b = c`
    Isosceles,
    /// `a < b < c`
    General,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SegmentColor {
    Red,
    Blue,
}

impl SegmentColor {
    fn flip(self) -> Self {
        match self {
            SegmentColor::Red => SegmentColor::Blue,
            SegmentColor::Blue => SegmentColor::Red,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep<S> {
    pub level: usize,
    pub color: SegmentColor,
    pub segment: Segment<S>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeductionTrace<S> {
    pub triangle: Triangle<S>,
    pub case: TraceCase,
    /// Each step lengthens the segment by twice this amount.
    pub growth: S,
    pub steps: Vec<TraceStep<S>>,
    pub obligations: Vec<Obligation<S>>,
}

impl<S> DeductionTrace<S> {
    pub fn all_verified(&self) -> bool {
        self.obligations.iter().all(|o| o.verified)
    }
}

/// Frame in which the current segment is `[0, len] x {0}` and the next one
/// lies on `y = height`: `x = x0 + u`, `y = y0 + dir * v`.
struct Frame<S> {
    x0: S,
    y0: S,
    dir: S,
}

impl<S: Scalar> Frame<S> {
    fn pt(&self, u: &S, v: &S) -> Point<S> {
        Point::new(self.x0.clone() + u.clone(), self.y0.clone() + self.dir.clone() * v.clone())
    }

    fn seg(&self, u0: &S, u1: &S, v: &S) -> Segment<S> {
        Segment::between(self.pt(u0, v), self.pt(u1, v))
    }
}

/// Replays how a monochromatic horizontal segment grows into a
/// monochromatic line: alternating red and blue segments on two horizontal
/// lines, each one `2 * growth` longer than the last.
pub fn segment_extension_trace<S: Scalar>(
    t: &Triangle<S>,
    depth: usize,
) -> Result<DeductionTrace<S>, DeductionError> {
    require_nondegenerate(t)?;
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    if a >= b {
        return Err(DeductionError::HypothesisViolated(format!("requires a < b, got a = b = {a}")));
    }
    let case = if b == c { TraceCase::Isosceles } else { TraceCase::General };
    let (base_len, growth) = match case {
        TraceCase::Isosceles => (a.clone(), b.clone() - a.clone()),
        TraceCase::General => (b.clone() + c.clone() - a.clone(), c.clone() - b.clone()),
    };
    let zero = S::zero();
    let mut steps = vec![TraceStep {
        level: 0,
        color: SegmentColor::Red,
        segment: Segment::horizontal(zero.clone(), base_len, zero.clone()),
    }];
    let mut obligations = Vec::new();
    for level in 1..=depth {
        let prev = steps.last().expect("trace starts non-empty").clone();
        let up = prev.segment.anchor.y == zero;
        let frame = Frame {
            x0: prev.segment.anchor.x.clone(),
            y0: prev.segment.anchor.y.clone(),
            dir: S::from_int(if up { 1 } else { -1 }),
        };
        let len = prev.segment.length.clone();
        let next = match case {
            TraceCase::Isosceles => isosceles_step(t, &frame, &len, &prev.segment, &mut obligations),
            TraceCase::General => general_step(t, &frame, &len, &prev.segment, &mut obligations),
        };
        debug_assert!(next.length == len + S::from_int(2) * growth.clone());
        steps.push(TraceStep { level, color: prev.color.flip(), segment: next });
    }
    Ok(DeductionTrace { triangle: t.clone(), case, growth, steps, obligations })
}

/// `[0, len]` on `y = 0` forces `[a - b, len - a + b]` on `y = b`: every
/// point there is at distance `b` from both ends of some pair `u, u + a`.
fn isosceles_step<S: Scalar>(
    t: &Triangle<S>,
    f: &Frame<S>,
    len: &S,
    current: &Segment<S>,
    out: &mut Vec<Obligation<S>>,
) -> Segment<S> {
    let (a, b) = (t.a().clone(), t.b().clone());
    let zero = S::zero();
    let next = f.seg(&(a.clone() - b.clone()), &(len.clone() - a.clone() + b.clone()), &b);
    let local = Segment::horizontal(a.clone() - b.clone(), len.clone() - a.clone() + b.clone(), zero.clone());
    for s in local.samples(4) {
        let x = s.x;
        let u = (x.clone() - b.clone()).max(zero.clone()).min(len.clone() - a.clone());
        let p = f.pt(&u, &zero);
        let q = f.pt(&(u.clone() + a.clone()), &zero);
        out.push(Obligation::on_segment("pair end on current segment", p.clone(), current));
        out.push(Obligation::on_segment("pair end on current segment", q.clone(), current));
        out.push(Obligation::copy("pair at distance a forces point", [f.pt(&x, &b), p, q], t));
    }
    next
}

/// `[0, len]` on `y = 0` (len >= b+c-a) forces `[b - c, len + c - b]` on
/// `y = a`, assembled from `J1 = [c, len+c-b]`, `J2 = [c-b, c]` and their
/// mirror images about `x = len / 2`.
fn general_step<S: Scalar>(
    t: &Triangle<S>,
    f: &Frame<S>,
    len: &S,
    current: &Segment<S>,
    out: &mut Vec<Obligation<S>>,
) -> Segment<S> {
    let (a, b, c) = (t.a().clone(), t.b().clone(), t.c().clone());
    let zero = S::zero();
    let two = S::from_int(2);
    let j1 = (c.clone(), len.clone() + c.clone() - b.clone());
    let j2 = (c.clone() - b.clone(), c.clone());
    let j1_seg = f.seg(&j1.0, &j1.1, &a);
    let j2_seg = f.seg(&j2.0, &j2.1, &a);
    let union_j = f.seg(&j2.0, &j1.1, &a);

    // J1: both partners lie on the current segment.
    for s in Segment::horizontal(j1.0.clone(), j1.1.clone(), zero.clone()).samples(4) {
        let x0 = s.x;
        let p = f.pt(&(x0.clone() - c.clone()), &zero);
        let q = f.pt(&(x0.clone() + b.clone() - c.clone()), &zero);
        out.push(Obligation::on_segment("J1 partner on current segment", p.clone(), current));
        out.push(Obligation::on_segment("J1 partner on current segment", q.clone(), current));
        out.push(Obligation::copy("J1 point forced", [f.pt(&x0, &a), p, q], t));
    }

    // J2: five-point chain marching by b - a until it lands in J1.
    let stride = b.clone() - a.clone();
    out.push(Obligation::less("chain stride b-a shorter than J1", stride.clone(), j1.1.clone() - j1.0.clone()));
    for s in Segment::horizontal(j2.0.clone(), j2.1.clone(), zero.clone()).samples(4) {
        let mut x1 = s.x;
        while x1 < j1.0 {
            let z1 = f.pt(&x1, &a);
            let z2 = f.pt(&(x1.clone() + b.clone() - c.clone()), &zero);
            let z3 = f.pt(&(x1.clone() + b.clone()), &(c.clone() + a.clone() - b.clone()));
            let z4 = f.pt(&(x1.clone() + b.clone()), &(a.clone() - b.clone()));
            let z5 = f.pt(&(x1.clone() + stride.clone()), &a);
            out.push(Obligation::on_segment("z2 on current segment", z2.clone(), current));
            out.push(Obligation::copy("z1 z2 z3", [z1.clone(), z2.clone(), z3.clone()], t));
            out.push(Obligation::copy("z1 z2 z4", [z1, z2, z4.clone()], t));
            out.push(Obligation::copy("z3 z4 z5", [z3, z4, z5.clone()], t));
            out.push(Obligation::on_segment("z5 in J2 ∪ J1", z5, &union_j));
            x1 = x1 + stride.clone();
        }
        out.push(Obligation::on_segment("chain ends in J1", f.pt(&x1, &a), &j1_seg));
    }

    // Mirror about x = len/2 in the local frame.
    let axis_local = len.clone() / two.clone();
    let mirror = |u: &S| len.clone() - u.clone();
    let j1m = f.seg(&mirror(&j1.1), &mirror(&j1.0), &a);
    let j2m = f.seg(&mirror(&j2.1), &mirror(&j2.0), &a);
    let axis_x = f.x0.clone() + axis_local;
    out.push(Obligation::reflection("current segment symmetric", current, current, axis_x.clone()));
    out.push(Obligation::reflection("J1' mirrors J1", &j1_seg, &j1m, axis_x.clone()));
    out.push(Obligation::reflection("J2' mirrors J2", &j2_seg, &j2m, axis_x));
    out.push(Obligation::cover("J1' meets J2'", &j1m, &j2m));
    let left_half = f.seg(&mirror(&j1.1), &mirror(&j2.0), &a);
    out.push(Obligation::cover("J1' ∪ J2' meets J2 ∪ J1", &left_half, &union_j));
    out.push(Obligation::cover("J2 meets J1", &j2_seg, &j1_seg));

    f.seg(&mirror(&j1.1), &j1.1, &a)
}
