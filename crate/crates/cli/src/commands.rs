use serde_json::{json, Value};

use cheby_ramsey_core::deduction::{
    antiperiod_consequences, forced_lines, forced_segment, segment_extension_trace, DeductionReport, Derived,
    Obligation, Reason, Segment, VectorCase,
};
use cheby_ramsey_core::density::{density_lower_torus, density_upper_patch, product_construction, TorusBound};
use cheby_ramsey_core::format::{copy_hypergraph_to_json, obligations_to_json, point_to_pair};
use cheby_ramsey_core::hypergraph::{
    build_copy_hypergraph, hypergraph_chromatic, max_copy_free_subset, witness_search, Witness, WitnessError,
    WitnessOptions, WitnessOutcome,
};
use cheby_ramsey_core::line::{
    chi_line_lower, chi_line_upper, rational_distance_reduction, Avoidance, DistanceSet, LineColoring as Line,
};
use cheby_ramsey_core::plane::{
    certify_lift, plane_chromatic_bounds, sample_verify, LiftAxis, LiftCertificate, PlaneKind, SampleVerdict,
    ShiftVector,
};
use cheby_ramsey_core::{enumerate_copies, linf_dist, Point, Rational, Scalar, Triangle};

use crate::args::{Cli, Command, Route};
use crate::error::CliError;
use crate::{input, render};

pub enum Output {
    Json(Value),
    Svg(String),
}

pub struct RunResult {
    pub config: Value,
    pub output: Output,
    pub exit: u8,
}

fn ok(config: Value, payload: Value) -> Result<RunResult, CliError> {
    Ok(RunResult { config, output: Output::Json(payload), exit: 0 })
}

fn s(r: &Rational) -> String {
    r.to_string()
}

fn tri_json(t: &Triangle) -> Value {
    json!({
        "sides": [s(t.a()), s(t.b()), s(t.c())],
        "class": t.class(),
        "diag_set": t.diag_set().iter().map(s).collect::<Vec<_>>(),
    })
}

fn pts(list: &[Point]) -> Vec<[String; 2]> {
    list.iter().map(point_to_pair).collect()
}

fn line_json(c: &Line<Rational>) -> Value {
    json!({
        "period": s(c.period()),
        "breaks": c.breaks().iter().map(s).collect::<Vec<_>>(),
        "colors": c.colors(),
    })
}

fn axis_name(a: LiftAxis) -> &'static str {
    match a {
        LiftAxis::Horizontal => "horizontal",
        LiftAxis::Diagonal => "diagonal",
    }
}

fn dists_json(d: &DistanceSet<Rational>) -> Vec<String> {
    d.distances().iter().map(s).collect()
}

pub fn run(cli: &Cli) -> Result<RunResult, CliError> {
    match &cli.command {
        Command::Copies { triangle, points } => {
            let t = input::triangle(&triangle.triangle)?;
            let set = input::points(points)?;
            let copies: Vec<Value> = enumerate_copies(&set, &t)
                .into_iter()
                .map(|[i, j, k]| {
                    let (p, q, r) = (set.get(i), set.get(j), set.get(k));
                    json!({
                        "indices": [i, j, k],
                        "points": pts(&[p.clone(), q.clone(), r.clone()]),
                        "distances": [s(&linf_dist(p, q)), s(&linf_dist(q, r)), s(&linf_dist(p, r))],
                    })
                })
                .collect();
            ok(
                json!({ "triangle": triangle.triangle, "points": points.display().to_string() }),
                json!({
                    "triangle": tri_json(&t),
                    "point_count": set.len(),
                    "count": copies.len(),
                    "copies": copies,
                }),
            )
        }

        Command::Verify { triangle, coloring, window, step } => {
            let t = input::triangle(&triangle.triangle)?;
            let c = input::plane_coloring(coloring)?;
            let w = input::rational("--window", window)?;
            let st = input::rational("--step", step)?;
            let certificate = match certify_lift(&c, &t) {
                Ok(LiftCertificate::CopyFree { axis, distances }) => json!({
                    "status": "copy-free",
                    "axis": axis_name(axis),
                    "distances": dists_json(&distances),
                }),
                Ok(LiftCertificate::NotCertified { axis, distances, violation }) => {
                    let v = match violation {
                        Avoidance::Violation { x, y, d } => json!({ "x": s(&x), "y": s(&y), "d": s(&d) }),
                        Avoidance::Avoids => Value::Null,
                    };
                    json!({
                        "status": "not-certified",
                        "axis": axis_name(axis),
                        "distances": dists_json(&distances),
                        "violation": v,
                    })
                }
                Err(e) => json!({ "status": "not-applicable", "reason": e.to_string() }),
            };
            let certified = certificate["status"] == "copy-free";
            let verdict = sample_verify(&c, &t, &w, &st).map_err(CliError::invalid)?;
            let sample = match &verdict {
                SampleVerdict::NoCounterexample { copies_checked, grid_side } => json!({
                    "copies_checked": copies_checked,
                    "grid_side": grid_side,
                    "counterexample": Value::Null,
                }),
                SampleVerdict::MonochromaticCopy { points, color, copies_checked } => json!({
                    "copies_checked": copies_checked,
                    "counterexample": { "points": pts(points), "color": color },
                }),
            };
            let (label, exit) = if verdict.found_counterexample() {
                ("counterexample", 1)
            } else if certified {
                ("certified", 0)
            } else {
                ("not-certified", 2)
            };
            let kind = match c.kind() {
                PlaneKind::Horizontal(_) => "horizontal",
                PlaneKind::Diagonal(_) => "diagonal",
                PlaneKind::Grid(_) => "grid",
            };
            Ok(RunResult {
                config: json!({
                    "triangle": triangle.triangle,
                    "coloring": coloring.display().to_string(),
                    "window": window,
                    "step": step,
                }),
                output: Output::Json(json!({
                    "triangle": tri_json(&t),
                    "coloring": { "kind": kind, "colors": c.color_count() },
                    "certificate": certificate,
                    "sample": sample,
                    "window": s(&w),
                    "step": s(&st),
                    "verdict": label,
                })),
                exit,
            })
        }

        Command::ChiLine { triangle, route, distances, window, max_period } => {
            let t = triangle.as_deref().map(input::triangle).transpose()?;
            let raw: Vec<Rational> = match (&t, distances) {
                (Some(t), _) => match route {
                    Route::Side => t.side_set().to_vec(),
                    Route::Diagonal => t.diag_set().to_vec(),
                },
                (None, Some(d)) => input::rational_list("--distances", d)?,
                (None, None) => return Err(CliError::Invalid("give --triangle or --distances".into())),
            };
            let set = DistanceSet::new(raw).map_err(CliError::invalid)?;
            let red = rational_distance_reduction(&set).map_err(CliError::invalid)?;
            let lower = chi_line_lower(&red.integers, *window).map_err(CliError::invalid)?;
            let upper = chi_line_upper::<Rational>(&red.integers, *max_period);
            let upper_json = match &upper {
                Ok(u) => json!({
                    "value": u.value,
                    "period": u.period,
                    "word": u.word,
                    "coloring": line_json(&u.coloring.scaled(&(Rational::from_int(1) / red.scale.clone()))),
                }),
                Err(e) => json!({ "value": Value::Null, "reason": e.to_string() }),
            };
            let status = match &upper {
                Ok(u) if u.value == lower.value => "exact",
                _ => "bounds",
            };
            let plane = match &t {
                None => Value::Null,
                Some(t) => {
                    let b = plane_chromatic_bounds(t, *max_period).map_err(CliError::invalid)?;
                    let witness = b.witness.as_ref().map(|(c, cert)| {
                        let line = match c.kind() {
                            PlaneKind::Horizontal(l) | PlaneKind::Diagonal(l) => line_json(l),
                            PlaneKind::Grid(_) => Value::Null,
                        };
                        let axis = match cert {
                            LiftCertificate::CopyFree { axis, .. } | LiftCertificate::NotCertified { axis, .. } => {
                                axis_name(*axis)
                            }
                        };
                        json!({ "axis": axis, "line": line, "certified": cert.is_copy_free() })
                    });
                    json!({
                        "lower": b.lower,
                        "copy": pts(&b.copy),
                        "upper": b.upper,
                        "exact": b.is_exact(),
                        "witness": witness,
                    })
                }
            };
            ok(
                json!({
                    "triangle": triangle,
                    "route": format!("{route:?}").to_lowercase(),
                    "distances": distances,
                    "window": window,
                    "max_period": max_period,
                }),
                json!({
                    "distances": dists_json(&set),
                    "integer_distances": red.integers.values(),
                    "scale": s(&red.scale),
                    "lower": {
                        "value": lower.value,
                        "window": lower.window,
                        "refutations": lower.refutations.iter().map(|(k, n)| json!({"colors": k, "nodes": n})).collect::<Vec<_>>(),
                    },
                    "upper": upper_json,
                    "status": status,
                    "plane": plane,
                }),
            )
        }

        Command::ChiSet { triangle, points, hypergraph, colors } => {
            let h = match (points, hypergraph) {
                (_, Some(path)) => input::hypergraph(path)?,
                (Some(path), None) => {
                    let t = input::triangle(triangle.as_deref().unwrap_or_default())?;
                    build_copy_hypergraph(&input::points(path)?, &t)
                }
                (None, None) => return Err(CliError::Invalid("give --points or --hypergraph".into())),
            };
            let chi = hypergraph_chromatic(h.graph(), *colors);
            let coloring = match &chi.witness {
                Witness::Coloring(c) => json!(c),
                _ => Value::Null,
            };
            let alpha = max_copy_free_subset(h.graph());
            let subset = match &alpha.witness {
                Witness::Subset(v) => json!(v),
                _ => Value::Null,
            };
            ok(
                json!({
                    "triangle": triangle,
                    "points": points.as_ref().map(|p| p.display().to_string()),
                    "hypergraph": hypergraph.as_ref().map(|p| p.display().to_string()),
                    "colors": colors,
                }),
                json!({
                    "triangle": tri_json(h.triangle()),
                    "vertices": h.vertex_count(),
                    "edge_count": h.graph().edges().len(),
                    "chromatic": {
                        "optimum": chi.optimum,
                        "exceeds_k_max": chi.optimum.is_none(),
                        "k_max": colors,
                        "refuted": chi.refuted,
                        "coloring": coloring,
                        "node_count": chi.node_count,
                    },
                    "max_copy_free": {
                        "size": alpha.optimum,
                        "subset": subset,
                        "node_count": alpha.node_count,
                    },
                    "hypergraph": copy_hypergraph_to_json(&h),
                }),
            )
        }

        Command::Density { triangle, dims, patch } => {
            let t = input::triangle(&triangle.triangle)?;
            let torus_dims = input::dims("--dims", dims)?;
            let c = t
                .integer_sides()
                .ok_or_else(|| CliError::Invalid("density needs integer sides; rescale the triangle".into()))?[2];
            let patch_dims = match patch {
                Some(p) => input::dims("--patch", p)?,
                None => torus_dims.iter().map(|d| d + c).collect(),
            };
            if patch_dims.len() != torus_dims.len() {
                return Err(CliError::Invalid("--dims and --patch must have the same dimension".into()));
            }
            let lower = density_lower_torus(&t, &torus_dims).map_err(CliError::invalid)?;
            let upper = density_upper_patch(&t, &patch_dims).map_err(CliError::invalid)?;
            let product = if torus_dims.len() == 1 && t.is_degenerate() {
                match product_construction(&t, &lower) {
                    Ok(p) => torus_json(&p),
                    Err(e) => json!({ "error": e.to_string() }),
                }
            } else {
                Value::Null
            };
            ok(
                json!({ "triangle": triangle.triangle, "dims": torus_dims, "patch": patch_dims }),
                json!({
                    "dimension": torus_dims.len(),
                    "torus": torus_json(&lower),
                    "patch": { "dims": upper.dims, "alpha": upper.alpha, "upper": upper.upper.to_string() },
                    "product": product,
                }),
            )
        }

        Command::Witness { triangle, colors, step, window, restarts, budget } => {
            let t = input::triangle(&triangle.triangle)?;
            let st = input::rational("--step", step)?;
            let inv = Rational::from_int(1) / st;
            let q = inv
                .to_i64_exact()
                .filter(|q| *q > 0)
                .ok_or_else(|| CliError::Invalid("--step must be 1/q for a positive integer q".into()))?;
            let opts = WitnessOptions { restarts: *restarts, seed: cli.seed, node_budget: Some(*budget) };
            let config = json!({
                "triangle": triangle.triangle,
                "colors": colors,
                "step": step,
                "window": window,
                "restarts": restarts,
                "budget": budget,
            });
            let (payload, exit) = match witness_search(&t, *colors, q, *window, &opts) {
                Ok(WitnessOutcome::Found { points, hypergraph, restart }) => (
                    json!({
                        "result": "found",
                        "size": points.len(),
                        "points": pts(points.points()),
                        "copies": hypergraph.triples().collect::<Vec<_>>(),
                        "needs_at_least": colors,
                        "restart": restart,
                        "minimality": "no single point can be removed; not globally minimal",
                    }),
                    0,
                ),
                Ok(WitnessOutcome::NotFound { grid_size, coloring }) => (
                    json!({
                        "result": "not-found",
                        "grid_size": grid_size,
                        "grid_colors": coloring.iter().max().map_or(0, |m| m + 1),
                        "reason": format!("the whole grid has a proper coloring with {} colors", colors - 1),
                    }),
                    0,
                ),
                Err(WitnessError::BudgetExhausted { largest_observed }) => (
                    json!({ "result": "budget-exhausted", "largest_observed": largest_observed }),
                    1,
                ),
                Err(e) => return Err(CliError::invalid(e)),
            };
            Ok(RunResult { config, output: Output::Json(payload), exit })
        }

        Command::Deduce { triangle, bound, depth } => {
            let t = input::triangle(&triangle.triangle)?;
            let report = antiperiod_consequences(&t, *bound).map_err(CliError::invalid)?;
            let lines = forced_lines(&t, *bound).map_err(CliError::invalid)?;
            let mut all: Vec<&Obligation<Rational>> = lines.obligations.iter().collect();
            let origin = Point::from_ints(0, 0);
            let segments: Vec<_> = VectorCase::all()
                .into_iter()
                .map(|case| {
                    let v = case.vector(&t);
                    let other = origin.translate(&v.dx, &v.dy);
                    forced_segment((&origin, &other), case, &t).map(|fs| (case, other, fs))
                })
                .collect::<Result<_, _>>()
                .map_err(CliError::invalid)?;
            for (_, _, fs) in &segments {
                all.extend(&fs.obligations);
            }
            let trace = segment_extension_trace(&t, *depth);
            if let Ok(tr) = &trace {
                all.extend(&tr.obligations);
            }
            let verified = all.iter().filter(|o| o.verified).count();
            let total = all.len();
            let trace_json = match &trace {
                Ok(tr) => json!({
                    "case": tr.case,
                    "growth": s(&tr.growth),
                    "steps": tr.steps.iter().map(|st| json!({
                        "level": st.level,
                        "color": st.color,
                        "segment": segment_json(&st.segment),
                    })).collect::<Vec<_>>(),
                    "obligations": obligations_to_json(&tr.obligations),
                }),
                Err(e) => json!({ "skipped": e.to_string() }),
            };
            let segments_json: Vec<Value> = segments
                .iter()
                .map(|(case, other, fs)| {
                    json!({
                        "part": case.part,
                        "orientation": case.orientation,
                        "vector": vec_json(&case.vector(&t)),
                        "pair": pts(&[origin.clone(), other.clone()]),
                        "segment": segment_json(&fs.segment),
                        "obligations": obligations_to_json(&fs.obligations),
                    })
                })
                .collect();
            Ok(RunResult {
                config: json!({ "triangle": triangle.triangle, "bound": bound, "depth": depth }),
                output: Output::Json(json!({
                    "triangle": tri_json(&t),
                    "consequences": consequences_json(&report),
                    "forced_lines": {
                        "red_line": s(&lines.red_line),
                        "blue_lines": lines.blue_lines.iter().map(s).collect::<Vec<_>>(),
                        "certificate": lines.certificate,
                        "search_bound": lines.search_bound,
                        "obligations": obligations_to_json(&lines.obligations),
                    },
                    "forced_segments": segments_json,
                    "trace": trace_json,
                    "summary": {
                        "obligations": total,
                        "verified": verified,
                        "decompositions_verified": report.check_decompositions(),
                    },
                })),
                exit: if verified == total && report.check_decompositions() { 0 } else { 1 },
            })
        }

        Command::Render { triangle, coloring, points, window } => {
            let svg = if let Some(path) = coloring {
                let c = input::plane_coloring(path)?;
                let w = input::rational("--window", window)?;
                if w <= Rational::from_int(0) {
                    return Err(CliError::Invalid("--window must be positive".into()));
                }
                render::coloring_svg(&c, &w)
            } else if let Some(path) = points {
                let set = input::points(path)?;
                let copies = match triangle {
                    Some(tt) => enumerate_copies(&set, &input::triangle(tt)?),
                    None => Vec::new(),
                };
                render::points_svg(&set, &copies)
            } else {
                return Err(CliError::Invalid("give --coloring or --points".into()));
            };
            Ok(RunResult { config: Value::Null, output: Output::Svg(svg), exit: 0 })
        }
    }
}

fn torus_json(b: &TorusBound) -> Value {
    let witness: Vec<Value> = if b.dims.len() == 1 {
        b.witness.iter().map(|p| json!([p.0])).collect()
    } else {
        b.witness.iter().map(|p| json!([p.0, p.1])).collect()
    };
    json!({ "dims": b.dims, "size": b.witness.len(), "witness": witness, "lower": b.lower.to_string() })
}

fn vec_json(v: &ShiftVector<Rational>) -> [String; 2] {
    [s(&v.dx), s(&v.dy)]
}

fn segment_json(seg: &Segment<Rational>) -> Value {
    json!({ "start": point_to_pair(&seg.start()), "end": point_to_pair(&seg.end()), "length": s(&seg.length) })
}

fn derived_json(d: &Derived<Rational>) -> Value {
    let reason = match &d.reason {
        Reason::Lemma(part) => json!({ "lemma_part": part.number() }),
        Reason::Combination(terms) => json!({
            "combination": terms.iter().map(|(k, v)| json!({ "coefficient": k, "vector": vec_json(v) })).collect::<Vec<_>>(),
        }),
    };
    json!({ "vector": vec_json(&d.vector), "label": d.label, "reason": reason })
}

fn consequences_json(r: &DeductionReport<Rational>) -> Value {
    let list = |v: &[Derived<Rational>]| v.iter().map(derived_json).collect::<Vec<_>>();
    json!({
        "hypothesis": r.hypothesis,
        "anti_periods": list(&r.anti_periods),
        "periods": list(&r.periods),
        "search_bound": r.search_bound,
        "certificate": r.certificate,
        "certificate_periods": list(&r.certificate_periods),
        "extra_anti_periods": list(&r.extra_anti_periods),
    })
}
