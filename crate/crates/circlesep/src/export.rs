//! Pictures of a graph: Graphviz DOT for the abstract structure and an SVG
//! of the stereographic chart. Both are presentation artifacts — they use
//! floating point freely and nothing downstream depends on them.

use std::fmt::Write as _;

use crate::dotset::DotSet;
use crate::geom::DotConfig;
use crate::voronoi::{CircleOrientation, VertexColor, VertexKey, VoronoiGraph};

fn node_id(key: &VertexKey) -> String {
    let suffix = match key.orientation {
        CircleOrientation::Canonical => "c",
        CircleOrientation::Reversed => "r",
    };
    format!(
        "v{}_{}_{}_{}",
        key.triple[0] + 1,
        key.triple[1] + 1,
        key.triple[2] + 1,
        suffix
    )
}

fn set_braces(set: DotSet) -> String {
    let inner: Vec<String> = set.iter().map(|i| (i + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Graphviz rendering. Vertices are filled circles in their own color
/// (white-filled nodes keep black text, black-filled ones get white text),
/// and each edge is labeled `{i,j}|A`: the tied pair and the set of dots
/// strictly nearer than it.
pub fn to_dot(graph: &VoronoiGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "graph order_{} {{", graph.k);
    let _ = writeln!(out, "  layout=neato;");
    let _ = writeln!(out, "  node [shape=circle, style=filled];");
    for (key, data) in &graph.vertices {
        let (fill, font) = match data.color {
            VertexColor::White => ("white", "black"),
            VertexColor::Black => ("black", "white"),
        };
        let _ = writeln!(
            out,
            "  {} [fillcolor=\"{}\", fontcolor=\"{}\", color=\"black\", label=\"{}\"];",
            node_id(key),
            fill,
            font,
            set_braces(DotSet::from_indices(key.triple)),
        );
    }
    for (key, data) in &graph.edges {
        let _ = writeln!(
            out,
            "  {} -- {} [label=\"{{{},{}}}|{}\"];",
            node_id(&data.endpoints[0]),
            node_id(&data.endpoints[1]),
            key.pair[0] + 1,
            key.pair[1] + 1,
            set_braces(key.near_set),
        );
    }
    out.push_str("}\n");
    out
}

fn normalize(p: [f64; 3]) -> [f64; 3] {
    let norm = (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]).sqrt();
    [p[0] / norm, p[1] / norm, p[2] / norm]
}

/// Stereographic projection of a float sphere point; the caller keeps
/// samples away from the pole.
fn project(p: [f64; 3]) -> (f64, f64) {
    let w = 1.0 - p[2];
    (p[0] / w, p[1] / w)
}

/// Spherical interpolation from `a` to `b` through the fixed midpoint `m`
/// (two slerp halves), sampled at `steps + 1` points.
fn arc_through(a: [f64; 3], m: [f64; 3], b: [f64; 3], steps: usize) -> Vec<[f64; 3]> {
    let mut points = Vec::with_capacity(steps + 1);
    let half = steps / 2;
    for (from, to, count) in [(a, m, half), (m, b, steps - half)] {
        let cos = (from[0] * to[0] + from[1] * to[1] + from[2] * to[2]).clamp(-1.0, 1.0);
        let angle = cos.acos();
        for s in 0..count {
            let t = s as f64 / count as f64;
            let point = if s == 0 || angle < 1e-9 {
                from
            } else {
                let (wa, wb) = (
                    ((1.0 - t) * angle).sin() / angle.sin(),
                    (t * angle).sin() / angle.sin(),
                );
                normalize([
                    wa * from[0] + wb * to[0],
                    wa * from[1] + wb * to[1],
                    wa * from[2] + wb * to[2],
                ])
            };
            points.push(point);
        }
    }
    points.push(b);
    points
}

/// Pick the arc of the bisector great circle that actually carries the edge:
/// of the two candidate midpoints between the endpoint centers, the one
/// whose nearest dots match the edge's near set. Floating point is fine
/// here — the choice only affects where the line is drawn.
fn edge_midpoint(
    cfg: &DotConfig,
    pair: [usize; 2],
    near_set: DotSet,
    a: [f64; 3],
    b: [f64; 3],
) -> [f64; 3] {
    let sum = [a[0] + b[0], a[1] + b[1], a[2] + b[2]];
    if sum.iter().map(|c| c * c).sum::<f64>() < 1e-18 {
        // Antipodal endpoints; either half works, pick one deterministically.
        return normalize([a[1] - a[2], a[2] - a[0], a[0] - a[1]]);
    }
    let candidates = [normalize(sum), normalize([-sum[0], -sum[1], -sum[2]])];
    let dots_f64: Vec<[f64; 3]> = cfg.dots().iter().map(|d| d.to_f64()).collect();
    let score = |m: [f64; 3]| {
        // Products sorted descending = dots sorted by nearness.
        let tied: f64 = dots_f64[pair[0]]
            .iter()
            .zip(&m)
            .map(|(d, mc)| d * mc)
            .sum();
        let mut worst_near = f64::INFINITY;
        let mut best_far = f64::NEG_INFINITY;
        for (i, d) in dots_f64.iter().enumerate() {
            if i == pair[0] || i == pair[1] {
                continue;
            }
            let p: f64 = d.iter().zip(&m).map(|(d, mc)| d * mc).sum();
            if near_set.contains(i) {
                worst_near = worst_near.min(p);
            } else {
                best_far = best_far.max(p);
            }
        }
        // Positive when the near set is strictly nearer than the tie and
        // the tie strictly nearer than the rest.
        (worst_near - tied).min(tied - best_far)
    };
    if score(candidates[0]) >= score(candidates[1]) {
        candidates[0]
    } else {
        candidates[1]
    }
}

const SVG_SIZE: f64 = 720.0;
const SVG_MARGIN: f64 = 40.0;
const ARC_STEPS: usize = 24;

/// Draw the configuration and its order-`k` graph in the stereographic
/// chart. Edges are great-circle arcs sampled on the sphere and projected,
/// so they appear as circular arcs in the plane. Arcs passing close to the
/// projection pole would be distorted; dots never sit there, but a wildly
/// spread configuration can still produce a large view box.
pub fn to_svg(graph: &VoronoiGraph, cfg: &DotConfig) -> String {
    let mut polylines: Vec<Vec<(f64, f64)>> = Vec::new();
    let mut vertex_points: Vec<((f64, f64), VertexColor)> = Vec::new();
    let mut centers: std::collections::BTreeMap<VertexKey, [f64; 3]> =
        std::collections::BTreeMap::new();
    for (key, data) in &graph.vertices {
        let mut center = cfg.circumcenter_numeric(key.triple);
        if key.orientation == CircleOrientation::Reversed {
            for c in &mut center {
                *c = -*c;
            }
        }
        centers.insert(*key, center);
        vertex_points.push((project(center), data.color));
    }
    for (key, data) in &graph.edges {
        let a = centers[&data.endpoints[0]];
        let b = centers[&data.endpoints[1]];
        let m = edge_midpoint(cfg, key.pair, key.near_set, a, b);
        let samples = arc_through(a, m, b, ARC_STEPS);
        polylines.push(samples.into_iter().map(project).collect());
    }
    let dot_points: Vec<(f64, f64)> = cfg
        .planar()
        .iter()
        .map(|p| (p.u.to_f64(), p.v.to_f64()))
        .collect();

    // Fit everything into the view box.
    let all = dot_points
        .iter()
        .chain(vertex_points.iter().map(|(p, _)| p))
        .chain(polylines.iter().flatten());
    let (mut min_u, mut max_u, mut min_v, mut max_v) =
        (f64::INFINITY, f64::NEG_INFINITY, f64::INFINITY, f64::NEG_INFINITY);
    for &(u, v) in all {
        min_u = min_u.min(u);
        max_u = max_u.max(u);
        min_v = min_v.min(v);
        max_v = max_v.max(v);
    }
    let span = (max_u - min_u).max(max_v - min_v).max(1e-9);
    let scale = (SVG_SIZE - 2.0 * SVG_MARGIN) / span;
    let sx = |u: f64| SVG_MARGIN + (u - min_u) * scale;
    // SVG y grows downward; flip so the chart reads like usual axes.
    let sy = |v: f64| SVG_SIZE - SVG_MARGIN - (v - min_v) * scale;

    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 {SVG_SIZE} {SVG_SIZE}\">"
    );
    let _ = writeln!(
        out,
        "  <rect width=\"{SVG_SIZE}\" height=\"{SVG_SIZE}\" fill=\"#fdfdfd\"/>"
    );
    for line in &polylines {
        let mut d = String::new();
        for (i, &(u, v)) in line.iter().enumerate() {
            let cmd = if i == 0 { 'M' } else { 'L' };
            let _ = write!(d, "{}{:.4} {:.4} ", cmd, sx(u), sy(v));
        }
        let _ = writeln!(
            out,
            "  <path d=\"{}\" fill=\"none\" stroke=\"#4477aa\" stroke-width=\"1.2\"/>",
            d.trim_end()
        );
    }
    for (i, &(u, v)) in dot_points.iter().enumerate() {
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"5\" fill=\"#cc3311\"/>",
            sx(u),
            sy(v)
        );
        let _ = writeln!(
            out,
            "  <text x=\"{:.4}\" y=\"{:.4}\" font-size=\"12\" fill=\"#cc3311\">{}</text>",
            sx(u) + 7.0,
            sy(v) - 7.0,
            i + 1
        );
    }
    for &((u, v), color) in &vertex_points {
        let fill = match color {
            VertexColor::White => "white",
            VertexColor::Black => "black",
        };
        let _ = writeln!(
            out,
            "  <circle cx=\"{:.4}\" cy=\"{:.4}\" r=\"3.5\" fill=\"{}\" stroke=\"black\" stroke-width=\"1\"/>",
            sx(u),
            sy(v),
            fill
        );
    }
    out.push_str("</svg>\n");
    out
}
