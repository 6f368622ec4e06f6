//! On-disk formats. Everything exact stays exact: coordinates and
//! parameters are canonical `"p/q"` strings, never floats. The only numeric
//! fields are the vertex centers in graph files, which exist for plotting.
//!
//! External formats number dots from **1**; the in-memory API is 0-based.
//! The shift happens here and only here.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::circles::{
    avoidant_split_closed_form, hull_face_count, incident_histogram, planar_interior_histogram,
    SideHistogram,
};
use crate::dotset::DotSet;
use crate::dynamics::{MoveKind, MoveLog, TangentialTouch};
use crate::geom::{DotConfig, PlanarPoint};
use crate::rat::Rat;
use crate::separable::avoidant_partition_count;
use crate::voronoi::{CircleOrientation, StrataCounts, VertexColor, VoronoiGraph};
use crate::Error;

/// `{"dots": [{"u": "1/2", "v": "-3"}, …]}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConfigFile {
    pub dots: Vec<PlanarPoint>,
}

impl ConfigFile {
    pub fn from_config(cfg: &DotConfig) -> ConfigFile {
        ConfigFile {
            dots: cfg.planar().to_vec(),
        }
    }

    pub fn into_config(self) -> Result<DotConfig, Error> {
        DotConfig::from_planar(self.dots)
    }
}

fn to_pretty_json<T: Serialize>(value: &T) -> Result<String, Error> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    Ok(text)
}

pub fn config_to_json(cfg: &DotConfig) -> Result<String, Error> {
    to_pretty_json(&ConfigFile::from_config(cfg))
}

pub fn config_from_json(text: &str) -> Result<DotConfig, Error> {
    let file: ConfigFile = serde_json::from_str(text)?;
    file.into_config()
}

pub fn save_config(cfg: &DotConfig, path: &Path) -> Result<(), Error> {
    fs::write(path, config_to_json(cfg)?)?;
    Ok(())
}

pub fn load_config(path: &Path) -> Result<DotConfig, Error> {
    config_from_json(&fs::read_to_string(path)?)
}

/// One cell of a split histogram: `count` circles with `k` dots on one side
/// and `l` on the other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitEntry {
    pub k: usize,
    pub l: usize,
    pub count: u64,
}

/// One cell of the planar interior histogram: `count` incident circles with
/// exactly `interior` dots inside their planar projection.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InteriorEntry {
    pub interior: usize,
    pub count: u64,
}

/// The full counting report for one configuration. `formula_match` records
/// whether every histogram agrees with its closed form — the headline
/// verification this toolkit exists for.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountsReport {
    pub n: usize,
    /// Splits `{k, l}` with `k + l = n - 3` over circles through three dots.
    pub incident_histogram: Vec<SplitEntry>,
    /// Splits `{k, l}` with `k + l = n` over circles through no dots.
    pub avoidant: Vec<SplitEntry>,
    /// Planar interior sizes of the incident circles. Absent when a circle
    /// passes through the projection pole (three dots collinear in the
    /// chart), which makes "interior" ill-defined for it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interior_histogram: Option<Vec<InteriorEntry>>,
    pub hull_faces: u64,
    pub formula_match: bool,
}

/// Count everything countable about `cfg` and compare against the closed
/// forms. Requires at least four dots in general position.
pub fn counts_report(cfg: &DotConfig) -> Result<CountsReport, Error> {
    let n = cfg.n();
    if n < 4 {
        return Err(Error::TooFewDots { n, min: 4 });
    }
    let hist = incident_histogram(cfg)?;
    let incident_match = hist == SideHistogram::closed_form(n);
    let incident: Vec<SplitEntry> = hist
        .iter()
        .map(|(&(k, l), &count)| SplitEntry { k, l, count })
        .collect();

    let mut avoidant = Vec::new();
    let mut avoidant_match = true;
    for k in 1..=n / 2 {
        let l = n - k;
        let count = avoidant_partition_count(cfg, k, l)?;
        avoidant_match &= count == avoidant_split_closed_form(k, l);
        avoidant.push(SplitEntry { k, l, count });
    }

    let hull_faces = hull_face_count(cfg)?;
    let hull_match = hull_faces == 2 * n as u64 - 4;

    let interior_histogram = match planar_interior_histogram(cfg) {
        Ok(hist) => Some(
            hist.into_iter()
                .map(|(interior, count)| InteriorEntry { interior, count })
                .collect(),
        ),
        Err(Error::PoleOnCircle(_)) => None,
        Err(e) => return Err(e),
    };

    Ok(CountsReport {
        n,
        incident_histogram: incident,
        avoidant,
        interior_histogram,
        hull_faces,
        formula_match: incident_match && avoidant_match && hull_match,
    })
}

pub fn counts_report_to_json(report: &CountsReport) -> Result<String, Error> {
    to_pretty_json(report)
}

fn dots_1_based(set: DotSet) -> Vec<usize> {
    set.iter().map(|i| i + 1).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphVertexEntry {
    /// 1-based dot indices, increasing.
    pub triple: [usize; 3],
    pub orientation: CircleOrientation,
    /// 1-based indices of the dots strictly nearer than the triple.
    pub near: Vec<usize>,
    pub color: VertexColor,
    /// Unit-vector center, for plotting only (the combinatorics never
    /// consults it).
    pub center: [f64; 3],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphEdgeEntry {
    /// 1-based indices of the two tied dots.
    pub pair: [usize; 2],
    /// 1-based indices of the dots strictly nearer than the tied pair.
    pub near: Vec<usize>,
    pub endpoints: [GraphEndpointRef; 2],
}

/// A vertex named by its key, so edge records are self-contained.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphEndpointRef {
    pub triple: [usize; 3],
    pub orientation: CircleOrientation,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphFile {
    pub n: usize,
    pub k: usize,
    pub counts: StrataCounts,
    pub vertices: Vec<GraphVertexEntry>,
    pub edges: Vec<GraphEdgeEntry>,
    /// Each region as its sorted 1-based dot indices.
    pub regions: Vec<Vec<usize>>,
}

impl GraphFile {
    pub fn from_graph(graph: &VoronoiGraph, cfg: &DotConfig) -> GraphFile {
        let vertices = graph
            .vertices
            .iter()
            .map(|(key, data)| {
                let mut center = cfg.circumcenter_numeric(key.triple);
                if key.orientation == CircleOrientation::Reversed {
                    for c in &mut center {
                        *c = -*c;
                    }
                }
                GraphVertexEntry {
                    triple: key.triple.map(|i| i + 1),
                    orientation: key.orientation,
                    near: dots_1_based(data.near_set),
                    color: data.color,
                    center,
                }
            })
            .collect();
        let edges = graph
            .edges
            .iter()
            .map(|(key, data)| GraphEdgeEntry {
                pair: key.pair.map(|i| i + 1),
                near: dots_1_based(key.near_set),
                endpoints: data.endpoints.map(|v| GraphEndpointRef {
                    triple: v.triple.map(|i| i + 1),
                    orientation: v.orientation,
                }),
            })
            .collect();
        let regions = graph.regions.iter().map(|r| dots_1_based(*r)).collect();
        GraphFile {
            n: graph.n,
            k: graph.k,
            counts: graph.strata_counts(),
            vertices,
            edges,
            regions,
        }
    }
}

pub fn graph_to_json(graph: &VoronoiGraph, cfg: &DotConfig) -> Result<String, Error> {
    to_pretty_json(&GraphFile::from_graph(graph, cfg))
}

pub fn save_graph(graph: &VoronoiGraph, cfg: &DotConfig, path: &Path) -> Result<(), Error> {
    fs::write(path, graph_to_json(graph, cfg)?)?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MoveEntry {
    /// 1-based dot indices of the quadruple that crossed its wall.
    pub quadruple: [usize; 4],
    pub t_lo: Rat,
    pub t_hi: Rat,
    pub kind: MoveKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub second_kind: Option<MoveKind>,
    pub antipodal_paired: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TouchEntry {
    pub quadruple: [usize; 4],
    pub t_lo: Rat,
    pub t_hi: Rat,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MoveLogFile {
    pub n: usize,
    pub k: usize,
    pub start: ConfigFile,
    /// The end configuration actually deformed to — it differs from the
    /// requested one when the straight-line path had to be jittered.
    pub end: ConfigFile,
    pub counts: StrataCounts,
    pub moves: Vec<MoveEntry>,
    pub tangential: Vec<TouchEntry>,
}

impl MoveLogFile {
    pub fn from_log(
        log: &MoveLog,
        k: usize,
        start: &DotConfig,
        end: &DotConfig,
    ) -> MoveLogFile {
        let touch_entry = |t: &TangentialTouch| TouchEntry {
            quadruple: t.quadruple.map(|i| i + 1),
            t_lo: t.t_lo.clone(),
            t_hi: t.t_hi.clone(),
        };
        MoveLogFile {
            n: start.n(),
            k,
            start: ConfigFile::from_config(start),
            end: ConfigFile::from_config(end),
            counts: StrataCounts::closed_form(k, start.n()),
            moves: log
                .moves
                .iter()
                .map(|m| MoveEntry {
                    quadruple: m.quadruple.map(|i| i + 1),
                    t_lo: m.t_lo.clone(),
                    t_hi: m.t_hi.clone(),
                    kind: m.kind,
                    second_kind: m.second_kind,
                    antipodal_paired: m.antipodal_paired,
                })
                .collect(),
            tangential: log.tangential.iter().map(touch_entry).collect(),
        }
    }
}

pub fn move_log_to_json(
    log: &MoveLog,
    k: usize,
    start: &DotConfig,
    end: &DotConfig,
) -> Result<String, Error> {
    to_pretty_json(&MoveLogFile::from_log(log, k, start, end))
}
