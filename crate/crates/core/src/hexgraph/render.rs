use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::{Face, GraphKind, Matching, TriCoord, WeightedGraph};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::products::BoxDims;

/// Length of a unit lattice edge in SVG pixels.
pub const SVG_UNIT: f64 = 40.0;

const FILLS: [&str; 3] = ["#f2c14e", "#5b8e7d", "#3d5a80"];
const MARGIN: f64 = 10.0;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeDump {
    pub id: usize,
    pub black: TriCoord,
    pub white: TriCoord,
    pub kind: usize,
    pub weight: String,
}

/// Serialisable view of a graph; weights are canonical strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphDump {
    pub kind: GraphKind,
    pub dims: BoxDims,
    pub black: Vec<TriCoord>,
    pub white: Vec<TriCoord>,
    pub edges: Vec<EdgeDump>,
    pub faces: Vec<Face>,
}

impl<W: Scalar> WeightedGraph<W> {
    pub fn dump(&self) -> GraphDump {
        GraphDump {
            kind: self.kind(),
            dims: self.dims(),
            black: self.black().to_vec(),
            white: self.white().to_vec(),
            edges: self
                .edges()
                .iter()
                .enumerate()
                .map(|(id, e)| EdgeDump {
                    id,
                    black: self.black()[e.black],
                    white: self.white()[e.white],
                    kind: e.kind,
                    weight: e.weight.to_canonical(),
                })
                .collect(),
            faces: self.faces().to_vec(),
        }
    }
}

fn to_px((i, j): (i64, i64), top: f64, left: f64) -> (f64, f64) {
    let x = i as f64 + j as f64 / 2.0;
    let y = j as f64 * 3f64.sqrt() / 2.0;
    (MARGIN + (x - left) * SVG_UNIT, MARGIN + (top - y) * SVG_UNIT)
}

/// The lozenge tiling a perfect matching describes, as an SVG 1.1 document.
/// Each lozenge is the union of a matched pair of triangles and is filled
/// according to the kind of its edge.
pub fn render_svg<W: Clone>(g: &WeightedGraph<W>, m: &Matching) -> Result<String> {
    if g.kind() == GraphKind::Cspp {
        return Err(Error::Unsupported(
            "the quotient graph has no planar tiling to draw".into(),
        ));
    }
    if !g.is_perfect_matching(m) {
        return Err(Error::InvalidArgument("not a perfect matching of the graph".into()));
    }
    let points: Vec<(i64, i64)> = g.black().iter().chain(g.white()).flat_map(|t| t.corners()).collect();
    let real = |&(i, j): &(i64, i64)| (i as f64 + j as f64 / 2.0, j as f64 * 3f64.sqrt() / 2.0);
    let xs = points.iter().map(|p| real(p).0);
    let ys = points.iter().map(|p| real(p).1);
    let (left, right) = xs.fold((f64::MAX, f64::MIN), |(lo, hi), x| (lo.min(x), hi.max(x)));
    let (bottom, top) = ys.fold((f64::MAX, f64::MIN), |(lo, hi), y| (lo.min(y), hi.max(y)));
    let width = (right - left) * SVG_UNIT + 2.0 * MARGIN;
    let height = (top - bottom) * SVG_UNIT + 2.0 * MARGIN;

    let mut svg = String::new();
    writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8"?>"#).unwrap();
    writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.2}" height="{height:.2}" viewBox="0 0 {width:.2} {height:.2}">"#
    )
    .unwrap();
    writeln!(svg, "  <style>").unwrap();
    for (p, fill) in FILLS.iter().enumerate() {
        writeln!(
            svg,
            "    .lozenge-{p} {{ fill: {fill}; stroke: #1b1b1b; stroke-width: 1.5; }}"
        )
        .unwrap();
    }
    writeln!(svg, "  </style>").unwrap();
    for &e in m.edges() {
        let (black, white) = g.edge_endpoints(e);
        let shared: Vec<(i64, i64)> = black
            .corners()
            .into_iter()
            .filter(|c| white.corners().contains(c))
            .collect();
        let apex_b = black.corners().into_iter().find(|c| !shared.contains(c)).expect("apex");
        let apex_w = white.corners().into_iter().find(|c| !shared.contains(c)).expect("apex");
        let quad = [apex_b, shared[0], apex_w, shared[1]];
        let pts: Vec<String> = quad
            .iter()
            .map(|&p| {
                let (x, y) = to_px(p, top, left);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        writeln!(
            svg,
            r#"  <polygon class="lozenge-{}" points="{}"/>"#,
            g.edge(e).kind,
            pts.join(" ")
        )
        .unwrap();
    }
    writeln!(svg, "</svg>").unwrap();
    Ok(svg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hexgraph::{build_cspp_graph, build_hexagon, enumerate_matchings};
    use num_bigint::BigInt;

    #[test]
    fn unit_hexagon_has_three_lozenges() {
        let g = build_hexagon::<BigInt>(BoxDims::cube(1).unwrap());
        let m = enumerate_matchings(&g, 8).unwrap().next().unwrap();
        let svg = render_svg(&g, &m).unwrap();
        assert_eq!(svg.matches("<polygon").count(), 3);
        assert!(svg.starts_with("<?xml"));
        assert_eq!(svg, render_svg(&g, &m).unwrap());
    }

    #[test]
    fn quotient_is_not_drawn() {
        let g = build_cspp_graph::<BigInt>(1).unwrap();
        let m = enumerate_matchings(&g, 8).unwrap().next().unwrap();
        assert!(render_svg(&g, &m).is_err());
    }

    #[test]
    fn dump_round_trips_through_json() {
        let g = build_hexagon::<BigInt>(BoxDims::new(1, 1, 2).unwrap());
        let dump = g.dump();
        let text = serde_json::to_string(&dump).unwrap();
        let back: GraphDump = serde_json::from_str(&text).unwrap();
        assert_eq!(back, dump);
        assert_eq!(back.edges.len(), g.edges().len());
    }
}
