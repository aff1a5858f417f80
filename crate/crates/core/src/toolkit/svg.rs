use std::fmt::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::model::{unit_disk_graph, UdgInstance};

const PX_PER_UNIT: f64 = 60.0;

/// Static SVG 1.1 drawing of a disk instance: one circle per disk, one line
/// per conflict edge. Disks are drawn with radius half the conflict distance,
/// so conflicting disks touch or overlap on the page.
///
/// Output is a pure function of the instance.
pub fn render_udg_svg(instance: &UdgInstance) -> String {
    let centers = instance.centers();
    let res = centers.resolution() as f64;
    let radius = (instance.conflict_threshold() as f64).sqrt() / 2.0 / res;
    let to_px = |c: i64| c as f64 / res * PX_PER_UNIT;

    let (mut min_x, mut min_y, mut max_x, mut max_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for p in centers.iter() {
        let (x, y) = (to_px(p[0]), -to_px(p[1]));
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let pad = radius * PX_PER_UNIT + 10.0;
    let (vx, vy) = (min_x - pad, min_y - pad);
    let (w, h) = (max_x - min_x + 2.0 * pad, max_y - min_y + 2.0 * pad);

    let mut svg = String::new();
    let _ = writeln!(svg, r#"<?xml version="1.0" encoding="UTF-8" standalone="no"?>"#);
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w:.2}" height="{h:.2}" viewBox="{vx:.2} {vy:.2} {w:.2} {h:.2}">"#
    );
    let _ = writeln!(svg, r##"  <g class="edges" stroke="#444444" stroke-width="1.5">"##);
    for (i, j) in unit_disk_graph(instance).edges() {
        let (a, b) = (centers.point(i).expect("vertex"), centers.point(j).expect("vertex"));
        let _ = writeln!(
            svg,
            r#"    <line x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}"/>"#,
            to_px(a[0]),
            -to_px(a[1]),
            to_px(b[0]),
            -to_px(b[1])
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(
        svg,
        r##"  <g class="disks" fill="#4a90d9" fill-opacity="0.25" stroke="#1f4e79" stroke-width="1">"##
    );
    for (idx, p) in centers.iter().enumerate() {
        let _ = writeln!(
            svg,
            r#"    <circle id="d{idx}" cx="{:.2}" cy="{:.2}" r="{:.2}"/>"#,
            to_px(p[0]),
            -to_px(p[1]),
            radius * PX_PER_UNIT
        );
    }
    let _ = writeln!(svg, "  </g>");
    let _ = writeln!(svg, "</svg>");
    svg
}

pub fn write_udg_svg(instance: &UdgInstance, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    std::fs::write(path, render_udg_svg(instance)).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
