//! Static SVG line chart of the sweep columns.

use std::fmt::Write;

use cone_deform::{CriticalAngles, SweepRow};

const WIDTH: f64 = 960.0;
const HEIGHT: f64 = 540.0;
const LEFT: f64 = 64.0;
const RIGHT: f64 = 150.0;
const TOP: f64 = 40.0;
const BOTTOM: f64 = 48.0;
const Y_CLIP: f64 = 3.0;

struct Series {
    name: &'static str,
    color: &'static str,
    value: fn(&SweepRow) -> Option<f64>,
}

const SERIES: [Series; 4] = [
    Series {
        name: "curvature",
        color: "#c0392b",
        value: |r| r.curvature,
    },
    Series {
        name: "c²",
        color: "#2471a3",
        value: |r| r.c2,
    },
    Series {
        name: "f",
        color: "#1e8449",
        value: |r| r.f,
    },
    Series {
        name: "g",
        color: "#b9770e",
        value: |r| r.g,
    },
];

struct Frame {
    x0: f64,
    x1: f64,
}

impl Frame {
    fn x(&self, psi: f64) -> f64 {
        LEFT + (psi - self.x0) / (self.x1 - self.x0) * (WIDTH - LEFT - RIGHT)
    }

    fn y(&self, v: f64) -> f64 {
        TOP + (Y_CLIP - v) / (2.0 * Y_CLIP) * (HEIGHT - TOP - BOTTOM)
    }
}

/// Polyline runs of one series; a run breaks where the value is undefined
/// or leaves the plotted band.
fn runs(rows: &[SweepRow], value: fn(&SweepRow) -> Option<f64>) -> Vec<Vec<(f64, f64)>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    for r in rows {
        match value(r) {
            Some(v) if v.is_finite() && v.abs() <= Y_CLIP => cur.push((r.psi, v)),
            _ => {
                if cur.len() > 1 {
                    out.push(std::mem::take(&mut cur));
                }
                cur.clear();
            }
        }
    }
    if cur.len() > 1 {
        out.push(cur);
    }
    out
}

pub fn render(rows: &[SweepRow], crit: &CriticalAngles) -> String {
    let frame = Frame {
        x0: rows.first().map_or(0.0, |r| r.psi),
        x1: rows.last().map_or(1.0, |r| r.psi),
    };
    let mut s = String::new();
    let _ = writeln!(
        s,
        r##"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}" font-family="sans-serif" font-size="12">"##
    );
    let _ = writeln!(s, r##"<rect width="100%" height="100%" fill="white"/>"##);
    let _ = writeln!(
        s,
        r##"<text x="{}" y="24" font-size="15">Cone-manifold family: curvature, c², f, g vs ψ</text>"##,
        LEFT
    );

    let (px0, px1) = (frame.x(frame.x0), frame.x(frame.x1));
    let (py0, py1) = (frame.y(Y_CLIP), frame.y(-Y_CLIP));
    for k in -3..=3 {
        let y = frame.y(k as f64);
        let stroke = if k == 0 { "#888" } else { "#e5e5e5" };
        let _ = writeln!(
            s,
            r##"<line x1="{px0:.2}" y1="{y:.2}" x2="{px1:.2}" y2="{y:.2}" stroke="{stroke}"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}" text-anchor="end">{k}</text>"##,
            px0 - 6.0,
            y + 4.0
        );
    }
    let step = if frame.x1 - frame.x0 > 2.0 { 0.5 } else { 0.1 };
    let mut t = (frame.x0 / step).ceil() * step;
    while t <= frame.x1 + 1e-12 {
        let x = frame.x(t);
        let _ = writeln!(
            s,
            r##"<line x1="{x:.2}" y1="{py1:.2}" x2="{x:.2}" y2="{:.2}" stroke="#444"/>"##,
            py1 + 5.0
        );
        let _ = writeln!(
            s,
            r##"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{t:.1}</text>"##,
            py1 + 18.0
        );
        t += step;
    }
    let _ = writeln!(
        s,
        r##"<rect x="{px0:.2}" y="{py0:.2}" width="{:.2}" height="{:.2}" fill="none" stroke="#444"/>"##,
        px1 - px0,
        py1 - py0
    );
    let _ = writeln!(
        s,
        r##"<text x="{:.2}" y="{:.2}" text-anchor="middle">ψ (radians)</text>"##,
        (px0 + px1) / 2.0,
        HEIGHT - 10.0
    );

    let markers = [
        ("2π/3", crit.two_thirds_pi),
        ("ω", crit.omega),
        ("π", crit.pi_angle),
        ("ζ", crit.zeta),
    ];
    for (label, psi) in markers {
        if psi < frame.x0 || psi > frame.x1 {
            continue;
        }
        let x = frame.x(psi);
        let _ = writeln!(
            s,
            r##"<line class="marker" x1="{x:.2}" y1="{py0:.2}" x2="{x:.2}" y2="{py1:.2}" stroke="#555" stroke-dasharray="4 3"/>"##
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}">{label}</text>"##,
            x + 3.0,
            py0 + 12.0
        );
    }

    for series in &SERIES {
        for run in runs(rows, series.value) {
            let pts: Vec<String> = run
                .iter()
                .map(|&(p, v)| format!("{:.2},{:.2}", frame.x(p), frame.y(v)))
                .collect();
            let _ = writeln!(
                s,
                r##"<polyline fill="none" stroke="{}" stroke-width="1.6" points="{}"/>"##,
                series.color,
                pts.join(" ")
            );
        }
    }

    let lx = WIDTH - RIGHT + 16.0;
    for (i, series) in SERIES.iter().enumerate() {
        let y = TOP + 16.0 + 20.0 * i as f64;
        let _ = writeln!(
            s,
            r##"<line x1="{lx:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}" stroke="{}" stroke-width="2"/>"##,
            lx + 24.0,
            series.color
        );
        let _ = writeln!(
            s,
            r##"<text x="{:.2}" y="{:.2}">{}</text>"##,
            lx + 30.0,
            y + 4.0,
            series.name
        );
    }
    let _ = writeln!(
        s,
        r##"<text x="{lx:.2}" y="{:.2}" fill="#666">clipped to ±{Y_CLIP}</text>"##,
        TOP + 16.0 + 20.0 * SERIES.len() as f64
    );
    s.push_str("</svg>\n");
    s
}
