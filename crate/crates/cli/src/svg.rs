//! Minimal self-contained SVG rendering: scatter points, polylines and
//! segment bundles, with an optional y = x diagonal for cobwebs.

const WIDTH: f64 = 800.0;
const HEIGHT: f64 = 600.0;
const MARGIN: f64 = 60.0;

/// What to draw inside the plot frame.
pub enum Geometry {
    /// Scatter plot, one dot per point.
    Points(Vec<(f64, f64)>),
    /// A single connected polyline in data order.
    Polyline(Vec<(f64, f64)>),
    /// Independent segments; `diagonal` also draws y = x across the frame
    /// and forces equal x/y ranges.
    Segments {
        segments: Vec<(f64, f64, f64, f64)>,
        diagonal: bool,
    },
}

pub struct Plot {
    pub geometry: Geometry,
    pub x_label: String,
    pub y_label: String,
}

struct Bounds {
    x_min: f64,
    x_max: f64,
    y_min: f64,
    y_max: f64,
}

impl Bounds {
    fn of(points: impl Iterator<Item = (f64, f64)>, square: bool) -> Self {
        let mut b = Bounds {
            x_min: f64::INFINITY,
            x_max: f64::NEG_INFINITY,
            y_min: f64::INFINITY,
            y_max: f64::NEG_INFINITY,
        };
        for (x, y) in points {
            b.x_min = b.x_min.min(x);
            b.x_max = b.x_max.max(x);
            b.y_min = b.y_min.min(y);
            b.y_max = b.y_max.max(y);
        }
        if b.x_min > b.x_max {
            // no data at all; draw an empty unit frame
            b = Bounds {
                x_min: 0.0,
                x_max: 1.0,
                y_min: 0.0,
                y_max: 1.0,
            };
        }
        if square {
            b.x_min = b.x_min.min(b.y_min);
            b.y_min = b.x_min;
            b.x_max = b.x_max.max(b.y_max);
            b.y_max = b.x_max;
        }
        // degenerate spans get unit padding so the projection stays finite
        if b.x_max == b.x_min {
            b.x_min -= 0.5;
            b.x_max += 0.5;
        }
        if b.y_max == b.y_min {
            b.y_min -= 0.5;
            b.y_max += 0.5;
        }
        let x_pad = (b.x_max - b.x_min) * 0.04;
        let y_pad = (b.y_max - b.y_min) * 0.04;
        Bounds {
            x_min: b.x_min - x_pad,
            x_max: b.x_max + x_pad,
            y_min: b.y_min - y_pad,
            y_max: b.y_max + y_pad,
        }
    }

    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_min) / (self.x_max - self.x_min) * (WIDTH - 2.0 * MARGIN)
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_min) / (self.y_max - self.y_min) * (HEIGHT - 2.0 * MARGIN)
    }
}

pub fn render(plot: &Plot) -> String {
    let square = matches!(
        plot.geometry,
        Geometry::Segments { diagonal: true, .. }
    );
    let bounds = match &plot.geometry {
        Geometry::Points(points) | Geometry::Polyline(points) => {
            Bounds::of(points.iter().copied(), square)
        }
        Geometry::Segments { segments, .. } => Bounds::of(
            segments
                .iter()
                .flat_map(|&(x1, y1, x2, y2)| [(x1, y1), (x2, y2)]),
            square,
        ),
    };

    let mut svg = String::with_capacity(4096);
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         viewBox=\"0 0 {WIDTH} {HEIGHT}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");
    svg.push_str(&format!(
        "<rect x=\"{MARGIN}\" y=\"{MARGIN}\" width=\"{}\" height=\"{}\" fill=\"none\" \
         stroke=\"black\" stroke-width=\"1\"/>\n",
        WIDTH - 2.0 * MARGIN,
        HEIGHT - 2.0 * MARGIN
    ));

    match &plot.geometry {
        Geometry::Points(points) => {
            for &(x, y) in points {
                svg.push_str(&format!(
                    "<circle cx=\"{:.2}\" cy=\"{:.2}\" r=\"1.2\" fill=\"black\"/>\n",
                    bounds.px(x),
                    bounds.py(y)
                ));
            }
        }
        Geometry::Polyline(points) => {
            svg.push_str("<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" points=\"");
            for &(x, y) in points {
                svg.push_str(&format!("{:.2},{:.2} ", bounds.px(x), bounds.py(y)));
            }
            svg.push_str("\"/>\n");
        }
        Geometry::Segments { segments, diagonal } => {
            if *diagonal {
                svg.push_str(&format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                     stroke=\"gray\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
                    bounds.px(bounds.x_min),
                    bounds.py(bounds.x_min),
                    bounds.px(bounds.x_max),
                    bounds.py(bounds.x_max)
                ));
            }
            for &(x1, y1, x2, y2) in segments {
                svg.push_str(&format!(
                    "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
                     stroke=\"black\" stroke-width=\"0.8\"/>\n",
                    bounds.px(x1),
                    bounds.py(y1),
                    bounds.px(x2),
                    bounds.py(y2)
                ));
            }
        }
    }

    // axis extents and labels
    svg.push_str(&format!(
        "<text x=\"{MARGIN}\" y=\"{}\" font-size=\"11\" fill=\"black\">{}</text>\n",
        HEIGHT - MARGIN + 16.0,
        short(bounds.x_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"black\" text-anchor=\"end\">{}</text>\n",
        WIDTH - MARGIN,
        HEIGHT - MARGIN + 16.0,
        short(bounds.x_max)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"black\" text-anchor=\"end\">{}</text>\n",
        MARGIN - 6.0,
        HEIGHT - MARGIN,
        short(bounds.y_min)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"11\" fill=\"black\" text-anchor=\"end\">{}</text>\n",
        MARGIN - 6.0,
        MARGIN + 10.0,
        short(bounds.y_max)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"black\" text-anchor=\"middle\">{}</text>\n",
        WIDTH / 2.0,
        HEIGHT - MARGIN / 3.0,
        escape(&plot.x_label)
    ));
    svg.push_str(&format!(
        "<text x=\"{}\" y=\"{}\" font-size=\"13\" fill=\"black\" text-anchor=\"middle\" \
         transform=\"rotate(-90 {} {})\">{}</text>\n",
        MARGIN / 3.0,
        HEIGHT / 2.0,
        MARGIN / 3.0,
        HEIGHT / 2.0,
        escape(&plot.y_label)
    ));
    svg.push_str("</svg>\n");
    svg
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Compact axis-extent label.
fn short(v: f64) -> String {
    if v == 0.0 {
        return "0".to_string();
    }
    if v.abs() >= 1e-3 && v.abs() < 1e5 {
        let s = format!("{v:.4}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{v:.3e}")
    }
}
