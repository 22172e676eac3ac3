//! Grouped bar charts as standalone SVG.

use std::fmt::Write;

const WIDTH_PER_BAR: f64 = 14.0;
const GROUP_GAP: f64 = 18.0;
const PLOT_HEIGHT: f64 = 300.0;
const LEFT: f64 = 50.0;
const TOP: f64 = 30.0;
const BOTTOM: f64 = 110.0;
const GRIDLINES: [(f64, &str); 3] = [(0.5, "0.5"), (2.0 / 3.0, "2/3"), (0.8, "0.8")];
const COLORS: [&str; 5] = ["#7f7f7f", "#1f77b4", "#2ca02c", "#d62728", "#9467bd"];

pub struct Chart<'a> {
    pub title: &'a str,
    pub groups: Vec<String>,
    pub series: Vec<String>,
    /// `values[g][s]`; `None` draws no bar.
    pub values: Vec<Vec<Option<f64>>>,
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Renders the chart with y ∈ [0, 1]. Each bar is drawn in data units inside
/// a scaled group, so its `height` attribute is the plotted value itself.
pub fn render(chart: &Chart) -> String {
    let per_group = chart.series.len() as f64 * WIDTH_PER_BAR + GROUP_GAP;
    let plot_width = chart.groups.len() as f64 * per_group;
    let width = LEFT + plot_width + 140.0;
    let height = TOP + PLOT_HEIGHT + BOTTOM;
    let base = TOP + PLOT_HEIGHT;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}" font-family="sans-serif" font-size="11">"#
    );
    let _ = writeln!(s, r#"<title>{}</title>"#, escape(chart.title));
    let _ = writeln!(
        s,
        r#"<text x="{LEFT}" y="18" font-size="14">{}</text>"#,
        escape(chart.title)
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{base}" x2="{}" y2="{base}" stroke="black"/>"#,
        LEFT + plot_width
    );
    let _ = writeln!(
        s,
        r#"<line x1="{LEFT}" y1="{TOP}" x2="{LEFT}" y2="{base}" stroke="black"/>"#
    );
    for (v, label) in [(0.0, "0"), (1.0, "1")].into_iter().chain(GRIDLINES) {
        let y = base - v * PLOT_HEIGHT;
        let _ = writeln!(
            s,
            r##"<line class="grid" x1="{LEFT}" y1="{y}" x2="{}" y2="{y}" stroke="#bbbbbb" stroke-dasharray="4 3"/>"##,
            LEFT + plot_width
        );
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" text-anchor="end">{label}</text>"#,
            LEFT - 4.0,
            y + 4.0
        );
    }
    let _ = writeln!(s, r#"<g transform="translate({LEFT} {base}) scale(1 -{PLOT_HEIGHT})">"#);
    for (g, row) in chart.values.iter().enumerate() {
        for (k, v) in row.iter().enumerate() {
            let Some(v) = v else { continue };
            let x = g as f64 * per_group + GROUP_GAP / 2.0 + k as f64 * WIDTH_PER_BAR;
            let _ = writeln!(
                s,
                r#"<rect x="{x}" y="0" width="{}" height="{v}" fill="{}" data-group="{}" data-series="{}"/>"#,
                WIDTH_PER_BAR - 2.0,
                COLORS[k % COLORS.len()],
                escape(&chart.groups[g]),
                escape(&chart.series[k]),
            );
        }
    }
    let _ = writeln!(s, "</g>");
    for (g, label) in chart.groups.iter().enumerate() {
        let x = LEFT + g as f64 * per_group + per_group / 2.0;
        let y = base + 12.0;
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{y}" text-anchor="end" transform="rotate(-45 {x} {y})">{}</text>"#,
            escape(label)
        );
    }
    for (k, name) in chart.series.iter().enumerate() {
        let y = TOP + 14.0 * k as f64;
        let x = LEFT + plot_width + 16.0;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{}" width="10" height="10" fill="{}"/><text x="{}" y="{}">{}</text>"#,
            y - 9.0,
            COLORS[k % COLORS.len()],
            x + 14.0,
            y,
            escape(name)
        );
    }
    s.push_str("</svg>\n");
    s
}
