//! Hand-rolled SVG 1.1 rendering of the slope function `f(y)` with the
//! target interval band. No plotting dependency; output is fully
//! deterministic.

use orderable_slopes::slopes::SlopeSample;

const W: f64 = 840.0;
const H: f64 = 520.0;
const ML: f64 = 70.0; // margins
const MR: f64 = 25.0;
const MT: f64 = 35.0;
const MB: f64 = 55.0;

struct Axis {
    lo: f64,
    hi: f64,
    log: bool,
}

impl Axis {
    fn coord(&self, v: f64, pix_lo: f64, pix_hi: f64) -> f64 {
        let t = if self.log {
            (v.ln() - self.lo.ln()) / (self.hi.ln() - self.lo.ln())
        } else {
            (v - self.lo) / (self.hi - self.lo)
        };
        pix_lo + t * (pix_hi - pix_lo)
    }
}

fn fnum(v: f64) -> String {
    if v == 0.0 {
        return "0".into();
    }
    let a = v.abs();
    if (0.01..1e4).contains(&a) {
        let s = format!("{v:.3}");
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        format!("{v:.1e}")
    }
}

/// Render the sweep samples as an f(y) curve with the target band.
pub fn render(
    title: &str,
    samples: &[SlopeSample],
    target: (f64, f64),
    y_axis_log: bool,
) -> String {
    let y_lo = samples.first().map(|s| s.y).unwrap_or(1.0);
    let y_hi = samples.last().map(|s| s.y).unwrap_or(10.0);
    let f_min = samples.iter().map(|s| s.f).fold(f64::INFINITY, f64::min);
    let f_max = samples.iter().map(|s| s.f).fold(f64::NEG_INFINITY, f64::max);
    let (f_lo, f_hi) = (f_min.min(target.0) - 0.6, f_max.max(target.1) + 0.6);

    let xa = Axis { lo: y_lo, hi: y_hi, log: y_axis_log };
    let ya = Axis { lo: f_lo, hi: f_hi, log: false };
    let px = |y: f64| xa.coord(y, ML, W - MR);
    let py = |f: f64| ya.coord(f, H - MB, MT);

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{W}\" height=\"{H}\" viewBox=\"0 0 {W} {H}\">\n"
    ));
    svg.push_str("<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n");

    // target interval band
    let (b_top, b_bot) = (py(target.1), py(target.0));
    svg.push_str(&format!(
        "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
         fill=\"#cfe8cf\" opacity=\"0.7\"/>\n",
        ML,
        b_top,
        W - ML - MR,
        b_bot - b_top
    ));
    for (v, label) in [(target.0, "target lo"), (target.1, "target hi")] {
        svg.push_str(&format!(
            "<line x1=\"{:.2}\" y1=\"{:.2}\" x2=\"{:.2}\" y2=\"{:.2}\" \
             stroke=\"#4a8f4a\" stroke-dasharray=\"6,4\"/>\n",
            ML,
            py(v),
            W - MR,
            py(v)
        ));
        svg.push_str(&format!(
            "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" fill=\"#2f6f2f\">{} = {}</text>\n",
            W - MR - 110.0,
            py(v) - 4.0,
            label,
            fnum(v)
        ));
    }

    // axes
    svg.push_str(&format!(
        "<rect x=\"{ML}\" y=\"{MT}\" width=\"{:.2}\" height=\"{:.2}\" \
         fill=\"none\" stroke=\"black\"/>\n",
        W - ML - MR,
        H - MT - MB
    ));

    // x ticks
    let x_ticks: Vec<f64> = if y_axis_log {
        let lo_d = y_lo.log10().ceil() as i32;
        let hi_d = y_hi.log10().floor() as i32;
        (lo_d..=hi_d).map(|d| 10f64.powi(d)).collect()
    } else {
        (0..=6).map(|i| y_lo + (y_hi - y_lo) * i as f64 / 6.0).collect()
    };
    for t in x_ticks {
        let x = px(t);
        svg.push_str(&format!(
            "<line x1=\"{x:.2}\" y1=\"{:.2}\" x2=\"{x:.2}\" y2=\"{:.2}\" stroke=\"black\"/>\n",
            H - MB,
            H - MB + 5.0
        ));
        svg.push_str(&format!(
            "<text x=\"{x:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"middle\">{}</text>\n",
            H - MB + 18.0,
            fnum(t)
        ));
    }
    // y ticks at integers (thinned to at most ~14 labels)
    let span = (f_hi - f_lo).ceil() as i64;
    let step = 1 + span / 14;
    let mut k = f_lo.ceil() as i64;
    while (k as f64) < f_hi {
        if k % step == 0 {
            let y = py(k as f64);
            svg.push_str(&format!(
                "<line x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{ML}\" y2=\"{y:.2}\" stroke=\"black\"/>\n",
                ML - 5.0
            ));
            svg.push_str(&format!(
                "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" text-anchor=\"end\">{k}</text>\n",
                ML - 8.0,
                y + 4.0
            ));
        }
        k += 1;
    }

    // the curve
    let mut path = String::from("M");
    for (i, s) in samples.iter().enumerate() {
        if i > 0 {
            path.push_str(" L");
        }
        path.push_str(&format!("{:.2} {:.2}", px(s.y), py(s.f)));
    }
    svg.push_str(&format!(
        "<path d=\"{path}\" fill=\"none\" stroke=\"#1f4f8f\" stroke-width=\"1.6\"/>\n"
    ));

    // labels
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"20\" font-size=\"14\" text-anchor=\"middle\">{title}</text>\n",
        W / 2.0
    ));
    svg.push_str(&format!(
        "<text x=\"{:.2}\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\">y{}</text>\n",
        W / 2.0,
        H - 15.0,
        if y_axis_log { " (log scale)" } else { "" }
    ));
    svg.push_str(&format!(
        "<text x=\"18\" y=\"{:.2}\" font-size=\"12\" text-anchor=\"middle\" \
         transform=\"rotate(-90 18 {:.2})\">f(y) = -log L / log M</text>\n",
        H / 2.0,
        H / 2.0
    ));
    svg.push_str("</svg>\n");
    svg
}
