//! SVG star plots: each constellation is drawn as two orthographic discs,
//! the hemisphere facing `-y` (x to the right, z up) and, beside it, the
//! hemisphere facing `+y` seen from behind. Star radius grows with
//! multiplicity.

use std::fmt::Write;

use stellar::majorana::Constellation;
use stellar::multicon::Multiconstellation;

const DISC: f64 = 90.0;
const PAD: f64 = 20.0;
const TITLE: f64 = 24.0;
const PALETTE: [&str; 6] = [
    "#c0392b", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d",
];
const SPECTATOR: &str = "#1f4fd1";

pub struct Panel<'a> {
    pub title: String,
    pub constellation: &'a Constellation,
    pub color: &'a str,
}

fn row_height() -> f64 {
    TITLE + 2.0 * DISC + PAD
}

pub fn render(panels: &[Panel<'_>]) -> String {
    let width = 4.0 * DISC + 3.0 * PAD;
    let height = PAD + panels.len().max(1) as f64 * row_height();
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width:.0}" height="{height:.0}" viewBox="0 0 {width:.0} {height:.0}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for (row, panel) in panels.iter().enumerate() {
        let top = PAD + row as f64 * row_height();
        let _ = writeln!(
            out,
            r#"<text x="{PAD:.0}" y="{:.1}" font-family="sans-serif" font-size="14">{}</text>"#,
            top + 14.0,
            escape(&panel.title)
        );
        let cy = top + TITLE + DISC;
        for (side, label) in [(0usize, "front"), (1, "back")] {
            let cx = PAD + DISC + side as f64 * (2.0 * DISC + PAD);
            let _ = writeln!(
                out,
                r##"<circle cx="{cx:.1}" cy="{cy:.1}" r="{DISC:.1}" fill="#f4f6f8" stroke="#555" stroke-width="1"/>"##
            );
            let _ = writeln!(
                out,
                r##"<line x1="{:.1}" y1="{cy:.1}" x2="{:.1}" y2="{cy:.1}" stroke="#bbb" stroke-dasharray="3,3"/>"##,
                cx - DISC,
                cx + DISC
            );
            let _ = writeln!(
                out,
                r#"<text x="{cx:.1}" y="{:.1}" font-family="sans-serif" font-size="10" text-anchor="middle">{label}</text>"#,
                cy + DISC + 12.0
            );
            for star in panel.constellation.stars() {
                let d = star.direction;
                let (facing, x) = if side == 0 {
                    (d.y <= 0.0, d.x)
                } else {
                    (d.y > 0.0, -d.x)
                };
                if !facing {
                    continue;
                }
                let r = 3.0 + 2.0 * star.multiplicity as f64;
                let _ = writeln!(
                    out,
                    r##"<circle cx="{:.2}" cy="{:.2}" r="{r:.1}" fill="{}" stroke="#222" stroke-width="0.5"/>"##,
                    cx + DISC * x,
                    cy - DISC * d.z,
                    panel.color
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
}

fn spin_text(two_j: u32) -> String {
    if two_j.is_multiple_of(2) {
        format!("{}", two_j / 2)
    } else {
        format!("{two_j}/2")
    }
}

pub fn render_multicon(mc: &Multiconstellation) -> String {
    let mut panels = Vec::new();
    for (i, c) in mc.components.iter().enumerate() {
        if let Some(cons) = &c.constellation {
            panels.push(Panel {
                title: format!("C, j = {} (copy {})", spin_text(c.two_j), c.copy),
                constellation: cons,
                color: PALETTE[i % PALETTE.len()],
            });
        }
    }
    if let Some(spec) = &mc.spectator {
        panels.push(Panel {
            title: "spectator".into(),
            constellation: spec,
            color: SPECTATOR,
        });
    }
    render(&panels)
}

pub fn render_single(title: &str, c: &Constellation) -> String {
    render(&[Panel {
        title: title.into(),
        constellation: c,
        color: PALETTE[0],
    }])
}
