//! Per-member multiplicity data, as CSV rows or a stacked bar chart.

use std::fmt::Write;

use deepfam_core::Family;
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct HistRow {
    pub distance: u32,
    pub member_index: usize,
    pub multiplicity: u32,
}

/// Rows sorted by distance, then member; zero entries are left out.
pub fn rows(family: &Family) -> Vec<HistRow> {
    let deltas: Vec<_> = family.members().iter().map(|m| m.delta()).collect();
    let mut out = Vec::new();
    for d in 1..=family.modulus().max_distance() {
        for (i, delta) in deltas.iter().enumerate() {
            let m = delta.get(d);
            if m > 0 {
                out.push(HistRow {
                    distance: d,
                    member_index: i,
                    multiplicity: m,
                });
            }
        }
    }
    out
}

pub fn csv(rows: &[HistRow]) -> String {
    let mut s = String::from("distance,member_index,multiplicity\n");
    for r in rows {
        let _ = writeln!(s, "{},{},{}", r.distance, r.member_index, r.multiplicity);
    }
    s
}

const PALETTE: [&str; 8] = [
    "#4c72b0", "#dd8452", "#55a868", "#c44e52", "#8172b3", "#937860", "#da8bc3", "#8c8c8c",
];

/// One bar per distance from 1 to the largest that occurs, segments
/// stacked in member order.
pub fn svg(family: &Family, rows: &[HistRow]) -> String {
    let max_d = rows.iter().map(|r| r.distance).max().unwrap_or(0);
    let mut totals = vec![0u32; max_d as usize + 1];
    for r in rows {
        totals[r.distance as usize] += r.multiplicity;
    }
    let max_total = totals.iter().copied().max().unwrap_or(0).max(1);

    let (bar, gap, unit) = (24u32, 8u32, 16u32);
    let (left, bottom, top) = (40u32, 30u32, 20u32);
    let plot_h = max_total * unit;
    let width = left + max_d.max(1) * (bar + gap) + gap;
    let height = top + plot_h + bottom;
    let base = top + plot_h;

    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(s, "<title>{family}</title>");
    let _ = writeln!(
        s,
        r#"<line x1="{left}" y1="{base}" x2="{width}" y2="{base}" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{left}" y1="{top}" x2="{left}" y2="{base}" stroke="black"/>"#
    );
    for m in 1..=max_total {
        let y = base - m * unit;
        let _ = writeln!(
            s,
            r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{m}</text>"#,
            left - 4,
            y + 4
        );
    }
    let mut stack = vec![0u32; max_d as usize + 1];
    for r in rows {
        let x = left + gap + (r.distance - 1) * (bar + gap);
        let h = r.multiplicity * unit;
        let y = base - (stack[r.distance as usize] * unit) - h;
        stack[r.distance as usize] += r.multiplicity;
        let _ = writeln!(
            s,
            r#"<rect x="{x}" y="{y}" width="{bar}" height="{h}" fill="{}" stroke="white"/>"#,
            PALETTE[r.member_index % PALETTE.len()]
        );
    }
    for d in 1..=max_d {
        let x = left + gap + (d - 1) * (bar + gap) + bar / 2;
        let _ = writeln!(
            s,
            r#"<text x="{x}" y="{}" font-size="10" text-anchor="middle">{d}</text>"#,
            base + 14
        );
    }
    s.push_str("</svg>\n");
    s
}
